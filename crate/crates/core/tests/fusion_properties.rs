use std::f64::consts::FRAC_PI_2;

use proptest::prelude::*;

use phasefuse::fusion::{
    self, amplitude, cos2phi_image, fuse_multi, make_complex, phase_angle, phi_image, sin2phi_image, tangent_image,
    ChannelWeights, Epsilon, Ordering,
};
use phasefuse::{BrightnessTable, ChannelTag};

fn table_strategy(min: f64) -> impl Strategy<Value = (BrightnessTable, BrightnessTable)> {
    (1usize..6, 1usize..6).prop_flat_map(move |(w, h)| {
        let n = w * h;
        (
            proptest::collection::vec(min..=1.0f64, n),
            proptest::collection::vec(min..=1.0f64, n),
        )
            .prop_map(move |(a, b)| {
                (
                    BrightnessTable::new(w, h, a).unwrap().with_tag(ChannelTag::VisibleA),
                    BrightnessTable::new(w, h, b).unwrap().with_tag(ChannelTag::InfraredB),
                )
            })
    })
}

fn weights_strategy() -> impl Strategy<Value = ChannelWeights> {
    (0.0..=FRAC_PI_2).prop_map(|t| ChannelWeights::normalized(t.cos(), t.sin()).unwrap().0)
}

proptest! {
    #[test]
    fn reconstruction_identities((u, v) in table_strategy(0.0), w in weights_strategy(), pos in any::<bool>()) {
        let ordering = if pos { Ordering::Pos } else { Ordering::Neg };
        let c = make_complex(&u, &v, ordering, w).unwrap();
        let amp = amplitude(&c);
        let phase = phase_angle(&c);
        for i in 0..amp.len() {
            let (a, phi) = (amp.values()[i], phase.values()[i]);
            prop_assert!((a * phi.cos() - c.re().values()[i]).abs() <= 1e-9);
            prop_assert!((a * phi.sin() - c.im().values()[i]).abs() <= 1e-9);
            prop_assert!((0.0..=FRAC_PI_2).contains(&phi));
        }
    }

    #[test]
    fn pythagorean_identity((u, v) in table_strategy(0.0), w in weights_strategy()) {
        let c = make_complex(&u, &v, Ordering::Neg, w).unwrap();
        let s = sin2phi_image(&c);
        let k = cos2phi_image(&c);
        let a = amplitude(&c);
        for i in 0..a.len() {
            let lhs = s.values()[i].powi(2) + k.values()[i].powi(2);
            prop_assert!((lhs - a.values()[i].powi(4)).abs() <= 1e-9);
        }
    }

    #[test]
    fn ordering_behaviour((u, v) in table_strategy(0.0), w in weights_strategy()) {
        let neg = make_complex(&u, &v, Ordering::Neg, w).unwrap();
        let pos = make_complex(&u, &v, Ordering::Pos, w).unwrap();
        prop_assert_eq!(amplitude(&neg), amplitude(&pos));
        prop_assert_eq!(sin2phi_image(&neg), sin2phi_image(&pos));
        let kn = cos2phi_image(&neg);
        let kp = cos2phi_image(&pos);
        for (a, b) in kn.values().iter().zip(kp.values()) {
            prop_assert_eq!(*a, -*b);
        }
    }

    #[test]
    fn tangent_reciprocity((u, v) in table_strategy(1e-3)) {
        let neg = tangent_image(&u, &v, Ordering::Neg, Epsilon::ZERO).unwrap();
        let pos = tangent_image(&u, &v, Ordering::Pos, Epsilon::ZERO).unwrap();
        for (a, b) in neg.values().iter().zip(pos.values()) {
            prop_assert!((a * b - 1.0).abs() <= 1e-12);
            prop_assert!(*a >= 0.0);
        }
    }

    #[test]
    fn phi_in_unit_range((u, v) in table_strategy(0.0), e in 0.0..2.0f64, pos in any::<bool>()) {
        let ordering = if pos { Ordering::Pos } else { Ordering::Neg };
        let phi = phi_image(&u, &v, ordering, Epsilon::new(e).unwrap()).unwrap();
        prop_assert!(phi.table.values().iter().all(|x| (0.0..=1.0).contains(x)));
    }

    #[test]
    fn phi_complementarity((u, v) in table_strategy(1e-3)) {
        let neg = phi_image(&u, &v, Ordering::Neg, Epsilon::ZERO).unwrap().table;
        let pos = phi_image(&u, &v, Ordering::Pos, Epsilon::ZERO).unwrap().table;
        for (a, b) in neg.values().iter().zip(pos.values()) {
            prop_assert!((a + b - 1.0).abs() <= 1e-9);
        }
    }

    #[test]
    fn tangent_monotone_in_epsilon((u, v) in table_strategy(0.0), e1 in 1e-6..1.0f64, de in 0.0..1.0f64) {
        let lo = tangent_image(&u, &v, Ordering::Neg, Epsilon::new(e1).unwrap()).unwrap();
        let hi = tangent_image(&u, &v, Ordering::Neg, Epsilon::new(e1 + de).unwrap()).unwrap();
        for (a, b) in lo.values().iter().zip(hi.values()) {
            prop_assert!(b <= a);
        }
    }

    /// For eps much larger than the denominator, eps * t approaches the
    /// numerator: |eps*v/(u+eps) - v| = v*u/(u+eps) <= max(v)*max(u)/eps.
    #[test]
    fn large_epsilon_limit((u, v) in table_strategy(0.0), e in 10.0..1e4f64) {
        let t = tangent_image(&u, &v, Ordering::Neg, Epsilon::new(e).unwrap()).unwrap();
        let bound = v.max() * u.max() / e;
        for (ti, vi) in t.values().iter().zip(v.values()) {
            prop_assert!((e * ti - vi).abs() <= bound + 1e-15);
        }
    }
}

#[test]
fn make_complex_equals_single_image_multi() {
    let u = BrightnessTable::new(2, 1, vec![0.3, 0.9]).unwrap().with_tag(ChannelTag::VisibleA);
    let v = BrightnessTable::new(2, 1, vec![0.6, 0.1]).unwrap().with_tag(ChannelTag::InfraredB);
    let w = ChannelWeights::default();
    for ordering in [Ordering::Neg, Ordering::Pos] {
        let direct = make_complex(&u, &v, ordering, w).unwrap();
        let multi = fuse_multi(std::slice::from_ref(&u), std::slice::from_ref(&v), &[1.0], &[1.0], ordering, w).unwrap();
        assert_eq!(direct, multi);
        let dup = fuse_multi(&[u.clone(), u.clone()], std::slice::from_ref(&v), &[0.5, 0.5], &[1.0], ordering, w).unwrap();
        assert_eq!(direct, dup);
    }
}

#[test]
fn multi_image_phase_matches_hand_sums() {
    // visible sum 0.25*u1 + 0.75*u2 = [0.5, 0.4, 0.3, 0.2]; infrared v = [0.5, 0.4, 0.6, 0.2]
    // Neg phase = atan(v / sum): [atan 1, atan 1, atan 2, atan 1]
    let u1 = BrightnessTable::new(2, 2, vec![0.2, 0.4, 0.6, 0.8]).unwrap();
    let u2 = BrightnessTable::new(2, 2, vec![0.6, 0.4, 0.2, 0.0]).unwrap();
    let v = BrightnessTable::new(2, 2, vec![0.5, 0.4, 0.6, 0.2]).unwrap();
    let c = fuse_multi(&[u1, u2], &[v], &[0.25, 0.75], &[1.0], Ordering::Neg, ChannelWeights::default()).unwrap();
    let scaled: Vec<f64> = phase_angle(&c).values().iter().map(|p| p / FRAC_PI_2).collect();
    let expected = [0.5, 0.5, 0.7048327646991335, 0.5];
    for (s, e) in scaled.iter().zip(expected) {
        assert!((s - e).abs() < 1e-12, "{s} vs {e}");
    }
}

#[test]
fn multi_image_errors() {
    let a = BrightnessTable::constant(2, 2, 0.5).unwrap();
    let w = ChannelWeights::default();
    assert!(fuse_multi(&[], std::slice::from_ref(&a), &[], &[1.0], Ordering::Neg, w).is_err());
    assert!(fuse_multi(std::slice::from_ref(&a), std::slice::from_ref(&a), &[1.0, 1.0], &[1.0], Ordering::Neg, w).is_err());
    let b = BrightnessTable::constant(3, 2, 0.5).unwrap();
    assert!(fuse_multi(&[a], &[b], &[1.0], &[1.0], Ordering::Neg, w).is_err());
}

#[test]
fn display_copies_stay_in_unit_range() {
    let u = BrightnessTable::new(3, 1, vec![0.1, 0.5, 0.9]).unwrap().with_tag(ChannelTag::VisibleA);
    let v = BrightnessTable::new(3, 1, vec![0.9, 0.2, 0.3]).unwrap().with_tag(ChannelTag::InfraredB);
    let raw = tangent_image(&u, &v, Ordering::Neg, Epsilon::ZERO).unwrap();
    let shown = fusion::display_normalize(&raw).unwrap();
    assert_eq!(shown.max(), 1.0);
    let c = make_complex(&u, &v, Ordering::Neg, ChannelWeights::default()).unwrap();
    let k = fusion::display_minmax(&cos2phi_image(&c)).unwrap();
    assert_eq!((k.min(), k.max()), (0.0, 1.0));
}
