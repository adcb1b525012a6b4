use std::collections::BTreeMap;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use phasefuse::metrics::{assess, entropy_from_counts, histogram, shannon_entropy};
use phasefuse::raster::invert;
use phasefuse::BrightnessTable;

/// Independent recount: walk the bin edges `i / bins` for every value.
fn recount(values: &[f64], bins: usize) -> Vec<u64> {
    let mut found: BTreeMap<usize, u64> = BTreeMap::new();
    for &v in values {
        let mut idx = bins - 1;
        for i in 0..bins {
            let upper = (i + 1) as f64 / bins as f64;
            if v < upper {
                idx = i;
                break;
            }
        }
        *found.entry(idx).or_default() += 1;
    }
    (0..bins).map(|i| found.get(&i).copied().unwrap_or(0)).collect()
}

fn random_table(seed: u64, w: usize, h: usize) -> BrightnessTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    BrightnessTable::from_fn(w, h, |_, _| rng.gen::<f64>()).unwrap()
}

#[test]
fn pipeline_matches_recount_oracle() {
    for seed in 0..8 {
        let t = random_table(seed, 37, 23);
        let counts = recount(t.values(), 256);
        assert_eq!(histogram(&t, 256).unwrap(), counts);
        assert_eq!(shannon_entropy(&t, 256).unwrap(), entropy_from_counts(&counts));
    }
}

#[test]
fn quantized_image_recount() {
    // 8-bit samples s/255 never sit on a 1/256 bin edge
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let t = BrightnessTable::from_fn(50, 40, |_, _| rng.gen_range(0..=255u16) as f64 / 255.0).unwrap();
    assert_eq!(histogram(&t, 256).unwrap(), recount(t.values(), 256));
}

#[test]
fn entropy_is_permutation_invariant() {
    let t = random_table(3, 16, 16);
    let mut shuffled = t.values().to_vec();
    shuffled.shuffle(&mut ChaCha8Rng::seed_from_u64(11));
    let s = BrightnessTable::new(16, 16, shuffled).unwrap();
    assert_eq!(shannon_entropy(&t, 256).unwrap(), shannon_entropy(&s, 256).unwrap());
}

proptest! {
    #[test]
    fn histogram_partitions_pixels(values in proptest::collection::vec(0.0..=1.0f64, 1..200), bins in 2usize..512) {
        let n = values.len();
        let t = BrightnessTable::new(n, 1, values).unwrap();
        let r = assess(&t, bins).unwrap();
        prop_assert_eq!(r.histogram.iter().sum::<u64>(), n as u64);
        prop_assert!(r.entropy_bits >= 0.0);
        prop_assert!(r.entropy_bits <= (bins as f64).log2() + 1e-12);
    }

    #[test]
    fn entropy_invariant_under_inversion(samples in proptest::collection::vec(0u16..=255, 1..200), log_bins in 1u32..9) {
        // 8-bit samples stay clear of bin edges when bins is a power of two
        let bins = 1usize << log_bins;
        let n = samples.len();
        let t = BrightnessTable::new(n, 1, samples.iter().map(|&s| s as f64 / 255.0).collect()).unwrap();
        let inv = invert(&t).unwrap();
        let (h, hi) = (shannon_entropy(&t, bins).unwrap(), shannon_entropy(&inv, bins).unwrap());
        // same counts, summed in reverse bin order
        prop_assert!((h - hi).abs() <= 1e-12, "{} vs {}", h, hi);
    }
}
