use super::{channel_sum, ChannelWeights, Ordering};
use crate::error::{Error, Result};
use crate::raster::{BrightnessTable, ChannelTag};

/// Per-pixel complex brightness built from a visible and an infrared table.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexImage {
    re: BrightnessTable,
    im: BrightnessTable,
    ordering: Ordering,
}

impl ComplexImage {
    /// Pairs two equally sized non-negative tables.
    pub fn new(re: BrightnessTable, im: BrightnessTable, ordering: Ordering) -> Result<Self> {
        re.ensure_same_dims(&im)?;
        for t in [&re, &im] {
            if let Some(i) = t.values().iter().position(|&v| v < 0.0) {
                return Err(Error::NegativeValue { x: i % t.width(), y: i / t.width(), value: t.values()[i] });
            }
        }
        Ok(Self { re, im, ordering })
    }

    pub fn re(&self) -> &BrightnessTable {
        &self.re
    }

    pub fn im(&self) -> &BrightnessTable {
        &self.im
    }

    pub fn ordering(&self) -> Ordering {
        self.ordering
    }

    pub fn dims(&self) -> (usize, usize) {
        self.re.dims()
    }

    fn combine(&self, f: impl Fn(f64, f64) -> f64) -> BrightnessTable {
        self.re.zip_map(&self.im, f).expect("complex parts share dimensions and are finite")
    }
}

fn expect_tag(t: &BrightnessTable, expected: ChannelTag) -> Result<()> {
    if t.tag() != expected {
        return Err(Error::ChannelTagMismatch { expected: expected.name(), found: t.tag().name() });
    }
    Ok(())
}

/// Builds `w_a u + i w_b v` (`Neg`) or `w_b v + i w_a u` (`Pos`).
///
/// `u` must be tagged [`ChannelTag::VisibleA`] and `v` [`ChannelTag::InfraredB`];
/// the weights must satisfy the unit-norm constraint.
pub fn make_complex(
    u: &BrightnessTable,
    v: &BrightnessTable,
    ordering: Ordering,
    weights: ChannelWeights,
) -> Result<ComplexImage> {
    u.ensure_same_dims(v)?;
    expect_tag(u, ChannelTag::VisibleA)?;
    expect_tag(v, ChannelTag::InfraredB)?;
    if !weights.is_unit() {
        return Err(Error::InvalidWeights(format!(
            "complex construction needs unit-norm weights, got ({}, {})",
            weights.w_a(),
            weights.w_b()
        )));
    }
    let wu = u.scaled(weights.w_a())?;
    let wv = v.scaled(weights.w_b())?;
    match ordering {
        Ordering::Neg => ComplexImage::new(wu, wv, ordering),
        Ordering::Pos => ComplexImage::new(wv, wu, ordering),
    }
}

/// Multi-image construction: each channel is reduced with [`channel_sum`]
/// and the two sums are combined with [`make_complex`].
pub fn fuse_multi(
    us: &[BrightnessTable],
    vs: &[BrightnessTable],
    wu: &[f64],
    wv: &[f64],
    ordering: Ordering,
    weights: ChannelWeights,
) -> Result<ComplexImage> {
    let u = channel_sum(us, wu)?.with_tag(ChannelTag::VisibleA);
    let v = channel_sum(vs, wv)?.with_tag(ChannelTag::InfraredB);
    make_complex(&u, &v, ordering, weights)
}

/// Modulus `sqrt(re^2 + im^2)`.
pub fn amplitude(c: &ComplexImage) -> BrightnessTable {
    c.combine(f64::hypot)
}

/// Argument in radians, within `[0, pi/2]` for non-negative parts. A pixel
/// with both parts zero has argument 0.
pub fn phase_angle(c: &ComplexImage) -> BrightnessTable {
    c.combine(|re, im| im.atan2(re))
}

/// `2 re im`, equal to `|psi|^2 sin 2phi`.
pub fn sin2phi_image(c: &ComplexImage) -> BrightnessTable {
    c.combine(|re, im| 2.0 * re * im)
}

/// `re^2 - im^2`, equal to `|psi|^2 cos 2phi`. Signed.
pub fn cos2phi_image(c: &ComplexImage) -> BrightnessTable {
    c.combine(|re, im| re * re - im * im)
}
