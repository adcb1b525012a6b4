//! Fusion of a visible (`u`) and infrared (`v`) brightness table.
//!
//! Besides plain and weighted addition the two tables can be read as the
//! real and imaginary parts of a complex image. The modulus gives an
//! amplitude image; the argument, either as its tangent (`v/u` or `u/v`) or
//! as the angle itself, gives phase images whose local contrast combines
//! the contrasts of both inputs instead of cancelling them.

mod complex;
mod params;

use std::f64::consts::FRAC_PI_2;

pub use complex::{amplitude, cos2phi_image, fuse_multi, make_complex, phase_angle, sin2phi_image, ComplexImage};
pub use params::{ChannelWeights, Epsilon, Ordering, WEIGHT_NORM_TOLERANCE};

use crate::error::{Error, Result};
use crate::raster::{self, BrightnessTable};

/// Pixel-wise `u + v`. No clamping; the declared range is the sum of the
/// input ranges.
pub fn simple_fuse(u: &BrightnessTable, v: &BrightnessTable) -> Result<BrightnessTable> {
    let (ul, uh) = u.range();
    let (vl, vh) = v.range();
    u.zip_map(v, |a, b| a + b)?.with_range(ul + vl, uh + vh)
}

/// Pixel-wise `w_a u + w_b v`. Any non-negative weight pair is accepted.
pub fn weighted_fuse(u: &BrightnessTable, v: &BrightnessTable, weights: ChannelWeights) -> Result<BrightnessTable> {
    let (wa, wb) = (weights.w_a(), weights.w_b());
    u.zip_map(v, |a, b| wa * a + wb * b)
}

/// Equal within-channel weights summing to one.
pub fn equal_weights(n: usize) -> Vec<f64> {
    vec![1.0 / n as f64; n]
}

/// Weighted pixel-wise sum of several images from the same channel.
pub fn channel_sum(images: &[BrightnessTable], weights: &[f64]) -> Result<BrightnessTable> {
    let first = images.first().ok_or(Error::EmptySequence)?;
    if weights.len() != images.len() {
        return Err(Error::WeightLengthMismatch { images: images.len(), weights: weights.len() });
    }
    if let Some(&w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
        return Err(Error::InvalidWeights(format!("channel weight {w} must be finite and non-negative")));
    }
    let mut acc = vec![0.0; first.len()];
    for (img, &w) in images.iter().zip(weights) {
        first.ensure_same_dims(img)?;
        for (a, &x) in acc.iter_mut().zip(img.values()) {
            *a += w * x;
        }
    }
    Ok(BrightnessTable::new(first.width(), first.height(), acc)?.with_tag(first.tag()))
}

fn numerator_denominator<'a>(
    u: &'a BrightnessTable,
    v: &'a BrightnessTable,
    ordering: Ordering,
) -> (&'a BrightnessTable, &'a BrightnessTable) {
    match ordering {
        Ordering::Neg => (v, u),
        Ordering::Pos => (u, v),
    }
}

/// Raw tangent-of-phase image: `v / (u + eps)` for `Neg`, `u / (v + eps)`
/// for `Pos`.
///
/// With `eps = 0` a zero denominator pixel is an error. The result is
/// unbounded; use [`display_normalize`] for a `[0, 1]` rendering.
pub fn tangent_image(
    u: &BrightnessTable,
    v: &BrightnessTable,
    ordering: Ordering,
    eps: Epsilon,
) -> Result<BrightnessTable> {
    u.ensure_same_dims(v)?;
    let (num, den) = numerator_denominator(u, v, ordering);
    let e = eps.value();
    if eps.is_zero() {
        if let Some(i) = den.values().iter().position(|&d| d == 0.0) {
            return Err(Error::DivisionByZero { x: i % den.width(), y: i / den.width() });
        }
    }
    num.zip_map(den, |n, d| n / (d + e))
}

/// Arctangent-phase image together with the number of `0/0` pixels that
/// were resolved to zero.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiImage {
    pub table: BrightnessTable,
    pub indeterminate: usize,
}

/// `arctan(v / (u + eps))` (`Neg`) or `arctan(u / (v + eps))` (`Pos`),
/// scaled by `2/pi` into `[0, 1]`.
///
/// A zero denominator with a positive numerator maps to 1. When `eps = 0`
/// and both are zero the pixel is set to 0 and counted in
/// [`PhiImage::indeterminate`].
pub fn phi_image(u: &BrightnessTable, v: &BrightnessTable, ordering: Ordering, eps: Epsilon) -> Result<PhiImage> {
    u.ensure_same_dims(v)?;
    let (num, den) = numerator_denominator(u, v, ordering);
    let e = eps.value();
    let indeterminate = if eps.is_zero() {
        num.values().iter().zip(den.values()).filter(|&(&n, &d)| n == 0.0 && d == 0.0).count()
    } else {
        0
    };
    let table = num
        .zip_map(den, |n, d| (n.atan2(d + e) / FRAC_PI_2).clamp(0.0, 1.0))?
        .with_range(0.0, 1.0)?;
    Ok(PhiImage { table, indeterminate })
}

/// Display copy of a non-negative raw image: divide by the maximum.
pub fn display_normalize(raw: &BrightnessTable) -> Result<BrightnessTable> {
    raster::normalize(raw)
}

/// Display copy of a signed raw image: affine map with min to 0 and max to
/// 1. A constant table maps to 0.5.
pub fn display_minmax(raw: &BrightnessTable) -> Result<BrightnessTable> {
    let (lo, hi) = (raw.min(), raw.max());
    let span = hi - lo;
    let out = if span == 0.0 { raw.map(|_| 0.5)? } else { raw.map(|x| ((x - lo) / span).clamp(0.0, 1.0))? };
    out.with_tag(raw.tag()).with_range(0.0, 1.0)
}
