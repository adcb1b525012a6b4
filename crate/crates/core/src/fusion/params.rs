use std::f64::consts::FRAC_1_SQRT_2;

use serde::Serialize;

use crate::error::{Error, Result};

/// Tolerance on the Euclidean norm of complex-fusion weights.
pub const WEIGHT_NORM_TOLERANCE: f64 = 1e-12;

/// Pair of channel weights `(w_a, w_b)`.
///
/// Weights built with [`ChannelWeights::unit`] or [`ChannelWeights::normalized`]
/// satisfy `sqrt(w_a^2 + w_b^2) = 1`, which complex construction requires.
/// [`ChannelWeights::raw`] accepts any non-negative pair and is only suitable
/// for plain weighted addition.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChannelWeights {
    w_a: f64,
    w_b: f64,
}

impl ChannelWeights {
    /// Non-negative weights without the norm constraint.
    pub fn raw(w_a: f64, w_b: f64) -> Result<Self> {
        if !(w_a.is_finite() && w_b.is_finite()) || w_a < 0.0 || w_b < 0.0 {
            return Err(Error::InvalidWeights(format!("({w_a}, {w_b}) must be finite and non-negative")));
        }
        Ok(Self { w_a, w_b })
    }

    /// Weights that already lie on the unit circle.
    pub fn unit(w_a: f64, w_b: f64) -> Result<Self> {
        let w = Self::raw(w_a, w_b)?;
        if !w.is_unit() {
            return Err(Error::InvalidWeights(format!(
                "({w_a}, {w_b}) has norm {}, expected 1",
                w_a.hypot(w_b)
            )));
        }
        Ok(w)
    }

    /// Scales `(w_a, w_b)` onto the unit circle. The flag reports whether
    /// rescaling changed the input.
    pub fn normalized(w_a: f64, w_b: f64) -> Result<(Self, bool)> {
        let w = Self::raw(w_a, w_b)?;
        if w.is_unit() {
            return Ok((w, false));
        }
        let norm = w_a.hypot(w_b);
        if norm == 0.0 {
            return Err(Error::InvalidWeights("both weights are zero".into()));
        }
        Ok((Self { w_a: w_a / norm, w_b: w_b / norm }, true))
    }

    pub fn w_a(&self) -> f64 {
        self.w_a
    }

    pub fn w_b(&self) -> f64 {
        self.w_b
    }

    pub fn is_unit(&self) -> bool {
        (self.w_a.hypot(self.w_b) - 1.0).abs() <= WEIGHT_NORM_TOLERANCE
    }
}

impl Default for ChannelWeights {
    /// Equal unit-norm weights `(1/sqrt 2, 1/sqrt 2)`.
    fn default() -> Self {
        Self { w_a: FRAC_1_SQRT_2, w_b: FRAC_1_SQRT_2 }
    }
}

/// Which channel becomes the real part of the complex image.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Ordering {
    /// `u + i v`: visible real, infrared imaginary.
    Neg,
    /// `v + i u`: infrared real, visible imaginary.
    Pos,
}

/// Non-negative offset added to a ratio denominator.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Epsilon(f64);

impl Epsilon {
    pub const ZERO: Epsilon = Epsilon(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidEpsilon(value));
        }
        Ok(Self(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }
}

impl Default for Epsilon {
    fn default() -> Self {
        Epsilon(0.01)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_weights_are_unit() {
        assert!(ChannelWeights::default().is_unit());
        assert!(ChannelWeights::unit(1.0, 0.0).is_ok());
        assert!(ChannelWeights::unit(0.6, 0.8).is_ok());
        assert!(ChannelWeights::unit(1.0, 1.0).is_err());
    }

    #[test]
    fn normalization_reports_change() {
        let (w, changed) = ChannelWeights::normalized(3.0, 4.0).unwrap();
        assert!(changed);
        assert!((w.w_a() - 0.6).abs() < 1e-15 && (w.w_b() - 0.8).abs() < 1e-15);
        let (_, changed) = ChannelWeights::normalized(0.0, 1.0).unwrap();
        assert!(!changed);
        assert!(ChannelWeights::normalized(0.0, 0.0).is_err());
    }

    #[test]
    fn negative_weights_rejected() {
        assert!(ChannelWeights::raw(-0.1, 1.0).is_err());
        assert!(ChannelWeights::raw(f64::NAN, 1.0).is_err());
        assert!(ChannelWeights::raw(2.0, 3.0).is_ok());
    }

    #[test]
    fn epsilon_validation() {
        assert!(Epsilon::new(-1e-9).is_err());
        assert!(Epsilon::new(f64::INFINITY).is_err());
        assert!(Epsilon::new(0.0).unwrap().is_zero());
        assert_eq!(Epsilon::default().value(), 0.01);
    }
}
