use std::fmt;

use crate::error::{Error, Result};

/// Acquisition channel a table came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChannelTag {
    /// Visible-light channel (A).
    VisibleA,
    /// Infrared channel (B).
    InfraredB,
    /// Output of a fusion or any other derived table.
    Fused,
}

impl ChannelTag {
    pub fn name(self) -> &'static str {
        match self {
            ChannelTag::VisibleA => "VisibleA",
            ChannelTag::InfraredB => "InfraredB",
            ChannelTag::Fused => "Fused",
        }
    }
}

impl fmt::Display for ChannelTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A row-major grid of finite brightness values.
///
/// Tables are immutable once built; every operation returns a new table.
/// The declared `range` describes the values the producer guarantees, which
/// may be wider than the values actually present (a simple sum of two
/// normalized images declares `[0, 2]`).
#[derive(Debug, Clone, PartialEq)]
pub struct BrightnessTable {
    width: usize,
    height: usize,
    values: Vec<f64>,
    range: (f64, f64),
    tag: ChannelTag,
}

impl BrightnessTable {
    /// Builds a table from row-major values. The declared range is the
    /// observed min/max and the tag is [`ChannelTag::Fused`].
    pub fn new(width: usize, height: usize, values: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidTable(format!("zero dimension {width}x{height}")));
        }
        if values.len() != width * height {
            return Err(Error::InvalidTable(format!(
                "{} values for {width}x{height} table",
                values.len()
            )));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidTable(format!(
                "non-finite value at ({}, {})",
                i % width,
                i / width
            )));
        }
        let range = observed_range(&values);
        Ok(Self { width, height, values, range, tag: ChannelTag::Fused })
    }

    /// Table with every pixel set to `value`.
    pub fn constant(width: usize, height: usize, value: f64) -> Result<Self> {
        Self::new(width, height, vec![value; width * height])
    }

    /// Builds a table by evaluating `f(x, y)` at every pixel.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> f64) -> Result<Self> {
        let mut values = Vec::with_capacity(width * height);
        for y in 0..height {
            for x in 0..width {
                values.push(f(x, y));
            }
        }
        Self::new(width, height, values)
    }

    pub fn with_tag(mut self, tag: ChannelTag) -> Self {
        self.tag = tag;
        self
    }

    /// Replaces the declared value range.
    pub fn with_range(mut self, lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(Error::InvalidTable(format!("bad declared range [{lo}, {hi}]")));
        }
        self.range = (lo, hi);
        Ok(self)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn range(&self) -> (f64, f64) {
        self.range
    }

    pub fn tag(&self) -> ChannelTag {
        self.tag
    }

    /// Value at column `x`, row `y`. Panics when out of bounds.
    pub fn at(&self, x: usize, y: usize) -> f64 {
        assert!(x < self.width && y < self.height, "pixel ({x}, {y}) out of bounds");
        self.values[y * self.width + x]
    }

    pub fn get(&self, x: i64, y: i64) -> Option<f64> {
        if x < 0 || y < 0 || x as usize >= self.width || y as usize >= self.height {
            return None;
        }
        Some(self.values[y as usize * self.width + x as usize])
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }

    /// Checks that every value lies in `[0, 1]`.
    pub fn check_unit_range(&self) -> Result<()> {
        match self.values.iter().position(|v| !(0.0..=1.0).contains(v)) {
            Some(i) => Err(Error::RangeViolation {
                x: i % self.width,
                y: i / self.width,
                value: self.values[i],
            }),
            None => Ok(()),
        }
    }

    pub fn ensure_same_dims(&self, other: &BrightnessTable) -> Result<()> {
        if self.dims() != other.dims() {
            return Err(Error::DimensionMismatch(self.width, self.height, other.width, other.height));
        }
        Ok(())
    }

    /// Applies `f` to every value. The result is tagged `Fused`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(self.width, self.height, self.values.iter().map(|&v| f(v)).collect())
    }

    /// Pixel-wise combination of two equally sized tables.
    pub fn zip_map(&self, other: &BrightnessTable, f: impl Fn(f64, f64) -> f64) -> Result<Self> {
        self.ensure_same_dims(other)?;
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Self::new(self.width, self.height, values)
    }

    /// `c * table`, keeping the tag.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        Ok(self.map(|v| c * v)?.with_tag(self.tag))
    }
}

fn observed_range(values: &[f64]) -> (f64, f64) {
    values
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_shapes() {
        assert!(BrightnessTable::new(0, 3, vec![]).is_err());
        assert!(BrightnessTable::new(2, 2, vec![0.0; 3]).is_err());
        assert!(BrightnessTable::new(1, 1, vec![f64::NAN]).is_err());
        assert!(BrightnessTable::new(1, 1, vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn row_major_indexing() {
        let t = BrightnessTable::new(3, 2, vec![0.0, 1.0, 2.0, 3.0, 4.0, 5.0]).unwrap();
        assert_eq!(t.at(2, 0), 2.0);
        assert_eq!(t.at(0, 1), 3.0);
        assert_eq!(t.get(3, 0), None);
        assert_eq!(t.get(-1, 0), None);
        assert_eq!(t.range(), (0.0, 5.0));
    }

    #[test]
    fn declared_range_must_be_ordered() {
        let t = BrightnessTable::constant(1, 1, 0.5).unwrap();
        assert!(t.clone().with_range(1.0, 0.0).is_err());
        assert_eq!(t.with_range(0.0, 2.0).unwrap().range(), (0.0, 2.0));
    }

    #[test]
    fn unit_range_check_reports_pixel() {
        let t = BrightnessTable::new(2, 1, vec![0.5, 1.5]).unwrap();
        match t.check_unit_range() {
            Err(Error::RangeViolation { x: 1, y: 0, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
    }
}
