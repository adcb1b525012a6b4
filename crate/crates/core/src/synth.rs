//! Piecewise-constant model scenes: a small target square inside a larger
//! square on a uniform field.

use crate::error::{Error, Result};
use crate::metrics::PixelPair;
use crate::raster::{BrightnessTable, ChannelTag};

pub const MODEL_CANVAS: (usize, usize) = (64, 64);
pub const MODEL_BIG: Rect = Rect { x: 16, y: 16, width: 32, height: 32 };
pub const MODEL_SMALL: Rect = Rect { x: 28, y: 28, width: 8, height: 8 };
/// Outer field of the default model pair, identical in both channels.
pub const MODEL_FIELD: f64 = 1.0;

/// Target / surround brightness of the visible model image.
pub const VISIBLE_TARGET: f64 = 0.4;
pub const VISIBLE_SURROUND: f64 = 0.5;
/// Target / surround brightness of the infrared model image.
pub const INFRARED_TARGET: f64 = 0.5;
pub const INFRARED_SURROUND: f64 = 0.4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rect {
    pub x: usize,
    pub y: usize,
    pub width: usize,
    pub height: usize,
}

impl Rect {
    fn right(&self) -> usize {
        self.x + self.width
    }

    fn bottom(&self) -> usize {
        self.y + self.height
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x >= self.x && x < self.right() && y >= self.y && y < self.bottom()
    }

    pub fn is_empty(&self) -> bool {
        self.width == 0 || self.height == 0
    }

    fn encloses(&self, other: &Rect) -> bool {
        other.is_empty()
            || (other.x >= self.x && other.y >= self.y && other.right() <= self.right() && other.bottom() <= self.bottom())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Square {
    pub rect: Rect,
    pub brightness: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSpec {
    pub canvas: (usize, usize),
    pub field: f64,
    pub big: Square,
    pub small: Square,
}

impl ModelSpec {
    /// Default geometry with the given target and surround brightness.
    pub fn with_brightness(target: f64, surround: f64) -> Self {
        Self {
            canvas: MODEL_CANVAS,
            field: MODEL_FIELD,
            big: Square { rect: MODEL_BIG, brightness: surround },
            small: Square { rect: MODEL_SMALL, brightness: target },
        }
    }

    fn validate(&self) -> Result<()> {
        let (w, h) = self.canvas;
        if w == 0 || h == 0 {
            return Err(Error::GeometryViolation(format!("empty canvas {w}x{h}")));
        }
        let canvas = Rect { x: 0, y: 0, width: w, height: h };
        if !canvas.encloses(&self.big.rect) {
            return Err(Error::GeometryViolation(format!("{:?} leaves the canvas", self.big.rect)));
        }
        if !self.big.rect.encloses(&self.small.rect) {
            return Err(Error::GeometryViolation(format!("{:?} is not inside {:?}", self.small.rect, self.big.rect)));
        }
        for b in [self.field, self.big.brightness, self.small.brightness] {
            if !(0.0..=1.0).contains(&b) {
                return Err(Error::GeometryViolation(format!("brightness {b} outside [0, 1]")));
            }
        }
        Ok(())
    }
}

/// Paints the field, then the big square, then the small square.
pub fn generate_model(spec: &ModelSpec) -> Result<BrightnessTable> {
    spec.validate()?;
    let (w, h) = spec.canvas;
    BrightnessTable::from_fn(w, h, |x, y| {
        if spec.small.rect.contains(x, y) {
            spec.small.brightness
        } else if spec.big.rect.contains(x, y) {
            spec.big.brightness
        } else {
            spec.field
        }
    })?
    .with_range(0.0, 1.0)
}

/// Tagged visible/infrared model pair: a dark target on a brighter square
/// in the visible channel and the reverse in the infrared channel.
pub fn model_pair_default() -> (BrightnessTable, BrightnessTable) {
    let u = generate_model(&ModelSpec::with_brightness(VISIBLE_TARGET, VISIBLE_SURROUND))
        .expect("default model geometry is valid")
        .with_tag(ChannelTag::VisibleA);
    let v = generate_model(&ModelSpec::with_brightness(INFRARED_TARGET, INFRARED_SURROUND))
        .expect("default model geometry is valid")
        .with_tag(ChannelTag::InfraredB);
    (u, v)
}

/// A target pixel on the left edge of the small square, paired with its
/// left neighbour in the surrounding square.
pub fn model_target_edge() -> PixelPair {
    let p = (MODEL_SMALL.x, MODEL_SMALL.y + MODEL_SMALL.height / 2);
    PixelPair::new(p, (p.0 - 1, p.1)).expect("distinct pixels")
}

/// Copy of `table` with `rect` set to `brightness`, clipped to the table.
pub fn paint_rect(table: &BrightnessTable, rect: Rect, brightness: f64) -> Result<BrightnessTable> {
    let painted = BrightnessTable::from_fn(table.width(), table.height(), |x, y| {
        if rect.contains(x, y) {
            brightness
        } else {
            table.at(x, y)
        }
    })?
    .with_tag(table.tag());
    let (lo, hi) = table.range();
    painted.with_range(lo.min(brightness), hi.max(brightness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::metrics::local_contrast;

    #[test]
    fn visible_model_values() {
        let (u, v) = model_pair_default();
        let edge = model_target_edge();
        assert_eq!(u.at(edge.p.0, edge.p.1), 0.4);
        assert_eq!(u.at(edge.q.0, edge.q.1), 0.5);
        assert_eq!(v.at(edge.p.0, edge.p.1), 0.5);
        assert_eq!(v.at(edge.q.0, edge.q.1), 0.4);
        assert_eq!(u.at(0, 0), MODEL_FIELD);
        assert_eq!(u.tag(), ChannelTag::VisibleA);
        assert_eq!(v.tag(), ChannelTag::InfraredB);
    }

    #[test]
    fn empty_small_square() {
        let mut spec = ModelSpec::with_brightness(0.1, 0.6);
        spec.small.rect.width = 0;
        let t = generate_model(&spec).unwrap();
        assert_eq!(t.at(MODEL_SMALL.x, MODEL_SMALL.y), 0.6);
    }

    #[test]
    fn geometry_checks() {
        let mut spec = ModelSpec::with_brightness(0.4, 0.5);
        spec.small.rect = Rect { x: 10, y: 10, width: 8, height: 8 };
        assert!(matches!(generate_model(&spec), Err(Error::GeometryViolation(_))));
        let mut spec = ModelSpec::with_brightness(0.4, 0.5);
        spec.big.rect.width = 60;
        assert!(generate_model(&spec).is_err());
        assert!(generate_model(&ModelSpec::with_brightness(1.2, 0.5)).is_err());
    }

    #[test]
    fn swapped_brightness_negates_edge_contrast() {
        let a = generate_model(&ModelSpec::with_brightness(0.4, 0.5)).unwrap();
        let b = generate_model(&ModelSpec::with_brightness(0.5, 0.4)).unwrap();
        let edge = model_target_edge();
        let ka = local_contrast(&a, edge).unwrap();
        let kb = local_contrast(&b, edge).unwrap();
        assert!((ka + kb).abs() < 1e-15);
    }

    #[test]
    fn patch_is_painted() {
        let (u, _) = model_pair_default();
        let p = paint_rect(&u, Rect { x: 2, y: 2, width: 4, height: 4 }, 0.0).unwrap();
        assert_eq!(p.at(3, 3), 0.0);
        assert_eq!(p.at(6, 6), MODEL_FIELD);
        assert_eq!(p.tag(), ChannelTag::VisibleA);
    }
}
