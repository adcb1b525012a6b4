//! Local contrast between a pixel and a nearby neighbour.
//!
//! The contrast of pixel `p` against neighbour `q` is `(b(q) - b(p)) / mean`
//! with `mean = (b(q) + b(p)) / 2`. It is signed, invariant to brightness
//! scaling and bounded by 2 in magnitude for non-negative brightness.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fusion::Ordering;
use crate::raster::BrightnessTable;

/// A pixel `p` and the neighbour `q` it is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PixelPair {
    pub p: (usize, usize),
    pub q: (usize, usize),
}

impl PixelPair {
    pub fn new(p: (usize, usize), q: (usize, usize)) -> Result<Self> {
        if p == q {
            return Err(Error::InvalidPixelPair(format!("p and q coincide at {p:?}")));
        }
        Ok(Self { p, q })
    }

    /// Pair `(p, p + (dx, dy))`.
    pub fn with_offset(p: (usize, usize), dx: i64, dy: i64) -> Result<Self> {
        let qx = p.0 as i64 + dx;
        let qy = p.1 as i64 + dy;
        if qx < 0 || qy < 0 {
            return Err(Error::InvalidPixelPair(format!("neighbour ({qx}, {qy}) has a negative coordinate")));
        }
        Self::new(p, (qx as usize, qy as usize))
    }

    /// The same pixels with roles exchanged.
    pub fn swapped(self) -> Self {
        Self { p: self.q, q: self.p }
    }

    fn check_bounds(&self, table: &BrightnessTable) -> Result<()> {
        for (x, y) in [self.p, self.q] {
            if x >= table.width() || y >= table.height() {
                return Err(Error::OutOfBounds {
                    x: x as i64,
                    y: y as i64,
                    width: table.width(),
                    height: table.height(),
                });
            }
        }
        Ok(())
    }
}

/// Contrast of brightness `pixel` against `neighbour`. A pair with zero
/// mean (in particular two black pixels) has contrast 0.
pub fn pair_contrast(pixel: f64, neighbour: f64) -> f64 {
    let sum = neighbour + pixel;
    if sum == 0.0 {
        return 0.0;
    }
    2.0 * (neighbour - pixel) / sum
}

pub fn local_contrast(table: &BrightnessTable, pair: PixelPair) -> Result<f64> {
    pair.check_bounds(table)?;
    Ok(pair_contrast(table.at(pair.p.0, pair.p.1), table.at(pair.q.0, pair.q.1)))
}

/// Per-pixel contrast against a fixed offset neighbour.
#[derive(Debug, Clone, PartialEq)]
pub struct ContrastMap {
    pub map: BrightnessTable,
    pub offset: (i64, i64),
    /// Pixels whose neighbour falls outside the table; they hold 0.
    pub boundary_pixels: usize,
}

pub fn contrast_map(table: &BrightnessTable, offset: (i64, i64)) -> Result<ContrastMap> {
    let (dx, dy) = offset;
    let (w, h) = table.dims();
    if dx.unsigned_abs() as usize >= w || dy.unsigned_abs() as usize >= h || (dx == 0 && dy == 0) {
        return Err(Error::InvalidOffset { dx, dy, width: w, height: h });
    }
    let mut boundary_pixels = 0;
    let map = BrightnessTable::from_fn(w, h, |x, y| {
        match table.get(x as i64 + dx, y as i64 + dy) {
            Some(q) => pair_contrast(table.at(x, y), q),
            None => {
                boundary_pixels += 1;
                0.0
            }
        }
    })?;
    Ok(ContrastMap { map, offset, boundary_pixels })
}

/// Predicted contrast of a tangent image from the input contrasts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TContrast {
    /// `(k_b - k_a) / (1 - k_a k_b / 4)` for `Neg`.
    pub exact: f64,
    /// `k_b - k_a` for `Neg`.
    pub approx: f64,
}

pub fn predict_t_contrast(k_a: f64, k_b: f64, ordering: Ordering) -> Result<TContrast> {
    for k in [k_a, k_b] {
        if !(-2.0..=2.0).contains(&k) {
            return Err(Error::ContrastOutOfRange(k));
        }
    }
    let denom = 1.0 - k_a * k_b / 4.0;
    if denom.abs() < 1e-12 {
        return Err(Error::DegenerateDenominator { k_a, k_b });
    }
    let exact = (k_b - k_a) / denom;
    let approx = k_b - k_a;
    Ok(match ordering {
        Ordering::Neg => TContrast { exact, approx },
        Ordering::Pos => TContrast { exact: -exact, approx: -approx },
    })
}

/// Contrast bookkeeping for one pixel pair seen in both channels.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContrastReport {
    pub k_a: f64,
    pub k_b: f64,
    /// Exact tangent-image (`Neg`) prediction; `None` when the prediction
    /// is degenerate.
    pub k_t_exact: Option<f64>,
    pub k_t_approx: Option<f64>,
    /// Contrast of the simple sum `u + v`.
    pub k_s: f64,
    pub omega_u: f64,
    pub omega_v: f64,
}

/// Contrasts of `u`, `v` and their sum at a pixel pair, where `u_p`/`u_q`
/// are the visible brightnesses at `p`/`q` and likewise for `v`.
///
/// The sum contrast is `omega_u k_a + omega_v k_b` with
/// `omega_u = mean_u / (mean_u + mean_v)`.
pub fn predict_simple_contrast(u_p: f64, u_q: f64, v_p: f64, v_q: f64) -> Result<ContrastReport> {
    for b in [u_p, u_q, v_p, v_q] {
        if !b.is_finite() || b < 0.0 {
            return Err(Error::InvalidBrightness(b));
        }
    }
    let mean_u = (u_q + u_p) / 2.0;
    let mean_v = (v_q + v_p) / 2.0;
    let total = mean_u + mean_v;
    if total == 0.0 {
        return Err(Error::ZeroBrightnessPair);
    }
    let k_a = pair_contrast(u_p, u_q);
    let k_b = pair_contrast(v_p, v_q);
    let omega_u = mean_u / total;
    let omega_v = mean_v / total;
    let k_s = omega_u * k_a + omega_v * k_b;
    let t = predict_t_contrast(k_a, k_b, Ordering::Neg).ok();
    Ok(ContrastReport {
        k_a,
        k_b,
        k_t_exact: t.map(|t| t.exact),
        k_t_approx: t.map(|t| t.approx),
        k_s,
        omega_u,
        omega_v,
    })
}

/// [`predict_simple_contrast`] evaluated on two tables at `pair`.
pub fn contrast_report(u: &BrightnessTable, v: &BrightnessTable, pair: PixelPair) -> Result<ContrastReport> {
    u.ensure_same_dims(v)?;
    pair.check_bounds(u)?;
    predict_simple_contrast(
        u.at(pair.p.0, pair.p.1),
        u.at(pair.q.0, pair.q.1),
        v.at(pair.p.0, pair.p.1),
        v.at(pair.q.0, pair.q.1),
    )
}
