use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::raster::BrightnessTable;

pub const DEFAULT_BINS: usize = 256;

/// Histogram and summary statistics of a `[0, 1]` table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QualityReport {
    pub bin_count: usize,
    pub histogram: Vec<u64>,
    pub occupied_bins: usize,
    pub entropy_bits: f64,
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub pixel_count: usize,
}

impl QualityReport {
    /// CSV with header `bin_index,lower_edge,count`.
    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("bin_index,lower_edge,count\n");
        for (i, c) in self.histogram.iter().enumerate() {
            let _ = writeln!(out, "{i},{},{c}", i as f64 / self.bin_count as f64);
        }
        out
    }
}

/// Counts values into `bins` equal-width bins over `[0, 1]`. Bin `i` holds
/// `[i/bins, (i+1)/bins)`; the last bin also holds 1.0.
pub fn histogram(table: &BrightnessTable, bins: usize) -> Result<Vec<u64>> {
    if bins < 2 {
        return Err(Error::InvalidBinCount(bins));
    }
    table.check_unit_range()?;
    let mut counts = vec![0u64; bins];
    let n = bins as f64;
    for &v in table.values() {
        let idx = ((v * n) as usize).min(bins - 1);
        counts[idx] += 1;
    }
    Ok(counts)
}

/// Shannon entropy in bits of a histogram's relative frequencies. Empty
/// bins contribute nothing.
pub fn entropy_from_counts(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let total = total as f64;
    let h = counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total;
            -p * p.log2()
        })
        .sum::<f64>();
    // a single occupied bin gives -1 * log2(1) = -0.0
    h.max(0.0)
}

pub fn shannon_entropy(table: &BrightnessTable, bins: usize) -> Result<f64> {
    Ok(entropy_from_counts(&histogram(table, bins)?))
}

pub fn assess(table: &BrightnessTable, bins: usize) -> Result<QualityReport> {
    let hist = histogram(table, bins)?;
    Ok(QualityReport {
        bin_count: bins,
        occupied_bins: hist.iter().filter(|&&c| c > 0).count(),
        entropy_bits: entropy_from_counts(&hist),
        histogram: hist,
        min: table.min(),
        max: table.max(),
        mean: table.mean(),
        pixel_count: table.len(),
    })
}

/// A full column or row of a table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "lowercase")]
pub enum Line {
    Column(usize),
    Row(usize),
}

impl FromStr for Line {
    type Err = String;

    /// Parses `col:N` or `row:N`.
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (kind, idx) = s.split_once(':').ok_or_else(|| format!("expected col:N or row:N, got {s:?}"))?;
        let idx: usize = idx.trim().parse().map_err(|_| format!("bad line index in {s:?}"))?;
        match kind.trim() {
            "col" | "column" => Ok(Line::Column(idx)),
            "row" => Ok(Line::Row(idx)),
            k => Err(format!("unknown line kind {k:?}")),
        }
    }
}

/// Brightness along a column (top to bottom) or row (left to right).
pub fn brightness_profile(table: &BrightnessTable, line: Line) -> Result<Vec<f64>> {
    let (w, h) = table.dims();
    match line {
        Line::Column(x) if x < w => Ok((0..h).map(|y| table.at(x, y)).collect()),
        Line::Row(y) if y < h => Ok(table.values()[y * w..(y + 1) * w].to_vec()),
        Line::Column(x) => Err(Error::OutOfBounds { x: x as i64, y: 0, width: w, height: h }),
        Line::Row(y) => Err(Error::OutOfBounds { x: 0, y: y as i64, width: w, height: h }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(values: &[f64]) -> BrightnessTable {
        BrightnessTable::new(values.len(), 1, values.to_vec()).unwrap()
    }

    #[test]
    fn histogram_edges() {
        assert_eq!(histogram(&t(&[0.0, 0.0]), 256).unwrap()[0], 2);
        assert_eq!(histogram(&t(&[0.0, 1.0, 1.0, 0.5, 0.49]), 2).unwrap(), vec![2, 3]);
        assert!(matches!(histogram(&t(&[0.5]), 1), Err(Error::InvalidBinCount(1))));
        assert!(matches!(histogram(&t(&[1.01]), 4), Err(Error::RangeViolation { .. })));
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(shannon_entropy(&t(&[0.3; 10]), 256).unwrap(), 0.0);
        assert_eq!(shannon_entropy(&t(&[0.0, 1.0, 0.0, 1.0]), 256).unwrap(), 1.0);
        let uniform: Vec<f64> = (0..256).map(|i| (i as f64 + 0.5) / 256.0).collect();
        assert_eq!(shannon_entropy(&t(&uniform), 256).unwrap(), 8.0);
    }

    #[test]
    fn report_and_csv() {
        let r = assess(&t(&[0.0, 0.25, 0.75, 1.0]), 4).unwrap();
        assert_eq!(r.histogram, vec![1, 1, 0, 2]);
        assert_eq!(r.occupied_bins, 3);
        assert_eq!((r.min, r.max, r.mean), (0.0, 1.0, 0.5));
        assert_eq!(r.histogram_csv(), "bin_index,lower_edge,count\n0,0,1\n1,0.25,1\n2,0.5,0\n3,0.75,2\n");
    }

    #[test]
    fn profiles() {
        let grid = BrightnessTable::from_fn(3, 3, |x, y| (3 * y + x) as f64).unwrap();
        assert_eq!(brightness_profile(&grid, Line::Column(0)).unwrap(), vec![0.0, 3.0, 6.0]);
        assert_eq!(brightness_profile(&grid, Line::Row(2)).unwrap(), vec![6.0, 7.0, 8.0]);
        assert!(brightness_profile(&grid, Line::Column(3)).is_err());
        let flat = BrightnessTable::constant(2, 5, 0.4).unwrap();
        assert_eq!(brightness_profile(&flat, Line::Column(1)).unwrap(), vec![0.4; 5]);
    }

    #[test]
    fn line_parsing() {
        assert_eq!("col:4".parse::<Line>().unwrap(), Line::Column(4));
        assert_eq!("row:0".parse::<Line>().unwrap(), Line::Row(0));
        assert!("diag:1".parse::<Line>().is_err());
        assert!("col".parse::<Line>().is_err());
    }
}
