//! Brightness tables, normalization and image file I/O.
//!
//! All values are kept in double precision; quantization to 8 or 16 bit
//! samples only happens when a table is saved.

pub mod pgm;
mod png;
mod table;

use std::fs;
use std::path::Path;

pub use pgm::PgmEncoding;
pub use table::{BrightnessTable, ChannelTag};

use crate::error::{Error, Result};

/// On-disk container.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FileFormat {
    Pgm,
    Png,
}

impl FileFormat {
    /// Infers the format from the file extension (`pgm`/`pnm` or `png`).
    pub fn from_path(path: &Path) -> Result<Self> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .unwrap_or_default();
        match ext.as_str() {
            "pgm" | "pnm" => Ok(FileFormat::Pgm),
            "png" => Ok(FileFormat::Png),
            _ => Err(Error::UnsupportedFormat(path.display().to_string())),
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            FileFormat::Pgm => "pgm",
            FileFormat::Png => "png",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BitDepth {
    Eight,
    Sixteen,
}

impl BitDepth {
    pub fn from_bits(bits: u32) -> Result<Self> {
        match bits {
            8 => Ok(BitDepth::Eight),
            16 => Ok(BitDepth::Sixteen),
            b => Err(Error::UnsupportedBitDepth(format!("{b} bits"))),
        }
    }

    pub fn max_sample(self) -> u16 {
        match self {
            BitDepth::Eight => 255,
            BitDepth::Sixteen => 65535,
        }
    }

    /// Largest round-trip error of a save/load cycle.
    pub fn step(self) -> f64 {
        1.0 / self.max_sample() as f64
    }
}

/// ITU-R BT.601 luma of integer samples, scaled by `max`.
///
/// The weighted sum is formed on integer-valued doubles so that gray input
/// (`r == g == b`) maps back to exactly `r / max`.
pub fn luminance(r: u16, g: u16, b: u16, max: u16) -> f64 {
    let weighted = 299.0 * r as f64 + 587.0 * g as f64 + 114.0 * b as f64;
    weighted / 1000.0 / max as f64
}

/// Scales a `[0, 1]` value to an integer sample, rounding half up.
pub fn quantize(value: f64, depth: BitDepth) -> u16 {
    let max = depth.max_sample() as f64;
    (value * max + 0.5).floor().clamp(0.0, max) as u16
}

fn samples_to_table(width: usize, height: usize, samples: &[u16], max: u16) -> Result<BrightnessTable> {
    let scale = max as f64;
    BrightnessTable::new(width, height, samples.iter().map(|&s| s as f64 / scale).collect())?.with_range(0.0, 1.0)
}

fn read_file(path: &Path) -> Result<Vec<u8>> {
    match fs::read(path) {
        Ok(b) => Ok(b),
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Err(Error::FileNotFound(path.to_path_buf())),
        Err(e) => Err(e.into()),
    }
}

/// Decodes an in-memory image into a `[0, 1]` table. RGB input is reduced
/// to BT.601 luminance.
pub fn decode_image(data: &[u8], format: FileFormat) -> Result<BrightnessTable> {
    match format {
        FileFormat::Pgm => {
            let map = pgm::decode(data)?;
            samples_to_table(map.width, map.height, &map.samples, map.maxval)
        }
        FileFormat::Png => {
            let raster = png::decode(data)?;
            let (w, h, max) = (raster.width, raster.height, raster.max);
            match raster.channels {
                png::Channels::Gray(s) => samples_to_table(w, h, &s, max),
                png::Channels::Rgb(r, g, b) => {
                    let values = r
                        .iter()
                        .zip(&g)
                        .zip(&b)
                        .map(|((&r, &g), &b)| luminance(r, g, b, max))
                        .collect();
                    BrightnessTable::new(w, h, values)?.with_range(0.0, 1.0)
                }
            }
        }
    }
}

/// Loads an image file as a `[0, 1]` brightness table.
pub fn load_image(path: impl AsRef<Path>, format: FileFormat) -> Result<BrightnessTable> {
    decode_image(&read_file(path.as_ref())?, format)
}

/// Loads an image, inferring the format from the extension.
pub fn load(path: impl AsRef<Path>) -> Result<BrightnessTable> {
    let path = path.as_ref();
    load_image(path, FileFormat::from_path(path)?)
}

/// Loads the R, G, B planes separately. Grayscale input is replicated into
/// all three planes.
pub fn load_rgb(path: impl AsRef<Path>) -> Result<[BrightnessTable; 3]> {
    let path = path.as_ref();
    let data = read_file(path)?;
    match FileFormat::from_path(path)? {
        FileFormat::Pgm => {
            let t = decode_image(&data, FileFormat::Pgm)?;
            Ok([t.clone(), t.clone(), t])
        }
        FileFormat::Png => {
            let raster = png::decode(&data)?;
            let (w, h, max) = (raster.width, raster.height, raster.max);
            match raster.channels {
                png::Channels::Gray(s) => {
                    let t = samples_to_table(w, h, &s, max)?;
                    Ok([t.clone(), t.clone(), t])
                }
                png::Channels::Rgb(r, g, b) => Ok([
                    samples_to_table(w, h, &r, max)?,
                    samples_to_table(w, h, &g, max)?,
                    samples_to_table(w, h, &b, max)?,
                ]),
            }
        }
    }
}

/// Encodes a `[0, 1]` table. PGM output uses the raw (`P5`) encoding.
pub fn encode_image(table: &BrightnessTable, format: FileFormat, depth: BitDepth) -> Result<Vec<u8>> {
    table.check_unit_range()?;
    let samples: Vec<u16> = table.values().iter().map(|&v| quantize(v, depth)).collect();
    let mut out = Vec::new();
    match format {
        FileFormat::Pgm => {
            let map = pgm::Graymap {
                width: table.width(),
                height: table.height(),
                maxval: depth.max_sample(),
                samples,
            };
            pgm::encode(&mut out, &map, PgmEncoding::Raw)?;
        }
        FileFormat::Png => png::encode_gray(&mut out, table.width(), table.height(), &samples, depth)?,
    }
    Ok(out)
}

/// Writes a plain (`P2`) or raw (`P5`) PGM.
pub fn encode_pgm(table: &BrightnessTable, depth: BitDepth, encoding: PgmEncoding) -> Result<Vec<u8>> {
    table.check_unit_range()?;
    let map = pgm::Graymap {
        width: table.width(),
        height: table.height(),
        maxval: depth.max_sample(),
        samples: table.values().iter().map(|&v| quantize(v, depth)).collect(),
    };
    let mut out = Vec::new();
    pgm::encode(&mut out, &map, encoding)?;
    Ok(out)
}

pub fn save_image(table: &BrightnessTable, path: impl AsRef<Path>, format: FileFormat, depth: BitDepth) -> Result<()> {
    let bytes = encode_image(table, format, depth)?;
    fs::write(path, bytes)?;
    Ok(())
}

/// Saves with the format inferred from the extension.
pub fn save(table: &BrightnessTable, path: impl AsRef<Path>, depth: BitDepth) -> Result<()> {
    let path = path.as_ref();
    save_image(table, path, FileFormat::from_path(path)?, depth)
}

/// Writes three `[0, 1]` planes as an RGB PNG.
pub fn save_rgb(planes: &[BrightnessTable; 3], path: impl AsRef<Path>, depth: BitDepth) -> Result<()> {
    let path = path.as_ref();
    if FileFormat::from_path(path)? != FileFormat::Png {
        return Err(Error::UnsupportedFormat(format!("{}: RGB output must be PNG", path.display())));
    }
    planes[0].ensure_same_dims(&planes[1])?;
    planes[0].ensure_same_dims(&planes[2])?;
    let mut interleaved = Vec::with_capacity(planes[0].len() * 3);
    for p in planes {
        p.check_unit_range()?;
    }
    for i in 0..planes[0].len() {
        for p in planes {
            interleaved.push(quantize(p.values()[i], depth));
        }
    }
    let mut out = Vec::new();
    png::encode_rgb(&mut out, planes[0].width(), planes[0].height(), &interleaved, depth)?;
    fs::write(path, out)?;
    Ok(())
}

/// Divides every value by the table maximum. An all-zero table is returned
/// unchanged.
pub fn normalize(table: &BrightnessTable) -> Result<BrightnessTable> {
    if let Some(i) = table.values().iter().position(|&v| v < 0.0) {
        return Err(Error::NegativeValue {
            x: i % table.width(),
            y: i / table.width(),
            value: table.values()[i],
        });
    }
    let max = table.max();
    if max == 0.0 {
        return Ok(table.clone());
    }
    table.map(|v| v / max)?.with_tag(table.tag()).with_range(0.0, 1.0)
}

/// Brightness inversion `x -> 1 - x`.
pub fn invert(table: &BrightnessTable) -> Result<BrightnessTable> {
    table.check_unit_range()?;
    table.map(|v| 1.0 - v)?.with_tag(table.tag()).with_range(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(values: &[f64]) -> BrightnessTable {
        BrightnessTable::new(values.len(), 1, values.to_vec()).unwrap()
    }

    #[test]
    fn loads_plain_pgm_example() {
        let t = decode_image(b"P2\n2 2\n255\n0 255 128 64\n", FileFormat::Pgm).unwrap();
        assert_eq!(t.values(), &[0.0, 1.0, 128.0 / 255.0, 64.0 / 255.0]);
        assert_eq!(t.range(), (0.0, 1.0));
    }

    #[test]
    fn black_pgm_is_zero_table() {
        let t = decode_image(b"P5\n3 2\n255\n\0\0\0\0\0\0", FileFormat::Pgm).unwrap();
        assert!(t.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn missing_file() {
        let err = load_image("/nonexistent/definitely/missing.pgm", FileFormat::Pgm).unwrap_err();
        assert!(matches!(err, Error::FileNotFound(_)));
    }

    #[test]
    fn quantization_rounds_half_up() {
        assert_eq!(quantize(1.0, BitDepth::Eight), 255);
        assert_eq!(quantize(0.5, BitDepth::Eight), 128);
        assert_eq!(quantize(0.0, BitDepth::Sixteen), 0);
        assert_eq!(quantize(1.0, BitDepth::Sixteen), 65535);
    }

    #[test]
    fn save_rejects_out_of_range() {
        let t = table(&[0.2, 1.2]);
        assert!(matches!(encode_image(&t, FileFormat::Pgm, BitDepth::Eight), Err(Error::RangeViolation { .. })));
    }

    #[test]
    fn gray_pixel_luminance_is_exact() {
        for c in [0u16, 1, 17, 128, 254, 255] {
            assert_eq!(luminance(c, c, c, 255), c as f64 / 255.0);
        }
        for c in [0u16, 1, 4097, 65535] {
            assert_eq!(luminance(c, c, c, 65535), c as f64 / 65535.0);
        }
        assert_eq!(luminance(255, 255, 255, 255), 1.0);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&table(&[2.0, 4.0, 8.0])).unwrap().values(), &[0.25, 0.5, 1.0]);
        let zero = table(&[0.0, 0.0, 0.0]);
        assert_eq!(normalize(&zero).unwrap(), zero);
        let unit = table(&[0.1, 1.0, 0.7]);
        assert_eq!(normalize(&unit).unwrap().values(), unit.values());
        assert!(matches!(normalize(&table(&[1.0, -0.1])), Err(Error::NegativeValue { .. })));
    }

    #[test]
    fn invert_examples() {
        assert_eq!(invert(&table(&[0.0, 0.3, 1.0])).unwrap().values(), &[1.0, 0.7, 0.0]);
        assert_eq!(invert(&table(&[0.5, 0.5])).unwrap().values(), &[0.5, 0.5]);
        assert!(matches!(invert(&table(&[1.5])), Err(Error::RangeViolation { .. })));
    }

    #[test]
    fn format_from_extension() {
        assert_eq!(FileFormat::from_path(Path::new("a/b.PGM")).unwrap(), FileFormat::Pgm);
        assert_eq!(FileFormat::from_path(Path::new("x.png")).unwrap(), FileFormat::Png);
        assert!(FileFormat::from_path(Path::new("x.jpg")).is_err());
    }
}
