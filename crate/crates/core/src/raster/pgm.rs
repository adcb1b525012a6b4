//! Netpbm graymap (PGM) reading and writing.
//!
//! Both the plain (`P2`) and raw (`P5`) encodings are supported with a
//! maxval of 255 or 65535. Raw 16-bit samples are big-endian.

use std::io::Write;

use crate::error::{Error, Result};

/// Decoded PGM raster before scaling to brightness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graymap {
    pub width: usize,
    pub height: usize,
    pub maxval: u16,
    pub samples: Vec<u16>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PgmEncoding {
    /// `P2`, whitespace separated decimal samples.
    Plain,
    /// `P5`, binary samples.
    Raw,
}

struct Cursor<'a> {
    data: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_whitespace_and_comments(&mut self) {
        while self.pos < self.data.len() {
            let b = self.data[self.pos];
            if b == b'#' {
                while self.pos < self.data.len() && self.data[self.pos] != b'\n' && self.data[self.pos] != b'\r' {
                    self.pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn read_number(&mut self, what: &str) -> Result<u64> {
        self.skip_whitespace_and_comments();
        let start = self.pos;
        while self.pos < self.data.len() && self.data[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::MalformedImage(format!("expected {what}")));
        }
        std::str::from_utf8(&self.data[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::MalformedImage(format!("{what} out of range")))
    }
}

/// Parses a complete PGM file.
pub fn decode(data: &[u8]) -> Result<Graymap> {
    if data.len() < 2 {
        return Err(Error::MalformedImage("file too short for a magic number".into()));
    }
    let encoding = match &data[..2] {
        b"P2" => PgmEncoding::Plain,
        b"P5" => PgmEncoding::Raw,
        m => {
            return Err(Error::MalformedImage(format!(
                "bad magic {:?}, expected P2 or P5",
                String::from_utf8_lossy(m)
            )))
        }
    };
    let mut cur = Cursor { data, pos: 2 };
    let width = cur.read_number("width")? as usize;
    let height = cur.read_number("height")? as usize;
    let maxval = cur.read_number("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::MalformedImage(format!("zero dimension {width}x{height}")));
    }
    if maxval != 255 && maxval != 65535 {
        return Err(Error::UnsupportedBitDepth(format!("maxval {maxval} (expected 255 or 65535)")));
    }
    let maxval = maxval as u16;
    let count = width
        .checked_mul(height)
        .ok_or_else(|| Error::MalformedImage("dimensions overflow".into()))?;

    let samples = match encoding {
        PgmEncoding::Plain => {
            let mut samples = Vec::with_capacity(count);
            for _ in 0..count {
                let s = cur.read_number("sample")?;
                if s > maxval as u64 {
                    return Err(Error::MalformedImage(format!("sample {s} exceeds maxval {maxval}")));
                }
                samples.push(s as u16);
            }
            samples
        }
        PgmEncoding::Raw => {
            // exactly one whitespace byte separates the header from the raster
            match data.get(cur.pos) {
                Some(b) if b.is_ascii_whitespace() => cur.pos += 1,
                _ => return Err(Error::MalformedImage("missing whitespace after maxval".into())),
            }
            let bytes_per_sample = if maxval > 255 { 2 } else { 1 };
            let raster = &data[cur.pos..];
            if raster.len() < count * bytes_per_sample {
                return Err(Error::MalformedImage(format!(
                    "raster holds {} bytes, expected {}",
                    raster.len(),
                    count * bytes_per_sample
                )));
            }
            let samples: Vec<u16> = if bytes_per_sample == 1 {
                raster[..count].iter().map(|&b| b as u16).collect()
            } else {
                raster[..count * 2]
                    .chunks_exact(2)
                    .map(|c| u16::from_be_bytes([c[0], c[1]]))
                    .collect()
            };
            if let Some(s) = samples.iter().find(|&&s| s > maxval) {
                return Err(Error::MalformedImage(format!("sample {s} exceeds maxval {maxval}")));
            }
            samples
        }
    };
    Ok(Graymap { width, height, maxval, samples })
}

/// Serializes a graymap. Plain output wraps rows at 70 characters per the
/// Netpbm line-length recommendation.
pub fn encode<W: Write>(out: &mut W, map: &Graymap, encoding: PgmEncoding) -> Result<()> {
    let magic = match encoding {
        PgmEncoding::Plain => "P2",
        PgmEncoding::Raw => "P5",
    };
    write!(out, "{magic}\n{} {}\n{}\n", map.width, map.height, map.maxval)?;
    match encoding {
        PgmEncoding::Raw => {
            if map.maxval > 255 {
                let mut buf = Vec::with_capacity(map.samples.len() * 2);
                for s in &map.samples {
                    buf.extend_from_slice(&s.to_be_bytes());
                }
                out.write_all(&buf)?;
            } else {
                let buf: Vec<u8> = map.samples.iter().map(|&s| s as u8).collect();
                out.write_all(&buf)?;
            }
        }
        PgmEncoding::Plain => {
            for row in map.samples.chunks(map.width) {
                let mut line = String::new();
                for s in row {
                    let tok = s.to_string();
                    if !line.is_empty() && line.len() + 1 + tok.len() > 70 {
                        writeln!(out, "{line}")?;
                        line.clear();
                    }
                    if !line.is_empty() {
                        line.push(' ');
                    }
                    line.push_str(&tok);
                }
                writeln!(out, "{line}")?;
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plain_with_comments() {
        let src = b"P2\n# a comment\n2 2 # trailing\n255\n0 255\n128 64\n";
        let map = decode(src).unwrap();
        assert_eq!((map.width, map.height, map.maxval), (2, 2, 255));
        assert_eq!(map.samples, vec![0, 255, 128, 64]);
    }

    #[test]
    fn raw_sixteen_bit_is_big_endian() {
        let mut src = b"P5 2 1 65535\n".to_vec();
        src.extend_from_slice(&[0x01, 0x02, 0xff, 0xff]);
        let map = decode(&src).unwrap();
        assert_eq!(map.samples, vec![0x0102, 0xffff]);
    }

    #[test]
    fn raw_sample_may_look_like_whitespace() {
        // first raster byte is 0x0a ('\n'); only one separator byte is consumed
        let src = [b"P5\n2 1\n255\n".as_slice(), &[10, 32]].concat();
        assert_eq!(decode(&src).unwrap().samples, vec![10, 32]);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(decode(b"P6\n1 1\n255\n\0\0\0"), Err(Error::MalformedImage(_))));
        assert!(matches!(decode(b"P2\n2 2\n255\n1 2 3"), Err(Error::MalformedImage(_))));
        assert!(matches!(decode(b"P5\n2 2\n255\n\x01"), Err(Error::MalformedImage(_))));
        assert!(matches!(decode(b"P2\n0 2\n255\n"), Err(Error::MalformedImage(_))));
        assert!(matches!(decode(b"P2\n1 1\n255\n256\n"), Err(Error::MalformedImage(_))));
        assert!(matches!(decode(b"P"), Err(Error::MalformedImage(_))));
    }

    #[test]
    fn odd_maxval_is_unsupported() {
        assert!(matches!(decode(b"P2\n1 1\n100\n5\n"), Err(Error::UnsupportedBitDepth(_))));
    }

    #[test]
    fn encode_is_bit_exact() {
        let map = Graymap { width: 3, height: 1, maxval: 255, samples: vec![0, 128, 255] };
        let mut raw = Vec::new();
        encode(&mut raw, &map, PgmEncoding::Raw).unwrap();
        assert_eq!(raw, b"P5\n3 1\n255\n\x00\x80\xff");
        let mut plain = Vec::new();
        encode(&mut plain, &map, PgmEncoding::Plain).unwrap();
        assert_eq!(plain, b"P2\n3 1\n255\n0 128 255\n");
    }

    #[test]
    fn plain_lines_stay_short() {
        let map = Graymap { width: 40, height: 1, maxval: 65535, samples: vec![65535; 40] };
        let mut plain = Vec::new();
        encode(&mut plain, &map, PgmEncoding::Plain).unwrap();
        let text = String::from_utf8(plain).unwrap();
        assert!(text.lines().all(|l| l.len() <= 70));
        assert_eq!(decode(text.as_bytes()).unwrap(), map);
    }
}
