use std::io::{Cursor, Write};

use image::{DynamicImage, ExtendedColorType, ImageEncoder, ImageFormat};

use super::BitDepth;
use crate::error::{Error, Result};

pub(super) enum Channels {
    Gray(Vec<u16>),
    Rgb(Vec<u16>, Vec<u16>, Vec<u16>),
}

pub(super) struct Raster {
    pub width: usize,
    pub height: usize,
    pub max: u16,
    pub channels: Channels,
}

fn split_rgb<T: Copy + Into<u16>>(data: &[T]) -> Channels {
    let mut r = Vec::with_capacity(data.len() / 3);
    let mut g = Vec::with_capacity(data.len() / 3);
    let mut b = Vec::with_capacity(data.len() / 3);
    for px in data.chunks_exact(3) {
        r.push(px[0].into());
        g.push(px[1].into());
        b.push(px[2].into());
    }
    Channels::Rgb(r, g, b)
}

pub(super) fn decode(data: &[u8]) -> Result<Raster> {
    let img = image::load_from_memory_with_format(data, ImageFormat::Png)
        .map_err(|e| Error::MalformedImage(e.to_string()))?;
    let (width, height) = (img.width() as usize, img.height() as usize);
    let (max, channels) = match img {
        DynamicImage::ImageLuma8(buf) => (255, Channels::Gray(buf.as_raw().iter().map(|&s| s as u16).collect())),
        DynamicImage::ImageLuma16(buf) => (65535, Channels::Gray(buf.into_raw())),
        DynamicImage::ImageRgb8(buf) => (255, split_rgb(buf.as_raw())),
        DynamicImage::ImageRgb16(buf) => (65535, split_rgb(buf.as_raw())),
        other => {
            return Err(Error::UnsupportedBitDepth(format!("PNG color type {:?}", other.color())));
        }
    };
    Ok(Raster { width, height, max, channels })
}

fn write_png<W: Write>(out: &mut W, width: usize, height: usize, bytes: &[u8], color: ExtendedColorType) -> Result<()> {
    let mut buf = Cursor::new(Vec::new());
    image::codecs::png::PngEncoder::new(&mut buf)
        .write_image(bytes, width as u32, height as u32, color)
        .map_err(|e| Error::Io(std::io::Error::other(e)))?;
    out.write_all(buf.get_ref())?;
    Ok(())
}

// 16-bit samples are handed to the encoder in native byte order
fn sample_bytes(samples: &[u16], depth: BitDepth) -> Vec<u8> {
    match depth {
        BitDepth::Eight => samples.iter().map(|&s| s as u8).collect(),
        BitDepth::Sixteen => samples.iter().flat_map(|s| s.to_ne_bytes()).collect(),
    }
}

pub(super) fn encode_gray<W: Write>(out: &mut W, width: usize, height: usize, samples: &[u16], depth: BitDepth) -> Result<()> {
    let color = match depth {
        BitDepth::Eight => ExtendedColorType::L8,
        BitDepth::Sixteen => ExtendedColorType::L16,
    };
    write_png(out, width, height, &sample_bytes(samples, depth), color)
}

pub(super) fn encode_rgb<W: Write>(out: &mut W, width: usize, height: usize, samples: &[u16], depth: BitDepth) -> Result<()> {
    let color = match depth {
        BitDepth::Eight => ExtendedColorType::Rgb8,
        BitDepth::Sixteen => ExtendedColorType::Rgb16,
    };
    write_png(out, width, height, &sample_bytes(samples, depth), color)
}
