//! Input generators shared by the benchmarks.

use phasefuse::{BrightnessTable, ChannelTag};

/// Smooth scene with a faint texture, values in `(0, 1]`. `phase` shifts
/// the pattern so that two calls give distinct but related channels.
pub fn scene(width: usize, height: usize, phase: f64) -> BrightnessTable {
    BrightnessTable::from_fn(width, height, |x, y| {
        let fx = x as f64 / width as f64;
        let fy = y as f64 / height as f64;
        let wave = (12.0 * fx + phase).sin() * (9.0 * fy - phase).cos();
        0.55 + 0.4 * wave * (0.5 + 0.5 * fx)
    })
    .expect("generated values are finite")
}

pub fn scene_pair(width: usize, height: usize) -> (BrightnessTable, BrightnessTable) {
    (
        scene(width, height, 0.0).with_tag(ChannelTag::VisibleA),
        scene(width, height, 1.3).with_tag(ChannelTag::InfraredB),
    )
}
