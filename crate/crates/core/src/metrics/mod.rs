//! Image quality measures: local contrast (measured and predicted),
//! histograms, Shannon entropy and brightness profiles.

mod contrast;
mod quality;

pub use contrast::{
    contrast_map, contrast_report, local_contrast, pair_contrast, predict_simple_contrast, predict_t_contrast,
    ContrastMap, ContrastReport, PixelPair, TContrast,
};
pub use quality::{
    assess, brightness_profile, entropy_from_counts, histogram, shannon_entropy, Line, QualityReport, DEFAULT_BINS,
};
