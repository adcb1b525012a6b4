//! Fusion of aligned visible and infrared images through a complex-valued
//! representation, plus the quality measures used to compare fused outputs.
//!
//! The visible table `u` and infrared table `v` are treated as the real and
//! imaginary parts of a complex image. From it the crate derives amplitude,
//! tangent-phase, arctangent-phase and combined renderings, next to the
//! plain and weighted sums they generalize.

pub mod error;
pub mod fusion;
pub mod metrics;
pub mod raster;
pub mod synth;

pub use error::{Error, Result};
pub use fusion::{ChannelWeights, ComplexImage, Epsilon, Ordering};
pub use metrics::{ContrastReport, PixelPair, QualityReport};
pub use raster::{BitDepth, BrightnessTable, ChannelTag, FileFormat};
