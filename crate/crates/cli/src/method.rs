use clap::ValueEnum;
use serde::Serialize;

use phasefuse::fusion::{self, ChannelWeights, Epsilon, Ordering};
use phasefuse::raster::{invert, normalize};
use phasefuse::{BrightnessTable, ChannelTag};

use crate::error::CliResult;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodTag {
    Simple,
    Weighted,
    Amplitude,
    TNeg,
    TPos,
    PhiNeg,
    PhiPos,
    Sin2phi,
    Cos2phiNeg,
    Cos2phiPos,
}

impl MethodTag {
    pub const ALL: [MethodTag; 10] = [
        MethodTag::Simple,
        MethodTag::Weighted,
        MethodTag::Amplitude,
        MethodTag::TNeg,
        MethodTag::TPos,
        MethodTag::PhiNeg,
        MethodTag::PhiPos,
        MethodTag::Sin2phi,
        MethodTag::Cos2phiNeg,
        MethodTag::Cos2phiPos,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MethodTag::Simple => "simple",
            MethodTag::Weighted => "weighted",
            MethodTag::Amplitude => "amplitude",
            MethodTag::TNeg => "t-neg",
            MethodTag::TPos => "t-pos",
            MethodTag::PhiNeg => "phi-neg",
            MethodTag::PhiPos => "phi-pos",
            MethodTag::Sin2phi => "sin2phi",
            MethodTag::Cos2phiNeg => "cos2phi-neg",
            MethodTag::Cos2phiPos => "cos2phi-pos",
        }
    }

    /// File-name friendly form (`t_neg`, `phi_pos`, ...).
    pub fn file_stem(self) -> String {
        self.name().replace('-', "_")
    }

    pub fn uses_epsilon(self) -> bool {
        matches!(self, MethodTag::TNeg | MethodTag::TPos | MethodTag::PhiNeg | MethodTag::PhiPos)
    }

    pub fn uses_weights(self) -> bool {
        matches!(
            self,
            MethodTag::Weighted | MethodTag::Amplitude | MethodTag::Sin2phi | MethodTag::Cos2phiNeg | MethodTag::Cos2phiPos
        )
    }

    pub fn is_sweepable(self) -> bool {
        self.uses_epsilon()
    }

    fn ordering(self) -> Ordering {
        match self {
            MethodTag::TPos | MethodTag::PhiPos | MethodTag::Cos2phiPos => Ordering::Pos,
            _ => Ordering::Neg,
        }
    }

    /// How the raw output is mapped into `[0, 1]` for saving.
    pub fn display(self) -> DisplayMap {
        match self {
            MethodTag::PhiNeg | MethodTag::PhiPos => DisplayMap::Identity,
            MethodTag::Cos2phiNeg | MethodTag::Cos2phiPos => DisplayMap::MinMax,
            _ => DisplayMap::DivideByMax,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DisplayMap {
    Identity,
    DivideByMax,
    MinMax,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FusionMethod {
    pub tag: MethodTag,
    pub epsilon: Epsilon,
    pub weights: ChannelWeights,
    pub invert_output: bool,
}

impl FusionMethod {
    pub fn new(tag: MethodTag) -> Self {
        Self { tag, epsilon: Epsilon::default(), weights: ChannelWeights::default(), invert_output: false }
    }

    pub fn with_epsilon(mut self, epsilon: Epsilon) -> Self {
        self.epsilon = epsilon;
        self
    }

    pub fn with_weights(mut self, weights: ChannelWeights) -> Self {
        self.weights = weights;
        self
    }

    pub fn inverted(mut self, invert_output: bool) -> Self {
        self.invert_output = invert_output;
        self
    }

    pub fn descriptor(&self) -> MethodDescriptor {
        MethodDescriptor {
            tag: self.tag,
            epsilon: self.tag.uses_epsilon().then(|| self.epsilon.value()),
            weights: self.tag.uses_weights().then(|| [self.weights.w_a(), self.weights.w_b()]),
            display: self.tag.display(),
            invert_output: self.invert_output,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodDescriptor {
    pub tag: MethodTag,
    pub epsilon: Option<f64>,
    pub weights: Option<[f64; 2]>,
    pub display: DisplayMap,
    pub invert_output: bool,
}

/// Raw fused values together with the `[0, 1]` copy that gets saved.
#[derive(Debug, Clone)]
pub struct Rendering {
    pub raw: BrightnessTable,
    pub display: BrightnessTable,
    /// `0/0` pixels of a phi image with epsilon 0.
    pub indeterminate: usize,
}

pub fn render(u: &BrightnessTable, v: &BrightnessTable, method: &FusionMethod) -> CliResult<Rendering> {
    let u = u.clone().with_tag(ChannelTag::VisibleA);
    let v = v.clone().with_tag(ChannelTag::InfraredB);
    let tag = method.tag;
    let complex = || fusion::make_complex(&u, &v, tag.ordering(), method.weights);
    let mut indeterminate = 0;
    let raw = match tag {
        MethodTag::Simple => fusion::simple_fuse(&u, &v)?,
        MethodTag::Weighted => fusion::weighted_fuse(&u, &v, method.weights)?,
        MethodTag::Amplitude => fusion::amplitude(&complex()?),
        MethodTag::TNeg | MethodTag::TPos => fusion::tangent_image(&u, &v, tag.ordering(), method.epsilon)?,
        MethodTag::PhiNeg | MethodTag::PhiPos => {
            let phi = fusion::phi_image(&u, &v, tag.ordering(), method.epsilon)?;
            indeterminate = phi.indeterminate;
            phi.table
        }
        MethodTag::Sin2phi => fusion::sin2phi_image(&complex()?),
        MethodTag::Cos2phiNeg | MethodTag::Cos2phiPos => fusion::cos2phi_image(&complex()?),
    };
    let mut display = match tag.display() {
        DisplayMap::Identity => raw.clone(),
        DisplayMap::DivideByMax => normalize(&raw)?,
        DisplayMap::MinMax => fusion::display_minmax(&raw)?,
    };
    if method.invert_output {
        display = invert(&display)?;
    }
    Ok(Rendering { raw, display, indeterminate })
}
