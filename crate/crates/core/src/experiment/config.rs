use std::f64::consts::FRAC_PI_2;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::angle::{Angle, Rational};
use crate::error::{Error, Result};
use crate::pulse::{EngineConventions, OffsetSign, Relaxation, RotationSense, SpinSystemParams};
use crate::quantum::DensityOperator;
use crate::theory::Orientation;

/// Complete sign-convention record: how pulses and frame offsets enter the
/// propagators, and the orientation tying loop sense to phase sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    pub engine: EngineConventions,
    pub orientation: Orientation,
}

impl Conventions {
    /// Engine conventions under which the preparation sequences reach their
    /// target states and the pure-state run reproduces the orientation `s`.
    /// [`calibrate`](super::calibrate) derives the same values from scratch.
    pub fn calibrated(orientation: Orientation) -> Self {
        let offset_sign = match orientation {
            Orientation::Positive => OffsetSign::Reversed,
            Orientation::Negative => OffsetSign::Standard,
        };
        Self { engine: EngineConventions { rotation_sense: RotationSense::LeftHanded, offset_sign }, orientation }
    }
}

impl Default for Conventions {
    fn default() -> Self {
        Self::calibrated(Orientation::Positive)
    }
}

impl fmt::Display for Conventions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sense = match self.engine.rotation_sense {
            RotationSense::RightHanded => "right",
            RotationSense::LeftHanded => "left",
        };
        let offset = match self.engine.offset_sign {
            OffsetSign::Standard => "standard",
            OffsetSign::Reversed => "reversed",
        };
        write!(f, "s={},sense={sense},offset={offset}", self.orientation)
    }
}

impl FromStr for Conventions {
    type Err = Error;

    /// `s=+1`, `s=-1,sense=left,offset=reversed`, ...; keys left out take
    /// their calibrated values for the given `s`.
    fn from_str(text: &str) -> Result<Self> {
        let mut orientation = Orientation::Positive;
        let mut sense = None;
        let mut offset = None;
        for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Usage(format!("convention item '{item}' is not key=value")))?;
            match key.trim() {
                "s" => orientation = value.parse()?,
                "sense" => {
                    sense = Some(match value.trim() {
                        "left" => RotationSense::LeftHanded,
                        "right" => RotationSense::RightHanded,
                        v => return Err(Error::Usage(format!("sense must be left or right, got '{v}'"))),
                    })
                }
                "offset" => {
                    offset = Some(match value.trim() {
                        "standard" => OffsetSign::Standard,
                        "reversed" => OffsetSign::Reversed,
                        v => return Err(Error::Usage(format!("offset must be standard or reversed, got '{v}'"))),
                    })
                }
                k => return Err(Error::Usage(format!("unknown convention key '{k}' (expected s, sense, offset)"))),
            }
        }
        let mut conv = Conventions::calibrated(orientation);
        if let Some(s) = sense {
            conv.engine.rotation_sense = s;
        }
        if let Some(o) = offset {
            conv.engine.offset_sign = o;
        }
        Ok(conv)
    }
}

/// Which controlled evolution the cycle stage applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Model {
    /// The pulse sequence with J evolution, both branches pulsed.
    #[default]
    LiteralSequence,
    /// `|passive><passive| (x) I + |active><active| (x) U_lune`.
    IdealizedControlledU,
}

impl FromStr for Model {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" | "literal-sequence" => Ok(Model::LiteralSequence),
            "idealized" | "idealized-controlled-u" => Ok(Model::IdealizedControlledU),
            other => Err(Error::Usage(format!(
                "unknown model '{other}' (expected literal-sequence or idealized-controlled-u)"
            ))),
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Model::LiteralSequence => "literal-sequence",
            Model::IdealizedControlledU => "idealized-controlled-u",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    /// Lune inclination; the solid angle is `4 theta`.
    pub theta: Angle,
    /// Purity index, `r = cos(n pi/12)`.
    pub n: u32,
    pub model: Model,
    pub relaxation: Option<Relaxation>,
    pub conventions: Conventions,
    /// Spin system; its engine conventions are replaced by `conventions.engine`.
    pub system: SpinSystemParams,
    /// Record the state after every stage and along the cycle.
    pub snapshots: bool,
}

impl ExperimentConfig {
    pub fn new(theta: Angle, n: u32) -> Self {
        Self {
            theta,
            n,
            model: Model::default(),
            relaxation: None,
            conventions: Conventions::default(),
            system: SpinSystemParams::default(),
            snapshots: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let t = self.theta.radians();
        if !(0.0..=FRAC_PI_2).contains(&t) {
            return Err(Error::Domain(format!("theta = {t} is outside [0, pi/2]")));
        }
        if self.n > 11 {
            return Err(Error::Domain(format!("purity index {} is outside 0..=11", self.n)));
        }
        if self.relaxation.is_some() && self.model == Model::IdealizedControlledU {
            return Err(Error::Usage("relaxation needs the literal-sequence model, which has delays".into()));
        }
        self.params().validate()
    }

    pub fn omega(&self) -> Angle {
        self.theta * Rational::from_integer(4)
    }

    /// Spin-system parameters carrying the configured engine conventions.
    pub fn params(&self) -> SpinSystemParams {
        SpinSystemParams { conventions: self.conventions.engine, ..self.system }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Stage {
    Thermal,
    EffectivePure,
    Mixed,
    Cycle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub stage: Stage,
    /// Seconds since the start of the stage.
    pub time: f64,
    pub state: DensityOperator,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub config: ExperimentConfig,
    /// Signed purity `cos(n pi/12)`.
    pub r: f64,
    pub gamma_measured: f64,
    pub visibility_measured: f64,
    pub gamma_theory: f64,
    pub visibility_theory: f64,
    /// `gamma_measured - gamma_theory` wrapped into `(-pi, pi]`; 0 when undefined.
    pub residual: f64,
    /// Both phases defined.
    pub defined: bool,
    pub snapshots: Option<Vec<Snapshot>>,
}
