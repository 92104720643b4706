//! Experiment configuration: JSON on disk, resolved into core types.
//!
//! Times are given in ns and rates in MHz or kHz; everything is converted to
//! s and rad/s on resolution. Angles are either plain numbers (radians) or
//! strings of the form `"p/q pi"`, `"pi"`, `"-3/4 pi"` or `"0.25"`, the
//! rational forms parsed exactly.

use std::f64::consts::PI;
use std::path::Path;

use holonome_core::evolve::{LindbladParams, DEFAULT_LINDBLAD_STEPS, DEFAULT_UNITARY_STEPS};
use holonome_core::frames::{FrameFamily, FramePath, ThreeLevelSubspace};
use holonome_core::laws::{AngleLaw, LawSegment, PathLaws};
use holonome_core::paths::{op_schedule, ossp_schedule, s_gate, t_gate, target_su2, GateTarget, RotationConvention};
use holonome_core::reverse::GammaLaw;
use holonome_core::{CMat64, Schedule64};
use num_complex::Complex;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum Angle {
    Radians(f64),
    Text(String),
}

impl Default for Angle {
    fn default() -> Self {
        Angle::Radians(0.0)
    }
}

impl Angle {
    pub fn radians(&self) -> Result<f64, CliError> {
        match self {
            Angle::Radians(x) if x.is_finite() => Ok(*x),
            Angle::Radians(x) => Err(CliError::Validation(format!("angle {x} is not finite"))),
            Angle::Text(s) => parse_angle(s),
        }
    }
}

/// `"p/q pi"`, `"p pi"`, `"pi"`, `"-pi"` or a bare decimal in radians.
pub fn parse_angle(text: &str) -> Result<f64, CliError> {
    let bad = || CliError::Validation(format!("cannot parse angle {text:?}; expected e.g. \"1/3 pi\", \"pi\" or \"0.5\""));
    let t = text.trim();
    let Some(coeff) = t.strip_suffix("pi") else {
        return t.parse::<f64>().ok().filter(|x| x.is_finite()).ok_or_else(bad);
    };
    let coeff = coeff.trim().trim_end_matches('*').trim();
    let ratio = match coeff {
        "" | "+" => Ratio::from_integer(1i64),
        "-" => Ratio::from_integer(-1i64),
        c => c.parse::<Ratio<i64>>().map_err(|_| bad())?,
    };
    Ok(*ratio.numer() as f64 / *ratio.denom() as f64 * PI)
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "snake_case")]
pub enum FrameKind {
    /// Three-level frame with the ancilla chosen by `subspace`.
    #[default]
    ThreeLevel,
    /// Three-level frame driven through `φ` and `χ` with `θ`, `ξ` fixed.
    PhaseDriven,
    /// Six-level two-qubit frame.
    TwoQubit,
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "snake_case")]
pub enum Subspace {
    ExcitedAncilla,
    #[default]
    DarkAncilla,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ScheduleSpec {
    Op {
        chi1: Angle,
        xi2: Angle,
        #[serde(default)]
        xi0: Angle,
    },
    Ossp {
        xi2: Angle,
        #[serde(default)]
        xi0: Angle,
    },
}

impl ScheduleSpec {
    pub fn paper_op() -> Self {
        ScheduleSpec::Op {
            chi1: Angle::Text("1/3 pi".into()),
            xi2: Angle::Text("pi".into()),
            xi0: Angle::default(),
        }
    }

    pub fn paper_ossp() -> Self {
        ScheduleSpec::Ossp {
            xi2: Angle::Text("1/4 pi".into()),
            xi0: Angle::default(),
        }
    }

    pub fn build(&self, k: f64) -> Result<Schedule64, CliError> {
        Ok(match self {
            ScheduleSpec::Op { chi1, xi2, xi0 } => op_schedule(chi1.radians()?, xi2.radians()?, xi0.radians()?, k)?,
            ScheduleSpec::Ossp { xi2, xi0 } => ossp_schedule(xi2.radians()?, xi0.radians()?, k)?,
        })
    }
}

/// One angle channel inside a segment.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum ChannelSpec {
    Sweep { from: Angle, to: Angle },
    Jump { from: Angle, jump: Angle },
    Hold(Angle),
}

impl Default for ChannelSpec {
    fn default() -> Self {
        ChannelSpec::Hold(Angle::default())
    }
}

impl ChannelSpec {
    fn law(&self, duration: f64) -> Result<AngleLaw<f64>, CliError> {
        Ok(match self {
            ChannelSpec::Hold(a) => AngleLaw::Constant(a.radians()?),
            ChannelSpec::Sweep { from, to } => {
                let (a, b) = (from.radians()?, to.radians()?);
                if a == b {
                    AngleLaw::Constant(a)
                } else if duration > 0.0 {
                    AngleLaw::Linear { start: a, rate: (b - a) / duration }
                } else {
                    return Err(CliError::Validation(
                        "a sweep needs a positive duration; use {\"from\", \"jump\"} for instantaneous changes".into(),
                    ));
                }
            }
            ChannelSpec::Jump { from, jump } => AngleLaw::Jump { from: from.radians()?, delta: jump.radians()? },
        })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct SegmentSpec {
    pub duration_ns: f64,
    #[serde(default)]
    pub theta: ChannelSpec,
    #[serde(default)]
    pub phi: ChannelSpec,
    #[serde(default)]
    pub chi: ChannelSpec,
    #[serde(default)]
    pub xi: ChannelSpec,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct RandomSpec {
    pub draws: usize,
    pub seed: u64,
    /// Duration of each random path, ns.
    #[serde(default = "one")]
    pub duration_ns: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(rename_all = "snake_case")]
pub enum GammaSpec {
    Zero,
    XiCompensated,
    PhaseDrivenDecoupling,
    /// `(time ns, rate rad/ns)` knots, linearly interpolated.
    Table(Vec<(f64, f64)>),
}

impl GammaSpec {
    pub fn law(&self) -> GammaLaw<f64> {
        match self {
            GammaSpec::Zero => GammaLaw::Zero,
            GammaSpec::XiCompensated => GammaLaw::XiCompensated,
            GammaSpec::PhaseDrivenDecoupling => GammaLaw::PhaseDrivenDecoupling,
            GammaSpec::Table(k) => GammaLaw::Table(k.iter().map(|&(t, r)| (t * 1e-9, r * 1e9)).collect()),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq, Default)]
#[serde(rename_all = "snake_case")]
pub enum ConventionSpec {
    #[default]
    HalfAngle,
    FullAngle,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum TargetSpec {
    Named(String),
    Rotation {
        axis: [f64; 3],
        alpha: Angle,
        #[serde(default)]
        convention: ConventionSpec,
    },
}

impl Default for TargetSpec {
    fn default() -> Self {
        TargetSpec::Named("S".into())
    }
}

impl TargetSpec {
    /// Single-qubit target together with the phase that turns it into
    /// `P_n + e^{iα}P_{−n}` (used for controlled embeddings).
    pub fn resolve(&self) -> Result<(CMat64, f64), CliError> {
        match self {
            TargetSpec::Named(n) => match n.as_str() {
                "S" | "s" => Ok((s_gate(), 0.0)),
                "T" | "t" => Ok((t_gate(), 0.0)),
                other => Err(CliError::Validation(format!(
                    "unknown target gate {other:?}; valid names are \"S\" and \"T\", or give {{\"axis\", \"alpha\", \"convention\"}}"
                ))),
            },
            TargetSpec::Rotation { axis, alpha, convention } => {
                let alpha = alpha.radians()?;
                let (conv, half) = match convention {
                    ConventionSpec::HalfAngle => (RotationConvention::HalfAngle, alpha / 2.0),
                    ConventionSpec::FullAngle => (RotationConvention::FullAngle, alpha),
                };
                let target = GateTarget::new(*axis, alpha, conv)?;
                Ok((target_su2(&target), half))
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct LindbladSpec {
    /// Decoherence rates `κ/2π` in kHz; `κ_z = κ₋ = κ` at each point.
    pub kappa_khz: Vec<f64>,
    #[serde(default = "one")]
    pub dephasing_scale: f64,
    #[serde(default = "one")]
    pub decay_scale: f64,
    #[serde(default = "default_levels")]
    pub level_map: [usize; 3],
}

fn default_levels() -> [usize; 3] {
    [0, 1, 2]
}

impl Default for LindbladSpec {
    fn default() -> Self {
        Self {
            kappa_khz: (0..=10).map(|n| 20.0 * n as f64).collect(),
            dephasing_scale: 1.0,
            decay_scale: 1.0,
            level_map: default_levels(),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct IntegratorSpec {
    #[serde(default = "default_unitary")]
    pub steps_unitary: usize,
    #[serde(default = "default_lindblad")]
    pub steps_lindblad: usize,
}

fn default_unitary() -> usize {
    DEFAULT_UNITARY_STEPS
}

fn default_lindblad() -> usize {
    DEFAULT_LINDBLAD_STEPS
}

impl Default for IntegratorSpec {
    fn default() -> Self {
        Self {
            steps_unitary: DEFAULT_UNITARY_STEPS,
            steps_lindblad: DEFAULT_LINDBLAD_STEPS,
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct PairSpec {
    #[serde(default = "ScheduleSpec::paper_op")]
    pub op: ScheduleSpec,
    #[serde(default = "ScheduleSpec::paper_ossp")]
    pub ossp: ScheduleSpec,
}

impl Default for PairSpec {
    fn default() -> Self {
        Self {
            op: ScheduleSpec::paper_op(),
            ossp: ScheduleSpec::paper_ossp(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct VerifySpec {
    /// Sample times per path.
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_etas")]
    pub eta_values: Vec<f64>,
}

fn default_samples() -> usize {
    100
}

fn default_etas() -> Vec<f64> {
    vec![0.0, 0.5, 1.0, 2.0]
}

impl Default for VerifySpec {
    fn default() -> Self {
        Self {
            samples: default_samples(),
            eta_values: default_etas(),
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Default)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    /// JSON report file name inside `--out`; defaults to `<command>_report.json`.
    #[serde(default)]
    pub report: Option<String>,
    /// Sweep CSV file name inside `--out`; defaults to `sweep.csv`.
    #[serde(default)]
    pub csv: Option<String>,
}

impl OutputSpec {
    pub fn report_name(&self, command: &str) -> String {
        self.report.clone().unwrap_or_else(|| format!("{command}_report.json"))
    }

    pub fn csv_name(&self) -> String {
        self.csv.clone().unwrap_or_else(|| "sweep.csv".into())
    }
}

/// Everything a run needs. Unset fields take documented defaults and the
/// resolved form (defaults filled in) is what reports embed.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default)]
    pub frame: FrameKind,
    #[serde(default)]
    pub subspace: Subspace,
    /// Named coordinate-line schedule; overrides `segments`.
    #[serde(default)]
    pub schedule: Option<ScheduleSpec>,
    #[serde(default)]
    pub segments: Option<Vec<SegmentSpec>>,
    /// Random paths for `verify`.
    #[serde(default)]
    pub random: Option<RandomSpec>,
    /// `k/2π` in MHz.
    #[serde(default = "default_k")]
    pub k_mhz: f64,
    #[serde(default)]
    pub gamma: Option<GammaSpec>,
    #[serde(default)]
    pub eta: f64,
    #[serde(default)]
    pub target: TargetSpec,
    #[serde(default)]
    pub pair: PairSpec,
    #[serde(default)]
    pub lindblad: LindbladSpec,
    #[serde(default)]
    pub integrator: IntegratorSpec,
    #[serde(default)]
    pub verify: VerifySpec,
    #[serde(default)]
    pub outputs: OutputSpec,
}

fn default_k() -> f64 {
    20.0
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg: Self =
            serde_json::from_str(text).map_err(|e| CliError::Validation(format!("invalid config: {e}")))?;
        if cfg.gamma.is_none() {
            cfg.gamma = Some(cfg.default_gamma());
        }
        cfg.validate()?;
        Ok(cfg)
    }

    fn default_gamma(&self) -> GammaSpec {
        match (self.frame, self.subspace) {
            (FrameKind::ThreeLevel, Subspace::DarkAncilla) => GammaSpec::Zero,
            (FrameKind::ThreeLevel, Subspace::ExcitedAncilla) | (FrameKind::TwoQubit, _) => GammaSpec::XiCompensated,
            (FrameKind::PhaseDriven, _) => GammaSpec::PhaseDrivenDecoupling,
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        if !(self.k_mhz > 0.0 && self.k_mhz.is_finite()) {
            return Err(CliError::Validation(format!("k_mhz must be positive, got {}", self.k_mhz)));
        }
        if !self.eta.is_finite() {
            return Err(CliError::Validation("eta must be finite".into()));
        }
        if self.integrator.steps_unitary == 0 || self.integrator.steps_lindblad == 0 {
            return Err(CliError::Validation("integrator step counts must be positive".into()));
        }
        if self.lindblad.kappa_khz.iter().any(|k| !(*k >= 0.0 && k.is_finite())) {
            return Err(CliError::Validation("kappa_khz entries must be non-negative".into()));
        }
        if !(self.lindblad.dephasing_scale >= 0.0 && self.lindblad.decay_scale >= 0.0) {
            return Err(CliError::Validation("decoherence scales must be non-negative".into()));
        }
        if self.verify.samples == 0 {
            return Err(CliError::Validation("verify.samples must be positive".into()));
        }
        if let Some(r) = &self.random {
            if r.draws == 0 || !(r.duration_ns > 0.0) {
                return Err(CliError::Validation("random paths need draws > 0 and duration_ns > 0".into()));
            }
        }
        if self.schedule.is_some() && (self.frame != FrameKind::ThreeLevel || self.subspace != Subspace::DarkAncilla) {
            return Err(CliError::Validation(
                "named schedules run in the three_level frame with the dark_ancilla subspace".into(),
            ));
        }
        self.target.resolve()?;
        Ok(())
    }

    pub fn set_steps(&mut self, steps: usize) -> Result<(), CliError> {
        if steps == 0 {
            return Err(CliError::Validation("--steps must be positive".into()));
        }
        self.integrator.steps_unitary = steps;
        self.integrator.steps_lindblad = steps;
        Ok(())
    }

    /// rad/s
    pub fn k(&self) -> f64 {
        2.0 * PI * self.k_mhz * 1e6
    }

    pub fn family(&self) -> FrameFamily {
        match (self.frame, self.subspace) {
            (FrameKind::ThreeLevel, Subspace::ExcitedAncilla) => FrameFamily::ThreeLevel(ThreeLevelSubspace::ExcitedAncilla),
            (FrameKind::ThreeLevel, Subspace::DarkAncilla) => FrameFamily::ThreeLevel(ThreeLevelSubspace::DarkAncilla),
            (FrameKind::PhaseDriven, _) => FrameFamily::PhaseDriven,
            (FrameKind::TwoQubit, _) => FrameFamily::TwoQubit,
        }
    }

    /// One rate law per ancilla of the configured family.
    pub fn gammas(&self) -> Vec<GammaLaw<f64>> {
        let first = self.gamma.clone().unwrap_or_else(|| self.default_gamma()).law();
        match self.frame {
            FrameKind::TwoQubit => vec![first, GammaLaw::Zero],
            _ => vec![first],
        }
    }

    pub fn schedule(&self) -> Result<Option<Schedule64>, CliError> {
        self.schedule.as_ref().map(|s| s.build(self.k())).transpose()
    }

    /// Laws from `schedule` (at the dark-state angles `θ = π`, `φ = 0`) or
    /// from explicit `segments`.
    pub fn laws(&self) -> Result<PathLaws<f64>, CliError> {
        if let Some(s) = self.schedule()? {
            return Ok(s.laws(PI, 0.0)?);
        }
        let Some(segments) = &self.segments else {
            return Err(CliError::Validation("config needs either \"schedule\" or \"segments\"".into()));
        };
        let segs = segments
            .iter()
            .map(|s| {
                if !(s.duration_ns >= 0.0 && s.duration_ns.is_finite()) {
                    return Err(CliError::Validation(format!("segment duration {} ns is invalid", s.duration_ns)));
                }
                let d = s.duration_ns * 1e-9;
                Ok(LawSegment {
                    duration: d,
                    theta: s.theta.law(d)?,
                    phi: s.phi.law(d)?,
                    chi: s.chi.law(d)?,
                    xi: s.xi.law(d)?,
                })
            })
            .collect::<Result<Vec<_>, CliError>>()?;
        Ok(PathLaws::new(segs)?)
    }

    pub fn frame_path(&self) -> Result<FramePath<f64>, CliError> {
        let family = if self.schedule.is_some() {
            FrameFamily::ThreeLevel(ThreeLevelSubspace::DarkAncilla)
        } else {
            self.family()
        };
        Ok(FramePath::new(family, self.laws()?)?)
    }

    /// Decoherence grid in rad/s, paired with the common `κ` of each point.
    pub fn kappa_grid(&self) -> Vec<(f64, LindbladParams<f64>)> {
        self.lindblad
            .kappa_khz
            .iter()
            .map(|k| {
                let kappa = 2.0 * PI * k * 1e3;
                let params = LindbladParams {
                    kappa_z: kappa * self.lindblad.dephasing_scale,
                    kappa_minus: kappa * self.lindblad.decay_scale,
                    level_map: self.lindblad.level_map,
                };
                (kappa, params)
            })
            .collect()
    }
}

/// `I₂ ⊕ e^{iβ}target`, the controlled form of a block target.
pub fn controlled(target: &CMat64, phase: f64) -> CMat64 {
    let mut m = CMat64::identity(4);
    let p = Complex::from_polar(1.0, phase);
    for i in 0..2 {
        for j in 0..2 {
            m[(2 + i, 2 + j)] = target[(i, j)] * p;
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles_parse_exactly() {
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("1/3 pi").unwrap(), PI / 3.0);
        assert_eq!(parse_angle("-3/4 pi").unwrap(), -0.75 * PI);
        assert_eq!(parse_angle("2pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_angle("2*pi").unwrap(), 2.0 * PI);
        assert_eq!(parse_angle("-pi").unwrap(), -PI);
        assert_eq!(parse_angle("0.25").unwrap(), 0.25);
        assert_eq!(parse_angle(" 1/4 pi ").unwrap(), PI / 4.0);
    }

    #[test]
    fn bad_angles_are_rejected() {
        for s in ["", "pie", "1/0 pi", "x pi", "nan", "inf"] {
            assert!(parse_angle(s).is_err(), "{s}");
        }
    }

    #[test]
    fn minimal_config_takes_defaults() {
        let cfg = ExperimentConfig::parse(r#"{"schedule": {"kind": "op", "chi1": "1/3 pi", "xi2": "pi"}}"#).unwrap();
        assert_eq!(cfg.k_mhz, 20.0);
        assert_eq!(cfg.gamma, Some(GammaSpec::Zero));
        assert_eq!(cfg.integrator, IntegratorSpec::default());
        assert_eq!(cfg.lindblad.kappa_khz.len(), 11);
        let s = cfg.schedule().unwrap().unwrap();
        assert!((s.duration() - 27.49e-9).abs() < 0.01e-9);
    }

    #[test]
    fn unknown_target_lists_options() {
        let err = ExperimentConfig::parse(r#"{"target": "H"}"#).unwrap_err();
        assert!(err.to_string().contains("\"S\" and \"T\""));
    }

    #[test]
    fn unknown_frame_is_rejected() {
        let err = ExperimentConfig::parse(r#"{"frame": "four_level"}"#).unwrap_err();
        assert!(matches!(err, CliError::Validation(_)));
        assert!(err.to_string().contains("three_level"));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(ExperimentConfig::parse(r#"{"k_mhz": 20, "kmhz": 21}"#).is_err());
    }

    #[test]
    fn segments_resolve_to_laws() {
        let cfg = ExperimentConfig::parse(
            r#"{"segments": [
                {"duration_ns": 10, "theta": "pi", "chi": {"from": 0, "to": "pi"}},
                {"duration_ns": 0, "theta": "pi", "chi": "pi", "xi": {"from": 0, "jump": "1/4 pi"}},
                {"duration_ns": 10, "theta": "pi", "chi": {"from": "pi", "to": 0}, "xi": "1/4 pi"}
            ]}"#,
        )
        .unwrap();
        let laws = cfg.laws().unwrap();
        assert!((laws.duration() - 20e-9).abs() < 1e-20);
        assert_eq!(laws.jumps().len(), 1);
        assert_eq!(laws.segments()[0].rates().chi, PI / 10e-9);
    }

    #[test]
    fn sweep_without_duration_is_rejected() {
        let cfg = ExperimentConfig::parse(r#"{"segments": [{"duration_ns": 0, "chi": {"from": 0, "to": 1}}]}"#).unwrap();
        assert!(cfg.laws().is_err());
    }

    #[test]
    fn steps_override_sets_both_integrators() {
        let mut cfg = ExperimentConfig::parse("{}").unwrap();
        cfg.set_steps(500).unwrap();
        assert_eq!(cfg.integrator.steps_unitary, 500);
        assert_eq!(cfg.integrator.steps_lindblad, 500);
        assert!(cfg.set_steps(0).is_err());
    }

    #[test]
    fn resolved_config_round_trips() {
        let cfg = ExperimentConfig::parse(r#"{"schedule": {"kind": "ossp", "xi2": "1/4 pi"}, "target": "T"}"#).unwrap();
        let text = serde_json::to_string(&cfg).unwrap();
        assert_eq!(ExperimentConfig::parse(&text).unwrap(), cfg);
    }

    #[test]
    fn custom_rotation_target() {
        let cfg = ExperimentConfig::parse(
            r#"{"target": {"axis": [0, 0, 1], "alpha": "1/2 pi", "convention": "half_angle"}}"#,
        )
        .unwrap();
        let (u, phase) = cfg.target.resolve().unwrap();
        assert!((phase - PI / 4.0).abs() < 1e-15);
        let s = s_gate::<f64>();
        assert!(holonome_core::numerics::fidelity_up_to_global_phase(&u, &s).unwrap() > 1.0 - 1e-15);
    }
}
