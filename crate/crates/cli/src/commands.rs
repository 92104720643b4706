//! The four pipelines. Each returns the files to write and any violated
//! numerical contracts; `main` decides the exit code.

use std::f64::consts::PI;

use holonome_core::evolve::{
    computational_basis, kappa_sweep, propagate_unitary, realized_gate, schedule_drive, FidelityReport, SweepSubject,
    SynthesizedDrive,
};
use holonome_core::frames::{check_cyclic, FrameFamily, FramePath};
use holonome_core::laws::{Angles, PathLaws};
use holonome_core::numerics::{fidelity_up_to_global_phase, CVec};
use holonome_core::reverse::{computational_phases, parallel_transport_residual, reverse_hamiltonian_general, von_neumann_residual};
use holonome_core::{CMat64, Schedule64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{controlled, ExperimentConfig};
use crate::output::{csv, matrix, to_json};
use crate::CliError;

const RESIDUAL_LIMIT: f64 = 1e-8;
const UNITARITY_LIMIT: f64 = 1e-8;
const TRACE_LIMIT: f64 = 1e-8;
const HERMITICITY_LIMIT: f64 = 1e-10;
const EIGEN_FLOOR: f64 = -1e-8;

pub struct Outcome {
    pub files: Vec<(String, String)>,
    pub summary: Vec<String>,
    pub violations: Vec<String>,
}

#[derive(Serialize)]
struct Report<'a, R> {
    command: &'a str,
    version: &'a str,
    seed: Option<u64>,
    config: &'a ExperimentConfig,
    result: R,
    violations: &'a [String],
}

fn report<R: Serialize>(
    command: &str,
    cfg: &ExperimentConfig,
    seed: Option<u64>,
    result: R,
    violations: &[String],
) -> Result<(String, String), CliError> {
    let body = to_json(&Report {
        command,
        version: env!("CARGO_PKG_VERSION"),
        seed,
        config: cfg,
        result,
        violations,
    })?;
    Ok((cfg.outputs.report_name(command), body))
}

// ---------------------------------------------------------------- verify

#[derive(Serialize, Default)]
struct PathResiduals {
    /// rad/s
    max_hamiltonian_entry: f64,
    von_neumann_abs: f64,
    von_neumann_rel: f64,
    parallel_transport_abs: f64,
    parallel_transport_rel: f64,
    hermiticity: f64,
    gram: f64,
    cyclic: Option<f64>,
}

#[derive(Serialize)]
struct VerifyResult {
    family: String,
    paths: usize,
    samples_per_path: usize,
    eta_values: Vec<f64>,
    worst: PathResiduals,
    per_path: Vec<PathResiduals>,
}

fn random_laws(rng: &mut ChaCha8Rng, family: FrameFamily, tau: f64) -> Result<PathLaws<f64>, CliError> {
    let (chi_lo, chi_hi) = if family == FrameFamily::PhaseDriven { (0.3, 2.8) } else { (0.0, PI) };
    let start = Angles::new(
        rng.gen_range(0.0..PI),
        rng.gen_range(-PI..PI),
        rng.gen_range(chi_lo..chi_hi),
        rng.gen_range(-PI..PI),
    );
    let chi_end = rng.gen_range(chi_lo..chi_hi);
    let theta_end: f64 = rng.gen_range(0.0..PI);
    let dphi: f64 = rng.gen_range(-2.0..2.0);
    let dxi: f64 = rng.gen_range(-3.0..3.0);
    let rates = if family == FrameFamily::PhaseDriven {
        Angles::new(0.0, dphi, chi_end - start.chi, 0.0)
    } else {
        Angles::new(theta_end - start.theta, dphi, chi_end - start.chi, dxi)
    };
    Ok(PathLaws::linear(tau, start, rates.scale(1.0 / tau))?)
}

fn residuals_along(path: &FramePath<f64>, cfg: &ExperimentConfig) -> Result<PathResiduals, CliError> {
    let tau = path.duration();
    let gammas = cfg.gammas();
    let mut r = PathResiduals::default();
    for j in 0..cfg.verify.samples {
        let t = tau * (j as f64 + 0.5) / cfg.verify.samples as f64;
        let point = path.laws.sample(t);
        let frame = path.frame_at(t)?;
        r.gram = r.gram.max(frame.gram_error());
        let rates: Vec<f64> = gammas.iter().map(|g| g.rate(&point)).collect();
        for &eta in &cfg.verify.eta_values {
            let h = reverse_hamiltonian_general(&frame, &rates, eta)?;
            let scale = h.max_abs().max(1.0);
            let vn = von_neumann_residual(&h, &frame);
            let pt = parallel_transport_residual(&h, &frame, eta);
            r.max_hamiltonian_entry = r.max_hamiltonian_entry.max(h.max_abs());
            r.von_neumann_abs = r.von_neumann_abs.max(vn);
            r.von_neumann_rel = r.von_neumann_rel.max(vn / scale);
            r.parallel_transport_abs = r.parallel_transport_abs.max(pt);
            r.parallel_transport_rel = r.parallel_transport_rel.max(pt / scale);
            r.hermiticity = r.hermiticity.max(h.hermiticity_error());
        }
    }
    Ok(r)
}

pub fn verify(cfg: &ExperimentConfig, seed: Option<u64>) -> Result<Outcome, CliError> {
    let mut per_path = Vec::new();
    let family;
    if let Some(random) = &cfg.random {
        family = cfg.family();
        let mut rng = ChaCha8Rng::seed_from_u64(random.seed);
        for _ in 0..random.draws {
            let path = FramePath::new(family, random_laws(&mut rng, family, random.duration_ns * 1e-9)?)?;
            per_path.push(residuals_along(&path, cfg)?);
        }
    } else {
        let path = cfg.frame_path()?;
        family = path.family;
        let mut r = residuals_along(&path, cfg)?;
        r.cyclic = Some(check_cyclic(&path, path.duration())?);
        per_path.push(r);
    }

    let mut worst = PathResiduals::default();
    for r in &per_path {
        worst.max_hamiltonian_entry = worst.max_hamiltonian_entry.max(r.max_hamiltonian_entry);
        worst.von_neumann_abs = worst.von_neumann_abs.max(r.von_neumann_abs);
        worst.von_neumann_rel = worst.von_neumann_rel.max(r.von_neumann_rel);
        worst.parallel_transport_abs = worst.parallel_transport_abs.max(r.parallel_transport_abs);
        worst.parallel_transport_rel = worst.parallel_transport_rel.max(r.parallel_transport_rel);
        worst.hermiticity = worst.hermiticity.max(r.hermiticity);
        worst.gram = worst.gram.max(r.gram);
        worst.cyclic = r.cyclic;
    }

    let mut violations = Vec::new();
    if worst.von_neumann_rel >= RESIDUAL_LIMIT {
        violations.push(format!("von Neumann residual {:e} >= {RESIDUAL_LIMIT:e}", worst.von_neumann_rel));
    }
    if worst.parallel_transport_rel >= RESIDUAL_LIMIT {
        violations.push(format!("parallel-transport residual {:e} >= {RESIDUAL_LIMIT:e}", worst.parallel_transport_rel));
    }
    let summary = vec![
        format!("paths: {} ({:?})", per_path.len(), family),
        format!("von Neumann residual: {:.3e} (relative), {:.3e} rad/s", worst.von_neumann_rel, worst.von_neumann_abs),
        format!(
            "parallel-transport residual: {:.3e} (relative), {:.3e} rad/s",
            worst.parallel_transport_rel, worst.parallel_transport_abs
        ),
    ];
    let result = VerifyResult {
        family: format!("{family:?}"),
        paths: per_path.len(),
        samples_per_path: cfg.verify.samples,
        eta_values: cfg.verify.eta_values.clone(),
        worst,
        per_path,
    };
    let file = report("verify", cfg, seed, result, &violations)?;
    Ok(Outcome { files: vec![file], summary, violations })
}

// ---------------------------------------------------------------- gate

#[derive(Serialize)]
struct GateResult {
    fidelity: f64,
    infidelity: f64,
    leakage: f64,
    unitarity_error: f64,
    /// rad; only defined for named schedules
    pulse_area: Option<f64>,
    duration_ns: f64,
    /// rad
    phases: Vec<f64>,
    relative_phase: Option<f64>,
    realized: Vec<Vec<[f64; 2]>>,
    target: Vec<Vec<[f64; 2]>>,
    steps: usize,
}

/// Drive, target and comparison basis for the configured gate.
fn gate_setup(cfg: &ExperimentConfig, schedule: Option<&Schedule64>) -> Result<(SynthesizedDrive<f64>, CMat64, Vec<CVec<f64>>), CliError> {
    let (target, block_phase) = cfg.target.resolve()?;
    let drive = match schedule {
        Some(s) => schedule_drive(s)?,
        None => SynthesizedDrive::new(cfg.frame_path()?, cfg.gammas(), cfg.eta),
    };
    if drive.path.family == FrameFamily::TwoQubit {
        let basis = (0..4).map(|i| CVec::basis(6, i)).collect();
        Ok((drive, controlled(&target, block_phase), basis))
    } else {
        let basis = computational_basis(&drive.path)?;
        Ok((drive, target, basis))
    }
}

fn run_gate(cfg: &ExperimentConfig, schedule: Option<&Schedule64>) -> Result<(GateResult, Vec<String>), CliError> {
    let (drive, target, basis) = gate_setup(cfg, schedule)?;
    let steps = cfg.integrator.steps_unitary;
    let tau = drive.duration();
    let u = propagate_unitary(&drive, tau, steps)?;
    let gate = realized_gate(&u, &basis);
    let fidelity = fidelity_up_to_global_phase(&gate.matrix, &target)?;
    let phases = computational_phases(&drive.path, steps.max(1000))?;
    let relative_phase = (phases.len() == 2).then(|| phases[1] - phases[0]);
    let unitarity_error = u.unitarity_error();
    let mut violations = Vec::new();
    if unitarity_error > UNITARITY_LIMIT {
        violations.push(format!("propagator unitarity error {unitarity_error:e} > {UNITARITY_LIMIT:e}"));
    }
    Ok((
        GateResult {
            fidelity,
            infidelity: 1.0 - fidelity,
            leakage: gate.leakage,
            unitarity_error,
            pulse_area: schedule.map(|s| s.pulse_area()),
            duration_ns: tau * 1e9,
            phases,
            relative_phase,
            realized: matrix(&gate.matrix),
            target: matrix(&target),
            steps,
        },
        violations,
    ))
}

fn gate_summary(label: &str, g: &GateResult) -> String {
    let area = g.pulse_area.map(|a| format!(", area {a:.6} rad")).unwrap_or_default();
    format!(
        "{label}fidelity {:.12} (1-F {:.3e}), duration {:.4} ns{area}",
        g.fidelity, g.infidelity, g.duration_ns
    )
}

pub fn gate(cfg: &ExperimentConfig, seed: Option<u64>) -> Result<Outcome, CliError> {
    let schedule = cfg.schedule()?;
    let (result, violations) = run_gate(cfg, schedule.as_ref())?;
    let summary = vec![gate_summary("", &result)];
    let file = report("gate", cfg, seed, result, &violations)?;
    Ok(Outcome { files: vec![file], summary, violations })
}

// ---------------------------------------------------------------- compare

#[derive(Serialize)]
struct CompareResult {
    op: GateResult,
    ossp: GateResult,
    area_ratio: f64,
    duration_ratio: f64,
}

pub fn compare(cfg: &ExperimentConfig, seed: Option<u64>) -> Result<Outcome, CliError> {
    let op = cfg.pair.op.build(cfg.k())?;
    let ossp = cfg.pair.ossp.build(cfg.k())?;
    let (op_result, mut violations) = run_gate(cfg, Some(&op))?;
    let (ossp_result, more) = run_gate(cfg, Some(&ossp))?;
    violations.extend(more);
    let summary = vec![
        gate_summary("op:   ", &op_result),
        gate_summary("ossp: ", &ossp_result),
        format!(
            "op/ossp area ratio {:.6}, duration ratio {:.6}",
            op.pulse_area() / ossp.pulse_area(),
            op.duration() / ossp.duration()
        ),
    ];
    let result = CompareResult {
        area_ratio: op.pulse_area() / ossp.pulse_area(),
        duration_ratio: op.duration() / ossp.duration(),
        op: op_result,
        ossp: ossp_result,
    };
    let file = report("compare", cfg, seed, result, &violations)?;
    Ok(Outcome { files: vec![file], summary, violations })
}

// ---------------------------------------------------------------- sweep

#[derive(Serialize)]
struct FidelityOut {
    fidelity: f64,
    trace_drift: f64,
    hermiticity: f64,
    min_eigenvalue: f64,
}

impl From<&FidelityReport<f64>> for FidelityOut {
    fn from(r: &FidelityReport<f64>) -> Self {
        Self {
            fidelity: r.fidelity,
            trace_drift: r.trace_drift,
            hermiticity: r.hermiticity,
            min_eigenvalue: r.min_eigenvalue,
        }
    }
}

#[derive(Serialize)]
struct SweepPoint {
    /// rad/s
    kappa: f64,
    kappa_z: f64,
    kappa_minus: f64,
    op: FidelityOut,
    ossp: FidelityOut,
}

#[derive(Serialize)]
struct SweepResult {
    steps: usize,
    op_duration_ns: f64,
    ossp_duration_ns: f64,
    rows: Vec<SweepPoint>,
}

pub fn sweep(cfg: &ExperimentConfig, seed: Option<u64>) -> Result<Outcome, CliError> {
    let schedules = [cfg.pair.op.build(cfg.k())?, cfg.pair.ossp.build(cfg.k())?];
    let (target, _) = cfg.target.resolve()?;
    let drives = schedules.iter().map(schedule_drive).collect::<Result<Vec<_>, _>>()?;
    let subjects = schedules
        .iter()
        .zip(&drives)
        .zip(["op", "ossp"])
        .map(|((s, d), name)| {
            let b = computational_basis(&d.path)?;
            Ok(SweepSubject {
                name: name.into(),
                hamiltonian: d,
                tau: s.duration(),
                logical: [b[0].clone(), b[1].clone()],
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let grid = cfg.kappa_grid();
    let params: Vec<_> = grid.iter().map(|(_, p)| *p).collect();
    let steps = cfg.integrator.steps_lindblad;
    let rows = kappa_sweep(&subjects, &target, &params, steps)?;

    let mut violations = Vec::new();
    let mut points = Vec::new();
    let mut table = Vec::new();
    for ((kappa, _), row) in grid.iter().zip(rows) {
        for (name, r) in ["op", "ossp"].iter().zip(&row.reports) {
            if r.trace_drift >= TRACE_LIMIT {
                violations.push(format!("{name} at kappa {kappa:e}: trace drift {:e}", r.trace_drift));
            }
            if r.hermiticity >= HERMITICITY_LIMIT {
                violations.push(format!("{name} at kappa {kappa:e}: Hermiticity {:e}", r.hermiticity));
            }
            if r.min_eigenvalue < EIGEN_FLOOR {
                violations.push(format!("{name} at kappa {kappa:e}: min eigenvalue {:e}", r.min_eigenvalue));
            }
        }
        table.push(vec![*kappa, row.reports[0].fidelity, row.reports[1].fidelity]);
        points.push(SweepPoint {
            kappa: *kappa,
            kappa_z: row.kappa_z,
            kappa_minus: row.kappa_minus,
            op: (&row.reports[0]).into(),
            ossp: (&row.reports[1]).into(),
        });
    }
    let summary = table
        .iter()
        .map(|r| format!("kappa {:.6e} rad/s: F_op {:.9}, F_ossp {:.9}", r[0], r[1], r[2]))
        .collect();
    let sheet = csv(&["kappa_rad_s", "fidelity_op", "fidelity_ossp"], &table);
    let result = SweepResult {
        steps,
        op_duration_ns: schedules[0].duration() * 1e9,
        ossp_duration_ns: schedules[1].duration() * 1e9,
        rows: points,
    };
    let file = report("sweep", cfg, seed, result, &violations)?;
    Ok(Outcome {
        files: vec![(cfg.outputs.csv_name(), sheet), file],
        summary,
        violations,
    })
}
