//! Closed and open time evolution under piecewise-smooth Hamiltonians, gate
//! extraction, and the decoherence benchmark.

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::frames::FramePath;
use crate::laws::{PathLaws, PathPoint};
use crate::numerics::{fidelity_up_to_global_phase, min_eigenvalue, unitary_step, CMat, CVec};
use crate::paths::Schedule;
use crate::reverse::{computational_phases, reverse_hamiltonian_general, GammaLaw};
use crate::scalar::Real;

/// Default number of exponential steps for a full schedule.
pub const DEFAULT_UNITARY_STEPS: usize = 20_000;
/// Default number of RK4 steps for a full schedule.
pub const DEFAULT_LINDBLAD_STEPS: usize = 40_000;
/// Number of initial states in the fidelity estimator.
pub const FIDELITY_SAMPLES: usize = 1001;

const TRACE_DRIFT_LIMIT: f64 = 1e-6;

/// Time-dependent Hamiltonian made of smooth pieces.
///
/// Integrators never step across a piece boundary, and evaluate each piece
/// with its own law even at the boundary itself.
pub trait Hamiltonian<T: Real>: Sync {
    fn dim(&self) -> usize;
    /// `(start, end)` of each smooth piece, in order, with positive length.
    fn pieces(&self) -> Vec<(T, T)>;
    /// `H(t)` using the law of piece `piece`.
    fn at(&self, piece: usize, t: T) -> Result<CMat<T>>;
}

/// Positive-duration segments of a law set, as `(segment index, start, end)`.
fn law_pieces<T: Real>(laws: &PathLaws<T>) -> Vec<(usize, T, T)> {
    laws.segments()
        .iter()
        .zip(laws.segment_starts())
        .enumerate()
        .filter(|(_, (s, _))| !s.is_jump())
        .map(|(k, (s, &start))| (k, start, start + s.duration))
        .collect()
}

fn point_in_piece<T: Real>(laws: &PathLaws<T>, pieces: &[(usize, T, T)], piece: usize, t: T) -> PathPoint<T> {
    let (k, start, _) = pieces[piece];
    let seg = &laws.segments()[k];
    let local = (t - start).max(T::zero()).min(seg.duration);
    PathPoint {
        time: t,
        angles: seg.angles_at(local),
        rates: seg.rates(),
    }
}

/// Hamiltonian synthesized on the fly from a frame path.
#[derive(Clone, Debug)]
pub struct SynthesizedDrive<T> {
    pub path: FramePath<T>,
    /// One rate law per ancilla, in ancilla order.
    pub gammas: Vec<GammaLaw<T>>,
    pub eta: T,
    pieces: Vec<(usize, T, T)>,
}

impl<T: Real> SynthesizedDrive<T> {
    pub fn new(path: FramePath<T>, gammas: Vec<GammaLaw<T>>, eta: T) -> Self {
        let pieces = law_pieces(&path.laws);
        Self { path, gammas, eta, pieces }
    }

    pub fn duration(&self) -> T {
        self.path.duration()
    }
}

impl<T: Real> Hamiltonian<T> for SynthesizedDrive<T> {
    fn dim(&self) -> usize {
        self.path.family.dim()
    }

    fn pieces(&self) -> Vec<(T, T)> {
        self.pieces.iter().map(|&(_, a, b)| (a, b)).collect()
    }

    fn at(&self, piece: usize, t: T) -> Result<CMat<T>> {
        let point = point_in_piece(&self.path.laws, &self.pieces, piece, t);
        let frame = self.path.family.frame_at_point(&point)?;
        let rates: Vec<T> = self.gammas.iter().map(|g| g.rate(&point)).collect();
        reverse_hamiltonian_general(&frame, &rates, self.eta)
    }
}

/// Closed-form Hamiltonian `f(point)` evaluated along path laws.
pub struct LawDrive<T, F> {
    laws: PathLaws<T>,
    dim: usize,
    f: F,
    pieces: Vec<(usize, T, T)>,
}

impl<T: Real, F> LawDrive<T, F>
where
    F: Fn(&PathPoint<T>) -> CMat<T> + Sync,
{
    pub fn new(laws: PathLaws<T>, dim: usize, f: F) -> Self {
        let pieces = law_pieces(&laws);
        Self { laws, dim, f, pieces }
    }
}

impl<T: Real, F> Hamiltonian<T> for LawDrive<T, F>
where
    F: Fn(&PathPoint<T>) -> CMat<T> + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn pieces(&self) -> Vec<(T, T)> {
        self.pieces.iter().map(|&(_, a, b)| (a, b)).collect()
    }

    fn at(&self, piece: usize, t: T) -> Result<CMat<T>> {
        Ok((self.f)(&point_in_piece(&self.laws, &self.pieces, piece, t)))
    }
}

/// A single smooth piece `H(t)` on `[0, τ]`.
pub struct FnDrive<T, F> {
    pub dim: usize,
    pub tau: T,
    pub f: F,
}

impl<T: Real, F> Hamiltonian<T> for FnDrive<T, F>
where
    F: Fn(T) -> CMat<T> + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn pieces(&self) -> Vec<(T, T)> {
        if self.tau > T::zero() {
            vec![(T::zero(), self.tau)]
        } else {
            vec![]
        }
    }

    fn at(&self, _piece: usize, t: T) -> Result<CMat<T>> {
        Ok((self.f)(t))
    }
}

/// Uniform sub-grid of each piece clipped to `[0, τ]`, with `steps` spread in
/// proportion to piece length (at least one step per piece).
fn step_plan<T: Real>(pieces: &[(T, T)], tau: T, steps: usize) -> Vec<(usize, T, T, usize)> {
    let clipped: Vec<(usize, T, T)> = pieces
        .iter()
        .enumerate()
        .filter_map(|(i, &(a, b))| {
            let b = b.min(tau);
            (b > a).then_some((i, a, b))
        })
        .collect();
    let total: T = clipped.iter().map(|&(_, a, b)| b - a).sum();
    clipped
        .into_iter()
        .map(|(i, a, b)| {
            let n = ((b - a) / total * T::from_usize_lossy(steps))
                .round()
                .to_usize()
                .unwrap_or(1)
                .max(1);
            (i, a, b, n)
        })
        .collect()
}

/// `U(τ) = Π exp(−i H(t_m) Δt)` with `H` sampled at step midpoints.
pub fn propagate_unitary<T: Real, H: Hamiltonian<T> + ?Sized>(h: &H, tau: T, steps: usize) -> Result<CMat<T>> {
    if steps == 0 {
        return Err(Error::InvalidArgument("at least one step is required".into()));
    }
    let mut u = CMat::identity(h.dim());
    for (piece, a, b, n) in step_plan(&h.pieces(), tau, steps) {
        let dt = (b - a) / T::from_usize_lossy(n);
        for k in 0..n {
            let mid = a + dt * (T::from_usize_lossy(k) + T::lit(0.5));
            let hk = h.at(piece, mid)?;
            u = &unitary_step(&hk, dt)? * &u;
        }
    }
    Ok(u)
}

/// Gate realized on a chosen basis of the computational subspace.
#[derive(Clone, Debug)]
pub struct RealizedGate<T> {
    /// `⟨b_i|U|b_j⟩`.
    pub matrix: CMat<T>,
    /// `1 − Σ|entries|²/d`.
    pub leakage: T,
}

pub fn realized_gate<T: Real>(u: &CMat<T>, basis: &[CVec<T>]) -> RealizedGate<T> {
    let d = basis.len();
    let mut m = CMat::zeros(d);
    for (i, bi) in basis.iter().enumerate() {
        for (j, bj) in basis.iter().enumerate() {
            m[(i, j)] = u.sandwich(bi, bj);
        }
    }
    let weight: T = m.rows().iter().flatten().map(|z| z.norm_sqr()).sum();
    RealizedGate {
        leakage: T::one() - weight / T::from_usize_lossy(d.max(1)),
        matrix: m,
    }
}

/// Computational states of `path` at `t = 0`.
pub fn computational_basis<T: Real>(path: &FramePath<T>) -> Result<Vec<CVec<T>>> {
    let f = path.frame_at(T::zero())?;
    Ok(f.computational.iter().map(|&i| f.states[i].clone()).collect())
}

/// Decay and dephasing channels on a three-level ladder.
///
/// `A₋ = |l₀⟩⟨l₁| + √2|l₁⟩⟨l₂|` and `A_z = |l₁⟩⟨l₁| + 2|l₂⟩⟨l₂|`, where
/// `level_map[n]` is the basis index of ladder level `n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LindbladParams<T> {
    pub kappa_z: T,
    pub kappa_minus: T,
    pub level_map: [usize; 3],
}

impl<T: Real> LindbladParams<T> {
    /// Ladder `0 → |0⟩`, `1 → |1⟩`, `2 → |e⟩`.
    pub fn new(kappa_z: T, kappa_minus: T) -> Self {
        Self {
            kappa_z,
            kappa_minus,
            level_map: [0, 1, 2],
        }
    }

    pub fn uniform(kappa: T) -> Self {
        Self::new(kappa, kappa)
    }

    pub fn decay_operator(&self, dim: usize) -> CMat<T> {
        let [l0, l1, l2] = self.level_map;
        let mut a = CMat::zeros(dim);
        a[(l0, l1)] = Complex::new(T::one(), T::zero());
        a[(l1, l2)] = Complex::new(T::lit(2.0).sqrt(), T::zero());
        a
    }

    pub fn dephasing_operator(&self, dim: usize) -> CMat<T> {
        let [_, l1, l2] = self.level_map;
        let mut a = CMat::zeros(dim);
        a[(l1, l1)] = Complex::new(T::one(), T::zero());
        a[(l2, l2)] = Complex::new(T::lit(2.0), T::zero());
        a
    }

    fn validate(&self, dim: usize) -> Result<()> {
        if !(self.kappa_z >= T::zero()) || !(self.kappa_minus >= T::zero()) {
            return Err(Error::InvalidArgument("decoherence rates must be non-negative".into()));
        }
        let [a, b, c] = self.level_map;
        if a.max(b).max(c) >= dim || a == b || b == c || a == c {
            return Err(Error::InvalidArgument(format!(
                "level map {:?} is not a set of distinct indices below {dim}",
                self.level_map
            )));
        }
        Ok(())
    }
}

/// Precomputed pieces of `½ Σ κ (2AρA† − A†Aρ − ρA†A)`.
struct Dissipator<T> {
    channels: Vec<(T, CMat<T>, CMat<T>, CMat<T>)>,
}

impl<T: Real> Dissipator<T> {
    fn new(p: &LindbladParams<T>, dim: usize) -> Self {
        let mut channels = Vec::new();
        for (kappa, a) in [
            (p.kappa_z, p.dephasing_operator(dim)),
            (p.kappa_minus, p.decay_operator(dim)),
        ] {
            if kappa > T::zero() {
                let ad = a.adjoint();
                let ada = &ad * &a;
                channels.push((kappa, a, ad, ada));
            }
        }
        Self { channels }
    }

    fn rhs(&self, h: &CMat<T>, rho: &CMat<T>) -> CMat<T> {
        let mi = Complex::new(T::zero(), -T::one());
        let mut out = (&(h * rho) - &(rho * h)).scale(mi);
        let half = T::lit(0.5);
        for (kappa, a, ad, ada) in &self.channels {
            let jump = &(&(a * rho) * ad).scale_real(T::lit(2.0)) - &(&(ada * rho) + &(rho * ada));
            out += &jump.scale_real(half * *kappa);
        }
        out
    }
}

/// Result of an open-system propagation.
#[derive(Clone, Debug)]
pub struct LindbladRun<T> {
    pub rho: CMat<T>,
    /// Largest `|tr ρ(t) − tr ρ(0)|` seen over the run.
    pub trace_drift: T,
    /// Largest `‖ρ − ρ†‖_max` produced by a single step, before symmetrization.
    pub hermiticity: T,
}

/// Propagate several density matrices in lockstep with classic RK4,
/// symmetrizing after every step.
pub fn propagate_lindblad_many<T: Real, H: Hamiltonian<T> + ?Sized>(
    h: &H,
    rhos: &[CMat<T>],
    p: &LindbladParams<T>,
    tau: T,
    steps: usize,
) -> Result<Vec<LindbladRun<T>>> {
    if steps == 0 {
        return Err(Error::InvalidArgument("at least one step is required".into()));
    }
    let dim = h.dim();
    p.validate(dim)?;
    for r in rhos {
        if r.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: r.dim(),
            });
        }
    }
    let diss = Dissipator::new(p, dim);
    let traces: Vec<T> = rhos.iter().map(|r| r.trace().re).collect();
    let mut runs: Vec<LindbladRun<T>> = rhos
        .iter()
        .map(|r| LindbladRun {
            rho: r.clone(),
            trace_drift: T::zero(),
            hermiticity: T::zero(),
        })
        .collect();
    let half = T::lit(0.5);
    let sixth = T::one() / T::lit(6.0);

    for (piece, a, b, n) in step_plan(&h.pieces(), tau, steps) {
        let dt = (b - a) / T::from_usize_lossy(n);
        for k in 0..n {
            let t0 = a + dt * T::from_usize_lossy(k);
            let h0 = h.at(piece, t0)?;
            let hm = h.at(piece, t0 + dt * half)?;
            let h1 = h.at(piece, if k + 1 == n { b } else { t0 + dt })?;
            for (run, &tr0) in runs.iter_mut().zip(&traces) {
                let r = &run.rho;
                let k1 = diss.rhs(&h0, r);
                let k2 = diss.rhs(&hm, &(r + &k1.scale_real(dt * half)));
                let k3 = diss.rhs(&hm, &(r + &k2.scale_real(dt * half)));
                let k4 = diss.rhs(&h1, &(r + &k3.scale_real(dt)));
                let mut incr = &k1 + &k4;
                incr += &(&k2 + &k3).scale_real(T::lit(2.0));
                let next = r + &incr.scale_real(dt * sixth);
                run.hermiticity = run.hermiticity.max(next.hermiticity_error());
                run.rho = next.hermitian_part();
                let drift = (run.rho.trace().re - tr0).abs();
                run.trace_drift = run.trace_drift.max(drift);
                if drift > T::lit(TRACE_DRIFT_LIMIT) {
                    return Err(Error::TraceDrift {
                        drift: drift.to_f64().unwrap_or(f64::NAN),
                        limit: TRACE_DRIFT_LIMIT,
                    });
                }
            }
        }
    }
    Ok(runs)
}

/// `ρ̇ = −i[H, ρ] + ½(κ_z L(A_z) + κ₋ L(A₋))` from `ρ(0) = rho0` to `τ`.
pub fn propagate_lindblad<T: Real, H: Hamiltonian<T> + ?Sized>(
    h: &H,
    rho0: &CMat<T>,
    p: &LindbladParams<T>,
    tau: T,
    steps: usize,
) -> Result<LindbladRun<T>> {
    let tr = rho0.trace();
    if (tr.re - T::one()).abs() > T::lit(1e-10) || tr.im.abs() > T::lit(1e-10) {
        return Err(Error::InvalidArgument(format!("initial state has trace {tr}")));
    }
    rho0.check_hermitian()?;
    Ok(propagate_lindblad_many(h, std::slice::from_ref(rho0), p, tau, steps)?.remove(0))
}

/// Averaged fidelity and the numerical health of the runs behind it.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FidelityReport<T> {
    pub fidelity: T,
    /// Worst `|tr ρ − 1|` over all initial states and steps.
    pub trace_drift: T,
    /// Worst single-step Hermiticity defect before symmetrization.
    pub hermiticity: T,
    /// Smallest eigenvalue over all final density matrices.
    pub min_eigenvalue: T,
}

/// `F_G = (1/1001) Σ_i ⟨ν_i(τ)|ρ_i(τ)|ν_i(τ)⟩` over
/// `|ν_i(0)⟩ = cos θ_i|c₀⟩ + sin θ_i|c₁⟩`, `θ_i = 2πi/1000`, with
/// `|ν_i(τ)⟩ = target|ν_i(0)⟩`.
///
/// `logical` is the qubit basis `(|c₀⟩, |c₁⟩)` inside the driven space and
/// `target` acts in those coordinates. The master equation is linear, so the
/// three Hermitian seeds `|c₀⟩⟨c₀|`, `|c₁⟩⟨c₁|` and `|c₀⟩⟨c₁| + |c₁⟩⟨c₀|`
/// are propagated once and every `ρ_i(τ)` is assembled from them.
pub fn average_fidelity<T: Real, H: Hamiltonian<T> + ?Sized>(
    h: &H,
    tau: T,
    logical: &[CVec<T>; 2],
    target: &CMat<T>,
    p: &LindbladParams<T>,
    steps: usize,
) -> Result<FidelityReport<T>> {
    if target.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: target.dim(),
        });
    }
    let [c0, c1] = logical;
    let mut cross = CMat::outer(c0, c1);
    cross += &CMat::outer(c1, c0);
    let seeds = [CMat::projector(c0), CMat::projector(c1), cross];
    let runs = propagate_lindblad_many(h, &seeds, p, tau, steps)?;

    let mut fidelity = T::zero();
    let mut trace_drift = runs.iter().map(|r| r.trace_drift).fold(T::zero(), T::max);
    let hermiticity = runs.iter().map(|r| r.hermiticity).fold(T::zero(), T::max);
    let mut min_eig = T::infinity();
    let zero = Complex::<T>::zero();
    let denom = T::from_usize_lossy(FIDELITY_SAMPLES - 1);
    for i in 0..FIDELITY_SAMPLES {
        let theta = T::TAU() * T::from_usize_lossy(i) / denom;
        let (s, c) = theta.sin_cos();
        let mut rho = runs[0].rho.scale_real(c * c);
        rho += &runs[1].rho.scale_real(s * s);
        rho += &runs[2].rho.scale_real(c * s);
        let v0 = target[(0, 0)] * c + target[(0, 1)] * s;
        let v1 = target[(1, 0)] * c + target[(1, 1)] * s;
        let nu = c0.scale(v0).axpy(v1, c1);
        let overlap = rho.sandwich(&nu, &nu);
        debug_assert!(overlap.im.abs() < T::lit(1e-6) || zero == overlap);
        fidelity += overlap.re;
        trace_drift = trace_drift.max((rho.trace().re - T::one()).abs());
        min_eig = min_eig.min(min_eigenvalue(&rho)?);
    }
    Ok(FidelityReport {
        fidelity: fidelity / T::from_usize_lossy(FIDELITY_SAMPLES),
        trace_drift,
        hermiticity,
        min_eigenvalue: min_eig,
    })
}

/// One benchmark subject for a sweep.
pub struct SweepSubject<'a, T> {
    pub name: String,
    pub hamiltonian: &'a (dyn Hamiltonian<T> + 'a),
    pub tau: T,
    pub logical: [CVec<T>; 2],
}

#[derive(Clone, Debug)]
pub struct SweepRow<T> {
    pub kappa_z: T,
    pub kappa_minus: T,
    /// One report per subject, in subject order.
    pub reports: Vec<FidelityReport<T>>,
}

/// Evaluate every subject at every grid point. Grid points run in parallel;
/// rows come back in grid order and each row is independent of the others,
/// so results do not depend on the grid ordering.
pub fn kappa_sweep<T: Real>(
    subjects: &[SweepSubject<'_, T>],
    target: &CMat<T>,
    grid: &[LindbladParams<T>],
    steps: usize,
) -> Result<Vec<SweepRow<T>>> {
    grid.par_iter()
        .map(|params| {
            let reports = subjects
                .iter()
                .map(|s| average_fidelity(s.hamiltonian, s.tau, &s.logical, target, params, steps))
                .collect::<Result<Vec<_>>>()?;
            Ok(SweepRow {
                kappa_z: params.kappa_z,
                kappa_minus: params.kappa_minus,
                reports,
            })
        })
        .collect()
}

/// Closed-system gate summary for a schedule.
#[derive(Clone, Debug)]
pub struct GateReport<T> {
    pub realized: CMat<T>,
    pub target: CMat<T>,
    pub fidelity: T,
    pub leakage: T,
    /// rad
    pub pulse_area: T,
    /// s
    pub duration: T,
    /// Accumulated phase of each computational state (rad).
    pub phases: Vec<T>,
}

/// Synthesize the drive of a frame path, propagate it and compare the gate
/// realized on the computational frame states with `target`.
pub fn gate_report_for_path<T: Real>(
    drive: &SynthesizedDrive<T>,
    target: &CMat<T>,
    pulse_area: T,
    steps: usize,
) -> Result<GateReport<T>> {
    let tau = drive.duration();
    let u = propagate_unitary(drive, tau, steps)?;
    let basis = computational_basis(&drive.path)?;
    let gate = realized_gate(&u, &basis);
    let fidelity = fidelity_up_to_global_phase(&gate.matrix, target)?;
    let phases = computational_phases(&drive.path, steps.max(1000))?;
    Ok(GateReport {
        realized: gate.matrix,
        target: target.clone(),
        fidelity,
        leakage: gate.leakage,
        pulse_area,
        duration: tau,
        phases,
    })
}

/// Drive for a coordinate-line schedule: dark-ancilla frame, `γ̇ = 0`.
pub fn schedule_drive<T: Real>(schedule: &Schedule<T>) -> Result<SynthesizedDrive<T>> {
    Ok(SynthesizedDrive::new(schedule.frame_path()?, vec![GammaLaw::Zero], T::zero()))
}

pub fn schedule_gate_report<T: Real>(schedule: &Schedule<T>, target: &CMat<T>, steps: usize) -> Result<GateReport<T>> {
    gate_report_for_path(&schedule_drive(schedule)?, target, schedule.pulse_area(), steps)
}
