//! Hand-derived closed-form Hamiltonians, kept as independent oracles for the
//! generic synthesis in [`crate::reverse`] and as the laser-level view of a
//! drive (Rabi amplitudes and detunings).

use num_complex::Complex;

use crate::error::Result;
use crate::frames::phase_driven_frame;
use crate::laws::{PathLaws, PathPoint};
use crate::numerics::{CMat, CVec};
use crate::reverse::{reverse_hamiltonian, GammaLaw};
use crate::scalar::Real;

/// Two-laser drive of a three-level system in the basis `(|0⟩, |1⟩, |e⟩)`:
///
/// ```text
/// H = Ω₀|0⟩⟨e| + Ω₁|1⟩⟨e| + H.c. − Δ₀|0⟩⟨0| − Δ₁|1⟩⟨1| + Δ_e|e⟩⟨e|
/// ```
///
/// All entries in rad/s.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LaserParams<T> {
    pub rabi_0e: Complex<T>,
    pub rabi_1e: Complex<T>,
    pub detuning_0: T,
    pub detuning_1: T,
    pub detuning_e: T,
}

impl<T: Real> LaserParams<T> {
    pub fn hamiltonian(&self) -> CMat<T> {
        let re = |x: T| Complex::new(x, T::zero());
        let mut h = CMat::zeros(3);
        h[(0, 2)] = self.rabi_0e;
        h[(2, 0)] = self.rabi_0e.conj();
        h[(1, 2)] = self.rabi_1e;
        h[(2, 1)] = self.rabi_1e.conj();
        h[(0, 0)] = re(-self.detuning_0);
        h[(1, 1)] = re(-self.detuning_1);
        h[(2, 2)] = re(self.detuning_e);
        h
    }
}

fn bright_state<T: Real>(theta: T, phi: T) -> CVec<T> {
    let half = T::lit(0.5);
    CVec::from_vec(vec![
        Complex::from_polar((theta * half).sin(), -phi),
        Complex::new(-(theta * half).cos(), T::zero()),
        Complex::new(T::zero(), T::zero()),
    ])
}

/// Laser parameters of the bright-state drive (computational `{ψ₁, ψ₂}`,
/// `θ`, `φ` fixed, ancilla rate `ξ̇(3 + cos χ)/2`).
pub fn bright_drive_lasers<T: Real>(p: &PathPoint<T>) -> LaserParams<T> {
    let (a, r) = (&p.angles, &p.rates);
    let half = T::lit(0.5);
    let drive = Complex::new(r.xi * a.chi.sin(), r.chi);
    // ⟨e|H|0⟩ and ⟨e|H|1⟩
    let e0 = drive * Complex::from_polar(half * (a.theta * half).sin(), a.phi + a.xi);
    let e1 = drive * Complex::from_polar(-half * (a.theta * half).cos(), a.xi);
    LaserParams {
        rabi_0e: e0.conj(),
        rabi_1e: e1.conj(),
        detuning_0: T::zero(),
        detuning_1: T::zero(),
        detuning_e: -r.xi * (T::one() + a.chi.cos()),
    }
}

/// Bright-state drive Hamiltonian at time `t`.
pub fn bright_drive_hamiltonian<T: Real>(laws: &PathLaws<T>, t: T) -> CMat<T> {
    bright_drive_lasers(&laws.sample(t)).hamiltonian()
}

/// Dark-ancilla Hamiltonian (computational `{ψ₂, ψ₃}`, `γ̇ = 0`):
///
/// ```text
/// H = −½ξ̇ sin²χ (|e⟩⟨e| − |b⟩⟨b|) + ½{e^{iξ}[iχ̇ − ξ̇ sin χ cos χ]|e⟩⟨b| + H.c.}
/// ```
///
/// with `|b⟩ = sin(θ/2)e^{−iφ}|0⟩ − cos(θ/2)|1⟩` orthogonal to the dark state.
pub fn dark_ancilla_at<T: Real>(p: &PathPoint<T>) -> CMat<T> {
    let (a, r) = (&p.angles, &p.rates);
    let half = T::lit(0.5);
    let b = bright_state(a.theta, a.phi);
    let e = CVec::basis(3, 2);
    let (s, c) = a.chi.sin_cos();
    let shift = Complex::new(-half * r.xi * s * s, T::zero());
    let mut h = CMat::zeros(3);
    h.add_outer(shift, &e, &e);
    h.add_outer(-shift, &b, &b);
    let coupling = Complex::from_polar(half, a.xi) * Complex::new(-r.xi * s * c, r.chi);
    h.add_outer(coupling, &e, &b);
    h.add_outer(coupling.conj(), &b, &e);
    h
}

pub fn dark_ancilla_hamiltonian<T: Real>(laws: &PathLaws<T>, t: T) -> CMat<T> {
    dark_ancilla_at(&laws.sample(t))
}

/// Phase factor used in the `|0⟩–|e⟩` Rabi amplitude of the phase-driven drive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RabiPhase {
    /// `e^{−i(ξ + φ̇)}`: the closed form as usually quoted, with the rate inside the phase.
    #[default]
    Literal,
    /// `e^{−i(ξ + φ)}`: the angle, which is what the generic synthesis produces.
    Angle,
}

/// Laser parameters of the phase-driven drive (`φ(t)`, `χ(t)` moving).
///
/// Built from the closed-form amplitudes
///
/// ```text
/// a = 1 − cos χ + cos θ (3 + cos χ),   b = φ̇ cot(χ/2)
/// δ = ½[1 − cos χ + cos θ (1 + cos χ)] φ̇ cot²(χ/2)
/// −Δ₀ = φ̇ sin²(θ/2) + δ,   −Δ₁ = −φ̇ cos²(θ/2) + δ
/// Ω₀ = ¼ e^{−i(ξ+·)} sin(θ/2)(−2iχ̇ + ab),   Ω₁ = ¼ e^{−iξ} cos(θ/2)(2iχ̇ − ab)
/// ```
///
/// The closed form omits the common energy shift `⟨e|H|e⟩` of the generic
/// Hamiltonian, so the two agree only up to a multiple of the identity.
pub fn phase_driven_lasers<T: Real>(p: &PathPoint<T>, phase: RabiPhase) -> LaserParams<T> {
    let (ang, r) = (&p.angles, &p.rates);
    let half = T::lit(0.5);
    let quarter = T::lit(0.25);
    let (sth, cth) = (ang.theta * half).sin_cos();
    let cos_theta = ang.theta.cos();
    let cos_chi = ang.chi.cos();
    let cot_half = T::one() / (ang.chi * half).tan();

    let a = T::one() - cos_chi + cos_theta * (T::lit(3.0) + cos_chi);
    let b = r.phi * cot_half;
    let delta = half * (T::one() - cos_chi + cos_theta * (T::one() + cos_chi)) * r.phi * cot_half * cot_half;
    let minus_d0 = r.phi * sth * sth + delta;
    let minus_d1 = -r.phi * cth * cth + delta;

    let offset = match phase {
        RabiPhase::Literal => r.phi,
        RabiPhase::Angle => ang.phi,
    };
    let rabi_0e = Complex::from_polar(quarter * sth, -(ang.xi + offset)) * Complex::new(a * b, -(r.chi + r.chi));
    let rabi_1e = Complex::from_polar(quarter * cth, -ang.xi) * Complex::new(-a * b, r.chi + r.chi);

    LaserParams {
        rabi_0e,
        rabi_1e,
        detuning_0: -minus_d0,
        detuning_1: -minus_d1,
        detuning_e: T::zero(),
    }
}

pub fn phase_driven_hamiltonian<T: Real>(laws: &PathLaws<T>, t: T, phase: RabiPhase) -> CMat<T> {
    phase_driven_lasers(&laws.sample(t), phase).hamiltonian()
}

/// Elementwise gap between a closed-form Hamiltonian and the generic one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalyticDeviation<T> {
    /// `‖H_generic − H_closed‖_max`.
    pub raw: T,
    /// Common diagonal offset `tr(H_generic − H_closed)/d`.
    pub identity_shift: T,
    /// `‖H_generic − H_closed − shift·I‖_max`.
    pub modulo_identity: T,
}

impl<T: Real> AnalyticDeviation<T> {
    pub fn between(generic: &CMat<T>, closed: &CMat<T>) -> Self {
        let diff = generic - closed;
        let d = T::from_usize_lossy(diff.dim());
        let shift = diff.trace().re / d;
        let shifted = &diff - &CMat::identity(diff.dim()).scale_real(shift);
        Self {
            raw: diff.max_abs(),
            identity_shift: shift,
            modulo_identity: shifted.max_abs(),
        }
    }
}

/// Compare the phase-driven closed form with the generic synthesis on the same
/// frame (ancilla rate [`GammaLaw::PhaseDrivenDecoupling`]).
pub fn phase_driven_deviation<T: Real>(
    laws: &PathLaws<T>,
    t: T,
    phase: RabiPhase,
) -> Result<AnalyticDeviation<T>> {
    let point = laws.sample(t);
    let frame = phase_driven_frame(laws, t)?;
    let generic = reverse_hamiltonian(&frame, GammaLaw::PhaseDrivenDecoupling.rate(&point))?;
    let closed = phase_driven_lasers(&point, phase).hamiltonian();
    Ok(AnalyticDeviation::between(&generic, &closed))
}

/// Two-qubit drive in `(|00⟩,|01⟩,|10⟩,|11⟩,|ee⟩,|0e⟩)`:
/// `½(Ω|ee⟩⟨b| + H.c.) + Δ|ee⟩⟨ee|` with `Ω = e^{iξ}(iχ̇ + ξ̇ sin χ)`,
/// `Δ = −ξ̇(1 + cos χ)` and `|b⟩ = sin(θ/2)e^{−iφ}|10⟩ − cos(θ/2)|11⟩`.
pub fn two_qubit_at<T: Real>(p: &PathPoint<T>) -> CMat<T> {
    let (a, r) = (&p.angles, &p.rates);
    let half = T::lit(0.5);
    let b = bright_state(a.theta, a.phi).embed(6, &[2, 3, 4]);
    let ee = CVec::basis(6, 4);
    let omega = Complex::from_polar(T::one(), a.xi) * Complex::new(r.xi * a.chi.sin(), r.chi);
    let detuning = -r.xi * (T::one() + a.chi.cos());
    let mut h = CMat::zeros(6);
    h.add_outer(omega * half, &ee, &b);
    h.add_outer(omega.conj() * half, &b, &ee);
    h[(4, 4)] += Complex::new(detuning, T::zero());
    h
}

pub fn two_qubit_hamiltonian<T: Real>(laws: &PathLaws<T>, t: T) -> CMat<T> {
    two_qubit_at(&laws.sample(t))
}
