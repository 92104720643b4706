//! Coordinate-line pulse schedules on the `(χ, ξ)` sphere, their pulse areas
//! and durations, and target SU(2) gates.
//!
//! Schedules drive the dark-ancilla three-level frame with `θ = π`, `φ = 0`,
//! so that the bright state is `|0⟩` and every segment couples `|0⟩ ↔ |e⟩`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::frames::{FrameFamily, FramePath, ThreeLevelSubspace};
use crate::laws::{AngleLaw, LawSegment, PathLaws};
use crate::numerics::{pauli, CMat};
use crate::scalar::Real;

/// One leg of a schedule. Zero duration means an instantaneous `ξ` jump.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment<T> {
    pub duration: T,
    pub chi: AngleLaw<T>,
    pub xi: AngleLaw<T>,
}

impl<T: Real> Segment<T> {
    /// Rabi magnitude `|iχ̇ − ξ̇ sin χ cos χ|` at local time `t` (rad/s).
    pub fn rabi_magnitude(&self, t: T) -> T {
        let chi = self.chi.value_at(t);
        let across = self.xi.rate() * chi.sin() * chi.cos();
        self.chi.rate().hypot(across)
    }

    /// `∫|Ω| dt` over the segment.
    pub fn pulse_area(&self) -> T {
        if self.duration == T::zero() {
            return T::zero();
        }
        match (&self.chi, &self.xi) {
            (AngleLaw::Linear { rate, .. }, AngleLaw::Constant(_)) => rate.abs() * self.duration,
            (AngleLaw::Constant(chi), AngleLaw::Linear { rate, .. }) => {
                (*rate * chi.sin() * chi.cos()).abs() * self.duration
            }
            (AngleLaw::Constant(_), AngleLaw::Constant(_)) => T::zero(),
            _ => {
                // both angles moving: composite Simpson
                let n = 2000;
                let h = self.duration / T::from_usize_lossy(n);
                let mut acc = self.rabi_magnitude(T::zero()) + self.rabi_magnitude(self.duration);
                for k in 1..n {
                    let w = if k % 2 == 1 { T::lit(4.0) } else { T::lit(2.0) };
                    acc += w * self.rabi_magnitude(h * T::from_usize_lossy(k));
                }
                acc * h / T::lit(3.0)
            }
        }
    }
}

/// Ordered segments plus the drive strength `k` and initial `ξ` offset.
#[derive(Clone, Debug, PartialEq)]
pub struct Schedule<T> {
    pub segments: Vec<Segment<T>>,
    /// Rate constant (rad/s).
    pub k: T,
    pub xi0: T,
}

impl<T: Real> Schedule<T> {
    /// Validates continuity and cyclicity of `χ`.
    pub fn new(segments: Vec<Segment<T>>, k: T, xi0: T) -> Result<Self> {
        let schedule = Self { segments, k, xi0 };
        let laws = schedule
            .laws(T::PI(), T::zero())
            .map_err(|e| Error::InvalidSchedule(e.to_string()))?;
        let (start, end) = (laws.start_angles().chi, laws.end_angles().chi);
        if (start - end).abs() > T::lit(1e-12) {
            return Err(Error::InvalidSchedule(format!(
                "chi must return to its start value (start {start}, end {end})"
            )));
        }
        Ok(schedule)
    }

    pub fn duration(&self) -> T {
        self.segments.iter().map(|s| s.duration).sum()
    }

    pub fn pulse_area(&self) -> T {
        pulse_area(self)
    }

    /// Full angle laws with the bright-state angles `θ`, `φ` held fixed.
    pub fn laws(&self, theta: T, phi: T) -> Result<PathLaws<T>> {
        PathLaws::new(
            self.segments
                .iter()
                .map(|s| LawSegment {
                    duration: s.duration,
                    theta: AngleLaw::Constant(theta),
                    phi: AngleLaw::Constant(phi),
                    chi: s.chi,
                    xi: s.xi,
                })
                .collect(),
        )
    }

    /// Dark-ancilla frame path with bright state `|0⟩`.
    pub fn frame_path(&self) -> Result<FramePath<T>> {
        FramePath::new(
            FrameFamily::ThreeLevel(ThreeLevelSubspace::DarkAncilla),
            self.laws(T::PI(), T::zero())?,
        )
    }
}

fn check_rate<T: Real>(k: T) -> Result<()> {
    if !(k > T::zero()) || !k.is_finite() {
        return Err(Error::InvalidSchedule(format!("rate constant k must be positive, got {k}")));
    }
    Ok(())
}

/// Three coordinate-line legs: `χ: 0 → χ₁` at rate `k`, a `ξ` sweep of `ξ₂`
/// at `χ₁` with `|ξ̇ sin χ₁ cos χ₁| = k`, then `χ: χ₁ → 0` at rate `k`.
///
/// At `χ₁ = π` the drive vanishes during the `ξ` leg, which becomes an
/// instantaneous jump. `χ₁ = π/2` with `ξ₂ ≠ 0` has no constant-Rabi `ξ` rate
/// and is rejected.
pub fn op_schedule<T: Real>(chi1: T, xi2: T, xi0: T, k: T) -> Result<Schedule<T>> {
    check_rate(k)?;
    let eps = T::lit(1e-12);
    if !(chi1 > T::zero()) || chi1 > T::PI() + eps {
        return Err(Error::InvalidSchedule(format!("chi1 must lie in (0, pi], got {chi1}")));
    }
    let chi1 = chi1.min(T::PI());
    let ramp = chi1 / k;
    let mut segments = vec![Segment {
        duration: ramp,
        chi: AngleLaw::Linear { start: T::zero(), rate: k },
        xi: AngleLaw::Constant(xi0),
    }];

    if xi2 != T::zero() {
        if (chi1 - T::FRAC_PI_2()).abs() <= eps {
            return Err(Error::InvalidSchedule(
                "chi1 = pi/2 makes sin(chi1)cos(chi1) vanish; no constant-Rabi xi rate exists".into(),
            ));
        }
        if (chi1 - T::PI()).abs() <= eps {
            segments.push(Segment {
                duration: T::zero(),
                chi: AngleLaw::Constant(chi1),
                xi: AngleLaw::Jump { from: xi0, delta: xi2 },
            });
        } else {
            let lever = (chi1.sin() * chi1.cos()).abs();
            let rate = k / lever * xi2.signum();
            segments.push(Segment {
                duration: xi2.abs() * lever / k,
                chi: AngleLaw::Constant(chi1),
                xi: AngleLaw::Linear { start: xi0, rate },
            });
        }
    }

    segments.push(Segment {
        duration: ramp,
        chi: AngleLaw::Linear { start: chi1, rate: -k },
        xi: AngleLaw::Constant(xi0 + xi2),
    });
    Schedule::new(segments, k, xi0)
}

/// Orange-slice path: `χ: 0 → π`, instantaneous `ξ` jump of `ξ₂`, `χ: π → 0`.
pub fn ossp_schedule<T: Real>(xi2: T, xi0: T, k: T) -> Result<Schedule<T>> {
    check_rate(k)?;
    let ramp = T::PI() / k;
    Schedule::new(
        vec![
            Segment {
                duration: ramp,
                chi: AngleLaw::Linear { start: T::zero(), rate: k },
                xi: AngleLaw::Constant(xi0),
            },
            Segment {
                duration: T::zero(),
                chi: AngleLaw::Constant(T::PI()),
                xi: AngleLaw::Jump { from: xi0, delta: xi2 },
            },
            Segment {
                duration: ramp,
                chi: AngleLaw::Linear { start: T::PI(), rate: -k },
                xi: AngleLaw::Constant(xi0 + xi2),
            },
        ],
        k,
        xi0,
    )
}

/// Total `∫|Ω(t)| dt` (rad), summed segment by segment in closed form.
pub fn pulse_area<T: Real>(s: &Schedule<T>) -> T {
    s.segments.iter().map(Segment::pulse_area).sum()
}

/// Relative phase `ξ₂(1 − cos χ₁)` between the two computational states after
/// the three-leg path.
pub fn op_geometric_phase<T: Real>(chi1: T, xi2: T) -> T {
    xi2 * (T::one() - chi1.cos())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RotationConvention {
    /// `e^{−iα n·σ/2}`
    #[default]
    HalfAngle,
    /// `e^{−iα n·σ}`
    FullAngle,
}

/// Rotation about a Bloch axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GateTarget<T> {
    pub bloch: [T; 3],
    pub alpha: T,
    pub convention: RotationConvention,
}

impl<T: Real> GateTarget<T> {
    pub fn new(bloch: [T; 3], alpha: T, convention: RotationConvention) -> Result<Self> {
        let norm = bloch.iter().map(|x| *x * *x).sum::<T>().sqrt();
        if (norm - T::one()).abs() > T::lit(1e-12) {
            return Err(Error::InvalidArgument(format!(
                "Bloch vector must have unit length, got {norm}"
            )));
        }
        Ok(Self { bloch, alpha, convention })
    }

    /// Axis `(sin χ cos ξ, sin χ sin ξ, cos χ)`.
    pub fn from_sphere(chi: T, xi: T, alpha: T, convention: RotationConvention) -> Self {
        Self {
            bloch: [chi.sin() * xi.cos(), chi.sin() * xi.sin(), chi.cos()],
            alpha,
            convention,
        }
    }
}

/// `e^{−iα n·σ/2}` or `e^{−iα n·σ}` according to the target's convention.
pub fn target_su2<T: Real>(target: &GateTarget<T>) -> CMat<T> {
    let angle = match target.convention {
        RotationConvention::HalfAngle => target.alpha * T::lit(0.5),
        RotationConvention::FullAngle => target.alpha,
    };
    let [sx, sy, sz] = pauli::<T>();
    let [nx, ny, nz] = target.bloch;
    let mut gen = sx.scale_real(nx);
    gen += &sy.scale_real(ny);
    gen += &sz.scale_real(nz);
    let mut u = CMat::identity(2).scale_real(angle.cos());
    u += &gen.scale(Complex::new(T::zero(), -angle.sin()));
    u
}

/// `diag(1, i)`.
pub fn s_gate<T: Real>() -> CMat<T> {
    CMat::from_diag(&[Complex::new(T::one(), T::zero()), Complex::new(T::zero(), T::one())])
}

/// `diag(1, e^{iπ/4})`.
pub fn t_gate<T: Real>() -> CMat<T> {
    CMat::from_diag(&[
        Complex::new(T::one(), T::zero()),
        Complex::from_polar(T::one(), T::FRAC_PI_4()),
    ])
}
