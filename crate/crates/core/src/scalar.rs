//! Floating-point scalar abstraction shared by every module.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Real scalar the whole toolkit is generic over (`f32` or `f64`).
///
/// The tolerance hooks scale the numerical contracts to the precision of the
/// underlying type: an `f64` run is held to the tight bounds, an `f32` run to
/// proportionally looser ones.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + Default + Send + Sync + 'static
{
    /// Relative bound on `‖M − M†‖_max` accepted as Hermitian.
    fn hermitian_tol() -> Self;
    /// Bound on `‖Gram − I‖_max` accepted as orthonormal.
    fn orthonormal_tol() -> Self;
    /// Bound on `‖U†U − I‖_max` accepted as unitary.
    fn unitary_tol() -> Self;

    /// Lossy literal conversion; every literal in this crate fits both types.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("literal representable in scalar type")
    }

    #[inline]
    fn from_usize_lossy(n: usize) -> Self {
        Self::from_usize(n).expect("count representable in scalar type")
    }
}

macro_rules! impl_real {
    ($t:ty, $herm:expr, $orth:expr, $unit:expr) => {
        impl Real for $t {
            #[inline]
            fn hermitian_tol() -> Self {
                $herm
            }
            #[inline]
            fn orthonormal_tol() -> Self {
                $orth
            }
            #[inline]
            fn unitary_tol() -> Self {
                $unit
            }
        }
    };
}

impl_real!(f64, 1e-10, 1e-10, 1e-8);
impl_real!(f32, 1e-4, 1e-4, 1e-3);
