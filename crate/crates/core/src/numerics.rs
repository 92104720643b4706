//! Minimal dense complex linear algebra for the small (dim ≤ 6) spaces used
//! throughout the crate.

use std::fmt;
use std::ops::{Add, AddAssign, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense complex column vector.
#[derive(Clone, PartialEq)]
pub struct CVec<T> {
    entries: Vec<Complex<T>>,
}

/// Dense square complex matrix, row-major.
#[derive(Clone, PartialEq)]
pub struct CMat<T> {
    dim: usize,
    data: Vec<Complex<T>>,
}

#[inline]
fn c<T: Real>(re: T, im: T) -> Complex<T> {
    Complex::new(re, im)
}

impl<T: Real> CVec<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            entries: vec![Complex::zero(); dim],
        }
    }

    pub fn from_vec(entries: Vec<Complex<T>>) -> Self {
        Self { entries }
    }

    /// Real-valued entries.
    pub fn from_real(entries: &[T]) -> Self {
        Self {
            entries: entries.iter().map(|&x| c(x, T::zero())).collect(),
        }
    }

    /// Computational basis vector `|index⟩`.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.entries[index] = Complex::one();
        v
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex<T>] {
        &self.entries
    }

    /// `⟨self|other⟩`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Complex<T> {
        debug_assert_eq!(self.dim(), other.dim());
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(Complex::zero(), |acc, (a, b)| acc + a.conj() * b)
    }

    pub fn norm(&self) -> T {
        self.entries.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            entries: self.entries.iter().map(|z| z * s).collect(),
        }
    }

    /// `self + s·other`.
    pub fn axpy(&self, s: Complex<T>, other: &Self) -> Self {
        Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b * s)
                .collect(),
        }
    }

    /// Copy `self` into a larger space, entry `i` landing at `slots[i]`.
    pub fn embed(&self, dim: usize, slots: &[usize]) -> Self {
        let mut out = Self::zeros(dim);
        for (z, &slot) in self.entries.iter().zip(slots) {
            out.entries[slot] = *z;
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }
}

impl<T> Index<usize> for CVec<T> {
    type Output = Complex<T>;
    fn index(&self, i: usize) -> &Complex<T> {
        &self.entries[i]
    }
}

impl<T> IndexMut<usize> for CVec<T> {
    fn index_mut(&mut self, i: usize) -> &mut Complex<T> {
        &mut self.entries[i]
    }
}

impl<T: Real> Add for &CVec<T> {
    type Output = CVec<T>;
    fn add(self, rhs: &CVec<T>) -> CVec<T> {
        self.axpy(Complex::one(), rhs)
    }
}

impl<T: Real> Sub for &CVec<T> {
    type Output = CVec<T>;
    fn sub(self, rhs: &CVec<T>) -> CVec<T> {
        self.axpy(-Complex::<T>::one(), rhs)
    }
}

impl<T: fmt::Debug> fmt::Debug for CVec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.iter()).finish()
    }
}

impl<T: Real> CMat<T> {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_diag(diag: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, z) in diag.iter().enumerate() {
            m[(i, i)] = *z;
        }
        m
    }

    /// Build from row slices; every row must have `rows.len()` entries.
    pub fn from_rows(rows: &[Vec<Complex<T>>]) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Self { dim, data })
    }

    /// `|u⟩⟨v|`.
    pub fn outer(u: &CVec<T>, v: &CVec<T>) -> Self {
        let dim = u.dim();
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = u[i] * v[j].conj();
            }
        }
        m
    }

    /// `|u⟩⟨u|`.
    pub fn projector(u: &CVec<T>) -> Self {
        Self::outer(u, u)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn adjoint(&self) -> Self {
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(j, i)] = self[(i, j)].conj();
            }
        }
        m
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.dim).fold(Complex::zero(), |acc, i| acc + self[(i, i)])
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_real(&self, s: T) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> T {
        self.data.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(T::zero(), T::max)
    }

    /// `‖M − M†‖_max`.
    pub fn hermiticity_error(&self) -> T {
        let mut worst = T::zero();
        for i in 0..self.dim {
            for j in i..self.dim {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    /// `(M + M†)/2`.
    pub fn hermitian_part(&self) -> Self {
        let half = T::lit(0.5);
        let mut m = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                m[(i, j)] = (self[(i, j)] + self[(j, i)].conj()) * half;
            }
        }
        m
    }

    /// `‖U†U − I‖_max`.
    pub fn unitarity_error(&self) -> T {
        let gram = &self.adjoint() * self;
        gram.max_abs_diff(&Self::identity(self.dim))
    }

    pub fn matvec(&self, v: &CVec<T>) -> CVec<T> {
        let mut out = CVec::zeros(self.dim);
        for i in 0..self.dim {
            let row = &self.data[i * self.dim..(i + 1) * self.dim];
            out[i] = row
                .iter()
                .zip(v.entries())
                .fold(Complex::zero(), |acc, (a, b)| acc + a * b);
        }
        out
    }

    /// `⟨u|M|v⟩`.
    pub fn sandwich(&self, u: &CVec<T>, v: &CVec<T>) -> Complex<T> {
        u.inner(&self.matvec(v))
    }

    /// Add `s·|u⟩⟨v|` in place.
    pub fn add_outer(&mut self, s: Complex<T>, u: &CVec<T>, v: &CVec<T>) {
        for i in 0..self.dim {
            let ui = u[i] * s;
            for j in 0..self.dim {
                self[(i, j)] += ui * v[j].conj();
            }
        }
    }

    /// Sub-matrix on the given rows/columns (in order).
    pub fn restrict(&self, indices: &[usize]) -> Self {
        let mut m = Self::zeros(indices.len());
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                m[(a, b)] = self[(i, j)];
            }
        }
        m
    }

    /// Entries as row vectors.
    pub fn rows(&self) -> Vec<Vec<Complex<T>>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn check_hermitian(&self) -> Result<()> {
        let dev = self.hermiticity_error();
        let scale = T::one().max(self.max_abs());
        if dev > T::hermitian_tol() * scale || dev.is_nan() {
            return Err(Error::NotHermitian {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    pub fn check_unitary(&self) -> Result<()> {
        let dev = self.unitarity_error();
        if dev > T::unitary_tol() || dev.is_nan() {
            return Err(Error::NotUnitary {
                deviation: dev.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(())
    }

    fn same_dim(&self, other: &Self) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }
}

impl<T> Index<(usize, usize)> for CMat<T> {
    type Output = Complex<T>;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.data[i * self.dim + j]
    }
}

impl<T> IndexMut<(usize, usize)> for CMat<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[i * self.dim + j]
    }
}

impl<T: Real> Mul for &CMat<T> {
    type Output = CMat<T>;
    fn mul(self, rhs: &CMat<T>) -> CMat<T> {
        assert_eq!(self.dim, rhs.dim, "matrix product dimension mismatch");
        let n = self.dim;
        let mut out = CMat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.data[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[k * n + j];
                }
            }
        }
        out
    }
}

impl<T: Real> Add for &CMat<T> {
    type Output = CMat<T>;
    fn add(self, rhs: &CMat<T>) -> CMat<T> {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        CMat {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &CMat<T> {
    type Output = CMat<T>;
    fn sub(self, rhs: &CMat<T>) -> CMat<T> {
        assert_eq!(self.dim, rhs.dim, "matrix difference dimension mismatch");
        CMat {
            dim: self.dim,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Real> AddAssign<&CMat<T>> for CMat<T> {
    fn add_assign(&mut self, rhs: &CMat<T>) {
        assert_eq!(self.dim, rhs.dim, "matrix sum dimension mismatch");
        for (a, b) in self.data.iter_mut().zip(&rhs.data) {
            *a += b;
        }
    }
}

impl<T: Real> Neg for &CMat<T> {
    type Output = CMat<T>;
    fn neg(self) -> CMat<T> {
        CMat {
            dim: self.dim,
            data: self.data.iter().map(|z| -z).collect(),
        }
    }
}

impl<T: fmt::Debug> fmt::Debug for CMat<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMat({}x{}) [", self.dim, self.dim)?;
        for row in self.data.chunks(self.dim) {
            writeln!(f, "  {:?}", row)?;
        }
        write!(f, "]")
    }
}

/// Pauli matrices `(σ_x, σ_y, σ_z)`.
pub fn pauli<T: Real>() -> [CMat<T>; 3] {
    let (o, z, i) = (Complex::one(), Complex::zero(), Complex::i());
    let x = CMat::from_rows(&[vec![z, o], vec![o, z]]).unwrap();
    let y = CMat::from_rows(&[vec![z, -i], vec![i, z]]).unwrap();
    let zz = CMat::from_rows(&[vec![o, z], vec![z, -o]]).unwrap();
    [x, y, zz]
}

/// `AB − BA`.
pub fn commutator<T: Real>(a: &CMat<T>, b: &CMat<T>) -> Result<CMat<T>> {
    a.same_dim(b)?;
    Ok(&(a * b) - &(b * a))
}

/// Eigen-decomposition `A = V diag(λ) V†` of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen<T> {
    /// Ascending eigenvalues.
    pub values: Vec<T>,
    /// Eigenvectors as columns, matching `values`.
    pub vectors: CMat<T>,
}

const MAX_JACOBI_SWEEPS: usize = 64;

/// Cyclic complex Jacobi eigensolver.
///
/// Each rotation first removes the phase of the pivot `a_pq` with a diagonal
/// unitary, then applies the real symmetric Jacobi rotation.
pub fn hermitian_eigen<T: Real>(a: &CMat<T>) -> Result<HermitianEigen<T>> {
    a.check_hermitian()?;
    let n = a.dim();
    let mut m = a.hermitian_part();
    let mut v = CMat::identity(n);
    let scale = T::one().max(a.max_abs());
    let target = T::epsilon() * scale * T::lit(0.25);

    let mut converged = n < 2;
    for _ in 0..MAX_JACOBI_SWEEPS {
        let off = off_diagonal_max(&m);
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m[(p, q)];
                let g = apq.norm();
                if g <= T::min_positive_value() {
                    continue;
                }
                let phase = apq / g;
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                let theta = (aqq - app) / (g + g);
                let t = if theta >= T::zero() {
                    T::one() / (theta + (theta * theta + T::one()).sqrt())
                } else {
                    -T::one() / (-theta + (theta * theta + T::one()).sqrt())
                };
                let cs = T::one() / (t * t + T::one()).sqrt();
                let sn = t * cs;
                // J = D R with D = diag(1, conj(phase)) on (p, q):
                // J_pp = c, J_pq = s, J_qp = -s conj(phase), J_qq = c conj(phase)
                let jpp = c(cs, T::zero());
                let jpq = c(sn, T::zero());
                let jqp = phase.conj() * (-sn);
                let jqq = phase.conj() * cs;
                // M <- M J (columns p, q)
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = mkp * jpp + mkq * jqp;
                    m[(k, q)] = mkp * jpq + mkq * jqq;
                }
                // M <- J† M (rows p, q)
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = jpp.conj() * mpk + jqp.conj() * mqk;
                    m[(q, k)] = jpq.conj() * mpk + jqq.conj() * mqk;
                }
                m[(p, q)] = Complex::zero();
                m[(q, p)] = Complex::zero();
                m[(p, p)] = c(m[(p, p)].re, T::zero());
                m[(q, q)] = c(m[(q, q)].re, T::zero());
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * jpp + vkq * jqp;
                    v[(k, q)] = vkp * jpq + vkq * jqq;
                }
            }
        }
    }
    if !converged && off_diagonal_max(&m) > target * T::lit(64.0) {
        return Err(Error::NoConvergence {
            sweeps: MAX_JACOBI_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.partial_cmp(&m[(j, j)].re).unwrap());
    let values = order.iter().map(|&i| m[(i, i)].re).collect();
    let mut vectors = CMat::zeros(n);
    for (col, &src) in order.iter().enumerate() {
        for k in 0..n {
            vectors[(k, col)] = v[(k, src)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

fn off_diagonal_max<T: Real>(m: &CMat<T>) -> T {
    let mut worst = T::zero();
    for i in 0..m.dim() {
        for j in 0..m.dim() {
            if i != j {
                worst = worst.max(m[(i, j)].norm());
            }
        }
    }
    worst
}

/// Smallest eigenvalue of a Hermitian matrix.
pub fn min_eigenvalue<T: Real>(a: &CMat<T>) -> Result<T> {
    let eig = hermitian_eigen(a)?;
    Ok(eig.values.first().copied().unwrap_or_else(T::zero))
}

/// `exp(−i H dt)` for Hermitian `H`, via the Hermitian eigendecomposition.
pub fn unitary_step<T: Real>(h: &CMat<T>, dt: T) -> Result<CMat<T>> {
    if dt < T::zero() || dt.is_nan() {
        return Err(Error::InvalidArgument(format!(
            "time step must be non-negative, got {dt}"
        )));
    }
    let eig = hermitian_eigen(h)?;
    let n = h.dim();
    let v = &eig.vectors;
    let phases: Vec<Complex<T>> = eig
        .values
        .iter()
        .map(|&lam| Complex::from_polar(T::one(), -lam * dt))
        .collect();
    let mut u = CMat::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex::zero();
            for (k, ph) in phases.iter().enumerate() {
                acc += v[(i, k)] * ph * v[(j, k)].conj();
            }
            u[(i, j)] = acc;
        }
    }
    Ok(u)
}

/// `|tr(U†V)|² / d²`, invariant under a global phase on either argument.
pub fn fidelity_up_to_global_phase<T: Real>(u: &CMat<T>, v: &CMat<T>) -> Result<T> {
    u.same_dim(v)?;
    u.check_unitary()?;
    v.check_unitary()?;
    let d = T::from_usize_lossy(u.dim());
    let overlap = (&u.adjoint() * v).trace();
    Ok((overlap.norm_sqr() / (d * d)).min(T::one()))
}

/// Haar-averaged gate fidelity `(d + |tr(U†V)|²) / (d(d + 1))`.
///
/// Not used by the decoherence benchmark, which follows the fixed
/// 1001-state estimator in [`crate::evolve::average_fidelity`].
pub fn haar_average_fidelity<T: Real>(u: &CMat<T>, v: &CMat<T>) -> Result<T> {
    u.same_dim(v)?;
    let d = T::from_usize_lossy(u.dim());
    let overlap = (&u.adjoint() * v).trace();
    Ok((d + overlap.norm_sqr()) / (d * (d + T::one())))
}
