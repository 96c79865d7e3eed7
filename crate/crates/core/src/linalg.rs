//! Dense row-major matrices: LU determinant, solves and elementary
//! symmetric functions of eigenvalues via principal minors.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Square row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = T::one();
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> T>(n: usize, mut f: F) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Self { n, data }
    }

    pub fn from_rows(n: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Parameter(format!("expected {} entries, got {}", n * n, data.len())));
        }
        Ok(Self { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    /// Principal submatrix on the listed indices.
    pub fn principal(&self, idx: &[usize]) -> Self {
        Self::from_fn(idx.len(), |i, j| self[(idx[i], idx[j])])
    }

    /// LU factorisation with partial pivoting.
    pub fn lu(&self) -> Lu<T> {
        let n = self.n;
        let mut a = self.data.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = T::one();
        let mut singular = false;
        for k in 0..n {
            let mut piv = k;
            let mut best = a[k * n + k].abs();
            for i in k + 1..n {
                let v = a[i * n + k].abs();
                if v > best {
                    best = v;
                    piv = i;
                }
            }
            if best == T::zero() {
                singular = true;
                continue;
            }
            if piv != k {
                for j in 0..n {
                    a.swap(k * n + j, piv * n + j);
                }
                perm.swap(k, piv);
                sign = -sign;
            }
            let d = a[k * n + k];
            for i in k + 1..n {
                let f = a[i * n + k] / d;
                a[i * n + k] = f;
                if f != T::zero() {
                    for j in k + 1..n {
                        a[i * n + j] = a[i * n + j] - f * a[k * n + j];
                    }
                }
            }
        }
        Lu { n, a, perm, sign, singular }
    }

    /// Determinant; `det` of the empty matrix is 1.
    pub fn det(&self) -> T {
        self.lu().det()
    }
}

impl<T> std::ops::Index<(usize, usize)> for Matrix<T> {
    type Output = T;
    fn index(&self, (i, j): (usize, usize)) -> &T {
        &self.data[i * self.n + j]
    }
}

impl<T> std::ops::IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        &mut self.data[i * self.n + j]
    }
}

/// Packed LU factors.
#[derive(Debug, Clone)]
pub struct Lu<T> {
    n: usize,
    a: Vec<T>,
    perm: Vec<usize>,
    sign: T,
    singular: bool,
}

impl<T: Real> Lu<T> {
    pub fn det(&self) -> T {
        if self.singular {
            return T::zero();
        }
        (0..self.n).fold(self.sign, |acc, i| acc * self.a[i * self.n + i])
    }

    /// Ratio of the smallest to the largest pivot modulus, a cheap
    /// conditioning proxy.
    pub fn pivot_ratio(&self) -> T {
        if self.n == 0 {
            return T::one();
        }
        let piv = (0..self.n).map(|i| self.a[i * self.n + i].abs());
        let (lo, hi) = piv.fold((T::infinity(), T::zero()), |(lo, hi), v| (lo.min(v), hi.max(v)));
        if hi == T::zero() {
            T::zero()
        } else {
            lo / hi
        }
    }

    /// Solves `A x = b`.
    pub fn solve(&self, b: &[T]) -> Result<Vec<T>> {
        if self.singular {
            return Err(Error::Singular("LU solve on a singular matrix".into()));
        }
        let n = self.n;
        let mut x: Vec<T> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let mut s = x[i];
            for j in 0..i {
                s = s - self.a[i * n + j] * x[j];
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let mut s = x[i];
            for j in i + 1..n {
                s = s - self.a[i * n + j] * x[j];
            }
            x[i] = s / self.a[i * n + i];
        }
        Ok(x)
    }
}

/// Calls `f` with every increasing `p`-tuple drawn from `offset..n`.
fn for_each_subset<F: FnMut(&[usize])>(n: usize, p: usize, offset: usize, mut f: F) {
    if offset + p > n {
        return;
    }
    let mut idx: Vec<usize> = (offset..offset + p).collect();
    loop {
        f(&idx);
        let mut i = p;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - p + i {
                idx[i] += 1;
                for j in i + 1..p {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Sum of all `p x p` principal minors, the coefficient of `mu^p` in
/// `det(1 + mu A)`.
pub fn principal_minor_sum<T: Real>(a: &Matrix<T>, p: usize) -> T {
    if p == 0 {
        return T::one();
    }
    let mut total = T::zero();
    for_each_subset(a.dim(), p, 0, |idx| total = total + a.principal(idx).det());
    total
}

/// Sum over `p`-subsets `S` of `1..n` of the principal minor on `{0} ∪ S`:
/// the Neumann coefficients of a minor bordered by row and column 0.
pub fn bordered_minor_sum<T: Real>(a: &Matrix<T>, p: usize) -> T {
    if a.dim() == 0 {
        return T::zero();
    }
    if p == 0 {
        return a[(0, 0)];
    }
    let mut total = T::zero();
    let mut buf = Vec::with_capacity(p + 1);
    for_each_subset(a.dim(), p, 1, |idx| {
        buf.clear();
        buf.push(0);
        buf.extend_from_slice(idx);
        total = total + a.principal(&buf).det();
    });
    total
}
