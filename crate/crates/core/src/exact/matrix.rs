use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{det, int, ExactError, Scalar};

/// Square matrix over exact rationals, stored row-major. Indices are
/// zero-based.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    order: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn new(order: usize, entries: Vec<Scalar>) -> Result<Self, ExactError> {
        if order == 0 {
            return Err(ExactError::EmptyMatrix);
        }
        if entries.len() != order * order {
            return Err(ExactError::Shape {
                order,
                expected: order * order,
                got: entries.len(),
            });
        }
        Ok(Self { order, entries })
    }

    /// Builds a matrix from a closure over `(row, col)`.
    ///
    /// Panics if `order == 0`.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        assert!(order > 0, "matrix order must be at least 1");
        let mut entries = Vec::with_capacity(order * order);
        for i in 0..order {
            for j in 0..order {
                entries.push(f(i, j));
            }
        }
        Self { order, entries }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Result<Self, ExactError> {
        let order = rows.len();
        let mut entries = Vec::with_capacity(order * order);
        for row in rows {
            if row.len() != order {
                return Err(ExactError::Shape {
                    order,
                    expected: order * order,
                    got: rows.iter().map(|r| r.len()).sum(),
                });
            }
            entries.extend(row.iter().map(|&v| int(v)));
        }
        Self::new(order, entries)
    }

    pub fn from_bigint_rows(rows: Vec<Vec<BigInt>>) -> Result<Self, ExactError> {
        let order = rows.len();
        let got: usize = rows.iter().map(Vec::len).sum();
        if rows.iter().any(|r| r.len() != order) {
            return Err(ExactError::Shape {
                order,
                expected: order * order,
                got,
            });
        }
        let entries = rows.into_iter().flatten().map(Scalar::from_integer).collect();
        Self::new(order, entries)
    }

    pub fn identity(order: usize) -> Self {
        Self::scalar(order, Scalar::one())
    }

    pub fn zeros(order: usize) -> Self {
        Self::from_fn(order, |_, _| Scalar::zero())
    }

    /// `c * I`.
    pub fn scalar(order: usize, c: Scalar) -> Self {
        Self::from_fn(order, |i, j| if i == j { c.clone() } else { Scalar::zero() })
    }

    pub fn diagonal(diag: &[Scalar]) -> Self {
        Self::from_fn(diag.len(), |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                Scalar::zero()
            }
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.order + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.entries[i * self.order + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Scalar]> {
        self.entries.chunks(self.order)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(|e| e.is_integer())
    }

    /// Row-major integer entries, or `None` if some entry is not an integer.
    pub fn to_integers(&self) -> Option<Vec<BigInt>> {
        self.entries
            .iter()
            .map(|e| e.is_integer().then(|| e.to_integer()))
            .collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            order: self.order,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// `P M P^T` for the permutation sending index `i` to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.order);
        let mut out = Self::zeros(self.order);
        for i in 0..self.order {
            for j in 0..self.order {
                out.set(perm[i], perm[j], self.get(i, j).clone());
            }
        }
        out
    }

    pub fn principal_submatrix(&self, subset: &[usize]) -> Result<Self, ExactError> {
        for &i in subset {
            if i >= self.order {
                return Err(ExactError::IndexOutOfRange {
                    index: i,
                    order: self.order,
                });
            }
        }
        if subset.is_empty() {
            return Err(ExactError::EmptyMatrix);
        }
        Ok(Self::from_fn(subset.len(), |i, j| {
            self.get(subset[i], subset[j]).clone()
        }))
    }

    pub fn det(&self) -> Scalar {
        match self.to_integers() {
            Some(ints) => Scalar::from_integer(det::bareiss_det(&ints, self.order)),
            None => det::gaussian_det(self),
        }
    }

    /// Determinant of the principal submatrix on `subset`; the empty minor
    /// is 1.
    pub fn principal_minor(&self, subset: &[usize]) -> Result<Scalar, ExactError> {
        if subset.is_empty() {
            return Ok(Scalar::one());
        }
        Ok(self.principal_submatrix(subset)?.det())
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        let n = self.order;
        let mut work = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !work.get(r, col).is_zero())
                .ok_or(ExactError::Singular)?;
            if pivot != col {
                work.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            let p = work.get(col, col).recip();
            work.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r == col || work.get(r, col).is_zero() {
                    continue;
                }
                let factor = work.get(r, col).clone();
                work.sub_row_multiple(r, col, &factor);
                inv.sub_row_multiple(r, col, &factor);
            }
        }
        Ok(inv)
    }

    pub fn is_identity_multiple(&self, c: &Scalar) -> bool {
        (0..self.order).all(|i| {
            (0..self.order).all(|j| {
                let e = self.get(i, j);
                if i == j {
                    e == c
                } else {
                    e.is_zero()
                }
            })
        })
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, ExactError> {
        self.check_order(rhs)?;
        Ok(self * rhs)
    }

    fn check_order(&self, rhs: &Self) -> Result<(), ExactError> {
        if self.order != rhs.order {
            return Err(ExactError::OrderMismatch {
                left: self.order,
                right: rhs.order,
            });
        }
        Ok(())
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.order {
            self.entries.swap(a * self.order + j, b * self.order + j);
        }
    }

    fn scale_row(&mut self, r: usize, c: &Scalar) {
        for j in 0..self.order {
            let idx = r * self.order + j;
            self.entries[idx] = &self.entries[idx] * c;
        }
    }

    /// row[target] -= factor * row[source]
    fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &Scalar) {
        for j in 0..self.order {
            let s = &self.entries[source * self.order + j] * factor;
            let idx = target * self.order + j;
            self.entries[idx] = &self.entries[idx] - s;
        }
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.rows().map(|r| {
                r.iter()
                    .map(super::scalar_to_string)
                    .collect::<Vec<_>>()
            }))
            .finish()
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format_matrix(self))
    }
}

impl Mul for &ExactMatrix {
    type Output = ExactMatrix;

    fn mul(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.order, rhs.order, "matrix orders differ");
        let n = self.order;
        ExactMatrix::from_fn(n, |i, j| {
            let mut acc = Scalar::zero();
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                acc += a * rhs.get(k, j);
            }
            acc
        })
    }
}

impl Add for &ExactMatrix {
    type Output = ExactMatrix;

    fn add(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.order, rhs.order, "matrix orders differ");
        ExactMatrix {
            order: self.order,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &ExactMatrix {
    type Output = ExactMatrix;

    fn sub(self, rhs: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.order, rhs.order, "matrix orders differ");
        ExactMatrix {
            order: self.order,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &ExactMatrix {
    type Output = ExactMatrix;

    fn neg(self) -> ExactMatrix {
        ExactMatrix {
            order: self.order,
            entries: self.entries.iter().map(|e| -e).collect(),
        }
    }
}
