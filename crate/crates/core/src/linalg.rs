//! Dense exact rational linear algebra.
//!
//! Small dense vectors and matrices over `BigRational`, with the handful of
//! operations the rest of the crate needs: products, transposes, Gaussian
//! elimination (solve / rank / kernel / inverse), and canonicalization of
//! rational vectors to primitive integer vectors.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

/// Exact rational scalar used throughout the crate.
pub type Q = BigRational;

/// Dense rational vector.
pub type QV = Vec<Q>;

/// Rational from an integer.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational from numerator and denominator.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Zero vector of the given dimension.
pub fn qv_zero(n: usize) -> QV {
    vec![Q::zero(); n]
}

/// Vector from integers.
pub fn qv_from(v: &[i64]) -> QV {
    v.iter().map(|&x| qi(x)).collect()
}

/// Componentwise sum.
pub fn qv_add(a: &[Q], b: &[Q]) -> QV {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Componentwise difference.
pub fn qv_sub(a: &[Q], b: &[Q]) -> QV {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Negation.
pub fn qv_neg(a: &[Q]) -> QV {
    a.iter().map(|x| -x).collect()
}

/// Scalar multiple.
pub fn qv_scale(c: &Q, a: &[Q]) -> QV {
    a.iter().map(|x| c * x).collect()
}

/// `a + c*b`.
pub fn qv_axpy(a: &[Q], c: &Q, b: &[Q]) -> QV {
    a.iter().zip(b).map(|(x, y)| x + c * y).collect()
}

/// Dot product.
pub fn qv_dot(a: &[Q], b: &[Q]) -> Q {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).fold(Q::zero(), |s, t| s + t)
}

/// True if every entry is zero.
pub fn qv_is_zero(a: &[Q]) -> bool {
    a.iter().all(|x| x.is_zero())
}

/// Scale a nonzero rational vector to a primitive integer vector with the
/// same orientation (entries coprime, first nonzero entry keeps its sign).
///
/// Returns the all-zero integer vector for zero input.
pub fn primitive_integer(a: &[Q]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in a {
        lcm = lcm.lcm(x.denom());
    }
    let mut ints: Vec<BigInt> = a.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    let mut gcd = BigInt::zero();
    for v in &ints {
        gcd = gcd.gcd(v);
    }
    if !gcd.is_zero() && !gcd.is_one() {
        for v in &mut ints {
            *v /= &gcd;
        }
    }
    ints
}

/// Primitive integer vector converted back to rationals; used to put ray
/// and covector representatives into canonical form.
pub fn canonical_ray(a: &[Q]) -> QV {
    primitive_integer(a)
        .into_iter()
        .map(Q::from_integer)
        .collect()
}

/// Dense row-major rational matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Q>,
}

impl QMat {
    /// Zero matrix.
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMat { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Q::one();
        }
        m
    }

    /// Build from row vectors (all rows must have equal length).
    pub fn from_rows(rows: &[QV]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |v| v.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            assert_eq!(row.len(), c, "ragged rows");
            data.extend(row.iter().cloned());
        }
        QMat { rows: r, cols: c, data }
    }

    /// Build from integer row slices.
    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        QMat::from_rows(&rows.iter().map(|r| qv_from(r)).collect::<Vec<_>>())
    }

    /// Entry accessor.
    pub fn at(&self, i: usize, j: usize) -> &Q {
        &self.data[i * self.cols + j]
    }

    /// Mutable entry accessor.
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Q {
        &mut self.data[i * self.cols + j]
    }

    /// Row as a vector.
    pub fn row(&self, i: usize) -> QV {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    /// Column as a vector.
    pub fn col(&self, j: usize) -> QV {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    /// Transpose.
    pub fn transpose(&self) -> QMat {
        let mut t = QMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *t.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        t
    }

    /// Matrix–vector product.
    pub fn mul_vec(&self, v: &[Q]) -> QV {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut s = Q::zero();
                for j in 0..self.cols {
                    if !self.at(i, j).is_zero() && !v[j].is_zero() {
                        s += self.at(i, j) * &v[j];
                    }
                }
                s
            })
            .collect()
    }

    /// Matrix product.
    pub fn mul_mat(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut m = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if !b.is_zero() {
                        *m.at_mut(i, j) += a * b;
                    }
                }
            }
        }
        m
    }

    /// Row-reduce in place; returns the pivot columns.  `augment` marks how
    /// many trailing columns are excluded from pivot selection (augmented
    /// right-hand sides).
    fn row_reduce(&mut self, augment: usize) -> Vec<usize> {
        let pivot_cols = self.cols - augment;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..pivot_cols {
            // Find a pivot row.
            let Some(p) = (r..self.rows).find(|&i| !self.at(i, c).is_zero()) else {
                continue;
            };
            // Swap into place.
            if p != r {
                for j in 0..self.cols {
                    let a = self.at(p, j).clone();
                    let b = self.at(r, j).clone();
                    *self.at_mut(p, j) = b;
                    *self.at_mut(r, j) = a;
                }
            }
            // Normalize the pivot row.
            let inv = self.at(r, c).recip();
            for j in 0..self.cols {
                let v = self.at(r, j) * &inv;
                *self.at_mut(r, j) = v;
            }
            // Eliminate the column elsewhere.
            for i in 0..self.rows {
                if i != r && !self.at(i, c).is_zero() {
                    let f = self.at(i, c).clone();
                    for j in 0..self.cols {
                        let v = self.at(i, j) - &f * self.at(r, j);
                        *self.at_mut(i, j) = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == self.rows {
                break;
            }
        }
        pivots
    }

    /// Rank of the matrix.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce(0).len()
    }

    /// Solve `self * x = b`; returns one solution if consistent.
    pub fn solve(&self, b: &[Q]) -> Option<QV> {
        assert_eq!(self.rows, b.len());
        let mut aug = QMat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let pivots = aug.row_reduce(1);
        // Inconsistent if a zero row has nonzero rhs.
        for i in pivots.len()..self.rows {
            if !aug.at(i, self.cols).is_zero() {
                return None;
            }
        }
        let mut x = qv_zero(self.cols);
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug.at(r, self.cols).clone();
        }
        Some(x)
    }

    /// Basis of the kernel of `self`.
    pub fn kernel(&self) -> Vec<QV> {
        let mut m = self.clone();
        let pivots = m.row_reduce(0);
        let mut basis = Vec::new();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = qv_zero(self.cols);
            v[free] = Q::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m.at(r, free).clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Inverse of a square matrix, if nonsingular.
    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = QMat::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, n + i) = Q::one();
        }
        let pivots = aug.row_reduce(n);
        if pivots.len() < n {
            return None;
        }
        let mut inv = QMat::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                *inv.at_mut(i, j) = aug.at(i, n + j).clone();
            }
        }
        Some(inv)
    }
}

/// Rank of a set of rational vectors.
pub fn rank_of(vectors: &[QV]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    QMat::from_rows(vectors).rank()
}

/// Square integer matrix used for Weyl group elements acting on the weight
/// lattice.  Entries stay small (the group is finite), so `i64` suffices;
/// products assert on overflow in debug builds.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IMat {
    pub n: usize,
    data: Vec<i64>,
}

impl IMat {
    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        IMat { n, data }
    }

    /// Build from rows.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            assert_eq!(r.len(), n, "not square");
            data.extend_from_slice(r);
        }
        IMat { n, data }
    }

    /// Entry accessor.
    pub fn at(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    /// Mutable entry accessor.
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut i64 {
        &mut self.data[i * self.n + j]
    }

    /// Matrix product.
    pub fn mul(&self, other: &IMat) -> IMat {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut m = IMat { n, data: vec![0; n * n] };
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let b = other.at(k, j);
                    if b != 0 {
                        let cell = m.at(i, j).checked_add(
                            a.checked_mul(b).expect("integer matrix overflow"),
                        );
                        *m.at_mut(i, j) = cell.expect("integer matrix overflow");
                    }
                }
            }
        }
        m
    }

    /// Integer matrix–vector product.
    pub fn mul_ivec(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(self.n, v.len());
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.at(i, j) * v[j]).sum())
            .collect()
    }

    /// Rational matrix–vector product.
    pub fn mul_qvec(&self, v: &[Q]) -> QV {
        assert_eq!(self.n, v.len());
        (0..self.n)
            .map(|i| {
                let mut s = Q::zero();
                for j in 0..self.n {
                    let a = self.at(i, j);
                    if a != 0 && !v[j].is_zero() {
                        s += &v[j] * qi(a);
                    }
                }
                s
            })
            .collect()
    }

    /// Transpose.
    pub fn transpose(&self) -> IMat {
        let n = self.n;
        let mut m = IMat { n, data: vec![0; n * n] };
        for i in 0..n {
            for j in 0..n {
                *m.at_mut(j, i) = self.at(i, j);
            }
        }
        m
    }

    /// Rational view of the matrix.
    pub fn to_qmat(&self) -> QMat {
        let mut m = QMat::zero(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                *m.at_mut(i, j) = qi(self.at(i, j));
            }
        }
        m
    }

    /// True for the identity.
    pub fn is_identity(&self) -> bool {
        *self == IMat::identity(self.n)
    }
}

/// Signum of a rational as -1, 0, or 1.
pub fn qsign(x: &Q) -> i32 {
    if x.is_zero() {
        0
    } else if x.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solve_and_inverse_roundtrip() {
        let m = QMat::from_i64_rows(&[vec![2, -1], vec![-3, 2]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul_mat(&inv), QMat::identity(2));
        // G2 Cartan inverse is [[2,1],[3,2]].
        assert_eq!(inv.at(0, 0), &qi(2));
        assert_eq!(inv.at(0, 1), &qi(1));
        assert_eq!(inv.at(1, 0), &qi(3));
        assert_eq!(inv.at(1, 1), &qi(2));
        let x = m.solve(&qv_from(&[1, 0])).unwrap();
        assert_eq!(x, qv_from(&[2, 3]));
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        let m = QMat::from_i64_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(qv_is_zero(&m.mul_vec(v)));
        }
    }

    #[test]
    fn primitive_integer_canonicalization() {
        let v = vec![qr(2, 6), qr(-1, 3), qi(1)];
        assert_eq!(
            primitive_integer(&v),
            vec![BigInt::from(1), BigInt::from(-1), BigInt::from(3)]
        );
        assert_eq!(primitive_integer(&qv_zero(3)), vec![BigInt::from(0); 3]);
    }
}
