//! Fixed-size 3×3 matrices over an arbitrary field.
//!
//! The same code path serves the exact rational kernel (`Mat3<Scalar>`) and
//! the floating-point simulation path (`Mat3<f64>`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Num;

use crate::scalar::{self, Scalar};

/// Minimal field interface shared by `Scalar` and `f64`.
pub trait Field: Clone + Num + Neg<Output = Self> + PartialEq + fmt::Debug {}

impl<T: Clone + Num + Neg<Output = T> + PartialEq + fmt::Debug> Field for T {}

/// A 3-vector.
pub type Vec3<T> = [T; 3];

/// A 3×3 matrix stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Mat3<T>(pub [[T; 3]; 3]);

impl<T: Field> Mat3<T> {
    /// Builds a matrix from a closure on `(row, col)`.
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> T) -> Self {
        Mat3([
            [f(0, 0), f(0, 1), f(0, 2)],
            [f(1, 0), f(1, 1), f(1, 2)],
            [f(2, 0), f(2, 1), f(2, 2)],
        ])
    }

    /// The zero matrix.
    pub fn zero() -> Self {
        Self::from_fn(|_, _| T::zero())
    }

    /// The identity matrix.
    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { T::one() } else { T::zero() })
    }

    /// The elementary matrix with a single one at 0-based `(i, j)`.
    pub fn unit(i: usize, j: usize) -> Self {
        Self::from_fn(|r, c| if r == i && c == j { T::one() } else { T::zero() })
    }

    /// Diagonal matrix.
    pub fn diag(d: [T; 3]) -> Self {
        let [a, b, c] = d;
        let z = T::zero;
        Mat3([[a, z(), z()], [z(), b, z()], [z(), z(), c]])
    }

    /// Entry at 0-based `(i, j)`.
    pub fn at(&self, i: usize, j: usize) -> &T {
        &self.0[i][j]
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].clone())
    }

    /// Trace.
    pub fn trace(&self) -> T {
        self.0[0][0].clone() + self.0[1][1].clone() + self.0[2][2].clone()
    }

    /// Multiplies every entry by `s`.
    pub fn scale(&self, s: &T) -> Self {
        Self::from_fn(|i, j| self.0[i][j].clone() * s.clone())
    }

    /// Determinant.
    pub fn det(&self) -> T {
        let m = &self.0;
        let c0 = m[1][1].clone() * m[2][2].clone() - m[1][2].clone() * m[2][1].clone();
        let c1 = m[1][0].clone() * m[2][2].clone() - m[1][2].clone() * m[2][0].clone();
        let c2 = m[1][0].clone() * m[2][1].clone() - m[1][1].clone() * m[2][0].clone();
        m[0][0].clone() * c0 - m[0][1].clone() * c1 + m[0][2].clone() * c2
    }

    /// Adjugate (transpose of the cofactor matrix), so `A·adj(A) = det(A)·I`.
    pub fn adjugate(&self) -> Self {
        let m = &self.0;
        let cof = |r: usize, c: usize| -> T {
            let rows: Vec<usize> = (0..3).filter(|&k| k != r).collect();
            let cols: Vec<usize> = (0..3).filter(|&k| k != c).collect();
            let minor = m[rows[0]][cols[0]].clone() * m[rows[1]][cols[1]].clone()
                - m[rows[0]][cols[1]].clone() * m[rows[1]][cols[0]].clone();
            if (r + c).is_multiple_of(2) {
                minor
            } else {
                -minor
            }
        };
        Self::from_fn(|i, j| cof(j, i))
    }

    /// Inverse, or `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let d = self.det();
        if d.is_zero() {
            return None;
        }
        let inv = T::one() / d;
        Some(self.adjugate().scale(&inv))
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &Vec3<T>) -> Vec3<T> {
        let row = |i: usize| {
            self.0[i][0].clone() * v[0].clone()
                + self.0[i][1].clone() * v[1].clone()
                + self.0[i][2].clone() * v[2].clone()
        };
        [row(0), row(1), row(2)]
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec3<T> {
        [self.0[0][j].clone(), self.0[1][j].clone(), self.0[2][j].clone()]
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(c: [Vec3<T>; 3]) -> Self {
        Self::from_fn(|i, j| c[j][i].clone())
    }

    /// Commutator `AB − BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// True when every entry is zero.
    pub fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|x| x.is_zero())
    }

    /// True when every entry strictly below the diagonal vanishes.
    pub fn is_upper_triangular(&self) -> bool {
        self.0[1][0].is_zero() && self.0[2][0].is_zero() && self.0[2][1].is_zero()
    }

    /// Applies `f` entrywise.
    pub fn map<U: Field>(&self, mut f: impl FnMut(&T) -> U) -> Mat3<U> {
        Mat3::from_fn(|i, j| f(&self.0[i][j]))
    }
}

impl<'a, T: Field> Mul for &'a Mat3<T> {
    type Output = Mat3<T>;
    fn mul(self, rhs: &'a Mat3<T>) -> Mat3<T> {
        Mat3::from_fn(|i, j| {
            self.0[i][0].clone() * rhs.0[0][j].clone()
                + self.0[i][1].clone() * rhs.0[1][j].clone()
                + self.0[i][2].clone() * rhs.0[2][j].clone()
        })
    }
}

impl<'a, T: Field> Add for &'a Mat3<T> {
    type Output = Mat3<T>;
    fn add(self, rhs: &'a Mat3<T>) -> Mat3<T> {
        Mat3::from_fn(|i, j| self.0[i][j].clone() + rhs.0[i][j].clone())
    }
}

impl<'a, T: Field> Sub for &'a Mat3<T> {
    type Output = Mat3<T>;
    fn sub(self, rhs: &'a Mat3<T>) -> Mat3<T> {
        Mat3::from_fn(|i, j| self.0[i][j].clone() - rhs.0[i][j].clone())
    }
}

impl<T: Field> Neg for &Mat3<T> {
    type Output = Mat3<T>;
    fn neg(self) -> Mat3<T> {
        Mat3::from_fn(|i, j| -self.0[i][j].clone())
    }
}

impl Mat3<Scalar> {
    /// Builds an exact matrix from integer entries.
    pub fn from_ints(m: [[i64; 3]; 3]) -> Self {
        Self::from_fn(|i, j| scalar::int(m[i][j]))
    }

    /// Converts to floating point.
    pub fn to_f64(&self) -> Mat3<f64> {
        Mat3::from_fn(|i, j| scalar::to_f64(&self.0[i][j]))
    }
}

impl Mat3<f64> {
    /// Frobenius norm.
    pub fn frobenius(&self) -> f64 {
        self.0.iter().flatten().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Maximum absolute row sum (the induced ∞-norm).
    pub fn norm_inf(&self) -> f64 {
        self.0
            .iter()
            .map(|r| r.iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }
}

impl<T: Field + fmt::Display> fmt::Display for Mat3<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[{}, {}, {}]", row[0], row[1], row[2])?;
        }
        write!(f, "]")
    }
}

/// Dot product.
pub fn dot<T: Field>(a: &Vec3<T>, b: &Vec3<T>) -> T {
    a[0].clone() * b[0].clone() + a[1].clone() * b[1].clone() + a[2].clone() * b[2].clone()
}

/// Cross product.
pub fn cross<T: Field>(a: &Vec3<T>, b: &Vec3<T>) -> Vec3<T> {
    [
        a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone(),
        a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone(),
        a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone(),
    ]
}

/// Determinant of the matrix with columns `a, b, c`.
pub fn det3<T: Field>(a: &Vec3<T>, b: &Vec3<T>, c: &Vec3<T>) -> T {
    dot(a, &cross(b, c))
}

/// True when all entries vanish.
pub fn is_zero_vec<T: Field>(v: &Vec3<T>) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Exact integer 3-vector.
pub fn ivec(v: [i64; 3]) -> Vec3<Scalar> {
    [scalar::int(v[0]), scalar::int(v[1]), scalar::int(v[2])]
}

/// Euclidean norm of a float 3-vector.
pub fn norm_f64(v: &Vec3<f64>) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}
