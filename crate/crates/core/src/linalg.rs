//! Dense exact linear algebra over [`Scalar`].
//!
//! Everything the oracles need reduces to Gauss–Jordan elimination on small
//! rational matrices: null spaces, particular solutions, ranks and span
//! membership.

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// A dense row-major rational matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl QMatrix {
    /// Zero matrix of the given shape.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    /// Builds a matrix from its rows. All rows must have the same length.
    pub fn from_rows(rows: &[Vec<Scalar>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = QMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<Scalar>]) -> Self {
        let rows = cols.first().map_or(0, Vec::len);
        let mut m = QMatrix::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Scalar::one());
        }
        m
    }

    /// Number of rows.
    pub fn nrows(&self) -> usize {
        self.rows
    }

    /// Number of columns.
    pub fn ncols(&self) -> usize {
        self.cols
    }

    /// Entry `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    /// Sets entry `(i, j)`.
    pub fn set(&mut self, i: usize, j: usize, x: Scalar) {
        self.data[i * self.cols + j] = x;
    }

    /// Row `i` as a vector.
    pub fn row(&self, i: usize) -> Vec<Scalar> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    /// Column `j` as a vector.
    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    /// Appends the rows of `other` below `self`.
    pub fn stack(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.cols, "column mismatch");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        QMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    /// Matrix product.
    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        let mut out = QMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// Matrix–vector product.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "shape mismatch");
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !v[j].is_zero())
                    .fold(Scalar::zero(), |acc, j| acc + self.get(i, j) * &v[j])
            })
            .collect()
    }

    /// Transpose.
    pub fn transpose(&self) -> QMatrix {
        let mut out = QMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    /// True when every entry vanishes.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Reduced row-echelon form and the list of pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let v = m.get(i, j) - &f * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    /// Rank.
    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the right null space `{x : Ax = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut x = vec![Scalar::zero(); self.cols];
                x[f] = Scalar::one();
                for (row, &p) in pivots.iter().enumerate() {
                    x[p] = -r.get(row, f).clone();
                }
                x
            })
            .collect()
    }

    /// A particular solution of `Ax = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[Scalar]) -> Option<Vec<Scalar>> {
        assert_eq!(self.rows, b.len(), "shape mismatch");
        let aug_cols: Vec<Vec<Scalar>> = (0..self.cols)
            .map(|j| self.column(j))
            .chain(std::iter::once(b.to_vec()))
            .collect();
        let aug = QMatrix::from_columns(&aug_cols);
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Scalar::zero(); self.cols];
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        assert_eq!(self.rows, self.cols, "square matrix expected");
        let n = self.rows;
        let cols: Vec<Vec<Scalar>> = (0..n)
            .map(|j| self.column(j))
            .chain((0..n).map(|j| QMatrix::identity(n).column(j)))
            .collect();
        let (r, pivots) = QMatrix::from_columns(&cols).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut out = QMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(out)
    }
}

/// Rank of a family of vectors of equal length.
pub fn rank_of(vectors: &[Vec<Scalar>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    QMatrix::from_rows(vectors).rank()
}

/// Reduces a spanning family to a canonical basis (the nonzero rows of its
/// reduced row-echelon form). Two families span the same space iff their
/// canonical bases are equal.
pub fn canonical_basis(vectors: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = QMatrix::from_rows(vectors).rref();
    (0..pivots.len()).map(|i| r.row(i)).collect()
}

/// True when `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Scalar>], v: &[Scalar]) -> bool {
    if v.iter().all(Zero::is_zero) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    QMatrix::from_columns(basis).solve(v).is_some()
}

/// Coordinates of `v` in the (independent) family `basis`, if `v` is in the span.
pub fn coordinates(basis: &[Vec<Scalar>], v: &[Scalar]) -> Option<Vec<Scalar>> {
    if basis.is_empty() {
        return v.iter().all(Zero::is_zero).then(Vec::new);
    }
    QMatrix::from_columns(basis).solve(v)
}

/// Basis of the intersection of two subspaces given by bases.
pub fn intersect(a: &[Vec<Scalar>], b: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // Solve Σ xᵢ aᵢ − Σ yⱼ bⱼ = 0 and map the x-part back.
    let cols: Vec<Vec<Scalar>> = a
        .iter()
        .cloned()
        .chain(b.iter().map(|v| v.iter().map(|x| -x.clone()).collect()))
        .collect();
    let ns = QMatrix::from_columns(&cols).nullspace();
    let n = a[0].len();
    let vecs: Vec<Vec<Scalar>> = ns
        .iter()
        .map(|sol| {
            (0..n)
                .map(|k| {
                    a.iter()
                        .zip(sol.iter())
                        .fold(Scalar::zero(), |acc, (v, c)| acc + c * &v[k])
                })
                .collect()
        })
        .collect();
    canonical_basis(&vecs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn row(v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn nullspace_of_rank_one_matrix() {
        let m = QMatrix::from_rows(&[row(&[1, 2, 3]), row(&[2, 4, 6])]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(m.apply(v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_detects_inconsistency() {
        let m = QMatrix::from_rows(&[row(&[1, 1]), row(&[1, 1])]);
        assert!(m.solve(&row(&[1, 2])).is_none());
        let x = m.solve(&row(&[3, 3])).unwrap();
        assert_eq!(m.apply(&x), row(&[3, 3]));
    }

    #[test]
    fn inverse_round_trip() {
        let m = QMatrix::from_rows(&[row(&[2, 1, 0]), row(&[0, 1, 4]), row(&[1, 0, 1])]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), QMatrix::identity(3));
        let sing = QMatrix::from_rows(&[row(&[1, 2]), row(&[2, 4])]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn intersection_of_planes_is_a_line() {
        let a = vec![row(&[1, 0, 0]), row(&[0, 1, 0])];
        let b = vec![row(&[0, 1, 0]), row(&[0, 0, 1])];
        assert_eq!(intersect(&a, &b), vec![row(&[0, 1, 0])]);
    }
}
