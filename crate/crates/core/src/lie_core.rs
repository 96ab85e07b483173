//! Exact kernel for gl(3) and sl(3).
//!
//! Brackets, the two-step grading of sl(3), the adjoint action of the Borel
//! subgroup `P_min` of upper-triangular matrices on `sl(3)/p_min`, linear
//! algebra on subalgebras (closure, centralizers, normalizers), matrix
//! exponentials on the float path, and the Cartan involution `v ↦ −vᵀ`.
//!
//! Conventions. `Eij` denotes the elementary matrix with a one in row `i`,
//! column `j` (1-based in names, 0-based in code). The distinguished basis
//! of sl(3) is
//!
//! | name | matrix | grade |
//! |------|--------|-------|
//! | `e_0` | `E31` | −2 |
//! | `e_α` | `E32` | −1 |
//! | `e_β` | `E21` | −1 |
//! | `e_1` | `diag(1,−1,0)` | 0 |
//! | `e_2` | `diag(0,1,−1)` | 0 |
//! | `e^α` | `E23` | 1 |
//! | `e^β` | `E12` | 1 |
//! | `e^0` | `E13` | 2 |
//!
//! The entry `(i, j)` of a matrix has grade `j − i`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use nalgebra::DMatrix;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg::{self, QMatrix};
use crate::matrix::Mat3;
use crate::scalar::{self, Scalar};

/// An element of gl(3) with exact rational entries.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LieVec(pub Mat3<Scalar>);

impl LieVec {
    /// Wraps a matrix.
    pub fn new(m: Mat3<Scalar>) -> Self {
        LieVec(m)
    }

    /// Builds an element from integer entries.
    pub fn from_ints(m: [[i64; 3]; 3]) -> Self {
        LieVec(Mat3::from_ints(m))
    }

    /// The zero element.
    pub fn zero() -> Self {
        LieVec(Mat3::zero())
    }

    /// The elementary matrix `E(i+1)(j+1)` (0-based arguments).
    pub fn unit(i: usize, j: usize) -> Self {
        LieVec(Mat3::unit(i, j))
    }

    /// Diagonal element.
    pub fn diag(d: [Scalar; 3]) -> Self {
        LieVec(Mat3::diag(d))
    }

    /// Diagonal element with integer entries.
    pub fn diag_ints(d: [i64; 3]) -> Self {
        LieVec(Mat3::diag([scalar::int(d[0]), scalar::int(d[1]), scalar::int(d[2])]))
    }

    /// Underlying matrix.
    pub fn matrix(&self) -> &Mat3<Scalar> {
        &self.0
    }

    /// Entry at 0-based `(i, j)`.
    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        self.0.at(i, j)
    }

    /// Trace.
    pub fn trace(&self) -> Scalar {
        self.0.trace()
    }

    /// True when the trace vanishes exactly.
    pub fn is_traceless(&self) -> bool {
        self.trace().is_zero()
    }

    /// True when all entries vanish.
    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &Scalar) -> Self {
        LieVec(self.0.scale(s))
    }

    /// Transpose.
    pub fn transpose(&self) -> Self {
        LieVec(self.0.transpose())
    }

    /// The nine entries in row-major order (coordinates on gl(3)).
    pub fn flat(&self) -> Vec<Scalar> {
        self.0 .0.iter().flatten().cloned().collect()
    }

    /// Inverse of [`LieVec::flat`].
    pub fn from_flat(v: &[Scalar]) -> Self {
        assert_eq!(v.len(), 9, "nine entries expected");
        LieVec(Mat3::from_fn(|i, j| v[3 * i + j].clone()))
    }

    /// Coordinates in the distinguished basis `(e_0, e_α, e_β, e_1, e_2, e^α, e^β, e^0)`.
    pub fn coords(&self) -> Result<[Scalar; 8]> {
        if !self.is_traceless() {
            return Err(Error::NotTraceless(self.trace().to_string()));
        }
        let m = &self.0;
        let d1 = m.at(0, 0).clone();
        let c2 = -m.at(2, 2).clone();
        Ok([
            m.at(2, 0).clone(),
            m.at(2, 1).clone(),
            m.at(1, 0).clone(),
            d1,
            c2,
            m.at(1, 2).clone(),
            m.at(0, 1).clone(),
            m.at(0, 2).clone(),
        ])
    }

    /// Element with the given coordinates in the distinguished basis.
    pub fn from_coords(c: &[Scalar]) -> Self {
        assert_eq!(c.len(), 8, "eight coordinates expected");
        basis_b()
            .iter()
            .zip(c)
            .fold(LieVec::zero(), |acc, (b, x)| &acc + &b.scale(x))
    }

    /// Float copy of the matrix.
    pub fn to_f64(&self) -> Mat3<f64> {
        self.0.to_f64()
    }
}

impl<'a> Add for &'a LieVec {
    type Output = LieVec;
    fn add(self, rhs: &'a LieVec) -> LieVec {
        LieVec(&self.0 + &rhs.0)
    }
}

impl<'a> Sub for &'a LieVec {
    type Output = LieVec;
    fn sub(self, rhs: &'a LieVec) -> LieVec {
        LieVec(&self.0 - &rhs.0)
    }
}

impl Neg for &LieVec {
    type Output = LieVec;
    fn neg(self) -> LieVec {
        LieVec(-&self.0)
    }
}

impl fmt::Display for LieVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Lie bracket `[u, v] = uv − vu`.
pub fn bracket(u: &LieVec, v: &LieVec) -> LieVec {
    LieVec(u.0.commutator(&v.0))
}

/// `e_0 = E31`.
pub fn e_0() -> LieVec {
    LieVec::unit(2, 0)
}
/// `e_α = E32`.
pub fn e_alpha() -> LieVec {
    LieVec::unit(2, 1)
}
/// `e_β = E21`.
pub fn e_beta() -> LieVec {
    LieVec::unit(1, 0)
}
/// `e_1 = diag(1, −1, 0)`.
pub fn e_1() -> LieVec {
    LieVec::diag_ints([1, -1, 0])
}
/// `e_2 = diag(0, 1, −1)`.
pub fn e_2() -> LieVec {
    LieVec::diag_ints([0, 1, -1])
}
/// `e^α = E23`.
pub fn e_up_alpha() -> LieVec {
    LieVec::unit(1, 2)
}
/// `e^β = E12`.
pub fn e_up_beta() -> LieVec {
    LieVec::unit(0, 1)
}
/// `e^0 = E13`.
pub fn e_up_0() -> LieVec {
    LieVec::unit(0, 2)
}

/// The distinguished basis `(e_0, e_α, e_β, e_1, e_2, e^α, e^β, e^0)` of sl(3).
pub fn basis_b() -> [LieVec; 8] {
    [
        e_0(),
        e_alpha(),
        e_beta(),
        e_1(),
        e_2(),
        e_up_alpha(),
        e_up_beta(),
        e_up_0(),
    ]
}

/// Display names of [`basis_b`], in order.
pub const BASIS_B_NAMES: [&str; 8] = ["e_0", "e_α", "e_β", "e_1", "e_2", "e^α", "e^β", "e^0"];

/// Grade of each element of [`basis_b`], in order.
pub const BASIS_B_GRADES: [i32; 8] = [-2, -1, -1, 0, 0, 1, 1, 2];

/// Heisenberg generator `X = E12`.
pub fn heis_x() -> LieVec {
    LieVec::unit(0, 1)
}
/// Heisenberg generator `Y = E23`.
pub fn heis_y() -> LieVec {
    LieVec::unit(1, 2)
}
/// Heisenberg central generator `Z = E13`.
pub fn heis_z() -> LieVec {
    LieVec::unit(0, 2)
}

/// sl(2) generator `E = E12` in the upper-left block.
pub fn sl2_e() -> LieVec {
    LieVec::unit(0, 1)
}
/// sl(2) generator `F = E21` in the upper-left block.
pub fn sl2_f() -> LieVec {
    LieVec::unit(1, 0)
}
/// sl(2) generator `H₀ = diag(1, −1, 0)`.
pub fn sl2_h() -> LieVec {
    LieVec::diag_ints([1, -1, 0])
}

/// Grade of the 0-based entry position `(i, j)`.
pub fn entry_grade(i: usize, j: usize) -> i32 {
    j as i32 - i as i32
}

/// Splits a traceless element into its homogeneous components.
///
/// The returned map has one (possibly zero) component for each grade in
/// `−2..=2`; component `k` is supported on the entries of grade `k`.
pub fn grade_decompose(v: &LieVec) -> Result<BTreeMap<i32, LieVec>> {
    if !v.is_traceless() {
        return Err(Error::NotTraceless(v.trace().to_string()));
    }
    Ok((-2..=2)
        .map(|k| {
            let comp = Mat3::from_fn(|i, j| {
                if entry_grade(i, j) == k {
                    v.at(i, j).clone()
                } else {
                    Scalar::zero()
                }
            });
            (k, LieVec(comp))
        })
        .collect())
}

/// The grades on which a traceless element has nonzero components.
pub fn support_grades(v: &LieVec) -> Result<Vec<i32>> {
    Ok(grade_decompose(v)?
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, _)| k)
        .collect())
}

/// Filtration degree: the smallest grade carrying a nonzero component
/// (`None` for zero). `v ∈ sl3^i` iff this is `≥ i`.
pub fn filtration_degree(v: &LieVec) -> Result<Option<i32>> {
    Ok(support_grades(v)?.first().copied())
}

/// Cartan involution `θ(v) = −vᵀ`.
pub fn theta_involution(v: &LieVec) -> LieVec {
    -&v.transpose()
}

/// A projective transformation: an invertible 3×3 rational matrix up to scale,
/// stored in normal form (the first nonzero entry in row-major order is `1`).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElem(Mat3<Scalar>);

impl GroupElem {
    /// Normalizes an invertible matrix. Fails when singular.
    pub fn new(m: Mat3<Scalar>) -> Result<Self> {
        if m.det().is_zero() {
            return Err(Error::Singular);
        }
        let lead = m
            .0
            .iter()
            .flatten()
            .find(|x| !x.is_zero())
            .cloned()
            .expect("invertible matrix has a nonzero entry");
        Ok(GroupElem(m.scale(&lead.recip())))
    }

    /// Builds from integer entries.
    pub fn from_ints(m: [[i64; 3]; 3]) -> Result<Self> {
        GroupElem::new(Mat3::from_ints(m))
    }

    /// The identity.
    pub fn identity() -> Self {
        GroupElem(Mat3::identity())
    }

    /// Normalized representative.
    pub fn matrix(&self) -> &Mat3<Scalar> {
        &self.0
    }

    /// Group product.
    pub fn mul(&self, other: &GroupElem) -> GroupElem {
        GroupElem::new(&self.0 * &other.0).expect("product of invertibles is invertible")
    }

    /// Group inverse.
    pub fn inverse(&self) -> GroupElem {
        GroupElem::new(self.0.inverse().expect("invertible")).expect("invertible")
    }

    /// Adjoint action `Ad(g)v = g v g⁻¹` (independent of the representative).
    pub fn ad(&self, v: &LieVec) -> LieVec {
        self.ad_map()(v)
    }

    /// `Ad(g)` as a closure, inverting the representative once.
    pub fn ad_map(&self) -> impl Fn(&LieVec) -> LieVec + '_ {
        let inv = self.0.inverse().expect("invertible");
        move |v| LieVec(&(&self.0 * &v.0) * &inv)
    }

    /// True when upper-triangular, i.e. an element of `P_min`.
    pub fn is_upper_triangular(&self) -> bool {
        self.0.is_upper_triangular()
    }

    /// The element of `P_min` with diagonal `(a, a⁻¹b⁻¹, b)` and
    /// off-diagonal entries `x = (1,2)`, `y = (2,3)`, `z = (1,3)`.
    pub fn pmin(a: &Scalar, b: &Scalar, x: &Scalar, y: &Scalar, z: &Scalar) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::Singular);
        }
        let mid = (a * b).recip();
        let zero = Scalar::zero;
        GroupElem::new(Mat3([
            [a.clone(), x.clone(), z.clone()],
            [zero(), mid, y.clone()],
            [zero(), zero(), b.clone()],
        ]))
    }

    /// Float copy of the normalized representative.
    pub fn to_f64(&self) -> Mat3<f64> {
        self.0.to_f64()
    }
}

impl fmt::Display for GroupElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Group involution `Θ(g) = (gᵀ)⁻¹`.
#[allow(non_snake_case)]
pub fn Theta(g: &GroupElem) -> GroupElem {
    GroupElem::new(g.matrix().transpose().inverse().expect("invertible")).expect("invertible")
}

/// Coordinates of the class of `v` in `sl(3)/p_min` in the basis
/// `(ē_α, ē_β, ē_0)`: the entries at `(3,2)`, `(2,1)` and `(3,1)`.
pub fn quotient_coords(v: &LieVec) -> [Scalar; 3] {
    [v.at(2, 1).clone(), v.at(1, 0).clone(), v.at(2, 0).clone()]
}

/// Matrix of the induced adjoint action of `p ∈ P_min` on `sl(3)/p_min` in
/// the basis `(ē_α, ē_β, ē_0)`, in closed form.
///
/// For the unimodular representative with diagonal `(a, a⁻¹b⁻¹, b)` and
/// entries `x = (1,2)`, `y = (2,3)` this is
///
/// ```text
/// [ a·b²    0        −b²·x  ]
/// [ 0       a⁻²·b⁻¹   a⁻¹·y ]
/// [ 0       0         a⁻¹·b ]
/// ```
///
/// Every entry is homogeneous of degree zero in the representative, so it is
/// evaluated without extracting a cube root of the determinant.
pub fn quotient_adjoint(p: &GroupElem) -> Result<Mat3<Scalar>> {
    if !p.is_upper_triangular() {
        return Err(Error::NotUpperTriangular);
    }
    let m = p.matrix();
    let (p11, p12, p22, p23, p33) = (m.at(0, 0), m.at(0, 1), m.at(1, 1), m.at(1, 2), m.at(2, 2));
    let det = m.det();
    let z = Scalar::zero;
    Ok(Mat3([
        [p11 * p33 * p33 / &det, z(), -(p33 * p33 * p12) / &det],
        [z(), p22 / p11, p23 / p11],
        [z(), z(), p33 / p11],
    ]))
}

/// The same matrix as [`quotient_adjoint`] computed by brute force: conjugate
/// each basis representative and read off its class modulo `p_min`.
pub fn quotient_adjoint_bruteforce(p: &GroupElem) -> Result<Mat3<Scalar>> {
    if !p.is_upper_triangular() {
        return Err(Error::NotUpperTriangular);
    }
    let ad = p.ad_map();
    let cols = [e_alpha(), e_beta(), e_0()].map(|e| quotient_coords(&ad(&e)));
    Ok(Mat3::from_columns(cols))
}

/// Matrix of `ad(v)` on sl(3) in the distinguished basis (8×8).
pub fn ad_matrix(v: &LieVec) -> Result<QMatrix> {
    v.coords()?;
    let cols: Vec<Vec<Scalar>> = basis_b()
        .iter()
        .map(|b| bracket(v, b).coords().expect("bracket is traceless").to_vec())
        .collect();
    Ok(QMatrix::from_columns(&cols))
}

/// Matrix of `Ad(g)` on sl(3) in the distinguished basis (8×8), exactly.
pub fn adjoint_matrix(g: &GroupElem) -> QMatrix {
    let cols: Vec<Vec<Scalar>> = basis_b()
        .iter()
        .map(|b| g.ad(b).coords().expect("conjugate is traceless").to_vec())
        .collect();
    QMatrix::from_columns(&cols)
}

/// A subalgebra of gl(3) given by a linearly independent basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subalgebra {
    basis: Vec<LieVec>,
}

impl Subalgebra {
    /// Wraps an independent family. Fails when the family is dependent.
    /// Closure under the bracket is *not* enforced; see [`is_subalgebra`].
    pub fn new(basis: Vec<LieVec>) -> Result<Self> {
        let flats: Vec<Vec<Scalar>> = basis.iter().map(LieVec::flat).collect();
        if linalg::rank_of(&flats) != basis.len() {
            return Err(Error::InvalidArgument("basis is linearly dependent".into()));
        }
        Ok(Subalgebra { basis })
    }

    /// The span of an arbitrary family, with a canonical basis.
    pub fn span(vectors: &[LieVec]) -> Self {
        let flats: Vec<Vec<Scalar>> = vectors.iter().map(LieVec::flat).collect();
        Subalgebra {
            basis: linalg::canonical_basis(&flats)
                .iter()
                .map(|f| LieVec::from_flat(f))
                .collect(),
        }
    }

    /// All of sl(3).
    pub fn sl3() -> Self {
        Subalgebra {
            basis: basis_b().to_vec(),
        }
    }

    /// Basis vectors.
    pub fn basis(&self) -> &[LieVec] {
        &self.basis
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// True when `v` lies in the span.
    pub fn contains(&self, v: &LieVec) -> bool {
        let flats: Vec<Vec<Scalar>> = self.basis.iter().map(LieVec::flat).collect();
        linalg::in_span(&flats, &v.flat())
    }

    /// True when both span the same subspace.
    pub fn same_space(&self, other: &Subalgebra) -> bool {
        self.canonical() == other.canonical()
    }

    /// Canonical basis of the span (reduced row-echelon rows of the flat entries).
    pub fn canonical(&self) -> Vec<Vec<Scalar>> {
        let flats: Vec<Vec<Scalar>> = self.basis.iter().map(LieVec::flat).collect();
        linalg::canonical_basis(&flats)
    }

    /// True when the span is closed under the bracket.
    pub fn is_closed(&self) -> bool {
        is_subalgebra(&self.basis)
    }

    /// Coordinates of `v` in this basis, if `v` lies in the span.
    pub fn coordinates(&self, v: &LieVec) -> Option<Vec<Scalar>> {
        let flats: Vec<Vec<Scalar>> = self.basis.iter().map(LieVec::flat).collect();
        linalg::coordinates(&flats, &v.flat())
    }

    /// Image under the Cartan involution.
    pub fn theta(&self) -> Subalgebra {
        Subalgebra::span(&self.basis.iter().map(theta_involution).collect::<Vec<_>>())
    }
}

/// True when `basis` is linearly independent and its span is closed under the bracket.
pub fn is_subalgebra(basis: &[LieVec]) -> bool {
    let flats: Vec<Vec<Scalar>> = basis.iter().map(LieVec::flat).collect();
    if linalg::rank_of(&flats) != basis.len() {
        return false;
    }
    basis.iter().enumerate().all(|(i, u)| {
        basis[i + 1..]
            .iter()
            .all(|v| linalg::in_span(&flats, &bracket(u, v).flat()))
    })
}

/// Linear map `v ↦ ([v, s_1], …, [v, s_k])` from sl(3) (distinguished
/// coordinates) to the stacked ℬ-coordinates of the brackets.
fn bracket_system(s: &Subalgebra) -> Vec<QMatrix> {
    s.basis
        .iter()
        .map(|b| {
            let cols: Vec<Vec<Scalar>> = basis_b()
                .iter()
                .map(|e| bracket(e, b).flat())
                .collect();
            QMatrix::from_columns(&cols)
        })
        .collect()
}

/// Centralizer `{v ∈ sl(3) : [v, s] = 0}`.
pub fn centralizer(s: &Subalgebra) -> Subalgebra {
    let blocks = bracket_system(s);
    let Some(first) = blocks.first() else {
        return Subalgebra::sl3();
    };
    let system = blocks[1..].iter().fold(first.clone(), |acc, m| acc.stack(m));
    let vecs: Vec<LieVec> = system
        .nullspace()
        .iter()
        .map(|c| LieVec::from_coords(c))
        .collect();
    Subalgebra::span(&vecs)
}

/// Normalizer `{v ∈ sl(3) : [v, s] ⊆ s}`.
pub fn normalizer(s: &Subalgebra) -> Subalgebra {
    if s.dim() == 0 {
        return Subalgebra::sl3();
    }
    // Rows of `ann` span the annihilator of s inside gl(3) coordinates.
    let span_rows: Vec<Vec<Scalar>> = s.basis.iter().map(LieVec::flat).collect();
    let ann_rows = QMatrix::from_rows(&span_rows).nullspace();
    if ann_rows.is_empty() {
        return Subalgebra::sl3();
    }
    let ann = QMatrix::from_rows(&ann_rows);
    let blocks: Vec<QMatrix> = bracket_system(s).iter().map(|m| ann.mul(m)).collect();
    let system = blocks[1..].iter().fold(blocks[0].clone(), |acc, m| acc.stack(m));
    let vecs: Vec<LieVec> = system
        .nullspace()
        .iter()
        .map(|c| LieVec::from_coords(c))
        .collect();
    Subalgebra::span(&vecs)
}

/// A projective transformation on the float path, normalized so that the
/// first entry of significant magnitude equals `1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatGroupElem(Mat3<f64>);

impl FloatGroupElem {
    /// Normalizes a float matrix.
    pub fn new(m: Mat3<f64>) -> Self {
        let scale = m.0.iter().flatten().fold(0.0_f64, |a, x| a.max(x.abs()));
        let lead = m
            .0
            .iter()
            .flatten()
            .copied()
            .find(|x| x.abs() > 1e-12 * scale)
            .unwrap_or(1.0);
        FloatGroupElem(m.scale(&(1.0 / lead)))
    }

    /// Normalized representative.
    pub fn matrix(&self) -> &Mat3<f64> {
        &self.0
    }

    /// Frobenius distance between normalized representatives.
    pub fn distance(&self, other: &FloatGroupElem) -> f64 {
        (&self.0 - &other.0).frobenius()
    }
}

/// Taylor order used by [`expm3`] after scaling to norm at most 1/2.
const EXP_TAYLOR_ORDER: usize = 18;

/// Matrix exponential of a float 3×3 matrix by scaling and squaring with a
/// fixed-order Taylor series. The scaled argument has ∞-norm at most 1/2, so
/// the truncation error is below `0.5¹⁹/19! ≈ 2e-23` before squaring.
pub fn expm3(a: &Mat3<f64>) -> Mat3<f64> {
    let norm = a.norm_inf();
    let mut squarings = 0u32;
    let mut s = 1.0;
    while norm * s > 0.5 {
        s *= 0.5;
        squarings += 1;
    }
    let x = a.scale(&s);
    let mut term = Mat3::<f64>::identity();
    let mut sum = Mat3::<f64>::identity();
    for k in 1..=EXP_TAYLOR_ORDER {
        term = (&term * &x).scale(&(1.0 / k as f64));
        sum = &sum + &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Group exponential on the float path.
pub fn exp_group(v: &LieVec) -> FloatGroupElem {
    FloatGroupElem::new(expm3(&v.to_f64()))
}

/// Group exponential of a float matrix.
pub fn exp_group_f64(v: &Mat3<f64>) -> FloatGroupElem {
    FloatGroupElem::new(expm3(v))
}

/// Coordinates of a traceless float matrix in the distinguished basis.
fn coords_f64(m: &Mat3<f64>) -> [f64; 8] {
    [
        m.0[2][0], m.0[2][1], m.0[1][0], m.0[0][0], -m.0[2][2], m.0[1][2], m.0[0][1], m.0[0][2],
    ]
}

/// Float matrix of `Ad(g)` in the distinguished basis.
pub fn adjoint_matrix_f64(g: &Mat3<f64>) -> DMatrix<f64> {
    let inv = g.inverse().expect("invertible");
    let mut out = DMatrix::zeros(8, 8);
    for (j, b) in basis_b().iter().enumerate() {
        let c = coords_f64(&(&(g * &b.to_f64()) * &inv));
        for (i, x) in c.iter().enumerate() {
            out[(i, j)] = *x;
        }
    }
    out
}

/// Float matrix of `ad(v)` in the distinguished basis.
pub fn ad_matrix_f64(v: &Mat3<f64>) -> DMatrix<f64> {
    let mut out = DMatrix::zeros(8, 8);
    for (j, b) in basis_b().iter().enumerate() {
        let c = coords_f64(&v.commutator(&b.to_f64()));
        for (i, x) in c.iter().enumerate() {
            out[(i, j)] = *x;
        }
    }
    out
}

/// Relative defect `‖Ad(exp v) − exp(ad v)‖ / ‖exp(ad v)‖` (Frobenius norms).
///
/// The left side uses [`expm3`] on 3×3 matrices; the right side uses an
/// independent Padé-based exponential of the 8×8 matrix `ad v`.
pub fn ad_exp_defect(v: &LieVec) -> f64 {
    let g = expm3(&v.to_f64());
    let lhs = adjoint_matrix_f64(&g);
    let rhs = ad_matrix_f64(&v.to_f64()).exp();
    (lhs - &rhs).norm() / rhs.norm()
}

/// Exact eigenvalue of `ad(h)` on `v` when `v` is an eigenvector
/// (`[h, v] = c·v`), found by comparing a nonzero entry.
pub fn ad_eigenvalue(h: &LieVec, v: &LieVec) -> Option<Scalar> {
    let w = bracket(h, v);
    let (i, j) = (0..9)
        .map(|k| (k / 3, k % 3))
        .find(|&(i, j)| !v.at(i, j).is_zero())?;
    let c = w.at(i, j) / v.at(i, j);
    (w == v.scale(&c)).then_some(c)
}

/// Sign-insensitive magnitude helper used in residual reporting.
pub fn max_abs_entry(m: &Mat3<Scalar>) -> Scalar {
    m.0.iter()
        .flatten()
        .map(Signed::abs)
        .fold(Scalar::zero(), |a, b| if b > a { b } else { a })
}

/// The identity of gl(3) as a Lie vector.
pub fn identity_vec() -> LieVec {
    LieVec(Mat3::identity())
}

/// True when `v` is a scalar multiple of the identity.
pub fn is_scalar_matrix(v: &LieVec) -> bool {
    let d = v.at(0, 0).clone();
    *v == identity_vec().scale(&d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn heisenberg_bracket() {
        assert_eq!(bracket(&heis_x(), &heis_y()), heis_z());
        assert!(bracket(&heis_x(), &heis_z()).is_zero());
        assert!(bracket(&heis_y(), &heis_z()).is_zero());
    }

    #[test]
    fn sl2_brackets() {
        assert_eq!(bracket(&sl2_e(), &sl2_f()), sl2_h());
        assert_eq!(bracket(&sl2_h(), &sl2_e()), sl2_e().scale(&int(2)));
        assert_eq!(bracket(&sl2_h(), &sl2_f()), sl2_f().scale(&int(-2)));
    }

    #[test]
    fn coordinates_round_trip_on_basis() {
        for (k, b) in basis_b().iter().enumerate() {
            let c = b.coords().unwrap();
            for (i, x) in c.iter().enumerate() {
                assert_eq!(*x, if i == k { int(1) } else { int(0) });
            }
            assert_eq!(&LieVec::from_coords(&c), b);
        }
    }

    #[test]
    fn grades_of_basis() {
        for (b, g) in basis_b().iter().zip(BASIS_B_GRADES) {
            assert_eq!(support_grades(b).unwrap(), vec![g]);
        }
    }

    #[test]
    fn non_traceless_rejected() {
        assert!(grade_decompose(&identity_vec()).is_err());
        assert!(identity_vec().coords().is_err());
    }

    #[test]
    fn normalization_is_projective() {
        let m = Mat3::from_ints([[2, 1, 0], [0, 3, 1], [1, 0, 1]]);
        let g = GroupElem::new(m.clone()).unwrap();
        let h = GroupElem::new(m.scale(&frac(-7, 3))).unwrap();
        assert_eq!(g, h);
        assert_eq!(*g.matrix().at(0, 0), int(1));
        assert!(GroupElem::new(Mat3::zero()).is_err());
    }

    #[test]
    fn quotient_adjoint_rejects_lower_entries() {
        let g = GroupElem::from_ints([[1, 0, 0], [1, 1, 0], [0, 0, 1]]).unwrap();
        assert_eq!(quotient_adjoint(&g), Err(Error::NotUpperTriangular));
    }

    #[test]
    fn quotient_adjoint_of_diagonal() {
        let (a, b) = (int(2), int(3));
        let p = GroupElem::pmin(&a, &b, &int(0), &int(0), &int(0)).unwrap();
        let q = quotient_adjoint(&p).unwrap();
        assert_eq!(q, Mat3::diag([&a * &b * &b, (&a * &a * &b).recip(), &b / &a]));
        assert_eq!(q, quotient_adjoint_bruteforce(&p).unwrap());
    }

    #[test]
    fn exp_of_zero_is_identity() {
        assert_eq!(exp_group(&LieVec::zero()).matrix(), &Mat3::identity());
    }

    #[test]
    fn exp_of_diagonal() {
        let e = expm3(&sl2_h().to_f64());
        assert!((e.0[0][0] - 1f64.exp()).abs() < 1e-14);
        assert!((e.0[1][1] - (-1f64).exp()).abs() < 1e-14);
        assert!((e.0[2][2] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn ad_exp_agreement_on_h0() {
        assert!(ad_exp_defect(&sl2_h()) < 1e-12);
        // Ad(exp(t H₀)) scales e_α = E32 by e^{t·(0 − (−1))}·… = e^{1}·… ; check directly.
        let g = expm3(&sl2_h().to_f64());
        let ad = adjoint_matrix_f64(&g);
        // e_α = E32 has ad(H₀)-eigenvalue 0 − (−1) = 1 on row 3 vs column 2.
        assert!((ad[(1, 1)] - 1f64.exp()).abs() < 1e-12);
        // e_β = E21 has eigenvalue −1 − 1 = −2.
        assert!((ad[(2, 2)] - (-2f64).exp()).abs() < 1e-12);
    }
}
