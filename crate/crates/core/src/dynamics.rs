//! Dynamics of affine automorphisms of the Heisenberg nilmanifold and of
//! time maps in the `SL(2)` frame.
//!
//! Heisenberg points are handled in exponential coordinates `(x, y, z)`,
//! meaning `exp(xX + yY + zZ)`, with group law
//! `(x, y, z)·(x', y', z') = (x + x', y + y', z + z' + (xy' − yx')/2)`.
//! Automorphisms induced by `M ∈ SL(2, Z)` act linearly there, so the
//! derivative cocycle of `L_g ∘ φ_M` in the left-invariant frame is the
//! constant matrix `diag(M, det M)`.
//!
//! The lattice is `Γ = {x, y ∈ Z, 2z ∈ Z}`, with fundamental domain
//! `[0,1)² × [0,1/2)`.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lie_core::{ad_eigenvalue, sl2_e, sl2_f, sl2_h};
use crate::scalar::{self, Scalar};

/// Scalars usable for Heisenberg dynamics: exact rationals or floats.
pub trait DynScalar:
    Clone
    + PartialOrd
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Neg<Output = Self>
    + std::fmt::Debug
{
    /// Conversion from an exact rational.
    fn from_scalar(q: &Scalar) -> Self;
    /// Conversion from an integer.
    fn from_int(n: i64) -> Self;
    /// Largest integer not above `self`.
    fn floor_int(&self) -> Self;
    /// Half of `self`.
    fn half(&self) -> Self;
}

impl DynScalar for f64 {
    fn from_scalar(q: &Scalar) -> Self {
        scalar::to_f64(q)
    }
    fn from_int(n: i64) -> Self {
        n as f64
    }
    fn floor_int(&self) -> Self {
        self.floor()
    }
    fn half(&self) -> Self {
        0.5 * self
    }
}

impl DynScalar for Scalar {
    fn from_scalar(q: &Scalar) -> Self {
        q.clone()
    }
    fn from_int(n: i64) -> Self {
        scalar::int(n)
    }
    fn floor_int(&self) -> Self {
        scalar::floor(self)
    }
    fn half(&self) -> Self {
        self / scalar::int(2)
    }
}

/// A point of `Heis(3)` in exponential coordinates.
pub type NilPoint<T> = [T; 3];

/// Group law in exponential coordinates.
pub fn nil_mul<T: DynScalar>(p: &NilPoint<T>, q: &NilPoint<T>) -> NilPoint<T> {
    let omega = p[0].clone() * q[1].clone() - p[1].clone() * q[0].clone();
    [
        p[0].clone() + q[0].clone(),
        p[1].clone() + q[1].clone(),
        p[2].clone() + q[2].clone() + omega.half(),
    ]
}

/// Inverse in exponential coordinates.
pub fn nil_inv<T: DynScalar>(p: &NilPoint<T>) -> NilPoint<T> {
    [-p[0].clone(), -p[1].clone(), -p[2].clone()]
}

/// The lattice `Γ = {x, y ∈ Z, 2z ∈ Z}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct NilLattice;

impl NilLattice {
    /// Generators `(1,0,0)`, `(0,1,0)`, `(0,0,1/2)`.
    pub fn generators() -> [NilPoint<Scalar>; 3] {
        let (z, o) = (Scalar::zero, || scalar::int(1));
        [[o(), z(), z()], [z(), o(), z()], [z(), z(), scalar::frac(1, 2)]]
    }

    /// The element `(m, n, k/2)`.
    pub fn element(m: i64, n: i64, k: i64) -> NilPoint<Scalar> {
        [scalar::int(m), scalar::int(n), scalar::frac(k, 2)]
    }

    /// Exact membership test.
    pub fn contains(p: &NilPoint<Scalar>) -> bool {
        p[0].is_integer() && p[1].is_integer() && (&p[2] * scalar::int(2)).is_integer()
    }

    /// True when the automorphism induced by the integer matrix `m` maps the
    /// generators of `Γ` into `Γ`.
    pub fn invariant_under(m: &[[i64; 2]; 2]) -> bool {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        NilLattice::generators()
            .iter()
            .all(|g| NilLattice::contains(&apply_linear(m, det, g)))
    }
}

/// `φ_M(x, y, z) = (M(x, y), det(M)·z)` in exponential coordinates.
fn apply_linear<T: DynScalar>(m: &[[i64; 2]; 2], det: i64, p: &NilPoint<T>) -> NilPoint<T> {
    let c = |k: i64| T::from_int(k);
    [
        c(m[0][0]) * p[0].clone() + c(m[0][1]) * p[1].clone(),
        c(m[1][0]) * p[0].clone() + c(m[1][1]) * p[1].clone(),
        c(det) * p[2].clone(),
    ]
}

/// Reduces `p` to the fundamental domain: returns `(γ·p, γ)` with `γ ∈ Γ`,
/// `γ·p ∈ [0,1)² × [0,1/2)`.
pub fn reduce<T: DynScalar>(p: &NilPoint<T>) -> (NilPoint<T>, NilPoint<T>) {
    let zero = T::from_int(0);
    let one = T::from_int(1);
    let mut m = -p[0].floor_int();
    let mut n = -p[1].floor_int();
    // Float rounding can land exactly on 1; shift once more in that case.
    if p[0].clone() + m.clone() >= one {
        m = m - one.clone();
    }
    if p[1].clone() + n.clone() >= one {
        n = n - one.clone();
    }
    let shifted = nil_mul(&[m.clone(), n.clone(), zero.clone()], p);
    let two_z = shifted[2].clone() + shifted[2].clone();
    let mut k = -two_z.floor_int();
    if two_z + k.clone() >= one {
        k = k - one.clone();
    }
    let gamma = [m, n, k.half()];
    let rep = [shifted[0].clone(), shifted[1].clone(), shifted[2].clone() + gamma[2].clone()];
    (rep, gamma)
}

/// An affine automorphism `L_g ∘ φ_M` of `Heis(3)` descending to `Γ\Heis(3)`.
#[derive(Clone, PartialEq, Debug)]
pub struct NilMap {
    m: [[i64; 2]; 2],
    g: NilPoint<Scalar>,
}

impl NilMap {
    /// Builds the map; requires `det M = 1` and `g` normalizing `Γ`
    /// (`2x_g, 2y_g ∈ Z`).
    pub fn new(m: [[i64; 2]; 2], g: NilPoint<Scalar>) -> Result<Self> {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        if det != 1 {
            return Err(Error::InvalidArgument(format!("linear part has determinant {det}, expected 1")));
        }
        let two = scalar::int(2);
        if !(&g[0] * &two).is_integer() || !(&g[1] * &two).is_integer() {
            return Err(Error::Membership("translation does not normalize the lattice".into()));
        }
        Ok(NilMap { m, g })
    }

    /// Parses four comma-separated integers `a,b,c,d` as `[[a,b],[c,d]]`.
    pub fn parse_matrix(s: &str) -> Result<[[i64; 2]; 2]> {
        let v: Vec<i64> = s
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidArgument(format!("matrix entries: {e}")))?;
        match v.as_slice() {
            [a, b, c, d] => Ok([[*a, *b], [*c, *d]]),
            _ => Err(Error::InvalidArgument("matrix needs four entries".into())),
        }
    }

    /// Linear part.
    pub fn matrix(&self) -> &[[i64; 2]; 2] {
        &self.m
    }

    /// Translation part (exponential coordinates).
    pub fn translation(&self) -> &NilPoint<Scalar> {
        &self.g
    }

    /// `g·φ_M(p)` on `Heis(3)`.
    pub fn apply<T: DynScalar>(&self, p: &NilPoint<T>) -> NilPoint<T> {
        let g = [0, 1, 2].map(|i| T::from_scalar(&self.g[i]));
        nil_mul(&g, &apply_linear(&self.m, 1, p))
    }

    /// One step on the quotient: `reduce(g·φ_M(p))`, with the deck element used.
    pub fn step<T: DynScalar>(&self, p: &NilPoint<T>) -> (NilPoint<T>, NilPoint<T>) {
        reduce(&self.apply(p))
    }

    /// Eigen normal form of the linear part.
    pub fn normal_form(&self) -> Result<NormalForm> {
        normal_form(&self.m)
    }
}

/// Orbit of `p` under the quotient map, starting with `reduce(p)`.
pub fn iterate<T: DynScalar>(f: &NilMap, p: &NilPoint<T>, n: usize) -> Vec<NilPoint<T>> {
    let mut out = Vec::with_capacity(n + 1);
    let mut cur = reduce(p).0;
    out.push(cur.clone());
    for _ in 0..n {
        cur = f.step(&cur).0;
        out.push(cur.clone());
    }
    out
}

/// Diagonalization of a 2×2 integer matrix with real eigenvalues.
#[derive(Clone, PartialEq, Debug)]
pub struct NormalForm {
    /// Eigenvalue of larger modulus.
    pub lambda_u: f64,
    /// Eigenvalue of smaller modulus.
    pub lambda_s: f64,
    /// Unit eigenvector for `lambda_u`.
    pub v_u: [f64; 2],
    /// Unit eigenvector for `lambda_s`.
    pub v_s: [f64; 2],
    /// `‖P⁻¹MP − diag(λ_u, λ_s)‖_max` for `P = [v_u | v_s]`.
    pub residual: f64,
}

impl NormalForm {
    /// Dual covectors `(ℓ_u, ℓ_s)`: rows of `P⁻¹`.
    pub fn dual(&self) -> ([f64; 2], [f64; 2]) {
        let [a, c] = self.v_u;
        let [b, d] = self.v_s;
        let det = a * d - b * c;
        ([d / det, -b / det], [-c / det, a / det])
    }

    /// True when neither eigenvalue has modulus one.
    pub fn is_hyperbolic(&self) -> bool {
        (self.lambda_u.abs() - 1.0).abs() > 1e-12 && (self.lambda_s.abs() - 1.0).abs() > 1e-12
    }
}

/// Residual gate on the eigen-decomposition.
pub const NORMAL_FORM_GATE: f64 = 1e-10;

fn eigenvector(m: &[[f64; 2]; 2], l: f64) -> [f64; 2] {
    // Null vector of M − λI from the better-conditioned row.
    let r0 = [m[0][0] - l, m[0][1]];
    let r1 = [m[1][0], m[1][1] - l];
    let pick = if r0[0].hypot(r0[1]) >= r1[0].hypot(r1[1]) { r0 } else { r1 };
    let v = if pick[0] == 0.0 && pick[1] == 0.0 { [1.0, 0.0] } else { [-pick[1], pick[0]] };
    let n = v[0].hypot(v[1]);
    [v[0] / n, v[1] / n]
}

/// Eigenvalues by the quadratic formula, eigenvectors, and the residual gate.
///
/// The gate applies to distinct eigenvalues. For a repeated eigenvalue the
/// basis is completed orthogonally and the residual reports the size of the
/// Jordan part instead.
///
/// Errors with [`Error::NotHyperbolic`] when the eigenvalues are not real.
pub fn normal_form(m: &[[i64; 2]; 2]) -> Result<NormalForm> {
    let mf = m.map(|r| r.map(|x| x as f64));
    let tr = mf[0][0] + mf[1][1];
    let det = mf[0][0] * mf[1][1] - mf[0][1] * mf[1][0];
    let disc = tr * tr - 4.0 * det;
    if disc < 0.0 {
        return Err(Error::NotHyperbolic);
    }
    let sq = disc.sqrt();
    // Stable quadratic formula: the large root directly, the small one via det.
    let big = if tr >= 0.0 { (tr + sq) / 2.0 } else { (tr - sq) / 2.0 };
    let small = if big != 0.0 { det / big } else { 0.0 };
    let (lambda_u, lambda_s) = if big.abs() >= small.abs() { (big, small) } else { (small, big) };
    let v_u = eigenvector(&mf, lambda_u);
    let mut v_s = eigenvector(&mf, lambda_s);
    if disc == 0.0 {
        // Repeated eigenvalue: complete to a basis.
        v_s = [-v_u[1], v_u[0]];
    }
    let p = [[v_u[0], v_s[0]], [v_u[1], v_s[1]]];
    let pdet = p[0][0] * p[1][1] - p[0][1] * p[1][0];
    let pinv = [[p[1][1] / pdet, -p[0][1] / pdet], [-p[1][0] / pdet, p[0][0] / pdet]];
    let mul = |a: &[[f64; 2]; 2], b: &[[f64; 2]; 2]| {
        [0, 1].map(|i| [0, 1].map(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
    };
    let d = mul(&pinv, &mul(&mf, &p));
    let target = [[lambda_u, 0.0], [0.0, lambda_s]];
    let residual = (0..2)
        .flat_map(|i| (0..2).map(move |j| (i, j)))
        .map(|(i, j)| (d[i][j] - target[i][j]).abs())
        .fold(0.0, f64::max);
    let nf = NormalForm {
        lambda_u,
        lambda_s,
        v_u,
        v_s,
        residual,
    };
    if disc > 0.0 && residual > NORMAL_FORM_GATE {
        return Err(Error::InvalidArgument(format!("eigenbasis residual {residual:e} exceeds gate")));
    }
    Ok(nf)
}

/// The three invariant directions.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Direction {
    /// Stable.
    S,
    /// Unstable.
    U,
    /// Center.
    C,
}

impl Direction {
    /// Parses `s`, `u`, `c`.
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "s" => Ok(Direction::S),
            "u" => Ok(Direction::U),
            "c" => Ok(Direction::C),
            _ => Err(Error::InvalidArgument(format!("unknown direction `{s}`"))),
        }
    }
}

/// Exact per-step log growth along a direction, from the eigenvalues of `M`
/// (center: `log|det M| = 0`).
pub fn tangent_rates(f: &NilMap, dir: Direction) -> Result<f64> {
    let nf = f.normal_form()?;
    Ok(match dir {
        Direction::U => nf.lambda_u.abs().ln(),
        Direction::S => nf.lambda_s.abs().ln(),
        Direction::C => 0.0,
    })
}

/// Left-invariant vector and dual covector (exponential coordinates) of a direction.
fn direction_frame(f: &NilMap, dir: Direction) -> Result<([f64; 3], [f64; 3])> {
    if dir == Direction::C {
        return Ok(([0.0, 0.0, 1.0], [0.0, 0.0, 1.0]));
    }
    let nf = f.normal_form()?;
    let (lu, ls) = nf.dual();
    Ok(match dir {
        Direction::U => ([nf.v_u[0], nf.v_u[1], 0.0], [lu[0], lu[1], 0.0]),
        _ => ([nf.v_s[0], nf.v_s[1], 0.0], [ls[0], ls[1], 0.0]),
    })
}

/// Default perturbation size of [`tangent_rates_fd`].
pub const FD_EPSILON: f64 = 1e-7;

/// Measured per-step log growth along a direction: at each step the point
/// `q = p·exp(εv)` is pushed with the same deck transformation as `p`, the
/// displacement `log(p'⁻¹q')` is projected on the dual covector of `v`, and
/// the logarithms of the one-step growth factors are averaged.
pub fn tangent_rates_fd(f: &NilMap, dir: Direction, start: &NilPoint<f64>, n: usize, eps: f64) -> Result<f64> {
    let (v, ell) = direction_frame(f, dir)?;
    let dot = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let base = dot(&ell, &v) * eps;
    let mut p = reduce(start).0;
    let mut total = 0.0;
    for _ in 0..n {
        let q = nil_mul(&p, &v.map(|c| c * eps));
        let (p1, gamma) = f.step(&p);
        let q1 = nil_mul(&gamma, &f.apply(&q));
        let w = nil_mul(&nil_inv(&p1), &q1);
        total += (dot(&ell, &w) / base).abs().ln();
        p = p1;
    }
    Ok(total / n as f64)
}

/// Log multipliers of `Ad(a^{−t})`, `a^t = exp(tH₀)`, on `(E, F, H₀)`,
/// computed from the `ad(H₀)`-eigenvalues of the brackets.
pub fn sl2_frame_rates(t: f64) -> (f64, f64, f64) {
    let h = sl2_h();
    // `+ 0.0` turns the center rate's `-0.0` into `0.0`.
    let rate = |v| -t * scalar::to_f64(&ad_eigenvalue(&h, &v).expect("weight vector")) + 0.0;
    (rate(sl2_e()), rate(sl2_f()), rate(h.clone()))
}

/// The systems the hyperbolicity checker accepts. All have constant
/// derivative cocycles in their invariant frames.
#[derive(Clone, Debug)]
pub enum DynamicsInput {
    /// A nilmanifold affine automorphism; rates are measured by finite differences.
    Nil {
        /// The map.
        map: Box<NilMap>,
        /// Iterations for the measurement.
        iterations: usize,
        /// Starting point.
        start: NilPoint<f64>,
    },
    /// The time-`t` right translation in the `SL(2)` frame.
    Sl2Time(f64),
    /// The diagonal automorphism `φ_{λ,μ}` with the labeled pair `(X, Y)`.
    Diagonal(f64, f64),
}

/// Behavior of `‖D f^n|_E‖` along a line field.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum WeakContraction {
    /// Tends to zero for positive iterates.
    Forward,
    /// Tends to zero for negative iterates.
    Backward,
    /// Neither.
    None,
}

/// Rate estimates and the verdicts derived from them.
#[derive(Clone, PartialEq, Debug)]
pub struct HyperbolicityReport {
    /// Per-step log rates `(s, c, u)`.
    pub rates: [f64; 3],
    /// Smallest `N ≤ N_max` certifying contraction, expansion and
    /// domination, if any.
    pub certified_n: Option<usize>,
    /// `‖Df^N v^s‖ < 1`.
    pub contracts_s: bool,
    /// `‖Df^N v^u‖ > 1`.
    pub expands_u: bool,
    /// `‖Df^N v^s‖ < ‖Df^N v^c‖ < ‖Df^N v^u‖`.
    pub dominated: bool,
    /// Partial hyperbolicity verdict.
    pub partially_hyperbolic: bool,
    /// Weak contraction of the α- and β-lines (the stable/unstable pair).
    pub weak: [WeakContraction; 2],
    /// Both lines of the pair are weakly contracted.
    pub weakly_contracted: bool,
    /// Margins `(−N r_s, N(r_c − r_s), N(r_u − r_c), N r_u)` at the certified `N` (or at `N_max`).
    pub margins: [f64; 4],
}

/// Certifies partial hyperbolicity and weak contraction from measured rates.
///
/// Each inequality must hold with margin `tol` in log scale at some
/// `N ≤ n_max`. Only constant-direction cocycles are supported, which
/// covers every input variant.
pub fn hyperbolicity_report(input: &DynamicsInput, n_max: usize, tol: f64) -> Result<HyperbolicityReport> {
    let (r_alpha, r_beta, r_c) = match input {
        DynamicsInput::Nil { map, iterations, start } => (
            tangent_rates_fd(map.as_ref(), Direction::S, start, *iterations, FD_EPSILON)?,
            tangent_rates_fd(map.as_ref(), Direction::U, start, *iterations, FD_EPSILON)?,
            tangent_rates_fd(map.as_ref(), Direction::C, start, *iterations, FD_EPSILON)?,
        ),
        DynamicsInput::Sl2Time(t) => {
            let (e, f, h) = sl2_frame_rates(*t);
            (e, f, h)
        }
        DynamicsInput::Diagonal(l, m) => {
            if *l == 0.0 || *m == 0.0 {
                return Err(Error::ZeroMultiplier);
            }
            (l.abs().ln(), m.abs().ln(), (l * m).abs().ln())
        }
    };
    let (r_s, r_u) = if r_alpha <= r_beta { (r_alpha, r_beta) } else { (r_beta, r_alpha) };
    let mut certified_n = None;
    let mut margins = [0.0; 4];
    for n in 1..=n_max.max(1) {
        let nf = n as f64;
        margins = [-nf * r_s, nf * (r_c - r_s), nf * (r_u - r_c), nf * r_u];
        if margins.iter().all(|m| *m > tol) {
            certified_n = Some(n);
            break;
        }
    }
    let contracts_s = margins[0] > tol;
    let expands_u = margins[3] > tol;
    let dominated = margins[1] > tol && margins[2] > tol;
    let weak_of = |r: f64| {
        if r < -tol {
            WeakContraction::Forward
        } else if r > tol {
            WeakContraction::Backward
        } else {
            WeakContraction::None
        }
    };
    let weak = [weak_of(r_alpha), weak_of(r_beta)];
    Ok(HyperbolicityReport {
        rates: [r_s, r_c, r_u],
        certified_n,
        contracts_s,
        expands_u,
        dominated,
        partially_hyperbolic: certified_n.is_some(),
        weakly_contracted: weak.iter().all(|w| *w != WeakContraction::None),
        weak,
        margins,
    })
}

/// Verdict of the volume obstruction.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum VolumeVerdict {
    /// `λ²μ² ≠ 1` in a way incompatible with a finite invariant volume.
    Obstructed,
    /// No obstruction.
    Admissible,
}

/// Flags `|λ|, |μ| < 1` and `|λ|, |μ| > 1` as obstructed: the induced volume
/// form scales by `λ²μ²`, which would then be strictly below or above one.
pub fn volume_obstruction_check(lambda: f64, mu: f64) -> Result<VolumeVerdict> {
    if lambda == 0.0 || mu == 0.0 {
        return Err(Error::ZeroMultiplier);
    }
    let (a, b) = (lambda.abs(), mu.abs());
    if (a < 1.0 && b < 1.0) || (a > 1.0 && b > 1.0) {
        Ok(VolumeVerdict::Obstructed)
    } else {
        Ok(VolumeVerdict::Admissible)
    }
}

/// Exact version of the obstruction for rational multipliers.
pub fn volume_obstruction_exact(lambda: &Scalar, mu: &Scalar) -> Result<VolumeVerdict> {
    if lambda.is_zero() || mu.is_zero() {
        return Err(Error::ZeroMultiplier);
    }
    let one = scalar::int(1);
    let (a, b) = (lambda.abs(), mu.abs());
    if (a < one && b < one) || (a > one && b > one) {
        Ok(VolumeVerdict::Obstructed)
    } else {
        Ok(VolumeVerdict::Admissible)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    fn cat() -> NilMap {
        NilMap::new([[2, 1], [1, 1]], [frac(1, 2), int(0), frac(1, 3)]).unwrap()
    }

    #[test]
    fn lattice_points_reduce_to_identity() {
        let p = NilLattice::element(3, -2, 5);
        let (rep, gamma) = reduce(&p);
        assert_eq!(rep, [int(0), int(0), int(0)]);
        assert_eq!(nil_mul(&gamma, &p), rep);
    }

    #[test]
    fn reduce_is_lattice_invariant_exactly() {
        let p = [frac(7, 3), frac(-5, 4), frac(9, 7)];
        let g = NilLattice::element(-4, 7, 3);
        assert_eq!(reduce(&nil_mul(&g, &p)).0, reduce(&p).0);
    }

    #[test]
    fn invalid_maps_rejected() {
        assert!(NilMap::new([[2, 0], [0, 1]], [int(0), int(0), int(0)]).is_err());
        assert!(NilMap::new([[2, 1], [1, 1]], [frac(1, 3), int(0), int(0)]).is_err());
        assert!(NilLattice::invariant_under(&[[2, 1], [1, 1]]));
    }

    #[test]
    fn cat_map_rates() {
        let f = cat();
        let lu = ((3.0 + 5f64.sqrt()) / 2.0).ln();
        assert!((tangent_rates(&f, Direction::U).unwrap() - lu).abs() < 1e-12);
        let est = tangent_rates_fd(&f, Direction::U, &[0.1, 0.2, 0.3], 200, FD_EPSILON).unwrap();
        assert!((est - lu).abs() < 1e-3, "{est}");
        let c = tangent_rates_fd(&f, Direction::C, &[0.1, 0.2, 0.3], 200, FD_EPSILON).unwrap();
        assert!(c.abs() < 1e-6, "{c}");
    }

    #[test]
    fn identity_rates_vanish() {
        let f = NilMap::new([[1, 0], [0, 1]], [int(0), int(0), int(0)]).unwrap();
        for d in [Direction::S, Direction::U, Direction::C] {
            assert_eq!(tangent_rates(&f, d).unwrap(), 0.0);
        }
        let rot = NilMap::new([[0, -1], [1, 0]], [int(0), int(0), int(0)]).unwrap();
        assert_eq!(tangent_rates(&rot, Direction::U), Err(Error::NotHyperbolic));
    }

    #[test]
    fn sl2_rates() {
        assert_eq!(sl2_frame_rates(1.0), (-2.0, 2.0, 0.0));
        assert_eq!(sl2_frame_rates(0.0), (-0.0, 0.0, -0.0));
    }

    #[test]
    fn reports() {
        let r = hyperbolicity_report(&DynamicsInput::Sl2Time(1.0), 5, 1e-9).unwrap();
        assert_eq!(r.certified_n, Some(1));
        let d = hyperbolicity_report(&DynamicsInput::Diagonal(2.0, 3.0), 5, 1e-9).unwrap();
        assert!(!d.contracts_s && !d.partially_hyperbolic);
    }

    #[test]
    fn volume() {
        assert_eq!(volume_obstruction_check(0.5, 1.0 / 3.0), Ok(VolumeVerdict::Obstructed));
        assert_eq!(volume_obstruction_check(2.618, 0.382), Ok(VolumeVerdict::Admissible));
        assert_eq!(volume_obstruction_check(0.0, 1.0), Err(Error::ZeroMultiplier));
    }
}
