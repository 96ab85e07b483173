//! Normal curvatures, the harmonic subspace, and operational contact checks.
//!
//! An element of the four-dimensional module `W_K ⊂ Lin(Λ²(sl3/p_min), sl3)`
//! is coordinatized by `(K_α, K_β, K^α, K^β)`:
//!
//! ```text
//! K(ē_α∧ē_0) = K^α·E13 + K_α·E23
//! K(ē_β∧ē_0) = K_β·E12 + K^β·E13
//! K(ē_α∧ē_β) = 0
//! ```
//!
//! with the wedge basis ordered `(ē_α∧ē_0, ē_β∧ē_0, ē_α∧ē_β)`. `P_min` acts by
//! `(p·K)(u∧v) = Ad(p)·K(Ad̄(p)⁻¹u, Ad̄(p)⁻¹v)`; the action is evaluated by
//! brute force from this formula.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie_core::{self, bracket, expm3, FloatGroupElem, GroupElem, LieVec};
use crate::matrix::{cross, det3, norm_f64, Mat3, Vec3};
use crate::scalar::{self, Scalar};

/// An element of `W_K`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct NormalCurvature {
    /// Component `K_α` (coefficient of `E23` in `K(ē_α∧ē_0)`).
    pub k_alpha: Scalar,
    /// Component `K_β` (coefficient of `E12` in `K(ē_β∧ē_0)`).
    pub k_beta: Scalar,
    /// Component `K^α` (coefficient of `E13` in `K(ē_α∧ē_0)`).
    pub k_sup_alpha: Scalar,
    /// Component `K^β` (coefficient of `E13` in `K(ē_β∧ē_0)`).
    pub k_sup_beta: Scalar,
}

impl NormalCurvature {
    /// Builds a curvature from its four components `(K_α, K_β, K^α, K^β)`.
    pub fn new(k_alpha: Scalar, k_beta: Scalar, k_sup_alpha: Scalar, k_sup_beta: Scalar) -> Self {
        NormalCurvature {
            k_alpha,
            k_beta,
            k_sup_alpha,
            k_sup_beta,
        }
    }

    /// The zero curvature.
    pub fn zero() -> Self {
        NormalCurvature::new(Scalar::zero(), Scalar::zero(), Scalar::zero(), Scalar::zero())
    }

    /// Value on the wedge basis element with index `w` in
    /// `(ē_α∧ē_0, ē_β∧ē_0, ē_α∧ē_β)`.
    pub fn on_wedge(&self, w: usize) -> LieVec {
        let mut m = Mat3::<Scalar>::zero();
        match w {
            0 => {
                m.0[0][2] = self.k_sup_alpha.clone();
                m.0[1][2] = self.k_alpha.clone();
            }
            1 => {
                m.0[0][1] = self.k_beta.clone();
                m.0[0][2] = self.k_sup_beta.clone();
            }
            _ => {}
        }
        LieVec(m)
    }

    /// Evaluates `K(u∧v)` for quotient vectors given in `(ē_α, ē_β, ē_0)` coordinates.
    pub fn eval(&self, u: &Vec3<Scalar>, v: &Vec3<Scalar>) -> LieVec {
        // u∧v = Σ_{i<j} (u_i v_j − u_j v_i) ē_i∧ē_j.
        let c = |i: usize, j: usize| &u[i] * &v[j] - &u[j] * &v[i];
        let terms = [(c(0, 2), 0), (c(1, 2), 1), (c(0, 1), 2)];
        terms.iter().fold(LieVec::zero(), |acc, (coef, w)| {
            &acc + &self.on_wedge(*w).scale(coef)
        })
    }

    /// Reads the components back from the values on the wedge basis, checking
    /// that they have the shape of an element of `W_K`.
    pub fn from_wedge_values(values: &[LieVec; 3]) -> Result<Self> {
        let [a0, b0, ab] = values;
        let shape_ok = ab.is_zero()
            && (0..3).all(|i| {
                (0..3).all(|j| {
                    let allowed_a = (i, j) == (0, 2) || (i, j) == (1, 2);
                    let allowed_b = (i, j) == (0, 1) || (i, j) == (0, 2);
                    (allowed_a || a0.at(i, j).is_zero()) && (allowed_b || b0.at(i, j).is_zero())
                })
            });
        if !shape_ok {
            return Err(Error::InvalidArgument("values do not lie in W_K".into()));
        }
        Ok(NormalCurvature::new(
            a0.at(1, 2).clone(),
            b0.at(0, 1).clone(),
            a0.at(0, 2).clone(),
            b0.at(0, 2).clone(),
        ))
    }

    /// Components as an array `(K_α, K_β, K^α, K^β)`.
    pub fn components(&self) -> [Scalar; 4] {
        [
            self.k_alpha.clone(),
            self.k_beta.clone(),
            self.k_sup_alpha.clone(),
            self.k_sup_beta.clone(),
        ]
    }
}

/// Left action of `p ∈ P_min` on `W_K`, evaluated from the defining formula.
pub fn curvature_action(p: &GroupElem, k: &NormalCurvature) -> Result<NormalCurvature> {
    let q = lie_core::quotient_adjoint_bruteforce(p)?;
    let qinv = q.inverse().ok_or(Error::Singular)?;
    let e = |i: usize| {
        let mut v = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
        v[i] = Scalar::one();
        qinv.apply(&v)
    };
    let pairs = [(0, 2), (1, 2), (0, 1)];
    let ad = p.ad_map();
    let values = pairs.map(|(i, j)| ad(&k.eval(&e(i), &e(j))));
    NormalCurvature::from_wedge_values(&values)
}

/// Scale factors `(a⁻¹b⁻⁵, a⁵b)` of the unimodular representative of `p`
/// with diagonal `(a, a⁻¹b⁻¹, b)`, computed from any representative.
pub fn exponent_factors(p: &GroupElem) -> Result<(Scalar, Scalar)> {
    if !p.is_upper_triangular() {
        return Err(Error::NotUpperTriangular);
    }
    let m = p.matrix();
    let (p11, p33) = (m.at(0, 0), m.at(2, 2));
    let det = m.det();
    let det2 = &det * &det;
    let f_alpha = &det2 / (p11 * scalar::powi(p33, 5));
    let f_beta = scalar::powi(p11, 5) * p33 / &det2;
    Ok((f_alpha, f_beta))
}

/// True iff `K_α = K_β = 0`.
pub fn is_harmonic(k: &NormalCurvature) -> bool {
    k.k_alpha.is_zero() && k.k_beta.is_zero()
}

/// Checks that `p` maps the harmonic curvature `k` into `W_H`.
pub fn preserves_harmonic(p: &GroupElem, k: &NormalCurvature) -> Result<bool> {
    if !is_harmonic(k) {
        return Err(Error::InvalidArgument("curvature is not harmonic".into()));
    }
    Ok(is_harmonic(&curvature_action(p, k)?))
}

/// A polynomial in three variables with exact coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly {
    terms: BTreeMap<[u32; 3], Scalar>,
}

impl Poly {
    /// The zero polynomial.
    pub fn zero() -> Self {
        Poly::default()
    }

    /// A constant.
    pub fn constant(c: Scalar) -> Self {
        Poly::monomial(c, [0, 0, 0])
    }

    /// The coordinate function `x_i`.
    pub fn var(i: usize) -> Self {
        let mut e = [0, 0, 0];
        e[i] = 1;
        Poly::monomial(Scalar::one(), e)
    }

    /// `c·x^e`.
    pub fn monomial(c: Scalar, e: [u32; 3]) -> Self {
        let mut p = Poly::zero();
        p.add_term(e, c);
        p
    }

    fn add_term(&mut self, e: [u32; 3], c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Scalar::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Sum.
    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(*e, c.clone());
        }
        out
    }

    /// Difference.
    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.scale(&-Scalar::one()))
    }

    /// Scalar multiple.
    pub fn scale(&self, s: &Scalar) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            out.add_term(*e, c * s);
        }
        out
    }

    /// Product.
    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term([e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2]], c1 * c2);
            }
        }
        out
    }

    /// Partial derivative `∂/∂x_i`.
    pub fn deriv(&self, i: usize) -> Poly {
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = *e;
                f[i] -= 1;
                out.add_term(f, c * scalar::int(i64::from(e[i])));
            }
        }
        out
    }

    /// Exact evaluation.
    pub fn eval(&self, p: &Vec3<Scalar>) -> Scalar {
        self.terms.iter().fold(Scalar::zero(), |acc, (e, c)| {
            acc + c
                * scalar::powi(&p[0], e[0] as i32)
                * scalar::powi(&p[1], e[1] as i32)
                * scalar::powi(&p[2], e[2] as i32)
        })
    }

    /// Float evaluation.
    pub fn eval_f64(&self, p: &Vec3<f64>) -> f64 {
        self.terms.iter().fold(0.0, |acc, (e, c)| {
            acc + scalar::to_f64(c)
                * p[0].powi(e[0] as i32)
                * p[1].powi(e[1] as i32)
                * p[2].powi(e[2] as i32)
        })
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// A vector field on R³ with polynomial components.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyField(pub [Poly; 3]);

impl PolyField {
    /// Constant field.
    pub fn constant(v: Vec3<Scalar>) -> Self {
        PolyField(v.map(Poly::constant))
    }

    /// Exact value at a point.
    pub fn eval_exact(&self, p: &Vec3<Scalar>) -> Vec3<Scalar> {
        [0, 1, 2].map(|i| self.0[i].eval(p))
    }

    /// Directional derivative of `self` along `other`: `(D self)·other`.
    pub fn derivative_along(&self, other: &PolyField) -> PolyField {
        PolyField([0, 1, 2].map(|i| {
            (0..3).fold(Poly::zero(), |acc, j| acc.add(&self.0[i].deriv(j).mul(&other.0[j])))
        }))
    }

    /// Lie bracket `[X, Y] = (DY)X − (DX)Y`.
    pub fn bracket(&self, other: &PolyField) -> PolyField {
        let a = other.derivative_along(self);
        let b = self.derivative_along(other);
        PolyField([0, 1, 2].map(|i| a.0[i].sub(&b.0[i])))
    }

    /// Multiplies the field by a polynomial function.
    pub fn rescale(&self, f: &Poly) -> PolyField {
        PolyField([0, 1, 2].map(|i| self.0[i].mul(f)))
    }
}

/// A vector field on a chart domain of R³.
pub trait VectorField {
    /// Float value at a point.
    fn eval(&self, p: &Vec3<f64>) -> Vec3<f64>;

    /// Polynomial representation, when available (enables exact brackets).
    fn polynomial(&self) -> Option<&PolyField> {
        None
    }
}

impl VectorField for PolyField {
    fn eval(&self, p: &Vec3<f64>) -> Vec3<f64> {
        [0, 1, 2].map(|i| self.0[i].eval_f64(p))
    }

    fn polynomial(&self) -> Option<&PolyField> {
        Some(self)
    }
}

/// A vector field given by a closure.
pub struct FnField<F>(pub F);

impl<F: Fn(&Vec3<f64>) -> Vec3<f64>> VectorField for FnField<F> {
    fn eval(&self, p: &Vec3<f64>) -> Vec3<f64> {
        (self.0)(p)
    }
}

/// Tuning of the finite-difference contact test.
#[derive(Clone, Copy, Debug)]
pub struct ContactOptions {
    /// Base step `h` of the central differences.
    pub step: f64,
    /// Relative threshold on `det(X̂, Ŷ, [X,Y])` above which the bracket
    /// counts as escaping the plane.
    pub tol: f64,
}

impl Default for ContactOptions {
    fn default() -> Self {
        ContactOptions {
            step: 1e-3,
            tol: 1e-6,
        }
    }
}

fn add3(a: &Vec3<f64>, b: &Vec3<f64>, s: f64) -> Vec3<f64> {
    [a[0] + s * b[0], a[1] + s * b[1], a[2] + s * b[2]]
}

/// Central-difference bracket `(DY)X − (DX)Y` at `p` with step `h`.
///
/// Each directional derivative moves the point by at most `h`: along a field
/// value `v` the parameter step is `h / max(1, |v|)`.
fn fd_bracket(x: &dyn VectorField, y: &dyn VectorField, p: &Vec3<f64>, h: f64) -> Vec3<f64> {
    let xv = x.eval(p);
    let yv = y.eval(p);
    let directional = |f: &dyn VectorField, v: &Vec3<f64>| {
        let s = h / norm_f64(v).max(1.0);
        let a = f.eval(&add3(p, v, s));
        let b = f.eval(&add3(p, v, -s));
        [0, 1, 2].map(|i| (a[i] - b[i]) / (2.0 * s))
    };
    let dy_x = directional(y, &xv);
    let dx_y = directional(x, &yv);
    [0, 1, 2].map(|i| dy_x[i] - dx_y[i])
}

/// Bracket of two fields at `p` by central differences with a Richardson
/// consistency gate: with steps `h, h/2, h/4` the successive differences must
/// shrink by a factor within 10% of 4, unless they are already at rounding level.
/// Returns the extrapolated bracket.
pub fn fd_bracket_checked(
    x: &dyn VectorField,
    y: &dyn VectorField,
    p: &Vec3<f64>,
    h: f64,
) -> Result<Vec3<f64>> {
    let b1 = fd_bracket(x, y, p, h);
    let b2 = fd_bracket(x, y, p, h / 2.0);
    let b4 = fd_bracket(x, y, p, h / 4.0);
    let d12 = norm_f64(&add3(&b1, &b2, -1.0));
    let d24 = norm_f64(&add3(&b2, &b4, -1.0));
    let scale = 1.0 + norm_f64(&b4) + norm_f64(&x.eval(p)) + norm_f64(&y.eval(p));
    let noise = 1e-9 * scale;
    if d12 > noise {
        let ratio = d12 / d24.max(f64::MIN_POSITIVE);
        if (ratio - 4.0).abs() > 0.4 {
            return Err(Error::RichardsonGate(format!("{ratio:.4}")));
        }
    }
    Ok([0, 1, 2].map(|i| (4.0 * b4[i] - b2[i]) / 3.0))
}

/// Decides whether the plane field spanned by two vector fields is contact at
/// `p`, i.e. whether `[X, Y](p) ∉ span(X(p), Y(p))`.
///
/// Polynomial fields are bracketed exactly; otherwise central differences
/// with a Richardson gate are used.
pub fn contact_test(x: &dyn VectorField, y: &dyn VectorField, p: &Vec3<Scalar>) -> Result<bool> {
    contact_test_with(x, y, p, ContactOptions::default())
}

/// [`contact_test`] with explicit finite-difference options.
pub fn contact_test_with(
    x: &dyn VectorField,
    y: &dyn VectorField,
    p: &Vec3<Scalar>,
    opts: ContactOptions,
) -> Result<bool> {
    if let (Some(px), Some(py)) = (x.polynomial(), y.polynomial()) {
        let xv = px.eval_exact(p);
        let yv = py.eval_exact(p);
        if cross(&xv, &yv).iter().all(Zero::is_zero) {
            return Err(Error::DegenerateFrame);
        }
        let b = px.bracket(py).eval_exact(p);
        return Ok(!det3(&xv, &yv, &b).is_zero());
    }
    let pf = p.clone().map(|c| scalar::to_f64(&c));
    let xv = x.eval(&pf);
    let yv = y.eval(&pf);
    let (nx, ny) = (norm_f64(&xv), norm_f64(&yv));
    if nx == 0.0 || ny == 0.0 || norm_f64(&cross(&xv, &yv)) <= 1e-10 * nx * ny {
        return Err(Error::DegenerateFrame);
    }
    let b = fd_bracket_checked(x, y, &pf, opts.step)?;
    let xh = xv.map(|c| c / nx);
    let yh = yv.map(|c| c / ny);
    let d = det3(&xh, &yh, &b);
    Ok(d.abs() > opts.tol * (1.0 + norm_f64(&b)))
}

/// Defect of the flow-commutator identity at time `t`.
///
/// The composition `φ_v^{−t}∘φ_u^{−t}∘φ_v^{t}∘φ_u^{t}` of the flows of the
/// left-invariant fields generated by `u` and `v` is right multiplication by
/// `e^{tu}e^{tv}e^{−tu}e^{−tv}`; the function returns the Frobenius distance
/// between this element and `exp(t²[u, v])`, both in normalized float form.
/// It is `O(t³)` and vanishes identically on a Heisenberg pair.
pub fn flow_commutator_defect(u: &LieVec, v: &LieVec, t: f64) -> f64 {
    let uf = u.to_f64();
    let vf = v.to_f64();
    let e = |m: &Mat3<f64>, s: f64| expm3(&m.scale(&s));
    let lhs = &(&(&e(&uf, t) * &e(&vf, t)) * &e(&uf, -t)) * &e(&vf, -t);
    let rhs = e(&bracket(u, v).to_f64(), t * t);
    FloatGroupElem::new(lhs).distance(&FloatGroupElem::new(rhs))
}

/// Least-squares slope of `log d` against `log t`.
pub fn loglog_slope(ts: &[f64], ds: &[f64]) -> f64 {
    let n = ts.len() as f64;
    let xs: Vec<f64> = ts.iter().map(|t| t.ln()).collect();
    let ys: Vec<f64> = ds.iter().map(|d| d.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::{heis_x, heis_y};
    use crate::scalar::{frac, int};

    fn heis_fields() -> (PolyField, PolyField) {
        // X̃ = ∂x, Ỹ = ∂y + x∂z in matrix coordinates of Heis(3).
        let x = PolyField::constant([int(1), int(0), int(0)]);
        let y = PolyField([Poly::zero(), Poly::constant(int(1)), Poly::var(0)]);
        (x, y)
    }

    #[test]
    fn heisenberg_plane_is_contact() {
        let (x, y) = heis_fields();
        let p = [frac(1, 3), int(-2), int(5)];
        assert_eq!(contact_test(&x, &y, &p), Ok(true));
    }

    #[test]
    fn coordinate_plane_is_not_contact() {
        let x = PolyField::constant([int(1), int(0), int(0)]);
        let y = PolyField::constant([int(0), int(1), int(0)]);
        assert_eq!(contact_test(&x, &y, &[int(0), int(0), int(0)]), Ok(false));
    }

    #[test]
    fn numeric_path_agrees_with_exact_path() {
        let fx = FnField(|_: &Vec3<f64>| [1.0, 0.0, 0.0]);
        let fy = FnField(|p: &Vec3<f64>| [0.0, 1.0, p[0]]);
        assert_eq!(contact_test(&fx, &fy, &[int(1), int(2), int(3)]), Ok(true));
        let gy = FnField(|p: &Vec3<f64>| [0.0, 1.0, p[1].sin()]);
        assert_eq!(contact_test(&fx, &gy, &[int(1), int(2), int(3)]), Ok(false));
    }

    #[test]
    fn degenerate_frame_rejected() {
        let x = PolyField::constant([int(1), int(0), int(0)]);
        assert_eq!(contact_test(&x, &x, &[int(0), int(0), int(0)]), Err(Error::DegenerateFrame));
    }

    #[test]
    fn heis_flow_commutator_is_exact() {
        for t in [0.5, 0.1, 0.01] {
            assert!(flow_commutator_defect(&heis_x(), &heis_y(), t) <= 1e-12);
        }
        assert_eq!(flow_commutator_defect(&heis_x(), &heis_x(), 0.3), 0.0);
    }

    #[test]
    fn unipotent_element_fixes_normal_components() {
        let p = GroupElem::pmin(&int(1), &int(1), &int(2), &int(3), &int(5)).unwrap();
        let k = NormalCurvature::new(int(1), int(2), int(3), int(4));
        let pk = curvature_action(&p, &k).unwrap();
        assert_eq!(pk.k_alpha, k.k_alpha);
        assert_eq!(pk.k_beta, k.k_beta);
    }

    #[test]
    fn scaling_a_alone() {
        let p = GroupElem::pmin(&int(2), &int(1), &int(0), &int(0), &int(0)).unwrap();
        let k = NormalCurvature::new(int(1), int(0), int(0), int(0));
        assert_eq!(curvature_action(&p, &k).unwrap().k_alpha, frac(1, 2));
    }
}
