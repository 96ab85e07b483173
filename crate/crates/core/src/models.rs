//! The two homogeneous models `(Y_t, S_t)` and `(Y_a, S_a)`.
//!
//! `Y_t` is the orbit of `o_t` under the copy `ι(SL(2))` of `SL(2)` with
//! `ι(g) = [[g, 0], [0, 1]]`; `Y_a` is the orbit of `o_a` under `Heis(3)`.
//! Both orbit maps are bijections, and the enhanced Lagrangian contact
//! structures are the pushforwards of the left-invariant structures spanned
//! by `(E, F, H₀)` and `(X, Y, Z)`. Frames are stored as tangent lines.
//!
//! The module also carries the Heisenberg group arithmetic, the diagonal
//! automorphisms `φ_{λ,μ}`, the affine group `Heis(3) ⋊ 𝒜`, its equivariant
//! identifications with `P_min` and with affine maps of `R³`, and the
//! explicit central-flow fields of `Y_a`.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::curvature::{Poly, PolyField};
use crate::error::{Error, Result};
use crate::flag_space::{
    self, act, base_point_a, base_point_t, canonical_chart, chart_coords, chart_vectors, Chart,
    ChartVector, Flag, Model, TangentLine,
};
use crate::lie_core::{bracket, heis_x, heis_y, heis_z, sl2_e, sl2_f, sl2_h, GroupElem, LieVec};
use crate::matrix::{Mat3, Vec3};
use crate::scalar::{self, Scalar};

/// An element `[x, y, z]` of `Heis(3)`: the unitriangular matrix with
/// `x` at `(1,2)`, `y` at `(2,3)` and `z` at `(1,3)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HeisElem {
    /// Entry `(1,2)`.
    pub x: Scalar,
    /// Entry `(2,3)`.
    pub y: Scalar,
    /// Entry `(1,3)`.
    pub z: Scalar,
}

impl HeisElem {
    /// `[x, y, z]`.
    pub fn new(x: Scalar, y: Scalar, z: Scalar) -> Self {
        HeisElem { x, y, z }
    }

    /// `[x, y, z]` from integers.
    pub fn from_ints(x: i64, y: i64, z: i64) -> Self {
        HeisElem::new(scalar::int(x), scalar::int(y), scalar::int(z))
    }

    /// The identity.
    pub fn identity() -> Self {
        HeisElem::from_ints(0, 0, 0)
    }

    /// Group law `[x,y,z]·[x',y',z'] = [x+x', y+y', z+z'+xy']`.
    pub fn mul(&self, o: &HeisElem) -> HeisElem {
        HeisElem::new(&self.x + &o.x, &self.y + &o.y, &self.z + &o.z + &self.x * &o.y)
    }

    /// Inverse `[−x, −y, xy − z]`.
    pub fn inverse(&self) -> HeisElem {
        HeisElem::new(-self.x.clone(), -self.y.clone(), &self.x * &self.y - &self.z)
    }

    /// The unitriangular matrix.
    pub fn matrix(&self) -> Mat3<Scalar> {
        let (o, z) = (Scalar::one, Scalar::zero);
        Mat3([
            [o(), self.x.clone(), self.z.clone()],
            [z(), o(), self.y.clone()],
            [z(), z(), o()],
        ])
    }

    /// The projective transformation defined by the matrix.
    pub fn group_elem(&self) -> GroupElem {
        GroupElem::new(self.matrix()).expect("unitriangular matrices are invertible")
    }

    /// Reads a unitriangular matrix.
    pub fn from_matrix(m: &Mat3<Scalar>) -> Result<Self> {
        let unitri = (0..3).all(|i| m.at(i, i).is_one()) && (0..3).all(|i| (0..i).all(|j| m.at(i, j).is_zero()));
        if !unitri {
            return Err(Error::Membership("matrix is not upper unitriangular".into()));
        }
        Ok(HeisElem::new(m.at(0, 1).clone(), m.at(1, 2).clone(), m.at(0, 2).clone()))
    }

    /// Exponential coordinates `(x, y, z − xy/2)`: the element is
    /// `exp(xX + yY + (z − xy/2)Z)`.
    pub fn to_exp(&self) -> Vec3<Scalar> {
        [self.x.clone(), self.y.clone(), &self.z - &self.x * &self.y / scalar::int(2)]
    }

    /// Inverse of [`HeisElem::to_exp`].
    pub fn from_exp(c: &Vec3<Scalar>) -> Self {
        HeisElem::new(c[0].clone(), c[1].clone(), &c[2] + &c[0] * &c[1] / scalar::int(2))
    }
}

impl fmt::Display for HeisElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.x, self.y, self.z)
    }
}

/// The automorphism `φ_{λ,μ}: [x, y, z] ↦ [λx, μy, λμz]` of `Heis(3)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HeisAuto {
    lambda: Scalar,
    mu: Scalar,
}

impl HeisAuto {
    /// `φ_{λ,μ}`; both multipliers must be nonzero.
    pub fn new(lambda: Scalar, mu: Scalar) -> Result<Self> {
        if lambda.is_zero() || mu.is_zero() {
            return Err(Error::ZeroMultiplier);
        }
        Ok(HeisAuto { lambda, mu })
    }

    /// `φ_{1,1}`.
    pub fn identity() -> Self {
        HeisAuto {
            lambda: Scalar::one(),
            mu: Scalar::one(),
        }
    }

    /// `λ`.
    pub fn lambda(&self) -> &Scalar {
        &self.lambda
    }

    /// `μ`.
    pub fn mu(&self) -> &Scalar {
        &self.mu
    }

    /// Image of a group element.
    pub fn apply(&self, h: &HeisElem) -> HeisElem {
        HeisElem::new(&self.lambda * &h.x, &self.mu * &h.y, &self.lambda * &self.mu * &h.z)
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &HeisAuto) -> HeisAuto {
        HeisAuto {
            lambda: &self.lambda * &other.lambda,
            mu: &self.mu * &other.mu,
        }
    }

    /// Inverse automorphism.
    pub fn inverse(&self) -> HeisAuto {
        HeisAuto {
            lambda: self.lambda.recip(),
            mu: self.mu.recip(),
        }
    }

    /// Differential at the identity in the basis `(X, Y, Z)`.
    pub fn lie_matrix(&self) -> Mat3<Scalar> {
        Mat3::diag([self.lambda.clone(), self.mu.clone(), &self.lambda * &self.mu])
    }
}

/// An affine automorphism `L_g ∘ φ` of `Heis(3)`, an element of `Heis(3) ⋊ 𝒜`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HeisAffine {
    /// Translation part `g`.
    pub g: HeisElem,
    /// Automorphism part `φ`.
    pub phi: HeisAuto,
}

impl HeisAffine {
    /// `L_g ∘ φ`.
    pub fn new(g: HeisElem, phi: HeisAuto) -> Self {
        HeisAffine { g, phi }
    }

    /// The identity.
    pub fn identity() -> Self {
        HeisAffine::new(HeisElem::identity(), HeisAuto::identity())
    }

    /// Semidirect product `(g, φ)(g', φ') = (g·φ(g'), φφ')`.
    pub fn mul(&self, o: &HeisAffine) -> HeisAffine {
        HeisAffine::new(self.g.mul(&self.phi.apply(&o.g)), self.phi.compose(&o.phi))
    }

    /// Inverse `(φ⁻¹(g⁻¹), φ⁻¹)`.
    pub fn inverse(&self) -> HeisAffine {
        let pi = self.phi.inverse();
        HeisAffine::new(pi.apply(&self.g.inverse()), pi)
    }

    /// Action `h ↦ g·φ(h)`.
    pub fn apply(&self, h: &HeisElem) -> HeisElem {
        self.g.mul(&self.phi.apply(h))
    }
}

/// A 2×2 rational matrix.
pub type Mat2 = [[Scalar; 2]; 2];

/// Product of 2×2 matrices.
pub fn mat2_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    [0, 1].map(|i| [0, 1].map(|j| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j]))
}

/// Determinant of a 2×2 matrix.
pub fn mat2_det(a: &Mat2) -> Scalar {
    &a[0][0] * &a[1][1] - &a[0][1] * &a[1][0]
}

/// Scalar multiple of a 2×2 matrix.
pub fn mat2_scale(a: &Mat2, s: &Scalar) -> Mat2 {
    [0, 1].map(|i| [0, 1].map(|j| &a[i][j] * s))
}

/// `diag(λ, λ⁻¹) ∈ A^±`.
pub fn mat2_a(lambda: &Scalar) -> Result<Mat2> {
    if lambda.is_zero() {
        return Err(Error::ZeroMultiplier);
    }
    Ok([[lambda.clone(), Scalar::zero()], [Scalar::zero(), lambda.recip()]])
}

/// The embedding `ι(g) = [[g, 0], [0, 1]]`.
pub fn iota(g: &Mat2) -> Result<GroupElem> {
    let z = Scalar::zero;
    GroupElem::new(Mat3([
        [g[0][0].clone(), g[0][1].clone(), z()],
        [g[1][0].clone(), g[1][1].clone(), z()],
        [z(), z(), Scalar::one()],
    ]))
}

/// An element `(g, diag(λ, λ⁻¹))` of `SL(2) × A^±`, acting on `SL(2)` by
/// `s ↦ g·s·diag(λ, λ⁻¹)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Sl2Pair {
    /// Left factor, of determinant one.
    pub g: Mat2,
    /// Parameter of the diagonal right factor.
    pub lambda: Scalar,
}

impl Sl2Pair {
    /// Checks `det g = 1` and `λ ≠ 0`.
    pub fn new(g: Mat2, lambda: Scalar) -> Result<Self> {
        if !mat2_det(&g).is_one() {
            return Err(Error::Membership("left factor is not in SL(2)".into()));
        }
        if lambda.is_zero() {
            return Err(Error::ZeroMultiplier);
        }
        Ok(Sl2Pair { g, lambda })
    }

    /// Product in `SL(2) × A^±`.
    pub fn mul(&self, o: &Sl2Pair) -> Sl2Pair {
        Sl2Pair {
            g: mat2_mul(&self.g, &o.g),
            lambda: &self.lambda * &o.lambda,
        }
    }

    /// Action `s ↦ g·s·a` on `SL(2)`.
    pub fn apply(&self, s: &Mat2) -> Mat2 {
        let a = mat2_a(&self.lambda).expect("nonzero parameter");
        mat2_mul(&mat2_mul(&self.g, s), &a)
    }

    /// The identified element `ι(λg) ∈ H_t`.
    pub fn to_group(&self) -> GroupElem {
        iota(&mat2_scale(&self.g, &self.lambda)).expect("λg is invertible")
    }
}

/// Inverse of the identification `(g, diag(λ, λ⁻¹)) ↦ λg`: splits an element
/// of `H_t` into its `SL(2)` and `A^±` parts with `λ > 0`.
///
/// The image of the identification is `ι(GL⁺(2))`; elements with negative
/// determinant and elements whose determinant is not a rational square are
/// rejected.
pub fn equivariance_t(h: &GroupElem) -> Result<Sl2Pair> {
    let m = h.matrix();
    let block = m.at(2, 0).is_zero() && m.at(2, 1).is_zero() && m.at(0, 2).is_zero() && m.at(1, 2).is_zero();
    if !block || m.at(2, 2).is_zero() {
        return Err(Error::Membership("element is not in H_t".into()));
    }
    let c = m.at(2, 2);
    let big: Mat2 = [0, 1].map(|i| [0, 1].map(|j| m.at(i, j) / c));
    let det = mat2_det(&big);
    if !det.is_positive() {
        return Err(Error::Membership("determinant is not positive".into()));
    }
    let lambda = scalar::sqrt_exact(&det)
        .ok_or_else(|| Error::InvalidArgument("determinant is not a rational square".into()))?;
    Sl2Pair::new(mat2_scale(&big, &lambda.recip()), lambda)
}

/// The identification `P_min → Heis(3) ⋊ 𝒜`:
/// `[[λ, x, z], [0, λ⁻¹μ⁻¹, y], [0, 0, μ]] ↦ ([1, λμx, μ⁻¹z; 0, 1, μ⁻¹y; 0, 0, 1], φ_{λ²μ, λ⁻¹μ⁻²})`.
///
/// Every output entry is homogeneous of degree zero in the representative,
/// so it is computed from any representative without a cube root.
pub fn equivariance_a(p: &GroupElem) -> Result<HeisAffine> {
    if !p.is_upper_triangular() {
        return Err(Error::Membership("element is not in P_min".into()));
    }
    let m = p.matrix();
    let (p11, p12, p13, p23, p33) = (m.at(0, 0), m.at(0, 1), m.at(0, 2), m.at(1, 2), m.at(2, 2));
    let det = m.det();
    let g = HeisElem::new(p11 * p33 * p12 / &det, p23 / p33, p13 / p33);
    let phi = HeisAuto::new(p11 * p11 * p33 / &det, &det / (p11 * p33 * p33))?;
    Ok(HeisAffine::new(g, phi))
}

/// Inverse of [`equivariance_a`], using the representative with `(3,3)` entry one.
pub fn equivariance_a_inverse(f: &HeisAffine) -> GroupElem {
    let (big_l, big_m) = (f.phi.lambda(), f.phi.mu());
    let z = Scalar::zero;
    GroupElem::new(Mat3([
        [big_l * big_m, big_m * &f.g.x, f.g.z.clone()],
        [z(), big_m.clone(), f.g.y.clone()],
        [z(), z(), Scalar::one()],
    ]))
    .expect("nonzero diagonal")
}

/// Orbit map of `Y_t`: `s ↦ ι(s)·o_t`.
pub fn orbit_map_t(s: &Mat2) -> Result<Flag> {
    Ok(act(&iota(s)?, &base_point_t()))
}

/// Orbit map of `Y_a`: `h ↦ h·o_a`.
pub fn orbit_map_a(h: &HeisElem) -> Flag {
    act(&h.group_elem(), &base_point_a())
}

fn require_interior(x: &Flag, model: Model) -> Result<()> {
    if flag_space::is_interior(x, model) {
        Ok(())
    } else {
        Err(Error::NotInterior(model.name()))
    }
}

/// Point of `m` with third coordinate one, and the direction point of `D` on
/// the line at infinity.
fn affine_data(x: &Flag) -> (Vec3<Scalar>, Vec3<Scalar>) {
    let m = x.point().coords();
    let p = m.clone().map(|c| c / &m[2]);
    let n = x.line().normal();
    let d = [-n[1].clone(), n[0].clone(), Scalar::zero()];
    (p, d)
}

/// The unique `s ∈ SL(2)` with `ι(s)·o_t = x`.
pub fn orbit_inverse_t(x: &Flag) -> Result<Mat2> {
    require_interior(x, Model::T)?;
    let (p, d) = affine_data(x);
    let delta = &p[0] * &d[1] - &p[1] * &d[0];
    let c = delta.recip();
    Ok([[p[0].clone(), &c * &d[0]], [p[1].clone(), &c * &d[1]]])
}

/// The unique `h ∈ Heis(3)` with `h·o_a = x`.
pub fn orbit_inverse_a(x: &Flag) -> Result<HeisElem> {
    require_interior(x, Model::A)?;
    let (p, d) = affine_data(x);
    Ok(HeisElem::new(&d[0] / &d[1], p[1].clone(), p[0].clone()))
}

/// A flag with the three tangent lines of an enhanced Lagrangian contact
/// structure, in the canonical chart of the flag.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FramedPoint {
    /// The flag.
    pub flag: Flag,
    /// The α-line.
    pub e_alpha: TangentLine,
    /// The β-line.
    pub e_beta: TangentLine,
    /// The central line.
    pub e_c: TangentLine,
}

fn line_of(v: &LieVec, x: &Flag) -> Result<TangentLine> {
    flag_space::fundamental_vector(v, x)
        .line()
        .ok_or(Error::DegenerateFrame)
}

/// The generators of the base frame of a model: `(E, F, H₀)` or `(X, Y, Z)`.
pub fn base_generators(model: Model) -> [LieVec; 3] {
    match model {
        Model::T => [sl2_e(), sl2_f(), sl2_h()],
        Model::A => [heis_x(), heis_y(), heis_z()],
    }
}

/// The group element of the simply transitive group carrying the base point to `x`.
pub fn transporter(x: &Flag, model: Model) -> Result<GroupElem> {
    match model {
        Model::T => iota(&orbit_inverse_t(x)?),
        Model::A => Ok(orbit_inverse_a(x)?.group_elem()),
    }
}

/// Frame of the model structure at an interior flag, obtained by
/// transporting the base frame by any `h` with `h·o = x`: the lines are
/// `(Ad(h)v)†(x)` for the base generators `v`.
pub fn frame_at(x: &Flag, model: Model) -> Result<FramedPoint> {
    let h = transporter(x, model)?;
    frame_via(x, &h, model)
}

/// Frame at `x` computed with a prescribed transporter `h` (`h·o = x`).
pub fn frame_via(x: &Flag, h: &GroupElem, model: Model) -> Result<FramedPoint> {
    require_interior(x, model)?;
    if act(h, &model.base_point()) != *x {
        return Err(Error::InvalidArgument("element does not carry the base point to the flag".into()));
    }
    let [a, b, c] = base_generators(model).map(|v| line_of(&h.ad(&v), x));
    Ok(FramedPoint {
        flag: x.clone(),
        e_alpha: a?,
        e_beta: b?,
        e_c: c?,
    })
}

/// Derivative of chart coordinates along a curve `(m(ε), w(ε))` of
/// homogeneous vectors spanning the flag, by the quotient rule.
fn pair_velocity(chart: Chart, m: &Vec3<Scalar>, w: &Vec3<Scalar>, dm: &Vec3<Scalar>, dw: &Vec3<Scalar>) -> Result<Vec3<Scalar>> {
    let k = chart.axis;
    if m[k].is_zero() {
        return Err(Error::ChartDomain("point leaves the chart".into()));
    }
    let r = &w[k] / &m[k];
    let dr = (&dw[k] * &m[k] - &w[k] * &dm[k]) / (&m[k] * &m[k]);
    let dp: Vec3<Scalar> = [0, 1, 2].map(|a| &w[a] - &r * &m[a]);
    let ddp: Vec3<Scalar> = [0, 1, 2].map(|a| &dw[a] - &dr * &m[a] - &r * &dm[a]);
    let (i, j) = chart.others();
    let (p, q) = (chart.pivot, chart.free());
    if dp[p].is_zero() {
        return Err(Error::ChartDomain("direction leaves the chart".into()));
    }
    let quot = |num: &Scalar, den: &Scalar, dnum: &Scalar, dden: &Scalar| (dnum * den - num * dden) / (den * den);
    Ok([
        quot(&m[i], &m[k], &dm[i], &dm[k]),
        quot(&m[j], &m[k], &dm[j], &dm[k]),
        quot(&dp[q], &dp[p], &ddp[q], &ddp[p]),
    ])
}

/// Differential of `g` at `x` applied to a chart vector at `x`; the result is
/// expressed in the canonical chart of `g·x`.
pub fn push_tangent(g: &GroupElem, x: &Flag, v: &ChartVector) -> Result<ChartVector> {
    let c = flag_space::chart_coords_in(x, v.chart)?.coords;
    let (m, d) = chart_vectors(v.chart, &c);
    let (dm, dd) = {
        let (i, j) = v.chart.others();
        let mut dm = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
        dm[i] = v.v[0].clone();
        dm[j] = v.v[1].clone();
        let mut dd = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
        dd[v.chart.free()] = v.v[2].clone();
        (dm, dd)
    };
    let gm = g.matrix();
    let y = act(g, x);
    let target = canonical_chart(&y);
    let out = pair_velocity(target, &gm.apply(&m), &gm.apply(&d), &gm.apply(&dm), &gm.apply(&dd))?;
    Ok(ChartVector { chart: target, v: out })
}

/// Pushes a tangent line through the differential of `g`.
pub fn push_line(g: &GroupElem, x: &Flag, l: &TangentLine) -> Result<TangentLine> {
    let v = ChartVector { chart: l.chart, v: l.dir.clone() };
    push_tangent(g, x, &v)?.line().ok_or(Error::Singular)
}

/// Pushes a whole frame through `g`.
pub fn push_frame(g: &GroupElem, f: &FramedPoint) -> Result<FramedPoint> {
    Ok(FramedPoint {
        flag: act(g, &f.flag),
        e_alpha: push_line(g, &f.flag, &f.e_alpha)?,
        e_beta: push_line(g, &f.flag, &f.e_beta)?,
        e_c: push_line(g, &f.flag, &f.e_c)?,
    })
}

/// True when the α- and β-lines of a frame coincide with the standard
/// α/β-directions of the flag variety.
pub fn compatible_with_standard(f: &FramedPoint) -> bool {
    flag_space::alpha_direction(&f.flag).line().as_ref() == Some(&f.e_alpha)
        && flag_space::beta_direction(&f.flag).line().as_ref() == Some(&f.e_beta)
}

/// Float vector fields of a model frame in a fixed chart: at chart
/// coordinates `c`, the value is `(Ad(h(c))v)†(c)` with `h(c)` the
/// transporter of the flag `c`. Returns `None` outside the model.
pub fn model_field_f64(model: Model, chart: Chart, which: usize, c: &Vec3<f64>) -> Option<Vec3<f64>> {
    let (m, d) = chart_vectors(chart, c);
    if m[2] == 0.0 {
        return None;
    }
    let p = m.map(|a| a / m[2]);
    // Direction point of D on the line at infinity.
    let r = d[2] / m[2];
    let dir = [d[0] - r * m[0], d[1] - r * m[1]];
    let h: Mat3<f64> = match model {
        Model::T => {
            let delta = p[0] * dir[1] - p[1] * dir[0];
            if delta == 0.0 {
                return None;
            }
            Mat3([
                [p[0], dir[0] / delta, 0.0],
                [p[1], dir[1] / delta, 0.0],
                [0.0, 0.0, 1.0],
            ])
        }
        Model::A => {
            if dir[1] == 0.0 {
                return None;
            }
            let s = dir[0] / dir[1];
            Mat3([[1.0, s, p[0]], [0.0, 1.0, p[1]], [0.0, 0.0, 1.0]])
        }
    };
    let hinv = h.inverse()?;
    let v = base_generators(model)[which].to_f64();
    let adv = &(&h * &v) * &hinv;
    Some(flag_space::chart_velocity(&adv, chart, c))
}

/// The fields `X^α = e₃`, `X^β = (z, 1, 0)`, `X^c = e₁` on the affine chart
/// coordinates `(x, y, z)` of `Y_a` (point `(x, y)`, slope `z`).
pub fn central_flow_fields() -> [PolyField; 3] {
    let c = |v: [i64; 3]| PolyField::constant(v.map(scalar::int));
    [
        c([0, 0, 1]),
        PolyField([Poly::var(2), Poly::constant(Scalar::one()), Poly::zero()]),
        c([1, 0, 0]),
    ]
}

/// Closed-form flow of `X^α`.
pub fn flow_alpha(p: &Vec3<Scalar>, t: &Scalar) -> Vec3<Scalar> {
    [p[0].clone(), p[1].clone(), &p[2] + t]
}

/// Closed-form flow of `X^β`.
pub fn flow_beta(p: &Vec3<Scalar>, t: &Scalar) -> Vec3<Scalar> {
    [&p[0] + t * &p[2], &p[1] + t, p[2].clone()]
}

/// Evaluates both commutator identities at `(p, t)`:
/// `φ_β^{−t}∘φ_α^{−t}∘φ_β^{t}∘φ_α^{t}(p) = p + t²e₁` and
/// `φ_β^{t}∘φ_α^{−t}∘φ_β^{−t}∘φ_α^{t}(p) = p − t²e₁`.
pub fn commutator_identity_check(p: &Vec3<Scalar>, t: &Scalar) -> (bool, bool) {
    let nt = -t.clone();
    let t2 = t * t;
    let plus = flow_beta(&flow_alpha(&flow_beta(&flow_alpha(p, t), t), &nt), &nt);
    let minus = flow_beta(&flow_alpha(&flow_beta(&flow_alpha(p, t), &nt), &nt), t);
    let want_plus = [&p[0] + &t2, p[1].clone(), p[2].clone()];
    let want_minus = [&p[0] - &t2, p[1].clone(), p[2].clone()];
    (plus == want_plus, minus == want_minus)
}

/// The automorphism of `heis` with matrix `[[a, a', 0], [b, b', 0], [c, c', ab'−ba']]`
/// in the basis `(X, Y, Z)`, sending `(X, Y)` to `(v, w)`.
pub fn flat_structure_iso(v: &LieVec, w: &LieVec) -> Result<Mat3<Scalar>> {
    let coords = |u: &LieVec| -> Result<[Scalar; 3]> {
        let expected = &(&heis_x().scale(u.at(0, 1)) + &heis_y().scale(u.at(1, 2))) + &heis_z().scale(u.at(0, 2));
        if expected != *u {
            return Err(Error::Membership("vector is not in heis".into()));
        }
        Ok([u.at(0, 1).clone(), u.at(1, 2).clone(), u.at(0, 2).clone()])
    };
    let [a, b, c] = coords(v)?;
    let [a2, b2, c2] = coords(w)?;
    let det = &a * &b2 - &b * &a2;
    if det.is_zero() {
        return Err(Error::NotContact("ab' − ba' = 0".into()));
    }
    let z = Scalar::zero;
    Ok(Mat3([[a, a2, z()], [b, b2, z()], [c, c2, det]]))
}

/// Applies a matrix in the basis `(X, Y, Z)` to an element of `heis`.
pub fn heis_apply(m: &Mat3<Scalar>, u: &LieVec) -> LieVec {
    let c = m.apply(&[u.at(0, 1).clone(), u.at(1, 2).clone(), u.at(0, 2).clone()]);
    &(&heis_x().scale(&c[0]) + &heis_y().scale(&c[1])) + &heis_z().scale(&c[2])
}

/// True when `m` (basis `(X, Y, Z)`) preserves the bracket of `heis`.
pub fn is_heis_automorphism(m: &Mat3<Scalar>) -> bool {
    if m.det().is_zero() {
        return false;
    }
    let b = [heis_x(), heis_y(), heis_z()];
    (0..3).all(|i| {
        (0..3).all(|j| heis_apply(m, &bracket(&b[i], &b[j])) == bracket(&heis_apply(m, &b[i]), &heis_apply(m, &b[j])))
    })
}

/// An affine map `v ↦ Lv + t` of `R³`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffineMap {
    /// Linear part.
    pub linear: Mat3<Scalar>,
    /// Translation part.
    pub translation: Vec3<Scalar>,
}

impl AffineMap {
    /// The identity map.
    pub fn identity() -> Self {
        AffineMap {
            linear: Mat3::identity(),
            translation: [Scalar::zero(), Scalar::zero(), Scalar::zero()],
        }
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, o: &AffineMap) -> AffineMap {
        let lt = self.linear.apply(&o.translation);
        AffineMap {
            linear: &self.linear * &o.linear,
            translation: [0, 1, 2].map(|i| &lt[i] + &self.translation[i]),
        }
    }

    /// Image of a point.
    pub fn apply(&self, v: &Vec3<Scalar>) -> Vec3<Scalar> {
        let lv = self.linear.apply(v);
        [0, 1, 2].map(|i| &lv[i] + &self.translation[i])
    }
}

/// The morphism `Θ: ([x,y,z], φ_{λ,μ}) ↦ [[λ,0,0],[0,μ,0],[0,μx,λμ]]·v + (x,y,z)`.
pub fn theta_affine(f: &HeisAffine) -> AffineMap {
    let (l, m) = (f.phi.lambda(), f.phi.mu());
    let z = Scalar::zero;
    AffineMap {
        linear: Mat3([
            [l.clone(), z(), z()],
            [z(), m.clone(), z()],
            [z(), m * &f.g.x, l * m],
        ]),
        translation: [f.g.x.clone(), f.g.y.clone(), f.g.z.clone()],
    }
}

/// Chart point of a flag of `Y_a` in the affine chart (convenience).
pub fn affine_coords(x: &Flag) -> Result<Vec3<Scalar>> {
    Ok(flag_space::chart_coords_in(x, Chart::AFFINE)?.coords)
}

/// Chart coordinates of a flag in its canonical chart, as floats.
pub fn canonical_coords_f64(x: &Flag) -> (Chart, Vec3<f64>) {
    let p = chart_coords(x);
    (p.chart, flag_space::chart_point_f64(&p))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::contact_test;
    use crate::scalar::{frac, int};

    #[test]
    fn base_frames() {
        let ft = frame_at(&base_point_t(), Model::T).unwrap();
        let e = flag_space::fundamental_vector(&sl2_h(), &base_point_t()).line().unwrap();
        assert_eq!(ft.e_c, e);
        assert!(compatible_with_standard(&ft));
        let fa = frame_at(&base_point_a(), Model::A).unwrap();
        assert_eq!(fa.e_c.dir, [int(1), int(0), int(0)]);
        assert!(compatible_with_standard(&fa));
    }

    #[test]
    fn boundary_rejected() {
        let x = Flag::from_int_vectors([1, 0, 0], [0, 1, 0]).unwrap();
        assert_eq!(frame_at(&x, Model::A), Err(Error::NotInterior("a")));
    }

    #[test]
    fn orbit_inverses() {
        let s: Mat2 = [[int(2), int(1)], [int(3), int(2)]];
        let x = orbit_map_t(&s).unwrap();
        assert_eq!(orbit_inverse_t(&x).unwrap(), s);
        let h = HeisElem::new(frac(1, 2), int(3), int(-1));
        assert_eq!(orbit_inverse_a(&orbit_map_a(&h)).unwrap(), h);
    }

    #[test]
    fn diagonal_equivariance_a() {
        let (l, m) = (int(2), int(3));
        let p = GroupElem::new(Mat3::diag([l.clone(), (&l * &m).recip(), m.clone()])).unwrap();
        let f = equivariance_a(&p).unwrap();
        assert_eq!(f.g, HeisElem::identity());
        assert_eq!(f.phi, HeisAuto::new(&l * &l * &m, (&l * &m * &m).recip()).unwrap());
        assert_eq!(equivariance_a_inverse(&f), p);
    }

    #[test]
    fn theta_identity_and_display() {
        assert_eq!(theta_affine(&HeisAffine::identity()), AffineMap::identity());
    }

    #[test]
    fn flat_iso_examples() {
        let v = &heis_x() + &heis_z();
        let m = flat_structure_iso(&v, &heis_y()).unwrap();
        assert_eq!(m, Mat3::from_ints([[1, 0, 0], [0, 1, 0], [1, 0, 1]]));
        assert!(is_heis_automorphism(&m));
        assert_eq!(flat_structure_iso(&heis_x(), &heis_y()).unwrap(), Mat3::identity());
        assert!(matches!(flat_structure_iso(&heis_x(), &heis_z()), Err(Error::NotContact(_))));
    }

    #[test]
    fn commutator_identity_unit() {
        let p = [int(0), int(0), int(0)];
        assert_eq!(commutator_identity_check(&p, &int(1)), (true, true));
        let q = flow_beta(&flow_alpha(&flow_beta(&flow_alpha(&p, &int(1)), &int(1)), &int(-1)), &int(-1));
        assert_eq!(q, [int(1), int(0), int(0)]);
    }

    #[test]
    fn central_fields_match_model_a_frame() {
        let h = HeisElem::new(frac(2, 3), int(-1), int(4));
        let x = orbit_map_a(&h);
        let f = frame_at(&x, Model::A).unwrap();
        let c = affine_coords(&x).unwrap();
        let fields = central_flow_fields();
        for (field, line) in fields.iter().zip([&f.e_alpha, &f.e_beta, &f.e_c]) {
            let v = ChartVector { chart: Chart::AFFINE, v: field.eval_exact(&c) };
            assert_eq!(v.line().as_ref(), Some(line));
        }
        assert_eq!(contact_test(&fields[0], &fields[1], &c), Ok(true));
    }

    #[test]
    fn push_frame_matches_transport() {
        let s: Mat2 = [[int(1), int(2)], [int(1), int(3)]];
        let x = orbit_map_t(&s).unwrap();
        let g = iota(&[[int(2), int(1)], [int(0), frac(1, 3)]]).unwrap();
        let pushed = push_frame(&g, &frame_at(&x, Model::T).unwrap()).unwrap();
        assert_eq!(pushed, frame_at(&act(&g, &x), Model::T).unwrap());
    }
}
