//! The flag variety `𝐗` of pointed projective lines `(m, D)`, `m ∈ D ⊂ RP²`.
//!
//! Points are stored as canonical homogeneous vectors, lines as canonical
//! normal covectors, so incidence is one exact dot product. `PGL(3)` acts by
//! `m ↦ g·m` on points and by the inverse transpose on covectors.
//!
//! Tangent vectors are expressed in affine charts. The chart with axis `k`
//! normalizes `m_k = 1` and reads the direction of `D` as its point `d` on the
//! line `{x_k = 0}`, normalized by a pivot coordinate. The chart with axis 2
//! and pivot 1 is the affine chart `φ_a` of `Ω_a = {m ∉ [e₁, e₂]}`, in which a
//! flag is `(x, y, s) ↦ ([x, y, 1], [(x, y, 1), (s, 1, 0)])`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lie_core::{GroupElem, LieVec, Subalgebra};
use crate::linalg::{self, QMatrix};
use crate::matrix::{cross, dot, is_zero_vec, Field, Mat3, Vec3};
use crate::scalar::{self, Scalar};

/// Rescales a nonzero vector so its first nonzero coordinate is `1`.
fn normalize(v: &[Scalar]) -> Option<Vec<Scalar>> {
    let lead = v.iter().find(|x| !x.is_zero())?.clone();
    Some(v.iter().map(|x| x / &lead).collect())
}

fn to_vec3(v: Vec<Scalar>) -> Vec3<Scalar> {
    let [a, b, c]: [Scalar; 3] = v.try_into().expect("three coordinates");
    [a, b, c]
}

/// A point of RP² in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ProjPoint(Vec3<Scalar>);

impl ProjPoint {
    /// Canonical point through a nonzero vector.
    pub fn new(v: Vec3<Scalar>) -> Result<Self> {
        normalize(&v).map(|n| ProjPoint(to_vec3(n))).ok_or(Error::ZeroVector)
    }

    /// Point from integer coordinates.
    pub fn from_ints(v: [i64; 3]) -> Result<Self> {
        ProjPoint::new(crate::matrix::ivec(v))
    }

    /// `[e_{i+1}]`.
    pub fn basis(i: usize) -> Self {
        let mut v = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
        v[i] = Scalar::one();
        ProjPoint(v)
    }

    /// Canonical homogeneous coordinates.
    pub fn coords(&self) -> &Vec3<Scalar> {
        &self.0
    }
}

/// A line of RP² stored by its canonical normal covector.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ProjLine(Vec3<Scalar>);

impl ProjLine {
    /// Line with the given nonzero normal covector.
    pub fn from_normal(n: Vec3<Scalar>) -> Result<Self> {
        normalize(&n).map(|n| ProjLine(to_vec3(n))).ok_or(Error::ZeroVector)
    }

    /// The line spanned by two independent vectors.
    pub fn through(p: &Vec3<Scalar>, q: &Vec3<Scalar>) -> Result<Self> {
        ProjLine::from_normal(cross(p, q)).map_err(|_| Error::InvalidArgument("dependent vectors".into()))
    }

    /// Line from integer normal coordinates.
    pub fn from_normal_ints(n: [i64; 3]) -> Result<Self> {
        ProjLine::from_normal(crate::matrix::ivec(n))
    }

    /// The line at infinity `[e₁, e₂]` of the affine chart.
    pub fn at_infinity() -> Self {
        ProjLine::from_normal_ints([0, 0, 1]).expect("nonzero")
    }

    /// Canonical normal covector.
    pub fn normal(&self) -> &Vec3<Scalar> {
        &self.0
    }

    /// Exact incidence test.
    pub fn contains(&self, p: &ProjPoint) -> bool {
        dot(&self.0, &p.0).is_zero()
    }

    /// A basis of the 2-plane in R³ corresponding to the line.
    pub fn plane_basis(&self) -> [Vec3<Scalar>; 2] {
        let ns = QMatrix::from_rows(&[self.0.to_vec()]).nullspace();
        [to_vec3(ns[0].clone()), to_vec3(ns[1].clone())]
    }
}

/// A pointed projective line `(m, D)` with `m ∈ D`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Flag {
    m: ProjPoint,
    d: ProjLine,
}

impl Flag {
    /// Builds a flag, checking incidence exactly.
    pub fn new(m: ProjPoint, d: ProjLine) -> Result<Self> {
        if !d.contains(&m) {
            return Err(Error::NotIncident);
        }
        Ok(Flag { m, d })
    }

    /// The flag `([p], [p, q])`.
    pub fn from_vectors(p: &Vec3<Scalar>, q: &Vec3<Scalar>) -> Result<Self> {
        Flag::new(ProjPoint::new(p.clone())?, ProjLine::through(p, q)?)
    }

    /// Flag from integer vectors `([p], [p, q])`.
    pub fn from_int_vectors(p: [i64; 3], q: [i64; 3]) -> Result<Self> {
        Flag::from_vectors(&crate::matrix::ivec(p), &crate::matrix::ivec(q))
    }

    /// The point.
    pub fn point(&self) -> &ProjPoint {
        &self.m
    }

    /// The line.
    pub fn line(&self) -> &ProjLine {
        &self.d
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = &self.m.0;
        let n = &self.d.0;
        write!(f, "([{}, {}, {}], n=[{}, {}, {}])", p[0], p[1], p[2], n[0], n[1], n[2])
    }
}

/// Base point `o = ([e₁], [e₁, e₂])`, stabilized by `P_min`.
pub fn base_point() -> Flag {
    Flag::from_int_vectors([1, 0, 0], [0, 1, 0]).expect("valid flag")
}

/// Base point `o_t = ([1,0,1], [(1,0,1), e₂])` of the model `Y_t`.
pub fn base_point_t() -> Flag {
    Flag::from_int_vectors([1, 0, 1], [0, 1, 0]).expect("valid flag")
}

/// Base point `o_a = ([e₃], [e₃, e₂])` of the model `Y_a`.
pub fn base_point_a() -> Flag {
    Flag::from_int_vectors([0, 0, 1], [0, 1, 0]).expect("valid flag")
}

/// Action of `PGL(3)`: points by `g`, normal covectors by `(gᵀ)⁻¹`.
pub fn act(g: &GroupElem, x: &Flag) -> Flag {
    let m = g.matrix().apply(&x.m.0);
    // The adjugate is a nonzero multiple of the inverse; its transpose acts on covectors.
    let n = g.matrix().adjugate().transpose().apply(&x.d.0);
    Flag {
        m: ProjPoint::new(m).expect("invertible image of nonzero vector"),
        d: ProjLine::from_normal(n).expect("invertible image of nonzero vector"),
    }
}

/// The flip `(m, D) ↦ (D^⊥, m^⊥)` for the standard inner product.
pub fn flip(x: &Flag) -> Flag {
    Flag {
        m: ProjPoint(x.d.0.clone()),
        d: ProjLine(x.m.0.clone()),
    }
}

/// A point of RP¹ in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ProjPoint1([Scalar; 2]);

impl ProjPoint1 {
    /// Canonical point through a nonzero 2-vector.
    pub fn new(v: [Scalar; 2]) -> Result<Self> {
        let n = normalize(&v).ok_or(Error::ZeroVector)?;
        Ok(ProjPoint1([n[0].clone(), n[1].clone()]))
    }

    /// Canonical coordinates.
    pub fn coords(&self) -> &[Scalar; 2] {
        &self.0
    }
}

/// A pointed affine line of R²: a point and a direction.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AffinePointedLine {
    /// The point.
    pub point: [Scalar; 2],
    /// The direction of the line.
    pub direction: ProjPoint1,
}

/// The affine chart `φ_a`: a flag with `m ∉ [e₁, e₂]` becomes the point
/// `m ∩ {z = 1}` and the direction of the affine line `D ∩ {z = 1}`.
pub fn affine_chart(x: &Flag) -> Result<AffinePointedLine> {
    let m = &x.m.0;
    if m[2].is_zero() {
        return Err(Error::AffineBoundary);
    }
    let n = &x.d.0;
    Ok(AffinePointedLine {
        point: [&m[0] / &m[2], &m[1] / &m[2]],
        direction: ProjPoint1::new([-n[1].clone(), n[0].clone()])?,
    })
}

/// Inverse of [`affine_chart`].
pub fn affine_chart_inverse(l: &AffinePointedLine) -> Flag {
    let p = [l.point[0].clone(), l.point[1].clone(), Scalar::one()];
    let d = [l.direction.0[0].clone(), l.direction.0[1].clone(), Scalar::zero()];
    Flag::from_vectors(&p, &d).expect("affine point and direction are independent")
}

/// An affine chart of `𝐗`: `axis` is the homogeneous coordinate of `m`
/// normalized to one; `pivot` is the coordinate of the direction point that
/// is normalized to one.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Chart {
    /// Coordinate of `m` set to one.
    pub axis: usize,
    /// Coordinate of the direction point set to one.
    pub pivot: usize,
}

impl Chart {
    /// The chart `φ_a` with direction `(s, 1, 0)`.
    pub const AFFINE: Chart = Chart { axis: 2, pivot: 1 };

    /// The two coordinates other than the axis, in increasing order.
    pub fn others(&self) -> (usize, usize) {
        match self.axis {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        }
    }

    /// The non-pivot coordinate among [`Chart::others`].
    pub fn free(&self) -> usize {
        let (i, j) = self.others();
        if self.pivot == i {
            j
        } else {
            i
        }
    }

    fn validate(&self) -> Result<()> {
        let (i, j) = self.others();
        if self.axis > 2 || (self.pivot != i && self.pivot != j) {
            return Err(Error::InvalidArgument(format!("invalid chart {self:?}")));
        }
        Ok(())
    }
}

/// Coordinates of a flag in a chart.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ChartPoint {
    /// The chart.
    pub chart: Chart,
    /// `(u₁, u₂, s)`: point coordinates and direction slope.
    pub coords: Vec3<Scalar>,
}

/// A tangent vector (or direction) expressed in a chart.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ChartVector {
    /// The chart.
    pub chart: Chart,
    /// Components along `(∂u₁, ∂u₂, ∂s)`.
    pub v: Vec3<Scalar>,
}

impl ChartVector {
    /// True when the vector vanishes.
    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.v)
    }

    /// The line spanned by the vector in canonical form (`None` for zero).
    pub fn line(&self) -> Option<TangentLine> {
        normalize(&self.v).map(|n| TangentLine {
            chart: self.chart,
            dir: to_vec3(n),
        })
    }
}

/// A tangent line in canonical form (first nonzero component equal to one).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TangentLine {
    /// The chart.
    pub chart: Chart,
    /// Canonical direction vector.
    pub dir: Vec3<Scalar>,
}

/// Direction point of `D` on the line `{x_k = 0}`.
fn direction_point(d: &ProjLine, axis: usize) -> Vec3<Scalar> {
    let mut e = [Scalar::zero(), Scalar::zero(), Scalar::zero()];
    e[axis] = Scalar::one();
    cross(&d.0, &e)
}

/// The canonical chart of a flag: axis 2 if possible, then 0, then 1; pivot
/// the larger remaining index if possible.
pub fn canonical_chart(x: &Flag) -> Chart {
    let m = &x.m.0;
    let axis = [2, 0, 1]
        .into_iter()
        .find(|&k| !m[k].is_zero())
        .expect("nonzero point");
    let dp = direction_point(&x.d, axis);
    let (i, j) = Chart { axis, pivot: 0 }.others();
    let pivot = if !dp[j].is_zero() { j } else { i };
    Chart { axis, pivot }
}

/// Coordinates of `x` in the given chart.
pub fn chart_coords_in(x: &Flag, chart: Chart) -> Result<ChartPoint> {
    chart.validate()?;
    let m = &x.m.0;
    let k = chart.axis;
    if m[k].is_zero() {
        return Err(Error::ChartDomain(format!("point coordinate {k} vanishes")));
    }
    let dp = direction_point(&x.d, k);
    let (p, q) = (chart.pivot, chart.free());
    if dp[p].is_zero() {
        return Err(Error::ChartDomain(format!("direction coordinate {p} vanishes")));
    }
    let (i, j) = chart.others();
    Ok(ChartPoint {
        chart,
        coords: [&m[i] / &m[k], &m[j] / &m[k], &dp[q] / &dp[p]],
    })
}

/// Coordinates of `x` in its canonical chart.
pub fn chart_coords(x: &Flag) -> ChartPoint {
    chart_coords_in(x, canonical_chart(x)).expect("canonical chart contains the flag")
}

/// Homogeneous point and direction vectors of chart coordinates.
pub fn chart_vectors<T: Field>(chart: Chart, c: &Vec3<T>) -> (Vec3<T>, Vec3<T>) {
    let (i, j) = chart.others();
    let mut m = [T::zero(), T::zero(), T::zero()];
    m[chart.axis] = T::one();
    m[i] = c[0].clone();
    m[j] = c[1].clone();
    let mut d = [T::zero(), T::zero(), T::zero()];
    d[chart.pivot] = T::one();
    d[chart.free()] = c[2].clone();
    (m, d)
}

/// The flag with the given chart coordinates.
pub fn from_chart(p: &ChartPoint) -> Flag {
    let (m, d) = chart_vectors(p.chart, &p.coords);
    Flag::from_vectors(&m, &d).expect("chart vectors are independent")
}

/// Chart coordinates of `g·x` computed in the chart of `x`, or `None` if the
/// image leaves the chart. Works over any field (exact or float).
pub fn act_in_chart<T: Field>(g: &Mat3<T>, chart: Chart, c: &Vec3<T>) -> Option<Vec3<T>> {
    let (m, d) = chart_vectors(chart, c);
    let gm = g.apply(&m);
    let gd = g.apply(&d);
    let k = chart.axis;
    if gm[k].is_zero() {
        return None;
    }
    let r = gd[k].clone() / gm[k].clone();
    let dn: Vec3<T> = [0, 1, 2].map(|a| gd[a].clone() - r.clone() * gm[a].clone());
    let (p, q) = (chart.pivot, chart.free());
    if dn[p].is_zero() {
        return None;
    }
    let (i, j) = chart.others();
    Some([
        gm[i].clone() / gm[k].clone(),
        gm[j].clone() / gm[k].clone(),
        dn[q].clone() / dn[p].clone(),
    ])
}

/// Closed-form velocity `d/dt|₀ chart(exp(tv)·x)` at chart coordinates `c`.
///
/// With `m` normalized by `m_k = 1` and the direction point `d` by `d_k = 0`,
/// `d_p = 1`: `m' = vm`, `d' = vd − (vd)_k·m`, and each chart coordinate is a
/// ratio whose derivative follows from the quotient rule.
pub fn chart_velocity<T: Field>(v: &Mat3<T>, chart: Chart, c: &Vec3<T>) -> Vec3<T> {
    let (m, d) = chart_vectors(chart, c);
    let vm = v.apply(&m);
    let vd = v.apply(&d);
    let k = chart.axis;
    let dd: Vec3<T> = [0, 1, 2].map(|a| vd[a].clone() - vd[k].clone() * m[a].clone());
    let (i, j) = chart.others();
    let (p, q) = (chart.pivot, chart.free());
    [
        vm[i].clone() - c[0].clone() * vm[k].clone(),
        vm[j].clone() - c[1].clone() * vm[k].clone(),
        dd[q].clone() - c[2].clone() * dd[p].clone(),
    ]
}

/// Fundamental vector `v†(x)` in the canonical chart of `x`.
pub fn fundamental_vector(v: &LieVec, x: &Flag) -> ChartVector {
    let p = chart_coords(x);
    ChartVector {
        chart: p.chart,
        v: chart_velocity(v.matrix(), p.chart, &p.coords),
    }
}

/// Fundamental vector `v†(x)` in a prescribed chart.
pub fn fundamental_vector_in(v: &LieVec, x: &Flag, chart: Chart) -> Result<ChartVector> {
    let p = chart_coords_in(x, chart)?;
    Ok(ChartVector {
        chart,
        v: chart_velocity(v.matrix(), chart, &p.coords),
    })
}

/// The α-direction at `x` (the point is fixed, the line turns), canonical chart.
pub fn alpha_direction(x: &Flag) -> ChartVector {
    ChartVector {
        chart: canonical_chart(x),
        v: [Scalar::zero(), Scalar::zero(), Scalar::one()],
    }
}

/// The β-direction at `x` (the line is fixed, the point slides), canonical chart.
pub fn beta_direction(x: &Flag) -> ChartVector {
    let p = chart_coords(x);
    let (_, d) = chart_vectors(p.chart, &p.coords);
    let (i, j) = p.chart.others();
    ChartVector {
        chart: p.chart,
        v: [d[i].clone(), d[j].clone(), Scalar::zero()],
    }
}

/// True when `v ∈ sl(3)` fixes `x` infinitesimally.
pub fn is_stabilized(v: &LieVec, x: &Flag) -> bool {
    let vm = v.matrix().apply(&x.m.0);
    let vn = v.matrix().transpose().apply(&x.d.0);
    is_zero_vec(&cross(&vm, &x.m.0)) && is_zero_vec(&cross(&vn, &x.d.0))
}

/// Isotropy `{v ∈ h : v†(x) = 0}` of a subalgebra at a flag, by exact elimination.
pub fn isotropy(h: &Subalgebra, x: &Flag) -> Subalgebra {
    // Each basis vector contributes a column of the six linear conditions
    // vm × m = 0 and vᵀn × n = 0.
    let cols: Vec<Vec<Scalar>> = h
        .basis()
        .iter()
        .map(|b| {
            let vm = b.matrix().apply(&x.m.0);
            let vn = b.matrix().transpose().apply(&x.d.0);
            cross(&vm, &x.m.0)
                .into_iter()
                .chain(cross(&vn, &x.d.0))
                .collect()
        })
        .collect();
    if cols.is_empty() {
        return Subalgebra::span(&[]);
    }
    let vecs: Vec<LieVec> = QMatrix::from_columns(&cols)
        .nullspace()
        .iter()
        .map(|c| {
            h.basis()
                .iter()
                .zip(c)
                .fold(LieVec::zero(), |acc, (b, k)| &acc + &b.scale(k))
        })
        .collect();
    Subalgebra::span(&vecs)
}

/// Dimension of the orbit of the local group of `h` through `x`.
pub fn orbit_dimension(h: &Subalgebra, x: &Flag) -> usize {
    h.dim() - isotropy(h, x).dim()
}

/// Rank of the fundamental vectors of a family at `x` in the canonical chart.
pub fn fundamental_rank(vs: &[LieVec], x: &Flag) -> usize {
    let rows: Vec<Vec<Scalar>> = vs.iter().map(|v| fundamental_vector(v, x).v.to_vec()).collect();
    linalg::rank_of(&rows)
}

/// The two homogeneous models.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Model {
    /// `Y_t = Ω_a ∖ S_{α,β}([e₃])`, homogeneous under `GL(2)`.
    T,
    /// `Y_a = Ω_a ∖ S_{α,β}([e₁])`, homogeneous under `P_min`.
    A,
}

impl Model {
    /// Short name.
    pub fn name(&self) -> &'static str {
        match self {
            Model::T => "t",
            Model::A => "a",
        }
    }

    /// The distinguished point `m_t = [e₃]` or `m_a = [e₁]`.
    pub fn special_point(&self) -> ProjPoint {
        match self {
            Model::T => ProjPoint::basis(2),
            Model::A => ProjPoint::basis(0),
        }
    }

    /// Base point of the model.
    pub fn base_point(&self) -> Flag {
        match self {
            Model::T => base_point_t(),
            Model::A => base_point_a(),
        }
    }
}

/// Position of a flag with respect to a model.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Region {
    /// Inside the open model.
    Interior,
    /// First boundary stratum (pointed lines through the special point).
    G1,
    /// Second boundary stratum (pointed lines pointed on the line at infinity).
    G2,
    /// The lower-dimensional rest of the boundary.
    DeepBoundary,
}

/// `x ∈ Ω_a`, i.e. `m ∉ [e₁, e₂]`.
pub fn in_omega_a(x: &Flag) -> bool {
    !x.m.0[2].is_zero()
}

/// `x ∈ S_{α,β}(p)`: the line of `x` passes through `p`.
pub fn in_s_alpha_beta(x: &Flag, p: &ProjPoint) -> bool {
    x.d.contains(p)
}

/// `x ∈ S_{β,α}(l)`: the point of `x` lies on `l`.
pub fn in_s_beta_alpha(x: &Flag, l: &ProjLine) -> bool {
    l.contains(&x.m)
}

/// `x ∈ 𝒞^α(p)`: the point of `x` is `p`.
pub fn in_alpha_circle_of(x: &Flag, p: &ProjPoint) -> bool {
    x.m == *p
}

/// `x ∈ 𝒞^β(l)`: the line of `x` is `l`.
pub fn in_beta_circle_of(x: &Flag, l: &ProjLine) -> bool {
    x.d == *l
}

/// `x` lies on the chain `{(m, [m, p]) : m ∈ l}` for `p ∉ l`.
pub fn in_chain(x: &Flag, p: &ProjPoint, l: &ProjLine) -> bool {
    l.contains(&x.m) && x.d.contains(p) && x.m != *p
}

/// True when `x` is interior to the model.
pub fn is_interior(x: &Flag, model: Model) -> bool {
    in_omega_a(x) && !in_s_alpha_beta(x, &model.special_point())
}

/// Classifies a flag into the interior, the two codimension-one boundary
/// strata, or the deep boundary of a model.
pub fn region_classify(x: &Flag, model: Model) -> Region {
    if is_interior(x, model) {
        return Region::Interior;
    }
    let p = model.special_point();
    let inf = ProjLine::at_infinity();
    let s1 = in_s_alpha_beta(x, &p);
    let s2 = in_s_beta_alpha(x, &inf);
    let circ_a = in_alpha_circle_of(x, &p);
    let circ_b = in_beta_circle_of(x, &inf);
    let deep = match model {
        Model::T => circ_a || circ_b || in_chain(x, &p, &inf),
        Model::A => circ_a || circ_b,
    };
    if deep {
        Region::DeepBoundary
    } else if s1 {
        Region::G1
    } else {
        debug_assert!(s2);
        Region::G2
    }
}

/// The two circle families through a flag.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum CircleKind {
    /// `𝒞^α(x)`: fixed point, turning line.
    Alpha,
    /// `𝒞^β(x)`: fixed line, sliding point.
    Beta,
}

/// Intersection of a circle with the complement of a model.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum CircleBoundary {
    /// Finitely many boundary flags (sorted, without repetition).
    Points(Vec<Flag>),
    /// The whole circle lies outside the model.
    Full,
}

/// Point of the circle with projective parameter `[s : u]`.
pub fn circle_point(x: &Flag, kind: CircleKind, s: &Scalar, u: &Scalar) -> Result<Flag> {
    match kind {
        CircleKind::Alpha => {
            let [n1, n2] = alpha_circle_normals(x);
            let n: Vec3<Scalar> = [0, 1, 2].map(|a| s * &n1[a] + u * &n2[a]);
            Flag::new(x.m.clone(), ProjLine::from_normal(n)?)
        }
        CircleKind::Beta => {
            let [w1, w2] = x.d.plane_basis();
            let m: Vec3<Scalar> = [0, 1, 2].map(|a| s * &w1[a] + u * &w2[a]);
            Flag::new(ProjPoint::new(m)?, x.d.clone())
        }
    }
}

fn alpha_circle_normals(x: &Flag) -> [Vec3<Scalar>; 2] {
    let ns = QMatrix::from_rows(&[x.m.0.to_vec()]).nullspace();
    [to_vec3(ns[0].clone()), to_vec3(ns[1].clone())]
}

/// A boundary condition restricted to a circle.
enum OnCircle {
    /// Holds at every point of the circle.
    Always,
    /// Holds nowhere on the circle.
    Never,
    /// Holds exactly at the parameter `[s : u]`.
    At(Scalar, Scalar),
}

/// The condition `s·c₁ + u·c₂ = 0` on the circle parameter.
fn linear_condition(c1: Scalar, c2: Scalar) -> OnCircle {
    if c1.is_zero() && c2.is_zero() {
        OnCircle::Always
    } else {
        OnCircle::At(c2, -c1)
    }
}

/// A condition that does not depend on the circle parameter.
fn constant_condition(holds: bool) -> OnCircle {
    if holds {
        OnCircle::Always
    } else {
        OnCircle::Never
    }
}

/// All flags of the α- or β-circle through `x` that lie outside the model,
/// obtained by solving each boundary incidence condition on the circle's
/// projective parameter exactly.
pub fn circle_boundary_points(x: &Flag, kind: CircleKind, model: Model) -> CircleBoundary {
    let p = model.special_point();
    let inf = ProjLine::at_infinity();
    // Complement of the model = S_{β,α}(D_∞) ∪ S_{α,β}(p); on a circle each
    // condition is either constant or linear in the projective parameter.
    let conditions = match kind {
        CircleKind::Alpha => {
            let [n1, n2] = alpha_circle_normals(x);
            [
                constant_condition(inf.contains(&x.m)),
                linear_condition(dot(&n1, &p.0), dot(&n2, &p.0)),
            ]
        }
        CircleKind::Beta => {
            let [w1, w2] = x.d.plane_basis();
            [
                linear_condition(dot(&inf.0, &w1), dot(&inf.0, &w2)),
                constant_condition(x.d.contains(&p)),
            ]
        }
    };
    let mut points = Vec::new();
    for cond in conditions {
        match cond {
            OnCircle::Always => return CircleBoundary::Full,
            OnCircle::At(s, u) => points.push(circle_point(x, kind, &s, &u).expect("nonzero parameter")),
            OnCircle::Never => {}
        }
    }
    points.sort();
    points.dedup();
    CircleBoundary::Points(points)
}

/// Converts an exact chart point to floating point.
pub fn chart_point_f64(p: &ChartPoint) -> Vec3<f64> {
    [0, 1, 2].map(|a| scalar::to_f64(&p.coords[a]))
}

/// Float chart velocity of a float matrix (convenience wrapper).
pub fn chart_velocity_f64(v: &Mat3<f64>, chart: Chart, c: &Vec3<f64>) -> Vec3<f64> {
    chart_velocity(v, chart, c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie_core::{heis_z, sl2_e};
    use crate::scalar::int;

    #[test]
    fn base_points_in_affine_chart() {
        let a = affine_chart(&base_point_a()).unwrap();
        assert_eq!(a.point, [int(0), int(0)]);
        assert_eq!(a.direction, ProjPoint1::new([int(0), int(1)]).unwrap());
        let t = affine_chart(&base_point_t()).unwrap();
        assert_eq!(t.point, [int(1), int(0)]);
        assert_eq!(t.direction, ProjPoint1::new([int(0), int(1)]).unwrap());
        assert_eq!(affine_chart(&base_point()), Err(Error::AffineBoundary));
    }

    #[test]
    fn flip_of_base_point() {
        let f = flip(&base_point());
        assert_eq!(f, Flag::from_int_vectors([0, 0, 1], [0, 1, 0]).unwrap());
    }

    #[test]
    fn central_vector_at_o_a() {
        let v = fundamental_vector(&heis_z(), &base_point_a());
        assert_eq!(v.chart, Chart::AFFINE);
        assert_eq!(v.v, [int(1), int(0), int(0)]);
    }

    #[test]
    fn e_is_alpha_at_o_t() {
        let x = base_point_t();
        let v = fundamental_vector(&sl2_e(), &x);
        assert_eq!(v.line(), alpha_direction(&x).line());
    }

    #[test]
    fn region_examples() {
        assert_eq!(region_classify(&base_point_t(), Model::T), Region::Interior);
        let g2 = Flag::from_int_vectors([0, 1, 0], [1, 0, 1]).unwrap();
        assert_eq!(region_classify(&g2, Model::T), Region::G2);
        assert_eq!(region_classify(&base_point(), Model::A), Region::DeepBoundary);
    }

    #[test]
    fn beta_circle_of_o_t() {
        let b = circle_boundary_points(&base_point_t(), CircleKind::Beta, Model::T);
        let expected = Flag::from_int_vectors([0, 1, 0], [1, 0, 1]).unwrap();
        assert_eq!(b, CircleBoundary::Points(vec![expected]));
    }

    #[test]
    fn circle_through_line_at_infinity_is_full() {
        let x = base_point();
        assert_eq!(circle_boundary_points(&x, CircleKind::Beta, Model::T), CircleBoundary::Full);
        assert_eq!(circle_boundary_points(&x, CircleKind::Alpha, Model::A), CircleBoundary::Full);
    }
}
