//! Seeded generation of random exact test data.
//!
//! Every draw goes through a [`Sampler`] built from a `u64` seed, so the
//! seed alone determines all sampled objects.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::NilMap;
use crate::flag_space::{Flag, Model};
use crate::lie_core::{GroupElem, LieVec};
use crate::models::{mat2_mul, orbit_map_a, orbit_map_t, HeisAffine, HeisAuto, HeisElem, Mat2, Sl2Pair};
use crate::scalar::{self, Scalar};

/// Deterministic random source for exact test data.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
}

/// The five parameters `(a, b, x, y, z)` of an element of `P_min`.
pub type PminParams = [Scalar; 5];

impl Sampler {
    /// Sampler seeded with `seed`.
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int_in(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// A rational `n/d` with `|n| ≤ 9`, `1 ≤ d ≤ 6`.
    pub fn rational(&mut self) -> Scalar {
        let n = self.int_in(-9, 9);
        let d = self.int_in(1, 6);
        scalar::frac(n, d)
    }

    /// A nonzero rational.
    pub fn nonzero(&mut self) -> Scalar {
        loop {
            let q = self.rational();
            if q != scalar::zero() {
                return q;
            }
        }
    }

    /// A positive rational.
    pub fn positive(&mut self) -> Scalar {
        let n = self.int_in(1, 9);
        let d = self.int_in(1, 6);
        scalar::frac(n, d)
    }

    /// A float uniform in `[lo, hi)`.
    pub fn f64_in(&mut self, lo: f64, hi: f64) -> f64 {
        self.rng.gen_range(lo..hi)
    }

    /// Parameters of a random element of `P_min`.
    pub fn pmin_params(&mut self) -> PminParams {
        [self.nonzero(), self.nonzero(), self.rational(), self.rational(), self.rational()]
    }

    /// A random element of `P_min`.
    pub fn pmin(&mut self) -> GroupElem {
        let [a, b, x, y, z] = self.pmin_params();
        GroupElem::pmin(&a, &b, &x, &y, &z).expect("nonzero diagonal")
    }

    /// A random element of `SL(2, Q)`: a product of two unipotent factors and
    /// a diagonal factor, with an optional sign flip.
    pub fn sl2(&mut self) -> Mat2 {
        let one = scalar::one;
        let zero = scalar::zero;
        let upper: Mat2 = [[one(), self.rational()], [zero(), one()]];
        let lower: Mat2 = [[one(), zero()], [self.rational(), one()]];
        let w = self.nonzero();
        let diag: Mat2 = [[w.clone(), zero()], [zero(), scalar::one() / w]];
        mat2_mul(&mat2_mul(&upper, &lower), &diag)
    }

    /// A random element of `Heis(3, Q)`.
    pub fn heis(&mut self) -> HeisElem {
        HeisElem::new(self.rational(), self.rational(), self.rational())
    }

    /// A random diagonal automorphism `φ_{λ,μ}`.
    pub fn heis_auto(&mut self) -> HeisAuto {
        HeisAuto::new(self.nonzero(), self.nonzero()).expect("nonzero multipliers")
    }

    /// A random element of `Heis(3) ⋊ 𝒜`.
    pub fn heis_affine(&mut self) -> HeisAffine {
        let g = self.heis();
        HeisAffine::new(g, self.heis_auto())
    }

    /// A random element of `SL(2) × A^±`.
    pub fn sl2_pair(&mut self) -> Sl2Pair {
        let g = self.sl2();
        Sl2Pair::new(g, self.nonzero()).expect("valid pair")
    }

    /// A random flag interior to `model`, produced through its orbit map.
    pub fn interior_flag(&mut self, model: Model) -> Flag {
        match model {
            Model::T => orbit_map_t(&self.sl2()).expect("SL(2) element"),
            Model::A => orbit_map_a(&self.heis()),
        }
    }

    /// A random traceless matrix with rational entries.
    pub fn lie_vec(&mut self) -> LieVec {
        let c: Vec<Scalar> = (0..8).map(|_| self.rational()).collect();
        LieVec::from_coords(&c)
    }

    /// A random element of `sl(3)` with float-friendly integer entries in `−3..=3`.
    pub fn small_lie_vec(&mut self) -> LieVec {
        let c: Vec<Scalar> = (0..8).map(|_| scalar::int(self.int_in(-3, 3))).collect();
        LieVec::from_coords(&c)
    }

    /// A random translation normalizing the lattice, paired with `m`.
    pub fn nil_map(&mut self, m: [[i64; 2]; 2]) -> NilMap {
        let g = [
            scalar::frac(self.int_in(-4, 4), 2),
            scalar::frac(self.int_in(-4, 4), 2),
            self.rational(),
        ];
        NilMap::new(m, g).expect("determinant-one matrix")
    }

    /// A random float point of `[0, 1)³`.
    pub fn unit_point(&mut self) -> [f64; 3] {
        [self.f64_in(0.0, 1.0), self.f64_in(0.0, 1.0), self.f64_in(0.0, 1.0)]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag_space::is_interior;
    use crate::models::mat2_det;

    #[test]
    fn seed_determines_draws() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        for _ in 0..20 {
            assert_eq!(a.pmin(), b.pmin());
        }
    }

    #[test]
    fn draws_are_valid() {
        let mut s = Sampler::new(1);
        for _ in 0..50 {
            assert!(s.pmin().is_upper_triangular());
            assert_eq!(mat2_det(&s.sl2()), scalar::one());
            for model in [Model::T, Model::A] {
                assert!(is_interior(&s.interior_flag(model), model));
            }
        }
    }
}
