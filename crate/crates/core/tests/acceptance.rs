//! Acceptance criteria, run at their stated sample sizes and tolerances.
//!
//! This target uses its own `main` so that one `PASS`/`FAIL` line per
//! criterion is always printed; the process exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::{One, Zero};

use phflag_core::dynamics::{hyperbolicity_report, DynamicsInput};
use phflag_core::flag_space::Model;
use phflag_core::lie_core::{LieVec, Subalgebra};
use phflag_core::oracle::{
    invariant_transverse_line_search, isotropy_eigenvalue_table, stabilizer_table, DegenerationCase, InvariantLines,
    IsotropyCase,
};
use phflag_core::sampling::Sampler;
use phflag_core::scalar::{self, Scalar};
use phflag_core::suite::{self, cat_rates, Outcome, CAT};

const SEED: u64 = 20_240_601;

struct Verdict {
    pass: bool,
    detail: String,
}

fn all(outcomes: &[(&str, Outcome)]) -> Verdict {
    let pass = outcomes.iter().all(|(_, o)| o.pass);
    let detail = outcomes
        .iter()
        .map(|(name, o)| format!("{name}: {}{}", if o.pass { "" } else { "FAILED " }, o.computed))
        .collect::<Vec<_>>()
        .join("; ");
    Verdict { pass, detail }
}

fn timed(limit: Duration, f: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let v = f();
    let elapsed = start.elapsed();
    Verdict {
        pass: v.pass && elapsed < limit,
        detail: format!("{} ({:.3} s, limit {:.1} s)", v.detail, elapsed.as_secs_f64(), limit.as_secs_f64()),
    }
}

fn criterion_1() -> Verdict {
    timed(Duration::from_secs(1), || {
        all(&[("1000 P_min samples", suite::check_quotient_adjoint(SEED, 1000))])
    })
}

fn criterion_2() -> Verdict {
    timed(Duration::from_secs(1), || {
        all(&[("1000 (p, K) samples", suite::check_curvature_exponents(SEED, 1000))])
    })
}

fn criterion_3() -> Verdict {
    let outs: Vec<(&str, Outcome)> = DegenerationCase::ALL
        .iter()
        .map(|c| (c.name(), suite::check_degeneration(*c)))
        .collect();
    let worst = outs.iter().filter_map(|(_, o)| o.residual).fold(0.0f64, f64::max);
    let v = all(&outs);
    Verdict {
        pass: v.pass && worst <= 3.0,
        detail: format!("{}; max sin/|t| = {worst:.4}", v.detail),
    }
}

fn criterion_4() -> Verdict {
    let run = || -> phflag_core::Result<(bool, String)> {
        let t = isotropy_eigenvalue_table(IsotropyCase::T)?.to_string();
        let a = isotropy_eigenvalue_table(IsotropyCase::A)?.to_string();
        let unit = InvariantLines::Unique([Scalar::zero(), Scalar::zero(), Scalar::one()]);
        let lt = invariant_transverse_line_search(IsotropyCase::T)?;
        let la = invariant_transverse_line_search(IsotropyCase::A)?;
        let l1 = invariant_transverse_line_search(IsotropyCase::H1)?;
        let lv = |d: [i64; 3]| LieVec::diag(d.map(scalar::int));
        let mut s = Sampler::new(SEED);
        let mut table_ok = true;
        for _ in 0..20 {
            let [full, iy, ix, none] = stabilizer_table(&s.nonzero(), &s.nonzero())?;
            table_ok &= full.dim() == 2
                && iy.same_space(&Subalgebra::span(&[lv([1, 1, -2])]))
                && ix.same_space(&Subalgebra::span(&[lv([-2, 1, 1])]))
                && none.dim() == 0;
        }
        let pass = t == "diag[3a, -3a, 0]"
            && a == "diag[2a+b, -a-2b, a-b]"
            && lt == unit
            && la == unit
            && l1 == InvariantLines::None
            && table_ok;
        Ok((pass, format!("t: {t}; a: {a}; lines t/a/h1: {lt} / {la} / {l1}; stabilizer table ok: {table_ok}")))
    };
    match run() {
        Ok((pass, detail)) => Verdict { pass, detail },
        Err(e) => Verdict {
            pass: false,
            detail: format!("error: {e}"),
        },
    }
}

fn criterion_5() -> Verdict {
    all(&[("1000 rational (x, t), both signs", suite::check_central_flow(SEED, 1000))])
}

fn criterion_6() -> Verdict {
    timed(Duration::from_secs(1), || {
        let log_l = ((3.0 + 5f64.sqrt()) / 2.0).ln();
        let mut pass = true;
        let mut worst = [0.0f64; 3];
        for k in 0..5 {
            match cat_rates(SEED + k, 200) {
                Ok((s, c, u)) => {
                    worst[0] = worst[0].max((s + log_l).abs());
                    worst[1] = worst[1].max(c.abs());
                    worst[2] = worst[2].max((u - log_l).abs());
                }
                Err(_) => pass = false,
            }
        }
        pass &= worst[0] <= 1e-3 && worst[1] <= 1e-6 && worst[2] <= 1e-3;
        let mut s = Sampler::new(SEED);
        let map = s.nil_map(CAT);
        let report = hyperbolicity_report(
            &DynamicsInput::Nil {
                map: Box::new(map),
                iterations: 200,
                start: s.unit_point(),
            },
            10,
            1e-6,
        );
        let n = report.as_ref().ok().and_then(|r| r.certified_n);
        pass &= n == Some(1);
        Verdict {
            pass,
            detail: format!(
                "5 translations; errors s/c/u = {:.2e} / {:.2e} / {:.2e}; certified N = {n:?}",
                worst[0], worst[1], worst[2]
            ),
        }
    })
}

fn criterion_7() -> Verdict {
    all(&[("sl2_frame_rates(1)", suite::check_sl2_rates())])
}

fn criterion_8() -> Verdict {
    all(&[
        ("contact t", suite::check_contact(SEED, 100, Model::T)),
        ("contact a", suite::check_contact(SEED, 100, Model::A)),
        ("boundary points", suite::check_circle_boundary(SEED, 500)),
    ])
}

fn criterion_9() -> Verdict {
    all(&[
        ("slope over 20 pairs", suite::check_flow_commutator_slope(SEED, 20, 2.9)),
        ("heis pair", suite::check_heis_commutator_exact(SEED, 100)),
    ])
}

fn criterion_10() -> Verdict {
    all(&[
        ("Theta", suite::check_theta(SEED, 100)),
        ("equivariance_a", suite::check_equivariance_a(SEED, 100)),
        ("equivariance_t", suite::check_equivariance_t(SEED, 100)),
        ("volume", suite::check_volume(SEED, 100)),
    ])
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("adjoint quotient matrix", criterion_1),
        ("curvature action exponents", criterion_2),
        ("degeneration oracle", criterion_3),
        ("isotropy tables", criterion_4),
        ("central-flow identity", criterion_5),
        ("nilmanifold rates", criterion_6),
        ("SL(2) frame rates", criterion_7),
        ("contact and boundary geometry", criterion_8),
        ("flow-commutator defect", criterion_9),
        ("morphism suite", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let v = f();
        if !v.pass {
            failed += 1;
        }
        println!("{} criterion {:>2} ({name}): {}", if v.pass { "PASS" } else { "FAIL" }, i + 1, v.detail);
    }
    println!("acceptance: {} passed, {} failed", criteria.len() - failed, failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
