use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use super::{Check, Nilpotents, Outcome, Report, SuiteConfig, SuiteName};
use crate::arith::{PrimeField, Rationals};
use crate::dynkin::{
    kw_bound, nilpotent_element, nilpotent_frame, reduce_subspace, reduce_vec, JordanType,
    NilpotentFrame,
};
use crate::envelope::{EnvElement, Monomial, Pbw};
use crate::error::{Error, Result};
use crate::lie::{
    build_catalog, build_q, verify_axioms, AlgebraKind, PCharacter, SuperAlgebraData,
};
use crate::linalg::Subspace;
use crate::modrep::{
    claim_at_most_one_odd, levi_decompose, min_dim_search, refined_bound, standard_levis,
    RootSystem,
};
use crate::wfinite::{
    default_cap, graded_dimensions_q, one_dim_variety, Feasibility, ReducedWAlgebra,
};

struct Case {
    kind: AlgebraKind,
    g: SuperAlgebraData<Rationals>,
    jt: JordanType,
    frame: Result<NilpotentFrame<Rationals>>,
}

enum Job<'a> {
    Axioms(&'a AlgebraKind, Option<u64>),
    Levi(&'a AlgebraKind),
    PerCase(SuiteName, &'a Case, Option<u64>),
}

type JobResult = (Vec<Check>, Vec<String>);

fn cases(config: &SuiteConfig, kinds: &[AlgebraKind]) -> Result<Vec<Case>> {
    let mut out = Vec::new();
    for kind in kinds {
        let g = build_q(kind)?;
        let (types, explicit) = match &config.nilpotents {
            Nilpotents::Keyword(_) => (
                JordanType::enumerate(kind).ok_or_else(|| {
                    Error::Config(format!("cannot enumerate nilpotents of {kind}"))
                })?,
                false,
            ),
            Nilpotents::List(l) => (
                l.iter()
                    .map(|s| s.parse())
                    .collect::<Result<Vec<JordanType>>>()
                    .map_err(|e| Error::Config(e.to_string()))?,
                true,
            ),
        };
        for jt in types {
            match nilpotent_element(&g, &jt) {
                Ok(e) => out.push(Case {
                    kind: kind.clone(),
                    g: g.clone(),
                    frame: nilpotent_frame(&g, &e),
                    jt,
                }),
                // Enumerated types outside the algebra are not nilpotents of it.
                Err(e) if explicit => return Err(Error::Config(format!("{jt} in {kind}: {e}"))),
                Err(_) => {}
            }
        }
    }
    Ok(out)
}

pub fn run_suite(config: &SuiteConfig) -> Result<Report> {
    config.validate()?;
    let kinds: Vec<AlgebraKind> = config
        .algebras
        .iter()
        .map(|a| a.parse())
        .collect::<Result<_>>()?;
    let per_case = config
        .suites
        .iter()
        .any(|s| !matches!(s, SuiteName::Axioms | SuiteName::Levi));
    let cases = if per_case {
        cases(config, &kinds)?
    } else {
        Vec::new()
    };
    let primes: Vec<Option<u64>> = config.primes.iter().map(|&p| Some(p)).collect();

    let mut jobs = Vec::new();
    for &suite in &config.suites {
        match suite {
            SuiteName::Axioms => {
                for k in &kinds {
                    jobs.extend(
                        std::iter::once(None)
                            .chain(primes.iter().copied())
                            .map(|p| Job::Axioms(k, p)),
                    );
                }
            }
            SuiteName::Levi => jobs.extend(kinds.iter().map(Job::Levi)),
            SuiteName::Parity | SuiteName::Hilbert => {
                jobs.extend(cases.iter().map(|c| Job::PerCase(suite, c, None)))
            }
            _ => {
                for c in &cases {
                    jobs.extend(primes.iter().map(|&p| Job::PerCase(suite, c, p)));
                }
            }
        }
    }
    let results: Vec<JobResult> = crate::par::map(&jobs, |job| match job {
        Job::Axioms(k, p) => (vec![axioms(k, *p)], Vec::new()),
        Job::Levi(k) => (levi(k), Vec::new()),
        Job::PerCase(suite, case, p) => per_case_checks(*suite, case, *p, config),
    });
    let mut checks = Vec::new();
    let mut skipped = Vec::new();
    for (c, s) in results {
        checks.extend(c);
        skipped.extend(s);
    }
    Ok(Report::new(checks, skipped))
}

fn field_label(p: Option<u64>) -> String {
    p.map_or("Q".into(), |p| format!("F_{p}"))
}

fn axioms(kind: &AlgebraKind, p: Option<u64>) -> Check {
    Check::run(
        "axioms",
        "Lie superalgebra, invariant form and p-map identities",
        json!({"alg": kind.to_string(), "field": field_label(p)}),
        || {
            let report = match p {
                None => verify_axioms(&build_q(kind)?),
                Some(p) => verify_axioms(&build_catalog(kind, p)?),
            };
            let failing: Vec<&str> = report
                .checks
                .iter()
                .filter(|c| !c.pass)
                .map(|c| c.name)
                .collect();
            Ok(Outcome::holds(
                "every identity holds",
                if failing.is_empty() {
                    format!("{} identities hold", report.checks.len())
                } else {
                    format!("failing: {failing:?}")
                },
                failing.is_empty(),
            ))
        },
    )
}

fn levi(kind: &AlgebraKind) -> Vec<Check> {
    let inputs = json!({"alg": kind.to_string()});
    let accounting = Check::run(
        "levi-accounting",
        "standard Levi dimension accounting",
        inputs.clone(),
        || {
            let g = build_q(kind)?;
            let levis = standard_levis(&g)?;
            let mut bad = Vec::new();
            let mut probes = 0;
            for lv in &levis {
                for d in &lv.data {
                    probes += 1;
                    if !(d.dimension_identity && d.summands_commute && d.u_accounting) {
                        bad.push(lv.subset.clone());
                    }
                }
            }
            Ok(Outcome::holds(
                "dim l + 2 dim u = dim g, summands commute, dim u = (d - Σd_i)/2",
                format!(
                    "{} Levis, {probes} probes, failing subsets {bad:?}",
                    levis.len()
                ),
                bad.is_empty(),
            ))
        },
    );
    let odd = Check::run(
        "levi-odd-summands",
        "at most one summand with odd (d1)_i",
        inputs,
        || {
            let reports = claim_at_most_one_odd(&build_q(kind)?)?;
            let max = reports.iter().map(|r| r.max_l_odd).max().unwrap_or(0);
            Ok(Outcome::holds(
                "l_odd <= 1 for every standard Levi",
                format!("max l_odd = {max} over {} Levis", reports.len()),
                max <= 1,
            ))
        },
    );
    vec![accounting, odd]
}

fn frame_of(case: &Case) -> Result<&NilpotentFrame<Rationals>> {
    case.frame.as_ref().map_err(Clone::clone)
}

fn frame_error(case: &Case) -> Result<Outcome> {
    Err(frame_of(case).expect_err("called on a failed frame"))
}

fn reduced(
    case: &Case,
    p: u64,
) -> Result<(SuperAlgebraData<PrimeField>, NilpotentFrame<PrimeField>)> {
    let gp = case.g.reduce_mod_p(p)?;
    let frp = frame_of(case)?.reduce_mod_p(&gp)?;
    Ok((gp, frp))
}

/// `dim U_χ(s)` for a subalgebra `s` defined over `Q`, by counting PBW monomials mod `p`.
/// Needs only `s` and `χ`, not the complement, so it also runs where the frame is bad at `p`.
fn pbw_count(
    gp: &SuperAlgebraData<PrimeField>,
    fr: &NilpotentFrame<Rationals>,
    s: &Subspace<Rationals>,
) -> Result<usize> {
    let f = gp.field;
    let basis = reduce_subspace(&f, gp, s)?.homogeneous_basis();
    let labels = (1..=basis.len()).map(|i| format!("s{i}")).collect();
    let chi = PCharacter {
        values: reduce_vec(&f, &fr.chi.values)?,
        dual_element: None,
    };
    let values = basis.iter().map(|v| chi.eval(&f, v)).collect();
    let sub = gp.subalgebra(&basis, labels)?;
    Ok(Pbw::reduced(
        sub,
        PCharacter {
            values,
            dual_element: None,
        },
    )?
    .basis()?
    .len())
}

fn random_element(pbw: &Pbw<PrimeField>, rng: &mut ChaCha8Rng) -> EnvElement<PrimeField> {
    let f = *pbw.field();
    let mut a = EnvElement::zero();
    for _ in 0..3 {
        let exps = (0..pbw.n())
            .map(|i| rng.gen_range(0..=pbw.max_exp(i).unwrap_or(1)))
            .collect();
        a.add_term(&f, Monomial(exps), rng.gen_range(1..f.p()));
    }
    a
}

/// `p^{g_0 - d0/2} 2^{g_1 - floor(d1/2)}`, the dimension of the Gelfand–Graev module.
fn gelfand_graev_dim(
    g: &SuperAlgebraData<Rationals>,
    fr: &NilpotentFrame<Rationals>,
    p: u64,
) -> u128 {
    let (g0, g1) = g.space.sdim();
    let (m0, m1) = fr.invariants.m_dims();
    (p as u128)
        .saturating_pow((g0 - m0) as u32)
        .saturating_mul(1u128 << (g1 - m1))
}

fn per_case_checks(
    suite: SuiteName,
    case: &Case,
    p: Option<u64>,
    config: &SuiteConfig,
) -> JobResult {
    let mut inputs = json!({"alg": case.kind.to_string(), "nilpotent": case.jt.to_string()});
    if let Some(p) = p {
        inputs["p"] = json!(p);
    }
    let label = format!("{} {} at {}", case.kind, case.jt, field_label(p));
    let skip = |what: &str, dim: u128| {
        (
            Vec::new(),
            vec![format!(
                "{what} for {label}: dimension {dim} exceeds cap {}",
                config.cap_dim
            )],
        )
    };
    let one = |id: &str, reference: &str, body: &dyn Fn() -> Result<Outcome>| {
        (
            vec![Check::run(id, reference, inputs.clone(), body)],
            Vec::new(),
        )
    };
    let p_ = p.unwrap_or(0);
    if matches!(
        suite,
        SuiteName::Frames | SuiteName::Envelope | SuiteName::Walgebra | SuiteName::Meataxe
    ) {
        if let Err(Error::BadPrime { reason, .. }) = reduced(case, p_) {
            return (
                Vec::new(),
                vec![format!(
                    "{} for {label}: p = {p_} is bad here ({reason})",
                    suite.as_str()
                )],
            );
        }
    }
    match suite {
        SuiteName::Parity => {
            let mut out = vec![Check::run(
                "parity-d1-r",
                "d1 and dim g(-1)_1 have equal parity",
                inputs.clone(),
                || {
                    let d = frame_of(case)?.invariants;
                    Ok(Outcome::holds(
                        "d1 = r (mod 2)",
                        format!("d1 = {}, r = {}", d.d1, d.r),
                        d.d1 % 2 == d.r % 2,
                    ))
                },
            )];
            out.push(Check::run(
                "parity-dim-m",
                "dim m from the Dynkin grading",
                inputs.clone(),
                || {
                    let fr = frame_of(case)?;
                    let (mut e, mut o) = (0, 0);
                    for (&i, piece) in &fr.grading.pieces {
                        if i <= -2 {
                            let (a, b) = piece.graded_dims();
                            e += a;
                            o += b;
                        }
                    }
                    let (w0, w1) = fr.grading.dims(-1);
                    let formula = (e + w0 / 2, o + w1 / 2);
                    Ok(Outcome::equal(
                        (formula, formula),
                        (fr.m.graded_dims(), fr.invariants.m_dims()),
                    ))
                },
            ));
            for p in config.primes.clone() {
                let mut inp = inputs.clone();
                inp["p"] = json!(p);
                out.push(Check::run(
                    "parity-pbw",
                    "dim U_chi(m) and dim U_chi(m') by PBW count",
                    inp,
                    || {
                        let fr = frame_of(case)?;
                        let gp = case.g.reduce_mod_p(p)?;
                        let d = fr.invariants;
                        let pp = p as usize;
                        let want = (
                            pp.pow(d.d0 as u32 / 2) << (d.d1 / 2),
                            pp.pow(d.d0 as u32 / 2) << d.d1.div_ceil(2),
                        );
                        Ok(Outcome::equal(
                            want,
                            (pbw_count(&gp, fr, &fr.m)?, pbw_count(&gp, fr, &fr.m_prime)?),
                        ))
                    },
                ));
            }
            (out, Vec::new())
        }
        SuiteName::Frames => one(
            "frames-gram",
            "Darboux frame conditions over Q and after reduction",
            &|| {
                let fr = frame_of(case)?;
                let (gp, frp) = reduced(case, p_)?;
                Ok(Outcome::equal(
                    (true, true),
                    (fr.gram_holds(&case.g), frp.gram_holds(&gp)),
                ))
            },
        ),
        SuiteName::Envelope => one(
            "envelope-oracle",
            "straightening product equals the left-regular representation",
            &|| {
                let (gp, frp) = reduced(case, p_)?;
                let pbw = Pbw::reduced(gp, frp.chi.clone())?;
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                let pairs = 50;
                let agree = (0..pairs)
                    .filter(|_| {
                        let (a, b) = (
                            random_element(&pbw, &mut rng),
                            random_element(&pbw, &mut rng),
                        );
                        pbw.mul(&a, &b) == pbw.mul_left_regular(&a, &b)
                    })
                    .count();
                Ok(Outcome::equal(pairs, agree))
            },
        ),
        SuiteName::Walgebra => {
            let Ok(fr) = frame_of(case) else {
                return one("walgebra", "reduced W-superalgebra", &|| frame_error(case));
            };
            let dim = gelfand_graev_dim(&case.g, fr, p_);
            if dim > config.cap_dim as u128 {
                return skip("walgebra", dim);
            }
            one(
                "walgebra",
                "dim U_chi(g, e) = p^l 2^q', Theta generators and odd identities",
                &|| {
                    let (gp, frp) = reduced(case, p_)?;
                    let w = ReducedWAlgebra::new(&gp, &frp, &frp.chi)?;
                    let inv = frp.invariants;
                    let want = (p_ as u128).pow(inv.l as u32) << inv.q_prime;
                    let th = w.extract_theta()?;
                    let lead: Vec<String> = th.iter().map(|t| t.leading_term.clone()).collect();
                    let mut pass = w.dim() as u128 == want;
                    let mut computed = format!("dim {}, leading terms {lead:?}", w.dim());
                    if inv.r % 2 == 1 {
                        let rep = w.odd_case_identities(&th)?;
                        let var = one_dim_variety(&w, &th)?;
                        pass &= rep.square_is_expected_scalar
                            && var.feasibility == Feasibility::Infeasible;
                        computed += &format!(
                            ", middle square scalar {}, one-dimensional variety {:?}",
                            rep.square_is_expected_scalar, var.feasibility
                        );
                    }
                    let expected = if inv.r % 2 == 1 {
                        format!(
                            "dim {want}, middle square scalar, no one-dimensional representation"
                        )
                    } else {
                        format!("dim {want}")
                    };
                    Ok(Outcome::holds(expected, computed, pass))
                },
            )
        }
        SuiteName::Hilbert => one(
            "hilbert",
            "filtration dimensions match the free supercommutative series",
            &|| {
                let fr = frame_of(case)?;
                let r = graded_dimensions_q(&case.g, fr, config.cap_degree.min(default_cap(fr)))?;
                let pass = r.matches && r.middle_square_is_scalar != Some(false);
                Ok(Outcome::holds(
                    format!("{:?}", r.predicted),
                    format!("{:?}", r.graded),
                    pass,
                ))
            },
        ),
        SuiteName::Meataxe => {
            let Ok(fr) = frame_of(case) else {
                return one("meataxe", "baby Verma search", &|| frame_error(case));
            };
            let start = std::time::Instant::now();
            let res = min_dim_search(&case.g, fr, p_, config.seed, config.cap_dim);
            if let Err(Error::CapExceeded { dim, .. }) = res {
                return skip("meataxe", dim as u128);
            }
            let (mut checks, skipped) = one(
                "meataxe",
                "every simple dimension is divisible by the bound",
                &|| {
                    let r = res.clone()?;
                    let replay = r.weights.iter().all(|w| w.certificates_replay);
                    let attained = if r.attained {
                        "attained"
                    } else {
                        "bound not attained in the searched family"
                    };
                    Ok(Outcome::holds(
                    format!("divisible by {}", r.kw_bound),
                    format!("min {} over {} weights ({attained}), all divisible {}, certificates replay {replay}", r.min_dim, r.weights.len(), r.all_divisible),
                    r.all_divisible && replay,
                ))
                },
            );
            checks[0].runtime_ms = start.elapsed().as_millis() as u64;
            (checks, skipped)
        }
        SuiteName::Bounds => one(
            "bounds",
            "refined bound of the Levi datum of e against the general bound",
            &|| {
                let fr = frame_of(case)?;
                let roots = RootSystem::new(&case.g)?;
                let e = nilpotent_element(&case.g, &case.jt)?;
                let datum = levi_decompose(&case.g, &roots, &case.g.zero_vec(), &e)?;
                let rb = refined_bound(&datum, p_);
                let kw = kw_bound(&fr.invariants, p_);
                Ok(Outcome::equal(
                    (kw, datum.l_odd <= 1),
                    (rb.kw, rb.consistent),
                ))
            },
        ),
        SuiteName::Axioms | SuiteName::Levi => unreachable!("not per-case suites"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_config_passes_and_is_deterministic() {
        let config = SuiteConfig {
            algebras: vec!["osp(1|2)".into()],
            primes: vec![3],
            ..SuiteConfig::default()
        };
        let a = run_suite(&config).unwrap();
        assert!(
            a.all_pass(),
            "{}",
            a.render(super::super::Format::Text).unwrap()
        );
        assert_eq!(
            a.without_timing(),
            run_suite(&config).unwrap().without_timing()
        );
    }

    #[test]
    fn even_prime_is_a_config_error() {
        let config = SuiteConfig {
            primes: vec![2],
            ..SuiteConfig::default()
        };
        assert!(matches!(run_suite(&config), Err(Error::Config(_))));
    }

    #[test]
    fn empty_suite_list_gives_an_empty_passing_report() {
        let r = run_suite(&SuiteConfig {
            suites: Vec::new(),
            ..SuiteConfig::default()
        })
        .unwrap();
        assert!(r.checks.is_empty() && r.all_pass());
    }
}
