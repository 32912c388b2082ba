//! End-to-end runs through the public API with frozen results.

use superw_core::arith::Rationals;
use superw_core::dynkin::{nilpotent_element, nilpotent_frame, NilpotentFrame};
use superw_core::lie::{
    build_catalog, build_q, from_json, to_json, LoadedAlgebra, SuperAlgebraData,
};
use superw_core::modrep::{min_dim_search, outer_tensor_survey};
use superw_core::par::{set_default, Exec};
use superw_core::suite::{run_suite, SuiteConfig, SuiteName};
use superw_core::wfinite::{graded_dimensions_q, ReducedWAlgebra};

fn frame(kind: &str, jt: &str) -> (SuperAlgebraData<Rationals>, NilpotentFrame<Rationals>) {
    let g = build_q(&kind.parse().unwrap()).unwrap();
    let e = nilpotent_element(&g, &jt.parse().unwrap()).unwrap();
    let fr = nilpotent_frame(&g, &e).unwrap();
    (g, fr)
}

#[test]
fn json_round_trip_over_q_and_fp() {
    let g = build_q(&"sl(2|1)".parse().unwrap()).unwrap();
    let LoadedAlgebra::Q(h) = from_json(&to_json(&g)).unwrap() else {
        panic!("field changed")
    };
    assert_eq!(to_json(&h), to_json(&g));
    let gp = build_catalog(&"osp(1|2)".parse().unwrap(), 5).unwrap();
    let LoadedAlgebra::Fp(hp) = from_json(&to_json(&gp)).unwrap() else {
        panic!("field changed")
    };
    assert_eq!(to_json(&hp), to_json(&gp));
}

#[test]
fn osp12_w_dimensions() {
    let (g, fr) = frame("osp(1|2)", "jordan:1|2");
    for (p, dim) in [(3, 12), (5, 20), (7, 28)] {
        let gp = g.reduce_mod_p(p).unwrap();
        let frp = fr.reduce_mod_p(&gp).unwrap();
        let w = ReducedWAlgebra::new(&gp, &frp, &frp.chi).unwrap();
        assert_eq!((w.dim(), w.sdim()), (dim, (dim / 2, dim / 2)));
        assert!(w.is_associative().unwrap());
    }
}

#[test]
fn filtration_dimensions() {
    let (g, fr) = frame("osp(1|2)", "jordan:1|2");
    assert_eq!(
        graded_dimensions_q(&g, &fr, 8).unwrap().graded,
        [1, 1, 0, 1, 2, 1, 0, 1, 2]
    );
    let (g, fr) = frame("gl(1|1)", "jordan:1|1");
    assert_eq!(
        graded_dimensions_q(&g, &fr, 4).unwrap().graded,
        [1, 0, 4, 0, 8]
    );
}

#[test]
fn baby_verma_searches() {
    let (g, fr) = frame("gl(2|1)", "jordan:2|1");
    let r = min_dim_search(&g, &fr, 3, 0, 5000).unwrap();
    assert_eq!(
        (r.verma_dim, r.weights.len(), r.min_dim, r.kw_bound),
        (12, 27, 6, 6)
    );
    let (g, fr) = frame("sl(2|1)", "jordan:2|1");
    let r = min_dim_search(&g, &fr, 5, 0, 5000).unwrap();
    assert_eq!(
        (r.verma_dim, r.weights.len(), r.min_dim, r.kw_bound),
        (20, 25, 10, 10)
    );
}

#[test]
fn direct_sum_of_osp12_has_simples_of_dimension_18() {
    let (g, fr) = frame("osp(1|2)", "jordan:1|2");
    let s = outer_tensor_survey(&g, &fr, 3, 0, 5000).unwrap();
    assert_eq!((s.min_fp_dim, s.min_absolute_dim), (36, 18));
}

#[test]
fn sequential_and_parallel_reports_agree() {
    let config = SuiteConfig {
        algebras: vec!["osp(1|2)".into(), "gl(1|1)".into()],
        primes: vec![3],
        suites: vec![
            SuiteName::Parity,
            SuiteName::Envelope,
            SuiteName::Meataxe,
            SuiteName::Bounds,
        ],
        ..SuiteConfig::default()
    };
    set_default(Exec::Sequential);
    let seq = run_suite(&config).unwrap().without_timing();
    set_default(Exec::Parallel);
    let par = run_suite(&config).unwrap().without_timing();
    assert_eq!(seq, par);
    assert!(par.all_pass());
}
