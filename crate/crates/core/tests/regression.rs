//! Values pinned after their first computation.

use flagsphere::coloring::cd_constant;
use flagsphere::random_clique::{
    independence_bound_report, sample_clique_complex, RandomCliqueParams,
};

#[test]
fn c5_constant() {
    let c5 = cd_constant(5).unwrap();
    assert!((c5 - 5.656_854_249_492_381).abs() < 1e-12, "{c5}");
}

#[test]
fn independence_ratio_n300() {
    let params = RandomCliqueParams {
        n: 300,
        alpha: 0.55,
        d: 3,
        seed: 1,
    };
    let x = sample_clique_complex(&params).unwrap();
    assert_eq!(x.graph().edge_count(), 1906);
    let r = independence_bound_report(x.graph(), params.alpha, params.seed, 1000);
    assert_eq!((r.greedy, r.exact), (75, None));
    assert!((r.ratio.unwrap() - 0.570_796_917_145_635_7).abs() < 1e-12);
}
