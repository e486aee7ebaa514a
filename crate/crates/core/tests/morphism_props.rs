mod common;

use std::sync::OnceLock;

use common::{fixed_config, partial_trace_oracle, rat};
use hopfg::hopf_core::HopfGFamily;
use hopfg::integrals::{GIntegral, Side};
use hopfg::modcat::{
    check_duality, dual_module, partial_trace_right, random_endomorphism, random_endomorphism_left,
    regular_module, tensor_module, ModuleRep,
};
use hopfg::mtrace::{check_cyclicity, check_reduction_lemma, FormFamily};
use hopfg::uqsl2::{simple_module, Sl2Family, Sl2Grade};
use proptest::prelude::*;

fn family() -> &'static Sl2Family {
    static FAM: OnceLock<Sl2Family> = OnceLock::new();
    FAM.get_or_init(|| Sl2Family::for_alpha(2, rat(1, 2)))
}

fn grades() -> impl Strategy<Value = (Sl2Grade, Sl2Grade)> {
    proptest::sample::select(vec![(1, 2), (-1, 2), (1, 1)])
        .prop_map(|(n, d)| (Sl2Grade::from_ratio(1, 2), Sl2Grade::from_ratio(n, d)))
}

fn module(fam: &Sl2Family, which: usize) -> ModuleRep<Sl2Grade> {
    let v = simple_module(fam, rat(1, 2)).unwrap().module;
    match which % 5 {
        0 => v,
        1 => simple_module(fam, rat(5, 2)).unwrap().module,
        2 => dual_module(fam, &v).unwrap(),
        3 => tensor_module(fam, &v, &v).unwrap(),
        _ => regular_module(fam, &Sl2Grade::from_ratio(1, 2)).unwrap(),
    }
}

proptest! {
    #![proptest_config(fixed_config(24, 0x0b5e))]

    #[test]
    fn random_endomorphisms_commute_with_the_action((a, b) in grades(), seed in any::<u64>(), left in any::<bool>()) {
        let fam = family();
        let f = if left {
            random_endomorphism_left(fam, &a, &b, seed).unwrap()
        } else {
            random_endomorphism(fam, &a, &b, seed).unwrap()
        };
        let dim = fam.dim(&fam.compose(&a, &b)).unwrap();
        for i in 0..dim {
            let rho = f.source.act_basis(i);
            prop_assert!(f.matrix.mul(&rho).sub(&rho.mul(&f.matrix)).is_zero(), "basis element {}", i);
        }
    }

    #[test]
    fn partial_trace_matches_contraction((a, b) in grades(), seed in any::<u64>()) {
        let fam = family();
        let f = random_endomorphism(fam, &a, &b, seed).unwrap();
        let alg_b = fam.algebra(&b).unwrap();
        let g = alg_b.left_mult(&fam.pivot(&b).unwrap());
        let da = fam.dim(&a).unwrap();
        let engine = partial_trace_right(&f.matrix, da, da, &g).unwrap();
        prop_assert_eq!(engine.to_dense(), partial_trace_oracle(&f.matrix, da, da, &g).to_dense());
    }

    #[test]
    fn zig_zags_hold(which in 0usize..5) {
        let fam = family();
        let report = check_duality(fam, &module(fam, which)).unwrap();
        prop_assert!(report.all_passed(), "{:?}", report.failures());
    }

    #[test]
    fn traces_are_cyclic(seed in any::<u64>(), neg in any::<bool>()) {
        let fam = family();
        let integral = GIntegral::new(fam).unwrap();
        let a = Sl2Grade::from_ratio(if neg { -1 } else { 1 }, 2);
        let mu = integral.symmetrised_right(&a).unwrap();
        let report = check_cyclicity(fam, &mu, &a, seed).unwrap();
        prop_assert!(report.all_passed(), "{:?}", report.failures());
    }

    #[test]
    fn reduction_identity_on_random_endomorphisms((a, b) in grades(), seed in any::<u64>(), left in any::<bool>()) {
        let fam = family();
        let integral = GIntegral::new(fam).unwrap();
        let (side, report) = if left {
            let forms = |g: &Sl2Grade| integral.symmetrised_left(g);
            let forms: &FormFamily<'_, Sl2Grade> = &forms;
            (Side::Left, check_reduction_lemma(fam, forms, &a, &b, &[seed], Side::Left).unwrap())
        } else {
            let forms = |g: &Sl2Grade| integral.symmetrised_right(g);
            let forms: &FormFamily<'_, Sl2Grade> = &forms;
            (Side::Right, check_reduction_lemma(fam, forms, &a, &b, &[seed], Side::Right).unwrap())
        };
        prop_assert!(report.all_passed(), "{:?}: {:?}", side, report.failures());
    }
}
