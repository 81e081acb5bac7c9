//! Randomized invariants of the exact layer, the module category and the
//! sequence builders.

use fundseq_core::exactlin::{invariant_divisors, snf, solve};
use fundseq_core::fpmod::HomModule;
use fundseq_core::funcalc::FunctorExpr;
use fundseq_core::fundseq::{circular_sequence, right_fund_cov};
use fundseq_core::resolve::{ext, ext_tor_oracle_z, tor, Which};
use fundseq_core::{FPModule, Int, IntMat, Morphism, RingDesc};
use proptest::prelude::*;

fn ring() -> impl Strategy<Value = RingDesc> {
    prop_oneof![Just(RingDesc::Integers), Just(RingDesc::zmod(4)), Just(RingDesc::zmod(12))]
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntMat> {
    (0..=max_rows, 0..=max_cols).prop_flat_map(|(r, c)| {
        prop::collection::vec(-9i64..=9, r * c).prop_map(move |v| IntMat::from_fn(r, c, |i, j| Int::from(v[i * c + j])))
    })
}

fn module_over(ring: RingDesc) -> impl Strategy<Value = FPModule> {
    (1usize..=3, 0usize..=3).prop_flat_map(move |(g, r)| {
        let ring = ring.clone();
        prop::collection::vec(-6i64..=6, g * r)
            .prop_map(move |v| FPModule::new(ring.clone(), IntMat::from_fn(g, r, |i, j| Int::from(v[i * r + j])).reduce(&ring)))
    })
}

/// A morphism drawn as a combination of Hom generators.
fn morphism(src: &FPModule, tgt: &FPModule, coeffs: &[i64]) -> Morphism {
    let hom = HomModule::new(src, tgt);
    let elem: Vec<Int> = (0..hom.module().gens()).map(|k| Int::from(coeffs[k % coeffs.len()])).collect();
    hom.decode(&elem)
}

fn same(f: &Morphism, g: &Morphism) -> bool {
    f.sub(g).is_zero()
}

fn cyclic_z(d: i64) -> FPModule {
    FPModule::cyclic(RingDesc::Integers, d)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn snf_is_a_factorization(ring in ring(), a in matrix(4, 4)) {
        let f = snf(&a, &ring);
        let prod = f.u.mul(&a).mul(&f.v).reduce(&ring);
        prop_assert_eq!(prod, f.s.reduce(&ring));
        prop_assert_eq!(f.u.mul(&f.u_inv).reduce(&ring), IntMat::identity(a.rows()).reduce(&ring));
        for i in 0..f.s.rows() {
            for j in 0..f.s.cols() {
                if i != j || i >= f.rank {
                    prop_assert!(ring.reduce(&f.s[(i, j)]) == Int::from(0));
                }
            }
        }
        let d = f.divisors();
        for w in d.windows(2) {
            let q = ring.reduce(&(&w[1] % &w[0]));
            prop_assert!(ring.modulus().is_some() || q == Int::from(0), "divisibility chain broken: {:?}", d);
        }
        let ft = snf(&a.transpose(), &ring);
        prop_assert_eq!(invariant_divisors(&a, &ring).divisors, invariant_divisors(&a.transpose(), &ring).divisors);
        prop_assert_eq!(f.rank, ft.rank);
    }

    #[test]
    fn solutions_solve(ring in ring(), a in matrix(3, 3), x in prop::collection::vec(-5i64..=5, 3)) {
        let x: Vec<Int> = x[..a.cols()].iter().map(|&v| Int::from(v)).collect();
        let b = a.mul_vec(&x);
        let y = solve(&a, &b, &ring).unwrap().expect("b is in the image by construction");
        let lhs: Vec<Int> = a.mul_vec(&y).iter().map(|v| ring.reduce(v)).collect();
        let rhs: Vec<Int> = b.iter().map(|v| ring.reduce(v)).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn invariants_ignore_the_presentation(m in ring().prop_flat_map(module_over)) {
        prop_assert!(m.iso(&m.normal_module()));
        let inv = m.invariants();
        prop_assert!(m.iso(&FPModule::diagonal(m.ring().clone(), &inv.divisors, inv.free_rank)));
    }

    #[test]
    fn circular_sequence_is_exact(
        (a, b, c) in ring().prop_flat_map(|r| (module_over(r.clone()), module_over(r.clone()), module_over(r))),
        cf in prop::collection::vec(-4i64..=4, 1..6),
        cg in prop::collection::vec(-4i64..=4, 1..6),
    ) {
        let f = morphism(&a, &b, &cf);
        let g = morphism(&b, &c, &cg);
        let rep = circular_sequence(&f, &g).unwrap();
        prop_assert!(rep.is_complex());
        prop_assert!(rep.is_exact());
    }

    #[test]
    fn functors_preserve_identities_and_composition(
        (x, y, z, a) in ring().prop_flat_map(|r| (module_over(r.clone()), module_over(r.clone()), module_over(r.clone()), module_over(r))),
        cf in prop::collection::vec(-4i64..=4, 1..6),
        cg in prop::collection::vec(-4i64..=4, 1..6),
    ) {
        let f = morphism(&x, &y, &cf);
        let g = morphism(&y, &z, &cg);
        for fun in [FunctorExpr::hom_cov(&a), FunctorExpr::tensor_left(&a), FunctorExpr::ext_fixed_first(&a, 1)] {
            let id = fun.eval_mor(&Morphism::identity(&x)).unwrap();
            prop_assert!(same(&id, &Morphism::identity(id.source())));
            let whole = fun.eval_mor(&g.compose(&f)).unwrap();
            let parts = fun.eval_mor(&g).unwrap().compose(&fun.eval_mor(&f).unwrap());
            prop_assert!(same(&whole, &parts));
        }
        let contra = FunctorExpr::hom_contra(&a);
        let whole = contra.eval_mor(&g.compose(&f)).unwrap();
        let parts = contra.eval_mor(&f).unwrap().compose(&contra.eval_mor(&g).unwrap());
        prop_assert!(same(&whole, &parts));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn right_fundamental_sequence_over_z4(
        (a, b) in (module_over(RingDesc::zmod(4)), module_over(RingDesc::zmod(4))),
    ) {
        for fun in [FunctorExpr::hom_cov(&a), FunctorExpr::tensor_left(&a)] {
            let rep = right_fund_cov(&fun, &b, 3).unwrap();
            prop_assert!(rep.theorem_holds(false), "{:?}", rep.first_failure(false));
            prop_assert!(rep.identifications_hold());
        }
    }

    #[test]
    fn ext_and_tor_match_cyclic_formulas(a in 0i64..=12, b in 0i64..=12, i in 0usize..=2) {
        let (m, n) = (cyclic_z(a), cyclic_z(b));
        let g = num_gcd(a, b);
        let expect_ext = match i {
            0 if a == 0 => cyclic_z(b),
            0 if b == 0 => FPModule::zero(RingDesc::Integers),
            0 => cyclic_z(g),
            1 if a == 0 => FPModule::zero(RingDesc::Integers),
            1 => cyclic_z(g),
            _ => FPModule::zero(RingDesc::Integers),
        };
        prop_assert!(ext(&m, &n, i).iso(&expect_ext));
        prop_assert!(ext(&m, &n, i).iso(&ext_tor_oracle_z(&m, &n, i, Which::Ext).unwrap()));
        prop_assert!(tor(&m, &n, i).iso(&ext_tor_oracle_z(&m, &n, i, Which::Tor).unwrap()));
    }
}

fn num_gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { num_gcd(b, a % b) }
}
