use symqca::index::{self, AlgebraSpec, IntervalPair};
use symqca::oracle;
use symqca::qca;
use symqca::{library, sample, FiniteAbelianGroup};

#[test]
fn algebra_matches_dense_matrices() {
    for (f, sites) in [(vec![2u32], 6), (vec![3], 4), (vec![2, 2], 3), (vec![4], 3), (vec![2, 3], 3)] {
        let g = FiniteAbelianGroup::new(f).unwrap();
        let r = oracle::algebra_agreement(&g, sites, 200, 3).unwrap();
        assert!(r.passed, "{r:?}");
    }
}

#[test]
fn apply_matches_conjugation_or_intertwining() {
    for (f, sites) in [(vec![2u32], 6), (vec![3], 4), (vec![2, 2], 4), (vec![2, 3], 3)] {
        let g = FiniteAbelianGroup::new(f).unwrap();
        for (name, m) in sample::builtins(&g) {
            if name.starts_with("kw") {
                continue;
            }
            let r = oracle::apply_agreement(&name, &m, sites, 30, 5).unwrap();
            assert!(r.passed, "{r:?}");
        }
    }
    for (n, sites) in [(2u32, 4), (2, 6), (3, 3)] {
        let g = FiniteAbelianGroup::cyclic(n);
        let r = oracle::apply_agreement("kw", &qca::kw(&g, 0).unwrap(), sites, 30, 5).unwrap();
        assert_eq!(r.method, "intertwining");
        assert!(r.passed, "{r:?}");
    }
}

#[test]
fn kw_on_product_groups_is_not_realized_densely() {
    let k = qca::kw(&library::z2z2(), 0).unwrap();
    assert!(oracle::apply_agreement("kw:0", &k, 4, 5, 1).is_err());
}

#[test]
fn dense_overlaps_match_symbolic_counts() {
    let g = FiniteAbelianGroup::cyclic(2);
    let k = qca::kw(&g, 0).unwrap();
    let t = qca::translate(&g, 0, 1).unwrap();
    for xi in 2..=3u64 {
        let p = IntervalPair::from_segments(0, 2, xi, 2).unwrap();
        let sites = (4 + xi) as usize;
        for m in [&k, &t] {
            let a = AlgebraSpec::Image(m, p.minus);
            let b = AlgebraSpec::Symmetric(p.plus);
            let sym = index::eta_squared(&a, &b).unwrap().to_u64().unwrap();
            assert_eq!(oracle::dense_eta(&g, &a, &b, sites).unwrap(), sym);
        }
        let den = index::eta_squared_symmetric(&g, p.minus, p.plus).to_u64().unwrap();
        let dense = oracle::dense_eta(&g, &AlgebraSpec::Symmetric(p.minus), &AlgebraSpec::Symmetric(p.plus), sites);
        assert_eq!(dense.unwrap(), den);
    }
    let z3 = FiniteAbelianGroup::cyclic(3);
    let p = IntervalPair::from_segments(0, 1, 2, 1).unwrap();
    let a = AlgebraSpec::Symmetric(p.minus);
    let b = AlgebraSpec::Symmetric(p.plus);
    assert_eq!(
        oracle::dense_eta(&z3, &a, &b, 4).unwrap(),
        index::eta_squared_symmetric(&z3, p.minus, p.plus).to_u64().unwrap()
    );
}

#[test]
fn choi_construction() {
    for (n, l) in [(2u32, 4usize), (2, 6), (3, 3)] {
        let r = oracle::choi_check(n, l, 9).unwrap();
        assert_eq!(r.stabilizer_count, 2 * l);
        assert_eq!(r.independent, 2 * l);
        assert!(r.passed, "{r:?}");
    }
}

#[test]
fn choi_state_is_unique_for_every_seed() {
    for seed in 0..3 {
        let st = oracle::kw_choi(2, 4, seed).unwrap();
        assert!(st.uniqueness_defect < 1e-10);
        assert!((st.psi.norm() - 1.0).abs() < 1e-12);
    }
}

#[test]
fn fermion_operators_and_support_dims() {
    let r = oracle::fermionization_check(6).unwrap();
    assert!(r.max_anticommutator < 1e-12 && r.max_square_deviation < 1e-12, "{r:?}");
    assert_eq!((r.dense_left_identity, r.dense_left_kw), (4, 2));
    assert!(r.passed);
}

#[test]
fn q8_defect_probe() {
    let r = oracle::rep_q8_defect(8).unwrap();
    assert!(r.residual < 1e-8, "{r:?}");
    assert!(r.passed, "{r:?}");
}
