//! Acceptance suite: one line per criterion. Run with
//! `cargo test -p symqca-core --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use symqca::anyon::{self, AnyonPermutation};
use symqca::index::{self, AlgebraSpec, IndexValue, IntervalPair};
use symqca::oracle;
use symqca::qca::{self, QcaMap};
use symqca::{arith, library, sample, CocycleClass, FiniteAbelianGroup, GroupAutomorphism, Interval, Phase};

/// Residual bound for dense comparisons.
const DENSE_TOL: f64 = 1e-10;
/// Fermionic anticommutators.
const FERMION_TOL: f64 = 1e-12;
/// Truncated defect factorization.
const Q8_TOL: f64 = 1e-8;
const KW_BUDGET: Duration = Duration::from_secs(1);
const SUITE_BUDGET: Duration = Duration::from_secs(60);
const SEED: u64 = 0x5eed_0001;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn group(f: &[u32]) -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(f.to_vec()).unwrap()
}

fn sqrt_of(n: u64) -> IndexValue {
    IndexValue::from_doubled(arith::factorize(n).into_iter().map(|(p, e)| (p, e as i64)))
}

fn whole(n: u64) -> IndexValue {
    IndexValue::from_doubled(arith::factorize(n).into_iter().map(|(p, e)| (p, 2 * e as i64)))
}

fn ind(m: &QcaMap) -> Result<IndexValue, String> {
    index::ind_default(m).map_err(|e| e.to_string())
}

fn c1_kw_placements() -> Outcome {
    let start = Instant::now();
    let k = qca::kw(&group(&[2]), 0).unwrap();
    let placements = index::default_placements(k.spread(), 6);
    let rep = index::probe_global_invariance(&k, &placements).map_err(|e| e.to_string())?;
    let took = start.elapsed();
    ensure(rep.invariant, "placements disagree")?;
    ensure(rep.index == IndexValue::from_doubled([(2, 1)]), format!("index {}", rep.index))?;
    ensure(took < KW_BUDGET, format!("took {took:?}"))?;
    Ok(format!("ind = {} at {} placements in {took:?}", rep.index, rep.placements.len()))
}

fn c2_translation() -> Outcome {
    let mut out = Vec::new();
    for d in [2u32, 3, 4, 6] {
        let t = qca::translate(&group(&[d]), 0, 1).unwrap();
        let v = ind(&t)?;
        ensure(v == whole(d as u64), format!("Z{d}: {v}"))?;
        out.push(format!("{d}->{v}"));
    }
    let g = group(&[2, 3]);
    let t = qca::compose(&qca::translate(&g, 0, 1).unwrap(), &qca::translate(&g, 1, 1).unwrap()).unwrap();
    let v = ind(&t)?;
    ensure(v == whole(6), format!("Z2xZ3: {v}"))?;
    out.push(format!("Z2xZ3->{v}"));
    Ok(out.join(", "))
}

fn c3_kw_spt_out() -> Outcome {
    let mut out = Vec::new();
    for n in [2u32, 3, 4, 5] {
        let v = ind(&qca::kw(&group(&[n]), 0).unwrap())?;
        ensure(v == sqrt_of(n as u64), format!("kw Z{n}: {v}"))?;
        out.push(format!("kw Z{n}={v}"));
    }
    let g4 = group(&[2, 4]);
    let v = ind(&qca::kw(&g4, 1).unwrap())?;
    ensure(v == sqrt_of(4), format!("kw_1 on Z2xZ4: {v}"))?;
    for f in [[2u32, 2], [3, 3], [2, 4]] {
        let g = group(&f);
        let w = CocycleClass::new(&g, &[((0, 1), 1)]).unwrap();
        let v = ind(&qca::spt(&g, &w).unwrap())?;
        ensure(v.is_one(), format!("spt on {g}: {v}"))?;
    }
    let v = ind(&library::factor_swap())?;
    ensure(v.is_one(), format!("out swap: {v}"))?;
    let z5 = group(&[5]);
    let phi = GroupAutomorphism::new(&z5, vec![vec![2]]).unwrap();
    let v = ind(&qca::out(&z5, &phi).unwrap())?;
    ensure(v.is_one(), format!("out x2 on Z5: {v}"))?;
    out.push("spt = out = 1".into());
    Ok(out.join(", "))
}

fn c4_kw_squared() -> Outcome {
    let g = group(&[2]);
    let k2 = qca::power(&qca::kw(&g, 0).unwrap(), 2).unwrap();
    ensure(k2.acts_like(&qca::translate(&g, 0, 1).unwrap()), format!("kw^2 = {k2:?}"))?;
    Ok("kw.kw acts as translate(0,1) on every generator".into())
}

fn c5_multiplicativity() -> Outcome {
    let mut rng = sample::rng(SEED);
    let mut checked = 0;
    for f in [vec![2u32], vec![2, 2]] {
        let g = group(&f);
        let letters = sample::builtins(&g);
        let single: Vec<IndexValue> = letters.iter().map(|(_, m)| ind(m)).collect::<Result<_, _>>()?;
        for _ in 0..50 {
            let (names, w) = sample::word(&mut rng, &letters, 4);
            let expect = names.iter().fold(IndexValue::one(), |acc, n| {
                let k = letters.iter().position(|(m, _)| m == n).unwrap();
                acc.mul(&single[k])
            });
            let got = ind(&w)?;
            ensure(got == expect, format!("{names:?}: {got} != {expect}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} words"))
}

fn c6_reflection() -> Outcome {
    let mut rng = sample::rng(SEED + 1);
    let mut maps: Vec<(String, QcaMap)> = Vec::new();
    for f in [vec![2u32], vec![3], vec![4], vec![2, 2], vec![2, 3]] {
        maps.extend(sample::builtins(&group(&f)));
    }
    maps.push(("d1".into(), library::d1()));
    maps.push(("d2".into(), library::d2()));
    let letters = sample::builtins(&group(&[2, 2]));
    for k in 0..20 {
        maps.push((format!("word{k}"), sample::word(&mut rng, &letters, 4).1));
    }
    for (name, m) in &maps {
        let pair = IntervalPair::default_for(m.spread());
        let a = index::ind(m, &pair).map_err(|e| e.to_string())?;
        let b = index::ind_reflected(m, &pair).map_err(|e| e.to_string())?;
        ensure(a.mul(&b).is_one(), format!("{name}: {a} * {b}"))?;
    }
    Ok(format!("{} maps", maps.len()))
}

fn c7_anyons() -> Outcome {
    let z2 = group(&[2]);
    let p = anyon::anyon_permutation(&qca::kw(&z2, 0).unwrap()).map_err(|e| e.to_string())?;
    ensure(p.apply(&[1], &[0]) == (vec![0], vec![1]), "kw: m -> e fails")?;
    ensure(p.apply(&[0], &[1]) == (vec![1], vec![0]), "kw: e -> m fails")?;
    let p = anyon::anyon_permutation(&library::cluster()).map_err(|e| e.to_string())?;
    ensure(p.apply(&[1, 0], &[0, 0]) == (vec![1, 0], vec![0, 1]), "spt: m1 -> e2 m1 fails")?;
    ensure(p.apply(&[0, 1], &[0, 0]) == (vec![0, 1], vec![1, 0]), "spt: m2 -> e1 m2 fails")?;
    ensure(p.apply(&[0, 0], &[1, 0]) == (vec![0, 0], vec![1, 0]), "spt moves e1")?;
    ensure(p.apply(&[0, 0], &[0, 1]) == (vec![0, 0], vec![0, 1]), "spt moves e2")?;
    let mut count = 0;
    let mut rng = sample::rng(SEED + 2);
    for f in [vec![2u32], vec![3], vec![2, 2], vec![2, 4]] {
        let g = group(&f);
        let letters = sample::builtins(&g);
        let mut maps: Vec<QcaMap> = letters.iter().map(|(_, m)| m.clone()).collect();
        for _ in 0..10 {
            maps.push(sample::word(&mut rng, &letters, 3).1);
        }
        for m in &maps {
            let p: AnyonPermutation = anyon::anyon_permutation(m).map_err(|e| e.to_string())?;
            p.check().map_err(|e| e.to_string())?;
            count += 1;
        }
    }
    Ok(format!("kw: e<->m; spt: m1->e2m1, m2->e1m2; {count} permutations preserve statistics"))
}

fn c8_z2z2() -> Outcome {
    let (d1, d2) = (library::d1(), library::d2());
    let half = Phase::new(1, 2);
    let zero = Phase::zero();
    let i1 = ind(&d1)?;
    let i2 = ind(&d2)?;
    ensure(i1.is_one(), format!("ind(D1) = {i1}"))?;
    ensure(i2 == whole(2), format!("ind(D2) = {i2}"))?;
    let b1 = anyon::bicharacter(&d1).map_err(|e| e.to_string())?;
    let b2 = anyon::bicharacter(&d2).map_err(|e| e.to_string())?;
    ensure(b1.table == vec![vec![zero, half], vec![half, zero]], format!("chi(D1) = {:?}", b1.table))?;
    ensure(b2.table == vec![vec![half, zero], vec![zero, half]], format!("chi(D2) = {:?}", b2.table))?;
    let t_inv = qca::inverse(&library::shift()).unwrap();
    let rec = anyon::equivalent(&d1, &qca::compose(&t_inv, &d2).unwrap()).map_err(|e| e.to_string())?;
    ensure(rec.equivalent, "D1 not equivalent to T^-1 D2")?;
    let ne = anyon::equivalent(&d1, &d2).map_err(|e| e.to_string())?;
    ensure(!ne.equivalent, "D1 equivalent to D2")?;
    for (n, m) in [("D1", &d1), ("D2", &d2)] {
        let ty = anyon::ty_conditions(m).map_err(|e| e.to_string())?;
        ensure(ty == (true, true), format!("TY({n}) = {ty:?}"))?;
    }
    Ok(format!("ind(D1) = {i1}, ind(D2) = {i2}, chi(D1)(a,b) = -1, chi(D2)(a,a) = -1, TY holds"))
}

fn c9_eta() -> Outcome {
    let g = group(&[2]);
    let k = qca::kw(&g, 0).unwrap();
    let mut out = Vec::new();
    for xi in 2..=4u64 {
        let p = IntervalPair::from_segments(0, 2, xi, 2).unwrap();
        let sites = (4 + xi) as usize;
        let den = index::eta_squared_symmetric(&g, p.minus, p.plus);
        let num = index::eta_squared(&AlgebraSpec::Image(&k, p.minus), &AlgebraSpec::Symmetric(p.plus))
            .map_err(|e| e.to_string())?;
        ensure(den.to_u64() == Some(1 << (2 * xi - 1)), format!("xi={xi}: denominator {}", den.value()))?;
        ensure(num.to_u64() == Some(1 << (2 * xi)), format!("xi={xi}: numerator {}", num.value()))?;
        let dd = oracle::dense_eta(&g, &AlgebraSpec::Symmetric(p.minus), &AlgebraSpec::Symmetric(p.plus), sites)
            .map_err(|e| e.to_string())?;
        let dn = oracle::dense_eta(&g, &AlgebraSpec::Image(&k, p.minus), &AlgebraSpec::Symmetric(p.plus), sites)
            .map_err(|e| e.to_string())?;
        ensure(Some(dd) == den.to_u64() && Some(dn) == num.to_u64(), format!("xi={xi}: dense {dd}, {dn}"))?;
        out.push(format!("xi={xi}: {dd}/{dn}"));
    }
    Ok(out.join(", "))
}

fn c10_choi() -> Outcome {
    let mut out = Vec::new();
    for (n, l) in [(2u32, 4usize), (2, 6), (3, 3)] {
        let r = oracle::choi_check(n, l, SEED).map_err(|e| e.to_string())?;
        ensure(r.stabilizer_count == 2 * l && r.independent == 2 * l, format!("{r:?}"))?;
        ensure(r.commuting && r.uniqueness_defect < DENSE_TOL, format!("{r:?}"))?;
        ensure(r.intertwining_residual < DENSE_TOL, format!("intertwining {}", r.intertwining_residual))?;
        ensure(r.fusion_residual < DENSE_TOL, format!("fusion {}", r.fusion_residual))?;
        out.push(format!("(n={n},L={l}) res {:.1e}", r.intertwining_residual.max(r.fusion_residual)));
    }
    Ok(out.join(", "))
}

fn c11_fermions() -> Outcome {
    let r = oracle::fermionization_check(6).map_err(|e| e.to_string())?;
    ensure(r.max_anticommutator < FERMION_TOL, format!("anticommutator {}", r.max_anticommutator))?;
    ensure(r.symbolic_identity == ("4".into(), "4".into()), format!("identity {:?}", r.symbolic_identity))?;
    ensure(r.symbolic_kw == ("2".into(), "8".into()), format!("kw {:?}", r.symbolic_kw))?;
    ensure(r.kw_index_from_support == r.kw_index, "support index differs from ind(kw)")?;
    ensure(r.passed, format!("{r:?}"))?;
    Ok(format!(
        "identity (4,4), kw (2,8), sqrt(8/4) = {}, dense left dims {} and {}",
        r.kw_index, r.dense_left_identity, r.dense_left_kw
    ))
}

fn c12_q8() -> Outcome {
    let r = oracle::rep_q8_defect(8).map_err(|e| e.to_string())?;
    ensure(r.residual < Q8_TOL, format!("residual {}", r.residual))?;
    ensure(r.left_charge == [1, 1] && r.right_charge == [1, 1], "endpoints not charged under both factors")?;
    ensure(r.bulk == [1, 1], format!("bulk {:?}", r.bulk))?;
    ensure(r.ty_conditions == (true, true), format!("TY {:?}", r.ty_conditions))?;
    ensure(r.matches_d1_bicharacter && r.index.is_one(), format!("{r:?}"))?;
    ensure(r.passed, format!("{r:?}"))?;
    Ok(format!("U = {} (residual {:.1e}), ind(D') = 1", r.truncated, r.residual))
}

#[derive(Default)]
struct Violations {
    homomorphism: usize,
    trace: usize,
    locality: usize,
    invariance: usize,
    value_set: usize,
    checked: usize,
}

fn c13_properties() -> Outcome {
    let start = Instant::now();
    let mut v = Violations::default();
    let mut rng = sample::rng(SEED + 3);
    for f in [vec![2u32], vec![3], vec![2, 2], vec![2, 3]] {
        let g = group(&f);
        let letters = sample::builtins(&g);
        let mut maps: Vec<QcaMap> = letters.iter().map(|(_, m)| m.clone()).collect();
        for _ in 0..5 {
            maps.push(sample::word(&mut rng, &letters, 3).1);
        }
        for m in &maps {
            let l = m.spread() as i64;
            let win = Interval { lo: -3, hi: 4 };
            for _ in 0..100 {
                let p = sample::symmetric_monomial(&mut rng, &g, win);
                let q = sample::symmetric_monomial(&mut rng, &g, win);
                let (ap, aq) = (m.apply(&p).unwrap(), m.apply(&q).unwrap());
                let apq = m.apply(&p.multiply(&q).unwrap()).unwrap();
                if apq != ap.multiply(&aq).unwrap()
                    || ap.commutation_phase(&aq).unwrap() != p.commutation_phase(&q).unwrap()
                {
                    v.homomorphism += 1;
                }
                let lhs = ap.dagger().multiply(&aq).unwrap().normalized_trace();
                let rhs = p.dagger().multiply(&q).unwrap().normalized_trace();
                if lhs != rhs || ap.normalized_trace() != p.normalized_trace() {
                    v.trace += 1;
                }
                if let (Some(s), Some(t)) = (p.support(), ap.support()) {
                    if t.lo < s.lo - l || t.hi > s.hi + l {
                        v.locality += 1;
                    }
                }
                v.checked += 1;
            }
            let placements = index::default_placements(m.spread(), 5);
            match index::probe_global_invariance(m, &placements) {
                Ok(r) if r.invariant => {}
                Ok(_) => v.invariance += 1,
                Err(_) => v.value_set += 1,
            }
            if let Ok(x) = index::ind_default(m) {
                if x.check_value_set(&g).is_err() {
                    v.value_set += 1;
                }
            }
        }
    }
    let took = start.elapsed();
    let total = v.homomorphism + v.trace + v.locality + v.invariance + v.value_set;
    ensure(
        total == 0,
        format!(
            "violations: homomorphism {}, trace {}, locality {}, invariance {}, value set {}",
            v.homomorphism, v.trace, v.locality, v.invariance, v.value_set
        ),
    )?;
    Ok(format!("{} random pairs, zero violations, {took:?}", v.checked))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("ind(KW) = sqrt(2) at every placement", c1_kw_placements),
        ("ind(translation) = d", c2_translation),
        ("ind(KW_j) = sqrt(n_j); ind(spt) = ind(out) = 1", c3_kw_spt_out),
        ("KW.KW = translation on Z2", c4_kw_squared),
        ("index multiplicativity on random words", c5_multiplicativity),
        ("ind * ind_reflected = 1", c6_reflection),
        ("anyon permutations of KW and spt", c7_anyons),
        ("Z2xZ2 duality maps D1, D2", c8_z2z2),
        ("overlap counting against dense traces", c9_eta),
        ("Choi-state construction of D", c10_choi),
        ("fermionic operators and support algebras", c11_fermions),
        ("Rep(Q8) defect probe", c12_q8),
        ("seeded property suites", c13_properties),
    ];
    let start = Instant::now();
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let dt = t.elapsed();
        match res {
            Ok(detail) => println!("[PASS] {:>2} {name}: {detail} ({dt:.2?})", k + 1),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {:>2} {name}: {detail} ({dt:.2?})", k + 1);
            }
        }
    }
    let total = start.elapsed();
    if total > SUITE_BUDGET {
        failed += 1;
        println!("[FAIL] suite runtime {total:?} exceeds {SUITE_BUDGET:?}");
    }
    println!("{} of {} criteria passed in {total:.2?}", criteria.len() - failed.min(criteria.len()), criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
