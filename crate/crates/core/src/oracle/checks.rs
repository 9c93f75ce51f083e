//! Engine/oracle agreement, dense overlaps, fermionic operators and the Rep(Q8) defect probe.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use super::choi::{kw_intertwiner, ring_generators};
use super::dense::{proportionality, realize, realize_periodic, Chain, DenseOperator, MonomialMatrix};
use crate::anyon::{self, Bicharacter};
use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::index::{self, AlgebraSpec, IndexValue};
use crate::library::{self, qubit};
use crate::pauli::{Interval, NormalizedTrace, PauliMonomial, Site};
use crate::phase::Phase;
use crate::qca::{self, Generator, QcaMap};
use crate::sample;

pub const TOL: f64 = 1e-10;

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraReport {
    pub group: String,
    pub sites: usize,
    pub pairs: usize,
    pub max_product_deviation: f64,
    pub commutation_mismatches: usize,
    pub trace_mismatches: usize,
    pub charge_mismatches: usize,
    pub passed: bool,
}

fn trace_of(m: &MonomialMatrix) -> Complex64 {
    (0..m.dim()).filter(|&k| m.perm[k] == k).map(|k| m.phase[k]).sum()
}

/// Multiplication, commutation phases, normalized traces and charges against dense matrices.
pub fn algebra_agreement(group: &FiniteAbelianGroup, sites: usize, pairs: usize, seed: u64) -> Result<AlgebraReport> {
    let chain = Chain::new(group, sites)?;
    let window = Interval { lo: 0, hi: sites as Site - 1 };
    let mut rng = sample::rng(seed);
    let d = chain.dim() as f64;
    let etas: Vec<MonomialMatrix> = (0..group.rank())
        .map(|j| {
            let mut e = PauliMonomial::identity(group);
            for s in window.sites() {
                e *= &PauliMonomial::x(group, s, j);
            }
            realize(&e, &chain)
        })
        .collect::<Result<_>>()?;
    let mut report = AlgebraReport {
        group: group.to_string(),
        sites,
        pairs,
        max_product_deviation: 0.0,
        commutation_mismatches: 0,
        trace_mismatches: 0,
        charge_mismatches: 0,
        passed: false,
    };
    for _ in 0..pairs {
        let p = sample::monomial(&mut rng, group, window);
        let q = sample::monomial(&mut rng, group, window);
        let (dp, dq) = (realize(&p, &chain)?, realize(&q, &chain)?);
        let dpq = realize(&p.multiply(&q)?, &chain)?;
        report.max_product_deviation = report.max_product_deviation.max(dpq.max_deviation(&dp.mul(&dq)));

        let phi = p.commutation_phase(&q)?;
        let lhs = dp.mul(&dq);
        let rhs = dq.mul(&dp).scale(phi.to_complex());
        if lhs.max_deviation(&rhs) > TOL {
            report.commutation_mismatches += 1;
        }

        let t = trace_of(&dp) / d;
        let ok = match p.normalized_trace() {
            NormalizedTrace::Zero => t.norm() < TOL,
            NormalizedTrace::Unit(ph) => (t - ph.to_complex()).norm() < TOL,
        };
        if !ok {
            report.trace_mismatches += 1;
        }

        let charge = p.charge();
        for (j, eta) in etas.iter().enumerate() {
            let conj = eta.mul(&dp).mul(&eta.adjoint());
            let expect = dp.scale(Phase::new(charge.exps()[j] as i64, group.modulus(j) as i64).to_complex());
            if conj.max_deviation(&expect) > TOL {
                report.charge_mismatches += 1;
            }
        }
    }
    report.passed = report.max_product_deviation < TOL
        && report.commutation_mismatches == 0
        && report.trace_mismatches == 0
        && report.charge_mismatches == 0;
    Ok(report)
}

/// A monomial unitary `U` with `U O U^dagger = m(O)` on the ring, for maps whose
/// `Z^dagger Z` images are diagonal. Built by propagating `U|0>` along single-site shifts.
pub fn monomial_unitary(m: &QcaMap, chain: &Chain) -> Result<MonomialMatrix> {
    let g = m.group();
    let l = chain.sites() as Site;
    if l % m.period() as Site != 0 {
        return Err(Error::Oracle(format!("ring of {l} sites is not a multiple of the period")));
    }
    let mut zz = Vec::new();
    let mut xs = Vec::new();
    for i in 0..l {
        for j in 0..g.rank() {
            let img = m.image(&Generator::zz(i, j));
            if img.exps().values().any(|&(a, _)| a != 0) {
                return Err(Error::Oracle(format!("image of ZZ_{i}[{j}] is not diagonal")));
            }
            zz.push(realize_periodic(&img, chain)?);
            xs.push(realize_periodic(&m.image(&Generator::x(i, j)), chain)?);
        }
    }
    let dim = chain.dim();
    let one = Complex64::new(1.0, 0.0);
    let start = (0..dim)
        .find(|&k| zz.iter().all(|z| z.perm[k] == k && (z.phase[k] - one).norm() < TOL))
        .ok_or_else(|| Error::Oracle("no joint eigenstate of the ZZ images".into()))?;
    let mut perm = vec![usize::MAX; dim];
    let mut phase = vec![Complex64::new(0.0, 0.0); dim];
    perm[0] = start;
    phase[0] = one;
    let mut queue = std::collections::VecDeque::from([0usize]);
    let r = g.rank();
    while let Some(k) = queue.pop_front() {
        let d = chain.digits(k);
        for (c, x) in xs.iter().enumerate() {
            let mut e = d.clone();
            e[c] = (e[c] + 1) % g.modulus(c % r) as usize;
            let k2 = chain.index(&e);
            if perm[k2] == usize::MAX {
                perm[k2] = x.perm[perm[k]];
                phase[k2] = x.phase[perm[k]] * phase[k];
                queue.push_back(k2);
            }
        }
    }
    let u = MonomialMatrix { perm, phase };
    let ud = u.adjoint();
    for o in ring_generators(g, chain.sites()) {
        let lhs = u.mul(&realize_periodic(&o, chain)?).mul(&ud);
        let rhs = realize_periodic(&m.apply(&o)?, chain)?;
        if lhs.max_deviation(&rhs) > TOL {
            return Err(Error::Oracle(format!("no monomial unitary realizes the map on {o}")));
        }
    }
    Ok(u)
}

#[derive(Clone, Debug, Serialize)]
pub struct ApplyReport {
    pub map: String,
    pub sites: usize,
    pub samples: usize,
    pub method: String,
    pub max_residual: f64,
    pub passed: bool,
}

/// `realize(apply(m, P))` against unitary conjugation, or against `D`-intertwining for kw on a
/// single cyclic factor.
pub fn apply_agreement(name: &str, m: &QcaMap, sites: usize, samples: usize, seed: u64) -> Result<ApplyReport> {
    let g = m.group();
    let chain = Chain::new(g, sites)?;
    let l = m.spread() as Site;
    let window = Interval { lo: l, hi: sites as Site - 1 - l };
    if window.lo > window.hi {
        return Err(Error::Oracle(format!("ring of {sites} too short for spread {l}")));
    }
    let mut rng = sample::rng(seed);
    let mut worst = 0.0f64;
    let method;
    match monomial_unitary(m, &chain) {
        Ok(u) => {
            method = "unitary conjugation".to_string();
            let ud = u.adjoint();
            for _ in 0..samples {
                let p = sample::symmetric_monomial(&mut rng, g, window);
                let lhs = u.mul(&realize_periodic(&p, &chain)?).mul(&ud);
                let rhs = realize_periodic(&m.apply(&p)?, &chain)?;
                worst = worst.max(lhs.max_deviation(&rhs));
            }
        }
        Err(_) if g.rank() == 1 && m.acts_like(&qca::kw(g, 0)?) => {
            method = "intertwining".to_string();
            let (d, _) = kw_intertwiner(g.modulus(0), sites, seed)?;
            for _ in 0..samples {
                let p = sample::symmetric_monomial(&mut rng, g, window);
                let lhs = &d.matrix * realize_periodic(&p, &chain)?.to_dense();
                let rhs = realize_periodic(&m.apply(&p)?, &chain)?.to_dense() * &d.matrix;
                worst = worst.max((&lhs - &rhs).norm() / lhs.norm());
            }
        }
        Err(e) => return Err(e),
    }
    Ok(ApplyReport {
        map: name.to_string(),
        sites,
        samples,
        method,
        max_residual: worst,
        passed: worst < TOL,
    })
}

fn enumerate(g: &FiniteAbelianGroup, gens: &[Generator], map: Option<&QcaMap>) -> Result<Vec<PauliMonomial>> {
    let imgs: Vec<PauliMonomial> = gens
        .iter()
        .map(|x| match map {
            Some(m) => m.image(x),
            None => x.monomial(g),
        })
        .collect();
    let mut out = vec![PauliMonomial::identity(g)];
    for (x, img) in gens.iter().zip(&imgs) {
        let n = g.modulus(x.factor);
        let mut next = Vec::with_capacity(out.len() * n as usize);
        for b in &out {
            let mut p = b.clone();
            for _ in 0..n {
                next.push(p.clone());
                p = p.multiply(img)?;
            }
        }
        out = next;
    }
    Ok(out)
}

/// `sum |tr(O_a^dagger O_b) / d|^2` over the two monomial bases on an open chain of `sites`.
pub fn dense_eta(group: &FiniteAbelianGroup, a: &AlgebraSpec, b: &AlgebraSpec, sites: usize) -> Result<u64> {
    let chain = Chain::new(group, sites)?;
    let realize_all = |spec: &AlgebraSpec| -> Result<Vec<MonomialMatrix>> {
        let ops = match spec {
            AlgebraSpec::Symmetric(iv) => enumerate(group, &Generator::all_in(group, *iv), None)?,
            AlgebraSpec::Image(m, iv) => enumerate(group, &Generator::all_in(group, *iv), Some(*m))?,
        };
        ops.iter().map(|p| realize(p, &chain)).collect()
    };
    let ea = realize_all(a)?;
    let eb = realize_all(b)?;
    let mut buckets: HashMap<usize, Vec<&MonomialMatrix>> = HashMap::new();
    for m in &eb {
        buckets.entry(m.perm[0]).or_default().push(m);
    }
    let d = chain.dim() as f64;
    let mut total = 0.0f64;
    for x in &ea {
        if let Some(bs) = buckets.get(&x.perm[0]) {
            for y in bs {
                total += (x.inner(y) / d).norm_sqr();
            }
        }
    }
    let r = total.round();
    if (total - r).abs() > 1e-9 {
        return Err(Error::Oracle(format!("overlap sum {total} is not an integer")));
    }
    Ok(r as u64)
}

#[derive(Clone, Debug, Serialize)]
pub struct FermionReport {
    pub sites: usize,
    pub max_anticommutator: f64,
    pub max_square_deviation: f64,
    /// Dense left support dimension for the identity and for kw.
    pub dense_left_identity: usize,
    pub dense_left_kw: usize,
    pub symbolic_identity: (String, String),
    pub symbolic_kw: (String, String),
    pub kw_index_from_support: IndexValue,
    pub kw_index: IndexValue,
    pub passed: bool,
}

fn anticommutator_norm(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a * b + b * a).norm()
}

/// Rank of the span of `tr_rest((1 x Q^dagger) M)` over all `M` and Pauli `Q` on the complement
/// of the first `keep` sites.
fn left_support_dim(chain: &Chain, ops: &[DMatrix<Complex64>], keep: usize) -> Result<usize> {
    let g = chain.group();
    let n_left: usize = (0..keep).map(|_| g.order() as usize).product();
    let n_rest = chain.dim() / n_left;
    let rest = Chain::new(g, chain.sites() - keep)?;
    let window = Interval { lo: 0, hi: rest.sites() as Site - 1 };
    let paulis: Vec<MonomialMatrix> = enumerate_paulis(g, window)
        .iter()
        .map(|p| realize(p, &rest))
        .collect::<Result<_>>()?;
    let mut rows: Vec<Vec<Complex64>> = Vec::new();
    for m in ops {
        for q in &paulis {
            let mut c = vec![Complex64::new(0.0, 0.0); n_left * n_left];
            for rl in 0..n_left {
                for sl in 0..n_left {
                    let mut acc = Complex64::new(0.0, 0.0);
                    // sum_{c, c'} conj(Q[c', c]) M[(rl, c'), (sl, c)]
                    for col in 0..n_rest {
                        let row = q.perm[col];
                        acc += q.phase[col].conj() * m[(rl * n_rest + row, sl * n_rest + col)];
                    }
                    c[rl * n_left + sl] = acc;
                }
            }
            if c.iter().any(|z| z.norm() > 1e-9) {
                rows.push(c);
            }
        }
    }
    if rows.is_empty() {
        return Ok(0);
    }
    let mat = DMatrix::from_fn(rows.len(), n_left * n_left, |i, j| rows[i][j]);
    Ok(mat.rank(1e-8))
}

fn enumerate_paulis(g: &FiniteAbelianGroup, window: Interval) -> Vec<PauliMonomial> {
    let mut out = vec![PauliMonomial::identity(g)];
    for s in window.sites() {
        for j in 0..g.rank() {
            let n = g.modulus(j) as i64;
            let mut next = Vec::new();
            for p in &out {
                for a in 0..n {
                    for b in 0..n {
                        let mut q = p.clone();
                        q.set(s, j, a, b);
                        next.push(q);
                    }
                }
            }
            out = next;
        }
    }
    out
}

fn group_closure(gens: &[PauliMonomial]) -> Result<Vec<PauliMonomial>> {
    let g = gens[0].group().clone();
    let mut out = vec![PauliMonomial::identity(&g)];
    for x in gens {
        let n = x.order();
        let mut next = Vec::new();
        for b in &out {
            let mut p = b.clone();
            for _ in 0..n {
                next.push(p.clone());
                p = p.multiply(x)?;
            }
        }
        out = next;
    }
    Ok(out)
}

/// Jordan-Wigner operators on an open qubit chain and the support of the cell algebra.
pub fn fermionization_check(sites: usize) -> Result<FermionReport> {
    if sites < 6 {
        return Err(Error::Oracle("fermionization check needs at least 6 sites".into()));
    }
    let g = FiniteAbelianGroup::cyclic(2);
    let chain = Chain::new(&g, sites)?;
    let t = sites as Site - 1;
    let psi = |i: Site| {
        let mut p = PauliMonomial::z(&g, i, 0);
        for j in i + 1..t {
            p *= &PauliMonomial::x(&g, j, 0);
        }
        &p * &PauliMonomial::z(&g, t, 0)
    };
    let ops: Vec<DMatrix<Complex64>> =
        (0..t).map(|i| realize(&psi(i), &chain).map(|m| m.to_dense())).collect::<Result<_>>()?;
    let id = DMatrix::<Complex64>::identity(chain.dim(), chain.dim());
    let mut max_anti = 0.0f64;
    let mut max_sq = 0.0f64;
    for i in 0..ops.len() {
        max_sq = max_sq.max((&ops[i] * &ops[i] - &id).norm());
        for j in i + 1..ops.len() {
            max_anti = max_anti.max(anticommutator_norm(&ops[i], &ops[j]));
        }
    }

    // cell = sites {1, 2}, left region = sites {0, 1}
    let cell_gens = [PauliMonomial::x(&g, 1, 0), PauliMonomial::x(&g, 2, 0), psi(1), psi(2)];
    let kwm = qca::kw(&g, 0)?;
    let dense_left = |m: &QcaMap| -> Result<usize> {
        let imgs: Vec<PauliMonomial> = cell_gens.iter().map(|p| m.apply(p)).collect::<Result<_>>()?;
        let all = group_closure(&imgs)?;
        let dense: Vec<DMatrix<Complex64>> =
            all.iter().map(|p| realize(p, &chain).map(|m| m.to_dense())).collect::<Result<_>>()?;
        left_support_dim(&chain, &dense, 2)
    };
    let dense_left_identity = dense_left(&qca::identity(&g, 1))?;
    let dense_left_kw = dense_left(&kwm)?;
    let si = index::support_algebra_dims(&qca::identity(&g, 1), 1)?;
    let sk = index::support_algebra_dims(&kwm, 1)?;
    let kw_index = index::ind_default(&kwm)?;
    let passed = max_anti < 1e-12
        && max_sq < 1e-12
        && dense_left_identity == 4
        && dense_left_kw == 2
        && si.d_left == 4u32.into()
        && si.d_right == 4u32.into()
        && sk.d_left == 2u32.into()
        && sk.d_right == 8u32.into()
        && sk.index == kw_index;
    Ok(FermionReport {
        sites,
        max_anticommutator: max_anti,
        max_square_deviation: max_sq,
        dense_left_identity,
        dense_left_kw,
        symbolic_identity: (si.d_left.to_string(), si.d_right.to_string()),
        symbolic_kw: (sk.d_left.to_string(), sk.d_right.to_string()),
        kw_index_from_support: sk.index,
        kw_index,
        passed,
    })
}

/// Principal square root `(1 + i)/2 + (1 - i)/2 P` of an involution.
fn sqrt_involution(p: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = p.nrows();
    DMatrix::<Complex64>::identity(n, n) * Complex64::new(0.5, 0.5) + p * Complex64::new(0.5, -0.5)
}

/// `Z_{s-1} X_s Z_{s+1}` on the interleaved chain.
pub fn cluster_gate(s: Site) -> PauliMonomial {
    let mut p = library::qz(s - 1);
    p *= &library::qx(s);
    p *= &library::qz(s + 1);
    p
}

/// Conjugation by `prod_s sqrt(Z_{s-1} X_s Z_{s+1})` as a monomial map: a gate anticommuting
/// with `Q` sends it to `-i P Q`.
pub fn sqrt_cluster_map() -> Result<QcaMap> {
    let g = library::z2z2();
    QcaMap::from_fn(&g, 1, |gen| {
        let mut q = gen.monomial(&g);
        let sup = gen.support();
        let (lo, hi) = (2 * sup.lo - 2, 2 * sup.hi + 3);
        for s in lo..=hi {
            let p = cluster_gate(s);
            if !p.commutes_with(&q) {
                q = p.multiply(&q)?.times_phase(Phase::new(3, 4));
            }
        }
        Ok(q)
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Q8Report {
    pub qubits: usize,
    pub lambda: (Site, Site),
    pub truncated: String,
    pub expected: String,
    pub residual: f64,
    pub left_endpoint: String,
    pub left_charge: Vec<u32>,
    pub right_endpoint: String,
    pub right_charge: Vec<u32>,
    pub bulk: Vec<u32>,
    pub w_map_residual: f64,
    pub ty_conditions: (bool, bool),
    pub bicharacter: Bicharacter,
    pub matches_d1_bicharacter: bool,
    pub index: IndexValue,
    pub passed: bool,
}

/// Reads a monomial off a dense matrix proportional to one; returns it with the fit residual.
pub fn identify_monomial(chain: &Chain, m: &DMatrix<Complex64>) -> Result<(PauliMonomial, f64)> {
    let g = chain.group();
    let r = g.rank();
    let col0 = m.column(0);
    let (row0, _) = col0.iter().enumerate().max_by(|a, b| a.1.norm().total_cmp(&b.1.norm())).expect("non-empty");
    let a = chain.digits(row0);
    let base = m[(row0, 0)];
    let mut p = PauliMonomial::identity(g);
    let coords = chain.sites() * r;
    let mut zs = vec![0i64; coords];
    for (c, z) in zs.iter_mut().enumerate() {
        let n = g.modulus(c % r) as usize;
        let mut e = vec![0usize; coords];
        e[c] = 1;
        let target: Vec<usize> =
            e.iter().zip(&a).enumerate().map(|(i, (x, y))| (x + y) % g.modulus(i % r) as usize).collect();
        let val = m[(chain.index(&target), chain.index(&e))] / base;
        let ph = Phase::from_complex(val / val.norm(), n as i64, 1e-6)
            .ok_or_else(|| Error::Oracle("matrix is not monomial".into()))?;
        *z = ph.numer() * (n as i64 / ph.denom());
    }
    for c in 0..coords {
        let (s, f) = ((c / r) as Site, c % r);
        if a[c] != 0 || zs[c] != 0 {
            p.set(s, f, a[c] as i64, zs[c]);
        }
    }
    let dense = realize(&p, chain)?.to_dense();
    let (_, res) = proportionality(m, &dense);
    Ok((p, res))
}

/// Truncated `W W'` on qubits `lambda` of a ring of `qubits` interleaved qubits.
pub fn rep_q8_defect(qubits: usize) -> Result<Q8Report> {
    if qubits < 8 || !qubits.is_multiple_of(2) {
        return Err(Error::Oracle("Rep(Q8) probe needs an even number >= 8 of qubits".into()));
    }
    let g = library::z2z2();
    let chain = Chain::new(&g, qubits / 2)?;
    let q = qubits as Site;
    let d1 = library::d1();
    let lambda = (2, q - 3);
    let gate = |p: &PauliMonomial| -> Result<DMatrix<Complex64>> {
        Ok(sqrt_involution(&realize_periodic(p, &chain)?.to_dense()))
    };
    let mut w = DMatrix::<Complex64>::identity(chain.dim(), chain.dim());
    let mut w2 = w.clone();
    for s in lambda.0..=lambda.1 {
        let p = cluster_gate(s);
        let pp = d1.apply(&p)?;
        if !pp.pow(2).is_identity() {
            return Err(Error::Oracle(format!("image of gate {s} is not an involution")));
        }
        w *= gate(&p)?;
        w2 *= gate(&pp)?;
    }
    let u = w * w2;
    let (m, n) = lambda;
    let mut expected = &library::qz(m - 1) * &library::qz(m);
    for j in m..=n {
        expected *= &library::qx(j);
    }
    expected *= &library::qz(n);
    expected *= &library::qz(n + 1);
    let (_, residual) = proportionality(&u, &realize_periodic(&expected, &chain)?.to_dense());
    let (found, fit) = identify_monomial(&chain, &u)?;

    let q_of = |c: (Site, usize)| 2 * c.0 + c.1 as Site;
    let left = found.restrict(|c| q_of(c) <= m);
    let right = found.restrict(|c| q_of(c) >= n).dagger();
    let mid = found.restrict(|c| q_of(c) > m && q_of(c) < n);
    let mut bulk = vec![0u32; 2];
    let mut pure_bulk = true;
    for s in m + 1..n {
        let (c, f) = qubit(s);
        let e = mid.get(c, f);
        pure_bulk &= e.1 == 0 && (bulk[f] == 0 || bulk[f] == e.0);
        bulk[f] = e.0;
    }
    pure_bulk &= (m + 1..n).all(|s| {
        let (c, f) = qubit(s);
        mid.get(c, f).0 == bulk[f]
    });

    let w_map = sqrt_cluster_map()?;
    let ring_w = {
        let mut w = DMatrix::<Complex64>::identity(chain.dim(), chain.dim());
        for s in 0..q {
            w *= gate(&cluster_gate(s))?;
        }
        DenseOperator::new(chain.clone(), w)
    };
    let mut w_map_residual = 0.0f64;
    for o in ring_generators(&g, chain.sites()) {
        let lhs = &ring_w.matrix * realize_periodic(&o, &chain)?.to_dense() * ring_w.matrix.adjoint();
        let rhs = realize_periodic(&w_map.apply(&o)?, &chain)?.to_dense();
        w_map_residual = w_map_residual.max((&lhs - &rhs).norm() / rhs.norm());
    }
    let d_prime = qca::compose(&w_map, &d1)?;
    let ty_conditions = anyon::ty_conditions(&d_prime)?;
    let bicharacter = anyon::bicharacter(&d_prime)?;
    let matches_d1_bicharacter = bicharacter == anyon::bicharacter(&d1)?;
    let index = index::ind_default(&d_prime)?;
    let left_charge = left.charge().exps().to_vec();
    let right_charge = right.charge().exps().to_vec();
    let passed = residual < 1e-8
        && fit < 1e-8
        && pure_bulk
        && bulk == [1, 1]
        && left_charge == [1, 1]
        && right_charge == [1, 1]
        && w_map_residual < TOL
        && ty_conditions == (true, true)
        && matches_d1_bicharacter
        && index.is_one();
    Ok(Q8Report {
        qubits,
        lambda,
        truncated: found.with_phase(Phase::zero()).to_string(),
        expected: expected.to_string(),
        residual,
        left_endpoint: left.to_string(),
        left_charge,
        right_endpoint: right.to_string(),
        right_charge,
        bulk,
        w_map_residual,
        ty_conditions,
        bicharacter,
        matches_d1_bicharacter,
        index,
        passed,
    })
}
