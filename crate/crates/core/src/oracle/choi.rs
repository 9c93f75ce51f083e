//! The Kramers-Wannier operator on a periodic `Z_n` ring, built from the stabilizers of its
//! Choi state on the doubled chain (system sites `0..L`, ancilla `i'` at site `L + i`).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::dense::{proportionality, realize_periodic, Chain, DenseOperator, MonomialMatrix};
use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::modlin::{self, ModularSystem};
use crate::pauli::{PauliMonomial, Site};
use crate::qca::{self, Generator};
use crate::sample;

pub const TOL: f64 = 1e-10;

#[derive(Clone, Debug)]
pub struct StabilizerSet {
    pub chain: Chain,
    pub stabilizers: Vec<PauliMonomial>,
}

impl StabilizerSet {
    pub fn pairwise_commuting(&self) -> bool {
        let s = &self.stabilizers;
        (0..s.len()).all(|a| (a + 1..s.len()).all(|b| s[a].commutes_with(&s[b])))
    }

    /// Number of independent generators: the exponent map from `Z_n^k` is injective exactly
    /// when this equals `k`, counted as `k - log_n |kernel|`.
    pub fn independent_count(&self) -> usize {
        let n = self.chain.group().modulus(0) as u64;
        let mut coords: Vec<(Site, usize)> =
            self.stabilizers.iter().flat_map(|m| m.exps().keys().copied()).collect();
        coords.sort();
        coords.dedup();
        let mut a = Vec::new();
        for c in &coords {
            for part in 0..2 {
                a.push(
                    self.stabilizers
                        .iter()
                        .map(|m| {
                            let e = m.get(c.0, c.1);
                            (if part == 0 { e.0 } else { e.1 }) as i64
                        })
                        .collect(),
                );
            }
        }
        let k = self.stabilizers.len();
        let sys = ModularSystem::homogeneous(a, vec![n; 2 * coords.len()], vec![n; k])
            .expect("stabilizer system");
        let ker = modlin::count_solutions(&sys).value();
        let mut log = 0usize;
        let mut rest = ker;
        let nb = num_bigint::BigUint::from(n);
        while rest > num_bigint::BigUint::from(1u32) {
            rest /= &nb;
            log += 1;
        }
        k - log
    }

    /// Joint `+1` projection of `v`.
    pub fn project(&self, v: &DVector<Complex64>) -> Result<DVector<Complex64>> {
        let n = self.chain.group().modulus(0) as usize;
        let mut out = v.clone();
        for s in &self.stabilizers {
            let m = realize_periodic(s, &self.chain)?;
            let mut acc = out.clone();
            let mut power = out.clone();
            for _ in 1..n {
                power = m.apply(&power);
                acc += &power;
            }
            out = acc / Complex64::new(n as f64, 0.0);
        }
        Ok(out)
    }
}

pub fn kw_stabilizers(n: u32, l: usize) -> Result<StabilizerSet> {
    if l < 2 {
        return Err(Error::Oracle("ring needs at least 2 sites".into()));
    }
    let g = FiniteAbelianGroup::cyclic(n);
    let chain = Chain::new(&g, 2 * l)?;
    let l_s = l as Site;
    let anc = |i: Site| l_s + i.rem_euclid(l_s);
    let sys = |i: Site| i.rem_euclid(l_s);
    let mut stabilizers = Vec::with_capacity(2 * l);
    for i in 0..l_s {
        let mut a = PauliMonomial::single(&g, sys(i), 0, 0, -1);
        a *= &PauliMonomial::z(&g, sys(i + 1), 0);
        a *= &PauliMonomial::single(&g, anc(i), 0, -1, 0);
        stabilizers.push(a);
        let mut b = PauliMonomial::x(&g, sys(i + 1), 0);
        b *= &PauliMonomial::single(&g, anc(i), 0, 0, -1);
        b *= &PauliMonomial::z(&g, anc(i + 1), 0);
        stabilizers.push(b);
    }
    Ok(StabilizerSet { chain, stabilizers })
}

fn random_state(rng: &mut impl Rng, dim: usize) -> DVector<Complex64> {
    DVector::from_fn(dim, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

#[derive(Clone, Debug)]
pub struct ChoiState {
    pub stabilizers: StabilizerSet,
    pub psi: DVector<Complex64>,
    /// `1 - |<psi_1|psi_2>|` for two independent random projections.
    pub uniqueness_defect: f64,
}

pub fn kw_choi(n: u32, l: usize, seed: u64) -> Result<ChoiState> {
    let set = kw_stabilizers(n, l)?;
    if !set.pairwise_commuting() {
        return Err(Error::Oracle("Choi stabilizers do not commute".into()));
    }
    let dim = set.chain.dim();
    let mut rng = sample::rng(seed);
    let mut states = Vec::new();
    for _ in 0..2 {
        let v = set.project(&random_state(&mut rng, dim))?;
        let nv = v.norm();
        if nv < 1e-8 {
            return Err(Error::Oracle("projection annihilated a random state".into()));
        }
        states.push(v / Complex64::new(nv, 0.0));
    }
    let overlap = states[0].dotc(&states[1]).norm();
    let defect = 1.0 - overlap;
    if defect > TOL {
        return Err(Error::Oracle(format!("joint eigenspace is degenerate (overlap {overlap})")));
    }
    let psi = states.swap_remove(0);
    Ok(ChoiState { stabilizers: set, psi, uniqueness_defect: defect })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChoiReport {
    pub n: u32,
    pub sites: usize,
    pub stabilizer_count: usize,
    pub independent: usize,
    pub commuting: bool,
    pub uniqueness_defect: f64,
    pub intertwining_residual: f64,
    /// Relative residual of `D^2 ~ c (sum_k eta^k) T`.
    pub fusion_residual: f64,
    pub passed: bool,
}

/// `D_{a,c} = Psi(a, -c)`.
pub fn kw_intertwiner(n: u32, l: usize, seed: u64) -> Result<(DenseOperator, ChoiState)> {
    let st = kw_choi(n, l, seed)?;
    let g = FiniteAbelianGroup::cyclic(n);
    let sys = Chain::new(&g, l)?;
    let ds = sys.dim();
    let mut d = DMatrix::zeros(ds, ds);
    for a in 0..ds {
        for c in 0..ds {
            let neg: Vec<usize> =
                sys.digits(c).iter().map(|&x| (n as usize - x) % n as usize).collect();
            d[(a, c)] = st.psi[a * ds + sys.index(&neg)];
        }
    }
    let scale = d.norm() / (ds as f64).sqrt();
    Ok((DenseOperator::new(sys, d / Complex64::new(scale, 0.0)), st))
}

/// Generators `X_i` and `Z_i^dagger Z_{i+1}` of the ring, with wraparound.
pub fn ring_generators(g: &FiniteAbelianGroup, l: usize) -> Vec<PauliMonomial> {
    let mut out = Vec::new();
    for i in 0..l as Site {
        for j in 0..g.rank() {
            out.push(Generator::x(i, j).monomial(g));
            out.push(Generator::zz(i, j).monomial(g));
        }
    }
    out
}

pub fn intertwining_residual(d: &DenseOperator, n: u32) -> Result<f64> {
    let g = FiniteAbelianGroup::cyclic(n);
    let k = qca::kw(&g, 0)?;
    let chain = &d.chain;
    let mut worst = 0.0f64;
    for o in ring_generators(&g, chain.sites()) {
        let lhs = &d.matrix * realize_periodic(&o, chain)?.to_dense();
        let rhs = realize_periodic(&k.apply(&o)?, chain)?.to_dense() * &d.matrix;
        worst = worst.max((&lhs - &rhs).norm() / lhs.norm().max(1e-300));
    }
    Ok(worst)
}

/// `(sum_k eta^k) U_T` with `U_T X_i U_T^dagger = X_{i+1}`.
pub fn fusion_target(chain: &Chain) -> Result<DMatrix<Complex64>> {
    let g = chain.group();
    let n = g.modulus(0) as usize;
    let l = chain.sites();
    let t = chain.site_permutation(|s| (s + 1) % l);
    let mut eta = PauliMonomial::identity(g);
    for s in 0..l as Site {
        eta *= &PauliMonomial::x(g, s, 0);
    }
    let eta = realize_periodic(&eta, chain)?;
    let mut sum = MonomialMatrix::identity(chain.dim()).to_dense();
    let mut p = MonomialMatrix::identity(chain.dim());
    for _ in 1..n {
        p = p.mul(&eta);
        sum += p.to_dense();
    }
    Ok(sum * t.to_dense())
}

pub fn choi_check(n: u32, l: usize, seed: u64) -> Result<ChoiReport> {
    let set = kw_stabilizers(n, l)?;
    let commuting = set.pairwise_commuting();
    let independent = set.independent_count();
    let (d, st) = kw_intertwiner(n, l, seed)?;
    let intertwining_residual = intertwining_residual(&d, n)?;
    let d2 = &d.matrix * &d.matrix;
    let (_, fusion_residual) = proportionality(&d2, &fusion_target(&d.chain)?);
    let passed = commuting
        && independent == 2 * l
        && set.stabilizers.len() == 2 * l
        && st.uniqueness_defect < TOL
        && intertwining_residual < TOL
        && fusion_residual < TOL;
    Ok(ChoiReport {
        n,
        sites: l,
        stabilizer_count: set.stabilizers.len(),
        independent,
        commuting,
        uniqueness_defect: st.uniqueness_defect,
        intertwining_residual,
        fusion_residual,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_ring_of_four() {
        let r = choi_check(2, 4, 7).unwrap();
        assert_eq!(r.stabilizer_count, 8);
        assert_eq!(r.independent, 8);
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn z3_ring_of_three() {
        let r = choi_check(3, 3, 7).unwrap();
        assert_eq!(r.independent, 6);
        assert!(r.passed, "{r:?}");
    }
}
