//! Linear congruences over mixed moduli.
//!
//! A system `sum_j A_ij x_j = c_i (mod r_i)` with `x_j in Z_{m_j}` is split by prime.
//! For each prime `p` the rows and unknowns are lifted to a common modulus `p^K` by scaling
//! row `i` with `p^(K - v_p(r_i))`, the lifted system is brought to Smith form over
//! `Z/p^K`, and the count is corrected for the `p^(K - v_p(m_j))`-fold redundancy of each
//! lifted unknown. Solutions are recombined by the Chinese remainder theorem.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::arith::{self, crt_idempotent, inv_mod, mul_mod, reduce, valuation};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularSystem {
    a: Vec<Vec<i64>>,
    c: Vec<i64>,
    row_moduli: Vec<u64>,
    col_moduli: Vec<u64>,
}

impl ModularSystem {
    /// Builds a system; each coefficient must be compatible with its column modulus
    /// (`A_ij m_j = 0 mod r_i`) so that the equations are well defined on `Z_{m_j}`.
    pub fn new(
        a: Vec<Vec<i64>>,
        c: Vec<i64>,
        row_moduli: Vec<u64>,
        col_moduli: Vec<u64>,
    ) -> Result<Self> {
        if a.len() != row_moduli.len() || c.len() != row_moduli.len() {
            return Err(Error::Malformed("row count mismatch".into()));
        }
        if a.iter().any(|row| row.len() != col_moduli.len()) {
            return Err(Error::Malformed("column count mismatch".into()));
        }
        if row_moduli.iter().chain(&col_moduli).any(|&m| m < 2) {
            return Err(Error::Malformed("moduli must be at least 2".into()));
        }
        for (i, row) in a.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let prod = (v as i128).rem_euclid(row_moduli[i] as i128) * col_moduli[j] as i128;
                if prod % row_moduli[i] as i128 != 0 {
                    return Err(Error::Malformed(format!(
                        "coefficient ({i},{j}) = {v} not well defined for x in Z_{} mod {}",
                        col_moduli[j], row_moduli[i]
                    )));
                }
            }
        }
        Ok(ModularSystem { a, c, row_moduli, col_moduli })
    }

    pub fn homogeneous(a: Vec<Vec<i64>>, row_moduli: Vec<u64>, col_moduli: Vec<u64>) -> Result<Self> {
        let c = vec![0; row_moduli.len()];
        Self::new(a, c, row_moduli, col_moduli)
    }

    pub fn rows(&self) -> usize {
        self.row_moduli.len()
    }

    pub fn cols(&self) -> usize {
        self.col_moduli.len()
    }

    pub fn row_moduli(&self) -> &[u64] {
        &self.row_moduli
    }

    pub fn col_moduli(&self) -> &[u64] {
        &self.col_moduli
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.a
    }

    pub fn rhs(&self) -> &[i64] {
        &self.c
    }

    pub fn to_homogeneous(&self) -> Self {
        ModularSystem { c: vec![0; self.rows()], ..self.clone() }
    }

    pub fn is_satisfied(&self, x: &[u64]) -> bool {
        x.len() == self.cols()
            && (0..self.rows()).all(|i| {
                let s: i128 = self.a[i].iter().zip(x).map(|(&a, &v)| a as i128 * v as i128).sum();
                (s - self.c[i] as i128).rem_euclid(self.row_moduli[i] as i128) == 0
            })
    }

    fn primes(&self) -> Vec<u64> {
        let mut ps = BTreeSet::new();
        for &m in self.row_moduli.iter().chain(&self.col_moduli) {
            for (p, _) in arith::factorize(m) {
                ps.insert(p);
            }
        }
        ps.into_iter().collect()
    }
}

/// An exact solution count, kept in factored form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionCount {
    feasible: bool,
    exponents: BTreeMap<u64, u64>,
}

impl SolutionCount {
    pub fn zero() -> Self {
        SolutionCount { feasible: false, exponents: BTreeMap::new() }
    }

    pub fn one() -> Self {
        SolutionCount { feasible: true, exponents: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        !self.feasible
    }

    /// Prime exponents of a non-zero count.
    pub fn exponents(&self) -> &BTreeMap<u64, u64> {
        &self.exponents
    }

    pub fn exponent(&self, p: u64) -> u64 {
        self.exponents.get(&p).copied().unwrap_or(0)
    }

    pub fn value(&self) -> BigUint {
        if !self.feasible {
            return BigUint::default();
        }
        let mut v = BigUint::one();
        for (&p, &e) in &self.exponents {
            v *= BigUint::from(p).pow(e as u32);
        }
        v
    }

    pub fn to_u64(&self) -> Option<u64> {
        self.value().to_u64()
    }

    fn mul_prime_power(&mut self, p: u64, e: u64) {
        if e > 0 {
            *self.exponents.entry(p).or_insert(0) += e;
        }
    }
}

/// Smith reduction of one prime component.
struct PrimeComponent {
    p: u64,
    k: u32,
    q: u64,
    /// valuations of the pivots, in pivot order
    pivots: Vec<u32>,
    /// transformed right-hand side (rows of the lifted system)
    c: Vec<u64>,
    /// column transform, `x = V y`
    v: Vec<Vec<u64>>,
    /// `v_p(m_j)` per column
    col_val: Vec<u32>,
}

impl PrimeComponent {
    fn build(sys: &ModularSystem, p: u64) -> PrimeComponent {
        let col_val: Vec<u32> = sys.col_moduli.iter().map(|&m| valuation(m, p)).collect();
        let row_val: Vec<u32> = sys.row_moduli.iter().map(|&m| valuation(m, p)).collect();
        let k = col_val.iter().chain(&row_val).copied().max().unwrap_or(0);
        let q = arith::pow(p, k);
        let n = sys.cols();
        let mut a: Vec<Vec<u64>> = Vec::new();
        let mut c: Vec<u64> = Vec::new();
        for (i, &b) in row_val.iter().enumerate() {
            if b == 0 {
                continue;
            }
            let pb = arith::pow(p, b);
            let scale = arith::pow(p, k - b);
            a.push(sys.a[i].iter().map(|&v| mul_mod(reduce(v, pb), scale, q)).collect());
            c.push(mul_mod(reduce(sys.c[i], pb), scale, q));
        }
        let mut v: Vec<Vec<u64>> = (0..n).map(|j| (0..n).map(|t| (j == t) as u64).collect()).collect();
        let pivots = smith_mod(&mut a, &mut c, &mut v, p, q);
        PrimeComponent { p, k, q, pivots, c, v, col_val }
    }

    fn rank(&self) -> usize {
        self.pivots.len()
    }

    fn feasible(&self) -> bool {
        let r = self.rank();
        self.pivots.iter().enumerate().all(|(t, &e)| self.c[t].is_multiple_of(arith::pow(self.p, e)))
            && self.c[r..].iter().all(|&v| v == 0)
    }

    /// log_p of the number of solutions of this component in `prod Z_{p^{a_j}}`.
    fn log_count(&self) -> u64 {
        let n = self.v.len() as u64;
        let total: u64 = self.pivots.iter().map(|&e| e as u64).sum::<u64>()
            + self.k as u64 * (n - self.rank() as u64);
        let redundancy: u64 = self.col_val.iter().map(|&a| (self.k - a) as u64).sum();
        total - redundancy
    }

    fn apply_v(&self, y: &[u64]) -> Vec<u64> {
        let n = self.v.len();
        (0..n)
            .map(|j| {
                let mut s = 0u64;
                for (t, &yt) in y.iter().enumerate() {
                    s = (s + mul_mod(self.v[j][t], yt, self.q)) % self.q;
                }
                s % arith::pow(self.p, self.col_val[j])
            })
            .collect()
    }

    fn particular(&self) -> Vec<u64> {
        let n = self.v.len();
        let mut y = vec![0u64; n];
        for (t, &e) in self.pivots.iter().enumerate() {
            y[t] = self.c[t] / arith::pow(self.p, e);
        }
        self.apply_v(&y)
    }

    fn kernel(&self) -> Vec<Vec<u64>> {
        let n = self.v.len();
        let mut out = Vec::new();
        for t in 0..n {
            let mut y = vec![0u64; n];
            y[t] = if t < self.rank() { arith::pow(self.p, self.k - self.pivots[t]) } else { 1 };
            let x = self.apply_v(&y);
            if x.iter().any(|&v| v != 0) {
                out.push(x);
            }
        }
        out
    }
}

/// In-place Smith reduction over `Z/q`, `q = p^K`. Returns pivot valuations.
fn smith_mod(
    a: &mut [Vec<u64>],
    c: &mut [u64],
    v: &mut [Vec<u64>],
    p: u64,
    q: u64,
) -> Vec<u32> {
    let rows = a.len();
    let cols = v.len();
    let mut pivots = Vec::new();
    let sub_mul = |x: u64, f: u64, y: u64| (x + q - mul_mod(f, y, q)) % q;
    for t in 0..rows.min(cols) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &val) in row.iter().enumerate().skip(t) {
                if val != 0 {
                    let e = valuation(val, p);
                    if best.is_none_or(|(be, _, _)| e < be) {
                        best = Some((e, i, j));
                    }
                }
            }
        }
        let Some((e, bi, bj)) = best else { break };
        a.swap(t, bi);
        c.swap(t, bi);
        if bj != t {
            for row in a.iter_mut() {
                row.swap(t, bj);
            }
            for row in v.iter_mut() {
                row.swap(t, bj);
            }
        }
        let pe = arith::pow(p, e);
        let unit = a[t][t] / pe;
        let uinv = inv_mod(unit % q, q).expect("pivot cofactor is a unit");
        for x in a[t].iter_mut() {
            *x = mul_mod(*x, uinv, q);
        }
        c[t] = mul_mod(c[t], uinv, q);
        for i in t + 1..rows {
            if a[i][t] != 0 {
                let f = a[i][t] / pe;
                for j in t..cols {
                    a[i][j] = sub_mul(a[i][j], f, a[t][j]);
                }
                c[i] = sub_mul(c[i], f, c[t]);
            }
        }
        for j in t + 1..cols {
            if a[t][j] != 0 {
                let f = a[t][j] / pe;
                for row in a.iter_mut() {
                    row[j] = sub_mul(row[j], f, row[t]);
                }
                for row in v.iter_mut() {
                    row[j] = sub_mul(row[j], f, row[t]);
                }
            }
        }
        pivots.push(e);
    }
    pivots
}

fn components(sys: &ModularSystem) -> Vec<PrimeComponent> {
    sys.primes().into_iter().map(|p| PrimeComponent::build(sys, p)).collect()
}

pub fn count_solutions(sys: &ModularSystem) -> SolutionCount {
    let mut out = SolutionCount::one();
    for comp in components(sys) {
        if !comp.feasible() {
            return SolutionCount::zero();
        }
        out.mul_prime_power(comp.p, comp.log_count());
    }
    out
}

fn lift(sys: &ModularSystem, comp: &PrimeComponent, x: &[u64], acc: &mut [u64]) {
    for (j, &m) in sys.col_moduli.iter().enumerate() {
        let a = comp.col_val[j];
        if a == 0 {
            continue;
        }
        let e = crt_idempotent(m, arith::pow(comp.p, a));
        acc[j] = (acc[j] + mul_mod(x[j], e, m)) % m;
    }
}

/// Some solution, or [`Error::Infeasible`].
pub fn solve(sys: &ModularSystem) -> Result<Vec<u64>> {
    let mut x = vec![0u64; sys.cols()];
    for comp in components(sys) {
        if !comp.feasible() {
            return Err(Error::Infeasible);
        }
        let xp = comp.particular();
        lift(sys, &comp, &xp, &mut x);
    }
    debug_assert!(sys.is_satisfied(&x));
    Ok(x)
}

/// Generators of the solution group of the homogeneous system `A x = 0`.
pub fn kernel_basis(sys: &ModularSystem) -> Vec<Vec<u64>> {
    let h = sys.to_homogeneous();
    let mut out = Vec::new();
    for comp in components(&h) {
        for g in comp.kernel() {
            let mut x = vec![0u64; h.cols()];
            lift(&h, &comp, &g, &mut x);
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(a: Vec<Vec<i64>>, c: Vec<i64>, r: Vec<u64>, m: Vec<u64>) -> ModularSystem {
        ModularSystem::new(a, c, r, m).unwrap()
    }

    #[test]
    fn spec_examples() {
        let s = sys(vec![], vec![], vec![], vec![2, 2, 2]);
        assert_eq!(count_solutions(&s).value(), BigUint::from(8u32));
        let s = sys(vec![vec![1, 1]], vec![1], vec![2], vec![2, 2]);
        assert_eq!(count_solutions(&s).value(), BigUint::from(2u32));
        let s = sys(vec![vec![2]], vec![0], vec![4], vec![4]);
        assert_eq!(count_solutions(&s).value(), BigUint::from(2u32));
    }

    #[test]
    fn solve_examples() {
        let s = sys(vec![vec![1]], vec![1], vec![2], vec![2]);
        assert_eq!(solve(&s).unwrap(), vec![1]);
        let s = sys(vec![vec![0]], vec![1], vec![2], vec![2]);
        assert_eq!(solve(&s), Err(Error::Infeasible));
        let s = sys(vec![vec![1, 1]], vec![0], vec![2], vec![2, 2]);
        assert_eq!(kernel_basis(&s), vec![vec![1, 1]]);
    }

    #[test]
    fn malformed_is_distinct() {
        // 1 * x with x in Z_2 is not well defined modulo 4
        let e = ModularSystem::new(vec![vec![1]], vec![0], vec![4], vec![2]).unwrap_err();
        assert!(matches!(e, Error::Malformed(_)));
        assert!(ModularSystem::new(vec![vec![1, 2]], vec![0], vec![4], vec![4]).is_err());
    }

    #[test]
    fn mixed_moduli() {
        // 2 x ≡ 0 mod 4 with x in Z_2 is well defined; only x = 0 works
        let s = sys(vec![vec![2]], vec![0], vec![4], vec![2]);
        assert_eq!(count_solutions(&s).value(), BigUint::from(1u32));
        let s = sys(vec![vec![2]], vec![2], vec![4], vec![2]);
        assert_eq!(solve(&s).unwrap(), vec![1]);
        // x + 3 y ≡ 2 mod 6 over Z6 x Z6: 6 solutions
        let s = sys(vec![vec![1, 3]], vec![2], vec![6], vec![6, 6]);
        assert_eq!(count_solutions(&s).value(), BigUint::from(6u32));
        let x = solve(&s).unwrap();
        assert!(s.is_satisfied(&x));
    }
}
