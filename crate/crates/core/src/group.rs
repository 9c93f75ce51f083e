//! Finite Abelian groups `G = Z_{n_0} x ... x Z_{n_{r-1}}`, characters, automorphisms and
//! type-II cocycle data.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{self, reduce};
use crate::error::{Error, Result};
use crate::modlin::{self, ModularSystem};
use crate::phase::Phase;

/// Integer matrix; `m[j][k]` is the factor-`j` exponent of the image of generator `k`.
pub type IntMatrix = Vec<Vec<i64>>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Arc<[u32]>,
}

impl FiniteAbelianGroup {
    pub fn new(factors: Vec<u32>) -> Result<Self> {
        if factors.is_empty() {
            return Err(Error::InvalidGroup("no cyclic factors".into()));
        }
        if let Some(n) = factors.iter().find(|&&n| n < 2) {
            return Err(Error::InvalidGroup(format!("factor order {n} < 2")));
        }
        Ok(FiniteAbelianGroup { factors: factors.into() })
    }

    pub fn cyclic(n: u32) -> Self {
        Self::new(vec![n]).expect("cyclic group of order >= 2")
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn modulus(&self, j: usize) -> u32 {
        self.factors[j]
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().map(|&n| n as u64).product()
    }

    pub fn moduli_u64(&self) -> Vec<u64> {
        self.factors.iter().map(|&n| n as u64).collect()
    }

    pub fn check_factor(&self, j: usize) -> Result<()> {
        if j < self.rank() {
            Ok(())
        } else {
            Err(Error::FactorOutOfRange { index: j, rank: self.rank() })
        }
    }

    pub fn same_as(&self, other: &Self, what: &str) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::GroupMismatch(format!("{what}: {self} vs {other}")))
        }
    }

    fn reduce_vec(&self, exps: &[i64]) -> Result<Vec<u32>> {
        if exps.len() != self.rank() {
            return Err(Error::Malformed(format!(
                "expected {} exponents, got {}",
                self.rank(),
                exps.len()
            )));
        }
        Ok(exps
            .iter()
            .zip(self.factors.iter())
            .map(|(&e, &n)| reduce(e, n as u64) as u32)
            .collect())
    }

    pub fn element(&self, exps: &[i64]) -> Result<GroupElement> {
        Ok(GroupElement { group: self.clone(), exps: self.reduce_vec(exps)? })
    }

    pub fn character(&self, exps: &[i64]) -> Result<Character> {
        Ok(Character { group: self.clone(), exps: self.reduce_vec(exps)? })
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { group: self.clone(), exps: vec![0; self.rank()] }
    }

    pub fn generator(&self, j: usize) -> GroupElement {
        let mut exps = vec![0; self.rank()];
        exps[j] = 1;
        GroupElement { group: self.clone(), exps }
    }

    pub fn trivial_character(&self) -> Character {
        Character { group: self.clone(), exps: vec![0; self.rank()] }
    }

    pub fn dual_generator(&self, j: usize) -> Character {
        let mut exps = vec![0; self.rank()];
        exps[j] = 1;
        Character { group: self.clone(), exps }
    }

    /// All exponent vectors in mixed-radix order (last factor fastest).
    pub fn exponent_vectors(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![]];
        for &n in self.factors.iter() {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..n).map(move |e| {
                        let mut w = v.clone();
                        w.push(e);
                        w
                    })
                })
                .collect();
        }
        out
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        self.exponent_vectors()
            .into_iter()
            .map(|exps| GroupElement { group: self.clone(), exps })
            .collect()
    }

    pub fn characters(&self) -> Vec<Character> {
        self.exponent_vectors()
            .into_iter()
            .map(|exps| Character { group: self.clone(), exps })
            .collect()
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|n| format!("Z{n}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Group{:?}", &self.factors[..])
    }
}

impl Serialize for FiniteAbelianGroup {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.factors.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteAbelianGroup {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(d)?;
        FiniteAbelianGroup::new(v).map_err(serde::de::Error::custom)
    }
}

/// An element of `G`, stored as reduced exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GroupElement {
    group: FiniteAbelianGroup,
    exps: Vec<u32>,
}

/// A character of `G`; exponent `c_j` means the value `exp(2 pi i c_j / n_j)` on generator `j`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Character {
    group: FiniteAbelianGroup,
    exps: Vec<u32>,
}

macro_rules! exponent_vector_impl {
    ($t:ty) => {
        impl $t {
            pub fn group(&self) -> &FiniteAbelianGroup {
                &self.group
            }
            pub fn exps(&self) -> &[u32] {
                &self.exps
            }
            pub fn is_trivial(&self) -> bool {
                self.exps.iter().all(|&e| e == 0)
            }
            pub fn add(&self, other: &Self) -> Result<Self> {
                self.group.same_as(&other.group, "add")?;
                let exps = self
                    .exps
                    .iter()
                    .zip(&other.exps)
                    .zip(self.group.factors())
                    .map(|((a, b), n)| (a + b) % n)
                    .collect();
                Ok(Self { group: self.group.clone(), exps })
            }
            pub fn neg(&self) -> Self {
                let exps = self
                    .exps
                    .iter()
                    .zip(self.group.factors())
                    .map(|(a, n)| (n - a) % n)
                    .collect();
                Self { group: self.group.clone(), exps }
            }
            pub fn as_i64(&self) -> Vec<i64> {
                self.exps.iter().map(|&e| e as i64).collect()
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> = self.exps.iter().map(|e| e.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }

        impl Serialize for $t {
            fn serialize<S: serde::Serializer>(
                &self,
                s: S,
            ) -> std::result::Result<S::Ok, S::Error> {
                self.exps.serialize(s)
            }
        }
    };
}

exponent_vector_impl!(GroupElement);
exponent_vector_impl!(Character);

pub fn compose_elements(g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
    g.add(h)
}

/// `sum_j c_j g_j / n_j mod 1`.
pub fn evaluate_character(x: &Character, g: &GroupElement) -> Result<Phase> {
    x.group.same_as(&g.group, "evaluate_character")?;
    Ok(pairing(x.group.factors(), &x.as_i64(), &g.as_i64()))
}

/// Pairing of raw exponent vectors.
pub fn pairing(factors: &[u32], c: &[i64], g: &[i64]) -> Phase {
    let mut acc = Phase::zero();
    for ((&n, &a), &b) in factors.iter().zip(c).zip(g) {
        acc += Phase::new(a * b, n as i64);
    }
    acc
}

/// True when `m` (rows indexed by `dst`, columns by `src`) is a well-defined homomorphism.
pub fn is_homomorphism(src: &[u32], dst: &[u32], m: &IntMatrix) -> bool {
    m.len() == dst.len()
        && m.iter().all(|row| row.len() == src.len())
        && (0..dst.len()).all(|j| {
            (0..src.len()).all(|k| reduce(m[j][k] * src[k] as i64, dst[j] as u64) == 0)
        })
}

/// Applies a homomorphism matrix to an exponent vector, reducing into `dst`.
pub fn apply_matrix(m: &IntMatrix, x: &[i64], dst: &[u32]) -> Vec<i64> {
    m.iter()
        .zip(dst)
        .map(|(row, &n)| {
            let s: i128 = row.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum();
            s.rem_euclid(n as i128) as i64
        })
        .collect()
}

/// `a . b` reduced row-wise modulo `dst`.
pub fn matmul(a: &IntMatrix, b: &IntMatrix, dst: &[u32]) -> IntMatrix {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    (0..a.len())
        .map(|j| {
            (0..cols)
                .map(|k| {
                    let s: i128 = (0..inner).map(|t| a[j][t] as i128 * b[t][k] as i128).sum();
                    s.rem_euclid(dst[j] as i128) as i64
                })
                .collect()
        })
        .collect()
}

pub fn reduce_matrix(m: &IntMatrix, dst: &[u32]) -> IntMatrix {
    m.iter()
        .zip(dst)
        .map(|(row, &n)| row.iter().map(|&a| reduce(a, n as u64) as i64).collect())
        .collect()
}

pub fn identity_matrix(r: usize) -> IntMatrix {
    (0..r).map(|j| (0..r).map(|k| (j == k) as i64).collect()).collect()
}

/// Number of `x` in `src` with `m x = 0` in `dst`.
pub fn kernel_size(src: &[u32], dst: &[u32], m: &IntMatrix) -> u64 {
    let sys = ModularSystem::homogeneous(
        m.clone(),
        dst.iter().map(|&n| n as u64).collect(),
        src.iter().map(|&n| n as u64).collect(),
    )
    .expect("homomorphism matrices are well formed");
    let c = modlin::count_solutions(&sys);
    c.to_u64().expect("kernel size fits in u64")
}

/// Validity test by kernel counting: a homomorphism `G -> G` with trivial kernel.
pub fn is_valid_automorphism(group: &FiniteAbelianGroup, m: &IntMatrix) -> bool {
    let f = group.factors();
    is_homomorphism(f, f, m) && kernel_size(f, f, m) == 1
}

/// Constructs a two-sided inverse by solving `M x = e_k` column by column.
pub fn construct_inverse(group: &FiniteAbelianGroup, m: &IntMatrix) -> Option<IntMatrix> {
    let f = group.factors();
    if !is_homomorphism(f, f, m) {
        return None;
    }
    let r = group.rank();
    let mut cols = Vec::with_capacity(r);
    for k in 0..r {
        let mut c = vec![0i64; r];
        c[k] = 1;
        let sys = ModularSystem::new(m.clone(), c, group.moduli_u64(), group.moduli_u64()).ok()?;
        let x = modlin::solve(&sys).ok()?;
        cols.push(x);
    }
    let inv: IntMatrix = (0..r).map(|j| (0..r).map(|k| cols[k][j] as i64).collect()).collect();
    let id = identity_matrix(r);
    let ok = is_homomorphism(f, f, &inv)
        && matmul(m, &inv, f) == reduce_matrix(&id, f)
        && matmul(&inv, m, f) == reduce_matrix(&id, f);
    ok.then_some(inv)
}

/// An automorphism of `G` given by its integer matrix.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct GroupAutomorphism {
    #[serde(skip)]
    group: FiniteAbelianGroup,
    matrix: IntMatrix,
    #[serde(skip)]
    inverse: IntMatrix,
}

impl GroupAutomorphism {
    pub fn new(group: &FiniteAbelianGroup, matrix: IntMatrix) -> Result<Self> {
        let r = group.rank();
        if matrix.len() != r || matrix.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidAutomorphism(format!("matrix must be {r}x{r}")));
        }
        let f = group.factors();
        if !is_homomorphism(f, f, &matrix) {
            return Err(Error::InvalidAutomorphism(
                "entries violate M_jk n_k = 0 mod n_j".into(),
            ));
        }
        let inverse = construct_inverse(group, &matrix)
            .ok_or_else(|| Error::InvalidAutomorphism("matrix is not invertible".into()))?;
        Ok(GroupAutomorphism { group: group.clone(), matrix: reduce_matrix(&matrix, f), inverse })
    }

    pub fn identity(group: &FiniteAbelianGroup) -> Self {
        Self::new(group, identity_matrix(group.rank())).expect("identity is valid")
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &IntMatrix {
        &self.inverse
    }

    pub fn apply(&self, g: &GroupElement) -> Result<GroupElement> {
        self.group.same_as(g.group(), "automorphism")?;
        self.group.element(&apply_matrix(&self.matrix, &g.as_i64(), self.group.factors()))
    }

    /// Matrix `N` of the induced action on charges: `sum_j M_jk N_jl / n_j = delta_kl / n_k mod 1`.
    /// Equivalently the dual of the inverse automorphism.
    pub fn charge_matrix(&self) -> IntMatrix {
        let f = self.group.factors();
        let r = f.len();
        let big = f.iter().fold(1u64, |acc, &n| arith::lcm(acc, n as u64)) as i64;
        // rows k, unknowns N_{j l} for fixed l
        let a: IntMatrix =
            (0..r).map(|k| (0..r).map(|j| self.matrix[j][k] * (big / f[j] as i64)).collect()).collect();
        let mut n = vec![vec![0i64; r]; r];
        for l in 0..r {
            let c: Vec<i64> = (0..r).map(|k| if k == l { big / f[k] as i64 } else { 0 }).collect();
            let sys = ModularSystem::new(a.clone(), c, vec![big as u64; r], self.group.moduli_u64())
                .expect("well-formed dual system");
            let x = modlin::solve(&sys).expect("automorphisms have a dual");
            for j in 0..r {
                n[j][l] = x[j] as i64;
            }
        }
        n
    }
}

/// Type-II cocycle data: pairings `t_jk`, `j < k`, reduced modulo `gcd(n_j, n_k)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CocycleClass {
    group: FiniteAbelianGroup,
    pairing: BTreeMap<(usize, usize), u32>,
}

impl CocycleClass {
    pub fn new(group: &FiniteAbelianGroup, entries: &[((usize, usize), i64)]) -> Result<Self> {
        let mut pairing = BTreeMap::new();
        for &((j, k), t) in entries {
            if j >= k || k >= group.rank() {
                return Err(Error::InvalidCocycle(format!(
                    "pairing index ({j},{k}) must satisfy j < k < {}",
                    group.rank()
                )));
            }
            let g = arith::gcd(group.modulus(j) as u64, group.modulus(k) as u64);
            let v = reduce(t, g) as u32;
            if v != 0 {
                pairing.insert((j, k), v);
            } else {
                pairing.remove(&(j, k));
            }
        }
        Ok(CocycleClass { group: group.clone(), pairing })
    }

    pub fn trivial(group: &FiniteAbelianGroup) -> Self {
        CocycleClass { group: group.clone(), pairing: BTreeMap::new() }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn get(&self, j: usize, k: usize) -> u32 {
        self.pairing.get(&(j, k)).copied().unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        self.pairing.is_empty()
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), u32)> + '_ {
        self.pairing.iter().map(|(&k, &v)| (k, v))
    }
}

impl fmt::Display for CocycleClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pairing.is_empty() {
            return write!(f, "trivial");
        }
        let parts: Vec<String> =
            self.pairing.iter().map(|((j, k), t)| format!("t{j}{k}={t}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for CocycleClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, u32> =
            self.pairing.iter().map(|((j, k), t)| (format!("t{j}{k}"), *t)).collect();
        m.serialize(s)
    }
}

/// Character carried by the domain wall of factor `j` under the entangler of `omega`.
/// Antisymmetric in the pair `(j, k)` so that the resulting map preserves commutation.
pub fn slant_product(omega: &CocycleClass, j: usize) -> Result<Character> {
    let g = omega.group();
    g.check_factor(j)?;
    let mut exps = vec![0i64; g.rank()];
    for (k, e) in exps.iter_mut().enumerate() {
        if k == j {
            continue;
        }
        let nk = g.modulus(k) as i64;
        let d = arith::gcd(g.modulus(j) as u64, nk as u64) as i64;
        *e = if j < k {
            omega.get(j, k) as i64 * (nk / d)
        } else {
            -(omega.get(k, j) as i64) * (nk / d)
        };
    }
    g.character(&exps)
}

/// For each prime dividing `|G|`, its multiplicity in every factor order.
pub fn prime_split(group: &FiniteAbelianGroup) -> BTreeMap<u64, Vec<u32>> {
    let mut out: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for (p, _) in arith::factorize(group.order()) {
        let v = group.factors().iter().map(|&n| arith::valuation(n as u64, p)).collect();
        out.insert(p, v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(f: &[u32]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(f.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_groups() {
        assert!(FiniteAbelianGroup::new(vec![]).is_err());
        assert!(FiniteAbelianGroup::new(vec![2, 1]).is_err());
    }

    #[test]
    fn compose_examples() {
        let z22 = g(&[2, 2]);
        let a = z22.element(&[1, 0]).unwrap();
        let b = z22.element(&[0, 1]).unwrap();
        assert_eq!(compose_elements(&a, &b).unwrap().exps(), &[1, 1]);
        let z4 = g(&[4]);
        let x = z4.element(&[3]).unwrap();
        let y = z4.element(&[2]).unwrap();
        assert_eq!(compose_elements(&x, &y).unwrap().exps(), &[1]);
        assert_eq!(compose_elements(&x, &z4.identity()).unwrap(), x);
        assert!(compose_elements(&a, &x).is_err());
    }

    #[test]
    fn character_examples() {
        let z2 = g(&[2]);
        let c = z2.character(&[1]).unwrap();
        assert_eq!(evaluate_character(&c, &z2.element(&[1]).unwrap()).unwrap(), Phase::new(1, 2));
        let z3 = g(&[3]);
        let c = z3.character(&[1]).unwrap();
        assert_eq!(evaluate_character(&c, &z3.element(&[2]).unwrap()).unwrap(), Phase::new(2, 3));
        let z22 = g(&[2, 2]);
        let c = z22.character(&[1, 1]).unwrap();
        let e = z22.element(&[1, 0]).unwrap();
        assert_eq!(evaluate_character(&c, &e).unwrap(), Phase::new(1, 2));
    }

    #[test]
    fn slant_examples() {
        let z22 = g(&[2, 2]);
        let w = CocycleClass::new(&z22, &[((0, 1), 1)]).unwrap();
        assert_eq!(slant_product(&w, 0).unwrap().exps(), &[0, 1]);
        let z24 = g(&[2, 4]);
        let w = CocycleClass::new(&z24, &[((0, 1), 1)]).unwrap();
        assert_eq!(slant_product(&w, 1).unwrap().exps(), &[1, 0]);
        assert_eq!(slant_product(&w, 0).unwrap().exps(), &[0, 2]);
        for grp in [g(&[2, 2]), g(&[3, 6, 2])] {
            let t = CocycleClass::trivial(&grp);
            for j in 0..grp.rank() {
                assert!(slant_product(&t, j).unwrap().is_trivial());
            }
        }
        assert!(slant_product(&CocycleClass::trivial(&z22), 2).is_err());
    }

    #[test]
    fn prime_split_examples() {
        assert_eq!(prime_split(&g(&[2, 2])), BTreeMap::from([(2, vec![1, 1])]));
        assert_eq!(prime_split(&g(&[4])), BTreeMap::from([(2, vec![2])]));
        assert_eq!(prime_split(&g(&[6])), BTreeMap::from([(2, vec![1]), (3, vec![1])]));
    }

    #[test]
    fn automorphism_basics() {
        let z22 = g(&[2, 2]);
        let swap = GroupAutomorphism::new(&z22, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let e = z22.element(&[1, 0]).unwrap();
        assert_eq!(swap.apply(&e).unwrap().exps(), &[0, 1]);
        assert!(GroupAutomorphism::new(&z22, vec![vec![1, 1], vec![1, 1]]).is_err());
        let z24 = g(&[2, 4]);
        // g1 -> g0 + g1 is a valid automorphism of Z2 x Z4
        assert!(GroupAutomorphism::new(&z24, vec![vec![1, 1], vec![0, 1]]).is_ok());
        // g0 -> g1 is not a homomorphism (order 2 to order 4)
        assert!(GroupAutomorphism::new(&z24, vec![vec![1, 0], vec![1, 1]]).is_err());
    }

    #[test]
    fn charge_matrix_is_dual_inverse() {
        let z33 = g(&[3, 3]);
        let a = GroupAutomorphism::new(&z33, vec![vec![1, 1], vec![0, 2]]).unwrap();
        let n = a.charge_matrix();
        let f = z33.factors();
        for k in 0..2 {
            for l in 0..2 {
                let mut acc = Phase::zero();
                for j in 0..2 {
                    acc += Phase::new(a.matrix()[j][k] * n[j][l], f[j] as i64);
                }
                let want = if k == l { Phase::new(1, f[k] as i64) } else { Phase::zero() };
                assert_eq!(acc, want);
            }
        }
    }
}
