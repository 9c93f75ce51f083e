//! String-operator data and the induced permutation of gauge-theory anyons.
//!
//! Labels are pairs `(flux h, charge c)` in `G x Ĝ`. The topological spin of `(h, c)` is
//! `c(h)` and the mutual braiding of two labels is `c1(h2) + c2(h1)`, both in `Q/Z`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{
    self, identity_matrix, is_homomorphism, kernel_size, matmul, pairing, Character, CocycleClass,
    FiniteAbelianGroup, GroupElement, IntMatrix,
};
use crate::index::{self, IndexValue, IntervalPair};
use crate::pauli::{Interval, PauliMonomial, Site};
use crate::phase::Phase;
use crate::qca::{self, QcaMap};
use crate::arith;

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum StringKind {
    Symmetry(GroupElement),
    Charge(Character),
}

/// `S_g = prod_{i in I} X_i^g`, or the charge pair `Z_lo^{-c} Z_hi^{c}` whose left end carries `c`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StringOperator {
    pub kind: StringKind,
    pub interval: Interval,
}

/// Minimal number of sites for strings analysed under a map of spread `l`.
pub fn min_string_len(l: u64) -> u64 {
    2 * (2 * l + 2) * (2 * l + 2) + 2 * l + 1
}

impl StringOperator {
    pub fn symmetry(g: GroupElement, interval: Interval) -> Self {
        StringOperator { kind: StringKind::Symmetry(g), interval }
    }

    pub fn charge(c: Character, interval: Interval) -> Self {
        StringOperator { kind: StringKind::Charge(c), interval }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        match &self.kind {
            StringKind::Symmetry(g) => g.group(),
            StringKind::Charge(c) => c.group(),
        }
    }

    pub fn monomial(&self) -> PauliMonomial {
        let group = self.group();
        let iv = self.interval;
        let mut m = PauliMonomial::identity(group);
        match &self.kind {
            StringKind::Symmetry(g) => {
                for s in iv.sites() {
                    for (j, &a) in g.exps().iter().enumerate() {
                        if a != 0 {
                            m.set(s, j, a as i64, 0);
                        }
                    }
                }
            }
            StringKind::Charge(c) => {
                for (j, &b) in c.exps().iter().enumerate() {
                    if b != 0 {
                        m.set(iv.lo, j, 0, -(b as i64));
                        m.set(iv.hi, j, 0, b as i64);
                    }
                }
            }
        }
        m
    }
}

/// `image = left . S_bulk . right^dagger` up to a phase; `left` and `right` carry equal charge.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct EndpointFactor {
    pub left: PauliMonomial,
    pub bulk: GroupElement,
    pub bulk_interval: Interval,
    pub right: PauliMonomial,
    pub charge: Character,
}

pub fn transform_string(m: &QcaMap, s: &StringOperator) -> Result<EndpointFactor> {
    let group = m.group();
    group.same_as(s.group(), "transform_string")?;
    let l = m.spread();
    let iv = s.interval;
    if iv.len() < min_string_len(l) {
        return Err(Error::Geometry(format!(
            "string on {iv} has {} sites, need at least {} for spread {l}",
            iv.len(),
            min_string_len(l)
        )));
    }
    let img = m.apply(&s.monomial())?;
    let l = l as Site;
    let outer = Interval { lo: iv.lo - l, hi: iv.hi + l };
    let bulk_iv = Interval { lo: iv.lo + l + 1, hi: iv.hi - l - 1 };
    if let Some(&(site, _)) = img.exps().keys().find(|c| !outer.contains(c.0)) {
        return Err(Error::InvalidQca(format!("string image reaches site {site} outside {outer}")));
    }
    let h: Vec<u32> = (0..group.rank()).map(|j| img.get(bulk_iv.lo, j).0).collect();
    for site in bulk_iv.sites() {
        for (j, &hj) in h.iter().enumerate() {
            let e = img.get(site, j);
            if e != (hj, 0) {
                return Err(Error::BulkNotPure(format!(
                    "site {site} factor {j} has X^{} Z^{} in a bulk of X^{hj}",
                    e.0, e.1
                )));
            }
        }
    }
    let left = img.restrict(|c| c.0 < bulk_iv.lo).with_phase(img.phase());
    let right = img.restrict(|c| c.0 > bulk_iv.hi).dagger().with_phase(Phase::zero());
    let charge = left.charge();
    if charge != right.charge() {
        return Err(Error::Inconsistent(format!(
            "endpoint charges differ: left {} carries {}, right {} carries {}",
            left,
            charge,
            right,
            right.charge()
        )));
    }
    let bulk = group.element(&h.iter().map(|&a| a as i64).collect::<Vec<_>>())?;
    Ok(EndpointFactor { left, bulk, bulk_interval: bulk_iv, right, charge })
}

/// `sigma: G -> G`, `mu: G -> Ĝ`, `gamma: Ĝ -> G`, `nu: Ĝ -> Ĝ`; column `k` is the image of
/// generator `k`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct StringTransformData {
    #[serde(skip)]
    pub group: FiniteAbelianGroup,
    pub sigma: IntMatrix,
    pub mu: IntMatrix,
    pub gamma: IntMatrix,
    pub nu: IntMatrix,
    pub placements: Vec<Interval>,
}

impl StringTransformData {
    pub fn gamma_is_trivial(&self) -> bool {
        self.gamma.iter().flatten().all(|&x| x == 0)
    }

    pub fn mu_is_trivial(&self) -> bool {
        self.mu.iter().flatten().all(|&x| x == 0)
    }

    pub fn sigma_is_identity(&self) -> bool {
        self.sigma == identity_matrix(self.group.rank())
    }
}

fn string_placements(l: u64) -> Vec<Interval> {
    let n = min_string_len(l) as Site;
    [(0, 0), (5, 3), (-11, 8)]
        .iter()
        .map(|&(lo, extra)| Interval { lo, hi: lo + n - 1 + extra })
        .collect()
}

fn columns_at(m: &QcaMap, iv: Interval) -> Result<[IntMatrix; 4]> {
    let group = m.group();
    let r = group.rank();
    let mut cols: [Vec<Vec<i64>>; 4] = Default::default();
    for k in 0..r {
        let f = transform_string(m, &StringOperator::symmetry(group.generator(k), iv))?;
        cols[0].push(f.bulk.as_i64());
        cols[1].push(f.charge.as_i64());
        let f = transform_string(m, &StringOperator::charge(group.dual_generator(k), iv))?;
        cols[2].push(f.bulk.as_i64());
        cols[3].push(f.charge.as_i64());
    }
    let t = |c: &Vec<Vec<i64>>| -> IntMatrix { (0..r).map(|j| (0..r).map(|k| c[k][j]).collect()).collect() };
    Ok([t(&cols[0]), t(&cols[1]), t(&cols[2]), t(&cols[3])])
}

pub fn string_data(m: &QcaMap) -> Result<StringTransformData> {
    let placements = string_placements(m.spread());
    let first = columns_at(m, placements[0])?;
    for &iv in &placements[1..] {
        if columns_at(m, iv)? != first {
            return Err(Error::Inconsistent(format!(
                "string data at {iv} differs from {}",
                placements[0]
            )));
        }
    }
    let f = m.group().factors();
    let names = ["sigma", "mu", "gamma", "nu"];
    for (mat, name) in first.iter().zip(names) {
        if !is_homomorphism(f, f, mat) {
            return Err(Error::Inconsistent(format!("{name} is not a homomorphism")));
        }
    }
    let [sigma, mu, gamma, nu] = first;
    Ok(StringTransformData { group: m.group().clone(), sigma, mu, gamma, nu, placements })
}

/// An automorphism of `G x Ĝ` as the block matrix `[[sigma, gamma], [mu, nu]]` acting on
/// `(flux; charge)`.
#[derive(Clone, PartialEq, Eq, Serialize)]
pub struct AnyonPermutation {
    #[serde(skip)]
    group: FiniteAbelianGroup,
    matrix: IntMatrix,
}

impl AnyonPermutation {
    pub fn from_data(d: &StringTransformData) -> Result<Self> {
        let r = d.group.rank();
        let mut matrix = vec![vec![0i64; 2 * r]; 2 * r];
        for j in 0..r {
            for k in 0..r {
                matrix[j][k] = d.sigma[j][k];
                matrix[j][r + k] = d.gamma[j][k];
                matrix[r + j][k] = d.mu[j][k];
                matrix[r + j][r + k] = d.nu[j][k];
            }
        }
        let p = AnyonPermutation { group: d.group.clone(), matrix };
        p.check()?;
        Ok(p)
    }

    pub fn identity(group: &FiniteAbelianGroup) -> Self {
        AnyonPermutation { group: group.clone(), matrix: identity_matrix(2 * group.rank()) }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    fn moduli(&self) -> Vec<u32> {
        let f = self.group.factors();
        f.iter().chain(f).copied().collect()
    }

    pub fn apply(&self, flux: &[i64], charge: &[i64]) -> (Vec<i64>, Vec<i64>) {
        let r = self.group.rank();
        let x: Vec<i64> = flux.iter().chain(charge).copied().collect();
        let y = group::apply_matrix(&self.matrix, &x, &self.moduli());
        (y[..r].to_vec(), y[r..].to_vec())
    }

    /// `self . other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.group.same_as(&other.group, "anyon permutation")?;
        Ok(AnyonPermutation {
            group: self.group.clone(),
            matrix: matmul(&self.matrix, &other.matrix, &self.moduli()),
        })
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.group)
    }

    /// Bijectivity, spin of each generator and mutual braiding of each generator pair.
    pub fn check(&self) -> Result<()> {
        let md = self.moduli();
        if !is_homomorphism(&md, &md, &self.matrix) {
            return Err(Error::Inconsistent("label map is not a homomorphism".into()));
        }
        if kernel_size(&md, &md, &self.matrix) != 1 {
            return Err(Error::Inconsistent("label map is not bijective".into()));
        }
        let f = self.group.factors();
        let r = f.len();
        let labels: Vec<(Vec<i64>, Vec<i64>)> = (0..2 * r)
            .map(|k| {
                let mut x = vec![0i64; 2 * r];
                x[k] = 1;
                (x[..r].to_vec(), x[r..].to_vec())
            })
            .collect();
        for (a, (h1, c1)) in labels.iter().enumerate() {
            let (h1p, c1p) = self.apply(h1, c1);
            if spin(f, h1, c1) != spin(f, &h1p, &c1p) {
                return Err(Error::Inconsistent(format!("spin of label {a} not preserved")));
            }
            for (b, (h2, c2)) in labels.iter().enumerate().skip(a + 1) {
                let (h2p, c2p) = self.apply(h2, c2);
                if braiding(f, (h1, c1), (h2, c2)) != braiding(f, (&h1p, &c1p), (&h2p, &c2p)) {
                    return Err(Error::Inconsistent(format!(
                        "braiding of labels {a}, {b} not preserved"
                    )));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for AnyonPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AnyonPermutation({} on {:?})", self.group, self.matrix)
    }
}

pub fn spin(f: &[u32], h: &[i64], c: &[i64]) -> Phase {
    pairing(f, c, h)
}

pub fn braiding(f: &[u32], a: (&[i64], &[i64]), b: (&[i64], &[i64])) -> Phase {
    pairing(f, a.1, b.0) + pairing(f, b.1, a.0)
}

pub fn anyon_permutation(m: &QcaMap) -> Result<AnyonPermutation> {
    AnyonPermutation::from_data(&string_data(m)?)
}

/// Boson table of the `Z2 x Z2` gauge theory, rows `(e1, e2, e1e2)`, `(m2, m1, m1m2)` and their
/// products.
pub fn boson_table_labels() -> [[([i64; 2], [i64; 2]); 3]; 3] {
    // (flux, charge)
    let e1 = ([0, 0], [1, 0]);
    let e2 = ([0, 0], [0, 1]);
    let m1 = ([1, 0], [0, 0]);
    let m2 = ([0, 1], [0, 0]);
    let add = |a: ([i64; 2], [i64; 2]), b: ([i64; 2], [i64; 2])| {
        (
            [(a.0[0] + b.0[0]) % 2, (a.0[1] + b.0[1]) % 2],
            [(a.1[0] + b.1[0]) % 2, (a.1[1] + b.1[1]) % 2],
        )
    };
    let r1 = [e1, e2, add(e1, e2)];
    let r2 = [m2, m1, add(m1, m2)];
    let r3 = [add(r1[0], r2[0]), add(r1[1], r2[1]), add(r1[2], r2[2])];
    [r1, r2, r3]
}

pub fn label_name(flux: &[i64], charge: &[i64]) -> String {
    let mut s = String::new();
    for (j, &c) in charge.iter().enumerate() {
        if c != 0 {
            s.push_str(&format!("e{}", j + 1));
        }
    }
    for (j, &h) in flux.iter().enumerate() {
        if h != 0 {
            s.push_str(&format!("m{}", j + 1));
        }
    }
    if s.is_empty() {
        s.push('1');
    }
    s
}

/// Action on the boson table: `(r, c) -> (row_perm[r], col_perm[c])`, transposed afterwards
/// when `transposes` is set.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct BosonTable {
    pub labels: [[String; 3]; 3],
    pub images: [[String; 3]; 3],
    pub transposes: bool,
    pub row_perm: [usize; 3],
    pub col_perm: [usize; 3],
}

impl BosonTable {
    pub fn is_identity(&self) -> bool {
        !self.transposes && self.row_perm == [0, 1, 2] && self.col_perm == [0, 1, 2]
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for r in 0..3 {
            let row: Vec<String> =
                (0..3).map(|c| format!("{:>9} -> {:<9}", self.labels[r][c], self.images[r][c])).collect();
            out.push_str(row.join(" | ").trim_end());
            out.push('\n');
        }
        out
    }
}

pub fn boson_table_z2z2(perm: &AnyonPermutation) -> Result<BosonTable> {
    if perm.group().factors() != [2, 2] {
        return Err(Error::GroupMismatch(format!(
            "boson table needs Z2xZ2, got {}",
            perm.group()
        )));
    }
    let table = boson_table_labels();
    let f = [2u32, 2];
    let zero = [0i64; 2];
    for line in 0..3 {
        let mut row_sum = (zero, zero);
        let mut col_sum = (zero, zero);
        for k in 0..3 {
            for (acc, lab) in [(&mut row_sum, table[line][k]), (&mut col_sum, table[k][line])] {
                for j in 0..2 {
                    acc.0[j] = (acc.0[j] + lab.0[j]) % 2;
                    acc.1[j] = (acc.1[j] + lab.1[j]) % 2;
                }
            }
            let (h, c) = table[line][k];
            if !spin(&f, &h, &c).is_zero() {
                return Err(Error::Inconsistent("table entry is not a boson".into()));
            }
        }
        if row_sum != (zero, zero) || col_sum != (zero, zero) {
            return Err(Error::Inconsistent("table line does not fuse to the vacuum".into()));
        }
    }
    let locate = |h: &[i64], c: &[i64]| -> Result<(usize, usize)> {
        for (r, row) in table.iter().enumerate() {
            for (k, lab) in row.iter().enumerate() {
                if lab.0 == h && lab.1 == c {
                    return Ok((r, k));
                }
            }
        }
        Err(Error::Inconsistent(format!("image {} is not a listed boson", label_name(h, c))))
    };
    let mut pos = [[(0usize, 0usize); 3]; 3];
    let mut labels: [[String; 3]; 3] = Default::default();
    let mut images: [[String; 3]; 3] = Default::default();
    for r in 0..3 {
        for k in 0..3 {
            let (h, c) = table[r][k];
            let (hp, cp) = perm.apply(&h, &c);
            pos[r][k] = locate(&hp, &cp)?;
            labels[r][k] = label_name(&h, &c);
            images[r][k] = label_name(&hp, &cp);
        }
    }
    let transposes = pos[0][0].0 != pos[0][1].0;
    let mut row_perm = [0usize; 3];
    let mut col_perm = [0usize; 3];
    for i in 0..3 {
        if transposes {
            row_perm[i] = pos[i][0].1;
            col_perm[i] = pos[0][i].0;
        } else {
            row_perm[i] = pos[i][0].0;
            col_perm[i] = pos[0][i].1;
        }
    }
    for r in 0..3 {
        for k in 0..3 {
            let want = if transposes { (col_perm[k], row_perm[r]) } else { (row_perm[r], col_perm[k]) };
            if pos[r][k] != want {
                return Err(Error::Inconsistent("permutation does not respect the table".into()));
            }
        }
    }
    Ok(BosonTable { labels, images, transposes, row_perm, col_perm })
}

/// `chi(a, b) = b(gamma(a))` on dual generators.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Bicharacter {
    pub table: Vec<Vec<Phase>>,
    pub symmetric: bool,
    pub nondegenerate: bool,
}

impl Bicharacter {
    /// Value on arbitrary characters given by exponent vectors.
    pub fn eval(&self, a: &[i64], b: &[i64]) -> Phase {
        let mut acc = Phase::zero();
        for (j, &x) in a.iter().enumerate() {
            for (k, &y) in b.iter().enumerate() {
                acc += self.table[j][k] * (x * y);
            }
        }
        acc
    }
}

pub fn bicharacter(m: &QcaMap) -> Result<Bicharacter> {
    let d = string_data(m)?;
    Ok(bicharacter_from(&d))
}

pub fn bicharacter_from(d: &StringTransformData) -> Bicharacter {
    let f = d.group.factors();
    let r = f.len();
    let table: Vec<Vec<Phase>> = (0..r)
        .map(|j| {
            let ga: Vec<i64> = (0..r).map(|i| d.gamma[i][j]).collect();
            (0..r)
                .map(|k| {
                    let mut b = vec![0i64; r];
                    b[k] = 1;
                    pairing(f, &b, &ga)
                })
                .collect()
        })
        .collect();
    let symmetric = (0..r).all(|j| (0..r).all(|k| table[j][k] == table[k][j]));
    let nondegenerate = kernel_size(f, f, &d.gamma) == 1;
    Bicharacter { table, symmetric, nondegenerate }
}

/// `(gamma has trivial kernel, the square of the map permutes no anyon)`.
pub fn ty_conditions(m: &QcaMap) -> Result<(bool, bool)> {
    let d = string_data(m)?;
    let first = kernel_size(m.group().factors(), m.group().factors(), &d.gamma) == 1;
    let second = anyon_permutation(&qca::power(m, 2)?)?.is_identity();
    Ok((first, second))
}

/// Cocycle class read from the endpoint charges of symmetry strings. Requires `gamma = 0`.
pub fn h2_class(m: &QcaMap) -> Result<CocycleClass> {
    let d = string_data(m)?;
    if !d.gamma_is_trivial() {
        return Err(Error::Precondition(
            "charge strings acquire symmetry strings (gamma nontrivial)".into(),
        ));
    }
    let g = m.group();
    let r = g.rank();
    let mut entries = Vec::new();
    for j in 0..r {
        if d.mu[j][j] != 0 {
            return Err(Error::Inconsistent(format!(
                "symmetry string of factor {j} carries its own charge"
            )));
        }
        for k in j + 1..r {
            let (nj, nk) = (g.modulus(j) as i64, g.modulus(k) as i64);
            let gc = arith::gcd(nj as u64, nk as u64) as i64;
            // mu[k][j]: component k of mu(g_j)
            let (a, b) = (d.mu[k][j], d.mu[j][k]);
            if a % (nk / gc) != 0 || b % (nj / gc) != 0 {
                return Err(Error::Inconsistent(format!(
                    "endpoint charges of factors {j}, {k} are not cocycle pairings"
                )));
            }
            let t = a / (nk / gc);
            let t_rev = b / (nj / gc);
            if (t + t_rev).rem_euclid(gc) != 0 {
                return Err(Error::Inconsistent(format!(
                    "endpoint pairing of factors {j}, {k} is not antisymmetric"
                )));
            }
            entries.push(((j, k), t));
        }
    }
    CocycleClass::new(g, &entries)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Classification {
    pub permutation: AnyonPermutation,
    pub index: IndexValue,
    pub index_placement: IntervalPair,
    pub string_placements: Vec<Interval>,
}

pub fn classify(m: &QcaMap) -> Result<Classification> {
    let d = string_data(m)?;
    let permutation = AnyonPermutation::from_data(&d)?;
    let index_placement = IntervalPair::default_for(m.spread());
    let index = index::ind(m, &index_placement)?;
    Ok(Classification { permutation, index, index_placement, string_placements: d.placements })
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct EquivalenceRecord {
    pub a: Classification,
    pub b: Classification,
    pub same_permutation: bool,
    pub same_index: bool,
    pub equivalent: bool,
}

pub fn equivalent(a: &QcaMap, b: &QcaMap) -> Result<EquivalenceRecord> {
    a.group().same_as(b.group(), "equivalent")?;
    let ca = classify(a)?;
    let cb = classify(b)?;
    let same_permutation = ca.permutation == cb.permutation;
    let same_index = ca.index == cb.index;
    Ok(EquivalenceRecord { a: ca, b: cb, same_permutation, same_index, equivalent: same_permutation && same_index })
}
