//! The subalgebra index: overlaps of monomial algebras counted exactly by modular linear
//! algebra, and support-algebra dimensions for permutation-trivial maps.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::modlin::{self, ModularSystem, SolutionCount};
use crate::pauli::{Coord, Interval, PauliMonomial, Site};
use crate::qca::{Generator, QcaMap};

/// `prod_p p^(k_p / 2)`, stored as doubled exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IndexValue {
    exps: BTreeMap<u64, i64>,
}

impl IndexValue {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn from_doubled(entries: impl IntoIterator<Item = (u64, i64)>) -> Self {
        let mut v = Self::one();
        for (p, k) in entries {
            v.add_exp(p, k);
        }
        v
    }

    /// `sqrt(num / den)`.
    pub fn from_counts(num: &SolutionCount, den: &SolutionCount) -> Result<Self> {
        if num.is_zero() || den.is_zero() {
            return Err(Error::NotRepresentable("empty overlap".into()));
        }
        let mut v = Self::one();
        for (&p, &e) in num.exponents() {
            v.add_exp(p, e as i64);
        }
        for (&p, &e) in den.exponents() {
            v.add_exp(p, -(e as i64));
        }
        Ok(v)
    }

    fn add_exp(&mut self, p: u64, k: i64) {
        let e = self.exps.entry(p).or_insert(0);
        *e += k;
        if *e == 0 {
            self.exps.remove(&p);
        }
    }

    pub fn doubled_exponents(&self) -> &BTreeMap<u64, i64> {
        &self.exps
    }

    pub fn get(&self, p: u64) -> i64 {
        self.exps.get(&p).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut v = self.clone();
        for (&p, &k) in &other.exps {
            v.add_exp(p, k);
        }
        v
    }

    pub fn inv(&self) -> Self {
        IndexValue { exps: self.exps.iter().map(|(&p, &k)| (p, -k)).collect() }
    }

    /// Display-only decimal value.
    pub fn to_f64(&self) -> f64 {
        self.exps.iter().map(|(&p, &k)| (p as f64).powf(k as f64 / 2.0)).product()
    }

    /// Every prime with a non-zero exponent must divide `|G|`.
    pub fn check_value_set(&self, group: &FiniteAbelianGroup) -> Result<()> {
        let order = group.order();
        for &p in self.exps.keys() {
            if !order.is_multiple_of(p) {
                return Err(Error::NotRepresentable(format!(
                    "prime {p} does not divide |G| = {order} (index {self})"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        let mut num = Vec::new();
        let mut den = Vec::new();
        for (&p, &k) in &self.exps {
            let (whole, half) = (k.abs() / 2, k.abs() % 2);
            let mut s = String::new();
            if whole > 0 {
                s.push_str(&if whole == 1 { p.to_string() } else { format!("{p}^{whole}") });
            }
            if half == 1 {
                if !s.is_empty() {
                    s.push('*');
                }
                s.push_str(&format!("sqrt({p})"));
            }
            if k > 0 {
                num.push(s);
            } else {
                den.push(s);
            }
        }
        let n = if num.is_empty() { "1".to_string() } else { num.join("*") };
        if den.is_empty() {
            write!(f, "{n}")
        } else {
            write!(f, "{n}/{}", den.join("/"))
        }
    }
}

impl fmt::Debug for IndexValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IndexValue({self})")
    }
}

impl Serialize for IndexValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m: BTreeMap<String, i64> = self.exps.iter().map(|(p, k)| (p.to_string(), *k)).collect();
        m.serialize(s)
    }
}

impl<'de> serde::Deserialize<'de> for IndexValue {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = BTreeMap::<String, i64>::deserialize(d)?;
        let mut v = IndexValue::one();
        for (p, k) in m {
            let p: u64 = p.parse().map_err(serde::de::Error::custom)?;
            v.add_exp(p, k);
        }
        Ok(v)
    }
}

/// The two overlapping intervals of the index geometry, `I_-` left of `I_+`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct IntervalPair {
    pub minus: Interval,
    pub plus: Interval,
}

impl IntervalPair {
    pub fn new(minus: Interval, plus: Interval) -> Result<Self> {
        if !(minus.lo < plus.lo && plus.lo <= minus.hi && minus.hi < plus.hi) {
            return Err(Error::Geometry(format!(
                "need lo- < lo+ <= hi- < hi+, got I- = {minus}, I+ = {plus}"
            )));
        }
        Ok(IntervalPair { minus, plus })
    }

    /// Segments of lengths `(a, overlap, b)` starting at `start`.
    pub fn from_segments(start: Site, a: u64, overlap: u64, b: u64) -> Result<Self> {
        let (a, o, b) = (a as Site, overlap as Site, b as Site);
        if a < 1 || o < 1 || b < 1 {
            return Err(Error::Geometry("segments must be non-empty".into()));
        }
        Self::new(
            Interval { lo: start, hi: start + a + o - 1 },
            Interval { lo: start + a, hi: start + a + o + b - 1 },
        )
    }

    /// Lengths of `I- \ I+`, `I- ∩ I+`, `I+ \ I-`.
    pub fn segments(&self) -> (u64, u64, u64) {
        (
            (self.plus.lo - self.minus.lo) as u64,
            (self.minus.hi - self.plus.lo + 1) as u64,
            (self.plus.hi - self.minus.hi) as u64,
        )
    }

    pub fn check_geometry(&self, spread: u64) -> Result<()> {
        let (a, o, b) = self.segments();
        if a <= spread || o <= spread || b <= spread {
            return Err(Error::Geometry(format!(
                "segments ({a},{o},{b}) of I- = {}, I+ = {} must each exceed spread {spread}",
                self.minus, self.plus
            )));
        }
        Ok(())
    }

    /// Default placement: every segment of length `max(2l + 2, 4)`.
    pub fn default_for(spread: u64) -> Self {
        let s = (2 * spread + 2).max(4);
        Self::from_segments(0, s, s, s).expect("positive segments")
    }

    pub fn reflected(&self) -> (Interval, Interval) {
        (self.plus, self.minus)
    }
}

/// Shifted and stretched compliant placements.
pub fn default_placements(spread: u64, count: usize) -> Vec<IntervalPair> {
    let s = (2 * spread + 2).max(4);
    (0..count)
        .map(|i| {
            let i = i as u64;
            let start = (7 * i as Site) - 5;
            IntervalPair::from_segments(start, s + i % 3, s + (i / 2) % 3, s + (i + 1) % 2)
                .expect("positive segments")
        })
        .collect()
}

/// One side of an overlap: the symmetric algebra on an interval, or its image under a map.
#[derive(Clone, Copy, Debug)]
pub enum AlgebraSpec<'a> {
    Symmetric(Interval),
    Image(&'a QcaMap, Interval),
}

/// Counts generator exponent vectors on `source` whose image avoids every coordinate
/// rejected by `inside`.
fn count_constrained(
    group: &FiniteAbelianGroup,
    map: Option<&QcaMap>,
    source: Interval,
    inside: impl Fn(Coord) -> bool,
) -> SolutionCount {
    let gens = Generator::all_in(group, source);
    let images: Vec<PauliMonomial> = gens
        .iter()
        .map(|g| match map {
            Some(m) => m.image(g),
            None => g.monomial(group),
        })
        .collect();
    let coords: BTreeSet<Coord> =
        images.iter().flat_map(|m| m.exps().keys().copied()).filter(|&c| !inside(c)).collect();
    let mut a = Vec::new();
    let mut rows = Vec::new();
    for &(s, f) in &coords {
        for part in 0..2 {
            a.push(
                images
                    .iter()
                    .map(|m| {
                        let e = m.get(s, f);
                        (if part == 0 { e.0 } else { e.1 }) as i64
                    })
                    .collect(),
            );
            rows.push(group.modulus(f) as u64);
        }
    }
    let cols = gens.iter().map(|g| group.modulus(g.factor) as u64).collect();
    let sys = ModularSystem::homogeneous(a, rows, cols).expect("image systems are well formed");
    modlin::count_solutions(&sys)
}

/// Dimension of the intersection of two monomial algebras (the square of the overlap).
pub fn eta_squared(a: &AlgebraSpec, b: &AlgebraSpec) -> Result<SolutionCount> {
    match (a, b) {
        (AlgebraSpec::Symmetric(i), AlgebraSpec::Symmetric(j)) => Err(Error::Malformed(format!(
            "use eta_squared_symmetric for two symmetric algebras ({i}, {j})"
        ))),
        (AlgebraSpec::Image(m, i), AlgebraSpec::Symmetric(j))
        | (AlgebraSpec::Symmetric(j), AlgebraSpec::Image(m, i)) => {
            Ok(count_constrained(m.group(), Some(m), *i, |c| j.contains(c.0)))
        }
        (AlgebraSpec::Image(..), AlgebraSpec::Image(..)) => {
            Err(Error::Malformed("overlap of two image algebras is not supported".into()))
        }
    }
}

/// Overlap of the symmetric algebras on `i` and `j`.
pub fn eta_squared_symmetric(group: &FiniteAbelianGroup, i: Interval, j: Interval) -> SolutionCount {
    count_constrained(group, None, i, |c| j.contains(c.0))
}

fn index_ratio(m: &QcaMap, from: Interval, to: Interval) -> Result<(SolutionCount, SolutionCount)> {
    let num = eta_squared(&AlgebraSpec::Image(m, from), &AlgebraSpec::Symmetric(to))?;
    let den = eta_squared_symmetric(m.group(), from, to);
    Ok((num, den))
}

fn finish(m: &QcaMap, num: &SolutionCount, den: &SolutionCount) -> Result<IndexValue> {
    let v = IndexValue::from_counts(num, den)?;
    v.check_value_set(m.group())?;
    Ok(v)
}

pub fn ind(m: &QcaMap, pair: &IntervalPair) -> Result<IndexValue> {
    pair.check_geometry(m.spread())?;
    let (num, den) = index_ratio(m, pair.minus, pair.plus)?;
    finish(m, &num, &den)
}

pub fn ind_reflected(m: &QcaMap, pair: &IntervalPair) -> Result<IndexValue> {
    pair.check_geometry(m.spread())?;
    let (num, den) = index_ratio(m, pair.plus, pair.minus)?;
    finish(m, &num, &den)
}

/// Index at the default placement.
pub fn ind_default(m: &QcaMap) -> Result<IndexValue> {
    ind(m, &IntervalPair::default_for(m.spread()))
}

/// Closed-form index of the translation that moves the `p`-primary part of every site by `q`
/// sites, for each `(p, q)` in `shifts`. Splitting a composite factor this way is not a
/// monomial map, so there is no `QcaMap` to count overlaps for.
pub fn prime_translation_index(group: &FiniteAbelianGroup, shifts: &[(u64, Site)]) -> Result<IndexValue> {
    let split = crate::group::prime_split(group);
    let mut out = IndexValue::one();
    for &(p, q) in shifts {
        let v = split
            .get(&p)
            .ok_or_else(|| Error::Precondition(format!("{p} does not divide |{group}|")))?;
        let total: i64 = v.iter().map(|&e| e as i64).sum();
        out = out.mul(&IndexValue::from_doubled([(p, 2 * total * q)]));
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct PlacementResult {
    pub pair: IntervalPair,
    pub numerator: String,
    pub denominator: String,
    pub index: IndexValue,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvarianceReport {
    pub placements: Vec<PlacementResult>,
    pub index: IndexValue,
    pub invariant: bool,
}

pub fn probe_global_invariance(m: &QcaMap, placements: &[IntervalPair]) -> Result<InvarianceReport> {
    if placements.is_empty() {
        return Err(Error::Geometry("no placements given".into()));
    }
    let l = m.spread();
    for (k, p) in placements.iter().enumerate() {
        p.check_geometry(l).map_err(|e| Error::Geometry(format!("placement {k}: {e}")))?;
    }
    let results: Vec<Result<PlacementResult>> = placements
        .par_iter()
        .map(|p| {
            let (num, den) = index_ratio(m, p.minus, p.plus)?;
            let index = finish(m, &num, &den)?;
            Ok(PlacementResult {
                pair: *p,
                numerator: num.value().to_string(),
                denominator: den.value().to_string(),
                index,
            })
        })
        .collect();
    let placements: Vec<PlacementResult> = results.into_iter().collect::<Result<_>>()?;
    let index = placements[0].index.clone();
    let invariant = placements.iter().all(|p| p.index == index);
    Ok(InvarianceReport { placements, index, invariant })
}

/// How the charged cell operators are attached to a distant site.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum SupportMode {
    /// `Z_i^dagger Z_t`: requires charge strings to map to charge strings.
    Bosonic,
    /// Jordan-Wigner operators `Z_i (prod_{i<j<t} X_j) Z_t`, for `G = Z2`.
    Fermionic,
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportDims {
    pub mode: SupportMode,
    pub cell_width: u64,
    pub d_left: BigUint,
    pub d_right: BigUint,
    pub cell_dim: BigUint,
    /// `sqrt(d_R / |G|^(2w))`
    pub index: IndexValue,
}

/// Support-algebra dimensions of the image of the cell algebra on cells `0, 1` (sites
/// `[0, 2w)`) relative to the split between cells 1 and 2. Uses the fermionic variant for
/// `G = Z2` and the bosonic one otherwise.
pub fn support_algebra_dims(m: &QcaMap, w: u64) -> Result<SupportDims> {
    let g = m.group();
    let mode = if g.factors() == [2] { SupportMode::Fermionic } else { SupportMode::Bosonic };
    support_algebra_dims_with(m, w, mode)
}

pub fn support_algebra_dims_with(m: &QcaMap, w: u64, mode: SupportMode) -> Result<SupportDims> {
    let group = m.group().clone();
    let l = m.spread();
    if w < l.max(1) {
        return Err(Error::Geometry(format!("cell width {w} below spread {l}")));
    }
    if mode == SupportMode::Fermionic && group.factors() != [2] {
        return Err(Error::Precondition("fermionic cells need G = Z2".into()));
    }
    if mode == SupportMode::Bosonic {
        let data = crate::anyon::string_data(m)?;
        if !data.gamma_is_trivial() {
            return Err(Error::Precondition(
                "a charge string maps to a string containing a symmetry string (gamma nontrivial); \
                 the support-algebra formula needs charge strings to stay charge strings"
                    .into(),
            ));
        }
    }
    let w = w as Site;
    let cell = Interval { lo: 0, hi: 2 * w - 1 };
    let left = Interval { lo: -w, hi: w - 1 };
    let right = Interval { lo: w, hi: 3 * w - 1 };
    let l = l as Site;
    let tail = 3 * w + 2 * (2 * l + 2) * (2 * l + 2) + 2 * l + 2;
    let gap = Interval { lo: 3 * w, hi: tail - l - 1 };

    let mut gens: Vec<PauliMonomial> = Vec::new();
    let mut moduli = Vec::new();
    for s in cell.sites() {
        for f in 0..group.rank() {
            let n = group.modulus(f);
            gens.push(PauliMonomial::x(&group, s, f));
            let charged = match mode {
                SupportMode::Bosonic => {
                    let mut z = PauliMonomial::single(&group, s, f, 0, -1);
                    z *= &PauliMonomial::z(&group, tail, f);
                    z
                }
                SupportMode::Fermionic => {
                    let mut z = PauliMonomial::z(&group, s, f);
                    for j in s + 1..tail {
                        z *= &PauliMonomial::x(&group, j, f);
                    }
                    z *= &PauliMonomial::z(&group, tail, f);
                    z
                }
            };
            gens.push(charged);
            moduli.extend([n as u64, n as u64]);
        }
    }
    let images: Vec<PauliMonomial> = gens.iter().map(|p| m.apply(p)).collect::<Result<_>>()?;

    // Tails attached to each image must be determined by the local charge.
    let mut tails: BTreeMap<Vec<u32>, PauliMonomial> = BTreeMap::new();
    for (img, src) in images.iter().zip(&gens) {
        for &(s, _) in img.exps().keys() {
            if s < left.lo || (s > right.hi && s < gap.hi + 1 && mode == SupportMode::Bosonic) {
                return Err(Error::InvalidQca(format!("image of {src} leaves the cell window")));
            }
        }
        let local = img.restrict(|c| c.0 <= right.hi);
        let far = img.restrict(|c| c.0 > gap.hi);
        let key: Vec<u32> = match mode {
            SupportMode::Bosonic => local.charge().exps().to_vec(),
            SupportMode::Fermionic => {
                let parity = local.z_totals()[0].rem_euclid(2);
                for s in gap.sites() {
                    if img.get(s, 0) != (parity as u32, 0) {
                        return Err(Error::InvalidQca(format!(
                            "image of {src} is not of Jordan-Wigner form at site {s}"
                        )));
                    }
                }
                vec![parity as u32]
            }
        };
        if let Some(prev) = tails.get(&key) {
            if !prev.same_exponents(&far) {
                return Err(Error::InvalidQca(format!(
                    "tail of {src} differs from tails of equal charge"
                )));
            }
        } else {
            tails.insert(key, far);
        }
    }

    let cell_dim = moduli.iter().fold(BigUint::from(1u32), |acc, &n| acc * n);

    let left_coords: Vec<Coord> = coords_in(&images, left);
    let right_coords: Vec<Coord> = coords_in(&images, right);
    let build = |rows: Vec<(Vec<i64>, u64)>| {
        let (a, r): (Vec<_>, Vec<_>) = rows.into_iter().unzip();
        ModularSystem::homogeneous(a, r, moduli.clone()).expect("well-formed restriction system")
    };
    let exps_row = |c: Coord, part: usize| -> Vec<i64> {
        images
            .iter()
            .map(|m| {
                let e = m.get(c.0, c.1);
                (if part == 0 { e.0 } else { e.1 }) as i64
            })
            .collect()
    };
    let mut lrows = Vec::new();
    for &c in &left_coords {
        for part in 0..2 {
            lrows.push((exps_row(c, part), group.modulus(c.1) as u64));
        }
    }
    let mut rrows = Vec::new();
    let parity_left: Vec<i64> = match mode {
        SupportMode::Fermionic => {
            let mut v = vec![0i64; images.len()];
            for &c in &left_coords {
                for (k, x) in exps_row(c, 1).into_iter().enumerate() {
                    v[k] += x;
                }
            }
            v
        }
        SupportMode::Bosonic => vec![0; images.len()],
    };
    for s in right.sites() {
        for f in 0..group.rank() {
            let c = (s, f);
            let n = group.modulus(f) as u64;
            let mut xr = exps_row(c, 0);
            if mode == SupportMode::Fermionic {
                for (x, p) in xr.iter_mut().zip(&parity_left) {
                    *x += p;
                }
            }
            if right_coords.contains(&c) || mode == SupportMode::Fermionic {
                rrows.push((xr, n));
                rrows.push((exps_row(c, 1), n));
            }
        }
    }
    let ker_l = modlin::count_solutions(&build(lrows));
    let ker_r = modlin::count_solutions(&build(rrows));
    let d_left = &cell_dim / ker_l.value();
    let d_right = &cell_dim / ker_r.value();
    if &d_left * &d_right != cell_dim {
        return Err(Error::Inconsistent(format!(
            "support dimensions {d_left} x {d_right} differ from cell dimension {cell_dim}"
        )));
    }
    let index = support_index(&group, w as u64, &d_right)?;
    Ok(SupportDims { mode, cell_width: w as u64, d_left, d_right, cell_dim, index })
}

fn coords_in(images: &[PauliMonomial], iv: Interval) -> Vec<Coord> {
    let set: BTreeSet<Coord> =
        images.iter().flat_map(|m| m.exps().keys().copied()).filter(|c| iv.contains(c.0)).collect();
    set.into_iter().collect()
}

fn support_index(group: &FiniteAbelianGroup, w: u64, d_right: &BigUint) -> Result<IndexValue> {
    let mut v = IndexValue::one();
    let mut rest = d_right.clone();
    for (p, _) in arith::factorize(group.order()) {
        let bp = BigUint::from(p);
        let mut e = 0i64;
        while (&rest % &bp) == BigUint::from(0u32) {
            rest /= &bp;
            e += 1;
        }
        v.add_exp(p, e);
    }
    if rest != BigUint::from(1u32) {
        return Err(Error::NotRepresentable(format!("support dimension {d_right} has foreign primes")));
    }
    for &n in group.factors() {
        for (p, e) in arith::factorize(n as u64) {
            v.add_exp(p, -(2 * w as i64) * e as i64);
        }
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qca;

    #[test]
    fn kw_counts() {
        let g = FiniteAbelianGroup::cyclic(2);
        let k = qca::kw(&g, 0).unwrap();
        for xi in 2..=4u64 {
            let pair = IntervalPair::from_segments(0, 2, xi, 2).unwrap();
            let den = eta_squared_symmetric(&g, pair.minus, pair.plus);
            assert_eq!(den.exponent(2), 2 * xi - 1);
            let num = eta_squared(&AlgebraSpec::Image(&k, pair.minus), &AlgebraSpec::Symmetric(pair.plus))
                .unwrap();
            assert_eq!(num.exponent(2), 2 * xi);
        }
        assert_eq!(ind_default(&k).unwrap(), IndexValue::from_doubled([(2, 1)]));
    }

    #[test]
    fn full_symmetric_dimension() {
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let iv = Interval { lo: 0, hi: 2 };
        let c = eta_squared_symmetric(&g, iv, iv);
        assert_eq!(c.value(), BigUint::from(6u32).pow(5));
    }

    #[test]
    fn display() {
        assert_eq!(IndexValue::from_doubled([(2, 1)]).to_string(), "sqrt(2)");
        assert_eq!(IndexValue::from_doubled([(2, -1)]).to_string(), "1/sqrt(2)");
        assert_eq!(IndexValue::from_doubled([(2, 3), (3, 2)]).to_string(), "2*sqrt(2)*3");
    }

    #[test]
    fn geometry_is_checked() {
        let g = FiniteAbelianGroup::cyclic(2);
        let k = qca::kw(&g, 0).unwrap();
        let bad = IntervalPair::from_segments(0, 1, 3, 3).unwrap();
        assert!(matches!(ind(&k, &bad), Err(Error::Geometry(_))));
        assert!(IntervalPair::new(Interval { lo: 0, hi: 3 }, Interval { lo: 5, hi: 9 }).is_err());
    }

    #[test]
    fn prime_translations() {
        let z6 = FiniteAbelianGroup::cyclic(6);
        let both = prime_translation_index(&z6, &[(2, 1), (3, 1)]).unwrap();
        assert_eq!(both, ind_default(&crate::qca::translate(&z6, 0, 1).unwrap()).unwrap());
        let two = prime_translation_index(&z6, &[(2, 1), (3, -1)]).unwrap();
        assert_eq!(two.to_string(), "2/3");
        let z12 = FiniteAbelianGroup::cyclic(12);
        assert_eq!(prime_translation_index(&z12, &[(2, 1)]).unwrap().get(2), 4);
        assert!(prime_translation_index(&z12, &[(5, 1)]).is_err());
    }

    #[test]
    fn spec_values() {
        let z2 = FiniteAbelianGroup::cyclic(2);
        let z3 = FiniteAbelianGroup::cyclic(3);
        let t = qca::translate(&z2, 0, 1).unwrap();
        assert_eq!(ind_default(&t).unwrap(), IndexValue::from_doubled([(2, 2)]));
        let tm = qca::translate(&z2, 0, -1).unwrap();
        let pair = IntervalPair::default_for(1);
        assert_eq!(ind_reflected(&tm, &pair).unwrap(), IndexValue::from_doubled([(2, 2)]));
        let k = qca::kw(&z2, 0).unwrap();
        assert_eq!(ind_reflected(&k, &pair).unwrap(), IndexValue::from_doubled([(2, -1)]));
        assert_eq!(ind_default(&qca::kw(&z3, 0).unwrap()).unwrap(), IndexValue::from_doubled([(3, 1)]));
        assert_eq!(ind_default(&crate::library::d2()).unwrap(), IndexValue::from_doubled([(2, 2)]));
        assert!(ind_default(&crate::library::d1()).unwrap().is_one());
    }

    #[test]
    fn support_dims() {
        let z2 = FiniteAbelianGroup::cyclic(2);
        let cases = [
            (qca::identity(&z2, 1), 4u32, 4u32),
            (qca::kw(&z2, 0).unwrap(), 2, 8),
            (qca::translate(&z2, 0, 1).unwrap(), 1, 16),
        ];
        for (m, dl, dr) in cases {
            let d = support_algebra_dims(&m, 1).unwrap();
            assert_eq!((d.d_left.clone(), d.d_right.clone()), (BigUint::from(dl), BigUint::from(dr)), "{m:?}");
            assert_eq!(d.index, ind_default(&m).unwrap());
        }
        let z3 = FiniteAbelianGroup::cyclic(3);
        let d = support_algebra_dims(&qca::translate(&z3, 0, 1).unwrap(), 1).unwrap();
        assert_eq!(d.index, IndexValue::from_doubled([(3, 2)]));
        assert!(matches!(
            support_algebra_dims(&qca::kw(&z3, 0).unwrap(), 1),
            Err(Error::Precondition(_))
        ));
    }
}
