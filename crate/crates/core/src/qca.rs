//! Translation-invariant QCAs on the symmetric subalgebra, stored as images of the standard
//! generators `X_r[j]` and `Z_r[j]^dagger Z_{r+1}[j]` for `0 <= r < period`.

use std::fmt;

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::group::{
    slant_product, CocycleClass, FiniteAbelianGroup, GroupAutomorphism,
};
use crate::modlin::{self, ModularSystem};
use crate::pauli::{Coord, Interval, PauliMonomial, Site};
use crate::phase::Phase;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum GenKind {
    X,
    ZZ,
}

/// A standard generator of the symmetric algebra.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct Generator {
    pub kind: GenKind,
    pub site: Site,
    pub factor: usize,
}

impl Generator {
    pub fn x(site: Site, factor: usize) -> Self {
        Generator { kind: GenKind::X, site, factor }
    }

    pub fn zz(site: Site, factor: usize) -> Self {
        Generator { kind: GenKind::ZZ, site, factor }
    }

    pub fn monomial(&self, group: &FiniteAbelianGroup) -> PauliMonomial {
        match self.kind {
            GenKind::X => PauliMonomial::x(group, self.site, self.factor),
            GenKind::ZZ => PauliMonomial::zz(group, self.site, self.factor),
        }
    }

    pub fn support(&self) -> Interval {
        match self.kind {
            GenKind::X => Interval { lo: self.site, hi: self.site },
            GenKind::ZZ => Interval { lo: self.site, hi: self.site + 1 },
        }
    }

    pub fn shift(&self, d: Site) -> Self {
        Generator { site: self.site + d, ..*self }
    }

    /// All generators supported inside `iv`, ordered by (kind, site, factor).
    pub fn all_in(group: &FiniteAbelianGroup, iv: Interval) -> Vec<Generator> {
        let mut out = Vec::new();
        for s in iv.sites() {
            for f in 0..group.rank() {
                out.push(Generator::x(s, f));
            }
        }
        for s in iv.lo..iv.hi {
            for f in 0..group.rank() {
                out.push(Generator::zz(s, f));
            }
        }
        out
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::X => write!(f, "X_{}[{}]", self.site, self.factor),
            GenKind::ZZ => write!(f, "ZZ_{}[{}]", self.site, self.factor),
        }
    }
}

/// Canonical decomposition of a symmetric monomial into standard generators.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// X-generators (ascending site/factor) followed by ZZ-generators (ascending site/factor).
    pub terms: Vec<(Generator, u32)>,
    /// `P = e^{2 pi i residual} * prod g^e` in the order of `terms`.
    pub residual: Phase,
}

pub fn decompose(p: &PauliMonomial) -> Result<Decomposition> {
    let group = p.group();
    if !p.is_symmetric() {
        return Err(Error::ChargedInput(format!("{p} carries charge {}", p.charge())));
    }
    let mut terms = Vec::new();
    for (&(s, f), &(a, _)) in p.exps() {
        if a != 0 {
            terms.push((Generator::x(s, f), a));
        }
    }
    let mut zz = Vec::new();
    for f in 0..group.rank() {
        let n = group.modulus(f) as i64;
        let sites: Vec<(Site, u32)> =
            p.exps().iter().filter(|(c, e)| c.1 == f && e.1 != 0).map(|(c, e)| (c.0, e.1)).collect();
        if sites.is_empty() {
            continue;
        }
        let mut prefix = 0i64;
        let mut k = 0;
        for s in sites[0].0..sites[sites.len() - 1].0 {
            if k < sites.len() && sites[k].0 == s {
                prefix += sites[k].1 as i64;
                k += 1;
            }
            let e = (-prefix).rem_euclid(n) as u32;
            if e != 0 {
                zz.push((Generator::zz(s, f), e));
            }
        }
    }
    zz.sort_by_key(|(g, _)| (g.site, g.factor));
    terms.extend(zz);
    let mut q = PauliMonomial::identity(group);
    for (g, e) in &terms {
        q *= &g.monomial(group).pow(*e as i64);
    }
    debug_assert!(q.same_exponents(p));
    Ok(Decomposition { terms, residual: p.phase() - q.phase() })
}

#[derive(Clone, PartialEq, Eq)]
pub struct QcaMap {
    group: FiniteAbelianGroup,
    period: usize,
    img_x: Vec<Vec<PauliMonomial>>,
    img_zz: Vec<Vec<PauliMonomial>>,
}

impl QcaMap {
    /// `img_x[r][j]` and `img_zz[r][j]` are the images of `X_r[j]` and `ZZ_r[j]`.
    pub fn new(
        group: &FiniteAbelianGroup,
        period: usize,
        img_x: Vec<Vec<PauliMonomial>>,
        img_zz: Vec<Vec<PauliMonomial>>,
    ) -> Result<Self> {
        if period == 0 {
            return Err(Error::Malformed("period must be at least 1".into()));
        }
        for imgs in [&img_x, &img_zz] {
            if imgs.len() != period || imgs.iter().any(|row| row.len() != group.rank()) {
                return Err(Error::Malformed(format!(
                    "expected {period} x {} images per generator type",
                    group.rank()
                )));
            }
            for m in imgs.iter().flatten() {
                group.same_as(m.group(), "image monomial")?;
            }
        }
        Ok(QcaMap { group: group.clone(), period, img_x, img_zz })
    }

    /// Builds a map from a function giving the image of each cell generator.
    pub fn from_fn(
        group: &FiniteAbelianGroup,
        period: usize,
        mut f: impl FnMut(Generator) -> Result<PauliMonomial>,
    ) -> Result<Self> {
        let mut img_x = Vec::with_capacity(period);
        let mut img_zz = Vec::with_capacity(period);
        for r in 0..period {
            let mut xs = Vec::new();
            let mut zs = Vec::new();
            for j in 0..group.rank() {
                xs.push(f(Generator::x(r as Site, j))?);
                zs.push(f(Generator::zz(r as Site, j))?);
            }
            img_x.push(xs);
            img_zz.push(zs);
        }
        Self::new(group, period, img_x, img_zz)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn images_x(&self) -> &[Vec<PauliMonomial>] {
        &self.img_x
    }

    pub fn images_zz(&self) -> &[Vec<PauliMonomial>] {
        &self.img_zz
    }

    pub fn cell_generators(&self) -> Vec<Generator> {
        let mut out = Vec::new();
        for r in 0..self.period {
            for j in 0..self.group.rank() {
                out.push(Generator::x(r as Site, j));
                out.push(Generator::zz(r as Site, j));
            }
        }
        out
    }

    pub fn image(&self, g: &Generator) -> PauliMonomial {
        let p = self.period as Site;
        let r = g.site.rem_euclid(p) as usize;
        let base = g.site - r as Site;
        let m = match g.kind {
            GenKind::X => &self.img_x[r][g.factor],
            GenKind::ZZ => &self.img_zz[r][g.factor],
        };
        if base == 0 {
            m.clone()
        } else {
            m.shift(base)
        }
    }

    /// Largest distance of an image site from the support of its generator.
    pub fn spread(&self) -> u64 {
        let mut l = 0u64;
        for g in self.cell_generators() {
            let sup = g.support();
            for s in self.image(&g).sites() {
                let d = if s < sup.lo {
                    sup.lo - s
                } else if s > sup.hi {
                    s - sup.hi
                } else {
                    0
                };
                l = l.max(d as u64);
            }
        }
        l
    }

    pub fn apply(&self, p: &PauliMonomial) -> Result<PauliMonomial> {
        self.group.same_as(p.group(), "apply")?;
        let d = decompose(p)?;
        let mut acc = PauliMonomial::scalar(&self.group, d.residual);
        for (g, e) in &d.terms {
            acc *= &self.image(g).pow(*e as i64);
        }
        Ok(acc)
    }

    /// The same map presented with a period that is a multiple of the current one.
    pub fn with_period(&self, period: usize) -> Result<Self> {
        if !period.is_multiple_of(self.period) {
            return Err(Error::Malformed(format!(
                "period {period} is not a multiple of {}",
                self.period
            )));
        }
        Self::from_fn(&self.group, period, |g| Ok(self.image(&g)))
    }

    /// Equal action on all standard generators.
    pub fn acts_like(&self, other: &Self) -> bool {
        if self.group != other.group {
            return false;
        }
        let p = arith::lcm(self.period as u64, other.period as u64) as usize;
        (0..p as Site).all(|r| {
            (0..self.group.rank()).all(|j| {
                [Generator::x(r, j), Generator::zz(r, j)]
                    .iter()
                    .all(|g| self.image(g) == other.image(g))
            })
        })
    }

    pub fn is_identity(&self) -> bool {
        self.acts_like(&identity(&self.group, 1))
    }
}

impl fmt::Debug for QcaMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "QcaMap over {} with period {}", self.group, self.period)?;
        for g in self.cell_generators() {
            writeln!(f, "  {g} -> {}", self.image(&g))?;
        }
        Ok(())
    }
}

impl Serialize for QcaMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let images: Vec<(String, String)> = self
            .cell_generators()
            .iter()
            .map(|g| (g.to_string(), self.image(g).to_string()))
            .collect();
        let mut st = s.serialize_struct("QcaMap", 3)?;
        st.serialize_field("group", &self.group)?;
        st.serialize_field("period", &self.period)?;
        st.serialize_field("images", &images)?;
        st.end()
    }
}

pub fn identity(group: &FiniteAbelianGroup, period: usize) -> QcaMap {
    QcaMap::from_fn(group, period.max(1), |g| Ok(g.monomial(group))).expect("identity map")
}

/// Shifts factor `j` by `q` sites; other factors are fixed.
pub fn translate(group: &FiniteAbelianGroup, j: usize, q: Site) -> Result<QcaMap> {
    group.check_factor(j)?;
    QcaMap::from_fn(group, 1, |g| {
        Ok(if g.factor == j { g.shift(q).monomial(group) } else { g.monomial(group) })
    })
}

/// Kramers-Wannier on factor `j`: `X_i -> Z_i^dagger Z_{i+1}`, `Z_i^dagger Z_{i+1} -> X_{i+1}`.
pub fn kw(group: &FiniteAbelianGroup, j: usize) -> Result<QcaMap> {
    group.check_factor(j)?;
    QcaMap::from_fn(group, 1, |g| {
        Ok(if g.factor != j {
            g.monomial(group)
        } else {
            match g.kind {
                GenKind::X => PauliMonomial::zz(group, g.site, j),
                GenKind::ZZ => PauliMonomial::x(group, g.site + 1, j),
            }
        })
    })
}

/// Entangler of the class `omega`: `X_i[j] -> V_L X_i[j] V_R^dagger` where `V_L` is the product
/// of the nearest Z's to the left of `X_i[j]` (sites ordered by (site, factor)) carrying the
/// charge `slant_product(omega, j)`, and `V_R` the same product to the right.
pub fn spt(group: &FiniteAbelianGroup, omega: &CocycleClass) -> Result<QcaMap> {
    group.same_as(omega.group(), "spt")?;
    let chis: Vec<_> =
        (0..group.rank()).map(|j| slant_product(omega, j)).collect::<Result<Vec<_>>>()?;
    QcaMap::from_fn(group, 1, |g| {
        if g.kind == GenKind::ZZ {
            return Ok(g.monomial(group));
        }
        let j = g.factor;
        let mut m = g.monomial(group);
        for (k, &c) in chis[j].exps().iter().enumerate() {
            if c == 0 {
                continue;
            }
            let e = -(c as i64);
            let (left, right) = if k < j { (g.site, g.site + 1) } else { (g.site - 1, g.site) };
            m *= &PauliMonomial::single(group, left, k, 0, e);
            m *= &PauliMonomial::single(group, right, k, 0, -e);
        }
        Ok(m)
    })
}

/// Onsite automorphism: `X[k] -> prod_j X[j]^{M_jk}`, charges transformed by the dual inverse.
pub fn out(group: &FiniteAbelianGroup, phi: &GroupAutomorphism) -> Result<QcaMap> {
    group.same_as(phi.group(), "out")?;
    let m = phi.matrix().clone();
    let n = phi.charge_matrix();
    QcaMap::from_fn(group, 1, |g| {
        let col = g.factor;
        let mut img = PauliMonomial::identity(group);
        for j in 0..group.rank() {
            match g.kind {
                GenKind::X => img *= &PauliMonomial::single(group, g.site, j, m[j][col], 0),
                GenKind::ZZ => {
                    img *= &PauliMonomial::single(group, g.site, j, 0, -n[j][col]);
                    img *= &PauliMonomial::single(group, g.site + 1, j, 0, n[j][col]);
                }
            }
        }
        Ok(img)
    })
}

/// A failed validation condition, with the generators that witness it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub generator: Generator,
    pub partner: Option<Generator>,
    pub reason: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ValidationReport {
    pub symmetric_images: bool,
    pub commutation_preserved: bool,
    pub orders_preserved: bool,
    pub invertible: bool,
    #[serde(skip)]
    pub inverse: Option<QcaMap>,
    pub spread: u64,
    pub failures: Vec<Failure>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.symmetric_images && self.commutation_preserved && self.orders_preserved && self.invertible
    }
}

/// Checks the automorphism conditions on a finite window and constructs the inverse.
pub fn validate(m: &QcaMap) -> ValidationReport {
    let group = m.group();
    let spread = m.spread();
    let mut failures = Vec::new();
    let cell = m.cell_generators();

    let mut symmetric_images = true;
    let mut orders_preserved = true;
    for g in &cell {
        let img = m.image(g);
        if !img.is_symmetric() {
            symmetric_images = false;
            failures.push(Failure {
                generator: *g,
                partner: None,
                reason: format!("image {img} carries charge {}", img.charge()),
            });
        }
        let want = group.modulus(g.factor) as u64;
        let got = img.order();
        if got != want {
            orders_preserved = false;
            failures.push(Failure {
                generator: *g,
                partner: None,
                reason: format!("image {img} has order {got}, generator has order {want}"),
            });
        }
    }

    let window = (2 * spread + m.period() as u64) as Site;
    let mut commutation_preserved = true;
    for g in &cell {
        let gi = m.image(g);
        let gm = g.monomial(group);
        let sup = g.support();
        let partners =
            Generator::all_in(group, Interval { lo: sup.lo - window, hi: sup.hi + window });
        for h in partners {
            let want = gm.commutation_phase(&h.monomial(group)).expect("same group");
            let got = gi.commutation_phase(&m.image(&h)).expect("same group");
            if want != got {
                commutation_preserved = false;
                failures.push(Failure {
                    generator: *g,
                    partner: Some(h),
                    reason: format!("commutation phase {got}, expected {want}"),
                });
            }
        }
    }

    let mut inverse = None;
    let mut invertible = false;
    let mut inv_spread = 0;
    if symmetric_images && orders_preserved && commutation_preserved {
        match construct_inverse(m, spread) {
            Ok(inv) => {
                let round_trip = cell.iter().all(|g| {
                    let gm = g.monomial(group);
                    let fwd = m.apply(&gm).and_then(|x| inv.apply(&x));
                    let bwd = inv.apply(&gm).and_then(|x| m.apply(&x));
                    fwd.as_ref() == Ok(&gm) && bwd.as_ref() == Ok(&gm)
                });
                if round_trip {
                    invertible = true;
                    inv_spread = inv.spread();
                    inverse = Some(inv);
                } else {
                    failures.push(Failure {
                        generator: cell[0],
                        partner: None,
                        reason: "constructed inverse does not round-trip".into(),
                    });
                }
            }
            Err(f) => failures.push(f),
        }
    }
    ValidationReport {
        symmetric_images,
        commutation_preserved,
        orders_preserved,
        invertible,
        inverse,
        spread: spread.max(inv_spread),
        failures,
    }
}

/// Solves for preimages of the cell generators among generators near them.
fn construct_inverse(m: &QcaMap, spread: u64) -> std::result::Result<QcaMap, Failure> {
    let group = m.group();
    let radius = (spread + m.period() as u64) as Site;
    let mut img_x = vec![Vec::new(); m.period()];
    let mut img_zz = vec![Vec::new(); m.period()];
    for target in m.cell_generators() {
        let sup = target.support();
        let unknowns = Generator::all_in(group, Interval { lo: sup.lo - radius, hi: sup.hi + radius });
        let images: Vec<PauliMonomial> = unknowns.iter().map(|g| m.image(g)).collect();
        let tm = target.monomial(group);
        let mut coords: Vec<Coord> = images.iter().flat_map(|i| i.exps().keys().copied()).collect();
        coords.extend(tm.exps().keys().copied());
        coords.sort();
        coords.dedup();
        let mut a = Vec::new();
        let mut c = Vec::new();
        let mut rows = Vec::new();
        for &(s, f) in &coords {
            for part in 0..2 {
                a.push(
                    images
                        .iter()
                        .map(|img| {
                            let e = img.get(s, f);
                            (if part == 0 { e.0 } else { e.1 }) as i64
                        })
                        .collect(),
                );
                let e = tm.get(s, f);
                c.push((if part == 0 { e.0 } else { e.1 }) as i64);
                rows.push(group.modulus(f) as u64);
            }
        }
        let cols: Vec<u64> = unknowns.iter().map(|g| group.modulus(g.factor) as u64).collect();
        let fail = |reason: String| Failure { generator: target, partner: None, reason };
        let sys = ModularSystem::new(a, c, rows, cols).map_err(|e| fail(e.to_string()))?;
        let kernel = modlin::count_solutions(&sys.to_homogeneous());
        if kernel.to_u64() != Some(1) {
            return Err(fail("map is not injective on the inversion window".into()));
        }
        let x = modlin::solve(&sys)
            .map_err(|_| fail(format!("no preimage within radius {radius}")))?;
        let mut q = PauliMonomial::identity(group);
        for (g, &e) in unknowns.iter().zip(&x) {
            if e != 0 {
                q *= &g.monomial(group).pow(e as i64);
            }
        }
        let r = m.apply(&q).map_err(|e| fail(e.to_string()))?;
        if !r.same_exponents(&tm) {
            return Err(fail("preimage does not reproduce the generator".into()));
        }
        let pre = q.times_phase(-r.phase());
        let slot = target.site as usize;
        match target.kind {
            GenKind::X => img_x[slot].push(pre),
            GenKind::ZZ => img_zz[slot].push(pre),
        }
    }
    QcaMap::new(group, m.period(), img_x, img_zz).map_err(|e| Failure {
        generator: Generator::x(0, 0),
        partner: None,
        reason: e.to_string(),
    })
}

/// `a o b`: apply `b` first, then `a`.
pub fn compose(a: &QcaMap, b: &QcaMap) -> Result<QcaMap> {
    a.group().same_as(b.group(), "compose")?;
    let p = arith::lcm(a.period() as u64, b.period() as u64) as usize;
    QcaMap::from_fn(a.group(), p, |g| a.apply(&b.image(&g)))
}

pub fn inverse(a: &QcaMap) -> Result<QcaMap> {
    let rep = validate(a);
    match rep.inverse {
        Some(inv) => Ok(inv),
        None => Err(Error::InvalidQca(describe_failures(&rep.failures))),
    }
}

pub fn power(a: &QcaMap, k: i64) -> Result<QcaMap> {
    let base = if k < 0 { inverse(a)? } else { a.clone() };
    let mut acc = identity(a.group(), a.period());
    for _ in 0..k.unsigned_abs() {
        acc = compose(&base, &acc)?;
    }
    Ok(acc)
}

pub fn describe_failures(f: &[Failure]) -> String {
    let parts: Vec<String> = f
        .iter()
        .take(4)
        .map(|x| match x.partner {
            Some(p) => format!("{} with {}: {}", x.generator, p, x.reason),
            None => format!("{}: {}", x.generator, x.reason),
        })
        .collect();
    let more = if f.len() > 4 { format!(" (+{} more)", f.len() - 4) } else { String::new() };
    format!("{}{more}", parts.join("; "))
}

/// Requires a passing validation report.
pub fn require_valid(m: &QcaMap) -> Result<ValidationReport> {
    let rep = validate(m);
    if rep.is_valid() {
        Ok(rep)
    } else {
        Err(Error::InvalidQca(describe_failures(&rep.failures)))
    }
}
