//! Generalized Pauli monomials on an infinite chain.
//!
//! Each site carries one clock/shift pair per cyclic factor. A monomial is stored as
//! `e^{2 pi i phase} * prod X^a Z^b` with coordinates `(site, factor)` in ascending order and
//! `X^a` written left of `Z^b` at each coordinate. With `Z X = w X Z` the product of two
//! canonical monomials only picks up phases from coordinates they share.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, MulAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Character, FiniteAbelianGroup};
use crate::phase::{parse_phase, Phase};

pub type Site = i64;
/// `(site, factor)`.
pub type Coord = (Site, usize);

/// Inclusive interval of sites.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Interval {
    pub lo: Site,
    pub hi: Site,
}

impl Interval {
    pub fn new(lo: Site, hi: Site) -> Result<Interval> {
        if lo > hi {
            return Err(Error::Geometry(format!("interval [{lo},{hi}] has lo > hi")));
        }
        Ok(Interval { lo, hi })
    }

    /// Number of sites.
    pub fn len(&self) -> u64 {
        (self.hi - self.lo + 1) as u64
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, s: Site) -> bool {
        self.lo <= s && s <= self.hi
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        (lo <= hi).then_some(Interval { lo, hi })
    }

    pub fn shift(&self, d: Site) -> Interval {
        Interval { lo: self.lo + d, hi: self.hi + d }
    }

    pub fn sites(&self) -> std::ops::RangeInclusive<Site> {
        self.lo..=self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliMonomial {
    group: FiniteAbelianGroup,
    phase: Phase,
    ops: BTreeMap<Coord, (u32, u32)>,
}

/// `tr(P)` normalized so that `tr(1) = 1`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum NormalizedTrace {
    Zero,
    Unit(Phase),
}

impl PauliMonomial {
    pub fn identity(group: &FiniteAbelianGroup) -> Self {
        PauliMonomial { group: group.clone(), phase: Phase::zero(), ops: BTreeMap::new() }
    }

    pub fn scalar(group: &FiniteAbelianGroup, phase: Phase) -> Self {
        PauliMonomial { phase, ..Self::identity(group) }
    }

    /// `X^a Z^b` at one coordinate; exponents are reduced.
    pub fn single(group: &FiniteAbelianGroup, site: Site, factor: usize, a: i64, b: i64) -> Self {
        let mut m = Self::identity(group);
        m.set(site, factor, a, b);
        m
    }

    pub fn x(group: &FiniteAbelianGroup, site: Site, factor: usize) -> Self {
        Self::single(group, site, factor, 1, 0)
    }

    pub fn z(group: &FiniteAbelianGroup, site: Site, factor: usize) -> Self {
        Self::single(group, site, factor, 0, 1)
    }

    /// `Z_i[j]^dagger Z_{i+1}[j]`.
    pub fn zz(group: &FiniteAbelianGroup, site: Site, factor: usize) -> Self {
        let mut m = Self::single(group, site, factor, 0, -1);
        m.set(site + 1, factor, 0, 1);
        m
    }

    /// Builds a canonical monomial from explicit entries (later entries overwrite earlier ones).
    pub fn from_entries(
        group: &FiniteAbelianGroup,
        phase: Phase,
        entries: impl IntoIterator<Item = (Coord, (i64, i64))>,
    ) -> Self {
        let mut m = Self::scalar(group, phase);
        for ((s, f), (a, b)) in entries {
            m.set(s, f, a, b);
        }
        m
    }

    /// Overwrites the exponents at one coordinate without touching the phase.
    pub fn set(&mut self, site: Site, factor: usize, a: i64, b: i64) {
        let n = self.group.modulus(factor) as i64;
        let (a, b) = (a.rem_euclid(n) as u32, b.rem_euclid(n) as u32);
        if a == 0 && b == 0 {
            self.ops.remove(&(site, factor));
        } else {
            self.ops.insert((site, factor), (a, b));
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn phase(&self) -> Phase {
        self.phase
    }

    pub fn with_phase(mut self, phase: Phase) -> Self {
        self.phase = phase;
        self
    }

    pub fn times_phase(mut self, phase: Phase) -> Self {
        self.phase += phase;
        self
    }

    pub fn exps(&self) -> &BTreeMap<Coord, (u32, u32)> {
        &self.ops
    }

    pub fn get(&self, site: Site, factor: usize) -> (u32, u32) {
        self.ops.get(&(site, factor)).copied().unwrap_or((0, 0))
    }

    pub fn is_identity(&self) -> bool {
        self.ops.is_empty() && self.phase.is_zero()
    }

    /// True when no operator content is present (any phase).
    pub fn is_scalar(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn same_exponents(&self, other: &Self) -> bool {
        self.ops == other.ops
    }

    /// Smallest interval containing the support, `None` for scalars.
    pub fn support(&self) -> Option<Interval> {
        let lo = self.ops.keys().next()?.0;
        let hi = self.ops.keys().next_back()?.0;
        Some(Interval { lo, hi })
    }

    pub fn sites(&self) -> Vec<Site> {
        let mut v: Vec<Site> = self.ops.keys().map(|c| c.0).collect();
        v.dedup();
        v
    }

    pub fn shift(&self, d: Site) -> Self {
        PauliMonomial {
            group: self.group.clone(),
            phase: self.phase,
            ops: self.ops.iter().map(|(&(s, f), &e)| ((s + d, f), e)).collect(),
        }
    }

    /// Keeps the coordinates selected by `keep`, with zero phase.
    pub fn restrict(&self, mut keep: impl FnMut(Coord) -> bool) -> Self {
        PauliMonomial {
            group: self.group.clone(),
            phase: Phase::zero(),
            ops: self.ops.iter().filter(|(&c, _)| keep(c)).map(|(&c, &e)| (c, e)).collect(),
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.group.same_as(&other.group, "multiply")?;
        let mut out = self.clone();
        out.mul_in_place(other);
        Ok(out)
    }

    fn mul_in_place(&mut self, other: &Self) {
        self.phase += other.phase;
        let mut extra = BTreeMap::<u32, i64>::new();
        for (&(s, f), &(a2, b2)) in &other.ops {
            let n = self.group.modulus(f);
            match self.ops.get_mut(&(s, f)) {
                Some(e) => {
                    let (a1, b1) = *e;
                    if b1 != 0 && a2 != 0 {
                        *extra.entry(n).or_insert(0) += b1 as i64 * a2 as i64;
                    }
                    *e = ((a1 + a2) % n, (b1 + b2) % n);
                    if *e == (0, 0) {
                        self.ops.remove(&(s, f));
                    }
                }
                None => {
                    self.ops.insert((s, f), (a2, b2));
                }
            }
        }
        for (n, k) in extra {
            self.phase += Phase::new(k, n as i64);
        }
    }

    pub fn dagger(&self) -> Self {
        let mut phase = -self.phase;
        let mut ops = BTreeMap::new();
        for (&(s, f), &(a, b)) in &self.ops {
            let n = self.group.modulus(f);
            phase += Phase::new(a as i64 * b as i64, n as i64);
            ops.insert((s, f), ((n - a) % n, (n - b) % n));
        }
        PauliMonomial { group: self.group.clone(), phase, ops }
    }

    /// `P^k`; negative powers use the adjoint (monomials are unitary).
    pub fn pow(&self, k: i64) -> Self {
        let mut base = if k < 0 { self.dagger() } else { self.clone() };
        let mut k = k.unsigned_abs();
        let mut acc = Self::identity(&self.group);
        while k > 0 {
            if k & 1 == 1 {
                acc.mul_in_place(&base);
            }
            k >>= 1;
            if k > 0 {
                let b2 = base.clone();
                base.mul_in_place(&b2);
            }
        }
        acc
    }

    /// Least `k >= 1` with `P^k = 1` including the phase.
    pub fn order(&self) -> u64 {
        let mut e = 1u64;
        for (&(_, f), &(a, b)) in &self.ops {
            let n = self.group.modulus(f) as u64;
            let g = crate::arith::gcd(crate::arith::gcd(a as u64, b as u64), n);
            e = crate::arith::lcm(e, n / g);
        }
        let q = self.pow(e as i64);
        debug_assert!(q.is_scalar());
        e * q.phase.denom() as u64
    }

    /// `phi` with `P Q = e^{2 pi i phi} Q P`.
    pub fn commutation_phase(&self, other: &Self) -> Result<Phase> {
        self.group.same_as(&other.group, "commutation_phase")?;
        let mut acc = BTreeMap::<u32, i64>::new();
        let (small, large, sign) = if self.ops.len() <= other.ops.len() {
            (self, other, 1)
        } else {
            (other, self, -1)
        };
        for (c, &(a1, b1)) in &small.ops {
            if let Some(&(a2, b2)) = large.ops.get(c) {
                let n = self.group.modulus(c.1);
                *acc.entry(n).or_insert(0) += sign * (b1 as i64 * a2 as i64 - a1 as i64 * b2 as i64);
            }
        }
        Ok(acc.into_iter().fold(Phase::zero(), |p, (n, k)| p + Phase::new(k, n as i64)))
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        self.commutation_phase(other).map(|p| p.is_zero()).unwrap_or(false)
    }

    /// Total Z-exponent per factor, reduced.
    pub fn z_totals(&self) -> Vec<i64> {
        let mut t = vec![0i64; self.group.rank()];
        for (&(_, f), &(_, b)) in &self.ops {
            t[f] += b as i64;
        }
        t
    }

    /// Charge under the global symmetry: `(-B_j mod n_j)` for total Z-exponent `B_j`.
    pub fn charge(&self) -> Character {
        let t: Vec<i64> = self.z_totals().into_iter().map(|b| -b).collect();
        self.group.character(&t).expect("rank matches")
    }

    pub fn is_symmetric(&self) -> bool {
        self.charge().is_trivial()
    }

    pub fn normalized_trace(&self) -> NormalizedTrace {
        if self.ops.is_empty() {
            NormalizedTrace::Unit(self.phase)
        } else {
            NormalizedTrace::Zero
        }
    }

    /// Parses the monomial grammar; duplicate tokens multiply in written order.
    pub fn parse(group: &FiniteAbelianGroup, text: &str) -> Result<Self> {
        let mut out = Self::identity(group);
        let bytes = text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if bytes[i].is_ascii_whitespace() {
                i += 1;
                continue;
            }
            let start = i;
            while i < bytes.len() && !bytes[i].is_ascii_whitespace() {
                i += 1;
            }
            let tok = &text[start..i];
            out.mul_in_place(&parse_token(group, tok, start)?);
        }
        Ok(out)
    }
}

fn syntax(pos: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { pos, msg: msg.into() }
}

fn parse_token(group: &FiniteAbelianGroup, tok: &str, pos: usize) -> Result<PauliMonomial> {
    if let Some(rest) = tok.strip_prefix("ph:") {
        let p = parse_phase(rest).ok_or_else(|| syntax(pos + 3, format!("bad phase {rest:?}")))?;
        return Ok(PauliMonomial::scalar(group, p));
    }
    let kind = match tok.as_bytes().first() {
        Some(b'X') => 0,
        Some(b'Z') => 1,
        _ => return Err(syntax(pos, format!("unexpected token {tok:?}"))),
    };
    let body = &tok[1..];
    if !body.starts_with('[') {
        return Err(syntax(pos + 1, "expected '['"));
    }
    let close = body.find(']').ok_or_else(|| syntax(pos + 1, "missing ']'"))?;
    let inner = &body[1..close];
    let (s, f) = inner.split_once(',').ok_or_else(|| syntax(pos + 2, "expected <site>,<factor>"))?;
    let site: Site = s.trim().parse().map_err(|_| syntax(pos + 2, format!("bad site {s:?}")))?;
    let factor: usize = f
        .trim()
        .parse()
        .map_err(|_| syntax(pos + 3 + s.len(), format!("bad factor {f:?}")))?;
    group.check_factor(factor)?;
    let tail = &body[close + 1..];
    let n = group.modulus(factor);
    let exp: i64 = if tail.is_empty() {
        1
    } else if let Some(e) = tail.strip_prefix('^') {
        e.parse().map_err(|_| syntax(pos + close + 2, format!("bad exponent {e:?}")))?
    } else {
        return Err(syntax(pos + close + 2, format!("unexpected {tail:?}")));
    };
    if exp < 0 || exp >= n as i64 {
        return Err(Error::ExponentOutOfRange { pos: pos + close + 3, exp, order: n });
    }
    Ok(if kind == 0 {
        PauliMonomial::single(group, site, factor, exp, 0)
    } else {
        PauliMonomial::single(group, site, factor, 0, exp)
    })
}

impl fmt::Display for PauliMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if !self.phase.is_zero() {
            parts.push(format!("ph:{}/{}", self.phase.numer(), self.phase.denom()));
        }
        let pw = |e: u32| if e == 1 { String::new() } else { format!("^{e}") };
        for (&(s, fct), &(a, b)) in &self.ops {
            if a != 0 {
                parts.push(format!("X[{s},{fct}]{}", pw(a)));
            }
            if b != 0 {
                parts.push(format!("Z[{s},{fct}]{}", pw(b)));
            }
        }
        write!(f, "{}", parts.join(" "))
    }
}

impl fmt::Debug for PauliMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pauli({self})")
    }
}

impl Serialize for PauliMonomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Mul<&PauliMonomial> for &PauliMonomial {
    type Output = PauliMonomial;
    /// Panics on mismatched groups; use [`PauliMonomial::multiply`] for a checked product.
    fn mul(self, rhs: &PauliMonomial) -> PauliMonomial {
        self.multiply(rhs).expect("monomials over the same group")
    }
}

impl MulAssign<&PauliMonomial> for PauliMonomial {
    fn mul_assign(&mut self, rhs: &PauliMonomial) {
        assert!(self.group == rhs.group, "monomials over different groups");
        self.mul_in_place(rhs);
    }
}

pub fn multiply(p: &PauliMonomial, q: &PauliMonomial) -> Result<PauliMonomial> {
    p.multiply(q)
}

pub fn commutation_phase(p: &PauliMonomial, q: &PauliMonomial) -> Result<Phase> {
    p.commutation_phase(q)
}
