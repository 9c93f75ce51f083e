//! QCA definition files.
//!
//! ```toml
//! [group]
//! factors = [2, 2]
//!
//! [qca]                      # the map named "main"
//! compose = ["inv:shift", "d2"]
//!
//! [qca.shift]
//! compose = ["translate:0,1", "out:[[0,1],[1,0]]"]
//!
//! [qca.d2]
//! compose = ["kw:0", "kw:1"]
//!
//! [qca.custom]
//! period = 1
//! X.0.0 = "Z[0,0] Z[1,0]"
//! ZZ.0.0 = "X[1,0]"
//! ```
//!
//! `compose = [a, b, c]` means `a . b . c` (apply `c` first). Entries are names, built-in
//! literals, or `inv:<entry>`.

use std::collections::BTreeMap;

use toml::Value;

use crate::error::{Error, Result};
use crate::group::{CocycleClass, FiniteAbelianGroup, GroupAutomorphism, IntMatrix};
use crate::pauli::{PauliMonomial, Site};
use crate::qca::{self, QcaMap};

pub const MAIN: &str = "main";

/// All maps declared by one file, resolved.
#[derive(Clone, Debug)]
pub struct Definitions {
    pub group: FiniteAbelianGroup,
    maps: BTreeMap<String, QcaMap>,
    order: Vec<String>,
}

impl Definitions {
    pub fn get(&self, name: &str) -> Result<&QcaMap> {
        self.maps.get(name).ok_or_else(|| {
            Error::Definition(format!("no map named {name:?} (declared: {})", self.order.join(", ")))
        })
    }

    /// The map named `main`, or the only declared map.
    pub fn main(&self) -> Result<&QcaMap> {
        if let Some(m) = self.maps.get(MAIN) {
            return Ok(m);
        }
        match self.order.as_slice() {
            [only] => Ok(&self.maps[only]),
            _ => Err(Error::Definition(format!(
                "no [qca] main map; choose one of {}",
                self.order.join(", ")
            ))),
        }
    }

    pub fn names(&self) -> &[String] {
        &self.order
    }
}

enum Body {
    Explicit { period: usize, x: BTreeMap<(usize, usize), String>, zz: BTreeMap<(usize, usize), String> },
    Builtin(String),
    Compose(Vec<String>),
}

fn def_err(msg: impl Into<String>) -> Error {
    Error::Definition(msg.into())
}

pub fn parse(text: &str) -> Result<Definitions> {
    let root: toml::Table = text.parse().map_err(|e: toml::de::Error| def_err(e.to_string()))?;
    let factors = root
        .get("group")
        .and_then(|g| g.get("factors"))
        .and_then(Value::as_array)
        .ok_or_else(|| def_err("missing [group] factors = [...]"))?;
    let factors: Vec<u32> = factors
        .iter()
        .map(|v| v.as_integer().filter(|&n| n > 0 && n <= u32::MAX as i64).map(|n| n as u32))
        .collect::<Option<_>>()
        .ok_or_else(|| def_err("group factors must be positive integers"))?;
    let group = FiniteAbelianGroup::new(factors)?;
    let qca_tab = root
        .get("qca")
        .and_then(Value::as_table)
        .ok_or_else(|| def_err("missing [qca] section"))?;

    let mut bodies: BTreeMap<String, Body> = BTreeMap::new();
    let mut order = Vec::new();
    let is_body_key = |k: &str| {
        matches!(k, "period" | "X" | "ZZ" | "builtin" | "compose") || k.starts_with("X.") || k.starts_with("ZZ.")
    };
    if qca_tab.keys().any(|k| is_body_key(k)) {
        let main: toml::Table =
            qca_tab.iter().filter(|(k, _)| is_body_key(k)).map(|(k, v)| (k.clone(), v.clone())).collect();
        bodies.insert(MAIN.into(), parse_body(MAIN, &main)?);
        order.push(MAIN.to_string());
    }
    for (name, v) in qca_tab.iter().filter(|(k, _)| !is_body_key(k)) {
        let t = v.as_table().ok_or_else(|| def_err(format!("[qca.{name}] must be a table")))?;
        bodies.insert(name.clone(), parse_body(name, t)?);
        order.push(name.clone());
    }
    if bodies.is_empty() {
        return Err(def_err("no maps declared"));
    }
    let mut resolver = Resolver { group: &group, bodies: &bodies, done: BTreeMap::new(), stack: Vec::new() };
    for name in &order {
        resolver.resolve(name)?;
    }
    let maps = resolver.done;
    Ok(Definitions { group, maps, order })
}

fn parse_body(name: &str, t: &toml::Table) -> Result<Body> {
    let kinds = ["builtin", "compose"].iter().filter(|k| t.contains_key(**k)).count()
        + usize::from(t.keys().any(|k| k.starts_with('X') || k.starts_with("ZZ")));
    if kinds != 1 {
        return Err(def_err(format!(
            "map {name:?} needs exactly one of builtin, compose, or X/ZZ images"
        )));
    }
    if let Some(b) = t.get("builtin") {
        let s = b.as_str().ok_or_else(|| def_err(format!("{name}: builtin must be a string")))?;
        return Ok(Body::Builtin(s.to_string()));
    }
    if let Some(c) = t.get("compose") {
        let list = c
            .as_array()
            .and_then(|a| a.iter().map(|v| v.as_str().map(str::to_string)).collect::<Option<Vec<_>>>())
            .ok_or_else(|| def_err(format!("{name}: compose must be a list of strings")))?;
        if list.is_empty() {
            return Err(def_err(format!("{name}: empty compose list")));
        }
        return Ok(Body::Compose(list));
    }
    let period = match t.get("period") {
        None => 1,
        Some(v) => v
            .as_integer()
            .filter(|&p| p >= 1)
            .ok_or_else(|| def_err(format!("{name}: period must be a positive integer")))?
            as usize,
    };
    let mut x = BTreeMap::new();
    let mut zz = BTreeMap::new();
    let mut flat: Vec<(String, &Value)> = Vec::new();
    for (k, v) in t {
        if k == "period" {
            continue;
        }
        flatten(k, v, &mut flat);
    }
    for (key, v) in flat {
        let parts: Vec<&str> = key.split('.').collect();
        let [kind, r, j] = parts.as_slice() else {
            return Err(def_err(format!("{name}: bad key {key:?}, expected X.<r>.<j> or ZZ.<r>.<j>")));
        };
        let r: usize = r.parse().map_err(|_| def_err(format!("{name}: bad offset in {key:?}")))?;
        let j: usize = j.parse().map_err(|_| def_err(format!("{name}: bad factor in {key:?}")))?;
        let s = v.as_str().ok_or_else(|| def_err(format!("{name}: {key} must be a monomial string")))?;
        let slot = match *kind {
            "X" => &mut x,
            "ZZ" => &mut zz,
            _ => return Err(def_err(format!("{name}: unknown generator kind in {key:?}"))),
        };
        if slot.insert((r, j), s.to_string()).is_some() {
            return Err(def_err(format!("{name}: duplicate {key}")));
        }
    }
    Ok(Body::Explicit { period, x, zz })
}

fn flatten<'a>(prefix: &str, v: &'a Value, out: &mut Vec<(String, &'a Value)>) {
    match v {
        Value::Table(t) => {
            for (k, w) in t {
                flatten(&format!("{prefix}.{k}"), w, out);
            }
        }
        _ => out.push((prefix.to_string(), v)),
    }
}

struct Resolver<'a> {
    group: &'a FiniteAbelianGroup,
    bodies: &'a BTreeMap<String, Body>,
    done: BTreeMap<String, QcaMap>,
    stack: Vec<String>,
}

impl Resolver<'_> {
    fn resolve(&mut self, name: &str) -> Result<QcaMap> {
        if let Some(m) = self.done.get(name) {
            return Ok(m.clone());
        }
        if self.stack.iter().any(|s| s == name) {
            return Err(def_err(format!("cyclic definition: {} -> {name}", self.stack.join(" -> "))));
        }
        let body = self.bodies.get(name).ok_or_else(|| def_err(format!("unknown map {name:?}")))?;
        self.stack.push(name.to_string());
        let m = match body {
            Body::Builtin(s) => builtin(self.group, s),
            Body::Compose(list) => self.compose(list),
            Body::Explicit { period, x, zz } => explicit(self.group, name, *period, x, zz),
        }
        .map_err(|e| match e {
            Error::Definition(_) => e,
            other => def_err(format!("map {name:?}: {other}")),
        })?;
        self.stack.pop();
        self.done.insert(name.to_string(), m.clone());
        Ok(m)
    }

    fn entry(&mut self, e: &str) -> Result<QcaMap> {
        if let Some(rest) = e.strip_prefix("inv:") {
            return qca::inverse(&self.entry(rest)?);
        }
        if self.bodies.contains_key(e) {
            return self.resolve(e);
        }
        builtin(self.group, e)
    }

    fn compose(&mut self, list: &[String]) -> Result<QcaMap> {
        let mut acc: Option<QcaMap> = None;
        for e in list.iter().rev() {
            let m = self.entry(e)?;
            acc = Some(match acc {
                None => m,
                Some(a) => qca::compose(&m, &a)?,
            });
        }
        Ok(acc.expect("non-empty list"))
    }
}

fn explicit(
    group: &FiniteAbelianGroup,
    name: &str,
    period: usize,
    x: &BTreeMap<(usize, usize), String>,
    zz: &BTreeMap<(usize, usize), String>,
) -> Result<QcaMap> {
    for &(r, j) in x.keys().chain(zz.keys()) {
        if r >= period || j >= group.rank() {
            return Err(def_err(format!("{name}: image for offset {r} factor {j} outside period/group")));
        }
    }
    QcaMap::from_fn(group, period, |g| {
        let key = (g.site as usize, g.factor);
        let src = match g.kind {
            qca::GenKind::X => x.get(&key),
            qca::GenKind::ZZ => zz.get(&key),
        };
        match src {
            Some(s) => PauliMonomial::parse(group, s),
            None => Ok(g.monomial(group)),
        }
    })
}

/// Built-in literals: `identity`, `identity:<p>`, `kw:<j>`, `translate:<j>,<q>`,
/// `spt:t01=1,...` and `out:[[..],..]`.
pub fn builtin(group: &FiniteAbelianGroup, s: &str) -> Result<QcaMap> {
    let (head, arg) = s.split_once(':').unwrap_or((s, ""));
    let arg = arg.trim();
    let int = |t: &str| -> Result<i64> {
        t.trim().parse().map_err(|_| def_err(format!("bad integer {t:?} in builtin {s:?}")))
    };
    match head.trim() {
        "identity" => {
            let p = if arg.is_empty() { 1 } else { int(arg)? };
            if p < 1 {
                return Err(def_err(format!("identity period must be positive in {s:?}")));
            }
            Ok(qca::identity(group, p as usize))
        }
        "kw" => qca::kw(group, int(arg)? as usize),
        "translate" => {
            let (j, q) = arg
                .split_once(',')
                .ok_or_else(|| def_err(format!("translate needs <factor>,<shift>: {s:?}")))?;
            qca::translate(group, int(j)? as usize, int(q)? as Site)
        }
        "spt" => qca::spt(group, &parse_cocycle(group, arg)?),
        "out" => {
            let m = parse_matrix(arg)?;
            qca::out(group, &GroupAutomorphism::new(group, m)?)
        }
        _ => Err(def_err(format!("unknown builtin or map {s:?}"))),
    }
}

pub fn parse_cocycle(group: &FiniteAbelianGroup, arg: &str) -> Result<CocycleClass> {
    let mut entries = Vec::new();
    for part in arg.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| def_err(format!("bad cocycle entry {part:?}")))?;
        let idx = k.trim().strip_prefix('t').filter(|d| d.len() >= 2);
        let idx = idx.ok_or_else(|| def_err(format!("cocycle key must be tJK, got {k:?}")))?;
        let (j, kk) = if let Some((a, b)) = idx.split_once('_') {
            (a.parse(), b.parse())
        } else {
            (idx[..1].parse(), idx[1..].parse())
        };
        let (j, kk): (usize, usize) = match (j, kk) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return Err(def_err(format!("bad cocycle indices in {k:?}"))),
        };
        let t: i64 = v.trim().parse().map_err(|_| def_err(format!("bad cocycle value {v:?}")))?;
        entries.push(((j, kk), t));
    }
    CocycleClass::new(group, &entries)
}

pub fn parse_matrix(arg: &str) -> Result<IntMatrix> {
    let v: Value = format!("m = {arg}")
        .parse::<toml::Table>()
        .map_err(|e| def_err(format!("bad matrix {arg:?}: {e}")))?
        .remove("m")
        .expect("key present");
    v.as_array()
        .and_then(|rows| {
            rows.iter()
                .map(|r| r.as_array()?.iter().map(Value::as_integer).collect::<Option<Vec<i64>>>())
                .collect::<Option<Vec<_>>>()
        })
        .ok_or_else(|| def_err(format!("matrix must be a list of integer rows: {arg:?}")))
}

pub fn load(path: &std::path::Path) -> Result<Definitions> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| def_err(format!("cannot read {}: {e}", path.display())))?;
    parse(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::library;

    #[test]
    fn explicit_kw() {
        let d = parse(
            "[group]\nfactors = [2]\n[qca]\nperiod = 1\nX.0.0 = \"Z[0,0] Z[1,0]\"\nZZ.0.0 = \"X[1,0]\"\n",
        )
        .unwrap();
        let g = FiniteAbelianGroup::cyclic(2);
        assert!(d.main().unwrap().acts_like(&qca::kw(&g, 0).unwrap()));
    }

    #[test]
    fn named_compositions() {
        let text = r#"
[group]
factors = [2, 2]
[qca]
compose = ["inv:shift", "d2"]
[qca.shift]
compose = ["translate:0,1", "out:[[0,1],[1,0]]"]
[qca.d2]
compose = ["kw:0", "kw:1"]
"#;
        let d = parse(text).unwrap();
        assert!(d.main().unwrap().acts_like(&library::d1()));
        assert!(d.get("shift").unwrap().acts_like(&library::shift()));
        assert_eq!(d.names(), ["main", "shift", "d2"]);
    }

    #[test]
    fn errors() {
        assert!(parse("[qca]\nbuiltin = \"kw:0\"").is_err());
        let cyc = "[group]\nfactors=[2]\n[qca.a]\ncompose=[\"b\"]\n[qca.b]\ncompose=[\"a\"]\n";
        assert!(matches!(parse(cyc), Err(Error::Definition(m)) if m.contains("cyclic")));
        let bad = "[group]\nfactors=[2]\n[qca]\nbuiltin=\"kw:3\"\n";
        assert!(parse(bad).is_err());
        let g = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        assert_eq!(parse_cocycle(&g, "t01=1").unwrap().get(0, 1), 1);
        assert!(builtin(&g, "spt:t01=1").is_ok());
    }
}
