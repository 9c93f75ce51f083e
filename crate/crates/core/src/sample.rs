//! Seeded random inputs for property suites and oracle checks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::group::{CocycleClass, FiniteAbelianGroup, GroupAutomorphism};
use crate::pauli::{Interval, PauliMonomial};
use crate::phase::Phase;
use crate::qca::{self, QcaMap};

pub type SampleRng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 0x5eed_0001;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform monomial on `window` with a random phase of denominator `lcm(n_j)`.
pub fn monomial(rng: &mut impl Rng, group: &FiniteAbelianGroup, window: Interval) -> PauliMonomial {
    let mut m = PauliMonomial::identity(group);
    for s in window.sites() {
        for j in 0..group.rank() {
            let n = group.modulus(j) as i64;
            m.set(s, j, rng.gen_range(0..n), rng.gen_range(0..n));
        }
    }
    let den = group.factors().iter().fold(1i64, |acc, &n| num_integer::lcm(acc, n as i64));
    m.with_phase(Phase::new(rng.gen_range(0..den), den))
}

/// Like [`monomial`], then the Z-exponent on the last site is fixed so every charge vanishes.
pub fn symmetric_monomial(rng: &mut impl Rng, group: &FiniteAbelianGroup, window: Interval) -> PauliMonomial {
    let mut m = monomial(rng, group, window);
    let totals = m.z_totals();
    for (j, t) in totals.iter().enumerate() {
        let (a, b) = m.get(window.hi, j);
        m.set(window.hi, j, a as i64, b as i64 - t);
    }
    m
}

/// The built-in maps on `group`: identity, unit translations, kw on every factor, the
/// entangler of every non-trivial single pairing, and factor swaps between equal orders.
pub fn builtins(group: &FiniteAbelianGroup) -> Vec<(String, QcaMap)> {
    let r = group.rank();
    let mut out = vec![("identity".to_string(), qca::identity(group, 1))];
    for j in 0..r {
        out.push((format!("translate:{j},1"), qca::translate(group, j, 1).expect("factor")));
        out.push((format!("translate:{j},-1"), qca::translate(group, j, -1).expect("factor")));
        out.push((format!("kw:{j}"), qca::kw(group, j).expect("factor")));
    }
    for j in 0..r {
        for k in j + 1..r {
            let g = num_integer::gcd(group.modulus(j), group.modulus(k));
            if g > 1 {
                let w = CocycleClass::new(group, &[((j, k), 1)]).expect("class");
                out.push((format!("spt:t{j}{k}=1"), qca::spt(group, &w).expect("spt")));
            }
            if group.modulus(j) == group.modulus(k) {
                let mut m = crate::group::identity_matrix(r);
                m.swap(j, k);
                let phi = GroupAutomorphism::new(group, m).expect("swap");
                out.push((format!("out:swap{j}{k}"), qca::out(group, &phi).expect("out")));
            }
        }
    }
    out
}

/// A random composition word of length `1..=max_len`, with its letters.
pub fn word(rng: &mut impl Rng, letters: &[(String, QcaMap)], max_len: usize) -> (Vec<String>, QcaMap) {
    let len = rng.gen_range(1..=max_len);
    let mut names = Vec::with_capacity(len);
    let mut acc: Option<QcaMap> = None;
    for _ in 0..len {
        let (name, m) = letters.choose(rng).expect("non-empty alphabet");
        names.push(name.clone());
        acc = Some(match acc {
            None => m.clone(),
            Some(a) => qca::compose(&a, m).expect("same group"),
        });
    }
    (names, acc.expect("non-empty word"))
}
