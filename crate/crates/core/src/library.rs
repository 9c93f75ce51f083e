//! Named maps on the `Z2 x Z2` chain read as an interleaved qubit chain: qubit `2i` is factor 0
//! of cell `i` and qubit `2i + 1` is factor 1.

use crate::group::{CocycleClass, FiniteAbelianGroup, GroupAutomorphism};
use crate::pauli::{PauliMonomial, Site};
use crate::qca::{self, QcaMap};

pub fn z2z2() -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(vec![2, 2]).expect("Z2 x Z2")
}

/// Qubit `s` of the interleaved chain.
pub fn qubit(s: Site) -> (Site, usize) {
    (s.div_euclid(2), s.rem_euclid(2) as usize)
}

/// `X_s` for an interleaved qubit index.
pub fn qx(s: Site) -> PauliMonomial {
    let (c, f) = qubit(s);
    PauliMonomial::x(&z2z2(), c, f)
}

/// `Z_s` for an interleaved qubit index.
pub fn qz(s: Site) -> PauliMonomial {
    let (c, f) = qubit(s);
    PauliMonomial::z(&z2z2(), c, f)
}

pub fn factor_swap() -> QcaMap {
    let g = z2z2();
    let phi = GroupAutomorphism::new(&g, vec![vec![0, 1], vec![1, 0]]).expect("swap");
    qca::out(&g, &phi).expect("out(swap)")
}

/// Unit translation of the interleaved chain.
pub fn shift() -> QcaMap {
    let g = z2z2();
    let t = qca::translate(&g, 0, 1).expect("translate");
    qca::compose(&t, &factor_swap()).expect("compose")
}

/// Kramers-Wannier on both sublattices.
pub fn d2() -> QcaMap {
    let g = z2z2();
    let a = qca::kw(&g, 0).expect("kw");
    let b = qca::kw(&g, 1).expect("kw");
    qca::compose(&a, &b).expect("compose")
}

/// `shift^-1 . d2`.
pub fn d1() -> QcaMap {
    let t = qca::inverse(&shift()).expect("translation is invertible");
    qca::compose(&t, &d2()).expect("compose")
}

/// Cluster-state entangler.
pub fn cluster() -> QcaMap {
    let g = z2z2();
    let w = CocycleClass::new(&g, &[((0, 1), 1)]).expect("class");
    qca::spt(&g, &w).expect("spt")
}
