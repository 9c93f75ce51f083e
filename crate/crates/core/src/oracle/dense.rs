//! Explicit matrices on small chains. Basis states are mixed-radix digit strings over the
//! coordinates `(site, factor)` in ascending order, the first coordinate most significant;
//! `X^a Z^b |k> = w^(b k) |k + a>` on each coordinate.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::FiniteAbelianGroup;
use crate::pauli::{PauliMonomial, Site};
use crate::phase::Phase;

pub const MAX_DIM: usize = 4096;

/// Site/factor layout of a finite chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    group: FiniteAbelianGroup,
    sites: usize,
    radix: Vec<usize>,
    strides: Vec<usize>,
    dim: usize,
}

impl Chain {
    pub fn new(group: &FiniteAbelianGroup, sites: usize) -> Result<Self> {
        let r = group.rank();
        let radix: Vec<usize> =
            (0..sites * r).map(|c| group.modulus(c % r) as usize).collect();
        let mut dim = 1usize;
        for &n in &radix {
            dim = dim.checked_mul(n).filter(|&d| d <= MAX_DIM).ok_or_else(|| {
                Error::Oracle(format!("{sites} sites of {group} exceed dimension {MAX_DIM}"))
            })?;
        }
        let mut strides = vec![1usize; radix.len()];
        for c in (0..radix.len().saturating_sub(1)).rev() {
            strides[c] = strides[c + 1] * radix[c + 1];
        }
        Ok(Chain { group: group.clone(), sites, radix, strides, dim })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn sites(&self) -> usize {
        self.sites
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn coord(&self, site: usize, factor: usize) -> usize {
        site * self.group.rank() + factor
    }

    pub fn digits(&self, mut k: usize) -> Vec<usize> {
        let mut d = vec![0; self.radix.len()];
        for c in (0..self.radix.len()).rev() {
            d[c] = k % self.radix[c];
            k /= self.radix[c];
        }
        d
    }

    pub fn index(&self, digits: &[usize]) -> usize {
        digits.iter().zip(&self.strides).map(|(d, s)| d * s).sum()
    }

    /// Sends every coordinate `(s, j)` to `(f(s), j)`; `f` must permute the sites.
    pub fn site_permutation(&self, f: impl Fn(usize) -> usize) -> MonomialMatrix {
        let r = self.group.rank();
        let mut perm = vec![0; self.dim];
        for (k, p) in perm.iter_mut().enumerate() {
            let d = self.digits(k);
            let mut e = vec![0; d.len()];
            for s in 0..self.sites {
                for j in 0..r {
                    e[self.coord(f(s), j)] = d[self.coord(s, j)];
                }
            }
            *p = self.index(&e);
        }
        MonomialMatrix { perm, phase: vec![Complex64::new(1.0, 0.0); self.dim] }
    }
}

/// `column k -> phase[k] * e_{perm[k]}`.
#[derive(Clone, Debug)]
pub struct MonomialMatrix {
    pub perm: Vec<usize>,
    pub phase: Vec<Complex64>,
}

impl MonomialMatrix {
    pub fn identity(dim: usize) -> Self {
        MonomialMatrix { perm: (0..dim).collect(), phase: vec![Complex64::new(1.0, 0.0); dim] }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    /// `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        let perm = other.perm.iter().map(|&p| self.perm[p]).collect();
        let phase = other.perm.iter().zip(&other.phase).map(|(&p, &z)| self.phase[p] * z).collect();
        MonomialMatrix { perm, phase }
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut phase = vec![Complex64::new(0.0, 0.0); n];
        for k in 0..n {
            perm[self.perm[k]] = k;
            phase[self.perm[k]] = self.phase[k].conj();
        }
        MonomialMatrix { perm, phase }
    }

    pub fn scale(&self, z: Complex64) -> Self {
        MonomialMatrix { perm: self.perm.clone(), phase: self.phase.iter().map(|&p| p * z).collect() }
    }

    pub fn apply(&self, v: &DVector<Complex64>) -> DVector<Complex64> {
        let mut out = DVector::zeros(v.len());
        for k in 0..self.dim() {
            out[self.perm[k]] += self.phase[k] * v[k];
        }
        out
    }

    /// `tr(self^dagger other)`.
    pub fn inner(&self, other: &Self) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..self.dim() {
            if self.perm[k] == other.perm[k] {
                acc += self.phase[k].conj() * other.phase[k];
            }
        }
        acc
    }

    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        for k in 0..n {
            m[(self.perm[k], k)] = self.phase[k];
        }
        m
    }

    pub fn max_deviation(&self, other: &Self) -> f64 {
        if self.perm != other.perm {
            return f64::INFINITY;
        }
        self.phase.iter().zip(&other.phase).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }
}

/// A dense matrix on a chain.
#[derive(Clone, Debug)]
pub struct DenseOperator {
    pub chain: Chain,
    pub matrix: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn new(chain: Chain, matrix: DMatrix<Complex64>) -> Self {
        DenseOperator { chain, matrix }
    }

    pub fn identity(chain: &Chain) -> Self {
        DenseOperator { chain: chain.clone(), matrix: DMatrix::identity(chain.dim(), chain.dim()) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn mul(&self, other: &Self) -> Self {
        DenseOperator { chain: self.chain.clone(), matrix: &self.matrix * &other.matrix }
    }

    pub fn adjoint(&self) -> Self {
        DenseOperator { chain: self.chain.clone(), matrix: self.matrix.adjoint() }
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        let d = self.dim();
        (self.matrix.adjoint() * &self.matrix - DMatrix::<Complex64>::identity(d, d)).norm() < tol
    }
}

/// Frobenius distance relative to the norm of `b`.
pub fn relative_residual(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    let nb = b.norm();
    if nb == 0.0 {
        a.norm()
    } else {
        (a - b).norm() / nb
    }
}

/// Best `c` with `a ~ c b`, and the relative residual of that fit.
pub fn proportionality(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> (Complex64, f64) {
    let bb = b.norm_squared();
    if bb == 0.0 {
        return (Complex64::new(0.0, 0.0), if a.norm() == 0.0 { 0.0 } else { f64::INFINITY });
    }
    let c = b.iter().zip(a.iter()).map(|(x, y)| x.conj() * y).sum::<Complex64>() / bb;
    let na = a.norm();
    let r = (a - b * c).norm();
    (c, if na == 0.0 { r } else { r / na })
}

/// `((site, factor), (a, b))` with the site already wrapped into the chain.
type Entry = ((usize, usize), (u32, u32));

fn check_window(chain: &Chain, p: &PauliMonomial, wrap: bool) -> Result<Vec<Entry>> {
    chain.group().same_as(p.group(), "realize")?;
    let l = chain.sites() as Site;
    let sup = match p.support() {
        None => return Ok(Vec::new()),
        Some(s) => s,
    };
    if !wrap && (sup.lo < 0 || sup.hi >= l) {
        return Err(Error::Oracle(format!("support {sup} of {p} does not fit in [0, {l})")));
    }
    if wrap && sup.len() > l as u64 {
        return Err(Error::Oracle(format!("support {sup} of {p} is longer than the ring of {l}")));
    }
    Ok(p.exps().iter().map(|(&(s, f), &e)| ((s.rem_euclid(l) as usize, f), e)).collect())
}

fn realize_entries(chain: &Chain, entries: &[Entry], phase: Phase) -> MonomialMatrix {
    let global = phase.to_complex();
    let coords: Vec<(usize, u32, u32, u32)> = entries
        .iter()
        .map(|&((s, f), (a, b))| (chain.coord(s, f), a, b, chain.group().modulus(f)))
        .collect();
    let mut perm = vec![0; chain.dim()];
    let mut ph = vec![global; chain.dim()];
    for k in 0..chain.dim() {
        let mut d = chain.digits(k);
        let mut acc = Phase::zero();
        for &(c, a, b, n) in &coords {
            acc += Phase::new(b as i64 * d[c] as i64, n as i64);
            d[c] = (d[c] + a as usize) % n as usize;
        }
        perm[k] = chain.index(&d);
        ph[k] *= acc.to_complex();
    }
    MonomialMatrix { perm, phase: ph }
}

/// The matrix of `p`, whose support must lie in `[0, L)`.
pub fn realize(p: &PauliMonomial, chain: &Chain) -> Result<MonomialMatrix> {
    let entries = check_window(chain, p, false)?;
    Ok(realize_entries(chain, &entries, p.phase()))
}

/// The matrix of `p` on the ring `Z_L`: sites are reduced modulo `L`; the support must span at
/// most `L` consecutive sites so that no two coordinates merge.
pub fn realize_periodic(p: &PauliMonomial, chain: &Chain) -> Result<MonomialMatrix> {
    let entries = check_window(chain, p, true)?;
    Ok(realize_entries(chain, &entries, p.phase()))
}

pub fn realize_dense(p: &PauliMonomial, chain: &Chain) -> Result<DenseOperator> {
    Ok(DenseOperator::new(chain.clone(), realize(p, chain)?.to_dense()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qubit_conventions() {
        let g = FiniteAbelianGroup::cyclic(2);
        let c = Chain::new(&g, 1).unwrap();
        let x = realize(&PauliMonomial::x(&g, 0, 0), &c).unwrap().to_dense();
        assert_eq!(x[(1, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(x[(0, 0)], Complex64::new(0.0, 0.0));
        let z = realize(&PauliMonomial::z(&g, 0, 0), &c).unwrap().to_dense();
        let zx = &PauliMonomial::z(&g, 0, 0) * &PauliMonomial::x(&g, 0, 0);
        let zx_d = realize(&zx, &c).unwrap().to_dense();
        assert!(relative_residual(&zx_d, &(-(&x * &z))) < 1e-12);
        assert!(relative_residual(&zx_d, &(&z * &x)) < 1e-12);
    }

    #[test]
    fn too_large() {
        let g = FiniteAbelianGroup::cyclic(2);
        assert!(Chain::new(&g, 13).is_err());
    }
}
