//! Projective resolutions by iterated covers of syzygies.

use serde::Serialize;

use crate::algebra::cover::projective_cover;
use crate::algebra::radical::induced_on_radical_quotient;
use crate::algebra::submodule::kernel;
use crate::algebra::{is_isomorphic, solve_left, AHom, AModule};
use crate::complex::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::linalg::ZmMatrix;

/// Supplies epimorphisms P ↠ M from projective objects.
pub trait CoverProvider {
    fn cover(&self, md: &AModule) -> Result<AHom>;
    /// Whether the covers are minimal, so that d̄ = 0 is expected.
    fn minimal(&self) -> bool {
        false
    }
}

/// Projective covers in mod(A).
pub struct MinimalCovers;

impl CoverProvider for MinimalCovers {
    fn cover(&self, md: &AModule) -> Result<AHom> {
        Ok(projective_cover(md)?.pi)
    }
    fn minimal(&self) -> bool {
        true
    }
}

/// Projective covers with `extra` free summands mapped to zero; never minimal
/// unless extra = 0.
pub struct PaddedCovers {
    pub extra: usize,
}

impl CoverProvider for PaddedCovers {
    fn cover(&self, md: &AModule) -> Result<AHom> {
        let pi = projective_cover(md)?.pi;
        if self.extra == 0 {
            return Ok(pi);
        }
        let free = AModule::regular(&md.alg).power(self.extra);
        let src = AModule::direct_sum(&md.alg, &[&pi.source, &free]);
        let mat = pi.mat.hstack(&ZmMatrix::zeros(md.m(), md.rank(), free.rank()));
        Ok(AHom::from_parts(&src, md, mat))
    }
    fn minimal(&self) -> bool {
        self.extra == 0
    }
}

/// Ω^s ≅ Ω^t with s < t, witnessed by `iso`.
#[derive(Clone, Debug)]
pub struct Periodicity {
    pub s: usize,
    pub t: usize,
    pub iso: AHom,
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub module: AModule,
    /// P_i sits in degree −i (projective) or J^i in degree i (injective).
    pub complex: Complex,
    /// P_0 → M, or M → J^0.
    pub aug: AHom,
    pub minimal: bool,
    pub period: Option<Periodicity>,
    /// True when the last syzygy vanished, so the resolution is complete.
    pub closed: bool,
    /// Ω^0 = M, Ω^1, …; for injective resolutions, the cosyzygies.
    pub syzygies: Vec<AModule>,
    pub injective: bool,
}

impl Resolution {
    /// Number of terms P_0, …, P_len−1 computed.
    pub fn terms(&self) -> usize {
        self.complex.mods.len()
    }

    /// P_i as a module.
    pub fn term(&self, i: usize) -> AModule {
        if self.is_projective() {
            self.complex.module(-(i as i64))
        } else {
            self.complex.module(i as i64)
        }
    }

    pub fn is_projective(&self) -> bool {
        !self.injective
    }

    /// d_i: P_i → P_{i−1} for a projective resolution (i ≥ 1).
    pub fn d(&self, i: usize) -> AHom {
        self.complex.diff(-(i as i64))
    }

    /// Projective dimension when the resolution closed up.
    pub fn length(&self) -> Option<usize> {
        self.closed.then(|| self.terms().saturating_sub(1))
    }

    /// d̄ = 0 on radical quotients for every differential.
    pub fn check_minimal(&self) -> Result<bool> {
        for n in self.complex.lo..self.complex.hi() {
            if !induced_on_radical_quotient(&self.complex.diff(n))?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The augmented sequence ⋯ → P_1 → P_0 → M → 0 is exact through P_{len−1}.
    pub fn check_exact(&self) -> Result<()> {
        let c = &self.complex;
        if self.is_projective() {
            if !self.aug.is_epi() {
                return Err(Error::Verification("augmentation is not onto".into()));
            }
            let d1 = c.diff(-1);
            if kernel(&self.aug).module.size() != d1.image_size() {
                return Err(Error::Verification("not exact at P_0".into()));
            }
            for n in c.lo + 1..0 {
                if c.diff(n).kernel_size() != c.diff(n - 1).image_size() {
                    return Err(Error::Verification(format!("not exact in degree {n}")));
                }
            }
            if self.closed && c.diff(c.lo).kernel_size() != 1 && c.lo < 0 {
                return Err(Error::Verification("last differential is not injective".into()));
            }
            if self.closed && c.lo == 0 && !self.aug.is_iso() {
                return Err(Error::Verification("length-zero resolution is not an isomorphism".into()));
            }
        } else {
            if !self.aug.is_mono() {
                return Err(Error::Verification("coaugmentation is not injective".into()));
            }
            if c.diff(0).kernel_size() != self.aug.image_size() {
                return Err(Error::Verification("not exact at J^0".into()));
            }
            for n in 1..c.hi() {
                if c.diff(n).kernel_size() != c.diff(n - 1).image_size() {
                    return Err(Error::Verification(format!("not exact in degree {n}")));
                }
            }
        }
        Ok(())
    }
}

/// Resolution with covers from `provider`, computing P_0, …, P_depth at most.
pub fn resolve_with(provider: &dyn CoverProvider, md: &AModule, depth: usize) -> Result<Resolution> {
    let alg = &md.alg;
    let mut terms: Vec<AModule> = Vec::new();
    let mut diffs: Vec<AHom> = Vec::new(); // diffs[i]: P_{i+1} → P_i
    let mut syz = vec![md.clone()];
    let mut incl: Option<AHom> = None; // Ω^i ↪ P_{i−1}
    let mut aug: Option<AHom> = None;
    let mut closed = md.is_zero();
    if !closed {
        for i in 0..=depth {
            let pi = provider.cover(&syz[i])?;
            if let Some(inc) = &incl {
                diffs.push(inc.compose(&pi));
            } else {
                aug = Some(pi.clone());
            }
            terms.push(pi.source.clone());
            let k = kernel(&pi);
            syz.push(k.module.clone());
            if k.module.is_zero() {
                closed = true;
                break;
            }
            incl = Some(k.incl);
        }
    }
    let len = terms.len() as i64;
    let mods: Vec<AModule> = terms.into_iter().rev().collect();
    let dmats: Vec<ZmMatrix> = diffs.into_iter().rev().map(|d| d.mat).collect();
    let complex = if mods.is_empty() { Complex::zero(alg) } else { Complex::from_parts(alg, 1 - len, mods, dmats) };
    let aug = aug.unwrap_or_else(|| AHom::zero(&AModule::zero(alg), md));
    let period = find_period(&syz, depth)?;
    let res = Resolution { module: md.clone(), complex, aug, minimal: provider.minimal(), period, closed, syzygies: syz, injective: false };
    debug_assert!(res.check_exact().is_ok());
    Ok(res)
}

pub fn minimal_projective_resolution(md: &AModule, depth: usize) -> Result<Resolution> {
    let r = resolve_with(&MinimalCovers, md, depth)?;
    if !r.check_minimal()? {
        return Err(Error::Verification("induced differentials on tops are nonzero".into()));
    }
    Ok(r)
}

/// First (s, t) in order of t with 1 ≤ s < t ≤ depth, Ω^s ≠ 0 and Ω^s ≅ Ω^t.
fn find_period(syz: &[AModule], depth: usize) -> Result<Option<Periodicity>> {
    let top = depth.min(syz.len().saturating_sub(1));
    for t in 2..=top {
        for s in 1..t {
            if syz[s].is_zero() {
                continue;
            }
            if let Some(iso) = is_isomorphic(&syz[s], &syz[t])? {
                return Ok(Some(Periodicity { s, t, iso }));
            }
        }
    }
    Ok(None)
}

/// A chain map φ: P → P' over f: M → M' (φ_0 lifts f∘ε through ε').
pub fn comparison_map(from: &Resolution, to: &Resolution, f: &AHom) -> Result<ChainMap> {
    let (p, q) = (&from.complex, &to.complex);
    let mut maps = std::collections::BTreeMap::new();
    let target0 = f.compose(&from.aug);
    let mut prev = solve_left(&to.aug, &target0).ok_or_else(|| Error::Verification("cannot lift through the augmentation".into()))?;
    maps.insert(0, prev.mat.clone());
    for i in 1..from.terms() {
        let n = -(i as i64);
        let rhs = prev.compose(&p.diff(n));
        let next = if q.rank(n) == 0 {
            if !rhs.is_zero() {
                return Err(Error::Verification(format!("comparison cannot continue in degree {n}")));
            }
            AHom::zero(&p.module(n), &q.module(n))
        } else {
            solve_left(&q.diff(n), &rhs).ok_or_else(|| Error::Verification(format!("cannot lift in degree {n}")))?
        };
        maps.insert(n, next.mat.clone());
        prev = next;
    }
    ChainMap::new(p, q, maps)
}

#[derive(Clone, Debug, Serialize)]
pub struct ResolutionReport {
    pub sizes: Vec<u128>,
    pub orders: Vec<Vec<u64>>,
    pub differentials: Vec<ZmMatrix>,
    pub minimal: bool,
    pub closed: bool,
    pub periodicity: Option<PeriodReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PeriodReport {
    pub s: usize,
    pub t: usize,
    pub iso: ZmMatrix,
}

impl Resolution {
    pub fn report(&self) -> ResolutionReport {
        let n = self.terms();
        let sizes = (0..n).map(|i| self.term(i).size()).collect();
        let orders = (0..n).map(|i| self.term(i).add.orders.clone()).collect();
        let differentials = if self.is_projective() {
            (1..n).map(|i| self.d(i).mat).collect()
        } else {
            (0..n.saturating_sub(1)).map(|i| self.complex.diff_mat(i as i64)).collect()
        };
        ResolutionReport {
            sizes,
            orders,
            differentials,
            minimal: self.minimal,
            closed: self.closed,
            periodicity: self.period.as_ref().map(|p| PeriodReport { s: p.s, t: p.t, iso: p.iso.mat.clone() }),
        }
    }
}

/// pd(M) when the minimal resolution closes up within `depth`.
pub fn projective_dimension(md: &AModule, depth: usize) -> Result<Option<usize>> {
    Ok(minimal_projective_resolution(md, depth)?.length())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{preset, radical_quotient, AModule};
    use crate::algebra::submodule::cokernel;

    #[test]
    fn simple_over_dual_numbers() {
        let a = preset("dual_numbers:2").unwrap();
        let k = radical_quotient(&AModule::regular(&a)).unwrap().module;
        let r = minimal_projective_resolution(&k, 6).unwrap();
        assert_eq!(r.terms(), 7);
        assert!(!r.closed);
        let eps = a.right_mult(&a.basis_vec(1));
        for i in 1..7 {
            assert_eq!(r.term(i).size(), 4);
            // every differential is ε up to the choice of generator (here literally ε)
            assert_eq!(r.d(i).mat, eps);
        }
        let p = r.period.as_ref().unwrap();
        assert_eq!((p.s, p.t), (1, 2));
        r.check_exact().unwrap();
        assert!(r.check_minimal().unwrap());
    }

    #[test]
    fn z2_over_z4() {
        let a = preset("zmod:4").unwrap();
        let reg = AModule::regular(&a);
        let z2 = cokernel(&AHom::new(&reg, &reg, a.right_mult(&[2])).unwrap()).module;
        let r = minimal_projective_resolution(&z2, 6).unwrap();
        for i in 1..7 {
            assert_eq!(r.d(i).mat.entries(), &[2]);
        }
        assert!(r.period.is_some());
    }

    #[test]
    fn projective_has_length_zero() {
        let a = preset("path_algebra:1->2").unwrap();
        let r = minimal_projective_resolution(&AModule::regular(&a), 4).unwrap();
        assert_eq!(r.length(), Some(0));
        let s1 = crate::algebra::cover::simple_top(&a, 0).unwrap();
        let r = minimal_projective_resolution(&s1, 4).unwrap();
        assert_eq!(r.length(), Some(1));
        assert_eq!(r.term(1).size(), 2);
    }

    #[test]
    fn padded_resolution_is_exact_but_not_minimal() {
        let a = preset("dual_numbers:2").unwrap();
        let k = radical_quotient(&AModule::regular(&a)).unwrap().module;
        let r = resolve_with(&PaddedCovers { extra: 1 }, &k, 3).unwrap();
        r.check_exact().unwrap();
        assert!(!r.check_minimal().unwrap());
        let mn = minimal_projective_resolution(&k, 3).unwrap();
        let phi = comparison_map(&r, &mn, &AHom::identity(&k)).unwrap();
        phi.check_commutes().unwrap();
    }
}
