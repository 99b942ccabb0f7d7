//! Full subcategories of mod(A) given by a membership test and cover providers.

use crate::algebra::submodule::{generated, image, image_subgroup, is_submodule, kernel, Quot, Sub};
use crate::algebra::{projective_cover, solve_left, star_witness, AHom, AModule, Alg};
use crate::error::{Error, Result};
use crate::linalg::Subgroup;
use crate::resolution::CoverProvider;

pub trait Subcategory {
    fn name(&self) -> String;
    fn contains(&self, md: &AModule) -> bool;
    /// For an epi a: A ↠ U with U in the subcategory: v: V → A with V inside and a∘v epi.
    fn cover(&self, a: &AHom) -> Result<AHom>;
    /// For a mono j: U ↪ A with U inside: q: A → V with V inside and q∘j mono.
    fn cocover(&self, j: &AHom) -> Result<AHom>;
    /// An epi from a projective object of the subcategory onto md.
    fn proj_cover(&self, md: &AModule) -> Result<AHom>;
}

/// cover() with its contract checked.
pub fn checked_cover(u: &dyn Subcategory, a: &AHom) -> Result<AHom> {
    let v = u.cover(a)?;
    if v.target != a.source || !u.contains(&v.source) || !a.compose(&v).is_epi() {
        return Err(Error::CoverFailure(format!("{}: cover does not satisfy its contract", u.name())));
    }
    Ok(v)
}

pub fn checked_cocover(u: &dyn Subcategory, j: &AHom) -> Result<AHom> {
    let q = u.cocover(j)?;
    if q.source != j.target || !u.contains(&q.target) || !q.compose(j).is_mono() {
        return Err(Error::CoverFailure(format!("{}: cocover does not satisfy its contract", u.name())));
    }
    Ok(q)
}

/// Projective resolutions inside the subcategory.
pub struct InSub<'a>(pub &'a dyn Subcategory);

impl CoverProvider for InSub<'_> {
    fn cover(&self, md: &AModule) -> Result<AHom> {
        let p = self.0.proj_cover(md)?;
        if p.target != *md || !p.is_epi() || !self.0.contains(&p.source) {
            return Err(Error::CoverFailure(format!("{}: projective cover is not an epi from inside", self.0.name())));
        }
        Ok(p)
    }
}

/// All of mod(A); cocovers come from the QF construction.
pub struct Everything;

impl Subcategory for Everything {
    fn name(&self) -> String {
        "everything".into()
    }
    fn contains(&self, _: &AModule) -> bool {
        true
    }
    fn cover(&self, a: &AHom) -> Result<AHom> {
        Ok(AHom::identity(&a.source))
    }
    fn cocover(&self, j: &AHom) -> Result<AHom> {
        Ok(star_witness(j)?.q)
    }
    fn proj_cover(&self, md: &AModule) -> Result<AHom> {
        Ok(projective_cover(md)?.pi)
    }
}

pub struct Zero;

impl Subcategory for Zero {
    fn name(&self) -> String {
        "zero".into()
    }
    fn contains(&self, md: &AModule) -> bool {
        md.is_zero()
    }
    fn cover(&self, a: &AHom) -> Result<AHom> {
        Ok(AHom::zero(&AModule::zero(&a.source.alg), &a.source))
    }
    fn cocover(&self, j: &AHom) -> Result<AHom> {
        Ok(AHom::zero(&j.target, &AModule::zero(&j.target.alg)))
    }
    fn proj_cover(&self, md: &AModule) -> Result<AHom> {
        Ok(AHom::zero(&AModule::zero(&md.alg), md))
    }
}

/// Projective modules; used for h-projective replacement. Not closed under quotients.
pub struct Projectives;

impl Subcategory for Projectives {
    fn name(&self) -> String {
        "projectives".into()
    }
    fn contains(&self, md: &AModule) -> bool {
        crate::algebra::is_projective(md).unwrap_or(false)
    }
    fn cover(&self, a: &AHom) -> Result<AHom> {
        let pi = projective_cover(&a.target)?.pi;
        solve_left(a, &pi).ok_or_else(|| Error::CoverFailure("projective cover does not lift".into()))
    }
    fn cocover(&self, _: &AHom) -> Result<AHom> {
        Err(Error::CoverFailure("projectives have no cocovers in general".into()))
    }
    fn proj_cover(&self, md: &AModule) -> Result<AHom> {
        Ok(projective_cover(md)?.pi)
    }
}

fn action_hom(md: &AModule, x: &[u64]) -> AHom {
    AHom::from_parts(md, md, md.act_matrix(x))
}

/// Modules M with eM = M for a central idempotent e; a Serre subcategory.
pub struct ELocal {
    pub e: Vec<u64>,
    one_minus: Vec<u64>,
}

impl ELocal {
    pub fn new(alg: &Alg, e: &[u64]) -> Result<ELocal> {
        let e = alg.reduced(e);
        if alg.mul(&e, &e) != e {
            return Err(Error::Invalid("e is not idempotent".into()));
        }
        if (0..alg.rank()).any(|i| alg.mul(&e, &alg.basis_vec(i)) != alg.mul(&alg.basis_vec(i), &e)) {
            return Err(Error::Invalid("e is not central".into()));
        }
        let one_minus = alg.sub(&alg.unit, &e);
        Ok(ELocal { e, one_minus })
    }

    /// eM ⊆ M.
    pub fn part(&self, md: &AModule) -> Sub {
        image(&action_hom(md, &self.e)).0
    }
}

impl Subcategory for ELocal {
    fn name(&self) -> String {
        format!("e-local(e={:?})", self.e)
    }
    fn contains(&self, md: &AModule) -> bool {
        md.reduce(md.act_matrix(&self.one_minus)).is_zero()
    }
    fn cover(&self, a: &AHom) -> Result<AHom> {
        Ok(self.part(&a.source).incl)
    }
    fn cocover(&self, j: &AHom) -> Result<AHom> {
        Ok(image(&action_hom(&j.target, &self.e)).1)
    }
    fn proj_cover(&self, md: &AModule) -> Result<AHom> {
        let pi = projective_cover(md)?.pi;
        let ep = self.part(&pi.source);
        Ok(pi.compose(&ep.incl))
    }
}

/// Modules killed by 1 − e for an idempotent e (not necessarily central): mod(A/A(1−e)A).
pub struct IdempotentCut {
    pub e: Vec<u64>,
    one_minus: Vec<u64>,
}

impl IdempotentCut {
    pub fn new(alg: &Alg, e: &[u64]) -> Result<IdempotentCut> {
        let e = alg.reduced(e);
        if alg.mul(&e, &e) != e {
            return Err(Error::Invalid("e is not idempotent".into()));
        }
        Ok(IdempotentCut { one_minus: alg.sub(&alg.unit, &e), e })
    }

    /// The smallest submodule N with M/N inside: generated by (1−e)M.
    fn trace(&self, md: &AModule) -> Subgroup {
        let s = generated(md, &image_subgroup(&action_hom(md, &self.one_minus)).gens());
        debug_assert!(is_submodule(md, &s));
        s
    }

    fn top_quotient(&self, md: &AModule) -> Quot {
        Quot::new(md, &self.trace(md))
    }
}

impl Subcategory for IdempotentCut {
    fn name(&self) -> String {
        format!("cut(e={:?})", self.e)
    }
    fn contains(&self, md: &AModule) -> bool {
        md.reduce(md.act_matrix(&self.one_minus)).is_zero()
    }
    fn cover(&self, a: &AHom) -> Result<AHom> {
        let pi = self.proj_cover(&a.target)?;
        solve_left(a, &pi).ok_or_else(|| Error::CoverFailure("cover from the projective of the cut does not lift".into()))
    }
    fn cocover(&self, j: &AHom) -> Result<AHom> {
        let q = self.top_quotient(&j.target);
        if !q.proj.compose(j).is_mono() {
            return Err(Error::CoverFailure("largest quotient inside the cut is not injective on the submodule".into()));
        }
        Ok(q.proj)
    }
    fn proj_cover(&self, md: &AModule) -> Result<AHom> {
        let pi = projective_cover(md)?.pi;
        let q = self.top_quotient(&pi.source);
        q.descend(&pi)
    }
}

/// Zero submodule check helper for tests and callers: kernel of the inclusion is trivial.
pub fn is_inside_sub(u: &dyn Subcategory, s: &Sub) -> bool {
    u.contains(&s.module) && kernel(&s.incl).module.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cover::simple_top;
    use crate::algebra::preset;

    #[test]
    fn elocal_over_z6() {
        let a = preset("zmod:6").unwrap();
        let u = ELocal::new(&a, &[4]).unwrap();
        let reg = AModule::regular(&a);
        assert!(!u.contains(&reg));
        let p = u.part(&reg);
        assert_eq!(p.module.size(), 3);
        assert!(u.contains(&p.module));
        let pc = InSub(&u).cover(&p.module).unwrap();
        assert!(pc.is_iso());
        assert!(ELocal::new(&a, &[2]).is_err());
    }

    #[test]
    fn cut_of_a2() {
        let a = preset("path_algebra:1->2").unwrap();
        let s = simples_of(&a);
        let idem = a.idempotents.clone().unwrap();
        let u = IdempotentCut::new(&a, &idem[0]).unwrap();
        let inside: Vec<bool> = s.iter().map(|m| u.contains(m)).collect();
        assert_eq!(inside.iter().filter(|&&b| b).count(), 1);
        let reg = AModule::regular(&a);
        assert!(!u.contains(&reg));
        for m in s.iter().filter(|m| u.contains(m)) {
            let p = InSub(&u).cover(m).unwrap();
            assert!(p.is_iso());
        }
    }

    fn simples_of(a: &Alg) -> Vec<AModule> {
        (0..2).map(|i| simple_top(a, i).unwrap()).collect()
    }
}
