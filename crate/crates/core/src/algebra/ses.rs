//! Short exact sequences of modules and split-mono tests.

use super::homspace::{hom, Block, LinearSystem};
use super::module::{AHom, AModule};
use super::submodule::image_subgroup;
use crate::error::{Error, Result};
use crate::linalg::group::kernel_hom;
use crate::linalg::ZmMatrix;

/// 0 → sub -i→ mid -p→ quot → 0.
#[derive(Clone, Debug)]
pub struct Ses {
    pub i: AHom,
    pub p: AHom,
}

impl Ses {
    pub fn new(i: AHom, p: AHom) -> Result<Ses> {
        if i.target != p.source {
            return Err(Error::InvalidSES("middle objects differ".into()));
        }
        if !i.is_mono() {
            return Err(Error::InvalidSES("first map is not injective".into()));
        }
        if !p.is_epi() {
            return Err(Error::InvalidSES("second map is not surjective".into()));
        }
        if !p.compose(&i).is_zero() {
            return Err(Error::InvalidSES("composite is nonzero".into()));
        }
        if image_subgroup(&i) != kernel_hom(&p.source.add, &p.target.add, &p.mat) {
            return Err(Error::InvalidSES("image of i differs from kernel of p".into()));
        }
        Ok(Ses { i, p })
    }

    pub fn sub(&self) -> &AModule {
        &self.i.source
    }

    pub fn mid(&self) -> &AModule {
        &self.i.target
    }

    pub fn quot(&self) -> &AModule {
        &self.p.target
    }

    pub fn is_split(&self) -> Result<bool> {
        Ok(split_mono_test(&self.i)?.is_some())
    }
}

/// A retraction r with r∘i = id, or None when none exists.
pub fn split_mono_test(i: &AHom) -> Result<Option<AHom>> {
    if !i.is_mono() {
        return Err(Error::NotMono);
    }
    let (n, m) = (&i.source, &i.target);
    let h = hom(m, n);
    let mut sys = LinearSystem::new(n.m());
    let r = sys.block(Block::hom(&h));
    let e = sys.equation(&n.add.orders, n.rank());
    sys.term(e, r, None, Some(&i.mat), 1);
    sys.rhs(e, &ZmMatrix::identity(n.m(), n.rank()));
    Ok(sys.solve().map(|mats| AHom::from_parts(m, n, mats[0].clone())))
}

/// A section s with p∘s = id, or None.
pub fn split_epi_test(p: &AHom) -> Result<Option<AHom>> {
    if !p.is_epi() {
        return Err(Error::Invalid("map is not surjective".into()));
    }
    let (m, q) = (&p.source, &p.target);
    let h = hom(q, m);
    let mut sys = LinearSystem::new(m.m());
    let s = sys.block(Block::hom(&h));
    let e = sys.equation(&q.add.orders, q.rank());
    sys.term(e, s, Some(&p.mat), None, 1);
    sys.rhs(e, &ZmMatrix::identity(m.m(), q.rank()));
    Ok(sys.solve().map(|mats| AHom::from_parts(q, m, mats[0].clone())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::preset;
    use crate::algebra::submodule::{cokernel, kernel};

    #[test]
    fn socle_inclusions_do_not_split() {
        let a = preset("dual_numbers:2").unwrap();
        let r = AModule::regular(&a);
        let eps = AHom::new(&r, &r, a.right_mult(&a.basis_vec(1))).unwrap();
        let soc = kernel(&eps);
        assert!(split_mono_test(&soc.incl).unwrap().is_none());
        let ses = Ses::new(soc.incl.clone(), cokernel(&soc.incl).proj).unwrap();
        assert_eq!(ses.mid().size(), ses.sub().size() * ses.quot().size());

        let z = preset("zmod:4").unwrap();
        let r4 = AModule::regular(&z);
        let two = AHom::new(&r4, &r4, z.right_mult(&[2])).unwrap();
        assert!(split_mono_test(&kernel(&two).incl).unwrap().is_none());
    }

    #[test]
    fn identity_and_summand_split() {
        let a = preset("dual_numbers:2").unwrap();
        let r = AModule::regular(&a);
        let id = AHom::identity(&r);
        assert_eq!(split_mono_test(&id).unwrap().unwrap(), id);
        let z6 = preset("zmod:6").unwrap();
        let r6 = AModule::regular(&z6);
        let three = AHom::new(&r6, &r6, z6.right_mult(&[3])).unwrap();
        let k = kernel(&three);
        let ret = split_mono_test(&k.incl).unwrap().unwrap();
        assert!(ret.compose(&k.incl).is_iso());
    }

    #[test]
    fn invalid_ses_and_non_mono() {
        let a = preset("dual_numbers:2").unwrap();
        let r = AModule::regular(&a);
        let eps = AHom::new(&r, &r, a.right_mult(&a.basis_vec(1))).unwrap();
        assert!(matches!(split_mono_test(&eps), Err(Error::NotMono)));
        assert!(matches!(Ses::new(eps.clone(), eps), Err(Error::InvalidSES(_))));
    }
}
