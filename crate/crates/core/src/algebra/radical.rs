//! rad(M) = rad(A)·M and radical quotients.

use super::module::{AHom, AModule};
use super::submodule::{close_under_action, Quot, Sub};
use crate::error::Result;
use crate::linalg::group::Subgroup;

pub fn radical_subgroup(md: &AModule) -> Result<Subgroup> {
    let rad = md.alg.radical()?;
    let mut gens = Vec::new();
    for r in rad.gens() {
        let act = md.act_matrix(&r);
        for j in 0..md.rank() {
            gens.push(md.reduce_vec(act.col_vec(j)));
        }
    }
    Ok(close_under_action(md, Subgroup::from_gens(&md.add, &gens)))
}

pub fn radical(md: &AModule) -> Result<Sub> {
    Ok(Sub::new(md, &radical_subgroup(md)?))
}

pub fn radical_quotient(md: &AModule) -> Result<Quot> {
    Ok(Quot::new(md, &radical_subgroup(md)?))
}

/// f̄ with f̄∘proj_source = proj_target∘f.
pub fn induced_on_radical_quotient(f: &AHom) -> Result<AHom> {
    let qs = radical_quotient(&f.source)?;
    let qt = radical_quotient(&f.target)?;
    qs.descend(&qt.proj.compose(f))
}

/// Same as `induced_on_radical_quotient` with the quotients supplied.
pub fn induced_between(f: &AHom, qs: &Quot, qt: &Quot) -> Result<AHom> {
    qs.descend(&qt.proj.compose(f))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::preset;

    #[test]
    fn radical_of_regular_modules() {
        let a = preset("dual_numbers:2").unwrap();
        let r = AModule::regular(&a);
        let rad = radical(&r).unwrap();
        assert_eq!(rad.group.elements(), vec![vec![0, 0], vec![0, 1]]);
        assert_eq!(radical_quotient(&r).unwrap().module.size(), 2);

        let z4 = preset("zmod:4").unwrap();
        let q = radical_quotient(&AModule::regular(&z4)).unwrap();
        assert_eq!(q.module.add.orders, vec![2]);

        let ss = preset("product:zmod:2,zmod:2").unwrap();
        assert!(radical(&AModule::regular(&ss)).unwrap().group.is_zero());
    }

    #[test]
    fn induced_map_commutes() {
        let a = preset("trunc_poly:2:3").unwrap();
        let r = AModule::regular(&a);
        let x = AHom::new(&r, &r, a.right_mult(&a.basis_vec(1))).unwrap();
        let fbar = induced_on_radical_quotient(&x).unwrap();
        assert!(fbar.is_zero());
        let id = induced_on_radical_quotient(&AHom::identity(&r)).unwrap();
        assert!(id.is_iso());
    }
}
