//! Injective resolutions as duals of projective resolutions over A^op.

use super::projective::{minimal_projective_resolution, Periodicity, Resolution};
use crate::algebra::duality::{dual_hom_with, dual_with};
use crate::algebra::{AHom, AModule};
use crate::complex::Complex;
use crate::error::Result;

/// D(P) for P a projective resolution of D(M) over A^op; J^i sits in degree i.
pub fn injective_resolution(md: &AModule, depth: usize) -> Result<Resolution> {
    let alg = &md.alg;
    let op = alg.opposite();
    let dm = dual_with(md, &op);
    let pres = minimal_projective_resolution(&dm, depth)?;
    let n = pres.terms();
    let j: Vec<AModule> = (0..n).map(|i| dual_with(&pres.term(i), alg)).collect();
    let diffs = (0..n.saturating_sub(1)).map(|i| dual_hom_with(&pres.d(i + 1), &j[i + 1], &j[i]).mat).collect();
    let complex = if j.is_empty() { Complex::zero(alg) } else { Complex::from_parts(alg, 0, j.clone(), diffs) };
    let ddm = dual_with(&dm, alg);
    debug_assert!(ddm == *md);
    let aug = match j.first() {
        Some(j0) => dual_hom_with(&pres.aug, j0, md),
        None => AHom::zero(md, &AModule::zero(alg)),
    };
    let syzygies = pres.syzygies.iter().map(|s| dual_with(s, alg)).collect();
    let period = pres.period.as_ref().map(|p| {
        let (ds, dt) = (dual_with(&pres.syzygies[p.s], alg), dual_with(&pres.syzygies[p.t], alg));
        // D reverses arrows, so the witness runs from the t-th cosyzygy to the s-th
        let back = dual_hom_with(&p.iso, &ds, &dt);
        Periodicity { s: p.s, t: p.t, iso: back }
    });
    let res = Resolution {
        module: md.clone(),
        complex,
        aug,
        minimal: pres.minimal,
        period,
        closed: pres.closed,
        syzygies,
        injective: true,
    };
    debug_assert!(res.check_exact().is_ok());
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::submodule::cokernel;
    use crate::algebra::{is_injective, preset, radical_quotient};

    #[test]
    fn simple_over_dual_numbers() {
        let a = preset("dual_numbers:2").unwrap();
        let k = radical_quotient(&AModule::regular(&a)).unwrap().module;
        let r = injective_resolution(&k, 4).unwrap();
        r.check_exact().unwrap();
        for i in 0..r.terms() {
            assert_eq!(r.term(i).size(), 4);
            assert!(is_injective(&r.term(i)).unwrap());
        }
        // maps are multiplication by ε: rank-one with square zero
        for n in 0..3 {
            let d = r.complex.diff(n);
            assert_eq!(d.image_size(), 2);
        }
    }

    #[test]
    fn z2_over_z4() {
        let a = preset("zmod:4").unwrap();
        let reg = AModule::regular(&a);
        let z2 = cokernel(&AHom::new(&reg, &reg, a.right_mult(&[2])).unwrap()).module;
        let r = injective_resolution(&z2, 4).unwrap();
        r.check_exact().unwrap();
        for n in 0..3 {
            assert_eq!(r.term(n as usize).add.orders, vec![4]);
            assert_eq!(r.complex.diff_mat(n).entries(), &[2]);
        }
    }

    #[test]
    fn injective_module_has_length_zero() {
        let a = preset("dual_numbers:3").unwrap();
        let r = injective_resolution(&AModule::regular(&a), 3).unwrap();
        assert_eq!(r.terms(), 1);
        assert!(r.closed);
        assert!(r.aug.is_iso());
    }
}
