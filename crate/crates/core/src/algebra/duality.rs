//! D(M) = Hom_ℤ(M, ℤ/m) as a module over the opposite algebra.

use super::finalg::Alg;
use super::module::{AHom, AModule};
use crate::linalg::arith::mulmod;
use crate::linalg::group::AdditivePresentation;
use crate::linalg::ZmMatrix;

/// Transpose of a morphism matrix in dual coordinates, where the i-th dual
/// basis functional of ⊕ ℤ/dᵢ is x ↦ (m/dᵢ)·xᵢ.
pub fn dual_matrix(source: &AdditivePresentation, target: &AdditivePresentation, mat: &ZmMatrix) -> ZmMatrix {
    let m = source.m;
    // result: D(target) → D(source), rows indexed by source coordinates
    ZmMatrix::from_fn(m, source.rank(), target.rank(), |i, j| {
        let v = mulmod(m / target.orders[j], mat.get(j, i), m);
        (v / (m / source.orders[i])) % source.orders[i]
    })
}

pub fn dual_with(md: &AModule, op: &Alg) -> AModule {
    let action = md.action.iter().map(|rho| dual_matrix(&md.add, &md.add, rho)).collect();
    AModule::from_parts(op, md.add.clone(), action)
}

/// D(M) over A^op. D(D(M)) = M on the nose.
pub fn dual(md: &AModule) -> AModule {
    dual_with(md, &md.alg.opposite())
}

/// D(f): D(N) → D(M), φ ↦ φ∘f, with the dual modules supplied.
pub fn dual_hom_with(f: &AHom, dsource: &AModule, dtarget: &AModule) -> AHom {
    AHom::from_parts(dtarget, dsource, dual_matrix(&f.source.add, &f.target.add, &f.mat))
}

pub fn dual_hom(f: &AHom) -> AHom {
    let op = f.source.alg.opposite();
    dual_hom_with(f, &dual_with(&f.source, &op), &dual_with(&f.target, &op))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::iso::is_isomorphic;
    use crate::algebra::presets::preset;
    use crate::algebra::submodule::{cokernel, kernel};

    #[test]
    fn double_dual_is_identity() {
        for p in ["dual_numbers:2", "zmod:4", "upper_triangular:2:2", "product:dual_numbers:2,zmod:4", "path_algebra:1->2,2->3"] {
            let a = preset(p).unwrap();
            let r = AModule::regular(&a);
            let d = dual(&r);
            d.validate().unwrap();
            let dd = dual(&d);
            assert_eq!(dd, r, "{p}");
        }
    }

    #[test]
    fn self_dual_examples() {
        let a = preset("dual_numbers:2").unwrap();
        let r = AModule::regular(&a);
        let d = dual(&r);
        // A commutative, so A^op = A
        let d_as_a = AModule::new(&a, d.add.orders.clone(), d.action.clone()).unwrap();
        assert!(is_isomorphic(&d_as_a, &r).unwrap().is_some());

        let z4 = preset("zmod:4").unwrap();
        let r4 = AModule::regular(&z4);
        let two = AHom::new(&r4, &r4, z4.right_mult(&[2])).unwrap();
        let z2 = cokernel(&two).module;
        assert_eq!(dual(&z2).size(), 2);
    }

    #[test]
    fn dual_reverses_exactness() {
        // 0 → εA → A → k → 0 dualizes to an exact sequence
        let a = preset("trunc_poly:3:3").unwrap();
        let r = AModule::regular(&a);
        let x = AHom::new(&r, &r, a.right_mult(&a.basis_vec(1))).unwrap();
        let k = kernel(&x);
        let di = dual_hom(&k.incl);
        assert!(di.is_epi());
        assert!(dual_hom(&x).compose(&dual_hom(&AHom::identity(&r))).is_linear());
        assert_eq!(di.kernel_size() * k.module.size(), r.size());
    }
}
