//! Cocycles, coboundaries and cohomology.

use serde::Serialize;

use super::complex::{ChainMap, Complex};
use crate::algebra::submodule::{image_subgroup, kernel, Quot, Sub};
use crate::algebra::{AHom, AModule};
use crate::linalg::group::Subgroup;

/// Z^n ⊇ B^n and H^n = Z^n/B^n in one degree.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub degree: i64,
    pub z: Sub,
    /// B^n as a subgroup of C^n.
    pub b: Subgroup,
    /// Z^n ↠ H^n.
    pub h: Quot,
}

impl Cohomology {
    pub fn module(&self) -> &AModule {
        &self.h.module
    }

    pub fn size(&self) -> u128 {
        self.h.module.size()
    }

    pub fn is_zero(&self) -> bool {
        self.h.module.is_zero()
    }

    /// Class of a cocycle x ∈ Z^n ⊆ C^n.
    pub fn class_of(&self, x: &[u64]) -> Option<Vec<u64>> {
        let c = self.z.coords(x)?;
        Some(self.h.proj.apply(&c))
    }

    /// A cocycle in C^n representing the class y.
    pub fn representative(&self, y: &[u64]) -> Vec<u64> {
        self.z.incl.apply(&self.h.lift_vec(y))
    }

    /// B^n inside C^n as a submodule.
    pub fn boundaries(&self, c: &Complex) -> Sub {
        Sub::new(&c.module(self.degree), &self.b)
    }
}

pub fn cohomology(c: &Complex, n: i64) -> Cohomology {
    let z = kernel(&c.diff(n));
    let b = image_subgroup(&c.diff(n - 1));
    let in_z: Vec<Vec<u64>> = b.gens().iter().map(|g| z.coords(g).expect("d∘d = 0")).collect();
    let h = Quot::new(&z.module, &Subgroup::from_gens(&z.module.add, &in_z));
    Cohomology { degree: n, z, b, h }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CohomologyEntry {
    pub degree: i64,
    pub size: u128,
    pub orders: Vec<u64>,
}

/// Every degree of the window, zero entries included.
pub fn cohomology_table(c: &Complex) -> Vec<CohomologyEntry> {
    c.degrees()
        .map(|n| {
            let h = cohomology(c, n);
            CohomologyEntry { degree: n, size: h.size(), orders: h.module().add.orders.clone() }
        })
        .collect()
}

/// |Z^n| = |B^n| everywhere; cheaper than building the quotients.
pub fn is_acyclic(c: &Complex) -> bool {
    c.degrees().all(|n| {
        let d = c.diff(n);
        let prev = c.diff(n - 1);
        d.kernel_size() == prev.image_size()
    })
}

pub fn first_nonacyclic_degree(c: &Complex) -> Option<i64> {
    c.degrees().find(|&n| c.diff(n).kernel_size() != c.diff(n - 1).image_size())
}

/// H^n(f): H^n(X) → H^n(Y).
pub fn induced_on_cohomology(f: &ChainMap, n: i64) -> (Cohomology, Cohomology, AHom) {
    let hx = cohomology(&f.source, n);
    let hy = cohomology(&f.target, n);
    let fz = f.mat(n).mul(&hx.z.incl.mat).mul(&hx.h.lift);
    let cols: Vec<Vec<u64>> = (0..hx.h.module.rank())
        .map(|j| hy.class_of(&f.target.module(n).reduce_vec(fz.col_vec(j))).expect("chain maps send cocycles to cocycles"))
        .collect();
    let mat = crate::linalg::ZmMatrix::from_fn(f.source.m(), hy.h.module.rank(), cols.len(), |i, j| cols[j][i]);
    let map = AHom::from_parts(&hx.h.module, &hy.h.module, mat);
    (hx, hy, map)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::preset;
    use crate::linalg::ZmMatrix;

    /// Brute-force |H^n| straight from element enumeration.
    fn brute_h(c: &Complex, n: i64) -> u128 {
        let cn = c.module(n);
        let d = c.diff(n);
        let prev = c.diff(n - 1);
        let z = cn.elements().into_iter().filter(|x| d.apply(x).iter().all(|&v| v == 0)).count() as u128;
        let mut b: Vec<Vec<u64>> = c.module(n - 1).elements().iter().map(|x| prev.apply(x)).collect();
        b.sort();
        b.dedup();
        z / b.len() as u128
    }

    #[test]
    fn single_module() {
        let a = preset("dual_numbers:2").unwrap();
        let r = AModule::regular(&a);
        let c = Complex::single(&r, 0);
        let t = cohomology_table(&c);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].size, 4);
        assert_eq!(cohomology(&c, 3).size(), 1);
    }

    #[test]
    fn eps_window() {
        let a = preset("dual_numbers:2").unwrap();
        let r = AModule::regular(&a);
        let eps = a.right_mult(&a.basis_vec(1));
        let c = Complex::new(&a, -1, vec![r.clone(), r.clone(), r], vec![eps.clone(), eps]).unwrap();
        let sizes: Vec<u128> = cohomology_table(&c).iter().map(|e| e.size).collect();
        assert_eq!(sizes, vec![2, 1, 2]);
        for n in -1..=1 {
            assert_eq!(cohomology(&c, n).size(), brute_h(&c, n));
        }
        assert!(!is_acyclic(&c));
    }

    #[test]
    fn identity_two_term_is_acyclic() {
        let a = preset("zmod:4").unwrap();
        let r = AModule::regular(&a);
        let c = Complex::new(&a, 0, vec![r.clone(), r], vec![ZmMatrix::identity(4, 1)]).unwrap();
        assert!(is_acyclic(&c));
        assert!(cohomology_table(&c).iter().all(|e| e.size == 1));
    }

    #[test]
    fn classes_and_representatives() {
        let a = preset("zmod:4").unwrap();
        let r = AModule::regular(&a);
        let c = Complex::new(&a, 0, vec![r.clone(), r], vec![a.right_mult(&[2])]).unwrap();
        let h1 = cohomology(&c, 1);
        assert_eq!(h1.size(), 2);
        let y = h1.class_of(&[1]).unwrap();
        assert_eq!(h1.class_of(&h1.representative(&y)).unwrap(), y);
        assert_eq!(h1.class_of(&[2]).unwrap(), vec![0]);
        let id = ChainMap::identity(&c);
        let (_, _, m) = induced_on_cohomology(&id, 1);
        assert!(m.is_iso());
    }
}
