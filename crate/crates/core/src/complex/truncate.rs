//! Intelligent truncations.

use std::collections::BTreeMap;

use super::complex::{ChainMap, Complex};
use crate::algebra::submodule::{image_subgroup, kernel, Quot};
use crate::linalg::ZmMatrix;

#[derive(Clone, Debug)]
pub struct Truncation {
    pub complex: Complex,
    /// τ≤n C → C, or C → τ≥n C.
    pub map: ChainMap,
}

/// ⋯ → C^{n−1} → Z^n → 0.
pub fn truncate_le(c: &Complex, n: i64) -> Truncation {
    let alg = &c.alg;
    if c.mods.is_empty() || n < c.lo {
        let z = Complex::zero(alg);
        return Truncation { map: ChainMap::zero(&z, c), complex: z };
    }
    let top = n.min(c.hi());
    if top < n {
        return Truncation { complex: c.clone(), map: ChainMap::identity(c) };
    }
    let z = kernel(&c.diff(n));
    let mut mods: Vec<_> = (c.lo..n).map(|k| c.module(k)).collect();
    mods.push(z.module.clone());
    let mut diffs: Vec<_> = (c.lo..n - 1).map(|k| c.diff_mat(k)).collect();
    if n > c.lo {
        diffs.push(z.factor_matrix(&c.diff_mat(n - 1)).expect("image of d lies in the cocycles"));
    }
    let t = Complex::from_parts(alg, c.lo, mods, diffs);
    let mut maps: BTreeMap<i64, ZmMatrix> = (c.lo..n).map(|k| (k, ZmMatrix::identity(c.m(), c.rank(k)))).collect();
    maps.insert(n, z.incl.mat.clone());
    Truncation { map: ChainMap::from_parts(&t, c, maps), complex: t }
}

/// 0 → C^n/B^n → C^{n+1} → ⋯.
pub fn truncate_ge(c: &Complex, n: i64) -> Truncation {
    let alg = &c.alg;
    if c.mods.is_empty() || n > c.hi() {
        let z = Complex::zero(alg);
        return Truncation { map: ChainMap::zero(c, &z), complex: z };
    }
    if n < c.lo {
        return Truncation { complex: c.clone(), map: ChainMap::identity(c) };
    }
    let q = Quot::new(&c.module(n), &image_subgroup(&c.diff(n - 1)));
    let mut mods = vec![q.module.clone()];
    mods.extend((n + 1..=c.hi()).map(|k| c.module(k)));
    let mut diffs = Vec::new();
    if n < c.hi() {
        diffs.push(q.descend(&c.diff(n)).expect("d vanishes on coboundaries").mat);
        diffs.extend((n + 1..c.hi()).map(|k| c.diff_mat(k)));
    }
    let t = Complex::from_parts(alg, n, mods, diffs);
    let mut maps: BTreeMap<i64, ZmMatrix> = (n + 1..=c.hi()).map(|k| (k, ZmMatrix::identity(c.m(), c.rank(k)))).collect();
    maps.insert(n, q.proj.mat.clone());
    Truncation { map: ChainMap::from_parts(c, &t, maps), complex: t }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{preset, AModule};
    use crate::complex::cohomology::{cohomology, cohomology_table};
    use crate::complex::homotopy::is_quasi_iso;

    fn eps_complex(lo: i64, len: usize) -> Complex {
        let a = preset("dual_numbers:2").unwrap();
        let r = AModule::regular(&a);
        let eps = a.right_mult(&a.basis_vec(1));
        Complex::new(&a, lo, vec![r; len], vec![eps; len - 1]).unwrap()
    }

    #[test]
    fn cohomology_preserved() {
        let c = eps_complex(-2, 5);
        for n in -3..=3 {
            let le = truncate_le(&c, n);
            let ge = truncate_ge(&c, n);
            for k in -3..=3 {
                let h = cohomology(&c, k).size();
                assert_eq!(cohomology(&le.complex, k).size(), if k <= n { h } else { 1 }, "le {n} {k}");
                assert_eq!(cohomology(&ge.complex, k).size(), if k >= n { h } else { 1 }, "ge {n} {k}");
            }
            le.map.check_commutes().unwrap();
            ge.map.check_commutes().unwrap();
        }
    }

    #[test]
    fn trivial_cases() {
        let a = preset("dual_numbers:2").unwrap();
        let r = AModule::regular(&a);
        let c = Complex::single(&r, 1);
        assert!(truncate_le(&c, 0).complex.is_empty());
        let top = truncate_le(&c, 1);
        assert_eq!(top.complex, c);
        let c = eps_complex(0, 3);
        let ge = truncate_ge(&c, 1);
        assert_eq!(ge.complex.lo, 1);
        assert_eq!(ge.complex.module(1).size(), 2);
        let sizes: Vec<u128> = cohomology_table(&ge.complex).iter().map(|e| e.size).collect();
        assert_eq!(sizes, vec![1, 2]);
    }

    #[test]
    fn truncation_maps_are_quasi_isos_in_range() {
        // C concentrated in cohomological degrees ≤ 0 after τ≤0, so τ≤0 C → C is a qi iff H^{>0} = 0
        let a = preset("zmod:4").unwrap();
        let r = AModule::regular(&a);
        let c = Complex::new(&a, 0, vec![r.clone(), r], vec![ZmMatrix::identity(4, 1)]).unwrap();
        assert!(is_quasi_iso(&truncate_le(&c, 0).map));
        assert!(is_quasi_iso(&truncate_ge(&c, 1).map));
    }
}
