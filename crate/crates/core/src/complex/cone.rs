//! Mapping cones, short exact sequences of complexes and totalization.

use std::collections::BTreeMap;

use super::cohomology::{cohomology, is_acyclic};
use super::complex::{joint_window, signed, ChainMap, Complex};
use crate::algebra::{AModule, Ses};
use crate::error::{Error, Result};
use crate::linalg::arith::factor;
use crate::linalg::ZmMatrix;

/// 0 → K → L → M → 0, exact in every degree.
#[derive(Clone, Debug)]
pub struct ComplexSes {
    pub i: ChainMap,
    pub p: ChainMap,
}

impl ComplexSes {
    pub fn new(i: &ChainMap, p: &ChainMap) -> Result<ComplexSes> {
        if i.target != p.source {
            return Err(Error::InvalidSES("middle complexes differ".into()));
        }
        i.check_commutes().map_err(|e| Error::InvalidSES(e.to_string()))?;
        p.check_commutes().map_err(|e| Error::InvalidSES(e.to_string()))?;
        let (a, b) = joint_window(&i.source, &p.target);
        let (a2, b2) = joint_window(&i.target, &i.target);
        for n in a.min(a2)..=b.max(b2) {
            Ses::new(i.component(n), p.component(n)).map_err(|e| match e {
                Error::InvalidSES(msg) => Error::InvalidSES(format!("degree {n}: {msg}")),
                e => e,
            })?;
        }
        Ok(ComplexSes { i: i.clone(), p: p.clone() })
    }

    pub fn sub(&self) -> &Complex {
        &self.i.source
    }

    pub fn mid(&self) -> &Complex {
        &self.i.target
    }

    pub fn quot(&self) -> &Complex {
        &self.p.target
    }

    /// Smallest window containing all three complexes.
    pub fn window(&self) -> (i64, i64) {
        let (a, b) = joint_window(self.sub(), self.quot());
        let (c, d) = joint_window(self.mid(), self.mid());
        (a.min(c), b.max(d))
    }
}

#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: Complex,
    /// 0 → target → Cone(f) → Σ source → 0.
    pub ses: ComplexSes,
}

/// Cone(f)^n = X^{n+1} ⊕ Y^n with differential [[−d_X, 0], [f, d_Y]].
pub fn cone(f: &ChainMap) -> Cone {
    let (x, y) = (&f.source, &f.target);
    let alg = &x.alg;
    let m = x.m();
    let (a, b) = joint_window(x, y);
    let (lo, hi) = (a - 1, b);
    let mods: Vec<AModule> = (lo..=hi).map(|n| AModule::direct_sum(alg, &[&x.module(n + 1), &y.module(n)])).collect();
    let diffs = (lo..hi)
        .map(|n| {
            let rows = [x.rank(n + 2), y.rank(n + 1)];
            let cols = [x.rank(n + 1), y.rank(n)];
            let mdx = x.diff_mat(n + 1).neg();
            let fn1 = f.mat(n + 1);
            let dy = y.diff_mat(n);
            ZmMatrix::from_blocks(m, &rows, &cols, &[vec![Some(&mdx), None], vec![Some(&fn1), Some(&dy)]])
                .reduced_rows(&mods[(n + 1 - lo) as usize].add.orders)
        })
        .collect();
    let c = Complex::from_parts(alg, lo, mods, diffs);
    let sx = x.shift(1);
    let incl = ChainMap::from_fn(y, &c, |n| {
        ZmMatrix::from_fn(m, c.rank(n), y.rank(n), |i, j| u64::from(i == x.rank(n + 1) + j))
    });
    let proj = ChainMap::from_fn(&c, &sx, |n| ZmMatrix::from_fn(m, x.rank(n + 1), c.rank(n), |i, j| u64::from(i == j)));
    let ses = ComplexSes { i: incl, p: proj };
    debug_assert!(ComplexSes::new(&ses.i, &ses.p).is_ok());
    Cone { complex: c, ses }
}

/// Tot^n = K^{n+1} ⊕ L^n ⊕ M^{n−1}, with
/// D(k) = d_K k + (−1)^{n+1} i(k), D(l) = d_L l + (−1)^n p(l), D(m) = d_M m.
pub fn tot_ses(e: &ComplexSes) -> Result<Complex> {
    let (k, l, mm) = (e.sub(), e.mid(), e.quot());
    let alg = &l.alg;
    let m = l.m();
    let (a, b) = e.window();
    let (lo, hi) = (a - 1, b + 1);
    let mods: Vec<AModule> = (lo..=hi).map(|n| AModule::direct_sum(alg, &[&k.module(n + 1), &l.module(n), &mm.module(n - 1)])).collect();
    let diffs = (lo..hi)
        .map(|n| {
            let rows = [k.rank(n + 2), l.rank(n + 1), mm.rank(n)];
            let cols = [k.rank(n + 1), l.rank(n), mm.rank(n - 1)];
            let dk = k.diff_mat(n + 1);
            let si = e.i.mat(n + 1).scale(signed(n + 1, m));
            let dl = l.diff_mat(n);
            let sp = e.p.mat(n).scale(signed(n, m));
            let dm = mm.diff_mat(n - 1);
            ZmMatrix::from_blocks(
                m,
                &rows,
                &cols,
                &[vec![Some(&dk), None, None], vec![Some(&si), Some(&dl), None], vec![None, Some(&sp), Some(&dm)]],
            )
            .reduced_rows(&mods[(n + 1 - lo) as usize].add.orders)
        })
        .collect();
    let t = Complex::new(alg, lo, mods, diffs)?;
    if let Some(n) = super::cohomology::first_nonacyclic_degree(&t) {
        return Err(Error::Verification(format!("total complex has cohomology in degree {n}")));
    }
    Ok(t)
}

/// The direct sum inclusion/projection pair X → X ⊕ Y → X as chain maps.
pub fn sum_inclusions(x: &Complex, y: &Complex) -> (Complex, ChainMap, ChainMap, ChainMap, ChainMap) {
    let s = x.direct_sum(y);
    let m = x.m();
    let ix = ChainMap::from_fn(x, &s, |n| ZmMatrix::from_fn(m, s.rank(n), x.rank(n), |i, j| u64::from(i == j)));
    let iy = ChainMap::from_fn(y, &s, |n| ZmMatrix::from_fn(m, s.rank(n), y.rank(n), |i, j| u64::from(i == x.rank(n) + j)));
    let px = ChainMap::from_fn(&s, x, |n| ZmMatrix::from_fn(m, x.rank(n), s.rank(n), |i, j| u64::from(i == j)));
    let py = ChainMap::from_fn(&s, y, |n| ZmMatrix::from_fn(m, y.rank(n), s.rank(n), |i, j| u64::from(j == x.rank(n) + i)));
    (s, ix, iy, px, py)
}

/// Alternating product of the cohomology orders along the long exact
/// sequence ⋯ → H^n K → H^n L → H^n M → H^{n+1} K → ⋯, as prime exponents.
/// Exactness forces every exponent to vanish.
pub fn les_defect(e: &ComplexSes) -> BTreeMap<u64, i64> {
    let (a, b) = e.window();
    let mut exps: BTreeMap<u64, i64> = BTreeMap::new();
    let mut sign = 1i64;
    for n in a..=b {
        for c in [e.sub(), e.mid(), e.quot()] {
            for (p, k) in size_exponents(cohomology(c, n).size(), e.mid().m()) {
                *exps.entry(p).or_default() += sign * k as i64;
            }
            sign = -sign;
        }
    }
    exps.retain(|_, v| *v != 0);
    exps
}

pub fn les_holds(e: &ComplexSes) -> bool {
    les_defect(e).is_empty()
}

fn size_exponents(mut size: u128, m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    for (p, _) in factor(m) {
        let mut k = 0;
        while size % p as u128 == 0 {
            size /= p as u128;
            k += 1;
        }
        out.push((p, k));
    }
    debug_assert_eq!(size, 1);
    out
}

pub fn cone_is_acyclic(f: &ChainMap) -> bool {
    is_acyclic(&cone(f).complex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{preset, AHom};
    use crate::complex::cohomology::cohomology_table;
    use crate::complex::homotopy::is_contractible;

    fn eps_complex(lo: i64, len: usize) -> Complex {
        let a = preset("dual_numbers:2").unwrap();
        let r = AModule::regular(&a);
        let eps = a.right_mult(&a.basis_vec(1));
        Complex::new(&a, lo, vec![r; len], vec![eps; len - 1]).unwrap()
    }

    #[test]
    fn cone_of_identity_is_contractible() {
        let c = eps_complex(0, 3);
        let k = cone(&ChainMap::identity(&c));
        assert!(is_acyclic(&k.complex));
        assert!(is_contractible(&k.complex).is_some());
        assert!(les_holds(&k.ses));
    }

    #[test]
    fn cone_of_zero_is_shift_plus_target() {
        let c = eps_complex(0, 2);
        let d = eps_complex(0, 3);
        let k = cone(&ChainMap::zero(&c, &d));
        let sum = c.shift(1).direct_sum(&d);
        for n in -1..=2 {
            assert_eq!(k.complex.module(n), sum.module(n));
            assert_eq!(k.complex.diff_mat(n), sum.diff_mat(n));
        }
    }

    #[test]
    fn cone_of_eps_in_degree_zero() {
        let a = preset("dual_numbers:2").unwrap();
        let r = AModule::regular(&a);
        let x = Complex::single(&r, 0);
        let eps = a.right_mult(&a.basis_vec(1));
        let f = ChainMap::new(&x, &x, [(0, eps)].into_iter().collect()).unwrap();
        let k = cone(&f);
        // Cone = (A -ε→ A) in degrees −1, 0; oracle: ker ε = im ε = {0, ε}
        let t: Vec<(i64, u128)> = cohomology_table(&k.complex).iter().map(|e| (e.degree, e.size)).collect();
        assert_eq!(t, vec![(-1, 2), (0, 2)]);
        assert!(les_holds(&k.ses));
    }

    #[test]
    fn tot_of_socle_sequence() {
        let a = preset("dual_numbers:2").unwrap();
        let r = AModule::regular(&a);
        let eps = a.right_mult(&a.basis_vec(1));
        let i0 = AHom::new(&AModule::regular(&a), &r, eps).unwrap();
        let ker = crate::algebra::kernel(&i0);
        let coker = crate::algebra::cokernel(&ker.incl);
        let (kc, lc, mc) = (Complex::single(&ker.module, 0), Complex::single(&r, 0), Complex::single(&coker.module, 0));
        let i = ChainMap::new(&kc, &lc, [(0, ker.incl.mat.clone())].into_iter().collect()).unwrap();
        let p = ChainMap::new(&lc, &mc, [(0, coker.proj.mat.clone())].into_iter().collect()).unwrap();
        let e = ComplexSes::new(&i, &p).unwrap();
        let t = tot_ses(&e).unwrap();
        let sizes: Vec<u128> = t.mods.iter().map(|m| m.size()).collect();
        assert_eq!(t.lo, -1);
        assert_eq!(sizes, vec![2, 4, 2]);
        assert!(is_acyclic(&t));
        assert!(les_holds(&e));
    }

    #[test]
    fn invalid_ses_rejected() {
        let c = eps_complex(0, 2);
        let id = ChainMap::identity(&c);
        assert!(matches!(ComplexSes::new(&id, &id), Err(Error::InvalidSES(_))));
    }
}
