//! Quasi-isomorphic replacement of complexes by complexes with terms in a subcategory.

use std::collections::BTreeMap;

use super::subcat::{checked_cocover, checked_cover, Subcategory};
use crate::algebra::submodule::{cokernel, image, image_subgroup, kernel, Quot, Sub};
use crate::algebra::{is_quasi_frobenius, solve_left, AHom, AModule};
use crate::complex::{cohomology, cone, is_quasi_iso, ChainMap, Complex};
use crate::error::{verify, Error, Result};
use crate::linalg::{Subgroup, ZmMatrix};

#[derive(Clone, Debug)]
pub struct ReplaceOptions {
    /// Build L as a subcomplex of C (sum of images instead of direct sums).
    pub subcomplex: bool,
    /// Run the covers even where the current term already lies in the subcategory.
    pub force: bool,
    pub max_steps: usize,
    /// Stop after producing this degree; the result is then only a truncated replacement.
    pub floor: Option<i64>,
    pub check_cohomology: bool,
}

impl Default for ReplaceOptions {
    fn default() -> Self {
        ReplaceOptions { subcomplex: false, force: false, max_steps: 24, floor: None, check_cohomology: true }
    }
}

#[derive(Clone, Debug)]
pub struct Replacement {
    pub complex: Complex,
    /// L → C for replace, C → L for coreplace.
    pub qi: ChainMap,
    /// In subcomplex mode: the images Lⁿ ⊆ Cⁿ.
    pub subcomplex: Option<BTreeMap<i64, Subgroup>>,
    /// False when the descent was cut off at the floor.
    pub closed: bool,
}

pub fn replace_in_subcategory(c: &Complex, u: &dyn Subcategory, n: i64) -> Result<Replacement> {
    replace_with(c, u, n, &ReplaceOptions::default())
}

fn check_inputs(c: &Complex, u: &dyn Subcategory, outside: impl Fn(i64) -> bool, cohom: bool) -> Result<()> {
    for k in c.degrees() {
        if outside(k) && !u.contains(&c.module(k)) {
            return Err(Error::Invalid(format!("term in degree {k} is not in {}", u.name())));
        }
        if cohom && !u.contains(cohomology(c, k).module()) {
            return Err(Error::Invalid(format!("cohomology in degree {k} is not in {}", u.name())));
        }
    }
    Ok(())
}

fn coordinate_maps(m: u64, a: usize, b: usize) -> (ZmMatrix, ZmMatrix, ZmMatrix, ZmMatrix) {
    let pr1 = ZmMatrix::from_fn(m, a, a + b, |i, j| u64::from(i == j));
    let pr2 = ZmMatrix::from_fn(m, b, a + b, |i, j| u64::from(j == a + i));
    (pr1.transpose(), pr2.transpose(), pr1, pr2)
}

struct Down {
    w: AModule,
    psi: AHom,
    delta: AHom,
    inc: AHom,
}

/// Degreewise descent from the top: Lⁿ = V ⊕ U' covering Hⁿ and the boundaries,
/// next term the fiber product of C^{n−1} and Lⁿ over W.
pub fn replace_with(c: &Complex, u: &dyn Subcategory, top: i64, opts: &ReplaceOptions) -> Result<Replacement> {
    let alg = &c.alg;
    let m = alg.m;
    let c = c.trimmed();
    if c.is_empty() {
        let z = Complex::zero(alg);
        return Ok(Replacement { qi: ChainMap::zero(&z, &c), complex: z, subcomplex: opts.subcomplex.then(BTreeMap::new), closed: true });
    }
    check_inputs(&c, u, |k| k > top, opts.check_cohomology)?;
    let hi = c.hi();
    let mut st = Down {
        w: c.module(hi),
        psi: AHom::identity(&c.module(hi)),
        delta: AHom::zero(&c.module(hi), &AModule::zero(alg)),
        inc: c.diff(hi - 1),
    };
    let mut mods = Vec::new();
    let mut ds: Vec<ZmMatrix> = Vec::new();
    let mut phis = Vec::new();
    let mut groups = BTreeMap::new();
    let mut n = hi;
    let closed;
    loop {
        if (hi - n) as usize >= opts.max_steps {
            return Err(Error::DepthExceeded(format!("replacement did not terminate within {} steps", opts.max_steps)));
        }
        let keep = !opts.force && u.contains(&st.w);
        let (ln, lambda) = if keep {
            (st.w.clone(), AHom::identity(&st.w))
        } else {
            let (_, co) = image(&st.delta);
            let uu = checked_cover(u, &co)?;
            let z = kernel(&st.delta);
            let zq = Quot::new(&z.module, &image_subgroup(&z.factor(&st.inc)?));
            let vv = checked_cover(u, &zq.proj)?;
            let v_in_w = z.incl.compose(&vv);
            if opts.subcomplex {
                let g = image_subgroup(&v_in_w).sum(&image_subgroup(&uu));
                let s = Sub::new(&st.w, &g);
                if !u.contains(&s.module) {
                    return Err(Error::CoverFailure(format!("sum of cover images is not in {}", u.name())));
                }
                (s.module.clone(), s.incl)
            } else {
                let ln = AModule::direct_sum(alg, &[&vv.source, &uu.source]);
                (ln.clone(), AHom::from_parts(&ln, &st.w, v_in_w.mat.hstack(&uu.mat)))
            }
        };
        let phi = st.psi.compose(&lambda);
        ds.push(st.delta.compose(&lambda).mat);
        if opts.subcomplex {
            groups.insert(n, image_subgroup(&phi));
        }
        mods.push(ln.clone());
        phis.push(phi.mat.clone());

        let below = c.module(n - 1);
        let next = if opts.subcomplex {
            // preimage of φ(Lⁿ) ⊆ Cⁿ under d
            let q = cokernel(&phi);
            let pre = kernel(&q.proj.compose(&c.diff(n - 1)));
            let delta = solve_left(&lambda, &st.inc.compose(&pre.incl))
                .ok_or_else(|| Error::Verification("boundary does not land in the chosen term".into()))?;
            Down { w: pre.module.clone(), psi: pre.incl.clone(), delta, inc: pre.factor(&c.diff(n - 2))? }
        } else if keep {
            Down { w: below.clone(), psi: AHom::identity(&below), delta: st.inc.clone(), inc: c.diff(n - 2) }
        } else {
            let sum = AModule::direct_sum(alg, &[&below, &ln]);
            let rel = AHom::from_parts(&sum, &st.w, st.inc.mat.hstack(&lambda.mat.neg()));
            let k = kernel(&rel);
            let (in1, _, pr1, pr2) = coordinate_maps(m, below.rank(), ln.rank());
            let d2 = AHom::from_parts(&c.module(n - 2), &sum, in1.mul(&c.diff_mat(n - 2)));
            Down {
                w: k.module.clone(),
                psi: AHom::from_parts(&k.module, &below, pr1.mul(&k.incl.mat)),
                delta: AHom::from_parts(&k.module, &ln, pr2.mul(&k.incl.mat)),
                inc: k.factor(&d2)?,
            }
        };
        let done = n - 1 < c.lo && next.w.is_zero();
        if done || opts.floor == Some(n) {
            closed = done;
            break;
        }
        st = next;
        n -= 1;
    }
    mods.reverse();
    phis.reverse();
    ds.reverse();
    // ds[k] is the differential out of degree n + k; the top one goes to 0
    ds.pop();
    let l = Complex::new(alg, n, mods, ds)?;
    let maps = phis.into_iter().enumerate().map(|(k, f)| (n + k as i64, f)).collect();
    let qi = ChainMap::new(&l, &c, maps)?;
    for k in l.degrees() {
        verify(u.contains(&l.module(k)), || format!("replacement term in degree {k} is not in {}", u.name()))?;
    }
    if opts.subcomplex {
        verify(qi.is_degreewise_mono(), || "subcomplex replacement is not degreewise mono".into())?;
    }
    if closed {
        verify(is_quasi_iso(&qi), || "replacement is not a quasi-isomorphism".into())?;
    } else {
        let cn = cone(&qi).complex;
        verify((n..=cn.hi().max(n)).all(|k| cohomology(&cn, k).is_zero()), || "truncated replacement fails above the floor".into())?;
    }
    Ok(Replacement { complex: l, qi, subcomplex: opts.subcomplex.then_some(groups), closed })
}

pub fn coreplace_in_subcategory(c: &Complex, u: &dyn Subcategory, n: i64) -> Result<Replacement> {
    coreplace_with(c, u, n, &ReplaceOptions::default())
}

struct Up {
    w: AModule,
    psi: AHom,
    delta: AHom,
    out: AHom,
}

/// The dual ascent: terms below `bottom` must already be in the subcategory.
pub fn coreplace_with(c: &Complex, u: &dyn Subcategory, bottom: i64, opts: &ReplaceOptions) -> Result<Replacement> {
    let alg = &c.alg;
    let m = alg.m;
    if !is_quasi_frobenius(alg)? {
        return Err(Error::NotQuasiFrobenius);
    }
    let c = c.trimmed();
    if c.is_empty() {
        let z = Complex::zero(alg);
        return Ok(Replacement { qi: ChainMap::zero(&c, &z), complex: z, subcomplex: None, closed: true });
    }
    check_inputs(&c, u, |k| k < bottom, opts.check_cohomology)?;
    let lo = c.lo;
    let mut st = Up {
        w: c.module(lo),
        psi: AHom::identity(&c.module(lo)),
        delta: AHom::zero(&AModule::zero(alg), &c.module(lo)),
        out: c.diff(lo),
    };
    let mut mods = Vec::new();
    let mut ds = Vec::new();
    let mut phis = Vec::new();
    let mut n = lo;
    loop {
        if (n - lo) as usize >= opts.max_steps {
            return Err(Error::DepthExceeded(format!("coreplacement did not terminate within {} steps", opts.max_steps)));
        }
        let keep = !opts.force && u.contains(&st.w);
        let (ln, lambda) = if keep {
            (st.w.clone(), AHom::identity(&st.w))
        } else {
            let (im, _) = image(&st.delta);
            let q1 = checked_cocover(u, &im.incl)?;
            let k = cokernel(&st.delta);
            let h = kernel(&k.descend(&st.out)?);
            let q2 = checked_cocover(u, &h.incl)?;
            let ln = AModule::direct_sum(alg, &[&q1.target, &q2.target]);
            let lam = AHom::from_parts(&st.w, &ln, q1.mat.vstack(&q2.compose(&k.proj).mat));
            (ln, lam)
        };
        ds.push(lambda.compose(&st.delta).mat);
        phis.push(lambda.compose(&st.psi).mat);
        mods.push(ln.clone());
        let above = c.module(n + 1);
        let next = if keep {
            Up { w: above.clone(), psi: AHom::identity(&above), delta: st.out.clone(), out: c.diff(n + 1) }
        } else {
            let sum = AModule::direct_sum(alg, &[&above, &ln]);
            let rel = AHom::from_parts(&st.w, &sum, st.out.mat.vstack(&lambda.mat.neg()));
            let q = cokernel(&rel);
            let (in1, in2, _, _) = coordinate_maps(m, above.rank(), ln.rank());
            let zero = ZmMatrix::zeros(m, c.rank(n + 2), ln.rank());
            let d_sum = AHom::from_parts(&sum, &c.module(n + 2), c.diff_mat(n + 1).hstack(&zero));
            Up {
                w: q.module.clone(),
                psi: AHom::from_parts(&above, &q.module, q.proj.mat.mul(&in1)),
                delta: AHom::from_parts(&ln, &q.module, q.proj.mat.mul(&in2)),
                out: q.descend(&d_sum)?,
            }
        };
        if n + 1 > c.hi() && next.w.is_zero() {
            break;
        }
        st = next;
        n += 1;
    }
    // ds[0] is the map from L^{lo−1} = 0
    ds.remove(0);
    let l = Complex::new(alg, lo, mods, ds)?;
    let maps = phis.into_iter().enumerate().map(|(k, f)| (lo + k as i64, f)).collect();
    let qi = ChainMap::new(&c, &l, maps)?;
    for k in l.degrees() {
        verify(u.contains(&l.module(k)), || format!("coreplacement term in degree {k} is not in {}", u.name()))?;
    }
    verify(is_quasi_iso(&qi), || "coreplacement is not a quasi-isomorphism".into())?;
    Ok(Replacement { complex: l, qi, subcomplex: None, closed: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::preset;
    use crate::derived::subcat::{ELocal, Everything, Zero};

    fn times(a: &crate::algebra::Alg, x: u64) -> AHom {
        let r = AModule::regular(a);
        AHom::new(&r, &r, a.right_mult(&[x])).unwrap()
    }

    #[test]
    fn everything_is_identity() {
        let a = preset("zmod:4").unwrap();
        let c = Complex::from_homs(0, &[times(&a, 2)]).unwrap();
        let r = replace_in_subcategory(&c, &Everything, 1).unwrap();
        assert_eq!(r.complex, c);
        let r = coreplace_in_subcategory(&c, &Everything, 0).unwrap();
        assert_eq!(r.complex, c);
    }

    #[test]
    fn z6_elocal() {
        let a = preset("zmod:6").unwrap();
        let c = Complex::from_homs(0, &[times(&a, 4)]).unwrap();
        let u = ELocal::new(&a, &[3]).unwrap();
        let r = replace_in_subcategory(&c, &u, 1).unwrap();
        assert!(r.complex.degrees().all(|k| u.contains(&r.complex.module(k))));
        assert!(r.complex.degrees().any(|k| !r.complex.module(k).is_zero()));
        // the cohomology is 2-torsion, so e = 4 does not fit
        let bad = ELocal::new(&a, &[4]).unwrap();
        assert!(matches!(replace_in_subcategory(&c, &bad, 1), Err(Error::Invalid(_))));
        let opts = ReplaceOptions { subcomplex: true, ..Default::default() };
        let s = replace_with(&c, &u, 1, &opts).unwrap();
        assert!(s.qi.is_degreewise_mono());
        assert_eq!(s.complex.total_size(), 4);
    }

    #[test]
    fn acyclic_into_zero() {
        let a = preset("zmod:4").unwrap();
        let id = AHom::identity(&AModule::regular(&a));
        let c = Complex::from_homs(0, &[id]).unwrap();
        let r = replace_in_subcategory(&c, &Zero, 1).unwrap();
        assert!(r.complex.trimmed().is_empty());
    }

    #[test]
    fn forced_descent_over_z4() {
        let a = preset("zmod:4").unwrap();
        let c = Complex::from_homs(-1, &[times(&a, 2), times(&a, 2)]).unwrap();
        let opts = ReplaceOptions { force: true, ..Default::default() };
        let r = replace_with(&c, &Everything, 0, &opts).unwrap();
        assert!(is_quasi_iso(&r.qi));
        let r = coreplace_with(&c, &Everything, 0, &opts).unwrap();
        assert!(is_quasi_iso(&r.qi));
        assert_eq!(cohomology(&r.complex, 0).size(), 1);
    }

    #[test]
    fn coreplace_needs_qf() {
        let a = preset("path_algebra:1->2").unwrap();
        let c = Complex::single(&AModule::regular(&a), 0);
        assert_eq!(coreplace_in_subcategory(&c, &Everything, 0).unwrap_err(), Error::NotQuasiFrobenius);
    }
}
