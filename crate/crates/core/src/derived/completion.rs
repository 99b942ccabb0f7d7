//! Enlarging a subcomplex with terms in a subcategory to a certified one:
//! inside a totalization, and inside a cone of two completable complexes.

use std::collections::BTreeMap;

use super::certificate::Certificate;
use super::subcat::{checked_cover, Subcategory};
use crate::algebra::submodule::{image_subgroup, kernel, Quot, Sub};
use crate::complex::sub::{is_subcomplex, subcomplex_ses};
use crate::complex::{cone, tot_ses, ChainMap, Complex, ComplexSes};
use crate::error::{verify, Error, Result};
use crate::linalg::{Subgroup, ZmMatrix};

pub type Groups = BTreeMap<i64, Subgroup>;

#[derive(Clone, Debug)]
pub struct Completion {
    /// The completed subcomplex G, certified inside the subcategory.
    pub complex: Complex,
    pub incl: ChainMap,
    /// Images of Gⁿ in the ambient complex.
    pub groups: Groups,
    pub cert: Certificate,
}

/// Something with a strong completion procedure for its subcomplexes.
pub trait Completer {
    fn ambient(&self) -> Complex;
    fn complete(&self, d: &Groups, u: &dyn Subcategory) -> Result<Completion>;
}

fn get(groups: &Groups, c: &Complex, n: i64) -> Subgroup {
    groups.get(&n).cloned().unwrap_or_else(|| Subgroup::zero(&c.module(n).add))
}

fn check_input(c: &Complex, d: &Groups, u: &dyn Subcategory) -> Result<()> {
    if !is_subcomplex(c, d) {
        return Err(Error::Invalid("D is not a subcomplex".into()));
    }
    for (&n, g) in d {
        if !u.contains(&Sub::new(&c.module(n), g).module) {
            return Err(Error::Invalid(format!("D in degree {n} is not in {}", u.name())));
        }
    }
    Ok(())
}

/// Coordinates [a, a + len) of every generator.
fn project(g: &Subgroup, target: &crate::linalg::AdditivePresentation, a: usize, len: usize) -> Subgroup {
    let gens: Vec<Vec<u64>> = g.gens().iter().map(|v| v[a..a + len].to_vec()).collect();
    Subgroup::from_gens(target, &gens)
}

fn apply(f: &crate::algebra::AHom, g: &Subgroup) -> Subgroup {
    let gens: Vec<Vec<u64>> = g.gens().iter().map(|x| f.apply(x)).collect();
    Subgroup::from_gens(&f.target.add, &gens)
}

/// Inclusion matrices of a subcomplex, as a chain map from its own presentation.
fn sub_complex(c: &Complex, groups: &Groups) -> Result<ChainMap> {
    Ok(subcomplex_ses(c, groups)?.i)
}

fn contains_all(sum: &Groups, d: &Groups) -> bool {
    d.iter().all(|(n, g)| sum.get(n).is_some_and(|s| s.contains_subgroup(g)) || g.is_zero())
}

pub fn complete_subcomplex_tot(e: &ComplexSes, d: &Groups, u: &dyn Subcategory) -> Result<Completion> {
    let t = tot_ses(e)?;
    check_input(&t, d, u)?;
    let (k, l, mm) = (e.sub(), e.mid(), e.quot());
    let (lo, hi) = (t.lo, t.hi());
    // projections of D onto the three blocks, indexed in the degrees of K, L, M
    let mut dk: Groups = BTreeMap::new();
    let mut dl: Groups = BTreeMap::new();
    let mut dm: Groups = BTreeMap::new();
    for n in lo..=hi {
        let g = get(d, &t, n);
        let (a, b, c) = (k.rank(n + 1), l.rank(n), mm.rank(n - 1));
        dk.insert(n + 1, project(&g, &k.module(n + 1).add, 0, a));
        dl.insert(n, project(&g, &l.module(n).add, a, b));
        dm.insert(n - 1, project(&g, &mm.module(n - 1).add, a + b, c));
    }
    let (llo, lhi) = (l.lo.min(k.lo).min(mm.lo), l.hi().max(k.hi()).max(mm.hi()));
    let mut q: Groups = BTreeMap::new();
    for n in llo..=lhi {
        let ln = l.module(n);
        let dmn = get(&dm, mm, n);
        let gn = if dmn.is_zero() {
            Subgroup::zero(&ln.add)
        } else {
            // cover p: p⁻¹(D_M) ↠ D_M
            let p = e.p.component(n);
            let quo = Quot::new(&mm.module(n), &dmn);
            let pre = kernel(&quo.proj.compose(&p));
            let target = Sub::new(&mm.module(n), &dmn);
            let a = target.factor(&p.compose(&pre.incl))?;
            let v = checked_cover(u, &a)?;
            image_subgroup(&pre.incl.compose(&v))
        };
        let hn = apply(&e.i.component(n), &get(&dk, k, n));
        q.insert(n, hn.sum(&get(&dl, l, n)).sum(&gn));
    }
    let mut v: Groups = BTreeMap::new();
    for n in llo..=lhi {
        let prev = apply(&l.diff(n - 1), &get(&q, l, n - 1));
        v.insert(n, get(&q, l, n).sum(&prev));
    }
    let mut ug: Groups = BTreeMap::new();
    let mut wg: Groups = BTreeMap::new();
    for n in llo..=lhi {
        let vn = get(&v, l, n);
        // i⁻¹(V): kernel of K → L/V
        let lq = Quot::new(&l.module(n), &vn);
        ug.insert(n, kernel(&lq.proj.compose(&e.i.component(n))).group.clone());
        wg.insert(n, apply(&e.p.component(n), &vn));
    }
    let (iu, iv, iw) = (sub_complex(k, &ug)?, sub_complex(l, &v)?, sub_complex(mm, &wg)?);
    let factor = |inner: &ChainMap, outer: &ChainMap, f: &ChainMap| -> Result<ChainMap> {
        let (src, dst) = (&inner.source, &outer.source);
        let mut maps = BTreeMap::new();
        for n in src.degrees() {
            let x = crate::algebra::solve_left(&outer.component(n), &f.component(n).compose(&inner.component(n)))
                .ok_or_else(|| Error::Verification("sub-SES map does not factor".into()))?;
            maps.insert(n, x.mat);
        }
        ChainMap::new(src, dst, maps)
    };
    let i2 = factor(&iu, &iv, &e.i)?;
    let p2 = factor(&iv, &iw, &e.p)?;
    let e2 = ComplexSes::new(&i2, &p2)?;
    let t2 = tot_ses(&e2)?;
    let m = t.m();
    let incl = ChainMap::new(
        &t2,
        &t,
        t2.degrees()
            .map(|n| {
                let blocks = [iu.mat(n + 1), iv.mat(n), iw.mat(n - 1)];
                (n, ZmMatrix::block_diag(m, &[&blocks[0], &blocks[1], &blocks[2]]))
            })
            .collect(),
    )?;
    let groups: Groups = t2.degrees().map(|n| (n, image_subgroup(&incl.component(n)))).collect();
    verify(contains_all(&groups, d), || "completion does not contain D".into())?;
    for c in [&iu.source, &iv.source, &iw.source] {
        for n in c.degrees() {
            verify(u.contains(&c.module(n)), || format!("completed term in degree {n} is not in {}", u.name()))?;
        }
    }
    Ok(Completion { complex: t2, incl, groups, cert: Certificate::Tot { ses: e2 } })
}

pub struct TotCompleter(pub ComplexSes);

impl Completer for TotCompleter {
    fn ambient(&self) -> Complex {
        tot_ses(&self.0).expect("validated SES")
    }
    fn complete(&self, d: &Groups, u: &dyn Subcategory) -> Result<Completion> {
        complete_subcomplex_tot(&self.0, d, u)
    }
}

pub fn complete_subcomplex_cone(
    t: &ChainMap,
    ca: &dyn Completer,
    cb: &dyn Completer,
    d: &Groups,
    u: &dyn Subcategory,
) -> Result<Completion> {
    let (a, b) = (&t.source, &t.target);
    if ca.ambient() != *a || cb.ambient() != *b {
        return Err(Error::Invalid("completers do not match the map".into()));
    }
    let c = cone(t).complex;
    check_input(&c, d, u)?;
    let (lo, hi) = (c.lo, c.hi());
    let mut da: Groups = BTreeMap::new();
    let mut db: Groups = BTreeMap::new();
    for n in lo..=hi {
        let g = get(d, &c, n);
        let ra = a.rank(n + 1);
        da.insert(n + 1, project(&g, &a.module(n + 1).add, 0, ra));
        db.insert(n, project(&g, &b.module(n).add, ra, b.rank(n)));
    }
    let close = |x: &Complex, g: &Groups| -> Groups {
        x.degrees().map(|n| (n, get(g, x, n).sum(&apply(&x.diff(n - 1), &get(g, x, n - 1))))).collect()
    };
    let p = close(a, &da);
    let ea = ca.complete(&p, u)?;
    let mut qb = close(b, &db);
    for n in b.degrees() {
        let te = apply(&t.component(n), &get(&ea.groups, a, n));
        let cur = get(&qb, b, n);
        qb.insert(n, cur.sum(&te));
    }
    let fb = cb.complete(&qb, u)?;
    let mut maps = BTreeMap::new();
    for n in ea.complex.degrees() {
        let x = crate::algebra::solve_left(&fb.incl.component(n), &t.component(n).compose(&ea.incl.component(n)))
            .ok_or_else(|| Error::Verification(format!("t(E) ⊄ F in degree {n}")))?;
        maps.insert(n, x.mat);
    }
    let h = ChainMap::new(&ea.complex, &fb.complex, maps)?;
    let g = cone(&h).complex;
    let m = c.m();
    let incl = ChainMap::new(
        &g,
        &c,
        g.degrees().map(|n| (n, ZmMatrix::block_diag(m, &[&ea.incl.mat(n + 1), &fb.incl.mat(n)]))).collect(),
    )?;
    let groups: Groups = g.degrees().map(|n| (n, image_subgroup(&incl.component(n)))).collect();
    verify(contains_all(&groups, d), || "cone completion does not contain D".into())?;
    let cert = Certificate::Cone { map: h, source: Box::new(ea.cert), target: Box::new(fb.cert) };
    Ok(Completion { complex: g, incl, groups, cert })
}

pub struct ConeCompleter {
    pub map: ChainMap,
    pub source: Box<dyn Completer>,
    pub target: Box<dyn Completer>,
}

impl Completer for ConeCompleter {
    fn ambient(&self) -> Complex {
        cone(&self.map).complex
    }
    fn complete(&self, d: &Groups, u: &dyn Subcategory) -> Result<Completion> {
        complete_subcomplex_cone(&self.map, self.source.as_ref(), self.target.as_ref(), d, u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{preset, AHom, AModule};
    use crate::complex::sub::generated_subcomplex;
    use crate::derived::certificate::verify_certificate;
    use crate::derived::subcat::{ELocal, Everything};

    fn z6_ses() -> ComplexSes {
        let a = preset("zmod:6").unwrap();
        let r = AModule::regular(&a);
        let two = AHom::new(&r, &r, a.right_mult(&[2])).unwrap();
        let c = Complex::from_homs(0, &[two]).unwrap();
        let g = generated_subcomplex(&c, &[(1, vec![vec![3]])].into_iter().collect());
        subcomplex_ses(&c, &g).unwrap()
    }

    #[test]
    fn zero_and_full() {
        let e = z6_ses();
        let u = ELocal::new(&e.mid().alg, &[3]).unwrap();
        let r = complete_subcomplex_tot(&e, &BTreeMap::new(), &u).unwrap();
        assert!(r.complex.trimmed().is_empty());
        let t = tot_ses(&e).unwrap();
        let full: Groups = t.degrees().map(|n| (n, Subgroup::full(&t.module(n).add))).collect();
        let r = complete_subcomplex_tot(&e, &full, &Everything).unwrap();
        assert_eq!(r.complex, t);
        assert_eq!(verify_certificate(&r.cert).unwrap(), r.complex);
    }

    #[test]
    fn elocal_socle() {
        let e = z6_ses();
        let a = e.mid().alg.clone();
        let u = ELocal::new(&a, &[3]).unwrap();
        let t = tot_ses(&e).unwrap();
        // the 3-torsion part of Tot is the e-local part
        let d: Groups = t.degrees().map(|n| (n, u.part(&t.module(n)).group)).collect();
        let r = complete_subcomplex_tot(&e, &d, &u).unwrap();
        assert_eq!(verify_certificate(&r.cert).unwrap(), r.complex);
        assert!(contains_all(&r.groups, &d));

        let id = ChainMap::identity(&t);
        let cone_c = cone(&id).complex;
        let dd: Groups = cone_c.degrees().map(|n| (n, u.part(&cone_c.module(n)).group)).collect();
        let g = complete_subcomplex_cone(&id, &TotCompleter(e.clone()), &TotCompleter(e.clone()), &dd, &u).unwrap();
        assert_eq!(verify_certificate(&g.cert).unwrap(), g.complex);
        assert!(contains_all(&g.groups, &dd));
    }
}
