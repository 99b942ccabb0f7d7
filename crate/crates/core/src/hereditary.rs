//! Complexes over hereditary algebras: splitting into cohomology, and Hom in
//! the derived category as ∏ Hom(Xⁿ, Yⁿ) × ∏ Ext¹(Xⁿ, Y^{n−1}).

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::submodule::cokernel;
use crate::algebra::{block_hom, solve_left, solve_right, AHom, AModule, Alg};
use crate::complex::{cohomology, is_quasi_iso, lift_through, ChainMap, Complex};
use crate::derived::RoofMorphism;
use crate::error::{verify, Error, Result};
use crate::linalg::ZmMatrix;
use crate::resolution::{
    ext1_to_ses, ext_with, gldim_bounded, minimal_projective_resolution, ExtClass, GlDim, Resolution,
};

/// gldim A ≤ 1, decided once per algebra.
pub fn is_hereditary(alg: &Alg) -> Result<bool> {
    alg.memo
        .hereditary
        .get_or_init(|| Ok(matches!(gldim_bounded(alg, 2)?, GlDim::Finite { value } if value <= 1)))
        .clone()
}

fn require_hereditary(alg: &Alg) -> Result<()> {
    if is_hereditary(alg)? {
        Ok(())
    } else {
        Err(Error::NotHereditary)
    }
}

#[derive(Clone, Debug)]
pub struct ZeroDiffComplex {
    pub alg: Alg,
    pub lo: i64,
    pub mods: Vec<AModule>,
}

impl ZeroDiffComplex {
    pub fn new(alg: &Alg, lo: i64, mods: Vec<AModule>) -> Result<ZeroDiffComplex> {
        require_hereditary(alg)?;
        for md in &mods {
            md.check_same_algebra(&AModule::zero(alg))?;
        }
        Ok(ZeroDiffComplex { alg: alg.clone(), lo, mods })
    }

    pub fn from_complex(c: &Complex) -> Result<ZeroDiffComplex> {
        let c = c.trimmed();
        if c.degrees().any(|n| !c.diff_mat(n).is_zero()) {
            return Err(Error::Invalid("differential is not zero".into()));
        }
        ZeroDiffComplex::new(&c.alg, c.lo, c.mods.clone())
    }

    pub fn module(&self, n: i64) -> AModule {
        usize::try_from(n - self.lo)
            .ok()
            .and_then(|i| self.mods.get(i).cloned())
            .unwrap_or_else(|| AModule::zero(&self.alg))
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.mods.len() as i64 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn to_complex(&self) -> Complex {
        let diffs = self
            .mods
            .windows(2)
            .map(|w| ZmMatrix::zeros(self.alg.m, w[1].rank(), w[0].rank()))
            .collect();
        Complex::new(&self.alg, self.lo, self.mods.clone(), diffs).expect("zero differentials")
    }

    pub fn total_size(&self) -> u128 {
        self.mods.iter().map(|m| m.size()).product()
    }
}

/// Z ← N → M with Zⁿ = Hⁿ(M) and both legs quasi-isomorphisms.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub zero: ZeroDiffComplex,
    pub mid: Complex,
    pub to_zero: ChainMap,
    pub to_m: ChainMap,
}

impl Decomposition {
    /// M → Z in D.
    pub fn forward(&self) -> RoofMorphism {
        RoofMorphism { apex: self.mid.clone(), s: self.to_m.clone(), f: self.to_zero.clone() }
    }

    /// Z → M in D.
    pub fn backward(&self) -> RoofMorphism {
        RoofMorphism { apex: self.mid.clone(), s: self.to_zero.clone(), f: self.to_m.clone() }
    }
}

/// Per degree: Eⁿ with j: M^{n−1} → Eⁿ, q: Eⁿ → Hⁿ and u: Eⁿ → Mⁿ landing in Zⁿ.
struct Piece {
    e: AModule,
    j: AHom,
    q: AHom,
    u: AHom,
}

fn piece(m: &Complex, n: i64) -> Result<Piece> {
    let alg = &m.alg;
    let coh = cohomology(m, n);
    let h = coh.module().clone();
    let prev = m.module(n - 1);
    let res = minimal_projective_resolution(&h, 2)?;
    verify(res.closed && res.term(2).is_zero(), || format!("H^{n} has projective dimension above 1"))?;
    let (p0, p1, d1) = (res.term(0), res.term(1), res.d(1));
    // g: P₀ → Zⁿ lifts the augmentation; g∘d₁ lands in Bⁿ and lifts along d to c: P₁ → M^{n−1}
    let g = solve_left(&coh.h.proj, &res.aug).ok_or_else(|| Error::Verification("augmentation does not lift".into()))?;
    let zg = coh.z.incl.compose(&g);
    let c = solve_left(&m.diff(n - 1), &zg.compose(&d1))
        .ok_or_else(|| Error::Verification(format!("class in degree {n} does not lift along d")))?;
    let sum = AModule::direct_sum(alg, &[&prev, &p0]);
    let rel = AHom::from_parts(&p1, &sum, c.mat.neg().vstack(&d1.mat));
    let quot = cokernel(&rel);
    let e = quot.module.clone();
    let in1 = block_hom(&[&prev], &[&prev, &p0], &[vec![Some(&ZmMatrix::identity(alg.m, prev.rank()))], vec![None]]);
    let j = quot.proj.compose(&AHom::from_parts(&prev, &sum, in1.mat));
    let q = quot.descend(&AHom::from_parts(&sum, &h, ZmMatrix::zeros(alg.m, h.rank(), prev.rank()).hstack(&res.aug.mat)))?;
    let u = quot.descend(&AHom::from_parts(&sum, &m.module(n), m.diff_mat(n - 1).hstack(&zg.mat)))?;
    Ok(Piece { e, j, q, u })
}

pub fn decompose_hereditary(m: &Complex) -> Result<Decomposition> {
    require_hereditary(&m.alg)?;
    let alg = &m.alg;
    let m = m.trimmed();
    if m.is_empty() {
        let z = ZeroDiffComplex::new(alg, 0, Vec::new())?;
        let zc = z.to_complex();
        let id = ChainMap::identity(&zc);
        return Ok(Decomposition { zero: z, mid: zc, to_zero: id.clone(), to_m: id });
    }
    let (lo, hi) = (m.lo, m.hi());
    let zero = ZeroDiffComplex::new(alg, lo, (lo..=hi).map(|n| cohomology(&m, n).module().clone()).collect())?;
    let zc = zero.to_complex();
    let pieces: Vec<Piece> = (lo..=hi + 1).map(|n| piece(&m, n)).collect::<Result<_>>()?;
    let at = |n: i64| &pieces[(n - lo) as usize];
    let mods: Vec<AModule> = (lo..=hi + 1).map(|n| AModule::direct_sum(alg, &[&at(n).e, &m.module(n)])).collect();
    // d(e, x) = (j x, 0)
    let diffs: Vec<ZmMatrix> = (lo..=hi)
        .map(|n| {
            let (en, mn) = (&at(n).e, m.module(n));
            let (en1, mn1) = (&at(n + 1).e, m.module(n + 1));
            let jm = &at(n + 1).j.mat;
            ZmMatrix::from_blocks(alg.m, &[en1.rank(), mn1.rank()], &[en.rank(), mn.rank()], &[vec![None, Some(jm)], vec![None, None]])
        })
        .collect();
    let mid = Complex::new(alg, lo, mods, diffs)?;
    let mut zmaps = BTreeMap::new();
    let mut mmaps = BTreeMap::new();
    for n in lo..=hi + 1 {
        let p = at(n);
        let mn = m.module(n);
        zmaps.insert(n, p.q.mat.hstack(&ZmMatrix::zeros(alg.m, zc.rank(n), mn.rank())));
        mmaps.insert(n, p.u.mat.hstack(&ZmMatrix::identity(alg.m, mn.rank())));
    }
    let to_zero = ChainMap::new(&mid, &zc, zmaps)?;
    let to_m = ChainMap::new(&mid, &m, mmaps)?;
    verify(is_quasi_iso(&to_zero), || "leg to the cohomology is not a quasi-isomorphism".into())?;
    verify(is_quasi_iso(&to_m), || "leg to M is not a quasi-isomorphism".into())?;
    Ok(Decomposition { zero, mid, to_zero, to_m })
}

/// (gₙ: Xⁿ → Yⁿ, eₙ ∈ Ext¹(Xⁿ, Y^{n−1})) indexed by n over the support of X.
#[derive(Clone, Debug)]
pub struct FormulaData {
    pub g: BTreeMap<i64, AHom>,
    pub e: BTreeMap<i64, ExtClass>,
}

impl FormulaData {
    pub fn zero(x: &ZeroDiffComplex, y: &ZeroDiffComplex) -> Result<FormulaData> {
        let mut g = BTreeMap::new();
        let mut e = BTreeMap::new();
        for n in x.degrees() {
            let xn = x.module(n);
            g.insert(n, AHom::zero(&xn, &y.module(n)));
            let res = resolve(&xn)?;
            let grp = ext_with(&res, &y.module(n - 1), 1)?;
            e.insert(n, grp.representative(&vec![0; grp.group().rank()]));
        }
        Ok(FormulaData { g, e })
    }

    /// Coordinates of every component: Hom entries, then Ext¹ classes.
    pub fn coords(&self) -> Result<Vec<Vec<u64>>> {
        let mut out: Vec<Vec<u64>> = self.g.values().map(|g| g.target.reduce(g.mat.clone()).entries().to_vec()).collect();
        for c in self.e.values() {
            let grp = ext_with(&c.resolution, &c.target, 1)?;
            out.push(grp.coords(c).ok_or_else(|| Error::Verification("not a cocycle".into()))?);
        }
        Ok(out)
    }

    pub fn same(&self, other: &FormulaData) -> Result<bool> {
        Ok(self.g.keys().eq(other.g.keys()) && self.e.keys().eq(other.e.keys()) && self.coords()? == other.coords()?)
    }
}

fn resolve(md: &AModule) -> Result<Arc<Resolution>> {
    let r = minimal_projective_resolution(md, 2)?;
    verify(r.closed, || "resolution did not close".into())?;
    Ok(Arc::new(r))
}

pub fn hom_formula_eval(f: &RoofMorphism, x: &ZeroDiffComplex, y: &ZeroDiffComplex) -> Result<FormulaData> {
    require_hereditary(&x.alg)?;
    let (xc, yc) = (x.to_complex(), y.to_complex());
    if *f.source() != xc || *f.target() != yc {
        return Err(Error::Invalid("roof does not go from X to Y".into()));
    }
    let s = f.s.retyped(&f.apex, &xc);
    let leg = f.f.retyped(&f.apex, &yc);
    let mut g = BTreeMap::new();
    let mut e = BTreeMap::new();
    for n in x.degrees() {
        let xn = x.module(n);
        let res = resolve(&xn)?;
        let (p0, p1) = (res.term(0), res.term(1));
        // R = (P₁ → P₀) with P₀ in degree n, mapping onto the summand Xⁿ
        let r = Complex::new(&x.alg, n - 1, vec![p1.clone(), p0.clone()], vec![res.d(1).mat.clone()])?;
        let mut emaps = BTreeMap::new();
        emaps.insert(n, res.aug.mat.clone());
        let eps = ChainMap::new(&r, &xc, emaps)?;
        let (phi, _) = lift_through(&s, &eps).ok_or_else(|| Error::Verification(format!("summand X^{n} does not lift to the apex")))?;
        let psi = leg.compose(&phi);
        let yn = y.module(n);
        let top = AHom::from_parts(&p0, &yn, psi.mat(n));
        let gn = solve_right(&res.aug, &top).ok_or_else(|| Error::Verification(format!("degree {n} does not descend to X^{n}")))?;
        g.insert(n, gn);
        let grp = ext_with(&res, &y.module(n - 1), 1)?;
        e.insert(n, grp.class(AHom::from_parts(&p1, &y.module(n - 1), psi.mat(n - 1))));
    }
    Ok(FormulaData { g, e })
}

/// X ← W → Y with Wⁿ = Fⁿ ⊕ Yⁿ, where 0 → Y^{n−1} →k Fⁿ →r Xⁿ → 0 represents eₙ.
pub fn hom_formula_build(x: &ZeroDiffComplex, y: &ZeroDiffComplex, data: &FormulaData) -> Result<RoofMorphism> {
    let alg = &x.alg;
    let m = alg.m;
    let (xc, yc) = (x.to_complex(), y.to_complex());
    let ylo = if y.mods.is_empty() { x.lo } else { y.lo };
    let (lo, hi) = (x.lo.min(ylo), x.hi().max(y.hi() + 1));
    let mut ks = BTreeMap::new();
    let mut rs = BTreeMap::new();
    for n in lo..=hi {
        let xn = x.module(n);
        let class = match data.e.get(&n) {
            Some(c) => {
                verify(c.source == xn && c.target == y.module(n - 1), || format!("e_{n} has the wrong type"))?;
                c.clone()
            }
            None => {
                let grp = ext_with(&resolve(&xn)?, &y.module(n - 1), 1)?;
                grp.representative(&vec![0; grp.group().rank()])
            }
        };
        let ses = ext1_to_ses(&class)?;
        ks.insert(n, ses.i);
        rs.insert(n, ses.p);
    }
    let mods: Vec<AModule> = (lo..=hi).map(|n| AModule::direct_sum(alg, &[&rs[&n].source, &y.module(n)])).collect();
    // d(f, y) = (k y, 0)
    let diffs: Vec<ZmMatrix> = (lo..hi)
        .map(|n| {
            let (f0, f1) = (&rs[&n].source, &rs[&(n + 1)].source);
            let (y0, y1) = (y.module(n), y.module(n + 1));
            ZmMatrix::from_blocks(m, &[f1.rank(), y1.rank()], &[f0.rank(), y0.rank()], &[vec![None, Some(&ks[&(n + 1)].mat)], vec![None, None]])
        })
        .collect();
    let w = Complex::new(alg, lo, mods, diffs)?;
    let mut smaps = BTreeMap::new();
    let mut fmaps = BTreeMap::new();
    for n in lo..=hi {
        let r = &rs[&n];
        let yn = y.module(n);
        let gn = match data.g.get(&n) {
            Some(g) => {
                verify(g.source == x.module(n) && g.target == yn, || format!("g_{n} has the wrong type"))?;
                g.clone()
            }
            None => AHom::zero(&x.module(n), &yn),
        };
        smaps.insert(n, r.mat.hstack(&ZmMatrix::zeros(m, r.target.rank(), yn.rank())));
        fmaps.insert(n, gn.compose(r).mat.hstack(&ZmMatrix::identity(m, yn.rank())));
    }
    let s = ChainMap::new(&w, &xc, smaps)?;
    let f = ChainMap::new(&w, &yc, fmaps)?;
    RoofMorphism::new(s, f)
}

/// ∏ |Hom(Xⁿ, Yⁿ)| · ∏ |Ext¹(Xⁿ, Y^{n−1})|.
pub fn formula_size(x: &ZeroDiffComplex, y: &ZeroDiffComplex) -> Result<u128> {
    require_hereditary(&x.alg)?;
    let mut total = 1u128;
    for n in x.degrees() {
        let xn = x.module(n);
        total *= crate::algebra::hom(&xn, &y.module(n)).size();
        total *= ext_with(&resolve(&xn)?, &y.module(n - 1), 1)?.size();
    }
    Ok(total)
}

/// Every datum (gₙ, eₙ), in a fixed order.
pub fn formula_elements(x: &ZeroDiffComplex, y: &ZeroDiffComplex) -> Result<Vec<FormulaData>> {
    require_hereditary(&x.alg)?;
    let mut out = vec![FormulaData { g: BTreeMap::new(), e: BTreeMap::new() }];
    for n in x.degrees() {
        let xn = x.module(n);
        let homs = crate::algebra::hom(&xn, &y.module(n)).elements();
        let exts = ext_with(&resolve(&xn)?, &y.module(n - 1), 1)?.elements();
        let mut next = Vec::with_capacity(out.len() * homs.len() * exts.len());
        for d in &out {
            for g in &homs {
                for e in &exts {
                    let mut d = d.clone();
                    d.g.insert(n, g.clone());
                    d.e.insert(n, e.clone());
                    next.push(d);
                }
            }
        }
        out = next;
    }
    Ok(out)
}
