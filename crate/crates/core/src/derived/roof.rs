//! Roofs, h-projective replacement and Hom in the derived category.

use std::collections::BTreeMap;

use super::replace::{replace_with, ReplaceOptions};
use super::subcat::Projectives;
use crate::algebra::submodule::image;
use crate::algebra::is_projective;
use crate::complex::{hom_k, is_quasi_iso, lift_through, ChainMap, Complex, HomK};
use crate::error::{Error, Result};
use crate::linalg::{AdditivePresentation, ZmMatrix};
use crate::resolution::ce_resolution;

/// X ← P → Y with s a quasi-isomorphism.
#[derive(Clone, Debug)]
pub struct RoofMorphism {
    pub apex: Complex,
    pub s: ChainMap,
    pub f: ChainMap,
}

impl RoofMorphism {
    pub fn new(s: ChainMap, f: ChainMap) -> Result<RoofMorphism> {
        if s.source != f.source {
            return Err(Error::Invalid("roof legs have different sources".into()));
        }
        if !is_quasi_iso(&s) {
            return Err(Error::Verification("left leg of the roof is not a quasi-isomorphism".into()));
        }
        Ok(RoofMorphism { apex: s.source.clone(), s, f })
    }

    pub fn source(&self) -> &Complex {
        &self.s.target
    }

    pub fn target(&self) -> &Complex {
        &self.f.target
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HprojMode {
    /// Stepwise projective resolution, cut off after `depth` terms.
    BoundedAbove { depth: usize },
    /// Cartan–Eilenberg totalization under gldim ≤ d.
    FiniteGldim { d: usize },
}

#[derive(Clone, Debug)]
pub struct Hproj {
    pub complex: Complex,
    pub qi: ChainMap,
    /// False when a bounded-above resolution was cut off; then qi is only
    /// a quasi-isomorphism above `floor`.
    pub closed: bool,
    pub floor: Option<i64>,
}

fn all_projective(c: &Complex) -> Result<bool> {
    for n in c.degrees() {
        if !is_projective(&c.module(n))? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn hproj_replace(c: &Complex, mode: HprojMode) -> Result<Hproj> {
    let c = c.trimmed();
    if all_projective(&c)? {
        return Ok(Hproj { qi: ChainMap::identity(&c), complex: c, closed: true, floor: None });
    }
    match mode {
        HprojMode::BoundedAbove { depth } => {
            if depth == 0 {
                return Err(Error::DepthExceeded("depth 0 leaves no terms".into()));
            }
            let floor = c.hi() - depth as i64 + 1;
            let opts = ReplaceOptions { floor: Some(floor), check_cohomology: false, max_steps: depth + 1, ..Default::default() };
            let r = replace_with(&c, &Projectives, c.hi(), &opts)?;
            Ok(Hproj { complex: r.complex, qi: r.qi, closed: r.closed, floor: (!r.closed).then_some(floor) })
        }
        HprojMode::FiniteGldim { d } => {
            let ce = ce_resolution(&c, d)?;
            Ok(Hproj { complex: ce.tot, qi: ce.qi, closed: true, floor: None })
        }
    }
}

/// Hom_D(X, Y) as Hom_K(P, Y) for a projective replacement P of X.
#[derive(Clone, Debug)]
pub struct HomD {
    pub source: Complex,
    pub target: Complex,
    pub hproj: Hproj,
    pub homk: HomK,
    /// Apex of the representative roofs and its quasi-isomorphism to X.
    apex_s: ChainMap,
    apex_proj: BTreeMap<i64, ZmMatrix>,
}

impl HomD {
    pub fn group(&self) -> &AdditivePresentation {
        self.homk.group()
    }

    pub fn size(&self) -> u128 {
        self.homk.size()
    }

    /// The roof X ← P' → Y representing the class with coordinates y.
    pub fn roof(&self, y: &[u64]) -> RoofMorphism {
        let f = self.homk.representative(y);
        let apex = &self.apex_s.source;
        let maps = apex.degrees().map(|n| (n, self.descend(&f, n))).collect();
        let f = ChainMap::new(apex, &self.target, maps).expect("roof leg is a chain map");
        RoofMorphism { apex: apex.clone(), s: self.apex_s.clone(), f }
    }

    fn descend(&self, f: &ChainMap, n: i64) -> ZmMatrix {
        match self.apex_proj.get(&n) {
            // the bottom term was replaced by a quotient and f vanishes there
            Some(_) => ZmMatrix::zeros(f.target.m(), f.target.rank(n), self.apex_s.source.rank(n)),
            None => f.mat(n),
        }
    }

    /// Coordinates of the class of an arbitrary roof X ← A → Y; needs a closed replacement.
    pub fn class_of_roof(&self, r: &RoofMorphism) -> Result<Vec<u64>> {
        if !self.hproj.closed {
            return Err(Error::DepthExceeded("replacement was cut off".into()));
        }
        if *r.source() != self.source.trimmed() || *r.target() != self.target.trimmed() {
            return Err(Error::Invalid("roof has the wrong endpoints".into()));
        }
        let s = r.s.retyped(&r.apex, &self.hproj.qi.target);
        let (phi, _) = lift_through(&s, &self.hproj.qi).ok_or_else(|| Error::Verification("replacement does not lift to the apex".into()))?;
        let g = r.f.retyped(&r.apex, &self.homk.target).compose(&phi);
        self.homk.class_of(&g).ok_or_else(|| Error::Verification("composite is not a chain map".into()))
    }

    pub fn roofs(&self) -> Vec<RoofMorphism> {
        (0..self.group().rank())
            .map(|j| {
                let mut e = vec![0; self.group().rank()];
                e[j] = 1;
                self.roof(&e)
            })
            .collect()
    }
}

fn hom_d_at(x: &Complex, y: &Complex, depth: usize) -> Result<(Hproj, HomK)> {
    let p = hproj_replace(x, HprojMode::BoundedAbove { depth })?;
    if let Some(floor) = p.floor {
        let (xt, yt) = (x.trimmed(), y.trimmed());
        let need = [xt.support(), yt.support()].iter().flatten().map(|s| s.0).min();
        if let Some(lo) = need {
            if floor >= lo {
                return Err(Error::DepthExceeded(format!(
                    "resolution cut off at degree {floor}, needs to reach below {lo}"
                )));
            }
        }
    }
    let h = hom_k(&p.complex, y);
    Ok((p, h))
}

pub fn hom_d(x: &Complex, y: &Complex, depth: usize) -> Result<HomD> {
    let (p, homk) = hom_d_at(x, y, depth)?;
    if !p.closed {
        let (_, again) = hom_d_at(x, y, depth + 1)?;
        if again.size() != homk.size() {
            return Err(Error::Unstable { depth, next: depth + 1, a: homk.size(), b: again.size() });
        }
    }
    // truncated apex: replace the bottom term by the image of its differential
    let (apex_s, apex_proj) = match p.floor {
        None => (p.qi.clone(), BTreeMap::new()),
        Some(floor) => {
            let pc = &p.complex;
            let (im, epi) = image(&pc.diff(floor));
            let mut mods = vec![im.module.clone()];
            mods.extend((floor + 1..=pc.hi()).map(|n| pc.module(n)));
            let mut diffs = vec![im.incl.mat.clone()];
            diffs.extend((floor + 1..pc.hi()).map(|n| pc.diff_mat(n)));
            if pc.hi() == floor {
                diffs.clear();
            }
            let apex = Complex::new(&pc.alg, floor, mods, diffs)?;
            let xt = &p.qi.target;
            let maps = apex
                .degrees()
                .map(|n| if n == floor { (n, ZmMatrix::zeros(xt.m(), xt.rank(n), apex.rank(n))) } else { (n, p.qi.mat(n)) })
                .collect();
            let s = ChainMap::new(&apex, xt, maps)?;
            if !is_quasi_iso(&s) {
                return Err(Error::Verification("truncated apex is not quasi-isomorphic to the source".into()));
            }
            let mut proj = BTreeMap::new();
            proj.insert(floor, epi.mat);
            (s, proj)
        }
    };
    Ok(HomD { source: x.clone(), target: y.clone(), hproj: p, homk, apex_s, apex_proj })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cover::simple_top;
    use crate::algebra::{preset, AHom, AModule};

    #[test]
    fn projective_complex_is_kept() {
        let a = preset("zmod:4").unwrap();
        let r = AModule::regular(&a);
        let c = Complex::from_homs(0, &[AHom::new(&r, &r, a.right_mult(&[2])).unwrap()]).unwrap();
        let p = hproj_replace(&c, HprojMode::BoundedAbove { depth: 3 }).unwrap();
        assert_eq!(p.complex, c);
    }

    #[test]
    fn residue_field_of_dual_numbers() {
        let a = preset("dual_numbers:2").unwrap();
        let k = Complex::single(&simple_top(&a, 0).unwrap(), 0);
        let p = hproj_replace(&k, HprojMode::BoundedAbove { depth: 5 }).unwrap();
        assert!(!p.closed);
        assert_eq!(p.complex.mods.len(), 5);
        assert!(p.complex.mods.iter().all(|m| m.size() == 4));
        for n in 0..=3 {
            let h = hom_d(&k, &k.shift(n), n as usize + 2).unwrap();
            assert_eq!(h.size(), 2, "n = {n}");
            for roof in h.roofs() {
                assert!(is_quasi_iso(&roof.s));
            }
        }
        assert!(matches!(hom_d(&k, &k.shift(3), 4), Err(Error::DepthExceeded(_))));
    }

    #[test]
    fn a2_simples() {
        let a = preset("path_algebra:1->2").unwrap();
        let (s1, s2) = (simple_top(&a, 0).unwrap(), simple_top(&a, 1).unwrap());
        let x = Complex::single(&s1, 0);
        let p = hproj_replace(&x, HprojMode::FiniteGldim { d: 1 }).unwrap();
        assert_eq!(p.complex.trimmed().mods.len(), 2);
        let total: u128 = [s1.clone(), s2.clone()]
            .iter()
            .map(|t| hom_d(&x, &Complex::single(t, -1), 4).unwrap().size())
            .product();
        assert_eq!(total, 2);
        let id = hom_d(&x, &x, 3).unwrap();
        assert_eq!(id.size(), 2);
    }
}
