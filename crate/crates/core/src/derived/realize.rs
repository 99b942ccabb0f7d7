//! Realizing a complex with cohomology in a subcategory of finite global
//! dimension by a complex with terms in it, one cohomological degree at a time.

use std::collections::BTreeMap;

use super::replace::replace_in_subcategory;
use super::roof::RoofMorphism;
use super::subcat::{InSub, Subcategory};
use crate::algebra::solve_left;
use crate::complex::{cohomology, cone, is_quasi_iso, truncate_le, ChainMap, Complex};
use crate::error::{verify, Error, Result};
use crate::linalg::ZmMatrix;
use crate::resolution::shorten_with;

#[derive(Clone, Debug)]
pub struct Realization {
    pub complex: Complex,
    pub qi: ChainMap,
    /// M ← L → L, i.e. the isomorphism M ≅ L in D as a roof.
    pub roof: RoofMorphism,
    /// L₀, L₁, … with Lₙ ≃ τ≤n M.
    pub stages: Vec<Complex>,
}

/// ι: τ≤a M → τ≤b M for a ≤ b, the factorization of one truncation map through the other.
fn between(small: &ChainMap, big: &ChainMap) -> Result<ChainMap> {
    let mut maps = BTreeMap::new();
    for n in small.source.degrees() {
        let x = solve_left(&big.component(n), &small.component(n))
            .ok_or_else(|| Error::Verification(format!("truncations do not factor in degree {n}")))?;
        maps.insert(n, x.mat);
    }
    ChainMap::new(&small.source, &big.source, maps)
}

pub fn realize_from_truncations(m: &Complex, u: &dyn Subcategory, d: usize) -> Result<Realization> {
    let alg = &m.alg;
    let mm = m.trimmed();
    let degs: Vec<i64> = match mm.support() {
        Some((lo, hi)) => (lo..=hi).filter(|&n| !cohomology(&mm, n).is_zero()).collect(),
        None => Vec::new(),
    };
    if degs.is_empty() {
        let z = Complex::zero(alg);
        let qi = ChainMap::zero(&z, &mm);
        let roof = RoofMorphism::new(qi.clone(), ChainMap::identity(&z))?;
        return Ok(Realization { complex: z.clone(), qi, roof, stages: vec![z] });
    }
    if degs[0] < 0 {
        return Err(Error::Invalid(format!("cohomology in negative degree {}", degs[0])));
    }
    for &n in &degs {
        if !u.contains(cohomology(&mm, n).module()) {
            return Err(Error::Invalid(format!("H^{n} is not in {}", u.name())));
        }
    }
    let top = *degs.last().unwrap();
    let t0 = truncate_le(&mm, 0);
    let r0 = replace_in_subcategory(&t0.complex, u, 0)?;
    let mut l = r0.complex;
    let mut alpha = r0.qi;
    let mut trunc = t0.map;
    let mut stages = vec![l.clone()];
    for n in 0..top {
        let next = truncate_le(&mm, n + 1);
        let iota = between(&trunc, &next.map)?;
        let f = iota.compose(&alpha);
        let c = cone(&f).complex;
        let r = replace_in_subcategory(&c, u, c.trimmed().hi())?;
        let k = n + 1;
        let q = shorten_with(&InSub(u), &r.complex.shift(k), d)?;
        let x = q.complex.shift(-k);
        let back = q.qi.shift(-k).retyped(&x, &r.complex);
        let rho = r.qi.compose(&back);
        // ρ = (ρ_L, ρ_Y) into Cone(f)ⁱ = L^{i+1} ⊕ Yⁱ
        let y = &next.complex;
        let (lo, hi) = (x.lo.min(l.lo - 1), x.hi().max(l.hi()));
        let xs = x.shift(-1);
        let g_maps: BTreeMap<i64, ZmMatrix> = (lo..=hi + 1)
            .filter(|&i| xs.rank(i) > 0 && l.rank(i) > 0)
            .map(|i| (i, rho.mat(i - 1).submatrix(0, l.rank(i), 0, x.rank(i - 1))))
            .collect();
        let g = ChainMap::new(&xs, &l, g_maps)?;
        let ln = cone(&g).complex;
        // α_{n+1}(x, l) = ρ_Y(x) − f(l)
        let a_maps: BTreeMap<i64, ZmMatrix> = ln
            .degrees()
            .map(|i| {
                let ry = rho.mat(i).submatrix(l.rank(i + 1), y.rank(i), 0, x.rank(i));
                (i, ry.hstack(&f.mat(i).neg()).reduced_rows(&y.module(i).add.orders))
            })
            .collect();
        alpha = ChainMap::new(&ln, y, a_maps)?;
        verify(is_quasi_iso(&alpha), || format!("stage {} is not quasi-isomorphic to the truncation", n + 1))?;
        l = ln;
        trunc = next.map;
        stages.push(l.clone());
    }
    let qi = trunc.compose(&alpha);
    for i in l.degrees() {
        verify(u.contains(&l.module(i)), || format!("realization term in degree {i} is not in {}", u.name()))?;
    }
    let roof = RoofMorphism::new(qi.clone(), ChainMap::identity(&l))?;
    Ok(Realization { complex: l, qi, roof, stages })
}
