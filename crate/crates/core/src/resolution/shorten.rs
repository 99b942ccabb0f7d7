//! Shortening a bounded-above complex with one cohomology group to length d.

use std::collections::BTreeMap;
use std::sync::Arc;

use super::ext::ext_with;
use super::projective::{resolve_with, CoverProvider, MinimalCovers};
use crate::algebra::submodule::{cokernel, image, kernel};
use crate::algebra::{solve_left, split_mono_test, AHom, AModule};
use crate::complex::{cohomology, is_quasi_iso, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::linalg::ZmMatrix;

#[derive(Clone, Debug)]
pub struct Shortened {
    /// Q in degrees −d..0, with Q^{−i} = P_i for i < d.
    pub complex: Complex,
    pub qi: ChainMap,
    /// The pushout Q̃ ⊇ Z and the retraction found for Z ↪ Q̃.
    pub qtilde: AModule,
    pub retraction: AHom,
}

pub fn shorten_resolution(k: &Complex, d: usize) -> Result<Shortened> {
    shorten_with(&MinimalCovers, k, d)
}

/// Replaces K (exact off degree 0, zero above 0) by a complex of length d
/// built from a projective resolution P of H⁰(K). Fails with ClassNotTrivial
/// when Z = im(K^{−d−1} → K^{−d}) does not split off the pushout.
pub fn shorten_with(provider: &dyn CoverProvider, k: &Complex, d: usize) -> Result<Shortened> {
    let alg = &k.alg;
    let m = alg.m;
    let k = k.trimmed();
    if !k.is_empty() && k.hi() > 0 {
        return Err(Error::Invalid("complex must vanish above degree 0".into()));
    }
    if let Some(n) = k.support().and_then(|(lo, hi)| (lo - 1..=hi).find(|&n| n != 0 && !cohomology(&k, n).is_zero())) {
        return Err(Error::NotAcyclic(format!("cohomology in degree {n}")));
    }
    let di = d as i64;
    let eps_k = cokernel(&k.diff(-1));
    let h = eps_k.module.clone();
    let res = Arc::new(resolve_with(provider, &h, d + 2)?);
    // comparison P → K over id_H
    let mut phi: Vec<AHom> = Vec::new();
    phi.push(solve_left(&eps_k.proj, &res.aug).ok_or_else(|| Error::Verification("augmentation does not lift".into()))?);
    for i in 1..=d {
        let target = phi[i - 1].compose(&res.d(i));
        let x = solve_left(&k.diff(-(i as i64)), &target)
            .ok_or_else(|| Error::Verification(format!("comparison map fails in degree {}", -(i as i64))))?;
        phi.push(x);
    }
    let (z, _) = image(&k.diff(-di - 1));
    let phi_top = z.factor(&phi[d].compose(&res.d(d + 1)))?;

    // route 1: the class of φ_{d+1} in Ext^{d+1}(H, Z)
    let eg = ext_with(&res, &z.module, d + 1)?;
    let trivial = eg
        .is_trivial(&eg.class(phi_top.clone()))
        .ok_or_else(|| Error::Verification("φ_{d+1} is not a cocycle".into()))?;

    // route 2: Q̃ = coker(P_{d+1} → Z ⊕ P_d) and a retraction of Z ↪ Q̃
    let (pd, pd1) = (res.term(d), res.term(d + 1));
    let sum = AModule::direct_sum(alg, &[&z.module, &pd]);
    let rel = AHom::from_parts(&pd1, &sum, phi_top.mat.neg().vstack(&res.d(d + 1).mat));
    let qt = cokernel(&rel);
    let (rz, rp) = (z.module.rank(), pd.rank());
    let in_z = ZmMatrix::from_fn(m, rz + rp, rz, |r, c| u64::from(r == c));
    let iz = AHom::from_parts(&z.module, &qt.module, qt.proj.mat.mul(&in_z));
    let split = split_mono_test(&iz)?;
    if split.is_some() != trivial {
        return Err(Error::Verification(format!("split test says {} but the Ext class says {}", split.is_some(), trivial)));
    }
    let r = split.ok_or(Error::ClassNotTrivial)?;
    let kappa = qt.descend(&AHom::from_parts(&sum, &k.module(-di), z.incl.mat.hstack(&phi[d].mat)))?;
    let qd = kernel(&r);

    let mut mods = vec![qd.module.clone()];
    let mut diffs = Vec::new();
    if d >= 1 {
        let prev = res.term(d - 1);
        let zero = ZmMatrix::zeros(m, prev.rank(), rz);
        let to_prev = qt.descend(&AHom::from_parts(&sum, &prev, zero.hstack(&res.d(d).mat)))?;
        diffs.push(to_prev.compose(&qd.incl).mat);
        for i in (0..d).rev() {
            mods.push(res.term(i));
            if i >= 1 {
                diffs.push(res.d(i).mat);
            }
        }
    }
    let q = Complex::new(alg, -di, mods, diffs)?;
    let mut maps = BTreeMap::new();
    maps.insert(-di, kappa.compose(&qd.incl).mat);
    for (i, f) in phi.iter().enumerate().take(d) {
        maps.insert(-(i as i64), f.mat.clone());
    }
    let qi = ChainMap::new(&q, &k, maps)?;
    if !is_quasi_iso(&qi) {
        return Err(Error::Verification("shortened complex is not quasi-isomorphic to the input".into()));
    }
    Ok(Shortened { complex: q, qi, qtilde: qt.module, retraction: r })
}
