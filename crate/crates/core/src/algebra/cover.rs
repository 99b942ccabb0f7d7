//! Projective covers for local algebras and algebras with a complete set of
//! primitive orthogonal idempotents.

use super::finalg::Alg;
use super::iso::is_isomorphic;
use super::module::{AHom, AModule};
use super::radical::{radical_quotient, radical_subgroup};
use super::submodule::{close_under_action, generated, Sub};
use crate::error::{Error, Result};
use crate::linalg::group::Subgroup;
use crate::linalg::ZmMatrix;

/// An indecomposable projective A·e with its embedding into A.
#[derive(Clone, Debug)]
pub struct IndecProj {
    pub idem: Vec<u64>,
    pub module: AModule,
    /// rank(A) × rank(module): coordinates ↦ element of A.
    pub incl: ZmMatrix,
}

fn build_projectives(alg: &Alg) -> Result<Vec<IndecProj>> {
    if alg.is_local()? {
        let module = AModule::regular(alg);
        return Ok(vec![IndecProj { idem: alg.unit.clone(), incl: ZmMatrix::identity(alg.m, alg.rank()), module }]);
    }
    let Some(ids) = &alg.idempotents else {
        return Err(Error::UnsupportedAlgebra(format!("{} is neither local nor equipped with idempotents", alg.name)));
    };
    let total = ids.iter().fold(alg.zero(), |acc, e| alg.add(&acc, &alg.reduced(e)));
    if total != alg.unit {
        return Err(Error::UnsupportedAlgebra(format!("idempotents of {} do not sum to 1", alg.name)));
    }
    let reg = AModule::regular(alg);
    Ok(ids
        .iter()
        .map(|e| {
            let e = alg.reduced(e);
            let sub = Sub::new(&reg, &generated(&reg, std::slice::from_ref(&e)));
            IndecProj { idem: e, incl: sub.incl.mat.clone(), module: sub.module }
        })
        .collect())
}

pub fn indecomposable_projectives(alg: &Alg) -> Result<&[IndecProj]> {
    alg.memo.projectives.get_or_init(|| build_projectives(alg)).as_ref().map(|v| v.as_slice()).map_err(Clone::clone)
}

#[derive(Clone, Debug)]
pub struct Cover {
    pub module: AModule,
    pub pi: AHom,
    /// For each summand: index into `indecomposable_projectives` and its generator image.
    pub summands: Vec<(usize, Vec<u64>)>,
}

/// ⊕ P_{iₛ} → M sending the generator eₛ of summand s to xₛ ∈ e·M.
pub fn map_from_projectives(md: &AModule, summands: &[(usize, Vec<u64>)]) -> Result<AHom> {
    let projs = indecomposable_projectives(&md.alg)?;
    let parts: Vec<&AModule> = summands.iter().map(|(i, _)| &projs[*i].module).collect();
    let src = AModule::direct_sum(&md.alg, &parts);
    let mut cols = Vec::new();
    for (i, x) in summands {
        let p = &projs[*i];
        for j in 0..p.module.rank() {
            cols.push(md.act(&p.incl.col_vec(j), x));
        }
    }
    let mat = ZmMatrix::from_fn(md.m(), md.rank(), src.rank(), |r, c| cols[c][r]);
    Ok(AHom::from_parts(&src, md, mat))
}

/// Projective cover with the minimality certificate checked: π epi and π̄ iso.
pub fn projective_cover(md: &AModule) -> Result<Cover> {
    let projs = indecomposable_projectives(&md.alg)?;
    let full = Subgroup::full(&md.add);
    let mut span = radical_subgroup(md)?;
    let mut summands = Vec::new();
    'outer: for c in 0..md.rank() {
        for (pi, p) in projs.iter().enumerate() {
            if span == full {
                break 'outer;
            }
            let mut unit = vec![0u64; md.rank()];
            unit[c] = 1;
            let x = md.act(&p.idem, &md.reduce_vec(unit));
            if !span.contains(&x) {
                span = close_under_action(md, span.sum(&Subgroup::from_gens(&md.add, std::slice::from_ref(&x))));
                summands.push((pi, x));
            }
        }
    }
    let pi = map_from_projectives(md, &summands)?;
    if !pi.is_epi() {
        return Err(Error::CoverFailure("generators do not span the module".into()));
    }
    let top_p = radical_quotient(&pi.source)?;
    let top_m = radical_quotient(md)?;
    if top_p.module.size() != top_m.module.size() {
        return Err(Error::UnsupportedAlgebra(format!(
            "cover of a module over {} is not minimal; are the idempotents primitive?",
            md.alg.name
        )));
    }
    Ok(Cover { module: pi.source.clone(), pi, summands })
}

pub fn is_projective(md: &AModule) -> Result<bool> {
    Ok(projective_cover(md)?.module.size() == md.size())
}

/// Number of indecomposable summands in a projective cover (the length of the top).
pub fn top_length(md: &AModule) -> Result<usize> {
    Ok(projective_cover(md)?.summands.len())
}

fn build_simples(alg: &Alg) -> Result<Vec<AModule>> {
    let mut out: Vec<AModule> = Vec::new();
    for p in indecomposable_projectives(alg)? {
        let s = radical_quotient(&p.module)?.module;
        let mut fresh = true;
        for t in &out {
            if is_isomorphic(t, &s)?.is_some() {
                fresh = false;
                break;
            }
        }
        if fresh {
            out.push(s);
        }
    }
    Ok(out)
}

/// The simple modules: A/rad A when local, the tops of the A·eᵢ otherwise.
pub fn simples(alg: &Alg) -> Result<&[AModule]> {
    alg.memo.simples.get_or_init(|| build_simples(alg)).as_ref().map(|v| v.as_slice()).map_err(Clone::clone)
}

/// The simple top of the i-th indecomposable projective.
pub fn simple_top(alg: &Alg, i: usize) -> Result<AModule> {
    let projs = indecomposable_projectives(alg)?;
    let p = projs.get(i).ok_or_else(|| Error::Invalid(format!("no projective number {i}")))?;
    Ok(radical_quotient(&p.module)?.module)
}
