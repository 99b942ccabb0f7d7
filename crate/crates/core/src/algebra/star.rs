//! Finite quotients through which a given monomorphism stays injective.

use super::duality::{dual, dual_hom_with, dual_with};
use super::ideals::is_quasi_frobenius;
use super::module::{AHom, AModule};
use super::submodule::{close_under_action, Quot};
use crate::error::{Error, Result};
use crate::linalg::group::{kernel_hom, AdditivePresentation, Subgroup};
use crate::linalg::ZmMatrix;

#[derive(Clone, Debug)]
pub struct StarWitness {
    pub quotient: AModule,
    pub q: AHom,
    /// M ↪ D(A^op)^t obtained by dualizing a surjection onto D(M).
    pub embedding: AHom,
    /// Summands of D(A^op)^t on which j(N) is nonzero.
    pub coordinates: Vec<usize>,
}

/// Embed M into D(A^op)^t, keep the summands J touched by j(N), and return
/// q: M ↠ M/U with U = {x : x has zero J-components}.
pub fn star_witness(j: &AHom) -> Result<StarWitness> {
    if !is_quasi_frobenius(&j.source.alg)? {
        return Err(Error::NotQuasiFrobenius);
    }
    if !j.is_mono() {
        return Err(Error::NotMono);
    }
    let md = &j.target;
    let alg = &md.alg;
    let op = alg.opposite();
    let dm = dual_with(md, &op);
    // greedy A^op-generators of D(M) among the dual coordinate functionals
    let mut span = Subgroup::zero(&dm.add);
    let mut gens = Vec::new();
    for c in 0..dm.rank() {
        let mut v = vec![0u64; dm.rank()];
        v[c] = 1;
        let v = dm.reduce_vec(v);
        if !span.contains(&v) {
            span = close_under_action(&dm, span.sum(&Subgroup::from_gens(&dm.add, std::slice::from_ref(&v))));
            gens.push(v);
        }
    }
    let t = gens.len();
    let sigma = free_map(&dm, &gens);
    let ddm = dual_with(&dm, alg);
    debug_assert!(&ddm == md);
    let dfree = dual(&sigma.source);
    let dfree = AModule::from_parts(alg, dfree.add.clone(), dfree.action.clone());
    let iota = dual_hom_with(&sigma, &dfree, &ddm);
    let iota = AHom::from_parts(md, &dfree, iota.mat);
    if !iota.is_mono() {
        return Err(Error::Verification("double-dual embedding is not injective".into()));
    }
    let r = alg.rank();
    let block = |s: usize| ZmMatrix::from_fn(alg.m, r, dfree.rank(), |a, b| u64::from(b == s * r + a));
    let composite = iota.compose(j);
    let coordinates: Vec<usize> = (0..t).filter(|&s| !block(s).mul(&composite.mat).reduced_rows(&alg.orders).is_zero()).collect();
    let u = if coordinates.is_empty() {
        Subgroup::full(&md.add)
    } else {
        let stacked = coordinates.iter().map(|&s| block(s).mul(&iota.mat)).reduce(|a, b| a.vstack(&b)).unwrap();
        let target = AdditivePresentation { m: alg.m, orders: coordinates.iter().flat_map(|_| alg.orders.iter().copied()).collect() };
        kernel_hom(&md.add, &target, &stacked)
    };
    let quot = Quot::new(md, &u);
    let q = quot.proj.clone();
    if !q.compose(j).is_mono() {
        return Err(Error::Verification("q∘j is not injective".into()));
    }
    Ok(StarWitness { quotient: quot.module, q, embedding: iota, coordinates })
}

/// (A^op)^t → D(M), sending the s-th free generator to gₛ.
fn free_map(dm: &AModule, gens: &[Vec<u64>]) -> AHom {
    let alg = &dm.alg;
    let free = AModule::regular(alg).power(gens.len());
    let mut cols = Vec::new();
    for g in gens {
        for b in 0..alg.rank() {
            cols.push(dm.act(&alg.basis_vec(b), g));
        }
    }
    let mat = ZmMatrix::from_fn(alg.m, dm.rank(), free.rank(), |i, c| cols[c][i]);
    AHom::from_parts(&free, dm, mat)
}
