//! Seeded generators of random small modules, maps and complexes.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::submodule::{cokernel, kernel};
use crate::algebra::{hom, projective_cover, AHom, AModule, Alg, HomSpace};
use crate::complex::sub::{generated_subcomplex, subcomplex_ses};
use crate::complex::{ChainMap, Complex, ComplexSes};
use crate::error::Result;
use crate::linalg::group::Subgroup;
use crate::linalg::{AdditivePresentation, ZmMatrix};

pub type DetRng = ChaCha8Rng;

pub fn rng(seed: u64) -> DetRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_in(rng: &mut impl Rng, g: &AdditivePresentation) -> Vec<u64> {
    g.orders.iter().map(|&o| rng.gen_range(0..o)).collect()
}

pub fn random_hom_in(rng: &mut impl Rng, h: &HomSpace) -> AHom {
    h.element(&random_in(rng, &h.group))
}

pub fn random_hom(rng: &mut impl Rng, source: &AModule, target: &AModule) -> AHom {
    random_hom_in(rng, &hom(source, target))
}

/// A^k ⊕ ⋯ → A^j determined by a k×j array of algebra elements acting on the right.
pub fn free_map(alg: &Alg, entries: &[Vec<Vec<u64>>], k: usize, j: usize) -> AHom {
    let r = alg.rank();
    let src = AModule::regular(alg).power(k);
    let tgt = AModule::regular(alg).power(j);
    let mut mat = ZmMatrix::zeros(alg.m, j * r, k * r);
    for (s, row) in entries.iter().enumerate() {
        for (t, a) in row.iter().enumerate() {
            let b = alg.right_mult(a);
            for x in 0..r {
                for y in 0..r {
                    mat.set(t * r + x, s * r + y, b.get(x, y));
                }
            }
        }
    }
    AHom::from_parts(&src, &tgt, mat)
}

/// A random cyclic or free-quotient module of additive rank at most `max_rank`.
pub fn random_module(rng: &mut impl Rng, alg: &Alg, max_rank: usize) -> AModule {
    let r = alg.rank().max(1);
    let k = (max_rank / r).max(1);
    let k = rng.gen_range(1..=k);
    let j = rng.gen_range(0..=k);
    let entries: Vec<Vec<Vec<u64>>> = (0..j).map(|_| (0..k).map(|_| random_in(rng, &alg.additive())).collect()).collect();
    let f = free_map(alg, &entries, j, k);
    let q = cokernel(&f).module;
    if rng.gen_bool(0.25) {
        // occasionally a submodule instead
        let g = kernel(&f).module;
        if !g.is_zero() && g.rank() <= max_rank {
            return g;
        }
    }
    q
}

pub fn random_nonzero_module(rng: &mut impl Rng, alg: &Alg, max_rank: usize) -> AModule {
    for _ in 0..64 {
        let m = random_module(rng, alg, max_rank);
        if !m.is_zero() {
            return m;
        }
    }
    AModule::regular(alg)
}

/// Arbitrary differentials: d^n factors through C^n / im d^{n−1}.
pub fn random_complex(rng: &mut impl Rng, alg: &Alg, lo: i64, hi: i64, max_rank: usize) -> Complex {
    let mods: Vec<AModule> = (lo..=hi).map(|_| random_module(rng, alg, max_rank)).collect();
    let mut diffs: Vec<ZmMatrix> = Vec::new();
    let mut prev: Option<AHom> = None;
    for k in 0..mods.len().saturating_sub(1) {
        let src = &mods[k];
        let q = match &prev {
            Some(p) => cokernel(p),
            None => cokernel(&AHom::zero(&AModule::zero(alg), src)),
        };
        let g = if rng.gen_bool(0.2) { AHom::zero(&q.module, &mods[k + 1]) } else { random_hom(rng, &q.module, &mods[k + 1]) };
        let d = g.compose(&q.proj);
        diffs.push(d.mat.clone());
        prev = Some(d);
    }
    Complex::from_parts(alg, lo, mods, diffs)
}

/// Acyclic on [lo, hi], spliced from covers: C^n ↠ Z^{n+1} ↪ C^{n+1}.
pub fn random_acyclic_complex(rng: &mut impl Rng, alg: &Alg, lo: i64, hi: i64, max_rank: usize) -> Result<Complex> {
    if hi <= lo {
        return Ok(Complex::zero(alg));
    }
    let top = random_nonzero_module(rng, alg, max_rank);
    let mut mods = vec![top.clone()];
    let mut diffs = Vec::new();
    // incl: Z^{n+1} ↪ C^{n+1}
    let mut z = top.clone();
    let mut incl = AHom::identity(&top);
    for _n in (lo + 1..hi).rev() {
        let cover = projective_cover(&z)?;
        let extra = if rng.gen_bool(0.3) { random_module(rng, alg, max_rank / 2) } else { AModule::zero(alg) };
        let g = random_hom(rng, &extra, &z);
        let c = AModule::direct_sum(alg, &[&cover.module, &extra]);
        let epi = AHom::from_parts(&c, &z, cover.pi.mat.hstack(&g.mat));
        let d = incl.compose(&epi);
        let k = kernel(&epi);
        mods.push(c);
        diffs.push(d.mat);
        z = k.module;
        incl = k.incl;
    }
    mods.push(z.clone());
    diffs.push(incl.mat.clone());
    mods.reverse();
    diffs.reverse();
    Ok(Complex::from_parts(alg, lo, mods, diffs))
}

/// Terms are sums of injective hulls of simples; each differential kills the previous image.
pub fn random_injective_complex(rng: &mut impl Rng, alg: &Alg, lo: i64, hi: i64, max_summands: usize) -> Result<Complex> {
    let mut hulls = Vec::new();
    for s in crate::algebra::simples(alg)? {
        hulls.push(crate::resolution::injective_resolution(s, 1)?.term(0));
    }
    let mods: Vec<AModule> = (lo..=hi)
        .map(|_| {
            let k = rng.gen_range(0..=max_summands);
            let parts: Vec<&AModule> = (0..k).map(|_| &hulls[rng.gen_range(0..hulls.len())]).collect();
            AModule::direct_sum(alg, &parts)
        })
        .collect();
    let mut diffs = Vec::new();
    let mut prev = AHom::zero(&AModule::zero(alg), &mods[0]);
    for k in 0..mods.len().saturating_sub(1) {
        let q = cokernel(&prev);
        let d = random_hom(rng, &q.module, &mods[k + 1]).compose(&q.proj);
        diffs.push(d.mat.clone());
        prev = d;
    }
    Ok(Complex::from_parts(alg, lo, mods, diffs))
}

/// A random subcomplex of a random complex, as a degreewise SES.
pub fn random_complex_ses(rng: &mut impl Rng, alg: &Alg, lo: i64, hi: i64, max_rank: usize) -> Result<ComplexSes> {
    let l = random_complex(rng, alg, lo, hi, max_rank);
    let mut gens = BTreeMap::new();
    for n in lo..=hi {
        let md = l.module(n);
        let count = rng.gen_range(0..=2);
        gens.insert(n, (0..count).map(|_| random_in(rng, &md.add)).collect::<Vec<_>>());
    }
    let groups = generated_subcomplex(&l, &gens);
    subcomplex_ses(&l, &groups)
}

/// A random chain map, drawn from the group of all chain maps.
pub fn random_chain_map(rng: &mut impl Rng, x: &Complex, y: &Complex) -> ChainMap {
    let hk = crate::complex::hom_k(x, y);
    let z = random_in(rng, hk.cycle_group());
    hk.chain_map_from_cycle(&z)
}

/// The zero subgroup family, handy as a starting point.
pub fn zero_groups(c: &Complex) -> BTreeMap<i64, Subgroup> {
    c.degrees().map(|n| (n, Subgroup::zero(&c.module(n).add))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::preset;
    use crate::complex::is_acyclic;

    #[test]
    fn generators_are_valid() {
        let mut r = rng(7);
        for p in ["dual_numbers:2", "zmod:4", "zmod:6", "path_algebra:1->2"] {
            let a = preset(p).unwrap();
            for _ in 0..10 {
                let m = random_module(&mut r, &a, 4);
                m.validate().unwrap();
                let c = random_complex(&mut r, &a, -1, 2, 4);
                Complex::new(&a, c.lo, c.mods.clone(), c.diffs.clone()).unwrap();
                let ac = random_acyclic_complex(&mut r, &a, 0, 3, 4).unwrap();
                assert!(is_acyclic(&ac), "{p}");
                random_complex_ses(&mut r, &a, 0, 2, 4).unwrap();
                let f = random_chain_map(&mut r, &c, &c);
                f.check_commutes().unwrap();
            }
        }
    }
}
