//! Subcomplexes and quotient complexes.

use std::collections::BTreeMap;

use super::complex::{ChainMap, Complex};
use super::cone::ComplexSes;
use crate::algebra::submodule::{close_under_action, is_submodule, Quot, Sub};
use crate::error::{Error, Result};
use crate::linalg::group::Subgroup;

/// Per-degree submodules S^n ⊆ C^n with d(S^n) ⊆ S^{n+1}.
pub fn is_subcomplex(c: &Complex, groups: &BTreeMap<i64, Subgroup>) -> bool {
    let get = |n: i64| groups.get(&n).cloned().unwrap_or_else(|| Subgroup::zero(&c.module(n).add));
    c.degrees().all(|n| {
        let s = get(n);
        let next = get(n + 1);
        let d = c.diff(n);
        is_submodule(&c.module(n), &s) && s.gens().iter().all(|g| next.contains(&d.apply(g)))
    })
}

/// Smallest subcomplex containing the given elements.
pub fn generated_subcomplex(c: &Complex, gens: &BTreeMap<i64, Vec<Vec<u64>>>) -> BTreeMap<i64, Subgroup> {
    let mut out = BTreeMap::new();
    let mut carry: Vec<Vec<u64>> = Vec::new();
    for n in c.degrees() {
        let md = c.module(n);
        let mut g = carry;
        g.extend(gens.get(&n).cloned().unwrap_or_default());
        let s = close_under_action(&md, Subgroup::from_gens(&md.add, &g));
        let d = c.diff(n);
        carry = s.gens().iter().map(|x| d.apply(x)).collect();
        out.insert(n, s);
    }
    out
}

/// The subcomplex, its inclusion, the quotient and its projection as one SES.
pub fn subcomplex_ses(c: &Complex, groups: &BTreeMap<i64, Subgroup>) -> Result<ComplexSes> {
    if !is_subcomplex(c, groups) {
        return Err(Error::Invalid("degreewise subgroups do not form a subcomplex".into()));
    }
    let alg = &c.alg;
    let (lo, hi) = (c.lo, c.hi());
    let get = |n: i64| groups.get(&n).cloned().unwrap_or_else(|| Subgroup::zero(&c.module(n).add));
    let subs: Vec<Sub> = (lo..=hi).map(|n| Sub::new(&c.module(n), &get(n))).collect();
    let quots: Vec<Quot> = (lo..=hi).map(|n| Quot::new(&c.module(n), &get(n))).collect();
    let at = |n: i64| (n - lo) as usize;
    let sub_diffs = (lo..hi)
        .map(|n| subs[at(n + 1)].factor(&c.diff(n).compose(&subs[at(n)].incl)).expect("subcomplex").mat)
        .collect();
    let quot_diffs = (lo..hi)
        .map(|n| quots[at(n)].descend(&quots[at(n + 1)].proj.compose(&c.diff(n))).expect("subcomplex").mat)
        .collect();
    let k = Complex::from_parts(alg, lo, subs.iter().map(|s| s.module.clone()).collect(), sub_diffs);
    let q = Complex::from_parts(alg, lo, quots.iter().map(|q| q.module.clone()).collect(), quot_diffs);
    let i = ChainMap::from_parts(&k, c, (lo..=hi).map(|n| (n, subs[at(n)].incl.mat.clone())).collect());
    let p = ChainMap::from_parts(c, &q, (lo..=hi).map(|n| (n, quots[at(n)].proj.mat.clone())).collect());
    ComplexSes::new(&i, &p)
}
