//! Isomorphism search by bounded enumeration of Hom(M, N).

use super::homspace::hom;
use super::module::{AHom, AModule};
use crate::config;
use crate::error::{Error, Result};

fn group_invariants(md: &AModule) -> Vec<u64> {
    // elementary divisors of ⊕ ℤ/dᵢ, via the canonical quotient presentation
    let z = crate::linalg::group::Subgroup::zero(&md.add);
    let mut inv = crate::linalg::group::quotient(&z).group.orders;
    inv.sort_unstable();
    inv
}

/// Some isomorphism M → N, or None when none exists.
pub fn is_isomorphic(m: &AModule, n: &AModule) -> Result<Option<AHom>> {
    m.check_same_algebra(n)?;
    if m.size() != n.size() || group_invariants(m) != group_invariants(n) {
        return Ok(None);
    }
    if m == n {
        return Ok(Some(AHom::identity(m)));
    }
    let h = hom(m, n);
    let cap = config::enum_cap();
    if h.size() > cap {
        return Err(Error::SearchBoundExceeded { what: "Hom space for isomorphism search".into(), needed: h.size(), cap });
    }
    for c in h.group.elements() {
        let f = h.element(&c);
        if f.is_mono() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::preset;
    use crate::algebra::radical::{radical, radical_quotient};

    #[test]
    fn syzygy_of_k_is_k() {
        let a = preset("dual_numbers:2").unwrap();
        let r = AModule::regular(&a);
        let k = radical_quotient(&r).unwrap().module;
        let omega = radical(&r).unwrap().module;
        let f = is_isomorphic(&omega, &k).unwrap().unwrap();
        assert!(f.is_iso() && f.is_linear());
        assert!(is_isomorphic(&k, &r).unwrap().is_none());
        assert!(is_isomorphic(&r, &r).unwrap().is_some());
    }

    #[test]
    fn same_size_not_isomorphic() {
        // over F2 × F2 the two simples have the same size but differ
        let a = preset("product:zmod:2,zmod:2").unwrap();
        let s = crate::algebra::cover::simples(&a).unwrap();
        assert_eq!(s.len(), 2);
        assert!(is_isomorphic(&s[0], &s[1]).unwrap().is_none());
    }
}
