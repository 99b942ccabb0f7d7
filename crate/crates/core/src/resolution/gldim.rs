//! Bounded search for the (left) global dimension.

use serde::Serialize;

use super::projective::minimal_projective_resolution;
use crate::algebra::{simples, Alg};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GlDim {
    Finite { value: usize },
    /// Ω^t(S) ≅ Ω^s(S) with Ω^s(S) ≠ 0 for the given simple.
    Infinite { simple: usize, s: usize, t: usize },
    /// Every simple was resolved to `bound` terms without closing or repeating.
    Unknown { bound: usize },
}

/// max pd(S) over the simples, when all of them are ≤ `bound`.
pub fn gldim_bounded(alg: &Alg, bound: usize) -> Result<GlDim> {
    let mut best = 0;
    let mut open = false;
    for (i, s) in simples(alg)?.iter().enumerate() {
        let r = minimal_projective_resolution(s, bound + 1)?;
        match r.length() {
            Some(len) if len <= bound => best = best.max(len),
            _ => {
                if let Some(p) = &r.period {
                    return Ok(GlDim::Infinite { simple: i, s: p.s, t: p.t });
                }
                open = true;
            }
        }
    }
    Ok(if open { GlDim::Unknown { bound } } else { GlDim::Finite { value: best } })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::preset;

    #[test]
    fn small_examples() {
        assert_eq!(gldim_bounded(&preset("product:zmod:2,zmod:2").unwrap(), 3).unwrap(), GlDim::Finite { value: 0 });
        assert_eq!(gldim_bounded(&preset("path_algebra:1->2").unwrap(), 3).unwrap(), GlDim::Finite { value: 1 });
        assert_eq!(gldim_bounded(&preset("dual_numbers:2").unwrap(), 3).unwrap(), GlDim::Infinite { simple: 0, s: 1, t: 2 });
        assert_eq!(gldim_bounded(&preset("zmod:4").unwrap(), 3).unwrap(), GlDim::Infinite { simple: 0, s: 1, t: 2 });
        assert_eq!(gldim_bounded(&preset("zmod:6").unwrap(), 2).unwrap(), GlDim::Finite { value: 0 });
    }

    #[test]
    fn serializes_with_tag() {
        let v = serde_json::to_value(GlDim::Finite { value: 1 }).unwrap();
        assert_eq!(v["kind"], "finite");
    }
}
