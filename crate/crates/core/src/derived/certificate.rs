//! Certificates of absolute acyclicity: trees of totalizations, cones,
//! homotopy equivalences, summands and shifts, each with checkable side conditions.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::algebra::submodule::image_subgroup;
use crate::algebra::{is_injective, is_projective, AHom, AModule, Alg};
use crate::complex::sub::subcomplex_ses;
use crate::complex::{
    cone, hom_k, homotopy_inverse, signed, homotopy_solve, is_acyclic, is_contractible, tot_ses, ChainMap, Complex, ComplexSes,
    Homotopy, MapData,
};
use crate::error::{Error, Result};
use crate::linalg::{Subgroup, ZmMatrix};

#[derive(Clone, Debug)]
pub enum Certificate {
    Tot { ses: ComplexSes },
    Cone { map: ChainMap, source: Box<Certificate>, target: Box<Certificate> },
    /// Certifies Y from a certificate of X, with to: X → Y, from: Y → X,
    /// hx: from∘to ≃ id_X and hy: to∘from ≃ id_Y.
    HtpyEquiv { child: Box<Certificate>, to: ChainMap, from: ChainMap, hx: Homotopy, hy: Homotopy },
    /// Certifies Y from X with incl: Y → X, retr: X → Y and retr∘incl = id_Y.
    Summand { child: Box<Certificate>, incl: ChainMap, retr: ChainMap },
    Shift { k: i64, child: Box<Certificate> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertFailure {
    /// Child indices from the root.
    pub path: Vec<usize>,
    pub node: &'static str,
    pub reason: String,
}

impl fmt::Display for CertFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} node at {:?}: {}", self.node, self.path, self.reason)
    }
}

impl From<CertFailure> for Error {
    fn from(c: CertFailure) -> Error {
        Error::Verification(c.to_string())
    }
}

impl Certificate {
    /// TOT of 0 → 0 → 0 → 0, certifying the zero complex.
    pub fn zero(alg: &Alg) -> Certificate {
        let z = Complex::zero(alg);
        let id = ChainMap::identity(&z);
        Certificate::Tot { ses: ComplexSes { i: id.clone(), p: id } }
    }

    pub fn node(&self) -> &'static str {
        match self {
            Certificate::Tot { .. } => "TOT",
            Certificate::Cone { .. } => "CONE",
            Certificate::HtpyEquiv { .. } => "HTPY_EQUIV",
            Certificate::Summand { .. } => "SUMMAND",
            Certificate::Shift { .. } => "SHIFT",
        }
    }

    pub fn children(&self) -> Vec<&Certificate> {
        match self {
            Certificate::Tot { .. } => vec![],
            Certificate::Cone { source, target, .. } => vec![source, target],
            Certificate::HtpyEquiv { child, .. } | Certificate::Summand { child, .. } | Certificate::Shift { child, .. } => vec![child],
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.children().iter().map(|c| c.size()).sum::<usize>()
    }

    /// The complex this certificate claims, without checking anything.
    pub fn claimed(&self) -> Complex {
        match self {
            Certificate::Tot { ses } => tot_ses(ses).unwrap_or_else(|_| ses.mid().clone()),
            Certificate::Cone { map, .. } => cone(map).complex,
            Certificate::HtpyEquiv { to, .. } => to.target.clone(),
            Certificate::Summand { retr, .. } => retr.target.clone(),
            Certificate::Shift { k, child } => child.claimed().shift(*k),
        }
    }

    pub fn to_json(&self) -> Value {
        let kids: Vec<Value> = self.children().iter().map(|c| c.to_json()).collect();
        let mut v = match self {
            Certificate::Tot { ses } => json!({"ses": {"i": ses.i.to_data(), "p": ses.p.to_data()}}),
            Certificate::Cone { map, .. } => json!({"map": map.to_data()}),
            Certificate::HtpyEquiv { to, from, hx, hy, .. } => {
                json!({"to": to.to_data(), "from": from.to_data(), "hx": hx.to_data(), "hy": hy.to_data()})
            }
            Certificate::Summand { incl, retr, .. } => json!({"incl": incl.to_data(), "retr": retr.to_data()}),
            Certificate::Shift { k, .. } => json!({"k": k}),
        };
        v["node"] = json!(self.node());
        v["children"] = Value::Array(kids);
        v
    }

    /// Parses without checking side conditions; `verify_certificate` does that.
    pub fn from_json(alg: &Alg, v: &Value) -> Result<Certificate> {
        let bad = |what: &str| Error::Invalid(format!("certificate: {what}"));
        let node = v.get("node").and_then(Value::as_str).ok_or_else(|| bad("missing node"))?;
        let kids: Vec<Certificate> = v
            .get("children")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing children"))?
            .iter()
            .map(|c| Certificate::from_json(alg, c))
            .collect::<Result<_>>()?;
        let map = |key: &str| -> Result<ChainMap> {
            let d: MapData = serde_json::from_value(v.get(key).cloned().ok_or_else(|| bad(key))?).map_err(|e| bad(&e.to_string()))?;
            loose_map(alg, &d)
        };
        let htpy = |key: &str| -> Result<Homotopy> {
            let d: MapData = serde_json::from_value(v.get(key).cloned().ok_or_else(|| bad(key))?).map_err(|e| bad(&e.to_string()))?;
            Homotopy::from_data(alg, &d)
        };
        let count = kids.len();
        let arity = |n: usize| if count == n { Ok(()) } else { Err(bad(&format!("{node} needs {n} children"))) };
        let mut kids = kids.into_iter().map(Box::new);
        Ok(match node {
            "TOT" => {
                arity(0)?;
                let ses = v.get("ses").ok_or_else(|| bad("ses"))?;
                let get = |key: &str| -> Result<ChainMap> {
                    let d: MapData = serde_json::from_value(ses.get(key).cloned().ok_or_else(|| bad(key))?).map_err(|e| bad(&e.to_string()))?;
                    loose_map(alg, &d)
                };
                Certificate::Tot { ses: ComplexSes { i: get("i")?, p: get("p")? } }
            }
            "CONE" => {
                arity(2)?;
                Certificate::Cone { map: map("map")?, source: kids.next().unwrap(), target: kids.next().unwrap() }
            }
            "HTPY_EQUIV" => {
                arity(1)?;
                Certificate::HtpyEquiv { child: kids.next().unwrap(), to: map("to")?, from: map("from")?, hx: htpy("hx")?, hy: htpy("hy")? }
            }
            "SUMMAND" => {
                arity(1)?;
                Certificate::Summand { child: kids.next().unwrap(), incl: map("incl")?, retr: map("retr")? }
            }
            "SHIFT" => {
                arity(1)?;
                let k = v.get("k").and_then(Value::as_i64).ok_or_else(|| bad("k"))?;
                Certificate::Shift { k, child: kids.next().unwrap() }
            }
            other => return Err(bad(&format!("unknown node {other}"))),
        })
    }
}

/// Shapes and module compatibility only; commutation is left to the verifier.
fn loose_map(alg: &Alg, d: &MapData) -> Result<ChainMap> {
    let (s, t) = (Complex::from_data(alg, &d.source)?, Complex::from_data(alg, &d.target)?);
    for (&n, f) in &d.maps {
        AHom::new(&s.module(n), &t.module(n), f.clone())?;
    }
    Ok(ChainMap { source: s, target: t, maps: d.maps.clone() })
}

pub fn verify_certificate(cert: &Certificate) -> std::result::Result<Complex, CertFailure> {
    verify_at(cert, &mut Vec::new())
}

fn verify_at(cert: &Certificate, path: &mut Vec<usize>) -> std::result::Result<Complex, CertFailure> {
    let fail = |path: &Vec<usize>, reason: String| CertFailure { path: path.clone(), node: cert.node(), reason };
    let child = |i: usize, c: &Certificate, path: &mut Vec<usize>| {
        path.push(i);
        let r = verify_at(c, path);
        path.pop();
        r
    };
    let commutes = |f: &ChainMap, what: &str, path: &Vec<usize>| {
        f.check_commutes().map_err(|e| fail(path, format!("{what}: {e}")))
    };
    match cert {
        Certificate::Tot { ses } => {
            let e = ComplexSes::new(&ses.i, &ses.p).map_err(|e| fail(path, e.to_string()))?;
            tot_ses(&e).map_err(|e| fail(path, e.to_string()))
        }
        Certificate::Cone { map, source, target } => {
            let x = child(0, source, path)?;
            let y = child(1, target, path)?;
            if x != map.source || y != map.target {
                return Err(fail(path, "map does not run between the certified complexes".into()));
            }
            commutes(map, "map", path)?;
            Ok(cone(map).complex)
        }
        Certificate::HtpyEquiv { child: c, to, from, hx, hy } => {
            let x = child(0, c, path)?;
            if x != to.source || to.target != from.source || from.target != x {
                return Err(fail(path, "maps do not match the certified complex".into()));
            }
            commutes(to, "to", path)?;
            commutes(from, "from", path)?;
            let (y, idx, idy) = (&to.target, ChainMap::identity(&x), ChainMap::identity(&to.target));
            if hx.source != x || hx.target != x || hy.source != *y || hy.target != *y {
                return Err(fail(path, "homotopies have the wrong source or target".into()));
            }
            hx.verify(&from.compose(to), &idx).map_err(|e| fail(path, format!("from∘to ≃ id: {e}")))?;
            hy.verify(&to.compose(from), &idy).map_err(|e| fail(path, format!("to∘from ≃ id: {e}")))?;
            Ok(y.clone())
        }
        Certificate::Summand { child: c, incl, retr } => {
            let x = child(0, c, path)?;
            if incl.target != x || retr.source != x || incl.source != retr.target {
                return Err(fail(path, "maps do not match the certified complex".into()));
            }
            commutes(incl, "incl", path)?;
            commutes(retr, "retr", path)?;
            if !retr.compose(incl).equals(&ChainMap::identity(&incl.source)) {
                return Err(fail(path, "retr∘incl is not the identity".into()));
            }
            Ok(incl.source.clone())
        }
        Certificate::Shift { k, child: c } => Ok(child(0, c, path)?.shift(*k)),
    }
}

/// Splits off K = (C^lo ≅ B^{lo+1}) and recurses on C/K.
pub fn certify_bounded_acyclic(c: &Complex) -> Result<Certificate> {
    if !is_acyclic(c) {
        return Err(Error::NotAcyclic("cannot certify a complex with cohomology".into()));
    }
    let c = c.trimmed();
    let alg = &c.alg;
    if c.is_empty() {
        return Ok(Certificate::zero(alg));
    }
    if is_contractible(&c).is_some() {
        let z = Complex::zero(alg);
        let (to, from) = (ChainMap::zero(&z, &c), ChainMap::zero(&c, &z));
        let hy = homotopy_solve(&ChainMap::zero(&c, &c), &ChainMap::identity(&c))
            .ok_or_else(|| Error::Verification("contracting homotopy vanished".into()))?;
        return Ok(Certificate::HtpyEquiv { child: Box::new(Certificate::zero(alg)), to, from, hx: Homotopy::zero(&z, &z), hy });
    }
    let lo = c.lo;
    let mut groups = BTreeMap::new();
    groups.insert(lo, Subgroup::full(&c.module(lo).add));
    groups.insert(lo + 1, image_subgroup(&c.diff(lo)));
    let e = subcomplex_ses(&c, &groups)?;
    let t = tot_ses(&e)?;
    let mq = e.quot().trimmed();
    let cert_m = certify_bounded_acyclic(&mq)?;
    let mq = e.quot();
    // ι'ⁿ: Mⁿ → T^{n+1}, (−1)ⁿ into the last block
    let ts = t.shift(1);
    let m = alg.m;
    let (k, l) = (e.sub(), e.mid());
    let iota = ChainMap::from_fn(mq, &ts, |n| {
        let r = mq.rank(n);
        let id = ZmMatrix::identity(m, r).scale(signed(n, m));
        ZmMatrix::from_blocks(m, &[k.rank(n + 2), l.rank(n + 1), r], &[r], &[vec![None], vec![None], vec![Some(&id)]])
    });
    let co = cone(&iota).complex;
    let x = co.shift(-1);
    // g(c) = (p(c), (0, c, 0)) into Xⁿ = Mⁿ ⊕ K^{n+1} ⊕ Cⁿ ⊕ M^{n−1}
    let g = ChainMap::from_fn(&c, &x, |n| {
        let rows = [mq.rank(n), k.rank(n + 1), c.rank(n), mq.rank(n - 1)];
        let p = e.p.mat(n);
        let id = ZmMatrix::identity(m, c.rank(n));
        ZmMatrix::from_blocks(m, &rows, &[c.rank(n)], &[vec![Some(&p)], vec![None], vec![Some(&id)], vec![None]])
    });
    g.check_commutes().map_err(|e| Error::Verification(format!("comparison map into the cone: {e}")))?;
    let (f, hc, hxx) = homotopy_inverse(&g).ok_or_else(|| Error::Verification("comparison map is not a homotopy equivalence".into()))?;
    let cert_t = Certificate::Tot { ses: e.clone() };
    let cert_x = Certificate::Shift {
        k: -1,
        child: Box::new(Certificate::Cone {
            map: iota,
            source: Box::new(cert_m),
            target: Box::new(Certificate::Shift { k: 1, child: Box::new(cert_t) }),
        }),
    };
    Ok(Certificate::HtpyEquiv { child: Box::new(cert_x), to: f, from: g, hx: hxx, hy: hc })
}

/// Result of a finite Hom_K vanishing check.
#[derive(Clone, Debug)]
pub enum Vanishing {
    Ok { chain_maps: u128 },
    Counterexample(ChainMap),
}

impl Vanishing {
    pub fn is_ok(&self) -> bool {
        matches!(self, Vanishing::Ok { .. })
    }
}

fn all_terms(c: &Complex, test: impl Fn(&AModule) -> Result<bool>, what: &str) -> Result<()> {
    for n in c.degrees() {
        if !test(&c.module(n))? {
            return Err(Error::Invalid(format!("term in degree {n} is not {what}")));
        }
    }
    Ok(())
}

/// Hom_K(A, I) for a certified A and a bounded complex I of injectives.
pub fn hom_k_vanishing(cert: &Certificate, i: &Complex) -> Result<Vanishing> {
    let a = verify_certificate(cert)?;
    all_terms(i, is_injective, "injective")?;
    let h = hom_k(&a, i);
    Ok(match h.generators().into_iter().next() {
        None => Vanishing::Ok { chain_maps: h.chain_maps },
        Some(f) => Vanishing::Counterexample(f),
    })
}

/// Hom_K(P, A) for a bounded complex P of projectives and a certified A.
pub fn hom_k_vanishing_projective(p: &Complex, cert: &Certificate) -> Result<Vanishing> {
    let a = verify_certificate(cert)?;
    all_terms(p, is_projective, "projective")?;
    let h = hom_k(p, &a);
    Ok(match h.generators().into_iter().next() {
        None => Vanishing::Ok { chain_maps: h.chain_maps },
        Some(f) => Vanishing::Counterexample(f),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::cover::simple_top;
    use crate::algebra::submodule::image;
    use crate::algebra::preset;

    fn three_term(a: &Alg) -> Complex {
        let r = AModule::regular(a);
        let eps = AHom::new(&r, &r, a.right_mult(&[0, 1])).unwrap();
        let (soc, _) = image(&eps);
        let k = simple_top(a, 0).unwrap();
        let inc = soc.incl.compose(&crate::algebra::is_isomorphic(&k, &soc.module).unwrap().unwrap());
        let q = crate::algebra::cokernel(&inc);
        let to_k = crate::algebra::is_isomorphic(&q.module, &k).unwrap().unwrap().compose(&q.proj);
        Complex::from_homs(0, &[inc, to_k]).unwrap()
    }

    #[test]
    fn identity_two_term() {
        let a = preset("zmod:4").unwrap();
        let r = AModule::regular(&a);
        let c = Complex::from_homs(0, &[AHom::identity(&r)]).unwrap();
        let cert = certify_bounded_acyclic(&c).unwrap();
        assert_eq!(cert.node(), "HTPY_EQUIV");
        assert_eq!(verify_certificate(&cert).unwrap(), c);
    }

    #[test]
    fn nonsplit_three_term() {
        let a = preset("dual_numbers:2").unwrap();
        let c = three_term(&a);
        assert!(is_acyclic(&c) && is_contractible(&c).is_none());
        let cert = certify_bounded_acyclic(&c).unwrap();
        assert_eq!(verify_certificate(&cert).unwrap(), c);
        let back = Certificate::from_json(&a, &cert.to_json()).unwrap();
        assert_eq!(back.to_json(), cert.to_json());
        assert_eq!(verify_certificate(&back).unwrap(), c);
        let reg = Complex::single(&AModule::regular(&a), 0);
        assert!(hom_k_vanishing(&cert, &reg).unwrap().is_ok());
        assert!(hom_k_vanishing_projective(&reg, &cert).unwrap().is_ok());
    }

    #[test]
    fn zero_and_errors() {
        let a = preset("zmod:4").unwrap();
        let z = Complex::zero(&a);
        assert!(verify_certificate(&certify_bounded_acyclic(&z).unwrap()).unwrap().is_empty());
        let single = Complex::single(&AModule::regular(&a), 0);
        assert!(matches!(certify_bounded_acyclic(&single), Err(Error::NotAcyclic(_))));
    }

    #[test]
    fn broken_cone_is_reported() {
        let a = preset("zmod:4").unwrap();
        let r = AModule::regular(&a);
        let c = Complex::from_homs(0, &[AHom::identity(&r)]).unwrap();
        let cert = certify_bounded_acyclic(&c).unwrap();
        let mut maps = BTreeMap::new();
        maps.insert(0, ZmMatrix::identity(4, 1));
        let bad = ChainMap { source: c.clone(), target: c.clone(), maps };
        let cone_cert = Certificate::Cone { map: bad, source: Box::new(cert.clone()), target: Box::new(cert) };
        let err = verify_certificate(&cone_cert).unwrap_err();
        assert_eq!((err.node, err.path.clone()), ("CONE", vec![]));
        // round trip keeps the broken map so the verifier still sees it
        let back = Certificate::from_json(&a, &cone_cert.to_json()).unwrap();
        assert_eq!(verify_certificate(&back).unwrap_err(), err);
    }

    #[test]
    fn summand_node() {
        let a = preset("zmod:4").unwrap();
        let r = AModule::regular(&a);
        let c = Complex::from_homs(0, &[AHom::identity(&r)]).unwrap();
        let cert = certify_bounded_acyclic(&c).unwrap();
        let s = Certificate::Summand { child: Box::new(cert), incl: ChainMap::identity(&c), retr: ChainMap::identity(&c) };
        assert_eq!(verify_certificate(&s).unwrap(), c);
        let wrong = Certificate::Summand {
            child: Box::new(certify_bounded_acyclic(&c).unwrap()),
            incl: ChainMap::identity(&c),
            retr: ChainMap::identity(&c).scale(3),
        };
        assert_eq!(verify_certificate(&wrong).unwrap_err().node, "SUMMAND");
    }
}
