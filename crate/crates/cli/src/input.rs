//! Parsing of the object specs accepted on the command line.
//!
//! Rings: a preset name, `@name` from the session, inline JSON or a JSON file.
//! Modules: `regular`, `zero`, `simple:i`, `projective:i`, `injective:i`,
//! `a+b` for direct sums, `@name`, inline JSON or a file.
//! Complexes: `single:<deg>:<module>`, `resolution:<depth>:<module>`,
//! `@name`, inline JSON or a file.

use std::path::Path;

use derivedlab::algebra::cover::simple_top;
use derivedlab::algebra::{indecomposable_projectives, preset, same_algebra, Alg, AlgebraData, AModule, FinAlgebra, ModuleData};
use derivedlab::complex::{ChainMap, Complex, ComplexData, MapData};
use derivedlab::derived::{Certificate, ELocal, Everything, IdempotentCut, Projectives, Subcategory, Zero};
use derivedlab::resolution::{injective_resolution, minimal_projective_resolution};
use serde::de::DeserializeOwned;

use crate::session::{SessionFile, Stored};
use crate::CliError;

#[derive(Clone, Copy)]
pub enum Kind {
    Module,
    Complex,
    Map,
    Certificate,
}

/// Reads `text` as inline JSON or as the contents of a file.
fn json_or_file<T: DeserializeOwned>(text: &str, what: &str) -> Result<Option<T>, CliError> {
    let t = text.trim();
    let body = if t.starts_with('{') || t.starts_with('[') {
        t.to_string()
    } else if Path::new(t).is_file() {
        std::fs::read_to_string(t).map_err(|e| CliError::input(format!("{what} file {t}: {e}")))?
    } else {
        return Ok(None);
    };
    serde_json::from_str(&body).map(Some).map_err(|e| CliError::input(format!("{what} JSON: {e}")))
}

fn index(s: &str, what: &str) -> Result<usize, CliError> {
    s.trim().parse().map_err(|_| CliError::input(format!("{what}: expected a non-negative integer, got '{s}'")))
}

fn degree(s: &str) -> Result<i64, CliError> {
    s.trim().parse().map_err(|_| CliError::input(format!("expected a degree, got '{s}'")))
}

pub fn coords(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',').map(|x| x.trim().parse().map_err(|_| CliError::input(format!("bad coordinate '{x}'")))).collect()
}

pub struct Inputs<'a> {
    pub session: &'a SessionFile,
    pub ring: Option<&'a str>,
}

impl<'a> Inputs<'a> {
    fn stored_ring(&self, kind: Kind, name: &str) -> Option<&'a str> {
        let s = &self.session.data;
        let r = match kind {
            Kind::Module => s.modules.get(name).map(|x| &x.ring),
            Kind::Complex => s.complexes.get(name).map(|x| &x.ring),
            Kind::Map => s.maps.get(name).map(|x| &x.ring),
            Kind::Certificate => s.certificates.get(name).map(|x| &x.ring),
        };
        r.map(String::as_str)
    }

    /// The ring named by --ring, or else by the first session reference among `refs`.
    pub fn ring(&self, refs: &[(Kind, &str)]) -> Result<(Alg, String), CliError> {
        let spec = match self.ring {
            Some(r) => r.to_string(),
            None => refs
                .iter()
                .find_map(|(k, s)| s.strip_prefix('@').and_then(|n| self.stored_ring(*k, n)))
                .ok_or_else(|| CliError::input("--ring is required"))?
                .to_string(),
        };
        let alg = self.load_ring(&spec)?;
        for (k, s) in refs {
            if let Some(r) = s.strip_prefix('@').and_then(|n| self.stored_ring(*k, n)) {
                if !same_algebra(&self.load_ring(r)?, &alg) {
                    return Err(CliError::input(format!("{s} lives over {r}, not {spec}")));
                }
            }
        }
        Ok((alg, spec))
    }

    pub fn load_ring(&self, spec: &str) -> Result<Alg, CliError> {
        if let Some(name) = spec.strip_prefix('@') {
            let d = self.session.data.algebras.get(name).ok_or_else(|| CliError::input(format!("no algebra '{name}' in session")))?;
            return Ok(FinAlgebra::from_data(d)?);
        }
        if let Some(d) = json_or_file::<AlgebraData>(spec, "algebra")? {
            return Ok(FinAlgebra::from_data(&d)?);
        }
        Ok(preset(spec)?)
    }

    fn stored<T: Clone>(&self, map: &std::collections::BTreeMap<String, Stored<T>>, name: &str, what: &str) -> Result<T, CliError> {
        map.get(name).map(|s| s.value.clone()).ok_or_else(|| CliError::input(format!("no {what} '{name}' in session")))
    }

    pub fn module(&self, alg: &Alg, spec: &str) -> Result<AModule, CliError> {
        let spec = spec.trim();
        if let Some(name) = spec.strip_prefix('@') {
            let d = self.stored(&self.session.data.modules, name, "module")?;
            return Ok(AModule::from_data(alg, &d)?);
        }
        if let Some(d) = json_or_file::<ModuleData>(spec, "module")? {
            return Ok(AModule::from_data(alg, &d)?);
        }
        if spec.contains('+') {
            let parts = spec.split('+').map(|p| self.module(alg, p)).collect::<Result<Vec<_>, _>>()?;
            let refs: Vec<&AModule> = parts.iter().collect();
            return Ok(AModule::direct_sum(alg, &refs));
        }
        let (kind, arg) = spec.split_once(':').unwrap_or((spec, ""));
        match kind {
            "regular" | "A" => Ok(AModule::regular(alg)),
            "zero" | "0" => Ok(AModule::zero(alg)),
            "simple" => Ok(simple_top(alg, index(arg, "simple")?)?),
            "projective" => {
                let i = index(arg, "projective")?;
                let ps = indecomposable_projectives(alg)?;
                ps.get(i).map(|p| p.module.clone()).ok_or_else(|| CliError::input(format!("no projective P{i}; there are {}", ps.len())))
            }
            "injective" => {
                let s = simple_top(alg, index(arg, "injective")?)?;
                Ok(injective_resolution(&s, 1)?.term(0))
            }
            _ => Err(CliError::input(format!("unknown module spec '{spec}'"))),
        }
    }

    pub fn complex(&self, alg: &Alg, spec: &str) -> Result<Complex, CliError> {
        let spec = spec.trim();
        if let Some(name) = spec.strip_prefix('@') {
            let d = self.stored(&self.session.data.complexes, name, "complex")?;
            return Ok(Complex::from_data(alg, &d)?);
        }
        if let Some(d) = json_or_file::<ComplexData>(spec, "complex")? {
            return Ok(Complex::from_data(alg, &d)?);
        }
        let mut it = spec.splitn(3, ':');
        match (it.next(), it.next(), it.next()) {
            (Some("single"), Some(deg), Some(m)) => Ok(Complex::single(&self.module(alg, m)?, degree(deg)?)),
            (Some("resolution"), Some(depth), Some(m)) => {
                let r = minimal_projective_resolution(&self.module(alg, m)?, index(depth, "depth")?)?;
                Ok(r.complex.clone())
            }
            _ => Err(CliError::input(format!("unknown complex spec '{spec}'"))),
        }
    }

    pub fn map(&self, alg: &Alg, spec: &str) -> Result<ChainMap, CliError> {
        let spec = spec.trim();
        if let Some(name) = spec.strip_prefix('@') {
            let d = self.stored(&self.session.data.maps, name, "map")?;
            return Ok(ChainMap::from_data(alg, &d)?);
        }
        if let Some(d) = json_or_file::<MapData>(spec, "map")? {
            return Ok(ChainMap::from_data(alg, &d)?);
        }
        if let Some(c) = spec.strip_prefix("identity:") {
            return Ok(ChainMap::identity(&self.complex(alg, c)?));
        }
        Err(CliError::input(format!("unknown map spec '{spec}'")))
    }

    pub fn certificate(&self, alg: &Alg, spec: &str) -> Result<Certificate, CliError> {
        let spec = spec.trim();
        let v: serde_json::Value = if let Some(name) = spec.strip_prefix('@') {
            self.stored(&self.session.data.certificates, name, "certificate")?
        } else {
            json_or_file(spec, "certificate")?.ok_or_else(|| CliError::input(format!("unknown certificate spec '{spec}'")))?
        };
        Ok(Certificate::from_json(alg, &v)?)
    }
}

/// `everything`, `zero`, `projectives`, `elocal:<coords>` or `cut:<coords>`.
pub fn subcategory(alg: &Alg, spec: &str) -> Result<Box<dyn Subcategory>, CliError> {
    let (kind, arg) = spec.trim().split_once(':').unwrap_or((spec.trim(), ""));
    Ok(match kind {
        "everything" | "all" => Box::new(Everything),
        "zero" => Box::new(Zero),
        "projectives" => Box::new(Projectives),
        "elocal" => Box::new(ELocal::new(alg, &coords(arg)?)?),
        "cut" => Box::new(IdempotentCut::new(alg, &coords(arg)?)?),
        _ => return Err(CliError::input(format!("unknown subcategory '{spec}'"))),
    })
}
