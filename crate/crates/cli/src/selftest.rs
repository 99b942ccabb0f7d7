//! A fast pass over the main invariants for every sample preset.

use derivedlab::algebra::{is_injective, is_projective, is_quasi_frobenius, preset, simples, AModule, SAMPLE_PRESETS};
use derivedlab::complex::{is_acyclic, tot_ses, Complex};
use derivedlab::counterexample::{run_counterexample_experiment, CounterexampleOptions};
use derivedlab::derived::{certify_bounded_acyclic, hom_d, verify_certificate};
use derivedlab::random::{random_acyclic_complex, random_complex_ses, random_module, random_nonzero_module, rng, DetRng};
use derivedlab::resolution::{ext, ext1_to_ses, minimal_projective_resolution, ses_to_ext1};
use derivedlab::Result;
use serde_json::{json, Value};

use crate::{CliResult, Output};

const TRIALS: usize = 12;

type Check<'a> = Box<dyn FnMut(&mut DetRng) -> Result<String> + 'a>;

fn tot_acyclic(r: &mut DetRng, name: &str) -> Result<String> {
    let a = preset(name)?;
    for t in 0..TRIALS {
        let e = random_complex_ses(r, &a, -1, 1, 2)?;
        if !is_acyclic(&tot_ses(&e)?) {
            return Err(derivedlab::Error::Verification(format!("trial {t}: totalization has cohomology")));
        }
    }
    Ok(format!("{TRIALS} sequences"))
}

fn yoneda(r: &mut DetRng, name: &str) -> Result<String> {
    let a = preset(name)?;
    let mut classes = 0;
    for t in 0..TRIALS {
        // random modules are often free, and over QF rings that makes Ext¹ vanish
        let ss = simples(&a)?;
        let m = if t % 2 == 0 { random_nonzero_module(r, &a, 3) } else { ss[(t / 2) % ss.len()].clone() };
        let n = &ss[t % ss.len()];
        let g = ext(&m, n, 1)?;
        if g.size() > 32 {
            continue;
        }
        for c in g.elements() {
            let ses = ext1_to_ses(&c)?;
            let back = ses_to_ext1(&ses, &c.resolution)?;
            if g.coords(&back) != g.coords(&c) || ses.is_split()? != g.is_trivial(&c).unwrap_or(false) {
                return Err(derivedlab::Error::Verification(format!("trial {t}: class changed on the round trip")));
            }
            classes += 1;
        }
    }
    Ok(format!("{classes} classes"))
}

fn resolutions(name: &str) -> Result<String> {
    let a = preset(name)?;
    for (i, s) in simples(&a)?.iter().enumerate() {
        let r = minimal_projective_resolution(s, 4)?;
        r.check_exact()?;
        if !r.check_minimal()? {
            return Err(derivedlab::Error::Verification(format!("resolution of S{i} is not minimal")));
        }
    }
    Ok("simples to depth 4".into())
}

fn hom_d_is_ext(r: &mut DetRng, name: &str) -> Result<String> {
    let a = preset(name)?;
    for t in 0..TRIALS {
        let m = random_nonzero_module(r, &a, 2);
        let n = random_module(r, &a, 2);
        for k in 0..=2 {
            let e = ext(&m, &n, k)?;
            let h = hom_d(&Complex::single(&m, 0), &Complex::single(&n, -(k as i64)), 8)?;
            if e.size() != h.size() {
                return Err(derivedlab::Error::Verification(format!("trial {t}, k = {k}: |Ext| = {} but |Hom_D| = {}", e.size(), h.size())));
            }
        }
    }
    Ok(format!("{TRIALS} pairs, k ≤ 2"))
}

fn certificates(r: &mut DetRng, name: &str) -> Result<String> {
    let a = preset(name)?;
    for _ in 0..TRIALS {
        let c = random_acyclic_complex(r, &a, -1, 2, 2)?;
        verify_certificate(&certify_bounded_acyclic(&c)?)?;
    }
    Ok(format!("{TRIALS} acyclic complexes"))
}

fn qf_classes(name: &str) -> Result<String> {
    let a = preset(name)?;
    let qf = is_quasi_frobenius(&a)?;
    let mods: Vec<AModule> = simples(&a)?.to_vec();
    for (i, s) in mods.iter().enumerate() {
        if qf && is_projective(s)? != is_injective(s)? {
            return Err(derivedlab::Error::Verification(format!("S{i} separates projectives from injectives over a QF ring")));
        }
    }
    Ok(format!("quasi-Frobenius: {qf}"))
}

fn counterexample(name: &str) -> Result<String> {
    let a = preset(name)?;
    let opts = CounterexampleOptions { trials: 10, ..Default::default() };
    let rep = run_counterexample_experiment(&a, name, 3, &opts)?;
    if !rep.passed() {
        return Err(derivedlab::Error::Verification("report has a failing column".into()));
    }
    Ok(format!("growth {:?}", rep.growth))
}

pub fn run(seed: u64) -> CliResult<Output> {
    let mut r = rng(seed);
    let mut rows: Vec<Value> = Vec::new();
    let mut all = true;
    for name in SAMPLE_PRESETS {
        let a = preset(name)?;
        let local_qf = is_quasi_frobenius(&a)? && a.is_local()? && !simples(&a)?.iter().all(|s| is_projective(s).unwrap_or(true));
        let mut checks: Vec<(&str, Check)> = vec![
            ("tot_acyclic", Box::new(|r| tot_acyclic(r, name))),
            ("yoneda_round_trip", Box::new(|r| yoneda(r, name))),
            ("minimal_resolutions", Box::new(|_| resolutions(name))),
            ("hom_d_equals_ext", Box::new(|r| hom_d_is_ext(r, name))),
            ("certificates_verify", Box::new(|r| certificates(r, name))),
            ("qf_projective_injective", Box::new(|_| qf_classes(name))),
        ];
        if local_qf {
            checks.push(("counterexample_n3", Box::new(|_| counterexample(name))));
        }
        for (check, f) in checks.iter_mut() {
            let res = f(&mut r);
            all &= res.is_ok();
            let (passed, detail) = match res {
                Ok(d) => (true, d),
                Err(e) => (false, e.to_string()),
            };
            rows.push(json!({"ring": name, "check": check, "passed": passed, "detail": detail}));
        }
    }
    let mut out = Output::new(json!({"passed": all, "seed": seed, "checks": rows}));
    out.ok = all;
    Ok(out)
}
