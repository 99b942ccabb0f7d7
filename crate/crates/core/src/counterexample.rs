//! M_N = B₁ ⊕ ⋯ ⊕ B_N over a quasi-Frobenius ring, where Bₙ is the stretch
//! P_{2n} → ⋯ → P₀ of the minimal resolution of a non-projective simple S,
//! placed in degrees [−n, n].

use serde::Serialize;

use crate::algebra::cover::top_length;
use crate::algebra::radical::induced_on_radical_quotient;
use crate::algebra::ses::split_mono_test;
use crate::algebra::submodule::kernel;
use crate::algebra::{is_isomorphic, is_projective, is_quasi_frobenius, simples, AHom, AModule, Alg};
use crate::complex::{cohomology, Complex};
use crate::error::{Error, Result};
use crate::linalg::ZmMatrix;
use crate::random::{random_hom, rng};
use crate::resolution::{minimal_projective_resolution, Resolution};

/// Bₙ with P_{n−k} in degree k.
pub fn build_b(n: usize, res: &Resolution) -> Result<Complex> {
    if n == 0 {
        return Err(Error::Invalid("n must be positive".into()));
    }
    if !res.closed && res.terms() < 2 * n + 1 {
        return Err(Error::DepthExceeded(format!("B_{n} needs {} resolution terms, have {}", 2 * n + 1, res.terms())));
    }
    let alg = &res.module.alg;
    let mods: Vec<AModule> = (0..=2 * n).rev().map(|i| res.term(i)).collect();
    let diffs: Vec<ZmMatrix> = (1..=2 * n).rev().map(|i| res.d(i).mat).collect();
    let b = Complex::new(alg, -(n as i64), mods, diffs)?;
    let n = n as i64;
    for k in -n..=n {
        let h = cohomology(&b, k);
        let ok = if k == n {
            is_isomorphic(h.module(), &res.module)?.is_some()
        } else if k == -n {
            h.size() == kernel(&b.diff(k)).module.size()
        } else {
            h.is_zero()
        };
        if !ok {
            return Err(Error::Verification(format!("B_{n} has unexpected cohomology in degree {k}")));
        }
    }
    Ok(b)
}

pub fn build_m(big_n: usize, res: &Resolution) -> Result<Complex> {
    let mut m = build_b(1, res)?;
    for n in 2..=big_n {
        m = m.direct_sum(&build_b(n, res)?);
    }
    Ok(m)
}

/// U_{2n} = ker(P_{2n} → P_{2n−1}).
pub fn syzygy_u(res: &Resolution, n: usize) -> AModule {
    kernel(&res.d(2 * n)).module
}

#[derive(Clone, Debug)]
pub struct CounterexampleOptions {
    /// Index into the simples; defaults to the first non-projective one.
    pub simple: Option<usize>,
    pub trials: usize,
    pub seed: u64,
}

impl Default for CounterexampleOptions {
    fn default() -> Self {
        CounterexampleOptions { simple: None, trials: 100, seed: 0 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyRow {
    pub degree: i64,
    pub orders: Vec<u64>,
    pub size: u128,
    pub expected: String,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct NonsplitWitness {
    pub n: usize,
    pub description: String,
    pub sub_size: u128,
    pub ambient_size: u128,
    pub splits: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CounterexampleReport {
    pub ring: String,
    #[serde(rename = "N")]
    pub n: usize,
    pub simple: usize,
    pub cohomology: Vec<CohomologyRow>,
    pub pattern_holds: bool,
    pub minimality: bool,
    pub rigidity_trials: usize,
    pub rigidity_holds: bool,
    pub growth: Vec<usize>,
    pub growth_increments: Vec<usize>,
    pub growth_strict: bool,
    pub nonsplit_witnesses: Vec<NonsplitWitness>,
    /// Steps of the argument checked exactly on M_N.
    pub finite_witnesses: Vec<String>,
    /// Steps that only make sense for the infinite sum and are not checked.
    pub infinitary: Vec<String>,
}

impl CounterexampleReport {
    pub fn passed(&self) -> bool {
        self.pattern_holds && self.minimality && self.rigidity_holds && self.growth_strict && self.nonsplit_witnesses.iter().all(|w| !w.splits)
    }

    pub fn table(&self) -> String {
        let mut out = format!("ring {}  N = {}  simple {}\n", self.ring, self.n, self.simple);
        out.push_str(&format!("{:>6}  {:>8}  {:<14}  {}\n", "degree", "size", "expected", "ok"));
        for r in &self.cohomology {
            out.push_str(&format!("{:>6}  {:>8}  {:<14}  {}\n", r.degree, r.size, r.expected, r.matches));
        }
        out.push_str(&format!("minimality      {}\n", self.minimality));
        out.push_str(&format!("rigidity        {} ({} trials)\n", self.rigidity_holds, self.rigidity_trials));
        out.push_str(&format!("growth          {:?}  strict {}\n", self.growth, self.growth_strict));
        let splits = self.nonsplit_witnesses.iter().filter(|w| w.splits).count();
        out.push_str(&format!("nonsplit        {} of {}\n", self.nonsplit_witnesses.len() - splits, self.nonsplit_witnesses.len()));
        out
    }
}

fn choose_simple(alg: &Alg, pick: Option<usize>) -> Result<(usize, AModule)> {
    let ss = simples(alg)?;
    match pick {
        Some(i) => {
            let s = ss.get(i).ok_or_else(|| Error::Invalid(format!("algebra has {} simples, asked for {i}", ss.len())))?;
            if is_projective(s)? {
                return Err(Error::SIsProjective);
            }
            Ok((i, s.clone()))
        }
        None => {
            for (i, s) in ss.iter().enumerate() {
                if !is_projective(s)? {
                    return Ok((i, s.clone()));
                }
            }
            Err(Error::SIsProjective)
        }
    }
}

fn degree_zero_rigid(m: &Complex, h_deg0: &AHom, h_deg1: &AHom) -> Result<bool> {
    // e⁰ = id + d⁻¹h⁰ + h¹d⁰
    let m0 = m.module(0);
    let e = AHom::identity(&m0).add(&m.diff(-1).compose(h_deg0)).add(&h_deg1.compose(&m.diff(0)));
    let bar = induced_on_radical_quotient(&e)?;
    Ok(bar.is_iso() && bar.sub(&AHom::identity(&bar.source)).is_zero())
}

pub fn run_counterexample_experiment(alg: &Alg, ring: &str, big_n: usize, opts: &CounterexampleOptions) -> Result<CounterexampleReport> {
    if big_n == 0 {
        return Err(Error::Invalid("N must be positive".into()));
    }
    if !is_quasi_frobenius(alg)? {
        return Err(Error::NotQuasiFrobenius);
    }
    let (idx, s) = choose_simple(alg, opts.simple)?;
    let res = minimal_projective_resolution(&s, 2 * big_n + 1)?;
    let m = build_m(big_n, &res)?;
    let nn = big_n as i64;

    let mut rows = Vec::new();
    for k in -nn..=nn {
        let h = cohomology(&m, k);
        let (expected, matches) = if k == 0 {
            ("0".to_string(), h.is_zero())
        } else if k > 0 {
            ("S".to_string(), is_isomorphic(h.module(), &s)?.is_some())
        } else {
            let u = syzygy_u(&res, (-k) as usize);
            (format!("U_{}", -2 * k), is_isomorphic(h.module(), &u)?.is_some())
        };
        rows.push(CohomologyRow { degree: k, orders: h.module().add.orders.clone(), size: h.size(), expected, matches });
    }
    let pattern_holds = rows.iter().all(|r| r.matches);

    let mut minimality = true;
    for k in -nn..nn {
        if !induced_on_radical_quotient(&m.diff(k))?.is_zero() {
            minimality = false;
        }
    }

    let mut r = rng(opts.seed);
    let mut rigidity_holds = true;
    for _ in 0..opts.trials {
        let h0 = random_hom(&mut r, &m.module(0), &m.module(-1));
        let h1 = random_hom(&mut r, &m.module(1), &m.module(0));
        if !degree_zero_rigid(&m, &h0, &h1)? {
            rigidity_holds = false;
        }
    }

    let mut growth = Vec::new();
    let mut increments = Vec::new();
    let mut growth_strict = true;
    for n in 1..=big_n {
        let count = top_length(&build_m(n, &res)?.module(0))?;
        let inc = top_length(&res.term(n))?;
        let prev = growth.last().copied().unwrap_or(0);
        growth_strict &= inc >= 1 && count == prev + inc;
        growth.push(count);
        increments.push(inc);
    }

    let mut witnesses = Vec::new();
    for n in 1..=big_n {
        let k = kernel(&res.d(2 * n));
        witnesses.push(NonsplitWitness {
            n,
            description: format!("U_{} -> P_{}", 2 * n, 2 * n),
            sub_size: k.module.size(),
            ambient_size: res.term(2 * n).size(),
            splits: split_mono_test(&k.incl)?.is_some(),
        });
    }

    let finite_witnesses = [
        "cohomology of M_N in every degree of the window",
        "differentials of M_N vanish on radical quotients",
        "id + dh + hd induces the identity on the degree-zero radical quotient",
        "generator count of the degree-zero radical quotient grows strictly with N",
        "syzygy inclusions into the resolution terms do not split",
    ];
    let infinitary = [
        "comparison of the infinite sum with the infinite product",
        "h-injectivity of the infinite product",
        "degree-zero radical quotient of the infinite sum is not finitely generated",
        "final contradiction with a quasi-isomorphism to a complex of finitely generated modules",
    ];
    Ok(CounterexampleReport {
        ring: ring.to_string(),
        n: big_n,
        simple: idx,
        cohomology: rows,
        pattern_holds,
        minimality,
        rigidity_trials: opts.trials,
        rigidity_holds,
        growth,
        growth_increments: increments,
        growth_strict,
        nonsplit_witnesses: witnesses,
        finite_witnesses: finite_witnesses.iter().map(|s| s.to_string()).collect(),
        infinitary: infinitary.iter().map(|s| s.to_string()).collect(),
    })
}
