mod input;
mod render;
mod selftest;
mod session;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use derivedlab::algebra::{
    dual, hom, indecomposable_projectives, is_injective, is_isomorphic, is_projective, projective_cover, quasi_frobenius_report, simples,
    AlgebraData, AModule, ModuleData, SAMPLE_PRESETS,
};
use derivedlab::complex::{
    cohomology_table, cone, is_acyclic, is_contractible, is_quasi_iso, tot_ses, truncate_ge, truncate_le, ChainMap, Complex, ComplexData,
    ComplexSes, MapData,
};
use derivedlab::complex::sub::subcomplex_ses;
use derivedlab::counterexample::{run_counterexample_experiment, CounterexampleOptions};
use derivedlab::derived::{
    certify_bounded_acyclic, coreplace_in_subcategory, hom_d, realize_from_truncations, replace_in_subcategory, verify_certificate,
};
use derivedlab::hereditary::{decompose_hereditary, formula_elements, formula_size, hom_formula_build, hom_formula_eval, ZeroDiffComplex};
use derivedlab::linalg::group::image_hom;
use derivedlab::resolution::{ext, gldim_bounded, injective_resolution, minimal_projective_resolution, GlDim};
use serde_json::{json, Value};

use input::{Inputs, Kind};
use session::{SessionFile, Stored};

/// Failure with its exit code: 2 for bad input, 3 for a computation that did not go through.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub kind: String,
    pub message: String,
    pub detail: Option<Value>,
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> CliError {
        CliError { code: 2, kind: "Invalid".into(), message: msg.into(), detail: None }
    }

    pub fn computation(kind: &str, msg: impl Into<String>) -> CliError {
        CliError { code: 3, kind: kind.into(), message: msg.into(), detail: None }
    }

    fn to_json(&self) -> Value {
        let mut e = json!({"kind": self.kind, "message": self.message, "exit_code": self.code});
        if let Some(d) = &self.detail {
            e["detail"] = d.clone();
        }
        json!({ "error": e })
    }
}

impl From<derivedlab::Error> for CliError {
    fn from(e: derivedlab::Error) -> CliError {
        CliError { code: if e.is_validation() { 2 } else { 3 }, kind: e.kind().into(), message: e.to_string(), detail: None }
    }
}

type CliResult<T> = Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Parser)]
#[command(name = "derivedlab", version, about = "Exact homological algebra over finite rings")]
struct Cli {
    /// JSON file holding named algebras, modules, complexes, maps and certificates.
    #[arg(long, global = true)]
    session: Option<PathBuf>,
    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Algebra: preset name, @name, inline JSON or a JSON file.
    #[arg(long, global = true)]
    ring: Option<String>,
    /// Store the main result in the session under this name.
    #[arg(long, global = true)]
    save: Option<String>,
    /// Store the comparison map of the result, where there is one.
    #[arg(long, global = true)]
    save_map: Option<String>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    #[command(subcommand)]
    Ring(RingCmd),
    #[command(subcommand)]
    Module(ModuleCmd),
    #[command(subcommand)]
    Complex(ComplexCmd),
    #[command(subcommand)]
    Derived(DerivedCmd),
    #[command(subcommand)]
    Hereditary(HereditaryCmd),
    #[command(subcommand)]
    Experiment(ExperimentCmd),
    /// Runs the invariant suite over the sample presets.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand)]
enum RingCmd {
    /// Validate the algebra and summarize it.
    Check,
    /// Print the algebra as JSON; without --ring, list the sample presets.
    Preset,
    QfCheck,
    Gldim {
        #[arg(long, default_value_t = 6)]
        max: usize,
    },
}

#[derive(Args)]
struct Pair {
    #[arg(long)]
    source: String,
    #[arg(long)]
    target: String,
}

#[derive(Subcommand)]
enum ModuleCmd {
    Hom {
        #[command(flatten)]
        pair: Pair,
        /// Also list every element.
        #[arg(long)]
        elements: bool,
    },
    Ext {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 1)]
        degree: usize,
        #[arg(long)]
        elements: bool,
    },
    Resolve {
        #[arg(long)]
        module: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        #[arg(long)]
        injective: bool,
    },
    Cover {
        #[arg(long)]
        module: String,
    },
    Dual {
        #[arg(long)]
        module: String,
    },
    Iso {
        #[command(flatten)]
        pair: Pair,
    },
}

#[derive(Subcommand)]
enum ComplexCmd {
    Cohomology {
        #[arg(long)]
        complex: String,
    },
    Cone {
        #[arg(long)]
        map: String,
    },
    /// Totalization of 0 → A → B → C → 0 given by i, and p or else the cokernel of i.
    Tot {
        #[arg(long)]
        i: String,
        #[arg(long)]
        p: Option<String>,
    },
    Contractible {
        #[arg(long)]
        complex: String,
    },
    Truncate {
        #[arg(long)]
        complex: String,
        #[arg(long, allow_hyphen_values = true)]
        le: Option<i64>,
        #[arg(long, allow_hyphen_values = true)]
        ge: Option<i64>,
    },
}

#[derive(Subcommand)]
enum DerivedCmd {
    Hom {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    Replace {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        subcat: String,
        /// Top degree for replace, bottom degree for --co; defaults to the support.
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
        /// Replace by a complex receiving a quasi-isomorphism instead.
        #[arg(long)]
        co: bool,
    },
    Realize {
        #[arg(long)]
        complex: String,
        #[arg(long)]
        subcat: String,
        #[arg(long, default_value_t = 0)]
        d: usize,
    },
    Certify {
        #[arg(long)]
        complex: String,
    },
    Verify {
        #[arg(long)]
        certificate: String,
    },
}

#[derive(Subcommand)]
enum HereditaryCmd {
    Decompose {
        #[arg(long)]
        complex: String,
    },
    HomFormula {
        #[command(flatten)]
        pair: Pair,
        #[arg(long, default_value_t = 8)]
        depth: usize,
        /// Tabulate elements when both sides have at most this many.
        #[arg(long, default_value_t = 64)]
        max_elements: u128,
    },
}

#[derive(Subcommand)]
enum ExperimentCmd {
    Counterexample {
        #[arg(long = "N")]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long)]
        simple: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Something a verb can store in the session.
enum Saved {
    Algebra(AlgebraData),
    Module(String, ModuleData),
    Complex(String, ComplexData),
    Map(String, MapData),
    Certificate(String, Value),
}

struct Output {
    json: Value,
    table: Option<String>,
    saved: Option<Saved>,
    saved_map: Option<(String, MapData)>,
    ok: bool,
}

impl Output {
    fn new(json: Value) -> Output {
        Output { json, table: None, saved: None, saved_map: None, ok: true }
    }

    fn save(mut self, s: Saved) -> Output {
        self.saved = Some(s);
        self
    }

    fn with_map(mut self, ring: &str, f: &ChainMap) -> Output {
        self.saved_map = Some((ring.to_string(), f.to_data()));
        self
    }
}

fn mat_json(m: &derivedlab::linalg::ZmMatrix) -> Value {
    m.to_json()
}

fn module_summary(md: &AModule) -> Value {
    json!({"size": md.size(), "orders": md.add.orders})
}

fn ring_cmd(inp: &Inputs, c: &RingCmd) -> CliResult<Output> {
    if let (RingCmd::Preset, None) = (c, inp.ring) {
        return Ok(Output::new(json!({"presets": SAMPLE_PRESETS})));
    }
    let (a, spec) = inp.ring(&[])?;
    Ok(match c {
        RingCmd::Check => {
            let projs = indecomposable_projectives(&a)?;
            Output::new(json!({
                "ring": spec,
                "valid": true,
                "m": a.m,
                "rank": a.rank(),
                "size": a.size(),
                "commutative": a.is_commutative(),
                "local": a.is_local()?,
                "simples": simples(&a)?.len(),
                "projectives": projs.iter().map(|p| module_summary(&p.module)).collect::<Vec<_>>(),
            }))
        }
        RingCmd::Preset => {
            let d = a.to_data();
            Output::new(json!({"ring": spec, "algebra": d})).save(Saved::Algebra(d))
        }
        RingCmd::QfCheck => Output::new(serde_json::to_value(quasi_frobenius_report(&a)?).expect("report serializes")),
        RingCmd::Gldim { max } => Output::new(match gldim_bounded(&a, *max)? {
            GlDim::Finite { value } => json!({"gldim": value}),
            GlDim::Infinite { simple, s, t } => json!({"gldim": "inf", "witness": {"simple": simple, "s": s, "t": t}}),
            GlDim::Unknown { bound } => json!({"gldim": null, "bound": bound}),
        }),
    })
}

fn module_cmd(inp: &Inputs, c: &ModuleCmd) -> CliResult<Output> {
    let refs: Vec<(Kind, &str)> = match c {
        ModuleCmd::Hom { pair, .. } | ModuleCmd::Ext { pair, .. } | ModuleCmd::Iso { pair } => {
            vec![(Kind::Module, &pair.source), (Kind::Module, &pair.target)]
        }
        ModuleCmd::Resolve { module, .. } | ModuleCmd::Cover { module } | ModuleCmd::Dual { module } => vec![(Kind::Module, module)],
    };
    let (a, spec) = inp.ring(&refs)?;
    let pair = |p: &Pair| -> CliResult<(AModule, AModule)> { Ok((inp.module(&a, &p.source)?, inp.module(&a, &p.target)?)) };
    Ok(match c {
        ModuleCmd::Hom { pair: p, elements } => {
            let (m, n) = pair(p)?;
            let h = hom(&m, &n);
            let mut out = json!({
                "size": h.size(),
                "orders": h.group.orders,
                "generators": h.gens.iter().map(mat_json).collect::<Vec<_>>(),
            });
            if *elements {
                check_cap(h.size())?;
                out["elements"] = h.elements().iter().map(|f| mat_json(&f.mat)).collect();
            }
            Output::new(out)
        }
        ModuleCmd::Ext { pair: p, degree, elements } => {
            let (m, n) = pair(p)?;
            let g = ext(&m, &n, *degree)?;
            let mut out = json!({"degree": degree, "size": g.size(), "orders": g.group().orders});
            if *elements {
                check_cap(g.size())?;
                out["elements"] = g
                    .elements()
                    .iter()
                    .map(|e| json!({"coords": g.coords(e), "cocycle": mat_json(&e.cocycle.mat)}))
                    .collect();
            }
            Output::new(out)
        }
        ModuleCmd::Resolve { module, depth, injective } => {
            let m = inp.module(&a, module)?;
            let r = if *injective { injective_resolution(&m, *depth)? } else { minimal_projective_resolution(&m, *depth)? };
            let cd = r.complex.to_data();
            Output::new(serde_json::to_value(r.report()).expect("report serializes")).save(Saved::Complex(spec, cd))
        }
        ModuleCmd::Cover { module } => {
            let m = inp.module(&a, module)?;
            let cv = projective_cover(&m)?;
            let d = cv.module.to_data();
            Output::new(json!({
                "projective": is_projective(&m)?,
                "injective": is_injective(&m)?,
                "summands": cv.summands.iter().map(|(i, _)| i).collect::<Vec<_>>(),
                "generators": cv.summands.iter().map(|(_, x)| x).collect::<Vec<_>>(),
                "cover": d,
                "map": mat_json(&cv.pi.mat),
                "kernel_size": cv.pi.kernel_size(),
            }))
            .save(Saved::Module(spec, d))
        }
        ModuleCmd::Dual { module } => {
            let m = inp.module(&a, module)?;
            let dm = dual(&m);
            let d = dm.to_data();
            let op = serde_json::to_string(&dm.alg.to_data()).expect("algebra serializes");
            Output::new(json!({"ring": op, "module": d})).save(Saved::Module(op, d))
        }
        ModuleCmd::Iso { pair: p } => {
            let (m, n) = pair(p)?;
            let iso = is_isomorphic(&m, &n)?;
            Output::new(json!({"isomorphic": iso.is_some(), "map": iso.map(|f| mat_json(&f.mat))}))
        }
    })
}

fn check_cap(size: u128) -> CliResult<()> {
    let cap = derivedlab::config::enum_cap();
    if size > cap {
        return Err(CliError::from(derivedlab::Error::SearchBoundExceeded { what: "element listing".into(), needed: size, cap }));
    }
    Ok(())
}

fn complex_cmd(inp: &Inputs, c: &ComplexCmd) -> CliResult<Output> {
    let refs: Vec<(Kind, &str)> = match c {
        ComplexCmd::Cohomology { complex } | ComplexCmd::Contractible { complex } | ComplexCmd::Truncate { complex, .. } => {
            vec![(Kind::Complex, complex)]
        }
        ComplexCmd::Cone { map } => vec![(Kind::Map, map)],
        ComplexCmd::Tot { i, p } => std::iter::once((Kind::Map, i.as_str())).chain(p.as_deref().map(|p| (Kind::Map, p))).collect(),
    };
    let (a, spec) = inp.ring(&refs)?;
    Ok(match c {
        ComplexCmd::Cohomology { complex } => {
            let x = inp.complex(&a, complex)?;
            Output::new(json!({"cohomology": cohomology_table(&x), "acyclic": is_acyclic(&x)}))
        }
        ComplexCmd::Cone { map } => {
            let f = inp.map(&a, map)?;
            let c = cone(&f);
            let d = c.complex.to_data();
            Output::new(json!({"complex": d, "acyclic": is_acyclic(&c.complex)}))
                .save(Saved::Complex(spec.clone(), d))
                .with_map(&spec, &c.ses.i)
        }
        ComplexCmd::Tot { i, p } => {
            let i = inp.map(&a, i)?;
            let ses = match p {
                Some(p) => ComplexSes::new(&i, &inp.map(&a, p)?)?,
                None => {
                    if !i.is_degreewise_mono() {
                        return Err(CliError::input("i is not a degreewise monomorphism"));
                    }
                    let groups = i.target.degrees().map(|n| (n, image_hom(&i.target.module(n).add, &i.mat(n)))).collect();
                    subcomplex_ses(&i.target, &groups)?
                }
            };
            let t = tot_ses(&ses)?;
            let d = t.to_data();
            Output::new(json!({"complex": d, "acyclic": is_acyclic(&t)})).save(Saved::Complex(spec, d))
        }
        ComplexCmd::Contractible { complex } => {
            let x = inp.complex(&a, complex)?;
            let h = is_contractible(&x);
            Output::new(json!({"contractible": h.is_some(), "homotopy": h.map(|h| h.to_data())}))
        }
        ComplexCmd::Truncate { complex, le, ge } => {
            let x = inp.complex(&a, complex)?;
            let t = match (le, ge) {
                (Some(n), None) => truncate_le(&x, *n),
                (None, Some(n)) => truncate_ge(&x, *n),
                _ => return Err(CliError::input("give exactly one of --le and --ge")),
            };
            let d = t.complex.to_data();
            Output::new(json!({"complex": d, "map": t.map.to_data(), "quasi_iso": is_quasi_iso(&t.map)}))
                .save(Saved::Complex(spec.clone(), d))
                .with_map(&spec, &t.map)
        }
    })
}

fn derived_cmd(inp: &Inputs, c: &DerivedCmd) -> CliResult<Output> {
    let refs: Vec<(Kind, &str)> = match c {
        DerivedCmd::Hom { pair, .. } => vec![(Kind::Complex, &pair.source), (Kind::Complex, &pair.target)],
        DerivedCmd::Replace { complex, .. } | DerivedCmd::Realize { complex, .. } | DerivedCmd::Certify { complex } => {
            vec![(Kind::Complex, complex)]
        }
        DerivedCmd::Verify { certificate } => vec![(Kind::Certificate, certificate)],
    };
    let (a, spec) = inp.ring(&refs)?;
    Ok(match c {
        DerivedCmd::Hom { pair, depth } => {
            let (x, y) = (inp.complex(&a, &pair.source)?, inp.complex(&a, &pair.target)?);
            let h = hom_d(&x, &y, *depth)?;
            Output::new(json!({
                "size": h.size(),
                "orders": h.group().orders,
                "closed": h.hproj.closed,
                "floor": h.hproj.floor,
                "depth": depth,
            }))
        }
        DerivedCmd::Replace { complex, subcat, degree, co } => {
            let x = inp.complex(&a, complex)?.trimmed();
            let u = input::subcategory(&a, subcat)?;
            let r = if *co {
                coreplace_in_subcategory(&x, u.as_ref(), degree.unwrap_or(x.lo))?
            } else {
                replace_in_subcategory(&x, u.as_ref(), degree.unwrap_or(x.hi()))?
            };
            let d = r.complex.to_data();
            Output::new(json!({
                "subcategory": u.name(),
                "complex": d,
                "qi": r.qi.to_data(),
                "closed": r.closed,
                "quasi_iso": is_quasi_iso(&r.qi),
            }))
            .save(Saved::Complex(spec.clone(), d))
            .with_map(&spec, &r.qi)
        }
        DerivedCmd::Realize { complex, subcat, d: dd } => {
            let x = inp.complex(&a, complex)?;
            let u = input::subcategory(&a, subcat)?;
            let r = realize_from_truncations(&x, u.as_ref(), *dd)?;
            let d = r.complex.to_data();
            Output::new(json!({
                "subcategory": u.name(),
                "complex": d,
                "stage_sizes": r.stages.iter().map(|s| s.total_size()).collect::<Vec<_>>(),
                "quasi_iso": is_quasi_iso(&r.qi) && is_quasi_iso(&r.roof.s),
            }))
            .save(Saved::Complex(spec.clone(), d))
            .with_map(&spec, &r.qi)
        }
        DerivedCmd::Certify { complex } => {
            let x = inp.complex(&a, complex)?;
            let cert = certify_bounded_acyclic(&x)?;
            let cj = cert.to_json();
            Output::new(json!({"certificate": cj, "root": cert.node(), "depth": cert.depth(), "nodes": cert.size()}))
                .save(Saved::Certificate(spec, cj))
        }
        DerivedCmd::Verify { certificate } => {
            let cert = inp.certificate(&a, certificate)?;
            match verify_certificate(&cert) {
                Ok(x) => {
                    let d = x.to_data();
                    Output::new(json!({"valid": true, "complex": d})).save(Saved::Complex(spec, d))
                }
                Err(f) => {
                    let mut e = CliError::computation("Verification", f.to_string());
                    e.detail = Some(json!({"path": f.path, "node": f.node, "reason": f.reason}));
                    return Err(e);
                }
            }
        }
    })
}

fn zero_diff(c: &Complex) -> CliResult<ZeroDiffComplex> {
    Ok(ZeroDiffComplex::from_complex(&c.trimmed())?)
}

fn hereditary_cmd(inp: &Inputs, c: &HereditaryCmd) -> CliResult<Output> {
    let refs: Vec<(Kind, &str)> = match c {
        HereditaryCmd::Decompose { complex } => vec![(Kind::Complex, complex)],
        HereditaryCmd::HomFormula { pair, .. } => vec![(Kind::Complex, &pair.source), (Kind::Complex, &pair.target)],
    };
    let (a, spec) = inp.ring(&refs)?;
    Ok(match c {
        HereditaryCmd::Decompose { complex } => {
            let x = inp.complex(&a, complex)?;
            let d = decompose_hereditary(&x)?;
            let z = d.zero.to_complex();
            let zd = z.to_data();
            let terms: Vec<Value> = d
                .zero
                .degrees()
                .map(|n| {
                    let m = d.zero.module(n);
                    json!({"degree": n, "size": m.size(), "orders": m.add.orders, "module": m.to_data()})
                })
                .collect();
            Output::new(json!({
                "terms": terms,
                "zero": zd,
                "mid": d.mid.to_data(),
                "legs_quasi_iso": is_quasi_iso(&d.to_zero) && is_quasi_iso(&d.to_m),
            }))
            .save(Saved::Complex(spec, zd))
        }
        HereditaryCmd::HomFormula { pair, depth, max_elements } => {
            let (xc, yc) = (inp.complex(&a, &pair.source)?, inp.complex(&a, &pair.target)?);
            let (x, y) = (zero_diff(&xc)?, zero_diff(&yc)?);
            let h = hom_d(&x.to_complex(), &y.to_complex(), *depth)?;
            let fsize = formula_size(&x, &y)?;
            let mut factors = Vec::new();
            for n in x.degrees() {
                let (xn, yn, yp) = (x.module(n), y.module(n), y.module(n - 1));
                factors.push(json!({"degree": n, "kind": "hom", "size": hom(&xn, &yn).size()}));
                factors.push(json!({"degree": n, "kind": "ext1", "size": ext(&xn, &yp, 1)?.size()}));
            }
            let mut out = json!({
                "hom_d": {"size": h.size(), "orders": h.group().orders, "closed": h.hproj.closed},
                "formula": {"size": fsize, "factors": factors},
                "sizes_agree": h.size() == fsize,
            });
            if h.size() <= *max_elements && fsize <= *max_elements {
                let mut rows = Vec::new();
                let mut seen = std::collections::BTreeSet::new();
                let mut round_trip = true;
                for (i, data) in formula_elements(&x, &y)?.iter().enumerate() {
                    let roof = hom_formula_build(&x, &y, data)?;
                    let class = h.class_of_roof(&roof)?;
                    round_trip &= hom_formula_eval(&roof, &x, &y)?.same(data)?;
                    seen.insert(class.clone());
                    rows.push(json!({"index": i, "formula": data.coords()?, "hom_d": class}));
                }
                out["elements"] = Value::Array(rows);
                out["bijective"] = json!(round_trip && seen.len() as u128 == h.size() && h.size() == fsize);
            }
            Output::new(out)
        }
    })
}

fn experiment_cmd(inp: &Inputs, c: &ExperimentCmd) -> CliResult<Output> {
    let ExperimentCmd::Counterexample { n, trials, simple, seed } = c;
    let (a, spec) = inp.ring(&[])?;
    let opts = CounterexampleOptions { simple: *simple, trials: *trials, seed: *seed };
    let rep = run_counterexample_experiment(&a, &spec, *n, &opts)?;
    let mut out = Output::new(serde_json::to_value(&rep).expect("report serializes"));
    out.json["passed"] = json!(rep.passed());
    out.table = Some(rep.table());
    Ok(out)
}

fn store(session: &mut SessionFile, name: &str, s: Saved) -> CliResult<()> {
    let data = session.touch()?;
    match s {
        Saved::Algebra(d) => {
            data.algebras.insert(name.into(), d);
        }
        Saved::Module(ring, value) => {
            data.modules.insert(name.into(), Stored { ring, value });
        }
        Saved::Complex(ring, value) => {
            data.complexes.insert(name.into(), Stored { ring, value });
        }
        Saved::Map(ring, value) => {
            data.maps.insert(name.into(), Stored { ring, value });
        }
        Saved::Certificate(ring, value) => {
            data.certificates.insert(name.into(), Stored { ring, value });
        }
    }
    session.flush()
}

fn run(cli: &Cli) -> CliResult<bool> {
    let mut session = SessionFile::open(cli.session.as_deref())?;
    let mut out = {
        let inp = Inputs { session: &session, ring: cli.ring.as_deref() };
        match &cli.cmd {
            Cmd::Ring(c) => ring_cmd(&inp, c)?,
            Cmd::Module(c) => module_cmd(&inp, c)?,
            Cmd::Complex(c) => complex_cmd(&inp, c)?,
            Cmd::Derived(c) => derived_cmd(&inp, c)?,
            Cmd::Hereditary(c) => hereditary_cmd(&inp, c)?,
            Cmd::Experiment(c) => experiment_cmd(&inp, c)?,
            Cmd::Selftest { seed } => selftest::run(*seed)?,
        }
    };
    if let Some(name) = &cli.save {
        let s = out.saved.take().ok_or_else(|| CliError::input("this command produces nothing to save"))?;
        store(&mut session, name, s)?;
    }
    if let Some(name) = &cli.save_map {
        let (ring, f) = out.saved_map.take().ok_or_else(|| CliError::input("this command produces no map to save"))?;
        store(&mut session, name, Saved::Map(ring, f))?;
    }
    let text = match cli.format {
        Format::Json => serde_json::to_string_pretty(&out.json).expect("output serializes"),
        Format::Table => out.table.unwrap_or_else(|| render::render(&out.json)),
    };
    match &cli.out {
        Some(p) => std::fs::write(p, text + "\n").map_err(|e| CliError::input(format!("--out {}: {e}", p.display())))?,
        None => {
            let mut so = std::io::stdout().lock();
            let _ = writeln!(so, "{text}");
        }
    }
    Ok(out.ok)
}

fn fail(e: &CliError) -> ExitCode {
    eprintln!("{}", serde_json::to_string(&e.to_json()).expect("error serializes"));
    ExitCode::from(e.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError { code: 2, kind: "Usage".into(), message: e.to_string().trim().to_string(), detail: None }),
    };
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(3),
        Err(e) => fail(&e),
    }
}
