//! Acceptance suite: one PASS/FAIL line per criterion, with its runtime.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use derivedlab::algebra::ses::split_mono_test;
use derivedlab::algebra::submodule::image;
use derivedlab::algebra::{
    indecomposable_projectives, is_isomorphic, is_projective, is_quasi_frobenius, preset, simples, AModule, Alg,
    SAMPLE_PRESETS,
};
use derivedlab::complex::sub::generated_subcomplex;
use derivedlab::complex::{cohomology, cone, is_contractible, is_quasi_iso, tot_ses, Complex};
use derivedlab::counterexample::{run_counterexample_experiment, CounterexampleOptions};
use derivedlab::derived::{
    certify_bounded_acyclic, complete_subcomplex_cone, complete_subcomplex_tot, hom_d, hom_k_vanishing,
    realize_from_truncations, replace_in_subcategory, verify_certificate, Certificate, ELocal, Subcategory,
    TotCompleter,
};
use derivedlab::hereditary::{formula_elements, formula_size, hom_formula_build, hom_formula_eval, ZeroDiffComplex};
use derivedlab::random::{
    random_acyclic_complex, random_chain_map, random_complex, random_complex_ses, random_in, random_injective_complex,
    random_module, rng, DetRng,
};
use derivedlab::resolution::{ce_resolution, ext, gldim_bounded, GlDim};
use rand::Rng;

type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn alg(name: &str) -> Alg {
    preset(name).unwrap_or_else(|e| panic!("preset {name}: {e}"))
}

fn crit1() -> Check {
    let mut runs = 0;
    let mut trials = 0;
    for ring in ["dual_numbers:2", "dual_numbers:3", "zmod:4"] {
        let a = alg(ring);
        for n in 1..=6 {
            let opts = CounterexampleOptions { trials: 100, seed: n as u64, ..Default::default() };
            let r = run_counterexample_experiment(&a, ring, n, &opts).map_err(e2s)?;
            ensure(r.pattern_holds, || format!("{ring} N={n}: cohomology pattern"))?;
            ensure(r.minimality, || format!("{ring} N={n}: minimality"))?;
            ensure(r.rigidity_holds && r.rigidity_trials >= 100, || format!("{ring} N={n}: rigidity"))?;
            ensure(r.growth_strict && r.growth.windows(2).all(|w| w[0] < w[1]), || format!("{ring} N={n}: growth"))?;
            ensure(r.nonsplit_witnesses.iter().all(|w| !w.splits), || format!("{ring} N={n}: a witness splits"))?;
            runs += 1;
            trials += r.rigidity_trials;
        }
    }
    Ok(format!("{runs} runs, {trials} homotopies"))
}

fn crit2() -> Check {
    let cases = [
        ("zmod:4", true),
        ("dual_numbers:2", true),
        ("dual_numbers:3", true),
        ("dual_numbers:5", true),
        ("upper_triangular:2:2", false),
        ("product:dual_numbers:2,zmod:4", true),
    ];
    for (name, want) in cases {
        let got = is_quasi_frobenius(&alg(name)).map_err(e2s)?;
        ensure(got == want, || format!("{name}: got {got}"))?;
    }
    Ok(format!("{} rings", cases.len()))
}

fn crit3() -> Check {
    let mut n = 0;
    let check = |name: &str, want: &dyn Fn(&GlDim) -> bool| -> std::result::Result<(), String> {
        let g = gldim_bounded(&alg(name), 4).map_err(e2s)?;
        ensure(want(&g), || format!("{name}: {g:?}"))
    };
    check("product:zmod:2,zmod:2", &|g| *g == GlDim::Finite { value: 0 })?;
    n += 1;
    for p in [2, 3] {
        for quiver in ["1->2", "1->2,2->3", "2->1,3->2", "1->2,3->2", "2->1,2->3"] {
            check(&format!("path_algebra:{quiver}:p={p}"), &|g| *g == GlDim::Finite { value: 1 })?;
            n += 1;
        }
    }
    for name in ["dual_numbers:2", "zmod:4"] {
        check(name, &|g| matches!(g, GlDim::Infinite { t, .. } if *t <= 4))?;
        n += 1;
    }
    Ok(format!("{n} algebras"))
}

/// Zero-differential complexes on [lo, hi] from the given indecomposables, with total rank ≤ budget.
fn zero_diff_family(a: &Alg, inds: &[AModule], lo: i64, hi: i64, budget: usize) -> Vec<(ZeroDiffComplex, usize)> {
    fn sums(inds: &[AModule], start: usize, left: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(acc.clone());
        for i in start..inds.len() {
            if inds[i].rank() <= left {
                acc.push(i);
                sums(inds, i, left - inds[i].rank(), acc, out);
                acc.pop();
            }
        }
    }
    let mut out: Vec<(Vec<Vec<usize>>, usize)> = vec![(Vec::new(), 0)];
    for _ in lo..=hi {
        let mut next = Vec::new();
        for (slots, used) in &out {
            let mut opts = Vec::new();
            sums(inds, 0, budget - used, &mut Vec::new(), &mut opts);
            for o in opts {
                let r: usize = o.iter().map(|&i| inds[i].rank()).sum();
                let mut s = slots.clone();
                s.push(o);
                next.push((s, used + r));
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|(slots, used)| {
            let mods = slots
                .iter()
                .map(|s| AModule::direct_sum(a, &s.iter().map(|&i| &inds[i]).collect::<Vec<_>>()))
                .collect();
            (ZeroDiffComplex::new(a, lo, mods).unwrap(), budget - used)
        })
        .collect()
}

fn indecomposables(a: &Alg) -> Vec<AModule> {
    let mut out: Vec<AModule> = Vec::new();
    let cands = simples(a).unwrap().iter().cloned().chain(indecomposable_projectives(a).unwrap().iter().map(|p| p.module.clone()));
    for m in cands {
        if !out.iter().any(|o| is_isomorphic(o, &m).unwrap().is_some()) {
            out.push(m);
        }
    }
    out
}

fn crit4() -> Check {
    let a = alg("path_algebra:1->2");
    let inds = indecomposables(&a);
    ensure(inds.len() == 3, || format!("expected 3 indecomposables, found {}", inds.len()))?;
    let (mut pairs, mut elements) = (0usize, 0usize);
    for (x, rest) in zero_diff_family(&a, &inds, -2, 2, 4) {
        for (y, _) in zero_diff_family(&a, &inds, -2, 2, rest) {
            let (xc, yc) = (x.to_complex(), y.to_complex());
            // gldim 1, so resolving X closes within its span plus two terms
            let h = hom_d(&xc, &yc, 8).map_err(e2s)?;
            let predicted = formula_size(&x, &y).map_err(e2s)?;
            ensure(h.size() == predicted, || format!("|hom_D| = {} but formula gives {predicted}", h.size()))?;
            // eval∘build = id on data, and build hits every class exactly once
            let mut seen = BTreeSet::new();
            for data in formula_elements(&x, &y).map_err(e2s)? {
                let roof = hom_formula_build(&x, &y, &data).map_err(e2s)?;
                let back = hom_formula_eval(&roof, &x, &y).map_err(e2s)?;
                ensure(back.same(&data).map_err(e2s)?, || "eval∘build changed the data".into())?;
                seen.insert(h.class_of_roof(&roof).map_err(e2s)?);
                elements += 1;
            }
            ensure(seen.len() as u128 == h.size(), || "build is not injective on classes".into())?;
            // build∘eval = id on classes
            for v in h.group().elements() {
                let data = hom_formula_eval(&h.roof(&v), &x, &y).map_err(e2s)?;
                let again = h.class_of_roof(&hom_formula_build(&x, &y, &data).map_err(e2s)?).map_err(e2s)?;
                ensure(again == v, || format!("build∘eval moved class {v:?} to {again:?}"))?;
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs, {elements} morphisms"))
}

fn z6_u() -> (Alg, ELocal) {
    let a = alg("zmod:6");
    let u = ELocal::new(&a, &[3]).unwrap();
    (a, u)
}

fn cohomology_in(c: &Complex, u: &dyn Subcategory) -> bool {
    c.degrees().all(|n| u.contains(cohomology(c, n).module()))
}

/// Random complexes on [lo, hi] over ℤ/6 whose cohomology is 2-torsion.
fn sample_u_cohomology(r: &mut DetRng, a: &Alg, u: &dyn Subcategory, lo: i64, hi: i64, nontrivial: bool) -> Complex {
    loop {
        let c = random_complex(r, a, lo, hi, 3);
        let live = c.degrees().any(|n| !cohomology(&c, n).is_zero());
        if cohomology_in(&c, u) && (!nontrivial || live) {
            return c;
        }
    }
}

fn crit5() -> Check {
    let (a, u) = z6_u();
    let mut r = rng(5);
    for t in 0..200 {
        let lo = r.gen_range(-3..=0);
        let hi = lo + r.gen_range(1..=3);
        let c = sample_u_cohomology(&mut r, &a, &u, lo, hi, false);
        let rep = replace_in_subcategory(&c, &u, c.hi()).map_err(|e| format!("trial {t}: {e}"))?;
        ensure(rep.complex.degrees().all(|n| u.contains(&rep.complex.module(n))), || format!("trial {t}: term outside U"))?;
        ensure(is_quasi_iso(&rep.qi), || format!("trial {t}: cone not acyclic"))?;
    }
    Ok("200 of 200".into())
}

fn crit6() -> Check {
    let (a, u) = z6_u();
    let mut r = rng(6);
    for t in 0..100 {
        let c = sample_u_cohomology(&mut r, &a, &u, 0, 3, true);
        let res = realize_from_truncations(&c, &u, 0).map_err(|e| format!("trial {t}: {e}"))?;
        ensure(res.complex.degrees().all(|n| u.contains(&res.complex.module(n))), || format!("trial {t}: term outside U"))?;
        ensure(is_quasi_iso(&res.roof.s) && is_quasi_iso(&res.qi), || format!("trial {t}: roof is not an isomorphism"))?;
    }
    Ok("100 of 100".into())
}

fn crit7() -> Check {
    let a = alg("path_algebra:1->2");
    let mut r = rng(7);
    for t in 0..100 {
        let lo = r.gen_range(-2..=0);
        let hi = lo + r.gen_range(0..=2);
        let c = random_complex(&mut r, &a, lo, hi, 4);
        let ce = ce_resolution(&c, 1).map_err(|e| format!("trial {t}: {e}"))?;
        for n in ce.tot.degrees() {
            ensure(is_projective(&ce.tot.module(n)).map_err(e2s)?, || format!("trial {t}: degree {n} not projective"))?;
        }
        ensure(is_quasi_iso(&ce.qi), || format!("trial {t}: qi has a non-acyclic cone"))?;
    }
    let mut contractible = 0;
    for t in 0..100 {
        let lo = r.gen_range(-2..=0);
        let hi = lo + r.gen_range(1..=3);
        let acyc = random_acyclic_complex(&mut r, &a, lo, hi, 4).map_err(e2s)?;
        let p = ce_resolution(&acyc, 1).map_err(e2s)?.tot;
        ensure(is_contractible(&p).is_some(), || format!("acyclic projective complex {t} is not contractible"))?;
        contractible += 1;
    }
    Ok(format!("100 CE trials, {contractible} acyclic projective complexes contractible"))
}

fn crit8() -> Check {
    let mut certs = 0;
    let mut vanish = 0;
    for name in SAMPLE_PRESETS {
        let a = alg(name);
        let mut r = rng(8);
        let injectives: Vec<Complex> = (0..20)
            .map(|_| {
                let lo = r.gen_range(-2..=0);
                let hi = lo + r.gen_range(0..=2);
                random_injective_complex(&mut r, &a, lo, hi, 2)
            })
            .collect::<derivedlab::error::Result<_>>()
            .map_err(e2s)?;
        let mut generated: Vec<Certificate> = Vec::new();
        for t in 0..200 {
            let lo = r.gen_range(-2..=0);
            let hi = lo + r.gen_range(1..=3);
            let c = random_acyclic_complex(&mut r, &a, lo, hi, 3).map_err(e2s)?;
            let cert = certify_bounded_acyclic(&c).map_err(|e| format!("{name} trial {t}: {e}"))?;
            let claimed = verify_certificate(&cert).map_err(|e| format!("{name} trial {t}: {e}"))?;
            ensure(claimed == c, || format!("{name} trial {t}: certificate is for another complex"))?;
            let parsed = Certificate::from_json(&a, &cert.to_json()).map_err(e2s)?;
            ensure(verify_certificate(&parsed).is_ok(), || format!("{name} trial {t}: JSON round trip"))?;
            generated.push(cert);
            certs += 1;
        }
        for (k, cert) in generated.iter().enumerate() {
            for (j, i) in injectives.iter().enumerate() {
                let v = hom_k_vanishing(cert, i).map_err(e2s)?;
                ensure(v.is_ok(), || format!("{name}: Hom_K(certificate {k}, injective complex {j}) ≠ 0"))?;
                vanish += 1;
            }
        }
    }
    // negative controls: socle inclusions with no retraction
    for (name, x) in [("dual_numbers:2", vec![0, 1]), ("zmod:4", vec![2])] {
        let a = alg(name);
        let reg = AModule::regular(&a);
        let (sub, _) = image(&derivedlab::algebra::AHom::new(&reg, &reg, a.right_mult(&x)).map_err(e2s)?);
        ensure(split_mono_test(&sub.incl).map_err(e2s)?.is_none(), || format!("{name}: socle inclusion splits"))?;
    }
    Ok(format!("{certs} certificates, {vanish} vanishing checks, 2 negative controls"))
}

fn groups_in_part(r: &mut DetRng, t: &Complex, u: &ELocal) -> BTreeMap<i64, derivedlab::linalg::Subgroup> {
    let mut gens = BTreeMap::new();
    for n in t.degrees() {
        let part = u.part(&t.module(n));
        let k = r.gen_range(0..=2);
        let vs: Vec<Vec<u64>> = (0..k).map(|_| part.incl.apply(&random_in(r, &part.module.add))).collect();
        gens.insert(n, vs);
    }
    generated_subcomplex(t, &gens)
}

fn crit9() -> Check {
    let a = alg("zmod:6");
    let mut r = rng(9);
    let (mut tots, mut cones) = (0, 0);
    for t in 0..100 {
        let e_idem: &[u64] = if t % 2 == 0 { &[3] } else { &[4] };
        let u = ELocal::new(&a, e_idem).unwrap();
        let lo = r.gen_range(-1..=0);
        let e1 = random_complex_ses(&mut r, &a, lo, lo + 1, 3).map_err(e2s)?;
        if t % 2 == 0 {
            let tot = tot_ses(&e1).map_err(e2s)?;
            let d = groups_in_part(&mut r, &tot, &u);
            let c = complete_subcomplex_tot(&e1, &d, &u).map_err(|e| format!("trial {t}: {e}"))?;
            check_completion(t, &c, &d, &u)?;
            tots += 1;
        } else {
            let e2 = random_complex_ses(&mut r, &a, lo, lo + 1, 3).map_err(e2s)?;
            let (t1, t2) = (tot_ses(&e1).map_err(e2s)?, tot_ses(&e2).map_err(e2s)?);
            let map = random_chain_map(&mut r, &t1, &t2);
            let cc = cone(&map).complex;
            let d = groups_in_part(&mut r, &cc, &u);
            let c = complete_subcomplex_cone(&map, &TotCompleter(e1), &TotCompleter(e2), &d, &u)
                .map_err(|e| format!("trial {t}: {e}"))?;
            check_completion(t, &c, &d, &u)?;
            cones += 1;
        }
    }
    Ok(format!("{tots} Tot and {cones} cone completions"))
}

fn check_completion(
    t: usize,
    c: &derivedlab::derived::Completion,
    d: &BTreeMap<i64, derivedlab::linalg::Subgroup>,
    u: &ELocal,
) -> std::result::Result<(), String> {
    for (n, g) in d {
        let ok = g.is_zero() || c.groups.get(n).is_some_and(|s| s.contains_subgroup(g));
        ensure(ok, || format!("trial {t}: D not contained in degree {n}"))?;
    }
    ensure(c.complex.degrees().all(|n| u.contains(&c.complex.module(n))), || format!("trial {t}: term outside U"))?;
    ensure(c.incl.is_degreewise_mono(), || format!("trial {t}: inclusion is not mono"))?;
    let claimed = verify_certificate(&c.cert).map_err(|e| format!("trial {t}: {e}"))?;
    ensure(claimed == c.complex, || format!("trial {t}: certificate is for another complex"))
}

fn crit10() -> Check {
    let mut pairs = 0;
    for name in SAMPLE_PRESETS {
        let a = alg(name);
        let mut r = rng(10);
        let mut mods: Vec<AModule> = simples(&a).map_err(e2s)?.to_vec();
        mods.push(AModule::regular(&a));
        mods.push(random_module(&mut r, &a, 4));
        for m in &mods {
            for n in &mods {
                for k in 0..=3i64 {
                    let e = ext(m, n, k as usize).map_err(e2s)?.size();
                    let h = hom_d(&Complex::single(m, 0), &Complex::single(n, -k), k as usize + 2).map_err(|err| format!("{name}: {err}"))?;
                    ensure(h.size() == e, || format!("{name}: |hom_D| = {} but |Ext^{k}| = {e}", h.size()))?;
                    pairs += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} (M, N, n) triples"))
}

fn main() {
    let crits: [(&str, Option<f64>, fn() -> Check); 10] = [
        ("counterexample experiment", Some(10.0), crit1),
        ("quasi-Frobenius detection", Some(5.0), crit2),
        ("global dimension", None, crit3),
        ("hereditary Hom formula", Some(60.0), crit4),
        ("replacement over Z/6", None, crit5),
        ("realization over Z/6", None, crit6),
        ("Cartan-Eilenberg resolution over A2", None, crit7),
        ("certificates and vanishing", None, crit8),
        ("subcomplex completions", None, crit9),
        ("hom_D against Ext", None, crit10),
    ];
    let mut failed = 0;
    for (i, (title, limit, f)) in crits.iter().enumerate() {
        let start = Instant::now();
        let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        let in_time = limit.is_none_or(|l| secs <= l);
        let budget = limit.map(|l| format!(" / {l:.0}s")).unwrap_or_default();
        match out {
            Ok(detail) if in_time => println!("PASS {}: {title} ({detail}) [{secs:.2}s{budget}]", i + 1),
            Ok(detail) => {
                failed += 1;
                println!("FAIL {}: {title} ({detail}) over time [{secs:.2}s{budget}]", i + 1)
            }
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {title}: {why} [{secs:.2}s{budget}]", i + 1)
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
