//! Horseshoe resolutions and Cartan–Eilenberg resolutions of bounded complexes.

use std::collections::BTreeMap;

use super::projective::{minimal_projective_resolution, Resolution};
use crate::algebra::submodule::{image, kernel, Quot, Sub};
use crate::algebra::{solve_left, AHom, AModule, Ses};
use crate::complex::{signed, ChainMap, Complex};
use crate::error::{Error, Result};
use crate::linalg::ZmMatrix;

/// Covers ε_k: P_k → Ω^k read off a resolution, with Ω^{k+1} = ker ε_k.
struct Steps {
    res: Resolution,
    k: usize,
    eps: AHom,
}

impl Steps {
    fn new(res: &Resolution) -> Steps {
        Steps { res: res.clone(), k: 0, eps: res.aug.clone() }
    }

    /// Advances to ε_{k+1}, returning the kernel Ω^{k+1} ↪ P_k.
    fn advance(&mut self) -> Sub {
        let ker = kernel(&self.eps);
        self.k += 1;
        let d = self.res.d(self.k);
        self.eps = ker.factor(&d).expect("d_k lands in the syzygy");
        ker
    }
}

#[derive(Clone, Debug)]
pub struct Horseshoe {
    /// Resolution of the middle term with P^B_k = P^A_k ⊕ P^C_k.
    pub res: Resolution,
    pub iota: ChainMap,
    pub pi: ChainMap,
}

/// Horseshoe over 0 → A → B → C → 0 from given resolutions of A and C.
pub fn horseshoe(ses: &Ses, res_a: &Resolution, res_c: &Resolution, depth: usize) -> Result<Horseshoe> {
    let alg = &ses.mid().alg;
    let m = alg.m;
    let (mut sa, mut sc) = (Steps::new(res_a), Steps::new(res_c));
    let (mut i, mut p) = (ses.i.clone(), ses.p.clone());
    let mut terms: Vec<AModule> = Vec::new();
    let mut diffs: Vec<AHom> = Vec::new();
    let mut incl_b: Option<AHom> = None;
    let mut aug: Option<AHom> = None;
    let mut closed = false;
    for k in 0..=depth {
        let (ea, ec) = (sa.eps.clone(), sc.eps.clone());
        let lambda = solve_left(&p, &ec).ok_or_else(|| Error::Verification("lift through the epimorphism failed".into()))?;
        let pb = AModule::direct_sum(alg, &[&ea.source, &ec.source]);
        let eb = AHom::from_parts(&pb, &i.target, i.compose(&ea).mat.hstack(&lambda.mat));
        match &incl_b {
            Some(inc) => diffs.push(inc.compose(&eb)),
            None => aug = Some(eb.clone()),
        }
        terms.push(pb.clone());
        let ka = sa.advance();
        let kc = sc.advance();
        let kb = kernel(&eb);
        if kb.module.is_zero() {
            closed = true;
            break;
        }
        if k == depth {
            break;
        }
        let (ra, rc) = (ea.source.rank(), ec.source.rank());
        let ina = ZmMatrix::from_fn(m, ra + rc, ra, |r, c| u64::from(r == c));
        let prc = ZmMatrix::from_fn(m, rc, ra + rc, |r, c| u64::from(c == ra + r));
        i = kb.factor(&AHom::from_parts(&ka.module, &pb, ina.mul(&ka.incl.mat)))?;
        p = kc.factor(&AHom::from_parts(&kb.module, &ec.source, prc.mul(&kb.incl.mat)))?;
        incl_b = Some(kb.incl);
    }
    let len = terms.len() as i64;
    let mods: Vec<AModule> = terms.iter().rev().cloned().collect();
    let dm: Vec<ZmMatrix> = diffs.into_iter().rev().map(|d| d.mat).collect();
    let complex = Complex::from_parts(alg, 1 - len, mods, dm);
    let res = Resolution {
        module: ses.mid().clone(),
        complex: complex.clone(),
        aug: aug.expect("at least one step"),
        minimal: false,
        period: None,
        closed,
        syzygies: vec![ses.mid().clone()],
        injective: false,
    };
    let iota = ChainMap::from_fn(&res_a.complex, &complex, |n| {
        let ra = res_a.complex.rank(n);
        ZmMatrix::from_fn(m, complex.rank(n), ra, |r, c| u64::from(r == c))
    });
    let pi = ChainMap::from_fn(&complex, &res_c.complex, |n| {
        let ra = complex.rank(n) - res_c.complex.rank(n);
        ZmMatrix::from_fn(m, res_c.complex.rank(n), complex.rank(n), |r, c| u64::from(c == ra + r))
    });
    debug_assert!(res.check_exact().is_ok());
    Ok(Horseshoe { res, iota, pi })
}

#[derive(Clone, Debug)]
pub struct CeResolution {
    pub input: Complex,
    pub bound: usize,
    /// rows[p] has P_p^n in degree n.
    pub rows: Vec<Complex>,
    /// The zero-differential complexes of the P_p(H^n), with inclusion and projection against rows[p].
    pub row_cohomology: Vec<(Complex, ChainMap, ChainMap)>,
    pub tot: Complex,
    pub qi: ChainMap,
}

struct DegreeData {
    /// Resolution of H^n and the horseshoe resolution of K^n.
    rh: Resolution,
    rk: Resolution,
}

fn resolve_closed(md: &AModule, d: usize, what: &str) -> Result<Resolution> {
    let r = minimal_projective_resolution(md, d)?;
    if !r.closed {
        return Err(Error::DepthExceeded(format!("{what} has no projective resolution of length ≤ {d}")));
    }
    Ok(r)
}

/// Cartan–Eilenberg resolution with all rows of length ≤ d, its totalization
/// and the augmentation Tot → K.
pub fn ce_resolution(k: &Complex, d: usize) -> Result<CeResolution> {
    let alg = &k.alg;
    let m = alg.m;
    if k.mods.is_empty() {
        let z = Complex::zero(alg);
        return Ok(CeResolution { input: k.clone(), bound: d, rows: vec![], row_cohomology: vec![], tot: z.clone(), qi: ChainMap::zero(&z, k) });
    }
    let (lo, hi) = (k.lo, k.hi());
    // B^n for n in lo..=hi+1
    let mut bres: BTreeMap<i64, (Sub, Resolution)> = BTreeMap::new();
    for n in lo..=hi + 1 {
        let b = image(&k.diff(n - 1)).0;
        let r = resolve_closed(&b.module, d, &format!("B^{n}"))?;
        bres.insert(n, (b, r));
    }
    let mut data: BTreeMap<i64, DegreeData> = BTreeMap::new();
    for n in lo..=hi {
        let z = kernel(&k.diff(n));
        let (b, rb) = &bres[&n];
        let bz = z.factor(&b.incl)?;
        let h = Quot::new(&z.module, &crate::algebra::submodule::image_subgroup(&bz));
        let rh = resolve_closed(&h.module, d, &format!("H^{n}"))?;
        let hz = horseshoe(&Ses::new(bz, h.proj.clone())?, rb, &rh, d)?;
        let (b1, rb1) = &bres[&(n + 1)];
        let corestr = b1.factor(&k.diff(n))?;
        let hk = horseshoe(&Ses::new(z.incl.clone(), corestr)?, &hz.res, rb1, d)?;
        if !hz.res.closed || !hk.res.closed {
            return Err(Error::DepthExceeded(format!("horseshoe in degree {n} did not close within {d}")));
        }
        data.insert(n, DegreeData { rh, rk: hk.res });
    }
    let term = |n: i64, p: usize| -> AModule {
        data.get(&n).map_or_else(|| AModule::zero(alg), |dd| dd.rk.term(p))
    };
    let rank_b = |n: i64, p: usize| bres.get(&n).map_or(0, |(_, r)| r.term(p).rank());
    let rank_h = |n: i64, p: usize| data.get(&n).map_or(0, |dd| dd.rh.term(p).rank());
    // δ: P_p^n → P_p^{n+1}, the B^{n+1} block of degree n onto the first block of degree n+1
    let delta = |n: i64, p: usize| -> ZmMatrix {
        let (src, tgt) = (term(n, p), term(n + 1, p));
        let off = rank_b(n, p) + rank_h(n, p);
        ZmMatrix::from_fn(m, tgt.rank(), src.rank(), |r, c| u64::from(c >= off && r == c - off && r < rank_b(n + 1, p)))
    };
    let vert = |n: i64, p: usize| -> ZmMatrix {
        match data.get(&n) {
            Some(dd) => dd.rk.d(p).mat,
            None => ZmMatrix::zeros(m, 0, 0),
        }
    };
    let mut rows = Vec::new();
    let mut row_cohomology = Vec::new();
    for p in 0..=d {
        let mods: Vec<AModule> = (lo..=hi).map(|n| term(n, p)).collect();
        let diffs = (lo..hi).map(|n| delta(n, p)).collect();
        let row = Complex::new(alg, lo, mods, diffs)?;
        let hmods: Vec<AModule> = (lo..=hi).map(|n| data[&n].rh.term(p)).collect();
        let hdiffs = (lo..hi).map(|n| ZmMatrix::zeros(m, hmods[(n + 1 - lo) as usize].rank(), hmods[(n - lo) as usize].rank())).collect();
        let hc = Complex::new(alg, lo, hmods, hdiffs)?;
        let incl = ChainMap::new(
            &hc,
            &row,
            (lo..=hi).map(|n| (n, ZmMatrix::from_fn(m, row.rank(n), hc.rank(n), |r, c| u64::from(r == rank_b(n, p) + c)))).collect(),
        )?;
        let proj = ChainMap::new(
            &row,
            &hc,
            (lo..=hi).map(|n| (n, ZmMatrix::from_fn(m, hc.rank(n), row.rank(n), |r, c| u64::from(c == rank_b(n, p) + r)))).collect(),
        )?;
        rows.push(row);
        row_cohomology.push((hc, incl, proj));
    }
    // Tot^t = ⊕_p P_p^{t+p}
    let (tlo, thi) = (lo - d as i64, hi);
    let tmods: Vec<AModule> = (tlo..=thi)
        .map(|t| {
            let parts: Vec<AModule> = (0..=d).map(|p| term(t + p as i64, p)).collect();
            AModule::direct_sum(alg, &parts.iter().collect::<Vec<_>>())
        })
        .collect();
    let tdiffs = (tlo..thi)
        .map(|t| {
            let cols: Vec<usize> = (0..=d).map(|p| term(t + p as i64, p).rank()).collect();
            let rws: Vec<usize> = (0..=d).map(|p| term(t + 1 + p as i64, p).rank()).collect();
            let mut blocks: Vec<Vec<Option<ZmMatrix>>> = vec![vec![None; d + 1]; d + 1];
            for p in 0..=d {
                let n = t + p as i64;
                blocks[p][p] = Some(delta(n, p));
                if p >= 1 {
                    blocks[p - 1][p] = Some(vert(n, p).scale(signed(n, m)));
                }
            }
            let refs: Vec<Vec<Option<&ZmMatrix>>> = blocks.iter().map(|r| r.iter().map(|b| b.as_ref()).collect()).collect();
            ZmMatrix::from_blocks(m, &rws, &cols, &refs).reduced_rows(&tmods[(t + 1 - tlo) as usize].add.orders)
        })
        .collect();
    let tot = Complex::new(alg, tlo, tmods, tdiffs)?;
    let qi_maps = (lo..=hi)
        .map(|n| {
            let aug = &data[&n].rk.aug;
            (n, aug.mat.hstack(&ZmMatrix::zeros(m, k.rank(n), tot.rank(n) - aug.source.rank())))
        })
        .collect();
    let qi = ChainMap::new(&tot, k, qi_maps)?;
    Ok(CeResolution { input: k.clone(), bound: d, rows, row_cohomology, tot, qi })
}
