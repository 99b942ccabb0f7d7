//! Named algebras: `zmod:n`, `dual_numbers:p`, `trunc_poly:p:n`,
//! `upper_triangular:p:n`, `path_algebra:<arrows>[:v=n][:p=q]`, `product:X,Y,…`.

use super::finalg::{Alg, FinAlgebra};
use crate::error::{Error, Result};
use crate::linalg::arith::{factor, inv_mod, lcm};

/// A spread of presets used by the self-test and the acceptance suite.
pub const SAMPLE_PRESETS: [&str; 10] = [
    "zmod:4",
    "zmod:6",
    "dual_numbers:2",
    "dual_numbers:3",
    "trunc_poly:2:3",
    "upper_triangular:2:2",
    "path_algebra:1->2",
    "path_algebra:1->2,3->2:p=3",
    "product:zmod:2,zmod:2",
    "product:dual_numbers:2,zmod:4",
];

const KEYWORDS: [&str; 6] = ["zmod:", "dual_numbers:", "trunc_poly:", "upper_triangular:", "path_algebra:", "product:"];

fn parse_num(s: &str, what: &str) -> Result<u64> {
    s.trim().parse::<u64>().map_err(|_| Error::Invalid(format!("bad {what} '{s}'")))
}

fn modulus(s: &str) -> Result<u64> {
    let m = parse_num(s, "modulus")?;
    if m < 2 {
        return Err(Error::Invalid(format!("modulus {m} < 2")));
    }
    Ok(m)
}

pub fn preset(spec: &str) -> Result<Alg> {
    let spec = spec.trim();
    let (kind, rest) = spec.split_once(':').ok_or_else(|| Error::Invalid(format!("unknown algebra '{spec}'")))?;
    let alg = match kind {
        "zmod" => zmod(modulus(rest)?)?,
        "dual_numbers" => trunc_poly(modulus(rest)?, 2, spec)?,
        "trunc_poly" => {
            let (p, n) = rest.split_once(':').ok_or_else(|| Error::Invalid("trunc_poly:p:n".into()))?;
            let n = parse_num(n, "length")? as usize;
            if n == 0 {
                return Err(Error::Invalid("trunc_poly needs n ≥ 1".into()));
            }
            trunc_poly(modulus(p)?, n, spec)?
        }
        "upper_triangular" => {
            let (p, n) = rest.split_once(':').ok_or_else(|| Error::Invalid("upper_triangular:p:n".into()))?;
            let n = parse_num(n, "size")? as usize;
            if n == 0 {
                return Err(Error::Invalid("upper_triangular needs n ≥ 1".into()));
            }
            upper_triangular(modulus(p)?, n, spec)?
        }
        "path_algebra" => path_algebra(rest, spec)?,
        "product" => {
            let parts = split_product(rest);
            if parts.len() < 2 {
                return Err(Error::Invalid(format!("product needs at least two factors: '{spec}'")));
            }
            let algs = parts.iter().map(|p| preset(p)).collect::<Result<Vec<_>>>()?;
            product(&algs, spec)?
        }
        _ => return Err(Error::Invalid(format!("unknown algebra preset '{kind}'"))),
    };
    Ok(alg)
}

fn split_product(rest: &str) -> Vec<String> {
    let mut parts = Vec::new();
    let mut start = 0;
    for (i, _) in rest.match_indices(',') {
        let tail = &rest[i + 1..];
        if KEYWORDS.iter().any(|k| tail.starts_with(k)) {
            parts.push(rest[start..i].to_string());
            start = i + 1;
        }
    }
    parts.push(rest[start..].to_string());
    parts
}

fn zmod(n: u64) -> Result<Alg> {
    let fs = factor(n);
    let idempotents = if fs.len() > 1 {
        Some(
            fs.iter()
                .map(|&(p, k)| {
                    let q = p.pow(k);
                    let c = n / q;
                    // e ≡ 1 mod q, e ≡ 0 mod n/q
                    let e = (c as u128 * inv_mod(c % q, q).unwrap() as u128 % n as u128) as u64;
                    vec![e]
                })
                .collect(),
        )
    } else {
        None
    };
    FinAlgebra::new(format!("zmod:{n}"), n, vec!["1".into()], vec![n], vec![vec![vec![1 % n]]], vec![1], idempotents, Some(true))
}

fn trunc_poly(p: u64, n: usize, name: &str) -> Result<Alg> {
    let basis: Vec<String> = (0..n)
        .map(|i| match (i, n) {
            (0, _) => "1".to_string(),
            (1, 2) => "eps".to_string(),
            (1, _) => "x".to_string(),
            _ => format!("x^{i}"),
        })
        .collect();
    let structure = (0..n).map(|i| (0..n).map(|j| (0..n).map(|t| u64::from(i + j == t)).collect()).collect()).collect();
    let mut unit = vec![0; n];
    unit[0] = 1;
    FinAlgebra::new(name, p, basis, vec![p; n], structure, unit, None, Some(true))
}

fn upper_triangular(p: u64, n: usize, name: &str) -> Result<Alg> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
    let r = pairs.len();
    let idx = |i: usize, j: usize| pairs.iter().position(|&q| q == (i, j)).unwrap();
    let mut structure = vec![vec![vec![0u64; r]; r]; r];
    for (a, &(i, j)) in pairs.iter().enumerate() {
        for (b, &(k, l)) in pairs.iter().enumerate() {
            if j == k {
                structure[a][b][idx(i, l)] = 1;
            }
        }
    }
    let basis = pairs.iter().map(|&(i, j)| format!("E{}{}", i + 1, j + 1)).collect();
    let unit = (0..r).map(|a| u64::from(pairs[a].0 == pairs[a].1)).collect();
    let idempotents = (0..n).map(|i| (0..r).map(|a| u64::from(a == idx(i, i))).collect()).collect();
    FinAlgebra::new(name, p, basis, vec![p; r], structure, unit, Some(idempotents), Some(n == 1))
}

#[derive(Clone, Debug)]
struct Path {
    src: usize,
    tgt: usize,
    /// arrow indices in traversal order
    arrows: Vec<usize>,
}

fn path_algebra(rest: &str, name: &str) -> Result<Alg> {
    let mut p = 2u64;
    let mut nverts: Option<usize> = None;
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    for seg in rest.split(':') {
        let seg = seg.trim();
        if let Some(v) = seg.strip_prefix("p=") {
            p = modulus(v)?;
        } else if let Some(v) = seg.strip_prefix("v=") {
            nverts = Some(parse_num(v, "vertex count")? as usize);
        } else if seg.contains("->") {
            for a in seg.split(',') {
                let (s, t) = a.split_once("->").ok_or_else(|| Error::Invalid(format!("bad arrow '{a}'")))?;
                let s = parse_num(s, "vertex")? as usize;
                let t = parse_num(t, "vertex")? as usize;
                if s == 0 || t == 0 {
                    return Err(Error::Invalid("vertices are numbered from 1".into()));
                }
                arrows.push((s - 1, t - 1));
            }
        } else if !seg.is_empty() {
            nverts = Some(parse_num(seg, "vertex count")? as usize);
        }
    }
    let used = arrows.iter().map(|&(s, t)| s.max(t) + 1).max().unwrap_or(0);
    let n = nverts.unwrap_or(used).max(used);
    if n == 0 {
        return Err(Error::Invalid("quiver has no vertices".into()));
    }
    // all paths, shortest first; a cycle makes the path count explode, so bound lengths by n
    let mut paths: Vec<Path> = (0..n).map(|v| Path { src: v, tgt: v, arrows: vec![] }).collect();
    let mut frontier: Vec<Path> = paths.clone();
    for len in 1..=n {
        let mut next = Vec::new();
        for q in &frontier {
            for (ai, &(s, t)) in arrows.iter().enumerate() {
                if s == q.tgt {
                    let mut ar = q.arrows.clone();
                    ar.push(ai);
                    next.push(Path { src: q.src, tgt: t, arrows: ar });
                }
            }
        }
        if len == n && !next.is_empty() {
            return Err(Error::Invalid("path algebra quiver must be acyclic".into()));
        }
        paths.extend(next.iter().cloned());
        frontier = next;
    }
    let r = paths.len();
    let find = |src: usize, tgt: usize, ar: &[usize]| paths.iter().position(|q| q.src == src && q.tgt == tgt && q.arrows == ar);
    let mut structure = vec![vec![vec![0u64; r]; r]; r];
    for (a, pa) in paths.iter().enumerate() {
        for (b, pb) in paths.iter().enumerate() {
            // pa·pb: first pb, then pa
            if pb.tgt == pa.src {
                let mut ar = pb.arrows.clone();
                ar.extend(&pa.arrows);
                let c = find(pb.src, pa.tgt, &ar).unwrap();
                structure[a][b][c] = 1;
            }
        }
    }
    let basis = paths
        .iter()
        .map(|q| {
            if q.arrows.is_empty() {
                format!("e{}", q.src + 1)
            } else {
                q.arrows.iter().rev().map(|&a| format!("a{}", a + 1)).collect::<Vec<_>>().join("*")
            }
        })
        .collect();
    let unit = (0..r).map(|a| u64::from(a < n)).collect();
    let idempotents = (0..n).map(|v| (0..r).map(|a| u64::from(a == v)).collect()).collect();
    FinAlgebra::new(name, p, basis, vec![p; r], structure, unit, Some(idempotents), Some(arrows.is_empty()))
}

fn product(algs: &[Alg], name: &str) -> Result<Alg> {
    let m = algs.iter().fold(1, |acc, a| lcm(acc, a.m));
    let r: usize = algs.iter().map(|a| a.rank()).sum();
    let mut structure = vec![vec![vec![0u64; r]; r]; r];
    let mut basis = Vec::new();
    let mut orders = Vec::new();
    let mut unit = Vec::new();
    let mut idempotents = Vec::new();
    let mut off = 0;
    for (k, a) in algs.iter().enumerate() {
        let ra = a.rank();
        for i in 0..ra {
            for j in 0..ra {
                for t in 0..ra {
                    structure[off + i][off + j][off + t] = a.structure[i][j][t];
                }
            }
        }
        basis.extend(a.basis.iter().map(|b| format!("{b}@{}", k + 1)));
        orders.extend(&a.orders);
        unit.extend(&a.unit);
        let pad = |x: &[u64]| {
            let mut v = vec![0u64; r];
            v[off..off + ra].copy_from_slice(x);
            v
        };
        match &a.idempotents {
            Some(ids) => idempotents.extend(ids.iter().map(|e| pad(e))),
            None => idempotents.push(pad(&a.unit)),
        }
        off += ra;
    }
    let commutative = algs.iter().all(|a| a.is_commutative());
    FinAlgebra::new(name, m, basis, orders, structure, unit, Some(idempotents), Some(commutative))
}
