//! Howell normal form over ℤ/m, and the solve/kernel routines built on it.
//!
//! A Howell basis is an echelon basis of a row module with pivots normalised
//! to divisors of m, entries above each pivot reduced below it, and the extra
//! saturation property: for every k, the rows whose leading entry lies at or
//! beyond column k span every element of the module that vanishes in the first
//! k columns. The basis is unique, so submodules compare by equality.

use super::arith::{gcd, gcdex, mulmod, reduce_i128, submod, unit_normalizer};
use super::matrix::ZmMatrix;
use crate::error::{Error, Result};

fn is_zero(v: &[u64]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// Replace (p, r) by (s·p + t·r, −(b/g)·p + (a/g)·r) where a = p[c], b = r[c].
/// The 2×2 transform has determinant one, so it is invertible over ℤ/m.
fn combine(p: &mut [u64], r: &mut [u64], c: usize, m: u64) {
    let a = p[c] as i128;
    let b = r[c] as i128;
    let (g, s, t) = gcdex(a, b);
    let u = -(b / g);
    let v = a / g;
    let mi = m as i128;
    for k in c..p.len() {
        let x = p[k] as i128;
        let y = r[k] as i128;
        p[k] = reduce_i128((s * x % mi) + (t * y % mi), m);
        r[k] = reduce_i128((u * x % mi) + (v * y % mi), m);
    }
}

fn scale_row(v: &mut [u64], c: u64, m: u64) {
    for x in v.iter_mut() {
        *x = mulmod(*x, c, m);
    }
}

fn sub_multiple(q: &mut [u64], p: &[u64], k: u64, m: u64, from: usize) {
    for j in from..q.len() {
        q[j] = submod(q[j], mulmod(k, p[j], m), m);
    }
}

/// Howell basis of the row span of `rows` (each of length `ncols`).
/// Rows come back ordered by pivot column.
pub fn howell_rows(m: u64, ncols: usize, rows: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let mut work: Vec<Vec<u64>> = rows
        .into_iter()
        .map(|mut r| {
            debug_assert_eq!(r.len(), ncols);
            for x in r.iter_mut() {
                *x %= m;
            }
            r
        })
        .filter(|r| !is_zero(r))
        .collect();
    let mut result: Vec<(usize, Vec<u64>)> = Vec::new();
    for c in 0..ncols {
        if work.is_empty() {
            break;
        }
        let mut piv: Option<Vec<u64>> = None;
        let mut rest = Vec::with_capacity(work.len());
        for mut r in work.drain(..) {
            if r[c] == 0 {
                rest.push(r);
                continue;
            }
            match piv.as_mut() {
                None => piv = Some(r),
                Some(p) => {
                    combine(p, &mut r, c, m);
                    if !is_zero(&r) {
                        rest.push(r);
                    }
                }
            }
        }
        work = rest;
        if let Some(mut p) = piv {
            let u = unit_normalizer(p[c], m);
            if u != 1 {
                scale_row(&mut p, u, m);
            }
            let g = p[c];
            for (_, q) in result.iter_mut() {
                let k = q[c] / g;
                if k > 0 {
                    sub_multiple(q, &p, k, m, c);
                }
            }
            let mut s = p.clone();
            scale_row(&mut s, m / g, m);
            if !is_zero(&s) {
                work.push(s);
            }
            result.push((c, p));
        }
    }
    result.into_iter().map(|(_, r)| r).collect()
}

/// Pivot column of a nonzero row.
pub fn pivot(row: &[u64]) -> Option<usize> {
    row.iter().position(|&x| x != 0)
}

/// Howell form of M together with a transform: H = U·M, and the rows of H span
/// the row module of M. H keeps only its nonzero rows (at most `cols` of them),
/// so U is `rank × rows` rather than square; the rows of M are recovered from H
/// by `reduce_against`.
pub fn howell_form(mat: &ZmMatrix) -> (ZmMatrix, ZmMatrix) {
    let m = mat.modulus();
    let (r, c) = mat.shape();
    let aug: Vec<Vec<u64>> = (0..r)
        .map(|i| {
            let mut v = mat.row(i).to_vec();
            v.extend((0..r).map(|j| u64::from(i == j)));
            v
        })
        .collect();
    let h = howell_rows(m, c + r, aug);
    let top: Vec<&Vec<u64>> = h.iter().filter(|row| !is_zero(&row[..c])).collect();
    let hm = ZmMatrix::from_row_vecs(m, c, &top.iter().map(|row| row[..c].to_vec()).collect::<Vec<_>>());
    let um = ZmMatrix::from_row_vecs(m, r, &top.iter().map(|row| row[c..].to_vec()).collect::<Vec<_>>());
    (hm, um)
}

/// Reduce v against a Howell basis. Returns the remainder and the coefficient
/// vector (length = number of basis rows) used: v = Σ coeffᵢ·rowᵢ + remainder.
/// The remainder is zero iff v lies in the span.
pub fn reduce_against(m: u64, basis: &[Vec<u64>], v: &[u64]) -> (Vec<u64>, Vec<u64>) {
    let mut rem: Vec<u64> = v.iter().map(|&x| x % m).collect();
    let mut coeffs = vec![0u64; basis.len()];
    for (i, row) in basis.iter().enumerate() {
        let c = pivot(row).expect("basis rows are nonzero");
        let g = row[c];
        if rem[c] % g == 0 && rem[c] != 0 {
            let k = rem[c] / g;
            sub_multiple(&mut rem, row, k, m, c);
            coeffs[i] = k;
        }
    }
    (rem, coeffs)
}

pub fn in_span(m: u64, basis: &[Vec<u64>], v: &[u64]) -> bool {
    is_zero(&reduce_against(m, basis, v).0)
}

/// Precomputed data for repeatedly solving A·x = b with a fixed A.
#[derive(Clone, Debug)]
pub struct Solver {
    m: u64,
    nrows: usize,
    ncols: usize,
    /// Howell basis of rows [A[:,j] | e_j]; left block has `nrows` columns.
    basis: Vec<Vec<u64>>,
}

impl Solver {
    pub fn new(a: &ZmMatrix) -> Self {
        let m = a.modulus();
        let (r, c) = a.shape();
        let rows: Vec<Vec<u64>> = (0..c)
            .map(|j| {
                let mut v: Vec<u64> = (0..r).map(|i| a.get(i, j)).collect();
                v.extend((0..c).map(|k| u64::from(k == j)));
                v
            })
            .collect();
        let basis = howell_rows(m, r + c, rows);
        Solver { m, nrows: r, ncols: c, basis }
    }

    pub fn solve(&self, b: &[u64]) -> Option<Vec<u64>> {
        assert_eq!(b.len(), self.nrows, "right-hand side length");
        let m = self.m;
        let r = self.nrows;
        let mut v: Vec<u64> = b.iter().map(|&x| x % m).collect();
        v.extend(std::iter::repeat_n(0, self.ncols));
        for row in &self.basis {
            let c = pivot(row).unwrap();
            if c >= r {
                break;
            }
            let g = row[c];
            if v[c] % g != 0 {
                return None;
            }
            let k = v[c] / g;
            if k != 0 {
                sub_multiple(&mut v, row, k, m, c);
            }
        }
        if !is_zero(&v[..r]) {
            return None;
        }
        Some(v[r..].iter().map(|&x| super::arith::negmod(x, m)).collect())
    }

    /// Howell basis of {x : A·x = 0}.
    pub fn kernel_rows(&self) -> Vec<Vec<u64>> {
        let r = self.nrows;
        let tails: Vec<Vec<u64>> = self
            .basis
            .iter()
            .filter(|row| is_zero(&row[..r]))
            .map(|row| row[r..].to_vec())
            .collect();
        howell_rows(self.m, self.ncols, tails)
    }
}

pub fn solve(a: &ZmMatrix, b: &ZmMatrix) -> Result<Option<Vec<u64>>> {
    if a.modulus() != b.modulus() {
        return Err(Error::ModulusMismatch(a.modulus(), b.modulus()));
    }
    if b.cols() != 1 || b.rows() != a.rows() {
        return Err(Error::DimensionMismatch(format!(
            "system has {} rows, right-hand side is {}x{}",
            a.rows(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(Solver::new(a).solve(&b.col_vec(0)))
}

/// Rows spanning {x : A·x = 0}, in Howell form.
pub fn kernel(a: &ZmMatrix) -> ZmMatrix {
    let rows = Solver::new(a).kernel_rows();
    ZmMatrix::from_row_vecs(a.modulus(), a.cols(), &rows)
}

/// Number of elements of the row module spanned by a Howell basis.
pub fn span_size(m: u64, basis: &[Vec<u64>]) -> u128 {
    basis.iter().map(|row| (m / row[pivot(row).unwrap()]) as u128).product()
}

/// Enumerate every element of the span of a Howell basis. Each element is
/// Σ kᵢ·rowᵢ with 0 ≤ kᵢ < m/pivotᵢ, without repetition.
pub fn span_elements(m: u64, ncols: usize, basis: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![0u64; ncols]];
    for row in basis {
        let g = row[pivot(row).unwrap()];
        let count = m / g;
        let mut next = Vec::with_capacity(out.len() * count as usize);
        for v in &out {
            let mut w = v.clone();
            for _ in 0..count {
                next.push(w.clone());
                for j in 0..ncols {
                    w[j] = super::arith::addmod(w[j], row[j], m);
                }
            }
        }
        out = next;
    }
    out
}

/// True when the rows are a Howell basis (used as a debugging invariant).
pub fn is_howell(m: u64, ncols: usize, rows: &[Vec<u64>]) -> bool {
    howell_rows(m, ncols, rows.to_vec()) == rows
}

/// gcd-based test for whether g divides x in ℤ/m.
pub fn divides(g: u64, x: u64, m: u64) -> bool {
    x % gcd(g, m) == 0
}
