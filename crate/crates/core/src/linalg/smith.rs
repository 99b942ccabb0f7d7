//! Smith-type diagonalisation over ℤ/m, used to put quotients of (ℤ/m)^k into
//! the canonical shape ⊕ ℤ/eⱼ with e₁ | e₂ | ….

use super::arith::{gcd, gcdex, reduce_i128};
use super::matrix::ZmMatrix;

/// A presentation of (ℤ/m)^k / R as ⊕ ℤ/eⱼ.
#[derive(Clone, Debug)]
pub struct QuotientData {
    /// Invariant factors, each > 1 and dividing m, in divisibility order.
    pub orders: Vec<u64>,
    /// k' × k: column vector in (ℤ/m)^k ↦ coordinates in ⊕ ℤ/eⱼ.
    pub proj: ZmMatrix,
    /// k × k': coordinates ↦ a representative in (ℤ/m)^k.
    pub lift: ZmMatrix,
}

/// Bezout coefficients that leave the pivot untouched when it already divides `b`;
/// otherwise elimination can cycle.
fn bezout(a: i128, b: i128) -> (i128, i128, i128) {
    if a != 0 && b % a == 0 {
        (a, 1, 0)
    } else {
        gcdex(a, b)
    }
}

struct Work {
    m: u64,
    r: Vec<Vec<u64>>,
    q: Vec<Vec<u64>>,
    qinv: Vec<Vec<u64>>,
    k: usize,
}

impl Work {
    fn col_op(&mut self, t: usize, j: usize) {
        // columns t, j of R and Q: (col_t, col_j) ← (s·col_t + u·col_j, −(b/g)·col_t + (a/g)·col_j)
        let m = self.m as i128;
        let a = self.r[t][t] as i128;
        let b = self.r[t][j] as i128;
        let (g, s, u) = bezout(a, b);
        let (x, y) = (-(b / g), a / g);
        let apply = |mat: &mut Vec<Vec<u64>>| {
            for row in mat.iter_mut() {
                let ct = row[t] as i128;
                let cj = row[j] as i128;
                row[t] = reduce_i128((s * ct) % m + (u * cj) % m, m as u64);
                row[j] = reduce_i128((x * ct) % m + (y * cj) % m, m as u64);
            }
        };
        apply(&mut self.r);
        apply(&mut self.q);
        // inverse transform acts on rows t, j of Q⁻¹: [[a/g, b/g], [−u, s]]
        let (rt, rj) = (self.qinv[t].clone(), self.qinv[j].clone());
        for c in 0..self.k {
            let vt = rt[c] as i128;
            let vj = rj[c] as i128;
            self.qinv[t][c] = reduce_i128(((a / g) * vt) % m + ((b / g) * vj) % m, m as u64);
            self.qinv[j][c] = reduce_i128((-u * vt) % m + (s * vj) % m, m as u64);
        }
    }

    fn row_op(&mut self, t: usize, i: usize, col: usize) {
        let m = self.m as i128;
        let a = self.r[t][col] as i128;
        let b = self.r[i][col] as i128;
        let (g, s, u) = bezout(a, b);
        let (x, y) = (-(b / g), a / g);
        let (rt, ri) = (self.r[t].clone(), self.r[i].clone());
        for c in 0..self.k {
            let vt = rt[c] as i128;
            let vi = ri[c] as i128;
            self.r[t][c] = reduce_i128((s * vt) % m + (u * vi) % m, m as u64);
            self.r[i][c] = reduce_i128((x * vt) % m + (y * vi) % m, m as u64);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in self.r.iter_mut().chain(self.q.iter_mut()) {
            row.swap(a, b);
        }
        self.qinv.swap(a, b);
    }
}

/// Presentation of (ℤ/m)^k modulo the row span of `relations`.
pub fn quotient_of_free(m: u64, k: usize, relations: &[Vec<u64>]) -> QuotientData {
    let ident = |n: usize| -> Vec<Vec<u64>> { (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect() };
    let mut w = Work {
        m,
        r: relations.iter().map(|row| row.iter().map(|&x| x % m).collect()).collect(),
        q: ident(k),
        qinv: ident(k),
        k,
    };
    let nrel = w.r.len();
    let mut t = 0;
    while t < nrel.min(k) {
        // pivot: smallest gcd with m in the trailing block
        let mut best: Option<(u64, usize, usize)> = None;
        for i in t..nrel {
            for j in t..k {
                let v = w.r[i][j];
                if v != 0 {
                    let g = gcd(v, m);
                    if best.is_none_or(|(bg, _, _)| g < bg) {
                        best = Some((g, i, j));
                    }
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        w.r.swap(t, pi);
        w.swap_cols(t, pj);
        loop {
            for i in t + 1..nrel {
                if w.r[i][t] != 0 {
                    w.row_op(t, i, t);
                }
            }
            let mut touched = false;
            for j in t + 1..k {
                if w.r[t][j] != 0 {
                    w.col_op(t, j);
                    touched = true;
                }
            }
            if touched && (t + 1..nrel).any(|i| w.r[i][t] != 0) {
                continue;
            }
            let g = gcd(w.r[t][t], m);
            let bad = (t + 1..nrel).find(|&i| (t + 1..k).any(|j| w.r[i][j] % g != 0));
            match bad {
                Some(i) => {
                    let row = w.r[i].clone();
                    for c in 0..k {
                        w.r[t][c] = (w.r[t][c] + row[c]) % m;
                    }
                }
                None => break,
            }
        }
        t += 1;
    }
    let mut kept = Vec::new();
    for j in 0..k {
        let e = if j < t { gcd(w.r[j][j], m) } else { m };
        if e > 1 {
            kept.push((j, e));
        }
    }
    let orders: Vec<u64> = kept.iter().map(|&(_, e)| e).collect();
    let proj = ZmMatrix::from_fn(m, kept.len(), k, |a, i| w.q[i][kept[a].0] % kept[a].1);
    let lift = ZmMatrix::from_fn(m, k, kept.len(), |i, a| w.qinv[kept[a].0][i]);
    QuotientData { orders, proj, lift }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::howell::{howell_rows, in_span};
    use proptest::prelude::*;

    fn check(m: u64, k: usize, rels: &[Vec<u64>]) {
        let q = quotient_of_free(m, k, rels);
        let n = q.orders.len();
        for w in q.orders.windows(2) {
            assert_eq!(w[1] % w[0], 0, "divisibility chain {:?}", q.orders);
        }
        // |quotient| = m^k / |relation span|
        let basis = howell_rows(m, k, rels.to_vec());
        let span: u128 = crate::linalg::howell::span_size(m, &basis);
        let total = (m as u128).pow(k as u32);
        let size: u128 = q.orders.iter().map(|&e| e as u128).product();
        assert_eq!(size * span, total);
        // proj ∘ lift = id on coordinates
        let pl = q.proj.mul(&q.lift);
        for a in 0..n {
            for b in 0..n {
                assert_eq!(pl.get(a, b) % q.orders[a], u64::from(a == b));
            }
        }
        // relations map to zero, and lift∘proj differs from id by a relation
        for r in rels {
            let y = q.proj.mul_vec(r);
            assert!(y.iter().zip(&q.orders).all(|(v, e)| v % e == 0));
        }
        for i in 0..k {
            let e: Vec<u64> = (0..k).map(|j| u64::from(i == j)).collect();
            let back = q.lift.mul_vec(&q.proj.mul_vec(&e));
            let diff: Vec<u64> = back.iter().zip(&e).map(|(a, b)| (a + m - b) % m).collect();
            assert!(in_span(m, &basis, &diff));
        }
    }

    #[test]
    fn known_quotients() {
        let q = quotient_of_free(4, 1, &[vec![2]]);
        assert_eq!(q.orders, vec![2]);
        let q = quotient_of_free(6, 2, &[vec![2, 0], vec![0, 3]]);
        let size: u64 = q.orders.iter().product();
        assert_eq!(size, 6);
        check(6, 2, &[vec![2, 0], vec![0, 3]]);
        let q = quotient_of_free(8, 2, &[]);
        assert_eq!(q.orders, vec![8, 8]);
    }

    proptest! {
        #[test]
        fn random_quotients(m in prop::sample::select(vec![2u64, 4, 6, 8, 9, 12]), k in 1usize..4, n in 0usize..4, seed in prop::collection::vec(0u64..1000, 16)) {
            let rels: Vec<Vec<u64>> = (0..n).map(|i| (0..k).map(|j| seed[(i * 4 + j) % 16] % m).collect()).collect();
            check(m, k, &rels);
        }
    }
}
