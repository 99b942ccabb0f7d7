//! Hom spaces and a general solver for linear systems whose unknowns are
//! module maps: Σ coeff·L·X·R = rhs with each X ranging over a span of
//! generator matrices.

use super::module::{AHom, AModule};
use crate::linalg::arith::{addmod, gcd, mulmod};
use crate::linalg::group::{kernel_hom, solve_hom, AdditivePresentation, Subgroup, SubgroupPresentation};
use crate::linalg::ZmMatrix;

/// The unknown X = Σ cₛ·Gₛ, with cₛ ∈ ℤ/ordersₛ.
#[derive(Clone, Debug)]
pub struct Block {
    pub m: u64,
    pub rows: usize,
    pub cols: usize,
    /// Orders of the target coordinates, used to reduce evaluated matrices.
    pub row_orders: Vec<u64>,
    pub gens: Vec<ZmMatrix>,
    pub orders: Vec<u64>,
}

impl Block {
    /// Every well-defined additive map between two presentations.
    pub fn additive(source: &AdditivePresentation, target: &AdditivePresentation) -> Block {
        let m = source.m;
        let mut gens = Vec::new();
        let mut orders = Vec::new();
        for (k, &ek) in target.orders.iter().enumerate() {
            for (l, &dl) in source.orders.iter().enumerate() {
                let g = gcd(ek, dl);
                if g > 1 {
                    let mut mat = ZmMatrix::zeros(m, target.rank(), source.rank());
                    mat.set(k, l, ek / g);
                    gens.push(mat);
                    orders.push(g);
                }
            }
        }
        Block { m, rows: target.rank(), cols: source.rank(), row_orders: target.orders.clone(), gens, orders }
    }

    pub fn hom(h: &HomSpace) -> Block {
        Block {
            m: h.source.m(),
            rows: h.target.rank(),
            cols: h.source.rank(),
            row_orders: h.target.add.orders.clone(),
            gens: h.gens.clone(),
            orders: h.group.orders.clone(),
        }
    }

    pub fn evaluate(&self, coeffs: &[u64]) -> ZmMatrix {
        let mut out = ZmMatrix::zeros(self.m, self.rows, self.cols);
        for (g, &c) in self.gens.iter().zip(coeffs) {
            if c != 0 {
                out = out.add(&g.scale(c));
            }
        }
        out.reduced_rows(&self.row_orders)
    }
}

#[derive(Clone, Debug)]
struct Term {
    block: usize,
    left: Option<ZmMatrix>,
    right: Option<ZmMatrix>,
    coeff: u64,
}

#[derive(Clone, Debug)]
struct Equation {
    row_orders: Vec<u64>,
    cols: usize,
    terms: Vec<Term>,
    rhs: Option<ZmMatrix>,
}

#[derive(Clone, Debug)]
pub struct LinearSystem {
    m: u64,
    blocks: Vec<Block>,
    eqs: Vec<Equation>,
}

impl LinearSystem {
    pub fn new(m: u64) -> Self {
        LinearSystem { m, blocks: vec![], eqs: vec![] }
    }

    pub fn block(&mut self, b: Block) -> usize {
        self.blocks.push(b);
        self.blocks.len() - 1
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// A new matrix equation whose entries live in the module with `row_orders`; rhs defaults to 0.
    pub fn equation(&mut self, row_orders: &[u64], cols: usize) -> usize {
        self.eqs.push(Equation { row_orders: row_orders.to_vec(), cols, terms: vec![], rhs: None });
        self.eqs.len() - 1
    }

    /// Adds coeff·L·X·R to the left-hand side of `eq`.
    pub fn term(&mut self, eq: usize, block: usize, left: Option<&ZmMatrix>, right: Option<&ZmMatrix>, coeff: u64) {
        self.eqs[eq].terms.push(Term { block, left: left.cloned(), right: right.cloned(), coeff: coeff % self.m });
    }

    pub fn rhs(&mut self, eq: usize, rhs: &ZmMatrix) {
        self.eqs[eq].rhs = Some(rhs.clone());
    }

    pub fn var_presentation(&self) -> AdditivePresentation {
        AdditivePresentation { m: self.m, orders: self.blocks.iter().flat_map(|b| b.orders.iter().copied()).collect() }
    }

    fn row_presentation(&self) -> AdditivePresentation {
        let mut orders = Vec::new();
        for e in &self.eqs {
            for &o in &e.row_orders {
                orders.extend(std::iter::repeat_n(o, e.cols));
            }
        }
        AdditivePresentation { m: self.m, orders }
    }

    /// The images of all generators, flattened row-major per equation.
    fn system_matrix(&self) -> ZmMatrix {
        let m = self.m;
        let nrows: usize = self.eqs.iter().map(|e| e.row_orders.len() * e.cols).sum();
        let nvars: usize = self.blocks.iter().map(|b| b.gens.len()).sum();
        let mut out = ZmMatrix::zeros(m, nrows, nvars);
        let mut var0 = 0;
        for (bi, b) in self.blocks.iter().enumerate() {
            for (s, g) in b.gens.iter().enumerate() {
                let mut off = 0;
                for e in &self.eqs {
                    for t in e.terms.iter().filter(|t| t.block == bi) {
                        let mut val = g.clone();
                        if let Some(l) = &t.left {
                            val = l.mul(&val);
                        }
                        if let Some(r) = &t.right {
                            val = val.mul(r);
                        }
                        for i in 0..e.row_orders.len() {
                            for j in 0..e.cols {
                                let v = mulmod(val.get(i, j), t.coeff, m);
                                if v != 0 {
                                    let row = off + i * e.cols + j;
                                    out.set(row, var0 + s, addmod(out.get(row, var0 + s), v, m));
                                }
                            }
                        }
                    }
                    off += e.row_orders.len() * e.cols;
                }
            }
            var0 += b.gens.len();
        }
        out.reduced_rows(&self.row_presentation().orders)
    }

    fn rhs_vector(&self) -> Vec<u64> {
        let mut v = Vec::new();
        for e in &self.eqs {
            for (i, &o) in e.row_orders.iter().enumerate() {
                for j in 0..e.cols {
                    v.push(e.rhs.as_ref().map_or(0, |r| r.get(i, j) % o));
                }
            }
        }
        v
    }

    pub fn split(&self, coeffs: &[u64]) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let mut k = 0;
        for b in &self.blocks {
            out.push(coeffs[k..k + b.gens.len()].to_vec());
            k += b.gens.len();
        }
        out
    }

    pub fn matrices(&self, coeffs: &[u64]) -> Vec<ZmMatrix> {
        self.split(coeffs).iter().zip(&self.blocks).map(|(c, b)| b.evaluate(c)).collect()
    }

    /// Coefficients of one solution, if any.
    pub fn solve_coeffs(&self) -> Option<Vec<u64>> {
        let vars = self.var_presentation();
        if vars.rank() == 0 {
            return self.rhs_vector().iter().all(|&x| x == 0).then(Vec::new);
        }
        solve_hom(&vars, &self.row_presentation(), &self.system_matrix(), &self.rhs_vector())
    }

    /// One matrix per block, if the system is solvable.
    pub fn solve(&self) -> Option<Vec<ZmMatrix>> {
        self.solve_coeffs().map(|c| self.matrices(&c))
    }

    /// Solutions of the homogeneous system as a subgroup of coefficient space.
    pub fn kernel(&self) -> Subgroup {
        if self.eqs.iter().all(|e| e.row_orders.is_empty() || e.cols == 0) {
            return Subgroup::full(&self.var_presentation());
        }
        kernel_hom(&self.var_presentation(), &self.row_presentation(), &self.system_matrix())
    }

    /// Left-hand side applied to given coefficients, flattened.
    pub fn apply(&self, coeffs: &[u64]) -> Vec<u64> {
        let mut v = self.system_matrix().mul_vec(coeffs);
        self.row_presentation().reduce(&mut v);
        v
    }
}

/// Hom_A(M, N) with an independent generating set: every map is Σ cⱼ·Gⱼ for
/// unique cⱼ ∈ ℤ/ordersⱼ.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: AModule,
    pub target: AModule,
    pub group: AdditivePresentation,
    pub gens: Vec<ZmMatrix>,
    raw: Block,
    pres: SubgroupPresentation,
}

impl HomSpace {
    pub fn new(source: &AModule, target: &AModule) -> HomSpace {
        let m = source.m();
        let raw = Block::additive(&source.add, &target.add);
        let mut sys = LinearSystem::new(m);
        let x = sys.block(raw.clone());
        for i in 0..source.alg.rank() {
            let e = sys.equation(&target.add.orders, source.rank());
            sys.term(e, x, Some(&target.action[i]), None, 1);
            sys.term(e, x, None, Some(&source.action[i]), m - 1);
        }
        let ker = sys.kernel();
        let pres = ker.presentation();
        let gens = (0..pres.group.rank()).map(|j| raw.evaluate(&pres.incl.col_vec(j))).collect();
        HomSpace { source: source.clone(), target: target.clone(), group: pres.group.clone(), gens, raw, pres }
    }

    pub fn size(&self) -> u128 {
        self.group.size()
    }

    pub fn is_zero(&self) -> bool {
        self.group.rank() == 0
    }

    pub fn element(&self, coeffs: &[u64]) -> AHom {
        let mut mat = ZmMatrix::zeros(self.source.m(), self.target.rank(), self.source.rank());
        for (g, &c) in self.gens.iter().zip(coeffs) {
            if c != 0 {
                mat = mat.add(&g.scale(c));
            }
        }
        AHom::from_parts(&self.source, &self.target, mat)
    }

    pub fn generators(&self) -> Vec<AHom> {
        self.gens.iter().map(|g| AHom::from_parts(&self.source, &self.target, g.clone())).collect()
    }

    /// Coordinates of an A-linear map in terms of the generators.
    pub fn coords(&self, mat: &ZmMatrix) -> Option<Vec<u64>> {
        let mut t = Vec::with_capacity(self.raw.gens.len());
        for g in &self.raw.gens {
            // each raw generator has a single entry ek/g at (k, l)
            let (k, l, step) = single_entry(g);
            let v = mat.get(k, l);
            if v % step != 0 {
                return None;
            }
            t.push(v / step);
        }
        self.pres.coords(&t)
    }

    pub fn elements(&self) -> Vec<AHom> {
        self.group.elements().iter().map(|c| self.element(c)).collect()
    }
}

/// Some A-linear X: b.source → a.source with a∘X = b (lifting b along a).
pub fn solve_left(a: &AHom, b: &AHom) -> Option<AHom> {
    let (p, n) = (&b.source, &a.source);
    let h = hom(p, n);
    let mut sys = LinearSystem::new(p.m());
    let x = sys.block(Block::hom(&h));
    let e = sys.equation(&a.target.add.orders, p.rank());
    sys.term(e, x, Some(&a.mat), None, 1);
    sys.rhs(e, &b.mat);
    sys.solve().map(|mats| AHom::from_parts(p, n, mats[0].clone()))
}

/// Some A-linear X: a.target → b.target with X∘a = b (extending b along a).
pub fn solve_right(a: &AHom, b: &AHom) -> Option<AHom> {
    let (q, e) = (&a.target, &b.target);
    let h = hom(q, e);
    let mut sys = LinearSystem::new(q.m());
    let x = sys.block(Block::hom(&h));
    let eq = sys.equation(&e.add.orders, a.source.rank());
    sys.term(eq, x, None, Some(&a.mat), 1);
    sys.rhs(eq, &b.mat);
    sys.solve().map(|mats| AHom::from_parts(q, e, mats[0].clone()))
}

fn single_entry(g: &ZmMatrix) -> (usize, usize, u64) {
    for i in 0..g.rows() {
        for j in 0..g.cols() {
            if g.get(i, j) != 0 {
                return (i, j, g.get(i, j));
            }
        }
    }
    unreachable!("raw generator is nonzero")
}

pub fn hom(source: &AModule, target: &AModule) -> HomSpace {
    HomSpace::new(source, target)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::preset;
    use crate::algebra::submodule::cokernel;

    fn brute_hom_count(s: &AModule, t: &AModule) -> u128 {
        let raw = Block::additive(&s.add, &t.add);
        let pres = AdditivePresentation { m: s.m(), orders: raw.orders.clone() };
        pres.elements()
            .iter()
            .filter(|c| AHom { source: s.clone(), target: t.clone(), mat: raw.evaluate(c) }.is_linear())
            .count() as u128
    }

    #[test]
    fn hom_sizes_match_brute_force() {
        for p in ["dual_numbers:2", "zmod:4", "upper_triangular:2:2", "path_algebra:1->2", "zmod:6"] {
            let a = preset(p).unwrap();
            let r = AModule::regular(&a);
            let z = AModule::zero(&a);
            let mut mods = vec![r.clone(), z];
            // a cyclic quotient
            let x = a.basis_vec(a.rank() - 1);
            let f = AHom::from_parts(&r, &r, a.right_mult(&x));
            if f.is_linear() {
                mods.push(cokernel(&f).module);
            }
            for s in &mods {
                for t in &mods {
                    let h = hom(s, t);
                    assert_eq!(h.size(), brute_hom_count(s, t), "{p}");
                    for g in h.generators() {
                        assert!(g.is_linear());
                    }
                }
            }
        }
    }

    #[test]
    fn coords_round_trip() {
        let a = preset("product:dual_numbers:2,zmod:4").unwrap();
        let r = AModule::regular(&a);
        let h = hom(&r, &r);
        assert_eq!(h.size(), 16);
        for c in h.group.elements() {
            let f = h.element(&c);
            assert_eq!(h.coords(&f.mat).unwrap(), c);
        }
    }

    #[test]
    fn solving_for_a_factorization() {
        // find X with ε·X = ε on F2[ε]; X = 1 works, and so does 1 + ε
        let a = preset("dual_numbers:2").unwrap();
        let r = AModule::regular(&a);
        let h = hom(&r, &r);
        let eps = a.right_mult(&a.basis_vec(1));
        let mut sys = LinearSystem::new(2);
        let x = sys.block(Block::hom(&h));
        let e = sys.equation(&r.add.orders, 2);
        sys.term(e, x, Some(&eps), None, 1);
        sys.rhs(e, &eps);
        let sol = sys.solve().unwrap();
        assert_eq!(eps.mul(&sol[0]), eps);
        assert_eq!(sys.kernel().size(), 2);
        // ε·X = 1 has no solution
        let mut sys2 = LinearSystem::new(2);
        let x = sys2.block(Block::hom(&h));
        let e = sys2.equation(&r.add.orders, 2);
        sys2.term(e, x, Some(&eps), None, 1);
        sys2.rhs(e, &ZmMatrix::identity(2, 2));
        assert!(sys2.solve().is_none());
    }
}
