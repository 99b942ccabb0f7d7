//! Finite unital associative ℤ/m-algebras given by structure constants.

use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::{Deserialize, Serialize};

use crate::config;
use crate::error::{Error, Result};
use crate::linalg::arith::{addmod, mulmod, negmod};
use crate::linalg::group::{solve_hom, AdditivePresentation, Subgroup};
use crate::linalg::ZmMatrix;

pub type Alg = Arc<FinAlgebra>;

/// JSON form of an algebra. `orders` may be omitted when every basis element
/// has additive order m.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AlgebraData {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub m: u64,
    pub rank: usize,
    pub basis: Vec<String>,
    pub structure: Vec<Vec<Vec<u64>>>,
    pub unit: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub idempotents: Option<Vec<Vec<u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub commutative: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<u64>>,
}

#[derive(Default)]
pub(crate) struct Memo {
    units: OnceLock<Result<Vec<bool>>>,
    radical: OnceLock<Result<Subgroup>>,
    pub(crate) left_ideals: OnceLock<Result<Vec<Subgroup>>>,
    pub(crate) simples: OnceLock<Result<Vec<crate::algebra::AModule>>>,
    pub(crate) projectives: OnceLock<Result<Vec<crate::algebra::cover::IndecProj>>>,
    pub(crate) qf: OnceLock<Result<crate::algebra::ideals::QfReport>>,
    pub(crate) hereditary: OnceLock<Result<bool>>,
    op: OnceLock<Alg>,
}

pub struct FinAlgebra {
    pub name: String,
    pub m: u64,
    pub basis: Vec<String>,
    /// Additive order of each basis element; all divide m.
    pub orders: Vec<u64>,
    /// structure[i][j] = coordinates of bᵢ·bⱼ.
    pub structure: Vec<Vec<Vec<u64>>>,
    pub unit: Vec<u64>,
    pub idempotents: Option<Vec<Vec<u64>>>,
    pub commutative: Option<bool>,
    pub(crate) memo: Memo,
}

impl fmt::Debug for FinAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinAlgebra({}, m={}, rank={})", self.name, self.m, self.rank())
    }
}

impl PartialEq for FinAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.orders == other.orders && self.structure == other.structure && self.unit == other.unit
    }
}

impl Eq for FinAlgebra {}

pub fn same_algebra(a: &Alg, b: &Alg) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FinAlgebra {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        m: u64,
        basis: Vec<String>,
        orders: Vec<u64>,
        structure: Vec<Vec<Vec<u64>>>,
        unit: Vec<u64>,
        idempotents: Option<Vec<Vec<u64>>>,
        commutative: Option<bool>,
    ) -> Result<Alg> {
        let r = basis.len();
        let add = AdditivePresentation::new(m, orders.clone())?;
        if add.rank() != r || unit.len() != r {
            return Err(Error::DimensionMismatch(format!("rank {r} but {} orders and unit of length {}", orders.len(), unit.len())));
        }
        if structure.len() != r || structure.iter().any(|row| row.len() != r || row.iter().any(|v| v.len() != r)) {
            return Err(Error::DimensionMismatch(format!("structure constants must be {r}x{r}x{r}")));
        }
        let alg = FinAlgebra {
            name: name.into(),
            m,
            basis,
            orders,
            structure,
            unit,
            idempotents,
            commutative,
            memo: Memo::default(),
        };
        alg.validate()?;
        Ok(Arc::new(alg))
    }

    fn validate(&self) -> Result<()> {
        let r = self.rank();
        let bad = |msg: String| Err(Error::Invalid(msg));
        for (i, (&u, &o)) in self.unit.iter().zip(&self.orders).enumerate() {
            if u >= o {
                return bad(format!("unit coordinate {i} not reduced"));
            }
        }
        for i in 0..r {
            for j in 0..r {
                for t in 0..r {
                    let c = self.structure[i][j][t];
                    let ot = self.orders[t];
                    if c >= ot {
                        return bad(format!("structure constant c[{i}][{j}][{t}] = {c} not reduced mod {ot}"));
                    }
                    // bilinearity over ℤ: oᵢ·(bᵢbⱼ) = 0 = oⱼ·(bᵢbⱼ)
                    if mulmod(c, self.orders[i], ot) != 0 || mulmod(c, self.orders[j], ot) != 0 {
                        return bad(format!("product b{i}·b{j} incompatible with additive orders"));
                    }
                }
            }
        }
        let e = |i: usize| self.basis_vec(i);
        for i in 0..r {
            for j in 0..r {
                let bij = self.mul(&e(i), &e(j));
                for k in 0..r {
                    let lhs = self.mul(&bij, &e(k));
                    let rhs = self.mul(&e(i), &self.mul(&e(j), &e(k)));
                    if lhs != rhs {
                        return bad(format!("associativity fails on basis triple ({i},{j},{k})"));
                    }
                }
            }
        }
        for i in 0..r {
            if self.mul(&self.unit, &e(i)) != e(i) || self.mul(&e(i), &self.unit) != e(i) {
                return bad(format!("unit is not a two-sided identity on basis element {i}"));
            }
        }
        if let Some(ids) = &self.idempotents {
            for (a, x) in ids.iter().enumerate() {
                if x.len() != r {
                    return Err(Error::DimensionMismatch(format!("idempotent {a} has length {}", x.len())));
                }
                let x = self.reduced(x);
                if self.mul(&x, &x) != x {
                    return bad(format!("idempotent {a} does not square to itself"));
                }
                for (b, y) in ids.iter().enumerate() {
                    if a != b && !self.is_zero(&self.mul(&x, &self.reduced(y))) {
                        return bad(format!("idempotents {a} and {b} are not orthogonal"));
                    }
                }
            }
        }
        if self.commutative == Some(true) {
            for i in 0..r {
                for j in 0..i {
                    if self.structure[i][j] != self.structure[j][i] {
                        return bad(format!("declared commutative but b{i}·b{j} ≠ b{j}·b{i}"));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn from_data(d: &AlgebraData) -> Result<Alg> {
        if d.basis.len() != d.rank {
            return Err(Error::DimensionMismatch(format!("rank {} but {} basis labels", d.rank, d.basis.len())));
        }
        let orders = d.orders.clone().unwrap_or_else(|| vec![d.m; d.rank]);
        FinAlgebra::new(
            d.name.clone().unwrap_or_else(|| "custom".into()),
            d.m,
            d.basis.clone(),
            orders,
            d.structure.clone(),
            d.unit.clone(),
            d.idempotents.clone(),
            d.commutative,
        )
    }

    pub fn to_data(&self) -> AlgebraData {
        AlgebraData {
            name: Some(self.name.clone()),
            m: self.m,
            rank: self.rank(),
            basis: self.basis.clone(),
            structure: self.structure.clone(),
            unit: self.unit.clone(),
            idempotents: self.idempotents.clone(),
            commutative: self.commutative,
            orders: if self.orders.iter().all(|&o| o == self.m) { None } else { Some(self.orders.clone()) },
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn additive(&self) -> AdditivePresentation {
        AdditivePresentation { m: self.m, orders: self.orders.clone() }
    }

    pub fn size(&self) -> u128 {
        self.additive().size()
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.rank()]
    }

    pub fn basis_vec(&self, i: usize) -> Vec<u64> {
        (0..self.rank()).map(|j| u64::from(i == j) % self.orders[j]).collect()
    }

    pub fn scalar(&self, c: u64) -> Vec<u64> {
        self.unit.iter().zip(&self.orders).map(|(&u, &o)| mulmod(u, c, o)).collect()
    }

    pub fn reduced(&self, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.orders).map(|(&v, &o)| v % o).collect()
    }

    pub fn is_zero(&self, x: &[u64]) -> bool {
        x.iter().all(|&v| v == 0)
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).zip(&self.orders).map(|((&a, &b), &o)| addmod(a, b, o)).collect()
    }

    pub fn neg(&self, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.orders).map(|(&a, &o)| negmod(a % o, o)).collect()
    }

    pub fn sub(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        self.add(x, &self.neg(y))
    }

    pub fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let r = self.rank();
        let m = self.m;
        let mut out = vec![0u64; r];
        for i in 0..r {
            if x[i] == 0 {
                continue;
            }
            for j in 0..r {
                if y[j] == 0 {
                    continue;
                }
                let c = mulmod(x[i], y[j], m);
                let row = &self.structure[i][j];
                for t in 0..r {
                    if row[t] != 0 {
                        out[t] = addmod(out[t], mulmod(c, row[t], m), m);
                    }
                }
            }
        }
        self.reduced(&out)
    }

    /// Matrix of y ↦ x·y on the additive group.
    pub fn left_mult(&self, x: &[u64]) -> ZmMatrix {
        let r = self.rank();
        let cols: Vec<Vec<u64>> = (0..r).map(|j| self.mul(x, &self.basis_vec(j))).collect();
        ZmMatrix::from_fn(self.m, r, r, |i, j| cols[j][i])
    }

    /// Matrix of y ↦ y·x.
    pub fn right_mult(&self, x: &[u64]) -> ZmMatrix {
        let r = self.rank();
        let cols: Vec<Vec<u64>> = (0..r).map(|j| self.mul(&self.basis_vec(j), x)).collect();
        ZmMatrix::from_fn(self.m, r, r, |i, j| cols[j][i])
    }

    pub fn is_commutative(&self) -> bool {
        let r = self.rank();
        (0..r).all(|i| (0..i).all(|j| self.structure[i][j] == self.structure[j][i]))
    }

    /// A^op, built once per algebra so that dual modules share one Arc.
    pub fn opposite(&self) -> Alg {
        self.memo.op.get_or_init(|| self.build_opposite()).clone()
    }

    fn build_opposite(&self) -> Alg {
        let r = self.rank();
        let structure = (0..r).map(|i| (0..r).map(|j| self.structure[j][i].clone()).collect()).collect();
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        Arc::new(FinAlgebra {
            name,
            m: self.m,
            basis: self.basis.clone(),
            orders: self.orders.clone(),
            structure,
            unit: self.unit.clone(),
            idempotents: self.idempotents.clone(),
            commutative: self.commutative,
            memo: Memo::default(),
        })
    }

    fn check_enumerable(&self, what: &str) -> Result<()> {
        let cap = config::ideal_cap();
        if self.size() > cap {
            return Err(Error::SearchBoundExceeded { what: what.into(), needed: self.size(), cap });
        }
        Ok(())
    }

    /// Elements in the order used by `index_of`.
    pub fn elements(&self) -> Result<Vec<Vec<u64>>> {
        self.check_enumerable("algebra elements")?;
        // lexicographic with the first coordinate slowest, matching index_of
        Ok(self.additive().elements())
    }

    pub fn index_of(&self, x: &[u64]) -> usize {
        let mut idx = 0usize;
        for (&v, &o) in x.iter().zip(&self.orders) {
            idx = idx * o as usize + v as usize;
        }
        idx
    }

    /// Left invertibility of every element (equivalent to invertibility for finite rings).
    pub fn unit_table(&self) -> Result<&[bool]> {
        let res = self.memo.units.get_or_init(|| {
            let elems = self.elements()?;
            let add = self.additive();
            Ok(elems
                .iter()
                .map(|x| solve_hom(&add, &add, &self.right_mult(x), &self.unit).is_some())
                .collect())
        });
        res.as_ref().map(|v| v.as_slice()).map_err(Clone::clone)
    }

    pub fn is_unit(&self, x: &[u64]) -> Result<bool> {
        Ok(self.unit_table()?[self.index_of(x)])
    }

    /// Jacobson radical {x : 1 − r·x is a unit for all r}, by enumeration.
    pub fn radical(&self) -> Result<&Subgroup> {
        let res = self.memo.radical.get_or_init(|| {
            let elems = self.elements()?;
            let units = self.unit_table()?;
            // composition length of A bounds the nilpotency index
            let len: u32 = self.orders.iter().map(|&o| o.ilog2() + 1).sum();
            let nil = |x: &Vec<u64>| {
                let mut p = x.clone();
                for _ in 0..=len {
                    if self.is_zero(&p) {
                        return true;
                    }
                    p = self.mul(&p, x);
                }
                false
            };
            let members: Vec<Vec<u64>> = elems
                .iter()
                .filter(|x| nil(x))
                .filter(|x| elems.iter().all(|y| units[self.index_of(&self.sub(&self.unit, &self.mul(y, x)))]))
                .cloned()
                .collect();
            Ok(Subgroup::from_gens(&self.additive(), &members))
        });
        res.as_ref().map_err(Clone::clone)
    }

    pub fn is_local(&self) -> Result<bool> {
        let units = self.unit_table()?.iter().filter(|&&u| u).count() as u128;
        Ok(units + self.radical()?.size() == self.size())
    }

    pub fn is_semisimple(&self) -> Result<bool> {
        Ok(self.radical()?.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::presets::preset;

    #[test]
    fn dual_numbers_radical_and_units() {
        let a = preset("dual_numbers:2").unwrap();
        assert_eq!(a.radical().unwrap().elements(), vec![vec![0, 0], vec![0, 1]]);
        assert!(a.is_local().unwrap());
        assert_eq!(a.unit_table().unwrap().iter().filter(|&&u| u).count(), 2);
    }

    #[test]
    fn zmod4_radical() {
        let a = preset("zmod:4").unwrap();
        let rad = a.radical().unwrap();
        let mut el = rad.elements();
        el.sort();
        assert_eq!(el, vec![vec![0], vec![2]]);
    }

    #[test]
    fn semisimple_product_has_zero_radical() {
        let a = preset("product:zmod:2,zmod:2").unwrap();
        assert!(a.is_semisimple().unwrap());
        assert!(!a.is_local().unwrap());
        let z6 = preset("zmod:6").unwrap();
        assert!(z6.is_semisimple().unwrap());
    }

    #[test]
    fn rejects_non_associative() {
        // b0 unit, b1·b1 = b0 + b1 over F2 is fine; make b1·b1 = b1 but b1·b0 = 0 to break the unit
        let s = vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 0], vec![0, 1]]];
        let r = FinAlgebra::new("bad", 2, vec!["1".into(), "x".into()], vec![2, 2], s, vec![1, 0], None, None);
        assert!(r.is_err());
    }

    #[test]
    fn opposite_of_upper_triangular_is_lower() {
        let a = preset("upper_triangular:2:2").unwrap();
        let op = a.opposite();
        let e12 = a.basis_vec(1);
        let e11 = a.basis_vec(0);
        assert_eq!(a.mul(&e11, &e12), e12);
        assert_eq!(op.mul(&e12, &e11), e12);
        assert!(op.opposite().as_ref() == a.as_ref());
    }

    #[test]
    fn data_round_trip() {
        let a = preset("product:dual_numbers:2,zmod:4").unwrap();
        let d = a.to_data();
        let s = serde_json::to_string(&d).unwrap();
        let back: AlgebraData = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert!(*FinAlgebra::from_data(&back).unwrap() == *a);
    }
}
