//! Finite abelian groups ⊕ ℤ/dᵢ with dᵢ | m, their subgroups and quotients.
//!
//! A subgroup is stored through the embedding ℤ/dᵢ ↪ ℤ/m, a ↦ a·(m/dᵢ), as a
//! Howell basis in (ℤ/m)^k. Equal subgroups have equal bases.

use super::arith::{addmod, gcd, mulmod};
use super::howell::{howell_rows, in_span, span_elements, span_size, Solver};
use super::matrix::ZmMatrix;
use super::smith::quotient_of_free;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AdditivePresentation {
    pub m: u64,
    pub orders: Vec<u64>,
}

impl AdditivePresentation {
    pub fn new(m: u64, orders: Vec<u64>) -> Result<Self> {
        if m < 2 {
            return Err(Error::Invalid(format!("modulus {m} < 2")));
        }
        for &d in &orders {
            if d <= 1 || m % d != 0 {
                return Err(Error::Invalid(format!("order {d} must exceed 1 and divide {m}")));
            }
        }
        Ok(AdditivePresentation { m, orders })
    }

    pub fn rank(&self) -> usize {
        self.orders.len()
    }

    pub fn size(&self) -> u128 {
        self.orders.iter().map(|&d| d as u128).product()
    }

    pub fn reduce(&self, x: &mut [u64]) {
        for (v, &d) in x.iter_mut().zip(&self.orders) {
            *v %= d;
        }
    }

    pub fn embed(&self, x: &[u64]) -> Vec<u64> {
        x.iter().zip(&self.orders).map(|(&v, &d)| mulmod(v % d, self.m / d, self.m)).collect()
    }

    pub fn unembed(&self, v: &[u64]) -> Vec<u64> {
        v.iter().zip(&self.orders).map(|(&x, &d)| x / (self.m / d)).collect()
    }

    /// Whether a morphism matrix from `source` into `self` is well defined.
    pub fn accepts_morphism(&self, source: &AdditivePresentation, mat: &ZmMatrix) -> bool {
        if mat.rows() != self.rank() || mat.cols() != source.rank() {
            return false;
        }
        for (i, &di) in self.orders.iter().enumerate() {
            for (j, &dj) in source.orders.iter().enumerate() {
                let a = mat.get(i, j);
                if a >= di || a % (di / gcd(di, dj)) != 0 {
                    return false;
                }
            }
        }
        true
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![]];
        for &d in &self.orders {
            out = out
                .into_iter()
                .flat_map(|v: Vec<u64>| {
                    (0..d).map(move |x| {
                        let mut w = v.clone();
                        w.push(x);
                        w
                    })
                })
                .collect();
        }
        out
    }

    pub fn zero_vec(&self) -> Vec<u64> {
        vec![0; self.rank()]
    }

    pub fn add(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        x.iter().zip(y).zip(&self.orders).map(|((&a, &b), &d)| (a + b) % d).collect()
    }

    pub fn direct_sum(parts: &[&AdditivePresentation], m: u64) -> AdditivePresentation {
        AdditivePresentation { m, orders: parts.iter().flat_map(|p| p.orders.iter().copied()).collect() }
    }
}

/// A subgroup of an ambient presentation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    pub ambient: AdditivePresentation,
    /// Howell basis in embedded coordinates.
    pub basis: Vec<Vec<u64>>,
}

impl Subgroup {
    pub fn zero(ambient: &AdditivePresentation) -> Self {
        Subgroup { ambient: ambient.clone(), basis: vec![] }
    }

    pub fn full(ambient: &AdditivePresentation) -> Self {
        let k = ambient.rank();
        let gens: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect();
        Self::from_gens(ambient, &gens)
    }

    /// Subgroup generated by elements given in plain coordinates.
    pub fn from_gens(ambient: &AdditivePresentation, gens: &[Vec<u64>]) -> Self {
        let rows: Vec<Vec<u64>> = gens.iter().map(|g| ambient.embed(g)).collect();
        Subgroup { ambient: ambient.clone(), basis: howell_rows(ambient.m, ambient.rank(), rows) }
    }

    pub fn from_embedded(ambient: &AdditivePresentation, rows: Vec<Vec<u64>>) -> Self {
        Subgroup { ambient: ambient.clone(), basis: howell_rows(ambient.m, ambient.rank(), rows) }
    }

    pub fn size(&self) -> u128 {
        span_size(self.ambient.m, &self.basis)
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.size() == self.ambient.size()
    }

    /// Generators in plain coordinates.
    pub fn gens(&self) -> Vec<Vec<u64>> {
        self.basis.iter().map(|r| self.ambient.unembed(r)).collect()
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        in_span(self.ambient.m, &self.basis, &self.ambient.embed(x))
    }

    pub fn contains_subgroup(&self, other: &Subgroup) -> bool {
        other.basis.iter().all(|r| in_span(self.ambient.m, &self.basis, r))
    }

    pub fn sum(&self, other: &Subgroup) -> Subgroup {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subgroup::from_embedded(&self.ambient, rows)
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let m = self.ambient.m;
        let k = self.ambient.rank();
        let a = self.basis.len();
        let b = other.basis.len();
        if a == 0 || b == 0 {
            return Subgroup::zero(&self.ambient);
        }
        // columns: self rows then other rows; Σ xᵢ sᵢ − Σ yⱼ tⱼ = 0
        let mat = ZmMatrix::from_fn(m, k, a + b, |i, j| {
            if j < a {
                self.basis[j][i]
            } else {
                super::arith::negmod(other.basis[j - a][i], m)
            }
        });
        let ker = Solver::new(&mat).kernel_rows();
        let rows: Vec<Vec<u64>> = ker
            .iter()
            .map(|c| {
                let mut v = vec![0u64; k];
                for (l, row) in self.basis.iter().enumerate() {
                    for i in 0..k {
                        v[i] = addmod(v[i], mulmod(c[l], row[i], m), m);
                    }
                }
                v
            })
            .collect();
        Subgroup::from_embedded(&self.ambient, rows)
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        span_elements(self.ambient.m, self.ambient.rank(), &self.basis)
            .into_iter()
            .map(|v| self.ambient.unembed(&v))
            .collect()
    }

    /// Present the subgroup abstractly as ⊕ ℤ/eⱼ.
    pub fn presentation(&self) -> SubgroupPresentation {
        let m = self.ambient.m;
        let k = self.ambient.rank();
        let s = self.basis.len();
        let phi = ZmMatrix::from_fn(m, k, s, |i, l| self.basis[l][i]);
        let solver = Solver::new(&phi);
        let rels = solver.kernel_rows();
        let q = quotient_of_free(m, s, &rels);
        // inclusion: coordinates → embedded ambient vector → plain
        let emb_incl = phi.mul(&q.lift);
        let incl = ZmMatrix::from_fn(m, k, q.orders.len(), |i, j| emb_incl.get(i, j) / (m / self.ambient.orders[i]));
        SubgroupPresentation {
            group: AdditivePresentation { m, orders: q.orders },
            incl,
            proj: q.proj,
            solver,
            ambient: self.ambient.clone(),
        }
    }
}

/// A subgroup S ⊆ G written as ⊕ ℤ/eⱼ, with the inclusion S → G and the
/// coordinate map G ⊇ S → ⊕ ℤ/eⱼ.
#[derive(Clone, Debug)]
pub struct SubgroupPresentation {
    pub group: AdditivePresentation,
    /// rank(G) × rank(S), plain coordinates.
    pub incl: ZmMatrix,
    proj: ZmMatrix,
    solver: Solver,
    ambient: AdditivePresentation,
}

impl SubgroupPresentation {
    /// Coordinates of an ambient element, if it lies in the subgroup.
    pub fn coords(&self, x: &[u64]) -> Option<Vec<u64>> {
        let c = self.solver.solve(&self.ambient.embed(x))?;
        let mut y = self.proj.mul_vec(&c);
        self.group.reduce(&mut y);
        Some(y)
    }

    /// Matrix of the coordinate map restricted to the columns of `mat`,
    /// whose columns must lie in the subgroup.
    pub fn coords_matrix(&self, mat: &ZmMatrix) -> Option<ZmMatrix> {
        let m = self.ambient.m;
        let mut out = ZmMatrix::zeros(m, self.group.rank(), mat.cols());
        for j in 0..mat.cols() {
            let y = self.coords(&mat.col_vec(j))?;
            for (i, v) in y.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Some(out)
    }
}

/// The quotient G/S as ⊕ ℤ/eⱼ with the projection matrix and a set-theoretic lift.
#[derive(Clone, Debug)]
pub struct QuotientPresentation {
    pub group: AdditivePresentation,
    /// rank(G/S) × rank(G).
    pub proj: ZmMatrix,
    /// rank(G) × rank(G/S), reduced modulo the orders of G.
    pub lift: ZmMatrix,
}

pub fn quotient(sub: &Subgroup) -> QuotientPresentation {
    let amb = &sub.ambient;
    let m = amb.m;
    let k = amb.rank();
    let mut rels: Vec<Vec<u64>> = (0..k).map(|i| (0..k).map(|j| if i == j { amb.orders[i] % m } else { 0 }).collect()).collect();
    rels.extend(sub.gens());
    let q = quotient_of_free(m, k, &rels);
    let lift = q.lift.reduced_rows(&amb.orders);
    QuotientPresentation { group: AdditivePresentation { m, orders: q.orders }, proj: q.proj, lift }
}

/// The system `mat` rescaled so that each row's equation lives in ℤ/m.
pub fn embedded_system(target: &AdditivePresentation, mat: &ZmMatrix) -> ZmMatrix {
    let m = target.m;
    ZmMatrix::from_fn(m, mat.rows(), mat.cols(), |i, j| mulmod(mat.get(i, j), m / target.orders[i], m))
}

/// Some x in `source` with mat·x = b in `target`, if one exists.
pub fn solve_hom(
    source: &AdditivePresentation,
    target: &AdditivePresentation,
    mat: &ZmMatrix,
    b: &[u64],
) -> Option<Vec<u64>> {
    let sys = embedded_system(target, mat);
    let mut x = Solver::new(&sys).solve(&target.embed(b))?;
    source.reduce(&mut x);
    Some(x)
}

/// Kernel of a morphism matrix between presentations, as a subgroup of the source.
pub fn kernel_hom(source: &AdditivePresentation, target: &AdditivePresentation, mat: &ZmMatrix) -> Subgroup {
    if mat.rows() == 0 {
        return Subgroup::full(source);
    }
    let sys = embedded_system(target, mat);
    let rows = Solver::new(&sys).kernel_rows();
    let gens: Vec<Vec<u64>> = rows
        .into_iter()
        .map(|mut r| {
            source.reduce(&mut r);
            r
        })
        .collect();
    Subgroup::from_gens(source, &gens)
}

/// Image of a morphism matrix, as a subgroup of the target.
pub fn image_hom(target: &AdditivePresentation, mat: &ZmMatrix) -> Subgroup {
    let gens: Vec<Vec<u64>> = (0..mat.cols())
        .map(|j| {
            let mut v = mat.col_vec(j);
            target.reduce(&mut v);
            v
        })
        .collect();
    Subgroup::from_gens(target, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subgroup_presentation_of_two_torsion() {
        let g = AdditivePresentation::new(4, vec![4]).unwrap();
        let s = Subgroup::from_gens(&g, &[vec![2]]);
        assert_eq!(s.size(), 2);
        let p = s.presentation();
        assert_eq!(p.group.orders, vec![2]);
        assert_eq!(p.coords(&[2]), Some(vec![1]));
        assert_eq!(p.coords(&[1]), None);
        assert_eq!(p.incl.get(0, 0), 2);
        let q = quotient(&s);
        assert_eq!(q.group.orders, vec![2]);
    }

    #[test]
    fn mixed_orders() {
        let g = AdditivePresentation::new(12, vec![2, 4, 12]).unwrap();
        assert_eq!(g.size(), 96);
        let s = Subgroup::from_gens(&g, &[vec![1, 2, 6], vec![0, 1, 3]]);
        let p = s.presentation();
        assert_eq!(p.group.size(), s.size());
        for x in s.elements() {
            let c = p.coords(&x).unwrap();
            let mut back = p.incl.mul_vec(&c);
            g.reduce(&mut back);
            assert_eq!(back, x);
        }
        let q = quotient(&s);
        assert_eq!(q.group.size() * s.size(), g.size());
        assert!(g.accepts_morphism(&g, &ZmMatrix::identity(12, 3)));
        let inter = s.intersect(&Subgroup::from_gens(&g, &[vec![0, 0, 3]]));
        assert_eq!(inter.size(), 1);
    }

    #[test]
    fn divisibility_rule() {
        let z2 = AdditivePresentation::new(4, vec![2]).unwrap();
        let z4 = AdditivePresentation::new(4, vec![4]).unwrap();
        // ℤ/2 → ℤ/4 must land in 2ℤ/4
        assert!(!z4.accepts_morphism(&z2, &ZmMatrix::from_rows(4, 1, 1, &[vec![1]]).unwrap()));
        assert!(z4.accepts_morphism(&z2, &ZmMatrix::from_rows(4, 1, 1, &[vec![2]]).unwrap()));
        assert!(z2.accepts_morphism(&z4, &ZmMatrix::from_rows(4, 1, 1, &[vec![1]]).unwrap()));
    }
}
