//! Ext as cohomology of Hom_A(P•, N), and Yoneda conversion in degree one.

use std::sync::Arc;

use super::projective::{minimal_projective_resolution, Resolution};
use crate::algebra::submodule::cokernel;
use crate::algebra::{hom, solve_left, AHom, AModule, HomSpace, Ses};
use crate::error::{Error, Result};
use crate::linalg::group::{image_hom, kernel_hom, quotient, QuotientPresentation, Subgroup, SubgroupPresentation};
use crate::linalg::{AdditivePresentation, ZmMatrix};

/// A cocycle P_n → N standing for an element of Ext^n(M, N).
#[derive(Clone, Debug)]
pub struct ExtClass {
    pub degree: usize,
    pub source: AModule,
    pub target: AModule,
    pub cocycle: AHom,
    pub resolution: Arc<Resolution>,
}

#[derive(Clone, Debug)]
pub struct ExtGroup {
    pub degree: usize,
    pub source: AModule,
    pub target: AModule,
    pub resolution: Arc<Resolution>,
    pub hom_n: HomSpace,
    cocycles: SubgroupPresentation,
    quot: QuotientPresentation,
}

/// Matrix of f ↦ f∘d from `from` to `to` in generator coordinates.
fn precompose_matrix(from: &HomSpace, to: &HomSpace, d: &AHom) -> ZmMatrix {
    let m = from.source.m();
    let cols: Vec<Vec<u64>> = from
        .gens
        .iter()
        .map(|g| to.coords(&to.target.reduce(g.mul(&d.mat))).expect("composite is A-linear"))
        .collect();
    ZmMatrix::from_fn(m, to.group.rank(), cols.len(), |i, j| cols[j][i])
}

impl ExtGroup {
    pub fn group(&self) -> &AdditivePresentation {
        &self.quot.group
    }

    pub fn size(&self) -> u128 {
        self.quot.group.size()
    }

    pub fn is_zero(&self) -> bool {
        self.quot.group.rank() == 0
    }

    pub fn class(&self, cocycle: AHom) -> ExtClass {
        ExtClass {
            degree: self.degree,
            source: self.source.clone(),
            target: self.target.clone(),
            cocycle,
            resolution: self.resolution.clone(),
        }
    }

    /// The chosen cocycle for the class with coordinates y.
    pub fn representative(&self, y: &[u64]) -> ExtClass {
        let mut z = self.quot.lift.mul_vec(y);
        self.cocycles.group.reduce(&mut z);
        let mut v = self.cocycles.incl.mul_vec(&z);
        self.hom_n.group.reduce(&mut v);
        self.class(self.hom_n.element(&v))
    }

    /// Representatives of the standard generators.
    pub fn representatives(&self) -> Vec<ExtClass> {
        (0..self.quot.group.rank())
            .map(|j| {
                let mut e = vec![0; self.quot.group.rank()];
                e[j] = 1;
                self.representative(&e)
            })
            .collect()
    }

    /// Coordinates of a class; None if the map is not a cocycle on this resolution.
    pub fn coords(&self, c: &ExtClass) -> Option<Vec<u64>> {
        let v = self.hom_n.coords(&c.cocycle.mat)?;
        let z = self.cocycles.coords(&v)?;
        let mut y = self.quot.proj.mul_vec(&z);
        self.quot.group.reduce(&mut y);
        Some(y)
    }

    pub fn is_trivial(&self, c: &ExtClass) -> Option<bool> {
        Some(self.coords(c)?.iter().all(|&x| x == 0))
    }

    pub fn elements(&self) -> Vec<ExtClass> {
        self.quot.group.elements().iter().map(|y| self.representative(y)).collect()
    }
}

/// Ext^n(M, N) from a given projective resolution of M.
pub fn ext_with(res: &Arc<Resolution>, target: &AModule, n: usize) -> Result<ExtGroup> {
    if !res.closed && res.terms() < n + 2 {
        return Err(Error::DepthExceeded(format!("resolution has {} terms, Ext^{n} needs {}", res.terms(), n + 2)));
    }
    let hn = hom(&res.term(n), target);
    let hn1 = hom(&res.term(n + 1), target);
    let delta = precompose_matrix(&hn, &hn1, &res.d(n + 1));
    let z = kernel_hom(&hn.group, &hn1.group, &delta);
    let b = if n == 0 {
        Subgroup::zero(&hn.group)
    } else {
        let hprev = hom(&res.term(n - 1), target);
        image_hom(&hn.group, &precompose_matrix(&hprev, &hn, &res.d(n)))
    };
    let cocycles = z.presentation();
    let in_z: Vec<Vec<u64>> = b.gens().iter().map(|g| cocycles.coords(g).expect("coboundaries are cocycles")).collect();
    let quot = quotient(&Subgroup::from_gens(&cocycles.group, &in_z));
    Ok(ExtGroup { degree: n, source: res.module.clone(), target: target.clone(), resolution: res.clone(), hom_n: hn, cocycles, quot })
}

/// Ext^n(M, N) via the minimal projective resolution of M.
pub fn ext(source: &AModule, target: &AModule, n: usize) -> Result<ExtGroup> {
    let res = Arc::new(minimal_projective_resolution(source, n + 1)?);
    ext_with(&res, target, n)
}

/// 0 → N → E → M → 0 with E = coker(P_1 → N ⊕ P_0, x ↦ (−c x, d_1 x)).
pub fn ext1_to_ses(c: &ExtClass) -> Result<Ses> {
    if c.degree != 1 {
        return Err(Error::DegreeUnsupported(c.degree));
    }
    let res = &c.resolution;
    let alg = &c.source.alg;
    let (n, p0, p1) = (&c.target, res.term(0), res.term(1));
    let sum = AModule::direct_sum(alg, &[n, &p0]);
    let d1 = res.d(1);
    let map = AHom::from_parts(&p1, &sum, c.cocycle.mat.neg().vstack(&d1.mat));
    let q = cokernel(&map);
    let m = alg.m;
    let in_n = ZmMatrix::from_fn(m, sum.rank(), n.rank(), |i, j| u64::from(i == j));
    let i = AHom::from_parts(n, &q.module, q.proj.mat.mul(&in_n));
    // (n, p) ↦ ε(p), descended to the cokernel
    let eps = AHom::from_parts(&sum, &c.source, ZmMatrix::zeros(m, c.source.rank(), n.rank()).hstack(&res.aug.mat));
    let p = q.descend(&eps)?;
    Ses::new(i, p)
}

/// The class of 0 → N → E → M → 0: lift ε to g: P_0 → E, then g∘d_1 factors through N.
pub fn ses_to_ext1(e: &Ses, res: &Arc<Resolution>) -> Result<ExtClass> {
    if res.module != *e.quot() {
        return Err(Error::Invalid("resolution is not of the quotient".into()));
    }
    let g = solve_left(&e.p, &res.aug).ok_or_else(|| Error::Verification("augmentation does not lift".into()))?;
    let gd = g.compose(&res.d(1));
    let c = solve_left(&e.i, &gd).ok_or_else(|| Error::Verification("g∘d_1 does not land in the kernel".into()))?;
    Ok(ExtClass { degree: 1, source: e.quot().clone(), target: e.sub().clone(), cocycle: c, resolution: res.clone() })
}

/// The map Ext^n(M', N) → Ext^n(M, N), c ↦ c∘φ_n, for a comparison φ: P → P'.
/// Rows are coordinates in `from`, columns the generators of `to`.
pub fn induced_on_ext(from: &ExtGroup, to: &ExtGroup, phi_n: &AHom) -> Result<ZmMatrix> {
    let m = from.source.m();
    let mut cols = Vec::new();
    for r in to.representatives() {
        let pulled = from.class(AHom::from_parts(&from.resolution.term(from.degree), &from.target, r.cocycle.mat.mul(&phi_n.mat)));
        cols.push(from.coords(&pulled).ok_or_else(|| Error::Verification("pullback is not a cocycle".into()))?);
    }
    Ok(ZmMatrix::from_fn(m, from.group().rank(), cols.len(), |i, j| cols[j][i]))
}

/// A group homomorphism given by `mat` is bijective.
pub fn is_group_iso(source: &AdditivePresentation, target: &AdditivePresentation, mat: &ZmMatrix) -> bool {
    source.size() == target.size() && kernel_hom(source, target, mat).size() == 1
}
