//! Submodules, quotients, kernels, cokernels, images, pullbacks and pushouts.

use super::module::{AHom, AModule};
use crate::error::{Error, Result};
use crate::linalg::group::{image_hom, kernel_hom, quotient as group_quotient, Subgroup, SubgroupPresentation};
use crate::linalg::ZmMatrix;

/// Smallest A-stable subgroup containing `gens`.
pub fn generated(md: &AModule, gens: &[Vec<u64>]) -> Subgroup {
    close_under_action(md, Subgroup::from_gens(&md.add, gens))
}

pub fn close_under_action(md: &AModule, mut s: Subgroup) -> Subgroup {
    loop {
        let mut gens = s.gens();
        let base = gens.len();
        for g in gens.clone() {
            for rho in &md.action {
                gens.push(md.reduce_vec(rho.mul_vec(&g)));
            }
        }
        let next = Subgroup::from_gens(&md.add, &gens);
        if next == s || gens.len() == base {
            return next;
        }
        s = next;
    }
}

pub fn is_submodule(md: &AModule, s: &Subgroup) -> bool {
    s.gens().iter().all(|g| md.action.iter().all(|rho| s.contains(&md.reduce_vec(rho.mul_vec(g)))))
}

/// A submodule presented abstractly, with its inclusion.
#[derive(Clone, Debug)]
pub struct Sub {
    pub module: AModule,
    pub incl: AHom,
    pub group: Subgroup,
    pres: SubgroupPresentation,
}

impl Sub {
    pub fn new(ambient: &AModule, group: &Subgroup) -> Sub {
        debug_assert!(is_submodule(ambient, group));
        let pres = group.presentation();
        let incl_mat = ambient.reduce(pres.incl.clone());
        let action = ambient
            .action
            .iter()
            .map(|rho| {
                let moved = ambient.reduce(rho.mul(&incl_mat));
                pres.coords_matrix(&moved).expect("submodule is A-stable")
            })
            .collect();
        let module = AModule::from_parts(&ambient.alg, pres.group.clone(), action);
        let incl = AHom::from_parts(&module, ambient, incl_mat);
        Sub { module, incl, group: group.clone(), pres }
    }

    pub fn ambient(&self) -> &AModule {
        &self.incl.target
    }

    pub fn coords(&self, x: &[u64]) -> Option<Vec<u64>> {
        self.pres.coords(x)
    }

    /// The unique g with incl∘g = f, for f landing inside the submodule.
    pub fn factor(&self, f: &AHom) -> Result<AHom> {
        let mat = self
            .pres
            .coords_matrix(&f.mat)
            .ok_or_else(|| Error::Verification("map does not factor through the submodule".into()))?;
        Ok(AHom::from_parts(&f.source, &self.module, mat))
    }

    pub fn factor_matrix(&self, mat: &ZmMatrix) -> Option<ZmMatrix> {
        self.pres.coords_matrix(mat)
    }
}

/// A quotient module with its projection and a set-theoretic section.
#[derive(Clone, Debug)]
pub struct Quot {
    pub module: AModule,
    pub proj: AHom,
    /// ambient rank × quotient rank; proj∘lift = id.
    pub lift: ZmMatrix,
    pub kernel: Subgroup,
}

impl Quot {
    pub fn new(ambient: &AModule, sub: &Subgroup) -> Quot {
        debug_assert!(is_submodule(ambient, sub));
        let q = group_quotient(sub);
        let action = ambient
            .action
            .iter()
            .map(|rho| q.proj.mul(&rho.mul(&q.lift)).reduced_rows(&q.group.orders))
            .collect();
        let module = AModule::from_parts(&ambient.alg, q.group.clone(), action);
        let proj = AHom::from_parts(ambient, &module, q.proj.clone());
        Quot { module, proj, lift: q.lift, kernel: sub.clone() }
    }

    pub fn ambient(&self) -> &AModule {
        &self.proj.source
    }

    /// The unique g with g∘proj = f, for f vanishing on the kernel.
    pub fn descend(&self, f: &AHom) -> Result<AHom> {
        if !self.kernel.gens().iter().all(|g| f.apply(g).iter().all(|&v| v == 0)) {
            return Err(Error::Verification("map does not vanish on the submodule".into()));
        }
        Ok(AHom::from_parts(&self.module, &f.target, f.mat.mul(&self.lift)))
    }

    pub fn lift_vec(&self, y: &[u64]) -> Vec<u64> {
        self.ambient().reduce_vec(self.lift.mul_vec(y))
    }
}

pub fn kernel(f: &AHom) -> Sub {
    Sub::new(&f.source, &kernel_hom(&f.source.add, &f.target.add, &f.mat))
}

pub fn image_subgroup(f: &AHom) -> Subgroup {
    image_hom(&f.target.add, &f.mat)
}

/// Image with inclusion and the corestriction f = incl∘epi.
pub fn image(f: &AHom) -> (Sub, AHom) {
    let im = Sub::new(&f.target, &image_subgroup(f));
    let epi = im.factor(f).expect("f lands in its image");
    (im, epi)
}

pub fn cokernel(f: &AHom) -> Quot {
    Quot::new(&f.target, &image_subgroup(f))
}

/// Kernel, cokernel and image of one map.
#[derive(Clone, Debug)]
pub struct KerCokerIm {
    pub ker: Sub,
    pub coker: Quot,
    pub im: Sub,
    pub epi: AHom,
}

pub fn kernel_cokernel_image(f: &AHom) -> KerCokerIm {
    let (im, epi) = image(f);
    KerCokerIm { ker: kernel(f), coker: cokernel(f), im, epi }
}

#[derive(Clone, Debug)]
pub struct Pullback {
    pub object: AModule,
    pub p1: AHom,
    pub p2: AHom,
}

/// P = ker(B ⊕ C → D, (b, c) ↦ f(b) − g(c)).
pub fn pullback(f: &AHom, g: &AHom) -> Result<Pullback> {
    if f.target != g.target {
        return Err(Error::DimensionMismatch("pullback of maps with different targets".into()));
    }
    let (b, c) = (&f.source, &g.source);
    let alg = &b.alg;
    let sum = AModule::direct_sum(alg, &[b, c]);
    let diff = AHom::from_parts(&sum, &f.target, f.mat.hstack(&g.mat.neg()));
    let k = kernel(&diff);
    let m = alg.m;
    let pr1 = ZmMatrix::from_fn(m, b.rank(), sum.rank(), |i, j| u64::from(i == j));
    let pr2 = ZmMatrix::from_fn(m, c.rank(), sum.rank(), |i, j| u64::from(j == b.rank() + i));
    let p1 = AHom::from_parts(&k.module, b, pr1.mul(&k.incl.mat));
    let p2 = AHom::from_parts(&k.module, c, pr2.mul(&k.incl.mat));
    Ok(Pullback { object: k.module, p1, p2 })
}

#[derive(Clone, Debug)]
pub struct Pushout {
    pub object: AModule,
    pub q1: AHom,
    pub q2: AHom,
}

/// Q = coker(A → B ⊕ C, a ↦ (f(a), −g(a))).
pub fn pushout(f: &AHom, g: &AHom) -> Result<Pushout> {
    if f.source != g.source {
        return Err(Error::DimensionMismatch("pushout of maps with different sources".into()));
    }
    let (b, c) = (&f.target, &g.target);
    let alg = &b.alg;
    let sum = AModule::direct_sum(alg, &[b, c]);
    let map = AHom::from_parts(&f.source, &sum, f.mat.vstack(&g.mat.neg()));
    let q = cokernel(&map);
    let m = alg.m;
    let in1 = ZmMatrix::from_fn(m, sum.rank(), b.rank(), |i, j| u64::from(i == j));
    let in2 = ZmMatrix::from_fn(m, sum.rank(), c.rank(), |i, j| u64::from(i == b.rank() + j));
    let q1 = AHom::from_parts(b, &q.module, q.proj.mat.mul(&in1));
    let q2 = AHom::from_parts(c, &q.module, q.proj.mat.mul(&in2));
    Ok(Pushout { object: q.module, q1, q2 })
}
