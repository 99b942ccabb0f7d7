//! Left modules over a finite algebra and their morphisms.

use serde::{Deserialize, Serialize};

use super::finalg::{same_algebra, Alg};
use crate::error::{Error, Result};
use crate::linalg::arith::mulmod;
use crate::linalg::group::{image_hom, kernel_hom, AdditivePresentation};
use crate::linalg::ZmMatrix;

#[derive(Clone, Debug)]
pub struct AModule {
    pub alg: Alg,
    pub add: AdditivePresentation,
    /// ρ(bᵢ) for each algebra basis element.
    pub action: Vec<ZmMatrix>,
}

impl PartialEq for AModule {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.add == other.add && self.action == other.action
    }
}

impl Eq for AModule {}

/// JSON form of a module; the algebra is supplied separately.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModuleData {
    pub orders: Vec<u64>,
    pub action: Vec<ZmMatrix>,
}

impl AModule {
    pub fn new(alg: &Alg, orders: Vec<u64>, action: Vec<ZmMatrix>) -> Result<Self> {
        let add = AdditivePresentation::new(alg.m, orders)?;
        let md = AModule { alg: alg.clone(), add, action };
        md.validate()?;
        Ok(md)
    }

    pub(crate) fn from_parts(alg: &Alg, add: AdditivePresentation, action: Vec<ZmMatrix>) -> Self {
        debug_assert!(AModule { alg: alg.clone(), add: add.clone(), action: action.clone() }.validate().is_ok());
        AModule { alg: alg.clone(), add, action }
    }

    pub fn validate(&self) -> Result<()> {
        let r = self.alg.rank();
        let k = self.rank();
        if self.add.m != self.alg.m {
            return Err(Error::ModulusMismatch(self.add.m, self.alg.m));
        }
        if self.action.len() != r {
            return Err(Error::DimensionMismatch(format!("{} action matrices for an algebra of rank {r}", self.action.len())));
        }
        for (i, a) in self.action.iter().enumerate() {
            if a.modulus() != self.alg.m {
                return Err(Error::ModulusMismatch(a.modulus(), self.alg.m));
            }
            if a.shape() != (k, k) {
                return Err(Error::DimensionMismatch(format!("action matrix {i} is {:?}, module rank {k}", a.shape())));
            }
            if !self.add.accepts_morphism(&self.add, a) {
                return Err(Error::Invalid(format!("action matrix {i} is not a well-defined additive map")));
            }
        }
        for i in 0..r {
            for j in 0..r {
                let lhs = self.reduce(self.action[i].mul(&self.action[j]));
                let rhs = self.act_matrix(&self.alg.structure[i][j]);
                if lhs != rhs {
                    return Err(Error::Invalid(format!("action violates the product b{i}·b{j}")));
                }
            }
        }
        if self.act_matrix(&self.alg.unit) != ZmMatrix::identity(self.alg.m, k).reduced_rows(&self.add.orders) {
            return Err(Error::Invalid("unit does not act as the identity".into()));
        }
        Ok(())
    }

    pub fn from_data(alg: &Alg, d: &ModuleData) -> Result<Self> {
        AModule::new(alg, d.orders.clone(), d.action.clone())
    }

    pub fn to_data(&self) -> ModuleData {
        ModuleData { orders: self.add.orders.clone(), action: self.action.clone() }
    }

    pub fn zero(alg: &Alg) -> Self {
        let e = ZmMatrix::zeros(alg.m, 0, 0);
        AModule { alg: alg.clone(), add: AdditivePresentation { m: alg.m, orders: vec![] }, action: vec![e; alg.rank()] }
    }

    /// A as a left module over itself.
    pub fn regular(alg: &Alg) -> Self {
        let action = (0..alg.rank()).map(|i| alg.left_mult(&alg.basis_vec(i))).collect();
        AModule { alg: alg.clone(), add: alg.additive(), action }
    }

    pub fn m(&self) -> u64 {
        self.alg.m
    }

    pub fn rank(&self) -> usize {
        self.add.rank()
    }

    pub fn size(&self) -> u128 {
        self.add.size()
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    pub fn reduce(&self, mat: ZmMatrix) -> ZmMatrix {
        mat.reduced_rows(&self.add.orders)
    }

    pub fn reduce_vec(&self, mut x: Vec<u64>) -> Vec<u64> {
        self.add.reduce(&mut x);
        x
    }

    /// Matrix of x ↦ a·x for an algebra element a.
    pub fn act_matrix(&self, a: &[u64]) -> ZmMatrix {
        let k = self.rank();
        let m = self.alg.m;
        let mut out = ZmMatrix::zeros(m, k, k);
        for (i, &c) in a.iter().enumerate() {
            if c != 0 {
                out = out.add(&self.action[i].scale(c));
            }
        }
        self.reduce(out)
    }

    pub fn act(&self, a: &[u64], x: &[u64]) -> Vec<u64> {
        self.reduce_vec(self.act_matrix(a).mul_vec(x))
    }

    pub fn scalar_mul(&self, c: u64, x: &[u64]) -> Vec<u64> {
        self.reduce_vec(x.iter().map(|&v| mulmod(v, c, self.alg.m)).collect())
    }

    pub fn add_vec(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        self.add.add(x, y)
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        self.add.elements()
    }

    pub fn direct_sum(alg: &Alg, parts: &[&AModule]) -> AModule {
        let add = AdditivePresentation::direct_sum(&parts.iter().map(|p| &p.add).collect::<Vec<_>>(), alg.m);
        let action = (0..alg.rank())
            .map(|i| ZmMatrix::block_diag(alg.m, &parts.iter().map(|p| &p.action[i]).collect::<Vec<_>>()))
            .collect();
        AModule { alg: alg.clone(), add, action }
    }

    pub fn power(&self, g: usize) -> AModule {
        AModule::direct_sum(&self.alg, &vec![self; g])
    }

    pub fn check_same_algebra(&self, other: &AModule) -> Result<()> {
        if !same_algebra(&self.alg, &other.alg) {
            return Err(Error::Invalid("modules over different algebras".into()));
        }
        Ok(())
    }
}

/// An A-linear map, matrix target × source.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AHom {
    pub source: AModule,
    pub target: AModule,
    pub mat: ZmMatrix,
}

impl AHom {
    pub fn new(source: &AModule, target: &AModule, mat: ZmMatrix) -> Result<Self> {
        source.check_same_algebra(target)?;
        if mat.modulus() != source.m() {
            return Err(Error::ModulusMismatch(mat.modulus(), source.m()));
        }
        if mat.shape() != (target.rank(), source.rank()) {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {:?}, expected {}x{}",
                mat.shape(),
                target.rank(),
                source.rank()
            )));
        }
        if !target.add.accepts_morphism(&source.add, &mat) {
            return Err(Error::Invalid("matrix is not a well-defined additive map".into()));
        }
        let h = AHom { source: source.clone(), target: target.clone(), mat };
        if !h.is_linear() {
            return Err(Error::Invalid("map does not commute with the algebra action".into()));
        }
        Ok(h)
    }

    /// For matrices already known to be A-linear; reduces entries.
    pub(crate) fn from_parts(source: &AModule, target: &AModule, mat: ZmMatrix) -> Self {
        let mat = target.reduce(mat);
        debug_assert!(target.add.accepts_morphism(&source.add, &mat));
        AHom { source: source.clone(), target: target.clone(), mat }
    }

    pub fn is_linear(&self) -> bool {
        (0..self.source.alg.rank()).all(|i| {
            self.target.reduce(self.target.action[i].mul(&self.mat)) == self.target.reduce(self.mat.mul(&self.source.action[i]))
        })
    }

    pub fn identity(md: &AModule) -> Self {
        AHom::from_parts(md, md, ZmMatrix::identity(md.m(), md.rank()))
    }

    pub fn zero(source: &AModule, target: &AModule) -> Self {
        AHom::from_parts(source, target, ZmMatrix::zeros(source.m(), target.rank(), source.rank()))
    }

    /// self ∘ other.
    pub fn compose(&self, other: &AHom) -> AHom {
        assert_eq!(other.target.rank(), self.source.rank(), "composition shape");
        AHom::from_parts(&other.source, &self.target, self.mat.mul(&other.mat))
    }

    pub fn try_compose(&self, other: &AHom) -> Result<AHom> {
        if other.target != self.source {
            return Err(Error::DimensionMismatch("composing maps with different middle modules".into()));
        }
        Ok(self.compose(other))
    }

    pub fn add(&self, other: &AHom) -> AHom {
        AHom::from_parts(&self.source, &self.target, self.mat.add(&other.mat))
    }

    pub fn sub(&self, other: &AHom) -> AHom {
        AHom::from_parts(&self.source, &self.target, self.mat.sub(&other.mat))
    }

    pub fn neg(&self) -> AHom {
        AHom::from_parts(&self.source, &self.target, self.mat.neg())
    }

    pub fn scale(&self, c: u64) -> AHom {
        AHom::from_parts(&self.source, &self.target, self.mat.scale(c))
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        self.target.reduce_vec(self.mat.mul_vec(x))
    }

    pub fn is_zero(&self) -> bool {
        self.mat.is_zero()
    }

    pub fn kernel_size(&self) -> u128 {
        kernel_hom(&self.source.add, &self.target.add, &self.mat).size()
    }

    pub fn image_size(&self) -> u128 {
        image_hom(&self.target.add, &self.mat).size()
    }

    pub fn is_mono(&self) -> bool {
        self.kernel_size() == 1
    }

    pub fn is_epi(&self) -> bool {
        self.image_size() == self.target.size()
    }

    pub fn is_iso(&self) -> bool {
        self.source.size() == self.target.size() && self.is_mono()
    }
}

/// Block map ⊕ sources → ⊕ targets from a grid of optional blocks.
pub fn block_hom(sources: &[&AModule], targets: &[&AModule], blocks: &[Vec<Option<&ZmMatrix>>]) -> AHom {
    let alg = &sources.first().or(targets.first()).expect("at least one module").alg;
    let src = AModule::direct_sum(alg, sources);
    let tgt = AModule::direct_sum(alg, targets);
    let rs: Vec<usize> = targets.iter().map(|t| t.rank()).collect();
    let cs: Vec<usize> = sources.iter().map(|s| s.rank()).collect();
    let mat = ZmMatrix::from_blocks(alg.m, &rs, &cs, blocks);
    AHom::from_parts(&src, &tgt, mat)
}
