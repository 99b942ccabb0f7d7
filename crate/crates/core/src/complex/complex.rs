//! Finitely supported cochain complexes, chain maps and homotopies.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{same_algebra, AHom, AModule, Alg, ModuleData};
use crate::error::{Error, Result};
use crate::linalg::ZmMatrix;

/// C^lo → C^{lo+1} → ⋯ → C^hi; modules outside the window are zero.
#[derive(Clone, Debug)]
pub struct Complex {
    pub alg: Alg,
    pub lo: i64,
    pub mods: Vec<AModule>,
    /// diffs[k]: mods[k] → mods[k+1].
    pub diffs: Vec<ZmMatrix>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.trimmed(), other.trimmed());
        same_algebra(&a.alg, &b.alg) && a.mods == b.mods && a.diffs == b.diffs && (a.mods.is_empty() || a.lo == b.lo)
    }
}

/// (−1)^n as a residue mod m.
pub fn signed(n: i64, m: u64) -> u64 {
    if n.rem_euclid(2) == 0 {
        1
    } else {
        m - 1
    }
}

impl Complex {
    pub fn new(alg: &Alg, lo: i64, mods: Vec<AModule>, diffs: Vec<ZmMatrix>) -> Result<Complex> {
        if !mods.is_empty() && diffs.len() + 1 != mods.len() {
            return Err(Error::DimensionMismatch(format!("{} modules need {} differentials, got {}", mods.len(), mods.len() - 1, diffs.len())));
        }
        if mods.is_empty() && !diffs.is_empty() {
            return Err(Error::DimensionMismatch("differentials without modules".into()));
        }
        for md in &mods {
            if !same_algebra(&md.alg, alg) {
                return Err(Error::Invalid("module over a different algebra".into()));
            }
        }
        for (k, d) in diffs.iter().enumerate() {
            AHom::new(&mods[k], &mods[k + 1], d.clone()).map_err(|e| match e {
                Error::Invalid(msg) => Error::Invalid(format!("differential in degree {}: {msg}", lo + k as i64)),
                e => e,
            })?;
        }
        let c = Complex { alg: alg.clone(), lo, mods, diffs };
        for n in c.lo..c.hi() {
            if !c.diff_mat(n + 1).mul(&c.diff_mat(n)).reduced_rows(&c.module(n + 2).add.orders).is_zero() {
                return Err(Error::Invalid(format!("d∘d ≠ 0 at degree {n}")));
            }
        }
        Ok(c)
    }

    pub(crate) fn from_parts(alg: &Alg, lo: i64, mods: Vec<AModule>, diffs: Vec<ZmMatrix>) -> Complex {
        let c = Complex { alg: alg.clone(), lo, mods, diffs };
        debug_assert!(Complex::new(alg, c.lo, c.mods.clone(), c.diffs.clone()).is_ok(), "invalid complex");
        c
    }

    pub fn zero(alg: &Alg) -> Complex {
        Complex { alg: alg.clone(), lo: 0, mods: vec![], diffs: vec![] }
    }

    pub fn single(md: &AModule, deg: i64) -> Complex {
        Complex { alg: md.alg.clone(), lo: deg, mods: vec![md.clone()], diffs: vec![] }
    }

    /// Built from maps d^lo, …; the modules are read off the maps.
    pub fn from_homs(lo: i64, homs: &[AHom]) -> Result<Complex> {
        let Some(first) = homs.first() else {
            return Err(Error::Invalid("no maps given".into()));
        };
        let mut mods = vec![first.source.clone()];
        for h in homs {
            mods.push(h.target.clone());
        }
        for w in homs.windows(2) {
            if w[0].target != w[1].source {
                return Err(Error::DimensionMismatch("consecutive maps do not compose".into()));
            }
        }
        Complex::new(&first.source.alg, lo, mods, homs.iter().map(|h| h.mat.clone()).collect())
    }

    pub fn m(&self) -> u64 {
        self.alg.m
    }

    /// Highest degree of the window (lo − 1 when empty).
    pub fn hi(&self) -> i64 {
        self.lo + self.mods.len() as i64 - 1
    }

    pub fn is_empty(&self) -> bool {
        self.mods.iter().all(|m| m.is_zero())
    }

    pub fn in_window(&self, n: i64) -> bool {
        n >= self.lo && n <= self.hi()
    }

    pub fn module(&self, n: i64) -> AModule {
        if self.in_window(n) {
            self.mods[(n - self.lo) as usize].clone()
        } else {
            AModule::zero(&self.alg)
        }
    }

    pub fn module_ref(&self, n: i64) -> Option<&AModule> {
        self.in_window(n).then(|| &self.mods[(n - self.lo) as usize])
    }

    pub fn rank(&self, n: i64) -> usize {
        self.module_ref(n).map_or(0, |m| m.rank())
    }

    /// d^n: C^n → C^{n+1}.
    pub fn diff_mat(&self, n: i64) -> ZmMatrix {
        if self.in_window(n) && self.in_window(n + 1) {
            self.diffs[(n - self.lo) as usize].clone()
        } else {
            ZmMatrix::zeros(self.m(), self.rank(n + 1), self.rank(n))
        }
    }

    pub fn diff(&self, n: i64) -> AHom {
        AHom::from_parts(&self.module(n), &self.module(n + 1), self.diff_mat(n))
    }

    /// Lowest and highest degree carrying a nonzero module, if any.
    pub fn support(&self) -> Option<(i64, i64)> {
        let nz: Vec<i64> = (self.lo..=self.hi()).filter(|&n| self.rank(n) > 0).collect();
        Some((*nz.first()?, *nz.last()?))
    }

    /// Same complex with zero modules removed from both ends.
    pub fn trimmed(&self) -> Complex {
        match self.support() {
            None => Complex::zero(&self.alg),
            Some((a, b)) => self.window(a, b),
        }
    }

    /// The complex restricted or padded with zeros to [a, b]. Restriction is
    /// only meaningful when the dropped modules are zero.
    pub fn window(&self, a: i64, b: i64) -> Complex {
        if b < a {
            return Complex::zero(&self.alg);
        }
        let mods = (a..=b).map(|n| self.module(n)).collect();
        let diffs = (a..b).map(|n| self.diff_mat(n)).collect();
        Complex { alg: self.alg.clone(), lo: a, mods, diffs }
    }

    /// (Σ^k C)^n = C^{n+k} with differential (−1)^k d.
    pub fn shift(&self, k: i64) -> Complex {
        let s = signed(k, self.m());
        Complex {
            alg: self.alg.clone(),
            lo: self.lo - k,
            mods: self.mods.clone(),
            diffs: self.diffs.iter().enumerate().map(|(k, d)| d.scale(s).reduced_rows(&self.mods[k + 1].add.orders)).collect(),
        }
    }

    pub fn direct_sum(&self, other: &Complex) -> Complex {
        let (a, b) = joint_window(self, other);
        let mods: Vec<AModule> = (a..=b).map(|n| AModule::direct_sum(&self.alg, &[&self.module(n), &other.module(n)])).collect();
        let diffs = (a..b).map(|n| ZmMatrix::block_diag(self.m(), &[&self.diff_mat(n), &other.diff_mat(n)])).collect();
        Complex { alg: self.alg.clone(), lo: a, mods, diffs }
    }

    pub fn total_size(&self) -> u128 {
        self.mods.iter().map(|m| m.size()).product()
    }

    pub fn total_rank(&self) -> usize {
        self.mods.iter().map(|m| m.rank()).sum()
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i64> {
        self.lo..=self.hi()
    }
}

/// [min lo, max hi] over the nonempty ones.
pub fn joint_window(a: &Complex, b: &Complex) -> (i64, i64) {
    match (a.mods.is_empty(), b.mods.is_empty()) {
        (true, true) => (0, -1),
        (true, false) => (b.lo, b.hi()),
        (false, true) => (a.lo, a.hi()),
        (false, false) => (a.lo.min(b.lo), a.hi().max(b.hi())),
    }
}

/// A chain map; degrees absent from `maps` are zero.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub source: Complex,
    pub target: Complex,
    pub maps: BTreeMap<i64, ZmMatrix>,
}

impl ChainMap {
    pub fn new(source: &Complex, target: &Complex, maps: BTreeMap<i64, ZmMatrix>) -> Result<ChainMap> {
        if !same_algebra(&source.alg, &target.alg) {
            return Err(Error::Invalid("chain map between complexes over different algebras".into()));
        }
        for (&n, f) in &maps {
            if f.shape() != (target.rank(n), source.rank(n)) {
                return Err(Error::DimensionMismatch(format!("chain map component in degree {n} has shape {:?}", f.shape())));
            }
            AHom::new(&source.module(n), &target.module(n), f.clone())?;
        }
        let c = ChainMap { source: source.clone(), target: target.clone(), maps };
        c.check_commutes()?;
        Ok(c)
    }

    pub(crate) fn from_parts(source: &Complex, target: &Complex, maps: BTreeMap<i64, ZmMatrix>) -> ChainMap {
        let maps = maps
            .into_iter()
            .filter(|(n, f)| source.rank(*n) > 0 && target.rank(*n) > 0 && !f.is_zero())
            .map(|(n, f)| (n, f.reduced_rows(&target.module(n).add.orders)))
            .collect();
        let c = ChainMap { source: source.clone(), target: target.clone(), maps };
        debug_assert!(c.check_commutes().is_ok(), "not a chain map");
        c
    }

    pub fn from_fn(source: &Complex, target: &Complex, mut f: impl FnMut(i64) -> ZmMatrix) -> ChainMap {
        let (a, b) = joint_window(source, target);
        let maps = (a..=b).map(|n| (n, f(n))).collect();
        ChainMap::from_parts(source, target, maps)
    }

    pub fn check_commutes(&self) -> Result<()> {
        let (a, b) = joint_window(&self.source, &self.target);
        for n in a - 1..=b {
            let lhs = self.target.diff_mat(n).mul(&self.mat(n));
            let rhs = self.mat(n + 1).mul(&self.source.diff_mat(n));
            let orders = &self.target.module(n + 1).add.orders;
            if lhs.reduced_rows(orders) != rhs.reduced_rows(orders) {
                return Err(Error::Verification(format!("chain map does not commute with d in degree {n}")));
            }
        }
        Ok(())
    }

    pub fn mat(&self, n: i64) -> ZmMatrix {
        self.maps.get(&n).cloned().unwrap_or_else(|| ZmMatrix::zeros(self.source.m(), self.target.rank(n), self.source.rank(n)))
    }

    pub fn component(&self, n: i64) -> AHom {
        AHom::from_parts(&self.source.module(n), &self.target.module(n), self.mat(n))
    }

    pub fn identity(c: &Complex) -> ChainMap {
        ChainMap::from_fn(c, c, |n| ZmMatrix::identity(c.m(), c.rank(n)))
    }

    pub fn zero(source: &Complex, target: &Complex) -> ChainMap {
        ChainMap { source: source.clone(), target: target.clone(), maps: BTreeMap::new() }
    }

    /// self ∘ other.
    pub fn compose(&self, other: &ChainMap) -> ChainMap {
        let (a, b) = joint_window(&other.source, &self.target);
        let maps = (a..=b).map(|n| (n, self.mat(n).mul(&other.mat(n)))).collect();
        ChainMap::from_parts(&other.source, &self.target, maps)
    }

    pub fn add(&self, other: &ChainMap) -> ChainMap {
        ChainMap::from_fn(&self.source, &self.target, |n| self.mat(n).add(&other.mat(n)))
    }

    pub fn sub(&self, other: &ChainMap) -> ChainMap {
        ChainMap::from_fn(&self.source, &self.target, |n| self.mat(n).sub(&other.mat(n)))
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap::from_fn(&self.source, &self.target, |n| self.mat(n).neg())
    }

    pub fn scale(&self, c: u64) -> ChainMap {
        ChainMap::from_fn(&self.source, &self.target, |n| self.mat(n).scale(c))
    }

    pub fn is_zero(&self) -> bool {
        self.maps.values().all(|f| f.is_zero())
    }

    /// Σ^k f: (Σ^k X)^n → (Σ^k Y)^n is f^{n+k}.
    pub fn shift(&self, k: i64) -> ChainMap {
        let (s, t) = (self.source.shift(k), self.target.shift(k));
        let maps = self.maps.iter().map(|(&n, f)| (n - k, f.clone())).collect();
        ChainMap::from_parts(&s, &t, maps)
    }

    pub fn is_degreewise_mono(&self) -> bool {
        let (a, b) = joint_window(&self.source, &self.target);
        (a..=b).all(|n| self.component(n).is_mono())
    }

    pub fn is_degreewise_epi(&self) -> bool {
        let (a, b) = joint_window(&self.source, &self.target);
        (a..=b).all(|n| self.component(n).is_epi())
    }

    /// Same maps, with source and target replaced by equal complexes.
    pub fn retyped(&self, source: &Complex, target: &Complex) -> ChainMap {
        ChainMap::from_parts(source, target, self.maps.clone())
    }

    pub fn equals(&self, other: &ChainMap) -> bool {
        let (a, b) = joint_window(&self.source, &self.target);
        (a..=b).all(|n| self.mat(n) == other.mat(n))
    }
}

/// h^n: C^n → D^{n−1}.
#[derive(Clone, Debug)]
pub struct Homotopy {
    pub source: Complex,
    pub target: Complex,
    pub maps: BTreeMap<i64, ZmMatrix>,
}

impl Homotopy {
    pub fn mat(&self, n: i64) -> ZmMatrix {
        self.maps.get(&n).cloned().unwrap_or_else(|| ZmMatrix::zeros(self.source.m(), self.target.rank(n - 1), self.source.rank(n)))
    }

    pub fn zero(source: &Complex, target: &Complex) -> Homotopy {
        Homotopy { source: source.clone(), target: target.clone(), maps: BTreeMap::new() }
    }

    /// d h + h d, a null-homotopic chain map.
    pub fn boundary(&self) -> ChainMap {
        let (s, t) = (&self.source, &self.target);
        ChainMap::from_fn(s, t, |n| t.diff_mat(n - 1).mul(&self.mat(n)).add(&self.mat(n + 1).mul(&s.diff_mat(n))))
    }

    /// Checks f − g = d h + h d in every degree.
    pub fn verify(&self, f: &ChainMap, g: &ChainMap) -> Result<()> {
        let b = self.boundary();
        let (lo, hi) = joint_window(&self.source, &self.target);
        for n in lo..=hi {
            let orders = &self.target.module(n).add.orders;
            if f.mat(n).sub(&g.mat(n)).reduced_rows(orders) != b.mat(n).reduced_rows(orders) {
                return Err(Error::Verification(format!("homotopy identity fails in degree {n}")));
            }
        }
        Ok(())
    }

    /// g∘h for a chain map g out of the target.
    pub fn post(&self, g: &ChainMap) -> Homotopy {
        let maps = self.maps.iter().map(|(&n, h)| (n, g.mat(n - 1).mul(h))).collect();
        Homotopy { source: self.source.clone(), target: g.target.clone(), maps }
    }

    /// h∘f for a chain map f into the source.
    pub fn pre(&self, f: &ChainMap) -> Homotopy {
        let maps = self.maps.iter().map(|(&n, h)| (n, h.mul(&f.mat(n)))).collect();
        Homotopy { source: f.source.clone(), target: self.target.clone(), maps }
    }

    pub fn add(&self, other: &Homotopy) -> Homotopy {
        let mut maps = self.maps.clone();
        for (&n, h) in &other.maps {
            let cur = self.mat(n);
            maps.insert(n, cur.add(h));
        }
        Homotopy { source: self.source.clone(), target: self.target.clone(), maps }
    }
}

/// JSON form: {"lo", "hi", "modules": [..], "differentials": [..]}.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ComplexData {
    pub lo: i64,
    pub hi: i64,
    pub modules: Vec<ModuleData>,
    pub differentials: Vec<ZmMatrix>,
}

impl Complex {
    pub fn to_data(&self) -> ComplexData {
        ComplexData {
            lo: self.lo,
            hi: self.hi(),
            modules: self.mods.iter().map(|m| m.to_data()).collect(),
            differentials: self.diffs.clone(),
        }
    }

    pub fn from_data(alg: &Alg, d: &ComplexData) -> Result<Complex> {
        if d.hi - d.lo + 1 != d.modules.len() as i64 {
            return Err(Error::DimensionMismatch(format!("window [{}, {}] but {} modules", d.lo, d.hi, d.modules.len())));
        }
        let mods = d.modules.iter().map(|m| AModule::from_data(alg, m)).collect::<Result<Vec<_>>>()?;
        Complex::new(alg, d.lo, mods, d.differentials.clone())
    }
}

/// JSON form of a chain map or homotopy: both complexes plus the nonzero components.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MapData {
    pub source: ComplexData,
    pub target: ComplexData,
    pub maps: BTreeMap<i64, ZmMatrix>,
}

impl ChainMap {
    pub fn to_data(&self) -> MapData {
        MapData { source: self.source.to_data(), target: self.target.to_data(), maps: self.maps.clone() }
    }

    pub fn from_data(alg: &Alg, d: &MapData) -> Result<ChainMap> {
        ChainMap::new(&Complex::from_data(alg, &d.source)?, &Complex::from_data(alg, &d.target)?, d.maps.clone())
    }
}

impl Homotopy {
    pub fn to_data(&self) -> MapData {
        MapData { source: self.source.to_data(), target: self.target.to_data(), maps: self.maps.clone() }
    }

    /// Shapes are checked against C^n → D^{n−1}; the homotopy identity is not.
    pub fn from_data(alg: &Alg, d: &MapData) -> Result<Homotopy> {
        let (source, target) = (Complex::from_data(alg, &d.source)?, Complex::from_data(alg, &d.target)?);
        for (&n, mat) in &d.maps {
            let (r, c) = (target.rank(n - 1), source.rank(n));
            if mat.shape() != (r, c) || mat.modulus() != alg.m {
                return Err(Error::DimensionMismatch(format!("homotopy component in degree {n}")));
            }
        }
        Ok(Homotopy { source, target, maps: d.maps.clone() })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::preset;

    fn eps_complex(len: usize) -> Complex {
        let a = preset("dual_numbers:2").unwrap();
        let r = AModule::regular(&a);
        let eps = a.right_mult(&a.basis_vec(1));
        Complex::new(&a, -1, vec![r; len], vec![eps; len - 1]).unwrap()
    }

    #[test]
    fn dd_zero_enforced() {
        let a = preset("dual_numbers:2").unwrap();
        let r = AModule::regular(&a);
        let id = ZmMatrix::identity(2, 2);
        assert!(Complex::new(&a, 0, vec![r.clone(), r.clone(), r.clone()], vec![id.clone(), id]).is_err());
        let c = eps_complex(3);
        assert_eq!(c.hi(), 1);
    }

    #[test]
    fn shift_and_sign() {
        let c = eps_complex(3);
        let s = c.shift(1);
        assert_eq!(s.lo, -2);
        assert_eq!(s.diff_mat(-2), c.diff_mat(-1));
        let z4 = preset("zmod:4").unwrap();
        let r = AModule::regular(&z4);
        let two = z4.right_mult(&[2]);
        let c4 = Complex::new(&z4, 0, vec![r.clone(), r], vec![two.clone()]).unwrap();
        assert_eq!(c4.shift(1).diff_mat(-1), two.scale(3));
        assert_eq!(c4.shift(2).shift(-2), c4);
    }

    #[test]
    fn chain_map_checks() {
        let c = eps_complex(3);
        let id = ChainMap::identity(&c);
        assert!(id.check_commutes().is_ok());
        let mut maps = BTreeMap::new();
        maps.insert(0, ZmMatrix::identity(2, 2));
        assert!(ChainMap::new(&c, &c, maps).is_err());
    }

    #[test]
    fn json_round_trip() {
        let c = eps_complex(3);
        let a = c.alg.clone();
        let s = serde_json::to_string(&c.to_data()).unwrap();
        let back = Complex::from_data(&a, &serde_json::from_str(&s).unwrap()).unwrap();
        assert_eq!(back, c);
    }
}
