use super::arith::{addmod, mulmod, negmod, submod};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Dense matrix with entries in ℤ/m, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ZmMatrix {
    m: u64,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    m: u64,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<u64>>,
}

impl ZmMatrix {
    pub fn zeros(m: u64, rows: usize, cols: usize) -> Self {
        assert!(m >= 2, "modulus must be at least 2");
        ZmMatrix { m, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(m: u64, n: usize) -> Self {
        let mut out = Self::zeros(m, n, n);
        for i in 0..n {
            out.data[i * n + i] = 1;
        }
        out
    }

    pub fn from_rows(m: u64, rows: usize, cols: usize, entries: &[Vec<u64>]) -> Result<Self> {
        if m < 2 {
            return Err(Error::Invalid(format!("modulus {m} < 2")));
        }
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!(
                "declared {rows}x{cols}, entries do not match"
            )));
        }
        let data = entries.iter().flatten().map(|&x| x % m).collect();
        Ok(ZmMatrix { m, rows, cols, data })
    }

    /// Build from a row list; `cols` is needed when the list is empty.
    pub fn from_row_vecs(m: u64, cols: usize, rows: &[Vec<u64>]) -> Self {
        let mut out = Self::zeros(m, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols);
            for (j, &x) in r.iter().enumerate() {
                out.data[i * cols + j] = x % m;
            }
        }
        out
    }

    pub fn from_fn(m: u64, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut out = Self::zeros(m, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                out.data[i * cols + j] = f(i, j) % m;
            }
        }
        out
    }

    pub fn column(m: u64, v: &[u64]) -> Self {
        Self::from_fn(m, v.len(), 1, |i, _| v[i])
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = v % self.m;
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn col_vec(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn entries(&self) -> &[u64] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.m, self.cols, self.rows, |i, j| self.get(j, i))
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::ModulusMismatch(self.m, other.m));
        }
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{:?} vs {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(())
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        if self.m != other.m {
            return Err(Error::ModulusMismatch(self.m, other.m));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let m = self.m;
        let mut out = Self::zeros(m, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * other.cols + j;
                        out.data[idx] = addmod(out.data[idx], mulmod(a, b, m), m);
                    }
                }
            }
        }
        Ok(out)
    }

    /// Product; panics on shape mismatch (internal use where shapes are known).
    pub fn mul(&self, other: &Self) -> Self {
        self.try_mul(other).expect("matrix product shape")
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let m = self.m;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| addmod(a, b, m)).collect();
        Ok(ZmMatrix { data, ..self.clone() })
    }

    pub fn add(&self, other: &Self) -> Self {
        self.try_add(other).expect("matrix sum shape")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same(other).expect("matrix difference shape");
        let m = self.m;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| submod(a, b, m)).collect();
        ZmMatrix { data, ..self.clone() }
    }

    pub fn neg(&self) -> Self {
        let m = self.m;
        ZmMatrix { data: self.data.iter().map(|&a| negmod(a, m)).collect(), ..self.clone() }
    }

    pub fn scale(&self, c: u64) -> Self {
        let m = self.m;
        ZmMatrix { data: self.data.iter().map(|&a| mulmod(a, c % m, m)).collect(), ..self.clone() }
    }

    pub fn mul_vec(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.cols, "vector length");
        let m = self.m;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0u64;
                for (j, &x) in v.iter().enumerate() {
                    acc = addmod(acc, mulmod(self.get(i, j), x, m), m);
                }
                acc
            })
            .collect()
    }

    /// Reduce row i modulo orders[i]; used for maps into ⊕ ℤ/dᵢ.
    pub fn reduce_rows(&mut self, orders: &[u64]) {
        assert_eq!(orders.len(), self.rows);
        for i in 0..self.rows {
            let d = orders[i];
            for j in 0..self.cols {
                let idx = i * self.cols + j;
                self.data[idx] %= d;
            }
        }
    }

    pub fn reduced_rows(mut self, orders: &[u64]) -> Self {
        self.reduce_rows(orders);
        self
    }

    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows);
        Self::from_fn(self.m, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j)
            } else {
                other.get(i, j - self.cols)
            }
        })
    }

    pub fn vstack(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        ZmMatrix { m: self.m, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block matrix from a grid of blocks with given row/column block sizes.
    pub fn from_blocks(m: u64, row_sizes: &[usize], col_sizes: &[usize], blocks: &[Vec<Option<&ZmMatrix>>]) -> Self {
        let rows: usize = row_sizes.iter().sum();
        let cols: usize = col_sizes.iter().sum();
        let mut out = Self::zeros(m, rows, cols);
        let mut r0 = 0;
        for (bi, &rs) in row_sizes.iter().enumerate() {
            let mut c0 = 0;
            for (bj, &cs) in col_sizes.iter().enumerate() {
                if let Some(b) = blocks[bi][bj] {
                    assert_eq!(b.shape(), (rs, cs), "block ({bi},{bj}) shape");
                    for i in 0..rs {
                        for j in 0..cs {
                            out.data[(r0 + i) * cols + c0 + j] = b.get(i, j) % m;
                        }
                    }
                }
                c0 += cs;
            }
            r0 += rs;
        }
        out
    }

    pub fn block_diag(m: u64, blocks: &[&ZmMatrix]) -> Self {
        let rs: Vec<usize> = blocks.iter().map(|b| b.rows).collect();
        let cs: Vec<usize> = blocks.iter().map(|b| b.cols).collect();
        let grid: Vec<Vec<Option<&ZmMatrix>>> = (0..blocks.len())
            .map(|i| (0..blocks.len()).map(|j| if i == j { Some(blocks[i]) } else { None }).collect())
            .collect();
        Self::from_blocks(m, &rs, &cs, &grid)
    }

    pub fn submatrix(&self, r0: usize, rows: usize, c0: usize, cols: usize) -> Self {
        Self::from_fn(self.m, rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MatrixJson { m: self.m, rows: self.rows, cols: self.cols, entries: self.row_vecs() })
            .expect("matrix json")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let j: MatrixJson =
            serde_json::from_value(v.clone()).map_err(|e| Error::Invalid(format!("matrix json: {e}")))?;
        if j.entries.iter().flatten().any(|&x| x >= j.m) {
            return Err(Error::Invalid("matrix entries must be reduced".into()));
        }
        Self::from_rows(j.m, j.rows, j.cols, &j.entries)
    }
}

impl Serialize for ZmMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson { m: self.m, rows: self.rows, cols: self.cols, entries: self.row_vecs() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for ZmMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = MatrixJson::deserialize(d)?;
        if j.m < 2 || j.entries.iter().flatten().any(|&x| x >= j.m) {
            return Err(serde::de::Error::custom("matrix entries must be reduced modulo m >= 2"));
        }
        ZmMatrix::from_rows(j.m, j.rows, j.cols, &j.entries).map_err(serde::de::Error::custom)
    }
}
