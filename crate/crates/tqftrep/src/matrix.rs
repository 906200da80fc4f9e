//! Dense exact matrices over a cyclotomic field. Dimensions here are tiny
//! (block spaces of dimension at most ~10), so everything is row-major
//! Gauss-Jordan with exact division.

use crate::cyclo::CycloScalar;
use crate::error::{Result, TqftError};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CycloMatrix {
    m: u64,
    dim: usize,
    entries: Vec<CycloScalar>,
}

impl CycloMatrix {
    pub fn zero(m: u64, dim: usize) -> Result<CycloMatrix> {
        Ok(CycloMatrix {
            m,
            dim,
            entries: vec![CycloScalar::zero(m)?; dim * dim],
        })
    }

    pub fn identity(m: u64, dim: usize) -> Result<CycloMatrix> {
        let mut out = Self::zero(m, dim)?;
        let one = CycloScalar::one(m)?;
        for i in 0..dim {
            out.set(i, i, one.clone());
        }
        Ok(out)
    }

    pub fn from_rows(m: u64, rows: Vec<Vec<CycloScalar>>) -> Result<CycloMatrix> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(TqftError::NotSquare);
            }
            entries.extend(row);
        }
        Ok(CycloMatrix { m, dim, entries })
    }

    pub fn conductor(&self) -> u64 {
        self.m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloScalar {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: CycloScalar) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<CycloScalar>> {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub fn mul(&self, other: &CycloMatrix) -> CycloMatrix {
        assert_eq!(self.dim, other.dim);
        let mut out = CycloMatrix::zero(self.m, self.dim).expect("valid conductor");
        for i in 0..self.dim {
            for j in 0..self.dim {
                let mut acc = CycloScalar::zero(self.m).expect("valid conductor");
                for k in 0..self.dim {
                    let a = self.get(i, k);
                    if a.is_zero() {
                        continue;
                    }
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    acc = acc.add(&a.mul(b));
                }
                out.set(i, j, acc);
            }
        }
        out
    }

    pub fn add(&self, other: &CycloMatrix) -> CycloMatrix {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for i in 0..self.dim * self.dim {
            out.entries[i] = out.entries[i].add(&other.entries[i]);
        }
        out
    }

    pub fn sub(&self, other: &CycloMatrix) -> CycloMatrix {
        assert_eq!(self.dim, other.dim);
        let mut out = self.clone();
        for i in 0..self.dim * self.dim {
            out.entries[i] = out.entries[i].sub(&other.entries[i]);
        }
        out
    }

    pub fn scale(&self, s: &CycloScalar) -> CycloMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.mul(s);
        }
        out
    }

    pub fn neg(&self) -> CycloMatrix {
        let mut out = self.clone();
        for e in out.entries.iter_mut() {
            *e = e.neg();
        }
        out
    }

    pub fn transpose(&self) -> CycloMatrix {
        let mut out = self.clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.set(i, j, self.get(j, i).clone());
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// Some(lambda) iff this equals lambda * identity exactly.
    pub fn as_scalar(&self) -> Option<CycloScalar> {
        let lambda = self.get(0, 0).clone();
        for i in 0..self.dim {
            for j in 0..self.dim {
                if i == j {
                    if self.get(i, j) != &lambda {
                        return None;
                    }
                } else if !self.get(i, j).is_zero() {
                    return None;
                }
            }
        }
        Some(lambda)
    }

    /// Gauss-Jordan inverse.
    pub fn inverse(&self) -> Result<CycloMatrix> {
        let n = self.dim;
        let mut a = self.clone();
        let mut inv = CycloMatrix::identity(self.m, n)?;
        for col in 0..n {
            let pivot_row = (col..n)
                .find(|&r| !a.get(r, col).is_zero())
                .ok_or(TqftError::SingularMatrix)?;
            if pivot_row != col {
                for j in 0..n {
                    let tmp = a.get(pivot_row, j).clone();
                    a.set(pivot_row, j, a.get(col, j).clone());
                    a.set(col, j, tmp);
                    let tmp = inv.get(pivot_row, j).clone();
                    inv.set(pivot_row, j, inv.get(col, j).clone());
                    inv.set(col, j, tmp);
                }
            }
            let p_inv = a.get(col, col).inv()?;
            for j in 0..n {
                a.set(col, j, a.get(col, j).mul(&p_inv));
                inv.set(col, j, inv.get(col, j).mul(&p_inv));
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).clone();
                for j in 0..n {
                    let new_a = a.get(r, j).sub(&factor.mul(a.get(col, j)));
                    a.set(r, j, new_a);
                    let new_i = inv.get(r, j).sub(&factor.mul(inv.get(col, j)));
                    inv.set(r, j, new_i);
                }
            }
        }
        Ok(inv)
    }

    pub fn pow(&self, mut k: u64) -> CycloMatrix {
        let mut acc = CycloMatrix::identity(self.m, self.dim).expect("valid conductor");
        let mut sq = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    pub fn trace(&self) -> CycloScalar {
        let mut acc = CycloScalar::zero(self.m).expect("valid conductor");
        for i in 0..self.dim {
            acc = acc.add(self.get(i, i));
        }
        acc
    }

    pub fn det(&self) -> CycloScalar {
        let n = self.dim;
        let mut a = self.clone();
        let mut det = CycloScalar::one(self.m).expect("valid conductor");
        for col in 0..n {
            let pivot_row = match (col..n).find(|&r| !a.get(r, col).is_zero()) {
                Some(r) => r,
                None => return CycloScalar::zero(self.m).expect("valid conductor"),
            };
            if pivot_row != col {
                for j in 0..n {
                    let tmp = a.get(pivot_row, j).clone();
                    a.set(pivot_row, j, a.get(col, j).clone());
                    a.set(col, j, tmp);
                }
                det = det.neg();
            }
            let p = a.get(col, col).clone();
            det = det.mul(&p);
            let p_inv = p.inv().expect("pivot nonzero");
            for r in col + 1..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let factor = a.get(r, col).mul(&p_inv);
                for j in col..n {
                    let v = a.get(r, j).sub(&factor.mul(a.get(col, j)));
                    a.set(r, j, v);
                }
            }
        }
        det
    }

    /// Basis of the null space, as row vectors.
    pub fn kernel(&self) -> Vec<Vec<CycloScalar>> {
        let n = self.dim;
        let zero = CycloScalar::zero(self.m).expect("valid conductor");
        let one = CycloScalar::one(self.m).expect("valid conductor");
        let mut a = self.rows();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; n];
        let mut row = 0;
        for col in 0..n {
            let pivot = (row..n).find(|&r| !a[r][col].is_zero());
            let Some(p) = pivot else { continue };
            a.swap(row, p);
            let inv = a[row][col].inv().expect("pivot nonzero");
            for j in 0..n {
                a[row][j] = a[row][j].mul(&inv);
            }
            for r in 0..n {
                if r != row && !a[r][col].is_zero() {
                    let factor = a[r][col].clone();
                    for j in 0..n {
                        a[r][j] = a[r][j].sub(&factor.mul(&a[row][j]));
                    }
                }
            }
            pivot_of_col[col] = Some(row);
            row += 1;
            if row == n {
                break;
            }
        }
        let mut basis = Vec::new();
        for col in 0..n {
            if pivot_of_col[col].is_some() {
                continue;
            }
            let mut v = vec![zero.clone(); n];
            v[col] = one.clone();
            for (c, pr) in pivot_of_col.iter().enumerate() {
                if let Some(r) = pr {
                    v[c] = a[*r][col].neg();
                }
            }
            basis.push(v);
        }
        basis
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theory::TheoryCtx;

    fn sample(ctx: &TheoryCtx) -> CycloMatrix {
        CycloMatrix::from_rows(
            ctx.m(),
            vec![
                vec![ctx.a_pow(1), ctx.one()],
                vec![ctx.zero(), ctx.a_pow(-3)],
            ],
        )
        .unwrap()
    }

    #[test]
    fn inverse_round_trip() {
        let ctx = TheoryCtx::new(20, 1).unwrap();
        let m = sample(&ctx);
        let inv = m.inverse().unwrap();
        let id = CycloMatrix::identity(ctx.m(), 2).unwrap();
        assert_eq!(m.mul(&inv), id);
        assert_eq!(inv.mul(&m), id);
        let mut sing = m.clone();
        sing.set(1, 1, ctx.zero());
        sing.set(0, 0, ctx.zero());
        sing.set(0, 1, ctx.zero());
        assert!(sing.inverse().is_err());
    }

    #[test]
    fn scalar_detection() {
        let ctx = TheoryCtx::new(20, 1).unwrap();
        let id = CycloMatrix::identity(ctx.m(), 3).unwrap();
        assert!(id.as_scalar().unwrap().is_one());
        let lam = ctx.a_pow(3).neg();
        assert_eq!(id.scale(&lam).as_scalar().unwrap(), lam);
        assert!(sample(&ctx).as_scalar().is_none());
    }

    #[test]
    fn determinant_and_trace() {
        let ctx = TheoryCtx::new(20, 1).unwrap();
        let m = sample(&ctx);
        assert_eq!(m.det(), ctx.a_pow(-2));
        assert_eq!(m.trace(), ctx.a_pow(1).add(&ctx.a_pow(-3)));
    }

    #[test]
    fn kernel_of_projection() {
        let ctx = TheoryCtx::new(20, 1).unwrap();
        let p = CycloMatrix::from_rows(
            ctx.m(),
            vec![vec![ctx.one(), ctx.zero()], vec![ctx.zero(), ctx.zero()]],
        )
        .unwrap();
        let k = p.kernel();
        assert_eq!(k.len(), 1);
        assert!(k[0][0].is_zero());
        assert!(!k[0][1].is_zero());
        let full = CycloMatrix::identity(ctx.m(), 2).unwrap();
        assert!(full.kernel().is_empty());
    }
}
