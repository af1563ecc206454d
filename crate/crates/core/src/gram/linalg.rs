//! Dense matrices and polynomials over `F`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FElem, FieldCtx};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FElem>, // row-major
}

impl FMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        FMatrix {
            rows,
            cols,
            data: vec![FElem::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = FElem::ONE;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<FElem>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        FMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[FElem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn trace(&self) -> FElem {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn mul(&self, ctx: &FieldCtx, other: &FMatrix) -> FMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = FMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self[(i, l)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += ctx.f_mul(a, other[(l, j)]);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, ctx: &FieldCtx, v: &[FElem]) -> Vec<FElem> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(&a, &b)| ctx.f_mul(a, b))
                    .sum()
            })
            .collect()
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows == self.cols {
            Ok(self.rows)
        } else {
            Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }
}

impl std::ops::Index<(usize, usize)> for FMatrix {
    type Output = FElem;
    fn index(&self, (i, j): (usize, usize)) -> &FElem {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for FMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FElem {
        &mut self.data[i * self.cols + j]
    }
}

/// Rank by row reduction.
pub fn rank_f(ctx: &FieldCtx, a: &FMatrix) -> usize {
    let mut m = a.clone();
    let (rows, cols) = m.shape();
    let mut rank = 0;
    for col in 0..cols {
        let Some(p) = (rank..rows).find(|&r| !m[(r, col)].is_zero()) else {
            continue;
        };
        m.swap_rows(rank, p);
        let inv = ctx.f_inv(m[(rank, col)]).expect("pivot is nonzero");
        for r in rank + 1..rows {
            let f = ctx.f_mul(m[(r, col)], inv);
            if f.is_zero() {
                continue;
            }
            for j in col..cols {
                let v = ctx.f_mul(f, m[(rank, j)]);
                m[(r, j)] += v;
            }
        }
        rank += 1;
    }
    rank
}

/// Determinant by elimination.
pub fn det(ctx: &FieldCtx, a: &FMatrix) -> Result<FElem> {
    let n = a.require_square()?;
    let mut m = a.clone();
    let mut acc = FElem::ONE;
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m[(r, col)].is_zero()) else {
            return Ok(FElem::ZERO);
        };
        // row swaps flip the sign, which is invisible in characteristic 2
        m.swap_rows(col, p);
        let piv = m[(col, col)];
        acc = ctx.f_mul(acc, piv);
        let inv = ctx.f_inv(piv)?;
        for r in col + 1..n {
            let f = ctx.f_mul(m[(r, col)], inv);
            if f.is_zero() {
                continue;
            }
            for j in col..n {
                let v = ctx.f_mul(f, m[(col, j)]);
                m[(r, j)] += v;
            }
        }
    }
    Ok(acc)
}

/// Polynomials over `F`, constant term first, without trailing zeros.
pub type FPoly = Vec<FElem>;

pub fn poly_trim(mut p: FPoly) -> FPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

pub fn poly_mul(ctx: &FieldCtx, a: &[FElem], b: &[FElem]) -> FPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![FElem::ZERO; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += ctx.f_mul(x, y);
        }
    }
    poly_trim(out)
}

pub fn poly_add(a: &[FElem], b: &[FElem]) -> FPoly {
    let n = a.len().max(b.len());
    poly_trim(
        (0..n)
            .map(|i| a.get(i).copied().unwrap_or_default() + b.get(i).copied().unwrap_or_default())
            .collect(),
    )
}

/// Quotient and remainder; `b` must be nonzero.
pub fn poly_divrem(ctx: &FieldCtx, a: &[FElem], b: &[FElem]) -> (FPoly, FPoly) {
    let b = poly_trim(b.to_vec());
    let lead_inv = ctx
        .f_inv(*b.last().expect("division by the zero polynomial"))
        .expect("leading coefficient is nonzero");
    let mut r = poly_trim(a.to_vec());
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut quot = vec![FElem::ZERO; r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = ctx.f_mul(*r.last().unwrap(), lead_inv);
        quot[shift] = f;
        for (j, &c) in b.iter().enumerate() {
            r[shift + j] += ctx.f_mul(f, c);
        }
        r = poly_trim(r);
    }
    (poly_trim(quot), r)
}

pub fn poly_monic(ctx: &FieldCtx, p: &[FElem]) -> FPoly {
    match p.last() {
        Some(&lead) => {
            let inv = ctx.f_inv(lead).expect("trimmed polynomial");
            p.iter().map(|&c| ctx.f_mul(c, inv)).collect()
        }
        None => Vec::new(),
    }
}

pub fn poly_gcd(ctx: &FieldCtx, a: &[FElem], b: &[FElem]) -> FPoly {
    let mut x = poly_trim(a.to_vec());
    let mut y = poly_trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = poly_divrem(ctx, &x, &y);
        x = y;
        y = r;
    }
    poly_monic(ctx, &x)
}

pub fn poly_lcm(ctx: &FieldCtx, a: &[FElem], b: &[FElem]) -> FPoly {
    let g = poly_gcd(ctx, a, b);
    let (q, _) = poly_divrem(ctx, &poly_mul(ctx, a, b), &g);
    poly_monic(ctx, &q)
}

pub fn poly_eval(ctx: &FieldCtx, p: &[FElem], x: FElem) -> FElem {
    p.iter()
        .rev()
        .fold(FElem::ZERO, |acc, &c| ctx.f_mul(acc, x) + c)
}

/// `p(A)` by Horner's rule.
pub fn poly_eval_matrix(ctx: &FieldCtx, p: &[FElem], a: &FMatrix) -> Result<FMatrix> {
    let n = a.require_square()?;
    let mut acc = FMatrix::zeros(n, n);
    for &c in p.iter().rev() {
        acc = acc.mul(ctx, a);
        for i in 0..n {
            acc[(i, i)] += c;
        }
    }
    Ok(acc)
}

/// Characteristic polynomial `det(xI - A)`, monic of degree `n`.
///
/// Reduces to upper Hessenberg form by similarity transforms, then runs the
/// usual recurrence over the leading principal blocks.
pub fn char_poly(ctx: &FieldCtx, a: &FMatrix) -> Result<FPoly> {
    let n = a.require_square()?;
    let mut h = a.clone();
    for c in 0..n.saturating_sub(2) {
        let Some(p) = (c + 1..n).find(|&r| !h[(r, c)].is_zero()) else {
            continue;
        };
        h.swap_rows(p, c + 1);
        h.swap_cols(p, c + 1);
        let inv = ctx.f_inv(h[(c + 1, c)])?;
        for i in c + 2..n {
            let u = ctx.f_mul(h[(i, c)], inv);
            if u.is_zero() {
                continue;
            }
            // row_i -= u row_(c+1); col_(c+1) += u col_i
            for j in 0..n {
                let v = ctx.f_mul(u, h[(c + 1, j)]);
                h[(i, j)] += v;
            }
            for r in 0..n {
                let v = ctx.f_mul(u, h[(r, i)]);
                h[(r, c + 1)] += v;
            }
        }
    }
    // p[k] = char poly of the leading k x k block
    let mut p: Vec<FPoly> = vec![vec![FElem::ONE]];
    for k in 0..n {
        let mut next = poly_mul(ctx, &p[k], &[h[(k, k)], FElem::ONE]);
        let mut prod = FElem::ONE;
        for i in (0..k).rev() {
            prod = ctx.f_mul(prod, h[(i + 1, i)]);
            let coef = ctx.f_mul(prod, h[(i, k)]);
            if !coef.is_zero() {
                let term: FPoly = p[i].iter().map(|&c| ctx.f_mul(c, coef)).collect();
                next = poly_add(&next, &term);
            }
        }
        p.push(next);
    }
    Ok(p.pop().expect("at least the constant polynomial"))
}

/// Minimal polynomial as the lcm of the minimal polynomials of the basis
/// vectors, each found from the first linear dependence in its Krylov sequence.
pub fn min_poly(ctx: &FieldCtx, a: &FMatrix) -> Result<FPoly> {
    let n = a.require_square()?;
    let mut acc: FPoly = vec![FElem::ONE];
    for j in 0..n {
        let mut v = vec![FElem::ZERO; n];
        v[j] = FElem::ONE;
        // reduced vectors with their pivots and the polynomials producing them
        let mut basis: Vec<(Vec<FElem>, usize, FPoly)> = Vec::new();
        let mut power: FPoly = vec![FElem::ONE];
        loop {
            let mut w = v.clone();
            let mut p = power.clone();
            for (bv, piv, bp) in &basis {
                let f = w[*piv];
                if f.is_zero() {
                    continue;
                }
                for (x, &y) in w.iter_mut().zip(bv) {
                    *x += ctx.f_mul(f, y);
                }
                p = poly_add(&p, &bp.iter().map(|&c| ctx.f_mul(f, c)).collect::<Vec<_>>());
            }
            match w.iter().position(|x| !x.is_zero()) {
                None => {
                    acc = poly_lcm(ctx, &acc, &p);
                    break;
                }
                Some(piv) => {
                    let inv = ctx.f_inv(w[piv])?;
                    let w: Vec<FElem> = w.iter().map(|&x| ctx.f_mul(x, inv)).collect();
                    let p: FPoly = p.iter().map(|&c| ctx.f_mul(c, inv)).collect();
                    basis.push((w, piv, p));
                }
            }
            v = a.mul_vec(ctx, &v);
            power.insert(0, FElem::ZERO);
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rand_matrix(ctx: &FieldCtx, n: usize, rng: &mut ChaCha8Rng) -> FMatrix {
        FMatrix::from_rows(
            (0..n)
                .map(|_| (0..n).map(|_| FElem(rng.gen_range(0..ctx.q()))).collect())
                .collect(),
        )
    }

    /// Leibniz expansion of det(xI - A) with polynomial entries.
    fn leibniz_char_poly(ctx: &FieldCtx, a: &FMatrix) -> FPoly {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![vec![]];
            }
            let mut out = Vec::new();
            for p in perms(n - 1) {
                for pos in 0..=p.len() {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    out.push(q);
                }
            }
            out
        }
        let n = a.shape().0;
        let entry = |i: usize, j: usize| -> FPoly {
            if i == j {
                poly_trim(vec![a[(i, j)], FElem::ONE])
            } else {
                poly_trim(vec![a[(i, j)]])
            }
        };
        let mut total: FPoly = Vec::new();
        for p in perms(n) {
            let mut term: FPoly = vec![FElem::ONE];
            for (i, &j) in p.iter().enumerate() {
                term = poly_mul(ctx, &term, &entry(i, j));
            }
            total = poly_add(&total, &term);
        }
        total
    }

    #[test]
    fn trivial_matrices() {
        let ctx = FieldCtx::new(3).unwrap();
        let z = FMatrix::zeros(4, 4);
        assert_eq!(rank_f(&ctx, &z), 0);
        let mut x4 = vec![FElem::ZERO; 4];
        x4.push(FElem::ONE);
        assert_eq!(char_poly(&ctx, &z).unwrap(), x4);
        assert_eq!(min_poly(&ctx, &z).unwrap(), vec![FElem::ZERO, FElem::ONE]);
        let id = FMatrix::identity(3);
        let one = FElem::ONE;
        assert_eq!(char_poly(&ctx, &id).unwrap(), vec![one, one, one, one]);
        assert_eq!(min_poly(&ctx, &id).unwrap(), vec![one, one]);
        assert_eq!(rank_f(&ctx, &id), 3);
        assert!(matches!(
            char_poly(&ctx, &FMatrix::zeros(2, 3)),
            Err(Error::NonSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn char_poly_matches_leibniz() {
        let ctx = FieldCtx::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for n in 1..=5 {
            for _ in 0..20 {
                let a = rand_matrix(&ctx, n, &mut rng);
                assert_eq!(char_poly(&ctx, &a).unwrap(), leibniz_char_poly(&ctx, &a));
            }
        }
    }

    #[test]
    fn char_poly_evaluates_to_determinant() {
        let ctx = FieldCtx::new(4).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for n in [6, 9, 12] {
            let a = rand_matrix(&ctx, n, &mut rng);
            let p = char_poly(&ctx, &a).unwrap();
            assert_eq!(p.len(), n + 1);
            for x in ctx.f_elements() {
                let mut shifted = a.clone();
                for i in 0..n {
                    shifted[(i, i)] += x;
                }
                assert_eq!(poly_eval(&ctx, &p, x), det(&ctx, &shifted).unwrap());
            }
            // Cayley-Hamilton
            assert_eq!(
                poly_eval_matrix(&ctx, &p, &a).unwrap(),
                FMatrix::zeros(n, n)
            );
        }
    }

    #[test]
    fn min_poly_divides_char_poly_and_annihilates() {
        let ctx = FieldCtx::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for n in 1..=8 {
            for _ in 0..10 {
                let mut a = rand_matrix(&ctx, n, &mut rng);
                if n > 2 {
                    // force repeated structure sometimes
                    for j in 0..n {
                        a[(n - 1, j)] = a[(0, j)];
                    }
                }
                let mp = min_poly(&ctx, &a).unwrap();
                let cp = char_poly(&ctx, &a).unwrap();
                let (_, r) = poly_divrem(&ctx, &cp, &mp);
                assert!(r.is_empty());
                assert_eq!(
                    poly_eval_matrix(&ctx, &mp, &a).unwrap(),
                    FMatrix::zeros(n, n)
                );
                // no proper monic divisor of smaller degree annihilates: check
                // every proper divisor among factors x - lambda
                for lam in ctx.f_elements() {
                    let (q, r) = poly_divrem(&ctx, &mp, &[lam, FElem::ONE]);
                    if r.is_empty() && !q.is_empty() {
                        assert_ne!(
                            poly_eval_matrix(&ctx, &q, &a).unwrap(),
                            FMatrix::zeros(n, n)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn rank_of_products() {
        let ctx = FieldCtx::new(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for r in 0..=4 {
            let b = FMatrix::from_rows(
                (0..6)
                    .map(|_| (0..r).map(|_| FElem(rng.gen_range(0..8))).collect())
                    .collect(),
            );
            let c = FMatrix::from_rows(
                (0..r)
                    .map(|_| (0..6).map(|_| FElem(rng.gen_range(0..8))).collect())
                    .collect(),
            );
            let prod = if r == 0 {
                FMatrix::zeros(6, 6)
            } else {
                b.mul(&ctx, &c)
            };
            let rk = rank_f(&ctx, &prod);
            assert!(rk <= r);
            assert_eq!(det(&ctx, &prod).unwrap().is_zero(), rk < 6);
        }
    }

    #[test]
    fn poly_helpers() {
        let ctx = FieldCtx::new(3).unwrap();
        let one = FElem::ONE;
        let x_plus_1 = vec![one, one];
        let x = vec![FElem::ZERO, one];
        let prod = poly_mul(&ctx, &x_plus_1, &x);
        assert_eq!(poly_gcd(&ctx, &prod, &x), x);
        assert_eq!(poly_lcm(&ctx, &x_plus_1, &x), prod);
        let (q, r) = poly_divrem(&ctx, &prod, &x_plus_1);
        assert_eq!((q, r), (x, vec![]));
    }
}
