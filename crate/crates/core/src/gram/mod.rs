//! Gram matrices `M_H(k)` with entries `<y_i, y_j>^k` over the nonzero
//! points of a set through the origin, the row-sum hyperoval criterion, and
//! the spectral shape of `M_H(1)` for hyperovals.

mod linalg;

pub use linalg::{
    char_poly, det, min_poly, poly_divrem, poly_eval, poly_eval_matrix, poly_mul, rank_f, FMatrix,
    FPoly,
};

use serde::{Deserialize, Serialize};

use crate::criteria::{CriterionReport, Method, Witness};
use crate::error::{Error, Result};
use crate::field::{FElem, FieldCtx, KElem};
use crate::plane::{extract_g, PointSet};

fn gram_from_points(ctx: &FieldCtx, ys: &[KElem], k: u32) -> FMatrix {
    FMatrix::from_rows(
        ys.iter()
            .map(|&a| {
                ys.iter()
                    .map(|&b| ctx.f_pow(ctx.bform(a, b), u64::from(k)))
                    .collect()
            })
            .collect(),
    )
}

/// `M_H(k)` over `H \ {0}` in input order.
pub fn gram_matrix(ctx: &FieldCtx, h: &PointSet, k: u32) -> Result<FMatrix> {
    if !h.contains_origin() {
        return Err(Error::MissingOrigin);
    }
    Ok(gram_from_points(ctx, &h.nonzero_affine()?, k))
}

/// Row sums of `M_H(k)` vanish for every row and `1 <= k <= q`, given that no
/// two nonzero points share a line through the origin. A shared line is a
/// failure with the colliding pair as witness.
pub fn check_gram_criterion(ctx: &FieldCtx, h: &PointSet) -> Result<CriterionReport> {
    if let Some(p) = h.iter().find(|p| p.affine().is_none()) {
        return Err(Error::InfinitePoint(*p));
    }
    match extract_g(ctx, h) {
        Ok(_) => {}
        Err(Error::DirectionCollision { first, second }) => {
            return Ok(CriterionReport::fail(
                Method::Gram,
                Witness::DirectionCollision { first, second },
            ))
        }
        Err(e) => return Err(e),
    }
    let ys = h.nonzero_affine()?;
    let base = gram_from_points(ctx, &ys, 1);
    let mut cur = base.clone();
    let n = ys.len();
    for k in 1..=ctx.q() {
        if let Some(row) =
            (0..n).find(|&i| cur.row(i).iter().copied().sum::<FElem>() != FElem::ZERO)
        {
            return Ok(CriterionReport::fail(
                Method::Gram,
                Witness::GramRow { row, k },
            ));
        }
        for i in 0..n {
            for j in 0..n {
                cur[(i, j)] = ctx.f_mul(cur[(i, j)], base[(i, j)]);
            }
        }
    }
    Ok(CriterionReport::pass(Method::Gram))
}

/// Spectral facts about `M_H(1)` for a hyperoval `H` through the origin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumReport {
    pub q: u32,
    /// Nonzero points were divided by this element so that 1 is in the set.
    pub scale: KElem,
    /// Normalized nonzero points in matrix order; the last two are `1` and
    /// the point on the `i`-axis.
    pub ordered_points: Vec<KElem>,
    pub symmetric: bool,
    pub zero_diagonal: bool,
    pub trace: FElem,
    pub rank: usize,
    pub kernel_dim: usize,
    pub mu0: FElem,
    pub char_poly: Vec<FElem>,
    pub min_poly: Vec<FElem>,
    pub char_poly_matches: bool,
    pub min_poly_matches: bool,
    pub eigenvectors_checked: usize,
    pub eigen_checks_passed: bool,
}

impl SpectrumReport {
    /// Every structural claim holds.
    pub fn all_pass(&self) -> bool {
        self.symmetric
            && self.zero_diagonal
            && self.trace.is_zero()
            && self.rank == 2
            && self.kernel_dim == self.q as usize - 1
            && !self.mu0.is_zero()
            && self.char_poly_matches
            && self.min_poly_matches
            && self.eigen_checks_passed
            && self.eigenvectors_checked == self.q as usize - 1
    }
}

/// Monic `x^a (x + mu)^b`, constant term first.
fn shape_poly(ctx: &FieldCtx, a: usize, mu: FElem, b: usize) -> FPoly {
    let mut p: FPoly = vec![FElem::ZERO; a];
    p.push(FElem::ONE);
    for _ in 0..b {
        p = poly_mul(ctx, &p, &[mu, FElem::ONE]);
    }
    p
}

/// Normalizes `H` so that `1` is a point, orders the nonzero points with
/// `1` and the unique point `s i` on the `i`-axis last, and checks the shape
/// of `M_H`: zero trace, rank 2, characteristic polynomial
/// `x^(q-1) (x + mu0)^2`, minimal polynomial `x (x + mu0)`, and the kernel
/// vectors `e_i + c_i e_q + (s_i / s) e_(q+1)` where `y_i = c_i + s_i i`.
pub fn gram_spectrum_report(ctx: &FieldCtx, h: &PointSet) -> Result<SpectrumReport> {
    let crit = check_gram_criterion(ctx, h)?;
    if !crit.verdict {
        return Err(Error::Defect(format!(
            "spectrum requires a hyperoval; gram criterion failed with {:?}",
            crit.witness
        )));
    }
    let ys = h.nonzero_affine()?;
    let scale = *ys.iter().min().expect("hyperoval has nonzero points");
    let inv = ctx.k_inv(scale)?;
    let normalized: Vec<KElem> = ys.iter().map(|&y| ctx.k_mul(y, inv)).collect();
    let on_axis: Vec<KElem> = normalized
        .iter()
        .copied()
        .filter(|y| y.re.is_zero())
        .collect();
    let &[axis] = on_axis.as_slice() else {
        return Err(Error::Defect(format!(
            "expected one point on the i-axis, found {}",
            on_axis.len()
        )));
    };
    let mut ordered: Vec<KElem> = normalized
        .iter()
        .copied()
        .filter(|&y| y != KElem::ONE && y != axis)
        .collect();
    ordered.push(KElem::ONE);
    ordered.push(axis);

    let q = ctx.q() as usize;
    let n = ordered.len();
    let m = gram_from_points(ctx, &ordered, 1);
    let symmetric = m.is_symmetric();
    let zero_diagonal = (0..n).all(|i| m[(i, i)].is_zero());
    let trace = m.trace();
    let rank = rank_f(ctx, &m);
    let cp = char_poly(ctx, &m)?;
    let mp = min_poly(ctx, &m)?;

    // cp = x^(q-1) (x^2 + a x + b); mu0 = sqrt(b)
    let mu0 = if cp.len() == q + 2 && cp[..q - 1].iter().all(|c| c.is_zero()) {
        ctx.f_sqrt(cp[q - 1])
    } else {
        FElem::ZERO
    };
    if mu0.is_zero() {
        return Err(Error::Defect(
            "characteristic polynomial has no nonzero root".into(),
        ));
    }
    let char_poly_matches = cp == shape_poly(ctx, q - 1, mu0, 2);
    let min_poly_matches = mp == shape_poly(ctx, 1, mu0, 1);

    let s_last = axis.im;
    let s_inv = ctx.f_inv(s_last)?;
    let mut passed = true;
    for (i, &y) in ordered.iter().take(n - 2).enumerate() {
        let mut v = vec![FElem::ZERO; n];
        v[i] = FElem::ONE;
        v[n - 2] = ctx.bform(KElem::I, y);
        v[n - 1] = ctx.f_mul(ctx.bform(KElem::ONE, y), s_inv);
        passed &= m.mul_vec(ctx, &v).iter().all(|x| x.is_zero());
    }

    Ok(SpectrumReport {
        q: ctx.q(),
        scale,
        ordered_points: ordered,
        symmetric,
        zero_diagonal,
        trace,
        rank,
        kernel_dim: n - rank,
        mu0,
        char_poly: cp,
        min_poly: mp,
        char_poly_matches,
        min_poly_matches,
        eigenvectors_checked: n - 2,
        eigen_checks_passed: passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::{points_from_g, GFunctionTable, ProjPointK};

    fn regular(ctx: &FieldCtx) -> PointSet {
        points_from_g(ctx, &GFunctionTable::constant(ctx, FElem::ONE))
    }

    #[test]
    fn diagonal_and_frobenius() {
        let ctx = FieldCtx::new(3).unwrap();
        let h = regular(&ctx);
        let m1 = gram_matrix(&ctx, &h, 1).unwrap();
        let m2 = gram_matrix(&ctx, &h, 2).unwrap();
        let (n, _) = m1.shape();
        assert_eq!(n, 9);
        for i in 0..n {
            assert!(m1[(i, i)].is_zero());
            for j in 0..n {
                assert_eq!(m2[(i, j)], ctx.f_square(m1[(i, j)]));
            }
        }
        assert!(m1.is_symmetric());
    }

    #[test]
    fn regular_q4_row_sums_and_rank() {
        let ctx = FieldCtx::new(2).unwrap();
        let h = regular(&ctx);
        for k in 1..=4 {
            let m = gram_matrix(&ctx, &h, k).unwrap();
            for i in 0..5 {
                assert_eq!(m.row(i).iter().copied().sum::<FElem>(), FElem::ZERO);
            }
        }
        assert_eq!(rank_f(&ctx, &gram_matrix(&ctx, &h, 1).unwrap()), 2);
        assert!(check_gram_criterion(&ctx, &h).unwrap().verdict);
    }

    #[test]
    fn spectrum_regular() {
        for m in 2..=4 {
            let ctx = FieldCtx::new(m).unwrap();
            let rep = gram_spectrum_report(&ctx, &regular(&ctx)).unwrap();
            assert!(rep.all_pass(), "m={m}: {rep:?}");
            assert_eq!(rep.kernel_dim, ctx.q() as usize - 1);
            // independent route: M = Y J Y^T with Y the (c, s) coordinates,
            // whose nonzero eigenvalue is sum c_i s_i when sum c_i = sum s_i = 0
            let direct: FElem = rep
                .ordered_points
                .iter()
                .map(|y| ctx.f_mul(y.re, y.im))
                .sum();
            assert_eq!(rep.mu0, direct);
        }
    }

    #[test]
    fn errors_and_collisions() {
        let ctx = FieldCtx::new(2).unwrap();
        let no_origin = PointSet::from_affine(ctx.unit_circle().to_vec()).unwrap();
        assert!(matches!(
            gram_matrix(&ctx, &no_origin, 1),
            Err(Error::MissingOrigin)
        ));
        let mut pts = ctx.unit_circle().to_vec();
        pts[1] = KElem::from_f(FElem(2));
        pts.push(KElem::ZERO);
        let h = PointSet::from_affine(pts).unwrap();
        let r = check_gram_criterion(&ctx, &h).unwrap();
        assert!(matches!(
            r.witness,
            Some(Witness::DirectionCollision { .. })
        ));
        let inf =
            PointSet::new(vec![ProjPointK::ORIGIN, ProjPointK::Infinite(KElem::ONE)]).unwrap();
        assert!(matches!(
            check_gram_criterion(&ctx, &inf),
            Err(Error::InfinitePoint(_))
        ));
    }

    #[test]
    fn scaling_preserves_verdict() {
        let ctx = FieldCtx::new(3).unwrap();
        let h = regular(&ctx);
        let mut vals = vec![FElem::ONE; 9];
        vals[3] = FElem(5);
        let bad = points_from_g(&ctx, &GFunctionTable::new(&ctx, vals).unwrap());
        for a in ctx.k_elements().skip(1).step_by(7) {
            assert!(
                check_gram_criterion(&ctx, &h.scale(&ctx, a).unwrap())
                    .unwrap()
                    .verdict
            );
            assert!(
                !check_gram_criterion(&ctx, &bad.scale(&ctx, a).unwrap())
                    .unwrap()
                    .verdict
            );
        }
    }
}
