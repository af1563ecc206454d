//! Polynomials over `K` modulo `x^(q+1) - 1`, interpolation on the unit
//! circle, and the coefficient criteria for g-functions and rho-functions.

use serde::{Deserialize, Serialize};

use crate::criteria::{CriterionReport, ExponentSets, Method, Witness};
use crate::error::{Error, Result};
use crate::field::{FElem, FieldCtx, KElem};
use crate::plane::GFunctionTable;

/// Element of `K[x] / (x^(q+1) - 1)`; `coeffs[i]` multiplies `x^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircPoly {
    coeffs: Vec<KElem>,
}

impl CircPoly {
    pub fn zero(n: usize) -> Self {
        CircPoly {
            coeffs: vec![KElem::ZERO; n],
        }
    }

    pub fn one(n: usize) -> Self {
        Self::monomial(n, 0, KElem::ONE)
    }

    pub fn monomial(n: usize, exp: usize, c: KElem) -> Self {
        let mut p = Self::zero(n);
        p.coeffs[exp % n] = c;
        p
    }

    pub fn from_coeffs(coeffs: Vec<KElem>) -> Self {
        assert!(!coeffs.is_empty(), "ring modulus has positive degree");
        CircPoly { coeffs }
    }

    /// Wraps arbitrary-length coefficients modulo `x^n - 1`.
    pub fn reduce(n: usize, coeffs: &[KElem]) -> Self {
        let mut p = Self::zero(n);
        for (i, &c) in coeffs.iter().enumerate() {
            p.coeffs[i % n] += c;
        }
        p
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[KElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> KElem {
        self.coeffs[i % self.coeffs.len()]
    }

    pub fn add(&self, other: &CircPoly) -> CircPoly {
        CircPoly {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(&a, &b)| a + b)
                .collect(),
        }
    }

    pub fn eval(&self, ctx: &FieldCtx, x: KElem) -> KElem {
        self.coeffs
            .iter()
            .rev()
            .fold(KElem::ZERO, |acc, &c| ctx.k_mul(acc, x) + c)
    }
}

/// Cyclic convolution.
pub fn circ_mul(ctx: &FieldCtx, a: &CircPoly, b: &CircPoly) -> CircPoly {
    let n = a.len();
    assert_eq!(n, b.len(), "operands live in the same ring");
    let mut out = vec![KElem::ZERO; n];
    for (i, &x) in a.coeffs.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, &y) in b.coeffs.iter().enumerate() {
            if !y.is_zero() {
                out[(i + j) % n] += ctx.k_mul(x, y);
            }
        }
    }
    CircPoly { coeffs: out }
}

pub fn circ_pow(ctx: &FieldCtx, a: &CircPoly, mut e: u64) -> CircPoly {
    let mut acc = CircPoly::one(a.len());
    let mut base = a.clone();
    while e > 0 {
        if e & 1 == 1 {
            acc = circ_mul(ctx, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = circ_mul(ctx, &base, &base);
        }
    }
    acc
}

/// The unique polynomial of degree at most `q` taking `values[j]` at the
/// `j`-th unit circle point. Coefficient `i` is `sum_u u^(-i) h(u)`.
pub fn interpolate_on_s(ctx: &FieldCtx, values: &[KElem]) -> CircPoly {
    let circle = ctx.unit_circle();
    assert_eq!(
        values.len(),
        circle.len(),
        "one value per unit circle point"
    );
    let n = circle.len();
    let mut coeffs = vec![KElem::ZERO; n];
    for (&u, &h) in circle.iter().zip(values) {
        if h.is_zero() {
            continue;
        }
        // u^(-1) = conj(u) on the unit circle
        let u_inv = ctx.conj(u);
        let mut term = h;
        for c in coeffs.iter_mut() {
            *c += term;
            term = ctx.k_mul(term, u_inv);
        }
    }
    CircPoly { coeffs }
}

pub fn evaluate_on_s(ctx: &FieldCtx, p: &CircPoly) -> Vec<KElem> {
    ctx.unit_circle().iter().map(|&u| p.eval(ctx, u)).collect()
}

/// `prod_(u in S) (x - u)` expanded by multiplying in one factor at a time;
/// constant term first.
pub fn unit_circle_product(ctx: &FieldCtx) -> Vec<KElem> {
    let mut poly = vec![KElem::ONE];
    for &u in ctx.unit_circle() {
        let mut next = vec![KElem::ZERO; poly.len() + 1];
        for (i, &c) in poly.iter().enumerate() {
            next[i + 1] += c;
            next[i] += ctx.k_mul(c, u);
        }
        poly = next;
    }
    poly
}

/// Checks that the elementary symmetric polynomials `e_1..e_q` of the unit
/// circle vanish and `e_(q+1) = 1`, i.e. the product is `x^(q+1) + 1`.
pub fn elementary_symmetric_check(ctx: &FieldCtx) -> bool {
    let p = unit_circle_product(ctx);
    let n = p.len();
    p.iter().enumerate().all(|(i, &c)| {
        if i == 0 || i == n - 1 {
            c == KElem::ONE
        } else {
            c.is_zero()
        }
    })
}

/// Coefficients `a_0..a_q` of a g-function, with `a_0` in `F` and
/// `a_(q+1-i) = a_i^q`.
///
/// Deserialization does not re-check symmetry; pass the coefficients through
/// [`GCoeffs::new`] when they come from outside.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct GCoeffs {
    a: Vec<KElem>,
}

impl GCoeffs {
    pub fn new(ctx: &FieldCtx, a: Vec<KElem>) -> Result<Self> {
        let n = ctx.unit_circle().len();
        if a.len() != n {
            return Err(Error::CoeffLength {
                expected: n,
                found: a.len(),
            });
        }
        if !a[0].in_base_field() {
            return Err(Error::SymmetryViolation(0));
        }
        let q = n - 1;
        for i in 1..=q / 2 {
            if a[q + 1 - i] != ctx.conj(a[i]) {
                return Err(Error::SymmetryViolation(i));
            }
        }
        Ok(GCoeffs { a })
    }

    /// Builds the symmetric vector from `a_0` and the lower half
    /// `a_1..a_(q/2)`.
    pub fn from_lower_half(ctx: &FieldCtx, a0: FElem, lower: &[KElem]) -> Result<Self> {
        let q = ctx.q() as usize;
        if lower.len() != q / 2 {
            return Err(Error::CoeffLength {
                expected: q / 2,
                found: lower.len(),
            });
        }
        let mut a = vec![KElem::ZERO; q + 1];
        a[0] = KElem::from_f(a0);
        for (i, &c) in lower.iter().enumerate() {
            a[i + 1] = c;
            a[q - i] = ctx.conj(c);
        }
        Ok(GCoeffs { a })
    }

    pub fn coeffs(&self) -> &[KElem] {
        &self.a
    }

    pub fn as_circ(&self) -> CircPoly {
        CircPoly::from_coeffs(self.a.clone())
    }
}

pub fn g_table_to_coeffs(ctx: &FieldCtx, g: &GFunctionTable) -> Result<GCoeffs> {
    let values: Vec<KElem> = g.values().iter().map(|&v| KElem::from_f(v)).collect();
    GCoeffs::new(ctx, interpolate_on_s(ctx, &values).coeffs)
}

pub fn g_coeffs_to_table(ctx: &FieldCtx, g: &GCoeffs) -> Result<GFunctionTable> {
    let values = evaluate_on_s(ctx, &g.as_circ())
        .into_iter()
        .enumerate()
        .map(|(j, v)| {
            if v.in_base_field() {
                Ok(v.re)
            } else {
                Err(Error::SymmetryViolation(j))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    GFunctionTable::new(ctx, values)
}

/// Scans the pairs `(i, k)` of `M` against `powers(k)`, testing the
/// coefficient of `x^(k-2i)` and cross-checking that it is conjugate to the
/// coefficient of `x^(2i-k+q+1)`.
fn scan_pairs(
    ctx: &FieldCtx,
    exps: &ExponentSets,
    method: Method,
    mut power_for_k: impl FnMut(u32) -> CircPoly,
) -> Result<CriterionReport> {
    let n = ctx.unit_circle().len();
    for (k, is) in exps.pairs_by_k() {
        let p = power_for_k(k);
        for i in is {
            let low = (k - 2 * i) as usize;
            let c = p.coeff(low);
            if p.coeff(n - low) != ctx.conj(c) {
                return Err(Error::Defect(format!(
                    "coefficients of x^{low} and x^{} are not conjugate",
                    n - low
                )));
            }
            if !c.is_zero() {
                return Ok(CriterionReport::fail(method, Witness::CoeffPair { i, k }));
            }
        }
    }
    Ok(CriterionReport::pass(method))
}

/// For every `(i, k)` in `M`, the coefficient of `x^(k-2i)` in
/// `g^(q-1-k) mod x^(q+1) - 1` vanishes.
pub fn check_coeff_criterion(
    ctx: &FieldCtx,
    g: &GCoeffs,
    exps: &ExponentSets,
) -> Result<CriterionReport> {
    let table = g_coeffs_to_table(ctx, g)?;
    if let Some(j) = table.first_zero() {
        return Err(Error::ZeroValue(j));
    }
    let base = g.as_circ();
    let q = u64::from(ctx.q());
    scan_pairs(ctx, exps, Method::Coefficient, |k| {
        circ_pow(ctx, &base, q - 1 - u64::from(k))
    })
}

/// Same test on `rho = 1/g`, using `rho^k` in place of `g^(q-1-k)`.
pub fn check_coeff_criterion_rho(
    ctx: &FieldCtx,
    rho: &GFunctionTable,
    exps: &ExponentSets,
) -> Result<CriterionReport> {
    if let Some(j) = rho.first_zero() {
        return Err(Error::ZeroValue(j));
    }
    let values: Vec<KElem> = rho.values().iter().map(|&v| KElem::from_f(v)).collect();
    let base = interpolate_on_s(ctx, &values);
    scan_pairs(ctx, exps, Method::CoefficientRho, |k| {
        circ_pow(ctx, &base, u64::from(k))
    })
}

/// `a_t = 0` for `1 <= t <= q` with `t ≡ 2, 3 (mod 4)`; necessary for a hyperoval.
pub fn corollary_support_filter(g: &GCoeffs) -> bool {
    g.a.iter()
        .enumerate()
        .skip(1)
        .filter(|(t, _)| t % 4 == 2 || t % 4 == 3)
        .all(|(_, c)| c.is_zero())
}
