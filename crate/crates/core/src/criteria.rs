//! Power sums, Vandermonde tests, the exponent sets `M`, `D` and the coset
//! representatives of `D`, and the hyperoval verifiers that work directly on
//! point sets or g-tables.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FElem, FieldCtx, KElem};
use crate::plane::{
    all_lines, extract_g, normalize_g, points_from_g, translate, GFunctionTable, LineK, PointSet,
    ProjPointK,
};
use crate::{gpoly, gram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Geometric,
    EvenSolution,
    PowerSumD,
    BracketPowerSum,
    Coefficient,
    CoefficientRho,
    Gram,
    Vandermonde,
    SuperVandermonde,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Method::Geometric => "geometric",
            Method::EvenSolution => "even_solution",
            Method::PowerSumD => "power_sum_d",
            Method::BracketPowerSum => "bracket_power_sum",
            Method::Coefficient => "coefficient",
            Method::CoefficientRho => "coefficient_rho",
            Method::Gram => "gram",
            Method::Vandermonde => "vandermonde",
            Method::SuperVandermonde => "super_vandermonde",
        };
        f.write_str(s)
    }
}

/// Why a verifier said no.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Witness {
    /// `pi_d != 0` for an exponent of the reduced exponent set.
    Exponent { d: u64 },
    /// First `k` with `pi_k != 0` in a Vandermonde test.
    PowerIndex { k: u64 },
    /// A line meeting the set in a number of points other than 0 or 2.
    Line { line: LineK, count: usize },
    /// `g(u) + <u, b> = 0` has an odd number of solutions.
    OddSolutions { b: KElem, count: usize },
    /// `sum_u <v, u/g(u)>^k != 0`.
    BracketSum { v_index: usize, k: u32 },
    /// Nonzero coefficient of `x^(k-2i)` for the pair `(i, k)`.
    CoeffPair { i: u32, k: u32 },
    /// Row `row` of the `k`-th Gram matrix has nonzero sum.
    GramRow { row: usize, k: u32 },
    /// Two points on one line through the origin.
    DirectionCollision {
        first: ProjPointK,
        second: ProjPointK,
    },
    /// No `c` makes `g + <c, .>` nonvanishing, so the set has no external
    /// line off the origin.
    NotNormalizable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub method: Method,
    pub verdict: bool,
    pub witness: Option<Witness>,
}

impl CriterionReport {
    pub fn pass(method: Method) -> Self {
        CriterionReport {
            method,
            verdict: true,
            witness: None,
        }
    }

    pub fn fail(method: Method, witness: Witness) -> Self {
        CriterionReport {
            method,
            verdict: false,
            witness: Some(witness),
        }
    }

    fn from_witness(method: Method, witness: Option<Witness>) -> Self {
        match witness {
            Some(w) => Self::fail(method, w),
            None => Self::pass(method),
        }
    }
}

/// Verdicts of every verifier on one input.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsensusReport {
    pub q: u32,
    /// Translation applied to bring the origin into a point set.
    pub translation: Option<KElem>,
    /// The `c` used to make the g-function nonvanishing.
    pub normalization: Option<KElem>,
    pub reports: Vec<CriterionReport>,
    pub unanimous: bool,
    pub verdict: bool,
}

impl ConsensusReport {
    fn assemble(
        q: u32,
        translation: Option<KElem>,
        normalization: Option<KElem>,
        reports: Vec<CriterionReport>,
    ) -> Result<Self> {
        let verdict = reports.first().map(|r| r.verdict).unwrap_or(false);
        let unanimous = reports.iter().all(|r| r.verdict == verdict);
        let report = ConsensusReport {
            q,
            translation,
            normalization,
            reports,
            unanimous,
            verdict,
        };
        if unanimous {
            Ok(report)
        } else {
            Err(Error::VerifierDisagreement(Box::new(report)))
        }
    }

    pub fn report(&self, method: Method) -> Option<&CriterionReport> {
        self.reports.iter().find(|r| r.method == method)
    }
}

/// `b ⪯ c`: every binary digit of `b` is at most the matching digit of `c`.
pub fn dominated(b: u64, c: u64) -> bool {
    b & c == b
}

pub fn log2_exact(q: u64) -> Result<u32> {
    if q.is_power_of_two() && (4..=1 << 16).contains(&q) {
        Ok(q.trailing_zeros())
    } else {
        Err(Error::NotPowerOfTwo(q))
    }
}

/// Smallest element of the 2-cyclotomic coset of `d` modulo `2^bits - 1`.
/// Doubling modulo `2^bits - 1` rotates the `bits`-bit word left by one.
pub fn coset_min(d: u64, bits: u32) -> u64 {
    coset(d, bits).into_iter().min().unwrap_or(d)
}

pub fn coset(d: u64, bits: u32) -> BTreeSet<u64> {
    let mask = (1u64 << bits) - 1;
    let mut x = d % mask;
    let mut out = BTreeSet::new();
    for _ in 0..bits {
        out.insert(x);
        x = ((x << 1) | (x >> (bits - 1))) & mask;
    }
    out
}

/// The index pairs `M`, exponents `D` and coset representatives of `D`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentSets {
    pub q: u64,
    /// Pairs `(i, k)` with `1 <= k <= q-2`, `0 <= i <= (k-1)/2` and `i ⪯ k`.
    pub m_pairs: Vec<(u32, u32)>,
    /// `{iq + k - i}` over `m_pairs`, ascending.
    pub d: Vec<u64>,
    /// Minimal coset representatives of `d` modulo `q^2 - 1`, ascending.
    pub d_cal: Vec<u64>,
}

impl ExponentSets {
    pub fn compute(q: u64) -> Result<Self> {
        let m = log2_exact(q)?;
        let mut m_pairs = Vec::new();
        for k in 1..=q.saturating_sub(2) {
            for i in 0..=(k - 1) / 2 {
                if dominated(i, k) {
                    m_pairs.push((i as u32, k as u32));
                }
            }
        }
        let d: BTreeSet<u64> = m_pairs
            .iter()
            .map(|&(i, k)| u64::from(i) * q + u64::from(k) - u64::from(i))
            .collect();
        let d_cal: BTreeSet<u64> = d.iter().map(|&x| coset_min(x, 2 * m)).collect();
        Ok(ExponentSets {
            q,
            m_pairs,
            d: d.into_iter().collect(),
            d_cal: d_cal.into_iter().collect(),
        })
    }

    pub fn for_field(ctx: &FieldCtx) -> Self {
        Self::compute(u64::from(ctx.q())).expect("field order is a supported power of two")
    }

    /// Pairs grouped by `k`, ascending in both coordinates.
    pub fn pairs_by_k(&self) -> Vec<(u32, Vec<u32>)> {
        let mut out: Vec<(u32, Vec<u32>)> = Vec::new();
        for &(i, k) in &self.m_pairs {
            match out.last_mut() {
                Some((kk, is)) if *kk == k => is.push(i),
                _ => out.push((k, vec![i])),
            }
        }
        out
    }

    /// Row in the `q, elements, cardinality` layout.
    pub fn csv_row(&self) -> String {
        format!("{},\"{}\",{}", self.q, self.joined(","), self.d_cal.len())
    }

    pub fn latex_row(&self) -> String {
        format!(
            "{} & {} & {} \\\\",
            self.q,
            self.joined(", "),
            self.d_cal.len()
        )
    }

    fn joined(&self, sep: &str) -> String {
        self.d_cal
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(sep)
    }
}

/// `pi_k(T) = sum y^k`.
pub fn power_sum(ctx: &FieldCtx, points: &[KElem], k: u64) -> KElem {
    points.iter().map(|&y| ctx.k_pow(y, k)).sum()
}

fn check_distinct(points: &[KElem]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for &p in points {
        if !seen.insert(p) {
            return Err(Error::DuplicatePoint(ProjPointK::Affine(p)));
        }
    }
    Ok(())
}

/// First `k` in `1..=upto` with `pi_k != 0`.
fn first_nonzero_power_sum(ctx: &FieldCtx, points: &[KElem], upto: u64) -> Option<u64> {
    let mut cur = points.to_vec();
    for k in 1..=upto {
        if cur.iter().copied().sum::<KElem>() != KElem::ZERO {
            return Some(k);
        }
        for (c, &y) in cur.iter_mut().zip(points) {
            *c = ctx.k_mul(*c, y);
        }
    }
    None
}

fn vandermonde_pre(ctx: &FieldCtx, t: &[KElem]) -> Result<()> {
    let n = t.len() as u64;
    if n < 2 || n >= u64::from(ctx.q()) * u64::from(ctx.q()) {
        return Err(Error::WrongCardinality {
            expected: 2,
            found: t.len(),
        });
    }
    check_distinct(t)
}

/// `pi_k(T) = 0` for `1 <= k <= |T| - 2`.
pub fn is_vandermonde(ctx: &FieldCtx, t: &[KElem]) -> Result<CriterionReport> {
    vandermonde_pre(ctx, t)?;
    let w = first_nonzero_power_sum(ctx, t, t.len() as u64 - 2);
    Ok(CriterionReport::from_witness(
        Method::Vandermonde,
        w.map(|k| Witness::PowerIndex { k }),
    ))
}

/// Vandermonde and additionally `pi_(|T|-1)(T) = 0`.
pub fn is_super_vandermonde(ctx: &FieldCtx, t: &[KElem]) -> Result<CriterionReport> {
    vandermonde_pre(ctx, t)?;
    let w = first_nonzero_power_sum(ctx, t, t.len() as u64 - 1);
    Ok(CriterionReport::from_witness(
        Method::SuperVandermonde,
        w.map(|k| Witness::PowerIndex { k }),
    ))
}

/// Nonzero points of a set of the form `{u/g(u)} ∪ {0}` with `g` nonvanishing.
fn g_form_points(ctx: &FieldCtx, h: &PointSet) -> Result<Vec<KElem>> {
    extract_g(ctx, h)?;
    h.nonzero_affine()
}

/// Hyperoval test through `pi_d = 0` for the coset representatives `d`,
/// smallest first.
pub fn check_power_sum(
    ctx: &FieldCtx,
    h: &PointSet,
    exps: &ExponentSets,
) -> Result<CriterionReport> {
    let ys = g_form_points(ctx, h)?;
    let bad = exps
        .d_cal
        .iter()
        .copied()
        .find(|&d| power_sum(ctx, &ys, d) != KElem::ZERO);
    Ok(CriterionReport::from_witness(
        Method::PowerSumD,
        bad.map(|d| Witness::Exponent { d }),
    ))
}

fn require_nonvanishing(g: &GFunctionTable) -> Result<()> {
    match g.first_zero() {
        Some(j) => Err(Error::ZeroValue(j)),
        None => Ok(()),
    }
}

/// Every `b` in `K` gives an even number of `u` with `g(u) + <u, b> = 0`.
pub fn check_even_solution(ctx: &FieldCtx, g: &GFunctionTable) -> Result<CriterionReport> {
    require_nonvanishing(g)?;
    let circle = ctx.unit_circle();
    let bad = ctx.k_elements().find_map(|b| {
        let count = circle
            .iter()
            .zip(g.values())
            .filter(|(&u, &gv)| gv == ctx.bform(u, b))
            .count();
        (count % 2 == 1).then_some(Witness::OddSolutions { b, count })
    });
    Ok(CriterionReport::from_witness(Method::EvenSolution, bad))
}

/// Intersection numbers with every line of the plane, in [`all_lines`] order.
pub fn line_counts(ctx: &FieldCtx, h: &PointSet) -> Vec<(LineK, usize)> {
    let q = ctx.q() as usize;
    let circle = ctx.unit_circle();
    let mut counts = vec![0usize; (q + 1) * q];
    let mut at_infinity = 0usize;
    for &p in h.iter() {
        match p {
            ProjPointK::Affine(z) => {
                for (vi, &v) in circle.iter().enumerate() {
                    counts[vi * q + ctx.bform(v, z).0 as usize] += 1;
                }
            }
            ProjPointK::Infinite(u) => {
                at_infinity += 1;
                let vi = ctx.unit_index(u).expect("direction on the unit circle");
                for c in &mut counts[vi * q..(vi + 1) * q] {
                    *c += 1;
                }
            }
        }
    }
    all_lines(ctx)
        .into_iter()
        .zip(counts.into_iter().chain([at_infinity]))
        .collect()
}

/// A set of `q + 2` points is a hyperoval iff every line meets it evenly,
/// which for that size means in 0 or 2 points.
pub fn check_geometric(ctx: &FieldCtx, h: &PointSet) -> Result<CriterionReport> {
    let expected = ctx.q() as usize + 2;
    if h.len() != expected {
        return Err(Error::WrongCardinality {
            expected,
            found: h.len(),
        });
    }
    let bad = line_counts(ctx, h)
        .into_iter()
        .find(|&(_, c)| c != 0 && c != 2)
        .map(|(line, count)| Witness::Line { line, count });
    Ok(CriterionReport::from_witness(Method::Geometric, bad))
}

/// `sum_u <v, u/g(u)>^k = 0` for every `v` on the unit circle and `1 <= k <= q`.
pub fn check_bracket_power_sum(ctx: &FieldCtx, g: &GFunctionTable) -> Result<CriterionReport> {
    require_nonvanishing(g)?;
    let circle = ctx.unit_circle();
    let ys: Vec<KElem> = circle
        .iter()
        .zip(g.values())
        .map(|(&u, &gv)| ctx.k_scale(ctx.f_inv(gv).expect("nonvanishing"), u))
        .collect();
    for (vi, &v) in circle.iter().enumerate() {
        let base: Vec<FElem> = ys.iter().map(|&y| ctx.bform(v, y)).collect();
        let mut cur = base.clone();
        for k in 1..=ctx.q() {
            if cur.iter().copied().sum::<FElem>() != FElem::ZERO {
                return Ok(CriterionReport::fail(
                    Method::BracketPowerSum,
                    Witness::BracketSum { v_index: vi, k },
                ));
            }
            for (c, &b) in cur.iter_mut().zip(&base) {
                *c = ctx.f_mul(*c, b);
            }
        }
    }
    Ok(CriterionReport::pass(Method::BracketPowerSum))
}

/// Runs every verifier on `g`. The geometric test sees the original point
/// set; the others see the normalized nonvanishing table. Disagreement is
/// returned as [`Error::VerifierDisagreement`].
pub fn verify_all(ctx: &FieldCtx, g: &GFunctionTable) -> Result<ConsensusReport> {
    verify_table(ctx, g, None)
}

fn verify_table(
    ctx: &FieldCtx,
    g: &GFunctionTable,
    translation: Option<KElem>,
) -> Result<ConsensusReport> {
    let exps = ExponentSets::for_field(ctx);
    let mut reports = vec![check_geometric(ctx, &points_from_g(ctx, g))?];
    let normalization = match normalize_g(ctx, g) {
        Ok((gn, c)) => {
            reports.extend(nonvanishing_reports(ctx, &gn, &exps)?);
            Some(c)
        }
        Err(Error::NoNormalization) => {
            reports.extend(
                NONVANISHING_METHODS
                    .iter()
                    .map(|&m| CriterionReport::fail(m, Witness::NotNormalizable)),
            );
            None
        }
        Err(e) => return Err(e),
    };
    ConsensusReport::assemble(ctx.q(), translation, normalization, reports)
}

const NONVANISHING_METHODS: [Method; 6] = [
    Method::EvenSolution,
    Method::PowerSumD,
    Method::BracketPowerSum,
    Method::Coefficient,
    Method::CoefficientRho,
    Method::Gram,
];

fn nonvanishing_reports(
    ctx: &FieldCtx,
    g: &GFunctionTable,
    exps: &ExponentSets,
) -> Result<Vec<CriterionReport>> {
    let h = points_from_g(ctx, g);
    let coeffs = gpoly::g_table_to_coeffs(ctx, g)?;
    let rho = g.reciprocal(ctx)?;
    Ok(vec![
        check_even_solution(ctx, g)?,
        check_power_sum(ctx, &h, exps)?,
        check_bracket_power_sum(ctx, g)?,
        gpoly::check_coeff_criterion(ctx, &coeffs, exps)?,
        gpoly::check_coeff_criterion_rho(ctx, &rho, exps)?,
        gram::check_gram_criterion(ctx, &h)?,
    ])
}

/// Consensus for an arbitrary set of `q + 2` points. Sets without the origin
/// are translated by their first affine point; a shared direction from the
/// origin is reported by every non-geometric method.
pub fn verify_point_set(ctx: &FieldCtx, h: &PointSet) -> Result<ConsensusReport> {
    let geometric = check_geometric(ctx, h)?;
    let (h0, translation) = if h.contains_origin() {
        (h.clone(), None)
    } else {
        let b = h
            .iter()
            .find_map(|p| p.affine())
            .ok_or(Error::MissingOrigin)?;
        (translate(h, b, false)?, Some(b))
    };
    match extract_g(ctx, &h0) {
        Ok(g) => {
            // the translated set has the same line counts; report the original
            let mut rep = verify_table(ctx, &g, translation)?;
            rep.reports[0] = geometric;
            ConsensusReport::assemble(ctx.q(), rep.translation, rep.normalization, rep.reports)
        }
        Err(Error::DirectionCollision { first, second }) => {
            let mut reports = vec![geometric];
            reports.extend(
                NONVANISHING_METHODS.iter().map(|&m| {
                    CriterionReport::fail(m, Witness::DirectionCollision { first, second })
                }),
            );
            ConsensusReport::assemble(ctx.q(), translation, None, reports)
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane::GFunctionTable;

    #[test]
    fn exponent_sets_small() {
        let e4 = ExponentSets::compute(4).unwrap();
        assert_eq!(e4.m_pairs, vec![(0, 1), (0, 2)]);
        assert_eq!(e4.d, vec![1, 2]);
        assert_eq!(e4.d_cal, vec![1]);
        assert_eq!(ExponentSets::compute(8).unwrap().d_cal, vec![1, 3, 5]);
        assert_eq!(
            ExponentSets::compute(16).unwrap().d_cal,
            vec![1, 3, 5, 7, 9, 11, 13, 37]
        );
        assert!(ExponentSets::compute(12).is_err());
        assert!(ExponentSets::compute(2).is_err());
    }

    #[test]
    fn coset_of_37() {
        let c: Vec<u64> = coset(37, 8).into_iter().collect();
        assert_eq!(c, vec![37, 41, 73, 74, 82, 146, 148, 164]);
    }

    #[test]
    fn d_cal_is_canonical() {
        for q in [4u64, 8, 16, 32, 64] {
            let e = ExponentSets::compute(q).unwrap();
            let bits = 2 * q.trailing_zeros();
            let modulus = q * q - 1;
            // oracle: orbit under repeated doubling by plain modular arithmetic
            let orbit_min = |d: u64| {
                let mut x = d;
                let mut best = d;
                for _ in 0..bits {
                    x = x * 2 % modulus;
                    best = best.min(x);
                }
                best
            };
            for &d in &e.d {
                let reps: Vec<_> = e.d_cal.iter().filter(|&&r| orbit_min(d) == r).collect();
                assert_eq!(reps.len(), 1, "q={q} d={d}");
            }
            for &r in &e.d_cal {
                assert_eq!(orbit_min(r), r);
            }
            for &(i, k) in &e.m_pairs {
                assert!(dominated(u64::from(i), u64::from(k)));
                assert!(k >= 1 && u64::from(k) <= q - 2 && i <= (k - 1) / 2);
            }
        }
    }

    #[test]
    fn unit_circle_power_sums_vanish() {
        let ctx = FieldCtx::new(4).unwrap();
        for k in 1..=16 {
            assert_eq!(power_sum(&ctx, ctx.unit_circle(), k), KElem::ZERO);
        }
        let a = KElem::new(FElem(3), FElem(7));
        assert_eq!(power_sum(&ctx, &[a], 5), ctx.k_pow(a, 5));
    }

    #[test]
    fn unit_circle_is_super_vandermonde() {
        for m in 2..=4 {
            let ctx = FieldCtx::new(m).unwrap();
            assert!(
                is_super_vandermonde(&ctx, ctx.unit_circle())
                    .unwrap()
                    .verdict
            );
        }
    }

    #[test]
    fn vandermonde_preconditions() {
        let ctx = FieldCtx::new(3).unwrap();
        assert!(is_vandermonde(&ctx, &[KElem::ONE]).is_err());
        assert!(matches!(
            is_vandermonde(&ctx, &[KElem::ONE, KElem::ONE, KElem::ZERO]),
            Err(Error::DuplicatePoint(_))
        ));
        let r = is_vandermonde(&ctx, &[KElem::ONE, KElem::I, KElem::ZERO]).unwrap();
        assert_eq!(r.witness, Some(Witness::PowerIndex { k: 1 }));
    }

    #[test]
    fn geometric_regular_and_wrong_size() {
        let ctx = FieldCtx::new(3).unwrap();
        let h = points_from_g(&ctx, &GFunctionTable::constant(&ctx, FElem::ONE));
        assert!(check_geometric(&ctx, &h).unwrap().verdict);
        let small = PointSet::from_affine([KElem::ZERO]).unwrap();
        assert!(matches!(
            check_geometric(&ctx, &small),
            Err(Error::WrongCardinality {
                expected: 10,
                found: 1
            })
        ));
    }

    #[test]
    fn even_solution_regular() {
        let ctx = FieldCtx::new(3).unwrap();
        let one = GFunctionTable::constant(&ctx, FElem::ONE);
        // b = 0 counts the zeros of g
        let at_zero = ctx
            .unit_circle()
            .iter()
            .zip(one.values())
            .filter(|(&u, &gv)| gv == ctx.bform(u, KElem::ZERO))
            .count();
        assert_eq!(at_zero, 0);
        assert!(check_even_solution(&ctx, &one).unwrap().verdict);
        let mut vals = vec![FElem::ONE; 9];
        vals[2] = FElem::ZERO;
        let g = GFunctionTable::new(&ctx, vals).unwrap();
        assert!(matches!(
            check_even_solution(&ctx, &g),
            Err(Error::ZeroValue(2))
        ));
    }

    #[test]
    fn bracket_regular_q4() {
        let ctx = FieldCtx::new(2).unwrap();
        let one = GFunctionTable::constant(&ctx, FElem::ONE);
        assert!(check_bracket_power_sum(&ctx, &one).unwrap().verdict);
    }

    #[test]
    fn hyperoval_bracket_values_pair_up() {
        // each nonzero value of <v, u/g(u)> occurs an even number of times
        let ctx = FieldCtx::new(3).unwrap();
        let one = GFunctionTable::constant(&ctx, FElem::ONE);
        let h = points_from_g(&ctx, &one);
        let ys = h.nonzero_affine().unwrap();
        for &v in ctx.unit_circle() {
            for mu in ctx.f_elements().skip(1) {
                let c = ys.iter().filter(|&&y| ctx.bform(v, y) == mu).count();
                assert_eq!(c % 2, 0);
            }
        }
    }

    #[test]
    fn verify_all_regular() {
        for m in 2..=4 {
            let ctx = FieldCtx::new(m).unwrap();
            let rep = verify_all(&ctx, &GFunctionTable::constant(&ctx, FElem::ONE)).unwrap();
            assert!(rep.unanimous && rep.verdict, "m={m}: {rep:?}");
            assert_eq!(rep.reports.len(), 7);
            assert_eq!(rep.normalization, Some(KElem::ZERO));
        }
    }

    #[test]
    fn verify_all_unnormalizable() {
        let ctx = FieldCtx::new(2).unwrap();
        let rep = verify_all(&ctx, &GFunctionTable::constant(&ctx, FElem::ZERO)).unwrap();
        assert!(!rep.verdict && rep.unanimous);
        assert_eq!(
            rep.report(Method::Gram).unwrap().witness,
            Some(Witness::NotNormalizable)
        );
    }

    #[test]
    fn verify_point_set_translates() {
        let ctx = FieldCtx::new(3).unwrap();
        let h = points_from_g(&ctx, &GFunctionTable::constant(&ctx, FElem::ONE));
        let b = KElem::new(FElem(5), FElem(1));
        let moved = translate(&h, b, true).unwrap();
        let rep = verify_point_set(&ctx, &moved).unwrap();
        assert!(rep.verdict);
        assert!(rep.translation.is_some());
    }

    #[test]
    fn csv_and_latex_rows() {
        let e = ExponentSets::compute(8).unwrap();
        assert_eq!(e.csv_row(), "8,\"1,3,5\",3");
        assert_eq!(e.latex_row(), "8 & 1, 3, 5 & 3 \\\\");
    }
}
