//! The two coordinate models of `PG(2,q)`.
//!
//! In the homogeneous model points are triples `(x:y:z)` over `F`. In the
//! `K` model the affine points are the elements of `K` and the points at
//! infinity are the directions `u` on the unit circle; lines are classes
//! `[alpha:beta]` with `alpha` in `K`, `beta` in `F`, and `x` lies on the
//! line when `<alpha, x> + beta z = 0`.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FElem, FieldCtx, KElem};

/// A point of `PG(2,q)` in the `K` model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProjPointK {
    Affine(KElem),
    /// Point at infinity in direction `u`, with `u` on the unit circle.
    Infinite(KElem),
}

impl ProjPointK {
    pub const ORIGIN: ProjPointK = ProjPointK::Affine(KElem::ZERO);

    pub fn is_origin(self) -> bool {
        self == Self::ORIGIN
    }

    pub fn affine(self) -> Option<KElem> {
        match self {
            ProjPointK::Affine(z) => Some(z),
            ProjPointK::Infinite(_) => None,
        }
    }

    /// Stable integer encoding, used for digests.
    pub fn encode(self, m: u32) -> u64 {
        match self {
            ProjPointK::Affine(z) => z.encode(m),
            ProjPointK::Infinite(u) => (1u64 << (2 * m)) | u.encode(m),
        }
    }

    /// Direction from the origin: the unit part of the polar form for
    /// affine points, the stored direction for points at infinity.
    pub fn direction(self, ctx: &FieldCtx) -> Option<KElem> {
        match self {
            ProjPointK::Affine(z) if z.is_zero() => None,
            ProjPointK::Affine(z) => ctx.polar(z).ok().map(|(_, u)| u),
            ProjPointK::Infinite(u) => Some(u),
        }
    }
}

/// A line `[alpha:beta]`, stored canonically: `alpha` on the unit circle
/// when nonzero, otherwise `beta = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LineK {
    pub alpha: KElem,
    pub beta: FElem,
}

impl LineK {
    /// Canonical representative of `[alpha:beta]`; `None` for `[0:0]`.
    pub fn new(ctx: &FieldCtx, alpha: KElem, beta: FElem) -> Option<LineK> {
        if alpha.is_zero() {
            return (!beta.is_zero()).then_some(LineK::AT_INFINITY);
        }
        let (lambda, u) = ctx.polar(alpha).ok()?;
        let inv = ctx.f_inv(lambda).ok()?;
        Some(LineK {
            alpha: u,
            beta: ctx.f_mul(beta, inv),
        })
    }

    pub const AT_INFINITY: LineK = LineK {
        alpha: KElem::ZERO,
        beta: FElem::ONE,
    };

    /// The affine line `<v, x> + mu = 0`.
    pub fn affine(v: KElem, mu: FElem) -> LineK {
        LineK { alpha: v, beta: mu }
    }
}

pub fn incident(ctx: &FieldCtx, p: ProjPointK, l: LineK) -> bool {
    match p {
        ProjPointK::Affine(z) => ctx.bform(l.alpha, z) + l.beta == FElem::ZERO,
        ProjPointK::Infinite(u) => ctx.bform(l.alpha, u).is_zero(),
    }
}

/// All `q^2 + q + 1` lines: `L(v, mu)` for `v` in unit circle order and
/// `mu` ascending, then the line at infinity.
pub fn all_lines(ctx: &FieldCtx) -> Vec<LineK> {
    let mut out = Vec::with_capacity((ctx.q() as usize + 1) * ctx.q() as usize + 1);
    for &v in ctx.unit_circle() {
        for mu in ctx.f_elements() {
            out.push(LineK::affine(v, mu));
        }
    }
    out.push(LineK::AT_INFINITY);
    out
}

/// A point `(x:y:z)` of the homogeneous model, scaled so that its last
/// nonzero coordinate is 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProjPointH {
    pub x: FElem,
    pub y: FElem,
    pub z: FElem,
}

impl ProjPointH {
    pub fn new(x: FElem, y: FElem, z: FElem, ctx: &FieldCtx) -> Option<ProjPointH> {
        let last = [z, y, x].into_iter().find(|c| !c.is_zero())?;
        let inv = ctx.f_inv(last).ok()?;
        Some(ProjPointH {
            x: ctx.f_mul(x, inv),
            y: ctx.f_mul(y, inv),
            z: ctx.f_mul(z, inv),
        })
    }

    pub fn coords(self) -> [FElem; 3] {
        [self.x, self.y, self.z]
    }
}

/// Collinearity of three homogeneous points: the 3x3 determinant vanishes.
pub fn h_collinear(ctx: &FieldCtx, a: ProjPointH, b: ProjPointH, c: ProjPointH) -> bool {
    let m = |x, y| ctx.f_mul(x, y);
    let det = m(a.x, m(b.y, c.z) + m(b.z, c.y))
        + m(a.y, m(b.x, c.z) + m(b.z, c.x))
        + m(a.z, m(b.x, c.y) + m(b.y, c.x));
    det.is_zero()
}

/// `(x:y:1) -> x + y i`; `(x:y:0) -> ` the direction of `x + y i`.
pub fn homog_to_k(ctx: &FieldCtx, p: ProjPointH) -> ProjPointK {
    let w = KElem::new(p.x, p.y);
    if p.z.is_zero() {
        let (_, u) = ctx
            .polar(w)
            .expect("canonical point at infinity is nonzero");
        ProjPointK::Infinite(u)
    } else {
        // canonical form already has z = 1
        ProjPointK::Affine(w)
    }
}

pub fn k_to_homog(ctx: &FieldCtx, p: ProjPointK) -> ProjPointH {
    match p {
        ProjPointK::Affine(z) => ProjPointH {
            x: z.re,
            y: z.im,
            z: FElem::ONE,
        },
        ProjPointK::Infinite(u) => {
            ProjPointH::new(u.re, u.im, FElem::ZERO, ctx).expect("direction is nonzero")
        }
    }
}

/// Horner evaluation over `F`, constant term first.
pub fn eval_f_poly(ctx: &FieldCtx, coeffs: &[FElem], t: FElem) -> FElem {
    coeffs
        .iter()
        .rev()
        .fold(FElem::ZERO, |acc, &c| ctx.f_mul(acc, t) + c)
}

/// `{(t : f(t) : 1) : t in F} ∪ {(1:0:0), (0:1:0)}`.
pub fn opoly_points(ctx: &FieldCtx, f_coeffs: &[FElem]) -> Vec<ProjPointH> {
    let mut pts: Vec<ProjPointH> = ctx
        .f_elements()
        .map(|t| ProjPointH {
            x: t,
            y: eval_f_poly(ctx, f_coeffs, t),
            z: FElem::ONE,
        })
        .collect();
    pts.push(ProjPointH {
        x: FElem::ONE,
        y: FElem::ZERO,
        z: FElem::ZERO,
    });
    pts.push(ProjPointH {
        x: FElem::ZERO,
        y: FElem::ONE,
        z: FElem::ZERO,
    });
    pts
}

/// Ordered set of distinct points in the `K` model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<ProjPointK>", into = "Vec<ProjPointK>")]
pub struct PointSet {
    points: Vec<ProjPointK>,
}

impl TryFrom<Vec<ProjPointK>> for PointSet {
    type Error = Error;
    fn try_from(points: Vec<ProjPointK>) -> Result<Self> {
        PointSet::new(points)
    }
}

impl From<PointSet> for Vec<ProjPointK> {
    fn from(s: PointSet) -> Self {
        s.points
    }
}

impl PointSet {
    pub fn new(points: Vec<ProjPointK>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(points.len());
        for &p in &points {
            if !seen.insert(p) {
                return Err(Error::DuplicatePoint(p));
            }
        }
        Ok(PointSet { points })
    }

    pub fn from_affine(points: impl IntoIterator<Item = KElem>) -> Result<Self> {
        Self::new(points.into_iter().map(ProjPointK::Affine).collect())
    }

    pub fn from_homog(ctx: &FieldCtx, pts: &[ProjPointH]) -> Result<Self> {
        Self::new(pts.iter().map(|&p| homog_to_k(ctx, p)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ProjPointK> {
        self.points.iter()
    }

    pub fn points(&self) -> &[ProjPointK] {
        &self.points
    }

    pub fn contains(&self, p: ProjPointK) -> bool {
        self.points.contains(&p)
    }

    pub fn contains_origin(&self) -> bool {
        self.contains(ProjPointK::ORIGIN)
    }

    /// Affine coordinates, or `None` when a point at infinity is present.
    pub fn affine_points(&self) -> Option<Vec<KElem>> {
        self.points.iter().map(|p| p.affine()).collect()
    }

    /// Nonzero points in input order; fails on points at infinity.
    pub fn nonzero_affine(&self) -> Result<Vec<KElem>> {
        self.points
            .iter()
            .filter(|p| !p.is_origin())
            .map(|&p| p.affine().ok_or(Error::InfinitePoint(p)))
            .collect()
    }

    /// Order-independent equality.
    pub fn same_set(&self, other: &PointSet) -> bool {
        let a: HashSet<_> = self.points.iter().collect();
        let b: HashSet<_> = other.points.iter().collect();
        a == b
    }

    pub fn to_homog(&self, ctx: &FieldCtx) -> Vec<ProjPointH> {
        self.points.iter().map(|&p| k_to_homog(ctx, p)).collect()
    }

    /// Pointwise `z -> a z` on affine points; directions rotate by the unit part of `a`.
    pub fn scale(&self, ctx: &FieldCtx, a: KElem) -> Result<PointSet> {
        let (_, ua) = ctx.polar(a)?;
        PointSet::new(
            self.points
                .iter()
                .map(|&p| match p {
                    ProjPointK::Affine(z) => ProjPointK::Affine(ctx.k_mul(a, z)),
                    ProjPointK::Infinite(u) => ProjPointK::Infinite(ctx.k_mul(ua, u)),
                })
                .collect(),
        )
    }
}

/// Pointwise `z -> z + b`. Points at infinity are fixed; with `strict`
/// they are rejected instead.
pub fn translate(h: &PointSet, b: KElem, strict: bool) -> Result<PointSet> {
    let moved = h
        .iter()
        .map(|&p| match p {
            ProjPointK::Affine(z) => Ok(ProjPointK::Affine(z + b)),
            ProjPointK::Infinite(_) if strict => Err(Error::InfinitePoint(p)),
            inf @ ProjPointK::Infinite(_) => Ok(inf),
        })
        .collect::<Result<Vec<_>>>()?;
    PointSet::new(moved)
}

/// A function `S -> F`, indexed like [`FieldCtx::unit_circle`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GFunctionTable {
    values: Vec<FElem>,
}

impl GFunctionTable {
    pub fn new(ctx: &FieldCtx, values: Vec<FElem>) -> Result<Self> {
        let n = ctx.unit_circle().len();
        if values.len() != n {
            return Err(Error::TableLength {
                expected: n,
                found: values.len(),
            });
        }
        for &v in &values {
            ctx.f(v.0)?;
        }
        Ok(GFunctionTable { values })
    }

    pub fn constant(ctx: &FieldCtx, c: FElem) -> Self {
        GFunctionTable {
            values: vec![c; ctx.unit_circle().len()],
        }
    }

    pub fn from_fn(ctx: &FieldCtx, mut f: impl FnMut(KElem) -> FElem) -> Self {
        GFunctionTable {
            values: ctx.unit_circle().iter().map(|&u| f(u)).collect(),
        }
    }

    pub fn values(&self) -> &[FElem] {
        &self.values
    }

    pub fn value_at(&self, index: usize) -> FElem {
        self.values[index]
    }

    pub fn is_nonvanishing(&self) -> bool {
        self.values.iter().all(|v| !v.is_zero())
    }

    pub fn first_zero(&self) -> Option<usize> {
        self.values.iter().position(|v| v.is_zero())
    }

    /// `u -> g(u) + <c, u>`.
    pub fn shifted(&self, ctx: &FieldCtx, c: KElem) -> GFunctionTable {
        GFunctionTable {
            values: self
                .values
                .iter()
                .zip(ctx.unit_circle())
                .map(|(&g, &u)| g + ctx.bform(c, u))
                .collect(),
        }
    }

    /// Pointwise inverse, the rho-function of a nonvanishing table.
    pub fn reciprocal(&self, ctx: &FieldCtx) -> Result<GFunctionTable> {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(j, &v)| ctx.f_inv(v).map_err(|_| Error::ZeroValue(j)))
            .collect::<Result<Vec<_>>>()?;
        Ok(GFunctionTable { values })
    }
}

/// Recovers `g` from `H = {u/g(u)} ∪ {0}`: each nonzero point `y = lambda u`
/// gives `g(u) = 1/lambda`, each point at infinity `u` gives `g(u) = 0`.
///
/// Two points sharing a direction lie on a line through the origin together
/// with it, so a collision is reported with both points as the witness.
pub fn extract_g(ctx: &FieldCtx, h: &PointSet) -> Result<GFunctionTable> {
    if !h.contains_origin() {
        return Err(Error::MissingOrigin);
    }
    let n = ctx.unit_circle().len();
    let mut values: Vec<Option<FElem>> = vec![None; n];
    let mut owner: HashMap<usize, ProjPointK> = HashMap::new();
    for &p in h.iter().filter(|p| !p.is_origin()) {
        let (value, u) = match p {
            ProjPointK::Affine(z) => {
                let (lambda, u) = ctx.polar(z)?;
                (ctx.f_inv(lambda)?, u)
            }
            ProjPointK::Infinite(u) => (FElem::ZERO, u),
        };
        let j = ctx.unit_index(u).ok_or(Error::NotUnit(u))?;
        if let Some(&first) = owner.get(&j) {
            return Err(Error::DirectionCollision { first, second: p });
        }
        owner.insert(j, p);
        values[j] = Some(value);
    }
    if h.len() != n + 1 {
        return Err(Error::WrongCardinality {
            expected: n + 1,
            found: h.len(),
        });
    }
    Ok(GFunctionTable {
        values: values
            .into_iter()
            .map(|v| v.expect("every direction hit"))
            .collect(),
    })
}

/// `{u/g(u) : g(u) != 0} ∪ {u_inf : g(u) = 0} ∪ {0}`, in unit circle order
/// with the origin last.
pub fn points_from_g(ctx: &FieldCtx, g: &GFunctionTable) -> PointSet {
    let mut points: Vec<ProjPointK> = ctx
        .unit_circle()
        .iter()
        .zip(g.values())
        .map(|(&u, &v)| match ctx.f_inv(v) {
            Ok(inv) => ProjPointK::Affine(ctx.k_scale(inv, u)),
            Err(_) => ProjPointK::Infinite(u),
        })
        .collect();
    points.push(ProjPointK::ORIGIN);
    PointSet { points }
}

/// Finds the first `c` in `K` (increasing bit encoding) such that
/// `g(u) + <c, u>` never vanishes on the unit circle.
pub fn normalize_g(ctx: &FieldCtx, g: &GFunctionTable) -> Result<(GFunctionTable, KElem)> {
    if g.is_nonvanishing() {
        return Ok((g.clone(), KElem::ZERO));
    }
    ctx.k_elements()
        .skip(1)
        .map(|c| (g.shifted(ctx, c), c))
        .find(|(t, _)| t.is_nonvanishing())
        .ok_or(Error::NoNormalization)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn ctx(m: u32) -> FieldCtx {
        FieldCtx::new(m).unwrap()
    }

    fn regular(ctx: &FieldCtx) -> PointSet {
        points_from_g(ctx, &GFunctionTable::constant(ctx, FElem::ONE))
    }

    fn hom(x: u32, y: u32, z: u32, c: &FieldCtx) -> ProjPointH {
        ProjPointH::new(FElem(x), FElem(y), FElem(z), c).unwrap()
    }

    #[test]
    fn origin_on_lines_through_origin() {
        let c = ctx(3);
        for &u in c.unit_circle() {
            assert!(incident(
                &c,
                ProjPointK::ORIGIN,
                LineK::affine(u, FElem::ZERO)
            ));
        }
    }

    #[test]
    fn direction_point_on_parallel_lines() {
        let c = ctx(3);
        for &v in c.unit_circle() {
            for mu in c.f_elements() {
                let l = LineK::affine(v, mu);
                assert!(incident(&c, ProjPointK::Infinite(v), l));
                // the affine points of L(v, mu) differ by multiples of v
                let on: Vec<KElem> = c
                    .k_elements()
                    .filter(|&z| incident(&c, ProjPointK::Affine(z), l))
                    .collect();
                assert_eq!(on.len(), c.q() as usize);
                for &z in &on {
                    let d = z + on[0];
                    assert!(d.is_zero() || c.polar(d).unwrap().1 == v);
                }
                let inf = c
                    .unit_circle()
                    .iter()
                    .filter(|&&u| incident(&c, ProjPointK::Infinite(u), l))
                    .count();
                assert_eq!(inf, 1);
            }
        }
    }

    #[test]
    fn regular_point_on_line_through_origin() {
        let c = ctx(3);
        let g = GFunctionTable::from_fn(&c, |u| FElem(1 + (u.re.0 % 3)));
        for (j, &v) in c.unit_circle().iter().enumerate() {
            let y = c.k_scale(c.f_inv(g.value_at(j)).unwrap(), v);
            assert!(incident(
                &c,
                ProjPointK::Affine(y),
                LineK::affine(v, FElem::ZERO)
            ));
        }
    }

    #[test]
    fn line_rescaling_invariance() {
        let c = ctx(3);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let alpha = KElem::decode(rng.gen_range(1..64), 3);
            let beta = FElem(rng.gen_range(0..8));
            let lambda = FElem(rng.gen_range(1..8));
            let l1 = LineK::new(&c, alpha, beta).unwrap();
            let l2 = LineK::new(&c, c.k_scale(lambda, alpha), c.f_mul(lambda, beta)).unwrap();
            assert_eq!(l1, l2);
            let p = ProjPointK::Affine(KElem::decode(rng.gen_range(0..64), 3));
            let raw = c.bform(alpha, p.affine().unwrap()) + beta == FElem::ZERO;
            assert_eq!(incident(&c, p, l1), raw);
        }
        assert_eq!(
            LineK::new(&c, KElem::ZERO, FElem(5)),
            Some(LineK::AT_INFINITY)
        );
        assert_eq!(LineK::new(&c, KElem::ZERO, FElem::ZERO), None);
    }

    #[test]
    fn homog_round_trip() {
        let c = ctx(3);
        assert_eq!(homog_to_k(&c, hom(0, 0, 1, &c)), ProjPointK::ORIGIN);
        for x in 0..8 {
            for y in 0..8 {
                let p = hom(x, y, 1, &c);
                let k = homog_to_k(&c, p);
                assert_eq!(k, ProjPointK::Affine(KElem::new(FElem(x), FElem(y))));
                assert_eq!(k_to_homog(&c, k), p);
                if (x, y) != (0, 0) {
                    let p = hom(x, y, 0, &c);
                    let k = homog_to_k(&c, p);
                    assert!(matches!(k, ProjPointK::Infinite(u) if c.is_unit(u)));
                    assert_eq!(k_to_homog(&c, k), p);
                }
            }
        }
        for &u in c.unit_circle() {
            let p = ProjPointK::Infinite(u);
            assert_eq!(homog_to_k(&c, k_to_homog(&c, p)), p);
        }
    }

    fn k_collinear(c: &FieldCtx, pts: [ProjPointK; 3]) -> bool {
        all_lines(c)
            .into_iter()
            .any(|l| pts.iter().all(|&p| incident(c, p, l)))
    }

    #[test]
    fn homog_to_k_is_a_collineation() {
        for m in [2, 3, 4] {
            let c = ctx(m);
            let q = c.q();
            let mut rng = ChaCha8Rng::seed_from_u64(u64::from(m));
            let rand_pt = |rng: &mut ChaCha8Rng| loop {
                let (x, y, z) = (
                    rng.gen_range(0..q),
                    rng.gen_range(0..q),
                    rng.gen_range(0..q),
                );
                if let Some(p) = ProjPointH::new(FElem(x), FElem(y), FElem(z), &c) {
                    return p;
                }
            };
            let mut collinear_seen = 0;
            while collinear_seen < 200 {
                let a = rand_pt(&mut rng);
                let b = rand_pt(&mut rng);
                // third point on the line through a and b: a + t b
                let t = FElem(rng.gen_range(0..q));
                let s = FElem(rng.gen_range(0..q));
                let comb = |u: FElem, v: FElem| c.f_mul(s, u) + c.f_mul(t, v);
                let Some(r) = ProjPointH::new(comb(a.x, b.x), comb(a.y, b.y), comb(a.z, b.z), &c)
                else {
                    continue;
                };
                assert!(h_collinear(&c, a, b, r));
                let img = [a, b, r].map(|p| homog_to_k(&c, p));
                assert!(k_collinear(&c, img));
                collinear_seen += 1;
            }
            // and non-collinear triples stay non-collinear
            for _ in 0..100 {
                let tri = [rand_pt(&mut rng), rand_pt(&mut rng), rand_pt(&mut rng)];
                let img = tri.map(|p| homog_to_k(&c, p));
                assert_eq!(
                    h_collinear(&c, tri[0], tri[1], tri[2]),
                    k_collinear(&c, img)
                );
            }
        }
    }

    #[test]
    fn every_affine_line_has_q_plus_one_points() {
        for m in [2, 3] {
            let c = ctx(m);
            let mut pts: Vec<ProjPointK> = c.k_elements().map(ProjPointK::Affine).collect();
            pts.extend(c.unit_circle().iter().map(|&u| ProjPointK::Infinite(u)));
            for l in all_lines(&c) {
                let aff = pts
                    .iter()
                    .filter(|p| p.affine().is_some() && incident(&c, **p, l))
                    .count();
                let inf = pts
                    .iter()
                    .filter(|p| p.affine().is_none() && incident(&c, **p, l))
                    .count();
                if l == LineK::AT_INFINITY {
                    assert_eq!((aff, inf), (0, c.q() as usize + 1));
                } else {
                    assert_eq!((aff, inf), (c.q() as usize, 1));
                }
            }
        }
    }

    #[test]
    fn opoly_point_counts() {
        let c = ctx(3);
        let pts = opoly_points(&c, &[FElem(0), FElem(0), FElem(0), FElem(0), FElem(1)]);
        assert_eq!(pts.len(), 10);
        let set = PointSet::from_homog(&c, &pts).unwrap();
        assert_eq!(set.len(), 10);
        assert!(set.contains_origin());
    }

    #[test]
    fn opoly_identity_has_collinear_triples() {
        let c = ctx(3);
        let pts = opoly_points(&c, &[FElem(0), FElem(1)]);
        // (0:0:1), (1:1:1) and (1:1:0) lie on x = y
        let a = hom(0, 0, 1, &c);
        let b = hom(1, 1, 1, &c);
        let d = hom(1, 1, 0, &c);
        assert!(pts.contains(&a) && pts.contains(&b));
        assert!(h_collinear(&c, a, b, d));
        assert!(h_collinear(&c, a, b, hom(2, 2, 1, &c)));
    }

    #[test]
    fn translation_basics() {
        let c = ctx(3);
        let h = regular(&c);
        assert!(translate(&h, KElem::ZERO, true).unwrap().same_set(&h));
        let b = KElem::new(FElem(3), FElem(5));
        let t = translate(&h, b, true).unwrap();
        assert!(translate(&t, b, true).unwrap().same_set(&h));
        let with_inf =
            PointSet::new(vec![ProjPointK::ORIGIN, ProjPointK::Infinite(KElem::ONE)]).unwrap();
        assert!(matches!(
            translate(&with_inf, b, true),
            Err(Error::InfinitePoint(_))
        ));
        let moved = translate(&with_inf, b, false).unwrap();
        assert!(moved.contains(ProjPointK::Infinite(KElem::ONE)));
    }

    #[test]
    fn extract_regular_and_scaled() {
        let c = ctx(3);
        let one = GFunctionTable::constant(&c, FElem::ONE);
        assert_eq!(extract_g(&c, &regular(&c)).unwrap(), one);
        for lambda in c.f_elements().skip(1) {
            let h = PointSet::from_affine(
                c.unit_circle()
                    .iter()
                    .map(|&u| c.k_scale(lambda, u))
                    .chain([KElem::ZERO]),
            )
            .unwrap();
            let g = extract_g(&c, &h).unwrap();
            assert_eq!(g, GFunctionTable::constant(&c, c.f_inv(lambda).unwrap()));
        }
    }

    #[test]
    fn extract_errors() {
        let c = ctx(2);
        let no_origin = PointSet::from_affine(c.unit_circle().to_vec()).unwrap();
        assert!(matches!(
            extract_g(&c, &no_origin),
            Err(Error::MissingOrigin)
        ));
        // 1 and its multiple 2*1 share a direction
        let mut pts: Vec<KElem> = c.unit_circle().to_vec();
        pts[1] = KElem::from_f(FElem(2));
        pts.push(KElem::ZERO);
        let h = PointSet::from_affine(pts).unwrap();
        match extract_g(&c, &h) {
            Err(Error::DirectionCollision { first, second }) => {
                assert_eq!(first, ProjPointK::Affine(KElem::ONE));
                assert_eq!(second, ProjPointK::Affine(KElem::from_f(FElem(2))));
            }
            other => panic!("unexpected {other:?}"),
        }
        let short = PointSet::from_affine([KElem::ZERO, KElem::ONE]).unwrap();
        assert!(matches!(
            extract_g(&c, &short),
            Err(Error::WrongCardinality {
                expected: 6,
                found: 2
            })
        ));
    }

    #[test]
    fn points_from_g_shapes() {
        let c = ctx(3);
        let one = GFunctionTable::constant(&c, FElem::ONE);
        let h = points_from_g(&c, &one);
        let mut expect: Vec<KElem> = c.unit_circle().to_vec();
        expect.push(KElem::ZERO);
        assert!(h.same_set(&PointSet::from_affine(expect).unwrap()));

        let mut vals = vec![FElem::ONE; 9];
        vals[4] = FElem::ZERO;
        let g = GFunctionTable::new(&c, vals).unwrap();
        let h = points_from_g(&c, &g);
        assert_eq!(h.len(), 10);
        let inf: Vec<_> = h.iter().filter(|p| p.affine().is_none()).collect();
        assert_eq!(inf, vec![&ProjPointK::Infinite(c.unit_circle()[4])]);
        assert_eq!(extract_g(&c, &h).unwrap(), g);
    }

    #[test]
    fn extract_points_round_trip_random() {
        let c = ctx(3);
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..300 {
            let g = GFunctionTable::new(&c, (0..9).map(|_| FElem(rng.gen_range(0..8))).collect())
                .unwrap();
            let h = points_from_g(&c, &g);
            assert_eq!(extract_g(&c, &h).unwrap(), g);
            assert!(points_from_g(&c, &extract_g(&c, &h).unwrap()).same_set(&h));
        }
    }

    #[test]
    fn normalize_cases() {
        let c = ctx(3);
        let one = GFunctionTable::constant(&c, FElem::ONE);
        assert_eq!(normalize_g(&c, &one).unwrap(), (one.clone(), KElem::ZERO));

        let b = KElem::new(FElem(2), FElem(3));
        let g = GFunctionTable::from_fn(&c, |u| c.bform(b, u) + FElem::ONE);
        assert_eq!(g.shifted(&c, b), one);

        let mut vals = vec![FElem::ONE; 9];
        vals[0] = FElem::ZERO;
        let g = GFunctionTable::new(&c, vals).unwrap();
        let (g2, cc) = normalize_g(&c, &g).unwrap();
        assert!(!cc.is_zero());
        assert!(g2.is_nonvanishing());
        assert!(points_from_g(&c, &g2).affine_points().is_some());
        // scan oracle: no smaller c works
        for smaller in c.k_elements().skip(1).take_while(|&x| x < cc) {
            assert!(!g.shifted(&c, smaller).is_nonvanishing());
        }

        assert!(matches!(
            normalize_g(&c, &GFunctionTable::constant(&c, FElem::ZERO)),
            Err(Error::NoNormalization)
        ));
    }
}
