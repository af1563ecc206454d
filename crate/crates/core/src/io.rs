//! Wire formats. Field elements are hex strings (`"0x1b"`); elements of `K`
//! are `[re, im]` hex pairs.

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::field::{FElem, FieldCtx, FieldDesc, KElem};
use crate::gpoly::GCoeffs;
use crate::plane::{GFunctionTable, PointSet, ProjPointH, ProjPointK};

pub fn parse_hex(s: &str) -> Result<u32> {
    let t = s.trim();
    let digits = t
        .strip_prefix("0x")
        .or_else(|| t.strip_prefix("0X"))
        .unwrap_or(t);
    u32::from_str_radix(digits, 16).map_err(|e| Error::Parse(format!("bad hex {s:?}: {e}")))
}

pub fn to_hex(v: u32) -> String {
    format!("{v:#x}")
}

pub mod hex_u32 {
    use super::*;

    pub fn serialize<S: Serializer>(v: &u32, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_hex(*v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<u32, D::Error> {
        let s = String::deserialize(d)?;
        parse_hex(&s).map_err(D::Error::custom)
    }
}

/// Maps keyed by unit circle index. JSON keys are strings; they are parsed
/// here so that the map also loads when serde has buffered the payload.
mod index_keys {
    use super::*;

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<usize, FElem>,
        s: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        map.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> std::result::Result<BTreeMap<usize, FElem>, D::Error> {
        BTreeMap::<String, FElem>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| {
                k.parse()
                    .map(|i| (i, v))
                    .map_err(|_| D::Error::custom(format!("table index {k:?} is not an integer")))
            })
            .collect()
    }
}

impl Serialize for FElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&to_hex(self.0))
    }
}

impl<'de> Deserialize<'de> for FElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        parse_hex(&s).map(FElem).map_err(D::Error::custom)
    }
}

impl Serialize for KElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.re, self.im].serialize(s)
    }
}

impl<'de> Deserialize<'de> for KElem {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [re, im] = <[FElem; 2]>::deserialize(d)?;
        Ok(KElem::new(re, im))
    }
}

/// The payload forms accepted by `verify` and `convert`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum Payload {
    /// Coefficients `a_0..a_q` of a g-function.
    GCoeffs(Vec<KElem>),
    /// g-values keyed by unit circle index.
    GTable(#[serde(with = "index_keys")] BTreeMap<usize, FElem>),
    /// rho-values keyed by unit circle index.
    RhoTable(#[serde(with = "index_keys")] BTreeMap<usize, FElem>),
    /// Coefficients of an o-polynomial over `F`, constant term first.
    Opoly(Vec<FElem>),
    /// Points in the `K` model.
    Points(PointSet),
    /// Points `(x:y:z)` in the homogeneous model.
    HomogPoints(Vec<[FElem; 3]>),
}

/// A self-describing input document: the field plus one payload.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub field: FieldDesc,
    pub payload: Payload,
}

impl Document {
    pub fn new(ctx: &FieldCtx, payload: Payload) -> Self {
        Document {
            field: ctx.desc(),
            payload,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

impl Payload {
    /// The g-function this payload describes, when it is given as one.
    pub fn g_table(&self, ctx: &FieldCtx) -> Result<Option<GFunctionTable>> {
        match self {
            Payload::GCoeffs(a) => {
                let g = coeffs_from_vec(ctx, a)?;
                Ok(Some(crate::gpoly::g_coeffs_to_table(ctx, &g)?))
            }
            Payload::GTable(map) => Ok(Some(table_from_map(ctx, map)?)),
            Payload::RhoTable(map) => Ok(Some(table_from_map(ctx, map)?.reciprocal(ctx)?)),
            _ => Ok(None),
        }
    }

    /// The point set in the `K` model.
    pub fn point_set(&self, ctx: &FieldCtx) -> Result<PointSet> {
        if let Some(g) = self.g_table(ctx)? {
            return Ok(crate::plane::points_from_g(ctx, &g));
        }
        match self {
            Payload::Opoly(f) => {
                let f = f
                    .iter()
                    .map(|&c| check_f(ctx, c))
                    .collect::<Result<Vec<_>>>()?;
                PointSet::from_homog(ctx, &crate::plane::opoly_points(ctx, &f))
            }
            Payload::Points(pts) => points_checked(ctx, pts),
            Payload::HomogPoints(pts) => PointSet::from_homog(ctx, &homog_checked(ctx, pts)?),
            _ => unreachable!("g-function payloads handled above"),
        }
    }

    /// Consensus of every verifier. g-functions go through
    /// [`crate::criteria::verify_all`], point sets through
    /// [`crate::criteria::verify_point_set`].
    pub fn verify(&self, ctx: &FieldCtx) -> Result<crate::criteria::ConsensusReport> {
        match self.g_table(ctx)? {
            Some(g) => crate::criteria::verify_all(ctx, &g),
            None => crate::criteria::verify_point_set(ctx, &self.point_set(ctx)?),
        }
    }
}

impl Document {
    pub fn context(&self) -> Result<FieldCtx> {
        FieldCtx::from_desc(&self.field)
    }
}

fn check_f(ctx: &FieldCtx, x: FElem) -> Result<FElem> {
    ctx.f(x.0)
}

fn check_k(ctx: &FieldCtx, z: KElem) -> Result<KElem> {
    ctx.k(z.re.0, z.im.0)
}

pub fn table_to_map(g: &GFunctionTable) -> BTreeMap<usize, FElem> {
    g.values().iter().copied().enumerate().collect()
}

/// Reads a table keyed by unit circle index; every index must be present.
pub fn table_from_map(ctx: &FieldCtx, map: &BTreeMap<usize, FElem>) -> Result<GFunctionTable> {
    let n = ctx.unit_circle().len();
    if map.len() != n || map.keys().any(|&k| k >= n) {
        return Err(Error::TableLength {
            expected: n,
            found: map.len(),
        });
    }
    let values = map
        .values()
        .map(|&v| check_f(ctx, v))
        .collect::<Result<Vec<_>>>()?;
    GFunctionTable::new(ctx, values)
}

pub fn coeffs_from_vec(ctx: &FieldCtx, a: &[KElem]) -> Result<GCoeffs> {
    let a = a
        .iter()
        .map(|&z| check_k(ctx, z))
        .collect::<Result<Vec<_>>>()?;
    GCoeffs::new(ctx, a)
}

pub fn points_checked(ctx: &FieldCtx, pts: &PointSet) -> Result<PointSet> {
    let checked = pts
        .iter()
        .map(|p| match *p {
            ProjPointK::Affine(z) => check_k(ctx, z).map(ProjPointK::Affine),
            ProjPointK::Infinite(u) => {
                let u = check_k(ctx, u)?;
                if !ctx.is_unit(u) {
                    return Err(Error::NotUnit(u));
                }
                Ok(ProjPointK::Infinite(u))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    PointSet::new(checked)
}

pub fn homog_checked(ctx: &FieldCtx, pts: &[[FElem; 3]]) -> Result<Vec<ProjPointH>> {
    pts.iter()
        .map(|&[x, y, z]| {
            ProjPointH::new(check_f(ctx, x)?, check_f(ctx, y)?, check_f(ctx, z)?, ctx)
                .ok_or_else(|| Error::Parse("the triple (0:0:0) is not a point".into()))
        })
        .collect()
}
