//! Reference inputs with known verdicts: regular hyperovals, translation and
//! Segre hyperovals from o-polynomials, and two Vandermonde sets that are
//! not hyperovals.
//!
//! Extra fixtures are read from the directory named by `OVALINE_FIXTURES`,
//! one JSON file per fixture.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::criteria::ConsensusReport;
use crate::error::{Error, Result};
use crate::field::{FElem, FieldCtx, KElem};
use crate::io::{Document, Payload};
use crate::plane::{PointSet, ProjPointK};

pub const FIXTURE_DIR_VAR: &str = "OVALINE_FIXTURES";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Source {
    PaperExample,
    ClassicalConstruction,
    SearchHit,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    pub source: Source,
    pub expected_verdict: bool,
    pub document: Document,
}

impl Fixture {
    pub fn q(&self) -> u32 {
        1 << self.document.field.m
    }

    pub fn context(&self) -> Result<FieldCtx> {
        self.document.context()
    }

    pub fn verify(&self) -> Result<ConsensusReport> {
        self.document.payload.verify(&self.context()?)
    }

    /// Verifies and compares with the expected verdict.
    pub fn check(&self) -> Result<(ConsensusReport, bool)> {
        let rep = self.verify()?;
        let ok = rep.verdict == self.expected_verdict;
        Ok((rep, ok))
    }
}

/// `g ≡ 1`, whose points are the unit circle and the origin.
pub fn regular(m: u32) -> Result<Fixture> {
    let ctx = FieldCtx::new(m)?;
    let mut a = vec![KElem::ZERO; ctx.q() as usize + 1];
    a[0] = KElem::ONE;
    Ok(Fixture {
        name: format!("regular_q{}", ctx.q()),
        source: Source::ClassicalConstruction,
        expected_verdict: true,
        document: Document::new(&ctx, Payload::GCoeffs(a)),
    })
}

/// The monomial o-polynomial `t^e` at `q = 2^m`.
pub fn monomial(
    name: &str,
    m: u32,
    e: usize,
    source: Source,
    expected_verdict: bool,
) -> Result<Fixture> {
    let ctx = FieldCtx::new(m)?;
    let mut f = vec![FElem::ZERO; e + 1];
    f[e] = FElem::ONE;
    Ok(Fixture {
        name: name.to_string(),
        source,
        expected_verdict,
        document: Document::new(&ctx, Payload::Opoly(f)),
    })
}

/// Elements of multiplicative order 3 in `K`, ascending.
pub fn cube_roots_of_unity(ctx: &FieldCtx) -> Vec<KElem> {
    ctx.k_elements()
        .filter(|&z| z != KElem::ONE && ctx.k_pow(z, 3) == KElem::ONE)
        .collect()
}

/// `g(u) = u^16 + w u^12 + w u^11 + w u^6 + w u^5 + u + 1` at `q = 16`.
/// Its points are a Vandermonde set but `pi_37 != 0`.
pub fn q16_vandermonde_g(ctx: &FieldCtx, omega: KElem) -> Vec<KElem> {
    let mut a = vec![KElem::ZERO; 17];
    a[0] = KElem::ONE;
    a[1] = KElem::ONE;
    a[16] = KElem::ONE;
    for t in [5, 6, 11, 12] {
        a[t] = omega;
    }
    debug_assert_eq!(ctx.q(), 16);
    a
}

/// First `(lambda, mu)` in `F*`, ordered by encoding, with
/// `1 + lambda^3 + mu^3 = 0`.
pub fn cubic_pair(ctx: &FieldCtx) -> Option<(FElem, FElem)> {
    let cube = |x: FElem| ctx.f_pow(x, 3);
    ctx.f_elements().skip(1).find_map(|l| {
        ctx.f_elements()
            .skip(1)
            .find(|&u| FElem::ONE + cube(l) + cube(u) == FElem::ZERO)
            .map(|u| (l, u))
    })
}

/// `{0} ∪ {1, w, w̄} · {1, lambda, mu}` at `q = 8`: a Vandermonde set on
/// which the line `<1, x> = 0` has four points.
pub fn q8_vandermonde_points(ctx: &FieldCtx) -> Result<PointSet> {
    let omega = *cube_roots_of_unity(ctx)
        .iter()
        .find(|&&z| ctx.is_unit(z))
        .ok_or_else(|| Error::Defect("no cube root of unity on the unit circle".into()))?;
    let (l, u) =
        cubic_pair(ctx).ok_or_else(|| Error::Defect("no solution of 1 + l^3 + u^3 = 0".into()))?;
    let mut pts = vec![ProjPointK::ORIGIN];
    for s in [FElem::ONE, l, u] {
        for w in [KElem::ONE, omega, ctx.conj(omega)] {
            pts.push(ProjPointK::Affine(ctx.k_scale(s, w)));
        }
    }
    PointSet::new(pts)
}

pub fn builtin() -> Result<Vec<Fixture>> {
    let mut out = Vec::new();
    for m in 2..=5 {
        out.push(regular(m)?);
    }
    let classical = Source::ClassicalConstruction;
    out.push(monomial("translation_q8", 3, 4, classical, true)?);
    out.push(monomial("translation_q16", 4, 8, classical, true)?);
    out.push(monomial("translation_q32", 5, 4, classical, true)?);
    out.push(monomial("segre_q32", 5, 6, classical, true)?);
    out.push(monomial("identity_opoly_q8", 3, 1, classical, false)?);

    let ctx16 = FieldCtx::new(4)?;
    let omega = cube_roots_of_unity(&ctx16)[0];
    out.push(Fixture {
        name: "vandermonde_g_q16".into(),
        source: Source::PaperExample,
        expected_verdict: false,
        document: Document::new(&ctx16, Payload::GCoeffs(q16_vandermonde_g(&ctx16, omega))),
    });
    let ctx8 = FieldCtx::new(3)?;
    out.push(Fixture {
        name: "vandermonde_points_q8".into(),
        source: Source::PaperExample,
        expected_verdict: false,
        document: Document::new(&ctx8, Payload::Points(q8_vandermonde_points(&ctx8)?)),
    });
    Ok(out)
}

/// Every `*.json` fixture in `dir`, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<Fixture>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<Vec<_>>>()?;
    paths.retain(|p| p.extension().is_some_and(|e| e == "json"));
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p)?;
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", p.display())))
        })
        .collect()
}

/// Built-in fixtures followed by those in `$OVALINE_FIXTURES`, if set.
pub fn all() -> Result<Vec<Fixture>> {
    let mut out = builtin()?;
    if let Some(dir) = std::env::var_os(FIXTURE_DIR_VAR) {
        out.extend(load_dir(Path::new(&dir))?);
    }
    Ok(out)
}

/// Writes each fixture to `dir/<name>.json`.
pub fn export(fixtures: &[Fixture], dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for f in fixtures {
        let text = serde_json::to_string_pretty(f)?;
        std::fs::write(dir.join(format!("{}.json", f.name)), text + "\n")?;
    }
    Ok(())
}
