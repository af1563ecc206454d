//! Enumeration of symmetric g-function coefficient vectors with a cheap
//! rejection cascade: nonvanishing table, power sums over the coset
//! representatives (smallest exponent first), then full consensus.
//!
//! The space is `a0_domain × domain^|free_support|`. It is split into shards
//! by the value of the first free coefficient; shards are independent and
//! their outcomes are merged in shard order, so results do not depend on the
//! number of threads.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::criteria::{check_geometric, verify_all, ConsensusReport, ExponentSets};
use crate::error::{Error, Result};
use crate::field::{FElem, FieldCtx, KElem};
use crate::gpoly::{g_coeffs_to_table, GCoeffs};
use crate::plane::{points_from_g, GFunctionTable};

/// Exhaustive mode refuses spaces larger than this.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 32;
/// Random samples are drawn in shards of this size.
pub const RANDOM_SHARD: u64 = 1024;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Random { samples: u64, seed: u64 },
}

fn default_a0() -> Vec<FElem> {
    vec![FElem::ZERO, FElem::ONE]
}

fn default_shards() -> usize {
    1
}

fn default_reject_sample() -> usize {
    100
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub q: u32,
    #[serde(default, with = "opt_hex", skip_serializing_if = "Option::is_none")]
    pub f_poly: Option<u32>,
    #[serde(default, with = "opt_hex", skip_serializing_if = "Option::is_none")]
    pub delta: Option<u32>,
    /// Indices `t` in `1..=q/2` with `t ≡ 0, 1 (mod 4)`; `a_(q+1-t)` follows
    /// by symmetry and every other coefficient is zero.
    pub free_support: Vec<u32>,
    /// Values scanned for each free coefficient; all of `K` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficient_domain: Option<Vec<KElem>>,
    #[serde(default = "default_a0")]
    pub a0_domain: Vec<FElem>,
    pub mode: SearchMode,
    /// Number of shards processed concurrently.
    #[serde(default = "default_shards")]
    pub parallel_shards: usize,
    /// How many power-sum rejects are re-checked geometrically.
    #[serde(default = "default_reject_sample")]
    pub reject_sample: usize,
}

mod opt_hex {
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::io::{parse_hex, to_hex};

    pub fn serialize<S: Serializer>(v: &Option<u32>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => s.serialize_str(&to_hex(*x)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<u32>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| parse_hex(&s).map_err(D::Error::custom))
            .transpose()
    }
}

impl SearchConfig {
    /// Exhaustive search over `a_0 ∈ {0,1}` and the given free indices.
    pub fn exhaustive(q: u32, free_support: Vec<u32>) -> Self {
        SearchConfig {
            q,
            f_poly: None,
            delta: None,
            free_support,
            coefficient_domain: None,
            a0_domain: default_a0(),
            mode: SearchMode::Exhaustive,
            parallel_shards: 1,
            reject_sample: default_reject_sample(),
        }
    }

    pub fn field(&self) -> Result<FieldCtx> {
        let m = crate::criteria::log2_exact(u64::from(self.q))?;
        FieldCtx::with_params(m, self.f_poly, self.delta)
    }

    pub fn validate(&self, ctx: &FieldCtx) -> Result<()> {
        if ctx.q() != self.q {
            return Err(Error::BadConfig(format!(
                "field has order {}, config says {}",
                ctx.q(),
                self.q
            )));
        }
        let mut seen = BTreeSet::new();
        for &t in &self.free_support {
            if t == 0 || t > self.q / 2 {
                return Err(Error::BadConfig(format!(
                    "free index {t} outside 1..={}",
                    self.q / 2
                )));
            }
            if t % 4 >= 2 {
                return Err(Error::BadConfig(format!(
                    "free index {t} is 2 or 3 mod 4, where hyperoval coefficients vanish"
                )));
            }
            if !seen.insert(t) {
                return Err(Error::BadConfig(format!("free index {t} repeated")));
            }
        }
        if self.a0_domain.is_empty() {
            return Err(Error::BadConfig("empty a_0 domain".into()));
        }
        for &a in &self.a0_domain {
            ctx.f(a.0)?;
        }
        if let Some(dom) = &self.coefficient_domain {
            if dom.is_empty() {
                return Err(Error::BadConfig("empty coefficient domain".into()));
            }
            for &c in dom {
                ctx.k(c.re.0, c.im.0)?;
            }
            let distinct: BTreeSet<KElem> = dom.iter().copied().collect();
            if distinct.len() != dom.len() {
                return Err(Error::BadConfig("coefficient domain has repeats".into()));
            }
        }
        let distinct: BTreeSet<FElem> = self.a0_domain.iter().copied().collect();
        if distinct.len() != self.a0_domain.len() {
            return Err(Error::BadConfig("a_0 domain has repeats".into()));
        }
        if self.parallel_shards == 0 {
            return Err(Error::BadConfig("parallel_shards must be positive".into()));
        }
        Ok(())
    }

    fn domain(&self, ctx: &FieldCtx) -> Vec<KElem> {
        match &self.coefficient_domain {
            Some(d) => d.clone(),
            None => ctx.k_elements().collect(),
        }
    }

    /// Number of coefficient vectors in the space.
    pub fn space_size(&self, ctx: &FieldCtx) -> u128 {
        let dom = self.domain(ctx).len() as u128;
        (self.a0_domain.len() as u128)
            .saturating_mul(dom.saturating_pow(self.free_support.len() as u32))
    }
}

/// The candidate space with a fixed indexing.
struct Space {
    ctx: FieldCtx,
    a0: Vec<FElem>,
    domain: Vec<KElem>,
    support: Vec<usize>,
}

impl Space {
    fn new(cfg: &SearchConfig) -> Result<Self> {
        let ctx = cfg.field()?;
        cfg.validate(&ctx)?;
        let domain = cfg.domain(&ctx);
        Ok(Space {
            a0: cfg.a0_domain.clone(),
            domain,
            support: cfg.free_support.iter().map(|&t| t as usize).collect(),
            ctx,
        })
    }

    fn build(&self, a0: FElem, values: &[KElem]) -> GCoeffs {
        let q = self.ctx.q() as usize;
        let mut lower = vec![KElem::ZERO; q / 2];
        for (&t, &v) in self.support.iter().zip(values) {
            lower[t - 1] = v;
        }
        GCoeffs::from_lower_half(&self.ctx, a0, &lower).expect("lower half has length q/2")
    }

    fn shard_count(&self) -> u64 {
        if self.support.is_empty() {
            1
        } else {
            self.domain.len() as u64
        }
    }

    /// Size of one exhaustive shard.
    fn shard_size(&self) -> u64 {
        let rest = self.support.len().saturating_sub(1) as u32;
        self.a0.len() as u64 * (self.domain.len() as u64).pow(rest)
    }

    /// Candidate `index` of exhaustive shard `shard`: the first free
    /// coefficient is `domain[shard]`, then `a_0` varies fastest, then the
    /// remaining free coefficients in order.
    fn exhaustive_candidate(&self, shard: u64, index: u64) -> GCoeffs {
        let mut rest = index;
        let a0 = self.a0[(rest % self.a0.len() as u64) as usize];
        rest /= self.a0.len() as u64;
        let mut values = Vec::with_capacity(self.support.len());
        if !self.support.is_empty() {
            values.push(self.domain[shard as usize]);
        }
        let d = self.domain.len() as u64;
        for _ in 1..self.support.len() {
            values.push(self.domain[(rest % d) as usize]);
            rest /= d;
        }
        self.build(a0, &values)
    }

    fn random_candidate(&self, rng: &mut ChaCha8Rng) -> GCoeffs {
        let a0 = self.a0[rng.gen_range(0..self.a0.len())];
        let values: Vec<KElem> = (0..self.support.len())
            .map(|_| self.domain[rng.gen_range(0..self.domain.len())])
            .collect();
        self.build(a0, &values)
    }
}

/// Enumerates the space in search order, without filtering.
pub fn enumerate_candidates(cfg: &SearchConfig) -> Result<impl Iterator<Item = GCoeffs>> {
    let space = Space::new(cfg)?;
    let plan = Plan::new(cfg, &space)?;
    Ok(plan
        .shards
        .clone()
        .into_iter()
        .flat_map(move |s| plan.shard_candidates(&space, s).collect::<Vec<_>>()))
}

#[derive(Debug, Clone)]
struct Plan {
    mode: SearchMode,
    shards: Vec<u64>,
    shard_size: u64,
}

impl Plan {
    fn new(cfg: &SearchConfig, space: &Space) -> Result<Self> {
        match cfg.mode {
            SearchMode::Exhaustive => {
                let size = cfg.space_size(&space.ctx);
                if space.ctx.q() > 32 || size > EXHAUSTIVE_LIMIT {
                    return Err(Error::SpaceTooLarge {
                        size,
                        limit: EXHAUSTIVE_LIMIT,
                    });
                }
                Ok(Plan {
                    mode: cfg.mode.clone(),
                    shards: (0..space.shard_count()).collect(),
                    shard_size: space.shard_size(),
                })
            }
            SearchMode::Random { samples, .. } => Ok(Plan {
                mode: cfg.mode.clone(),
                shards: (0..samples.div_ceil(RANDOM_SHARD)).collect(),
                shard_size: RANDOM_SHARD,
            }),
        }
    }

    fn shard_len(&self, shard: u64) -> u64 {
        match self.mode {
            SearchMode::Exhaustive => self.shard_size,
            SearchMode::Random { samples, .. } => {
                (samples - shard * RANDOM_SHARD).min(RANDOM_SHARD)
            }
        }
    }

    fn shard_candidates<'a>(
        &'a self,
        space: &'a Space,
        shard: u64,
    ) -> Box<dyn Iterator<Item = GCoeffs> + 'a> {
        let len = self.shard_len(shard);
        match self.mode {
            SearchMode::Exhaustive => {
                Box::new((0..len).map(move |i| space.exhaustive_candidate(shard, i)))
            }
            SearchMode::Random { seed, .. } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(shard);
                Box::new((0..len).map(move |_| space.random_candidate(&mut rng)))
            }
        }
    }
}

/// Where each candidate left the cascade. `enumerated` is always the sum of
/// the other four fields.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCounters {
    pub enumerated: u64,
    pub rejected_vanishing: u64,
    pub rejected_power_sum: u64,
    pub rejected_consensus: u64,
    pub accepted: u64,
}

impl StageCounters {
    fn merge(&mut self, o: &StageCounters) {
        self.enumerated += o.enumerated;
        self.rejected_vanishing += o.rejected_vanishing;
        self.rejected_power_sum += o.rejected_power_sum;
        self.rejected_consensus += o.rejected_consensus;
        self.accepted += o.accepted;
    }

    pub fn balanced(&self) -> bool {
        self.enumerated
            == self.rejected_vanishing
                + self.rejected_power_sum
                + self.rejected_consensus
                + self.accepted
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub g: GCoeffs,
    pub reports: ConsensusReport,
    /// SHA-256 of the sorted point encodings, as hex.
    pub point_set_digest: String,
    pub shard: u64,
    pub index: u64,
}

/// Everything one shard produced.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShardOutcome {
    pub shard: u64,
    pub counters: StageCounters,
    pub hits: Vec<SearchResult>,
    /// Power-sum rejects kept for geometric re-checking.
    pub rejects: Vec<GCoeffs>,
}

/// Completed shards of an interrupted run.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub completed: BTreeMap<u64, ShardOutcome>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchManifest {
    pub config: SearchConfig,
    pub space_size: u128,
    pub shards: u64,
    pub counters: StageCounters,
    /// Hits dropped because an earlier hit has the same point set.
    pub duplicates: u64,
    /// Power-sum rejects confirmed to be non-hyperovals geometrically.
    pub rejects_rechecked: u64,
    pub hits: Vec<SearchResult>,
}

/// Canonical digest of the point set of `g`.
pub fn point_set_digest(ctx: &FieldCtx, g: &GFunctionTable) -> String {
    let mut codes: Vec<u64> = points_from_g(ctx, g)
        .iter()
        .map(|p| p.encode(ctx.m()))
        .collect();
    codes.sort_unstable();
    let mut hasher = Sha256::new();
    for c in codes {
        hasher.update(c.to_be_bytes());
    }
    hasher
        .finalize()
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

/// Keeps the first result for each point set.
pub fn dedupe(results: Vec<SearchResult>) -> Vec<SearchResult> {
    let mut seen = BTreeSet::new();
    results
        .into_iter()
        .filter(|r| seen.insert(r.point_set_digest.clone()))
        .collect()
}

/// `u^d` for every `u` in `S` and every coset representative `d`.
struct PowerSieve {
    exps: Vec<u64>,
    u_pows: Vec<Vec<KElem>>,
}

impl PowerSieve {
    fn new(ctx: &FieldCtx, exps: &ExponentSets) -> Self {
        let u_pows = exps
            .d_cal
            .iter()
            .map(|&d| ctx.unit_circle().iter().map(|&u| ctx.k_pow(u, d)).collect())
            .collect();
        PowerSieve {
            exps: exps.d_cal.clone(),
            u_pows,
        }
    }

    /// Whether some `pi_d` of `{u/g(u)} ∪ {0}` is nonzero, with `g`
    /// nonvanishing.
    fn rejects(&self, ctx: &FieldCtx, g: &GFunctionTable) -> bool {
        let inv: Vec<FElem> = g
            .values()
            .iter()
            .map(|&v| ctx.f_inv(v).expect("table is nonvanishing"))
            .collect();
        let order = u64::from(ctx.q()) - 1;
        self.exps.iter().zip(&self.u_pows).any(|(&d, pows)| {
            let e = d % order;
            let sum: KElem = pows
                .iter()
                .zip(&inv)
                .map(|(&ud, &gi)| ctx.k_scale(ctx.f_pow(gi, e), ud))
                .sum();
            sum != KElem::ZERO
        })
    }
}

fn run_shard(
    space: &Space,
    plan: &Plan,
    sieve: &PowerSieve,
    keep_rejects: usize,
    shard: u64,
) -> Result<ShardOutcome> {
    let ctx = &space.ctx;
    let mut counters = StageCounters::default();
    let mut hits = Vec::new();
    let mut rejects = Vec::new();
    for (index, g) in plan.shard_candidates(space, shard).enumerate() {
        counters.enumerated += 1;
        let table = g_coeffs_to_table(ctx, &g)?;
        if !table.is_nonvanishing() {
            counters.rejected_vanishing += 1;
            continue;
        }
        if sieve.rejects(ctx, &table) {
            counters.rejected_power_sum += 1;
            if rejects.len() < keep_rejects {
                rejects.push(g);
            }
            continue;
        }
        let reports = verify_all(ctx, &table)?;
        if !reports.verdict {
            counters.rejected_consensus += 1;
            continue;
        }
        counters.accepted += 1;
        hits.push(SearchResult {
            point_set_digest: point_set_digest(ctx, &table),
            g,
            reports,
            shard,
            index: index as u64,
        });
    }
    Ok(ShardOutcome {
        shard,
        counters,
        hits,
        rejects,
    })
}

/// Hooks for long runs.
#[derive(Default)]
pub struct RunOptions<'a> {
    /// Overrides `parallel_shards`.
    pub threads: Option<usize>,
    /// Shards already finished; they are not recomputed.
    pub resume: Option<Checkpoint>,
    /// Called after every shard completes.
    pub on_shard: Option<&'a (dyn Fn(&ShardOutcome) + Sync)>,
}

pub fn run_search(cfg: &SearchConfig) -> Result<SearchManifest> {
    run_search_with(cfg, RunOptions::default())
}

pub fn run_search_with(cfg: &SearchConfig, opts: RunOptions<'_>) -> Result<SearchManifest> {
    let space = Space::new(cfg)?;
    let plan = Plan::new(cfg, &space)?;
    let ctx = &space.ctx;
    let sieve = PowerSieve::new(ctx, &ExponentSets::for_field(ctx));
    let mut done = opts.resume.map(|c| c.completed).unwrap_or_default();
    done.retain(|s, _| plan.shards.contains(s));
    for outcome in done.values_mut() {
        for g in outcome
            .rejects
            .iter_mut()
            .chain(outcome.hits.iter_mut().map(|h| &mut h.g))
        {
            *g = GCoeffs::new(ctx, g.coeffs().to_vec())?;
        }
    }
    let todo: Vec<u64> = plan
        .shards
        .iter()
        .copied()
        .filter(|s| !done.contains_key(s))
        .collect();
    let threads = opts.threads.unwrap_or(cfg.parallel_shards).max(1);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::BadConfig(format!("thread pool: {e}")))?;
    let fresh: Vec<ShardOutcome> = pool.install(|| {
        todo.par_iter()
            .map(|&s| {
                let out = run_shard(&space, &plan, &sieve, cfg.reject_sample, s)?;
                if let Some(cb) = opts.on_shard {
                    cb(&out);
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()
    })?;
    for out in fresh {
        done.insert(out.shard, out);
    }

    let mut counters = StageCounters::default();
    let mut all_hits = Vec::new();
    let mut rejects = Vec::new();
    for out in done.into_values() {
        counters.merge(&out.counters);
        all_hits.extend(out.hits);
        rejects.extend(out.rejects);
    }
    if !counters.balanced() {
        return Err(Error::Defect(format!(
            "stage counters do not add up: {counters:?}"
        )));
    }
    rejects.truncate(cfg.reject_sample);
    for g in &rejects {
        let h = points_from_g(ctx, &g_coeffs_to_table(ctx, g)?);
        if check_geometric(ctx, &h)?.verdict {
            return Err(Error::Defect(format!(
                "power-sum reject {:?} is a hyperoval",
                g.coeffs()
            )));
        }
    }
    let total = all_hits.len();
    let hits = dedupe(all_hits);
    Ok(SearchManifest {
        config: cfg.clone(),
        space_size: match plan.mode {
            SearchMode::Exhaustive => cfg.space_size(ctx),
            SearchMode::Random { samples, .. } => u128::from(samples),
        },
        shards: plan.shards.len() as u64,
        counters,
        duplicates: (total - hits.len()) as u64,
        rejects_rechecked: rejects.len() as u64,
        hits,
    })
}
