use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::checks::{
    check_chi_positivity, check_ext_rigidity, check_finite_length_vanishing, check_grade_drop, check_jothilingam,
    check_ext_tor_duality, check_self_ext_nonvanishing, check_tor_rigidity_theta, check_xi_chi_bridge,
};
use super::random::{generate_with, RandomModuleSpec, RandomShape, RingFamily};
use super::{CheckStatus, CheckVerdict, VerdictBuilder};
use crate::error::{Error, Result};
use crate::freemap::GradedFreeMap;
use crate::module::{cokernel, PresentedModule};
use crate::resolution::default_length_cap;
use crate::ring::{make_ring, RingContext};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CampaignKind {
    ExtRigidity,
    SelfExt,
    TorRigidity,
    ExtTor,
    GradeDrop,
    XiChi,
    Jothilingam,
    ChiPositivity,
    FiniteLengthVanishing,
}

impl CampaignKind {
    pub const ALL: [CampaignKind; 9] = [
        CampaignKind::ExtRigidity,
        CampaignKind::SelfExt,
        CampaignKind::TorRigidity,
        CampaignKind::ExtTor,
        CampaignKind::GradeDrop,
        CampaignKind::XiChi,
        CampaignKind::Jothilingam,
        CampaignKind::ChiPositivity,
        CampaignKind::FiniteLengthVanishing,
    ];

    /// Accepts every check name, plus `rigidity` for `ext_rigidity`.
    pub fn from_name(name: &str) -> Option<Self> {
        if name == "rigidity" {
            return Some(CampaignKind::ExtRigidity);
        }
        Self::ALL.into_iter().find(|k| k.name() == name)
    }

    pub fn name(&self) -> &'static str {
        match self {
            CampaignKind::ExtRigidity => "ext_rigidity",
            CampaignKind::SelfExt => "self_ext",
            CampaignKind::TorRigidity => "tor_rigidity",
            CampaignKind::ExtTor => "ext_tor",
            CampaignKind::GradeDrop => "grade_drop",
            CampaignKind::XiChi => "xi_chi",
            CampaignKind::Jothilingam => "jothilingam",
            CampaignKind::ChiPositivity => "chi_positivity",
            CampaignKind::FiniteLengthVanishing => "finite_length_vanishing",
        }
    }

    fn over_hypersurfaces(&self) -> bool {
        matches!(
            self,
            CampaignKind::ExtRigidity
                | CampaignKind::SelfExt
                | CampaignKind::TorRigidity
                | CampaignKind::GradeDrop
                | CampaignKind::FiniteLengthVanishing
        )
    }
}

#[derive(Clone, Debug)]
pub struct CampaignConfig {
    pub trials: usize,
    pub seed: u64,
    pub prime: u64,
    /// Fixes the ring for every trial instead of sampling one.
    pub ring: Option<Arc<RingContext>>,
    pub degree_cap: Option<u32>,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        CampaignConfig {
            trials: 200,
            seed: 0,
            prime: 32003,
            ring: None,
            degree_cap: None,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CampaignSummary {
    pub pass: usize,
    pub fail: usize,
    pub inapplicable: usize,
    pub inconclusive: usize,
    pub genuine: usize,
    pub negative_controls: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub name: String,
    pub seed: u64,
    pub trials: usize,
    pub summary: CampaignSummary,
    pub verdicts: Vec<CheckVerdict>,
}

impl CampaignReport {
    pub fn failures(&self) -> impl Iterator<Item = &CheckVerdict> {
        self.verdicts.iter().filter(|v| v.status == CheckStatus::Fail)
    }
}

fn trial_seed(seed: u64, trial: usize) -> u64 {
    seed ^ (trial as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15)
}

fn module(ring: &Arc<RingContext>, shape: RandomShape, rng: &mut ChaCha8Rng) -> Result<PresentedModule> {
    let spec = RandomModuleSpec::new(0, ring.clone(), shape);
    generate_with(&spec, rng)
}

/// 40% finite length, 30% syzygies, 30% generic.
fn mixed_shape(ring: &RingContext, rng: &mut ChaCha8Rng) -> RandomShape {
    let r: f64 = rng.gen();
    if r < 0.4 {
        RandomShape::FiniteLength
    } else if r < 0.7 {
        RandomShape::SyzygyDerived { k: rng.gen_range(1..=ring.dim().max(1)) }
    } else {
        RandomShape::Generic
    }
}

/// 60% syzygies of order `dim R`, 20% generic, 20% finite length.
fn syzygy_heavy_shape(ring: &RingContext, rng: &mut ChaCha8Rng) -> RandomShape {
    let r: f64 = rng.gen();
    if r < 0.6 {
        RandomShape::SyzygyDerived { k: ring.dim().max(1) }
    } else if r < 0.8 {
        RandomShape::Generic
    } else {
        RandomShape::FiniteLength
    }
}

/// `R/(ℓ_1, …, ℓ_k)` for random linear forms, a complete intersection of
/// projective dimension `k` when the forms are general.
fn linear_quotient(ring: &Arc<RingContext>, k: usize, rng: &mut ChaCha8Rng) -> Result<PresentedModule> {
    let poly = ring.poly();
    let p = poly.field().characteristic();
    let row: Vec<_> = (0..k)
        .map(|_| {
            let terms = (0..ring.nvars()).map(|v| (crate::poly::Monomial::var(v), rng.gen_range(1..p)));
            ring.reduce(&poly.from_terms(terms))
        })
        .collect();
    Ok(cokernel(&GradedFreeMap::new(ring.clone(), vec![0], vec![1; k], vec![row])?))
}

/// The pair `(R/x, R/y)` over `F_p[x,y]/(xy)`.
fn theta_control(prime: u64) -> Result<(PresentedModule, PresentedModule)> {
    let r = make_ring(prime, &["x", "y"], Some("x*y"))?;
    let cyclic = |v: usize| -> Result<PresentedModule> {
        Ok(cokernel(&GradedFreeMap::new(r.clone(), vec![0], vec![1], vec![vec![r.poly().var(v)]])?))
    };
    Ok((cyclic(0)?, cyclic(1)?))
}

fn trial_body(kind: CampaignKind, ring: &Arc<RingContext>, rng: &mut ChaCha8Rng) -> Result<CheckVerdict> {
    match kind {
        CampaignKind::ExtRigidity => {
            let s = mixed_shape(ring, rng);
            let m = module(ring, s, rng)?;
            let s = syzygy_heavy_shape(ring, rng);
            let n = module(ring, s, rng)?;
            check_ext_rigidity(&m, &n, ring.nvars())
        }
        CampaignKind::SelfExt => {
            let s = if rng.gen_bool(0.5) {
                RandomShape::FiniteLength
            } else {
                RandomShape::PositiveGrade { min_grade: 1 }
            };
            check_self_ext_nonvanishing(&module(ring, s, rng)?)
        }
        CampaignKind::TorRigidity => {
            let m = if rng.gen_bool(0.6) {
                let k = rng.gen_range(1..=ring.dim().max(1));
                linear_quotient(ring, k, rng)?
            } else {
                let s = mixed_shape(ring, rng);
                module(ring, s, rng)?
            };
            let s = if rng.gen_bool(0.5) { RandomShape::Generic } else { RandomShape::FiniteLength };
            let n = module(ring, s, rng)?;
            check_tor_rigidity_theta(&m, &n, ring.nvars() + 3)
        }
        CampaignKind::ExtTor => {
            let s = if rng.gen_bool(0.5) {
                RandomShape::FiniteLength
            } else {
                RandomShape::PositiveGrade { min_grade: 2 }
            };
            let m = module(ring, s, rng)?;
            let s = if rng.gen_bool(0.7) { RandomShape::Generic } else { RandomShape::FiniteLength };
            let n = module(ring, s, rng)?;
            check_ext_tor_duality(&m, &n)
        }
        CampaignKind::GradeDrop => {
            let s = mixed_shape(ring, rng);
            check_grade_drop(&module(ring, s, rng)?)
        }
        CampaignKind::XiChi => {
            let m = module(ring, RandomShape::FiniteLength, rng)?;
            let s = if rng.gen_bool(0.7) { RandomShape::Generic } else { RandomShape::FiniteLength };
            let n = module(ring, s, rng)?;
            check_xi_chi_bridge(&m, &n, None)
        }
        CampaignKind::ChiPositivity => {
            let m = module(ring, RandomShape::FiniteLength, rng)?;
            let n = module(ring, RandomShape::Generic, rng)?;
            check_chi_positivity(&m, &n)
        }
        CampaignKind::Jothilingam => {
            let s = if rng.gen_bool(0.5) {
                RandomShape::FiniteLength
            } else {
                RandomShape::PositiveGrade { min_grade: 1 }
            };
            let m = module(ring, s, rng)?;
            let r: f64 = rng.gen();
            let n = if r < 0.5 {
                let k = rng.gen_range(1..ring.nvars().max(2));
                module(ring, RandomShape::SyzygyDerived { k }, rng)?
            } else if r < 0.7 {
                PresentedModule::free(ring.clone(), vec![0])
            } else {
                module(ring, RandomShape::Generic, rng)?
            };
            check_jothilingam(&m, &n, None)
        }
        CampaignKind::FiniteLengthVanishing => {
            let m = module(ring, RandomShape::FiniteLength, rng)?;
            let s = syzygy_heavy_shape(ring, rng);
            let n = module(ring, s, rng)?;
            check_finite_length_vanishing(&m, &n)
        }
    }
}

fn run_trial(kind: CampaignKind, config: &CampaignConfig, trial: usize) -> CheckVerdict {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(config.seed, trial));
    let outcome = (|| -> Result<(Arc<RingContext>, Result<CheckVerdict>)> {
        if kind == CampaignKind::TorRigidity && config.ring.is_none() && trial == 0 {
            let (m, n) = theta_control(config.prime)?;
            let ring = m.ring().clone();
            return Ok((ring, check_tor_rigidity_theta(&m, &n, 5)));
        }
        let ring = match &config.ring {
            Some(r) => r.clone(),
            None => {
                let nvars = if rng.gen_bool(2.0 / 3.0) { 3 } else { 2 };
                let family = if kind.over_hypersurfaces() {
                    RingFamily::Hypersurface { nvars, degree: rng.gen_range(2..=3) }
                } else {
                    RingFamily::Regular { nvars }
                };
                family.sample(config.prime, &mut rng)?
            }
        };
        let ring = match config.degree_cap {
            Some(cap) => ring.with_degree_cap(cap),
            None => ring,
        };
        Ok((ring.clone(), trial_body(kind, &ring, &mut rng)))
    })();
    let mut verdict = match outcome {
        Ok((_, Ok(v))) => v,
        Ok((ring, Err(e))) => error_verdict(kind, ring, e),
        Err(e) => {
            let fallback = make_ring(config.prime, &["x"], None).expect("valid prime checked by caller");
            error_verdict(kind, fallback, e)
        }
    };
    verdict.provenance.seed = Some(config.seed);
    verdict.provenance.trial = Some(trial as u64);
    verdict
}

fn error_verdict(kind: CampaignKind, ring: Arc<RingContext>, e: Error) -> CheckVerdict {
    let cap = default_length_cap(&ring);
    let mut vb = VerdictBuilder::bare(kind.name(), ring, cap);
    vb.set("reason", e.to_string());
    let status = match e {
        Error::Shaping(_) | Error::Inconclusive(_) | Error::DegreeCap { .. } => CheckStatus::Inconclusive,
        _ => CheckStatus::Fail,
    };
    vb.finish(status)
}

/// Runs `config.trials` independent trials in parallel. Verdicts are
/// returned in trial order, so the report does not depend on scheduling.
pub fn run_campaign(kind: CampaignKind, config: &CampaignConfig) -> Result<CampaignReport> {
    // validates the prime before any trial runs
    make_ring(config.prime, &["x"], None)?;
    let verdicts: Vec<CheckVerdict> = (0..config.trials)
        .into_par_iter()
        .map(|t| run_trial(kind, config, t))
        .collect();
    let mut summary = CampaignSummary::default();
    for v in &verdicts {
        match v.status {
            CheckStatus::Pass => summary.pass += 1,
            CheckStatus::Fail => summary.fail += 1,
            CheckStatus::Inapplicable => summary.inapplicable += 1,
            CheckStatus::Inconclusive => summary.inconclusive += 1,
        }
        if v.is_genuine() {
            summary.genuine += 1;
        }
        if v.datum("negative_control") == Some(&Value::Bool(true)) {
            summary.negative_controls += 1;
        }
    }
    Ok(CampaignReport {
        name: kind.name().to_string(),
        seed: config.seed,
        trials: config.trials,
        summary,
        verdicts,
    })
}
