use std::ops::RangeInclusive;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::freemap::GradedFreeMap;
use crate::invariants::{depth_and_dim, grade};
use crate::module::{cokernel, PresentedModule};
use crate::poly::{monomials_of_degree, Monomial, MonomialOrder, PolyRing, Polynomial};
use crate::resolution::resolution_prefix;
use crate::ring::RingContext;

const VAR_NAMES: [&str; 8] = ["x", "y", "z", "w", "u", "v", "s", "t"];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomShape {
    Generic,
    /// Pure powers of every variable are added to the relations.
    FiniteLength,
    /// Resampled until `grade M ≥ min_grade` (at least 1).
    PositiveGrade { min_grade: usize },
    /// Resampled until depth equals dimension.
    CohenMacaulay,
    /// The `k`-th syzygy module of a generic module.
    SyzygyDerived { k: usize },
}

#[derive(Clone, Debug)]
pub struct RandomModuleSpec {
    pub seed: u64,
    pub ring: Arc<RingContext>,
    pub generators: RangeInclusive<usize>,
    pub relations: RangeInclusive<usize>,
    pub entry_degrees: RangeInclusive<u32>,
    pub shape: RandomShape,
    pub resample_budget: usize,
}

impl RandomModuleSpec {
    pub fn new(seed: u64, ring: Arc<RingContext>, shape: RandomShape) -> Self {
        RandomModuleSpec {
            seed,
            ring,
            generators: 1..=2,
            relations: 1..=3,
            entry_degrees: 1..=2,
            shape,
            resample_budget: 40,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingFamily {
    Regular { nvars: usize },
    Hypersurface { nvars: usize, degree: u32 },
}

impl RingFamily {
    /// A ring of this family; the hypersurface equation is drawn from `rng`.
    pub fn sample(&self, prime: u64, rng: &mut ChaCha8Rng) -> Result<Arc<RingContext>> {
        match *self {
            RingFamily::Regular { nvars } => {
                let poly = PolyRing::new(prime, &VAR_NAMES[..nvars], MonomialOrder::DegRevLex)?;
                Ok(RingContext::regular(poly))
            }
            RingFamily::Hypersurface { nvars, degree } => {
                let poly = PolyRing::new(prime, &VAR_NAMES[..nvars], MonomialOrder::DegRevLex)?;
                let f = random_form(&poly, degree, rng);
                RingContext::hypersurface(poly, f)
            }
        }
    }
}

fn random_coefficient(poly: &PolyRing, rng: &mut ChaCha8Rng) -> u32 {
    rng.gen_range(1..poly.field().characteristic())
}

/// A nonzero form of degree `d` with each monomial present with
/// probability one half.
fn random_form(poly: &PolyRing, d: u32, rng: &mut ChaCha8Rng) -> Polynomial {
    let monos = monomials_of_degree(poly.nvars(), d);
    let mut terms: Vec<(Monomial, u32)> = Vec::new();
    for m in &monos {
        if rng.gen_bool(0.5) {
            terms.push((*m, random_coefficient(poly, rng)));
        }
    }
    if terms.is_empty() {
        let m = *monos.choose(rng).expect("at least one monomial");
        terms.push((m, random_coefficient(poly, rng)));
    }
    poly.from_terms(terms)
}

fn draw_generic(spec: &RandomModuleSpec, rng: &mut ChaCha8Rng) -> Result<GradedFreeMap> {
    let ring = &spec.ring;
    let poly = ring.poly();
    let r = rng.gen_range(spec.generators.clone()).max(1);
    let c = rng.gen_range(spec.relations.clone());
    let degrees: Vec<i32> = (0..r).map(|i| if i == 0 { 0 } else { rng.gen_range(0..=1) }).collect();
    let mut columns = Vec::new();
    let mut source = Vec::new();
    while columns.len() < c {
        let anchor = degrees[rng.gen_range(0..r)];
        let e = rng.gen_range(spec.entry_degrees.clone()).max(1) as i32;
        let d = anchor + e;
        let mut col = Vec::with_capacity(r);
        for &gd in &degrees {
            let k = d - gd;
            if k >= 1 && rng.gen_bool(0.7) {
                col.push(ring.reduce(&random_form(poly, k as u32, rng)));
            } else {
                col.push(poly.zero());
            }
        }
        if col.iter().all(|p| p.is_zero()) {
            continue;
        }
        columns.push(col);
        source.push(d);
    }
    GradedFreeMap::from_columns(ring.clone(), degrees, source, columns)
}

/// Adds `x_v^k e_i` for every variable and generator.
fn with_powers(m: &GradedFreeMap, k: u32) -> Result<GradedFreeMap> {
    let ring = m.ring().clone();
    let poly = ring.poly();
    let degrees = m.target_degrees().to_vec();
    let mut columns = m.columns();
    let mut source = m.source_degrees().to_vec();
    for (i, &gd) in degrees.iter().enumerate() {
        for v in 0..ring.nvars() {
            let mut col = vec![poly.zero(); degrees.len()];
            col[i] = ring.reduce(&poly.pow(&poly.var(v), k));
            columns.push(col);
            source.push(gd + k as i32);
        }
    }
    GradedFreeMap::from_columns(ring, degrees, source, columns)
}

fn draw(spec: &RandomModuleSpec, shape: RandomShape, rng: &mut ChaCha8Rng) -> Result<Option<PresentedModule>> {
    let base = draw_generic(spec, rng)?;
    let m = match shape {
        RandomShape::FiniteLength => {
            let k = spec.entry_degrees.end() + 1;
            cokernel(&with_powers(&base, k)?)
        }
        RandomShape::SyzygyDerived { k } => {
            let res = resolution_prefix(&cokernel(&base), k + 1)?;
            match res.differential(k + 1) {
                Some(d) => cokernel(d),
                None => match res.degrees(k) {
                    Some(d) if !d.is_empty() => PresentedModule::free(spec.ring.clone(), d.to_vec()),
                    _ => return Ok(None),
                },
            }
        }
        _ => cokernel(&base),
    };
    if m.is_zero()? {
        return Ok(None);
    }
    let ok = match shape {
        RandomShape::PositiveGrade { min_grade } => grade(&m)? >= min_grade.max(1),
        RandomShape::CohenMacaulay => {
            let (depth, dim) = depth_and_dim(&m)?;
            depth == dim
        }
        _ => true,
    };
    Ok(ok.then_some(m))
}

/// Deterministic random module: the same spec and seed always give the
/// same presentation.
pub fn generate_module(spec: &RandomModuleSpec) -> Result<PresentedModule> {
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    generate_with(spec, &mut rng)
}

pub(crate) fn generate_with(spec: &RandomModuleSpec, rng: &mut ChaCha8Rng) -> Result<PresentedModule> {
    for _ in 0..spec.resample_budget.max(1) {
        if let Some(m) = draw(spec, spec.shape, rng)? {
            return Ok(m);
        }
    }
    Err(Error::Shaping(spec.resample_budget))
}
