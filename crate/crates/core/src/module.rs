//! Finitely presented graded modules and the exact-sequence primitives
//! built on them.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::freemap::GradedFreeMap;
use crate::groebner::{column_basis, kernel_modulo, select_minimal, syzygies, GroebnerBasis};
use crate::poly::{count_monomials, monomials_of_degree, Monomial, Polynomial};
use crate::ring::RingContext;

/// Composition length, possibly infinite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Length {
    Finite(u64),
    Infinite,
}

impl Length {
    pub fn is_finite(&self) -> bool {
        matches!(self, Length::Finite(_))
    }

    pub fn finite(&self) -> Option<u64> {
        match self {
            Length::Finite(n) => Some(*n),
            Length::Infinite => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == Length::Finite(0)
    }
}

impl fmt::Display for Length {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Length::Finite(n) => write!(f, "{n}"),
            Length::Infinite => write!(f, "inf"),
        }
    }
}

/// `M = coker(presentation)`. Rows index generators, columns relations.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    presentation: GradedFreeMap,
    gb: OnceLock<std::result::Result<Arc<GroebnerBasis>, Error>>,
}

impl PartialEq for PresentedModule {
    fn eq(&self, other: &Self) -> bool {
        self.presentation == other.presentation
    }
}

impl PresentedModule {
    pub fn new(presentation: GradedFreeMap) -> Self {
        PresentedModule {
            presentation,
            gb: OnceLock::new(),
        }
    }

    /// The free module with basis in the given degrees.
    pub fn free(ring: Arc<RingContext>, degrees: Vec<i32>) -> Self {
        Self::new(GradedFreeMap::zero(ring, degrees, Vec::new()))
    }

    pub fn zero(ring: Arc<RingContext>) -> Self {
        Self::free(ring, Vec::new())
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        self.presentation.ring()
    }

    pub fn presentation(&self) -> &GradedFreeMap {
        &self.presentation
    }

    pub fn num_generators(&self) -> usize {
        self.presentation.rows()
    }

    pub fn generator_degrees(&self) -> &[i32] {
        self.presentation.target_degrees()
    }

    pub fn num_relations(&self) -> usize {
        self.presentation.cols()
    }

    /// Gröbner basis of the relation submodule, computed once.
    pub fn gb(&self) -> Result<&GroebnerBasis> {
        self.gb
            .get_or_init(|| column_basis(&self.presentation).map(Arc::new))
            .as_ref()
            .map(|g| g.as_ref())
            .map_err(Clone::clone)
    }

    /// Positions whose generator survives (no unit among the leading terms).
    fn live_positions(&self) -> Result<Vec<(usize, Vec<Monomial>)>> {
        let gb = self.gb()?;
        Ok((0..self.num_generators())
            .map(|i| (i, gb.leading_monomials(i)))
            .filter(|(_, l)| !l.iter().any(|m| m.is_one()))
            .collect())
    }

    pub fn is_zero(&self) -> Result<bool> {
        Ok(self.live_positions()?.is_empty())
    }

    /// `dim_k M_d` for `lo <= d <= hi`.
    pub fn hilbert_range(&self, lo: i32, hi: i32) -> Result<Vec<u64>> {
        let n = self.ring().nvars();
        let shifts = self.generator_degrees().to_vec();
        let live = self.live_positions()?;
        let mut out = Vec::new();
        for d in lo..=hi {
            let mut total = 0u64;
            for (i, leads) in &live {
                let e = d as i64 - shifts[*i] as i64;
                if e < 0 {
                    continue;
                }
                total += count_standard(n, e as u32, leads);
            }
            out.push(total);
        }
        Ok(out)
    }

    /// `dim_k M_d` for `0 <= d <= d_max`.
    pub fn hilbert_function(&self, d_max: i32) -> Result<Vec<u64>> {
        self.hilbert_range(0, d_max)
    }

    /// Finite exactly when every surviving generator position has a pure
    /// power of each variable among its leading monomials.
    pub fn length(&self) -> Result<Length> {
        let n = self.ring().nvars();
        let live = self.live_positions()?;
        let mut total = 0u64;
        for (i, leads) in &live {
            let mut top = 0u32;
            for v in 0..n {
                let best = leads
                    .iter()
                    .filter_map(|m| m.pure_power().filter(|(x, _)| *x == v).map(|(_, e)| e))
                    .min();
                match best {
                    Some(e) => top += e - 1,
                    None => return Ok(Length::Infinite),
                }
            }
            for e in 0..=top {
                total += count_standard(n, e, leads);
            }
            let _ = i;
        }
        Ok(Length::Finite(total))
    }

    /// Krull dimension; `None` for the zero module.
    pub fn krull_dim(&self) -> Result<Option<usize>> {
        let n = self.ring().nvars();
        let live = self.live_positions()?;
        let mut best: Option<usize> = None;
        for (_, leads) in &live {
            let supports: Vec<u8> = leads.iter().map(|m| m.support()).collect();
            for mask in 0u32..(1 << n) {
                let mask = mask as u8;
                if supports.iter().all(|s| s & !mask != 0) {
                    let size = mask.count_ones() as usize;
                    best = Some(best.map_or(size, |b| b.max(size)));
                }
            }
        }
        Ok(best)
    }

    /// Smallest degree where the module can be nonzero.
    pub fn min_generator_degree(&self) -> Option<i32> {
        self.generator_degrees().iter().copied().min()
    }

    /// Equivalent presentation without unit entries and with a minimal set
    /// of relations; zero columns are dropped.
    pub fn prune(&self) -> Result<PresentedModule> {
        let mut p = self.presentation.without_zero_columns();
        while let Some((r, c)) = p.unit_entry() {
            p = p.cancel_unit(r, c).without_zero_columns();
        }
        if p.cols() > 1 {
            let cols = p.columns();
            let keep = select_minimal(p.ring(), p.target_degrees(), &[], &cols)?;
            if keep.len() < p.cols() {
                let mut keep = keep;
                keep.sort_unstable();
                p = p.select_columns(&keep);
            }
        }
        Ok(PresentedModule::new(p))
    }

    /// `M(d)`: every degree lowered by `d`.
    pub fn twist(&self, d: i32) -> PresentedModule {
        PresentedModule::new(self.presentation.twist(-d))
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> PresentedModule {
        PresentedModule::new(self.presentation.direct_sum(&other.presentation))
    }

    /// The same module regarded over the ambient regular ring: the
    /// presentation gains the columns `f·e_j`.
    pub fn as_ambient_module(&self) -> PresentedModule {
        let ring = self.ring();
        let q = ring.ambient();
        let p = self.presentation.over_ring(q.clone());
        match ring.hypersurface_equation() {
            None => PresentedModule::new(p),
            Some(f) => {
                let degs = self.generator_degrees().to_vec();
                let d = ring.hypersurface_degree().unwrap_or(0) as i32;
                let src = degs.iter().map(|x| x + d).collect();
                let cols: Vec<Vec<Polynomial>> = (0..degs.len())
                    .map(|j| {
                        (0..degs.len())
                            .map(|i| if i == j { f.clone() } else { Polynomial::zero(q.nvars()) })
                            .collect()
                    })
                    .collect();
                let fi = GradedFreeMap::from_columns_unchecked(q, degs, src, cols);
                PresentedModule::new(p.hstack(&fi).expect("common target"))
            }
        }
    }

    /// `M ⊗ N`, presented by `[pM ⊗ 1 | 1 ⊗ pN]` on the products of the
    /// generators (index `a * rank N + b`).
    pub fn tensor(&self, other: &PresentedModule) -> Result<PresentedModule> {
        if !self.ring().same_ring(other.ring()) {
            return Err(Error::RingMismatch);
        }
        let a = self.presentation.kron_identity(other.generator_degrees());
        let b = other.presentation.identity_kron(self.generator_degrees());
        Ok(PresentedModule::new(a.hstack(&b)?))
    }

    /// Membership of a generator-space column in the relation submodule.
    pub fn is_relation(&self, column: &[Polynomial]) -> Result<bool> {
        Ok(self.gb()?.contains(column))
    }
}

/// Standard monomials of degree `d` outside the monomial ideal `leads`.
fn count_standard(nvars: usize, d: u32, leads: &[Monomial]) -> u64 {
    if leads.is_empty() {
        return count_monomials(nvars, d as i64);
    }
    monomials_of_degree(nvars, d)
        .iter()
        .filter(|m| !leads.iter().any(|l| l.divides(m)))
        .count() as u64
}

/// `coker(m)`.
pub fn cokernel(m: &GradedFreeMap) -> PresentedModule {
    PresentedModule::new(m.clone())
}

/// `ker(m)` for a map of free modules, presented by the syzygies of a
/// minimal generating set.
pub fn kernel(m: &GradedFreeMap) -> Result<PresentedModule> {
    let gens = syzygies(m)?;
    let rels = syzygies(&gens)?;
    Ok(PresentedModule::new(rels))
}

/// Transpose with negated degree vectors.
pub fn dual_map(m: &GradedFreeMap) -> GradedFreeMap {
    m.dual()
}

/// A homomorphism of presented modules given on generators: column `j` of
/// `matrix` is the image of generator `j` of `source`.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    pub source: PresentedModule,
    pub target: PresentedModule,
    pub matrix: GradedFreeMap,
}

impl ModuleMap {
    pub fn new(source: PresentedModule, target: PresentedModule, matrix: GradedFreeMap) -> Result<Self> {
        if matrix.source_degrees() != source.generator_degrees()
            || matrix.target_degrees() != target.generator_degrees()
        {
            return Err(Error::Shape("map does not match the generator degrees".into()));
        }
        Ok(ModuleMap { source, target, matrix })
    }

    pub fn zero(source: PresentedModule, target: PresentedModule) -> Self {
        let matrix = GradedFreeMap::zero(
            source.ring().clone(),
            target.generator_degrees().to_vec(),
            source.generator_degrees().to_vec(),
        );
        ModuleMap { source, target, matrix }
    }

    /// Whether the map is zero as a map of modules.
    pub fn is_zero(&self) -> Result<bool> {
        let gb = self.target.gb()?;
        Ok(self.matrix.columns().iter().all(|c| gb.contains(c)))
    }
}

/// `m ⊗ N : F_src ⊗ N → F_tgt ⊗ N`, acting on `N^{cols} → N^{rows}`.
pub fn tensor_with(m: &GradedFreeMap, n: &PresentedModule) -> ModuleMap {
    let np = n.presentation();
    let source = PresentedModule::new(np.identity_kron(m.source_degrees()));
    let target = PresentedModule::new(np.identity_kron(m.target_degrees()));
    let matrix = m.kron_identity(n.generator_degrees());
    ModuleMap { source, target, matrix }
}

/// `Hom(m, N) : Hom(F_tgt, N) → Hom(F_src, N)`, built from the dual of `m`.
pub fn hom_into(m: &GradedFreeMap, n: &PresentedModule) -> ModuleMap {
    tensor_with(&m.dual(), n)
}

/// Homology `ker(outgoing) / im(incoming)` at the middle module.
pub fn homology_at(incoming: &ModuleMap, outgoing: &ModuleMap) -> Result<PresentedModule> {
    let y = &incoming.target;
    if y.presentation() != outgoing.source.presentation() {
        return Err(Error::Shape("maps do not meet at a common module".into()));
    }
    let ring = y.ring().clone();
    let alpha = &incoming.matrix;
    let beta = &outgoing.matrix;
    let pz = outgoing.target.presentation();
    let py = y.presentation();

    let comp = beta.compose(alpha)?;
    let zgb = outgoing.target.gb()?;
    if comp.columns().iter().any(|c| !zgb.contains(c)) {
        return Err(Error::NotAComplex);
    }

    // cycles, as elements of the free cover of Y
    let cycles = kernel_modulo(beta, Some(pz))?;
    let bounds = alpha.hstack(py)?;
    let keep = select_minimal(&ring, py.target_degrees(), &bounds.columns(), &cycles.columns())?;
    let k = cycles.select_columns(&keep);
    let rel = kernel_modulo(&k, Some(&bounds))?;
    PresentedModule::new(rel).prune()
}
