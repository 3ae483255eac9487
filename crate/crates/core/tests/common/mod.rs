//! Shared helpers for integration tests, including a dense degreewise
//! oracle for Hilbert functions that uses no Gröbner bases.

#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use extrigid::audit::AuditRecord;
use extrigid::freemap::GradedFreeMap;
use extrigid::module::{cokernel, ModuleMap, PresentedModule};
use extrigid::poly::Polynomial;
use extrigid::ring::RingContext;

pub fn cyclic(ring: &Arc<RingContext>, gens: &[&str]) -> PresentedModule {
    let row: Vec<Polynomial> = gens.iter().map(|g| ring.parse(g).unwrap()).collect();
    let degs = row.iter().map(|p| p.homogeneous_degree().unwrap() as i32).collect();
    cokernel(&GradedFreeMap::new(ring.clone(), vec![0], degs, vec![row]).unwrap())
}

/// All exponent vectors of total degree `d` in `n` variables.
fn exponent_vectors(n: usize, d: i64) -> Vec<Vec<u32>> {
    if d < 0 {
        return Vec::new();
    }
    if n == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in exponent_vectors(n - 1, d - first) {
            rest.insert(0, first as u32);
            out.push(rest);
        }
    }
    out
}

/// Row-echelon accumulator over F_p.
struct Span {
    p: u64,
    rows: Vec<(usize, Vec<u64>)>,
}

impl Span {
    fn new(p: u64) -> Self {
        Span { p, rows: Vec::new() }
    }

    fn inv(&self, a: u64) -> u64 {
        let (mut r, mut b, mut e) = (1u64, a % self.p, self.p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % self.p;
            }
            b = b * b % self.p;
            e >>= 1;
        }
        r
    }

    fn insert(&mut self, mut v: Vec<u64>) {
        let p = self.p;
        for (pc, row) in &self.rows {
            let c = v[*pc];
            if c != 0 {
                for (x, y) in v.iter_mut().zip(row) {
                    *x = (*x + p - c * y % p) % p;
                }
            }
        }
        if let Some(pc) = v.iter().position(|&x| x != 0) {
            let s = self.inv(v[pc]);
            for x in v.iter_mut() {
                *x = *x * s % p;
            }
            self.rows.push((pc, v));
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Basis of the degree-`d` part of a free module over the ambient
/// polynomial ring: pairs (generator, exponent vector).
struct Graded {
    index: HashMap<(usize, Vec<u32>), usize>,
    len: usize,
}

impl Graded {
    fn new(n: usize, degrees: &[i32], d: i32) -> Self {
        let mut index = HashMap::new();
        for (i, &g) in degrees.iter().enumerate() {
            for e in exponent_vectors(n, (d - g) as i64) {
                let k = index.len();
                index.insert((i, e), k);
            }
        }
        let len = index.len();
        Graded { index, len }
    }
}

struct Ctx {
    n: usize,
    p: u64,
    f: Option<Polynomial>,
}

impl Ctx {
    fn of(ring: &RingContext) -> Self {
        Ctx {
            n: ring.nvars(),
            p: ring.characteristic() as u64,
            f: ring.hypersurface_equation().cloned(),
        }
    }

    /// `μ · Σ_i column[i] e_i` as a dense vector in `basis`.
    fn image(&self, mu: &[u32], column: &[&Polynomial], basis: &Graded) -> Vec<u64> {
        let mut v = vec![0u64; basis.len];
        for (i, poly) in column.iter().enumerate() {
            for (m, c) in poly.terms() {
                let e: Vec<u32> = (0..self.n).map(|k| m.exponent(k) + mu[k]).collect();
                let k = basis.index[&(i, e)];
                v[k] = (v[k] + *c as u64) % self.p;
            }
        }
        v
    }

    /// Generators of the relation subspace of `coker(pres)` in degree `d`,
    /// including `f` times every basis element over a hypersurface.
    fn relations(&self, pres: &GradedFreeMap, d: i32, basis: &Graded, span: &mut Span) {
        let rows = pres.rows();
        for j in 0..pres.cols() {
            let col: Vec<&Polynomial> = (0..rows).map(|i| pres.entry(i, j)).collect();
            if col.iter().all(|p| p.is_zero()) {
                continue;
            }
            for mu in exponent_vectors(self.n, (d - pres.source_degrees()[j]) as i64) {
                span.insert(self.image(&mu, &col, basis));
            }
        }
        if let Some(f) = &self.f {
            let df = f.homogeneous_degree().unwrap() as i32;
            let zero = Polynomial::zero(self.n);
            for i in 0..rows {
                let mut col: Vec<&Polynomial> = vec![&zero; rows];
                col[i] = f;
                for mu in exponent_vectors(self.n, (d - pres.target_degrees()[i] - df) as i64) {
                    span.insert(self.image(&mu, &col, basis));
                }
            }
        }
    }

    /// Images of every basis vector of the source free module under `map`.
    fn map_images(&self, map: &GradedFreeMap, d: i32, target: &Graded, span: &mut Span) {
        let rows = map.rows();
        for j in 0..map.cols() {
            let col: Vec<&Polynomial> = (0..rows).map(|i| map.entry(i, j)).collect();
            for mu in exponent_vectors(self.n, (d - map.source_degrees()[j]) as i64) {
                span.insert(self.image(&mu, &col, target));
            }
        }
    }
}

/// `dim_k M_d` by linear algebra on the monomial basis.
pub fn module_dim(m: &PresentedModule, d: i32) -> u64 {
    let ctx = Ctx::of(m.ring());
    let basis = Graded::new(ctx.n, m.generator_degrees(), d);
    let mut span = Span::new(ctx.p);
    ctx.relations(m.presentation(), d, &basis, &mut span);
    (basis.len - span.rank()) as u64
}

/// `dim_k` of `ker(β) / im(α)` in degree `d` for `α : A → B`, `β : B → C`:
/// `dim V_B − (rank[β V_B; U_C] − rank U_C) − rank[α V_A; U_B]`.
pub fn homology_dim(incoming: &ModuleMap, outgoing: &ModuleMap, d: i32) -> u64 {
    let ctx = Ctx::of(incoming.target.ring());
    let b = &incoming.target;
    let c = &outgoing.target;
    let vb = Graded::new(ctx.n, b.generator_degrees(), d);
    let vc = Graded::new(ctx.n, c.generator_degrees(), d);

    let mut uc = Span::new(ctx.p);
    ctx.relations(c.presentation(), d, &vc, &mut uc);
    let rank_uc = uc.rank();
    ctx.map_images(&outgoing.matrix, d, &vc, &mut uc);
    let rank_beta = uc.rank() - rank_uc;

    let mut ub = Span::new(ctx.p);
    ctx.relations(b.presentation(), d, &vb, &mut ub);
    ctx.map_images(&incoming.matrix, d, &vb, &mut ub);

    (vb.len - rank_beta - ub.rank()) as u64
}

/// Degrees at which an audited homology module is compared: the first
/// four degrees of the middle module and the first three at the result's
/// lowest generator.
pub fn audit_degrees(rec: &AuditRecord<'_>) -> Vec<i32> {
    let mut ds = Vec::new();
    if let Some(lo) = rec.incoming.target.generator_degrees().iter().min() {
        ds.extend(*lo..*lo + 4);
    }
    if let Some(g) = rec.result.min_generator_degree() {
        ds.extend(g..g + 3);
    }
    ds.sort_unstable();
    ds.dedup();
    ds
}

/// Compares the engine's Hilbert function of an audited module with the
/// oracle. `None` when the module is out of scope (a generator above
/// degree 6).
pub fn audit(rec: &AuditRecord<'_>) -> Option<Result<(), String>> {
    if rec.result.generator_degrees().iter().any(|&g| g > 6) {
        return None;
    }
    for d in audit_degrees(rec) {
        let engine = rec.result.hilbert_range(d, d).map(|v| v[0]);
        let oracle = homology_dim(rec.incoming, rec.outgoing, d);
        match engine {
            Ok(e) if e == oracle => {}
            Ok(e) => {
                return Some(Err(format!(
                    "{:?}_{} degree {d}: engine {e}, oracle {oracle}",
                    rec.kind, rec.index
                )))
            }
            Err(err) => return Some(Err(format!("engine error {err}"))),
        }
    }
    Some(Ok(()))
}

/// Runs `cmd` with UPDATE_GOLDEN semantics: rewrites `path` when the
/// variable is set, otherwise compares.
pub fn golden(path: &std::path::Path, actual: &str) {
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(path, actual).unwrap();
        return;
    }
    let expected = std::fs::read_to_string(path)
        .unwrap_or_else(|_| panic!("missing golden file {}; run with UPDATE_GOLDEN=1", path.display()));
    assert_eq!(actual, expected, "golden mismatch for {}", path.display());
}
