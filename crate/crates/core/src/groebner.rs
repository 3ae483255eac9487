//! Gröbner bases of graded submodules of free modules.
//!
//! Computation over a hypersurface R = Q/(f) happens over Q: every run
//! adjoins `f·e_j` for each basis position `j`, so normal forms are
//! canonical modulo the submodule plus `f·F`.
//!
//! The engine is homogeneous Buchberger with the normal selection strategy:
//! everything of degree `d` (S-pairs first, then seeds, then candidates) is
//! handled before anything of degree `d + 1`, pairs of equal degree are
//! taken in lexicographic order of their generator indices, and the
//! Gebauer–Möller criteria prune the pair set.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use log::trace;

use crate::error::{Error, Result};
use crate::freemap::GradedFreeMap;
use crate::poly::{Monomial, MonomialOrder, Polynomial, PrimeField};
use crate::ring::RingContext;

/// One term `coeff · mono · e_pos`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Term {
    pub mono: Monomial,
    pub pos: u32,
    pub coeff: u32,
}

/// Extension of a monomial order to free modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleOrder {
    /// Position first (lower index is larger), then monomial.
    PositionOverTerm(MonomialOrder),
    /// Monomial first, then position.
    TermOverPosition(MonomialOrder),
    /// `m·e_i > n·e_j` compares `m·L_i` with `n·L_j`, where `(L_i, p_i)` is
    /// the leading term of the i-th column of the previous map; ties go to
    /// the lower `p_i`, then to the lower `i`.
    Schreyer {
        order: MonomialOrder,
        leads: Arc<Vec<(Monomial, usize)>>,
    },
    /// Positions below `split` dominate all others; term-over-position
    /// inside each block.
    Eliminate { order: MonomialOrder, split: usize },
}

impl ModuleOrder {
    pub fn monomial_order(&self) -> MonomialOrder {
        match self {
            ModuleOrder::PositionOverTerm(o) | ModuleOrder::TermOverPosition(o) => *o,
            ModuleOrder::Schreyer { order, .. } | ModuleOrder::Eliminate { order, .. } => *order,
        }
    }

    /// Schreyer order induced by the leading terms of the columns of `m`
    /// under term-over-position.
    pub fn schreyer_for(m: &GradedFreeMap) -> ModuleOrder {
        let order = m.ring().poly().order();
        let top = ModuleOrder::TermOverPosition(order);
        let shifts = m.target_degrees().to_vec();
        let leads = (0..m.cols())
            .map(|j| {
                let e = ModuleElement::from_components(&m.column(j), &shifts, 0, &top);
                e.lead().map_or((Monomial::ONE, usize::MAX), |t| (t.mono, t.pos as usize))
            })
            .collect();
        ModuleOrder::Schreyer {
            order,
            leads: Arc::new(leads),
        }
    }

    #[inline]
    pub fn cmp(&self, am: &Monomial, ap: u32, bm: &Monomial, bp: u32) -> Ordering {
        match self {
            ModuleOrder::TermOverPosition(o) => o.cmp(am, bm).then(bp.cmp(&ap)),
            ModuleOrder::PositionOverTerm(o) => bp.cmp(&ap).then_with(|| o.cmp(am, bm)),
            ModuleOrder::Eliminate { order, split } => {
                let s = *split as u32;
                let ba = ap < s;
                let bb = bp < s;
                ba.cmp(&bb).then_with(|| order.cmp(am, bm)).then(bp.cmp(&ap))
            }
            ModuleOrder::Schreyer { order, leads } => {
                let (la, pa) = leads[ap as usize];
                let (lb, pb) = leads[bp as usize];
                order
                    .cmp(&am.mul(&la), &bm.mul(&lb))
                    .then(pb.cmp(&pa))
                    .then(bp.cmp(&ap))
            }
        }
    }

    #[inline]
    fn cmp_terms(&self, a: &Term, b: &Term) -> Ordering {
        self.cmp(&a.mono, a.pos, &b.mono, b.pos)
    }
}

/// A homogeneous element of a graded free module, as terms sorted
/// descending under the module order it was built with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleElement {
    terms: Vec<Term>,
    degree: i64,
}

impl ModuleElement {
    pub fn zero() -> Self {
        ModuleElement {
            terms: Vec::new(),
            degree: 0,
        }
    }

    /// Builds the element with component `i` at position `offset + i`; the
    /// degree is read off the first nonzero component.
    pub fn from_components(components: &[Polynomial], shifts: &[i32], offset: usize, order: &ModuleOrder) -> Self {
        let mut terms = Vec::new();
        let mut degree = None;
        for (i, c) in components.iter().enumerate() {
            let pos = offset + i;
            for &(m, v) in c.terms() {
                degree.get_or_insert(m.degree() as i64 + shifts[pos] as i64);
                terms.push(Term {
                    mono: m,
                    pos: pos as u32,
                    coeff: v,
                });
            }
        }
        terms.sort_by(|a, b| order.cmp_terms(b, a));
        ModuleElement {
            terms,
            degree: degree.unwrap_or(0),
        }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree: monomial degree plus the shift of the position.
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// Components at positions `offset .. offset + rank`.
    pub fn components(&self, offset: usize, rank: usize, nvars: usize) -> Vec<Polynomial> {
        let mut parts: Vec<Vec<(Monomial, u32)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            let p = t.pos as usize;
            if p >= offset && p < offset + rank {
                parts[p - offset].push((t.mono, t.coeff));
            }
        }
        parts.into_iter().map(|v| Polynomial::from_sorted(nvars, v)).collect()
    }

    /// True when every term sits in one position.
    fn single_position(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].pos == w[1].pos)
    }
}

/// Reduction data shared by the engine and finished bases.
#[derive(Clone, Debug)]
struct Reducer {
    field: PrimeField,
    order: ModuleOrder,
    basis: Vec<ModuleElement>,
    by_pos: Vec<Vec<usize>>,
}

impl Reducer {
    fn new(field: PrimeField, order: ModuleOrder, rank: usize) -> Self {
        Reducer {
            field,
            order,
            basis: Vec::new(),
            by_pos: vec![Vec::new(); rank],
        }
    }

    fn lead(&self, i: usize) -> &Term {
        &self.basis[i].terms[0]
    }

    fn find_reducer(&self, t: &Term) -> Option<usize> {
        self.by_pos[t.pos as usize]
            .iter()
            .copied()
            .find(|&g| self.lead(g).mono.divides(&t.mono))
    }

    /// `a - c · q · g` for sorted `a`, `g`.
    fn sub_mul(&self, a: &[Term], c: u32, q: &Monomial, g: &[Term]) -> Vec<Term> {
        let f = self.field;
        let neg = f.neg(c);
        let mut out = Vec::with_capacity(a.len() + g.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < g.len() {
            let gt = Term {
                mono: g[j].mono.mul(q),
                pos: g[j].pos,
                coeff: f.mul(g[j].coeff, neg),
            };
            match self.order.cmp_terms(&a[i], &gt) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(gt);
                    j += 1;
                }
                Ordering::Equal => {
                    let s = f.add(a[i].coeff, gt.coeff);
                    if s != 0 {
                        out.push(Term { coeff: s, ..gt });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        for t in &g[j..] {
            out.push(Term {
                mono: t.mono.mul(q),
                pos: t.pos,
                coeff: f.mul(t.coeff, neg),
            });
        }
        out
    }

    /// Full reduction; terms before `keep` are left untouched.
    fn reduce_from(&self, v: &ModuleElement, keep: usize) -> ModuleElement {
        let mut out: Vec<Term> = v.terms[..keep.min(v.terms.len())].to_vec();
        let mut rest: Vec<Term> = v.terms[out.len()..].to_vec();
        let mut idx = 0;
        while idx < rest.len() {
            let t = rest[idx];
            match self.find_reducer(&t) {
                Some(g) => {
                    let q = t.mono.checked_div(&self.lead(g).mono).expect("divisor");
                    rest = self.sub_mul(&rest[idx..], t.coeff, &q, &self.basis[g].terms);
                    idx = 0;
                }
                None => {
                    out.push(t);
                    idx += 1;
                }
            }
        }
        ModuleElement {
            terms: out,
            degree: v.degree,
        }
    }

    fn reduce(&self, v: &ModuleElement) -> ModuleElement {
        self.reduce_from(v, 0)
    }

    fn monic(&self, mut v: ModuleElement) -> ModuleElement {
        if let Some(t) = v.terms.first() {
            let inv = self.field.inv(t.coeff);
            if inv != 1 {
                for t in &mut v.terms {
                    t.coeff = self.field.mul(t.coeff, inv);
                }
            }
        }
        v
    }

    fn push(&mut self, v: ModuleElement) -> usize {
        let idx = self.basis.len();
        self.by_pos[v.terms[0].pos as usize].push(idx);
        self.basis.push(v);
        idx
    }

    fn spoly(&self, i: usize, j: usize) -> ModuleElement {
        let (li, lj) = (self.lead(i).mono, self.lead(j).mono);
        let l = li.lcm(&lj);
        let qi = l.checked_div(&li).expect("lcm");
        let qj = l.checked_div(&lj).expect("lcm");
        let gi: Vec<Term> = self.basis[i]
            .terms
            .iter()
            .map(|t| Term {
                mono: t.mono.mul(&qi),
                ..*t
            })
            .collect();
        let terms = self.sub_mul(&gi, 1, &qj, &self.basis[j].terms);
        ModuleElement {
            terms,
            degree: self.basis[i].degree + qi.degree() as i64,
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    lcm: Monomial,
    /// Both generators live in a single position and have coprime leads,
    /// so the pair reduces to zero.
    coprime: bool,
}

/// Input tag: seeds are added silently, candidates are reported when they
/// are not already in the span.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tag {
    Seed,
    Candidate(usize),
}

struct Engine {
    red: Reducer,
    shifts: Vec<i32>,
    pairs: BTreeMap<(i64, usize, usize), Pair>,
    inputs: BTreeMap<i64, Vec<(Tag, ModuleElement)>>,
    cap: u32,
    base: Option<i64>,
}

impl Engine {
    fn new(ring: &RingContext, shifts: &[i32], order: ModuleOrder) -> Self {
        let mut e = Engine {
            red: Reducer::new(ring.poly().field(), order, shifts.len()),
            shifts: shifts.to_vec(),
            pairs: BTreeMap::new(),
            inputs: BTreeMap::new(),
            cap: ring.degree_cap(),
            base: None,
        };
        if let Some(f) = ring.hypersurface_equation() {
            for j in 0..shifts.len() {
                let mut comps = vec![Polynomial::zero(ring.nvars()); shifts.len()];
                comps[j] = f.clone();
                let el = ModuleElement::from_components(&comps, shifts, 0, &e.red.order);
                e.add_input(Tag::Seed, el);
            }
        }
        e
    }

    fn add_input(&mut self, tag: Tag, el: ModuleElement) {
        if el.is_zero() {
            return;
        }
        let d = el.degree;
        self.base = Some(self.base.map_or(d, |b| b.min(d)));
        self.inputs.entry(d).or_default().push((tag, el));
    }

    fn pair_degree(&self, lcm: &Monomial, pos: u32) -> i64 {
        lcm.degree() as i64 + self.shifts[pos as usize] as i64
    }

    /// Inserts a reduced, nonzero element and updates the pair set.
    fn insert(&mut self, v: ModuleElement) {
        let v = self.red.monic(v);
        let lead = v.terms[0];
        let single = v.single_position();
        let t = self.red.basis.len();

        // candidate pairs with every older generator in the same position
        let mut fresh: Vec<(usize, Pair)> = self.red.by_pos[lead.pos as usize]
            .iter()
            .map(|&i| {
                let li = self.red.lead(i).mono;
                let coprime = single && self.red.basis[i].single_position() && li.is_coprime(&lead.mono);
                (
                    i,
                    Pair {
                        lcm: li.lcm(&lead.mono),
                        coprime,
                    },
                )
            })
            .collect();

        // criterion B: old pairs made redundant by the new leading term
        let pos = lead.pos;
        let lcm_with = |i: usize| fresh.iter().find(|(k, _)| *k == i).map(|(_, p)| p.lcm);
        let mut drop = Vec::new();
        for (&(d, i, j), p) in &self.pairs {
            if self.red.lead(i).pos != pos || !lead.mono.divides(&p.lcm) {
                continue;
            }
            let (Some(li), Some(lj)) = (lcm_with(i), lcm_with(j)) else {
                continue;
            };
            if li != p.lcm && lj != p.lcm {
                drop.push((d, i, j));
            }
        }
        for k in drop {
            self.pairs.remove(&k);
        }

        // criterion M: drop pairs whose lcm is a proper multiple of another
        let lcms: Vec<Monomial> = fresh.iter().map(|(_, p)| p.lcm).collect();
        fresh.retain(|(_, p)| !lcms.iter().any(|l| l != &p.lcm && l.divides(&p.lcm)));
        // criterion F: one pair per lcm, none if any of them is coprime
        let mut kept: Vec<(usize, Pair)> = Vec::new();
        for (i, p) in fresh {
            match kept.iter_mut().find(|(_, q)| q.lcm == p.lcm) {
                Some((_, q)) => q.coprime |= p.coprime,
                None => kept.push((i, p)),
            }
        }
        for (i, p) in kept {
            if !p.coprime {
                let d = self.pair_degree(&p.lcm, pos);
                self.pairs.insert((d, i, t), p);
            }
        }
        self.red.push(v);
    }

    fn next_degree(&self) -> Option<i64> {
        let a = self.pairs.keys().next().map(|k| k.0);
        let b = self.inputs.keys().next().copied();
        match (a, b) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        }
    }

    /// Runs to completion, or (when `stop_after_candidates`) until the last
    /// candidate has been examined. Returns the indices of the candidates
    /// that were not in the span of what came before them.
    fn run(&mut self, stop_after_candidates: bool) -> Result<Vec<usize>> {
        let mut reported = Vec::new();
        while let Some(d) = self.next_degree() {
            if stop_after_candidates
                && !self
                    .inputs
                    .values()
                    .any(|v| v.iter().any(|(t, _)| matches!(t, Tag::Candidate(_))))
            {
                break;
            }
            let base = self.base.unwrap_or(d);
            if d - base > self.cap as i64 {
                return Err(Error::DegreeCap {
                    cap: self.cap,
                    reached: d - base,
                });
            }
            let mut npairs = 0;
            while let Some((&key, _)) = self.pairs.iter().next() {
                if key.0 != d {
                    break;
                }
                self.pairs.remove(&key);
                npairs += 1;
                let s = self.red.spoly(key.1, key.2);
                let r = self.red.reduce(&s);
                if !r.is_zero() {
                    self.insert(r);
                }
            }
            let inputs = self.inputs.remove(&d).unwrap_or_default();
            let (seeds, cands): (Vec<_>, Vec<_>) = inputs.into_iter().partition(|(t, _)| *t == Tag::Seed);
            for (tag, el) in seeds.into_iter().chain(cands) {
                let r = self.red.reduce(&el);
                if !r.is_zero() {
                    if let Tag::Candidate(k) = tag {
                        reported.push(k);
                    }
                    self.insert(r);
                }
            }
            trace!(
                "gb degree {d}: {npairs} pairs reduced, basis size {}, {} pairs pending",
                self.red.basis.len(),
                self.pairs.len()
            );
        }
        Ok(reported)
    }

    /// Tail-reduces every element against the whole basis.
    fn interreduce(&mut self) {
        for k in 0..self.red.basis.len() {
            let r = self.red.reduce_from(&self.red.basis[k], 1);
            self.red.basis[k] = r;
        }
    }
}

/// A reduced Gröbner basis of a graded submodule of a free module.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<RingContext>,
    shifts: Vec<i32>,
    red: Reducer,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[i32] {
        &self.shifts
    }

    pub fn order(&self) -> &ModuleOrder {
        &self.red.order
    }

    pub fn generators(&self) -> &[ModuleElement] {
        &self.red.basis
    }

    /// Whether reduction modulo the hypersurface equation is built in.
    pub fn over_quotient(&self) -> bool {
        self.ring.is_hypersurface()
    }

    /// Leading monomials at each position.
    pub fn leading_monomials(&self, pos: usize) -> Vec<Monomial> {
        self.red.by_pos[pos].iter().map(|&g| self.red.lead(g).mono).collect()
    }

    pub fn normal_form(&self, v: &ModuleElement) -> ModuleElement {
        self.red.reduce(v)
    }

    pub fn element(&self, components: &[Polynomial]) -> ModuleElement {
        ModuleElement::from_components(components, &self.shifts, 0, &self.red.order)
    }

    pub fn contains(&self, components: &[Polynomial]) -> bool {
        self.normal_form(&self.element(components)).is_zero()
    }

    /// Checks the defining property directly: every S-pair of generators
    /// with a common leading position reduces to zero, and no leading
    /// term divides another.
    pub fn verify(&self) -> bool {
        let n = self.red.basis.len();
        for i in 0..n {
            for j in 0..n {
                if i != j
                    && self.red.lead(i).pos == self.red.lead(j).pos
                    && self.red.lead(i).mono.divides(&self.red.lead(j).mono)
                {
                    return false;
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if self.red.lead(i).pos != self.red.lead(j).pos {
                    continue;
                }
                if !self.red.reduce(&self.red.spoly(i, j)).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// `normal_form` in free-function form.
pub fn normal_form(v: &ModuleElement, gb: &GroebnerBasis) -> ModuleElement {
    gb.normal_form(v)
}

/// Reduced Gröbner basis of the submodule generated by `gens` inside the
/// free module with basis degrees `shifts`.
pub fn buchberger(
    gens: &[ModuleElement],
    ring: &Arc<RingContext>,
    shifts: &[i32],
    order: ModuleOrder,
) -> Result<GroebnerBasis> {
    let mut e = Engine::new(ring, shifts, order);
    for g in gens {
        e.add_input(Tag::Seed, g.clone());
    }
    e.run(false)?;
    e.interreduce();
    Ok(GroebnerBasis {
        ring: ring.clone(),
        shifts: shifts.to_vec(),
        red: e.red,
    })
}

/// Gröbner basis of the column span of `m` (plus `f·F` over a
/// hypersurface), term-over-position.
pub fn column_basis(m: &GradedFreeMap) -> Result<GroebnerBasis> {
    let order = ModuleOrder::TermOverPosition(m.ring().poly().order());
    let gens: Vec<ModuleElement> = m
        .columns()
        .iter()
        .map(|c| ModuleElement::from_components(c, m.target_degrees(), 0, &order))
        .collect();
    buchberger(&gens, m.ring(), m.target_degrees(), order)
}

/// Indices of a minimal generating set of `span(seeds, candidates)`
/// modulo `span(seeds)` chosen greedily among `candidates` in order of
/// degree (ties keep the given order).
pub fn select_minimal(
    ring: &Arc<RingContext>,
    shifts: &[i32],
    seeds: &[Vec<Polynomial>],
    candidates: &[Vec<Polynomial>],
) -> Result<Vec<usize>> {
    let order = ModuleOrder::TermOverPosition(ring.poly().order());
    let mut e = Engine::new(ring, shifts, order.clone());
    for s in seeds {
        e.add_input(Tag::Seed, ModuleElement::from_components(s, shifts, 0, &order));
    }
    for (k, c) in candidates.iter().enumerate() {
        e.add_input(Tag::Candidate(k), ModuleElement::from_components(c, shifts, 0, &order));
    }
    e.run(true)
}

/// Elimination basis for the columns `(a_k, e_k)` of `[a ; I]`, with the
/// columns of `modulo` (if any) added as `(modulo_l, 0)`.
fn elimination_basis(a: &GradedFreeMap, modulo: Option<&GradedFreeMap>) -> Result<(Engine, Vec<i32>)> {
    let ring = a.ring();
    let t = a.rows();
    let mut shifts = a.target_degrees().to_vec();
    shifts.extend_from_slice(a.source_degrees());
    let order = ModuleOrder::Eliminate {
        order: ring.poly().order(),
        split: t,
    };
    let mut e = Engine::new(ring, &shifts, order.clone());
    if let Some(m) = modulo {
        for c in m.columns() {
            e.add_input(Tag::Seed, ModuleElement::from_components(&c, &shifts, 0, &order));
        }
    }
    for k in 0..a.cols() {
        let mut el = ModuleElement::from_components(&a.column(k), &shifts, 0, &order);
        el.terms.push(Term {
            mono: Monomial::ONE,
            pos: (t + k) as u32,
            coeff: 1,
        });
        el.degree = a.source_degrees()[k] as i64;
        e.add_input(Tag::Seed, el);
    }
    e.run(false)?;
    e.interreduce();
    Ok((e, shifts))
}

/// Minimal generators of `{v : a·v ∈ im(modulo)}` over the ring of `a`
/// (over a hypersurface, congruences are taken modulo f throughout).
pub fn kernel_modulo(a: &GradedFreeMap, modulo: Option<&GradedFreeMap>) -> Result<GradedFreeMap> {
    let ring = a.ring().clone();
    if let Some(m) = modulo {
        if m.target_degrees() != a.target_degrees() || !m.ring().same_ring(&ring) {
            return Err(Error::Shape("kernel modulo a map with a different target".into()));
        }
    }
    let (t, s) = (a.rows(), a.cols());
    let (e, _) = elimination_basis(a, modulo)?;
    let nv = ring.nvars();
    let mut cands: Vec<Vec<Polynomial>> = Vec::new();
    let mut degs: Vec<i32> = Vec::new();
    for g in &e.red.basis {
        if (g.terms[0].pos as usize) < t {
            continue;
        }
        cands.push(g.components(t, s, nv).iter().map(|p| ring.reduce(p)).collect());
        degs.push(g.degree as i32);
    }
    let keep = select_minimal(&ring, a.source_degrees(), &[], &cands)?;
    let columns = keep.iter().map(|&k| cands[k].clone()).collect();
    let src = keep.iter().map(|&k| degs[k]).collect();
    Ok(GradedFreeMap::from_columns_unchecked(
        ring,
        a.source_degrees().to_vec(),
        src,
        columns,
    ))
}

/// A minimal generating map for `ker m`, so that `m ∘ syzygies(m) = 0`.
pub fn syzygies(m: &GradedFreeMap) -> Result<GradedFreeMap> {
    kernel_modulo(m, None)
}

/// Solves `a · x = w` (modulo f over a hypersurface). `None` when some
/// column of `w` is not in the image of `a`.
pub fn lift(a: &GradedFreeMap, w: &GradedFreeMap) -> Result<Option<GradedFreeMap>> {
    let ring = a.ring().clone();
    if w.target_degrees() != a.target_degrees() || !w.ring().same_ring(&ring) {
        return Err(Error::Shape("lift needs a common target".into()));
    }
    let (t, s) = (a.rows(), a.cols());
    let (e, shifts) = elimination_basis(a, None)?;
    let nv = ring.nvars();
    let mut columns = Vec::with_capacity(w.cols());
    for l in 0..w.cols() {
        let v = ModuleElement::from_components(&w.column(l), &shifts, 0, &e.red.order);
        let r = e.red.reduce(&v);
        if r.terms.iter().any(|t0| (t0.pos as usize) < t) {
            return Ok(None);
        }
        let x: Vec<Polynomial> = r
            .components(t, s, nv)
            .iter()
            .map(|p| ring.reduce(&ring.poly().neg(p)))
            .collect();
        columns.push(x);
    }
    GradedFreeMap::from_columns(ring, a.source_degrees().to_vec(), w.source_degrees().to_vec(), columns).map(Some)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_ring;

    fn ideal(ring: &Arc<RingContext>, gens: &[&str]) -> Result<GroebnerBasis> {
        let order = ModuleOrder::TermOverPosition(ring.poly().order());
        let els: Vec<ModuleElement> = gens
            .iter()
            .map(|g| ModuleElement::from_components(&[ring.parse(g).unwrap()], &[0], 0, &order))
            .collect();
        buchberger(&els, ring, &[0], order)
    }

    fn leads(gb: &GroebnerBasis, ring: &Arc<RingContext>) -> Vec<String> {
        gb.leading_monomials(0).iter().map(|m| ring.poly().render_monomial(m)).collect()
    }

    #[test]
    fn variables_already_a_basis() {
        let q = make_ring(101, &["x", "y"], None).unwrap();
        let gb = ideal(&q, &["x", "y"]).unwrap();
        assert_eq!(gb.generators().len(), 2);
        assert!(gb.verify());
    }

    #[test]
    fn spair_completion_adds_xz2() {
        let q = make_ring(101, &["x", "y", "z"], None).unwrap();
        let gb = ideal(&q, &["x*y - z^2", "x^2"]).unwrap();
        assert!(gb.verify());
        assert!(gb.contains(&[q.parse("x*z^2").unwrap()]));
        assert!(leads(&gb, &q).contains(&"x*z^2".to_string()));
    }

    #[test]
    fn equation_vanishes_over_quotient() {
        let r = make_ring(101, &["x", "y"], Some("x*y")).unwrap();
        let gb = ideal(&r, &["x*y"]).unwrap();
        // only the built-in relation remains
        assert_eq!(gb.generators().len(), 1);
        assert!(!gb.contains(&[r.parse("x").unwrap()]));
        assert!(gb.over_quotient());
    }

    #[test]
    fn membership_and_idempotence() {
        let q = make_ring(101, &["x", "y"], None).unwrap();
        let gb = ideal(&q, &["x"]).unwrap();
        assert!(gb.contains(&[q.parse("x^2").unwrap()]));
        let v = gb.element(&[q.parse("y^2 + x*y").unwrap()]);
        let nf = gb.normal_form(&v);
        assert_eq!(nf.components(0, 1, 2)[0], q.parse("y^2").unwrap());
        assert_eq!(gb.normal_form(&nf), nf);
    }

    #[test]
    fn koszul_syzygies() {
        let q = make_ring(101, &["x", "y", "z"], None).unwrap();
        let m = GradedFreeMap::new(
            q.clone(),
            vec![0],
            vec![1, 1, 1],
            vec![vec![q.parse("x").unwrap(), q.parse("y").unwrap(), q.parse("z").unwrap()]],
        )
        .unwrap();
        let s = syzygies(&m).unwrap();
        assert_eq!(s.cols(), 3);
        assert_eq!(s.source_degrees(), &[2, 2, 2]);
        assert!(m.compose(&s).unwrap().is_zero());
    }

    #[test]
    fn injective_map_has_no_syzygies() {
        let q = make_ring(101, &["x", "y"], None).unwrap();
        let m = GradedFreeMap::new(q.clone(), vec![0], vec![1], vec![vec![q.parse("x").unwrap()]]).unwrap();
        assert_eq!(syzygies(&m).unwrap().cols(), 0);
    }

    #[test]
    fn annihilator_of_x_over_xy() {
        let r = make_ring(101, &["x", "y"], Some("x*y")).unwrap();
        let m = GradedFreeMap::new(r.clone(), vec![0], vec![1], vec![vec![r.parse("x").unwrap()]]).unwrap();
        let s = syzygies(&m).unwrap();
        assert_eq!(s.cols(), 1);
        assert_eq!(r.render(s.entry(0, 0)), "y");
    }

    #[test]
    fn lift_solves_linear_systems() {
        let q = make_ring(101, &["x", "y"], None).unwrap();
        let a = GradedFreeMap::new(
            q.clone(),
            vec![0],
            vec![1, 1],
            vec![vec![q.parse("x").unwrap(), q.parse("y").unwrap()]],
        )
        .unwrap();
        let w = GradedFreeMap::new(q.clone(), vec![0], vec![2], vec![vec![q.parse("x^2 + 3*x*y").unwrap()]]).unwrap();
        let x = lift(&a, &w).unwrap().unwrap();
        assert_eq!(a.compose(&x).unwrap(), w);
        let bad = GradedFreeMap::new(q.clone(), vec![0], vec![0], vec![vec![q.parse("1").unwrap()]]).unwrap();
        assert!(lift(&a, &bad).unwrap().is_none());
    }

    #[test]
    fn schreyer_order_gives_same_module() {
        let q = make_ring(101, &["x", "y", "z"], None).unwrap();
        let m = GradedFreeMap::new(
            q.clone(),
            vec![0],
            vec![2, 2, 2],
            vec![vec![q.parse("x^2").unwrap(), q.parse("x*y").unwrap(), q.parse("x*z").unwrap()]],
        )
        .unwrap();
        let s = syzygies(&m).unwrap();
        let order = ModuleOrder::schreyer_for(&m);
        let gens: Vec<ModuleElement> = s
            .columns()
            .iter()
            .map(|c| ModuleElement::from_components(c, s.target_degrees(), 0, &order))
            .collect();
        let gb = buchberger(&gens, &q, s.target_degrees(), order).unwrap();
        assert!(gb.verify());
        for c in s.columns() {
            assert!(gb.contains(&c));
        }
    }

    #[test]
    fn degree_cap_is_reported() {
        let q = make_ring(101, &["x", "y", "z"], None).unwrap().with_degree_cap(0);
        let err = ideal(&q, &["x*y - z^2", "x^2"]).unwrap_err();
        assert_eq!(err, Error::DegreeCap { cap: 0, reached: 1 });
    }

    #[test]
    fn minimal_selection_drops_redundant() {
        let q = make_ring(101, &["x", "y"], None).unwrap();
        let c = |s: &str| vec![q.parse(s).unwrap()];
        let keep = select_minimal(&q, &[0], &[], &[c("x"), c("x*y"), c("y"), c("x+y")]).unwrap();
        assert_eq!(keep, vec![0, 2]);
    }
}
