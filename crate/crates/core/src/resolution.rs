//! Minimal graded free resolutions, eventual 2-periodicity over
//! hypersurfaces, and matrix factorizations of the periodic tail.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::freemap::GradedFreeMap;
use crate::groebner::{lift, syzygies};
use crate::linalg::DenseMatrix;
use crate::module::PresentedModule;
use crate::poly::{monomials_of_degree, Monomial, Polynomial};
use crate::ring::RingContext;

/// Graded Betti numbers: `(i, d) -> β_{i,d}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i32), u64>,
}

impl BettiTable {
    pub fn from_degrees(degrees: &[Vec<i32>]) -> Self {
        let mut entries = BTreeMap::new();
        for (i, ds) in degrees.iter().enumerate() {
            for &d in ds {
                *entries.entry((i, d)).or_insert(0) += 1;
            }
        }
        BettiTable { entries }
    }

    /// Total Betti numbers `rank F_i` for `i = 0..=max index`.
    pub fn totals(&self) -> Vec<u64> {
        let top = self.entries.keys().map(|k| k.0).max();
        let Some(top) = top else {
            return Vec::new();
        };
        let mut out = vec![0; top + 1];
        for (&(i, _), &n) in &self.entries {
            out[i] += n;
        }
        out
    }

    /// Macaulay-style grid: column `i`, row `d - i`.
    pub fn render(&self) -> String {
        let totals = self.totals();
        if totals.is_empty() {
            return "total: 0\n".to_string();
        }
        let rows: Vec<i32> = {
            let mut r: Vec<i32> = self.entries.keys().map(|&(i, d)| d - i as i32).collect();
            r.sort_unstable();
            r.dedup();
            r
        };
        let width = totals.iter().map(|t| t.to_string().len()).max().unwrap_or(1).max(
            self.entries.values().map(|t| t.to_string().len()).max().unwrap_or(1),
        ) + 1;
        let label = rows
            .iter()
            .map(|r| r.to_string().len() + 1)
            .max()
            .unwrap_or(2)
            .max("total:".len());
        let mut out = String::new();
        out.push_str(&" ".repeat(label));
        for i in 0..totals.len() {
            out.push_str(&format!("{:>width$}", i));
        }
        out.push('\n');
        out.push_str(&format!("{:>label$}", "total:"));
        for t in &totals {
            out.push_str(&format!("{:>width$}", t));
        }
        out.push('\n');
        for r in rows {
            out.push_str(&format!("{:>label$}", format!("{r}:")));
            for i in 0..totals.len() {
                let v = self.entries.get(&(i, r + i as i32)).copied().unwrap_or(0);
                let cell = if v == 0 { ".".to_string() } else { v.to_string() };
                out.push_str(&format!("{:>width$}", cell));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// `A·B = f·I` over the ambient ring. `a : F_{s+1} → F_s`,
/// `b : F_s(−deg f) → F_{s+1}`.
#[derive(Clone, Debug, PartialEq)]
pub struct MatrixFactorization {
    pub a: GradedFreeMap,
    pub b: GradedFreeMap,
    pub f: Polynomial,
}

impl MatrixFactorization {
    fn f_identity(&self, degrees: &[i32]) -> GradedFreeMap {
        let ring = self.a.ring();
        let d = self.f.homogeneous_degree().unwrap_or(0) as i32;
        let n = degrees.len();
        let cols = (0..n)
            .map(|j| {
                (0..n)
                    .map(|i| if i == j { self.f.clone() } else { Polynomial::zero(ring.nvars()) })
                    .collect()
            })
            .collect();
        GradedFreeMap::from_columns_unchecked(
            ring.clone(),
            degrees.to_vec(),
            degrees.iter().map(|x| x + d).collect(),
            cols,
        )
    }

    pub fn degree(&self) -> i32 {
        self.f.homogeneous_degree().unwrap_or(0) as i32
    }

    /// Checks `A·B = f·I` and `B·A = f·I` by exact multiplication.
    pub fn verify(&self) -> bool {
        if self.a.rows() != self.a.cols() || self.b.rows() != self.b.cols() {
            return false;
        }
        let ab = match self.a.compose(&self.b) {
            Ok(m) => m,
            Err(_) => return false,
        };
        let ba = match self.b.compose(&self.a.twist(self.degree())) {
            Ok(m) => m,
            Err(_) => return false,
        };
        ab == self.f_identity(self.a.target_degrees()) && ba == self.f_identity(self.b.target_degrees())
    }

    /// `(B, A(−deg f))`, the factorization one step further along.
    pub fn swapped(&self) -> MatrixFactorization {
        MatrixFactorization {
            a: self.b.clone(),
            b: self.a.twist(self.degree()),
            f: self.f.clone(),
        }
    }
}

/// `∂_{at+2} · source_iso = target_iso · ∂_at`, with both isomorphisms
/// invertible graded matrices.
#[derive(Clone, Debug)]
pub struct GradedIso {
    pub at: usize,
    pub source_iso: GradedFreeMap,
    pub target_iso: GradedFreeMap,
}

/// Certificate of 2-periodicity: from `∂_{index+1}` on, every `∂_{i+2}`
/// is isomorphic to `∂_i`.
#[derive(Clone, Debug)]
pub struct Periodicity {
    pub index: usize,
    pub isomorphisms: Vec<GradedIso>,
}

#[derive(Clone, Debug)]
pub struct FreeResolution {
    ring: Arc<RingContext>,
    f0_degrees: Vec<i32>,
    differentials: Vec<GradedFreeMap>,
    terminated: bool,
    length_cap: usize,
    periodicity: Option<Periodicity>,
    factorization: Option<MatrixFactorization>,
}

/// Default cap on the number of differentials: variables + 6.
pub fn default_length_cap(ring: &RingContext) -> usize {
    ring.nvars() + 6
}

impl FreeResolution {
    /// Resolution given by explicit differentials `∂_1, ∂_2, …`; no
    /// minimality is assumed.
    pub fn from_differentials(
        ring: Arc<RingContext>,
        f0_degrees: Vec<i32>,
        differentials: Vec<GradedFreeMap>,
        terminated: bool,
    ) -> Result<Self> {
        let mut expect = f0_degrees.clone();
        for d in &differentials {
            if d.target_degrees() != expect.as_slice() {
                return Err(Error::Shape("differentials are not composable".into()));
            }
            expect = d.source_degrees().to_vec();
        }
        let length_cap = differentials.len();
        Ok(FreeResolution {
            ring,
            f0_degrees,
            differentials,
            terminated,
            length_cap,
            periodicity: None,
            factorization: None,
        })
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn differentials(&self) -> &[GradedFreeMap] {
        &self.differentials
    }

    /// `∂_i : F_i → F_{i−1}` for `i >= 1`.
    pub fn differential(&self, i: usize) -> Option<&GradedFreeMap> {
        i.checked_sub(1).and_then(|k| self.differentials.get(k))
    }

    /// Number of computed differentials.
    pub fn len(&self) -> usize {
        self.differentials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.differentials.is_empty()
    }

    /// Basis degrees of `F_i`; empty past the end of a terminated
    /// resolution.
    pub fn degrees(&self, i: usize) -> Option<&[i32]> {
        if i == 0 {
            return Some(&self.f0_degrees);
        }
        match self.differentials.get(i - 1) {
            Some(d) => Some(d.source_degrees()),
            None if self.terminated => Some(&[]),
            None => None,
        }
    }

    pub fn rank(&self, i: usize) -> Option<usize> {
        self.degrees(i).map(|d| d.len())
    }

    /// The resolution reached a zero module, so pdim is known.
    pub fn terminated(&self) -> bool {
        self.terminated
    }

    /// Neither terminated nor certified periodic within the cap.
    pub fn truncated(&self) -> bool {
        !self.terminated && self.periodicity.is_none()
    }

    pub fn length_cap(&self) -> usize {
        self.length_cap
    }

    /// Index `s` such that the tail from `∂_{s+1}` is certified 2-periodic.
    pub fn periodic_from(&self) -> Option<usize> {
        self.periodicity.as_ref().map(|p| p.index)
    }

    pub fn periodicity(&self) -> Option<&Periodicity> {
        self.periodicity.as_ref()
    }

    pub fn factorization(&self) -> Option<&MatrixFactorization> {
        self.factorization.as_ref()
    }

    /// No entry of any differential is a nonzero scalar.
    pub fn is_minimal(&self) -> bool {
        self.differentials.iter().all(|d| d.unit_entry().is_none())
    }

    pub fn betti(&self) -> BettiTable {
        let mut degs = vec![self.f0_degrees.clone()];
        degs.extend(self.differentials.iter().map(|d| d.source_degrees().to_vec()));
        while degs.len() > 1 && degs.last().is_some_and(|d| d.is_empty()) {
            degs.pop();
        }
        BettiTable::from_degrees(&degs)
    }

    /// Projective dimension when the resolution terminated.
    pub fn pdim(&self) -> Option<usize> {
        self.terminated.then(|| self.differentials.len())
    }

    /// Computes further differentials until `len` exist or the resolution
    /// terminates.
    pub fn extend_to(&mut self, len: usize) -> Result<()> {
        while !self.terminated && self.differentials.len() < len {
            let next = match self.differentials.last() {
                Some(last) => syzygies(last)?,
                None => {
                    self.terminated = true;
                    break;
                }
            };
            if next.cols() == 0 {
                self.terminated = true;
            } else {
                self.differentials.push(next);
            }
        }
        Ok(())
    }

    /// Checks `∂_i ∘ ∂_{i+1} = 0` for every computed pair.
    pub fn is_complex(&self) -> bool {
        self.differentials
            .windows(2)
            .all(|w| w[0].compose(&w[1]).is_ok_and(|c| c.is_zero()))
    }
}

/// Minimal graded free resolution of `m`, stopping at termination, at a
/// certified periodic tail, or after `length_cap` differentials.
pub fn minimal_resolution(m: &PresentedModule, length_cap: usize) -> Result<FreeResolution> {
    let ring = m.ring().clone();
    let pruned = m.prune()?;
    let p = pruned.presentation().clone();
    let mut res = FreeResolution {
        ring: ring.clone(),
        f0_degrees: p.target_degrees().to_vec(),
        differentials: Vec::new(),
        terminated: false,
        length_cap: length_cap.max(1),
        periodicity: None,
        factorization: None,
    };
    if p.rows() == 0 || p.cols() == 0 {
        res.terminated = true;
        return Ok(res);
    }
    res.differentials.push(p);
    while !res.terminated && res.differentials.len() < res.length_cap {
        res.extend_to(res.differentials.len() + 1)?;
        if ring.is_hypersurface() && !res.terminated {
            if let Some((per, mf)) = certify(&res)? {
                res.periodicity = Some(per);
                res.factorization = Some(mf);
                break;
            }
        }
    }
    Ok(res)
}

/// The first `len` differentials of a minimal resolution, with no attempt
/// to certify periodicity. Further differentials are computed on demand by
/// [`FreeResolution::extend_to`].
pub fn resolution_prefix(m: &PresentedModule, len: usize) -> Result<FreeResolution> {
    let pruned = m.prune()?;
    let p = pruned.presentation().clone();
    let mut res = FreeResolution {
        ring: m.ring().clone(),
        f0_degrees: p.target_degrees().to_vec(),
        differentials: Vec::new(),
        terminated: false,
        length_cap: len.max(1),
        periodicity: None,
        factorization: None,
    };
    if p.rows() == 0 || p.cols() == 0 {
        res.terminated = true;
        return Ok(res);
    }
    res.differentials.push(p);
    res.extend_to(len)?;
    Ok(res)
}

/// Cancels unit entries until none remain. Each cancellation removes one
/// basis element from two adjacent free modules.
pub fn minimize(res: &FreeResolution) -> FreeResolution {
    let mut diffs = res.differentials.clone();
    let mut f0 = res.f0_degrees.clone();
    loop {
        let found = diffs
            .iter()
            .enumerate()
            .find_map(|(k, d)| d.unit_entry().map(|(r, c)| (k, r, c)));
        let Some((k, r, c)) = found else {
            break;
        };
        diffs[k] = diffs[k].cancel_unit(r, c);
        if k + 1 < diffs.len() {
            diffs[k + 1] = diffs[k + 1].remove_row(c);
        }
        if k > 0 {
            diffs[k - 1] = diffs[k - 1].remove_column(r);
        } else {
            f0.remove(r);
        }
    }
    // a differential out of a zero module ends the resolution
    let mut terminated = res.terminated;
    if let Some(pos) = diffs.iter().position(|d| d.cols() == 0) {
        diffs.truncate(pos);
        terminated = true;
    }
    FreeResolution {
        ring: res.ring.clone(),
        f0_degrees: f0,
        differentials: diffs,
        terminated,
        length_cap: res.length_cap,
        periodicity: None,
        factorization: None,
    }
}

fn sorted(v: &[i32], shift: i32) -> Vec<i32> {
    let mut s: Vec<i32> = v.iter().map(|x| x + shift).collect();
    s.sort_unstable();
    s
}

/// Solves `∂_{i+2} P = Q ∂_i` for invertible graded `P`, `Q`.
fn match_differentials(res: &FreeResolution, i: usize) -> Option<GradedIso> {
    let ring = &res.ring;
    let d = ring.hypersurface_degree()? as i32;
    let lo = res.differential(i)?;
    let hi = res.differential(i + 2)?;
    if sorted(lo.source_degrees(), d) != sorted(hi.source_degrees(), 0)
        || sorted(lo.target_degrees(), d) != sorted(hi.target_degrees(), 0)
    {
        return None;
    }
    let f = ring.hypersurface_equation()?;
    let lead_f = f.leading_term()?.0;
    let n = ring.nvars();
    let field = ring.poly().field();

    // P : F_i(−d) → F_{i+2}, Q : F_{i−1}(−d) → F_{i+1}
    let p_src: Vec<i32> = lo.source_degrees().iter().map(|x| x + d).collect();
    let p_tgt = hi.source_degrees().to_vec();
    let q_src: Vec<i32> = lo.target_degrees().iter().map(|x| x + d).collect();
    let q_tgt = hi.target_degrees().to_vec();

    struct Unknown {
        in_p: bool,
        row: usize,
        col: usize,
        mono: Monomial,
    }
    let standard = |e: i32| -> Vec<Monomial> {
        if e < 0 {
            return Vec::new();
        }
        monomials_of_degree(n, e as u32)
            .into_iter()
            .filter(|m| !lead_f.divides(m))
            .collect()
    };
    let mut unknowns = Vec::new();
    for (in_p, src, tgt) in [(true, &p_src, &p_tgt), (false, &q_src, &q_tgt)] {
        for (row, &t) in tgt.iter().enumerate() {
            for (col, &s) in src.iter().enumerate() {
                for mono in standard(s - t) {
                    unknowns.push(Unknown { in_p, row, col, mono });
                }
            }
        }
    }
    if unknowns.is_empty() {
        return None;
    }

    // each unknown contributes a polynomial to entries of ∂_{i+2}P − Q∂_i
    let mut row_index: HashMap<(usize, usize, Monomial), usize> = HashMap::new();
    let mut columns: Vec<Vec<(usize, u32)>> = Vec::with_capacity(unknowns.len());
    let mono_poly = |m: Monomial| ring.poly().monomial(m, 1);
    for u in &unknowns {
        let mut col = Vec::new();
        let mut add = |a: usize, b: usize, poly: Polynomial, col: &mut Vec<(usize, u32)>| {
            for &(m, c) in poly.terms() {
                let next = row_index.len();
                let r = *row_index.entry((a, b, m)).or_insert(next);
                col.push((r, c));
            }
        };
        if u.in_p {
            // ∂_{i+2}[a][row] · mono at (a, col)
            for a in 0..hi.rows() {
                let e = hi.entry(a, u.row);
                if !e.is_zero() {
                    add(a, u.col, ring.mul(e, &mono_poly(u.mono)), &mut col);
                }
            }
        } else {
            // −mono · ∂_i[col][b] at (row, b)
            for b in 0..lo.cols() {
                let e = lo.entry(u.col, b);
                if !e.is_zero() {
                    let prod = ring.mul(e, &mono_poly(u.mono));
                    add(u.row, b, ring.poly().neg(&prod), &mut col);
                }
            }
        }
        columns.push(col);
    }
    let mut system = DenseMatrix::zeros(row_index.len(), unknowns.len());
    for (j, col) in columns.iter().enumerate() {
        for &(r, c) in col {
            system.set(r, j, field.add(system.get(r, j), c));
        }
    }
    let null = system.nullspace(field);
    if null.is_empty() {
        return None;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(i as u64);
    for _attempt in 0..8 {
        let mut sol = vec![0u32; unknowns.len()];
        for v in &null {
            let c = rng.gen_range(1..field.characteristic());
            for (s, &x) in sol.iter_mut().zip(v) {
                *s = field.add(*s, field.mul(c, x));
            }
        }
        let build = |in_p: bool, src: &[i32], tgt: &[i32]| -> Option<GradedFreeMap> {
            let mut rows: Vec<Vec<Polynomial>> = vec![vec![Polynomial::zero(n); src.len()]; tgt.len()];
            for (u, &c) in unknowns.iter().zip(&sol) {
                if u.in_p == in_p && c != 0 {
                    let cur = rows[u.row][u.col].clone();
                    rows[u.row][u.col] = ring.add(&cur, &ring.poly().monomial(u.mono, c));
                }
            }
            GradedFreeMap::new(ring.clone(), tgt.to_vec(), src.to_vec(), rows).ok()
        };
        let p = build(true, &p_src, &p_tgt)?;
        let q = build(false, &q_src, &q_tgt)?;
        if constant_part(&p).is_invertible(field) && constant_part(&q).is_invertible(field) {
            return Some(GradedIso {
                at: i,
                source_iso: p,
                target_iso: q,
            });
        }
    }
    None
}

fn constant_part(m: &GradedFreeMap) -> DenseMatrix {
    let mut out = DenseMatrix::zeros(m.rows(), m.cols());
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            out.set(i, j, m.entry(i, j).constant_coefficient());
        }
    }
    out
}

/// Finds the smallest `s` such that `∂_{i+2} ≅ ∂_i` for every computed
/// `i > s` (at least two consecutive matches) and the pair
/// `(∂_{s+1}, ∂_{s+2})` lifts to a matrix factorization.
fn certify(res: &FreeResolution) -> Result<Option<(Periodicity, MatrixFactorization)>> {
    let len = res.len();
    let mut s = 0;
    while s + 4 <= len {
        let mut isos = Vec::new();
        let mut ok = true;
        for i in (s + 1)..=(len - 2) {
            match match_differentials(res, i) {
                Some(iso) => isos.push(iso),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if ok && isos.len() >= 2 {
            if let Ok(mf) = lift_at(res, s) {
                return Ok(Some((
                    Periodicity {
                        index: s,
                        isomorphisms: isos,
                    },
                    mf,
                )));
            }
        }
        s += 1;
    }
    Ok(None)
}

fn lift_at(res: &FreeResolution, s: usize) -> Result<MatrixFactorization> {
    let ring = &res.ring;
    let f = ring
        .hypersurface_equation()
        .ok_or(Error::NotHypersurface)?
        .clone();
    let d = ring.hypersurface_degree().unwrap_or(0) as i32;
    let q = ring.ambient();
    let del = res
        .differential(s + 1)
        .ok_or_else(|| Error::LiftFailed(format!("differential {} not computed", s + 1)))?;
    if del.rows() != del.cols() {
        return Err(Error::LiftFailed(format!(
            "differential {} is {}x{}, not square",
            s + 1,
            del.rows(),
            del.cols()
        )));
    }
    let a = del.over_ring(q.clone());
    let degs = a.target_degrees().to_vec();
    let n = degs.len();
    let cols = (0..n)
        .map(|j| {
            (0..n)
                .map(|i| if i == j { f.clone() } else { Polynomial::zero(q.nvars()) })
                .collect()
        })
        .collect();
    let fi = GradedFreeMap::from_columns_unchecked(q.clone(), degs.clone(), degs.iter().map(|x| x + d).collect(), cols);
    let b = lift(&a, &fi)?.ok_or_else(|| Error::LiftFailed("f·I is not in the image of A".into()))?;
    let mf = MatrixFactorization { a, b, f };
    if !mf.verify() {
        return Err(Error::LiftFailed("A·B = B·A = f·I does not hold".into()));
    }
    Ok(mf)
}

/// Searches the computed window for a certified 2-periodic tail.
pub fn detect_periodicity(res: &FreeResolution) -> Result<Option<Periodicity>> {
    if !res.ring.is_hypersurface() {
        return Err(Error::NotHypersurface);
    }
    if let Some(p) = &res.periodicity {
        return Ok(Some(p.clone()));
    }
    Ok(certify(res)?.map(|(p, _)| p))
}

/// Lifts `∂_{s+1}, ∂_{s+2}` of the certified tail to a matrix
/// factorization over the ambient ring.
pub fn lift_matrix_factorization(res: &FreeResolution) -> Result<MatrixFactorization> {
    if !res.ring.is_hypersurface() {
        return Err(Error::NotHypersurface);
    }
    if let Some(mf) = &res.factorization {
        return Ok(mf.clone());
    }
    let s = detect_periodicity(res)?
        .map(|p| p.index)
        .ok_or_else(|| Error::LiftFailed("no certified periodic tail".into()))?;
    lift_at(res, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::module::cokernel;
    use crate::ring::make_ring;

    fn row_module(ring: &Arc<RingContext>, entries: &[&str]) -> PresentedModule {
        let polys: Vec<Polynomial> = entries.iter().map(|e| ring.parse(e).unwrap()).collect();
        let degs = polys.iter().map(|p| p.homogeneous_degree().unwrap() as i32).collect();
        cokernel(&GradedFreeMap::new(ring.clone(), vec![0], degs, vec![polys]).unwrap())
    }

    #[test]
    fn koszul_betti_numbers() {
        let q = make_ring(101, &["x", "y", "z"], None).unwrap();
        let k = row_module(&q, &["x", "y", "z"]);
        let res = minimal_resolution(&k, 9).unwrap();
        assert_eq!(res.betti().totals(), vec![1, 3, 3, 1]);
        assert_eq!(res.pdim(), Some(3));
        assert!(res.is_minimal());
        assert!(res.is_complex());
    }

    #[test]
    fn example_module_has_pdim_three() {
        let q = make_ring(32003, &["x", "y", "z"], None).unwrap();
        let m = row_module(&q, &["x^2", "x*y", "x*z"]);
        let res = minimal_resolution(&m, 9).unwrap();
        assert_eq!(res.pdim(), Some(3));
        assert_eq!(res.betti().totals(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn residue_of_x_over_xy_is_periodic() {
        let r = make_ring(101, &["x", "y"], Some("x*y")).unwrap();
        let m = row_module(&r, &["x"]);
        let res = minimal_resolution(&m, 8).unwrap();
        assert_eq!(res.periodic_from(), Some(0));
        let names: Vec<String> = res.differentials().iter().map(|d| r.render(d.entry(0, 0))).collect();
        assert_eq!(&names[..4], &["x", "y", "x", "y"]);
        let mf = res.factorization().unwrap();
        assert!(mf.verify());
        assert_eq!(r.render(mf.a.entry(0, 0)), "x");
        assert_eq!(r.render(mf.b.entry(0, 0)), "y");
        assert!(mf.swapped().verify());
    }

    #[test]
    fn difference_of_squares_factorization() {
        let r = make_ring(101, &["x", "y"], Some("x^2 - y^2")).unwrap();
        let m = row_module(&r, &["x + y"]);
        let mf = lift_matrix_factorization(&minimal_resolution(&m, 8).unwrap()).unwrap();
        let q = r.ambient();
        assert_eq!(q.mul(mf.a.entry(0, 0), mf.b.entry(0, 0)), q.parse("x^2 - y^2").unwrap());
    }

    #[test]
    fn nonzerodivisor_gives_finite_resolution() {
        let r = make_ring(101, &["x", "y", "z"], Some("x*y")).unwrap();
        let m = row_module(&r, &["z"]);
        let res = minimal_resolution(&m, 9).unwrap();
        assert_eq!(res.pdim(), Some(1));
        assert!(res.periodic_from().is_none());
    }

    #[test]
    fn periodicity_rejected_over_regular_ring() {
        let q = make_ring(101, &["x", "y"], None).unwrap();
        let res = minimal_resolution(&row_module(&q, &["x"]), 4).unwrap();
        assert_eq!(detect_periodicity(&res).unwrap_err(), Error::NotHypersurface);
    }

    #[test]
    fn minimize_cancels_identity_summand() {
        let q = make_ring(101, &["x", "y", "z"], None).unwrap();
        let k = row_module(&q, &["x", "y", "z"]);
        let res = minimal_resolution(&k, 9).unwrap();
        assert_eq!(minimize(&res).betti(), res.betti());
        // pad F_1 and F_2 with a copy of R(−2) mapped by the identity
        let d1 = res.differential(1).unwrap();
        let d2 = res.differential(2).unwrap();
        let d3 = res.differential(3).unwrap();
        let zero_col = GradedFreeMap::zero(q.clone(), vec![0], vec![2]);
        let pd1 = d1.hstack(&zero_col).unwrap();
        let pd2 = d2.direct_sum(&GradedFreeMap::identity(q.clone(), vec![2]));
        let mut col = d3.column(0);
        col.push(Polynomial::zero(3));
        let pd3 = GradedFreeMap::from_columns(q.clone(), pd2.source_degrees().to_vec(), vec![3], vec![col]).unwrap();
        let padded =
            FreeResolution::from_differentials(q.clone(), vec![0], vec![pd1, pd2, pd3], true).unwrap();
        assert!(padded.is_complex());
        assert!(!padded.is_minimal());
        let m = minimize(&padded);
        assert!(m.is_minimal());
        assert_eq!(m.betti().totals(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn betti_table_renders_grid() {
        let q = make_ring(101, &["x", "y"], None).unwrap();
        let res = minimal_resolution(&row_module(&q, &["x", "y"]), 4).unwrap();
        let text = res.betti().render();
        assert_eq!(text, "       0 1 2\ntotal: 1 2 1\n    0: 1 2 1\n");
    }
}
