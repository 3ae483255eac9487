//! Homogeneous matrices between graded free modules.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::ring::RingContext;

/// A homogeneous map `F(source) -> F(target)` stored row-major
/// (rows index the target basis). Entry `(i, j)` is zero or homogeneous of
/// degree `source_degrees[j] - target_degrees[i]`; entries are kept reduced
/// modulo the hypersurface equation.
#[derive(Clone, Debug)]
pub struct GradedFreeMap {
    ring: Arc<RingContext>,
    target_degrees: Vec<i32>,
    source_degrees: Vec<i32>,
    entries: Vec<Polynomial>,
}

impl PartialEq for GradedFreeMap {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_ring(&other.ring)
            && self.target_degrees == other.target_degrees
            && self.source_degrees == other.source_degrees
            && self.entries == other.entries
    }
}

impl GradedFreeMap {
    /// Validating constructor; `rows[i][j]` is the entry in target row `i`,
    /// source column `j`.
    pub fn new(
        ring: Arc<RingContext>,
        target_degrees: Vec<i32>,
        source_degrees: Vec<i32>,
        rows: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        if rows.len() != target_degrees.len() {
            return Err(Error::Shape(format!(
                "{} rows but {} target degrees",
                rows.len(),
                target_degrees.len()
            )));
        }
        let mut entries = Vec::with_capacity(rows.len() * source_degrees.len());
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != source_degrees.len() {
                return Err(Error::Shape(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    source_degrees.len()
                )));
            }
            for (j, e) in row.into_iter().enumerate() {
                if e.nvars() != ring.nvars() {
                    return Err(Error::VariableCount(e.nvars(), ring.nvars()));
                }
                let e = ring.reduce(&e);
                let expected = source_degrees[j] as i64 - target_degrees[i] as i64;
                if !e.is_zero() && e.homogeneous_degree().map(|d| d as i64) != Some(expected) {
                    return Err(Error::Inhomogeneous {
                        row: i,
                        col: j,
                        expected,
                    });
                }
                entries.push(e);
            }
        }
        Ok(GradedFreeMap {
            ring,
            target_degrees,
            source_degrees,
            entries,
        })
    }

    pub fn from_columns(
        ring: Arc<RingContext>,
        target_degrees: Vec<i32>,
        source_degrees: Vec<i32>,
        columns: Vec<Vec<Polynomial>>,
    ) -> Result<Self> {
        let rows = transpose_lists(target_degrees.len(), columns)?;
        Self::new(ring, target_degrees, source_degrees, rows)
    }

    /// Trusted constructor for engine output that is already reduced and
    /// homogeneous.
    pub(crate) fn from_columns_unchecked(
        ring: Arc<RingContext>,
        target_degrees: Vec<i32>,
        source_degrees: Vec<i32>,
        columns: Vec<Vec<Polynomial>>,
    ) -> Self {
        let rows = target_degrees.len();
        let cols = source_degrees.len();
        let mut entries = vec![Polynomial::zero(ring.nvars()); rows * cols];
        for (j, col) in columns.into_iter().enumerate() {
            debug_assert_eq!(col.len(), rows);
            for (i, e) in col.into_iter().enumerate() {
                entries[i * cols + j] = e;
            }
        }
        let m = GradedFreeMap {
            ring,
            target_degrees,
            source_degrees,
            entries,
        };
        debug_assert!(m.check_homogeneous());
        m
    }

    pub fn zero(ring: Arc<RingContext>, target_degrees: Vec<i32>, source_degrees: Vec<i32>) -> Self {
        let n = target_degrees.len() * source_degrees.len();
        let z = Polynomial::zero(ring.nvars());
        GradedFreeMap {
            entries: vec![z; n],
            ring,
            target_degrees,
            source_degrees,
        }
    }

    pub fn identity(ring: Arc<RingContext>, degrees: Vec<i32>) -> Self {
        let mut m = Self::zero(ring.clone(), degrees.clone(), degrees);
        let n = m.rows();
        for i in 0..n {
            m.entries[i * n + i] = ring.poly().one();
        }
        m
    }

    pub fn ring(&self) -> &Arc<RingContext> {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.target_degrees.len()
    }

    pub fn cols(&self) -> usize {
        self.source_degrees.len()
    }

    pub fn target_degrees(&self) -> &[i32] {
        &self.target_degrees
    }

    pub fn source_degrees(&self) -> &[i32] {
        &self.source_degrees
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols() + j]
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        (0..self.rows()).map(|i| self.entry(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Polynomial>> {
        (0..self.cols()).map(|j| self.column(j)).collect()
    }

    pub fn row(&self, i: usize) -> Vec<Polynomial> {
        (0..self.cols()).map(|j| self.entry(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    /// First entry that is a nonzero constant, scanning column-major.
    pub fn unit_entry(&self) -> Option<(usize, usize)> {
        for j in 0..self.cols() {
            for i in 0..self.rows() {
                if self.entry(i, j).is_unit() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn check_homogeneous(&self) -> bool {
        (0..self.rows()).all(|i| {
            (0..self.cols()).all(|j| {
                let e = self.entry(i, j);
                e.is_zero()
                    || e.homogeneous_degree().map(|d| d as i64)
                        == Some(self.source_degrees[j] as i64 - self.target_degrees[i] as i64)
            })
        })
    }

    /// `self ∘ rhs`.
    pub fn compose(&self, rhs: &GradedFreeMap) -> Result<GradedFreeMap> {
        if !self.ring.same_ring(&rhs.ring) {
            return Err(Error::RingMismatch);
        }
        if rhs.target_degrees != self.source_degrees {
            return Err(Error::Shape(format!(
                "cannot compose: source degrees {:?} vs target degrees {:?}",
                self.source_degrees, rhs.target_degrees
            )));
        }
        let r = &self.ring;
        let (n, k, m) = (self.rows(), self.cols(), rhs.cols());
        let mut entries = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                let mut acc = Polynomial::zero(r.nvars());
                for t in 0..k {
                    let a = self.entry(i, t);
                    let b = rhs.entry(t, j);
                    if !a.is_zero() && !b.is_zero() {
                        acc = r.poly().add_unchecked(&acc, &r.poly().mul_unchecked(a, b));
                    }
                }
                entries.push(r.reduce(&acc));
            }
        }
        Ok(GradedFreeMap {
            ring: self.ring.clone(),
            target_degrees: self.target_degrees.clone(),
            source_degrees: rhs.source_degrees.clone(),
            entries,
        })
    }

    /// `Hom(-, R)` applied to the map: transpose with negated degrees.
    pub fn dual(&self) -> GradedFreeMap {
        let (n, m) = (self.rows(), self.cols());
        let mut entries = Vec::with_capacity(n * m);
        for j in 0..m {
            for i in 0..n {
                entries.push(self.entry(i, j).clone());
            }
        }
        GradedFreeMap {
            ring: self.ring.clone(),
            target_degrees: self.source_degrees.iter().map(|d| -d).collect(),
            source_degrees: self.target_degrees.iter().map(|d| -d).collect(),
            entries,
        }
    }

    /// Every degree shifted by `d` (the map `F(-d) -> G(-d)`).
    pub fn twist(&self, d: i32) -> GradedFreeMap {
        GradedFreeMap {
            ring: self.ring.clone(),
            target_degrees: self.target_degrees.iter().map(|x| x + d).collect(),
            source_degrees: self.source_degrees.iter().map(|x| x + d).collect(),
            entries: self.entries.clone(),
        }
    }

    /// `self ⊗ id` on a free module with basis degrees `degrees`; basis
    /// index `(a, b)` maps to `a * degrees.len() + b`.
    pub fn kron_identity(&self, degrees: &[i32]) -> GradedFreeMap {
        let k = degrees.len();
        let tgt: Vec<i32> = self
            .target_degrees
            .iter()
            .flat_map(|&a| degrees.iter().map(move |&b| a + b))
            .collect();
        let src: Vec<i32> = self
            .source_degrees
            .iter()
            .flat_map(|&a| degrees.iter().map(move |&b| a + b))
            .collect();
        let mut m = GradedFreeMap::zero(self.ring.clone(), tgt, src);
        let cols = m.cols();
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                let e = self.entry(i, j);
                if e.is_zero() {
                    continue;
                }
                for b in 0..k {
                    m.entries[(i * k + b) * cols + j * k + b] = e.clone();
                }
            }
        }
        m
    }

    /// `id ⊗ self` on a free module with basis degrees `degrees`; basis
    /// index `(a, b)` maps to `a * self.rank + b`.
    pub fn identity_kron(&self, degrees: &[i32]) -> GradedFreeMap {
        let tgt: Vec<i32> = degrees
            .iter()
            .flat_map(|&a| self.target_degrees.iter().map(move |&b| a + b))
            .collect();
        let src: Vec<i32> = degrees
            .iter()
            .flat_map(|&a| self.source_degrees.iter().map(move |&b| a + b))
            .collect();
        let mut m = GradedFreeMap::zero(self.ring.clone(), tgt, src);
        let cols = m.cols();
        let (r, c) = (self.rows(), self.cols());
        for a in 0..degrees.len() {
            for i in 0..r {
                for j in 0..c {
                    m.entries[(a * r + i) * cols + a * c + j] = self.entry(i, j).clone();
                }
            }
        }
        m
    }

    /// Block row `[self | other]`; both must share the target.
    pub fn hstack(&self, other: &GradedFreeMap) -> Result<GradedFreeMap> {
        if self.target_degrees != other.target_degrees || !self.ring.same_ring(&other.ring) {
            return Err(Error::Shape("hstack needs a common target".into()));
        }
        let mut cols = self.columns();
        cols.extend(other.columns());
        let mut src = self.source_degrees.clone();
        src.extend_from_slice(&other.source_degrees);
        Ok(Self::from_columns_unchecked(
            self.ring.clone(),
            self.target_degrees.clone(),
            src,
            cols,
        ))
    }

    /// Block diagonal `self ⊕ other`.
    pub fn direct_sum(&self, other: &GradedFreeMap) -> GradedFreeMap {
        let nv = self.ring.nvars();
        let mut tgt = self.target_degrees.clone();
        tgt.extend_from_slice(&other.target_degrees);
        let mut src = self.source_degrees.clone();
        src.extend_from_slice(&other.source_degrees);
        let mut cols = Vec::new();
        for mut c in self.columns() {
            c.extend((0..other.rows()).map(|_| Polynomial::zero(nv)));
            cols.push(c);
        }
        for c in other.columns() {
            let mut v: Vec<Polynomial> = (0..self.rows()).map(|_| Polynomial::zero(nv)).collect();
            v.extend(c);
            cols.push(v);
        }
        Self::from_columns_unchecked(self.ring.clone(), tgt, src, cols)
    }

    pub fn select_columns(&self, keep: &[usize]) -> GradedFreeMap {
        let cols = keep.iter().map(|&j| self.column(j)).collect();
        let src = keep.iter().map(|&j| self.source_degrees[j]).collect();
        Self::from_columns_unchecked(self.ring.clone(), self.target_degrees.clone(), src, cols)
    }

    /// Same entries read over another ring with the same variables (used to
    /// lift to the ambient ring, or to push down to a quotient).
    pub fn over_ring(&self, ring: Arc<RingContext>) -> GradedFreeMap {
        let entries = self.entries.iter().map(|e| ring.reduce(e)).collect();
        GradedFreeMap {
            ring,
            target_degrees: self.target_degrees.clone(),
            source_degrees: self.source_degrees.clone(),
            entries,
        }
    }

    /// `self` with row `r` and column `c` removed, after the column
    /// operations that clear row `r` using the unit at `(r, c)`.
    pub(crate) fn cancel_unit(&self, r: usize, c: usize) -> GradedFreeMap {
        let ring = &self.ring;
        let field = ring.poly().field();
        let u = self.entry(r, c).constant_coefficient();
        debug_assert!(self.entry(r, c).is_unit());
        let uinv = field.inv(u);
        let (n, m) = (self.rows(), self.cols());
        let mut entries = Vec::with_capacity((n - 1) * m.saturating_sub(1));
        for i in (0..n).filter(|&i| i != r) {
            for j in (0..m).filter(|&j| j != c) {
                let a = self.entry(i, j);
                let s = self.entry(r, j);
                let t = self.entry(i, c);
                if s.is_zero() || t.is_zero() {
                    entries.push(a.clone());
                } else {
                    let prod = ring.poly().mul_unchecked(s, t);
                    let prod = ring.poly().scale(&prod, field.neg(uinv));
                    entries.push(ring.reduce(&ring.poly().add_unchecked(a, &prod)));
                }
            }
        }
        let mut tgt = self.target_degrees.clone();
        tgt.remove(r);
        let mut src = self.source_degrees.clone();
        src.remove(c);
        GradedFreeMap {
            ring: self.ring.clone(),
            target_degrees: tgt,
            source_degrees: src,
            entries,
        }
    }

    pub(crate) fn remove_row(&self, r: usize) -> GradedFreeMap {
        let mut cols = self.columns();
        for c in &mut cols {
            c.remove(r);
        }
        let mut tgt = self.target_degrees.clone();
        tgt.remove(r);
        Self::from_columns_unchecked(self.ring.clone(), tgt, self.source_degrees.clone(), cols)
    }

    pub(crate) fn remove_column(&self, c: usize) -> GradedFreeMap {
        let keep: Vec<usize> = (0..self.cols()).filter(|&j| j != c).collect();
        self.select_columns(&keep)
    }

    /// Drops all-zero columns.
    pub fn without_zero_columns(&self) -> GradedFreeMap {
        let keep: Vec<usize> = (0..self.cols())
            .filter(|&j| (0..self.rows()).any(|i| !self.entry(i, j).is_zero()))
            .collect();
        self.select_columns(&keep)
    }

    /// Rows of rendered entries, for reports and witnesses.
    pub fn render_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows())
            .map(|i| (0..self.cols()).map(|j| self.ring.render(self.entry(i, j))).collect())
            .collect()
    }
}

fn transpose_lists(nrows: usize, columns: Vec<Vec<Polynomial>>) -> Result<Vec<Vec<Polynomial>>> {
    let mut rows: Vec<Vec<Polynomial>> = (0..nrows).map(|_| Vec::with_capacity(columns.len())).collect();
    for (j, col) in columns.into_iter().enumerate() {
        if col.len() != nrows {
            return Err(Error::Shape(format!("column {j} has {} entries, expected {nrows}", col.len())));
        }
        for (i, e) in col.into_iter().enumerate() {
            rows[i].push(e);
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::make_ring;

    #[test]
    fn rejects_wrong_degrees() {
        let q = make_ring(101, &["x", "y"], None).unwrap();
        let x = q.parse("x").unwrap();
        let err = GradedFreeMap::new(q.clone(), vec![0], vec![2], vec![vec![x.clone()]]).unwrap_err();
        assert_eq!(err, Error::Inhomogeneous { row: 0, col: 0, expected: 2 });
        assert!(GradedFreeMap::new(q, vec![0], vec![1], vec![vec![x]]).is_ok());
    }

    #[test]
    fn dual_degrees_and_involution() {
        let q = make_ring(101, &["x", "y"], None).unwrap();
        let m = GradedFreeMap::new(
            q.clone(),
            vec![0],
            vec![1, 1],
            vec![vec![q.parse("x").unwrap(), q.parse("y").unwrap()]],
        )
        .unwrap();
        let d = m.dual();
        assert_eq!(d.target_degrees(), &[-1, -1]);
        assert_eq!(d.source_degrees(), &[0]);
        assert_eq!(d.rows(), 2);
        assert_eq!(d.dual(), m);
    }

    #[test]
    fn entries_reduced_over_hypersurface() {
        let r = make_ring(101, &["x", "y"], Some("x*y")).unwrap();
        let e = r.poly().parse("x*y + x^2").unwrap();
        let m = GradedFreeMap::new(r.clone(), vec![0], vec![2], vec![vec![e]]).unwrap();
        assert_eq!(r.render(m.entry(0, 0)), "x^2");
    }

    #[test]
    fn composition_checks_shapes() {
        let q = make_ring(101, &["x", "y"], None).unwrap();
        let a = GradedFreeMap::new(q.clone(), vec![0], vec![1], vec![vec![q.parse("x").unwrap()]]).unwrap();
        let b = GradedFreeMap::new(q.clone(), vec![1], vec![2], vec![vec![q.parse("y").unwrap()]]).unwrap();
        let ab = a.compose(&b).unwrap();
        assert_eq!(q.render(ab.entry(0, 0)), "x*y");
        assert!(b.compose(&a).is_err());
    }
}
