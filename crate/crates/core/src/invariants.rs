//! Ext, Tor, grade, projective dimension, E(M), θ, χ_j and ξ̄_j.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::audit::{emit, AuditRecord};
use crate::error::{Error, Result};
use crate::freemap::GradedFreeMap;
use crate::module::{cokernel, hom_into, homology_at, tensor_with, Length, ModuleMap, PresentedModule};
use crate::resolution::{default_length_cap, minimal_resolution, resolution_prefix, FreeResolution};
use crate::ring::RingContext;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExtTorKind {
    Ext,
    Tor,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Pdim {
    Finite(usize),
    Infinite,
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct ExtTorEntry {
    pub index: usize,
    pub module: PresentedModule,
    pub length: Length,
    pub zero: bool,
}

#[derive(Clone, Debug)]
pub struct ExtTorTable {
    pub kind: ExtTorKind,
    pub ring: Arc<RingContext>,
    pub entries: Vec<ExtTorEntry>,
    /// Set when the resolution could not be extended far enough.
    pub partial: bool,
}

impl ExtTorTable {
    pub fn lengths(&self) -> Vec<Length> {
        self.entries.iter().map(|e| e.length).collect()
    }

    /// Largest `i` with every length up to `i` finite.
    pub fn finite_length_prefix(&self) -> Option<usize> {
        let n = self.entries.iter().take_while(|e| e.length.is_finite()).count();
        n.checked_sub(1)
    }
}

/// The residue field `k = R/(x_1, …, x_n)`.
pub fn residue_field(ring: &Arc<RingContext>) -> PresentedModule {
    let n = ring.nvars();
    let row = (0..n).map(|i| ring.poly().var(i)).collect();
    cokernel(&GradedFreeMap::new(ring.clone(), vec![0], vec![1; n], vec![row]).expect("variables are linear"))
}

/// The ring as a free module of rank one.
pub fn ring_module(ring: &Arc<RingContext>) -> PresentedModule {
    PresentedModule::free(ring.clone(), vec![0])
}

fn same_ring(m: &PresentedModule, n: &PresentedModule) -> Result<()> {
    if m.ring().same_ring(n.ring()) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

fn hom_module(degrees: &[i32], n: &PresentedModule) -> PresentedModule {
    let neg: Vec<i32> = degrees.iter().map(|d| -d).collect();
    PresentedModule::new(n.presentation().identity_kron(&neg))
}

fn tensor_module(degrees: &[i32], n: &PresentedModule) -> PresentedModule {
    PresentedModule::new(n.presentation().identity_kron(degrees))
}

/// `Ext^i(M, N)` from a resolution of `M`, extending it as needed.
pub fn ext_at(res: &mut FreeResolution, n: &PresentedModule, i: usize) -> Result<PresentedModule> {
    res.extend_to(i + 1)?;
    let ring = res.ring().clone();
    let fi = match res.degrees(i) {
        Some(d) => d.to_vec(),
        None => return Err(Error::Inconclusive(format!("resolution not computed to F_{i}"))),
    };
    if fi.is_empty() {
        return Ok(PresentedModule::zero(ring));
    }
    let incoming = match res.differential(i) {
        Some(d) => hom_into(d, n),
        None => ModuleMap::zero(PresentedModule::zero(ring.clone()), hom_module(&fi, n)),
    };
    let outgoing = match res.differential(i + 1) {
        Some(d) => hom_into(d, n),
        None => ModuleMap::zero(hom_module(&fi, n), PresentedModule::zero(ring.clone())),
    };
    let h = homology_at(&incoming, &outgoing)?;
    emit(&AuditRecord {
        kind: ExtTorKind::Ext,
        index: i,
        incoming: &incoming,
        outgoing: &outgoing,
        result: &h,
    });
    Ok(h)
}

/// `Tor_i(M, N)` from a resolution of `M`, extending it as needed.
pub fn tor_at(res: &mut FreeResolution, n: &PresentedModule, i: usize) -> Result<PresentedModule> {
    res.extend_to(i + 1)?;
    let ring = res.ring().clone();
    let fi = match res.degrees(i) {
        Some(d) => d.to_vec(),
        None => return Err(Error::Inconclusive(format!("resolution not computed to F_{i}"))),
    };
    if fi.is_empty() {
        return Ok(PresentedModule::zero(ring));
    }
    let incoming = match res.differential(i + 1) {
        Some(d) => tensor_with(d, n),
        None => ModuleMap::zero(PresentedModule::zero(ring.clone()), tensor_module(&fi, n)),
    };
    let outgoing = match res.differential(i) {
        Some(d) => tensor_with(d, n),
        None => ModuleMap::zero(tensor_module(&fi, n), PresentedModule::zero(ring.clone())),
    };
    let h = homology_at(&incoming, &outgoing)?;
    emit(&AuditRecord {
        kind: ExtTorKind::Tor,
        index: i,
        incoming: &incoming,
        outgoing: &outgoing,
        result: &h,
    });
    Ok(h)
}

fn resolve(m: &PresentedModule) -> Result<FreeResolution> {
    minimal_resolution(m, default_length_cap(m.ring()))
}

fn prefix(m: &PresentedModule) -> Result<FreeResolution> {
    resolution_prefix(m, 1)
}

fn table(
    kind: ExtTorKind,
    res: &mut FreeResolution,
    n: &PresentedModule,
    i_max: usize,
) -> Result<ExtTorTable> {
    let mut entries = Vec::new();
    let mut partial = false;
    for i in 0..=i_max {
        let h = match kind {
            ExtTorKind::Ext => ext_at(res, n, i),
            ExtTorKind::Tor => tor_at(res, n, i),
        };
        let h = match h {
            Ok(h) => h,
            Err(Error::DegreeCap { .. }) | Err(Error::Inconclusive(_)) => {
                partial = true;
                break;
            }
            Err(e) => return Err(e),
        };
        let length = h.length()?;
        let zero = h.is_zero()?;
        entries.push(ExtTorEntry {
            index: i,
            module: h,
            length,
            zero,
        });
    }
    Ok(ExtTorTable {
        kind,
        ring: res.ring().clone(),
        entries,
        partial,
    })
}

/// `Ext^0 .. Ext^{i_max}` of `(M, N)`.
pub fn ext(m: &PresentedModule, n: &PresentedModule, i_max: usize) -> Result<ExtTorTable> {
    same_ring(m, n)?;
    let mut res = prefix(m)?;
    table(ExtTorKind::Ext, &mut res, n, i_max)
}

/// `Tor_0 .. Tor_{i_max}` of `(M, N)`.
pub fn tor(m: &PresentedModule, n: &PresentedModule, i_max: usize) -> Result<ExtTorTable> {
    same_ring(m, n)?;
    let mut res = prefix(m)?;
    table(ExtTorKind::Tor, &mut res, n, i_max)
}

/// Same as [`ext`] with a resolution computed earlier.
pub fn ext_with(res: &mut FreeResolution, n: &PresentedModule, i_max: usize) -> Result<ExtTorTable> {
    table(ExtTorKind::Ext, res, n, i_max)
}

/// Same as [`tor`] with a resolution computed earlier.
pub fn tor_with(res: &mut FreeResolution, n: &PresentedModule, i_max: usize) -> Result<ExtTorTable> {
    table(ExtTorKind::Tor, res, n, i_max)
}

/// Smallest `i` with `Ext^i(M, R) ≠ 0`, using a given resolution.
pub fn grade_with(res: &mut FreeResolution) -> Result<usize> {
    let ring = res.ring().clone();
    if res.rank(0) == Some(0) {
        return Err(Error::ZeroModule);
    }
    let r = ring_module(&ring);
    for i in 0..=ring.nvars() {
        if !ext_at(res, &r, i)?.is_zero()? {
            return Ok(i);
        }
    }
    // grade is at most the dimension of the ring for a nonzero module
    Err(Error::Inconclusive("no nonvanishing Ext into the ring found".into()))
}

/// `grade M = inf { i : Ext^i(M, R) ≠ 0 }`.
pub fn grade(m: &PresentedModule) -> Result<usize> {
    if m.is_zero()? {
        return Err(Error::ZeroModule);
    }
    grade_with(&mut prefix(m)?)
}

pub fn pdim_of(res: &FreeResolution) -> Pdim {
    if let Some(p) = res.pdim() {
        Pdim::Finite(p)
    } else if res.periodic_from().is_some() {
        Pdim::Infinite
    } else {
        Pdim::Inconclusive
    }
}

/// Projective dimension: finite when the resolution terminates, infinite
/// when a nonzero tail is certified periodic, inconclusive otherwise.
pub fn pdim(m: &PresentedModule) -> Result<Pdim> {
    Ok(pdim_of(&resolve(m)?))
}

/// `E(M) = coker(∂_g^* : F_{g−1}^* → F_g^*)` with `g = grade M`; for
/// `g = 0` this is `F_0^*`.
pub fn e_module_with(res: &mut FreeResolution, g: usize) -> Result<PresentedModule> {
    let ring = res.ring().clone();
    if g == 0 {
        let degs: Vec<i32> = res.degrees(0).unwrap_or(&[]).iter().map(|d| -d).collect();
        return Ok(PresentedModule::free(ring, degs));
    }
    res.extend_to(g)?;
    let d = res
        .differential(g)
        .ok_or_else(|| Error::Inconclusive(format!("differential {g} not available")))?;
    Ok(cokernel(&d.dual()))
}

pub fn e_module(m: &PresentedModule) -> Result<PresentedModule> {
    let mut res = prefix(m)?;
    let g = grade_with(&mut res)?;
    e_module_with(&mut res, g)
}

/// θ together with the Tor lengths it was read from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Theta {
    pub value: i64,
    /// Index where the certified periodic tail starts, or `None` when the
    /// resolution is finite.
    pub periodic_from: Option<usize>,
    /// `(i, length Tor_i)` for the indices used.
    pub lengths: Vec<(usize, u64)>,
}

/// `θ(M, N) = len Tor_{2j} − len Tor_{2j+1}` for `j ≫ 0`, evaluated at two
/// consecutive even/odd pairs past the certified periodic point.
pub fn theta(m: &PresentedModule, n: &PresentedModule) -> Result<Theta> {
    same_ring(m, n)?;
    let ring = m.ring().clone();
    if !ring.is_hypersurface() {
        return Err(Error::NotHypersurface);
    }
    let mut res = resolve(m)?;
    theta_with(&mut res, n)
}

pub fn theta_with(res: &mut FreeResolution, n: &PresentedModule) -> Result<Theta> {
    if res.terminated() {
        return Ok(Theta {
            value: 0,
            periodic_from: None,
            lengths: Vec::new(),
        });
    }
    let s = res
        .periodic_from()
        .ok_or_else(|| Error::Inconclusive("periodicity not certified within the length cap".into()))?;
    // smallest j with 2j > s
    let j = (s + 2) / 2;
    let mut lengths = Vec::new();
    for i in 2 * j..2 * j + 4 {
        let len = tor_at(res, n, i)?.length()?;
        match len {
            Length::Finite(l) => lengths.push((i, l)),
            Length::Infinite => {
                return Err(Error::Hypothesis(format!("Tor_{i} has infinite length")));
            }
        }
    }
    let first = lengths[0].1 as i64 - lengths[1].1 as i64;
    let second = lengths[2].1 as i64 - lengths[3].1 as i64;
    if first != second {
        return Err(Error::Inconclusive(format!(
            "even/odd differences disagree: {first} vs {second}"
        )));
    }
    Ok(Theta {
        value: first,
        periodic_from: Some(s),
        lengths,
    })
}

/// Lengths of `Tor_j .. Tor_pdim` over a regular ring, each verified finite.
fn tor_tail_lengths(res: &mut FreeResolution, n: &PresentedModule, j: usize) -> Result<Vec<u64>> {
    let p = res
        .pdim()
        .ok_or_else(|| Error::Inconclusive("resolution did not terminate".into()))?;
    let mut out = Vec::new();
    for i in j..=p.max(j) {
        match tor_at(res, n, i)?.length()? {
            Length::Finite(l) => out.push(l),
            Length::Infinite => return Err(Error::Hypothesis(format!("Tor_{i} has infinite length"))),
        }
    }
    Ok(out)
}

/// `χ_j(M, N) = Σ_{i ≥ j} (−1)^{i−j} len Tor_i(M, N)` over a regular ring.
pub fn chi(m: &PresentedModule, n: &PresentedModule, j: usize) -> Result<i64> {
    same_ring(m, n)?;
    if m.ring().is_hypersurface() {
        return Err(Error::NotRegular);
    }
    let mut res = resolve(m)?;
    chi_with(&mut res, n, j)
}

pub fn chi_with(res: &mut FreeResolution, n: &PresentedModule, j: usize) -> Result<i64> {
    if res.ring().is_hypersurface() {
        return Err(Error::NotRegular);
    }
    let lens = tor_tail_lengths(res, n, j)?;
    Ok(alternating(&lens))
}

fn alternating(lens: &[u64]) -> i64 {
    lens.iter()
        .enumerate()
        .map(|(k, &l)| if k % 2 == 0 { l as i64 } else { -(l as i64) })
        .sum()
}

/// `ξ̄_j(M, N) = Σ_{t=0}^{j} (−1)^t len Ext^{j−t}(M, N)`.
pub fn xi_bar(m: &PresentedModule, n: &PresentedModule, j: usize) -> Result<i64> {
    same_ring(m, n)?;
    let mut res = prefix(m)?;
    xi_bar_with(&mut res, n, j)
}

pub fn xi_bar_with(res: &mut FreeResolution, n: &PresentedModule, j: usize) -> Result<i64> {
    let mut lens = Vec::with_capacity(j + 1);
    for i in (0..=j).rev() {
        match ext_at(res, n, i)?.length()? {
            Length::Finite(l) => lens.push(l),
            Length::Infinite => return Err(Error::Hypothesis(format!("Ext^{i} has infinite length"))),
        }
    }
    Ok(alternating(&lens))
}

/// `(depth M, dim M)`; depth is the first `i` with `Ext^i(k, M) ≠ 0`.
pub fn depth_and_dim(m: &PresentedModule) -> Result<(usize, usize)> {
    let dim = m.krull_dim()?.ok_or(Error::ZeroModule)?;
    let ring = m.ring();
    let k = residue_field(ring);
    let mut res = minimal_resolution(&k, dim + 1)?;
    for i in 0..=dim {
        if !ext_at(&mut res, m, i)?.is_zero()? {
            return Ok((i, dim));
        }
    }
    Err(Error::Inconclusive("no nonvanishing Ext(k, M) up to the dimension".into()))
}

/// Summary of the invariants of one module (and optionally a partner).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub grade: Option<usize>,
    pub pdim: Option<Pdim>,
    pub theta: Option<i64>,
    pub chi: BTreeMap<usize, i64>,
    pub xi_bar: BTreeMap<usize, i64>,
}
