use serde_json::{json, Value};

use super::{CheckStatus, CheckVerdict, VerdictBuilder};
use crate::error::{Error, Result};
use crate::invariants::{
    chi_with, e_module_with, ext_at, ext_with, grade, grade_with, ring_module, theta_with, tor_at, xi_bar,
};
use crate::module::{Length, PresentedModule};
use crate::resolution::{default_length_cap, minimal_resolution, resolution_prefix};

/// Hilbert functions are compared up to this degree.
pub const HILBERT_BOUND: i32 = 10;

pub const CHECK_NAMES: [&str; 9] = [
    "ext_rigidity",
    "self_ext",
    "tor_rigidity",
    "ext_tor",
    "grade_drop",
    "xi_chi",
    "jothilingam",
    "chi_positivity",
    "finite_length_vanishing",
];

/// Optional arguments of [`check_by_name`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CheckOptions {
    pub index: Option<usize>,
    pub max: Option<usize>,
}

type Soft<T> = std::result::Result<T, (CheckStatus, String)>;

/// Splits engine errors into those that decide a verdict and real errors.
fn soft<T>(r: Result<T>) -> Result<Soft<T>> {
    match r {
        Ok(v) => Ok(Ok(v)),
        Err(e @ (Error::Inconclusive(_) | Error::DegreeCap { .. })) => {
            Ok(Err((CheckStatus::Inconclusive, e.to_string())))
        }
        Err(e @ (Error::Hypothesis(_) | Error::ZeroModule | Error::NotHypersurface | Error::NotRegular)) => {
            Ok(Err((CheckStatus::Inapplicable, e.to_string())))
        }
        Err(e) => Err(e),
    }
}

macro_rules! soft {
    ($vb:ident, $e:expr) => {
        match soft($e)? {
            Ok(v) => v,
            Err((status, reason)) => {
                $vb.set("reason", reason);
                return Ok($vb.finish(status));
            }
        }
    };
}

fn stop(mut vb: VerdictBuilder, status: CheckStatus, reason: &str) -> Result<CheckVerdict> {
    vb.set("reason", reason);
    Ok(vb.finish(status))
}

fn same_ring(m: &PresentedModule, n: &PresentedModule) -> Result<()> {
    if m.ring().same_ring(n.ring()) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

fn length_json(l: Length) -> Value {
    match l {
        Length::Finite(v) => json!(v),
        Length::Infinite => json!("inf"),
    }
}

/// Hilbert functions of two modules on a common degree window, plus
/// lengths. Returns whether they agree and a record of both sides.
fn compare_modules(a: &PresentedModule, b: &PresentedModule) -> Result<(bool, Value)> {
    let lo = [a.min_generator_degree(), b.min_generator_degree()]
        .into_iter()
        .flatten()
        .min()
        .unwrap_or(0);
    let hi = HILBERT_BOUND.max(lo);
    let ha = a.hilbert_range(lo, hi)?;
    let hb = b.hilbert_range(lo, hi)?;
    let la = a.length()?;
    let lb = b.length()?;
    let same = ha == hb && la == lb;
    Ok((
        same,
        json!({
            "from_degree": lo,
            "left": ha,
            "right": hb,
            "left_length": length_json(la),
            "right_length": length_json(lb),
        }),
    ))
}

fn alternating(lens: &[u64]) -> i64 {
    lens.iter()
        .enumerate()
        .map(|(k, &l)| if k % 2 == 0 { l as i64 } else { -(l as i64) })
        .sum()
}

/// Ext rigidity: every `n ≤ grade M` with `Ext^n(M, N) = 0` forces
/// `Ext^i(M, N) = 0` for all `i ≤ n`.
pub fn check_ext_rigidity(m: &PresentedModule, n: &PresentedModule, i_max: usize) -> Result<CheckVerdict> {
    same_ring(m, n)?;
    let cap = default_length_cap(m.ring());
    let mut vb = VerdictBuilder::new("ext_rigidity", &[("M", m), ("N", n)], cap);
    vb.arg(format!("max {i_max}"));
    let mut res = soft!(vb, resolution_prefix(m, 1));
    let g = soft!(vb, grade_with(&mut res));
    vb.set("grade", g);
    let top = g.min(i_max);
    vb.set("top", top);
    let table = soft!(vb, ext_with(&mut res, n, top));
    if table.partial {
        return stop(vb, CheckStatus::Inconclusive, "Ext table truncated");
    }
    let zero: Vec<bool> = table.entries.iter().map(|e| e.zero).collect();
    vb.set("ext_zero", zero.clone());
    vb.set("ext_lengths", table.lengths().into_iter().map(length_json).collect::<Vec<_>>());
    // n = 0 implies nothing beyond itself; it only counts when it is the
    // whole range, and then only as a trivial pass
    let lowest = if g == 0 { 0 } else { 1 };
    let vanishing: Vec<usize> = (lowest..=top).filter(|&i| zero[i]).collect();
    vb.set("vanishing", vanishing.clone());
    if vanishing.is_empty() {
        return stop(vb, CheckStatus::Inapplicable, "no Ext^n vanishes for 1 <= n <= grade");
    }
    for &k in &vanishing {
        if let Some(i) = (0..k).find(|&i| !zero[i]) {
            vb.set("violation", json!({"vanishing": k, "nonzero": i}));
            return Ok(vb.finish(CheckStatus::Fail));
        }
    }
    vb.set("genuine", vanishing.iter().any(|&k| k >= 1));
    Ok(vb.finish(CheckStatus::Pass))
}

/// `Ext^i(M, M) ≠ 0` for `0 ≤ i ≤ grade M` over a hypersurface.
pub fn check_self_ext_nonvanishing(m: &PresentedModule) -> Result<CheckVerdict> {
    let cap = default_length_cap(m.ring());
    let mut vb = VerdictBuilder::new("self_ext", &[("M", m)], cap);
    if !m.ring().is_hypersurface() {
        return stop(vb, CheckStatus::Inapplicable, "ring is not a hypersurface");
    }
    if soft!(vb, m.is_zero()) {
        return stop(vb, CheckStatus::Inapplicable, "M is zero");
    }
    let mut res = soft!(vb, resolution_prefix(m, 1));
    let g = soft!(vb, grade_with(&mut res));
    vb.set("grade", g);
    let table = soft!(vb, ext_with(&mut res, m, g));
    if table.partial {
        return stop(vb, CheckStatus::Inconclusive, "Ext table truncated");
    }
    let zero: Vec<bool> = table.entries.iter().map(|e| e.zero).collect();
    vb.set("ext_zero", zero.clone());
    vb.set("ext_lengths", table.lengths().into_iter().map(length_json).collect::<Vec<_>>());
    if let Some(i) = zero.iter().position(|&z| z) {
        vb.set("violation", i);
        return Ok(vb.finish(CheckStatus::Fail));
    }
    vb.set("genuine", g >= 1);
    Ok(vb.finish(CheckStatus::Pass))
}

/// Tor rigidity when `θ(M, N) = 0`. Pairs with `θ ≠ 0` are inapplicable;
/// those among them with a non-rigid vanishing pattern are flagged as
/// negative controls.
pub fn check_tor_rigidity_theta(m: &PresentedModule, n: &PresentedModule, i_max: usize) -> Result<CheckVerdict> {
    same_ring(m, n)?;
    let cap = default_length_cap(m.ring());
    let mut vb = VerdictBuilder::new("tor_rigidity", &[("M", m), ("N", n)], cap);
    vb.arg(format!("max {i_max}"));
    if !m.ring().is_hypersurface() {
        return stop(vb, CheckStatus::Inapplicable, "ring is not a hypersurface");
    }
    let mut res = soft!(vb, minimal_resolution(m, cap));
    if let Some(mf) = res.factorization() {
        let ok = mf.verify();
        vb.set("factorization_verified", ok);
        if !ok {
            return stop(vb, CheckStatus::Fail, "matrix factorization identity does not hold");
        }
    }
    let theta = soft!(vb, theta_with(&mut res, n));
    vb.set("theta", theta.value);
    vb.set("periodic_from", json!(theta.periodic_from));
    let top = match res.pdim() {
        Some(p) => i_max.max(p + 1),
        None => i_max,
    };
    let mut zero = Vec::new();
    let mut lengths = Vec::new();
    for i in 0..=top {
        let t = soft!(vb, tor_at(&mut res, n, i));
        zero.push(soft!(vb, t.is_zero()));
        lengths.push(length_json(soft!(vb, t.length())));
    }
    vb.set("tor_zero", zero.clone());
    vb.set("tor_lengths", lengths);
    let first = zero.iter().position(|&z| z);
    let broken = first.and_then(|k| (k..zero.len()).find(|&i| !zero[i]).map(|i| (k, i)));
    if theta.value != 0 {
        vb.set("negative_control", broken.is_some());
        if let Some((k, i)) = broken {
            vb.set("pattern", json!({"vanishing": k, "nonzero": i}));
        }
        return stop(vb, CheckStatus::Inapplicable, "theta is nonzero");
    }
    let Some(k) = first else {
        return stop(vb, CheckStatus::Inapplicable, "no Tor vanishing among computed indices");
    };
    if let Some((k, i)) = broken {
        vb.set("violation", json!({"vanishing": k, "nonzero": i}));
        return Ok(vb.finish(CheckStatus::Fail));
    }
    vb.set("genuine", res.pdim().map_or(true, |p| k <= p));
    Ok(vb.finish(CheckStatus::Pass))
}

/// `Ext^i(M, N) ≅ Tor_{g−i}(E(M), N)` for `0 ≤ i ≤ g − 1`, compared on
/// Hilbert functions and lengths.
pub fn check_ext_tor_duality(m: &PresentedModule, n: &PresentedModule) -> Result<CheckVerdict> {
    same_ring(m, n)?;
    let cap = default_length_cap(m.ring());
    let mut vb = VerdictBuilder::new("ext_tor", &[("M", m), ("N", n)], cap);
    let mut res = soft!(vb, resolution_prefix(m, 1));
    let g = soft!(vb, grade_with(&mut res));
    vb.set("grade", g);
    if g == 0 {
        return stop(vb, CheckStatus::Inapplicable, "grade is zero");
    }
    let e = soft!(vb, e_module_with(&mut res, g));
    let mut res_e = soft!(vb, resolution_prefix(&e, 1));
    let mut rows = Vec::new();
    let mut all = true;
    for i in 0..g {
        let lhs = soft!(vb, ext_at(&mut res, n, i));
        let rhs = soft!(vb, tor_at(&mut res_e, n, g - i));
        let (same, rec) = soft!(vb, compare_modules(&lhs, &rhs));
        all &= same;
        rows.push(json!({"i": i, "match": same, "hilbert": rec}));
    }
    vb.set("comparisons", rows);
    vb.set("genuine", true);
    Ok(vb.finish(if all { CheckStatus::Pass } else { CheckStatus::Fail }))
}

/// `grade_R M = grade_Q M − 1` for an R-module regarded over `Q`.
pub fn check_grade_drop(m: &PresentedModule) -> Result<CheckVerdict> {
    let cap = default_length_cap(m.ring());
    let mut vb = VerdictBuilder::new("grade_drop", &[("M", m)], cap);
    if !m.ring().is_hypersurface() {
        return stop(vb, CheckStatus::Inapplicable, "ring is not a hypersurface");
    }
    if soft!(vb, m.is_zero()) {
        return stop(vb, CheckStatus::Inapplicable, "M is zero");
    }
    let gr = soft!(vb, grade(m));
    let gq = soft!(vb, grade(&m.as_ambient_module()));
    vb.set("grade_r", gr);
    vb.set("grade_q", gq);
    vb.set("genuine", true);
    Ok(vb.finish(if gr + 1 == gq { CheckStatus::Pass } else { CheckStatus::Fail }))
}

/// `ξ̄_i(M, N) = χ_{g−i}(E(M), N) ≥ 0`, zero exactly when
/// `Ext^j(M, N) = 0` for all `j ≤ i`. Without an index every
/// `1 ≤ i ≤ g − 1` is checked.
pub fn check_xi_chi_bridge(m: &PresentedModule, n: &PresentedModule, i: Option<usize>) -> Result<CheckVerdict> {
    same_ring(m, n)?;
    let cap = default_length_cap(m.ring());
    let mut vb = VerdictBuilder::new("xi_chi", &[("M", m), ("N", n)], cap);
    if let Some(i) = i {
        vb.arg(format!("index {i}"));
    }
    if m.ring().is_hypersurface() {
        return stop(vb, CheckStatus::Inapplicable, "ring is not regular");
    }
    let mut res = soft!(vb, resolution_prefix(m, 1));
    let g = soft!(vb, grade_with(&mut res));
    vb.set("grade", g);
    let range: Vec<usize> = match i {
        Some(i) if i >= 1 && i < g => vec![i],
        Some(_) => return stop(vb, CheckStatus::Inapplicable, "index outside 1..grade-1"),
        None => (1..g).collect(),
    };
    if range.is_empty() {
        return stop(vb, CheckStatus::Inapplicable, "grade below 2");
    }
    let top = *range.last().expect("nonempty");
    let table = soft!(vb, ext_with(&mut res, n, top));
    if table.partial {
        return stop(vb, CheckStatus::Inconclusive, "Ext table truncated");
    }
    let lens = table.lengths();
    vb.set("ext_lengths", lens.iter().map(|&l| length_json(l)).collect::<Vec<_>>());
    let finite: Vec<u64> = lens.iter().map_while(|l| l.finite()).collect();
    let range: Vec<usize> = range.into_iter().filter(|&i| i < finite.len()).collect();
    if range.is_empty() {
        return stop(vb, CheckStatus::Inapplicable, "Ext lengths not finite in range");
    }
    let e = soft!(vb, e_module_with(&mut res, g));
    let mut res_e = soft!(vb, minimal_resolution(&e, cap));
    let mut rows = Vec::new();
    let mut ok = true;
    for &i in &range {
        let rev: Vec<u64> = finite[..=i].iter().rev().copied().collect();
        let xi = alternating(&rev);
        let vanish = finite[..=i].iter().all(|&l| l == 0);
        let chi = match chi_with(&mut res_e, n, g - i) {
            Ok(c) => c,
            Err(Error::Hypothesis(msg)) => {
                vb.set("reason", format!("Tor of E(M) has infinite length while Ext is finite: {msg}"));
                return Ok(vb.finish(CheckStatus::Fail));
            }
            Err(e) => soft!(vb, Err::<i64, _>(e)),
        };
        let good = xi == chi && xi >= 0 && (xi == 0) == vanish;
        ok &= good;
        rows.push(json!({"i": i, "xi_bar": xi, "chi": chi, "ext_vanish": vanish, "ok": good}));
    }
    vb.set("comparisons", rows);
    vb.set("genuine", true);
    Ok(vb.finish(if ok { CheckStatus::Pass } else { CheckStatus::Fail }))
}

/// Over a regular ring, `Ext^n(M, N) = 0` with `n ≤ grade M` gives
/// `Ext^{n−1}(M, R) ⊗ N ≅ Ext^{n−1}(M, N)`. Without an index every
/// qualifying `n ≥ 1` is checked.
pub fn check_jothilingam(m: &PresentedModule, n: &PresentedModule, index: Option<usize>) -> Result<CheckVerdict> {
    same_ring(m, n)?;
    let cap = default_length_cap(m.ring());
    let mut vb = VerdictBuilder::new("jothilingam", &[("M", m), ("N", n)], cap);
    if let Some(k) = index {
        vb.arg(format!("index {k}"));
    }
    if m.ring().is_hypersurface() {
        return stop(vb, CheckStatus::Inapplicable, "ring is not regular");
    }
    let mut res = soft!(vb, resolution_prefix(m, 1));
    let g = soft!(vb, grade_with(&mut res));
    vb.set("grade", g);
    let candidates: Vec<usize> = match index {
        Some(k) if k >= 1 && k <= g => vec![k],
        Some(_) => return stop(vb, CheckStatus::Inapplicable, "index outside 1..grade"),
        None => (1..=g).collect(),
    };
    let mut used = Vec::new();
    for k in candidates {
        if soft!(vb, soft!(vb, ext_at(&mut res, n, k)).is_zero()) {
            used.push(k);
        }
    }
    vb.set("vanishing", used.clone());
    if used.is_empty() {
        return stop(vb, CheckStatus::Inapplicable, "no Ext^n(M,N) vanishes in range");
    }
    let r = ring_module(m.ring());
    let mut rows = Vec::new();
    let mut ok = true;
    for k in used {
        let lhs = soft!(vb, soft!(vb, ext_at(&mut res, &r, k - 1)).tensor(n));
        let rhs = soft!(vb, ext_at(&mut res, n, k - 1));
        let (same, rec) = soft!(vb, compare_modules(&lhs, &rhs));
        ok &= same;
        rows.push(json!({"n": k, "match": same, "hilbert": rec}));
    }
    vb.set("comparisons", rows);
    vb.set("genuine", true);
    Ok(vb.finish(if ok { CheckStatus::Pass } else { CheckStatus::Fail }))
}

/// `χ_j(M, N) ≥ 0` for every `j` whose Tor tail has finite length, and for
/// `j ≥ 1` zero exactly when the tail vanishes.
pub fn check_chi_positivity(m: &PresentedModule, n: &PresentedModule) -> Result<CheckVerdict> {
    same_ring(m, n)?;
    let cap = default_length_cap(m.ring());
    let mut vb = VerdictBuilder::new("chi_positivity", &[("M", m), ("N", n)], cap);
    if m.ring().is_hypersurface() {
        return stop(vb, CheckStatus::Inapplicable, "ring is not regular");
    }
    let mut res = soft!(vb, minimal_resolution(m, cap));
    let Some(p) = res.pdim() else {
        return stop(vb, CheckStatus::Inconclusive, "resolution did not terminate");
    };
    vb.set("pdim", p);
    let mut lens = Vec::new();
    for i in 0..=p {
        lens.push(soft!(vb, soft!(vb, tor_at(&mut res, n, i)).length()));
    }
    vb.set("tor_lengths", lens.iter().map(|&l| length_json(l)).collect::<Vec<_>>());
    // smallest j with a finite tail
    let start = (0..=p).find(|&j| lens[j..].iter().all(|l| l.is_finite()));
    let Some(start) = start else {
        return stop(vb, CheckStatus::Inapplicable, "no Tor tail of finite length");
    };
    let finite: Vec<u64> = lens.iter().map(|l| l.finite().unwrap_or(0)).collect();
    let mut rows = Vec::new();
    let mut ok = true;
    for j in start..=p {
        let chi = alternating(&finite[j..]);
        let vanish = finite[j..].iter().all(|&l| l == 0);
        let good = chi >= 0 && (j == 0 || (chi == 0) == vanish);
        ok &= good;
        rows.push(json!({"j": j, "chi": chi, "tail_vanishes": vanish, "ok": good}));
    }
    vb.set("chi", rows);
    vb.set("genuine", true);
    Ok(vb.finish(if ok { CheckStatus::Pass } else { CheckStatus::Fail }))
}

/// Over a hypersurface with finite `Ext^{≤i}` lengths, `i ≤ grade M`:
/// `Ext^i = 0` forces `Ext^j = 0` for `j ≤ i`, and
/// `ξ̄_i^Q(M, N) ≤ length Ext_R^i(M, N)`.
pub fn check_finite_length_vanishing(m: &PresentedModule, n: &PresentedModule) -> Result<CheckVerdict> {
    same_ring(m, n)?;
    let cap = default_length_cap(m.ring());
    let mut vb = VerdictBuilder::new("finite_length_vanishing", &[("M", m), ("N", n)], cap);
    if !m.ring().is_hypersurface() {
        return stop(vb, CheckStatus::Inapplicable, "ring is not a hypersurface");
    }
    let mut res = soft!(vb, resolution_prefix(m, 1));
    let g = soft!(vb, grade_with(&mut res));
    vb.set("grade", g);
    if g == 0 {
        return stop(vb, CheckStatus::Inapplicable, "grade is zero");
    }
    let table = soft!(vb, ext_with(&mut res, n, g));
    if table.partial {
        return stop(vb, CheckStatus::Inconclusive, "Ext table truncated");
    }
    let lens = table.lengths();
    vb.set("ext_lengths", lens.iter().map(|&l| length_json(l)).collect::<Vec<_>>());
    let finite: Vec<u64> = lens.iter().map_while(|l| l.finite()).collect();
    if finite.len() < 2 {
        return stop(vb, CheckStatus::Inapplicable, "Ext lengths not finite in range");
    }
    let mq = m.as_ambient_module();
    let nq = n.as_ambient_module();
    let mut rows = Vec::new();
    let mut ok = true;
    for i in 1..finite.len() {
        let rigid = finite[i] != 0 || finite[..i].iter().all(|&l| l == 0);
        let xi = match xi_bar(&mq, &nq, i) {
            Ok(x) => x,
            Err(Error::Hypothesis(msg)) => {
                vb.set("reason", format!("Ext over Q has infinite length while Ext over R is finite: {msg}"));
                return Ok(vb.finish(CheckStatus::Fail));
            }
            Err(e) => soft!(vb, Err::<i64, _>(e)),
        };
        let bound = xi <= finite[i] as i64;
        ok &= rigid && bound;
        rows.push(json!({"i": i, "xi_bar_q": xi, "ext_length": finite[i], "rigid": rigid, "bound": bound}));
    }
    vb.set("comparisons", rows);
    vb.set("genuine", finite[1..].iter().any(|&l| l == 0));
    Ok(vb.finish(if ok { CheckStatus::Pass } else { CheckStatus::Fail }))
}

/// Runs a check by its command name. Single-module checks ignore `n`.
pub fn check_by_name(
    name: &str,
    m: &PresentedModule,
    n: Option<&PresentedModule>,
    opts: CheckOptions,
) -> Result<CheckVerdict> {
    let need = |n: Option<&PresentedModule>| {
        n.cloned()
            .ok_or_else(|| Error::Usage(format!("check {name} needs two modules")))
    };
    let default_max = m.ring().nvars() + 3;
    match name {
        "ext_rigidity" => check_ext_rigidity(m, &need(n)?, opts.max.unwrap_or(m.ring().nvars())),
        "self_ext" => check_self_ext_nonvanishing(m),
        "tor_rigidity" => check_tor_rigidity_theta(m, &need(n)?, opts.max.unwrap_or(default_max)),
        "ext_tor" => check_ext_tor_duality(m, &need(n)?),
        "grade_drop" => check_grade_drop(m),
        "xi_chi" => check_xi_chi_bridge(m, &need(n)?, opts.index),
        "jothilingam" => check_jothilingam(m, &need(n)?, opts.index),
        "chi_positivity" => check_chi_positivity(m, &need(n)?),
        "finite_length_vanishing" => check_finite_length_vanishing(m, &need(n)?),
        _ => Err(Error::Usage(format!("unknown check `{name}`"))),
    }
}
