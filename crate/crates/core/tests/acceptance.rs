//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

mod common;

use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

use extrigid::audit::set_audit_sink;
use extrigid::invariants::{ext, pdim, residue_field, ring_module, theta, tor, Pdim};
use extrigid::report::Settings;
use extrigid::resolution::minimal_resolution;
use extrigid::rigidity::{
    check_self_ext_nonvanishing, check_tor_rigidity_theta, run_campaign, CampaignConfig, CampaignKind, CampaignReport,
    CheckStatus,
};
use extrigid::ring::make_ring;
use extrigid::session::run_source;
use serde_json::json;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e<T: std::fmt::Display>(x: T) -> String {
    x.to_string()
}

fn campaign(kind: CampaignKind, trials: usize, seed: u64) -> Result<CampaignReport, String> {
    let config = CampaignConfig {
        trials,
        seed,
        ..CampaignConfig::default()
    };
    let r = run_campaign(kind, &config).map_err(e)?;
    ensure(r.verdicts.len() == trials, format!("{}: {} verdicts", r.name, r.verdicts.len()))?;
    ensure(r.summary.fail == 0, format!("{}: {} fail verdicts", r.name, r.summary.fail))?;
    ensure(
        r.verdicts.iter().all(|v| !v.witness.replay.is_empty()),
        format!("{}: verdict without a replay witness", r.name),
    )?;
    Ok(r)
}

fn criterion_1() -> Outcome {
    for p in [32003, 101] {
        let q = make_ring(p, &["x", "y", "z"], None).map_err(e)?;
        let m = common::cyclic(&q, &["x^2", "x*y", "x*z"]);
        ensure(pdim(&m).map_err(e)? == Pdim::Finite(3), format!("p={p}: pdim"))?;
        let t = ext(&m, &ring_module(&q), 3).map_err(e)?;
        ensure(!t.entries[1].zero, format!("p={p}: Ext^1 vanishes"))?;
        ensure(t.entries[2].zero, format!("p={p}: Ext^2 nonzero"))?;
    }
    Ok("pdim 3, Ext^2 = 0, Ext^1 != 0 at p = 32003 and 101".into())
}

fn criterion_2() -> Outcome {
    for n in [2usize, 3] {
        let vars: Vec<String> = (0..n).map(|i| format!("x{i}")).collect();
        let q = make_ring(32003, &vars, None).map_err(e)?;
        let k = residue_field(&q);
        let t = tor(&k, &k, n + 1).map_err(e)?;
        let lens: Vec<Option<u64>> = t.lengths().iter().map(|l| l.finite()).collect();
        let expected: Vec<Option<u64>> = (0..=n + 1).map(|i| Some(binom(n as u64, i as u64))).collect();
        ensure(lens == expected, format!("n={n}: Tor lengths {lens:?}"))?;
        let x = ext(&k, &ring_module(&q), n + 1).map_err(e)?;
        let nonzero: Vec<usize> = x.entries.iter().filter(|en| !en.zero).map(|en| en.index).collect();
        ensure(nonzero == vec![n], format!("n={n}: Ext nonzero at {nonzero:?}"))?;
    }
    Ok("Tor_i(k,k) = binomial(n,i) and Ext^i(k,Q) concentrated at n for n = 2, 3".into())
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn criterion_3() -> Outcome {
    let r = campaign(CampaignKind::ExtTor, 100, 3)?;
    let mut compared = 0;
    for v in &r.verdicts {
        ensure(v.status == CheckStatus::Pass, format!("trial {:?}: {}", v.provenance.trial, v.status))?;
        let g = v.datum("grade").and_then(|g| g.as_u64()).unwrap_or(0);
        ensure(g >= 2, format!("trial {:?}: grade {g}", v.provenance.trial))?;
        compared += v.datum("comparisons").and_then(|c| c.as_array()).map_or(0, |a| a.len());
    }
    Ok(format!("100 pairs, {compared} Hilbert prefix comparisons, 0 mismatches"))
}

fn criterion_4() -> Outcome {
    let chi = campaign(CampaignKind::ChiPositivity, 100, 4)?;
    let xi = campaign(CampaignKind::XiChi, 100, 4)?;
    for v in chi.verdicts.iter().chain(&xi.verdicts) {
        ensure(
            v.status == CheckStatus::Pass,
            format!("{} trial {:?}: {}", v.check_name, v.provenance.trial, v.status),
        )?;
    }
    let mut bridges = 0;
    for v in &xi.verdicts {
        for row in v.datum("comparisons").and_then(|c| c.as_array()).into_iter().flatten() {
            ensure(row["xi_bar"] == row["chi"], format!("bridge mismatch {row}"))?;
            bridges += 1;
        }
    }
    Ok(format!("200 instances, {bridges} bridge identities, 0 violations"))
}

fn criterion_5() -> Outcome {
    let r = campaign(CampaignKind::ExtRigidity, 200, 5)?;
    let s = &r.summary;
    ensure(s.pass + s.inapplicable == 200, format!("{s:?}"))?;
    ensure(s.genuine >= 20, format!("only {} genuine passes", s.genuine))?;
    Ok(format!("0 fails, {} pass ({} genuine), {} inapplicable", s.pass, s.genuine, s.inapplicable))
}

fn criterion_6() -> Outcome {
    let r = campaign(CampaignKind::SelfExt, 200, 6)?;
    let ring = make_ring(32003, &["x", "y", "z"], Some("x*y")).map_err(e)?;
    let m = common::cyclic(&ring, &["z"]);
    let v = check_self_ext_nonvanishing(&m).map_err(e)?;
    ensure(v.status == CheckStatus::Pass, format!("R/z: {}", v.status))?;
    ensure(v.datum("ext_zero") == Some(&json!([false, false])), "R/z: Ext^1(M,M) vanishes")?;
    Ok(format!("0 fails in 200 trials ({} pass); R/z passes with Ext^1(M,M) != 0", r.summary.pass))
}

fn verified_everywhere(r: &CampaignReport) -> Result<usize, String> {
    let mut n = 0;
    for v in &r.verdicts {
        if let Some(ok) = v.datum("factorization_verified") {
            ensure(ok == &json!(true), format!("trial {:?}: factorization fails", v.provenance.trial))?;
            n += 1;
        }
    }
    Ok(n)
}

fn criterion_7() -> Outcome {
    let ring = make_ring(32003, &["x", "y"], Some("x*y")).map_err(e)?;
    let a = common::cyclic(&ring, &["x"]);
    let b = common::cyclic(&ring, &["y"]);
    let th = theta(&a, &b).map_err(e)?;
    ensure(th.value == 1, format!("theta = {}", th.value))?;
    let v = check_tor_rigidity_theta(&a, &b, 5).map_err(e)?;
    ensure(v.datum("negative_control") == Some(&json!(true)), "control pair not logged")?;
    let lens = v.datum("tor_lengths").cloned().unwrap_or_default();
    ensure(lens == json!([1, 0, 1, 0, 1, 0]), format!("Tor lengths {lens}"))?;
    let res = minimal_resolution(&a, 8).map_err(e)?;
    ensure(res.factorization().is_some_and(|f| f.verify()), "R/x factorization")?;

    let r = campaign(CampaignKind::TorRigidity, 200, 7)?;
    let theta_zero = r.verdicts.iter().filter(|v| v.status == CheckStatus::Pass).count();
    ensure(theta_zero > 0, "no theta = 0 pass")?;
    ensure(r.summary.negative_controls >= 1, "campaign lacks the control")?;
    let certified = verified_everywhere(&r)?;
    Ok(format!(
        "theta(R/x,R/y) = 1 with Tor 1,0,1,0,..; {theta_zero} theta = 0 passes; {certified} factorizations verified"
    ))
}

fn criterion_8() -> Outcome {
    let r = campaign(CampaignKind::GradeDrop, 100, 8)?;
    ensure(r.summary.pass == 100, format!("{:?}", r.summary))?;
    Ok("grade_R = grade_Q - 1 on 100 modules".into())
}

fn fixtures() -> Vec<PathBuf> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .map(|d| d.filter_map(|e| e.ok()).map(|e| e.path()).collect())
        .unwrap_or_default();
    v.retain(|p| p.extension().is_some_and(|x| x == "dsl"));
    v.sort();
    v
}

fn criterion_10() -> Outcome {
    let files = fixtures();
    ensure(!files.is_empty(), "empty fixture corpus")?;
    for f in &files {
        let src = std::fs::read_to_string(f).map_err(e)?;
        let run = || run_source(&src, &Settings::default()).map(|r| r.stable_json()).map_err(e);
        ensure(run()? == run()?, format!("{} differs between runs", f.display()))?;
    }
    Ok(format!("{} fixtures byte-identical across two runs", files.len()))
}

fn main() {
    let checked = Arc::new(AtomicUsize::new(0));
    let skipped = Arc::new(AtomicUsize::new(0));
    let mismatches = Arc::new(Mutex::new(Vec::<String>::new()));
    {
        let (c, s, m) = (checked.clone(), skipped.clone(), mismatches.clone());
        set_audit_sink(Some(Arc::new(move |rec| match common::audit(rec) {
            None => {
                s.fetch_add(1, Ordering::Relaxed);
            }
            Some(Ok(())) => {
                c.fetch_add(1, Ordering::Relaxed);
            }
            Some(Err(msg)) => {
                c.fetch_add(1, Ordering::Relaxed);
                m.lock().unwrap().push(msg);
            }
        })));
    }

    let criteria: [(usize, fn() -> Outcome, u64); 8] = [
        (1, criterion_1, 5),
        (2, criterion_2, 5),
        (3, criterion_3, 600),
        (4, criterion_4, 600),
        (5, criterion_5, 1800),
        (6, criterion_6, 1800),
        (7, criterion_7, 300),
        (8, criterion_8, 600),
    ];
    let mut failed = 0;
    let mut line = |n: usize, outcome: Outcome, elapsed: Duration, limit: Option<u64>| {
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed > Duration::from_secs(l) => Err(format!("took {elapsed:.2?}, limit {l} s")),
            (o, _) => o,
        };
        match outcome {
            Ok(msg) => println!("PASS criterion {n}: {msg} ({elapsed:.2?})"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {n}: {msg} ({elapsed:.2?})");
            }
        }
    };

    let total = Instant::now();
    for (n, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        line(n, outcome, start.elapsed(), Some(limit));
    }
    set_audit_sink(None);
    let bad = mismatches.lock().unwrap().clone();
    let n_checked = checked.load(Ordering::Relaxed);
    let outcome = if !bad.is_empty() {
        Err(format!("{} mismatches, first: {}", bad.len(), bad[0]))
    } else if n_checked == 0 {
        Err("no Ext/Tor module was audited".into())
    } else {
        Ok(format!(
            "{n_checked} Ext/Tor modules matched the dense oracle, {} out of scope",
            skipped.load(Ordering::Relaxed)
        ))
    };
    line(9, outcome, total.elapsed(), None);

    let start = Instant::now();
    line(10, criterion_10(), start.elapsed(), None);

    if failed > 0 {
        std::process::exit(1);
    }
}
