mod common;

use std::sync::{Arc, Mutex};

use extrigid::audit::set_audit_sink;
use extrigid::invariants::{ext, residue_field, ring_module, tor};
use extrigid::ring::make_ring;
use extrigid::rigidity::{generate_module, RandomModuleSpec, RandomShape};

#[test]
fn ext_and_tor_agree_with_dense_oracle() {
    let log: Arc<Mutex<(usize, Vec<String>)>> = Arc::default();
    let sink = log.clone();
    set_audit_sink(Some(Arc::new(move |rec| {
        if let Some(outcome) = common::audit(rec) {
            let mut g = sink.lock().unwrap();
            g.0 += 1;
            if let Err(msg) = outcome {
                g.1.push(msg);
            }
        }
    })));

    let rings = [
        make_ring(101, &["x", "y", "z"], None).unwrap(),
        make_ring(32003, &["x", "y", "z"], Some("x*y - z^2")).unwrap(),
        make_ring(7, &["x", "y"], Some("x^3 + y^3")).unwrap(),
    ];
    for ring in &rings {
        let k = residue_field(ring);
        ext(&k, &ring_module(ring), 3).unwrap();
        tor(&k, &k, 3).unwrap();
        for seed in 0..6u64 {
            let shapes = [RandomShape::Generic, RandomShape::FiniteLength];
            let m = generate_module(&RandomModuleSpec::new(seed, ring.clone(), shapes[seed as usize % 2])).unwrap();
            let n = generate_module(&RandomModuleSpec::new(seed + 100, ring.clone(), RandomShape::Generic)).unwrap();
            ext(&m, &n, 2).unwrap();
            tor(&m, &n, 2).unwrap();
        }
    }
    set_audit_sink(None);

    let (checked, bad) = log.lock().unwrap().clone();
    assert!(checked > 50, "only {checked} modules audited");
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn oracle_detects_a_wrong_map() {
    // Replacing the last Koszul map of k over k[x,y] by x times itself
    // keeps a complex but leaves H_1 = (R/x)(-2).
    use extrigid::freemap::GradedFreeMap;
    use extrigid::module::{ModuleMap, PresentedModule};
    let q = make_ring(101, &["x", "y"], None).unwrap();
    let p = |s: &str| q.parse(s).unwrap();
    let free = |d: Vec<i32>| PresentedModule::free(q.clone(), d);
    let d1 = GradedFreeMap::new(q.clone(), vec![0], vec![1, 1], vec![vec![p("x"), p("y")]]).unwrap();
    let good = GradedFreeMap::new(q.clone(), vec![1, 1], vec![2], vec![vec![p("-y")], vec![p("x")]]).unwrap();
    let bad = GradedFreeMap::new(q.clone(), vec![1, 1], vec![3], vec![vec![p("-x*y")], vec![p("x^2")]]).unwrap();
    let out = ModuleMap::new(free(vec![1, 1]), free(vec![0]), d1).unwrap();
    let exact = ModuleMap::new(free(vec![2]), free(vec![1, 1]), good).unwrap();
    let broken = ModuleMap::new(free(vec![3]), free(vec![1, 1]), bad).unwrap();
    assert_eq!((1..5).map(|d| common::homology_dim(&exact, &out, d)).sum::<u64>(), 0);
    let h: Vec<u64> = (1..5).map(|d| common::homology_dim(&broken, &out, d)).collect();
    assert_eq!(h, vec![0, 1, 1, 1]);
}
