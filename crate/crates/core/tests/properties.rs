mod common;

use std::cmp::Ordering;
use std::sync::Arc;

use proptest::prelude::*;

use extrigid::poly::{monomial_compare, Monomial, MonomialOrder, PolyRing, Polynomial, PrimeField};
use extrigid::ring::{make_ring, RingContext};
use extrigid::rigidity::{generate_module, RandomModuleSpec, RandomShape};
use extrigid::script::{parse_script, render_module_decl, render_ring_decls, Binding, StatementKind};

const PRIMES: [u64; 5] = [3, 5, 7, 101, 32003];
const ORDERS: [MonomialOrder; 3] = [MonomialOrder::DegRevLex, MonomialOrder::Lex, MonomialOrder::DegLex];

fn ring3(p: u64, order: MonomialOrder) -> PolyRing {
    PolyRing::new(p, &["x", "y", "z"], order).unwrap()
}

fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(0u32..5, 3).prop_map(|e| Monomial::new(&e))
}

fn polynomial(ring: PolyRing) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((monomial(), -50i64..50), 0..6).prop_map(move |terms| {
        let f = ring.field();
        ring.from_terms(terms.into_iter().map(|(m, c)| (m, f.from_i64(c))))
    })
}

/// Evaluation straight from the term list with u128 arithmetic.
fn eval(p: u64, a: &Polynomial, point: &[u64]) -> u64 {
    let p = p as u128;
    let mut acc = 0u128;
    for (m, c) in a.terms() {
        let mut v = *c as u128;
        for (k, &x) in point.iter().enumerate() {
            for _ in 0..m.exponent(k) {
                v = v * x as u128 % p;
            }
        }
        acc = (acc + v) % p;
    }
    acc as u64
}

proptest! {
    #[test]
    fn field_matches_integer_arithmetic(pi in 0usize..5, a in 0u64..1 << 40, b in 0u64..1 << 40, e in 0u64..200) {
        let p = PRIMES[pi];
        let f = PrimeField::new(p).unwrap();
        let (x, y) = ((a % p) as u32, (b % p) as u32);
        prop_assert_eq!(f.add(x, y) as u64, (a + b) % p);
        prop_assert_eq!(f.sub(x, y) as u64, ((a % p) + p - (b % p)) % p);
        prop_assert_eq!(f.mul(x, y) as u64, ((a as u128 * b as u128) % p as u128) as u64);
        prop_assert_eq!(f.from_i64(-(a as i64)) as u64, (p - a % p) % p);
        let mut pw = 1u128;
        for _ in 0..e {
            pw = pw * (a % p) as u128 % p as u128;
        }
        prop_assert_eq!(f.pow(x, e) as u64, pw as u64);
        if x != 0 {
            prop_assert_eq!(f.mul(x, f.inv(x)), 1);
        }
    }

    #[test]
    fn polynomial_ring_axioms(
        (pi, a, b, c) in (0usize..5).prop_flat_map(|pi| {
            let r = ring3(PRIMES[pi], MonomialOrder::DegRevLex);
            (Just(pi), polynomial(r.clone()), polynomial(r.clone()), polynomial(r))
        }),
        point in prop::collection::vec(0u64..1000, 3),
    ) {
        let r = ring3(PRIMES[pi], MonomialOrder::DegRevLex);
        let p = PRIMES[pi];
        let ab = r.mul(&a, &b).unwrap();
        prop_assert_eq!(&ab, &r.mul(&b, &a).unwrap());
        prop_assert_eq!(r.mul(&ab, &c).unwrap(), r.mul(&a, &r.mul(&b, &c).unwrap()).unwrap());
        let lhs = r.mul(&a, &r.add(&b, &c).unwrap()).unwrap();
        let rhs = r.add(&ab, &r.mul(&a, &c).unwrap()).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        prop_assert!(r.sub(&a, &a).unwrap().is_zero());
        prop_assert_eq!(r.mul(&a, &r.one()).unwrap(), a.clone());
        let pt: Vec<u64> = point.iter().map(|x| x % p).collect();
        prop_assert_eq!(eval(p, &ab, &pt), eval(p, &a, &pt) * eval(p, &b, &pt) % p);
        prop_assert_eq!(eval(p, &r.add(&a, &b).unwrap(), &pt), (eval(p, &a, &pt) + eval(p, &b, &pt)) % p);
    }

    #[test]
    fn monomial_orders_are_total_and_multiplicative(
        oi in 0usize..3, a in monomial(), b in monomial(), c in monomial(),
    ) {
        let o = ORDERS[oi];
        let ab = monomial_compare(&a, &b, o);
        prop_assert_eq!(ab, monomial_compare(&b, &a, o).reverse());
        prop_assert_eq!(ab == Ordering::Equal, a == b);
        prop_assert_eq!(monomial_compare(&a.mul(&c), &b.mul(&c), o), ab);
        prop_assert_ne!(monomial_compare(&a, &Monomial::new(&[0, 0, 0]), o), Ordering::Less);
        let bc = monomial_compare(&b, &c, o);
        if ab == bc && ab != Ordering::Equal {
            prop_assert_eq!(monomial_compare(&a, &c, o), ab);
        }
    }

    #[test]
    fn polynomials_render_and_parse_back(
        oi in 0usize..3,
        a in polynomial(ring3(101, MonomialOrder::DegRevLex)),
    ) {
        let r = ring3(101, ORDERS[oi]);
        let a = r.from_terms(a.terms().iter().copied());
        prop_assert_eq!(r.parse(&r.render(&a)).unwrap(), a);
    }

    #[test]
    fn random_modules_round_trip_through_scripts(seed in any::<u64>(), hyper in any::<bool>()) {
        let ring = if hyper {
            make_ring(32003, &["x", "y", "z"], Some("x*z - y^2")).unwrap()
        } else {
            make_ring(7, &["x", "y", "z"], None).unwrap()
        };
        let m = generate_module(&RandomModuleSpec::new(seed, ring.clone(), RandomShape::Generic)).unwrap();
        let src = format!("{}{}", render_ring_decls(&ring, "S", "R"), render_module_decl(&m, "M", if hyper { "R" } else { "S" }));
        let script = parse_script(&src).unwrap();
        let parsed = script.statements.iter().find_map(|s| match &s.kind {
            StatementKind::Module { module, .. } => Some(module.clone()),
            _ => None,
        }).unwrap();
        prop_assert_eq!(parsed.generator_degrees(), m.generator_degrees());
        prop_assert!(parsed.presentation() == m.presentation());
        prop_assert_eq!(render_module_decl(&parsed, "M", "R"), render_module_decl(&m, "M", "R"));
    }

    #[test]
    fn normal_forms_are_idempotent(seed in any::<u64>(), coeffs in prop::collection::vec(0u32..7, 12)) {
        let ring = make_ring(7, &["x", "y", "z"], None).unwrap();
        let m = generate_module(&RandomModuleSpec::new(seed, ring.clone(), RandomShape::Generic)).unwrap();
        let gb = m.gb().unwrap();
        // a random element of degree 3 in every component
        let mut k = 0;
        let comps: Vec<Polynomial> = m.generator_degrees().iter().map(|&d| {
            let terms = extrigid::poly::monomials_of_degree(3, (3 - d).max(0) as u32).into_iter().map(|mono| {
                k += 1;
                (mono, coeffs[k % coeffs.len()])
            }).collect::<Vec<_>>();
            ring.poly().from_terms(terms)
        }).collect();
        let v = gb.element(&comps);
        let nf = gb.normal_form(&v);
        prop_assert_eq!(gb.normal_form(&nf), nf.clone());
        let rank = m.num_generators();
        let diff: Vec<Polynomial> = comps.iter().zip(nf.components(0, rank, 3)).map(|(a, b)| ring.poly().sub(a, &b).unwrap()).collect();
        prop_assert!(m.is_relation(&diff).unwrap());
    }

    #[test]
    fn dual_is_an_involution(seed in any::<u64>()) {
        let ring = make_ring(101, &["x", "y", "z"], Some("x*y")).unwrap();
        let m = generate_module(&RandomModuleSpec::new(seed, ring, RandomShape::Generic)).unwrap();
        let d = m.presentation().dual();
        prop_assert_eq!(d.rows(), m.presentation().cols());
        prop_assert!(d.dual() == *m.presentation());
    }

    #[test]
    fn hilbert_function_matches_dense_oracle(seed in any::<u64>(), hyper in any::<bool>(), shape in 0usize..3) {
        let ring = if hyper {
            make_ring(32003, &["x", "y", "z"], Some("x^2 + y*z")).unwrap()
        } else {
            make_ring(101, &["x", "y", "z"], None).unwrap()
        };
        let shape = match shape {
            0 => RandomShape::Generic,
            1 => RandomShape::FiniteLength,
            _ => RandomShape::CohenMacaulay,
        };
        let Ok(m) = generate_module(&RandomModuleSpec::new(seed, ring, shape)) else { return Ok(()) };
        let lo = m.min_generator_degree().unwrap_or(0);
        let engine = m.hilbert_range(lo, lo + 5).unwrap();
        let oracle: Vec<u64> = (lo..=lo + 5).map(|d| common::module_dim(&m, d)).collect();
        prop_assert_eq!(engine, oracle);
    }

    #[test]
    fn parser_never_panics(src in "\\PC{0,120}") {
        let _ = parse_script(&src);
    }

    #[test]
    fn parser_survives_mutated_scripts(cut in 0usize..200, insert in "[\\[\\];,=/()a-z0-9^*+ -]{0,4}") {
        let base = "ring Q = poly(p=101, vars=[x,y]); ring R = Q / (x*y); \
                    module M over R = coker [[x, y^2], [0, x]] degrees [0, 1]; ext M R max 2; check self_ext M;";
        let at = cut.min(base.len());
        let src = format!("{}{}{}", &base[..at], insert, &base[at..]);
        if let Err(d) = parse_script(&src) {
            prop_assert!(d.line >= 1 && d.column >= 1 && d.offset <= src.len());
        }
    }
}

#[test]
fn oracle_sanity_on_known_modules() {
    let q = make_ring(101, &["x", "y", "z"], None).unwrap();
    let m = common::cyclic(&q, &["x^2", "x*y", "x*z"]);
    let dims: Vec<u64> = (0..5).map(|d| common::module_dim(&m, d)).collect();
    // past degree 1 only the monomials in y, z survive
    assert_eq!(dims, vec![1, 3, 3, 4, 5]);
    let r: Arc<RingContext> = make_ring(101, &["x", "y"], Some("x*y")).unwrap();
    let a = common::cyclic(&r, &["x"]);
    assert_eq!((0..4).map(|d| common::module_dim(&a, d)).collect::<Vec<_>>(), vec![1, 1, 1, 1]);
    let b = Binding::Ring(r.clone()).as_module();
    assert_eq!((0..4).map(|d| common::module_dim(&b, d)).collect::<Vec<_>>(), vec![1, 2, 2, 2]);
}
