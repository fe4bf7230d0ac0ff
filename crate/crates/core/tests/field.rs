use nlie::field::{make_field, Field, Gf, Poly, Rationals};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const AXIOM_SAMPLES: usize = 10_000;

fn fields() -> Vec<Gf> {
    [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 2), (7, 1), (2, 8), (3, 5)]
        .iter()
        .map(|&(p, k)| make_field(p, k).unwrap())
        .collect()
}

fn check_axioms<F: Field>(f: &F, seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..AXIOM_SAMPLES {
        let (a, b, c) = (f.random(&mut rng), f.random(&mut rng), f.random(&mut rng));
        assert_eq!(f.add(&a, &b), f.add(&b, &a));
        assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        assert_eq!(
            f.mul(&a, &f.add(&b, &c)),
            f.add(&f.mul(&a, &b), &f.mul(&a, &c))
        );
        assert_eq!(f.add(&a, &f.zero()), a);
        assert_eq!(f.mul(&a, &f.one()), a);
        assert!(f.is_zero(&f.add(&a, &f.neg(&a))));
        if f.is_zero(&a) {
            assert!(f.inv(&a).is_err());
        } else {
            assert!(f.is_one(&f.mul(&a, &f.inv(&a).unwrap())));
        }
    }
}

#[test]
fn field_axioms_on_random_samples() {
    for (i, f) in fields().iter().enumerate() {
        check_axioms(f, i as u64);
    }
    check_axioms(&Rationals, 99);
}

#[test]
fn frobenius_is_additive_and_has_order_k() {
    for f in fields() {
        let p = f.characteristic();
        let q = f.order().unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        for _ in 0..500 {
            let (a, b) = (f.random(&mut rng), f.random(&mut rng));
            assert_eq!(f.pow(&f.add(&a, &b), p), f.add(&f.pow(&a, p), &f.pow(&b, p)));
            assert_eq!(f.pow(&a, q), a);
        }
    }
}

#[test]
fn element_indexing_is_a_bijection() {
    for f in fields().into_iter().filter(|f| f.order().unwrap() <= 256) {
        let q = f.order().unwrap();
        let mut seen = std::collections::HashSet::new();
        for i in 0..q {
            assert!(seen.insert(f.element(i).unwrap()));
        }
        assert!(f.element(q).is_none());
    }
}

/// Every embedding GF(p^k) -> GF(p^(km)) with target of order at most 16,
/// checked on all pairs of source elements.
#[test]
fn small_embeddings_are_injective_homomorphisms() {
    let mut checked = 0;
    for (p, k) in [(2u64, 1u32), (2, 2), (3, 1), (2, 3)] {
        let f = make_field(p, k).unwrap();
        for m in 1..=4u32 {
            if p.pow(k * m) > 16 {
                continue;
            }
            let emb = f.extend(m).unwrap();
            let t = emb.target().clone();
            assert_eq!(t.order(), Some(p.pow(k * m)));
            let q = f.order().unwrap();
            let elems: Vec<u64> = (0..q).map(|i| f.element(i).unwrap()).collect();
            let images: std::collections::HashSet<u64> = elems.iter().map(|a| emb.apply(a)).collect();
            assert_eq!(images.len(), elems.len());
            for a in &elems {
                for b in &elems {
                    assert_eq!(emb.apply(&f.add(a, b)), t.add(&emb.apply(a), &emb.apply(b)));
                    assert_eq!(emb.apply(&f.mul(a, b)), t.mul(&emb.apply(a), &emb.apply(b)));
                }
            }
            assert!(t.is_one(&emb.apply(&f.one())));
            checked += 1;
        }
    }
    assert!(checked >= 6);
}

#[test]
fn scalar_text_round_trips() {
    for f in fields() {
        let q = f.order().unwrap().min(1000);
        for i in 0..q {
            let a = f.element(i).unwrap();
            assert_eq!(f.parse_scalar(&f.format_scalar(&a)).unwrap(), a);
        }
    }
    let q = Rationals;
    for text in ["0", "-3", "7/2", "-1/3"] {
        let a = q.parse_scalar(text).unwrap();
        assert_eq!(q.format_scalar(&a), text);
    }
    assert!(q.parse_scalar("1/0").is_err());
    assert!(make_field(2, 1).unwrap().parse_scalar("x").is_err());
}

#[test]
fn field_construction_errors() {
    assert!(make_field(4, 1).is_err());
    assert!(make_field(1, 1).is_err());
    assert!(make_field(2, 0).is_err());
}

/// Roots with multiplicity of planted products over GF(q), compared with
/// exhaustive evaluation and repeated division.
#[test]
fn roots_match_exhaustive_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for f in fields().into_iter().filter(|f| f.order().unwrap() <= 256) {
        for _ in 0..30 {
            let deg = rand::Rng::random_range(&mut rng, 1..=6);
            let mut coeffs: Vec<u64> = (0..deg).map(|_| f.random(&mut rng)).collect();
            coeffs.push(f.one());
            let p = Poly::new(&f, coeffs);
            let roots = f.roots(&p).unwrap();
            for i in 0..f.order().unwrap() {
                let x = f.element(i).unwrap();
                let mut mult = 0;
                let mut rest = p.clone();
                loop {
                    let (quot, rem) = rest.div_rem(&f, &Poly::linear(&f, &x)).unwrap();
                    if !rem.is_zero() {
                        break;
                    }
                    mult += 1;
                    rest = quot;
                }
                let listed = roots.iter().find(|(r, _)| *r == x).map_or(0, |(_, m)| *m);
                assert_eq!(listed, mult);
            }
        }
    }
}

#[test]
fn splitting_degree_of_irreducibles() {
    let f = make_field(2, 1).unwrap();
    // x^2 + x + 1 splits over GF(4), x^3 + x + 1 over GF(8)
    assert_eq!(f.splitting_degree(&Poly::new(&f, vec![1, 1, 1])).unwrap(), 2);
    assert_eq!(f.splitting_degree(&Poly::new(&f, vec![1, 1, 0, 1])).unwrap(), 3);
    // their product needs both
    let prod = Poly::new(&f, vec![1, 1, 1]).mul(&f, &Poly::new(&f, vec![1, 1, 0, 1]));
    assert_eq!(f.splitting_degree(&prod).unwrap(), 6);
}

proptest! {
    #[test]
    fn gf9_division_inverts_multiplication(a in 0u64..9, b in 1u64..9) {
        let f = make_field(3, 2).unwrap();
        let c = f.mul(&a, &b);
        prop_assert_eq!(f.div(&c, &b).unwrap(), a);
    }

    #[test]
    fn rational_arithmetic_is_exact(n1 in -50i64..50, d1 in 1i64..20, n2 in -50i64..50, d2 in 1i64..20) {
        let q = Rationals;
        let a = q.div(&q.from_i64(n1), &q.from_i64(d1)).unwrap();
        let b = q.div(&q.from_i64(n2), &q.from_i64(d2)).unwrap();
        let s = q.add(&a, &b);
        prop_assert_eq!(q.sub(&s, &b), a.clone());
        if !q.is_zero(&b) {
            prop_assert_eq!(q.div(&q.mul(&a, &b), &b).unwrap(), a);
        }
    }
}
