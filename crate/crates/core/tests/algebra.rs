use nlie::algebra::{
    engel_subalgebra, is_nilpotent_subalgebra, minimal_engel_cartan, normalizer,
    weight_decomposition, weight_relation_check, EngelSearch, NLieAlgebra, StructureTensor,
};
use nlie::combinatorics::combinations;
use nlie::field::{make_field, Field, Gf, Rationals};
use nlie::fixtures;
use nlie::linalg::{Subspace, Vector};
use nlie::oracle::{
    filippov_random_check, naive_bracket, naive_is_subalgebra, random_algebra, GeneratorSpec,
    Strategy,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_tensor<F: Field>(f: &F, n: usize, d: usize, density: f64, rng: &mut ChaCha8Rng) -> NLieAlgebra<F> {
    let mut t = StructureTensor::new(f.clone(), n, d).unwrap();
    for args in combinations(d, n) {
        if rng.random_bool(density) {
            t.set(&args, (0..d).map(|_| f.random(rng)).collect()).unwrap();
        }
    }
    NLieAlgebra::new(t)
}

fn sparse<F: Field>(f: &F, n: usize, d: usize, seed: u64) -> NLieAlgebra<F> {
    random_algebra(&GeneratorSpec {
        arity: n,
        dim: d,
        field: f.clone(),
        strategy: Strategy::Sparse {
            density: 0.3,
            budget: 100_000,
        },
        seed,
    })
    .unwrap()
}

fn random_vectors<F: Field>(f: &F, k: usize, d: usize, rng: &mut ChaCha8Rng) -> Vec<Vector<F>> {
    (0..k).map(|_| (0..d).map(|_| f.random(rng)).collect()).collect()
}

#[test]
fn bracket_is_alternating_and_matches_the_naive_expansion() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = make_field(3, 1).unwrap();
    for _ in 0..50 {
        let a = random_tensor(&f, 3, 5, 0.5, &mut rng);
        let xs = random_vectors(&f, 3, 5, &mut rng);
        let b = a.bracket(&xs).unwrap();
        assert_eq!(b, naive_bracket(&a, &xs));
        let mut perm: Vec<usize> = (0..3).collect();
        perm.shuffle(&mut rng);
        let permuted: Vec<Vector<Gf>> = perm.iter().map(|&i| xs[i].clone()).collect();
        let inversions = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        let odd = inversions % 2 == 1;
        let expected: Vector<Gf> = if odd { b.iter().map(|c| f.neg(c)).collect() } else { b.clone() };
        assert_eq!(a.bracket(&permuted).unwrap(), expected);
        let repeated = [xs[0].clone(), xs[1].clone(), xs[0].clone()];
        assert!(a.bracket(&repeated).unwrap().iter().all(|c| f.is_zero(c)));
    }
}

/// Basis sufficiency: the basis-tuple identity check agrees with evaluation
/// on random vectors, for valid and invalid tensors alike.
#[test]
fn validate_agrees_with_random_vector_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut seen = [0usize; 2];
    for (p, n, d, density) in [(2u64, 3usize, 5usize, 0.15), (3, 2, 4, 0.3), (2, 2, 4, 0.4), (5, 3, 4, 0.5)] {
        let f = make_field(p, 1).unwrap();
        for _ in 0..40 {
            let a = random_tensor(&f, n, d, density, &mut rng);
            let v = a.validate().is_valid();
            assert_eq!(v, filippov_random_check(&a, 500, rng.random()).passed());
            seen[v as usize] += 1;
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

#[test]
fn derived_algebra_and_central_series_are_ideals() {
    let f = make_field(2, 1).unwrap();
    for seed in 0..30 {
        let a = sparse(&f, 3, 5, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ideals = std::iter::once(a.derived_algebra()).chain(a.lower_central_series());
        for s in ideals.filter(|s| !s.is_zero()) {
            for _ in 0..20 {
                let mut xs = random_vectors(&f, 2, 5, &mut rng);
                let k = rng.random_range(0..s.dim());
                xs.push(s.basis()[k].clone());
                assert!(s.contains(&f, &a.bracket(&xs).unwrap()));
            }
        }
    }
}

#[test]
fn subalgebra_test_agrees_with_naive_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let f = make_field(2, 1).unwrap();
    let algebras = [fixtures::pair_char2(&f), fixtures::n5(&f), sparse(&f, 3, 5, 7)];
    for a in &algebras {
        for _ in 0..100 {
            let k = rng.random_range(0..=5);
            let s = Subspace::span(&f, 5, random_vectors(&f, k, 5, &mut rng));
            assert_eq!(a.is_subalgebra(&s), naive_is_subalgebra(a, &s));
        }
    }
}

/// The Engel subalgebra of a tuple is the zero component of its inner
/// derivation's weight decomposition.
#[test]
fn engel_subalgebra_is_the_zero_weight_component() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let f = make_field(2, 1).unwrap();
    let mut algebras: Vec<NLieAlgebra<Gf>> = (0..10).map(|s| sparse(&f, 3, 5, s)).collect();
    algebras.push(fixtures::pair_char2(&f));
    for a in &algebras {
        for _ in 0..10 {
            let tuple = random_vectors(&f, 2, 5, &mut rng);
            let e = engel_subalgebra(a, &tuple).unwrap();
            let d = a.inner_derivation(&tuple).unwrap();
            let w = weight_decomposition(a, &d, 12).unwrap();
            let emb = f.extend(w.extension_degree).unwrap();
            assert_eq!(e.map_field(&emb), w.zero_component());
            assert_eq!(w.components.iter().map(|(_, c)| c.dim()).sum::<usize>(), 5);
            assert!(weight_relation_check(a, &w).unwrap());
        }
    }
}

#[test]
fn minimal_engel_is_cartan_on_the_fixtures() {
    let f = make_field(2, 1).unwrap();
    let a = fixtures::pair_char2(&f);
    let r = minimal_engel_cartan(&a, &EngelSearch::default()).unwrap();
    assert_eq!(r.h.dim(), 2);
    assert!(r.exhaustive);
    assert!(is_nilpotent_subalgebra(&r.algebra, &r.h));
    assert_eq!(normalizer(&r.algebra, &r.h), r.h);
    assert_eq!(engel_subalgebra(&a, &r.witness).unwrap(), r.h);
}

#[test]
fn random_search_mode_matches_exhaustive_minimum() {
    let f = make_field(2, 1).unwrap();
    let a = fixtures::pair_char2(&f);
    let random = EngelSearch {
        exhaustive_cap: 0,
        ..EngelSearch::default()
    };
    let r = minimal_engel_cartan(&a, &random).unwrap();
    assert!(!r.exhaustive);
    assert_eq!(r.h.dim(), 2);
}

#[test]
fn rational_a4_is_valid_and_perfect() {
    let a = fixtures::a4(&Rationals);
    assert!(a.validate().is_valid());
    assert!(a.is_perfect());
    assert!(!a.is_nilpotent());
}

#[test]
fn scalar_extension_preserves_validity_and_brackets() {
    let f = make_field(2, 1).unwrap();
    let a = fixtures::pair_char2(&f);
    let (ext, emb) = a.extend(2).unwrap();
    assert!(ext.validate().is_valid());
    let k = emb.target().clone();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let xs = random_vectors(&f, 3, 5, &mut rng);
        let lifted: Vec<Vector<Gf>> = xs.iter().map(|v| emb.apply_all(v)).collect();
        assert_eq!(ext.bracket(&lifted).unwrap(), emb.apply_all(&a.bracket(&xs).unwrap()));
    }
    assert_eq!(k.order(), Some(4));
}
