//! Small named algebras used by tests, the generator and the CLI.

use alloc::vec::Vec;

use crate::algebra::{NLieAlgebra, StructureTensor};
use crate::field::{make_field, Field, Gf};
use crate::linalg::{unit_vector, Vector};

fn scaled_unit<F: Field>(f: &F, d: usize, i: usize, c: i64) -> Vector<F> {
    let mut v = unit_vector(f, d, i);
    v[i] = f.from_i64(c);
    v
}

/// Builds an algebra from `(args, [(index, coefficient)])` entries with
/// 0-based indices.
pub fn from_entries<F: Field>(
    f: &F,
    n: usize,
    d: usize,
    entries: &[(&[usize], &[(usize, i64)])],
) -> NLieAlgebra<F> {
    let mut t = StructureTensor::new(f.clone(), n, d).expect("fixture shape");
    for (args, value) in entries {
        let mut v: Vector<F> = (0..d).map(|_| f.zero()).collect();
        for &(i, c) in value.iter() {
            v[i] = f.add(&v[i], &f.from_i64(c));
        }
        t.set(args, v).expect("fixture entry");
    }
    NLieAlgebra::new(t)
}

pub fn abelian<F: Field>(f: &F, n: usize, d: usize) -> NLieAlgebra<F> {
    NLieAlgebra::new(StructureTensor::new(f.clone(), n, d).expect("fixture shape"))
}

/// 3-Lie, dimension 5, only `[e1, e2, e3] = e4`.
pub fn n5<F: Field>(f: &F) -> NLieAlgebra<F> {
    from_entries(f, 3, 5, &[(&[0, 1, 2], &[(3, 1)])])
}

/// The simple 4-dimensional 3-Lie algebra:
/// `[e1..^e_i..e4] = (-1)^i e_i` (1-based `i`), all plus signs in
/// characteristic 2.
pub fn a4<F: Field>(f: &F) -> NLieAlgebra<F> {
    let d = 4;
    let mut t = StructureTensor::new(f.clone(), 3, d).expect("fixture shape");
    for omit in 0..d {
        let args: Vec<usize> = (0..d).filter(|&j| j != omit).collect();
        let sign = if omit % 2 == 0 { -1 } else { 1 };
        t.set(&args, scaled_unit(f, d, omit, sign)).expect("fixture entry");
    }
    NLieAlgebra::new(t)
}

/// [`a4`] with `[e2, e3, e4]` replaced by `e2`; violates the identity.
pub fn perturbed_a4<F: Field>(f: &F) -> NLieAlgebra<F> {
    let base = a4(f);
    let mut t = base.tensor().clone();
    t.set(&[1, 2, 3], unit_vector(f, 4, 1)).expect("fixture entry");
    NLieAlgebra::new(t)
}

/// A perfect 5-dimensional 3-Lie algebra over GF(2), found by a SAT search.
/// Valid in characteristic 2 only; `find_codim1` takes the char-2 pair case.
pub fn pair_char2<F: Field>(f: &F) -> NLieAlgebra<F> {
    let ones = |idx: &[usize]| -> Vec<(usize, i64)> { idx.iter().map(|&i| (i, 1)).collect() };
    let rows: [(&[usize], Vec<(usize, i64)>); 10] = [
        (&[0, 1, 2], ones(&[0, 1, 2])),
        (&[0, 1, 3], ones(&[0, 1, 3])),
        (&[0, 1, 4], ones(&[0, 1, 4])),
        (&[0, 2, 3], ones(&[0, 2, 3])),
        (&[0, 2, 4], ones(&[2, 4])),
        (&[0, 3, 4], ones(&[0, 3, 4])),
        (&[1, 2, 3], ones(&[1, 2, 3])),
        (&[1, 2, 4], ones(&[2, 4])),
        (&[1, 3, 4], ones(&[1, 3, 4])),
        (&[2, 3, 4], ones(&[2, 4])),
    ];
    let entries: Vec<(&[usize], &[(usize, i64)])> =
        rows.iter().map(|(a, v)| (*a, v.as_slice())).collect();
    from_entries(f, 3, 5, &entries)
}

/// A deliberately non-Filippov 4-ary tensor over GF(4) = GF(2)[g] staged as
/// the char-2 distinct-triple configuration: `H = span{e1, e2, e3}`,
/// `d = ad(e1, e2, e3)` acts on `e4, e5, e6` by `1, g, g + 1`, and
/// `[e1, e4, e5, e6] = e1`.
pub fn staged_char2_triple() -> NLieAlgebra<Gf> {
    let k = make_field(2, 2).expect("GF(4)");
    let g = k.generator();
    let (alpha, beta, gamma) = (1u64, g, k.add(&1, &g));
    let mut t = StructureTensor::new(k.clone(), 4, 6).expect("fixture shape");
    let scaled = |i: usize, c: u64| {
        let mut e = unit_vector(&k, 6, i);
        e[i] = c;
        e
    };
    t.set(&[0, 1, 2, 3], scaled(3, alpha)).expect("fixture entry");
    t.set(&[0, 1, 2, 4], scaled(4, beta)).expect("fixture entry");
    t.set(&[0, 1, 2, 5], scaled(5, gamma)).expect("fixture entry");
    t.set(&[0, 3, 4, 5], unit_vector(&k, 6, 0)).expect("fixture entry");
    NLieAlgebra::new(t)
}
