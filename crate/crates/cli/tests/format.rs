use std::path::Path;

use nlie::algebra::NLieAlgebra;
use nlie::field::{make_field, Field, Gf, Rationals};
use nlie::fixtures;
use nlie::oracle::{random_algebra, GeneratorSpec, Strategy};
use nlie_cli::format::{parse_algebra_file, AlgebraFile, AnyAlgebra, FormatError};

fn fixture_dir() -> &'static Path {
    Path::new(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures"))
}

fn finite(a: AnyAlgebra) -> NLieAlgebra<Gf> {
    match a {
        AnyAlgebra::Finite(a) => a,
        AnyAlgebra::Rational(_) => panic!("expected a finite field"),
    }
}

fn round_trip<F: Field>(a: &NLieAlgebra<F>) {
    let text = AlgebraFile::from_algebra(a).to_json();
    let file = AlgebraFile::from_json(&text).unwrap();
    let b = file.build(a.field().clone()).unwrap();
    assert_eq!(a.tensor(), b.tensor());
    assert_eq!(AlgebraFile::from_algebra(&b).to_json(), text);
}

#[test]
fn documented_examples_parse() {
    let n5 = r#"{"arity":3,"dimension":5,"field":{"p":2,"k":1},"brackets":[{"args":[1,2,3],"value":[[4,"1"]]}]}"#;
    let f = make_field(2, 1).unwrap();
    assert_eq!(finite(parse_algebra_file(n5.as_bytes()).unwrap()).tensor(), fixtures::n5(&f).tensor());
    let ab = r#"{"arity":3,"dimension":5,"field":{"p":2,"k":1},"brackets":[]}"#;
    assert_eq!(
        finite(parse_algebra_file(ab.as_bytes()).unwrap()).tensor(),
        fixtures::abelian(&f, 3, 5).tensor()
    );
    let unsorted = r#"{"arity":3,"dimension":5,"field":{"p":2,"k":1},"brackets":[{"args":[2,1,3],"value":[]}]}"#;
    assert!(matches!(
        parse_algebra_file(unsorted.as_bytes()),
        Err(FormatError::NotIncreasing { entry: 1, .. })
    ));
}

#[test]
fn parse_errors_are_specific() {
    let cases = [
        (r#"{"arity":3,"dimension":5,"field":{"p":2,"k":1},"brackets":[{"args":[1,2,6],"value":[]}]}"#, "IndexOutOfRange"),
        (r#"{"arity":3,"dimension":5,"field":{"p":2,"k":1},"brackets":[{"args":[1,2,3],"value":[[0,"1"]]}]}"#, "IndexOutOfRange"),
        (r#"{"arity":3,"dimension":5,"field":{"p":2,"k":1},"brackets":[{"args":[1,2,3],"value":[]},{"args":[1,2,3],"value":[]}]}"#, "DuplicateBracket"),
        (r#"{"arity":3,"dimension":5,"field":{"p":2,"k":1},"brackets":[{"args":[1,2,3],"value":[[4,"z"]]}]}"#, "ScalarSyntax"),
        (r#"{"arity":3,"dimension":5,"field":{"p":4,"k":1},"brackets":[]}"#, "BadField"),
        (r#"{"arity":3,"dimension":5,"field":"R","brackets":[]}"#, "BadField"),
        (r#"{"arity":3,"dimension":5,"field":{"p":2,"k":1},"brackets":[{"args":[1,2],"value":[]}]}"#, "ArityMismatch"),
        (r#"{"arity":3,"dimension":2,"field":{"p":2,"k":1},"brackets":[]}"#, "BadShape"),
        ("{\"arity\":3,\n\"dimension\":", "Parse"),
    ];
    for (text, kind) in cases {
        let e = parse_algebra_file(text.as_bytes()).unwrap_err();
        assert!(format!("{e:?}").starts_with(kind), "{text}: {e:?}");
    }
    match parse_algebra_file(b"{\"arity\":3,\n\"dimension\":") {
        Err(FormatError::Parse { line, .. }) => assert_eq!(line, 2),
        other => panic!("{other:?}"),
    }
}

#[test]
fn scalars_in_extension_fields_and_rationals() {
    let text = r#"{"arity":2,"dimension":3,"field":{"p":3,"k":2},"brackets":[{"args":[1,2],"value":[[3,"2g+1"]]}]}"#;
    let a = finite(parse_algebra_file(text.as_bytes()).unwrap());
    let k = a.field().clone();
    assert_eq!(k.order(), Some(9));
    assert_eq!(k.format_scalar(&a.tensor().get(&[0, 1]).unwrap()[2]), "2g+1");
    let q = r#"{"arity":2,"dimension":3,"field":"Q","brackets":[{"args":[1,2],"value":[[3,"-1/2"]]}]}"#;
    match parse_algebra_file(q.as_bytes()).unwrap() {
        AnyAlgebra::Rational(a) => {
            assert_eq!(Rationals.format_scalar(&a.tensor().get(&[0, 1]).unwrap()[2]), "-1/2");
        }
        AnyAlgebra::Finite(_) => panic!("expected Q"),
    }
}

#[test]
fn round_trip_is_exact() {
    for (p, k) in [(2u64, 1u32), (2, 2), (3, 2), (5, 1)] {
        let f = make_field(p, k).unwrap();
        for seed in 0..10 {
            let a = random_algebra(&GeneratorSpec {
                arity: 3,
                dim: 5,
                field: f.clone(),
                strategy: Strategy::Sparse {
                    density: 0.3,
                    budget: 100_000,
                },
                seed,
            })
            .unwrap();
            round_trip(&a);
        }
        round_trip(&fixtures::a4(&f));
    }
    round_trip(&fixtures::a4(&Rationals));
}

#[test]
fn shipped_files_round_trip() {
    let mut count = 0;
    for entry in std::fs::read_dir(fixture_dir()).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_name().unwrap().to_string_lossy().into_owned();
        if path.extension().is_none_or(|e| e != "json") || name == "branches.json" {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let file = AlgebraFile::from_json(&text).unwrap();
        let a = finite(file.to_algebra().unwrap());
        round_trip(&a);
        count += 1;
    }
    assert!(count >= 5);
    let text = std::fs::read_to_string(fixture_dir().join("corpus/perfect_gf2_3lie.json")).unwrap();
    let files: Vec<AlgebraFile> = serde_json::from_str(&text).unwrap();
    assert_eq!(files.len(), 100);
    for file in &files {
        round_trip(&finite(file.to_algebra().unwrap()));
    }
}
