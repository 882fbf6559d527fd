use std::sync::Arc;

use dgk::format::*;
use dgk_core::dg::{DGModule, Side};
use dgk_core::exactlin::{Field, PrimeField, Rationals};
use dgk_core::genlab::{dual_numbers, generate_corpus, make_exterior, residue_module, CorpusProfile};
use dgk_core::resolve::{semifree_resolve, ResolveOptions};
use proptest::prelude::*;

fn f101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

fn round_trip(doc: &Document) {
    let text = doc.to_json();
    let back = Document::parse(&text).unwrap();
    assert_eq!(&back, doc);
    assert_eq!(back.to_json(), text, "bytes differ after a round trip");
}

fn corpus<F: Field>(f: F, count: usize, seed: u64) -> (ProfileJson, Document) {
    let profile = ProfileJson {
        fields: vec![f.spec().to_string()],
        instance_count: count,
        seed,
        ..ProfileJson::default()
    };
    let cp = profile.corpus(f.spec()).unwrap();
    let insts = generate_corpus(&cp, f).unwrap();
    let doc = corpus_document(f, &profile, &insts);
    (profile, doc)
}

fn decode_all<F: Field>(f: F, doc: &Document) -> Vec<Pair<F>> {
    let Document::Corpus(c) = doc else {
        panic!("not a corpus")
    };
    c.instances
        .iter()
        .map(|i| decode_instance(f, "i", i).unwrap())
        .collect()
}

#[test]
fn corpus_round_trips_bit_exact_over_both_fields() {
    let (_, doc) = corpus(f101(), 25, 11);
    round_trip(&doc);
    let (_, doc) = corpus(Rationals, 25, 11);
    round_trip(&doc);
}

#[test]
fn decoded_modules_equal_the_generated_ones() {
    let (profile, doc) = corpus(Rationals, 15, 5);
    let insts = generate_corpus(&profile.corpus(Rationals.spec()).unwrap(), Rationals).unwrap();
    for ((_, m, n), inst) in decode_all(Rationals, &doc).iter().zip(&insts) {
        assert_eq!(m, &inst.m);
        assert_eq!(n, &inst.n);
        let again = encode_instance(inst.label(), m, n);
        assert_eq!(again.m, encode_module(&inst.m));
    }
}

#[test]
fn rationals_are_written_as_fractions() {
    let a = make_exterior(Rationals);
    let enc = encode_algebra(&a);
    assert_eq!(enc.unit, vec!["1/1".to_string()]);
    assert_eq!(enc.products[1][1], vec![vec!["1/1".to_string()]]);
}

#[test]
fn resolution_round_trips_with_stage_tags() {
    let f = f101();
    let a = Arc::new(dual_numbers(f));
    let k = residue_module(&a, Side::Right).unwrap();
    let r = semifree_resolve(&k, ResolveOptions::new(3)).unwrap();
    let doc = resolution_document(&r);
    round_trip(&doc);
    let Document::Resolution(ResolutionDoc {
        algebra,
        module,
        resolution,
        ..
    }) = &doc
    else {
        unreachable!()
    };
    let stages: Vec<usize> = resolution.generators.iter().map(|g| g.stage).collect();
    assert_eq!(stages, vec![0, 1, 2, 3]);
    let alg = Arc::new(decode_algebra(f, "a", algebra).unwrap());
    let m = decode_module("m", &alg, module).unwrap();
    let back = decode_resolution("r", &m, resolution).unwrap();
    assert_eq!(back, r);
    assert!(back.check_invariants().all_passed());
}

#[test]
fn malformed_files_report_a_location() {
    let err = Document::parse("{\"kind\": \"algebra\",\n \"field\": 3}")
        .unwrap_err()
        .to_string();
    assert!(err.starts_with("line 2, column"), "{err}");
    let err = Document::parse("{\"kind\": \"tensor\"}").unwrap_err().to_string();
    assert!(err.contains("unknown kind"), "{err}");

    let a = make_exterior(f101());
    let mut enc = encode_algebra(&a);
    enc.products[1][1][0][0] = "101".into();
    let err = decode_algebra(f101(), "algebra", &enc).unwrap_err().to_string();
    assert!(err.starts_with("algebra.products[1][1][0][0]"), "{err}");

    let mut enc = encode_algebra(&a);
    enc.differentials[0].push(vec!["0".into()]);
    let err = decode_algebra(f101(), "algebra", &enc).unwrap_err().to_string();
    assert!(err.contains("algebra.differentials[0]"), "{err}");
}

#[test]
fn non_canonical_elements_are_rejected() {
    let q = Rationals;
    let m = DGModule::regular(Arc::new(make_exterior(q)), Side::Left);
    let mut enc = encode_module(&m);
    enc.actions[1][1][0][0] = "2/2".into();
    let alg = Arc::new(make_exterior(q));
    assert!(decode_module("m", &alg, &enc).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn any_seed_round_trips(seed in any::<u64>()) {
        let (_, doc) = corpus(f101(), 4, seed);
        let text = doc.to_json();
        let back = Document::parse(&text).unwrap();
        prop_assert_eq!(back.to_json(), text);
        let (_, doc) = corpus(Rationals, 3, seed);
        let text = doc.to_json();
        prop_assert_eq!(Document::parse(&text).unwrap().to_json(), text);
    }

    #[test]
    fn same_seed_gives_the_same_corpus(seed in any::<u64>()) {
        let a = corpus(f101(), 3, seed).1.to_json();
        let b = corpus(f101(), 3, seed).1.to_json();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn default_profile_round_trips_and_fills_defaults() {
    let p = ProfileJson::default();
    let text = serde_json::to_string(&p).unwrap();
    assert_eq!(serde_json::from_str::<ProfileJson>(&text).unwrap(), p);
    let short: ProfileJson = serde_json::from_str(
        r#"{"fields":["Q"],"instance_count":3,"max_per_degree_dim":2,"degree_span":2,"seed":1,"family_mix":[["ground",1]]}"#,
    )
    .unwrap();
    assert_eq!(short.derived_instances, 100);
    assert!(!short.inject_failure);
    let _ = CorpusProfile::default();
}
