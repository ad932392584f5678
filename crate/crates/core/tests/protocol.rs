use num_rational::Ratio;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use subpir_core::harness::{compare_variants, instrumented_retrieve, verify_correctness};
use subpir_core::pir::{encode_storage, retrieve_file, FileStore};
use subpir_core::presets::{EXAMPLE_1, EXAMPLE_2, EXAMPLE_3};
use subpir_core::{Elem, Error, Field, GrsSpec, Scheme, SchemeConfig, Variant};

fn random_pair() -> impl Strategy<Value = (GrsSpec, GrsSpec, u64)> {
    prop_oneof![Just((2u32, 2usize)), Just((2, 3)), Just((3, 2))]
        .prop_flat_map(|(q, m)| {
            let f = Field::with_default_modulus(q, m).unwrap();
            let order = f.order();
            let n_max = order as usize;
            (Just(f), 3..=n_max)
        })
        .prop_flat_map(|(f, n)| {
            let order = f.order();
            (
                Just(f),
                Just(n),
                1..n,
                1..n,
                Just((0..order).collect::<Vec<u32>>()).prop_shuffle(),
                prop::collection::vec(1..order, n),
                prop::collection::vec(1..order, n),
                any::<u64>(),
            )
        })
        .prop_map(|(f, n, k, t, alpha, vc, vd, seed)| {
            let alpha: Vec<Elem> = alpha[..n].iter().map(|&a| Elem::from_index(a)).collect();
            let wrap = |v: Vec<u32>| v.into_iter().map(Elem::from_index).collect();
            let c = GrsSpec::new(f.clone(), k, alpha.clone(), wrap(vc)).unwrap();
            let d = GrsSpec::new(f, t, alpha, wrap(vd)).unwrap();
            (c, d, seed)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn any_derivable_scheme_retrieves_exactly((c, d, seed) in random_pair()) {
        for variant in Variant::ALL {
            let cfg = SchemeConfig::new(c.clone(), d.clone(), variant, 2, seed).unwrap();
            let scheme = match Scheme::derive(cfg) {
                Ok(s) => s,
                Err(Error::UnusableScheme(_)) => continue,
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            };
            prop_assert_eq!(scheme.rate().as_ratio(), Ratio::new(scheme.star().min_distance().unwrap() as u64 - 1, c.len() as u64));
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let files = FileStore::random(&scheme, &mut rng);
            for i in 1..=2 {
                let run = instrumented_retrieve(&scheme, &files, i).unwrap();
                prop_assert!(run.counts_match());
                prop_assert_eq!(Some(&run.file), files.file(i));
            }
        }
    }

    #[test]
    fn plain_grs_rate_matches_mds_formula((c, d, _seed) in random_pair()) {
        let n = c.len();
        let (k, t) = (c.dim(), d.dim());
        let cfg = SchemeConfig::new(c, d, Variant::Plain, 1, 0).unwrap();
        match Scheme::derive(cfg) {
            Ok(s) => prop_assert_eq!(s.c() as i64, n as i64 - k as i64 - t as i64 + 1),
            Err(Error::UnusableScheme(_)) => prop_assert!(k + t > n),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn subfield_variant_never_retrieves_less((c, d, _seed) in random_pair()) {
        let plain = Scheme::derive(SchemeConfig::new(c.clone(), d.clone(), Variant::Plain, 1, 0).unwrap());
        let low = Scheme::derive(SchemeConfig::new(c, d, Variant::SubfieldSubcode, 1, 0).unwrap());
        if let (Ok(p), Ok(l)) = (&plain, &low) {
            prop_assert!(l.c() >= p.c());
        }
    }
}

#[test]
fn worked_examples_are_correct_for_every_k() {
    for p in [EXAMPLE_1, EXAMPLE_2, EXAMPLE_3] {
        for k in 1..=p.k_max {
            for variant in [Variant::Plain, Variant::SubfieldSubcode] {
                let s = Scheme::derive(p.config(k, variant, 4, 1).unwrap()).unwrap();
                let r = verify_correctness(&s, 20, k as u64);
                assert!(
                    r.is_ok(),
                    "example {} k={k} {variant}: {:?}",
                    p.id,
                    r.failure
                );
            }
        }
    }
}

#[test]
fn example_one_recovers_the_file_symbol() {
    let s = Scheme::derive(EXAMPLE_1.config(1, Variant::SubfieldSubcode, 2, 3).unwrap()).unwrap();
    let mut rng = ChaCha20Rng::seed_from_u64(3);
    let files = FileStore::random(&s, &mut rng);
    let storage = encode_storage(&s, &files).unwrap();
    for i in 1..=2 {
        let run = retrieve_file(&s, &storage, i).unwrap();
        let rec = &run.iterations[0].recovered;
        assert_eq!(rec.len(), 1);
        assert_eq!((rec[0].server, rec[0].row), (1, 1));
        assert_eq!(rec[0].value, files.file(i).unwrap().get(0, 0));
    }
}

#[test]
fn trace_variant_rate_is_computed() {
    let s = Scheme::derive(EXAMPLE_1.config(1, Variant::TraceCode, 2, 0).unwrap()).unwrap();
    let d = s.star().min_distance().unwrap();
    assert_eq!(s.rate().as_ratio(), Ratio::new(d as u64 - 1, 4));
    let t = Scheme::derive(EXAMPLE_2.config(1, Variant::TraceCode, 2, 0).unwrap()).unwrap();
    assert_eq!((t.c(), t.t_protect()), (1, 7));
}

#[test]
fn bench_reports_match_worked_examples() {
    let r = compare_variants(
        &EXAMPLE_2.storage(3).unwrap(),
        &EXAMPLE_2.retrieval(),
        10,
        0,
    )
    .unwrap();
    let plain = r.variant(Variant::Plain);
    let sub = r.variant(Variant::SubfieldSubcode);
    assert_eq!(plain.rate.unwrap().to_string(), "1/8");
    assert_eq!((plain.t_protect, sub.t_protect), (Some(5), Some(3)));
    assert_eq!(sub.star_equal_plain, Some(true));
    assert_eq!(sub.response_counts.unwrap().ext_mul, 0);
    assert_eq!(plain.response_counts.unwrap().ext_mul, 80 * 3);

    let r = compare_variants(&EXAMPLE_3.storage(5).unwrap(), &EXAMPLE_3.retrieval(), 2, 0).unwrap();
    let (plain, sub) = (
        r.variant(Variant::Plain),
        r.variant(Variant::SubfieldSubcode),
    );
    assert_eq!(plain.rate, sub.rate);
    assert_eq!((plain.t_protect, sub.t_protect), (Some(4), Some(2)));
    assert_eq!(sub.star_equal_plain, Some(true));
    assert!(sub.response_counts.unwrap().ext_base_mul > 0);
}

#[test]
fn repetition_subcode_trades_collusion_for_rate() {
    // D = GRS_2 over GF(4): its binary subcode is the repetition code.
    let f = Field::with_default_modulus(2, 2).unwrap();
    let d = GrsSpec::over_whole_field(f.clone(), 2).unwrap();
    assert_eq!(
        d.code().subfield_subcode(),
        subpir_core::LinearCode::repetition(f.base_field(), 4)
    );
    let c = GrsSpec::over_whole_field(f, 1).unwrap();
    let r = compare_variants(&c, &d, 2, 0).unwrap();
    let (plain, sub) = (
        r.variant(Variant::Plain),
        r.variant(Variant::SubfieldSubcode),
    );
    assert_eq!(plain.rate.unwrap().to_string(), "2/4");
    assert_eq!(sub.rate.unwrap().to_string(), "3/4");
    assert_eq!((plain.t_protect, sub.t_protect), (Some(2), Some(1)));
    assert_eq!(sub.star_equal_plain, Some(false));
}
