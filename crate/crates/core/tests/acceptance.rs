//! Acceptance gate: one PASS/FAIL line per criterion.

use std::time::{Duration, Instant};

use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use subpir_core::harness::{
    expected_op_counts, instrumented_retrieve, verify_correctness, verify_privacy, PrivacyMode,
};
use subpir_core::pir::FileStore;
use subpir_core::presets::{Preset, EXAMPLE_1, EXAMPLE_2, EXAMPLE_3};
use subpir_core::{Field, GrsSpec, Scheme, Variant};

fn report(id: &str, what: &str, failures: &[String], started: Instant, limit: Duration) {
    let elapsed = started.elapsed();
    let ok = failures.is_empty() && elapsed < limit;
    println!(
        "criterion {id} [{what}]: {} ({:.2} s, limit {} s)",
        if ok { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    for f in failures {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "criterion {id} failed: {failures:?}");
    assert!(elapsed < limit, "criterion {id} took {elapsed:?}");
}

fn check(failures: &mut Vec<String>, ok: bool, msg: impl FnOnce() -> String) {
    if !ok {
        failures.push(msg());
    }
}

fn scheme(
    p: Preset,
    k: usize,
    variant: Variant,
    mu: usize,
    seed: u64,
) -> subpir_core::Result<Scheme> {
    Scheme::derive(p.config(k, variant, mu, seed)?)
}

#[test]
fn criterion_1_example_one() {
    let t0 = Instant::now();
    let mut bad = Vec::new();
    let sub = EXAMPLE_1.retrieval().code().subfield_subcode();
    check(&mut bad, sub.dim() == 3, || {
        format!("dim D|2 = {}", sub.dim())
    });
    let d = sub.min_distance().unwrap();
    check(&mut bad, d == 2, || format!("d(D|2) = {d}"));
    let s = scheme(EXAMPLE_1, 1, Variant::SubfieldSubcode, 2, 0).unwrap();
    check(&mut bad, s.rate().as_ratio() == Ratio::new(1, 4), || {
        format!("rate {}", s.rate())
    });
    check(&mut bad, s.t_protect() == 3, || {
        format!("t' = {}", s.t_protect())
    });
    report(
        "1",
        "example 1 reproduction",
        &bad,
        t0,
        Duration::from_secs(1),
    );
}

#[test]
fn criterion_2_example_two() {
    let t0 = Instant::now();
    let mut bad = Vec::new();
    let sub = EXAMPLE_2.retrieval().code().subfield_subcode();
    let d = sub.min_distance().unwrap();
    check(&mut bad, (sub.len(), sub.dim(), d) == (8, 4, 4), || {
        format!("D|2 = [{}, {}, {d}]", sub.len(), sub.dim())
    });
    check(&mut bad, sub.dual() == sub, || {
        "D|2 is not self-dual".into()
    });
    let wd = sub.weight_distribution(1 << 20).unwrap();
    check(&mut bad, wd == [1, 0, 0, 0, 14, 0, 0, 0, 1], || {
        format!("weights {wd:?}")
    });
    for k in 1..=3 {
        let plain = scheme(EXAMPLE_2, k, Variant::Plain, 1, 0).unwrap();
        let low = scheme(EXAMPLE_2, k, Variant::SubfieldSubcode, 1, 0).unwrap();
        check(
            &mut bad,
            (plain.t_protect(), low.t_protect()) == (5, 3),
            || format!("k={k}: t = {}, t' = {}", plain.t_protect(), low.t_protect()),
        );
        let want = Ratio::new((4 - k) as u64, 8);
        for s in [&plain, &low] {
            check(&mut bad, s.rate().as_ratio() == want, || {
                format!("k={k} {}: rate {} != {want}", s.variant(), s.rate())
            });
        }
        if k >= 2 {
            check(&mut bad, plain.star() == low.star(), || {
                format!("k={k}: star products differ")
            });
        }
    }
    report(
        "2",
        "example 2 reproduction (star equality k=2,3)",
        &bad,
        t0,
        Duration::from_secs(5),
    );
}

/// The star-product equality at k = 1 is checked on its own: with C = GRS_1
/// the plain star product is D itself (dimension 5) while the subfield one is
/// the span of D|2 (dimension 4). The rates still agree.
#[test]
fn criterion_2_star_equality_k1() {
    let t0 = Instant::now();
    let mut bad = Vec::new();
    let plain = scheme(EXAMPLE_2, 1, Variant::Plain, 1, 0).unwrap();
    let low = scheme(EXAMPLE_2, 1, Variant::SubfieldSubcode, 1, 0).unwrap();
    check(&mut bad, plain.star() == low.star(), || {
        format!(
            "k=1: C*D has dimension {}, C*lift(D|2) has dimension {}",
            plain.star().dim(),
            low.star().dim()
        )
    });
    report(
        "2",
        "example 2 reproduction (star equality k=1)",
        &bad,
        t0,
        Duration::from_secs(5),
    );
}

#[test]
fn criterion_3_example_three() {
    let t0 = Instant::now();
    let mut bad = Vec::new();
    let sub = EXAMPLE_3.retrieval().code().subfield_subcode();
    let dual = sub.dual();
    let (d, dd) = (sub.min_distance().unwrap(), dual.min_distance().unwrap());
    check(&mut bad, (sub.len(), sub.dim(), d) == (9, 3, 6), || {
        format!("D|3 = [{}, {}, {d}]", sub.len(), sub.dim())
    });
    check(&mut bad, (dual.dim(), dd) == (6, 3), || {
        format!("dual = [9, {}, {dd}]", dual.dim())
    });
    for k in 1..=5 {
        let plain = scheme(EXAMPLE_3, k, Variant::Plain, 1, 0).unwrap();
        let low = scheme(EXAMPLE_3, k, Variant::SubfieldSubcode, 1, 0).unwrap();
        check(
            &mut bad,
            (plain.t_protect(), low.t_protect()) == (4, 2),
            || format!("k={k}: t = {}, t' = {}", plain.t_protect(), low.t_protect()),
        );
        let want = Ratio::new((6 - k) as u64, 9);
        for s in [&plain, &low] {
            check(&mut bad, s.rate().as_ratio() == want, || {
                format!("k={k} {}: rate {} != {want}", s.variant(), s.rate())
            });
        }
    }
    report(
        "3",
        "example 3 reproduction",
        &bad,
        t0,
        Duration::from_secs(30),
    );
}

#[test]
fn criterion_4_delsarte() {
    let t0 = Instant::now();
    let mut bad = Vec::new();
    for (q, m) in [(2, 2), (2, 3), (3, 2)] {
        let f = Field::with_default_modulus(q, m).unwrap();
        let n = f.order() as usize;
        for t in 1..=n {
            let d = GrsSpec::over_whole_field(f.clone(), t).unwrap().code();
            let lhs = d.subfield_subcode().dual();
            let rhs = d.dual().trace_code();
            check(&mut bad, lhs == rhs, || format!("GF({q}^{m}) t={t}"));
        }
    }
    report(
        "4",
        "dual of subfield subcode = trace of dual",
        &bad,
        t0,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_5_operation_counts() {
    let t0 = Instant::now();
    let mut bad = Vec::new();
    let mut rng = ChaCha20Rng::seed_from_u64(5);
    for mu in [1usize, 10, 100] {
        for k in 1..=3 {
            for variant in [Variant::Plain, Variant::SubfieldSubcode] {
                let s = scheme(EXAMPLE_2, k, variant, mu, 42).unwrap();
                let files = FileStore::random(&s, &mut rng);
                let run = instrumented_retrieve(&s, &files, mu).unwrap();
                let n = 8u64;
                let len = (mu * s.b()) as u64;
                let muls = if variant == Variant::Plain {
                    n * len
                } else {
                    0
                };
                for (u, c) in run.per_iteration.iter().enumerate() {
                    let got = (c.ext_add, c.ext_mul, c.ext_base_mul);
                    check(&mut bad, got == (n * (len - 1), muls, 0), || {
                        format!("mu={mu} k={k} {variant} u={}: {got:?}", u + 1)
                    });
                }
                check(
                    &mut bad,
                    run.response_counts == expected_op_counts(&s).per_run,
                    || format!("mu={mu} k={k} {variant}: closed form disagrees"),
                );
                check(&mut bad, Some(&run.file) == files.file(mu), || {
                    format!("mu={mu} k={k} {variant}: wrong file")
                });
            }
        }
    }
    report(
        "5",
        "response-phase operation counts",
        &bad,
        t0,
        Duration::from_secs(5),
    );
}

fn preset_ks(p: Preset) -> std::ops::RangeInclusive<usize> {
    1..=p.k_max
}

#[test]
fn criterion_6_perfect_retrieval() {
    let t0 = Instant::now();
    let mut bad = Vec::new();
    let mu = 3;
    let mut runs = 0;
    for p in [EXAMPLE_1, EXAMPLE_2, EXAMPLE_3] {
        for k in preset_ks(p) {
            for variant in Variant::ALL {
                let s = match scheme(p, k, variant, mu, 0) {
                    Ok(s) => s,
                    Err(e) => {
                        let required = variant != Variant::TraceCode || p.id == 1;
                        check(&mut bad, !required, || {
                            format!("example {} k={k} {variant}: {e}", p.id)
                        });
                        continue;
                    }
                };
                let mut rng = ChaCha20Rng::seed_from_u64(p.id as u64 * 100 + k as u64);
                for seed in 0..100u64 {
                    let files = FileStore::random(&s, &mut rng);
                    let storage = subpir_core::pir::encode_storage(&s, &files).unwrap();
                    for i in 1..=mu {
                        let got =
                            subpir_core::pir::retrieve_file_seeded(&s, &storage, i, seed).unwrap();
                        runs += 1;
                        check(&mut bad, Some(&got.file) == files.file(i), || {
                            format!("example {} k={k} {variant} seed={seed} i={i}", p.id)
                        });
                    }
                }
                let single = scheme(p, k, variant, 1, 0).unwrap();
                check(&mut bad, verify_correctness(&single, 5, 9).is_ok(), || {
                    format!("example {} k={k} {variant}: mu=1", p.id)
                });
            }
        }
    }
    println!("    {runs} retrievals");
    report("6", "perfect retrieval", &bad, t0, Duration::from_secs(60));
}

#[test]
fn criterion_7_privacy() {
    let t0 = Instant::now();
    let mut bad = Vec::new();
    for variant in Variant::ALL {
        let s = scheme(EXAMPLE_1, 1, variant, 2, 0).unwrap();
        let t = s.t_protect();
        let r = verify_privacy(&s, t, PrivacyMode::Exhaustive).unwrap();
        check(
            &mut bad,
            r.is_private() && r.max_statistical_distance == Some(Ratio::from_integer(0)),
            || format!("example 1 {variant} t={t}: {r:?}"),
        );
    }
    for p in [EXAMPLE_1, EXAMPLE_2, EXAMPLE_3] {
        for k in preset_ks(p) {
            for variant in Variant::ALL {
                let Ok(s) = scheme(p, k, variant, 2, 0) else {
                    continue;
                };
                let t = s.t_protect();
                let at = verify_privacy(&s, t, PrivacyMode::Rank).unwrap();
                check(&mut bad, at.rank_condition_ok, || {
                    format!("example {} k={k} {variant}: rank fails at t={t}", p.id)
                });
                if t < s.servers() {
                    let above = verify_privacy(&s, t + 1, PrivacyMode::Rank).unwrap();
                    check(&mut bad, !above.rank_condition_ok, || {
                        format!(
                            "example {} k={k} {variant}: rank holds at t={}",
                            p.id,
                            t + 1
                        )
                    });
                }
            }
        }
    }
    report("7", "query privacy", &bad, t0, Duration::from_secs(60));
}

#[test]
fn criterion_8_rate_monotonicity() {
    let t0 = Instant::now();
    let mut bad = Vec::new();
    let mut rng = ChaCha20Rng::seed_from_u64(8);
    let fields = [(2, 2), (2, 3), (3, 2)];
    let mut strict = 0;
    for pair in 0..50 {
        let (q, m) = fields[pair % 3];
        let f = Field::with_default_modulus(q, m).unwrap();
        let order = f.order() as usize;
        let n = rng.random_range(3..=order);
        let mut support: Vec<_> = f.elements().collect();
        support.shuffle(&mut rng);
        support.truncate(n);
        let mut multipliers = || -> Vec<_> {
            (0..n)
                .map(|_| subpir_core::Elem::from_index(rng.random_range(1..f.order())))
                .collect()
        };
        let (vc, vd) = (multipliers(), multipliers());
        let k = rng.random_range(1..n);
        let t = rng.random_range(1..n);
        let c_spec = GrsSpec::new(f.clone(), k, support.clone(), vc).unwrap();
        let d_spec = GrsSpec::new(f.clone(), t, support, vd).unwrap();
        let c_code = c_spec.code();
        let d_code = d_spec.code();
        let plain_star = c_code.star_product(&d_code).unwrap();
        let plain_star = plain_star
            .clone()
            .with_grs(c_spec.star(&d_spec).unwrap())
            .unwrap_or(plain_star);
        let low_star = c_code
            .star_product(&d_code.subfield_subcode().lift(&f).unwrap())
            .unwrap();
        let c_plain = plain_star.min_distance().unwrap() - 1;
        let c_low = low_star.min_distance().unwrap() - 1;
        check(&mut bad, c_low >= c_plain, || {
            format!("pair {pair}: GF({q}^{m}) n={n} k={k} t={t}: {c_low} < {c_plain}")
        });
        if c_low > c_plain {
            strict += 1;
        }
    }
    println!("    {strict} of 50 pairs strictly improve");
    report(
        "8",
        "subfield subcode never lowers the rate",
        &bad,
        t0,
        Duration::from_secs(300),
    );
}
