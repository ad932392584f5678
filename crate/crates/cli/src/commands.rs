use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::Serialize;
use serde_json::json;
use subpir_core::harness::{
    compare_variants, expected_op_counts, instrumented_retrieve, verify_correctness,
    verify_privacy, PrivacyMode, EXHAUSTIVE_LIMIT,
};
use subpir_core::pir::{encode_storage, retrieve_file, FileStore};
use subpir_core::presets::Preset;
use subpir_core::wire::{matrix_strings, queries_json, responses_json};
use subpir_core::{LinearCode, Scheme, Variant};

use crate::config::RunConfig;
use crate::{CliError, Common};

#[derive(Debug, Serialize)]
struct Check {
    name: String,
    expected: String,
    actual: String,
    ok: bool,
}

impl Check {
    fn new(name: impl Into<String>, expected: impl ToString, actual: impl ToString) -> Check {
        let (expected, actual) = (expected.to_string(), actual.to_string());
        Check {
            name: name.into(),
            ok: expected == actual,
            expected,
            actual,
        }
    }

    fn flag(name: impl Into<String>, ok: bool, detail: impl ToString) -> Check {
        Check {
            name: name.into(),
            expected: "true".into(),
            actual: detail.to_string(),
            ok,
        }
    }
}

fn print_checks(checks: &[Check]) {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in checks {
        let status = if c.ok { "ok" } else { "MISMATCH" };
        if c.ok {
            println!("  {:<width$}  {:<8}  {}", c.name, status, c.actual);
        } else {
            println!(
                "  {:<width$}  {:<8}  got {}, expected {}",
                c.name, status, c.actual, c.expected
            );
        }
    }
}

#[derive(Debug, Serialize)]
struct CodeParams {
    n: usize,
    k: usize,
    d: usize,
    weights: Option<Vec<u128>>,
}

impl CodeParams {
    fn of(code: &LinearCode) -> Result<CodeParams, CliError> {
        Ok(CodeParams {
            n: code.len(),
            k: code.dim(),
            d: code.min_distance()?,
            weights: code.weight_distribution(1 << 16).ok(),
        })
    }

    fn label(&self) -> String {
        format!("[{}, {}, {}]", self.n, self.k, self.d)
    }
}

pub fn demo(example: u8, common: &Common) -> Result<bool, CliError> {
    if common.config.is_some() || common.variant.is_some() {
        return Err(CliError::Usage(
            "demo takes neither --config nor --variant; it reports every variant".into(),
        ));
    }
    let p =
        Preset::by_id(example).ok_or_else(|| CliError::Usage(format!("no example {example}")))?;
    let k = common.k.unwrap_or(p.default_k);
    if k == 0 || k > p.k_max {
        return Err(CliError::Usage(format!(
            "example {example} allows k in 1..={}, got {k}",
            p.k_max
        )));
    }
    let mu = common.mu.unwrap_or(2);
    let seed = common.seed.unwrap_or(0);
    if mu == 0 {
        return Err(CliError::Usage("--mu must be positive".into()));
    }

    let retrieval = p.retrieval();
    let sub = retrieval.code().subfield_subcode();
    let sub_params = CodeParams::of(&sub)?;
    let dual_params = CodeParams::of(&sub.dual())?;
    let report = compare_variants(&p.storage(k)?, &retrieval, mu, seed)?;

    let n = p.n();
    let rate = format!("{}/{n}", p.expected_retrieved(k));
    let (t_plain, t_sub) = p.expected_collusion();
    let plain = report.variant(Variant::Plain);
    let low = report.variant(Variant::SubfieldSubcode);
    let show = |r: Option<String>| r.unwrap_or_else(|| "unusable".into());
    let mut checks = vec![
        Check::new("plain rate", &rate, show(plain.rate.map(|r| r.to_string()))),
        Check::new(
            "subfield rate",
            &rate,
            show(low.rate.map(|r| r.to_string())),
        ),
        Check::new(
            "plain collusion",
            t_plain,
            show(plain.t_protect.map(|t| t.to_string())),
        ),
        Check::new(
            "subfield collusion",
            t_sub,
            show(low.t_protect.map(|t| t.to_string())),
        ),
        Check::new(
            "subfield response ext_mul",
            0,
            show(low.response_counts.map(|c| c.ext_mul.to_string())),
        ),
    ];
    if p.q == 2 {
        checks.push(Check::new(
            "subfield response ext_base_mul",
            0,
            show(low.response_counts.map(|c| c.ext_base_mul.to_string())),
        ));
    }
    match example {
        1 => checks.push(Check::new(
            "subfield subcode",
            "[4, 3, 2]",
            sub_params.label(),
        )),
        2 => {
            checks.push(Check::new(
                "subfield subcode",
                "[8, 4, 4]",
                sub_params.label(),
            ));
            checks.push(Check::new("self-dual", true, sub.dual() == sub));
            checks.push(Check::new(
                "weight distribution",
                "[1, 0, 0, 0, 14, 0, 0, 0, 1]",
                format!("{:?}", sub_params.weights.clone().unwrap_or_default()),
            ));
        }
        _ => {
            checks.push(Check::new(
                "subfield subcode",
                "[9, 3, 6]",
                sub_params.label(),
            ));
            checks.push(Check::new(
                "dual of subfield subcode",
                "[9, 6, 3]",
                dual_params.label(),
            ));
        }
    }
    let reproduced = checks.iter().all(|c| c.ok);

    if common.json {
        let out = json!({
            "example": example,
            "k": k,
            "mu": mu,
            "seed": seed,
            "subfield_subcode": sub_params,
            "subfield_subcode_dual": dual_params,
            "bench": report,
            "checks": checks,
            "reproduced": reproduced,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializable")
        );
    } else {
        println!(
            "example {example}: C = GRS_{k}, D = GRS_{} over {}",
            p.retrieval_dim,
            p.field()
        );
        println!("subfield subcode of D: {}", sub_params.label());
        if let Some(w) = &sub_params.weights {
            println!("  weight distribution {w:?}");
        }
        println!("its dual: {}", dual_params.label());
        println!();
        print!("{report}");
        println!();
        print_checks(&checks);
        println!(
            "{}",
            if reproduced {
                "all stated values reproduced"
            } else {
                "some stated values NOT reproduced"
            }
        );
    }
    Ok(reproduced)
}

fn derive(cfg: &RunConfig) -> Result<Scheme, CliError> {
    Ok(Scheme::derive(cfg.scheme_config()?)?)
}

pub fn verify(cfg: &RunConfig, json_out: bool) -> Result<bool, CliError> {
    let scheme = derive(cfg)?;
    let mut checks = Vec::new();
    let c = scheme.star().min_distance()? - 1;
    checks.push(Check::new(
        "rate = (d(star) - 1)/n",
        format!("{c}/{}", scheme.servers()),
        scheme.rate(),
    ));

    let correctness = verify_correctness(&scheme, cfg.trials, cfg.seed);
    checks.push(Check::flag(
        format!("{} random retrievals exact", cfg.trials),
        correctness.is_ok(),
        correctness.failure.clone().unwrap_or_else(|| "true".into()),
    ));

    let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed);
    let files = FileStore::random(&scheme, &mut rng);
    let run = instrumented_retrieve(&scheme, &files, cfg.mu)?;
    checks.push(Check::new(
        "response counts (ext_add, ext_mul, ext_base_mul)",
        counts_triple(expected_op_counts(&scheme).per_run),
        counts_triple(run.response_counts),
    ));

    let t = scheme.t_protect();
    if t >= 1 {
        let at = verify_privacy(&scheme, t, PrivacyMode::Rank)?;
        checks.push(Check::flag(
            format!("every {t} query columns independent"),
            at.rank_condition_ok,
            at.rank_condition_ok,
        ));
    }
    if t < scheme.servers() {
        let above = verify_privacy(&scheme, t + 1, PrivacyMode::Rank)?;
        checks.push(Check::flag(
            format!("some {} query columns dependent", t + 1),
            !above.rank_condition_ok,
            !above.rank_condition_ok,
        ));
    }
    let space = scheme
        .retrieval_code()
        .size()
        .checked_pow(scheme.query_len() as u32);
    if t >= 1 && space.is_some_and(|s| s <= EXHAUSTIVE_LIMIT) {
        let ex = verify_privacy(&scheme, t, PrivacyMode::Exhaustive)?;
        let dist = ex.max_statistical_distance.expect("exhaustive mode");
        checks.push(Check::new(
            format!("exhaustive query distance at t = {t}"),
            0,
            dist,
        ));
    }

    if scheme.variant() == Variant::SubfieldSubcode {
        if let Ok(plain) = Scheme::derive(scheme.config().with_variant(Variant::Plain)) {
            checks.push(Check::flag(
                "retrieves at least as much as plain",
                scheme.c() >= plain.c(),
                format!("{} vs {}", scheme.c(), plain.c()),
            ));
        }
    }
    let ok = checks.iter().all(|c| c.ok);
    if json_out {
        let out = json!({
            "variant": scheme.variant(),
            "rate": scheme.rate(),
            "t_protect": scheme.t_protect(),
            "checks": checks,
            "ok": ok,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializable")
        );
    } else {
        println!(
            "{} scheme over {}: n = {}, k = {}, rate {}, collusion {}",
            scheme.variant(),
            scheme.field(),
            scheme.servers(),
            scheme.k(),
            scheme.rate(),
            scheme.t_protect()
        );
        print_checks(&checks);
        println!(
            "{}",
            if ok {
                "verification passed"
            } else {
                "verification FAILED"
            }
        );
    }
    Ok(ok)
}

fn counts_triple(c: subpir_core::OpCounts) -> String {
    format!("({}, {}, {})", c.ext_add, c.ext_mul, c.ext_base_mul)
}

pub fn bench(cfg: &RunConfig, json_out: bool) -> Result<bool, CliError> {
    let (c, d) = cfg.specs()?;
    if cfg.mu == 0 {
        return Err(CliError::Usage(
            "config field `mu`: at least one file is required".into(),
        ));
    }
    let report = compare_variants(&c, &d, cfg.mu, cfg.seed)?;
    if json_out {
        println!(
            "{}",
            serde_json::to_string_pretty(&report).expect("serializable")
        );
    } else {
        print!("{report}");
    }
    Ok(true)
}

pub fn run(cfg: &RunConfig, file: usize, trace: bool, json_out: bool) -> Result<bool, CliError> {
    if file == 0 || file > cfg.mu {
        return Err(CliError::Usage(format!(
            "--file {file} is not in 1..={}",
            cfg.mu
        )));
    }
    let scheme = derive(cfg)?;
    let f = scheme.field();
    let mut rng = ChaCha20Rng::seed_from_u64(cfg.seed);
    let files = FileStore::random(&scheme, &mut rng);
    let storage = encode_storage(&scheme, &files)?;
    let got = retrieve_file(&scheme, &storage, file)?;
    let matches = Some(&got.file) == files.file(file);

    let iterations: Vec<serde_json::Value> = got
        .iterations
        .iter()
        .map(|it| {
            let recovered: Vec<_> = it
                .recovered
                .iter()
                .map(|r| json!({ "server": r.server, "row": r.row, "value": f.format(r.value) }))
                .collect();
            let mut v = json!({
                "iteration": it.queries.iteration(),
                "partition": scheme.partition_for_iteration(it.queries.iteration()).expect("valid"),
                "recovered": recovered,
                "response_counts": it.response_counts,
            });
            if trace {
                v["queries"] = queries_json(&it.queries)["queries"].clone();
                v["responses"] = responses_json(f, &it.responses);
            }
            v
        })
        .collect();

    if json_out {
        let out = json!({
            "variant": scheme.variant(),
            "rate": scheme.rate(),
            "b": scheme.b(),
            "s": scheme.s(),
            "iterations": iterations,
            "reconstruction_counts": got.reconstruction_counts,
            "retrieved": matrix_strings(&got.file),
            "matches_stored": matches,
        });
        println!(
            "{}",
            serde_json::to_string_pretty(&out).expect("serializable")
        );
    } else {
        println!(
            "{} scheme: n = {}, k = {}, c = {}, b = {}, s = {}, rate {}",
            scheme.variant(),
            scheme.servers(),
            scheme.k(),
            scheme.c(),
            scheme.b(),
            scheme.s(),
            scheme.rate()
        );
        for it in &iterations {
            println!("iteration {}: J = {}", it["iteration"], it["partition"]);
            if trace {
                println!("  queries   {}", it["queries"]);
                println!("  responses {}", it["responses"]);
            }
            let syms: Vec<String> = it["recovered"]
                .as_array()
                .expect("array")
                .iter()
                .map(|r| {
                    format!(
                        "y{}({})={}",
                        r["server"],
                        r["row"],
                        r["value"].as_str().unwrap_or("")
                    )
                })
                .collect();
            println!("  recovered {}", syms.join(" "));
            let c = &it["response_counts"];
            println!(
                "  responses cost {} ext_add, {} ext_mul, {} ext_base_mul",
                c["ext_add"], c["ext_mul"], c["ext_base_mul"]
            );
        }
        println!("retrieved file {file}:");
        for row in matrix_strings(&got.file) {
            println!("  [{}]", row.join(" "));
        }
        println!("matches stored file: {matches}");
    }
    Ok(matches)
}
