//! Instrumented runs: operation counts, privacy and correctness checks, and
//! side-by-side comparison of the three variants.

use std::collections::HashMap;
use std::fmt;

use itertools::Itertools;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Serialize, Serializer};

use crate::codes::GrsSpec;
use crate::counts::OpCounts;
use crate::error::{Error, Result};
use crate::gf::Elem;
use crate::linalg::Matrix;
use crate::pir::{
    build_queries, encode_storage, retrieve_file, retrieve_file_seeded, FileStore, Rate, Scheme,
    SchemeConfig, Variant,
};

/// Largest randomness space enumerated by the exhaustive privacy check.
pub const EXHAUSTIVE_LIMIT: u128 = 1 << 24;

fn opt_ratio_str<S: Serializer>(
    r: &Option<Ratio<u64>>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.collect_str(r),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExpectedCounts {
    pub per_iteration: OpCounts,
    pub per_run: OpCounts,
}

/// Closed-form response-phase counts over all `n` servers.
///
/// Every server does `mu b - 1` accumulations. A GF(q^m) query also costs
/// `mu b` full products, a GF(q) query `mu b` mixed products unless q = 2,
/// where each term is a selection.
pub fn expected_op_counts(scheme: &Scheme) -> ExpectedCounts {
    let n = scheme.servers() as u64;
    let len = scheme.query_len() as u64;
    let mut per_iteration = OpCounts {
        ext_add: n * (len - 1),
        ..OpCounts::default()
    };
    match scheme.variant() {
        Variant::Plain => per_iteration.ext_mul = n * len,
        _ if scheme.field().characteristic() == 2 => {}
        _ => per_iteration.ext_base_mul = n * len,
    }
    ExpectedCounts {
        per_iteration,
        per_run: per_iteration * scheme.s() as u64,
    }
}

#[derive(Clone, Debug)]
pub struct InstrumentedRun {
    pub file: Matrix,
    pub per_iteration: Vec<OpCounts>,
    pub response_counts: OpCounts,
    pub reconstruction_counts: OpCounts,
    pub expected: ExpectedCounts,
}

impl InstrumentedRun {
    pub fn counts_match(&self) -> bool {
        self.response_counts == self.expected.per_run
            && self
                .per_iteration
                .iter()
                .all(|c| *c == self.expected.per_iteration)
    }
}

pub fn instrumented_retrieve(
    scheme: &Scheme,
    files: &FileStore,
    i: usize,
) -> Result<InstrumentedRun> {
    let storage = encode_storage(scheme, files)?;
    let run = retrieve_file(scheme, &storage, i)?;
    let per_iteration: Vec<OpCounts> = run.iterations.iter().map(|it| it.response_counts).collect();
    Ok(InstrumentedRun {
        response_counts: per_iteration.iter().copied().sum(),
        per_iteration,
        file: run.file,
        reconstruction_counts: run.reconstruction_counts,
        expected: expected_op_counts(scheme),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PrivacyMode {
    Rank,
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrivacyReport {
    pub t_checked: usize,
    pub rank_condition_ok: bool,
    pub exhaustive_checked: bool,
    /// Largest statistical distance between the query distributions seen by
    /// a coalition for two different file indices.
    #[serde(serialize_with = "opt_ratio_str")]
    pub max_statistical_distance: Option<Ratio<u64>>,
}

impl PrivacyReport {
    pub fn is_private(&self) -> bool {
        self.rank_condition_ok
            && self
                .max_statistical_distance
                .is_none_or(|d| d == Ratio::from_integer(0))
    }
}

/// True iff every `t` columns of the retrieval generator are independent,
/// i.e. the retrieval code projects onto every `t` coordinates surjectively.
pub fn rank_condition(scheme: &Scheme, t: usize) -> Result<bool> {
    let gen = scheme.retrieval_code().generator();
    let n = scheme.servers();
    if t > n {
        return Err(Error::IndexOutOfRange {
            what: "collusion size",
            value: t,
            max: n,
        });
    }
    for cols in (0..n).combinations(t) {
        if gen.select_columns(&cols)?.rank() < t {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn verify_privacy(scheme: &Scheme, t: usize, mode: PrivacyMode) -> Result<PrivacyReport> {
    if t == 0 {
        return Err(Error::IndexOutOfRange {
            what: "collusion size",
            value: t,
            max: scheme.servers(),
        });
    }
    let rank_condition_ok = rank_condition(scheme, t)?;
    let max_statistical_distance = match mode {
        PrivacyMode::Rank => None,
        PrivacyMode::Exhaustive => Some(exhaustive_distance(scheme, t)?),
    };
    Ok(PrivacyReport {
        t_checked: t,
        rank_condition_ok,
        exhaustive_checked: mode == PrivacyMode::Exhaustive,
        max_statistical_distance,
    })
}

/// Enumerates every choice of the `mu b` retrieval codewords for every file
/// index and iteration, and compares the joint query distribution of each
/// `t`-subset of servers against the one for file 1.
fn exhaustive_distance(scheme: &Scheme, t: usize) -> Result<Ratio<u64>> {
    let code = scheme.retrieval_code();
    let per_word = code.size();
    let slots = scheme.query_len();
    let needed = per_word
        .checked_pow(slots as u32)
        .filter(|&p| p <= EXHAUSTIVE_LIMIT)
        .ok_or(Error::ExhaustiveTooLarge {
            needed: per_word.saturating_pow(slots as u32),
            limit: EXHAUSTIVE_LIMIT,
        })?;
    let mut words: Vec<Vec<Elem>> = Vec::with_capacity(per_word as usize);
    code.for_each_codeword(per_word, |w| words.push(w.to_vec()))?;

    let subsets: Vec<Vec<usize>> = (0..scheme.servers()).combinations(t).collect();
    let mut worst = Ratio::from_integer(0u64);
    for u in 1..=scheme.s() {
        let mut reference: Option<Vec<HashMap<Vec<Elem>, u64>>> = None;
        for i in 1..=scheme.mu() {
            let mut hist: Vec<HashMap<Vec<Elem>, u64>> = vec![HashMap::new(); subsets.len()];
            let mut choice = vec![0usize; slots];
            loop {
                let codewords: Vec<Vec<Elem>> = choice.iter().map(|&c| words[c].clone()).collect();
                let qs = build_queries(scheme, i, u, &codewords)?;
                for (h, subset) in hist.iter_mut().zip(&subsets) {
                    let view: Vec<Elem> = subset
                        .iter()
                        .flat_map(|&j| qs.for_server(j).iter().copied())
                        .collect();
                    *h.entry(view).or_default() += 1;
                }
                if !advance(&mut choice, words.len()) {
                    break;
                }
            }
            match &reference {
                None => reference = Some(hist),
                Some(base) => {
                    for (a, b) in base.iter().zip(&hist) {
                        worst = worst.max(statistical_distance(a, b, needed as u64));
                    }
                }
            }
        }
    }
    Ok(worst)
}

fn advance(digits: &mut [usize], radix: usize) -> bool {
    for d in digits.iter_mut() {
        *d += 1;
        if *d < radix {
            return true;
        }
        *d = 0;
    }
    false
}

fn statistical_distance(
    a: &HashMap<Vec<Elem>, u64>,
    b: &HashMap<Vec<Elem>, u64>,
    total: u64,
) -> Ratio<u64> {
    let mut diff = 0u64;
    for (k, &x) in a {
        diff += x.abs_diff(b.get(k).copied().unwrap_or(0));
    }
    for (k, &y) in b {
        if !a.contains_key(k) {
            diff += y;
        }
    }
    Ratio::new(diff, 2 * total)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorrectnessReport {
    pub trials: usize,
    pub passed: usize,
    /// First mismatching instance, if any.
    pub failure: Option<String>,
}

impl CorrectnessReport {
    pub fn is_ok(&self) -> bool {
        self.failure.is_none() && self.passed == self.trials
    }
}

/// Runs `trials` instances with random files, file index and query seed,
/// all drawn from `seed`.
pub fn verify_correctness(scheme: &Scheme, trials: usize, seed: u64) -> CorrectnessReport {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut passed = 0;
    for trial in 0..trials {
        let files = FileStore::random(scheme, &mut rng);
        let i = rng.random_range(1..=scheme.mu());
        let query_seed: u64 = rng.random();
        let outcome = encode_storage(scheme, &files)
            .and_then(|storage| retrieve_file_seeded(scheme, &storage, i, query_seed));
        let failure = match outcome {
            Ok(run) if Some(&run.file) == files.file(i) => {
                passed += 1;
                continue;
            }
            Ok(run) => format!(
                "trial {trial}: file {i} with query seed {query_seed} retrieved {:?}, stored {:?}",
                run.file,
                files.file(i)
            ),
            Err(e) => format!("trial {trial}: file {i} with query seed {query_seed}: {e}"),
        };
        return CorrectnessReport {
            trials,
            passed,
            failure: Some(failure),
        };
    }
    CorrectnessReport {
        trials,
        passed,
        failure: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VariantReport {
    pub variant: Variant,
    /// Why the variant cannot be run; the remaining fields are then empty.
    pub unusable: Option<String>,
    pub rate: Option<Rate>,
    #[serde(serialize_with = "opt_ratio_str")]
    pub rate_reduced: Option<Ratio<u64>>,
    pub t_protect: Option<usize>,
    pub retrieval_dim: Option<usize>,
    pub expected_counts: Option<OpCounts>,
    pub response_counts: Option<OpCounts>,
    pub reconstruction_counts: Option<OpCounts>,
    /// Bit-operation estimate of `response_counts`; informational.
    pub response_bit_estimate: Option<u64>,
    pub star_equal_plain: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BenchReport {
    pub field: String,
    pub n: usize,
    pub storage_k: usize,
    pub retrieval_dim: usize,
    pub mu: usize,
    pub seed: u64,
    pub variants: Vec<VariantReport>,
}

impl BenchReport {
    pub fn variant(&self, v: Variant) -> &VariantReport {
        self.variants
            .iter()
            .find(|r| r.variant == v)
            .expect("every variant is reported")
    }
}

/// Derives, runs and tallies all three variants on the same storage and
/// retrieval codes, files and seed. Derivation failures are reported, not
/// returned.
pub fn compare_variants(
    storage: &GrsSpec,
    retrieval: &GrsSpec,
    mu: usize,
    seed: u64,
) -> Result<BenchReport> {
    let base = SchemeConfig::new(storage.clone(), retrieval.clone(), Variant::Plain, mu, seed)?;
    let storage_code = storage.code();
    let plain_star = storage_code.star_product(&retrieval.code())?;
    let mut variants = Vec::with_capacity(3);
    for variant in Variant::ALL {
        let report = match Scheme::derive(base.with_variant(variant)) {
            Ok(scheme) => {
                let mut rng = ChaCha20Rng::seed_from_u64(seed);
                let files = FileStore::random(&scheme, &mut rng);
                let run = instrumented_retrieve(&scheme, &files, 1)?;
                if Some(&run.file) != files.file(1) {
                    return Err(Error::Invariant(format!(
                        "{variant} retrieval returned a wrong file"
                    )));
                }
                VariantReport {
                    variant,
                    unusable: None,
                    rate: Some(scheme.rate()),
                    rate_reduced: Some(scheme.rate().as_ratio()),
                    t_protect: Some(scheme.t_protect()),
                    retrieval_dim: Some(scheme.retrieval_code().dim()),
                    expected_counts: Some(run.expected.per_run),
                    response_counts: Some(run.response_counts),
                    reconstruction_counts: Some(run.reconstruction_counts),
                    response_bit_estimate: Some(
                        run.response_counts.bit_cost_estimate(scheme.field()),
                    ),
                    star_equal_plain: Some(*scheme.star() == plain_star),
                }
            }
            Err(e @ Error::UnusableScheme(_)) => VariantReport {
                variant,
                unusable: Some(e.to_string()),
                rate: None,
                rate_reduced: None,
                t_protect: None,
                retrieval_dim: None,
                expected_counts: None,
                response_counts: None,
                reconstruction_counts: None,
                response_bit_estimate: None,
                star_equal_plain: None,
            },
            Err(e) => return Err(e),
        };
        variants.push(report);
    }
    Ok(BenchReport {
        field: storage.field().to_string(),
        n: storage.len(),
        storage_k: storage.dim(),
        retrieval_dim: retrieval.dim(),
        mu,
        seed,
        variants,
    })
}

impl fmt::Display for BenchReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "field {}  n = {}  k = {}  t = {}  mu = {}  seed = {}",
            self.field, self.n, self.storage_k, self.retrieval_dim, self.mu, self.seed
        )?;
        let header = [
            "variant",
            "rate",
            "t_protect",
            "dim",
            "ext_add",
            "ext_mul",
            "ext_base_mul",
            "bits",
            "star=plain",
        ];
        let dash = || "-".to_string();
        let rows: Vec<Vec<String>> = self
            .variants
            .iter()
            .map(|r| match (&r.unusable, r.response_counts) {
                (None, Some(c)) => vec![
                    r.variant.to_string(),
                    r.rate.map_or_else(dash, |x| x.to_string()),
                    r.t_protect.map_or_else(dash, |x| x.to_string()),
                    r.retrieval_dim.map_or_else(dash, |x| x.to_string()),
                    c.ext_add.to_string(),
                    c.ext_mul.to_string(),
                    c.ext_base_mul.to_string(),
                    r.response_bit_estimate.map_or_else(dash, |x| x.to_string()),
                    r.star_equal_plain.map_or_else(dash, |x| x.to_string()),
                ],
                _ => {
                    let mut row = vec![r.variant.to_string(), "unusable".to_string()];
                    row.resize(header.len(), dash());
                    row
                }
            })
            .collect();
        let widths: Vec<usize> = (0..header.len())
            .map(|c| {
                rows.iter()
                    .map(|r| r[c].len())
                    .chain([header[c].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |cells: &[&str]| -> String {
            cells
                .iter()
                .zip(&widths)
                .enumerate()
                .map(|(c, (s, w))| {
                    if c == 0 {
                        format!("{s:<w$}")
                    } else {
                        format!("{s:>w$}")
                    }
                })
                .join("  ")
        };
        writeln!(f, "{}", line(&header))?;
        for row in &rows {
            let cells: Vec<&str> = row.iter().map(String::as_str).collect();
            writeln!(f, "{}", line(&cells))?;
        }
        for r in &self.variants {
            if let Some(why) = &r.unusable {
                writeln!(f, "{}: {why}", r.variant)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::{EXAMPLE_1, EXAMPLE_2, EXAMPLE_3};

    #[test]
    fn closed_form_counts() {
        let plain = Scheme::derive(EXAMPLE_2.config(3, Variant::Plain, 10, 0).unwrap()).unwrap();
        let e = expected_op_counts(&plain);
        assert_eq!((e.per_iteration.ext_add, e.per_iteration.ext_mul), (72, 80));
        assert_eq!(e.per_run, e.per_iteration * 3);
        let sub = Scheme::derive(
            EXAMPLE_2
                .config(3, Variant::SubfieldSubcode, 10, 0)
                .unwrap(),
        )
        .unwrap();
        let e = expected_op_counts(&sub);
        assert_eq!((e.per_iteration.ext_add, e.per_iteration.ext_mul), (72, 0));
        let tiny = Scheme::derive(EXAMPLE_1.config(1, Variant::Plain, 1, 0).unwrap()).unwrap();
        let e = expected_op_counts(&tiny);
        assert_eq!((e.per_iteration.ext_add, e.per_iteration.ext_mul), (0, 4));
    }

    #[test]
    fn measured_counts_are_structural() {
        for (preset, k) in [(EXAMPLE_1, 1), (EXAMPLE_2, 2), (EXAMPLE_3, 3)] {
            for variant in Variant::ALL {
                let Ok(cfg) = preset.config(k, variant, 3, 5) else {
                    continue;
                };
                let Ok(scheme) = Scheme::derive(cfg) else {
                    continue;
                };
                for files in [
                    FileStore::zeros(&scheme),
                    FileStore::random(&scheme, &mut ChaCha20Rng::seed_from_u64(1)),
                ] {
                    let run = instrumented_retrieve(&scheme, &files, 2).unwrap();
                    assert!(run.counts_match(), "{variant} on example {}", preset.id);
                    assert_eq!(&run.file, files.file(2).unwrap());
                    assert!(!run.reconstruction_counts.is_zero());
                }
            }
        }
    }

    #[test]
    fn exhaustive_privacy_small() {
        let s =
            Scheme::derive(EXAMPLE_1.config(1, Variant::SubfieldSubcode, 2, 0).unwrap()).unwrap();
        let r = verify_privacy(&s, 3, PrivacyMode::Exhaustive).unwrap();
        assert!(r.is_private());
        assert_eq!(r.max_statistical_distance, Some(Ratio::from_integer(0)));
        let leaky = verify_privacy(&s, 4, PrivacyMode::Exhaustive).unwrap();
        assert!(!leaky.rank_condition_ok);
        assert!(leaky.max_statistical_distance.unwrap() > Ratio::from_integer(0));
    }

    #[test]
    fn exhaustive_refuses_large_spaces() {
        let s = Scheme::derive(EXAMPLE_2.config(3, Variant::Plain, 2, 0).unwrap()).unwrap();
        assert!(matches!(
            verify_privacy(&s, 1, PrivacyMode::Exhaustive),
            Err(Error::ExhaustiveTooLarge { .. })
        ));
    }

    #[test]
    fn distance_of_disjoint_histograms_is_one() {
        let a = HashMap::from([(vec![Elem::ZERO], 4u64)]);
        let b = HashMap::from([(vec![Elem::ONE], 4u64)]);
        assert_eq!(statistical_distance(&a, &b, 4), Ratio::from_integer(1));
        assert_eq!(statistical_distance(&a, &a, 4), Ratio::from_integer(0));
    }

    #[test]
    fn correctness_on_zero_and_single_file() {
        let s =
            Scheme::derive(EXAMPLE_3.config(2, Variant::SubfieldSubcode, 1, 0).unwrap()).unwrap();
        assert!(verify_correctness(&s, 10, 4).is_ok());
    }

    #[test]
    fn bench_table_lists_every_variant() {
        let report =
            compare_variants(&EXAMPLE_2.storage(3).unwrap(), &EXAMPLE_2.retrieval(), 2, 1).unwrap();
        let text = report.to_string();
        for v in Variant::ALL {
            assert!(text.contains(v.name()));
        }
        let trace = report.variant(Variant::TraceCode);
        assert!(trace.unusable.is_some());
        let json = serde_json::to_value(&report).unwrap();
        assert_eq!(json["variants"][0]["rate"], "1/8");
    }
}
