//! The multi-server PIR scheme over a GRS storage code, and its
//! low-complexity variants whose queries are drawn from a base-field code.
//!
//! Indexing: files `i`, rows `a`, iterations `u` and server positions in
//! the partitions `J_u^a` are 1-based. Vector coordinates (query slots,
//! response entries, storage columns) are 0-based, so server `j` reads
//! column `j - 1`. Query slot `(l - 1) b + (a - 1)` belongs to row `a` of
//! file `l`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize, Serializer};

use crate::codes::{GrsSpec, LinearCode};
use crate::counts::{counted_dot, OpCounts};
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;

/// Which code the query randomness is drawn from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Variant {
    /// The retrieval code `D` itself, over GF(q^m).
    #[serde(rename = "plain")]
    Plain,
    /// `D ∩ GF(q)^n`.
    #[serde(rename = "subfield")]
    SubfieldSubcode,
    /// `Tr(D)`.
    #[serde(rename = "trace")]
    TraceCode,
}

impl Variant {
    pub const ALL: [Variant; 3] = [Variant::Plain, Variant::SubfieldSubcode, Variant::TraceCode];

    pub fn name(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::SubfieldSubcode => "subfield",
            Variant::TraceCode => "trace",
        }
    }

    pub fn is_low_complexity(self) -> bool {
        self != Variant::Plain
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Variant, String> {
        match s {
            "plain" => Ok(Variant::Plain),
            "subfield" => Ok(Variant::SubfieldSubcode),
            "trace" => Ok(Variant::TraceCode),
            other => Err(format!(
                "unknown variant {other:?} (expected plain|subfield|trace)"
            )),
        }
    }
}

/// Retrieved symbols per downloaded symbol, kept unreduced as `c/n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Rate {
    pub retrieved: usize,
    pub downloaded: usize,
}

impl Rate {
    pub fn as_ratio(self) -> Ratio<u64> {
        Ratio::new(self.retrieved as u64, self.downloaded as u64)
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.retrieved, self.downloaded)
    }
}

impl Serialize for Rate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug)]
pub struct SchemeConfig {
    pub storage: GrsSpec,
    pub retrieval: GrsSpec,
    pub variant: Variant,
    pub mu: usize,
    pub seed: u64,
}

impl SchemeConfig {
    pub fn new(
        storage: GrsSpec,
        retrieval: GrsSpec,
        variant: Variant,
        mu: usize,
        seed: u64,
    ) -> Result<SchemeConfig> {
        if storage.field() != retrieval.field() {
            return Err(Error::FieldMismatch);
        }
        if storage.support() != retrieval.support() {
            return Err(Error::SupportMismatch);
        }
        if mu == 0 {
            return Err(Error::UnusableScheme(
                "at least one file is required".into(),
            ));
        }
        if storage.dim() == 0 {
            return Err(Error::UnusableScheme("storage code has dimension 0".into()));
        }
        Ok(SchemeConfig {
            storage,
            retrieval,
            variant,
            mu,
            seed,
        })
    }

    pub fn with_variant(&self, variant: Variant) -> SchemeConfig {
        SchemeConfig {
            variant,
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug)]
struct IterationPlan {
    /// `J_u^1, ..., J_u^b`, 1-based.
    partition: Vec<Vec<usize>>,
    /// Rows of `H` on which the restricted system is invertible.
    rows: Vec<usize>,
    left_inverse: Matrix,
}

#[derive(Clone, Debug)]
struct RowDecoder {
    /// 0-based, ascending.
    positions: Vec<usize>,
    inverse: Matrix,
}

/// Derived protocol constants for one configuration.
#[derive(Clone, Debug)]
pub struct Scheme {
    config: SchemeConfig,
    storage_code: LinearCode,
    storage_gen: Matrix,
    retrieval: LinearCode,
    star: LinearCode,
    parity_check: Matrix,
    c: usize,
    b: usize,
    s: usize,
    index_len: usize,
    t_protect: usize,
    iterations: Vec<IterationPlan>,
    decoders: Vec<RowDecoder>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `J_u^a` for `a = 1..=b`: consecutive blocks of `c/b` positions in
/// `{1..|J|}`, shifted by `(u-1) c/b` with wraparound `p -> ((p-1+shift) mod |J|) + 1`.
pub fn partition(c: usize, b: usize, index_len: usize, u: usize) -> Vec<Vec<usize>> {
    let width = c / b;
    let shift = (u - 1) * width;
    (1..=b)
        .map(|a| {
            ((a - 1) * width + 1..=a * width)
                .map(|p| (p - 1 + shift) % index_len + 1)
                .collect()
        })
        .collect()
}

impl Scheme {
    pub fn derive(config: SchemeConfig) -> Result<Scheme> {
        let field = config.storage.field().clone();
        let n = config.storage.len();
        let k = config.storage.dim();
        let storage_code = config.storage.code();
        let storage_gen = config.storage.generator_matrix();
        let d = config.retrieval.code();

        let (retrieval, protecting_dual) = match config.variant {
            Variant::Plain => (d.clone(), d.dual()),
            Variant::SubfieldSubcode => (d.subfield_subcode(), d.dual().trace_code()),
            Variant::TraceCode => (d.trace_code(), d.dual().subfield_subcode()),
        };
        let t_protect = protecting_dual.min_distance()? - 1;

        let mut star = storage_code.star_product(&retrieval.lift(&field)?)?;
        let grs_star = config.storage.star(&config.retrieval)?;
        if let Ok(tagged) = star.clone().with_grs(grs_star) {
            star = tagged;
        }
        let c = star.min_distance()? - 1;
        if c == 0 {
            return Err(Error::UnusableScheme(
                "the star product has minimum distance 1, so no symbol can be retrieved".into(),
            ));
        }
        let g = gcd(c, k);
        let lcm = c / g * k;
        let (b, s) = (lcm / k, lcm / c);
        let index_len = k.max(c);
        if c > k {
            let j: Vec<usize> = (0..index_len).collect();
            if !storage_code.every_k_subset_informational(&j)? {
                return Err(Error::UnusableScheme(format!(
                    "d(C*D) - 1 = {c} exceeds k = {k} and not every {k}-subset of J = [{index_len}] \
                     is an information set of the storage code"
                )));
            }
        }

        let parity_check = star.parity_check();
        let mut iterations = Vec::with_capacity(s);
        for u in 1..=s {
            let part = partition(c, b, index_len, u);
            let positions: Vec<usize> = part.iter().flatten().map(|p| p - 1).collect();
            let restricted = parity_check.select_columns(&positions)?;
            let (_, rows) = restricted.transpose().rref();
            if rows.len() < c {
                return Err(Error::Invariant(format!(
                    "columns {positions:?} of the parity check have rank {} < {c}",
                    rows.len()
                )));
            }
            let left_inverse = restricted.select_rows(&rows)?.inverse()?;
            iterations.push(IterationPlan {
                partition: part,
                rows,
                left_inverse,
            });
        }

        let mut decoders = Vec::with_capacity(b);
        for a in 0..b {
            let mut positions: Vec<usize> = iterations
                .iter()
                .flat_map(|it| it.partition[a].iter().map(|p| p - 1))
                .collect();
            positions.sort_unstable();
            positions.dedup();
            if positions.len() != k {
                return Err(Error::Invariant(format!(
                    "row {} visits {} distinct positions, expected {k}",
                    a + 1,
                    positions.len()
                )));
            }
            let inverse = storage_gen
                .select_columns(&positions)?
                .inverse()
                .map_err(|_| {
                    Error::Invariant(format!(
                        "positions {positions:?} are not an information set"
                    ))
                })?;
            decoders.push(RowDecoder { positions, inverse });
        }

        debug_assert!(c <= n);
        Ok(Scheme {
            config,
            storage_code,
            storage_gen,
            retrieval,
            star,
            parity_check,
            c,
            b,
            s,
            index_len,
            t_protect,
            iterations,
            decoders,
        })
    }

    pub fn config(&self) -> &SchemeConfig {
        &self.config
    }

    pub fn variant(&self) -> Variant {
        self.config.variant
    }

    pub fn field(&self) -> &Field {
        self.config.storage.field()
    }

    /// Alphabet of query vectors: GF(q^m) for the plain scheme, GF(q) otherwise.
    pub fn query_alphabet(&self) -> &Field {
        self.retrieval.field()
    }

    /// Number of servers `n`.
    pub fn servers(&self) -> usize {
        self.config.storage.len()
    }

    pub fn k(&self) -> usize {
        self.config.storage.dim()
    }

    pub fn mu(&self) -> usize {
        self.config.mu
    }

    pub fn storage_code(&self) -> &LinearCode {
        &self.storage_code
    }

    /// The un-canonicalized storage generator used for encoding.
    pub fn storage_generator(&self) -> &Matrix {
        &self.storage_gen
    }

    /// `D`, `D ∩ GF(q)^n` or `Tr(D)` depending on the variant.
    pub fn retrieval_code(&self) -> &LinearCode {
        &self.retrieval
    }

    /// `C ⋆ retrieval`, over GF(q^m).
    pub fn star(&self) -> &LinearCode {
        &self.star
    }

    pub fn parity_check(&self) -> &Matrix {
        &self.parity_check
    }

    /// Symbols recovered per iteration, `d(C⋆D) - 1`.
    pub fn c(&self) -> usize {
        self.c
    }

    /// Rows per file, `lcm(c, k) / k`.
    pub fn b(&self) -> usize {
        self.b
    }

    /// Iterations per file, `lcm(c, k) / c`.
    pub fn s(&self) -> usize {
        self.s
    }

    /// `|J| = max(k, c)`.
    pub fn index_len(&self) -> usize {
        self.index_len
    }

    pub fn rate(&self) -> Rate {
        Rate {
            retrieved: self.c,
            downloaded: self.servers(),
        }
    }

    /// Largest coalition against which the queries are private.
    pub fn t_protect(&self) -> usize {
        self.t_protect
    }

    /// Length of each query vector, `mu b`.
    pub fn query_len(&self) -> usize {
        self.config.mu * self.b
    }

    pub fn partition_for_iteration(&self, u: usize) -> Result<&[Vec<usize>]> {
        self.check_iteration(u)?;
        Ok(&self.iterations[u - 1].partition)
    }

    fn check_iteration(&self, u: usize) -> Result<()> {
        if u == 0 || u > self.s {
            return Err(Error::IndexOutOfRange {
                what: "iteration",
                value: u,
                max: self.s,
            });
        }
        Ok(())
    }

    fn check_file(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.config.mu {
            return Err(Error::IndexOutOfRange {
                what: "file",
                value: i,
                max: self.config.mu,
            });
        }
        Ok(())
    }
}

pub fn derive_scheme(config: SchemeConfig) -> Result<Scheme> {
    Scheme::derive(config)
}

/// `mu` files, each a `b x k` matrix over GF(q^m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FileStore {
    files: Vec<Matrix>,
}

impl FileStore {
    pub fn new(files: Vec<Matrix>) -> Result<FileStore> {
        if let Some(first) = files.first() {
            for f in &files {
                if f.field() != first.field() {
                    return Err(Error::FieldMismatch);
                }
                if (f.rows(), f.cols()) != (first.rows(), first.cols()) {
                    return Err(Error::DimensionMismatch("files differ in shape".into()));
                }
            }
        }
        Ok(FileStore { files })
    }

    pub fn zeros(scheme: &Scheme) -> FileStore {
        let files = (0..scheme.mu())
            .map(|_| Matrix::zeros(scheme.field().clone(), scheme.b(), scheme.k()))
            .collect();
        FileStore { files }
    }

    pub fn random<R: Rng + ?Sized>(scheme: &Scheme, rng: &mut R) -> FileStore {
        let f = scheme.field();
        let files = (0..scheme.mu())
            .map(|_| {
                let data = (0..scheme.b() * scheme.k())
                    .map(|_| Elem::from_index(rng.random_range(0..f.order())))
                    .collect();
                Matrix::new(f.clone(), scheme.b(), scheme.k(), data).expect("b x k")
            })
            .collect();
        FileStore { files }
    }

    pub fn files(&self) -> &[Matrix] {
        &self.files
    }

    /// File `i`, 1-based.
    pub fn file(&self, i: usize) -> Option<&Matrix> {
        i.checked_sub(1).and_then(|idx| self.files.get(idx))
    }
}

/// `Y = [x^1; ...; x^mu] G_C`; column `j - 1` is the content of server `j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedStorage {
    y: Matrix,
}

impl EncodedStorage {
    pub fn matrix(&self) -> &Matrix {
        &self.y
    }

    pub fn column(&self, idx: usize) -> Vec<Elem> {
        self.y.column(idx)
    }
}

pub fn encode_storage(scheme: &Scheme, files: &FileStore) -> Result<EncodedStorage> {
    if files.files.len() != scheme.mu() {
        return Err(Error::DimensionMismatch(format!(
            "{} files for a scheme with mu = {}",
            files.files.len(),
            scheme.mu()
        )));
    }
    let field = scheme.field();
    let mut stacked = Matrix::zeros(field.clone(), 0, scheme.k());
    for f in &files.files {
        if f.field() != field {
            return Err(Error::FieldMismatch);
        }
        if (f.rows(), f.cols()) != (scheme.b(), scheme.k()) {
            return Err(Error::DimensionMismatch(format!(
                "file of shape {}x{}, expected {}x{}",
                f.rows(),
                f.cols(),
                scheme.b(),
                scheme.k()
            )));
        }
        stacked = stacked.stack(f)?;
    }
    Ok(EncodedStorage {
        y: stacked.mat_mul(&scheme.storage_gen)?,
    })
}

/// One query vector per server for a single iteration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuerySet {
    iteration: usize,
    alphabet: Field,
    queries: Vec<Vec<Elem>>,
    requested: usize,
}

impl QuerySet {
    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub fn alphabet(&self) -> &Field {
        &self.alphabet
    }

    /// Query for server `idx + 1`.
    pub fn for_server(&self, idx: usize) -> &[Elem] {
        &self.queries[idx]
    }

    pub fn queries(&self) -> &[Vec<Elem>] {
        &self.queries
    }

    /// Client-side only; never part of the serialized queries.
    pub fn requested_file(&self) -> usize {
        self.requested
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResponseVector {
    pub values: Vec<Elem>,
}

/// A symbol `y_j^i(a)` recovered in one iteration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RecoveredSymbol {
    /// 1-based server.
    pub server: usize,
    /// 1-based row of the file.
    pub row: usize,
    pub value: Elem,
}

/// Deterministic query randomness for iteration `u`: ChaCha20 seeded with
/// `seed`, stream `u`.
pub fn query_rng(seed: u64, u: usize) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(u as u64);
    rng
}

/// `mu b` uniform codewords of the retrieval code (uniform messages times
/// its generator).
pub fn sample_codewords<R: Rng + ?Sized>(scheme: &Scheme, rng: &mut R) -> Vec<Vec<Elem>> {
    let gen = scheme.retrieval.generator();
    let order = scheme.query_alphabet().order();
    (0..scheme.query_len())
        .map(|_| {
            let msg: Vec<Elem> = (0..gen.rows())
                .map(|_| Elem::from_index(rng.random_range(0..order)))
                .collect();
            gen.vec_mul(&msg).expect("message length equals dimension")
        })
        .collect()
}

/// Queries from explicit retrieval codewords: `q_j = d_j + e_{b(i-1)+a}` for
/// `j ∈ J_u^a`, `q_j = d_j` elsewhere.
pub fn build_queries(
    scheme: &Scheme,
    i: usize,
    u: usize,
    codewords: &[Vec<Elem>],
) -> Result<QuerySet> {
    scheme.check_file(i)?;
    scheme.check_iteration(u)?;
    let n = scheme.servers();
    if codewords.len() != scheme.query_len() || codewords.iter().any(|w| w.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "expected {} codewords of length {n}",
            scheme.query_len()
        )));
    }
    let alphabet = scheme.query_alphabet().clone();
    let mut queries: Vec<Vec<Elem>> = (0..n)
        .map(|j| codewords.iter().map(|w| w[j]).collect())
        .collect();
    for (a, block) in scheme.iterations[u - 1].partition.iter().enumerate() {
        let slot = scheme.b * (i - 1) + a;
        for &p in block {
            let entry = &mut queries[p - 1][slot];
            *entry = alphabet.add(*entry, Elem::ONE);
        }
    }
    Ok(QuerySet {
        iteration: u,
        alphabet,
        queries,
        requested: i,
    })
}

pub fn generate_queries<R: Rng + ?Sized>(
    scheme: &Scheme,
    i: usize,
    u: usize,
    rng: &mut R,
) -> Result<QuerySet> {
    scheme.check_file(i)?;
    scheme.check_iteration(u)?;
    let codewords = sample_codewords(scheme, rng);
    build_queries(scheme, i, u, &codewords)
}

/// `<q_j, y_j>` as computed by one server.
///
/// With a GF(q^m) query every term is a full product. With a GF(q) query
/// each term is a mixed product, and for q = 2 the term is `y_j(t)` or zero
/// so only additions remain.
pub fn server_response(
    ext: &Field,
    alphabet: &Field,
    query: &[Elem],
    column: &[Elem],
) -> Result<(Elem, OpCounts)> {
    if query.len() != column.len() {
        return Err(Error::DimensionMismatch(format!(
            "query of length {} against {} stored symbols",
            query.len(),
            column.len()
        )));
    }
    let mut counts = OpCounts::default();
    if alphabet == ext {
        return Ok((counted_dot(ext, query, column, &mut counts), counts));
    }
    if !alphabet.is_subfield_of(ext) {
        return Err(Error::FieldMismatch);
    }
    let binary = alphabet.characteristic() == 2;
    let mut acc = Elem::ZERO;
    for (t, (&qt, &yt)) in query.iter().zip(column).enumerate() {
        let term = if binary {
            if qt == Elem::ONE {
                yt
            } else {
                Elem::ZERO
            }
        } else {
            counts.ext_base_mul += 1;
            ext.base_scalar_mul(yt, qt)
        };
        if t == 0 {
            acc = term;
        } else {
            acc = ext.add(acc, term);
            counts.ext_add += 1;
        }
    }
    Ok((acc, counts))
}

/// Every server answers its query; counts are summed over servers.
pub fn respond_all(
    scheme: &Scheme,
    storage: &EncodedStorage,
    queries: &QuerySet,
) -> Result<(ResponseVector, OpCounts)> {
    let mut total = OpCounts::default();
    let mut values = Vec::with_capacity(scheme.servers());
    for j in 0..scheme.servers() {
        let (r, counts) = server_response(
            scheme.field(),
            &queries.alphabet,
            &queries.queries[j],
            &storage.column(j),
        )?;
        values.push(r);
        total += counts;
    }
    Ok((ResponseVector { values }, total))
}

/// Solves `H_{J_u} z = H r` for the `c` planted symbols of iteration `u`.
pub fn reconstruct_iteration(
    scheme: &Scheme,
    responses: &ResponseVector,
    u: usize,
) -> Result<(Vec<RecoveredSymbol>, OpCounts)> {
    scheme.check_iteration(u)?;
    if responses.values.len() != scheme.servers() {
        return Err(Error::DimensionMismatch(format!(
            "{} responses from {} servers",
            responses.values.len(),
            scheme.servers()
        )));
    }
    let f = scheme.field();
    let plan = &scheme.iterations[u - 1];
    let mut counts = OpCounts::default();
    let syndrome: Vec<Elem> = plan
        .rows
        .iter()
        .map(|&r| {
            counted_dot(
                f,
                scheme.parity_check.row(r),
                &responses.values,
                &mut counts,
            )
        })
        .collect();
    let z: Vec<Elem> = plan
        .left_inverse
        .row_iter()
        .map(|row| counted_dot(f, row, &syndrome, &mut counts))
        .collect();
    let mut out = Vec::with_capacity(scheme.c);
    let mut next = 0;
    for (a, block) in plan.partition.iter().enumerate() {
        for &p in block {
            out.push(RecoveredSymbol {
                server: p,
                row: a + 1,
                value: z[next],
            });
            next += 1;
        }
    }
    Ok((out, counts))
}

/// Queries, responses and recovered symbols of one iteration.
#[derive(Clone, Debug)]
pub struct IterationRecord {
    pub queries: QuerySet,
    pub responses: ResponseVector,
    pub response_counts: OpCounts,
    pub recovered: Vec<RecoveredSymbol>,
}

#[derive(Clone, Debug)]
pub struct Retrieval {
    pub file: Matrix,
    pub iterations: Vec<IterationRecord>,
    /// Syndromes, planted-symbol solves and the final decode.
    pub reconstruction_counts: OpCounts,
}

impl Retrieval {
    /// Server-side work summed over all iterations.
    pub fn response_counts(&self) -> OpCounts {
        self.iterations.iter().map(|it| it.response_counts).sum()
    }
}

/// Runs all `s` iterations for file `i` with the configured seed.
pub fn retrieve_file(scheme: &Scheme, storage: &EncodedStorage, i: usize) -> Result<Retrieval> {
    retrieve_file_seeded(scheme, storage, i, scheme.config.seed)
}

pub fn retrieve_file_seeded(
    scheme: &Scheme,
    storage: &EncodedStorage,
    i: usize,
    seed: u64,
) -> Result<Retrieval> {
    scheme.check_file(i)?;
    let f = scheme.field();
    let mut reconstruction_counts = OpCounts::default();
    let mut symbols: Vec<BTreeMap<usize, Elem>> = vec![BTreeMap::new(); scheme.b];
    let mut iterations = Vec::with_capacity(scheme.s);
    for u in 1..=scheme.s {
        let mut rng = query_rng(seed, u);
        let queries = generate_queries(scheme, i, u, &mut rng)?;
        let (responses, response_counts) = respond_all(scheme, storage, &queries)?;
        let (recovered, counts) = reconstruct_iteration(scheme, &responses, u)?;
        reconstruction_counts += counts;
        for sym in &recovered {
            symbols[sym.row - 1].insert(sym.server - 1, sym.value);
        }
        iterations.push(IterationRecord {
            queries,
            responses,
            response_counts,
            recovered,
        });
    }
    let mut file = Matrix::zeros(f.clone(), scheme.b, scheme.k());
    for (a, decoder) in scheme.decoders.iter().enumerate() {
        let y: Vec<Elem> = decoder
            .positions
            .iter()
            .map(|p| {
                symbols[a].get(p).copied().ok_or_else(|| {
                    Error::Invariant(format!("row {} missing position {}", a + 1, p + 1))
                })
            })
            .collect::<Result<_>>()?;
        let columns = decoder.inverse.transpose();
        for (col, inv_col) in columns.row_iter().enumerate() {
            let x = counted_dot(f, &y, inv_col, &mut reconstruction_counts);
            file.set(a, col, x);
        }
    }
    Ok(Retrieval {
        file,
        iterations,
        reconstruction_counts,
    })
}
