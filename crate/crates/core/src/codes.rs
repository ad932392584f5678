//! Linear codes: GRS construction and duality, star products, subfield
//! subcodes, trace codes and exact minimum distances.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::linalg::Matrix;

/// Default number of enumeration steps a distance computation may take.
pub const DEFAULT_BUDGET: u128 = 10_000_000;

/// A linear code of length `n` over `field`, stored by its canonical
/// (reduced row-echelon, zero rows removed) generator matrix.
#[derive(Clone, Debug)]
pub struct LinearCode {
    field: Field,
    n: usize,
    gen: Matrix,
    grs: Option<GrsSpec>,
}

/// Two codes are equal when they have the same canonical generator.
impl PartialEq for LinearCode {
    fn eq(&self, other: &LinearCode) -> bool {
        self.field == other.field && self.n == other.n && self.gen == other.gen
    }
}

impl Eq for LinearCode {}

impl LinearCode {
    /// The row space of `gen`.
    pub fn from_generator(gen: &Matrix) -> LinearCode {
        let (r, pivots) = gen.rref();
        let rows: Vec<usize> = (0..pivots.len()).collect();
        let canonical = r.select_rows(&rows).expect("pivot rows exist");
        LinearCode {
            field: gen.field().clone(),
            n: gen.cols(),
            gen: canonical,
            grs: None,
        }
    }

    pub fn zero(field: Field, n: usize) -> LinearCode {
        LinearCode::from_generator(&Matrix::zeros(field, 0, n))
    }

    pub fn full_space(field: Field, n: usize) -> LinearCode {
        LinearCode::from_generator(&Matrix::identity(field, n))
    }

    pub fn repetition(field: Field, n: usize) -> LinearCode {
        let ones = Matrix::new(field.clone(), 1, n, vec![Elem::ONE; n]).expect("1 x n");
        LinearCode::from_generator(&ones)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn dim(&self) -> usize {
        self.gen.rows()
    }

    /// Canonical generator matrix.
    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    /// The GRS description this code was constructed from, if any.
    pub fn grs(&self) -> Option<&GrsSpec> {
        self.grs.as_ref()
    }

    /// Attaches a GRS description after checking it describes this code.
    pub fn with_grs(mut self, spec: GrsSpec) -> Result<LinearCode> {
        if spec.code() != self {
            return Err(Error::InvalidGrs(
                "description does not match the code".into(),
            ));
        }
        self.grs = Some(spec);
        Ok(self)
    }

    pub fn parity_check(&self) -> Matrix {
        self.gen.null_space_basis()
    }

    pub fn dual(&self) -> LinearCode {
        let mut d = LinearCode::from_generator(&self.parity_check());
        d.grs = self.grs.as_ref().map(GrsSpec::dual);
        d
    }

    pub fn contains_word(&self, w: &[Elem]) -> bool {
        if w.len() != self.n || !w.iter().all(|&e| self.field.contains(e)) {
            return false;
        }
        match self.parity_check().mul_vec(w) {
            Ok(s) => s.iter().all(|e| e.is_zero()),
            Err(_) => false,
        }
    }

    /// Whether `other` is a subcode of `self`.
    pub fn contains(&self, other: &LinearCode) -> Result<bool> {
        self.check_compatible(other)?;
        Ok(self.gen.stack(&other.gen)?.rank() == self.dim())
    }

    fn check_compatible(&self, other: &LinearCode) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "codes of length {} and {}",
                self.n, other.n
            )));
        }
        Ok(())
    }

    /// The span over `ext` of a code defined over a subfield of `ext`.
    pub fn lift(&self, ext: &Field) -> Result<LinearCode> {
        if &self.field == ext {
            return Ok(self.clone());
        }
        if !self.field.is_subfield_of(ext) {
            return Err(Error::FieldMismatch);
        }
        Ok(LinearCode::from_generator(
            &self.gen.reinterpret(ext.clone())?,
        ))
    }

    /// Span of all coordinatewise products of codewords.
    pub fn star_product(&self, other: &LinearCode) -> Result<LinearCode> {
        self.check_compatible(other)?;
        let f = &self.field;
        let rows: Vec<Vec<Elem>> = self
            .gen
            .row_iter()
            .cartesian_product(other.gen.row_iter())
            .map(|(a, b)| a.iter().zip(b).map(|(&x, &y)| f.mul(x, y)).collect())
            .collect();
        let products = Matrix::from_rows(f.clone(), self.n, rows)?;
        Ok(LinearCode::from_generator(&products))
    }

    /// `self ∩ GF(q)^n`, computed by expanding every parity check into its
    /// `m` coordinate equations over GF(q).
    pub fn subfield_subcode(&self) -> LinearCode {
        let f = &self.field;
        if f.is_prime_field() {
            return self.clone();
        }
        let base = f.base_field();
        let h = self.parity_check();
        let m = f.degree();
        let mut expanded = Matrix::zeros(base.clone(), h.rows() * m, self.n);
        for (r, row) in h.row_iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                for i in 0..m {
                    expanded.set(r * m + i, j, Elem::from_index(f.coeff(e, i)));
                }
            }
        }
        LinearCode::from_generator(&expanded.null_space_basis())
    }

    /// Componentwise trace image `{Tr(d) : d ∈ self}`, spanned by the traces
    /// of `x^e g` for generator rows `g` and `0 <= e < m`.
    pub fn trace_code(&self) -> LinearCode {
        let f = &self.field;
        if f.is_prime_field() {
            return self.clone();
        }
        let rows: Vec<Vec<Elem>> = self
            .gen
            .row_iter()
            .cartesian_product(0..f.degree())
            .map(|(g, e)| {
                let scale = f.basis_element(e);
                g.iter().map(|&x| f.trace(f.mul(scale, x))).collect()
            })
            .collect();
        let spanning = Matrix::from_rows(f.base_field(), self.n, rows).expect("n columns");
        LinearCode::from_generator(&spanning)
    }

    pub fn is_information_set(&self, idx: &[usize]) -> Result<bool> {
        if idx.len() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{} positions for a code of dimension {}",
                idx.len(),
                self.dim()
            )));
        }
        Ok(self.gen.select_columns(idx)?.rank() == self.dim())
    }

    /// Checks every `k`-subset of `positions`.
    pub fn every_k_subset_informational(&self, positions: &[usize]) -> Result<bool> {
        let k = self.dim();
        if positions.len() < k {
            return Ok(false);
        }
        for subset in positions.iter().copied().combinations(k) {
            if !self.is_information_set(&subset)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Number of codewords, |F|^k, saturating.
    pub fn size(&self) -> u128 {
        (self.field.order() as u128)
            .checked_pow(self.dim() as u32)
            .unwrap_or(u128::MAX)
    }

    fn supports_cost(&self) -> u128 {
        let k = self.dim();
        (k..self.n).map(|z| binomial(self.n, z)).sum()
    }

    /// Calls `visit` on every codeword, walking a q-ary odometer over the
    /// GF(q)-basis `{x^e g}` so each step costs about one vector addition.
    pub fn for_each_codeword(&self, budget: u128, mut visit: impl FnMut(&[Elem])) -> Result<()> {
        let needed = self.size();
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        let f = &self.field;
        let q = f.characteristic();
        let basis: Vec<Vec<Elem>> = self
            .gen
            .row_iter()
            .cartesian_product(0..f.degree())
            .map(|(g, e)| {
                let scale = f.basis_element(e);
                g.iter().map(|&x| f.mul(scale, x)).collect()
            })
            .collect();
        let mut word = vec![Elem::ZERO; self.n];
        let mut digits = vec![0u32; basis.len()];
        visit(&word);
        loop {
            let mut p = 0;
            loop {
                if p == basis.len() {
                    return Ok(());
                }
                for (w, &b) in word.iter_mut().zip(&basis[p]) {
                    *w = f.add(*w, b);
                }
                digits[p] += 1;
                if digits[p] == q {
                    digits[p] = 0;
                    p += 1;
                } else {
                    break;
                }
            }
            visit(&word);
        }
    }

    /// Number of codewords of each Hamming weight `0..=n`.
    pub fn weight_distribution(&self, budget: u128) -> Result<Vec<u128>> {
        let mut counts = vec![0u128; self.n + 1];
        self.for_each_codeword(budget, |w| {
            counts[w.iter().filter(|e| !e.is_zero()).count()] += 1;
        })?;
        Ok(counts)
    }

    pub fn min_distance_by_enumeration(&self, budget: u128) -> Result<usize> {
        if self.dim() == 0 {
            return Ok(self.n + 1);
        }
        let mut best = usize::MAX;
        self.for_each_codeword(budget, |w| {
            let wt = w.iter().filter(|e| !e.is_zero()).count();
            if wt > 0 && wt < best {
                best = wt;
            }
        })?;
        Ok(best)
    }

    /// `d = n - max{|Z| : rank(G restricted to Z) < k}`: a nonzero codeword
    /// vanishes on `Z` exactly when the columns in `Z` have rank below `k`.
    pub fn min_distance_by_supports(&self, budget: u128) -> Result<usize> {
        let k = self.dim();
        if k == 0 {
            return Ok(self.n + 1);
        }
        let needed = self.supports_cost();
        if needed > budget {
            return Err(Error::BudgetExceeded { needed, budget });
        }
        for z in (k..self.n).rev() {
            for zeros in (0..self.n).combinations(z) {
                if self.gen.select_columns(&zeros)?.rank() < k {
                    return Ok(self.n - z);
                }
            }
        }
        Ok(self.n - k + 1)
    }

    /// Exact minimum distance with the default budget.
    ///
    /// The zero code is assigned distance `n + 1`. The cheaper of codeword
    /// enumeration and support enumeration is used; for GRS-constructed
    /// codes the result must equal `n - k + 1`, and that value is returned
    /// directly when neither enumeration fits the budget.
    pub fn min_distance(&self) -> Result<usize> {
        self.min_distance_with_budget(DEFAULT_BUDGET)
    }

    pub fn min_distance_with_budget(&self, budget: u128) -> Result<usize> {
        let k = self.dim();
        if k == 0 {
            return Ok(self.n + 1);
        }
        let by_words = self.size();
        let by_supports = self.supports_cost();
        let computed = if by_words <= by_supports && by_words <= budget {
            Some(self.min_distance_by_enumeration(budget)?)
        } else if by_supports <= budget {
            Some(self.min_distance_by_supports(budget)?)
        } else {
            None
        };
        let mds = self.n - k + 1;
        match (computed, &self.grs) {
            (Some(d), Some(_)) if d != mds => Err(Error::Invariant(format!(
                "GRS code with d = {d}, expected {mds}"
            ))),
            (Some(d), _) => Ok(d),
            (None, Some(_)) => Ok(mds),
            (None, None) => Err(Error::BudgetExceeded {
                needed: by_words.min(by_supports),
                budget,
            }),
        }
    }
}

fn binomial(n: usize, k: usize) -> u128 {
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i as u128 + 1))
}

/// `GRS_k(alpha, v) = {(v_0 f(alpha_0), ..., v_{n-1} f(alpha_{n-1})) : deg f < k}`.
///
/// Argument order is support first, multipliers second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrsSpec {
    field: Field,
    k: usize,
    alpha: Vec<Elem>,
    v: Vec<Elem>,
}

impl GrsSpec {
    pub fn new(field: Field, k: usize, alpha: Vec<Elem>, v: Vec<Elem>) -> Result<GrsSpec> {
        let n = alpha.len();
        if v.len() != n {
            return Err(Error::InvalidGrs(format!(
                "{n} support points but {} multipliers",
                v.len()
            )));
        }
        if k > n {
            return Err(Error::InvalidGrs(format!(
                "dimension {k} exceeds length {n}"
            )));
        }
        for &e in alpha.iter().chain(&v) {
            field.check(e)?;
        }
        if !alpha.iter().all_unique() {
            return Err(Error::InvalidGrs("support points are not distinct".into()));
        }
        if v.iter().any(|e| e.is_zero()) {
            return Err(Error::InvalidGrs("multipliers must be nonzero".into()));
        }
        Ok(GrsSpec { field, k, alpha, v })
    }

    /// All multipliers equal to one.
    pub fn with_unit_multipliers(field: Field, k: usize, alpha: Vec<Elem>) -> Result<GrsSpec> {
        let v = vec![Elem::ONE; alpha.len()];
        GrsSpec::new(field, k, alpha, v)
    }

    /// Support = every field element in canonical order, unit multipliers.
    pub fn over_whole_field(field: Field, k: usize) -> Result<GrsSpec> {
        let alpha = field.elements().collect();
        GrsSpec::with_unit_multipliers(field, k, alpha)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.k
    }

    pub fn support(&self) -> &[Elem] {
        &self.alpha
    }

    pub fn multipliers(&self) -> &[Elem] {
        &self.v
    }

    /// Same support and multipliers, different dimension.
    pub fn with_dim(&self, k: usize) -> Result<GrsSpec> {
        GrsSpec::new(self.field.clone(), k, self.alpha.clone(), self.v.clone())
    }

    /// Rows `(v_j alpha_j^i)_j` for `i < k`, not canonicalized.
    pub fn generator_matrix(&self) -> Matrix {
        let f = &self.field;
        let n = self.len();
        let mut g = Matrix::zeros(f.clone(), self.k, n);
        for j in 0..n {
            let mut power = self.v[j];
            for i in 0..self.k {
                g.set(i, j, power);
                power = f.mul(power, self.alpha[j]);
            }
        }
        g
    }

    pub fn code(&self) -> LinearCode {
        let mut c = LinearCode::from_generator(&self.generator_matrix());
        c.grs = Some(self.clone());
        c
    }

    /// `GRS_{n-k}(alpha, w)` with `w_j = 1 / (v_j prod_{i != j} (alpha_j - alpha_i))`.
    pub fn dual(&self) -> GrsSpec {
        let f = &self.field;
        let n = self.len();
        let w = (0..n)
            .map(|j| {
                let denom = (0..n).filter(|&i| i != j).fold(self.v[j], |acc, i| {
                    f.mul(acc, f.sub(self.alpha[j], self.alpha[i]))
                });
                f.inv(denom)
                    .expect("distinct support and nonzero multipliers")
            })
            .collect();
        GrsSpec {
            field: f.clone(),
            k: n - self.k,
            alpha: self.alpha.clone(),
            v: w,
        }
    }

    /// `GRS_k(alpha, u) ⋆ GRS_l(alpha, v) = GRS_{min(n, k+l-1)}(alpha, u·v)`.
    pub fn star(&self, other: &GrsSpec) -> Result<GrsSpec> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.alpha != other.alpha {
            return Err(Error::SupportMismatch);
        }
        let n = self.len();
        let k = if self.k == 0 || other.k == 0 {
            0
        } else {
            n.min(self.k + other.k - 1)
        };
        let f = &self.field;
        let v = self
            .v
            .iter()
            .zip(&other.v)
            .map(|(&a, &b)| f.mul(a, b))
            .collect();
        Ok(GrsSpec {
            field: f.clone(),
            k,
            alpha: self.alpha.clone(),
            v,
        })
    }
}
