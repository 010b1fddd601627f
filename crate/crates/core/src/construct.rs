//! Parity-check constructions for linear cross codes of length 2 and 3, their
//! sufficient-condition checkers, and kernels over Z_{2^m}.
//!
//! Three families are provided:
//!
//! - [`Construction::Pair`]: length 2, any `t`, two-row `H` with first row
//!   `(2^{m-k-2}, 2^{m-k-2})` and second row `(0, 2^{m-k-1})`.
//! - [`Construction::PairSingleRow`]: length 2, `t` in `{2, 3}`, single-row
//!   `H = (-(t+1) 2^{m-2t}, 2^{m-2t})`.
//! - [`Construction::Triple`]: length 3, two-row `H` whose third column is
//!   `(2^{m-k-2}, (2t+1) 2^{m-k-2})`.
//!
//! Here `k = floor(log2 t)`. The condition checkers only certify sufficient
//! conditions; [`crate::oracle::certify_cross_code`] is the ground truth.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::{linear_sphere_packing_bound, Metric};
use crate::oracle::{enumerate_code, Budgets};
use crate::ring::{inverse_odd_raw, Matrix, Modulus, Word};

/// Which family a code belongs to. The serialized tags are the CLI names.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Construction {
    #[serde(rename = "cor5")]
    Pair,
    #[serde(rename = "thm9")]
    PairSingleRow,
    #[serde(rename = "cor12")]
    Triple,
    #[serde(rename = "custom")]
    Custom,
}

impl Construction {
    pub fn tag(self) -> &'static str {
        match self {
            Construction::Pair => "cor5",
            Construction::PairSingleRow => "thm9",
            Construction::Triple => "cor12",
            Construction::Custom => "custom",
        }
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cor5" => Ok(Construction::Pair),
            "thm9" => Ok(Construction::PairSingleRow),
            "cor12" => Ok(Construction::Triple),
            "custom" => Ok(Construction::Custom),
            other => Err(Error::usage(format!(
                "unknown construction {other:?} (expected cor5, thm9 or cor12)"
            ))),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// `max { i : 2^i <= t }`.
pub fn magnitude_exponent(t: u64) -> u32 {
    assert!(t >= 1, "magnitude must be positive");
    63 - t.leading_zeros()
}

/// `t` if odd, `t - 1` otherwise.
pub fn odd_floor(t: u64) -> u64 {
    if t % 2 == 1 {
        t
    } else {
        t.saturating_sub(1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CodeSpec {
    pub n: usize,
    pub modulus: Modulus,
    pub t: u64,
    pub construction: Construction,
}

impl CodeSpec {
    pub fn m(&self) -> u32 {
        self.modulus.bits()
    }

    pub fn k(&self) -> u32 {
        magnitude_exponent(self.t)
    }

    pub fn t_bar(&self) -> u64 {
        odd_floor(self.t)
    }
}

/// Rows of `H`; the code is `{ v : v H^T = 0 }`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParityCheckMatrix(Matrix);

impl ParityCheckMatrix {
    pub fn new(matrix: Matrix) -> Self {
        ParityCheckMatrix(matrix)
    }

    pub fn from_rows(modulus: Modulus, rows: Vec<Vec<i64>>) -> Result<Self> {
        Ok(ParityCheckMatrix(Matrix::new(modulus, rows)?))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn modulus(&self) -> Modulus {
        self.0.modulus()
    }

    /// Code length n.
    pub fn len(&self) -> usize {
        self.0.num_cols()
    }

    pub fn is_empty(&self) -> bool {
        self.0.num_cols() == 0
    }

    pub fn num_checks(&self) -> usize {
        self.0.num_rows()
    }

    pub fn syndrome(&self, v: &Word) -> Result<Word> {
        self.0.mul_transpose(v)
    }

    pub fn contains(&self, v: &Word) -> Result<bool> {
        Ok(self.syndrome(v)?.is_zero())
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        self.0.rows()
    }
}

impl fmt::Display for ParityCheckMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Words generating a code as an additive subgroup of Z_{2^m}^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    modulus: Modulus,
    n: usize,
    rows: Vec<Word>,
}

impl GeneratorMatrix {
    pub fn new(modulus: Modulus, n: usize, rows: Vec<Word>) -> Result<Self> {
        for r in &rows {
            modulus.check_same(r.modulus())?;
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: r.len(),
                });
            }
        }
        Ok(GeneratorMatrix { modulus, n, rows })
    }

    pub fn from_rows(modulus: Modulus, rows: &[&[i64]]) -> Result<Self> {
        let n = rows.first().map_or(0, |r| r.len());
        let words = rows
            .iter()
            .map(|r| Word::new(modulus, r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(modulus, n, words)
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn rows(&self) -> &[Word] {
        &self.rows
    }

    /// Additive order of each row: `2^{m - v}` where `v` is the smallest
    /// 2-adic valuation among its coordinates.
    pub fn row_orders(&self) -> Vec<u64> {
        self.rows
            .iter()
            .map(|r| {
                let v = (0..r.len())
                    .map(|i| r.get(i).valuation())
                    .min()
                    .unwrap_or(self.modulus.bits());
                1u64 << (self.modulus.bits() - v)
            })
            .collect()
    }

    /// The generated subgroup as packed word indices, by closure.
    pub fn span_packed(&self) -> HashSet<u64> {
        let mut span: HashSet<u64> = HashSet::from([0]);
        for g in &self.rows {
            span = extend_span(&span, g);
        }
        span
    }

    pub fn span_order(&self) -> u64 {
        self.span_packed().len() as u64
    }

    /// Every row lies in the kernel of `h`.
    pub fn annihilated_by(&self, h: &ParityCheckMatrix) -> Result<bool> {
        for r in &self.rows {
            if !h.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for GeneratorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, "]")
    }
}

/// `span + <g>`, enumerated coset by coset.
fn extend_span(span: &HashSet<u64>, g: &Word) -> HashSet<u64> {
    let q = g.modulus();
    let n = g.len();
    if span.contains(&g.pack()) {
        return span.clone();
    }
    let mut out = span.clone();
    let mut multiple = g.clone();
    while !span.contains(&multiple.pack()) {
        for &s in span {
            let shifted = Word::unpack(q, n, s).add(&multiple).expect("same shape");
            out.insert(shifted.pack());
        }
        multiple = multiple.add(g).expect("same shape");
    }
    out
}

/// Integer combination of generator rows, reduced mod 2^m.
pub fn encode(g: &GeneratorMatrix, message: &[i64]) -> Result<Word> {
    if message.len() != g.rows.len() {
        return Err(Error::DimensionMismatch {
            expected: g.rows.len(),
            actual: message.len(),
        });
    }
    let mut acc = Word::zero(g.modulus, g.n.max(1));
    for (row, &coef) in g.rows.iter().zip(message) {
        acc = acc.add(&row.scale(g.modulus.element(coef))?)?;
    }
    Ok(acc)
}

/// A linear code with its construction parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    pub spec: CodeSpec,
    pub parity: ParityCheckMatrix,
    /// Closed-form cardinality, where the construction provides one.
    pub closed_form_cardinality: Option<u64>,
}

fn require_magnitude(t: u64) -> Result<()> {
    if t == 0 {
        return Err(Error::param("requires t >= 1"));
    }
    Ok(())
}

fn require_room(m: u32, t: u64) -> Result<u32> {
    let k = magnitude_exponent(t);
    if m < k + 2 {
        return Err(Error::param(format!(
            "requires m >= k+2 (m = {m}, t = {t}, k = {k})"
        )));
    }
    Ok(k)
}

/// Length-2 code with `H = [[2^{m-k-2}, 2^{m-k-2}], [0, 2^{m-k-1}]]` and
/// `|C| = 2^{2(m-k)-3}`.
pub fn construct_pair(m: u32, t: u64) -> Result<LinearCode> {
    require_magnitude(t)?;
    let modulus = Modulus::new(m)?;
    let k = require_room(m, t)?;
    let a = 1i64 << (m - k - 2);
    let parity = ParityCheckMatrix::from_rows(modulus, vec![vec![a, a], vec![0, 2 * a]])?;
    Ok(LinearCode {
        spec: CodeSpec {
            n: 2,
            modulus,
            t,
            construction: Construction::Pair,
        },
        parity,
        closed_form_cardinality: Some(1u64 << (2 * (m - k) - 3)),
    })
}

/// Length-2 single-check code for `t` in `{2, 3}`:
/// `H = (-(t+1) 2^{m-2t}, 2^{m-2t})`, `|C| = 2^{2(m-t)}`.
///
/// `(m, t) = (5, 3)` is also accepted: it is the code generated by
/// `[[1, 4], [16, 0]]` over Z_32, with `H = (-4, 1)` and 32 codewords.
pub fn construct_single_row(m: u32, t: u64) -> Result<LinearCode> {
    if t != 2 && t != 3 {
        return Err(Error::param(format!("requires t in {{2, 3}} (t = {t})")));
    }
    let modulus = Modulus::new(m)?;
    let two_t = 2 * t as u32;
    let (shift, cardinality) = if m >= two_t {
        (m - two_t, 1u64 << (2 * (m - t as u32)))
    } else if (m, t) == (5, 3) {
        (0, 1u64 << m)
    } else {
        return Err(Error::param(format!("requires m >= 2t (m = {m}, t = {t})")));
    };
    let unit = 1i64 << shift;
    let parity = ParityCheckMatrix::from_rows(modulus, vec![vec![-(t as i64 + 1) * unit, unit]])?;
    Ok(LinearCode {
        spec: CodeSpec {
            n: 2,
            modulus,
            t,
            construction: Construction::PairSingleRow,
        },
        parity,
        closed_form_cardinality: Some(cardinality),
    })
}

/// The displayed generator `[[1, t+1], [16, 0]]` of the single-check family,
/// reduced mod 2^m with vanishing rows dropped.
pub fn single_row_generator(m: u32, t: u64) -> Result<GeneratorMatrix> {
    let modulus = Modulus::new(m)?;
    let rows: Vec<Word> = [vec![1, t as i64 + 1], vec![16, 0]]
        .iter()
        .map(|r| Word::new(modulus, r))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|w| !w.is_zero())
        .collect();
    GeneratorMatrix::new(modulus, 2, rows)
}

/// Length-3 code with
/// `H = [[a, a, a], [0, 2a, (2t+1) a]]`, `a = 2^{m-k-2}`.
/// No closed-form cardinality; use [`kernel`].
pub fn construct_triple(m: u32, t: u64) -> Result<LinearCode> {
    require_magnitude(t)?;
    let modulus = Modulus::new(m)?;
    let k = require_room(m, t)?;
    if t > modulus.half() {
        return Err(Error::param(format!(
            "requires t <= 2^(m-1) (m = {m}, t = {t})"
        )));
    }
    let a = 1i64 << (m - k - 2);
    let parity = ParityCheckMatrix::from_rows(
        modulus,
        vec![vec![a, a, a], vec![0, 2 * a, (2 * t as i64 + 1) * a]],
    )?;
    Ok(LinearCode {
        spec: CodeSpec {
            n: 3,
            modulus,
            t,
            construction: Construction::Triple,
        },
        parity,
        closed_form_cardinality: None,
    })
}

pub fn construct(construction: Construction, m: u32, t: u64) -> Result<LinearCode> {
    match construction {
        Construction::Pair => construct_pair(m, t),
        Construction::PairSingleRow => construct_single_row(m, t),
        Construction::Triple => construct_triple(m, t),
        Construction::Custom => Err(Error::usage(
            "custom codes are built from an explicit parity-check matrix",
        )),
    }
}

impl LinearCode {
    pub fn custom(parity: ParityCheckMatrix, t: u64) -> Self {
        LinearCode {
            spec: CodeSpec {
                n: parity.len(),
                modulus: parity.modulus(),
                t,
                construction: Construction::Custom,
            },
            parity,
            closed_form_cardinality: None,
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.spec.modulus
    }
}

/// Outcome of a condition check: valid, or the first violated condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Validity {
    Valid,
    Violated { condition: u8, detail: String },
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }

    pub fn violated_condition(&self) -> Option<u8> {
        match self {
            Validity::Valid => None,
            Validity::Violated { condition, .. } => Some(*condition),
        }
    }
}

/// `x mod 2^bits`, with `bits = 0` mapping everything to zero.
#[inline]
fn reduce_bits(x: u64, bits: u32) -> u64 {
    if bits >= 64 {
        x
    } else {
        x & ((1u64 << bits) - 1)
    }
}

/// `±{0, 2^{m-1}, 2^{m-2}, ..., 2^{m-k-1}} mod 2^m`.
fn excluded_first_row(modulus: Modulus, k: u32) -> HashSet<u64> {
    let m = modulus.bits() as i64;
    let mut set = HashSet::from([0]);
    for e in (m - k as i64 - 1).max(0)..m {
        let p = 1i64 << e;
        set.insert(modulus.reduce(p));
        set.insert(modulus.reduce(-p));
    }
    set
}

/// `±{1..bound} * {1, 3^{-1}, ..., odd_floor(bound)^{-1}} * x mod 2^bits`.
fn scaled_inverse_set(modulus: Modulus, bound: u64, x: u64, bits: u32) -> HashSet<u64> {
    let inverses: Vec<u64> = (1..=odd_floor(bound))
        .step_by(2)
        .map(|u| inverse_odd_raw(u, modulus).expect("odd"))
        .collect();
    let mut set = HashSet::new();
    for a in 1..=bound {
        for &inv in &inverses {
            let v = a.wrapping_mul(inv).wrapping_mul(x);
            set.insert(reduce_bits(v, bits));
            set.insert(reduce_bits(v.wrapping_neg(), bits));
        }
    }
    set
}

fn violated(condition: u8, detail: String) -> Result<Validity> {
    Ok(Validity::Violated { condition, detail })
}

/// Sufficient conditions for a 2×2 (or 1×2) parity-check matrix to define a
/// length-2 cross code of magnitude `t`. Conditions are numbered 1 to 5 in
/// the order they are checked:
///
/// 1. `x1, y1` avoid `±{0, 2^{m-1}, ..., 2^{m-k-1}}`;
/// 2. `y2 ∉ ±{1..t}{1, 3^{-1}, ..., t̄^{-1}} x2 (mod 2^m)`;
/// 3. the same with `x2` and `y2` exchanged;
/// 4. and 5. as 2 and 3 modulo `2^{m-k}` with magnitude `floor(t / 2^k)`.
///
/// A single-row matrix is checked as if its row appeared twice.
pub fn check_pair_conditions(h: &ParityCheckMatrix, t: u64) -> Result<Validity> {
    require_magnitude(t)?;
    if h.len() != 2 || !(1..=2).contains(&h.num_checks()) {
        return Err(Error::usage(format!(
            "expected a 1x2 or 2x2 parity-check matrix, got {}x{}",
            h.num_checks(),
            h.len()
        )));
    }
    let modulus = h.modulus();
    let m = modulus.bits();
    let k = magnitude_exponent(t);
    if m < k {
        return Err(Error::usage(format!("requires m >= k (m = {m}, k = {k})")));
    }
    let rows = h.rows();
    let (x1, y1) = (rows[0][0], rows[0][1]);
    let last = rows.last().expect("at least one row");
    let (x2, y2) = (last[0], last[1]);

    let excluded = excluded_first_row(modulus, k);
    if excluded.contains(&x1) || excluded.contains(&y1) {
        return violated(
            1,
            format!("first-row entries ({x1}, {y1}) hit ±{{0, 2^(m-1), ..., 2^(m-k-1)}}"),
        );
    }
    if scaled_inverse_set(modulus, t, x2, m).contains(&y2) {
        return violated(
            2,
            format!("y2 = {y2} is a small odd-ratio multiple of x2 = {x2}"),
        );
    }
    if scaled_inverse_set(modulus, t, y2, m).contains(&x2) {
        return violated(
            3,
            format!("x2 = {x2} is a small odd-ratio multiple of y2 = {y2}"),
        );
    }
    let reduced = t >> k;
    let low = m - k;
    if scaled_inverse_set(modulus, reduced, x2, low).contains(&reduce_bits(y2, low)) {
        return violated(
            4,
            format!("y2 = {y2} collides with x2 = {x2} modulo 2^(m-k)"),
        );
    }
    if scaled_inverse_set(modulus, reduced, y2, low).contains(&reduce_bits(x2, low)) {
        return violated(
            5,
            format!("x2 = {x2} collides with y2 = {y2} modulo 2^(m-k)"),
        );
    }
    Ok(Validity::Valid)
}

/// `{1..t} * col mod 2^bits`, columnwise.
fn column_multiples(
    col: &[u64],
    factors: impl Iterator<Item = i64>,
    bits: u32,
) -> HashSet<Vec<u64>> {
    factors
        .map(|a| {
            col.iter()
                .map(|&c| reduce_bits((a as u64).wrapping_mul(c), bits))
                .collect()
        })
        .collect()
}

/// Sufficient conditions for a 2×3 parity-check matrix to define a length-3
/// cross code of magnitude `t`:
///
/// 1. `x1, y1, z1` avoid `±{0, 2^{m-1}, ..., 2^{m-k-1}}`;
/// 2. for each pair of columns `(u, w)`:
///    `{1..t} u ∩ ±{1..t} w = ∅ (mod 2^m)`;
/// 3. for each pair: `{1..t} u ∩ ±{1..floor(t/2^k)} w = ∅ (mod 2^{m-k})`.
///
/// The intersections are taken on whole columns. Comparing second-row
/// entries alone would reject the length-3 construction's own matrix, whose
/// first row is what separates those multiples.
pub fn check_triple_conditions(h: &ParityCheckMatrix, t: u64) -> Result<Validity> {
    require_magnitude(t)?;
    if h.len() != 3 || h.num_checks() != 2 {
        return Err(Error::usage(format!(
            "expected a 2x3 parity-check matrix, got {}x{}",
            h.num_checks(),
            h.len()
        )));
    }
    let modulus = h.modulus();
    let m = modulus.bits();
    let k = magnitude_exponent(t);
    if m < k {
        return Err(Error::usage(format!("requires m >= k (m = {m}, k = {k})")));
    }
    let excluded = excluded_first_row(modulus, k);
    for (j, &x) in h.rows()[0].iter().enumerate() {
        if excluded.contains(&x) {
            return violated(
                1,
                format!(
                    "first-row entry {x} in column {} hits ±{{0, 2^(m-1), ..., 2^(m-k-1)}}",
                    j + 1
                ),
            );
        }
    }
    let cols: Vec<Vec<u64>> = (0..3).map(|j| h.matrix().column(j)).collect();
    let t_i = t as i64;
    let signed = |bound: i64| (1..=bound).flat_map(|a| [a, -a]);
    let pairs = [(0, 1), (0, 2), (1, 2)];
    for (condition, bits, bound) in [(2u8, m, t_i), (3u8, m - k, (t >> k) as i64)] {
        for &(i, j) in &pairs {
            let left = column_multiples(&cols[i], 1..=t_i, bits);
            let right = column_multiples(&cols[j], signed(bound), bits);
            if let Some(hit) = left.intersection(&right).next() {
                return violated(
                    condition,
                    format!(
                        "multiples of columns {} and {} meet at {:?} modulo 2^{bits}",
                        i + 1,
                        j + 1,
                        hit
                    ),
                );
            }
        }
    }
    Ok(Validity::Valid)
}

/// A generating set for a kernel together with its exact order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    pub generators: GeneratorMatrix,
    pub order: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelStrategy {
    /// Smith-form diagonalisation over the chain ring Z_{2^m}.
    Elimination,
    /// Enumerate all of Z_{2^m}^n; bounded by [`Budgets::enumeration_bits`].
    Enumeration,
}

pub fn kernel(h: &ParityCheckMatrix, strategy: KernelStrategy) -> Result<Kernel> {
    match strategy {
        KernelStrategy::Elimination => Ok(kernel_by_elimination(h)),
        KernelStrategy::Enumeration => kernel_by_enumeration(h, &Budgets::default()),
    }
}

/// Diagonalises `H = U D W^{-1}` with `D = diag(2^{e_i})`. The kernel is then
/// `W y` with `y_i` a multiple of `2^{m - e_i}` on pivot columns and free
/// elsewhere.
pub fn kernel_by_elimination(h: &ParityCheckMatrix) -> Kernel {
    let modulus = h.modulus();
    let m = modulus.bits();
    let mask = modulus.mask();
    let rows = h.num_checks();
    let n = h.len();
    let mut a: Vec<Vec<u64>> = h.rows().to_vec();
    let mut w: Vec<Vec<u64>> = (0..n)
        .map(|i| (0..n).map(|j| u64::from(i == j)).collect())
        .collect();
    let valuation = |x: u64| if x == 0 { m } else { x.trailing_zeros().min(m) };

    let mut exponents = Vec::new();
    for step in 0..rows.min(n) {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(step) {
            for (j, &x) in row.iter().enumerate().skip(step) {
                let v = valuation(x);
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((e, pi, pj)) = best else { break };
        if e >= m {
            break;
        }
        a.swap(step, pi);
        for r in a.iter_mut() {
            r.swap(step, pj);
        }
        for r in w.iter_mut() {
            r.swap(step, pj);
        }
        let unit_inv = inverse_odd_raw(a[step][step] >> e, modulus).expect("odd part");
        for x in a[step].iter_mut() {
            *x = x.wrapping_mul(unit_inv) & mask;
        }
        for i in 0..rows {
            if i == step || a[i][step] == 0 {
                continue;
            }
            let f = a[i][step] >> e;
            let pivot_row = a[step].clone();
            for (x, &p) in a[i].iter_mut().zip(&pivot_row) {
                *x = x.wrapping_sub(f.wrapping_mul(p)) & mask;
            }
        }
        for j in 0..n {
            if j == step || a[step][j] == 0 {
                continue;
            }
            let f = a[step][j] >> e;
            for row in a.iter_mut() {
                row[j] = row[j].wrapping_sub(f.wrapping_mul(row[step])) & mask;
            }
            for row in w.iter_mut() {
                row[j] = row[j].wrapping_sub(f.wrapping_mul(row[step])) & mask;
            }
        }
        exponents.push(e);
    }

    let rank = exponents.len();
    let column = |j: usize, scale: u64| -> Word {
        Word::from_residues(
            modulus,
            (0..n).map(|i| w[i][j].wrapping_mul(scale) & mask).collect(),
        )
        .expect("n >= 1")
    };
    let mut generators = Vec::new();
    let mut log_order = 0u32;
    for (j, &e) in exponents.iter().enumerate() {
        log_order += e;
        if e > 0 {
            generators.push(column(j, 1u64 << (m - e)));
        }
    }
    for j in rank..n {
        log_order += m;
        generators.push(column(j, 1));
    }
    Kernel {
        generators: GeneratorMatrix::new(modulus, n, generators).expect("shape"),
        order: 1u64 << log_order,
    }
}

/// Enumerates the kernel and extracts a generating set greedily in canonical
/// order.
pub fn kernel_by_enumeration(h: &ParityCheckMatrix, budgets: &Budgets) -> Result<Kernel> {
    let code = enumerate_code(h, budgets)?;
    let modulus = h.modulus();
    let n = h.len();
    let mut span: HashSet<u64> = HashSet::from([0]);
    let mut generators = Vec::new();
    for word in code.words() {
        if span.len() == code.len() {
            break;
        }
        if !span.contains(&word.pack()) {
            span = extend_span(&span, word);
            generators.push(word.clone());
        }
    }
    Ok(Kernel {
        generators: GeneratorMatrix::new(modulus, n, generators)?,
        order: code.len() as u64,
    })
}

/// Linear sphere-packing bound divided by the closed-form cardinality.
pub fn gap_to_bound(code: &LinearCode) -> Result<u64> {
    match code.spec.construction {
        Construction::Pair | Construction::PairSingleRow => {}
        other => {
            return Err(Error::usage(format!(
                "gap to the bound is defined for length-2 constructions, not {other}"
            )))
        }
    }
    let cardinality = code
        .closed_form_cardinality
        .ok_or_else(|| Error::usage("code has no closed-form cardinality"))?;
    let bound = linear_sphere_packing_bound(2, code.spec.m(), code.spec.t, Metric::Cross)?;
    let bound = u64::try_from(bound).map_err(|_| Error::param("bound exceeds 64 bits"))?;
    if cardinality > bound || bound % cardinality != 0 {
        return Err(Error::Inconsistent(format!(
            "cardinality {cardinality} does not divide the linear bound {bound}"
        )));
    }
    Ok(bound / cardinality)
}

/// JSON form of a code: parameters, `H`, `G`, cardinality and, when the
/// oracle ran, whether it certified the code.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeDocument {
    pub n: usize,
    pub m: u32,
    pub t: u64,
    pub construction: Construction,
    #[serde(rename = "H")]
    pub h: Vec<Vec<u64>>,
    #[serde(rename = "G")]
    pub g: Vec<Vec<u64>>,
    pub cardinality: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certified: Option<bool>,
}

impl CodeDocument {
    pub fn new(code: &LinearCode, kernel: &Kernel, certified: Option<bool>) -> Self {
        CodeDocument {
            n: code.spec.n,
            m: code.spec.m(),
            t: code.spec.t,
            construction: code.spec.construction,
            h: code.parity.rows().to_vec(),
            g: kernel
                .generators
                .rows()
                .iter()
                .map(|r| r.residues().to_vec())
                .collect(),
            cardinality: kernel.order,
            certified,
        }
    }

    /// Rebuilds the code. Named constructions are rebuilt from `(m, t)` and
    /// must match the stored `H`.
    pub fn to_code(&self) -> Result<LinearCode> {
        let modulus = Modulus::new(self.m)?;
        let parity = ParityCheckMatrix::new(Matrix::from_residues(modulus, self.h.clone())?);
        if parity.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                actual: parity.len(),
            });
        }
        let code = match self.construction {
            Construction::Custom => LinearCode::custom(parity, self.t),
            c => {
                let built = construct(c, self.m, self.t)?;
                if built.parity != parity {
                    return Err(Error::usage(format!(
                        "stored H {parity} does not match the {c} construction for m = {}, t = {}",
                        self.m, self.t
                    )));
                }
                built
            }
        };
        Ok(code)
    }

    pub fn generator(&self) -> Result<GeneratorMatrix> {
        let modulus = Modulus::new(self.m)?;
        let rows = self
            .g
            .iter()
            .map(|r| Word::from_residues(modulus, r.clone()))
            .collect::<Result<Vec<_>>>()?;
        GeneratorMatrix::new(modulus, self.n, rows)
    }
}
