//! Brute-force ground truth: code certification, kernel enumeration, exact
//! maximum-code search and exhaustive decoder audits.
//!
//! Everything here works on packed word indices (see [`Word::pack`]) and is
//! meant for desk-scale parameters only. The size limits live in [`Budgets`].

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::construct::ParityCheckMatrix;
use crate::decode::{DecodeOutcome, Decoder};
use crate::error::{Error, Result};
use crate::metric::{check_radius, cross_errors, ExtendedDistance, Metric};
use crate::ring::{Modulus, Word};

/// Size limits for the exhaustive routines, as exponents of the space size
/// `2^{nm}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budgets {
    /// Largest `nm` for which all of Z_{2^m}^n is enumerated.
    pub enumeration_bits: u32,
    /// Largest `nm` accepted by the exact maximum-code search.
    pub exact_search_bits: u32,
    /// Branch-and-bound nodes before the search gives up rather than answer.
    pub search_nodes: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            enumeration_bits: 24,
            exact_search_bits: 12,
            search_nodes: 50_000_000,
        }
    }
}

/// A finite set of distinct words of one shape, kept sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeSet {
    modulus: Modulus,
    n: usize,
    words: Vec<Word>,
}

// Packing needs every word to fit in 64 bits.
const MAX_PACKED_BITS: u32 = 64;

impl CodeSet {
    pub fn new(modulus: Modulus, n: usize, words: Vec<Word>) -> Result<Self> {
        if n == 0 {
            return Err(Error::usage("code length must be at least 1"));
        }
        if n as u32 * modulus.bits() > MAX_PACKED_BITS {
            return Err(Error::usage(format!(
                "Z_2^{}^{n} is too large for a code set",
                modulus.bits()
            )));
        }
        for w in &words {
            modulus.check_same(w.modulus())?;
            if w.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: w.len(),
                });
            }
        }
        let mut words = words;
        words.sort();
        if let Some(pair) = words.windows(2).find(|p| p[0] == p[1]) {
            return Err(Error::usage(format!("duplicate codeword {}", pair[0])));
        }
        Ok(CodeSet { modulus, n, words })
    }

    pub fn from_rows(modulus: Modulus, rows: &[&[i64]]) -> Result<Self> {
        let n = rows.first().map_or(1, |r| r.len());
        let words = rows
            .iter()
            .map(|r| Word::new(modulus, r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(modulus, n, words)
    }

    fn from_packed(modulus: Modulus, n: usize, packed: &[u64]) -> Self {
        let mut words: Vec<Word> = packed
            .iter()
            .map(|&p| Word::unpack(modulus, n, p))
            .collect();
        words.sort();
        CodeSet { modulus, n, words }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    /// Code length n.
    pub fn length(&self) -> usize {
        self.n
    }

    /// Number of codewords.
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[Word] {
        &self.words
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.binary_search(w).is_ok()
    }
}

/// JSON form of a code set: `{n, m, t?, words}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeSetDocument {
    pub n: usize,
    pub m: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<u64>,
    pub words: Vec<Vec<u64>>,
}

impl CodeSetDocument {
    pub fn new(code: &CodeSet, t: Option<u64>) -> Self {
        CodeSetDocument {
            n: code.n,
            m: code.modulus.bits(),
            t,
            words: code.words.iter().map(|w| w.residues().to_vec()).collect(),
        }
    }

    pub fn to_code_set(&self) -> Result<CodeSet> {
        let modulus = Modulus::new(self.m)?;
        let words = self
            .words
            .iter()
            .map(|w| Word::from_residues(modulus, w.clone()))
            .collect::<Result<Vec<_>>>()?;
        CodeSet::new(modulus, self.n, words)
    }
}

fn check_enumeration(n: usize, modulus: Modulus, budgets: &Budgets) -> Result<u32> {
    let bits = n as u32 * modulus.bits();
    if bits > budgets.enumeration_bits {
        return Err(Error::BudgetExceeded(format!(
            "enumerating Z_2^{}^{n} needs nm = {bits} > {}",
            modulus.bits(),
            budgets.enumeration_bits
        )));
    }
    Ok(bits)
}

/// All words with zero syndrome, in canonical order.
pub fn enumerate_code(h: &ParityCheckMatrix, budgets: &Budgets) -> Result<CodeSet> {
    let modulus = h.modulus();
    let n = h.len();
    check_enumeration(n, modulus, budgets)?;
    let m = modulus.bits();
    let q = modulus.order();
    let mask = modulus.mask();
    let rows = h.num_checks();
    let cols: Vec<Vec<u64>> = (0..n).map(|j| h.matrix().column(j)).collect();

    // Odometer over coordinates 1..n with running partial syndromes; the
    // innermost loop walks coordinate 0 by repeated addition of its column.
    let mut found = Vec::new();
    let mut digits = vec![0u64; n];
    let mut partial = vec![0u64; rows];
    loop {
        let mut s = partial.clone();
        for x0 in 0..q {
            if s.iter().all(|&v| v == 0) {
                let mut packed = x0;
                for (i, &d) in digits.iter().enumerate().skip(1) {
                    packed |= d << (m as usize * i);
                }
                found.push(packed);
            }
            for (v, &c) in s.iter_mut().zip(&cols[0]) {
                *v = v.wrapping_add(c) & mask;
            }
        }
        let mut i = 1;
        loop {
            if i >= n {
                return Ok(CodeSet::from_packed(modulus, n, &found));
            }
            digits[i] += 1;
            for (v, &c) in partial.iter_mut().zip(&cols[i]) {
                *v = v.wrapping_add(c) & mask;
            }
            if digits[i] < q {
                break;
            }
            // wrapped: the column has been added q times, which is zero
            digits[i] = 0;
            i += 1;
        }
    }
}

/// True when the radius-`t` crosses around `v` and `v + diff` share a word,
/// i.e. `diff = alpha e_i - beta e_j` with `|alpha|, |beta| <= t`.
fn crosses_meet(modulus: Modulus, diff: &[u64], t: u64) -> bool {
    let mut nonzero = diff.iter().filter(|&&d| d != 0);
    match (nonzero.next(), nonzero.next(), nonzero.next()) {
        (None, _, _) => true,
        (Some(&a), None, _) => modulus.abs_residue(a) <= 2 * t,
        (Some(&a), Some(&b), None) => modulus.abs_residue(a) <= t && modulus.abs_residue(b) <= t,
        _ => false,
    }
}

/// Minimum pairwise cross distance. Only pairs differing in one coordinate
/// have finite distance, so words are bucketed by their other coordinates.
pub fn min_cross_distance(code: &CodeSet) -> Result<ExtendedDistance> {
    if code.len() < 2 {
        return Err(Error::usage(
            "minimum distance needs at least two codewords",
        ));
    }
    let q = code.modulus;
    let m = q.bits() as usize;
    let packed: Vec<u64> = code.words.iter().map(Word::pack).collect();
    let mut best = ExtendedDistance::Infinity;
    for i in 0..code.n {
        let coord_mask = q.mask() << (m * i);
        let mut buckets: HashMap<u64, Vec<u64>> = HashMap::new();
        for &p in &packed {
            buckets
                .entry(p & !coord_mask)
                .or_default()
                .push((p & coord_mask) >> (m * i));
        }
        for mut values in buckets.into_values().filter(|v| v.len() > 1) {
            values.sort_unstable();
            let wrap = q.order() - (values[values.len() - 1] - values[0]);
            let gap = values
                .windows(2)
                .map(|w| w[1] - w[0])
                .chain(std::iter::once(wrap))
                .map(|g| q.abs_residue(g))
                .min()
                .expect("at least two values");
            best = best.min(ExtendedDistance::Finite(gap));
        }
    }
    Ok(best)
}

/// Reference O(|C|^2) version of [`min_cross_distance`].
pub fn min_cross_distance_pairwise(code: &CodeSet) -> Result<ExtendedDistance> {
    if code.len() < 2 {
        return Err(Error::usage(
            "minimum distance needs at least two codewords",
        ));
    }
    let mut best = ExtendedDistance::Infinity;
    for (i, v) in code.words.iter().enumerate() {
        for w in &code.words[i + 1..] {
            best = best.min(crate::metric::cross_distance(v, w)?);
        }
    }
    Ok(best)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Counterexample {
    /// A word inside the radius-`t` crosses of two codewords.
    SharedWord {
        word: Word,
        first: Word,
        second: Word,
    },
    /// Two codewords closer than `2t + 1` in the Lee metric.
    TooClose {
        first: Word,
        second: Word,
        distance: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub certified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl Certificate {
    fn pass() -> Self {
        Certificate {
            certified: true,
            counterexample: None,
        }
    }

    fn fail(c: Counterexample) -> Self {
        Certificate {
            certified: false,
            counterexample: Some(c),
        }
    }
}

/// True iff the radius-`t` crosses around all codewords are pairwise
/// disjoint. Every sphere member is hashed once; the first repeat is the
/// counterexample.
pub fn certify_cross_code(code: &CodeSet, t: u64) -> Result<Certificate> {
    let q = code.modulus;
    let errors: Vec<Word> = cross_errors(q, code.n, t)?;
    let mut owner: HashMap<u64, usize> = HashMap::with_capacity(code.len() * errors.len());
    for (idx, c) in code.words.iter().enumerate() {
        for e in &errors {
            let v = c.add(e)?;
            if let Some(&prev) = owner.get(&v.pack()) {
                return Ok(Certificate::fail(Counterexample::SharedWord {
                    word: v,
                    first: code.words[prev].clone(),
                    second: c.clone(),
                }));
            }
            owner.insert(v.pack(), idx);
        }
    }
    Ok(Certificate::pass())
}

/// Pairwise version of [`certify_cross_code`], used to cross-check it.
pub fn certify_cross_code_pairwise(code: &CodeSet, t: u64) -> Result<Certificate> {
    let q = code.modulus;
    check_radius(q, t)?;
    for (i, v) in code.words.iter().enumerate() {
        for w in &code.words[i + 1..] {
            let diff = w.sub(v)?;
            if crosses_meet(q, diff.residues(), t) {
                return Ok(Certificate::fail(Counterexample::SharedWord {
                    word: shared_word(v, &diff),
                    first: v.clone(),
                    second: w.clone(),
                }));
            }
        }
    }
    Ok(Certificate::pass())
}

/// A word in both crosses, given `w - v = diff` and that the crosses meet.
fn shared_word(v: &Word, diff: &Word) -> Word {
    let q = v.modulus();
    let nz: Vec<usize> = (0..diff.len())
        .filter(|&i| diff.residues()[i] != 0)
        .collect();
    let step = match nz.as_slice() {
        [] => return v.clone(),
        // split the offset s into alpha - beta with both within t
        [i] => Word::unit(q, v.len(), *i, q.signed(diff.residues()[*i]) / 2),
        [i, _] => Word::unit(q, v.len(), *i, q.signed(diff.residues()[*i])),
        _ => unreachable!("crosses around words three coordinates apart never meet"),
    };
    v.add(&step).expect("same shape")
}

/// True iff every pair of codewords is at Lee distance at least `2t + 1`.
pub fn certify_lee_code(code: &CodeSet, t: u64) -> Result<Certificate> {
    check_radius(code.modulus, t)?;
    for (i, v) in code.words.iter().enumerate() {
        for w in &code.words[i + 1..] {
            let d = crate::ring::lee_distance(v, w)?;
            if d <= 2 * t {
                return Ok(Certificate::fail(Counterexample::TooClose {
                    first: v.clone(),
                    second: w.clone(),
                    distance: d,
                }));
            }
        }
    }
    Ok(Certificate::pass())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub size: usize,
    pub witness: CodeSet,
    /// Branch-and-bound nodes visited.
    pub nodes: u64,
}

/// Fixed-width bitset over candidate indices.
#[derive(Clone)]
struct Bits(Vec<u64>);

impl Bits {
    fn empty(len: usize) -> Self {
        Bits(vec![0; len.div_ceil(64)])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_not_assign(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a &= !b;
        }
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }
}

struct CliqueSearch<'a> {
    adjacency: &'a [Bits],
    best: Vec<usize>,
    nodes: u64,
    node_limit: u64,
}

impl CliqueSearch<'_> {
    /// Greedy colouring of `cand`; returns vertices in colour order with
    /// their colour numbers, which bound the clique size among them.
    fn colour_sort(&self, cand: &Bits) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::new();
        let mut colours = Vec::new();
        let mut uncoloured = cand.clone();
        let mut colour = 0;
        while !uncoloured.is_empty() {
            colour += 1;
            let mut available = uncoloured.clone();
            while let Some(v) = available.first() {
                available.remove(v);
                available.and_not_assign(&self.adjacency[v]);
                uncoloured.remove(v);
                order.push(v);
                colours.push(colour);
            }
        }
        (order, colours)
    }

    fn expand(&mut self, clique: &mut Vec<usize>, mut cand: Bits) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Error::BudgetExceeded(format!(
                "exact search exceeded {} branch-and-bound nodes",
                self.node_limit
            )));
        }
        let (order, colours) = self.colour_sort(&cand);
        for idx in (0..order.len()).rev() {
            if clique.len() + colours[idx] <= self.best.len() {
                return Ok(());
            }
            let v = order[idx];
            clique.push(v);
            let next = cand.and(&self.adjacency[v]);
            if next.is_empty() {
                if clique.len() > self.best.len() {
                    self.best = clique.clone();
                }
            } else {
                self.expand(clique, next)?;
            }
            clique.pop();
            cand.remove(v);
        }
        Ok(())
    }
}

/// Exact maximum size of a code in Z_{2^m}^n correcting magnitude `t` in the
/// given metric, with a witness.
///
/// Two words are compatible when their radius-`t` spheres are disjoint: Lee
/// distance at least `2t + 1`, or for crosses, a difference that is not of
/// the form `alpha e_i - beta e_j` with `|alpha|, |beta| <= t`. Both
/// relations are translation invariant, so the search fixes the zero word
/// and runs a colour-bounded branch and bound over its compatible words.
/// Candidates are ordered by degree, ties by index, so the witness is
/// reproducible.
pub fn max_code_search(
    n: usize,
    m: u32,
    t: u64,
    metric: Metric,
    budgets: &Budgets,
) -> Result<SearchResult> {
    let modulus = Modulus::new(m)?;
    check_radius(modulus, t)?;
    let bits = n as u32 * m;
    if n == 0 || bits > budgets.exact_search_bits {
        return Err(Error::BudgetExceeded(format!(
            "exact search is limited to nm <= {} (got n = {n}, m = {m})",
            budgets.exact_search_bits
        )));
    }
    let total = 1u64 << bits;
    let compatible_with_zero = |p: u64| -> bool {
        let w = Word::unpack(modulus, n, p);
        match metric {
            Metric::Lee => w.lee_weight() > 2 * t,
            Metric::Cross => !crosses_meet(modulus, w.residues(), t),
        }
    };
    let allowed: Vec<bool> = (0..total).map(compatible_with_zero).collect();
    let mut cand: Vec<u64> = (1..total).filter(|&p| allowed[p as usize]).collect();

    let diff = |a: u64, b: u64| -> u64 {
        let wa = Word::unpack(modulus, n, a);
        let wb = Word::unpack(modulus, n, b);
        wa.sub(&wb).expect("same shape").pack()
    };
    let degree = |p: u64, set: &[u64]| {
        set.iter()
            .filter(|&&o| o != p && allowed[diff(p, o) as usize])
            .count()
    };
    let degrees: HashMap<u64, usize> = cand.iter().map(|&p| (p, degree(p, &cand))).collect();
    cand.sort_by(|a, b| degrees[b].cmp(&degrees[a]).then(a.cmp(b)));

    let mut adjacency = vec![Bits::empty(cand.len()); cand.len()];
    for i in 0..cand.len() {
        for j in i + 1..cand.len() {
            if allowed[diff(cand[i], cand[j]) as usize] {
                adjacency[i].insert(j);
                adjacency[j].insert(i);
            }
        }
    }
    let mut search = CliqueSearch {
        adjacency: &adjacency,
        best: Vec::new(),
        nodes: 0,
        node_limit: budgets.search_nodes,
    };
    let mut all = Bits::empty(cand.len());
    for i in 0..cand.len() {
        all.insert(i);
    }
    if !cand.is_empty() {
        search.expand(&mut Vec::new(), all)?;
    }
    let packed: Vec<u64> = std::iter::once(0)
        .chain(search.best.iter().map(|&i| cand[i]))
        .collect();
    let witness = CodeSet::from_packed(modulus, n, &packed);
    Ok(SearchResult {
        size: packed.len(),
        witness,
        nodes: search.nodes,
    })
}

/// Tallies from decoding every codeword plus every correctable error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditReport {
    pub codewords: usize,
    pub patterns: usize,
    pub trials: usize,
    pub corrected: usize,
    pub failures: usize,
    pub miscorrections: usize,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.failures == 0 && self.miscorrections == 0 && self.corrected == self.trials
    }
}

/// Runs `decoder` on `c + e` for every codeword `c` and every cross error `e`
/// of magnitude at most `t` (including zero).
pub fn exhaustive_decoder_audit(
    code: &CodeSet,
    decoder: &dyn Decoder,
    t: u64,
) -> Result<AuditReport> {
    let errors = cross_errors(code.modulus, code.n, t)?;
    let mut report = AuditReport {
        codewords: code.len(),
        patterns: errors.len(),
        trials: 0,
        corrected: 0,
        failures: 0,
        miscorrections: 0,
    };
    for c in &code.words {
        for e in &errors {
            let r = c.add(e)?;
            report.trials += 1;
            match decoder.decode(&r)? {
                DecodeOutcome::Corrected { codeword, error } if &codeword == c && &error == e => {
                    report.corrected += 1
                }
                DecodeOutcome::Corrected { .. } => report.miscorrections += 1,
                DecodeOutcome::Failure => report.failures += 1,
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{construct_pair, construct_single_row, construct_triple};
    use crate::decode::{GenericDecoder, RatioDecoder, SingleRowDecoder};

    fn z(m: u32) -> Modulus {
        Modulus::new(m).unwrap()
    }

    fn example_lee() -> CodeSet {
        CodeSet::from_rows(z(3), &[&[0, 0], &[1, 4], &[4, 2], &[5, 6]]).unwrap()
    }

    fn example_cross() -> CodeSet {
        CodeSet::from_rows(z(3), &[&[1, 0], &[4, 1], &[6, 6], &[0, 3], &[3, 4]]).unwrap()
    }

    #[test]
    fn codeset_rejects_duplicates() {
        assert!(CodeSet::from_rows(z(3), &[&[1, 1], &[1, 1]]).is_err());
        assert!(CodeSet::from_rows(z(3), &[&[1, 1], &[1, 1, 1]]).is_err());
    }

    #[test]
    fn min_cross_distance_examples() {
        let d = min_cross_distance(&example_cross()).unwrap();
        assert!(d >= ExtendedDistance::Finite(5));
        let c = CodeSet::from_rows(z(3), &[&[0, 0], &[0, 1]]).unwrap();
        assert_eq!(min_cross_distance(&c).unwrap(), ExtendedDistance::Finite(1));
        let c = CodeSet::from_rows(z(3), &[&[0, 0], &[1, 1]]).unwrap();
        assert_eq!(min_cross_distance(&c).unwrap(), ExtendedDistance::Infinity);
        let c = CodeSet::from_rows(z(3), &[&[0, 0]]).unwrap();
        assert!(min_cross_distance(&c).is_err());
    }

    #[test]
    fn wraparound_gap() {
        let c = CodeSet::from_rows(z(3), &[&[0, 1], &[0, 7]]).unwrap();
        assert_eq!(min_cross_distance(&c).unwrap(), ExtendedDistance::Finite(2));
    }

    #[test]
    fn certification_examples() {
        assert!(certify_cross_code(&example_cross(), 2).unwrap().certified);
        assert!(certify_cross_code(&example_lee(), 2).unwrap().certified);
        assert!(certify_lee_code(&example_lee(), 2).unwrap().certified);

        let c = CodeSet::from_rows(z(3), &[&[0, 0], &[0, 3]]).unwrap();
        let cert = certify_cross_code(&c, 2).unwrap();
        assert!(!cert.certified);
        match cert.counterexample.unwrap() {
            Counterexample::SharedWord {
                word,
                first,
                second,
            } => {
                assert_eq!(word.residues()[0], 0);
                assert_eq!(
                    (first.residues(), second.residues()),
                    (&[0, 0][..], &[0, 3][..])
                );
            }
            other => panic!("unexpected {other:?}"),
        }

        let c = CodeSet::from_rows(z(3), &[&[0, 0], &[2, 2]]).unwrap();
        let cert = certify_lee_code(&c, 2).unwrap();
        assert_eq!(
            cert.counterexample,
            Some(Counterexample::TooClose {
                first: Word::new(z(3), &[0, 0]).unwrap(),
                second: Word::new(z(3), &[2, 2]).unwrap(),
                distance: 4
            })
        );
    }

    #[test]
    fn infinite_cross_distance_does_not_imply_disjoint_crosses() {
        let c = CodeSet::from_rows(z(3), &[&[0, 0], &[1, 1]]).unwrap();
        assert_eq!(min_cross_distance(&c).unwrap(), ExtendedDistance::Infinity);
        let cert = certify_cross_code(&c, 1).unwrap();
        assert!(!cert.certified);
        let pairwise = certify_cross_code_pairwise(&c, 1).unwrap();
        assert!(!pairwise.certified);
        if let Some(Counterexample::SharedWord {
            word,
            first,
            second,
        }) = pairwise.counterexample
        {
            for centre in [first, second] {
                let d = crate::metric::cross_distance(&word, &centre).unwrap();
                assert!(d <= ExtendedDistance::Finite(1));
            }
        }
    }

    #[test]
    fn enumerate_examples() {
        let b = Budgets::default();
        let h = ParityCheckMatrix::from_rows(z(3), vec![vec![1, 1], vec![0, 2]]).unwrap();
        let c = enumerate_code(&h, &b).unwrap();
        let words: Vec<_> = c.words().iter().map(|w| w.residues().to_vec()).collect();
        assert_eq!(words, vec![vec![0, 0], vec![4, 4]]);
        let h = ParityCheckMatrix::from_rows(z(3), vec![vec![0, 0]]).unwrap();
        assert_eq!(enumerate_code(&h, &b).unwrap().len(), 64);
        let h = ParityCheckMatrix::from_rows(z(4), vec![vec![2, 2, 2], vec![0, 4, 14]]).unwrap();
        assert_eq!(enumerate_code(&h, &b).unwrap().len(), 64);
        let h = ParityCheckMatrix::from_rows(z(9), vec![vec![1, 1, 1]]).unwrap();
        assert!(matches!(
            enumerate_code(&h, &b),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn enumerate_matches_naive_filter() {
        let h = ParityCheckMatrix::from_rows(z(3), vec![vec![2, 6, 1], vec![4, 0, 2]]).unwrap();
        let fast = enumerate_code(&h, &Budgets::default()).unwrap();
        let naive: Vec<Word> = (0..512u64)
            .map(|p| Word::unpack(z(3), 3, p))
            .filter(|w| h.contains(w).unwrap())
            .collect();
        assert_eq!(fast, CodeSet::new(z(3), 3, naive).unwrap());
    }

    #[test]
    fn search_examples() {
        let b = Budgets::default();
        let lee = max_code_search(2, 3, 2, Metric::Lee, &b).unwrap();
        assert_eq!(lee.size, 4);
        assert!(certify_lee_code(&lee.witness, 2).unwrap().certified);
        let cross = max_code_search(2, 3, 2, Metric::Cross, &b).unwrap();
        assert_eq!(cross.size, 5);
        assert!(certify_cross_code(&cross.witness, 2).unwrap().certified);
        assert_eq!(max_code_search(1, 3, 1, Metric::Cross, &b).unwrap().size, 2);
        assert!(matches!(
            max_code_search(2, 7, 1, Metric::Cross, &b),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn search_is_deterministic() {
        let b = Budgets::default();
        let a = max_code_search(2, 3, 1, Metric::Lee, &b).unwrap();
        let c = max_code_search(2, 3, 1, Metric::Lee, &b).unwrap();
        assert_eq!(a, c);
    }

    #[test]
    fn search_refuses_when_nodes_run_out() {
        let b = Budgets {
            search_nodes: 1,
            ..Budgets::default()
        };
        assert!(matches!(
            max_code_search(2, 4, 1, Metric::Cross, &b),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn audits_of_constructions() {
        let b = Budgets::default();
        let code = construct_pair(4, 3).unwrap();
        let set = enumerate_code(&code.parity, &b).unwrap();
        let r = exhaustive_decoder_audit(&set, &RatioDecoder::pair(4, 3).unwrap(), 3).unwrap();
        assert_eq!((r.codewords, r.patterns, r.corrected), (8, 13, 104));
        assert!(r.passed());

        let code = construct_single_row(4, 2).unwrap();
        let set = enumerate_code(&code.parity, &b).unwrap();
        let r = exhaustive_decoder_audit(&set, &SingleRowDecoder::new(4).unwrap(), 2).unwrap();
        assert_eq!((r.codewords, r.patterns), (16, 9));
        assert!(r.passed());

        let code = construct_triple(4, 3).unwrap();
        let set = enumerate_code(&code.parity, &b).unwrap();
        let r =
            exhaustive_decoder_audit(&set, &GenericDecoder::for_code(&code).unwrap(), 3).unwrap();
        assert_eq!((r.codewords, r.patterns), (64, 19));
        assert!(r.passed());
    }

    #[test]
    fn codeset_document_roundtrip() {
        let doc = CodeSetDocument::new(&example_cross(), Some(2));
        let json = serde_json::to_string(&doc).unwrap();
        let back: CodeSetDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_code_set().unwrap(), example_cross());
    }
}
