//! Syndrome decoders for single-coordinate errors of bounded magnitude.
//!
//! A cross error `alpha * e_i` produces the syndrome `alpha * h_i`, where
//! `h_i` is the i-th column of `H`. [`GenericDecoder`] inverts that map by
//! table lookup and serves as the reference. The three specialised decoders
//! read `i` and `alpha` straight off the syndrome's shape.
//!
//! The specialised decoders add two checks of their own. The recovered
//! `alpha` is taken as a signed residue and rejected when `|alpha| > t`.
//! The single-check decoder returns the received word unchanged on a zero
//! syndrome.

use std::collections::HashMap;

use serde::Serialize;

use crate::construct::{
    construct_pair, construct_single_row, construct_triple, magnitude_exponent, Construction,
    LinearCode, ParityCheckMatrix,
};
use crate::error::{Error, Result};
use crate::metric::check_radius;
use crate::ring::Word;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "lowercase")]
pub enum DecodeOutcome {
    Corrected { codeword: Word, error: Word },
    Failure,
}

impl DecodeOutcome {
    pub fn is_corrected(&self) -> bool {
        matches!(self, DecodeOutcome::Corrected { .. })
    }

    pub fn codeword(&self) -> Option<&Word> {
        match self {
            DecodeOutcome::Corrected { codeword, .. } => Some(codeword),
            DecodeOutcome::Failure => None,
        }
    }

    pub fn error(&self) -> Option<&Word> {
        match self {
            DecodeOutcome::Corrected { error, .. } => Some(error),
            DecodeOutcome::Failure => None,
        }
    }
}

pub trait Decoder {
    /// Decodes one received word. `Failure` is an ordinary outcome; `Err` is
    /// reserved for malformed input or an inconsistent code.
    fn decode(&self, received: &Word) -> Result<DecodeOutcome>;

    fn parity(&self) -> &ParityCheckMatrix;

    fn magnitude(&self) -> u64;
}

fn check_shape(parity: &ParityCheckMatrix, r: &Word) -> Result<()> {
    parity.modulus().check_same(r.modulus())?;
    if r.len() != parity.len() {
        return Err(Error::DimensionMismatch {
            expected: parity.len(),
            actual: r.len(),
        });
    }
    Ok(())
}

/// Builds `c = r - e` and checks that `c` really is a codeword.
fn corrected(parity: &ParityCheckMatrix, r: &Word, error: Word) -> Result<DecodeOutcome> {
    let codeword = r.sub(&error)?;
    if !parity.contains(&codeword)? {
        return Err(Error::Inconsistent(format!(
            "decoder produced non-codeword {codeword} from {r}"
        )));
    }
    Ok(DecodeOutcome::Corrected { codeword, error })
}

/// Decoder for the two-row constructions whose columns are `(a, c_i a)` with
/// `a = 2^{m-k-2}` and distinct ratios `c_i`: `(0, 2)` for length 2 and
/// `(0, 2, 2t+1)` for length 3.
///
/// The branches are tried in column order: `s2 = 0`, then `s2 = 2 s1`,
/// then `s2 = (2t+1) s1`. The error value is `s1 / a`, centred into
/// `(-2^{k+1}, 2^{k+1}]`.
#[derive(Debug, Clone)]
pub struct RatioDecoder {
    code: LinearCode,
    ratios: Vec<u64>,
    step_bits: u32,
}

impl RatioDecoder {
    /// Decoder for the length-2 two-row construction.
    pub fn pair(m: u32, t: u64) -> Result<Self> {
        Self::from_code(construct_pair(m, t)?)
    }

    /// Decoder for the length-3 construction.
    pub fn triple(m: u32, t: u64) -> Result<Self> {
        Self::from_code(construct_triple(m, t)?)
    }

    pub fn from_code(code: LinearCode) -> Result<Self> {
        let t = code.spec.t;
        let ratios = match code.spec.construction {
            Construction::Pair => vec![0, 2],
            Construction::Triple => vec![0, 2, 2 * t + 1],
            other => {
                return Err(Error::usage(format!(
                    "ratio decoding needs a cor5 or cor12 code, not {other}"
                )))
            }
        };
        let step_bits = code.spec.m() - magnitude_exponent(t) - 2;
        Ok(RatioDecoder {
            code,
            ratios,
            step_bits,
        })
    }

    pub fn code(&self) -> &LinearCode {
        &self.code
    }
}

impl Decoder for RatioDecoder {
    fn decode(&self, r: &Word) -> Result<DecodeOutcome> {
        let parity = &self.code.parity;
        check_shape(parity, r)?;
        let q = r.modulus();
        let t = self.code.spec.t;
        let s = parity.syndrome(r)?;
        let (s1, s2) = (s.residues()[0], s.residues()[1]);

        let Some(coord) = self
            .ratios
            .iter()
            .position(|&c| q.reduce_u64(c.wrapping_mul(s1)) == s2)
        else {
            return Ok(DecodeOutcome::Failure);
        };
        if s1 & ((1u64 << self.step_bits) - 1) != 0 {
            return Ok(DecodeOutcome::Failure);
        }
        // s1 = alpha * 2^{m-k-2}, so alpha is known modulo 2^{k+2}.
        let window_bits = q.bits() - self.step_bits;
        let raw = s1 >> self.step_bits;
        let alpha = if raw > 1u64 << (window_bits - 1) {
            raw as i64 - (1i64 << window_bits)
        } else {
            raw as i64
        };
        if alpha.unsigned_abs() > t {
            return Ok(DecodeOutcome::Failure);
        }
        corrected(parity, r, Word::unit(q, r.len(), coord, alpha))
    }

    fn parity(&self) -> &ParityCheckMatrix {
        &self.code.parity
    }

    fn magnitude(&self) -> u64 {
        self.code.spec.t
    }
}

/// Decoder for the single-check construction with `t = 2`, `m >= 4`.
///
/// With `u = 2^{m-4}` and `H = (-3u, u)`, the eight correctable syndromes are
/// `±3u, ±6u` (first coordinate) and `±u, ±2u` (second coordinate).
#[derive(Debug, Clone)]
pub struct SingleRowDecoder {
    code: LinearCode,
}

impl SingleRowDecoder {
    pub fn new(m: u32) -> Result<Self> {
        if m < 4 {
            return Err(Error::param(format!("requires m >= 4 (m = {m})")));
        }
        Ok(SingleRowDecoder {
            code: construct_single_row(m, 2)?,
        })
    }

    pub fn from_code(code: LinearCode) -> Result<Self> {
        if code.spec.construction != Construction::PairSingleRow || code.spec.t != 2 {
            return Err(Error::usage(
                "single-check decoding needs a thm9 code with t = 2",
            ));
        }
        Self::new(code.spec.m())
    }
}

impl Decoder for SingleRowDecoder {
    fn decode(&self, r: &Word) -> Result<DecodeOutcome> {
        let parity = &self.code.parity;
        check_shape(parity, r)?;
        let q = r.modulus();
        let s = parity.syndrome(r)?.residues()[0];
        if s == 0 {
            return Ok(DecodeOutcome::Corrected {
                codeword: r.clone(),
                error: Word::zero(q, 2),
            });
        }
        let unit = 1i64 << (q.bits() - 4);
        let signs = [1i64, -1];
        for sign in signs {
            for j in 0..2 {
                if s == q.reduce(sign * 3 * (1 << j) * unit) {
                    // first column is -3u, so the error value has the opposite sign
                    return corrected(parity, r, Word::unit(q, 2, 0, -sign * (1 << j)));
                }
            }
        }
        for sign in signs {
            for j in 0..2 {
                if s == q.reduce(sign * (1 << j) * unit) {
                    return corrected(parity, r, Word::unit(q, 2, 1, sign * (1 << j)));
                }
            }
        }
        Ok(DecodeOutcome::Failure)
    }

    fn parity(&self) -> &ParityCheckMatrix {
        &self.code.parity
    }

    fn magnitude(&self) -> u64 {
        2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Explanation {
    Unique { coord: usize, alpha: i64 },
    Ambiguous,
}

/// Table-lookup decoder for any parity-check matrix: maps each syndrome
/// `alpha * h_i` back to `(i, alpha)`.
#[derive(Debug, Clone)]
pub struct GenericDecoder {
    parity: ParityCheckMatrix,
    t: u64,
    table: HashMap<Vec<u64>, Explanation>,
}

impl GenericDecoder {
    pub fn new(parity: ParityCheckMatrix, t: u64) -> Result<Self> {
        let q = parity.modulus();
        check_radius(q, t)?;
        let n = parity.len();
        let mut table = HashMap::new();
        for coord in 0..n {
            for alpha in (-(t as i64)..=t as i64).filter(|&a| a != 0) {
                let s = parity.syndrome(&Word::unit(q, n, coord, alpha))?;
                let entry = Explanation::Unique { coord, alpha };
                table
                    .entry(s.residues().to_vec())
                    .and_modify(|e| {
                        if *e != entry {
                            *e = Explanation::Ambiguous;
                        }
                    })
                    .or_insert(entry);
            }
        }
        Ok(GenericDecoder { parity, t, table })
    }

    pub fn for_code(code: &LinearCode) -> Result<Self> {
        Self::new(code.parity.clone(), code.spec.t)
    }
}

impl Decoder for GenericDecoder {
    fn decode(&self, r: &Word) -> Result<DecodeOutcome> {
        check_shape(&self.parity, r)?;
        let s = self.parity.syndrome(r)?;
        if s.is_zero() {
            return Ok(DecodeOutcome::Corrected {
                codeword: r.clone(),
                error: Word::zero(r.modulus(), r.len()),
            });
        }
        match self.table.get(s.residues()) {
            None => Ok(DecodeOutcome::Failure),
            Some(Explanation::Ambiguous) => Err(Error::Inconsistent(format!(
                "syndrome {s} has several cross-error explanations; the code does not correct magnitude {}",
                self.t
            ))),
            Some(&Explanation::Unique { coord, alpha }) => corrected(
                &self.parity,
                r,
                Word::unit(r.modulus(), r.len(), coord, alpha),
            ),
        }
    }

    fn parity(&self) -> &ParityCheckMatrix {
        &self.parity
    }

    fn magnitude(&self) -> u64 {
        self.t
    }
}

/// The specialised decoder for a named construction, or the generic one
/// where no specialised algorithm exists.
pub fn decoder_for(code: &LinearCode) -> Result<Box<dyn Decoder>> {
    Ok(match code.spec.construction {
        Construction::Pair | Construction::Triple => {
            Box::new(RatioDecoder::from_code(code.clone())?)
        }
        Construction::PairSingleRow if code.spec.t == 2 => {
            Box::new(SingleRowDecoder::from_code(code.clone())?)
        }
        _ => Box::new(GenericDecoder::for_code(code)?),
    })
}
