//! Arithmetic in the residue ring Z_{2^m} and on words over it.
//!
//! Every value is kept as its canonical representative in `[0, 2^m)`. Values
//! of different moduli never mix silently: the operations below check the
//! modulus at the boundary and return [`Error::ModulusMismatch`].

use std::fmt;

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};

/// Largest supported exponent. Products of two residues must fit in a `u64`.
pub const MAX_BITS: u32 = 30;

/// The modulus 2^m, identified by its exponent m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus {
    bits: u32,
}

impl Modulus {
    pub fn new(bits: u32) -> Result<Self> {
        if bits == 0 || bits > MAX_BITS {
            return Err(Error::ModulusOutOfRange(bits));
        }
        Ok(Modulus { bits })
    }

    /// The exponent m.
    #[inline]
    pub fn bits(self) -> u32 {
        self.bits
    }

    /// The ring order 2^m.
    #[inline]
    pub fn order(self) -> u64 {
        1u64 << self.bits
    }

    #[inline]
    pub fn mask(self) -> u64 {
        self.order() - 1
    }

    /// Half the ring order, the largest possible absolute value.
    #[inline]
    pub fn half(self) -> u64 {
        1u64 << (self.bits - 1)
    }

    /// Reduces any signed integer to its canonical residue.
    #[inline]
    pub fn reduce(self, value: i64) -> u64 {
        (value as u64) & self.mask()
    }

    #[inline]
    pub fn reduce_u64(self, value: u64) -> u64 {
        value & self.mask()
    }

    pub fn element(self, value: i64) -> RingElement {
        RingElement {
            value: self.reduce(value),
            modulus: self,
        }
    }

    pub fn zero(self) -> RingElement {
        self.element(0)
    }

    pub fn one(self) -> RingElement {
        self.element(1)
    }

    /// `min(x, 2^m - x)` on a raw residue.
    #[inline]
    pub fn abs_residue(self, value: u64) -> u64 {
        let x = value & self.mask();
        x.min(self.order() - x)
    }

    /// The representative of `value` in `(-2^{m-1}, 2^{m-1}]`.
    #[inline]
    pub fn signed(self, value: u64) -> i64 {
        let x = value & self.mask();
        if x > self.half() {
            x as i64 - self.order() as i64
        } else {
            x as i64
        }
    }

    pub fn check_same(self, other: Modulus) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::ModulusMismatch {
                left: self.bits,
                right: other.bits,
            })
        }
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z_{}", self.order())
    }
}

/// An element of Z_{2^m}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RingElement {
    value: u64,
    modulus: Modulus,
}

// Fallible because operands may come from different rings.
#[allow(clippy::should_implement_trait)]
impl RingElement {
    #[inline]
    pub fn value(self) -> u64 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn is_odd(self) -> bool {
        self.value & 1 == 1
    }

    /// `|x| = min(x, 2^m - x)`.
    pub fn abs_val(self) -> u64 {
        self.modulus.abs_residue(self.value)
    }

    pub fn signed(self) -> i64 {
        self.modulus.signed(self.value)
    }

    pub fn add(self, rhs: RingElement) -> Result<RingElement> {
        self.modulus.check_same(rhs.modulus)?;
        Ok(self.raw(self.value.wrapping_add(rhs.value)))
    }

    pub fn sub(self, rhs: RingElement) -> Result<RingElement> {
        self.modulus.check_same(rhs.modulus)?;
        Ok(self.raw(self.value.wrapping_sub(rhs.value)))
    }

    pub fn mul(self, rhs: RingElement) -> Result<RingElement> {
        self.modulus.check_same(rhs.modulus)?;
        Ok(self.raw(self.value.wrapping_mul(rhs.value)))
    }

    pub fn neg(self) -> RingElement {
        self.raw(self.value.wrapping_neg())
    }

    /// Multiplicative inverse of an odd element, by Newton-Hensel lifting.
    pub fn inverse_odd(self) -> Result<RingElement> {
        Ok(self.raw(inverse_odd_raw(self.value, self.modulus)?))
    }

    /// 2-adic valuation; zero is given valuation m.
    pub fn valuation(self) -> u32 {
        if self.value == 0 {
            self.modulus.bits
        } else {
            self.value.trailing_zeros()
        }
    }

    #[inline]
    fn raw(self, value: u64) -> RingElement {
        RingElement {
            value: value & self.modulus.mask(),
            modulus: self.modulus,
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// Inverse of an odd residue modulo 2^m.
pub fn inverse_odd_raw(value: u64, modulus: Modulus) -> Result<u64> {
    let x = value & modulus.mask();
    if x & 1 == 0 {
        return Err(Error::NotInvertible {
            value: x,
            bits: modulus.bits(),
        });
    }
    // x is its own inverse mod 8; each step doubles the number of correct bits.
    let mut y = x;
    let mut correct = 3;
    while correct < modulus.bits() {
        y = y.wrapping_mul(2u64.wrapping_sub(x.wrapping_mul(y)));
        correct *= 2;
    }
    Ok(y & modulus.mask())
}

/// A vector in Z_{2^m}^n.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    modulus: Modulus,
    coords: Vec<u64>,
}

impl Word {
    /// Builds a word from arbitrary integers, reducing each one.
    pub fn new(modulus: Modulus, coords: &[i64]) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::usage("a word needs at least one coordinate"));
        }
        Ok(Word {
            modulus,
            coords: coords.iter().map(|&c| modulus.reduce(c)).collect(),
        })
    }

    pub fn from_residues(modulus: Modulus, coords: Vec<u64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::usage("a word needs at least one coordinate"));
        }
        let coords = coords.into_iter().map(|c| modulus.reduce_u64(c)).collect();
        Ok(Word { modulus, coords })
    }

    pub fn from_elements(elements: &[RingElement]) -> Result<Self> {
        let first = elements
            .first()
            .ok_or_else(|| Error::usage("a word needs at least one coordinate"))?;
        for e in elements {
            first.modulus().check_same(e.modulus())?;
        }
        Ok(Word {
            modulus: first.modulus(),
            coords: elements.iter().map(|e| e.value()).collect(),
        })
    }

    pub fn zero(modulus: Modulus, n: usize) -> Self {
        assert!(n > 0, "word length must be positive");
        Word {
            modulus,
            coords: vec![0; n],
        }
    }

    /// `alpha * e_i`.
    pub fn unit(modulus: Modulus, n: usize, i: usize, alpha: i64) -> Self {
        let mut w = Word::zero(modulus, n);
        w.coords[i] = modulus.reduce(alpha);
        w
    }

    /// Inverse of [`Word::pack`].
    pub fn unpack(modulus: Modulus, n: usize, packed: u64) -> Self {
        let m = modulus.bits();
        let coords = (0..n)
            .map(|i| (packed >> (m as usize * i)) & modulus.mask())
            .collect();
        Word { modulus, coords }
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    #[inline]
    pub fn residues(&self) -> &[u64] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> RingElement {
        RingElement {
            value: self.coords[i],
            modulus: self.modulus,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn hamming_weight(&self) -> usize {
        self.coords.iter().filter(|&&c| c != 0).count()
    }

    pub fn lee_weight(&self) -> u64 {
        self.coords
            .iter()
            .map(|&c| self.modulus.abs_residue(c))
            .sum()
    }

    /// Mixed-radix index `sum c_i * 2^{m i}`; requires `n * m <= 64`.
    pub fn pack(&self) -> u64 {
        let m = self.modulus.bits() as usize;
        debug_assert!(self.coords.len() * m <= 64);
        self.coords
            .iter()
            .enumerate()
            .fold(0u64, |acc, (i, &c)| acc | (c << (m * i)))
    }

    pub fn check_compatible(&self, other: &Word) -> Result<()> {
        self.modulus.check_same(other.modulus)?;
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch {
                expected: self.len(),
                actual: other.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Word) -> Result<Word> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, u64::wrapping_add))
    }

    pub fn sub(&self, other: &Word) -> Result<Word> {
        self.check_compatible(other)?;
        Ok(self.zip_with(other, u64::wrapping_sub))
    }

    pub fn neg(&self) -> Word {
        let mask = self.modulus.mask();
        Word {
            modulus: self.modulus,
            coords: self
                .coords
                .iter()
                .map(|c| c.wrapping_neg() & mask)
                .collect(),
        }
    }

    pub fn scale(&self, a: RingElement) -> Result<Word> {
        self.modulus.check_same(a.modulus())?;
        let mask = self.modulus.mask();
        Ok(Word {
            modulus: self.modulus,
            coords: self
                .coords
                .iter()
                .map(|c| c.wrapping_mul(a.value()) & mask)
                .collect(),
        })
    }

    fn zip_with(&self, other: &Word, op: fn(u64, u64) -> u64) -> Word {
        let mask = self.modulus.mask();
        Word {
            modulus: self.modulus,
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(&a, &b)| op(a, b) & mask)
                .collect(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Serialises as the list of canonical residues.
impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coords.len()))?;
        for c in &self.coords {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

/// `|x| = min(x, 2^m - x)`.
pub fn abs_val(x: RingElement) -> u64 {
    x.abs_val()
}

/// Sum of coordinatewise absolute differences.
pub fn lee_distance(v: &Word, w: &Word) -> Result<u64> {
    Ok(v.sub(w)?.lee_weight())
}

pub fn inverse_odd(x: RingElement) -> Result<RingElement> {
    x.inverse_odd()
}

pub fn word_add(v: &Word, w: &Word) -> Result<Word> {
    v.add(w)
}

pub fn word_scale(a: RingElement, v: &Word) -> Result<Word> {
    v.scale(a)
}

/// An `N x n` matrix over Z_{2^m}, stored row-major as canonical residues.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    modulus: Modulus,
    cols: usize,
    rows: Vec<Vec<u64>>,
}

impl Matrix {
    pub fn new(modulus: Modulus, rows: Vec<Vec<i64>>) -> Result<Self> {
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| modulus.reduce(x)).collect())
            .collect();
        Self::from_residues(modulus, rows)
    }

    pub fn from_residues(modulus: Modulus, rows: Vec<Vec<u64>>) -> Result<Self> {
        let cols = rows
            .first()
            .map(Vec::len)
            .ok_or_else(|| Error::usage("a matrix needs at least one row"))?;
        if cols == 0 {
            return Err(Error::usage("a matrix needs at least one column"));
        }
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    actual: r.len(),
                });
            }
        }
        let rows = rows
            .into_iter()
            .map(|r| r.into_iter().map(|x| modulus.reduce_u64(x)).collect())
            .collect();
        Ok(Matrix {
            modulus,
            cols,
            rows,
        })
    }

    pub fn from_words(words: &[Word]) -> Result<Self> {
        let first = words
            .first()
            .ok_or_else(|| Error::usage("a matrix needs at least one row"))?;
        for w in words {
            first.check_compatible(w)?;
        }
        Self::from_residues(
            first.modulus(),
            words.iter().map(|w| w.residues().to_vec()).collect(),
        )
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> Word {
        Word {
            modulus: self.modulus,
            coords: self.rows[i].clone(),
        }
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        self.rows.iter().map(|r| r[j]).collect()
    }

    #[inline]
    pub fn entry(&self, i: usize, j: usize) -> u64 {
        self.rows[i][j]
    }

    /// `v * M^T`: one inner product per row of the matrix.
    pub fn mul_transpose(&self, v: &Word) -> Result<Word> {
        self.modulus.check_same(v.modulus())?;
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                actual: v.len(),
            });
        }
        Ok(Word {
            modulus: self.modulus,
            coords: self.product_raw(v.residues()),
        })
    }

    /// Unchecked `v * M^T` on raw residues.
    #[inline]
    pub fn product_raw(&self, v: &[u64]) -> Vec<u64> {
        let mask = self.modulus.mask();
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .fold(0u64, |acc, (&h, &x)| acc.wrapping_add(h.wrapping_mul(x)))
                    & mask
            })
            .collect()
    }

    /// True iff `v * M^T = 0`, without allocating.
    #[inline]
    pub fn annihilates_raw(&self, v: &[u64]) -> bool {
        let mask = self.modulus.mask();
        self.rows.iter().all(|r| {
            r.iter()
                .zip(v)
                .fold(0u64, |acc, (&h, &x)| acc.wrapping_add(h.wrapping_mul(x)))
                & mask
                == 0
        })
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in r.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// `v * H^T`.
pub fn mat_vec(h: &Matrix, v: &Word) -> Result<Word> {
    h.mul_transpose(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32) -> Modulus {
        Modulus::new(m).unwrap()
    }

    #[test]
    fn modulus_range() {
        assert!(Modulus::new(0).is_err());
        assert!(Modulus::new(MAX_BITS + 1).is_err());
        assert_eq!(z(4).order(), 16);
    }

    #[test]
    fn abs_val_examples() {
        assert_eq!(z(3).element(6).abs_val(), 2);
        assert_eq!(z(4).element(0).abs_val(), 0);
        assert_eq!(z(4).element(8).abs_val(), 8);
        assert_eq!(z(4).element(-2).abs_val(), 2);
    }

    #[test]
    fn abs_val_exhaustive_symmetry() {
        for m in 1..=10 {
            let q = z(m);
            for x in 0..q.order() as i64 {
                let e = q.element(x);
                assert_eq!(e.abs_val(), e.neg().abs_val());
                assert_eq!(e.abs_val() == 0, e.is_zero());
                assert!(e.abs_val() <= q.half());
            }
        }
    }

    #[test]
    fn lee_distance_examples() {
        let q = z(3);
        let zero = Word::new(q, &[0, 0]).unwrap();
        assert_eq!(
            lee_distance(&zero, &Word::new(q, &[1, 4]).unwrap()).unwrap(),
            5
        );
        assert_eq!(
            lee_distance(&zero, &Word::new(q, &[7, 1]).unwrap()).unwrap(),
            2
        );
        let v = Word::new(q, &[3, 5]).unwrap();
        assert_eq!(lee_distance(&v, &v).unwrap(), 0);
    }

    #[test]
    fn lee_distance_rejects_mismatch() {
        let a = Word::new(z(3), &[0, 0]).unwrap();
        let b = Word::new(z(3), &[0, 0, 0]).unwrap();
        let c = Word::new(z(4), &[0, 0]).unwrap();
        assert!(matches!(
            lee_distance(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            lee_distance(&a, &c),
            Err(Error::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(z(4).element(3).inverse_odd().unwrap().value(), 11);
        for m in 1..=MAX_BITS {
            assert_eq!(z(m).one().inverse_odd().unwrap().value(), 1);
        }
        assert_eq!(
            z(3).element(2).inverse_odd(),
            Err(Error::NotInvertible { value: 2, bits: 3 })
        );
    }

    #[test]
    fn inverse_exhaustive_small() {
        for m in 1..=10 {
            let q = z(m);
            for x in (1..q.order() as i64).step_by(2) {
                let e = q.element(x);
                let inv = e.inverse_odd().unwrap();
                assert_eq!(e.mul(inv).unwrap().value(), 1, "x={x} m={m}");
            }
        }
    }

    #[test]
    fn syndrome_of_worked_example() {
        let q = z(4);
        let h = Matrix::new(q, vec![vec![2, 2], vec![0, 4]]).unwrap();
        let r = Word::new(q, &[12, 6]).unwrap();
        assert_eq!(mat_vec(&h, &r).unwrap().residues(), &[4, 8]);
        let c = Word::new(q, &[4, 4]).unwrap();
        assert!(mat_vec(&h, &c).unwrap().is_zero());
        assert!(mat_vec(&h, &Word::new(q, &[1, 2, 3]).unwrap()).is_err());
    }

    #[test]
    fn scale_by_zero() {
        let q = z(5);
        let v = Word::new(q, &[3, 17, 31]).unwrap();
        assert!(word_scale(q.zero(), &v).unwrap().is_zero());
        let w = word_add(&v, &v.neg()).unwrap();
        assert!(w.is_zero());
    }

    #[test]
    fn pack_roundtrip() {
        let q = z(5);
        let v = Word::new(q, &[3, 17, 31]).unwrap();
        assert_eq!(Word::unpack(q, 3, v.pack()), v);
    }

    #[test]
    fn signed_representative() {
        let q = z(4);
        assert_eq!(q.signed(15), -1);
        assert_eq!(q.signed(8), 8);
        assert_eq!(q.signed(9), -7);
    }
}
