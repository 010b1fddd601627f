//! Cross distance, cross and Lee spheres, and sphere-packing bounds.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{Modulus, Word};

/// Codomain of the cross distance: a nonnegative integer or infinity.
///
/// The derived ordering puts every `Finite` value below `Infinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtendedDistance {
    Finite(u64),
    Infinity,
}

impl ExtendedDistance {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtendedDistance::Finite(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            ExtendedDistance::Finite(d) => Some(d),
            ExtendedDistance::Infinity => None,
        }
    }
}

impl fmt::Display for ExtendedDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedDistance::Finite(d) => write!(f, "{d}"),
            ExtendedDistance::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtendedDistance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            ExtendedDistance::Finite(d) => s.serialize_u64(*d),
            ExtendedDistance::Infinity => s.serialize_str("inf"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Cross,
    Lee,
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cross" => Ok(Metric::Cross),
            "lee" => Ok(Metric::Lee),
            other => Err(Error::usage(format!(
                "unknown metric {other:?} (expected cross or lee)"
            ))),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Metric::Cross => "cross",
            Metric::Lee => "lee",
        })
    }
}

pub fn hamming_distance(v: &Word, w: &Word) -> Result<usize> {
    v.check_compatible(w)?;
    Ok(v.residues()
        .iter()
        .zip(w.residues())
        .filter(|(a, b)| a != b)
        .count())
}

/// Lee distance when `v` and `w` differ in at most one coordinate, infinity
/// otherwise.
pub fn cross_distance(v: &Word, w: &Word) -> Result<ExtendedDistance> {
    v.check_compatible(w)?;
    let q = v.modulus();
    let mut differing = v
        .residues()
        .iter()
        .zip(w.residues())
        .filter(|(a, b)| a != b);
    Ok(match (differing.next(), differing.next()) {
        (None, _) => ExtendedDistance::Finite(0),
        (Some((a, b)), None) => ExtendedDistance::Finite(q.abs_residue(a.wrapping_sub(*b))),
        (Some(_), Some(_)) => ExtendedDistance::Infinity,
    })
}

/// Rejects radii whose cross would wrap around the ring.
///
/// The `2t + 1` offsets `-t..=t` are distinct modulo 2^m exactly when
/// `t <= 2^{m-1} - 1`.
pub fn check_radius(modulus: Modulus, t: u64) -> Result<()> {
    let max = modulus.half() - 1;
    if t > max {
        return Err(Error::usage(format!(
            "radius t = {t} exceeds 2^(m-1) - 1 = {max} for m = {}",
            modulus.bits()
        )));
    }
    Ok(())
}

/// All cross errors of magnitude at most `t`, the zero word first, then by
/// coordinate and offset.
pub fn cross_errors(modulus: Modulus, n: usize, t: u64) -> Result<Vec<Word>> {
    check_radius(modulus, t)?;
    let t = t as i64;
    let mut out = Vec::with_capacity(2 * n * t as usize + 1);
    out.push(Word::zero(modulus, n));
    for i in 0..n {
        for alpha in (-t..=t).filter(|&a| a != 0) {
            out.push(Word::unit(modulus, n, i, alpha));
        }
    }
    Ok(out)
}

/// `{c + alpha e_i : |alpha| <= t}`.
pub fn cross_sphere(center: &Word, t: u64) -> Result<BTreeSet<Word>> {
    cross_errors(center.modulus(), center.len(), t)?
        .iter()
        .map(|e| center.add(e))
        .collect()
}

pub fn cross_sphere_volume(n: u64, t: u64) -> u64 {
    2 * n * t + 1
}

/// `sum_{i=0}^{min(n,t)} 2^i C(n,i) C(t,i)`; exact while the sphere does not
/// wrap around the ring.
pub fn lee_sphere_volume(n: u64, t: u64) -> u128 {
    (0..=n.min(t))
        .map(|i| (1u128 << i) * binomial(n, i) * binomial(t, i))
        .sum()
}

fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

pub fn sphere_volume(metric: Metric, n: u64, t: u64) -> u128 {
    match metric {
        Metric::Cross => cross_sphere_volume(n, t) as u128,
        Metric::Lee => lee_sphere_volume(n, t),
    }
}

// 2^{nm} has to fit comfortably in a u128 alongside the volume.
const MAX_SPACE_BITS: u64 = 120;

fn check_bound_params(n: u64, m: u32, t: u64) -> Result<Modulus> {
    let modulus = Modulus::new(m)?;
    if n == 0 {
        return Err(Error::param("code length n must be at least 1"));
    }
    if t == 0 {
        return Err(Error::param("error magnitude t must be at least 1"));
    }
    check_radius(modulus, t).map_err(|_| {
        Error::param(format!(
            "t = {t} must satisfy t <= 2^(m-1) - 1 = {} for m = {m}",
            modulus.half() - 1
        ))
    })?;
    if n * m as u64 > MAX_SPACE_BITS {
        return Err(Error::param(format!(
            "space Z_2^{m}^{n} is too large for exact bounds"
        )));
    }
    Ok(modulus)
}

/// `floor(2^{nm} / volume)`.
pub fn sphere_packing_bound(n: u64, m: u32, t: u64, metric: Metric) -> Result<u128> {
    check_bound_params(n, m, t)?;
    let space = 1u128 << (n * m as u64);
    Ok(space / sphere_volume(metric, n, t))
}

/// Largest power of two strictly below `2^{nm} / volume`.
///
/// Both volumes are odd and greater than one for `t >= 1`, so the rational
/// bound is never itself a power of two.
pub fn linear_sphere_packing_bound(n: u64, m: u32, t: u64, metric: Metric) -> Result<u128> {
    check_bound_params(n, m, t)?;
    let volume = sphere_volume(metric, n, t);
    assert!(
        volume > 1 && volume % 2 == 1,
        "sphere volume {volume} must be odd and > 1"
    );
    // volume lies in [2^{b-1}, 2^b) and is not a power of two, so
    // volume * 2^j < 2^{nm} iff j <= nm - b.
    let b = 128 - volume.leading_zeros() as u64;
    let space_bits = n * m as u64;
    if b > space_bits {
        return Err(Error::param("sphere is larger than the space"));
    }
    Ok(1u128 << (space_bits - b))
}

/// One row of a bound table; columns in the order Lee, cross, Lee linear,
/// cross linear.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundRow {
    pub m: u32,
    pub q: u64,
    pub lee_bound: u64,
    pub cross_bound: u64,
    pub lee_linear_bound: u64,
    pub cross_linear_bound: u64,
}

impl BoundRow {
    pub fn cells(&self) -> [u64; 5] {
        [
            self.q,
            self.lee_bound,
            self.cross_bound,
            self.lee_linear_bound,
            self.cross_linear_bound,
        ]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundTable {
    pub n: u64,
    pub t: u64,
    pub rows: Vec<BoundRow>,
}

fn narrow(v: u128) -> Result<u64> {
    u64::try_from(v).map_err(|_| Error::param("bound does not fit in 64 bits"))
}

pub fn bound_table(n: u64, t: u64, m_list: &[u32]) -> Result<BoundTable> {
    if m_list.is_empty() {
        return Err(Error::usage("at least one value of m is required"));
    }
    let rows = m_list
        .iter()
        .map(|&m| {
            Ok(BoundRow {
                m,
                q: Modulus::new(m)?.order(),
                lee_bound: narrow(sphere_packing_bound(n, m, t, Metric::Lee)?)?,
                cross_bound: narrow(sphere_packing_bound(n, m, t, Metric::Cross)?)?,
                lee_linear_bound: narrow(linear_sphere_packing_bound(n, m, t, Metric::Lee)?)?,
                cross_linear_bound: narrow(linear_sphere_packing_bound(n, m, t, Metric::Cross)?)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BoundTable { n, t, rows })
}

/// The `(n, t)` pairs tabulated for `m = 3, 4, 5` in the reference tables.
pub const REFERENCE_TABLE_PARAMS: [(u64, u64); 5] = [(2, 2), (2, 3), (3, 2), (3, 3), (4, 2)];
pub const REFERENCE_TABLE_M: [u32; 3] = [3, 4, 5];

pub fn reference_tables() -> Vec<BoundTable> {
    REFERENCE_TABLE_PARAMS
        .iter()
        .map(|&(n, t)| {
            bound_table(n, t, &REFERENCE_TABLE_M).expect("reference parameters are valid")
        })
        .collect()
}

impl BoundTable {
    pub const CSV_HEADER: [&'static str; 7] =
        ["n", "t", "q", "lee", "cross", "lee_linear", "cross_linear"];

    pub fn to_csv(&self) -> String {
        Self::tables_to_csv(std::slice::from_ref(self))
    }

    /// Several tables under one header row.
    pub fn tables_to_csv(tables: &[BoundTable]) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(Self::CSV_HEADER).expect("write to Vec");
        for table in tables {
            for row in &table.rows {
                let mut record = vec![table.n.to_string(), table.t.to_string()];
                record.extend(row.cells().iter().map(u64::to_string));
                w.write_record(&record).expect("write to Vec");
            }
        }
        String::from_utf8(w.into_inner().expect("flush Vec")).expect("ascii output")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("bound tables always serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("n = {}, t = {}\n", self.n, self.t);
        out.push_str(&format!(
            "{:>8} {:>12} {:>12} {:>12} {:>12}\n",
            "2^m", "C^L", "C^+", "C^L_lin", "C^+_lin"
        ));
        for row in &self.rows {
            let [q, l, c, ll, cl] = row.cells();
            out.push_str(&format!("{q:>8} {l:>12} {c:>12} {ll:>12} {cl:>12}\n"));
        }
        out
    }
}

/// Evidence that no perfect cross code exists for the given parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PerfectCodeWitness {
    pub impossible: bool,
    pub volume: u64,
    pub space_bits: u64,
    /// `2^{nm} mod (2nt + 1)`, nonzero whenever `impossible` holds.
    pub remainder: u64,
}

pub fn perfect_code_impossible(n: u64, m: u32, t: u64) -> Result<PerfectCodeWitness> {
    if t == 0 || n == 0 {
        return Err(Error::param("n and t must be at least 1"));
    }
    let volume = cross_sphere_volume(n, t);
    let space_bits = n * m as u64;
    // square-and-multiply for 2^{nm} mod volume
    let mut remainder = 1u128 % volume as u128;
    let mut base = 2u128 % volume as u128;
    let mut e = space_bits;
    while e > 0 {
        if e & 1 == 1 {
            remainder = remainder * base % volume as u128;
        }
        base = base * base % volume as u128;
        e >>= 1;
    }
    let remainder = remainder as u64;
    Ok(PerfectCodeWitness {
        impossible: volume % 2 == 1 && volume > 1 && remainder != 0,
        volume,
        space_bits,
        remainder,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32) -> Modulus {
        Modulus::new(m).unwrap()
    }

    fn w(m: u32, c: &[i64]) -> Word {
        Word::new(z(m), c).unwrap()
    }

    #[test]
    fn cross_distance_examples() {
        assert_eq!(
            cross_distance(&w(3, &[1, 0]), &w(3, &[4, 1])).unwrap(),
            ExtendedDistance::Infinity
        );
        assert_eq!(
            cross_distance(&w(3, &[2, 5]), &w(3, &[2, 5])).unwrap(),
            ExtendedDistance::Finite(0)
        );
        assert_eq!(
            cross_distance(&w(3, &[0, 0]), &w(3, &[0, 5])).unwrap(),
            ExtendedDistance::Finite(3)
        );
        assert!(cross_distance(&w(3, &[0, 0]), &w(3, &[0, 0, 0])).is_err());
    }

    #[test]
    fn infinity_is_largest() {
        assert!(ExtendedDistance::Finite(u64::MAX) < ExtendedDistance::Infinity);
        assert!(ExtendedDistance::Finite(2) < ExtendedDistance::Finite(3));
    }

    #[test]
    fn triangle_inequality_fails() {
        // (0,0) -> (1,0) -> (1,1): two finite legs, infinite shortcut.
        let a = w(3, &[0, 0]);
        let b = w(3, &[1, 0]);
        let c = w(3, &[1, 1]);
        assert_eq!(cross_distance(&a, &b).unwrap(), ExtendedDistance::Finite(1));
        assert_eq!(cross_distance(&b, &c).unwrap(), ExtendedDistance::Finite(1));
        assert_eq!(cross_distance(&a, &c).unwrap(), ExtendedDistance::Infinity);
    }

    #[test]
    fn sphere_sizes() {
        assert_eq!(cross_sphere(&w(3, &[5, 1]), 2).unwrap().len(), 9);
        assert_eq!(cross_sphere(&w(4, &[0, 0, 0]), 3).unwrap().len(), 19);
        let c = w(4, &[3, 9]);
        let s = cross_sphere(&c, 0).unwrap();
        assert_eq!(s.len(), 1);
        assert!(s.contains(&c));
    }

    #[test]
    fn sphere_rejects_wrapping_radius() {
        assert!(cross_sphere(&w(3, &[0, 0]), 3).is_ok());
        assert!(cross_sphere(&w(3, &[0, 0]), 4).is_err());
        assert!(cross_sphere(&w(1, &[0]), 1).is_err());
    }

    #[test]
    fn volumes() {
        assert_eq!(cross_sphere_volume(2, 3), 13);
        assert_eq!(cross_sphere_volume(1, 1), 3);
        assert_eq!(cross_sphere_volume(4, 2), 17);
        assert_eq!(lee_sphere_volume(2, 2), 13);
        assert_eq!(lee_sphere_volume(5, 0), 1);
        assert_eq!(lee_sphere_volume(3, 3), 63);
    }

    #[test]
    fn bounds() {
        assert_eq!(sphere_packing_bound(2, 3, 2, Metric::Cross).unwrap(), 7);
        assert_eq!(sphere_packing_bound(3, 5, 3, Metric::Cross).unwrap(), 1724);
        assert_eq!(sphere_packing_bound(2, 4, 3, Metric::Lee).unwrap(), 10);
        assert_eq!(
            linear_sphere_packing_bound(2, 3, 3, Metric::Cross).unwrap(),
            4
        );
        assert_eq!(
            linear_sphere_packing_bound(3, 4, 2, Metric::Cross).unwrap(),
            256
        );
        assert_eq!(
            linear_sphere_packing_bound(2, 5, 2, Metric::Lee).unwrap(),
            64
        );
    }

    #[test]
    fn bound_rejects_bad_radius() {
        assert!(sphere_packing_bound(2, 3, 0, Metric::Cross).is_err());
        assert!(sphere_packing_bound(2, 3, 4, Metric::Cross).is_err());
        assert!(sphere_packing_bound(0, 3, 1, Metric::Cross).is_err());
    }

    #[test]
    fn table_rows() {
        let t = bound_table(2, 2, &[4]).unwrap();
        assert_eq!(t.rows[0].cells(), [16, 19, 28, 16, 16]);
        let t = bound_table(3, 3, &[3]).unwrap();
        assert_eq!(t.rows[0].cells(), [8, 8, 26, 8, 16]);
        // The published cell reads 25572; floor(2^20 / 41) is 25575.
        let t = bound_table(4, 2, &[5]).unwrap();
        assert_eq!(t.rows[0].cells(), [32, 25575, 61680, 16384, 32768]);
        assert!(bound_table(2, 2, &[]).is_err());
    }

    #[test]
    fn csv_layout() {
        let csv = bound_table(2, 2, &[3, 4]).unwrap().to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "n,t,q,lee,cross,lee_linear,cross_linear");
        assert_eq!(lines[1], "2,2,8,4,7,4,4");
        assert_eq!(lines[2], "2,2,16,19,28,16,16");
    }

    #[test]
    fn json_roundtrip() {
        let t = bound_table(3, 2, &[3, 4, 5]).unwrap();
        let back: BoundTable = serde_json::from_str(&t.to_json()).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn no_perfect_codes() {
        let w = perfect_code_impossible(2, 3, 2).unwrap();
        assert!(w.impossible);
        assert_eq!((w.volume, w.remainder), (9, 1));
        assert!(perfect_code_impossible(1, 1, 1).unwrap().impossible);
        let w = perfect_code_impossible(3, 10, 7).unwrap();
        assert_eq!(w.volume, 43);
        assert!(w.impossible);
    }
}
