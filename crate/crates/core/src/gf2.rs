//! Linear algebra over F₂ and the exact integer transforms built on it.
//!
//! Two vector types live here. [`BitVector`] is a short vector of `F₂^m`
//! (m ≤ 24) packed into a `u32`; it indexes coordinates of the ambient space
//! the defining sets live in. [`BitRow`] is a word-packed vector of arbitrary
//! length used for codewords and generator rows.
//!
//! Bit `i` of a vector is coordinate `i + 1` of `[m]`; string forms print bit
//! 0 first, so `"110"` has support `{1, 2}`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest ambient dimension a [`BitVector`] can carry.
pub const MAX_AMBIENT_DIM: usize = 24;

/// A vector of `F₂^m`, `m ≤ 24`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct BitVector {
    bits: u32,
    len: u8,
}

impl BitVector {
    pub fn new(bits: u32, len: usize) -> Result<Self> {
        if len > MAX_AMBIENT_DIM {
            return Err(Error::DimensionOutOfRange {
                m: len,
                max: MAX_AMBIENT_DIM,
            });
        }
        if u64::from(bits) >> len != 0 {
            return Err(Error::InvalidVector(format!(
                "mask {bits:#b} has bits beyond length {len}"
            )));
        }
        Ok(Self {
            bits,
            len: len as u8,
        })
    }

    /// Caller guarantees `bits < 2^len` and `len ≤ 24`.
    pub(crate) fn from_raw(bits: u32, len: usize) -> Self {
        debug_assert!(len <= MAX_AMBIENT_DIM && u64::from(bits) >> len == 0);
        Self {
            bits,
            len: len as u8,
        }
    }

    pub fn zero(len: usize) -> Self {
        Self::from_raw(0, len)
    }

    pub fn unit(index: usize, len: usize) -> Self {
        assert!(
            index < len,
            "unit index {index} out of range for length {len}"
        );
        Self::from_raw(1 << index, len)
    }

    pub fn bits(self) -> u32 {
        self.bits
    }

    pub fn len(self) -> usize {
        usize::from(self.len)
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    /// Zero-based bit positions of the support.
    pub fn support(self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.bits >> i & 1 == 1)
            .collect()
    }

    /// Standard inner product over F₂.
    pub fn dot(self, other: Self) -> u8 {
        ((self.bits & other.bits).count_ones() & 1) as u8
    }

    /// All of `F₂^len` in ascending mask order.
    pub fn all(len: usize) -> impl Iterator<Item = BitVector> {
        assert!(len <= MAX_AMBIENT_DIM);
        (0..1u32 << len).map(move |bits| BitVector::from_raw(bits, len))
    }
}

impl std::ops::BitXor for BitVector {
    type Output = BitVector;

    fn bitxor(self, rhs: Self) -> Self {
        assert_eq!(self.len, rhs.len, "length mismatch in BitVector xor");
        Self {
            bits: self.bits ^ rhs.bits,
            len: self.len,
        }
    }
}

impl fmt::Display for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len() {
            f.write_str(if self.bits >> i & 1 == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut bits = 0u32;
        for (i, ch) in s.chars().enumerate() {
            match ch {
                '0' => {}
                '1' if i < MAX_AMBIENT_DIM => bits |= 1 << i,
                '1' => {}
                _ => return Err(Error::InvalidVector(format!("{s:?}: expected 0/1 digits"))),
            }
        }
        BitVector::new(bits, s.chars().count())
    }
}

/// Word-packed binary vector of arbitrary length.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct BitRow {
    words: Vec<u64>,
    len: usize,
}

impl BitRow {
    pub fn zeros(len: usize) -> Self {
        Self {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    pub fn from_bools<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % 64 == 0 {
                words.push(0);
            }
            if b {
                words[len / 64] |= 1 << (len % 64);
            }
            len += 1;
        }
        Self { words, len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn weight(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        assert_eq!(self.len, other.len, "length mismatch in BitRow xor");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// XOR `other` into `self`, skipping the first `from_word` words.
    fn xor_assign_from(&mut self, other: &BitRow, from_word: usize) {
        for (a, b) in self.words[from_word..]
            .iter_mut()
            .zip(&other.words[from_word..])
        {
            *a ^= b;
        }
    }

    pub fn dot(&self, other: &BitRow) -> u8 {
        assert_eq!(self.len, other.len);
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        (ones & 1) as u8
    }

    /// True when the support of `self` lies inside the support of `other`.
    pub fn is_covered_by(&self, other: &BitRow) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }
}

impl fmt::Display for BitRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitRow {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::InvalidVector(format!("{s:?}: expected 0/1 digits"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BitRow::from_bools)
    }
}

/// Dense binary matrix stored as packed rows of equal length.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BinaryMatrix {
    rows: Vec<BitRow>,
    ncols: usize,
}

impl BinaryMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self {
            rows: vec![BitRow::zeros(ncols); nrows],
            ncols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    pub fn from_rows(ncols: usize, rows: Vec<BitRow>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch {
                expected: ncols,
                found: bad.len(),
            });
        }
        Ok(Self { rows, ncols })
    }

    /// Parses rows written as 0/1 strings; all rows must share one length.
    pub fn parse_rows<S: AsRef<str>>(rows: &[S]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.as_ref().parse::<BitRow>())
            .collect::<Result<Vec<_>>>()?;
        let ncols = parsed.first().map_or(0, BitRow::len);
        Self::from_rows(ncols, parsed)
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[BitRow] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &BitRow {
        &self.rows[i]
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.rows[r].set(c, value);
    }

    pub fn rank(&self) -> usize {
        self.row_reduce().1.len()
    }

    /// Reduced row-echelon form and its pivot columns.
    ///
    /// Columns are scanned left to right and the topmost remaining row with a
    /// one in the column becomes the pivot. Zero rows are dropped.
    pub fn row_reduce(&self) -> (BinaryMatrix, Vec<usize>) {
        let mut rows = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
                continue;
            };
            rows.swap(r, p);
            let (before, rest) = rows.split_at_mut(r);
            let (pivot, after) = rest.split_first_mut().expect("pivot row exists");
            let from_word = c / 64;
            for other in before.iter_mut().chain(after.iter_mut()) {
                if other.get(c) {
                    other.xor_assign_from(pivot, from_word);
                }
            }
            pivots.push(c);
            r += 1;
        }
        rows.truncate(r);
        (
            BinaryMatrix {
                rows,
                ncols: self.ncols,
            },
            pivots,
        )
    }

    /// Columns read as integers with row `i` at bit `i`; `None` above 64 rows.
    pub fn columns_u64(&self) -> Option<Vec<u64>> {
        if self.nrows() > 64 {
            return None;
        }
        let mut cols = vec![0u64; self.ncols];
        for (i, row) in self.rows.iter().enumerate() {
            for (w, &word) in row.words().iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let b = bits.trailing_zeros() as usize;
                    cols[w * 64 + b] |= 1 << i;
                    bits &= bits - 1;
                }
            }
        }
        Some(cols)
    }

    /// True when every pair of rows (including a row with itself) is orthogonal.
    pub fn gram_is_zero(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, a)| self.rows[i..].iter().all(|b| a.dot(b) == 0))
    }

    /// One row per line, `0`/`1` characters.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            out.push_str(&row.to_string());
            out.push('\n');
        }
        out
    }

    /// One column per line in hexadecimal, row `i` at bit `i`.
    pub fn to_column_hex(&self) -> String {
        let digits = self.nrows().div_ceil(4).max(1);
        let mut out = String::new();
        for c in 0..self.ncols {
            let mut value = BigUint::zero();
            for r in (0..self.nrows()).rev() {
                value <<= 1u32;
                if self.get(r, c) {
                    value += 1u32;
                }
            }
            out.push_str(&format!(
                "{:0>width$}\n",
                value.to_str_radix(16),
                width = digits
            ));
        }
        out
    }
}

/// `table[x] = Σ_{t∈A} (−1)^{x·t}` for every `x ∈ F₂^m`, by the fast
/// Walsh–Hadamard butterfly. Repeated elements of `set` count with multiplicity.
pub fn walsh_hadamard_charsums(set: &[BitVector], m: usize) -> Result<Vec<i64>> {
    if m > MAX_AMBIENT_DIM {
        return Err(Error::DimensionOutOfRange {
            m,
            max: MAX_AMBIENT_DIM,
        });
    }
    let mut table = vec![0i64; 1 << m];
    for v in set {
        if v.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: v.len(),
            });
        }
        table[v.bits() as usize] += 1;
    }
    fwht_in_place(&mut table);
    Ok(table)
}

/// Unnormalised Walsh–Hadamard transform; `table.len()` must be a power of two.
pub fn fwht_in_place(table: &mut [i64]) {
    debug_assert!(table.len().is_power_of_two());
    let mut h = 1;
    while h < table.len() {
        for block in table.chunks_mut(2 * h) {
            let (lo, hi) = block.split_at_mut(h);
            for (a, b) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a, *b);
                *a = x + y;
                *b = x - y;
            }
        }
        h *= 2;
    }
}

pub fn binomial(n: u64, r: u64) -> BigUint {
    if r > n {
        return BigUint::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigUint::one();
    for i in 0..r {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Krawtchouk polynomial `K_j(i; n) = Σ_s (−1)^s C(i, s) C(n − i, j − s)`.
pub fn krawtchouk(j: u64, i: u64, n: u64) -> BigInt {
    assert!(i <= n, "krawtchouk argument i exceeds n");
    let mut acc = BigInt::zero();
    for s in 0..=j.min(i) {
        let term = BigInt::from(binomial(i, s) * binomial(n - i, j - s));
        if s % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Dual weight distribution coefficients `A'_0 ..= A'_jmax` by the MacWilliams
/// identities, for a code of dimension `k` with distribution `dist`.
pub fn macwilliams_prefix(dist: &WeightDistribution, k: u32, jmax: u64) -> Result<Vec<BigUint>> {
    let n = dist.length();
    let denom = BigInt::one() << k;
    (0..=jmax.min(n))
        .map(|j| {
            let mut sum = BigInt::zero();
            for (&i, count) in dist.iter() {
                sum += krawtchouk(j, i, n) * BigInt::from(count.clone());
            }
            let (q, r) = sum.div_rem(&denom);
            if !r.is_zero() || q.sign() == Sign::Minus {
                return Err(Error::NonIntegerDualCoefficient { index: j as usize });
            }
            Ok(q.magnitude().clone())
        })
        .collect()
}

/// Exact Hamming weight distribution `(A_0, …, A_n)`, stored sparsely.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightDistribution {
    length: u64,
    entries: BTreeMap<u64, BigUint>,
}

impl WeightDistribution {
    pub fn new(length: u64) -> Self {
        Self {
            length,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_pairs<C: Into<BigUint>>(
        length: u64,
        pairs: impl IntoIterator<Item = (u64, C)>,
    ) -> Self {
        let mut dist = Self::new(length);
        for (w, c) in pairs {
            dist.add(w, c);
        }
        dist
    }

    /// Adds `count` codewords of weight `weight`; zero counts are not stored.
    pub fn add<C: Into<BigUint>>(&mut self, weight: u64, count: C) {
        assert!(
            weight <= self.length,
            "weight {weight} exceeds length {}",
            self.length
        );
        let count = count.into();
        if count.is_zero() {
            return;
        }
        *self.entries.entry(weight).or_default() += count;
    }

    pub fn length(&self) -> u64 {
        self.length
    }

    pub fn count(&self, weight: u64) -> BigUint {
        self.entries.get(&weight).cloned().unwrap_or_default()
    }

    /// `(weight, count)` pairs with positive count, ascending by weight.
    pub fn iter(&self) -> impl Iterator<Item = (&u64, &BigUint)> {
        self.entries.iter()
    }

    pub fn total(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// `log₂` of the codeword total when it is a power of two.
    pub fn dimension(&self) -> Option<u32> {
        let total = self.total();
        let bits = total.bits();
        (bits > 0 && total == BigUint::one() << (bits - 1)).then(|| (bits - 1) as u32)
    }

    pub fn nonzero_weights(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.keys().copied().filter(|&w| w > 0)
    }

    pub fn min_distance(&self) -> Option<u64> {
        self.nonzero_weights().next()
    }

    pub fn max_weight(&self) -> Option<u64> {
        self.nonzero_weights().last()
    }

    pub fn weight_count(&self) -> usize {
        self.nonzero_weights().count()
    }

    /// `weight,count` lines with a header.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("weight,count\n");
        for (w, c) in &self.entries {
            out.push_str(&format!("{w},{c}\n"));
        }
        out
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (w, c)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{w}: {c}")?;
        }
        f.write_str("}")
    }
}

/// Serialized as a JSON object from weight to count; counts beyond `u64`
/// become decimal strings.
impl Serialize for WeightDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.entries.len()))?;
        for (w, c) in &self.entries {
            match c.to_u64() {
                Some(small) => map.serialize_entry(&w.to_string(), &small)?,
                None => map.serialize_entry(&w.to_string(), &c.to_string())?,
            }
        }
        map.end()
    }
}
