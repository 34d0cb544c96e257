//! Creation sequences of connected threshold graphs.
//!
//! A threshold graph on `n` vertices is built by adding vertices one at a
//! time, each either isolated (`0`) or dominating (`1`). The resulting binary
//! string `α_1 … α_n` determines the graph uniquely. Here `α_1 = 0` always,
//! and `α_n = 1` for every connected graph with `n ≥ 2`.
//!
//! Two input notations are accepted:
//!
//! * raw bits: `01100111` (whitespace ignored)
//! * block notation: `0 1^2 0^2 1^3`, `0^{2}1^{4}`, or the compact
//!   `0:1,1:2,0:2,1:3`. The exponent `1` may be omitted in the `^` form.
//!
//! Output is always raw bits.

use std::fmt;
use std::ops::Range;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result, SequenceError};

/// Largest `n` for which the enumeration index fits in a `u64`.
pub const MAX_ENUMERATION_N: usize = 64;

/// Validated creation sequence. `true` marks a dominating vertex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CreationSequence {
    bits: Vec<bool>,
}

impl CreationSequence {
    /// Validates `bits` as the creation sequence of a connected threshold graph.
    pub fn from_bits(bits: Vec<bool>) -> Result<Self, SequenceError> {
        match bits.as_slice() {
            [] => Err(SequenceError::Empty),
            [true, ..] => Err(SequenceError::FirstNotZero),
            [_, .., false] => Err(SequenceError::Disconnected { n: bits.len() }),
            _ => Ok(Self { bits }),
        }
    }

    /// Skips every validity check except non-emptiness. Only meant for
    /// oracle-side tests on sequences that may be disconnected or start with 1.
    #[doc(hidden)]
    pub fn from_bits_unchecked(bits: Vec<bool>) -> Self {
        assert!(!bits.is_empty(), "creation sequence must be non-empty");
        Self { bits }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// `β_i = 1 − 2α_i` for 0-based position `i`.
    pub fn beta(&self, i: usize) -> i8 {
        if self.bits[i] {
            -1
        } else {
            1
        }
    }

    pub fn signs(&self) -> SignVector {
        SignVector {
            beta: (0..self.len()).map(|i| self.beta(i)).collect(),
        }
    }

    /// True when the sequence is a valid connected creation sequence.
    pub fn is_connected(&self) -> bool {
        Self::from_bits(self.bits.clone()).is_ok()
    }

    /// Vertex degrees, sorted in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let adj = adjacency(self);
        let mut deg: Vec<usize> = adj
            .iter()
            .map(|row| row.iter().filter(|&&e| e).count())
            .collect();
        deg.sort_unstable_by(|a, b| b.cmp(a));
        deg
    }
}

impl fmt::Display for CreationSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for CreationSequence {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, SequenceError> {
        parse_sequence(s)
    }
}

impl Serialize for CreationSequence {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CreationSequence {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_sequence(&text).map_err(serde::de::Error::custom)
    }
}

/// `β_i = 1 − 2α_i ∈ {−1, +1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignVector {
    pub beta: Vec<i8>,
}

/// Parses raw-bit or block notation into a validated sequence.
pub fn parse_sequence(text: &str) -> Result<CreationSequence, SequenceError> {
    if text.trim().is_empty() {
        return Err(SequenceError::Empty);
    }
    let bits = if text.contains(':') {
        parse_compact(text)?
    } else if text.contains('^') {
        parse_powers(text)?
    } else {
        parse_raw(text)?
    };
    CreationSequence::from_bits(bits)
}

fn symbol(position: usize, c: char) -> Result<bool, SequenceError> {
    match c {
        '0' => Ok(false),
        '1' => Ok(true),
        found => Err(SequenceError::InvalidCharacter { position, found }),
    }
}

fn parse_raw(text: &str) -> Result<Vec<bool>, SequenceError> {
    text.chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(i, c)| symbol(i + 1, c))
        .collect()
}

fn malformed(position: usize, reason: impl Into<String>) -> SequenceError {
    SequenceError::MalformedBlock {
        position,
        reason: reason.into(),
    }
}

fn push_run(
    bits: &mut Vec<bool>,
    bit: bool,
    count: usize,
    position: usize,
) -> Result<(), SequenceError> {
    if count == 0 {
        return Err(malformed(position, "run length must be at least 1"));
    }
    bits.extend(std::iter::repeat_n(bit, count));
    Ok(())
}

/// `0^2 1^4`, `0^{2}1^{4}`, `0 1^3 0^2 1`.
fn parse_powers(text: &str) -> Result<Vec<bool>, SequenceError> {
    let chars: Vec<char> = text.chars().collect();
    let mut bits = Vec::new();
    let mut i = 0;
    let skip_ws = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    loop {
        skip_ws(&mut i);
        if i == chars.len() {
            break;
        }
        if chars[i] == '^' {
            return Err(malformed(i + 1, "exponent without a symbol"));
        }
        let bit = symbol(i + 1, chars[i])?;
        let term_start = i + 1;
        i += 1;
        skip_ws(&mut i);
        if i < chars.len() && chars[i] == '^' {
            i += 1;
            skip_ws(&mut i);
            let braced = i < chars.len() && chars[i] == '{';
            if braced {
                i += 1;
            }
            let digits_start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            if digits_start == i {
                return Err(malformed(
                    digits_start + 1,
                    "expected a run length after '^'",
                ));
            }
            let digits: String = chars[digits_start..i].iter().collect();
            let count: usize = digits
                .parse()
                .map_err(|_| malformed(digits_start + 1, "run length too large"))?;
            if braced {
                if i < chars.len() && chars[i] == '}' {
                    i += 1;
                } else {
                    return Err(malformed(i + 1, "missing closing '}'"));
                }
            }
            push_run(&mut bits, bit, count, term_start)?;
        } else {
            bits.push(bit);
        }
    }
    if bits.is_empty() {
        return Err(SequenceError::Empty);
    }
    Ok(bits)
}

/// `0:2,1:4`.
fn parse_compact(text: &str) -> Result<Vec<bool>, SequenceError> {
    let mut bits = Vec::new();
    let mut offset = 0;
    for item in text.split(',') {
        let item_pos = offset + 1 + item.chars().take_while(|c| c.is_whitespace()).count();
        offset += item.chars().count() + 1;
        let trimmed = item.trim();
        if trimmed.is_empty() {
            return Err(malformed(item_pos, "empty run"));
        }
        let (sym, count) = trimmed
            .split_once(':')
            .ok_or_else(|| malformed(item_pos, "expected symbol:count"))?;
        let sym = sym.trim();
        let mut sym_chars = sym.chars();
        let bit = match (sym_chars.next(), sym_chars.next()) {
            (Some(c), None) => symbol(item_pos, c)?,
            _ => return Err(malformed(item_pos, "symbol must be a single 0 or 1")),
        };
        let count: usize = count
            .trim()
            .parse()
            .map_err(|_| malformed(item_pos, "run length must be a positive integer"))?;
        push_run(&mut bits, bit, count, item_pos)?;
    }
    Ok(bits)
}

/// Run-length form `0^{s_1} 1^{t_1} … 0^{s_k} 1^{t_k}` of a connected sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BlockForm {
    s: Vec<usize>,
    t: Vec<usize>,
}

impl BlockForm {
    /// Builds a block form from its run lengths; all must be positive and the
    /// two lists equally long and non-empty.
    pub fn from_runs(s: Vec<usize>, t: Vec<usize>) -> Result<Self> {
        if s.is_empty() || s.len() != t.len() {
            return Err(Error::DimensionMismatch {
                expected: s.len().max(1),
                found: t.len(),
            });
        }
        if s.iter().chain(&t).any(|&r| r == 0) {
            return Err(SequenceError::MalformedBlock {
                position: 1,
                reason: "run length must be at least 1".into(),
            }
            .into());
        }
        Ok(Self { s, t })
    }

    /// Zero-run lengths `s_1 … s_k`.
    pub fn s(&self) -> &[usize] {
        &self.s
    }

    /// One-run lengths `t_1 … t_k`.
    pub fn t(&self) -> &[usize] {
        &self.t
    }

    pub fn k(&self) -> usize {
        self.s.len()
    }

    pub fn n(&self) -> usize {
        self.s.iter().sum::<usize>() + self.t.iter().sum::<usize>()
    }

    /// Cell sizes in partition order `(s_1, t_1, …, s_k, t_k)`.
    pub fn cell_sizes(&self) -> Vec<usize> {
        self.s
            .iter()
            .zip(&self.t)
            .flat_map(|(&s, &t)| [s, t])
            .collect()
    }

    /// Whether cell `p` (0-based, partition order) is a run of dominating vertices.
    pub fn is_one_cell(p: usize) -> bool {
        p % 2 == 1
    }

    /// Cell index of every vertex, in vertex order.
    pub fn cell_of_vertices(&self) -> Vec<usize> {
        self.cell_sizes()
            .iter()
            .enumerate()
            .flat_map(|(p, &size)| std::iter::repeat_n(p, size))
            .collect()
    }

    /// First vertex (0-based) of every cell, followed by `n`.
    pub fn cell_offsets(&self) -> Vec<usize> {
        let mut offsets = vec![0];
        for size in self.cell_sizes() {
            offsets.push(offsets.last().unwrap() + size);
        }
        offsets
    }

    pub fn expand(&self) -> CreationSequence {
        let mut bits = Vec::with_capacity(self.n());
        for (&s, &t) in self.s.iter().zip(&self.t) {
            bits.extend(std::iter::repeat_n(false, s));
            bits.extend(std::iter::repeat_n(true, t));
        }
        CreationSequence { bits }
    }
}

impl fmt::Display for BlockForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (s, t)) in self.s.iter().zip(&self.t).enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "0^{s} 1^{t}")?;
        }
        Ok(())
    }
}

/// Run-length encodes a connected sequence with `n ≥ 2`.
pub fn block_form(seq: &CreationSequence) -> Result<BlockForm, SequenceError> {
    let bits = seq.bits();
    if bits.len() < 2 {
        return Err(SequenceError::Singleton);
    }
    if bits[0] {
        return Err(SequenceError::FirstNotZero);
    }
    if !bits[bits.len() - 1] {
        return Err(SequenceError::Disconnected { n: bits.len() });
    }
    let mut s = Vec::new();
    let mut t = Vec::new();
    let mut i = 0;
    while i < bits.len() {
        let bit = bits[i];
        let start = i;
        while i < bits.len() && bits[i] == bit {
            i += 1;
        }
        if bit {
            t.push(i - start);
        } else {
            s.push(i - start);
        }
    }
    Ok(BlockForm { s, t })
}

/// Adjacency matrix built by replaying the insertion process.
pub fn adjacency(seq: &CreationSequence) -> Vec<Vec<bool>> {
    let n = seq.len();
    let mut adj = vec![vec![false; n]; n];
    for (v, &dominating) in seq.bits().iter().enumerate() {
        if dominating {
            for u in 0..v {
                adj[u][v] = true;
                adj[v][u] = true;
            }
        }
    }
    adj
}

/// Dense Seidel matrix `S = J − I − 2A`, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeidelMatrix {
    n: usize,
    entries: Vec<i32>,
}

impl SeidelMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i32 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i32] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i32]> {
        self.entries.chunks(self.n)
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.rows()
            .map(|r| r.iter().map(|&e| e as i64).collect())
            .collect()
    }

    pub fn to_f64_rows(&self) -> Vec<Vec<f64>> {
        self.rows()
            .map(|r| r.iter().map(|&e| e as f64).collect())
            .collect()
    }

    /// `S·v` in exact integer arithmetic.
    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        self.rows()
            .map(|row| row.iter().zip(v).map(|(&a, &b)| a as i64 * b).sum())
            .collect()
    }
}

/// `s_ij = β_max(i,j)` for `i ≠ j`, zero diagonal.
pub fn seidel_matrix(seq: &CreationSequence) -> SeidelMatrix {
    let n = seq.len();
    let mut entries = vec![0i32; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                entries[i * n + j] = seq.beta(i.max(j)) as i32;
            }
        }
    }
    SeidelMatrix { n, entries }
}

/// Number of connected threshold graphs on `n ≥ 2` vertices, `2^{n−2}`.
pub fn sequence_count(n: usize) -> Result<u64> {
    check_enumeration_n(n)?;
    Ok(1u64 << (n - 2))
}

fn check_enumeration_n(n: usize) -> Result<()> {
    if !(2..=MAX_ENUMERATION_N).contains(&n) {
        return Err(Error::OutOfRange {
            what: "n",
            value: n,
            min: 2,
            max: MAX_ENUMERATION_N,
        });
    }
    Ok(())
}

/// The `index`-th sequence of length `n` in lexicographic order.
pub fn sequence_at(n: usize, index: u64) -> Result<CreationSequence> {
    let count = sequence_count(n)?;
    if index >= count {
        return Err(Error::OutOfRange {
            what: "index",
            value: index as usize,
            min: 0,
            max: (count - 1) as usize,
        });
    }
    Ok(sequence_at_unchecked(n, index))
}

fn sequence_at_unchecked(n: usize, index: u64) -> CreationSequence {
    let middle = n - 2;
    let mut bits = Vec::with_capacity(n);
    bits.push(false);
    for j in (0..middle).rev() {
        bits.push((index >> j) & 1 == 1);
    }
    bits.push(true);
    CreationSequence { bits }
}

/// Lexicographic stream over all connected creation sequences of one length.
#[derive(Debug, Clone)]
pub struct Sequences {
    n: usize,
    next: u64,
    end: u64,
}

impl Sequences {
    /// Sub-stream over the enumeration indices in `range`, for splitting work.
    pub fn range(n: usize, range: Range<u64>) -> Result<Self> {
        let count = sequence_count(n)?;
        Ok(Self {
            n,
            next: range.start.min(count),
            end: range.end.min(count),
        })
    }
}

impl Iterator for Sequences {
    type Item = CreationSequence;

    fn next(&mut self) -> Option<CreationSequence> {
        if self.next >= self.end {
            return None;
        }
        let seq = sequence_at_unchecked(self.n, self.next);
        self.next += 1;
        Some(seq)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = self.end.saturating_sub(self.next) as usize;
        (left, Some(left))
    }
}

impl ExactSizeIterator for Sequences {}

/// All `2^{n−2}` connected creation sequences of length `n`.
pub fn enumerate_sequences(n: usize) -> Result<Sequences> {
    let count = sequence_count(n)?;
    Sequences::range(n, 0..count)
}

/// Splits `0..count` into at most `parts` contiguous, nearly equal ranges.
pub(crate) fn split_range(count: u64, parts: usize) -> Vec<Range<u64>> {
    let parts = (parts.max(1) as u64).min(count.max(1));
    let chunk = count / parts;
    let extra = count % parts;
    let mut start = 0;
    (0..parts)
        .map(|p| {
            let len = chunk + u64::from(p < extra);
            let r = start..start + len;
            start += len;
            r
        })
        .collect()
}
