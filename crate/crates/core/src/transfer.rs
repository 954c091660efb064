//! The partition-indexed transfer matrix and the `x_γ(k)` recursion.
//!
//! Once the initial noise of a walk's row sums is past, the remaining
//! rows are a run of `m`'s followed by a partition `γ` of `b` into parts
//! of size at most `m`. Filling the last block of columns turns the run
//! of `m`'s one shorter and replaces `γ` by some partition `δ`, and the
//! number of fills producing `δ` has the closed form
//!
//! ```text
//! a(γ,δ) = ∏_{i=1..m} C( (γ_i+…+γ_m) + 1 − (δ_{i+1}+…+δ_m), δ_i )
//! ```
//!
//! where `γ_i` counts the parts of size `i`. Collecting the coefficients
//! over all partition pairs gives a square transfer matrix `A` with
//! `x_γ(k) = Σ_δ a(γ,δ) x_δ(k−1)`, independent of the walk's endpoints.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::oracle::SelectionMatrix;
use crate::state::{State, ThrowSet};

/// A partition of `b` into parts of size at most `m`, stored as
/// counts-by-part-size: `counts[i]` parts of size `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PartCounts {
    counts: Vec<u32>,
}

impl PartCounts {
    /// Builds from explicit counts; the maximum part size is `counts.len()`.
    pub fn from_counts(counts: Vec<u32>) -> Self {
        PartCounts { counts }
    }

    /// Builds from a list of parts, each at most `max_part`.
    pub fn from_parts(parts: &[u32], max_part: u32) -> Result<Self> {
        if max_part == 0 {
            return Err(Error::ZeroCapacity);
        }
        let mut counts = vec![0u32; max_part as usize];
        for &p in parts {
            if p == 0 || p > max_part {
                return Err(Error::InvalidArgument(format!(
                    "part {p} is outside 1..={max_part}"
                )));
            }
            counts[p as usize - 1] += 1;
        }
        Ok(PartCounts { counts })
    }

    /// Parses the comma-separated part format, e.g. `"2,1"`; the empty
    /// partition is `""`.
    pub fn parse(text: &str, max_part: u32) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return PartCounts::from_parts(&[], max_part);
        }
        let mut parts = Vec::new();
        for token in trimmed.split(',') {
            let value: u32 = token.trim().parse().map_err(|_| Error::Syntax {
                offset: 0,
                message: format!("invalid part '{}'", token.trim()),
            })?;
            parts.push(value);
        }
        PartCounts::from_parts(&parts, max_part)
    }

    /// The partition of a state's slot multiset (zeros dropped).
    pub fn of_state(state: &State) -> Self {
        let parts: Vec<u32> = state.slots().iter().copied().filter(|&v| v > 0).collect();
        PartCounts::from_parts(&parts, state.capacity()).expect("slots are bounded by capacity")
    }

    /// Maximum part size `m`.
    pub fn max_part(&self) -> u32 {
        self.counts.len() as u32
    }

    /// Counts by part size, `counts()[i]` parts of size `i + 1`.
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Total `b = Σ i·γ_i`.
    pub fn total(&self) -> u32 {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (i as u32 + 1) * c)
            .sum()
    }

    /// The parts in weakly decreasing order.
    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (i, &c) in self.counts.iter().enumerate().rev() {
            for _ in 0..c {
                out.push(i as u32 + 1);
            }
        }
        out
    }

    fn suffix_count(&self, from: usize) -> i64 {
        self.counts[from.min(self.counts.len())..]
            .iter()
            .map(|&c| i64::from(c))
            .sum()
    }
}

impl std::fmt::Display for PartCounts {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.parts().iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// All partitions of `total` into parts of size at most `max_part`, in
/// reverse-lexicographic order by parts: `(3)`, `(2,1)`, `(1,1,1)`.
pub fn partitions_of(total: u32, max_part: u32) -> Vec<PartCounts> {
    let mut out = Vec::new();
    let mut parts = Vec::new();
    descend(total, max_part, &mut parts, &mut out, max_part);
    out
}

fn descend(rem: u32, largest: u32, parts: &mut Vec<u32>, out: &mut Vec<PartCounts>, max_part: u32) {
    if rem == 0 {
        out.push(PartCounts::from_parts(parts, max_part).expect("parts bounded"));
        return;
    }
    for p in (1..=largest.min(rem)).rev() {
        parts.push(p);
        descend(rem - p, p, parts, out, max_part);
        parts.pop();
    }
}

/// Binomial coefficient with the convention that a negative or too-small
/// upper argument gives 0.
pub(crate) fn binomial(upper: i64, lower: u32) -> BigUint {
    let lower = i64::from(lower);
    if upper < 0 || lower > upper {
        return BigUint::zero();
    }
    let mut result = BigUint::one();
    for i in 0..lower {
        result = result * BigUint::from((upper - i) as u64) / BigUint::from((i + 1) as u64);
    }
    result
}

/// The transfer coefficient `a(γ,δ)`: the number of one-block fills that
/// turn terminal partition `γ` into `δ`.
pub fn coefficient(gamma: &PartCounts, delta: &PartCounts) -> Result<BigUint> {
    if gamma.max_part() != delta.max_part() {
        return Err(Error::ParameterMismatch(format!(
            "partitions have different part bounds ({} vs {})",
            gamma.max_part(),
            delta.max_part()
        )));
    }
    if gamma.total() != delta.total() {
        return Err(Error::ParameterMismatch(format!(
            "partitions have different totals ({} vs {})",
            gamma.total(),
            delta.total()
        )));
    }
    let m = gamma.max_part() as usize;
    let mut product = BigUint::one();
    for i in 1..=m {
        let upper = gamma.suffix_count(i - 1) + 1 - delta.suffix_count(i);
        product *= binomial(upper, gamma_count(delta, i));
        if product.is_zero() {
            break;
        }
    }
    Ok(product)
}

fn gamma_count(p: &PartCounts, size: usize) -> u32 {
    p.counts()[size - 1]
}

/// The `r × r` transfer matrix over all partitions of `balls` with parts
/// at most `capacity`, in canonical order. Depends only on `(b, m)`.
#[derive(Debug, Clone)]
pub struct TransferMatrix {
    balls: u32,
    capacity: u32,
    index: Vec<PartCounts>,
    entries: SquareMatrix,
}

impl TransferMatrix {
    /// Builds the matrix entry-by-entry from the coefficient formula.
    pub fn build(balls: u32, capacity: u32) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::ZeroCapacity);
        }
        let index = partitions_of(balls, capacity);
        let r = index.len();
        let mut entries = SquareMatrix::zero(r);
        for (i, gamma) in index.iter().enumerate() {
            for (j, delta) in index.iter().enumerate() {
                entries.set(i, j, coefficient(gamma, delta)?);
            }
        }
        Ok(TransferMatrix {
            balls,
            capacity,
            index,
            entries,
        })
    }

    pub fn balls(&self) -> u32 {
        self.balls
    }

    pub fn capacity(&self) -> u32 {
        self.capacity
    }

    /// Matrix dimension `r`: the number of partitions.
    pub fn order(&self) -> usize {
        self.index.len()
    }

    /// The partitions indexing rows and columns, in canonical order.
    pub fn partitions(&self) -> &[PartCounts] {
        &self.index
    }

    /// Position of a partition in the canonical order.
    pub fn position(&self, partition: &PartCounts) -> Option<usize> {
        self.index.iter().position(|p| p == partition)
    }

    /// Entry `a(γ,δ)` by row and column position.
    pub fn entry(&self, row: usize, col: usize) -> &BigUint {
        self.entries.get(row, col)
    }

    /// The entries as plain rows, for display and comparison.
    pub fn rows(&self) -> Vec<Vec<BigUint>> {
        (0..self.order())
            .map(|i| {
                (0..self.order())
                    .map(|j| self.entry(i, j).clone())
                    .collect()
            })
            .collect()
    }

    /// `A^k · v` for a vector indexed like [`partitions`](Self::partitions).
    pub fn apply_power(&self, v: &[BigUint], k: usize) -> Vec<BigUint> {
        self.entries.pow(k).apply(v)
    }
}

/// Every way to fill one block of columns whose row sums are `m, γ`:
/// the throw multiset of the block paired with the terminal partition it
/// leaves behind. Grouping by partition recovers the coefficients.
pub fn enumerate_block_fills(gamma: &PartCounts) -> Vec<(ThrowSet, PartCounts)> {
    let m = gamma.max_part();
    let parts = gamma.parts();
    let mut rows = Vec::with_capacity(parts.len() + 1);
    rows.push(m);
    rows.extend(parts.iter().copied());
    let mut fills = Vec::new();
    let mut picks = vec![0u32; rows.len()];
    fill_rows(&rows, 0, m, &mut picks, &mut fills, m);
    fills
}

fn fill_rows(
    rows: &[u32],
    row: usize,
    remaining: u32,
    picks: &mut Vec<u32>,
    fills: &mut Vec<(ThrowSet, PartCounts)>,
    m: u32,
) {
    if row == rows.len() {
        if remaining > 0 {
            return;
        }
        let mut heights = Vec::new();
        let mut leftover = Vec::new();
        for (i, (&sum, &picked)) in rows.iter().zip(picks.iter()).enumerate() {
            for _ in 0..picked {
                heights.push(i as u32);
            }
            if sum - picked > 0 {
                leftover.push(sum - picked);
            }
        }
        let delta = PartCounts::from_parts(&leftover, m).expect("residues stay within bounds");
        let throws = ThrowSet::new(heights, m).expect("exactly m picks");
        fills.push((throws, delta));
        return;
    }
    for count in (0..=rows[row].min(remaining)).rev() {
        picks[row] = count;
        fill_rows(rows, row + 1, remaining - count, picks, fills, m);
        picks[row] = 0;
    }
}

/// The exact fill counts `x_γ(k)` for every partition `γ`, starting from
/// the landing schedule of `alpha`: row sums `m−a_1, …, m−a_{h(α)}`, then
/// `k` rows of `m`, then `γ`.
///
/// The base values `x_γ(0)` come from the selection counter; when
/// `alpha = ⟨b⟩` they are all 1 and the counter is skipped.
pub fn x_values(alpha: &State, k: usize) -> Result<BTreeMap<PartCounts, BigUint>> {
    let matrix = TransferMatrix::build(alpha.balls(), alpha.capacity())?;
    let base = x_base(alpha, &matrix);
    let values = matrix.apply_power(&base, k);
    Ok(matrix.partitions().iter().cloned().zip(values).collect())
}

fn x_base(alpha: &State, matrix: &TransferMatrix) -> Vec<BigUint> {
    if alpha.height() == 1 && alpha.slot(1) == alpha.balls() {
        return vec![BigUint::one(); matrix.order()];
    }
    let m = alpha.capacity();
    let noise: Vec<i64> = (1..=alpha.height())
        .map(|i| i64::from(m) - i64::from(alpha.slot(i)))
        .collect();
    matrix
        .partitions()
        .iter()
        .map(|gamma| {
            let mut rows = noise.clone();
            rows.extend(gamma.parts().iter().map(|&p| i64::from(p)));
            SelectionMatrix::from_row_sums(m, alpha.height(), rows).count_selections()
        })
        .collect()
}

/// Walk counting through the transfer recursion: for `n ≥ h(α)` the
/// number of walks of length `n` from `alpha` to `beta` is
/// `x_{part(β)}(n − h(α))`, reading `beta`'s slot multiset as a partition.
pub fn count_walks_transfer(alpha: &State, beta: &State, length: usize) -> Result<BigUint> {
    if alpha.capacity() != beta.capacity() || alpha.balls() != beta.balls() {
        return Err(Error::ParameterMismatch(format!(
            "states {alpha} and {beta} do not share parameters"
        )));
    }
    if length < alpha.height() {
        return Err(Error::InvalidArgument(format!(
            "transfer counting needs length ≥ h(α) = {}",
            alpha.height()
        )));
    }
    let gamma = PartCounts::of_state(beta);
    let values = x_values(alpha, length - alpha.height())?;
    Ok(values
        .get(&gamma)
        .cloned()
        .expect("every slot multiset is a partition of b"))
}
