//! Two independent exact walk counters: a depth-first simulation of the
//! modified-capacity bucket procedure, and the selection-matrix model.
//!
//! A walk of length `n` from `α` to `β` is equivalent to running `n`
//! bucket steps where the first `n` buckets have capacity `m` and the
//! later ones have capacities `b_1, b_2, …` read off `β`; the walk is
//! forced into `β` once every capacity is saturated. The same walks
//! correspond to selections of ones in a block matrix whose row sums are
//! the unused capacities, one block of `m` columns per step, with row
//! indices weakly decreasing inside a block.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::state::{State, ThrowSet};

/// Default cap on the number of walks materialized by [`enumerate_walks`].
pub const DEFAULT_WALK_LIMIT: usize = 10_000;

/// The selection-matrix instance for counting walks: `period` blocks of
/// `capacity` columns, where a column in block `t` may select any row
/// `t, t+1, …` and selecting row `t + j` encodes a throw of height `j`.
///
/// Row sums are stored signed: a negative sum marks an infeasible
/// instance, which admits no selections (and no walks).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionMatrix {
    capacity: u32,
    period: usize,
    row_sums: Vec<i64>,
}

impl SelectionMatrix {
    /// The instance whose selections are the walks of length `period`
    /// from `from` to `to`: row sums `m−a_1, …, m−a_n` followed by
    /// `b_1−a_{n+1}, …, b_h−a_{n+h}` with `h = max(h(α)−n, h(β))`.
    pub fn for_walks(from: &State, to: &State, period: usize) -> Result<Self> {
        if from.capacity() != to.capacity() {
            return Err(Error::ParameterMismatch(format!(
                "hand capacities differ ({} vs {})",
                from.capacity(),
                to.capacity()
            )));
        }
        if from.balls() != to.balls() {
            return Err(Error::ParameterMismatch(format!(
                "ball counts differ ({} vs {})",
                from.balls(),
                to.balls()
            )));
        }
        let m = from.capacity();
        let tail = from.height().saturating_sub(period).max(to.height());
        let mut row_sums = Vec::with_capacity(period + tail);
        for i in 1..=period {
            row_sums.push(i64::from(m) - i64::from(from.slot(i)));
        }
        for j in 1..=tail {
            row_sums.push(i64::from(to.slot(j)) - i64::from(from.slot(period + j)));
        }
        Ok(SelectionMatrix {
            capacity: m,
            period,
            row_sums,
        })
    }

    /// Builds an instance directly from its row sums; the first `period`
    /// entries are the block rows, the rest is the terminal tail.
    pub fn from_row_sums(capacity: u32, period: usize, row_sums: Vec<i64>) -> Self {
        assert!(row_sums.len() >= period, "tail rows missing");
        SelectionMatrix {
            capacity,
            period,
            row_sums,
        }
    }

    pub fn capacity(&self) -> u32 {
        self.capacity
    }

    pub fn period(&self) -> usize {
        self.period
    }

    pub fn row_sums(&self) -> &[i64] {
        &self.row_sums
    }

    /// Number of ways to pick one admissible 1 per column so that row `i`
    /// collects exactly `row_sums[i]` picks and the picked row indices are
    /// weakly decreasing within each block. Infeasible instances count 0.
    pub fn count_selections(&self) -> BigUint {
        if self.row_sums.iter().any(|&r| r < 0) {
            return BigUint::zero();
        }
        let mut residual: Vec<u32> = self.row_sums.iter().map(|&r| r as u32).collect();
        self.count_blocks(0, &mut residual)
    }

    fn count_blocks(&self, block: usize, residual: &mut Vec<u32>) -> BigUint {
        if block == self.period {
            return if residual.iter().all(|&r| r == 0) {
                BigUint::one()
            } else {
                BigUint::zero()
            };
        }
        // No later block can select row `block`, so it must be zeroed now.
        let need = residual[block];
        if need > self.capacity {
            return BigUint::zero();
        }
        residual[block] = 0;
        let total = self.pick(block, block + 1, self.capacity - need, residual);
        residual[block] = need;
        total
    }

    fn pick(&self, block: usize, row: usize, remaining: u32, residual: &mut Vec<u32>) -> BigUint {
        if remaining == 0 {
            return self.count_blocks(block + 1, residual);
        }
        if row >= residual.len() {
            return BigUint::zero();
        }
        let mut total = BigUint::zero();
        for count in (0..=residual[row].min(remaining)).rev() {
            residual[row] -= count;
            total += self.pick(block, row + 1, remaining - count, residual);
            residual[row] += count;
        }
        total
    }
}

/// The bucket DFS shared by the brute-force counters. Capacities are `m`
/// for the first `n` slots and `β`'s landing schedule after that, which
/// keeps the search finite and forces every surviving run into `β`.
struct BucketSearch {
    capacity: u32,
    steps: usize,
    caps: Vec<u32>,
    avoid: Option<Vec<u32>>,
    memo: HashMap<(usize, Vec<u32>), BigUint>,
}

impl BucketSearch {
    fn new(from: &State, to: &State, steps: usize) -> Result<(Self, Vec<u32>)> {
        // Reuse the parameter checks of the selection construction.
        SelectionMatrix::for_walks(from, to, steps)?;
        let tail = from.height().saturating_sub(steps).max(to.height());
        let len = steps + tail;
        let mut caps = vec![from.capacity(); steps];
        for j in 1..=tail {
            caps.push(to.slot(j));
        }
        let mut schedule = vec![0u32; len];
        for i in 1..=from.height() {
            schedule[i - 1] = from.slot(i);
        }
        Ok((
            BucketSearch {
                capacity: from.capacity(),
                steps,
                caps,
                avoid: None,
                memo: HashMap::new(),
            },
            schedule,
        ))
    }

    fn feasible(&self, schedule: &[u32]) -> bool {
        schedule
            .iter()
            .zip(&self.caps)
            .skip(self.steps)
            .all(|(&have, &cap)| have <= cap)
    }

    fn count(&mut self, step: usize, schedule: &[u32]) -> BigUint {
        if let Some(avoid) = &self.avoid {
            if step >= 1 && step < self.steps && suffix_matches(schedule, step, avoid) {
                return BigUint::zero();
            }
        }
        if step == self.steps {
            return BigUint::one();
        }
        let key = (step, schedule[step..].to_vec());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let mut total = BigUint::zero();
        let balls = schedule[step];
        let mut next = schedule.to_vec();
        self.spread(step, step + 1, balls, &mut next, &mut total);
        self.memo.insert(key, total.clone());
        total
    }

    fn spread(
        &mut self,
        step: usize,
        slot: usize,
        remaining: u32,
        schedule: &mut Vec<u32>,
        total: &mut BigUint,
    ) {
        if remaining == 0 {
            *total += self.count(step + 1, schedule);
            return;
        }
        if slot >= schedule.len() {
            return;
        }
        let spare = self.caps[slot] - schedule[slot];
        for count in (0..=spare.min(remaining)).rev() {
            schedule[slot] += count;
            self.spread(step, slot + 1, remaining - count, schedule, total);
            schedule[slot] -= count;
        }
    }
}

fn suffix_matches(schedule: &[u32], from: usize, slots: &[u32]) -> bool {
    let suffix = &schedule[from..];
    if suffix.len() < slots.len() {
        return false;
    }
    suffix[..slots.len()] == *slots && suffix[slots.len()..].iter().all(|&v| v == 0)
}

/// Number of walks of length `length` from `from` to `to` in the
/// unbounded state diagram, by direct bucket simulation.
pub fn count_walks_brute(from: &State, to: &State, length: usize) -> Result<BigUint> {
    let (mut search, schedule) = BucketSearch::new(from, to, length)?;
    if !search.feasible(&schedule) {
        return Ok(BigUint::zero());
    }
    Ok(search.count(0, &schedule))
}

/// Number of closed walks of length `length` at `origin` that do not
/// revisit `origin` before the final step.
pub fn count_first_return(origin: &State, length: usize) -> Result<BigUint> {
    if length == 0 {
        return Err(Error::InvalidArgument(
            "first-return walks need length at least 1".into(),
        ));
    }
    let (mut search, schedule) = BucketSearch::new(origin, origin, length)?;
    if !search.feasible(&schedule) {
        return Ok(BigUint::zero());
    }
    search.avoid = Some(origin.slots().to_vec());
    Ok(search.count(0, &schedule))
}

/// A walk in the state diagram: `length` steps, each recorded as the
/// state left behind and the throw multiset of the transition.
///
/// The state trajectory determines the throw labels (each state pair has
/// a unique label), so walks are ordered by their trajectories.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Walk {
    steps: Vec<(State, ThrowSet)>,
    end: State,
}

impl Ord for Walk {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let mine = self
            .steps
            .iter()
            .map(|(s, _)| s)
            .chain(std::iter::once(&self.end));
        let theirs = other
            .steps
            .iter()
            .map(|(s, _)| s)
            .chain(std::iter::once(&other.end));
        mine.cmp(theirs)
    }
}

impl PartialOrd for Walk {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Walk {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The `(state, throws)` pairs, one per step.
    pub fn steps(&self) -> &[(State, ThrowSet)] {
        &self.steps
    }

    /// The state reached after the final step.
    pub fn end(&self) -> &State {
        &self.end
    }

    /// The full state trajectory, `len() + 1` entries.
    pub fn states(&self) -> Vec<State> {
        let mut out: Vec<State> = self.steps.iter().map(|(s, _)| s.clone()).collect();
        out.push(self.end.clone());
        out
    }

    /// The throw sets in step order.
    pub fn throws(&self) -> impl Iterator<Item = &ThrowSet> {
        self.steps.iter().map(|(_, t)| t)
    }
}

/// Materializes the walks counted by [`count_walks_brute`] in
/// lexicographic order, truncated to `limit` entries
/// ([`DEFAULT_WALK_LIMIT`] when `None`).
pub fn enumerate_walks(
    from: &State,
    to: &State,
    length: usize,
    limit: Option<usize>,
) -> Result<Vec<Walk>> {
    let (search, schedule) = BucketSearch::new(from, to, length)?;
    let limit = limit.unwrap_or(DEFAULT_WALK_LIMIT);
    let mut walks = Vec::new();
    if !search.feasible(&schedule) || limit == 0 {
        return Ok(walks);
    }
    let mut steps = Vec::new();
    walk_dfs(&search, 0, &schedule, &mut steps, &mut walks, limit);
    Ok(walks)
}

fn walk_dfs(
    search: &BucketSearch,
    step: usize,
    schedule: &[u32],
    steps: &mut Vec<(State, ThrowSet)>,
    walks: &mut Vec<Walk>,
    limit: usize,
) {
    if walks.len() >= limit {
        return;
    }
    let here = state_at(search, schedule, step);
    if step == search.steps {
        walks.push(Walk {
            steps: steps.clone(),
            end: here,
        });
        return;
    }
    let balls = schedule[step];
    let mut options = Vec::new();
    let mut heights = Vec::new();
    let mut next = schedule.to_vec();
    spread_options(
        search,
        step,
        step + 1,
        balls,
        &mut next,
        &mut heights,
        &mut options,
    );
    options.sort_by(|a, b| a.0.cmp(&b.0));
    for (_, throws, next_schedule) in options {
        if walks.len() >= limit {
            return;
        }
        steps.push((here.clone(), throws));
        walk_dfs(search, step + 1, &next_schedule, steps, walks, limit);
        steps.pop();
    }
}

fn spread_options(
    search: &BucketSearch,
    step: usize,
    slot: usize,
    remaining: u32,
    schedule: &mut Vec<u32>,
    heights: &mut Vec<u32>,
    options: &mut Vec<(State, ThrowSet, Vec<u32>)>,
) {
    if remaining == 0 {
        let next_state = state_at(search, schedule, step + 1);
        let throws = ThrowSet::new(heights.clone(), search.capacity)
            .expect("at most capacity throws per step");
        options.push((next_state, throws, schedule.clone()));
        return;
    }
    if slot >= schedule.len() {
        return;
    }
    let spare = search.caps[slot] - schedule[slot];
    for count in (0..=spare.min(remaining)).rev() {
        schedule[slot] += count;
        for _ in 0..count {
            heights.push((slot - step) as u32);
        }
        spread_options(
            search,
            step,
            slot + 1,
            remaining - count,
            schedule,
            heights,
            options,
        );
        for _ in 0..count {
            heights.pop();
        }
        schedule[slot] -= count;
    }
}

fn state_at(search: &BucketSearch, schedule: &[u32], step: usize) -> State {
    State::new(schedule[step..].to_vec(), search.capacity)
        .expect("bucket capacities never exceed the hand capacity")
}
