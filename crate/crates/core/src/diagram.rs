//! The finite state diagram obtained by capping throw heights, and walk
//! counting through powers of its adjacency matrix.
//!
//! Capping the maximum height at `H` makes the diagram finite, so the
//! number of walks of length `n` between two states is entry `(α, β)` of
//! the `n`-th power of the adjacency matrix. For `H ≥ n + max(h(α), h(β))`
//! the cap cannot bite and the counts agree with the unbounded diagram.

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::state::State;

/// All states of `balls` balls with height at most `height_cap`, together
/// with the 0-1 adjacency matrix of the capped state diagram.
///
/// The adjacency matrix is dense, which is fine at desk scale; builds
/// that would exceed [`MAX_STATES`] states are rejected up front.
#[derive(Debug, Clone)]
pub struct HeightCappedDiagram {
    balls: u32,
    capacity: u32,
    height_cap: usize,
    states: Vec<State>,
    adjacency: SquareMatrix,
}

/// Upper bound on the number of states a diagram may hold.
pub const MAX_STATES: usize = 4096;

impl HeightCappedDiagram {
    /// Enumerates the states and edges for the given parameters.
    pub fn new(balls: u32, capacity: u32, height_cap: usize) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::ZeroCapacity);
        }
        if (height_cap as u64) * u64::from(capacity) < u64::from(balls) {
            return Err(Error::InvalidArgument(format!(
                "no state of height ≤ {height_cap} holds {balls} balls with capacity {capacity}"
            )));
        }
        // A run of full slots can start at any of at least
        // height_cap − balls + 1 positions, so a cap beyond
        // MAX_STATES + balls always overflows the state limit.
        if height_cap > MAX_STATES + balls as usize {
            return Err(Error::InvalidArgument(format!(
                "a cap of {height_cap} yields more than {MAX_STATES} states"
            )));
        }
        let count = bounded_composition_count(balls, capacity, height_cap);
        if count > MAX_STATES as u128 {
            return Err(Error::InvalidArgument(format!(
                "the capped diagram needs {count}+ states; the dense representation supports at most {MAX_STATES}"
            )));
        }
        let mut states = Vec::new();
        let mut slots = vec![0u32; height_cap];
        place_balls(balls, 0, capacity, &mut slots, &mut states);
        states.sort();
        let mut adjacency = SquareMatrix::zero(states.len());
        for (i, state) in states.iter().enumerate() {
            for (succ, _) in state.successors(height_cap)? {
                let j = states
                    .binary_search(&succ)
                    .expect("successors stay below the height cap");
                adjacency.set(i, j, BigUint::one());
            }
        }
        Ok(HeightCappedDiagram {
            balls,
            capacity,
            height_cap,
            states,
            adjacency,
        })
    }

    pub fn balls(&self) -> u32 {
        self.balls
    }

    pub fn capacity(&self) -> u32 {
        self.capacity
    }

    pub fn height_cap(&self) -> usize {
        self.height_cap
    }

    /// The states of the diagram in lexicographic order.
    pub fn states(&self) -> &[State] {
        &self.states
    }

    /// Position of a state in [`states`](Self::states).
    pub fn index_of(&self, state: &State) -> Result<usize> {
        if state.capacity() != self.capacity || state.balls() != self.balls {
            return Err(Error::ParameterMismatch(format!(
                "state {state} does not match a ({}, {}) diagram",
                self.balls, self.capacity
            )));
        }
        if state.height() > self.height_cap {
            return Err(Error::HeightExceedsCap {
                height: state.height(),
                cap: self.height_cap,
            });
        }
        self.states
            .binary_search(state)
            .map_err(|_| Error::UnknownState {
                state: state.to_string(),
            })
    }

    /// True when `from → to` is an edge.
    pub fn has_edge(&self, from: &State, to: &State) -> Result<bool> {
        let i = self.index_of(from)?;
        let j = self.index_of(to)?;
        Ok(self.adjacency.get(i, j).is_one())
    }

    /// Number of walks of length `n` from `from` to `to`, as entry
    /// `(from, to)` of the `n`-th adjacency power.
    pub fn count_walks(&self, from: &State, to: &State, length: usize) -> Result<BigUint> {
        let i = self.index_of(from)?;
        let j = self.index_of(to)?;
        Ok(self.adjacency.pow(length).get(i, j).clone())
    }

    /// All-pairs walk counts for one length, computing the adjacency power
    /// once.
    pub fn walk_counts(&self, length: usize) -> WalkCounts<'_> {
        WalkCounts {
            diagram: self,
            counts: self.adjacency.pow(length),
        }
    }
}

/// The `n`-th adjacency power of a diagram, queried by state pair.
#[derive(Debug)]
pub struct WalkCounts<'a> {
    diagram: &'a HeightCappedDiagram,
    counts: SquareMatrix,
}

impl WalkCounts<'_> {
    pub fn count(&self, from: &State, to: &State) -> Result<&BigUint> {
        let i = self.diagram.index_of(from)?;
        let j = self.diagram.index_of(to)?;
        Ok(self.counts.get(i, j))
    }
}

/// Number of slot vectors of the given length with entries at most
/// `capacity` summing to `balls`, clamped just above [`MAX_STATES`].
fn bounded_composition_count(balls: u32, capacity: u32, slots: usize) -> u128 {
    let b = balls as usize;
    let clamp = MAX_STATES as u128 + 1;
    let mut ways = vec![0u128; b + 1];
    ways[0] = 1;
    for _ in 0..slots {
        let mut next = vec![0u128; b + 1];
        for (total, slot) in next.iter_mut().enumerate() {
            let mut acc = 0u128;
            for take in 0..=capacity.min(total as u32) {
                acc += ways[total - take as usize];
            }
            *slot = acc.min(clamp);
        }
        ways = next;
    }
    ways[b]
}

/// Drops each ball into a slot no earlier than the previous one, so the
/// recursion depth is the ball count rather than the height cap.
fn place_balls(
    remaining: u32,
    first_slot: usize,
    capacity: u32,
    slots: &mut Vec<u32>,
    out: &mut Vec<State>,
) {
    if remaining == 0 {
        out.push(State::new(slots.clone(), capacity).expect("counts bounded by capacity"));
        return;
    }
    for position in first_slot..slots.len() {
        if slots[position] < capacity {
            slots[position] += 1;
            place_balls(remaining - 1, position, capacity, slots, out);
            slots[position] -= 1;
        }
    }
}
