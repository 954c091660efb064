//! Multiplex siteswap notation: parsing, validation, simulation, and the
//! correspondence with walks in the state diagram.
//!
//! A pattern is a sequence of throw multisets, one per beat, written as
//! bracketed blocks: `[2,0][3,1][3,3][0,0]`. Each block holds exactly `m`
//! heights (0 for a no-throw). A pattern of period `n` is valid when the
//! landing beats `i + T_i (mod n)` cover every residue exactly `m` times
//! and the average throw height is an integer (the ball count).

use std::fmt;

use crate::error::{Error, Result};
use crate::oracle::Walk;
use crate::state::{State, ThrowSet};

/// A multiplex siteswap pattern: `period()` throw multisets of exactly
/// `capacity()` heights each, every multiset stored weakly decreasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiteswapPattern {
    capacity: u32,
    throws: Vec<ThrowSet>,
}

impl SiteswapPattern {
    /// Builds a pattern from throw sets; at least one block is required.
    pub fn new(throws: Vec<ThrowSet>, capacity: u32) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::ZeroCapacity);
        }
        if throws.is_empty() {
            return Err(Error::InvalidArgument(
                "a pattern needs at least one block".into(),
            ));
        }
        for (i, t) in throws.iter().enumerate() {
            if t.len() != capacity as usize {
                return Err(Error::BlockTooWide {
                    block: i + 1,
                    found: t.len(),
                    capacity,
                });
            }
        }
        Ok(SiteswapPattern { capacity, throws })
    }

    /// Parses bracket notation, inferring the hand capacity as the widest
    /// block and zero-padding shorter blocks.
    pub fn parse(text: &str) -> Result<Self> {
        Self::parse_blocks(text, None)
    }

    /// Parses bracket notation against an explicit hand capacity; blocks
    /// wider than `capacity` are rejected, shorter ones zero-padded.
    pub fn parse_with_capacity(text: &str, capacity: u32) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::ZeroCapacity);
        }
        Self::parse_blocks(text, Some(capacity))
    }

    fn parse_blocks(text: &str, capacity: Option<u32>) -> Result<Self> {
        let blocks = lex_blocks(text)?;
        let widest = blocks.iter().map(Vec::len).max().unwrap_or(0);
        let capacity = match capacity {
            Some(m) => {
                if let Some((i, block)) = blocks
                    .iter()
                    .enumerate()
                    .find(|(_, b)| b.len() > m as usize)
                {
                    return Err(Error::BlockTooWide {
                        block: i + 1,
                        found: block.len(),
                        capacity: m,
                    });
                }
                m
            }
            None => widest as u32,
        };
        let throws = blocks
            .into_iter()
            .map(|heights| ThrowSet::new(heights, capacity))
            .collect::<Result<Vec<_>>>()?;
        SiteswapPattern::new(throws, capacity)
    }

    pub fn capacity(&self) -> u32 {
        self.capacity
    }

    /// Period `n`: the number of blocks.
    pub fn period(&self) -> usize {
        self.throws.len()
    }

    pub fn throws(&self) -> &[ThrowSet] {
        &self.throws
    }

    /// Sum of all throw heights across the pattern.
    pub fn throw_total(&self) -> u32 {
        self.throws.iter().map(ThrowSet::total).sum()
    }

    /// The ball count `(1/n) Σ Σ x`, when it is an integer.
    pub fn ball_count(&self) -> Option<u32> {
        let total = self.throw_total();
        let n = self.period() as u32;
        total.is_multiple_of(n).then(|| total / n)
    }

    /// Checks the two pattern-global validity conditions: residue cover
    /// and integer ball count.
    pub fn validate(&self) -> ValidityReport {
        let n = self.period();
        let mut residues = vec![0u32; n];
        for (i, block) in self.throws.iter().enumerate() {
            for &x in block.heights() {
                // Residues represented in 1..=n: beat i+1 plus height x.
                let landing = (i + 1 + x as usize) % n;
                let residue = if landing == 0 { n } else { landing };
                residues[residue - 1] += 1;
            }
        }
        ValidityReport {
            capacity: self.capacity,
            period: n,
            throw_total: self.throw_total(),
            residue_counts: residues,
        }
    }

    /// Runs the pattern as bucket transitions from `start`, returning the
    /// full trajectory of `period() + 1` states.
    pub fn simulate(&self, start: &State) -> Result<Vec<State>> {
        if start.capacity() != self.capacity {
            return Err(Error::ParameterMismatch(format!(
                "state capacity {} differs from pattern capacity {}",
                start.capacity(),
                self.capacity
            )));
        }
        let mut trajectory = vec![start.clone()];
        for (i, block) in self.throws.iter().enumerate() {
            let step = i + 1;
            let current = trajectory.last().expect("trajectory is never empty");
            let balls = current.slot(1);
            let rethrown = block.real_throws().count();
            if rethrown != balls as usize {
                return Err(Error::ThrowCountMismatch {
                    step,
                    balls,
                    throws: rethrown,
                });
            }
            let height_needed = block.heights().first().copied().unwrap_or(0) as usize;
            let mut slots: Vec<u32> = (2..=current.height().max(1).max(height_needed + 1))
                .map(|j| current.slot(j))
                .collect();
            for x in block.real_throws() {
                let target = x as usize - 1;
                if slots.len() <= target {
                    slots.resize(target + 1, 0);
                }
                if slots[target] == self.capacity {
                    return Err(Error::ThrowOverCapacity { step, height: x });
                }
                slots[target] += 1;
            }
            trajectory.push(State::new(slots, self.capacity).expect("capacity checked per throw"));
        }
        Ok(trajectory)
    }

    /// The pattern traced by a walk; closed walks produce patterns that
    /// pass [`validate`](Self::validate).
    pub fn from_walk(walk: &Walk) -> Result<Self> {
        if walk.is_empty() {
            return Err(Error::EmptyWalk);
        }
        let start = &walk.steps()[0].0;
        let pattern = SiteswapPattern::new(walk.throws().cloned().collect(), start.capacity())?;
        let trajectory = pattern
            .simulate(start)
            .map_err(|_| Error::InvalidWalk { step: 1 })?;
        let recorded = walk.states();
        if let Some(step) = (0..recorded.len()).find(|&i| trajectory[i] != recorded[i]) {
            return Err(Error::InvalidWalk { step });
        }
        Ok(pattern)
    }

    /// The state induced by repeating the pattern indefinitely in the
    /// past: slot `i` collects the throws that land `i` beats after the
    /// cycle boundary. Fails if some slot would exceed the capacity.
    pub fn induced_state(&self) -> Result<State> {
        let n = self.period();
        let max_height = self
            .throws
            .iter()
            .flat_map(|t| t.heights().iter().copied())
            .max()
            .unwrap_or(0) as usize;
        let mut slots = vec![0u32; max_height];
        for (j, block) in self.throws.iter().enumerate() {
            for x in block.real_throws() {
                for i in 1..=x as usize {
                    // The copy thrown at beat i − x (≤ 0) lands at beat i
                    // exactly when that beat hits pattern position j + 1.
                    let lands_here =
                        (i as i64 - i64::from(x) - (j as i64 + 1)).rem_euclid(n as i64) == 0;
                    if lands_here {
                        slots[i - 1] += 1;
                    }
                }
            }
        }
        State::new(slots, self.capacity)
    }
}

impl fmt::Display for SiteswapPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in &self.throws {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// The outcome of [`SiteswapPattern::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityReport {
    capacity: u32,
    period: usize,
    throw_total: u32,
    residue_counts: Vec<u32>,
}

impl ValidityReport {
    /// How many landings fall on each residue `1..=n`; all entries must
    /// equal the hand capacity.
    pub fn residue_counts(&self) -> &[u32] {
        &self.residue_counts
    }

    pub fn residues_ok(&self) -> bool {
        self.residue_counts.iter().all(|&c| c == self.capacity)
    }

    /// The ball count when the average throw height is an integer.
    pub fn ball_count(&self) -> Option<u32> {
        let n = self.period as u32;
        self.throw_total
            .is_multiple_of(n)
            .then(|| self.throw_total / n)
    }

    pub fn is_valid(&self) -> bool {
        self.residues_ok() && self.ball_count().is_some()
    }
}

fn lex_blocks(text: &str) -> Result<Vec<Vec<u32>>> {
    let bytes = text.as_bytes();
    let mut blocks = Vec::new();
    let mut pos = 0;
    while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
        pos += 1;
    }
    if pos == bytes.len() {
        return Err(Error::Syntax {
            offset: pos,
            message: "expected '['".into(),
        });
    }
    while pos < bytes.len() {
        if bytes[pos] != b'[' {
            return Err(Error::Syntax {
                offset: pos,
                message: "expected '['".into(),
            });
        }
        pos += 1;
        let mut heights = Vec::new();
        loop {
            let start = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if pos == start {
                return Err(Error::Syntax {
                    offset: pos,
                    message: "expected a throw height".into(),
                });
            }
            let height: u32 = text[start..pos].parse().map_err(|_| Error::Syntax {
                offset: start,
                message: "throw height out of range".into(),
            })?;
            heights.push(height);
            match bytes.get(pos) {
                Some(b',') => pos += 1,
                Some(b']') => {
                    pos += 1;
                    break;
                }
                _ => {
                    return Err(Error::Syntax {
                        offset: pos,
                        message: "expected ',' or ']'".into(),
                    })
                }
            }
        }
        blocks.push(heights);
        while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
    }
    Ok(blocks)
}
