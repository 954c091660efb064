//! Juggling states (landing schedules) and the edge relation of the
//! multiplex state diagram.
//!
//! A state `⟨a_1, a_2, …⟩` records how many balls are scheduled to land
//! `i` beats from now. With hand capacity `m`, every slot holds at most
//! `m` balls, and a transition shifts every slot down by one and
//! redistributes the balls of the bottom slot.

use std::fmt;

use crate::error::{Error, Result};

/// A landing schedule: `slots[i]` balls land `i + 1` beats from now.
///
/// Trailing zeros are truncated on construction, so equality is
/// structural and the height of the state is simply `slots.len()`.
/// States are immutable value objects.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct State {
    slots: Vec<u32>,
    capacity: u32,
}

impl State {
    /// Builds a state, validating slot counts against the hand capacity.
    pub fn new(mut slots: Vec<u32>, capacity: u32) -> Result<Self> {
        if capacity == 0 {
            return Err(Error::ZeroCapacity);
        }
        for (i, &count) in slots.iter().enumerate() {
            if count > capacity {
                return Err(Error::SlotOverCapacity {
                    index: i + 1,
                    count,
                    capacity,
                });
            }
        }
        while slots.last() == Some(&0) {
            slots.pop();
        }
        Ok(State { slots, capacity })
    }

    /// The state with no balls in the air.
    pub fn empty(capacity: u32) -> Result<Self> {
        State::new(Vec::new(), capacity)
    }

    /// Parses the comma-separated slot format, e.g. `"1,2"` for ⟨1,2⟩.
    /// The empty state is written `""` or `"0"`.
    pub fn parse(text: &str, capacity: u32) -> Result<Self> {
        let trimmed = text.trim();
        if trimmed.is_empty() {
            return State::empty(capacity);
        }
        let mut slots = Vec::new();
        let mut offset = 0;
        for piece in trimmed.split(',') {
            let token = piece.trim();
            if token.is_empty() {
                return Err(Error::Syntax {
                    offset,
                    message: "expected a slot count".into(),
                });
            }
            let value: u32 = token.parse().map_err(|_| Error::Syntax {
                offset,
                message: format!("invalid slot count '{token}'"),
            })?;
            slots.push(value);
            offset += piece.len() + 1;
        }
        State::new(slots, capacity)
    }

    /// Slot counts with trailing zeros removed.
    pub fn slots(&self) -> &[u32] {
        &self.slots
    }

    /// Hand capacity `m`.
    pub fn capacity(&self) -> u32 {
        self.capacity
    }

    /// Number of balls `b`.
    pub fn balls(&self) -> u32 {
        self.slots.iter().sum()
    }

    /// Height `h(α)`: the largest slot index holding a ball, 0 when empty.
    pub fn height(&self) -> usize {
        self.slots.len()
    }

    /// Slot count at a 1-based index, reading 0 past the height.
    pub fn slot(&self, index: usize) -> u32 {
        if index == 0 || index > self.slots.len() {
            0
        } else {
            self.slots[index - 1]
        }
    }

    fn check_compatible(&self, other: &State) -> Result<()> {
        if self.capacity != other.capacity {
            return Err(Error::ParameterMismatch(format!(
                "hand capacities differ ({} vs {})",
                self.capacity, other.capacity
            )));
        }
        if self.balls() != other.balls() {
            return Err(Error::ParameterMismatch(format!(
                "ball counts differ ({} vs {})",
                self.balls(),
                other.balls()
            )));
        }
        Ok(())
    }

    /// Whether `self → to` is an edge of the state diagram: after the
    /// shift, every slot of `to` must absorb the balls already scheduled,
    /// i.e. `a_i ≤ b_{i−1}` for all `i ≥ 2`.
    pub fn is_edge(&self, to: &State) -> Result<bool> {
        self.check_compatible(to)?;
        Ok((2..=self.height()).all(|i| self.slot(i) <= to.slot(i - 1)))
    }

    /// All states reachable in one transition without exceeding
    /// `height_cap`, each paired with the unique throw set labelling the
    /// edge. Sorted lexicographically by state.
    pub fn successors(&self, height_cap: usize) -> Result<Vec<(State, ThrowSet)>> {
        if self.height() > 0 && height_cap < self.height() - 1 {
            return Err(Error::HeightExceedsCap {
                height: self.height() - 1,
                cap: height_cap,
            });
        }
        let thrown = self.slot(1);
        let mut shifted: Vec<u32> = (2..=height_cap + 1).map(|i| self.slot(i)).collect();
        let mut out = Vec::new();
        let mut heights = Vec::new();
        self.distribute(&mut shifted, 1, thrown, &mut heights, &mut out);
        out.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(out)
    }

    /// Drops the rethrown balls one at a time into slots no lower than
    /// the previous ball, so each throw multiset comes up exactly once.
    fn distribute(
        &self,
        filled: &mut Vec<u32>,
        min_position: usize,
        remaining: u32,
        heights: &mut Vec<u32>,
        out: &mut Vec<(State, ThrowSet)>,
    ) {
        if remaining == 0 {
            let state = State::new(filled.clone(), self.capacity)
                .expect("slot counts stay within capacity");
            let mut all = heights.clone();
            all.resize(self.capacity as usize, 0);
            out.push((state, ThrowSet::from_heights(all)));
            return;
        }
        for position in min_position..=filled.len() {
            if filled[position - 1] < self.capacity {
                filled[position - 1] += 1;
                heights.push(position as u32);
                self.distribute(filled, position, remaining - 1, heights, out);
                heights.pop();
                filled[position - 1] -= 1;
            }
        }
    }
}

impl fmt::Display for State {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.slots.is_empty() {
            return write!(f, "0");
        }
        let text: Vec<String> = self.slots.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", text.join(","))
    }
}

/// The multiset `T_i` of throw heights for one transition, stored weakly
/// decreasing. Height 0 marks a no-throw, so the multiset always has
/// exactly `m` entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThrowSet {
    heights: Vec<u32>,
}

impl ThrowSet {
    /// Builds a throw set for hand capacity `m`, zero-padding up to `m`
    /// entries and sorting weakly decreasing.
    pub fn new(heights: Vec<u32>, capacity: u32) -> Result<Self> {
        if heights.len() > capacity as usize {
            return Err(Error::BlockTooWide {
                block: 1,
                found: heights.len(),
                capacity,
            });
        }
        let mut padded = heights;
        padded.resize(capacity as usize, 0);
        Ok(Self::from_heights(padded))
    }

    fn from_heights(mut heights: Vec<u32>) -> Self {
        heights.sort_unstable_by(|a, b| b.cmp(a));
        ThrowSet { heights }
    }

    /// Throw heights, weakly decreasing, including 0 entries for no-throws.
    pub fn heights(&self) -> &[u32] {
        &self.heights
    }

    /// Number of entries (always the hand capacity of its pattern).
    pub fn len(&self) -> usize {
        self.heights.len()
    }

    /// True when every entry is a no-throw.
    pub fn is_empty(&self) -> bool {
        self.heights.iter().all(|&h| h == 0)
    }

    /// The nonzero heights, i.e. the balls actually rethrown.
    pub fn real_throws(&self) -> impl Iterator<Item = u32> + '_ {
        self.heights.iter().copied().filter(|&h| h > 0)
    }

    /// Sum of all throw heights.
    pub fn total(&self) -> u32 {
        self.heights.iter().sum()
    }
}

impl fmt::Display for ThrowSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.heights.iter().map(|h| h.to_string()).collect();
        write!(f, "[{}]", text.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(slots: &[u32], m: u32) -> State {
        State::new(slots.to_vec(), m).unwrap()
    }

    #[test]
    fn construction_truncates_trailing_zeros() {
        let s = st(&[1, 2, 0, 0], 2);
        assert_eq!(s.slots(), &[1, 2]);
        assert_eq!(s.height(), 2);
        assert_eq!(s.balls(), 3);
    }

    #[test]
    fn construction_rejects_overfull_slot() {
        let err = State::new(vec![1, 3], 2).unwrap_err();
        assert_eq!(
            err,
            Error::SlotOverCapacity {
                index: 2,
                count: 3,
                capacity: 2
            }
        );
    }

    #[test]
    fn parse_and_display_round_trip() {
        let s = State::parse("1,2", 2).unwrap();
        assert_eq!(s, st(&[1, 2], 2));
        assert_eq!(s.to_string(), "1,2");
        assert_eq!(State::parse("", 2).unwrap(), State::empty(2).unwrap());
        assert_eq!(State::parse("0", 2).unwrap(), State::empty(2).unwrap());
        assert_eq!(State::empty(2).unwrap().to_string(), "0");
        assert_eq!(State::parse("2,0,1", 3).unwrap().slots(), &[2, 0, 1]);
    }

    #[test]
    fn parse_reports_offsets() {
        assert!(matches!(
            State::parse("1,,2", 2),
            Err(Error::Syntax { offset: 2, .. })
        ));
        assert!(matches!(
            State::parse("1,x", 2),
            Err(Error::Syntax { offset: 2, .. })
        ));
    }

    #[test]
    fn edge_examples() {
        // ⟨1,2⟩ → ⟨2,1⟩ with m = 2 appears in the worked 4-cycle.
        assert!(st(&[1, 2], 2).is_edge(&st(&[2, 1], 2)).unwrap());
        // All three balls rethrown to height 1.
        assert!(st(&[3], 3).is_edge(&st(&[3], 3)).unwrap());
        // The shift of ⟨0,3⟩ forces three balls into the bottom slot, so
        // ⟨3⟩ is the only successor.
        assert!(!st(&[0, 3], 3).is_edge(&st(&[1, 2], 3)).unwrap());
        let succ = st(&[0, 3], 3).successors(3).unwrap();
        assert_eq!(succ.len(), 1);
        assert_eq!(succ[0].0, st(&[3], 3));
    }

    #[test]
    fn edge_rejects_mismatched_parameters() {
        assert!(st(&[2], 2).is_edge(&st(&[2], 3)).is_err());
        assert!(st(&[2], 2).is_edge(&st(&[1], 2)).is_err());
    }

    #[test]
    fn successors_of_example_state() {
        let succ = st(&[1, 2], 2).successors(3).unwrap();
        let want = (st(&[2, 1], 2), ThrowSet::new(vec![2, 0], 2).unwrap());
        assert!(succ.contains(&want));
    }

    #[test]
    fn successors_of_empty_state() {
        let empty = State::empty(2).unwrap();
        let succ = empty.successors(4).unwrap();
        assert_eq!(
            succ,
            vec![(empty.clone(), ThrowSet::new(vec![], 2).unwrap())]
        );
    }

    #[test]
    fn successor_count_is_multiset_count() {
        // Throw multisets of 3 balls into heights {1,2}: {1,1,1}, {2,1,1},
        // {2,2,1}, {2,2,2}, enumerated by hand, giving states ⟨3⟩, ⟨2,1⟩,
        // ⟨1,2⟩ and ⟨0,3⟩.
        let succ = st(&[3], 3).successors(2).unwrap();
        assert_eq!(succ.len(), 4);
        let states: Vec<&State> = succ.iter().map(|(s, _)| s).collect();
        assert_eq!(
            states,
            vec![
                &st(&[0, 3], 3),
                &st(&[1, 2], 3),
                &st(&[2, 1], 3),
                &st(&[3], 3)
            ]
        );
        let labels: Vec<String> = succ.iter().map(|(_, t)| t.to_string()).collect();
        assert_eq!(labels, vec!["[2,2,2]", "[2,2,1]", "[2,1,1]", "[1,1,1]"]);
    }

    #[test]
    fn pure_shift_when_bottom_slot_empty() {
        // Out-degree is 1 for every state with an empty bottom slot.
        for slots in [vec![0, 2], vec![0, 1, 1], vec![0, 0, 2]] {
            let s = State::new(slots, 2).unwrap();
            let succ = s.successors(4).unwrap();
            assert_eq!(succ.len(), 1, "state {s}");
            assert!(succ[0].1.is_empty());
        }
    }

    #[test]
    fn successors_respect_height_cap() {
        let s = st(&[2], 2);
        let capped = s.successors(1).unwrap();
        assert_eq!(capped.len(), 1);
        assert_eq!(capped[0].0, s);
        assert!(st(&[1, 2], 2).successors(0).is_err());
    }

    #[test]
    fn throw_set_canonical_order() {
        let t = ThrowSet::new(vec![0, 2], 2).unwrap();
        assert_eq!(t.heights(), &[2, 0]);
        assert_eq!(t.to_string(), "[2,0]");
        assert_eq!(t.real_throws().collect::<Vec<_>>(), vec![2]);
        assert!(ThrowSet::new(vec![1, 2, 3], 2).is_err());
    }
}
