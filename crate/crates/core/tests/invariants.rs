//! Cross-module identities checked on exhaustive desk-scale grids.

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use multiplex_core::{
    char_poly, count_walks_brute, periodic_gf, periodic_sequence, x_values, HeightCappedDiagram,
    LinearRecurrence, SelectionMatrix, SiteswapPattern, State, TransferMatrix,
};

#[test]
fn all_public_types_are_shareable_across_threads() {
    fn assert_send_sync<T: Send + Sync>() {}
    assert_send_sync::<State>();
    assert_send_sync::<multiplex_core::ThrowSet>();
    assert_send_sync::<HeightCappedDiagram>();
    assert_send_sync::<SelectionMatrix>();
    assert_send_sync::<multiplex_core::Walk>();
    assert_send_sync::<TransferMatrix>();
    assert_send_sync::<multiplex_core::PartCounts>();
    assert_send_sync::<multiplex_core::IntPolynomial>();
    assert_send_sync::<multiplex_core::RationalGF>();
    assert_send_sync::<multiplex_core::CountSequence>();
    assert_send_sync::<SiteswapPattern>();
}

fn states_up_to(balls: u32, capacity: u32, height: usize) -> Vec<State> {
    if u64::from(balls) > height as u64 * u64::from(capacity) {
        return Vec::new();
    }
    HeightCappedDiagram::new(balls, capacity, height)
        .unwrap()
        .states()
        .to_vec()
}

fn permutations(values: &[i64]) -> Vec<Vec<i64>> {
    if values.len() <= 1 {
        return vec![values.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..values.len() {
        let mut rest = values.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out.sort();
    out.dedup();
    out
}

#[test]
fn walk_counts_saturate_monotonically_in_the_cap() {
    let from = State::parse("2,1", 2).unwrap();
    let to = State::parse("1,2", 2).unwrap();
    for n in 0..=5usize {
        let bound = n + from.height().max(to.height());
        let mut last = BigUint::zero();
        for cap in 2..=bound + 2 {
            let count = HeightCappedDiagram::new(3, 2, cap)
                .unwrap()
                .count_walks(&from, &to, n)
                .unwrap();
            assert!(count >= last, "count dropped at cap {cap}, n={n}");
            if cap >= bound {
                assert_eq!(count, count_walks_brute(&from, &to, n).unwrap());
            }
            last = count;
        }
    }
}

#[test]
fn empty_bottom_slot_forces_a_unique_transition() {
    for m in 1..=3u32 {
        for state in states_up_to(3.min(m * 3), m, 3) {
            if state.slot(1) != 0 {
                continue;
            }
            let succ = state.successors(4).unwrap();
            assert_eq!(succ.len(), 1, "state {state}");
        }
    }
}

#[test]
fn terminal_row_sums_may_be_permuted() {
    // Noise-free tails only (n ≥ h(α)), as the correspondence is stated.
    for balls in 1..=3u32 {
        for m in 1..=3u32 {
            for alpha in states_up_to(balls, m, 2) {
                for beta in states_up_to(balls, m, 3) {
                    for n in alpha.height()..=4 {
                        let reference = SelectionMatrix::for_walks(&alpha, &beta, n)
                            .unwrap()
                            .count_selections();
                        assert_eq!(
                            reference,
                            count_walks_brute(&alpha, &beta, n).unwrap(),
                            "{alpha} -> {beta}, n={n}"
                        );
                        let rows = SelectionMatrix::for_walks(&alpha, &beta, n)
                            .unwrap()
                            .row_sums()
                            .to_vec();
                        let (noise, tail) = rows.split_at(n);
                        for permuted in permutations(tail) {
                            let mut shuffled = noise.to_vec();
                            shuffled.extend(permuted);
                            let count =
                                SelectionMatrix::from_row_sums(m, n, shuffled).count_selections();
                            assert_eq!(count, reference, "{alpha} -> {beta}, n={n}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn cayley_hamilton_annihilates_consecutive_x_vectors() {
    for (alpha_text, m) in [("3", 3u32), ("2,1", 3), ("1,2", 2), ("2", 2)] {
        let alpha = State::parse(alpha_text, m).unwrap();
        let matrix = TransferMatrix::build(alpha.balls(), m).unwrap();
        let p = char_poly(&matrix);
        let r = p.degree().unwrap();
        for k in 0..=5usize {
            for gamma in matrix.partitions() {
                let mut acc = BigInt::zero();
                for i in 0..=r {
                    let x = x_values(&alpha, k + i).unwrap();
                    acc += p.coeff(i) * BigInt::from(x[gamma].clone());
                }
                assert!(acc.is_zero(), "α={alpha}, γ=({gamma}), k={k}");
            }
        }
    }
}

#[test]
fn one_recurrence_serves_every_state_pair() {
    for balls in 1..=3u32 {
        for m in 1..=3u32 {
            let matrix = TransferMatrix::build(balls, m).unwrap();
            let recurrence = LinearRecurrence::from_char_poly(&char_poly(&matrix)).unwrap();
            let r = recurrence.order();
            for alpha in states_up_to(balls, m, 2) {
                for beta in states_up_to(balls, m, 2) {
                    let counts: Vec<BigInt> = (0..=8)
                        .map(|n| BigInt::from(count_walks_brute(&alpha, &beta, n).unwrap()))
                        .collect();
                    for n in alpha.height() + r..=8 {
                        let predicted = recurrence.next_term(&counts[..n]);
                        assert_eq!(counts[n], predicted, "{alpha} -> {beta}, n={n}");
                    }
                }
            }
        }
    }
}

#[test]
fn recurrence_terms_match_brute_force_for_table_configurations() {
    for (text, m) in [
        ("2", 2u32),
        ("1,1", 2),
        ("2,1", 2),
        ("1,1,1", 2),
        ("2,2", 2),
        ("3", 3),
        ("2,1", 3),
    ] {
        let origin = State::parse(text, m).unwrap();
        let seq = periodic_sequence(&origin, 7).unwrap();
        seq.spot_check(1).unwrap();
    }
}

#[test]
fn generating_functions_round_trip_to_twelve_terms() {
    for (text, m) in [
        ("2", 2u32),
        ("1,1", 2),
        ("2,1", 2),
        ("1,1,1", 2),
        ("2,2", 2),
        ("3", 3),
        ("2,1", 3),
        ("", 1),
    ] {
        let origin = State::parse(text, m).unwrap();
        let gf = periodic_gf(&origin).unwrap();
        let expanded: Vec<BigUint> = gf
            .expand(12)
            .into_iter()
            .map(|c| c.to_biguint().unwrap())
            .collect();
        assert_eq!(
            expanded.as_slice(),
            periodic_sequence(&origin, 12).unwrap().terms(),
            "origin {origin}"
        );
    }
}

#[test]
fn closed_walks_and_valid_patterns_correspond() {
    for balls in 0..=3u32 {
        for m in 1..=3u32 {
            for origin in states_up_to(balls, m, 3) {
                for n in 1..=4usize {
                    for walk in multiplex_core::enumerate_walks(&origin, &origin, n, None).unwrap()
                    {
                        let pattern = SiteswapPattern::from_walk(&walk).unwrap();
                        let report = pattern.validate();
                        assert!(report.is_valid(), "pattern {pattern} from {origin}");
                        assert_eq!(report.ball_count(), Some(balls));
                        assert_eq!(pattern.induced_state().unwrap(), origin);
                        let trajectory = pattern.simulate(&origin).unwrap();
                        assert_eq!(trajectory, walk.states());
                        for state in &trajectory {
                            assert_eq!(state.balls(), balls);
                        }
                    }
                }
            }
        }
    }
}
