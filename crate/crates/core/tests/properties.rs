//! Property tests for text round trips and cap monotonicity.

use proptest::prelude::*;

use multiplex_core::{HeightCappedDiagram, SiteswapPattern, State};

fn pattern_text() -> impl Strategy<Value = (String, u32)> {
    (1u32..=3, 1usize..=4).prop_flat_map(|(m, n)| {
        proptest::collection::vec(proptest::collection::vec(0u32..=9, 1..=m as usize), n..=n)
            .prop_map(move |blocks| {
                let text: String = blocks
                    .iter()
                    .map(|b| {
                        let inner: Vec<String> = b.iter().map(u32::to_string).collect();
                        format!("[{}]", inner.join(","))
                    })
                    .collect();
                (text, m)
            })
    })
}

proptest! {
    #[test]
    fn pattern_parse_format_parse_is_identity((text, m) in pattern_text()) {
        let parsed = SiteswapPattern::parse_with_capacity(&text, m).unwrap();
        let reparsed = SiteswapPattern::parse_with_capacity(&parsed.to_string(), m).unwrap();
        prop_assert_eq!(&reparsed, &parsed);
        // Capacity inference agrees whenever some block is full-width.
        if parsed.throws().iter().any(|t| t.heights().iter().filter(|&&h| h > 0).count() == m as usize) {
            let inferred = SiteswapPattern::parse(&parsed.to_string()).unwrap();
            prop_assert_eq!(inferred.capacity(), m);
        }
    }

    #[test]
    fn pattern_parser_never_panics(text in "[\\[\\],0-9 x]{0,24}") {
        let _ = SiteswapPattern::parse(&text);
        let _ = SiteswapPattern::parse_with_capacity(&text, 2);
    }

    #[test]
    fn state_text_round_trips(slots in proptest::collection::vec(0u32..=3, 0..=5)) {
        let state = match State::new(slots, 3) {
            Ok(s) => s,
            Err(_) => unreachable!("slots bounded by capacity"),
        };
        let reparsed = State::parse(&state.to_string(), 3).unwrap();
        prop_assert_eq!(reparsed, state);
    }

    #[test]
    fn capped_counts_are_monotone_in_the_cap(
        from_slots in proptest::collection::vec(0u32..=2, 1..=3),
        to_pick in any::<prop::sample::Index>(),
        n in 0usize..=4,
    ) {
        let balls: u32 = from_slots.iter().sum();
        let from = State::new(from_slots, 2).unwrap();
        // Pick the target among all states of the same ball count.
        let universe = HeightCappedDiagram::new(balls, 2, 3).unwrap().states().to_vec();
        let to = to_pick.get(&universe).clone();
        let bound = n + from.height().max(to.height());
        let mut last = None;
        for cap in from.height().max(to.height()).max(2)..=bound + 2 {
            let count = HeightCappedDiagram::new(balls, 2, cap)
                .unwrap()
                .count_walks(&from, &to, n)
                .unwrap();
            if let Some(prev) = last {
                prop_assert!(count >= prev);
            }
            if cap >= bound {
                prop_assert_eq!(&count, &multiplex_core::count_walks_brute(&from, &to, n).unwrap());
            }
            last = Some(count);
        }
    }
}
