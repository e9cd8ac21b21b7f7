//! Exact 0/1 knapsack over a handful of behaviors.

use crate::mask::BehaviorMask;
use crate::COST_EPS;

/// One candidate behavior: its index, the value of adopting it and its cost.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Item {
    pub index: usize,
    pub value: f64,
    pub cost: f64,
}

/// Subset of `items` with maximum summed value whose summed cost fits `budget`.
///
/// Exhaustive over all `2^m` subsets. Among equal-value optima the lexicographically
/// smallest ascending index sequence wins, so the empty set beats zero-value additions.
/// Items must have distinct indices below 32 and be listed in ascending index order.
pub fn select_adoption_set(items: &[Item], budget: f64) -> BehaviorMask {
    debug_assert!(items.windows(2).all(|w| w[0].index < w[1].index));
    let m = items.len();
    debug_assert!(m < 32);
    let mut best = BehaviorMask::EMPTY;
    let mut best_value = 0.0;
    for subset in 1u32..(1u32 << m) {
        let mut cost = 0.0;
        let mut value = 0.0;
        let mut mask = BehaviorMask::EMPTY;
        let mut bits = subset;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            cost += items[j].cost;
            value += items[j].value;
            mask.insert(items[j].index);
        }
        if cost > budget + COST_EPS {
            continue;
        }
        if value > best_value || (value == best_value && mask.lex_less(best)) {
            best = mask;
            best_value = value;
        }
    }
    best
}
