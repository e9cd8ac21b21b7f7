//! Uniformly random seeding.

use alloc::vec::Vec;

use rand::seq::{index, SliceRandom};
use rand::Rng;

use super::{Assigner, Multiplicity, Problem, Selection};
use crate::error::Result;
use crate::graph::{NodeId, Topology};

/// Single variant: nodes in uniformly random order, each filling one of the open budget
/// slots chosen uniformly among those it is eligible for. Multiple variant: each behavior
/// independently draws its seeds uniformly from its eligible nodes.
pub fn random_seeds<T, R>(p: &Problem<'_, T>, rng: &mut R) -> Result<Selection>
where
    T: Topology + ?Sized,
    R: Rng + ?Sized,
{
    let mut a = Assigner::new(p)?;
    let n = a.node_count();
    match p.flags.multiplicity {
        Multiplicity::Single => {
            let mut order: Vec<NodeId> = (0..n).collect();
            order.shuffle(rng);
            for v in order {
                if a.done() {
                    break;
                }
                let slots: usize = (0..a.k()).filter(|&i| a.eligible(v, i)).map(|i| a.remaining()[i]).sum();
                if slots == 0 {
                    continue;
                }
                let mut x = rng.gen_range(0..slots);
                for i in 0..a.k() {
                    if !a.eligible(v, i) {
                        continue;
                    }
                    if x < a.remaining()[i] {
                        a.assign(v, i);
                        break;
                    }
                    x -= a.remaining()[i];
                }
            }
        }
        Multiplicity::Multiple => {
            for i in 0..a.k() {
                let pool: Vec<NodeId> = (0..n).filter(|&v| a.eligible(v, i)).collect();
                let m = a.remaining()[i].min(pool.len());
                let mut picked: Vec<NodeId> = index::sample(rng, pool.len(), m).into_iter().map(|j| pool[j]).collect();
                picked.sort_unstable();
                for v in picked {
                    a.assign(v, i);
                }
            }
        }
    }
    Ok(a.finish())
}
