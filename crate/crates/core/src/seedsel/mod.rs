//! Seed selection.
//!
//! Every heuristic fills a per-behavior seed budget `b` through an [`Assigner`], which enforces
//! the variant rules:
//!
//! * single (`S`): a node seeds at most one behavior; multiple (`M`): a node may seed several.
//! * top-up (`T`): a seed whose resource does not exceed the cost of what it now holds gets
//!   exactly that cost; no top-up (`NT`): a node is only given behaviors it can already afford.
//!
//! When a heuristic runs out of eligible nodes it stops and reports the shortfall.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::behavior::BehaviorSet;
use crate::diffuse::SeedAssignment;
use crate::error::{invalid, Error, Result};
use crate::graph::{NodeId, Topology};
use crate::mask::BehaviorMask;
use crate::COST_EPS;

mod ciw;
mod degree;
mod greedy;
mod random;

pub use ciw::{ciw, ciw_max_margin, ciw_ranked};
pub use degree::{degree_resource_ranked, naive_degree, naive_degree_knapsack, resource_degree, seed_everyone};
pub use greedy::{eia_incremental, kkt_greedy, TIE_TOLERANCE};
pub use random::random_seeds;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Multiplicity {
    #[default]
    Single,
    Multiple,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TopUp {
    #[default]
    TopUp,
    NoTopUp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct VariantFlags {
    pub multiplicity: Multiplicity,
    pub topup: TopUp,
}

impl VariantFlags {
    pub const S_T: VariantFlags = VariantFlags {
        multiplicity: Multiplicity::Single,
        topup: TopUp::TopUp,
    };
    pub const S_NT: VariantFlags = VariantFlags {
        multiplicity: Multiplicity::Single,
        topup: TopUp::NoTopUp,
    };
    pub const M_T: VariantFlags = VariantFlags {
        multiplicity: Multiplicity::Multiple,
        topup: TopUp::TopUp,
    };
    pub const M_NT: VariantFlags = VariantFlags {
        multiplicity: Multiplicity::Multiple,
        topup: TopUp::NoTopUp,
    };

    /// `S-T`, `M-NT`, ...
    pub fn label(self) -> &'static str {
        match (self.multiplicity, self.topup) {
            (Multiplicity::Single, TopUp::TopUp) => "S-T",
            (Multiplicity::Single, TopUp::NoTopUp) => "S-NT",
            (Multiplicity::Multiple, TopUp::TopUp) => "M-T",
            (Multiplicity::Multiple, TopUp::NoTopUp) => "M-NT",
        }
    }
}

/// Result of a seed selection.
#[derive(Clone, Debug, PartialEq)]
pub struct Selection {
    pub seeds: SeedAssignment,
    /// Resources after top-up; equal to the input where nothing was topped up.
    pub resources: Vec<f64>,
    /// Seeds per behavior that could not be placed.
    pub shortfall: Vec<usize>,
}

impl Selection {
    pub fn is_complete(&self) -> bool {
        self.shortfall.iter().all(|&s| s == 0)
    }
}

/// The inputs shared by all heuristics.
pub struct Problem<'a, T: ?Sized> {
    pub topo: &'a T,
    pub behaviors: &'a BehaviorSet,
    pub resources: &'a [f64],
    /// Required seeds per behavior.
    pub budget: &'a [usize],
    pub flags: VariantFlags,
}

impl<T: ?Sized> Clone for Problem<'_, T> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<T: ?Sized> Copy for Problem<'_, T> {}

impl<T: Topology + ?Sized> Problem<'_, T> {
    fn check(&self) -> Result<()> {
        if self.budget.len() != self.behaviors.k() {
            return Err(invalid("budget", "one entry per behavior is required"));
        }
        if self.resources.len() != self.topo.node_count() {
            return Err(invalid("resources", "length differs from node count"));
        }
        Ok(())
    }
}

/// Bookkeeping of a selection in progress.
#[derive(Clone, Debug)]
pub struct Assigner<'a> {
    behaviors: &'a BehaviorSet,
    flags: VariantFlags,
    held: Vec<BehaviorMask>,
    resources: Vec<f64>,
    remaining: Vec<usize>,
    seeds: SeedAssignment,
}

impl<'a> Assigner<'a> {
    pub fn new<T: Topology + ?Sized>(p: &Problem<'a, T>) -> Result<Self> {
        p.check()?;
        Ok(Assigner {
            behaviors: p.behaviors,
            flags: p.flags,
            held: vec![BehaviorMask::EMPTY; p.resources.len()],
            resources: p.resources.to_vec(),
            remaining: p.budget.to_vec(),
            seeds: SeedAssignment::new(p.behaviors.k()),
        })
    }

    pub fn node_count(&self) -> usize {
        self.held.len()
    }

    pub fn k(&self) -> usize {
        self.remaining.len()
    }

    pub fn remaining(&self) -> &[usize] {
        &self.remaining
    }

    pub fn resources(&self) -> &[f64] {
        &self.resources
    }

    pub fn held(&self, v: NodeId) -> BehaviorMask {
        self.held[v]
    }

    pub fn seeds(&self) -> &SeedAssignment {
        &self.seeds
    }

    pub fn done(&self) -> bool {
        self.remaining.iter().all(|&r| r == 0)
    }

    /// Whether `v` may still become a seed of `i` under the variant rules.
    pub fn eligible(&self, v: NodeId, i: usize) -> bool {
        if self.remaining[i] == 0 || self.held[v].contains(i) {
            return false;
        }
        if self.flags.multiplicity == Multiplicity::Single && !self.held[v].is_empty() {
            return false;
        }
        let need = self.behaviors.mask_cost(self.held[v].with(i));
        match self.flags.topup {
            TopUp::NoTopUp => need <= self.resources[v] + COST_EPS,
            // Resources live in [0, 1]; a top-up cannot lift a node past that.
            TopUp::TopUp => need <= 1.0 + COST_EPS,
        }
    }

    /// Resource `v` would have after being given `i`.
    pub fn resource_after(&self, v: NodeId, i: usize) -> f64 {
        let r = self.resources[v];
        match self.flags.topup {
            TopUp::NoTopUp => r,
            TopUp::TopUp => {
                let need = self.behaviors.mask_cost(self.held[v].with(i));
                if r <= need {
                    need
                } else {
                    r
                }
            }
        }
    }

    /// Makes `v` a seed of `i`, topping up its resource if the variant says so.
    pub fn assign(&mut self, v: NodeId, i: usize) {
        debug_assert!(self.eligible(v, i));
        self.resources[v] = self.resource_after(v, i);
        self.held[v].insert(i);
        self.seeds.insert(i, v);
        self.remaining[i] -= 1;
    }

    /// Records `v` as a seed of `i` without any eligibility or top-up rule.
    pub(crate) fn force(&mut self, v: NodeId, i: usize) {
        self.held[v].insert(i);
        self.seeds.insert(i, v);
        self.remaining[i] = self.remaining[i].saturating_sub(1);
    }

    pub fn finish(self) -> Selection {
        Selection {
            seeds: self.seeds,
            resources: self.resources,
            shortfall: self.remaining,
        }
    }
}

/// The `remaining[i]` best eligible nodes for behavior `i`, by score descending then id.
pub(crate) fn top_eligible(a: &Assigner<'_>, i: usize, score: &[f64]) -> Vec<NodeId> {
    let mut pool: Vec<NodeId> = (0..a.node_count()).filter(|&v| a.eligible(v, i)).collect();
    pool.sort_by(|&x, &y| score[y].total_cmp(&score[x]).then(x.cmp(&y)));
    pool.truncate(a.remaining()[i]);
    pool
}

/// Round structure shared by the ranked heuristics: each round every behavior proposes its
/// best remaining nodes, and each proposed node is resolved in ascending id order. A node
/// proposed by several behaviors gets one of them uniformly at random (`S`), or all of them in
/// random order (`M`). Rounds repeat until the budget is met or nobody is proposed.
pub(crate) fn ranked_rounds<R, F>(a: &mut Assigner<'_>, rng: &mut R, mut propose: F)
where
    R: Rng + ?Sized,
    F: FnMut(&Assigner<'_>) -> Vec<Vec<NodeId>>,
{
    while !a.done() {
        let lists = propose(a);
        let mut union: Vec<NodeId> = lists.iter().flatten().copied().collect();
        if union.is_empty() {
            break;
        }
        union.sort_unstable();
        union.dedup();
        for v in union {
            let mut js: Vec<usize> = (0..lists.len()).filter(|&i| lists[i].contains(&v)).collect();
            match a.flags.multiplicity {
                Multiplicity::Single => {
                    let j = js[rng.gen_range(0..js.len())];
                    if a.eligible(v, j) {
                        a.assign(v, j);
                    }
                }
                Multiplicity::Multiple => {
                    js.shuffle(rng);
                    for j in js {
                        if a.eligible(v, j) {
                            a.assign(v, j);
                        }
                    }
                }
            }
        }
    }
}

/// The selectable heuristics by name.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Heuristic {
    Random,
    DegreeNt,
    DegreeT,
    DegreeKnapsack,
    DegreeResource,
    CiwRank,
    CiwMargin,
    Eia,
    Kkt,
    /// Every node seeded with its utility-maximizing affordable behaviors; ignores the budget.
    All,
}

impl Heuristic {
    pub const ALL: [Heuristic; 10] = [
        Heuristic::Random,
        Heuristic::DegreeNt,
        Heuristic::DegreeT,
        Heuristic::DegreeKnapsack,
        Heuristic::DegreeResource,
        Heuristic::CiwRank,
        Heuristic::CiwMargin,
        Heuristic::Eia,
        Heuristic::Kkt,
        Heuristic::All,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Heuristic::Random => "random",
            Heuristic::DegreeNt => "degree-nt",
            Heuristic::DegreeT => "degree-t",
            Heuristic::DegreeKnapsack => "degree-knapsack",
            Heuristic::DegreeResource => "degree-resource",
            Heuristic::CiwRank => "ciw-rank",
            Heuristic::CiwMargin => "ciw-margin",
            Heuristic::Eia => "eia",
            Heuristic::Kkt => "kkt",
            Heuristic::All => "all",
        }
    }

    /// The greedy maximizers, which score every candidate seed each round.
    pub fn is_greedy(self) -> bool {
        matches!(self, Heuristic::Eia | Heuristic::Kkt)
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Heuristic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Heuristic::ALL
            .into_iter()
            .find(|h| h.name() == s)
            .ok_or(invalid("heuristic", "unknown heuristic name"))
    }
}
