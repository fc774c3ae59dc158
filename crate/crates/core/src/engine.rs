//! Engine configuration shared by the heavy computations.

use std::collections::HashMap;
use std::sync::Mutex;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::backtrack::DEFAULT_NODE_BUDGET;
use crate::carter::Found;
use crate::group::PermGroup;

/// Default bound on explicit element enumeration.
pub const DEFAULT_ENUM_BUDGET: u64 = 100_000;

pub(crate) type MemoTable = HashMap<(usize, u64), Vec<(PermGroup, Found)>>;

/// Seed, budgets and the Carter memo table.
pub struct Engine {
    pub seed: u64,
    pub node_budget: u64,
    pub enum_budget: u64,
    pub(crate) memo: Mutex<MemoTable>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(0)
    }
}

impl Engine {
    pub fn new(seed: u64) -> Self {
        Engine {
            seed,
            node_budget: DEFAULT_NODE_BUDGET,
            enum_budget: DEFAULT_ENUM_BUDGET,
            memo: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_node_budget(mut self, budget: u64) -> Self {
        self.node_budget = budget;
        self
    }

    pub fn with_enum_budget(mut self, budget: u64) -> Self {
        self.enum_budget = budget;
        self
    }

    pub(crate) fn memo_get(&self, g: &PermGroup) -> Option<Found> {
        let key = (g.degree(), g.order());
        let memo = self.memo.lock().expect("memo lock");
        memo.get(&key)?
            .iter()
            .find(|(h, _)| h.same_group(g))
            .map(|(_, f)| f.clone())
    }

    pub(crate) fn memo_put(&self, g: &PermGroup, found: &Found) {
        let key = (g.degree(), g.order());
        let mut memo = self.memo.lock().expect("memo lock");
        let slot = memo.entry(key).or_default();
        if !slot.iter().any(|(h, _)| h.same_group(g)) {
            slot.push((g.clone(), found.clone()));
        }
    }

    /// Independent deterministic stream per call site.
    pub fn rng(&self, tag: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ tag.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }
}
