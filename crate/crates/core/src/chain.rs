//! Stabilizer chains and deterministic Schreier–Sims.
//!
//! The chain is generic over the element type so the same code drives plain
//! permutation groups and homomorphisms, where each element carries the
//! source permutation it came from alongside the permutation that acts.

use rand::Rng;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Hard limits for index construction.
pub const MAX_ORDER: u128 = 1_000_000_000;
pub const MAX_DEGREE: usize = 10_000;

/// Above this many stored points a level keeps only its Schreier tree.
const EXPLICIT_LIMIT: usize = 1 << 22;

const NONE: u32 = u32::MAX;
const ROOT: u32 = u32::MAX - 1;

pub trait ChainElem: Clone + Send + Sync {
    fn act(&self, x: usize) -> usize;
    fn then(&self, other: &Self) -> Self;
    fn inv(&self) -> Self;
    fn acts_trivially(&self) -> bool;
    fn first_moved(&self) -> Option<usize>;
    /// True if the element is the identity in every component.
    fn is_identity(&self) -> bool {
        self.acts_trivially()
    }
}

impl ChainElem for Permutation {
    #[inline]
    fn act(&self, x: usize) -> usize {
        self.image(x)
    }
    #[inline]
    fn then(&self, other: &Self) -> Self {
        Permutation::then(self, other)
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
    fn acts_trivially(&self) -> bool {
        Permutation::is_identity(self)
    }
    fn first_moved(&self) -> Option<usize> {
        Permutation::first_moved(self)
    }
}

/// An acting permutation paired with the source element that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tracked {
    pub act: Permutation,
    pub src: Permutation,
}

impl ChainElem for Tracked {
    #[inline]
    fn act(&self, x: usize) -> usize {
        self.act.image(x)
    }
    fn then(&self, other: &Self) -> Self {
        Tracked {
            act: self.act.then(&other.act),
            src: self.src.then(&other.src),
        }
    }
    fn inv(&self) -> Self {
        Tracked {
            act: self.act.inverse(),
            src: self.src.inverse(),
        }
    }
    fn acts_trivially(&self) -> bool {
        self.act.is_identity()
    }
    fn first_moved(&self) -> Option<usize> {
        self.act.first_moved()
    }
    fn is_identity(&self) -> bool {
        self.act.is_identity() && self.src.is_identity()
    }
}

#[derive(Clone, Debug)]
struct Level<E> {
    base: usize,
    /// Indices into `StabChain::strong` of the generators fixing the earlier base points.
    gens: Vec<usize>,
    orbit: Vec<usize>,
    /// Per point: strong generator index that reached it, `ROOT`, or `NONE`.
    edge: Vec<u32>,
    /// Position of each point in `orbit`, `NONE` if absent.
    pos: Vec<u32>,
    /// Optional explicit transversal: `(u, u^-1)` per point.
    explicit: Option<Vec<Option<(E, E)>>>,
}

/// A base with strong generators, basic orbits and transversals.
#[derive(Clone, Debug)]
pub struct StabChain<E> {
    degree: usize,
    strong: Vec<E>,
    strong_inv: Vec<E>,
    levels: Vec<Level<E>>,
    identity: E,
    /// Residues that act trivially but are not the identity (tracked elements only).
    kernel: Vec<E>,
}

/// Options for [`StabChain::build`].
#[derive(Clone, Debug, Default)]
pub struct BuildOptions {
    /// Preferred base points; residues pick the first preferred point they move.
    pub base_prefix: Vec<usize>,
    /// If known, random sifting stops as soon as the orbit product reaches it.
    pub known_order: Option<u128>,
    pub seed: u64,
}

impl<E: ChainElem> StabChain<E> {
    pub fn build(degree: usize, gens: &[E], identity: E, opts: &BuildOptions) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::capacity(format!(
                "degree {degree} exceeds the limit {MAX_DEGREE}"
            )));
        }
        let mut chain = StabChain {
            degree,
            strong: Vec::new(),
            strong_inv: Vec::new(),
            levels: Vec::new(),
            identity,
            kernel: Vec::new(),
        };
        for &b in &opts.base_prefix {
            if b < degree && !chain.levels.iter().any(|l| l.base == b) {
                chain.push_level(b);
            }
        }
        for g in gens {
            if g.acts_trivially() {
                if !g.is_identity() {
                    chain.kernel.push(g.clone());
                }
                continue;
            }
            chain.add_strong(g.clone(), 0, &opts.base_prefix);
        }
        for i in 0..chain.levels.len() {
            chain.rebuild_orbit(i)?;
        }
        if let Some(target) = opts.known_order {
            chain.random_fill(gens, target, opts)?;
            if chain.order() == target {
                return Ok(chain);
            }
        }
        chain.complete(&opts.base_prefix)?;
        Ok(chain)
    }

    fn push_level(&mut self, base: usize) {
        self.levels.push(Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            edge: Vec::new(),
            pos: Vec::new(),
            explicit: None,
        });
    }

    fn choose_base_point(g: &E, prefix: &[usize], degree: usize) -> usize {
        prefix
            .iter()
            .copied()
            .find(|&b| b < degree && g.act(b) != b)
            .or_else(|| g.first_moved())
            .expect("nontrivial element moves a point")
    }

    /// Files `g` on every level from `from` down to the first base point it moves,
    /// extending the base if it fixes all of them. Returns the deepest level touched.
    fn add_strong(&mut self, g: E, from: usize, prefix: &[usize]) -> usize {
        let idx = self.strong.len();
        self.strong_inv.push(g.inv());
        let mut depth = from;
        loop {
            if depth == self.levels.len() {
                let b = Self::choose_base_point(&g, prefix, self.degree);
                self.push_level(b);
            }
            self.levels[depth].gens.push(idx);
            if g.act(self.levels[depth].base) != self.levels[depth].base {
                break;
            }
            depth += 1;
        }
        self.strong.push(g);
        depth
    }

    fn rebuild_orbit(&mut self, i: usize) -> Result<()> {
        let degree = self.degree;
        let level = &self.levels[i];
        let mut edge = vec![NONE; degree];
        let mut pos = vec![NONE; degree];
        let mut orbit = vec![level.base];
        edge[level.base] = ROOT;
        pos[level.base] = 0;
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for &s in &level.gens {
                let y = self.strong[s].act(x);
                if edge[y] == NONE {
                    edge[y] = s as u32;
                    pos[y] = orbit.len() as u32;
                    orbit.push(y);
                }
            }
        }
        let explicit = if orbit.len() * degree <= EXPLICIT_LIMIT {
            let mut table: Vec<Option<(E, E)>> = vec![None; degree];
            table[level.base] = Some((self.identity.clone(), self.identity.clone()));
            for &y in orbit.iter().skip(1) {
                let s = edge[y] as usize;
                let parent = self.strong_inv[s].act(y);
                let (pu, pinv) = table[parent].clone().expect("BFS order");
                let u = pu.then(&self.strong[s]);
                let uinv = self.strong_inv[s].then(&pinv);
                table[y] = Some((u, uinv));
            }
            Some(table)
        } else {
            None
        };
        let level = &mut self.levels[i];
        level.orbit = orbit;
        level.edge = edge;
        level.pos = pos;
        level.explicit = explicit;
        let order = self.order_u128();
        if order > MAX_ORDER {
            return Err(Error::capacity(format!(
                "group order exceeds the limit {MAX_ORDER}"
            )));
        }
        Ok(())
    }

    /// Sifts `g` starting at level `from`; returns the residue and the level where it stopped.
    pub fn sift_from(&self, g: &E, from: usize) -> (E, usize) {
        let mut h = g.clone();
        for i in from..self.levels.len() {
            let level = &self.levels[i];
            let gamma = h.act(level.base);
            if level.edge[gamma] == NONE {
                return (h, i);
            }
            h = self.strip_point(i, h, gamma);
        }
        (h, self.levels.len())
    }

    /// Multiplies `h` by `u_gamma^-1` at level `i`.
    fn strip_point(&self, i: usize, mut h: E, gamma: usize) -> E {
        let level = &self.levels[i];
        if let Some(table) = &level.explicit {
            let (_, uinv) = table[gamma].as_ref().expect("point in orbit");
            return h.then(uinv);
        }
        let mut x = gamma;
        while level.edge[x] != ROOT {
            let s = level.edge[x] as usize;
            h = h.then(&self.strong_inv[s]);
            x = self.strong_inv[s].act(x);
        }
        h
    }

    /// Transversal element at level `i` mapping the base point to `gamma`.
    pub fn transversal(&self, i: usize, gamma: usize) -> Option<E> {
        let level = &self.levels[i];
        if level.edge.get(gamma).copied().unwrap_or(NONE) == NONE {
            return None;
        }
        if let Some(table) = &level.explicit {
            return table[gamma].as_ref().map(|(u, _)| u.clone());
        }
        let mut path = Vec::new();
        let mut x = gamma;
        while level.edge[x] != ROOT {
            let s = level.edge[x] as usize;
            path.push(s);
            x = self.strong_inv[s].act(x);
        }
        let mut u = self.identity.clone();
        for &s in path.iter().rev() {
            u = u.then(&self.strong[s]);
        }
        Some(u)
    }

    pub fn transversal_inv(&self, i: usize, gamma: usize) -> Option<E> {
        let level = &self.levels[i];
        if let Some(table) = &level.explicit {
            return table.get(gamma)?.as_ref().map(|(_, v)| v.clone());
        }
        self.transversal(i, gamma).map(|u| u.inv())
    }

    fn complete(&mut self, prefix: &[usize]) -> Result<()> {
        if self.levels.is_empty() {
            return Ok(());
        }
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let li = i as usize;
            let orbit = self.levels[li].orbit.clone();
            let gens = self.levels[li].gens.clone();
            for &beta in &orbit {
                let u_beta = self.transversal(li, beta).expect("orbit point");
                for &s in &gens {
                    let image = self.strong[s].act(beta);
                    let mut h = u_beta.then(&self.strong[s]);
                    h = self.strip_point(li, h, image);
                    if h.is_identity() {
                        continue;
                    }
                    let (res, j) = self.sift_from(&h, li + 1);
                    if j < self.levels.len() || !res.acts_trivially() {
                        let depth = self.add_strong(res, li + 1, prefix);
                        for l in li + 1..=depth {
                            self.rebuild_orbit(l)?;
                        }
                        i = depth as isize;
                        continue 'outer;
                    } else if !res.is_identity() {
                        self.push_kernel(res);
                    }
                }
            }
            i -= 1;
        }
        Ok(())
    }

    fn push_kernel(&mut self, k: E) {
        // cap on stored kernel generators; they are only used as generators
        if self.kernel.len() < 256 {
            self.kernel.push(k);
        }
    }

    fn random_fill(&mut self, gens: &[E], target: u128, opts: &BuildOptions) -> Result<()> {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(opts.seed ^ 0x5eed_c4a1);
        let nontrivial: Vec<E> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if nontrivial.is_empty() {
            return Ok(());
        }
        // product replacement state
        let mut state: Vec<E> = nontrivial.clone();
        while state.len() < 10 {
            state.push(nontrivial[state.len() % nontrivial.len()].clone());
        }
        let mut acc = self.identity.clone();
        let mut step = |rng: &mut rand_chacha::ChaCha8Rng, acc: &mut E| {
            let n = state.len();
            let a = rng.gen_range(0..n);
            let mut b = rng.gen_range(0..n);
            while b == a {
                b = rng.gen_range(0..n);
            }
            state[a] = if rng.gen_bool(0.5) {
                state[a].then(&state[b])
            } else {
                state[a].then(&state[b].inv())
            };
            *acc = acc.then(&state[a]);
            acc.clone()
        };
        for _ in 0..50 {
            step(&mut rng, &mut acc);
        }
        let mut misses = 0;
        while self.order() < target && misses < 200 {
            let g = step(&mut rng, &mut acc);
            let (res, j) = self.sift_from(&g, 0);
            if j < self.levels.len() || !res.acts_trivially() {
                misses = 0;
                let depth = self.add_strong(res, 0, &opts.base_prefix);
                for l in 0..=depth.min(self.levels.len() - 1) {
                    self.rebuild_orbit(l)?;
                }
            } else {
                misses += 1;
                if !res.is_identity() {
                    self.push_kernel(res);
                }
            }
        }
        Ok(())
    }

    fn order_u128(&self) -> u128 {
        self.levels
            .iter()
            .map(|l| l.orbit.len() as u128)
            .product()
    }

    pub fn order(&self) -> u128 {
        self.order_u128()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    pub fn base_point(&self, i: usize) -> usize {
        self.levels[i].base
    }

    pub fn orbit(&self, i: usize) -> &[usize] {
        &self.levels[i].orbit
    }

    pub fn in_orbit(&self, i: usize, x: usize) -> bool {
        self.levels[i].edge[x] != NONE
    }

    /// Index of `x` in the `i`-th basic orbit.
    pub fn orbit_position(&self, i: usize, x: usize) -> Option<usize> {
        let p = self.levels[i].pos[x];
        (p != NONE).then_some(p as usize)
    }

    pub fn strong_generators(&self) -> &[E] {
        &self.strong
    }

    /// Strong generators filed at level `i` (they fix the first `i` base points).
    pub fn level_generators(&self, i: usize) -> impl Iterator<Item = &E> {
        self.levels[i].gens.iter().map(move |&s| &self.strong[s])
    }

    pub fn identity(&self) -> &E {
        &self.identity
    }

    /// Elements acting trivially that were met while sifting.
    pub fn kernel_residues(&self) -> &[E] {
        &self.kernel
    }

    /// True if `g` sifts to an element acting trivially.
    pub fn contains_action(&self, g: &E) -> bool {
        let (res, j) = self.sift_from(g, 0);
        j == self.levels.len() && res.acts_trivially()
    }

    /// Element built from one orbit point per level (`choice[i]` indexes orbit `i`).
    pub fn element_from_positions(&self, choice: &[usize]) -> E {
        let mut g = self.identity.clone();
        for (i, &c) in choice.iter().enumerate().rev() {
            let gamma = self.levels[i].orbit[c];
            let u = self.transversal(i, gamma).expect("orbit point");
            g = g.then(&u);
        }
        g
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> E {
        let choice: Vec<usize> = self
            .levels
            .iter()
            .map(|l| rng.gen_range(0..l.orbit.len()))
            .collect();
        self.element_from_positions(&choice)
    }
}
