//! Backtrack search over a stabilizer chain.
//!
//! Elements are enumerated through their base images. A [`SearchProperty`]
//! rejects partial base images early and tests complete elements. Subgroup
//! searches keep the subgroup found so far and skip base images that it
//! already accounts for.

use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::group::{orbit_of, PermGroup};
use crate::perm::Permutation;

/// Default number of search nodes before giving up.
pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

pub trait SearchProperty {
    /// `partial[t] = (b_t, image of b_t)` for the first levels. Returning
    /// `false` promises that no element with these base images has the property.
    fn prune(&self, _partial: &[(usize, usize)]) -> bool {
        true
    }

    fn test(&self, g: &Permutation) -> bool;
}

struct Search<'a> {
    chain: &'a StabChain<Permutation>,
    prop: &'a dyn SearchProperty,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn dfs(
        &mut self,
        level: usize,
        s: &Permutation,
        partial: &mut Vec<(usize, usize)>,
    ) -> Result<Option<Permutation>> {
        if level == self.chain.depth() {
            return Ok(self.prop.test(s).then(|| s.clone()));
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::capacity(format!(
                "backtrack node budget {} exhausted",
                self.budget
            )));
        }
        let b = self.chain.base_point(level);
        let mut candidates: Vec<(usize, usize)> = self
            .chain
            .orbit(level)
            .iter()
            .map(|&d| (s.image(d), d))
            .collect();
        candidates.sort_unstable();
        for (image, delta) in candidates {
            partial.push((b, image));
            if self.prop.prune(partial) {
                let u = self.chain.transversal(level, delta).expect("orbit point");
                let next = u.then(s);
                if let Some(g) = self.dfs(level + 1, &next, partial)? {
                    partial.pop();
                    return Ok(Some(g));
                }
            }
            partial.pop();
        }
        Ok(None)
    }
}

/// Subgroup of all elements of `group` with the property. The property must
/// define a subgroup, and `known` must be elements of that subgroup.
pub fn subgroup_search(
    group: &PermGroup,
    prop: &dyn SearchProperty,
    known: &[Permutation],
    budget: u64,
) -> Result<PermGroup> {
    let chain = group.try_index()?;
    let base = chain.base();
    let n = group.degree();
    let mut found = PermGroup::from_gens(n, known.to_vec()).with_base(base.clone());
    let mut search = Search {
        chain,
        prop,
        nodes: 0,
        budget,
    };
    for i in (0..chain.depth()).rev() {
        let b = base[i];
        let mut failed: Vec<usize> = Vec::new();
        let mut orbit_mark = stab_orbit_marks(&found, i, b, n);
        let mut orbit: Vec<usize> = chain.orbit(i).to_vec();
        orbit.sort_unstable();
        for &gamma in &orbit {
            if orbit_mark[gamma] {
                continue;
            }
            // skip anything equivalent to a failed image under the found stabilizer
            if !failed.is_empty() {
                let kgens: Vec<Permutation> =
                    found.index().level_generators(i).cloned().collect();
                let o = orbit_of(n, &kgens, gamma);
                if o.iter().any(|x| failed.contains(x)) {
                    failed.push(gamma);
                    continue;
                }
            }
            let mut partial: Vec<(usize, usize)> = base[..i].iter().map(|&x| (x, x)).collect();
            partial.push((b, gamma));
            let hit = if prop.prune(&partial) {
                let u = chain.transversal(i, gamma).expect("orbit point");
                search.dfs(i + 1, &u, &mut partial)?
            } else {
                None
            };
            match hit {
                Some(g) => {
                    let mut gens = found.gens().to_vec();
                    gens.push(g);
                    found = PermGroup::from_gens(n, gens).with_base(base.clone());
                    orbit_mark = stab_orbit_marks(&found, i, b, n);
                }
                None => failed.push(gamma),
            }
        }
    }
    Ok(PermGroup::from_gens(n, found.gens().to_vec()))
}

fn stab_orbit_marks(found: &PermGroup, level: usize, b: usize, n: usize) -> Vec<bool> {
    let chain = found.index();
    let gens: Vec<Permutation> = if level < chain.depth() {
        chain.level_generators(level).cloned().collect()
    } else {
        Vec::new()
    };
    let mut mark = vec![false; n];
    for x in orbit_of(n, &gens, b) {
        mark[x] = true;
    }
    mark
}

/// Some element of `group` with the property.
pub fn element_search(
    group: &PermGroup,
    prop: &dyn SearchProperty,
    budget: u64,
) -> Result<Option<Permutation>> {
    let chain = group.try_index()?;
    let mut search = Search {
        chain,
        prop,
        nodes: 0,
        budget,
    };
    let mut partial = Vec::new();
    search.dfs(0, &group.identity(), &mut partial)
}

/// Orbit label and orbit length per point.
fn orbit_labels(group: &PermGroup) -> (Vec<u32>, Vec<u32>) {
    let n = group.degree();
    let mut label = vec![0u32; n];
    let mut size = vec![0u32; n];
    for (i, o) in group.orbits().iter().enumerate() {
        for &x in o {
            label[x] = i as u32;
            size[x] = o.len() as u32;
        }
    }
    (label, size)
}

/// Elements `g` with `from^g = to`; with `from = to` this is the normalizer.
pub struct ConjugatesProp {
    from: PermGroup,
    to: PermGroup,
    from_label: Vec<u32>,
    from_size: Vec<u32>,
    to_label: Vec<u32>,
    to_size: Vec<u32>,
}

impl ConjugatesProp {
    pub fn new(from: &PermGroup, to: &PermGroup) -> Self {
        let (from_label, from_size) = orbit_labels(from);
        let (to_label, to_size) = orbit_labels(to);
        ConjugatesProp {
            from: from.clone(),
            to: to.clone(),
            from_label,
            from_size,
            to_label,
            to_size,
        }
    }
}

impl SearchProperty for ConjugatesProp {
    fn prune(&self, partial: &[(usize, usize)]) -> bool {
        let &(x, y) = partial.last().expect("nonempty");
        if self.from_size[x] != self.to_size[y] {
            return false;
        }
        partial[..partial.len() - 1].iter().all(|&(px, py)| {
            (self.from_label[px] == self.from_label[x]) == (self.to_label[py] == self.to_label[y])
        })
    }

    fn test(&self, g: &Permutation) -> bool {
        self.from
            .gens()
            .iter()
            .all(|x| self.to.contains(&x.conjugate(g)))
    }
}

/// Elements commuting with every given permutation.
pub struct CentralizerProp {
    gens: Vec<Permutation>,
    degree: usize,
}

impl CentralizerProp {
    pub fn new(degree: usize, gens: &[Permutation]) -> Self {
        CentralizerProp {
            gens: gens.to_vec(),
            degree,
        }
    }
}

impl SearchProperty for CentralizerProp {
    fn prune(&self, partial: &[(usize, usize)]) -> bool {
        // a centralizing element satisfies g(c(x)) = c(g(x)); close the partial map
        let n = self.degree;
        let mut map = vec![u32::MAX; n];
        let mut inv = vec![u32::MAX; n];
        let mut queue: Vec<(usize, usize)> = Vec::new();
        for &(x, y) in partial {
            if map[x] == u32::MAX {
                if inv[y] != u32::MAX {
                    return false;
                }
                map[x] = y as u32;
                inv[y] = x as u32;
                queue.push((x, y));
            } else if map[x] != y as u32 {
                return false;
            }
        }
        while let Some((x, y)) = queue.pop() {
            for c in &self.gens {
                let (cx, cy) = (c.image(x), c.image(y));
                if map[cx] == u32::MAX {
                    if inv[cy] != u32::MAX {
                        return false;
                    }
                    map[cx] = cy as u32;
                    inv[cy] = cx as u32;
                    queue.push((cx, cy));
                } else if map[cx] != cy as u32 {
                    return false;
                }
            }
        }
        true
    }

    fn test(&self, g: &Permutation) -> bool {
        self.gens.iter().all(|c| c.then(g) == g.then(c))
    }
}

/// Membership in another group, pruned through that group's chain built on
/// the searched group's base.
pub struct InGroupProp {
    other: PermGroup,
}

impl InGroupProp {
    pub fn new(other: &PermGroup, base: Vec<usize>) -> Self {
        InGroupProp {
            other: other.with_base(base),
        }
    }
}

impl SearchProperty for InGroupProp {
    fn prune(&self, partial: &[(usize, usize)]) -> bool {
        let chain = self.other.index();
        let mut winv = Permutation::identity(self.other.degree());
        for (t, &(b, gamma)) in partial.iter().enumerate() {
            let target = winv.image(gamma);
            if t >= chain.depth() {
                if target != b {
                    return false;
                }
                continue;
            }
            debug_assert_eq!(chain.base_point(t), b);
            match chain.transversal_inv(t, target) {
                Some(vinv) => winv = winv.then(&vinv),
                None => return false,
            }
        }
        true
    }

    fn test(&self, g: &Permutation) -> bool {
        self.other.contains(g)
    }
}

/// Elements satisfying all of the given properties.
pub struct AllOf<'a>(pub Vec<&'a dyn SearchProperty>);

impl SearchProperty for AllOf<'_> {
    fn prune(&self, partial: &[(usize, usize)]) -> bool {
        self.0.iter().all(|p| p.prune(partial))
    }

    fn test(&self, g: &Permutation) -> bool {
        self.0.iter().all(|p| p.test(g))
    }
}
