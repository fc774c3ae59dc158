//! Permutation groups with a lazily built stabilizer chain.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::{Arc, OnceLock};

use rand::Rng;

use crate::chain::{BuildOptions, StabChain};
use crate::error::{Error, Result};
use crate::perm::Permutation;

struct Inner {
    degree: usize,
    gens: Vec<Permutation>,
    base_prefix: Vec<usize>,
    known_order: Option<u128>,
    chain: OnceLock<Result<StabChain<Permutation>>>,
}

/// A permutation group given by generators. Cloning is cheap.
///
/// Subgroups are plain `PermGroup`s acting on the same points as the
/// ambient group.
#[derive(Clone)]
pub struct PermGroup {
    inner: Arc<Inner>,
}

impl PermGroup {
    /// Group generated by `gens`; all must have the given degree.
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        Ok(Self::from_parts(degree, gens, Vec::new(), None))
    }

    pub(crate) fn from_parts(
        degree: usize,
        gens: Vec<Permutation>,
        base_prefix: Vec<usize>,
        known_order: Option<u128>,
    ) -> Self {
        let mut seen = BTreeSet::new();
        let gens = gens
            .into_iter()
            .filter(|g| !g.is_identity() && seen.insert(g.clone()))
            .collect();
        PermGroup {
            inner: Arc::new(Inner {
                degree,
                gens,
                base_prefix,
                known_order,
                chain: OnceLock::new(),
            }),
        }
    }

    /// Same as [`PermGroup::new`] for generators known to share `degree`.
    pub fn from_gens(degree: usize, gens: Vec<Permutation>) -> Self {
        Self::new(degree, gens).expect("generators of the stated degree")
    }

    /// Group whose order is known in advance; index construction may stop early.
    pub fn with_known_order(degree: usize, gens: Vec<Permutation>, order: u64) -> Self {
        Self::from_parts(degree, gens, Vec::new(), Some(order as u128))
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_parts(degree, Vec::new(), Vec::new(), None)
    }

    /// Same group, indexed with a preferred base ordering.
    pub fn with_base(&self, base_prefix: Vec<usize>) -> Self {
        Self::from_parts(
            self.degree(),
            self.gens().to_vec(),
            base_prefix,
            self.inner.known_order,
        )
    }

    pub fn degree(&self) -> usize {
        self.inner.degree
    }

    pub fn gens(&self) -> &[Permutation] {
        &self.inner.gens
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree())
    }

    /// Builds the index on first use.
    pub fn try_index(&self) -> Result<&StabChain<Permutation>> {
        self.inner
            .chain
            .get_or_init(|| {
                StabChain::build(
                    self.inner.degree,
                    &self.inner.gens,
                    Permutation::identity(self.inner.degree),
                    &BuildOptions {
                        base_prefix: self.inner.base_prefix.clone(),
                        known_order: self.inner.known_order,
                        seed: 0,
                    },
                )
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// The index; panics if the group exceeds engine capacity. Entry points
    /// call [`PermGroup::try_index`] first, and subgroups never exceed the
    /// capacity of an indexed ambient group.
    pub fn index(&self) -> &StabChain<Permutation> {
        match self.try_index() {
            Ok(c) => c,
            Err(e) => panic!("group index unavailable: {e}"),
        }
    }

    pub fn try_order(&self) -> Result<u64> {
        Ok(self.try_index()?.order() as u64)
    }

    pub fn order(&self) -> u64 {
        self.index().order() as u64
    }

    pub fn is_trivial(&self) -> bool {
        self.gens().is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree() && self.index().contains_action(p)
    }

    pub fn try_contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree() {
            return Err(Error::DegreeMismatch(self.degree(), p.degree()));
        }
        Ok(self.try_index()?.contains_action(p))
    }

    /// `other ≤ self`.
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.gens().iter().all(|g| self.contains(g))
    }

    /// Equality as sets, by two-sided containment.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree() == other.degree()
            && self.order() == other.order()
            && self.contains_group(other)
    }

    pub fn orbit(&self, x: usize) -> Vec<usize> {
        orbit_of(self.degree(), self.gens(), x)
    }

    /// All orbits, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut o = self.orbit(x);
            for &y in &o {
                seen[y] = true;
            }
            o.sort_unstable();
            out.push(o);
        }
        out
    }

    /// Points moved by some generator.
    pub fn support(&self) -> Vec<usize> {
        (0..self.degree())
            .filter(|&x| self.gens().iter().any(|g| g.image(x) != x))
            .collect()
    }

    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        self.index().random_element(rng)
    }

    /// Every element, in index order. Only sensible for small groups.
    pub fn elements(&self) -> Vec<Permutation> {
        let chain = self.index();
        let sizes: Vec<usize> = (0..chain.depth()).map(|i| chain.orbit(i).len()).collect();
        let total: usize = sizes.iter().product();
        let mut out = Vec::with_capacity(total);
        let mut choice = vec![0usize; sizes.len()];
        for _ in 0..total {
            out.push(chain.element_from_positions(&choice));
            for (c, &s) in choice.iter_mut().zip(&sizes) {
                *c += 1;
                if *c < s {
                    break;
                }
                *c = 0;
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        let g = self.gens();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                if g[i].then(&g[j]) != g[j].then(&g[i]) {
                    return false;
                }
            }
        }
        true
    }

    /// Subgroup generated by the given elements.
    pub fn subgroup(&self, gens: Vec<Permutation>) -> PermGroup {
        PermGroup::from_gens(self.degree(), gens)
    }

    /// `self^g`.
    pub fn conjugate(&self, g: &Permutation) -> PermGroup {
        PermGroup::from_gens(
            self.degree(),
            self.gens().iter().map(|x| x.conjugate(g)).collect(),
        )
    }

    /// `g` normalizes `self`.
    pub fn normalized_by(&self, g: &Permutation) -> bool {
        self.gens().iter().all(|x| self.contains(&x.conjugate(g)))
    }

    /// `self` is normal in `ambient`.
    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        ambient.gens().iter().all(|g| self.normalized_by(g))
    }

    /// Group generated by both generator sets.
    pub fn join(&self, other: &PermGroup) -> PermGroup {
        let mut gens = self.gens().to_vec();
        gens.extend(other.gens().iter().cloned());
        PermGroup::from_gens(self.degree(), gens)
    }

    /// Group generated by `self` and extra elements.
    pub fn extend(&self, extra: impl IntoIterator<Item = Permutation>) -> PermGroup {
        let mut gens = self.gens().to_vec();
        gens.extend(extra);
        PermGroup::from_gens(self.degree(), gens)
    }

    /// A reduced generating set: generators that enlarge the group, in order.
    pub fn reduced(&self) -> PermGroup {
        let mut cur = PermGroup::trivial(self.degree());
        for g in self.gens() {
            if !cur.contains(g) {
                cur = cur.extend([g.clone()]);
            }
        }
        cur
    }
}

pub(crate) fn orbit_of(degree: usize, gens: &[Permutation], x: usize) -> Vec<usize> {
    let mut seen = vec![false; degree];
    let mut orbit = vec![x];
    seen[x] = true;
    let mut head = 0;
    while head < orbit.len() {
        let y = orbit[head];
        head += 1;
        for g in gens {
            let z = g.image(y);
            if !seen[z] {
                seen[z] = true;
                orbit.push(z);
            }
        }
    }
    orbit
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, gens [", self.degree())?;
        for (i, g) in self.gens().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, "])")
    }
}
