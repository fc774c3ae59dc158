//! Quotients, minimal normal subgroups and chief series.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::{block_action, restriction, Hom};
use crate::perm::Permutation;
use crate::subgrp::{
    class_representatives, conjugation_orbit_representatives, divisors_of, factorize, normal_closure, normal_closure_upto, order_mod,
    p_part,
};

/// Largest quotient degree that will be built.
pub const MAX_QUOTIENT_DEGREE: usize = 10_000;

/// Groups up to this order get exhaustive minimality and simplicity checks.
pub const SCAN_ORDER: u64 = 5000;

/// Number of random probes behind a sampled minimality certificate.
pub const PROBES: usize = 50;

/// `G/N` as a permutation group, with the projection and a section.
#[derive(Clone)]
pub struct Quotient {
    hom: Hom,
    kernel: PermGroup,
}

impl Quotient {
    pub fn group(&self) -> &PermGroup {
        self.hom.image_group()
    }

    pub fn kernel(&self) -> &PermGroup {
        &self.kernel
    }

    pub fn source(&self) -> &PermGroup {
        self.hom.source()
    }

    pub fn hom(&self) -> &Hom {
        &self.hom
    }

    /// Image of an element of `G`.
    pub fn map(&self, g: &Permutation) -> Permutation {
        self.hom.image(g)
    }

    /// A coset representative of an element of `G/N`.
    pub fn lift(&self, x: &Permutation) -> Option<Permutation> {
        self.hom.preimage(x)
    }

    pub fn image_of(&self, sub: &PermGroup) -> PermGroup {
        self.hom.image_of(sub)
    }

    /// Full preimage of a subgroup of `G/N`.
    pub fn preimage(&self, sub: &PermGroup) -> PermGroup {
        let mut gens = self.kernel.gens().to_vec();
        for x in sub.gens() {
            gens.push(self.lift(x).expect("subgroup of the quotient"));
        }
        PermGroup::from_gens(self.source().degree(), gens)
    }
}

/// Faithful permutation representation of `G/N`.
///
/// Tries the action on the `N`-orbits first, then the regular action on the
/// cosets of `N`.
pub fn quotient_group(g: &PermGroup, n: &PermGroup) -> Result<Quotient> {
    if !n.is_normal_in(g) || !g.contains_group(n) {
        return Err(Error::NotNormal("quotient by a subgroup that is not normal".into()));
    }
    let index = g.try_order()? / n.try_order()?;
    let kernel = n.clone();
    let support = g.support();
    if n.is_trivial() {
        let hom = trimmed(restriction(g, &support)?)?;
        return Ok(Quotient { hom, kernel });
    }
    let mut in_block = vec![false; g.degree()];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &x in &support {
        if !in_block[x] {
            let mut o = n.orbit(x);
            o.sort_unstable();
            for &y in &o {
                in_block[y] = true;
            }
            blocks.push(o);
        }
    }
    if blocks.len() > 1 {
        let pts: Vec<usize> = support.clone();
        let restricted = restriction(g, &pts)?;
        let mut pos = vec![usize::MAX; g.degree()];
        for (i, &x) in pts.iter().enumerate() {
            pos[x] = i;
        }
        let local: Vec<Vec<usize>> = blocks
            .iter()
            .map(|b| b.iter().map(|&x| pos[x]).collect())
            .collect();
        let on_blocks = block_action(restricted.image_group(), &local)?;
        if on_blocks.image_group().order() == index {
            let hom = trimmed(restricted.then(&on_blocks)?)?;
            return Ok(Quotient { hom, kernel });
        }
    }
    if index as usize > MAX_QUOTIENT_DEGREE {
        return Err(Error::capacity(format!(
            "quotient of order {index} has no representation within degree {MAX_QUOTIENT_DEGREE}"
        )));
    }
    let hom = coset_action(g, n, index)?;
    Ok(Quotient { hom, kernel })
}

/// Composes with the restriction of the image to its support.
fn trimmed(h: Hom) -> Result<Hom> {
    let img = h.image_group();
    let support = img.support();
    if support.len() == img.degree() {
        return Ok(h);
    }
    let r = restriction(img, &support)?;
    h.then(&r)
}

/// Canonical element of the coset `Nx`: least base images under `N`'s chain.
pub(crate) fn canonical_coset_rep(n: &PermGroup, x: &Permutation) -> Permutation {
    let chain = n.index();
    let mut cur = x.clone();
    for i in 0..chain.depth() {
        let best = chain
            .orbit(i)
            .iter()
            .copied()
            .min_by_key(|&d| cur.image(d))
            .expect("orbit contains the base point");
        let u = chain.transversal(i, best).expect("orbit point");
        cur = u.then(&cur);
    }
    cur
}

fn coset_action(g: &PermGroup, n: &PermGroup, index: u64) -> Result<Hom> {
    let m = index as usize;
    let mut reps: Vec<Permutation> = vec![canonical_coset_rep(n, &g.identity())];
    let mut lookup: HashMap<Permutation, u32> = HashMap::new();
    lookup.insert(reps[0].clone(), 0);
    let mut images: Vec<Vec<u32>> = vec![Vec::with_capacity(m); g.gens().len()];
    let mut head = 0;
    while head < reps.len() {
        for (k, s) in g.gens().iter().enumerate() {
            let c = canonical_coset_rep(n, &reps[head].then(s));
            let next = reps.len() as u32;
            let j = *lookup.entry(c.clone()).or_insert_with(|| {
                reps.push(c);
                next
            });
            images[k].push(j);
        }
        head += 1;
    }
    if reps.len() != m {
        return Err(Error::Invalid("coset enumeration did not close".into()));
    }
    let gens = images
        .into_iter()
        .map(Permutation::from_images)
        .collect::<Result<Vec<_>>>()?;
    Hom::from_images(g, gens, m, Some(index))
}

/// Isomorphism type of a simple group, by order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SimpleKind {
    Cyclic { p: u64 },
    Alternating { n: u64 },
    Psl2 { q: u64 },
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimpleTypeLabel {
    #[serde(flatten)]
    pub kind: SimpleKind,
    pub order: u64,
    /// Other family names of the same group.
    pub aliases: Vec<String>,
    /// Order shared by non-isomorphic simple groups.
    pub ambiguous: bool,
}

impl fmt::Display for SimpleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleKind::Cyclic { p } => write!(f, "C{p}"),
            SimpleKind::Alternating { n } => write!(f, "A{n}"),
            SimpleKind::Psl2 { q } => write!(f, "PSL2({q})"),
            SimpleKind::Other => write!(f, "simple"),
        }
    }
}

impl fmt::Display for SimpleTypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind)?;
        for a in &self.aliases {
            write!(f, " = {a}")?;
        }
        if matches!(self.kind, SimpleKind::Other) {
            write!(f, " of order {}", self.order)?;
        }
        if self.ambiguous {
            write!(f, " (ambiguous order)")?;
        }
        Ok(())
    }
}

pub fn psl2_order(q: u64) -> u64 {
    q * (q * q - 1) / if q.is_multiple_of(2) { 1 } else { 2 }
}

fn alternating_order(n: u64) -> u64 {
    (3..=n).product::<u64>()
}

/// Label for a simple group of the given order.
pub fn label_for_order(order: u64) -> SimpleTypeLabel {
    if factorize(order).len() == 1 && factorize(order)[0].1 == 1 {
        return SimpleTypeLabel {
            kind: SimpleKind::Cyclic { p: order },
            order,
            aliases: Vec::new(),
            ambiguous: false,
        };
    }
    let mut names: Vec<SimpleKind> = Vec::new();
    for n in 5..=9 {
        if alternating_order(n) == order {
            names.push(SimpleKind::Alternating { n });
        }
    }
    for q in 4..=32u64 {
        let f = factorize(q);
        if f.len() == 1 && psl2_order(q) == order {
            names.push(SimpleKind::Psl2 { q });
        }
    }
    // order 20160 is also that of PSL3(4), which is not A8
    let ambiguous = order == 20160;
    if names.is_empty() {
        return SimpleTypeLabel {
            kind: SimpleKind::Other,
            order,
            aliases: Vec::new(),
            ambiguous,
        };
    }
    let kind = names.remove(0);
    SimpleTypeLabel {
        kind,
        order,
        aliases: names.iter().map(|k| k.to_string()).collect(),
        ambiguous,
    }
}

/// Element of prime order modulo `b`, taken as a power of `x`.
fn prime_power_mod(x: &Permutation, b: &PermGroup) -> Option<Permutation> {
    if b.contains(x) {
        return None;
    }
    let k = order_mod(x, b);
    let q = factorize(k)[0].0;
    Some(x.pow(k / q))
}

/// Minimal `M` with `B < M ≤ A`, `M ⊴ G`, found by shrinking normal closures.
/// `A` and `B` must be normal in `G` with `B < A`.
pub fn minimal_normal_between(
    eng: &Engine,
    g: &PermGroup,
    a: &PermGroup,
    b: &PermGroup,
) -> PermGroup {
    let index = a.order() / b.order();
    if factorize(index).len() == 1 && factorize(index)[0].1 == 1 {
        return a.clone();
    }
    let ncl = |x: &Permutation, limit: u64| {
        let mut s = b.gens().to_vec();
        s.push(x.clone());
        normal_closure_upto(g, &s, Some(limit))
    };
    let start = a
        .gens()
        .iter()
        .find_map(|x| prime_power_mod(x, b))
        .expect("A is larger than B");
    let mut best = ncl(&start, a.order());
    'shrink: loop {
        if best.order() / b.order() == index_prime(best.order() / b.order()) {
            return best;
        }
        if best.order() <= SCAN_ORDER {
            for (x, _) in conjugation_orbit_representatives(&best, g) {
                if let Some(y) = prime_power_mod(&x, b) {
                    let m = ncl(&y, best.order());
                    if m.order() < best.order() {
                        best = m;
                        continue 'shrink;
                    }
                }
            }
            return best;
        }
        let mut rng = eng.rng(0x6d69_6e6e ^ best.order());
        let mut candidates: Vec<Permutation> = Vec::new();
        for x in best.gens() {
            candidates.push(x.clone());
            for y in g.gens() {
                candidates.push(Permutation::commutator(x, y));
            }
        }
        for _ in 0..PROBES {
            candidates.push(best.random_element(&mut rng));
        }
        for x in candidates {
            let o = order_mod(&x, b);
            for d in divisors_of(o) {
                if d == o {
                    continue;
                }
                let y = x.pow(d);
                if b.contains(&y) {
                    continue;
                }
                let m = ncl(&y, best.order());
                if m.order() < best.order() {
                    best = m;
                    continue 'shrink;
                }
            }
        }
        return best;
    }
}

fn index_prime(n: u64) -> u64 {
    let f = factorize(n);
    if f.len() == 1 && f[0].1 == 1 {
        n
    } else {
        0
    }
}

/// Minimal normal subgroups of `G`.
///
/// Exhaustive when `|G|` is within the enumeration budget; otherwise one
/// minimal normal subgroup inside the smallest nontrivial normal hint.
pub fn minimal_normal_subgroups(
    eng: &Engine,
    g: &PermGroup,
    hints: &[PermGroup],
) -> Result<Vec<PermGroup>> {
    let order = g.try_order()?;
    if order == 1 {
        return Ok(Vec::new());
    }
    if order <= eng.enum_budget {
        let mut candidates: Vec<PermGroup> = Vec::new();
        for (x, _) in class_representatives(g) {
            let o = x.order();
            if o == 1 || factorize(o).len() != 1 || factorize(o)[0].1 != 1 {
                continue;
            }
            let m = normal_closure(g, &[x]);
            if !candidates.iter().any(|c| c.same_group(&m)) {
                candidates.push(m);
            }
        }
        let mut minimal: Vec<PermGroup> = candidates
            .iter()
            .filter(|m| {
                !candidates
                    .iter()
                    .any(|c| c.order() < m.order() && m.contains_group(c))
            })
            .cloned()
            .collect();
        minimal.sort_by_key(|m| m.order());
        return Ok(minimal);
    }
    let mut normal_hints: Vec<&PermGroup> = hints
        .iter()
        .filter(|h| h.order() > 1 && g.contains_group(h) && h.is_normal_in(g))
        .collect();
    normal_hints.sort_by_key(|h| h.order());
    let Some(smallest) = normal_hints.first() else {
        return Err(Error::capacity(format!(
            "group of order {order} exceeds the enumeration budget and no normal hint was given"
        )));
    };
    let trivial = PermGroup::trivial(g.degree());
    Ok(vec![minimal_normal_between(eng, g, smallest, &trivial)])
}

/// One chief factor `G_i / G_{i+1}` and its decomposition.
#[derive(Clone, Debug)]
pub struct ChiefFactor {
    /// Subgroups `T_{i,j}` with `G_{i+1} < T_{i,j} ≤ G_i`, one per simple direct factor.
    pub components: Vec<PermGroup>,
    pub label: SimpleTypeLabel,
    pub abelian: bool,
}

impl ChiefFactor {
    pub fn k(&self) -> usize {
        self.components.len()
    }
}

/// A chief series `G = G_0 > … > G_n = 1` with decomposed factors.
#[derive(Clone, Debug)]
pub struct ChiefSeriesData {
    pub terms: Vec<PermGroup>,
    pub factors: Vec<ChiefFactor>,
}

impl ChiefSeriesData {
    pub fn factor_orders(&self) -> Vec<u64> {
        self.terms
            .windows(2)
            .map(|w| w[0].order() / w[1].order())
            .collect()
    }
}

/// Chief series of `G`, refining the chain formed by the normal hints.
pub fn chief_series(eng: &Engine, g: &PermGroup, hints: &[PermGroup]) -> Result<ChiefSeriesData> {
    g.try_order()?;
    let trivial = PermGroup::trivial(g.degree());
    let mut chain: Vec<PermGroup> = vec![g.clone()];
    let mut sorted: Vec<&PermGroup> = hints
        .iter()
        .filter(|h| g.contains_group(h) && h.is_normal_in(g))
        .collect();
    sorted.sort_by_key(|h| std::cmp::Reverse(h.order()));
    for h in sorted {
        let last = chain.last().unwrap();
        if h.order() < last.order() && h.order() > 1 && last.contains_group(h) {
            chain.push(h.clone());
        }
    }
    if g.order() > 1 {
        chain.push(trivial);
    }
    let mut terms: Vec<PermGroup> = vec![g.clone()];
    for w in chain.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let mut below: Vec<PermGroup> = Vec::new();
        let mut cur = b.clone();
        while cur.order() < a.order() {
            cur = minimal_normal_between(eng, g, a, &cur);
            below.push(cur.clone());
        }
        below.pop();
        below.reverse();
        terms.extend(below);
        terms.push(b.clone());
    }
    let mut factors = Vec::new();
    for w in terms.windows(2) {
        factors.push(decompose_factor(eng, g, &w[0], &w[1])?);
    }
    Ok(ChiefSeriesData { terms, factors })
}

/// Splits a chief factor `A/B` into simple direct factors.
pub fn decompose_factor(
    eng: &Engine,
    g: &PermGroup,
    a: &PermGroup,
    b: &PermGroup,
) -> Result<ChiefFactor> {
    let index = a.order() / b.order();
    let abelian = a.gens().iter().all(|x| {
        a.gens()
            .iter()
            .all(|y| b.contains(&Permutation::commutator(x, y)))
    });
    if abelian {
        let f = factorize(index);
        if f.len() != 1 {
            return Err(Error::Invalid("abelian chief factor is not a p-group".into()));
        }
        let p = f[0].0;
        let mut components = Vec::new();
        let mut cur = b.clone();
        for x in a.gens() {
            if !cur.contains(x) {
                components.push(b.extend([x.clone()]));
                cur = cur.extend([x.clone()]);
            }
        }
        if p_part(cur.order() / b.order(), p) != index || components.len() as u32 != f[0].1 {
            // generators do not form a basis; fall back to a greedy basis from elements
            components.clear();
            cur = b.clone();
            let mut rng = eng.rng(0xba5e);
            while cur.order() < a.order() {
                let x = a.random_element(&mut rng);
                if !cur.contains(&x) {
                    components.push(b.extend([x.clone()]));
                    cur = cur.extend([x]);
                }
            }
        }
        return Ok(ChiefFactor {
            components,
            label: label_for_order(p),
            abelian: true,
        });
    }
    // a minimal normal subgroup of A/B is one simple factor
    let t = minimal_normal_between(eng, a, a, b);
    let mut components = vec![t.clone()];
    let mut queue = vec![t.clone()];
    while let Some(c) = queue.pop() {
        for s in g.gens() {
            let d = c.conjugate(s);
            if !components.iter().any(|e| e.same_group(&d)) {
                components.push(d.clone());
                queue.push(d);
            }
        }
    }
    let t_order = t.order() / b.order();
    let k = components.len() as u32;
    if t_order.checked_pow(k) != Some(index) {
        return Err(Error::Certificate(format!(
            "chief factor of order {index} is not a power of its component order {t_order}"
        )));
    }
    Ok(ChiefFactor {
        components,
        label: label_for_order(t_order),
        abelian: false,
    })
}

/// Checks normality of every term and minimality of every factor, exhaustively
/// for small groups and by probing otherwise.
pub fn verify_chief_series(eng: &Engine, g: &PermGroup, series: &ChiefSeriesData) -> Result<()> {
    let terms = &series.terms;
    if !terms[0].same_group(g) || terms.last().unwrap().order() != 1 {
        return Err(Error::Certificate("series does not run from G to 1".into()));
    }
    for (i, w) in terms.windows(2).enumerate() {
        if !w[1].is_normal_in(g) {
            return Err(Error::Certificate(format!("term {} is not normal", i + 1)));
        }
        if !w[0].contains_group(&w[1]) || w[1].order() >= w[0].order() {
            return Err(Error::Certificate(format!("term {} does not descend", i + 1)));
        }
        let m = minimal_normal_between(eng, g, &w[0], &w[1]);
        if m.order() != w[0].order() {
            return Err(Error::Certificate(format!(
                "factor {i} has a proper G-normal subgroup of order {}",
                m.order() / w[1].order()
            )));
        }
    }
    Ok(())
}

/// Label of a simple group, after checking simplicity.
pub fn identify_simple_factor(eng: &Engine, t: &PermGroup) -> Result<SimpleTypeLabel> {
    let order = t.try_order()?;
    if order == 1 {
        return Err(Error::NotSimple { witness_order: 1 });
    }
    let trivial = PermGroup::trivial(t.degree());
    let m = minimal_normal_between(eng, t, t, &trivial);
    if m.order() < order {
        return Err(Error::NotSimple {
            witness_order: m.order(),
        });
    }
    Ok(label_for_order(order))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn sym(n: usize) -> PermGroup {
        let cyc: Vec<usize> = (0..n).collect();
        PermGroup::from_gens(n, vec![perm(n, &[&[0, 1]]), perm(n, &[&cyc])])
    }

    fn alt5() -> PermGroup {
        PermGroup::from_gens(5, vec![perm(5, &[&[0, 1, 2]]), perm(5, &[&[0, 1, 2, 3, 4]])])
    }

    fn klein() -> PermGroup {
        PermGroup::from_gens(4, vec![perm(4, &[&[0, 1], &[2, 3]]), perm(4, &[&[0, 2], &[1, 3]])])
    }

    #[test]
    fn minimal_normal_examples() {
        let eng = Engine::default();
        let m = minimal_normal_subgroups(&eng, &sym(4), &[]).unwrap();
        assert_eq!(m.len(), 1);
        assert!(m[0].same_group(&klein()));
        let m = minimal_normal_subgroups(&eng, &sym(3), &[]).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].order(), 3);
        let m = minimal_normal_subgroups(&eng, &alt5(), &[]).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].order(), 60);
    }

    #[test]
    fn chief_series_examples() {
        let eng = Engine::default();
        let cs = chief_series(&eng, &sym(4), &[]).unwrap();
        assert_eq!(cs.factor_orders(), vec![2, 3, 4]);
        assert_eq!(cs.factors[2].k(), 2);
        verify_chief_series(&eng, &sym(4), &cs).unwrap();
        let cs = chief_series(&eng, &alt5(), &[]).unwrap();
        assert_eq!(cs.factor_orders(), vec![60]);
        assert_eq!(cs.factors[0].k(), 1);
        assert_eq!(cs.factors[0].label.kind, SimpleKind::Alternating { n: 5 });
    }

    #[test]
    fn chief_series_of_a5_squared() {
        let eng = Engine::default();
        let a = alt5();
        let gens: Vec<Permutation> = a
            .gens()
            .iter()
            .flat_map(|x| [x.shifted(0, 10), x.shifted(5, 10)])
            .collect();
        let g = PermGroup::from_gens(10, gens);
        let cs = chief_series(&eng, &g, &[]).unwrap();
        assert_eq!(cs.factor_orders(), vec![60, 60]);
        // with the swap added, the socle is one factor with k = 2
        let swap = Permutation::from_images((0..10).map(|i| ((i + 5) % 10) as u32).collect()).unwrap();
        let w = g.extend([swap]);
        let cs = chief_series(&eng, &w, &[]).unwrap();
        assert_eq!(cs.factor_orders(), vec![2, 3600]);
        assert_eq!(cs.factors[1].k(), 2);
        verify_chief_series(&eng, &w, &cs).unwrap();
    }

    #[test]
    fn labels() {
        let l = label_for_order(60);
        assert_eq!(l.kind, SimpleKind::Alternating { n: 5 });
        assert_eq!(l.aliases, vec!["PSL2(4)", "PSL2(5)"]);
        assert_eq!(label_for_order(7).kind, SimpleKind::Cyclic { p: 7 });
        assert_eq!(label_for_order(9828).kind, SimpleKind::Psl2 { q: 27 });
        assert!(label_for_order(20160).ambiguous);
        let eng = Engine::default();
        assert!(matches!(
            identify_simple_factor(&eng, &sym(4)),
            Err(Error::NotSimple { .. })
        ));
        let c7 = PermGroup::from_gens(7, vec![perm(7, &[&[0, 1, 2, 3, 4, 5, 6]])]);
        assert_eq!(identify_simple_factor(&eng, &c7).unwrap().kind, SimpleKind::Cyclic { p: 7 });
    }

    #[test]
    fn quotient_examples() {
        let s4 = sym(4);
        let q = quotient_group(&s4, &s4).unwrap();
        assert_eq!(q.group().order(), 1);
        let q = quotient_group(&s4, &klein()).unwrap();
        assert_eq!(q.group().order(), 6);
        assert!(!q.group().is_abelian());
        let mut rng = Engine::default().rng(3);
        for _ in 0..100 {
            let (x, y) = (s4.random_element(&mut rng), s4.random_element(&mut rng));
            assert_eq!(q.map(&x.then(&y)), q.map(&x).then(&q.map(&y)));
        }
        let l = q.lift(&q.group().gens()[0]).unwrap();
        assert_eq!(q.map(&l), q.group().gens()[0]);
        // N-orbit action: Sym(3) x Sym(3) modulo the first factor
        let g = PermGroup::from_gens(
            6,
            vec![perm(6, &[&[0, 1]]), perm(6, &[&[0, 1, 2]]), perm(6, &[&[3, 4]]), perm(6, &[&[3, 4, 5]])],
        );
        let n = PermGroup::from_gens(6, vec![perm(6, &[&[0, 1]]), perm(6, &[&[0, 1, 2]])]);
        let q = quotient_group(&g, &n).unwrap();
        assert_eq!(q.group().order(), 6);
        assert_eq!(q.group().degree(), 3);
    }
}
