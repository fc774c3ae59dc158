//! Subgroup machinery: normalizers, centralizers, series, Sylow and Hall subgroups.
//!
//! Functions with a `_mod` suffix work in a quotient `G/N` without building
//! it: subgroups of the quotient are represented by their full preimages.

use rand::Rng;

use crate::backtrack::{
    element_search, subgroup_search, CentralizerProp, ConjugatesProp, InGroupProp,
};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::{block_action, restriction};
use crate::perm::Permutation;

/// A descending series of subgroups.
#[derive(Clone, Debug)]
pub struct SeriesData {
    pub terms: Vec<PermGroup>,
}

impl SeriesData {
    pub fn last(&self) -> &PermGroup {
        self.terms.last().expect("series has a first term")
    }

    pub fn orders(&self) -> Vec<u64> {
        self.terms.iter().map(|t| t.order()).collect()
    }
}

/// Prime factorization by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn primes_of(n: u64) -> Vec<u64> {
    factorize(n).into_iter().map(|(p, _)| p).collect()
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut r = 1;
    while n > 0 && n.is_multiple_of(p) {
        n /= p;
        r *= p;
    }
    r
}

pub fn is_prime_power(n: u64) -> bool {
    factorize(n).len() == 1
}

/// Smallest normal subgroup of `g` containing `s` (given by generators).
pub fn normal_closure(g: &PermGroup, s: &[Permutation]) -> PermGroup {
    normal_closure_upto(g, s, None)
}

/// As [`normal_closure`], stopping once the order reaches `limit` (the
/// caller knows the closure is contained in a group of that order).
pub fn normal_closure_upto(g: &PermGroup, s: &[Permutation], limit: Option<u64>) -> PermGroup {
    let mut gens: Vec<Permutation> = Vec::new();
    let mut cur = PermGroup::trivial(g.degree());
    for x in s {
        if !cur.contains(x) {
            gens.push(x.clone());
            cur = PermGroup::from_gens(g.degree(), gens.clone());
        }
    }
    let mut i = 0;
    while i < gens.len() {
        for t in g.gens() {
            let c = gens[i].conjugate(t);
            if !cur.contains(&c) {
                gens.push(c);
                cur = PermGroup::from_gens(g.degree(), gens.clone());
                if limit == Some(cur.order()) {
                    return cur;
                }
            }
        }
        i += 1;
    }
    cur
}

/// `[A, G]` for `A` normal in `G`, together with `extra` generators.
fn commutator_closure(g: &PermGroup, a: &PermGroup, extra: &[Permutation]) -> PermGroup {
    let mut s: Vec<Permutation> = extra.to_vec();
    for x in a.gens() {
        for y in g.gens() {
            s.push(Permutation::commutator(x, y));
        }
    }
    normal_closure(g, &s)
}

pub fn derived_subgroup(g: &PermGroup) -> PermGroup {
    commutator_closure(g, g, &[])
}

/// `G'N`.
pub fn derived_subgroup_mod(g: &PermGroup, n: &PermGroup) -> PermGroup {
    commutator_closure(g, g, n.gens())
}

pub fn derived_series(g: &PermGroup) -> SeriesData {
    let mut terms = vec![g.clone()];
    loop {
        let last = terms.last().unwrap();
        let next = derived_subgroup(last);
        if next.order() == last.order() {
            break;
        }
        terms.push(next);
    }
    SeriesData { terms }
}

pub fn is_solvable(g: &PermGroup) -> bool {
    derived_series(g).last().order() == 1
}

/// `G/N` solvable.
pub fn is_solvable_mod(g: &PermGroup, n: &PermGroup) -> bool {
    let mut cur = g.clone();
    loop {
        if cur.order() == n.order() {
            return true;
        }
        let next = commutator_closure(&cur, &cur, n.gens());
        if next.order() == cur.order() {
            return false;
        }
        cur = next;
    }
}

pub fn lower_central_series(g: &PermGroup) -> SeriesData {
    let mut terms = vec![g.clone()];
    loop {
        let last = terms.last().unwrap();
        let next = commutator_closure(g, last, &[]);
        if next.order() == last.order() {
            break;
        }
        terms.push(next);
    }
    SeriesData { terms }
}

pub fn is_nilpotent(g: &PermGroup) -> bool {
    lower_central_series(g).last().order() == 1
}

/// `G/N` nilpotent.
pub fn is_nilpotent_mod(g: &PermGroup, n: &PermGroup) -> bool {
    let mut cur = g.clone();
    loop {
        if cur.order() == n.order() {
            return true;
        }
        let next = commutator_closure(g, &cur, n.gens());
        if next.order() == cur.order() {
            return false;
        }
        cur = next;
    }
}

/// `N_G(H)`; `H` need not lie in `G`.
pub fn normalizer(eng: &Engine, g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    if h.is_normal_in(g) {
        return Ok(g.clone());
    }
    let mut known: Vec<Permutation> = h.gens().iter().filter(|x| g.contains(x)).cloned().collect();
    known.extend(g.gens().iter().filter(|x| h.normalized_by(x)).cloned());
    let prop = ConjugatesProp::new(h, h);
    subgroup_search(g, &prop, &known, eng.node_budget)
}

/// `C_G(S)` for the group generated by `s`.
pub fn centralizer(eng: &Engine, g: &PermGroup, s: &[Permutation]) -> Result<PermGroup> {
    let commutes = |x: &Permutation| s.iter().all(|c| c.then(x) == x.then(c));
    if g.gens().iter().all(commutes) {
        return Ok(g.clone());
    }
    let known: Vec<Permutation> = g.gens().iter().filter(|x| commutes(x)).cloned().collect();
    let prop = CentralizerProp::new(g.degree(), s);
    subgroup_search(g, &prop, &known, eng.node_budget)
}

/// `A ∩ B`.
pub fn intersection(eng: &Engine, a: &PermGroup, b: &PermGroup) -> Result<PermGroup> {
    if b.contains_group(a) {
        return Ok(a.clone());
    }
    if a.contains_group(b) {
        return Ok(b.clone());
    }
    let (small, other) = if a.order() <= b.order() { (a, b) } else { (b, a) };
    let known: Vec<Permutation> = small
        .gens()
        .iter()
        .chain(other.gens())
        .filter(|x| small.contains(x) && other.contains(x))
        .cloned()
        .collect();
    let prop = InGroupProp::new(other, small.index().base());
    subgroup_search(small, &prop, &known, eng.node_budget)
}

/// Some `x ∈ G` with `U^x = W`.
pub fn are_conjugate(
    eng: &Engine,
    g: &PermGroup,
    u: &PermGroup,
    w: &PermGroup,
) -> Result<Option<Permutation>> {
    if u.order() != w.order() {
        return Ok(None);
    }
    if u.same_group(w) {
        return Ok(Some(g.identity()));
    }
    element_search(g, &ConjugatesProp::new(u, w), eng.node_budget)
}

/// Least `k` with `x^k ∈ N`.
pub fn order_mod(x: &Permutation, n: &PermGroup) -> u64 {
    divisors_of(x.order())
        .into_iter()
        .find(|&d| n.contains(&x.pow(d)))
        .expect("x^order is the identity")
}

pub fn divisors_of(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// A normal subgroup `Y ≥ N` of `G` with `Y/N` nontrivial elementary abelian,
/// for `G/N` solvable and nontrivial. Returns `Y` and its prime.
pub fn elementary_abelian_normal_mod(g: &PermGroup, n: &PermGroup) -> (PermGroup, u64) {
    let mut d = g.clone();
    loop {
        let next = derived_subgroup_mod(&d, n);
        if next.order() == n.order() {
            break;
        }
        assert!(next.order() < d.order(), "quotient is not solvable");
        d = next;
    }
    // D/N is abelian; pick an element of prime order modulo N
    let mut best: Option<(u64, Permutation)> = None;
    for x in d.gens() {
        if n.contains(x) {
            continue;
        }
        let k = order_mod(x, n);
        let q = primes_of(k)[0];
        if best.as_ref().is_none_or(|(bq, _)| q < *bq) {
            best = Some((q, x.pow(k / q)));
        }
    }
    let (q, x) = best.expect("D/N nontrivial");
    let mut s = n.gens().to_vec();
    s.push(x);
    (normal_closure(g, &s), q)
}

/// Finest block system in which `a` and `b` share a block.
pub fn minimal_block_system(g: &PermGroup, a: usize, b: usize) -> Vec<Vec<usize>> {
    let n = g.degree();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut queue = vec![(a, b)];
    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
    parent[ra.max(rb)] = ra.min(rb);
    while let Some((x, y)) = queue.pop() {
        for s in g.gens() {
            let (sx, sy) = (s.image(x), s.image(y));
            let (rx, ry) = (find(&mut parent, sx), find(&mut parent, sy));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
                queue.push((sx, sy));
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut index = vec![usize::MAX; n];
    for x in 0..n {
        let r = find(&mut parent, x);
        if index[r] == usize::MAX {
            index[r] = blocks.len();
            blocks.push(Vec::new());
        }
        blocks[index[r]].push(x);
    }
    blocks
}

/// Some nontrivial block system of a transitive group, if it is imprimitive.
pub fn block_system(g: &PermGroup) -> Option<Vec<Vec<usize>>> {
    let support = g.support();
    let &a = support.first()?;
    let stab = g.with_base(vec![a]);
    let chain = stab.index();
    let gens: Vec<Permutation> = if chain.depth() > 1 {
        chain.level_generators(1).cloned().collect()
    } else {
        Vec::new()
    };
    let mut seen = vec![false; g.degree()];
    seen[a] = true;
    let orbit = g.orbit(a);
    let mut reps: Vec<usize> = Vec::new();
    let mut sorted = orbit.clone();
    sorted.sort_unstable();
    for &b in &sorted {
        if seen[b] {
            continue;
        }
        for y in crate::group::orbit_of(g.degree(), &gens, b) {
            seen[y] = true;
        }
        reps.push(b);
    }
    for b in reps {
        let blocks = minimal_block_system(g, a, b);
        let size = blocks.iter().find(|bl| bl.contains(&a)).unwrap().len();
        if size < orbit.len() {
            return Some(
                blocks
                    .into_iter()
                    .filter(|bl| bl.len() > 1 || orbit.contains(&bl[0]))
                    .collect(),
            );
        }
    }
    None
}

/// A Sylow `p`-subgroup; trivial when `p` does not divide the order.
pub fn sylow_subgroup(eng: &Engine, g: &PermGroup, p: u64) -> Result<PermGroup> {
    let order = g.try_order()?;
    let pp = p_part(order, p);
    if pp == 1 {
        return Ok(PermGroup::trivial(g.degree()));
    }
    if pp == order {
        return Ok(g.clone());
    }
    let orbits: Vec<Vec<usize>> = g.orbits().into_iter().filter(|o| o.len() > 1).collect();
    if orbits.len() > 1 || orbits[0].len() < g.degree() {
        // reduce through the action on each orbit
        for o in &orbits {
            let hom = restriction(g, o)?;
            let img = hom.image_group().clone();
            if p_part(img.order(), p) == img.order() {
                continue;
            }
            let ps = sylow_subgroup(eng, &img, p)?;
            let pre = hom.preimage_group(&ps);
            if pre.order() < order {
                return sylow_subgroup(eng, &pre, p);
            }
            return Ok(pre);
        }
        unreachable!("a subdirect product of p-groups is a p-group");
    }
    if let Some(blocks) = block_system(g) {
        let hom = block_action(g, &blocks)?;
        let img = hom.image_group().clone();
        if p_part(img.order(), p) != img.order() {
            let ps = sylow_subgroup(eng, &img, p)?;
            let pre = hom.preimage_group(&ps);
            return sylow_subgroup(eng, &pre, p);
        }
        let kernel = hom.kernel().clone();
        let pk = sylow_subgroup(eng, &kernel, p)?;
        if !pk.is_normal_in(g) {
            let nk = normalizer(eng, g, &pk)?;
            return sylow_subgroup(eng, &nk, p);
        }
        return ascend(eng, g, pk, pp);
    }
    ascend(eng, g, PermGroup::trivial(g.degree()), pp)
}

/// Grows a `p`-subgroup by `p`-elements of its normalizer until it has order `pp`.
fn ascend(eng: &Engine, g: &PermGroup, mut p_sub: PermGroup, pp: u64) -> Result<PermGroup> {
    let p = primes_of(pp)[0];
    let mut rng = eng.rng(0x5910);
    let p_element = |x: &Permutation| -> Permutation {
        let o = x.order();
        x.pow(o / p_part(o, p))
    };
    while p_sub.order() < pp {
        let n = if p_sub.is_trivial() {
            g.clone()
        } else {
            normalizer(eng, g, &p_sub)?
        };
        let mut found = None;
        for x in n.gens() {
            let y = p_element(x);
            if !p_sub.contains(&y) {
                found = Some(y);
                break;
            }
        }
        let mut tries = 0;
        while found.is_none() {
            tries += 1;
            if tries > 100_000 {
                return Err(Error::capacity("no p-element found in the normalizer"));
            }
            let y = p_element(&n.random_element(&mut rng));
            if !p_sub.contains(&y) {
                found = Some(y);
            }
        }
        p_sub = p_sub.extend(found);
        if p_sub.order() > pp || p_part(p_sub.order(), p) != p_sub.order() {
            return Err(Error::Invalid("p-subgroup ascent left the p-group".into()));
        }
    }
    Ok(p_sub)
}

/// Hall `p'`-subgroup of a solvable group.
pub fn hall_pprime_solvable(eng: &Engine, g: &PermGroup, p: u64) -> Result<PermGroup> {
    if !is_solvable(g) {
        return Err(Error::NotSolvable);
    }
    hall_pprime_mod(eng, g, &PermGroup::trivial(g.degree()), p)
}

/// `Q ≥ N` with `Q/N` a Hall `p'`-subgroup of the solvable group `G/N`.
pub fn hall_pprime_mod(eng: &Engine, g: &PermGroup, n: &PermGroup, p: u64) -> Result<PermGroup> {
    let index = g.order() / n.order();
    if p_part(index, p) == 1 {
        return Ok(g.clone());
    }
    if p_part(index, p) == index {
        return Ok(n.clone());
    }
    let (y, q) = elementary_abelian_normal_mod(g, n);
    let upper = hall_pprime_mod(eng, g, &y, p)?;
    if q != p {
        return Ok(upper);
    }
    complement_mod(eng, &upper, &y, n, p)
}

/// For `K ≤ Y ⊴ H` with `Y/K` a `p`-group and `H/Y` a `p'`-group, some
/// `Q ≥ K` with `Q/K` a complement of `Y/K` in `H/K`.
fn complement_mod(
    eng: &Engine,
    h: &PermGroup,
    y: &PermGroup,
    k: &PermGroup,
    p: u64,
) -> Result<PermGroup> {
    if h.order() == y.order() {
        return Ok(k.clone());
    }
    if y.order() == k.order() {
        return Ok(h.clone());
    }
    let (m, r) = elementary_abelian_normal_mod(h, y);
    debug_assert_ne!(r, p);
    let sr = sylow_subgroup(eng, &m, r)?;
    let rt = k.join(&sr);
    let nrt = normalizer(eng, h, &rt)?;
    if nrt.order() < h.order() {
        // Frattini: H = Y N_H(R), and N_H(R) ∩ Y is its normal Sylow p modulo K
        let sp = sylow_subgroup(eng, &nrt, p)?;
        let ny = k.join(&sp);
        return complement_mod(eng, &nrt, &ny, k, p);
    }
    complement_mod(eng, h, &y.join(&rt), &rt, p)
}

/// Representatives and sizes of the conjugacy classes of an explicitly
/// enumerable group, in element-index order.
pub fn class_representatives(g: &PermGroup) -> Vec<(Permutation, usize)> {
    conjugation_orbit_representatives(g, g)
}

/// Orbits of `acting` on the elements of `set` by conjugation; `set` must be
/// normalized by `acting`.
pub fn conjugation_orbit_representatives(
    set: &PermGroup,
    acting: &PermGroup,
) -> Vec<(Permutation, usize)> {
    let elements = set.elements();
    let index: std::collections::HashMap<&[u32], usize> = elements
        .iter()
        .enumerate()
        .map(|(i, x)| (x.images(), i))
        .collect();
    let mut seen = vec![false; elements.len()];
    let mut out = Vec::new();
    for start in 0..elements.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut size = 0;
        while let Some(i) = stack.pop() {
            size += 1;
            for t in acting.gens() {
                let j = index[elements[i].conjugate(t).images()];
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        out.push((elements[start].clone(), size));
    }
    out
}

/// A uniformly random element of `g` outside `n`, if one exists.
pub fn random_outside<R: Rng>(g: &PermGroup, n: &PermGroup, rng: &mut R) -> Option<Permutation> {
    if g.order() == n.order() {
        return None;
    }
    loop {
        let x = g.random_element(rng);
        if !n.contains(&x) {
            return Some(x);
        }
    }
}
