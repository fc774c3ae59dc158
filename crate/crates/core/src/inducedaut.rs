//! Induced automorphism groups `Aut_H(A/B) = N_H(A/B) / C_H(A/B)` and the
//! embedding of a group into a wreath product over its minimal normal subgroup.

use std::collections::HashMap;

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::{graph_group, restriction, Hom};
use crate::perm::Permutation;
use crate::series::{canonical_coset_rep, quotient_group};
use crate::subgrp::{centralizer, normalizer};

/// Largest section `A/B` realized through the action on cosets.
pub const MAX_SECTION_ORDER: u64 = 10_000;

/// A section `A/B` with `B ⊴ A`, both on the ambient point set.
#[derive(Clone, Debug)]
pub struct Section {
    pub a: PermGroup,
    pub b: PermGroup,
}

impl Section {
    pub fn new(a: PermGroup, b: PermGroup) -> Self {
        Section { a, b }
    }

    /// `A/1`.
    pub fn subgroup(a: PermGroup) -> Self {
        let b = PermGroup::trivial(a.degree());
        Section { a, b }
    }

    pub fn order(&self) -> u64 {
        self.a.order() / self.b.order()
    }
}

/// How the automorphisms were realized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AutDomain {
    /// Restriction to points of `supp(A) \ supp(B)`, in the given order.
    Points(Vec<usize>),
    /// Conjugation on the right cosets `Ba`, listed by representative.
    Cosets(usize),
}

#[derive(Clone)]
pub struct InducedAutResult {
    /// `Aut_H(A/B)` as a permutation group.
    pub aut_group: PermGroup,
    /// `C_H(A/B)`, the kernel of `map`.
    pub kernel: PermGroup,
    /// `N_H(A) ∩ N_H(B) → Aut_H(A/B)`.
    pub map: Hom,
    pub normalizer: PermGroup,
    pub domain: AutDomain,
}

impl InducedAutResult {
    pub fn order(&self) -> u64 {
        self.aut_group.order()
    }
}

fn normalizer_of_section(eng: &Engine, h: &PermGroup, sec: &Section) -> Result<PermGroup> {
    let na = normalizer(eng, h, &sec.a)?;
    if sec.b.is_trivial() {
        return Ok(na);
    }
    normalizer(eng, &na, &sec.b)
}

/// `Aut_H(A/B)`. The section need not lie in `H`.
pub fn induced_aut(eng: &Engine, h: &PermGroup, sec: &Section) -> Result<InducedAutResult> {
    if !sec.b.is_normal_in(&sec.a) || !sec.a.contains_group(&sec.b) {
        return Err(Error::NotNormal("B is not normal in A".into()));
    }
    let n = normalizer_of_section(eng, h, sec)?;
    if let Some(res) = by_points(eng, &n, sec)? {
        return Ok(res);
    }
    by_cosets(&n, sec)
}

fn by_points(eng: &Engine, n: &PermGroup, sec: &Section) -> Result<Option<InducedAutResult>> {
    let sb = sec.b.support();
    let mut in_b = vec![false; sec.a.degree()];
    for &x in &sb {
        in_b[x] = true;
    }
    let omega: Vec<usize> = sec.a.support().into_iter().filter(|&x| !in_b[x]).collect();
    if omega.is_empty() {
        return Ok(None);
    }
    let ra = restriction(&sec.a, &omega)?;
    if ra.image_group().order() != sec.order() {
        return Ok(None);
    }
    let rn = restriction(n, &omega)?;
    let c = centralizer(eng, rn.image_group(), ra.image_group().gens())?;
    if !c.is_trivial() {
        return Ok(None);
    }
    Ok(Some(InducedAutResult {
        aut_group: rn.image_group().clone(),
        kernel: rn.kernel().clone(),
        map: rn,
        normalizer: n.clone(),
        domain: AutDomain::Points(omega),
    }))
}

fn by_cosets(n: &PermGroup, sec: &Section) -> Result<InducedAutResult> {
    let index = sec.order();
    if index > MAX_SECTION_ORDER {
        return Err(Error::capacity(format!(
            "section of order {index} exceeds {MAX_SECTION_ORDER}"
        )));
    }
    let b = sec.b.clone();
    let mut reps = vec![canonical_coset_rep(&b, &sec.a.identity())];
    let mut lookup: HashMap<Permutation, u32> = HashMap::new();
    lookup.insert(reps[0].clone(), 0);
    let mut head = 0;
    while head < reps.len() {
        for s in sec.a.gens() {
            let c = canonical_coset_rep(&b, &reps[head].then(s));
            if !lookup.contains_key(&c) {
                lookup.insert(c.clone(), reps.len() as u32);
                reps.push(c);
            }
        }
        head += 1;
    }
    let m = reps.len();
    let map = Hom::from_fn(n, m, None, move |x| {
        let imgs = reps
            .iter()
            .map(|r| lookup[&canonical_coset_rep(&b, &r.conjugate(x))])
            .collect();
        Permutation::from_images_unchecked(imgs)
    })?;
    Ok(InducedAutResult {
        aut_group: map.image_group().clone(),
        kernel: map.kernel().clone(),
        map,
        normalizer: n.clone(),
        domain: AutDomain::Cosets(m),
    })
}

/// Both realizations of `Aut_G(S)` for a section `S = A/B` with `N ≤ B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvarianceReport {
    pub order_in_g: u64,
    pub order_in_quotient: u64,
    /// The graph of `N_G(S) → Aut × Aut` has the order of each factor.
    pub isomorphic: bool,
}

impl InvarianceReport {
    pub fn holds(&self) -> bool {
        self.order_in_g == self.order_in_quotient && self.isomorphic
    }
}

/// Compares `Aut_G(A/B)` with `Aut_{G/N}((A/N)/(B/N))`.
pub fn induced_aut_quotient_invariance(
    eng: &Engine,
    g: &PermGroup,
    n: &PermGroup,
    sec: &Section,
) -> Result<InvarianceReport> {
    if !n.is_normal_in(g) {
        return Err(Error::NotNormal("N is not normal in G".into()));
    }
    if !sec.b.contains_group(n) {
        return Err(Error::NotContained("N is not contained in B".into()));
    }
    let up = induced_aut(eng, g, sec)?;
    let q = quotient_group(g, n)?;
    let down_sec = Section::new(q.image_of(&sec.a), q.image_of(&sec.b));
    let down = induced_aut(eng, q.group(), &down_sec)?;

    // route one through `N_G(S)`; its image in `G/N` is `N_{G/N}(S̄)`
    let src = &up.normalizer;
    let mut imgs = Vec::with_capacity(src.gens().len());
    for x in src.gens() {
        let a = up.map.image(x);
        let b = down.map.image(&q.map(x));
        let mut v: Vec<u32> = a.images().to_vec();
        let off = a.degree() as u32;
        v.extend(b.images().iter().map(|&y| y + off));
        imgs.push(Permutation::from_images_unchecked(v));
    }
    let deg = up.aut_group.degree() + down.aut_group.degree();
    let graph = PermGroup::from_gens(deg, imgs);
    let go = graph.order();
    Ok(InvarianceReport {
        order_in_g: up.order(),
        order_in_quotient: down.order(),
        isomorphic: go == up.order() && go == down.order(),
    })
}

/// `G ↪ Aut_G(T_1) ≀ Sym_k` for a minimal normal subgroup `T_1 × ... × T_k`.
#[derive(Clone)]
pub struct WreathEmbedding {
    pub hom: Hom,
    /// Image of `G`.
    pub image: PermGroup,
    /// Points of the image domain belonging to each component.
    pub blocks: Vec<Vec<usize>>,
    /// `Aut_G(T_i)` realized on block `i`.
    pub aut_groups: Vec<PermGroup>,
    /// `t_i` with `T_{r(i)}^{t_i} = T_i`, `r(i)` the orbit representative.
    pub transversal: Vec<Permutation>,
    /// Base group `Aut_G(T_1) × ... × Aut_G(T_k)` in the image domain.
    pub base: PermGroup,
}

impl WreathEmbedding {
    /// Image of `G` intersected with the base group: the stabilizer of every block.
    pub fn image_in_base(&self) -> Result<PermGroup> {
        let act = crate::hom::block_action(&self.image, &self.blocks)?;
        Ok(act.kernel().clone())
    }
}

fn component_index(comps: &[PermGroup], x: &PermGroup) -> Option<usize> {
    comps.iter().position(|c| c.same_group(x))
}

/// Embeds `G` given the simple components of a nonabelian minimal normal subgroup.
/// Requires `C_G(T_1 ⋯ T_k) = 1`.
pub fn wreath_embed(eng: &Engine, g: &PermGroup, comps: &[PermGroup]) -> Result<WreathEmbedding> {
    let k = comps.len();
    if k == 0 {
        return Err(Error::Invalid("no components".into()));
    }
    let socle_gens: Vec<Permutation> = comps.iter().flat_map(|c| c.gens().to_vec()).collect();
    let socle = PermGroup::from_gens(g.degree(), socle_gens.clone());
    if !socle.is_normal_in(g) {
        return Err(Error::NotNormal("components do not generate a normal subgroup".into()));
    }
    if !centralizer(eng, g, &socle_gens)?.is_trivial() {
        return Err(Error::Invalid("G centralizes part of the socle".into()));
    }

    // orbits of G on the components, with conjugating elements
    let mut rep_of: Vec<Option<usize>> = vec![None; k];
    let mut trans: Vec<Option<Permutation>> = vec![None; k];
    for r in 0..k {
        if rep_of[r].is_some() {
            continue;
        }
        rep_of[r] = Some(r);
        trans[r] = Some(g.identity());
        let mut queue = vec![r];
        while let Some(i) = queue.pop() {
            for s in g.gens() {
                let img = comps[i].conjugate(s);
                let j = component_index(comps, &img)
                    .ok_or_else(|| Error::Invalid("components are not permuted by G".into()))?;
                if rep_of[j].is_none() {
                    rep_of[j] = Some(r);
                    trans[j] = Some(trans[i].as_ref().unwrap().then(s));
                    queue.push(j);
                }
            }
        }
    }
    let rep_of: Vec<usize> = rep_of.into_iter().map(Option::unwrap).collect();
    let trans: Vec<Permutation> = trans.into_iter().map(Option::unwrap).collect();

    let mut auts: HashMap<usize, InducedAutResult> = HashMap::new();
    for &r in &rep_of {
        if let std::collections::hash_map::Entry::Vacant(e) = auts.entry(r) {
            e.insert(induced_aut(eng, g, &Section::subgroup(comps[r].clone()))?);
        }
    }
    let mut offsets = Vec::with_capacity(k);
    let mut deg = 0;
    for i in 0..k {
        offsets.push(deg);
        deg += auts[&rep_of[i]].aut_group.degree();
    }
    let blocks: Vec<Vec<usize>> = (0..k)
        .map(|i| (offsets[i]..offsets[i] + auts[&rep_of[i]].aut_group.degree()).collect())
        .collect();
    let aut_groups: Vec<PermGroup> = (0..k).map(|i| auts[&rep_of[i]].aut_group.clone()).collect();
    let maps: Vec<Hom> = (0..k).map(|i| auts[&rep_of[i]].map.clone()).collect();

    let mut base_gens = Vec::new();
    for i in 0..k {
        for x in aut_groups[i].gens() {
            base_gens.push(x.shifted(offsets[i], deg));
        }
    }
    let base = PermGroup::from_gens(deg, base_gens);

    let comps_owned: Vec<PermGroup> = comps.to_vec();
    let trans_c = trans.clone();
    let offsets_c = offsets.clone();
    let hom = Hom::from_fn(g, deg, None, move |x| {
        let mut v = vec![0u32; deg];
        for i in 0..k {
            let img = comps_owned[i].conjugate(x);
            let j = component_index(&comps_owned, &img).expect("components are permuted");
            let y = trans_c[i].then(x).then(&trans_c[j].inverse());
            let a = maps[i].image(&y);
            for d in 0..a.degree() {
                v[offsets_c[i] + d] = (offsets_c[j] + a.image(d)) as u32;
            }
        }
        Permutation::from_images_unchecked(v)
    })?;
    if hom.image_group().order() != g.order() {
        return Err(Error::Certificate("wreath embedding is not injective".into()));
    }
    let image = hom.image_group().clone();
    Ok(WreathEmbedding {
        hom,
        image,
        blocks,
        aut_groups,
        transversal: trans,
        base,
    })
}

/// Graph-group certificate that `hom` is a well defined homomorphism.
pub fn certify_hom(hom: &Hom) -> bool {
    graph_group(hom.source(), hom.gen_images()).order() == hom.source().order()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpspec::{build, parse_spec};

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    fn group(s: &str) -> PermGroup {
        build(&parse_spec(s).unwrap()).unwrap().group
    }

    #[test]
    fn s3_acts_on_c3_by_inversion() {
        let eng = Engine::default();
        let s3 = group("(sym 3)");
        let a = PermGroup::from_gens(3, vec![perm(3, &[&[0, 1, 2]])]);
        let r = induced_aut(&eng, &s3, &Section::subgroup(a)).unwrap();
        assert_eq!(r.order(), 2);
        assert_eq!(r.kernel.order(), 3);
    }

    #[test]
    fn abelian_groups_induce_nothing() {
        let eng = Engine::default();
        let g = group("(direct (cyclic 4) (cyclic 6))");
        let a = PermGroup::from_gens(10, vec![g.gens()[0].clone()]);
        let r = induced_aut(&eng, &g, &Section::subgroup(a)).unwrap();
        assert_eq!(r.order(), 1);
        let r = induced_aut(&eng, &g, &Section::subgroup(g.clone())).unwrap();
        assert_eq!(r.order(), 1);
    }

    #[test]
    fn klein_four_in_s4() {
        let eng = Engine::default();
        let s4 = group("(sym 4)");
        let v = PermGroup::from_gens(4, vec![perm(4, &[&[0, 1], &[2, 3]]), perm(4, &[&[0, 2], &[1, 3]])]);
        let r = induced_aut(&eng, &s4, &Section::subgroup(v.clone())).unwrap();
        assert_eq!(r.order(), 6);
        assert_eq!(r.kernel.order(), 4);
        // transpositions invert A4/V
        let a4 = group("(alt 4)");
        let r = induced_aut(&eng, &s4, &Section::new(a4, v)).unwrap();
        assert_eq!(r.order(), 2);
        assert!(matches!(r.domain, AutDomain::Cosets(3)));
    }

    #[test]
    fn section_with_disjoint_support() {
        let eng = Engine::default();
        let g = group("(wreath (alt 5) 2)");
        let t1 = PermGroup::from_gens(
            10,
            vec![perm(10, &[&[0, 1, 2]]), perm(10, &[&[0, 1, 2, 3, 4]])],
        );
        let t2 = PermGroup::from_gens(
            10,
            vec![perm(10, &[&[5, 6, 7]]), perm(10, &[&[5, 6, 7, 8, 9]])],
        );
        let both = t1.join(&t2);
        let r = induced_aut(&eng, &g, &Section::new(both, t2)).unwrap();
        assert_eq!(r.order(), 60);
        assert_eq!(r.domain, AutDomain::Points(vec![0, 1, 2, 3, 4]));
    }

    #[test]
    fn sym5_embeds_over_alt5() {
        let eng = Engine::default();
        let s5 = group("(sym 5)");
        let a5 = group("(alt 5)");
        let e = wreath_embed(&eng, &s5, &[a5]).unwrap();
        assert_eq!(e.image.order(), 120);
        assert!(certify_hom(&e.hom));
        assert_eq!(e.image_in_base().unwrap().order(), 120);
    }

    #[test]
    fn wreath_embedding_of_a5_wr_2() {
        let eng = Engine::default();
        let g = group("(wreath (alt 5) 2)");
        let t1 = PermGroup::from_gens(
            10,
            vec![perm(10, &[&[0, 1, 2]]), perm(10, &[&[0, 1, 2, 3, 4]])],
        );
        let t2 = PermGroup::from_gens(
            10,
            vec![perm(10, &[&[5, 6, 7]]), perm(10, &[&[5, 6, 7, 8, 9]])],
        );
        let e = wreath_embed(&eng, &g, &[t1, t2]).unwrap();
        assert_eq!(e.image.order(), 7200);
        assert_eq!(e.image_in_base().unwrap().order(), 3600);
        assert!(certify_hom(&e.hom));
    }

    #[test]
    fn centralizing_groups_are_rejected() {
        let eng = Engine::default();
        let g = group("(direct (alt 5) (cyclic 2))");
        let a5 = PermGroup::from_gens(7, vec![perm(7, &[&[0, 1, 2]]), perm(7, &[&[0, 1, 2, 3, 4]])]);
        assert!(wreath_embed(&eng, &g, &[a5]).is_err());
    }

    #[test]
    fn invariance_under_quotients() {
        let eng = Engine::default();
        let s4 = group("(sym 4)");
        let v = PermGroup::from_gens(4, vec![perm(4, &[&[0, 1], &[2, 3]]), perm(4, &[&[0, 2], &[1, 3]])]);
        let a4 = group("(alt 4)");
        let rep = induced_aut_quotient_invariance(&eng, &s4, &v, &Section::new(s4.clone(), a4)).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.order_in_g, 1);
        let rep = induced_aut_quotient_invariance(&eng, &s4, &v, &Section::new(group("(alt 4)"), v.clone())).unwrap();
        assert!(rep.holds());
        assert_eq!(rep.order_in_g, 2);
    }
}
