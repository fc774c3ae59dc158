//! Builders turning constructions into permutation groups.

use std::collections::BTreeMap;

use super::ast::{Construction, Generator};
use super::field::Field;
use super::parse::{degree_of, parse_spec, validate};
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Permutation;

/// A group with the subgroups its construction records.
#[derive(Clone, Debug)]
pub struct BuiltGroup {
    pub group: PermGroup,
    /// Named subgroups; all contained in `group`.
    pub named: BTreeMap<String, PermGroup>,
    /// Names of the recorded subgroups that are normal (checked at build time).
    pub normal: Vec<String>,
    pub ast: Construction,
}

impl BuiltGroup {
    fn plain(group: PermGroup, ast: Construction) -> Self {
        BuiltGroup {
            group,
            named: BTreeMap::new(),
            normal: Vec::new(),
            ast,
        }
    }

    /// Normal subgroups recorded by the construction, largest first.
    pub fn normal_hints(&self) -> Vec<PermGroup> {
        let mut v: Vec<PermGroup> = self.normal.iter().map(|n| self.named[n].clone()).collect();
        v.sort_by_key(|h| std::cmp::Reverse(h.order()));
        v
    }

    /// Records a named subgroup, checking containment and, if claimed, normality.
    pub fn record(&mut self, name: &str, sub: PermGroup, normal: bool) -> Result<()> {
        for x in sub.gens() {
            if !self.group.try_contains(x)? {
                return Err(Error::NotContained(format!("named subgroup {name}")));
            }
        }
        if normal {
            for g in self.group.gens() {
                for x in sub.gens() {
                    if !sub.try_contains(&x.conjugate(g))? {
                        return Err(Error::NotNormal(format!("named subgroup {name}")));
                    }
                }
            }
            self.normal.retain(|n| n != name);
            self.normal.push(name.to_string());
        }
        self.named.insert(name.to_string(), sub);
        Ok(())
    }
}

/// Parses, validates and builds.
pub fn build_spec(text: &str) -> Result<BuiltGroup> {
    let ast = parse_spec(text)?;
    validate(&ast)?;
    build(&ast)
}

fn perm_of(degree: usize, g: &Generator) -> Result<Permutation> {
    Permutation::from_cycles(degree, g)
}

fn cycle(degree: usize, pts: impl IntoIterator<Item = usize>) -> Permutation {
    let c: Vec<usize> = pts.into_iter().collect();
    Permutation::from_cycles(degree, &[c]).expect("distinct points in range")
}

pub fn symmetric(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(cycle(n, [0, 1]));
        gens.push(cycle(n, 0..n));
    }
    PermGroup::from_gens(n, gens)
}

pub fn alternating(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 3 {
        gens.push(cycle(n, [0, 1, 2]));
        if n > 3 {
            if n % 2 == 1 {
                gens.push(cycle(n, 0..n));
            } else {
                gens.push(cycle(n, 1..n));
            }
        }
    }
    PermGroup::from_gens(n, gens)
}

pub fn cyclic(n: usize) -> PermGroup {
    PermGroup::from_gens(n, vec![cycle(n, 0..n)])
}

/// Dihedral group of order `2n` acting on the vertices of an `n`-gon.
pub fn dihedral(n: usize) -> PermGroup {
    let refl: Vec<Vec<usize>> = (1..n).filter(|&i| i < n - i).map(|i| vec![i, n - i]).collect();
    PermGroup::from_gens(
        n,
        vec![cycle(n, 0..n), Permutation::from_cycles(n, &refl).unwrap()],
    )
}

/// Point of the projective line: `∞` is 0, field element `a` is `a + 1`.
fn projective_perm(q: usize, f: impl Fn(Option<u32>) -> Option<u32>) -> Permutation {
    let images = (0..=q)
        .map(|pt| {
            let x = if pt == 0 { None } else { Some(pt as u32 - 1) };
            match f(x) {
                None => 0,
                Some(y) => y + 1,
            }
        })
        .collect();
    Permutation::from_images(images).expect("projective maps are bijective")
}

fn psl2_gens(field: &Field) -> Vec<Permutation> {
    let q = field.q as usize;
    let w = field.primitive_element();
    let w2 = field.mul(w, w);
    let translate = projective_perm(q, |x| x.map(|a| field.add(a, 1)));
    let scale = projective_perm(q, |x| x.map(|a| field.mul(w2, a)));
    let invert = projective_perm(q, |x| match x {
        None => Some(0),
        Some(0) => None,
        Some(a) => Some(field.neg(field.inv(a))),
    });
    vec![translate, scale, invert]
}

/// `PSL_2(q)` on the `q + 1` points of the projective line.
pub fn psl2(q: u64) -> Result<PermGroup> {
    let field = Field::new(q)?;
    let order = crate::series::psl2_order(q);
    Ok(PermGroup::with_known_order(q as usize + 1, psl2_gens(&field), order))
}

/// The field automorphism `x ↦ x^p` on the projective line.
pub fn frobenius(q: u64) -> Result<Permutation> {
    let field = Field::new(q)?;
    Ok(projective_perm(q as usize, |x| x.map(|a| field.pow(a, field.p))))
}

/// `PSL_2(q) ⋊ ⟨x ↦ x^p⟩` on the projective line.
pub fn psigmal2(q: u64) -> Result<PermGroup> {
    let field = Field::new(q)?;
    let mut gens = psl2_gens(&field);
    gens.push(frobenius(q)?);
    let order = crate::series::psl2_order(q) * field.e as u64;
    Ok(PermGroup::with_known_order(q as usize + 1, gens, order))
}

/// `A × B` on the disjoint union, `A` first.
pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
    let n = a.degree() + b.degree();
    let mut gens: Vec<Permutation> = a.gens().iter().map(|x| x.shifted(0, n)).collect();
    gens.extend(b.gens().iter().map(|x| x.shifted(a.degree(), n)));
    PermGroup::with_known_order(n, gens, a.order() * b.order())
}

/// Imprimitive wreath product `A ≀ Sym_k`; returns the group and its base `A^k`.
pub fn wreath_product(a: &PermGroup, k: usize) -> (PermGroup, PermGroup) {
    let m = a.degree();
    let n = m * k;
    let base_gens: Vec<Permutation> = (0..k)
        .flat_map(|i| a.gens().iter().map(move |x| x.shifted(i * m, n)))
        .collect();
    let base_order = a.order().pow(k as u32);
    let base = PermGroup::with_known_order(n, base_gens.clone(), base_order);
    let block_perm = |pi: &dyn Fn(usize) -> usize| {
        Permutation::from_images(
            (0..n)
                .map(|x| (pi(x / m) * m + x % m) as u32)
                .collect(),
        )
        .expect("block permutation")
    };
    let mut gens = base_gens;
    if k >= 2 {
        gens.push(block_perm(&|b| match b {
            0 => 1,
            1 => 0,
            _ => b,
        }));
        gens.push(block_perm(&|b| (b + 1) % k));
    }
    let factorial: u64 = (1..=k as u64).product();
    let group = PermGroup::with_known_order(n, gens, base_order * factorial);
    (group, base)
}

/// Builds a validated construction.
pub fn build(ast: &Construction) -> Result<BuiltGroup> {
    let n = degree_of(ast);
    let built = match ast {
        Construction::Gens { degree, gens } => {
            let ps = gens
                .iter()
                .map(|g| perm_of(*degree, g))
                .collect::<Result<Vec<_>>>()?;
            BuiltGroup::plain(PermGroup::new(*degree, ps)?, ast.clone())
        }
        Construction::Sym { n } => BuiltGroup::plain(symmetric(*n), ast.clone()),
        Construction::Alt { n } => BuiltGroup::plain(alternating(*n), ast.clone()),
        Construction::Cyclic { n } => BuiltGroup::plain(cyclic(*n), ast.clone()),
        Construction::Dihedral { n } => BuiltGroup::plain(dihedral(*n), ast.clone()),
        Construction::Psl2 { q } => BuiltGroup::plain(psl2(*q)?, ast.clone()),
        Construction::Psigmal2 { q } => {
            let mut b = BuiltGroup::plain(psigmal2(*q)?, ast.clone());
            b.record("socle", psl2(*q)?, true)?;
            b
        }
        Construction::Direct { left, right } => {
            let l = build(left)?;
            let r = build(right)?;
            let g = direct_product(&l.group, &r.group);
            let mut b = BuiltGroup::plain(g, ast.clone());
            let shift = |h: &PermGroup, off: usize| {
                PermGroup::from_gens(n, h.gens().iter().map(|x| x.shifted(off, n)).collect())
            };
            b.record("left", shift(&l.group, 0), true)?;
            b.record("right", shift(&r.group, l.group.degree()), true)?;
            b
        }
        Construction::Wreath { base, k } => {
            let a = build(base)?;
            let (g, base_group) = wreath_product(&a.group, *k);
            let mut b = BuiltGroup::plain(g, ast.clone());
            b.record("base", base_group, true)?;
            if let Some(s) = a.named.get("socle") {
                let (_, socle_base) = wreath_product(s, *k);
                b.record("socle", socle_base, true)?;
            }
            b
        }
        Construction::Semidirect { normal, gens } => {
            let inner = build(normal)?;
            let extra = gens
                .iter()
                .map(|g| perm_of(n, g))
                .collect::<Result<Vec<_>>>()?;
            for x in &extra {
                if !inner.group.normalized_by(x) {
                    return Err(Error::Semantic(format!(
                        "generator {x} does not normalize the normal factor"
                    )));
                }
            }
            let g = inner.group.extend(extra);
            let mut b = BuiltGroup::plain(g, ast.clone());
            b.record("normal", inner.group.clone(), true)?;
            b
        }
        Construction::Subgroup { of, gens } => {
            let outer = build(of)?;
            let ps = gens
                .iter()
                .map(|g| perm_of(n, g))
                .collect::<Result<Vec<_>>>()?;
            for x in &ps {
                if !outer.group.contains(x) {
                    return Err(Error::Semantic(format!(
                        "generator {x} is not in the ambient group"
                    )));
                }
            }
            BuiltGroup::plain(PermGroup::new(n, ps)?, ast.clone())
        }
        Construction::PaperExample => build_paper_example()?,
    };
    Ok(built)
}

/// Order of the example group: `|PSL_2(27)|^2 · 3 · 2`.
pub const PAPER_EXAMPLE_ORDER: u64 = 9828 * 9828 * 6;

/// `G = (H ⋊ ⟨(φ, φ^-1)⟩) ⋊ Sym_2` inside `PΣL_2(27) ≀ Sym_2` on 56 points,
/// where `H = PSL_2(27) × PSL_2(27)` and `φ` is the Frobenius map.
///
/// Named subgroups: `H` (also `socle`), `GcapM` (`H` with `(φ, φ^-1)`),
/// `T1`, `T2` (the two simple factors), `sigma` (the block swap), and `L1`
/// (the first copy of `PΣL_2(27)` inside the ambient wreath product).
pub fn build_paper_example() -> Result<BuiltGroup> {
    let t = psl2(27)?;
    let phi = frobenius(27)?;
    let m = 28;
    let n = 56;
    let t1: Vec<Permutation> = t.gens().iter().map(|x| x.shifted(0, n)).collect();
    let t2: Vec<Permutation> = t.gens().iter().map(|x| x.shifted(m, n)).collect();
    let mut pp = phi.shifted(0, n);
    pp = pp.then(&phi.inverse().shifted(m, n));
    let sigma = Permutation::from_images((0..n).map(|x| ((x + m) % n) as u32).collect())?;
    let tord = 9828u64;
    let h_gens: Vec<Permutation> = t1.iter().chain(&t2).cloned().collect();
    let h = PermGroup::with_known_order(n, h_gens.clone(), tord * tord);
    let mut gm_gens = h_gens.clone();
    gm_gens.push(pp.clone());
    let gm = PermGroup::with_known_order(n, gm_gens.clone(), tord * tord * 3);
    let mut g_gens = gm_gens;
    g_gens.push(sigma.clone());
    let g = PermGroup::with_known_order(n, g_gens, PAPER_EXAMPLE_ORDER);
    let mut b = BuiltGroup::plain(g, Construction::PaperExample);
    b.record("H", h.clone(), true)?;
    b.record("socle", h, true)?;
    b.record("GcapM", gm, true)?;
    b.record("T1", PermGroup::with_known_order(n, t1.clone(), tord), false)?;
    b.record("T2", PermGroup::with_known_order(n, t2, tord), false)?;
    b.record("sigma", PermGroup::from_gens(n, vec![sigma]), false)?;
    let mut l1 = t1;
    l1.push(phi.shifted(0, n));
    b.named.insert("L1".into(), PermGroup::with_known_order(n, l1, tord * 3));
    Ok(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Closure oracle: number of elements reachable from the generators.
    fn closure_size(g: &PermGroup) -> usize {
        let mut seen = std::collections::HashSet::new();
        let id = g.identity();
        seen.insert(id.clone());
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            for s in g.gens() {
                let y = x.then(s);
                if seen.insert(y.clone()) {
                    stack.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn family_orders_match_closure() {
        for (text, order) in [
            ("(sym 4)", 24),
            ("(alt 5)", 60),
            ("(alt 6)", 360),
            ("(cyclic 6)", 6),
            ("(dihedral 5)", 10),
            ("(dihedral 4)", 8),
            ("(wreath (sym 2) 2)", 8),
            ("(psl2 4)", 60),
            ("(psl2 7)", 168),
            ("(psl2 8)", 504),
            ("(psl2 9)", 360),
            ("(psigmal2 4)", 120),
            ("(psigmal2 9)", 720),
            ("(direct (cyclic 2) (sym 3))", 12),
        ] {
            let b = build_spec(text).unwrap();
            let plain = PermGroup::from_gens(b.group.degree(), b.group.gens().to_vec());
            assert_eq!(plain.order(), order, "{text}");
            assert_eq!(closure_size(&plain), order as usize, "{text}");
        }
    }

    #[test]
    fn psl2_27_order() {
        let g = psl2(27).unwrap();
        let plain = PermGroup::from_gens(28, g.gens().to_vec());
        assert_eq!(plain.order(), 9828);
        assert_eq!(closure_size(&plain), 9828);
        let l = psigmal2(27).unwrap();
        assert_eq!(PermGroup::from_gens(28, l.gens().to_vec()).order(), 29484);
    }

    #[test]
    fn psigmal2_orders_for_all_fields() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27, 29, 31, 32] {
            let e = Field::new(q).unwrap().e as u64;
            let g = PermGroup::from_gens(q as usize + 1, psigmal2(q).unwrap().gens().to_vec());
            assert_eq!(g.order(), crate::series::psl2_order(q) * e, "q = {q}");
        }
    }

    #[test]
    fn build_is_deterministic() {
        let a = build_spec("(wreath (psl2 7) 2)").unwrap();
        let b = build_spec("(wreath (psl2 7) 2)").unwrap();
        assert_eq!(a.group.gens(), b.group.gens());
        assert_eq!(a.group.order(), 168 * 168 * 2);
        // the ambient wreath product of the example is beyond the order cap
        let err = build_spec("(wreath (psigmal2 27) 2)").unwrap_err();
        assert!(err.is_capacity());
    }

    #[test]
    fn semidirect_and_subgroup_checks() {
        let ok = build_spec("(semidirect (gens 4 (((0 1) (2 3)) ((0 2) (1 3)))) ((0 1 2)))").unwrap();
        assert_eq!(ok.group.order(), 12);
        assert!(ok.named.contains_key("normal"));
        assert!(build_spec("(semidirect (gens 4 ((0 1))) ((1 2)))").is_err());
        assert!(build_spec("(subgroup (alt 4) ((0 1)))").is_err());
        assert_eq!(build_spec("(subgroup (sym 4) ((0 1 2 3)))").unwrap().group.order(), 4);
    }

    #[test]
    fn paper_example_structure() {
        let b = build_paper_example().unwrap();
        let g = PermGroup::from_gens(56, b.group.gens().to_vec());
        assert_eq!(g.order(), PAPER_EXAMPLE_ORDER);
        assert_eq!(PAPER_EXAMPLE_ORDER, 579_537_504);
        assert_eq!(b.named["socle"].order(), 9828 * 9828);
        assert_eq!(g.order() / b.named["GcapM"].order(), 2);
        assert_eq!(g.order() / b.named["H"].order(), 6);
        assert_eq!(b.normal, vec!["H", "socle", "GcapM"]);
    }
}
