use proptest::prelude::*;
use rand::seq::SliceRandom;

use carter::carter::carter_solvable;
use carter::grpspec::corpus::CORPUS;
use carter::grpspec::{build, parse_spec, BuiltGroup, Construction};
use carter::inducedaut::{induced_aut, wreath_embed, Section};
use carter::series::chief_series;
use carter::subgrp::{
    are_conjugate, centralizer, is_nilpotent, is_solvable, normalizer, primes_of, sylow_subgroup,
};
use carter::{Engine, PermGroup};

fn corpus_group(i: usize) -> (String, BuiltGroup) {
    let s = CORPUS[i % CORPUS.len()];
    (s.to_string(), build(&parse_spec(s).unwrap()).unwrap())
}

fn small_corpus() -> Vec<PermGroup> {
    CORPUS
        .iter()
        .map(|s| build(&parse_spec(s).unwrap()).unwrap().group)
        .filter(|g| g.order() <= 2000)
        .collect()
}

fn random_subgroup(g: &PermGroup, seed: u64, ngens: usize) -> PermGroup {
    let mut rng = Engine::new(seed).rng(7);
    let gens = (0..ngens).map(|_| g.random_element(&mut rng)).collect();
    PermGroup::from_gens(g.degree(), gens)
}

fn leaf() -> impl Strategy<Value = Construction> {
    prop_oneof![
        (1usize..7).prop_map(|n| Construction::Sym { n }),
        (3usize..7).prop_map(|n| Construction::Alt { n }),
        (1usize..9).prop_map(|n| Construction::Cyclic { n }),
        (3usize..9).prop_map(|n| Construction::Dihedral { n }),
        prop::sample::select(vec![4u64, 5, 7, 8, 9]).prop_map(|q| Construction::Psl2 { q }),
        Just(Construction::Gens {
            degree: 5,
            gens: vec![vec![vec![0, 1, 2, 3, 4]], vec![vec![1, 2], vec![3, 4]]],
        }),
    ]
}

fn construction() -> impl Strategy<Value = Construction> {
    leaf().prop_recursive(2, 6, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| Construction::Direct {
                left: Box::new(l),
                right: Box::new(r),
            }),
            (inner, 2usize..4).prop_map(|(b, k)| Construction::Wreath { base: Box::new(b), k }),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(30))]

    #[test]
    fn render_parse_round_trip(ast in construction()) {
        let text = ast.to_string();
        prop_assert_eq!(parse_spec(&text).unwrap(), ast);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn closure_and_base_order(i in 0usize..CORPUS.len(), seed in 0u64..1_000) {
        let (_, b) = corpus_group(i);
        let g = b.group;
        let mut rng = Engine::new(seed).rng(1);
        let x = g.random_element(&mut rng);
        let y = g.random_element(&mut rng);
        prop_assert!(g.contains(&x.then(&y)));
        prop_assert!(g.contains(&x.inverse()));
        let mut pts: Vec<usize> = (0..g.degree()).collect();
        pts.shuffle(&mut rng);
        pts.truncate(3.min(pts.len()));
        prop_assert_eq!(g.with_base(pts).order(), g.order());
    }

    #[test]
    fn normalizer_sampled(i in 0usize..CORPUS.len(), seed in 0u64..1_000) {
        let g = &small_corpus()[i % small_corpus().len()];
        let eng = Engine::new(seed);
        let h = random_subgroup(g, seed, 1);
        let n = normalizer(&eng, g, &h).unwrap();
        prop_assert!(n.contains_group(&h));
        for x in n.gens() {
            prop_assert!(h.normalized_by(x));
        }
        let mut rng = eng.rng(2);
        for _ in 0..10 {
            let x = g.random_element(&mut rng);
            prop_assert_eq!(h.normalized_by(&x), n.contains(&x));
        }
    }

    #[test]
    fn nilpotent_iff_normal_sylows(i in 0usize..CORPUS.len(), seed in 0u64..1_000) {
        let g = &small_corpus()[i % small_corpus().len()];
        let eng = Engine::new(seed);
        let h = random_subgroup(g, seed, 2);
        let normal_sylows = primes_of(h.order())
            .into_iter()
            .all(|p| sylow_subgroup(&eng, &h, p).unwrap().is_normal_in(&h));
        prop_assert_eq!(is_nilpotent(&h), normal_sylows);
    }

    #[test]
    fn aut_times_kernel_is_normalizer(i in 0usize..CORPUS.len()) {
        let (_, b) = corpus_group(i);
        let eng = Engine::new(0);
        let s = chief_series(&eng, &b.group, &b.normal_hints()).unwrap();
        for (lvl, f) in s.factors.iter().enumerate() {
            for t in &f.components {
                let sec = Section::new(t.clone(), s.terms[lvl + 1].clone());
                let r = induced_aut(&eng, &b.group, &sec).unwrap();
                prop_assert_eq!(r.order() * r.kernel.order(), r.normalizer.order());
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn carter_solvable_seed_independent(i in 0usize..CORPUS.len()) {
        let g = &small_corpus()[i % small_corpus().len()];
        prop_assume!(is_solvable(g));
        let ks: Vec<PermGroup> = (0..5u64)
            .map(|s| carter_solvable(&Engine::new(s * 7919 + 1), g).unwrap())
            .collect();
        let eng = Engine::new(0);
        for a in &ks {
            for b in &ks {
                prop_assert!(are_conjugate(&eng, g, a, b).unwrap().is_some());
            }
        }
    }
}

#[test]
fn wreath_embed_preserves_order() {
    let eng = Engine::new(0);
    let mut checked = 0;
    for s in CORPUS.iter().copied().chain(["(wreath (sym 5) 2)", "(wreath (alt 5) 3)"]) {
        let b = build(&parse_spec(s).unwrap()).unwrap();
        let g = &b.group;
        let series = chief_series(&eng, g, &b.normal_hints()).unwrap();
        let last = series.factors.len();
        let Some(f) = series.factors.last().filter(|f| !f.abelian) else { continue };
        let socle = &series.terms[last - 1];
        if centralizer(&eng, g, socle.gens()).unwrap().order() != 1 {
            continue;
        }
        let w = wreath_embed(&eng, g, &f.components).unwrap();
        assert_eq!(w.image.order(), g.order(), "{s}");
        assert!(w.hom.is_injective(), "{s}");
        checked += 1;
    }
    assert!(checked >= 8, "only {checked} groups");
}
