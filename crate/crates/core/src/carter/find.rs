//! Existence and construction of Carter subgroups in arbitrary groups.

use super::condition_e::check_condition_e;
use super::{
    brute_force_carter, carter_solvable, verify_carter, CarterOutcome, Found, Status, Witness,
};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::hom::restriction;
use crate::inducedaut::wreath_embed;
use crate::series::{
    chief_series, decompose_factor, label_for_order, minimal_normal_subgroups, quotient_group,
};
use crate::subgrp::{centralizer, intersection, is_nilpotent, is_solvable, normalizer};

/// Decides whether `G` has a Carter subgroup and constructs one if so.
///
/// `hints` are normal subgroups of `G` (for instance recorded by the builder);
/// they are needed once `|G|` exceeds the enumeration budget. A negative answer
/// is cross-checked against condition (E) along a chief series when one can be
/// computed, which also locates the failing level.
pub fn carter_find(eng: &Engine, g: &PermGroup, hints: &[PermGroup]) -> Result<CarterOutcome> {
    let mut path = Vec::new();
    match find(eng, g, hints, &mut path)? {
        Found::Carter(k) => {
            let cert = verify_carter(eng, g, &k)?;
            Ok(CarterOutcome {
                status: Status::Exists,
                subgroup: Some(k),
                witness: None,
                certificate: Some(cert),
            })
        }
        Found::Missing(mut w) => {
            match chief_series(eng, g, hints).and_then(|s| check_condition_e(eng, g, &s)) {
                Ok(rep) => {
                    if rep.satisfied {
                        return Err(Error::Certificate(
                            "condition (E) holds but the construction found no Carter subgroup"
                                .into(),
                        ));
                    }
                    let cw = rep.witness.expect("failing report has a witness");
                    w.level = cw.level;
                    w.factor = cw.factor;
                    if cw.group.order() != w.group.order() {
                        log::info!(
                            "condition (E) witness of order {} differs from the recursion witness of order {}",
                            cw.group.order(),
                            w.group.order()
                        );
                    }
                }
                Err(e) if e.is_capacity() => {}
                Err(e) => return Err(e),
            }
            Ok(CarterOutcome {
                status: Status::NotExists,
                subgroup: None,
                witness: Some(w),
                certificate: None,
            })
        }
    }
}

fn normal_hints_in(g: &PermGroup, hints: &[PermGroup]) -> Vec<PermGroup> {
    hints
        .iter()
        .filter(|h| h.order() > 1 && g.contains_group(h) && h.is_normal_in(g))
        .cloned()
        .collect()
}

pub(crate) fn find(
    eng: &Engine,
    g: &PermGroup,
    hints: &[PermGroup],
    path: &mut Vec<String>,
) -> Result<Found> {
    if let Some(f) = eng.memo_get(g) {
        return Ok(f);
    }
    let found = find_uncached(eng, g, hints, path)?;
    let stored = match &found {
        Found::Missing(w) => Found::Missing(Witness {
            path: Vec::new(),
            ..w.clone()
        }),
        f => f.clone(),
    };
    eng.memo_put(g, &stored);
    Ok(found)
}

fn missing(mut w: Witness, step: String) -> Found {
    w.path.insert(0, step);
    Found::Missing(w)
}

fn find_uncached(
    eng: &Engine,
    g: &PermGroup,
    hints: &[PermGroup],
    path: &mut Vec<String>,
) -> Result<Found> {
    let order = g.try_order()?;
    if is_nilpotent(g) {
        return Ok(Found::Carter(g.clone()));
    }
    if is_solvable(g) {
        return Ok(Found::Carter(carter_solvable(eng, g)?));
    }
    let hints = normal_hints_in(g, hints);
    let h = minimal_normal_subgroups(eng, g, &hints)?
        .into_iter()
        .next()
        .expect("nontrivial group");

    // Carter subgroup of G/H, then of its preimage
    let q = quotient_group(g, &h)?;
    let qhints: Vec<PermGroup> = hints
        .iter()
        .filter(|x| x.contains_group(&h))
        .map(|x| q.image_of(x))
        .collect();
    let kbar = match find(eng, q.group(), &qhints, path)? {
        Found::Carter(k) => k,
        Found::Missing(w) => return Ok(missing(w, format!("G/H, |G| = {order}, |H| = {}", h.order()))),
    };
    let k = q.preimage(&kbar);
    if k.order() < order {
        let mut khints = vec![h.clone()];
        khints.extend(hints.iter().filter(|x| k.contains_group(x)).cloned());
        return match find(eng, &k, &khints, path)? {
            Found::Carter(c) => {
                verify_carter(eng, g, &c)?;
                Ok(Found::Carter(c))
            }
            Found::Missing(w) => Ok(missing(w, format!("preimage K of order {}", k.order()))),
        };
    }

    // G/H is nilpotent
    if h.is_abelian() {
        return Err(Error::Certificate(
            "abelian minimal normal subgroup with nilpotent quotient in a non-solvable group".into(),
        ));
    }
    let c = centralizer(eng, g, h.gens())?;
    if !c.is_trivial() {
        let q = quotient_group(g, &c)?;
        let kbar = match find(eng, q.group(), &[], path)? {
            Found::Carter(k) => k,
            Found::Missing(w) => {
                return Ok(missing(w, format!("G/C_G(H), |C_G(H)| = {}", c.order())))
            }
        };
        let k1 = q.preimage(&kbar);
        let k = carter_solvable(eng, &k1)?;
        verify_carter(eng, g, &k)?;
        return Ok(Found::Carter(k));
    }

    let trivial = PermGroup::trivial(g.degree());
    let comps = decompose_factor(eng, g, &h, &trivial)?.components;
    let label = label_for_order(comps[0].order());
    if comps.len() == 1 {
        // almost simple
        let list = brute_force_carter(eng, g, eng.enum_budget)?;
        return Ok(match list.into_iter().next() {
            Some(k) => Found::Carter(k),
            None => Found::Missing(Witness {
                level: None,
                factor: None,
                group: g.clone(),
                label,
                path: vec![format!("almost simple group of order {order} over {}", comps[0].order())],
            }),
        });
    }

    let emb = wreath_embed(eng, g, &comps)?;
    let ga = emb.hom.preimage_group(&emb.image_in_base()?);
    let mut ahints = comps.clone();
    ahints.push(h.clone());
    let m = match find(eng, &ga, &ahints, path)? {
        Found::Carter(m) => m,
        Found::Missing(w) => {
            return Ok(missing(w, format!("G ∩ A of order {} inside the wreath embedding", ga.order())))
        }
    };

    // R = (K_1 ∩ T_1) × … × (K_k ∩ T_k) with K_i the projection of M
    let phi_m = emb.hom.image_of(&m);
    let deg = emb.image.degree();
    let mut r_gens = Vec::new();
    for (i, block) in emb.blocks.iter().enumerate() {
        let proj = restriction(&phi_m, block)?;
        let offset = block[0];
        let k_i = PermGroup::from_gens(
            deg,
            proj.image_group().gens().iter().map(|x| x.shifted(offset, deg)).collect(),
        );
        let t_i = emb.hom.image_of(&comps[i]);
        let meet = intersection(eng, &t_i, &k_i)?;
        for x in meet.gens() {
            r_gens.push(emb.hom.preimage(x).expect("T_i lies in the image"));
        }
    }
    let nm = normalizer(eng, g, &m)?;
    let nmr = nm.extend(r_gens);
    if !is_solvable(&nmr) {
        return Err(Error::Certificate("N_G(M)R is not solvable".into()));
    }
    let k = carter_solvable(eng, &nmr)?;
    verify_carter(eng, g, &k)?;
    Ok(Found::Carter(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpspec::{build, parse_spec};

    fn run(s: &str) -> CarterOutcome {
        let eng = Engine::default();
        let b = build(&parse_spec(s).unwrap()).unwrap();
        carter_find(&eng, &b.group, &b.normal_hints()).unwrap()
    }

    #[test]
    fn solvable_and_nilpotent() {
        let o = run("(cyclic 8)");
        assert!(o.exists());
        assert_eq!(o.subgroup.unwrap().order(), 8);
        let o = run("(sym 4)");
        assert_eq!(o.subgroup.unwrap().order(), 8);
    }

    #[test]
    fn alt5_has_none() {
        let o = run("(alt 5)");
        assert_eq!(o.status, Status::NotExists);
        let w = o.witness.unwrap();
        assert_eq!(w.group.order(), 60);
        assert_eq!(w.level, Some(0));
    }

    #[test]
    fn sym5_and_products() {
        let o = run("(sym 5)");
        assert_eq!(o.subgroup.unwrap().order(), 8);
        let o = run("(direct (alt 5) (sym 3))");
        assert_eq!(o.status, Status::NotExists);
        let o = run("(direct (sym 5) (sym 3))");
        assert_eq!(o.subgroup.unwrap().order(), 16);
    }

    #[test]
    fn wreath_cases() {
        let o = run("(wreath (alt 5) 2)");
        assert_eq!(o.status, Status::NotExists);
        let o = run("(wreath (sym 5) 2)");
        assert!(o.exists());
        assert_eq!(o.subgroup.unwrap().order(), 128);
    }
}
