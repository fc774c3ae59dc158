//! Condition (E) along a chief series.

use rayon::prelude::*;
use serde::Serialize;

use super::find::find;
use super::{brute_force_carter, carter_solvable, verify_carter, Found, Witness};
use crate::engine::Engine;
use crate::error::Result;
use crate::group::PermGroup;
use crate::inducedaut::{induced_aut, Section};
use crate::series::{quotient_group, ChiefSeriesData, SimpleTypeLabel};
use crate::subgrp::is_solvable;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Solvable,
    BruteForce,
    Recursion,
    /// `K̄_i` does not exist, so the level imposes nothing.
    Vacuous,
}

/// One pair `(i, j)`.
#[derive(Clone, Debug)]
pub struct ConditionECell {
    pub level: usize,
    pub factor: usize,
    pub label: SimpleTypeLabel,
    /// `|K̄_i|` in `G/G_i`.
    pub carter_order: Option<u64>,
    /// `Aut_{K_i}(T_{i,j})`.
    pub aut_group: Option<PermGroup>,
    pub has_carter: bool,
    pub method: Method,
}

#[derive(Clone, Debug)]
pub struct ConditionEReport {
    pub cells: Vec<ConditionECell>,
    pub satisfied: bool,
    /// First failing cell.
    pub witness: Option<Witness>,
    /// Number of chief factors; fewer levels appear in `cells` after a failure.
    pub levels: usize,
}

/// Decides whether `A` has a Carter subgroup.
pub(crate) fn decide(eng: &Engine, a: &PermGroup) -> Result<(bool, Method)> {
    if is_solvable(a) {
        let k = carter_solvable(eng, a)?;
        verify_carter(eng, a, &k)?;
        return Ok((true, Method::Solvable));
    }
    if let Some(f) = eng.memo_get(a) {
        return Ok((matches!(f, Found::Carter(_)), Method::BruteForce));
    }
    if a.order() <= eng.enum_budget {
        let list = brute_force_carter(eng, a, eng.enum_budget)?;
        let has = !list.is_empty();
        if let Some(k) = list.into_iter().next() {
            eng.memo_put(a, &Found::Carter(k));
        }
        return Ok((has, Method::BruteForce));
    }
    let f = find(eng, a, &[], &mut Vec::new())?;
    Ok((matches!(f, Found::Carter(_)), Method::Recursion))
}

/// Checks condition (E) for `G` along `series`, stopping after the first
/// level with a failing factor.
///
/// At level `i`, `K_i` is represented by the full preimage in `G` of a Carter
/// subgroup of `G/G_i`, and `T_{i,j}` by the section `T_{i,j}/G_{i+1}`.
pub fn check_condition_e(
    eng: &Engine,
    g: &PermGroup,
    series: &ChiefSeriesData,
) -> Result<ConditionEReport> {
    let terms = &series.terms;
    let levels = series.factors.len();
    let mut cells = Vec::new();
    for i in 0..levels {
        let factor = &series.factors[i];
        let below = &terms[i + 1];
        let k_i = if i == 0 {
            Some(g.clone())
        } else {
            let q = quotient_group(g, &terms[i])?;
            let hints: Vec<PermGroup> = terms[1..i].iter().map(|t| q.image_of(t)).collect();
            match find(eng, q.group(), &hints, &mut Vec::new())? {
                Found::Carter(kb) => Some(q.preimage(&kb)),
                Found::Missing(_) => None,
            }
        };
        let Some(k_i) = k_i else {
            for j in 0..factor.k() {
                cells.push(ConditionECell {
                    level: i,
                    factor: j,
                    label: factor.label.clone(),
                    carter_order: None,
                    aut_group: None,
                    has_carter: true,
                    method: Method::Vacuous,
                });
            }
            continue;
        };
        let carter_order = k_i.order() / terms[i].order();
        let level: Vec<Result<ConditionECell>> = factor
            .components
            .par_iter()
            .enumerate()
            .map(|(j, t)| {
                let sec = Section::new(t.clone(), below.clone());
                let aut = induced_aut(eng, &k_i, &sec)?.aut_group;
                let (has_carter, method) = decide(eng, &aut)?;
                Ok(ConditionECell {
                    level: i,
                    factor: j,
                    label: factor.label.clone(),
                    carter_order: Some(carter_order),
                    aut_group: Some(aut),
                    has_carter,
                    method,
                })
            })
            .collect();
        let level = level.into_iter().collect::<Result<Vec<_>>>()?;
        let failed = level.iter().find(|c| !c.has_carter).cloned();
        cells.extend(level);
        if let Some(c) = failed {
            let witness = Witness {
                level: Some(c.level),
                factor: Some(c.factor),
                group: c.aut_group.clone().expect("computed cell"),
                label: c.label.clone(),
                path: vec![format!("level {} factor {}", c.level, c.factor)],
            };
            return Ok(ConditionEReport {
                cells,
                satisfied: false,
                witness: Some(witness),
                levels,
            });
        }
    }
    Ok(ConditionEReport {
        cells,
        satisfied: true,
        witness: None,
        levels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grpspec::{build, parse_spec};
    use crate::series::chief_series;

    fn check(s: &str) -> ConditionEReport {
        let eng = Engine::default();
        let b = build(&parse_spec(s).unwrap()).unwrap();
        let series = chief_series(&eng, &b.group, &b.normal_hints()).unwrap();
        check_condition_e(&eng, &b.group, &series).unwrap()
    }

    #[test]
    fn solvable_groups_satisfy_e() {
        for s in ["(sym 4)", "(wreath (sym 3) 2)", "(dihedral 5)"] {
            let r = check(s);
            assert!(r.satisfied, "{s}");
            assert_eq!(r.cells.len(), r.cells.iter().filter(|c| c.has_carter).count());
        }
    }

    #[test]
    fn alt5_fails_at_the_top() {
        let r = check("(alt 5)");
        assert!(!r.satisfied);
        let w = r.witness.unwrap();
        assert_eq!(w.level, Some(0));
        assert_eq!(w.group.order(), 60);
    }

    #[test]
    fn sym5_satisfies_e() {
        let r = check("(sym 5)");
        assert!(r.satisfied);
    }

    #[test]
    fn a5_wr_2_fails() {
        let r = check("(wreath (alt 5) 2)");
        assert!(!r.satisfied);
        assert_eq!(r.witness.unwrap().group.order(), 60);
    }
}
