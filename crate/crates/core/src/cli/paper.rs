//! Step-by-step verification of the degree-56 example group.

use std::time::Instant;

use super::report::{CarterView, ConditionEView, PaperView, StatementView};
use crate::carter::{
    brute_force_carter, carter_find, carter_solvable, check_condition_e, verify_carter, Status,
};
use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::grpspec::{build, build_paper_example, Construction};
use crate::hom::restriction;
use crate::inducedaut::{induced_aut, Section};
use crate::series::{chief_series, quotient_group, SimpleKind};
use crate::subgrp::{is_nilpotent, sylow_subgroup};

struct Statement {
    number: u32,
    claim: &'static str,
    checks: Vec<String>,
}

impl Statement {
    fn new(number: u32, claim: &'static str) -> Self {
        Statement {
            number,
            claim,
            checks: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: String) -> Result<()> {
        if !ok {
            return Err(Error::Certificate(format!(
                "statement {} failed: {what}",
                self.number
            )));
        }
        self.checks.push(what);
        Ok(())
    }

    fn done(self) -> StatementView {
        StatementView {
            number: self.number,
            claim: self.claim.to_string(),
            pass: true,
            checks: self.checks,
        }
    }
}

/// Runs the four statements about `G = (H ⋊ ⟨(φ,φ⁻¹)⟩) ⋊ Sym₂` and the final
/// existence decision. Any failing check aborts with its statement number.
/// Phase timings are appended to `timings`.
pub fn verify_paper_example_script(
    eng: &Engine,
    timings: &mut Vec<(String, f64)>,
) -> Result<PaperView> {
    let mut clock = Instant::now();
    let mut lap = |name: &str, timings: &mut Vec<(String, f64)>| {
        timings.push((name.to_string(), clock.elapsed().as_secs_f64() * 1e3));
        clock = Instant::now();
    };
    let b = build_paper_example()?;
    let g = b.group.clone();
    let hints = b.normal_hints();
    let gm = b.named["GcapM"].clone();
    let h = b.named["H"].clone();
    let l = build(&Construction::Psigmal2 { q: 27 })?.group;
    let t = build(&Construction::Psl2 { q: 27 })?.group;
    let series = chief_series(eng, &g, &hints)?;
    lap("build", timings);

    // 1: Aut_G(S) for every composition factor
    let mut s1 = Statement::new(1, "Aut_G(S) contains a Carter subgroup for every composition factor S");
    s1.check(
        series.factor_orders() == vec![2, 3, 9828 * 9828],
        format!("chief factor orders {:?}", series.factor_orders()),
    )?;
    let p = sylow_subgroup(eng, &l, 3)?;
    let cert = verify_carter(eng, &l, &p)?;
    s1.check(
        p.order() == 81 && cert.normalizer_order == 81,
        format!("Sylow 3-subgroup of L has order {} and N_L(P) = P", p.order()),
    )?;
    let classes = brute_force_carter(eng, &l, eng.enum_budget)?;
    s1.check(
        classes.len() == 1 && classes[0].order() == 81,
        format!(
            "brute force: L has {} class(es) of Carter subgroups, of orders {:?}",
            classes.len(),
            classes.iter().map(|c| c.order()).collect::<Vec<_>>()
        ),
    )?;
    for (i, f) in series.factors.iter().enumerate() {
        for (j, comp) in f.components.iter().enumerate() {
            let sec = Section::new(comp.clone(), series.terms[i + 1].clone());
            let aut = induced_aut(eng, &g, &sec)?.aut_group;
            if f.abelian {
                let k = carter_solvable(eng, &aut)?;
                verify_carter(eng, &aut, &k)?;
                s1.check(
                    true,
                    format!("factor C{}: |Aut_G(S)| = {}, solvable, Carter order {}", f.label.order, aut.order(), k.order()),
                )?;
            } else {
                s1.check(
                    aut.order() == 29484 && aut.same_group(&l),
                    format!("factor PSL2(27) #{j}: Aut_G(S) equals L on 28 points, order {}", aut.order()),
                )?;
            }
        }
    }
    // the named copy of L inside the ambient wreath product, restricted to its block
    let l1 = restriction(&b.named["L1"], &(0..28).collect::<Vec<_>>())?;
    s1.check(
        l1.image_group().same_group(&l),
        "L1 restricted to its block equals L".into(),
    )?;
    lap("statement 1", timings);

    // 2: a Sylow 3-subgroup of G ∩ M is a Carter subgroup
    let mut s2 = Statement::new(2, "a Sylow 3-subgroup of G ∩ M is a Carter subgroup");
    let p3 = sylow_subgroup(eng, &gm, 3)?;
    let cert = verify_carter(eng, &gm, &p3)?;
    s2.check(
        p3.order() == 2187 && cert.normalizer_order == 2187,
        format!("|P| = {}, N_{{G∩M}}(P) = P", p3.order()),
    )?;
    let mut ghints = vec![h.clone(), b.named["T1"].clone(), b.named["T2"].clone()];
    ghints.push(gm.clone());
    let found = carter_find(eng, &gm, &ghints)?;
    let ko = found.subgroup.as_ref().map(|k| k.order());
    s2.check(
        found.status == Status::Exists && ko == Some(2187),
        format!(
            "carter_find(G ∩ M) constructs a Carter subgroup of order {}, a Sylow 3-subgroup",
            ko.unwrap_or(0)
        ),
    )?;
    lap("statement 2", timings);

    // 3: G / (G ∩ M) is nilpotent
    let mut s3 = Statement::new(3, "G/(G ∩ M) is nilpotent");
    let q = quotient_group(&g, &gm)?;
    s3.check(
        q.group().order() == 2 && is_nilpotent(q.group()),
        format!("|G/(G ∩ M)| = {}", q.group().order()),
    )?;
    lap("statement 3", timings);

    // 4: condition (E) fails at PSL2(27)
    let mut s4 = Statement::new(4, "G does not satisfy (E): Aut_{KH}(PSL2(27)) = PSL2(27)");
    let qh = quotient_group(&g, &h)?;
    let gh = qh.group();
    s4.check(
        gh.order() == 6 && !gh.is_abelian(),
        format!("G/H is nonabelian of order {}", gh.order()),
    )?;
    let kbar = carter_solvable(eng, gh)?;
    let kb = brute_force_carter(eng, gh, eng.enum_budget)?;
    s4.check(
        kbar.order() == 2 && kb.len() == 1 && kb[0].order() == 2,
        "Carter subgroups of G/H form one class, the Sylow 2-subgroups".into(),
    )?;
    let rep = check_condition_e(eng, &g, &series)?;
    let w = rep.witness.clone();
    let wgroup = w.as_ref().map(|w| w.group.clone());
    s4.check(
        !rep.satisfied
            && w.as_ref().map(|w| w.label.kind.clone()) == Some(SimpleKind::Psl2 { q: 27 })
            && wgroup.as_ref().map(|x| x.order()) == Some(9828),
        format!(
            "condition (E) fails at level {} factor {}: Aut_K(T) of order {}",
            w.as_ref().and_then(|w| w.level).unwrap_or(usize::MAX),
            w.as_ref().and_then(|w| w.factor).unwrap_or(usize::MAX),
            wgroup.as_ref().map_or(0, |x| x.order())
        ),
    )?;
    let none = brute_force_carter(eng, &t, eng.enum_budget)?;
    s4.check(
        none.is_empty(),
        "brute force: PSL2(27) has no nilpotent self-normalizing subgroup".into(),
    )?;
    let wnone = brute_force_carter(eng, wgroup.as_ref().expect("witness"), eng.enum_budget)?;
    s4.check(wnone.is_empty(), "brute force on the witness group itself: empty".into())?;
    lap("statement 4", timings);

    let outcome = carter_find(eng, &g, &hints)?;
    let ok = outcome.status == Status::NotExists
        && outcome
            .witness
            .as_ref()
            .is_some_and(|w| w.label.kind == SimpleKind::Psl2 { q: 27 });
    if !ok {
        return Err(Error::Certificate(
            "carter_find did not return not_exists with witness PSL2(27)".into(),
        ));
    }
    lap("carter_find", timings);

    Ok(PaperView {
        group_order: g.order(),
        degree: g.degree(),
        statements: vec![s1.done(), s2.done(), s3.done(), s4.done()],
        carter: CarterView::of(&outcome),
        condition_e: ConditionEView::of(&rep),
    })
}
