//! Nilpotent subgroups up to conjugacy by cyclic extension; the brute-force oracle.

use std::collections::{BTreeMap, HashMap};

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::subgrp::{are_conjugate, class_representatives, is_nilpotent, normalizer};

/// Conjugation invariants used to bucket subgroups before a conjugacy search.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint {
    pub order: u64,
    /// `(element order, count)` pairs.
    pub element_orders: Vec<(u64, usize)>,
    /// Sorted orbit lengths.
    pub orbit_lengths: Vec<usize>,
}

impl Fingerprint {
    pub fn of(g: &PermGroup) -> Self {
        let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
        for x in g.elements() {
            *counts.entry(x.order()).or_default() += 1;
        }
        let mut orbit_lengths: Vec<usize> = g.orbits().iter().map(Vec::len).collect();
        orbit_lengths.sort_unstable();
        Fingerprint {
            order: g.order(),
            element_orders: counts.into_iter().collect(),
            orbit_lengths,
        }
    }
}

#[derive(Clone, Debug)]
pub struct NilpotentClass {
    pub group: PermGroup,
    pub normalizer_order: u64,
}

impl NilpotentClass {
    pub fn self_normalizing(&self) -> bool {
        self.normalizer_order == self.group.order()
    }
}

#[derive(Clone, Debug)]
pub struct NilpotentEnumeration {
    /// One representative per conjugacy class, in discovery order.
    pub classes: Vec<NilpotentClass>,
    /// False when the budget ran out before the search closed.
    pub complete: bool,
}

/// Every nilpotent subgroup of `G` up to conjugacy.
///
/// A nilpotent group has a chain of subgroups each normal of prime index in
/// the next, so each class is reached from a smaller one by adjoining a
/// `p`-element `x` of the normalizer with `x^p` already inside. `budget` bounds
/// `|G|`, and `budget · log₂ budget` bounds the normalizer elements scanned
/// after the first pass over `G`.
pub fn nilpotent_subgroups_enum(
    eng: &Engine,
    g: &PermGroup,
    budget: u64,
) -> Result<NilpotentEnumeration> {
    let scan = budget.saturating_mul(budget.max(2).ilog2() as u64);
    nilpotent_subgroups_scan(eng, g, budget, scan)
}

/// As [`nilpotent_subgroups_enum`] with an explicit scan budget.
pub fn nilpotent_subgroups_scan(
    eng: &Engine,
    g: &PermGroup,
    budget: u64,
    scan_budget: u64,
) -> Result<NilpotentEnumeration> {
    let order = g.try_order()?;
    if order > budget {
        return Err(Error::capacity(format!(
            "group of order {order} exceeds the enumeration budget {budget}"
        )));
    }
    let mut classes: Vec<NilpotentClass> = Vec::new();
    let mut buckets: HashMap<Fingerprint, Vec<usize>> = HashMap::new();
    let trivial = PermGroup::trivial(g.degree());
    buckets
        .entry(Fingerprint::of(&trivial))
        .or_default()
        .push(0);
    classes.push(NilpotentClass {
        group: trivial,
        normalizer_order: order,
    });
    let mut scanned: u64 = 0;
    let mut head = 0;
    while head < classes.len() {
        let u = classes[head].group.clone();
        let n = if head == 0 { g.clone() } else { normalizer(eng, g, &u)? };
        if head > 0 {
            scanned += n.order();
        }
        if scanned > scan_budget {
            return Ok(NilpotentEnumeration {
                classes,
                complete: false,
            });
        }
        for (x, _) in class_representatives(&n) {
            if u.contains(&x) {
                continue;
            }
            let o = x.order();
            let f = crate::subgrp::factorize(o);
            if f.len() != 1 {
                continue;
            }
            if !u.contains(&x.pow(f[0].0)) {
                continue;
            }
            let v = u.extend([x]);
            if !is_nilpotent(&v) {
                continue;
            }
            let fp = Fingerprint::of(&v);
            let bucket = buckets.entry(fp).or_default();
            let mut seen = false;
            for &i in bucket.iter() {
                let w = &classes[i].group;
                if w.same_group(&v) || are_conjugate(eng, g, w, &v)?.is_some() {
                    seen = true;
                    break;
                }
            }
            if seen {
                continue;
            }
            bucket.push(classes.len());
            let normalizer_order = normalizer(eng, g, &v)?.order();
            classes.push(NilpotentClass {
                group: v,
                normalizer_order,
            });
        }
        head += 1;
    }
    Ok(NilpotentEnumeration {
        classes,
        complete: true,
    })
}

/// Nilpotent self-normalizing subgroups of `G` up to conjugacy.
pub fn brute_force_carter(eng: &Engine, g: &PermGroup, budget: u64) -> Result<Vec<PermGroup>> {
    let e = nilpotent_subgroups_enum(eng, g, budget)?;
    if !e.complete {
        return Err(Error::capacity(format!(
            "nilpotent subgroup enumeration exceeded the budget {budget}"
        )));
    }
    let found: Vec<PermGroup> = e
        .classes
        .into_iter()
        .filter(NilpotentClass::self_normalizing)
        .map(|c| c.group)
        .collect();
    if found.len() > 1 {
        log::warn!(
            "{} classes of Carter subgroups in a group of order {}",
            found.len(),
            g.order()
        );
    }
    Ok(found)
}
