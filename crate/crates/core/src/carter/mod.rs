//! Carter subgroups: nilpotent self-normalizing subgroups.

mod brute;
mod condition_e;
mod find;
mod solvable;

pub use brute::{
    brute_force_carter, nilpotent_subgroups_enum, nilpotent_subgroups_scan, Fingerprint, NilpotentClass, NilpotentEnumeration,
};
pub use condition_e::{check_condition_e, ConditionECell, ConditionEReport, Method};
pub use find::carter_find;
pub use solvable::{carter_solvable, carter_solvable_mod};

use serde::Serialize;

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::series::SimpleTypeLabel;
use crate::subgrp::{lower_central_series, normalizer};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Exists,
    NotExists,
}

/// A section `Aut_{K_i}(T_{i,j})` without a Carter subgroup.
#[derive(Clone, Debug)]
pub struct Witness {
    /// Chief series level `i`, when known.
    pub level: Option<usize>,
    /// Factor `j` within the level.
    pub factor: Option<usize>,
    /// The group lacking a Carter subgroup.
    pub group: PermGroup,
    /// Type of the simple group `T_{i,j}`.
    pub label: SimpleTypeLabel,
    /// Recursion steps that led here.
    pub path: Vec<String>,
}

/// Evidence that `K` is a Carter subgroup of `G`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CarterCertificate {
    pub subgroup_order: u64,
    /// Orders along the lower central series of `K`, ending at 1.
    pub lower_central_orders: Vec<u64>,
    /// `|N_G(K)|`, equal to `|K|`.
    pub normalizer_order: u64,
}

#[derive(Clone, Debug)]
pub struct CarterOutcome {
    pub status: Status,
    pub subgroup: Option<PermGroup>,
    pub witness: Option<Witness>,
    pub certificate: Option<CarterCertificate>,
}

impl CarterOutcome {
    pub fn exists(&self) -> bool {
        self.status == Status::Exists
    }
}

/// Result of the internal recursion, also the memo payload.
#[derive(Clone, Debug)]
pub(crate) enum Found {
    Carter(PermGroup),
    Missing(Witness),
}

/// Checks that `K ≤ G` is nilpotent and self-normalizing.
pub fn verify_carter(eng: &Engine, g: &PermGroup, k: &PermGroup) -> Result<CarterCertificate> {
    if !g.contains_group(k) {
        return Err(Error::NotContained("K is not a subgroup of G".into()));
    }
    let lcs = lower_central_series(k);
    if lcs.last().order() != 1 {
        return Err(Error::Certificate(format!(
            "not nilpotent: lower central series stops at order {}",
            lcs.last().order()
        )));
    }
    let n = normalizer(eng, g, k)?;
    if n.order() != k.order() {
        return Err(Error::Certificate(format!(
            "not self-normalizing: |N_G(K)| = {} > |K| = {}",
            n.order(),
            k.order()
        )));
    }
    Ok(CarterCertificate {
        subgroup_order: k.order(),
        lower_central_orders: lcs.orders(),
        normalizer_order: n.order(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn perm(n: usize, cycles: &[&[usize]]) -> Permutation {
        Permutation::from_cycles(n, cycles).unwrap()
    }

    #[test]
    fn verify_in_s3() {
        let eng = Engine::default();
        let s3 = PermGroup::from_gens(3, vec![perm(3, &[&[0, 1]]), perm(3, &[&[0, 1, 2]])]);
        let t = PermGroup::from_gens(3, vec![perm(3, &[&[0, 1]])]);
        let c = verify_carter(&eng, &s3, &t).unwrap();
        assert_eq!(c.normalizer_order, 2);
        let r = PermGroup::from_gens(3, vec![perm(3, &[&[0, 1, 2]])]);
        let err = verify_carter(&eng, &s3, &r).unwrap_err();
        assert!(err.to_string().contains("self-normalizing"));
        assert!(verify_carter(&eng, &s3, &s3).is_err());
    }

    #[test]
    fn nilpotent_groups_verify_themselves() {
        let eng = Engine::default();
        let d8 = PermGroup::from_gens(4, vec![perm(4, &[&[0, 1, 2, 3]]), perm(4, &[&[0, 2]])]);
        let c = verify_carter(&eng, &d8, &d8).unwrap();
        assert_eq!(c.lower_central_orders, vec![8, 2, 1]);
    }
}
