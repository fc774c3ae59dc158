//! Carter subgroups of solvable groups, by descent along elementary abelian sections.

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::subgrp::{
    elementary_abelian_normal_mod, hall_pprime_mod, is_nilpotent_mod, is_solvable, normalizer,
};

/// A Carter subgroup of a solvable group.
pub fn carter_solvable(eng: &Engine, g: &PermGroup) -> Result<PermGroup> {
    if !is_solvable(g) {
        return Err(Error::NotSolvable);
    }
    carter_solvable_mod(eng, g, &PermGroup::trivial(g.degree()))
}

/// `K ≥ N` with `K/N` a Carter subgroup of `G/N`, for `N ⊴ G` and `G/N` solvable.
///
/// With `Y/N` normal elementary abelian of exponent `p`, the preimage `K₁` of a
/// Carter subgroup of `G/Y` and a Hall `p'`-subgroup `Q/N` of `K₁/N`, the answer
/// is `N_{K₁}(Q)`.
pub fn carter_solvable_mod(eng: &Engine, g: &PermGroup, n: &PermGroup) -> Result<PermGroup> {
    if is_nilpotent_mod(g, n) {
        return Ok(g.clone());
    }
    let (y, p) = elementary_abelian_normal_mod(g, n);
    debug_assert!(y.is_normal_in(g));
    let k1 = carter_solvable_mod(eng, g, &y)?;
    let q = hall_pprime_mod(eng, &k1, n, p)?;
    normalizer(eng, &k1, &q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::carter::verify_carter;
    use crate::grpspec::{build, parse_spec};

    fn group(s: &str) -> PermGroup {
        build(&parse_spec(s).unwrap()).unwrap().group
    }

    #[test]
    fn small_cases() {
        let eng = Engine::default();
        let cases = [
            ("(cyclic 12)", 12),
            ("(sym 3)", 2),
            ("(sym 4)", 8),
            ("(alt 4)", 3),
            ("(dihedral 6)", 4),
            ("(wreath (sym 3) 2)", 8),
            ("(direct (sym 3) (alt 4))", 6),
        ];
        for (s, order) in cases {
            let g = group(s);
            let k = carter_solvable(&eng, &g).unwrap();
            assert_eq!(k.order(), order, "{s}");
            verify_carter(&eng, &g, &k).unwrap();
        }
    }

    #[test]
    fn rejects_non_solvable() {
        let eng = Engine::default();
        assert!(matches!(
            carter_solvable(&eng, &group("(alt 5)")),
            Err(Error::NotSolvable)
        ));
    }
}
