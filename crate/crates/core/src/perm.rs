//! Permutations of `{0, .., n-1}`.
//!
//! Composition is left-to-right: `p * q` maps `x` to `q(p(x))`. Conjugation
//! follows the same convention, `x^g = g^-1 x g`.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A bijection on `0..degree`, stored as its image list.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from its image list, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n {
                return Err(Error::PointOutOfRange { point: x, degree: n });
            }
            if seen[x] {
                return Err(Error::NotBijection);
            }
            seen[x] = true;
        }
        Ok(Permutation { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    /// Product of disjoint cycles; points not mentioned are fixed.
    pub fn from_cycles<C: AsRef<[usize]>>(degree: usize, cycles: &[C]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        for cycle in cycles {
            let cycle = cycle.as_ref();
            for &x in cycle {
                if x >= degree {
                    return Err(Error::PointOutOfRange { point: x, degree });
                }
                if used[x] {
                    return Err(Error::RepeatedPoint(x));
                }
                used[x] = true;
            }
            for (i, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(i + 1) % cycle.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    /// Unchecked left-to-right product; degrees must agree.
    #[inline]
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `g^-1 self g`.
    pub fn conjugate(&self, g: &Permutation) -> Permutation {
        // (g^-1 s g)(g(x)) = g(s(x))
        let mut images = vec![0u32; self.degree()];
        for (x, &sx) in self.images.iter().enumerate() {
            images[g.images[x] as usize] = g.images[sx as usize];
        }
        Permutation { images }
    }

    /// `a^-1 b^-1 a b`.
    pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
        a.inverse().then(&b.inverse()).then(a).then(b)
    }

    pub fn pow(&self, mut e: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.image(x);
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Least moved point, if any.
    pub fn first_moved(&self) -> Option<usize> {
        self.images
            .iter()
            .enumerate()
            .find(|(i, &x)| *i != x as usize)
            .map(|(i, _)| i)
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.degree()).filter(|&i| self.image(i) != i).collect()
    }

    /// Restriction to `points`, renumbered by position in `points`.
    /// The point set must be invariant.
    pub fn restrict(&self, points: &[usize], position: &[u32]) -> Permutation {
        Permutation {
            images: points
                .iter()
                .map(|&x| position[self.image(x)])
                .collect(),
        }
    }

    /// Acts on `offset..offset+self.degree()` inside a larger domain.
    pub fn shifted(&self, offset: usize, degree: usize) -> Permutation {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + x;
        }
        Permutation { images }
    }
}

impl Mul for &Permutation {
    type Output = Permutation;

    fn mul(self, rhs: &Permutation) -> Permutation {
        self.then(rhs)
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn transposition_from_cycles() {
        let p = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        assert_eq!(p.images(), &[1, 0, 2]);
    }

    #[test]
    fn empty_cycles_give_identity() {
        let p = Permutation::from_cycles::<Vec<usize>>(5, &[]).unwrap();
        assert!(p.is_identity());
        assert_eq!(p.degree(), 5);
    }

    #[test]
    fn four_cycle_has_order_four() {
        let p = Permutation::from_cycles(4, &[vec![0, 1, 2, 3]]).unwrap();
        assert!(!p.pow(2).is_identity());
        assert!(p.pow(4).is_identity());
        assert_eq!(p.order(), 4);
    }

    #[test]
    fn cycle_errors() {
        assert_eq!(
            Permutation::from_cycles(3, &[vec![0, 3]]),
            Err(Error::PointOutOfRange { point: 3, degree: 3 })
        );
        assert_eq!(
            Permutation::from_cycles(4, &[vec![0, 1], vec![1, 2]]),
            Err(Error::RepeatedPoint(1))
        );
        assert_eq!(
            Permutation::from_cycles(4, &[vec![0, 1, 0]]),
            Err(Error::RepeatedPoint(0))
        );
    }

    #[test]
    fn compose_left_to_right() {
        let a = Permutation::from_cycles(3, &[vec![0, 1]]).unwrap();
        let b = Permutation::from_cycles(3, &[vec![1, 2]]).unwrap();
        assert!(a.compose(&a).unwrap().is_identity());
        // 0 -> 1 -> 2, 1 -> 0 -> 0, 2 -> 2 -> 1
        assert_eq!(a.compose(&b).unwrap().images(), &[2, 0, 1]);
        let c = Permutation::identity(4);
        assert_eq!(a.compose(&c), Err(Error::DegreeMismatch(3, 4)));
    }

    #[test]
    fn conjugate_matches_definition() {
        let s = Permutation::from_cycles(5, &[vec![0, 1, 2]]).unwrap();
        let g = Permutation::from_cycles(5, &[vec![0, 3], vec![1, 4, 2]]).unwrap();
        let direct = g.inverse().then(&s).then(&g);
        assert_eq!(s.conjugate(&g), direct);
    }

    #[test]
    fn display_cycle_notation() {
        let p = Permutation::from_cycles(6, &[vec![3, 5], vec![0, 2, 1]]).unwrap();
        assert_eq!(p.to_string(), "(0 2 1)(3 5)");
        assert_eq!(Permutation::identity(2).to_string(), "()");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn perm(n: usize) -> impl Strategy<Value = Permutation> {
            Just((0..n as u32).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_map(|v| Permutation::from_images(v).unwrap())
        }

        proptest! {
            #[test]
            fn inverse_law(p in perm(9)) {
                prop_assert!(p.then(&p.inverse()).is_identity());
                prop_assert!(p.inverse().then(&p).is_identity());
            }

            #[test]
            fn associativity(a in perm(7), b in perm(7), c in perm(7)) {
                prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
            }

            #[test]
            fn cycles_round_trip(p in perm(10)) {
                let q = Permutation::from_cycles(10, &p.cycles()).unwrap();
                prop_assert_eq!(p, q);
            }
        }
    }
}
