//! Small finite fields GF(q), q ≤ 32.
//!
//! Element `n` stands for the polynomial whose coefficients are the base-p
//! digits of `n`, reduced by a fixed primitive polynomial.

use crate::error::{Error, Result};
use crate::subgrp::factorize;

/// Lowest-degree-first coefficients of the defining polynomial, monic term omitted.
fn defining_polynomial(p: u64, e: u32) -> Option<Vec<u64>> {
    let poly: &[u64] = match (p, e) {
        (_, 1) => return Some(Vec::new()),
        (2, 2) => &[1, 1],       // x^2 + x + 1
        (2, 3) => &[1, 1, 0],    // x^3 + x + 1
        (2, 4) => &[1, 1, 0, 0], // x^4 + x + 1
        (2, 5) => &[1, 0, 1, 0, 0],
        (3, 2) => &[2, 2],    // x^2 + 2x + 2
        (3, 3) => &[1, 2, 0], // x^3 + 2x + 1
        (5, 2) => &[2, 4],    // x^2 + 4x + 2
        _ => return None,
    };
    Some(poly.to_vec())
}

#[derive(Clone, Debug)]
pub struct Field {
    pub q: u64,
    pub p: u64,
    pub e: u32,
    add: Vec<u32>,
    mul: Vec<u32>,
    neg: Vec<u32>,
    inv: Vec<u32>,
}

impl Field {
    pub fn new(q: u64) -> Result<Field> {
        let f = factorize(q);
        if q < 2 || f.len() != 1 {
            return Err(Error::Semantic(format!("{q} is not a prime power")));
        }
        let (p, e) = f[0];
        let poly = defining_polynomial(p, e)
            .ok_or_else(|| Error::Semantic(format!("no field table for q = {q}")))?;
        let n = q as usize;
        let digits = |mut x: u64| -> Vec<u64> {
            (0..e)
                .map(|_| {
                    let d = x % p;
                    x /= p;
                    d
                })
                .collect()
        };
        let number = |c: &[u64]| c.iter().rev().fold(0, |acc, &d| acc * p + d);
        let mut add = vec![0u32; n * n];
        let mut mul = vec![0u32; n * n];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[(a * q + b) as usize] = number(&s) as u32;
                let mut prod = vec![0u64; 2 * e as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                // x^e = -(poly)
                for k in (e as usize..prod.len()).rev() {
                    let c = prod[k];
                    if c == 0 {
                        continue;
                    }
                    prod[k] = 0;
                    for (i, &pc) in poly.iter().enumerate() {
                        let idx = k - e as usize + i;
                        prod[idx] = (prod[idx] + (p - pc) * c) % p;
                    }
                }
                mul[(a * q + b) as usize] = number(&prod[..e as usize]) as u32;
            }
        }
        let mut neg = vec![0u32; n];
        let mut inv = vec![0u32; n];
        for a in 0..n {
            for b in 0..n {
                if add[a * n + b] == 0 {
                    neg[a] = b as u32;
                }
                if mul[a * n + b] == 1 {
                    inv[a] = b as u32;
                }
            }
        }
        Ok(Field {
            q,
            p,
            e,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.add[(a as u64 * self.q + b as u64) as usize]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.mul[(a as u64 * self.q + b as u64) as usize]
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; `0` maps to `0`.
    pub fn inv(&self, a: u32) -> u32 {
        self.inv[a as usize]
    }

    pub fn pow(&self, a: u32, k: u64) -> u32 {
        (0..k).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn mult_order(&self, a: u32) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Least element generating the multiplicative group.
    pub fn primitive_element(&self) -> u32 {
        (1..self.q as u32)
            .find(|&a| self.mult_order(a) == self.q - 1)
            .expect("finite fields have primitive elements")
    }
}
