//! Sylow subgroups, normalizers and Hall p'-subgroups.

use carter::grpspec::build::{alternating, symmetric};
use carter::subgrp::{hall_pprime_solvable, normalizer, primes_of, sylow_subgroup};
use carter::Engine;

fn main() -> carter::Result<()> {
    let eng = Engine::new(0);
    let s6 = symmetric(6);
    for p in primes_of(s6.order()) {
        let sy = sylow_subgroup(&eng, &s6, p)?;
        let n = normalizer(&eng, &s6, &sy)?;
        println!("Sym(6): Sylow {p} of order {}, normalizer order {}", sy.order(), n.order());
    }
    let s4 = symmetric(4);
    for p in [2, 3] {
        let h = hall_pprime_solvable(&eng, &s4, p)?;
        println!("Sym(4): Hall {p}'-subgroup of order {}", h.order());
    }
    let a5 = alternating(5);
    let p5 = sylow_subgroup(&eng, &a5, 5)?;
    println!("Alt(5): N(P5) has order {}", normalizer(&eng, &a5, &p5)?.order());
    Ok(())
}
