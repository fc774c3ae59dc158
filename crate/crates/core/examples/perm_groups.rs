//! Permutations, groups, membership and orders.

use carter::grpspec::build::symmetric;
use carter::{PermGroup, Permutation};

fn main() {
    // composition is left to right: p.then(q) sends x to q(p(x))
    let p = Permutation::from_cycles(5, &[vec![0, 1, 2]]).unwrap();
    let q = Permutation::from_cycles(5, &[vec![2, 3]]).unwrap();
    println!("p = {p}, q = {q}, pq = {}, order {}", p.then(&q), p.then(&q).order());
    println!("[p, q] = {}", Permutation::commutator(&p, &q));

    let g = PermGroup::from_gens(5, vec![p.clone(), q.clone()]);
    println!("<p, q> has order {} with orbits {:?}", g.order(), g.orbits());

    let s5 = symmetric(5);
    println!("|Sym(5)| = {}, base {:?}", s5.order(), s5.index().base());
    let cycle5 = Permutation::from_cycles(5, &[vec![0, 1, 2, 3, 4]]).unwrap();
    println!("(0 1 2 3 4) in <p, q>: {}", g.contains(&cycle5));
    println!("<p, q> normal in Sym(5): {}", g.is_normal_in(&s5));
}
