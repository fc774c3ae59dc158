//! The group construction language.

use carter::grpspec::{build, parse_spec};

fn main() -> carter::Result<()> {
    let texts = [
        "(gens 5 ((0 1 2 3 4) (1 2 4 3)))",
        "(semidirect (gens 4 (((0 1) (2 3)) ((0 2) (1 3)))) ((0 1 2)))",
        "(subgroup (sym 6) ((0 1 2) (3 4 5) ((0 3) (1 4) (2 5))))",
        "(wreath (direct (cyclic 2) (sym 3)) 2)",
        "(psigmal2 27)",
    ];
    for t in texts {
        let ast = parse_spec(t)?;
        let b = build(&ast)?;
        println!("{ast}: degree {}, order {}", b.group.degree(), b.group.order());
        for (name, h) in &b.named {
            println!("    {name}: order {}", h.order());
        }
    }
    match parse_spec("(wreath (sym 3)") {
        Err(e) => println!("error: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
