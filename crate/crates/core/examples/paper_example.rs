//! The degree-56 group without Carter subgroups although its composition
//! factors all have Carter subgroups in their induced automorphism groups.

use carter::cli::verify_paper_example_script;
use carter::Engine;

fn main() -> carter::Result<()> {
    let eng = Engine::new(0);
    let mut timings = Vec::new();
    let view = verify_paper_example_script(&eng, &mut timings)?;
    println!("|G| = {} on {} points", view.group_order, view.degree);
    for s in &view.statements {
        println!("statement {}: {}", s.number, s.claim);
        for c in &s.checks {
            println!("    {c}");
        }
    }
    if let Some(w) = &view.carter.witness {
        println!("no Carter subgroup; witness {} of order {}", w.label, w.group.order);
    }
    for (phase, ms) in timings {
        println!("{phase}: {ms:.0} ms");
    }
    Ok(())
}
