//! Exhaustive search over nilpotent subgroups of small groups.

use carter::carter::nilpotent_subgroups_enum;
use carter::grpspec::build_spec;
use carter::Engine;

fn main() -> carter::Result<()> {
    let eng = Engine::new(0);
    for text in ["(sym 4)", "(alt 5)", "(psl2 7)"] {
        let g = build_spec(text)?.group;
        let e = nilpotent_subgroups_enum(&eng, &g, eng.enum_budget)?;
        println!("{text}: {} classes of nilpotent subgroups", e.classes.len());
        for c in &e.classes {
            let mark = if c.self_normalizing() { "  <- Carter" } else { "" };
            println!("    order {:>3}, normalizer {:>3}{mark}", c.group.order(), c.normalizer_order);
        }
    }
    Ok(())
}
