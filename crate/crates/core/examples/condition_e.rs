//! Checking condition (E) along a chief series.

use carter::carter::check_condition_e;
use carter::grpspec::build_spec;
use carter::series::chief_series;
use carter::Engine;

fn main() -> carter::Result<()> {
    let eng = Engine::new(0);
    for text in ["(sym 5)", "(direct (alt 5) (cyclic 3))", "(wreath (sym 5) 2)"] {
        let b = build_spec(text)?;
        let s = chief_series(&eng, &b.group, &b.normal_hints())?;
        let r = check_condition_e(&eng, &b.group, &s)?;
        println!("{text}: satisfied = {}", r.satisfied);
        for c in &r.cells {
            println!(
                "    ({}, {}) {}: |K/G_i| = {:?}, |Aut| = {:?}, has Carter: {}, by {:?}",
                c.level,
                c.factor,
                c.label,
                c.carter_order,
                c.aut_group.as_ref().map(|a| a.order()),
                c.has_carter,
                c.method
            );
        }
    }
    Ok(())
}
