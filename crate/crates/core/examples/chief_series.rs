//! Chief series and labelled chief factors.

use carter::grpspec::build_spec;
use carter::series::{chief_series, quotient_group};
use carter::Engine;

fn main() -> carter::Result<()> {
    let eng = Engine::new(0);
    for text in ["(sym 4)", "(wreath (alt 5) 2)", "(direct (alt 5) (sym 3))"] {
        let b = build_spec(text)?;
        let s = chief_series(&eng, &b.group, &b.normal_hints())?;
        let orders: Vec<u64> = s.terms.iter().map(|t| t.order()).collect();
        println!("{text}: terms {orders:?}");
        for f in &s.factors {
            println!("    {} x{}", f.label, f.k());
        }
        let top = quotient_group(&b.group, &s.terms[1])?;
        println!("    top factor acts on {} points", top.group().degree());
    }
    Ok(())
}
