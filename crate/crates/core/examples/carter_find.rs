//! Deciding existence and constructing a Carter subgroup in general.

use carter::carter::carter_find;
use carter::grpspec::build_spec;
use carter::Engine;

fn main() -> carter::Result<()> {
    let eng = Engine::new(0);
    for text in ["(sym 5)", "(direct (sym 5) (sym 3))", "(wreath (sym 5) 2)", "(wreath (alt 5) 2)"] {
        let b = build_spec(text)?;
        let o = carter_find(&eng, &b.group, &b.normal_hints())?;
        match (&o.subgroup, &o.witness) {
            (Some(k), _) => println!("{text}: Carter subgroup of order {}", k.order()),
            (None, Some(w)) => println!(
                "{text}: none; Aut of order {} over {} has no Carter subgroup",
                w.group.order(),
                w.label
            ),
            _ => println!("{text}: none"),
        }
    }
    Ok(())
}
