//! Carter subgroups of solvable groups.

use carter::carter::{carter_solvable, verify_carter};
use carter::grpspec::build_spec;
use carter::Engine;

fn main() -> carter::Result<()> {
    let eng = Engine::new(0);
    for text in ["(sym 4)", "(dihedral 6)", "(wreath (sym 3) 2)", "(direct (sym 3) (alt 4))"] {
        let g = build_spec(text)?.group;
        let k = carter_solvable(&eng, &g)?;
        let cert = verify_carter(&eng, &g, &k)?;
        println!(
            "{text}: |G| = {}, |K| = {}, lower central series {:?}",
            g.order(),
            k.order(),
            cert.lower_central_orders
        );
    }
    Ok(())
}
