//! Automorphisms induced on a section, and the wreath embedding.

use carter::grpspec::build::{symmetric, wreath_product};
use carter::inducedaut::{induced_aut, wreath_embed, Section};
use carter::series::chief_series;
use carter::Engine;

fn main() -> carter::Result<()> {
    let eng = Engine::new(0);
    let s4 = symmetric(4);
    let s = chief_series(&eng, &s4, &[])?;
    for (i, w) in s.terms.windows(2).enumerate() {
        let r = induced_aut(&eng, &s4, &Section::new(w[0].clone(), w[1].clone()))?;
        println!(
            "Sym(4), factor {i} of order {}: |Aut| = {}, kernel {}, via {:?}",
            w[0].order() / w[1].order(),
            r.order(),
            r.kernel.order(),
            r.domain
        );
    }

    let (g, _) = wreath_product(&symmetric(5), 2);
    let s = chief_series(&eng, &g, &[])?;
    let socle = s.factors.iter().rev().find(|f| !f.abelian).unwrap();
    let w = wreath_embed(&eng, &g, &socle.components)?;
    println!(
        "Sym(5) wr 2 embeds in Aut(Alt(5)) wr Sym(2): image order {}, in base {}",
        w.image.order(),
        w.image_in_base()?.order()
    );
    Ok(())
}
