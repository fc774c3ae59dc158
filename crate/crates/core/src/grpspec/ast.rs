//! Syntax tree of group constructions.

use std::fmt;

use serde::Serialize;

/// A generator as a product of disjoint cycles.
pub type Generator = Vec<Vec<usize>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Construction {
    Gens { degree: usize, gens: Vec<Generator> },
    Sym { n: usize },
    Alt { n: usize },
    Cyclic { n: usize },
    /// Dihedral group of order `2n` on `n` points.
    Dihedral { n: usize },
    Psl2 { q: u64 },
    Psigmal2 { q: u64 },
    Direct { left: Box<Construction>, right: Box<Construction> },
    Wreath { base: Box<Construction>, k: usize },
    /// `N` extended by generators that normalize it.
    Semidirect { normal: Box<Construction>, gens: Vec<Generator> },
    Subgroup { of: Box<Construction>, gens: Vec<Generator> },
    PaperExample,
}

fn write_gens(f: &mut fmt::Formatter<'_>, gens: &[Generator]) -> fmt::Result {
    write!(f, "(")?;
    for (i, g) in gens.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        if g.len() == 1 {
            write_cycle(f, &g[0])?;
        } else {
            write!(f, "(")?;
            for (j, c) in g.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write_cycle(f, c)?;
            }
            write!(f, ")")?;
        }
    }
    write!(f, ")")
}

fn write_cycle(f: &mut fmt::Formatter<'_>, c: &[usize]) -> fmt::Result {
    write!(f, "(")?;
    for (i, x) in c.iter().enumerate() {
        if i > 0 {
            write!(f, " ")?;
        }
        write!(f, "{x}")?;
    }
    write!(f, ")")
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Gens { degree, gens } => {
                write!(f, "(gens {degree} ")?;
                write_gens(f, gens)?;
                write!(f, ")")
            }
            Construction::Sym { n } => write!(f, "(sym {n})"),
            Construction::Alt { n } => write!(f, "(alt {n})"),
            Construction::Cyclic { n } => write!(f, "(cyclic {n})"),
            Construction::Dihedral { n } => write!(f, "(dihedral {n})"),
            Construction::Psl2 { q } => write!(f, "(psl2 {q})"),
            Construction::Psigmal2 { q } => write!(f, "(psigmal2 {q})"),
            Construction::Direct { left, right } => write!(f, "(direct {left} {right})"),
            Construction::Wreath { base, k } => write!(f, "(wreath {base} {k})"),
            Construction::Semidirect { normal, gens } => {
                write!(f, "(semidirect {normal} ")?;
                write_gens(f, gens)?;
                write!(f, ")")
            }
            Construction::Subgroup { of, gens } => {
                write!(f, "(subgroup {of} ")?;
                write_gens(f, gens)?;
                write!(f, ")")
            }
            Construction::PaperExample => write!(f, "(paper_example)"),
        }
    }
}
