//! Parser for the construction language.
//!
//! ```text
//! expr  := "(" kind args ")"
//! kind  := sym n | alt n | cyclic n | dihedral n | psl2 q | psigmal2 q
//!        | direct expr expr | wreath expr k | semidirect expr gens
//!        | subgroup expr gens | gens degree gens | paper_example
//! gens  := "(" gen+ ")"
//! gen   := cycle | "(" cycle+ ")"
//! cycle := "(" int+ ")"
//! ```
//! `#` starts a comment running to the end of the line.

use super::ast::{Construction, Generator};
use crate::error::{Error, Result};
use crate::subgrp::factorize;

/// Largest degree accepted for a single construction node.
pub const MAX_SPEC_DEGREE: usize = 1000;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Open,
    Close,
    Int(u64),
    Word(String),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    for (li, line) in text.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let column = i + 1;
            let at = |tok| Token {
                tok,
                line: li + 1,
                column,
            };
            if c == '#' {
                break;
            } else if c.is_whitespace() {
                i += 1;
            } else if c == '(' {
                out.push(at(Tok::Open));
                i += 1;
            } else if c == ')' {
                out.push(at(Tok::Close));
                i += 1;
            } else if c.is_ascii_digit() {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let s: String = chars[start..i].iter().collect();
                let v = s.parse::<u64>().map_err(|_| Error::Parse {
                    line: li + 1,
                    column,
                    message: format!("integer {s} out of range"),
                })?;
                out.push(at(Tok::Int(v)));
            } else if c.is_ascii_alphabetic() || c == '_' {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                out.push(at(Tok::Word(chars[start..i].iter().collect())));
            } else {
                return Err(Error::Parse {
                    line: li + 1,
                    column,
                    message: format!("unexpected character {c:?}"),
                });
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        let (line, column) = self
            .toks
            .get(self.pos)
            .map(|t| (t.line, t.column))
            .unwrap_or(self.end);
        Err(Error::Parse {
            line,
            column,
            message: message.into(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&want) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn int(&mut self, what: &str) -> Result<u64> {
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(v)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn expr(&mut self) -> Result<Construction> {
        if let Some(Tok::Word(w)) = self.peek() {
            if w == "paper_example" {
                self.pos += 1;
                return Ok(Construction::PaperExample);
            }
        }
        self.expect(Tok::Open, "'('")?;
        let kind = match self.peek() {
            Some(Tok::Word(w)) => w.clone(),
            _ => return self.err("expected a construction name"),
        };
        let kind_pos = self.pos;
        self.pos += 1;
        let node = match kind.as_str() {
            "sym" => Construction::Sym {
                n: self.int("a degree")? as usize,
            },
            "alt" => Construction::Alt {
                n: self.int("a degree")? as usize,
            },
            "cyclic" => Construction::Cyclic {
                n: self.int("an order")? as usize,
            },
            "dihedral" => Construction::Dihedral {
                n: self.int("a polygon size")? as usize,
            },
            "psl2" => Construction::Psl2 {
                q: self.int("a field size")?,
            },
            "psigmal2" => Construction::Psigmal2 {
                q: self.int("a field size")?,
            },
            "direct" => {
                let left = Box::new(self.expr()?);
                let right = Box::new(self.expr()?);
                Construction::Direct { left, right }
            }
            "wreath" => {
                let base = Box::new(self.expr()?);
                let k = self.int("a number of copies")? as usize;
                Construction::Wreath { base, k }
            }
            "semidirect" => {
                let normal = Box::new(self.expr()?);
                let gens = self.gens_block()?;
                Construction::Semidirect { normal, gens }
            }
            "subgroup" => {
                let of = Box::new(self.expr()?);
                let gens = self.gens_block()?;
                Construction::Subgroup { of, gens }
            }
            "gens" => {
                let degree = self.int("a degree")? as usize;
                let gens = self.gens_block()?;
                Construction::Gens { degree, gens }
            }
            "paper_example" => Construction::PaperExample,
            other => {
                self.pos = kind_pos;
                return self.err(format!("unknown construction {other:?}"));
            }
        };
        self.expect(Tok::Close, "')'")?;
        Ok(node)
    }

    fn gens_block(&mut self) -> Result<Vec<Generator>> {
        self.expect(Tok::Open, "'(' opening a generator list")?;
        let mut gens = Vec::new();
        while self.peek() == Some(&Tok::Open) {
            self.pos += 1;
            if self.peek() == Some(&Tok::Open) {
                let mut cycles = Vec::new();
                while self.peek() == Some(&Tok::Open) {
                    self.pos += 1;
                    cycles.push(self.cycle_body()?);
                }
                self.expect(Tok::Close, "')' closing a generator")?;
                gens.push(cycles);
            } else {
                gens.push(vec![self.cycle_body()?]);
            }
        }
        if gens.is_empty() {
            return self.err("expected at least one generator");
        }
        self.expect(Tok::Close, "')' closing a generator list")?;
        Ok(gens)
    }

    /// Points of a cycle after its opening parenthesis, through the closing one.
    fn cycle_body(&mut self) -> Result<Vec<usize>> {
        let mut pts = Vec::new();
        while let Some(Tok::Int(v)) = self.peek() {
            pts.push(*v as usize);
            self.pos += 1;
        }
        if pts.is_empty() {
            return self.err("expected a point");
        }
        self.expect(Tok::Close, "')' closing a cycle")?;
        Ok(pts)
    }
}

/// Parses one construction.
pub fn parse_spec(text: &str) -> Result<Construction> {
    let toks = tokenize(text)?;
    let end = toks
        .last()
        .map(|t| (t.line, t.column + 1))
        .unwrap_or((1, 1));
    let mut p = Parser { toks, pos: 0, end };
    if p.toks.is_empty() {
        return p.err("empty specification");
    }
    let ast = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input after the construction");
    }
    Ok(ast)
}

/// Checks parameter ranges.
pub fn validate(ast: &Construction) -> Result<()> {
    let sem = |m: String| Err(Error::Semantic(m));
    let check_degree = |n: usize, what: &str| {
        if n == 0 || n > MAX_SPEC_DEGREE {
            sem(format!("{what} degree {n} outside 1..={MAX_SPEC_DEGREE}"))
        } else {
            Ok(())
        }
    };
    let check_q = |q: u64| {
        let f = factorize(q);
        if !(2..=32).contains(&q) || f.len() != 1 {
            sem(format!("q = {q} is not a prime power at most 32"))
        } else {
            Ok(())
        }
    };
    let check_gens = |degree: usize, gens: &[Generator]| {
        for g in gens {
            let mut seen = vec![false; degree];
            for c in g {
                for &x in c {
                    if x >= degree {
                        return sem(format!("point {x} out of range for degree {degree}"));
                    }
                    if seen[x] {
                        return sem(format!("point {x} repeated in a generator"));
                    }
                    seen[x] = true;
                }
            }
        }
        Ok(())
    };
    match ast {
        Construction::Gens { degree, gens } => {
            check_degree(*degree, "gens")?;
            check_gens(*degree, gens)
        }
        Construction::Sym { n } => check_degree(*n, "sym"),
        Construction::Alt { n } => check_degree(*n, "alt"),
        Construction::Cyclic { n } => check_degree(*n, "cyclic"),
        Construction::Dihedral { n } => {
            check_degree(*n, "dihedral")?;
            if *n < 3 {
                return sem(format!("dihedral needs at least 3 points, got {n}"));
            }
            Ok(())
        }
        Construction::Psl2 { q } | Construction::Psigmal2 { q } => check_q(*q),
        Construction::Direct { left, right } => {
            validate(left)?;
            validate(right)?;
            check_degree(degree_of(left) + degree_of(right), "direct product")
        }
        Construction::Wreath { base, k } => {
            validate(base)?;
            if *k == 0 {
                return sem("wreath needs at least one copy".into());
            }
            check_degree(degree_of(base) * k, "wreath product")
        }
        Construction::Semidirect { normal: inner, gens } | Construction::Subgroup { of: inner, gens } => {
            validate(inner)?;
            check_gens(degree_of(inner), gens)
        }
        Construction::PaperExample => Ok(()),
    }
}

/// Number of points the construction acts on.
pub fn degree_of(ast: &Construction) -> usize {
    match ast {
        Construction::Gens { degree, .. } => *degree,
        Construction::Sym { n }
        | Construction::Alt { n }
        | Construction::Cyclic { n }
        | Construction::Dihedral { n } => *n,
        Construction::Psl2 { q } | Construction::Psigmal2 { q } => *q as usize + 1,
        Construction::Direct { left, right } => degree_of(left) + degree_of(right),
        Construction::Wreath { base, k } => degree_of(base) * k,
        Construction::Semidirect { normal: inner, .. } | Construction::Subgroup { of: inner, .. } => {
            degree_of(inner)
        }
        Construction::PaperExample => 56,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_examples() {
        assert_eq!(parse_spec("(sym 4)").unwrap(), Construction::Sym { n: 4 });
        let w = parse_spec("(wreath (psigmal2 27) 2)").unwrap();
        assert_eq!(
            w,
            Construction::Wreath {
                base: Box::new(Construction::Psigmal2 { q: 27 }),
                k: 2
            }
        );
        let g = parse_spec("(gens 3 ((0 1) (0 1 2)))").unwrap();
        assert_eq!(
            g,
            Construction::Gens {
                degree: 3,
                gens: vec![vec![vec![0, 1]], vec![vec![0, 1, 2]]]
            }
        );
    }

    #[test]
    fn multi_cycle_generators_and_comments() {
        let text = "# Klein four\n(gens 4 (((0 1) (2 3)) ((0 2) (1 3))))  # two generators\n";
        let g = parse_spec(text).unwrap();
        assert_eq!(
            g,
            Construction::Gens {
                degree: 4,
                gens: vec![vec![vec![0, 1], vec![2, 3]], vec![vec![0, 2], vec![1, 3]]]
            }
        );
        assert_eq!(g.to_string(), "(gens 4 (((0 1) (2 3)) ((0 2) (1 3))))");
    }

    #[test]
    fn error_positions() {
        match parse_spec("(sym 4") {
            Err(Error::Parse { line, column, .. }) => assert_eq!((line, column), (1, 7)),
            other => panic!("{other:?}"),
        }
        match parse_spec("(direct (sym 2)\n  (foo 3))") {
            Err(Error::Parse { line, column, message }) => {
                assert_eq!((line, column), (2, 4));
                assert!(message.contains("foo"));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_spec("(sym 4) (sym 3)"), Err(Error::Parse { .. })));
        assert!(matches!(parse_spec("(gens 3 ())"), Err(Error::Parse { .. })));
    }

    #[test]
    fn validation() {
        assert!(validate(&parse_spec("(psl2 6)").unwrap()).is_err());
        assert!(validate(&parse_spec("(psl2 49)").unwrap()).is_err());
        assert!(validate(&parse_spec("(sym 1001)").unwrap()).is_err());
        assert!(validate(&parse_spec("(gens 3 ((0 3)))").unwrap()).is_err());
        assert!(validate(&parse_spec("(dihedral 2)").unwrap()).is_err());
        assert!(validate(&parse_spec("(wreath (psl2 27) 2)").unwrap()).is_ok());
    }
}
