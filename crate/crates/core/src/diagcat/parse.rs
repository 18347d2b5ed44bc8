//! Textual DSL for diagram terms.
//!
//! Grammar:
//!
//! ```text
//! term     := [ 'on' '"' word '"' ':' ] expr
//! expr     := ['-'] summand (('+' | '-') summand)*
//! summand  := [int '*'] diagram
//! diagram  := '(' slices ')' | slices
//! slices   := slice (';' slice)*
//! slice    := item+
//! item     := gen ['@' int]
//! gen      := '1+' | '1-' | 'cupLR' | 'cupRL' | 'capLR' | 'capRL' | 'x'
//! ```
//!
//! Items without `@` are laid out left to right, each consuming its input
//! arity; items with `@` act at the given strand position of the incoming
//! word.  `1+`/`1-` are identity strands.  Without an `on` clause the
//! source word is inferred from the first slice, which must then cover the
//! whole word.

use crate::error::DiagramError;
use crate::Int;

use super::diagram::{Diagram, DiagramTerm, Gen, Sign, SignedWord};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum SliceGen {
    Id(Sign),
    Real(Gen),
}

impl SliceGen {
    fn in_arity(self) -> usize {
        match self {
            SliceGen::Id(_) => 1,
            SliceGen::Real(g) => g.in_arity(),
        }
    }
}

#[derive(Clone, Debug)]
struct Item {
    gen: SliceGen,
    pos: Option<usize>,
    offset: usize,
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    text: &'a str,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> DiagramError {
        DiagramError::Parse {
            pos: self.pos,
            msg: msg.into(),
        }
    }

    fn ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn integer(&mut self) -> Result<usize, DiagramError> {
        self.ws();
        let start = self.pos;
        while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        self.chars[start..self.pos]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|e| self.err(format!("bad integer: {e}")))
    }

    /// `1+`, `1-`, `cupLR`, `cupRL`, `capLR`, `capRL`, `x`.
    fn item_gen(&mut self) -> Result<SliceGen, DiagramError> {
        match self.peek() {
            Some('1') => {
                self.pos += 1;
                match self.chars.get(self.pos) {
                    Some('+') => {
                        self.pos += 1;
                        Ok(SliceGen::Id(Sign::Plus))
                    }
                    Some('-') => {
                        self.pos += 1;
                        Ok(SliceGen::Id(Sign::Minus))
                    }
                    _ => Err(self.err("expected `+` or `-` after `1`")),
                }
            }
            Some('x') => {
                self.pos += 1;
                Ok(SliceGen::Real(Gen::Cross))
            }
            Some('c') => {
                let word: String = self.chars[self.pos..]
                    .iter()
                    .take(5)
                    .collect();
                let g = match word.as_str() {
                    "cupLR" => Gen::CupMP,
                    "cupRL" => Gen::CupPM,
                    "capLR" => Gen::CapMP,
                    "capRL" => Gen::CapPM,
                    _ => return Err(self.err(format!("unknown generator near `{word}`"))),
                };
                self.pos += 5;
                Ok(SliceGen::Real(g))
            }
            Some(c) => Err(self.err(format!("unexpected `{c}`"))),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn slice(&mut self) -> Result<Vec<Item>, DiagramError> {
        let mut items = Vec::new();
        let mut offset = 0usize;
        loop {
            match self.peek() {
                Some('1') | Some('x') | Some('c') => {}
                _ => break,
            }
            let gen = self.item_gen()?;
            let pos = if self.eat('@') {
                Some(self.integer()?)
            } else {
                None
            };
            items.push(Item { gen, pos, offset });
            offset += gen.in_arity();
        }
        if items.is_empty() {
            return Err(self.err("expected a slice"));
        }
        Ok(items)
    }

    fn slices(&mut self) -> Result<Vec<Vec<Item>>, DiagramError> {
        let mut out = vec![self.slice()?];
        while self.eat(';') {
            out.push(self.slice()?);
        }
        Ok(out)
    }

    /// Builds a diagram from parsed slices, given or inferring the source.
    fn build(
        &self,
        slices: &[Vec<Item>],
        source: Option<&SignedWord>,
    ) -> Result<Diagram, DiagramError> {
        let source = match source {
            Some(w) => w.clone(),
            None => {
                // Infer from the first slice: every item must be laid out
                // (no `@`), and the word is the concatenation of inputs.
                let first = &slices[0];
                if first.iter().any(|i| i.pos.is_some()) && first.len() > 1 {
                    return Err(DiagramError::Parse {
                        pos: 0,
                        msg: "source word cannot be inferred; use an `on \"...\"` clause"
                            .into(),
                    });
                }
                let mut w = Vec::new();
                for item in first {
                    match item.gen {
                        SliceGen::Id(s) => w.push(s),
                        SliceGen::Real(Gen::CapMP) => {
                            w.extend([Sign::Minus, Sign::Plus])
                        }
                        SliceGen::Real(Gen::CapPM) => {
                            w.extend([Sign::Plus, Sign::Minus])
                        }
                        SliceGen::Real(Gen::Cross) => w.extend([Sign::Plus, Sign::Plus]),
                        SliceGen::Real(Gen::CupMP) | SliceGen::Real(Gen::CupPM) => {}
                    }
                }
                SignedWord(w)
            }
        };
        let mut gens: Vec<(Gen, usize)> = Vec::new();
        let mut word = source.clone();
        for (si, slice) in slices.iter().enumerate() {
            // Explode the slice into single generators, bottom to top.
            // Items are ordered left to right; applying left items first
            // keeps the positions of the later ones valid after adjusting
            // for arity changes.
            let mut drift: i64 = 0;
            for item in slice {
                let p = item.pos.unwrap_or(item.offset);
                let p = (p as i64 + drift).max(0) as usize;
                match item.gen {
                    SliceGen::Id(s) => {
                        if word.0.get(p) != Some(&s) {
                            return Err(DiagramError::BoundaryMismatch {
                                slice: si,
                                expected: format!("{} at {}", s.ch(), p),
                                found: word.to_string(),
                            });
                        }
                    }
                    SliceGen::Real(g) => {
                        match g.apply(&word, p) {
                            Ok(w) => word = w,
                            Err((expected, found)) => {
                                return Err(DiagramError::BoundaryMismatch {
                                    slice: si,
                                    expected: format!(
                                        "{} for {} at {}",
                                        SignedWord(expected.0),
                                        g.name(),
                                        p
                                    ),
                                    found: found.to_string(),
                                })
                            }
                        }
                        gens.push((g, p));
                        drift += g.out_arity() as i64 - g.in_arity() as i64;
                    }
                }
            }
        }
        Diagram::new(source, gens)
    }

    fn expr(&mut self, source: Option<&SignedWord>) -> Result<DiagramTerm, DiagramError> {
        let mut acc: Option<DiagramTerm> = None;
        let mut sign = Int::from(1);
        if self.eat('-') {
            sign = -sign;
        } else {
            let _ = self.eat('+');
        }
        loop {
            let mut coeff = sign.clone();
            if self.peek().is_some_and(|c| c.is_ascii_digit())
                && self.chars.get(self.pos + 1) != Some(&'+')
                && self.chars.get(self.pos + 1) != Some(&'-')
            {
                let n = self.integer()?;
                coeff = coeff * Int::from(n as i64);
                if !self.eat('*') {
                    return Err(self.err("expected `*` after coefficient"));
                }
            }
            let diagram = if self.eat('(') {
                let slices = self.slices()?;
                if !self.eat(')') {
                    return Err(self.err("expected `)`"));
                }
                self.build(&slices, source)?
            } else {
                let slices = self.slices()?;
                self.build(&slices, source)?
            };
            let term = DiagramTerm::single(diagram, coeff);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term)?,
            });
            match self.peek() {
                Some('+') => {
                    self.pos += 1;
                    sign = Int::from(1);
                }
                Some('-') => {
                    self.pos += 1;
                    sign = Int::from(-1);
                }
                _ => break,
            }
        }
        Ok(acc.expect("at least one summand"))
    }
}

/// Parses the diagram DSL into a validated term.
pub fn parse_diagram(text: &str) -> Result<DiagramTerm, DiagramError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        text,
    };
    let mut source = None;
    p.ws();
    if p.chars[p.pos..].starts_with(&['o', 'n']) {
        p.pos += 2;
        if !p.eat('"') {
            return Err(p.err("expected `\"` after `on`"));
        }
        let start = p.pos;
        while p.pos < p.chars.len() && p.chars[p.pos] != '"' {
            p.pos += 1;
        }
        if p.pos >= p.chars.len() {
            return Err(p.err("unterminated word"));
        }
        let w: String = p.chars[start..p.pos].iter().collect();
        p.pos += 1;
        if !p.eat(':') {
            return Err(p.err("expected `:` after `on \"...\"`"));
        }
        source = Some(w.parse::<SignedWord>().map_err(|e| DiagramError::Parse {
            pos: start,
            msg: e,
        })?);
    }
    let term = p.expr(source.as_ref())?;
    if p.peek().is_some() {
        return Err(DiagramError::Parse {
            pos: p.pos,
            msg: format!("trailing input in `{}`", p.text),
        });
    }
    Ok(term)
}
