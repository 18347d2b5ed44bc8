//! Signed words, elementary generators and stacked diagrams.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::DiagramError;
use crate::lincomb::LinComb;
use crate::Int;

/// Orientation marker for one strand endpoint.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn ch(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A finite sequence of signs; the objects of the category.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SignedWord(pub Vec<Sign>);

impl SignedWord {
    pub fn empty() -> Self {
        SignedWord(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &SignedWord) -> SignedWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SignedWord(v)
    }
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "(empty)");
        }
        for s in &self.0 {
            write!(f, "{}", s.ch())?;
        }
        Ok(())
    }
}

impl fmt::Debug for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"", self)
    }
}

impl FromStr for SignedWord {
    type Err = String;

    /// Parses `"+-"` style words; `−` (unicode minus) is accepted too.
    fn from_str(s: &str) -> Result<Self, String> {
        let mut v = Vec::new();
        for c in s.chars() {
            match c {
                '+' => v.push(Sign::Plus),
                '-' | '−' => v.push(Sign::Minus),
                c if c.is_whitespace() => {}
                c => return Err(format!("unexpected `{c}` in signed word")),
            }
        }
        Ok(SignedWord(v))
    }
}

/// The elementary generators.  Each acts at a strand position of the
/// current word:
///
/// * `CupMP` creates `-+` out of nothing (a right-oriented half-circle);
/// * `CupPM` creates `+-`;
/// * `CapMP` annihilates `-+`;
/// * `CapPM` annihilates `+-`;
/// * `Cross` transposes two adjacent `+` strands.
///
/// Identity strands are implicit.  The two sideways crossings are not
/// generators; they are expanded as cap/cross/cup composites (mates of the
/// upward crossing).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub enum Gen {
    CupMP,
    CupPM,
    CapMP,
    CapPM,
    Cross,
}

impl Gen {
    pub fn in_arity(self) -> usize {
        match self {
            Gen::CupMP | Gen::CupPM => 0,
            Gen::CapMP | Gen::CapPM | Gen::Cross => 2,
        }
    }

    pub fn out_arity(self) -> usize {
        match self {
            Gen::CupMP | Gen::CupPM | Gen::Cross => 2,
            Gen::CapMP | Gen::CapPM => 0,
        }
    }

    /// The DSL name (`LR` reads left-to-right across the half-circle's
    /// top/bottom boundary: `cupLR` creates `-+`).
    pub fn name(self) -> &'static str {
        match self {
            Gen::CupMP => "cupLR",
            Gen::CupPM => "cupRL",
            Gen::CapMP => "capLR",
            Gen::CapPM => "capRL",
            Gen::Cross => "x",
        }
    }

    /// Applies the generator at `pos`, transforming the word.
    pub fn apply(
        self,
        word: &SignedWord,
        pos: usize,
    ) -> Result<SignedWord, (SignedWord, SignedWord)> {
        let fail = |expected: &[Sign]| {
            (
                SignedWord(expected.to_vec()),
                SignedWord(
                    word.0
                        .get(pos..(pos + self.in_arity()).min(word.0.len()))
                        .unwrap_or(&[])
                        .to_vec(),
                ),
            )
        };
        let mut v = word.0.clone();
        match self {
            Gen::CupMP | Gen::CupPM => {
                if pos > v.len() {
                    return Err(fail(&[]));
                }
                let pair = if self == Gen::CupMP {
                    [Sign::Minus, Sign::Plus]
                } else {
                    [Sign::Plus, Sign::Minus]
                };
                v.splice(pos..pos, pair);
            }
            Gen::CapMP | Gen::CapPM => {
                let expect = if self == Gen::CapMP {
                    [Sign::Minus, Sign::Plus]
                } else {
                    [Sign::Plus, Sign::Minus]
                };
                if pos + 2 > v.len() || v[pos] != expect[0] || v[pos + 1] != expect[1] {
                    return Err(fail(&expect));
                }
                v.drain(pos..pos + 2);
            }
            Gen::Cross => {
                if pos + 2 > v.len() || v[pos] != Sign::Plus || v[pos + 1] != Sign::Plus {
                    return Err(fail(&[Sign::Plus, Sign::Plus]));
                }
            }
        }
        Ok(SignedWord(v))
    }
}

/// A stacked diagram: a source word and a bottom-to-top list of single
/// generators with their strand positions.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Diagram {
    source: SignedWord,
    target: SignedWord,
    gens: Vec<(Gen, usize)>,
}

impl Diagram {
    /// Validates that each generator applies to the word produced by the
    /// ones below it.
    pub fn new(source: SignedWord, gens: Vec<(Gen, usize)>) -> Result<Diagram, DiagramError> {
        let mut word = source.clone();
        for (i, (g, p)) in gens.iter().enumerate() {
            match g.apply(&word, *p) {
                Ok(w) => word = w,
                Err((expected, found)) => {
                    return Err(DiagramError::BoundaryMismatch {
                        slice: i,
                        expected: format!("{} at {} of {}", SignedWord(expected.0), p, word),
                        found: found.to_string(),
                    })
                }
            }
        }
        Ok(Diagram {
            source,
            target: word,
            gens,
        })
    }

    pub fn identity(word: SignedWord) -> Diagram {
        Diagram {
            source: word.clone(),
            target: word,
            gens: Vec::new(),
        }
    }

    pub fn source(&self) -> &SignedWord {
        &self.source
    }

    pub fn target(&self) -> &SignedWord {
        &self.target
    }

    pub fn gens(&self) -> &[(Gen, usize)] {
        &self.gens
    }

    /// The word after the first `i` generators.
    pub fn word_at(&self, i: usize) -> SignedWord {
        let mut word = self.source.clone();
        for (g, p) in &self.gens[..i] {
            word = g.apply(&word, *p).expect("validated at construction");
        }
        word
    }

    pub(crate) fn with_gens_unchecked(
        source: SignedWord,
        target: SignedWord,
        gens: Vec<(Gen, usize)>,
    ) -> Diagram {
        Diagram {
            source,
            target,
            gens,
        }
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "id({})", self.source);
        }
        for (i, (g, p)) in self.gens.iter().enumerate() {
            if i > 0 {
                write!(f, " ; ")?;
            }
            write!(f, "{}@{}", g.name(), p)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}: {} -> {}]", self, self.source, self.target)
    }
}

/// An integer linear combination of diagrams sharing source and target.
#[derive(Clone, PartialEq, Eq)]
pub struct DiagramTerm {
    source: SignedWord,
    target: SignedWord,
    terms: LinComb<Diagram, Int>,
}

impl DiagramTerm {
    pub fn zero(source: SignedWord, target: SignedWord) -> Self {
        DiagramTerm {
            source,
            target,
            terms: LinComb::zero(),
        }
    }

    pub fn from_diagram(d: Diagram) -> Self {
        DiagramTerm {
            source: d.source().clone(),
            target: d.target().clone(),
            terms: LinComb::single(d, Int::from(1)),
        }
    }

    pub fn identity(word: SignedWord) -> Self {
        Self::from_diagram(Diagram::identity(word))
    }

    pub fn single(d: Diagram, coeff: Int) -> Self {
        DiagramTerm {
            source: d.source().clone(),
            target: d.target().clone(),
            terms: LinComb::single(d, coeff),
        }
    }

    pub fn source(&self) -> &SignedWord {
        &self.source
    }

    pub fn target(&self) -> &SignedWord {
        &self.target
    }

    pub fn terms(&self) -> &LinComb<Diagram, Int> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add(&self, other: &Self) -> Result<Self, DiagramError> {
        if self.source != other.source || self.target != other.target {
            return Err(DiagramError::BoundaryMismatch {
                slice: 0,
                expected: format!("{} -> {}", self.source, self.target),
                found: format!("{} -> {}", other.source, other.target),
            });
        }
        Ok(DiagramTerm {
            source: self.source.clone(),
            target: self.target.clone(),
            terms: self.terms.add(&other.terms),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self, DiagramError> {
        self.add(&other.scale(&Int::from(-1)))
    }

    pub fn scale(&self, c: &Int) -> Self {
        DiagramTerm {
            source: self.source.clone(),
            target: self.target.clone(),
            terms: self.terms.scale(c),
        }
    }

    pub(crate) fn add_diagram(&mut self, d: Diagram, c: Int) {
        self.terms.add_term(d, c);
    }
}

/// Vertical stacking: `top ∘ bottom` (bottom acts first).
pub fn compose(top: &DiagramTerm, bottom: &DiagramTerm) -> Result<DiagramTerm, DiagramError> {
    if bottom.target != top.source {
        return Err(DiagramError::BoundaryMismatch {
            slice: bottom.terms.len(),
            expected: top.source.to_string(),
            found: bottom.target.to_string(),
        });
    }
    let mut out = DiagramTerm::zero(bottom.source.clone(), top.target.clone());
    for (db, cb) in bottom.terms.iter() {
        for (dt, ct) in top.terms.iter() {
            let mut gens = db.gens().to_vec();
            gens.extend_from_slice(dt.gens());
            let d = Diagram::with_gens_unchecked(
                db.source().clone(),
                dt.target().clone(),
                gens,
            );
            out.add_diagram(d, cb.clone() * ct.clone());
        }
    }
    Ok(out)
}

/// Horizontal juxtaposition, `left` strands first.
pub fn tensor(left: &DiagramTerm, right: &DiagramTerm) -> DiagramTerm {
    let mut out = DiagramTerm::zero(
        left.source.concat(&right.source),
        left.target.concat(&right.target),
    );
    for (dl, cl) in left.terms.iter() {
        for (dr, cr) in right.terms.iter() {
            let mut gens = dl.gens().to_vec();
            let shift = dl.target().len();
            gens.extend(dr.gens().iter().map(|(g, p)| (*g, p + shift)));
            let d = Diagram::with_gens_unchecked(
                dl.source().concat(dr.source()),
                dl.target().concat(dr.target()),
                gens,
            );
            out.add_diagram(d, cl.clone() * cr.clone());
        }
    }
    out
}

impl fmt::Display for DiagramTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_zero() {
            return write!(f, "0 : {} -> {}", self.source, self.target);
        }
        write!(f, "{}", self.terms)
    }
}

impl fmt::Debug for DiagramTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : {} -> {}", self, self.source, self.target)
    }
}
