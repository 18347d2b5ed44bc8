//! A planar diagram calculus on signed words: cups, caps and crossings
//! stacked into diagrams, rewriting modulo isotopy and the circle, curl,
//! double-crossing and braid relations, and its shadow on the operator
//! model via decategorification.

mod diagram;
mod parse;
mod rewrite;

pub use diagram::{compose, tensor, Diagram, DiagramTerm, Gen, Sign, SignedWord};
pub use parse::parse_diagram;
pub use rewrite::{equal, normalize};

use serde::{Deserialize, Serialize};

use crate::error::DiagramError;
use crate::heisenberg::FockOperator;
use crate::report::{CheckItem, CheckReport};
use crate::symfunc::SymFunc;
use crate::Int;

/// The sideways crossing `+- -> -+`: the right mate of the upward
/// crossing, expanded as a cap/cross/cup composite.
pub fn sideways_right() -> DiagramTerm {
    let w: SignedWord = "+-".parse().unwrap();
    DiagramTerm::from_diagram(
        Diagram::new(w, vec![(Gen::CupMP, 0), (Gen::Cross, 1), (Gen::CapPM, 2)])
            .expect("fixed composite"),
    )
}

/// The sideways crossing `-+ -> +-`: the left mate of the upward crossing.
pub fn sideways_left() -> DiagramTerm {
    let w: SignedWord = "-+".parse().unwrap();
    DiagramTerm::from_diagram(
        Diagram::new(w, vec![(Gen::CupPM, 2), (Gen::Cross, 1), (Gen::CapMP, 0)])
            .expect("fixed composite"),
    )
}

/// The splitting of `-+` into the empty word and `+-`: builds the two
/// injection/projection pairs and proves the five identities making
/// `-+ ≅ ∅ ⊕ +-` by rewriting alone.
pub fn verify_splitting(budget: usize) -> Result<CheckReport, DiagramError> {
    let mut report = CheckReport::new("diagram-splitting");
    let mp: SignedWord = "-+".parse().unwrap();
    let pm: SignedWord = "+-".parse().unwrap();
    let empty = SignedWord::empty();

    let q1 = DiagramTerm::from_diagram(
        Diagram::new(empty.clone(), vec![(Gen::CupMP, 0)]).expect("cup"),
    );
    let p1 =
        DiagramTerm::from_diagram(Diagram::new(mp.clone(), vec![(Gen::CapMP, 0)]).expect("cap"));
    let q2 = sideways_right();
    let p2 = sideways_left();

    let id_empty = DiagramTerm::identity(empty.clone());
    let id_pm = DiagramTerm::identity(pm.clone());
    let id_mp = DiagramTerm::identity(mp.clone());
    let zero_pm_empty = DiagramTerm::zero(pm.clone(), empty.clone());
    let zero_empty_pm = DiagramTerm::zero(empty.clone(), pm.clone());

    let mut check = |name: &str, lhs: &DiagramTerm, rhs: &DiagramTerm| -> Result<(), DiagramError> {
        let ok = equal(lhs, rhs, budget)?;
        report.push(if ok {
            CheckItem::pass(name)
        } else {
            CheckItem::fail(
                name,
                format!("normal form {:?}", normalize(lhs, budget)),
            )
        });
        Ok(())
    };

    check("p1 ∘ q1 = id on the empty word", &compose(&p1, &q1)?, &id_empty)?;
    check("p2 ∘ q2 = id on +-", &compose(&p2, &q2)?, &id_pm)?;
    check("p1 ∘ q2 = 0", &compose(&p1, &q2)?, &zero_pm_empty)?;
    check("p2 ∘ q1 = 0", &compose(&p2, &q1)?, &zero_empty_pm)?;
    let glued = compose(&q1, &p1)?.add(&compose(&q2, &p2)?)?;
    check("q1 ∘ p1 + q2 ∘ p2 = id on -+", &glued, &id_mp)?;
    Ok(report)
}

/// Characterization of the counit-side projection: it inverts the unit on
/// the identity summand, kills the other summand, and the two sideways
/// crossings compose to the identity.
pub fn check_epsilonl_characterization(budget: usize) -> Result<CheckReport, DiagramError> {
    let mut report = CheckReport::new("epsilon-left");
    let mp: SignedWord = "-+".parse().unwrap();
    let pm: SignedWord = "+-".parse().unwrap();
    let empty = SignedWord::empty();

    let unit = DiagramTerm::from_diagram(
        Diagram::new(empty.clone(), vec![(Gen::CupMP, 0)]).expect("cup"),
    );
    let eps =
        DiagramTerm::from_diagram(Diagram::new(mp, vec![(Gen::CapMP, 0)]).expect("cap"));

    let c1 = compose(&eps, &unit)?;
    let ok = equal(&c1, &DiagramTerm::identity(empty.clone()), budget)?;
    report.push(if ok {
        CheckItem::pass("inverse of the unit on the identity summand")
    } else {
        CheckItem::fail(
            "inverse of the unit on the identity summand",
            format!("{:?}", normalize(&c1, budget)),
        )
    });

    let c2 = compose(&eps, &sideways_right())?;
    let ok = equal(&c2, &DiagramTerm::zero(pm.clone(), empty), budget)?;
    report.push(if ok {
        CheckItem::pass("vanishes on the other summand")
    } else {
        CheckItem::fail(
            "vanishes on the other summand",
            format!("{:?}", normalize(&c2, budget)),
        )
    });

    let c3 = compose(&sideways_left(), &sideways_right())?;
    let ok = equal(&c3, &DiagramTerm::identity(pm), budget)?;
    report.push(if ok {
        CheckItem::pass("sideways crossings compose to the identity")
    } else {
        CheckItem::fail(
            "sideways crossings compose to the identity",
            format!("{:?}", normalize(&c3, budget)),
        )
    });
    Ok(report)
}

/// The operator shadow of a signed word: `+` becomes multiplication by
/// `e_1` and `-` the skewing by `h_1`, leftmost symbol outermost.
pub fn decategorify(w: &SignedWord) -> FockOperator {
    let mut acc = FockOperator::Identity;
    for s in w.0.iter().rev() {
        let op = match s {
            Sign::Plus => FockOperator::mult(SymFunc::e(1)),
            Sign::Minus => FockOperator::skewop(SymFunc::h(1)),
        };
        acc = FockOperator::compose(op, acc);
    }
    acc
}

/// JSON form of a diagram term: a list of coefficient/slices pairs.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DiagramTermJson {
    pub source: String,
    pub target: String,
    pub terms: Vec<DiagramJson>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DiagramJson {
    pub coefficient: String,
    pub slices: Vec<String>,
}

pub fn to_json(term: &DiagramTerm) -> DiagramTermJson {
    DiagramTermJson {
        source: term.source().to_string(),
        target: term.target().to_string(),
        terms: term
            .terms()
            .iter()
            .map(|(d, c)| DiagramJson {
                coefficient: c.to_string(),
                slices: d
                    .gens()
                    .iter()
                    .map(|(g, p)| format!("{}@{}", g.name(), p))
                    .collect(),
            })
            .collect(),
    }
}

pub fn from_json(json: &DiagramTermJson) -> Result<DiagramTerm, DiagramError> {
    let parse_word = |s: &str| -> Result<SignedWord, DiagramError> {
        if s == "(empty)" {
            return Ok(SignedWord::empty());
        }
        s.parse().map_err(|e| DiagramError::Parse { pos: 0, msg: e })
    };
    let source = parse_word(&json.source)?;
    let target = parse_word(&json.target)?;
    let mut out = DiagramTerm::zero(source.clone(), target.clone());
    for t in &json.terms {
        let coeff: Int = t.coefficient.parse().map_err(|e| DiagramError::Parse {
            pos: 0,
            msg: format!("bad coefficient: {e}"),
        })?;
        let mut gens = Vec::new();
        for s in &t.slices {
            let (name, pos) = s.split_once('@').ok_or_else(|| DiagramError::Parse {
                pos: 0,
                msg: format!("bad slice `{s}`"),
            })?;
            let g = match name {
                "cupLR" => Gen::CupMP,
                "cupRL" => Gen::CupPM,
                "capLR" => Gen::CapMP,
                "capRL" => Gen::CapPM,
                "x" => Gen::Cross,
                _ => {
                    return Err(DiagramError::Parse {
                        pos: 0,
                        msg: format!("unknown generator `{name}`"),
                    })
                }
            };
            let p: usize = pos.parse().map_err(|e| DiagramError::Parse {
                pos: 0,
                msg: format!("bad position: {e}"),
            })?;
            gens.push((g, p));
        }
        let d = Diagram::new(source.clone(), gens)?;
        if d.target() != &target {
            return Err(DiagramError::BoundaryMismatch {
                slice: t.slices.len(),
                expected: target.to_string(),
                found: d.target().to_string(),
            });
        }
        out = out.add(&DiagramTerm::single(d, coeff))?;
    }
    Ok(out)
}
