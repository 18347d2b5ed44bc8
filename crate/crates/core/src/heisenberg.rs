//! Fock-space operators on the algebra of symmetric functions, the
//! commutation relations between multiplication and skewing operators, and
//! the induced product on the double.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;
use crate::lincomb::LinComb;
use crate::matrix::Mat;
use crate::partitions::Partition;
use crate::report::{CheckItem, CheckReport};
use crate::symfunc::{
    comultiply, multiply, pair, parse_element, skew, Basis, SymFunc, TensorElem,
};
use crate::{Int, Rat};

/// A symbolic operator on the graded algebra, evaluated lazily per graded
/// component.  `Compose(a, b)` acts as `a` after `b`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum FockOperator {
    Identity,
    /// Multiplication by an element.
    Mult(SymFunc),
    /// The skewing operator of an element (adjoint of right multiplication).
    SkewOp(SymFunc),
    Sum(Vec<FockOperator>),
    Compose(Box<FockOperator>, Box<FockOperator>),
    Scalar(Int, Box<FockOperator>),
}

impl FockOperator {
    pub fn mult(f: SymFunc) -> Self {
        FockOperator::Mult(f)
    }

    pub fn skewop(f: SymFunc) -> Self {
        FockOperator::SkewOp(f)
    }

    pub fn compose(a: FockOperator, b: FockOperator) -> Self {
        FockOperator::Compose(Box::new(a), Box::new(b))
    }

    pub fn sum(ops: Vec<FockOperator>) -> Self {
        FockOperator::Sum(ops)
    }

    pub fn scalar(c: Int, op: FockOperator) -> Self {
        FockOperator::Scalar(c, Box::new(op))
    }

    /// `a∘b − b∘a`.
    pub fn commutator(a: FockOperator, b: FockOperator) -> Self {
        FockOperator::Sum(vec![
            FockOperator::compose(a.clone(), b.clone()),
            FockOperator::scalar(-Int::one(), FockOperator::compose(b, a)),
        ])
    }

    /// Applies the operator to an element, exactly.  `bound` is the degree
    /// truncation bound passed through to multiplication.
    pub fn apply(&self, f: &SymFunc, bound: usize) -> Result<SymFunc, AlgebraError> {
        match self {
            FockOperator::Identity => Ok(f.to_schur()),
            FockOperator::Mult(x) => multiply(x, f, bound),
            FockOperator::SkewOp(y) => Ok(skew(y, f)),
            FockOperator::Sum(ops) => {
                let mut acc = SymFunc::zero(Basis::Schur);
                for op in ops {
                    acc = acc.add(&op.apply(f, bound)?);
                }
                Ok(acc)
            }
            FockOperator::Compose(a, b) => a.apply(&b.apply(f, bound)?, bound),
            FockOperator::Scalar(c, op) => Ok(op.apply(f, bound)?.scale(c)),
        }
    }

    /// The set of degree shifts the operator can produce (an inhomogeneous
    /// operator has several).
    pub fn shift_set(&self) -> BTreeSet<i64> {
        match self {
            FockOperator::Identity => [0].into(),
            FockOperator::Mult(x) => x.terms().keys().map(|p| p.size() as i64).collect(),
            FockOperator::SkewOp(y) => y.terms().keys().map(|p| -(p.size() as i64)).collect(),
            FockOperator::Sum(ops) => ops.iter().flat_map(|o| o.shift_set()).collect(),
            FockOperator::Compose(a, b) => {
                let sa = a.shift_set();
                let sb = b.shift_set();
                sa.iter().flat_map(|x| sb.iter().map(move |y| x + y)).collect()
            }
            FockOperator::Scalar(c, op) => {
                if c.is_zero() {
                    BTreeSet::new()
                } else {
                    op.shift_set()
                }
            }
        }
    }

    /// How far above the input degree any intermediate value can reach.
    pub fn peak_raise(&self) -> i64 {
        match self {
            FockOperator::Identity | FockOperator::SkewOp(_) => 0,
            FockOperator::Mult(x) => x.degree().unwrap_or(0) as i64,
            FockOperator::Sum(ops) => ops.iter().map(|o| o.peak_raise()).max().unwrap_or(0),
            FockOperator::Compose(a, b) => {
                let after_b = b.shift_set().into_iter().max().unwrap_or(0);
                b.peak_raise().max(after_b + a.peak_raise())
            }
            FockOperator::Scalar(_, op) => op.peak_raise(),
        }
    }
}

/// Result of an exhaustive per-component comparison of two operators.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct OperatorIdentityReport {
    pub degrees_checked: usize,
    pub pass: bool,
    /// First basis vector on which the operators disagree.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl OperatorIdentityReport {
    fn pass(degrees: usize) -> Self {
        OperatorIdentityReport {
            degrees_checked: degrees,
            pass: true,
            witness: None,
        }
    }

    fn fail(degrees: usize, witness: String) -> Self {
        OperatorIdentityReport {
            degrees_checked: degrees,
            pass: false,
            witness: Some(witness),
        }
    }
}

/// Compares two operators on every Schur basis vector of degree up to
/// `max_degree`.  Errors when the operators do not even have the same
/// degree shifts.
pub fn operator_equal(
    a: &FockOperator,
    b: &FockOperator,
    max_degree: usize,
) -> Result<OperatorIdentityReport, AlgebraError> {
    let sa = a.shift_set();
    let sb = b.shift_set();
    if sa != sb {
        return Err(AlgebraError::ShiftMismatch {
            left: format!("{sa:?}"),
            right: format!("{sb:?}"),
        });
    }
    let raise = a.peak_raise().max(b.peak_raise()).max(0) as usize;
    let bound = max_degree + raise;
    for d in 0..=max_degree {
        for lam in Partition::enumerate(d) {
            let v = SymFunc::schur(lam.clone());
            let ia = a.apply(&v, bound)?;
            let ib = b.apply(&v, bound)?;
            if ia != ib {
                return Ok(OperatorIdentityReport::fail(
                    max_degree,
                    format!("s{lam}: {ia} vs {ib}"),
                ));
            }
        }
    }
    Ok(OperatorIdentityReport::pass(max_degree))
}

/// Verifies the commutation relations between skewing by the homogeneous
/// generators and multiplying by the elementary generators:
/// `Δ_{h_n}∘m_{e_m} = m_{e_m}∘Δ_{h_n} + m_{e_{m−1}}∘Δ_{h_{n−1}}`,
/// plus commutativity within each family.
pub fn check_heis_relations(
    max_m: usize,
    max_n: usize,
    max_degree: usize,
) -> Result<CheckReport, AlgebraError> {
    let mut report = CheckReport::new("heis-relations");
    for m in 1..=max_m {
        for n in 1..=max_n {
            let lhs = FockOperator::compose(
                FockOperator::skewop(SymFunc::h(n)),
                FockOperator::mult(SymFunc::e(m)),
            );
            let rhs = FockOperator::sum(vec![
                FockOperator::compose(
                    FockOperator::mult(SymFunc::e(m)),
                    FockOperator::skewop(SymFunc::h(n)),
                ),
                FockOperator::compose(
                    FockOperator::mult(SymFunc::e(m - 1)),
                    FockOperator::skewop(SymFunc::h(n - 1)),
                ),
            ]);
            let r = operator_equal(&lhs, &rhs, max_degree)?;
            let name = format!("reordering relation m={m}, n={n}");
            report.push(if r.pass {
                CheckItem::pass(name)
            } else {
                CheckItem::fail(name, r.witness.unwrap_or_default())
            });
        }
    }
    let mut mult_ok = CheckItem::pass("multiplication operators commute");
    'outer: for i in 1..=max_m {
        for j in i..=max_m {
            let c = FockOperator::commutator(
                FockOperator::mult(SymFunc::e(i)),
                FockOperator::mult(SymFunc::e(j)),
            );
            let zero = FockOperator::scalar(Int::zero(), FockOperator::Identity);
            let r = match operator_equal(&c, &zero, max_degree) {
                Ok(r) => r,
                // Zero has an empty shift set; compare against an explicit
                // cancelling sum instead.
                Err(AlgebraError::ShiftMismatch { .. }) => {
                    let z = FockOperator::sum(vec![
                        FockOperator::mult(SymFunc::e(i + j)),
                        FockOperator::scalar(-Int::one(), FockOperator::mult(SymFunc::e(i + j))),
                    ]);
                    operator_equal(&c, &z, max_degree)?
                }
                Err(e) => return Err(e),
            };
            if !r.pass {
                mult_ok = CheckItem::fail(
                    "multiplication operators commute",
                    format!("[m_e{i}, m_e{j}] ≠ 0: {}", r.witness.unwrap_or_default()),
                );
                break 'outer;
            }
        }
    }
    report.push(mult_ok);
    let mut skew_ok = CheckItem::pass("skewing operators commute");
    'outer2: for i in 1..=max_n {
        for j in i..=max_n {
            let c = FockOperator::commutator(
                FockOperator::skewop(SymFunc::h(i)),
                FockOperator::skewop(SymFunc::h(j)),
            );
            let z = FockOperator::sum(vec![
                FockOperator::skewop(SymFunc::h(i + j)),
                FockOperator::scalar(-Int::one(), FockOperator::skewop(SymFunc::h(i + j))),
            ]);
            let r = operator_equal(&c, &z, max_degree)?;
            if !r.pass {
                skew_ok = CheckItem::fail(
                    "skewing operators commute",
                    format!("[Δ_h{i}, Δ_h{j}] ≠ 0: {}", r.witness.unwrap_or_default()),
                );
                break 'outer2;
            }
        }
    }
    report.push(skew_ok);
    Ok(report)
}

/// Verifies that skewing is a twisted derivation of the product:
/// `skew(x, y·z) = Σ skew(x_(1), y)·skew(x_(2), z)` for all Schur pairs
/// with `|y|+|z| ≤ max_degree`.
pub fn check_deltam(
    x: &SymFunc,
    max_degree: usize,
) -> Result<OperatorIdentityReport, AlgebraError> {
    let dx = comultiply(x);
    for total in 0..=max_degree {
        for dy in 0..=total {
            for y in Partition::enumerate(dy) {
                let yf = SymFunc::schur(y.clone());
                for z in Partition::enumerate(total - dy) {
                    let zf = SymFunc::schur(z.clone());
                    let yz = multiply(&yf, &zf, max_degree)?;
                    let lhs = skew(x, &yz);
                    let mut rhs = SymFunc::zero(Basis::Schur);
                    for ((x1, x2), c) in dx.terms().iter() {
                        let sy = skew(&SymFunc::schur(x1.clone()), &yf);
                        let sz = skew(&SymFunc::schur(x2.clone()), &zf);
                        rhs = rhs.add(&multiply(&sy, &sz, max_degree)?.scale(c));
                    }
                    if lhs != rhs {
                        return Ok(OperatorIdentityReport::fail(
                            max_degree,
                            format!("y=s{y}, z=s{z}: {lhs} vs {rhs}"),
                        ));
                    }
                }
            }
        }
    }
    Ok(OperatorIdentityReport::pass(max_degree))
}

/// An element of the double: a finitely supported integer combination of
/// `s_λ ⊗ s_μ`, acting on the algebra through `m_{s_λ}∘Δ_{s_μ}`.
#[derive(Clone, PartialEq, Eq)]
pub struct HeisElement {
    terms: LinComb<(Partition, Partition), Int>,
}

impl HeisElement {
    pub fn zero() -> Self {
        HeisElement {
            terms: LinComb::zero(),
        }
    }

    pub fn one() -> Self {
        Self::single(Partition::empty(), Partition::empty(), Int::one())
    }

    pub fn single(left: Partition, right: Partition, coeff: Int) -> Self {
        HeisElement {
            terms: LinComb::single((left, right), coeff),
        }
    }

    /// `f ⊗ g` with both factors canonicalized to the Schur basis.
    pub fn from_pair(f: &SymFunc, g: &SymFunc) -> Self {
        let t = TensorElem::from_pair(f, g);
        HeisElement {
            terms: t.terms().clone(),
        }
    }

    pub fn from_terms(terms: LinComb<(Partition, Partition), Int>) -> Self {
        HeisElement { terms }
    }

    pub fn terms(&self) -> &LinComb<(Partition, Partition), Int> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        HeisElement {
            terms: self.terms.add(&other.terms),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        HeisElement {
            terms: self.terms.sub(&other.terms),
        }
    }

    /// The image under the representation on the algebra itself.
    pub fn to_operator(&self) -> FockOperator {
        let mut ops = Vec::new();
        for ((lam, mu), c) in self.terms.iter() {
            let op = FockOperator::compose(
                FockOperator::mult(SymFunc::schur(lam.clone())),
                FockOperator::skewop(SymFunc::schur(mu.clone())),
            );
            ops.push(FockOperator::scalar(c.clone(), op));
        }
        if ops.is_empty() {
            ops.push(FockOperator::scalar(Int::zero(), FockOperator::Identity));
        }
        FockOperator::Sum(ops)
    }

    /// Highest left/right degrees in the support.
    pub fn support_degrees(&self) -> (usize, usize) {
        let l = self.terms.keys().map(|(a, _)| a.size()).max().unwrap_or(0);
        let r = self.terms.keys().map(|(_, b)| b.size()).max().unwrap_or(0);
        (l, r)
    }
}

/// Product on the double, via the reordering formula
/// `(x⊗y)·(u⊗v) = Σ x·skew(y_(2), u) ⊗ y_(1)·v`, then verified against
/// operator composition on components up to `verify_degree`.
pub fn heis_product(
    u: &HeisElement,
    v: &HeisElement,
    bound: usize,
    verify_degree: usize,
) -> Result<HeisElement, AlgebraError> {
    let mut terms = LinComb::zero();
    for ((x, y), c) in u.terms.iter() {
        let dy = comultiply(&SymFunc::schur(y.clone()));
        for ((a, b), d) in v.terms.iter() {
            for ((y1, y2), k) in dy.terms().iter() {
                let left = multiply(
                    &SymFunc::schur(x.clone()),
                    &skew(&SymFunc::schur(y2.clone()), &SymFunc::schur(a.clone())),
                    bound,
                )?;
                let right = multiply(
                    &SymFunc::schur(y1.clone()),
                    &SymFunc::schur(b.clone()),
                    bound,
                )?;
                let coeff = c.clone() * d.clone() * k.clone();
                for (l, cl) in left.terms().iter() {
                    for (r, cr) in right.terms().iter() {
                        terms.add_term(
                            (l.clone(), r.clone()),
                            coeff.clone() * cl.clone() * cr.clone(),
                        );
                    }
                }
            }
        }
    }
    let w = HeisElement { terms };
    if verify_degree > 0 {
        let composite = FockOperator::compose(u.to_operator(), v.to_operator());
        // Shift sets can legitimately differ by cancellation; compare by
        // direct application instead of operator_equal.
        let wop = w.to_operator();
        let raise = composite.peak_raise().max(wop.peak_raise()).max(0) as usize;
        let b = verify_degree + raise;
        for d in 0..=verify_degree {
            for lam in Partition::enumerate(d) {
                let f = SymFunc::schur(lam.clone());
                assert_eq!(
                    wop.apply(&f, b)?,
                    composite.apply(&f, b)?,
                    "double product disagrees with operator composition on s{lam}"
                );
            }
        }
    }
    Ok(w)
}

/// Independent route to the product of the double: solve an exact linear
/// system expressing the composite operator in the spanning family
/// `m_{s_λ}∘Δ_{s_μ}`.  Used as an oracle against [`heis_product`].
pub fn heis_product_solved(
    u: &HeisElement,
    v: &HeisElement,
    bound: usize,
) -> Result<HeisElement, AlgebraError> {
    let (lu, ru) = u.support_degrees();
    let (lv, rv) = v.support_degrees();
    let max_left = lu + lv;
    let max_right = ru + rv;
    let unknowns: Vec<(Partition, Partition)> = (0..=max_left)
        .flat_map(Partition::enumerate)
        .flat_map(|l| {
            (0..=max_right)
                .flat_map(Partition::enumerate)
                .map(move |r| (l.clone(), r))
        })
        .collect();
    let composite = FockOperator::compose(u.to_operator(), v.to_operator());
    let probes: Vec<Partition> = (0..=max_right).flat_map(Partition::enumerate).collect();
    // Collect the row index space: (probe, output partition).
    let mut rows: BTreeMap<(Partition, Partition), usize> = BTreeMap::new();
    let mut images = Vec::new();
    for nu in &probes {
        let img = composite.apply(&SymFunc::schur(nu.clone()), bound)?;
        for (out, _) in img.terms().iter() {
            let next = rows.len();
            rows.entry((nu.clone(), out.clone())).or_insert(next);
        }
        images.push(img);
    }
    let mut cols = Vec::new();
    for (lam, mu) in &unknowns {
        let op = FockOperator::compose(
            FockOperator::mult(SymFunc::schur(lam.clone())),
            FockOperator::skewop(SymFunc::schur(mu.clone())),
        );
        let mut col = Vec::new();
        for nu in &probes {
            let img = op.apply(&SymFunc::schur(nu.clone()), bound)?;
            for (out, c) in img.terms().iter() {
                let next = rows.len();
                let idx = *rows.entry((nu.clone(), out.clone())).or_insert(next);
                col.push((idx, c.clone()));
            }
        }
        cols.push(col);
    }
    let nrows = rows.len();
    let mut mat = Mat::<Rat>::zeros(nrows, unknowns.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, c) in col {
            mat[(*i, j)] = Rat::from_integer(c.clone());
        }
    }
    let mut rhs = Mat::<Rat>::zeros(nrows, 1);
    for (nu, img) in probes.iter().zip(images.iter()) {
        for (out, c) in img.terms().iter() {
            let i = rows[&(nu.clone(), out.clone())];
            rhs[(i, 0)] = Rat::from_integer(c.clone());
        }
    }
    let x = mat.solve(&rhs).expect("composite lies in the span");
    let mut terms = LinComb::zero();
    for (j, (lam, mu)) in unknowns.into_iter().enumerate() {
        let c = &x[(j, 0)];
        if !c.is_zero() {
            assert!(c.is_integer(), "double product solved to a non-integer");
            terms.add_term((lam, mu), c.to_integer());
        }
    }
    Ok(HeisElement { terms })
}

/// Verifies the splitting `Δ_P∘m_P = m_P∘Δ_P + c·Id` with `c = ⟨P,P⟩`, for
/// a primitive element `P`.
pub fn check_primitive_splitting(
    p: &SymFunc,
    max_degree: usize,
) -> Result<OperatorIdentityReport, AlgebraError> {
    let dp = comultiply(p);
    let expected = TensorElem::from_pair(p, &SymFunc::one())
        .add(&TensorElem::from_pair(&SymFunc::one(), p));
    if dp != expected {
        return Err(AlgebraError::NotPrimitive {
            witness: format!("Δ({}) = {}", p, dp),
        });
    }
    let c = pair(p, p);
    let lhs = FockOperator::compose(
        FockOperator::skewop(p.clone()),
        FockOperator::mult(p.clone()),
    );
    let rhs = FockOperator::sum(vec![
        FockOperator::compose(
            FockOperator::mult(p.clone()),
            FockOperator::skewop(p.clone()),
        ),
        FockOperator::scalar(c, FockOperator::Identity),
    ]);
    operator_equal(&lhs, &rhs, max_degree)
}

/// Faithfulness of the representation at desk scale: the operators of all
/// basis elements of the double with left/right degrees up to
/// `max_pair_degree` are linearly independent when evaluated on components
/// up to `max_degree`.
pub fn check_faithfulness(
    max_pair_degree: usize,
    max_degree: usize,
) -> Result<CheckItem, AlgebraError> {
    let parts: Vec<Partition> = (0..=max_pair_degree).flat_map(Partition::enumerate).collect();
    let probes: Vec<Partition> = (0..=max_degree).flat_map(Partition::enumerate).collect();
    let mut col_index: BTreeMap<(Partition, Partition), usize> = BTreeMap::new();
    let mut rows = Vec::new();
    let bound = max_degree + max_pair_degree;
    for lam in &parts {
        for mu in &parts {
            let op = FockOperator::compose(
                FockOperator::mult(SymFunc::schur(lam.clone())),
                FockOperator::skewop(SymFunc::schur(mu.clone())),
            );
            let mut row = BTreeMap::new();
            for nu in &probes {
                let img = op.apply(&SymFunc::schur(nu.clone()), bound)?;
                for (out, c) in img.terms().iter() {
                    let next = col_index.len();
                    let idx = *col_index.entry((nu.clone(), out.clone())).or_insert(next);
                    row.insert(idx, Rat::from_integer(c.clone()));
                }
            }
            rows.push(row);
        }
    }
    let expected = parts.len() * parts.len();
    let rank = crate::matrix::sparse_rank(rows);
    Ok(if rank == expected {
        CheckItem::pass_with(
            "representation is faithful at desk scale",
            format!("{expected} operators, rank {rank}"),
        )
    } else {
        CheckItem::fail(
            "representation is faithful at desk scale",
            format!("{expected} operators but rank {rank}"),
        )
    })
}

impl fmt::Display for HeisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&TensorElem::from_terms(self.terms.clone()), f)
    }
}

impl fmt::Debug for HeisElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parses the operator grammar: `m(<element>)`, `D(<element>)`, `Id`,
/// composition with `o`, `+`/`-`, integer scalar multiples, parentheses.
/// Example: `D(h1) o m(e1) - m(e1) o D(h1)`.
pub fn parse_operator(text: &str) -> Result<FockOperator, String> {
    struct P<'a> {
        chars: Vec<char>,
        pos: usize,
        src: &'a str,
    }
    impl P<'_> {
        fn ws(&mut self) {
            while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
                self.pos += 1;
            }
        }
        fn peek(&mut self) -> Option<char> {
            self.ws();
            self.chars.get(self.pos).copied()
        }
        fn expr(&mut self) -> Result<FockOperator, String> {
            let mut terms = Vec::new();
            let mut sign = Int::one();
            if self.peek() == Some('-') {
                self.pos += 1;
                sign = -sign;
            } else if self.peek() == Some('+') {
                self.pos += 1;
            }
            loop {
                let t = self.term()?;
                terms.push(if sign.is_one() {
                    t
                } else {
                    FockOperator::scalar(sign.clone(), t)
                });
                match self.peek() {
                    Some('+') => {
                        self.pos += 1;
                        sign = Int::one();
                    }
                    Some('-') => {
                        self.pos += 1;
                        sign = -Int::one();
                    }
                    _ => break,
                }
            }
            Ok(if terms.len() == 1 {
                terms.pop().unwrap()
            } else {
                FockOperator::Sum(terms)
            })
        }
        fn term(&mut self) -> Result<FockOperator, String> {
            // Optional integer scalar, then factors joined by `o`.
            let mut scalar = None;
            if self.peek().is_some_and(|c| c.is_ascii_digit()) {
                let start = self.pos;
                while self.pos < self.chars.len() && self.chars[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let n: Int = self.chars[start..self.pos]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|e| format!("bad integer: {e}"))?;
                if self.peek() == Some('*') {
                    self.pos += 1;
                }
                scalar = Some(n);
            }
            let mut factors = vec![self.factor()?];
            while self.peek() == Some('o')
                && !self
                    .chars
                    .get(self.pos + 1)
                    .is_some_and(|c| c.is_alphanumeric())
            {
                self.pos += 1;
                factors.push(self.factor()?);
            }
            let mut op = factors.remove(0);
            for f in factors {
                op = FockOperator::compose(op, f);
            }
            Ok(match scalar {
                Some(n) => FockOperator::scalar(n, op),
                None => op,
            })
        }
        fn factor(&mut self) -> Result<FockOperator, String> {
            match self.peek() {
                Some('(') => {
                    self.pos += 1;
                    let inner = self.expr()?;
                    if self.peek() != Some(')') {
                        return Err(format!("expected `)` in `{}`", self.src));
                    }
                    self.pos += 1;
                    Ok(inner)
                }
                Some('m') | Some('D') => {
                    let kind = self.chars[self.pos];
                    self.pos += 1;
                    if self.peek() != Some('(') {
                        return Err(format!("expected `(` after `{kind}`"));
                    }
                    self.pos += 1;
                    let start = self.pos;
                    let mut depth = 1;
                    while self.pos < self.chars.len() && depth > 0 {
                        match self.chars[self.pos] {
                            '(' => depth += 1,
                            ')' => depth -= 1,
                            _ => {}
                        }
                        self.pos += 1;
                    }
                    if depth > 0 {
                        return Err("unterminated `(`".into());
                    }
                    let inner: String = self.chars[start..self.pos - 1].iter().collect();
                    let elem = parse_element(&inner)?;
                    Ok(match kind {
                        'm' => FockOperator::mult(elem),
                        _ => FockOperator::skewop(elem),
                    })
                }
                Some('I') => {
                    if self.chars[self.pos..].iter().take(2).collect::<String>() == "Id" {
                        self.pos += 2;
                        Ok(FockOperator::Identity)
                    } else {
                        Err(format!("unexpected token at offset {}", self.pos))
                    }
                }
                Some('1') => {
                    self.pos += 1;
                    Ok(FockOperator::Identity)
                }
                Some(c) => Err(format!("unexpected character `{c}` at offset {}", self.pos)),
                None => Err("unexpected end of input".into()),
            }
        }
    }
    let mut p = P {
        chars: text.chars().collect(),
        pos: 0,
        src: text,
    };
    let op = p.expr()?;
    if p.peek().is_some() {
        return Err(format!(
            "trailing input at offset {} in `{}`",
            p.pos, text
        ));
    }
    Ok(op)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn s(parts: &[usize]) -> SymFunc {
        SymFunc::schur(p(parts))
    }

    #[test]
    fn apply_examples() {
        let e1 = SymFunc::e(1);
        let one = SymFunc::one();
        assert_eq!(
            FockOperator::mult(e1.clone()).apply(&one, 12).unwrap(),
            e1.to_schur()
        );
        assert_eq!(
            FockOperator::skewop(SymFunc::h(1)).apply(&e1, 12).unwrap(),
            one
        );
        let op = FockOperator::compose(
            FockOperator::skewop(SymFunc::h(1)),
            FockOperator::mult(e1.clone()),
        );
        let expected = s(&[2]).add(&multiply(&e1, &s(&[1]), 12).unwrap());
        assert_eq!(op.apply(&s(&[2]), 12).unwrap(), expected);
    }

    #[test]
    fn operator_equal_heis_relation_examples() {
        let lhs = FockOperator::compose(
            FockOperator::skewop(SymFunc::h(1)),
            FockOperator::mult(SymFunc::e(1)),
        );
        let rhs = FockOperator::sum(vec![
            FockOperator::compose(
                FockOperator::mult(SymFunc::e(1)),
                FockOperator::skewop(SymFunc::h(1)),
            ),
            FockOperator::Identity,
        ]);
        assert!(operator_equal(&lhs, &rhs, 8).unwrap().pass);

        let lhs = FockOperator::compose(
            FockOperator::skewop(SymFunc::h(2)),
            FockOperator::mult(SymFunc::e(1)),
        );
        let rhs = FockOperator::sum(vec![
            FockOperator::compose(
                FockOperator::mult(SymFunc::e(1)),
                FockOperator::skewop(SymFunc::h(2)),
            ),
            FockOperator::skewop(SymFunc::h(1)),
        ]);
        assert!(operator_equal(&lhs, &rhs, 8).unwrap().pass);
    }

    #[test]
    fn operator_equal_shift_mismatch() {
        let a = FockOperator::mult(SymFunc::e(1));
        let b = FockOperator::skewop(SymFunc::h(1));
        assert!(matches!(
            operator_equal(&a, &b, 4),
            Err(AlgebraError::ShiftMismatch { .. })
        ));
    }

    #[test]
    fn heis_relations_small() {
        let r = check_heis_relations(2, 2, 5).unwrap();
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn dropping_the_correction_term_fails() {
        let lhs = FockOperator::compose(
            FockOperator::skewop(SymFunc::h(2)),
            FockOperator::mult(SymFunc::e(1)),
        );
        let rhs = FockOperator::compose(
            FockOperator::mult(SymFunc::e(1)),
            FockOperator::skewop(SymFunc::h(2)),
        );
        let r = operator_equal(&lhs, &rhs, 6).unwrap();
        assert!(!r.pass);
        assert!(r.witness.is_some());
    }

    #[test]
    fn deltam_examples() {
        assert!(check_deltam(&SymFunc::e(1), 6).unwrap().pass);
        assert!(check_deltam(&SymFunc::h(2), 6).unwrap().pass);
        assert!(check_deltam(&s(&[2, 1]), 6).unwrap().pass);
    }

    #[test]
    fn double_product_examples() {
        let one = HeisElement::one();
        let x = HeisElement::from_pair(&SymFunc::e(1), &SymFunc::h(1));
        assert_eq!(heis_product(&one, &x, 12, 6).unwrap(), x);
        assert_eq!(heis_product(&x, &one, 12, 6).unwrap(), x);

        // (1⊗h_1)·(e_2⊗1) = e_2⊗h_1 + e_1⊗1.
        let u = HeisElement::from_pair(&SymFunc::one(), &SymFunc::h(1));
        let v = HeisElement::from_pair(&SymFunc::e(2), &SymFunc::one());
        let w = heis_product(&u, &v, 12, 6).unwrap();
        let expected = HeisElement::from_pair(&SymFunc::e(2), &SymFunc::h(1))
            .add(&HeisElement::from_pair(&SymFunc::e(1), &SymFunc::one()));
        assert_eq!(w, expected);

        // (e_1⊗h_1)² = e_1²⊗h_1² + e_1⊗h_1.
        let x2 = heis_product(&x, &x, 12, 6).unwrap();
        let e1sq = multiply(&SymFunc::e(1), &SymFunc::e(1), 12).unwrap();
        let h1sq = multiply(&SymFunc::h(1), &SymFunc::h(1), 12).unwrap();
        let expected = HeisElement::from_pair(&e1sq, &h1sq).add(&x);
        assert_eq!(x2, expected);
    }

    #[test]
    fn double_product_agrees_with_solver() {
        let cases = [
            (
                HeisElement::from_pair(&SymFunc::one(), &SymFunc::h(1)),
                HeisElement::from_pair(&SymFunc::e(2), &SymFunc::one()),
            ),
            (
                HeisElement::from_pair(&SymFunc::e(1), &SymFunc::h(1)),
                HeisElement::from_pair(&SymFunc::e(1), &SymFunc::h(1)),
            ),
            (
                HeisElement::from_pair(&s(&[1, 1]), &SymFunc::h(2)),
                HeisElement::from_pair(&s(&[2]), &s(&[1])),
            ),
        ];
        for (u, v) in cases {
            let direct = heis_product(&u, &v, 14, 0).unwrap();
            let solved = heis_product_solved(&u, &v, 14).unwrap();
            assert_eq!(direct, solved);
        }
    }

    #[test]
    fn primitive_splitting() {
        let r = check_primitive_splitting(&SymFunc::e(1), 8).unwrap();
        assert!(r.pass, "{r:?}");
        let pi2 = SymFunc::p(2).to_schur();
        assert_eq!(pair(&pi2, &pi2), Int::from(2));
        let r = check_primitive_splitting(&pi2, 6).unwrap();
        assert!(r.pass, "{r:?}");
        let err = check_primitive_splitting(&SymFunc::h(2), 6).unwrap_err();
        assert!(matches!(err, AlgebraError::NotPrimitive { .. }));
    }

    #[test]
    fn faithful_small() {
        let item = check_faithfulness(2, 5).unwrap();
        assert!(item.passed, "{item:?}");
    }

    #[test]
    fn skewing_by_a_product_composes() {
        // Δ_{yy'} = Δ_y ∘ Δ_{y'} (the algebra is commutative, so the order
        // question is moot; both orders are asserted).
        for y in Partition::enumerate(2) {
            for y2 in Partition::enumerate(2) {
                let yy = multiply(&SymFunc::schur(y.clone()), &SymFunc::schur(y2.clone()), 12)
                    .unwrap();
                let lhs = FockOperator::skewop(yy);
                let rhs = FockOperator::compose(
                    FockOperator::skewop(SymFunc::schur(y.clone())),
                    FockOperator::skewop(SymFunc::schur(y2.clone())),
                );
                let rhs_rev = FockOperator::compose(
                    FockOperator::skewop(SymFunc::schur(y2.clone())),
                    FockOperator::skewop(SymFunc::schur(y.clone())),
                );
                assert!(operator_equal(&lhs, &rhs, 6).unwrap().pass);
                assert!(operator_equal(&lhs, &rhs_rev, 6).unwrap().pass);
            }
        }
    }

    #[test]
    fn operator_parser() {
        let op = parse_operator("D(h1) o m(e1) - m(e1) o D(h1)").unwrap();
        let r = operator_equal(&op, &FockOperator::Identity, 6).unwrap();
        assert!(r.pass, "{r:?}");
        let op = parse_operator("2*Id + m(s[2,1]) o D(e2)").unwrap();
        assert!(matches!(op, FockOperator::Sum(_)));
        assert!(parse_operator("q(e1)").is_err());
        assert!(parse_operator("m(e1) o").is_err());
        assert!(parse_operator("m(e1))").is_err());
    }

    #[test]
    fn powersum_elementary_commutator_measured() {
        // The measured value of [Δ_{π_n}, m_{e_m}] at desk scale:
        // multiplication by (−1)^{n−1} e_{m−n} for m ≥ n.
        for n in 1..=3usize {
            for m in n..=4usize {
                let pi = SymFunc::p(n).to_schur();
                let c = FockOperator::commutator(
                    FockOperator::skewop(pi),
                    FockOperator::mult(SymFunc::e(m)),
                );
                let sign = if n % 2 == 1 { Int::one() } else { -Int::one() };
                let expected =
                    FockOperator::scalar(sign, FockOperator::mult(SymFunc::e(m - n)));
                let raise = c.peak_raise().max(expected.peak_raise()) as usize;
                for d in 0..=6usize {
                    for lam in Partition::enumerate(d) {
                        let f = SymFunc::schur(lam);
                        assert_eq!(
                            c.apply(&f, 6 + raise).unwrap(),
                            expected.apply(&f, 6 + raise).unwrap(),
                            "n={n}, m={m}"
                        );
                    }
                }
            }
        }
    }
}
