//! The graded self-dual Hopf algebra of symmetric functions over the
//! integers: Schur, elementary, homogeneous and power-sum bases, the Hall
//! pairing, multiplication, comultiplication and skewing operators.

use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;

use crate::error::AlgebraError;
use crate::lincomb::LinComb;
use crate::matrix::Mat;
use crate::partitions::{lr_coefficient, Partition};
use crate::report::{CheckItem, CheckReport};
use crate::{Int, Rat};

/// Basis tag for [`SymFunc`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Basis {
    Schur,
    Elementary,
    Homogeneous,
    PowerSum,
}

impl Basis {
    pub fn letter(self) -> char {
        match self {
            Basis::Schur => 's',
            Basis::Elementary => 'e',
            Basis::Homogeneous => 'h',
            Basis::PowerSum => 'p',
        }
    }

    pub fn from_letter(c: char) -> Option<Basis> {
        match c {
            's' => Some(Basis::Schur),
            'e' => Some(Basis::Elementary),
            'h' => Some(Basis::Homogeneous),
            'p' => Some(Basis::PowerSum),
            _ => None,
        }
    }
}

/// An element of the algebra: an integer linear combination of basis
/// elements indexed by partitions, tagged with the basis the coefficients
/// refer to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymFunc {
    basis: Basis,
    terms: LinComb<Partition, Int>,
}

/// An element of the tensor square, with both factors in the Schur basis.
#[derive(Clone, PartialEq, Eq)]
pub struct TensorElem {
    terms: LinComb<(Partition, Partition), Int>,
}

/// Schur-basis structure constants of multiplication, used to inject faults
/// into the axiom checker.
pub type Multiplier<'a> = &'a dyn Fn(&Partition, &Partition) -> LinComb<Partition, Int>;

/// Global memo for Schur products.  Products recur constantly in the
/// operator and axiom checks; the table stays small at desk scale.
static PRODUCT_CACHE: Lazy<Mutex<HashMap<(Partition, Partition), LinComb<Partition, Int>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Expands `s_λ · s_μ` in the Schur basis via Littlewood-Richardson
/// coefficients.
pub fn schur_product(lambda: &Partition, mu: &Partition) -> LinComb<Partition, Int> {
    // Normalize the key: the product is commutative, cache one orientation.
    let key = if lambda <= mu {
        (lambda.clone(), mu.clone())
    } else {
        (mu.clone(), lambda.clone())
    };
    if let Some(hit) = PRODUCT_CACHE.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let n = key.0.size() + key.1.size();
    let mut out = LinComb::zero();
    for nu in Partition::enumerate(n) {
        let c = lr_coefficient(&key.0, &key.1, &nu);
        if c > 0 {
            out.add_term(nu, Int::from(c));
        }
    }
    PRODUCT_CACHE
        .lock()
        .unwrap()
        .insert(key, out.clone());
    out
}

/// Schur expansion of the power sum `p_n`, via the Newton identity
/// `p_n = n·h_n − Σ_{i<n} h_{n−i}·p_i` (all intermediate coefficients stay
/// integral).
fn powersum_schur(n: usize) -> LinComb<Partition, Int> {
    static CACHE: Lazy<Mutex<HashMap<usize, LinComb<Partition, Int>>>> =
        Lazy::new(|| Mutex::new(HashMap::new()));
    if n == 0 {
        return LinComb::single(Partition::empty(), Int::one());
    }
    if let Some(hit) = CACHE.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let mut acc = LinComb::single(Partition::row(n), Int::from(n as u64));
    for i in 1..n {
        let h = Partition::row(n - i);
        let p_i = powersum_schur(i);
        let prod = p_i.map_terms(|lam, c| schur_product(&h, lam).scale(c));
        acc = acc.sub(&prod);
    }
    CACHE.lock().unwrap().insert(n, acc.clone());
    acc
}

/// Schur expansion of a single basis element of the given basis.
fn basis_elem_schur(basis: Basis, lambda: &Partition) -> LinComb<Partition, Int> {
    let factors: Vec<LinComb<Partition, Int>> = match basis {
        Basis::Schur => return LinComb::single(lambda.clone(), Int::one()),
        Basis::Elementary => lambda
            .parts()
            .iter()
            .map(|&p| LinComb::single(Partition::column(p), Int::one()))
            .collect(),
        Basis::Homogeneous => lambda
            .parts()
            .iter()
            .map(|&p| LinComb::single(Partition::row(p), Int::one()))
            .collect(),
        Basis::PowerSum => lambda.parts().iter().map(|&p| powersum_schur(p)).collect(),
    };
    let mut acc = LinComb::single(Partition::empty(), Int::one());
    for f in factors {
        acc = acc.map_terms(|a, c| {
            f.map_terms(|b, d| schur_product(a, b).scale(d)).scale(c)
        });
    }
    acc
}

impl SymFunc {
    pub fn zero(basis: Basis) -> Self {
        SymFunc {
            basis,
            terms: LinComb::zero(),
        }
    }

    pub fn one() -> Self {
        Self::basis_elem(Basis::Schur, Partition::empty())
    }

    /// The single basis element `b_λ` with coefficient 1.
    pub fn basis_elem(basis: Basis, lambda: Partition) -> Self {
        SymFunc {
            basis,
            terms: LinComb::single(lambda, Int::one()),
        }
    }

    /// The Schur function `s_λ`.
    pub fn schur(lambda: Partition) -> Self {
        Self::basis_elem(Basis::Schur, lambda)
    }

    /// The elementary generator `e_n`.
    pub fn e(n: usize) -> Self {
        Self::basis_elem(Basis::Elementary, Partition::row(n))
    }

    /// The homogeneous generator `h_n`.
    pub fn h(n: usize) -> Self {
        Self::basis_elem(Basis::Homogeneous, Partition::row(n))
    }

    /// The power sum `p_n` (Newton normalization).
    pub fn p(n: usize) -> Self {
        Self::basis_elem(Basis::PowerSum, Partition::row(n))
    }

    pub fn from_terms(basis: Basis, terms: LinComb<Partition, Int>) -> Self {
        SymFunc { basis, terms }
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &LinComb<Partition, Int> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    /// Highest degree among the terms; `None` for the zero element.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|p| p.size()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|p| p.size());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// The homogeneous component of degree `d`, in the same basis.
    pub fn component(&self, d: usize) -> SymFunc {
        let terms = self
            .terms
            .iter()
            .filter(|(k, _)| k.size() == d)
            .map(|(k, c)| (k.clone(), c.clone()))
            .collect();
        SymFunc {
            basis: self.basis,
            terms,
        }
    }

    pub fn add(&self, other: &SymFunc) -> SymFunc {
        if self.basis == other.basis {
            SymFunc {
                basis: self.basis,
                terms: self.terms.add(&other.terms),
            }
        } else {
            let a = self.to_schur();
            let b = other.to_schur();
            SymFunc {
                basis: Basis::Schur,
                terms: a.terms.add(&b.terms),
            }
        }
    }

    pub fn sub(&self, other: &SymFunc) -> SymFunc {
        self.add(&other.scale(&(-Int::one())))
    }

    pub fn scale(&self, s: &Int) -> SymFunc {
        SymFunc {
            basis: self.basis,
            terms: self.terms.scale(s),
        }
    }

    /// Canonical form: the same element expressed in the Schur basis.
    pub fn to_schur(&self) -> SymFunc {
        if self.basis == Basis::Schur {
            return self.clone();
        }
        let terms = self
            .terms
            .map_terms(|lam, c| basis_elem_schur(self.basis, lam).scale(c));
        SymFunc {
            basis: Basis::Schur,
            terms,
        }
    }
}

/// Re-expresses `f` in `target` basis.  The change of basis is solved
/// degree by degree over the rationals; a non-integral coefficient (possible
/// only for the power-sum target) is an error.
pub fn convert(f: &SymFunc, target: Basis) -> Result<SymFunc, AlgebraError> {
    let schur = f.to_schur();
    if target == Basis::Schur {
        return Ok(schur);
    }
    let mut out = LinComb::zero();
    let degrees: Vec<usize> = {
        let mut ds: Vec<usize> = schur.terms.keys().map(|p| p.size()).collect();
        ds.dedup();
        ds.sort_unstable();
        ds.dedup();
        ds
    };
    for d in degrees {
        let basis_parts = Partition::enumerate(d);
        let n = basis_parts.len();
        // Column j is the Schur expansion of the j-th target basis element.
        let expansions: Vec<LinComb<Partition, Int>> = basis_parts
            .iter()
            .map(|lam| basis_elem_schur(target, lam))
            .collect();
        let mat = Mat::from_fn(n, n, |i, j| {
            Rat::from_integer(expansions[j].coeff(&basis_parts[i]))
        });
        let rhs = Mat::from_fn(n, 1, |i, _| {
            Rat::from_integer(schur.terms.coeff(&basis_parts[i]))
        });
        let x = mat
            .solve(&rhs)
            .expect("basis expansions are triangular, hence invertible");
        for (j, lam) in basis_parts.iter().enumerate() {
            let c = &x[(j, 0)];
            if c.is_zero() {
                continue;
            }
            if !c.is_integer() {
                return Err(AlgebraError::NonIntegralCoefficient {
                    key: format!("{}{}", target.letter(), lam),
                    value: c.to_string(),
                });
            }
            out.add_term(lam.clone(), c.to_integer());
        }
    }
    Ok(SymFunc {
        basis: target,
        terms: out,
    })
}

/// Product in the algebra, in the Schur basis.  Errors when the result
/// degree would exceed `bound`.
pub fn multiply(f: &SymFunc, g: &SymFunc, bound: usize) -> Result<SymFunc, AlgebraError> {
    let a = f.to_schur();
    let b = g.to_schur();
    let needed = a.degree().unwrap_or(0) + b.degree().unwrap_or(0);
    if !a.is_zero() && !b.is_zero() && needed > bound {
        return Err(AlgebraError::DegreeOverflow {
            bound,
            needed,
        });
    }
    let terms = a
        .terms
        .map_terms(|lam, c| b.terms.map_terms(|mu, d| schur_product(lam, mu).scale(d)).scale(c));
    Ok(SymFunc {
        basis: Basis::Schur,
        terms,
    })
}

/// Comultiplication: `Δ(s_ν) = Σ c^ν_{λμ} s_λ⊗s_μ`, extended linearly.
pub fn comultiply(f: &SymFunc) -> TensorElem {
    let schur = f.to_schur();
    let mut terms = LinComb::zero();
    for (nu, c) in schur.terms.iter() {
        let n = nu.size();
        for d in 0..=n {
            for lam in Partition::enumerate(d) {
                if !nu.contains(&lam) {
                    continue;
                }
                for mu in Partition::enumerate(n - d) {
                    let k = lr_coefficient(&lam, &mu, nu);
                    if k > 0 {
                        terms.add_term((lam.clone(), mu.clone()), Int::from(k) * c.clone());
                    }
                }
            }
        }
    }
    TensorElem { terms }
}

/// Hall pairing: Schur functions are orthonormal.
pub fn pair(f: &SymFunc, g: &SymFunc) -> Int {
    let a = f.to_schur();
    let b = g.to_schur();
    let mut acc = Int::zero();
    for (lam, c) in a.terms.iter() {
        let d = b.terms.coeff(lam);
        if !d.is_zero() {
            acc += c.clone() * d;
        }
    }
    acc
}

/// Factorwise pairing on the tensor square.
pub fn pair_tensor(a: &TensorElem, b: &TensorElem) -> Int {
    let mut acc = Int::zero();
    for (k, c) in a.terms.iter() {
        let d = b.terms.coeff(k);
        if !d.is_zero() {
            acc += c.clone() * d;
        }
    }
    acc
}

/// The skewing operator: `skew(y, f)` is adjoint to right multiplication by
/// `y`, i.e. `⟨skew(y,f), g⟩ = ⟨f, g·y⟩` for all `g`.  On Schur functions,
/// `skew(s_μ, s_ν) = Σ_λ c^ν_{λμ} s_λ`.
pub fn skew(y: &SymFunc, f: &SymFunc) -> SymFunc {
    let ys = y.to_schur();
    let fs = f.to_schur();
    let mut terms = LinComb::zero();
    for (mu, c) in ys.terms.iter() {
        for (nu, d) in fs.terms.iter() {
            if mu.size() > nu.size() || !nu.contains(mu) {
                continue;
            }
            let coeff = c.clone() * d.clone();
            for lam in Partition::enumerate(nu.size() - mu.size()) {
                let k = lr_coefficient(&lam, mu, nu);
                if k > 0 {
                    terms.add_term(lam.clone(), Int::from(k) * coeff.clone());
                }
            }
        }
    }
    SymFunc {
        basis: Basis::Schur,
        terms,
    }
}

impl TensorElem {
    pub fn zero() -> Self {
        TensorElem {
            terms: LinComb::zero(),
        }
    }

    pub fn single(left: Partition, right: Partition, coeff: Int) -> Self {
        TensorElem {
            terms: LinComb::single((left, right), coeff),
        }
    }

    /// `f ⊗ g` for Schur-canonicalized factors.
    pub fn from_pair(f: &SymFunc, g: &SymFunc) -> Self {
        let a = f.to_schur();
        let b = g.to_schur();
        let mut terms = LinComb::zero();
        for (lam, c) in a.terms().iter() {
            for (mu, d) in b.terms().iter() {
                terms.add_term((lam.clone(), mu.clone()), c.clone() * d.clone());
            }
        }
        TensorElem { terms }
    }

    pub fn terms(&self) -> &LinComb<(Partition, Partition), Int> {
        &self.terms
    }

    pub fn from_terms(terms: LinComb<(Partition, Partition), Int>) -> Self {
        TensorElem { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        TensorElem {
            terms: self.terms.add(&other.terms),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        TensorElem {
            terms: self.terms.sub(&other.terms),
        }
    }

    /// Componentwise product on the tensor square.
    pub fn multiply(&self, other: &Self, bound: usize) -> Result<Self, AlgebraError> {
        let mut terms = LinComb::zero();
        for ((a1, a2), c) in self.terms.iter() {
            for ((b1, b2), d) in other.terms.iter() {
                let needed = (a1.size() + b1.size()).max(a2.size() + b2.size());
                if needed > bound {
                    return Err(AlgebraError::DegreeOverflow { bound, needed });
                }
                let left = schur_product(a1, b1);
                let right = schur_product(a2, b2);
                let coeff = c.clone() * d.clone();
                for (l, cl) in left.iter() {
                    for (r, cr) in right.iter() {
                        terms.add_term(
                            (l.clone(), r.clone()),
                            coeff.clone() * cl.clone() * cr.clone(),
                        );
                    }
                }
            }
        }
        Ok(TensorElem { terms })
    }

    /// Applies `f` to the left factor and `g` to the right factor, where
    /// each sends a Schur function to an element.
    pub fn map_factors(
        &self,
        mut f: impl FnMut(&Partition) -> LinComb<Partition, Int>,
        mut g: impl FnMut(&Partition) -> LinComb<Partition, Int>,
    ) -> TensorElem {
        let mut terms = LinComb::zero();
        for ((a, b), c) in self.terms.iter() {
            let fa = f(a);
            let gb = g(b);
            for (l, cl) in fa.iter() {
                for (r, cr) in gb.iter() {
                    terms.add_term(
                        (l.clone(), r.clone()),
                        c.clone() * cl.clone() * cr.clone(),
                    );
                }
            }
        }
        TensorElem { terms }
    }
}

/// Exhaustive axiom check for the self-dual Hopf structure on Schur-basis
/// elements up to `max_degree`: associativity, coassociativity, unit and
/// counit laws, bialgebra compatibility, self-adjointness of multiplication
/// and comultiplication, and positivity of all structure constants.
///
/// `multiplier` supplies the Schur structure constants; pass
/// [`schur_product`] for the real thing, or a corrupted table to watch the
/// checker fail.
pub fn check_psh_axioms(max_degree: usize, multiplier: Multiplier) -> CheckReport {
    let mut report = CheckReport::new("psh-axioms");
    let parts_up_to = |n: usize| -> Vec<Partition> {
        (0..=n).flat_map(Partition::enumerate).collect()
    };
    let mul = |a: &LinComb<Partition, Int>, b: &LinComb<Partition, Int>| {
        a.map_terms(|lam, c| {
            b.map_terms(|mu, d| multiplier(lam, mu).scale(d)).scale(c)
        })
    };
    let single = |lam: &Partition| LinComb::single(lam.clone(), Int::one());

    // Positivity of multiplication constants.
    let mut item = CheckItem::pass("positivity of product structure constants");
    'pos: for lam in parts_up_to(max_degree) {
        for mu in parts_up_to(max_degree.saturating_sub(lam.size())) {
            let prod = multiplier(&lam, &mu);
            for (nu, c) in prod.iter() {
                if c.is_negative() {
                    item = CheckItem::fail(
                        "positivity of product structure constants",
                        format!("coefficient of s{nu} in s{lam}*s{mu} is {c}"),
                    );
                    break 'pos;
                }
            }
        }
    }
    report.push(item);

    // Associativity.
    let mut item = CheckItem::pass("associativity");
    'assoc: for lam in parts_up_to(max_degree) {
        for mu in parts_up_to(max_degree - lam.size()) {
            for nu in parts_up_to(max_degree - lam.size() - mu.size()) {
                let left = mul(&mul(&single(&lam), &single(&mu)), &single(&nu));
                let right = mul(&single(&lam), &mul(&single(&mu), &single(&nu)));
                if left != right {
                    item = CheckItem::fail(
                        "associativity",
                        format!("(s{lam}*s{mu})*s{nu} differs from s{lam}*(s{mu}*s{nu})"),
                    );
                    break 'assoc;
                }
            }
        }
    }
    report.push(item);

    // Unit law.
    let mut item = CheckItem::pass("unit law");
    let one = Partition::empty();
    for lam in parts_up_to(max_degree) {
        let prod = mul(&single(&one), &single(&lam));
        if prod != single(&lam) {
            item = CheckItem::fail("unit law", format!("1*s{lam} = {prod}"));
            break;
        }
    }
    report.push(item);

    // Counit law: (ε⊗id)Δ = id, with ε the coefficient of the empty
    // partition.
    let mut item = CheckItem::pass("counit law");
    for lam in parts_up_to(max_degree) {
        let delta = comultiply(&SymFunc::schur(lam.clone()));
        let mut left = LinComb::zero();
        let mut right = LinComb::zero();
        for ((a, b), c) in delta.terms().iter() {
            if a.is_empty() {
                left.add_term(b.clone(), c.clone());
            }
            if b.is_empty() {
                right.add_term(a.clone(), c.clone());
            }
        }
        if left != single(&lam) || right != single(&lam) {
            item = CheckItem::fail("counit law", format!("counit law fails on s{lam}"));
            break;
        }
    }
    report.push(item);

    // Coassociativity, as an identity of triple-coproduct coefficients.
    let mut item = CheckItem::pass("coassociativity");
    'coassoc: for nu in parts_up_to(max_degree) {
        let delta = comultiply(&SymFunc::schur(nu.clone()));
        // (Δ⊗id)Δ and (id⊗Δ)Δ as maps to triples.
        let mut left: LinComb<(Partition, Partition, Partition), Int> = LinComb::zero();
        let mut right: LinComb<(Partition, Partition, Partition), Int> = LinComb::zero();
        for ((a, b), c) in delta.terms().iter() {
            for ((x, y), d) in comultiply(&SymFunc::schur(a.clone())).terms().iter() {
                left.add_term((x.clone(), y.clone(), b.clone()), c.clone() * d.clone());
            }
            for ((x, y), d) in comultiply(&SymFunc::schur(b.clone())).terms().iter() {
                right.add_term((a.clone(), x.clone(), y.clone()), c.clone() * d.clone());
            }
        }
        if left != right {
            item = CheckItem::fail("coassociativity", format!("coassociativity fails on s{nu}"));
            break 'coassoc;
        }
    }
    report.push(item);

    // Positivity of comultiplication constants.
    let mut item = CheckItem::pass("positivity of coproduct structure constants");
    for nu in parts_up_to(max_degree) {
        let delta = comultiply(&SymFunc::schur(nu.clone()));
        if let Some(((a, b), c)) = delta.terms().iter().find(|(_, c)| c.is_negative()) {
            item = CheckItem::fail(
                "positivity of coproduct structure constants",
                format!("coefficient of s{a}⊗s{b} in Δ(s{nu}) is {c}"),
            );
        }
        if !item.passed {
            break;
        }
    }
    report.push(item);

    // Self-adjointness: ⟨fg, h⟩ = ⟨f⊗g, Δh⟩.
    let mut item = CheckItem::pass("self-adjointness of product and coproduct");
    'adj: for h in parts_up_to(max_degree) {
        let delta = comultiply(&SymFunc::schur(h.clone()));
        for f in parts_up_to(h.size()) {
            for g in Partition::enumerate(h.size() - f.size()) {
                let lhs = mul(&single(&f), &single(&g)).coeff(&h);
                let rhs = delta.terms().coeff(&(f.clone(), g.clone()));
                if lhs != rhs {
                    item = CheckItem::fail(
                        "self-adjointness of product and coproduct",
                        format!("⟨s{f}*s{g}, s{h}⟩ = {lhs} but ⟨s{f}⊗s{g}, Δs{h}⟩ = {rhs}"),
                    );
                    break 'adj;
                }
            }
        }
    }
    report.push(item);

    // Bialgebra compatibility: Δ(fg) = Δ(f)·Δ(g).
    let mut item = CheckItem::pass("bialgebra compatibility");
    'bialg: for f in parts_up_to(max_degree) {
        for g in parts_up_to(max_degree - f.size()) {
            let prod = mul(&single(&f), &single(&g));
            let lhs = comultiply(&SymFunc::from_terms(Basis::Schur, prod));
            let df = comultiply(&SymFunc::schur(f.clone()));
            let dg = comultiply(&SymFunc::schur(g.clone()));
            let mut rhs = LinComb::zero();
            for ((a1, a2), c) in df.terms().iter() {
                for ((b1, b2), d) in dg.terms().iter() {
                    let left = mul(&single(a1), &single(b1));
                    let right = mul(&single(a2), &single(b2));
                    let coeff = c.clone() * d.clone();
                    for (l, cl) in left.iter() {
                        for (r, cr) in right.iter() {
                            rhs.add_term(
                                (l.clone(), r.clone()),
                                coeff.clone() * cl.clone() * cr.clone(),
                            );
                        }
                    }
                }
            }
            if *lhs.terms() != rhs {
                item = CheckItem::fail(
                    "bialgebra compatibility",
                    format!("Δ(s{f}*s{g}) differs from Δ(s{f})·Δ(s{g})"),
                );
                break 'bialg;
            }
        }
    }
    report.push(item);

    report
}

/// Parses the textual element grammar: atoms `s[2,1]`, `e3`, `h[1,1]`, `p4`
/// and `1` (the unit), integer linear combinations like `2*s[2,1] - h3`.
///
/// A mixed-basis combination is canonicalized to the Schur basis; a
/// single-basis combination keeps its basis.
pub fn parse_element(text: &str) -> Result<SymFunc, String> {
    let chars: Vec<char> = text.chars().collect();
    let mut pos = 0usize;
    let skip_ws = |pos: &mut usize| {
        while *pos < chars.len() && chars[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let mut result: Option<SymFunc> = None;
    let mut sign = Int::one();
    skip_ws(&mut pos);
    if pos < chars.len() && chars[pos] == '-' {
        sign = -sign;
        pos += 1;
    } else if pos < chars.len() && chars[pos] == '+' {
        pos += 1;
    }
    loop {
        skip_ws(&mut pos);
        if pos >= chars.len() {
            return Err("unexpected end of input".into());
        }
        // Optional integer coefficient.
        let mut coeff = sign.clone();
        let mut saw_number = false;
        if chars[pos].is_ascii_digit() {
            let start = pos;
            while pos < chars.len() && chars[pos].is_ascii_digit() {
                pos += 1;
            }
            let n: String = chars[start..pos].iter().collect();
            let n: Int = n.parse().map_err(|e| format!("bad integer: {e}"))?;
            coeff = coeff * n;
            saw_number = true;
            skip_ws(&mut pos);
            if pos < chars.len() && chars[pos] == '*' {
                pos += 1;
                skip_ws(&mut pos);
                saw_number = false;
            }
        }
        let term = if saw_number {
            // A bare integer is a multiple of the unit.
            SymFunc::one().scale(&coeff)
        } else {
            if pos >= chars.len() {
                return Err("expected a basis element".into());
            }
            let c = chars[pos];
            if c == '1' {
                pos += 1;
                SymFunc::one().scale(&coeff)
            } else if let Some(basis) = Basis::from_letter(c) {
                pos += 1;
                let lam = if pos < chars.len() && chars[pos] == '[' {
                    let start = pos;
                    while pos < chars.len() && chars[pos] != ']' {
                        pos += 1;
                    }
                    if pos >= chars.len() {
                        return Err("unterminated `[` in partition".into());
                    }
                    pos += 1;
                    let s: String = chars[start..pos].iter().collect();
                    s.parse::<Partition>()?
                } else if pos < chars.len() && chars[pos].is_ascii_digit() {
                    let start = pos;
                    while pos < chars.len() && chars[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let n: usize = chars[start..pos]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|e| format!("bad index: {e}"))?;
                    Partition::row(n)
                } else {
                    return Err(format!("expected `[` or digits after `{c}`"));
                };
                SymFunc::basis_elem(basis, lam).scale(&coeff)
            } else {
                return Err(format!("unexpected character `{c}` at offset {pos}"));
            }
        };
        result = Some(match result {
            None => term,
            Some(acc) => acc.add(&term),
        });
        skip_ws(&mut pos);
        if pos >= chars.len() {
            break;
        }
        match chars[pos] {
            '+' => {
                sign = Int::one();
                pos += 1;
            }
            '-' => {
                sign = -Int::one();
                pos += 1;
            }
            c => return Err(format!("unexpected character `{c}` at offset {pos}")),
        }
    }
    Ok(result.unwrap_or_else(|| SymFunc::zero(Basis::Schur)))
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let letter = self.basis.letter();
        let one = Int::one();
        for (i, (lam, c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if abs != one {
                write!(f, "{}*", abs)?;
            }
            write!(f, "{}{}", letter, lam)?;
        }
        Ok(())
    }
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let one = Int::one();
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            let abs = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if abs != one {
                write!(f, "{}*", abs)?;
            }
            write!(f, "s{}⊗s{}", a, b)?;
        }
        Ok(())
    }
}

impl fmt::Debug for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
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
    fn pieri_single_box() {
        let prod = multiply(&s(&[1]), &s(&[1]), 12).unwrap();
        let expected = s(&[2]).add(&s(&[1, 1]));
        assert_eq!(prod, expected);
    }

    #[test]
    fn product_with_one() {
        let f = s(&[2, 1]).scale(&Int::from(3));
        assert_eq!(multiply(&SymFunc::one(), &f, 12).unwrap(), f);
    }

    #[test]
    fn degree_overflow() {
        let err = multiply(&s(&[3]), &s(&[2]), 4).unwrap_err();
        assert_eq!(err, AlgebraError::DegreeOverflow { bound: 4, needed: 5 });
    }

    #[test]
    fn elementary_and_homogeneous_in_schur() {
        assert_eq!(convert(&SymFunc::h(2), Basis::Schur).unwrap(), s(&[2]));
        assert_eq!(convert(&SymFunc::e(2), Basis::Schur).unwrap(), s(&[1, 1]));
        assert_eq!(convert(&SymFunc::e(1), Basis::Schur).unwrap(), s(&[1]));
    }

    #[test]
    fn powersum_two_in_schur() {
        let p2 = convert(&SymFunc::p(2), Basis::Schur).unwrap();
        assert_eq!(p2, s(&[2]).sub(&s(&[1, 1])));
    }

    #[test]
    fn powersum_hook_formula() {
        // Independent closed form: p_n = Σ_k (−1)^k s_{(n−k,1^k)}.
        for n in 1..=8 {
            let mut expected = LinComb::zero();
            for k in 0..n {
                let mut parts = vec![n - k];
                parts.extend(std::iter::repeat(1).take(k));
                let sign = if k % 2 == 0 { Int::one() } else { -Int::one() };
                expected.add_term(Partition::new(parts), sign);
            }
            assert_eq!(*SymFunc::p(n).to_schur().terms(), expected, "p_{n}");
        }
    }

    #[test]
    fn conversion_round_trips() {
        for n in 0..=6 {
            for lam in Partition::enumerate(n) {
                let f = SymFunc::schur(lam);
                for basis in [Basis::Elementary, Basis::Homogeneous] {
                    let g = convert(&f, basis).unwrap();
                    assert_eq!(convert(&g, Basis::Schur).unwrap(), f);
                }
            }
        }
    }

    #[test]
    fn powersum_conversion_rejects_non_integral() {
        // h_2 = (p_1^2 + p_2)/2 has non-integer power-sum coefficients.
        let err = convert(&SymFunc::h(2), Basis::PowerSum).unwrap_err();
        assert!(matches!(err, AlgebraError::NonIntegralCoefficient { .. }));
        // p_1^2 + p_2 = 2h_2 is fine.
        let f = SymFunc::h(2).scale(&Int::from(2));
        let g = convert(&f, Basis::PowerSum).unwrap();
        let expected = SymFunc::basis_elem(Basis::PowerSum, p(&[1, 1]))
            .add(&SymFunc::basis_elem(Basis::PowerSum, p(&[2])));
        assert_eq!(g, expected);
    }

    #[test]
    fn pairing_is_schur_orthonormal() {
        assert_eq!(pair(&s(&[2, 1]), &s(&[2, 1])), Int::one());
        assert_eq!(pair(&s(&[2]), &s(&[1, 1])), Int::zero());
        let h2 = SymFunc::h(2);
        let h11 = SymFunc::basis_elem(Basis::Homogeneous, p(&[1, 1]));
        assert_eq!(pair(&h11, &h11), Int::from(2));
        assert_eq!(pair(&h2, &h2), Int::one());
    }

    #[test]
    fn coproduct_examples() {
        assert_eq!(
            comultiply(&SymFunc::one()),
            TensorElem::single(Partition::empty(), Partition::empty(), Int::one())
        );
        let d = comultiply(&s(&[2]));
        let expected = TensorElem::single(p(&[2]), Partition::empty(), Int::one())
            .add(&TensorElem::single(p(&[1]), p(&[1]), Int::one()))
            .add(&TensorElem::single(Partition::empty(), p(&[2]), Int::one()));
        assert_eq!(d, expected);
    }

    #[test]
    fn coproduct_adjoint_to_product() {
        for n in 0..=6 {
            for nu in Partition::enumerate(n) {
                let delta = comultiply(&SymFunc::schur(nu.clone()));
                for d in 0..=n {
                    for lam in Partition::enumerate(d) {
                        for mu in Partition::enumerate(n - d) {
                            let via_mul = schur_product(&lam, &mu).coeff(&nu);
                            let via_cop = delta.terms().coeff(&(lam.clone(), mu.clone()));
                            assert_eq!(via_mul, via_cop);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn skew_examples() {
        assert_eq!(skew(&SymFunc::one(), &s(&[2, 1])), s(&[2, 1]));
        assert_eq!(skew(&SymFunc::h(1), &s(&[2, 1])), s(&[2]).add(&s(&[1, 1])));
        assert!(skew(&SymFunc::h(2), &SymFunc::e(2)).is_zero());
    }

    #[test]
    fn skew_is_adjoint_to_right_multiplication() {
        for ny in 1..=3 {
            for y in Partition::enumerate(ny) {
                let yf = SymFunc::schur(y);
                for nf in ny..=6 {
                    for f in Partition::enumerate(nf) {
                        let sk = skew(&yf, &SymFunc::schur(f.clone()));
                        for g in Partition::enumerate(nf - ny) {
                            let lhs = pair(&sk, &SymFunc::schur(g.clone()));
                            let gy = multiply(&SymFunc::schur(g), &yf, 12).unwrap();
                            let rhs = pair(&SymFunc::schur(f.clone()), &gy);
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn powersums_are_primitive() {
        for n in 1..=8 {
            let pn = SymFunc::p(n).to_schur();
            let delta = comultiply(&pn);
            let expected = TensorElem::from_pair(&pn, &SymFunc::one())
                .add(&TensorElem::from_pair(&SymFunc::one(), &pn));
            assert_eq!(delta, expected, "p_{n} primitive");
        }
    }

    #[test]
    fn psh_axioms_pass_small() {
        let report = check_psh_axioms(4, &schur_product);
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn psh_axioms_catch_corrupted_multiplier() {
        // Flip the sign of one structure constant.
        let bad = |lam: &Partition, mu: &Partition| {
            let mut out = schur_product(lam, mu);
            let target = Partition::new(vec![2]);
            if lam.size() == 1 && mu.size() == 1 {
                let c = out.coeff(&target);
                out.add_term(target, -c.clone() - c);
            }
            out
        };
        let report = check_psh_axioms(3, &bad);
        assert!(!report.passed());
        assert!(report.items().iter().any(|i| !i.passed));
    }

    #[test]
    fn parse_element_grammar() {
        assert_eq!(parse_element("s[2,1]").unwrap(), s(&[2, 1]));
        assert_eq!(parse_element("e3").unwrap(), SymFunc::e(3));
        assert_eq!(
            parse_element("2*s[2,1] - h3").unwrap(),
            s(&[2, 1]).scale(&Int::from(2)).sub(&SymFunc::h(3).to_schur())
        );
        assert_eq!(parse_element("1").unwrap(), SymFunc::one());
        assert_eq!(
            parse_element("-3").unwrap(),
            SymFunc::one().scale(&Int::from(-3))
        );
        assert_eq!(
            parse_element("h[2,1]").unwrap(),
            SymFunc::basis_elem(Basis::Homogeneous, p(&[2, 1]))
        );
        assert!(parse_element("q2").is_err());
        assert!(parse_element("s[2").is_err());
        assert!(parse_element("").is_err());
        // Display output parses back to the same element.
        let f = s(&[2]).sub(&s(&[1, 1]).scale(&Int::from(2)));
        assert_eq!(parse_element(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn display_of_elements() {
        let f = s(&[2]).sub(&s(&[1, 1]).scale(&Int::from(2)));
        assert_eq!(f.to_string(), "s[2] - 2*s[1,1]");
        assert_eq!(SymFunc::zero(Basis::Schur).to_string(), "0");
    }
}
