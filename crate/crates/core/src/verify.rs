//! The aggregated verification run: every acceptance suite in one report.
//!
//! Each suite exercises one of the core guarantees: operator relations on
//! the Fock representation, the skew-multiplication relation, the Hopf
//! axiom battery, the categorified splitting at both levels, the diagram
//! relations, the counit characterization, Beck-Chevalley and adjunction
//! zigzags, cube coherence, and the consistency of the diagram model with
//! the operator model.  Everything is exact and deterministic given the
//! seed.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::diagcat::{
    self, compose, equal, normalize, parse_diagram, Diagram, DiagramTerm, Gen, SignedWord,
};
use crate::finset2cat::{
    bc_check, cube_front_completion, cube_hexagon_check, cube_mate_check, eps_l, eps_r, eta_l,
    eta_r, random_cartesian_cube, BlockNat, CubeDirection, CubeFaces, FinMap, FinSet,
    FunctorWord, SquareOfSets,
};
use crate::heisenberg::{
    check_deltam, check_heis_relations, check_primitive_splitting, operator_equal, FockOperator,
};
use crate::report::{CheckItem, CheckReport};
use crate::symfunc::{check_psh_axioms, schur_product};
use crate::{Int, Partition, SymFunc};

/// Numeric bounds and switches for a verification run.
#[derive(Clone, Copy, Debug)]
pub struct VerifyConfig {
    pub max_degree: usize,
    pub budget: usize,
    pub seed: u64,
    /// Corrupts the multiplication fixture so that the Hopf axiom suite
    /// fails with a witness; used to test failure reporting end to end.
    pub inject_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_degree: 8,
            budget: 100_000,
            seed: 0,
            inject_fault: false,
        }
    }
}

/// The outcome of `verify_all`: one report per suite.
#[derive(Clone, PartialEq, Eq, Debug, serde::Serialize, serde::Deserialize)]
pub struct VerifyReport {
    pub suites: Vec<CheckReport>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(|s| s.passed())
    }
}

impl std::fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for s in &self.suites {
            write!(f, "{s}")?;
        }
        writeln!(
            f,
            "verify all: {}",
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// Runs every suite and aggregates the reports.
pub fn verify_all(cfg: &VerifyConfig) -> VerifyReport {
    VerifyReport {
        suites: vec![
            suite_heis_relations(cfg),
            suite_deltam(cfg),
            suite_psh_axioms(cfg),
            suite_splitting(cfg),
            suite_diagram_relations(cfg),
            suite_epsilon(cfg),
            suite_beck_chevalley(cfg),
            suite_cubes(cfg),
            suite_decategorification(cfg),
        ],
    }
}

fn error_item(name: &str, err: impl std::fmt::Display) -> CheckItem {
    CheckItem::fail(name, format!("error: {err}"))
}

pub fn suite_heis_relations(cfg: &VerifyConfig) -> CheckReport {
    let mut report = CheckReport::new("heisenberg-relations");
    match check_heis_relations(5, 5, cfg.max_degree + 2) {
        Ok(inner) => report.extend(inner),
        Err(e) => report.push(error_item("relations", e)),
    }
    report
}

pub fn suite_deltam(cfg: &VerifyConfig) -> CheckReport {
    let mut report = CheckReport::new("skew-multiplication-relation");
    for d in 0..=4usize.min(cfg.max_degree) {
        for lam in Partition::enumerate(d) {
            let name = format!("x = s{lam}");
            match check_deltam(&SymFunc::schur(lam.clone()), cfg.max_degree) {
                Ok(r) if r.pass => report.push(CheckItem::pass(name)),
                Ok(r) => report.push(CheckItem::fail(name, r.witness.unwrap_or_default())),
                Err(e) => report.push(error_item(&name, e)),
            }
        }
    }
    report
}

pub fn suite_psh_axioms(cfg: &VerifyConfig) -> CheckReport {
    let degree = cfg.max_degree.min(6);
    if cfg.inject_fault {
        // A multiplier that silently drops one Littlewood-Richardson term.
        let faulty = |a: &Partition, b: &Partition| {
            let mut terms = schur_product(a, b);
            if a.size() == 1 && b.size() == 1 {
                let two = Partition::new(vec![2]);
                terms = terms.map_terms(|lam, c| {
                    if *lam == two {
                        crate::lincomb::LinComb::zero()
                    } else {
                        crate::lincomb::LinComb::single(lam.clone(), c.clone())
                    }
                });
            }
            terms
        };
        return check_psh_axioms(degree, &faulty);
    }
    check_psh_axioms(degree, &schur_product)
}

pub fn suite_splitting(cfg: &VerifyConfig) -> CheckReport {
    let mut report = CheckReport::new("categorified-splitting");
    match diagcat::verify_splitting(cfg.budget) {
        Ok(inner) => report.extend(inner),
        Err(e) => report.push(error_item("diagram splitting", e)),
    }
    match check_primitive_splitting(&SymFunc::e(1), cfg.max_degree) {
        Ok(r) if r.pass => report.push(CheckItem::pass_with(
            "operator splitting for a single strand",
            "c = 1",
        )),
        Ok(r) => report.push(CheckItem::fail(
            "operator splitting for a single strand",
            r.witness.unwrap_or_default(),
        )),
        Err(e) => report.push(error_item("operator splitting for a single strand", e)),
    }
    report
}

fn check_equal(
    report: &mut CheckReport,
    name: &str,
    a: &DiagramTerm,
    b: &DiagramTerm,
    budget: usize,
) {
    match equal(a, b, budget) {
        Ok(true) => report.push(CheckItem::pass(name)),
        Ok(false) => report.push(CheckItem::fail(name, "sides normalize differently")),
        Err(e) => report.push(error_item(name, e)),
    }
}

fn plus_word(n: usize) -> SignedWord {
    "+".repeat(n).parse().unwrap()
}

fn cross_word(n: usize, positions: &[usize]) -> DiagramTerm {
    let gens = positions.iter().map(|&i| (Gen::Cross, i)).collect();
    DiagramTerm::from_diagram(Diagram::new(plus_word(n), gens).unwrap())
}

pub fn suite_diagram_relations(cfg: &VerifyConfig) -> CheckReport {
    let mut report = CheckReport::new("diagram-relations");
    let b = cfg.budget;

    let id = |w: &str| DiagramTerm::identity(w.parse().unwrap());
    let parsed = |s: &str| parse_diagram(s).unwrap();

    check_equal(
        &mut report,
        "double crossing on +-",
        &compose(&diagcat::sideways_left(), &diagcat::sideways_right()).unwrap(),
        &id("+-"),
        b,
    );
    let dc_mp = compose(&diagcat::sideways_right(), &diagcat::sideways_left()).unwrap();
    let expected = id("-+")
        .sub(&parsed("on \"-+\": capLR@0 ; cupLR@0"))
        .unwrap();
    check_equal(&mut report, "double crossing on -+", &dc_mp, &expected, b);
    check_equal(
        &mut report,
        "double crossing on ++",
        &cross_word(2, &[0, 0]),
        &id("++"),
        b,
    );
    check_equal(
        &mut report,
        "left curl vanishes",
        &parsed("on \"+\": cupLR@0 ; x@1 ; capLR@0"),
        &DiagramTerm::zero(plus_word(1), plus_word(1)),
        b,
    );
    check_equal(
        &mut report,
        "clockwise circle is one",
        &parsed("on \"\": cupLR@0 ; capLR@0"),
        &id(""),
        b,
    );
    for (name, src, slices) in [
        ("zigzag 1", "+", "on \"+\": cupLR@1 ; capRL@0"),
        ("zigzag 2", "+", "on \"+\": cupRL@0 ; capLR@1"),
        ("zigzag 3", "-", "on \"-\": cupRL@1 ; capLR@0"),
        ("zigzag 4", "-", "on \"-\": cupLR@0 ; capRL@1"),
    ] {
        check_equal(&mut report, name, &parsed(slices), &id(src), b);
    }

    // Braid relations, exhaustively over the valid generator indices.
    for n in 2..=5 {
        for i in 0..n - 1 {
            check_equal(
                &mut report,
                &format!("involution x{i} on {n} strands"),
                &cross_word(n, &[i, i]),
                &DiagramTerm::identity(plus_word(n)),
                b,
            );
            for j in i + 2..n - 1 {
                check_equal(
                    &mut report,
                    &format!("distant commutation x{i} x{j} on {n} strands"),
                    &cross_word(n, &[i, j]),
                    &cross_word(n, &[j, i]),
                    b,
                );
            }
            if i + 1 < n - 1 {
                check_equal(
                    &mut report,
                    &format!("braid move x{i} x{} on {n} strands", i + 1),
                    &cross_word(n, &[i, i + 1, i]),
                    &cross_word(n, &[i + 1, i, i + 1]),
                    b,
                );
            }
        }
    }

    // The permutation model: crossing words agree iff their permutations
    // agree, exhaustively for short words on up to 5 strands.
    report.push(crossing_permutation_model(cfg));
    report
}

/// Normal forms of crossing words of length up to 3 are in bijection with
/// the permutations they induce, for 2..=5 strands.
fn crossing_permutation_model(cfg: &VerifyConfig) -> CheckItem {
    let name = "crossing words modulo braid relations = permutations";
    for n in 2..=5usize {
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut layer: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..3 {
            let mut next = Vec::new();
            for w in &layer {
                for i in 0..n - 1 {
                    let mut v = w.clone();
                    v.push(i);
                    next.push(v);
                }
            }
            words.extend(next.iter().cloned());
            layer = next;
        }
        let mut by_perm: std::collections::HashMap<Vec<usize>, DiagramTerm> =
            std::collections::HashMap::new();
        for w in &words {
            let mut perm: Vec<usize> = (0..n).collect();
            for &i in w {
                perm.swap(i, i + 1);
            }
            let nf = match normalize(&cross_word(n, w), cfg.budget) {
                Ok(nf) => nf,
                Err(e) => return error_item(name, e),
            };
            if let Some(prev) = by_perm.get(&perm) {
                if *prev != nf {
                    return CheckItem::fail(
                        name,
                        format!("word {w:?} on {n} strands disagrees with its permutation class"),
                    );
                }
            } else {
                by_perm.insert(perm, nf);
            }
        }
        let forms: Vec<&DiagramTerm> = by_perm.values().collect();
        for a in 0..forms.len() {
            for c in a + 1..forms.len() {
                if forms[a] == forms[c] {
                    return CheckItem::fail(
                        name,
                        format!("distinct permutations share a normal form on {n} strands"),
                    );
                }
            }
        }
    }
    CheckItem::pass(name)
}

pub fn suite_epsilon(cfg: &VerifyConfig) -> CheckReport {
    let mut report = CheckReport::new("counit-characterization");
    match diagcat::check_epsilonl_characterization(cfg.budget) {
        Ok(inner) => report.extend(inner),
        Err(e) => report.push(error_item("counit characterization", e)),
    }
    report
}

fn all_maps(max: usize) -> Vec<FinMap> {
    let mut out = Vec::new();
    for n in 0..=max {
        for m in 0..=max {
            out.extend(FinMap::enumerate(FinSet::new(n), FinSet::new(m)));
        }
    }
    out
}

pub fn suite_beck_chevalley(cfg: &VerifyConfig) -> CheckReport {
    let _ = cfg;
    let mut report = CheckReport::new("beck-chevalley");

    // Zigzag identities for both adjunctions, all maps on sets of size <= 4.
    let mut zig_ok = 0usize;
    let mut zig_item = None;
    'maps: for phi in all_maps(4) {
        let pull = FunctorWord::pull(&phi);
        let push = FunctorWord::push(&phi);
        let triangles: [(&str, Result<BlockNat, _>, BlockNat); 4] = [
            (
                "pull triangle of the pull-push adjunction",
                BlockNat::whisker_left(&pull, &eta_r(&phi)).and_then(|a| {
                    BlockNat::vcomp(&BlockNat::whisker_right(&eps_r(&phi), &pull)?, &a)
                }),
                BlockNat::identity(pull.clone()),
            ),
            (
                "push triangle of the pull-push adjunction",
                BlockNat::whisker_right(&eta_r(&phi), &push).and_then(|a| {
                    BlockNat::vcomp(&BlockNat::whisker_left(&push, &eps_r(&phi))?, &a)
                }),
                BlockNat::identity(push.clone()),
            ),
            (
                "push triangle of the push-pull adjunction",
                BlockNat::whisker_left(&push, &eta_l(&phi)).and_then(|a| {
                    BlockNat::vcomp(&BlockNat::whisker_right(&eps_l(&phi), &push)?, &a)
                }),
                BlockNat::identity(push.clone()),
            ),
            (
                "pull triangle of the push-pull adjunction",
                BlockNat::whisker_right(&eta_l(&phi), &pull).and_then(|a| {
                    BlockNat::vcomp(&BlockNat::whisker_left(&pull, &eps_l(&phi))?, &a)
                }),
                BlockNat::identity(pull.clone()),
            ),
        ];
        for (tname, got, want) in triangles {
            match got {
                Ok(g) if g == want => zig_ok += 1,
                Ok(_) => {
                    zig_item = Some(CheckItem::fail(
                        "adjunction zigzags on sets of size <= 4",
                        format!("{tname} fails for {phi:?}"),
                    ));
                    break 'maps;
                }
                Err(e) => {
                    zig_item = Some(error_item("adjunction zigzags on sets of size <= 4", e));
                    break 'maps;
                }
            }
        }
    }
    report.push(zig_item.unwrap_or_else(|| {
        CheckItem::pass_with(
            "adjunction zigzags on sets of size <= 4",
            format!("{zig_ok} triangles"),
        )
    }));

    // Every Cartesian square on sets of size <= 3 satisfies Beck-Chevalley.
    let mut count = 0usize;
    let mut cart_item = None;
    'outer: for h in all_maps(3) {
        for i in all_maps(3) {
            if h.target() != i.target() {
                continue;
            }
            let verdict = SquareOfSets::cartesian(&h, &i).and_then(|sq| bc_check(&sq));
            match verdict {
                Ok((true, _)) => count += 1,
                Ok((false, witness)) => {
                    cart_item = Some(CheckItem::fail(
                        "all Cartesian squares on sets of size <= 3",
                        format!("{h:?} / {i:?}: {}", witness.unwrap_or_default()),
                    ));
                    break 'outer;
                }
                Err(e) => {
                    cart_item = Some(error_item("all Cartesian squares on sets of size <= 3", e));
                    break 'outer;
                }
            }
        }
    }
    report.push(cart_item.unwrap_or_else(|| {
        CheckItem::pass_with(
            "all Cartesian squares on sets of size <= 3",
            format!("{count} squares"),
        )
    }));

    // The empty-corner non-Cartesian square must fail the condition.
    let pt = FinSet::new(1);
    let one = FinMap::identity(pt);
    let empty = FinMap::new(FinSet::new(0), pt, vec![]).unwrap();
    let verdict = SquareOfSets::new(empty.clone(), empty, one.clone(), one)
        .and_then(|sq| bc_check(&sq));
    report.push(match verdict {
        Ok((false, Some(w))) => {
            CheckItem::pass_with("empty-corner square is rejected", w)
        }
        Ok((false, None)) => CheckItem::pass("empty-corner square is rejected"),
        Ok((true, _)) => CheckItem::fail(
            "empty-corner square is rejected",
            "non-Cartesian square passed",
        ),
        Err(e) => error_item("empty-corner square is rejected", e),
    });
    report
}

pub fn suite_cubes(cfg: &VerifyConfig) -> CheckReport {
    let mut report = CheckReport::new("cube-coherence");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xc0be);
    for k in 0..10 {
        let cube = random_cartesian_cube(&mut rng);
        let outcome = (|| -> Result<CheckItem, crate::error::SheafError> {
            let faces = CubeFaces::canonical(&cube)?;
            if !cube_hexagon_check(&cube, &faces)? {
                return Ok(CheckItem::fail(format!("cube {k}"), "hexagon fails"));
            }
            for dir in [CubeDirection::Z, CubeDirection::X] {
                if !cube_mate_check(&cube, &faces, dir)? {
                    return Ok(CheckItem::fail(
                        format!("cube {k}"),
                        format!("mate cube hexagon fails in direction {dir:?}"),
                    ));
                }
            }
            let front = cube_front_completion(&cube, &faces)?;
            if front != faces.xy[0] {
                return Ok(CheckItem::fail(
                    format!("cube {k}"),
                    "front completion differs from the canonical face",
                ));
            }
            Ok(CheckItem::pass_with(
                format!("cube {k}"),
                "hexagon, both mates, front completion",
            ))
        })();
        report.push(outcome.unwrap_or_else(|e| error_item(&format!("cube {k}"), e)));
    }
    report
}

pub fn suite_decategorification(cfg: &VerifyConfig) -> CheckReport {
    let mut report = CheckReport::new("decategorification");
    let mp = diagcat::decategorify(&"-+".parse::<SignedWord>().unwrap());
    let pm = diagcat::decategorify(&"+-".parse::<SignedWord>().unwrap());
    let diff = FockOperator::sum(vec![mp, FockOperator::scalar(-Int::from(1), pm)]);
    let name = "skew-then-multiply minus multiply-then-skew is the identity";
    match operator_equal(&diff, &FockOperator::Identity, cfg.max_degree) {
        Ok(r) if r.pass => report.push(CheckItem::pass(name)),
        Ok(r) => report.push(CheckItem::fail(name, r.witness.unwrap_or_default())),
        Err(e) => report.push(error_item(name, e)),
    }
    report
}
