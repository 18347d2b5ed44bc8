//! The acceptance gate: one pass/fail line per top-level criterion, each
//! backed by the corresponding suite of the aggregated verification run,
//! plus a fault-injection negative per suite showing that the checks
//! really can fail with a witness.

use heis_core::diagcat::{self, parse_diagram, DiagramTerm, SignedWord};
use heis_core::finset2cat::{
    bc_check, cube_hexagon_check, CubeFaces, CubeOfSets, FinMap, FinSet, SquareOfSets,
};
use heis_core::heisenberg::{check_primitive_splitting, operator_equal, FockOperator};
use heis_core::symfunc::{comultiply, multiply, skew};
use heis_core::verify::{verify_all, VerifyConfig};
use heis_core::{Basis, Int, Partition, SymFunc};

/// Suite order in the aggregated report, paired with the criterion it
/// discharges.
const CRITERIA: [&str; 9] = [
    "Heisenberg operator relations up to degree 10",
    "skew-multiplication relation for all |x| <= 4",
    "positive self-adjoint Hopf axioms up to degree 6",
    "splitting at the diagram and the operator level",
    "local diagram relations and braid identities",
    "counit characterization and straightening",
    "Beck-Chevalley and adjunction zigzags",
    "cube hexagons, mates and front completion",
    "decategorified crossing difference is the identity",
];

#[test]
fn acceptance_gate() {
    let report = verify_all(&VerifyConfig::default());
    assert_eq!(report.suites.len(), CRITERIA.len());
    let mut all = true;
    for (i, (suite, title)) in report.suites.iter().zip(CRITERIA).enumerate() {
        let ok = suite.passed();
        all &= ok;
        println!(
            "criterion {} ({title}): {}",
            i + 1,
            if ok { "PASS" } else { "FAIL" }
        );
        if let Some(item) = suite.first_failure() {
            println!("  witness: {}: {}", item.name, item.detail);
        }
    }
    assert!(all, "acceptance gate failed:\n{report}");
}

fn s(parts: &[usize]) -> SymFunc {
    SymFunc::schur(Partition::new(parts.to_vec()))
}

#[test]
fn negative_operator_relations_detect_noncommuting_pair() {
    // m(e1) and D(h1) do not commute; the checker must say so, with the
    // first basis vector where they disagree.
    let md = FockOperator::compose(FockOperator::mult(s(&[1])), FockOperator::skewop(s(&[1])));
    let dm = FockOperator::compose(FockOperator::skewop(s(&[1])), FockOperator::mult(s(&[1])));
    let r = operator_equal(&md, &dm, 4).unwrap();
    assert!(!r.pass);
    assert!(r.witness.is_some());
}

#[test]
fn negative_deltam_detects_dropped_sweedler_term() {
    // Rebuild the right-hand side of the skew-of-a-product relation with
    // one comultiplication term dropped; the sides must then differ.
    let x = s(&[1]);
    let y = s(&[1]);
    let z = s(&[1]);
    let lhs = skew(&x, &multiply(&y, &z, 4).unwrap());
    let mut rhs = SymFunc::zero(Basis::Schur);
    let mut dropped = false;
    for ((x1, x2), c) in comultiply(&x).terms().iter() {
        if !dropped {
            dropped = true;
            continue;
        }
        let sy = skew(&SymFunc::schur(x1.clone()), &y);
        let sz = skew(&SymFunc::schur(x2.clone()), &z);
        rhs = rhs.add(&multiply(&sy, &sz, 4).unwrap().scale(c));
    }
    assert!(dropped);
    assert_ne!(lhs, rhs);
}

#[test]
fn negative_psh_fault_injection_names_the_suite() {
    let cfg = VerifyConfig {
        max_degree: 3,
        inject_fault: true,
        ..VerifyConfig::default()
    };
    let report = verify_all(&cfg);
    assert!(!report.passed());
    let failing: Vec<&str> = report
        .suites
        .iter()
        .filter(|s| !s.passed())
        .map(|s| s.name.as_str())
        .collect();
    assert_eq!(failing, ["psh-axioms"]);
    let witness = report.suites.iter().flat_map(|s| s.items()).find(|i| !i.passed);
    assert!(!witness.unwrap().detail.is_empty());
}

#[test]
fn negative_splitting_rejects_non_primitive_element() {
    // s[2] is not primitive; the splitting check must refuse it with the
    // offending comultiplication as witness.
    let err = check_primitive_splitting(&s(&[2]), 6).unwrap_err();
    assert!(err.to_string().contains("s[2]"));
}

#[test]
fn negative_diagram_relations_distinguish_wrong_rewrites() {
    // A double crossing is the identity, so equating it with zero fails.
    let cross2 = parse_diagram("on \"++\": x@0 ; x@0").unwrap();
    let zero = DiagramTerm::zero(
        cross2.source().clone(),
        cross2.target().clone(),
    );
    assert!(!diagcat::equal(&cross2, &zero, 10_000).unwrap());
}

#[test]
fn negative_counit_composite_is_not_zero() {
    // The clockwise circle evaluates to the empty diagram, not to zero;
    // corrupting the expected value must be detected.
    let circle = parse_diagram("on \"\": cupLR@0 ; capLR@0").unwrap();
    let empty: SignedWord = "".parse().unwrap();
    let zero = DiagramTerm::zero(empty.clone(), empty.clone());
    assert!(!diagcat::equal(&circle, &zero, 10_000).unwrap());
    assert!(diagcat::equal(&circle, &DiagramTerm::identity(empty), 10_000).unwrap());
}

fn cmap(source: usize, target: usize, table: &[usize]) -> FinMap {
    FinMap::new(FinSet::new(source), FinSet::new(target), table.to_vec()).unwrap()
}

fn hopf_square() -> SquareOfSets {
    SquareOfSets::new(
        cmap(4, 2, &[0, 0, 1, 1]),
        cmap(4, 2, &[0, 1, 0, 1]),
        cmap(2, 1, &[0, 0]),
        cmap(2, 1, &[0, 0]),
    )
    .unwrap()
}

#[test]
fn negative_bc_reports_singular_block_on_empty_corner() {
    let square = SquareOfSets::new(
        cmap(0, 2, &[]),
        cmap(0, 1, &[]),
        cmap(2, 1, &[0, 0]),
        cmap(1, 1, &[0]),
    )
    .unwrap();
    let (ok, witness) = bc_check(&square).unwrap();
    assert!(!ok);
    assert!(witness.unwrap().contains("singular block"));
}

#[test]
fn negative_cube_hexagon_detects_negated_face() {
    let cube = CubeOfSets::stacked(&hopf_square());
    let mut faces = CubeFaces::canonical(&cube).unwrap();
    faces.xy[0] = faces.xy[0].negate();
    assert!(!cube_hexagon_check(&cube, &faces).unwrap());
}

#[test]
fn negative_decategorified_word_alone_is_not_the_identity() {
    let mp: SignedWord = "-+".parse().unwrap();
    let r = operator_equal(&diagcat::decategorify(&mp), &FockOperator::Identity, 4).unwrap();
    assert!(!r.pass);
    assert!(r.witness.is_some());
    // The difference of the two orderings is, tying the models together.
    let pm: SignedWord = "+-".parse().unwrap();
    let diff = FockOperator::sum(vec![
        diagcat::decategorify(&mp),
        FockOperator::scalar(-Int::from(1), diagcat::decategorify(&pm)),
    ]);
    assert!(operator_equal(&diff, &FockOperator::Identity, 6).unwrap().pass);
}
