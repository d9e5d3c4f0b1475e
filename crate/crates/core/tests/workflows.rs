//! End-to-end flows through the text formats and the claim verifier.

use std::fs;
use std::path::PathBuf;
use std::sync::Arc;

use epispace::assignments::{extract, synthesize};
use epispace::fixtures::{build_example1, build_example2, example2_assignment, space_four_a, space_three_a};
use epispace::format::{parse_assignment, parse_operator, parse_space, write_assignment, write_operator, write_space};
use epispace::modelcheck::{verify_claims, Claim, ClaimVerdict, VerifyConfig};
use epispace::{Error, EpistemicSpace};

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("epispace-workflows-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn reload_space(space: &EpistemicSpace, file: &str) -> Arc<EpistemicSpace> {
    let path = scratch(file);
    fs::write(&path, write_space(space)).unwrap();
    let text = fs::read_to_string(&path).unwrap();
    Arc::new(parse_space(&text, space.name()).unwrap())
}

#[test]
fn example_fixtures_survive_files() {
    for (sp, op, stem) in [
        { let (s, o) = build_example1(); (s, o, "ex1") },
        { let (s, o) = build_example2(); (s, o, "ex2") },
    ] {
        let back = reload_space(&sp, &format!("{stem}.space"));
        assert_eq!(back.belief_sets(), sp.belief_sets());
        let path = scratch(&format!("{stem}.op"));
        fs::write(&path, write_operator(&op)).unwrap();
        let reread = parse_operator(&fs::read_to_string(&path).unwrap(), &back).unwrap();
        assert_eq!(reread.table(), op.table());
    }
}

#[test]
fn assignment_file_drives_synthesis() {
    let (sp, op) = build_example2();
    let path = scratch("ex2.assign");
    fs::write(&path, write_assignment(&sp, &example2_assignment(&sp))).unwrap();
    let a = parse_assignment(&fs::read_to_string(&path).unwrap(), &sp).unwrap();
    let synthesized = synthesize(&sp, &a).unwrap();
    assert!(synthesized.equivalent(&op));
    let extracted = extract(&synthesized).unwrap();
    assert_eq!(write_assignment(&sp, &extracted), write_assignment(&sp, &a));
}

#[test]
fn format_errors_point_at_the_token() {
    let (sp, op) = build_example1();
    let text = write_operator(&op);
    let mut lines: Vec<String> = text.lines().map(str::to_string).collect();
    lines[3] = lines[3].replace("-> Psi", "-> PsiNowhere");
    match parse_operator(&lines.join("\n"), &sp) {
        Err(Error::Format { line, token, .. }) => {
            assert_eq!(line, 4);
            assert!(token.starts_with("PsiNowhere"), "{token}");
        }
        other => panic!("expected a format error, got {other:?}"),
    }
}

fn sequential() -> VerifyConfig {
    VerifyConfig { parallel: false, ..VerifyConfig::default() }
}

#[test]
fn verify_three_state_space() {
    let r = verify_claims(&space_three_a(), &sequential()).unwrap();
    assert!(r.exhaustive);
    assert!(!r.refuted(), "{r:?}");
    assert_eq!(r.operators_checked, 531_441);
    assert_eq!((r.agm, r.cl, r.ecl, r.agm_and_cl), (0, 4, 4, 0));
    assert_eq!(r.claim(Claim::Prop1).verdict, ClaimVerdict::NotApplicable);
}

#[test]
fn verify_four_state_space_by_sampling() {
    let config = VerifyConfig { max_operators: 1000, samples: 20_000, ..sequential() };
    let r = verify_claims(&space_four_a(), &config).unwrap();
    assert!(!r.exhaustive);
    assert!(!r.refuted(), "{r:?}");
    assert_eq!(r.operators_checked, 20_000);
    assert!(r.claims.iter().any(|c| c.verdict == ClaimVerdict::Sampled));
    // Same seed, same report.
    assert_eq!(verify_claims(&space_four_a(), &config).unwrap(), r);
}

#[test]
fn verify_refuses_without_fallback() {
    let config = VerifyConfig { max_operators: 1000, samples: 0, ..sequential() };
    assert!(matches!(
        verify_claims(&space_four_a(), &config),
        Err(Error::ScaleExceeded { .. })
    ));
}
