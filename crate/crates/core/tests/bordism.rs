//! Rewrite traces replayed step by step with boundary checks, the
//! immersed-circle family, randomized polygon invariance against the
//! floating point oracle, and the framing class group laws.

mod common;

use common::{point, random_polygon, replay_with_boundaries, rng, turning_oracle};
use rand::Rng;
use tckit::bordism::circle::{circle_invariant, turning_number, NormalSide, PlanePoint};
use tckit::bordism::framing::FramingClass;
use tckit::bordism::rewrite::{RewriteError, TraceStep, DEFAULT_REWRITE_BUDGET};
use tckit::bordism::words::{check_goal, parse_expr, GoalOutcome, RADFORD_EXPR, RADFORD_INVERSE_EXPR};
use tckit::bordism::{
    point_signature, radford_roundtrip, radford_roundtrip_mirror, verify_ambidexterity,
};

#[test]
fn belt_trick_roundtrips_replay_with_preserved_boundaries() {
    let ps = point_signature();

    let trace = radford_roundtrip(DEFAULT_REWRITE_BUDGET).unwrap();
    assert!(trace.len() <= DEFAULT_REWRITE_BUDGET);
    let (chain, mut layers) = ps.radford_layers();
    let (_, inverse) = ps.radford_inverse_layers();
    layers.extend(inverse);
    replay_with_boundaries(&ps.sig, &chain, &layers, &trace, &[]);

    let mirror = radford_roundtrip_mirror(DEFAULT_REWRITE_BUDGET).unwrap();
    let (chain, mut layers) = ps.radford_inverse_layers();
    let (_, forward) = ps.radford_layers();
    layers.extend(forward);
    replay_with_boundaries(&ps.sig, &chain, &layers, &mirror, &[]);
}

#[test]
fn ambidexterity_legs_replay_with_preserved_boundaries() {
    let report = verify_ambidexterity(DEFAULT_REWRITE_BUDGET).unwrap();
    assert!(report.on_left_leg.len() <= DEFAULT_REWRITE_BUDGET);
    assert!(report.on_right_leg.len() <= DEFAULT_REWRITE_BUDGET);
    replay_with_boundaries(
        &report.sig,
        &report.left_chain,
        &report.left_layers,
        &report.on_left_leg,
        &[],
    );
    replay_with_boundaries(
        &report.sig,
        &report.right_chain,
        &report.right_layers,
        &report.on_right_leg,
        &[],
    );
}

#[test]
fn a_starved_budget_reports_exhaustion() {
    match radford_roundtrip(1) {
        Err(RewriteError::BudgetExhausted { budget: 1 }) => {}
        other => panic!("expected exhaustion, got {other:?}"),
    }
}

#[test]
fn corrupted_traces_are_rejected_on_replay() {
    let ps = point_signature();
    let (chain, mut layers) = ps.radford_layers();
    let (_, inverse) = ps.radford_inverse_layers();
    layers.extend(inverse);
    let trace = radford_roundtrip(DEFAULT_REWRITE_BUDGET).unwrap();
    let mut bad = trace.clone();
    bad.truncate(trace.len() - 1);
    // dropping the last step leaves a nonempty cell, not the identity
    let state = ps.sig.apply_trace(&chain, &layers, &bad).unwrap();
    assert!(!state.is_empty());
    // garbling a step index breaks validation outright
    let mut garbled = trace.clone();
    if let Some(TraceStep::Interchange { index, .. } | TraceStep::DeletePair { index, .. }
        | TraceStep::InsertPair { index, .. }) = garbled.first_mut()
    {
        *index += 7;
    }
    assert!(ps.sig.apply_trace(&chain, &layers, &garbled).is_err());
}

#[test]
fn the_word_level_belt_trick_goal_is_proved() {
    let ps = point_signature();
    let forward = parse_expr(RADFORD_EXPR).unwrap();
    let backward = parse_expr(RADFORD_INVERSE_EXPR).unwrap();
    let roundtrip =
        parse_expr(&format!("comp({RADFORD_EXPR}, {RADFORD_INVERSE_EXPR})")).unwrap();
    let id_left = parse_expr("id(evL)").unwrap();
    match check_goal(&ps, &roundtrip, &id_left, DEFAULT_REWRITE_BUDGET).unwrap() {
        GoalOutcome::Rewritten(trace) => assert!(!trace.is_empty()),
        other => panic!("expected a rewrite proof, got {other:?}"),
    }
    // the two halves individually are not equal to the identity
    if let Ok(GoalOutcome::Rewritten(_)) = check_goal(&ps, &forward, &backward, DEFAULT_REWRITE_BUDGET) {
        panic!("the two belt cells must differ");
    }
}

/// A convex loop traversed `k` times, counterclockwise for positive `k`.
fn repeated_loop(k: i64) -> Vec<PlanePoint> {
    let ccw = [(10, 0), (0, 10), (-10, 0), (0, -10)];
    let cw = [(10, 0), (0, -10), (-10, 0), (0, 10)];
    let base: &[(i64, i64)] = if k >= 0 { &ccw } else { &cw };
    let mut out = Vec::new();
    for _ in 0..k.unsigned_abs() {
        for &(x, y) in base {
            out.push(point(x, y));
        }
    }
    out
}

fn figure_eight() -> Vec<PlanePoint> {
    [(0, 0), (4, 4), (8, 0), (4, -4), (0, 0), (-4, 4), (-8, 0), (-4, -4)]
        .into_iter()
        .map(|(x, y)| point(x, y))
        .collect()
}

#[test]
fn the_seven_member_family_hits_every_class_once() {
    let mut values = Vec::new();
    for k in -3..=3i64 {
        let poly = if k == 0 { figure_eight() } else { repeated_loop(k) };
        let t = turning_number(&poly).unwrap();
        assert_eq!(t, turning_oracle(&poly), "float oracle disagrees at {k}");
        assert_eq!(circle_invariant(&poly, NormalSide::Left).unwrap(), t);
        assert_eq!(circle_invariant(&poly, NormalSide::Right).unwrap(), -t);
        values.push(t);
    }
    values.sort();
    assert_eq!(values, vec![-3, -2, -1, 0, 1, 2, 3], "the family is not a bijection");
}

#[test]
fn subdivision_and_rotation_preserve_the_invariant() {
    let mut r = rng(67);
    for round in 0..50 {
        let sides = r.random_range(4..=12);
        let poly = random_polygon(&mut r, sides);
        let t = turning_number(&poly).unwrap();
        assert_eq!(t, turning_oracle(&poly), "round {round}: float oracle disagrees");

        // split a random edge at its midpoint
        let at = r.random_range(0..poly.len());
        let mut divided = poly.clone();
        let (x0, y0) = &poly[at];
        let (x1, y1) = &poly[(at + 1) % poly.len()];
        let half = common::int(2).recip();
        divided.insert(at + 1, (&(x0 + x1) * &half, &(y0 + y1) * &half));
        assert_eq!(turning_number(&divided).unwrap(), t, "round {round}: subdivision moved it");

        // rotate the starting vertex
        let shift = r.random_range(0..poly.len());
        let mut rotated = poly.clone();
        rotated.rotate_left(shift);
        assert_eq!(turning_number(&rotated).unwrap(), t, "round {round}: rotation moved it");

        assert_eq!(circle_invariant(&poly, NormalSide::Right).unwrap(), -t);
    }
}

#[test]
fn interval_framings_compose_like_the_fundamental_group() {
    // ambient two: the integers, loop is minus one
    let the_loop = FramingClass::loop_class(2).unwrap();
    assert_eq!(the_loop.value(), -1);
    let mut r = rng(71);
    for _ in 0..50 {
        let a = FramingClass::new(2, r.random_range(-40..=40)).unwrap();
        let b = FramingClass::new(2, r.random_range(-40..=40)).unwrap();
        assert_eq!(a.compose(&b).unwrap().value(), a.value() + b.value());
        assert!(a.compose(&a.inverse()).unwrap().is_identity());
    }

    // stabilized: two torsion, loop lands on the nontrivial class
    for ambient in [3usize, 4, 7] {
        let stabilized = the_loop.stabilize(ambient).unwrap();
        assert!(!stabilized.is_identity(), "loop dies in ambient {ambient}");
        let squared = stabilized.compose(&stabilized).unwrap();
        assert!(squared.is_identity(), "loop squared survives in ambient {ambient}");
        let direct = FramingClass::loop_class(ambient).unwrap();
        assert_eq!(stabilized.value(), direct.value());
    }

    // stabilization is a homomorphism on a sample of integers
    for v in -5..=5i64 {
        let up = FramingClass::new(2, v).unwrap().stabilize(3).unwrap();
        assert_eq!(up.value(), v.rem_euclid(2), "stabilizing {v}");
    }

    // downward stabilization and mismatched composition are errors
    assert!(FramingClass::loop_class(3).unwrap().stabilize(2).is_err());
    assert!(FramingClass::loop_class(2)
        .unwrap()
        .compose(&FramingClass::loop_class(3).unwrap())
        .is_err());
}
