//! Shared machinery for the integration suites: a seeded generator for
//! scalars, gauges, duality seeds and polygons, plus the two independent
//! oracles (the closed-form norm from raw table entries and the floating
//! point turning count) that the exact engines are measured against.

#![allow(dead_code)]

use std::f64::consts::PI;

use num::rational::BigRational;
use num::{BigInt, ToPrimitive};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use tckit::bordism::circle::PlanePoint;
use tckit::bordism::rewrite::{Chain, Layer, Signature, TraceStep};
use tckit::{FSymbolTable, FieldSpec, Gauge, Label, Scalar};

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

/// Replay a trace one step at a time, checking that the layer stack stays
/// well typed and keeps the same end boundary after every step.
pub fn replay_with_boundaries(
    sig: &Signature,
    chain: &Chain,
    start: &[Layer],
    trace: &[TraceStep],
    expect: &[Layer],
) {
    let boundary = sig.apply_layers(chain, start).expect("start cell is well typed");
    for cut in 0..=trace.len() {
        let state = sig
            .apply_trace(chain, start, &trace[..cut])
            .unwrap_or_else(|e| panic!("prefix of {cut} steps does not replay: {e}"));
        let here = sig.apply_layers(chain, &state).expect("intermediate state is well typed");
        assert_eq!(here, boundary, "boundary moved after {cut} steps");
    }
    let final_state = sig.apply_trace(chain, start, trace).unwrap();
    assert_eq!(final_state, expect, "trace does not land on the target cell");
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn small_rational(r: &mut StdRng) -> BigRational {
    BigRational::new(BigInt::from(r.random_range(-6i64..=6)), BigInt::from(r.random_range(1i64..=6)))
}

/// A uniformly scruffy nonzero element of the field: small rationals,
/// short cyclotomic combinations, or a nonzero residue.
pub fn nonzero_scalar(r: &mut StdRng, field: FieldSpec) -> Scalar {
    loop {
        let s = match field {
            FieldSpec::Rational => {
                Scalar::embed_rational(field, &small_rational(r)).expect("rational embeds")
            }
            FieldSpec::Cyclotomic(n) => {
                let mut acc = Scalar::zero(field);
                for _ in 0..3 {
                    let z = Scalar::zeta_pow(n, r.random_range(0..n as i64));
                    let c = Scalar::embed_rational(field, &small_rational(r))
                        .expect("rational embeds in a cyclotomic field");
                    acc = &acc + &(&c * &z);
                }
                acc
            }
            FieldSpec::Prime(p) => {
                Scalar::prime(p, r.random_range(0..p)).expect("residue is reduced")
            }
        };
        if !s.is_zero() {
            return s;
        }
    }
}

/// A random gauge: 1 on the unit-pinned triples, arbitrary nonzero
/// elsewhere.
pub fn random_gauge(r: &mut StdRng, table: &FSymbolTable) -> Gauge {
    let ring = table.ring();
    let u = ring.unit();
    let values = ring.admissible_triples().into_iter().map(|(a, b, c)| {
        let v = if a == u || b == u {
            Scalar::one(table.field())
        } else {
            nonzero_scalar(r, table.field())
        };
        ((a, b, c), v)
    });
    Gauge::new(table, values).expect("generated gauge is well formed")
}

/// One nonzero coevaluation seed per label.
pub fn random_seeds(r: &mut StdRng, table: &FSymbolTable) -> Vec<Scalar> {
    (0..table.ring().rank()).map(|_| nonzero_scalar(r, table.field())).collect()
}

/// Closed-form squared norm: the inverse of the product of the two
/// straight-snake table entries at the label and its dual.  Reads the raw
/// entries only, no tree evaluation, so it is an independent route.
pub fn closed_form_norm(table: &FSymbolTable, x: Label) -> Scalar {
    let ring = table.ring();
    let u = ring.unit();
    let dx = ring.dual(x);
    let ax = table.f_entry(x, dx, x, x, u, u);
    let adx = table.f_entry(dx, x, dx, dx, u, u);
    (ax * adx).invert().expect("snake entries of a valid table are nonzero")
}

fn to_f64(q: &BigRational) -> f64 {
    q.numer().to_f64().unwrap() / q.denom().to_f64().unwrap()
}

/// Floating point turning count: accumulate the exterior angles of the
/// direction sequence with atan2 and divide by a full turn.
pub fn turning_oracle(vertices: &[PlanePoint]) -> i64 {
    let n = vertices.len();
    let angle = |i: usize| {
        let (x0, y0) = &vertices[i];
        let (x1, y1) = &vertices[(i + 1) % n];
        (to_f64(y1) - to_f64(y0)).atan2(to_f64(x1) - to_f64(x0))
    };
    let mut total = 0.0f64;
    for i in 0..n {
        let mut d = angle((i + 1) % n) - angle(i);
        while d > PI {
            d -= 2.0 * PI;
        }
        while d < -PI {
            d += 2.0 * PI;
        }
        total += d;
    }
    let turns = total / (2.0 * PI);
    let rounded = turns.round();
    assert!((turns - rounded).abs() < 1e-6, "angle sum {turns} is not near an integer");
    rounded as i64
}

pub fn point(x: i64, y: i64) -> PlanePoint {
    (int(x), int(y))
}

/// A random closed polygon on integer coordinates whose turning number is
/// defined (no zero edges, no exact reversals).
pub fn random_polygon(r: &mut StdRng, sides: usize) -> Vec<PlanePoint> {
    loop {
        let pts: Vec<PlanePoint> =
            (0..sides).map(|_| point(r.random_range(-30..=30), r.random_range(-30..=30))).collect();
        if tckit::bordism::circle::turning_number(&pts).is_ok() {
            return pts;
        }
    }
}
