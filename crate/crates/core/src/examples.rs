//! Built-in coherence data: pointed group theories with a prescribed
//! three-cocycle, fibonacci, ising, and the representation theory of the
//! symmetric group on three letters.
//!
//! Every table here follows the house normalization: any entry whose
//! first three labels include the unit is exactly one. Pointed tables are
//! generated from a validated cocycle; the three exceptional theories are
//! written out block by block.

use crate::category_data::{FSymbolTable, Hexa, TableError};
use crate::fusion_ring::{ring_from_group, FusionRing, RingError};
use crate::scalars::{FieldSpec, Scalar, ScalarError};
use num::bigint::BigInt;
use num::rational::BigRational;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ExampleError {
    #[error("unknown builtin {0:?}")]
    UnknownBuiltin(String),
    #[error("builtin {0:?} has a fixed coefficient field")]
    FixedField(String),
    #[error("cyclic group order must be at least 1")]
    CyclicOrderZero,
    #[error("cocycle value at ({0},{1},{2}) must be a nonzero scalar of the table field")]
    BadCocycleValue(usize, usize, usize),
    #[error("cocycle is not normalized at ({0},{1},{2})")]
    NotNormalized(usize, usize, usize),
    #[error("cocycle condition fails at ({0},{1},{2},{3})")]
    NotACocycle(usize, usize, usize, usize),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Table(#[from] TableError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Names accepted by `builtin`, in a stable listing order.
pub const BUILTIN_NAMES: [&str; 8] = [
    "trivial",
    "vec_z2",
    "vec_z2_semion",
    "vec_z3",
    "vec_z6",
    "fibonacci",
    "ising",
    "rep_s3",
];

fn admissible_hexes(ring: &FusionRing) -> Vec<Hexa> {
    let r = ring.rank();
    let mut out = Vec::new();
    for a in 0..r {
        for b in 0..r {
            for c in 0..r {
                for d in 0..r {
                    for e in 0..r {
                        for f in 0..r {
                            if ring.n(a, b, e)
                                && ring.n(e, c, d)
                                && ring.n(b, c, f)
                                && ring.n(a, f, d)
                            {
                                out.push((a, b, c, d, e, f));
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn table_from(
    ring: FusionRing,
    field: FieldSpec,
    value: impl Fn(Hexa) -> Scalar,
) -> Result<FSymbolTable, ExampleError> {
    let entries: Vec<(Hexa, Scalar)> = admissible_hexes(&ring)
        .into_iter()
        .map(|h| (h, value(h)))
        .collect();
    Ok(FSymbolTable::new(ring, field, entries)?)
}

fn rational_in(field: FieldSpec, p: i64, q: i64) -> Scalar {
    Scalar::embed_rational(field, &BigRational::new(BigInt::from(p), BigInt::from(q)))
        .expect("small rational embeds into the field")
}

/// Multiplication table of the cyclic group of order `n`.
pub fn cyclic_table(n: usize) -> Vec<Vec<usize>> {
    (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect()
}

/// Coherence data of a pointed theory: one invertible label per group
/// element, fusion by the group law, and entries given by a normalized
/// three-cocycle. The group axioms, the normalization, and the cocycle
/// condition are all checked before the table is assembled.
pub fn pointed(
    group: &[Vec<usize>],
    field: FieldSpec,
    omega: impl Fn(usize, usize, usize) -> Scalar,
) -> Result<FSymbolTable, ExampleError> {
    let ring = ring_from_group(group)?;
    let n = ring.rank();
    let e = ring.unit();
    let mul = |a: usize, b: usize| group[a][b];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let v = omega(a, b, c);
                if v.field() != field || v.is_zero() {
                    return Err(ExampleError::BadCocycleValue(a, b, c));
                }
                if (a == e || b == e || c == e) && !v.is_one() {
                    return Err(ExampleError::NotNormalized(a, b, c));
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let lhs = &(&omega(b, c, d) * &omega(a, mul(b, c), d)) * &omega(a, b, c);
                    let rhs = &omega(mul(a, b), c, d) * &omega(a, b, mul(c, d));
                    if lhs != rhs {
                        return Err(ExampleError::NotACocycle(a, b, c, d));
                    }
                }
            }
        }
    }
    table_from(ring, field, |(a, b, c, _, _, _)| omega(a, b, c))
}

/// Pointed theory of the cyclic group of order `n` with trivial entries.
pub fn vec_cyclic(n: usize, field: FieldSpec) -> Result<FSymbolTable, ExampleError> {
    if n == 0 {
        return Err(ExampleError::CyclicOrderZero);
    }
    pointed(&cyclic_table(n), field, |_, _, _| Scalar::one(field))
}

/// The one-label theory over the rationals.
pub fn trivial() -> Result<FSymbolTable, ExampleError> {
    vec_cyclic(1, FieldSpec::Rational)
}

/// Two-element pointed theory with trivial entries, over the rationals.
pub fn vec_z2() -> Result<FSymbolTable, ExampleError> {
    vec_cyclic(2, FieldSpec::Rational)
}

fn vec_z2_semion_in(field: FieldSpec) -> Result<FSymbolTable, ExampleError> {
    pointed(&cyclic_table(2), field, |a, b, c| {
        if a == 1 && b == 1 && c == 1 {
            -&Scalar::one(field)
        } else {
            Scalar::one(field)
        }
    })
}

/// Two-element pointed theory with the nontrivial associator sign, over
/// the rationals.
pub fn vec_z2_semion() -> Result<FSymbolTable, ExampleError> {
    vec_z2_semion_in(FieldSpec::Rational)
}

/// Three-element cyclic pointed theory with trivial entries, over the
/// rationals.
pub fn vec_z3() -> Result<FSymbolTable, ExampleError> {
    vec_cyclic(3, FieldSpec::Rational)
}

/// Six-element cyclic pointed theory with trivial entries, over the
/// rationals.
pub fn vec_z6() -> Result<FSymbolTable, ExampleError> {
    vec_cyclic(6, FieldSpec::Rational)
}

/// Fibonacci data over the fifth cyclotomic field. Labels are 1 and tau
/// with tau tensor tau = 1 + tau; the only nontrivial block is the two by
/// two matrix at (tau,tau,tau,tau), written with the inverse golden ratio
/// zeta + zeta^4.
pub fn fibonacci() -> Result<FSymbolTable, ExampleError> {
    let field = FieldSpec::cyclotomic(5)?;
    let mut coeffs = vec![0u8; 8];
    let idx = |i: usize, j: usize, k: usize| (i * 2 + j) * 2 + k;
    for (i, j, k) in [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0), (1, 1, 1)] {
        coeffs[idx(i, j, k)] = 1;
    }
    let ring = FusionRing::new(vec!["1".into(), "tau".into()], 0, vec![0, 1], &coeffs)?;
    let phi_inv = &Scalar::zeta_pow(5, 1) + &Scalar::zeta_pow(5, 4);
    let one = Scalar::one(field);
    table_from(ring, field, move |(a, b, c, d, e, f)| {
        if (a, b, c, d) == (1, 1, 1, 1) {
            match (e, f) {
                (0, 0) | (0, 1) => phi_inv.clone(),
                (1, 0) => one.clone(),
                (1, 1) => -&phi_inv,
                _ => unreachable!("fibonacci block is two by two"),
            }
        } else {
            Scalar::one(field)
        }
    })
}

/// Ising data over the eighth cyclotomic field: labels 1, psi, sigma with
/// sigma tensor sigma = 1 + psi. The bicharacter sign sits at psi against
/// psi, and the sigma block carries (zeta + zeta^7)/2 times a sign matrix.
pub fn ising() -> Result<FSymbolTable, ExampleError> {
    let field = FieldSpec::cyclotomic(8)?;
    let n = 3;
    let mut coeffs = vec![0u8; n * n * n];
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    // group part 1, psi
    for (i, j, k) in [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)] {
        coeffs[idx(i, j, k)] = 1;
    }
    // sigma absorbs the group and splits into it
    for g in 0..2 {
        coeffs[idx(g, 2, 2)] = 1;
        coeffs[idx(2, g, 2)] = 1;
        coeffs[idx(2, 2, g)] = 1;
    }
    let ring = FusionRing::new(
        vec!["1".into(), "psi".into(), "sigma".into()],
        0,
        vec![0, 1, 2],
        &coeffs,
    )?;
    let half = rational_in(field, 1, 2);
    let s = &(&Scalar::zeta_pow(8, 1) + &Scalar::zeta_pow(8, 7)) * &half;
    let chi = |x: usize, y: usize| x == 1 && y == 1;
    table_from(ring, field, move |(a, b, c, d, e, f)| {
        let one = Scalar::one(field);
        let sign = |neg: bool| if neg { -&one } else { one.clone() };
        match (a, b, c) {
            (2, 2, 2) => {
                // rows and columns indexed by the group channels e, f
                if chi(e, f) {
                    -&s
                } else {
                    s.clone()
                }
            }
            (x, 2, y) if x < 2 && y < 2 => sign(chi(x, y)),
            (2, x, 2) if x < 2 => sign(chi(x, d)),
            _ => one.clone(),
        }
    })
}

/// Frozen signs of the fifteen one-by-one blocks of the rep_s3 table, in
/// the lexicographic order of their (a,b,c,d) positions.  Pinned by the
/// exhaustive rep_s3_sign_search test below.
const REP_S3_SIGNS: [i64; 15] = [1, 1, 1, 1, 1, -1, 1, 1, 1, -1, 1, 1, -1, 1, -1];

/// Block positions (a,b,c,d) of the fifteen sign entries, lexicographic.
const REP_S3_SIGN_BLOCKS: [(usize, usize, usize, usize); 15] = [
    (1, 1, 1, 1),
    (1, 1, 2, 2),
    (1, 2, 1, 2),
    (1, 2, 2, 0),
    (1, 2, 2, 1),
    (1, 2, 2, 2),
    (2, 1, 1, 2),
    (2, 1, 2, 0),
    (2, 1, 2, 1),
    (2, 1, 2, 2),
    (2, 2, 1, 0),
    (2, 2, 1, 1),
    (2, 2, 1, 2),
    (2, 2, 2, 0),
    (2, 2, 2, 1),
];

fn rep_s3_ring() -> Result<FusionRing, RingError> {
    let n = 3;
    let mut coeffs = vec![0u8; n * n * n];
    let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
    for (i, j, k) in [
        (0, 0, 0),
        (0, 1, 1),
        (1, 0, 1),
        (1, 1, 0),
        (0, 2, 2),
        (2, 0, 2),
        (1, 2, 2),
        (2, 1, 2),
        (2, 2, 0),
        (2, 2, 1),
        (2, 2, 2),
    ] {
        coeffs[idx(i, j, k)] = 1;
    }
    FusionRing::new(vec!["1".into(), "s".into(), "t".into()], 0, vec![0, 1, 2], &coeffs)
}

fn rep_s3_in_with_signs(
    field: FieldSpec,
    signs: &[i64; 15],
) -> Result<FSymbolTable, ExampleError> {
    // entries contain halves, so two must be invertible in the field
    Scalar::embed_rational(field, &BigRational::new(BigInt::from(1), BigInt::from(2)))?;
    let ring = rep_s3_ring()?;
    // the three by three block at (t,t,t,t), rows and columns over 1, s, t
    let m: [[(i64, i64); 3]; 3] = [
        [(1, 2), (1, 2), (1, 2)],
        [(1, 2), (1, 2), (-1, 2)],
        [(1, 1), (-1, 1), (0, 1)],
    ];
    let sign_of = |a: usize, b: usize, c: usize, d: usize| -> Option<i64> {
        REP_S3_SIGN_BLOCKS
            .iter()
            .position(|&p| p == (a, b, c, d))
            .map(|i| signs[i])
    };
    table_from(ring, field, move |(a, b, c, d, e, f)| {
        if (a, b, c, d) == (2, 2, 2, 2) {
            let (p, q) = m[e][f];
            rational_in(field, p, q)
        } else if let Some(s) = sign_of(a, b, c, d) {
            Scalar::from_int(field, s)
        } else {
            Scalar::one(field)
        }
    })
}

fn rep_s3_in(field: FieldSpec) -> Result<FSymbolTable, ExampleError> {
    rep_s3_in_with_signs(field, &REP_S3_SIGNS)
}

/// Representation theory of the symmetric group on three letters over the
/// rationals: labels 1, s, t with s the sign label and t the two
/// dimensional one, t tensor t = 1 + s + t.
pub fn rep_s3() -> Result<FSymbolTable, ExampleError> {
    rep_s3_in(FieldSpec::Rational)
}

/// Dispatch by builtin name with an optional coefficient field override.
/// Overrides are available for the tables with rational entries;
/// fibonacci and ising have fixed cyclotomic fields.
pub fn builtin(name: &str, field: Option<FieldSpec>) -> Result<FSymbolTable, ExampleError> {
    match name {
        "trivial" => vec_cyclic(1, field.unwrap_or(FieldSpec::Rational)),
        "vec_z2" => vec_cyclic(2, field.unwrap_or(FieldSpec::Rational)),
        "vec_z2_semion" => vec_z2_semion_in(field.unwrap_or(FieldSpec::Rational)),
        "vec_z3" => vec_cyclic(3, field.unwrap_or(FieldSpec::Rational)),
        "vec_z6" => vec_cyclic(6, field.unwrap_or(FieldSpec::Rational)),
        "fibonacci" => match field {
            None | Some(FieldSpec::Cyclotomic(5)) => fibonacci(),
            Some(_) => Err(ExampleError::FixedField(name.to_string())),
        },
        "ising" => match field {
            None | Some(FieldSpec::Cyclotomic(8)) => ising(),
            Some(_) => Err(ExampleError::FixedField(name.to_string())),
        },
        "rep_s3" => rep_s3_in(field.unwrap_or(FieldSpec::Rational)),
        _ => Err(ExampleError::UnknownBuiltin(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pointed_tables_pass_pentagon() {
        for t in [trivial(), vec_z2(), vec_z2_semion(), vec_z3(), vec_z6()] {
            t.unwrap().pentagon_check().unwrap();
        }
    }

    #[test]
    fn fibonacci_passes_pentagon() {
        fibonacci().unwrap().pentagon_check().unwrap();
    }

    #[test]
    fn ising_passes_pentagon() {
        ising().unwrap().pentagon_check().unwrap();
    }

    #[test]
    fn rep_s3_passes_pentagon() {
        rep_s3().unwrap().pentagon_check().unwrap();
    }

    #[test]
    fn fibonacci_block_squares_to_identity() {
        let t = fibonacci().unwrap();
        let (es, fs, m) = t.fmatrix(1, 1, 1, 1);
        assert_eq!(es, vec![0, 1]);
        assert_eq!(fs, vec![0, 1]);
        for i in 0..2 {
            for j in 0..2 {
                let mut acc = Scalar::zero(t.field());
                for k in 0..2 {
                    acc = &acc + &(&m[i][k] * &m[k][j]);
                }
                assert_eq!(acc.is_one(), i == j);
                assert_eq!(acc.is_zero(), i != j);
            }
        }
    }

    #[test]
    fn semion_differs_from_vec_z2_only_at_the_top_entry() {
        let plain = vec_z2().unwrap();
        let twisted = vec_z2_semion().unwrap();
        for (a, b, c, d, e, f) in plain.admissible_hexatuples() {
            let lhs = plain.f_entry(a, b, c, d, e, f);
            let rhs = twisted.f_entry(a, b, c, d, e, f);
            if (a, b, c) == (1, 1, 1) {
                assert_eq!(lhs, &-rhs);
            } else {
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn pointed_rejects_bad_cocycles() {
        let q = FieldSpec::Rational;
        // not normalized at the identity
        let err = pointed(&cyclic_table(2), q, |a, _, _| {
            if a == 0 {
                -&Scalar::one(q)
            } else {
                Scalar::one(q)
            }
        })
        .unwrap_err();
        assert!(matches!(err, ExampleError::NotNormalized(..)));
        // normalized but fails the cocycle condition on Z/3
        let err = pointed(&cyclic_table(3), q, |a, b, c| {
            if (a, b, c) == (1, 1, 1) {
                -&Scalar::one(q)
            } else {
                Scalar::one(q)
            }
        })
        .unwrap_err();
        assert!(matches!(err, ExampleError::NotACocycle(..)));
    }

    #[test]
    fn builtin_dispatch() {
        for name in BUILTIN_NAMES {
            builtin(name, None).unwrap();
        }
        assert!(matches!(
            builtin("nonsense", None),
            Err(ExampleError::UnknownBuiltin(_))
        ));
        assert!(matches!(
            builtin("fibonacci", Some(FieldSpec::Rational)),
            Err(ExampleError::FixedField(_))
        ));
        let f3 = FieldSpec::prime(3).unwrap();
        let t = builtin("vec_z3", Some(f3)).unwrap();
        assert_eq!(t.field(), f3);
    }

    #[test]
    #[ignore = "dev-time search that pins REP_S3_SIGNS; run with --ignored"]
    fn rep_s3_sign_search() {
        let mut found = Vec::new();
        for mask in 0u32..(1 << 15) {
            let mut signs = [1i64; 15];
            for (i, s) in signs.iter_mut().enumerate() {
                if mask & (1 << i) != 0 {
                    *s = -1;
                }
            }
            let t = rep_s3_in_with_signs(FieldSpec::Rational, &signs).unwrap();
            if t.pentagon_check().is_ok() {
                found.push(signs);
                println!("signs: {signs:?}");
            }
        }
        assert!(!found.is_empty(), "no sign assignment satisfies the pentagon");
    }
}
