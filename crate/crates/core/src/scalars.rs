//! Exact scalar arithmetic over the coefficient fields the toolkit supports:
//! the rationals, cyclotomic extensions Q(zeta_n), and prime fields F_p.
//!
//! Every scalar is kept in a canonical form, so `==` decides exact equality:
//! rationals are reduced fractions, cyclotomic elements are reduced modulo
//! the n-th cyclotomic polynomial (degree below phi(n), stored as a length-n
//! coefficient vector), and prime-field elements are reduced residues.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

/// Coefficient field of a scalar or of a whole F-symbol table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    /// The rational numbers.
    Rational,
    /// The cyclotomic field Q(zeta_n); the order n is at least 1.
    Cyclotomic(u32),
    /// The prime field F_p.
    Prime(u64),
}

impl FieldSpec {
    /// Builds a prime-field spec, rejecting composite or unit moduli.
    pub fn prime(p: u64) -> Result<FieldSpec, ScalarError> {
        if is_prime_u64(p) {
            Ok(FieldSpec::Prime(p))
        } else {
            Err(ScalarError::NotPrime(p))
        }
    }

    /// Builds a cyclotomic-field spec; the order must be at least 1.
    pub fn cyclotomic(n: u32) -> Result<FieldSpec, ScalarError> {
        if n >= 1 {
            Ok(FieldSpec::Cyclotomic(n))
        } else {
            Err(ScalarError::BadCyclotomicOrder(n))
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Cyclotomic(n) => write!(f, "Q(zeta_{n})"),
            FieldSpec::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("cyclotomic order must be at least 1, got {0}")]
    BadCyclotomicOrder(u32),
    #[error("denominator of {0} vanishes in F_{1}")]
    DenominatorVanishes(BigRational, u64),
}

/// An exact scalar, tagged with its field through the variant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    Rational(BigRational),
    /// Coefficients of 1, zeta, ..., zeta^(n-1); always length `order` and
    /// reduced modulo the order-th cyclotomic polynomial.
    Cyclotomic { order: u32, coeffs: Vec<BigRational> },
    Prime { modulus: u64, value: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Cyclotomic { order, .. } => FieldSpec::Cyclotomic(*order),
            Scalar::Prime { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn zero(field: FieldSpec) -> Scalar {
        Scalar::from_int(field, 0)
    }

    pub fn one(field: FieldSpec) -> Scalar {
        Scalar::from_int(field, 1)
    }

    /// Embeds a small integer into the given field.
    pub fn from_int(field: FieldSpec, v: i64) -> Scalar {
        match field {
            FieldSpec::Rational => Scalar::Rational(BigRational::from(BigInt::from(v))),
            FieldSpec::Cyclotomic(n) => {
                let mut coeffs = vec![BigRational::zero(); n as usize];
                coeffs[0] = BigRational::from(BigInt::from(v));
                cyclotomic_canonical(n, coeffs)
            }
            FieldSpec::Prime(p) => {
                let r = v.rem_euclid(p as i64) as u64;
                Scalar::Prime { modulus: p, value: r }
            }
        }
    }

    /// The rational p/q as a `Scalar` over Q.
    pub fn rational(p: i64, q: i64) -> Scalar {
        assert!(q != 0, "zero denominator");
        Scalar::Rational(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// Embeds an arbitrary rational into the given field. Fails over F_p when
    /// the denominator is divisible by p.
    pub fn embed_rational(field: FieldSpec, r: &BigRational) -> Result<Scalar, ScalarError> {
        match field {
            FieldSpec::Rational => Ok(Scalar::Rational(r.clone())),
            FieldSpec::Cyclotomic(n) => {
                let mut coeffs = vec![BigRational::zero(); n as usize];
                coeffs[0] = r.clone();
                Ok(cyclotomic_canonical(n, coeffs))
            }
            FieldSpec::Prime(p) => {
                let pm = BigInt::from(p);
                let den = (r.denom() % &pm + &pm) % &pm;
                if den.is_zero() {
                    return Err(ScalarError::DenominatorVanishes(r.clone(), p));
                }
                let num = ((r.numer() % &pm) + &pm) % &pm;
                let num_u = big_to_u64(&num);
                let den_u = big_to_u64(&den);
                let v = mul_mod(num_u, inv_mod(den_u, p)?, p);
                Ok(Scalar::Prime { modulus: p, value: v })
            }
        }
    }

    /// The primitive root of unity zeta_n as a scalar of Q(zeta_n).
    pub fn zeta(order: u32) -> Scalar {
        Scalar::zeta_pow(order, 1)
    }

    /// zeta_n^k, with k taken modulo n.
    pub fn zeta_pow(order: u32, k: i64) -> Scalar {
        assert!(order >= 1);
        let n = order as usize;
        let idx = k.rem_euclid(order as i64) as usize;
        let mut coeffs = vec![BigRational::zero(); n];
        coeffs[idx] = BigRational::one();
        cyclotomic_canonical(order, coeffs)
    }

    /// A cyclotomic scalar from raw coefficients of zeta^0..  The vector may
    /// have any length; exponents fold modulo the order before reduction.
    pub fn cyclotomic(order: u32, raw: Vec<BigRational>) -> Scalar {
        assert!(order >= 1);
        cyclotomic_canonical(order, raw)
    }

    /// A prime-field scalar v mod p.
    pub fn prime(p: u64, v: u64) -> Result<Scalar, ScalarError> {
        let field = FieldSpec::prime(p)?;
        match field {
            FieldSpec::Prime(p) => Ok(Scalar::Prime { modulus: p, value: v % p }),
            _ => unreachable!(),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Cyclotomic { coeffs, .. } => coeffs.iter().all(|c| c.is_zero()),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Scalar::one(self.field())
    }

    /// Multiplicative inverse; errors on zero.
    pub fn invert(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        match self {
            Scalar::Rational(r) => Ok(Scalar::Rational(r.recip())),
            Scalar::Cyclotomic { order, coeffs } => {
                let inv = poly_invert_mod_cyclotomic(*order, coeffs)?;
                Ok(cyclotomic_canonical(*order, inv))
            }
            Scalar::Prime { modulus, value } => Ok(Scalar::Prime {
                modulus: *modulus,
                value: inv_mod(*value, *modulus)?,
            }),
        }
    }

    /// The field involution sending zeta to its inverse; identity on rational
    /// and prime-field scalars.
    pub fn conjugate(&self) -> Scalar {
        match self {
            Scalar::Rational(_) | Scalar::Prime { .. } => self.clone(),
            Scalar::Cyclotomic { order, coeffs } => {
                let n = *order as usize;
                let mut raw = vec![BigRational::zero(); n];
                for (k, c) in coeffs.iter().enumerate() {
                    raw[(n - k) % n] += c;
                }
                cyclotomic_canonical(*order, raw)
            }
        }
    }

    /// Integer power, with negative exponents going through `invert`.
    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.invert()? } else { self.clone() };
        let mut acc = Scalar::one(self.field());
        let mut k = e.unsigned_abs();
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Complex floating approximation, for display. `None` over prime fields.
    pub fn approx(&self) -> Option<(f64, f64)> {
        match self {
            Scalar::Rational(r) => Some((rat_to_f64(r), 0.0)),
            Scalar::Cyclotomic { order, coeffs } => {
                let n = *order as f64;
                let mut re = 0.0;
                let mut im = 0.0;
                for (k, c) in coeffs.iter().enumerate() {
                    let theta = 2.0 * std::f64::consts::PI * (k as f64) / n;
                    let v = rat_to_f64(c);
                    re += v * theta.cos();
                    im += v * theta.sin();
                }
                Some((re, im))
            }
            Scalar::Prime { .. } => None,
        }
    }

    fn assert_same_field(&self, other: &Scalar) {
        assert!(
            self.field() == other.field(),
            "scalar field mismatch: {} vs {}",
            self.field(),
            other.field()
        );
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Cyclotomic { order, coeffs } => {
                let mut terms: Vec<String> = Vec::new();
                for (k, c) in coeffs.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let coeff = if c.denom().is_one() {
                        format!("{}", c.numer())
                    } else {
                        format!("{}/{}", c.numer(), c.denom())
                    };
                    let term = match k {
                        0 => coeff,
                        1 => {
                            if c.is_one() {
                                "z".to_string()
                            } else {
                                format!("{coeff}*z")
                            }
                        }
                        _ => {
                            if c.is_one() {
                                format!("z^{k}")
                            } else {
                                format!("{coeff}*z^{k}")
                            }
                        }
                    };
                    terms.push(term);
                }
                if terms.is_empty() {
                    terms.push("0".to_string());
                }
                write!(f, "{} where z = zeta_{}", terms.join(" + "), order)
            }
            Scalar::Prime { modulus, value } => write!(f, "{value} mod {modulus}"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Cyclotomic { order, coeffs: a },
                Scalar::Cyclotomic { coeffs: b, .. },
            ) => {
                let sum: Vec<BigRational> =
                    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect();
                cyclotomic_canonical(*order, sum)
            }
            (
                Scalar::Prime { modulus, value: a },
                Scalar::Prime { value: b, .. },
            ) => Scalar::Prime {
                modulus: *modulus,
                value: add_mod(*a, *b, *modulus),
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Cyclotomic { order, coeffs: a },
                Scalar::Cyclotomic { coeffs: b, .. },
            ) => {
                let mut prod = vec![BigRational::zero(); a.len() + b.len()];
                for (i, x) in a.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    for (j, y) in b.iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        let t = x * y;
                        prod[i + j] += t;
                    }
                }
                cyclotomic_canonical(*order, prod)
            }
            (
                Scalar::Prime { modulus, value: a },
                Scalar::Prime { value: b, .. },
            ) => Scalar::Prime {
                modulus: *modulus,
                value: mul_mod(*a, *b, *modulus),
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Cyclotomic { order, coeffs } => Scalar::Cyclotomic {
                order: *order,
                coeffs: coeffs.iter().map(|c| -c).collect(),
            },
            Scalar::Prime { modulus, value } => Scalar::Prime {
                modulus: *modulus,
                value: if *value == 0 { 0 } else { modulus - value },
            },
        }
    }
}

fn rat_to_f64(r: &BigRational) -> f64 {
    let n = r.numer();
    let d = r.denom();
    let nf: f64 = n.to_string().parse().unwrap_or(f64::NAN);
    let df: f64 = d.to_string().parse().unwrap_or(f64::NAN);
    nf / df
}

fn big_to_u64(b: &BigInt) -> u64 {
    let (_, digits) = b.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0],
        _ => panic!("residue out of u64 range"),
    }
}

// Modular arithmetic on u64 with u128 intermediates.

fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> Result<u64, ScalarError> {
    if a.is_multiple_of(p) {
        return Err(ScalarError::DivisionByZero);
    }
    Ok(pow_mod(a, p - 2, p))
}

/// Deterministic Miller-Rabin over the base set that is exact for u64.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'bases: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

// Cyclotomic polynomials, cached per order. Phi_n is monic with integer
// coefficients; it is computed by exact division of x^n - 1 by the product
// of Phi_d over proper divisors d of n.

fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return hit.clone();
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = poly_div_exact_int(&num, &phi_d);
        }
    }
    cache.lock().unwrap().insert(n, num.clone());
    num
}

/// Exact division of integer polynomials where the divisor is monic and the
/// division has no remainder.
fn poly_div_exact_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = a.to_vec();
    let db = b.len() - 1;
    assert!(b[db].is_one(), "divisor must be monic");
    let da = rem.len() - 1;
    assert!(da >= db);
    let mut quot = vec![BigInt::zero(); da - db + 1];
    for k in (0..=da - db).rev() {
        let c = rem[k + db].clone();
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for (i, bi) in b.iter().enumerate() {
            let delta = &c * bi;
            rem[k + i] -= delta;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division not exact");
    quot
}

/// Folds exponents modulo the order, reduces by the cyclotomic polynomial,
/// and pads back to a length-n coefficient vector.
fn cyclotomic_canonical(order: u32, raw: Vec<BigRational>) -> Scalar {
    let n = order as usize;
    let mut folded = vec![BigRational::zero(); n];
    for (k, c) in raw.into_iter().enumerate() {
        if !c.is_zero() {
            folded[k % n] += c;
        }
    }
    let phi: Vec<BigRational> = cyclotomic_polynomial(order)
        .into_iter()
        .map(BigRational::from)
        .collect();
    let deg_phi = phi.len() - 1;
    for deg in (deg_phi..n).rev() {
        if folded[deg].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut folded[deg], BigRational::zero());
        let shift = deg - deg_phi;
        for (i, q) in phi.iter().enumerate().take(deg_phi) {
            let delta = &c * q;
            folded[shift + i] -= delta;
        }
    }
    Scalar::Cyclotomic { order, coeffs: folded }
}

// Polynomial helpers over Q used by cyclotomic inversion.

fn poly_deg(a: &[BigRational]) -> Option<usize> {
    a.iter().rposition(|c| !c.is_zero())
}

fn poly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = poly_deg(b).expect("remainder by zero polynomial");
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    while let Some(da) = poly_deg(&rem) {
        if da < db {
            break;
        }
        let c = &rem[da] / &lead;
        let shift = da - db;
        for i in 0..=db {
            let delta = &c * &b[i];
            rem[shift + i] -= delta;
        }
    }
    rem
}

fn poly_quot(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let db = poly_deg(b).expect("division by zero polynomial");
    let lead = b[db].clone();
    let mut rem = a.to_vec();
    let da = match poly_deg(&rem) {
        Some(d) if d >= db => d,
        _ => return vec![BigRational::zero()],
    };
    let mut quot = vec![BigRational::zero(); da - db + 1];
    loop {
        let d = match poly_deg(&rem) {
            Some(d) if d >= db => d,
            _ => break,
        };
        let c = &rem[d] / &lead;
        quot[d - db] = c.clone();
        let shift = d - db;
        for i in 0..=db {
            let delta = &c * &b[i];
            rem[shift + i] -= delta;
        }
    }
    quot
}

fn poly_mul_q(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            let t = x * y;
            out[i + j] += t;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); len];
    for (i, slot) in out.iter_mut().enumerate() {
        let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
        *slot = x - y;
    }
    out
}

/// Inverse of a nonzero reduced element modulo Phi_n via the extended
/// Euclidean algorithm; Phi_n is irreducible over Q so the gcd is a unit.
fn poly_invert_mod_cyclotomic(
    order: u32,
    coeffs: &[BigRational],
) -> Result<Vec<BigRational>, ScalarError> {
    let phi: Vec<BigRational> = cyclotomic_polynomial(order)
        .into_iter()
        .map(BigRational::from)
        .collect();
    // invariant: r0 = s0 * f (mod phi), r1 = s1 * f (mod phi)
    let mut r0 = phi.clone();
    let mut r1 = coeffs.to_vec();
    let mut s0: Vec<BigRational> = vec![BigRational::zero()];
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while poly_deg(&r1).is_some() {
        let q = poly_quot(&r0, &r1);
        let r2 = poly_sub(&r0, &poly_mul_q(&q, &r1));
        let s2 = poly_sub(&s0, &poly_mul_q(&q, &s1));
        r0 = r1;
        r1 = r2;
        s0 = s1;
        s1 = s2;
    }
    let d = poly_deg(&r0).expect("gcd vanished");
    if d != 0 {
        // cannot happen for irreducible phi and nonzero input
        return Err(ScalarError::DivisionByZero);
    }
    let unit = r0[0].clone();
    let inv: Vec<BigRational> = s0.iter().map(|c| c / &unit).collect();
    Ok(poly_rem(&inv, &phi))
}
