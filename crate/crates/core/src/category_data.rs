//! Skeletal category data on top of a fusion ring: the table of associator
//! coefficients (F-symbols) indexed by admissible hexatuples, with strict
//! unit normalization, block invertibility, the pentagon coherence check,
//! and gauge transformations.
//!
//! Conventions. Splitting bases are written top-down: an admissible triple
//! (a, b; c) names the one-dimensional space of maps from c into a tensor b.
//! The F-symbol [F^{abc}_d]_{ef} rewrites the left-nested splitting through e
//! as a combination of right-nested splittings through f:
//!
//!   (split_ab^e x id_c) after split_ec^d
//!     = sum_f [F^{abc}_d]_{ef} (id_a x split_bc^f) after split_af^d

use crate::fusion_ring::{FusionRing, Label};
use crate::scalars::{FieldSpec, Scalar};
use std::collections::BTreeMap;
use std::fmt;

/// Index of one F-symbol: (a, b, c, d, e, f).
pub type Hexa = (Label, Label, Label, Label, Label, Label);

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum TableError {
    #[error("entry at {0:?} is not admissible for the ring")]
    InadmissibleEntry(Hexa),
    #[error("missing entry at admissible index {0:?}")]
    MissingEntry(Hexa),
    #[error("entry at {idx:?} lives in {got}, table field is {expected}")]
    WrongField { idx: Hexa, expected: FieldSpec, got: FieldSpec },
    #[error("unit-normalization fails at {0:?}: entries with a unit upper label must equal 1")]
    UnitEntryNotOne(Hexa),
    #[error("F-block at (a,b,c,d) = {0:?} is singular")]
    SingularBlock((Label, Label, Label, Label)),
    #[error("duplicate entry at {0:?}")]
    DuplicateEntry(Hexa),
}

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum GaugeError {
    #[error("gauge value at {0:?} is zero")]
    ZeroValue((Label, Label, Label)),
    #[error("gauge value at unit triple {0:?} must be 1")]
    UnitTripleNotOne((Label, Label, Label)),
    #[error("gauge misses admissible triple {0:?}")]
    MissingTriple((Label, Label, Label)),
    #[error("gauge has a value at inadmissible triple {0:?}")]
    InadmissibleTriple((Label, Label, Label)),
    #[error("gauge value at {idx:?} lives in {got}, table field is {expected}")]
    WrongField { idx: (Label, Label, Label), expected: FieldSpec, got: FieldSpec },
}

/// First failing pentagon instance, in lexicographic order of
/// (a, b, c, d, e, f, g, k, l).
#[derive(Debug, Clone, PartialEq)]
pub struct PentagonViolation {
    pub a: Label,
    pub b: Label,
    pub c: Label,
    pub d: Label,
    pub e: Label,
    pub f: Label,
    pub g: Label,
    pub k: Label,
    pub l: Label,
    pub lhs: Scalar,
    pub rhs: Scalar,
}

impl fmt::Display for PentagonViolation {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            fm,
            "pentagon fails at externals ({},{},{},{};{}) internals (f={},g={},k={},l={}): {} != {}",
            self.a, self.b, self.c, self.d, self.e, self.f, self.g, self.k, self.l,
            self.lhs, self.rhs
        )
    }
}

/// A complete F-symbol table over a fusion ring and a coefficient field.
///
/// Construction validates shape only (admissibility, completeness, field,
/// strict unit entries, invertibility of every block); coherence is the
/// separate `pentagon_check`.
#[derive(Debug, Clone, PartialEq)]
pub struct FSymbolTable {
    ring: FusionRing,
    field: FieldSpec,
    entries: BTreeMap<Hexa, Scalar>,
}

impl FSymbolTable {
    pub fn new(
        ring: FusionRing,
        field: FieldSpec,
        entries: impl IntoIterator<Item = (Hexa, Scalar)>,
    ) -> Result<FSymbolTable, TableError> {
        let mut map = BTreeMap::new();
        for (idx, v) in entries {
            let (a, b, c, d, e, f) = idx;
            let admissible = ring.admissible(a, b, e)
                && ring.admissible(e, c, d)
                && ring.admissible(b, c, f)
                && ring.admissible(a, f, d);
            if !admissible {
                return Err(TableError::InadmissibleEntry(idx));
            }
            if v.field() != field {
                return Err(TableError::WrongField { idx, expected: field, got: v.field() });
            }
            if map.insert(idx, v).is_some() {
                return Err(TableError::DuplicateEntry(idx));
            }
        }
        let table = FSymbolTable { ring, field, entries: map };
        table.validate_shape()?;
        Ok(table)
    }

    fn validate_shape(&self) -> Result<(), TableError> {
        let u = self.ring.unit();
        for idx in self.admissible_hexatuples() {
            let v = self.entries.get(&idx).ok_or(TableError::MissingEntry(idx))?;
            let (a, b, c, _, _, _) = idx;
            if (a == u || b == u || c == u) && !v.is_one() {
                return Err(TableError::UnitEntryNotOne(idx));
            }
        }
        let r = self.ring.rank();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for d in 0..r {
                        let (es, fs, m) = self.fmatrix(a, b, c, d);
                        if es.is_empty() {
                            continue;
                        }
                        debug_assert_eq!(es.len(), fs.len());
                        if invert_square(&m, self.field).is_none() {
                            return Err(TableError::SingularBlock((a, b, c, d)));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &FusionRing {
        &self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// All admissible hexatuples in lexicographic order.
    pub fn admissible_hexatuples(&self) -> Vec<Hexa> {
        let r = self.ring.rank();
        let mut out = Vec::new();
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for d in 0..r {
                        for e in 0..r {
                            if !(self.ring.n(a, b, e) && self.ring.n(e, c, d)) {
                                continue;
                            }
                            for f in 0..r {
                                if self.ring.n(b, c, f) && self.ring.n(a, f, d) {
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

    /// The F-symbol at an admissible index. Panics on inadmissible indices;
    /// callers route user input through the io layer which validates first.
    pub fn f_entry(&self, a: Label, b: Label, c: Label, d: Label, e: Label, f: Label) -> &Scalar {
        self.entries
            .get(&(a, b, c, d, e, f))
            .unwrap_or_else(|| panic!("no F entry at ({a},{b},{c},{d},{e},{f})"))
    }

    /// Row labels (e), column labels (f), and the block matrix for the
    /// externals (a, b, c, d).
    pub fn fmatrix(
        &self,
        a: Label,
        b: Label,
        c: Label,
        d: Label,
    ) -> (Vec<Label>, Vec<Label>, Vec<Vec<Scalar>>) {
        let r = self.ring.rank();
        let es: Vec<Label> = (0..r)
            .filter(|&e| self.ring.n(a, b, e) && self.ring.n(e, c, d))
            .collect();
        let fs: Vec<Label> = (0..r)
            .filter(|&f| self.ring.n(b, c, f) && self.ring.n(a, f, d))
            .collect();
        let m = es
            .iter()
            .map(|&e| fs.iter().map(|&f| self.f_entry(a, b, c, d, e, f).clone()).collect())
            .collect();
        (es, fs, m)
    }

    /// Entry of the inverse block, by labels: [(F^{abc}_d)^{-1}]_{fe}.
    pub fn f_inverse_entry(
        &self,
        a: Label,
        b: Label,
        c: Label,
        d: Label,
        f: Label,
        e: Label,
    ) -> Scalar {
        let (es, fs, m) = self.fmatrix(a, b, c, d);
        let inv = invert_square(&m, self.field).expect("blocks are invertible by construction");
        let fi = fs.iter().position(|&x| x == f).expect("inadmissible f index");
        let ei = es.iter().position(|&x| x == e).expect("inadmissible e index");
        inv[fi][ei].clone()
    }

    /// Checks every pentagon instance; on failure reports the
    /// lexicographically first violation.
    pub fn pentagon_check(&self) -> Result<(), Box<PentagonViolation>> {
        let r = self.ring.rank();
        let ring = &self.ring;
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    for d in 0..r {
                        for e in 0..r {
                            for f in 0..r {
                                if !(ring.n(a, b, f)) {
                                    continue;
                                }
                                for g in 0..r {
                                    if !(ring.n(f, c, g) && ring.n(g, d, e)) {
                                        continue;
                                    }
                                    for k in 0..r {
                                        if !ring.n(a, k, e) {
                                            continue;
                                        }
                                        for l in 0..r {
                                            if !(ring.n(c, d, l)
                                                && ring.n(f, l, e)
                                                && ring.n(b, l, k))
                                            {
                                                continue;
                                            }
                                            let lhs = &self.f_entry(f, c, d, e, g, l).clone()
                                                * self.f_entry(a, b, l, e, f, k);
                                            let mut rhs = Scalar::zero(self.field);
                                            for h in 0..r {
                                                if ring.n(b, c, h)
                                                    && ring.n(h, d, k)
                                                    && ring.n(a, h, g)
                                                {
                                                    let t = &(&self
                                                        .f_entry(a, b, c, g, f, h)
                                                        .clone()
                                                        * self.f_entry(a, h, d, e, g, k))
                                                        * self.f_entry(b, c, d, k, h, l);
                                                    rhs = &rhs + &t;
                                                }
                                            }
                                            if lhs != rhs {
                                                return Err(Box::new(PentagonViolation {
                                                    a,
                                                    b,
                                                    c,
                                                    d,
                                                    e,
                                                    f,
                                                    g,
                                                    k,
                                                    l,
                                                    lhs,
                                                    rhs,
                                                }));
                                            }
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// A gauge assignment: a nonzero scalar for every admissible triple, equal
/// to 1 on triples containing the unit.
#[derive(Debug, Clone, PartialEq)]
pub struct Gauge {
    values: BTreeMap<(Label, Label, Label), Scalar>,
}

impl Gauge {
    pub fn new(
        table: &FSymbolTable,
        values: impl IntoIterator<Item = ((Label, Label, Label), Scalar)>,
    ) -> Result<Gauge, GaugeError> {
        let ring = table.ring();
        let u = ring.unit();
        let mut map = BTreeMap::new();
        for (idx, v) in values {
            let (a, b, c) = idx;
            if !ring.admissible(a, b, c) {
                return Err(GaugeError::InadmissibleTriple(idx));
            }
            if v.field() != table.field() {
                return Err(GaugeError::WrongField {
                    idx,
                    expected: table.field(),
                    got: v.field(),
                });
            }
            if v.is_zero() {
                return Err(GaugeError::ZeroValue(idx));
            }
            if (a == u || b == u) && !v.is_one() {
                return Err(GaugeError::UnitTripleNotOne(idx));
            }
            map.insert(idx, v);
        }
        for t in ring.admissible_triples() {
            if !map.contains_key(&t) {
                return Err(GaugeError::MissingTriple(t));
            }
        }
        Ok(Gauge { values: map })
    }

    /// The identity gauge for a table.
    pub fn identity(table: &FSymbolTable) -> Gauge {
        let one = Scalar::one(table.field());
        Gauge {
            values: table
                .ring()
                .admissible_triples()
                .into_iter()
                .map(|t| (t, one.clone()))
                .collect(),
        }
    }

    pub fn value(&self, a: Label, b: Label, c: Label) -> &Scalar {
        self.values
            .get(&(a, b, c))
            .unwrap_or_else(|| panic!("no gauge value at ({a},{b},{c})"))
    }
}

/// Rescales every splitting basis vector by the gauge and returns the
/// transported table:
///
///   F'[e,f] = u^{ab}_e u^{ec}_d (u^{bc}_f)^{-1} (u^{af}_d)^{-1} F[e,f]
pub fn gauge_transform(table: &FSymbolTable, gauge: &Gauge) -> FSymbolTable {
    let mut entries = Vec::new();
    for idx in table.admissible_hexatuples() {
        let (a, b, c, d, e, f) = idx;
        let num = &gauge.value(a, b, e).clone() * gauge.value(e, c, d);
        let den = &gauge.value(b, c, f).clone() * gauge.value(a, f, d);
        let v = &(&num * &den.invert().expect("gauge values are nonzero"))
            * table.f_entry(a, b, c, d, e, f);
        entries.push((idx, v));
    }
    FSymbolTable::new(table.ring().clone(), table.field(), entries)
        .expect("gauge transport preserves table shape")
}

/// Exact inverse of a square matrix over one field; `None` when singular.
pub(crate) fn invert_square(m: &[Vec<Scalar>], field: FieldSpec) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    if n == 0 {
        return Some(Vec::new());
    }
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut inv: Vec<Vec<Scalar>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Scalar::one(field) } else { Scalar::zero(field) })
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone().invert().ok()?;
        for j in 0..n {
            a[col][j] = &a[col][j] * &p;
            inv[col][j] = &inv[col][j] * &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let t = &factor * &a[col][j];
                a[r][j] = &a[r][j] - &t;
                let t2 = &factor * &inv[col][j];
                inv[r][j] = &inv[r][j] - &t2;
            }
        }
    }
    Some(inv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fusion_ring::ring_from_group;

    fn z2_table(omega: i64) -> Result<FSymbolTable, TableError> {
        let ring = ring_from_group(&[vec![0, 1], vec![1, 0]]).unwrap();
        let field = FieldSpec::Rational;
        let mut entries = Vec::new();
        let r = 2;
        for a in 0..r {
            for b in 0..r {
                for c in 0..r {
                    let d = (a + b + c) % 2;
                    let e = (a + b) % 2;
                    let f = (b + c) % 2;
                    let v = if a == 1 && b == 1 && c == 1 {
                        Scalar::from_int(field, omega)
                    } else {
                        Scalar::one(field)
                    };
                    entries.push(((a, b, c, d, e, f), v));
                }
            }
        }
        FSymbolTable::new(ring, field, entries)
    }

    #[test]
    fn z2_both_signs_pass_pentagon() {
        assert!(z2_table(1).unwrap().pentagon_check().is_ok());
        assert!(z2_table(-1).unwrap().pentagon_check().is_ok());
    }

    #[test]
    fn pentagon_violation_is_reported_with_instance() {
        let bad = z2_table(2).unwrap();
        let v = bad.pentagon_check().unwrap_err();
        assert_eq!((v.a, v.b, v.c, v.d), (1, 1, 1, 1));
        assert_eq!(v.lhs, Scalar::rational(1, 1));
        assert_eq!(v.rhs, Scalar::rational(4, 1));
    }

    #[test]
    fn zero_entry_makes_block_singular() {
        let err = z2_table(0).unwrap_err();
        assert_eq!(err, TableError::SingularBlock((1, 1, 1, 1)));
    }

    #[test]
    fn missing_entry_is_reported() {
        let ring = ring_from_group(&[vec![0, 1], vec![1, 0]]).unwrap();
        let err = FSymbolTable::new(ring, FieldSpec::Rational, Vec::new()).unwrap_err();
        assert!(matches!(err, TableError::MissingEntry(_)));
    }

    #[test]
    fn unit_entries_must_be_one() {
        let ring = ring_from_group(&[vec![0, 1], vec![1, 0]]).unwrap();
        let field = FieldSpec::Rational;
        let mut entries = Vec::new();
        for a in 0..2usize {
            for b in 0..2usize {
                for c in 0..2usize {
                    let d = (a + b + c) % 2;
                    let v = if a == 0 && b == 0 && c == 0 {
                        Scalar::from_int(field, 2)
                    } else {
                        Scalar::one(field)
                    };
                    entries.push(((a, b, c, d, (a + b) % 2, (b + c) % 2), v));
                }
            }
        }
        let err = FSymbolTable::new(ring, field, entries).unwrap_err();
        assert_eq!(err, TableError::UnitEntryNotOne((0, 0, 0, 0, 0, 0)));
    }

    #[test]
    fn matrix_inversion() {
        let f = FieldSpec::Rational;
        let two = Scalar::from_int(f, 2);
        let one = Scalar::one(f);
        let m = vec![vec![one.clone(), two.clone()], vec![two.clone(), one.clone()]];
        let inv = invert_square(&m, f).unwrap();
        // product check
        for i in 0..2 {
            for j in 0..2 {
                let mut s = Scalar::zero(f);
                for k in 0..2 {
                    s = &s + &(&m[i][k] * &inv[k][j]);
                }
                assert_eq!(s.is_one(), i == j);
                if i != j {
                    assert!(s.is_zero());
                }
            }
        }
        let sing = vec![vec![one.clone(), one.clone()], vec![one.clone(), one]];
        assert!(invert_square(&sing, f).is_none());
    }
}
