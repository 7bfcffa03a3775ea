//! Duality witnesses, quantum traces, squared norms and the pairing map
//! between evaluation and coevaluation scalars.
//!
//! Simple labels in a skeletal setting have one-dimensional pairing spaces,
//! so every choice of duality data is a family of nonzero scalars. The
//! snake composites that such choices must satisfy are evaluated exactly
//! through the tree engine, never by quoting closed forms; closed forms
//! appear only in the test suite as independent oracles.

use crate::category_data::FSymbolTable;
use crate::fusion_ring::Label;
use crate::scalars::Scalar;
use crate::trees::TreeVector;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DualityError {
    /// The snake composite for this label vanishes, so no scalar choice of
    /// evaluation can invert it.
    #[error("label {label} has a vanishing snake composite")]
    ZigzagObstruction { label: Label },
    /// The companion snake on the dual strand is inconsistent with the
    /// first one for this label.
    #[error("label {label} fails the companion snake identity")]
    SecondZigzag { label: Label },
    #[error("scalar value must be nonzero")]
    ZeroScalar,
    #[error("morphism words may have length at most three")]
    WordTooLong,
    #[error("unknown label in morphism word")]
    UnknownLabel,
    #[error("hom space between the given words has dimension {dim}, not one")]
    HomNotOneDimensional { dim: usize },
    #[error("scalar field does not match the table")]
    FieldMismatch,
    #[error("morphisms are not composable in the scalar calculus")]
    NotComposable,
    #[error("witness does not have the required evaluation/coevaluation shape")]
    WitnessShape,
}

/// A morphism between tensor words of simple labels whose hom space is
/// one-dimensional, recorded as its coefficient over the canonical
/// right-nested basis vector of that space.
#[derive(Debug, Clone, PartialEq)]
pub struct MorphismScalar {
    source: Vec<Label>,
    target: Vec<Label>,
    value: Scalar,
}

/// Multiplicity of the simple label `c` inside the tensor product of `word`.
fn multiplicity(table: &FSymbolTable, word: &[Label], c: Label) -> usize {
    let ring = table.ring();
    match word {
        [] => (c == ring.unit()) as usize,
        [x] => (c == *x) as usize,
        [x, y] => ring.n(*x, *y, c) as usize,
        [x, y, z] => (0..ring.rank())
            .filter(|&e| ring.n(*x, *y, e) && ring.n(e, *z, c))
            .count(),
        _ => unreachable!("words are validated to length three"),
    }
}

impl MorphismScalar {
    pub fn new(
        table: &FSymbolTable,
        source: Vec<Label>,
        target: Vec<Label>,
        value: Scalar,
    ) -> Result<MorphismScalar, DualityError> {
        if source.len() > 3 || target.len() > 3 {
            return Err(DualityError::WordTooLong);
        }
        let rank = table.ring().rank();
        if source.iter().chain(&target).any(|&l| l >= rank) {
            return Err(DualityError::UnknownLabel);
        }
        if value.field() != table.field() {
            return Err(DualityError::FieldMismatch);
        }
        let dim: usize = (0..rank)
            .map(|c| multiplicity(table, &source, c) * multiplicity(table, &target, c))
            .sum();
        if dim != 1 {
            return Err(DualityError::HomNotOneDimensional { dim });
        }
        Ok(MorphismScalar { source, target, value })
    }

    pub fn source(&self) -> &[Label] {
        &self.source
    }

    pub fn target(&self) -> &[Label] {
        &self.target
    }

    pub fn value(&self) -> &Scalar {
        &self.value
    }

    /// `self` composed after `g`. Only supported when the outer words are
    /// simple or empty, where the canonical bases pair with coefficient one.
    pub fn compose(
        &self,
        table: &FSymbolTable,
        g: &MorphismScalar,
    ) -> Result<MorphismScalar, DualityError> {
        if self.source != g.target || g.source.len() > 1 || self.target.len() > 1 {
            return Err(DualityError::NotComposable);
        }
        MorphismScalar::new(
            table,
            g.source.clone(),
            self.target.clone(),
            &self.value * &g.value,
        )
    }

    /// The inverse with respect to the normalized pairing: words swapped,
    /// coefficient inverted.
    pub fn inverse(&self, table: &FSymbolTable) -> Result<MorphismScalar, DualityError> {
        let inv = self.value.invert().map_err(|_| DualityError::ZeroScalar)?;
        MorphismScalar::new(table, self.target.clone(), self.source.clone(), inv)
    }

    pub fn scaled(&self, s: &Scalar) -> MorphismScalar {
        MorphismScalar {
            source: self.source.clone(),
            target: self.target.clone(),
            value: &self.value * s,
        }
    }
}

/// Snake composite on the strand `i` bending to the right:
/// (id tensor cap) after (cup tensor id), with basis cup on (i, dual i)
/// and basis cap on (dual i, i). Pure F-move factor.
pub(crate) fn right_snake_factor(table: &FSymbolTable, i: Label) -> Scalar {
    let di = table.ring().dual(i);
    TreeVector::identity(table, i)
        .insert_unit_leaf(table, 0)
        .expand_leaf(table, 0, i, di)
        .fuse_leaves(table, 1, table.ring().unit())
        .remove_unit_leaf(table, 1)
        .into_scalar(table)
}

/// Snake composite on the strand `i` bending to the left:
/// (cap tensor id) after (id tensor cup), with basis cup on (dual i, i)
/// and basis cap on (i, dual i). Pure F-move factor.
pub(crate) fn left_snake_factor(table: &FSymbolTable, i: Label) -> Scalar {
    let di = table.ring().dual(i);
    TreeVector::identity(table, i)
        .insert_unit_leaf(table, 1)
        .expand_leaf(table, 1, di, i)
        .fuse_leaves(table, 0, table.ring().unit())
        .remove_unit_leaf(table, 0)
        .into_scalar(table)
}

/// Coevaluation and evaluation coefficients for every label. `coev(i)`
/// is the coefficient of a map from the unit into i tensor (dual i), and
/// `ev(i)` of a map from (dual i) tensor i into the unit.
#[derive(Debug, Clone, PartialEq)]
pub struct DualityChoices {
    coev: Vec<Scalar>,
    ev: Vec<Scalar>,
}

impl DualityChoices {
    /// Solves the snake equations with every coevaluation set to one.
    pub fn standard(table: &FSymbolTable) -> Result<DualityChoices, DualityError> {
        let ring = table.ring();
        let ones = vec![Scalar::one(table.field()); ring.rank()];
        DualityChoices::with_coev_seeds(table, ones)
    }

    /// Solves the snake equations with prescribed nonzero coevaluation
    /// coefficients, one per label.
    pub fn with_coev_seeds(
        table: &FSymbolTable,
        seeds: Vec<Scalar>,
    ) -> Result<DualityChoices, DualityError> {
        let ring = table.ring();
        assert_eq!(seeds.len(), ring.rank(), "one seed per label");
        let mut coev = Vec::with_capacity(ring.rank());
        let mut ev = Vec::with_capacity(ring.rank());
        for i in 0..ring.rank() {
            if seeds[i].is_zero() {
                return Err(DualityError::ZeroScalar);
            }
            if seeds[i].field() != table.field() {
                return Err(DualityError::FieldMismatch);
            }
            let snake = right_snake_factor(table, i);
            let scaled = &snake * &seeds[i];
            let ev_i = scaled
                .invert()
                .map_err(|_| DualityError::ZigzagObstruction { label: i })?;
            coev.push(seeds[i].clone());
            ev.push(ev_i);
        }
        let choices = DualityChoices { coev, ev };
        for i in 0..ring.rank() {
            // the same pair must also straighten the dual strand
            let companion = left_snake_factor(table, ring.dual(i));
            let total = &(&choices.coev[i] * &choices.ev[i]) * &companion;
            if !total.is_one() {
                return Err(DualityError::SecondZigzag { label: i });
            }
        }
        Ok(choices)
    }

    pub fn coev(&self, i: Label) -> &Scalar {
        &self.coev[i]
    }

    pub fn ev(&self, i: Label) -> &Scalar {
        &self.ev[i]
    }

    /// The coevaluation witness as a morphism scalar.
    pub fn coev_morphism(
        &self,
        table: &FSymbolTable,
        i: Label,
    ) -> Result<MorphismScalar, DualityError> {
        let di = table.ring().dual(i);
        MorphismScalar::new(table, vec![], vec![i, di], self.coev[i].clone())
    }

    /// The evaluation witness as a morphism scalar.
    pub fn ev_morphism(
        &self,
        table: &FSymbolTable,
        i: Label,
    ) -> Result<MorphismScalar, DualityError> {
        let di = table.ring().dual(i);
        MorphismScalar::new(table, vec![di, i], vec![], self.ev[i].clone())
    }
}

/// Quantum trace of `a` times the identity of `x`, taken with the given
/// duality choices: cap after (a tensor id) after cup, evaluated through
/// the tree engine.
pub fn quantum_trace(
    table: &FSymbolTable,
    choices: &DualityChoices,
    x: Label,
    a: &Scalar,
) -> Scalar {
    let ring = table.ring();
    let dx = ring.dual(x);
    let mut v = TreeVector::empty(table)
        .insert_unit_leaf(table, 0)
        .expand_leaf(table, 0, x, dx);
    v.scale(&(choices.coev(x) * a));
    let mut v = v
        .fuse_leaves(table, 0, ring.unit())
        .remove_unit_leaf(table, 0);
    v.scale(choices.ev(dx));
    v.into_scalar(table)
}

/// The left-dual image of `a` times the identity of `x`, a scalar on the
/// dual strand, computed by bending through the chosen witnesses.
fn star_of_scaled_identity(
    table: &FSymbolTable,
    choices: &DualityChoices,
    x: Label,
    a: &Scalar,
) -> Scalar {
    let ring = table.ring();
    let dx = ring.dual(x);
    let mut v = TreeVector::identity(table, dx)
        .insert_unit_leaf(table, 0)
        .expand_leaf(table, 0, dx, x);
    v.scale(&(choices.coev(dx) * a));
    let mut v = v
        .fuse_leaves(table, 1, ring.unit())
        .remove_unit_leaf(table, 1);
    v.scale(choices.ev(dx));
    v.into_scalar(table)
}

/// Squared norm of the label `x` with explicit choices and identification
/// scalar `a`: the trace of `a` times the product of the trace of the
/// dual of `a` inverse. Independent of both `a` and the choices.
pub fn squared_norm_with(
    table: &FSymbolTable,
    choices: &DualityChoices,
    x: Label,
    a: &Scalar,
) -> Result<Scalar, DualityError> {
    let a_inv = a.invert().map_err(|_| DualityError::ZeroScalar)?;
    let tr = quantum_trace(table, choices, x, a);
    let star = star_of_scaled_identity(table, choices, x, &a_inv);
    let dx = table.ring().dual(x);
    let tr_star = quantum_trace(table, choices, dx, &star);
    Ok(&tr * &tr_star)
}

/// Squared norm of `x` with the standard choices.
pub fn squared_norm(table: &FSymbolTable, x: Label) -> Result<Scalar, DualityError> {
    let choices = DualityChoices::standard(table)?;
    squared_norm_with(table, &choices, x, &Scalar::one(table.field()))
}

/// Sum of the squared norms of all labels.
pub fn global_dimension(table: &FSymbolTable) -> Result<Scalar, DualityError> {
    let choices = DualityChoices::standard(table)?;
    let mut total = Scalar::zero(table.field());
    for x in 0..table.ring().rank() {
        let n = squared_norm_with(table, &choices, x, &Scalar::one(table.field()))?;
        total = &total + &n;
    }
    Ok(total)
}

/// Which way the pairing map is applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaDirection {
    /// Witness is an evaluation-shaped map (x, dual x) to the empty word;
    /// result is the matching coevaluation from the empty word to
    /// (dual x, x).
    EvToCoev,
    /// Witness is a coevaluation-shaped map from the empty word to
    /// (y, x) with y dual to x; result is the matching evaluation on
    /// (x, y).
    CoevToEv,
}

/// The unique partner of a nonzero pairing witness: the scalar making the
/// snake on the shared strand equal the identity.
pub fn gamma(
    table: &FSymbolTable,
    witness: &MorphismScalar,
    direction: GammaDirection,
) -> Result<MorphismScalar, DualityError> {
    let ring = table.ring();
    if witness.value().is_zero() {
        return Err(DualityError::ZeroScalar);
    }
    match direction {
        GammaDirection::EvToCoev => {
            let (x, y) = match (witness.source(), witness.target()) {
                ([x, y], []) => (*x, *y),
                _ => return Err(DualityError::WitnessShape),
            };
            if y != ring.dual(x) {
                return Err(DualityError::WitnessShape);
            }
            let snake = left_snake_factor(table, x);
            let scaled = &snake * witness.value();
            let value = scaled
                .invert()
                .map_err(|_| DualityError::ZigzagObstruction { label: x })?;
            MorphismScalar::new(table, vec![], vec![y, x], value)
        }
        GammaDirection::CoevToEv => {
            let (y, x) = match (witness.source(), witness.target()) {
                ([], [y, x]) => (*y, *x),
                _ => return Err(DualityError::WitnessShape),
            };
            if y != ring.dual(x) {
                return Err(DualityError::WitnessShape);
            }
            let snake = left_snake_factor(table, x);
            let scaled = &snake * witness.value();
            let value = scaled
                .invert()
                .map_err(|_| DualityError::ZigzagObstruction { label: x })?;
            MorphismScalar::new(table, vec![x, y], vec![], value)
        }
    }
}
