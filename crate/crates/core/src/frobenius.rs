//! Frobenius pairing data on the canonical algebra object, the window
//! element, axiom checking and separability.
//!
//! The algebra is the direct sum of x tensor (dual x) over all labels,
//! sitting inside the product of the category with its mirror. All data
//! here reduces to four scalar families indexed by labels: a pairing and
//! a copairing coefficient on each tensor factor. The copairings are not
//! free: they are produced from the pairings by the gamma map, and the
//! axiom checker re-verifies the resulting snake composites through the
//! tree engine.

use crate::category_data::FSymbolTable;
use crate::duality_calculus::{
    gamma, left_snake_factor, right_snake_factor, DualityChoices, DualityError, GammaDirection,
    MorphismScalar,
};
use crate::fusion_ring::Label;
use crate::scalars::Scalar;
use crate::trees::TreeVector;
use thiserror::Error;

/// Scalar data of the Frobenius structure: for each label i,
/// `pairing[i]` and `copairing[i]` are the coefficients on the plain
/// factor, and the mirror fields those on the mirrored factor. Pairings
/// have shape (i, dual i) to unit; copairings the reverse.
#[derive(Debug, Clone, PartialEq)]
pub struct FrobeniusData {
    pub pairing: Vec<MorphismScalar>,
    pub pairing_mirror: Vec<MorphismScalar>,
    pub copairing: Vec<MorphismScalar>,
    pub copairing_mirror: Vec<MorphismScalar>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrobeniusAxiom {
    /// Snake on the label strand built from pairing and copairing.
    SnakeStraight,
    /// Snake on the dual strand built from the same pair.
    SnakeDual,
    /// Snake on the label strand on the mirror factor.
    MirrorSnakeStraight,
    /// Snake on the dual strand on the mirror factor.
    MirrorSnakeDual,
    /// The unit-label pairing composed with its copairing must be one.
    CounitNormalization,
}

impl std::fmt::Display for FrobeniusAxiom {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            FrobeniusAxiom::SnakeStraight => "snake on label strand",
            FrobeniusAxiom::SnakeDual => "snake on dual strand",
            FrobeniusAxiom::MirrorSnakeStraight => "mirror snake on label strand",
            FrobeniusAxiom::MirrorSnakeDual => "mirror snake on dual strand",
            FrobeniusAxiom::CounitNormalization => "counit normalization",
        };
        f.write_str(name)
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum FrobeniusError {
    #[error(transparent)]
    Duality(#[from] DualityError),
    #[error("frobenius axiom failed at label {label}: {axiom}")]
    AxiomFailure { label: Label, axiom: FrobeniusAxiom },
}

/// The left dual of a coevaluation-shaped map from the unit into
/// (a, dual a), computed as the honest four-strand bend through the
/// given witnesses. The result is an evaluation-shaped map on the same
/// pair of strands.
fn star_of_coev(
    table: &FSymbolTable,
    choices: &DualityChoices,
    w: &MorphismScalar,
) -> Result<MorphismScalar, DualityError> {
    let ring = table.ring();
    let (a, b) = match (w.source(), w.target()) {
        ([], [a, b]) => (*a, *b),
        _ => return Err(DualityError::WitnessShape),
    };
    if b != ring.dual(a) {
        return Err(DualityError::WitnessShape);
    }
    let da = ring.dual(a);
    // basis coevaluation on (a, dual a), precomposed so the result reads
    // off as a coefficient
    let mut v = TreeVector::empty(table)
        .insert_unit_leaf(table, 0)
        .expand_leaf(table, 0, a, da)
        .insert_unit_leaf(table, 0)
        .expand_leaf(table, 0, a, da);
    v.scale(w.value());
    let mut v = v
        .fuse_leaves(table, 1, ring.unit())
        .remove_unit_leaf(table, 1);
    v.scale(choices.ev(a));
    let mut v = v
        .fuse_leaves(table, 0, ring.unit())
        .remove_unit_leaf(table, 0);
    v.scale(choices.ev(da));
    MorphismScalar::new(table, vec![a, da], vec![], v.into_scalar(table))
}

/// Builds Frobenius data from prescribed nonzero pairing coefficients,
/// one per label. Copairings on the plain factor and both families on
/// the mirror factor are derived through gamma and the star bend.
pub fn frobenius_data_with_seeds(
    table: &FSymbolTable,
    seeds: &[Scalar],
) -> Result<FrobeniusData, DualityError> {
    let ring = table.ring();
    assert_eq!(seeds.len(), ring.rank(), "one pairing seed per label");
    let choices = DualityChoices::standard(table)?;
    let mut pairing = Vec::with_capacity(ring.rank());
    let mut pairing_mirror = Vec::with_capacity(ring.rank());
    for i in 0..ring.rank() {
        if seeds[i].is_zero() {
            return Err(DualityError::ZeroScalar);
        }
        let di = ring.dual(i);
        let e = MorphismScalar::new(table, vec![i, di], vec![], seeds[i].clone())?;
        let e_star = star_of_coev(table, &choices, &e.inverse(table)?)?;
        pairing.push(e);
        pairing_mirror.push(e_star);
    }
    let mut copairing = Vec::with_capacity(ring.rank());
    let mut copairing_mirror = Vec::with_capacity(ring.rank());
    for i in 0..ring.rank() {
        let di = ring.dual(i);
        copairing.push(gamma(table, &pairing[di], GammaDirection::EvToCoev)?);
        copairing_mirror.push(gamma(table, &pairing_mirror[di], GammaDirection::EvToCoev)?);
    }
    Ok(FrobeniusData { pairing, pairing_mirror, copairing, copairing_mirror })
}

/// Frobenius data with the default pairing coefficients coming from the
/// standard duality choices.
pub fn frobenius_data(table: &FSymbolTable) -> Result<FrobeniusData, DualityError> {
    let ring = table.ring();
    let choices = DualityChoices::standard(table)?;
    let seeds: Vec<Scalar> = (0..ring.rank())
        .map(|i| choices.ev(ring.dual(i)).clone())
        .collect();
    frobenius_data_with_seeds(table, &seeds)
}

/// The window element of the given Frobenius data: the sum over labels
/// of the paired contraction on both factors.
pub fn window_element_of(table: &FSymbolTable, data: &FrobeniusData) -> Scalar {
    let mut total = Scalar::zero(table.field());
    for i in 0..table.ring().rank() {
        let plain = data.pairing[i]
            .compose(table, &data.copairing[i])
            .expect("pairing against copairing is scalar shaped");
        let mirror = data.pairing_mirror[i]
            .compose(table, &data.copairing_mirror[i])
            .expect("pairing against copairing is scalar shaped");
        total = &total + &(plain.value() * mirror.value());
    }
    total
}

/// The window element of the default Frobenius data.
pub fn window_element(table: &FSymbolTable) -> Result<Scalar, DualityError> {
    Ok(window_element_of(table, &frobenius_data(table)?))
}

/// Snake on the label strand: (cap tensor id) after (id tensor cup),
/// with the cap on (i, dual i) and the cup on (dual i, i).
fn snake_straight(table: &FSymbolTable, i: Label, cap: &Scalar, cup: &Scalar) -> Scalar {
    &(cap * cup) * &left_snake_factor(table, i)
}

/// Snake on the dual strand: (id tensor cap) after (cup tensor id).
fn snake_dual(table: &FSymbolTable, i: Label, cap: &Scalar, cup: &Scalar) -> Scalar {
    &(cap * cup) * &right_snake_factor(table, table.ring().dual(i))
}

/// Verifies the snake identities of every pairing/copairing pair on both
/// factors, plus the counit normalization at the unit label.
pub fn frobenius_axioms_check(
    table: &FSymbolTable,
    data: &FrobeniusData,
) -> Result<(), FrobeniusError> {
    let ring = table.ring();
    for i in 0..ring.rank() {
        let di = ring.dual(i);
        let checks = [
            (FrobeniusAxiom::SnakeStraight, &data.pairing[i], &data.copairing[di]),
            (
                FrobeniusAxiom::MirrorSnakeStraight,
                &data.pairing_mirror[i],
                &data.copairing_mirror[di],
            ),
        ];
        for (axiom, cap, cup) in checks {
            if !snake_straight(table, i, cap.value(), cup.value()).is_one() {
                return Err(FrobeniusError::AxiomFailure { label: i, axiom });
            }
        }
        let dual_checks = [
            (FrobeniusAxiom::SnakeDual, &data.pairing[i], &data.copairing[di]),
            (
                FrobeniusAxiom::MirrorSnakeDual,
                &data.pairing_mirror[i],
                &data.copairing_mirror[di],
            ),
        ];
        for (axiom, cap, cup) in dual_checks {
            if !snake_dual(table, i, cap.value(), cup.value()).is_one() {
                return Err(FrobeniusError::AxiomFailure { label: i, axiom });
            }
        }
    }
    let u = ring.unit();
    let norm = data.pairing[u]
        .compose(table, &data.copairing[u])
        .map_err(FrobeniusError::Duality)?;
    let mirror_norm = data.pairing_mirror[u]
        .compose(table, &data.copairing_mirror[u])
        .map_err(FrobeniusError::Duality)?;
    if !(norm.value() * mirror_norm.value()).is_one() {
        return Err(FrobeniusError::AxiomFailure {
            label: u,
            axiom: FrobeniusAxiom::CounitNormalization,
        });
    }
    Ok(())
}

/// Separability verdict: the window element is the global dimension, and
/// the canonical algebra is separable exactly when it is nonzero in the
/// coefficient field.
#[derive(Debug, Clone, PartialEq)]
pub struct SeparabilityReport {
    pub dimension: Scalar,
    pub separable: bool,
}

pub fn separability_check(table: &FSymbolTable) -> Result<SeparabilityReport, DualityError> {
    let dimension = window_element(table)?;
    let separable = !dimension.is_zero();
    Ok(SeparabilityReport { dimension, separable })
}
