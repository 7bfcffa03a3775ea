//! Multiplicity-free fusion rings: a finite label set with unit, duality
//! involution, and fusion coefficients N_{ij}^k in {0,1} satisfying the unit,
//! duality, and associativity axioms.

use std::fmt;

/// Index of a simple label inside a ring.
pub type Label = usize;

/// Pinned tolerance for the floating Frobenius-Perron iteration.
pub const FP_TOLERANCE: f64 = 1e-10;

const FP_MAX_ITERS: usize = 200_000;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum RingError {
    #[error("rank must be at least 1")]
    EmptyRing,
    #[error("label name {0:?} appears twice")]
    DuplicateName(String),
    #[error("unit index {0} out of range")]
    UnitOutOfRange(Label),
    #[error("dual table has wrong length or an out-of-range entry at {0}")]
    DualOutOfRange(Label),
    #[error("fusion coefficient at ({i},{j},{k}) is {value}, outside {{0,1}}")]
    NotMultiplicityFree { i: Label, j: Label, k: Label, value: u8 },
    #[error("unit axiom fails at ({i},{j},{k}): N with the unit is not the identity pairing")]
    UnitLaw { i: Label, j: Label, k: Label },
    #[error("duality involution fails at {0}: dual(dual(i)) != i")]
    DualInvolution(Label),
    #[error("duality pairing fails at ({i},{j}): N_(i,j)^unit should be 1 exactly when j = dual(i)")]
    DualPairing { i: Label, j: Label },
    #[error("associativity fails at ({i},{j},{k},{l})")]
    Associativity { i: Label, j: Label, k: Label, l: Label },
    #[error("group table is not square or has an out-of-range entry in row {0}")]
    GroupBadTable(usize),
    #[error("group table has no two-sided identity")]
    GroupNoIdentity,
    #[error("group element {0} has no inverse")]
    GroupNoInverse(usize),
    #[error("group multiplication is not associative at ({0},{1},{2})")]
    GroupNotAssociative(usize, usize, usize),
}

/// A validated multiplicity-free fusion ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing {
    names: Vec<String>,
    unit: Label,
    dual: Vec<Label>,
    // flattened |i,j,k| -> N_{ij}^k
    n: Vec<bool>,
}

impl FusionRing {
    /// Builds and fully validates a ring from raw coefficients.
    ///
    /// `coeffs` lists N_{ij}^k flattened as i*rank*rank + j*rank + k. The
    /// axioms are checked in a fixed order (coefficient range, unit law,
    /// duality involution, duality pairing, associativity), each scanning
    /// index tuples lexicographically, and the first violation is reported
    /// with its witness tuple.
    pub fn new(
        names: Vec<String>,
        unit: Label,
        dual: Vec<Label>,
        coeffs: &[u8],
    ) -> Result<FusionRing, RingError> {
        let rank = names.len();
        if rank == 0 {
            return Err(RingError::EmptyRing);
        }
        for (idx, name) in names.iter().enumerate() {
            if names[..idx].contains(name) {
                return Err(RingError::DuplicateName(name.clone()));
            }
        }
        if unit >= rank {
            return Err(RingError::UnitOutOfRange(unit));
        }
        if dual.len() != rank {
            return Err(RingError::DualOutOfRange(dual.len()));
        }
        if let Some(i) = dual.iter().position(|&d| d >= rank) {
            return Err(RingError::DualOutOfRange(i));
        }
        assert_eq!(coeffs.len(), rank * rank * rank, "coefficient table shape");
        let mut n = vec![false; rank * rank * rank];
        for i in 0..rank {
            for j in 0..rank {
                for k in 0..rank {
                    let v = coeffs[(i * rank + j) * rank + k];
                    if v > 1 {
                        return Err(RingError::NotMultiplicityFree { i, j, k, value: v });
                    }
                    n[(i * rank + j) * rank + k] = v == 1;
                }
            }
        }
        let ring = FusionRing { names, unit, dual, n };
        ring.validate()?;
        Ok(ring)
    }

    fn validate(&self) -> Result<(), RingError> {
        let r = self.rank();
        let u = self.unit;
        for i in 0..r {
            for k in 0..r {
                if self.n(u, i, k) != (i == k) {
                    return Err(RingError::UnitLaw { i: u, j: i, k });
                }
                if self.n(i, u, k) != (i == k) {
                    return Err(RingError::UnitLaw { i, j: u, k });
                }
            }
        }
        for i in 0..r {
            if self.dual[self.dual[i]] != i {
                return Err(RingError::DualInvolution(i));
            }
        }
        for i in 0..r {
            for j in 0..r {
                if self.n(i, j, u) != (j == self.dual[i]) {
                    return Err(RingError::DualPairing { i, j });
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    for l in 0..r {
                        let lhs: u32 = (0..r)
                            .map(|e| (self.n(i, j, e) && self.n(e, k, l)) as u32)
                            .sum();
                        let rhs: u32 = (0..r)
                            .map(|f| (self.n(j, k, f) && self.n(i, f, l)) as u32)
                            .sum();
                        if lhs != rhs {
                            return Err(RingError::Associativity { i, j, k, l });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn unit(&self) -> Label {
        self.unit
    }

    pub fn dual(&self, i: Label) -> Label {
        self.dual[i]
    }

    pub fn name(&self, i: Label) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn label_by_name(&self, name: &str) -> Option<Label> {
        self.names.iter().position(|n| n == name)
    }

    /// The fusion coefficient N_{ij}^k as a boolean.
    pub fn n(&self, i: Label, j: Label, k: Label) -> bool {
        self.n[(i * self.rank() + j) * self.rank() + k]
    }

    /// Labels appearing in the product of i and j, in index order.
    pub fn fusion(&self, i: Label, j: Label) -> Vec<Label> {
        (0..self.rank()).filter(|&k| self.n(i, j, k)).collect()
    }

    /// True when the splitting space from k into (i, j) is nonzero.
    pub fn admissible(&self, i: Label, j: Label, k: Label) -> bool {
        self.n(i, j, k)
    }

    /// All admissible triples (i, j, k) in lexicographic order.
    pub fn admissible_triples(&self) -> Vec<(Label, Label, Label)> {
        let r = self.rank();
        let mut out = Vec::new();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    if self.n(i, j, k) {
                        out.push((i, j, k));
                    }
                }
            }
        }
        out
    }
}

impl fmt::Display for FusionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fusion ring of rank {} on {{{}}}", self.rank(), self.names.join(", "))
    }
}

/// Builds the pointed fusion ring of a finite group given by its
/// multiplication table (`table[a][b]` is the product ab). The group axioms
/// are checked first and violations are reported with witnesses.
pub fn ring_from_group(table: &[Vec<usize>]) -> Result<FusionRing, RingError> {
    let n = table.len();
    if n == 0 {
        return Err(RingError::EmptyRing);
    }
    for (a, row) in table.iter().enumerate() {
        if row.len() != n || row.iter().any(|&x| x >= n) {
            return Err(RingError::GroupBadTable(a));
        }
    }
    let mut identity = None;
    'search: for e in 0..n {
        for g in 0..n {
            if table[e][g] != g || table[g][e] != g {
                continue 'search;
            }
        }
        identity = Some(e);
        break;
    }
    let e = identity.ok_or(RingError::GroupNoIdentity)?;
    let mut inv = vec![None; n];
    for g in 0..n {
        for h in 0..n {
            if table[g][h] == e && table[h][g] == e {
                inv[g] = Some(h);
            }
        }
        if inv[g].is_none() {
            return Err(RingError::GroupNoInverse(g));
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(RingError::GroupNotAssociative(a, b, c));
                }
            }
        }
    }
    let names: Vec<String> = (0..n)
        .map(|g| if g == e { "1".to_string() } else { format!("g{g}") })
        .collect();
    let dual: Vec<Label> = inv.into_iter().map(|h| h.unwrap()).collect();
    let mut coeffs = vec![0u8; n * n * n];
    for a in 0..n {
        for b in 0..n {
            coeffs[(a * n + b) * n + table[a][b]] = 1;
        }
    }
    FusionRing::new(names, e, dual, &coeffs)
}

/// Frobenius-Perron dimension of a label: the spectral radius of its fusion
/// matrix, by power iteration from the all-ones vector. A unit shift keeps
/// the iteration aperiodic; the stopping tolerance is `FP_TOLERANCE`.
pub fn fp_dimension(ring: &FusionRing, i: Label) -> f64 {
    let r = ring.rank();
    let mut v = vec![1.0f64; r];
    let mut lambda_prev = f64::NAN;
    for _ in 0..FP_MAX_ITERS {
        // w = (I + N_i) v
        let mut w = v.clone();
        for j in 0..r {
            for k in 0..r {
                if ring.n(i, j, k) {
                    w[k] += v[j];
                }
            }
        }
        let norm_v: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        let norm_w: f64 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        let lambda = norm_w / norm_v - 1.0;
        for x in w.iter_mut() {
            *x /= norm_w;
        }
        v = w;
        if (lambda - lambda_prev).abs() < FP_TOLERANCE {
            return lambda;
        }
        lambda_prev = lambda;
    }
    lambda_prev
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fib_ring() -> FusionRing {
        // labels 1, tau with tau tensor tau = 1 + tau
        let mut c = vec![0u8; 8];
        let idx = |i: usize, j: usize, k: usize| (i * 2 + j) * 2 + k;
        c[idx(0, 0, 0)] = 1;
        c[idx(0, 1, 1)] = 1;
        c[idx(1, 0, 1)] = 1;
        c[idx(1, 1, 0)] = 1;
        c[idx(1, 1, 1)] = 1;
        FusionRing::new(
            vec!["1".into(), "tau".into()],
            0,
            vec![0, 1],
            &c,
        )
        .unwrap()
    }

    #[test]
    fn fibonacci_ring_is_valid() {
        let r = fib_ring();
        assert_eq!(r.fusion(1, 1), vec![0, 1]);
        assert!(r.admissible(1, 1, 1));
    }

    #[test]
    fn duality_violation_reports_witness() {
        let mut c = vec![0u8; 8];
        let idx = |i: usize, j: usize, k: usize| (i * 2 + j) * 2 + k;
        c[idx(0, 0, 0)] = 1;
        c[idx(0, 1, 1)] = 1;
        c[idx(1, 0, 1)] = 1;
        // N_(tau,tau)^1 missing
        c[idx(1, 1, 1)] = 1;
        let err = FusionRing::new(vec!["1".into(), "tau".into()], 0, vec![0, 1], &c)
            .unwrap_err();
        assert_eq!(err, RingError::DualPairing { i: 1, j: 1 });
    }

    #[test]
    fn associativity_violation_reports_witness() {
        // rank 3 pointed Z/3 with one coefficient moved
        let n = 3;
        let mut c = vec![0u8; 27];
        let idx = |i: usize, j: usize, k: usize| (i * n + j) * n + k;
        for a in 0..n {
            for b in 0..n {
                c[idx(a, b, (a + b) % n)] = 1;
            }
        }
        c[idx(1, 1, 2)] = 0;
        c[idx(1, 1, 1)] = 1;
        // (g g) h contains the unit through g g = g, but g (g h) = g 1 = g
        // does not, so the first quadruple in scan order is (g, g, h, 1)
        let err =
            FusionRing::new(vec!["1".into(), "g".into(), "h".into()], 0, vec![0, 2, 1], &c)
                .unwrap_err();
        assert_eq!(err, RingError::Associativity { i: 1, j: 1, k: 2, l: 0 });
    }

    #[test]
    fn multiplicity_bound_is_enforced() {
        let c = vec![2u8];
        let err = FusionRing::new(vec!["1".into()], 0, vec![0], &c).unwrap_err();
        assert_eq!(err, RingError::NotMultiplicityFree { i: 0, j: 0, k: 0, value: 2 });
    }

    #[test]
    fn group_rings() {
        let z2 = ring_from_group(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(z2.rank(), 2);
        assert_eq!(z2.dual(1), 1);
        let broken = ring_from_group(&[vec![0, 1], vec![1, 1]]);
        assert!(matches!(broken, Err(RingError::GroupNoIdentity | RingError::GroupNoInverse(_))));
        let nonassoc = ring_from_group(&[
            vec![0, 1, 2],
            vec![1, 2, 0],
            vec![2, 1, 0],
        ]);
        assert!(nonassoc.is_err());
    }

    #[test]
    fn fp_dimensions() {
        let z2 = ring_from_group(&[vec![0, 1], vec![1, 0]]).unwrap();
        assert!((fp_dimension(&z2, 1) - 1.0).abs() < 1e-9);
        let fib = fib_ring();
        assert!((fp_dimension(&fib, 1) - 1.618_033_988_749_895).abs() < 1e-9);
    }
}
