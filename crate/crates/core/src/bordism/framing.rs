//! Framing classes of an interval in a fixed ambient dimension.
//!
//! For ambient dimension 2 the classes form the integers under
//! concatenation; for ambient dimension 3 and above only a parity remains.
//! The loop move is the class -1 in ambient dimension 2 and stabilizes to
//! the nontrivial parity class.

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FramingError {
    #[error("ambient dimension {0} is too small; framing classes need at least 2")]
    AmbientTooSmall(usize),
    #[error("cannot compose classes in ambient dimensions {0} and {1}")]
    MismatchedAmbient(usize, usize),
    #[error("cannot stabilize from ambient dimension {0} down to {1}")]
    StabilizeDown(usize, usize),
}

/// A framing class of the interval in `ambient` dimensions.  The stored
/// value is an arbitrary integer for `ambient == 2` and is kept reduced to
/// {0, 1} for `ambient >= 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FramingClass {
    ambient: usize,
    value: i64,
}

impl FramingClass {
    pub fn new(ambient: usize, value: i64) -> Result<Self, FramingError> {
        if ambient < 2 {
            return Err(FramingError::AmbientTooSmall(ambient));
        }
        let value = if ambient == 2 { value } else { value.rem_euclid(2) };
        Ok(FramingClass { ambient, value })
    }

    /// The class of the standard framing.
    pub fn identity(ambient: usize) -> Result<Self, FramingError> {
        FramingClass::new(ambient, 0)
    }

    /// The class of the loop move: -1 in ambient dimension 2, the
    /// nontrivial parity above.
    pub fn loop_class(ambient: usize) -> Result<Self, FramingError> {
        FramingClass::new(ambient, -1)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Reduced representative: any integer for ambient 2, otherwise 0 or 1.
    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn is_identity(&self) -> bool {
        self.value == 0
    }

    /// Concatenation of framed intervals; addition on representatives.
    pub fn compose(&self, other: &FramingClass) -> Result<Self, FramingError> {
        if self.ambient != other.ambient {
            return Err(FramingError::MismatchedAmbient(self.ambient, other.ambient));
        }
        FramingClass::new(self.ambient, self.value + other.value)
    }

    pub fn inverse(&self) -> Self {
        FramingClass::new(self.ambient, -self.value).expect("ambient already validated")
    }

    /// Push the class into a larger ambient dimension.
    pub fn stabilize(&self, ambient: usize) -> Result<Self, FramingError> {
        if ambient < self.ambient {
            return Err(FramingError::StabilizeDown(self.ambient, ambient));
        }
        FramingClass::new(ambient, self.value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ambient_two_is_the_integers() {
        let a = FramingClass::new(2, -1).unwrap();
        let b = a.compose(&a).unwrap();
        assert_eq!(b.value(), -2);
        assert_eq!(a.compose(&a.inverse()).unwrap(), FramingClass::identity(2).unwrap());
    }

    #[test]
    fn loop_stabilizes_to_the_nontrivial_class() {
        let l = FramingClass::loop_class(2).unwrap();
        assert_eq!(l.value(), -1);
        let s = l.stabilize(3).unwrap();
        assert_eq!(s.value(), 1);
        assert!(s.compose(&s).unwrap().is_identity());
    }

    #[test]
    fn compose_laws() {
        let x = FramingClass::new(2, 3).unwrap();
        let y = FramingClass::new(2, -5).unwrap();
        let z = FramingClass::new(2, 7).unwrap();
        let left = x.compose(&y).unwrap().compose(&z).unwrap();
        let right = x.compose(&y.compose(&z).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_eq!(x.compose(&y).unwrap(), y.compose(&x).unwrap());
    }

    #[test]
    fn errors() {
        assert_eq!(FramingClass::new(1, 0).unwrap_err(), FramingError::AmbientTooSmall(1));
        let a = FramingClass::new(2, 1).unwrap();
        let b = FramingClass::new(3, 1).unwrap();
        assert_eq!(a.compose(&b).unwrap_err(), FramingError::MismatchedAmbient(2, 3));
        assert_eq!(b.stabilize(2).unwrap_err(), FramingError::StabilizeDown(3, 2));
    }
}
