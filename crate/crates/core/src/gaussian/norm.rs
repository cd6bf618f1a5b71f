use crate::error::{Error, Result};
use crate::linalg::{schatten_norm, ComplexMatrix, Exponent};

/// First-level (Banach) norm of a space `E` whose elements are stored as
/// matrices of a fixed shape.
pub trait BanachNorm: Sync {
    fn element_shape(&self) -> (usize, usize);

    fn norm(&self, x: &ComplexMatrix) -> Result<f64>;

    /// True when the norm is the Frobenius norm of the stored entries, so
    /// gaussian second moments have the closed form `(Σ ‖x_k‖²)^½`.
    fn is_hilbertian(&self) -> bool {
        false
    }

    fn check_shape(&self, x: &ComplexMatrix) -> Result<()> {
        if x.shape() != self.element_shape() {
            return Err(Error::Shape(format!(
                "element is {}x{} but the space stores {:?}",
                x.rows(),
                x.cols(),
                self.element_shape()
            )));
        }
        Ok(())
    }
}

/// `S_p^{rows×cols}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SchattenNorm {
    pub rows: usize,
    pub cols: usize,
    pub p: Exponent,
}

impl SchattenNorm {
    pub fn square(n: usize, p: Exponent) -> Self {
        Self { rows: n, cols: n, p }
    }
}

impl BanachNorm for SchattenNorm {
    fn element_shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    fn norm(&self, x: &ComplexMatrix) -> Result<f64> {
        self.check_shape(x)?;
        schatten_norm(x, self.p)
    }

    fn is_hilbertian(&self) -> bool {
        self.p == Exponent::TWO
    }
}

/// `ℓ₂` over the entries.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EuclideanNorm {
    pub rows: usize,
    pub cols: usize,
}

impl BanachNorm for EuclideanNorm {
    fn element_shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    fn norm(&self, x: &ComplexMatrix) -> Result<f64> {
        self.check_shape(x)?;
        Ok(x.frobenius_norm())
    }

    fn is_hilbertian(&self) -> bool {
        true
    }
}

/// `ℓ_∞` over the entries (the space `c₀` on `rows·cols` coordinates).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SupNorm {
    pub rows: usize,
    pub cols: usize,
}

impl BanachNorm for SupNorm {
    fn element_shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    fn norm(&self, x: &ComplexMatrix) -> Result<f64> {
        self.check_shape(x)?;
        Ok(x.max_abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shapes_are_checked() {
        let s = SchattenNorm::square(3, Exponent::INF);
        assert!(s.norm(&ComplexMatrix::identity(2)).is_err());
        assert!((s.norm(&ComplexMatrix::identity(3)).unwrap() - 1.0).abs() < 1e-14);
        assert!(SchattenNorm::square(3, Exponent::TWO).is_hilbertian());
        assert!(!SupNorm { rows: 2, cols: 1 }.is_hilbertian());
    }
}
