//! Dense univariate polynomials over [`Scalar`], used for exact limit
//! evaluation of product ratios with removable singularities.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Coefficients in increasing degree; normalized so the top coefficient is
/// nonzero (the zero polynomial has an empty coefficient vector).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UPoly(Vec<Scalar>);

impl UPoly {
    pub fn zero() -> Self {
        UPoly(Vec::new())
    }

    pub fn constant(c: Scalar) -> Self {
        UPoly::from_coeffs(vec![c])
    }

    pub fn one() -> Self {
        UPoly::constant(Scalar::one())
    }

    /// `c0 + c1 x`.
    pub fn linear(c0: Scalar, c1: Scalar) -> Self {
        UPoly::from_coeffs(vec![c0, c1])
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        UPoly(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn mul(&self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Scalar::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UPoly::from_coeffs(out)
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for c in self.0.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    /// Exact division by `(x - a)`; errors if the remainder is nonzero.
    pub fn div_linear_exact(&self, a: &Scalar) -> Result<UPoly> {
        if self.is_zero() {
            return Ok(UPoly::zero());
        }
        let mut out = vec![Scalar::zero(); self.0.len() - 1];
        let mut carry = Scalar::zero();
        for i in (0..self.0.len()).rev() {
            let c = &self.0[i] + &(&carry * a);
            if i == 0 {
                if !c.is_zero() {
                    return Err(Error::NonExactDivision(format!(
                        "remainder {c} dividing by (x - {a})"
                    )));
                }
            } else {
                out[i - 1] = c.clone();
                carry = c;
            }
        }
        Ok(UPoly::from_coeffs(out))
    }
}

/// A ratio of products of univariate polynomials, evaluated at a point after
/// cancelling common `(x - a)` factors.  This computes limits of the form
/// `lim_{x→a} N(x)/D(x)` exactly when the singularity is removable.
pub struct RatioLimit {
    num: UPoly,
    den: UPoly,
}

impl RatioLimit {
    pub fn new() -> Self {
        RatioLimit {
            num: UPoly::one(),
            den: UPoly::one(),
        }
    }

    pub fn mul_num(&mut self, p: UPoly) {
        self.num = self.num.mul(&p);
    }

    pub fn mul_den(&mut self, p: UPoly) {
        self.den = self.den.mul(&p);
    }

    /// Evaluates the ratio at `a`, removing matched zeros.
    pub fn limit_at(mut self, a: &Scalar) -> Result<Scalar> {
        loop {
            let nv = self.num.eval(a);
            let dv = self.den.eval(a);
            match (nv.is_zero(), dv.is_zero()) {
                (_, false) => return nv.checked_div(&dv),
                (true, true) => {
                    self.num = self.num.div_linear_exact(a)?;
                    self.den = self.den.div_linear_exact(a)?;
                }
                (false, true) => {
                    return Err(Error::DivisionByZero(format!(
                        "pole at {a} in ratio limit"
                    )))
                }
            }
        }
    }
}

impl Default for RatioLimit {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn division_by_root() {
        // (x^2 - 1)/(x - 1) = x + 1
        let p = UPoly::from_coeffs(vec![sc(-1, 1), sc(0, 1), sc(1, 1)]);
        let q = p.div_linear_exact(&sc(1, 1)).unwrap();
        assert_eq!(q, UPoly::from_coeffs(vec![sc(1, 1), sc(1, 1)]));
        assert!(p.div_linear_exact(&sc(2, 1)).is_err());
    }

    #[test]
    fn removable_singularity() {
        // lim_{x→3} (x^2 - 9)/(x - 3) = 6
        let mut r = RatioLimit::new();
        r.mul_num(UPoly::from_coeffs(vec![sc(-9, 1), sc(0, 1), sc(1, 1)]));
        r.mul_den(UPoly::linear(sc(-3, 1), sc(1, 1)));
        assert_eq!(r.limit_at(&sc(3, 1)).unwrap(), sc(6, 1));
    }

    #[test]
    fn plain_evaluation() {
        let mut r = RatioLimit::new();
        r.mul_num(UPoly::linear(sc(1, 1), sc(1, 1)));
        r.mul_den(UPoly::linear(sc(2, 1), sc(0, 1)));
        assert_eq!(r.limit_at(&sc(5, 1)).unwrap(), sc(3, 1));
    }
}
