//! Truncated formal power series with scalar or Laurent-polynomial
//! coefficients, for the identities that are stated as series expansions.

use crate::bcpoly::BcPoly;
use crate::error::Result;
use crate::scalar::{qpoch, Scalar};

/// `Σ_{k<=order} c_k u^k` with scalar coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarSeries {
    pub coeffs: Vec<Scalar>,
}

impl ScalarSeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn constant(c: Scalar, order: usize) -> Self {
        let mut coeffs = vec![Scalar::zero(); order + 1];
        coeffs[0] = c;
        ScalarSeries { coeffs }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Scalar::one(), order)
    }

    pub fn mul(&self, other: &ScalarSeries) -> ScalarSeries {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Scalar::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                coeffs[i + j] += &(a * b);
            }
        }
        ScalarSeries { coeffs }
    }

    /// `1/(1 - z u)` truncated.
    pub fn geometric(z: &Scalar, order: usize) -> ScalarSeries {
        let mut coeffs = Vec::with_capacity(order + 1);
        let mut acc = Scalar::one();
        for _ in 0..=order {
            coeffs.push(acc.clone());
            acc *= z;
        }
        ScalarSeries { coeffs }
    }

    /// `(a w u; q)_∞ / (b w u; q)_∞ = Σ_k (b w u)^k (a/b; q)_k / (q; q)_k`
    /// truncated; requires `b ≠ 0`.
    pub fn qpoch_ratio(a: &Scalar, b: &Scalar, w: &Scalar, q: &Scalar, order: usize) -> Result<ScalarSeries> {
        let ratio = a.checked_div(b)?;
        let mut coeffs = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let num = qpoch(&ratio, q, k as i64)?;
            let den = qpoch(q, q, k as i64)?;
            let c = &(b * w).pow(k as i64)? * &num.checked_div(&den)?;
            coeffs.push(c);
        }
        Ok(ScalarSeries { coeffs })
    }

    /// `(z u^j; q)_∞ = Σ_k (-z)^k q^{k(k-1)/2} u^{jk} / (q;q)_k` truncated
    /// (Euler), with the power of `u` carried by each term being `j`.
    pub fn qpoch_inf(z: &Scalar, step: usize, q: &Scalar, order: usize) -> Result<ScalarSeries> {
        let mut coeffs = vec![Scalar::zero(); order + 1];
        let mut k = 0usize;
        loop {
            let pow = k * step;
            if pow > order {
                break;
            }
            let sign = if k % 2 == 0 { Scalar::one() } else { -Scalar::one() };
            let num = &sign * &(&z.pow(k as i64)? * &q.pow((k as i64 * (k as i64 - 1)) / 2)?);
            coeffs[pow] = num.checked_div(&qpoch(q, q, k as i64)?)?;
            k += 1;
        }
        Ok(ScalarSeries { coeffs })
    }

    /// `1/(z u^j; q)_∞ = Σ_k z^k u^{jk} / (q;q)_k` truncated.
    pub fn qpoch_inf_inv(z: &Scalar, step: usize, q: &Scalar, order: usize) -> Result<ScalarSeries> {
        let mut coeffs = vec![Scalar::zero(); order + 1];
        let mut k = 0usize;
        loop {
            let pow = k * step;
            if pow > order {
                break;
            }
            coeffs[pow] = z.pow(k as i64)?.checked_div(&qpoch(q, q, k as i64)?)?;
            k += 1;
        }
        Ok(ScalarSeries { coeffs })
    }

    pub fn scale(&self, c: &Scalar) -> ScalarSeries {
        ScalarSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Multiplication by `u^k` (drops overflow beyond the order).
    pub fn shift(&self, k: usize) -> ScalarSeries {
        let mut coeffs = vec![Scalar::zero(); self.coeffs.len()];
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k < coeffs.len() {
                coeffs[i + k] = c.clone();
            }
        }
        ScalarSeries { coeffs }
    }
}

/// `Σ_{k<=order} C_k u^k` with Laurent-polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySeries {
    pub coeffs: Vec<BcPoly>,
}

impl PolySeries {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn constant(p: BcPoly, order: usize) -> Self {
        let n = p.n_vars();
        let mut coeffs = vec![BcPoly::zero(n); order + 1];
        coeffs[0] = p;
        PolySeries { coeffs }
    }

    pub fn one(n: usize, order: usize) -> Self {
        Self::constant(BcPoly::one(n), order)
    }

    pub fn zero(n: usize, order: usize) -> Self {
        PolySeries {
            coeffs: vec![BcPoly::zero(n); order + 1],
        }
    }

    pub fn add(&self, other: &PolySeries) -> PolySeries {
        let order = self.order().min(other.order());
        PolySeries {
            coeffs: (0..=order)
                .map(|i| self.coeffs[i].add(&other.coeffs[i]))
                .collect(),
        }
    }

    pub fn mul(&self, other: &PolySeries) -> PolySeries {
        let order = self.order().min(other.order());
        let n = self.coeffs[0].n_vars();
        let mut coeffs = vec![BcPoly::zero(n); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&self.coeffs[i].mul(&other.coeffs[j]));
            }
        }
        PolySeries { coeffs }
    }

    pub fn mul_scalar_series(&self, other: &ScalarSeries) -> PolySeries {
        let order = self.order().min(other.order());
        let n = self.coeffs[0].n_vars();
        let mut coeffs = vec![BcPoly::zero(n); order + 1];
        for i in 0..=order {
            for j in 0..=(order - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&self.coeffs[i].scale(&other.coeffs[j]));
            }
        }
        PolySeries { coeffs }
    }

    pub fn mul_poly(&self, p: &BcPoly) -> PolySeries {
        PolySeries {
            coeffs: self.coeffs.iter().map(|c| c.mul(p)).collect(),
        }
    }

    /// Per-variable expansion of `(a x_i^ε u; q)_∞ / (b x_i^ε u; q)_∞` as a
    /// series with monomial coefficients, for one variable index and
    /// exponent sign.
    pub fn qpoch_ratio_var(
        n: usize,
        var: usize,
        eps: i64,
        a: &Scalar,
        b: &Scalar,
        q: &Scalar,
        order: usize,
    ) -> Result<PolySeries> {
        let ratio = a.checked_div(b)?;
        let mut coeffs = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let num = qpoch(&ratio, q, k as i64)?;
            let den = qpoch(q, q, k as i64)?;
            let c = &b.pow(k as i64)? * &num.checked_div(&den)?;
            let mut exps = vec![0i64; n];
            exps[var] = eps * k as i64;
            coeffs.push(BcPoly::monomial(n, exps, c));
        }
        Ok(PolySeries { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    #[test]
    fn qpoch_ratio_times_inverse_is_one() {
        // (au;q)/(bu;q) · (bu;q)/(au;q) = 1
        let (a, b, q) = (sc(2, 3), sc(5, 7), sc(1, 4));
        let w = Scalar::one();
        let f = ScalarSeries::qpoch_ratio(&a, &b, &w, &q, 8).unwrap();
        let g = ScalarSeries::qpoch_ratio(&b, &a, &w, &q, 8).unwrap();
        assert_eq!(f.mul(&g), ScalarSeries::one(8));
    }

    #[test]
    fn euler_product_inverse() {
        let (z, q) = (sc(3, 5), sc(1, 3));
        let f = ScalarSeries::qpoch_inf(&z, 1, &q, 10).unwrap();
        let g = ScalarSeries::qpoch_inf_inv(&z, 1, &q, 10).unwrap();
        assert_eq!(f.mul(&g), ScalarSeries::one(10));
    }

    #[test]
    fn geometric_matches_qpoch_ratio_at_t_eq_q() {
        // (qzu;q)/(zu;q) = 1/(1 - zu)
        let (z, q) = (sc(2, 7), sc(1, 5));
        let f = ScalarSeries::qpoch_ratio(&(&q * &z), &z, &Scalar::one(), &q, 6).unwrap();
        assert_eq!(f, ScalarSeries::geometric(&z, 6));
    }
}
