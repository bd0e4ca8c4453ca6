//! Exact rational scalars, parameter contexts, q-Pochhammer symbols, and
//! guarded random specializations.
//!
//! Every quantity in this crate lives in the field of rationals.  Square
//! roots never appear: any parameter that occurs under a square root
//! elsewhere (`√q`, `√t`, the Koornwinder `tᵢ`) is supplied as an exact
//! *half-parameter* whose square is the full parameter.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An exact rational number in lowest terms with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(BigRational);

impl Scalar {
    pub fn zero() -> Self {
        Scalar(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den`; panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero("inverse of zero".into()));
        }
        Ok(Scalar(self.0.recip()))
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Scalar> {
        if e == 0 {
            return Ok(Scalar::one());
        }
        if self.is_zero() {
            if e < 0 {
                return Err(Error::DivisionByZero("negative power of zero".into()));
            }
            return Ok(Scalar::zero());
        }
        let abs = i32::try_from(e.unsigned_abs())
            .map_err(|_| Error::ParseError(format!("exponent {e} out of range")))?;
        let p = self.0.pow(abs);
        Ok(if e < 0 {
            Scalar(p.recip())
        } else {
            Scalar(p)
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero(format!("{} / 0", self)));
        }
        Ok(Scalar(&self.0 / &rhs.0))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses `"p"` or `"p/q"` with arbitrary-precision integers.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_int = |t: &str| -> Result<BigInt> {
            t.trim()
                .parse::<BigInt>()
                .map_err(|_| Error::ParseError(format!("bad integer {t:?}")))
        };
        match s.split_once('/') {
            None => Ok(Scalar(BigRational::from_integer(parse_int(s)?))),
            Some((num, den)) => {
                let den = parse_int(den)?;
                if den.is_zero() {
                    return Err(Error::ParseError(format!("zero denominator in {s:?}")));
                }
                Ok(Scalar(BigRational::new(parse_int(num)?, den)))
            }
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(|e| D::Error::custom(format!("{e}")))
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl std::ops::$trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(self.0 $op rhs.0)
            }
        }
        impl std::ops::$trait<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(&self.0 $op &rhs.0)
            }
        }
        impl std::ops::$trait<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar(self.0 $op &rhs.0)
            }
        }
        impl std::ops::$trait<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                Scalar(&self.0 $op rhs.0)
            }
        }
    };
}

scalar_binop!(Add, add, +);
scalar_binop!(Sub, sub, -);
scalar_binop!(Mul, mul, *);

impl std::ops::Div for Scalar {
    type Output = Scalar;
    fn div(self, rhs: Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "scalar division by zero");
        Scalar(self.0 / rhs.0)
    }
}

impl std::ops::Div<&Scalar> for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        assert!(!rhs.is_zero(), "scalar division by zero");
        Scalar(&self.0 / &rhs.0)
    }
}

impl std::ops::Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-&self.0)
    }
}

impl std::ops::AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.0 = &self.0 + &rhs.0;
    }
}

impl std::ops::SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.0 = &self.0 - &rhs.0;
    }
}

impl std::ops::MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        self.0 = &self.0 * &rhs.0;
    }
}

/// The q-Pochhammer symbol `(a;q)_k`.
///
/// For `k >= 0` this is `∏_{0<=i<k} (1 - a q^i)`; for `k < 0` it is
/// `1/(a q^k; q)_{-k}`, which requires every factor of that product to be
/// nonzero.
pub fn qpoch(a: &Scalar, q: &Scalar, k: i64) -> Result<Scalar> {
    if k >= 0 {
        let mut acc = Scalar::one();
        let mut aq = a.clone();
        for _ in 0..k {
            acc *= &(Scalar::one() - &aq);
            aq *= q;
        }
        Ok(acc)
    } else {
        let shifted = &(a * &q.pow(k)?);
        let denom = qpoch(shifted, q, -k)?;
        if denom.is_zero() {
            return Err(Error::DivisionByZero(format!(
                "vanishing factor in ({a};{q})_{k}"
            )));
        }
        denom.inv()
    }
}

/// Product of `qpoch` over several first arguments.
pub fn multi_qpoch(bases: &[Scalar], q: &Scalar, k: i64) -> Result<Scalar> {
    let mut acc = Scalar::one();
    for a in bases {
        acc *= &qpoch(a, q, k)?;
    }
    Ok(acc)
}

/// Immutable parameter context.
///
/// Holds the half-parameters `q½`, `t½`, `r₀..r₃` (with `tᵢ = rᵢ²`), the
/// auxiliary parameters `s`, `T`, `Q`, and a map of named free parameters.
/// Derived quantities (`q`, `t`, `tᵢ`, `t̂₀ = r₀r₁r₂r₃/q½`, `√(qt)`) are
/// computed once at construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    q_half: Scalar,
    t_half: Scalar,
    s: Scalar,
    cap_t: Scalar,
    cap_q: Scalar,
    r: [Scalar; 4],
    free: BTreeMap<String, Scalar>,
    // derived
    q: Scalar,
    t: Scalar,
    tt: [Scalar; 4],
    t_hat0: Scalar,
    sqrt_qt: Scalar,
}

impl Params {
    pub fn builder() -> ParamsBuilder {
        ParamsBuilder::default()
    }

    pub fn q(&self) -> &Scalar {
        &self.q
    }
    pub fn t(&self) -> &Scalar {
        &self.t
    }
    pub fn q_half(&self) -> &Scalar {
        &self.q_half
    }
    pub fn t_half(&self) -> &Scalar {
        &self.t_half
    }
    pub fn s(&self) -> &Scalar {
        &self.s
    }
    /// The symmetric-function parameter `T`.
    pub fn cap_t(&self) -> &Scalar {
        &self.cap_t
    }
    /// The virtual-polynomial parameter `Q`.
    pub fn cap_q(&self) -> &Scalar {
        &self.cap_q
    }
    pub fn r(&self, i: usize) -> &Scalar {
        &self.r[i]
    }
    /// Koornwinder parameter `tᵢ = rᵢ²`.
    pub fn t_i(&self, i: usize) -> &Scalar {
        &self.tt[i]
    }
    /// `t̂₀ = r₀r₁r₂r₃/q½`, the exact square root of `t₀t₁t₂t₃/q`.
    pub fn t_hat0(&self) -> &Scalar {
        &self.t_hat0
    }
    /// `√(qt) = q½ t½`.
    pub fn sqrt_qt(&self) -> &Scalar {
        &self.sqrt_qt
    }
    pub fn free(&self, name: &str) -> Option<&Scalar> {
        self.free.get(name)
    }
    pub fn free_params(&self) -> &BTreeMap<String, Scalar> {
        &self.free
    }

    /// True iff `1 - qⁱtʲ ≠ 0` for all `0 <= i <= imax`, `0 <= j <=
    /// jmax` with `(i,j) ≠ (0,0)`, and all stored parameters are nonzero.
    pub fn genericity_check(&self, imax: u32, jmax: u32) -> bool {
        let nonzero = [&self.q, &self.t, &self.s, &self.cap_t, &self.cap_q]
            .into_iter()
            .chain(self.tt.iter())
            .chain(self.free.values())
            .all(|v| !v.is_zero());
        if !nonzero {
            return false;
        }
        let mut qi = Scalar::one();
        for i in 0..=imax {
            let mut qitj = qi.clone();
            for j in 0..=jmax {
                if (i, j) != (0, 0) && qitj.is_one() {
                    return false;
                }
                qitj *= &self.t;
            }
            qi *= &self.q;
        }
        true
    }
}

/// Builder for [`Params`]; unset fields default to distinct small rationals
/// that pass the usual genericity bounds.
#[derive(Clone, Debug)]
pub struct ParamsBuilder {
    q_half: Scalar,
    t_half: Scalar,
    s: Scalar,
    cap_t: Scalar,
    cap_q: Scalar,
    r: [Scalar; 4],
    free: BTreeMap<String, Scalar>,
}

impl Default for ParamsBuilder {
    fn default() -> Self {
        ParamsBuilder {
            q_half: Scalar::ratio(1, 2),
            t_half: Scalar::ratio(1, 3),
            s: Scalar::from_int(5),
            cap_t: Scalar::ratio(2, 7),
            cap_q: Scalar::ratio(3, 5),
            r: [
                Scalar::ratio(2, 3),
                Scalar::ratio(3, 5),
                Scalar::ratio(5, 7),
                Scalar::ratio(7, 4),
            ],
            free: BTreeMap::new(),
        }
    }
}

impl ParamsBuilder {
    pub fn q_half(mut self, v: Scalar) -> Self {
        self.q_half = v;
        self
    }
    pub fn t_half(mut self, v: Scalar) -> Self {
        self.t_half = v;
        self
    }
    pub fn s(mut self, v: Scalar) -> Self {
        self.s = v;
        self
    }
    pub fn cap_t(mut self, v: Scalar) -> Self {
        self.cap_t = v;
        self
    }
    pub fn cap_q(mut self, v: Scalar) -> Self {
        self.cap_q = v;
        self
    }
    pub fn r(mut self, i: usize, v: Scalar) -> Self {
        self.r[i] = v;
        self
    }
    pub fn free(mut self, name: &str, v: Scalar) -> Self {
        self.free.insert(name.to_string(), v);
        self
    }

    pub fn build(self) -> Result<Params> {
        let q = &self.q_half * &self.q_half;
        let t = &self.t_half * &self.t_half;
        for (name, v) in [("q", &q), ("t", &t)] {
            if v.is_zero() || v.is_one() {
                return Err(Error::DegenerateParameters(format!("{name} = {v}")));
            }
        }
        let tt = [
            &self.r[0] * &self.r[0],
            &self.r[1] * &self.r[1],
            &self.r[2] * &self.r[2],
            &self.r[3] * &self.r[3],
        ];
        if self.q_half.is_zero() {
            return Err(Error::DegenerateParameters("q_half = 0".into()));
        }
        let t_hat0 = &(&(&self.r[0] * &self.r[1]) * &self.r[2]) * &(&self.r[3] / &self.q_half);
        let sqrt_qt = &self.q_half * &self.t_half;
        Ok(Params {
            q_half: self.q_half,
            t_half: self.t_half,
            s: self.s,
            cap_t: self.cap_t,
            cap_q: self.cap_q,
            r: self.r,
            free: self.free,
            q,
            t,
            tt,
            t_hat0,
            sqrt_qt,
        })
    }
}

/// Deterministic source of guarded random rationals and parameter contexts.
///
/// Draws numerators and denominators from `1..=9` (with random sign for the
/// numerator), rejecting zeros; parameter contexts are re-drawn until
/// [`Params::genericity_check`] passes at the configured bounds.  Draw `i`
/// from seed `s` is reproducible as `(s, i)`.
pub struct SpecSampler {
    seed: u64,
    index: u64,
}

impl SpecSampler {
    pub fn new(seed: u64) -> Self {
        SpecSampler { seed, index: 0 }
    }

    fn rng_for(seed: u64, index: u64) -> StdRng {
        // splitmix64 over (seed, index) so parallel consumers can re-derive
        // any draw independently.
        let mut z = seed ^ index.wrapping_mul(0x9e3779b97f4a7c15);
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        StdRng::seed_from_u64(z ^ (z >> 31))
    }

    /// A nonzero rational with `|num|, den <= 9`.
    pub fn draw_scalar(&mut self) -> Scalar {
        let mut rng = Self::rng_for(self.seed, self.bump());
        loop {
            let num: i64 = rng.gen_range(-9..=9);
            let den: i64 = rng.gen_range(1..=9);
            if num != 0 {
                return Scalar::ratio(num, den);
            }
        }
    }

    fn bump(&mut self) -> u64 {
        let i = self.index;
        self.index += 1;
        i
    }

    fn draw_half(rng: &mut StdRng) -> Scalar {
        loop {
            let num: i64 = rng.gen_range(-9..=9);
            let den: i64 = rng.gen_range(1..=9);
            if num != 0 && num.unsigned_abs() != den.unsigned_abs() {
                return Scalar::ratio(num, den);
            }
        }
    }

    /// A parameter context passing `genericity_check(imax, jmax)`, with the
    /// named free parameters populated.
    pub fn draw_params(&mut self, imax: u32, jmax: u32, free_names: &[&str]) -> Params {
        loop {
            let mut rng = Self::rng_for(self.seed, self.bump());
            let mut b = ParamsBuilder::default()
                .q_half(Self::draw_half(&mut rng))
                .t_half(Self::draw_half(&mut rng))
                .s(Self::draw_half(&mut rng))
                .cap_t(Self::draw_half(&mut rng))
                .cap_q(Self::draw_half(&mut rng));
            for i in 0..4 {
                b = b.r(i, Self::draw_half(&mut rng));
            }
            for name in free_names {
                b = b.free(name, Self::draw_half(&mut rng));
            }
            let Ok(p) = b.build() else { continue };
            if p.genericity_check(imax, jmax) {
                return p;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sc(num: i64, den: i64) -> Scalar {
        Scalar::ratio(num, den)
    }

    #[test]
    fn qpoch_empty_product_is_one() {
        assert_eq!(
            qpoch(&sc(7, 3), &sc(1, 2), 0).unwrap(),
            Scalar::one()
        );
    }

    #[test]
    fn qpoch_small_products() {
        // (1/3;1/2)_2 = (2/3)(5/6) = 5/9
        assert_eq!(qpoch(&sc(1, 3), &sc(1, 2), 2).unwrap(), sc(5, 9));
        // (q;q)_2 at q = 2: (1-2)(1-4) = 3
        assert_eq!(qpoch(&sc(2, 1), &sc(2, 1), 2).unwrap(), sc(3, 1));
    }

    #[test]
    fn qpoch_negative_index() {
        // (a;q)_{-n} = 1/(a q^{-n};q)_n
        let a = sc(3, 1);
        let q = sc(1, 2);
        let direct = qpoch(&(&a * &q.pow(-2).unwrap()), &q, 2).unwrap().inv().unwrap();
        assert_eq!(qpoch(&a, &q, -2).unwrap(), direct);
    }

    #[test]
    fn qpoch_negative_index_vanishing_factor_errors() {
        // a q^{-1} = 1 makes the factor vanish
        assert!(qpoch(&sc(1, 2), &sc(1, 2), -1).is_err());
    }

    #[test]
    fn multi_qpoch_cases() {
        let q = sc(1, 2);
        assert_eq!(multi_qpoch(&[], &q, 3).unwrap(), Scalar::one());
        assert_eq!(
            multi_qpoch(&[sc(2, 1), sc(3, 1)], &q, 1).unwrap(),
            sc(2, 1)
        );
        assert_eq!(
            multi_qpoch(&[sc(5, 7)], &q, 4).unwrap(),
            qpoch(&sc(5, 7), &q, 4).unwrap()
        );
    }

    #[test]
    fn genericity_examples() {
        // q=4, t=9: every 1 - 4^i 9^j with (i,j) != (0,0) is nonzero
        let p = Params::builder()
            .q_half(sc(2, 1))
            .t_half(sc(3, 1))
            .build()
            .unwrap();
        assert!(p.genericity_check(6, 6));

        // q=1/4, t=4: 1 - q t = 0
        let p = Params::builder()
            .q_half(sc(1, 2))
            .t_half(sc(2, 1))
            .build()
            .unwrap();
        assert!(!p.genericity_check(1, 1));

        // q=4, t=1/4 fails at i=j=1
        let p = Params::builder()
            .q_half(sc(2, 1))
            .t_half(sc(1, 2))
            .build()
            .unwrap();
        assert!(!p.genericity_check(2, 2));
    }

    #[test]
    fn params_derived_values() {
        let p = Params::builder()
            .q_half(sc(2, 3))
            .t_half(sc(3, 5))
            .r(0, sc(1, 2))
            .r(1, sc(2, 5))
            .r(2, sc(3, 4))
            .r(3, sc(5, 3))
            .build()
            .unwrap();
        // t̂₀² = t₀t₁t₂t₃/q exactly
        let lhs = p.t_hat0() * p.t_hat0();
        let rhs = &(&(p.t_i(0) * p.t_i(1)) * &(p.t_i(2) * p.t_i(3))) / p.q();
        assert_eq!(lhs, rhs);
        assert_eq!(p.sqrt_qt() * p.sqrt_qt(), p.q() * p.t());
    }

    #[test]
    fn scalar_string_round_trip() {
        for s in ["0", "-7", "3/4", "-22/7"] {
            let v: Scalar = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        // non-canonical input normalizes
        let v: Scalar = "4/6".parse().unwrap();
        assert_eq!(v.to_string(), "2/3");
        let v: Scalar = "3/-6".parse().unwrap();
        assert_eq!(v.to_string(), "-1/2");
    }

    #[test]
    fn sampler_is_reproducible_and_guarded() {
        let mut a = SpecSampler::new(42);
        let mut b = SpecSampler::new(42);
        let pa = a.draw_params(8, 8, &["u", "v"]);
        let pb = b.draw_params(8, 8, &["u", "v"]);
        assert_eq!(pa, pb);
        assert!(pa.genericity_check(8, 8));
        assert!(pa.free("u").is_some());
        let sa = a.draw_scalar();
        let sb = b.draw_scalar();
        assert_eq!(sa, sb);
        assert!(!sa.is_zero());
    }

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-40i64..=40, 1i64..=40).prop_map(|(n, d)| Scalar::ratio(n, d))
    }

    proptest! {
        // Exact field axioms on random operand triples.
        #[test]
        fn field_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), Scalar::one());
            }
        }

        // (a;q)_{m+n} = (a;q)_m (a q^m;q)_n wherever both sides are defined.
        #[test]
        fn qpoch_shift_rule(m in -4i64..=4, n in -4i64..=4) {
            let a = Scalar::ratio(3, 7);
            let q = Scalar::ratio(2, 5);
            let lhs = qpoch(&a, &q, m + n);
            let rhs = qpoch(&a, &q, m).and_then(|x| {
                Ok(&x * &qpoch(&(&a * &q.pow(m).unwrap()), &q, n)?)
            });
            if let (Ok(l), Ok(r)) = (lhs, rhs) {
                prop_assert_eq!(l, r);
            }
        }
    }
}
