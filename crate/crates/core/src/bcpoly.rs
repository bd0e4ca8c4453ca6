//! Sparse Laurent polynomials in `x_1..x_n` with BC_n orbit sums,
//! evaluation at partition spectra, and the q-difference operator family.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::Partition;
use crate::scalar::Scalar;

/// A Laurent polynomial in `n` variables, stored as a sparse map from
/// exponent vectors to coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct BcPoly {
    n: usize,
    terms: BTreeMap<Vec<i64>, Scalar>,
}

impl BcPoly {
    pub fn zero(n: usize) -> Self {
        BcPoly {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        let mut p = BcPoly::zero(n);
        p.add_term(vec![0; n], c);
        p
    }

    pub fn one(n: usize) -> Self {
        BcPoly::constant(n, Scalar::one())
    }

    /// The monomial `x^  exps` with coefficient `c`.
    pub fn monomial(n: usize, exps: Vec<i64>, c: Scalar) -> Self {
        assert_eq!(exps.len(), n);
        let mut p = BcPoly::zero(n);
        p.add_term(exps, c);
        p
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, exps: Vec<i64>, c: Scalar) {
        debug_assert_eq!(exps.len(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &BcPoly) -> BcPoly {
        assert_eq!(self.n, other.n);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &BcPoly) -> BcPoly {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> BcPoly {
        let mut out = BcPoly::zero(self.n);
        if c.is_zero() {
            return out;
        }
        for (e, v) in &self.terms {
            out.terms.insert(e.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &BcPoly) -> BcPoly {
        assert_eq!(self.n, other.n);
        let mut out = BcPoly::zero(self.n);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exps: Vec<i64> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca * cb);
            }
        }
        out
    }

    /// Substitutes `x_i -> v x_i` for a single scalar `v` applied to all
    /// variables with the given per-variable exponents sign: used for the
    /// shift `x_i -> x_i q^{σ_i/2}`.
    fn shift_by_signs(&self, v: &Scalar, signs: &[i8]) -> BcPoly {
        let mut out = BcPoly::zero(self.n);
        for (e, c) in &self.terms {
            let total: i64 = e.iter().zip(signs).map(|(&ei, &s)| ei * s as i64).sum();
            out.add_term(e.clone(), c * &v.pow(total).expect("nonzero shift"));
        }
        out
    }

    /// Substitutes `x_i -> c_i` for the trailing variables, leaving the
    /// first `keep` variables free.
    pub fn substitute_tail(&self, keep: usize, values: &[Scalar]) -> BcPoly {
        assert_eq!(keep + values.len(), self.n);
        let mut out = BcPoly::zero(keep);
        for (e, c) in &self.terms {
            let mut coeff = c.clone();
            for (i, v) in values.iter().enumerate() {
                coeff *= &v.pow(e[keep + i]).expect("nonzero substitution value");
            }
            out.add_term(e[..keep].to_vec(), coeff);
        }
        out
    }

    /// Full evaluation at scalar values.
    pub fn eval(&self, values: &[Scalar]) -> Scalar {
        assert_eq!(values.len(), self.n);
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, v) in values.iter().enumerate() {
                term *= &v.pow(e[i]).expect("nonzero evaluation point");
            }
            acc += &term;
        }
        acc
    }

    /// Embeds into `total` variables with the variables placed at `offset`.
    pub fn embed(&self, total: usize, offset: usize) -> BcPoly {
        assert!(offset + self.n <= total);
        let mut out = BcPoly::zero(total);
        for (e, c) in &self.terms {
            let mut exps = vec![0i64; total];
            exps[offset..offset + self.n].copy_from_slice(e);
            out.terms.insert(exps, c.clone());
        }
        out
    }

    /// Negates all variables: `x_i -> -x_i`.
    pub fn negate_vars(&self) -> BcPoly {
        let mut out = BcPoly::zero(self.n);
        for (e, c) in &self.terms {
            let parity: i64 = e.iter().map(|&x| x.rem_euclid(2)).sum();
            let v = if parity % 2 == 0 { c.clone() } else { -c };
            out.terms.insert(e.clone(), v);
        }
        out
    }

    /// The homogeneous component of total degree `d` (sum of exponents).
    pub fn homogeneous_component(&self, d: i64) -> BcPoly {
        let mut out = BcPoly::zero(self.n);
        for (e, c) in &self.terms {
            if e.iter().sum::<i64>() == d {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    /// BC_n power sum `Σ_i x_i^k + x_i^{-k}`.
    pub fn power_sum_bc(n: usize, k: i64) -> BcPoly {
        let mut out = BcPoly::zero(n);
        for i in 0..n {
            for sign in [k, -k] {
                let mut exps = vec![0i64; n];
                exps[i] = sign;
                out.add_term(exps, Scalar::one());
            }
        }
        out
    }

    /// Ordinary power sum `Σ_i x_i^k`.
    pub fn power_sum_vars(n: usize, k: i64) -> BcPoly {
        let mut out = BcPoly::zero(n);
        for i in 0..n {
            let mut exps = vec![0i64; n];
            exps[i] = k;
            out.add_term(exps, Scalar::one());
        }
        out
    }

    /// The orbit sum `m_λ`: each distinct image of `∏ x_i^{λ_i}` under
    /// permutations and inversions appears once.
    pub fn orbit_sum(lam: &Partition, n: usize) -> Result<BcPoly> {
        if lam.len() > n {
            return Err(Error::ShapeError(format!(
                "orbit sum of ({lam}) needs at least {} variables",
                lam.len()
            )));
        }
        let mut base: Vec<i64> = (1..=n).map(|i| lam.part(i) as i64).collect();
        base.sort_unstable();
        let mut orbit: BTreeSet<Vec<i64>> = BTreeSet::new();
        // distinct permutations × sign choices
        let mut perm = base.clone();
        loop {
            let nonzero: Vec<usize> = (0..n).filter(|&i| perm[i] != 0).collect();
            for mask in 0..(1u32 << nonzero.len()) {
                let mut v = perm.clone();
                for (bit, &i) in nonzero.iter().enumerate() {
                    if mask & (1 << bit) != 0 {
                        v[i] = -v[i];
                    }
                }
                orbit.insert(v);
            }
            if !next_permutation(&mut perm) {
                break;
            }
        }
        let mut out = BcPoly::zero(n);
        for exps in orbit {
            out.terms.insert(exps, Scalar::one());
        }
        Ok(out)
    }

    /// The canonical BC_n representative of an exponent vector: absolute
    /// values sorted decreasingly.
    fn bc_canonical(e: &[i64]) -> Partition {
        let abs: Vec<u32> = e.iter().map(|&x| x.unsigned_abs() as u32).collect();
        Partition::new(abs)
    }

    /// Expands a BC_n-symmetric polynomial in the orbit-sum basis.
    pub fn to_mbasis(&self) -> Result<BTreeMap<Partition, Scalar>> {
        let mut out: BTreeMap<Partition, Scalar> = BTreeMap::new();
        for (e, c) in &self.terms {
            let lam = Self::bc_canonical(e);
            match out.get(&lam) {
                None => {
                    out.insert(lam, c.clone());
                }
                Some(prev) => {
                    if prev != c {
                        return Err(Error::NotSymmetric(format!(
                            "coefficient mismatch on orbit of ({lam})"
                        )));
                    }
                }
            }
        }
        // verify completeness: each orbit is fully present
        let mut total = 0usize;
        for lam in out.keys() {
            total += BcPoly::orbit_sum(lam, self.n)?.num_terms();
        }
        if total != self.num_terms() {
            return Err(Error::NotSymmetric("incomplete orbit".into()));
        }
        Ok(out)
    }

    /// Rebuilds a polynomial from an orbit-sum expansion.
    pub fn from_mbasis(map: &BTreeMap<Partition, Scalar>, n: usize) -> Result<BcPoly> {
        let mut out = BcPoly::zero(n);
        for (lam, c) in map {
            out = out.add(&BcPoly::orbit_sum(lam, n)?.scale(c));
        }
        Ok(out)
    }

    /// Exact substitution `x_i = q^{μ_i} t^{n-i} s`.
    pub fn eval_at_partition(
        &self,
        mu: &Partition,
        s: &Scalar,
        q: &Scalar,
        t: &Scalar,
    ) -> Result<Scalar> {
        if mu.len() > self.n {
            return Err(Error::ShapeError(format!(
                "partition ({mu}) too long for {} variables",
                self.n
            )));
        }
        let values = spectral_point(mu, self.n, s, q, t)?;
        Ok(self.eval(&values))
    }
}

/// The spectral vector `(q^{μ_i} t^{n-i} s)_{i=1..n}`.
pub fn spectral_point(
    mu: &Partition,
    n: usize,
    s: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Vec<Scalar>> {
    (1..=n)
        .map(|i| {
            let v = &(&q.pow(mu.part(i) as i64)? * &t.pow((n - i) as i64)?) * s;
            if v.is_zero() {
                return Err(Error::DivisionByZero("zero spectral coordinate".into()));
            }
            Ok(v)
        })
        .collect()
}

impl fmt::Display for BcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (i, &exp) in e.iter().enumerate() {
                if exp != 0 {
                    write!(f, "*x{}^{}", i + 1, exp)?;
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for BcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for BcPoly {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("BcPoly", 2)?;
        st.serialize_field("n", &self.n)?;
        let terms: Vec<(Vec<i64>, String)> = self
            .terms
            .iter()
            .map(|(e, c)| (e.clone(), c.to_string()))
            .collect();
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for BcPoly {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            terms: Vec<(Vec<i64>, String)>,
        }
        let raw = Raw::deserialize(de)?;
        let mut out = BcPoly::zero(raw.n);
        for (e, c) in raw.terms {
            let c: Scalar = c.parse().map_err(serde::de::Error::custom)?;
            out.add_term(e, c);
        }
        Ok(out)
    }
}

/// In-place next lexicographic permutation; false when exhausted.
fn next_permutation(v: &mut [i64]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Numerator profile of the q-difference operator: the factor attached to
/// each variable in the σ-summand, as a function of `y = x_i^{σ_i}`.
pub enum DNumerator<'a> {
    /// `(1 - u₁ y)(1 - u₂ y)` — the standard operator `D(u₁, u₂)`.
    Standard(&'a Scalar, &'a Scalar),
    /// `y` — the parameter-free special operator.
    Bare,
}

/// Applies the q-difference operator with the given per-variable numerator:
///
/// `(Df)(x) = Σ_{σ∈{±1}ⁿ} ∏_i num(x_i^{σ_i})/(1-x_i^{2σ_i})
///            ∏_{i<j} (1-t x_i^{σ_i}x_j^{σ_j})/(1-x_i^{σ_i}x_j^{σ_j})
///            f(x q^{σ/2})`
///
/// The result is computed by clearing the BC_n Vandermonde factor exactly
/// and dividing back out, which must be exact for BC_n-symmetric input.
pub fn apply_difference_op(
    f: &BcPoly,
    numerator: DNumerator<'_>,
    q_half: &Scalar,
    t: &Scalar,
) -> Result<BcPoly> {
    let n = f.n_vars();
    let mut total = BcPoly::zero(n);
    let mut signs = vec![1i8; n];
    loop {
        // ∏_i bracket_i: for σ_i = +1: -x_i^{-1}; for σ_i = -1: x_i.
        // These are (x_i - 1/x_i)/(1 - x_i^{2σ_i}).
        let mut factor = BcPoly::one(n);
        for i in 0..n {
            let mut exps = vec![0i64; n];
            if signs[i] == 1 {
                exps[i] = -1;
                factor = factor.mul(&BcPoly::monomial(n, exps, -Scalar::one()));
            } else {
                exps[i] = 1;
                factor = factor.mul(&BcPoly::monomial(n, exps, Scalar::one()));
            }
            // numerator factor in y = x_i^{σ_i}
            let y = signs[i] as i64;
            match numerator {
                DNumerator::Standard(u1, u2) => {
                    for u in [u1, u2] {
                        let mut p = BcPoly::one(n);
                        let mut e = vec![0i64; n];
                        e[i] = y;
                        p.add_term(e, -u.clone());
                        factor = factor.mul(&p);
                    }
                }
                DNumerator::Bare => {
                    let mut e = vec![0i64; n];
                    e[i] = y;
                    factor = factor.mul(&BcPoly::monomial(n, e, Scalar::one()));
                }
            }
        }
        // pair brackets: (x_i + 1/x_i - x_j - 1/x_j)/(1 - x_i^{σ_i}x_j^{σ_j})
        for i in 0..n {
            for j in (i + 1)..n {
                let mut p = BcPoly::zero(n);
                match (signs[i], signs[j]) {
                    (1, 1) => {
                        // x_i^{-1} - x_j^{-1}
                        let mut e = vec![0i64; n];
                        e[i] = -1;
                        p.add_term(e.clone(), Scalar::one());
                        e[i] = 0;
                        e[j] = -1;
                        p.add_term(e, -Scalar::one());
                    }
                    (1, -1) => {
                        // x_i^{-1} - x_j
                        let mut e = vec![0i64; n];
                        e[i] = -1;
                        p.add_term(e.clone(), Scalar::one());
                        e[i] = 0;
                        e[j] = 1;
                        p.add_term(e, -Scalar::one());
                    }
                    (-1, 1) => {
                        // x_i - x_j^{-1}
                        let mut e = vec![0i64; n];
                        e[i] = 1;
                        p.add_term(e.clone(), Scalar::one());
                        e[i] = 0;
                        e[j] = -1;
                        p.add_term(e, -Scalar::one());
                    }
                    (-1, -1) => {
                        // x_i - x_j
                        let mut e = vec![0i64; n];
                        e[i] = 1;
                        p.add_term(e.clone(), Scalar::one());
                        e[i] = 0;
                        e[j] = 1;
                        p.add_term(e, -Scalar::one());
                    }
                    _ => unreachable!(),
                }
                // supply the t-numerator (1 - t x_i^{σ_i} x_j^{σ_j})
                let mut tnum = BcPoly::one(n);
                let mut e = vec![0i64; n];
                e[i] = signs[i] as i64;
                e[j] = signs[j] as i64;
                tnum.add_term(e, -t.clone());
                factor = factor.mul(&p).mul(&tnum);
            }
        }
        let shifted = f.shift_by_signs(q_half, &signs);
        total = total.add(&factor.mul(&shifted));

        // advance σ
        let mut k = 0;
        loop {
            if k == n {
                break;
            }
            if signs[k] == 1 {
                signs[k] = -1;
                break;
            }
            signs[k] = 1;
            k += 1;
        }
        if k == n {
            break;
        }
    }

    // divide back out the Vandermonde-like factor
    let mut result = total;
    for i in 0..n {
        // x_i - 1/x_i
        let mut d = BcPoly::zero(n);
        let mut e = vec![0i64; n];
        e[i] = 1;
        d.add_term(e.clone(), Scalar::one());
        e[i] = -1;
        d.add_term(e, -Scalar::one());
        result = div_exact(&result, &d)?;
    }
    for i in 0..n {
        for j in (i + 1)..n {
            // x_i + 1/x_i - x_j - 1/x_j
            let mut d = BcPoly::zero(n);
            for (var, sign) in [(i, 1i64), (i, -1), (j, 1), (j, -1)] {
                let mut e = vec![0i64; n];
                e[var] = sign;
                d.add_term(
                    e,
                    if var == i {
                        Scalar::one()
                    } else {
                        -Scalar::one()
                    },
                );
            }
            result = div_exact(&result, &d)?;
        }
    }
    Ok(result)
}

/// The operator `D^{(n)}(u₁, u₂; q, t)` on BC_n-symmetric polynomials.
pub fn apply_d(
    f: &BcPoly,
    u1: &Scalar,
    u2: &Scalar,
    q_half: &Scalar,
    t: &Scalar,
) -> Result<BcPoly> {
    apply_difference_op(f, DNumerator::Standard(u1, u2), q_half, t)
}

/// Exact division of Laurent polynomials: `num / den` with zero remainder,
/// `NonExactDivision` otherwise.
pub fn div_exact(num: &BcPoly, den: &BcPoly) -> Result<BcPoly> {
    assert_eq!(num.n, den.n);
    if num.is_zero() {
        return Ok(BcPoly::zero(num.n));
    }
    if den.is_zero() {
        return Err(Error::DivisionByZero("polynomial division by zero".into()));
    }
    let n = num.n;
    // shift both to nonnegative exponents
    let min_exp = |p: &BcPoly| -> Vec<i64> {
        let mut m = vec![i64::MAX; n];
        for e in p.terms.keys() {
            for i in 0..n {
                m[i] = m[i].min(e[i]);
            }
        }
        m
    };
    let shift = |p: &BcPoly, by: &[i64]| -> BcPoly {
        let mut out = BcPoly::zero(n);
        for (e, c) in &p.terms {
            let exps: Vec<i64> = e.iter().zip(by).map(|(a, b)| a - b).collect();
            out.terms.insert(exps, c.clone());
        }
        out
    };
    let num_min = min_exp(num);
    let den_min = min_exp(den);
    let mut rem = shift(num, &num_min);
    let den_poly = shift(den, &den_min);

    // leading term of the divisor under the BTreeMap (lex) order
    let (lead_exp, lead_coeff) = den_poly
        .terms
        .iter()
        .next_back()
        .map(|(e, c)| (e.clone(), c.clone()))
        .unwrap();
    let mut quot = BcPoly::zero(n);
    while !rem.is_zero() {
        let (re, rc) = rem.terms.iter().next_back().unwrap();
        let qe: Vec<i64> = re.iter().zip(&lead_exp).map(|(a, b)| a - b).collect();
        if qe.iter().any(|&x| x < 0) {
            return Err(Error::NonExactDivision(
                "leading term not divisible".into(),
            ));
        }
        let qc = rc.checked_div(&lead_coeff)?;
        let mono = BcPoly::monomial(n, qe, qc);
        rem = rem.sub(&mono.mul(&den_poly));
        quot = quot.add(&mono);
    }
    // undo the shift: num = q * den with exponent offset num_min - den_min
    let offset: Vec<i64> = num_min
        .iter()
        .zip(&den_min)
        .map(|(a, b)| -(a - b))
        .collect();
    Ok(shift(&quot, &offset))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    fn pt(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec())
    }

    #[test]
    fn orbit_sums() {
        assert_eq!(
            BcPoly::orbit_sum(&Partition::empty(), 2).unwrap(),
            BcPoly::one(2)
        );
        let m1 = BcPoly::orbit_sum(&pt(&[1]), 1).unwrap();
        assert_eq!(m1.num_terms(), 2); // x + 1/x
        let m1_2 = BcPoly::orbit_sum(&pt(&[1]), 2).unwrap();
        assert_eq!(m1_2.num_terms(), 4); // x1 + 1/x1 + x2 + 1/x2
        let m11 = BcPoly::orbit_sum(&pt(&[1, 1]), 2).unwrap();
        assert_eq!(m11.num_terms(), 4); // x1x2, x1/x2, x2/x1, 1/(x1x2)
        assert!(BcPoly::orbit_sum(&pt(&[1, 1]), 1).is_err());
    }

    #[test]
    fn mbasis_round_trip() {
        let m1 = BcPoly::orbit_sum(&pt(&[1]), 1).unwrap();
        // (x + 1/x)^2 = m_(2) + 2 m_()
        let sq = m1.mul(&m1);
        let exp = sq.to_mbasis().unwrap();
        assert_eq!(exp.get(&pt(&[2])), Some(&Scalar::one()));
        assert_eq!(exp.get(&Partition::empty()), Some(&sc(2, 1)));
        let back = BcPoly::from_mbasis(&exp, 1).unwrap();
        assert_eq!(back, sq);
        // asymmetric input is rejected
        let bad = BcPoly::monomial(1, vec![1], Scalar::one());
        assert!(bad.to_mbasis().is_err());
    }

    #[test]
    fn evaluation_at_partitions() {
        let q = sc(1, 4);
        let t = sc(4, 9);
        let s = sc(5, 1);
        assert_eq!(
            BcPoly::one(1)
                .eval_at_partition(&Partition::empty(), &s, &q, &t)
                .unwrap(),
            Scalar::one()
        );
        // x + 1/x at mu = (1), n = 1: qs + 1/(qs)
        let m1 = BcPoly::orbit_sum(&pt(&[1]), 1).unwrap();
        let qs = &q * &s;
        assert_eq!(
            m1.eval_at_partition(&pt(&[1]), &s, &q, &t).unwrap(),
            &qs + &qs.inv().unwrap()
        );
        // m_(1) in 2 variables at mu = (): ts + 1/(ts) + s + 1/s
        let m12 = BcPoly::orbit_sum(&pt(&[1]), 2).unwrap();
        let ts = &t * &s;
        assert_eq!(
            m12.eval_at_partition(&Partition::empty(), &s, &q, &t)
                .unwrap(),
            &(&ts + &ts.inv().unwrap()) + &(&s + &s.inv().unwrap())
        );
    }

    #[test]
    fn exact_division() {
        // (x^2 - 1/x^2) / (x - 1/x) = x + 1/x
        let mut num = BcPoly::zero(1);
        num.add_term(vec![2], Scalar::one());
        num.add_term(vec![-2], -Scalar::one());
        let mut den = BcPoly::zero(1);
        den.add_term(vec![1], Scalar::one());
        den.add_term(vec![-1], -Scalar::one());
        let q = div_exact(&num, &den).unwrap();
        assert_eq!(q, BcPoly::orbit_sum(&pt(&[1]), 1).unwrap());
        // non-exact division errors
        let mut num2 = BcPoly::zero(1);
        num2.add_term(vec![2], Scalar::one());
        assert!(div_exact(&num2, &den).is_err());
    }

    #[test]
    fn d_operator_on_constants() {
        let q_half = sc(2, 3);
        let t = sc(4, 25);
        let u1 = sc(3, 5);
        let u2 = sc(7, 2);
        // n = 1: D(u1,u2) 1 = 1 - u1 u2
        let out = apply_d(&BcPoly::one(1), &u1, &u2, &q_half, &t).unwrap();
        let expected = BcPoly::constant(1, Scalar::one() - &(&u1 * &u2));
        assert_eq!(out, expected);
        // general n: ∏_i (1 - t^{n-i} u1 u2)
        for n in 2..=3usize {
            let out = apply_d(&BcPoly::one(n), &u1, &u2, &q_half, &t).unwrap();
            let mut val = Scalar::one();
            for i in 1..=n {
                val *= &(Scalar::one() - &(&t.pow((n - i) as i64).unwrap() * &(&u1 * &u2)));
            }
            assert_eq!(out, BcPoly::constant(n, val), "n = {n}");
        }
    }

    #[test]
    fn d_operator_triangular_with_correct_eigenvalue() {
        let q_half = sc(2, 3);
        let q = &q_half * &q_half;
        let t = sc(4, 25);
        let u1 = sc(3, 5);
        let u2 = sc(7, 2);
        let u = &u1 * &u2;
        for n in 1..=3usize {
            for lam in crate::partitions::of_size_at_most_with_len(4, n) {
                let m = BcPoly::orbit_sum(&lam, n).unwrap();
                let out = apply_d(&m, &u1, &u2, &q_half, &t).unwrap();
                let exp = out.to_mbasis().unwrap();
                // support dominated by λ
                for mu in exp.keys() {
                    assert!(
                        mu.dominated_by(&lam),
                        "support {mu:?} outside downset of {lam:?} (n={n})"
                    );
                }
                // leading coefficient q^{-|λ|/2} ∏ (1 - q^{λ_i} t^{n-i} u)
                let mut ev = q_half.pow(-(lam.size() as i64)).unwrap();
                for i in 1..=n {
                    ev *= &(Scalar::one()
                        - &(&(&q.pow(lam.part(i) as i64).unwrap()
                            * &t.pow((n - i) as i64).unwrap())
                            * &u));
                }
                assert_eq!(exp.get(&lam), Some(&ev), "eigenvalue for {lam:?} (n={n})");
            }
        }
    }

    #[test]
    fn quasi_commutation() {
        // D(u1, √q u2) D(√q u1, u3) = D(u1, √q u3) D(√q u1, u2)
        let q_half = sc(3, 4);
        let t = sc(9, 49);
        let (u1, u2, u3) = (sc(2, 5), sc(5, 3), sc(7, 6));
        for n in 1..=2usize {
            for lam in crate::partitions::of_size_at_most_with_len(3, n) {
                let f = BcPoly::orbit_sum(&lam, n).unwrap();
                let lhs = apply_d(
                    &apply_d(&f, &(&q_half * &u1), &u3, &q_half, &t).unwrap(),
                    &u1,
                    &(&q_half * &u2),
                    &q_half,
                    &t,
                )
                .unwrap();
                let rhs = apply_d(
                    &apply_d(&f, &(&q_half * &u1), &u2, &q_half, &t).unwrap(),
                    &u1,
                    &(&q_half * &u3),
                    &q_half,
                    &t,
                )
                .unwrap();
                assert_eq!(lhs, rhs, "quasi-commutation {lam:?} n={n}");
            }
        }
    }
}
