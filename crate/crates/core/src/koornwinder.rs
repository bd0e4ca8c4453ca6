//! Koornwinder polynomials built from the binomial formula, evaluation
//! symmetry, q-Racah discrete orthogonality, the virtual Koornwinder
//! integral, and the associated identity suite: inverse binomial formula,
//! connection coefficients, difference-operator action, quasi-branching,
//! the Cauchy identity, and the very-well-poised integral representation.

use std::sync::Arc;

use crate::bcpoly::{apply_d, BcPoly};
use crate::cnorm::{c0, cfun_multi, cminus, cplus, norm_pp, CKind};
use crate::error::{Error, Result};
use crate::hyperg::{phi4_3, w8_7};
use crate::interpolation::{
    binom, diagonal_value, interp_poly, psi_difference_weight, psi_integral_weight, BinomKind,
    Caches,
};
use crate::partitions::{self, Partition};
use crate::report::{Check, Report};
use crate::scalar::Scalar;
use crate::series::PolySeries;

/// Exact parameter pack for one Koornwinder family: `(q, t; t_0..t_3)`
/// together with the exact square root `t̂₀` of `t_0t_1t_2t_3/q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KoornParams {
    pub q: Scalar,
    pub t: Scalar,
    pub tp: [Scalar; 4],
    pub that0: Scalar,
}

impl KoornParams {
    /// Validates `that0² = t₀t₁t₂t₃/q`.
    pub fn new(q: Scalar, t: Scalar, tp: [Scalar; 4], that0: Scalar) -> Result<Self> {
        let prod = &(&tp[0] * &tp[1]) * &(&tp[2] * &tp[3]);
        if &that0 * &that0 != prod.checked_div(&q)? {
            return Err(Error::DegenerateParameters(format!(
                "{that0}² ≠ t₀t₁t₂t₃/q"
            )));
        }
        Ok(KoornParams { q, t, tp, that0 })
    }

    /// Builds from half-parameters: `tᵢ = rᵢ²`, `t̂₀ = r₀r₁r₂r₃/q½`.
    pub fn from_halves(q_half: &Scalar, t_half: &Scalar, r: &[Scalar; 4]) -> Result<Self> {
        let that0 = (&(&r[0] * &r[1]) * &(&r[2] * &r[3])).checked_div(q_half)?;
        KoornParams::new(
            q_half * q_half,
            t_half * t_half,
            [
                &r[0] * &r[0],
                &r[1] * &r[1],
                &r[2] * &r[2],
                &r[3] * &r[3],
            ],
            that0,
        )
    }

    pub fn from_params(p: &crate::scalar::Params) -> Result<Self> {
        KoornParams::from_halves(
            p.q_half(),
            p.t_half(),
            &[
                p.r(0).clone(),
                p.r(1).clone(),
                p.r(2).clone(),
                p.r(3).clone(),
            ],
        )
    }

    /// The hat involution: `t̂ᵢ = t₀tᵢ/t̂₀`, whose own hat parameter is `t₀`.
    pub fn hatted(&self) -> Result<KoornParams> {
        let h0 = self.that0.clone();
        let tp = [
            h0.clone(),
            (&self.tp[0] * &self.tp[1]).checked_div(&h0)?,
            (&self.tp[0] * &self.tp[2]).checked_div(&h0)?,
            (&self.tp[0] * &self.tp[3]).checked_div(&h0)?,
        ];
        KoornParams::new(self.q.clone(), self.t.clone(), tp, self.tp[0].clone())
    }

    /// The parameter pack with entries permuted (hat parameter unchanged).
    pub fn permuted(&self, perm: [usize; 4]) -> KoornParams {
        KoornParams {
            q: self.q.clone(),
            t: self.t.clone(),
            tp: [
                self.tp[perm[0]].clone(),
                self.tp[perm[1]].clone(),
                self.tp[perm[2]].clone(),
                self.tp[perm[3]].clone(),
            ],
            that0: self.that0.clone(),
        }
    }

    /// Replaces `tᵢ` by `tᵢ·factor`, rescaling `t̂₀` by `half_factor`
    /// (the exact square root of `factor`).
    pub fn scaled_entry(&self, i: usize, factor: &Scalar, half_factor: &Scalar) -> Result<KoornParams> {
        let mut tp = self.tp.clone();
        tp[i] = &tp[i] * factor;
        KoornParams::new(
            self.q.clone(),
            self.t.clone(),
            tp,
            &self.that0 * half_factor,
        )
    }

    fn packed(&self) -> Vec<Scalar> {
        let mut v = vec![self.q.clone(), self.t.clone()];
        v.extend(self.tp.iter().cloned());
        v.push(self.that0.clone());
        v
    }

    /// Spectral vector `x_i = q^{μ_i} t^{n-i} t₀`.
    pub fn spectrum(&self, mu: &Partition, n: usize) -> Result<Vec<Scalar>> {
        crate::bcpoly::spectral_point(mu, n, &self.tp[0], &self.q, &self.t)
    }
}

/// The evaluation normalization
/// `k⁰_λ(q,t,T; t₀:t₁,t₂,t₃) = (t₀T/t)^{-|λ|} t^{n(λ)}
///  C⁰_λ(T, Tt₀t₁/t, Tt₀t₂/t, Tt₀t₃/t) / (C⁻_λ(t) C⁺_λ(T²t̂₀²/t²))`.
pub fn k0(lam: &Partition, cap_t: &Scalar, kp: &KoornParams) -> Result<Scalar> {
    let (q, t) = (&kp.q, &kp.t);
    let pref = &(&kp.tp[0] * cap_t)
        .checked_div(t)?
        .pow(-(lam.size() as i64))?
        * &t.pow(lam.n_stat() as i64)?;
    let args: Vec<Scalar> = (1..4)
        .map(|i| (&(&kp.tp[0] * &kp.tp[i]) * cap_t).checked_div(t))
        .collect::<Result<_>>()?;
    let num = &c0(lam, cap_t, q, t) * &cfun_multi(CKind::Zero, lam, &[&args[0], &args[1], &args[2]], q, t);
    let hat2 = &kp.that0 * &kp.that0;
    let plus_arg = (&(cap_t * cap_t) * &hat2).checked_div(&(t * t))?;
    let den = &cminus(lam, t, q, t) * &cplus(lam, &plus_arg, q, t);
    Ok(&pref * &num.checked_div(&den)?)
}

/// The ratio `k⁰_λ(T)/k⁰_μ(T)` evaluated as an exact limit in `T`,
/// cancelling removable zeros (needed at `T = tⁿ` when `ℓ(λ) > n`).
pub fn k0_ratio_limit(
    lam: &Partition,
    mu: &Partition,
    cap_t: &Scalar,
    kp: &KoornParams,
) -> Result<Scalar> {
    use crate::upoly::{RatioLimit, UPoly};
    let (q, t) = (&kp.q, &kp.t);
    let mut ratio = RatioLimit::new();
    let diff = lam.size() as i64 - mu.size() as i64;
    // prefactor (t₀ T / t)^{|μ|-|λ|} t^{n(λ)-n(μ)}
    let scalar_pref = &kp.tp[0]
        .checked_div(t)?
        .pow(-diff)?
        * &t.pow(lam.n_stat() as i64 - mu.n_stat() as i64)?;
    ratio.mul_num(UPoly::constant(scalar_pref));
    if diff > 0 {
        let mut tpow = vec![Scalar::zero(); diff as usize + 1];
        tpow[diff as usize] = Scalar::one();
        ratio.mul_den(UPoly::from_coeffs(tpow));
    } else if diff < 0 {
        let mut tpow = vec![Scalar::zero(); (-diff) as usize + 1];
        tpow[(-diff) as usize] = Scalar::one();
        ratio.mul_num(UPoly::from_coeffs(tpow));
    }
    // C⁰ products in T (linear factors) and C⁺ products in T² (quadratic)
    let hat2 = &kp.that0 * &kp.that0;
    let c_zero = |nu: &Partition, into_num: bool, r: &mut RatioLimit| -> Result<()> {
        let conj = nu.conjugate();
        let _ = conj;
        for factor_scale in [
            Scalar::one(),
            (&kp.tp[0] * &kp.tp[1]).checked_div(t)?,
            (&kp.tp[0] * &kp.tp[2]).checked_div(t)?,
            (&kp.tp[0] * &kp.tp[3]).checked_div(t)?,
        ] {
            for (i, j) in nu.boxes() {
                let c = &(&q.pow(j as i64 - 1)? * &t.pow(1 - i as i64)?) * &factor_scale;
                let p = UPoly::linear(Scalar::one(), -c);
                if into_num {
                    r.mul_num(p);
                } else {
                    r.mul_den(p);
                }
            }
        }
        Ok(())
    };
    c_zero(lam, true, &mut ratio)?;
    c_zero(mu, false, &mut ratio)?;
    // C⁻_ν(t) scalars and C⁺_ν(T² t̂₀²/t²) quadratics swap sides
    ratio.mul_num(UPoly::constant(cminus(mu, t, q, t)));
    ratio.mul_den(UPoly::constant(cminus(lam, t, q, t)));
    let c_plus = |nu: &Partition, into_num: bool, r: &mut RatioLimit| -> Result<()> {
        let conj = nu.conjugate();
        for (i, j) in nu.boxes() {
            let exp_q = nu.part(i as usize) as i64 + j as i64 - 1;
            let exp_t = 2 - conj.part(j as usize) as i64 - i as i64;
            let c = &(&q.pow(exp_q)? * &t.pow(exp_t)?) * &hat2.checked_div(&(t * t))?;
            let p = UPoly::from_coeffs(vec![Scalar::one(), Scalar::zero(), -c]);
            if into_num {
                r.mul_num(p);
            } else {
                r.mul_den(p);
            }
        }
        Ok(())
    };
    c_plus(mu, true, &mut ratio)?;
    c_plus(lam, false, &mut ratio)?;
    ratio.limit_at(cap_t)
}

/// The norm `N_λ(q,t,T; t₀..t₃)` appearing in the orthogonality relations.
pub fn n_norm(lam: &Partition, cap_t: &Scalar, kp: &KoornParams) -> Result<Scalar> {
    let (q, t) = (&kp.q, &kp.t);
    let prod4 = &(&kp.tp[0] * &kp.tp[1]) * &(&kp.tp[2] * &kp.tp[3]);
    let t2 = cap_t * cap_t;
    let num = {
        let mut acc = cminus(lam, q, q, t);
        acc *= &cplus(lam, &(&t2 * &prod4).checked_div(&t.pow(3)?)?, q, t);
        acc *= &c0(lam, cap_t, q, t);
        acc *= &c0(lam, &(cap_t * &prod4).checked_div(&(t * t))?, q, t);
        for i in 0..4 {
            for j in (i + 1)..4 {
                acc *= &c0(
                    lam,
                    &(cap_t * &(&kp.tp[i] * &kp.tp[j])).checked_div(t)?,
                    q,
                    t,
                );
            }
        }
        acc
    };
    let den = {
        let mut acc = cminus(lam, t, q, t);
        acc *= &cplus(lam, &(&t2 * &prod4).checked_div(&(&(q * t) * t))?, q, t);
        acc *= &c0(
            &lam.square().double(),
            &(&t2 * &prod4).checked_div(&(t * t))?,
            q,
            t,
        );
        acc
    };
    num.checked_div(&den)
}

/// Koornwinder polynomial via the binomial formula:
/// `K_λ = Σ_{μ⊆λ} [λ;μ]_{q,t,t^{n-1}t̂₀} (k⁰_λ/k⁰_μ) P̄*_μ(;q,t,t₀)`.
pub fn koorn_poly(cx: &Caches, n: usize, lam: &Partition, kp: &KoornParams) -> Result<Arc<BcPoly>> {
    if lam.len() > n {
        return Err(Error::ShapeError(format!(
            "Koornwinder polynomial for ({lam}) needs at least {} variables",
            lam.len()
        )));
    }
    let key = (n, lam.clone(), kp.packed());
    {
        let cache = cx.koorn.lock().unwrap();
        if let Some(p) = cache.get(&key) {
            return Ok(p.clone());
        }
    }
    let (q, t) = (&kp.q, &kp.t);
    let tn = t.pow(n as i64)?;
    let spec = &t.pow(n as i64 - 1)? * &kp.that0;
    let mut poly = BcPoly::zero(n);
    for mu in partitions::between(&Partition::empty(), lam) {
        let b = binom(cx, BinomKind::Bracket, lam, &mu, &spec, q, t)?;
        if b.is_zero() {
            continue;
        }
        // the normalization ratio can have removable zeros at constrained
        // parameter values (q-Racah grids, special t-parameter products)
        let ratio = k0_ratio_limit(lam, &mu, &tn, kp)?;
        if ratio.is_zero() {
            continue;
        }
        let p = interp_poly(cx, n, &mu, &kp.tp[0], q, t)?;
        poly = poly.add(&p.scale(&(&b * &ratio)));
    }
    // monic on m_λ
    let expansion = poly.to_mbasis()?;
    if expansion.get(lam) != Some(&Scalar::one()) {
        return Err(Error::DegenerateParameters(format!(
            "Koornwinder polynomial for ({lam}) is not monic"
        )));
    }
    let arc = Arc::new(poly);
    cx.koorn.lock().unwrap().insert(key, arc.clone());
    Ok(arc)
}

/// Evaluation symmetry: normalized evaluations are symmetric in `λ ↔ μ`
/// under the hat involution.
pub fn evaluation_symmetry(
    cx: &Caches,
    n: usize,
    lam: &Partition,
    mu: &Partition,
    kp: &KoornParams,
) -> Result<Report> {
    let tn = kp.t.pow(n as i64)?;
    let hat = kp.hatted()?;
    let lhs = koorn_poly(cx, n, lam, kp)?
        .eval(&kp.spectrum(mu, n)?)
        .checked_div(&k0(lam, &tn, kp)?)?;
    let rhs = koorn_poly(cx, n, mu, &hat)?
        .eval(&hat.spectrum(lam, n)?)
        .checked_div(&k0(mu, &tn, &hat)?)?;
    let mut report = Report::new();
    report.push(Check::scalar_eq(
        "koorn_evaluation_symmetry",
        format!("n={n} lambda=({lam}) mu=({mu})"),
        &lhs,
        &rhs,
    ));
    Ok(report)
}

/// Discrete q-Racah grid: parameters constrained by `t₀t₁ = t^{1-n} q^{-m}`,
/// with `t₃` chosen so the hat parameter stays rational.
pub struct QRacahGrid {
    pub n: usize,
    pub m: u32,
    pub kp: KoornParams,
}

impl QRacahGrid {
    /// Builds the grid from free `t₀`, `t₂` and hat value `h`; `t₁` and
    /// `t₃` are solved from the constraint.
    pub fn new(
        n: usize,
        m: u32,
        q: &Scalar,
        t: &Scalar,
        t0: &Scalar,
        t2: &Scalar,
        h: &Scalar,
    ) -> Result<Self> {
        let t1 = t.pow(1 - n as i64)?.checked_div(&(&q.pow(m as i64)? * t0))?;
        // t̂₀² = t₀t₁t₂t₃/q = h² determines t₃
        let t3 = (&(h * h) * q).checked_div(&(&(t0 * &t1) * t2))?;
        let kp = KoornParams::new(
            q.clone(),
            t.clone(),
            [t0.clone(), t1, t2.clone(), t3],
            h.clone(),
        )?;
        Ok(QRacahGrid { n, m, kp })
    }

    /// The weight `Δ^{qR}(μ)` on the grid `μ ⊆ m^n`.
    pub fn delta(&self, mu: &Partition) -> Result<Scalar> {
        let kp = &self.kp;
        let (q, t, n, m) = (&kp.q, &kp.t, self.n, self.m);
        let tn1 = t.pow(n as i64 - 1)?;
        let mu_c = mu.box_complement(m, n)?;
        let mut acc = &q.pow(-2 * mu.n_stat_conj() as i64)? * &t.pow(2 * mu.n_stat() as i64)?;
        let base = &(&t.pow(2 * n as i64 - 2)? * q) * &(&kp.tp[0] * &kp.tp[0]);
        acc *= &base.pow(-(mu.size() as i64))?;
        acc *= &cfun_multi(
            CKind::Zero,
            mu,
            &[
                &(&(&tn1 * &kp.tp[0]) * &kp.tp[2]),
                &(&(&tn1 * &kp.tp[0]) * &kp.tp[3]),
            ],
            q,
            t,
        );
        acc *= &cfun_multi(
            CKind::Zero,
            &mu_c,
            &[
                &(&(&tn1 * &kp.tp[1]) * &kp.tp[2]),
                &(&(&tn1 * &kp.tp[1]) * &kp.tp[3]),
            ],
            q,
            t,
        );
        acc *= &norm_pp(mu, n, q, t)?;
        let den = &diagonal_value(n, mu, &kp.tp[0], q, t)?
            * &diagonal_value(n, &mu_c, &kp.tp[1], q, t)?;
        acc.checked_div(&den)
    }

    /// The weighted sum `Σ_{μ⊆m^n} f(μ̄; t₀) Δ^{qR}(μ)`.
    pub fn expect(&self, f: &BcPoly) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for mu in partitions::in_box(self.m, self.n) {
            let val = f.eval(&self.kp.spectrum(&mu, self.n)?);
            if !val.is_zero() {
                acc += &(&val * &self.delta(&mu)?);
            }
        }
        Ok(acc)
    }
}

/// The virtual Koornwinder integral: the coefficient of `K₀ = 1` when `f`
/// is expanded in the Koornwinder basis (triangular solve from the top).
pub fn virtual_integral(cx: &Caches, n: usize, f: &BcPoly, kp: &KoornParams) -> Result<Scalar> {
    Ok(expand_in_koorn(cx, n, f, kp, None)?.1)
}

/// Peels `f` from the dominance-largest monomial downward against the
/// Koornwinder family.  Returns the coefficient of `K_target` (when given)
/// and the coefficient of `K₀`.
fn expand_in_koorn(
    cx: &Caches,
    n: usize,
    f: &BcPoly,
    kp: &KoornParams,
    target: Option<&Partition>,
) -> Result<(Scalar, Scalar)> {
    let mut rem = f.to_mbasis()?;
    let mut target_coeff = Scalar::zero();
    loop {
        let Some(lam) = rem
            .keys()
            .filter(|k| !k.is_empty())
            .cloned()
            .max_by(|a, b| partitions::dominance_refining(a, b))
        else {
            break;
        };
        let c = rem.remove(&lam).unwrap();
        if c.is_zero() {
            continue;
        }
        if target == Some(&lam) {
            target_coeff = c.clone();
        }
        for (nu, v) in koorn_poly(cx, n, &lam, kp)?.to_mbasis()? {
            if nu == lam {
                continue; // the monic leading term is already removed
            }
            let entry = rem.entry(nu).or_insert_with(Scalar::zero);
            *entry -= &(&c * &v);
        }
        rem.retain(|_, v| !v.is_zero());
    }
    let k0_coeff = rem
        .get(&Partition::empty())
        .cloned()
        .unwrap_or_else(Scalar::zero);
    Ok((target_coeff, k0_coeff))
}

/// Inverse binomial formula: the interpolation polynomial expanded in
/// Koornwinder polynomials with brace coefficients.
pub fn inverse_binomial(cx: &Caches, n: usize, lam: &Partition, kp: &KoornParams) -> Result<Report> {
    let (q, t) = (&kp.q, &kp.t);
    let tn = t.pow(n as i64)?;
    let spec = &t.pow(n as i64 - 1)? * &kp.that0;
    let lhs = interp_poly(cx, n, lam, &kp.tp[0], q, t)?;
    let k0_lam = k0(lam, &tn, kp)?;
    let mut rhs = BcPoly::zero(n);
    for mu in partitions::between(&Partition::empty(), lam) {
        let b = binom(cx, BinomKind::Brace, lam, &mu, &spec, q, t)?;
        if b.is_zero() {
            continue;
        }
        let ratio = k0_lam.checked_div(&k0(&mu, &tn, kp)?)?;
        rhs = rhs.add(&koorn_poly(cx, n, &mu, kp)?.scale(&(&b * &ratio)));
    }
    let mut report = Report::new();
    report.push(Check::new(
        "koorn_inverse_binomial",
        format!("n={n} lambda=({lam})"),
        &*lhs,
        &rhs,
        *lhs == rhs,
    ));
    Ok(report)
}

/// Connection coefficients between families differing in `t₁, t₂, t₃`.
pub fn connection(
    cx: &Caches,
    n: usize,
    lam: &Partition,
    kappa: &Partition,
    kp: &KoornParams,
    kp_primed: &KoornParams,
) -> Result<Report> {
    let (q, t) = (&kp.q, &kp.t);
    let tn = t.pow(n as i64)?;
    // expand K_λ(primed) in the unprimed family and normalize
    let big = koorn_poly(cx, n, lam, kp_primed)?;
    let coeff_kappa = if kappa.is_empty() {
        expand_in_koorn(cx, n, &big, kp, None)?.1
    } else {
        expand_in_koorn(cx, n, &big, kp, Some(kappa))?.0
    };
    let lhs = (&coeff_kappa * &k0(kappa, &tn, kp)?)
        .checked_div(&k0(lam, &tn, kp_primed)?)?;
    // rhs: double sum of bracket and brace coefficients
    let spec = &t.pow(n as i64 - 1)? * &kp.that0;
    let spec_primed = &t.pow(n as i64 - 1)? * &kp_primed.that0;
    let mut rhs = Scalar::zero();
    for mu in partitions::between(kappa, lam) {
        let a = binom(cx, BinomKind::Bracket, lam, &mu, &spec_primed, q, t)?;
        let b = binom(cx, BinomKind::Brace, &mu, kappa, &spec, q, t)?;
        let ratio = k0(&mu, &tn, kp)?.checked_div(&k0(&mu, &tn, kp_primed)?)?;
        rhs += &(&(&a * &b) * &ratio);
    }
    let mut report = Report::new();
    report.push(Check::scalar_eq(
        "koorn_connection",
        format!("n={n} lambda=({lam}) kappa=({kappa})"),
        &lhs,
        &rhs,
    ));
    Ok(report)
}

/// Difference-operator action:
/// `D(t₀,t₁) K_λ(;t₀√q, t₁√q, t₂, t₃) = E_λ(t₀t₁) K_λ(;t₀,t₁,t₂√q,t₃√q)`.
pub fn diff_action(
    cx: &Caches,
    n: usize,
    lam: &Partition,
    q_half: &Scalar,
    kp: &KoornParams,
) -> Result<Report> {
    let (q, t) = (&kp.q, &kp.t);
    let mut up01 = kp.tp.clone();
    up01[0] = &up01[0] * q_half;
    up01[1] = &up01[1] * q_half;
    let kp01 = KoornParams::new(q.clone(), t.clone(), up01, &kp.that0 * q_half)?;
    let mut up23 = kp.tp.clone();
    up23[2] = &up23[2] * q_half;
    up23[3] = &up23[3] * q_half;
    let kp23 = KoornParams::new(q.clone(), t.clone(), up23, &kp.that0 * q_half)?;
    let shifted = koorn_poly(cx, n, lam, &kp01)?;
    let lhs = apply_d(&shifted, &kp.tp[0], &kp.tp[1], q_half, t)?;
    let mut ev = q_half.pow(-(lam.size() as i64))?;
    for i in 1..=n {
        ev *= &(Scalar::one()
            - &(&(&q.pow(lam.part(i) as i64)? * &t.pow((n - i) as i64)?)
                * &(&kp.tp[0] * &kp.tp[1])));
    }
    let rhs = koorn_poly(cx, n, lam, &kp23)?.scale(&ev);
    let mut report = Report::new();
    report.push(Check::new(
        "koorn_difference_action",
        format!("n={n} lambda=({lam})"),
        &lhs,
        &rhs,
        lhs == rhs,
    ));
    Ok(report)
}

/// Special connection in `t₁ → q t₁` via the difference weights.
pub fn special_connection(
    cx: &Caches,
    n: usize,
    lam: &Partition,
    q_half: &Scalar,
    kp: &KoornParams,
) -> Result<Report> {
    let (q, t) = (&kp.q, &kp.t);
    let tn = t.pow(n as i64)?;
    let spec = &t.pow(n as i64 - 1)? * &kp.that0;
    let u = &tn * &(&kp.tp[0] * &kp.tp[1]);
    let kp_up = kp.scaled_entry(1, q, q_half)?;
    let lhs = koorn_poly(cx, n, lam, kp)?.scale(&k0(lam, &tn, kp)?.inv()?);
    let mut rhs = BcPoly::zero(n);
    for kappa in partitions::between(&Partition::empty(), lam) {
        if !lam.vertical_strip_over(&kappa) {
            continue;
        }
        let w = psi_difference_weight(lam, &kappa, &u, &spec, q, t)?;
        if w.is_zero() {
            continue;
        }
        let scale = w.checked_div(&k0(&kappa, &tn, &kp_up)?)?;
        rhs = rhs.add(&koorn_poly(cx, n, &kappa, &kp_up)?.scale(&scale));
    }
    let mut report = Report::new();
    report.push(Check::new(
        "koorn_special_connection",
        format!("n={n} lambda=({lam})"),
        &lhs,
        &rhs,
        lhs == rhs,
    ));
    Ok(report)
}

/// Special connection in `t₁ → t t₁` via the integral weights.
pub fn special_connection_t(
    cx: &Caches,
    n: usize,
    lam: &Partition,
    t_half: &Scalar,
    kp: &KoornParams,
) -> Result<Report> {
    let (q, t) = (&kp.q, &kp.t);
    let tn = t.pow(n as i64)?;
    let spec = &t.pow(n as i64 - 1)? * &kp.that0;
    let u = &tn * &(&kp.tp[0] * &kp.tp[1]);
    let kp_up = kp.scaled_entry(1, t, t_half)?;
    let lhs = koorn_poly(cx, n, lam, &kp_up)?.scale(&k0(lam, &tn, &kp_up)?.inv()?);
    let mut rhs = BcPoly::zero(n);
    for kappa in partitions::between(&Partition::empty(), lam) {
        if !lam.horizontal_strip_over(&kappa) {
            continue;
        }
        let w = psi_integral_weight(lam, &kappa, &u, &spec, q, t)?;
        if w.is_zero() {
            continue;
        }
        let scale = w.checked_div(&k0(&kappa, &tn, kp)?)?;
        rhs = rhs.add(&koorn_poly(cx, n, &kappa, kp)?.scale(&scale));
    }
    let mut report = Report::new();
    report.push(Check::new(
        "koorn_special_connection_t",
        format!("n={n} lambda=({lam})"),
        &lhs,
        &rhs,
        lhs == rhs,
    ));
    Ok(report)
}

/// Quasi-branching: specializing the extra variable to `t₀` expands in the
/// family with `t₀ → t₀ t` through integral weights.
pub fn quasi_branching(
    cx: &Caches,
    n: usize,
    lam: &Partition,
    t_half: &Scalar,
    kp: &KoornParams,
) -> Result<Report> {
    let (q, t) = (&kp.q, &kp.t);
    let tn1 = t.pow(n as i64 + 1)?;
    let tn = t.pow(n as i64)?;
    let big = koorn_poly(cx, n + 1, lam, kp)?;
    let lhs = big
        .substitute_tail(n, &[kp.tp[0].clone()])
        .scale(&k0(lam, &tn1, kp)?.inv()?);
    let kp_up = kp.scaled_entry(0, t, t_half)?;
    let spec = &tn * &kp.that0.checked_div(t_half)?;
    let mut rhs = BcPoly::zero(n);
    for kappa in partitions::between(&Partition::empty(), lam) {
        if kappa.len() > n || !lam.horizontal_strip_over(&kappa) {
            continue;
        }
        let w = psi_integral_weight(lam, &kappa, &tn1, &spec, q, t)?;
        if w.is_zero() {
            continue;
        }
        let scale = w.checked_div(&k0(&kappa, &tn, &kp_up)?)?;
        rhs = rhs.add(&koorn_poly(cx, n, &kappa, &kp_up)?.scale(&scale));
    }
    let mut report = Report::new();
    report.push(Check::new(
        "koorn_quasi_branching",
        format!("n={n} lambda=({lam})"),
        &lhs,
        &rhs,
        lhs == rhs,
    ));
    Ok(report)
}

/// Cauchy identity pairing the (q,t) and (t,q) Koornwinder families.
pub fn cauchy_koorn(
    cx: &Caches,
    n: usize,
    m: usize,
    q_half: &Scalar,
    t_half: &Scalar,
    kp: &KoornParams,
) -> Result<Report> {
    let (q, t) = (&kp.q, &kp.t);
    // swapped family (t, q) with the same t-parameters:
    // t̂₀ becomes √(t₀t₁t₂t₃/t) = t̂₀ √q / √t
    let that0_swap = (&kp.that0 * q_half).checked_div(t_half)?;
    let kp_swap = KoornParams::new(t.clone(), q.clone(), kp.tp.clone(), that0_swap)?;
    let total = n + m;
    let mut lhs = BcPoly::zero(total);
    for lam in partitions::in_box(m as u32, n) {
        let sign = if (m * n - lam.size() as usize) % 2 == 0 {
            Scalar::one()
        } else {
            -Scalar::one()
        };
        let left = koorn_poly(cx, n, &lam, kp)?.embed(total, 0);
        let comp = lam.conjugate().box_complement(n as u32, m)?;
        let right = koorn_poly(cx, m, &comp, &kp_swap)?.embed(total, n);
        lhs = lhs.add(&left.mul(&right).scale(&sign));
    }
    let mut rhs = BcPoly::one(total);
    for i in 0..n {
        for j in 0..m {
            let mut factor = BcPoly::zero(total);
            for (var, coef) in [(i, Scalar::one()), (n + j, -Scalar::one())] {
                for sign in [1i64, -1] {
                    let mut e = vec![0i64; total];
                    e[var] = sign;
                    factor.add_term(e, coef.clone());
                }
            }
            rhs = rhs.mul(&factor);
        }
    }
    let mut report = Report::new();
    report.push(Check::new(
        "koorn_cauchy",
        format!("n={n} m={m}"),
        &lhs,
        &rhs,
        lhs == rhs,
    ));
    Ok(report)
}

/// The very-well-poised integral representation along its terminating route
/// `t₄ = q^m u`: the virtual integral of `∏ (u x_i^{±1}; q)_m` equals both a
/// `₄Φ₃`-type and an `₈W₇`-type series.
pub fn w8_7_integral(
    cx: &Caches,
    n: usize,
    m: u32,
    u: &Scalar,
    kp: &KoornParams,
) -> Result<Report> {
    let (q, t) = (&kp.q, &kp.t);
    let tn1 = t.pow(n as i64 - 1)?;
    let mut integrand = BcPoly::one(n);
    for i in 0..n {
        for j in 0..m {
            let c = u * &q.pow(j as i64)?;
            for sign in [1i64, -1] {
                let mut factor = BcPoly::one(n);
                let mut e = vec![0i64; n];
                e[i] = sign;
                factor.add_term(e, -c.clone());
                integrand = integrand.mul(&factor);
            }
        }
    }
    let lhs = virtual_integral(cx, n, &integrand, kp)?;
    let boxmn = Partition::empty().box_add(m, n)?;
    let t0 = &kp.tp[0];
    let prod4 = &(&kp.tp[0] * &kp.tp[1]) * &(&kp.tp[2] * &kp.tp[3]);
    // balanced-series form
    let mid = {
        let pref = cfun_multi(
            CKind::Zero,
            &boxmn,
            &[&(&tn1 * &(t0 * u)), &u.checked_div(t0)?],
            q,
            t,
        );
        let qm = q.pow(-(m as i64))?;
        let a1 = &tn1 * &(t0 * &kp.tp[1]);
        let a2 = &tn1 * &(t0 * &kp.tp[2]);
        let a3 = &tn1 * &(t0 * &kp.tp[3]);
        let l1 = &(&tn1 * &tn1) * &prod4;
        let l2 = &tn1 * &(t0 * u);
        let l3 = (&(&tn1 * &q.pow(1 - m as i64)?) * t0).checked_div(u)?;
        &pref * &phi4_3(m, n, &[&qm, &a1, &a2, &a3], &[&l1, &l2, &l3], q, q, t)?
    };
    // very-well-poised form
    let rhs = {
        let up = &(&tn1 * &tn1) * &(u * &(&(t0 * &kp.tp[1]) * &kp.tp[2]));
        let pref = cfun_multi(
            CKind::Zero,
            &boxmn,
            &[
                &(&tn1 * &(u * t0)),
                &(&tn1 * &(u * &kp.tp[1])),
                &(&tn1 * &(u * &kp.tp[2])),
            ],
            q,
            t,
        )
        .checked_div(&c0(&boxmn, &up, q, t))?;
        let a = up.checked_div(q)?;
        let b1 = &tn1 * &(t0 * &kp.tp[1]);
        let b2 = &tn1 * &(t0 * &kp.tp[2]);
        let b3 = &tn1 * &(&kp.tp[1] * &kp.tp[2]);
        let b4 = u.checked_div(&kp.tp[3])?;
        let b5 = q.pow(-(m as i64))?;
        let z = &q.pow(m as i64)? * &(u * &kp.tp[3]);
        &pref * &w8_7(m, n, &a, &[&b1, &b2, &b3, &b4, &b5], &z, q, t)?
    };
    let mut report = Report::new();
    let shapes = format!("n={n} m={m}");
    report.push(Check::scalar_eq(
        "koorn_w8_7_integral_balanced",
        shapes.clone(),
        &lhs,
        &mid,
    ));
    report.push(Check::scalar_eq(
        "koorn_w8_7_integral_vwp",
        shapes,
        &lhs,
        &rhs,
    ));
    Ok(report)
}

/// Dimension symmetry of the deformed virtual integral, verified per
/// coefficient of a truncated series in `v`.
pub fn mn_symmetry_series(
    cx: &Caches,
    n: usize,
    m: usize,
    order: usize,
    t_half: &Scalar,
    kp: &KoornParams,
) -> Result<Report> {
    let side = |dim: usize, other: usize| -> Result<Vec<Scalar>> {
        let (q, t) = (&kp.q, &kp.t);
        let tm_half = t_half.pow(other as i64)?;
        let tm_half_inv = tm_half.inv()?;
        let mut integrand = PolySeries::one(dim, order);
        for i in 0..dim {
            for eps in [1i64, -1] {
                integrand = integrand.mul(&PolySeries::qpoch_ratio_var(
                    dim,
                    i,
                    eps,
                    &tm_half,
                    &tm_half_inv,
                    q,
                    order,
                )?);
            }
        }
        let mut tp = kp.tp.clone();
        for entry in tp.iter_mut() {
            *entry = &*entry * &tm_half;
        }
        let that0 = &kp.that0 * &tm_half.pow(2)?;
        let kp_scaled = KoornParams::new(q.clone(), t.clone(), tp, that0)?;
        integrand
            .coeffs
            .iter()
            .map(|c| virtual_integral(cx, dim, c, &kp_scaled))
            .collect()
    };
    let left = side(n, m)?;
    let right = side(m, n)?;
    let mut report = Report::new();
    for k in 0..=order {
        report.push(Check::scalar_eq(
            "koorn_integral_mn_symmetry",
            format!("n={n} m={m} v-order={k}"),
            &left[k],
            &right[k],
        ));
    }
    Ok(report)
}

/// Coefficient-map symmetries: parameter permutations, inversion of all
/// parameters, and the sign flip.
pub fn trivial_symmetries(
    cx: &Caches,
    n: usize,
    lam: &Partition,
    kp: &KoornParams,
) -> Result<Report> {
    let mut report = Report::new();
    let shapes = format!("n={n} lambda=({lam})");
    let base = koorn_poly(cx, n, lam, kp)?;
    // parameter symmetry under all 24 permutations
    let mut perm = [0usize, 1, 2, 3];
    loop {
        if perm != [0, 1, 2, 3] {
            let other = koorn_poly(cx, n, lam, &kp.permuted(perm))?;
            report.push(Check::new(
                "koorn_parameter_symmetry",
                format!("{shapes} perm={perm:?}"),
                &*base,
                &*other,
                *base == *other,
            ));
        }
        // next lexicographic permutation
        let mut i = 3;
        while i > 0 && perm[i - 1] >= perm[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = 3;
        while perm[j] <= perm[i - 1] {
            j -= 1;
        }
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    // inversion of all parameters
    let kp_inv = KoornParams::new(
        kp.q.inv()?,
        kp.t.inv()?,
        [
            kp.tp[0].inv()?,
            kp.tp[1].inv()?,
            kp.tp[2].inv()?,
            kp.tp[3].inv()?,
        ],
        kp.that0.inv()?,
    )?;
    let inv = koorn_poly(cx, n, lam, &kp_inv)?;
    report.push(Check::new(
        "koorn_symmetry_inversion",
        shapes.clone(),
        &*base,
        &*inv,
        *base == *inv,
    ));
    // sign flip
    let kp_neg = KoornParams::new(
        kp.q.clone(),
        kp.t.clone(),
        [
            -&kp.tp[0],
            -&kp.tp[1],
            -&kp.tp[2],
            -&kp.tp[3],
        ],
        kp.that0.clone(),
    )?;
    let negated = koorn_poly(cx, n, lam, &kp_neg)?.negate_vars();
    let signed = if lam.size() % 2 == 0 {
        negated
    } else {
        negated.scale(&-Scalar::one())
    };
    report.push(Check::new(
        "koorn_symmetry_negation",
        shapes,
        &*base,
        &signed,
        *base == signed,
    ));
    Ok(report)
}

/// Kadell-type closed form for the virtual integral of an interpolation
/// polynomial.
pub fn kadell_integral(cx: &Caches, n: usize, lam: &Partition, kp: &KoornParams) -> Result<Report> {
    let (q, t) = (&kp.q, &kp.t);
    let poly = interp_poly(cx, n, lam, &kp.tp[0], q, t)?;
    let lhs = virtual_integral(cx, n, &poly, kp)?;
    let tn1 = t.pow(n as i64 - 1)?;
    let pref = &(-(&kp.tp[0] * &tn1)).pow(-(lam.size() as i64))?
        * &(&t.pow(2 * lam.n_stat() as i64)? * &q.pow(-(lam.n_stat_conj() as i64))?);
    let prod4 = &(&kp.tp[0] * &kp.tp[1]) * &(&kp.tp[2] * &kp.tp[3]);
    let num = cfun_multi(
        CKind::Zero,
        lam,
        &[
            &t.pow(n as i64)?,
            &(&tn1 * &(&kp.tp[0] * &kp.tp[1])),
            &(&tn1 * &(&kp.tp[0] * &kp.tp[2])),
            &(&tn1 * &(&kp.tp[0] * &kp.tp[3])),
        ],
        q,
        t,
    );
    let den = &cminus(lam, t, q, t) * &c0(lam, &(&(&tn1 * &tn1) * &prod4), q, t);
    let rhs = &pref * &num.checked_div(&den)?;
    let mut report = Report::new();
    report.push(Check::scalar_eq(
        "koorn_kadell_integral",
        format!("n={n} lambda=({lam})"),
        &lhs,
        &rhs,
    ));
    Ok(report)
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

    fn setup() -> (Scalar, Scalar, KoornParams) {
        let q_half = sc(2, 3);
        let t_half = sc(3, 5);
        let kp = KoornParams::from_halves(
            &q_half,
            &t_half,
            &[sc(1, 2), sc(2, 5), sc(3, 4), sc(5, 3)],
        )
        .unwrap();
        (q_half, t_half, kp)
    }

    #[test]
    fn k0_single_box_closed_form() {
        let (_, _, kp) = setup();
        let cap_t = sc(2, 7);
        assert_eq!(k0(&Partition::empty(), &cap_t, &kp).unwrap(), Scalar::one());
        let (q, t) = (&kp.q, &kp.t);
        let lam = pt(&[1]);
        let lhs = k0(&lam, &cap_t, &kp).unwrap();
        let mut rhs = t.checked_div(&(&kp.tp[0] * &cap_t)).unwrap();
        rhs *= &(Scalar::one() - &cap_t);
        for i in 1..4 {
            rhs *= &(Scalar::one()
                - &(&(&(&kp.tp[0] * &kp.tp[i]) * &cap_t) / t));
        }
        let hat2 = &kp.that0 * &kp.that0;
        rhs = rhs
            .checked_div(
                &(&(Scalar::one() - t)
                    * &(Scalar::one()
                        - &(&(q * &(&cap_t * &cap_t)) * &hat2.checked_div(&(t * t)).unwrap()))),
            )
            .unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn hat_invariance_of_diagonal_product() {
        // k⁰_ν(t₀:...)·P̄*_ν(ν; t̂₀-spectral) depends only on pairwise
        // products, hence is preserved by the hat involution
        let (_, _, kp) = setup();
        let hat = kp.hatted().unwrap();
        let n = 2usize;
        let tn = kp.t.pow(n as i64).unwrap();
        for nu in partitions::of_size_at_most_with_len(3, n) {
            let a = &k0(&nu, &tn, &kp).unwrap()
                * &diagonal_value(n, &nu, &kp.that0, &kp.q, &kp.t).unwrap();
            let b = &k0(&nu, &tn, &hat).unwrap()
                * &diagonal_value(n, &nu, &hat.that0, &kp.q, &kp.t).unwrap();
            assert_eq!(a, b, "hat invariance for {nu:?}");
        }
    }

    #[test]
    fn koorn_poly_univariate_orthogonal_to_one() {
        // n = 1, λ = (1): orthogonality against 1 under the q-Racah sum
        let (_, _, kp) = setup();
        let grid = QRacahGrid::new(1, 2, &kp.q, &kp.t, &kp.tp[0], &kp.tp[2], &kp.that0).unwrap();
        let cx = Caches::new();
        let k1 = koorn_poly(&cx, 1, &pt(&[1]), &grid.kp).unwrap();
        let inner = grid.expect(&k1).unwrap();
        assert!(inner.is_zero(), "⟨K_(1), 1⟩ = {inner}");
    }

    #[test]
    fn evaluation_symmetry_small() {
        let cx = Caches::new();
        let (_, _, kp) = setup();
        for lam in partitions::of_size_at_most_with_len(3, 2) {
            for mu in partitions::of_size_at_most_with_len(3, 2) {
                let r = evaluation_symmetry(&cx, 2, &lam, &mu, &kp).unwrap();
                assert!(r.all_pass(), "evaluation symmetry {lam:?}/{mu:?}");
            }
        }
    }

    #[test]
    fn parameter_and_trivial_symmetries() {
        let cx = Caches::new();
        let (_, _, kp) = setup();
        for lam in [pt(&[1]), pt(&[2, 1])] {
            let r = trivial_symmetries(&cx, 2, &lam, &kp).unwrap();
            assert!(r.all_pass(), "symmetries for {lam:?}");
        }
    }

    #[test]
    fn qracah_orthogonality_2x2() {
        let (_, _, kp) = setup();
        let cx = Caches::new();
        let (n, m) = (2usize, 2u32);
        let grid = QRacahGrid::new(n, m, &kp.q, &kp.t, &kp.tp[0], &kp.tp[2], &kp.that0).unwrap();
        let norm = grid.expect(&BcPoly::one(n)).unwrap();
        assert!(!norm.is_zero());
        let tn = grid.kp.t.pow(n as i64).unwrap();
        let swapped = grid.kp.permuted([1, 0, 2, 3]);
        for lam in partitions::in_box(m, n) {
            for mu in partitions::in_box(m, n) {
                let a = koorn_poly(&cx, n, &lam, &grid.kp).unwrap();
                let b = koorn_poly(&cx, n, &mu, &swapped).unwrap();
                let inner = grid.expect(&a.mul(&b)).unwrap().checked_div(&norm).unwrap();
                if lam == mu {
                    let expect = n_norm(&lam, &tn, &grid.kp).unwrap();
                    assert_eq!(inner, expect, "norm for {lam:?}");
                } else {
                    assert!(inner.is_zero(), "⟨K_{lam:?} K_{mu:?}⟩ ≠ 0");
                }
            }
        }
    }

    #[test]
    fn virtual_integral_basics() {
        let cx = Caches::new();
        let (_, _, kp) = setup();
        let n = 2usize;
        assert_eq!(
            virtual_integral(&cx, n, &BcPoly::one(n), &kp).unwrap(),
            Scalar::one()
        );
        for lam in [pt(&[1]), pt(&[2]), pt(&[1, 1])] {
            let k = koorn_poly(&cx, n, &lam, &kp).unwrap();
            assert!(virtual_integral(&cx, n, &k, &kp).unwrap().is_zero());
        }
    }

    #[test]
    fn virtual_integral_matches_qracah() {
        let (_, _, kp) = setup();
        let cx = Caches::new();
        let (n, m) = (2usize, 2u32);
        let grid = QRacahGrid::new(n, m, &kp.q, &kp.t, &kp.tp[0], &kp.tp[2], &kp.that0).unwrap();
        let norm = grid.expect(&BcPoly::one(n)).unwrap();
        for lam in [pt(&[1]), pt(&[2]), pt(&[1, 1]), pt(&[2, 1])] {
            let f = BcPoly::orbit_sum(&lam, n).unwrap();
            let a = virtual_integral(&cx, n, &f, &grid.kp).unwrap();
            let b = grid.expect(&f).unwrap().checked_div(&norm).unwrap();
            assert_eq!(a, b, "virtual vs q-Racah for {lam:?}");
        }
    }

    #[test]
    fn virtual_orthogonality_small() {
        let cx = Caches::new();
        let (_, _, kp) = setup();
        let n = 2usize;
        let tn = kp.t.pow(n as i64).unwrap();
        for lam in partitions::of_size_at_most_with_len(2, n) {
            for mu in partitions::of_size_at_most_with_len(2, n) {
                let a = koorn_poly(&cx, n, &lam, &kp).unwrap();
                let b = koorn_poly(&cx, n, &mu, &kp).unwrap();
                let inner = virtual_integral(&cx, n, &a.mul(&b), &kp).unwrap();
                if lam == mu {
                    assert_eq!(inner, n_norm(&lam, &tn, &kp).unwrap());
                } else {
                    assert!(inner.is_zero());
                }
            }
        }
    }

    #[test]
    fn kadell_small() {
        let cx = Caches::new();
        let (_, _, kp) = setup();
        for lam in partitions::of_size_at_most_with_len(3, 2) {
            let r = kadell_integral(&cx, 2, &lam, &kp).unwrap();
            assert!(r.all_pass(), "Kadell integral for {lam:?}");
        }
    }

    #[test]
    fn inverse_binomial_small() {
        let cx = Caches::new();
        let (_, _, kp) = setup();
        for lam in [pt(&[]), pt(&[1]), pt(&[2, 1])] {
            let r = inverse_binomial(&cx, 2, &lam, &kp).unwrap();
            assert!(r.all_pass(), "inverse binomial {lam:?}");
        }
    }

    #[test]
    fn diff_action_small() {
        let cx = Caches::new();
        let (q_half, _, kp) = setup();
        for lam in [pt(&[]), pt(&[1]), pt(&[1, 1]), pt(&[2])] {
            let r = diff_action(&cx, 2, &lam, &q_half, &kp).unwrap();
            assert!(r.all_pass(), "difference action {lam:?}");
        }
    }

    #[test]
    fn special_connections_small() {
        let cx = Caches::new();
        let (q_half, t_half, kp) = setup();
        for lam in [pt(&[1]), pt(&[2]), pt(&[2, 1])] {
            let r = special_connection(&cx, 2, &lam, &q_half, &kp).unwrap();
            assert!(r.all_pass(), "special connection {lam:?}");
            let r = special_connection_t(&cx, 2, &lam, &t_half, &kp).unwrap();
            assert!(r.all_pass(), "special connection (t) {lam:?}");
        }
    }

    #[test]
    fn quasi_branching_small() {
        let cx = Caches::new();
        let (_, t_half, kp) = setup();
        for lam in [pt(&[1]), pt(&[2]), pt(&[1, 1]), pt(&[2, 1])] {
            let r = quasi_branching(&cx, 1, &lam, &t_half, &kp).unwrap();
            assert!(r.all_pass(), "quasi branching {lam:?}");
        }
    }

    #[test]
    fn connection_small() {
        let cx = Caches::new();
        let (q_half, t_half, kp) = setup();
        let kp_primed = KoornParams::from_halves(
            &q_half,
            &t_half,
            &[sc(1, 2), sc(3, 7), sc(4, 9), sc(6, 5)],
        )
        .unwrap();
        for (lam, kappa) in [(pt(&[1]), pt(&[])), (pt(&[2]), pt(&[1])), (pt(&[1, 1]), pt(&[]))] {
            let r = connection(&cx, 2, &lam, &kappa, &kp, &kp_primed).unwrap();
            assert!(r.all_pass(), "connection {lam:?}/{kappa:?}");
        }
    }

    #[test]
    fn cauchy_koorn_1_1() {
        let cx = Caches::new();
        let (q_half, t_half, kp) = setup();
        let r = cauchy_koorn(&cx, 1, 1, &q_half, &t_half, &kp).unwrap();
        assert!(r.all_pass());
    }

    #[test]
    fn w8_7_integral_small() {
        let cx = Caches::new();
        let (_, _, kp) = setup();
        let u = sc(5, 7);
        for (n, m) in [(1, 1), (1, 2), (2, 1)] {
            let r = w8_7_integral(&cx, n, m, &u, &kp).unwrap();
            assert!(r.all_pass(), "integral representation n={n} m={m}");
        }
    }

    #[test]
    fn mn_symmetry_small() {
        let cx = Caches::new();
        let (_, t_half, kp) = setup();
        let r = mn_symmetry_series(&cx, 2, 1, 3, &t_half, &kp).unwrap();
        assert!(r.all_pass());
    }
}
