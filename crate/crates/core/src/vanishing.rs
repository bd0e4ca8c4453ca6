//! Vanishing checks for virtual Koornwinder integrals of Macdonald
//! polynomials at symmetric-space parameter specializations, including the
//! Grassmannian families, Laurent-Macdonald constant terms, the Schur-case
//! cross-check, and the D-type combination test.

use std::collections::BTreeMap;

use crate::bcpoly::BcPoly;
use crate::cnorm::{c0, cfun_multi, cminus, cplus, CKind};
use crate::error::{Error, Result};
use crate::interpolation::Caches;
use crate::koornwinder::{koorn_poly, virtual_integral, KoornParams};
use crate::lifting::{gaussian_integral, lifted_koorn, virtual_integral_t};
use crate::partitions::{self, Partition};
use crate::report::{Check, Report};
use crate::scalar::{qpoch, Scalar};
use crate::symfunc::{rule_double_halve, PkImage, SymEngine};

/// Parameter pack `(±√t, ±√(qt))`: the symplectic-type specialization.
/// The hat parameter is `t` exactly.
pub fn usp_params(q_half: &Scalar, t_half: &Scalar) -> Result<KoornParams> {
    let q = q_half * q_half;
    let t = t_half * t_half;
    let sq = q_half * t_half;
    KoornParams::new(
        q,
        t.clone(),
        [t_half.clone(), -t_half, sq.clone(), -&sq],
        t,
    )
}

/// Parameter pack `(±1, ±√t)`: the orthogonal-type specialization.
/// The hat parameter is `√t/√q` exactly.
pub fn uo_params(q_half: &Scalar, t_half: &Scalar) -> Result<KoornParams> {
    let q = q_half * q_half;
    let t = t_half * t_half;
    KoornParams::new(
        q,
        t,
        [Scalar::one(), -Scalar::one(), t_half.clone(), -t_half],
        t_half.checked_div(q_half)?,
    )
}

/// Conjectured value of the symplectic-type integral on `λ = μ²`:
/// `C⁰_μ(T²;q,t²) C⁻_μ(qt;q,t²) / (C⁰_μ(qT²/t;q,t²) C⁻_μ(t²;q,t²))`.
pub fn usp_value(mu: &Partition, cap_t: &Scalar, q: &Scalar, t: &Scalar) -> Result<Scalar> {
    let t2 = t * t;
    let tt2 = cap_t * cap_t;
    let num = &c0(mu, &tt2, q, &t2) * &cminus(mu, &(q * t), q, &t2);
    let den = &c0(mu, &(q * &tt2).checked_div(t)?, q, &t2) * &cminus(mu, &t2, q, &t2);
    num.checked_div(&den)
}

/// Conjectured value of the orthogonal-type integral on `λ = 2μ`:
/// `C⁰_μ(T²;q²,t) C⁻_μ(q;q²,t) / (C⁰_μ(qT²/t;q²,t) C⁻_μ(t;q²,t))`.
pub fn uo_value(mu: &Partition, cap_t: &Scalar, q: &Scalar, t: &Scalar) -> Result<Scalar> {
    let q2 = q * q;
    let tt2 = cap_t * cap_t;
    let num = &c0(mu, &tt2, &q2, t) * &cminus(mu, q, &q2, t);
    let den = &c0(mu, &(q * &tt2).checked_div(t)?, &q2, t) * &cminus(mu, t, &q2, t);
    num.checked_div(&den)
}

fn square_root_shape(lam: &Partition) -> Option<Partition> {
    // λ = μ² iff parts pair up
    let p = lam.parts();
    if p.len() % 2 != 0 {
        return None;
    }
    let mut halves = Vec::with_capacity(p.len() / 2);
    for pair in p.chunks(2) {
        if pair[0] != pair[1] {
            return None;
        }
        halves.push(pair[0]);
    }
    Some(Partition::new(halves))
}

fn half_parts_shape(lam: &Partition) -> Option<Partition> {
    // λ = 2μ iff every part is even
    if lam.parts().iter().any(|&p| p % 2 != 0) {
        return None;
    }
    Some(Partition::new(
        lam.parts().iter().map(|&p| p / 2).collect::<Vec<_>>(),
    ))
}

/// The `T = 0` vanishing propositions through the Gaussian pipeline.
pub fn check_t0_props(
    cx: &Caches,
    lam: &Partition,
    q_half: &Scalar,
    t_half: &Scalar,
) -> Result<Report> {
    let mut report = Report::new();
    let engine = cx.engine(&(q_half * q_half), &(t_half * t_half));
    let f = engine.macdonald_p(lam)?;
    let (q, t) = (q_half * q_half, t_half * t_half);
    // symplectic type: zero unless λ = μ², value C⁻_μ(qt;q,t²)/C⁻_μ(t²;q,t²)
    {
        let kp = usp_params(q_half, t_half)?;
        let value = gaussian_integral(cx, &f, &kp)?;
        let expect = match square_root_shape(lam) {
            Some(mu) => {
                let t2 = &t * &t;
                cminus(&mu, &(&q * &t), &q, &t2).checked_div(&cminus(&mu, &t2, &q, &t2))?
            }
            None => Scalar::zero(),
        };
        report.push(Check::scalar_eq(
            "vanishing_t0_symplectic",
            format!("lambda=({lam})"),
            &value,
            &expect,
        ));
    }
    // orthogonal type: zero unless λ = 2μ, value C⁻_μ(q;q²,t)/C⁻_μ(t;q²,t)
    {
        let kp = uo_params(q_half, t_half)?;
        let value = gaussian_integral(cx, &f, &kp)?;
        let expect = match half_parts_shape(lam) {
            Some(mu) => {
                let q2 = &q * &q;
                cminus(&mu, &q, &q2, &t).checked_div(&cminus(&mu, &t, &q2, &t))?
            }
            None => Scalar::zero(),
        };
        report.push(Check::scalar_eq(
            "vanishing_t0_orthogonal",
            format!("lambda=({lam})"),
            &value,
            &expect,
        ));
    }
    Ok(report)
}

/// The symplectic-type family at `T = tⁿ` through the `n`-variable virtual
/// integral of the restricted Macdonald polynomial.
pub fn check_usp_n(
    cx: &Caches,
    n: usize,
    lam: &Partition,
    q_half: &Scalar,
    t_half: &Scalar,
) -> Result<Report> {
    let kp = usp_params(q_half, t_half)?;
    let engine = cx.engine(&kp.q, &kp.t);
    let f = engine.restrict_bc(&engine.macdonald_p(lam)?, n)?;
    let value = virtual_integral(cx, n, &f, &kp)?;
    let tn = kp.t.pow(n as i64)?;
    let expect = match square_root_shape(lam) {
        Some(mu) if lam.len() <= 2 * n => usp_value(&mu, &tn, &kp.q, &kp.t)?,
        _ => Scalar::zero(),
    };
    let mut report = Report::new();
    report.push(Check::scalar_eq(
        "vanishing_usp_n_variables",
        format!("n={n} lambda=({lam})"),
        &value,
        &expect,
    ));
    Ok(report)
}

/// The symplectic-type family at generic `T` through the lifted virtual
/// integral.
pub fn check_usp_t(
    cx: &Caches,
    lam: &Partition,
    cap_t: &Scalar,
    q_half: &Scalar,
    t_half: &Scalar,
) -> Result<Report> {
    let kp = usp_params(q_half, t_half)?;
    let engine = cx.engine(&kp.q, &kp.t);
    let f = engine.macdonald_p(lam)?;
    let value = virtual_integral_t(cx, &f, cap_t, &kp)?;
    let expect = match square_root_shape(lam) {
        Some(mu) => usp_value(&mu, cap_t, &kp.q, &kp.t)?,
        None => Scalar::zero(),
    };
    let mut report = Report::new();
    report.push(Check::scalar_eq(
        "vanishing_usp_generic_t",
        format!("lambda=({lam}) T={cap_t}"),
        &value,
        &expect,
    ));
    Ok(report)
}

/// The orthogonal-type family at generic `T`.
pub fn check_uo_t(
    cx: &Caches,
    lam: &Partition,
    cap_t: &Scalar,
    q_half: &Scalar,
    t_half: &Scalar,
) -> Result<Report> {
    let kp = uo_params(q_half, t_half)?;
    let engine = cx.engine(&kp.q, &kp.t);
    let f = engine.macdonald_p(lam)?;
    let value = virtual_integral_t(cx, &f, cap_t, &kp)?;
    let expect = match half_parts_shape(lam) {
        Some(mu) => uo_value(&mu, cap_t, &kp.q, &kp.t)?,
        None => Scalar::zero(),
    };
    let mut report = Report::new();
    report.push(Check::scalar_eq(
        "vanishing_uo_generic_t",
        format!("lambda=({lam}) T={cap_t}"),
        &value,
        &expect,
    ));
    Ok(report)
}

/// The orthogonal-type two-term combination at `T = tⁿ`: the boundary
/// cases of the parameter specialization cancel between an `n`-variable
/// integral and an `(n-1)`-variable integral with two frozen variables.
pub fn check_uo_combination(
    cx: &Caches,
    n: usize,
    lam: &Partition,
    q_half: &Scalar,
    t_half: &Scalar,
) -> Result<Report> {
    let q = q_half * q_half;
    let t = t_half * t_half;
    let engine = cx.engine(&q, &t);
    let mac = engine.macdonald_p(lam)?;
    // lead with ±√t: the binomial-formula basis degenerates at spectral 1
    let kp1 = uo_params(q_half, t_half)?.permuted([2, 3, 0, 1]);
    let first = {
        let f = engine.restrict_bc(&mac, n)?;
        virtual_integral(cx, n, &f, &kp1)?
    };
    // (n-1)-variable integral of P_λ(x^{±1}, 1, -1) at (±t, ±√t)
    let kp2 = KoornParams::new(
        q.clone(),
        t.clone(),
        [t.clone(), -&t, t_half.clone(), -t_half],
        &t * &t_half.checked_div(q_half)?,
    )?;
    let second = {
        let shifted = engine.plethysm_map(&mac, |k| {
            let c = if k % 2 == 0 {
                Scalar::from_int(2)
            } else {
                Scalar::zero()
            };
            PkImage::shifted(k, c)
        })?;
        let f = engine.restrict_bc(&shifted, n - 1)?;
        virtual_integral(cx, n - 1, &f, &kp2)?
    };
    let sum = &first + &second;
    let mut report = Report::new();
    let off_pattern = half_parts_shape(lam).is_none();
    report.push(Check::new(
        "vanishing_uo_two_term_combination",
        format!("n={n} lambda=({lam})"),
        &sum,
        &if off_pattern { "0" } else { "unconstrained" },
        !off_pattern || sum.is_zero(),
    ));
    Ok(report)
}

/// Agreement of the `n`-variable and generic-`T` symplectic-type pipelines
/// at `T = tⁿ`.
pub fn check_usp_equivalence(
    cx: &Caches,
    n: usize,
    lam: &Partition,
    q_half: &Scalar,
    t_half: &Scalar,
) -> Result<Report> {
    let kp = usp_params(q_half, t_half)?;
    let engine = cx.engine(&kp.q, &kp.t);
    let mac = engine.macdonald_p(lam)?;
    let tn = kp.t.pow(n as i64)?;
    let a = {
        let f = engine.restrict_bc(&mac, n)?;
        virtual_integral(cx, n, &f, &kp)?
    };
    let b = virtual_integral_t(cx, &mac, &tn, &kp)?;
    let mut report = Report::new();
    report.push(Check::scalar_eq(
        "vanishing_usp_equivalence",
        format!("n={n} lambda=({lam})"),
        &a,
        &b,
    ));
    Ok(report)
}

/// Conjugation duality of the two families: the orthogonal-type pattern at
/// `(q,t)` mirrors the symplectic-type pattern of the conjugate at `(t,q)`.
pub fn check_conjugation_duality(
    cx: &Caches,
    lam: &Partition,
    cap_t: &Scalar,
    q_half: &Scalar,
    t_half: &Scalar,
) -> Result<Report> {
    let kp_uo = uo_params(q_half, t_half)?;
    let engine_uo = cx.engine(&kp_uo.q, &kp_uo.t);
    let uo = virtual_integral_t(cx, &engine_uo.macdonald_p(lam)?, cap_t, &kp_uo)?;
    let kp_usp = usp_params(t_half, q_half)?;
    let engine_usp = cx.engine(&kp_usp.q, &kp_usp.t);
    let usp = virtual_integral_t(
        cx,
        &engine_usp.macdonald_p(&lam.conjugate())?,
        cap_t,
        &kp_usp,
    )?;
    let mut report = Report::new();
    report.push(Check::new(
        "vanishing_conjugation_duality",
        format!("lambda=({lam})"),
        &format!("{} (orthogonal-type)", uo),
        &format!("{} (symplectic-type of conjugate)", usp),
        uo.is_zero() == usp.is_zero(),
    ));
    Ok(report)
}

/// The Schur-case cross-check: at `q = t` the nonzero values are 1.
pub fn schur_crosscheck(cx: &Caches, lam: &Partition, half: &Scalar) -> Result<Report> {
    let mut report = Report::new();
    let q = half * half;
    let engine = cx.engine(&q, &q);
    let f = engine.macdonald_p(lam)?;
    let cap_t = Scalar::ratio(2, 7);
    {
        let kp = usp_params(half, half)?;
        let value = virtual_integral_t(cx, &f, &cap_t, &kp)?;
        let expect = if square_root_shape(lam).is_some() {
            Scalar::one()
        } else {
            Scalar::zero()
        };
        report.push(Check::scalar_eq(
            "vanishing_schur_symplectic",
            format!("lambda=({lam})"),
            &value,
            &expect,
        ));
    }
    {
        let kp = uo_params(half, half)?;
        let value = virtual_integral_t(cx, &f, &cap_t, &kp)?;
        let expect = if half_parts_shape(lam).is_some() {
            Scalar::one()
        } else {
            Scalar::zero()
        };
        report.push(Check::scalar_eq(
            "vanishing_schur_orthogonal",
            format!("lambda=({lam})"),
            &value,
            &expect,
        ));
    }
    Ok(report)
}

/// Grassmannian-type integral of the doubled-alphabet lifted Koornwinder
/// polynomial; `sp` selects the symplectic variant.
pub fn check_grassmannian(
    cx: &Caches,
    lam: &Partition,
    cap_t: &Scalar,
    a: &Scalar,
    b: &Scalar,
    q_half: &Scalar,
    t_half: &Scalar,
    sp: bool,
) -> Result<Report> {
    let q = q_half * q_half;
    let t = t_half * t_half;
    let inner_kp = KoornParams::new(
        q.clone(),
        t.clone(),
        [a.clone(), -a, b.clone(), -b],
        (a * b).checked_div(q_half)?,
    )?;
    let inner = lifted_koorn(cx, lam, cap_t, &inner_kp)?;
    let engine = cx.engine(&q, &t);
    let halved = engine.plethysm_map(&inner, rule_double_halve)?;
    // re-tag for the outer (q², t²) engine: coefficients are m-basis
    let outer_q = &q * &q;
    let outer_t = &t * &t;
    let ab = a * b;
    let outer_kp = if sp {
        // (-t, -qt, a², b²): hat = t·ab/√q
        KoornParams::new(
            outer_q,
            outer_t,
            [-&t, -(&q * &t), a * a, b * b],
            (&t * &ab).checked_div(q_half)?,
        )?
    } else {
        // (-1, -t, a², b²): hat = √t·ab/q
        KoornParams::new(
            outer_q,
            outer_t,
            [-Scalar::one(), -&t, a * a, b * b],
            (t_half * &ab).checked_div(&q)?,
        )?
    };
    let value = virtual_integral_t(cx, &halved, cap_t, &outer_kp)?;
    let (name, expect, on_pattern) = if sp {
        match square_root_shape(lam) {
            Some(mu) => {
                let sign = if mu.size() % 2 == 0 {
                    Scalar::one()
                } else {
                    -Scalar::one()
                };
                let t2 = &t * &t;
                let ab2 = &ab * &ab;
                let tt = cap_t * cap_t;
                let num = &cminus(&mu, &(&q * &t), &q, &t2)
                    * &(&cplus(&mu, &(&ab2 * &tt).checked_div(&t.pow(4)?)?, &q, &t2)
                        * &cfun_multi(
                            CKind::Zero,
                            &mu,
                            &[
                                cap_t,
                                &-(&(a * a) * cap_t).checked_div(&t)?,
                                &-(&(b * b) * cap_t).checked_div(&t)?,
                                &(&ab2 * cap_t).checked_div(&(&t * &t))?,
                            ],
                            &q,
                            &t2,
                        ));
                let den = &cplus(&mu, &(&ab2 * &tt).checked_div(&(&q * &t.pow(3)?))?, &q, &t2)
                    * &(&cminus(&mu, &t2, &q, &t2)
                        * &c0(
                            &mu.square(),
                            &(&(&ab2 * &tt) * &q).checked_div(&(&t * &t))?,
                            &(&q * &q),
                            &t2,
                        ));
                ((&sign * &num).checked_div(&den)?, true)
            }
            None => (Scalar::zero(), false),
        }
        .pipe(|(e, p)| ("vanishing_sp_grassmannian", e, p))
    } else {
        match half_parts_shape(lam) {
            Some(mu) => {
                let sign = if mu.size() % 2 == 0 {
                    Scalar::one()
                } else {
                    -Scalar::one()
                };
                let q2 = &q * &q;
                let ab2 = &ab * &ab;
                let tt = cap_t * cap_t;
                let num = &cminus(&mu, &q, &q2, &t)
                    * &(&cplus(&mu, &(&ab2 * &tt).checked_div(&t.pow(3)?)?, &q2, &t)
                        * &cfun_multi(
                            CKind::Zero,
                            &mu,
                            &[
                                cap_t,
                                &-(&(a * a) * cap_t).checked_div(&t)?,
                                &-(&(b * b) * cap_t).checked_div(&t)?,
                                &(&ab2 * cap_t).checked_div(&(&t * &t))?,
                            ],
                            &q2,
                            &t,
                        ));
                let den = &cminus(&mu, &t, &q2, &t)
                    * &(&cplus(&mu, &(&ab2 * &tt).checked_div(&(&q * &(&t * &t)))?, &q2, &t)
                        * &c0(
                            &mu.double(),
                            &(&ab2 * &tt).checked_div(&t.pow(3)?)?,
                            &q2,
                            &(&t * &t),
                        ));
                ((&sign * &num).checked_div(&den)?, true)
            }
            None => (Scalar::zero(), false),
        }
        .pipe(|(e, p)| ("vanishing_o_grassmannian", e, p))
    };
    let mut report = Report::new();
    let zero_check = Check::new(
        format!("{name}_off_pattern_zero"),
        format!("lambda=({lam})"),
        &value,
        &Scalar::zero(),
        on_pattern || value.is_zero(),
    );
    if !on_pattern {
        report.push(zero_check);
    } else {
        report.push(
            Check::scalar_eq(
                format!("{name}_value"),
                format!("lambda=({lam})"),
                &value,
                &expect,
            )
            .advisory(),
        );
    }
    Ok(report)
}

trait Pipe: Sized {
    fn pipe<R>(self, f: impl FnOnce(Self) -> R) -> R {
        f(self)
    }
}
impl<T> Pipe for T {}

/// The two rank-one orthogonal propositions.
pub fn check_o1_props(
    cx: &Caches,
    lam: &Partition,
    cap_t: &Scalar,
    t_half: &Scalar,
    kp: &KoornParams,
) -> Result<Report> {
    let engine = cx.engine(&kp.q, &kp.t);
    let (q, t) = (&kp.q, &kp.t);
    let mut report = Report::new();
    let l1 = lam.part(1) as i64;
    let prod4 = &(&kp.tp[0] * &kp.tp[1]) * &(&kp.tp[2] * &kp.tp[3]);
    let tt2 = cap_t * cap_t;
    // first proposition: adjoin t₀ to the alphabet, shift T by t, scale t₀
    {
        let inner = lifted_koorn(cx, lam, &(t * cap_t), kp)?;
        let t0 = kp.tp[0].clone();
        let shifted = engine.plethysm_map(&inner, |k| {
            let k_i = k as i64;
            PkImage::shifted(k, &t0.pow(k_i).unwrap() + &t0.pow(-k_i).unwrap())
        })?;
        let outer_kp = kp.scaled_entry(0, t, t_half)?;
        let value = virtual_integral_t(cx, &shifted, cap_t, &outer_kp)?;
        let expect = if lam.len() <= 1 {
            let mut num = Scalar::one();
            for i in 1..4 {
                num *= &qpoch(&(&(cap_t * &kp.tp[0]) * &kp.tp[i]), q, l1)?;
            }
            num *= &qpoch(&(cap_t * &prod4).checked_div(t)?, q, l1)?;
            let den = &qpoch(&(&q.pow(l1 - 1)? * &(&tt2 * &prod4)), q, l1)?
                * &qpoch(&(&tt2 * &prod4).checked_div(t)?, q, l1)?;
            &kp.tp[0].pow(-l1)? * &num.checked_div(&den)?
        } else {
            Scalar::zero()
        };
        report.push(Check::scalar_eq(
            "vanishing_o1_adjoined",
            format!("lambda=({lam})"),
            &value,
            &expect,
        ));
    }
    // second proposition: inner family at t₀t, integrated against t₀
    {
        let inner_kp = kp.scaled_entry(0, t, t_half)?;
        let inner = lifted_koorn(cx, lam, cap_t, &inner_kp)?;
        let value = virtual_integral_t(cx, &inner, cap_t, kp)?;
        let expect = if lam.len() <= 1 {
            let mut num = qpoch(cap_t, q, l1)?;
            for (i, j) in [(1usize, 2usize), (1, 3), (2, 3)] {
                num *= &qpoch(
                    &(cap_t * &(&kp.tp[i] * &kp.tp[j])).checked_div(t)?,
                    q,
                    l1,
                )?;
            }
            let den = &qpoch(&(&q.pow(l1 - 1)? * &(&tt2 * &prod4).checked_div(t)?), q, l1)?
                * &qpoch(&(&tt2 * &prod4).checked_div(&(t * t))?, q, l1)?;
            &kp.tp[0].pow(l1)? * &num.checked_div(&den)?
        } else {
            Scalar::zero()
        };
        report.push(Check::scalar_eq(
            "vanishing_o1_scaled",
            format!("lambda=({lam})"),
            &value,
            &expect,
        ));
    }
    Ok(report)
}

/// The rank-two orthogonal theorems: zero off the even-size length-two
/// pattern, generically nonzero on it.
pub fn check_o2_theorems(
    cx: &Caches,
    lam: &Partition,
    cap_t: &Scalar,
    a: &Scalar,
    b: &Scalar,
    q_half: &Scalar,
    t_half: &Scalar,
) -> Result<Report> {
    let q = q_half * q_half;
    let t = t_half * t_half;
    let engine = cx.engine(&q, &t);
    let ab = a * b;
    let mut report = Report::new();
    let on_pattern = lam.len() <= 2 && lam.size() % 2 == 0;
    // first theorem: ±a adjoined, T shifted by t², outer at (±at, ±b)
    {
        let inner_kp = KoornParams::new(
            q.clone(),
            t.clone(),
            [a.clone(), -a, b.clone(), -b],
            ab.checked_div(q_half)?,
        )?;
        let inner = lifted_koorn(cx, lam, &(&(&t * &t) * cap_t), &inner_kp)?;
        let a_cl = a.clone();
        let shifted = engine.plethysm_map(&inner, |k| {
            let k_i = k as i64;
            if k % 2 == 0 {
                let c = &(&a_cl.pow(k_i).unwrap() + &a_cl.pow(-k_i).unwrap())
                    * &Scalar::from_int(2);
                PkImage::shifted(k, c)
            } else {
                PkImage::shifted(k, Scalar::zero())
            }
        })?;
        let outer_kp = KoornParams::new(
            q.clone(),
            t.clone(),
            [a * &t, -(a * &t), b.clone(), -b],
            (&ab * &t).checked_div(q_half)?,
        )?;
        let value = virtual_integral_t(cx, &shifted, cap_t, &outer_kp)?;
        report.push(Check::new(
            "vanishing_o2_adjoined",
            format!("lambda=({lam})"),
            &value,
            &if on_pattern { "nonzero" } else { "0" },
            if on_pattern {
                !value.is_zero()
            } else {
                value.is_zero()
            },
        ));
    }
    // second theorem: inner at (±at, ±b), outer at (±a, ±b)
    {
        let inner_kp = KoornParams::new(
            q.clone(),
            t.clone(),
            [a * &t, -(a * &t), b.clone(), -b],
            (&ab * &t).checked_div(q_half)?,
        )?;
        let inner = lifted_koorn(cx, lam, cap_t, &inner_kp)?;
        let outer_kp = KoornParams::new(
            q.clone(),
            t.clone(),
            [a.clone(), -a, b.clone(), -b],
            ab.checked_div(q_half)?,
        )?;
        let value = virtual_integral_t(cx, &inner, cap_t, &outer_kp)?;
        report.push(Check::new(
            "vanishing_o2_scaled",
            format!("lambda=({lam})"),
            &value,
            &if on_pattern { "nonzero" } else { "0" },
            if on_pattern {
                !value.is_zero()
            } else {
                value.is_zero()
            },
        ));
    }
    Ok(report)
}

/// Normalized torus constant term of a symmetric Laurent polynomial against
/// the Macdonald density: the coefficient of the trivial Laurent Macdonald
/// polynomial.
pub fn laurent_macdonald_ct(
    engine: &SymEngine,
    f: &BcPoly,
    n: usize,
) -> Result<Scalar> {
    // shift to a polynomial
    let shift = f
        .terms()
        .keys()
        .flat_map(|e| e.iter().copied())
        .min()
        .unwrap_or(0)
        .min(0);
    let mut g = BcPoly::zero(n);
    for (e, c) in f.terms() {
        let exps: Vec<i64> = e.iter().map(|x| x - shift).collect();
        g.add_term(exps, c.clone());
    }
    // collect into partition-indexed monomial coefficients
    let mut coeffs: BTreeMap<Partition, Scalar> = BTreeMap::new();
    for (e, c) in g.terms() {
        let mut parts: Vec<u32> = e.iter().map(|&x| x as u32).collect();
        parts.sort_unstable_by(|x, y| y.cmp(x));
        let key = Partition::new(parts);
        match coeffs.get(&key) {
            None => {
                coeffs.insert(key, c.clone());
            }
            Some(prev) => {
                if prev != c {
                    return Err(Error::NotSymmetric(
                        "constant-term input is not symmetric".into(),
                    ));
                }
            }
        }
    }
    // peel against Macdonald polynomials restricted to n variables
    let target = Partition::new(vec![(-shift) as u32; n]);
    let mut result = Scalar::zero();
    loop {
        let Some(lam) = coeffs
            .keys()
            .cloned()
            .max_by(|a, b| partitions::dominance_refining(a, b))
        else {
            break;
        };
        let c = coeffs.remove(&lam).unwrap();
        if c.is_zero() {
            continue;
        }
        if lam == target {
            result = c.clone();
        }
        for (nu, v) in engine.macdonald_p(&lam)?.coeffs {
            if nu == lam || nu.len() > n {
                continue;
            }
            let entry = coeffs.entry(nu).or_insert_with(Scalar::zero);
            *entry -= &(&c * &v);
        }
        coeffs.retain(|_, v| !v.is_zero());
    }
    Ok(result)
}

fn gl_weight_partition(mu: &Partition, nu: &Partition, n: usize) -> Result<Partition> {
    if mu.len() + nu.len() > n {
        return Err(Error::ShapeError(format!(
            "weight ({mu})(-{nu}) needs more than {n} entries"
        )));
    }
    let shift = nu.part(1);
    let parts: Vec<u32> = (1..=n)
        .map(|i| {
            if i <= mu.len() {
                mu.part(i) + shift
            } else if i > n - nu.len() {
                shift - nu.part(n + 1 - i)
            } else {
                shift
            }
        })
        .collect();
    Ok(Partition::new(parts))
}

/// Doubled-variable Grassmannian constant term: the Laurent Macdonald
/// polynomial at the halved alphabet against the `(q², t²)` density.
pub fn check_u_grass2(
    cx: &Caches,
    n: usize,
    mu: &Partition,
    nu: &Partition,
    q: &Scalar,
    t: &Scalar,
) -> Result<Report> {
    let engine = cx.engine(q, t);
    let engine_sq = cx.engine(&(q * q), &(t * t));
    let shift = nu.part(1);
    let lam_tilde = gl_weight_partition(mu, nu, 2 * n)?;
    let mac = engine.macdonald_p(&lam_tilde)?;
    let halved = engine.plethysm_map(&mac, rule_double_halve)?;
    let poly = engine.restrict_vars(&halved, n)?;
    let sign = if (n as u32 * shift) % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    };
    let f = poly
        .mul(&BcPoly::monomial(n, vec![-(shift as i64); n], Scalar::one()))
        .scale(&sign);
    let value = laurent_macdonald_ct(&engine_sq, &f, n)?;
    let mut report = Report::new();
    if mu != nu {
        report.push(Check::scalar_eq(
            "vanishing_u_grass2_off_pattern",
            format!("mu=({mu}) nu=({nu}) n={n}"),
            &value,
            &Scalar::zero(),
        ));
    } else {
        let sign = if mu.size() % 2 == 0 {
            Scalar::one()
        } else {
            -Scalar::one()
        };
        let tn = t.pow(n as i64)?;
        let t2n2 = t.pow(2 * n as i64 - 2)?;
        let qt = q * &t.pow(n as i64 - 1)?;
        let num = &cminus(mu, q, q, t)
            * &(&cplus(mu, &(&t2n2 * q), q, t)
                * &cfun_multi(CKind::Zero, mu, &[&tn, &-&tn], q, t));
        let den = &cminus(mu, t, q, t)
            * &(&cplus(mu, &(&t2n2 * t), q, t)
                * &cfun_multi(CKind::Zero, mu, &[&qt, &-&qt], q, t));
        let expect = &sign * &num.checked_div(&den)?;
        report.push(
            Check::scalar_eq(
                "vanishing_u_grass2_value",
                format!("mu=({mu}) n={n}"),
                &value,
                &expect,
            )
            .advisory(),
        );
    }
    Ok(report)
}

/// Split-alphabet Grassmannian constant term via iterated expansion: the
/// value reduces to a single skew coefficient.
pub fn check_u_grass1(
    cx: &Caches,
    m: usize,
    n: usize,
    mu: &Partition,
    nu: &Partition,
    q: &Scalar,
    t: &Scalar,
) -> Result<Report> {
    let engine = cx.engine(q, t);
    let shift = nu.part(1);
    let lam_tilde = gl_weight_partition(mu, nu, m + n)?;
    let box_m = Partition::new(vec![shift; m]);
    let target = Partition::new(vec![shift; n]);
    let value = if lam_tilde.contains(&box_m) {
        engine
            .skew_p_coeffs(&lam_tilde, &box_m)?
            .get(&target)
            .cloned()
            .unwrap_or_else(Scalar::zero)
    } else {
        Scalar::zero()
    };
    let mut report = Report::new();
    let on_pattern = mu == nu && mu.len() <= m;
    if !on_pattern {
        report.push(Check::scalar_eq(
            "vanishing_u_grass1_off_pattern",
            format!("mu=({mu}) nu=({nu}) m={m} n={n}"),
            &value,
            &Scalar::zero(),
        ));
    } else {
        let tn = t.pow(n as i64)?;
        let tm = t.pow(m as i64)?;
        let tmn2 = t.pow((m + n) as i64 - 2)?;
        let num = &cminus(mu, q, q, t)
            * &(&cplus(mu, &(&tmn2 * q), q, t) * &cfun_multi(CKind::Zero, mu, &[&tn, &tm], q, t));
        let den = &cminus(mu, t, q, t)
            * &(&cplus(mu, &(&tmn2 * t), q, t)
                * &cfun_multi(
                    CKind::Zero,
                    mu,
                    &[
                        &(q * &t.pow(n as i64 - 1)?),
                        &(q * &t.pow(m as i64 - 1)?),
                    ],
                    q,
                    t,
                ));
        let expect = num.checked_div(&den)?;
        report.push(
            Check::scalar_eq(
                "vanishing_u_grass1_value",
                format!("mu=({mu}) m={m} n={n}"),
                &value,
                &expect,
            )
            .advisory(),
        );
    }
    Ok(report)
}

/// D-type combination: the parity-split mixtures of rectangular
/// Koornwinder polynomials, twisted back to ordinary polynomials, expand
/// over Macdonald polynomials supported on doubled shapes only.  `weight`
/// is the multiplier of the spinor-type fundamental weight.
pub fn check_dm_combination(
    cx: &Caches,
    m: usize,
    weight: u32,
    q_half: &Scalar,
    t_half: &Scalar,
) -> Result<Report> {
    let q = q_half * q_half;
    let t = t_half * t_half;
    let k = weight / 2;
    let combo = if weight % 2 == 0 {
        // (Πy)^k K_{k^m}(±1, ±√t) + Πy_j^{k-1}(1-y_j²) K_{(k-1)^m}(±t, ±√t)
        let kp1 = KoornParams::new(
            t.clone(),
            q.clone(),
            [t_half.clone(), -t_half, Scalar::one(), -Scalar::one()],
            Scalar::one(),
        )?;
        let rect1 = Partition::new(vec![k; m]);
        let mut first = (*koorn_poly(cx, m, &rect1, &kp1)?).clone();
        first = first.mul(&BcPoly::monomial(m, vec![k as i64; m], Scalar::one()));
        if k == 0 {
            first
        } else {
            let kp2 = KoornParams::new(
                t.clone(),
                q.clone(),
                [t.clone(), -&t, t_half.clone(), -t_half],
                t.clone(),
            )?;
            let rect2 = Partition::new(vec![k - 1; m]);
            let mut second = (*koorn_poly(cx, m, &rect2, &kp2)?).clone();
            for j in 0..m {
                let mut factor = BcPoly::zero(m);
                let mut e = vec![0i64; m];
                e[j] = k as i64 - 1;
                factor.add_term(e.clone(), Scalar::one());
                e[j] = k as i64 + 1;
                factor.add_term(e, -Scalar::one());
                second = second.mul(&factor);
            }
            first.add(&second)
        }
    } else {
        // Π(1-y_j)(Πy)^k K_{k^m}(t,-1,±√t) + Π(1+y_j)(Πy)^k K_{k^m}(-t,1,±√t)
        let kp1 = KoornParams::new(
            t.clone(),
            q.clone(),
            [t.clone(), -Scalar::one(), t_half.clone(), -t_half],
            t_half.clone(),
        )?;
        let kp2 = KoornParams::new(
            t.clone(),
            q.clone(),
            [-&t, Scalar::one(), t_half.clone(), -t_half],
            t_half.clone(),
        )?;
        let rect = Partition::new(vec![k; m]);
        let mut first = (*koorn_poly(cx, m, &rect, &kp1)?).clone();
        let mut second = (*koorn_poly(cx, m, &rect, &kp2)?).clone();
        for j in 0..m {
            for (poly, sign) in [(&mut first, -Scalar::one()), (&mut second, Scalar::one())] {
                let mut factor = BcPoly::zero(m);
                let mut e = vec![0i64; m];
                e[j] = k as i64;
                factor.add_term(e.clone(), Scalar::one());
                e[j] = k as i64 + 1;
                factor.add_term(e, sign);
                *poly = poly.mul(&factor);
            }
        }
        first.add(&second)
    };
    // expand in Macdonald P(y; t, q) and check the support
    let engine_swap = cx.engine(&t, &q);
    let mut coeffs: BTreeMap<Partition, Scalar> = BTreeMap::new();
    for (e, c) in combo.terms() {
        let mut parts: Vec<u32> = e.iter().map(|&x| x as u32).collect();
        parts.sort_unstable_by(|x, y| y.cmp(x));
        coeffs.insert(Partition::new(parts), c.clone());
    }
    let mut report = Report::new();
    let mut ok = true;
    let mut bad = String::new();
    loop {
        let Some(lam) = coeffs
            .keys()
            .cloned()
            .max_by(|a, b| partitions::dominance_refining(a, b))
        else {
            break;
        };
        let c = coeffs.remove(&lam).unwrap();
        if c.is_zero() {
            continue;
        }
        if square_root_shape(&lam).is_none() {
            ok = false;
            bad = format!("unexpected support at ({lam})");
        }
        for (rho, v) in engine_swap.macdonald_p(&lam)?.coeffs {
            if rho == lam || rho.len() > m {
                continue;
            }
            let entry = coeffs.entry(rho).or_insert_with(Scalar::zero);
            *entry -= &(&c * &v);
        }
        coeffs.retain(|_, v| !v.is_zero());
    }
    report.push(Check::new(
        "vanishing_d_type_combination",
        format!("m={m} weight={weight}"),
        &"support on doubled shapes",
        &bad,
        ok,
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

    fn halves() -> (Scalar, Scalar) {
        (sc(2, 3), sc(3, 5))
    }

    #[test]
    fn shape_detectors() {
        assert_eq!(square_root_shape(&pt(&[2, 2])), Some(pt(&[2])));
        assert_eq!(square_root_shape(&pt(&[2, 2, 1, 1])), Some(pt(&[2, 1])));
        assert_eq!(square_root_shape(&pt(&[2, 1])), None);
        assert_eq!(half_parts_shape(&pt(&[4, 2])), Some(pt(&[2, 1])));
        assert_eq!(half_parts_shape(&pt(&[3])), None);
    }

    #[test]
    fn t0_props_to_size_4() {
        let cx = Caches::new();
        let (qh, th) = halves();
        for lam in partitions::of_size_at_most(4) {
            let r = check_t0_props(&cx, &lam, &qh, &th).unwrap();
            assert!(r.all_pass(), "T=0 props for {lam:?}");
        }
    }

    #[test]
    fn usp_small() {
        let cx = Caches::new();
        let (qh, th) = halves();
        for lam in partitions::of_size_at_most(4) {
            let r = check_usp_t(&cx, &lam, &sc(2, 7), &qh, &th).unwrap();
            assert!(r.all_pass(), "USp generic T for {lam:?}");
        }
        for lam in partitions::of_size_at_most_with_len(4, 4) {
            let r = check_usp_n(&cx, 2, &lam, &qh, &th).unwrap();
            assert!(r.all_pass(), "USp n=2 for {lam:?}");
        }
    }

    #[test]
    fn uo_small() {
        let cx = Caches::new();
        let (qh, th) = halves();
        for lam in partitions::of_size_at_most(4) {
            if lam.part(1) > 4 {
                continue;
            }
            let r = check_uo_t(&cx, &lam, &sc(2, 7), &qh, &th).unwrap();
            assert!(r.all_pass(), "UO generic T for {lam:?}");
        }
        for lam in partitions::in_box(2, 4) {
            let r = check_uo_combination(&cx, 2, &lam, &qh, &th).unwrap();
            assert!(r.all_pass(), "UO combination for {lam:?}");
        }
    }

    #[test]
    fn equivalence_and_duality() {
        let cx = Caches::new();
        let (qh, th) = halves();
        for lam in partitions::of_size_at_most(3) {
            let r = check_usp_equivalence(&cx, 2, &lam, &qh, &th).unwrap();
            assert!(r.all_pass(), "equivalence for {lam:?}");
            let r = check_conjugation_duality(&cx, &lam, &sc(2, 7), &qh, &th).unwrap();
            assert!(r.all_pass(), "duality for {lam:?}");
        }
    }

    #[test]
    fn schur_values_are_one() {
        let cx = Caches::new();
        for lam in partitions::of_size_at_most(4) {
            let r = schur_crosscheck(&cx, &lam, &sc(2, 3)).unwrap();
            assert!(r.all_pass(), "Schur case for {lam:?}");
        }
    }

    #[test]
    fn grassmannians_small() {
        let cx = Caches::new();
        let (qh, th) = halves();
        let (a, b) = (sc(1, 2), sc(2, 5));
        let cap_t = sc(2, 7);
        for lam in partitions::of_size_at_most(3) {
            for sp in [false, true] {
                let r = check_grassmannian(&cx, &lam, &cap_t, &a, &b, &qh, &th, sp).unwrap();
                assert!(r.all_pass(), "Grassmannian sp={sp} for {lam:?}");
            }
        }
    }

    #[test]
    fn o1_props_small() {
        let cx = Caches::new();
        let (qh, th) = halves();
        let kp = KoornParams::from_halves(&qh, &th, &[sc(1, 2), sc(2, 5), sc(3, 4), sc(5, 3)])
            .unwrap();
        for lam in partitions::of_size_at_most(3) {
            let r = check_o1_props(&cx, &lam, &sc(2, 7), &th, &kp).unwrap();
            assert!(r.all_pass(), "O1 props for {lam:?}");
        }
    }

    #[test]
    fn o2_theorems_small() {
        let cx = Caches::new();
        let (qh, th) = halves();
        for lam in partitions::of_size_at_most(3) {
            let r =
                check_o2_theorems(&cx, &lam, &sc(2, 7), &sc(1, 2), &sc(2, 5), &qh, &th).unwrap();
            assert!(r.all_pass(), "O2 theorems for {lam:?}");
        }
    }

    #[test]
    fn laurent_ct_trivial() {
        let cx = Caches::new();
        let engine = cx.engine(&sc(4, 9), &sc(9, 25));
        assert_eq!(
            laurent_macdonald_ct(&engine, &BcPoly::one(2), 2).unwrap(),
            Scalar::one()
        );
    }

    #[test]
    fn u_grassmannians_small() {
        let cx = Caches::new();
        let (qh, th) = halves();
        let q = &qh * &qh;
        let t = &th * &th;
        for (mu, nu) in [
            (pt(&[]), pt(&[])),
            (pt(&[1]), pt(&[])),
            (pt(&[1]), pt(&[1])),
            (pt(&[2]), pt(&[1])),
            (pt(&[1, 1]), pt(&[1])),
        ] {
            if mu.len() + nu.len() <= 2 {
                let r = check_u_grass2(&cx, 1, &mu, &nu, &q, &t).unwrap();
                assert!(r.all_pass(), "grass2 ({mu:?},{nu:?}) n=1");
            }
            if mu.len() + nu.len() <= 3 {
                let r = check_u_grass1(&cx, 1, 2, &mu, &nu, &q, &t).unwrap();
                assert!(r.all_pass(), "grass1 ({mu:?},{nu:?})");
                let r = check_u_grass1(&cx, 2, 1, &mu, &nu, &q, &t).unwrap();
                assert!(r.all_pass(), "grass1 swapped ({mu:?},{nu:?})");
            }
        }
        for (mu, nu) in [(pt(&[1]), pt(&[1])), (pt(&[2]), pt(&[2])), (pt(&[1]), pt(&[2]))] {
            let r = check_u_grass2(&cx, 2, &mu, &nu, &q, &t).unwrap();
            assert!(r.all_pass(), "grass2 ({mu:?},{nu:?}) n=2");
        }
    }

    #[test]
    fn dm_combination_small() {
        let cx = Caches::new();
        let (qh, th) = halves();
        for (m, w) in [(1usize, 0u32), (2, 1), (2, 2), (1, 2), (2, 3)] {
            let r = check_dm_combination(&cx, m, w, &qh, &th).unwrap();
            assert!(r.all_pass(), "D-type combination m={m} weight={w}");
        }
    }
}
