//! Terminating multivariate basic hypergeometric series and the
//! transformation suite over generalized binomial coefficients:
//! q-Saalschütz in both directions, duality, inversion, the very-well-poised
//! ₆W₅ and Watson/Sears transformations, and the difference/integral
//! equations for binomial coefficients.

use crate::cnorm::{c0, cfun_multi, cminus, cplus, CKind};
use crate::error::Result;
use crate::interpolation::{
    binom, diagonal_value, psi_difference_weight, psi_integral_weight, BinomKind, Caches,
};
use crate::partitions::{self, Partition};
use crate::report::{Check, Report};
use crate::scalar::Scalar;

/// Truncated very-well-poised series `₈W₇` over partitions `μ ⊆ m^n`:
///
/// `Σ_μ C⁰_{2μ²}(aq) C⁰_μ(tⁿ,b,c,d,e,f) t^{2n(μ)} z^{|μ|} /
///  (C⁺_μ(a, qa/t) C⁰_μ(aq/tⁿ, aq/b, ..., aq/f) C⁻_μ(q,t))`
pub fn w8_7(
    m: u32,
    n: usize,
    a: &Scalar,
    upper: &[&Scalar; 5],
    z: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Scalar> {
    let tn = t.pow(n as i64)?;
    let qa = q * a;
    let qat = qa.checked_div(t)?;
    let qatn = qa.checked_div(&tn)?;
    let mut acc = Scalar::zero();
    for mu in partitions::in_box(m, n) {
        let mut num = c0(&mu.square().double(), &qa, q, t);
        num *= &c0(&mu, &tn, q, t);
        for b in upper {
            num *= &c0(&mu, b, q, t);
        }
        num *= &t.pow(2 * mu.n_stat() as i64)?;
        num *= &z.pow(mu.size() as i64)?;
        let mut den = cfun_multi(CKind::Plus, &mu, &[a, &qat], q, t);
        den *= &c0(&mu, &qatn, q, t);
        for b in upper {
            den *= &c0(&mu, &qa.checked_div(b)?, q, t);
        }
        den *= &cminus(&mu, q, q, t);
        den *= &cminus(&mu, t, q, t);
        acc += &num.checked_div(&den)?;
    }
    Ok(acc)
}

/// Truncated balanced-type series `₄Φ₃` over partitions `μ ⊆ m^n`:
///
/// `Σ_μ C⁰_μ(tⁿ,a,b,c,d) t^{2n(μ)} z^{|μ|} / (C⁰_μ(e,f,g) C⁻_μ(q,t))`
pub fn phi4_3(
    m: u32,
    n: usize,
    upper: &[&Scalar; 4],
    lower: &[&Scalar; 3],
    z: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Scalar> {
    let tn = t.pow(n as i64)?;
    let mut acc = Scalar::zero();
    for mu in partitions::in_box(m, n) {
        let mut num = c0(&mu, &tn, q, t);
        for b in upper {
            num *= &c0(&mu, b, q, t);
        }
        num *= &t.pow(2 * mu.n_stat() as i64)?;
        num *= &z.pow(mu.size() as i64)?;
        let mut den = cminus(&mu, q, q, t);
        den *= &cminus(&mu, t, q, t);
        for b in lower {
            den *= &c0(&mu, b, q, t);
        }
        acc += &num.checked_div(&den)?;
    }
    Ok(acc)
}

/// The balanced very-well-poised summation: when
/// `a² q^{m+1} = t^{n-1} bcde`, the `₈W₇` with sixth parameter `q^{-m}` and
/// argument `q` sums to a rectangle `C⁰` ratio.
pub fn jackson(
    m: u32,
    n: usize,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    d: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Report> {
    // solve the balance condition for e
    let e = (&(a * a) * &q.pow(m as i64 + 1)?)
        .checked_div(&(&t.pow(n as i64 - 1)? * &(&(b * c) * d)))?;
    let qm = q.pow(-(m as i64))?;
    let lhs = w8_7(m, n, a, &[b, c, d, &e, &qm], q, q, t)?;
    let boxmn = Partition::empty().box_add(m, n)?;
    let qa = q * a;
    let num = cfun_multi(
        CKind::Zero,
        &boxmn,
        &[
            &qa,
            &qa.checked_div(&(c * d))?,
            &qa.checked_div(&(c * &e))?,
            &qa.checked_div(&(d * &e))?,
        ],
        q,
        t,
    );
    let den = cfun_multi(
        CKind::Zero,
        &boxmn,
        &[
            &qa.checked_div(c)?,
            &qa.checked_div(d)?,
            &qa.checked_div(&e)?,
            &qa.checked_div(&(&(c * d) * &e))?,
        ],
        q,
        t,
    );
    let rhs = num.checked_div(&den)?;
    let mut report = Report::new();
    report.push(Check::scalar_eq(
        "hyperg_jackson_sum",
        format!("box={m}^{n}"),
        &lhs,
        &rhs,
    ));
    Ok(report)
}

/// Generalized q-Saalschütz summation.
pub fn qsaal(
    cx: &Caches,
    lam: &Partition,
    kappa: &Partition,
    a_half: &Scalar,
    b: &Scalar,
    c: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Report> {
    let engine = cx.engine(q, t);
    let a = a_half * a_half;
    let qa = q * &a;
    let ratio = qa.checked_div(&(b * c))?;
    let qab = qa.checked_div(b)?;
    let qac = qa.checked_div(c)?;
    let mut lhs = Scalar::zero();
    for mu in partitions::between(kappa, lam) {
        let sign = if (mu.size() - kappa.size()) % 2 == 0 {
            Scalar::one()
        } else {
            -Scalar::one()
        };
        let mut term = &q.pow(kappa.n_stat_conj() as i64 - mu.n_stat_conj() as i64)? * &sign;
        let num = &(&cfun_multi(CKind::Zero, kappa, &[b, c], q, t) * &cminus(&mu, t, q, t))
            * &cplus(&mu, &a, q, t);
        let den = &(&cfun_multi(CKind::Zero, &mu, &[&qab, &qac], q, t)
            * &cminus(kappa, t, q, t))
            * &cplus(kappa, &a, q, t);
        term *= &num.checked_div(&den)?;
        term *= &engine.skew_pleth_eval(&mu, kappa, |k| {
            let num = Scalar::one() - &ratio.pow(k as i64).unwrap();
            let den = Scalar::one() - &t.pow(k as i64).unwrap();
            num.checked_div(&den).unwrap()
        })?;
        term *= &binom(cx, BinomKind::Bracket, lam, &mu, a_half, q, t)?;
        lhs += &term;
    }
    let rhs = &(&ratio.pow((lam.size() - kappa.size()) as i64)?
        * &cfun_multi(CKind::Zero, lam, &[b, c], q, t)
            .checked_div(&cfun_multi(CKind::Zero, lam, &[&qab, &qac], q, t))?)
        * &binom(cx, BinomKind::Bracket, lam, kappa, a_half, q, t)?;
    let mut report = Report::new();
    report.push(Check::scalar_eq(
        "hyperg_qsaalschutz",
        format!("lambda=({lam}) kappa=({kappa})"),
        &lhs,
        &rhs,
    ));
    Ok(report)
}

/// The reversed-order q-Saalschütz summation (complemented indices).
pub fn qsaal_reversed(
    cx: &Caches,
    lam: &Partition,
    kappa: &Partition,
    a_half: &Scalar,
    b: &Scalar,
    c: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Report> {
    let engine = cx.engine(q, t);
    let a = a_half * a_half;
    let qa = q * &a;
    let ratio = (b * c).checked_div(&qa)?;
    let qab = qa.checked_div(b)?;
    let qac = qa.checked_div(c)?;
    let mut lhs = Scalar::zero();
    for mu in partitions::between(kappa, lam) {
        let sign = if (lam.size() - mu.size()) % 2 == 0 {
            Scalar::one()
        } else {
            -Scalar::one()
        };
        let mut term = &q.pow(mu.n_stat_conj() as i64 - lam.n_stat_conj() as i64)? * &sign;
        let num = &(&cfun_multi(CKind::Zero, &mu, &[b, c], q, t) * &cminus(lam, t, q, t))
            * &cplus(lam, &a, q, t);
        let den = &(&cfun_multi(CKind::Zero, lam, &[&qab, &qac], q, t)
            * &cminus(&mu, t, q, t))
            * &cplus(&mu, &a, q, t);
        term *= &num.checked_div(&den)?;
        term *= &engine.skew_pleth_eval(lam, &mu, |k| {
            let num = &ratio.pow(k as i64).unwrap() - &Scalar::one();
            let den = Scalar::one() - &t.pow(k as i64).unwrap();
            num.checked_div(&den).unwrap()
        })?;
        term *= &binom(cx, BinomKind::Brace, &mu, kappa, a_half, q, t)?;
        lhs += &term;
    }
    let rhs = &(&ratio.pow((lam.size() - kappa.size()) as i64)?
        * &cfun_multi(CKind::Zero, kappa, &[b, c], q, t)
            .checked_div(&cfun_multi(CKind::Zero, kappa, &[&qab, &qac], q, t))?)
        * &binom(cx, BinomKind::Brace, lam, kappa, a_half, q, t)?;
    let mut report = Report::new();
    report.push(Check::scalar_eq(
        "hyperg_qsaalschutz_reversed",
        format!("lambda=({lam}) kappa=({kappa})"),
        &lhs,
        &rhs,
    ));
    Ok(report)
}

/// Conjugation duality for both binomial coefficients, with
/// `s ↦ 1/(√(qt) s)` on the conjugate side.
pub fn duality(
    cx: &Caches,
    lam: &Partition,
    mu: &Partition,
    s: &Scalar,
    q_half: &Scalar,
    t_half: &Scalar,
) -> Result<Report> {
    let q = q_half * q_half;
    let t = t_half * t_half;
    let s_dual = Scalar::one().checked_div(&(&(q_half * t_half) * s))?;
    let mut report = Report::new();
    for (name, kind) in [
        ("hyperg_duality_bracket", BinomKind::Bracket),
        ("hyperg_duality_brace", BinomKind::Brace),
    ] {
        let lhs = binom(cx, kind, lam, mu, s, &q, &t)?;
        let rhs = binom(cx, kind, &lam.conjugate(), &mu.conjugate(), &s_dual, &t, &q)?;
        report.push(Check::scalar_eq(
            name,
            format!("lambda=({lam}) mu=({mu})"),
            &lhs,
            &rhs,
        ));
    }
    Ok(report)
}

/// Both inversion identities between the bracket and brace coefficients.
pub fn inversion(
    cx: &Caches,
    lam: &Partition,
    kappa: &Partition,
    s: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Report> {
    let expect = if lam == kappa {
        Scalar::one()
    } else {
        Scalar::zero()
    };
    let mut first = Scalar::zero();
    let mut second = Scalar::zero();
    for mu in partitions::between(kappa, lam) {
        let br_mk = binom(cx, BinomKind::Bracket, &mu, kappa, s, q, t)?;
        let bc_lm = binom(cx, BinomKind::Brace, lam, &mu, s, q, t)?;
        first += &(&br_mk * &bc_lm);
        let bc_mk = binom(cx, BinomKind::Brace, &mu, kappa, s, q, t)?;
        let br_lm = binom(cx, BinomKind::Bracket, lam, &mu, s, q, t)?;
        second += &(&bc_mk * &br_lm);
    }
    let mut report = Report::new();
    let shapes = format!("lambda=({lam}) kappa=({kappa})");
    report.push(Check::scalar_eq(
        "hyperg_inversion_bracket_brace",
        shapes.clone(),
        &first,
        &expect,
    ));
    report.push(Check::scalar_eq(
        "hyperg_inversion_brace_bracket",
        shapes,
        &second,
        &expect,
    ));
    Ok(report)
}

/// The terminating very-well-poised ₆W₅-type summation.
pub fn w6_5(
    cx: &Caches,
    lam: &Partition,
    kappa: &Partition,
    a_half: &Scalar,
    b: &Scalar,
    c: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Report> {
    let lhs = w6_5_sum(cx, lam, kappa, a_half, b, c, q, t)?;
    let engine = cx.engine(q, t);
    let a = a_half * a_half;
    let qa = q * &a;
    let ratio = qa.checked_div(&(b * c))?;
    let sign = if (lam.size() - kappa.size()) % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    };
    let mut rhs = &sign * &q.pow(kappa.n_stat_conj() as i64 - lam.n_stat_conj() as i64)?;
    let num = &(&cminus(lam, t, q, t) * &cplus(lam, &a, q, t))
        * &cfun_multi(CKind::Zero, kappa, &[b, c], q, t);
    let den = &(&cminus(kappa, t, q, t) * &cplus(kappa, &a, q, t))
        * &cfun_multi(
            CKind::Zero,
            lam,
            &[&qa.checked_div(b)?, &qa.checked_div(c)?],
            q,
            t,
        );
    rhs *= &num.checked_div(&den)?;
    rhs *= &engine.skew_pleth_eval(lam, kappa, |k| {
        let num = Scalar::one() - &ratio.pow(k as i64).unwrap();
        let den = Scalar::one() - &t.pow(k as i64).unwrap();
        num.checked_div(&den).unwrap()
    })?;
    let mut report = Report::new();
    report.push(Check::scalar_eq(
        "hyperg_w6_5",
        format!("lambda=({lam}) kappa=({kappa})"),
        &lhs,
        &rhs,
    ));
    Ok(report)
}

fn w6_5_sum(
    cx: &Caches,
    lam: &Partition,
    kappa: &Partition,
    a_half: &Scalar,
    b: &Scalar,
    c: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Scalar> {
    let a = a_half * a_half;
    let qa = q * &a;
    let ratio = qa.checked_div(&(b * c))?;
    let qab = qa.checked_div(b)?;
    let qac = qa.checked_div(c)?;
    let mut acc = Scalar::zero();
    for mu in partitions::between(kappa, lam) {
        let mut term = ratio.pow((mu.size() - kappa.size()) as i64)?;
        term *= &cfun_multi(CKind::Zero, &mu, &[b, c], q, t)
            .checked_div(&cfun_multi(CKind::Zero, &mu, &[&qab, &qac], q, t))?;
        term *= &binom(cx, BinomKind::Brace, lam, &mu, a_half, q, t)?;
        term *= &binom(cx, BinomKind::Bracket, &mu, kappa, a_half, q, t)?;
        acc += &term;
    }
    Ok(acc)
}

/// Watson-type transformation between a very-well-poised sum and a balanced
/// double sum, plus the degeneration to the ₆W₅ sum at `b = aq/c`.
#[allow(clippy::too_many_arguments)]
pub fn watson(
    cx: &Caches,
    lam: &Partition,
    kappa: &Partition,
    a_half: &Scalar,
    b: &Scalar,
    c: &Scalar,
    d: &Scalar,
    e: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Report> {
    let engine = cx.engine(q, t);
    let a = a_half * a_half;
    let qa = q * &a;
    let z = (&qa * &qa).checked_div(&(&(b * c) * &(d * e)))?;
    let lhs = watson_vwp_sum(cx, lam, kappa, a_half, &[b, c, d, e], &z, q, t)?;
    let sign = if (lam.size() - kappa.size()) % 2 == 0 {
        Scalar::one()
    } else {
        -Scalar::one()
    };
    let mut rhs = &sign * &q.pow(kappa.n_stat_conj() as i64 - lam.n_stat_conj() as i64)?;
    let num = &(&cfun_multi(CKind::Zero, kappa, &[b, c], q, t) * &cminus(lam, t, q, t))
        * &cplus(lam, &a, q, t);
    let den = &(&cfun_multi(
        CKind::Zero,
        lam,
        &[&qa.checked_div(d)?, &qa.checked_div(e)?],
        q,
        t,
    ) * &cminus(kappa, t, q, t))
        * &cplus(kappa, &a, q, t);
    rhs *= &num.checked_div(&den)?;
    rhs *= &balanced_double_sum(
        &engine,
        lam,
        kappa,
        &[&qa.checked_div(b)?, &qa.checked_div(c)?],
        &[d, e],
        &qa.checked_div(&(d * e))?,
        &z,
        q,
        t,
    )?;
    let mut report = Report::new();
    report.push(Check::scalar_eq(
        "hyperg_watson",
        format!("lambda=({lam}) kappa=({kappa})"),
        &lhs,
        &rhs,
    ));
    // degeneration: b = aq/c turns the very-well-poised sum into the
    // ₆W₅-type sum in the remaining parameters (d, e)
    let b_deg = qa.checked_div(c)?;
    let z_deg = qa.checked_div(&(d * e))?;
    let deg_lhs = watson_vwp_sum(cx, lam, kappa, a_half, &[&b_deg, c, d, e], &z_deg, q, t)?;
    let deg_rhs = w6_5_sum(cx, lam, kappa, a_half, d, e, q, t)?;
    report.push(Check::scalar_eq(
        "hyperg_watson_degenerates_to_w6_5",
        format!("lambda=({lam}) kappa=({kappa})"),
        &deg_lhs,
        &deg_rhs,
    ));
    Ok(report)
}

fn watson_vwp_sum(
    cx: &Caches,
    lam: &Partition,
    kappa: &Partition,
    a_half: &Scalar,
    params: &[&Scalar; 4],
    z: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Scalar> {
    let a = a_half * a_half;
    let qa = q * &a;
    let mut acc = Scalar::zero();
    for mu in partitions::between(kappa, lam) {
        let mut term = z.pow((mu.size() - kappa.size()) as i64)?;
        let mut num = Scalar::one();
        let mut den = Scalar::one();
        for p in params {
            num *= &c0(&mu, p, q, t);
            den *= &c0(&mu, &qa.checked_div(p)?, q, t);
        }
        term *= &num.checked_div(&den)?;
        term *= &binom(cx, BinomKind::Brace, lam, &mu, a_half, q, t)?;
        term *= &binom(cx, BinomKind::Bracket, &mu, kappa, a_half, q, t)?;
        acc += &term;
    }
    Ok(acc)
}

/// `Σ_μ [C⁰ ratios] P_{λ/μ}([(1-w^k)/(1-t^k)]) P_{μ/κ}([(w^k-z^k)/(1-t^k)])`
/// with numerator parameters `upper` (on μ) and denominator parameters
/// `lower` (ratio λ against μ).
#[allow(clippy::too_many_arguments)]
fn balanced_double_sum(
    engine: &crate::symfunc::SymEngine,
    lam: &Partition,
    kappa: &Partition,
    lower: &[&Scalar; 2],
    upper: &[&Scalar; 2],
    w: &Scalar,
    z: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for mu in partitions::between(kappa, lam) {
        let mut term = cfun_multi(CKind::Zero, &mu, upper, q, t)
            .checked_div(&cfun_multi(CKind::Zero, &mu, lower, q, t))?;
        term *= &engine.skew_pleth_eval(lam, &mu, |k| {
            let num = Scalar::one() - &w.pow(k as i64).unwrap();
            let den = Scalar::one() - &t.pow(k as i64).unwrap();
            num.checked_div(&den).unwrap()
        })?;
        term *= &engine.skew_pleth_eval(&mu, kappa, |k| {
            let num = &w.pow(k as i64).unwrap() - &z.pow(k as i64).unwrap();
            let den = Scalar::one() - &t.pow(k as i64).unwrap();
            num.checked_div(&den).unwrap()
        })?;
        acc += &term;
    }
    Ok(acc)
}

/// Sears-type transformation: the balanced double sum with prefactors is
/// invariant under exchanging the roles of `c` and `d`.
#[allow(clippy::too_many_arguments)]
pub fn sears(
    cx: &Caches,
    lam: &Partition,
    kappa: &Partition,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    d: &Scalar,
    e: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Report> {
    let engine = cx.engine(q, t);
    let qa = q * a;
    let z = (&qa * &qa).checked_div(&(&(b * c) * &(d * e)))?;
    let side = |x: &Scalar, y: &Scalar, u1: &Scalar, u2: &Scalar| -> Result<Scalar> {
        let l1 = qa.checked_div(x)?;
        let l2 = qa.checked_div(y)?;
        let pref = cfun_multi(CKind::Zero, lam, &[&l1, &l2], q, t)
            .checked_div(&cfun_multi(CKind::Zero, kappa, &[u1, u2], q, t))?;
        Ok(&pref
            * &balanced_double_sum(
                &engine,
                lam,
                kappa,
                &[&l1, &l2],
                &[u1, u2],
                &qa.checked_div(&(u1 * u2))?,
                &z,
                q,
                t,
            )?)
    };
    let lhs = side(b, c, d, e)?;
    let rhs = side(b, d, c, e)?;
    let mut report = Report::new();
    report.push(Check::scalar_eq(
        "hyperg_sears",
        format!("lambda=({lam}) kappa=({kappa})"),
        &lhs,
        &rhs,
    ));
    Ok(report)
}

/// The weak q-Saalschütz chain rule for skew principal specializations.
pub fn weak_qsaal(
    cx: &Caches,
    lam: &Partition,
    kappa: &Partition,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Report> {
    let engine = cx.engine(q, t);
    let mut lhs = Scalar::zero();
    for mu in partitions::between(kappa, lam) {
        let mut term = c0(&mu, a, q, t).checked_div(&c0(&mu, c, q, t))?;
        term *= &engine.skew_pleth_eval(lam, &mu, |k| {
            let num = &a.pow(k as i64).unwrap() - &b.pow(k as i64).unwrap();
            let den = Scalar::one() - &t.pow(k as i64).unwrap();
            num.checked_div(&den).unwrap()
        })?;
        term *= &engine.skew_pleth_eval(&mu, kappa, |k| {
            let num = &b.pow(k as i64).unwrap() - &c.pow(k as i64).unwrap();
            let den = Scalar::one() - &t.pow(k as i64).unwrap();
            num.checked_div(&den).unwrap()
        })?;
        lhs += &term;
    }
    let pref = (&c0(kappa, a, q, t) * &c0(lam, b, q, t))
        .checked_div(&(&c0(kappa, b, q, t) * &c0(lam, c, q, t)))?;
    let rhs = &pref
        * &engine.skew_pleth_eval(lam, kappa, |k| {
            let num = &a.pow(k as i64).unwrap() - &c.pow(k as i64).unwrap();
            let den = Scalar::one() - &t.pow(k as i64).unwrap();
            num.checked_div(&den).unwrap()
        })?;
    let mut report = Report::new();
    report.push(Check::scalar_eq(
        "hyperg_weak_qsaalschutz",
        format!("lambda=({lam}) kappa=({kappa})"),
        &lhs,
        &rhs,
    ));
    Ok(report)
}

/// Second consequence of the Sears transformation: full `(b,c) ↔ (d,e)`
/// exchange symmetry of the balanced double sum with prefactors.
#[allow(clippy::too_many_arguments)]
pub fn second_sears_consequence(
    cx: &Caches,
    lam: &Partition,
    kappa: &Partition,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    d: &Scalar,
    e: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Report> {
    let engine = cx.engine(q, t);
    let qa = q * a;
    let z = (&qa * &qa).checked_div(&(&(b * c) * &(d * e)))?;
    let side = |x: &Scalar, y: &Scalar, u1: &Scalar, u2: &Scalar| -> Result<Scalar> {
        let l1 = qa.checked_div(x)?;
        let l2 = qa.checked_div(y)?;
        let pref = cfun_multi(CKind::Zero, lam, &[&l1, &l2], q, t)
            .checked_div(&cfun_multi(CKind::Zero, kappa, &[u1, u2], q, t))?;
        Ok(&pref
            * &balanced_double_sum(
                &engine,
                lam,
                kappa,
                &[&l1, &l2],
                &[u1, u2],
                &qa.checked_div(&(u1 * u2))?,
                &z,
                q,
                t,
            )?)
    };
    let lhs = side(b, c, d, e)?;
    let rhs = side(d, e, b, c)?;
    let mut report = Report::new();
    report.push(Check::scalar_eq(
        "hyperg_sears_second_consequence",
        format!("lambda=({lam}) kappa=({kappa})"),
        &lhs,
        &rhs,
    ));
    Ok(report)
}

/// Difference equations expressed through binomial coefficients, in both
/// the bracket and brace forms.
pub fn bc_difference(
    cx: &Caches,
    lam: &Partition,
    mu: &Partition,
    u: &Scalar,
    s: &Scalar,
    q_half: &Scalar,
    t: &Scalar,
) -> Result<Report> {
    let q = q_half * q_half;
    let s_up = s * q_half;
    let mut report = Report::new();
    let shapes = format!("lambda=({lam}) mu=({mu})");
    // bracket form
    let lhs = &psi_difference_weight(mu, mu, u, s, &q, t)?
        * &binom(cx, BinomKind::Bracket, lam, mu, s, &q, t)?;
    let mut rhs = Scalar::zero();
    for kappa in partitions::between(&Partition::empty(), lam) {
        if !lam.vertical_strip_over(&kappa) {
            continue;
        }
        rhs += &(&psi_difference_weight(lam, &kappa, u, s, &q, t)?
            * &binom(cx, BinomKind::Bracket, &kappa, mu, &s_up, &q, t)?);
    }
    report.push(Check::scalar_eq(
        "hyperg_bc_difference_bracket",
        shapes.clone(),
        &lhs,
        &rhs,
    ));
    // brace form
    let lhs = &psi_difference_weight(lam, lam, u, s, &q, t)?
        * &binom(cx, BinomKind::Brace, lam, mu, &s_up, &q, t)?;
    let mut rhs = Scalar::zero();
    for kappa in partitions::between(mu, lam) {
        if !kappa.vertical_strip_over(mu) {
            continue;
        }
        rhs += &(&psi_difference_weight(&kappa, mu, u, s, &q, t)?
            * &binom(cx, BinomKind::Brace, lam, &kappa, s, &q, t)?);
    }
    report.push(Check::scalar_eq(
        "hyperg_bc_difference_brace",
        shapes,
        &lhs,
        &rhs,
    ));
    Ok(report)
}

/// Integral equations expressed through binomial coefficients (the duals of
/// the difference equations).
pub fn bc_integral(
    cx: &Caches,
    lam: &Partition,
    mu: &Partition,
    u: &Scalar,
    s: &Scalar,
    q: &Scalar,
    t_half: &Scalar,
) -> Result<Report> {
    let t = t_half * t_half;
    let s_up = s * t_half;
    let mut report = Report::new();
    let shapes = format!("lambda=({lam}) mu=({mu})");
    // bracket form
    let lhs = &psi_integral_weight(mu, mu, u, s, q, &t)?
        * &binom(cx, BinomKind::Bracket, lam, mu, &s_up, q, &t)?;
    let mut rhs = Scalar::zero();
    for kappa in partitions::between(&Partition::empty(), lam) {
        if !lam.horizontal_strip_over(&kappa) {
            continue;
        }
        rhs += &(&psi_integral_weight(lam, &kappa, u, s, q, &t)?
            * &binom(cx, BinomKind::Bracket, &kappa, mu, s, q, &t)?);
    }
    report.push(Check::scalar_eq(
        "hyperg_bc_integral_bracket",
        shapes.clone(),
        &lhs,
        &rhs,
    ));
    // brace form
    let lhs = &psi_integral_weight(lam, lam, u, s, q, &t)?
        * &binom(cx, BinomKind::Brace, lam, mu, s, q, &t)?;
    let mut rhs = Scalar::zero();
    for nu in partitions::between(mu, lam) {
        if !nu.horizontal_strip_over(mu) {
            continue;
        }
        rhs += &(&psi_integral_weight(&nu, mu, u, s, q, &t)?
            * &binom(cx, BinomKind::Brace, lam, &nu, &s_up, q, &t)?);
    }
    report.push(Check::scalar_eq(
        "hyperg_bc_integral_brace",
        shapes,
        &lhs,
        &rhs,
    ));
    Ok(report)
}

/// Box shift and complement transformations of the binomial coefficients.
pub fn box_transforms(
    cx: &Caches,
    lam: &Partition,
    mu: &Partition,
    m: u32,
    n: usize,
    s: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Report> {
    let mut report = Report::new();
    let shapes = format!("lambda=({lam}) mu=({mu}) box={m}^{n}");
    let s2 = s * s;
    let qm = q.pow(m as i64)?;
    // shift: both kinds pick up the same C⁰ ratio and a power of q
    if lam.len() <= n && mu.len() <= n {
        let lam_s = lam.box_add(m, n)?;
        let mu_s = mu.box_add(m, n)?;
        let a1 = &(&t.pow(1 - n as i64)? * &(&qm * &qm)) * &s2;
        let a2 = &t.pow(n as i64 - 1)? * &(q * &qm);
        let a3 = &(&t.pow(1 - n as i64)? * &qm) * &s2;
        let a4 = &t.pow(n as i64 - 1)? * q;
        let ratio = (&cfun_multi(CKind::Zero, lam, &[&a1, &a2], q, t)
            * &cfun_multi(CKind::Zero, mu, &[&a3, &a4], q, t))
            .checked_div(
                &(&cfun_multi(CKind::Zero, mu, &[&a1, &a2], q, t)
                    * &cfun_multi(CKind::Zero, lam, &[&a3, &a4], q, t)),
            )?;
        let pref = &q.pow(-(m as i64) * (lam.size() as i64 - mu.size() as i64))? * &ratio;
        for (name, kind) in [
            ("hyperg_box_shift_bracket", BinomKind::Bracket),
            ("hyperg_box_shift_brace", BinomKind::Brace),
        ] {
            let lhs = binom(cx, kind, &lam_s, &mu_s, s, q, t)?;
            let rhs = &pref * &binom(cx, kind, lam, mu, &(&qm * s), q, t)?;
            report.push(Check::scalar_eq(name, shapes.clone(), &lhs, &rhs));
        }
    }
    // complement: relates the two kinds across the box
    if lam.len() <= n && lam.part(1) <= m {
        let lam_c = lam.box_complement(m, n)?;
        let mu_c = mu.box_complement(m, n)?;
        let spec1 = q.pow(-(m as i64))?.checked_div(s)?;
        let spec2 = &t.pow(1 - n as i64)? * s;
        let phi = {
            let num = &(&crate::cnorm::norm_pp(lam, n, q, t)?
                * &diagonal_value(n, mu, &spec1, q, t)?)
                * &diagonal_value(n, &mu_c, &spec2, q, t)?;
            let den = &(&crate::cnorm::norm_pp(mu, n, q, t)?
                * &diagonal_value(n, lam, &spec1, q, t)?)
                * &diagonal_value(n, &lam_c, &spec2, q, t)?;
            num.checked_div(&den)?
        };
        let s_flip_brace = t.pow(n as i64 - 1)?.checked_div(&(&qm * s))?;
        let lhs = binom(cx, BinomKind::Bracket, &mu_c, &lam_c, s, q, t)?;
        let rhs = &phi * &binom(cx, BinomKind::Brace, lam, mu, &s_flip_brace, q, t)?;
        report.push(Check::scalar_eq(
            "hyperg_box_complement_bracket",
            shapes.clone(),
            &lhs,
            &rhs,
        ));
        // the bracket side carries the same spectral flip as the brace side
        let lhs = binom(cx, BinomKind::Brace, &mu_c, &lam_c, s, q, t)?;
        let rhs = &phi * &binom(cx, BinomKind::Bracket, lam, mu, &s_flip_brace, q, t)?;
        report.push(Check::scalar_eq(
            "hyperg_box_complement_brace",
            shapes,
            &lhs,
            &rhs,
        ));
    }
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

    fn qt() -> (Scalar, Scalar, Scalar, Scalar) {
        let q_half = sc(2, 3);
        let t_half = sc(3, 5);
        (
            q_half.clone(),
            t_half.clone(),
            &q_half * &q_half,
            &t_half * &t_half,
        )
    }

    #[test]
    fn series_box_zero_is_one() {
        let (_, _, q, t) = qt();
        let a = sc(5, 7);
        assert_eq!(
            w8_7(
                0,
                2,
                &a,
                &[&sc(1, 2), &sc(2, 5), &sc(3, 4), &sc(5, 6), &sc(7, 8)],
                &sc(1, 3),
                &q,
                &t
            )
            .unwrap(),
            Scalar::one()
        );
        assert_eq!(
            phi4_3(
                0,
                1,
                &[&sc(1, 2), &sc(2, 5), &sc(3, 4), &sc(5, 6)],
                &[&sc(7, 8), &sc(8, 9), &sc(9, 5)],
                &sc(1, 3),
                &q,
                &t
            )
            .unwrap(),
            Scalar::one()
        );
    }

    #[test]
    fn univariate_series_match_classical() {
        // at n = 1 the series reduce to classical partial sums
        let (_, _, q, t) = qt();
        let a = sc(5, 7);
        let (b, c, d, e, f) = (sc(1, 2), sc(2, 5), sc(3, 4), sc(5, 6), sc(7, 8));
        let z = sc(1, 3);
        let m = 3u32;
        let got = w8_7(m, 1, &a, &[&b, &c, &d, &e, &f], &z, &q, &t).unwrap();
        let mut expect = Scalar::zero();
        for k in 0..=m as i64 {
            let mut term = (Scalar::one() - &(&a * &q.pow(2 * k).unwrap()))
                .checked_div(&(Scalar::one() - &a))
                .unwrap();
            term *= &crate::scalar::qpoch(&a, &q, k)
                .unwrap()
                .checked_div(&crate::scalar::qpoch(&q, &q, k).unwrap())
                .unwrap();
            for p in [&b, &c, &d, &e, &f] {
                term *= &crate::scalar::qpoch(p, &q, k)
                    .unwrap()
                    .checked_div(&crate::scalar::qpoch(&(&(&q * &a) / p), &q, k).unwrap())
                    .unwrap();
            }
            term *= &z.pow(k).unwrap();
            expect += &term;
        }
        assert_eq!(got, expect);
    }

    #[test]
    fn jackson_small_boxes() {
        let (_, _, q, t) = qt();
        let a = sc(5, 7);
        let (b, c, d) = (sc(1, 2), sc(2, 5), sc(3, 4));
        for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
            let report = jackson(m, n, &a, &b, &c, &d, &q, &t).unwrap();
            assert!(report.all_pass(), "box {m}^{n}");
        }
    }

    #[test]
    fn qsaalschutz_small() {
        let cx = Caches::new();
        let (_, _, q, t) = qt();
        let a_half = sc(5, 4);
        let (b, c) = (sc(1, 2), sc(2, 7));
        for (lam, kappa) in [
            (pt(&[1]), pt(&[])),
            (pt(&[2]), pt(&[])),
            (pt(&[2, 1]), pt(&[1])),
            (pt(&[2, 1]), pt(&[2, 1])),
        ] {
            let r = qsaal(&cx, &lam, &kappa, &a_half, &b, &c, &q, &t).unwrap();
            assert!(r.all_pass(), "q-Saalschütz {lam:?}/{kappa:?}");
            let r = qsaal_reversed(&cx, &lam, &kappa, &a_half, &b, &c, &q, &t).unwrap();
            assert!(r.all_pass(), "reversed q-Saalschütz {lam:?}/{kappa:?}");
        }
    }

    #[test]
    fn duality_and_inversion_small() {
        let cx = Caches::new();
        let (q_half, t_half, q, t) = qt();
        let s = sc(5, 1);
        for (lam, mu) in [
            (pt(&[1]), pt(&[])),
            (pt(&[2]), pt(&[1])),
            (pt(&[2, 1]), pt(&[1])),
            (pt(&[2, 2]), pt(&[2, 1])),
        ] {
            let r = duality(&cx, &lam, &mu, &s, &q_half, &t_half).unwrap();
            assert!(r.all_pass(), "duality {lam:?}/{mu:?}");
        }
        for (lam, kappa) in [(pt(&[1]), pt(&[])), (pt(&[2, 1]), pt(&[])), (pt(&[2]), pt(&[2]))] {
            let r = inversion(&cx, &lam, &kappa, &s, &q, &t).unwrap();
            assert!(r.all_pass(), "inversion {lam:?}/{kappa:?}");
        }
    }

    #[test]
    fn w6_5_watson_sears_small() {
        let cx = Caches::new();
        let (_, _, q, t) = qt();
        let a_half = sc(5, 4);
        let a = &a_half * &a_half;
        let (b, c, d, e) = (sc(1, 2), sc(2, 7), sc(3, 4), sc(5, 6));
        for (lam, kappa) in [(pt(&[1]), pt(&[])), (pt(&[2, 1]), pt(&[1]))] {
            let r = w6_5(&cx, &lam, &kappa, &a_half, &b, &c, &q, &t).unwrap();
            assert!(r.all_pass(), "w6_5 {lam:?}/{kappa:?}");
            let r = watson(&cx, &lam, &kappa, &a_half, &b, &c, &d, &e, &q, &t).unwrap();
            assert!(r.all_pass(), "watson {lam:?}/{kappa:?}");
            let r = sears(&cx, &lam, &kappa, &a, &b, &c, &d, &e, &q, &t).unwrap();
            assert!(r.all_pass(), "sears {lam:?}/{kappa:?}");
            let r = weak_qsaal(&cx, &lam, &kappa, &b, &c, &d, &q, &t).unwrap();
            assert!(r.all_pass(), "weak q-Saalschütz {lam:?}/{kappa:?}");
            let r =
                second_sears_consequence(&cx, &lam, &kappa, &a, &b, &c, &d, &e, &q, &t).unwrap();
            assert!(r.all_pass(), "second Sears consequence {lam:?}/{kappa:?}");
        }
    }

    #[test]
    fn bc_difference_and_integral_small() {
        let cx = Caches::new();
        let (q_half, t_half, q, t) = qt();
        let s = sc(5, 1);
        let u = sc(7, 4);
        for (lam, mu) in [
            (pt(&[1]), pt(&[])),
            (pt(&[2, 1]), pt(&[1])),
            (pt(&[1, 1]), pt(&[])),
        ] {
            let r = bc_difference(&cx, &lam, &mu, &u, &s, &q_half, &t).unwrap();
            assert!(r.all_pass(), "bc difference {lam:?}/{mu:?}");
            let r = bc_integral(&cx, &lam, &mu, &u, &s, &q, &t_half).unwrap();
            assert!(r.all_pass(), "bc integral {lam:?}/{mu:?}");
        }
        // worked inversion example: [0;0]{1;0} + [1;0]{1;1} = 0
        let z = binom(&cx, BinomKind::Brace, &pt(&[1]), &pt(&[]), &s, &q, &t).unwrap();
        let o = binom(&cx, BinomKind::Bracket, &pt(&[1]), &pt(&[]), &s, &q, &t).unwrap();
        assert_eq!(&z + &o, Scalar::zero());
    }

    #[test]
    fn box_transform_propositions_small() {
        let cx = Caches::new();
        let (_, _, q, t) = qt();
        let s = sc(5, 1);
        for (lam, mu) in [
            (pt(&[1]), pt(&[])),
            (pt(&[2, 1]), pt(&[1])),
            (pt(&[2, 2]), pt(&[1, 1])),
        ] {
            let r = box_transforms(&cx, &lam, &mu, 2, 3, &s, &q, &t).unwrap();
            assert!(r.all_pass(), "box transforms {lam:?}/{mu:?}");
        }
    }
}
