//! Symmetric-function lifts of the interpolation and Koornwinder families:
//! the evaluation homomorphism, lifted and virtual interpolation
//! polynomials, duality under the modified Macdonald involution, lifted
//! Koornwinder polynomials with the generic-T virtual integral, the
//! Gaussian functional, and the T = 0 theory.

use std::sync::Arc;

use crate::bcpoly::BcPoly;
use crate::cnorm::{c0, cfun_multi, cminus, cplus, CKind};
use crate::error::{Error, Result};
use crate::interpolation::{binom, interp_poly, BinomKind, Caches};
use crate::koornwinder::{k0, k0_ratio_limit, koorn_poly, n_norm, KoornParams};
use crate::partitions::{self, Partition};
use crate::report::{Check, Report};
use crate::scalar::{qpoch, Scalar};
use crate::series::ScalarSeries;
use crate::symfunc::{rule_omega_tilde, Basis, PkImage, SymEngine, SymFunc};

/// Image of `p_k` under the evaluation homomorphism at `μ`:
///
/// `Σ_i [(q^{kμ_i}-1) t^{-ki} (sT)^k + (q^{-kμ_i}-1) t^{ki} (sT)^{-k}]
///  + s^k (1-T^k)/(1-t^k) + s^{-k} (1-T^{-k})/(1-t^{-k})`.
pub fn lift_point(
    mu: &Partition,
    k: u32,
    cap_t: &Scalar,
    s: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Scalar> {
    let k = k as i64;
    let st = s * cap_t;
    let mut acc = Scalar::zero();
    for i in 1..=mu.len() {
        let a = &(&(&q.pow(k * mu.part(i) as i64)? - &Scalar::one()) * &t.pow(-k * i as i64)?)
            * &st.pow(k)?;
        let b = &(&(&q.pow(-k * mu.part(i) as i64)? - &Scalar::one()) * &t.pow(k * i as i64)?)
            * &st.pow(-k)?;
        acc += &(&a + &b);
    }
    let up = (&s.pow(k)? * &(Scalar::one() - &cap_t.pow(k)?))
        .checked_div(&(Scalar::one() - &t.pow(k)?))?;
    let dn = (&s.pow(-k)? * &(Scalar::one() - &cap_t.pow(-k)?))
        .checked_div(&(Scalar::one() - &t.pow(-k)?))?;
    Ok(&acc + &(&up + &dn))
}

/// Evaluates a symmetric function at the lifted spectrum of `μ`.
pub fn lift_hom_eval(
    engine: &SymEngine,
    f: &SymFunc,
    mu: &Partition,
    cap_t: &Scalar,
    s: &Scalar,
) -> Result<Scalar> {
    let (q, t) = (engine.q().clone(), engine.t().clone());
    engine.plethysm_eval(f, |k| {
        lift_point(mu, k, cap_t, s, &q, &t).expect("generic parameters")
    })
}

/// Closed-form diagonal value of the lifted interpolation polynomial:
/// `(qsT/t)^{-|λ|} t^{n(λ)} q^{-2n(λ')} C⁻_λ(q) C⁺_λ((sT/t)²)`.
pub fn lifted_diagonal(
    lam: &Partition,
    cap_t: &Scalar,
    s: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Scalar> {
    let base = (&(q * s) * cap_t).checked_div(t)?;
    let pref = &base.pow(-(lam.size() as i64))?
        * &(&t.pow(lam.n_stat() as i64)? * &q.pow(-2 * lam.n_stat_conj() as i64)?);
    let arg = (s * cap_t).checked_div(t)?;
    Ok(&pref * &(&cminus(lam, q, q, t) * &cplus(lam, &(&arg * &arg), q, t)))
}

/// The lifted interpolation polynomial: the unique inhomogeneous symmetric
/// function `m_λ + dominated terms` vanishing at the lifted spectra of all
/// dominated `μ ≠ λ`.
pub fn lifted_interp(
    cx: &Caches,
    lam: &Partition,
    cap_t: &Scalar,
    s: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Arc<SymFunc>> {
    let key = (
        "interp",
        lam.clone(),
        vec![cap_t.clone(), s.clone(), q.clone(), t.clone()],
    );
    {
        let cache = cx.lifted.lock().unwrap();
        if let Some(f) = cache.get(&key) {
            return Ok(f.clone());
        }
    }
    let engine = cx.engine(q, t);
    let mut basis = partitions::dominated_by(lam, lam.size().max(1) as usize);
    basis.sort_by(partitions::dominance_refining);
    debug_assert_eq!(basis.last(), Some(lam));
    let k = basis.len();
    let monos: Vec<SymFunc> = basis
        .iter()
        .map(|mu| SymFunc::single(Basis::M, mu.clone(), Scalar::one(), lam.size()))
        .collect();
    let mut mat = vec![vec![Scalar::zero(); k - 1]; k - 1];
    let mut rhs = vec![Scalar::zero(); k - 1];
    for (row, nu) in basis[..k - 1].iter().enumerate() {
        for (col, mono) in monos[..k - 1].iter().enumerate() {
            mat[row][col] = lift_hom_eval(&engine, mono, nu, cap_t, s)?;
        }
        rhs[row] = -lift_hom_eval(&engine, &monos[k - 1], nu, cap_t, s)?;
    }
    let coeffs = crate::linalg::solve(mat, rhs)?;
    let mut f = monos[k - 1].clone();
    for (c, mono) in coeffs.iter().zip(&monos) {
        f = f.add(&mono.scale(c));
    }
    // diagonal check against the closed form
    let diag = lift_hom_eval(&engine, &f, lam, cap_t, s)?;
    if diag != lifted_diagonal(lam, cap_t, s, q, t)? {
        return Err(Error::DegenerateParameters(format!(
            "lifted diagonal normalization failed for ({lam})"
        )));
    }
    let arc = Arc::new(f);
    cx.lifted.lock().unwrap().insert(key, arc.clone());
    Ok(arc)
}

/// Restriction: at `T = tⁿ` the lifted polynomial becomes the
/// `n`-variable interpolation polynomial, or vanishes when `ℓ(λ) > n`.
pub fn lifted_restriction_check(
    cx: &Caches,
    n: usize,
    lam: &Partition,
    s: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Report> {
    let engine = cx.engine(q, t);
    let tn = t.pow(n as i64)?;
    let lifted = lifted_interp(cx, lam, &tn, s, q, t)?;
    let lhs = engine.restrict_bc(&lifted, n)?;
    let rhs = if lam.len() <= n {
        (*interp_poly(cx, n, lam, s, q, t)?).clone()
    } else {
        BcPoly::zero(n)
    };
    let mut report = Report::new();
    report.push(Check::new(
        "lifted_interp_restriction",
        format!("n={n} lambda=({lam})"),
        &lhs,
        &rhs,
        lhs == rhs,
    ));
    Ok(report)
}

/// Extra vanishing of the lifted family plus the diagonal value.
pub fn lifted_vanishing_check(
    cx: &Caches,
    lam: &Partition,
    size_cap: u32,
    cap_t: &Scalar,
    s: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Report> {
    let engine = cx.engine(q, t);
    let f = lifted_interp(cx, lam, cap_t, s, q, t)?;
    let mut report = Report::new();
    for mu in partitions::of_size_at_most(size_cap) {
        let value = lift_hom_eval(&engine, &f, &mu, cap_t, s)?;
        if mu == *lam {
            report.push(Check::new(
                "lifted_interp_diagonal_nonzero",
                format!("lambda=({lam})"),
                &value,
                &"nonzero",
                !value.is_zero(),
            ));
        } else if !mu.contains(lam) {
            report.push(Check::new(
                "lifted_interp_extra_vanishing",
                format!("lambda=({lam}) mu=({mu})"),
                &value,
                &Scalar::zero(),
                value.is_zero(),
            ));
        }
    }
    Ok(report)
}

/// The (s,T) redundancy: moving a factor between `s` and `T` is a
/// plethystic shift.
pub fn st_redundancy_check(
    cx: &Caches,
    lam: &Partition,
    cap_t: &Scalar,
    cap_t2: &Scalar,
    s: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Report> {
    let engine = cx.engine(q, t);
    let lhs = lifted_interp(cx, lam, cap_t, &(s * cap_t2), q, t)?;
    let base = lifted_interp(cx, lam, cap_t2, &(s * cap_t), q, t)?;
    let rhs = engine.plethysm_map(&base, |k| {
        let k_i = k as i64;
        let up = (&s.pow(k_i).unwrap()
            * &(&cap_t.pow(k_i).unwrap() - &cap_t2.pow(k_i).unwrap()))
            .checked_div(&(Scalar::one() - &t.pow(k_i).unwrap()))
            .unwrap();
        let dn = (&s.pow(-k_i).unwrap()
            * &(&cap_t.pow(-k_i).unwrap() - &cap_t2.pow(-k_i).unwrap()))
            .checked_div(&(Scalar::one() - &t.pow(-k_i).unwrap()))
            .unwrap();
        PkImage::shifted(k, &up + &dn)
    })?;
    let mut report = Report::new();
    report.push(Check::new(
        "lifted_interp_st_redundancy",
        format!("lambda=({lam})"),
        &*lhs,
        &rhs,
        lhs.coeffs == rhs.coeffs,
    ));
    Ok(report)
}

/// Duality: `ω̃_{q,t} P̃*_μ(;q,t,T;s)
///  = b_μ(q,t)^{-1} (t/q)^{|μ|/2} P̃*_{μ'}(;t,q,1/T;-√(qt)/s)`.
pub fn duality_check(
    cx: &Caches,
    mu: &Partition,
    cap_t: &Scalar,
    s: &Scalar,
    q_half: &Scalar,
    t_half: &Scalar,
) -> Result<Report> {
    let q = q_half * q_half;
    let t = t_half * t_half;
    let engine = cx.engine(&q, &t);
    let engine_swap = cx.engine(&t, &q);
    let base = lifted_interp(cx, mu, cap_t, s, &q, &t)?;
    let lhs = engine.to_p(&engine.plethysm_map(&base, rule_omega_tilde(q_half, t_half))?)?;
    let s_dual = -(&(q_half * t_half)).checked_div(s)?;
    let scale = (t_half.checked_div(q_half)?)
        .pow(mu.size() as i64)?
        .checked_div(&engine.b_lambda(mu)?)?;
    let dual = lifted_interp(cx, &mu.conjugate(), &cap_t.inv()?, &s_dual, &t, &q)?;
    let rhs = engine_swap.to_p(&dual)?.scale(&scale);
    let mut report = Report::new();
    report.push(Check::new(
        "lifted_interp_duality",
        format!("mu=({mu})"),
        &lhs,
        &rhs,
        lhs.coeffs == rhs.coeffs,
    ));
    Ok(report)
}

/// Connection coefficients between lifted families at `s` and `s'`.
pub fn lifted_connection_check(
    cx: &Caches,
    lam: &Partition,
    cap_t: &Scalar,
    s: &Scalar,
    s2: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Report> {
    let engine = cx.engine(q, t);
    let mut report = Report::new();
    let mut rem = lifted_interp(cx, lam, cap_t, s2, q, t)?.coeffs.clone();
    let mut coeffs: std::collections::HashMap<Partition, Scalar> = Default::default();
    loop {
        let Some(mu) = rem
            .keys()
            .cloned()
            .max_by(|a, b| partitions::dominance_refining(a, b))
        else {
            break;
        };
        let c = rem.remove(&mu).unwrap();
        if c.is_zero() {
            continue;
        }
        for (nu, v) in &lifted_interp(cx, &mu, cap_t, s, q, t)?.coeffs {
            if *nu == mu {
                continue;
            }
            let entry = rem.entry(nu.clone()).or_insert_with(Scalar::zero);
            *entry -= &(&c * v);
        }
        rem.retain(|_, v| !v.is_zero());
        coeffs.insert(mu, c);
    }
    let (qi, ti) = (q.inv()?, t.inv()?);
    let arg = t.checked_div(&(&(cap_t * s) * s2))?;
    for mu in partitions::dominated_by(lam, lam.size().max(1) as usize) {
        let lhs = coeffs.get(&mu).cloned().unwrap_or_else(Scalar::zero);
        let num = &c0(lam, cap_t, q, t) * &c0(lam, &arg, &qi, &ti);
        let den = &c0(&mu, cap_t, q, t) * &c0(&mu, &arg, &qi, &ti);
        let skew = engine.skew_pleth_eval(lam, &mu, |k| {
            let num = &s.pow(k as i64).unwrap() - &s2.pow(k as i64).unwrap();
            let den = Scalar::one() - &t.pow(k as i64).unwrap();
            num.checked_div(&den).unwrap()
        })?;
        let rhs = &num.checked_div(&den)? * &skew;
        report.push(Check::scalar_eq(
            "lifted_interp_connection",
            format!("lambda=({lam}) mu=({mu})"),
            &lhs,
            &rhs,
        ));
    }
    Ok(report)
}

/// Inclusion-triangularity of the lifted polynomial in the Macdonald basis.
pub fn lifted_triangularity_check(
    cx: &Caches,
    lam: &Partition,
    cap_t: &Scalar,
    s: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Report> {
    let engine = cx.engine(q, t);
    let f = lifted_interp(cx, lam, cap_t, s, q, t)?;
    let in_p = engine.convert(&f, Basis::MacP)?;
    let mut report = Report::new();
    let mut ok = true;
    let mut bad = String::new();
    for mu in in_p.coeffs.keys() {
        if !lam.contains(mu) {
            ok = false;
            bad = format!("({mu})");
            break;
        }
    }
    report.push(Check::new(
        "lifted_interp_macdonald_triangularity",
        format!("lambda=({lam})"),
        &"support within the inclusion downset",
        &bad,
        ok,
    ));
    // leading homogeneous component is the Macdonald polynomial
    let top = {
        let mut g = SymFunc::zero(Basis::M, lam.size());
        for (mu, c) in &f.coeffs {
            if mu.size() == lam.size() {
                g.add_term(mu.clone(), c.clone());
            }
        }
        g
    };
    let mac = engine.macdonald_p(lam)?;
    report.push(Check::new(
        "lifted_interp_leading_macdonald",
        format!("lambda=({lam})"),
        &top,
        &mac,
        top.coeffs == mac.coeffs,
    ));
    Ok(report)
}

/// The one-column family: `P̃*_{1^n}` equals a plethystic shift of
/// `e_n - e_{n-2}`.
pub fn column_formula_check(
    cx: &Caches,
    n: usize,
    cap_t: &Scalar,
    s: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Report> {
    let engine = cx.engine(q, t);
    let lam = Partition::new(vec![1; n]);
    let lhs = lifted_interp(cx, &lam, cap_t, s, q, t)?;
    let mut e_part = SymFunc::single(
        Basis::E,
        Partition::new(vec![n as u32]),
        Scalar::one(),
        n as u32,
    );
    if n >= 2 {
        e_part.add_term(Partition::new(vec![n as u32 - 2]), -Scalar::one());
    }
    let tn1 = t.pow(n as i64 - 1)?;
    let ratio = cap_t.checked_div(&tn1)?;
    let rhs_raw = engine.plethysm_map(&e_part, |k| {
        let k_i = k as i64;
        let up = (&s.pow(k_i).unwrap() * &(Scalar::one() - &ratio.pow(k_i).unwrap()))
            .checked_div(&(Scalar::one() - &t.pow(k_i).unwrap()))
            .unwrap();
        let dn = (&s.pow(-k_i).unwrap() * &(Scalar::one() - &ratio.pow(-k_i).unwrap()))
            .checked_div(&(Scalar::one() - &t.pow(-k_i).unwrap()))
            .unwrap();
        PkImage::shifted(k, -(&up + &dn))
    })?;
    let rhs = engine.convert(&rhs_raw, Basis::M)?;
    let mut report = Report::new();
    report.push(Check::new(
        "lifted_interp_column_formula",
        format!("n={n}"),
        &*lhs,
        &rhs,
        lhs.coeffs == rhs.coeffs,
    ));
    Ok(report)
}

/// Lifted bulk branching: a plethystic shift of the alphabet expands with
/// the same `ψ^B` weights as the finite-variable rule.
pub fn lifted_bulk_branch_check(
    cx: &Caches,
    lam: &Partition,
    u: &Scalar,
    v: &Scalar,
    cap_t: &Scalar,
    s: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Report> {
    let engine = cx.engine(q, t);
    let shifted_t = (cap_t * v).checked_div(u)?;
    let base = lifted_interp(cx, lam, &shifted_t, s, q, t)?;
    let lhs = engine.plethysm_map(&base, |k| {
        let k_i = k as i64;
        let a = (&u.pow(k_i).unwrap() - &v.pow(k_i).unwrap())
            .checked_div(&(Scalar::one() - &t.pow(k_i).unwrap()))
            .unwrap();
        let b = (&u.pow(-k_i).unwrap() - &v.pow(-k_i).unwrap())
            .checked_div(&(Scalar::one() - &t.pow(-k_i).unwrap()))
            .unwrap();
        PkImage::shifted(k, &a + &b)
    })?;
    let st = s * cap_t;
    let mut rhs = SymFunc::zero(Basis::M, lam.size());
    for mu in partitions::dominated_by(lam, lam.size().max(1) as usize) {
        if !lam.contains(&mu) {
            continue;
        }
        let w = crate::interpolation::psi_bulk_branch(cx, lam, &mu, u, v, &st, q, t)?;
        if w.is_zero() {
            continue;
        }
        rhs = rhs.add(&lifted_interp(cx, &mu, cap_t, s, q, t)?.scale(&w));
    }
    let mut report = Report::new();
    report.push(Check::new(
        "lifted_interp_bulk_branching",
        format!("lambda=({lam})"),
        &lhs,
        &rhs,
        lhs.coeffs == rhs.coeffs,
    ));
    Ok(report)
}

// ---------------------------------------------------------------------------
// virtual interpolation polynomials
// ---------------------------------------------------------------------------

/// Expands a Macdonald polynomial in the lifted interpolation basis at the
/// same (q,t); returns all expansion coefficients.
fn expand_macdonald_in_lifted(
    cx: &Caches,
    lam: &Partition,
    cap_t: &Scalar,
    s: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<std::collections::BTreeMap<Partition, Scalar>> {
    let engine = cx.engine(q, t);
    let mut rem = engine.macdonald_p(lam)?.coeffs;
    let mut out = std::collections::BTreeMap::new();
    loop {
        let Some(mu) = rem
            .keys()
            .cloned()
            .max_by(|a, b| partitions::dominance_refining(a, b))
        else {
            break;
        };
        let c = rem.remove(&mu).unwrap();
        if c.is_zero() {
            continue;
        }
        for (nu, v) in &lifted_interp(cx, &mu, cap_t, s, q, t)?.coeffs {
            if *nu == mu {
                continue;
            }
            let entry = rem.entry(nu.clone()).or_insert_with(Scalar::zero);
            *entry -= &(&c * v);
        }
        rem.retain(|_, v| !v.is_zero());
        out.insert(mu, c);
    }
    Ok(out)
}

/// The virtual interpolation polynomial, truncated to total degree `cap`,
/// expressed in the Macdonald P basis at (q,t):
/// `P̂*_μ = Σ_λ (-1)^{|λ|-|μ|} ([P̃*_{μ'}(;t,q,Q;s)] P_{λ'}(;t,q)) P_λ(;q,t)`.
pub fn virtual_interp(
    cx: &Caches,
    mu: &Partition,
    cap_q: &Scalar,
    s: &Scalar,
    q: &Scalar,
    t: &Scalar,
    cap: u32,
) -> Result<SymFunc> {
    let mu_c = mu.conjugate();
    let mut out = SymFunc::zero(Basis::MacP, cap);
    out.truncated = true;
    for lam in partitions::of_size_at_most(cap) {
        if !lam.contains(mu) {
            continue;
        }
        let coeffs = expand_macdonald_in_lifted(cx, &lam.conjugate(), cap_q, s, t, q)?;
        let Some(c) = coeffs.get(&mu_c) else {
            continue;
        };
        let sign = if (lam.size() - mu.size()) % 2 == 0 {
            Scalar::one()
        } else {
            -Scalar::one()
        };
        out.add_term(lam, &sign * c);
    }
    Ok(out)
}

/// Consistency of the virtual family with its finite-variable definition at
/// `Q = q^m`: restriction to `n` ordinary variables equals
/// `∏ x_i^m · P̄*_{m^n-λ}(x; q, t, s)`.
pub fn virtual_consistency_check(
    cx: &Caches,
    m: u32,
    n: usize,
    lam: &Partition,
    s: &Scalar,
    q: &Scalar,
    t: &Scalar,
) -> Result<Report> {
    let engine = cx.engine(q, t);
    let cap = 2 * m * n as u32;
    let qm = q.pow(m as i64)?;
    let hat = virtual_interp(cx, lam, &qm, s, q, t, cap)?;
    let lhs = engine.restrict_vars(&hat, n)?;
    let comp = lam.box_complement(m, n)?;
    let base = interp_poly(cx, n, &comp, s, q, t)?;
    let rhs = base.mul(&BcPoly::monomial(n, vec![m as i64; n], Scalar::one()));
    let mut report = Report::new();
    report.push(Check::new(
        "virtual_interp_boxed_consistency",
        format!("m={m} n={n} lambda=({lam})"),
        &lhs,
        &rhs,
        lhs == rhs,
    ));
    Ok(report)
}

/// Both Cauchy identities for the lifted/virtual pair, compared through
/// Macdonald-basis coefficients up to total degree `cap` in each alphabet.
pub fn lifted_cauchy_check(
    cx: &Caches,
    cap_t: &Scalar,
    s: &Scalar,
    q_half: &Scalar,
    t_half: &Scalar,
    cap: u32,
) -> Result<Report> {
    let q = q_half * q_half;
    let t = t_half * t_half;
    let engine = cx.engine(&q, &t);
    let mut report = Report::new();
    // first identity: Σ_λ (-1)^{|λ|} P̃*_λ(x;q,t,T;s) P̂*_{λ'}(y;t,q,T;s)
    //               = Σ_λ (-1)^{|λ|} P_λ(x;q,t) P_{λ'}(y;t,q)
    let mut lifted_in_p: Vec<(Partition, SymFunc, SymFunc)> = Vec::new();
    for lam in partitions::of_size_at_most(cap) {
        let tilde = engine.convert(&*lifted_interp(cx, &lam, cap_t, s, &q, &t)?, Basis::MacP)?;
        let hat = virtual_interp(cx, &lam.conjugate(), cap_t, s, &t, &q, cap)?;
        lifted_in_p.push((lam, tilde, hat));
    }
    for mu in partitions::of_size_at_most(cap) {
        for nu in partitions::of_size_at_most(cap) {
            let mut acc = Scalar::zero();
            for (lam, tilde, hat) in &lifted_in_p {
                let sign = if lam.size() % 2 == 0 {
                    Scalar::one()
                } else {
                    -Scalar::one()
                };
                acc += &(&sign * &(&tilde.coeff(&mu) * &hat.coeff(&nu)));
            }
            let expect = if nu == mu.conjugate() {
                if mu.size() % 2 == 0 {
                    Scalar::one()
                } else {
                    -Scalar::one()
                }
            } else {
                Scalar::zero()
            };
            report.push(Check::scalar_eq(
                "lifted_cauchy_dual_pair",
                format!("mu=({mu}) nu=({nu})"),
                &acc,
                &expect,
            ));
        }
    }
    // second identity: Σ_λ b_λ (q/t)^{|λ|/2} P̃*_λ(x;q,t,T;s)
    //   P̂*_λ(y;q,t,1/T;√(qt)/s) = Σ_λ (q/t)^{|λ|/2} P_λ(x) Q_λ(y)
    let s_dual = (q_half * t_half).checked_div(s)?;
    let ti_cap = cap_t.inv()?;
    let mut same_pair: Vec<(Partition, SymFunc, SymFunc)> = Vec::new();
    for lam in partitions::of_size_at_most(cap) {
        let tilde = engine.convert(&*lifted_interp(cx, &lam, cap_t, s, &q, &t)?, Basis::MacP)?;
        let hat = virtual_interp(cx, &lam, &ti_cap, &s_dual, &q, &t, cap)?;
        same_pair.push((lam, tilde, hat));
    }
    let ratio_half = q_half.checked_div(t_half)?;
    for mu in partitions::of_size_at_most(cap) {
        for nu in partitions::of_size_at_most(cap) {
            let mut acc = Scalar::zero();
            for (lam, tilde, hat) in &same_pair {
                let w = &engine.b_lambda(lam)? * &ratio_half.pow(lam.size() as i64)?;
                acc += &(&w * &(&tilde.coeff(&mu) * &hat.coeff(&nu)));
            }
            let expect = if mu == nu {
                &ratio_half.pow(mu.size() as i64)? * &engine.b_lambda(&mu)?
            } else {
                Scalar::zero()
            };
            report.push(Check::scalar_eq(
                "lifted_cauchy_same_pair",
                format!("mu=({mu}) nu=({nu})"),
                &acc,
                &expect,
            ));
        }
    }
    Ok(report)
}

/// Evaluation at a triple-product constant alphabet: the lifted polynomial
/// collapses to a `C⁰/C⁻` ratio.
pub fn constant_evaluation_check(
    cx: &Caches,
    lam: &Partition,
    x_half: &Scalar,
    y_half: &Scalar,
    z_half: &Scalar,
    t_half: &Scalar,
    q: &Scalar,
) -> Result<Report> {
    let t = t_half * t_half;
    let engine = cx.engine(q, &t);
    let s = t_half.checked_div(&(&(x_half * y_half) * z_half))?;
    let f = lifted_interp(cx, lam, &Scalar::one(), &s, q, &t)?;
    let value = engine.plethysm_eval(&f, |k| {
        let k = k as i64;
        let part = |h: &Scalar| -> Scalar { &h.pow(k).unwrap() - &h.pow(-k).unwrap() };
        (&(&part(x_half) * &part(y_half)) * &part(z_half))
            .checked_div(&part(t_half))
            .unwrap()
    })?;
    let sign_base = -(&(&(x_half * y_half) * z_half) * t_half);
    let lhs = &sign_base.pow(lam.size() as i64)? * &value;
    let (qi, ti) = (q.inv()?, t.inv()?);
    let (x, y, z) = (x_half * x_half, y_half * y_half, z_half * z_half);
    let rhs = &(&t.pow(-2 * lam.n_stat() as i64)? * &q.pow(lam.n_stat_conj() as i64)?)
        * &cfun_multi(CKind::Zero, lam, &[&x, &y, &z], &qi, &ti)
            .checked_div(&cminus(lam, &ti, &qi, &ti))?;
    let mut report = Report::new();
    report.push(Check::scalar_eq(
        "lifted_interp_constant_evaluation",
        format!("lambda=({lam})"),
        &lhs,
        &rhs,
    ));
    Ok(report)
}

// ---------------------------------------------------------------------------
// lifted Koornwinder polynomials and the virtual integral at generic T
// ---------------------------------------------------------------------------

/// Lifted Koornwinder polynomial via the binomial formula:
/// `K̃_λ = Σ_{μ⊆λ} [λ;μ]_{q,t,(T/t)t̂₀} (k⁰_λ(T)/k⁰_μ(T)) P̃*_μ(;q,t,T;t₀)`.
pub fn lifted_koorn(
    cx: &Caches,
    lam: &Partition,
    cap_t: &Scalar,
    kp: &KoornParams,
) -> Result<Arc<SymFunc>> {
    let mut packed = vec![cap_t.clone(), kp.q.clone(), kp.t.clone(), kp.that0.clone()];
    packed.extend(kp.tp.iter().cloned());
    let key = ("koorn", lam.clone(), packed);
    {
        let cache = cx.lifted.lock().unwrap();
        if let Some(f) = cache.get(&key) {
            return Ok(f.clone());
        }
    }
    let (q, t) = (&kp.q, &kp.t);
    let spec = (cap_t * &kp.that0).checked_div(t)?;
    let mut f = SymFunc::zero(Basis::M, lam.size());
    for mu in partitions::between(&Partition::empty(), lam) {
        let b = binom(cx, BinomKind::Bracket, lam, &mu, &spec, q, t)?;
        if b.is_zero() {
            continue;
        }
        // the normalization ratio can have removable zeros at T = tⁿ
        let ratio = k0_ratio_limit(lam, &mu, cap_t, kp)?;
        if ratio.is_zero() {
            continue;
        }
        f = f.add(&lifted_interp(cx, &mu, cap_t, &kp.tp[0], q, t)?.scale(&(&b * &ratio)));
    }
    let arc = Arc::new(f);
    cx.lifted.lock().unwrap().insert(key, arc.clone());
    Ok(arc)
}

/// The virtual Koornwinder integral at generic `T`: the coefficient of
/// `K̃₀ = 1` in the lifted Koornwinder expansion of `f` (m basis).
pub fn virtual_integral_t(
    cx: &Caches,
    f: &SymFunc,
    cap_t: &Scalar,
    kp: &KoornParams,
) -> Result<Scalar> {
    let engine = cx.engine(&kp.q, &kp.t);
    let mut rem = engine.convert(f, Basis::M)?.coeffs;
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
        for (nu, v) in &lifted_koorn(cx, &lam, cap_t, kp)?.coeffs {
            if *nu == lam {
                continue;
            }
            let entry = rem.entry(nu.clone()).or_insert_with(Scalar::zero);
            *entry -= &(&c * v);
        }
        rem.retain(|_, v| !v.is_zero());
    }
    Ok(rem
        .get(&Partition::empty())
        .cloned()
        .unwrap_or_else(Scalar::zero))
}

/// Restriction of the lifted Koornwinder polynomial at `T = tⁿ`.
pub fn lifted_koorn_restriction_check(
    cx: &Caches,
    n: usize,
    lam: &Partition,
    kp: &KoornParams,
) -> Result<Report> {
    let engine = cx.engine(&kp.q, &kp.t);
    let tn = kp.t.pow(n as i64)?;
    let lifted = lifted_koorn(cx, lam, &tn, kp)?;
    let lhs = engine.restrict_bc(&lifted, n)?;
    let rhs = if lam.len() <= n {
        (*koorn_poly(cx, n, lam, kp)?).clone()
    } else {
        BcPoly::zero(n)
    };
    let mut report = Report::new();
    report.push(Check::new(
        "lifted_koorn_restriction",
        format!("n={n} lambda=({lam})"),
        &lhs,
        &rhs,
        lhs == rhs,
    ));
    Ok(report)
}

/// Orthogonality of the lifted family under the generic-T virtual integral.
pub fn lifted_orthogonality_check(
    cx: &Caches,
    lam: &Partition,
    mu: &Partition,
    cap_t: &Scalar,
    kp: &KoornParams,
) -> Result<Report> {
    let engine = cx.engine(&kp.q, &kp.t);
    let a = lifted_koorn(cx, lam, cap_t, kp)?;
    let b = lifted_koorn(cx, mu, cap_t, kp)?;
    let prod = engine.multiply(&a, &b)?;
    let lhs = virtual_integral_t(cx, &prod, cap_t, kp)?;
    let rhs = if lam == mu {
        n_norm(lam, cap_t, kp)?
    } else {
        Scalar::zero()
    };
    let mut report = Report::new();
    report.push(Check::scalar_eq(
        "lifted_koorn_orthogonality",
        format!("lambda=({lam}) mu=({mu})"),
        &lhs,
        &rhs,
    ));
    Ok(report)
}

// ---------------------------------------------------------------------------
// the Gaussian functional and the T = 0 theory
// ---------------------------------------------------------------------------

/// The moment sequences identifying the `T = 0` virtual integral with a
/// Gaussian expectation:
/// odd means `Σ tᵢ^k / (1-t^k)`, even means subtract `1+t^{k/2}+q^{k/2}+(qt)^{k/2}`,
/// variances `k (1-q^k)/(1-t^k)`.
pub fn gaussian_mu_sigma(
    kp: &KoornParams,
) -> (impl Fn(u32) -> Scalar + '_, impl Fn(u32) -> Scalar + '_) {
    let mu = move |k: u32| -> Scalar {
        let k_i = k as i64;
        let mut num = Scalar::zero();
        for i in 0..4 {
            num += &kp.tp[i].pow(k_i).unwrap();
        }
        if k % 2 == 0 {
            let h = k_i / 2;
            num -= &Scalar::one();
            num -= &kp.t.pow(h).unwrap();
            num -= &kp.q.pow(h).unwrap();
            num -= &(&kp.q.pow(h).unwrap() * &kp.t.pow(h).unwrap());
        }
        num.checked_div(&(Scalar::one() - &kp.t.pow(k_i).unwrap()))
            .unwrap()
    };
    let sigma = move |k: u32| -> Scalar {
        let k_i = k as i64;
        (&Scalar::from_int(k_i) * &(Scalar::one() - &kp.q.pow(k_i).unwrap()))
            .checked_div(&(Scalar::one() - &kp.t.pow(k_i).unwrap()))
            .unwrap()
    };
    (mu, sigma)
}

/// The `T = 0` virtual integral evaluated through the Gaussian functional.
pub fn gaussian_integral(cx: &Caches, f: &SymFunc, kp: &KoornParams) -> Result<Scalar> {
    let engine = cx.engine(&kp.q, &kp.t);
    let (mu, sigma) = gaussian_mu_sigma(kp);
    engine.gaussian_expectation(f, mu, sigma)
}

/// Scalar values `K̃_μ(empty alphabet; q, t, 0; t₀..t₃)` extracted from the
/// generating kernel, for all `|μ| <= cap`.
pub fn t0_empty_values(
    cx: &Caches,
    kp: &KoornParams,
    cap: u32,
) -> Result<std::collections::BTreeMap<Partition, Scalar>> {
    let engine = cx.engine(&kp.q, &kp.t);
    let (q, t) = (&kp.q, &kp.t);
    // log of the kernel in the power-sum basis
    let mut log_f = SymFunc::zero(Basis::P, cap);
    for m in 1..=cap {
        let m_i = m as i64;
        let minv = Scalar::from_int(m_i).inv()?;
        let denom = Scalar::one() - &q.pow(m_i)?;
        // pair part: (t^m - 1)/(m (1-q^m)) (p_m² - p_{2m})/2
        let cpair = (&(&t.pow(m_i)? - &Scalar::one()) * &minv)
            .checked_div(&(&denom * &Scalar::from_int(2)))?;
        log_f.add_term(Partition::new(vec![m, m]), cpair.clone());
        log_f.add_term(Partition::new(vec![2 * m]), -cpair);
        // linear part: -(Σ tᵢ^m) p_m / (m (1-q^m))
        let mut tsum = Scalar::zero();
        for i in 0..4 {
            tsum += &kp.tp[i].pow(m_i)?;
        }
        log_f.add_term(
            Partition::new(vec![m]),
            -(&(&tsum * &minv).checked_div(&denom)?),
        );
        // square part: + t^m p_{2m} / (m (1-q^m))
        log_f.add_term(
            Partition::new(vec![2 * m]),
            (&t.pow(m_i)? * &minv).checked_div(&denom)?,
        );
    }
    // exponentiate within the truncation
    let mut kernel = SymFunc::one(Basis::P, cap);
    let mut power = SymFunc::one(Basis::P, cap);
    let mut factorial = Scalar::one();
    for j in 1..=cap {
        power = engine.multiply_capped(&power, &log_f, cap)?;
        factorial *= &Scalar::from_int(j as i64);
        if power.is_zero() {
            break;
        }
        kernel = kernel.add(&power.scale(&factorial.inv()?));
    }
    // K̃_μ(0) = [Q_μ] kernel = [P_μ] kernel / b_μ
    let in_p = engine.convert(&kernel, Basis::MacP)?;
    let mut out = std::collections::BTreeMap::new();
    for mu in partitions::of_size_at_most(cap) {
        let c = in_p.coeff(&mu).checked_div(&engine.b_lambda(&mu)?)?;
        out.insert(mu, c);
    }
    Ok(out)
}

/// The `T = 0` lifted Koornwinder polynomial, built from the branching
/// expansion `K̃_λ(;0) = Σ_{μ⊆λ} P_{λ/μ} K̃_μ(0)` (the binomial formula
/// degenerates at `T = 0`).
pub fn t0_koorn(cx: &Caches, lam: &Partition, kp: &KoornParams) -> Result<Arc<SymFunc>> {
    let mut packed = vec![kp.q.clone(), kp.t.clone(), kp.that0.clone()];
    packed.extend(kp.tp.iter().cloned());
    let key = ("koorn_t0", lam.clone(), packed);
    {
        let cache = cx.lifted.lock().unwrap();
        if let Some(f) = cache.get(&key) {
            return Ok(f.clone());
        }
    }
    let engine = cx.engine(&kp.q, &kp.t);
    let empty_values = t0_empty_values(cx, kp, lam.size())?;
    let mut f = SymFunc::zero(Basis::MacP, lam.size());
    for mu in partitions::between(&Partition::empty(), lam) {
        let c = &empty_values[&mu];
        if c.is_zero() {
            continue;
        }
        f = f.add(&engine.skew_p(lam, &mu, lam.size())?.scale(c));
    }
    let f = engine.convert(&f, Basis::M)?;
    let arc = Arc::new(f);
    cx.lifted.lock().unwrap().insert(key, arc.clone());
    Ok(arc)
}

/// The `T = 0` virtual integral as a Koornwinder-basis coefficient,
/// cross-checkable against the Gaussian expectation.
pub fn virtual_integral_t0(cx: &Caches, f: &SymFunc, kp: &KoornParams) -> Result<Scalar> {
    let engine = cx.engine(&kp.q, &kp.t);
    let mut rem = engine.convert(f, Basis::M)?.coeffs;
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
        for (nu, v) in &t0_koorn(cx, &lam, kp)?.coeffs {
            if *nu == lam {
                continue;
            }
            let entry = rem.entry(nu.clone()).or_insert_with(Scalar::zero);
            *entry -= &(&c * v);
        }
        rem.retain(|_, v| !v.is_zero());
    }
    Ok(rem
        .get(&Partition::empty())
        .cloned()
        .unwrap_or_else(Scalar::zero))
}

/// Identity of the two `T = 0` pipelines on power sums.
pub fn ik_equals_ig(cx: &Caches, lam: &Partition, kp: &KoornParams) -> Result<Report> {
    let f = SymFunc::single(Basis::P, lam.clone(), Scalar::one(), lam.size());
    let via_koorn = virtual_integral_t0(cx, &f, kp)?;
    let via_gauss = gaussian_integral(cx, &f, kp)?;
    let mut report = Report::new();
    report.push(Check::scalar_eq(
        "t0_gaussian_equals_virtual",
        format!("p_({lam})"),
        &via_koorn,
        &via_gauss,
    ));
    Ok(report)
}

/// Orthogonality of the `T = 0` family under the Gaussian functional:
/// `I(K̃_λ(0) K̃_μ(0)) = δ_{λμ} / b_λ`.
pub fn t0_orthogonality_check(
    cx: &Caches,
    lam: &Partition,
    mu: &Partition,
    kp: &KoornParams,
) -> Result<Report> {
    let engine = cx.engine(&kp.q, &kp.t);
    let a = t0_koorn(cx, lam, kp)?;
    let b = t0_koorn(cx, mu, kp)?;
    let prod = engine.multiply(&a, &b)?;
    let lhs = gaussian_integral(cx, &prod, kp)?;
    let rhs = if lam == mu {
        engine.b_lambda(lam)?.inv()?
    } else {
        Scalar::zero()
    };
    let mut report = Report::new();
    report.push(Check::scalar_eq(
        "t0_generating_orthogonality",
        format!("lambda=({lam}) mu=({mu})"),
        &lhs,
        &rhs,
    ));
    Ok(report)
}

/// The `T = 0` branching rule over two finite ordinary alphabets.
pub fn t0_branching_check(
    cx: &Caches,
    lam: &Partition,
    nx: usize,
    ny: usize,
    kp: &KoornParams,
) -> Result<Report> {
    let engine = cx.engine(&kp.q, &kp.t);
    let total = nx + ny;
    let lhs = engine.restrict_vars(&*t0_koorn(cx, lam, kp)?, total)?;
    let mut rhs = BcPoly::zero(total);
    for mu in partitions::between(&Partition::empty(), lam) {
        let skew = engine.skew_p(lam, &mu, lam.size())?;
        let left = engine.restrict_vars(&skew, nx)?.embed(total, 0);
        let right = engine
            .restrict_vars(&*t0_koorn(cx, &mu, kp)?, ny)?
            .embed(total, nx);
        rhs = rhs.add(&left.mul(&right));
    }
    let mut report = Report::new();
    report.push(Check::new(
        "t0_branching",
        format!("lambda=({lam}) alphabets={nx}+{ny}"),
        &lhs,
        &rhs,
        lhs == rhs,
    ));
    Ok(report)
}

/// Plethystic symmetry at `T = 0`: changing the parameter quadruple is a
/// power-sum shift.
pub fn t0_plethystic_symmetry_check(
    cx: &Caches,
    lam: &Partition,
    kp: &KoornParams,
    kp_primed: &KoornParams,
) -> Result<Report> {
    let engine = cx.engine(&kp.q, &kp.t);
    let lhs = t0_koorn(cx, lam, kp_primed)?;
    let base = t0_koorn(cx, lam, kp)?;
    let t = kp.t.clone();
    let rhs = engine.plethysm_map(&base, |k| {
        let k_i = k as i64;
        let mut num = Scalar::zero();
        for i in 0..4 {
            num += &kp.tp[i].pow(k_i).unwrap();
            num -= &kp_primed.tp[i].pow(k_i).unwrap();
        }
        PkImage::shifted(
            k,
            num.checked_div(&(Scalar::one() - &t.pow(k_i).unwrap()))
                .unwrap(),
        )
    })?;
    let mut report = Report::new();
    report.push(Check::new(
        "t0_plethystic_symmetry",
        format!("lambda=({lam})"),
        &*lhs,
        &rhs,
        lhs.coeffs == rhs.coeffs,
    ));
    Ok(report)
}

/// The `T = 0` one-row Pieri rule, compared as a truncated series in `u`
/// with symmetric-function coefficients.
pub fn t0_g_pieri_check(
    cx: &Caches,
    lam: &Partition,
    order: usize,
    kp: &KoornParams,
) -> Result<Report> {
    let engine = cx.engine(&kp.q, &kp.t);
    let (q, t) = (&kp.q, &kp.t);
    let base = t0_koorn(cx, lam, kp)?;
    let cap = lam.size() + order as u32;
    // LHS coefficients of u^k: g_k · K̃_λ(0)
    let mut lhs: Vec<SymFunc> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let g = SymFunc::single(
            Basis::G,
            Partition::new(vec![k as u32]),
            Scalar::one(),
            k as u32,
        );
        let prod = engine.multiply_capped(&g, &base, cap)?;
        lhs.push(engine.convert(&prod, Basis::M)?);
    }
    // prefactor (t u²; q)_∞ / ∏ᵢ (tᵢ u; q)_∞
    let mut pref = ScalarSeries::qpoch_inf(t, 2, q, order)?;
    for i in 0..4 {
        pref = pref.mul(&ScalarSeries::qpoch_inf_inv(&kp.tp[i], 1, q, order)?);
    }
    // Σ over ν ⊆ λ with nonzero ψ, μ ⊇ ν with nonzero φ
    let mut rhs: Vec<SymFunc> = (0..=order)
        .map(|_| SymFunc::zero(Basis::M, cap))
        .collect();
    for nu in partitions::between(&Partition::empty(), lam) {
        let (psi, _, _, _) = engine.one_var_weights(lam, &nu)?;
        if psi.is_zero() {
            continue;
        }
        let down = (lam.size() - nu.size()) as usize;
        if down > order {
            continue;
        }
        let max_up = (order - down) as u32;
        for mu in partitions::of_size_at_most(nu.size() + max_up) {
            if !mu.contains(&nu) {
                continue;
            }
            let (_, phi, _, _) = engine.one_var_weights(&mu, &nu)?;
            if phi.is_zero() {
                continue;
            }
            let power = down + (mu.size() - nu.size()) as usize;
            if power > order {
                continue;
            }
            let f = t0_koorn(cx, &mu, kp)?.scale(&(&psi * &phi));
            rhs[power] = rhs[power].add(&f);
        }
    }
    // multiply the prefactor series in
    let mut rhs_full: Vec<SymFunc> = (0..=order)
        .map(|_| SymFunc::zero(Basis::M, cap))
        .collect();
    for (i, coeff) in pref.coeffs.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        for j in 0..=(order - i) {
            rhs_full[i + j] = rhs_full[i + j].add(&rhs[j].scale(coeff));
        }
    }
    let mut report = Report::new();
    for k in 0..=order {
        report.push(Check::new(
            "t0_g_pieri",
            format!("lambda=({lam}) u-order={k}"),
            &lhs[k],
            &rhs_full[k],
            lhs[k].coeffs == rhs_full[k].coeffs,
        ));
    }
    Ok(report)
}

/// The `T = 0` elementary Pieri rule as a truncated series in `u`.
pub fn t0_e_pieri_check(
    cx: &Caches,
    lam: &Partition,
    order: usize,
    kp: &KoornParams,
) -> Result<Report> {
    let engine = cx.engine(&kp.q, &kp.t);
    let (q, t) = (&kp.q, &kp.t);
    let base = t0_koorn(cx, lam, kp)?;
    let cap = lam.size() + order as u32;
    let mut lhs: Vec<SymFunc> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let e = SymFunc::single(
            Basis::E,
            Partition::new(vec![k as u32]),
            Scalar::one(),
            k as u32,
        );
        let prod = engine.multiply_capped(&e, &base, cap)?;
        lhs.push(engine.convert(&prod, Basis::M)?);
    }
    // prefactor ∏ᵢ (-tᵢ u; t)_∞ / (u²; t)_∞ — note the base is t
    let mut pref = ScalarSeries::qpoch_inf_inv(&Scalar::one(), 2, t, order)?;
    for i in 0..4 {
        pref = pref.mul(&ScalarSeries::qpoch_inf(&-&kp.tp[i], 1, t, order)?);
    }
    let _ = q;
    let mut rhs: Vec<SymFunc> = (0..=order)
        .map(|_| SymFunc::zero(Basis::M, cap))
        .collect();
    for nu in partitions::between(&Partition::empty(), lam) {
        let (_, _, _, phi_conj) = engine.one_var_weights(lam, &nu)?;
        if phi_conj.is_zero() {
            continue;
        }
        let down = (lam.size() - nu.size()) as usize;
        if down > order {
            continue;
        }
        let max_up = (order - down) as u32;
        for mu in partitions::of_size_at_most(nu.size() + max_up) {
            if !mu.contains(&nu) {
                continue;
            }
            let (_, _, psi_conj, _) = engine.one_var_weights(&mu, &nu)?;
            if psi_conj.is_zero() {
                continue;
            }
            let power = down + (mu.size() - nu.size()) as usize;
            if power > order {
                continue;
            }
            let f = t0_koorn(cx, &mu, kp)?.scale(&(&phi_conj * &psi_conj));
            rhs[power] = rhs[power].add(&f);
        }
    }
    let mut rhs_full: Vec<SymFunc> = (0..=order)
        .map(|_| SymFunc::zero(Basis::M, cap))
        .collect();
    for (i, coeff) in pref.coeffs.iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        for j in 0..=(order - i) {
            rhs_full[i + j] = rhs_full[i + j].add(&rhs[j].scale(coeff));
        }
    }
    let mut report = Report::new();
    for k in 0..=order {
        report.push(Check::new(
            "t0_e_pieri",
            format!("lambda=({lam}) u-order={k}"),
            &lhs[k],
            &rhs_full[k],
            lhs[k].coeffs == rhs_full[k].coeffs,
        ));
    }
    Ok(report)
}

/// The generating-function identity at `T = 0`, verified over two finite
/// ordinary alphabets: `Σ_λ Q_λ(x) K̃_λ(y; 0)` equals the explicit kernel.
pub fn t0_generating_function_check(
    cx: &Caches,
    nx: usize,
    ny: usize,
    cap: u32,
    kp: &KoornParams,
) -> Result<Report> {
    let engine = cx.engine(&kp.q, &kp.t);
    let (q, t) = (&kp.q, &kp.t);
    let total = nx + ny;
    // LHS: Σ_{|λ| <= cap} Q_λ(x) K̃_λ(y; 0), graded by total degree in x
    let mut lhs_by_deg: Vec<BcPoly> = (0..=cap).map(|_| BcPoly::zero(total)).collect();
    for lam in partitions::of_size_at_most(cap) {
        if lam.len() > nx {
            continue; // Q_λ vanishes on fewer variables
        }
        let qx = engine
            .restrict_vars(&engine.macdonald_q(&lam)?, nx)?
            .embed(total, 0);
        let ky = engine
            .restrict_vars(&*t0_koorn(cx, &lam, kp)?, ny)?
            .embed(total, nx);
        lhs_by_deg[lam.size() as usize] =
            lhs_by_deg[lam.size() as usize].add(&qx.mul(&ky));
    }
    // RHS kernel: ∏_{j<k in x} (x_j x_k;q)/(t x_j x_k;q)
    //   ∏_{j in x} ∏_i (tᵢ x_j;q)/(t x_j²;q) ∏_{j in x, k in y} (t x_j y_k;q)/(x_j y_k;q)
    // expanded exactly to x-degree `cap` via the power-sum log expansion is
    // awkward over split alphabets; instead compare against the kernel's
    // product form truncated by x-degree.
    let mut rhs = BcPoly::constant(total, Scalar::one());
    let trunc = |p: BcPoly| -> BcPoly {
        // drop terms of x-degree above cap (degree in first nx variables)
        let mut out = BcPoly::zero(total);
        for (e, c) in p.terms() {
            let xdeg: i64 = e[..nx].iter().sum();
            if xdeg <= cap as i64 {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    };
    // each q-symbol factor (a w; q)_∞ is expanded to the needed x-degree
    let expand_qpoch = |w_exps: Vec<i64>, a: &Scalar, invert: bool, base: &Scalar| -> Result<BcPoly> {
        // w is a monomial of positive x-degree d; (a w; base)_∞ truncated
        let d: i64 = w_exps[..nx].iter().sum();
        let kmax = (cap as i64) / d.max(1);
        let mut acc = BcPoly::zero(total);
        for k in 0..=kmax {
            let coeff = if invert {
                a.pow(k)?.checked_div(&qpoch(base, base, k)?)?
            } else {
                let sign = if k % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                (&(&sign * &a.pow(k)?) * &base.pow(k * (k - 1) / 2)?)
                    .checked_div(&qpoch(base, base, k)?)?
            };
            let exps: Vec<i64> = w_exps.iter().map(|e| e * k).collect();
            acc.add_term(exps, coeff);
        }
        Ok(acc)
    };
    for j in 0..nx {
        for k in (j + 1)..nx {
            let mut w = vec![0i64; total];
            w[j] = 1;
            w[k] = 1;
            rhs = trunc(rhs.mul(&expand_qpoch(w.clone(), &Scalar::one(), false, q)?));
            rhs = trunc(rhs.mul(&expand_qpoch(w, t, true, q)?));
        }
    }
    for j in 0..nx {
        let mut w = vec![0i64; total];
        w[j] = 1;
        for i in 0..4 {
            rhs = trunc(rhs.mul(&expand_qpoch(w.clone(), &kp.tp[i], false, q)?));
        }
        let mut w2 = vec![0i64; total];
        w2[j] = 2;
        rhs = trunc(rhs.mul(&expand_qpoch(w2, t, true, q)?));
    }
    for j in 0..nx {
        for k in 0..ny {
            let mut w = vec![0i64; total];
            w[j] = 1;
            w[nx + k] = 1;
            rhs = trunc(rhs.mul(&expand_qpoch(w.clone(), t, false, q)?));
            rhs = trunc(rhs.mul(&expand_qpoch(w, &Scalar::one(), true, q)?));
        }
    }
    let mut report = Report::new();
    for d in 0..=cap as usize {
        let rhs_deg = {
            let mut out = BcPoly::zero(total);
            for (e, c) in rhs.terms() {
                let xdeg: i64 = e[..nx].iter().sum();
                if xdeg == d as i64 {
                    out.add_term(e.clone(), c.clone());
                }
            }
            out
        };
        report.push(Check::new(
            "t0_generating_function",
            format!("x-degree={d} alphabets={nx}+{ny}"),
            &lhs_by_deg[d],
            &rhs_deg,
            lhs_by_deg[d] == rhs_deg,
        ));
    }
    Ok(report)
}

/// Dual generating function at `T = 0` (elementary kernel), verified over
/// finite ordinary alphabets graded by x-degree.
pub fn t0_dual_generating_function_check(
    cx: &Caches,
    nx: usize,
    ny: usize,
    cap: u32,
    kp: &KoornParams,
) -> Result<Report> {
    let engine = cx.engine(&kp.q, &kp.t);
    let engine_swap = cx.engine(&kp.t, &kp.q);
    let (q, t) = (&kp.q, &kp.t);
    let total = nx + ny;
    let mut lhs_by_deg: Vec<BcPoly> = (0..=cap).map(|_| BcPoly::zero(total)).collect();
    for lam in partitions::of_size_at_most(cap) {
        if lam.conjugate().len() > nx {
            continue;
        }
        let px = engine_swap
            .restrict_vars(&engine_swap.macdonald_p(&lam.conjugate())?, nx)?
            .embed(total, 0);
        let ky = engine
            .restrict_vars(&*t0_koorn(cx, &lam, kp)?, ny)?
            .embed(total, nx);
        lhs_by_deg[lam.size() as usize] = lhs_by_deg[lam.size() as usize].add(&px.mul(&ky));
    }
    // kernel: ∏_{j,k}(1 + x_j y_k) ∏_{j<k}(x_j x_k;t)/(q x_j x_k;t)
    //         ∏_j (x_j²;t) / ∏_i (tᵢ x_j;t)
    let trunc = |p: BcPoly| -> BcPoly {
        let mut out = BcPoly::zero(total);
        for (e, c) in p.terms() {
            let xdeg: i64 = e[..nx].iter().sum();
            if xdeg <= cap as i64 {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    };
    let expand_qpoch = |w_exps: Vec<i64>, a: &Scalar, invert: bool, base: &Scalar| -> Result<BcPoly> {
        let d: i64 = w_exps[..nx].iter().sum();
        let kmax = (cap as i64) / d.max(1);
        let mut acc = BcPoly::zero(total);
        for k in 0..=kmax {
            let coeff = if invert {
                a.pow(k)?.checked_div(&qpoch(base, base, k)?)?
            } else {
                let sign = if k % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                (&(&sign * &a.pow(k)?) * &base.pow(k * (k - 1) / 2)?)
                    .checked_div(&qpoch(base, base, k)?)?
            };
            let exps: Vec<i64> = w_exps.iter().map(|e| e * k).collect();
            acc.add_term(exps, coeff);
        }
        Ok(acc)
    };
    let mut rhs = BcPoly::constant(total, Scalar::one());
    for j in 0..nx {
        for k in 0..ny {
            let mut factor = BcPoly::one(total);
            let mut e = vec![0i64; total];
            e[j] = 1;
            e[nx + k] = 1;
            factor.add_term(e, Scalar::one());
            rhs = trunc(rhs.mul(&factor));
        }
    }
    for j in 0..nx {
        for k in (j + 1)..nx {
            let mut w = vec![0i64; total];
            w[j] = 1;
            w[k] = 1;
            rhs = trunc(rhs.mul(&expand_qpoch(w.clone(), &Scalar::one(), false, t)?));
            rhs = trunc(rhs.mul(&expand_qpoch(w, q, true, t)?));
        }
    }
    for j in 0..nx {
        let mut w2 = vec![0i64; total];
        w2[j] = 2;
        rhs = trunc(rhs.mul(&expand_qpoch(w2, &Scalar::one(), false, t)?));
        let mut w = vec![0i64; total];
        w[j] = 1;
        for i in 0..4 {
            // the involution flips the sign of each tᵢ in this kernel
            rhs = trunc(rhs.mul(&expand_qpoch(w.clone(), &-&kp.tp[i], true, t)?));
        }
    }
    let mut report = Report::new();
    for d in 0..=cap as usize {
        let rhs_deg = {
            let mut out = BcPoly::zero(total);
            for (e, c) in rhs.terms() {
                let xdeg: i64 = e[..nx].iter().sum();
                if xdeg == d as i64 {
                    out.add_term(e.clone(), c.clone());
                }
            }
            out
        };
        report.push(Check::new(
            "t0_dual_generating_function",
            format!("x-degree={d} alphabets={nx}+{ny}"),
            &lhs_by_deg[d],
            &rhs_deg,
            lhs_by_deg[d] == rhs_deg,
        ));
    }
    Ok(report)
}

/// The `T = 0` structure of the virtual Koornwinder family, checked through
/// the Cauchy identity: with
/// `K̂_{λ'}(y;t,q,0) = ∏_j [(∏ᵢ tᵢ y_j; t)/(y_j²; t)]
///  ∏_{j<k} [(q y_j y_k; t)/(y_j y_k; t)] P_{λ'}(y;t,q)`,
/// the alternating sum against `K̃_λ(x;q,t,0)` reproduces the Macdonald
/// Cauchy kernel, graded by y-degree.
pub fn t0_khat_structure_check(
    cx: &Caches,
    nx: usize,
    ny: usize,
    cap: u32,
    kp: &KoornParams,
) -> Result<Report> {
    let engine = cx.engine(&kp.q, &kp.t);
    let engine_swap = cx.engine(&kp.t, &kp.q);
    let (q, t) = (&kp.q, &kp.t);
    let total = nx + ny;
    // the common product over the y alphabet, truncated by y-degree
    let trunc = |p: BcPoly| -> BcPoly {
        let mut out = BcPoly::zero(total);
        for (e, c) in p.terms() {
            let ydeg: i64 = e[nx..].iter().sum();
            if ydeg <= cap as i64 {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    };
    let expand_qpoch = |w_exps: Vec<i64>, a: &Scalar, invert: bool, base: &Scalar| -> Result<BcPoly> {
        let d: i64 = w_exps[nx..].iter().sum();
        let kmax = (cap as i64) / d.max(1);
        let mut acc = BcPoly::zero(total);
        for k in 0..=kmax {
            let coeff = if invert {
                a.pow(k)?.checked_div(&qpoch(base, base, k)?)?
            } else {
                let sign = if k % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                (&(&sign * &a.pow(k)?) * &base.pow(k * (k - 1) / 2)?)
                    .checked_div(&qpoch(base, base, k)?)?
            };
            let exps: Vec<i64> = w_exps.iter().map(|e| e * k).collect();
            acc.add_term(exps, coeff);
        }
        Ok(acc)
    };
    let mut product = BcPoly::constant(total, Scalar::one());
    for j in 0..ny {
        let mut w = vec![0i64; total];
        w[nx + j] = 1;
        for i in 0..4 {
            product = trunc(product.mul(&expand_qpoch(w.clone(), &kp.tp[i], false, t)?));
        }
        let mut w2 = vec![0i64; total];
        w2[nx + j] = 2;
        product = trunc(product.mul(&expand_qpoch(w2, &Scalar::one(), true, t)?));
    }
    for j in 0..ny {
        for k in (j + 1)..ny {
            let mut w = vec![0i64; total];
            w[nx + j] = 1;
            w[nx + k] = 1;
            product = trunc(product.mul(&expand_qpoch(w.clone(), q, false, t)?));
            product = trunc(product.mul(&expand_qpoch(w, &Scalar::one(), true, t)?));
        }
    }
    // Σ_λ (-1)^{|λ|} K̃_λ(x;0) · product(y) · P_{λ'}(y;t,q) vs the
    // Macdonald pair Σ_λ (-1)^{|λ|} P_λ(x;q,t) P_{λ'}(y;t,q)
    let mut lhs = BcPoly::zero(total);
    let mut rhs = BcPoly::zero(total);
    for lam in partitions::of_size_at_most(cap) {
        let sign = if lam.size() % 2 == 0 {
            Scalar::one()
        } else {
            -Scalar::one()
        };
        let py = engine_swap
            .restrict_vars(&engine_swap.macdonald_p(&lam.conjugate())?, ny)?
            .embed(total, nx);
        let kx = engine
            .restrict_vars(&*t0_koorn(cx, &lam, kp)?, nx)?
            .embed(total, 0);
        lhs = lhs.add(&trunc(kx.mul(&product.mul(&py))).scale(&sign));
        let px = engine
            .restrict_vars(&engine.macdonald_p(&lam)?, nx)?
            .embed(total, 0);
        rhs = rhs.add(&px.mul(&py).scale(&sign));
    }
    let mut report = Report::new();
    for d in 0..=cap as usize {
        let take = |p: &BcPoly| -> BcPoly {
            let mut out = BcPoly::zero(total);
            for (e, c) in p.terms() {
                let ydeg: i64 = e[nx..].iter().sum();
                if ydeg == d as i64 {
                    out.add_term(e.clone(), c.clone());
                }
            }
            out
        };
        let l = take(&lhs);
        let r = take(&rhs);
        report.push(Check::new(
            "t0_khat_structure_cauchy",
            format!("y-degree={d} alphabets={nx}+{ny}"),
            &l,
            &r,
            l == r,
        ));
    }
    Ok(report)
}

/// The trivial virtual Koornwinder polynomial in one variable equals a
/// classical very-well-poised series, compared as a power series in the
/// variable up to the given order.
pub fn khat0_w8_7_check(
    cx: &Caches,
    cap_q: &Scalar,
    q_half: &Scalar,
    t_half: &Scalar,
    kp: &KoornParams,
    order: usize,
) -> Result<Report> {
    let engine = cx.engine(&kp.q, &kp.t);
    let (q, t) = (&kp.q, &kp.t);
    let cap = order as u32;
    // LHS: K̂₀ = Σ_μ (-1)^{|μ|} {μ;0}_{q,t,1/(Q t̂₀)} k⁰_{μ'}(t,q,Q) P̂*_μ(;q,t,Q;t₀),
    // restricted to one variable.
    let brace_s = Scalar::one().checked_div(&(cap_q * &kp.that0))?;
    let that0_swap = (&kp.that0 * q_half).checked_div(t_half)?;
    let kp_swap = KoornParams::new(t.clone(), q.clone(), kp.tp.clone(), that0_swap)?;
    let mut lhs_series = vec![Scalar::zero(); order + 1];
    for mu in partitions::of_size_at_most(cap) {
        let sign = if mu.size() % 2 == 0 {
            Scalar::one()
        } else {
            -Scalar::one()
        };
        let b = binom(cx, BinomKind::Brace, &mu, &Partition::empty(), &brace_s, q, t)?;
        if b.is_zero() {
            continue;
        }
        let norm = k0(&mu.conjugate(), cap_q, &kp_swap)?;
        let hat = virtual_interp(cx, &mu, cap_q, &kp.tp[0], q, t, cap)?;
        let one_var = engine.restrict_vars(&hat, 1)?;
        for (e, c) in one_var.terms() {
            let d = e[0] as usize;
            if d <= order {
                lhs_series[d] += &(&(&sign * &(&b * &norm)) * c);
            }
        }
    }
    let lhs = ScalarSeries { coeffs: lhs_series };
    // RHS: prefactor × ₈W₇ series in the variable
    let (t0, t1, t2, t3) = (&kp.tp[0], &kp.tp[1], &kp.tp[2], &kp.tp[3]);
    let t012 = &(t0 * t1) * t2;
    let mut pref = ScalarSeries::one(order);
    for (num_z, den_z) in [
        (
            q.checked_div(&(t0 * cap_q))?,
            q.checked_div(t0)?,
        ),
        (
            q.checked_div(&(t1 * cap_q))?,
            q.checked_div(t1)?,
        ),
        (
            q.checked_div(&(t2 * cap_q))?,
            q.checked_div(t2)?,
        ),
        (
            (q * q).checked_div(&(&t012 * cap_q))?,
            (q * q).checked_div(&(&t012 * &(cap_q * cap_q)))?,
        ),
    ] {
        pref = pref.mul(&ScalarSeries::qpoch_inf(&num_z, 1, q, order)?);
        pref = pref.mul(&ScalarSeries::qpoch_inf_inv(&den_z, 1, q, order)?);
    }
    // a = q y c_a with c_a = q/(t₀t₁t₂ Q²) (linear in the variable)
    let c_a = q.checked_div(&(&t012 * &(cap_q * cap_q)))?;
    let scalars = [
        q.checked_div(&(&(t0 * t1) * cap_q))?,
        q.checked_div(&(&(t0 * t2) * cap_q))?,
        q.checked_div(&(&(t1 * t2) * cap_q))?,
        cap_q.inv()?,
    ];
    let mut rhs = ScalarSeries::constant(Scalar::zero(), order);
    for k in 0..=order {
        let k_i = k as i64;
        // z^k = (q/t₃)^k y^k
        let mut term =
            ScalarSeries::constant(q.checked_div(t3)?.pow(k_i)?, order).shift(k);
        // (1 - a q^{2k})/(1 - a): numerator polynomial, denominator geometric
        let mut top = ScalarSeries::one(order);
        top.coeffs[1] = -(&c_a * &q.pow(2 * k_i)?);
        term = term.mul(&top).mul(&ScalarSeries::geometric(&c_a, order));
        // (a;q)_k / (q;q)_k
        for i in 0..k_i {
            let mut f = ScalarSeries::one(order);
            f.coeffs[1] = -(&c_a * &q.pow(i)?);
            term = term.mul(&f);
        }
        term = term.scale(&qpoch(q, q, k_i)?.inv()?);
        // scalar parameters: (b;q)_k / (aq/b;q)_k with aq/b linear in y
        for b in &scalars {
            term = term.scale(&qpoch(b, q, k_i)?);
            let cb = (&c_a * q).checked_div(b)?;
            for i in 0..k_i {
                term = term.mul(&ScalarSeries::geometric(&(&cb * &q.pow(i)?), order));
            }
        }
        // the variable-borne parameter b₄ = y t₃: (y t₃;q)_k polynomial,
        // (aq/b₄;q)_k scalar
        for i in 0..k_i {
            let mut f = ScalarSeries::one(order);
            f.coeffs[1] = -(t3 * &q.pow(i)?);
            term = term.mul(&f);
        }
        let ab4 = (&c_a * q).checked_div(t3)?;
        term = term.scale(&qpoch(&ab4, q, k_i)?.inv()?);
        for (i, c) in term.coeffs.iter().enumerate() {
            rhs.coeffs[i] += c;
        }
    }
    let rhs = rhs.mul(&pref);
    let mut report = Report::new();
    for d in 0..=order {
        report.push(Check::scalar_eq(
            "t0_khat0_w8_7_series",
            format!("y-order={d}"),
            &lhs.coeffs[d],
            &rhs.coeffs[d],
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

    fn setup() -> (Scalar, Scalar, Scalar, Scalar, KoornParams) {
        let q_half = sc(2, 3);
        let t_half = sc(3, 5);
        let kp = KoornParams::from_halves(
            &q_half,
            &t_half,
            &[sc(1, 2), sc(2, 5), sc(3, 4), sc(5, 3)],
        )
        .unwrap();
        (
            q_half.clone(),
            t_half.clone(),
            &q_half * &q_half,
            &t_half * &t_half,
            kp,
        )
    }

    #[test]
    fn lift_point_empty_partition() {
        // p₁ at the empty spectrum: s(1-T)/(1-t) + s⁻¹(1-T⁻¹)/(1-t⁻¹)
        let (_, _, q, t, _) = setup();
        let s = sc(5, 1);
        let cap_t = sc(2, 7);
        let got = lift_point(&Partition::empty(), 1, &cap_t, &s, &q, &t).unwrap();
        let a = (&s * &(Scalar::one() - &cap_t))
            .checked_div(&(Scalar::one() - &t))
            .unwrap();
        let b = (&s.inv().unwrap() * &(Scalar::one() - &cap_t.inv().unwrap()))
            .checked_div(&(Scalar::one() - &t.inv().unwrap()))
            .unwrap();
        assert_eq!(got, &a + &b);
    }

    #[test]
    fn restriction_and_vanishing() {
        let cx = Caches::new();
        let (_, _, q, t, _) = setup();
        let s = sc(5, 1);
        for n in 1..=2usize {
            for lam in partitions::of_size_at_most(3) {
                let r = lifted_restriction_check(&cx, n, &lam, &s, &q, &t).unwrap();
                assert!(r.all_pass(), "restriction {lam:?} n={n}");
            }
        }
        let cap_t = sc(2, 7);
        for lam in partitions::of_size_at_most(2) {
            let r = lifted_vanishing_check(&cx, &lam, 3, &cap_t, &s, &q, &t).unwrap();
            assert!(r.all_pass(), "vanishing {lam:?}");
        }
    }

    #[test]
    fn st_redundancy() {
        let cx = Caches::new();
        let (_, _, q, t, _) = setup();
        let s = sc(5, 1);
        for lam in [pt(&[1]), pt(&[2]), pt(&[2, 1])] {
            let r = st_redundancy_check(&cx, &lam, &sc(2, 7), &sc(3, 8), &s, &q, &t).unwrap();
            assert!(r.all_pass(), "(s,T) redundancy {lam:?}");
        }
    }

    #[test]
    fn duality_small() {
        let cx = Caches::new();
        let (q_half, t_half, _, _, _) = setup();
        let s = sc(5, 1);
        let cap_t = sc(2, 7);
        for mu in partitions::of_size_at_most(3) {
            let r = duality_check(&cx, &mu, &cap_t, &s, &q_half, &t_half).unwrap();
            assert!(r.all_pass(), "duality {mu:?}");
        }
    }

    #[test]
    fn connection_and_triangularity() {
        let cx = Caches::new();
        let (_, _, q, t, _) = setup();
        let cap_t = sc(2, 7);
        for lam in [pt(&[2]), pt(&[2, 1])] {
            let r = lifted_connection_check(&cx, &lam, &cap_t, &sc(5, 1), &sc(3, 8), &q, &t)
                .unwrap();
            assert!(r.all_pass(), "connection {lam:?}");
            let r = lifted_triangularity_check(&cx, &lam, &cap_t, &sc(5, 1), &q, &t).unwrap();
            assert!(r.all_pass(), "triangularity {lam:?}");
        }
    }

    #[test]
    fn column_formula() {
        let cx = Caches::new();
        let (_, _, q, t, _) = setup();
        for n in 1..=3usize {
            let r = column_formula_check(&cx, n, &sc(2, 7), &sc(5, 1), &q, &t).unwrap();
            assert!(r.all_pass(), "column formula n={n}");
        }
    }

    #[test]
    fn bulk_branch_lifted() {
        let cx = Caches::new();
        let (_, _, q, t, _) = setup();
        for lam in [pt(&[1]), pt(&[2, 1])] {
            let r = lifted_bulk_branch_check(
                &cx,
                &lam,
                &sc(3, 4),
                &sc(5, 6),
                &sc(2, 7),
                &sc(5, 1),
                &q,
                &t,
            )
            .unwrap();
            assert!(r.all_pass(), "lifted bulk branching {lam:?}");
        }
    }

    #[test]
    fn virtual_boxed_consistency() {
        let cx = Caches::new();
        let (_, _, q, t, _) = setup();
        let s = sc(5, 1);
        for (m, n) in [(1u32, 1usize), (2, 1), (1, 2)] {
            for lam in partitions::in_box(m, n) {
                let r = virtual_consistency_check(&cx, m, n, &lam, &s, &q, &t).unwrap();
                assert!(r.all_pass(), "virtual consistency {lam:?} box {m}^{n}");
            }
        }
    }

    #[test]
    fn virtual_leading_term_is_macdonald() {
        let cx = Caches::new();
        let (_, _, q, t, _) = setup();
        for mu in partitions::of_size_at_most(2) {
            let hat = virtual_interp(&cx, &mu, &sc(3, 8), &sc(5, 1), &q, &t, mu.size() + 2)
                .unwrap();
            assert_eq!(hat.coeff(&mu), Scalar::one(), "leading term for {mu:?}");
            for lam in hat.coeffs.keys() {
                assert!(lam.contains(&mu), "support {lam:?} above {mu:?}");
            }
        }
    }

    #[test]
    fn lifted_cauchy_degree_3() {
        let cx = Caches::new();
        let (q_half, t_half, _, _, _) = setup();
        let r = lifted_cauchy_check(&cx, &sc(2, 7), &sc(5, 1), &q_half, &t_half, 3).unwrap();
        assert!(r.all_pass());
    }

    #[test]
    fn constant_evaluation() {
        let cx = Caches::new();
        let (_, t_half, q, _, _) = setup();
        for lam in partitions::of_size_at_most(3) {
            let r = constant_evaluation_check(
                &cx,
                &lam,
                &sc(3, 2),
                &sc(5, 7),
                &sc(2, 9),
                &t_half,
                &q,
            )
            .unwrap();
            assert!(r.all_pass(), "constant evaluation {lam:?}");
        }
    }

    #[test]
    fn lifted_koorn_restriction_and_orthogonality() {
        let cx = Caches::new();
        let (_, _, _, _, kp) = setup();
        for n in 1..=2usize {
            for lam in partitions::of_size_at_most(2) {
                let r = lifted_koorn_restriction_check(&cx, n, &lam, &kp).unwrap();
                assert!(r.all_pass(), "lifted restriction {lam:?} n={n}");
            }
        }
        let cap_t = sc(2, 7);
        for lam in partitions::of_size_at_most(2) {
            for mu in partitions::of_size_at_most(2) {
                let r = lifted_orthogonality_check(&cx, &lam, &mu, &cap_t, &kp).unwrap();
                assert!(r.all_pass(), "lifted orthogonality {lam:?}/{mu:?}");
            }
        }
    }

    #[test]
    fn gaussian_equals_virtual_t0() {
        let cx = Caches::new();
        let (_, _, _, _, kp) = setup();
        for lam in partitions::of_size_at_most(3) {
            let r = ik_equals_ig(&cx, &lam, &kp).unwrap();
            assert!(r.all_pass(), "Gaussian vs virtual for p_{lam:?}");
        }
    }

    #[test]
    fn t0_orthogonality_small() {
        let cx = Caches::new();
        let (_, _, _, _, kp) = setup();
        for lam in partitions::of_size_at_most(2) {
            for mu in partitions::of_size_at_most(2) {
                let r = t0_orthogonality_check(&cx, &lam, &mu, &kp).unwrap();
                assert!(r.all_pass(), "t0 orthogonality {lam:?}/{mu:?}");
            }
        }
    }

    #[test]
    fn t0_branching_two_alphabets() {
        let cx = Caches::new();
        let (_, _, _, _, kp) = setup();
        for lam in [pt(&[2, 1]), pt(&[2])] {
            let r = t0_branching_check(&cx, &lam, 2, 2, &kp).unwrap();
            assert!(r.all_pass(), "t0 branching {lam:?}");
        }
    }

    #[test]
    fn t0_plethystic_symmetry() {
        let cx = Caches::new();
        let (q_half, t_half, _, _, kp) = setup();
        let kp2 = KoornParams::from_halves(
            &q_half,
            &t_half,
            &[sc(1, 2), sc(3, 7), sc(4, 9), sc(6, 5)],
        )
        .unwrap();
        for lam in [pt(&[1]), pt(&[2, 1])] {
            let r = t0_plethystic_symmetry_check(&cx, &lam, &kp, &kp2).unwrap();
            assert!(r.all_pass(), "t0 plethystic symmetry {lam:?}");
        }
    }

    #[test]
    fn t0_pieri_series() {
        let cx = Caches::new();
        let (_, _, _, _, kp) = setup();
        for lam in [pt(&[1]), pt(&[1, 1])] {
            let r = t0_g_pieri_check(&cx, &lam, 2, &kp).unwrap();
            assert!(r.all_pass(), "t0 g-Pieri {lam:?}");
            let r = t0_e_pieri_check(&cx, &lam, 2, &kp).unwrap();
            assert!(r.all_pass(), "t0 e-Pieri {lam:?}");
        }
    }

    #[test]
    fn t0_generating_functions() {
        let cx = Caches::new();
        let (_, _, _, _, kp) = setup();
        let r = t0_generating_function_check(&cx, 2, 2, 3, &kp).unwrap();
        assert!(r.all_pass(), "t0 generating function");
        let r = t0_dual_generating_function_check(&cx, 2, 2, 3, &kp).unwrap();
        assert!(r.all_pass(), "t0 dual generating function");
        let r = t0_khat_structure_check(&cx, 2, 2, 3, &kp).unwrap();
        assert!(r.all_pass(), "t0 virtual structure");
    }

    #[test]
    fn khat0_univariate_series() {
        let cx = Caches::new();
        let (q_half, t_half, _, _, kp) = setup();
        let r = khat0_w8_7_check(&cx, &sc(3, 8), &q_half, &t_half, &kp, 3).unwrap();
        assert!(r.all_pass());
    }
}
