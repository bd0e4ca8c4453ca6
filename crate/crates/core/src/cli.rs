//! Batch verification harness and report plumbing behind the command-line
//! front end.
//!
//! Every suite builds a deterministic job list from `(seed, item index)`;
//! jobs run in parallel and their reports are collected in job order, so a
//! fixed `(config, seed)` produces a byte-identical report body.

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interpolation::{self, Caches};
use crate::koornwinder::{self, KoornParams, QRacahGrid};
use crate::lifting;
use crate::partitions::{self, Partition};
use crate::report::{spec_map, Check, Report};
use crate::scalar::{Params, Scalar, SpecSampler};
use crate::{cnorm, hyperg, vanishing};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Size caps and sampling controls for one suite run.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub max_size: u32,
    pub max_n: usize,
    pub series_order: usize,
    pub spec_count: u64,
    pub seed: u64,
    /// Open-conjecture failures also fail the run.
    #[serde(default)]
    pub strict: bool,
    #[serde(default)]
    pub threads: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_size: 4,
            max_n: 3,
            series_order: 3,
            spec_count: 1,
            seed: 1,
            strict: false,
            threads: None,
        }
    }
}

/// Top-level report file: a header with run metadata and the ordered items.
#[derive(Serialize, Deserialize)]
pub struct ReportFile {
    pub header: ReportHeader,
    pub items: Vec<Check>,
}

#[derive(Serialize, Deserialize)]
pub struct ReportHeader {
    pub version: String,
    pub suite: String,
    pub seed: u64,
    pub timestamp: String,
    pub elapsed_ms: u128,
}

type Job = Box<dyn Fn(&Caches) -> Result<Report> + Send + Sync>;

struct JobList {
    jobs: Vec<(String, Job)>,
}

impl JobList {
    fn new() -> Self {
        JobList { jobs: Vec::new() }
    }

    fn push(&mut self, name: impl Into<String>, job: impl Fn(&Caches) -> Result<Report> + Send + Sync + 'static) {
        self.jobs.push((name.into(), Box::new(job)));
    }

    fn run(self, cx: &Caches, threads: Option<usize>) -> Report {
        let execute = |(name, job): &(String, Job)| -> Report {
            match job(cx) {
                Ok(report) => report,
                Err(err) => {
                    let mut report = Report::new();
                    report.push(Check::new(
                        name.clone(),
                        "job",
                        &format!("error: {err}"),
                        &"ok",
                        false,
                    ));
                    report
                }
            }
        };
        let reports: Vec<Report> = if let Some(k) = threads {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(k)
                .build()
                .expect("thread pool");
            pool.install(|| self.jobs.par_iter().map(execute).collect())
        } else {
            self.jobs.par_iter().map(execute).collect()
        };
        let mut out = Report::new();
        for r in reports {
            out.extend(r);
        }
        out
    }
}

/// Draws a parameter context for job `index`, retrying deterministically on
/// degenerate draws via the closure's error.
fn with_params<R>(
    seed: u64,
    index: u64,
    bounds: (u32, u32),
    free: &[&str],
    mut body: impl FnMut(&Params) -> Result<R>,
) -> Result<R> {
    let mut attempt = 0u64;
    loop {
        let mut sampler = SpecSampler::new(seed ^ (0xabcd_1234u64.wrapping_add(attempt)));
        for _ in 0..index {
            let _ = sampler.draw_params(bounds.0, bounds.1, free);
        }
        let params = sampler.draw_params(bounds.0, bounds.1, free);
        match body(&params) {
            Ok(r) => return Ok(r),
            Err(Error::DegenerateParameters(_)) | Err(Error::DivisionByZero(_))
                if attempt < 16 =>
            {
                attempt += 1;
            }
            Err(e) => return Err(e),
        }
    }
}

fn annotate(report: Report, params: &Params) -> Report {
    let spec = spec_map(&[
        ("q_half", params.q_half()),
        ("t_half", params.t_half()),
        ("s", params.s()),
        ("T", params.cap_t()),
        ("r0", params.r(0)),
        ("r1", params.r(1)),
        ("r2", params.r(2)),
        ("r3", params.r(3)),
    ]);
    let mut out = Report::new();
    for item in report.items {
        let mut item = item;
        let mut merged = spec.clone();
        for (k, v) in params.free_params() {
            merged.insert(k.clone(), v.to_string());
        }
        item.specialization = merged;
        out.push(item);
    }
    out
}

/// The product-function and skew-specialization suite.
pub fn suite_cnorm(cfg: &SuiteConfig) -> JobListHandle {
    let mut jobs = JobList::new();
    let shapes: Vec<Partition> = partitions::of_size_at_most(cfg.max_size);
    for spec_idx in 0..cfg.spec_count {
        let seed = cfg.seed;
        for lam in &shapes {
            let l = lam.clone();
            jobs.push(format!("c_lemmas({l})"), move |_cx| {
                with_params(seed, spec_idx, (8, 8), &["x"], |p| {
                    let report =
                        cnorm::verify_c_lemmas(&l, p.free("x").unwrap(), p.q(), p.t())?;
                    Ok(annotate(report, p))
                })
            });
            for kappa in partitions::between(&Partition::empty(), lam) {
                let lam = lam.clone();
                jobs.push(format!("skew_lemmas({lam}/{kappa})"), move |cx| {
                    with_params(seed, spec_idx, (8, 8), &["u"], |p| {
                        let engine = cx.engine(p.q(), p.t());
                        let engine_inv =
                            cx.engine(&p.q().inv()?, &p.t().inv()?);
                        let engine_conj = cx.engine(p.t(), p.q());
                        let report = cnorm::verify_skew_lemma(
                            &engine,
                            &engine_inv,
                            &engine_conj,
                            &lam,
                            &kappa,
                            2,
                            2,
                            p.free("u").unwrap(),
                        )?;
                        Ok(annotate(report, p))
                    })
                });
            }
        }
    }
    JobListHandle(jobs)
}

/// Interpolation-polynomial core: extra vanishing, symmetry, reductions.
pub fn suite_interp_core(cfg: &SuiteConfig) -> JobListHandle {
    let mut jobs = JobList::new();
    let seed = cfg.seed;
    for spec_idx in 0..cfg.spec_count {
        for n in 1..=cfg.max_n {
            for lam in partitions::of_size_at_most_with_len(cfg.max_size, n) {
                let cap = cfg.max_size + 1;
                let lam2 = lam.clone();
                jobs.push(format!("extra_vanishing(n={n},{lam})"), move |cx| {
                    with_params(seed, spec_idx, (10, 10), &[], |p| {
                        let r = interpolation::extra_vanishing(
                            cx, n, &lam2, cap, p.s(), p.q(), p.t(),
                        )?;
                        Ok(annotate(r, p))
                    })
                });
                let lam2 = lam.clone();
                jobs.push(format!("symmetry(n={n},{lam})"), move |cx| {
                    with_params(seed, spec_idx, (10, 10), &[], |p| {
                        let r = interpolation::symmetry_checks(
                            cx, n, &lam2, p.s(), p.q(), p.t(),
                        )?;
                        Ok(annotate(r, p))
                    })
                });
                let lam2 = lam.clone();
                jobs.push(format!("reduction(n={n},{lam})"), move |cx| {
                    with_params(seed, spec_idx, (10, 10), &[], |p| {
                        let mut r = Report::new();
                        for m in 1..=2usize {
                            r.extend(interpolation::reduction_checks(
                                cx, n, m, &lam2, p.s(), p.q(), p.t(),
                            )?);
                        }
                        Ok(annotate(r, p))
                    })
                });
                let lam2 = lam.clone();
                jobs.push(format!("leading_term(n={n},{lam})"), move |cx| {
                    with_params(seed, spec_idx, (10, 10), &[], |p| {
                        let r = interpolation::leading_term_check(
                            cx, n, &lam2, p.s(), p.q(), p.t(),
                        )?;
                        Ok(annotate(r, p))
                    })
                });
            }
        }
    }
    JobListHandle(jobs)
}

/// Interpolation identity suite: difference equations, branching, Pieri,
/// connection coefficients, Cauchy.
pub fn suite_interp_identities(cfg: &SuiteConfig) -> JobListHandle {
    let mut jobs = JobList::new();
    let seed = cfg.seed;
    let order = cfg.series_order;
    for spec_idx in 0..cfg.spec_count {
        for n in 1..=cfg.max_n {
            for lam in partitions::of_size_at_most_with_len(cfg.max_size, n + 2) {
                if lam.len() <= n {
                    let lam2 = lam.clone();
                    jobs.push(format!("difference(n={n},{lam})"), move |cx| {
                        with_params(seed, spec_idx, (10, 10), &["u1", "u2", "u3"], |p| {
                            let mut r = Report::new();
                            for name in ["u1", "u2", "u3"] {
                                r.extend(interpolation::difference_equation(
                                    cx,
                                    n,
                                    &lam2,
                                    p.free(name).unwrap(),
                                    p.s(),
                                    p.q_half(),
                                    p.t(),
                                )?);
                            }
                            r.extend(interpolation::special_difference(
                                cx,
                                n,
                                &lam2,
                                p.s(),
                                p.q_half(),
                                p.t(),
                            )?);
                            Ok(annotate(r, p))
                        })
                    });
                    let lam2 = lam.clone();
                    jobs.push(format!("connection(n={n},{lam})"), move |cx| {
                        with_params(seed, spec_idx, (10, 10), &["s2"], |p| {
                            let r = interpolation::connection(
                                cx,
                                n,
                                &lam2,
                                p.s(),
                                p.free("s2").unwrap(),
                                p.q(),
                                p.t(),
                            )?;
                            Ok(annotate(r, p))
                        })
                    });
                    let lam2 = lam.clone();
                    jobs.push(format!("geometric_eval(n={n},{lam})"), move |cx| {
                        with_params(seed, spec_idx, (10, 10), &["x"], |p| {
                            let r = interpolation::eval_at_geometric(
                                cx,
                                n,
                                &lam2,
                                p.free("x").unwrap(),
                                p.s(),
                                p.q(),
                                p.t(),
                            )?;
                            Ok(annotate(r, p))
                        })
                    });
                }
                // branching lowers the variable count
                if lam.len() <= n + 1 {
                    let lam2 = lam.clone();
                    jobs.push(format!("branch(n={n},{lam})"), move |cx| {
                        with_params(seed, spec_idx, (10, 10), &["v"], |p| {
                            let r = interpolation::branch(
                                cx,
                                n,
                                &lam2,
                                p.free("v").unwrap(),
                                p.s(),
                                p.q(),
                                p.t(),
                            )?;
                            Ok(annotate(r, p))
                        })
                    });
                }
                for m in 1..=2usize {
                    if lam.len() <= n + m {
                        let lam2 = lam.clone();
                        jobs.push(format!("bulk_branch(n={n},m={m},{lam})"), move |cx| {
                            with_params(seed, spec_idx, (10, 10), &["v"], |p| {
                                let r = interpolation::bulk_branch(
                                    cx,
                                    n,
                                    m,
                                    &lam2,
                                    p.free("v").unwrap(),
                                    p.s(),
                                    p.q(),
                                    p.t(),
                                )?;
                                Ok(annotate(r, p))
                            })
                        });
                    }
                }
            }
            for mu in partitions::of_size_at_most_with_len(cfg.max_size, n) {
                let mu2 = mu.clone();
                jobs.push(format!("e_pieri(n={n},{mu})"), move |cx| {
                    with_params(seed, spec_idx, (10, 10), &["v"], |p| {
                        let r = interpolation::e_pieri(
                            cx,
                            n,
                            &mu2,
                            p.free("v").unwrap(),
                            p.s(),
                            p.q(),
                            p.t(),
                        )?;
                        Ok(annotate(r, p))
                    })
                });
                for m in 1..=2u32 {
                    let mu2 = mu.clone();
                    jobs.push(format!("bulk_pieri(n={n},m={m},{mu})"), move |cx| {
                        with_params(seed, spec_idx, (12, 12), &["v"], |p| {
                            let r = interpolation::bulk_pieri(
                                cx,
                                n,
                                &mu2,
                                m,
                                p.free("v").unwrap(),
                                p.s(),
                                p.q(),
                                p.t(),
                            )?;
                            Ok(annotate(r, p))
                        })
                    });
                }
                let mu2 = mu.clone();
                jobs.push(format!("g_pieri(n={n},{mu})"), move |cx| {
                    with_params(seed, spec_idx, (10, 10), &[], |p| {
                        let r = interpolation::g_pieri_truncated(
                            cx, n, &mu2, p.s(), p.q(), p.t(), order,
                        )?;
                        Ok(annotate(r, p))
                    })
                });
            }
        }
        for n in 1..=2usize {
            for m in 1..=2usize {
                jobs.push(format!("cauchy(n={n},m={m})"), move |cx| {
                    with_params(seed, spec_idx, (10, 10), &[], |p| {
                        let r = interpolation::cauchy(cx, n, m, p.s(), p.q(), p.t())?;
                        Ok(annotate(r, p))
                    })
                });
            }
        }
    }
    JobListHandle(jobs)
}

/// Hypergeometric transformation suite over binomial coefficients.
pub fn suite_hyperg(cfg: &SuiteConfig) -> JobListHandle {
    let mut jobs = JobList::new();
    let seed = cfg.seed;
    for spec_idx in 0..cfg.spec_count {
        for lam in partitions::of_size_at_most(cfg.max_size) {
            for kappa in partitions::between(&Partition::empty(), &lam) {
                let (l, k) = (lam.clone(), kappa.clone());
                jobs.push(format!("hyperg({l}/{k})"), move |cx| {
                    with_params(seed, spec_idx, (12, 12), &["b", "c", "d", "e", "u"], |p| {
                        let (q, t) = (p.q(), p.t());
                        let a_half = p.s();
                        let b = p.free("b").unwrap();
                        let c = p.free("c").unwrap();
                        let d = p.free("d").unwrap();
                        let e = p.free("e").unwrap();
                        let u = p.free("u").unwrap();
                        let a = a_half * a_half;
                        let mut r = Report::new();
                        r.extend(hyperg::qsaal(cx, &l, &k, a_half, b, c, q, t)?);
                        r.extend(hyperg::qsaal_reversed(cx, &l, &k, a_half, b, c, q, t)?);
                        r.extend(hyperg::duality(cx, &l, &k, a_half, p.q_half(), p.t_half())?);
                        r.extend(hyperg::inversion(cx, &l, &k, a_half, q, t)?);
                        r.extend(hyperg::w6_5(cx, &l, &k, a_half, b, c, q, t)?);
                        r.extend(hyperg::watson(cx, &l, &k, a_half, b, c, d, e, q, t)?);
                        r.extend(hyperg::sears(cx, &l, &k, &a, b, c, d, e, q, t)?);
                        r.extend(hyperg::weak_qsaal(cx, &l, &k, b, c, d, q, t)?);
                        r.extend(hyperg::second_sears_consequence(
                            cx, &l, &k, &a, b, c, d, e, q, t,
                        )?);
                        r.extend(hyperg::bc_difference(cx, &l, &k, u, a_half, p.q_half(), t)?);
                        r.extend(hyperg::bc_integral(cx, &l, &k, u, a_half, q, p.t_half())?);
                        Ok(annotate(r, p))
                    })
                });
            }
            let l = lam.clone();
            jobs.push(format!("box_transforms({l})"), move |cx| {
                with_params(seed, spec_idx, (12, 12), &[], |p| {
                    let mut r = Report::new();
                    for mu in partitions::between(&Partition::empty(), &l) {
                        if l.part(1) <= 2 && l.len() <= 3 {
                            r.extend(hyperg::box_transforms(
                                cx, &l, &mu, 2, 3, p.s(), p.q(), p.t(),
                            )?);
                        }
                    }
                    Ok(annotate(r, p))
                })
            });
        }
        jobs.push("jackson".to_string(), move |_cx| {
            with_params(seed, spec_idx, (10, 10), &["a", "b", "c", "d"], |p| {
                let mut r = Report::new();
                for (m, n) in [(1, 1), (2, 1), (1, 2), (2, 2)] {
                    r.extend(hyperg::jackson(
                        m,
                        n,
                        p.free("a").unwrap(),
                        p.free("b").unwrap(),
                        p.free("c").unwrap(),
                        p.free("d").unwrap(),
                        p.q(),
                        p.t(),
                    )?);
                }
                Ok(annotate(r, p))
            })
        });
    }
    JobListHandle(jobs)
}

/// Koornwinder suite: construction, evaluation symmetry, orthogonality,
/// connection rules, Cauchy, integral representation.
pub fn suite_koorn(cfg: &SuiteConfig) -> JobListHandle {
    let mut jobs = JobList::new();
    let seed = cfg.seed;
    let order = cfg.series_order;
    let small = cfg.max_size.min(3);
    for spec_idx in 0..cfg.spec_count {
        // evaluation symmetry and parameter symmetry
        for lam in partitions::of_size_at_most_with_len(small, 2) {
            for mu in partitions::of_size_at_most_with_len(small, 2) {
                let (l, m) = (lam.clone(), mu.clone());
                jobs.push(format!("eval_symmetry({l},{m})"), move |cx| {
                    with_params(seed, spec_idx, (12, 12), &[], |p| {
                        let kp = KoornParams::from_params(p)?;
                        let r = koornwinder::evaluation_symmetry(cx, 2, &l, &m, &kp)?;
                        Ok(annotate(r, p))
                    })
                });
            }
            let l = lam.clone();
            jobs.push(format!("symmetries({l})"), move |cx| {
                with_params(seed, spec_idx, (12, 12), &[], |p| {
                    let kp = KoornParams::from_params(p)?;
                    let n = l.len().max(1).min(2);
                    let r = koornwinder::trivial_symmetries(cx, n, &l, &kp)?;
                    Ok(annotate(r, p))
                })
            });
        }
        // q-Racah orthogonality on the 2×2 grid and agreement with the
        // virtual integral
        jobs.push("qracah_orthogonality".to_string(), move |cx| {
            with_params(seed, spec_idx, (12, 12), &[], |p| {
                let (n, m) = (2usize, 2u32);
                let kp = KoornParams::from_params(p)?;
                let grid = QRacahGrid::new(n, m, p.q(), p.t(), &kp.tp[0], &kp.tp[2], &kp.that0)?;
                let norm = grid.expect(&crate::bcpoly::BcPoly::one(n))?;
                if norm.is_zero() {
                    return Err(Error::DegenerateParameters("zero grid norm".into()));
                }
                let tn = p.t().pow(n as i64)?;
                let swapped = grid.kp.permuted([1, 0, 2, 3]);
                let mut r = Report::new();
                for lam in partitions::in_box(m, n) {
                    for mu in partitions::in_box(m, n) {
                        let a = koornwinder::koorn_poly(cx, n, &lam, &grid.kp)?;
                        let b = koornwinder::koorn_poly(cx, n, &mu, &swapped)?;
                        let inner = grid.expect(&a.mul(&b))?.checked_div(&norm)?;
                        let expect = if lam == mu {
                            koornwinder::n_norm(&lam, &tn, &grid.kp)?
                        } else {
                            Scalar::zero()
                        };
                        r.push(Check::scalar_eq(
                            "koorn_qracah_orthogonality",
                            format!("lambda=({lam}) mu=({mu})"),
                            &inner,
                            &expect,
                        ));
                    }
                }
                // virtual integral agrees with the normalized grid sum
                for lam in partitions::of_size_at_most_with_len(3, n) {
                    let f = crate::bcpoly::BcPoly::orbit_sum(&lam, n)?;
                    let a = koornwinder::virtual_integral(cx, n, &f, &grid.kp)?;
                    let b = grid.expect(&f)?.checked_div(&norm)?;
                    r.push(Check::scalar_eq(
                        "koorn_virtual_matches_qracah",
                        format!("m_({lam})"),
                        &a,
                        &b,
                    ));
                }
                Ok(annotate(r, p))
            })
        });
        // virtual-integral orthogonality and the Kadell-type closed form
        for lam in partitions::of_size_at_most(cfg.max_size) {
            if lam.len() > 2 {
                continue;
            }
            let l = lam.clone();
            jobs.push(format!("kadell({l})"), move |cx| {
                with_params(seed, spec_idx, (12, 12), &[], |p| {
                    let kp = KoornParams::from_params(p)?;
                    let r = koornwinder::kadell_integral(cx, 2, &l, &kp)?;
                    Ok(annotate(r, p))
                })
            });
        }
        for lam in partitions::of_size_at_most_with_len(small, 2) {
            let l = lam.clone();
            jobs.push(format!("koorn_identities({l})"), move |cx| {
                with_params(seed, spec_idx, (12, 12), &[], |p| {
                    let kp = KoornParams::from_params(p)?;
                    let mut r = Report::new();
                    r.extend(koornwinder::inverse_binomial(cx, 2, &l, &kp)?);
                    r.extend(koornwinder::diff_action(cx, 2, &l, p.q_half(), &kp)?);
                    r.extend(koornwinder::special_connection(cx, 2, &l, p.q_half(), &kp)?);
                    r.extend(koornwinder::special_connection_t(cx, 2, &l, p.t_half(), &kp)?);
                    r.extend(koornwinder::quasi_branching(cx, 1, &l, p.t_half(), &kp)?);
                    Ok(annotate(r, p))
                })
            });
            let l = lam.clone();
            jobs.push(format!("koorn_connection({l})"), move |cx| {
                with_params(seed, spec_idx, (12, 12), &["r1p", "r2p", "r3p"], |p| {
                    let kp = KoornParams::from_params(p)?;
                    let kp_primed = KoornParams::from_halves(
                        p.q_half(),
                        p.t_half(),
                        &[
                            p.r(0).clone(),
                            p.free("r1p").unwrap().clone(),
                            p.free("r2p").unwrap().clone(),
                            p.free("r3p").unwrap().clone(),
                        ],
                    )?;
                    let mut r = Report::new();
                    for kappa in partitions::between(&Partition::empty(), &l) {
                        r.extend(koornwinder::connection(cx, 2, &l, &kappa, &kp, &kp_primed)?);
                    }
                    Ok(annotate(r, p))
                })
            });
        }
        for (n, m) in [(1usize, 1usize), (1, 2), (2, 1), (2, 2)] {
            jobs.push(format!("koorn_cauchy({n},{m})"), move |cx| {
                with_params(seed, spec_idx, (12, 12), &[], |p| {
                    let kp = KoornParams::from_params(p)?;
                    let r =
                        koornwinder::cauchy_koorn(cx, n, m, p.q_half(), p.t_half(), &kp)?;
                    Ok(annotate(r, p))
                })
            });
        }
        for (n, m) in [(1usize, 1u32), (1, 2), (2, 1), (2, 2)] {
            jobs.push(format!("w8_7_integral({n},{m})"), move |cx| {
                with_params(seed, spec_idx, (12, 12), &["u"], |p| {
                    let kp = KoornParams::from_params(p)?;
                    let r = koornwinder::w8_7_integral(cx, n, m, p.free("u").unwrap(), &kp)?;
                    Ok(annotate(r, p))
                })
            });
        }
        jobs.push("integral_mn_symmetry".to_string(), move |cx| {
            with_params(seed, spec_idx, (12, 12), &[], |p| {
                let kp = KoornParams::from_params(p)?;
                let r = koornwinder::mn_symmetry_series(cx, 2, 1, order, p.t_half(), &kp)?;
                Ok(annotate(r, p))
            })
        });
    }
    JobListHandle(jobs)
}

/// Lifted-family suite at generic T.
pub fn suite_lifting_generic(cfg: &SuiteConfig) -> JobListHandle {
    let mut jobs = JobList::new();
    let seed = cfg.seed;
    for spec_idx in 0..cfg.spec_count {
        for lam in partitions::of_size_at_most(cfg.max_size) {
            let l = lam.clone();
            jobs.push(format!("lifted_interp({l})"), move |cx| {
                with_params(seed, spec_idx, (12, 12), &["s2", "T2"], |p| {
                    let mut r = Report::new();
                    for n in 1..=2usize {
                        r.extend(lifting::lifted_restriction_check(
                            cx, n, &l, p.s(), p.q(), p.t(),
                        )?);
                    }
                    r.extend(lifting::duality_check(
                        cx,
                        &l,
                        p.cap_t(),
                        p.s(),
                        p.q_half(),
                        p.t_half(),
                    )?);
                    r.extend(lifting::lifted_triangularity_check(
                        cx,
                        &l,
                        p.cap_t(),
                        p.s(),
                        p.q(),
                        p.t(),
                    )?);
                    r.extend(lifting::lifted_connection_check(
                        cx,
                        &l,
                        p.cap_t(),
                        p.s(),
                        p.free("s2").unwrap(),
                        p.q(),
                        p.t(),
                    )?);
                    r.extend(lifting::st_redundancy_check(
                        cx,
                        &l,
                        p.cap_t(),
                        p.free("T2").unwrap(),
                        p.s(),
                        p.q(),
                        p.t(),
                    )?);
                    Ok(annotate(r, p))
                })
            });
        }
        for n in 1..=4usize {
            jobs.push(format!("column_formula({n})"), move |cx| {
                with_params(seed, spec_idx, (12, 12), &[], |p| {
                    let r = lifting::column_formula_check(cx, n, p.cap_t(), p.s(), p.q(), p.t())?;
                    Ok(annotate(r, p))
                })
            });
        }
        jobs.push("lifted_cauchy".to_string(), move |cx| {
            with_params(seed, spec_idx, (12, 12), &[], |p| {
                let r = lifting::lifted_cauchy_check(
                    cx,
                    p.cap_t(),
                    p.s(),
                    p.q_half(),
                    p.t_half(),
                    4,
                )?;
                Ok(annotate(r, p))
            })
        });
        for lam in partitions::of_size_at_most(2) {
            let l = lam.clone();
            jobs.push(format!("lifted_koorn({l})"), move |cx| {
                with_params(seed, spec_idx, (12, 12), &[], |p| {
                    let kp = KoornParams::from_params(p)?;
                    let mut r = Report::new();
                    for n in 1..=2usize {
                        r.extend(lifting::lifted_koorn_restriction_check(cx, n, &l, &kp)?);
                    }
                    for mu in partitions::of_size_at_most(2) {
                        r.extend(lifting::lifted_orthogonality_check(
                            cx,
                            &l,
                            &mu,
                            p.cap_t(),
                            &kp,
                        )?);
                    }
                    Ok(annotate(r, p))
                })
            });
        }
    }
    JobListHandle(jobs)
}

/// T = 0 suite: Gaussian agreement, generating functions, branching,
/// Pieri rules, plethystic symmetry.
pub fn suite_lifting_t0(cfg: &SuiteConfig) -> JobListHandle {
    let mut jobs = JobList::new();
    let seed = cfg.seed;
    for spec_idx in 0..cfg.spec_count {
        for lam in partitions::of_size_at_most(cfg.max_size) {
            let l = lam.clone();
            jobs.push(format!("gaussian_vs_virtual(p_{l})"), move |cx| {
                with_params(seed, spec_idx, (12, 12), &[], |p| {
                    let kp = KoornParams::from_params(p)?;
                    let r = lifting::ik_equals_ig(cx, &l, &kp)?;
                    Ok(annotate(r, p))
                })
            });
        }
        for lam in partitions::of_size_at_most(2) {
            for mu in partitions::of_size_at_most(2) {
                let (l, m) = (lam.clone(), mu.clone());
                jobs.push(format!("t0_orthogonality({l},{m})"), move |cx| {
                    with_params(seed, spec_idx, (12, 12), &[], |p| {
                        let kp = KoornParams::from_params(p)?;
                        let r = lifting::t0_orthogonality_check(cx, &l, &m, &kp)?;
                        Ok(annotate(r, p))
                    })
                });
            }
        }
        jobs.push("t0_generating_functions".to_string(), move |cx| {
            with_params(seed, spec_idx, (12, 12), &[], |p| {
                let kp = KoornParams::from_params(p)?;
                let mut r = Report::new();
                r.extend(lifting::t0_generating_function_check(cx, 2, 2, 4, &kp)?);
                r.extend(lifting::t0_dual_generating_function_check(cx, 2, 2, 4, &kp)?);
                r.extend(lifting::t0_khat_structure_check(cx, 2, 2, 3, &kp)?);
                Ok(annotate(r, p))
            })
        });
        jobs.push("khat0_series".to_string(), move |cx| {
            with_params(seed, spec_idx, (12, 12), &[], |p| {
                let kp = KoornParams::from_params(p)?;
                let r = lifting::khat0_w8_7_check(
                    cx,
                    p.cap_q(),
                    p.q_half(),
                    p.t_half(),
                    &kp,
                    3,
                )?;
                Ok(annotate(r, p))
            })
        });
        for lam in partitions::of_size_at_most(3) {
            let l = lam.clone();
            jobs.push(format!("t0_branch_pieri({l})"), move |cx| {
                with_params(seed, spec_idx, (12, 12), &["r1p", "r2p", "r3p"], |p| {
                    let kp = KoornParams::from_params(p)?;
                    let kp2 = KoornParams::from_halves(
                        p.q_half(),
                        p.t_half(),
                        &[
                            p.r(0).clone(),
                            p.free("r1p").unwrap().clone(),
                            p.free("r2p").unwrap().clone(),
                            p.free("r3p").unwrap().clone(),
                        ],
                    )?;
                    let mut r = Report::new();
                    r.extend(lifting::t0_branching_check(cx, &l, 2, 2, &kp)?);
                    r.extend(lifting::t0_plethystic_symmetry_check(cx, &l, &kp, &kp2)?);
                    r.extend(lifting::t0_g_pieri_check(cx, &l, 2, &kp)?);
                    r.extend(lifting::t0_e_pieri_check(cx, &l, 2, &kp)?);
                    Ok(annotate(r, p))
                })
            });
        }
        for (m, n) in [(1u32, 1usize), (2, 1), (1, 2)] {
            jobs.push(format!("virtual_consistency({m},{n})"), move |cx| {
                with_params(seed, spec_idx, (12, 12), &[], |p| {
                    let mut r = Report::new();
                    for lam in partitions::in_box(m, n) {
                        r.extend(lifting::virtual_consistency_check(
                            cx,
                            m,
                            n,
                            &lam,
                            p.s(),
                            p.q(),
                            p.t(),
                        )?);
                    }
                    Ok(annotate(r, p))
                })
            });
        }
        jobs.push("constant_evaluation".to_string(), move |cx| {
            with_params(seed, spec_idx, (12, 12), &["xh", "yh", "zh"], |p| {
                let mut r = Report::new();
                for lam in partitions::of_size_at_most(3) {
                    r.extend(lifting::constant_evaluation_check(
                        cx,
                        &lam,
                        p.free("xh").unwrap(),
                        p.free("yh").unwrap(),
                        p.free("zh").unwrap(),
                        p.t_half(),
                        p.q(),
                    )?);
                }
                Ok(annotate(r, p))
            })
        });
    }
    JobListHandle(jobs)
}

/// Vanishing-integral suite for one family.
pub fn suite_vanishing(cfg: &SuiteConfig, family: &str) -> Result<JobListHandle> {
    let mut jobs = JobList::new();
    let seed = cfg.seed;
    let family = family.to_string();
    for spec_idx in 0..cfg.spec_count {
        match family.as_str() {
            "t0" => {
                for lam in partitions::of_size_at_most(cfg.max_size) {
                    let l = lam.clone();
                    jobs.push(format!("t0_props({l})"), move |cx| {
                        with_params(seed, spec_idx, (12, 12), &[], |p| {
                            let r =
                                vanishing::check_t0_props(cx, &l, p.q_half(), p.t_half())?;
                            Ok(annotate(r, p))
                        })
                    });
                }
            }
            "usp" => {
                for lam in partitions::of_size_at_most(cfg.max_size) {
                    if lam.len() > 4 {
                        continue;
                    }
                    let l = lam.clone();
                    jobs.push(format!("usp({l})"), move |cx| {
                        with_params(seed, spec_idx, (12, 12), &[], |p| {
                            let mut r =
                                vanishing::check_usp_t(cx, &l, p.cap_t(), p.q_half(), p.t_half())?;
                            for n in 1..=3usize {
                                if l.len() <= 2 * n {
                                    let tn = p.t().pow(n as i64)?;
                                    let _ = tn;
                                    r.extend(vanishing::check_usp_n(
                                        cx,
                                        n,
                                        &l,
                                        p.q_half(),
                                        p.t_half(),
                                    )?);
                                }
                            }
                            r.extend(vanishing::check_usp_equivalence(
                                cx,
                                2,
                                &l,
                                p.q_half(),
                                p.t_half(),
                            )?);
                            Ok(annotate(r, p))
                        })
                    });
                }
            }
            "uo" => {
                for lam in partitions::of_size_at_most(cfg.max_size) {
                    if lam.part(1) > 4 {
                        continue;
                    }
                    let l = lam.clone();
                    jobs.push(format!("uo({l})"), move |cx| {
                        with_params(seed, spec_idx, (12, 12), &[], |p| {
                            let mut r =
                                vanishing::check_uo_t(cx, &l, p.cap_t(), p.q_half(), p.t_half())?;
                            for n in 2..=3usize {
                                if l.len() <= 2 * n {
                                    r.extend(vanishing::check_uo_combination(
                                        cx,
                                        n,
                                        &l,
                                        p.q_half(),
                                        p.t_half(),
                                    )?);
                                }
                            }
                            r.extend(vanishing::check_conjugation_duality(
                                cx,
                                &l,
                                p.cap_t(),
                                p.q_half(),
                                p.t_half(),
                            )?);
                            Ok(annotate(r, p))
                        })
                    });
                }
            }
            "schur" => {
                for lam in partitions::of_size_at_most(cfg.max_size) {
                    let l = lam.clone();
                    jobs.push(format!("schur({l})"), move |cx| {
                        with_params(seed, spec_idx, (12, 12), &[], |p| {
                            let r = vanishing::schur_crosscheck(cx, &l, p.q_half())?;
                            Ok(annotate(r, p))
                        })
                    });
                }
            }
            "ograss" | "spgrass" => {
                let sp = family == "spgrass";
                for lam in partitions::of_size_at_most(cfg.max_size.min(4)) {
                    let l = lam.clone();
                    jobs.push(format!("{family}({l})"), move |cx| {
                        with_params(seed, spec_idx, (12, 12), &["a", "b"], |p| {
                            let r = vanishing::check_grassmannian(
                                cx,
                                &l,
                                p.cap_t(),
                                p.free("a").unwrap(),
                                p.free("b").unwrap(),
                                p.q_half(),
                                p.t_half(),
                                sp,
                            )?;
                            Ok(annotate(r, p))
                        })
                    });
                }
            }
            "o1" => {
                for lam in partitions::of_size_at_most(cfg.max_size.min(4)) {
                    let l = lam.clone();
                    jobs.push(format!("o1({l})"), move |cx| {
                        with_params(seed, spec_idx, (12, 12), &[], |p| {
                            let kp = KoornParams::from_params(p)?;
                            let r = vanishing::check_o1_props(
                                cx,
                                &l,
                                p.cap_t(),
                                p.t_half(),
                                &kp,
                            )?;
                            Ok(annotate(r, p))
                        })
                    });
                }
            }
            "o2" => {
                for lam in partitions::of_size_at_most(cfg.max_size.min(4)) {
                    let l = lam.clone();
                    jobs.push(format!("o2({l})"), move |cx| {
                        with_params(seed, spec_idx, (12, 12), &["a", "b"], |p| {
                            let r = vanishing::check_o2_theorems(
                                cx,
                                &l,
                                p.cap_t(),
                                p.free("a").unwrap(),
                                p.free("b").unwrap(),
                                p.q_half(),
                                p.t_half(),
                            )?;
                            Ok(annotate(r, p))
                        })
                    });
                }
            }
            "ugrass1" | "ugrass2" => {
                let one = family == "ugrass1";
                // the embedded partition has size |μ| + ν₁(m+n) - |ν|;
                // cap it so the symmetric-function engines stay desk-scale
                let embedded_size = |mu: &Partition, nu: &Partition, vars: u32| {
                    mu.size() + nu.part(1) * vars - nu.size()
                };
                let weights: Vec<(Partition, Partition)> = {
                    let mut out = Vec::new();
                    for mu in partitions::of_size_at_most(cfg.max_size.min(3)) {
                        for nu in partitions::of_size_at_most(cfg.max_size.min(3)) {
                            if mu.len() + nu.len() <= 3 {
                                out.push((mu.clone(), nu.clone()));
                            }
                        }
                    }
                    out
                };
                for (mu, nu) in weights {
                    let (m2, n2) = (mu.clone(), nu.clone());
                    jobs.push(format!("{family}(({mu}),({nu}))"), move |cx| {
                        with_params(seed, spec_idx, (12, 12), &[], |p| {
                            let mut r = Report::new();
                            if one {
                                for (m, n) in [(1usize, 2usize), (2, 1), (2, 2)] {
                                    if m2.len() + n2.len() <= m + n
                                        && embedded_size(&m2, &n2, (m + n) as u32) <= 8
                                    {
                                        r.extend(vanishing::check_u_grass1(
                                            cx, m, n, &m2, &n2, p.q(), p.t(),
                                        )?);
                                    }
                                }
                            } else {
                                for n in [1usize, 2] {
                                    if m2.len() + n2.len() <= 2 * n
                                        && embedded_size(&m2, &n2, 2 * n as u32) <= 7
                                    {
                                        r.extend(vanishing::check_u_grass2(
                                            cx, n, &m2, &n2, p.q(), p.t(),
                                        )?);
                                    }
                                }
                            }
                            Ok(annotate(r, p))
                        })
                    });
                }
            }
            "dm" => {
                for m in 1..=3usize {
                    for w in 0..=2u32 {
                        jobs.push(format!("dm(m={m},w={w})"), move |cx| {
                            with_params(seed, spec_idx, (12, 12), &[], |p| {
                                let r = vanishing::check_dm_combination(
                                    cx,
                                    m,
                                    w,
                                    p.q_half(),
                                    p.t_half(),
                                )?;
                                Ok(annotate(r, p))
                            })
                        });
                    }
                }
            }
            other => {
                return Err(Error::ConfigError(format!("unknown family {other:?}")));
            }
        }
    }
    Ok(JobListHandle(jobs))
}

/// Opaque handle so suites can be listed and executed by the front end.
pub struct JobListHandle(JobList);

impl JobListHandle {
    pub fn len(&self) -> usize {
        self.0.jobs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.jobs.is_empty()
    }

    pub fn execute(self, cx: &Caches, threads: Option<usize>) -> Report {
        self.0.run(cx, threads)
    }
}

/// Runs a named suite; `lifting` accepts the sub-suites `t0` and `generic`.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Report> {
    let cx = Caches::new();
    let handle = match name {
        "cnorm" => suite_cnorm(cfg),
        "interp-core" => suite_interp_core(cfg),
        "interp" => suite_interp_identities(cfg),
        "hyperg" => suite_hyperg(cfg),
        "koorn" => suite_koorn(cfg),
        "lifting-generic" => suite_lifting_generic(cfg),
        "lifting-t0" => suite_lifting_t0(cfg),
        other => {
            if let Some(fam) = other.strip_prefix("vanishing-") {
                suite_vanishing(cfg, fam)?
            } else {
                return Err(Error::ConfigError(format!("unknown suite {other:?}")));
            }
        }
    };
    Ok(handle.execute(&cx, cfg.threads))
}

/// Serializes a report file and writes it atomically (temp file + rename).
pub fn write_report(path: &std::path::Path, file: &ReportFile) -> Result<()> {
    let json = serde_json::to_string_pretty(file)
        .map_err(|e| Error::ConfigError(format!("serialize report: {e}")))?;
    let tmp = path.with_extension("tmp");
    {
        let mut f = std::fs::File::create(&tmp)
            .map_err(|e| Error::ConfigError(format!("create {}: {e}", tmp.display())))?;
        f.write_all(json.as_bytes())
            .map_err(|e| Error::ConfigError(format!("write {}: {e}", tmp.display())))?;
        f.sync_all().ok();
    }
    std::fs::rename(&tmp, path)
        .map_err(|e| Error::ConfigError(format!("rename to {}: {e}", path.display())))?;
    Ok(())
}

/// Parameter file accepted by the polynomial-printing commands.
#[derive(Deserialize)]
pub struct ParamsFile {
    pub qh: Scalar,
    pub th: Scalar,
    #[serde(default)]
    pub s: Option<Scalar>,
    #[serde(default, rename = "T")]
    pub cap_t: Option<Scalar>,
    #[serde(default)]
    pub r: Option<[Scalar; 4]>,
}

impl ParamsFile {
    pub fn to_params(&self) -> Result<Params> {
        let mut b = Params::builder().q_half(self.qh.clone()).t_half(self.th.clone());
        if let Some(s) = &self.s {
            b = b.s(s.clone());
        }
        if let Some(t) = &self.cap_t {
            b = b.cap_t(t.clone());
        }
        if let Some(r) = &self.r {
            for (i, v) in r.iter().enumerate() {
                b = b.r(i, v.clone());
            }
        }
        b.build()
    }
}

/// Prints an m-basis coefficient map as stable JSON.
pub fn mbasis_json(map: &BTreeMap<Partition, Scalar>) -> String {
    let entries: Vec<serde_json::Value> = map
        .iter()
        .map(|(k, v)| {
            serde_json::json!({
                "partition": k.to_string(),
                "coeff": v.to_string(),
            })
        })
        .collect();
    serde_json::to_string_pretty(&entries).expect("serialize m-basis map")
}
