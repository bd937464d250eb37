//! Seeded randomized checks of the geometric invariants.
//!
//! Every trial of every suite draws from its own stream (see
//! [`RandSuite::for_trial`]), and results are reduced with max/first-failure
//! only, so reports are identical in sequential and parallel runs.

use std::fmt;

use crate::block2::{
    cayley_conjugate, chart_log, embed_invertible, exp_chart, group_residual, polar_in_group, theta, u_mat,
    unitary_split, Block2, FormTag, LieElem, Pair,
};
use crate::cmat::{CMat, Tolerance, I};
use crate::error::{GeomError, Result};
use crate::geometry::{
    covariant_ambient_along, covariant_h_along, d_pi_i, dist_d, dist_d_origin, dist_h, dist_pos, exp_pos,
    geodesic_anticommuting, geodesic_commuting, geodesic_from_i, geodesic_pos, kappa_i, log_pos, ModelGeodesic,
    GeodesicFamilyParams, PosPoint,
};
use crate::models::{
    base_pair_h, borel_from_sphere, cayley, cayley_inv, fibration, moebius_d, moebius_h, moebius_via_lift,
    section_delta, section_psi, sphere_residual, transitivity_witness, transport, transported_action, DPoint, HPoint,
    ModelPoint,
};
use crate::par::{map_trials, Execution};
use crate::random::RandSuite;
use crate::reflections::{phi_d, phi_d_from_pair, phi_d_inv, phi_h, positivity_witness, ReflectionDiagnostics};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Forms,
    Groups,
    Actions,
    Reflections,
    Metric,
    Npc,
    Covariant,
    Families,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Forms,
        Suite::Groups,
        Suite::Actions,
        Suite::Reflections,
        Suite::Metric,
        Suite::Npc,
        Suite::Covariant,
        Suite::Families,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Forms => "forms",
            Suite::Groups => "groups",
            Suite::Actions => "actions",
            Suite::Reflections => "reflections",
            Suite::Metric => "metric",
            Suite::Npc => "npc",
            Suite::Covariant => "covariant",
            Suite::Families => "families",
        }
    }

    pub fn id(self) -> u32 {
        self as u32 + 1
    }

    pub fn from_name(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s)
    }

    /// `"all"` or a comma-separated list of suite names.
    pub fn parse_list(s: &str) -> std::result::Result<Vec<Suite>, String> {
        if s == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        s.split(',')
            .map(|p| Suite::from_name(p.trim()).ok_or_else(|| format!("unknown suite {p:?}")))
            .collect()
    }
}

/// One measured residual and the limit it must not exceed.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: &'static str,
    pub residual: f64,
    pub limit: f64,
}

impl Check {
    pub fn new(name: &'static str, residual: f64, limit: f64) -> Self {
        Self { name, residual, limit }
    }

    /// `lhs <= rhs + slack`, reported as the excess `max(0, lhs - rhs)`.
    pub fn at_most(name: &'static str, lhs: f64, rhs: f64, slack: f64) -> Self {
        Self::new(name, (lhs - rhs).max(0.0), slack)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    /// Replaces every per-check limit when set.
    pub tol: Option<f64>,
    pub exec: Execution,
}

impl VerifyConfig {
    pub fn new(n: usize, trials: u64, seed: u64) -> Result<Self> {
        if n == 0 {
            return Err(GeomError::InvalidParams("n must be at least 1".into()));
        }
        if trials == 0 {
            return Err(GeomError::InvalidParams("trials must be at least 1".into()));
        }
        Ok(Self { n, trials, seed, tol: None, exec: Execution::available() })
    }

    pub fn with_tol(mut self, tol: f64) -> Result<Self> {
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(GeomError::InvalidTolerance(format!("tol must be positive, got {tol}")));
        }
        self.tol = Some(tol);
        Ok(self)
    }

    pub fn with_exec(mut self, exec: Execution) -> Self {
        self.exec = exec;
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckSummary {
    pub name: String,
    pub max_residual: f64,
    pub limit: f64,
    pub failing_trial: Option<u64>,
}

impl CheckSummary {
    pub fn passed(&self) -> bool {
        self.failing_trial.is_none()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub trials: u64,
    pub checks: Vec<CheckSummary>,
    /// First trial that raised an error, with its message.
    pub error: Option<(u64, String)>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(CheckSummary::passed)
    }

    pub fn max_residual(&self) -> f64 {
        let m = self.checks.iter().map(|c| c.max_residual).fold(0.0, f64::max);
        if self.error.is_some() {
            f64::INFINITY
        } else {
            m
        }
    }

    pub fn first_failing_trial(&self) -> Option<u64> {
        let from_checks = self.checks.iter().filter_map(|c| c.failing_trial).min();
        match (&self.error, from_checks) {
            (Some((t, _)), Some(c)) => Some((*t).min(c)),
            (Some((t, _)), None) => Some(*t),
            (None, c) => c,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteReport::passed)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "verify n={} trials={} seed={}", self.n, self.trials, self.seed)?;
        for s in &self.suites {
            let status = if s.passed() { "PASS" } else { "FAIL" };
            write!(f, "{status} {:<12} max_residual={:.3e}", s.suite.name(), s.max_residual())?;
            if let Some(t) = s.first_failing_trial() {
                write!(f, " failing_trial={t} seed={}", self.seed)?;
            }
            writeln!(f)?;
            for c in &s.checks {
                let mark = if c.passed() { "ok" } else { "FAIL" };
                write!(f, "    {mark:<4} {:<28} {:.3e} (limit {:.1e})", c.name, c.max_residual, c.limit)?;
                if let Some(t) = c.failing_trial {
                    write!(f, " first failure at trial {t}")?;
                }
                writeln!(f)?;
            }
            if let Some((t, msg)) = &s.error {
                writeln!(f, "    error at trial {t}: {msg}")?;
            }
        }
        write!(f, "{}", if self.passed() { "all suites passed" } else { "verification FAILED" })
    }
}

/// Runs one trial of `suite` with its own random stream.
pub fn run_trial(suite: Suite, seed: u64, trial: u64, n: usize) -> Result<Vec<Check>> {
    let mut r = RandSuite::for_trial(seed, suite.id(), trial, n);
    match suite {
        Suite::Forms => trial_forms(&mut r),
        Suite::Groups => trial_groups(&mut r),
        Suite::Actions => trial_actions(&mut r),
        Suite::Reflections => trial_reflections(&mut r),
        Suite::Metric => trial_metric(&mut r),
        Suite::Npc => trial_npc(&mut r),
        Suite::Covariant => trial_covariant(&mut r),
        Suite::Families => trial_families(&mut r),
    }
}

pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> SuiteReport {
    let results = map_trials(cfg.exec, cfg.trials, |k| run_trial(suite, cfg.seed, k, cfg.n));
    let mut checks: Vec<CheckSummary> = Vec::new();
    let mut error = None;
    for (k, res) in results.into_iter().enumerate() {
        let k = k as u64;
        match res {
            Err(e) => {
                if error.is_none() {
                    error = Some((k, e.to_string()));
                }
            }
            Ok(list) => {
                for c in list {
                    let limit = cfg.tol.unwrap_or(c.limit);
                    let failed = c.residual.is_nan() || c.residual > limit;
                    let slot = match checks.iter_mut().position(|s| s.name == c.name) {
                        Some(i) => &mut checks[i],
                        None => {
                            checks.push(CheckSummary {
                                name: c.name.to_string(),
                                max_residual: 0.0,
                                limit,
                                failing_trial: None,
                            });
                            checks.last_mut().expect("just pushed")
                        }
                    };
                    if c.residual > slot.max_residual || c.residual.is_nan() {
                        slot.max_residual = if c.residual.is_nan() { f64::INFINITY } else { c.residual };
                    }
                    if failed && slot.failing_trial.is_none() {
                        slot.failing_trial = Some(k);
                    }
                }
            }
        }
    }
    SuiteReport { suite, trials: cfg.trials, checks, error }
}

pub fn run(suites: &[Suite], cfg: &VerifyConfig) -> Report {
    Report {
        n: cfg.n,
        trials: cfg.trials,
        seed: cfg.seed,
        suites: suites.iter().map(|&s| run_suite(s, cfg)).collect(),
    }
}

fn tol_loose() -> Tolerance {
    Tolerance::new(1e-9, Tolerance::default().eps_pos).expect("valid tolerance")
}

fn random_pair(r: &mut RandSuite) -> Pair {
    Pair { x1: r.random_general(), x2: r.random_general() }
}

fn trial_forms(r: &mut RandSuite) -> Result<Vec<Check>> {
    let g = r.random_group_h();
    let gd = cayley_conjugate(&g);
    let x = random_pair(r);
    let y = random_pair(r);
    let th = theta(FormTag::H, &x, &y)?;
    let moved = theta(FormTag::H, &g.apply(&x)?, &g.apply(&y)?)?;
    let td = theta(FormTag::D, &x, &y)?;
    let moved_d = theta(FormTag::D, &gd.apply(&x)?, &gd.apply(&y)?)?;
    let omega = crate::block2::omega(&x, &y)?;
    Ok(vec![
        Check::new("theta_H preserved", moved.dist(&th), 1e-8),
        Check::new("theta_D preserved", moved_d.dist(&td), 1e-8),
        Check::new("theta_H(x,x) hermitian", theta(FormTag::H, &x, &x)?.hermitian_residual(), 1e-12),
        Check::new("theta_H = i omega", th.dist(&omega.scale(I)), 1e-12),
        Check::new("theta_H skew symmetry", th.dist(&theta(FormTag::H, &y, &x)?.adjoint()), 1e-12),
    ])
}

fn trial_groups(r: &mut RandSuite) -> Result<Vec<Check>> {
    let tol = tol_loose();
    let g = r.random_group_h();
    let (u, p) = polar_in_group(FormTag::H, &g, &tol)?;
    let gd = r.random_group_d();
    let (ud, pd) = polar_in_group(FormTag::D, &gd, &tol)?;
    let (u1, u2) = unitary_split(&ud, &tol)?;
    let rebuilt = Block2::diag(&u1, &u2)?;

    let small = r.random_lie(0.3, 0.3);
    let back = chart_log(&exp_chart(&small, &tol)?, &tol)?;

    let h = r.random_hpoint();
    let w = transitivity_witness(&h)?;
    let image = moebius_h(&w, &HPoint::i_unit(r.n()), &tol)?;
    let emb = embed_invertible(&r.random_general(), &tol)?;

    Ok(vec![
        Check::new("polar factors in U(theta_H)", group_residual(FormTag::H, &u).max(group_residual(FormTag::H, &p)), 1e-9),
        Check::new("polar factors in U(theta_D)", group_residual(FormTag::D, &ud).max(group_residual(FormTag::D, &pd)), 1e-9),
        Check::new("polar reconstruction", (&u * &p).dist(&g) / g.spec_norm().max(1.0), 1e-10),
        Check::new("unitary_split reconstruction", rebuilt.dist(&ud), 1e-10),
        Check::new("U* g U in U(theta_D)", group_residual(FormTag::D, &cayley_conjugate(&g)), 1e-9),
        Check::new("chart_log . exp_chart", back.value.dist(&small.value), 1e-9),
        Check::new("borel witness i -> h", image.dist(&h) / h.h().spec_norm().max(1.0), 1e-9),
        Check::new("embed_invertible in group", group_residual(FormTag::H, &emb), 1e-9),
    ])
}

fn trial_actions(r: &mut RandSuite) -> Result<Vec<Check>> {
    let tol = tol_loose();
    let n = r.n();
    let g = r.random_group_h();
    let g2 = r.random_group_h();
    let h1 = r.random_hpoint();
    let h2 = r.random_hpoint();

    let k = r.random_kpair(FormTag::H)?;
    let moved = g.apply(k.pair())?;
    let scale = (moved.x1.spec_norm().powi(2) + moved.x2.spec_norm().powi(2)).max(1.0);
    let sphere_h = sphere_residual(FormTag::H, &moved)? / scale;
    let kd = r.random_kpair(FormTag::D)?;
    let moved_d = cayley_conjugate(&g).apply(kd.pair())?;
    let scale_d = (moved_d.x1.spec_norm().powi(2) + moved_d.x2.spec_norm().powi(2)).max(1.0);
    let sphere_d = sphere_residual(FormTag::D, &moved_d)? / scale_d;

    let carried = moebius_h(&transport(&h1, &h2)?, &h1, &tol)?;
    let b = borel_from_sphere(&k)?;
    let free = b.apply(&base_pair_h(n))?.dist(k.pair());

    let direct = moebius_h(&g, &h1, &tol)?;
    let lifted = moebius_via_lift(FormTag::H, &g, &ModelPoint::H(h1.clone()), &tol)?;
    let z = r.random_dpoint();
    let gd = cayley_conjugate(&g);
    let direct_d = moebius_d(&gd, &z, &tol)?;
    let lifted_d = moebius_via_lift(FormTag::D, &gd, &ModelPoint::D(z.clone()), &tol)?;

    let composed = moebius_h(&g, &moebius_h(&g2, &h1, &tol)?, &tol)?;
    let product = moebius_h(&(&g * &g2), &h1, &tol)?;

    let fib = fibration(&section_psi(&h1)?)?;
    let fib_d = fibration(&section_delta(&z)?)?;
    let transported = transported_action(&g, &h1, &tol)?;
    let via_cayley = cayley(&direct)?;

    let hs = h2.h().spec_norm().max(1.0);
    let ds = direct.h().spec_norm().max(1.0);
    Ok(vec![
        Check::new("K_H invariant under U(theta_H)", sphere_h, 1e-9),
        Check::new("K_D invariant under U(theta_D)", sphere_d, 1e-9),
        Check::new("transport h1 -> h2", carried.dist(&h2) / hs, 1e-9),
        Check::new("borel acts freely on K_H", free, 1e-9),
        Check::new("H action lift independence", lifted.matrix().dist(direct.h()) / ds, 1e-9),
        Check::new("D action lift independence", lifted_d.matrix().dist(direct_d.z()), 1e-9),
        Check::new("action composition", composed.dist(&product) / product.h().spec_norm().max(1.0), 1e-8),
        Check::new("fibration . section", fib.matrix().dist(h1.h()).max(fib_d.matrix().dist(z.z())), 1e-9),
        Check::new("cayley intertwines actions", transported.dist(&via_cayley), 1e-8),
    ])
}

fn trial_reflections(r: &mut RandSuite) -> Result<Vec<Check>> {
    let tol = tol_loose();
    let z = r.random_dpoint();
    let w = r.random_dpoint();
    let e = phi_d(&z)?;
    let round = phi_d_inv(&e)?.dist(&z);
    let ew = phi_d(&w)?;
    let round_back = phi_d(&phi_d_inv(&ew)?)?.eps().dist(ew.eps());

    let gd = r.random_group_d();
    let gz = moebius_d(&gd, &z, &tol)?;
    let lhs = phi_d(&gz)?;
    let rhs = e.conjugate(&gd)?;
    let equiv_d = lhs.eps().dist(rhs.eps()) / rhs.eps().spec_norm().max(1.0);

    let gh = r.random_group_h();
    let h = r.random_hpoint();
    let eh = phi_h(&h)?;
    let gh_h = moebius_h(&gh, &h, &tol)?;
    let rhs_h = eh.conjugate(&gh)?;
    let equiv_h = phi_h(&gh_h)?.eps().dist(rhs_h.eps()) / rhs_h.eps().spec_norm().max(1.0);

    let u = u_mat(r.n());
    let via_d = &(&u * phi_d(&cayley(&h)?)?.eps()) * &u.adjoint();
    let cayley_square = via_d.dist(eh.eps()) / eh.eps().spec_norm().max(1.0);

    let kd = r.random_kpair(FormTag::D)?;
    let witness = positivity_witness(&kd)?;
    let from_pair = phi_d_from_pair(&kd)?;
    let witness_res = witness.dist(&(from_pair.eps() * &FormTag::D.rho(r.n()))) / witness.spec_norm().max(1.0);

    let mut square = 0.0f64;
    let mut neg_eig = 0.0f64;
    for refl in [&e, &ew, &eh, &lhs, &from_pair] {
        let d = refl.diagnostics();
        square = square.max(d.square_residual);
        neg_eig = neg_eig.max(-d.min_eig);
    }

    let geo_d = ModelGeodesic::new(&ModelPoint::D(z.clone()), &ModelPoint::D(w.clone()))?;
    let geo_h = ModelGeodesic::new(&ModelPoint::H(h.clone()), &ModelPoint::H(r.random_hpoint()))?;
    let mut drift = 0.0f64;
    let mut drift_eig = 0.0f64;
    for g in [&geo_d, &geo_h] {
        for t in [0.25, 0.5, 0.75] {
            let d: ReflectionDiagnostics = g.diagnostics_at(t)?;
            drift = drift.max(d.square_residual).max(d.hermitian_residual);
            drift_eig = drift_eig.max(-d.min_eig);
        }
    }

    Ok(vec![
        Check::new("Phi_D^-1 . Phi_D", round, 1e-8),
        Check::new("Phi_D . Phi_D^-1", round_back, 1e-8),
        Check::new("eps^2 = 1", square, 1e-9),
        Check::new("rho eps positive", neg_eig, 0.0),
        Check::new("Phi_D equivariance", equiv_d, 1e-8),
        Check::new("Phi_H equivariance", equiv_h, 1e-8),
        Check::new("Phi_H = U Phi_D(Gamma) U*", cayley_square, 1e-9),
        Check::new("positivity witness", witness_res, 1e-9),
        Check::new("geodesic stays in Q_rho", drift, 1e-7),
        Check::new("geodesic rho eps positive", drift_eig, 0.0),
    ])
}

fn pos_point(r: &mut RandSuite) -> Result<PosPoint> {
    PosPoint::new(r.random_pd())
}

fn trial_metric(r: &mut RandSuite) -> Result<Vec<Check>> {
    let tol = tol_loose();
    let z = r.random_dpoint();
    let closed = (dist_d(&DPoint::origin(r.n()), &z)? - dist_d_origin(&z)).abs();

    let p = r.random_hpoint();
    let q = r.random_hpoint();
    let dh = dist_h(&p, &q)?;
    let cay = (dh - dist_d(&cayley(&p)?, &cayley(&q)?)?).abs();
    let round_h = cayley_inv(&cayley(&p)?)?.dist(&p) / p.h().spec_norm().max(1.0);
    let round_d = cayley(&cayley_inv(&z)?)?.dist(&z);

    let g = r.random_group_h();
    let iso = (dist_h(&moebius_h(&g, &p, &tol)?, &moebius_h(&g, &q, &tol)?)? - dh).abs();
    let sym = (dist_h(&q, &p)? - dh).abs();

    let a = pos_point(r)?;
    let b = pos_point(r)?;
    let dab = dist_pos(&a, &b)?;
    let mut linear = 0.0f64;
    let mut exp_consistency = 0.0f64;
    let x = log_pos(&a, &b)?;
    for t in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let gt = geodesic_pos(&a, &b, t)?;
        linear = linear.max((dist_pos(&a, &gt)? - t * dab).abs());
        let e = exp_pos(&a, &x.scale_real(t))?;
        exp_consistency = exp_consistency.max(e.dist(&gt) / gt.matrix().spec_norm().max(1.0));
    }
    let ends = geodesic_pos(&a, &b, 0.0)?
        .dist(&a)
        .max(geodesic_pos(&a, &b, 1.0)?.dist(&b))
        / a.matrix().spec_norm().max(b.matrix().spec_norm()).max(1.0);

    let m = ModelPoint::D(z.clone());
    let geo = ModelGeodesic::new(&ModelPoint::D(DPoint::origin(r.n())), &m)?;
    let mut along = 0.0f64;
    for t in [0.25, 0.5, 0.75] {
        let pt = geo.at(t)?;
        if let ModelPoint::D(w) = pt {
            along = along.max((dist_d_origin(&w) - t * dist_d_origin(&z)).abs());
        }
    }

    Ok(vec![
        Check::new("d_D(0,z) closed form", closed, 1e-8),
        Check::new("cayley isometry", cay, 1e-8),
        Check::new("cayley round trip H", round_h, 1e-9),
        Check::new("cayley round trip D", round_d, 1e-9),
        Check::new("group isometry", iso, 1e-8),
        Check::new("d_H symmetric", sym, 1e-9),
        Check::new("cone geodesic endpoints", ends, 1e-10),
        Check::new("d(a, gamma(t)) = t d(a,b)", linear, 1e-9),
        Check::new("exp/geodesic consistency", exp_consistency, 1e-8),
        Check::new("disk radial geodesic", along, 1e-8),
    ])
}

const GRID: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

fn trial_npc(r: &mut RandSuite) -> Result<Vec<Check>> {
    let origin = ModelPoint::H(r.random_hpoint());
    let q1 = ModelPoint::H(r.random_hpoint());
    let q2 = ModelPoint::H(r.random_hpoint());
    let g1 = ModelGeodesic::new(&origin, &q1)?;
    let g2 = ModelGeodesic::new(&origin, &q2)?;
    let full = crate::geometry::dist_model(&q1, &q2)?;
    let mut chord = 0.0f64;
    for t in GRID {
        let d = crate::geometry::dist_model(&g1.at(t)?, &g2.at(t)?)?;
        chord = chord.max(d - t * full);
    }

    let a1 = ModelPoint::H(r.random_hpoint());
    let b1 = ModelPoint::H(r.random_hpoint());
    let a2 = ModelPoint::H(r.random_hpoint());
    let b2 = ModelPoint::H(r.random_hpoint());
    let h1 = ModelGeodesic::new(&a1, &b1)?;
    let h2 = ModelGeodesic::new(&a2, &b2)?;
    let f: Vec<f64> = (0..=10)
        .map(|k| {
            let t = k as f64 / 10.0;
            crate::geometry::dist_model(&h1.at(t)?, &h2.at(t)?)
        })
        .collect::<Result<_>>()?;
    let mut convex = 0.0f64;
    for k in 1..10 {
        convex = convex.max(f[k] - 0.5 * (f[k - 1] + f[k + 1]));
    }
    Ok(vec![Check::new("chord-arc inequality", chord.max(0.0), 1e-9), Check::new("midpoint convexity", convex.max(0.0), 1e-7)])
}

/// Horizontal generator with spectral norm uniform in `[0.1, 1]`.
fn unit_horizontal(r: &mut RandSuite) -> LieElem {
    let x = r.random_horizontal(1.0);
    let norm = x.value.spec_norm();
    let target = r.uniform(0.1, 1.0);
    if norm > 1e-12 {
        x.scaled(target / norm)
    } else {
        x
    }
}

fn trial_covariant(r: &mut RandSuite) -> Result<Vec<Check>> {
    let x = unit_horizontal(r);
    let orbit = |t: f64| geodesic_from_i(&x, t);
    let mut cov_h = 0.0f64;
    for t in [0.25, 0.5, 0.75] {
        cov_h = cov_h.max(covariant_h_along(&orbit, t, 1e-3)?);
    }
    let a = pos_point(r)?;
    let b = pos_point(r)?;
    let curve = |t: f64| geodesic_pos(&a, &b, t);
    let mut cov_a = 0.0f64;
    for t in [0.25, 0.5, 0.75] {
        cov_a = cov_a.max(covariant_ambient_along(&curve, t, 1e-3)?);
    }
    let chi = r.random_hermitian();
    let ups = r.random_hermitian();
    let k = kappa_i(&chi, &ups)?;
    let round = d_pi_i(&k).dist(&(&chi + &ups.scale(I)));

    // d(pi_i) applied to a horizontal generator is the orbit velocity at t = 0.
    let vel = crate::geometry::central_first(&|t: f64| orbit(t).map(|p| p.h().clone()), 0.0, 1e-4)?;
    let dpi = d_pi_i(&x.horizontal).dist(&vel);
    Ok(vec![
        Check::new("D delta'/dt along orbits", cov_h, 1e-4),
        Check::new("ambient D gamma'/dt", cov_a, 1e-5),
        Check::new("d(pi_i) . kappa_i", round, 1e-12),
        Check::new("d(pi_i) matches orbit velocity", dpi, 1e-6),
    ])
}

fn trial_families(r: &mut RandSuite) -> Result<Vec<Check>> {
    let grid: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
    let comm = r.random_commuting_family()?;
    let xc = comm.generator()?;
    let mut comm_orbit = 0.0f64;
    let mut circle = 0.0f64;
    for &t in &grid {
        let closed = geodesic_commuting(&comm, t)?;
        let orbit = geodesic_from_i(&xc, t)?;
        comm_orbit = comm_orbit.max(closed.dist(&orbit));
        if let Some(res) = comm.circle_residual(t)? {
            circle = circle.max(res);
        }
    }

    let anti = r.random_anticommuting_family()?;
    let xa = anti.generator()?;
    let no_alpha = GeodesicFamilyParams::anticommuting(&CMat::zeros(r.n()), &anti.beta)?;
    let mut anti_orbit = 0.0f64;
    let mut alpha_free = 0.0f64;
    for &t in &grid {
        let closed = geodesic_anticommuting(&anti, t)?;
        let orbit = geodesic_from_i(&xa, t)?;
        anti_orbit = anti_orbit.max(closed.dist(&orbit));
        alpha_free = alpha_free.max(closed.re().dist(&geodesic_anticommuting(&no_alpha, t)?.re()));
    }
    Ok(vec![
        Check::new("commuting family = orbit", comm_orbit, 1e-8),
        Check::new("commuting circle equation", circle, 1e-8),
        Check::new("anticommuting family = orbit", anti_orbit, 1e-8),
        Check::new("Re part independent of alpha", alpha_free, 1e-10),
    ])
}
