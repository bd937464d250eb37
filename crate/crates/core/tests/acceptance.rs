//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::f64::consts::LN_2;
use std::process::ExitCode;

use hsgeom_core::block2::{
    exp_chart, group_residual, polar_in_group, theta, unitary_split, Block2, FormTag, LieElem, Pair,
};
use hsgeom_core::cmat::{CMat, Tolerance, I};
use hsgeom_core::geometry::{
    covariant_ambient_along, covariant_h_along, d_pi_i, dist_d, dist_h, dist_pos, exp_pos, geodesic_anticommuting,
    geodesic_commuting, geodesic_from_i, geodesic_pos, kappa_i, log_pos, GeodesicFamilyParams, ModelGeodesic,
    PosPoint, DRIFT_TOL,
};
use hsgeom_core::models::{
    cayley, cayley_inv, moebius_d, moebius_h, transitivity_witness, DPoint, HPoint, ModelPoint,
};
use hsgeom_core::random::RandSuite;
use hsgeom_core::reflections::{phi_d, phi_d_inv, phi_h};

const SEED: u64 = 20240601;

/// Worst value of each sub-check against its limit.
struct Criterion {
    id: u32,
    title: &'static str,
    parts: Vec<(&'static str, f64, f64)>,
    errors: Vec<String>,
}

impl Criterion {
    fn new(id: u32, title: &'static str) -> Self {
        Self { id, title, parts: Vec::new(), errors: Vec::new() }
    }

    /// Records `value` for sub-check `name`, which passes when `value < limit`.
    fn record(&mut self, name: &'static str, value: f64, limit: f64) {
        match self.parts.iter_mut().find(|p| p.0 == name) {
            Some(p) => {
                if value.is_nan() || value > p.1 {
                    p.1 = value;
                }
            }
            None => self.parts.push((name, value, limit)),
        }
    }

    fn error(&mut self, msg: String) {
        self.errors.push(msg);
    }

    fn passed(&self) -> bool {
        self.errors.is_empty() && self.parts.iter().all(|(_, v, l)| *v < *l)
    }

    fn report(&self) -> bool {
        let ok = self.passed();
        println!("{} criterion {}: {}", if ok { "PASS" } else { "FAIL" }, self.id, self.title);
        for (name, v, l) in &self.parts {
            let mark = if v < l { "ok" } else { "FAIL" };
            println!("    {mark:<4} {name:<44} {v:.3e} (< {l:.0e})");
        }
        for e in &self.errors {
            println!("    error: {e}");
        }
        ok
    }
}

fn rng(criterion: u32, trial: u64, n: usize) -> RandSuite {
    RandSuite::for_trial(SEED, 100 + criterion, trial, n)
}

/// `n` cycles through `1..=8`.
fn n_of(trial: u64) -> usize {
    1 + (trial % 8) as usize
}

/// Independent oracle: `log((1 + r) / (1 - r))` with `r` the largest singular value.
fn disk_origin_oracle(z: &CMat) -> f64 {
    let r = z.singular_values().into_iter().fold(0.0, f64::max);
    (1.0 + r).ln() - (1.0 - r).ln()
}

fn criterion_1() -> Criterion {
    let mut c = Criterion::new(1, "closed-form disk distance");
    for k in 0..100 {
        let n = n_of(k);
        let z = rng(1, k, n).random_dpoint();
        match dist_d(&DPoint::origin(n), &z) {
            Ok(d) => c.record("|d_D(0,z) - log((1+|z|)/(1-|z|))|, 100 z", (d - disk_origin_oracle(z.z())).abs(), 1e-8),
            Err(e) => c.error(format!("trial {k}: {e}")),
        }
    }
    let half = DPoint::new(CMat::real_scalar(1, 0.5)).unwrap();
    let d = dist_d(&DPoint::origin(1), &half).unwrap();
    c.record("|d_D(0, 0.5) - log 3|", (d - 3f64.ln()).abs(), 1e-12);
    c
}

fn criterion_2() -> Criterion {
    let mut c = Criterion::new(2, "Cayley isometry");
    for k in 0..100 {
        let mut r = rng(2, k, n_of(k));
        let p = r.random_hpoint();
        let q = r.random_hpoint();
        let z = r.random_dpoint();
        let res = (|| -> hsgeom_core::Result<()> {
            let gap = (dist_h(&p, &q)? - dist_d(&cayley(&p)?, &cayley(&q)?)?).abs();
            c.record("|d_H(p,q) - d_D(Gp,Gq)|, 100 pairs", gap, 1e-8);
            c.record("|G^-1 G p - p|", cayley_inv(&cayley(&p)?)?.dist(&p), 1e-9);
            c.record("|G G^-1 z - z|", cayley(&cayley_inv(&z)?)?.dist(&z), 1e-9);
            Ok(())
        })();
        if let Err(e) = res {
            c.error(format!("trial {k}: {e}"));
        }
    }
    c
}

fn criterion_3() -> Criterion {
    let mut c = Criterion::new(3, "isometric group action");
    let tol = Tolerance::default();
    for k in 0..100 {
        let mut r = rng(3, k, n_of(k));
        let g = r.random_group_h();
        let p = r.random_hpoint();
        let q = r.random_hpoint();
        let x = Pair { x1: r.random_general(), x2: r.random_general() };
        let y = Pair { x1: r.random_general(), x2: r.random_general() };
        let res = (|| -> hsgeom_core::Result<()> {
            let before = dist_h(&p, &q)?;
            let after = dist_h(&moebius_h(&g, &p, &tol)?, &moebius_h(&g, &q, &tol)?)?;
            c.record("|d_H(gp,gq) - d_H(p,q)|, 100 g", (after - before).abs(), 1e-8);
            let moved = theta(FormTag::H, &g.apply(&x)?, &g.apply(&y)?)?;
            c.record("|theta_H(gx,gy) - theta_H(x,y)|", moved.dist(&theta(FormTag::H, &x, &y)?), 1e-8);
            Ok(())
        })();
        if let Err(e) = res {
            c.error(format!("trial {k}: {e}"));
        }
    }
    c
}

fn criterion_4() -> Criterion {
    let mut c = Criterion::new(4, "NPC: chord-arc and convexity");
    for k in 0..50 {
        let mut r = rng(4, k, n_of(k));
        let res = (|| -> hsgeom_core::Result<()> {
            let o = ModelPoint::H(r.random_hpoint());
            let q1 = r.random_hpoint();
            let q2 = r.random_hpoint();
            let g1 = ModelGeodesic::new(&o, &ModelPoint::H(q1.clone()))?;
            let g2 = ModelGeodesic::new(&o, &ModelPoint::H(q2.clone()))?;
            let full = dist_h(&q1, &q2)?;
            let mut excess = 0.0f64;
            for j in 1..=9 {
                let t = j as f64 / 10.0;
                let (ModelPoint::H(a), ModelPoint::H(b)) = (g1.at(t)?, g2.at(t)?) else { unreachable!() };
                excess = excess.max(dist_h(&a, &b)? - t * full);
            }
            c.record("max(d(d1(t),d2(t)) - t d(d1(1),d2(1)), 0), 50 pairs", excess.max(0.0), 1e-9);

            let h1 = ModelGeodesic::new(&ModelPoint::H(r.random_hpoint()), &ModelPoint::H(r.random_hpoint()))?;
            let h2 = ModelGeodesic::new(&ModelPoint::H(r.random_hpoint()), &ModelPoint::H(r.random_hpoint()))?;
            let mut f = Vec::with_capacity(11);
            for j in 0..=10 {
                let t = j as f64 / 10.0;
                let (ModelPoint::H(a), ModelPoint::H(b)) = (h1.at(t)?, h2.at(t)?) else { unreachable!() };
                f.push(dist_h(&a, &b)?);
            }
            let mut gap = 0.0f64;
            for j in 1..10 {
                gap = gap.max(f[j] - 0.5 * (f[j - 1] + f[j + 1]));
            }
            c.record("midpoint convexity defect, independent geodesics", gap.max(0.0), 1e-7);
            Ok(())
        })();
        if let Err(e) = res {
            c.error(format!("trial {k}: {e}"));
        }
    }
    c
}

fn criterion_5() -> Criterion {
    let mut c = Criterion::new(5, "reflection correspondence");
    let tol = Tolerance::default();
    for k in 0..100 {
        let mut r = rng(5, k, n_of(k));
        let res = (|| -> hsgeom_core::Result<()> {
            let z = r.random_dpoint();
            let w = r.random_dpoint();
            let e = phi_d(&z)?;
            c.record("|Phi_D^-1(Phi_D(z)) - z|", phi_d_inv(&e)?.dist(&z), 1e-8);
            let ew = phi_d(&w)?;
            c.record("|Phi_D(Phi_D^-1(eps)) - eps|", phi_d(&phi_d_inv(&ew)?)?.eps().dist(ew.eps()), 1e-8);

            let g = r.random_group_d();
            let lhs = phi_d(&moebius_d(&g, &z, &tol)?)?;
            let rhs = &(&g * e.eps()) * &g.inverse()?;
            c.record("|Phi_D(g z) - g Phi_D(z) g^-1|", lhs.eps().dist(&rhs), 1e-8);

            let gh = r.random_group_h();
            let h = r.random_hpoint();
            let eh = phi_h(&h)?;
            let lhs_h = phi_h(&moebius_h(&gh, &h, &tol)?)?;
            let rhs_h = &(&gh * eh.eps()) * &gh.inverse()?;
            c.record("|Phi_H(g h) - g Phi_H(h) g^-1| / |g Phi_H g^-1|", lhs_h.eps().dist(&rhs_h) / rhs_h.spec_norm(), 1e-8);

            for (refl, rho) in [(&e, FormTag::D), (&ew, FormTag::D), (&lhs, FormTag::D), (&eh, FormTag::H)] {
                let sq = (refl.eps() * refl.eps()).dist(&Block2::identity(refl.n()));
                let scale = refl.eps().spec_norm().powi(2).max(1.0);
                c.record("|eps^2 - 1| / max(1, |eps|^2)", sq / scale, 1e-9);
                let min_eig = (&rho.rho(refl.n()) * refl.eps()).as_cmat().re_part().min_eigenvalue();
                c.record("min-eig(rho eps) <= 0 indicator", if min_eig > 0.0 { 0.0 } else { 1.0 }, 0.5);
            }

            let geo_d = ModelGeodesic::new(&ModelPoint::D(z.clone()), &ModelPoint::D(w.clone()))?;
            let geo_h = ModelGeodesic::new(&ModelPoint::H(h.clone()), &ModelPoint::H(r.random_hpoint()))?;
            for geo in [&geo_d, &geo_h] {
                for j in 1..=9 {
                    let d = geo.diagnostics_at(j as f64 / 10.0)?;
                    c.record("geodesic mid-sample reflection defect", d.square_residual.max(d.hermitian_residual), DRIFT_TOL);
                    c.record("geodesic mid-sample min-eig <= 0 indicator", if d.min_eig > 0.0 { 0.0 } else { 1.0 }, 0.5);
                }
            }
            Ok(())
        })();
        if let Err(e) = res {
            c.error(format!("trial {k}: {e}"));
        }
    }
    c
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::new(6, "closed-form geodesic families");
    let grid: Vec<f64> = (0..=20).map(|j| j as f64 / 20.0).collect();
    for n in [1usize, 2, 4] {
        for k in 0..20 {
            let mut r = rng(6, k + 100 * n as u64, n);
            let res = (|| -> hsgeom_core::Result<()> {
                let comm = r.random_commuting_family()?;
                let xc = comm.generator()?;
                let anti = r.random_anticommuting_family()?;
                let xa = anti.generator()?;
                let no_alpha = GeodesicFamilyParams::anticommuting(&CMat::zeros(n), &anti.beta)?;
                for &t in &grid {
                    let orbit_c = geodesic_from_i(&xc, t)?;
                    c.record("|commuting - e^{tX}.i|, n = 1,2,4", geodesic_commuting(&comm, t)?.dist(&orbit_c), 1e-8);
                    if let Some(res) = comm.circle_residual(t)? {
                        c.record("|(Re d - mu)^2 + (Im d)^2 - (mu^2 + 1)|", res, 1e-8);
                    }
                    let closed = geodesic_anticommuting(&anti, t)?;
                    c.record("|anticommuting - e^{tX}.i|", closed.dist(&geodesic_from_i(&xa, t)?), 1e-8);
                    let re_free = closed.re().dist(&geodesic_anticommuting(&no_alpha, t)?.re());
                    c.record("|Re d(alpha, beta) - Re d(0, beta)|", re_free, 1e-10);
                }
                Ok(())
            })();
            if let Err(e) = res {
                c.error(format!("n {n} trial {k}: {e}"));
            }
        }
    }
    c
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::new(7, "covariant derivative");
    for k in 0..40 {
        let n = n_of(k);
        let mut r = rng(7, k, n);
        let res = (|| -> hsgeom_core::Result<()> {
            let x = r.random_horizontal(1.0);
            let target = r.uniform(0.1, 1.0);
            let x = x.scaled(target / x.value.spec_norm().max(1e-12));
            let orbit = |t: f64| geodesic_from_i(&x, t);
            let a = PosPoint::new(r.random_pd())?;
            let b = PosPoint::new(r.random_pd())?;
            let curve = |t: f64| geodesic_pos(&a, &b, t);
            for t in [0.2, 0.5, 0.8] {
                c.record("|D delta'/dt| on e^{tX}.i, step 1e-3", covariant_h_along(&orbit, t, 1e-3)?, 1e-4);
                c.record("|D gamma'/dt| on cone geodesics", covariant_ambient_along(&curve, t, 1e-3)?, 1e-5);
            }
            let chi = r.random_hermitian();
            let ups = r.random_hermitian();
            let back = d_pi_i(&kappa_i(&chi, &ups)?);
            c.record("|d(pi_i)(kappa_i(zeta)) - zeta|", back.dist(&(&chi + &ups.scale(I))), 1e-12);
            Ok(())
        })();
        if let Err(e) = res {
            c.error(format!("trial {k}: {e}"));
        }
    }
    c
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::new(8, "geodesic calculus on the cone");
    for k in 0..50 {
        let mut r = rng(8, k, n_of(k));
        let res = (|| -> hsgeom_core::Result<()> {
            let a = PosPoint::new(r.random_pd())?;
            let b = PosPoint::new(r.random_pd())?;
            let ends = geodesic_pos(&a, &b, 0.0)?.dist(&a).max(geodesic_pos(&a, &b, 1.0)?.dist(&b));
            c.record("endpoint error", ends, 1e-10);
            let dab = dist_pos(&a, &b)?;
            let x = log_pos(&a, &b)?;
            for j in 0..=10 {
                let t = j as f64 / 10.0;
                let g = geodesic_pos(&a, &b, t)?;
                c.record("|d(a, gamma(t)) - t d(a,b)|", (dist_pos(&a, &g)? - t * dab).abs(), 1e-9);
                c.record("|exp_a(t log_a b) - gamma(t)|", exp_pos(&a, &x.scale_real(t))?.dist(&g), 1e-8);
            }
            Ok(())
        })();
        if let Err(e) = res {
            c.error(format!("trial {k}: {e}"));
        }
    }
    let one = PosPoint::identity(2);
    let b = PosPoint::new(CMat::from_real_diag(&[4.0, 9.0])).unwrap();
    let mid = geodesic_pos(&one, &b, 0.5).unwrap();
    c.record("midpoint of 1, diag(4,9) vs diag(2,3)", mid.matrix().dist(&CMat::from_real_diag(&[2.0, 3.0])), 1e-12);
    let quarter = geodesic_pos(&one, &b, 0.25).unwrap();
    let hand = CMat::from_real_diag(&[2f64.sqrt(), 3f64.sqrt()]);
    c.record("quarter point vs diag(2^(1/2), 3^(1/2))", quarter.matrix().dist(&hand), 1e-12);
    let two = PosPoint::new(CMat::real_scalar(3, 2.0)).unwrap();
    c.record("|d(1, 2) - log 2|", (dist_pos(&PosPoint::identity(3), &two).unwrap() - LN_2).abs(), 1e-14);
    c
}

fn criterion_9() -> Criterion {
    let mut c = Criterion::new(9, "group structure");
    let tol = Tolerance::new(1e-9, Tolerance::default().eps_pos).unwrap();
    for k in 0..100 {
        let n = n_of(k);
        let mut r = rng(9, k, n);
        let res = (|| -> hsgeom_core::Result<()> {
            let g = r.random_group_h();
            let (u, p) = polar_in_group(FormTag::H, &g, &tol)?;
            c.record("polar factors: group residual", group_residual(FormTag::H, &u).max(group_residual(FormTag::H, &p)), 1e-9);

            let h = r.random_hpoint();
            let w = transitivity_witness(&h)?;
            let image = moebius_h(&w, &HPoint::i_unit(n), &tol)?;
            c.record("|w(h) . i - h|, 100 h", image.dist(&h), 1e-9);

            let v = r.random_hermitian();
            let b = r.random_hermitian();
            let vertical = LieElem::vertical(&v.scale(I), &b, &tol)?;
            let ud = hsgeom_core::block2::cayley_conjugate(&exp_chart(&vertical, &tol)?);
            let (u1, u2) = unitary_split(&ud, &tol)?;
            c.record("|diag(u1, u2) - u|", Block2::diag(&u1, &u2)?.dist(&ud), 1e-10);
            Ok(())
        })();
        if let Err(e) = res {
            c.error(format!("trial {k}: {e}"));
        }
    }
    c
}

fn main() -> ExitCode {
    let criteria = [
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
    ];
    let mut all = true;
    for c in &criteria {
        all &= c.report();
    }
    println!("{}", if all { "acceptance: all 9 criteria passed" } else { "acceptance: FAILED" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
