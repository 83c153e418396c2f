//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! with its worst observed deviation.
//!
//! Run with `cargo test --test acceptance -- --nocapture` to see the lines.

use std::f64::consts::{FRAC_PI_4, PI};
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use magnon_torus::config::RunConfig;
use magnon_torus::lattice::{KPoint, LatticeSpec};
use magnon_torus::magnon::{build_magnon_params, gauge_fix, CouplingSet, Regime};
use magnon_torus::oracle::{
    build_splitting_sector, build_squeezing_sector, diagonalize, entropy_from_vector,
};
use magnon_torus::runner::run_sweep;
use magnon_torus::splitting::{
    splitting_angle, splitting_dispersions, splitting_eigenstate, splitting_entropy,
};
use magnon_torus::squeezing::{
    squeezing_eigenstate, squeezing_entropy, squeezing_parameter, SqueezingSolution,
};
use magnon_torus::toric::{classify, curvature, dual_of, orbit_point, ToricClass};
use magnon_torus::Error;

fn report(name: &str, pass: bool, detail: &str) {
    println!(
        "acceptance {name}: {} ({detail})",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{name}: {detail}");
}

/// Align b to a's global sign (largest-|a| component) and return the max
/// componentwise deviation.
fn deviation_up_to_sign(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    let lead = a
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.abs().partial_cmp(&y.1.abs()).unwrap())
        .map(|(i, _)| i)
        .unwrap();
    let flip = if (a[lead] >= 0.0) == (b[lead] >= 0.0) {
        1.0
    } else {
        -1.0
    };
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - flip * y).abs())
        .fold(0.0, f64::max)
}

/// (χ̃, Δ) pair realizing the angle θ at unit coupling scale.
fn chi_delta_for(theta: f64) -> (f64, f64) {
    if theta == 0.0 {
        (0.0, 1.0)
    } else if (theta.abs() - FRAC_PI_4).abs() < 1e-15 {
        (1.0, 0.0)
    } else {
        (1.0, 1.0 / -(2.0 * theta).tan())
    }
}

#[test]
fn criterion_1_splitting_oracle_equivalence() {
    let start = Instant::now();
    let omega = 2.0;
    let thetas = [0.0, -PI / 8.0, -FRAC_PI_4, 0.3, -0.6];

    let mut dev_energy = 0.0_f64;
    let mut dev_amp = 0.0_f64;
    let mut dev_entropy = 0.0_f64;

    for &theta in &thetas {
        let (chi, delta) = chi_delta_for(theta);
        assert!((splitting_angle(chi, delta) - theta).abs() < 1e-12);
        let (w_alpha, w_beta) = splitting_dispersions(theta, omega, delta, chi);

        for total in 0..=6u32 {
            let sector = build_splitting_sector(total, omega + delta, omega - delta, chi);
            let eig = diagonalize(&sector).unwrap();

            let mut states: Vec<(f64, u32, u32)> = (0..=total)
                .map(|m| {
                    (
                        m as f64 * w_alpha + (total - m) as f64 * w_beta,
                        m,
                        total - m,
                    )
                })
                .collect();
            states.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());

            for (idx, &(energy, m, n)) in states.iter().enumerate() {
                dev_energy = dev_energy.max((eig[idx].0 - energy).abs());

                let expansion = splitting_eigenstate(m, n, theta).unwrap();
                let mut closed = vec![0.0; sector.basis.len()];
                for t in &expansion.terms {
                    let pos = sector
                        .basis
                        .iter()
                        .position(|&(a, b)| (a, b) == (t.a_count, t.b_count))
                        .unwrap();
                    closed[pos] = t.amplitude;
                }
                dev_amp = dev_amp.max(deviation_up_to_sign(&closed, &eig[idx].1));
                dev_entropy = dev_entropy.max(
                    (splitting_entropy(&expansion)
                        - entropy_from_vector(&sector.basis, &eig[idx].1))
                    .abs(),
                );
            }
        }
    }

    let elapsed = start.elapsed().as_secs_f64();
    let pass = dev_energy <= 1e-9 && dev_amp <= 1e-9 && dev_entropy <= 1e-8 && elapsed < 5.0;
    report(
        "1 splitting-oracle-equivalence",
        pass,
        &format!(
            "energy {dev_energy:.2e} ≤ 1e-9, amplitude {dev_amp:.2e} ≤ 1e-9, \
             entropy {dev_entropy:.2e} ≤ 1e-8, {elapsed:.2}s < 5s"
        ),
    );
}

#[test]
fn criterion_2_squeezing_oracle_equivalence() {
    let start = Instant::now();
    let (omega, delta) = (2.0, 0.3);
    let cutoff = 80usize;

    let mut dev_amp = 0.0_f64;
    let mut dev_entropy = 0.0_f64;
    let mut dev_vacuum = 0.0_f64;

    for &gamma in &[0.2, 0.6, 0.9] {
        let lambda = gamma * omega;
        let sol = SqueezingSolution::solve(omega, delta, lambda).unwrap();
        let zero_point = (omega * omega - lambda * lambda).sqrt() - omega;

        for m in 0..=2u32 {
            for n in 0..=2u32 {
                let l = m.min(n) as usize;
                let dl = m.abs_diff(n);
                let (w_a, w_b) = if m >= n {
                    (omega + delta, omega - delta)
                } else {
                    (omega - delta, omega + delta)
                };
                let sector = build_squeezing_sector(dl, cutoff, w_a, w_b, lambda);
                let eig = diagonalize(&sector).unwrap();

                let energy = zero_point + m as f64 * sol.omega_alpha + n as f64 * sol.omega_beta;
                assert!(
                    (eig[l].0 - energy).abs() < 1e-6,
                    "sector energy pairing broke: {} vs {energy}",
                    eig[l].0
                );

                let expansion = squeezing_eigenstate(m, n, &sol, cutoff).unwrap();
                let closed: Vec<f64> = expansion.terms.iter().map(|t| t.amplitude).collect();
                dev_amp = dev_amp.max(deviation_up_to_sign(&closed, &eig[l].1));
                dev_entropy = dev_entropy.max(
                    (squeezing_entropy(&expansion) - entropy_from_vector(&sector.basis, &eig[l].1))
                        .abs(),
                );
            }
        }

        // Vacuum entropy against the closed form
        // cosh²r ln cosh²r − sinh²r ln sinh²r.
        let vacuum = squeezing_eigenstate(0, 0, &sol, cutoff).unwrap();
        let r = sol.r_squeeze;
        let (c2, s2) = (r.cosh().powi(2), r.sinh().powi(2));
        let closed_form = c2 * c2.ln() - s2 * s2.ln();
        dev_vacuum = dev_vacuum.max((squeezing_entropy(&vacuum) - closed_form).abs());
    }

    let elapsed = start.elapsed().as_secs_f64();
    let pass = dev_amp <= 1e-6 && dev_entropy <= 1e-6 && dev_vacuum <= 1e-10 && elapsed < 10.0;
    report(
        "2 squeezing-oracle-equivalence",
        pass,
        &format!(
            "amplitude {dev_amp:.2e} ≤ 1e-6, entropy {dev_entropy:.2e} ≤ 1e-6, \
             vacuum {dev_vacuum:.2e} ≤ 1e-10, {elapsed:.2}s < 10s"
        ),
    );
}

/// Entropies of one configuration at one k-point, (m, n) ∈ {(0,0),(1,0),(1,1)}.
fn entropies_at(
    couplings: &CouplingSet,
    lattice: &LatticeSpec,
    k: &KPoint,
    cutoff: usize,
) -> Vec<f64> {
    let gauge = gauge_fix(&build_magnon_params(couplings, lattice, k).unwrap());
    let theta = splitting_angle(gauge.chi_tilde, gauge.delta);
    let sol = SqueezingSolution::solve(gauge.omega, gauge.delta, gauge.lambda_tilde).unwrap();
    let mut out = Vec::new();
    for (m, n) in [(0u32, 0u32), (1, 0), (1, 1)] {
        out.push(splitting_eigenstate(m, n, theta).unwrap().entropy);
        out.push(squeezing_eigenstate(m, n, &sol, cutoff).unwrap().entropy);
    }
    out
}

#[test]
fn criterion_3_duality() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7042_u64);
    let k_grid: Vec<KPoint> = (0..7).map(|i| KPoint::chain(PI * i as f64 / 6.0)).collect();

    let mut dev_params = 0.0_f64;
    let mut dev_entropy = 0.0_f64;
    let mut dev_roundtrip = 0.0_f64;

    for _ in 0..10 {
        let spin_a = if rng.random_bool(0.5) { 1.0 } else { 1.5 };
        let lattice = LatticeSpec::chain(spin_a, 1.0);
        let r1: f64 = rng.random_range(0.5..1.5);
        let r2: f64 = rng.random_range(0.05..0.4);
        let phi: f64 = rng.random_range(-0.3..0.3);
        let psi: f64 = rng.random_range(0.0..2.0 * PI);
        let (j, d, r, k_sym) = orbit_point(Regime::Fm, r1, r2, phi, psi);
        let source = CouplingSet {
            exchange: j,
            dm: d,
            exchange_anisotropy: r,
            symmetric_exchange: k_sym,
            exchange_z: rng.random_range(-1.2..-0.6),
            zeeman: rng.random_range(0.0..0.4),
            regime: Regime::Fm,
        };
        source.validate().unwrap();

        let dual = dual_of(&source, &lattice).unwrap();
        assert_eq!(dual.regime, Regime::Afm);
        dual.validate().unwrap();

        for k in &k_grid {
            let gs = gauge_fix(&build_magnon_params(&source, &lattice, k).unwrap());
            let gd = gauge_fix(&build_magnon_params(&dual, &lattice, k).unwrap());
            dev_params = dev_params
                .max((gs.omega - gd.omega).abs())
                .max((gs.delta - gd.delta).abs())
                .max((gs.chi_tilde - gd.chi_tilde).abs())
                .max((gs.lambda_tilde - gd.lambda_tilde).abs());

            let es = entropies_at(&source, &lattice, k, 80);
            let ed = entropies_at(&dual, &lattice, k, 80);
            for (a, b) in es.iter().zip(&ed) {
                dev_entropy = dev_entropy.max((a - b).abs());
            }
        }

        // dual ∘ dual recovers the toric radii and (ω, Δ).
        let back = dual_of(&dual, &lattice).unwrap();
        assert_eq!(back.regime, Regime::Fm);
        let (tc0, tc2) = (classify(&source), classify(&back));
        dev_roundtrip = dev_roundtrip
            .max((tc0.radius_1 - tc2.radius_1).abs())
            .max((tc0.radius_2 - tc2.radius_2).abs());
        let k0 = KPoint::chain(0.9);
        let p0 = build_magnon_params(&source, &lattice, &k0).unwrap();
        let p2 = build_magnon_params(&back, &lattice, &k0).unwrap();
        dev_roundtrip = dev_roundtrip
            .max((p0.omega - p2.omega).abs())
            .max((p0.delta - p2.delta).abs());
    }

    let pass = dev_params <= 1e-12 && dev_entropy <= 1e-10 && dev_roundtrip <= 1e-12;
    report(
        "3 duality",
        pass,
        &format!(
            "gauge params {dev_params:.2e} ≤ 1e-12, entropies {dev_entropy:.2e} ≤ 1e-10, \
             round trip {dev_roundtrip:.2e} ≤ 1e-12"
        ),
    );
}

#[test]
fn criterion_4_toric_orbit_invariance() {
    let lattice = LatticeSpec::chain(1.0, 1.0);
    let k = KPoint::chain(PI / 3.0);
    let (r1, r2) = (1.0, 0.5);
    let (j_z, b) = (-1.0, 0.1);

    let mut reference: Option<Vec<f64>> = None;
    let mut feasible = 0usize;
    let mut dev = 0.0_f64;

    for i in 0..16 {
        for j in 0..16 {
            let phi = -PI + 2.0 * PI * i as f64 / 16.0;
            let psi = 2.0 * PI * j as f64 / 16.0;
            let (jc, dc, rc, kc) = orbit_point(Regime::Fm, r1, r2, phi, psi);
            let couplings = CouplingSet {
                exchange: jc,
                dm: dc,
                exchange_anisotropy: rc,
                symmetric_exchange: kc,
                exchange_z: j_z,
                zeeman: b,
                regime: Regime::Fm,
            };
            if couplings.validate().is_err() {
                continue;
            }
            feasible += 1;

            let gauge = gauge_fix(&build_magnon_params(&couplings, &lattice, &k).unwrap());
            let mut observables = vec![
                gauge.omega,
                gauge.delta,
                gauge.chi_tilde,
                gauge.lambda_tilde,
            ];
            observables.extend(entropies_at(&couplings, &lattice, &k, 80));

            match &reference {
                None => reference = Some(observables),
                Some(base) => {
                    for (a, b) in base.iter().zip(&observables) {
                        dev = dev.max((a - b).abs());
                    }
                }
            }
        }
    }

    let pass = feasible >= 80 && dev <= 1e-10;
    report(
        "4 toric-orbit-invariance",
        pass,
        &format!("{feasible}/256 feasible grid points, spread {dev:.2e} ≤ 1e-10"),
    );
}

/// Embedding of the flat torus in the 4-D coupling space.
fn embed(r1: f64, r2: f64, u: f64, v: f64) -> [f64; 4] {
    [r1 * u.cos(), r1 * u.sin(), r2 * v.cos(), r2 * v.sin()]
}

fn sub4(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]]
}

fn add4(a: [f64; 4], b: [f64; 4]) -> [f64; 4] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]]
}

fn dot4(a: [f64; 4], b: [f64; 4]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

fn scale4(a: [f64; 4], s: f64) -> [f64; 4] {
    [a[0] * s, a[1] * s, a[2] * s, a[3] * s]
}

/// Finite-difference Gauss and mean curvature of the embedded surface at
/// (u, v): tangent frame from first differences, second fundamental form
/// from second differences projected onto the normal space.
fn fd_curvatures(r1: f64, r2: f64, u: f64, v: f64) -> (f64, f64) {
    let h = 1e-4;
    let x = embed(r1, r2, u, v);
    let xu = scale4(
        sub4(embed(r1, r2, u + h, v), embed(r1, r2, u - h, v)),
        0.5 / h,
    );
    let xv = scale4(
        sub4(embed(r1, r2, u, v + h), embed(r1, r2, u, v - h)),
        0.5 / h,
    );
    let xuu = scale4(
        sub4(
            add4(embed(r1, r2, u + h, v), embed(r1, r2, u - h, v)),
            scale4(x, 2.0),
        ),
        1.0 / (h * h),
    );
    let xvv = scale4(
        sub4(
            add4(embed(r1, r2, u, v + h), embed(r1, r2, u, v - h)),
            scale4(x, 2.0),
        ),
        1.0 / (h * h),
    );
    let xuv = scale4(
        sub4(
            sub4(embed(r1, r2, u + h, v + h), embed(r1, r2, u + h, v - h)),
            sub4(embed(r1, r2, u - h, v + h), embed(r1, r2, u - h, v - h)),
        ),
        0.25 / (h * h),
    );

    // Orthonormal tangent frame (Gram–Schmidt).
    let e1 = scale4(xu, 1.0 / dot4(xu, xu).sqrt());
    let mut e2 = sub4(xv, scale4(e1, dot4(xv, e1)));
    e2 = scale4(e2, 1.0 / dot4(e2, e2).sqrt());

    let normal_part = |w: [f64; 4]| -> [f64; 4] {
        sub4(sub4(w, scale4(e1, dot4(w, e1))), scale4(e2, dot4(w, e2)))
    };
    let ii_uu = normal_part(xuu);
    let ii_vv = normal_part(xvv);
    let ii_uv = normal_part(xuv);

    let e_metric = dot4(xu, xu);
    let f_metric = dot4(xu, xv);
    let g_metric = dot4(xv, xv);
    let det = e_metric * g_metric - f_metric * f_metric;

    let gauss = (dot4(ii_uu, ii_vv) - dot4(ii_uv, ii_uv)) / det;
    // Mean curvature vector: ½ g^{ab} II_ab.
    let inv_e = g_metric / det;
    let inv_g = e_metric / det;
    let inv_f = -f_metric / det;
    let hv = scale4(
        add4(
            add4(scale4(ii_uu, inv_e), scale4(ii_uv, 2.0 * inv_f)),
            scale4(ii_vv, inv_g),
        ),
        0.5,
    );
    (gauss, dot4(hv, hv).sqrt())
}

#[test]
fn criterion_5_curvature_swap_invariance() {
    let pairs = [(1.0, 1.0), (5.0, 1.0), (0.3, 2.0), (1.7, 0.4), (2.5, 2.5)];
    let mut dev_fd_gauss = 0.0_f64;
    let mut dev_fd_mean = 0.0_f64;
    let mut exact_swap = true;

    for &(r1, r2) in &pairs {
        let a = curvature(&ToricClass {
            radius_1: r1,
            radius_2: r2,
            regime: Regime::Fm,
        })
        .unwrap();
        let b = curvature(&ToricClass {
            radius_1: r2,
            radius_2: r1,
            regime: Regime::Afm,
        })
        .unwrap();
        exact_swap &= a.mean_curvature_magnitude == b.mean_curvature_magnitude;
        exact_swap &= a.gauss_curvature == 0.0 && b.gauss_curvature == 0.0;

        for &(u, v) in &[(0.3, 1.1), (2.0, 4.9), (5.5, 0.7)] {
            let (gauss_fd, mean_fd) = fd_curvatures(r1, r2, u, v);
            dev_fd_gauss = dev_fd_gauss.max(gauss_fd.abs());
            dev_fd_mean = dev_fd_mean.max((mean_fd - a.mean_curvature_magnitude).abs());
        }
    }

    let pass = exact_swap && dev_fd_gauss <= 1e-6 && dev_fd_mean <= 1e-5;
    report(
        "5 curvature-swap-invariance",
        pass,
        &format!(
            "swap exact: {exact_swap}, FD gauss {dev_fd_gauss:.2e} ≤ 1e-6, \
             FD mean deviation {dev_fd_mean:.2e}"
        ),
    );
}

#[test]
fn criterion_6_limits_and_identities() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x6021_u64);

    // Δ = 0 branch honored.
    let theta0 = splitting_angle(0.7, 0.0);
    let branch_ok = (theta0.abs() - FRAC_PI_4).abs() < 1e-15;

    let mut dev_theta = 0.0_f64;
    let mut dev_r = 0.0_f64;
    for _ in 0..100 {
        let gamma: f64 = {
            let g: f64 = rng.random_range(-10.0..10.0);
            if g.abs() < 1e-3 {
                1.0
            } else {
                g
            }
        };
        let (chi, delta) = if gamma > 0.0 {
            (gamma, 1.0)
        } else {
            (-gamma, -1.0)
        };
        dev_theta = dev_theta.max((splitting_angle(chi, delta) + 0.5 * gamma.atan()).abs());

        let gt: f64 = rng.random_range(0.001..0.999);
        let r = squeezing_parameter(gt, 1.0).unwrap();
        dev_r = dev_r.max((r - 0.5 * gt.atanh()).abs());
    }

    let unstable_errors = matches!(squeezing_parameter(1.0, 1.0), Err(Error::Unstable(_)))
        && matches!(squeezing_parameter(1.7, 1.0), Err(Error::Unstable(_)));

    // Normalization of emitted expansions.
    let mut dev_norm = 0.0_f64;
    for (m, n) in [(0u32, 0u32), (1, 0), (3, 2), (6, 6), (5, 7)] {
        let e = splitting_eigenstate(m, n, rng.random_range(-0.7..0.7)).unwrap();
        dev_norm = dev_norm.max((e.norm_sq() - 1.0).abs());
    }
    let sol = SqueezingSolution::solve(2.0, 0.2, 1.4).unwrap();
    for (m, n) in [(0u32, 0u32), (2, 0), (2, 2), (6, 6)] {
        let e = squeezing_eigenstate(m, n, &sol, 120).unwrap();
        dev_norm = dev_norm.max((e.norm_sq() - 1.0).abs());
    }

    let pass =
        branch_ok && dev_theta <= 1e-12 && dev_r <= 1e-12 && unstable_errors && dev_norm <= 1e-10;
    report(
        "6 limits-and-identities",
        pass,
        &format!(
            "Δ=0 branch |θ|=π/4: {branch_ok}, θ identity {dev_theta:.2e} ≤ 1e-12, \
             r identity {dev_r:.2e} ≤ 1e-12, instability errors: {unstable_errors}, \
             norms {dev_norm:.2e} ≤ 1e-10"
        ),
    );
}

#[test]
fn criterion_7_sweep_determinism() {
    let start = Instant::now();
    let mut mn_lines = String::new();
    for m in 0..=2 {
        for n in 0..=2 {
            mn_lines.push_str(&format!("mn = {m}, {n}\n"));
        }
    }
    let text = format!(
        "
[lattice]
preset = chain

[couplings]
regime = FM
J = -1.0
D = 0.2
r = -0.1
K = 0.05
J_z = -1.0
B = 0.1

[kgrid]
path = default
count = 64

[run]
{mn_lines}cutoff = 96
"
    );
    let cfg = RunConfig::parse(&text).unwrap();

    let serial = run_sweep(&cfg, 1).unwrap();
    let parallel = run_sweep(&cfg, 8).unwrap();

    let identical = serial.text == parallel.text;
    let rows = serial.text.lines().count();
    let elapsed = start.elapsed().as_secs_f64();
    let pass = identical && rows == 64 * 9 + 1 && elapsed < 5.0;
    report(
        "7 sweep-determinism",
        pass,
        &format!(
            "serial == parallel: {identical}, {rows} lines (expect {}), {elapsed:.2}s < 5s",
            64 * 9 + 1
        ),
    );
}
