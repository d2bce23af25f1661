//! Acceptance criteria, one line of output per criterion.
//!
//! Runs as a plain binary so the report is printed by `cargo test`; exits
//! with status 1 if any criterion fails.
//!
//! Scaling conventions: moduli points are compared with
//! `ModuliPoint::max_rel_diff` (complex entries relative to `max(1, |x|)`,
//! the angle absolutely), `F` is divided by `1 + |X1|^2 + |X2|^2`, normalized
//! Gram matrices are compared entrywise relative to `max(1, |g14|, |g24|)`,
//! and determinants relative to the sum of the absolute values of the terms
//! of the closed-form expression.

use std::f64::consts::{FRAC_PI_2, PI};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use chmoduli_core::moduli::tau_of_lifts;
use chmoduli_core::sampling::{
    random_basic_variety_point, random_c_plane_point, seeded_rng, QuadrupleKind,
};
use chmoduli_core::{
    certify_noninjectivity, classify, congruent_antiholomorphic, congruent_holomorphic,
    counterexample_pair, det_face, det_from_moduli, det_gram, face_dets_from_moduli,
    gram_from_moduli, gram_of, normalize, pp_point, random_isometry, random_quadruple, reconstruct,
    tau, theta, variety_residual, Complex64, Face, ModuliPoint, NormalizedGram, NumericConfig,
    Quadruple,
};
use rand::Rng;

type Check = std::result::Result<String, String>;

fn rel_residual(m: &ModuliPoint) -> f64 {
    variety_residual(m) / m.scale()
}

fn gram_rel_diff(a: &NormalizedGram, b: &NormalizedGram) -> f64 {
    let scale = [a.g14(), a.g24(), b.g14(), b.g24()]
        .iter()
        .fold(1.0f64, |s, x| s.max(x.norm()));
    a.max_abs_diff(b) / scale
}

fn random_scale<R: Rng>(rng: &mut R) -> Complex64 {
    let r: f64 = rng.random_range(-2.0..2.0);
    Complex64::from_polar(r.exp(), rng.random_range(0.0..2.0 * PI))
}

fn quadruples(n: usize, kind: QuadrupleKind, count: usize, seed: u64) -> Vec<Quadruple> {
    (0..count as u64)
        .map(|i| random_quadruple(n, kind, &mut seeded_rng(seed, i)).expect("sampling"))
        .collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn counterexample_reproduction() -> Check {
    let cfg = NumericConfig::default();
    let tol = 1e-10;
    for t in [2.0, 3.0, 0.5, 10.0] {
        let (p, q) = counterexample_pair(t, &cfg).map_err(|e| e.to_string())?;
        for (quad, a) in [(&p, -FRAC_PI_2), (&q, FRAC_PI_2)] {
            let x = pp_point(quad, &cfg).map_err(|e| e.to_string())?;
            let m = tau(quad, &cfg).map_err(|e| e.to_string())?;
            let expected = [1.0 / t, (t - 1.0) / t, 1.0 - t];
            let got = [x.x1, x.x2, x.x3];
            for (g, e) in got.iter().zip(expected) {
                ensure((g - e).norm() <= tol, || {
                    format!("t={t}: cross-ratio {g} != {e}")
                })?;
            }
            ensure((m.a - a).abs() <= tol, || {
                format!("t={t}: A = {} != {a}", m.a)
            })?;
        }
        let holo = congruent_holomorphic(&p, &q, &cfg).map_err(|e| e.to_string())?;
        let anti = congruent_antiholomorphic(&p, &q, &cfg).map_err(|e| e.to_string())?;
        ensure(!holo && anti, || {
            format!("t={t}: holomorphic {holo}, anti-holomorphic {anti}")
        })?;
        certify_noninjectivity(t, &cfg).map_err(|e| format!("t={t}: {e}"))?;
    }
    Ok("t in {2, 3, 1/2, 10}".into())
}

fn max_residual(quads: &[Quadruple], signed: bool) -> std::result::Result<f64, String> {
    let cfg = NumericConfig::default();
    let mut worst = f64::NEG_INFINITY;
    for p in quads {
        let m = tau(p, &cfg).map_err(|e| e.to_string())?;
        let r = rel_residual(&m);
        worst = worst.max(if signed { r } else { r.abs() });
    }
    Ok(worst)
}

fn variety_equality_in_ch2() -> Check {
    let worst = max_residual(&quadruples(2, QuadrupleKind::Generic, 10_000, 101), false)?;
    ensure(worst < 1e-7, || format!("max |F|/scale = {worst:e}"))?;
    Ok(format!("max |F|/scale = {worst:.2e} over 10000"))
}

fn variety_inequality_in_ch3() -> Check {
    let worst = max_residual(&quadruples(3, QuadrupleKind::Generic, 10_000, 102), true)?;
    ensure(worst <= 1e-7, || format!("max F/scale = {worst:e} in CH^3"))?;
    let flat = max_residual(&quadruples(3, QuadrupleKind::Subspace2, 1_000, 103), false)?;
    ensure(flat < 1e-7, || {
        format!("max |F|/scale = {flat:e} on subspace2")
    })?;
    Ok(format!(
        "max F/scale = {worst:.2e}; subspace2 max |F|/scale = {flat:.2e}"
    ))
}

fn round_trip() -> Check {
    let cfg = NumericConfig::default();
    let mut worst_gram = 0.0f64;
    for p in quadruples(2, QuadrupleKind::Generic, 1_000, 104) {
        let m = tau(&p, &cfg).map_err(|e| e.to_string())?;
        let lifts = reconstruct(&m, 2, &cfg).map_err(|e| format!("{m:?}: {e}"))?;
        let rebuilt = normalize(&gram_of(&lifts, &cfg).map_err(|e| e.to_string())?, &cfg)
            .map_err(|e| e.to_string())?;
        let original = normalize(&gram_of(&p.lifts(), &cfg).map_err(|e| e.to_string())?, &cfg)
            .map_err(|e| e.to_string())?;
        worst_gram = worst_gram.max(gram_rel_diff(&rebuilt, &original));
    }
    ensure(worst_gram <= 1e-7, || {
        format!("normal forms differ by {worst_gram:e}")
    })?;

    let mut worst_tau = 0.0f64;
    for i in 0..1_000 {
        let m = random_basic_variety_point(&mut seeded_rng(105, i)).map_err(|e| e.to_string())?;
        let lifts = reconstruct(&m, 2, &cfg).map_err(|e| format!("{m:?}: {e}"))?;
        let back = tau_of_lifts(&lifts, &cfg).map_err(|e| e.to_string())?;
        worst_tau = worst_tau.max(back.max_rel_diff(&m));
    }
    ensure(worst_tau <= 1e-7, || {
        format!("tau(reconstruct(m)) differs by {worst_tau:e}")
    })?;
    Ok(format!("gram {worst_gram:.2e}, moduli {worst_tau:.2e}"))
}

fn normal_form_uniqueness() -> Check {
    let cfg = NumericConfig::default();
    let mut worst = 0.0f64;
    for (i, p) in quadruples(2, QuadrupleKind::Generic, 1_000, 106)
        .iter()
        .enumerate()
    {
        let gram = gram_of(&p.lifts(), &cfg).map_err(|e| e.to_string())?;
        let reference = normalize(&gram, &cfg).map_err(|e| e.to_string())?;
        let mut rng = seeded_rng(107, i as u64);
        for _ in 0..10 {
            let lambdas: Vec<Complex64> = (0..4).map(|_| random_scale(&mut rng)).collect();
            let scaled = gram.rescaled(&lambdas).map_err(|e| e.to_string())?;
            let g = normalize(&scaled, &cfg).map_err(|e| e.to_string())?;
            worst = worst.max(gram_rel_diff(&g, &reference));
        }
    }
    ensure(worst <= 1e-9, || {
        format!("normal forms differ by {worst:e}")
    })?;
    Ok(format!("max difference {worst:.2e} over 10000 rescalings"))
}

fn det_scale(g: &NormalizedGram) -> f64 {
    let (g13, g14, g24) = (g.g13(), g.g14(), g.g24());
    2.0 * g14.norm()
        + 2.0 * g13.norm() * g24.norm()
        + 2.0 * g13.norm() * g14.norm() * g24.norm()
        + g14.norm_sqr()
        + g24.norm_sqr()
        + 1.0
}

fn face_scale(g: &NormalizedGram, face: Face) -> f64 {
    let (g13, g14, g24) = (g.g13(), g.g14(), g.g24());
    2.0 * match face {
        Face::F123 => g13.norm(),
        Face::F124 => g24.norm() * g14.norm(),
        Face::F134 => g13.norm() * g14.norm(),
        Face::F234 => g24.norm(),
    }
}

fn determinant_formulas() -> Check {
    let mut worst = 0.0f64;
    let mut record = |formula: f64, direct: f64, scale: f64| {
        worst = worst.max((formula - direct).abs() / scale.max(direct.abs()));
    };
    for i in 0..10_000 {
        let mut rng = seeded_rng(108, i);
        let c = |rng: &mut rand_chacha::ChaCha8Rng| {
            Complex64::new(rng.random_range(-3.0..3.0), rng.random_range(-3.0..3.0))
        };

        // a random normalized Gram matrix
        let g13 = Complex64::from_polar(1.0, rng.random_range(0.0..2.0 * PI));
        let g = NormalizedGram::new(g13, c(&mut rng), c(&mut rng), &NumericConfig::default())
            .map_err(|e| e.to_string())?;
        let full = g.to_gram();
        record(det_gram(&g), full.determinant(), det_scale(&g));
        for face in Face::ALL {
            let idx = face.indices().map(|k| k - 1);
            record(
                det_face(&g, face),
                full.submatrix(idx).determinant(),
                face_scale(&g, face),
            );
        }

        // a random moduli point
        let m = ModuliPoint::new(
            c(&mut rng),
            c(&mut rng),
            rng.random_range(-FRAC_PI_2..FRAC_PI_2),
        );
        let g = gram_from_moduli(&m).map_err(|e| e.to_string())?;
        let full = g.to_gram();
        record(det_from_moduli(&m), full.determinant(), det_scale(&g));
        for (face, value) in Face::ALL.into_iter().zip(face_dets_from_moduli(&m)) {
            let idx = face.indices().map(|k| k - 1);
            record(
                value,
                full.submatrix(idx).determinant(),
                face_scale(&g, face),
            );
        }
    }
    ensure(worst <= 1e-9, || format!("max relative error {worst:e}"))?;
    Ok(format!(
        "max relative error {worst:.2e} over 100000 determinants"
    ))
}

fn invariance() -> Check {
    let cfg = NumericConfig::default();
    let mut worst = 0.0f64;
    for (i, p) in quadruples(2, QuadrupleKind::Generic, 1_000, 109)
        .iter()
        .enumerate()
    {
        let mut rng = seeded_rng(110, i as u64);
        let m = tau(p, &cfg).map_err(|e| e.to_string())?;
        let x = pp_point(p, &cfg).map_err(|e| e.to_string())?;

        let g = random_isometry(2, &mut rng).map_err(|e| e.to_string())?;
        let moved = p.transform(&g, &cfg).map_err(|e| e.to_string())?;
        worst = worst.max(
            tau(&moved, &cfg)
                .map_err(|e| e.to_string())?
                .max_rel_diff(&m),
        );
        worst = worst.max(
            pp_point(&moved, &cfg)
                .map_err(|e| e.to_string())?
                .max_rel_diff(&x),
        );

        let lifts = p.lifts();
        let scaled = [0, 1, 2, 3].map(|k| lifts[k].scaled(random_scale(&mut rng)));
        worst = worst.max(
            tau_of_lifts(&scaled, &cfg)
                .map_err(|e| e.to_string())?
                .max_rel_diff(&m),
        );
    }
    ensure(worst <= 1e-9, || format!("max change {worst:e}"))?;
    Ok(format!(
        "max change {worst:.2e} over 1000 isometries and rescalings"
    ))
}

fn classification_fixtures() -> Check {
    let cfg = NumericConfig::default();
    for p in quadruples(2, QuadrupleKind::CPlane, 1_000, 111) {
        let m = tau(&p, &cfg).map_err(|e| e.to_string())?;
        ensure(classify(&m, &cfg).is_c_plane, || {
            format!("c_plane sample {m:?} not detected")
        })?;
    }
    for p in quadruples(2, QuadrupleKind::RPlane, 1_000, 112) {
        let m = tau(&p, &cfg).map_err(|e| e.to_string())?;
        ensure(classify(&m, &cfg).is_r_plane, || {
            format!("r_plane sample {m:?} not detected")
        })?;
    }
    let fixture = ModuliPoint::new(Complex64::new(0.25, 0.0), Complex64::new(0.25, 0.0), 0.0);
    ensure(classify(&fixture, &cfg).is_r_plane, || {
        "(1/4, 1/4, 0) not an R-plane".into()
    })?;

    let mut samples: Vec<ModuliPoint> = (0..1_000)
        .map(|i| random_basic_variety_point(&mut seeded_rng(113, i)).expect("sampling"))
        .collect();
    for p in quadruples(2, QuadrupleKind::Generic, 1_000, 114) {
        samples.push(tau(&p, &cfg).map_err(|e| e.to_string())?);
    }
    let mut checked = 0;
    for m in samples {
        if m.a.abs() >= FRAC_PI_2 - 1e-3 || !cfg.is_zero(variety_residual(&m), m.scale()) {
            continue;
        }
        checked += 1;
        let ok = chmoduli_core::positivity_check(&m, &cfg).map_err(|e| format!("{m:?}: {e}"))?;
        ensure(ok, || format!("Re(X1 e^(-iA)) < 0 at {m:?}"))?;
    }
    Ok(format!(
        "1000 c_plane, 1000 r_plane, positivity on {checked} points"
    ))
}

fn theta_collapse() -> Check {
    let cfg = NumericConfig::default();
    for i in 0..1_000 {
        let m = random_c_plane_point(&mut seeded_rng(115, i));
        let up = ModuliPoint { a: FRAC_PI_2, ..m };
        let down = ModuliPoint { a: -FRAC_PI_2, ..m };
        let (tu, td) = (
            theta(&up).map_err(|e| e.to_string())?,
            theta(&down).map_err(|e| e.to_string())?,
        );
        ensure(tu.max_rel_diff(&td) <= 1e-12, || {
            format!("theta separates {m:?}")
        })?;

        let build = |m: &ModuliPoint| -> std::result::Result<Quadruple, String> {
            let lifts = reconstruct(m, 2, &cfg).map_err(|e| format!("{m:?}: {e}"))?;
            Quadruple::from_lifts(&lifts, &cfg).map_err(|e| e.to_string())
        };
        let (p, q) = (build(&up)?, build(&down)?);
        let holo = congruent_holomorphic(&p, &q, &cfg).map_err(|e| e.to_string())?;
        let anti = congruent_antiholomorphic(&p, &q, &cfg).map_err(|e| e.to_string())?;
        ensure(!holo && anti, || {
            format!("{m:?}: holomorphic {holo}, anti-holomorphic {anti}")
        })?;
    }
    Ok("1000 C-plane pairs collapse under theta and stay non-congruent".into())
}

struct Criterion {
    id: u8,
    title: &'static str,
    limit: Option<Duration>,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion {
            id: 1,
            title: "counterexample reproduction",
            limit: Some(Duration::from_secs(1)),
            run: counterexample_reproduction,
        },
        Criterion {
            id: 2,
            title: "basic variety equality in CH^2",
            limit: Some(Duration::from_secs(10)),
            run: variety_equality_in_ch2,
        },
        Criterion {
            id: 3,
            title: "inequality in CH^3 and equality on 2-subspaces",
            limit: Some(Duration::from_secs(20)),
            run: variety_inequality_in_ch3,
        },
        Criterion {
            id: 4,
            title: "reconstruction round trip",
            limit: None,
            run: round_trip,
        },
        Criterion {
            id: 5,
            title: "normal form uniqueness",
            limit: None,
            run: normal_form_uniqueness,
        },
        Criterion {
            id: 6,
            title: "determinant formulas vs LU",
            limit: None,
            run: determinant_formulas,
        },
        Criterion {
            id: 7,
            title: "invariance suite",
            limit: None,
            run: invariance,
        },
        Criterion {
            id: 8,
            title: "classification fixtures",
            limit: None,
            run: classification_fixtures,
        },
        Criterion {
            id: 9,
            title: "theta collapse on C-planes",
            limit: None,
            run: theta_collapse,
        },
    ];

    let mut failures = 0;
    for c in criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:.2?}"))
            }
            (o, _) => o,
        };
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("[{tag}] AC{} {}: {detail} ({elapsed:.2?})", c.id, c.title);
    }
    println!("acceptance: {} of 9 criteria passed", 9 - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
