//! Randomized invariants of the algebra, the parser, the numerics and the
//! synthesis/analysis pipeline.

use proptest::prelude::*;

use rnshelix::deriv::eval_deriv;
use rnshelix::expr::{Point, ScalarExpr, Var};
use rnshelix::frames::{darboux_apparatus, CaseTag, DarbouxSample};
use rnshelix::helix::{analyze_helix, sigma_rns, HelixConfig};
use rnshelix::lorentz::{lorentz_angle, mcross, mdot, mnorm, AngleKind, LVec3};
use rnshelix::synthesis::{integrate_darboux_frame_steps, synthesize_samples, InitialFrame, InvariantProfile};

fn vec3() -> impl Strategy<Value = LVec3> {
    (-10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64).prop_map(|(a, b, c)| LVec3::new(a, b, c))
}

fn profile(case: CaseTag, kg: &str, kn: &str, tg: &str, window: (f64, f64)) -> InvariantProfile {
    InvariantProfile {
        case,
        kappa_g: ScalarExpr::parse(kg).unwrap(),
        kappa_n: ScalarExpr::parse(kn).unwrap(),
        tau_g: ScalarExpr::parse(tg).unwrap(),
        window,
        h_int: 1e-3,
    }
}

fn expr_text() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        (0.0..10.0f64).prop_map(|x| format!("{x}")),
        Just("s".to_string()),
        Just("u".to_string()),
        Just("v".to_string()),
    ];
    leaf.prop_recursive(4, 32, 2, |inner| {
        prop_oneof![
            (inner.clone(), prop::sample::select(vec!["+", "-", "*", "/", "^"]), inner.clone())
                .prop_map(|(a, op, b)| format!("{a} {op} {b}")),
            (prop::sample::select(vec!["sin", "cos", "tanh", "exp", "abs", "sqrt"]), inner.clone())
                .prop_map(|(f, a)| format!("{f}({a})")),
            inner.clone().prop_map(|a| format!("-({a})")),
            inner.prop_map(|a| format!("({a})")),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn cross_product_is_antisymmetric_and_orthogonal(x in vec3(), y in vec3()) {
        let c = mcross(x, y);
        let scale = x.euclid_norm() * y.euclid_norm() * (x.euclid_norm() + y.euclid_norm()) + 1.0;
        prop_assert!((c + mcross(y, x)).euclid_norm() <= 1e-12 * scale);
        prop_assert!(mdot(c, x).abs() <= 1e-12 * scale);
        prop_assert!(mdot(c, y).abs() <= 1e-12 * scale);
    }

    #[test]
    fn cross_product_norm_identity(x in vec3(), y in vec3()) {
        let c = mcross(x, y);
        let lhs = mdot(c, c);
        let rhs = mdot(x, y).powi(2) - mdot(x, x) * mdot(y, y);
        let scale = (x.euclid_norm() * y.euclid_norm()).powi(2) + 1.0;
        prop_assert!((lhs - rhs).abs() <= 1e-11 * scale, "{lhs} vs {rhs}");
    }

    #[test]
    fn inner_product_is_symmetric_bilinear(x in vec3(), y in vec3(), z in vec3(), a in -3.0..3.0f64) {
        prop_assert_eq!(mdot(x, y), mdot(y, x));
        let lhs = mdot(x * a + z, y);
        let rhs = a * mdot(x, y) + mdot(z, y);
        prop_assert!((lhs - rhs).abs() <= 1e-11 * (1.0 + lhs.abs()));
    }

    #[test]
    fn angle_reconstructs_inner_product(v in vec3(), w in vec3()) {
        if let Ok(angle) = lorentz_angle(v, w, 1e-9) {
            prop_assert!(angle.value >= 0.0);
            let predicted = angle.reconstruct(mnorm(v), mnorm(w));
            let actual = match angle.kind {
                AngleKind::CoshTimelikePlane | AngleKind::SinhMixed => mdot(v, w).abs(),
                _ => mdot(v, w),
            };
            prop_assert!((predicted - actual).abs() <= 1e-8 * (1.0 + actual.abs()), "{angle:?}: {predicted} vs {actual}");
        }
    }

    #[test]
    fn printed_expressions_parse_back(text in expr_text()) {
        let e = ScalarExpr::parse(&text).unwrap();
        let printed = e.to_string();
        let back = ScalarExpr::parse(&printed).unwrap();
        prop_assert_eq!(&back, &e, "{} printed as {}", text, printed);
        prop_assert_eq!(back.to_string(), printed);
        let p = Point::uv(0.3, 0.7).with(Var::S, 1.1);
        if let (Ok(a), Ok(b)) = (e.eval(&p), back.eval(&p)) {
            prop_assert_eq!(a.to_bits(), b.to_bits());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn central_differences_are_second_order(a in 0.5..2.0f64, b in -1.0..1.0f64, s0 in -1.0..1.0f64) {
        let e = ScalarExpr::parse(&format!("sin({a} * s) + ({b}) * s^4")).unwrap();
        let exact = [
            a * (a * s0).cos() + 4.0 * b * s0.powi(3),
            -a * a * (a * s0).sin() + 12.0 * b * s0 * s0,
        ];
        for (order, want) in [(1u8, exact[0]), (2, exact[1])] {
            let err = |h: f64| (eval_deriv(&e, Point::s(s0), Var::S, order, h).unwrap() - want).abs();
            let (e1, e2) = (err(1e-2), err(5e-3));
            if e1 > 1e-9 {
                let ratio = e1 / e2;
                prop_assert!((3.5..4.5).contains(&ratio), "order {order}: ratio {ratio}");
            }
        }
    }

    #[test]
    fn sigma_x_part_scales_inversely(lambda in 0.2..5.0f64, a in 1.0..2.0f64, b in 0.1..0.5f64, c in 0.1..0.5f64) {
        // With κ_n = 0 the characterization function is the X part alone,
        // which scales as 1/λ when all invariants scale by λ at fixed s.
        let table = |scale: f64| -> Vec<DarbouxSample> {
            (0..201)
                .map(|i| {
                    let s = i as f64 * 0.01;
                    DarbouxSample {
                        s,
                        t: LVec3::E2,
                        b: LVec3::E3,
                        n: LVec3::E1,
                        kappa_g: scale * (a + b * s),
                        kappa_n: 0.0,
                        tau_g: scale * c * (s * s + 0.1),
                    }
                })
                .collect()
        };
        let base = sigma_rns(CaseTag::SS, &table(1.0)).unwrap();
        let scaled = sigma_rns(CaseTag::SS, &table(lambda)).unwrap();
        for (x, y) in base.iter().zip(&scaled) {
            prop_assert_eq!(x.formula, y.formula);
            for (p, q) in x.sigma.iter().zip(&y.sigma) {
                match (p, q) {
                    (Some(p), Some(q)) => prop_assert!((p / lambda - q).abs() <= 1e-9 * (1.0 + p.abs())),
                    (None, None) => {}
                    _ => prop_assert!(false, "masks differ under scaling"),
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn rk4_converges_at_fourth_order(kg in 0.2..1.0f64, kn in 0.1..0.8f64, tg in -0.8..0.8f64) {
        let p = profile(CaseTag::ST, &format!("{kg}"), &format!("{kn}"), &format!("{tg}"), (0.0, 2.0));
        let init = InitialFrame::canonical(CaseTag::ST);
        let end = |steps| *integrate_darboux_frame_steps(&p, &init, steps).unwrap().pos.last().unwrap();
        let (p1, p2, p3) = (end(40), end(80), end(160));
        let ratio = (p1 - p2).euclid_norm() / (p2 - p3).euclid_norm();
        prop_assert!((12.0..20.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn synthesized_invariants_are_recovered(
        kg in 0.5..1.5f64, dkg in -0.2..0.2f64, kn in 0.1..0.5f64, tg in -0.3..0.3f64, dtg in -0.2..0.2f64,
    ) {
        let p = profile(
            CaseTag::SS,
            &format!("{kg} + ({dkg}) * s"),
            &format!("{kn}"),
            &format!("{tg} + ({dtg}) * sin(s)"),
            (0.0, 2.0),
        );
        let (_, table) = synthesize_samples(&p, &InitialFrame::canonical(CaseTag::SS), 401).unwrap();
        let (case, darboux) = darboux_apparatus(&table, 1e-9).unwrap();
        prop_assert_eq!(case, CaseTag::SS);
        for d in &darboux {
            let (a, b, c) = p.eval(d.s).unwrap();
            let gap = (d.kappa_g - a).abs().max((d.kappa_n - b).abs()).max((d.tau_g - c).abs());
            prop_assert!(gap < 1e-5, "gap {gap} at s = {}", d.s);
        }
    }

    #[test]
    fn generic_geodesic_torsion_free_profiles_are_not_helices(
        a in 1.0..2.0f64, b in 0.2..0.5f64, c in 0.1..0.4f64, d in 0.02..0.1f64,
    ) {
        let p = profile(CaseTag::SS, &format!("{a} + {b} * s"), &format!("{c} + {d} * s^2"), "0", (0.0, 2.0));
        let (_, table) = synthesize_samples(&p, &InitialFrame::canonical(CaseTag::SS), 401).unwrap();
        let (case, darboux) = darboux_apparatus(&table, 1e-9).unwrap();
        let analysis = analyze_helix(case, &darboux, None, &HelixConfig::default()).unwrap();
        prop_assert!(!analysis.rns.verdict(), "{:?}", analysis.rns.detection);
    }
}
