use hyperfix_core::mappings::{catalog, step_map};
use hyperfix_core::schemes::{check_fejer, check_residual_decay, run_scheme};
use hyperfix_core::{
    Coordinatewise, Euclidean, FixedPoints, MappingClass, SchemeParams, SelfMap, Termination,
};
use proptest::prelude::*;

fn line() -> Euclidean {
    Euclidean::new(1).unwrap()
}

fn both(x1: f64, (a, b, c): (f64, f64, f64)) -> [SchemeParams<Vec<f64>>; 2] {
    [
        SchemeParams::mann(vec![x1], a),
        SchemeParams::thakur(vec![x1], a, b, c),
    ]
}

proptest! {
    #[test]
    fn mann_closed_form(x1 in 0.01f64..3.99, a in 0.01f64..0.99) {
        let params = SchemeParams::mann(vec![x1], a).with_stop_tol(None).with_max_iter(25);
        let trace = run_scheme(&line(), &step_map(), &params, None).unwrap();
        let mut direct = x1;
        for r in &trace.records {
            let x = r.x.as_ref().unwrap()[0];
            let closed = x1 * (1.0 - a).powi(r.n as i32 - 1);
            prop_assert!((x - closed).abs() <= 1e-12 * closed);
            prop_assert_eq!(x, direct);
            direct += a * (0.0 - direct);
        }
    }

    #[test]
    fn thakur_hits_zero_at_step_two(x1 in 0.01f64..3.99,
                                    a in 0.01f64..0.99, b in 0.01f64..0.99, c in 0.01f64..0.99) {
        let params = SchemeParams::thakur(vec![x1], a, b, c).with_stop_tol(None).with_max_iter(4);
        let trace = run_scheme(&line(), &step_map(), &params, None).unwrap();
        for r in &trace.records[1..] {
            prop_assert_eq!(r.x.as_ref().unwrap()[0], 0.0);
        }
    }

    #[test]
    fn fixed_points_stay_put(a in 0.01f64..0.99, b in 0.01f64..0.99, c in 0.01f64..0.99) {
        for m in catalog() {
            let FixedPoints::Finite(ps) = m.fixed_points() else { continue };
            for p in ps {
                for params in both(p[0], (a, b, c)) {
                    let params = params.with_stop_tol(None).with_max_iter(5);
                    let trace = run_scheme(&line(), &m, &params, None).unwrap();
                    for r in &trace.records {
                        prop_assert_eq!(r.residual, 0.0);
                        prop_assert_eq!(r.x.as_ref().unwrap(), &p);
                    }
                }
            }
        }
    }
}

#[test]
fn fejer_on_every_catalog_pair() {
    let e = line();
    let quasi = |m: &hyperfix_core::ScalarMap| {
        m.claims
            .iter()
            .any(|c| c.class == MappingClass::QuasiNonexpansive && c.holds)
    };
    for m in catalog().into_iter().filter(quasi) {
        let FixedPoints::Finite(ps) = m.fixed_points() else { continue };
        for x1 in m.sample_grid(0.25) {
            for p in &ps {
                for params in both(x1[0], (0.85, 0.65, 0.45)) {
                    let params = params
                        .with_fixed_point(p.clone())
                        .with_stop_tol(None)
                        .with_max_iter(40);
                    let trace = run_scheme(&e, &m, &params, None).unwrap();
                    let r = check_fejer(&trace).unwrap();
                    assert!(r.holds(), "{} from {:?} to {:?}", m.name, x1, p);
                }
            }
        }
    }
}

#[test]
fn chain_and_residuals_toward_one() {
    let m = hyperfix_core::mappings::by_name("toward_one").unwrap();
    for (params, limit) in both(0.0, (0.85, 0.65, 0.45)).into_iter().zip([200, 60]) {
        let params = params
            .with_fixed_point(vec![1.0])
            .with_stop_tol(Some(1e-10))
            .with_max_iter(limit);
        let trace = run_scheme(&line(), &m, &params, Some(&Coordinatewise)).unwrap();
        assert_eq!(trace.termination, Termination::TolReached);
        assert!(trace.records.iter().all(|r| r.order_chain_ok == Some(true)));
        assert!(check_fejer(&trace).unwrap().holds());
        assert!(check_residual_decay(&trace).holds());
    }
}

#[test]
fn dual_chain_from_above() {
    let m = hyperfix_core::mappings::by_name("half").unwrap();
    for params in both(1.0, (0.5, 0.5, 0.5)) {
        let params = params.with_stop_tol(None).with_max_iter(30);
        let trace = run_scheme(&line(), &m, &params, Some(&Coordinatewise)).unwrap();
        assert!(trace.records.iter().all(|r| r.order_chain_ok == Some(true)));
    }
}

#[test]
fn injected_increase_is_caught() {
    let params = SchemeParams::mann(vec![0.9], 0.85)
        .with_fixed_point(vec![0.0])
        .with_stop_tol(None)
        .with_max_iter(6);
    let mut trace = run_scheme(&line(), &step_map(), &params, None).unwrap();
    trace.records[3].dist_to_p = Some(1.0);
    let r = check_fejer(&trace).unwrap();
    assert!(!r.holds());
    assert_eq!(r.witnesses[0].get("n"), Some(&[4.0][..]));
}
