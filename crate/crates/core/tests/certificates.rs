use lefrank::cohomology::{hard_lefschetz, weak_lefschetz};
use lefrank::constructions::{blowup_bmodule, catalog, catalog_symplectic, product, projective_space, torus};
use lefrank::error::SpectralError;
use lefrank::filtration::saturation_level;
use lefrank::module::random_bmodule;
use lefrank::spectral::{
    betti_convolution, certify_csplitting, e2_page, gap_certificate, schur_report, FibrationSpec, Route,
    StartPagePolicy, PAGES_AXIOM,
};
use lefrank::SymplecticData;

fn cp(n: usize) -> SymplecticData {
    SymplecticData::from_named_class(projective_space(n), "omega").unwrap()
}

fn euler(b: &[usize]) -> i64 {
    b.iter()
        .enumerate()
        .map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

#[test]
fn cp2_over_s2_certifies_on_page_two() {
    let spec = FibrationSpec::new(cp(2), vec![1, 0, 1]).unwrap();
    let c = certify_csplitting(&spec).unwrap();
    assert!(c.certified);
    assert_eq!(c.route, Route::HardLefschetz);
    assert_eq!(c.r0, 2);
    assert!(c.axioms.is_empty());
    assert_eq!(c.total_betti, Some(vec![1, 0, 2, 0, 2, 0, 1]));
}

#[test]
fn kodaira_thurston_certifies_on_page_four() {
    let kt = catalog_symplectic("kodaira-thurston").unwrap();
    for base in [vec![1], vec![1, 0, 1], vec![1, 0, 2, 0, 1], vec![1, 3, 3, 1]] {
        let c = certify_csplitting(&FibrationSpec::new(kt.clone(), base.clone()).unwrap()).unwrap();
        assert!(c.certified);
        assert_eq!(c.route, Route::WeakLefschetz);
        assert_eq!((c.r0, c.lo, c.hi), (4, 1, 3));
        assert_eq!(c.axioms, vec![PAGES_AXIOM.to_string()]);
        assert!(c.reason.iter().any(|r| r.contains(PAGES_AXIOM)));
        assert_eq!(c.total_betti, Some(betti_convolution(&[1, 3, 4, 3, 1], &base)));
    }
}

#[test]
fn e2_page_keeps_jumps() {
    let kt = catalog_symplectic("kodaira-thurston").unwrap();
    let spec = FibrationSpec::new(kt, vec![1, 0, 2, 0, 1]).unwrap();
    let e2 = e2_page(&spec);
    assert_eq!(e2.total_dim(), 48);
    let s = saturation_level(&e2).unwrap();
    assert_eq!((s.lo, s.hi), (1, 3));
    let point = FibrationSpec::new(cp(1), vec![1]).unwrap();
    assert_eq!(e2_page(&point), cp(1).bmodule());
    let sphere = FibrationSpec::new(cp(1), vec![1, 0, 1]).unwrap();
    let e2 = e2_page(&sphere);
    for k in [0, 2] {
        assert_eq!(e2.dim(k), 2);
    }
}

#[test]
fn blowup_module_certifies_on_page_four() {
    let x = blowup_bmodule(&catalog_symplectic("kodaira-thurston").unwrap(), 5, 3).unwrap();
    assert!(!gap_certificate(&x, 2).unwrap().certified);
    assert!(!gap_certificate(&x, 3).unwrap().certified);
    let c = gap_certificate(&x, 4).unwrap();
    assert!(c.certified);
    assert_eq!((c.lo, c.hi), (4, 6));
}

#[test]
fn filiform_fiber_is_not_certified() {
    let s = catalog_symplectic("salamon-0-0-12-13-14-15").unwrap();
    assert!(!weak_lefschetz(&s));
    let c = certify_csplitting(&FibrationSpec::new(s, vec![1, 0, 1]).unwrap()).unwrap();
    assert!(!c.certified);
    assert_eq!(c.route, Route::None);
    assert!(c.total_betti.is_none());
    assert!(c.reason.iter().any(|r| r.contains("H^3 -> H^5")), "{:?}", c.reason);
}

#[test]
fn routes_follow_lefschetz_verdicts() {
    let kt = catalog("kodaira-thurston").unwrap().ring().unwrap();
    let fibers = [
        cp(1),
        cp(3),
        SymplecticData::from_named_class(torus(4), "omega").unwrap(),
        catalog_symplectic("kodaira-thurston").unwrap(),
        catalog_symplectic("salamon-0-0-0-0-12-13").unwrap(),
        catalog_symplectic("salamon-0-0-0-12-13-23").unwrap(),
        catalog_symplectic("salamon-0-0-12-13-14-15").unwrap(),
        SymplecticData::from_named_class(product(&kt, &torus(2)), "omega").unwrap(),
    ];
    for fiber in fibers {
        let base = vec![1, 2, 1];
        let c = certify_csplitting(&FibrationSpec::new(fiber.clone(), base.clone()).unwrap()).unwrap();
        let width = c.hi - c.lo;
        match c.route {
            Route::HardLefschetz => assert!(hard_lefschetz(&fiber) && width == 0),
            Route::WeakLefschetz => {
                assert!(!hard_lefschetz(&fiber) && weak_lefschetz(&fiber));
                assert!(width == 1 || width == 2);
            }
            Route::None => assert!(!weak_lefschetz(&fiber)),
        }
        if let Some(total) = &c.total_betti {
            let fb = fiber.ring().betti();
            assert_eq!(total.iter().sum::<usize>(), fb.iter().sum::<usize>() * base.iter().sum::<usize>());
            assert_eq!(euler(total), euler(&fb) * euler(&base));
        }
    }
}

#[test]
fn gap_certificate_is_monotone() {
    for seed in 0..60 {
        let v = random_bmodule(seed, 8, 10);
        let mut seen = false;
        for r0 in 2..=12 {
            let c = gap_certificate(&v, r0).unwrap();
            assert!(!seen || c.certified, "seed {seed} r0 {r0}");
            seen |= c.certified;
        }
        assert!(seen);
    }
    assert!(matches!(gap_certificate(&cp(1).bmodule(), 1), Err(SpectralError::StartPage(1))));
}

#[test]
fn spec_validation() {
    assert!(matches!(
        FibrationSpec::new(cp(1), vec![2, 0, 1]),
        Err(SpectralError::BaseNotConnected(2))
    ));
    assert!(matches!(FibrationSpec::new(cp(1), vec![]), Err(SpectralError::BaseNotConnected(0))));
    let spec = FibrationSpec::new(cp(1), vec![1]).unwrap();
    let forced = spec.clone().with_policy(StartPagePolicy::Forced(5));
    assert!(matches!(certify_csplitting(&forced), Err(SpectralError::UnlicensedStartPage(5))));
    let kt = catalog_symplectic("kodaira-thurston").unwrap();
    let forced = FibrationSpec::new(kt, vec![1, 0, 1]).unwrap().with_policy(StartPagePolicy::Forced(2));
    assert!(!certify_csplitting(&forced).unwrap().certified);
}

#[test]
fn truncated_base_is_noted() {
    let spec = FibrationSpec::new(cp(1), vec![1, 0, 1, 0, 1]).unwrap().truncated(true);
    let c = certify_csplitting(&spec).unwrap();
    assert!(c.certified);
    assert!(c.reason.iter().any(|r| r.contains("truncated")));
}

#[test]
fn schur_advisory() {
    let kt = catalog_symplectic("kodaira-thurston").unwrap().bmodule();
    let r2 = schur_report(&kt, 2).unwrap();
    let level2 = r2.iter().find(|l| l.level == 2).unwrap();
    assert_eq!(level2.target_level, 1);
    assert!(level2.source_content.contains_key(&0) && level2.target_content.contains_key(&0));
    assert!(!level2.forced_zero);
    assert!(schur_report(&kt, 4).unwrap().iter().all(|l| l.forced_zero));
    assert!(schur_report(&cp(2).bmodule(), 2).unwrap().iter().all(|l| l.forced_zero));
}
