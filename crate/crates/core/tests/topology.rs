use holinv::{
    caratheodory_annulus, classify, mu, pseudo_hyperbolic, simple_connectivity_threshold, AnnulusDomain, BaseDomain,
    Complex64, DistanceField, GridSpec, PuncturedDomain, UnitDiscPoint,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn two_punctures_threshold_is_set_by_the_nearer_one() {
    let k = vec![c(0.3, 0.0), c(-0.6, 0.2)];
    let z = c(0.05, -0.1);
    let dom = PuncturedDomain::new(BaseDomain::UnitDisc, k.clone()).unwrap();
    let grid = GridSpec::covering(&BaseDomain::UnitDisc, 512, 512).unwrap();
    let got = simple_connectivity_threshold(&dom, z, grid, 0.05, 3.0, 30).unwrap();
    let zd = UnitDiscPoint::new(z).unwrap();
    let nearest =
        k.iter().map(|&p| pseudo_hyperbolic(zd, UnitDiscPoint::new(p).unwrap())).fold(f64::INFINITY, f64::min);
    let want = mu(nearest).unwrap();
    // two cell diagonals expressed on the hyperbolic scale near the puncture
    let slack = 2.0 * grid.cell_diagonal() / (1.0 - 0.3f64.powi(2));
    assert!((got - want).abs() <= slack, "{got} vs {want}");
}

#[test]
fn annulus_ball_keeps_punctured_side_open_before_wrapping() {
    let r = 0.1;
    let a = AnnulusDomain::new(r).unwrap();
    let base = BaseDomain::Annulus(a);
    let dom = PuncturedDomain::new(base, vec![c(-0.5, 0.0)]).unwrap();
    let field = DistanceField::compute(&dom, c(0.6, 0.0), GridSpec::covering(&base, 400, 400).unwrap()).unwrap();

    let small = field.ball(0.5);
    let t = classify(&small);
    assert_eq!((t.components, t.holes), (1, 0));

    // past the puncture distance the ball reaches around the hole of the annulus
    let far = caratheodory_annulus(a, c(0.6, 0.0), c(-0.5, 0.0)).unwrap().hyperbolic;
    let big = field.ball(far * 1.05);
    let t = classify(&big);
    assert_eq!(t.components, 1);
    assert!(t.holes >= 1);
    assert!(!big.contains_point(c(-0.5, 0.0)));
}
