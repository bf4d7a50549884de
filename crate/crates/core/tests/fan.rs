use cambrian::catalog;
use cambrian::fan::{FaceDescriptor, TitsMembership};
use cambrian::forms::CoxeterElement;
use cambrian::{QuadraticNumber, Rational, Scalar};

#[test]
fn b3_fan_is_complete() {
    let g = catalog::type_b3::<Rational>().unwrap();
    let c = CoxeterElement::parse(&g, "rst").unwrap();
    let report = g.fan_check_in_tits(&c, 9, 0).unwrap();
    assert!(report.passed(), "{:?}", report.violations);
    assert_eq!(report.cones, 20);
    assert_eq!(report.chambers, 48);
}

#[test]
fn affine_fans_pass_on_bounded_regions() {
    let g = catalog::affine_a2::<Rational>().unwrap();
    let c = CoxeterElement::parse(&g, "pqr").unwrap();
    let report = g.fan_check_in_tits(&c, 8, 2).unwrap();
    assert!(report.passed(), "{:?}", report.violations);
    let g = catalog::affine_g2::<Rational>().unwrap();
    let c = CoxeterElement::parse(&g, "srt").unwrap();
    let report = g.fan_check_in_tits(&c, 8, 2).unwrap();
    assert!(report.passed(), "{:?}", report.violations);
}

#[test]
fn hyperbolic_fan_passes() {
    let g = catalog::hyperbolic_542::<QuadraticNumber>().unwrap();
    let c = CoxeterElement::parse(&g, "rst").unwrap();
    let report = g.fan_check_in_tits(&c, 7, 2).unwrap();
    assert!(report.passed(), "{:?}", report.violations);
}

#[test]
fn g2_faces() {
    let g = catalog::affine_g2::<Rational>().unwrap();
    let c = CoxeterElement::parse(&g, "srt").unwrap();
    let v = g.element_compact("srtsrsrs").unwrap();
    let (w, cox) = g
        .star_of_face(
            &c,
            &FaceDescriptor {
                v: v.clone(),
                j: vec![0],
            },
            20,
        )
        .unwrap();
    assert_eq!(w, g.element_compact("stsrsrs").unwrap());
    assert_eq!(cox.word(), &[0]);
    let face = FaceDescriptor { v, j: vec![0, 1] };
    let (w, cox) = g.star_of_face(&c, &face, 20).unwrap();
    assert_eq!(w, g.element_compact("st").unwrap());
    assert_eq!(g.compact_word(cox.word()), "rs");
    assert!(g.verify_star(&c, &face, 20).unwrap().is_empty());
}

#[test]
fn tits_membership_cases() {
    let g = catalog::affine_a2::<Rational>().unwrap();
    let one = Rational::from_int(1);
    assert!(
        matches!(g.tits_membership(&[one.clone(), one.clone(), one.clone()], 50), TitsMembership::InTits(w) if w.is_identity())
    );
    let m = -one.clone();
    assert!(matches!(
        g.tits_membership(&[m.clone(), m.clone(), m.clone()], 50),
        TitsMembership::NotInTits(_)
    ));
    assert!(matches!(
        g.tits_membership(&[Rational::from_int(0), one.clone(), one], 50),
        TitsMembership::Boundary(_)
    ));
}

#[test]
fn corrupted_cone_is_reported() {
    let g = catalog::type_a::<Rational>(3).unwrap();
    let c = CoxeterElement::parse(&g, "pqr").unwrap();
    let mut cones: Vec<_> = g
        .enumerate_sortables(&c, 6)
        .iter()
        .map(|v| g.cone_of(&c, v).unwrap())
        .collect();
    assert!(g.check_cones(&c, &cones, 6, 0).passed());
    let k = cones
        .iter()
        .position(|k| g.compact_word(k.source.word()) == "pq")
        .unwrap();
    cones[k].normals[0] = cones[k].normals[0].neg();
    let report = g.check_cones(&c, &cones, 6, 0);
    assert!(!report.passed());
    let json = serde_json::to_string(&report.violations).unwrap();
    assert!(json.contains("violation_kind"));
}
