use num_rational::BigRational;

use super::*;
use crate::cone::RationalCone;
use crate::error::Error;
use crate::fan::Fan2D;
use crate::linalg::{LatticeVector, Side};

fn n(v: [i64; 2]) -> LatticeVector {
    LatticeVector::n(&v)
}

fn m(v: [i64; 2]) -> LatticeVector {
    LatticeVector::m(&v)
}

fn one() -> BigRational {
    BigRational::from_integer(1.into())
}

fn orthant() -> RationalCone {
    RationalCone::from_i64_generators(Side::N, &[&[1, 0], &[0, 1]]).unwrap()
}

fn binomial(gs: &[[i64; 2]]) -> SetSpec {
    SetSpec::Binomial(BinomialSet::new(gs.iter().map(|g| m(*g)).collect(), vec![one(); gs.len()]).unwrap())
}

fn poly(terms: &[(&[i64], i64)]) -> LaurentPoly {
    let t: Vec<(&[i64], i64, i64)> = terms.iter().map(|&(e, c)| (e, c, 1)).collect();
    LaurentPoly::from_i64(&t)
}

fn example3() -> BasicSet {
    BasicSet::new(vec![
        poly(&[(&[2, 0], 1), (&[1, 1], -1), (&[0, 0], 1)]),
        poly(&[(&[0, 2], 1), (&[1, 1], -1), (&[0, 0], 1)]),
        poly(&[(&[1, 0], 1)]),
        poly(&[(&[0, 1], 1)]),
    ])
    .unwrap()
}

fn example4() -> BasicSet {
    BasicSet::new(vec![
        poly(&[(&[1, 0], 1), (&[0, 0], -1)]),
        poly(&[(&[0, 1], 1), (&[0, 0], -1)]),
        poly(&[(&[1, 0], 1), (&[0, 1], -1), (&[0, 0], -1)]),
        poly(&[(&[0, 0], 2), (&[1, 0], -1), (&[0, 1], 1)]),
        poly(&[(&[1, 0], 1)]),
        poly(&[(&[0, 1], 1)]),
    ])
    .unwrap()
}

#[test]
fn binomial_normalization() {
    let s = BinomialSet::from_binomials(vec![(
        BigRational::new(2.into(), 1.into()),
        m([3, 1]),
        BigRational::new(6.into(), 1.into()),
        m([1, 0]),
    )])
    .unwrap();
    assert_eq!(s.gammas(), &[m([2, 1])]);
    assert_eq!(s.constants(), &[BigRational::from_integer(3.into())]);
    assert!(BinomialSet::new(vec![m([1, 0])], vec![BigRational::from_integer(0.into())]).is_err());
    assert!(BinomialSet::new(vec![], vec![]).is_err());
}

#[test]
fn cone_cs_examples() {
    let SetSpec::Binomial(b) = binomial(&[[2, 1]]) else {
        unreachable!()
    };
    assert_eq!(cone_cs(&b).unwrap(), RationalCone::ray(&m([2, 1])));
    let SetSpec::Binomial(b) = binomial(&[[1, 0], [0, 1], [-1, -1]]) else {
        unreachable!()
    };
    assert!(cone_cs(&b).unwrap().is_full_space());
}

#[test]
fn k_sets_examples() {
    let k = k_sets(&binomial(&[[1, 0]])).unwrap();
    let half = RationalCone::from_inequalities(Side::N, 2, &[m([1, 0])]).unwrap();
    assert_eq!(k.k, half);
    assert_eq!(k.k0, half);
    let k = k_sets(&binomial(&[[2, 1]])).unwrap();
    assert_eq!(k.k, RationalCone::from_inequalities(Side::N, 2, &[m([2, 1])]).unwrap());
    let t = SetSpec::Tentacle(Tentacle::new(n([-2, -2])).unwrap());
    assert_eq!(k_sets(&t).unwrap().k, RationalCone::ray(&n([-1, -1])));
}

#[test]
fn bounded_ring_examples() {
    let hb = bounded_ring(&orthant(), &binomial(&[[1, 0]])).unwrap();
    assert_eq!(hb.generators(), &[m([1, 0])]);
    let hb = bounded_ring(&orthant(), &binomial(&[[2, 1]])).unwrap();
    assert_eq!(hb.generators(), &[m([2, 1])]);
    let t = SetSpec::Tentacle(Tentacle::new(n([0, -1])).unwrap());
    assert_eq!(bounded_ring(&orthant(), &t).unwrap().generators(), &[m([1, 0])]);
    let diag = SetSpec::Tentacle(Tentacle::new(n([-1, -1])).unwrap());
    assert!(is_trivial_bounded_ring(&orthant(), &diag).unwrap());
    assert!(bounded_ring(&orthant(), &diag).unwrap().all_generators().is_empty());
    assert!(!is_trivial_bounded_ring(&orthant(), &binomial(&[[1, 0]])).unwrap());
    assert!(!is_trivial_bounded_ring(&RationalCone::zero(Side::N, 2), &binomial(&[[1, 0]])).unwrap());
    let line = RationalCone::from_i64_generators(Side::N, &[&[1, 0], &[-1, 0]]).unwrap();
    assert_eq!(bounded_ring(&line, &binomial(&[[1, 0]])), Err(Error::NotPointed));
}

#[test]
fn adapted_fan_examples() {
    let f = adapted_fan(&binomial(&[[1, 0]]), &orthant()).unwrap();
    assert_eq!(f, Fan2D::from_i64(&[[1, 0], [0, 1], [-1, -1], [0, -1]]).unwrap());
    let f = adapted_fan(&binomial(&[[2, 1]]), &orthant()).unwrap();
    assert_eq!(
        f,
        Fan2D::from_i64(&[[1, 0], [0, 1], [-1, -1], [1, -2], [-1, 2]]).unwrap()
    );
    let t = SetSpec::Tentacle(Tentacle::new(n([-1, -1])).unwrap());
    assert_eq!(adapted_fan(&t, &orthant()).unwrap(), Fan2D::projective_plane());
    let b = SetSpec::Basic(BasicSet::new(vec![poly(&[(&[1, 0], 1), (&[0, 1], 1)])]).unwrap());
    let f = adapted_fan(&b, &RationalCone::zero(Side::N, 2)).unwrap();
    assert!(f.ray_index(&n([1, 1])).is_some() && f.ray_index(&n([-1, -1])).is_some());
    // (1,1) is interior to the orthant and must not split it.
    let f = adapted_fan(&b, &orthant()).unwrap();
    assert!(f.ray_index(&n([1, 1])).is_none());
    assert!(f.has_cone(&orthant()));
}

#[test]
fn subfan_examples() {
    let fan = Fan2D::from_i64(&[[1, 0], [0, 1], [-1, -1], [0, -1]]).unwrap();
    let k0 = k_sets(&binomial(&[[1, 0]])).unwrap().k0;
    let fs = subfan_fs(&fan, &orthant(), &k0).unwrap();
    assert_eq!(fs.support_dual.generators(), &[m([1, 0])]);
    assert_eq!(fs.y_prime(), vec![n([0, -1])]);
    let fan2 = adapted_fan(&binomial(&[[2, 1]]), &orthant()).unwrap();
    let k0 = k_sets(&binomial(&[[2, 1]])).unwrap().k0;
    assert_eq!(
        subfan_fs(&fan2, &orthant(), &k0).unwrap().support_dual.generators(),
        &[m([2, 1])]
    );
    let full = RationalCone::full(Side::N, 2);
    let fs = subfan_fs(&fan, &orthant(), &full).unwrap();
    assert_eq!(fs.two_cones.len(), 4);
    assert!(fs.support_dual.all_generators().is_empty());
    // P² does not resolve the half-plane {v₁ ≥ 0}.
    let straddle = subfan_fs(
        &Fan2D::projective_plane(),
        &orthant(),
        &k_sets(&binomial(&[[1, 0]])).unwrap().k0,
    );
    assert!(matches!(straddle, Err(Error::NotAdapted(_))));
}

#[test]
fn k0_certifier_examples() {
    let s = BasicSet::new(vec![poly(&[(&[1, 0], 1), (&[0, 1], 1)])]).unwrap();
    let half = BigRational::new(1.into(), 2.into());
    assert!(matches!(
        certify_k0_membership(&s, &n([1, 1]), &default_grid()).unwrap(),
        K0Certificate::In { .. }
    ));
    let e3 = example3();
    assert_eq!(
        certify_k0_membership(&e3, &n([-1, -1]), &default_grid()).unwrap(),
        K0Certificate::Inconclusive
    );
    assert_eq!(decide_k0(&e3, &n([-1, -1])).unwrap(), None);
    assert_eq!(
        certify_k0_membership(&e3, &n([1, 1]), &default_grid()).unwrap(),
        K0Certificate::In {
            witness: vec![half.clone(), half]
        }
    );
    for v in [[1, -1], [-1, 1], [1, 0], [0, 1], [2, -1]] {
        assert!(decide_k0(&e3, &n(v)).unwrap().is_some(), "{v:?}");
    }
    for v in [[-1, 0], [0, -1], [-2, 1]] {
        assert!(decide_k0(&e3, &n(v)).unwrap().is_none(), "{v:?}");
    }
}

#[test]
fn exact_k0_needs_off_grid_points() {
    // in_(0,1)(f) = 1 - 100x² and x > 1/20: only x in (1/20, 1/10) works.
    let s = BasicSet::new(vec![
        poly(&[(&[0, 0], 1), (&[2, 0], -100), (&[0, 1], 1)]),
        poly(&[(&[1, 0], 20), (&[0, 0], -1)]),
    ])
    .unwrap();
    let v = n([0, 1]);
    assert_eq!(
        certify_k0_membership(&s, &v, &default_grid()).unwrap(),
        K0Certificate::Inconclusive
    );
    let xi = decide_k0(&s, &v).unwrap().expect("v is in K₀");
    assert!(xi[0] > BigRational::new(1.into(), 20.into()) && xi[0] < BigRational::new(1.into(), 10.into()));
}

#[test]
fn tc_examples() {
    let grid = default_grid();
    let ex2 = ProblemSpec::new(orthant(), binomial(&[[2, 1]])).unwrap();
    let fan2 = adapted_fan(&ex2.set, &orthant()).unwrap();
    assert_eq!(check_tc(&fan2, &ex2, &grid).unwrap().status, TcStatus::Verified);

    let ex3 = ProblemSpec::new(orthant(), SetSpec::Basic(example3())).unwrap();
    let given_fan = Fan2D::from_i64(&[[1, 0], [0, 1], [1, -1], [-1, 1], [-1, -1]]).unwrap();
    let r = check_tc(&given_fan, &ex3, &grid).unwrap();
    assert_eq!(r.status, TcStatus::Violated);
    assert_eq!(r.witness_ray, Some(n([-1, -1])));
    let fan3 = adapted_fan(&ex3.set, &orthant()).unwrap();
    assert_eq!(check_tc(&fan3, &ex3, &grid).unwrap().witness_ray, Some(n([-1, -1])));

    let zero = RationalCone::zero(Side::N, 2);
    let ex4 = ProblemSpec::new(zero.clone(), SetSpec::Basic(example4())).unwrap();
    let fan4 = adapted_fan(&ex4.set, &zero).unwrap();
    let r = check_tc(&fan4, &ex4, &grid).unwrap();
    assert_eq!(r.status, TcStatus::Violated);
    assert_eq!(r.witness_ray, Some(n([-1, -1])));
    let w = certify_closure_meets(&example4(), &n([-1, -1]), &grid)
        .unwrap()
        .unwrap();
    assert_ne!(w.eta1, vec![BigRational::from_integer(0.into()); 2]);
}

#[test]
fn tc_requires_adapted_fan() {
    let ex3 = ProblemSpec::new(orthant(), SetSpec::Basic(example3())).unwrap();
    let r = check_tc(&Fan2D::projective_plane(), &ex3, &default_grid());
    assert!(matches!(r, Err(Error::NotAdapted(_))));
    let ex1 = ProblemSpec::new(orthant(), binomial(&[[1, 0]])).unwrap();
    assert!(matches!(
        check_tc(&Fan2D::projective_plane(), &ex1, &default_grid()),
        Err(Error::NotAdapted(_))
    ));
}

#[test]
fn tc_verified_for_basic_set_meeting_k0_everywhere() {
    // x > 0, y > 0, 1 + x + y > 0 on the orthant chart: every ray outside σ
    // either meets K₀ or has no curve, so the verdict is never Violated.
    let s = BasicSet::new(vec![poly(&[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)])]).unwrap();
    let spec = ProblemSpec::new(orthant(), SetSpec::Basic(s)).unwrap();
    let fan = adapted_fan(&spec.set, &orthant()).unwrap();
    let r = check_tc(&fan, &spec, &default_grid()).unwrap();
    assert_eq!(r.status, TcStatus::Verified, "{}", r.reason);
}

#[test]
fn basic_subfan_matches_k0() {
    let fan = Fan2D::from_i64(&[[1, 0], [0, 1], [1, -1], [-1, 1], [-1, -1]]).unwrap();
    let fs = subfan_fs_basic(&fan, &orthant(), &example3()).unwrap();
    assert_eq!(fs.y_prime(), vec![n([-1, 1]), n([1, -1])]);
    assert_eq!(fs.support_dual.generators(), &[m([1, 1])]);
}

#[test]
fn walls_inside_sigma_do_not_break_adaptedness() {
    // x₁ ≤ x₂ over the orthant: the wall v₁ = v₂ runs through the interior of σ.
    let set = binomial(&[[1, -1]]);
    let spec = ProblemSpec::new(orthant(), set.clone()).unwrap();
    let fan = adapted_fan(&set, &orthant()).unwrap();
    assert_eq!(
        check_tc(&fan, &spec, &default_grid()).unwrap().status,
        TcStatus::Verified
    );
    let fs = subfan_fs(&fan, &orthant(), &k_sets(&set).unwrap().k0).unwrap();
    assert_eq!(fs.support_dual, bounded_ring(&orthant(), &set).unwrap());
    assert!(is_trivial_bounded_ring(&orthant(), &set).unwrap());
}
