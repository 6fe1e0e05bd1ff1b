use super::*;

fn lp(s: &str) -> LaurentPoly {
    s.parse().unwrap()
}

fn ideal(gens: &[&str]) -> LaurentIdeal {
    LaurentIdeal::new(gens.iter().map(|s| lp(s)))
}

#[test]
fn parse_and_display_round_trip() {
    for s in ["t^-1 - 2 + 3*t^2", "1", "-t", "5 + t^3", "-2*t^-4 + t^-1"] {
        let p = lp(s);
        assert_eq!(p.to_string(), s);
        assert_eq!(lp(&p.to_string()), p);
    }
    assert_eq!(lp("3t^2 - t"), lp("-t + 3*t^2"));
    assert_eq!(lp("t - t"), LaurentPoly::zero());
    assert!("".parse::<LaurentPoly>().is_err());
    assert!("t^x".parse::<LaurentPoly>().is_err());
}

#[test]
fn arithmetic() {
    let a = lp("t^-1 + 1");
    let b = lp("t - 1");
    assert_eq!(&a * &b, lp("t - t^-1"));
    assert_eq!(&(&a + &b) - &b, a);
    assert!(lp("-t^-7").is_unit());
    assert!(!lp("2*t").is_unit());
    assert_eq!(lp("t^2 + t^3").shift(), 2);
}

#[test]
fn unit_ideal_examples() {
    assert!(!is_unit_ideal(&ideal(&["t + 1", "3"])).unwrap());
    assert!(is_unit_ideal(&ideal(&["t", "3"])).unwrap());
    assert!(is_unit_ideal(&ideal(&["2", "3"])).unwrap());
    assert!(!is_unit_ideal(&ideal(&["2", "t - 1"])).unwrap());
    assert!(!is_unit_ideal(&ideal(&["t^2 - 1", "t - 1"])).unwrap());
    assert!(is_unit_ideal(&ideal(&["t + 1", "t - 1", "3"])).unwrap());
    assert!(is_unit_ideal(&ideal(&["t^-3"])).unwrap());
    assert!(is_unit_ideal(&LaurentIdeal::new([])).is_err());
}

#[test]
fn unit_combination_sums_to_one() {
    for gens in [
        vec!["t", "3"],
        vec!["2", "3"],
        vec!["t + 1", "t - 1", "3"],
        vec!["4*t + 1", "8"],
        vec!["t^2 + 2", "t + 2", "10"],
        vec!["3*t - 1", "9*t^2 + 1", "t + 2"],
        vec!["t^2 + t + 1", "t^2 - t + 1", "3*t^-1 + 1"],
    ] {
        let i = ideal(&gens);
        let cof = unit_combination(&i).unwrap().expect("unit ideal");
        assert_eq!(i.combine(&cof), LaurentPoly::one(), "{gens:?}");
    }
    for gens in [
        vec!["t + 1", "3"],
        vec!["t + 1", "t - 1"],
        vec!["t^2 + 2", "t + 2", "12"],
        vec!["3*t - 1", "9*t^2 + 1"],
    ] {
        assert!(unit_combination(&ideal(&gens)).unwrap().is_none(), "{gens:?}");
    }
}

#[test]
fn certificate_verifies() {
    let i = ideal(&["2*t + 2", "t^2 - 1"]);
    let c = qgcd_certificate(&i).unwrap();
    assert!(c.verify(&i));
    assert_eq!(c.gcd, IntPoly::from_i64(&[1, 1]));
    let i = ideal(&["t + 1", "t - 1"]);
    let c = qgcd_certificate(&i).unwrap();
    assert!(c.verify(&i));
    assert_eq!(c.multiplier, BigInt::from(2));
}

#[test]
fn e1_examples() {
    let e = elementary_ideal_e1(&IntMatrix::identity(2)).unwrap();
    assert_eq!(same_ideal(&e, &ideal(&["t - 1"])).unwrap(), Some(true));

    let theta = IntMatrix::from_i64(&[&[1, 0, 0], &[1, 5, 18], &[0, 3, 11]]);
    let e = elementary_ideal_e1(&theta).unwrap();
    assert_eq!(same_ideal(&e, &ideal(&["t + 1", "3"])).unwrap(), Some(true));
    assert!(!is_unit_ideal(&e).unwrap());

    assert!(elementary_ideal_e1(&IntMatrix::identity(1)).is_err());
    assert!(elementary_ideal_e1(&IntMatrix::zeros(2, 3)).is_err());
}

#[test]
fn membership() {
    let i = ideal(&["t + 1", "3"]);
    assert_eq!(contains(&i, &lp("t^2 - 1")).unwrap(), Some(true));
    assert_eq!(contains(&i, &lp("t")).unwrap(), Some(false));
    assert_eq!(contains(&i, &lp("t + 4")).unwrap(), Some(true));
    let p = ideal(&["t^2 - 1"]);
    assert_eq!(contains(&p, &lp("t^3 - t")).unwrap(), Some(true));
    assert_eq!(contains(&p, &lp("t - 1")).unwrap(), Some(false));
    let q = ideal(&["2*t - 2", "t^2 - 1"]);
    assert_eq!(contains(&q, &lp("2*t - 2")).unwrap(), Some(true));
    assert_eq!(contains(&q, &lp("t - 1")).unwrap(), Some(false));
    assert_eq!(contains(&q, &lp("t^2 + 2*t - 3")).unwrap(), Some(true));
}

