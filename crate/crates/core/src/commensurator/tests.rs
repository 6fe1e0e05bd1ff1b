use super::*;

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(rows)
}

fn plastic() -> AmbientAction {
    // companion of t^3 - t - 1
    AmbientAction::new(IntMatrix::companion(&[-1, -1, 0])).unwrap()
}

fn r(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

#[test]
fn root_of_unity_screen() {
    assert!(has_root_of_unity_eigenvalue(&m(&[&[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]])).unwrap());
    assert!(!has_root_of_unity_eigenvalue(&IntMatrix::companion(&[-1, -1, 0])).unwrap());
    assert!(has_root_of_unity_eigenvalue(&m(&[&[0, -1], &[1, 1]])).unwrap());
    assert!(has_root_of_unity_eigenvalue(&IntMatrix::identity(3)).unwrap());
    assert!(!has_root_of_unity_eigenvalue(&m(&[&[2, 1], &[1, 1]])).unwrap());
    assert_eq!(has_root_of_unity_eigenvalue(&IntMatrix::identity(4)), Err(CommError::TooLarge));
    assert_eq!(AmbientAction::new(IntMatrix::identity(3)), Err(CommError::RootOfUnity));
    assert_eq!(AmbientAction::new(m(&[&[2, 0], &[0, 3]])), Err(CommError::NotUnimodular));
}

#[test]
fn rational_matrix_basics() {
    let b = RatMatrix::parse(&[vec!["1/2", "1"], vec!["0", "3"]]).unwrap();
    assert_eq!(b.det(), r(3, 2));
    let inv = b.inverse().unwrap();
    assert_eq!(b.mul(&inv), RatMatrix::identity(2));
    assert_eq!(b.denominator(), Int::from(2));
    assert!(!b.is_integral());
    assert!(RatMatrix::parse(&[vec!["1", "2"], vec!["2", "4"]]).unwrap().inverse().is_none());
    assert_eq!(b.to_string(), "[[1/2, 1], [0, 3]]");
    assert_eq!(RatMatrix::from_json(&b.to_json()).unwrap(), b);
    assert!(parse_rat("1/0").is_err());
}

#[test]
fn centralizers() {
    let act = plastic();
    let basis = centralizer_basis(&act, 1).unwrap();
    assert_eq!(basis.len(), 3);
    let a = RatMatrix::from_int(act.matrix());
    let powers = [RatMatrix::identity(3), a.clone(), a.mul(&a)];
    let mut all = basis.clone();
    all.extend(powers.iter().cloned());
    assert_eq!(span_rank(&all), 3);
    assert_eq!(span_rank(&powers), 3);
    for x in &basis {
        assert!(x.commutes_with(act.matrix()));
    }
    // block diagonal with non-conjugate hyperbolic blocks: 2 + 1
    let blocks = AmbientAction::new(m(&[&[2, 1, 0], &[1, 1, 0], &[0, 0, -1]]));
    assert_eq!(blocks, Err(CommError::RootOfUnity));
    let hyp = AmbientAction::new(m(&[&[2, 1], &[1, 1]])).unwrap();
    assert_eq!(centralizer_basis(&hyp, 1).unwrap().len(), 2);
    assert_eq!(centralizer_basis(&hyp, 3).unwrap().len(), 2);
}

#[test]
fn nu_identities() {
    let act = plastic();
    let a = act.matrix().clone();
    assert_eq!(nu(&act, 1, 1).unwrap(), IntMatrix::identity(3));
    assert_eq!(nu(&act, 1, 2).unwrap(), IntMatrix::identity(3).add(&a));
    for k in 1..=6 {
        for l in 1..=6 {
            let lhs = a.pow(k).sub(&IntMatrix::identity(3)).mul(&nu(&act, k, l).unwrap());
            assert_eq!(lhs, a.pow(k * l).sub(&IntMatrix::identity(3)));
        }
    }
}

#[test]
fn normalize_and_equiv() {
    let act = plastic();
    let t = CommTriple::new(&act, RatMatrix::identity(3), ints(&[1, -2, 0]), 2).unwrap();
    assert_eq!(triple_normalize(&act, &t, 1).unwrap(), t);
    let t2 = triple_normalize(&act, &t, 2).unwrap();
    assert_eq!(t2.k, 4);
    assert_eq!(t2.w, act.power(2).add(&IntMatrix::identity(3)).mul_vec(&t.w));
    for l in 1..=5 {
        assert!(triple_equiv(&act, &t, &triple_normalize(&act, &t, l).unwrap()).unwrap());
    }
    let twice = triple_normalize(&act, &triple_normalize(&act, &t, 2).unwrap(), 3).unwrap();
    assert_eq!(twice, triple_normalize(&act, &t, 6).unwrap());
    let other = CommTriple::new(&act, RatMatrix::identity(3), ints(&[1, -2, 1]), 2).unwrap();
    assert!(!triple_equiv(&act, &t, &other).unwrap());
}

#[test]
fn validation() {
    let act = plastic();
    let swap = RatMatrix::parse(&[vec!["0", "1", "0"], vec!["1", "0", "0"], vec!["0", "0", "1"]]).unwrap();
    assert_eq!(CommTriple::new(&act, swap, ints(&[0, 0, 0]), 1), Err(CommError::NotCommuting(1)));
    assert_eq!(CommTriple::new(&act, RatMatrix::zeros(3), ints(&[0, 0, 0]), 1), Err(CommError::Singular));
    assert!(CommTriple::new(&act, RatMatrix::identity(3), ints(&[0, 0]), 1).is_err());
    assert!(CommTriple::new(&act, RatMatrix::identity(3), ints(&[0, 0, 0]), 0).is_err());
}

#[test]
fn group_laws() {
    let act = plastic();
    let a = RatMatrix::from_int(act.matrix());
    let half = a.add(&RatMatrix::identity(3)).scale(&r(1, 2));
    let t = CommTriple::new(&act, half, ints(&[1, 0, 1]), 1).unwrap();
    let id = triple_identity(&act);
    assert!(triple_equiv(&act, &triple_compose(&act, &id, &t).unwrap(), &t).unwrap());
    assert!(triple_equiv(&act, &triple_compose(&act, &t, &id).unwrap(), &t).unwrap());
    let inv = triple_inverse(&act, &t).unwrap();
    assert!(triple_equiv(&act, &triple_compose(&act, &t, &inv).unwrap(), &id).unwrap());
    assert!(triple_equiv(&act, &triple_compose(&act, &inv, &t).unwrap(), &id).unwrap());
}

#[test]
fn json_round_trip() {
    let act = plastic();
    let b = RatMatrix::from_int(act.matrix()).scale(&r(2, 3));
    let t = CommTriple::new(&act, b, ints(&[4, -1, 7]), 3).unwrap();
    let v = t.to_json();
    assert_eq!(v["k"], 3);
    assert_eq!(v["B"][1][0], "2/3");
    assert_eq!(CommTriple::from_json(&v).unwrap(), t);
    assert!(CommTriple::from_json(&serde_json::json!({"B": [[1]], "w": [0]})).is_err());
}

#[test]
fn free_abelian_commensurator() {
    let c = comm_of_zn(3);
    assert!(c.statement.contains("GL(3, Q)"));
    let d = c.validate(&RatMatrix::identity(3)).unwrap();
    assert_eq!(d.m, Int::one());
    let b = RatMatrix::parse(&[vec!["1/2", "0", "0"], vec!["0", "1/3", "0"], vec!["0", "0", "1"]]).unwrap();
    let d = c.validate(&b).unwrap();
    assert_eq!(d.m, Int::from(6));
    assert_eq!(d.image, IntMatrix::diag(&[3, 2, 6]));
    assert_eq!(c.validate(&RatMatrix::zeros(3)), Err(CommError::Singular));
}
