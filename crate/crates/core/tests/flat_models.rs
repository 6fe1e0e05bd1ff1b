//! Affine models in `Isom(R^4)` for the flat groups with `b1 = 0` whose
//! presentations are hand-built. A model satisfying the relators exactly,
//! with a rank-4 translation lattice and no torsion, is a Bieberbach group
//! that the presented group maps onto.

use infrasolv::commensurator::RatMatrix;
use infrasolv::exactalg::{cokernel_invariants, rank_over, Field, Int, IntMatrix};
use infrasolv::groups::catalog_lookup;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

type Rat = BigRational;

/// `x ↦ L x + v` as a 5x5 matrix; `v` is given in quarters.
fn affine(linear: [[i64; 4]; 4], quarters: [i64; 4]) -> RatMatrix {
    let mut rows = vec![vec![Rat::zero(); 5]; 5];
    for i in 0..4 {
        for j in 0..4 {
            rows[i][j] = Rat::from_integer(linear[i][j].into());
        }
        rows[i][4] = Rat::new(quarters[i].into(), 4.into());
    }
    rows[4][4] = Rat::one();
    RatMatrix::from_rows(rows).unwrap()
}

fn diag(signs: [i64; 4], quarters: [i64; 4]) -> RatMatrix {
    let mut l = [[0; 4]; 4];
    for i in 0..4 {
        l[i][i] = signs[i];
    }
    affine(l, quarters)
}

fn translation(quarters: [i64; 4]) -> RatMatrix {
    diag([1; 4], quarters)
}

fn linear_part(g: &RatMatrix) -> Vec<Vec<Rat>> {
    g.to_rows().into_iter().take(4).map(|r| r[..4].to_vec()).collect()
}

fn translation_part(g: &RatMatrix) -> Vec<Rat> {
    g.to_rows().into_iter().take(4).map(|r| r[4].clone()).collect()
}

fn evaluate(word: &[(usize, i64)], gens: &[RatMatrix]) -> RatMatrix {
    word.iter().fold(RatMatrix::identity(5), |acc, &(g, e)| {
        let base = if e > 0 { gens[g].clone() } else { gens[g].inverse().unwrap() };
        (0..e.abs()).fold(acc, |a, _| a.mul(&base))
    })
}

/// Integer matrix whose columns are `48 * vs`. Model translations lie in
/// `¼ Z^4` and projectors average over at most 12 powers.
fn scaled_columns(vs: &[Vec<Rat>]) -> IntMatrix {
    let scale = Rat::from_integer(48.into());
    let rows: Vec<Vec<Int>> = (0..4)
        .map(|i| {
            vs.iter()
                .map(|v| {
                    let x = &v[i] * &scale;
                    assert!(x.is_integer(), "denominator exceeds the working scale");
                    x.to_integer()
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(&rows).unwrap()
}

/// `v ∈ Z-span(vs)`: adjoining `v` leaves the cokernel unchanged.
fn in_span(vs: &[Vec<Rat>], v: &[Rat]) -> bool {
    let mut with = vs.to_vec();
    with.push(v.to_vec());
    cokernel_invariants(&scaled_columns(vs)) == cokernel_invariants(&scaled_columns(&with))
}

fn project(p: &[Vec<Rat>], v: &[Rat]) -> Vec<Rat> {
    p.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Checks that `gens` generate a torsion-free crystallographic group of
/// rank 4 and returns the order of its holonomy.
fn bieberbach_holonomy(gens: &[RatMatrix]) -> usize {
    let mut all = gens.to_vec();
    all.extend(gens.iter().map(|g| g.inverse().unwrap()));
    // coset representatives of the translation subgroup, keyed by linear part
    let mut reps: BTreeMap<String, RatMatrix> = BTreeMap::new();
    let id = RatMatrix::identity(5);
    reps.insert(format!("{:?}", linear_part(&id)), id.clone());
    let mut frontier = vec![id];
    while let Some(r) = frontier.pop() {
        for g in &all {
            let n = r.mul(g);
            let key = format!("{:?}", linear_part(&n));
            if let std::collections::btree_map::Entry::Vacant(slot) = reps.entry(key) {
                slot.insert(n.clone());
                frontier.push(n);
            }
        }
        assert!(reps.len() <= 384, "holonomy is not finite");
    }
    // Schreier generators of the translation lattice
    let mut lattice = Vec::new();
    for r in reps.values() {
        for g in gens {
            let n = r.mul(g);
            let back = &reps[&format!("{:?}", linear_part(&n))];
            lattice.push(translation_part(&n.mul(&back.inverse().unwrap())));
        }
    }
    assert_eq!(rank_over(&scaled_columns(&lattice), &Field::Rationals).unwrap(), 4);
    // torsion-free: no coset element (L, v + λ) has a fixed point, i.e. the
    // projection of v onto Fix(L) along im(I - L) avoids the projected lattice
    for r in reps.values() {
        let l = RatMatrix::from_rows(linear_part(r)).unwrap();
        if l == RatMatrix::identity(4) {
            continue;
        }
        let mut avg = RatMatrix::zeros(4);
        let mut power = RatMatrix::identity(4);
        let mut order = 0i64;
        loop {
            avg = avg.add(&power);
            order += 1;
            power = power.mul(&l);
            if power == RatMatrix::identity(4) {
                break;
            }
        }
        let p = avg.scale(&Rat::new(1.into(), order.into())).to_rows();
        let projected: Vec<Vec<Rat>> = lattice.iter().map(|v| project(&p, v)).collect();
        assert!(
            !in_span(&projected, &project(&p, &translation_part(r))),
            "element with linear part {l} has a fixed point"
        );
    }
    reps.len()
}

fn check_model(name: &str, gens: &[RatMatrix], holonomy: usize) {
    let entry = catalog_lookup(name).unwrap();
    let p = entry.spec.presentation();
    assert_eq!(p.num_generators(), gens.len(), "{name}");
    for (i, rel) in p.relators().iter().enumerate() {
        assert_eq!(evaluate(rel, gens), RatMatrix::identity(5), "{name}: relator {i} fails in the model");
    }
    assert_eq!(bieberbach_holonomy(gens), holonomy, "{name}");
}

#[test]
fn g2b2_model() {
    let s = affine([[-1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], [0, 0, 0, 1]);
    let t = diag([1, -1, 1, -1], [1, 1, 0, 0]);
    check_model("G2B2", &[s, t], 8);
}

#[test]
fn g2b1_model() {
    let a = diag([1, -1, -1, -1], [2, 0, 0, 0]);
    let b = diag([-1, 1, -1, 1], [0, 2, 2, 0]);
    check_model("G2B1", &[a, b, translation([0, 0, 0, 4])], 4);
}

#[test]
fn g2g2_model() {
    let a = diag([1, -1, -1, -1], [2, 0, 0, 0]);
    let b = diag([-1, 1, -1, -1], [0, 2, 2, 0]);
    check_model("G2G2", &[a, b, translation([0, 0, 0, 4])], 4);
}

#[test]
fn g6b3_model() {
    let p = diag([1, -1, -1, 1], [2, 2, 0, 0]);
    let z = translation([0, 0, 4, 0]);
    let a = diag([-1, 1, -1, -1], [0, 2, 2, 0]);
    let b = diag([1, 1, -1, -1], [0, 2, 0, 4]);
    check_model("G6B3", &[p, z, a, b], 8);
}

#[test]
#[should_panic(expected = "fixed point")]
fn checker_rejects_reflections() {
    let e = |i: usize| {
        let mut q = [0; 4];
        q[i] = 4;
        translation(q)
    };
    bieberbach_holonomy(&[diag([-1, 1, 1, 1], [1, 0, 0, 0]), e(0), e(1), e(2), e(3)]);
}
