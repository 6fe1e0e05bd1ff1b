//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

use infrasolv::commensurator::{
    centralizer_basis, has_root_of_unity_eigenvalue, nu, span_rank, triple_compose, triple_equiv,
    triple_identity, triple_inverse, triple_normalize, AmbientAction, CommTriple, RatMatrix,
};
use infrasolv::defengine::{
    self, analyze, bounds_window, companion_family, cyclic_vector_search, cyclicity_decide,
    e1_obstruction_upper, witt_rank, AnalyzeOptions, CyclicityDecision, Direction,
};
use infrasolv::exactalg::{self, smith_normal_form, Field, Int, IntMatrix};
use infrasolv::groups::{catalog_lookup, GroupSpec};
use infrasolv::laurent::{self, LaurentIdeal, LaurentPoly};
use infrasolv::quadform::companion_conjugacy;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn m(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64(rows)
}

fn interval(spec: &GroupSpec, opts: &AnalyzeOptions) -> Result<(i64, i64), String> {
    let r = analyze(spec, opts).map_err(|e| e.to_string())?;
    Ok((r.lo, r.hi))
}

fn catalog_exactness() -> Outcome {
    let expected: &[(&str, (i64, i64))] = &[
        ("Z4", (-2, -2)),
        ("GammaQxZ(1)", (-1, -1)),
        ("GammaQxZ(2)", (-2, -2)),
        ("GammaQxZ(3)", (-2, -2)),
        ("B1xZ", (-2, -2)),
        ("B2xZ", (-1, -1)),
        ("Upsilon", (0, 0)),
        ("G4xZ", (-1, -1)),
        ("G2xZ", (-2, -2)),
        ("KbKb", (-2, -2)),
        ("G2B2", (0, 0)),
        ("G2B1", (-1, -1)),
        ("G2G2", (-1, -1)),
        ("G6B3", (-2, -1)),
        ("S2222xZ", (-2, -2)),
    ];
    for (name, want) in expected {
        let spec = GroupSpec::catalog(name).map_err(|e| e.to_string())?;
        let got = interval(&spec, &AnalyzeOptions::default())?;
        ensure!(got == *want, "{name}: got {got:?}, expected {want:?}");
    }
    Ok(())
}

fn theta_example() -> Outcome {
    let theta = m(&[&[1, 0, 0], &[1, 5, 18], &[0, 3, 11]]);
    let e1 = laurent::elementary_ideal_e1(&theta).map_err(|e| e.to_string())?;
    let target = LaurentIdeal::new(["1 + t", "3"].iter().map(|s| s.parse::<LaurentPoly>().unwrap()));
    let same = laurent::same_ideal(&e1, &target).map_err(|e| e.to_string())?;
    ensure!(same == Some(true), "E1 = {e1} is not (t + 1, 3): {same:?}");
    ensure!(!laurent::is_unit_ideal(&e1).map_err(|e| e.to_string())?, "E1 reported as unit ideal");
    for spec in [
        GroupSpec::catalog("Theta-example").unwrap(),
        GroupSpec::semidirect(theta.clone()).unwrap(),
    ] {
        let got = interval(&spec, &AnalyzeOptions::default())?;
        ensure!(got == (-1, -1), "analyze gave {got:?}");
    }
    Ok(())
}

fn cyclicity_table() -> Outcome {
    use CyclicityDecision::*;
    let order3 = m(&[&[0, -1], &[1, -1]]);
    let order4 = m(&[&[0, -1], &[1, 0]]);
    let order6 = m(&[&[0, -1], &[1, 1]]);
    let swap = m(&[&[0, 1], &[1, 0]]);
    let decide = |a: &IntMatrix, k: i64| cyclicity_decide(a, &Int::from(k)).map_err(|e| e.to_string());
    for k in -12i64..=12 {
        let o3 = decide(&order3, k)?;
        ensure!(k % 3 == 0 || o3 == Exactly0, "order 3, m = {k}: {o3:?}");
        let o4 = decide(&order4, k)?;
        let want4 = if k % 2 != 0 { Exactly0 } else { ExactlyMinus1 };
        ensure!(o4 == want4, "order 4, m = {k}: {o4:?}");
        let o6 = decide(&order6, k)?;
        ensure!(o6 == Exactly0, "order 6, m = {k}: {o6:?}");
        if k != 0 {
            let s = decide(&swap, k)?;
            let want = if k.abs() == 1 { Exactly0 } else { ExactlyMinus1 };
            ensure!(s == want, "antidiag(1,1), m = {k}: {s:?}");
        }
    }
    Ok(())
}

fn random_gl2(rng: &mut StdRng) -> IntMatrix {
    loop {
        let e: Vec<i64> = (0..4).map(|_| rng.gen_range(-3..=3)).collect();
        if (e[0] * e[3] - e[1] * e[2]).abs() == 1 {
            return m(&[&[e[0], e[1]], &[e[2], e[3]]]);
        }
    }
}

fn isqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    (r * r == n).then_some(r)
}

/// Some `(x, y)` with `|x|, |y| ≤ bound` and `det[v | Av] = ±1`, found by
/// solving the quadratic in `x` for every `y`.
fn box_witness(a: [i64; 4], bound: i64) -> Option<(i64, i64)> {
    let [p, q, r, s] = a.map(i128::from);
    // det[v | Av] = r x² + (s - p) x y - q y²
    for y in -bound..=bound {
        let y = y as i128;
        for target in [1i128, -1] {
            let (qa, qb, qc) = (r, (s - p) * y, -q * y * y - target);
            let mut roots = Vec::new();
            if qa == 0 {
                if qb == 0 {
                    if qc == 0 {
                        roots.push(0);
                    }
                } else if qc % qb == 0 {
                    roots.push(-qc / qb);
                }
            } else if let Some(d) = isqrt(qb * qb - 4 * qa * qc) {
                for num in [-qb + d, -qb - d] {
                    if num % (2 * qa) == 0 {
                        roots.push(num / (2 * qa));
                    }
                }
            }
            if let Some(x) = roots.into_iter().find(|x| x.abs() <= bound as i128) {
                return Some((x as i64, y as i64));
            }
        }
    }
    None
}

fn quadform_oracle() -> Outcome {
    let mut rng = StdRng::seed_from_u64(4);
    let mut found = 0;
    for _ in 0..200 {
        let a = random_gl2(&mut rng);
        let e: Vec<i64> = a.entries().map(|x| i64::try_from(x).unwrap()).collect();
        let oracle = box_witness([e[0], e[1], e[2], e[3]], 1000);
        let lib = companion_conjugacy(&a).map_err(|e| e.to_string())?;
        if oracle.is_some() {
            found += 1;
            ensure!(lib.is_some(), "{a:?}: oracle found {oracle:?} but companion_conjugacy failed");
        }
        if let Some((v, p)) = lib {
            let av = a.mul_vec(&v);
            let det = &v[0] * &av[1] - &v[1] * &av[0];
            ensure!(det.abs().is_one(), "{a:?}: witness {v:?} evaluates to {det}");
            ensure!(p.det().unwrap().abs().is_one(), "{a:?}: P not unimodular");
            let eps = -a.det().unwrap();
            let trace = &a[(0, 0)] + &a[(1, 1)];
            let c = IntMatrix::from_rows(&[vec![Int::zero(), eps], vec![Int::one(), trace]]).unwrap();
            ensure!(a.mul(&p) == p.mul(&c), "{a:?}: AP != PC");
        }
    }
    ensure!(found > 50, "only {found} oracle hits; the sample is not exercising the solver");
    Ok(())
}

fn snf_suite() -> Outcome {
    let mut rng = StdRng::seed_from_u64(5);
    for _ in 0..500 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let rows: Vec<Vec<i64>> = (0..r).map(|_| (0..c).map(|_| rng.gen_range(-20..=20)).collect()).collect();
        let mat = IntMatrix::from_rows(&rows).unwrap();
        let f = smith_normal_form(&mat);
        ensure!(f.u.mul(&mat).mul(&f.v) == f.s, "U M V != S for {rows:?}");
        ensure!(f.u.det().unwrap().abs().is_one() && f.v.det().unwrap().abs().is_one(), "U or V not unimodular");
        let d = f.diagonal();
        for i in 0..r {
            for j in 0..c {
                ensure!(i == j || f.s[(i, j)].is_zero(), "S not diagonal");
            }
        }
        for w in d.windows(2) {
            ensure!(!w[0].is_negative() && (w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero())), "chain broken: {d:?}");
        }
        let q_rank = exactalg::rank_over(&mat, &Field::Rationals).unwrap();
        ensure!(q_rank == f.rank(), "Q rank {q_rank} vs SNF rank {}", f.rank());
        for p in [2u64, 3, 5] {
            let pr = exactalg::rank_over(&mat, &Field::Prime(p)).unwrap();
            let snf = d.iter().filter(|x| !(*x % Int::from(p)).is_zero()).count();
            ensure!(pr == snf, "F_{p} rank {pr} vs {snf} from SNF");
        }
    }
    Ok(())
}

fn random_laurent(rng: &mut StdRng) -> LaurentPoly {
    let deg = rng.gen_range(0..=3);
    let shift = rng.gen_range(-2..=2);
    let terms: Vec<(i64, Int)> = (0..=deg).map(|i| (i + shift, Int::from(rng.gen_range(-6..=6)))).collect();
    let p = LaurentPoly::from_terms(&terms);
    if p.is_zero() {
        LaurentPoly::one()
    } else {
        p
    }
}

fn unit(i: &LaurentIdeal) -> Result<bool, String> {
    laurent::is_unit_ideal(i).map_err(|e| e.to_string())
}

fn unit_ideal_invariance() -> Outcome {
    let parse = |s: &str| s.parse::<LaurentPoly>().unwrap();
    for (gens, want) in [
        (["1 + t", "3"], false),
        (["t", "3"], true),
        (["2", "3"], true),
        (["2", "-1 + t"], false),
    ] {
        let got = unit(&LaurentIdeal::new(gens.iter().map(|s| parse(s))))?;
        ensure!(got == want, "({}, {}): got {got}", gens[0], gens[1]);
    }
    let mut rng = StdRng::seed_from_u64(6);
    let mut units = 0;
    for _ in 0..100 {
        let (f, g) = (random_laurent(&mut rng), random_laurent(&mut rng));
        let base = unit(&LaurentIdeal::new([f.clone(), g.clone()]))?;
        units += usize::from(base);
        let k = rng.gen_range(-3..=3);
        let sign = if rng.gen_bool(0.5) { -Int::one() } else { Int::one() };
        let scaled = f.times_t_power(k).scale(&sign);
        let h = random_laurent(&mut rng);
        let variants = [
            LaurentIdeal::new([scaled, g.clone()]),
            LaurentIdeal::new([g.clone(), f.clone()]),
            LaurentIdeal::new([f.clone(), &g + &(&h * &f)]),
        ];
        for v in &variants {
            ensure!(unit(v)? == base, "invariance failed for ({f}, {g}) vs {v}");
        }
    }
    ensure!(units > 0 && units < 100, "degenerate sample: {units} unit ideals out of 100");
    Ok(())
}

fn formulas() -> Outcome {
    for (beta, k, want) in [(2, 2, 1), (2, 3, 2), (2, 4, 3), (3, 3, 8)] {
        let got = witt_rank(beta, k).map_err(|e| e.to_string())?;
        ensure!(got == Int::from(want), "r_{k}({beta}) = {got}, expected {want}");
    }
    for n in 1..=8u64 {
        let want = n as i64 - (n as i64) * (n as i64 - 1) / 2;
        ensure!(defengine::free_abelian_deficiency(n) == want, "def(Z^{n}) formula");
        let got = if n == 1 {
            bounds_window(1, 1, false).map_err(|e| e.to_string())?
        } else {
            let spec = GroupSpec::semidirect(IntMatrix::identity(n as usize - 1)).unwrap();
            interval(&spec, &AnalyzeOptions::without_catalog())?
        };
        ensure!(got == (want, want), "def(Z^{n}): got {got:?}, expected {want}");
    }
    for n in 2..=12u64 {
        let (_, r) = companion_family(n).map_err(|e| e.to_string())?;
        let want = 2 - ((n as i64 + 1) / 2);
        ensure!(r.exact && r.lo == want, "companion_family({n}) gave [{}, {}], expected {want}", r.lo, r.hi);
    }
    let (lo, hi) = bounds_window(4, 3, true).map_err(|e| e.to_string())?;
    let gamma = catalog_lookup("GammaQxZ(1)").unwrap().interval.0;
    ensure!(lo < gamma && gamma < hi, "Γ×Z deficiency {gamma} not strictly inside [{lo}, {hi}]");
    Ok(())
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn random_triple(act: &AmbientAction, rng: &mut StdRng) -> CommTriple {
    let a = RatMatrix::from_int(act.matrix());
    let a2 = a.mul(&a);
    loop {
        let d = rng.gen_range(1..=2);
        let c: Vec<BigRational> = (0..3).map(|_| rat(rng.gen_range(-2..=2), d)).collect();
        let b = RatMatrix::identity(3).scale(&c[0]).add(&a.scale(&c[1])).add(&a2.scale(&c[2]));
        if !b.is_invertible() {
            continue;
        }
        let w = (0..3).map(|_| Int::from(rng.gen_range(-3..=3))).collect();
        let k = rng.gen_range(1..=2);
        return CommTriple::new(act, b, w, k).expect("polynomials in A commute with A^k");
    }
}

fn commensurator_calculus() -> Outcome {
    let a = IntMatrix::companion(&[-1, -1, 0]);
    ensure!(!has_root_of_unity_eigenvalue(&a).unwrap(), "screen rejected t^3 - t - 1");
    let act = AmbientAction::new(a.clone()).map_err(|e| e.to_string())?;
    let basis = centralizer_basis(&act, 1).map_err(|e| e.to_string())?;
    ensure!(basis.len() == 3, "centralizer dimension {}", basis.len());
    let ar = RatMatrix::from_int(&a);
    for p in [RatMatrix::identity(3), ar.clone(), ar.mul(&ar)] {
        let mut with = basis.clone();
        with.push(p);
        ensure!(span_rank(&with) == 3, "centralizer does not contain a power of A");
    }
    for k in 1..=6 {
        for l in 1..=6 {
            let lhs = a.pow(k).sub(&IntMatrix::identity(3)).mul(&nu(&act, k, l).unwrap());
            ensure!(lhs == a.pow(k * l).sub(&IntMatrix::identity(3)), "telescoping fails at k={k}, l={l}");
        }
    }
    let mut rng = StdRng::seed_from_u64(8);
    let id = triple_identity(&act);
    let eq = |x: &CommTriple, y: &CommTriple| triple_equiv(&act, x, y).map_err(|e| e.to_string());
    let compose = |x: &CommTriple, y: &CommTriple| triple_compose(&act, x, y).map_err(|e| e.to_string());
    for _ in 0..100 {
        let t1 = random_triple(&act, &mut rng);
        let t2 = random_triple(&act, &mut rng);
        let (l1, l2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let t1b = triple_normalize(&act, &t1, l1).unwrap();
        let t1c = triple_normalize(&act, &t1, l2).unwrap();
        let t2b = triple_normalize(&act, &t2, l2).unwrap();
        ensure!(eq(&t1, &t1)?, "not reflexive");
        ensure!(eq(&t1, &t1b)? && eq(&t1b, &t1)?, "lift not equivalent or not symmetric");
        ensure!(eq(&t1b, &t1c)?, "not transitive");
        ensure!(eq(&t1, &t2)? == eq(&t2, &t1)?, "not symmetric");
        let c = compose(&t1, &t2)?;
        ensure!(eq(&c, &compose(&t1b, &t2b)?)?, "compose does not respect equivalence for {t1} and {t2}");
        ensure!(eq(&compose(&id, &t1)?, &t1)? && eq(&compose(&t1, &id)?, &t1)?, "identity law fails for {t1}");
        let inv = triple_inverse(&act, &t1).map_err(|e| e.to_string())?;
        ensure!(eq(&compose(&t1, &inv)?, &id)? && eq(&compose(&inv, &t1)?, &id)?, "inverse law fails for {t1}");
    }
    Ok(())
}

fn ablation_soundness() -> Outcome {
    let corpus = [
        "Z4",
        "GammaQxZ(1)",
        "GammaQxZ(2)",
        "GammaQxZ(3)",
        "B1xZ",
        "B2xZ",
        "Upsilon",
        "G4xZ",
        "G2xZ",
        "Theta-example",
        "G5semidirect(1)",
        "KbKb",
        "knot2b",
    ];
    for name in corpus {
        let entry = catalog_lookup(name).unwrap();
        let spec = GroupSpec::catalog(name).unwrap();
        ensure!(spec.is_matrix_based(), "{name} is not matrix based");
        let (lo, hi) = interval(&spec, &AnalyzeOptions::without_catalog())?;
        let (plo, phi) = entry.interval;
        ensure!(lo <= plo && phi <= hi, "{name}: [{lo}, {hi}] does not contain [{plo}, {phi}]");
    }
    Ok(())
}

fn two_knots() -> Outcome {
    let knot2a = GroupSpec::catalog("knot2a").unwrap();
    let r = analyze(&knot2a, &AnalyzeOptions::without_catalog()).map_err(|e| e.to_string())?;
    ensure!(
        r.bounds.iter().any(|b| b.rule == "presentation" && b.direction == Direction::Lower && b.value == 0),
        "knot2a: no presentation lower bound 0"
    );
    ensure!((r.lo, r.hi) == (0, 0), "knot2a: [{}, {}]", r.lo, r.hi);
    let theta = GroupSpec::catalog("knot2b").unwrap().theta().unwrap();
    let e1_proper = e1_obstruction_upper(&theta).map_err(|e| e.to_string())?.is_some();
    let cyclic = cyclic_vector_search(&theta, 10).is_some();
    ensure!(!(e1_proper && cyclic), "knot2b: cyclic vector found although E1 is proper");
    for opts in [AnalyzeOptions::default(), AnalyzeOptions::without_catalog()] {
        let (lo, hi) = interval(&GroupSpec::catalog("knot2b").unwrap(), &opts)?;
        ensure!(-1 <= lo && hi <= 0, "knot2b: [{lo}, {hi}] not inside [-1, 0]");
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("catalog exactness corpus", catalog_exactness),
        ("theta example", theta_example),
        ("cyclicity decision table", cyclicity_table),
        ("quadratic form oracle equivalence", quadform_oracle),
        ("Smith normal form properties", snf_suite),
        ("unit-ideal invariance", unit_ideal_invariance),
        ("Hirsch-length formulas", formulas),
        ("commensurator calculus", commensurator_calculus),
        ("soundness without catalog", ablation_soundness),
        ("2-knot examples", two_knots),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("criterion {:>2} ({name}): PASS", i + 1),
            Err(e) => {
                println!("criterion {:>2} ({name}): FAIL: {e}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
