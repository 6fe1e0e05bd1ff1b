//! Deficiency-interval inference.
//!
//! Each rule produces [`DefBound`]s; [`analyze`] intersects them into a
//! [`DefReport`]. Rules never look at each other's output, so the report
//! keeps redundant bounds for auditing.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{self, arith, AlgError, Field, Int, IntMatrix};
use crate::groups::{
    self, beta1, catalog, hirsch_length, orientable_over_q, rational_beta, GroupError, GroupKind,
    GroupSpec, Presentation,
};
use crate::laurent::{self, LaurentError};
use crate::quadform;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DefError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Laurent(#[from] LaurentError),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("rules disagree: lower bound {lo} exceeds upper bound {hi}")]
    Inconsistent { lo: i64, hi: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Lower,
    Upper,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefBound {
    pub direction: Direction,
    pub value: i64,
    pub rule: String,
    pub citation: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub inputs: BTreeMap<String, String>,
}

impl DefBound {
    fn new(direction: Direction, value: i64, rule: &str, citation: impl Into<String>) -> Self {
        DefBound {
            direction,
            value,
            rule: rule.into(),
            citation: citation.into(),
            inputs: BTreeMap::new(),
        }
    }

    fn lower(value: i64, rule: &str, citation: impl Into<String>) -> Self {
        Self::new(Direction::Lower, value, rule, citation)
    }

    fn upper(value: i64, rule: &str, citation: impl Into<String>) -> Self {
        Self::new(Direction::Upper, value, rule, citation)
    }

    fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.into(), value.to_string());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefReport {
    pub group: String,
    pub lo: i64,
    pub hi: i64,
    pub exact: bool,
    pub bounds: Vec<DefBound>,
}

impl DefReport {
    /// Intersects the bounds. Fails when nothing bounds one side or the
    /// sides cross.
    pub fn from_bounds(group: impl Into<String>, bounds: Vec<DefBound>) -> Result<Self, DefError> {
        let lo = bounds.iter().filter(|b| b.direction == Direction::Lower).map(|b| b.value).max();
        let hi = bounds.iter().filter(|b| b.direction == Direction::Upper).map(|b| b.value).min();
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Err(DefError::Precondition("no bound on one side of the interval".into()));
        };
        if lo > hi {
            return Err(DefError::Inconsistent { lo, hi });
        }
        Ok(DefReport {
            group: group.into(),
            lo,
            hi,
            exact: lo == hi,
            bounds,
        })
    }

    pub fn contains(&self, d: i64) -> bool {
        self.lo <= d && d <= self.hi
    }

    /// The bounds attaining the interval endpoints.
    pub fn decisive(&self) -> impl Iterator<Item = &DefBound> {
        self.bounds.iter().filter(move |b| match b.direction {
            Direction::Lower => b.value == self.lo,
            Direction::Upper => b.value == self.hi,
        })
    }
}

/// `C(n, 2)`
fn choose2(n: i64) -> i64 {
    n * (n - 1) / 2
}

/// `def(Z^n) = n - C(n, 2)`
pub fn free_abelian_deficiency(n: u64) -> i64 {
    let n = n as i64;
    n - choose2(n)
}

pub fn presentation_lower(p: &Presentation) -> DefBound {
    DefBound::lower(
        p.deficiency(),
        "presentation",
        format!("{} generators and {} relators", p.num_generators(), p.num_relators()),
    )
    .with("presentation", p.to_string())
}

/// `def ≤ 2 - β1(π; F)` for Hirsch length 4. Odd characteristic and `Q`
/// need orientability; `None` when that is unknown or fails.
pub fn betti_upper(spec: &GroupSpec, field: &Field) -> Result<Option<DefBound>, DefError> {
    require_hirsch(spec, 4)?;
    if *field != Field::f2() && orientable_over_q(spec) != Ok(true) {
        return Ok(None);
    }
    let b = beta1(&spec.presentation(), field)?;
    Ok(Some(
        DefBound::upper(
            2 - b as i64,
            "betti",
            format!("b1({field}) = {b} for an aspherical 4-dimensional group with Euler characteristic 0"),
        )
        .with("field", field.key())
        .with("beta1", b),
    ))
}

/// `def ≤ 0` for Hirsch length 4: cohomological dimension 4 with vanishing
/// L2-Betti numbers.
pub fn aspherical_upper(spec: &GroupSpec) -> Result<DefBound, DefError> {
    require_hirsch(spec, 4)?;
    Ok(DefBound::upper(
        0,
        "aspherical",
        "cohomological dimension 4 and vanishing L2-Betti numbers give def <= 0",
    ))
}

fn require_hirsch(spec: &GroupSpec, h: usize) -> Result<(), DefError> {
    let actual = hirsch_length(spec)?;
    if actual == h {
        Ok(())
    } else {
        Err(DefError::Precondition(format!("Hirsch length is {actual}, not {h}")))
    }
}

/// Upper bound on `def(G)` from `def(H) ≤ def_sub_upper` for `H` of the
/// given index, via `def(H) ≥ [G:H](def(G) - 1) + 1`.
pub fn index_transfer_upper(def_sub_upper: i64, index: u64) -> Result<DefBound, DefError> {
    if index == 0 {
        return Err(DefError::Precondition("index must be positive".into()));
    }
    let value = Integer::div_floor(&(def_sub_upper - 1), &(index as i64)) + 1;
    Ok(DefBound::upper(
        value,
        "index_transfer",
        format!("subgroup of index {index} has deficiency at most {def_sub_upper}"),
    )
    .with("index", index)
    .with("def_sub_upper", def_sub_upper))
}

/// `def(K ⋊ Z) ≥ 1 + def(K) - s` for `K` generated by `s` elements.
pub fn fibration_lower(def_k: i64, s: u64) -> Result<DefBound, DefError> {
    if s == 0 {
        return Err(DefError::Precondition("s must be at least 1".into()));
    }
    Ok(DefBound::lower(
        1 + def_k - s as i64,
        "fibration",
        format!("extension of Z by an {s}-generated group of deficiency {def_k}"),
    )
    .with("def_k", def_k)
    .with("s", s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CyclicityDecision {
    Exactly0,
    ExactlyMinus1,
    UpperMinus1,
    Inconclusive,
}

/// Decides `def(Z^3 ⋊_θ Z)` for `θ = [[1, 0], [(m, 0), A]]` from whether
/// the fibre is a cyclic module.
pub fn cyclicity_decide(a: &IntMatrix, m: &Int) -> Result<CyclicityDecision, DefError> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(DefError::Precondition("A must be 2x2".into()));
    }
    if !a.det()?.abs().is_one() {
        return Err(DefError::Precondition("A must have determinant ±1".into()));
    }
    let theta = groups::theta_matrix(a, m);
    let minors = exactalg::minors(&theta.identity_minus(), 2)?;
    if minors.iter().all(Zero::is_zero) {
        return Err(DefError::Precondition("the 2x2 minors of I - θ all vanish".into()));
    }
    let companion = match quadform::companion_conjugacy(a) {
        Ok(c) => c,
        Err(_) => return Ok(CyclicityDecision::Inconclusive),
    };
    let Some(_) = companion else {
        return Ok(CyclicityDecision::UpperMinus1);
    };
    let mu = [m.clone(), BigInt::zero()];
    if exactalg::generates_cokernel(&a.identity_minus(), &mu)? {
        Ok(CyclicityDecision::Exactly0)
    } else {
        Ok(CyclicityDecision::ExactlyMinus1)
    }
}

/// `def ≤ -1` when `E1(tI - θ)` is a proper ideal, for `Z^3 ⋊_θ Z` with
/// `β ≤ 2` and torsion-free `Cok(I - θ)`.
pub fn e1_obstruction_upper(theta: &IntMatrix) -> Result<Option<DefBound>, DefError> {
    if !theta.det()?.abs().is_one() {
        return Err(DefError::Precondition("θ must have determinant ±1".into()));
    }
    let ideal = laurent::elementary_ideal_e1(theta)?;
    if laurent::is_unit_ideal(&ideal)? {
        return Ok(None);
    }
    Ok(Some(
        DefBound::upper(
            -1,
            "e1_obstruction",
            format!("E1(tI - θ) = {ideal} is proper, so the fibre is not a cyclic module"),
        )
        .with("e1", ideal),
    ))
}

/// Vectors with entries in `[-bound, bound]` ordered by max-norm, the
/// standard basis first.
fn search_order(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for r in 1..=bound {
        let mut cur = vec![-r; n];
        loop {
            let unit = r == 1 && cur.iter().map(|x| x.abs()).sum::<i64>() == 1 && cur.iter().all(|x| *x >= 0);
            if cur.iter().map(|x| x.abs()).max() == Some(r) && !unit {
                out.push(cur.clone());
            }
            let mut i = 0;
            while i < n && cur[i] == r {
                cur[i] = -r;
                i += 1;
            }
            if i == n {
                break;
            }
            cur[i] += 1;
        }
    }
    out
}

/// A vector `v` with `det[v | θv | ... | θ^{n-1}v] = ±1` and entries
/// bounded by `bound`, i.e. a generator of the fibre as a module.
pub fn cyclic_vector_search(theta: &IntMatrix, bound: u32) -> Option<Vec<Int>> {
    let n = theta.rows();
    if !theta.is_square() || n == 0 {
        return None;
    }
    let powers: Vec<IntMatrix> = (0..n as u64).map(|k| theta.pow(k)).collect();
    // Krylov matrices are linear in v, so the machine-integer path is exact
    // whenever the largest possible entry fits comfortably.
    let small: Option<Vec<Vec<Vec<i64>>>> = powers
        .iter()
        .map(|p| {
            p.to_rows()
                .iter()
                .map(|r| r.iter().map(|x| x.to_i64().filter(|x| x.abs() < 1 << 20)).collect())
                .collect()
        })
        .collect();
    let fits = n <= 4 && (bound as i64) < 1 << 10;
    for v in search_order(n, bound as i64) {
        let unimodular = match (&small, fits) {
            (Some(ps), true) => {
                let cols: Vec<Vec<i128>> = ps
                    .iter()
                    .map(|p| p.iter().map(|r| r.iter().zip(&v).map(|(a, b)| (*a * b) as i128).sum()).collect())
                    .collect();
                det_i128(&cols).abs() == 1
            }
            _ => {
                let vb: Vec<Int> = v.iter().map(|x| Int::from(*x)).collect();
                let cols: Vec<Vec<Int>> = powers.iter().map(|p| p.mul_vec(&vb)).collect();
                IntMatrix::from_rows(&cols).expect("square").det().expect("square").abs().is_one()
            }
        };
        if unimodular {
            return Some(v.into_iter().map(Int::from).collect());
        }
    }
    None
}

/// Determinant by cofactor expansion; the transpose has the same value, so
/// columns may be passed as rows.
fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 1 {
        return m[0][0];
    }
    (0..n)
        .map(|j| {
            let minor: Vec<Vec<i128>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, x)| *x).collect())
                .collect();
            let sign = if j % 2 == 0 { 1 } else { -1 };
            sign * m[0][j] * det_i128(&minor)
        })
        .sum()
}

/// Two-generator presentation of `Z^3 ⋊_θ Z` from a cyclic vector `v`:
/// `<t, x | [x, txt⁻¹], t³xt⁻³ = x^c0 (txt⁻¹)^c1 (t²xt⁻²)^c2>` where
/// `θ³v = c0 v + c1 θv + c2 θ²v`.
pub fn cyclic_presentation(theta: &IntMatrix, v: &[Int]) -> Result<Presentation, DefError> {
    if theta.rows() != 3 || !theta.is_square() || v.len() != 3 {
        return Err(DefError::Precondition("needs a 3x3 matrix and a length-3 vector".into()));
    }
    let cols: Vec<Vec<Int>> = (0..4u64).map(|k| theta.pow(k).mul_vec(v)).collect();
    let basis = IntMatrix::from_rows(
        &(0..3).map(|i| (0..3).map(|j| cols[j][i].clone()).collect()).collect::<Vec<Vec<Int>>>(),
    )?;
    if !basis.det()?.abs().is_one() {
        return Err(DefError::Precondition("v is not a cyclic vector".into()));
    }
    let c = basis.inverse_unimodular()?.mul_vec(&cols[3]);
    let exps: Vec<i64> = c
        .iter()
        .map(|x| x.to_i64().ok_or_else(|| DefError::Precondition("coefficient out of range".into())))
        .collect::<Result<_, _>>()?;
    let conj = |i: u32, e: i64| format!("t^{i} x^{e} t^-{i}");
    let rhs = format!("x^{} {} {}", exps[0], conj(1, exps[1]), conj(2, exps[2]));
    Ok(Presentation::parse_relations(
        &["t", "x"],
        &["x t x t^-1 = t x t^-1 x".to_string(), format!("t^3 x t^-3 = {rhs}")],
    )?)
}

/// Which rules `analyze` may use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnalyzeOptions {
    /// Take curated intervals and presentations from the catalog.
    pub use_catalog: bool,
    /// Restrict the Betti rule to these fields; `None` means `Q`, `F_2`,
    /// `F_3`, `F_5` and every torsion prime of `H_1`.
    pub fields: Option<Vec<Field>>,
    pub cyclic_search_bound: u32,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            use_catalog: true,
            fields: None,
            cyclic_search_bound: 10,
        }
    }
}

impl AnalyzeOptions {
    pub fn without_catalog() -> Self {
        AnalyzeOptions {
            use_catalog: false,
            ..Self::default()
        }
    }
}

fn matrix_text(m: &IntMatrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

/// A stable name for the group in reports.
pub fn group_id(spec: &GroupSpec) -> String {
    match &spec.kind {
        GroupKind::Catalog(name) => name.clone(),
        GroupKind::SemidirectZnZ(a) => format!("semidirect{}", matrix_text(a)),
        GroupKind::Theta3 { a, m } => format!("theta3{};m={m}", matrix_text(a)),
        GroupKind::Tower(mats) => {
            format!("tower{}", mats.iter().map(matrix_text).collect::<Vec<_>>().join(""))
        }
        GroupKind::RawPresentation(p) => format!("presentation{p}"),
    }
}

fn catalog_match(spec: &GroupSpec) -> Option<groups::CatalogEntry> {
    if let Some(e) = spec.catalog_entry() {
        return Some(e);
    }
    catalog().into_iter().find(|e| e.spec.kind == spec.kind)
}

fn betti_fields(spec: &GroupSpec) -> Vec<Field> {
    let mut fields: BTreeSet<Field> = [Field::Rationals, Field::f2(), Field::Prime(3), Field::Prime(5)]
        .into_iter()
        .collect();
    for d in groups::h1(&spec.presentation()).torsion {
        for p in arith::prime_divisors(&d) {
            if let Some(p) = arith::to_u64(&p) {
                fields.insert(Field::Prime(p));
            }
        }
    }
    fields.into_iter().collect()
}

/// Runs every applicable rule and intersects the results.
///
/// Hirsch length 4 gets the full rule set; other Hirsch lengths, or an
/// unknown one, get the generic bounds only.
pub fn analyze(spec: &GroupSpec, opts: &AnalyzeOptions) -> Result<DefReport, DefError> {
    let entry = if opts.use_catalog { catalog_match(spec) } else { None };
    let resolved = spec.resolve();
    let mut presentations = vec![resolved.presentation()];
    if let Some(e) = &entry {
        presentations.extend(e.presentations.iter().cloned());
    }
    let mut bounds: Vec<DefBound> = presentations.iter().map(presentation_lower).collect();

    let beta = rational_beta(&resolved);
    bounds.push(
        DefBound::upper(beta as i64, "betti_general", format!("def <= b1(Q) = {beta} for any finite presentation"))
            .with("beta", beta),
    );

    let hirsch = hirsch_length(&resolved).ok();
    if let Some(h) = hirsch {
        let h = h as i64;
        bounds.push(
            DefBound::upper(
                h - choose2(beta as i64),
                "universal",
                format!("Hirsch length {h} and b1(Q) = {beta} give def <= n - C(b1, 2)"),
            )
            .with("hirsch", h)
            .with("beta", beta),
        );
        if resolved.is_matrix_based() {
            bounds.push(
                DefBound::lower(
                    h - choose2(h),
                    "poly_z",
                    format!("poly-Z of Hirsch length {h} has a presentation with n generators and C(n, 2) relators"),
                )
                .with("hirsch", h),
            );
        }
    }

    match hirsch {
        Some(4) => hirsch4_rules(&resolved, beta, opts, &mut bounds)?,
        Some(3) => {
            let c = "closed aspherical 3-manifold group: 3-generated of deficiency 0";
            bounds.push(DefBound::lower(0, "hirsch3", c));
            bounds.push(DefBound::upper(0, "hirsch3", c));
        }
        _ => {}
    }

    if let Some(e) = &entry {
        bounds.push(DefBound::lower(e.interval.0, "catalog", e.citation.clone()).with("entry", &e.name));
        bounds.push(DefBound::upper(e.interval.1, "catalog", e.citation.clone()).with("entry", &e.name));
    }
    DefReport::from_bounds(group_id(spec), bounds)
}

fn hirsch4_rules(
    spec: &GroupSpec,
    beta: usize,
    opts: &AnalyzeOptions,
    bounds: &mut Vec<DefBound>,
) -> Result<(), DefError> {
    bounds.push(aspherical_upper(spec)?);
    let fields = match &opts.fields {
        Some(f) => f.clone(),
        None => betti_fields(spec),
    };
    for field in &fields {
        if let Some(b) = betti_upper(spec, field)? {
            bounds.push(b);
        }
    }
    if beta == 0 {
        bounds.push(DefBound::lower(
            -2,
            "beta_zero",
            "b1(Q) = 0 in Hirsch length 4: the group is 4-generated with a presentation of deficiency at least -2",
        ));
    }
    if beta > 0 {
        let mut b = fibration_lower(0, 3)?;
        b.citation = "b1 > 0: extension of Z by a Hirsch-length-3 group, which is 3-generated of deficiency 0".into();
        bounds.push(b);
    }

    let theta = spec.theta();
    if let GroupKind::Theta3 { a, m } = &spec.kind {
        if let Ok(Some(_)) = quadform::companion_conjugacy(a) {
            let mut b = fibration_lower(0, 2)?;
            b.citation = "A has a cyclic vector, so the fibre-by-Z subgroup is 2-generated of deficiency 0".into();
            bounds.push(b);
        }
        match cyclicity_decide(a, m) {
            Ok(d) => {
                let m_s = m.to_string();
                let tag = |b: DefBound| b.with("decision", format!("{d:?}")).with("m", &m_s);
                match d {
                    CyclicityDecision::Exactly0 => {
                        let c = "A is conjugate to a companion matrix and (m, 0) generates Cok(I - A), so the fibre is cyclic";
                        bounds.push(tag(DefBound::lower(0, "cyclicity", c)));
                        bounds.push(tag(DefBound::upper(0, "cyclicity", c)));
                    }
                    CyclicityDecision::ExactlyMinus1 | CyclicityDecision::UpperMinus1 => {
                        let c = "the fibre is not a cyclic module, so deficiency 0 is impossible";
                        bounds.push(tag(DefBound::upper(-1, "cyclicity", c)));
                    }
                    CyclicityDecision::Inconclusive => {}
                }
            }
            Err(DefError::Precondition(_)) => {}
            Err(e) => return Err(e),
        }
    }

    if let (Some(theta), true) = (&theta, spec.is_matrix_based()) {
        if theta.rows() == 3 {
            z3_rules(spec, theta, beta, opts, bounds)?;
        }
    }
    Ok(())
}

/// Rules for `Z^3 ⋊_θ Z`.
fn z3_rules(
    spec: &GroupSpec,
    theta: &IntMatrix,
    beta: usize,
    opts: &AnalyzeOptions,
    bounds: &mut Vec<DefBound>,
) -> Result<(), DefError> {
    let i_minus = theta.identity_minus();
    if let GroupKind::SemidirectZnZ(_) = spec.kind {
        let torsion_free = exactalg::cokernel_invariants(&i_minus).torsion.is_empty();
        if beta <= 2 && torsion_free {
            if let Some(b) = e1_obstruction_upper(theta)? {
                bounds.push(b);
            }
        }
        let d = i_minus.det()?;
        if theta.det()?.is_one() && d.abs().is_one() {
            bounds.push(
                DefBound::lower(
                    -1,
                    "two_knot",
                    "det(I - θ) = ±1 with θ orientation-preserving: a torsion-free solvable 2-knot group, deficiency -1 or 0",
                )
                .with("det_i_minus_theta", d),
            );
        }
    }
    if let Some(v) = cyclic_vector_search(theta, opts.cyclic_search_bound) {
        let p = cyclic_presentation(theta, &v)?;
        let vs: Vec<String> = v.iter().map(ToString::to_string).collect();
        bounds.push(
            DefBound::lower(p.deficiency(), "cyclic_fibre", "the fibre is a cyclic module, giving a 2-generator 2-relator presentation")
                .with("vector", format!("({})", vs.join(",")))
                .with("presentation", p.to_string()),
        );
    }
    Ok(())
}

pub fn mobius(n: u64) -> Result<i64, DefError> {
    if n == 0 {
        return Err(DefError::Precondition("mobius is defined for n >= 1".into()));
    }
    let mut sign = 1;
    for (_, e) in arith::factorize(&BigInt::from(n)) {
        if e > 1 {
            return Ok(0);
        }
        sign = -sign;
    }
    Ok(sign)
}

/// Rank of the `k`-th lower central quotient of the free group of rank
/// `beta`: `(1/k) Σ_{d | k} μ(d) β^{k/d}`.
pub fn witt_rank(beta: u64, k: u64) -> Result<Int, DefError> {
    if beta == 0 || k == 0 {
        return Err(DefError::Precondition("beta and k must be positive".into()));
    }
    let mut sum = BigInt::zero();
    for d in (1..=k).filter(|d| k.is_multiple_of(*d)) {
        let mu = mobius(d)?;
        if mu != 0 {
            sum += BigInt::from(beta).pow((k / d) as u32) * mu;
        }
    }
    let (q, r) = sum.div_rem(&BigInt::from(k));
    debug_assert!(r.is_zero());
    Ok(q)
}

/// `(lower, upper)` for Hirsch length `n` and `b1 = beta`. The upper end
/// is `n - C(β, 2)`; the lower end is the class-2 bound when `class2` is
/// set and the poly-Z bound `n - C(n, 2)` otherwise.
pub fn bounds_window(n: u64, beta: u64, class2: bool) -> Result<(i64, i64), DefError> {
    if beta == 0 || beta > n {
        return Err(DefError::Precondition(format!("need 1 <= beta <= n, got beta = {beta}, n = {n}")));
    }
    let (ni, bi) = (n as i64, beta as i64);
    let upper = ni - choose2(bi);
    let lower = if class2 {
        if ni > choose2(bi + 1) {
            return Err(DefError::Precondition(format!(
                "class 2 needs n <= C(beta + 1, 2) = {}",
                choose2(bi + 1)
            )));
        }
        upper - bi * (ni - bi)
    } else {
        ni - choose2(ni)
    };
    Ok((lower, upper))
}

/// `<t, x | [x, t^i x t^-i] (1 ≤ i < ⌊(n+1)/2⌋), t^{n-1} x t^{1-n} = x>`,
/// which presents `Z^{n-1} ⋊ Z` with cyclic permutation action, and its
/// deficiency `2 - ⌊(n+1)/2⌋`.
pub fn companion_family(n: u64) -> Result<(Presentation, DefReport), DefError> {
    if n < 2 {
        return Err(DefError::Precondition("companion family needs n >= 2".into()));
    }
    let half = n.div_ceil(2);
    let mut rels: Vec<String> = (1..half)
        .map(|i| format!("x t^{i} x t^-{i} = t^{i} x t^-{i} x"))
        .collect();
    rels.push(format!("t^{} x t^-{} = x", n - 1, n - 1));
    let p = Presentation::parse_relations(&["t", "x"], &rels)?;
    let mut transfer = index_transfer_upper(free_abelian_deficiency(n), n - 1)?;
    transfer.citation = format!("contains Z^{n} with index {}; def(Z^{n}) = {}", n - 1, free_abelian_deficiency(n));
    let bounds = vec![presentation_lower(&p), transfer];
    let report = DefReport::from_bounds(format!("companion_family({n})"), bounds)?;
    Ok((p, report))
}
