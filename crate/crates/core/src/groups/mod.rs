//! Group descriptions: presentations built from matrix data, first homology,
//! orientability, Hirsch length, and a catalog of named groups.

mod catalog;
mod presentation;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::exactalg::{self, AlgError, Field, Int, IntMatrix};

pub use catalog::{catalog, catalog_lookup, CatalogEntry};
pub use presentation::{commutator, concat, inverse, power, push_letter, Presentation, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("{0}")]
    Parse(String),
    #[error("action matrix is not unimodular (determinant {0})")]
    NotUnimodular(Int),
    #[error("bad matrix shape: {0}")]
    Shape(String),
    #[error("unknown catalog entry '{0}'")]
    UnknownCatalog(String),
    #[error("orientability is unknown for this group")]
    UnknownOrientability,
    #[error("Hirsch length is unknown for this group")]
    UnknownHirsch,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// What the group is built from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupKind {
    /// `Z^n ⋊_A Z`
    SemidirectZnZ(IntMatrix),
    /// `Z^3 ⋊_θ Z` with `θ = [[1, 0], [μ, A]]`, `μ = (m, 0)`, on the basis
    /// `(u, x, y)` of the fibre.
    Theta3 { a: IntMatrix, m: Int },
    /// Iterated extensions: the `j`-th matrix (size `j`) gives the action of
    /// generator `x_{j+1}` on `x_1..x_j` as exponent columns.
    Tower(Vec<IntMatrix>),
    Catalog(String),
    RawPresentation(Presentation),
}

/// A group with optional curated metadata. Matrix kinds compute their own
/// Hirsch length and orientability; the metadata fields override nothing
/// for them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub hirsch: Option<usize>,
    pub orientable: Option<bool>,
}

fn check_unimodular(a: &IntMatrix) -> Result<(), GroupError> {
    if !a.is_square() {
        return Err(GroupError::Shape(format!("{}x{} is not square", a.rows(), a.cols())));
    }
    let d = a.det()?;
    if d.abs().is_one() {
        Ok(())
    } else {
        Err(GroupError::NotUnimodular(d))
    }
}

impl GroupSpec {
    pub fn semidirect(a: IntMatrix) -> Result<Self, GroupError> {
        check_unimodular(&a)?;
        if a.rows() == 0 {
            return Err(GroupError::Shape("empty action matrix".into()));
        }
        Ok(Self::bare(GroupKind::SemidirectZnZ(a)))
    }

    pub fn theta3(a: IntMatrix, m: Int) -> Result<Self, GroupError> {
        if a.rows() != 2 || a.cols() != 2 {
            return Err(GroupError::Shape("the action on the fibre must be 2x2".into()));
        }
        check_unimodular(&a)?;
        Ok(Self::bare(GroupKind::Theta3 { a, m }))
    }

    pub fn tower(mats: Vec<IntMatrix>) -> Result<Self, GroupError> {
        if mats.is_empty() {
            return Err(GroupError::Shape("a tower needs at least one matrix".into()));
        }
        for (j, a) in mats.iter().enumerate() {
            if a.rows() != j + 1 || a.cols() != j + 1 {
                return Err(GroupError::Shape(format!(
                    "tower matrix {} must be {}x{}",
                    j + 1,
                    j + 1,
                    j + 1
                )));
            }
            check_unimodular(a)?;
        }
        Ok(Self::bare(GroupKind::Tower(mats)))
    }

    pub fn catalog(name: &str) -> Result<Self, GroupError> {
        catalog_lookup(name)?;
        Ok(Self::bare(GroupKind::Catalog(name.to_string())))
    }

    pub fn raw(p: Presentation) -> Self {
        Self::bare(GroupKind::RawPresentation(p))
    }

    pub fn with_metadata(mut self, hirsch: Option<usize>, orientable: Option<bool>) -> Self {
        self.hirsch = hirsch;
        self.orientable = orientable;
        self
    }

    fn bare(kind: GroupKind) -> Self {
        GroupSpec {
            kind,
            hirsch: None,
            orientable: None,
        }
    }

    /// The catalog entry behind a `Catalog` spec.
    pub fn catalog_entry(&self) -> Option<CatalogEntry> {
        match &self.kind {
            GroupKind::Catalog(name) => catalog_lookup(name).ok(),
            _ => None,
        }
    }

    /// Follows catalog references to a concrete spec.
    pub fn resolve(&self) -> GroupSpec {
        match self.catalog_entry() {
            Some(e) => e.spec,
            None => self.clone(),
        }
    }

    /// The monodromy on `Z^n` when the group is `Z^n ⋊ Z`.
    pub fn theta(&self) -> Option<IntMatrix> {
        match &self.resolve().kind {
            GroupKind::SemidirectZnZ(a) => Some(a.clone()),
            GroupKind::Theta3 { a, m } => Some(theta_matrix(a, m)),
            _ => None,
        }
    }

    /// The primary presentation derived from the description.
    pub fn presentation(&self) -> Presentation {
        match &self.resolve().kind {
            GroupKind::SemidirectZnZ(a) => build_semidirect_presentation(a).expect("validated"),
            GroupKind::Theta3 { a, m } => build_theta3_presentation(a, m).expect("validated"),
            GroupKind::Tower(mats) => build_tower_presentation(mats),
            GroupKind::RawPresentation(p) => p.clone(),
            GroupKind::Catalog(_) => unreachable!("resolved"),
        }
    }

    /// All presentations known for the group: the derived one first, then
    /// any curated ones.
    pub fn presentations(&self) -> Vec<Presentation> {
        let mut out = vec![self.presentation()];
        if let Some(e) = self.catalog_entry() {
            for p in e.presentations {
                if !out.contains(&p) {
                    out.push(p);
                }
            }
        }
        out
    }

    pub fn is_matrix_based(&self) -> bool {
        matches!(
            self.resolve().kind,
            GroupKind::SemidirectZnZ(_) | GroupKind::Theta3 { .. } | GroupKind::Tower(_)
        )
    }
}

/// `[[1, 0, 0], [m, a, b], [0, c, d]]`
pub fn theta_matrix(a: &IntMatrix, m: &Int) -> IntMatrix {
    let z = BigInt::zero;
    IntMatrix::from_rows(&[
        vec![BigInt::one(), z(), z()],
        vec![m.clone(), a[(0, 0)].clone(), a[(0, 1)].clone()],
        vec![z(), a[(1, 0)].clone(), a[(1, 1)].clone()],
    ])
    .expect("3x3")
}

fn column_word(a: &IntMatrix, col: usize, offset: usize) -> Word {
    let mut w = Word::new();
    for i in 0..a.rows() {
        let e = a[(i, col)].to_i64().expect("exponent fits in i64");
        push_letter(&mut w, offset + i, e);
    }
    w
}

fn conj_relator(t: usize, x: usize, image: &Word) -> Word {
    // t x t^-1 image^-1
    concat(&vec![(t, 1), (x, 1), (t, -1)], &inverse(image))
}

/// `<t, x1..xn | [xi, xj], t xi t^-1 = (column i of A)>`
pub fn build_semidirect_presentation(a: &IntMatrix) -> Result<Presentation, GroupError> {
    check_unimodular(a)?;
    let n = a.rows();
    let mut gens = vec!["t".to_string()];
    gens.extend((1..=n).map(|i| format!("x{i}")));
    let mut rels = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            rels.push(commutator(&vec![(i, 1)], &vec![(j, 1)]));
        }
    }
    for i in 0..n {
        rels.push(conj_relator(0, i + 1, &column_word(a, i, 1)));
    }
    Presentation::new(gens, rels)
}

/// `<t, u, x, y | [t,u] = x^m, t x t^-1 = x^a y^c, t y t^-1 = x^b y^d,
/// ux = xu, uy = yu, xy = yx>`
pub fn build_theta3_presentation(a: &IntMatrix, m: &Int) -> Result<Presentation, GroupError> {
    if a.rows() != 2 || a.cols() != 2 {
        return Err(GroupError::Shape("the action on the fibre must be 2x2".into()));
    }
    check_unimodular(a)?;
    let (t, u, x, y) = (0, 1, 2, 3);
    let m = m.to_i64().ok_or_else(|| GroupError::Precondition("m too large".into()))?;
    let mut xm = Word::new();
    push_letter(&mut xm, x, m);
    let rels = vec![
        concat(&commutator(&vec![(t, 1)], &vec![(u, 1)]), &inverse(&xm)),
        conj_relator(t, x, &column_word(a, 0, x)),
        conj_relator(t, y, &column_word(a, 1, x)),
        commutator(&vec![(u, 1)], &vec![(x, 1)]),
        commutator(&vec![(u, 1)], &vec![(y, 1)]),
        commutator(&vec![(x, 1)], &vec![(y, 1)]),
    ];
    Presentation::new(["t", "u", "x", "y"].map(String::from).to_vec(), rels)
}

/// `<x1..x_{k+1} | x_{j+1} x_i x_{j+1}^-1 = (column i of A_j), i <= j>`
pub fn build_tower_presentation(mats: &[IntMatrix]) -> Presentation {
    let k = mats.len() + 1;
    let gens = (1..=k).map(|i| format!("x{i}")).collect();
    let mut rels = Vec::new();
    for (j, a) in mats.iter().enumerate() {
        for i in 0..a.cols() {
            rels.push(conj_relator(j + 1, i, &column_word(a, i, 0)));
        }
    }
    Presentation::new(gens, rels).expect("indices in range")
}

/// Exponent-sum matrix: one row per relator, one column per generator.
pub fn abelianization_matrix(p: &Presentation) -> IntMatrix {
    let mut m = IntMatrix::zeros(p.num_relators(), p.num_generators());
    let mut rows = m.to_rows();
    for (r, w) in p.relators().iter().enumerate() {
        for &(g, e) in w {
            rows[r][g] += e;
        }
    }
    if !rows.is_empty() {
        m = IntMatrix::from_rows(&rows).expect("rectangular");
    }
    m
}

/// `dim H_1(G; F)`
pub fn beta1(p: &Presentation, field: &Field) -> Result<usize, GroupError> {
    let m = abelianization_matrix(p);
    let rank = if m.rows() == 0 { 0 } else { exactalg::rank_over(&m, field)? };
    Ok(p.num_generators() - rank)
}

/// Torsion invariants and free rank of `H_1(G; Z)`.
pub fn h1(p: &Presentation) -> exactalg::CokernelInvariants {
    let m = abelianization_matrix(p).transpose();
    if m.cols() == 0 {
        return exactalg::CokernelInvariants {
            torsion: Vec::new(),
            free_rank: p.num_generators(),
        };
    }
    exactalg::cokernel_invariants(&m)
}

/// Orientation character is trivial. Each monodromy acts on the top
/// homology of the previous stage by its determinant, so a tower is
/// orientable exactly when every determinant is `+1`.
pub fn orientable_over_q(spec: &GroupSpec) -> Result<bool, GroupError> {
    if let Some(e) = spec.catalog_entry() {
        return match e.spec.orientable {
            Some(o) => Ok(o),
            None => orientable_over_q(&e.spec),
        };
    }
    let one = BigInt::one();
    match &spec.kind {
        GroupKind::SemidirectZnZ(a) | GroupKind::Theta3 { a, .. } => Ok(a.det()? == one),
        GroupKind::Tower(mats) => {
            for a in mats {
                if a.det()? != one {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        _ => spec.orientable.ok_or(GroupError::UnknownOrientability),
    }
}

pub fn hirsch_length(spec: &GroupSpec) -> Result<usize, GroupError> {
    if let Some(e) = spec.catalog_entry() {
        return match e.spec.hirsch {
            Some(h) => Ok(h),
            None => hirsch_length(&e.spec),
        };
    }
    match &spec.kind {
        GroupKind::SemidirectZnZ(a) => Ok(a.rows() + 1),
        GroupKind::Theta3 { .. } => Ok(4),
        GroupKind::Tower(mats) => Ok(mats.len() + 1),
        _ => spec.hirsch.ok_or(GroupError::UnknownHirsch),
    }
}

/// Rational first Betti number: `1 + nullity(I - θ)` for `Z^n ⋊ Z`, from
/// the presentation otherwise.
pub fn rational_beta(spec: &GroupSpec) -> usize {
    match spec.theta() {
        Some(theta) => 1 + exactalg::nullity_over_q(&theta.identity_minus()),
        None => beta1(&spec.presentation(), &Field::Rationals).expect("Q is a field"),
    }
}
