//! Universal comeasuring bialgebras `M1(A)`, `M(A)`, `M0(A)` of a
//! finite-dimensional algebra, their basis changes, quotients and checks.
//!
//! Matrix generators are written `t^a_i` (upper index first) and the unit
//! row of `M(A)` is `b_i = t^0_i`. Whenever a unit is declared it is moved
//! to basis position 0 internally; labels follow the basis elements so
//! generator names always refer to the user's basis.

mod basis;
mod build;
mod quotient;
mod spec;
mod verify;

pub use basis::{change_basis, BasisChange};
pub use build::{build_m, build_m0, build_m1};
pub use quotient::{coinvariants, finite_set_m, quotient_calculus_preserving, quotient_coproduct_preserving, CalculusSpec, CoalgebraSpec};
pub use spec::{algebras, validate_algebra, AlgebraReport, AlgebraSpec, AlgebraSpecJson};
pub(crate) use verify::coalgebra_checks;
pub use verify::{check_morphism, eliminate_generators, universal_check, verify_bialgebra, verify_coaction, UniversalCheck};

use crate::ncalg::{Generator, NCPoly, NcError, Presentation, TensorElement, Word};
use crate::scalars::{Field, Scalar};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComeasureError {
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error("structure constants are not associative at (i,j,k,l) = {0:?}")]
    NonAssociative((usize, usize, usize, usize)),
    #[error("declared unit fails at (j,k) = {0:?}")]
    BadUnit((usize, usize)),
    #[error("this construction needs a unit basis element")]
    MissingUnit,
    #[error("basis change matrix is singular")]
    SingularBasisChange,
    #[error("shape error: {0}")]
    Shape(String),
    #[error("map does not respect relations: {0}")]
    NotAMorphism(String),
}

impl From<crate::scalars::ScalarError> for ComeasureError {
    fn from(e: crate::scalars::ScalarError) -> Self {
        ComeasureError::Nc(e.into())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Variant {
    M1,
    M,
    M0,
    Quotient,
}

/// Where each matrix entry `t^a_i` lives: a generator, or a constant fixed
/// by the variant (`t^0_0 = 1`, `t^a_0 = 0`, and `b_i = 0` for `M0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub dim: usize,
    pub kind: Variant,
    pub ids: BTreeMap<(usize, usize), u32>,
}

impl Layout {
    pub fn entry(&self, pres: &Presentation, a: usize, i: usize) -> NCPoly {
        let f = pres.field();
        if let Some(&g) = self.ids.get(&(a, i)) {
            return pres.gen(g);
        }
        match (self.kind, a, i) {
            (Variant::M | Variant::M0, 0, 0) => NCPoly::one(f),
            _ => NCPoly::zero(f),
        }
    }

    /// The full `dim x dim` matrix of entries.
    pub fn matrix(&self, pres: &Presentation) -> Vec<Vec<NCPoly>> {
        (0..self.dim).map(|a| (0..self.dim).map(|i| self.entry(pres, a, i)).collect()).collect()
    }
}

/// `beta(e_j) = sum_a e_a (x) images[j][a]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coaction {
    pub images: Vec<Vec<NCPoly>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BialgebraPresentation {
    pub base: Presentation,
    pub coproduct: Vec<TensorElement>,
    pub counit: Vec<Scalar>,
    pub coaction: Option<Coaction>,
    pub variant: Variant,
    pub layout: Option<Layout>,
    /// The algebra the coaction refers to (unit first when present).
    pub spec: Option<AlgebraSpec>,
}

impl BialgebraPresentation {
    pub fn field(&self) -> Field {
        self.base.field()
    }

    pub fn generators(&self) -> &[Generator] {
        self.base.generators()
    }

    pub fn relations(&self) -> &[NCPoly] {
        self.base.relations()
    }

    pub fn var(&self, name: &str) -> Result<NCPoly, NcError> {
        self.base.var(name)
    }

    pub fn parse(&self, s: &str) -> Result<NCPoly, NcError> {
        self.base.parse_poly(s)
    }

    /// Matrix entry `t^a_i` in internal basis order.
    pub fn entry(&self, a: usize, i: usize) -> Option<NCPoly> {
        self.layout.as_ref().map(|l| l.entry(&self.base, a, i))
    }

    /// Coproduct extended as an algebra map.
    pub fn delta(&self, p: &NCPoly) -> TensorElement {
        TensorElement::extend_hom(p, &self.coproduct)
    }

    pub fn delta_word(&self, w: &Word) -> TensorElement {
        self.delta(&NCPoly::word(self.field(), w.clone()))
    }

    /// Counit extended as an algebra map.
    pub fn epsilon(&self, p: &NCPoly) -> Scalar {
        let f = self.field();
        let mut acc = f.zero();
        for (w, c) in p.terms() {
            let mut v = c.clone();
            for &g in w.ids() {
                v = &v * &self.counit[g as usize];
                if v.is_zero() {
                    break;
                }
            }
            acc = &acc + &v;
        }
        acc
    }

    /// Add relations; the result is marked as a quotient.
    pub fn with_relations(&self, extra: impl IntoIterator<Item = NCPoly>) -> BialgebraPresentation {
        let mut out = self.clone();
        out.base = self.base.with_relations(extra);
        out.variant = Variant::Quotient;
        out
    }

    /// Rename generators (same order).
    pub fn renamed(&self, names: &[&str]) -> BialgebraPresentation {
        let mut out = self.clone();
        out.base = self.base.renamed(names);
        out
    }

    pub fn coproduct_string(&self, g: u32) -> String {
        self.coproduct[g as usize].display(self.generators(), self.generators())
    }
}

pub(crate) fn t_name(labels: &[String], a: usize, i: usize) -> String {
    format!("t^{}_{}", labels[a], labels[i])
}

pub(crate) fn b_name(labels: &[String], i: usize) -> String {
    format!("b_{}", labels[i])
}
