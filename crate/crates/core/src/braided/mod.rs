//! Braided comeasuring bialgebras built from an R-matrix on the algebra.
//!
//! A [`BraidingTensor`] stores `Psi` on pairs of generators and between
//! generators and the basis of the comeasured algebra. It is extended to
//! words by letting each factor cross one letter at a time:
//!
//! ```text
//! Psi(ab (x) c) = (Psi(a (x) .) (x) id)(id (x) Psi(b (x) c))
//! Psi(a (x) bc) = (id (x) Psi(. (x) c))(Psi(a (x) b) (x) id)
//! ```
//!
//! Products in the braided tensor square are `(a (x) b)(c (x) d) = a Psi(b (x) c) d`.

mod build;
mod verify;

pub use build::{
    braided_line_generators, braided_line_printed, braided_matrix_relations, build_braided, build_braided_m1, build_braided_mr, line_reading_report,
    ExponentReading, LineTable,
};
pub use verify::{transmute_check, verify_braided_bialgebra};

use crate::comeasure::{BialgebraPresentation, ComeasureError};
use crate::ncalg::{Generator, GeneratorJson, NCPoly, NcError, TensorElement, Word};
use crate::rmat::{RMatrix, RmatError};
use crate::scalars::{Field, ScalarError};
use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BraidedError {
    #[error(transparent)]
    Rmat(#[from] RmatError),
    #[error(transparent)]
    Comeasure(#[from] ComeasureError),
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("no braiding rule for {0}")]
    MissingRule(String),
}

/// `Psi(g (x) e_k) = sum_m e_m (x) p_m`, stored as the list of `(m, p_m)`.
pub type CrossRight = Vec<(usize, NCPoly)>;

/// `Psi(e_k (x) g) = sum_m p_m (x) e_m`, stored as the list of `(m, p_m)`.
pub type CrossLeft = Vec<(usize, NCPoly)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidingTensor {
    pub field: Field,
    pub pairs: BTreeMap<(u32, u32), TensorElement>,
    pub right: BTreeMap<(u32, usize), CrossRight>,
    pub left: BTreeMap<(usize, u32), CrossLeft>,
}

impl BraidingTensor {
    /// The flip `g (x) h -> h (x) g` on `n` generators, with no cross rules.
    pub fn flip(field: Field, gens: &[Generator]) -> Self {
        let mut pairs = BTreeMap::new();
        for (g, a) in gens.iter().enumerate() {
            for (h, b) in gens.iter().enumerate() {
                let mut t = TensorElement::zero(field);
                t.add_term(Word::letter(h as u32, b.weight), Word::letter(g as u32, a.weight), &field.one());
                pairs.insert((g as u32, h as u32), t);
            }
        }
        BraidingTensor { field, pairs, right: BTreeMap::new(), left: BTreeMap::new() }
    }
}

/// Braiding on words with a memo table. `split_left` chooses which
/// factor is taken apart first when both are products.
pub struct Braider<'a> {
    psi: &'a BraidingTensor,
    gens: &'a [Generator],
    split_left: bool,
    memo: HashMap<(Word, Word), TensorElement>,
}

impl<'a> Braider<'a> {
    pub fn new(psi: &'a BraidingTensor, gens: &'a [Generator], split_left: bool) -> Self {
        Braider { psi, gens, split_left, memo: HashMap::new() }
    }

    fn letter(&self, g: u32) -> Word {
        Word::letter(g, self.gens[g as usize].weight)
    }

    fn rule(&self, g: u32, h: u32) -> Result<&'a TensorElement, BraidedError> {
        self.psi.pairs.get(&(g, h)).ok_or_else(|| BraidedError::MissingRule(format!("{} (x) {}", self.gens[g as usize].name, self.gens[h as usize].name)))
    }

    pub fn words(&mut self, u: &Word, v: &Word) -> Result<TensorElement, BraidedError> {
        let f = self.psi.field;
        if u.is_empty() || v.is_empty() {
            let mut t = TensorElement::zero(f);
            t.add_term(v.clone(), u.clone(), &f.one());
            return Ok(t);
        }
        let key = (u.clone(), v.clone());
        if let Some(t) = self.memo.get(&key) {
            return Ok(t.clone());
        }
        let mut out = TensorElement::zero(f);
        if u.len() == 1 && v.len() == 1 {
            out = self.rule(u.ids()[0], v.ids()[0])?.clone();
        } else if u.len() >= 2 && (self.split_left || v.len() == 1) {
            let (g, rest) = u.split_first(self.gens).expect("nonempty");
            let gw = self.letter(g);
            for ((v1, u1), c) in self.words(&rest, v)?.terms() {
                for ((v2, g2), d) in self.words(&gw, v1)?.terms() {
                    out.add_term(v2.clone(), g2.concat(u1), &(c * d));
                }
            }
        } else {
            let (h, rest) = v.split_first(self.gens).expect("nonempty");
            let hw = self.letter(h);
            for ((h1, u1), c) in self.words(u, &hw)?.terms() {
                for ((v2, u2), d) in self.words(u1, &rest)?.terms() {
                    out.add_term(h1.concat(v2), u2.clone(), &(c * d));
                }
            }
        }
        self.memo.insert(key, out.clone());
        Ok(out)
    }

    /// `Psi` extended bilinearly to a tensor element.
    pub fn tensor(&mut self, x: &TensorElement) -> Result<TensorElement, BraidedError> {
        let mut out = TensorElement::zero(self.psi.field);
        for ((u, v), c) in x.terms() {
            out.add_scaled(&self.words(u, v)?, c);
        }
        Ok(out)
    }

    pub fn polys(&mut self, a: &NCPoly, b: &NCPoly) -> Result<TensorElement, BraidedError> {
        self.tensor(&TensorElement::simple(a, b))
    }

    /// `Psi(w (x) e_k)` as a map `m -> p_m`.
    pub fn word_basis(&mut self, w: &Word, k: usize) -> Result<BTreeMap<usize, NCPoly>, BraidedError> {
        let f = self.psi.field;
        let Some((g, rest)) = w.split_first(self.gens) else {
            return Ok([(k, NCPoly::one(f))].into_iter().collect());
        };
        let mut out: BTreeMap<usize, NCPoly> = BTreeMap::new();
        for (m, p) in self.word_basis(&rest, k)? {
            let rule = self.psi.right.get(&(g, m)).ok_or_else(|| BraidedError::MissingRule(format!("{} (x) e_{m}", self.gens[g as usize].name)))?;
            for (n, r) in rule {
                let e = out.entry(*n).or_insert_with(|| NCPoly::zero(f));
                *e = &*e + &(r * &p);
            }
        }
        out.retain(|_, p| !p.is_zero());
        Ok(out)
    }

    /// `Psi(e_k (x) w)` as a map `m -> p_m`.
    pub fn basis_word(&mut self, k: usize, w: &Word) -> Result<BTreeMap<usize, NCPoly>, BraidedError> {
        let f = self.psi.field;
        let Some((g, rest)) = w.split_first(self.gens) else {
            return Ok([(k, NCPoly::one(f))].into_iter().collect());
        };
        let rule = self.psi.left.get(&(k, g)).ok_or_else(|| BraidedError::MissingRule(format!("e_{k} (x) {}", self.gens[g as usize].name)))?;
        let mut out: BTreeMap<usize, NCPoly> = BTreeMap::new();
        for (m, p) in rule {
            for (n, r) in self.basis_word(*m, &rest)? {
                let e = out.entry(n).or_insert_with(|| NCPoly::zero(f));
                *e = &*e + &(p * &r);
            }
        }
        out.retain(|_, p| !p.is_zero());
        Ok(out)
    }

    pub fn poly_basis(&mut self, p: &NCPoly, k: usize) -> Result<BTreeMap<usize, NCPoly>, BraidedError> {
        let f = self.psi.field;
        let mut out: BTreeMap<usize, NCPoly> = BTreeMap::new();
        for (w, c) in p.terms() {
            for (m, r) in self.word_basis(w, k)? {
                let e = out.entry(m).or_insert_with(|| NCPoly::zero(f));
                e.add_scaled(&r, c);
            }
        }
        out.retain(|_, p| !p.is_zero());
        Ok(out)
    }

    pub fn basis_poly(&mut self, k: usize, p: &NCPoly) -> Result<BTreeMap<usize, NCPoly>, BraidedError> {
        let f = self.psi.field;
        let mut out: BTreeMap<usize, NCPoly> = BTreeMap::new();
        for (w, c) in p.terms() {
            for (m, r) in self.basis_word(k, w)? {
                let e = out.entry(m).or_insert_with(|| NCPoly::zero(f));
                e.add_scaled(&r, c);
            }
        }
        out.retain(|_, p| !p.is_zero());
        Ok(out)
    }

    /// `(a (x) b)(c (x) d) = a Psi(b (x) c) d`, extended bilinearly.
    pub fn mul(&mut self, x: &TensorElement, y: &TensorElement) -> Result<TensorElement, BraidedError> {
        let mut out = TensorElement::zero(self.psi.field);
        for ((a, b), s) in x.terms() {
            for ((c, d), t) in y.terms() {
                let st = s * t;
                for ((c1, b1), r) in self.words(b, c)?.terms() {
                    out.add_term(a.concat(c1), b1.concat(d), &(&st * r));
                }
            }
        }
        Ok(out)
    }
}

/// Product in the braided tensor square of the free algebra on `gens`.
pub fn braided_tensor_mul(x: &TensorElement, y: &TensorElement, psi: &BraidingTensor, gens: &[Generator]) -> Result<TensorElement, BraidedError> {
    Braider::new(psi, gens, true).mul(x, y)
}

/// A bialgebra presentation whose coproduct lands in the braided tensor
/// square, with the braiding of its generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidedPresentation {
    pub bialgebra: BialgebraPresentation,
    pub braiding: BraidingTensor,
    /// Conditions for the constant entries to braid trivially. Empty for `M1`.
    pub fixed: Vec<FixedRule>,
    /// The R-matrix in the internal basis order (unit first for `M`, `M0`).
    pub r: Option<RMatrix>,
}

/// Braiding formula minus the trivial braiding at a constant entry; it
/// must vanish modulo the ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedRule {
    pub name: String,
    pub residue: TensorElement,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraidingRuleJson {
    pub left: String,
    pub right: String,
    pub image: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BraidedPresentationJson {
    pub field: String,
    pub generators: Vec<GeneratorJson>,
    pub relations: Vec<String>,
    pub coproduct: BTreeMap<String, String>,
    pub braiding: Vec<BraidingRuleJson>,
}

impl BraidedPresentation {
    pub fn generators(&self) -> &[Generator] {
        self.bialgebra.generators()
    }

    pub fn relations(&self) -> &[NCPoly] {
        self.bialgebra.relations()
    }

    pub fn field(&self) -> Field {
        self.bialgebra.field()
    }

    /// `Psi(g (x) h)` for generators given by name.
    pub fn psi(&self, g: &str, h: &str) -> Result<TensorElement, BraidedError> {
        let pres = &self.bialgebra.base;
        let a = pres.var(g)?;
        let b = pres.var(h)?;
        Braider::new(&self.braiding, self.generators(), true).polys(&a, &b)
    }

    pub fn to_json(&self) -> BraidedPresentationJson {
        let p = self.bialgebra.base.to_json();
        let gens = self.generators();
        let coproduct = (0..gens.len()).map(|g| (gens[g].name.clone(), self.bialgebra.coproduct_string(g as u32))).collect();
        let braiding = self
            .braiding
            .pairs
            .iter()
            .map(|(&(g, h), t)| BraidingRuleJson { left: gens[g as usize].name.clone(), right: gens[h as usize].name.clone(), image: t.display(gens, gens) })
            .collect();
        BraidedPresentationJson { field: p.field, generators: p.generators, relations: p.relations, coproduct, braiding }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::Presentation;
    use crate::scalars::Scalar;

    fn line(q: &Scalar) -> (Presentation, BraidingTensor) {
        let f = q.field();
        let p = Presentation::free(f, vec![Generator::new("x")]).unwrap();
        let mut psi = BraidingTensor::flip(f, p.generators());
        let t = TensorElement::simple(&p.gen(0), &p.gen(0)).scale(q);
        psi.pairs.insert((0, 0), t);
        (p, psi)
    }

    #[test]
    fn flip_gives_the_ordinary_product() {
        let f = Field::Rational;
        let p = Presentation::free(f, vec![Generator::new("a"), Generator::new("b")]).unwrap();
        let psi = BraidingTensor::flip(f, p.generators());
        let x = TensorElement::simple(&(&p.gen(0) + &p.gen(1)), &p.gen(1));
        let y = TensorElement::simple(&p.gen(1), &(&p.gen(0) * &p.gen(0)));
        assert_eq!(braided_tensor_mul(&x, &y, &psi, p.generators()).unwrap(), x.mul(&y));
    }

    #[test]
    fn braided_line_product() {
        let f = Field::RationalQ;
        let q = f.q().unwrap();
        let (p, psi) = line(&q);
        let one = NCPoly::one(f);
        let x = p.gen(0);
        let lhs = braided_tensor_mul(&TensorElement::simple(&one, &x), &TensorElement::simple(&x, &one), &psi, p.generators()).unwrap();
        assert_eq!(lhs, TensorElement::simple(&x, &x).scale(&q));
        let xx = &x * &x;
        let xxx = &xx * &x;
        let t = Braider::new(&psi, p.generators(), true).polys(&xx, &xxx).unwrap();
        assert_eq!(t, TensorElement::simple(&xxx, &xx).scale(&q.pow(6).unwrap()));
    }

    #[test]
    fn missing_rule_is_reported() {
        let f = Field::Rational;
        let p = Presentation::free(f, vec![Generator::new("a")]).unwrap();
        let psi = BraidingTensor { field: f, pairs: BTreeMap::new(), right: BTreeMap::new(), left: BTreeMap::new() };
        let x = TensorElement::simple(&p.gen(0), &p.gen(0));
        assert!(matches!(braided_tensor_mul(&x, &x, &psi, p.generators()), Err(BraidedError::MissingRule(_))));
    }
}
