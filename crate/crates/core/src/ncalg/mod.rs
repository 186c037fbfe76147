//! Free noncommutative polynomials over a [`Field`], their tensor squares,
//! and presentations by generators and relations.
//!
//! Words carry their weight so that the derived order on [`Word`] is the
//! monomial order used everywhere: total weight first, then lexicographic
//! on generator ids.

mod io;
mod slice;

pub use io::{GeneratorJson, PresentationJson};
pub use slice::{reduce_mod_ideal, slice_basis, tensor_reduce, Slice, DEFAULT_WORD_CAP};

use crate::scalars::parse::{parse_expr, Expr};
use crate::scalars::{Field, Scalar, ScalarError};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NcError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("slice of weight {weight} has {words} words, above the cap of {cap}")]
    CapExceeded { weight: u32, words: usize, cap: usize },
    #[error("word of weight {weight} exceeds the bound {bound}")]
    WeightOverflow { weight: u32, bound: u32 },
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator weight must be positive (`{0}`)")]
    ZeroWeight(String),
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("cannot divide by a non-scalar polynomial")]
    NonScalarDivision,
    #[error("invalid JSON: {0}")]
    Json(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub weight: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>) -> Self {
        Generator { name: name.into(), weight: 1 }
    }

    pub fn weighted(name: impl Into<String>, weight: u32) -> Self {
        Generator { name: name.into(), weight }
    }
}

/// A monomial of the free algebra. The empty word is the unit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    weight: u32,
    ids: Vec<u32>,
}

impl Word {
    pub fn unit() -> Self {
        Word::default()
    }

    pub fn from_ids(ids: Vec<u32>, gens: &[Generator]) -> Self {
        let weight = ids.iter().map(|&i| gens[i as usize].weight).sum();
        Word { weight, ids }
    }

    pub fn letter(id: u32, weight: u32) -> Self {
        Word { weight, ids: vec![id] }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut ids = Vec::with_capacity(self.ids.len() + other.ids.len());
        ids.extend_from_slice(&self.ids);
        ids.extend_from_slice(&other.ids);
        Word { weight: self.weight + other.weight, ids }
    }

    /// Split off the first letter, whose weight is supplied by `gens`.
    pub fn split_first(&self, gens: &[Generator]) -> Option<(u32, Word)> {
        let (&first, rest) = self.ids.split_first()?;
        Some((first, Word { weight: self.weight - gens[first as usize].weight, ids: rest.to_vec() }))
    }

    pub fn display(&self, gens: &[Generator], sep: &str) -> String {
        if self.ids.is_empty() {
            return "1".to_string();
        }
        self.ids.iter().map(|&i| gens[i as usize].name.as_str()).collect::<Vec<_>>().join(sep)
    }
}

/// A noncommutative polynomial: finitely many words with nonzero coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NCPoly {
    field: Field,
    terms: BTreeMap<Word, Scalar>,
}

impl NCPoly {
    pub fn zero(field: Field) -> Self {
        NCPoly { field, terms: BTreeMap::new() }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::term(c, Word::unit())
    }

    pub fn word(field: Field, w: Word) -> Self {
        Self::term(field.one(), w)
    }

    pub fn term(c: Scalar, w: Word) -> Self {
        let mut terms = BTreeMap::new();
        let field = c.field();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        NCPoly { field, terms }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Largest word and its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn max_weight(&self) -> u32 {
        self.terms.keys().map(Word::weight).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &NCPoly, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.terms {
            self.add_term(w.clone(), &(a * c));
        }
    }

    pub fn scale(&self, c: &Scalar) -> NCPoly {
        if c.is_zero() {
            return NCPoly::zero(self.field);
        }
        NCPoly { field: self.field, terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect() }
    }

    /// Divide by the leading coefficient.
    pub fn monic(&self) -> NCPoly {
        match self.leading() {
            Some((_, c)) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// Scalar value if the polynomial is a constant.
    pub fn as_scalar(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(self.field.zero()),
            1 => self.terms.get(&Word::unit()).cloned(),
            _ => None,
        }
    }

    /// Apply the algebra map sending generator `g` to `images[g]`.
    pub fn substitute(&self, images: &[NCPoly]) -> NCPoly {
        let mut out = NCPoly::zero(self.field);
        let mut cache: BTreeMap<&[u32], NCPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            let img = word_image(w.ids(), images, self.field, &mut cache);
            out.add_scaled(&img, c);
        }
        out
    }

    /// Rename generator ids through `map` (weights from `gens`).
    pub fn relabel(&self, map: &[u32], gens: &[Generator]) -> NCPoly {
        let mut out = NCPoly::zero(self.field);
        for (w, c) in &self.terms {
            let ids = w.ids().iter().map(|&i| map[i as usize]).collect();
            out.add_term(Word::from_ids(ids, gens), c);
        }
        out
    }

    /// Render with `*` between letters, parseable by [`Presentation::parse_poly`].
    pub fn display(&self, gens: &[Generator]) -> String {
        self.render(gens, "*")
    }

    pub fn render(&self, gens: &[Generator], sep: &str) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (w, c) in self.terms.iter().rev() {
            let body = if w.is_empty() {
                coefficient_alone(c)
            } else {
                let ws = w.display(gens, sep);
                if c.is_one() {
                    ws
                } else if (-c).is_one() {
                    format!("-{ws}")
                } else {
                    format!("{}{sep}{ws}", coefficient_factor(c))
                }
            };
            if !s.is_empty() && !body.starts_with('-') {
                s.push('+');
            }
            let _ = write!(s, "{body}");
        }
        s
    }
}

fn word_image<'a>(ids: &'a [u32], images: &[NCPoly], field: Field, cache: &mut BTreeMap<&'a [u32], NCPoly>) -> NCPoly {
    if ids.is_empty() {
        return NCPoly::one(field);
    }
    if ids.len() == 1 {
        return images[ids[0] as usize].clone();
    }
    if let Some(p) = cache.get(ids) {
        return p.clone();
    }
    let head = word_image(&ids[..ids.len() - 1], images, field, cache);
    let r = &head * &images[ids[ids.len() - 1] as usize];
    cache.insert(ids, r.clone());
    r
}

/// Integers, plain fractions and signed monomials `c*q^k` need no brackets
/// in front of a word.
fn is_simple_coefficient(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    if body.is_empty() || body.contains(['+', '-', '(']) {
        return false;
    }
    match body.split_once('/') {
        None => true,
        Some((n, d)) => n.bytes().all(|b| b.is_ascii_digit()) && d.bytes().all(|b| b.is_ascii_digit()),
    }
}

fn coefficient_alone(c: &Scalar) -> String {
    c.to_string()
}

fn coefficient_factor(c: &Scalar) -> String {
    let s = c.to_string();
    if is_simple_coefficient(&s) {
        s
    } else {
        format!("({s})")
    }
}

impl Add<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &self.field.one());
        out
    }
}

impl Sub<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-self.field.one());
        out
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&-self.field.one())
    }
}

impl Mul<&NCPoly> for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        assert_eq!(self.field, rhs.field, "field mismatch");
        let mut out = NCPoly::zero(self.field);
        for (u, a) in &self.terms {
            for (v, b) in &rhs.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        out
    }
}

impl Mul<&Scalar> for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &Scalar) -> NCPoly {
        self.scale(rhs)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr<NCPoly> for NCPoly {
            type Output = NCPoly;
            fn $m(self, rhs: NCPoly) -> NCPoly {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&NCPoly> for NCPoly {
            type Output = NCPoly;
            fn $m(self, rhs: &NCPoly) -> NCPoly {
                (&self).$m(rhs)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

/// Free-algebra product; errors on field mismatch.
pub fn nc_mul(p: &NCPoly, r: &NCPoly) -> Result<NCPoly, NcError> {
    if p.field != r.field {
        return Err(ScalarError::FieldMismatch(p.field, r.field).into());
    }
    Ok(p * r)
}

/// An element of `F (x) G` for two free algebras, possibly the same.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorElement {
    field: Field,
    terms: BTreeMap<(Word, Word), Scalar>,
}

impl TensorElement {
    pub fn zero(field: Field) -> Self {
        TensorElement { field, terms: BTreeMap::new() }
    }

    pub fn one(field: Field) -> Self {
        Self::simple(&NCPoly::one(field), &NCPoly::one(field))
    }

    /// `a (x) b`.
    pub fn simple(a: &NCPoly, b: &NCPoly) -> Self {
        let mut t = TensorElement::zero(a.field);
        for (u, x) in &a.terms {
            for (v, y) in &b.terms {
                t.add_term(u.clone(), v.clone(), &(x * y));
            }
        }
        t
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word), &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, u: &Word, v: &Word) -> Scalar {
        self.terms.get(&(u.clone(), v.clone())).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn add_term(&mut self, u: Word, v: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let key = (u, v);
        let s = match self.terms.get(&key) {
            Some(a) => a + c,
            None => c.clone(),
        };
        if s.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, s);
        }
    }

    pub fn add_scaled(&mut self, other: &TensorElement, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for ((u, v), a) in &other.terms {
            self.add_term(u.clone(), v.clone(), &(a * c));
        }
    }

    pub fn add_simple(&mut self, a: &NCPoly, b: &NCPoly, c: &Scalar) {
        self.add_scaled(&TensorElement::simple(a, b), c);
    }

    pub fn scale(&self, c: &Scalar) -> TensorElement {
        let mut out = TensorElement::zero(self.field);
        out.add_scaled(self, c);
        out
    }

    /// Product in the ordinary (unbraided) tensor product algebra.
    pub fn mul(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero(self.field);
        for ((u1, v1), a) in &self.terms {
            for ((u2, v2), b) in &other.terms {
                out.add_term(u1.concat(u2), v1.concat(v2), &(a * b));
            }
        }
        out
    }

    /// Extend an algebra map `F -> F (x) G` given on generators.
    pub fn extend_hom(p: &NCPoly, images: &[TensorElement]) -> TensorElement {
        let mut out = TensorElement::zero(p.field);
        let mut cache: BTreeMap<Vec<u32>, TensorElement> = BTreeMap::new();
        for (w, c) in &p.terms {
            let img = tensor_word_image(w.ids(), images, p.field, &mut cache);
            out.add_scaled(&img, c);
        }
        out
    }

    /// Apply linear maps given on words to each factor.
    pub fn map_factors(&self, left: impl Fn(&Word) -> NCPoly, right: impl Fn(&Word) -> NCPoly) -> TensorElement {
        let mut out = TensorElement::zero(self.field);
        for ((u, v), c) in &self.terms {
            out.add_scaled(&TensorElement::simple(&left(u), &right(v)), c);
        }
        out
    }

    /// Collapse `a (x) b` to `a b` (both factors must share generators).
    pub fn multiply_out(&self) -> NCPoly {
        let mut out = NCPoly::zero(self.field);
        for ((u, v), c) in &self.terms {
            out.add_term(u.concat(v), c);
        }
        out
    }

    pub fn max_weights(&self) -> (u32, u32) {
        let l = self.terms.keys().map(|(u, _)| u.weight()).max().unwrap_or(0);
        let r = self.terms.keys().map(|(_, v)| v.weight()).max().unwrap_or(0);
        (l, r)
    }

    pub fn display(&self, left: &[Generator], right: &[Generator]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for ((u, v), c) in self.terms.iter().rev() {
            let body = format!("{}(x){}", u.display(left, "*"), v.display(right, "*"));
            let item = if c.is_one() {
                body
            } else if (-c).is_one() {
                format!("-{body}")
            } else {
                format!("{}*{body}", coefficient_factor(c))
            };
            if !s.is_empty() && !item.starts_with('-') {
                s.push('+');
            }
            s.push_str(&item);
        }
        s
    }
}

fn tensor_word_image(ids: &[u32], images: &[TensorElement], field: Field, cache: &mut BTreeMap<Vec<u32>, TensorElement>) -> TensorElement {
    if ids.is_empty() {
        return TensorElement::one(field);
    }
    if ids.len() == 1 {
        return images[ids[0] as usize].clone();
    }
    if let Some(t) = cache.get(ids) {
        return t.clone();
    }
    let head = tensor_word_image(&ids[..ids.len() - 1], images, field, cache);
    let r = head.mul(&images[ids[ids.len() - 1] as usize]);
    cache.insert(ids.to_vec(), r.clone());
    r
}

impl Add<&TensorElement> for &TensorElement {
    type Output = TensorElement;
    fn add(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &self.field.one());
        out
    }
}

impl Sub<&TensorElement> for &TensorElement {
    type Output = TensorElement;
    fn sub(self, rhs: &TensorElement) -> TensorElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-self.field.one());
        out
    }
}

/// An element of a threefold tensor product, used for coassociativity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tensor3 {
    field: Field,
    terms: BTreeMap<(Word, Word, Word), Scalar>,
}

impl Tensor3 {
    pub fn zero(field: Field) -> Self {
        Tensor3 { field, terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(Word, Word, Word), &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, a: Word, b: Word, c: Word, s: &Scalar) {
        if s.is_zero() {
            return;
        }
        let key = (a, b, c);
        let v = match self.terms.get(&key) {
            Some(x) => x + s,
            None => s.clone(),
        };
        if v.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
    }

    /// `(D (x) id)(x)` for a linear map `D` on the left factor.
    pub fn expand_left(x: &TensorElement, d: impl Fn(&Word) -> TensorElement) -> Tensor3 {
        let mut out = Tensor3::zero(x.field);
        for ((u, v), c) in x.terms() {
            for ((a, b), s) in d(u).terms() {
                out.add_term(a.clone(), b.clone(), v.clone(), &(c * s));
            }
        }
        out
    }

    /// `(id (x) D)(x)` for a linear map `D` on the right factor.
    pub fn expand_right(x: &TensorElement, d: impl Fn(&Word) -> TensorElement) -> Tensor3 {
        let mut out = Tensor3::zero(x.field);
        for ((u, v), c) in x.terms() {
            for ((a, b), s) in d(v).terms() {
                out.add_term(u.clone(), a.clone(), b.clone(), &(c * s));
            }
        }
        out
    }

    pub fn sub(&self, other: &Tensor3) -> Tensor3 {
        let mut out = self.clone();
        for ((a, b, c), s) in &other.terms {
            out.add_term(a.clone(), b.clone(), c.clone(), &-s);
        }
        out
    }
}

/// Generators and relations (each relation read as `= 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    field: Field,
    generators: Vec<Generator>,
    relations: Vec<NCPoly>,
}

impl Presentation {
    /// Relations are made monic, deduplicated and sorted by leading word.
    pub fn new(field: Field, generators: Vec<Generator>, relations: Vec<NCPoly>) -> Result<Self, NcError> {
        let mut seen = std::collections::HashSet::new();
        for g in &generators {
            if g.weight == 0 {
                return Err(NcError::ZeroWeight(g.name.clone()));
            }
            if !seen.insert(g.name.as_str()) {
                return Err(NcError::DuplicateGenerator(g.name.clone()));
            }
        }
        for r in &relations {
            if r.field != field {
                return Err(ScalarError::FieldMismatch(field, r.field).into());
            }
            if let Some(w) = r.terms.keys().find(|w| w.ids().iter().any(|&i| i as usize >= generators.len())) {
                return Err(NcError::UnknownGenerator(format!("id in {:?}", w.ids())));
            }
        }
        Ok(Presentation { field, generators, relations: canonical_relations(relations) })
    }

    pub fn free(field: Field, generators: Vec<Generator>) -> Result<Self, NcError> {
        Self::new(field, generators, Vec::new())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn relations(&self) -> &[NCPoly] {
        &self.relations
    }

    pub fn gen_names(&self) -> Vec<String> {
        self.generators.iter().map(|g| g.name.clone()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.generators.iter().position(|g| g.name == name).map(|i| i as u32)
    }

    /// The generator with the given name as a polynomial.
    pub fn var(&self, name: &str) -> Result<NCPoly, NcError> {
        let i = self.index_of(name).ok_or_else(|| NcError::UnknownGenerator(name.to_string()))?;
        Ok(self.gen(i))
    }

    pub fn gen(&self, i: u32) -> NCPoly {
        NCPoly::word(self.field, Word::letter(i, self.generators[i as usize].weight))
    }

    pub fn gens(&self) -> Vec<NCPoly> {
        (0..self.generators.len() as u32).map(|i| self.gen(i)).collect()
    }

    pub fn word(&self, ids: &[u32]) -> Word {
        Word::from_ids(ids.to_vec(), &self.generators)
    }

    pub fn max_relation_weight(&self) -> u32 {
        self.relations.iter().map(NCPoly::max_weight).max().unwrap_or(0)
    }

    pub fn with_relations(&self, extra: impl IntoIterator<Item = NCPoly>) -> Presentation {
        let mut rels = self.relations.clone();
        rels.extend(extra);
        Presentation { field: self.field, generators: self.generators.clone(), relations: canonical_relations(rels) }
    }

    pub fn renamed(&self, names: &[&str]) -> Presentation {
        assert_eq!(names.len(), self.generators.len());
        let generators = self.generators.iter().zip(names).map(|(g, n)| Generator { name: n.to_string(), weight: g.weight }).collect();
        Presentation { field: self.field, generators, relations: self.relations.clone() }
    }

    /// Parse a polynomial over this presentation's generators.
    pub fn parse_poly(&self, s: &str) -> Result<NCPoly, NcError> {
        let names = self.gen_names();
        let e = parse_expr(s, &names)?;
        self.eval(&e)
    }

    fn eval(&self, e: &Expr) -> Result<NCPoly, NcError> {
        let f = self.field;
        Ok(match e {
            Expr::Int(_) | Expr::Sym => NCPoly::constant(crate::scalars::parse::eval_scalar(e, f)?),
            Expr::Gen(g) => self.gen(*g as u32),
            Expr::Add(a, b) => &self.eval(a)? + &self.eval(b)?,
            Expr::Sub(a, b) => &self.eval(a)? - &self.eval(b)?,
            Expr::Mul(a, b) => &self.eval(a)? * &self.eval(b)?,
            Expr::Div(a, b) => {
                let d = self.eval(b)?.as_scalar().ok_or(NcError::NonScalarDivision)?;
                self.eval(a)?.scale(&d.inv()?)
            }
            Expr::Neg(a) => -&self.eval(a)?,
            Expr::Pow(a, k) => {
                let base = self.eval(a)?;
                if *k < 0 {
                    let s = base.as_scalar().ok_or(NcError::NonScalarDivision)?;
                    NCPoly::constant(s.pow(*k)?)
                } else {
                    (0..*k).fold(NCPoly::one(f), |acc, _| &acc * &base)
                }
            }
        })
    }

    /// Relations rendered as `lhs = 0` lines.
    pub fn relation_strings(&self) -> Vec<String> {
        self.relations.iter().map(|r| r.display(&self.generators)).collect()
    }
}

fn canonical_relations(relations: Vec<NCPoly>) -> Vec<NCPoly> {
    let mut rels: Vec<NCPoly> = relations.into_iter().filter(|r| !r.is_zero()).map(|r| r.monic()).collect();
    rels.sort_by(cmp_poly);
    rels.dedup();
    rels
}

/// Total order on polynomials: compare terms from the largest word down.
pub fn cmp_poly(a: &NCPoly, b: &NCPoly) -> std::cmp::Ordering {
    let mut ia = a.terms.iter().rev();
    let mut ib = b.terms.iter().rev();
    loop {
        match (ia.next(), ib.next()) {
            (None, None) => return std::cmp::Ordering::Equal,
            (None, Some(_)) => return std::cmp::Ordering::Less,
            (Some(_), None) => return std::cmp::Ordering::Greater,
            (Some((wa, ca)), Some((wb, cb))) => {
                let o = wa.cmp(wb).then_with(|| ca.to_string().cmp(&cb.to_string()));
                if o != std::cmp::Ordering::Equal {
                    return o;
                }
            }
        }
    }
}

/// All words of weight at most `bound`, shortest first.
pub fn words_up_to(gens: &[Generator], bound: u32) -> Vec<Word> {
    let mut out = vec![Word::unit()];
    let mut frontier = vec![Word::unit()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for w in &frontier {
            for (g, gen) in gens.iter().enumerate() {
                if gen.weight > 0 && w.weight() + gen.weight <= bound {
                    next.push(w.concat(&Word::letter(g as u32, gen.weight)));
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bt() -> Presentation {
        Presentation::free(Field::RationalQ, vec![Generator::new("b"), Generator::new("t")]).unwrap()
    }

    #[test]
    fn product_concatenates() {
        let p = bt();
        let (b, t) = (p.var("b").unwrap(), p.var("t").unwrap());
        assert_eq!((&b * &t).display(p.generators()), "b*t");
        let one = NCPoly::one(p.field());
        assert_eq!((&one + &t) * (&one - &t), &one - &(&t * &t));
        let s = &b + &t;
        assert_eq!((&s * &s).len(), 4);
    }

    #[test]
    fn parse_render_roundtrip() {
        let p = bt();
        for src in ["b*t+t*b", "(1+q)*b*b-q^-1*t", "3/2*b-1", "(1-q)/(1+q)*t*b*t", "-1/q*b"] {
            let x = p.parse_poly(src).unwrap();
            let y = p.parse_poly(&x.display(p.generators())).unwrap();
            assert_eq!(x, y, "{src}");
        }
    }

    #[test]
    fn word_order_weight_then_lex() {
        let gens = vec![Generator::new("a"), Generator::weighted("z", 2)];
        let w1 = Word::from_ids(vec![0, 0, 0], &gens);
        let w2 = Word::from_ids(vec![1, 0], &gens);
        let w3 = Word::from_ids(vec![0, 1], &gens);
        assert!(w1 < w3 && w3 < w2);
    }
}
