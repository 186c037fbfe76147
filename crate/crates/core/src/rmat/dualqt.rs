use super::{RMatrix, RmatError};
use crate::comeasure::BialgebraPresentation;
use crate::ncalg::{words_up_to, NCPoly, Slice, TensorElement, Word};
use crate::report::Report;
use crate::scalars::Scalar;
use std::collections::HashMap;

/// The pairing `R(t^i_j, t^k_l) = R^i_j^k_l` on matrix generators.
///
/// `positions[g]` is the matrix position `(upper, lower)` of generator `g`
/// in the basis of `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualQTFunctional {
    pub r: RMatrix,
    pub positions: Vec<(usize, usize)>,
}

impl DualQTFunctional {
    pub fn on_generators(&self, g: u32, h: u32) -> Scalar {
        let (i, j) = self.positions[g as usize];
        let (k, l) = self.positions[h as usize];
        self.r.get(i, j, k, l)
    }
}

/// Extension to words by `R(ab, c) = R(a, c1) R(b, c2)` and
/// `R(a, bc) = R(a1, c) R(a2, b)`; `split_left` picks which rule is used
/// when both arguments are products.
struct Evaluator<'a> {
    bp: &'a BialgebraPresentation,
    dq: &'a DualQTFunctional,
    split_left: bool,
    memo: HashMap<(Word, Word), Scalar>,
}

impl<'a> Evaluator<'a> {
    fn new(bp: &'a BialgebraPresentation, dq: &'a DualQTFunctional, split_left: bool) -> Self {
        Evaluator { bp, dq, split_left, memo: HashMap::new() }
    }

    fn counit(&self, w: &Word) -> Scalar {
        self.bp.epsilon(&NCPoly::word(self.bp.field(), w.clone()))
    }

    fn word(&mut self, u: &Word, v: &Word) -> Scalar {
        if u.is_empty() {
            return self.counit(v);
        }
        if v.is_empty() {
            return self.counit(u);
        }
        if let Some(s) = self.memo.get(&(u.clone(), v.clone())) {
            return s.clone();
        }
        let f = self.bp.field();
        let gens = self.bp.generators();
        let mut acc = f.zero();
        if u.len() == 1 && v.len() == 1 {
            acc = self.dq.on_generators(u.ids()[0], v.ids()[0]);
        } else if u.len() >= 2 && (self.split_left || v.len() == 1) {
            let (g, rest) = u.split_first(gens).expect("nonempty");
            let gw = Word::from_ids(vec![g], gens);
            for ((v1, v2), c) in self.bp.delta_word(v).terms() {
                let a = self.word(&gw, v1);
                if a.is_zero() {
                    continue;
                }
                let b = self.word(&rest, v2);
                acc = &acc + &(&(c * &a) * &b);
            }
        } else {
            let (h, rest) = v.split_first(gens).expect("nonempty");
            let hw = Word::from_ids(vec![h], gens);
            for ((u1, u2), c) in self.bp.delta_word(u).terms() {
                let a = self.word(u1, &rest);
                if a.is_zero() {
                    continue;
                }
                let b = self.word(u2, &hw);
                acc = &acc + &(&(c * &a) * &b);
            }
        }
        self.memo.insert((u.clone(), v.clone()), acc.clone());
        acc
    }

    fn poly_word(&mut self, p: &NCPoly, w: &Word) -> Scalar {
        let mut acc = self.bp.field().zero();
        for (u, c) in p.terms() {
            acc = &acc + &(c * &self.word(u, w));
        }
        acc
    }

    fn word_poly(&mut self, w: &Word, p: &NCPoly) -> Scalar {
        let mut acc = self.bp.field().zero();
        for (u, c) in p.terms() {
            acc = &acc + &(c * &self.word(w, u));
        }
        acc
    }
}

fn pairs(x: &TensorElement, y: &TensorElement) -> Vec<(Word, Word, Word, Word, Scalar)> {
    let mut out = Vec::new();
    for ((a1, a2), c) in x.terms() {
        for ((b1, b2), d) in y.terms() {
            out.push((a1.clone(), a2.clone(), b1.clone(), b2.clone(), c * d));
        }
    }
    out
}

/// Check that the pairing extends to a dual quasitriangular structure on
/// the quotient, within weight `bound`: the two extension orders agree,
/// relations pair to zero with every word, and
/// `b1 a1 R(a2, b2) = R(a1, b1) a2 b2` holds on generators mod the ideal.
pub fn dualqt_verify(bp: &BialgebraPresentation, dq: &DualQTFunctional, bound: u32) -> Result<Report, RmatError> {
    if dq.positions.len() != bp.generators().len() {
        return Err(RmatError::Shape("one matrix position per generator".into()));
    }
    let gens = bp.generators();
    let f = bp.field();
    let mut report = Report::new("dual quasitriangular");
    report.detail("bound", bound);
    let words = words_up_to(bp.generators(), bound);
    let mut left = Evaluator::new(bp, dq, true);
    let mut right = Evaluator::new(bp, dq, false);

    let mut w1 = None;
    'outer: for u in &words {
        for v in &words {
            if left.word(u, v) != right.word(u, v) {
                w1 = Some(format!("R({}, {})", u.display(gens, "*"), v.display(gens, "*")));
                break 'outer;
            }
        }
    }
    report.check("extension to words is consistent", w1);

    let mut w2 = None;
    'rel: for r in bp.relations() {
        for w in &words {
            let a = left.poly_word(r, w);
            let b = left.word_poly(w, r);
            if !a.is_zero() || !b.is_zero() {
                w2 = Some(format!("relation {} against {}", r.display(gens), w.display(gens, "*")));
                break 'rel;
            }
        }
    }
    report.check("relations pair to zero", w2);

    let slice_bound = bp.relations().iter().map(NCPoly::max_weight).max().unwrap_or(0).max(bound);
    let slice = Slice::new(&bp.base, slice_bound)?;
    let mut w3 = None;
    'gen: for a in 0..gens.len() as u32 {
        for b in 0..gens.len() as u32 {
            let da = &bp.coproduct[a as usize];
            let db = &bp.coproduct[b as usize];
            let mut diff = NCPoly::zero(f);
            for (a1, a2, b1, b2, c) in pairs(da, db) {
                let l = left.word(&a2, &b2);
                if !l.is_zero() {
                    diff.add_term(b1.concat(&a1), &(&c * &l));
                }
                let r = left.word(&a1, &b1);
                if !r.is_zero() {
                    diff.add_term(a2.concat(&b2), &-&(&c * &r));
                }
            }
            let nf = slice.reduce(&diff)?;
            if !nf.is_zero() {
                w3 = Some(format!("({}, {}): {}", gens[a as usize].name, gens[b as usize].name, nf.display(gens)));
                break 'gen;
            }
        }
    }
    report.check("quasi-commutativity on generators", w3);
    Ok(report)
}
