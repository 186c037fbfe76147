//! Ideal membership on bounded-weight slices.
//!
//! The ideal slice of weight `L` is the span of all `w1 * r * w2` with `r` a
//! relation and total weight at most `L`. It is row-reduced once, pivoting
//! on the largest word of each row; the quotient basis is the set of words
//! that never become a pivot, and normal forms are remainders against the
//! pivot rows.

use super::{NCPoly, NcError, Presentation, Tensor3, TensorElement, Word};
use crate::scalars::{Field, Scalar};
use std::collections::{BTreeMap, HashMap};

pub const DEFAULT_WORD_CAP: usize = 200_000;

type Row = Vec<(usize, Scalar)>;

#[derive(Clone, Debug)]
pub struct Slice {
    field: Field,
    bound: u32,
    words: Vec<Word>,
    index: HashMap<Word, usize>,
    /// Pivot column to the rest of its (monic) row, largest column first.
    pivots: HashMap<usize, Row>,
}

impl Slice {
    pub fn new(pres: &Presentation, bound: u32) -> Result<Slice, NcError> {
        Self::with_cap(pres, bound, DEFAULT_WORD_CAP)
    }

    pub fn with_cap(pres: &Presentation, bound: u32, cap: usize) -> Result<Slice, NcError> {
        let by_weight = words_by_weight(pres, bound, cap)?;
        let mut words: Vec<Word> = by_weight.iter().flatten().cloned().collect();
        words.sort();
        let index = words.iter().enumerate().map(|(i, w)| (w.clone(), i)).collect();
        let mut slice = Slice { field: pres.field(), bound, words, index, pivots: HashMap::new() };
        for r in pres.relations() {
            let mw = r.max_weight();
            if mw > bound {
                continue;
            }
            let budget = bound - mw;
            for a in 0..=budget {
                for w1 in &by_weight[a as usize] {
                    for b in 0..=(budget - a) {
                        for w2 in &by_weight[b as usize] {
                            let mut row = BTreeMap::new();
                            for (w, c) in r.terms() {
                                let full = w1.concat(w).concat(w2);
                                row.insert(slice.index[&full], c.clone());
                            }
                            slice.insert(row);
                        }
                    }
                }
            }
        }
        Ok(slice)
    }

    fn insert(&mut self, mut row: BTreeMap<usize, Scalar>) {
        while let Some((&lead, c)) = row.iter().next_back() {
            match self.pivots.get(&lead) {
                Some(tail) => {
                    let c = c.clone();
                    row.remove(&lead);
                    for (col, a) in tail {
                        add_entry(&mut row, *col, &-(a * &c));
                    }
                }
                None => {
                    let inv = c.inv().expect("nonzero pivot");
                    row.remove(&lead);
                    let tail = row.into_iter().rev().map(|(col, a)| (col, a * &inv)).collect();
                    self.pivots.insert(lead, tail);
                    return;
                }
            }
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// Dimension of the ideal slice.
    pub fn ideal_rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn word_count(&self) -> usize {
        self.words.len()
    }

    /// Words spanning the quotient slice, in monomial order.
    pub fn basis(&self) -> Vec<Word> {
        (0..self.words.len()).filter(|i| !self.pivots.contains_key(i)).map(|i| self.words[i].clone()).collect()
    }

    pub fn quotient_dim(&self) -> usize {
        self.words.len() - self.pivots.len()
    }

    /// Echelon basis of the ideal slice, sorted by leading word.
    pub fn ideal_basis(&self) -> Vec<NCPoly> {
        let mut cols: Vec<usize> = self.pivots.keys().copied().collect();
        cols.sort_unstable();
        cols.into_iter()
            .map(|lead| {
                let mut p = NCPoly::word(self.field, self.words[lead].clone());
                for (col, a) in &self.pivots[&lead] {
                    p.add_term(self.words[*col].clone(), a);
                }
                p
            })
            .collect()
    }

    /// Normal form: the projection onto the span of [`Slice::basis`].
    pub fn reduce(&self, p: &NCPoly) -> Result<NCPoly, NcError> {
        let mut row = BTreeMap::new();
        for (w, c) in p.terms() {
            let col = *self.index.get(w).ok_or(NcError::WeightOverflow { weight: w.weight(), bound: self.bound })?;
            row.insert(col, c.clone());
        }
        let mut out = NCPoly::zero(self.field);
        while let Some((col, c)) = row.pop_last() {
            match self.pivots.get(&col) {
                Some(tail) => {
                    for (k, a) in tail {
                        add_entry(&mut row, *k, &-(a * &c));
                    }
                }
                None => out.add_term(self.words[col].clone(), &c),
            }
        }
        Ok(out)
    }

    pub fn contains(&self, p: &NCPoly) -> Result<bool, NcError> {
        Ok(self.reduce(p)?.is_zero())
    }

    /// True when both slices span the same subspace.
    pub fn same_ideal(&self, other: &Slice) -> Result<bool, NcError> {
        if self.ideal_rank() != other.ideal_rank() {
            return Ok(false);
        }
        for r in self.ideal_basis() {
            if !other.contains(&r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Normal form in `(F/I) (x) (G/J)`, with `self` on the left.
    pub fn tensor_reduce(&self, x: &TensorElement, right: &Slice) -> Result<TensorElement, NcError> {
        let mut by_right: BTreeMap<&Word, NCPoly> = BTreeMap::new();
        for ((u, v), c) in x.terms() {
            by_right.entry(v).or_insert_with(|| NCPoly::zero(self.field)).add_term(u.clone(), c);
        }
        let mut by_left: BTreeMap<Word, NCPoly> = BTreeMap::new();
        for (v, left) in by_right {
            for (u, c) in self.reduce(&left)?.terms() {
                by_left.entry(u.clone()).or_insert_with(|| NCPoly::zero(self.field)).add_term(v.clone(), c);
            }
        }
        let mut out = TensorElement::zero(self.field);
        for (u, right_poly) in by_left {
            for (v, c) in right.reduce(&right_poly)?.terms() {
                out.add_term(u.clone(), v.clone(), c);
            }
        }
        Ok(out)
    }

    /// Normal form of a threefold tensor, reducing every factor here.
    pub fn tensor3_reduce(&self, x: &Tensor3) -> Result<Tensor3, NcError> {
        let mut nf: HashMap<Word, NCPoly> = HashMap::new();
        let mut get = |w: &Word| -> Result<NCPoly, NcError> {
            if let Some(p) = nf.get(w) {
                return Ok(p.clone());
            }
            let p = self.reduce(&NCPoly::word(self.field, w.clone()))?;
            nf.insert(w.clone(), p.clone());
            Ok(p)
        };
        let mut out = Tensor3::zero(self.field);
        for ((a, b, c), s) in x.terms() {
            let (pa, pb, pc) = (get(a)?, get(b)?, get(c)?);
            for (wa, ca) in pa.terms() {
                for (wb, cb) in pb.terms() {
                    let cab = &(ca * cb) * s;
                    for (wc, cc) in pc.terms() {
                        out.add_term(wa.clone(), wb.clone(), wc.clone(), &(&cab * cc));
                    }
                }
            }
        }
        Ok(out)
    }
}

fn add_entry(row: &mut BTreeMap<usize, Scalar>, col: usize, c: &Scalar) {
    if c.is_zero() {
        return;
    }
    let s = match row.get(&col) {
        Some(a) => a + c,
        None => c.clone(),
    };
    if s.is_zero() {
        row.remove(&col);
    } else {
        row.insert(col, s);
    }
}

/// All words grouped by exact weight `0..=bound`.
fn words_by_weight(pres: &Presentation, bound: u32, cap: usize) -> Result<Vec<Vec<Word>>, NcError> {
    let gens = pres.generators();
    let mut counts = vec![0usize; bound as usize + 1];
    counts[0] = 1;
    let mut total = 1usize;
    for w in 1..=bound as usize {
        for g in gens {
            let gw = g.weight as usize;
            if gw <= w {
                counts[w] = counts[w].saturating_add(counts[w - gw]);
            }
        }
        total = total.saturating_add(counts[w]);
        if total > cap {
            return Err(NcError::CapExceeded { weight: bound, words: total, cap });
        }
    }
    let mut out: Vec<Vec<Word>> = vec![Vec::new(); bound as usize + 1];
    out[0].push(Word::unit());
    for w in 1..=bound as usize {
        let mut level = Vec::with_capacity(counts[w]);
        for (gi, g) in gens.iter().enumerate() {
            let gw = g.weight as usize;
            if gw <= w {
                let letter = Word::letter(gi as u32, g.weight);
                for prefix in &out[w - gw] {
                    level.push(prefix.concat(&letter));
                }
            }
        }
        level.sort();
        out[w] = level;
    }
    Ok(out)
}

/// Quotient basis of weight at most `bound` and the ideal slice rank.
pub fn slice_basis(pres: &Presentation, bound: u32) -> Result<(Vec<Word>, usize), NcError> {
    let s = Slice::new(pres, bound)?;
    Ok((s.basis(), s.ideal_rank()))
}

pub fn reduce_mod_ideal(p: &NCPoly, pres: &Presentation, bound: u32) -> Result<NCPoly, NcError> {
    Slice::new(pres, bound)?.reduce(p)
}

pub fn tensor_reduce(x: &TensorElement, left: &Presentation, right: &Presentation, bound: u32) -> Result<TensorElement, NcError> {
    let l = Slice::new(left, bound)?;
    if left == right {
        return l.tensor_reduce(x, &l);
    }
    let r = Slice::new(right, bound)?;
    l.tensor_reduce(x, &r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::Generator;

    fn pres(names: &[&str], rels: &[&str]) -> Presentation {
        let p = Presentation::free(Field::RationalQ, names.iter().map(|n| Generator::new(*n)).collect()).unwrap();
        let r = rels.iter().map(|s| p.parse_poly(s).unwrap()).collect::<Vec<_>>();
        p.with_relations(r)
    }

    #[test]
    fn free_line() {
        let (basis, rank) = slice_basis(&pres(&["t"], &[]), 3).unwrap();
        assert_eq!(basis.len(), 4);
        assert_eq!(rank, 0);
    }

    #[test]
    fn single_rewrite_keeps_smaller_word() {
        let p = pres(&["b", "t"], &["b*t+t*b"]);
        let tb = p.parse_poly("t*b").unwrap();
        let r = reduce_mod_ideal(&tb, &p, 2).unwrap();
        assert_eq!(r, p.parse_poly("-b*t").unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let p = pres(&["a", "b", "c"], &[]);
        let err = Slice::with_cap(&p, 5, 100).unwrap_err();
        assert!(matches!(err, NcError::CapExceeded { .. }));
    }

    #[test]
    fn weight_overflow_is_error() {
        let p = pres(&["t"], &[]);
        let t3 = p.parse_poly("t*t*t").unwrap();
        assert!(matches!(reduce_mod_ideal(&t3, &p, 2), Err(NcError::WeightOverflow { .. })));
    }
}
