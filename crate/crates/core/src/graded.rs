//! Degree-truncated comeasurings of the line and the quantum-braided plane.
//!
//! Basis elements of the plane are multi-indices `(i, j)` standing for
//! `x^i y^j`; the line uses `(i, 0)`. The comeasuring generators are the
//! images of `x` and `y`,
//!
//! ```text
//! x -> sum x^i y^j (x) s_(i,j),    y -> sum x^i y^j (x) t_(i,j),
//! ```
//!
//! and every other matrix entry `t^(i,j)_(k,l)` is a q-convolution power of
//! these sequences. A truncation at degree `D` keeps the generators of
//! degree at most `D` and exactly those relations whose terms only involve
//! kept generators, so nothing is ever silently dropped.

use crate::comeasure::{quotient_coproduct_preserving, AlgebraSpec, BialgebraPresentation, Coaction, CoalgebraSpec, ComeasureError, Variant};
use crate::ncalg::{Generator, NCPoly, NcError, Presentation, Slice, TensorElement};
use crate::scalars::{q_binomial, Field, Scalar};
use std::collections::BTreeMap;
use thiserror::Error;

pub type MultiIndex = (u32, u32);

/// A finitely supported sequence on multi-indices.
pub type IndexedSequence = BTreeMap<MultiIndex, NCPoly>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GradedError {
    #[error(transparent)]
    Comeasure(#[from] ComeasureError),
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error("the deformation parameter must be nonzero")]
    ZeroQ,
    #[error("truncation degree must be at least {0}")]
    Degree(u32),
    #[error("cyclotomic fields are not supported here: q-integers may vanish")]
    Cyclotomic,
    #[error("generator extraction failed: {0}")]
    Extraction(String),
}

pub(crate) fn degree(m: MultiIndex) -> u32 {
    m.0 + m.1
}

/// `(s * t)_(i,j) = sum s_(a,b) t_(c,d)` over `(a,b) + (c,d) = (i,j)`,
/// dropping total degree above `trunc`.
pub fn convolve(s: &IndexedSequence, t: &IndexedSequence, trunc: u32) -> IndexedSequence {
    let mut out = IndexedSequence::new();
    for (&(a, b), x) in s {
        for (&(c, d), y) in t {
            if a + b + c + d > trunc {
                continue;
            }
            let e = out.entry((a + c, b + d)).or_insert_with(|| NCPoly::zero(x.field()));
            *e = &*e + &(x * y);
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// `(s *_q t)_(i,j) = sum q^(b c) s_(a,b) t_(c,d)`.
pub fn q_convolve(s: &IndexedSequence, t: &IndexedSequence, q: &Scalar, trunc: u32) -> IndexedSequence {
    let mut out = IndexedSequence::new();
    for (&(a, b), x) in s {
        for (&(c, d), y) in t {
            if a + b + c + d > trunc {
                continue;
            }
            let w = q.pow((b * c) as i64).expect("q is nonzero");
            let e = out.entry((a + c, b + d)).or_insert_with(|| NCPoly::zero(x.field()));
            e.add_scaled(&(x * y), &w);
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// Multi-indices of total degree at most `trunc`, by degree then by
/// decreasing power of `x`. The line keeps only `(i, 0)`.
pub fn indices(trunc: u32, plane: bool) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    for n in 0..=trunc {
        if plane {
            out.extend((0..=n).rev().map(|i| (i, n - i)));
        } else {
            out.push((n, 0));
        }
    }
    out
}

pub(crate) fn index_label(m: MultiIndex, plane: bool) -> String {
    if plane {
        format!("({},{})", m.0, m.1)
    } else {
        m.0.to_string()
    }
}

/// `C_q^2` modulo monomials of degree above `trunc` (or `C[x]` for the
/// line), unit first.
pub fn truncated_algebra(q: &Scalar, trunc: u32, plane: bool) -> Result<AlgebraSpec, GradedError> {
    let idx = indices(trunc, plane);
    let pos: BTreeMap<MultiIndex, usize> = idx.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let f = q.field();
    let spec = AlgebraSpec::from_fn(f, idx.len(), Some(0), |a, b, c| {
        let ((i, j), (k, l)) = (idx[a], idx[b]);
        match pos.get(&(i + k, j + l)) {
            Some(&p) if p == c => q.pow((j * k) as i64).expect("nonzero"),
            _ => f.zero(),
        }
    })?;
    Ok(spec.with_labels(idx.iter().map(|&m| index_label(m, plane)).collect())?)
}

/// The braided coaddition `Delta_+` as structure constants on
/// [`indices`], restricted to the triples whose relation stays in range.
pub fn coaddition(q: &Scalar, trunc: u32) -> CoalgebraSpec {
    let idx = indices(trunc, true);
    let n = idx.len();
    let f = q.field();
    let q2 = q * q;
    let mut d = vec![vec![vec![f.zero(); n]; n]; n];
    for (mi, &(m, nn)) in idx.iter().enumerate() {
        for (ji, &(i, j)) in idx.iter().enumerate() {
            for (ki, &(k, l)) in idx.iter().enumerate() {
                if i + k == m && j + l == nn {
                    let c = &(&q_binomial(m, i, &q2) * &q_binomial(nn, j, &q2)) * &q.pow((j * k) as i64).expect("nonzero");
                    d[mi][ji][ki] = c;
                }
            }
        }
    }
    let mut only = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if degree(idx[j]) + degree(idx[k]) <= trunc {
                    only.push((i, j, k));
                }
            }
        }
    }
    CoalgebraSpec { d, only: Some(only) }
}

/// A truncated comeasuring bialgebra with its table of matrix entries.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedGradedPresentation {
    pub bialgebra: BialgebraPresentation,
    pub degree: u32,
    pub variant: Variant,
    pub plane: bool,
    pub indices: Vec<MultiIndex>,
    /// `(upper, lower) -> t^upper_lower`, zero entries omitted.
    pub derived: BTreeMap<(MultiIndex, MultiIndex), NCPoly>,
    /// With the index `(0,0)` the true coproduct is an infinite series; the
    /// stored one is cut off at the truncation degree.
    pub formal: bool,
}

impl TruncatedGradedPresentation {
    pub fn derived(&self, upper: MultiIndex, lower: MultiIndex) -> NCPoly {
        self.derived.get(&(upper, lower)).cloned().unwrap_or_else(|| NCPoly::zero(self.bialgebra.field()))
    }

    pub fn derived_string(&self, upper: MultiIndex, lower: MultiIndex) -> String {
        self.derived(upper, lower).display(self.bialgebra.generators())
    }

    /// Rendered derived-generator table, `t^upper_lower = poly`.
    pub fn derived_table(&self) -> Vec<(String, String)> {
        self.derived
            .iter()
            .map(|(&(u, l), p)| (format!("t^{}_{}", index_label(u, self.plane), index_label(l, self.plane)), p.display(self.bialgebra.generators())))
            .collect()
    }
}

fn build(q: &Scalar, trunc: u32, plane: bool, variant: Variant) -> Result<TruncatedGradedPresentation, GradedError> {
    if q.is_zero() {
        return Err(GradedError::ZeroQ);
    }
    if trunc < 1 {
        return Err(GradedError::Degree(1));
    }
    let f = q.field();
    let with_origin = variant == Variant::M;
    let idx = indices(trunc, plane);
    let gen_idx: Vec<MultiIndex> = idx.iter().copied().filter(|&m| with_origin || m != (0, 0)).collect();

    // generators grouped by degree: s before t within a degree
    let mut gens = Vec::new();
    let mut s_ids = BTreeMap::new();
    let mut t_ids = BTreeMap::new();
    for n in 0..=trunc {
        let level: Vec<MultiIndex> = gen_idx.iter().copied().filter(|&m| degree(m) == n).collect();
        let weight = if with_origin { 1 } else { n };
        for &m in &level {
            s_ids.insert(m, gens.len() as u32);
            let name = if plane { format!("s_({},{})", m.0, m.1) } else { format!("t_{}", m.0) };
            gens.push(Generator::weighted(name, weight));
        }
        if plane {
            for &m in &level {
                t_ids.insert(m, gens.len() as u32);
                gens.push(Generator::weighted(format!("t_({},{})", m.0, m.1), weight));
            }
        }
    }
    let free = Presentation::free(f, gens)?;
    let s: IndexedSequence = s_ids.iter().map(|(&m, &g)| (m, free.gen(g))).collect();
    let t: IndexedSequence = t_ids.iter().map(|(&m, &g)| (m, free.gen(g))).collect();

    // q (s *_q t) = t *_q s, kept when every term's generators exist
    let mut rels = Vec::new();
    if plane {
        let big = 2 * trunc + 2;
        let st = q_convolve(&s, &t, q, big);
        let ts = q_convolve(&t, &s, q, big);
        let max_sum = if with_origin { trunc } else { trunc + 1 };
        for n in 0..=max_sum {
            for i in (0..=n).rev() {
                let m = (i, n - i);
                let z = NCPoly::zero(f);
                let r = &st.get(&m).unwrap_or(&z).scale(q) - ts.get(&m).unwrap_or(&z);
                rels.push(r);
            }
        }
    }
    let base = free.with_relations(rels);

    // matrix entries t^upper_lower
    let mut derived = BTreeMap::new();
    let one_seq: IndexedSequence = [((0, 0), NCPoly::one(f))].into_iter().collect();
    let mut s_pow = vec![one_seq.clone()];
    let mut t_pow = vec![one_seq];
    for k in 1..=trunc as usize {
        s_pow.push(q_convolve(&s_pow[k - 1], &s, q, trunc));
        t_pow.push(q_convolve(&t_pow[k - 1], &t, q, trunc));
    }
    for &lower in &idx {
        let (k, l) = lower;
        let seq = if plane { q_convolve(&s_pow[k as usize], &t_pow[l as usize], q, trunc) } else { s_pow[k as usize].clone() };
        for (upper, p) in seq {
            if variant == Variant::M0 && (upper == (0, 0)) != (lower == (0, 0)) {
                continue;
            }
            derived.insert((upper, lower), p);
        }
    }

    let entry = |u: MultiIndex, l: MultiIndex| derived.get(&(u, l)).cloned().unwrap_or_else(|| NCPoly::zero(f));
    let mut coproduct = vec![TensorElement::zero(f); base.generators().len()];
    let mut counit = vec![f.zero(); base.generators().len()];
    for (col, ids) in [((1, 0), &s_ids), ((0, 1), &t_ids)] {
        for (&m, &g) in ids {
            let mut d = TensorElement::zero(f);
            for &b in &idx {
                d.add_simple(&entry(m, b), &entry(b, col), &f.one());
            }
            coproduct[g as usize] = d;
            if m == col {
                counit[g as usize] = f.one();
            }
        }
    }
    let (spec, coaction) = if variant == Variant::M0 {
        let spec = truncated_algebra(q, trunc, plane)?;
        let images = idx.iter().map(|&l| idx.iter().map(|&u| entry(u, l)).collect()).collect();
        (Some(spec), Some(Coaction { images }))
    } else {
        (None, None)
    };
    let bialgebra = BialgebraPresentation { base, coproduct, counit, coaction, variant, layout: None, spec };
    Ok(TruncatedGradedPresentation { bialgebra, degree: trunc, variant, plane, indices: idx, derived, formal: with_origin })
}

/// Free comeasurings of the line fixing the origin, generators `t_1..t_D`.
pub fn build_m0_line(field: Field, trunc: u32) -> Result<TruncatedGradedPresentation, GradedError> {
    build(&field.one(), trunc, false, Variant::M0)
}

/// Comeasurings of the quantum-braided plane `yx = q xy` with the origin
/// index; the coproduct is only a truncated view.
pub fn build_m_qplane(q: &Scalar, trunc: u32) -> Result<TruncatedGradedPresentation, GradedError> {
    build(q, trunc, true, Variant::M)
}

/// Comeasurings of the quantum-braided plane fixing the origin.
pub fn build_m0_qplane(q: &Scalar, trunc: u32) -> Result<TruncatedGradedPresentation, GradedError> {
    build(q, trunc, true, Variant::M0)
}

/// The quotient of the degree-2 truncation respecting the braided
/// coaddition, as a presentation on `a, b, c, d` (the images of `x`, `y`
/// in degree one). Degree-two generators must vanish in the quotient.
pub fn build_mq2(q: &Scalar) -> Result<BialgebraPresentation, GradedError> {
    if matches!(q.field(), Field::Cyclotomic(_)) {
        return Err(GradedError::Cyclotomic);
    }
    let tg = build_m0_qplane(q, 2)?;
    let quot = quotient_coproduct_preserving(&tg.bialgebra, &coaddition(q, 2))?;
    let slice = Slice::new(&quot.base, 2)?;
    let gens = quot.generators();
    let low: Vec<u32> = (0..gens.len() as u32).filter(|&g| gens[g as usize].weight == 1).collect();
    if low.len() != 4 {
        return Err(GradedError::Extraction("expected four degree-one generators".into()));
    }
    for g in 0..gens.len() as u32 {
        if gens[g as usize].weight > 1 && !slice.contains(&quot.base.gen(g))? {
            return Err(GradedError::Extraction(format!("{} does not vanish", gens[g as usize].name)));
        }
    }
    // internal order s_(1,0), s_(0,1), t_(1,0), t_(0,1) is a, c, b, d
    let names = ["a", "b", "c", "d"];
    let to_new = [0u32, 2, 1, 3];
    let f = q.field();
    let out = Presentation::free(f, names.iter().map(|n| Generator::new(*n)).collect())?;
    let images: Vec<NCPoly> = (0..gens.len()).map(|g| if g < 4 { out.gen(to_new[g]) } else { NCPoly::zero(f) }).collect();
    let rels: Vec<NCPoly> =
        slice.ideal_basis().into_iter().filter(|r| r.terms().all(|(w, _)| w.ids().iter().all(|i| low.contains(i)))).map(|r| r.substitute(&images)).collect();
    let base = out.with_relations(rels);
    let m = [[out.gen(0), out.gen(1)], [out.gen(2), out.gen(3)]];
    let mut coproduct = Vec::new();
    let mut counit = Vec::new();
    for i in 0..2 {
        for j in 0..2 {
            let mut d = TensorElement::zero(f);
            for (k, row) in m.iter().enumerate() {
                d.add_simple(&m[i][k], &row[j], &f.one());
            }
            coproduct.push(d);
            counit.push(if i == j { f.one() } else { f.zero() });
        }
    }
    let co = tg.bialgebra.coaction.as_ref().expect("M0 carries a coaction");
    let images = co.images.iter().map(|row| row.iter().map(|p| p.substitute(&images)).collect()).collect();
    Ok(BialgebraPresentation {
        base,
        coproduct,
        counit,
        coaction: Some(Coaction { images }),
        variant: Variant::Quotient,
        layout: None,
        spec: tg.bialgebra.spec.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comeasure::{verify_bialgebra, verify_coaction};

    fn qsym() -> Scalar {
        Field::RationalQ.q().unwrap()
    }

    #[test]
    fn line_derived_entries() {
        let tg = build_m0_line(Field::Rational, 3).unwrap();
        assert!(tg.bialgebra.relations().is_empty());
        assert_eq!(tg.derived_string((3, 0), (2, 0)), "t_2*t_1+t_1*t_2");
        assert!(tg.derived((1, 0), (2, 0)).is_zero());
        assert_eq!(tg.bialgebra.coproduct_string(1), "t_2(x)t_1+t_1*t_1(x)t_2");
    }

    #[test]
    fn qplane_low_degree_relations() {
        let tg = build_m0_qplane(&qsym(), 1).unwrap();
        let b = &tg.bialgebra;
        let want = ["q*s_(1,0)*t_(1,0)-t_(1,0)*s_(1,0)", "q*s_(0,1)*t_(0,1)-t_(0,1)*s_(0,1)"];
        for w in want {
            let p = b.parse(w).unwrap();
            assert!(Slice::new(&b.base, 2).unwrap().contains(&p).unwrap(), "{w}");
        }
        assert_eq!(b.relations().len(), 3);
    }

    #[test]
    fn qplane_is_bialgebra_with_coaction() {
        let tg = build_m0_qplane(&qsym(), 2).unwrap();
        assert!(verify_bialgebra(&tg.bialgebra, 2).unwrap().passed);
        let r = verify_coaction(&tg.bialgebra, 2).unwrap();
        assert!(r.passed, "{r}");
    }

    #[test]
    fn mq2_has_six_relations() {
        let m = build_mq2(&qsym()).unwrap();
        assert_eq!(m.relations().len(), 6, "{:?}", m.base.relation_strings());
        assert_eq!(Slice::new(&m.base, 2).unwrap().quotient_dim(), 15);
    }
}
