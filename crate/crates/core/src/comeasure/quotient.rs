use super::{algebras, build_m1, BialgebraPresentation, ComeasureError, Variant};
use crate::linalg;
use crate::ncalg::{NCPoly, Slice, Word};
use crate::scalars::{Field, Scalar};
use std::collections::HashMap;

/// `Delta e_i = d[i][j][k] e_j (x) e_k` on the comeasured basis, in the
/// order of the coaction table. Coassociativity is not needed. `only` restricts the relations
/// to the listed `(i, j, k)`, for truncated bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraSpec {
    pub d: Vec<Vec<Vec<Scalar>>>,
    pub only: Option<Vec<(usize, usize, usize)>>,
}

impl CoalgebraSpec {
    pub fn new(d: Vec<Vec<Vec<Scalar>>>) -> Self {
        CoalgebraSpec { d, only: None }
    }
}

/// Quotient by `d_a^jk t^a_i = d_i^ab t^j_a t^k_b`, the comeasurings that
/// also respect the given coproduct.
pub fn quotient_coproduct_preserving(bp: &BialgebraPresentation, cs: &CoalgebraSpec) -> Result<BialgebraPresentation, ComeasureError> {
    let co = bp.coaction.as_ref().ok_or_else(|| ComeasureError::Shape("needs a coaction".into()))?;
    let n = co.images.len();
    let d = &cs.d;
    if d.len() != n || d.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
        return Err(ComeasureError::Shape(format!("coproduct tensor must be {n}x{n}x{n}")));
    }
    let t: Vec<Vec<NCPoly>> = (0..n).map(|a| (0..n).map(|i| co.images[i][a].clone()).collect()).collect();
    let f = bp.field();
    let triples: Vec<(usize, usize, usize)> = match &cs.only {
        Some(v) => v.clone(),
        None => (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))).collect(),
    };
    let mut rels = Vec::new();
    for (i, j, k) in triples {
        if i >= n || j >= n || k >= n {
            return Err(ComeasureError::Shape(format!("index ({i},{j},{k}) out of range")));
        }
        let mut r = NCPoly::zero(f);
        for a in 0..n {
            if !d[a][j][k].is_zero() {
                r.add_scaled(&t[a][i], &d[a][j][k]);
            }
            for b in 0..n {
                if !d[i][a][b].is_zero() {
                    r.add_scaled(&(&t[j][a] * &t[k][b]), &-&d[i][a][b]);
                }
            }
        }
        rels.push(r);
    }
    Ok(bp.with_relations(rels))
}

/// A finite set `1..=n` with the edges of a differential calculus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CalculusSpec {
    pub points: usize,
    pub edges: Vec<(usize, usize)>,
}

impl CalculusSpec {
    pub fn new(points: usize, edges: Vec<(usize, usize)>) -> Result<Self, ComeasureError> {
        for &(i, j) in &edges {
            if i == j || i == 0 || j == 0 || i > points || j > points {
                return Err(ComeasureError::Shape(format!("bad edge ({i},{j})")));
            }
        }
        Ok(CalculusSpec { points, edges })
    }

    fn is_edge(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }
}

/// `M1` of functions on `n` points with every row summing to one: the
/// unit-preserving comeasurings in the delta-function basis.
pub fn finite_set_m(field: Field, n: usize) -> Result<BialgebraPresentation, ComeasureError> {
    let bp = build_m1(&algebras::finite_set(field, n))?;
    let rows = (0..n).map(|i| {
        let mut r = NCPoly::constant(-field.one());
        for j in 0..n {
            r = &r + &bp.entry(i, j).expect("layout");
        }
        r
    });
    Ok(bp.with_relations(rows.collect::<Vec<_>>()))
}

/// Quotient of [`finite_set_m`] by `tau^i_j tau^k_l = 0` whenever `(i,k)`
/// is an edge and `(j,l)` is an off-diagonal non-edge.
pub fn quotient_calculus_preserving(bp: &BialgebraPresentation, cal: &CalculusSpec) -> Result<BialgebraPresentation, ComeasureError> {
    let layout = bp.layout.as_ref().ok_or_else(|| ComeasureError::Shape("needs a matrix layout".into()))?;
    if layout.kind != Variant::M1 || layout.dim != cal.points {
        return Err(ComeasureError::Shape("expects the delta-basis finite-set bialgebra".into()));
    }
    let t = layout.matrix(&bp.base);
    let n = cal.points;
    let mut rels = Vec::new();
    for &(i, k) in &cal.edges {
        for j in 1..=n {
            for l in 1..=n {
                if j != l && !cal.is_edge(j, l) {
                    rels.push(&t[i - 1][j - 1] * &t[k - 1][l - 1]);
                }
            }
        }
    }
    Ok(bp.with_relations(rels))
}

/// Basis of the coinvariants `{h : (pi (x) id) Delta h = 1 (x) h}` in the
/// quotient slice of weight at most `bound`, where `pi` sends generators
/// of `bp` into `target`. Returned in echelon form, largest words leading.
pub fn coinvariants(bp: &BialgebraPresentation, target: &BialgebraPresentation, pi: &[NCPoly], bound: u32) -> Result<Vec<NCPoly>, ComeasureError> {
    if pi.len() != bp.generators().len() {
        return Err(ComeasureError::Shape("one image per generator".into()));
    }
    let s = Slice::new(&bp.base, bound)?;
    let pi_weight = pi.iter().map(NCPoly::max_weight).max().unwrap_or(1).max(1);
    let tb = bound.max(bound * pi_weight).max(target.base.max_relation_weight());
    let ts = Slice::new(&target.base, tb)?;
    for r in bp.relations() {
        if r.max_weight() <= bound && !ts.contains(&r.substitute(pi))? {
            return Err(ComeasureError::NotAMorphism(r.display(bp.generators())));
        }
    }
    let f = bp.field();
    let basis = s.basis();
    // columns: pairs (target word, source word)
    let mut cols: HashMap<(Word, Word), usize> = HashMap::new();
    let mut columns: Vec<Vec<(usize, Scalar)>> = Vec::new();
    for w in &basis {
        let d = bp.delta_word(w);
        let mapped = d.map_factors(|u| NCPoly::word(f, u.clone()).substitute(pi), |v| NCPoly::word(f, v.clone()));
        let mut red = ts.tensor_reduce(&mapped, &s)?;
        red.add_term(Word::unit(), w.clone(), &-f.one());
        let col = red
            .terms()
            .map(|((u, v), c)| {
                let next = cols.len();
                (*cols.entry((u.clone(), v.clone())).or_insert(next), c.clone())
            })
            .collect();
        columns.push(col);
    }
    let mut m = vec![vec![f.zero(); basis.len()]; cols.len()];
    for (j, col) in columns.into_iter().enumerate() {
        for (i, c) in col {
            m[i][j] = c;
        }
    }
    let sols = linalg::nullspace(&m, basis.len(), f);
    // echelon form with the largest word first
    let nb = basis.len();
    let mut e: Vec<Vec<Scalar>> = sols.iter().map(|v| (0..nb).rev().map(|j| v[j].clone()).collect()).collect();
    linalg::rref(&mut e);
    Ok(e.into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .map(|r| {
            let mut p = NCPoly::zero(f);
            for (k, c) in r.iter().enumerate() {
                p.add_term(basis[nb - 1 - k].clone(), c);
            }
            p
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::super::{verify_bialgebra, BialgebraPresentation};
    use super::*;

    #[test]
    fn finite_set_rows_are_partitions_of_unity() {
        let bp = finite_set_m(Field::Rational, 2).unwrap();
        assert!(verify_bialgebra(&bp, 3).unwrap().passed);
    }

    #[test]
    fn universal_calculus_adds_nothing() {
        let bp = finite_set_m(Field::Rational, 3).unwrap();
        let all = (1..=3).flat_map(|i| (1..=3).filter(move |&j| j != i).map(move |j| (i, j))).collect();
        let q = quotient_calculus_preserving(&bp, &CalculusSpec::new(3, all).unwrap()).unwrap();
        assert_eq!(q.relations(), bp.relations());
    }

    #[test]
    fn trivial_projection_fixes_everything() {
        let f = Field::Rational;
        let bp: BialgebraPresentation = super::super::build_m(&algebras::roots_of_unity(f, 2)).unwrap();
        let pt = bp.with_relations(bp.base.gens().into_iter().zip(&bp.counit).map(|(g, e)| &g - &NCPoly::constant(e.clone())));
        let pi: Vec<NCPoly> = bp.counit.iter().map(|e| NCPoly::constant(e.clone())).collect();
        let co = coinvariants(&bp, &pt, &pi, 3).unwrap();
        assert_eq!(co.len(), Slice::new(&bp.base, 3).unwrap().quotient_dim());
    }
}
