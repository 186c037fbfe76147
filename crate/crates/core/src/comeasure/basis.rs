use super::{b_name, t_name, BialgebraPresentation, Coaction, ComeasureError, Layout, Variant};
use crate::linalg::{self, Matrix};
use crate::ncalg::{Generator, NCPoly, Presentation, TensorElement};
use crate::scalars::Scalar;

/// A change of basis of the comeasured algebra.
///
/// For `M1` the matrix acts on the whole basis, `e'_i = e_a lambda[a][i]`.
/// For `M` and `M0` it acts on the non-unit part, `e'_i = e_0 shift[i] +
/// e_a lambda[a][i]` with `a, i >= 1` (indices counted after the unit).
/// A shift is only meaningful for `M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    pub lambda: Matrix,
    pub shift: Option<Vec<Scalar>>,
    pub labels: Option<Vec<String>>,
}

impl BasisChange {
    pub fn new(lambda: Matrix) -> Self {
        BasisChange { lambda, shift: None, labels: None }
    }

    pub fn with_shift(mut self, shift: Vec<Scalar>) -> Self {
        self.shift = Some(shift);
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = Some(labels);
        self
    }

    fn extended(&self, kind: Variant, n: usize) -> Result<Matrix, ComeasureError> {
        let m = &self.lambda;
        let inner = if kind == Variant::M1 { n } else { n - 1 };
        if m.len() != inner || m.iter().any(|r| r.len() != inner) {
            return Err(ComeasureError::Shape(format!("basis change must be {inner}x{inner}")));
        }
        if kind == Variant::M1 {
            if self.shift.is_some() {
                return Err(ComeasureError::Shape("a shift needs a unit".into()));
            }
            return Ok(m.clone());
        }
        if kind == Variant::M0 && self.shift.as_ref().is_some_and(|s| s.iter().any(|x| !x.is_zero())) {
            return Err(ComeasureError::Shape("a shift does not preserve the splitting".into()));
        }
        let f = m.first().and_then(|r| r.first()).map(Scalar::field);
        let Some(f) = f else { return Ok(linalg::identity(crate::scalars::Field::Rational, 1)) };
        let mut ext = vec![vec![f.zero(); n]; n];
        ext[0][0] = f.one();
        if let Some(s) = &self.shift {
            if s.len() != n - 1 {
                return Err(ComeasureError::Shape(format!("shift must have length {}", n - 1)));
            }
            ext[0][1..n].clone_from_slice(s);
        }
        for a in 1..n {
            for i in 1..n {
                ext[a][i] = m[a - 1][i - 1].clone();
            }
        }
        Ok(ext)
    }
}

fn conj(l: &Matrix, t: &[Vec<NCPoly>], r: &Matrix) -> Vec<Vec<NCPoly>> {
    let n = t.len();
    let f = l[0][0].field();
    let mut out = vec![vec![NCPoly::zero(f); n]; n];
    for (a, row) in out.iter_mut().enumerate() {
        for (i, x) in row.iter_mut().enumerate() {
            for c in 0..n {
                if l[a][c].is_zero() {
                    continue;
                }
                for d in 0..n {
                    if !r[d][i].is_zero() && !t[c][d].is_zero() {
                        x.add_scaled(&t[c][d], &(&l[a][c] * &r[d][i]));
                    }
                }
            }
        }
    }
    out
}

/// Re-present a comeasuring bialgebra in a new basis of the algebra:
/// the matrix of generators becomes `Lambda^-1 T Lambda`.
pub fn change_basis(bp: &BialgebraPresentation, change: &BasisChange) -> Result<BialgebraPresentation, ComeasureError> {
    let (Some(layout), Some(spec)) = (&bp.layout, &bp.spec) else {
        return Err(ComeasureError::Shape("basis changes need a matrix layout".into()));
    };
    let n = layout.dim;
    let kind = layout.kind;
    let ext = change.extended(kind, n)?;
    let inv = linalg::inverse(&ext).ok_or(ComeasureError::SingularBasisChange)?;
    let unit = if kind == Variant::M1 { spec.unit() } else { Some(0) };
    let mut new_spec = spec.change_basis(&ext, unit)?;
    if let Some(l) = &change.labels {
        new_spec = new_spec.with_labels(l.clone())?;
    }
    let labels = new_spec.labels().to_vec();

    let old_t = layout.matrix(&bp.base);
    let forward = conj(&inv, &old_t, &ext);

    let mut names = vec![String::new(); bp.generators().len()];
    for (&(a, i), &g) in &layout.ids {
        names[g as usize] = if kind == Variant::M && a == 0 { b_name(&labels, i) } else { t_name(&labels, a, i) };
    }
    let gens: Vec<Generator> = names.into_iter().zip(bp.generators()).map(|(n, g)| Generator::weighted(n, g.weight)).collect();
    let free = Presentation::free(bp.field(), gens)?;
    let new_layout = Layout { dim: n, kind, ids: layout.ids.clone() };
    let new_t = new_layout.matrix(&free);
    let backward = conj(&ext, &new_t, &inv);

    // old generator -> polynomial in new generators, and new -> old
    let mut to_new = vec![NCPoly::zero(bp.field()); bp.generators().len()];
    let mut to_old = to_new.clone();
    for (&(a, i), &g) in &layout.ids {
        to_new[g as usize] = backward[a][i].clone();
        to_old[g as usize] = forward[a][i].clone();
    }
    let rels = bp.relations().iter().map(|r| r.substitute(&to_new));
    let base = free.with_relations(rels);
    let pull = |w: &crate::ncalg::Word| NCPoly::word(bp.field(), w.clone()).substitute(&to_new);
    let coproduct: Vec<TensorElement> = to_old.iter().map(|p| bp.delta(p).map_factors(pull, pull)).collect();
    let counit: Vec<Scalar> = to_old.iter().map(|p| bp.epsilon(p)).collect();
    let coaction = bp.coaction.as_ref().map(|co| {
        // beta(e'_i) = e'_a (x) (Lambda^-1)^a_c images[d][c] Lambda^d_i
        let mut tmat = vec![vec![NCPoly::zero(bp.field()); n]; n];
        for (c, row) in tmat.iter_mut().enumerate() {
            for (d, x) in row.iter_mut().enumerate() {
                *x = co.images[d][c].clone();
            }
        }
        let m = conj(&inv, &tmat, &ext);
        Coaction { images: (0..n).map(|i| (0..n).map(|a| m[a][i].substitute(&to_new)).collect()).collect() }
    });
    Ok(BialgebraPresentation { base, coproduct, counit, coaction, variant: bp.variant, layout: Some(new_layout), spec: Some(new_spec) })
}
