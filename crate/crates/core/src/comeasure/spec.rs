//! Finite-dimensional algebras given by structure constants.

use super::ComeasureError;
use crate::linalg::{self, Matrix};
use crate::scalars::{Field, Scalar};
use serde::{Deserialize, Serialize};

/// `e_i e_j = c[i][j][k] e_k`, with an optional unit basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraSpec {
    field: Field,
    c: Vec<Vec<Vec<Scalar>>>,
    unit: Option<usize>,
    labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlgebraReport {
    pub associative: bool,
    pub unit_ok: bool,
    /// First `(i, j, k, l)` violating associativity.
    pub assoc_witness: Option<(usize, usize, usize, usize)>,
    /// First `(j, k)` where the declared unit fails.
    pub unit_witness: Option<(usize, usize)>,
}

impl AlgebraReport {
    pub fn passed(&self) -> bool {
        self.associative && self.unit_ok
    }
}

impl AlgebraSpec {
    pub fn new(field: Field, c: Vec<Vec<Vec<Scalar>>>, unit: Option<usize>) -> Result<Self, ComeasureError> {
        let n = c.len();
        if n == 0 {
            return Err(ComeasureError::Shape("algebra must have positive dimension".into()));
        }
        for row in &c {
            if row.len() != n || row.iter().any(|v| v.len() != n) {
                return Err(ComeasureError::Shape(format!("structure constants must be {n}x{n}x{n}")));
            }
            if row.iter().flatten().any(|s| s.field() != field) {
                return Err(ComeasureError::Shape("structure constants in the wrong field".into()));
            }
        }
        if unit.is_some_and(|u| u >= n) {
            return Err(ComeasureError::Shape("unit index out of range".into()));
        }
        let labels = default_labels(n, unit);
        Ok(AlgebraSpec { field, c, unit, labels })
    }

    pub fn from_fn(field: Field, n: usize, unit: Option<usize>, f: impl Fn(usize, usize, usize) -> Scalar) -> Result<Self, ComeasureError> {
        let c = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| f(i, j, k)).collect()).collect()).collect();
        Self::new(field, c, unit)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, ComeasureError> {
        if labels.len() != self.dim() {
            return Err(ComeasureError::Shape("one label per basis element".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }

    pub fn unit(&self) -> Option<usize> {
        self.unit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn c(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.c[i][j][k]
    }

    /// Reorder the basis so the unit is element 0; labels travel along.
    pub fn unit_first(&self) -> Result<AlgebraSpec, ComeasureError> {
        let u = self.unit.ok_or(ComeasureError::MissingUnit)?;
        if u == 0 {
            return Ok(self.clone());
        }
        let n = self.dim();
        let perm: Vec<usize> = std::iter::once(u).chain((0..n).filter(|&i| i != u)).collect();
        let c = (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| self.c[perm[i]][perm[j]][perm[k]].clone()).collect()).collect()).collect();
        let labels = perm.iter().map(|&p| self.labels[p].clone()).collect();
        Ok(AlgebraSpec { field: self.field, c, unit: Some(0), labels })
    }

    /// Structure constants in the basis `e'_i = e_a m[a][i]`.
    pub fn change_basis(&self, m: &Matrix, unit: Option<usize>) -> Result<AlgebraSpec, ComeasureError> {
        let n = self.dim();
        let inv = linalg::inverse(m).ok_or(ComeasureError::SingularBasisChange)?;
        let f = self.field;
        let mut c = vec![vec![vec![f.zero(); n]; n]; n];
        for (i, ci) in c.iter_mut().enumerate() {
            for (j, cij) in ci.iter_mut().enumerate() {
                // product of new basis elements in old coordinates
                let mut prod = vec![f.zero(); n];
                for a in 0..n {
                    if m[a][i].is_zero() {
                        continue;
                    }
                    for b in 0..n {
                        if m[b][j].is_zero() {
                            continue;
                        }
                        let s = &m[a][i] * &m[b][j];
                        for (k, pk) in prod.iter_mut().enumerate() {
                            if !self.c[a][b][k].is_zero() {
                                *pk = &*pk + &(&s * &self.c[a][b][k]);
                            }
                        }
                    }
                }
                for (l, cl) in cij.iter_mut().enumerate() {
                    let mut acc = f.zero();
                    for (k, pk) in prod.iter().enumerate() {
                        if !pk.is_zero() {
                            acc = &acc + &(&inv[l][k] * pk);
                        }
                    }
                    *cl = acc;
                }
            }
        }
        AlgebraSpec::new(f, c, unit)
    }

    /// Multiply two elements given by coordinates.
    pub fn multiply(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![self.field.zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let s = &x[i] * &y[j];
                for (k, o) in out.iter_mut().enumerate() {
                    if !self.c[i][j][k].is_zero() {
                        *o = &*o + &(&s * &self.c[i][j][k]);
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> AlgebraSpecJson {
        AlgebraSpecJson {
            field: Some(self.field.to_string()),
            dim: self.dim(),
            unit: self.unit,
            labels: Some(self.labels.clone()),
            c: self.c.iter().map(|r| r.iter().map(|v| v.iter().map(|s| s.to_string()).collect()).collect()).collect(),
        }
    }

    pub fn from_json(j: &AlgebraSpecJson, default_field: Field) -> Result<AlgebraSpec, ComeasureError> {
        let field = match &j.field {
            Some(s) => s.parse().map_err(crate::ncalg::NcError::from)?,
            None => default_field,
        };
        if j.c.len() != j.dim {
            return Err(ComeasureError::Shape(format!("dim is {} but c has {} rows", j.dim, j.c.len())));
        }
        let c =
            j.c.iter()
                .map(|r| r.iter().map(|v| v.iter().map(|s| Scalar::parse(field, s)).collect::<Result<Vec<_>, _>>()).collect::<Result<Vec<_>, _>>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(crate::ncalg::NcError::from)?;
        let spec = AlgebraSpec::new(field, c, j.unit)?;
        match &j.labels {
            Some(l) => spec.with_labels(l.clone()),
            None => Ok(spec),
        }
    }
}

fn default_labels(n: usize, unit: Option<usize>) -> Vec<String> {
    match unit {
        Some(u) => {
            let mut next = 1;
            (0..n)
                .map(|i| {
                    if i == u {
                        "0".to_string()
                    } else {
                        next += 1;
                        (next - 1).to_string()
                    }
                })
                .collect()
        }
        None => (1..=n).map(|i| i.to_string()).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraSpecJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub dim: usize,
    pub unit: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub c: Vec<Vec<Vec<String>>>,
}

/// Check associativity and, if declared, the unit.
pub fn validate_algebra(spec: &AlgebraSpec) -> AlgebraReport {
    let n = spec.dim();
    let f = spec.field;
    let mut assoc_witness = None;
    'outer: for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut lhs = f.zero();
                    let mut rhs = f.zero();
                    for a in 0..n {
                        lhs = &lhs + &(spec.c(i, j, a) * spec.c(a, k, l));
                        rhs = &rhs + &(spec.c(i, a, l) * spec.c(j, k, a));
                    }
                    if lhs != rhs {
                        assoc_witness = Some((i, j, k, l));
                        break 'outer;
                    }
                }
            }
        }
    }
    let mut unit_witness = None;
    if let Some(u) = spec.unit {
        'u: for j in 0..n {
            for k in 0..n {
                let delta = if j == k { f.one() } else { f.zero() };
                if *spec.c(u, j, k) != delta || *spec.c(j, u, k) != delta {
                    unit_witness = Some((j, k));
                    break 'u;
                }
            }
        }
    }
    AlgebraReport { associative: assoc_witness.is_none(), unit_ok: unit_witness.is_none(), assoc_witness, unit_witness }
}

/// Standard example algebras.
pub mod algebras {
    use super::*;

    /// `C[x]/x^N = 0` in the basis `1, x, ..., x^(N-1)`.
    pub fn truncated_polynomial(field: Field, n: usize) -> AlgebraSpec {
        AlgebraSpec::from_fn(field, n, Some(0), |i, j, k| if i + j == k { field.one() } else { field.zero() }).expect("well-formed")
    }

    /// `C[x]/x^N = 1` in the basis `1, x, ..., x^(N-1)`, indices mod `N`.
    pub fn roots_of_unity(field: Field, n: usize) -> AlgebraSpec {
        AlgebraSpec::from_fn(field, n, Some(0), |i, j, k| if (i + j) % n == k { field.one() } else { field.zero() }).expect("well-formed")
    }

    /// Functions on `n` points in the delta basis (no unit basis element).
    pub fn finite_set(field: Field, n: usize) -> AlgebraSpec {
        AlgebraSpec::from_fn(field, n, None, |i, j, k| if i == j && j == k { field.one() } else { field.zero() }).expect("well-formed")
    }

    /// Functions on `n` points in the basis `1, delta_1, ..., delta_(n-1)`,
    /// point 0 being the basepoint.
    pub fn finite_set_pointed(field: Field, n: usize) -> AlgebraSpec {
        let m = pointed_basis(field, n);
        let labels = (0..n).map(|i| i.to_string()).collect();
        finite_set(field, n).change_basis(&m, Some(0)).expect("invertible").with_labels(labels).expect("sized")
    }

    /// Columns: `1 = sum delta_a`, then `delta_i` for `i >= 1`.
    pub fn pointed_basis(field: Field, n: usize) -> Matrix {
        (0..n).map(|a| (0..n).map(|i| if i == 0 || a == i { field.one() } else { field.zero() }).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::algebras::*;
    use super::*;

    #[test]
    fn examples_are_associative() {
        let f = Field::Rational;
        assert!(validate_algebra(&roots_of_unity(f, 2)).passed());
        assert!(validate_algebra(&truncated_polynomial(f, 3)).passed());
        assert!(validate_algebra(&finite_set(f, 3)).associative);
        assert!(validate_algebra(&finite_set_pointed(f, 3)).passed());
    }

    #[test]
    fn dense_tensor_fails() {
        let f = Field::Rational;
        let spec = AlgebraSpec::from_fn(f, 2, None, |i, j, k| f.int((1 + i + 2 * j + 3 * k) as i64)).unwrap();
        let r = validate_algebra(&spec);
        assert!(!r.associative);
        assert!(r.assoc_witness.is_some());
    }

    #[test]
    fn unit_moves_to_front() {
        let f = Field::Rational;
        let spec = roots_of_unity(f, 3);
        let moved =
            spec.change_basis(&vec![vec![f.zero(), f.one(), f.zero()], vec![f.one(), f.zero(), f.zero()], vec![f.zero(), f.zero(), f.one()]], Some(1)).unwrap();
        assert!(validate_algebra(&moved).passed());
        assert_eq!(moved.unit_first().unwrap(), spec);
    }
}
