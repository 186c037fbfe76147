//! R-matrices on a finite basis and the comeasuring bialgebras they cut out.
//!
//! Entries are stored as `R^i_j^k_l` with the braiding
//!
//! ```text
//! Psi(e_i (x) e_j) = e_b (x) e_a R^a_i^b_j
//! ```
//!
//! As an operator on `V (x) V`, row `(i, k)` and column `(j, l)` hold
//! `R^i_j^k_l`. Graded families carry a degree per basis element and a
//! truncation window; identities are then only checked on index tuples of
//! total degree inside the window.

mod dualqt;
mod families;
mod frt;

pub use dualqt::{dualqt_verify, DualQTFunctional};
pub use families::{anyonic_line, line_r, qplane_braiding, qplane_psi, qplane_psi_functorial, LineKind, QTensor};
pub use frt::{build_frt, build_m0r_line, build_m1r, build_mr_qplane, frt_relations, mq2_surjection_check, RQuotient};

use crate::comeasure::{AlgebraSpec, ComeasureError};
use crate::graded::GradedError;
use crate::linalg;
use crate::ncalg::NcError;
use crate::report::Report;
use crate::scalars::{Field, Scalar, ScalarError};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RmatError {
    #[error(transparent)]
    Comeasure(#[from] ComeasureError),
    #[error(transparent)]
    Graded(#[from] GradedError),
    #[error(transparent)]
    Nc(#[from] NcError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("matrix is not invertible: {0}")]
    Singular(&'static str),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

pub type Index4 = (usize, usize, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMatrix {
    field: Field,
    labels: Vec<String>,
    entries: BTreeMap<Index4, Scalar>,
    degrees: Option<Vec<u32>>,
    window: Option<u32>,
}

impl RMatrix {
    pub fn new(field: Field, labels: Vec<String>) -> Self {
        RMatrix { field, labels, entries: BTreeMap::new(), degrees: None, window: None }
    }

    /// Identity entries `R^i_j^k_l = delta^i_j delta^k_l`: the plain flip.
    pub fn kronecker(field: Field, n: usize) -> Self {
        let mut r = RMatrix::new(field, (0..n).map(|i| i.to_string()).collect());
        for i in 0..n {
            for k in 0..n {
                r.set(i, i, k, k, field.one());
            }
        }
        r
    }

    /// Attach a degree to each basis element and check identities only on
    /// tuples whose lower indices have total degree at most `window`.
    pub fn graded(mut self, degrees: Vec<u32>, window: u32) -> Result<Self, RmatError> {
        if degrees.len() != self.dim() {
            return Err(RmatError::Shape(format!("{} degrees for {} basis elements", degrees.len(), self.dim())));
        }
        for &(i, j, k, l) in self.entries.keys() {
            if degrees[i] + degrees[k] != degrees[j] + degrees[l] {
                return Err(RmatError::Shape(format!("entry ({i},{j},{k},{l}) is not degree-compatible")));
            }
        }
        self.degrees = Some(degrees);
        self.window = Some(window);
        Ok(self)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> Option<&[u32]> {
        self.degrees.as_deref()
    }

    pub fn window(&self) -> Option<u32> {
        self.window
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> Scalar {
        self.entries.get(&(i, j, k, l)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, v: Scalar) {
        if v.is_zero() {
            self.entries.remove(&(i, j, k, l));
        } else {
            self.entries.insert((i, j, k, l), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Index4, &Scalar)> {
        self.entries.iter()
    }

    /// Does the tuple of lower indices fit in the window?
    pub fn in_window(&self, idx: &[usize]) -> bool {
        match (&self.degrees, self.window) {
            (Some(d), Some(w)) => idx.iter().map(|&i| d[i]).sum::<u32>() <= w,
            _ => true,
        }
    }

    /// Entries in the basis `e'_p = e_{perm[p]}`.
    pub fn permuted(&self, perm: &[usize]) -> Result<RMatrix, RmatError> {
        let n = self.dim();
        if perm.len() != n {
            return Err(RmatError::Shape("permutation has the wrong length".into()));
        }
        let mut inv = vec![usize::MAX; n];
        for (p, &u) in perm.iter().enumerate() {
            if u >= n || inv[u] != usize::MAX {
                return Err(RmatError::Shape("not a permutation".into()));
            }
            inv[u] = p;
        }
        let mut out = RMatrix::new(self.field, perm.iter().map(|&u| self.labels[u].clone()).collect());
        for (&(i, j, k, l), v) in &self.entries {
            out.set(inv[i], inv[j], inv[k], inv[l], v.clone());
        }
        out.degrees = self.degrees.as_ref().map(|d| perm.iter().map(|&u| d[u]).collect());
        out.window = self.window;
        Ok(out)
    }

    /// The operator on `V (x) V`, row `(i,k)`, column `(j,l)`.
    pub fn to_matrix(&self) -> linalg::Matrix {
        let n = self.dim();
        let mut m = vec![vec![self.field.zero(); n * n]; n * n];
        for (&(i, j, k, l), v) in &self.entries {
            m[i * n + k][j * n + l] = v.clone();
        }
        m
    }

    fn from_matrix(like: &RMatrix, m: &linalg::Matrix) -> RMatrix {
        let n = like.dim();
        let mut out = RMatrix { entries: BTreeMap::new(), ..like.clone() };
        for (row, r) in m.iter().enumerate() {
            for (col, v) in r.iter().enumerate() {
                out.set(row / n, col / n, row % n, col % n, v.clone());
            }
        }
        out
    }

    /// `R^-1` as an operator on `V (x) V`.
    pub fn inverse(&self) -> Result<RMatrix, RmatError> {
        let inv = linalg::inverse(&self.to_matrix()).ok_or(RmatError::Singular("R"))?;
        Ok(RMatrix::from_matrix(self, &inv))
    }

    /// Transpose in the second factor, `R^i_j^l_k`.
    pub fn transpose2(&self) -> RMatrix {
        let mut out = RMatrix { entries: BTreeMap::new(), ..self.clone() };
        for (&(i, j, k, l), v) in &self.entries {
            out.set(i, j, l, k, v.clone());
        }
        out
    }

    /// Index-swapped `R_21`, entries `R^k_l^i_j`.
    pub fn flipped(&self) -> RMatrix {
        let mut out = RMatrix { entries: BTreeMap::new(), ..self.clone() };
        for (&(i, j, k, l), v) in &self.entries {
            out.set(k, l, i, j, v.clone());
        }
        out
    }

    pub fn to_json(&self) -> RMatrixJson {
        RMatrixJson {
            field: Some(self.field.to_string()),
            labels: self.labels.clone(),
            entries: self.entries.iter().map(|(&(i, j, k, l), v)| EntryJson { i, j, k, l, v: v.to_string() }).collect(),
            degrees: self.degrees.clone(),
            window: self.window,
        }
    }

    pub fn from_json(j: &RMatrixJson, default_field: Field) -> Result<RMatrix, RmatError> {
        let field = match &j.field {
            Some(s) => s.parse()?,
            None => default_field,
        };
        let n = j.labels.len();
        let mut r = RMatrix::new(field, j.labels.clone());
        for e in &j.entries {
            if [e.i, e.j, e.k, e.l].iter().any(|&x| x >= n) {
                return Err(RmatError::Shape(format!("entry ({},{},{},{}) out of range", e.i, e.j, e.k, e.l)));
            }
            let v = Scalar::parse(field, &e.v)?;
            let old = r.get(e.i, e.j, e.k, e.l);
            r.set(e.i, e.j, e.k, e.l, &old + &v);
        }
        match (&j.degrees, j.window) {
            (Some(d), Some(w)) => r.graded(d.clone(), w),
            (None, None) => Ok(r),
            _ => Err(RmatError::Shape("degrees and window must be given together".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub v: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RMatrixJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    pub labels: Vec<String>,
    pub entries: Vec<EntryJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degrees: Option<Vec<u32>>,
    /// Identities are checked only where the lower indices have total
    /// degree at most this.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<u32>,
}

/// Entries keyed by one index pair, holding the other pair and the value.
pub(crate) type PairIndex = HashMap<(usize, usize), Vec<(usize, usize, Scalar)>>;

type Triple = (usize, usize, usize);
type Vec3 = BTreeMap<Triple, Scalar>;

/// Entries grouped by lower index pair.
fn by_lower(r: &RMatrix) -> PairIndex {
    let mut m: PairIndex = HashMap::new();
    for (&(i, j, k, l), v) in &r.entries {
        m.entry((j, l)).or_default().push((i, k, v.clone()));
    }
    m
}

/// Apply an operator acting on tensor factors `p < q` of `V (x) V (x) V`.
fn apply(op: &PairIndex, p: usize, q: usize, v: &Vec3) -> Vec3 {
    let mut out = Vec3::new();
    for (&t, c) in v {
        let arr = [t.0, t.1, t.2];
        let Some(list) = op.get(&(arr[p], arr[q])) else { continue };
        for (a, b, x) in list {
            let mut u = arr;
            u[p] = *a;
            u[q] = *b;
            let e = out.entry((u[0], u[1], u[2])).or_insert_with(|| c.field().zero());
            *e = &*e + &(c * x);
        }
    }
    out.retain(|_, x| !x.is_zero());
    out
}

/// `A_12 B_13 C_23 = C_23 B_13 A_12` on every basis triple in the window of `a`.
fn triple_identity(a: &RMatrix, b: &RMatrix, c: &RMatrix) -> Option<String> {
    let (oa, ob, oc) = (by_lower(a), by_lower(b), by_lower(c));
    let n = a.dim();
    let one = a.field.one();
    for l in 0..n {
        for m in 0..n {
            for k in 0..n {
                if !a.in_window(&[l, m, k]) {
                    continue;
                }
                let e: Vec3 = [((l, m, k), one.clone())].into_iter().collect();
                let lhs = apply(&oa, 0, 1, &apply(&ob, 0, 2, &apply(&oc, 1, 2, &e)));
                let rhs = apply(&oc, 1, 2, &apply(&ob, 0, 2, &apply(&oa, 0, 1, &e)));
                if lhs != rhs {
                    let lb = &a.labels;
                    return Some(format!("on e_{} (x) e_{} (x) e_{}", lb[l], lb[m], lb[k]));
                }
            }
        }
    }
    None
}

fn window_detail(report: &mut Report, r: &RMatrix) {
    match r.window {
        Some(w) => report.detail("window", format!("total degree <= {w}")),
        None => report.detail("window", "all tuples"),
    }
}

/// `R_12 R_13 R_23 = R_23 R_13 R_12`.
pub fn qybe_check(r: &RMatrix) -> Report {
    let mut report = Report::new("qybe");
    window_detail(&mut report, r);
    report.check("R12 R13 R23 = R23 R13 R12", triple_identity(r, r, r));
    report
}

/// `R~ = ((R^t2)^-1)^t2`, after checking `R^t2 R~^t2 = 1`.
pub fn biinvert(r: &RMatrix) -> Result<RMatrix, RmatError> {
    let t = r.transpose2().to_matrix();
    let inv = linalg::inverse(&t).ok_or(RmatError::Singular("second-factor transpose of R"))?;
    let prod = linalg::mat_mul(&t, &inv);
    if prod != linalg::identity(r.field, t.len()) {
        return Err(RmatError::Singular("second-factor transpose of R"));
    }
    Ok(RMatrix::from_matrix(r, &inv).transpose2())
}

fn aligned(r: &RMatrix, spec: &AlgebraSpec) -> Result<(), RmatError> {
    if spec.dim() != r.dim() {
        return Err(RmatError::Shape(format!("R has {} basis elements, the algebra {}", r.dim(), spec.dim())));
    }
    Ok(())
}

/// The two component identities saying the product of the algebra is a
/// morphism for the braiding:
///
/// ```text
/// c_ij^a R^k_a^m_n = c_ab^k R^a_i^m_c R^b_j^c_n
/// c_jk^a R^m_n^i_a = c_ab^i R^m_c^b_k R^c_n^a_j
/// ```
pub fn covariance_check(r: &RMatrix, spec: &AlgebraSpec) -> Result<Report, RmatError> {
    aligned(r, spec)?;
    let n = r.dim();
    let f = r.field;
    let mut report = Report::new("covariance");
    window_detail(&mut report, r);
    let mut first = None;
    let mut second = None;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if !r.in_window(&[x, y, z]) {
                    continue;
                }
                for k in 0..n {
                    for m in 0..n {
                        // (i, j, n) = (x, y, z)
                        if first.is_none() {
                            let (i, j, nn) = (x, y, z);
                            let mut lhs = f.zero();
                            let mut rhs = f.zero();
                            for a in 0..n {
                                let c = spec.c(i, j, a);
                                if !c.is_zero() {
                                    lhs = &lhs + &(c * &r.get(k, a, m, nn));
                                }
                                for b in 0..n {
                                    let cab = spec.c(a, b, k);
                                    if cab.is_zero() {
                                        continue;
                                    }
                                    for cc in 0..n {
                                        rhs = &rhs + &(&(cab * &r.get(a, i, m, cc)) * &r.get(b, j, cc, nn));
                                    }
                                }
                            }
                            if lhs != rhs {
                                first = Some(format!("(i,j,k,m,n) = ({i},{j},{k},{m},{nn}): {lhs} vs {rhs}"));
                            }
                        }
                        // (n, j, k) = (x, y, z), upper indices (m, i) = (k, m)
                        if second.is_none() {
                            let (nn, j, kk, mm, i) = (x, y, z, k, m);
                            let mut lhs = f.zero();
                            let mut rhs = f.zero();
                            for a in 0..n {
                                let c = spec.c(j, kk, a);
                                if !c.is_zero() {
                                    lhs = &lhs + &(c * &r.get(mm, nn, i, a));
                                }
                                for b in 0..n {
                                    let cab = spec.c(a, b, i);
                                    if cab.is_zero() {
                                        continue;
                                    }
                                    for cc in 0..n {
                                        rhs = &rhs + &(&(cab * &r.get(mm, cc, b, kk)) * &r.get(cc, nn, a, j));
                                    }
                                }
                            }
                            if lhs != rhs {
                                second = Some(format!("(j,k,m,n,i) = ({j},{kk},{mm},{nn},{i}): {lhs} vs {rhs}"));
                            }
                        }
                    }
                }
            }
        }
    }
    report.check("c_ij^a R^k_a^m_n = c_ab^k R^a_i^m_c R^b_j^c_n", first);
    report.check("c_jk^a R^m_n^i_a = c_ab^i R^m_c^b_k R^c_n^a_j", second);
    Ok(report)
}

/// The mixed identities `R'_12 R_13 R_23 = R_23 R_13 R'_12`,
/// `R_12 R_13 R'_23 = R'_23 R_13 R_12` and braided commutativity
/// `c_ij^k = c_ba^k R'^a_i^b_j`.
pub fn rprime_check(r: &RMatrix, rp: &RMatrix, spec: &AlgebraSpec) -> Result<Report, RmatError> {
    aligned(r, spec)?;
    if rp.dim() != r.dim() {
        return Err(RmatError::Shape("R and R' have different sizes".into()));
    }
    let n = r.dim();
    let mut report = Report::new("rprime");
    window_detail(&mut report, r);
    report.check("R'12 R13 R23 = R23 R13 R'12", triple_identity(rp, r, r));
    report.check("R12 R13 R'23 = R'23 R13 R12", triple_identity(r, r, rp));
    let mut w = None;
    'outer: for i in 0..n {
        for j in 0..n {
            if !r.in_window(&[i, j]) {
                continue;
            }
            for k in 0..n {
                let mut rhs = r.field.zero();
                for a in 0..n {
                    for b in 0..n {
                        let c = spec.c(b, a, k);
                        if !c.is_zero() {
                            rhs = &rhs + &(c * &rp.get(a, i, b, j));
                        }
                    }
                }
                if &rhs != spec.c(i, j, k) {
                    w = Some(format!("(i,j,k) = ({i},{j},{k})"));
                    break 'outer;
                }
            }
        }
    }
    report.check("c_ij^k = c_ba^k R'^a_i^b_j", w);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comeasure::algebras::truncated_polynomial;

    #[test]
    fn kronecker_passes_everything() {
        let f = Field::Rational;
        let r = RMatrix::kronecker(f, 3);
        assert!(qybe_check(&r).passed);
        assert_eq!(biinvert(&r).unwrap(), r);
        assert!(covariance_check(&r, &truncated_polynomial(f, 3)).unwrap().passed);
        assert!(rprime_check(&r, &r, &truncated_polynomial(f, 3)).unwrap().passed);
    }

    #[test]
    fn perturbed_r_fails_covariance() {
        let f = Field::Rational;
        let mut r = RMatrix::kronecker(f, 3);
        r.set(1, 1, 1, 1, f.int(2));
        let rep = covariance_check(&r, &truncated_polynomial(f, 3)).unwrap();
        assert!(!rep.passed);
        assert!(rep.first_failure().unwrap().witness.is_some());
    }

    #[test]
    fn json_round_trip() {
        let f = Field::RationalQ;
        let r = line_r(&f.q().unwrap(), 2, LineKind::Conformal).unwrap();
        let j = serde_json::to_string(&r.to_json()).unwrap();
        let back = RMatrix::from_json(&serde_json::from_str(&j).unwrap(), Field::Rational).unwrap();
        assert_eq!(back, r);
    }
}
