use super::{RMatrix, RmatError};
use crate::graded::{degree, index_label, indices, MultiIndex};
use crate::scalars::{q_binomial, q_int, Field, Scalar};
use std::collections::{BTreeMap, HashMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LineKind {
    /// `Psi(x^i (x) x^j) = q^(ij) x^j (x) x^i`.
    Braided,
    /// The double braiding, `Psi(x (x) x) = q x (x) x + (1-q) x^2 (x) 1`.
    Conformal,
}

/// `[l][l+1]...[k-1]`, which is `[k-1]!/[l-1]!` without any division.
fn rising(l: u32, k: u32, q: &Scalar) -> Scalar {
    (l..k).fold(q.field().one(), |acc, m| &acc * &q_int(m, q))
}

fn conformal_entry(q: &Scalar, i: u32, j: u32, k: u32, l: u32) -> Result<Scalar, RmatError> {
    let f = q.field();
    let delta = |b: bool| if b { f.one() } else { f.zero() };
    if j == 0 {
        return Ok(delta(i == 0 && k == l));
    }
    if l == 0 {
        return Ok(delta(i == j && k == 0));
    }
    if i > j || i + k != j + l {
        return Ok(f.zero());
    }
    let one_minus_q = &f.one() - q;
    let c = &(&q_binomial(j, j - i, q) * &q.pow((l * i) as i64)?) * &one_minus_q.pow((j - i) as i64)?;
    Ok(&c * &rising(l, k, q))
}

fn line_entries(q: &Scalar, n: u32, kind: LineKind) -> Result<RMatrix, RmatError> {
    let f = q.field();
    let mut r = RMatrix::new(f, (0..n).map(|i| i.to_string()).collect());
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let v = match kind {
                        LineKind::Braided if i == j && k == l => q.pow((i * k) as i64)?,
                        LineKind::Braided => f.zero(),
                        LineKind::Conformal => conformal_entry(q, i, j, k, l)?,
                    };
                    r.set(i as usize, j as usize, k as usize, l as usize, v);
                }
            }
        }
    }
    Ok(r)
}

/// R-matrix of the line on the basis `1, x, ..., x^D`, checked on the
/// degree window `<= D`.
pub fn line_r(q: &Scalar, trunc: u32, kind: LineKind) -> Result<RMatrix, RmatError> {
    if trunc < 1 {
        return Err(RmatError::Shape("truncation degree must be at least 1".into()));
    }
    if q.is_zero() {
        return Err(RmatError::Shape("q must be nonzero".into()));
    }
    let r = line_entries(q, trunc + 1, kind)?;
    r.graded((0..=trunc).collect(), trunc)
}

/// The double braiding on `C[x]/x^n` with `q` a primitive `n`-th root of
/// unity. The ideal `x^n` is stable, so no window is needed.
pub fn anyonic_line(n: u32) -> Result<RMatrix, RmatError> {
    let f = Field::cyclotomic(n)?;
    line_entries(&f.q()?, n, LineKind::Conformal)
}

/// Sparse tensor of plane monomials `x^i y^j (x) x^k y^l`.
pub type QTensor = BTreeMap<(MultiIndex, MultiIndex), Scalar>;

fn add(t: &mut QTensor, key: (MultiIndex, MultiIndex), c: Scalar) {
    let f = c.field();
    let e = t.entry(key).or_insert_with(|| f.zero());
    *e = &*e + &c;
    if e.is_zero() {
        t.remove(&key);
    }
}

/// `x^a y^b x^c y^d = q^(bc) x^(a+c) y^(b+d)`.
fn mono_mul(q: &Scalar, u: MultiIndex, v: MultiIndex) -> (Scalar, MultiIndex) {
    (q.pow((u.1 * v.0) as i64).expect("q is nonzero"), (u.0 + v.0, u.1 + v.1))
}

const X: MultiIndex = (1, 0);
const Y: MultiIndex = (0, 1);

/// `Psi(y^i (x) x^j)` by recursion on `j`.
fn psi_yx(q: &Scalar, i: u32, j: u32, memo: &mut HashMap<(u32, u32), QTensor>) -> QTensor {
    if let Some(t) = memo.get(&(i, j)) {
        return t.clone();
    }
    let f = q.field();
    let mut out = QTensor::new();
    if i == 0 || j == 0 {
        out.insert(((j, 0), (0, i)), f.one());
    } else {
        let q2 = q * q;
        let first = q.pow(i as i64).expect("nonzero");
        for ((u, v), c) in psi_yx(q, i, j - 1, memo) {
            let (s, u2) = mono_mul(q, X, u);
            add(&mut out, (u2, v), &(&c * &s) * &first);
        }
        let second = &(&(&q2 - &f.one()) * &q_int(i, &q2)) * &q.pow(2 * (j as i64 - 1)).expect("nonzero");
        for ((u, v), c) in psi_yx(q, i - 1, j - 1, memo) {
            let (s1, u2) = mono_mul(q, Y, u);
            let (s2, v2) = mono_mul(q, v, X);
            add(&mut out, (u2, v2), &(&(&c * &s1) * &s2) * &second);
        }
    }
    memo.insert((i, j), out.clone());
    out
}

/// Braiding of the quantum-braided plane `yx = q xy` on monomials, by the
/// closed recursion: `Psi(x^i y^j (x) x^k y^l)` is `y^l Psi(y^j (x) x^k) x^i`
/// up to a power of `q`.
pub fn qplane_psi(q: &Scalar, m: MultiIndex, n: MultiIndex) -> QTensor {
    let (i, j) = m;
    let (k, l) = n;
    let e = i as i64 * (2 * k as i64 + l as i64 - j as i64) + l as i64 * (2 * j as i64 - k as i64);
    let pre = q.pow(e).expect("q is nonzero");
    let mut out = QTensor::new();
    for ((u, v), c) in psi_yx(q, j, k, &mut HashMap::new()) {
        let (s1, u2) = mono_mul(q, (0, l), u);
        let (s2, v2) = mono_mul(q, v, (i, 0));
        add(&mut out, (u2, v2), &(&(&c * &s1) * &s2) * &pre);
    }
    out
}

fn psi_letters(q: &Scalar, a: MultiIndex, b: MultiIndex) -> QTensor {
    let f = q.field();
    let q2 = q * q;
    let mut out = QTensor::new();
    match (a, b) {
        (X, X) => add(&mut out, (X, X), q2),
        (Y, Y) => add(&mut out, (Y, Y), q2),
        (X, Y) => add(&mut out, (Y, X), q.clone()),
        _ => {
            add(&mut out, (X, Y), q.clone());
            add(&mut out, (Y, X), &q2 - &f.one());
        }
    }
    out
}

fn split(m: MultiIndex) -> (MultiIndex, MultiIndex) {
    if m.0 > 0 {
        (X, (m.0 - 1, m.1))
    } else {
        (Y, (m.0, m.1 - 1))
    }
}

fn functorial(q: &Scalar, m: MultiIndex, n: MultiIndex, memo: &mut HashMap<(MultiIndex, MultiIndex), QTensor>) -> QTensor {
    if let Some(t) = memo.get(&(m, n)) {
        return t.clone();
    }
    let f = q.field();
    let mut out = QTensor::new();
    if degree(m) == 0 || degree(n) == 0 {
        out.insert((n, m), f.one());
    } else if degree(m) == 1 && degree(n) == 1 {
        out = psi_letters(q, m, n);
    } else if degree(m) >= 2 {
        // Psi(a m' (x) n): braid m' past n, then a past the result
        let (a, rest) = split(m);
        for ((n1, m1), c) in functorial(q, rest, n, memo) {
            for ((n2, a2), d) in functorial(q, a, n1, memo) {
                let (s, mm) = mono_mul(q, a2, m1);
                add(&mut out, (n2, mm), &(&c * &d) * &s);
            }
        }
    } else {
        // Psi(m (x) b n'): braid m past b, then the result past n'
        let (b, rest) = split(n);
        for ((b1, m1), c) in functorial(q, m, b, memo) {
            for ((n2, m2), d) in functorial(q, m1, rest, memo) {
                let (s, nn) = mono_mul(q, b1, n2);
                add(&mut out, (nn, m2), &(&c * &d) * &s);
            }
        }
    }
    memo.insert((m, n), out.clone());
    out
}

/// The same braiding built only from its values on `x, y` by
/// functoriality with respect to the product.
pub fn qplane_psi_functorial(q: &Scalar, m: MultiIndex, n: MultiIndex) -> QTensor {
    functorial(q, m, n, &mut HashMap::new())
}

/// R-matrix of the quantum-braided plane on `x^i y^j`, `i + j <= D`, in the
/// basis order of the graded module.
pub fn qplane_braiding(q: &Scalar, trunc: u32) -> Result<RMatrix, RmatError> {
    if trunc < 1 {
        return Err(RmatError::Shape("truncation degree must be at least 1".into()));
    }
    if q.is_zero() {
        return Err(RmatError::Shape("q must be nonzero".into()));
    }
    let idx = indices(trunc, true);
    let pos: BTreeMap<MultiIndex, usize> = idx.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let mut r = RMatrix::new(q.field(), idx.iter().map(|&m| index_label(m, true)).collect());
    for (i, &m) in idx.iter().enumerate() {
        for (j, &n) in idx.iter().enumerate() {
            for ((b, a), c) in qplane_psi(q, m, n) {
                r.set(pos[&a], i, pos[&b], j, c);
            }
        }
    }
    r.graded(idx.iter().map(|&m| degree(m)).collect(), trunc)
}

#[cfg(test)]
mod tests {
    use super::super::{biinvert, covariance_check, qybe_check};
    use super::*;
    use crate::comeasure::algebras::truncated_polynomial;
    use crate::graded::truncated_algebra;

    fn q() -> Scalar {
        Field::RationalQ.q().unwrap()
    }

    #[test]
    fn braided_line_is_diagonal() {
        let r = line_r(&q(), 3, LineKind::Braided).unwrap();
        assert_eq!(r.get(2, 2, 3, 3), q().pow(6).unwrap());
        assert!(r.get(1, 2, 3, 3).is_zero());
        assert!(qybe_check(&r).passed);
        let t = biinvert(&r).unwrap();
        assert_eq!(t.get(2, 2, 3, 3), q().pow(-6).unwrap());
    }

    #[test]
    fn conformal_low_entries() {
        let r = line_r(&q(), 3, LineKind::Conformal).unwrap();
        for a in 1..4 {
            for b in 1..4 {
                let want = if a == 1 && b == 1 { q() } else { Field::RationalQ.zero() };
                assert_eq!(r.get(a, 1, b, 1), want);
            }
        }
        assert_eq!(r.get(0, 1, 2, 1), &Field::RationalQ.one() - &q());
        // diagonal window: i = j gives q^(li)
        assert_eq!(r.get(2, 2, 3, 3), q().pow(6).unwrap());
        assert!(qybe_check(&r).passed);
        assert!(covariance_check(&r, &truncated_polynomial(Field::RationalQ, 4)).unwrap().passed);
    }

    #[test]
    fn conformal_at_one_is_the_flip() {
        let r = line_r(&Field::Rational.one(), 3, LineKind::Conformal).unwrap();
        let flip = RMatrix::kronecker(Field::Rational, 4);
        assert_eq!(r.entries, flip.entries);
    }

    #[test]
    fn anyonic_line_is_covariant_everywhere() {
        let r = anyonic_line(3).unwrap();
        assert!(qybe_check(&r).passed);
        let f = r.field();
        let rep = covariance_check(&r, &truncated_polynomial(f, 3)).unwrap();
        assert!(rep.passed, "{rep}");
    }

    #[test]
    fn qplane_seeds() {
        let q = q();
        let f = q.field();
        let yx = qplane_psi(&q, Y, X);
        assert_eq!(yx.get(&(X, Y)), Some(&q));
        assert_eq!(yx.get(&(Y, X)), Some(&(&(&q * &q) - &f.one())));
        assert_eq!(qplane_psi(&q, X, X).get(&(X, X)), Some(&(&q * &q)));
        assert_eq!(qplane_psi(&q, X, Y).get(&(Y, X)), Some(&q));
    }

    #[test]
    fn qplane_recursion_matches_functoriality() {
        let q = q();
        for m in indices(3, true) {
            for n in indices(3, true) {
                if degree(m) + degree(n) <= 4 {
                    assert_eq!(qplane_psi(&q, m, n), qplane_psi_functorial(&q, m, n), "{m:?} {n:?}");
                }
            }
        }
    }

    #[test]
    fn qplane_qybe_and_covariance() {
        let q = q();
        let r = qplane_braiding(&q, 2).unwrap();
        assert!(qybe_check(&r).passed);
        let rep = covariance_check(&r, &truncated_algebra(&q, 2, true).unwrap()).unwrap();
        assert!(rep.passed, "{rep}");
        biinvert(&r).unwrap();
    }
}
