use super::{BraidedError, BraidedPresentation, BraidingTensor, CrossLeft, CrossRight, FixedRule};
use crate::comeasure::{AlgebraSpec, BialgebraPresentation, Coaction, ComeasureError, Layout, Variant};
use crate::ncalg::{Generator, NCPoly, Presentation, TensorElement};
use crate::report::Report;
use crate::rmat::{biinvert, covariance_check, qybe_check, PairIndex, RMatrix, RmatError};
use crate::scalars::{Field, Scalar};
use std::collections::{BTreeMap, HashMap};

/// `(i, j) -> u^i_j` on the braided line.
pub type LineTable = BTreeMap<(u32, u32), NCPoly>;

type Quads = HashMap<usize, Vec<(usize, usize, usize, Scalar)>>;

/// Entries `R^i_a^b_c` grouped by their first index `i`.
fn by_first(r: &RMatrix) -> Quads {
    let mut m: Quads = HashMap::new();
    for (&(i, a, b, c), v) in r.entries() {
        m.entry(i).or_default().push((a, b, c, v.clone()));
    }
    m
}

/// Entries `R^s_c^b_l` grouped by `(b, l)`.
fn by_second_pair(r: &RMatrix) -> PairIndex {
    let mut m: HashMap<_, Vec<_>> = HashMap::new();
    for (&(s, c, b, l), v) in r.entries() {
        m.entry((b, l)).or_default().push((s, c, v.clone()));
    }
    m
}

fn check_r(r: &RMatrix, spec: &AlgebraSpec) -> Result<(), RmatError> {
    let q = qybe_check(r);
    if !q.passed {
        return Err(RmatError::Precondition(q.to_string()));
    }
    let c = covariance_check(r, spec)?;
    if !c.passed {
        return Err(RmatError::Precondition(c.to_string()));
    }
    Ok(())
}

/// Move the unit to position 0 for the unital variants.
fn aligned(r: &RMatrix, spec: &AlgebraSpec, variant: Variant) -> Result<(AlgebraSpec, RMatrix), BraidedError> {
    match variant {
        Variant::M1 => Ok((spec.clone(), r.clone())),
        Variant::M | Variant::M0 => {
            let u = spec.unit().ok_or(ComeasureError::MissingUnit)?;
            let perm: Vec<usize> = std::iter::once(u).chain((0..spec.dim()).filter(|&i| i != u)).collect();
            Ok((spec.unit_first()?, r.permuted(&perm)?))
        }
        Variant::Quotient => Err(ComeasureError::Shape("choose M1, M or M0".into()).into()),
    }
}

fn layout(spec: &AlgebraSpec, variant: Variant) -> Result<(Presentation, Layout), BraidedError> {
    let n = spec.dim();
    let labels = spec.labels();
    let free = |a: usize, i: usize| match variant {
        Variant::M1 => true,
        Variant::M => i != 0,
        _ => a != 0 && i != 0,
    };
    let mut names = Vec::new();
    let mut ids = BTreeMap::new();
    if variant == Variant::M {
        for i in 1..n {
            ids.insert((0, i), names.len() as u32);
            names.push(Generator::new(format!("u^{}_{}", labels[0], labels[i])));
        }
    }
    for a in 0..n {
        for i in 0..n {
            if free(a, i) && !ids.contains_key(&(a, i)) {
                ids.insert((a, i), names.len() as u32);
                names.push(Generator::new(format!("u^{}_{}", labels[a], labels[i])));
            }
        }
    }
    let pres = Presentation::free(spec.field(), names)?;
    Ok((pres, Layout { dim: n, kind: variant, ids }))
}

/// The R-matrix data the braiding formulas need.
struct Data {
    n: usize,
    f: Field,
    r: RMatrix,
    rt: RMatrix,
    r_first: Quads,
    ri_first: Quads,
    r_second: PairIndex,
}

impl Data {
    fn new(r: RMatrix) -> Result<Data, BraidedError> {
        let ri = r.inverse()?;
        let rt = biinvert(&r)?;
        Ok(Data { n: r.dim(), f: r.field(), r_first: by_first(&r), ri_first: by_first(&ri), r_second: by_second_pair(&r), r, rt })
    }

    /// `Psi(u^i_j (x) u^k_l) = u^m_n (x) u^r_s R^i_a^d_m R^-1^a_r^n_b R^s_c^b_l R~^c_j^k_d`.
    fn psi_uu(&self, u: &[Vec<NCPoly>], (i, j): (usize, usize), (k, l): (usize, usize)) -> TensorElement {
        let mut coef: BTreeMap<(usize, usize, usize, usize), Scalar> = BTreeMap::new();
        for (a, d, m, v1) in self.r_first.get(&i).into_iter().flatten() {
            for (rr, nn, b, v2) in self.ri_first.get(a).into_iter().flatten() {
                let v12 = v1 * v2;
                for (s, c, v3) in self.r_second.get(&(*b, l)).into_iter().flatten() {
                    let v4 = self.rt.get(*c, j, k, *d);
                    if v4.is_zero() {
                        continue;
                    }
                    let e = coef.entry((*m, *nn, *rr, *s)).or_insert_with(|| self.f.zero());
                    *e = &*e + &(&(&v12 * v3) * &v4);
                }
            }
        }
        let mut t = TensorElement::zero(self.f);
        for ((m, nn, rr, s), c) in coef {
            t.add_simple(&u[m][nn], &u[rr][s], &c);
        }
        t
    }

    /// `Psi(u^i_j (x) e_k) = e_m (x) u^a_b R^-1^i_a^m_n R^b_j^n_k`.
    fn psi_ue(&self, u: &[Vec<NCPoly>], (i, j): (usize, usize), k: usize) -> BTreeMap<usize, NCPoly> {
        let mut out: BTreeMap<usize, NCPoly> = BTreeMap::new();
        for (a, m, nn, v1) in self.ri_first.get(&i).into_iter().flatten() {
            for b in 0..self.n {
                let v2 = self.r.get(b, j, *nn, k);
                if v2.is_zero() {
                    continue;
                }
                let e = out.entry(*m).or_insert_with(|| NCPoly::zero(self.f));
                e.add_scaled(&u[*a][b], &(v1 * &v2));
            }
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// `Psi(e_k (x) u^i_j) = u^a_b (x) e_m R~^n_k^i_a R^m_n^b_j`.
    fn psi_eu(&self, u: &[Vec<NCPoly>], k: usize, (i, j): (usize, usize)) -> BTreeMap<usize, NCPoly> {
        let mut out: BTreeMap<usize, NCPoly> = BTreeMap::new();
        for nn in 0..self.n {
            for a in 0..self.n {
                let v1 = self.rt.get(nn, k, i, a);
                if v1.is_zero() {
                    continue;
                }
                for m in 0..self.n {
                    for b in 0..self.n {
                        let v2 = self.r.get(m, nn, b, j);
                        if !v2.is_zero() {
                            let e = out.entry(m).or_insert_with(|| NCPoly::zero(self.f));
                            e.add_scaled(&u[a][b], &(&v1 * &v2));
                        }
                    }
                }
            }
        }
        out.retain(|_, p| !p.is_zero());
        out
    }
}

/// `c_ij^a u^k_a = c_ab^k R^-1^a_c^b_d u^c_e R^e_i^d_f u^f_j` for all `i, j, k`.
fn comeasuring_relations(d: &Data, spec: &AlgebraSpec, u: &[Vec<NCPoly>]) -> Vec<NCPoly> {
    let n = d.n;
    let f = d.f;
    // prod[c][dd][i][j] = sum_{e,g} u^c_e R^e_i^dd_g u^g_j
    let mut prod = vec![vec![vec![vec![NCPoly::zero(f); n]; n]; n]; n];
    for (&(e, i, dd, g), v) in d.r.entries() {
        for (c, row) in prod.iter_mut().enumerate() {
            if u[c][e].is_zero() {
                continue;
            }
            for (j, slot) in row[dd][i].iter_mut().enumerate() {
                if !u[g][j].is_zero() {
                    slot.add_scaled(&(&u[c][e] * &u[g][j]), v);
                }
            }
        }
    }
    let mut rels = Vec::new();
    for k in 0..n {
        let mut m: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for a in 0..n {
            for b in 0..n {
                let cab = spec.c(a, b, k);
                if cab.is_zero() {
                    continue;
                }
                for (c, _, dd, v) in d.ri_first.get(&a).into_iter().flatten().filter(|e| e.1 == b) {
                    let e = m.entry((*c, *dd)).or_insert_with(|| f.zero());
                    *e = &*e + &(cab * v);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                let mut rel = NCPoly::zero(f);
                for a in 0..n {
                    rel.add_scaled(&u[k][a], spec.c(i, j, a));
                }
                for (&(c, dd), v) in &m {
                    rel.add_scaled(&prod[c][dd][i][j], &-v);
                }
                if !rel.is_zero() {
                    rels.push(rel);
                }
            }
        }
    }
    rels
}

/// The braided comeasuring bialgebra of the given variant: generators
/// `u^a_i` at the free positions of the variant, the comeasuring relations
/// of the braided coaction `e_j -> e_a (x) u^a_j`, the matrix coalgebra and
/// the braiding of generators among themselves and with the algebra.
/// `r` is indexed like the basis of `spec`.
pub fn build_braided(r: &RMatrix, spec: &AlgebraSpec, variant: Variant) -> Result<BraidedPresentation, BraidedError> {
    check_r(r, spec)?;
    let (spec, r) = aligned(r, spec, variant)?;
    let d = Data::new(r)?;
    let n = d.n;
    let f = d.f;
    let (free, layout) = layout(&spec, variant)?;
    let u = layout.matrix(&free);
    let base = free.with_relations(comeasuring_relations(&d, &spec, &u));

    let gens = base.generators().len();
    let mut coproduct = vec![TensorElement::zero(f); gens];
    let mut counit = vec![f.zero(); gens];
    for (&(a, i), &g) in &layout.ids {
        for m in 0..n {
            coproduct[g as usize].add_simple(&u[a][m], &u[m][i], &f.one());
        }
        if a == i {
            counit[g as usize] = f.one();
        }
    }

    let mut pairs = BTreeMap::new();
    let mut right = BTreeMap::new();
    let mut left = BTreeMap::new();
    for (&p, &g) in &layout.ids {
        for (&p2, &h) in &layout.ids {
            pairs.insert((g, h), d.psi_uu(&u, p, p2));
        }
        for k in 0..n {
            right.insert((g, k), d.psi_ue(&u, p, k).into_iter().collect::<CrossRight>());
            left.insert((k, g), d.psi_eu(&u, k, p).into_iter().collect::<CrossLeft>());
        }
    }

    let labels = spec.labels();
    let name = |(a, i): (usize, usize)| format!("u^{}_{}", labels[a], labels[i]);
    let one = NCPoly::one(f);
    let mut fixed = Vec::new();
    let positions: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |i| (a, i))).collect();
    for &p in positions.iter().filter(|p| !layout.ids.contains_key(p)) {
        let c = &u[p.0][p.1];
        for &p2 in &positions {
            let y = &u[p2.0][p2.1];
            let residue = &d.psi_uu(&u, p, p2) - &TensorElement::simple(y, c);
            if !residue.is_zero() {
                fixed.push(FixedRule { name: format!("Psi({} (x) {})", name(p), name(p2)), residue });
            }
            let residue = &d.psi_uu(&u, p2, p) - &TensorElement::simple(c, y);
            if !residue.is_zero() {
                fixed.push(FixedRule { name: format!("Psi({} (x) {})", name(p2), name(p)), residue });
            }
        }
        for k in 0..n {
            let mut want: BTreeMap<usize, NCPoly> = BTreeMap::new();
            if !c.is_zero() {
                want.insert(k, c.clone());
            }
            for (side, got) in [("right", d.psi_ue(&u, p, k)), ("left", d.psi_eu(&u, k, p))] {
                for m in 0..n {
                    let g = got.get(&m).cloned().unwrap_or_else(|| NCPoly::zero(f));
                    let w = want.get(&m).cloned().unwrap_or_else(|| NCPoly::zero(f));
                    let diff = &g - &w;
                    if !diff.is_zero() {
                        let what = if side == "right" {
                            format!("Psi({} (x) e_{}) at e_{}", name(p), labels[k], labels[m])
                        } else {
                            format!("Psi(e_{} (x) {}) at e_{}", labels[k], name(p), labels[m])
                        };
                        fixed.push(FixedRule { name: what, residue: TensorElement::simple(&diff, &one) });
                    }
                }
            }
        }
    }

    let images = (0..n).map(|j| (0..n).map(|a| u[a][j].clone()).collect()).collect();
    let bialgebra = BialgebraPresentation { base, coproduct, counit, coaction: Some(Coaction { images }), variant, layout: Some(layout), spec: Some(spec) };
    Ok(BraidedPresentation { bialgebra, braiding: BraidingTensor { field: f, pairs, right, left }, fixed, r: Some(d.r) })
}

pub fn build_braided_m1(r: &RMatrix, spec: &AlgebraSpec) -> Result<BraidedPresentation, BraidedError> {
    build_braided(r, spec, Variant::M1)
}

fn op_mul(x: &[Vec<NCPoly>], y: &[Vec<NCPoly>]) -> Vec<Vec<NCPoly>> {
    let n = x.len();
    let f = x[0][0].field();
    let mut out = vec![vec![NCPoly::zero(f); n]; n];
    for (i, row) in out.iter_mut().enumerate() {
        for (k, xik) in x[i].iter().enumerate() {
            if xik.is_zero() {
                continue;
            }
            for (j, slot) in row.iter_mut().enumerate() {
                if !y[k][j].is_zero() {
                    *slot = &*slot + &(xik * &y[k][j]);
                }
            }
        }
    }
    out
}

/// Operators on `V (x) V` with polynomial entries, row `(i, k)` and
/// column `(j, l)` at `i n + k` and `j n + l`.
pub(crate) struct Ops {
    pub r: Vec<Vec<NCPoly>>,
    pub r21: Vec<Vec<NCPoly>>,
    pub ri: Vec<Vec<NCPoly>>,
    pub u1: Vec<Vec<NCPoly>>,
    pub u2: Vec<Vec<NCPoly>>,
}

impl Ops {
    pub fn new(r: &RMatrix, u: &[Vec<NCPoly>]) -> Result<Ops, RmatError> {
        let n = r.dim();
        let f = r.field();
        let ri = r.inverse()?;
        let zero = vec![vec![NCPoly::zero(f); n * n]; n * n];
        let (mut rr, mut r21, mut rim, mut u1, mut u2) = (zero.clone(), zero.clone(), zero.clone(), zero.clone(), zero);
        for (&(i, j, k, l), v) in r.entries() {
            rr[i * n + k][j * n + l] = NCPoly::constant(v.clone());
            r21[k * n + i][l * n + j] = NCPoly::constant(v.clone());
        }
        for (&(i, j, k, l), v) in ri.entries() {
            rim[i * n + k][j * n + l] = NCPoly::constant(v.clone());
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    u1[i * n + k][j * n + k] = u[i][j].clone();
                    u2[k * n + i][k * n + j] = u[i][j].clone();
                }
            }
        }
        Ok(Ops { r: rr, r21, ri: rim, u1, u2 })
    }

    pub fn mul(&self, list: &[&Vec<Vec<NCPoly>>]) -> Vec<Vec<NCPoly>> {
        let mut acc = list[0].clone();
        for m in &list[1..] {
            acc = op_mul(&acc, m);
        }
        acc
    }
}

/// Entries of `R_21 u_1 R u_2 - u_2 R_21 u_1 R`, zero entries dropped.
pub fn braided_matrix_relations(r: &RMatrix, u: &[Vec<NCPoly>]) -> Result<Vec<NCPoly>, RmatError> {
    let o = Ops::new(r, u)?;
    let lhs = o.mul(&[&o.r21, &o.u1, &o.r, &o.u2]);
    let rhs = o.mul(&[&o.u2, &o.r21, &o.u1, &o.r]);
    let mut out = Vec::new();
    for (a, b) in lhs.iter().flatten().zip(rhs.iter().flatten()) {
        let d = a - b;
        if !d.is_zero() {
            out.push(d);
        }
    }
    Ok(out)
}

/// The braided comeasuring bialgebra with the braided matrix relations
/// added as well.
pub fn build_braided_mr(r: &RMatrix, spec: &AlgebraSpec, variant: Variant) -> Result<BraidedPresentation, BraidedError> {
    let mut bp = build_braided(r, spec, variant)?;
    let layout = bp.bialgebra.layout.clone().expect("builder attaches a layout");
    let u = layout.matrix(&bp.bialgebra.base);
    let r_int = bp.r.clone().expect("builder records R");
    let extra = braided_matrix_relations(&r_int, &u)?;
    bp.bialgebra.base = bp.bialgebra.base.with_relations(extra);
    Ok(bp)
}

/// Which upper summation limit to use in the printed closed form for the
/// higher braided-line generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExponentReading {
    /// `sum_{s=2}^{i}` with `i` the upper index.
    UpperIndex,
    /// `sum_{s=2}^{j}` with `j` the number of factors.
    FactorCount,
}

fn line_free(q: &Scalar, trunc: u32) -> Result<Presentation, BraidedError> {
    let gens = (0..=trunc).map(|a| Generator::new(format!("u_{a}"))).collect();
    Ok(Presentation::free(q.field(), gens)?)
}

/// Compositions of `total` into `parts` nonnegative parts.
pub(crate) fn compositions(total: u32, parts: u32) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// `u^i_j` for the braided line in terms of `u_a = u^a_1`, obtained from
/// the comeasuring relations `u^k_{1+j} = sum_{a+b=k} u^a_1 u^b_j q^{(1-a)b}`
/// with `u^i_0 = delta^i_0`.
pub fn braided_line_generators(q: &Scalar, trunc: u32) -> Result<(Presentation, LineTable), BraidedError> {
    let pres = line_free(q, trunc)?;
    let f = q.field();
    let mut table: BTreeMap<(u32, u32), NCPoly> = BTreeMap::new();
    for i in 0..=trunc {
        table.insert((i, 0), if i == 0 { NCPoly::one(f) } else { NCPoly::zero(f) });
        table.insert((i, 1), pres.gen(i));
    }
    for j in 1..trunc {
        for k in 0..=trunc {
            let mut p = NCPoly::zero(f);
            for a in 0..=k {
                let b = k - a;
                let e = (1 - a as i64) * b as i64;
                p.add_scaled(&(&table[&(a, 1)] * &table[&(b, j)]), &q.pow(e)?);
            }
            table.insert((k, j + 1), p);
        }
    }
    Ok((pres, table))
}

/// The printed closed form
/// `u^i_j = sum_{a_1+..+a_j=i} u_{a_1}..u_{a_j} q^{-(i-a_1) - sum_{s=2}^{L} (a_1+..+a_{s-1}) a_s}`
/// with `L` chosen by `reading`; parts beyond the `j`th count as zero.
pub fn braided_line_printed(q: &Scalar, trunc: u32, reading: ExponentReading) -> Result<(Presentation, LineTable), BraidedError> {
    let pres = line_free(q, trunc)?;
    let f = q.field();
    let mut table = BTreeMap::new();
    for i in 0..=trunc {
        for j in 0..=trunc {
            let limit = match reading {
                ExponentReading::UpperIndex => i,
                ExponentReading::FactorCount => j,
            } as usize;
            let mut p = NCPoly::zero(f);
            for parts in compositions(i, j) {
                let part = |s: usize| parts.get(s - 1).copied().unwrap_or(0) as i64;
                let mut e = -(i as i64 - part(1));
                for s in 2..=limit {
                    let prefix: i64 = (1..s).map(part).sum();
                    e -= prefix * part(s);
                }
                let mut w = NCPoly::one(f);
                for &a in &parts {
                    w = &w * &pres.gen(a);
                }
                p.add_scaled(&w, &q.pow(e)?);
            }
            table.insert((i, j), p);
        }
    }
    Ok((pres, table))
}

/// Compare both readings of the printed closed form with the generators
/// derived from the relations, and check that the derived generators
/// satisfy every relation `u^k_{i+j} = sum_{a+b=k} u^a_i u^b_j q^{(i-a)b}`
/// with `i + j <= D` identically.
pub fn line_reading_report(q: &Scalar, trunc: u32) -> Result<Report, BraidedError> {
    let (pres, derived) = braided_line_generators(q, trunc)?;
    let gens = pres.generators();
    let mut report = Report::new("braided line generators");
    let mut w = None;
    'rel: for i in 0..=trunc {
        for j in 0..=(trunc - i) {
            for k in 0..=trunc {
                let mut rhs = NCPoly::zero(q.field());
                for a in 0..=k {
                    let b = k - a;
                    rhs.add_scaled(&(&derived[&(a, i)] * &derived[&(b, j)]), &q.pow((i as i64 - a as i64) * b as i64)?);
                }
                let d = &derived[&(k, i + j)] - &rhs;
                if !d.is_zero() {
                    w = Some(format!("(i,j,k) = ({i},{j},{k}): {}", d.display(gens)));
                    break 'rel;
                }
            }
        }
    }
    report.check("derived generators satisfy the relation family", w);
    for (reading, label) in [(ExponentReading::UpperIndex, "upper limit i"), (ExponentReading::FactorCount, "upper limit j")] {
        let (_, printed) = braided_line_printed(q, trunc, reading)?;
        let w = derived.iter().find_map(|(&(i, j), p)| {
            let d = p - &printed[&(i, j)];
            (!d.is_zero()).then(|| format!("u^{i}_{j}: derived {} vs printed {}", p.display(gens), printed[&(i, j)].display(gens)))
        });
        report.check(format!("closed form with {label} matches"), w);
    }
    Ok(report)
}
