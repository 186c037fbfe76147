use super::{covariance_check, line_r, qplane_braiding, qybe_check, DualQTFunctional, LineKind, PairIndex, RMatrix, RmatError};
use crate::comeasure::{build_m, build_m0, build_m1, check_morphism, AlgebraSpec, BialgebraPresentation, Layout, Variant};
use crate::graded::{build_m0_line, build_m0_qplane, build_m_qplane, build_mq2, indices, MultiIndex, TruncatedGradedPresentation};
use crate::ncalg::{Generator, NCPoly, Presentation, Slice, TensorElement};
use crate::report::Report;
use crate::scalars::{q_binomial, q_int, Scalar};
use std::collections::{BTreeMap, HashMap};

/// A comeasuring bialgebra cut down by an R-matrix, with its pairing.
#[derive(Clone, Debug, PartialEq)]
pub struct RQuotient {
    pub bialgebra: BialgebraPresentation,
    pub pairing: DualQTFunctional,
}

/// `R^i_a^j_b t^a_k t^b_l - t^j_b t^i_a R^a_k^b_l` for the given `(i,j,k,l)`.
fn frt_relation(r: &RMatrix, upper: &PairIndex, lower: &PairIndex, t: &dyn Fn(usize, usize) -> NCPoly, (i, j, k, l): (usize, usize, usize, usize)) -> NCPoly {
    let mut rel = NCPoly::zero(r.field());
    for (a, b, v) in upper.get(&(i, j)).into_iter().flatten() {
        rel.add_scaled(&(&t(*a, k) * &t(*b, l)), v);
    }
    for (a, b, v) in lower.get(&(k, l)).into_iter().flatten() {
        rel.add_scaled(&(&t(j, *b) * &t(i, *a)), &-v);
    }
    rel
}

fn index_maps(r: &RMatrix) -> (PairIndex, PairIndex) {
    let mut upper: HashMap<_, Vec<_>> = HashMap::new();
    let mut lower: HashMap<_, Vec<_>> = HashMap::new();
    for (&(i, a, j, b), v) in r.entries() {
        upper.entry((i, j)).or_default().push((a, b, v.clone()));
        lower.entry((a, b)).or_default().push((i, j, v.clone()));
    }
    (upper, lower)
}

/// The FRT relations `R t_1 t_2 = t_2 t_1 R` for a matrix of entries, zero
/// relations dropped.
pub fn frt_relations(r: &RMatrix, t: &[Vec<NCPoly>]) -> Vec<NCPoly> {
    let n = r.dim();
    let (upper, lower) = index_maps(r);
    let entry = |a: usize, i: usize| t[a][i].clone();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let rel = frt_relation(r, &upper, &lower, &entry, (i, j, k, l));
                    if !rel.is_zero() {
                        out.push(rel);
                    }
                }
            }
        }
    }
    out
}

/// The matrix bialgebra with only the FRT relations.
pub fn build_frt(r: &RMatrix) -> Result<RQuotient, RmatError> {
    let n = r.dim();
    let f = r.field();
    let labels = r.labels();
    let mut names = Vec::new();
    let mut ids = BTreeMap::new();
    let mut positions = Vec::new();
    for a in 0..n {
        for i in 0..n {
            ids.insert((a, i), names.len() as u32);
            names.push(Generator::new(format!("t^{}_{}", labels[a], labels[i])));
            positions.push((a, i));
        }
    }
    let free = Presentation::free(f, names)?;
    let layout = Layout { dim: n, kind: Variant::M1, ids };
    let t = layout.matrix(&free);
    let base = free.with_relations(frt_relations(r, &t));
    let mut coproduct = Vec::new();
    let mut counit = Vec::new();
    for &(a, i) in &positions {
        let mut d = TensorElement::zero(f);
        for (m, row) in t.iter().enumerate() {
            d.add_simple(&t[a][m], &row[i], &f.one());
        }
        coproduct.push(d);
        counit.push(if a == i { f.one() } else { f.zero() });
    }
    let bialgebra = BialgebraPresentation { base, coproduct, counit, coaction: None, variant: Variant::M1, layout: Some(layout), spec: None };
    Ok(RQuotient { bialgebra, pairing: DualQTFunctional { r: r.clone(), positions } })
}

/// The universal comeasuring bialgebra of the given variant with the FRT
/// relations added, so that it inherits the pairing `R(t^i_j, t^k_l)`.
/// `r` is indexed like the basis of `spec`.
pub fn build_m1r(r: &RMatrix, spec: &AlgebraSpec, variant: Variant) -> Result<RQuotient, RmatError> {
    let q = qybe_check(r);
    if !q.passed {
        return Err(RmatError::Precondition(q.to_string()));
    }
    let c = covariance_check(r, spec)?;
    if !c.passed {
        return Err(RmatError::Precondition(c.to_string()));
    }
    let (bp, r_int) = match variant {
        Variant::M1 => (build_m1(spec)?, r.clone()),
        Variant::M | Variant::M0 => {
            let u = spec.unit().ok_or(crate::comeasure::ComeasureError::MissingUnit)?;
            let perm: Vec<usize> = std::iter::once(u).chain((0..spec.dim()).filter(|&i| i != u)).collect();
            let bp = if variant == Variant::M { build_m(spec)? } else { build_m0(spec)? };
            (bp, r.permuted(&perm)?)
        }
        Variant::Quotient => return Err(RmatError::Shape("choose M1, M or M0".into())),
    };
    let layout = bp.layout.clone().expect("builders attach a layout");
    let t = layout.matrix(&bp.base);
    let mut out = bp.with_relations(frt_relations(&r_int, &t));
    out.variant = variant;
    let mut positions = vec![(0, 0); out.generators().len()];
    for (&p, &g) in &layout.ids {
        positions[g as usize] = p;
    }
    Ok(RQuotient { bialgebra: out, pairing: DualQTFunctional { r: r_int, positions } })
}

/// Comeasurings of the quantum-braided plane that also respect its
/// braiding: the graded presentation plus the FRT relations on the
/// columns `x` and `y`. The pairing is indexed by `qplane_braiding(q, D)`.
pub fn build_mr_qplane(q: &Scalar, trunc: u32, variant: Variant) -> Result<(TruncatedGradedPresentation, DualQTFunctional), RmatError> {
    let mut tg = match variant {
        Variant::M => build_m_qplane(q, trunc)?,
        Variant::M0 => build_m0_qplane(q, trunc)?,
        _ => return Err(RmatError::Shape("choose M or M0".into())),
    };
    let r = qplane_braiding(q, trunc)?;
    let idx = indices(trunc, true);
    let pos: BTreeMap<MultiIndex, usize> = idx.iter().enumerate().map(|(k, &m)| (m, k)).collect();
    let cols = [pos[&(1, 0)], pos[&(0, 1)]];
    let entry = |a: usize, i: usize| tg.derived(idx[a], idx[i]);
    let (upper, lower) = index_maps(&r);
    let mut rels = Vec::new();
    for i in 0..idx.len() {
        for j in 0..idx.len() {
            for &k in &cols {
                for &l in &cols {
                    let rel = frt_relation(&r, &upper, &lower, &entry, (i, j, k, l));
                    if !rel.is_zero() {
                        rels.push(rel);
                    }
                }
            }
        }
    }
    let positions = tg
        .bialgebra
        .generators()
        .iter()
        .map(|g| {
            let (col, m) = parse_plane_name(&g.name);
            (pos[&m], cols[col])
        })
        .collect();
    tg.bialgebra = tg.bialgebra.with_relations(rels);
    tg.bialgebra.variant = variant;
    Ok((tg, DualQTFunctional { r, positions }))
}

/// `s_(i,j)` is the `x` column, `t_(i,j)` the `y` column.
fn parse_plane_name(name: &str) -> (usize, MultiIndex) {
    let col = if name.starts_with('s') { 0 } else { 1 };
    let inner = name.trim_start_matches(['s', 't', '_', '(']).trim_end_matches(')');
    let mut it = inner.split(',').map(|x| x.parse::<u32>().expect("generated name"));
    (col, (it.next().expect("i"), it.next().expect("j")))
}

/// The surjection onto `M_q(2)` killing every generator of degree at least
/// two, and the converse: the degree-one part of the braided comeasuring
/// bialgebra satisfies exactly the `M_q(2)` relations in weight two.
pub fn mq2_surjection_check(q: &Scalar, trunc: u32) -> Result<Report, RmatError> {
    let (tg, pairing) = build_mr_qplane(q, trunc, Variant::M0)?;
    let mq2 = build_mq2(q)?;
    let src = &tg.bialgebra;
    let gens = src.generators();
    let f = q.field();
    // s_(1,0), s_(0,1), t_(1,0), t_(0,1) -> a, c, b, d
    let target = |name: &str| match name {
        "s_(1,0)" => Some(0),
        "s_(0,1)" => Some(2),
        "t_(1,0)" => Some(1),
        "t_(0,1)" => Some(3),
        _ => None,
    };
    let images: Vec<NCPoly> = gens.iter().map(|g| target(&g.name).map_or(NCPoly::zero(f), |k| mq2.base.gen(k))).collect();
    let mut report = Report::new("M_q(2) surjection");
    report.detail("degree", trunc);
    report.absorb(&check_morphism(src, &mq2, &images, 2)?);

    let low: Vec<u32> = (0..gens.len() as u32).filter(|&g| target(&gens[g as usize].name).is_some()).collect();
    let slice = Slice::new(&src.base, 2)?;
    let rows: Vec<NCPoly> =
        slice.ideal_basis().into_iter().filter(|r| r.terms().all(|(w, _)| w.ids().iter().all(|i| low.contains(i)))).map(|r| r.substitute(&images)).collect();
    let inner = Presentation::new(f, mq2.generators().to_vec(), rows)?;
    let same = Slice::new(&inner, 2)?.same_ideal(&Slice::new(&mq2.base, 2)?)?;
    report.check("degree-one part has exactly the M_q(2) relations in weight 2", (!same).then(|| "ideals differ".to_string()));

    let roundtrip = low.iter().all(|&g| {
        let k = target(&gens[g as usize].name).expect("degree one");
        images[g as usize] == mq2.base.gen(k)
    });
    report.check("surjection after inclusion is the identity", (!roundtrip).then(|| "generator moved".to_string()));

    let mut positions = vec![(0, 0); 4];
    for &g in &low {
        positions[target(&gens[g as usize].name).expect("degree one") as usize] = pairing.positions[g as usize];
    }
    let restricted = DualQTFunctional { r: pairing.r.clone(), positions };
    report.absorb(&super::dualqt_verify(&mq2, &restricted, 2)?);
    Ok(report)
}

/// Braided comeasurings of the line under the double braiding: generators
/// `t_1..t_D` with
///
/// ```text
/// q t_j t_i = sum_{k<j} [i+k]![j-1]!/([j-k-1]![i]![k]!) q^(i(j-k)) (1-q)^k t_(i+k) t_(j-k)
/// ```
///
/// for all `i, j >= 1` with `i + j - 1 <= D`.
pub fn build_m0r_line(q: &Scalar, trunc: u32) -> Result<RQuotient, RmatError> {
    let tg = build_m0_line(q.field(), trunc)?;
    let bp = &tg.bialgebra;
    let f = q.field();
    let one_minus_q = &f.one() - q;
    let t = |i: u32| bp.base.gen(i - 1);
    let mut rels = Vec::new();
    for i in 1..=trunc {
        for j in 1..=trunc {
            if i + j - 1 > trunc {
                continue;
            }
            let mut rel = (&t(j) * &t(i)).scale(q);
            for k in 0..j {
                let falling = (j - k..j).fold(f.one(), |acc, m| &acc * &q_int(m, q));
                let c = &(&(&q_binomial(i + k, k, q) * &falling) * &q.pow((i * (j - k)) as i64)?) * &one_minus_q.pow(k as i64)?;
                rel.add_scaled(&(&t(i + k) * &t(j - k)), &-c);
            }
            if !rel.is_zero() {
                rels.push(rel);
            }
        }
    }
    let mut out = bp.with_relations(rels);
    out.variant = Variant::M0;
    let r = line_r(q, trunc, LineKind::Conformal)?;
    let positions = (1..=trunc as usize).map(|i| (i, 1)).collect();
    Ok(RQuotient { bialgebra: out, pairing: DualQTFunctional { r, positions } })
}

#[cfg(test)]
mod tests {
    use super::super::{anyonic_line, dualqt_verify};
    use super::*;
    use crate::comeasure::algebras::truncated_polynomial;
    use crate::comeasure::{eliminate_generators, verify_bialgebra};
    use crate::scalars::Field;

    fn q() -> Scalar {
        Field::RationalQ.q().unwrap()
    }

    fn holds(bp: &BialgebraPresentation, s: &str, bound: u32) -> bool {
        Slice::new(&bp.base, bound).unwrap().contains(&bp.parse(s).unwrap()).unwrap()
    }

    #[test]
    fn conformal_line_low_relations() {
        let rq = build_m0r_line(&q(), 3).unwrap();
        let bp = &rq.bialgebra;
        assert!(holds(bp, "t_1*t_2 - q*t_2*t_1", 4));
        assert!(holds(bp, "t_1*t_3 - q^2*t_3*t_1", 4));
        assert!(holds(bp, "t_1*t_3 - q*t_2*t_2", 4));
        let d = bp.coproduct_string(2);
        let want = bp.delta(&bp.parse("t_3").unwrap());
        let one = Field::RationalQ.one();
        let mut alt = TensorElement::zero(Field::RationalQ);
        for (a, b) in [("t_3", "t_1"), ("(1+q)*t_2*t_1", "t_2"), ("t_1*t_1*t_1", "t_3")] {
            alt.add_simple(&bp.parse(a).unwrap(), &bp.parse(b).unwrap(), &one);
        }
        let s = Slice::new(&bp.base, 3).unwrap();
        assert!(s.tensor_reduce(&(&want - &alt), &s).unwrap().is_zero(), "{d}");
    }

    #[test]
    fn conformal_line_matches_frt_on_first_column() {
        let q = q();
        let rq = build_m0r_line(&q, 3).unwrap();
        let tg = build_m0_line(q.field(), 3).unwrap();
        let r = line_r(&q, 3, LineKind::Conformal).unwrap();
        let idx = indices(3, false);
        let entry = |a: usize, i: usize| tg.derived(idx[a], idx[i]);
        let (upper, lower) = index_maps(&r);
        let rels: Vec<NCPoly> = (1..4)
            .flat_map(|i| (1..4).map(move |j| (i, j)))
            .map(|(i, j)| frt_relation(&r, &upper, &lower, &entry, (i, j, 1, 1)))
            .filter(|p| !p.is_zero())
            .collect();
        let frt = tg.bialgebra.base.with_relations(rels);
        let a = Slice::new(&frt, 4).unwrap();
        let b = Slice::new(&rq.bialgebra.base, 4).unwrap();
        assert!(a.same_ideal(&b).unwrap());
    }

    #[test]
    fn conformal_line_pairing_does_not_descend() {
        let rq = build_m0r_line(&q(), 3).unwrap();
        assert!(verify_bialgebra(&rq.bialgebra, 4).unwrap().passed);
        let rep = dualqt_verify(&rq.bialgebra, &rq.pairing, 2).unwrap();
        assert!(rep.checks[0].passed && rep.checks[1].passed);
        // R^1_2^2_1 pairs the vanishing entry t^1_2 nontrivially
        assert!(!rep.checks[2].passed);
    }

    #[test]
    fn braided_line_m_is_commutative() {
        let q = q();
        let spec = truncated_polynomial(Field::RationalQ, 3);
        let r = line_r(&q, 2, LineKind::Braided).unwrap();
        let rq = build_m1r(&r, &spec, Variant::M).unwrap();
        let bp = &rq.bialgebra;
        let names: Vec<String> = bp.generators().iter().map(|g| g.name.clone()).collect();
        for a in &names {
            for b in &names {
                assert!(holds(bp, &format!("{a}*{b} - {b}*{a}"), 2), "{a} {b}");
            }
        }
    }

    #[test]
    fn anyonic_m0_adds_one_relation() {
        let r = anyonic_line(3).unwrap();
        let f = r.field();
        let spec = truncated_polynomial(f, 3);
        let rq = build_m1r(&r, &spec, Variant::M0).unwrap();
        let bp = &rq.bialgebra;
        let id = |n: &str| bp.base.index_of(n).unwrap();
        let t = bp.parse("t^1_1").unwrap();
        let subs = [(id("t^1_2"), NCPoly::zero(f)), (id("t^2_2"), &t * &t)];
        let s = Slice::new(&bp.base, 2).unwrap();
        assert!(subs.iter().all(|(g, p)| s.contains(&(&bp.base.gen(*g) - p)).unwrap()));
        let reduced = eliminate_generators(&bp.base, &subs).unwrap();
        let free = Presentation::free(f, reduced.generators().to_vec()).unwrap();
        let want = free.with_relations([free.parse_poly("t^1_1*t^2_1 - q*t^2_1*t^1_1").unwrap()]);
        for bound in 2..5 {
            assert!(Slice::new(&want, bound).unwrap().same_ideal(&Slice::new(&reduced, bound).unwrap()).unwrap());
        }
        // R^1_2^2_1 is nonzero although t^1_2 vanishes in M0
        let rep = dualqt_verify(bp, &rq.pairing, 2).unwrap();
        let bad = rep.first_failure().unwrap();
        assert_eq!(bad.name, "relations pair to zero");
        assert!(bad.witness.as_deref().unwrap().starts_with("relation t^1_2 "));
    }

    #[test]
    fn anyonic_m1_is_dual_quasitriangular() {
        let r = anyonic_line(3).unwrap();
        let rq = build_m1r(&r, &truncated_polynomial(r.field(), 3), Variant::M1).unwrap();
        let rep = dualqt_verify(&rq.bialgebra, &rq.pairing, 2).unwrap();
        assert!(rep.passed, "{rep}");
    }

    #[test]
    fn frt_alone_is_a_bialgebra() {
        for r in [line_r(&q(), 2, LineKind::Conformal).unwrap(), RMatrix::kronecker(Field::Rational, 2)] {
            let rq = build_frt(&r).unwrap();
            assert!(verify_bialgebra(&rq.bialgebra, 3).unwrap().passed);
        }
    }

    #[test]
    fn mq2_surjection() {
        let rep = mq2_surjection_check(&q(), 2).unwrap();
        assert!(rep.passed, "{rep}");
    }
}
