use super::build::Ops;
use super::{braided_matrix_relations, build_braided_m1, BraidedError, BraidedPresentation, Braider};
use crate::comeasure::{coalgebra_checks, AlgebraSpec, Variant};
use crate::ncalg::{words_up_to, NCPoly, Slice, TensorElement, Word};
use crate::report::Report;
use crate::rmat::{build_m1r, RMatrix};
use std::collections::HashMap;

/// Braided bialgebra axioms within weight `bound`, modulo the ideal:
/// the braiding is well defined on words and preserves the ideal, the
/// coproduct is an algebra map into the braided tensor square, the counit
/// is a braided algebra map, the matrix coalgebra is coassociative and
/// counital, and the coaction is a braided algebra map.
pub fn verify_braided_bialgebra(bp: &BraidedPresentation, bound: u32) -> Result<Report, BraidedError> {
    let b = &bp.bialgebra;
    let gens = b.generators();
    let f = b.field();
    let rel_weight = b.base.max_relation_weight();
    let bound = bound.max(rel_weight + 1);
    let slice = Slice::new(&b.base, bound)?;
    let mut report = Report::new("braided bialgebra");
    report.detail("slice_bound", bound);
    report.detail("ideal_slice_dim", slice.ideal_rank());

    let mut one = Braider::new(&bp.braiding, gens, true);
    let mut two = Braider::new(&bp.braiding, gens, false);
    let words = words_up_to(gens, bound);
    let mut w = None;
    'routes: for u in &words {
        for v in &words {
            if u.weight() + v.weight() > bound {
                continue;
            }
            if one.words(u, v)? != two.words(u, v)? {
                w = Some(format!("{} (x) {}", u.display(gens, "*"), v.display(gens, "*")));
                break 'routes;
            }
        }
    }
    report.check("braiding is well defined on words", w);

    if b.variant != Variant::M1 || !bp.fixed.is_empty() {
        let mut w = None;
        for rule in &bp.fixed {
            if !slice.tensor_reduce(&rule.residue, &slice)?.is_zero() {
                w = Some(rule.name.clone());
                break;
            }
        }
        report.check("constant entries braid trivially", w);
    }

    let mut w = None;
    'ideal: for r in b.relations() {
        for v in &words {
            if r.max_weight() + v.weight() > bound {
                continue;
            }
            let vp = NCPoly::word(f, v.clone());
            for (x, label) in [(one.polys(r, &vp)?, "r (x) w"), (one.polys(&vp, r)?, "w (x) r")] {
                let nf = slice.tensor_reduce(&x, &slice)?;
                if !nf.is_zero() {
                    w = Some(format!("{label} with r = {}, w = {}: {}", r.display(gens), v.display(gens, "*"), nf.display(gens, gens)));
                    break 'ideal;
                }
            }
        }
        if let Some(spec) = &b.spec {
            for k in 0..spec.dim() {
                for (m, p) in one.poly_basis(r, k)?.into_iter().chain(one.basis_poly(k, r)?) {
                    let nf = slice.reduce(&p)?;
                    if !nf.is_zero() {
                        w = Some(format!(
                            "cross braiding of {} with e_{}: component e_{} = {}",
                            r.display(gens),
                            spec.labels()[k],
                            spec.labels()[m],
                            nf.display(gens)
                        ));
                        break 'ideal;
                    }
                }
            }
        }
    }
    report.check("braiding preserves the ideal", w);

    let mut cache: HashMap<Word, TensorElement> = HashMap::new();
    let mut w = None;
    for r in b.relations() {
        let mut d = TensorElement::zero(f);
        for (word, c) in r.terms() {
            d.add_scaled(&braided_delta(bp, &mut one, word, &mut cache)?, c);
        }
        let nf = slice.tensor_reduce(&d, &slice)?;
        if !nf.is_zero() {
            w = Some(format!("Delta({}) = {}", r.display(gens), nf.display(gens, gens)));
            break;
        }
    }
    report.check("coproduct is an algebra map to the braided square", w);

    let w = b.relations().iter().find_map(|r| {
        let e = b.epsilon(r);
        (!e.is_zero()).then(|| format!("epsilon({}) = {}", r.display(gens), e))
    });
    report.check("counit respects relations", w);

    let mut w = None;
    'eps: for g in 0..gens.len() as u32 {
        for h in 0..gens.len() as u32 {
            let t = one.polys(&b.base.gen(g), &b.base.gen(h))?;
            let mut l = NCPoly::zero(f);
            let mut r = NCPoly::zero(f);
            for ((x, y), c) in t.terms() {
                l.add_scaled(&NCPoly::word(f, y.clone()), &(c * &b.epsilon(&NCPoly::word(f, x.clone()))));
                r.add_scaled(&NCPoly::word(f, x.clone()), &(c * &b.epsilon(&NCPoly::word(f, y.clone()))));
            }
            let l = &l - &b.base.gen(g).scale(&b.counit[h as usize]);
            let r = &r - &b.base.gen(h).scale(&b.counit[g as usize]);
            if !slice.reduce(&l)?.is_zero() || !slice.reduce(&r)?.is_zero() {
                w = Some(format!("{} (x) {}", gens[g as usize].name, gens[h as usize].name));
                break 'eps;
            }
        }
    }
    report.check("counit is natural for the braiding", w);

    coalgebra_checks(b, &slice, &mut report)?;

    if let (Some(spec), Some(co)) = (&b.spec, &b.coaction) {
        let n = spec.dim();
        let img = &co.images;
        let mut w = None;
        'co: for i in 0..n {
            for j in 0..n {
                let mut comp = vec![NCPoly::zero(f); n];
                for (k, cij) in (0..n).map(|k| (k, spec.c(i, j, k))) {
                    if cij.is_zero() {
                        continue;
                    }
                    for (c, slot) in comp.iter_mut().enumerate() {
                        slot.add_scaled(&img[k][c], cij);
                    }
                }
                for a in 0..n {
                    for bb in 0..n {
                        for (m, p) in one.poly_basis(&img[i][a], bb)? {
                            let tail = &p * &img[j][bb];
                            for (c, slot) in comp.iter_mut().enumerate() {
                                let s = spec.c(a, m, c);
                                if !s.is_zero() {
                                    slot.add_scaled(&tail, &-s);
                                }
                            }
                        }
                    }
                }
                for (c, p) in comp.iter().enumerate() {
                    let nf = slice.reduce(p)?;
                    if !nf.is_zero() {
                        let l = spec.labels();
                        w = Some(format!("e_{} e_{} component e_{}: {}", l[i], l[j], l[c], nf.display(gens)));
                        break 'co;
                    }
                }
            }
        }
        report.check("coaction is a braided algebra map", w);
    }
    report.passed = report.checks.iter().all(|c| c.passed);
    Ok(report)
}

/// Coproduct of a word computed in the braided tensor square.
fn braided_delta(bp: &BraidedPresentation, br: &mut Braider<'_>, w: &Word, cache: &mut HashMap<Word, TensorElement>) -> Result<TensorElement, BraidedError> {
    let b = &bp.bialgebra;
    let gens = b.generators();
    let Some((g, rest)) = w.split_first(gens) else {
        return Ok(TensorElement::one(b.field()));
    };
    if let Some(t) = cache.get(w) {
        return Ok(t.clone());
    }
    let tail = braided_delta(bp, br, &rest, cache)?;
    let out = br.mul(&b.coproduct[g as usize], &tail)?;
    cache.insert(w.clone(), out.clone());
    Ok(out)
}

/// Transmutation of the FRT-extended comeasuring bialgebra: the map
/// `t^i_j -> u^i_j`, `R_12 t_1 t_2 -> u_1 R u_2` on words of length at
/// most two. Checks that the braided matrix relations
/// `R_21 u_1 R u_2 = u_2 R_21 u_1 R` follow from the transmuted relations,
/// and that the ideal slice in weight two is carried into the braided
/// comeasuring bialgebra with the braided matrix relations.
pub fn transmute_check(r: &RMatrix, spec: &AlgebraSpec, bound: u32) -> Result<Report, BraidedError> {
    let mr = build_m1r(r, spec, Variant::M1)?.bialgebra;
    let ub = build_braided_m1(r, spec)?;
    let pres = &ub.bialgebra.base;
    let gens = pres.generators();
    let f = pres.field();
    let layout = ub.bialgebra.layout.clone().expect("builder attaches a layout");
    let u = layout.matrix(pres);
    let n = r.dim();
    let ops = Ops::new(r, &u)?;
    let uru = ops.mul(&[&ops.u1, &ops.r, &ops.u2]);
    let t1t2 = ops.mul(&[&ops.ri, &uru]);
    let mut positions = vec![(0, 0); mr.generators().len()];
    for (&p, &g) in &mr.layout.as_ref().expect("builder attaches a layout").ids {
        positions[g as usize] = p;
    }
    let image = |w: &Word| -> NCPoly {
        match w.ids() {
            [] => NCPoly::one(f),
            [g] => {
                let (a, k) = positions[*g as usize];
                u[a][k].clone()
            }
            [g, h] => {
                let (a, k) = positions[*g as usize];
                let (b, l) = positions[*h as usize];
                t1t2[a * n + b][k * n + l].clone()
            }
            _ => unreachable!("transmutation is applied in weight at most two"),
        }
    };
    let transmute = |p: &NCPoly| -> NCPoly {
        let mut out = NCPoly::zero(f);
        for (w, c) in p.terms() {
            out.add_scaled(&image(w), c);
        }
        out
    };

    let mut report = Report::new("transmutation");
    let bound = bound.max(2);
    report.detail("slice_bound", bound);
    let bmr = braided_matrix_relations(r, &u)?;
    report.detail("braided_matrix_relations", bmr.len());

    let transmuted: Vec<NCPoly> = mr.relations().iter().map(&transmute).collect();
    let from_t = Slice::new(&pres.with_relations(transmuted), bound)?;
    let mut w = None;
    for x in &bmr {
        let nf = from_t.reduce(x)?;
        if !nf.is_zero() {
            w = Some(format!("{} leaves {}", x.display(gens), nf.display(gens)));
            break;
        }
    }
    report.check("braided matrix relations follow from the transmuted relations", w);

    let target = Slice::new(&pres.with_relations(bmr), bound)?;
    let source = Slice::new(&mr.base, 2)?;
    let mut w = None;
    for p in source.ideal_basis() {
        let nf = target.reduce(&transmute(&p))?;
        if !nf.is_zero() {
            w = Some(format!("{} maps to {}", p.display(mr.generators()), nf.display(gens)));
            break;
        }
    }
    report.check("transmuted ideal lies in the braided ideal", w);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::super::build::compositions;
    use super::super::*;
    use super::*;
    use crate::comeasure::algebras::{roots_of_unity, truncated_polynomial};
    use crate::comeasure::{build_m1, verify_bialgebra};
    use crate::rmat::build_m1r;
    use crate::rmat::{anyonic_line, line_r, LineKind};
    use crate::scalars::{Field, Scalar};

    fn line(q: &Scalar, trunc: u32, variant: Variant) -> BraidedPresentation {
        let r = line_r(q, trunc, LineKind::Braided).unwrap();
        build_braided(&r, &truncated_polynomial(q.field(), trunc as usize + 1), variant).unwrap()
    }

    #[test]
    fn kronecker_is_the_unbraided_construction() {
        let f = Field::Rational;
        for spec in [truncated_polynomial(f, 2), roots_of_unity(f, 3)] {
            let n = spec.dim();
            let bp = build_braided_m1(&RMatrix::kronecker(f, n), &spec).unwrap();
            let names: Vec<String> = bp.generators().iter().map(|g| g.name.clone()).collect();
            let names: Vec<&str> = names.iter().map(String::as_str).collect();
            let plain = build_m1(&spec).unwrap().renamed(&names);
            let a = Slice::new(&bp.bialgebra.base, 3).unwrap();
            let b = Slice::new(&plain.base, 3).unwrap();
            assert!(a.same_ideal(&b).unwrap());
            assert_eq!(bp.bialgebra.coproduct, plain.coproduct);
            assert_eq!(bp.braiding.pairs, BraidingTensor::flip(f, bp.generators()).pairs);
            let braided = verify_braided_bialgebra(&bp, 3).unwrap();
            assert!(braided.passed, "{braided}");
            assert_eq!(braided.passed, verify_bialgebra(&plain, 3).unwrap().passed);
        }
    }

    #[test]
    fn braided_line_relation_family() {
        let f = Field::RationalQ;
        let q = f.q().unwrap();
        let d = 3u32;
        for variant in [Variant::M1, Variant::M] {
            let bp = line(&q, d, variant);
            let u = bp.bialgebra.layout.as_ref().unwrap().matrix(&bp.bialgebra.base);
            let mut family = Vec::new();
            for i in 0..=d as usize {
                for j in 0..=d as usize {
                    for k in 0..=d as usize {
                        let mut p = if i + j <= d as usize { u[k][i + j].clone() } else { NCPoly::zero(f) };
                        for a in 0..=k {
                            let b = k - a;
                            p.add_scaled(&(&u[a][i] * &u[b][j]), &-q.pow((i as i64 - a as i64) * b as i64).unwrap());
                        }
                        family.push(p);
                    }
                }
            }
            let expected = bp.bialgebra.base.with_relations([]).with_relations(family.into_iter().filter(|p| !p.is_zero()));
            let free = crate::ncalg::Presentation::free(f, bp.generators().to_vec()).unwrap();
            let expected = free.with_relations(expected.relations().to_vec());
            let a = Slice::new(&bp.bialgebra.base, 3).unwrap();
            let b = Slice::new(&expected, 3).unwrap();
            assert!(a.same_ideal(&b).unwrap(), "{variant:?}");
        }
    }

    #[test]
    fn braided_line_generator_braiding() {
        let f = Field::RationalQ;
        let q = f.q().unwrap();
        let bp = line(&q, 3, Variant::M);
        for i in 0..=3i64 {
            for j in 0..=3i64 {
                let labels = bp.bialgebra.spec.as_ref().unwrap().labels();
                let name = |a: i64| format!("u^{}_{}", labels[a as usize], labels[1]);
                let (x, y) = (name(i), name(j));
                let got = bp.psi(&x, &y).unwrap();
                let want = TensorElement::simple(&bp.bialgebra.var(&y).unwrap(), &bp.bialgebra.var(&x).unwrap()).scale(&q.pow((i - 1) * (j - 1)).unwrap());
                assert_eq!(got, want, "{x} (x) {y}");
            }
        }
    }

    #[test]
    fn braided_line_is_a_braided_bialgebra() {
        let q = Field::RationalQ.q().unwrap();
        for variant in [Variant::M1, Variant::M, Variant::M0] {
            let rep = verify_braided_bialgebra(&line(&q, 3, variant), 3).unwrap();
            assert!(rep.passed, "{variant:?}\n{rep}");
        }
    }

    #[test]
    fn perturbed_braiding_breaks_the_ideal() {
        let q = Field::RationalQ.q().unwrap();
        let mut bp = line(&q, 2, Variant::M0);
        let spec = bp.bialgebra.spec.clone().unwrap();
        let g = bp.bialgebra.base.index_of(&format!("u^{}_{}", spec.labels()[1], spec.labels()[1])).unwrap();
        let key = (g, g);
        let two = q.field().int(2);
        let e = bp.braiding.pairs.get_mut(&key).unwrap();
        *e = e.scale(&two);
        let rep = verify_braided_bialgebra(&bp, 3).unwrap();
        let c = rep.checks.iter().find(|c| c.name == "braiding preserves the ideal").unwrap();
        assert!(!c.passed && c.witness.is_some(), "{rep}");
    }

    #[test]
    fn anyonic_m1_is_a_braided_bialgebra() {
        let r = anyonic_line(3).unwrap();
        let bp = build_braided_m1(&r, &truncated_polynomial(r.field(), 3)).unwrap();
        let rep = verify_braided_bialgebra(&bp, 3).unwrap();
        assert!(rep.passed, "{rep}");
    }

    #[test]
    fn transmutation_is_consistent() {
        let f = Field::RationalQ;
        let q = f.q().unwrap();
        let cases = [
            (RMatrix::kronecker(Field::Rational, 2), truncated_polynomial(Field::Rational, 2)),
            (line_r(&q, 2, LineKind::Braided).unwrap(), truncated_polynomial(f, 3)),
            (anyonic_line(3).unwrap(), truncated_polynomial(Field::cyclotomic(3).unwrap(), 3)),
        ];
        for (r, spec) in cases {
            let rep = transmute_check(&r, &spec, 2).unwrap();
            assert!(rep.passed, "{rep}");
        }
    }

    #[test]
    fn line_readings() {
        let q = Field::RationalQ.q().unwrap();
        let rep = line_reading_report(&q, 4).unwrap();
        assert!(rep.checks[0].passed, "{rep}");
        assert!(!rep.checks[1].passed && !rep.checks[2].passed, "{rep}");
        assert!(rep.checks[1].witness.as_ref().unwrap().starts_with("u^1_2"));
    }

    #[test]
    fn derived_closed_form() {
        let q = Field::RationalQ.q().unwrap();
        let (pres, table) = braided_line_generators(&q, 4).unwrap();
        for (&(i, j), p) in &table {
            let mut want = NCPoly::zero(q.field());
            for parts in compositions(i, j) {
                let mut e = 0i64;
                let mut prefix = 0i64;
                let mut w = NCPoly::one(q.field());
                for (s, &a) in parts.iter().enumerate() {
                    if s > 0 {
                        e += (s as i64 - prefix) * a as i64;
                    }
                    prefix += a as i64;
                    w = &w * &pres.gen(a);
                }
                want.add_scaled(&w, &q.pow(e).unwrap());
            }
            assert_eq!(p, &want, "u^{i}_{j}");
        }
    }

    #[test]
    fn transmutation_preserves_slice_dimensions() {
        let q = Field::RationalQ.q().unwrap();
        let cases = [
            (line_r(&q, 2, LineKind::Braided).unwrap(), truncated_polynomial(q.field(), 3)),
            (anyonic_line(3).unwrap(), truncated_polynomial(Field::cyclotomic(3).unwrap(), 3)),
        ];
        for (r, spec) in cases {
            let u = build_braided_mr(&r, &spec, Variant::M1).unwrap();
            let t = build_m1r(&r, &spec, Variant::M1).unwrap().bialgebra;
            for bound in 1..=3 {
                let a = Slice::new(&u.bialgebra.base, bound).unwrap().quotient_dim();
                let b = Slice::new(&t.base, bound).unwrap().quotient_dim();
                assert_eq!(a, b, "bound {bound}");
            }
        }
    }

    #[test]
    fn braided_line_at_one_is_commutative_diff0() {
        let f = Field::RationalQ;
        let one = f.one();
        let d = 3u32;
        let spec = truncated_polynomial(f, d as usize + 1);
        let bp = build_braided_mr(&line_r(&one, d, LineKind::Braided).unwrap(), &spec, Variant::M0).unwrap();
        let names: Vec<String> = bp.generators().iter().map(|g| g.name.clone()).collect();
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        let plain = crate::comeasure::build_m0(&spec).unwrap().renamed(&names);
        let gens = plain.base.gens();
        let mut comm = Vec::new();
        for a in &gens {
            for b in &gens {
                comm.push(&(a * b) - &(b * a));
            }
        }
        let diff0 = plain.base.with_relations(comm);
        assert!(Slice::new(&bp.bialgebra.base, 3).unwrap().same_ideal(&Slice::new(&diff0, 3).unwrap()).unwrap());
        assert!(verify_braided_bialgebra(&bp, 3).unwrap().passed);
    }
}
