use super::{build_m, build_m0, build_m1, AlgebraSpec, BialgebraPresentation, ComeasureError, Variant};
use crate::ncalg::{Generator, NCPoly, Presentation, Slice, Tensor3, TensorElement};
use crate::report::Report;
use serde::Serialize;

fn slice_for(bp: &BialgebraPresentation, bound: u32) -> Result<Slice, ComeasureError> {
    Ok(Slice::new(&bp.base, bound)?)
}

/// Bialgebra axioms modulo the ideal slice: `Delta` and `epsilon` kill the
/// relations, and coassociativity and counitality hold on generators.
/// The slice bound is raised to the largest relation weight if needed.
pub fn verify_bialgebra(bp: &BialgebraPresentation, bound: u32) -> Result<Report, ComeasureError> {
    let gens = bp.generators();
    let gen_weight = bp.coproduct.iter().map(|d| {
        let (l, r) = d.max_weights();
        l.max(r)
    });
    let needed = bp.base.max_relation_weight().max(gen_weight.max().unwrap_or(0));
    let bound = bound.max(needed);
    let slice = slice_for(bp, bound)?;
    let mut report = Report::new("bialgebra");
    report.detail("slice_bound", bound);
    report.detail("ideal_slice_dim", slice.ideal_rank());

    let mut witness = None;
    for r in bp.relations() {
        let d = slice.tensor_reduce(&bp.delta(r), &slice)?;
        if !d.is_zero() {
            witness = Some(format!("Delta({}) = {}", r.display(gens), d.display(gens, gens)));
            break;
        }
    }
    report.check("coproduct respects relations", witness);

    let witness = bp.relations().iter().find_map(|r| {
        let e = bp.epsilon(r);
        (!e.is_zero()).then(|| format!("epsilon({}) = {}", r.display(gens), e))
    });
    report.check("counit respects relations", witness);

    coalgebra_checks(bp, &slice, &mut report)?;
    report.passed = report.checks.iter().all(|c| c.passed);
    Ok(report)
}

/// Coassociativity and counitality on generators, modulo `slice`.
pub(crate) fn coalgebra_checks(bp: &BialgebraPresentation, slice: &Slice, report: &mut Report) -> Result<(), ComeasureError> {
    let gens = bp.generators();
    let mut coassoc = None;
    let mut counit = None;
    for (g, d) in bp.coproduct.iter().enumerate() {
        let left = Tensor3::expand_left(d, |w| bp.delta_word(w));
        let right = Tensor3::expand_right(d, |w| bp.delta_word(w));
        let diff = slice.tensor3_reduce(&left.sub(&right))?;
        if coassoc.is_none() && !diff.is_zero() {
            coassoc = Some(format!("generator {}", gens[g].name));
        }
        let field = bp.field();
        let x = bp.base.gen(g as u32);
        let mut l = NCPoly::zero(field);
        let mut r = NCPoly::zero(field);
        for ((u, v), c) in d.terms() {
            l.add_scaled(&NCPoly::word(field, v.clone()), &(c * &bp.epsilon(&NCPoly::word(field, u.clone()))));
            r.add_scaled(&NCPoly::word(field, u.clone()), &(c * &bp.epsilon(&NCPoly::word(field, v.clone()))));
        }
        if counit.is_none() && (!slice.contains(&(&l - &x))? || !slice.contains(&(&r - &x))?) {
            counit = Some(format!("generator {}", gens[g].name));
        }
    }
    report.check("coassociative on generators", coassoc);
    report.check("counital on generators", counit);
    Ok(())
}

/// The coaction is an algebra map into `A (x) B`, coassociative and counital.
pub fn verify_coaction(bp: &BialgebraPresentation, bound: u32) -> Result<Report, ComeasureError> {
    let mut report = Report::new("coaction");
    let (Some(spec), Some(co)) = (&bp.spec, &bp.coaction) else {
        report.fail("coaction present", "no coaction recorded");
        return Ok(report);
    };
    let n = spec.dim();
    let gens = bp.generators();
    let field = bp.field();
    let img = &co.images;
    let needed = img.iter().flatten().map(NCPoly::max_weight).max().unwrap_or(0) * 2;
    let bound = bound.max(needed).max(bp.base.max_relation_weight());
    let slice = slice_for(bp, bound)?;
    report.detail("slice_bound", bound);

    let mut witness = None;
    'm: for i in 0..n {
        for j in 0..n {
            for a in 0..n {
                let mut x = NCPoly::zero(field);
                for b in 0..n {
                    for c in 0..n {
                        let s = spec.c(b, c, a);
                        if !s.is_zero() {
                            x.add_scaled(&(&img[i][b] * &img[j][c]), s);
                        }
                    }
                }
                for k in 0..n {
                    x.add_scaled(&img[k][a], &-spec.c(i, j, k));
                }
                let nf = slice.reduce(&x)?;
                if !nf.is_zero() {
                    witness = Some(format!("e_{} e_{} component {}: {}", spec.labels()[i], spec.labels()[j], spec.labels()[a], nf.display(gens)));
                    break 'm;
                }
            }
        }
    }
    report.check("algebra map", witness);

    let preserves_unit = bp.layout.as_ref().is_some_and(|l| l.kind != Variant::M1);
    if let (true, Some(u)) = (preserves_unit, spec.unit()) {
        let mut witness = None;
        for a in 0..n {
            let want = if a == u { NCPoly::one(field) } else { NCPoly::zero(field) };
            if !slice.contains(&(&img[u][a] - &want))? {
                witness = Some(format!("component {}", spec.labels()[a]));
                break;
            }
        }
        report.check("unit maps to unit", witness);
    }

    let mut coassoc = None;
    let mut counit = None;
    for i in 0..n {
        for b in 0..n {
            let mut rhs = TensorElement::zero(field);
            for a in 0..n {
                rhs = &rhs + &TensorElement::simple(&img[a][b], &img[i][a]);
            }
            let diff = slice.tensor_reduce(&(&bp.delta(&img[i][b]) - &rhs), &slice)?;
            if coassoc.is_none() && !diff.is_zero() {
                coassoc = Some(format!("e_{} component {}", spec.labels()[i], spec.labels()[b]));
            }
            let want = if i == b { field.one() } else { field.zero() };
            if counit.is_none() && bp.epsilon(&img[i][b]) != want {
                counit = Some(format!("e_{} component {}", spec.labels()[i], spec.labels()[b]));
            }
        }
    }
    report.check("coassociative", coassoc);
    report.check("counital", counit);
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniversalCheck {
    pub variant: Variant,
    pub bound: u32,
    pub ideal_slice_dim: usize,
    pub oracle_slice_dim: usize,
    pub matched: bool,
}

/// Compare a builder's ideal slice with the one obtained directly from the
/// requirement that `e_i -> e_a (x) X^a_i` be an algebra map, every entry
/// fixed by the variant being a constant.
pub fn universal_check(spec: &AlgebraSpec, variant: Variant, bound: u32) -> Result<UniversalCheck, ComeasureError> {
    let built = match variant {
        Variant::M1 => build_m1(spec)?,
        Variant::M => build_m(spec)?,
        Variant::M0 => build_m0(spec)?,
        Variant::Quotient => return Err(ComeasureError::Shape("quotients have no universal oracle".into())),
    };
    let spec = if variant == Variant::M1 { spec.clone() } else { spec.unit_first()? };
    let n = spec.dim();
    let f = spec.field();
    let free = |a: usize, i: usize| match variant {
        Variant::M1 => true,
        Variant::M => i != 0,
        _ => a != 0 && i != 0,
    };
    let mut names = Vec::new();
    let mut pos = vec![vec![None; n]; n];
    for (a, row) in pos.iter_mut().enumerate() {
        for (i, slot) in row.iter_mut().enumerate() {
            if free(a, i) {
                *slot = Some(names.len() as u32);
                names.push(Generator::new(format!("X{a}_{i}")));
            }
        }
    }
    let free_pres = Presentation::free(f, names)?;
    let x = |a: usize, i: usize| match pos[a][i] {
        Some(g) => free_pres.gen(g),
        None if a == i => NCPoly::one(f),
        None => NCPoly::zero(f),
    };
    let mut rels = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for a in 0..n {
                let mut r = NCPoly::zero(f);
                for b in 0..n {
                    for c in 0..n {
                        let s = spec.c(b, c, a);
                        if !s.is_zero() {
                            r.add_scaled(&(&x(b, i) * &x(c, j)), s);
                        }
                    }
                }
                for k in 0..n {
                    r.add_scaled(&x(a, k), &-spec.c(i, j, k));
                }
                rels.push(r);
            }
        }
    }
    let oracle = free_pres.with_relations(rels);
    let a = Slice::new(&built.base, bound)?;
    let b = Slice::new(&oracle, bound)?;
    Ok(UniversalCheck { variant, bound, ideal_slice_dim: a.ideal_rank(), oracle_slice_dim: b.ideal_rank(), matched: a.same_ideal(&b)? })
}

/// Check that `generator g -> images[g]` defines a bialgebra map
/// `src -> dst`: relations land in the ideal and `Delta`, `epsilon` commute.
pub fn check_morphism(src: &BialgebraPresentation, dst: &BialgebraPresentation, images: &[NCPoly], bound: u32) -> Result<Report, ComeasureError> {
    if images.len() != src.generators().len() {
        return Err(ComeasureError::Shape(format!("{} images for {} generators", images.len(), src.generators().len())));
    }
    let dg = dst.generators();
    let sg = src.generators();
    let mapped: Vec<NCPoly> = src.relations().iter().map(|r| r.substitute(images)).collect();
    let img_weight = images.iter().map(NCPoly::max_weight).max().unwrap_or(0);
    let mut needed = mapped.iter().map(NCPoly::max_weight).max().unwrap_or(0);
    for d in &src.coproduct {
        let (l, r) = d.max_weights();
        needed = needed.max(l.max(r) * img_weight);
    }
    for p in images {
        let (l, r) = dst.delta(p).max_weights();
        needed = needed.max(l).max(r);
    }
    let bound = bound.max(needed);
    let slice = slice_for(dst, bound)?;
    let mut report = Report::new("morphism");
    report.detail("slice_bound", bound);

    let mut witness = None;
    for (r, m) in src.relations().iter().zip(&mapped) {
        let nf = slice.reduce(m)?;
        if !nf.is_zero() {
            witness = Some(format!("{} -> {}", r.display(sg), nf.display(dg)));
            break;
        }
    }
    report.check("relations map into the ideal", witness);

    let mut co = None;
    let mut eps = None;
    for (g, d) in src.coproduct.iter().enumerate() {
        let pushed = d.map_factors(|w| NCPoly::word(src.field(), w.clone()).substitute(images), |w| NCPoly::word(src.field(), w.clone()).substitute(images));
        let diff = slice.tensor_reduce(&(&dst.delta(&images[g]) - &pushed), &slice)?;
        if co.is_none() && !diff.is_zero() {
            co = Some(format!("generator {}: {}", sg[g].name, diff.display(dg, dg)));
        }
        if eps.is_none() && dst.epsilon(&images[g]) != src.counit[g] {
            eps = Some(format!("generator {}", sg[g].name));
        }
    }
    report.check("coproduct compatible", co);
    report.check("counit compatible", eps);
    Ok(report)
}

/// Substitute `g -> p` for each pair and drop the eliminated generators.
/// The substituted polynomials must not involve eliminated generators.
pub fn eliminate_generators(pres: &Presentation, subs: &[(u32, NCPoly)]) -> Result<Presentation, ComeasureError> {
    let n = pres.generators().len();
    let mut images: Vec<NCPoly> = pres.gens();
    let mut drop = vec![false; n];
    for (g, p) in subs {
        images[*g as usize] = p.clone();
        drop[*g as usize] = true;
    }
    for (_, p) in subs {
        if p.terms().any(|(w, _)| w.ids().iter().any(|&i| drop[i as usize])) {
            return Err(ComeasureError::Shape("substitution involves an eliminated generator".into()));
        }
    }
    let kept: Vec<Generator> = (0..n).filter(|&i| !drop[i]).map(|i| pres.generators()[i].clone()).collect();
    let mut map = vec![u32::MAX; n];
    let mut next = 0;
    for (i, m) in map.iter_mut().enumerate() {
        if !drop[i] {
            *m = next;
            next += 1;
        }
    }
    let rels = pres.relations().iter().map(|r| r.substitute(&images).relabel(&map, &kept)).collect();
    Ok(Presentation::new(pres.field(), kept, rels)?)
}

#[cfg(test)]
mod tests {
    use super::super::algebras::*;
    use super::*;
    use crate::scalars::Field;

    #[test]
    fn builders_are_bialgebras() {
        let f = Field::Rational;
        for spec in [truncated_polynomial(f, 2), roots_of_unity(f, 2), roots_of_unity(f, 3)] {
            for bp in [build_m1(&spec).unwrap(), build_m(&spec).unwrap(), build_m0(&spec).unwrap()] {
                assert!(verify_bialgebra(&bp, 2).unwrap().passed);
                let r = verify_coaction(&bp, 2).unwrap();
                assert!(r.passed, "{r}");
            }
        }
    }

    #[test]
    fn universal_oracle_agrees() {
        let f = Field::Rational;
        for spec in [truncated_polynomial(f, 2), roots_of_unity(f, 2), finite_set_pointed(f, 2)] {
            for v in [Variant::M1, Variant::M, Variant::M0] {
                let u = universal_check(&spec, v, 2).unwrap();
                assert!(u.matched, "{v:?}");
            }
        }
    }

    #[test]
    fn broken_relation_is_detected() {
        let bp = build_m(&roots_of_unity(Field::Rational, 2)).unwrap().renamed(&["b", "t"]);
        let bad = bp.with_relations([bp.parse("b - 1").unwrap()]);
        assert!(!verify_bialgebra(&bad, 2).unwrap().passed);
    }
}
