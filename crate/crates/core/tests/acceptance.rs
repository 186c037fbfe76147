//! Acceptance run: one PASS/FAIL line per criterion, sub-checks indented.
//!
//! Everything is exact arithmetic, so the only pinned tolerances are the
//! runtime budgets below.

use qdiff::braided::{build_braided, build_braided_m1, line_reading_report, transmute_check, verify_braided_bialgebra, BraidingTensor};
use qdiff::comeasure::algebras::{finite_set, finite_set_pointed, roots_of_unity, truncated_polynomial};
use qdiff::comeasure::{
    build_m, build_m0, build_m1, change_basis, check_morphism, coinvariants, eliminate_generators, finite_set_m, quotient_calculus_preserving, universal_check,
    verify_bialgebra, verify_coaction, BasisChange, BialgebraPresentation, CalculusSpec, Variant,
};
use qdiff::graded::{build_m0_line, build_m0_qplane, build_m_qplane, build_mq2, indices, q_convolve, IndexedSequence};
use qdiff::linalg;
use qdiff::ncalg::{Generator, NCPoly, Presentation, Slice, TensorElement, Word};
use qdiff::rmat::{
    anyonic_line, build_frt, build_m0r_line, build_m1r, build_mr_qplane, covariance_check, dualqt_verify, line_r, mq2_surjection_check, qybe_check, LineKind,
    RMatrix,
};
use qdiff::scalars::{q_binomial, Field, Scalar};
use std::collections::BTreeMap;
use std::error::Error;
use std::time::{Duration, Instant};

type Res = Result<(), Box<dyn Error>>;
type Criterion = fn(&mut Log) -> Res;

/// Runtime budgets in seconds, by criterion.
const BUDGET: [u64; 11] = [1, 5, 5, 2, 10, 30, 5, 60, 60, 120, 600];

#[derive(Default)]
struct Log {
    items: Vec<(String, bool)>,
}

impl Log {
    fn check(&mut self, name: impl Into<String>, ok: bool) {
        self.items.push((name.into(), ok));
    }
}

fn qsym() -> Scalar {
    Field::RationalQ.q().expect("symbolic field")
}

fn contains(p: &Presentation, x: &NCPoly, bound: u32) -> Result<bool, Box<dyn Error>> {
    Ok(Slice::new(p, bound)?.contains(x)?)
}

fn same_ideal(a: &Presentation, b: &Presentation, bound: u32) -> Result<bool, Box<dyn Error>> {
    Ok(Slice::new(a, bound)?.same_ideal(&Slice::new(b, bound)?)?)
}

/// `free` on the same generators with the given relations.
fn golden(p: &Presentation, rels: &[&str]) -> Result<Presentation, Box<dyn Error>> {
    let free = Presentation::free(p.field(), p.generators().to_vec())?;
    let rels = rels.iter().map(|s| free.parse_poly(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(free.with_relations(rels))
}

fn rank(polys: &[NCPoly], field: Field) -> usize {
    let mut cols: BTreeMap<Word, usize> = BTreeMap::new();
    for p in polys {
        for (w, _) in p.terms() {
            let next = cols.len();
            cols.entry(w.clone()).or_insert(next);
        }
    }
    let m: linalg::Matrix = polys
        .iter()
        .map(|p| {
            let mut row = vec![field.zero(); cols.len()];
            for (w, c) in p.terms() {
                row[cols[w]] = c.clone();
            }
            row
        })
        .collect();
    if m.is_empty() {
        0
    } else {
        linalg::rank(&m)
    }
}

fn same_span(a: &[NCPoly], b: &[NCPoly], field: Field) -> bool {
    let both: Vec<NCPoly> = a.iter().chain(b).cloned().collect();
    let r = rank(a, field);
    r == rank(b, field) && r == rank(&both, field)
}

/// Generator images indexed by generator id, given by matrix position.
fn by_entry(bp: &BialgebraPresentation, image: impl Fn(usize, usize) -> NCPoly) -> Vec<NCPoly> {
    let layout = bp.layout.as_ref().expect("matrix layout");
    let mut out = vec![NCPoly::zero(bp.field()); bp.generators().len()];
    for (&(a, i), &g) in &layout.ids {
        out[g as usize] = image(a, i);
    }
    out
}

/// Bialgebra isomorphism: both maps are morphisms and compose to the
/// identity on generators modulo each ideal.
fn isomorphic(src: &BialgebraPresentation, dst: &BialgebraPresentation, fwd: &[NCPoly], back: &[NCPoly], bound: u32) -> Result<bool, Box<dyn Error>> {
    if !check_morphism(src, dst, fwd, bound)?.passed || !check_morphism(dst, src, back, bound)?.passed {
        return Ok(false);
    }
    let ss = Slice::new(&src.base, bound.max(2))?;
    let ds = Slice::new(&dst.base, bound.max(2))?;
    for (g, p) in src.base.gens().iter().zip(fwd) {
        if !ss.contains(&(&p.substitute(back) - g))? {
            return Ok(false);
        }
    }
    for (g, p) in dst.base.gens().iter().zip(back) {
        if !ds.contains(&(&p.substitute(fwd) - g))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn names(p: &Presentation) -> Vec<String> {
    p.generators().iter().map(|g| g.name.clone()).collect()
}

fn fermion(log: &mut Log) -> Res {
    let f = Field::Rational;
    let spec = truncated_polynomial(f, 2);
    let m0 = build_m0(&spec)?;
    log.check("M0 has one generator and no relations", m0.generators().len() == 1 && m0.relations().is_empty());
    let g = m0.base.gen(0);
    log.check("M0 generator is grouplike", m0.coproduct[0] == TensorElement::simple(&g, &g) && m0.counit[0].is_one());
    let u = universal_check(&spec, Variant::M0, 3)?;
    log.check("M0 oracle ideal slice dim 0 at L=3", u.matched && u.ideal_slice_dim == 0 && u.oracle_slice_dim == 0);

    let m = build_m(&spec)?.renamed(&["b", "t"]);
    let want = golden(&m.base, &["b*b", "b*t+t*b"])?;
    log.check("M relations are exactly {b^2, bt+tb}", m.relations() == want.relations());
    let u = universal_check(&spec, Variant::M, 2)?;
    log.check("M oracle ideal slice dim 2 at L=2, matched", u.matched && u.ideal_slice_dim == 2);
    log.check("M coaction", verify_coaction(&m, 2)?.passed);
    let mut free = m.clone();
    free.base = Presentation::free(f, m.generators().to_vec())?;
    log.check("free presentation fails the coaction check", !verify_coaction(&free, 2)?.passed);
    Ok(())
}

fn roots(log: &mut Log) -> Res {
    let f = Field::Rational;
    let m = build_m(&roots_of_unity(f, 2))?.renamed(&["b", "t"]);
    for s in ["(b+t)^2 - 1", "(b-t)^2 - 1"] {
        log.check(format!("M(x^2=1): {s} = 0"), contains(&m.base, &m.parse(s)?, 2)?);
    }
    log.check("M(x^2=1) bialgebra and coaction at L=3", verify_bialgebra(&m, 3)?.passed && verify_coaction(&m, 3)?.passed);

    let m1 = build_m1(&roots_of_unity(f, 2))?;
    let b = m1.var("t^0_1")?;
    let t = m1.var("t^1_1")?;
    for (label, x) in [("b+t", &b + &t), ("b-t", &b - &t)] {
        let cube = &(&x * &x) * &x;
        log.check(format!("M1(x^2=1): ({label})^3 = {label} at L=3"), contains(&m1.base, &(&cube - &x), 3)?);
    }

    let m0 = build_m0(&roots_of_unity(f, 3))?;
    let id = |n: &str| m0.base.index_of(n).ok_or("missing generator");
    let t = m0.var("t^1_1")?;
    let s = m0.var("t^2_1")?;
    let subs = [(id("t^1_2")?, &s * &s), (id("t^2_2")?, &t * &t)];
    let sl = Slice::new(&m0.base, 2)?;
    let mut ok = true;
    for (g, p) in &subs {
        ok &= sl.contains(&(&m0.base.gen(*g) - p))?;
    }
    log.check("M0(x^3=1): t^1_2 = s^2, t^2_2 = t^2", ok);
    let reduced = eliminate_generators(&m0.base, &subs)?.renamed(&["t", "s"]);
    let want = golden(&reduced, &["t*s+s*t", "t^3+s^3-1", "t*t*s", "t*s*s"])?;
    log.check("M0(x^3=1) = {ts+st, t^3+s^3-1, t^2s, ts^2} at L=4", same_ideal(&reduced, &want, 4)?);
    Ok(())
}

fn fourier(field: Field, n: usize) -> Result<linalg::Matrix, Box<dyn Error>> {
    let w = if n == 2 { field.int(-1) } else { field.q()? };
    let mut m = vec![vec![field.zero(); n]; n];
    for (a, row) in m.iter_mut().enumerate() {
        for (j, x) in row.iter_mut().enumerate() {
            *x = w.pow(-((a * j) as i64))?;
        }
    }
    Ok(m)
}

fn finite_sets(log: &mut Log) -> Res {
    for n in [2usize, 3] {
        let f = Field::Rational;
        let m1 = build_m1(&finite_set(f, n))?;
        let free = Presentation::free(f, m1.generators().to_vec())?;
        let e = |a: usize, i: usize| m1.entry(a, i).expect("layout");
        let mut rels = Vec::new();
        for k in 0..n {
            for i in 0..n {
                for j in 0..n {
                    let mut r = &e(k, i) * &e(k, j);
                    if i == j {
                        r = &r - &e(k, i);
                    }
                    rels.push(r);
                }
            }
        }
        let want = free.with_relations(rels);
        log.check(format!("n={n}: M1 rows are orthogonal projector families"), same_ideal(&m1.base, &want, 3)?);
        log.check(format!("n={n}: M1 matches the oracle at L=2"), universal_check(&finite_set(f, n), Variant::M1, 2)?.matched);

        let field = if n == 2 { Field::Rational } else { Field::cyclotomic(3)? };
        let set = build_m1(&finite_set(field, n))?;
        let changed = change_basis(&set, &BasisChange::new(fourier(field, n)?))?;
        let group = roots_of_unity(field, n);
        let spec = changed.spec.as_ref().ok_or("spec")?;
        let same_constants = (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| spec.c(i, j, k) == group.c(i, j, k))));
        let nm = names(&changed.base);
        let nm: Vec<&str> = nm.iter().map(String::as_str).collect();
        let direct = build_m1(&group)?.renamed(&nm);
        let ids = changed.base.gens();
        log.check(
            format!("n={n}: Fourier basis change gives M1 of x^{n}=1"),
            // both ideals are generated in weight 2, so weight-2 slices decide equality
            same_constants && isomorphic(&changed, &direct, &ids, &ids, 2)?,
        );

        let quot = finite_set_m(f, n)?;
        let pointed = build_m(&finite_set_pointed(f, n))?;
        let pe = |a: usize, i: usize| pointed.entry(a, i).expect("layout");
        let one = NCPoly::one(f);
        let fwd = by_entry(&quot, |a, i| match (a, i) {
            (0, 0) => (1..n).fold(one.clone(), |acc, j| &acc - &pe(0, j)),
            (a, 0) => (1..n).fold(one.clone(), |acc, j| &(&acc - &pe(a, j)) - &pe(0, j)),
            (0, i) => pe(0, i),
            (a, i) => &pe(a, i) + &pe(0, i),
        });
        let qe = |a: usize, i: usize| quot.entry(a, i).expect("layout");
        let back = by_entry(&pointed, |a, i| if a == 0 { qe(0, i) } else { &qe(a, i) - &qe(0, i) });
        log.check(format!("n={n}: rows summing to one = M of the pointed set"), isomorphic(&quot, &pointed, &fwd, &back, 3)?);
    }

    let f = Field::Rational;
    let quot = finite_set_m(f, 2)?;
    let m = build_m(&roots_of_unity(f, 2))?.renamed(&["b", "t"]);
    let (fwd, back) = mset2(&quot, &m)?;
    log.check("n=2: projector matrix [[g+,1-g+],[1-g-,g-]] in M(x^2=1)", isomorphic(&quot, &m, &fwd, &back, 3)?);
    Ok(())
}

/// The projector presentation of `M(x^2=1)`: `g+ = (1+b+t)/2`, `g- = (1-b+t)/2`.
fn mset2(quot: &BialgebraPresentation, m: &BialgebraPresentation) -> Result<(Vec<NCPoly>, Vec<NCPoly>), Box<dyn Error>> {
    let gp = m.parse("(1+b+t)/2")?;
    let gm = m.parse("(1-b+t)/2")?;
    let one = NCPoly::one(m.field());
    let fwd = by_entry(quot, |a, i| match (a, i) {
        (0, 0) => gp.clone(),
        (0, _) => &one - &gp,
        (_, 0) => &one - &gm,
        _ => gm.clone(),
    });
    let e = |a: usize, i: usize| quot.entry(a, i).expect("layout");
    let b = &(&e(0, 0) + &e(1, 0)) - &NCPoly::one(m.field());
    let t = &e(0, 0) - &e(1, 0);
    Ok((fwd, vec![b, t]))
}

fn calculus(log: &mut Log) -> Res {
    let f = Field::Rational;
    let quot = finite_set_m(f, 2)?;
    let cal = quotient_calculus_preserving(&quot, &CalculusSpec::new(2, vec![(1, 2)])?)?;
    let extra = Slice::new(&cal.base, 2)?.ideal_rank() - Slice::new(&quot.base, 2)?.ideal_rank();
    let e = |a: usize, i: usize| quot.entry(a, i).expect("layout");
    let expected = quot.base.with_relations([&e(0, 1) * &e(1, 0)]);
    log.check("exactly one extra relation, tau^1_2 tau^2_1", extra == 1 && same_ideal(&cal.base, &expected, 3)?);

    let m = build_m(&roots_of_unity(f, 2))?.renamed(&["b", "t"]);
    let (fwd, _) = mset2(&quot, &m)?;
    let image = (&e(0, 1) * &e(1, 0)).substitute(&fwd);
    let want = m.parse("(1-(1+b+t)/2)*(1-(1-b+t)/2)")?;
    log.check("it is (1-g+)(1-g-) = 0", image == want);
    let a = m.base.with_relations([image]);
    let b = m.base.with_relations([m.parse("t*t - t*(1+b)")?]);
    log.check("equivalently t^2 = t(1+b)", same_ideal(&a, &b, 3)?);
    log.check("quotient is a bialgebra at L=3", verify_bialgebra(&cal, 3)?.passed);
    Ok(())
}

fn low_part(ideal: &[NCPoly], high: &[u32], field: Field) -> Vec<NCPoly> {
    // combinations with no single-letter high-degree term
    let cols: Vec<&NCPoly> = ideal.iter().collect();
    let m: linalg::Matrix = high
        .iter()
        .map(|&g| cols.iter().map(|p| p.terms().find(|(w, _)| w.ids() == [g]).map(|(_, c)| c.clone()).unwrap_or_else(|| field.zero())).collect())
        .collect();
    let combos = if m.is_empty() { linalg::identity(field, cols.len()) } else { linalg::nullspace(&m, cols.len(), field) };
    combos
        .into_iter()
        .map(|v: Vec<Scalar>| {
            let mut p = NCPoly::zero(field);
            for (c, x) in v.iter().zip(&cols) {
                p.add_scaled(x, c);
            }
            p
        })
        .filter(|p| !p.is_zero())
        .collect()
}

fn qplane(log: &mut Log) -> Res {
    let q = qsym();
    let f = q.field();
    let tg = build_m0_qplane(&q, 2)?;
    let bp = &tg.bialgebra;
    let gens = bp.generators();
    let low = ["s_(1,0)", "t_(1,0)", "s_(0,1)", "t_(0,1)"];
    let high: Vec<u32> = (0..gens.len() as u32).filter(|&g| !low.contains(&gens[g as usize].name.as_str())).collect();
    let ideal: Vec<NCPoly> = Slice::new(&bp.base, 2)?.ideal_basis().into_iter().filter(|p| p.max_weight() == 2).collect();
    let found = low_part(&ideal, &high, f);
    let rename = |s: &str| s.replace('a', "s_(1,0)").replace('b', "t_(1,0)").replace('c', "s_(0,1)").replace('d', "t_(0,1)");
    let want: Vec<NCPoly> = ["d*c - q*c*d", "b*a - q*a*b", "a*d - d*a - q^-1*b*c + q*c*b"].iter().map(|s| bp.parse(&rename(s))).collect::<Result<_, _>>()?;
    log.check("degree-1 relations span {dc-qcd, ba-qab, ad-da-q^-1bc+qcb}", same_span(&found, &want, f));
    Ok(())
}

fn mq2(log: &mut Log) -> Res {
    let q = qsym();
    let m = build_mq2(&q)?;
    log.check("six relations", m.relations().len() == 6);
    let want = golden(&m.base, &["b*a - q*a*b", "c*a - q*a*c", "d*b - q*b*d", "d*c - q*c*d", "c*b - b*c", "a*d - d*a - (q^-1 - q)*b*c"])?;
    log.check("standard M_q(2) relations", same_ideal(&m.base, &want, 3)?);
    // commutative monomials of degree <= 2 in four letters
    let mut pbw = 0;
    for e in 0..81u32 {
        let exps = [e % 3, e / 3 % 3, e / 9 % 3, e / 27];
        if exps.iter().sum::<u32>() <= 2 {
            pbw += 1;
        }
    }
    let dim = Slice::new(&m.base, 2)?.quotient_dim();
    log.check(format!("weight-2 quotient dim {dim} = PBW count {pbw}"), dim == pbw && pbw == 15);
    log.check("coaction on the plane", verify_coaction(&m, 2)?.passed);
    log.check("bialgebra at L=3", verify_bialgebra(&m, 3)?.passed);
    Ok(())
}

fn coinv(log: &mut Log) -> Res {
    let f = Field::Rational;
    let m = build_m(&finite_set_pointed(f, 2))?;
    let m0 = build_m0(&finite_set_pointed(f, 2))?;
    let pbar = m0.base.gen(0);
    log.check("two points: M0 has pbar^2 = pbar", contains(&m0.base, &(&(&pbar * &pbar) - &pbar), 2)?);
    // p = b + t, q = b; pi(p) = pbar, pi(q) = 0
    let pi = vec![NCPoly::zero(f), pbar.clone()];
    let co = coinvariants(&m, &m0, &pi, 4)?;
    let want = vec![NCPoly::one(f), m.base.gen(0)];
    log.check("two points: coinvariants span {1, q} at L=4", same_span(&co, &want, f));

    let m = build_m(&roots_of_unity(f, 2))?.renamed(&["b", "t"]);
    let m0 = build_m0(&roots_of_unity(f, 2))?;
    let tbar = m0.base.gen(0);
    log.check("x^2=1: M0 has tbar^2 = 1", contains(&m0.base, &(&(&tbar * &tbar) - &NCPoly::one(f)), 2)?);
    let co = coinvariants(&m, &m0, &[NCPoly::zero(f), tbar], 4)?;
    let s = Slice::new(&m.base, 4)?;
    let b = m.var("b")?;
    let mut powers = vec![NCPoly::one(f)];
    for k in 1..=4 {
        let next = &powers[k - 1] * &b;
        powers.push(next);
    }
    let powers: Vec<NCPoly> = powers.iter().map(|p| s.reduce(p)).collect::<Result<_, _>>()?;
    let co: Vec<NCPoly> = co.iter().map(|p| s.reduce(p)).collect::<Result<_, _>>()?;
    log.check("x^2=1: coinvariants are the polynomials in b at L=4", same_span(&co, &powers, f));
    Ok(())
}

fn rmatrix(log: &mut Log) -> Res {
    let q = qsym();
    let r = line_r(&q, 4, LineKind::Braided)?;
    log.check("braided line D=4: QYBE", qybe_check(&r).passed);
    log.check("braided line D=4: covariance", covariance_check(&r, &truncated_polynomial(q.field(), 5))?.passed);

    let r = anyonic_line(3)?;
    let f = r.field();
    log.check("anyonic: QYBE and covariance", qybe_check(&r).passed && covariance_check(&r, &truncated_polynomial(f, 3))?.passed);
    let rq = build_m1r(&r, &truncated_polynomial(f, 3), Variant::M0)?;
    let bp = &rq.bialgebra;
    let id = |n: &str| bp.base.index_of(n).ok_or("missing generator");
    let t = bp.var("t^1_1")?;
    let subs = [(id("t^1_2")?, NCPoly::zero(f)), (id("t^2_2")?, &t * &t)];
    let reduced = eliminate_generators(&bp.base, &subs)?.renamed(&["t", "s"]);
    let plain = build_m0(&truncated_polynomial(f, 3))?.base;
    let pid = |n: &str| plain.index_of(n).ok_or("missing generator");
    let pt = plain.var("t^1_1")?;
    let plain = eliminate_generators(&plain, &[(pid("t^1_2")?, NCPoly::zero(f)), (pid("t^2_2")?, &pt * &pt)])?;
    let plain = plain.renamed(&["t", "s"]).with_relations([reduced.parse_poly("t*s - q*s*t")?]);
    let mut ok = true;
    for bound in 2..5 {
        ok &= same_ideal(&reduced, &plain, bound)?;
    }
    log.check("anyonic q^3=1: M0 plus ts = q st", ok);
    let dq = dualqt_verify(bp, &rq.pairing, 2)?;
    if let Some(c) = dq.first_failure() {
        println!("    anyonic M0 pairing witness: {}: {}", c.name, c.witness.clone().unwrap_or_default());
    }
    log.check("anyonic M0: dualqt_verify at L=2", dq.passed);

    let rq = build_m0r_line(&q, 3)?;
    let bp = &rq.bialgebra;
    log.check("conformal line: t1 t2 = q t2 t1", contains(&bp.base, &bp.parse("t_1*t_2 - q*t_2*t_1")?, 4)?);
    log.check(
        "conformal line: t1 t3 = q^2 t3 t1 = q t2^2",
        contains(&bp.base, &bp.parse("t_1*t_3 - q^2*t_3*t_1")?, 4)? && contains(&bp.base, &bp.parse("t_1*t_3 - q*t_2*t_2")?, 4)?,
    );
    let mut alt = TensorElement::zero(q.field());
    for (a, b) in [("t_3", "t_1"), ("(1+q)*t_2*t_1", "t_2"), ("t_1*t_1*t_1", "t_3")] {
        alt.add_simple(&bp.parse(a)?, &bp.parse(b)?, &q.field().one());
    }
    let want = bp.delta(&bp.parse("t_3")?);
    let s = Slice::new(&bp.base, 3)?;
    log.check("conformal line: Delta t3 = t3(x)t1 + (1+q) t2 t1 (x) t2 + t1^3 (x) t3", s.tensor_reduce(&(&want - &alt), &s)?.is_zero());
    Ok(())
}

fn surjection(log: &mut Log) -> Res {
    let rep = mq2_surjection_check(&qsym(), 2)?;
    for c in &rep.checks {
        log.check(c.name.clone(), c.passed);
    }
    let m = build_mq2(&qsym())?;
    log.check(
        "cb = bc and ad - da = (q^-1 - q) bc",
        contains(&m.base, &m.parse("c*b - b*c")?, 2)? && contains(&m.base, &m.parse("a*d - d*a - (q^-1-q)*b*c")?, 2)?,
    );
    Ok(())
}

fn braided(log: &mut Log) -> Res {
    let f = Field::Rational;
    let mut ok = true;
    for spec in [truncated_polynomial(f, 2), roots_of_unity(f, 3)] {
        let bp = build_braided_m1(&RMatrix::kronecker(f, spec.dim()), &spec)?;
        let nm = names(&bp.bialgebra.base);
        let nm: Vec<&str> = nm.iter().map(String::as_str).collect();
        let plain = build_m1(&spec)?.renamed(&nm);
        ok &= same_ideal(&bp.bialgebra.base, &plain.base, 3)? && bp.bialgebra.coproduct == plain.coproduct;
        ok &= bp.braiding.pairs == BraidingTensor::flip(f, bp.generators()).pairs;
    }
    log.check("Kronecker braided M1 = M1", ok);

    let q = qsym();
    let fq = q.field();
    let d = 3usize;
    let r = line_r(&q, d as u32, LineKind::Braided)?;
    let spec = truncated_polynomial(fq, d + 1);
    let bp = build_braided(&r, &spec, Variant::M)?;
    let u = bp.bialgebra.layout.as_ref().ok_or("layout")?.matrix(&bp.bialgebra.base);
    let mut family = Vec::new();
    for i in 0..=d {
        for j in 0..=d {
            for k in 0..=d {
                let mut p = if i + j <= d { u[k][i + j].clone() } else { NCPoly::zero(fq) };
                for a in 0..=k {
                    p.add_scaled(&(&u[a][i] * &u[k - a][j]), &-q.pow((i as i64 - a as i64) * (k - a) as i64)?);
                }
                family.push(p);
            }
        }
    }
    let free = Presentation::free(fq, bp.generators().to_vec())?;
    log.check("braided line: u^k_(i+j) = sum u^a_i u^b_j q^((i-a)b)", same_ideal(&bp.bialgebra.base, &free.with_relations(family), 3)?);
    let labels = spec.labels();
    let mut ok = true;
    for i in 0..=d as i64 {
        for j in 0..=d as i64 {
            let x = format!("u^{}_{}", labels[i as usize], labels[1]);
            let y = format!("u^{}_{}", labels[j as usize], labels[1]);
            let want = TensorElement::simple(&bp.bialgebra.var(&y)?, &bp.bialgebra.var(&x)?).scale(&q.pow((i - 1) * (j - 1))?);
            ok &= bp.psi(&x, &y)? == want;
        }
    }
    log.check("braided line: Psi(u_i (x) u_j) = q^((i-1)(j-1)) u_j (x) u_i", ok);
    let reading = line_reading_report(&q, 4)?;
    log.check("braided line: derived higher generators satisfy the relations", reading.checks[0].passed);
    let mut ok = true;
    for variant in [Variant::M1, Variant::M, Variant::M0] {
        ok &= verify_braided_bialgebra(&build_braided(&r, &spec, variant)?, 3)?.passed;
    }
    log.check("braided line M1, M, M0: braided bialgebra at L=3", ok);

    let cases = [
        ("Kronecker", RMatrix::kronecker(f, 2), truncated_polynomial(f, 2)),
        ("braided line", line_r(&q, 2, LineKind::Braided)?, truncated_polynomial(fq, 3)),
        ("anyonic", anyonic_line(3)?, truncated_polynomial(Field::cyclotomic(3)?, 3)),
    ];
    for (name, r, spec) in cases {
        log.check(format!("transmutation at L=2: {name}"), transmute_check(&r, &spec, 2)?.passed);
    }
    Ok(())
}

fn samples(field: Field) -> Result<Vec<Scalar>, Box<dyn Error>> {
    let raw: &[&str] = match field {
        Field::Rational => &["0", "1", "-3/2", "7", "2/9"],
        _ => &["0", "1", "q", "-q^2+1/3", "(q+2)/(q-3)", "q^-1"],
    };
    let mut out = Vec::new();
    for s in raw {
        if field != Field::RationalQ && s.contains('/') && s.contains('q') {
            continue;
        }
        out.push(Scalar::parse(field, s)?);
    }
    Ok(out)
}

fn properties(log: &mut Log) -> Res {
    let mut ok = true;
    for field in [Field::Rational, Field::RationalQ, Field::cyclotomic(3)?, Field::cyclotomic(5)?] {
        let xs = samples(field)?;
        for a in &xs {
            ok &= (a + &field.zero()) == *a && (a * &field.one()) == *a && (a + &-a).is_zero();
            if !a.is_zero() {
                ok &= (a * &a.inv()?).is_one();
            }
            for b in &xs {
                ok &= a + b == b + a && a * b == b * a;
                for c in &xs {
                    ok &= &(a + b) + c == a + &(b + c);
                    ok &= &(a * b) * c == a * &(b * c);
                    ok &= a * &(b + c) == &(a * b) + &(a * c);
                }
            }
        }
    }
    log.check("field axioms on samples of Q, Q(q), Q(w3), Q(w5)", ok);

    let mut ok = true;
    for base in [qsym(), Field::cyclotomic(3)?.q()?, Field::cyclotomic(4)?.q()?, Field::Rational.one()] {
        for m in 0..8u32 {
            for r in 1..=m {
                let lhs = q_binomial(m + 1, r, &base);
                let rhs = &q_binomial(m, r - 1, &base) + &(&base.pow(r as i64)? * &q_binomial(m, r, &base));
                ok &= lhs == rhs;
            }
        }
    }
    log.check("Pascal identity for q-binomials, m < 8", ok);

    let q = qsym();
    let mut ok = true;
    for trunc in 0..=3u32 {
        let idx = indices(trunc, true);
        let mut gens = Vec::new();
        for p in ["s", "t", "u"] {
            for m in &idx {
                gens.push(Generator::new(format!("{p}{}{}", m.0, m.1)));
            }
        }
        let free = Presentation::free(q.field(), gens)?;
        let seq = |k: usize| -> IndexedSequence { idx.iter().enumerate().map(|(j, &m)| (m, free.gen((k * idx.len() + j) as u32))).collect() };
        let (s, t, u) = (seq(0), seq(1), seq(2));
        let left = q_convolve(&q_convolve(&s, &t, &q, trunc), &u, &q, trunc);
        let right = q_convolve(&s, &q_convolve(&t, &u, &q, trunc), &q, trunc);
        ok &= left == right;
    }
    log.check("q_convolve associative on generic sequences, D <= 3", ok);

    let m = build_m(&roots_of_unity(Field::Rational, 3))?;
    let mut rev = m.relations().to_vec();
    rev.reverse();
    let shuffled = Presentation::free(m.field(), m.generators().to_vec())?.with_relations(rev);
    let (a, b) = (Slice::new(&m.base, 3)?, Slice::new(&shuffled, 3)?);
    log.check("slice determinism", a.basis() == b.basis() && a.ideal_basis() == b.ideal_basis() && Slice::new(&m.base, 3)?.ideal_basis() == a.ideal_basis());

    let mut ok = true;
    for (small, big) in [(build_m0_qplane(&q, 2)?, build_m0_qplane(&q, 3)?), (build_m0_line(Field::Rational, 2)?, build_m0_line(Field::Rational, 3)?)] {
        let zero = NCPoly::zero(big.bialgebra.field());
        let drop: Vec<(u32, NCPoly)> = big
            .bialgebra
            .generators()
            .iter()
            .enumerate()
            .filter(|(_, g)| small.bialgebra.base.index_of(&g.name).is_none())
            .map(|(i, _)| (i as u32, zero.clone()))
            .collect();
        let cut = eliminate_generators(&big.bialgebra.base, &drop)?;
        ok &= names(&cut) == names(&small.bialgebra.base) && same_ideal(&cut, &small.bialgebra.base, 2)?;
    }
    let (small, big) = (build_m_qplane(&q, 1)?, build_m_qplane(&q, 2)?);
    ok &= small.bialgebra.relations().iter().all(|r| {
        let s = r.display(small.bialgebra.generators());
        big.bialgebra.base.relation_strings().contains(&s)
    });
    log.check("truncation coherence, D = 2 inside D = 3", ok);

    let f = Field::Rational;
    let mut all: Vec<(String, BialgebraPresentation)> = Vec::new();
    for (name, spec) in [
        ("x^2=0", truncated_polynomial(f, 2)),
        ("x^3=0", truncated_polynomial(f, 3)),
        ("x^2=1", roots_of_unity(f, 2)),
        ("x^3=1", roots_of_unity(f, 3)),
        ("pointed 2 points", finite_set_pointed(f, 2)),
    ] {
        all.push((format!("M1 {name}"), build_m1(&spec)?));
        all.push((format!("M {name}"), build_m(&spec)?));
        all.push((format!("M0 {name}"), build_m0(&spec)?));
    }
    all.push(("M1 3 points".into(), build_m1(&finite_set(f, 3))?));
    all.push(("rows sum to one, 2 points".into(), finite_set_m(f, 2)?));
    all.push(("calculus quotient".into(), quotient_calculus_preserving(&finite_set_m(f, 2)?, &CalculusSpec::new(2, vec![(1, 2)])?)?));
    all.push(("M0 line D=3".into(), build_m0_line(f, 3)?.bialgebra));
    all.push(("M0 plane D=2".into(), build_m0_qplane(&q, 2)?.bialgebra));
    all.push(("M_q(2)".into(), build_mq2(&q)?));
    all.push(("FRT conformal D=2".into(), build_frt(&line_r(&q, 2, LineKind::Conformal)?)?.bialgebra));
    let any = anyonic_line(3)?;
    all.push(("anyonic M1(R,A)".into(), build_m1r(&any, &truncated_polynomial(any.field(), 3), Variant::M1)?.bialgebra));
    all.push(("anyonic M0(R,A)".into(), build_m1r(&any, &truncated_polynomial(any.field(), 3), Variant::M0)?.bialgebra));
    all.push(("conformal M0(R) D=3".into(), build_m0r_line(&q, 3)?.bialgebra));
    all.push(("plane M0(R) D=2".into(), build_mr_qplane(&q, 2, Variant::M0)?.0.bialgebra));
    // the graded M variant stores a truncated view of an infinite coproduct
    log.check("graded M variant is flagged formal", build_m_qplane(&q, 1)?.formal);
    for (name, bp) in &all {
        let rep = verify_bialgebra(bp, 3)?;
        log.check(format!("verify_bialgebra: {name}"), rep.passed);
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [(&str, Criterion); 11] = [
        ("fermion", fermion),
        ("roots of unity", roots),
        ("finite sets", finite_sets),
        ("calculus quotient", calculus),
        ("quantum plane", qplane),
        ("M_q(2)", mq2),
        ("coinvariants", coinv),
        ("R-matrix layer", rmatrix),
        ("M_q(2) surjection", surjection),
        ("braided layer", braided),
        ("property suites", properties),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let mut log = Log::default();
        let start = Instant::now();
        let res = run(&mut log);
        let took = start.elapsed();
        let budget = Duration::from_secs(BUDGET[k]);
        let ok = res.is_ok() && log.items.iter().all(|(_, p)| *p) && took <= budget;
        println!("criterion {:>2} {name}: {} ({:.2}s, budget {}s)", k + 1, if ok { "PASS" } else { "FAIL" }, took.as_secs_f64(), BUDGET[k]);
        for (check, p) in &log.items {
            println!("    [{}] {check}", if *p { "ok" } else { "FAIL" });
        }
        if let Err(e) = res {
            println!("    [FAIL] error: {e}");
        }
        if !ok {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
