//! Named examples, each with the claims it is expected to reproduce.

use crate::doc::Golden;
use crate::CliError;
use qdiff::braided::{build_braided, BraidedPresentation};
use qdiff::comeasure::algebras::{finite_set, finite_set_pointed, roots_of_unity, truncated_polynomial};
use qdiff::comeasure::{build_m, build_m0, build_m1, coinvariants, eliminate_generators, AlgebraSpec, BialgebraPresentation, Variant};
use qdiff::graded::{build_m0_line, build_m0_qplane, build_m_qplane, build_mq2, TruncatedGradedPresentation};
use qdiff::linalg;
use qdiff::ncalg::{NCPoly, Presentation, Slice, TensorElement};
use qdiff::rmat::{anyonic_line, build_m0r_line, build_m1r, line_r, LineKind, RMatrix, RQuotient};
use qdiff::scalars::{Field, Scalar};

pub enum Built {
    Plain { bp: BialgebraPresentation, spec: Option<AlgebraSpec> },
    Graded(TruncatedGradedPresentation),
    Braided { bp: BraidedPresentation, r: RMatrix, spec: AlgebraSpec },
    R { rq: RQuotient, r: RMatrix, spec: AlgebraSpec },
}

pub struct Preset {
    pub title: String,
    pub variant: Variant,
    pub built: Built,
    pub golden: Vec<Golden>,
}

pub struct Params {
    pub variant: Option<Variant>,
    pub field: Option<Field>,
    pub q: String,
    pub trunc: u32,
    pub derive_mq2: bool,
}

impl Params {
    fn field(&self) -> Field {
        self.field.unwrap_or(Field::RationalQ)
    }

    fn q(&self) -> Result<Scalar, CliError> {
        let f = self.field();
        if self.q == "symbolic" {
            return f.q().map_err(|_| CliError::Usage(format!("--q symbolic needs a field with a parameter, not {f}")));
        }
        let q = Scalar::parse(f, &self.q)?;
        if q.is_zero() {
            return Err(CliError::Usage("--q must be nonzero".into()));
        }
        Ok(q)
    }
}

/// `name` or `name:N`.
fn split(name: &str) -> Result<(&str, Option<u32>), CliError> {
    match name.split_once(':') {
        None => Ok((name, None)),
        Some((n, p)) => {
            let p = p.parse().map_err(|_| CliError::Usage(format!("bad preset parameter in `{name}`")))?;
            Ok((n, Some(p)))
        }
    }
}

fn need(p: Option<u32>, name: &str, min: u32) -> Result<u32, CliError> {
    match p {
        Some(n) if n >= min => Ok(n),
        Some(n) => Err(CliError::Usage(format!("{name}:{n}: parameter must be at least {min}"))),
        None => Err(CliError::Usage(format!("preset {name} needs a parameter, e.g. {name}:{min}"))),
    }
}

fn contains(p: &Presentation, x: &NCPoly, bound: u32) -> Result<bool, CliError> {
    Ok(Slice::new(p, bound)?.contains(x)?)
}

fn free_with(p: &Presentation, rels: &[&str]) -> Result<Presentation, CliError> {
    let free = Presentation::free(p.field(), p.generators().to_vec())?;
    let rels = rels.iter().map(|s| free.parse_poly(s)).collect::<Result<Vec<_>, _>>()?;
    Ok(free.with_relations(rels))
}

fn golden(out: &mut Vec<Golden>, group: &str, claim: impl Into<String>, passed: bool) {
    out.push(Golden { group: group.into(), claim: claim.into(), passed });
}

pub fn resolve(name: &str, params: &Params) -> Result<Preset, CliError> {
    let (base, arg) = split(name)?;
    let mut g = Vec::new();
    let (variant, built) = match base {
        "fermion" => fermion(params, &mut g)?,
        "rootsof1" => roots(need(arg, base, 1)?, params, &mut g)?,
        "anyon" => anyon(need(arg, base, 2)?, params, &mut g)?,
        "finiteset" => finiteset(need(arg, base, 1)?, params, &mut g)?,
        "line" => line(arg.unwrap_or(params.trunc), params)?,
        "qplane" => qplane(arg.unwrap_or(params.trunc), params, &mut g)?,
        "braided_line" => braided_line(arg.unwrap_or(params.trunc), params, &mut g)?,
        "conformal_line" => conformal_line(arg.unwrap_or(params.trunc), params, &mut g)?,
        _ => return Err(CliError::Usage(format!("unknown preset `{name}`"))),
    };
    Ok(Preset { title: format!("preset {name}"), variant, built, golden: g })
}

/// The R-matrix and algebra of an R-matrix preset.
pub fn r_preset(name: &str, params: &Params) -> Result<(RMatrix, AlgebraSpec), CliError> {
    let (base, arg) = split(name)?;
    match base {
        "braided_line" | "conformal_line" => {
            let d = arg.unwrap_or(params.trunc);
            let q = params.q()?;
            let kind = if base == "braided_line" { LineKind::Braided } else { LineKind::Conformal };
            Ok((line_r(&q, d, kind)?, truncated_polynomial(q.field(), d as usize + 1)))
        }
        "anyon" => {
            let n = need(arg, base, 2)?;
            let f = cyclotomic_for(n, params)?;
            Ok((anyonic_line(n)?, truncated_polynomial(f, n as usize)))
        }
        "kronecker" => {
            let n = need(arg, base, 1)?;
            let f = params.field();
            Ok((RMatrix::kronecker(f, n as usize), truncated_polynomial(f, n as usize)))
        }
        _ => Err(CliError::Usage(format!("`{name}` has no R-matrix; use braided_line, conformal_line, anyon:N or kronecker:N"))),
    }
}

fn cyclotomic_for(n: u32, params: &Params) -> Result<Field, CliError> {
    let want = Field::cyclotomic(n)?;
    match params.field {
        Some(f) if f != want => Err(CliError::Usage(format!("anyon:{n} requires --field cyclotomic:{n}, got {f}"))),
        _ => Ok(want),
    }
}

fn build(spec: &AlgebraSpec, variant: Variant) -> Result<BialgebraPresentation, CliError> {
    Ok(match variant {
        Variant::M1 => build_m1(spec)?,
        Variant::M => build_m(spec)?,
        _ => build_m0(spec)?,
    })
}

fn fermion(params: &Params, g: &mut Vec<Golden>) -> Result<(Variant, Built), CliError> {
    let variant = params.variant.unwrap_or(Variant::M);
    let spec = truncated_polynomial(params.field(), 2);
    let mut bp = build(&spec, variant)?;
    match variant {
        Variant::M => {
            bp = bp.renamed(&["b", "t"]);
            let want = free_with(&bp.base, &["b*b", "b*t+t*b"])?;
            golden(g, "relations", "exactly {b^2, bt+tb}", bp.relations() == want.relations());
        }
        Variant::M0 => {
            let x = bp.base.gen(0);
            let ok = bp.relations().is_empty() && bp.coproduct.len() == 1 && bp.coproduct[0] == TensorElement::simple(&x, &x);
            golden(g, "relations", "one grouplike generator, no relations", ok);
        }
        _ => {}
    }
    Ok((variant, Built::Plain { bp, spec: Some(spec) }))
}

fn roots(n: u32, params: &Params, g: &mut Vec<Golden>) -> Result<(Variant, Built), CliError> {
    let variant = params.variant.unwrap_or(Variant::M);
    let spec = roots_of_unity(params.field(), n as usize);
    let mut bp = build(&spec, variant)?;
    match (n, variant) {
        (2, Variant::M) => {
            bp = bp.renamed(&["b", "t"]);
            for s in ["b+t", "b-t"] {
                let p = bp.parse(&format!("({s})^2 - 1"))?;
                golden(g, "normalized relations", format!("({s})^2 = 1"), contains(&bp.base, &p, 2)?);
            }
        }
        (2, Variant::M1) => {
            let b = bp.var("t^0_1")?;
            let t = bp.var("t^1_1")?;
            for (label, x) in [("b+t", &b + &t), ("b-t", &b - &t)] {
                let cube = &(&x * &x) * &x;
                golden(g, "normalized relations (b = t^0_1, t = t^1_1)", format!("({label})^3 = {label}"), contains(&bp.base, &(&cube - &x), 3)?);
            }
        }
        (3, Variant::M0) => {
            let id = |name: &str| bp.base.index_of(name).ok_or_else(|| CliError::Input(format!("missing generator {name}")));
            let t = bp.var("t^1_1")?;
            let s = bp.var("t^2_1")?;
            let subs = [(id("t^1_2")?, &s * &s), (id("t^2_2")?, &t * &t)];
            let sl = Slice::new(&bp.base, 2)?;
            let mut ok = true;
            for (k, p) in &subs {
                ok &= sl.contains(&(&bp.base.gen(*k) - p))?;
            }
            let group = "eliminated (t = t^1_1, s = t^2_1)";
            golden(g, group, "t^1_2 = s^2, t^2_2 = t^2", ok);
            let reduced = eliminate_generators(&bp.base, &subs)?.renamed(&["t", "s"]);
            let want = free_with(&reduced, &["t*s+s*t", "t^3+s^3-1", "t*t*s", "t*s*s"])?;
            let same = Slice::new(&reduced, 4)?.same_ideal(&Slice::new(&want, 4)?)?;
            golden(g, group, "relations {ts+st, t^3+s^3-1, t^2s, ts^2}", same);
        }
        _ => {}
    }
    Ok((variant, Built::Plain { bp, spec: Some(spec) }))
}

fn anyon(n: u32, params: &Params, g: &mut Vec<Golden>) -> Result<(Variant, Built), CliError> {
    let variant = params.variant.unwrap_or(Variant::M0);
    let f = cyclotomic_for(n, params)?;
    let r = anyonic_line(n)?;
    let spec = truncated_polynomial(f, n as usize);
    let rq = build_m1r(&r, &spec, variant)?;
    if n == 3 && variant == Variant::M0 {
        let elim = |p: &Presentation| -> Result<Presentation, CliError> {
            let id = |name: &str| p.index_of(name).ok_or_else(|| CliError::Input(format!("missing generator {name}")));
            let t = p.var("t^1_1")?;
            Ok(eliminate_generators(p, &[(id("t^1_2")?, NCPoly::zero(f)), (id("t^2_2")?, &t * &t)])?.renamed(&["t", "s"]))
        };
        let reduced = elim(&rq.bialgebra.base)?;
        let plain = elim(&build_m0(&spec)?.base)?;
        let plain = plain.with_relations([plain.parse_poly("t*s - q*s*t")?]);
        let same = Slice::new(&reduced, 4)?.same_ideal(&Slice::new(&plain, 4)?)?;
        golden(g, "relations (t = t^1_1, s = t^2_1)", "M0 plus ts = q st", same);
    }
    Ok((variant, Built::R { rq, r, spec }))
}

fn finiteset(n: u32, params: &Params, g: &mut Vec<Golden>) -> Result<(Variant, Built), CliError> {
    let variant = params.variant.unwrap_or(Variant::M1);
    let spec = finite_set(params.field(), n as usize);
    let bp = build(&spec, variant)?;
    if variant == Variant::M1 {
        let slice = Slice::new(&bp.base, 2)?;
        let gens = bp.generators();
        let entry = |a: usize, i: usize| bp.entry(a, i).ok_or_else(|| CliError::Input("missing layout".into()));
        for a in 0..n as usize {
            let group = format!("projector row {}", a + 1);
            for i in 0..n as usize {
                for j in 0..n as usize {
                    let (x, y) = (entry(a, i)?, entry(a, j)?);
                    let mut r = &x * &y;
                    let rhs = if i == j {
                        r = &r - &x;
                        x.display(gens)
                    } else {
                        "0".into()
                    };
                    golden(g, &group, format!("{} {} = {rhs}", x.display(gens), y.display(gens)), slice.contains(&r)?);
                }
            }
        }
    }
    Ok((variant, Built::Plain { bp, spec: Some(spec) }))
}

fn line(d: u32, params: &Params) -> Result<(Variant, Built), CliError> {
    let variant = params.variant.unwrap_or(Variant::M0);
    let f = params.field();
    match variant {
        Variant::M0 => Ok((variant, Built::Graded(build_m0_line(f, d)?))),
        _ => {
            let spec = truncated_polynomial(f, d as usize + 1);
            Ok((variant, Built::Plain { bp: build(&spec, variant)?, spec: Some(spec) }))
        }
    }
}

fn qplane(d: u32, params: &Params, g: &mut Vec<Golden>) -> Result<(Variant, Built), CliError> {
    let q = params.q()?;
    if params.derive_mq2 {
        let bp = build_mq2(&q)?;
        let want = free_with(&bp.base, &["b*a - q*a*b", "c*a - q*a*c", "d*b - q*b*d", "d*c - q*c*d", "c*b - b*c", "a*d - d*a - (q^-1 - q)*b*c"])?;
        let group = "M_q(2)";
        golden(g, group, "six relations", bp.relations().len() == 6);
        let same = Slice::new(&bp.base, 3)?.same_ideal(&Slice::new(&want, 3)?)?;
        golden(g, group, "ba=qab, ca=qac, db=qbd, dc=qcd, cb=bc, ad-da=(q^-1-q)bc", same);
        let dim = Slice::new(&bp.base, 2)?.quotient_dim();
        golden(g, group, format!("weight-2 quotient dim {dim} = 15"), dim == 15);
        return Ok((Variant::Quotient, Built::Plain { bp, spec: None }));
    }
    let variant = params.variant.unwrap_or(Variant::M0);
    let tg = match variant {
        Variant::M0 => build_m0_qplane(&q, d)?,
        Variant::M => build_m_qplane(&q, d)?,
        _ => return Err(CliError::Usage("qplane supports --variant m or m0".into())),
    };
    Ok((variant, Built::Graded(tg)))
}

fn braided_line(d: u32, params: &Params, g: &mut Vec<Golden>) -> Result<(Variant, Built), CliError> {
    let variant = params.variant.unwrap_or(Variant::M);
    let q = params.q()?;
    let r = line_r(&q, d, LineKind::Braided)?;
    let spec = truncated_polynomial(q.field(), d as usize + 1);
    let bp = build_braided(&r, &spec, variant)?;
    if variant == Variant::M && d >= 1 {
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
        golden(g, "braiding", "Psi(u_i (x) u_j) = q^((i-1)(j-1)) u_j (x) u_i", ok);
    }
    Ok((variant, Built::Braided { bp, r, spec }))
}

fn conformal_line(d: u32, params: &Params, g: &mut Vec<Golden>) -> Result<(Variant, Built), CliError> {
    let variant = params.variant.unwrap_or(Variant::M0);
    let q = params.q()?;
    let r = line_r(&q, d, LineKind::Conformal)?;
    let spec = truncated_polynomial(q.field(), d as usize + 1);
    let rq = if variant == Variant::M0 { build_m0r_line(&q, d)? } else { build_m1r(&r, &spec, variant)? };
    if variant == Variant::M0 && d >= 3 {
        let bp = &rq.bialgebra;
        let group = "low-order identities";
        golden(g, group, "t_1 t_2 = q t_2 t_1", contains(&bp.base, &bp.parse("t_1*t_2 - q*t_2*t_1")?, 4)?);
        let ok = contains(&bp.base, &bp.parse("t_1*t_3 - q^2*t_3*t_1")?, 4)? && contains(&bp.base, &bp.parse("t_1*t_3 - q*t_2*t_2")?, 4)?;
        golden(g, group, "t_1 t_3 = q^2 t_3 t_1 = q t_2^2", ok);
        let mut alt = TensorElement::zero(q.field());
        for (a, b) in [("t_3", "t_1"), ("(1+q)*t_2*t_1", "t_2"), ("t_1*t_1*t_1", "t_3")] {
            alt.add_simple(&bp.parse(a)?, &bp.parse(b)?, &q.field().one());
        }
        let diff = &bp.delta(&bp.parse("t_3")?) - &alt;
        let s = Slice::new(&bp.base, 3)?;
        golden(g, group, "D(t_3) = t_3 (x) t_1 + (1+q) t_2 t_1 (x) t_2 + t_1^3 (x) t_3", s.tensor_reduce(&diff, &s)?.is_zero());
    }
    Ok((variant, Built::R { rq, r, spec }))
}

/// Coinvariant slices of the two bundle data: the two-point set and `x^2=1`.
pub fn coinv(name: &str, bound: u32, params: &Params) -> Result<(Presentation, Vec<NCPoly>, Vec<Golden>), CliError> {
    let f = params.field();
    let mut g = Vec::new();
    match name {
        "twopoint" | "finiteset:2" => {
            let m = build_m(&finite_set_pointed(f, 2))?;
            let m0 = build_m0(&finite_set_pointed(f, 2))?;
            let pi = vec![NCPoly::zero(f), m0.base.gen(0)];
            let co = coinvariants(&m, &m0, &pi, bound)?;
            let want = [NCPoly::one(f), m.base.gen(0)];
            golden(&mut g, "coinvariants", format!("span {{1, {}}}", m.base.gen(0).display(m.generators())), same_span(&co, &want));
            Ok((m.base, co, g))
        }
        "rootsof1:2" => {
            let m = build_m(&roots_of_unity(f, 2))?.renamed(&["b", "t"]);
            let m0 = build_m0(&roots_of_unity(f, 2))?;
            let co = coinvariants(&m, &m0, &[NCPoly::zero(f), m0.base.gen(0)], bound)?;
            let s = Slice::new(&m.base, bound)?;
            let b = m.var("b")?;
            let mut powers = vec![NCPoly::one(f)];
            for k in 1..=bound as usize {
                let next = &powers[k - 1] * &b;
                powers.push(next);
            }
            let powers: Vec<NCPoly> = powers.iter().map(|p| s.reduce(p)).collect::<Result<_, _>>()?;
            let reduced: Vec<NCPoly> = co.iter().map(|p| s.reduce(p)).collect::<Result<_, _>>()?;
            golden(&mut g, "coinvariants", "polynomials in b", same_span(&reduced, &powers));
            Ok((m.base, co, g))
        }
        _ => Err(CliError::Usage(format!("no coinvariant datum for `{name}`; use twopoint or rootsof1:2"))),
    }
}

fn same_span(a: &[NCPoly], b: &[NCPoly]) -> bool {
    let words: Vec<_> = {
        let mut w: Vec<_> = a.iter().chain(b).flat_map(|p| p.terms().map(|(w, _)| w.clone())).collect();
        w.sort();
        w.dedup();
        w
    };
    let row = |p: &NCPoly| -> Vec<Scalar> { words.iter().map(|w| p.coeff(w)).collect() };
    let ra: linalg::Matrix = a.iter().map(row).collect();
    let rb: linalg::Matrix = b.iter().map(row).collect();
    let both: linalg::Matrix = ra.iter().chain(&rb).cloned().collect();
    let rank = |m: &linalg::Matrix| if m.is_empty() { 0 } else { linalg::rank(m) };
    rank(&ra) == rank(&both) && rank(&rb) == rank(&both)
}
