use super::{b_name, t_name, validate_algebra, AlgebraSpec, BialgebraPresentation, Coaction, ComeasureError, Layout, Variant};
use crate::ncalg::{Generator, NCPoly, Presentation, TensorElement};
use std::collections::BTreeMap;

fn check(spec: &AlgebraSpec) -> Result<(), ComeasureError> {
    let r = validate_algebra(spec);
    if let Some(w) = r.assoc_witness {
        return Err(ComeasureError::NonAssociative(w));
    }
    if let Some(w) = r.unit_witness {
        return Err(ComeasureError::BadUnit(w));
    }
    Ok(())
}

/// Generators, layout and matrix coalgebra shared by the three builders.
fn skeleton(spec: &AlgebraSpec, kind: Variant) -> Result<(Presentation, Layout), ComeasureError> {
    let n = spec.dim();
    let labels = spec.labels();
    let lo = if kind == Variant::M1 { 0 } else { 1 };
    let mut names = Vec::new();
    let mut ids = BTreeMap::new();
    if kind == Variant::M {
        for i in 1..n {
            ids.insert((0, i), names.len() as u32);
            names.push(b_name(labels, i));
        }
    }
    for a in lo..n {
        for i in lo..n {
            ids.insert((a, i), names.len() as u32);
            names.push(t_name(labels, a, i));
        }
    }
    let pres = Presentation::free(spec.field(), names.into_iter().map(Generator::new).collect())?;
    Ok((pres, Layout { dim: n, kind, ids }))
}

fn assemble(spec: AlgebraSpec, base: Presentation, layout: Layout, kind: Variant) -> BialgebraPresentation {
    let n = spec.dim();
    let f = spec.field();
    let t = layout.matrix(&base);
    let mut coproduct = vec![TensorElement::zero(f); base.generators().len()];
    let mut counit = vec![f.zero(); base.generators().len()];
    for (&(a, i), &g) in &layout.ids {
        let mut d = TensorElement::zero(f);
        for m in 0..n {
            d.add_simple(&t[a][m], &t[m][i], &f.one());
        }
        coproduct[g as usize] = d;
        if a == i {
            counit[g as usize] = f.one();
        }
    }
    let images = (0..n).map(|j| (0..n).map(|a| t[a][j].clone()).collect()).collect();
    BialgebraPresentation { base, coproduct, counit, coaction: Some(Coaction { images }), variant: kind, layout: Some(layout), spec: Some(spec) }
}

/// `c_ij^a t^k_a = c_ab^k t^a_i t^b_j` for all `i, j, k`.
pub fn build_m1(spec: &AlgebraSpec) -> Result<BialgebraPresentation, ComeasureError> {
    check(spec)?;
    let (free, layout) = skeleton(spec, Variant::M1)?;
    let n = spec.dim();
    let f = spec.field();
    let t = layout.matrix(&free);
    let mut rels = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let mut r = NCPoly::zero(f);
                for a in 0..n {
                    r.add_scaled(&t[k][a], spec.c(i, j, a));
                    for b in 0..n {
                        let c = spec.c(a, b, k);
                        if !c.is_zero() {
                            r.add_scaled(&(&t[a][i] * &t[b][j]), &-c);
                        }
                    }
                }
                rels.push(r);
            }
        }
    }
    let base = free.with_relations(rels);
    Ok(assemble(spec.clone(), base, layout, Variant::M1))
}

/// Unit-preserving comeasurings: generators `b_i, t^a_i` with `a, i >= 1`.
pub fn build_m(spec: &AlgebraSpec) -> Result<BialgebraPresentation, ComeasureError> {
    let spec = spec.unit_first()?;
    check(&spec)?;
    let (free, layout) = skeleton(&spec, Variant::M)?;
    let n = spec.dim();
    let f = spec.field();
    let t = layout.matrix(&free);
    let b = |i: usize| t[0][i].clone();
    let mut rels = Vec::new();
    for i in 1..n {
        for j in 1..n {
            for k in 1..n {
                let mut r = NCPoly::zero(f);
                for a in 1..n {
                    r.add_scaled(&t[k][a], spec.c(i, j, a));
                }
                for a in 1..n {
                    for bb in 1..n {
                        let c = spec.c(a, bb, k);
                        if !c.is_zero() {
                            r.add_scaled(&(&t[a][i] * &t[bb][j]), &-c);
                        }
                    }
                }
                r = &(&r - &(&b(i) * &t[k][j])) - &(&t[k][i] * &b(j));
                rels.push(r);
            }
            let mut r = NCPoly::constant(spec.c(i, j, 0).clone());
            for a in 1..n {
                r.add_scaled(&b(a), spec.c(i, j, a));
            }
            for a in 1..n {
                for bb in 1..n {
                    let c = spec.c(a, bb, 0);
                    if !c.is_zero() {
                        r.add_scaled(&(&t[a][i] * &t[bb][j]), &-c);
                    }
                }
            }
            r = &r - &(&b(i) * &b(j));
            rels.push(r);
        }
    }
    let base = free.with_relations(rels);
    Ok(assemble(spec, base, layout, Variant::M))
}

/// Comeasurings preserving the splitting `A = 1 + A'`: generators `t^a_i`
/// with `a, i >= 1` and the matrix coalgebra.
pub fn build_m0(spec: &AlgebraSpec) -> Result<BialgebraPresentation, ComeasureError> {
    let spec = spec.unit_first()?;
    check(&spec)?;
    let (free, layout) = skeleton(&spec, Variant::M0)?;
    let n = spec.dim();
    let f = spec.field();
    let t = layout.matrix(&free);
    let mut rels = Vec::new();
    for i in 1..n {
        for j in 1..n {
            for k in 0..n {
                let mut r = NCPoly::zero(f);
                if k == 0 {
                    r = NCPoly::constant(spec.c(i, j, 0).clone());
                } else {
                    for a in 1..n {
                        r.add_scaled(&t[k][a], spec.c(i, j, a));
                    }
                }
                for a in 1..n {
                    for bb in 1..n {
                        let c = spec.c(a, bb, k);
                        if !c.is_zero() {
                            r.add_scaled(&(&t[a][i] * &t[bb][j]), &-c);
                        }
                    }
                }
                rels.push(r);
            }
        }
    }
    let base = free.with_relations(rels);
    Ok(assemble(spec, base, layout, Variant::M0))
}
