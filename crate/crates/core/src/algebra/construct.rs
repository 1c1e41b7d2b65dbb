//! Products and generated subalgebras.

use super::morphism::restrict_to;
use super::{tuples, FiniteAlgebra, Morphism, OpTable, Poset};
use crate::error::{Error, Result};

/// Binary product with componentwise tables and order; the projections are
/// homomorphisms and jointly injective (jointly order-reflecting when
/// ordered).
pub fn product(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Result<(FiniteAlgebra, (Morphism, Morphism))> {
    if a.signature() != b.signature() {
        return Err(Error::SignatureMismatch);
    }
    if a.is_ordered() != b.is_ordered() {
        return Err(Error::OrderMismatch);
    }
    let sig = a.signature().clone();
    let nsorts = sig.sorts().len();
    let mut carriers = Vec::with_capacity(nsorts);
    for s in 0..nsorts {
        let mut c = Vec::with_capacity(a.size(s) * b.size(s));
        for i in 0..a.size(s) {
            for j in 0..b.size(s) {
                c.push(format!("({},{})", a.element_name(s, i), b.element_name(s, j)));
            }
        }
        carriers.push(c);
    }
    let pair = |s: usize, i: usize, j: usize| i * b.size(s) + j;
    let unpair = |s: usize, x: usize| (x / b.size(s), x % b.size(s));
    let mut tables = Vec::new();
    for (o, decl) in sig.ops().iter().enumerate() {
        let dims: Vec<usize> = decl.args.iter().map(|&s| a.size(s) * b.size(s)).collect();
        let mut vals = Vec::with_capacity(dims.iter().product::<usize>().max(1));
        for t in tuples(&dims) {
            let (ta, tb): (Vec<usize>, Vec<usize>) = t
                .iter()
                .enumerate()
                .map(|(k, &x)| unpair(decl.args[k], x))
                .unzip();
            if a.tuple_valid(o, &ta) && b.tuple_valid(o, &tb) {
                vals.push(pair(decl.result, a.apply(o, &ta), b.apply(o, &tb)));
            } else {
                vals.push(t.first().copied().unwrap_or(0));
            }
        }
        tables.push(OpTable::new(dims, vals));
    }
    let order = if a.is_ordered() {
        let mut posets = Vec::with_capacity(nsorts);
        for s in 0..nsorts {
            let n = a.size(s) * b.size(s);
            let mut pairs = Vec::new();
            for x in 0..n {
                for y in 0..n {
                    let (xa, xb) = unpair(s, x);
                    let (ya, yb) = unpair(s, y);
                    if a.leq(s, xa, ya) && b.leq(s, xb, yb) {
                        pairs.push((x, y));
                    }
                }
            }
            posets.push(Poset::from_pairs(n, &pairs).expect("componentwise order"));
        }
        Some(posets)
    } else {
        None
    };
    let p = FiniteAlgebra::from_parts(sig, carriers, tables, order);
    let p1 = Morphism::new(
        p.clone(),
        a.clone(),
        (0..nsorts).map(|s| (0..p.size(s)).map(|x| unpair(s, x).0).collect()).collect(),
    )?;
    let p2 = Morphism::new(
        p.clone(),
        b.clone(),
        (0..nsorts).map(|s| (0..p.size(s)).map(|x| unpair(s, x).1).collect()).collect(),
    )?;
    Ok((p, (p1, p2)))
}

/// Least subalgebra containing the seed and all constants, with the
/// injective, order-reflecting embedding into `a`. Errors if some sort
/// ends up empty.
pub fn subalgebra_generated(a: &FiniteAlgebra, seed: &[Vec<usize>]) -> Result<Morphism> {
    let sig = a.signature().clone();
    let mut inside: Vec<Vec<bool>> = a.sizes().iter().map(|&n| vec![false; n]).collect();
    for (s, es) in seed.iter().enumerate() {
        for &e in es {
            if e >= a.size(s) {
                return Err(Error::UnknownElement(format!("#{e} in sort {s}")));
            }
            inside[s][e] = true;
        }
    }
    loop {
        let mut changed = false;
        for (o, decl) in sig.ops().iter().enumerate() {
            let dims: Vec<usize> = decl.args.iter().map(|&s| a.size(s)).collect();
            for t in tuples(&dims) {
                if !a.tuple_valid(o, &t) {
                    continue;
                }
                if t.iter().enumerate().all(|(k, &i)| inside[decl.args[k]][i]) {
                    let r = a.apply(o, &t);
                    if !inside[decl.result][r] {
                        inside[decl.result][r] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let keep: Vec<Vec<usize>> = inside
        .iter()
        .map(|m| (0..m.len()).filter(|&i| m[i]).collect())
        .collect();
    for (s, k) in keep.iter().enumerate() {
        if k.is_empty() {
            return Err(Error::Validation(super::ValidationReport {
                violations: vec![super::Violation::EmptySort {
                    sort: sig.sorts()[s].clone(),
                }],
            }));
        }
    }
    let sub = restrict_to(a, &keep);
    Morphism::new(sub, a.clone(), keep)
}
