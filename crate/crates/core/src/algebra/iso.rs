//! Isomorphism testing and canonical forms.
//!
//! The canonical key of an algebra is the lexicographically least
//! serialization of its tables (and order) over all carrier permutations,
//! with invariant-based pruning: only permutations that respect per-element
//! invariant classes (idempotency, degree and order profiles, constant
//! status) are considered. Two algebras are isomorphic iff their keys agree.

use super::{tuples, FiniteAlgebra, Morphism};
use crate::error::{Error, Result};

const PERM_BUDGET: usize = 2_000_000;

/// Permutation-invariant profile of one element; used to cut the search.
fn invariants(a: &FiniteAlgebra) -> Vec<Vec<Vec<i64>>> {
    let sig = a.signature();
    let nsorts = sig.sorts().len();
    let mut inv: Vec<Vec<Vec<i64>>> =
        (0..nsorts).map(|s| vec![Vec::new(); a.size(s)]).collect();
    for s in 0..nsorts {
        for x in 0..a.size(s) {
            let v = &mut inv[s][x];
            for (o, decl) in sig.ops().iter().enumerate() {
                // idempotency under binary single-sorted ops
                if decl.args == [s, s] && decl.result == s {
                    v.push((a.tuple_valid(o, &[x, x]) && a.apply(o, &[x, x]) == x) as i64);
                }
                // constant hits
                if decl.args.is_empty() && decl.result == s {
                    v.push((a.apply(o, &[]) == x) as i64);
                }
                // in-degree: tuples mapping onto x
                if decl.result == s {
                    let dims: Vec<usize> = decl.args.iter().map(|&t| a.size(t)).collect();
                    let mut deg = 0;
                    for t in tuples(&dims) {
                        if a.tuple_valid(o, &t) && a.apply(o, &t) == x {
                            deg += 1;
                        }
                    }
                    v.push(deg);
                }
                // valid-tuple participation per argument position
                for (k, &asort) in decl.args.iter().enumerate() {
                    if asort == s {
                        let dims: Vec<usize> = decl.args.iter().map(|&t| a.size(t)).collect();
                        let mut cnt = 0;
                        for t in tuples(&dims) {
                            if t[k] == x && a.tuple_valid(o, &t) {
                                cnt += 1;
                            }
                        }
                        v.push(cnt);
                    }
                }
            }
            if a.is_ordered() {
                v.push((0..a.size(s)).filter(|&y| a.leq(s, y, x)).count() as i64);
                v.push((0..a.size(s)).filter(|&y| a.leq(s, x, y)).count() as i64);
            }
        }
    }
    inv
}

fn serialize(a: &FiniteAlgebra, inv_perm: &[Vec<usize>]) -> Vec<usize> {
    let sig = a.signature();
    let mut out = Vec::new();
    for (o, decl) in sig.ops().iter().enumerate() {
        let dims: Vec<usize> = decl.args.iter().map(|&s| a.size(s)).collect();
        // forward perms: position of old index in the new ordering
        for t in tuples(&dims) {
            let old: Vec<usize> =
                t.iter().enumerate().map(|(k, &i)| inv_perm[decl.args[k]][i]).collect();
            if a.tuple_valid(o, &old) {
                let r = a.apply(o, &old);
                // new index of r
                let new_r = inv_perm[decl.result].iter().position(|&x| x == r).unwrap();
                out.push(new_r + 1);
            } else {
                out.push(0);
            }
        }
    }
    if a.is_ordered() {
        for s in 0..sig.sorts().len() {
            for i in 0..a.size(s) {
                for j in 0..a.size(s) {
                    out.push(a.leq(s, inv_perm[s][i], inv_perm[s][j]) as usize);
                }
            }
        }
    }
    out
}

// all permutations of 0..n grouped so that positions with equal class labels
// only exchange among themselves
// Permutations `inv_perm` (new position -> old element) where the element
// placed at position `pos` belongs to the class required there. Required
// classes are the sorted invariant vectors, so the layout is the same for
// any relabeling of the same algebra.
fn class_respecting_perms(classes: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let mut required = classes.to_vec();
    required.sort();
    fn rec(
        classes: &[Vec<i64>],
        required: &[Vec<i64>],
        used: &mut Vec<bool>,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let n = classes.len();
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let pos = cur.len();
        for cand in 0..n {
            if !used[cand] && classes[cand] == required[pos] {
                used[cand] = true;
                cur.push(cand);
                rec(classes, required, used, cur, out);
                cur.pop();
                used[cand] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(
        classes,
        &required,
        &mut vec![false; classes.len()],
        &mut Vec::with_capacity(classes.len()),
        &mut out,
    );
    out
}

/// Canonical serialization of an algebra; equal keys characterize
/// isomorphism (order-isomorphism for ordered algebras).
pub fn canonical_key(a: &FiniteAlgebra) -> Result<Vec<usize>> {
    let inv = invariants(a);
    let nsorts = a.signature().sorts().len();
    let mut per_sort: Vec<Vec<Vec<usize>>> = Vec::with_capacity(nsorts);
    let mut total: usize = 1;
    for s in 0..nsorts {
        let perms = class_respecting_perms(&inv[s]);
        total = total.saturating_mul(perms.len().max(1));
        if total > PERM_BUDGET {
            return Err(Error::Budget(format!(
                "canonical form would examine more than {PERM_BUDGET} permutations"
            )));
        }
        per_sort.push(perms);
    }
    let mut best: Option<Vec<usize>> = None;
    let mut choice = vec![0usize; nsorts];
    loop {
        let inv_perm: Vec<Vec<usize>> =
            (0..nsorts).map(|s| per_sort[s][choice[s]].clone()).collect();
        let ser = serialize(a, &inv_perm);
        if best.as_ref().map_or(true, |b| ser < *b) {
            best = Some(ser);
        }
        // advance the mixed-radix counter
        let mut k = nsorts;
        loop {
            if k == 0 {
                let mut key = a.sizes();
                key.extend(best.unwrap());
                return Ok(key);
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < per_sort[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
}

/// Find an isomorphism (order-isomorphism when ordered): backtracking over
/// class-respecting bijections with incremental table checks.
pub fn isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Morphism> {
    if a.signature() != b.signature()
        || a.is_ordered() != b.is_ordered()
        || a.sizes() != b.sizes()
    {
        return None;
    }
    let inv_a = invariants(a);
    let inv_b = invariants(b);
    // invariant multisets must agree
    for s in 0..inv_a.len() {
        let mut xa = inv_a[s].clone();
        let mut xb = inv_b[s].clone();
        xa.sort();
        xb.sort();
        if xa != xb {
            return None;
        }
    }
    let nsorts = a.signature().sorts().len();
    let mut slots = Vec::new();
    for s in 0..nsorts {
        for i in 0..a.size(s) {
            slots.push((s, i));
        }
    }
    let mut maps: Vec<Vec<Option<usize>>> = (0..nsorts).map(|s| vec![None; a.size(s)]).collect();
    let mut used: Vec<Vec<bool>> = (0..nsorts).map(|s| vec![false; b.size(s)]).collect();

    fn ok_so_far(
        a: &FiniteAlgebra,
        b: &FiniteAlgebra,
        maps: &[Vec<Option<usize>>],
        sort: usize,
        elem: usize,
    ) -> bool {
        let sig = a.signature();
        for (o, decl) in sig.ops().iter().enumerate() {
            if !decl.args.contains(&sort) && decl.result != sort {
                continue;
            }
            let dims: Vec<usize> = decl.args.iter().map(|&s| a.size(s)).collect();
            'tuple: for t in tuples(&dims) {
                let touches = decl.args.iter().zip(&t).any(|(&s, &i)| s == sort && i == elem)
                    || (decl.result == sort
                        && a.tuple_valid(o, &t)
                        && a.apply(o, &t) == elem);
                if !touches {
                    continue;
                }
                let mut image = Vec::with_capacity(t.len());
                for (k, &i) in t.iter().enumerate() {
                    match maps[decl.args[k]][i] {
                        Some(j) => image.push(j),
                        None => continue 'tuple,
                    }
                }
                let va = a.tuple_valid(o, &t);
                let vb = b.tuple_valid(o, &image);
                if va != vb {
                    return false;
                }
                if !va {
                    continue;
                }
                match maps[decl.result][a.apply(o, &t)] {
                    Some(r) if b.apply(o, &image) != r => return false,
                    _ => {}
                }
            }
        }
        if a.is_ordered() {
            let m = maps[sort][elem].unwrap();
            for x in 0..a.size(sort) {
                if let Some(mx) = maps[sort][x] {
                    if a.leq(sort, x, elem) != b.leq(sort, mx, m)
                        || a.leq(sort, elem, x) != b.leq(sort, m, mx)
                    {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn rec(
        a: &FiniteAlgebra,
        b: &FiniteAlgebra,
        inv_a: &[Vec<Vec<i64>>],
        inv_b: &[Vec<Vec<i64>>],
        slots: &[(usize, usize)],
        k: usize,
        maps: &mut Vec<Vec<Option<usize>>>,
        used: &mut Vec<Vec<bool>>,
    ) -> bool {
        if k == slots.len() {
            return true;
        }
        let (s, i) = slots[k];
        for v in 0..b.size(s) {
            if used[s][v] || inv_a[s][i] != inv_b[s][v] {
                continue;
            }
            maps[s][i] = Some(v);
            used[s][v] = true;
            if ok_so_far(a, b, maps, s, i)
                && rec(a, b, inv_a, inv_b, slots, k + 1, maps, used)
            {
                return true;
            }
            maps[s][i] = None;
            used[s][v] = false;
        }
        false
    }

    if rec(a, b, &inv_a, &inv_b, &slots, 0, &mut maps, &mut used) {
        let maps: Vec<Vec<usize>> =
            maps.iter().map(|m| m.iter().map(|v| v.unwrap()).collect()).collect();
        Some(Morphism::new(a.clone(), b.clone(), maps).expect("verified isomorphism"))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn relabeled_z2_is_isomorphic() {
        let z2 = samples::z2();
        let other = samples::monoid_from_table(&["e", "x"], &[["e", "x"], ["x", "e"]]);
        let iso = isomorphic(&z2, &other).expect("relabeling");
        assert!(iso.is_injective() && iso.is_surjective());
        assert_eq!(canonical_key(&z2).unwrap(), canonical_key(&other).unwrap());
    }

    #[test]
    fn z2_and_u1_differ() {
        // idempotent counts differ: Z2 has one, U1 has two
        assert!(isomorphic(&samples::z2(), &samples::u1()).is_none());
    }

    #[test]
    fn c3_and_z3_differ() {
        assert!(isomorphic(&samples::c3(), &samples::z3()).is_none());
    }

    #[test]
    fn ordered_iso_respects_order() {
        let up = samples::ordered_u1(true);
        let down = samples::ordered_u1(false);
        assert!(isomorphic(&up, &up.clone()).is_some());
        assert!(isomorphic(&up, &down).is_none());
        assert_ne!(canonical_key(&up).unwrap(), canonical_key(&down).unwrap());
    }
}
