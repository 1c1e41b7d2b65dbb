//! Congruences: operation-compatible partitions, their closure, lattice
//! enumeration and quotient algebras.

use super::{tuples, FiniteAlgebra, Morphism, OpTable, Poset, DEFAULT_SIZE_CAP};
use crate::error::{Error, Result};

/// A per-sort partition of an algebra's carrier. Class ids are normalized
/// by first occurrence, so equal partitions compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    class_of: Vec<Vec<usize>>,
}

impl Congruence {
    pub fn diagonal(a: &FiniteAlgebra) -> Self {
        Congruence { class_of: a.sizes().iter().map(|&n| (0..n).collect()).collect() }
    }

    pub fn full(a: &FiniteAlgebra) -> Self {
        Congruence { class_of: a.sizes().iter().map(|&n| vec![0; n]).collect() }
    }

    fn normalize(mut class_of: Vec<Vec<usize>>) -> Self {
        for m in class_of.iter_mut() {
            let mut relabel: Vec<Option<usize>> = vec![None; m.len()];
            let mut next = 0;
            for v in m.iter_mut() {
                let r = relabel[*v].unwrap_or_else(|| {
                    let r = next;
                    relabel[*v] = Some(r);
                    next += 1;
                    r
                });
                *v = r;
            }
        }
        Congruence { class_of }
    }

    pub fn class_of(&self, sort: usize, elem: usize) -> usize {
        self.class_of[sort][elem]
    }

    pub fn related(&self, sort: usize, a: usize, b: usize) -> bool {
        self.class_of[sort][a] == self.class_of[sort][b]
    }

    pub fn num_classes(&self, sort: usize) -> usize {
        self.class_of[sort].iter().copied().max().map_or(0, |m| m + 1)
    }

    /// Blocks of one sort, each sorted ascending, ordered by least element.
    pub fn blocks(&self, sort: usize) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.num_classes(sort)];
        for (i, &c) in self.class_of[sort].iter().enumerate() {
            blocks[c].push(i);
        }
        blocks
    }

    pub fn is_diagonal(&self) -> bool {
        self.class_of.iter().all(|m| m.iter().enumerate().all(|(i, &c)| i == c))
    }

    /// `self` refines `other`: every class of `self` sits inside a class of `other`.
    pub fn refines(&self, other: &Congruence) -> bool {
        self.class_of.iter().zip(&other.class_of).all(|(a, b)| {
            (0..a.len()).all(|x| (0..a.len()).all(|y| a[x] != a[y] || b[x] == b[y]))
        })
    }

    /// Compatibility with every operation: componentwise-related valid
    /// tuples must have related results.
    pub fn is_congruence(&self, a: &FiniteAlgebra) -> bool {
        let sig = a.signature();
        for (o, decl) in sig.ops().iter().enumerate() {
            let dims: Vec<usize> = decl.args.iter().map(|&s| a.size(s)).collect();
            let all: Vec<Vec<usize>> = tuples(&dims).collect();
            for t in &all {
                if !a.tuple_valid(o, t) {
                    continue;
                }
                for u in &all {
                    if !a.tuple_valid(o, u) {
                        continue;
                    }
                    let related =
                        t.iter().zip(u).enumerate().all(|(k, (&x, &y))| {
                            self.related(decl.args[k], x, y)
                        });
                    if related && !self.related(decl.result, a.apply(o, t), a.apply(o, u)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }
}

/// Least congruence containing the given `(sort, a, b)` pairs: union-find
/// seeded with the pairs, then operation propagation to a fixpoint.
pub fn congruence_closure(a: &FiniteAlgebra, pairs: &[(usize, usize, usize)]) -> Congruence {
    let sig = a.signature().clone();
    let mut ufs: Vec<UnionFind> = a.sizes().iter().map(|&n| UnionFind::new(n)).collect();
    for &(s, x, y) in pairs {
        ufs[s].union(x, y);
    }
    loop {
        let mut changed = false;
        for (o, decl) in sig.ops().iter().enumerate() {
            let dims: Vec<usize> = decl.args.iter().map(|&s| a.size(s)).collect();
            let all: Vec<Vec<usize>> = tuples(&dims).collect();
            for t in &all {
                if !a.tuple_valid(o, t) {
                    continue;
                }
                for u in &all {
                    if !a.tuple_valid(o, u) {
                        continue;
                    }
                    let related = t.iter().zip(u).enumerate().all(|(k, (&x, &y))| {
                        ufs[decl.args[k]].find(x) == ufs[decl.args[k]].find(y)
                    });
                    if related && ufs[decl.result].union(a.apply(o, t), a.apply(o, u)) {
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let class_of: Vec<Vec<usize>> = ufs
        .iter_mut()
        .map(|uf| (0..uf.parent.len()).map(|i| uf.find(i)).collect())
        .collect();
    Congruence::normalize(class_of)
}

/// Join in the congruence lattice.
pub fn congruence_join(a: &FiniteAlgebra, x: &Congruence, y: &Congruence) -> Congruence {
    let mut pairs = Vec::new();
    for (s, m) in x.class_of.iter().enumerate() {
        for i in 0..m.len() {
            for j in (i + 1)..m.len() {
                if x.related(s, i, j) || y.related(s, i, j) {
                    pairs.push((s, i, j));
                }
            }
        }
    }
    congruence_closure(a, &pairs)
}

pub fn enumerate_congruences(a: &FiniteAlgebra) -> Result<Vec<Congruence>> {
    enumerate_congruences_capped(a, DEFAULT_SIZE_CAP)
}

/// All congruences of `a`: principal congruences closed under join, which
/// reaches the whole lattice. Sorted deterministically; refuses carriers
/// above `cap`.
pub fn enumerate_congruences_capped(a: &FiniteAlgebra, cap: usize) -> Result<Vec<Congruence>> {
    if a.total_size() > cap {
        return Err(Error::SizeCap { size: a.total_size(), cap });
    }
    let mut found = std::collections::BTreeSet::new();
    found.insert(Congruence::diagonal(a));
    let mut principals = Vec::new();
    for (s, &n) in a.sizes().iter().enumerate() {
        for i in 0..n {
            for j in (i + 1)..n {
                let c = congruence_closure(a, &[(s, i, j)]);
                if found.insert(c.clone()) {
                    principals.push(c);
                }
            }
        }
    }
    let mut frontier: Vec<Congruence> = found.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut fresh = Vec::new();
        for c in &frontier {
            for p in &principals {
                let j = congruence_join(a, c, p);
                if found.insert(j.clone()) {
                    fresh.push(j);
                }
            }
        }
        frontier = fresh;
    }
    Ok(found.into_iter().collect())
}

/// Quotient of `a` by a congruence: block carrier, representative tables,
/// and for ordered algebras the least partial order generated by block
/// images of `<=` (rejected if that preorder is not antisymmetric).
pub fn quotient(a: &FiniteAlgebra, theta: &Congruence) -> Result<(FiniteAlgebra, Morphism)> {
    if theta.class_of.len() != a.sizes().len()
        || theta.class_of.iter().zip(a.sizes()).any(|(m, n)| m.len() != n)
    {
        return Err(Error::NotACongruence("partition shape does not match carrier".into()));
    }
    if !theta.is_congruence(a) {
        return Err(Error::NotACongruence("partition is not operation-compatible".into()));
    }
    let sig = a.signature().clone();
    let nsorts = sig.sorts().len();
    let blocks: Vec<Vec<Vec<usize>>> = (0..nsorts).map(|s| theta.blocks(s)).collect();
    let carriers: Vec<Vec<String>> = (0..nsorts)
        .map(|s| {
            blocks[s]
                .iter()
                .map(|b| format!("[{}]", a.element_name(s, b[0])))
                .collect()
        })
        .collect();
    let mut tables = Vec::new();
    for (o, decl) in sig.ops().iter().enumerate() {
        let dims: Vec<usize> = decl.args.iter().map(|&s| blocks[s].len()).collect();
        let guard = sig.guard_of(o);
        let mut vals = Vec::with_capacity(dims.iter().product::<usize>().max(1));
        // defer guard validity: entries are computed from representatives
        // and re-normalized below once guard tables exist in the quotient
        for t in tuples(&dims) {
            match guard {
                None => {
                    let reps: Vec<usize> =
                        t.iter().enumerate().map(|(k, &c)| blocks[decl.args[k]][c][0]).collect();
                    vals.push(theta.class_of(decl.result, a.apply(o, &reps)));
                }
                Some(_) => {
                    // search a valid representative tuple; block-level
                    // validity is judged afterwards against quotient tables
                    let mut choice = None;
                    'search: for reps in rep_tuples(&blocks, &decl.args, &t) {
                        if a.tuple_valid(o, &reps) {
                            choice = Some(theta.class_of(decl.result, a.apply(o, &reps)));
                            break 'search;
                        }
                    }
                    vals.push(choice.unwrap_or(usize::MAX));
                }
            }
        }
        tables.push(OpTable::new(dims, vals));
    }
    // fix up guarded entries now that guard op tables are present
    let probe = FiniteAlgebra::from_parts(sig.clone(), carriers.clone(), tables.clone(), None);
    for (o, decl) in sig.ops().iter().enumerate() {
        if sig.guard_of(o).is_none() {
            continue;
        }
        let dims: Vec<usize> = decl.args.iter().map(|&s| blocks[s].len()).collect();
        let mut vals = Vec::with_capacity(dims.iter().product::<usize>().max(1));
        for t in tuples(&dims) {
            let current = probe.apply(o, &t);
            if probe.tuple_valid(o, &t) {
                if current == usize::MAX {
                    return Err(Error::QuotientGuardUndefined(decl.name.clone()));
                }
                vals.push(current);
            } else {
                vals.push(t[0]);
            }
        }
        tables[o] = OpTable::new(dims, vals);
    }

    let order = if a.is_ordered() {
        let mut posets = Vec::with_capacity(nsorts);
        for s in 0..nsorts {
            let mut pairs = Vec::new();
            for x in 0..a.size(s) {
                for y in 0..a.size(s) {
                    if a.leq(s, x, y) {
                        pairs.push((theta.class_of(s, x), theta.class_of(s, y)));
                    }
                }
            }
            match Poset::from_pairs(blocks[s].len(), &pairs) {
                Ok(p) => posets.push(p),
                Err((x, y)) => {
                    return Err(Error::QuotientNotAntisymmetric(
                        carriers[s][x].clone(),
                        carriers[s][y].clone(),
                    ))
                }
            }
        }
        Some(posets)
    } else {
        None
    };
    let q = FiniteAlgebra::from_parts(sig, carriers, tables, order);
    let maps: Vec<Vec<usize>> = theta.class_of.clone();
    let e = Morphism::new(a.clone(), q.clone(), maps)?;
    Ok((q, e))
}

// all representative tuples of a block tuple
fn rep_tuples(
    blocks: &[Vec<Vec<usize>>],
    arg_sorts: &[usize],
    t: &[usize],
) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for (k, &c) in t.iter().enumerate() {
        let mut next = Vec::new();
        for prefix in &out {
            for &r in &blocks[arg_sorts[k]][c] {
                let mut p = prefix.clone();
                p.push(r);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::isomorphic;
    use crate::samples;

    #[test]
    fn empty_generation_gives_diagonal() {
        let c3 = samples::c3();
        let c = congruence_closure(&c3, &[]);
        assert!(c.is_diagonal());
    }

    #[test]
    fn merging_one_and_asquare_stops_there() {
        // 1 ~ a^2 propagates to nothing new: {1, a^2} {a}
        let c3 = samples::c3();
        let one = c3.element_index(0, "1").unwrap();
        let a2 = c3.element_index(0, "a2").unwrap();
        let c = congruence_closure(&c3, &[(0, one, a2)]);
        assert_eq!(c.num_classes(0), 2);
        assert!(c.related(0, one, a2));
    }

    #[test]
    fn merging_one_and_a_collapses_everything() {
        // a ~ 1 forces a^2 ~ a, then everything
        let c3 = samples::c3();
        let one = c3.element_index(0, "1").unwrap();
        let a = c3.element_index(0, "a").unwrap();
        let c = congruence_closure(&c3, &[(0, one, a)]);
        assert_eq!(c.num_classes(0), 1);
    }

    #[test]
    fn z2_has_two_congruences() {
        let z2 = samples::z2();
        let cs = enumerate_congruences(&z2).unwrap();
        assert_eq!(cs.len(), 2);
    }

    #[test]
    fn c3_has_four_congruences() {
        // exhaustive over the 5 partitions of 3 elements: diagonal,
        // {1,a2}{a}, {1}{a,a2} and full survive; {1,a}{a2} does not
        let c3 = samples::c3();
        let cs = enumerate_congruences(&c3).unwrap();
        assert_eq!(cs.len(), 4);
        assert!(cs.contains(&Congruence::diagonal(&c3)));
        assert!(cs.contains(&Congruence::full(&c3)));
    }

    #[test]
    fn trivial_algebra_has_one_congruence() {
        let t = samples::trivial_monoid();
        assert_eq!(enumerate_congruences(&t).unwrap().len(), 1);
    }

    #[test]
    fn congruence_list_matches_partition_brute_force() {
        // independent oracle: filter all partitions of the carrier by
        // compatibility, compare against the lattice enumeration
        let c3 = samples::c3();
        let mut count = 0;
        for p in all_partitions(3) {
            let c = Congruence::normalize(vec![p]);
            if c.is_congruence(&c3) {
                count += 1;
            }
        }
        assert_eq!(count, enumerate_congruences(&c3).unwrap().len());
    }

    fn all_partitions(n: usize) -> Vec<Vec<usize>> {
        // restricted growth strings
        let mut out = Vec::new();
        let mut cur = vec![0; n];
        fn rec(cur: &mut Vec<usize>, k: usize, max: usize, out: &mut Vec<Vec<usize>>) {
            if k == cur.len() {
                out.push(cur.clone());
                return;
            }
            for v in 0..=max.min(k) {
                cur[k] = v;
                rec(cur, k + 1, max.max(v + 1), out);
            }
        }
        rec(&mut cur, 0, 0, &mut out);
        out
    }

    #[test]
    fn c3_quotients_are_z2_and_u1() {
        let c3 = samples::c3();
        let one = c3.element_index(0, "1").unwrap();
        let a = c3.element_index(0, "a").unwrap();
        let a2 = c3.element_index(0, "a2").unwrap();

        let merge_units = congruence_closure(&c3, &[(0, one, a2)]);
        let (q1, e1) = quotient(&c3, &merge_units).unwrap();
        assert!(isomorphic(&q1, &samples::z2()).is_some());
        assert!(e1.is_surjective());

        let merge_powers = congruence_closure(&c3, &[(0, a, a2)]);
        let (q2, _) = quotient(&c3, &merge_powers).unwrap();
        assert!(isomorphic(&q2, &samples::u1()).is_some());
    }

    #[test]
    fn quotient_by_diagonal_is_isomorphic() {
        let c3 = samples::c3();
        let (q, _) = quotient(&c3, &Congruence::diagonal(&c3)).unwrap();
        assert!(isomorphic(&q, &c3).is_some());
    }

    #[test]
    fn lattice_is_join_closed_and_bounded() {
        let c3 = samples::c3();
        let cs = enumerate_congruences(&c3).unwrap();
        assert!(cs.contains(&Congruence::diagonal(&c3)));
        assert!(cs.contains(&Congruence::full(&c3)));
        for x in &cs {
            for y in &cs {
                assert!(cs.contains(&congruence_join(&c3, x, y)));
            }
        }
    }
}
