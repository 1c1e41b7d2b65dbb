//! Finite many-sorted algebras, optionally ordered.
//!
//! A [`Signature`] lists sorts and operations; a [`FiniteAlgebra`] carries
//! named elements per sort, total operation tables and, optionally, a
//! partial order per sort under which every operation is monotone.
//! Elements are addressed by index everywhere after validation; names only
//! matter at the text-format boundary.
//!
//! Operations may carry a *guard*: a binary operation `f` guarded by unary
//! operations `(t, s)` is only meaningful on pairs `(x, y)` with
//! `t(x) = s(y)`. This encodes the partial composition of finite categories
//! while keeping tables total: entries at non-composable pairs are
//! normalized to the first argument and ignored by every structural check.

mod congruence;
mod format;
mod iso;
mod morphism;
mod construct;

pub use congruence::{
    congruence_closure, congruence_join, enumerate_congruences, enumerate_congruences_capped,
    quotient, Congruence,
};
pub use construct::{product, subalgebra_generated};
pub use format::{parse_algebra, print_algebra};
pub use iso::{canonical_key, isomorphic};
pub use morphism::{
    check_homomorphism, enumerate_morphisms, find_section, hom_theorem_factor,
    image_factorization, FactorResult, HomViolation, Morphism,
};

use crate::error::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// Default cap on total carrier size for exhaustive enumeration.
pub const DEFAULT_SIZE_CAP: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpDecl {
    pub name: String,
    /// argument sorts, by index into the signature's sort list
    pub args: Vec<usize>,
    pub result: usize,
}

impl OpDecl {
    pub fn new(name: &str, args: Vec<usize>, result: usize) -> Self {
        OpDecl { name: name.to_string(), args, result }
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }
}

/// Composability guard for a binary operation: `(x, y)` is valid iff
/// `left(x) = right(y)` where `left` and `right` are unary operations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Guard {
    pub left: usize,
    pub right: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    sorts: Vec<String>,
    ops: Vec<OpDecl>,
    /// designated associative binary operations, sorted op indices
    assoc: Vec<usize>,
    /// sparse per-op guards, sorted by op index
    guards: Vec<(usize, Guard)>,
}

impl Signature {
    pub fn new(sorts: Vec<String>, ops: Vec<OpDecl>) -> Result<Self> {
        Signature::with_features(sorts, ops, Vec::new(), Vec::new())
    }

    pub fn with_features(
        sorts: Vec<String>,
        ops: Vec<OpDecl>,
        assoc_ops: Vec<String>,
        guards: Vec<(String, String, String)>,
    ) -> Result<Self> {
        for (i, s) in sorts.iter().enumerate() {
            if sorts[..i].contains(s) {
                return Err(Error::DuplicateName(s.clone()));
            }
        }
        for (i, op) in ops.iter().enumerate() {
            if ops[..i].iter().any(|o| o.name == op.name) {
                return Err(Error::DuplicateName(op.name.clone()));
            }
            for &a in op.args.iter().chain([&op.result]) {
                if a >= sorts.len() {
                    return Err(Error::Signature(format!(
                        "operation `{}` refers to a missing sort",
                        op.name
                    )));
                }
            }
        }
        let mut sig = Signature { sorts, ops, assoc: Vec::new(), guards: Vec::new() };
        for name in assoc_ops {
            let i = sig.op_index(&name)?;
            let d = &sig.ops[i];
            if d.args.len() != 2 || d.args[0] != d.args[1] || d.args[0] != d.result {
                return Err(Error::Signature(format!(
                    "associative operation `{name}` must be binary with both arguments \
                     and result in one sort"
                )));
            }
            if !sig.assoc.contains(&i) {
                sig.assoc.push(i);
            }
        }
        sig.assoc.sort_unstable();
        for (op, left, right) in guards {
            let i = sig.op_index(&op)?;
            let l = sig.op_index(&left)?;
            let r = sig.op_index(&right)?;
            let d = &sig.ops[i];
            let (ld, rd) = (&sig.ops[l], &sig.ops[r]);
            let shape_ok = d.args.len() == 2
                && d.args[0] == d.args[1]
                && d.args[0] == d.result
                && ld.args == [d.args[0]]
                && rd.args == [d.args[1]]
                && ld.result == rd.result;
            if !shape_ok {
                return Err(Error::Signature(format!(
                    "guard on `{op}` must pair unary operations on the operation's \
                     argument sort with a common result sort"
                )));
            }
            sig.guards.push((i, Guard { left: l, right: r }));
        }
        sig.guards.sort_unstable_by_key(|g| g.0);
        Ok(sig)
    }

    pub fn sorts(&self) -> &[String] {
        &self.sorts
    }

    pub fn ops(&self) -> &[OpDecl] {
        &self.ops
    }

    pub fn sort_index(&self, name: &str) -> Result<usize> {
        self.sorts
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownSort(name.to_string()))
    }

    pub fn op_index(&self, name: &str) -> Result<usize> {
        self.ops
            .iter()
            .position(|o| o.name == name)
            .ok_or_else(|| Error::UnknownOp(name.to_string()))
    }

    pub fn is_assoc(&self, op: usize) -> bool {
        self.assoc.contains(&op)
    }

    pub fn assoc_ops(&self) -> &[usize] {
        &self.assoc
    }

    /// The designated associative operation on a sort, if there is exactly one.
    pub fn assoc_op_for_sort(&self, sort: usize) -> Option<usize> {
        let mut found = None;
        for &i in &self.assoc {
            if self.ops[i].result == sort {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn guard_of(&self, op: usize) -> Option<Guard> {
        self.guards
            .binary_search_by_key(&op, |g| g.0)
            .ok()
            .map(|i| self.guards[i].1)
    }

    pub fn guards(&self) -> &[(usize, Guard)] {
        &self.guards
    }

    /// The unique nullary operation of the signature, if any.
    pub fn unit_op(&self) -> Option<usize> {
        let mut found = None;
        for (i, op) in self.ops.iter().enumerate() {
            if op.args.is_empty() {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }
}

/// Total lookup table for one operation; `vals` is row-major over argument
/// tuples, entries index into the result-sort carrier.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OpTable {
    dims: Vec<usize>,
    vals: Vec<usize>,
}

impl OpTable {
    pub fn new(dims: Vec<usize>, vals: Vec<usize>) -> Self {
        debug_assert_eq!(dims.iter().product::<usize>().max(1), vals.len());
        OpTable { dims, vals }
    }

    pub fn flat_index(&self, args: &[usize]) -> usize {
        let mut ix = 0;
        for (k, &a) in args.iter().enumerate() {
            ix = ix * self.dims[k] + a;
        }
        ix
    }

    pub fn get(&self, args: &[usize]) -> usize {
        self.vals[self.flat_index(args)]
    }

    pub fn values(&self) -> &[usize] {
        &self.vals
    }
}

/// Iterate over all argument tuples of the given dimensions, row-major.
pub fn tuples(dims: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    let total: usize = dims.iter().product::<usize>().max(1);
    let empty_sort = dims.contains(&0);
    (0..if empty_sort { 0 } else { total }).map(move |mut i| {
        let mut t = vec![0; dims.len()];
        for k in (0..dims.len()).rev() {
            t[k] = i % dims[k];
            i /= dims[k];
        }
        t
    })
}

/// Finite partial order on `{0, .., n-1}`, stored as a reflexive
/// transitive `leq` matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poset {
    n: usize,
    leq: Vec<bool>,
}

impl Poset {
    pub fn discrete(n: usize) -> Self {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        Poset { n, leq }
    }

    /// Reflexive-transitive closure of the given pairs. Fails if the closure
    /// is not antisymmetric; the witness is a pair on a cycle.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> std::result::Result<Self, (usize, usize)> {
        let mut p = Poset::discrete(n);
        for &(a, b) in pairs {
            p.leq[a * n + b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if p.leq[i * n + k] {
                    for j in 0..n {
                        if p.leq[k * n + j] {
                            p.leq[i * n + j] = true;
                        }
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..i {
                if p.leq[i * n + j] && p.leq[j * n + i] {
                    return Err((j, i));
                }
            }
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.n + b]
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || !self.leq(i, j)))
    }

    /// Covering pairs `(a, b)`: `a < b` with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            'next: for b in 0..self.n {
                if a == b || !self.leq(a, b) {
                    continue;
                }
                for c in 0..self.n {
                    if c != a && c != b && self.leq(a, c) && self.leq(c, b) {
                        continue 'next;
                    }
                }
                out.push((a, b));
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    EmptySort { sort: String },
    NonTotal { op: String, args: Vec<String> },
    GuardConflict { op: String, args: Vec<String> },
    NotMonotone { op: String, arg_pos: usize, lo: Vec<String>, hi: Vec<String> },
    OrderCycle { sort: String, a: String, b: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::EmptySort { sort } => write!(f, "sort `{sort}` has no elements"),
            Violation::NonTotal { op, args } => {
                write!(f, "totality violation: `{op}` undefined at ({})", args.join(", "))
            }
            Violation::GuardConflict { op, args } => write!(
                f,
                "`{op}` has an entry at the non-composable tuple ({}) that is not \
                 the first argument",
                args.join(", ")
            ),
            Violation::NotMonotone { op, arg_pos, lo, hi } => write!(
                f,
                "monotonicity violation: `{op}` in argument {arg_pos} on ({}) vs ({})",
                lo.join(", "),
                hi.join(", ")
            ),
            Violation::OrderCycle { sort, a, b } => write!(
                f,
                "order on `{sort}` is not antisymmetric: `{a}` and `{b}` lie on a cycle"
            ),
        }
    }
}

/// Everything that went wrong while validating one algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}

impl std::error::Error for ValidationReport {}

/// A validated finite algebra. Immutable after construction; all operations
/// on it are pure, so values can be shared freely across threads.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    sig: Arc<Signature>,
    carriers: Vec<Vec<String>>,
    tables: Vec<OpTable>,
    order: Option<Vec<Poset>>,
}

impl FiniteAlgebra {
    pub fn signature(&self) -> &Arc<Signature> {
        &self.sig
    }

    pub fn size(&self, sort: usize) -> usize {
        self.carriers[sort].len()
    }

    pub fn total_size(&self) -> usize {
        self.carriers.iter().map(|c| c.len()).sum()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.carriers.iter().map(|c| c.len()).collect()
    }

    pub fn elements(&self, sort: usize) -> &[String] {
        &self.carriers[sort]
    }

    pub fn element_name(&self, sort: usize, ix: usize) -> &str {
        &self.carriers[sort][ix]
    }

    pub fn element_index(&self, sort: usize, name: &str) -> Result<usize> {
        self.carriers[sort]
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    /// Look an element up by name across all sorts; errors if the name is
    /// missing or appears in more than one sort.
    pub fn element_by_name(&self, name: &str) -> Result<(usize, usize)> {
        let mut found = None;
        for (s, c) in self.carriers.iter().enumerate() {
            if let Some(i) = c.iter().position(|e| e == name) {
                if found.is_some() {
                    return Err(Error::DuplicateName(name.to_string()));
                }
                found = Some((s, i));
            }
        }
        found.ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn table(&self, op: usize) -> &OpTable {
        &self.tables[op]
    }

    pub fn apply(&self, op: usize, args: &[usize]) -> usize {
        self.tables[op].get(args)
    }

    pub fn is_ordered(&self) -> bool {
        self.order.is_some()
    }

    pub fn order(&self, sort: usize) -> Option<&Poset> {
        self.order.as_ref().map(|o| &o[sort])
    }

    pub fn leq(&self, sort: usize, a: usize, b: usize) -> bool {
        match &self.order {
            Some(o) => o[sort].leq(a, b),
            None => a == b,
        }
    }

    /// Whether an argument tuple is meaningful for the operation (trivially
    /// true for unguarded operations).
    pub fn tuple_valid(&self, op: usize, args: &[usize]) -> bool {
        match self.sig.guard_of(op) {
            None => true,
            Some(g) => self.apply(g.left, &args[..1]) == self.apply(g.right, &args[1..]),
        }
    }

    /// Exhaustive associativity check for a binary single-sorted operation;
    /// guarded operations are checked on composable triples only.
    pub fn is_associative(&self, op: usize) -> bool {
        let decl = &self.sig.ops()[op];
        if decl.args.len() != 2 || decl.args[0] != decl.args[1] || decl.args[0] != decl.result {
            return false;
        }
        let n = self.size(decl.result);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if !self.tuple_valid(op, &[x, y]) || !self.tuple_valid(op, &[y, z]) {
                        continue;
                    }
                    let xy = self.apply(op, &[x, y]);
                    let yz = self.apply(op, &[y, z]);
                    if !self.tuple_valid(op, &[xy, z]) || !self.tuple_valid(op, &[x, yz]) {
                        continue;
                    }
                    if self.apply(op, &[xy, z]) != self.apply(op, &[x, yz]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Rebuild with the same data but a different (compatible) signature.
    /// Used to take reducts; `op_map[i]` is the source op for new op `i`.
    pub(crate) fn reduct(&self, sig: Arc<Signature>, op_map: &[usize]) -> FiniteAlgebra {
        FiniteAlgebra {
            sig,
            carriers: self.carriers.clone(),
            tables: op_map.iter().map(|&i| self.tables[i].clone()).collect(),
            order: self.order.clone(),
        }
    }

    pub(crate) fn from_parts(
        sig: Arc<Signature>,
        carriers: Vec<Vec<String>>,
        tables: Vec<OpTable>,
        order: Option<Vec<Poset>>,
    ) -> FiniteAlgebra {
        FiniteAlgebra { sig, carriers, tables, order }
    }
}

/// Staged construction of a [`FiniteAlgebra`]; `build` runs full validation
/// and either returns the algebra or a report listing every violated axiom
/// with a witness tuple.
#[derive(Debug, Clone)]
pub struct AlgebraBuilder {
    sig: Arc<Signature>,
    carriers: Vec<Vec<String>>,
    // entries[op][flat tuple index] = Some(result index)
    entries: Vec<Vec<Option<usize>>>,
    dims: Vec<Vec<usize>>,
    tables_ready: bool,
    ordered: bool,
    order_pairs: Vec<(usize, usize, usize)>,
}

impl AlgebraBuilder {
    pub fn new(sig: Arc<Signature>) -> Self {
        let n = sig.sorts().len();
        let nops = sig.ops().len();
        AlgebraBuilder {
            sig,
            carriers: vec![Vec::new(); n],
            entries: vec![Vec::new(); nops],
            dims: vec![Vec::new(); nops],
            tables_ready: false,
            ordered: false,
            order_pairs: Vec::new(),
        }
    }

    pub fn elements(mut self, sort: &str, names: &[&str]) -> Result<Self> {
        if self.tables_ready {
            return Err(Error::Signature(
                "all elements must be declared before table rows".to_string(),
            ));
        }
        let s = self.sig.sort_index(sort)?;
        for n in names {
            if self.carriers[s].iter().any(|e| e == n) {
                return Err(Error::DuplicateName(n.to_string()));
            }
            self.carriers[s].push(n.to_string());
        }
        Ok(self)
    }

    fn ensure_tables(&mut self) {
        if self.tables_ready {
            return;
        }
        for (i, op) in self.sig.ops().iter().enumerate() {
            let dims: Vec<usize> = op.args.iter().map(|&s| self.carriers[s].len()).collect();
            let total = dims.iter().product::<usize>().max(1);
            self.dims[i] = dims;
            self.entries[i] = vec![None; total];
        }
        self.tables_ready = true;
    }

    /// Set one table row, all by element name.
    pub fn set(mut self, op: &str, args: &[&str], result: &str) -> Result<Self> {
        self.ensure_tables();
        let o = self.sig.op_index(op)?;
        let decl = self.sig.ops()[o].clone();
        if args.len() != decl.arity() {
            return Err(Error::Signature(format!(
                "`{op}` expects {} arguments, got {}",
                decl.arity(),
                args.len()
            )));
        }
        let mut ixs = Vec::with_capacity(args.len());
        for (k, a) in args.iter().enumerate() {
            let s = decl.args[k];
            let i = self.carriers[s]
                .iter()
                .position(|e| e == a)
                .ok_or_else(|| Error::UnknownElement(a.to_string()))?;
            ixs.push(i);
        }
        let r = self.carriers[decl.result]
            .iter()
            .position(|e| e == result)
            .ok_or_else(|| Error::UnknownElement(result.to_string()))?;
        let table = OpTable { dims: self.dims[o].clone(), vals: Vec::new() };
        let flat = table.flat_index(&ixs);
        self.entries[o][flat] = Some(r);
        Ok(self)
    }

    /// Declare the algebra ordered (discretely unless pairs are added).
    pub fn ordered(mut self) -> Self {
        self.ordered = true;
        self
    }

    /// Add a generating pair `a <= b`; names must be unambiguous across sorts.
    pub fn order_pair(mut self, a: &str, b: &str) -> Result<Self> {
        self.ordered = true;
        let (sa, ia) = self.lookup(a)?;
        let (sb, ib) = self.lookup(b)?;
        if sa != sb {
            return Err(Error::Signature(format!("`{a}` and `{b}` live in different sorts")));
        }
        self.order_pairs.push((sa, ia, ib));
        Ok(self)
    }

    fn lookup(&self, name: &str) -> Result<(usize, usize)> {
        let mut found = None;
        for (s, c) in self.carriers.iter().enumerate() {
            if let Some(i) = c.iter().position(|e| e == name) {
                if found.is_some() {
                    return Err(Error::DuplicateName(name.to_string()));
                }
                found = Some((s, i));
            }
        }
        found.ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn build(mut self) -> std::result::Result<FiniteAlgebra, ValidationReport> {
        self.ensure_tables();
        let mut violations = Vec::new();
        for (s, c) in self.carriers.iter().enumerate() {
            if c.is_empty() {
                violations.push(Violation::EmptySort { sort: self.sig.sorts()[s].clone() });
            }
        }
        if !violations.is_empty() {
            return Err(ValidationReport { violations });
        }

        // Assemble candidate tables; guard-invalid entries are normalized to
        // the first argument, a conflicting explicit entry is a violation.
        let mut tables = Vec::with_capacity(self.sig.ops().len());
        let mut order = None;
        if self.ordered {
            let mut posets = Vec::new();
            for (s, c) in self.carriers.iter().enumerate() {
                let pairs: Vec<(usize, usize)> = self
                    .order_pairs
                    .iter()
                    .filter(|p| p.0 == s)
                    .map(|p| (p.1, p.2))
                    .collect();
                match Poset::from_pairs(c.len(), &pairs) {
                    Ok(p) => posets.push(p),
                    Err((a, b)) => {
                        violations.push(Violation::OrderCycle {
                            sort: self.sig.sorts()[s].clone(),
                            a: c[a].clone(),
                            b: c[b].clone(),
                        });
                        posets.push(Poset::discrete(c.len()));
                    }
                }
            }
            order = Some(posets);
        }

        // first pass: need guard ops total before guarded ops can be judged
        let mut raw_tables: Vec<Option<OpTable>> = vec![None; self.sig.ops().len()];
        let sig = self.sig.clone();
        let name_of = |s: usize, i: usize| self.carriers[s][i].clone();
        let mut ordered_ops: Vec<usize> = (0..sig.ops().len()).collect();
        ordered_ops.sort_by_key(|&i| if sig.guard_of(i).is_some() { 1 } else { 0 });
        for &o in &ordered_ops {
            let decl = &sig.ops()[o];
            let dims = self.dims[o].clone();
            let mut vals = vec![0usize; self.entries[o].len()];
            let guard = sig.guard_of(o);
            for (flat, t) in tuples(&dims).enumerate() {
                let valid = match guard {
                    None => true,
                    Some(g) => {
                        let lt = raw_tables[g.left].as_ref();
                        let rt = raw_tables[g.right].as_ref();
                        match (lt, rt) {
                            (Some(lt), Some(rt)) => lt.get(&t[..1]) == rt.get(&t[1..]),
                            // guard op itself invalid; treat all as valid
                            _ => true,
                        }
                    }
                };
                match self.entries[o][flat] {
                    Some(v) => {
                        if valid {
                            vals[flat] = v;
                        } else if v == t[0] {
                            vals[flat] = t[0];
                        } else {
                            violations.push(Violation::GuardConflict {
                                op: decl.name.clone(),
                                args: t
                                    .iter()
                                    .enumerate()
                                    .map(|(k, &i)| name_of(decl.args[k], i))
                                    .collect(),
                            });
                            vals[flat] = t[0];
                        }
                    }
                    None => {
                        if valid {
                            violations.push(Violation::NonTotal {
                                op: decl.name.clone(),
                                args: t
                                    .iter()
                                    .enumerate()
                                    .map(|(k, &i)| name_of(decl.args[k], i))
                                    .collect(),
                            });
                        } else {
                            vals[flat] = t[0];
                        }
                    }
                }
            }
            raw_tables[o] = Some(OpTable { dims, vals });
        }
        if !violations.is_empty() {
            return Err(ValidationReport { violations });
        }
        for t in raw_tables {
            tables.push(t.unwrap());
        }

        let alg = FiniteAlgebra { sig: self.sig.clone(), carriers: self.carriers.clone(), tables, order };

        // monotonicity of every operation in every argument
        if let Some(posets) = &alg.order {
            for (o, decl) in alg.sig.ops().iter().enumerate() {
                let dims: Vec<usize> = decl.args.iter().map(|&s| alg.size(s)).collect();
                for t in tuples(&dims) {
                    if !alg.tuple_valid(o, &t) {
                        continue;
                    }
                    for k in 0..t.len() {
                        let s = decl.args[k];
                        for b in 0..alg.size(s) {
                            if b == t[k] || !posets[s].leq(t[k], b) {
                                continue;
                            }
                            let mut hi = t.clone();
                            hi[k] = b;
                            if !alg.tuple_valid(o, &hi) {
                                continue;
                            }
                            let lo_r = alg.apply(o, &t);
                            let hi_r = alg.apply(o, &hi);
                            if !posets[decl.result].leq(lo_r, hi_r) {
                                violations.push(Violation::NotMonotone {
                                    op: decl.name.clone(),
                                    arg_pos: k,
                                    lo: t
                                        .iter()
                                        .enumerate()
                                        .map(|(j, &i)| alg.element_name(decl.args[j], i).to_string())
                                        .collect(),
                                    hi: hi
                                        .iter()
                                        .enumerate()
                                        .map(|(j, &i)| alg.element_name(decl.args[j], i).to_string())
                                        .collect(),
                                });
                            }
                        }
                    }
                }
            }
        }

        if violations.is_empty() {
            Ok(alg)
        } else {
            Err(ValidationReport { violations })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn two_element_group_table_is_valid() {
        let a = samples::z2();
        assert_eq!(a.total_size(), 2);
        let mul = a.signature().op_index("mul").unwrap();
        let g = a.element_index(0, "g").unwrap();
        assert_eq!(a.apply(mul, &[g, g]), a.element_index(0, "1").unwrap());
    }

    #[test]
    fn missing_entry_is_a_totality_violation() {
        let sig = samples::monoid_signature();
        let report = AlgebraBuilder::new(sig)
            .elements("m", &["1", "g"])
            .unwrap()
            .set("one", &[], "1")
            .unwrap()
            .set("mul", &["1", "1"], "1")
            .unwrap()
            .set("mul", &["1", "g"], "g")
            .unwrap()
            .set("mul", &["g", "1"], "g")
            .unwrap()
            .build()
            .unwrap_err();
        assert!(report.violations.iter().any(|v| matches!(
            v,
            Violation::NonTotal { op, args } if op == "mul" && args == &["g".to_string(), "g".to_string()]
        )));
    }

    #[test]
    fn monotonicity_violation_is_reported_with_witness() {
        // ordered {0 <= 1} with 0*1 = 1 and 1*1 = 0: raising the first
        // argument from 0 to 1 drops the result from 1 to 0
        let sig = Arc::new(
            Signature::new(
                vec!["s".into()],
                vec![OpDecl::new("mul", vec![0, 0], 0)],
            )
            .unwrap(),
        );
        let report = AlgebraBuilder::new(sig)
            .elements("s", &["0", "1"])
            .unwrap()
            .set("mul", &["0", "0"], "0")
            .unwrap()
            .set("mul", &["0", "1"], "1")
            .unwrap()
            .set("mul", &["1", "0"], "0")
            .unwrap()
            .set("mul", &["1", "1"], "0")
            .unwrap()
            .order_pair("0", "1")
            .unwrap()
            .build()
            .unwrap_err();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::NotMonotone { op, .. } if op == "mul")));
    }

    #[test]
    fn empty_sorts_are_rejected() {
        let sig = samples::monoid_signature();
        let report = AlgebraBuilder::new(sig).build().unwrap_err();
        assert!(report
            .violations
            .iter()
            .any(|v| matches!(v, Violation::EmptySort { .. })));
    }

    #[test]
    fn poset_closure_detects_cycles() {
        assert!(Poset::from_pairs(2, &[(0, 1), (1, 0)]).is_err());
        let p = Poset::from_pairs(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(p.leq(0, 2));
        assert_eq!(p.covers(), vec![(0, 1), (1, 2)]);
    }
}
