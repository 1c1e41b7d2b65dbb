//! Exhaustive enumeration of finite algebras of a monad, up to isomorphism.
//!
//! Backtracking over operation tables in row-major order with law-based
//! pruning: the designated associative operation is re-checked
//! incrementally on the triples that touch each new entry, the remaining
//! laws by partial evaluation over all assignments. The first constant is
//! pinned to element 0 (symmetry breaking) and its unit rows are prefilled
//! from the unit laws. Candidates are deduplicated by canonical key and
//! returned in a deterministic order.
//!
//! For ordered bases every surviving table is decorated with all partial
//! orders under which the operations are monotone, again up to
//! (order-)isomorphism.
//!
//! Results can be memoized on disk: one versioned text file per
//! `(spec, size)` pair, invalidated by a version bump and re-certified on
//! load.

use super::{check_t_algebra, MonadSpec, TAlgebra};
use crate::algebra::{canonical_key, tuples, FiniteAlgebra, OpTable, Poset};
use crate::error::{Error, Result};
use crate::term::{Assignment, PiTerm};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::{Arc, Mutex};
use std::time::Instant;

const MEMO_VERSION: &str = "finalg-memo v1";
const UNSET: usize = usize::MAX;

#[derive(Debug, Clone)]
pub struct EnumOptions {
    /// worker threads for the top-level branch split
    pub jobs: usize,
    /// wall-clock deadline for the search
    pub deadline: Option<Instant>,
    /// refuse total carrier sizes above this
    pub cap: usize,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { jobs: 1, deadline: None, cap: 8 }
    }
}

/// All algebras of the spec with total carrier size exactly `size`, up to
/// isomorphism, deterministically ordered.
pub fn enumerate_t_algebras(spec: &Arc<MonadSpec>, size: usize) -> Result<Vec<TAlgebra>> {
    enumerate_with(spec, size, &EnumOptions::default())
}

/// Sizes 1 through `n` concatenated.
pub fn enumerate_t_algebras_up_to(spec: &Arc<MonadSpec>, n: usize) -> Result<Vec<TAlgebra>> {
    let mut out = Vec::new();
    for k in 1..=n {
        out.extend(enumerate_t_algebras(spec, k)?);
    }
    Ok(out)
}

pub fn enumerate_with(
    spec: &Arc<MonadSpec>,
    size: usize,
    options: &EnumOptions,
) -> Result<Vec<TAlgebra>> {
    if size == 0 {
        return Err(Error::Budget("size must be at least 1".into()));
    }
    if size > options.cap {
        return Err(Error::SizeCap { size, cap: options.cap });
    }
    let sig = spec.signature().clone();
    let nsorts = sig.sorts().len();
    let mut found: BTreeMap<Vec<usize>, FiniteAlgebra> = BTreeMap::new();
    for sizes in compositions(size, nsorts) {
        for alg in enumerate_split(spec, &sizes, options)? {
            let key = canonical_key(&alg)?;
            found.entry(key).or_insert(alg);
        }
    }
    found
        .into_values()
        .map(|alg| check_t_algebra(spec, &alg))
        .collect::<Result<Vec<_>>>()
}

// all ways to split `total` into `parts` positive summands, lexicographic
fn compositions(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn rec(total: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 1..=(total - parts + 1) {
            cur.push(first);
            rec(total - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if total >= parts {
        rec(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

// how a law is handled during the search
enum LawMode {
    /// covered by the incremental associativity check
    Assoc,
    /// satisfied by construction (prefilled unit rows)
    Forced,
    /// partial evaluation over all assignments
    Generic(usize),
}

struct Search<'a> {
    spec: &'a Arc<MonadSpec>,
    sizes: Vec<usize>,
    /// tables[op], row-major, UNSET for undecided
    dims: Vec<Vec<usize>>,
    law_modes: Vec<LawMode>,
    op_order: Vec<usize>,
    deadline: Option<Instant>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn table_index(&self, op: usize, args: &[usize]) -> usize {
        let mut ix = 0;
        for (k, &a) in args.iter().enumerate() {
            ix = ix * self.dims[op][k] + a;
        }
        ix
    }

    fn get(&self, tables: &[Vec<usize>], op: usize, args: &[usize]) -> usize {
        tables[op][self.table_index(op, args)]
    }

    // validity under partial tables: guard entries must be decided
    fn validity(&self, tables: &[Vec<usize>], op: usize, args: &[usize]) -> Option<bool> {
        match self.spec.signature().guard_of(op) {
            None => Some(true),
            Some(g) => {
                let l = self.get(tables, g.left, &args[..1]);
                let r = self.get(tables, g.right, &args[1..]);
                if l == UNSET || r == UNSET {
                    None
                } else {
                    Some(l == r)
                }
            }
        }
    }

    fn eval_partial(
        &self,
        tables: &[Vec<usize>],
        term: &PiTerm,
        asg: &Assignment,
    ) -> Option<usize> {
        match term {
            PiTerm::Var(v) => Some(asg.get(v).expect("law variable").1),
            PiTerm::Apply(name, args) => {
                let op = self.spec.signature().op_index(name).expect("law op");
                let mut vals = Vec::with_capacity(args.len());
                for a in args {
                    vals.push(self.eval_partial(tables, a, asg)?);
                }
                match self.validity(tables, op, &vals) {
                    Some(true) => {
                        let v = self.get(tables, op, &vals);
                        if v == UNSET {
                            None
                        } else {
                            Some(v)
                        }
                    }
                    _ => None,
                }
            }
            PiTerm::Unit => {
                let op = self.spec.signature().unit_op()?;
                let v = tables[op][0];
                if v == UNSET {
                    None
                } else {
                    Some(v)
                }
            }
            _ => unreachable!("laws are plain signature terms"),
        }
    }

    fn law_ok(&self, tables: &[Vec<usize>], law_ix: usize) -> bool {
        let law = &self.spec.laws()[law_ix];
        let dims: Vec<usize> = law.vars.iter().map(|&(_, s)| self.sizes[s]).collect();
        for t in tuples(&dims) {
            let mut asg = Assignment::new();
            for ((name, sort), &elem) in law.vars.iter().zip(&t) {
                asg = asg.bind(name, *sort, elem);
            }
            let l = self.eval_partial(tables, &law.lhs, &asg);
            let r = self.eval_partial(tables, &law.rhs, &asg);
            if let (Some(l), Some(r)) = (l, r) {
                if l != r {
                    return false;
                }
            }
        }
        true
    }

    // product under partial table; None when undecided or non-composable
    fn mul(&self, tables: &[Vec<usize>], op: usize, x: usize, y: usize) -> Option<usize> {
        if self.validity(tables, op, &[x, y]) != Some(true) {
            return None;
        }
        let v = self.get(tables, op, &[x, y]);
        if v == UNSET {
            None
        } else {
            Some(v)
        }
    }

    // associativity on the triples that involve the fresh entry (a, b)
    fn assoc_ok_incremental(
        &self,
        tables: &[Vec<usize>],
        op: usize,
        a: usize,
        b: usize,
    ) -> bool {
        let n = self.dims[op][0];
        let check = |x: usize, y: usize, z: usize| -> bool {
            let lhs = self.mul(tables, op, x, y).and_then(|xy| self.mul(tables, op, xy, z));
            let rhs = self.mul(tables, op, y, z).and_then(|yz| self.mul(tables, op, x, yz));
            match (lhs, rhs) {
                (Some(l), Some(r)) => l == r,
                _ => true,
            }
        };
        for z in 0..n {
            if !check(a, b, z) || !check(z, a, b) {
                return false;
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = match self.mul(tables, op, x, y) {
                    Some(v) => v,
                    None => continue,
                };
                if xy == a {
                    // (x y) b against x (y b)
                    if !check(x, y, b) {
                        return false;
                    }
                }
            }
        }
        for y in 0..n {
            for z in 0..n {
                let yz = match self.mul(tables, op, y, z) {
                    Some(v) => v,
                    None => continue,
                };
                if yz == b && !check(a, y, z) {
                    return false;
                }
            }
        }
        true
    }

    fn prune_ok(&self, tables: &[Vec<usize>], op: usize, args: &[usize]) -> bool {
        let sig = self.spec.signature();
        if sig.is_assoc(op)
            && !self.assoc_ok_incremental(tables, op, args[0], args[1])
        {
            return false;
        }
        for mode in &self.law_modes {
            if let LawMode::Generic(ix) = mode {
                let law = &self.spec.laws()[*ix];
                let touches = law_mentions(&law.lhs, &sig.ops()[op].name)
                    || law_mentions(&law.rhs, &sig.ops()[op].name);
                if touches && !self.law_ok(tables, *ix) {
                    return false;
                }
            }
        }
        true
    }

    fn search(
        &mut self,
        tables: &mut Vec<Vec<usize>>,
        op_pos: usize,
        flat: usize,
        out: &mut Vec<Vec<Vec<usize>>>,
        split_jobs: Option<usize>,
    ) -> Result<()> {
        self.nodes += 1;
        if self.nodes % 4096 == 0 {
            if let Some(d) = self.deadline {
                if Instant::now() > d {
                    return Err(Error::Budget("enumeration timed out".into()));
                }
            }
        }
        let Some(&op) = self.op_order.get(op_pos) else {
            out.push(tables.clone());
            return Ok(());
        };
        let total = tables[op].len();
        if flat == total {
            return self.search(tables, op_pos + 1, 0, out, split_jobs);
        }
        if tables[op][flat] != UNSET {
            return self.search(tables, op_pos, flat + 1, out, split_jobs);
        }
        // decode the tuple
        let mut args = vec![0usize; self.dims[op].len()];
        let mut rest = flat;
        for k in (0..args.len()).rev() {
            args[k] = rest % self.dims[op][k];
            rest /= self.dims[op][k];
        }
        // guarded entries at non-composable tuples are normalized, not searched
        if self.validity(tables, op, &args) == Some(false) {
            tables[op][flat] = args[0];
            let r = self.search(tables, op_pos, flat + 1, out, split_jobs);
            tables[op][flat] = UNSET;
            return r;
        }
        let result_sort = self.spec.signature().ops()[op].result;
        let values = self.sizes[result_sort];

        if let Some(jobs) = split_jobs {
            // parallel wave over the first undecided slot; deterministic
            // because results are merged in value order afterwards
            let results: Vec<Result<Vec<Vec<Vec<usize>>>>> = std::thread::scope(|scope| {
                let handles: Vec<_> = (0..values)
                    .map(|v| {
                        let mut tables = tables.clone();
                        let mut sub = Search {
                            spec: self.spec,
                            sizes: self.sizes.clone(),
                            dims: self.dims.clone(),
                            law_modes: law_modes(self.spec),
                            op_order: self.op_order.clone(),
                            deadline: self.deadline,
                            nodes: 0,
                        };
                        scope.spawn(move || {
                            let mut out = Vec::new();
                            tables[op][flat] = v;
                            if sub.prune_ok(&tables, op, &args_of(&sub, op, flat)) {
                                sub.search(&mut tables, op_pos, flat + 1, &mut out, None)?;
                            }
                            Ok(out)
                        })
                    })
                    .collect();
                handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
            });
            let _ = jobs;
            for r in results {
                out.extend(r?);
            }
            return Ok(());
        }

        for v in 0..values {
            tables[op][flat] = v;
            if self.prune_ok(tables, op, &args) {
                self.search(tables, op_pos, flat + 1, out, split_jobs)?;
            }
        }
        tables[op][flat] = UNSET;
        Ok(())
    }
}

fn args_of(s: &Search, op: usize, flat: usize) -> Vec<usize> {
    let mut args = vec![0usize; s.dims[op].len()];
    let mut rest = flat;
    for k in (0..args.len()).rev() {
        args[k] = rest % s.dims[op][k];
        rest /= s.dims[op][k];
    }
    args
}

fn law_mentions(t: &PiTerm, op: &str) -> bool {
    match t {
        PiTerm::Var(_) => false,
        PiTerm::Unit => false,
        PiTerm::Apply(name, args) => name == op || args.iter().any(|a| law_mentions(a, op)),
        PiTerm::Concat(fs) => fs.iter().any(|f| law_mentions(f, op)),
        PiTerm::PiPower(s) => law_mentions(s, op),
    }
}

fn law_modes(spec: &Arc<MonadSpec>) -> Vec<LawMode> {
    let sig = spec.signature();
    spec.laws()
        .iter()
        .enumerate()
        .map(|(ix, law)| {
            // associativity of a designated op: handled incrementally
            if let (PiTerm::Apply(l, largs), PiTerm::Apply(r, _)) = (&law.lhs, &law.rhs) {
                if l == r {
                    if let Ok(op) = sig.op_index(l) {
                        if sig.is_assoc(op)
                            && largs.len() == 2
                            && matches!(&largs[0], PiTerm::Apply(inner, _) if inner == l)
                        {
                            return LawMode::Assoc;
                        }
                    }
                }
            }
            if unit_row_shape(law, sig).is_some() {
                return LawMode::Forced;
            }
            LawMode::Generic(ix)
        })
        .collect()
}

// mul(c(), x) = x or mul(x, c()) = x; returns (op, const op, left?)
fn unit_row_shape(law: &super::Law, sig: &crate::algebra::Signature) -> Option<(usize, usize, bool)> {
    let (op_name, args) = match &law.lhs {
        PiTerm::Apply(n, a) if a.len() == 2 => (n, a),
        _ => return None,
    };
    let rx = match &law.rhs {
        PiTerm::Var(x) => x,
        _ => return None,
    };
    let op = sig.op_index(op_name).ok()?;
    match (&args[0], &args[1]) {
        (PiTerm::Apply(c, ca), PiTerm::Var(x)) if ca.is_empty() && x == rx => {
            Some((op, sig.op_index(c).ok()?, true))
        }
        (PiTerm::Var(x), PiTerm::Apply(c, ca)) if ca.is_empty() && x == rx => {
            Some((op, sig.op_index(c).ok()?, false))
        }
        _ => None,
    }
}

fn enumerate_split(
    spec: &Arc<MonadSpec>,
    sizes: &[usize],
    options: &EnumOptions,
) -> Result<Vec<FiniteAlgebra>> {
    let sig = spec.signature().clone();
    let dims: Vec<Vec<usize>> = sig
        .ops()
        .iter()
        .map(|d| d.args.iter().map(|&s| sizes[s]).collect())
        .collect();
    let mut tables: Vec<Vec<usize>> = dims
        .iter()
        .map(|d| vec![UNSET; d.iter().product::<usize>().max(1)])
        .collect();

    // pin the first constant to element 0 of its sort
    let mut pinned_const: Option<usize> = None;
    for (o, decl) in sig.ops().iter().enumerate() {
        if decl.args.is_empty() {
            tables[o][0] = 0;
            pinned_const = Some(o);
            break;
        }
    }
    // prefill unit rows for laws of unit shape
    for law in spec.laws() {
        if let Some((op, c, left)) = unit_row_shape(law, &sig) {
            if Some(c) == pinned_const {
                let n = dims[op][0];
                let unit = 0;
                for x in 0..n {
                    let ix = if left { unit * n + x } else { x * n + unit };
                    tables[op][ix] = x;
                }
            }
        }
    }

    // guard-source ops first, then declaration order
    let mut op_order: Vec<usize> = (0..sig.ops().len()).collect();
    let guard_sources: Vec<usize> = sig
        .guards()
        .iter()
        .flat_map(|&(_, g)| [g.left, g.right])
        .collect();
    op_order.sort_by_key(|&o| {
        let src = if guard_sources.contains(&o) { 0 } else { 1 };
        let guarded = if sig.guard_of(o).is_some() { 1 } else { 0 };
        (src, guarded, o)
    });

    let mut search = Search {
        spec,
        sizes: sizes.to_vec(),
        dims,
        law_modes: law_modes(spec),
        op_order,
        deadline: options.deadline,
        nodes: 0,
    };
    let mut raw = Vec::new();
    let split = if options.jobs > 1 { Some(options.jobs) } else { None };
    search.search(&mut tables, 0, 0, &mut raw, split)?;

    // materialize, then decorate with orders when the base demands them
    let mut out = Vec::new();
    for tables in raw {
        let alg = materialize(spec, sizes, &tables)?;
        if spec.requires_order() {
            out.extend(decorate_orders(&alg)?);
        } else {
            // full law check guards anything the pruning could not see
            if check_t_algebra(spec, &alg).is_ok() {
                out.push(alg);
            }
        }
    }
    if spec.requires_order() {
        out.retain(|a| check_t_algebra(spec, a).is_ok());
    }
    Ok(out)
}

fn element_names(spec: &MonadSpec, sizes: &[usize]) -> Vec<Vec<String>> {
    let sig = spec.signature();
    let pinned: Option<usize> = sig
        .ops()
        .iter()
        .position(|d| d.args.is_empty())
        .map(|o| sig.ops()[o].result);
    sig.sorts()
        .iter()
        .enumerate()
        .map(|(s, name)| {
            let prefix: char = name.chars().next().unwrap_or('e');
            (0..sizes[s])
                .map(|i| {
                    if Some(s) == pinned && i == 0 {
                        "1".to_string()
                    } else {
                        format!("{prefix}{i}")
                    }
                })
                .collect()
        })
        .collect()
}

fn materialize(
    spec: &Arc<MonadSpec>,
    sizes: &[usize],
    tables: &[Vec<usize>],
) -> Result<FiniteAlgebra> {
    let sig = spec.signature().clone();
    let carriers = element_names(spec, sizes);
    let op_tables: Vec<OpTable> = sig
        .ops()
        .iter()
        .enumerate()
        .map(|(o, decl)| {
            let dims: Vec<usize> = decl.args.iter().map(|&s| sizes[s]).collect();
            OpTable::new(dims, tables[o].clone())
        })
        .collect();
    Ok(FiniteAlgebra::from_parts(sig, carriers, op_tables, None))
}

// every family of per-sort partial orders making all operations monotone
fn decorate_orders(alg: &FiniteAlgebra) -> Result<Vec<FiniteAlgebra>> {
    let sig = alg.signature().clone();
    let nsorts = sig.sorts().len();
    let mut per_sort: Vec<Vec<Poset>> = Vec::with_capacity(nsorts);
    for s in 0..nsorts {
        per_sort.push(all_posets(alg.size(s))?);
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; nsorts];
    'outer: loop {
        let posets: Vec<Poset> = (0..nsorts).map(|s| per_sort[s][choice[s]].clone()).collect();
        let candidate = FiniteAlgebra::from_parts(
            sig.clone(),
            (0..nsorts).map(|s| alg.elements(s).to_vec()).collect(),
            (0..sig.ops().len()).map(|o| alg.table(o).clone()).collect(),
            Some(posets),
        );
        if monotone(&candidate) {
            out.push(candidate);
        }
        let mut k = nsorts;
        loop {
            if k == 0 {
                break 'outer;
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < per_sort[k].len() {
                break;
            }
            choice[k] = 0;
        }
    }
    Ok(out)
}

fn monotone(a: &FiniteAlgebra) -> bool {
    let sig = a.signature();
    for (o, decl) in sig.ops().iter().enumerate() {
        let dims: Vec<usize> = decl.args.iter().map(|&s| a.size(s)).collect();
        for t in tuples(&dims) {
            if !a.tuple_valid(o, &t) {
                continue;
            }
            for k in 0..t.len() {
                let s = decl.args[k];
                for b in 0..a.size(s) {
                    if b == t[k] || !a.leq(s, t[k], b) {
                        continue;
                    }
                    let mut hi = t.clone();
                    hi[k] = b;
                    if !a.tuple_valid(o, &hi) {
                        continue;
                    }
                    if !a.leq(decl.result, a.apply(o, &t), a.apply(o, &hi)) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

// all partial orders on n points, by subsets of the strict pairs
fn all_posets(n: usize) -> Result<Vec<Poset>> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    if pairs.len() > 20 {
        return Err(Error::Budget(format!(
            "ordered enumeration with {n}-element sorts is out of budget"
        )));
    }
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let chosen: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|&(k, _)| mask & (1 << k) != 0)
            .map(|(_, &p)| p)
            .collect();
        if let Ok(p) = Poset::from_pairs(n, &chosen) {
            // only keep transitively closed subsets to avoid duplicates
            let closed = (0..n).all(|i| {
                (0..n).all(|j| {
                    i == j || p.leq(i, j) == chosen.contains(&(i, j))
                })
            });
            if closed {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Cached access to enumeration results: in-memory always, on disk when a
/// memo directory is set.
pub struct AlgebraCache {
    mem: Mutex<BTreeMap<(String, usize), Arc<Vec<TAlgebra>>>>,
    dir: Option<PathBuf>,
    pub options: EnumOptions,
}

impl AlgebraCache {
    pub fn new() -> Self {
        AlgebraCache { mem: Mutex::new(BTreeMap::new()), dir: None, options: EnumOptions::default() }
    }

    pub fn with_dir(dir: PathBuf) -> Self {
        AlgebraCache {
            mem: Mutex::new(BTreeMap::new()),
            dir: Some(dir),
            options: EnumOptions::default(),
        }
    }

    pub fn exact(&self, spec: &Arc<MonadSpec>, size: usize) -> Result<Arc<Vec<TAlgebra>>> {
        let key = (spec.name().to_string(), size);
        if let Some(hit) = self.mem.lock().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        if let Some(list) = self.load(spec, size) {
            let list = Arc::new(list);
            self.mem.lock().unwrap().insert(key, list.clone());
            return Ok(list);
        }
        let list = Arc::new(enumerate_with(spec, size, &self.options)?);
        self.store(spec, size, &list);
        self.mem.lock().unwrap().insert(key, list.clone());
        Ok(list)
    }

    pub fn up_to(&self, spec: &Arc<MonadSpec>, n: usize) -> Result<Vec<TAlgebra>> {
        let mut out = Vec::new();
        for k in 1..=n {
            out.extend(self.exact(spec, k)?.iter().cloned());
        }
        Ok(out)
    }

    fn memo_path(&self, spec: &Arc<MonadSpec>, size: usize) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{}_{}.memo", spec.name(), size)))
    }

    fn load(&self, spec: &Arc<MonadSpec>, size: usize) -> Option<Vec<TAlgebra>> {
        let path = self.memo_path(spec, size)?;
        let text = std::fs::read_to_string(path).ok()?;
        let mut lines = text.lines();
        if lines.next()? != MEMO_VERSION {
            return None;
        }
        if lines.next()? != format!("spec {}", spec.name()) {
            return None;
        }
        if lines.next()? != format!("size {size}") {
            return None;
        }
        let rest: Vec<&str> = lines.collect();
        let mut out = Vec::new();
        for block in rest.join("\n").split("%%") {
            let block = block.trim();
            if block.is_empty() {
                continue;
            }
            let alg = crate::algebra::parse_algebra(block).ok()?;
            // stale or tampered files must not poison results
            let talg = check_t_algebra(spec, &alg).ok()?;
            out.push(talg);
        }
        Some(out)
    }

    fn store(&self, spec: &Arc<MonadSpec>, size: usize, list: &[TAlgebra]) {
        let Some(path) = self.memo_path(spec, size) else {
            return;
        };
        if let Some(parent) = path.parent() {
            let _ = std::fs::create_dir_all(parent);
        }
        let mut text = format!("{MEMO_VERSION}\nspec {}\nsize {size}\n", spec.name());
        for t in list {
            text.push_str("%%\n");
            text.push_str(&crate::algebra::print_algebra(t.algebra()));
        }
        let _ = std::fs::write(path, text);
    }
}

impl Default for AlgebraCache {
    fn default() -> Self {
        AlgebraCache::new()
    }
}
