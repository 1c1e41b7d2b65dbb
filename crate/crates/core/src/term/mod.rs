//! π-terms: the decidable fragment of profinite elements.
//!
//! Terms are built from variables, the unit, operation application,
//! juxtaposition (the designated associative product) and the π-power
//! `t^pi`, interpreted in a finite algebra as the unique idempotent power.
//! Statements pair terms into equations `u = v`, inequations `u <= v` and
//! implications `p1 = q1, ... => u = v`, quantified either over a finite
//! set of sorted variable names or over a finite algebra of variables.

mod eval;
mod parse;
mod satisfy;
mod translate;

pub use eval::{
    algebra_assignments, eval_pi_term, free_assignments, idempotent_power, Assignment,
    Evaluator,
};
pub use parse::{parse_statements, parse_term, print_statement, scan_directive, Statements};
pub use satisfy::{satisfies, Verdict};
pub use translate::equation_to_implication;

use crate::algebra::{FiniteAlgebra, Signature};
use crate::error::{Error, Result};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PiTerm {
    Var(String),
    Unit,
    Apply(String, Vec<PiTerm>),
    /// product of two or more factors under the designated associative
    /// operation of their common sort
    Concat(Vec<PiTerm>),
    PiPower(Box<PiTerm>),
}

impl PiTerm {
    pub fn var(name: &str) -> Self {
        PiTerm::Var(name.to_string())
    }

    pub fn pi(self) -> Self {
        PiTerm::PiPower(Box::new(self))
    }

    pub fn concat(factors: Vec<PiTerm>) -> Self {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                PiTerm::Concat(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        match flat.len() {
            0 => PiTerm::Unit,
            1 => flat.pop().unwrap(),
            _ => PiTerm::Concat(flat),
        }
    }

    pub fn variables(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            PiTerm::Var(v) => out.push(v),
            PiTerm::Unit => {}
            PiTerm::Apply(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
            PiTerm::Concat(fs) => fs.iter().for_each(|f| f.collect_vars(out)),
            PiTerm::PiPower(t) => t.collect_vars(out),
        }
    }

    /// Substitute variables by terms; unmapped variables stay.
    pub fn substitute(&self, map: &dyn Fn(&str) -> Option<PiTerm>) -> PiTerm {
        match self {
            PiTerm::Var(v) => map(v).unwrap_or_else(|| self.clone()),
            PiTerm::Unit => PiTerm::Unit,
            PiTerm::Apply(op, args) => {
                PiTerm::Apply(op.clone(), args.iter().map(|a| a.substitute(map)).collect())
            }
            PiTerm::Concat(fs) => {
                PiTerm::concat(fs.iter().map(|f| f.substitute(map)).collect())
            }
            PiTerm::PiPower(t) => t.substitute(map).pi(),
        }
    }
}

impl fmt::Display for PiTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn atom(t: &PiTerm, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t {
                PiTerm::Concat(_) => write!(f, "({t})"),
                _ => write!(f, "{t}"),
            }
        }
        match self {
            PiTerm::Var(v) => write!(f, "{v}"),
            PiTerm::Unit => write!(f, "1"),
            PiTerm::Apply(op, args) => {
                write!(f, "{op}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            PiTerm::Concat(fs) => {
                for (i, t) in fs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    atom(t, f)?;
                }
                Ok(())
            }
            PiTerm::PiPower(t) => {
                atom(t, f)?;
                write!(f, "^pi")
            }
        }
    }
}

/// What the variables of a statement range over: a finite set of sorted
/// names, or a finite algebra of the base variety whose elements are the
/// variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VariableObject {
    FreeVars(Vec<(String, usize)>),
    AlgebraVars(FiniteAlgebra),
}

impl VariableObject {
    pub fn free(names: &[&str], sort: usize) -> Self {
        let mut v: Vec<(String, usize)> =
            names.iter().map(|n| (n.to_string(), sort)).collect();
        v.sort();
        VariableObject::FreeVars(v)
    }

    pub fn sort_of(&self, var: &str) -> Result<usize> {
        match self {
            VariableObject::FreeVars(vs) => vs
                .iter()
                .find(|(n, _)| n == var)
                .map(|&(_, s)| s)
                .ok_or_else(|| Error::MissingVariable(var.to_string())),
            VariableObject::AlgebraVars(x) => Ok(x.element_by_name(var)?.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelKind {
    Eq,
    Le,
}

impl fmt::Display for RelKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RelKind::Eq => write!(f, "="),
            RelKind::Le => write!(f, "<="),
        }
    }
}

/// An equation, inequation or implication together with its variables.
#[derive(Debug, Clone, PartialEq)]
pub struct EquationLike {
    pub vars: VariableObject,
    pub body: StatementBody,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StatementBody {
    Equation(PiTerm, PiTerm),
    Inequation(PiTerm, PiTerm),
    Implication {
        premises: Vec<(PiTerm, PiTerm, RelKind)>,
        conclusion: (PiTerm, PiTerm, RelKind),
    },
}

impl EquationLike {
    pub fn equation(vars: VariableObject, lhs: PiTerm, rhs: PiTerm) -> Self {
        EquationLike { vars, body: StatementBody::Equation(lhs, rhs) }
    }

    pub fn inequation(vars: VariableObject, lhs: PiTerm, rhs: PiTerm) -> Self {
        EquationLike { vars, body: StatementBody::Inequation(lhs, rhs) }
    }

    pub fn terms(&self) -> Vec<&PiTerm> {
        match &self.body {
            StatementBody::Equation(l, r) | StatementBody::Inequation(l, r) => vec![l, r],
            StatementBody::Implication { premises, conclusion } => {
                let mut v: Vec<&PiTerm> = premises
                    .iter()
                    .flat_map(|(l, r, _)| [l, r])
                    .collect();
                v.push(&conclusion.0);
                v.push(&conclusion.1);
                v
            }
        }
    }

    pub fn uses_order(&self) -> bool {
        match &self.body {
            StatementBody::Equation(..) => false,
            StatementBody::Inequation(..) => true,
            StatementBody::Implication { premises, conclusion } => {
                conclusion.2 == RelKind::Le
                    || premises.iter().any(|(_, _, k)| *k == RelKind::Le)
            }
        }
    }
}

impl fmt::Display for EquationLike {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.body {
            StatementBody::Equation(l, r) => write!(f, "eq: {l} = {r}"),
            StatementBody::Inequation(l, r) => write!(f, "ineq: {l} <= {r}"),
            StatementBody::Implication { premises, conclusion } => {
                write!(f, "impl: ")?;
                for (i, (l, r, k)) in premises.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{l} {k} {r}")?;
                }
                let (l, r, k) = conclusion;
                write!(f, " => {l} {k} {r}")
            }
        }
    }
}

/// Symbolic endpoint of a morphism-sorted term, used for the static
/// composability check of guarded signatures.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Endpoint {
    /// a concrete object of an algebra of variables
    Concrete(usize),
    /// an object-sorted term (free variables give fresh endpoints)
    Term(PiTerm),
}

/// Infer the sort of a term and check well-formedness: variables must be
/// declared, applications match their declarations, juxtaposition and
/// π-power need a designated associative operation, and guarded products
/// must be composable.
pub fn term_sort(term: &PiTerm, vars: &VariableObject, sig: &Signature) -> Result<usize> {
    let sort = infer_sort(term, vars, sig)?;
    if !sig.guards().is_empty() {
        check_endpoints(term, vars, sig)?;
    }
    Ok(sort)
}

fn infer_sort(term: &PiTerm, vars: &VariableObject, sig: &Signature) -> Result<usize> {
    match term {
        PiTerm::Var(v) => vars.sort_of(v),
        PiTerm::Unit => {
            let op = sig
                .unit_op()
                .ok_or_else(|| Error::IllSorted("`1` needs a unique constant".to_string()))?;
            Ok(sig.ops()[op].result)
        }
        PiTerm::Apply(name, args) => {
            let op = sig.op_index(name)?;
            let decl = &sig.ops()[op];
            if args.len() != decl.arity() {
                return Err(Error::IllSorted(format!(
                    "`{name}` expects {} arguments, got {}",
                    decl.arity(),
                    args.len()
                )));
            }
            for (k, a) in args.iter().enumerate() {
                let s = infer_sort(a, vars, sig)?;
                if s != decl.args[k] {
                    return Err(Error::IllSorted(format!(
                        "argument {k} of `{name}` has sort `{}`, expected `{}`",
                        sig.sorts()[s],
                        sig.sorts()[decl.args[k]]
                    )));
                }
            }
            Ok(decl.result)
        }
        PiTerm::Concat(fs) => {
            let mut sort = None;
            for f in fs {
                let s = infer_sort(f, vars, sig)?;
                match sort {
                    None => sort = Some(s),
                    Some(prev) if prev != s => {
                        return Err(Error::IllSorted(
                            "product factors live in different sorts".to_string(),
                        ))
                    }
                    _ => {}
                }
            }
            let s = sort.expect("concat has factors");
            sig.assoc_op_for_sort(s).ok_or_else(|| {
                Error::IllSorted(format!(
                    "no designated associative operation on sort `{}`",
                    sig.sorts()[s]
                ))
            })?;
            Ok(s)
        }
        PiTerm::PiPower(t) => {
            let s = infer_sort(t, vars, sig)?;
            sig.assoc_op_for_sort(s).ok_or_else(|| {
                Error::IllSorted(format!(
                    "π-power needs a designated associative operation on sort `{}`",
                    sig.sorts()[s]
                ))
            })?;
            Ok(s)
        }
    }
}

// Endpoint analysis for guarded signatures: every guarded application and
// juxtaposition must have matching endpoints; a π-power needs equal source
// and target. Free morphism variables have distinct fresh endpoints.
fn check_endpoints(term: &PiTerm, vars: &VariableObject, sig: &Signature) -> Result<()> {
    endpoints(term, vars, sig).map(|_| ())
}

fn endpoints(
    term: &PiTerm,
    vars: &VariableObject,
    sig: &Signature,
) -> Result<Option<(Endpoint, Endpoint)>> {
    // returns endpoints for terms of a guarded sort, None otherwise
    let guarded_sorts: Vec<usize> = sig
        .guards()
        .iter()
        .map(|&(op, _)| sig.ops()[op].result)
        .collect();
    let guard_for_sort = |s: usize| {
        sig.guards()
            .iter()
            .find(|&&(op, _)| sig.ops()[op].result == s)
            .map(|&(_, g)| g)
    };
    match term {
        PiTerm::Var(v) => {
            let s = vars.sort_of(v)?;
            if !guarded_sorts.contains(&s) {
                return Ok(None);
            }
            let g = guard_for_sort(s).unwrap();
            match vars {
                VariableObject::AlgebraVars(x) => {
                    let (_, ix) = x.element_by_name(v)?;
                    Ok(Some((
                        Endpoint::Concrete(x.apply(g.right, &[ix])),
                        Endpoint::Concrete(x.apply(g.left, &[ix])),
                    )))
                }
                VariableObject::FreeVars(_) => Ok(Some((
                    Endpoint::Term(PiTerm::Apply(
                        sig.ops()[g.right].name.clone(),
                        vec![term.clone()],
                    )),
                    Endpoint::Term(PiTerm::Apply(
                        sig.ops()[g.left].name.clone(),
                        vec![term.clone()],
                    )),
                ))),
            }
        }
        PiTerm::Unit => Ok(None),
        PiTerm::Apply(name, args) => {
            for a in args {
                endpoints(a, vars, sig)?;
            }
            let op = sig.op_index(name)?;
            let decl = &sig.ops()[op];
            if let Some(g) = sig.guard_of(op) {
                let l = endpoints(&args[0], vars, sig)?;
                let r = endpoints(&args[1], vars, sig)?;
                if let (Some((ls, lt)), Some((rs, rt))) = (l, r) {
                    if lt != rs {
                        return Err(Error::IllSorted(format!(
                            "`{name}` applied to non-composable terms `{}` and `{}`",
                            args[0], args[1]
                        )));
                    }
                    return Ok(Some((ls, rt)));
                }
                let _ = g;
                return Ok(None);
            }
            // unary object-producing op on a guarded sort (e.g. identities)
            if !decl.args.is_empty() && guarded_sorts.contains(&decl.result) {
                // identity-shaped: Ob -> Mor; both endpoints are the argument
                if decl.args.len() == 1 && !guarded_sorts.contains(&decl.args[0]) {
                    let obj = object_symbol(&args[0], vars)?;
                    return Ok(Some((obj.clone(), obj)));
                }
            }
            Ok(None)
        }
        PiTerm::Concat(fs) => {
            let s = infer_sort(term, vars, sig)?;
            if !guarded_sorts.contains(&s) {
                return Ok(None);
            }
            let mut eps = Vec::new();
            for f in fs {
                match endpoints(f, vars, sig)? {
                    Some(e) => eps.push(e),
                    None => return Ok(None),
                }
            }
            for w in eps.windows(2) {
                if w[0].1 != w[1].0 {
                    return Err(Error::IllSorted(format!(
                        "non-composable product in `{term}`"
                    )));
                }
            }
            Ok(Some((eps.first().unwrap().0.clone(), eps.last().unwrap().1.clone())))
        }
        PiTerm::PiPower(t) => {
            if let Some((src, tgt)) = endpoints(t, vars, sig)? {
                if src != tgt {
                    return Err(Error::IllSorted(format!(
                        "π-power of non-endo term `{t}`"
                    )));
                }
                return Ok(Some((src, tgt)));
            }
            Ok(None)
        }
    }
}

fn object_symbol(term: &PiTerm, vars: &VariableObject) -> Result<Endpoint> {
    match (term, vars) {
        (PiTerm::Var(v), VariableObject::AlgebraVars(x)) => {
            Ok(Endpoint::Concrete(x.element_by_name(v)?.1))
        }
        _ => Ok(Endpoint::Term(term.clone())),
    }
}
