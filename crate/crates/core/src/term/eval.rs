//! Evaluation of π-terms in finite algebras.

use super::PiTerm;
use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;

/// The unique idempotent among the powers of `a` under an associative
/// binary operation: compute the index and period of the power sequence
/// and return `a^k` for the unique multiple `k` of the period at or past
/// the index.
pub fn idempotent_power(alg: &FiniteAlgebra, op: usize, a: usize) -> Result<usize> {
    if !alg.is_associative(op) {
        return Err(Error::NotAssociative(alg.signature().ops()[op].name.clone()));
    }
    Ok(idempotent_power_unchecked(alg, op, a))
}

pub(crate) fn idempotent_power_unchecked(alg: &FiniteAlgebra, op: usize, a: usize) -> usize {
    // powers a^1, a^2, ... with first-repeat detection
    let mut seen: Vec<usize> = vec![a];
    let mut cur = a;
    loop {
        cur = alg.apply(op, &[cur, a]);
        if let Some(pos) = seen.iter().position(|&x| x == cur) {
            // seen[i] = a^(i+1); repeat at exponent seen.len()+1 equals a^(pos+1)
            let index = pos + 1;
            let period = seen.len() + 1 - index;
            let k = period * index.div_ceil(period);
            return seen[k - 1];
        }
        seen.push(cur);
    }
}

/// A finite assignment of elements to variable names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    values: BTreeMap<String, (usize, usize)>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment { values: BTreeMap::new() }
    }

    pub fn bind(mut self, var: &str, sort: usize, elem: usize) -> Self {
        self.values.insert(var.to_string(), (sort, elem));
        self
    }

    pub fn get(&self, var: &str) -> Result<(usize, usize)> {
        self.values
            .get(var)
            .copied()
            .ok_or_else(|| Error::MissingVariable(var.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, (usize, usize))> {
        self.values.iter().map(|(k, &v)| (k.as_str(), v))
    }

    /// Human-readable form against a target algebra.
    pub fn display<'a>(&'a self, target: &'a FiniteAlgebra) -> AssignmentDisplay<'a> {
        AssignmentDisplay { assignment: self, target }
    }
}

impl Default for Assignment {
    fn default() -> Self {
        Assignment::new()
    }
}

pub struct AssignmentDisplay<'a> {
    assignment: &'a Assignment,
    target: &'a FiniteAlgebra,
}

impl fmt::Display for AssignmentDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (var, (sort, elem))) in self.assignment.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{var} -> {}", self.target.element_name(sort, elem))?;
        }
        Ok(())
    }
}

/// Structural evaluator for π-terms over one algebra. Associativity of the
/// designated operations is verified once at construction.
pub struct Evaluator<'a> {
    alg: &'a FiniteAlgebra,
    assoc_ok: Vec<bool>,
}

impl<'a> Evaluator<'a> {
    pub fn new(alg: &'a FiniteAlgebra) -> Self {
        let sig = alg.signature();
        let assoc_ok = (0..sig.ops().len())
            .map(|o| sig.is_assoc(o) && alg.is_associative(o))
            .collect();
        Evaluator { alg, assoc_ok }
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        self.alg
    }

    fn assoc_op(&self, sort: usize, what: &str) -> Result<usize> {
        let sig = self.alg.signature();
        let op = sig.assoc_op_for_sort(sort).ok_or_else(|| {
            Error::IllSorted(format!(
                "no designated associative operation on sort `{}` for {what}",
                sig.sorts()[sort]
            ))
        })?;
        if !self.assoc_ok[op] {
            return Err(Error::NotAssociative(sig.ops()[op].name.clone()));
        }
        Ok(op)
    }

    /// Evaluate to `(sort, element)`.
    pub fn eval(&self, term: &PiTerm, asg: &Assignment) -> Result<(usize, usize)> {
        let sig = self.alg.signature();
        match term {
            PiTerm::Var(v) => asg.get(v),
            PiTerm::Unit => {
                let op = sig.unit_op().ok_or_else(|| {
                    Error::IllSorted("`1` needs a unique constant".to_string())
                })?;
                Ok((sig.ops()[op].result, self.alg.apply(op, &[])))
            }
            PiTerm::Apply(name, args) => {
                let op = sig.op_index(name)?;
                let decl = sig.ops()[op].clone();
                if args.len() != decl.arity() {
                    return Err(Error::IllSorted(format!(
                        "`{name}` expects {} arguments",
                        decl.arity()
                    )));
                }
                let mut vals = Vec::with_capacity(args.len());
                for (k, a) in args.iter().enumerate() {
                    let (s, v) = self.eval(a, asg)?;
                    if s != decl.args[k] {
                        return Err(Error::IllSorted(format!(
                            "argument {k} of `{name}` has the wrong sort"
                        )));
                    }
                    vals.push(v);
                }
                if !self.alg.tuple_valid(op, &vals) {
                    return Err(Error::IllSorted(format!(
                        "`{name}` applied to a non-composable tuple"
                    )));
                }
                Ok((decl.result, self.alg.apply(op, &vals)))
            }
            PiTerm::Concat(fs) => {
                let mut it = fs.iter();
                let (sort, mut acc) = self.eval(it.next().expect("nonempty concat"), asg)?;
                let op = self.assoc_op(sort, "a product")?;
                for f in it {
                    let (s, v) = self.eval(f, asg)?;
                    if s != sort {
                        return Err(Error::IllSorted(
                            "product factors live in different sorts".to_string(),
                        ));
                    }
                    if !self.alg.tuple_valid(op, &[acc, v]) {
                        return Err(Error::IllSorted(
                            "non-composable product".to_string(),
                        ));
                    }
                    acc = self.alg.apply(op, &[acc, v]);
                }
                Ok((sort, acc))
            }
            PiTerm::PiPower(t) => {
                let (sort, v) = self.eval(t, asg)?;
                let op = self.assoc_op(sort, "a π-power")?;
                if self.alg.signature().guard_of(op).is_some()
                    && !self.alg.tuple_valid(op, &[v, v])
                {
                    return Err(Error::IllSorted(
                        "π-power of a non-composable element".to_string(),
                    ));
                }
                Ok((sort, idempotent_power_unchecked(self.alg, op, v)))
            }
        }
    }
}

/// One-shot evaluation; `h` must cover every variable of `t` and respect
/// base structure when it came from an algebra of variables.
pub fn eval_pi_term(t: &PiTerm, alg: &FiniteAlgebra, h: &Assignment) -> Result<(usize, usize)> {
    Evaluator::new(alg).eval(t, h)
}

/// All assignments of the variables into the algebra, lexicographic in the
/// (sorted) variable names and element indices.
pub fn free_assignments(
    vars: &[(String, usize)],
    alg: &FiniteAlgebra,
) -> impl Iterator<Item = Assignment> {
    let dims: Vec<usize> = vars.iter().map(|&(_, s)| alg.size(s)).collect();
    let vars = vars.to_vec();
    let total = if dims.contains(&0) { 0 } else { dims.iter().product::<usize>().max(1) };
    (0..total).map(move |mut i| {
        let mut elems = vec![0usize; dims.len()];
        for k in (0..dims.len()).rev() {
            elems[k] = i % dims[k];
            i /= dims[k];
        }
        let mut a = Assignment::new();
        for ((name, sort), &elem) in vars.iter().zip(&elems) {
            a = a.bind(name, *sort, elem);
        }
        a
    })
}

/// Assignments coming from base morphisms out of an algebra of variables.
pub fn algebra_assignments(
    x: &FiniteAlgebra,
    base_of_target: &FiniteAlgebra,
) -> Result<Vec<Assignment>> {
    let homs = crate::algebra::enumerate_morphisms(x, base_of_target)?;
    Ok(homs
        .into_iter()
        .map(|m| {
            let mut a = Assignment::new();
            for s in 0..x.signature().sorts().len() {
                for i in 0..x.size(s) {
                    a = a.bind(x.element_name(s, i), s, m.apply(s, i));
                }
            }
            a
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn pi_power_in_z2_is_the_unit() {
        let z2 = samples::z2();
        let mul = z2.signature().op_index("mul").unwrap();
        let g = z2.element_index(0, "g").unwrap();
        let one = z2.element_index(0, "1").unwrap();
        // g^2 = 1 is idempotent
        assert_eq!(idempotent_power(&z2, mul, g).unwrap(), one);
    }

    #[test]
    fn pi_power_in_c3_is_a_squared() {
        let c3 = samples::c3();
        let mul = c3.signature().op_index("mul").unwrap();
        let a = c3.element_index(0, "a").unwrap();
        let a2 = c3.element_index(0, "a2").unwrap();
        // a^4 = a^2, and a^2 is idempotent
        assert_eq!(idempotent_power(&c3, mul, a).unwrap(), a2);
    }

    #[test]
    fn idempotents_are_fixed_points() {
        let u1 = samples::u1();
        let mul = u1.signature().op_index("mul").unwrap();
        for e in 0..2 {
            assert_eq!(idempotent_power(&u1, mul, e).unwrap(), e);
        }
    }

    #[test]
    fn non_associative_op_is_rejected() {
        let alg = samples::non_associative_two();
        let op = alg.signature().op_index("mul").unwrap();
        assert!(matches!(idempotent_power(&alg, op, 0), Err(Error::NotAssociative(_))));
    }

    #[test]
    fn eval_of_monoid_terms() {
        let z2 = samples::z2();
        let g = z2.element_index(0, "g").unwrap();
        let one = z2.element_index(0, "1").unwrap();
        let asg = Assignment::new().bind("x", 0, g);
        let ev = Evaluator::new(&z2);

        let xpi = super::super::parse::parse_term("x^pi").unwrap();
        assert_eq!(ev.eval(&xpi, &asg).unwrap(), (0, one));

        let xpix = super::super::parse::parse_term("x^pi x").unwrap();
        assert_eq!(ev.eval(&xpix, &asg).unwrap(), (0, g));

        let u1 = samples::u1();
        let zero = u1.element_index(0, "0").unwrap();
        let ev1 = Evaluator::new(&u1);
        let asg0 = Assignment::new().bind("x", 0, zero);
        assert_eq!(ev1.eval(&xpi, &asg0).unwrap(), (0, zero));
    }

    #[test]
    fn eval_of_empty_word_is_the_unit() {
        let z2 = samples::z2();
        let ev = Evaluator::new(&z2);
        assert_eq!(ev.eval(&PiTerm::Unit, &Assignment::new()).unwrap(), (0, 0));
    }

    #[test]
    fn missing_variable_is_an_error() {
        let z2 = samples::z2();
        let ev = Evaluator::new(&z2);
        let t = super::super::parse::parse_term("x y").unwrap();
        let asg = Assignment::new().bind("x", 0, 0);
        assert!(matches!(ev.eval(&t, &asg), Err(Error::MissingVariable(_))));
    }
}
