//! Turning an equation over an algebra of variables into an implication
//! over free variables.
//!
//! Present the variable algebra X as a quotient of the free object on its
//! carrier (or on a chosen generating set): the premises pin down the
//! multiplication table and the unit, so that an assignment of the free
//! variables satisfies them exactly when it factors through a homomorphism
//! out of X. The conclusion is the original pair with every element
//! replaced by its word in the generators. Satisfaction is preserved and
//! reflected for every finite algebra.

use super::{EquationLike, PiTerm, RelKind, StatementBody, VariableObject};
use crate::algebra::FiniteAlgebra;
use crate::error::{Error, Result};

/// Translate `u = v` over an algebra X of variables into an implication
/// over free variables naming (a generating subset of) X's carrier.
/// Supported for monoid-shaped X (the `mon` base) and bare sets, both of
/// which present their free objects by words.
pub fn equation_to_implication(
    e: &EquationLike,
    generators: Option<&[&str]>,
) -> Result<EquationLike> {
    let x = match &e.vars {
        VariableObject::AlgebraVars(x) => x,
        VariableObject::FreeVars(_) => {
            return Err(Error::Unsupported(
                "translation applies to equations over an algebra of variables".into(),
            ))
        }
    };
    let (lhs, rhs) = match &e.body {
        StatementBody::Equation(l, r) => (l, r),
        _ => {
            return Err(Error::Unsupported(
                "translation applies to equations".into(),
            ))
        }
    };

    let sig = x.signature();
    let is_set_like = sig.ops().is_empty();
    let is_monoid_like = sig.op_index("mul").is_ok() && sig.op_index("one").is_ok();
    if !(is_set_like || is_monoid_like) || sig.sorts().len() != 1 {
        return Err(Error::Unsupported(format!(
            "variable algebra over an unsupported base: {}",
            sig.sorts().join(", ")
        )));
    }

    let n = x.size(0);
    let names: Vec<String> = (0..n).map(|i| sanitize(x.element_name(0, i), i)).collect();

    if is_set_like {
        // free object on a set is the set itself: no premises to state
        let rename = |v: &str| -> Result<PiTerm> {
            let (_, i) = x.element_by_name(v)?;
            Ok(PiTerm::Var(names[i].clone()))
        };
        let vars = VariableObject::FreeVars({
            let mut vs: Vec<(String, usize)> = names.iter().map(|n| (n.clone(), 0)).collect();
            vs.sort();
            vs
        });
        return Ok(EquationLike {
            vars,
            body: StatementBody::Implication {
                premises: vec![],
                conclusion: (substitute_vars(lhs, &rename)?, substitute_vars(rhs, &rename)?, RelKind::Eq),
            },
        });
    }

    let mul = sig.op_index("mul")?;
    let one = sig.op_index("one")?;
    let unit = x.apply(one, &[]);

    // word for each element over the chosen generators
    let words = match generators {
        None => (0..n).map(|i| PiTerm::Var(names[i].clone())).collect::<Vec<_>>(),
        Some(gens) => {
            let mut gen_ixs = Vec::new();
            for g in gens {
                gen_ixs.push(x.element_index(0, g)?);
            }
            generator_words(x, mul, unit, &gen_ixs, &names)?
        }
    };
    let kept: Vec<usize> = match generators {
        None => (0..n).collect(),
        Some(gens) => gens
            .iter()
            .map(|g| x.element_index(0, g))
            .collect::<Result<Vec<_>>>()?,
    };

    let mut premises = Vec::new();
    // unit element collapses to the empty word
    premises.push((words[unit].clone(), PiTerm::Unit, RelKind::Eq));
    // one premise per table entry
    for i in 0..n {
        for j in 0..n {
            let prod = x.apply(mul, &[i, j]);
            let lhs = PiTerm::concat(vec![words[i].clone(), words[j].clone()]);
            let rhs = words[prod].clone();
            if lhs != rhs {
                premises.push((lhs, rhs, RelKind::Eq));
            }
        }
    }
    premises.sort();
    premises.dedup();

    let rename = |v: &str| -> Result<PiTerm> {
        let (_, i) = x.element_by_name(v)?;
        Ok(words[i].clone())
    };
    let conclusion =
        (substitute_vars(lhs, &rename)?, substitute_vars(rhs, &rename)?, RelKind::Eq);

    let mut vs: Vec<(String, usize)> = kept.iter().map(|&i| (names[i].clone(), 0)).collect();
    vs.sort();
    vs.dedup();
    Ok(EquationLike {
        vars: VariableObject::FreeVars(vs),
        body: StatementBody::Implication { premises, conclusion },
    })
}

fn substitute_vars(
    t: &PiTerm,
    rename: &dyn Fn(&str) -> Result<PiTerm>,
) -> Result<PiTerm> {
    Ok(match t {
        PiTerm::Var(v) => rename(v)?,
        PiTerm::Unit => PiTerm::Unit,
        PiTerm::Apply(op, args) => PiTerm::Apply(
            op.clone(),
            args.iter().map(|a| substitute_vars(a, rename)).collect::<Result<_>>()?,
        ),
        PiTerm::Concat(fs) => PiTerm::concat(
            fs.iter().map(|f| substitute_vars(f, rename)).collect::<Result<_>>()?,
        ),
        PiTerm::PiPower(s) => substitute_vars(s, rename)?.pi(),
    })
}

// breadth-first words over the generators; the unit is the empty word
fn generator_words(
    x: &FiniteAlgebra,
    mul: usize,
    unit: usize,
    gens: &[usize],
    names: &[String],
) -> Result<Vec<PiTerm>> {
    let n = x.size(0);
    let mut words: Vec<Option<PiTerm>> = vec![None; n];
    words[unit] = Some(PiTerm::Unit);
    let mut frontier: Vec<usize> = vec![unit];
    for &g in gens {
        if words[g].is_none() {
            words[g] = Some(PiTerm::Var(names[g].clone()));
            frontier.push(g);
        }
    }
    while let Some(e) = frontier.pop() {
        for &g in gens {
            let p = x.apply(mul, &[e, g]);
            if words[p].is_none() {
                words[p] = Some(PiTerm::concat(vec![
                    words[e].clone().unwrap(),
                    PiTerm::Var(names[g].clone()),
                ]));
                frontier.push(p);
            }
        }
    }
    words
        .into_iter()
        .enumerate()
        .map(|(i, w)| {
            w.ok_or_else(|| {
                Error::Unsupported(format!(
                    "`{}` is not generated by the chosen generators",
                    x.element_name(0, i)
                ))
            })
        })
        .collect()
}

fn sanitize(name: &str, ix: usize) -> String {
    let ok = name
        .chars()
        .enumerate()
        .all(|(i, c)| if i == 0 { c.is_alphabetic() || c == '_' } else { c.is_alphanumeric() || c == '_' || c == '\'' });
    if ok && !name.is_empty() {
        name.to_string()
    } else {
        format!("y{ix}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::{check_t_algebra, MonadSpec};
    use crate::samples;
    use crate::term::{parse_term, satisfies};

    fn mon(alg: &crate::algebra::FiniteAlgebra) -> crate::monad::TAlgebra {
        check_t_algebra(&MonadSpec::mon(), alg).unwrap()
    }

    #[test]
    fn trivial_variable_algebra_collapses_everything() {
        let x = samples::trivial_monoid();
        let e = EquationLike::equation(
            VariableObject::AlgebraVars(x),
            parse_term("1").unwrap(),
            parse_term("1").unwrap(),
        );
        let imp = equation_to_implication(&e, None).unwrap();
        for a in [samples::trivial_monoid(), samples::z2(), samples::u1(), samples::c3()] {
            assert!(satisfies(&mon(&a), &imp).unwrap().holds);
        }
    }

    #[test]
    fn translated_c3_equation_matches_direct_satisfaction() {
        let x = samples::c3();
        let e = EquationLike::equation(
            VariableObject::AlgebraVars(x),
            parse_term("a").unwrap(),
            parse_term("a2").unwrap(),
        );
        let imp = equation_to_implication(&e, None).unwrap();
        for a in [samples::trivial_monoid(), samples::z2(), samples::u1(), samples::c3(), samples::z3()]
        {
            let t = mon(&a);
            assert_eq!(
                satisfies(&t, &e).unwrap().holds,
                satisfies(&t, &imp).unwrap().holds,
                "mismatch on {:?}",
                a.elements(0)
            );
        }
    }

    #[test]
    fn generator_presentation_agrees_with_full_presentation() {
        let x = samples::c3();
        let e = EquationLike::equation(
            VariableObject::AlgebraVars(x),
            parse_term("a a").unwrap(),
            parse_term("a2").unwrap(),
        );
        let full = equation_to_implication(&e, None).unwrap();
        let gen = equation_to_implication(&e, Some(&["a"])).unwrap();
        for a in [samples::z2(), samples::u1(), samples::c3(), samples::z3()] {
            let t = mon(&a);
            assert_eq!(
                satisfies(&t, &full).unwrap().holds,
                satisfies(&t, &gen).unwrap().holds
            );
        }
    }

    #[test]
    fn non_generating_set_is_rejected() {
        let x = samples::c3();
        let e = EquationLike::equation(
            VariableObject::AlgebraVars(x),
            parse_term("a").unwrap(),
            parse_term("a").unwrap(),
        );
        assert!(equation_to_implication(&e, Some(&["a2"])).is_err());
    }
}
