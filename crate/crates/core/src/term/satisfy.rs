//! Satisfaction of equations, inequations and implications in a finite
//! algebra, quantified over all interpretations of the variables.

use super::eval::{algebra_assignments, free_assignments, Assignment, Evaluator};
use super::{term_sort, EquationLike, PiTerm, RelKind, StatementBody, VariableObject};
use crate::error::{Error, Result};
use crate::monad::TAlgebra;

/// Outcome of a satisfaction check; on failure the lexicographically first
/// failing assignment is reported.
#[derive(Debug, Clone)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Assignment>,
}

impl Verdict {
    fn holds() -> Self {
        Verdict { holds: true, witness: None }
    }

    fn fails(witness: Assignment) -> Self {
        Verdict { holds: false, witness: Some(witness) }
    }
}

fn check_rel(
    ev: &Evaluator,
    lhs: &PiTerm,
    rhs: &PiTerm,
    kind: RelKind,
    asg: &Assignment,
) -> Result<bool> {
    let (ls, l) = ev.eval(lhs, asg)?;
    let (rs, r) = ev.eval(rhs, asg)?;
    if ls != rs {
        return Err(Error::IllSorted("relation across different sorts".to_string()));
    }
    match kind {
        RelKind::Eq => Ok(l == r),
        RelKind::Le => {
            if !ev.algebra().is_ordered() {
                return Err(Error::Unordered);
            }
            Ok(ev.algebra().leq(ls, l, r))
        }
    }
}

/// Does the algebra satisfy the statement? Quantifies over all assignments
/// of the variables: arbitrary sorted maps for free variables, morphisms of
/// the base variety for an algebra of variables. Implications check the
/// conclusion only where every premise holds.
pub fn satisfies(talg: &TAlgebra, e: &EquationLike) -> Result<Verdict> {
    let spec = talg.spec();
    let sig = spec.signature();
    // static checks: well-sortedness, matching sorts, order availability
    let rels: Vec<(&PiTerm, &PiTerm, RelKind)> = match &e.body {
        StatementBody::Equation(l, r) => vec![(l, r, RelKind::Eq)],
        StatementBody::Inequation(l, r) => vec![(l, r, RelKind::Le)],
        StatementBody::Implication { premises, conclusion } => {
            let mut v: Vec<(&PiTerm, &PiTerm, RelKind)> =
                premises.iter().map(|(l, r, k)| (l, r, *k)).collect();
            v.push((&conclusion.0, &conclusion.1, conclusion.2));
            v
        }
    };
    for (l, r, k) in &rels {
        let ls = term_sort(l, &e.vars, sig)?;
        let rs = term_sort(r, &e.vars, sig)?;
        if ls != rs {
            return Err(Error::IllSorted(format!(
                "`{l}` and `{r}` live in different sorts"
            )));
        }
        if *k == RelKind::Le && !talg.algebra().is_ordered() {
            return Err(Error::Unordered);
        }
    }

    let ev = Evaluator::new(talg.algebra());
    let assignments: Vec<Assignment> = match &e.vars {
        VariableObject::FreeVars(vs) => free_assignments(vs, talg.algebra()).collect(),
        VariableObject::AlgebraVars(x) => {
            if x.signature() != spec.base_signature() {
                return Err(Error::SignatureMismatch);
            }
            let base = spec.base_reduct(talg.algebra());
            algebra_assignments(x, &base)?
        }
    };

    for asg in assignments {
        match &e.body {
            StatementBody::Equation(l, r) => {
                if !check_rel(&ev, l, r, RelKind::Eq, &asg)? {
                    return Ok(Verdict::fails(asg));
                }
            }
            StatementBody::Inequation(l, r) => {
                if !check_rel(&ev, l, r, RelKind::Le, &asg)? {
                    return Ok(Verdict::fails(asg));
                }
            }
            StatementBody::Implication { premises, conclusion } => {
                let mut applicable = true;
                for (l, r, k) in premises {
                    if !check_rel(&ev, l, r, *k, &asg)? {
                        applicable = false;
                        break;
                    }
                }
                if applicable && !check_rel(&ev, &conclusion.0, &conclusion.1, conclusion.2, &asg)?
                {
                    return Ok(Verdict::fails(asg));
                }
            }
        }
    }
    Ok(Verdict::holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::{check_t_algebra, MonadSpec};
    use crate::samples;
    use crate::term::parse_term;

    fn word(alg: &crate::algebra::FiniteAlgebra) -> TAlgebra {
        check_t_algebra(&MonadSpec::word(), alg).unwrap()
    }

    fn eq(vars: &VariableObject, l: &str, r: &str) -> EquationLike {
        EquationLike::equation(vars.clone(), parse_term(l).unwrap(), parse_term(r).unwrap())
    }

    #[test]
    fn z2_satisfies_pi_power_equals_unit() {
        // both assignments of x give 1
        let vars = VariableObject::free(&["x"], 0);
        let verdict = satisfies(&word(&samples::z2()), &eq(&vars, "x^pi", "1")).unwrap();
        assert!(verdict.holds);
    }

    #[test]
    fn z2_fails_aperiodicity_with_witness_g() {
        let vars = VariableObject::free(&["x"], 0);
        let z2 = samples::z2();
        let verdict = satisfies(&word(&z2), &eq(&vars, "x^pi x", "x^pi")).unwrap();
        assert!(!verdict.holds);
        let w = verdict.witness.unwrap();
        assert_eq!(w.display(&z2).to_string(), "x -> g");
    }

    #[test]
    fn trivial_units_implication_separates_c3_from_z2() {
        let vars = VariableObject::free(&["x"], 0);
        let imp = EquationLike {
            vars: vars.clone(),
            body: StatementBody::Implication {
                premises: vec![(
                    parse_term("x^pi").unwrap(),
                    parse_term("1").unwrap(),
                    RelKind::Eq,
                )],
                conclusion: (parse_term("x").unwrap(), parse_term("1").unwrap(), RelKind::Eq),
            },
        };
        assert!(satisfies(&word(&samples::c3()), &imp).unwrap().holds);
        let z2 = samples::z2();
        let verdict = satisfies(&word(&z2), &imp).unwrap();
        assert!(!verdict.holds);
        assert_eq!(verdict.witness.unwrap().display(&z2).to_string(), "x -> g");
    }

    #[test]
    fn discrete_posets_satisfy_the_symmetry_implication_and_chains_do_not() {
        let spec = MonadSpec::pos();
        let vars = VariableObject::free(&["u", "v"], 0);
        let imp = EquationLike {
            vars,
            body: StatementBody::Implication {
                premises: vec![(
                    parse_term("v").unwrap(),
                    parse_term("u").unwrap(),
                    RelKind::Le,
                )],
                conclusion: (parse_term("u").unwrap(), parse_term("v").unwrap(), RelKind::Le),
            },
        };
        let discrete = check_t_algebra(&spec, &samples::discrete_poset(2)).unwrap();
        assert!(satisfies(&discrete, &imp).unwrap().holds);

        let chain = samples::chain_poset(2);
        let chain_t = check_t_algebra(&spec, &chain).unwrap();
        let verdict = satisfies(&chain_t, &imp).unwrap();
        assert!(!verdict.holds);
        assert_eq!(
            verdict.witness.unwrap().display(&chain).to_string(),
            "u -> 1, v -> 0"
        );
    }

    #[test]
    fn inequation_on_unordered_algebra_is_an_error() {
        let vars = VariableObject::free(&["x"], 0);
        let ineq = EquationLike::inequation(
            vars,
            parse_term("x").unwrap(),
            parse_term("1").unwrap(),
        );
        assert!(matches!(
            satisfies(&word(&samples::z2()), &ineq),
            Err(Error::Unordered)
        ));
    }

    #[test]
    fn algebra_vars_quantify_over_monoid_homomorphisms() {
        // over the identity monad on monoids, variables from Z2 interpret
        // via monoid homomorphisms Z2 -> A; in U1 only the trivial one
        // exists, so g = 1 holds there while it fails with free variables
        let spec = MonadSpec::mon();
        let u1 = check_t_algebra(&spec, &samples::u1()).unwrap();
        let vars = VariableObject::AlgebraVars(samples::z2());
        let e = eq(&vars, "g", "1");
        assert!(satisfies(&u1, &e).unwrap().holds);

        let z2 = check_t_algebra(&spec, &samples::z2()).unwrap();
        assert!(!satisfies(&z2, &e).unwrap().holds);
    }

    #[test]
    fn empty_premises_reduce_to_the_bare_equation() {
        let vars = VariableObject::free(&["x"], 0);
        let bare = eq(&vars, "x x", "x");
        let imp = EquationLike {
            vars: vars.clone(),
            body: StatementBody::Implication {
                premises: vec![],
                conclusion: (
                    parse_term("x x").unwrap(),
                    parse_term("x").unwrap(),
                    RelKind::Eq,
                ),
            },
        };
        for alg in [samples::z2(), samples::u1(), samples::c3()] {
            let t = word(&alg);
            assert_eq!(
                satisfies(&t, &bare).unwrap().holds,
                satisfies(&t, &imp).unwrap().holds
            );
        }
    }
}
