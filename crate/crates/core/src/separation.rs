//! Bounded separation: decide π-term equality "up to size n" by searching
//! for a smallest finite algebra (and interpretation) telling two terms
//! apart. Searches by algebra size, then canonical enumeration order, then
//! canonical assignment order, so the returned witness is well-defined.

use crate::algebra::subalgebra_generated;
use crate::error::{Error, Result};
use crate::monad::{AlgebraCache, MonadSpec, TAlgebra};
use crate::term::{
    free_assignments, term_sort, Assignment, Evaluator, PiTerm, VariableObject,
};
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct SeparationWitness {
    pub algebra: TAlgebra,
    pub assignment: Assignment,
    /// evaluations of the two terms under the assignment
    pub left: String,
    pub right: String,
}

fn free_vars_of(u: &PiTerm, v: &PiTerm, spec: &MonadSpec) -> VariableObject {
    let mut names: Vec<&str> = u.variables();
    names.extend(v.variables());
    names.sort_unstable();
    names.dedup();
    VariableObject::free(&names, spec.default_sort())
}

/// Variables shared by two terms, each at the spec's default sort.
pub fn default_vars(u: &PiTerm, v: &PiTerm, spec: &MonadSpec) -> VariableObject {
    free_vars_of(u, v, spec)
}

/// Smallest-size witness `(A, h)` with distinct evaluations of `u` and
/// `v`, or `None` when every algebra of size at most `n` identifies them.
pub fn separate(
    u: &PiTerm,
    v: &PiTerm,
    spec: &Arc<MonadSpec>,
    vars: &VariableObject,
    n: usize,
    cache: &AlgebraCache,
) -> Result<Option<SeparationWitness>> {
    let us = term_sort(u, vars, spec.signature())?;
    let vs = term_sort(v, vars, spec.signature())?;
    if us != vs {
        return Err(Error::IllSorted(format!("`{u}` and `{v}` live in different sorts")));
    }
    let free = match vars {
        VariableObject::FreeVars(fs) => fs.clone(),
        VariableObject::AlgebraVars(_) => {
            return Err(Error::Unsupported(
                "separation works over free variables".into(),
            ))
        }
    };
    for size in 1..=n {
        for talg in cache.exact(spec, size)?.iter() {
            let ev = Evaluator::new(talg.algebra());
            for asg in free_assignments(&free, talg.algebra()) {
                let (_, lu) = ev.eval(u, &asg)?;
                let (_, lv) = ev.eval(v, &asg)?;
                if lu != lv {
                    return Ok(Some(SeparationWitness {
                        left: talg.algebra().element_name(us, lu).to_string(),
                        right: talg.algebra().element_name(us, lv).to_string(),
                        algebra: talg.clone(),
                        assignment: asg,
                    }));
                }
            }
        }
    }
    Ok(None)
}

/// Equality of the two terms in every algebra of the spec with size at
/// most `n`.
pub fn equivalent_up_to(
    u: &PiTerm,
    v: &PiTerm,
    spec: &Arc<MonadSpec>,
    vars: &VariableObject,
    n: usize,
    cache: &AlgebraCache,
) -> Result<bool> {
    Ok(separate(u, v, spec, vars, n, cache)?.is_none())
}

/// The bounded stages of the finite-quotient diagram over the variables:
/// all pairs `(A, h)` with `A` of size at most `n` and `h` an assignment
/// whose induced homomorphism is surjective (the image subalgebra is all
/// of `A`).
pub fn finite_quotients(
    vars: &VariableObject,
    spec: &Arc<MonadSpec>,
    n: usize,
    cache: &AlgebraCache,
) -> Result<Vec<(TAlgebra, Assignment)>> {
    let free = match vars {
        VariableObject::FreeVars(fs) => fs.clone(),
        VariableObject::AlgebraVars(_) => {
            return Err(Error::Unsupported(
                "finite quotient stages are taken over free variables".into(),
            ))
        }
    };
    let mut out = Vec::new();
    for size in 1..=n {
        for talg in cache.exact(spec, size)?.iter() {
            for asg in free_assignments(&free, talg.algebra()) {
                let nsorts = spec.signature().sorts().len();
                let mut seed: Vec<Vec<usize>> = vec![Vec::new(); nsorts];
                for (_, (s, e)) in asg.iter() {
                    seed[s].push(e);
                }
                match subalgebra_generated(talg.algebra(), &seed) {
                    Ok(emb) => {
                        if emb.source().sizes() == talg.algebra().sizes() {
                            out.push((talg.clone(), asg));
                        }
                    }
                    Err(Error::Validation(_)) => {} // image misses a sort entirely
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::isomorphic;
    use crate::samples;
    use crate::term::parse_term;

    fn setup() -> (Arc<MonadSpec>, AlgebraCache) {
        (MonadSpec::word(), AlgebraCache::new())
    }

    #[test]
    fn aperiodicity_terms_are_separated_by_z2_and_nothing_smaller() {
        let (spec, cache) = setup();
        let u = parse_term("x^pi").unwrap();
        let v = parse_term("x^pi x").unwrap();
        let vars = default_vars(&u, &v, &spec);
        let w = separate(&u, &v, &spec, &vars, 2, &cache).unwrap().unwrap();
        assert_eq!(w.algebra.total_size(), 2);
        assert!(isomorphic(w.algebra.algebra(), &samples::z2()).is_some());
        // no size-1 witness: re-run with bound 1
        assert!(separate(&u, &v, &spec, &vars, 1, &cache).unwrap().is_none());
    }

    #[test]
    fn pi_power_is_idempotent_everywhere() {
        let (spec, cache) = setup();
        let u = parse_term("x^pi x^pi").unwrap();
        let v = parse_term("x^pi").unwrap();
        let vars = default_vars(&u, &v, &spec);
        assert!(equivalent_up_to(&u, &v, &spec, &vars, 4, &cache).unwrap());
    }

    #[test]
    fn pi_power_differs_from_unit_in_u1() {
        let (spec, cache) = setup();
        let u = parse_term("x^pi").unwrap();
        let v = parse_term("1").unwrap();
        let vars = default_vars(&u, &v, &spec);
        let w = separate(&u, &v, &spec, &vars, 2, &cache).unwrap().unwrap();
        assert!(isomorphic(w.algebra.algebra(), &samples::u1()).is_some());
        assert_eq!((w.left.as_str(), w.right.as_str()), ("m1", "1"));
    }

    #[test]
    fn commutativity_needs_a_three_element_witness() {
        let (spec, cache) = setup();
        let u = parse_term("x y").unwrap();
        let v = parse_term("y x").unwrap();
        let vars = default_vars(&u, &v, &spec);
        // all monoids with at most two elements are commutative
        assert!(separate(&u, &v, &spec, &vars, 2, &cache).unwrap().is_none());
        let w = separate(&u, &v, &spec, &vars, 3, &cache).unwrap().unwrap();
        assert_eq!(w.algebra.total_size(), 3);
    }

    #[test]
    fn quotient_stages_for_one_variable_at_two() {
        let (spec, cache) = setup();
        let vars = VariableObject::free(&["x"], 0);
        let stages = finite_quotients(&vars, &spec, 2, &cache).unwrap();
        // trivial stage plus (Z2, x -> g) and (U1, x -> 0); (U1, x -> 1)
        // is excluded because its image is only the unit
        assert_eq!(stages.len(), 3);
        assert_eq!(stages[0].0.total_size(), 1);
        let two: Vec<&(TAlgebra, Assignment)> =
            stages.iter().filter(|(t, _)| t.total_size() == 2).collect();
        assert_eq!(two.len(), 2);
        for (t, asg) in two {
            let (_, e) = asg.get("x").unwrap();
            assert_ne!(t.algebra().element_name(0, e), "1");
        }
    }

    #[test]
    fn witnesses_remain_witnesses_as_the_bound_grows() {
        let (spec, cache) = setup();
        let u = parse_term("x^pi").unwrap();
        let v = parse_term("x^pi x").unwrap();
        let vars = default_vars(&u, &v, &spec);
        for n in 2..=4 {
            assert!(!equivalent_up_to(&u, &v, &spec, &vars, n, &cache).unwrap());
        }
    }
}
