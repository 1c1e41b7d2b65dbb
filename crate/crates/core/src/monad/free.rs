//! Free-extension evaluators: a base map from variables into an algebra
//! extends uniquely to terms, homomorphically for the designated product.

use super::TAlgebra;
use crate::algebra::check_homomorphism;
use crate::error::{Error, Result};
use crate::term::{Assignment, Evaluator, VariableObject};

/// Turn a variable-to-element map into an evaluator on π-terms.
///
/// For free variables the images only need to land in the right sorts; for
/// an algebra of variables the map must be a morphism of the base variety
/// (monotone map, graph morphism, monoid homomorphism — whatever the base
/// demands).
pub fn free_extension<'a>(
    talg: &'a TAlgebra,
    vars: &VariableObject,
    images: &[(&str, &str)],
) -> Result<(Evaluator<'a>, Assignment)> {
    let alg = talg.algebra();
    let mut asg = Assignment::new();
    match vars {
        VariableObject::FreeVars(vs) => {
            for (name, sort) in vs {
                let image = images
                    .iter()
                    .find(|(n, _)| n == name)
                    .ok_or_else(|| Error::MissingVariable(name.clone()))?
                    .1;
                let elem = alg.element_index(*sort, image)?;
                asg = asg.bind(name, *sort, elem);
            }
        }
        VariableObject::AlgebraVars(x) => {
            if x.signature() != talg.spec().base_signature() {
                return Err(Error::SignatureMismatch);
            }
            let base = talg.spec().base_reduct(alg);
            let nsorts = x.signature().sorts().len();
            let mut maps: Vec<Vec<usize>> = Vec::with_capacity(nsorts);
            for s in 0..nsorts {
                let mut m = Vec::with_capacity(x.size(s));
                for i in 0..x.size(s) {
                    let name = x.element_name(s, i);
                    let image = images
                        .iter()
                        .find(|(n, _)| *n == name)
                        .ok_or_else(|| Error::MissingVariable(name.to_string()))?
                        .1;
                    m.push(base.element_index(s, image)?);
                }
                maps.push(m);
            }
            if let Err(v) = check_homomorphism(&maps, x, &base)? {
                return Err(Error::Signature(format!(
                    "assignment does not respect the variable algebra: {v}"
                )));
            }
            for s in 0..nsorts {
                for i in 0..x.size(s) {
                    asg = asg.bind(x.element_name(s, i), s, maps[s][i]);
                }
            }
        }
    }
    Ok((Evaluator::new(alg), asg))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monad::{check_t_algebra, MonadSpec};
    use crate::samples;
    use crate::term::parse_term;

    #[test]
    fn word_extension_is_homomorphic() {
        let spec = MonadSpec::word();
        let t = check_t_algebra(&spec, &samples::z2()).unwrap();
        let vars = VariableObject::free(&["x"], 0);
        let (ev, asg) = free_extension(&t, &vars, &[("x", "g")]).unwrap();
        // xx evaluates to g*g = 1
        let xx = parse_term("x x").unwrap();
        assert_eq!(ev.eval(&xx, &asg).unwrap().1, 0);
        // empty word evaluates to the unit
        let unit = parse_term("1").unwrap();
        assert_eq!(ev.eval(&unit, &asg).unwrap().1, 0);
    }

    #[test]
    fn path_extension_composes_loops() {
        let spec = MonadSpec::path();
        let cat = samples::one_object_category(&samples::c3());
        let t = check_t_algebra(&spec, &cat).unwrap();
        let vars = VariableObject::AlgebraVars(samples::loop_graph());
        let (ev, asg) = free_extension(&t, &vars, &[("e", "a"), ("v", "o")]).unwrap();
        let ee = parse_term("e e").unwrap();
        let mor = cat.signature().sort_index("mor").unwrap();
        let a2 = cat.element_index(mor, "a2").unwrap();
        assert_eq!(ev.eval(&ee, &asg).unwrap(), (mor, a2));
    }

    #[test]
    fn non_graph_morphism_assignment_is_rejected() {
        // a two-object category: e must land on an endomorphism, v on its object
        let spec = MonadSpec::path();
        let cat = samples::one_object_category(&samples::z2());
        let t = check_t_algebra(&spec, &cat).unwrap();
        let vars = VariableObject::AlgebraVars(samples::loop_graph());
        // v names a missing object
        assert!(free_extension(&t, &vars, &[("e", "g"), ("v", "missing")]).is_err());
    }
}
