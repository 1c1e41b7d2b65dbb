//! Concrete monads on concrete base varieties, and their finite algebras.
//!
//! A [`MonadSpec`] packages the induced signature of the monad's algebras,
//! the signature of the base variety (used for reducts, variable algebras
//! and split sections), the defining laws, and bookkeeping such as the
//! default variable sort. Available specs:
//!
//! | name      | base            | algebras                          |
//! |-----------|-----------------|-----------------------------------|
//! | `word`    | sets            | monoids                           |
//! | `ordword` | posets          | ordered monoids                   |
//! | `mon`     | monoids         | monoids (identity monad)          |
//! | `set`     | sets            | finite sets                       |
//! | `pos`     | posets          | finite posets                     |
//! | `wilke`   | sets            | two-sorted Wilke-style algebras   |
//! | `path`    | graphs          | finite categories                 |
//!
//! Laws are checked by exhaustive assignment. On guarded signatures a law
//! instance is checked only where both sides are defined; definedness
//! mismatches are caught by the source/target laws themselves.

mod dfa;
mod enumerate;
mod free;

pub use dfa::{parse_dfa, syntactic_monoid, transition_monoid, Dfa};
pub use enumerate::{
    enumerate_t_algebras, enumerate_t_algebras_up_to, AlgebraCache, EnumOptions,
};
pub use free::free_extension;

use crate::algebra::{tuples, FiniteAlgebra, OpDecl, Signature};
use crate::error::{Error, Result};
use crate::term::{Assignment, PiTerm};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseCategory {
    Set,
    Pos,
    Graph,
    MonBase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonadKind {
    Id,
    Word,
    Path,
    Wilke,
}

/// A universally quantified equation between signature terms.
#[derive(Debug, Clone, PartialEq)]
pub struct Law {
    pub name: String,
    pub vars: Vec<(String, usize)>,
    pub lhs: PiTerm,
    pub rhs: PiTerm,
}

/// Law families that cannot be written as a single equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtraLaw {
    /// `pow(s^n) = pow(s)` for every positive `n` (witnessed at `n` up to
    /// the carrier size, which covers all values of `s^n`)
    OmegaPowerStability,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MonadSpec {
    name: String,
    base: BaseCategory,
    kind: MonadKind,
    signature: Arc<Signature>,
    base_signature: Arc<Signature>,
    laws: Vec<Law>,
    extra: Vec<ExtraLaw>,
    requires_order: bool,
    default_sort: usize,
}

pub fn monoid_signature() -> Arc<Signature> {
    Arc::new(
        Signature::with_features(
            vec!["m".into()],
            vec![OpDecl::new("mul", vec![0, 0], 0), OpDecl::new("one", vec![], 0)],
            vec!["mul".into()],
            vec![],
        )
        .expect("monoid signature"),
    )
}

pub fn one_sort_signature(sort: &str) -> Arc<Signature> {
    Arc::new(Signature::new(vec![sort.to_string()], vec![]).expect("bare signature"))
}

pub fn wilke_signature() -> Arc<Signature> {
    Arc::new(
        Signature::with_features(
            vec!["plus".into(), "omega".into()],
            vec![
                OpDecl::new("dot", vec![0, 0], 0),
                OpDecl::new("mix", vec![0, 1], 1),
                OpDecl::new("pow", vec![0], 1),
            ],
            vec!["dot".into()],
            vec![],
        )
        .expect("wilke signature"),
    )
}

pub fn graph_signature() -> Arc<Signature> {
    Arc::new(
        Signature::new(
            vec!["ob".into(), "mor".into()],
            vec![OpDecl::new("src", vec![1], 0), OpDecl::new("tgt", vec![1], 0)],
        )
        .expect("graph signature"),
    )
}

pub fn category_signature() -> Arc<Signature> {
    Arc::new(
        Signature::with_features(
            vec!["ob".into(), "mor".into()],
            vec![
                OpDecl::new("src", vec![1], 0),
                OpDecl::new("tgt", vec![1], 0),
                OpDecl::new("id", vec![0], 1),
                OpDecl::new("comp", vec![1, 1], 1),
            ],
            vec!["comp".into()],
            vec![("comp".into(), "tgt".into(), "src".into())],
        )
        .expect("category signature"),
    )
}

fn v(name: &str) -> PiTerm {
    PiTerm::Var(name.to_string())
}

fn ap(op: &str, args: Vec<PiTerm>) -> PiTerm {
    PiTerm::Apply(op.to_string(), args)
}

fn monoid_laws() -> Vec<Law> {
    vec![
        Law {
            name: "associativity".into(),
            vars: vec![("x".into(), 0), ("y".into(), 0), ("z".into(), 0)],
            lhs: ap("mul", vec![ap("mul", vec![v("x"), v("y")]), v("z")]),
            rhs: ap("mul", vec![v("x"), ap("mul", vec![v("y"), v("z")])]),
        },
        Law {
            name: "left unit".into(),
            vars: vec![("x".into(), 0)],
            lhs: ap("mul", vec![ap("one", vec![]), v("x")]),
            rhs: v("x"),
        },
        Law {
            name: "right unit".into(),
            vars: vec![("x".into(), 0)],
            lhs: ap("mul", vec![v("x"), ap("one", vec![])]),
            rhs: v("x"),
        },
    ]
}

fn wilke_laws() -> Vec<Law> {
    vec![
        Law {
            name: "associativity".into(),
            vars: vec![("x".into(), 0), ("y".into(), 0), ("z".into(), 0)],
            lhs: ap("dot", vec![ap("dot", vec![v("x"), v("y")]), v("z")]),
            rhs: ap("dot", vec![v("x"), ap("dot", vec![v("y"), v("z")])]),
        },
        Law {
            name: "mixed associativity".into(),
            vars: vec![("x".into(), 0), ("y".into(), 0), ("w".into(), 1)],
            lhs: ap("mix", vec![v("x"), ap("mix", vec![v("y"), v("w")])]),
            rhs: ap("mix", vec![ap("dot", vec![v("x"), v("y")]), v("w")]),
        },
        Law {
            name: "coherence".into(),
            vars: vec![("x".into(), 0), ("y".into(), 0)],
            lhs: ap("mix", vec![v("x"), ap("pow", vec![ap("dot", vec![v("y"), v("x")])])]),
            rhs: ap("pow", vec![ap("dot", vec![v("x"), v("y")])]),
        },
    ]
}

fn category_laws() -> Vec<Law> {
    vec![
        Law {
            name: "source of identity".into(),
            vars: vec![("o".into(), 0)],
            lhs: ap("src", vec![ap("id", vec![v("o")])]),
            rhs: v("o"),
        },
        Law {
            name: "target of identity".into(),
            vars: vec![("o".into(), 0)],
            lhs: ap("tgt", vec![ap("id", vec![v("o")])]),
            rhs: v("o"),
        },
        Law {
            name: "source of composite".into(),
            vars: vec![("f".into(), 1), ("g".into(), 1)],
            lhs: ap("src", vec![ap("comp", vec![v("f"), v("g")])]),
            rhs: ap("src", vec![v("f")]),
        },
        Law {
            name: "target of composite".into(),
            vars: vec![("f".into(), 1), ("g".into(), 1)],
            lhs: ap("tgt", vec![ap("comp", vec![v("f"), v("g")])]),
            rhs: ap("tgt", vec![v("g")]),
        },
        Law {
            name: "left identity".into(),
            vars: vec![("f".into(), 1)],
            lhs: ap("comp", vec![ap("id", vec![ap("src", vec![v("f")])]), v("f")]),
            rhs: v("f"),
        },
        Law {
            name: "right identity".into(),
            vars: vec![("f".into(), 1)],
            lhs: ap("comp", vec![v("f"), ap("id", vec![ap("tgt", vec![v("f")])])]),
            rhs: v("f"),
        },
        Law {
            name: "associativity".into(),
            vars: vec![("f".into(), 1), ("g".into(), 1), ("h".into(), 1)],
            lhs: ap("comp", vec![ap("comp", vec![v("f"), v("g")]), v("h")]),
            rhs: ap("comp", vec![v("f"), ap("comp", vec![v("g"), v("h")])]),
        },
    ]
}

impl MonadSpec {
    pub fn word() -> Arc<Self> {
        Arc::new(MonadSpec {
            name: "word".into(),
            base: BaseCategory::Set,
            kind: MonadKind::Word,
            signature: monoid_signature(),
            base_signature: one_sort_signature("m"),
            laws: monoid_laws(),
            extra: vec![],
            requires_order: false,
            default_sort: 0,
        })
    }

    pub fn ordword() -> Arc<Self> {
        Arc::new(MonadSpec {
            name: "ordword".into(),
            base: BaseCategory::Pos,
            kind: MonadKind::Word,
            signature: monoid_signature(),
            base_signature: one_sort_signature("m"),
            laws: monoid_laws(),
            extra: vec![],
            requires_order: true,
            default_sort: 0,
        })
    }

    pub fn mon() -> Arc<Self> {
        Arc::new(MonadSpec {
            name: "mon".into(),
            base: BaseCategory::MonBase,
            kind: MonadKind::Id,
            signature: monoid_signature(),
            base_signature: monoid_signature(),
            laws: monoid_laws(),
            extra: vec![],
            requires_order: false,
            default_sort: 0,
        })
    }

    pub fn set() -> Arc<Self> {
        Arc::new(MonadSpec {
            name: "set".into(),
            base: BaseCategory::Set,
            kind: MonadKind::Id,
            signature: one_sort_signature("s"),
            base_signature: one_sort_signature("s"),
            laws: vec![],
            extra: vec![],
            requires_order: false,
            default_sort: 0,
        })
    }

    pub fn pos() -> Arc<Self> {
        Arc::new(MonadSpec {
            name: "pos".into(),
            base: BaseCategory::Pos,
            kind: MonadKind::Id,
            signature: one_sort_signature("s"),
            base_signature: one_sort_signature("s"),
            laws: vec![],
            extra: vec![],
            requires_order: true,
            default_sort: 0,
        })
    }

    pub fn wilke() -> Arc<Self> {
        Arc::new(MonadSpec {
            name: "wilke".into(),
            base: BaseCategory::Set,
            kind: MonadKind::Wilke,
            signature: wilke_signature(),
            base_signature: Arc::new(
                Signature::new(vec!["plus".into(), "omega".into()], vec![])
                    .expect("two-sorted set signature"),
            ),
            laws: wilke_laws(),
            extra: vec![ExtraLaw::OmegaPowerStability],
            requires_order: false,
            default_sort: 0,
        })
    }

    pub fn path() -> Arc<Self> {
        Arc::new(MonadSpec {
            name: "path".into(),
            base: BaseCategory::Graph,
            kind: MonadKind::Path,
            signature: category_signature(),
            base_signature: graph_signature(),
            laws: category_laws(),
            extra: vec![],
            requires_order: false,
            default_sort: 1,
        })
    }

    pub fn by_name(name: &str) -> Result<Arc<Self>> {
        match name {
            "word" => Ok(MonadSpec::word()),
            "ordword" => Ok(MonadSpec::ordword()),
            "mon" => Ok(MonadSpec::mon()),
            "set" => Ok(MonadSpec::set()),
            "pos" => Ok(MonadSpec::pos()),
            "wilke" => Ok(MonadSpec::wilke()),
            "path" => Ok(MonadSpec::path()),
            other => Err(Error::Unsupported(format!("unknown monad `{other}`"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn base(&self) -> BaseCategory {
        self.base
    }

    pub fn kind(&self) -> MonadKind {
        self.kind
    }

    pub fn signature(&self) -> &Arc<Signature> {
        &self.signature
    }

    pub fn base_signature(&self) -> &Arc<Signature> {
        &self.base_signature
    }

    pub fn laws(&self) -> &[Law] {
        &self.laws
    }

    pub fn requires_order(&self) -> bool {
        self.requires_order
    }

    pub fn default_sort(&self) -> usize {
        self.default_sort
    }

    /// Forget down to the base variety: keep carriers and order, keep only
    /// the base signature's operations.
    pub fn base_reduct(&self, a: &FiniteAlgebra) -> FiniteAlgebra {
        let op_map: Vec<usize> = self
            .base_signature
            .ops()
            .iter()
            .map(|op| self.signature.op_index(&op.name).expect("base op present"))
            .collect();
        a.reduct(self.base_signature.clone(), &op_map)
    }
}

/// A finite algebra certified against a monad's laws.
#[derive(Debug, Clone, PartialEq)]
pub struct TAlgebra {
    spec: Arc<MonadSpec>,
    algebra: FiniteAlgebra,
    certified: Vec<String>,
}

impl TAlgebra {
    pub fn spec(&self) -> &Arc<MonadSpec> {
        &self.spec
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn certified_laws(&self) -> &[String] {
        &self.certified
    }

    pub fn total_size(&self) -> usize {
        self.algebra.total_size()
    }
}

// law-side evaluation: None marks a guard-undefined subterm
fn eval_law_term(
    alg: &FiniteAlgebra,
    term: &PiTerm,
    asg: &Assignment,
) -> Result<Option<usize>> {
    match term {
        PiTerm::Var(name) => Ok(Some(asg.get(name)?.1)),
        PiTerm::Unit => {
            let op = alg
                .signature()
                .unit_op()
                .ok_or_else(|| Error::IllSorted("no constant for `1`".into()))?;
            Ok(Some(alg.apply(op, &[])))
        }
        PiTerm::Apply(name, args) => {
            let op = alg.signature().op_index(name)?;
            let mut vals = Vec::with_capacity(args.len());
            for a in args {
                match eval_law_term(alg, a, asg)? {
                    Some(x) => vals.push(x),
                    None => return Ok(None),
                }
            }
            if !alg.tuple_valid(op, &vals) {
                return Ok(None);
            }
            Ok(Some(alg.apply(op, &vals)))
        }
        other => Err(Error::IllSorted(format!("`{other}` cannot appear in a law"))),
    }
}

/// Exhaustively verify every law of the spec; returns the certified algebra
/// or the first violated law with a witness assignment.
pub fn check_t_algebra(spec: &Arc<MonadSpec>, alg: &FiniteAlgebra) -> Result<TAlgebra> {
    if alg.signature() != &spec.signature {
        return Err(Error::SignatureMismatch);
    }
    if spec.requires_order && !alg.is_ordered() {
        return Err(Error::Unordered);
    }
    if !spec.requires_order && alg.is_ordered() {
        return Err(Error::Unsupported(format!(
            "monad `{}` works with unordered algebras",
            spec.name
        )));
    }
    let mut certified = Vec::new();
    for law in &spec.laws {
        let dims: Vec<usize> = law.vars.iter().map(|&(_, s)| alg.size(s)).collect();
        for t in tuples(&dims) {
            let mut asg = Assignment::new();
            for ((name, sort), &elem) in law.vars.iter().zip(&t) {
                asg = asg.bind(name, *sort, elem);
            }
            let l = eval_law_term(alg, &law.lhs, &asg)?;
            let r = eval_law_term(alg, &law.rhs, &asg)?;
            if let (Some(l), Some(r)) = (l, r) {
                if l != r {
                    return Err(Error::LawViolation {
                        law: law.name.clone(),
                        witness: asg.display(alg).to_string(),
                    });
                }
            }
        }
        certified.push(law.name.clone());
    }
    for extra in &spec.extra {
        match extra {
            ExtraLaw::OmegaPowerStability => {
                let dot = alg.signature().op_index("dot")?;
                let pow = alg.signature().op_index("pow")?;
                let n = alg.size(0);
                for s in 0..n {
                    let target = alg.apply(pow, &[s]);
                    let mut power = s;
                    for _ in 1..=n {
                        power = alg.apply(dot, &[power, s]);
                        if alg.apply(pow, &[power]) != target {
                            return Err(Error::LawViolation {
                                law: "omega-power stability".into(),
                                witness: format!("s -> {}", alg.element_name(0, s)),
                            });
                        }
                    }
                }
                certified.push("omega-power stability".into());
            }
        }
    }
    Ok(TAlgebra { spec: spec.clone(), algebra: alg.clone(), certified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn z2_is_a_word_algebra() {
        let spec = MonadSpec::word();
        let t = check_t_algebra(&spec, &samples::z2()).unwrap();
        assert_eq!(t.certified_laws().len(), 3);
    }

    #[test]
    fn non_associative_table_is_rejected_with_witness() {
        // exhaustive triples find a witness for the associativity failure
        let bad = samples::non_associative_monoid_candidate();
        let spec = MonadSpec::word();
        match check_t_algebra(&spec, &bad) {
            Err(Error::LawViolation { law, witness }) => {
                assert_eq!(law, "associativity");
                assert!(!witness.is_empty());
            }
            other => panic!("expected law violation, got {other:?}"),
        }
    }

    #[test]
    fn hand_built_wilke_algebra_is_valid() {
        let spec = MonadSpec::wilke();
        let w = samples::wilke_two_element();
        check_t_algebra(&spec, &w).unwrap();
    }

    #[test]
    fn planted_wilke_violation_is_caught() {
        let spec = MonadSpec::wilke();
        let bad = samples::wilke_broken();
        match check_t_algebra(&spec, &bad) {
            Err(Error::LawViolation { .. }) => {}
            other => panic!("expected law violation, got {other:?}"),
        }
    }

    #[test]
    fn one_object_categories_are_path_algebras() {
        let spec = MonadSpec::path();
        for m in [samples::z2(), samples::u1(), samples::c3()] {
            let cat = samples::one_object_category(&m);
            check_t_algebra(&spec, &cat).unwrap();
        }
    }

    #[test]
    fn base_reduct_forgets_structure() {
        let spec = MonadSpec::word();
        let r = spec.base_reduct(&samples::z2());
        assert!(r.signature().ops().is_empty());
        assert_eq!(r.total_size(), 2);

        let path = MonadSpec::path();
        let cat = samples::one_object_category(&samples::z2());
        let g = path.base_reduct(&cat);
        assert_eq!(g.signature().ops().len(), 2);
    }
}
