//! Small stock algebras used in examples, tests and documentation.

use crate::algebra::{AlgebraBuilder, FiniteAlgebra, Signature};
use std::sync::Arc;

pub use crate::monad::{category_signature, graph_signature, monoid_signature, one_sort_signature};

/// Build a monoid from a multiplication table; `names[0]` need not be the
/// unit, but the table must have one.
pub fn monoid_from_table<const N: usize>(names: &[&str; N], rows: &[[&str; N]; N]) -> FiniteAlgebra {
    let mut b = AlgebraBuilder::new(monoid_signature()).elements("m", names).unwrap();
    // locate the unit: the row and column that act as identity
    let unit = (0..N)
        .find(|&i| (0..N).all(|j| rows[i][j] == names[j] && rows[j][i] == names[j]))
        .expect("table has a unit");
    b = b.set("one", &[], names[unit]).unwrap();
    for (i, row) in rows.iter().enumerate() {
        for (j, r) in row.iter().enumerate() {
            b = b.set("mul", &[names[i], names[j]], r).unwrap();
        }
    }
    b.build().expect("valid monoid table")
}

/// The one-element monoid.
pub fn trivial_monoid() -> FiniteAlgebra {
    monoid_from_table(&["1"], &[["1"]])
}

/// The two-element group: 1, g with g*g = 1.
pub fn z2() -> FiniteAlgebra {
    monoid_from_table(&["1", "g"], &[["1", "g"], ["g", "1"]])
}

/// The two-element meet monoid: 1, 0 with 0*0 = 0.
pub fn u1() -> FiniteAlgebra {
    monoid_from_table(&["1", "0"], &[["1", "0"], ["0", "0"]])
}

/// Three elements 1, a, a2 with a^3 = a: the powers of `a` cycle with
/// period two and never return to the unit, so {a, a2} is a copy of Z2
/// with identity a2 sitting below a fresh unit.
pub fn c3() -> FiniteAlgebra {
    monoid_from_table(
        &["1", "a", "a2"],
        &[["1", "a", "a2"], ["a", "a2", "a"], ["a2", "a", "a2"]],
    )
}

/// The cyclic group of order three.
pub fn z3() -> FiniteAlgebra {
    monoid_from_table(
        &["1", "a", "a2"],
        &[["1", "a", "a2"], ["a", "a2", "1"], ["a2", "1", "a"]],
    )
}

/// The two-element group with a fresh identity adjoined: {1, e, g} where
/// {e, g} is a copy of Z2 with unit e. Group-bearing yet unit-trivial;
/// isomorphic to [`c3`] under a |-> g, a2 |-> e.
pub fn z2_adjoined_identity() -> FiniteAlgebra {
    monoid_from_table(
        &["1", "e", "g"],
        &[["1", "e", "g"], ["e", "e", "g"], ["g", "g", "e"]],
    )
}

/// A two-element table that is not associative: (x x) x = x but x (x x) = y.
pub fn non_associative_two() -> FiniteAlgebra {
    let sig = Arc::new(
        Signature::with_features(
            vec!["m".into()],
            vec![crate::algebra::OpDecl::new("mul", vec![0, 0], 0)],
            vec!["mul".into()],
            vec![],
        )
        .unwrap(),
    );
    AlgebraBuilder::new(sig)
        .elements("m", &["x", "y"])
        .unwrap()
        .set("mul", &["x", "x"], "y")
        .unwrap()
        .set("mul", &["x", "y"], "x")
        .unwrap()
        .set("mul", &["y", "x"], "x")
        .unwrap()
        .set("mul", &["y", "y"], "x")
        .unwrap()
        .build()
        .unwrap()
}

/// A table over the monoid signature whose `mul` is not associative;
/// useful for exercising the law checker.
pub fn non_associative_monoid_candidate() -> FiniteAlgebra {
    AlgebraBuilder::new(monoid_signature())
        .elements("m", &["1", "x", "y"])
        .unwrap()
        .set("one", &[], "1")
        .unwrap()
        .set("mul", &["1", "1"], "1")
        .unwrap()
        .set("mul", &["1", "x"], "x")
        .unwrap()
        .set("mul", &["1", "y"], "y")
        .unwrap()
        .set("mul", &["x", "1"], "x")
        .unwrap()
        .set("mul", &["y", "1"], "y")
        .unwrap()
        .set("mul", &["x", "x"], "y")
        .unwrap()
        .set("mul", &["x", "y"], "y")
        .unwrap()
        .set("mul", &["y", "x"], "x")
        .unwrap()
        .set("mul", &["y", "y"], "y")
        .unwrap()
        .build()
        .unwrap()
}

/// Discrete poset on `n` points (identity-monad algebra over posets).
pub fn discrete_poset(n: usize) -> FiniteAlgebra {
    let sig = one_sort_signature("s");
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    AlgebraBuilder::new(sig)
        .elements("s", &names)
        .unwrap()
        .ordered()
        .build()
        .unwrap()
}

/// Chain 0 < 1 < ... < n-1.
pub fn chain_poset(n: usize) -> FiniteAlgebra {
    let sig = one_sort_signature("s");
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let names: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut b = AlgebraBuilder::new(sig).elements("s", &names).unwrap().ordered();
    for i in 0..n.saturating_sub(1) {
        b = b.order_pair(&i.to_string(), &(i + 1).to_string()).unwrap();
    }
    b.build().unwrap()
}

/// U1 with the order 0 <= 1 (`up`) or 1 <= 0; both are ordered monoids.
pub fn ordered_u1(up: bool) -> FiniteAlgebra {
    let mut b = AlgebraBuilder::new(monoid_signature())
        .elements("m", &["1", "0"])
        .unwrap()
        .set("one", &[], "1")
        .unwrap()
        .set("mul", &["1", "1"], "1")
        .unwrap()
        .set("mul", &["1", "0"], "0")
        .unwrap()
        .set("mul", &["0", "1"], "0")
        .unwrap()
        .set("mul", &["0", "0"], "0")
        .unwrap();
    b = if up { b.order_pair("0", "1").unwrap() } else { b.order_pair("1", "0").unwrap() };
    b.build().unwrap()
}

/// Z2 with the discrete order: the only order making its product monotone.
pub fn ordered_z2_discrete() -> FiniteAlgebra {
    AlgebraBuilder::new(monoid_signature())
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
        .set("mul", &["g", "g"], "1")
        .unwrap()
        .ordered()
        .build()
        .unwrap()
}

/// Two-sorted Wilke-style algebra: finite part {1, b} with b*b = b, omega
/// part {fin, inf}, mix(s, w) = w, pow(1) = fin, pow(b) = inf.
pub fn wilke_two_element() -> FiniteAlgebra {
    AlgebraBuilder::new(crate::monad::wilke_signature())
        .elements("plus", &["1", "b"])
        .unwrap()
        .elements("omega", &["fin", "inf"])
        .unwrap()
        .set("dot", &["1", "1"], "1")
        .unwrap()
        .set("dot", &["1", "b"], "b")
        .unwrap()
        .set("dot", &["b", "1"], "b")
        .unwrap()
        .set("dot", &["b", "b"], "b")
        .unwrap()
        .set("mix", &["1", "fin"], "fin")
        .unwrap()
        .set("mix", &["1", "inf"], "inf")
        .unwrap()
        .set("mix", &["b", "fin"], "fin")
        .unwrap()
        .set("mix", &["b", "inf"], "inf")
        .unwrap()
        .set("pow", &["1"], "fin")
        .unwrap()
        .set("pow", &["b"], "inf")
        .unwrap()
        .build()
        .unwrap()
}

/// A second hand-built Wilke-style algebra: one-element finite part acting
/// on a two-element omega part.
pub fn wilke_single_plus() -> FiniteAlgebra {
    AlgebraBuilder::new(crate::monad::wilke_signature())
        .elements("plus", &["s"])
        .unwrap()
        .elements("omega", &["w1", "w2"])
        .unwrap()
        .set("dot", &["s", "s"], "s")
        .unwrap()
        .set("mix", &["s", "w1"], "w1")
        .unwrap()
        .set("mix", &["s", "w2"], "w2")
        .unwrap()
        .set("pow", &["s"], "w1")
        .unwrap()
        .build()
        .unwrap()
}

/// `wilke_two_element` with a planted mixed-associativity violation:
/// mix(1, mix(b, fin)) lands on fin while mix(1*b, fin) lands on inf.
pub fn wilke_broken() -> FiniteAlgebra {
    AlgebraBuilder::new(crate::monad::wilke_signature())
        .elements("plus", &["1", "b"])
        .unwrap()
        .elements("omega", &["fin", "inf"])
        .unwrap()
        .set("dot", &["1", "1"], "1")
        .unwrap()
        .set("dot", &["1", "b"], "b")
        .unwrap()
        .set("dot", &["b", "1"], "b")
        .unwrap()
        .set("dot", &["b", "b"], "b")
        .unwrap()
        .set("mix", &["1", "fin"], "fin")
        .unwrap()
        .set("mix", &["1", "inf"], "fin") // breaks mix(1, inf) = inf? no: breaks coherence below
        .unwrap()
        .set("mix", &["b", "fin"], "inf")
        .unwrap()
        .set("mix", &["b", "inf"], "inf")
        .unwrap()
        .set("pow", &["1"], "fin")
        .unwrap()
        .set("pow", &["b"], "fin")
        .unwrap()
        .build()
        .unwrap()
}

/// One-object category whose endomorphisms are the given monoid.
pub fn one_object_category(monoid: &FiniteAlgebra) -> FiniteAlgebra {
    let sig = category_signature();
    let names: Vec<&str> = (0..monoid.size(0)).map(|i| monoid.element_name(0, i)).collect();
    let mul = monoid.signature().op_index("mul").unwrap();
    let one = monoid.signature().op_index("one").unwrap();
    let mut b = AlgebraBuilder::new(sig)
        .elements("ob", &["o"])
        .unwrap()
        .elements("mor", &names)
        .unwrap()
        .set("id", &["o"], monoid.element_name(0, monoid.apply(one, &[])))
        .unwrap();
    for (i, n) in names.iter().enumerate() {
        b = b.set("src", &[n], "o").unwrap().set("tgt", &[n], "o").unwrap();
        for (j, m) in names.iter().enumerate() {
            let r = monoid.element_name(0, monoid.apply(mul, &[i, j]));
            b = b.set("comp", &[n, m], r).unwrap();
        }
    }
    b.build().unwrap()
}

/// One node with one loop, over the graph signature; the standard variable
/// object for endomorphism equations.
pub fn loop_graph() -> FiniteAlgebra {
    AlgebraBuilder::new(graph_signature())
        .elements("ob", &["v"])
        .unwrap()
        .elements("mor", &["e"])
        .unwrap()
        .set("src", &["e"], "v")
        .unwrap()
        .set("tgt", &["e"], "v")
        .unwrap()
        .build()
        .unwrap()
}

/// The underlying one-sorted set of a monoid, as a `word`-base variable
/// algebra (no operations).
pub fn base_set(names: &[&str]) -> FiniteAlgebra {
    AlgebraBuilder::new(one_sort_signature("m"))
        .elements("m", names)
        .unwrap()
        .build()
        .unwrap()
}
