//! Cross-module invariants, exhaustive at small sizes and property-based
//! where a random model is the better oracle.

use finalg::algebra::{
    congruence_closure, enumerate_morphisms, find_section, hom_theorem_factor,
    image_factorization, isomorphic, parse_algebra, print_algebra, product, quotient,
    FactorResult,
};
use finalg::monad::{check_t_algebra, AlgebraCache, MonadSpec};
use finalg::samples;
use finalg::separation::{default_vars, finite_quotients, separate};
use finalg::term::{
    free_assignments, parse_term, satisfies, Assignment, EquationLike, Evaluator, PiTerm,
    VariableObject,
};
use proptest::prelude::*;

fn small_monoids() -> Vec<finalg::FiniteAlgebra> {
    let cache = AlgebraCache::new();
    cache
        .up_to(&MonadSpec::word(), 3)
        .unwrap()
        .into_iter()
        .map(|t| t.algebra().clone())
        .collect()
}

#[test]
fn factorization_invariants_over_all_small_morphisms() {
    let algs = small_monoids();
    for a in &algs {
        for b in &algs {
            for f in enumerate_morphisms(a, b).unwrap() {
                let (e, m) = image_factorization(&f);
                assert!(e.is_surjective());
                assert!(m.is_injective());
                assert!(m.is_order_reflecting());
                assert_eq!(e.then(&m).unwrap(), f);
            }
        }
    }
}

#[test]
fn hom_theorem_factor_is_exact_and_unique() {
    let algs = small_monoids();
    for a in &algs {
        for b in &algs {
            for e in enumerate_morphisms(a, b).unwrap() {
                if !e.is_surjective() {
                    continue;
                }
                for c in &algs {
                    for f in enumerate_morphisms(a, c).unwrap() {
                        match hom_theorem_factor(&e, &f).unwrap() {
                            FactorResult::Factored(g) => {
                                assert_eq!(e.then(&g).unwrap(), f);
                                // unique among all morphisms b -> c
                                let count = enumerate_morphisms(b, c)
                                    .unwrap()
                                    .into_iter()
                                    .filter(|h| e.then(h).unwrap() == f)
                                    .count();
                                assert_eq!(count, 1);
                            }
                            FactorResult::NoFactor { .. } => {
                                // indeed no morphism factors f through e
                                assert!(enumerate_morphisms(b, c)
                                    .unwrap()
                                    .into_iter()
                                    .all(|h| e.then(&h).unwrap() != f));
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn kernel_quotient_is_isomorphic_to_image_everywhere() {
    let algs = small_monoids();
    for a in &algs {
        for b in &algs {
            for f in enumerate_morphisms(a, b).unwrap() {
                let mut pairs = Vec::new();
                for x in 0..a.size(0) {
                    for y in 0..a.size(0) {
                        if f.apply(0, x) == f.apply(0, y) {
                            pairs.push((0, x, y));
                        }
                    }
                }
                let theta = congruence_closure(a, &pairs);
                let (q, _) = quotient(a, &theta).unwrap();
                let (_, m) = image_factorization(&f);
                assert!(isomorphic(&q, m.source()).is_some());
            }
        }
    }
}

#[test]
fn sections_found_are_sections_and_projections_split() {
    let algs = small_monoids();
    for a in &algs {
        for b in &algs {
            for e in enumerate_morphisms(a, b).unwrap() {
                if !e.is_surjective() {
                    continue;
                }
                if let Some(m) = find_section(&e).unwrap() {
                    assert!(m.then(&e).unwrap().is_identity_map());
                }
            }
        }
        let (_, (p1, p2)) = product(a, a).unwrap();
        assert!(find_section(&p1).unwrap().is_some());
        assert!(find_section(&p2).unwrap().is_some());
    }
}

#[test]
fn ordered_product_projections_jointly_reflect_order() {
    let chain = samples::chain_poset(2);
    let (p, (p1, p2)) = product(&chain, &chain).unwrap();
    for x in 0..p.size(0) {
        for y in 0..p.size(0) {
            let both = chain.leq(0, p1.apply(0, x), p1.apply(0, y))
                && chain.leq(0, p2.apply(0, x), p2.apply(0, y));
            assert_eq!(p.leq(0, x, y), both);
        }
    }
}

#[test]
fn text_format_round_trips_over_enumerated_algebras() {
    let cache = AlgebraCache::new();
    let mut algs: Vec<finalg::FiniteAlgebra> = Vec::new();
    algs.extend(cache.up_to(&MonadSpec::word(), 4).unwrap().iter().map(|t| t.algebra().clone()));
    algs.extend(
        cache.up_to(&MonadSpec::ordword(), 3).unwrap().iter().map(|t| t.algebra().clone()),
    );
    algs.extend(cache.up_to(&MonadSpec::wilke(), 3).unwrap().iter().map(|t| t.algebra().clone()));
    algs.extend(cache.up_to(&MonadSpec::pos(), 3).unwrap().iter().map(|t| t.algebra().clone()));
    for a in &algs {
        let text = print_algebra(a);
        assert_eq!(&parse_algebra(&text).unwrap(), a, "round trip failed:\n{text}");
    }
}

#[test]
fn satisfaction_is_isomorphism_invariant() {
    // a fixed small suite of statements, verdicts must be stable under
    // relabeling
    let spec = MonadSpec::word();
    let vars = VariableObject::free(&["x", "y"], 0);
    let suite: Vec<EquationLike> = [
        ("x^pi x", "x^pi"),
        ("x y", "y x"),
        ("x x", "x"),
        ("x^pi", "1"),
    ]
    .iter()
    .map(|(l, r)| {
        EquationLike::equation(
            vars.clone(),
            parse_term(l).unwrap(),
            parse_term(r).unwrap(),
        )
    })
    .collect();
    let relabeled = samples::monoid_from_table(&["e", "q"], &[["e", "q"], ["q", "e"]]);
    let a = check_t_algebra(&spec, &samples::z2()).unwrap();
    let b = check_t_algebra(&spec, &relabeled).unwrap();
    assert!(isomorphic(a.algebra(), b.algebra()).is_some());
    for st in &suite {
        assert_eq!(
            satisfies(&a, st).unwrap().holds,
            satisfies(&b, st).unwrap().holds
        );
    }
}

#[test]
fn separation_agrees_with_satisfaction_over_all_enumerated_algebras() {
    let spec = MonadSpec::word();
    let cache = AlgebraCache::new();
    let pairs = [
        ("x^pi", "x^pi x"),
        ("x^pi x^pi", "x^pi"),
        ("x y", "y x"),
        ("x", "x x"),
    ];
    for (us, vs) in pairs {
        let u = parse_term(us).unwrap();
        let v = parse_term(vs).unwrap();
        let vars = default_vars(&u, &v, &spec);
        let separated = separate(&u, &v, &spec, &vars, 3, &cache).unwrap().is_some();
        let eq = EquationLike::equation(vars.clone(), u.clone(), v.clone());
        let all_satisfy = cache
            .up_to(&spec, 3)
            .unwrap()
            .iter()
            .all(|t| satisfies(t, &eq).unwrap().holds);
        assert_eq!(separated, !all_satisfy, "mismatch for {us} vs {vs}");
    }
}

// every pi-term over {x} of the given depth
fn terms_of_depth(depth: usize) -> Vec<PiTerm> {
    if depth == 0 {
        return vec![PiTerm::var("x"), PiTerm::Unit];
    }
    let smaller = terms_of_depth(depth - 1);
    let mut out = smaller.clone();
    for t in &smaller {
        out.push(t.clone().pi());
        for s in &smaller {
            out.push(PiTerm::concat(vec![t.clone(), s.clone()]));
        }
    }
    out.sort();
    out.dedup();
    out
}

#[test]
fn finite_quotient_stages_are_compatible_along_connecting_surjections() {
    // for stages (A, h), (B, k) and a surjective homomorphism s: A ->> B
    // with s . h = k, evaluation commutes with s on every term of depth <= 3
    let spec = MonadSpec::word();
    let cache = AlgebraCache::new();
    let vars = VariableObject::free(&["x"], 0);
    let stages = finite_quotients(&vars, &spec, 2, &cache).unwrap();
    let terms = terms_of_depth(3);
    let mut connections = 0usize;
    for (a, h) in &stages {
        for (b, k) in &stages {
            for s in enumerate_morphisms(a.algebra(), b.algebra()).unwrap() {
                if !s.is_surjective() {
                    continue;
                }
                let (_, hx) = h.get("x").unwrap();
                let (_, kx) = k.get("x").unwrap();
                if s.apply(0, hx) != kx {
                    continue;
                }
                connections += 1;
                let ev_a = Evaluator::new(a.algebra());
                let ev_b = Evaluator::new(b.algebra());
                for t in &terms {
                    let (_, va) = ev_a.eval(t, h).unwrap();
                    let (_, vb) = ev_b.eval(t, k).unwrap();
                    assert_eq!(s.apply(0, va), vb, "term {t} breaks compatibility");
                }
            }
        }
    }
    assert!(connections > 0, "no connecting surjections exercised");
}

proptest! {
    // evaluation does not depend on how an associative product is bracketed
    #[test]
    fn eval_is_invariant_under_rebracketing(
        word in proptest::collection::vec(0usize..2, 2..6),
        split in 1usize..5,
        alg_ix in 0usize..3,
    ) {
        let algs = [samples::z2(), samples::u1(), samples::c3()];
        let alg = &algs[alg_ix];
        let names = ["x", "y"];
        let flat = PiTerm::Concat(word.iter().map(|&i| PiTerm::var(names[i])).collect());
        let cut = split.min(word.len() - 1);
        let left: Vec<PiTerm> = word[..cut].iter().map(|&i| PiTerm::var(names[i])).collect();
        let right: Vec<PiTerm> = word[cut..].iter().map(|&i| PiTerm::var(names[i])).collect();
        let nested = PiTerm::concat(vec![PiTerm::concat(left), PiTerm::concat(right)]);
        let ev = Evaluator::new(alg);
        for asg in free_assignments(
            &[("x".to_string(), 0), ("y".to_string(), 0)],
            alg,
        ) {
            prop_assert_eq!(ev.eval(&flat, &asg).unwrap(), ev.eval(&nested, &asg).unwrap());
        }
    }

    // the free extension is homomorphic: splitting a word anywhere and
    // multiplying the halves agrees with evaluating the whole word
    #[test]
    fn free_extension_is_homomorphic(
        word in proptest::collection::vec(0usize..2, 1..7),
        x in 0usize..3,
        y in 0usize..3,
    ) {
        let alg = samples::c3();
        let names = ["x", "y"];
        let asg = Assignment::new().bind("x", 0, x).bind("y", 0, y);
        let ev = Evaluator::new(&alg);
        let whole = PiTerm::concat(word.iter().map(|&i| PiTerm::var(names[i])).collect());
        let (_, direct) = ev.eval(&whole, &asg).unwrap();
        let mul = alg.signature().op_index("mul").unwrap();
        for cut in 1..word.len() {
            let l = PiTerm::concat(word[..cut].iter().map(|&i| PiTerm::var(names[i])).collect());
            let r = PiTerm::concat(word[cut..].iter().map(|&i| PiTerm::var(names[i])).collect());
            let (_, lv) = ev.eval(&l, &asg).unwrap();
            let (_, rv) = ev.eval(&r, &asg).unwrap();
            prop_assert_eq!(alg.apply(mul, &[lv, rv]), direct);
        }
        // the empty word evaluates to the unit
        let (_, unit) = ev.eval(&PiTerm::Unit, &asg).unwrap();
        prop_assert_eq!(unit, 0);
    }

    // every valid table of size <= 3 is isomorphic to one of the
    // enumerated algebras; a random starting code scans forward to the
    // next associative table with unit 0, so every table is reachable
    #[test]
    fn random_monoid_tables_are_covered_by_enumeration(
        start in 0usize..81,
        n in 2usize..4,
    ) {
        let free = (n - 1) * (n - 1);
        let total = n.pow(free as u32);
        let table_at = |code: usize| -> Vec<usize> {
            // unit 0 fixed; remaining entries from the code, row-major
            let mut t = vec![0usize; n * n];
            for x in 0..n {
                t[x] = x;
                t[x * n] = x;
            }
            let mut c = code;
            for x in 1..n {
                for y in 1..n {
                    t[x * n + y] = c % n;
                    c /= n;
                }
            }
            t
        };
        let code = (0..total)
            .map(|k| (start + k) % total)
            .find(|&c| {
                let t = table_at(c);
                (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| {
                    t[t[x * n + y] * n + z] == t[x * n + t[y * n + z]]
                })))
            })
            .expect("some associative completion exists");
        let t = table_at(code);
        let names = ["e0", "e1", "e2"];
        let sig = samples::monoid_signature();
        let mut b = finalg::algebra::AlgebraBuilder::new(sig)
            .elements("m", &names[..n]).unwrap()
            .set("one", &[], names[0]).unwrap();
        for x in 0..n {
            for y in 0..n {
                b = b.set("mul", &[names[x], names[y]], names[t[x * n + y]]).unwrap();
            }
        }
        let alg = b.build().unwrap();
        let cache = AlgebraCache::new();
        let listed = cache.up_to(&MonadSpec::word(), 3).unwrap();
        prop_assert!(listed.iter().any(|ta| isomorphic(ta.algebra(), &alg).is_some()));
    }
}
