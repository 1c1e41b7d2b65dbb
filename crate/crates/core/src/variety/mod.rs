//! Classes of finite algebras: presets, membership, closure verification,
//! bounded HSP closure and equational cross-checks.

pub mod oracle;

use crate::algebra::{
    canonical_key, enumerate_congruences, find_section, isomorphic, product,
    subalgebra_generated, Congruence, Morphism,
};
use crate::error::{Error, Result};
use crate::monad::{check_t_algebra, AlgebraCache, MonadSpec, TAlgebra};
use crate::term::{parse_term, satisfies, EquationLike, VariableObject};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// A class of finite algebras: an explicit list, a presentation by
/// statements, or a named preset.
#[derive(Debug, Clone)]
pub enum ClassSpec {
    Explicit(Vec<TAlgebra>),
    Presented { spec: Arc<MonadSpec>, statements: Vec<EquationLike> },
    Preset(Preset),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    Aperiodic,
    Groups,
    Commutative,
    Idempotent,
    JTrivial,
}

pub const PRESETS: [Preset; 5] = [
    Preset::Aperiodic,
    Preset::Groups,
    Preset::Commutative,
    Preset::Idempotent,
    Preset::JTrivial,
];

impl Preset {
    pub fn name(&self) -> &'static str {
        match self {
            Preset::Aperiodic => "aperiodic",
            Preset::Groups => "groups",
            Preset::Commutative => "commutative",
            Preset::Idempotent => "idempotent",
            Preset::JTrivial => "jtrivial",
        }
    }

    pub fn by_name(name: &str) -> Result<Preset> {
        PRESETS
            .iter()
            .copied()
            .find(|p| p.name() == name)
            .ok_or_else(|| Error::Unsupported(format!("unknown preset `{name}`")))
    }

    pub fn identity_strings(&self) -> Vec<(&'static str, &'static str)> {
        match self {
            Preset::Aperiodic => vec![("x^pi x", "x^pi")],
            Preset::Groups => vec![("x^pi", "1")],
            Preset::Commutative => vec![("x y", "y x")],
            Preset::Idempotent => vec![("x x", "x")],
            Preset::JTrivial => vec![("(x y)^pi x", "(x y)^pi"), ("y (x y)^pi", "(x y)^pi")],
        }
    }

    pub fn statements(&self) -> Vec<EquationLike> {
        let vars = VariableObject::free(&["x", "y"], 0);
        self.identity_strings()
            .into_iter()
            .map(|(l, r)| {
                EquationLike::equation(
                    vars.clone(),
                    parse_term(l).expect("preset identity"),
                    parse_term(r).expect("preset identity"),
                )
            })
            .collect()
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl ClassSpec {
    pub fn preset(p: Preset) -> ClassSpec {
        ClassSpec::Preset(p)
    }

    pub fn monad_spec(&self) -> Result<Arc<MonadSpec>> {
        match self {
            ClassSpec::Explicit(list) => list
                .first()
                .map(|t| t.spec().clone())
                .ok_or_else(|| Error::Unsupported("empty explicit class".into())),
            ClassSpec::Presented { spec, .. } => Ok(spec.clone()),
            ClassSpec::Preset(_) => Ok(MonadSpec::word()),
        }
    }

    pub fn statements(&self) -> Vec<EquationLike> {
        match self {
            ClassSpec::Explicit(_) => vec![],
            ClassSpec::Presented { statements, .. } => statements.clone(),
            ClassSpec::Preset(p) => p.statements(),
        }
    }

    /// Membership, independent of any size bound: satisfaction for
    /// presented classes, isomorphism against the list for explicit ones.
    pub fn contains(&self, t: &TAlgebra) -> Result<MembershipOutcome> {
        match self {
            ClassSpec::Explicit(list) => {
                for m in list {
                    if m.total_size() == t.total_size()
                        && isomorphic(m.algebra(), t.algebra()).is_some()
                    {
                        return Ok(MembershipOutcome::Member);
                    }
                }
                Ok(MembershipOutcome::NotListed)
            }
            _ => {
                for (i, st) in self.statements().iter().enumerate() {
                    let verdict = satisfies(t, st)?;
                    if !verdict.holds {
                        return Ok(MembershipOutcome::Fails {
                            statement: i,
                            display: st.to_string(),
                            witness: verdict
                                .witness
                                .map(|w| w.display(t.algebra()).to_string())
                                .unwrap_or_default(),
                        });
                    }
                }
                Ok(MembershipOutcome::Member)
            }
        }
    }
}

#[derive(Debug, Clone)]
pub enum MembershipOutcome {
    Member,
    NotListed,
    Fails { statement: usize, display: String, witness: String },
}

impl MembershipOutcome {
    pub fn is_member(&self) -> bool {
        matches!(self, MembershipOutcome::Member)
    }
}

impl fmt::Display for MembershipOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MembershipOutcome::Member => write!(f, "member"),
            MembershipOutcome::NotListed => write!(f, "not isomorphic to any listed member"),
            MembershipOutcome::Fails { display, witness, .. } => {
                write!(f, "fails `{display}` at {witness}")
            }
        }
    }
}

/// All algebras of total size at most `n` (up to isomorphism) belonging to
/// the class.
pub fn members(class: &ClassSpec, n: usize, cache: &AlgebraCache) -> Result<Vec<TAlgebra>> {
    let spec = class.monad_spec()?;
    let mut out = Vec::new();
    match class {
        ClassSpec::Explicit(list) => {
            let mut seen = BTreeMap::new();
            for t in list {
                if t.total_size() <= n {
                    seen.entry(canonical_key(t.algebra())?).or_insert_with(|| t.clone());
                }
            }
            out.extend(seen.into_values());
        }
        _ => {
            for t in cache.up_to(&spec, n)? {
                if class.contains(&t)?.is_member() {
                    out.push(t);
                }
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ClosureKind {
    Products,
    Subalgebras,
    Quotients,
    SplitQuotients,
}

pub const ALL_KINDS: [ClosureKind; 4] = [
    ClosureKind::Products,
    ClosureKind::Subalgebras,
    ClosureKind::Quotients,
    ClosureKind::SplitQuotients,
];

impl ClosureKind {
    pub fn name(&self) -> &'static str {
        match self {
            ClosureKind::Products => "products",
            ClosureKind::Subalgebras => "subalgebras",
            ClosureKind::Quotients => "quotients",
            ClosureKind::SplitQuotients => "split-quotients",
        }
    }

    pub fn by_name(name: &str) -> Result<ClosureKind> {
        ALL_KINDS
            .iter()
            .copied()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::Unsupported(format!("unknown closure kind `{name}`")))
    }
}

impl fmt::Display for ClosureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())
    }
}

/// How a member left the class.
#[derive(Debug, Clone)]
pub enum Construction {
    Product { other: TAlgebra },
    Subalgebra { seed: Vec<Vec<usize>> },
    Quotient { congruence: Congruence },
    SplitQuotient { congruence: Congruence },
}

impl Construction {
    pub fn describe(&self, source: &TAlgebra) -> String {
        match self {
            Construction::Product { other } => format!(
                "product with a {}-element member",
                other.total_size()
            ),
            Construction::Subalgebra { seed } => {
                let names: Vec<String> = seed
                    .iter()
                    .enumerate()
                    .flat_map(|(s, es)| {
                        es.iter().map(move |&e| {
                            source.algebra().element_name(s, e).to_string()
                        })
                    })
                    .collect();
                format!("subalgebra generated by {{{}}}", names.join(", "))
            }
            Construction::Quotient { congruence } | Construction::SplitQuotient { congruence } => {
                let mut parts = Vec::new();
                for s in 0..source.algebra().signature().sorts().len() {
                    for block in congruence.blocks(s) {
                        let names: Vec<&str> = block
                            .iter()
                            .map(|&e| source.algebra().element_name(s, e))
                            .collect();
                        parts.push(format!("{{{}}}", names.join(",")));
                    }
                }
                format!("quotient by {}", parts.join(" "))
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct ClosureCounterexample {
    pub source: TAlgebra,
    pub construction: Construction,
    pub result: TAlgebra,
    pub failure: String,
}

#[derive(Debug, Clone)]
pub struct KindReport {
    pub kind: ClosureKind,
    pub pass: bool,
    pub counterexamples: Vec<ClosureCounterexample>,
}

#[derive(Debug, Clone)]
pub struct ClosureReport {
    pub kinds: Vec<KindReport>,
}

impl ClosureReport {
    pub fn all_pass(&self) -> bool {
        self.kinds.iter().all(|k| k.pass)
    }

    pub fn report_for(&self, kind: ClosureKind) -> Option<&KindReport> {
        self.kinds.iter().find(|k| k.kind == kind)
    }
}

/// Verify closure of the class under the requested constructions over its
/// members of size at most `n`. Products are judged by direct membership
/// of the product (satisfaction is size-independent), so a large product
/// never counts as a spurious failure.
pub fn check_closure(
    class: &ClassSpec,
    n: usize,
    kinds: &[ClosureKind],
    cache: &AlgebraCache,
) -> Result<ClosureReport> {
    let spec = class.monad_spec()?;
    let members = members(class, n, cache)?;
    let mut reports = Vec::new();
    for &kind in kinds {
        let mut counterexamples = Vec::new();
        match kind {
            ClosureKind::Products => {
                for (i, a) in members.iter().enumerate() {
                    for b in &members[i..] {
                        let (p, _) = product(a.algebra(), b.algebra())?;
                        let pt = check_t_algebra(&spec, &p)?;
                        let outcome = class.contains(&pt)?;
                        if !outcome.is_member() {
                            counterexamples.push(ClosureCounterexample {
                                source: a.clone(),
                                construction: Construction::Product { other: b.clone() },
                                result: pt,
                                failure: outcome.to_string(),
                            });
                        }
                    }
                }
            }
            ClosureKind::Subalgebras => {
                for a in &members {
                    for (seed, emb) in all_subalgebras(a)? {
                        let sub = check_t_algebra(&spec, emb.source())?;
                        let outcome = class.contains(&sub)?;
                        if !outcome.is_member() {
                            counterexamples.push(ClosureCounterexample {
                                source: a.clone(),
                                construction: Construction::Subalgebra { seed },
                                result: sub,
                                failure: outcome.to_string(),
                            });
                        }
                    }
                }
            }
            ClosureKind::Quotients | ClosureKind::SplitQuotients => {
                for a in &members {
                    for (theta, q, e) in all_quotients(a)? {
                        if kind == ClosureKind::SplitQuotients && !is_base_split(&spec, &e)? {
                            continue;
                        }
                        let qt = check_t_algebra(&spec, &q)?;
                        let outcome = class.contains(&qt)?;
                        if !outcome.is_member() {
                            let construction = if kind == ClosureKind::SplitQuotients {
                                Construction::SplitQuotient { congruence: theta }
                            } else {
                                Construction::Quotient { congruence: theta }
                            };
                            counterexamples.push(ClosureCounterexample {
                                source: a.clone(),
                                construction,
                                result: qt,
                                failure: outcome.to_string(),
                            });
                        }
                    }
                }
            }
        }
        reports.push(KindReport { kind, pass: counterexamples.is_empty(), counterexamples });
    }
    Ok(ClosureReport { kinds: reports })
}

// all distinct generated subalgebras, with a seed witnessing each
fn all_subalgebras(a: &TAlgebra) -> Result<Vec<(Vec<Vec<usize>>, Morphism)>> {
    let alg = a.algebra();
    let nsorts = alg.signature().sorts().len();
    let mut out = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let sizes = alg.sizes();
    // iterate seeds as per-sort bitmasks, smallest first
    let masks_per_sort: Vec<usize> = sizes.iter().map(|&k| 1usize << k).collect();
    let mut choice = vec![0usize; nsorts];
    loop {
        let seed: Vec<Vec<usize>> = (0..nsorts)
            .map(|s| (0..sizes[s]).filter(|&e| choice[s] & (1 << e) != 0).collect())
            .collect();
        match subalgebra_generated(alg, &seed) {
            Ok(emb) => {
                let carrier_key: Vec<Vec<usize>> = emb.maps().to_vec();
                if seen.insert(carrier_key) {
                    out.push((seed, emb));
                }
            }
            Err(Error::Validation(_)) => {} // empty sort: not a finite algebra here
            Err(e) => return Err(e),
        }
        let mut k = nsorts;
        loop {
            if k == 0 {
                return Ok(out);
            }
            k -= 1;
            choice[k] += 1;
            if choice[k] < masks_per_sort[k] {
                break;
            }
            choice[k] = 0;
        }
    }
}

// all quotients along congruences; ordered quotients that fail
// antisymmetry and guarded quotients without composable representatives
// are skipped as invalid constructions
fn all_quotients(
    a: &TAlgebra,
) -> Result<Vec<(Congruence, crate::algebra::FiniteAlgebra, Morphism)>> {
    let mut out = Vec::new();
    for theta in enumerate_congruences(a.algebra())? {
        match crate::algebra::quotient(a.algebra(), &theta) {
            Ok((q, e)) => out.push((theta, q, e)),
            Err(Error::QuotientNotAntisymmetric(..)) | Err(Error::QuotientGuardUndefined(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// Is the quotient split in the base variety: does the underlying base
/// morphism admit a base-morphism section?
pub fn is_base_split(spec: &Arc<MonadSpec>, e: &Morphism) -> Result<bool> {
    let src = spec.base_reduct(e.source());
    let tgt = spec.base_reduct(e.target());
    let base_e = Morphism::new(src, tgt, e.maps().to_vec())?;
    Ok(find_section(&base_e)?.is_some())
}

/// Least class of algebras of size at most `n` containing the generators
/// and closed under generated subalgebras, congruence quotients and binary
/// products that stay within the bound. Isomorphism-deduplicated and
/// deterministic.
pub fn hsp_closure(
    generators: &[TAlgebra],
    n: usize,
    _cache: &AlgebraCache,
) -> Result<Vec<TAlgebra>> {
    let spec = generators
        .first()
        .map(|t| t.spec().clone())
        .ok_or_else(|| Error::Unsupported("hsp closure of an empty set".into()))?;
    let mut pool: BTreeMap<Vec<usize>, TAlgebra> = BTreeMap::new();
    for g in generators {
        if g.total_size() <= n {
            pool.entry(canonical_key(g.algebra())?).or_insert_with(|| g.clone());
        }
    }
    loop {
        let mut fresh: Vec<TAlgebra> = Vec::new();
        let current: Vec<TAlgebra> = pool.values().cloned().collect();
        for a in &current {
            for (_, emb) in all_subalgebras(a)? {
                fresh.push(check_t_algebra(&spec, emb.source())?);
            }
            for (_, q, _) in all_quotients(a)? {
                fresh.push(check_t_algebra(&spec, &q)?);
            }
            for b in &current {
                if a.total_size() * b.total_size() <= n {
                    let (p, _) = product(a.algebra(), b.algebra())?;
                    if p.total_size() <= n {
                        fresh.push(check_t_algebra(&spec, &p)?);
                    }
                }
            }
        }
        let mut changed = false;
        for t in fresh {
            if t.total_size() <= n {
                let key = canonical_key(t.algebra())?;
                if !pool.contains_key(&key) {
                    pool.insert(key, t);
                    changed = true;
                }
            }
        }
        if !changed {
            return Ok(pool.into_values().collect());
        }
    }
}

#[derive(Debug, Clone)]
pub struct CrosscheckReport {
    pub closure: ClosureReport,
    pub hsp_contained: bool,
    pub hsp_violations: Vec<TAlgebra>,
}

impl CrosscheckReport {
    pub fn all_pass(&self) -> bool {
        self.closure.all_pass() && self.hsp_contained
    }
}

/// Desk-scale evidence for the equational characterization: a presented
/// class must (i) pass the full closure suite and (ii) absorb the bounded
/// HSP closure of its members.
pub fn reiterman_crosscheck(
    spec: &Arc<MonadSpec>,
    statements: &[EquationLike],
    n: usize,
    cache: &AlgebraCache,
) -> Result<CrosscheckReport> {
    let class =
        ClassSpec::Presented { spec: spec.clone(), statements: statements.to_vec() };
    let closure = check_closure(&class, n, &ALL_KINDS, cache)?;
    let m = members(&class, n, cache)?;
    let mut hsp_violations = Vec::new();
    if !m.is_empty() {
        for t in hsp_closure(&m, n, cache)? {
            if !class.contains(&t)?.is_member() {
                hsp_violations.push(t);
            }
        }
    }
    Ok(CrosscheckReport { closure, hsp_contained: hsp_violations.is_empty(), hsp_violations })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    fn cache() -> AlgebraCache {
        AlgebraCache::new()
    }

    fn word_t(alg: &crate::algebra::FiniteAlgebra) -> TAlgebra {
        check_t_algebra(&MonadSpec::word(), alg).unwrap()
    }

    #[test]
    fn aperiodic_members_at_two_are_trivial_and_u1() {
        let c = cache();
        let m = members(&ClassSpec::preset(Preset::Aperiodic), 2, &c).unwrap();
        assert_eq!(m.len(), 2);
        let sizes: Vec<usize> = m.iter().map(|t| t.total_size()).collect();
        assert_eq!(sizes, vec![1, 2]);
        assert!(isomorphic(m[1].algebra(), &samples::u1()).is_some());
    }

    #[test]
    fn group_members_at_two_are_trivial_and_z2() {
        let c = cache();
        let m = members(&ClassSpec::preset(Preset::Groups), 2, &c).unwrap();
        assert_eq!(m.len(), 2);
        assert!(isomorphic(m[1].algebra(), &samples::z2()).is_some());
    }

    #[test]
    fn empty_presentation_has_all_monoids() {
        let c = cache();
        let class = ClassSpec::Presented { spec: MonadSpec::word(), statements: vec![] };
        assert_eq!(members(&class, 2, &c).unwrap().len(), 3);
    }

    #[test]
    fn aperiodic_preset_is_closed_at_bound_three() {
        let c = cache();
        let report =
            check_closure(&ClassSpec::preset(Preset::Aperiodic), 3, &ALL_KINDS, &c).unwrap();
        assert!(report.all_pass());
    }

    #[test]
    fn explicit_class_of_z2_alone_fails_subalgebras() {
        let c = cache();
        let class = ClassSpec::Explicit(vec![word_t(&samples::z2())]);
        let report = check_closure(&class, 2, &[ClosureKind::Subalgebras], &c).unwrap();
        let kr = report.report_for(ClosureKind::Subalgebras).unwrap();
        assert!(!kr.pass);
        // the offending subalgebra is the trivial monoid {1}
        assert_eq!(kr.counterexamples[0].result.total_size(), 1);
    }

    #[test]
    fn hsp_of_trivial_is_trivial() {
        let c = cache();
        let gens = vec![word_t(&samples::trivial_monoid())];
        let h = hsp_closure(&gens, 3, &c).unwrap();
        assert_eq!(h.len(), 1);
    }

    #[test]
    fn hsp_of_z2_adds_the_trivial_monoid() {
        let c = cache();
        let gens = vec![word_t(&samples::z2())];
        let h = hsp_closure(&gens, 2, &c).unwrap();
        assert_eq!(h.len(), 2);
    }

    #[test]
    fn hsp_of_c3_is_the_four_expected_algebras() {
        let c = cache();
        let gens = vec![word_t(&samples::c3())];
        let h = hsp_closure(&gens, 3, &c).unwrap();
        assert_eq!(h.len(), 4);
        let expect = [
            samples::trivial_monoid(),
            samples::u1(),
            samples::z2(),
            samples::c3(),
        ];
        for e in &expect {
            assert!(h.iter().any(|t| isomorphic(t.algebra(), e).is_some()));
        }
    }

    #[test]
    fn hsp_is_monotone_and_idempotent() {
        let c = cache();
        let small = hsp_closure(&[word_t(&samples::z2())], 3, &c).unwrap();
        let big =
            hsp_closure(&[word_t(&samples::z2()), word_t(&samples::c3())], 3, &c).unwrap();
        for t in &small {
            assert!(big.iter().any(|u| isomorphic(t.algebra(), u.algebra()).is_some()));
        }
        let again = hsp_closure(&big, 3, &c).unwrap();
        assert_eq!(again.len(), big.len());
    }

    #[test]
    fn crosschecks_pass_for_presets() {
        let c = cache();
        for p in [Preset::Aperiodic, Preset::Groups, Preset::Commutative] {
            let spec = MonadSpec::word();
            let report = reiterman_crosscheck(&spec, &p.statements(), 3, &c).unwrap();
            assert!(report.all_pass(), "{p} failed");
        }
    }
}
