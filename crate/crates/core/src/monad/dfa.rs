//! Deterministic finite automata and syntactic monoids.
//!
//! File format, one item per line:
//!
//! ```text
//! states: q0 q1
//! alphabet: a b
//! init: q0
//! final: q0
//! trans: q0 a -> q1
//! ```
//!
//! `syntactic_monoid` minimizes the automaton (reachable part, then Moore
//! partition refinement) and returns the transition monoid of the minimal
//! automaton, which recognizes the same language through the returned
//! letter map.

use super::{check_t_algebra, monoid_signature, MonadSpec, TAlgebra};
use crate::algebra::AlgebraBuilder;
use crate::error::{Error, Result};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    pub states: Vec<String>,
    pub alphabet: Vec<String>,
    /// `trans[state][letter]`
    pub trans: Vec<Vec<usize>>,
    pub init: usize,
    pub finals: Vec<bool>,
}

impl Dfa {
    pub fn accepts(&self, word: &[usize]) -> bool {
        let mut q = self.init;
        for &a in word {
            q = self.trans[q][a];
        }
        self.finals[q]
    }

    /// Remove unreachable states, then merge behaviour-equivalent ones.
    pub fn minimize(&self) -> Dfa {
        // reachable part, bfs order
        let mut order = vec![self.init];
        let mut seen = vec![false; self.states.len()];
        seen[self.init] = true;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            i += 1;
            for a in 0..self.alphabet.len() {
                let r = self.trans[q][a];
                if !seen[r] {
                    seen[r] = true;
                    order.push(r);
                }
            }
        }
        let reindex: BTreeMap<usize, usize> =
            order.iter().enumerate().map(|(new, &old)| (old, new)).collect();
        let n = order.len();
        let trans: Vec<Vec<usize>> = order
            .iter()
            .map(|&old| {
                (0..self.alphabet.len()).map(|a| reindex[&self.trans[old][a]]).collect()
            })
            .collect();
        let finals: Vec<bool> = order.iter().map(|&old| self.finals[old]).collect();

        // Moore refinement
        let mut class: Vec<usize> = finals.iter().map(|&f| f as usize).collect();
        loop {
            let mut sig_of: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
            let mut next = vec![0usize; n];
            for q in 0..n {
                let mut key = vec![class[q]];
                for a in 0..self.alphabet.len() {
                    key.push(class[trans[q][a]]);
                }
                let fresh = sig_of.len();
                let id = *sig_of.entry(key).or_insert(fresh);
                next[q] = id;
            }
            if next == class {
                break;
            }
            class = next;
        }
        // representative order: first occurrence along the bfs order
        let mut reps: Vec<usize> = Vec::new();
        let mut class_ix: BTreeMap<usize, usize> = BTreeMap::new();
        for q in 0..n {
            class_ix.entry(class[q]).or_insert_with(|| {
                reps.push(q);
                reps.len() - 1
            });
        }
        Dfa {
            states: reps.iter().map(|&q| self.states[order[q]].clone()).collect(),
            alphabet: self.alphabet.clone(),
            trans: reps
                .iter()
                .map(|&q| {
                    (0..self.alphabet.len()).map(|a| class_ix[&class[trans[q][a]]]).collect()
                })
                .collect(),
            init: class_ix[&class[0]],
            finals: reps.iter().map(|&q| finals[q]).collect(),
        }
    }
}

pub fn parse_dfa(text: &str) -> Result<Dfa> {
    let mut states: Vec<String> = Vec::new();
    let mut alphabet: Vec<String> = Vec::new();
    let mut init: Option<String> = None;
    let mut finals: Vec<String> = Vec::new();
    let mut raw_trans: Vec<(usize, String, String, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("states:") {
            states.extend(rest.split_whitespace().map(str::to_string));
        } else if let Some(rest) = line.strip_prefix("alphabet:") {
            alphabet.extend(rest.split_whitespace().map(str::to_string));
        } else if let Some(rest) = line.strip_prefix("init:") {
            init = Some(rest.trim().to_string());
        } else if let Some(rest) = line.strip_prefix("final:") {
            finals.extend(rest.split_whitespace().map(str::to_string));
        } else if let Some(rest) = line.strip_prefix("trans:") {
            let (lhs, to) = rest
                .split_once("->")
                .ok_or_else(|| Error::parse(ln, 1, "expected `trans: q a -> q'`"))?;
            let toks: Vec<&str> = lhs.split_whitespace().collect();
            if toks.len() != 2 {
                return Err(Error::parse(ln, 1, "expected `trans: q a -> q'`"));
            }
            raw_trans.push((ln, toks[0].into(), toks[1].into(), to.trim().into()));
        } else {
            return Err(Error::parse(ln, 1, format!("unrecognized line `{line}`")));
        }
    }
    if states.is_empty() {
        return Err(Error::parse(1, 1, "missing `states:`"));
    }
    if alphabet.is_empty() {
        return Err(Error::parse(1, 1, "missing or empty `alphabet:`"));
    }
    let state_ix = |name: &str, ln: usize| -> Result<usize> {
        states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::parse(ln, 1, format!("unknown state `{name}`")))
    };
    let letter_ix = |name: &str, ln: usize| -> Result<usize> {
        alphabet
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::parse(ln, 1, format!("unknown letter `{name}`")))
    };
    let init_name = init.ok_or_else(|| Error::parse(1, 1, "missing `init:`"))?;
    let init = state_ix(&init_name, 1)?;
    let mut finals_mask = vec![false; states.len()];
    for f in &finals {
        finals_mask[state_ix(f, 1)?] = true;
    }
    let mut trans = vec![vec![usize::MAX; alphabet.len()]; states.len()];
    for (ln, q, a, r) in &raw_trans {
        trans[state_ix(q, *ln)?][letter_ix(a, *ln)?] = state_ix(r, *ln)?;
    }
    for (q, row) in trans.iter().enumerate() {
        for (a, &r) in row.iter().enumerate() {
            if r == usize::MAX {
                return Err(Error::parse(
                    1,
                    1,
                    format!("transition missing for state `{}` on `{}`", states[q], alphabet[a]),
                ));
            }
        }
    }
    Ok(Dfa { states, alphabet, trans, init, finals: finals_mask })
}

/// The transition monoid of a DFA: state-to-state maps generated by the
/// letter actions under composition, with the identity. Also returns, for
/// each letter, the index of its action and a representative word (in
/// breadth-first, alphabet order) for each element.
pub fn transition_monoid(d: &Dfa) -> (TAlgebra, Vec<usize>, Vec<Vec<usize>>) {
    let n = d.states.len();
    let identity: Vec<usize> = (0..n).collect();
    let mut elements: Vec<Vec<usize>> = vec![identity];
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut letter_of: Vec<usize> = vec![0; d.alphabet.len()];
    let mut ix_of: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    ix_of.insert(elements[0].clone(), 0);
    let mut frontier = vec![0usize];
    while let Some(e) = frontier.pop() {
        for a in 0..d.alphabet.len() {
            let act: Vec<usize> = (0..n).map(|q| d.trans[elements[e][q]][a]).collect();
            let fresh = elements.len();
            let ix = *ix_of.entry(act.clone()).or_insert(fresh);
            if ix == fresh {
                elements.push(act);
                let mut w = words[e].clone();
                w.push(a);
                words.push(w);
                frontier.insert(0, ix);
            }
            if words[e].is_empty() {
                letter_of[a] = ix;
            }
        }
    }
    // element names: empty word is the unit "1", others by representative word
    let mut names: Vec<String> = words
        .iter()
        .map(|w| {
            if w.is_empty() {
                "1".to_string()
            } else {
                w.iter().map(|&a| d.alphabet[a].as_str()).collect::<Vec<_>>().join("")
            }
        })
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    let clash = names.iter().any(|n| !seen.insert(n.clone()));
    if clash {
        names = (0..elements.len())
            .map(|i| if i == 0 { "1".to_string() } else { format!("t{i}") })
            .collect();
    }
    let name_refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
    let mut b = AlgebraBuilder::new(monoid_signature())
        .elements("m", &name_refs)
        .unwrap()
        .set("one", &[], &names[0])
        .unwrap();
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate() {
            // action of the concatenation: first x, then y
            let comp: Vec<usize> = (0..n).map(|q| y[x[q]]).collect();
            let r = ix_of[&comp];
            b = b.set("mul", &[&names[i], &names[j]], &names[r]).unwrap();
        }
    }
    let alg = b.build().expect("transition monoid is a monoid");
    let talg = check_t_algebra(&MonadSpec::word(), &alg).expect("monoid laws hold");
    (talg, letter_of, words)
}

/// Syntactic monoid of the language of `d`: the transition monoid of the
/// minimal automaton, with the letter-to-element recognizing map.
pub fn syntactic_monoid(d: &Dfa) -> Result<(TAlgebra, Vec<(String, String)>)> {
    if d.alphabet.is_empty() {
        return Err(Error::Unsupported("empty alphabet".into()));
    }
    let min = d.minimize();
    let (talg, letter_of, _) = transition_monoid(&min);
    let map = d
        .alphabet
        .iter()
        .enumerate()
        .map(|(a, name)| {
            (name.clone(), talg.algebra().element_name(0, letter_of[a]).to_string())
        })
        .collect();
    Ok((talg, map))
}
