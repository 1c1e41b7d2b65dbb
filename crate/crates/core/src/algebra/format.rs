//! Text format for finite algebras.
//!
//! ```text
//! # comments run to end of line
//! sorts: m
//! elements m: 1 g
//! op mul(m,m) -> m
//! mul 1 1 = 1
//! mul 1 g = g
//! mul g 1 = g
//! mul g g = 1
//! op one() -> m
//! one = 1
//! assoc: mul            # designated associative operations (optional)
//! guard comp: tgt src   # composability guard (optional)
//! order: a <= b         # order generators; a bare `order:` marks the
//!                       # algebra ordered with the discrete order
//! ```
//!
//! Parsing then printing a parsed algebra is the identity; printing lists
//! only composable rows of guarded operations and the covering pairs of
//! each order.

use super::{AlgebraBuilder, FiniteAlgebra, OpDecl, Signature};
use crate::error::{Error, Result};
use std::fmt::Write as _;
use std::sync::Arc;

const KEYWORDS: [&str; 6] = ["sorts:", "elements", "op", "assoc:", "guard", "order:"];

pub fn parse_algebra(text: &str) -> Result<FiniteAlgebra> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();

    // pass 1: signature
    let mut sorts: Vec<String> = Vec::new();
    let mut ops: Vec<OpDecl> = Vec::new();
    let mut op_names: Vec<String> = Vec::new();
    let mut assoc: Vec<String> = Vec::new();
    let mut guards: Vec<(String, String, String)> = Vec::new();
    for &(ln, line) in &lines {
        if let Some(rest) = line.strip_prefix("sorts:") {
            sorts.extend(rest.split_whitespace().map(str::to_string));
        } else if let Some(rest) = line.strip_prefix("op ") {
            let (name, rest) = rest
                .split_once('(')
                .ok_or_else(|| Error::parse(ln, 1, "expected `op name(sorts) -> sort`"))?;
            let (args, rest) = rest
                .split_once(')')
                .ok_or_else(|| Error::parse(ln, 1, "missing `)` in operation declaration"))?;
            let result = rest
                .trim()
                .strip_prefix("->")
                .ok_or_else(|| Error::parse(ln, 1, "missing `->` in operation declaration"))?
                .trim();
            let name = name.trim();
            if KEYWORDS.contains(&name) {
                return Err(Error::parse(ln, 1, format!("`{name}` cannot name an operation")));
            }
            let arg_sorts: Vec<usize> = args
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    sorts
                        .iter()
                        .position(|x| x == s)
                        .ok_or_else(|| Error::parse(ln, 1, format!("unknown sort `{s}`")))
                })
                .collect::<Result<_>>()?;
            let result_sort = sorts
                .iter()
                .position(|x| x == result)
                .ok_or_else(|| Error::parse(ln, 1, format!("unknown sort `{result}`")))?;
            op_names.push(name.to_string());
            ops.push(OpDecl::new(name, arg_sorts, result_sort));
        } else if let Some(rest) = line.strip_prefix("assoc:") {
            assoc.extend(rest.split_whitespace().map(str::to_string));
        } else if let Some(rest) = line.strip_prefix("guard ") {
            let (op, rest) = rest
                .split_once(':')
                .ok_or_else(|| Error::parse(ln, 1, "expected `guard op: left right`"))?;
            let parts: Vec<&str> = rest.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(Error::parse(ln, 1, "expected `guard op: left right`"));
            }
            guards.push((op.trim().to_string(), parts[0].to_string(), parts[1].to_string()));
        }
    }
    if sorts.is_empty() {
        return Err(Error::parse(1, 1, "missing `sorts:` declaration"));
    }
    let sig = Arc::new(Signature::with_features(sorts, ops, assoc, guards)?);

    // pass 2: elements, rows, order
    let mut builder = AlgebraBuilder::new(sig.clone());
    for &(ln, line) in &lines {
        if let Some(rest) = line.strip_prefix("elements ") {
            let (sort, names) = rest
                .split_once(':')
                .ok_or_else(|| Error::parse(ln, 1, "expected `elements sort: a b c`"))?;
            let names: Vec<&str> = names.split_whitespace().collect();
            builder = builder
                .elements(sort.trim(), &names)
                .map_err(|e| Error::parse(ln, 1, e.to_string()))?;
        }
    }
    for &(ln, line) in &lines {
        let first = line.split_whitespace().next().unwrap_or("");
        if op_names.iter().any(|n| n == first) {
            // table row: `opname a b = c`
            let (lhs, rhs) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(ln, 1, "expected `op args = result`"))?;
            let mut toks = lhs.split_whitespace();
            let op = toks.next().unwrap();
            let args: Vec<&str> = toks.collect();
            let result = rhs.trim();
            if result.split_whitespace().count() != 1 {
                return Err(Error::parse(ln, 1, "expected a single result element"));
            }
            builder = builder
                .set(op, &args, result)
                .map_err(|e| Error::parse(ln, 1, e.to_string()))?;
        } else if let Some(rest) = line.strip_prefix("order:") {
            let rest = rest.trim();
            if rest.is_empty() {
                builder = builder.ordered();
            } else {
                let (a, b) = rest
                    .split_once("<=")
                    .ok_or_else(|| Error::parse(ln, 1, "expected `order: a <= b`"))?;
                builder = builder
                    .order_pair(a.trim(), b.trim())
                    .map_err(|e| Error::parse(ln, 1, e.to_string()))?;
            }
        }
    }
    builder.build().map_err(Error::Validation)
}

pub fn print_algebra(a: &FiniteAlgebra) -> String {
    let sig = a.signature();
    let mut out = String::new();
    writeln!(out, "sorts: {}", sig.sorts().join(" ")).unwrap();
    for (s, name) in sig.sorts().iter().enumerate() {
        writeln!(out, "elements {name}: {}", a.elements(s).join(" ")).unwrap();
    }
    for (o, decl) in sig.ops().iter().enumerate() {
        let args: Vec<&str> = decl.args.iter().map(|&s| sig.sorts()[s].as_str()).collect();
        writeln!(
            out,
            "op {}({}) -> {}",
            decl.name,
            args.join(","),
            sig.sorts()[decl.result]
        )
        .unwrap();
        let dims: Vec<usize> = decl.args.iter().map(|&s| a.size(s)).collect();
        for t in super::tuples(&dims) {
            if !a.tuple_valid(o, &t) {
                continue;
            }
            let args: Vec<&str> = t
                .iter()
                .enumerate()
                .map(|(k, &i)| a.element_name(decl.args[k], i))
                .collect();
            let r = a.element_name(decl.result, a.apply(o, &t));
            if args.is_empty() {
                writeln!(out, "{} = {}", decl.name, r).unwrap();
            } else {
                writeln!(out, "{} {} = {}", decl.name, args.join(" "), r).unwrap();
            }
        }
    }
    if !sig.assoc_ops().is_empty() {
        let names: Vec<&str> =
            sig.assoc_ops().iter().map(|&i| sig.ops()[i].name.as_str()).collect();
        writeln!(out, "assoc: {}", names.join(" ")).unwrap();
    }
    for &(op, g) in sig.guards() {
        writeln!(
            out,
            "guard {}: {} {}",
            sig.ops()[op].name,
            sig.ops()[g.left].name,
            sig.ops()[g.right].name
        )
        .unwrap();
    }
    if a.is_ordered() {
        let mut any = false;
        for s in 0..sig.sorts().len() {
            for (x, y) in a.order(s).unwrap().covers() {
                writeln!(out, "order: {} <= {}", a.element_name(s, x), a.element_name(s, y))
                    .unwrap();
                any = true;
            }
        }
        if !any {
            writeln!(out, "order:").unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn parse_print_round_trip() {
        for a in [
            samples::z2(),
            samples::u1(),
            samples::c3(),
            samples::chain_poset(3),
            samples::ordered_u1(true),
            samples::wilke_two_element(),
            samples::one_object_category(&samples::c3()),
            samples::loop_graph(),
        ] {
            let text = print_algebra(&a);
            let b = parse_algebra(&text).unwrap_or_else(|e| panic!("{e}:\n{text}"));
            assert_eq!(a, b, "round trip failed for:\n{text}");
        }
    }

    #[test]
    fn parse_reports_position() {
        let bad = "sorts: m\nelements m: 1\nop mul(m,m) -> m\nmul 1 1 = 2\n";
        match parse_algebra(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn missing_rows_are_totality_violations() {
        let bad = "sorts: m\nelements m: 1 g\nop mul(m,m) -> m\nmul 1 1 = 1\n";
        match parse_algebra(bad) {
            Err(Error::Validation(report)) => {
                assert!(!report.violations.is_empty());
            }
            other => panic!("expected validation failure, got {other:?}"),
        }
    }
}
