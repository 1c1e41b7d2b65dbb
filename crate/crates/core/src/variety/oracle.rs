//! Structural oracles for the presets, independent of the term machinery:
//! each preset's defining identities are cross-checked against a direct
//! table-level characterization before the preset is trusted in tests.

use crate::algebra::FiniteAlgebra;
use crate::error::Result;

fn mul_unit(a: &FiniteAlgebra) -> Result<(usize, usize)> {
    let mul = a.signature().op_index("mul")?;
    let one = a.signature().op_index("one")?;
    Ok((mul, a.apply(one, &[])))
}

/// Index and period of the power sequence of an element.
pub fn index_period(a: &FiniteAlgebra, mul: usize, x: usize) -> (usize, usize) {
    let mut seen = vec![x];
    let mut cur = x;
    loop {
        cur = a.apply(mul, &[cur, x]);
        if let Some(pos) = seen.iter().position(|&v| v == cur) {
            return (pos + 1, seen.len() + 1 - (pos + 1));
        }
        seen.push(cur);
    }
}

/// No nontrivial group inside: every element's power sequence has period
/// one, i.e. x^k = x^(k+1) eventually.
pub fn is_aperiodic(a: &FiniteAlgebra) -> Result<bool> {
    let (mul, _) = mul_unit(a)?;
    Ok((0..a.size(0)).all(|x| index_period(a, mul, x).1 == 1))
}

/// Every element has a two-sided inverse.
pub fn is_group(a: &FiniteAlgebra) -> Result<bool> {
    let (mul, unit) = mul_unit(a)?;
    let n = a.size(0);
    Ok((0..n).all(|x| {
        (0..n).any(|y| a.apply(mul, &[x, y]) == unit && a.apply(mul, &[y, x]) == unit)
    }))
}

pub fn is_commutative(a: &FiniteAlgebra) -> Result<bool> {
    let (mul, _) = mul_unit(a)?;
    let n = a.size(0);
    Ok((0..n).all(|x| (0..n).all(|y| a.apply(mul, &[x, y]) == a.apply(mul, &[y, x]))))
}

pub fn is_idempotent(a: &FiniteAlgebra) -> Result<bool> {
    let (mul, _) = mul_unit(a)?;
    Ok((0..a.size(0)).all(|x| a.apply(mul, &[x, x]) == x))
}

/// Two-sided principal ideals are pairwise distinct: the J-order has
/// singleton classes.
pub fn is_jtrivial(a: &FiniteAlgebra) -> Result<bool> {
    let (mul, _) = mul_unit(a)?;
    let n = a.size(0);
    let ideal = |x: usize| -> Vec<bool> {
        let mut in_ideal = vec![false; n];
        for u in 0..n {
            for v in 0..n {
                let ux = a.apply(mul, &[u, x]);
                in_ideal[a.apply(mul, &[ux, v])] = true;
            }
        }
        in_ideal
    };
    let ideals: Vec<Vec<bool>> = (0..n).map(ideal).collect();
    for x in 0..n {
        for y in (x + 1)..n {
            if ideals[x] == ideals[y] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Only the unit is invertible.
pub fn has_trivial_units(a: &FiniteAlgebra) -> Result<bool> {
    let (mul, unit) = mul_unit(a)?;
    let n = a.size(0);
    Ok((0..n).all(|x| {
        x == unit
            || !(0..n)
                .any(|y| a.apply(mul, &[x, y]) == unit && a.apply(mul, &[y, x]) == unit)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::samples;

    #[test]
    fn structural_facts_on_stock_monoids() {
        assert!(!is_aperiodic(&samples::z2()).unwrap());
        assert!(is_aperiodic(&samples::u1()).unwrap());
        // the powers of a in C3 cycle with period two: {a, a2} is a group
        assert!(!is_aperiodic(&samples::c3()).unwrap());
        // a copy of Z2 hides below a fresh identity: not aperiodic even
        // though no element powers back to the unit
        assert!(!is_aperiodic(&samples::z2_adjoined_identity()).unwrap());

        assert!(is_group(&samples::z2()).unwrap());
        assert!(is_group(&samples::z3()).unwrap());
        assert!(!is_group(&samples::u1()).unwrap());

        assert!(is_commutative(&samples::z2()).unwrap());
        assert!(is_commutative(&samples::u1()).unwrap());

        assert!(is_idempotent(&samples::u1()).unwrap());
        assert!(!is_idempotent(&samples::z2()).unwrap());

        assert!(is_jtrivial(&samples::u1()).unwrap());
        assert!(!is_jtrivial(&samples::z2()).unwrap());
        // a and a2 divide each other in C3, so its J-order is not trivial
        assert!(!is_jtrivial(&samples::c3()).unwrap());

        assert!(has_trivial_units(&samples::c3()).unwrap());
        assert!(has_trivial_units(&samples::z2_adjoined_identity()).unwrap());
        assert!(!has_trivial_units(&samples::z2()).unwrap());
    }
}
