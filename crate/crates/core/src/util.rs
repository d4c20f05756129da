use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::Scalar;

/// Adds `c` to the coefficient of `key`, dropping the entry when it cancels.
pub(crate) fn accumulate<K: Ord>(map: &mut BTreeMap<K, Scalar>, key: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Splits `s` at top-level `+`/`-` signs (outside brackets), returning
/// `(negated, term)` pairs.
pub(crate) fn split_signed_terms(s: &str) -> Vec<(bool, String)> {
    let mut out = Vec::new();
    let mut depth = 0usize;
    let mut cur = String::new();
    let mut neg = false;
    for c in s.chars() {
        match c {
            '[' | '(' => {
                depth += 1;
                cur.push(c);
            }
            ']' | ')' => {
                depth = depth.saturating_sub(1);
                cur.push(c);
            }
            '+' | '-' if depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push((neg, cur.trim().to_string()));
                    neg = c == '-';
                } else if c == '-' {
                    neg = !neg;
                }
                cur.clear();
            }
            _ => cur.push(c),
        }
    }
    out.push((neg, cur.trim().to_string()));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn splits_outside_brackets() {
        let parts = split_signed_terms("[1 + q] a b - c + -d");
        assert_eq!(
            parts,
            vec![
                (false, "[1 + q] a b".to_string()),
                (true, "c".to_string()),
                (true, "d".to_string()),
            ]
        );
    }
}
