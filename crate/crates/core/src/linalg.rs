//! Sparse exact row reduction over [`Scalar`].
//!
//! Pivots must be invertible, i.e. carry a single parameter monomial.
//! Every matrix the checkers build satisfies this; anything else is
//! reported as [`Error::NonUnitPivot`].

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::scalars::ScalarRing;
use crate::util::accumulate;
use crate::Scalar;

pub type SparseRow = BTreeMap<usize, Scalar>;

fn axpy(target: &mut SparseRow, factor: &Scalar, row: &SparseRow) {
    for (&c, v) in row {
        accumulate(target, c, factor * v);
    }
}

/// Incrementally maintained reduced row echelon form.
#[derive(Clone, Debug)]
pub struct Echelon {
    rows: Vec<SparseRow>,
    pivots: BTreeMap<usize, usize>,
    pivot_limit: usize,
}

impl Echelon {
    /// Pivots are restricted to columns `< pivot_limit`.
    pub fn new(pivot_limit: usize) -> Self {
        Echelon {
            rows: Vec::new(),
            pivots: BTreeMap::new(),
            pivot_limit,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce(&self, mut row: SparseRow) -> SparseRow {
        let hits: Vec<(usize, usize)> = row
            .keys()
            .filter_map(|c| self.pivots.get(c).map(|&r| (*c, r)))
            .collect();
        for (c, r) in hits {
            if let Some(v) = row.get(&c).cloned() {
                axpy(&mut row, &-v, &self.rows[r]);
            }
        }
        row
    }

    /// Inserts a row; returns `Ok(None)` if it was independent, otherwise the
    /// reduced remainder (zero in the pivot range).
    pub fn insert(&mut self, row: SparseRow) -> Result<Option<SparseRow>> {
        let row = self.reduce(row);
        let pivot = row
            .range(..self.pivot_limit)
            .find(|(_, v)| v.is_unit())
            .map(|(&c, v)| (c, v.clone()));
        let (col, val) = match pivot {
            Some(p) => p,
            None => {
                if let Some((_, v)) = row.range(..self.pivot_limit).next() {
                    return Err(Error::NonUnitPivot(v.to_string()));
                }
                return Ok(Some(row));
            }
        };
        let inv = val.invert()?;
        let row: SparseRow = row.into_iter().map(|(c, v)| (c, &v * &inv)).collect();
        for other in self.rows.iter_mut() {
            if let Some(v) = other.get(&col).cloned() {
                axpy(other, &-v, &row);
            }
        }
        self.pivots.insert(col, self.rows.len());
        self.rows.push(row);
        Ok(None)
    }

    pub fn rows(&self) -> &[SparseRow] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }
}

/// Rank of a set of sparse rows.
pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> Result<usize> {
    let mut e = Echelon::new(usize::MAX);
    for r in rows {
        e.insert(r)?;
    }
    Ok(e.rank())
}

/// Kernel of the map sending input `i` to `images[i]` (sparse over output
/// coordinates). Each kernel vector is sparse over input indices.
pub fn kernel(ring: &Arc<ScalarRing>, images: &[SparseRow]) -> Result<Vec<SparseRow>> {
    let offset = images
        .iter()
        .filter_map(|r| r.keys().next_back())
        .max()
        .map_or(0, |m| m + 1);
    let mut e = Echelon::new(offset);
    let mut out = Vec::new();
    for (i, img) in images.iter().enumerate() {
        let mut row = img.clone();
        row.insert(offset + i, Scalar::one(ring));
        if let Some(rest) = e.insert(row)? {
            out.push(rest.into_iter().map(|(c, v)| (c - offset, v)).collect());
        }
    }
    Ok(out)
}

/// Unique solution of `Σ_j a_ij x_j = b_i`; `None` if singular or inconsistent.
pub fn solve(rows: &[(SparseRow, Scalar)], unknowns: usize) -> Result<Option<Vec<Scalar>>> {
    let mut e = Echelon::new(unknowns);
    let mut ring = None;
    for (a, b) in rows {
        let mut row = a.clone();
        ring.get_or_insert_with(|| b.ring().clone());
        accumulate(&mut row, unknowns, b.clone());
        if let Some(rest) = e.insert(row)? {
            if !rest.is_empty() {
                return Ok(None);
            }
        }
    }
    if e.rank() != unknowns {
        return Ok(None);
    }
    let ring = match ring {
        Some(r) => r,
        None => return Ok(Some(Vec::new())),
    };
    let mut x = vec![Scalar::zero(&ring); unknowns];
    for (&col, &r) in &e.pivots {
        x[col] = e.rows[r]
            .get(&unknowns)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&ring));
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        Scalar::parse(&ScalarRing::standard(), x).unwrap()
    }

    fn row(entries: &[(usize, &str)]) -> SparseRow {
        let mut r = SparseRow::new();
        for &(c, v) in entries {
            accumulate(&mut r, c, s(v));
        }
        r
    }

    #[test]
    fn rank_of_dependent_rows() {
        let rows = vec![
            row(&[(0, "1"), (1, "q")]),
            row(&[(0, "2"), (1, "2*q")]),
            row(&[(1, "1")]),
        ];
        assert_eq!(rank(rows).unwrap(), 2);
    }

    #[test]
    fn kernel_of_difference_map() {
        // e0 ↦ f0, e1 ↦ f0, e2 ↦ f1
        let images = vec![row(&[(0, "1")]), row(&[(0, "1")]), row(&[(1, "1")])];
        let k = kernel(&ScalarRing::standard(), &images).unwrap();
        assert_eq!(k, vec![row(&[(0, "-1"), (1, "1")])]);
    }

    #[test]
    fn solve_two_by_two() {
        // x + y = 3, x - y = 1
        let rows = vec![
            (row(&[(0, "1"), (1, "1")]), s("3")),
            (row(&[(0, "1"), (1, "-1")]), s("1")),
        ];
        assert_eq!(solve(&rows, 2).unwrap().unwrap(), vec![s("2"), s("1")]);
        let singular = vec![(row(&[(0, "1"), (1, "1")]), s("1"))];
        assert_eq!(solve(&singular, 2).unwrap(), None);
    }

    #[test]
    fn non_unit_pivot_is_an_error() {
        let rows = vec![row(&[(0, "1 + q")])];
        assert!(matches!(rank(rows), Err(Error::NonUnitPivot(_))));
    }
}
