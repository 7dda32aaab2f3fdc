//! Smith normal form over the integers (diagonal only, no transforms).
//!
//! Used to bring a presentation `Z^n / R` of a finite abelian group into
//! invariant-factor form `d_1 | d_2 | ... | d_k`.

use crate::error::{GtiError, Result};

/// Diagonal of the Smith normal form of an integer matrix (row-major).
/// Entries are nonnegative and each divides the next; length is `min(rows, cols)`.
pub fn smith_diagonal(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let n = rows.min(cols);
    for t in 0..n {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut pivot: Option<(usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, &v) in row.iter().enumerate().skip(t) {
                    if v != 0 && pivot.is_none_or(|(pi, pj)| v.abs() < m[pi][pj].abs()) {
                        pivot = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = pivot else {
                break;
            };
            m.swap(t, pi);
            for row in m.iter_mut() {
                row.swap(t, pj);
            }
            let p = m[t][t];
            let mut dirty = false;
            for i in t + 1..rows {
                let q = m[i][t] / p;
                if q != 0 {
                    let pivot = m[t].clone();
                    for (x, y) in m[i][t..].iter_mut().zip(&pivot[t..]) {
                        *x -= q * y;
                    }
                }
                dirty |= m[i][t] != 0;
            }
            for j in t + 1..cols {
                let q = m[t][j] / p;
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                dirty |= m[t][j] != 0;
            }
            if dirty {
                continue;
            }
            // Enforce divisibility: fold an offending row into the pivot row.
            let offending = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| m[i][j] % p != 0));
            match offending {
                Some(i) => {
                    let src = m[i].clone();
                    for (x, y) in m[t][t..].iter_mut().zip(&src[t..]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
    }
    (0..n).map(|t| m[t][t].abs()).collect()
}

/// Invariant factors (all `>= 2`, divisibility chain) of `Z^n / rows(relations)`.
pub fn invariant_factors_from_relations(relations: &[Vec<i64>], rank: usize) -> Result<Vec<u64>> {
    if relations.iter().any(|r| r.len() != rank) {
        return Err(GtiError::invalid(
            "relation rows must all have length equal to the rank",
        ));
    }
    let m: Vec<Vec<i128>> = relations
        .iter()
        .map(|r| r.iter().map(|&v| v as i128).collect())
        .collect();
    let mut diag = smith_diagonal(m);
    diag.resize(rank, 0);
    if diag.contains(&0) {
        return Err(GtiError::invalid("presentation defines an infinite group"));
    }
    Ok(diag
        .into_iter()
        .filter(|&d| d > 1)
        .map(|d| d as u64)
        .collect())
}

/// Normalizes an arbitrary list of cyclic orders into invariant factors.
pub fn normalize_factors(factors: &[u64]) -> Result<Vec<u64>> {
    if factors.contains(&0) {
        return Err(GtiError::invalid("group factors must be positive"));
    }
    let k = factors.len();
    let rel: Vec<Vec<i64>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| if i == j { factors[i] as i64 } else { 0 })
                .collect()
        })
        .collect();
    invariant_factors_from_relations(&rel, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coprime_factors_merge() {
        assert_eq!(normalize_factors(&[2, 3]).unwrap(), vec![6]);
        assert_eq!(normalize_factors(&[4, 2]).unwrap(), vec![2, 4]);
        assert_eq!(normalize_factors(&[6, 4]).unwrap(), vec![2, 12]);
        assert_eq!(normalize_factors(&[1]).unwrap(), Vec::<u64>::new());
        assert_eq!(normalize_factors(&[2, 4]).unwrap(), vec![2, 4]);
        assert!(normalize_factors(&[0, 2]).is_err());
    }

    #[test]
    fn general_relations() {
        // Z^2 / <(2,4),(6,8)>: determinant -8, gcd of entries 2 -> Z_2 x Z_4.
        let f = invariant_factors_from_relations(&[vec![2, 4], vec![6, 8]], 2).unwrap();
        assert_eq!(f, vec![2, 4]);
        assert!(invariant_factors_from_relations(&[vec![2, 0]], 2).is_err());
    }

    #[test]
    fn order_is_preserved() {
        for a in 1..13u64 {
            for b in 1..13u64 {
                let f = normalize_factors(&[a, b]).unwrap();
                assert_eq!(f.iter().product::<u64>(), a * b);
                for w in f.windows(2) {
                    assert_eq!(w[1] % w[0], 0);
                }
            }
        }
    }
}
