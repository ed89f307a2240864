//! Brute-force reference answers.

use super::matrix::RankMatrix;
use super::query::{Pos, QueryRect, Sidedness};
use crate::error::Result;

/// Oracle answers for every query of one class, in canonical order.
pub type Signature = Vec<Pos>;

/// Position of the maximum cell of `q`, by linear scan.
pub fn oracle_rmq(a: &RankMatrix, q: &QueryRect) -> Result<Pos> {
    q.validate(a.rows(), a.cols())?;
    let mut best = Pos::new(q.i1, q.j1);
    let mut best_val = a.at(best);
    for row in q.i1..=q.i2 {
        for col in q.j1..=q.j2 {
            let v = a.get(row - 1, col - 1);
            if v > best_val {
                best_val = v;
                best = Pos::new(row, col);
            }
        }
    }
    Ok(best)
}

fn row_range(s: Sidedness, m: usize) -> Vec<(usize, usize)> {
    match s {
        Sidedness::One => vec![(1, m)],
        Sidedness::Two | Sidedness::Three => (1..=m).map(|i2| (1, i2)).collect(),
        Sidedness::Four => (1..=m).flat_map(|i1| (i1..=m).map(move |i2| (i1, i2))).collect(),
    }
}

fn col_range(s: Sidedness, n: usize) -> Vec<(usize, usize)> {
    match s {
        Sidedness::One | Sidedness::Two => (1..=n).map(|j2| (1, j2)).collect(),
        Sidedness::Three | Sidedness::Four => (1..=n).flat_map(|j1| (j1..=n).map(move |j2| (j1, j2))).collect(),
    }
}

/// Every query of class `s`, ordered lexicographically by `(i1, i2, j1, j2)`.
pub fn enumerate_queries(m: usize, n: usize, s: Sidedness) -> Vec<QueryRect> {
    let cols = col_range(s, n);
    row_range(s, m)
        .into_iter()
        .flat_map(|(i1, i2)| cols.iter().map(move |&(j1, j2)| QueryRect::new(i1, i2, j1, j2)))
        .collect()
}

/// Oracle answers to [`enumerate_queries`], computed incrementally: one pass
/// per row range keeps the column maxima, then a running maximum per `j1`.
pub fn answer_signature(a: &RankMatrix, s: Sidedness) -> Signature {
    let (m, n) = (a.rows(), a.cols());
    let mut out = Vec::with_capacity(s.query_count(m, n));
    let first_rows: Vec<usize> = match s {
        Sidedness::Four => (1..=m).collect(),
        _ => vec![1],
    };
    for i1 in first_rows {
        // column maximum (row, value) over rows i1..=i2
        let mut colmax: Vec<(usize, u32)> = (0..n).map(|c| (i1, a.get(i1 - 1, c))).collect();
        for i2 in i1..=m {
            if i2 > i1 {
                for (c, slot) in colmax.iter_mut().enumerate() {
                    let v = a.get(i2 - 1, c);
                    if v > slot.1 {
                        *slot = (i2, v);
                    }
                }
            }
            if s == Sidedness::One && i2 != m {
                continue;
            }
            let starts = match s {
                Sidedness::One | Sidedness::Two => 1..=1,
                _ => 1..=n,
            };
            for j1 in starts {
                let mut best = (0usize, 0usize, 0u32);
                for j2 in j1..=n {
                    let (r, v) = colmax[j2 - 1];
                    if j2 == j1 || v > best.2 {
                        best = (r, j2, v);
                    }
                    out.push(Pos::new(best.0, best.1));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::gen_random_matrix;
    use std::collections::HashSet;

    fn sample() -> RankMatrix {
        RankMatrix::new(2, 3, vec![1, 3, 0, 2, 4, 5]).unwrap()
    }

    #[test]
    fn oracle_examples() {
        let one = RankMatrix::new(1, 1, vec![0]).unwrap();
        assert_eq!(oracle_rmq(&one, &QueryRect::new(1, 1, 1, 1)).unwrap(), Pos::new(1, 1));
        let a = sample();
        assert_eq!(oracle_rmq(&a, &QueryRect::new(1, 2, 1, 2)).unwrap(), Pos::new(2, 2));
        assert_eq!(oracle_rmq(&a, &QueryRect::new(1, 1, 1, 3)).unwrap(), Pos::new(1, 2));
        assert!(oracle_rmq(&a, &QueryRect::new(1, 3, 1, 1)).is_err());
    }

    #[test]
    fn query_counts_and_order() {
        assert_eq!(
            enumerate_queries(1, 2, Sidedness::Four),
            vec![QueryRect::new(1, 1, 1, 1), QueryRect::new(1, 1, 1, 2), QueryRect::new(1, 1, 2, 2)]
        );
        assert_eq!(enumerate_queries(2, 2, Sidedness::Four).len(), 9);
        assert_eq!(enumerate_queries(2, 3, Sidedness::One).len(), 3);
        for (m, n) in [(1, 1), (2, 5), (4, 3), (3, 7)] {
            for s in Sidedness::ALL {
                let qs = enumerate_queries(m, n, s);
                assert_eq!(qs.len(), s.query_count(m, n));
                assert!(qs.windows(2).all(|w| w[0] < w[1]));
                assert!(qs.iter().all(|q| q.validate_for(s, m, n).is_ok()));
            }
        }
    }

    #[test]
    fn signature_matches_scan() {
        for seed in 0..20 {
            let a = gen_random_matrix(1 + seed as usize % 4, 1 + seed as usize % 6, seed).unwrap();
            for s in Sidedness::ALL {
                let sig = answer_signature(&a, s);
                let qs = enumerate_queries(a.rows(), a.cols(), s);
                let scan: Vec<Pos> = qs.iter().map(|q| oracle_rmq(&a, q).unwrap()).collect();
                assert_eq!(sig, scan, "{s} on seed {seed}");
            }
        }
    }

    #[test]
    fn signature_is_order_invariant() {
        let a = sample();
        let doubled: Vec<u64> = a.cells().iter().map(|&v| 2 * v as u64 + 7).collect();
        let b = RankMatrix::from_values(2, 3, &doubled).unwrap();
        assert_eq!(answer_signature(&a, Sidedness::Four), answer_signature(&b, Sidedness::Four));
        let one = RankMatrix::new(1, 1, vec![0]).unwrap();
        assert_eq!(answer_signature(&one, Sidedness::Four), vec![Pos::new(1, 1)]);
    }

    #[test]
    fn two_by_two_classes() {
        use itertools::Itertools;
        let sigs: HashSet<_> = (0..4u32)
            .permutations(4)
            .map(|p| answer_signature(&RankMatrix::new(2, 2, p).unwrap(), Sidedness::Four))
            .collect();
        assert_eq!(sigs.len(), 16);
    }

    #[test]
    fn answers_lie_in_query_and_are_monotone() {
        let a = gen_random_matrix(4, 5, 3).unwrap();
        let qs = enumerate_queries(4, 5, Sidedness::Four);
        let ans = answer_signature(&a, Sidedness::Four);
        for (q, p) in qs.iter().zip(&ans) {
            assert!(q.contains(*p));
        }
        for (q, p) in qs.iter().zip(&ans) {
            for (q2, p2) in qs.iter().zip(&ans) {
                let inside = q.i1 >= q2.i1 && q.i2 <= q2.i2 && q.j1 >= q2.j1 && q.j2 <= q2.j2;
                if inside && q.contains(*p2) {
                    assert_eq!(p, p2);
                }
            }
        }
    }
}
