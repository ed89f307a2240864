//! Regions for 4-sided queries.
//!
//! A cell `p` answers `q ∋ p` exactly when `q` holds none of `p`'s
//! delimiters: the bigger cells `d` such that the rectangle spanned by `p`
//! and `d` holds no other bigger cell. The array is framed by virtual cells
//! of infinite value, so the nearest bigger cell on each axis always exists.
//!
//! Each cell stores its delimiters clockwise from the one above it, every
//! point as `γ(|Δrow| + 1) γ(|Δcol| + 1)`, closed by repeating the first.

use bitvec::prelude::*;

use crate::bitkit::{gamma_decode, gamma_encode, BitReader, BitWriter, Bits};
use crate::error::{Error, Result};
use crate::model::{Pos, QueryRect, RankMatrix, Sidedness};

/// A delimiter in framed coordinates: rows `0..=m+1`, columns `0..=n+1`.
pub type Point = (usize, usize);

/// Values with a frame of `u32::MAX` around them.
struct Framed {
    w: usize,
    v: Vec<u32>,
}

impl Framed {
    fn new(a: &RankMatrix) -> Self {
        let (m, n) = (a.rows(), a.cols());
        let w = n + 2;
        let mut v = vec![u32::MAX; (m + 2) * w];
        for r in 0..m {
            for c in 0..n {
                v[(r + 1) * w + c + 1] = a.get(r, c);
            }
        }
        Framed { w, v }
    }

    #[inline]
    fn at(&self, r: usize, c: usize) -> u32 {
        self.v[r * self.w + c]
    }
}

/// Delimiters of framed cell `(i, j)` in clockwise order, without the
/// closing repeat.
fn delimiters(f: &Framed, i: usize, j: usize) -> Vec<Point> {
    let v = f.at(i, j);
    let up = (0..i).rev().find(|&k| f.at(k, j) > v).unwrap();
    let down = (i + 1..).find(|&k| f.at(k, j) > v).unwrap();
    let left = (0..j).rev().find(|&l| f.at(i, l) > v).unwrap();
    let right = (j + 1..).find(|&l| f.at(i, l) > v).unwrap();

    // Nearest rows first; the column bound shrinks toward j.
    let right_side = |rows: &mut dyn Iterator<Item = usize>| {
        let mut best = right;
        let mut out = Vec::new();
        for k in rows {
            if let Some(l) = (j + 1..best).find(|&l| f.at(k, l) > v) {
                out.push((k, l));
                best = l;
                if l == j + 1 {
                    break;
                }
            }
        }
        out
    };
    let left_side = |rows: &mut dyn Iterator<Item = usize>| {
        let mut best = left;
        let mut out = Vec::new();
        for k in rows {
            if let Some(l) = (best + 1..j).rev().find(|&l| f.at(k, l) > v) {
                out.push((k, l));
                best = l;
                if l + 1 == j {
                    break;
                }
            }
        }
        out
    };
    let mut ur = right_side(&mut (up + 1..i).rev());
    ur.reverse();
    let dr = right_side(&mut (i + 1..down));
    let mut dl = left_side(&mut (i + 1..down));
    dl.reverse();
    let ul = left_side(&mut (up + 1..i).rev());

    let mut out = Vec::with_capacity(4 + ur.len() + dr.len() + dl.len() + ul.len());
    out.push((up, j));
    out.extend(ur);
    out.push((i, right));
    out.extend(dr);
    out.push((down, j));
    out.extend(dl);
    out.push((i, left));
    out.extend(ul);
    out
}

fn put(w: &mut BitWriter, i: usize, j: usize, p: Point) -> Result<()> {
    gamma_encode(w, (p.0.abs_diff(i) + 1) as u64)?;
    gamma_encode(w, (p.1.abs_diff(j) + 1) as u64)
}

pub fn encode_4sided_regions(a: &RankMatrix) -> Bits {
    let f = Framed::new(a);
    let mut out = BitWriter::new();
    for i in 1..=a.rows() {
        for j in 1..=a.cols() {
            let d = delimiters(&f, i, j);
            for &p in d.iter().chain(std::iter::once(&d[0])) {
                put(&mut out, i, j, p).expect("deltas are positive");
            }
        }
    }
    out.finish()
}

#[derive(Clone, Debug)]
pub struct Region4Index {
    m: usize,
    n: usize,
    /// per cell (row-major), delimiters in framed coordinates
    regions: Vec<Vec<Point>>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Phase {
    UpRight,
    DownRight,
    DownLeft,
    UpLeft,
}

impl Region4Index {
    pub fn decode(bits: &BitSlice<u64, Lsb0>, m: usize, n: usize) -> Result<Self> {
        let mut r = BitReader::new(bits);
        let mut regions = Vec::with_capacity(m * n);
        let bad = |what: &str| Error::Format(format!("region list: {what}"));
        for i in 1..=m {
            for j in 1..=n {
                let read = |r: &mut BitReader<'_>| -> Result<(usize, usize)> {
                    let dr = gamma_decode(r)? - 1;
                    let dc = gamma_decode(r)? - 1;
                    if dr > (m + 1) as u64 || dc > (n + 1) as u64 {
                        return Err(bad("offset beyond the frame"));
                    }
                    Ok((dr as usize, dc as usize))
                };
                let (dr, dc) = read(&mut r)?;
                if dc != 0 || dr == 0 || dr > i {
                    return Err(bad("first point must lie straight above"));
                }
                let first = (i - dr, j);
                let mut list = vec![first];
                let mut phase = Phase::UpRight;
                loop {
                    let (dr, dc) = read(&mut r)?;
                    if dr == 0 && dc == 0 {
                        return Err(bad("zero offset"));
                    }
                    let p = match phase {
                        Phase::UpRight if dr == 0 => {
                            phase = Phase::DownRight;
                            (i, j + dc)
                        }
                        Phase::UpRight if dc > 0 && dr <= i => (i - dr, j + dc),
                        Phase::DownRight if dc == 0 => {
                            phase = Phase::DownLeft;
                            (i + dr, j)
                        }
                        Phase::DownRight if dr > 0 => (i + dr, j + dc),
                        Phase::DownLeft if dr == 0 && dc <= j => {
                            phase = Phase::UpLeft;
                            (i, j - dc)
                        }
                        Phase::DownLeft if dc > 0 && dc <= j => (i + dr, j - dc),
                        Phase::UpLeft if dc == 0 && dr <= i => {
                            if (i - dr, j) != first {
                                return Err(bad("list does not close on its first point"));
                            }
                            break;
                        }
                        Phase::UpLeft if dr > 0 && dr <= i && dc <= j => (i - dr, j - dc),
                        _ => return Err(bad("point out of clockwise order")),
                    };
                    if p.0 > m + 1 || p.1 > n + 1 {
                        return Err(bad("point beyond the frame"));
                    }
                    list.push(p);
                }
                regions.push(list);
            }
        }
        r.expect_end()?;
        Ok(Region4Index { m, n, regions })
    }

    /// Delimiters of cell `p` in framed coordinates (1-based cells, with
    /// row `0`, row `m+1`, column `0` and column `n+1` virtual).
    pub fn delimiters(&self, p: Pos) -> &[Point] {
        &self.regions[(p.row - 1) * self.n + p.col - 1]
    }

    /// Whether `p` answers `q`, assuming `p ∈ q`.
    pub fn region_contains(&self, p: Pos, q: &QueryRect) -> bool {
        !self.delimiters(p).iter().any(|&(k, l)| q.contains(Pos::new(k, l)))
    }

    pub fn query(&self, q: &QueryRect) -> Result<Pos> {
        q.validate_for(Sidedness::Four, self.m, self.n)?;
        for row in q.i1..=q.i2 {
            for col in q.j1..=q.j2 {
                let p = Pos::new(row, col);
                if self.region_contains(p, q) {
                    return Ok(p);
                }
            }
        }
        Err(Error::Internal(format!("no region contains {q}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{answer_signature, enumerate_queries, gen_random_matrix, oracle_rmq};
    use itertools::Itertools;

    fn check(a: &RankMatrix) {
        let (m, n) = (a.rows(), a.cols());
        let idx = Region4Index::decode(&encode_4sided_regions(a), m, n).unwrap();
        let queries = enumerate_queries(m, n, Sidedness::Four);
        let got: Vec<Pos> = queries.iter().map(|q| idx.query(q).unwrap()).collect();
        assert_eq!(got, answer_signature(a, Sidedness::Four));
        for q in &queries {
            let ans = oracle_rmq(a, q).unwrap();
            for row in q.i1..=q.i2 {
                for col in q.j1..=q.j2 {
                    let p = Pos::new(row, col);
                    assert_eq!(idx.region_contains(p, q), p == ans);
                }
            }
        }
    }

    #[test]
    fn global_maximum_owns_everything() {
        let a = gen_random_matrix(5, 6, 3).unwrap();
        let idx = Region4Index::decode(&encode_4sided_regions(&a), 5, 6).unwrap();
        let top = (0..30).find(|&k| a.cells()[k] == 29).unwrap();
        let p = Pos::new(top / 6 + 1, top % 6 + 1);
        assert!(idx.delimiters(p).iter().all(|&(k, l)| k == 0 || l == 0 || k == 6 || l == 7));
        assert_eq!(idx.query(&QueryRect::full(5, 6)).unwrap(), p);
    }

    #[test]
    fn two_by_two_example() {
        let a = RankMatrix::from_rows(&[vec![4, 1], vec![3, 2]]).unwrap();
        let idx = Region4Index::decode(&encode_4sided_regions(&a), 2, 2).unwrap();
        assert_eq!(idx.query(&QueryRect::new(2, 2, 2, 2)).unwrap(), Pos::new(2, 2));
        assert_eq!(idx.query(&QueryRect::new(2, 2, 1, 2)).unwrap(), Pos::new(2, 1));
        // (2,2) also answers the column [1..2]×[2..2]: its only bigger
        // neighbours lie in column 1.
        assert_eq!(idx.query(&QueryRect::new(1, 2, 2, 2)).unwrap(), Pos::new(2, 2));
        assert!(idx.region_contains(Pos::new(2, 2), &QueryRect::new(1, 2, 2, 2)));
        assert!(!idx.region_contains(Pos::new(2, 2), &QueryRect::new(1, 2, 1, 2)));
        check(&a);
    }

    #[test]
    fn exhaustive_small() {
        for (m, n) in [(1, 1), (1, 5), (2, 2), (2, 3), (3, 2), (2, 4), (4, 2), (1, 8), (8, 1)] {
            for perm in (0..(m * n) as u32).permutations(m * n) {
                check(&RankMatrix::new(m, n, perm).unwrap());
            }
        }
    }

    #[test]
    fn random_larger() {
        for s in 0..20 {
            check(&gen_random_matrix(4, 12, s).unwrap());
            check(&gen_random_matrix(9, 7, 100 + s).unwrap());
        }
    }

    #[test]
    fn truncated_payload() {
        let a = gen_random_matrix(3, 3, 1).unwrap();
        let bits = encode_4sided_regions(&a);
        assert!(Region4Index::decode(&bits[..bits.len() - 1], 3, 3).is_err());
        let mut longer = bits.clone();
        longer.push(true);
        assert!(Region4Index::decode(&longer, 3, 3).is_err());
    }
}
