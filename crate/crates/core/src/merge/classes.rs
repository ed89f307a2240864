use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::model::{answer_signature, RankMatrix, Sidedness};

/// Largest `m·n` for which classes are counted by enumeration.
pub const MAX_CLASS_CELLS: usize = 9;

/// Number of distinct 4-sided answer signatures over all `(mn)!` inputs.
pub fn count_equiv_classes(m: usize, n: usize) -> Result<u64> {
    let k = m.checked_mul(n).filter(|&k| k >= 1).ok_or_else(|| Error::Size(format!("{m}x{n}")))?;
    if k > MAX_CLASS_CELLS {
        return Err(Error::Resource(format!("{m}x{n} needs {k}! permutations; the limit is {MAX_CLASS_CELLS} cells")));
    }
    let mut perm: Vec<u32> = (0..k as u32).collect();
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    let mut record = |p: &[u32]| {
        let a = RankMatrix::new(m, n, p.to_vec()).expect("permutation");
        let sig = answer_signature(&a, Sidedness::Four);
        seen.insert(sig.iter().map(|q| ((q.row - 1) * n + q.col - 1) as u8).collect());
    };
    // Heap's algorithm
    let mut c = vec![0usize; k];
    record(&perm);
    let mut i = 0;
    while i < k {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            record(&perm);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    Ok(seen.len() as u64)
}
