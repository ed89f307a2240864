use crate::bitkit::ceil_log2;

/// Maximum label over a rectangle: a 2D sparse table over square blocks,
/// with cell scans for the partial blocks at the border.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelIndex {
    m: usize,
    n: usize,
    b: usize,
    rows: usize,
    cols: usize,
    /// `table[kr][kc][br * cols + bc]`: max over `2^kr × 2^kc` blocks
    table: Vec<Vec<Vec<u8>>>,
    label_bits: u32,
}

fn floor_log2(x: usize) -> usize {
    (usize::BITS - 1 - x.leading_zeros()) as usize
}

impl LabelIndex {
    pub fn new(labels: &[u8], m: usize, n: usize) -> Self {
        let b = floor_log2((m * n).max(2)).max(1);
        let (rows, cols) = (m / b, n / b);
        let max_label = labels.iter().copied().max().unwrap_or(0);
        let mut base = vec![0u8; rows * cols];
        for br in 0..rows {
            for bc in 0..cols {
                let mut mx = 0;
                for r in br * b..(br + 1) * b {
                    for c in bc * b..(bc + 1) * b {
                        mx = mx.max(labels[r * n + c]);
                    }
                }
                base[br * cols + bc] = mx;
            }
        }
        let mut table: Vec<Vec<Vec<u8>>> = Vec::new();
        if rows > 0 && cols > 0 {
            let mut row_levels = vec![base];
            let mut kr = 0;
            while (2usize << kr) <= rows {
                let prev = &row_levels[kr];
                let h = 1 << kr;
                let mut next = vec![0u8; rows * cols];
                for br in 0..=rows - 2 * h {
                    for bc in 0..cols {
                        next[br * cols + bc] = prev[br * cols + bc].max(prev[(br + h) * cols + bc]);
                    }
                }
                row_levels.push(next);
                kr += 1;
            }
            for level in row_levels {
                let mut col_levels = vec![level];
                let mut kc = 0;
                while (2usize << kc) <= cols {
                    let prev = &col_levels[kc];
                    let w = 1 << kc;
                    let mut next = vec![0u8; rows * cols];
                    for br in 0..rows {
                        for bc in 0..=cols - 2 * w {
                            next[br * cols + bc] = prev[br * cols + bc].max(prev[br * cols + bc + w]);
                        }
                    }
                    col_levels.push(next);
                    kc += 1;
                }
                table.push(col_levels);
            }
        }
        LabelIndex { m, n, b, rows, cols, table, label_bits: ceil_log2(max_label as u64 + 1) }
    }

    /// Size of the table in bits, counting only entries that are defined.
    pub fn bits(&self) -> usize {
        let mut entries = 0;
        for kr in 0..self.table.len() {
            for kc in 0..self.table[kr].len() {
                entries += (self.rows + 1 - (1 << kr)) * (self.cols + 1 - (1 << kc));
            }
        }
        entries * self.label_bits as usize
    }

    fn blocks_max(&self, br1: usize, br2: usize, bc1: usize, bc2: usize) -> u8 {
        let kr = floor_log2(br2 - br1 + 1);
        let kc = floor_log2(bc2 - bc1 + 1);
        let t = &self.table[kr][kc];
        let (r2, c2) = (br2 + 1 - (1 << kr), bc2 + 1 - (1 << kc));
        t[br1 * self.cols + bc1].max(t[br1 * self.cols + c2]).max(t[r2 * self.cols + bc1]).max(t[r2 * self.cols + c2])
    }

    /// Maximum label in rows `r1..=r2`, columns `c1..=c2` (0-based).
    pub fn max_label(&self, labels: &[u8], r1: usize, r2: usize, c1: usize, c2: usize) -> u8 {
        debug_assert!(r2 < self.m && c2 < self.n);
        let b = self.b;
        // whole blocks inside the query
        let br1 = r1.div_ceil(b);
        let bc1 = c1.div_ceil(b);
        let br2 = ((r2 + 1) / b).min(self.rows);
        let bc2 = ((c2 + 1) / b).min(self.cols);
        let scan = |rr: std::ops::Range<usize>, cc: std::ops::RangeInclusive<usize>| {
            let mut mx = 0u8;
            for r in rr {
                for c in cc.clone() {
                    mx = mx.max(labels[r * self.n + c]);
                }
            }
            mx
        };
        if br1 >= br2 || bc1 >= bc2 {
            return scan(r1..r2 + 1, c1..=c2);
        }
        let inner = self.blocks_max(br1, br2 - 1, bc1, bc2 - 1);
        let (ir1, ir2, ic1, ic2) = (br1 * b, br2 * b, bc1 * b, bc2 * b);
        let top = scan(r1..ir1, c1..=c2);
        let bottom = scan(ir2..r2 + 1, c1..=c2);
        let left = if ic1 > c1 { scan(ir1..ir2, c1..=ic1 - 1) } else { 0 };
        let right = if ic2 <= c2 { scan(ir1..ir2, ic2..=c2) } else { 0 };
        inner.max(top).max(bottom).max(left).max(right)
    }
}
