//! Bit-packed row reduction over GF(2).
//!
//! Rows are packed into `u64` limbs (column `j` lives in limb `j / 64`, bit
//! `j % 64`) so that a row operation is a run of XORs.

pub(crate) struct PackedRows {
    limbs: usize,
    data: Vec<u64>,
    rows: usize,
}

impl PackedRows {
    pub(crate) fn pack(rows: &[Vec<u32>], ncols: usize) -> Self {
        let limbs = ncols.div_ceil(64).max(1);
        let mut data = vec![0u64; limbs * rows.len()];
        for (i, row) in rows.iter().enumerate() {
            let dst = &mut data[i * limbs..(i + 1) * limbs];
            for (j, &x) in row.iter().enumerate() {
                if x & 1 == 1 {
                    dst[j / 64] |= 1 << (j % 64);
                }
            }
        }
        PackedRows {
            limbs,
            data,
            rows: rows.len(),
        }
    }

    #[inline]
    fn bit(&self, row: usize, col: usize) -> bool {
        (self.data[row * self.limbs + col / 64] >> (col % 64)) & 1 == 1
    }

    fn swap(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for k in 0..self.limbs {
            self.data.swap(a * self.limbs + k, b * self.limbs + k);
        }
    }

    // row[dst] ^= row[src]
    fn xor_into(&mut self, dst: usize, src: usize) {
        let l = self.limbs;
        let (lo, hi) = if dst < src {
            let (a, b) = self.data.split_at_mut(src * l);
            (&mut a[dst * l..dst * l + l], &b[..l])
        } else {
            let (a, b) = self.data.split_at_mut(dst * l);
            (&mut b[..l], &a[src * l..src * l + l])
        };
        for (d, s) in lo.iter_mut().zip(hi) {
            *d ^= *s;
        }
    }

    /// Reduced row-echelon form in place; returns the pivot columns.
    pub(crate) fn rref(&mut self, ncols: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..ncols {
            if r == self.rows {
                break;
            }
            let Some(piv) = (r..self.rows).find(|&i| self.bit(i, col)) else {
                continue;
            };
            self.swap(r, piv);
            for i in 0..self.rows {
                if i != r && self.bit(i, col) {
                    self.xor_into(i, r);
                }
            }
            pivots.push(col);
            r += 1;
        }
        pivots
    }

    pub(crate) fn unpack(&self, nrows: usize, ncols: usize) -> Vec<Vec<u32>> {
        (0..nrows)
            .map(|i| (0..ncols).map(|j| self.bit(i, j) as u32).collect())
            .collect()
    }
}
