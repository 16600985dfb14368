use super::matrix::inverse_mod;

/// Reduced row echelon form over `F_p`, built one row at a time.
/// Rows over `F_2` are bit-packed.
pub struct RowEchelon {
    p: u64,
    cols: usize,
    pivots: Vec<(usize, Vec<u64>)>,
}

impl RowEchelon {
    pub fn new(p: u64, cols: usize) -> Self {
        Self { p, cols, pivots: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.cols
    }

    /// Adds a row; returns whether the rank grew.
    pub fn insert(&mut self, row: &[u64]) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        if self.p == 2 {
            self.insert_binary(row)
        } else {
            self.insert_prime(row)
        }
    }

    fn insert_binary(&mut self, row: &[u64]) -> bool {
        let bit = |v: &[u64], c: usize| v[c / 64] >> (c % 64) & 1 == 1;
        let mut v = vec![0u64; self.cols.div_ceil(64)];
        for (j, &x) in row.iter().enumerate() {
            if x % 2 == 1 {
                v[j / 64] |= 1 << (j % 64);
            }
        }
        for (col, piv) in &self.pivots {
            if bit(&v, *col) {
                v.iter_mut().zip(piv).for_each(|(a, b)| *a ^= b);
            }
        }
        let Some(w) = v.iter().position(|&b| b != 0) else {
            return false;
        };
        let col = w * 64 + v[w].trailing_zeros() as usize;
        for (_, piv) in &mut self.pivots {
            if bit(piv, col) {
                piv.iter_mut().zip(&v).for_each(|(a, b)| *a ^= b);
            }
        }
        self.pivots.push((col, v));
        true
    }

    fn insert_prime(&mut self, row: &[u64]) -> bool {
        let p = self.p;
        let mut v: Vec<u64> = row.iter().map(|x| x % p).collect();
        for (col, piv) in &self.pivots {
            let c = v[*col];
            if c != 0 {
                v.iter_mut().zip(piv).for_each(|(x, y)| *x = (*x + (p - c) * y) % p);
            }
        }
        let Some(col) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inverse_mod(v[col], p);
        v.iter_mut().for_each(|x| *x = *x * inv % p);
        for (_, piv) in &mut self.pivots {
            let c = piv[col];
            if c != 0 {
                piv.iter_mut().zip(&v).for_each(|(x, y)| *x = (*x + (p - c) * y) % p);
            }
        }
        self.pivots.push((col, v));
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        let mut e = RowEchelon::new(2, 70);
        let mut r = vec![0; 70];
        r[69] = 1;
        assert!(e.insert(&r));
        assert!(!e.insert(&r));
        r[3] = 1;
        assert!(e.insert(&r));
        assert_eq!(e.rank(), 2);

        let mut f = RowEchelon::new(7, 2);
        assert!(f.insert(&[1, 2]));
        assert!(!f.insert(&[3, 6]));
        assert!(f.insert(&[0, 5]));
        assert!(f.is_full());
    }
}
