//! Dense matrices over a fixed cyclotomic field, stored as exponent vectors
//! so that sums and products skip per-step normalization.

use num_traits::Zero;

use super::{Cyclotomic, Q};

#[derive(Debug, Clone, PartialEq)]
pub struct CycMatrix {
    conductor: u32,
    rows: usize,
    cols: usize,
    /// row-major; each entry is a length-`conductor` exponent vector
    data: Vec<Vec<Q>>,
}

fn convolve_into(acc: &mut [Q], a: &[Q], b: &[Q]) {
    let n = acc.len();
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                acc[(i + j) % n] += *x * *y;
            }
        }
    }
}

impl CycMatrix {
    pub fn from_entries(conductor: u32, entries: &[Vec<Cyclotomic>]) -> Self {
        let rows = entries.len();
        let cols = entries.first().map_or(0, |r| r.len());
        let data = entries
            .iter()
            .flat_map(|r| r.iter().map(|x| x.exponents_at(conductor)))
            .collect();
        CycMatrix { conductor, rows, cols, data }
    }

    pub fn diagonal(conductor: u32, diag: &[Cyclotomic]) -> Self {
        let n = diag.len();
        let mut m = CycMatrix {
            conductor,
            rows: n,
            cols: n,
            data: vec![vec![Q::zero(); conductor as usize]; n * n],
        };
        for (i, d) in diag.iter().enumerate() {
            m.data[i * n + i] = d.exponents_at(conductor);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entry(&self, i: usize, j: usize) -> Cyclotomic {
        Cyclotomic::from_exponents(self.conductor, &self.data[i * self.cols + j])
    }

    pub fn to_entries(&self) -> Vec<Vec<Cyclotomic>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    pub fn mul(&self, other: &CycMatrix) -> CycMatrix {
        assert_eq!(self.cols, other.rows);
        assert_eq!(self.conductor, other.conductor);
        let n = self.conductor as usize;
        let mut data = vec![vec![Q::zero(); n]; self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.iter().all(|x| x.is_zero()) {
                    continue;
                }
                for j in 0..other.cols {
                    convolve_into(&mut data[i * other.cols + j], a, &other.data[k * other.cols + j]);
                }
            }
        }
        CycMatrix {
            conductor: self.conductor,
            rows: self.rows,
            cols: other.cols,
            data,
        }
    }

    /// Complex-conjugate transpose.
    pub fn adjoint(&self) -> CycMatrix {
        let n = self.conductor as usize;
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                let v = &self.data[i * self.cols + j];
                data.push((0..n).map(|k| v[(n - k) % n]).collect());
            }
        }
        CycMatrix {
            conductor: self.conductor,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_matches_entrywise_arithmetic() {
        let w = Cyclotomic::zeta(3, 1);
        let a = vec![
            vec![Cyclotomic::one(), w.clone()],
            vec![w.conj(), Cyclotomic::from_int(2)],
        ];
        let m = CycMatrix::from_entries(6, &a);
        let p = m.mul(&m.adjoint()).to_entries();
        for i in 0..2 {
            for j in 0..2 {
                let want: Cyclotomic = (0..2).map(|k| &a[i][k] * &a[j][k].conj()).sum();
                assert_eq!(p[i][j], want);
            }
        }
        let d = CycMatrix::diagonal(6, &[w.clone(), Cyclotomic::one()]);
        assert_eq!(d.mul(&m).entry(0, 1), &w * &w);
    }
}
