//! Square matrices of size at most 4 over a [`Ring`], stored row-major in a
//! fixed `[u8; 16]` with stride 4.

use crate::ring::Ring;

pub const MAX_N: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    pub n: u8,
    pub e: [u8; 16],
}

impl Mat {
    pub fn zero(n: usize) -> Mat {
        assert!(n <= MAX_N);
        Mat { n: n as u8, e: [0; 16] }
    }

    pub fn identity(n: usize) -> Mat {
        let mut m = Mat::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[&[u8]]) -> Mat {
        let mut m = Mat::zero(rows.len());
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), rows.len());
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u8 {
        self.e[i * 4 + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u8) {
        self.e[i * 4 + j] = v;
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.dim());
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn map(&self, f: impl Fn(u8) -> u8) -> Mat {
        let mut m = *self;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                m.set(i, j, f(self.get(i, j)));
            }
        }
        m
    }
}

impl Ring {
    pub fn mat_mul(&self, a: &Mat, b: &Mat) -> Mat {
        let n = a.dim();
        let mut c = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u8;
                for k in 0..n {
                    acc = self.add(acc, self.mul(a.get(i, k), b.get(k, j)));
                }
                c.set(i, j, acc);
            }
        }
        c
    }

    pub fn mat_add(&self, a: &Mat, b: &Mat) -> Mat {
        let mut c = *a;
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                c.set(i, j, self.add(a.get(i, j), b.get(i, j)));
            }
        }
        c
    }

    pub fn mat_scale(&self, a: &Mat, s: u8) -> Mat {
        a.map(|x| self.mul(s, x))
    }

    /// Conjugate transpose `A° = conj(A)^t`.
    pub fn adjoint(&self, a: &Mat) -> Mat {
        a.transpose().map(|x| self.conj(x))
    }

    /// Determinant of the submatrix on `rows x cols` by cofactor expansion;
    /// valid over any commutative ring.
    pub fn minor(&self, a: &Mat, rows: &[usize], cols: &[usize]) -> u8 {
        match rows.len() {
            0 => 1,
            1 => a.get(rows[0], cols[0]),
            2 => self.sub(
                self.mul(a.get(rows[0], cols[0]), a.get(rows[1], cols[1])),
                self.mul(a.get(rows[0], cols[1]), a.get(rows[1], cols[0])),
            ),
            k => {
                let mut acc = 0u8;
                let mut sub_cols = [0usize; MAX_N];
                for (idx, &c) in cols.iter().enumerate() {
                    let x = a.get(rows[0], c);
                    if x == 0 {
                        continue;
                    }
                    let mut m = 0;
                    for &cc in cols {
                        if cc != c {
                            sub_cols[m] = cc;
                            m += 1;
                        }
                    }
                    let term = self.mul(x, self.minor(a, &rows[1..], &sub_cols[..k - 1]));
                    acc = if idx % 2 == 0 { self.add(acc, term) } else { self.sub(acc, term) };
                }
                acc
            }
        }
    }

    pub fn det(&self, a: &Mat) -> u8 {
        let idx: Vec<usize> = (0..a.dim()).collect();
        self.minor(a, &idx, &idx)
    }

    /// Coefficients `c_0, ..., c_n` (with `c_n = 1`) of `det(tI - A)`, from
    /// sums of principal minors.
    pub fn char_poly(&self, a: &Mat) -> Vec<u8> {
        let n = a.dim();
        let mut coeffs = vec![0u8; n + 1];
        coeffs[n] = 1;
        let mut rows = [0usize; MAX_N];
        for subset in 1u32..(1 << n) {
            let mut k = 0;
            for i in 0..n {
                if subset & (1 << i) != 0 {
                    rows[k] = i;
                    k += 1;
                }
            }
            let m = self.minor(a, &rows[..k], &rows[..k]);
            // coefficient of t^{n-k} collects (-1)^k E_k
            let slot = &mut coeffs[n - k];
            *slot = if k % 2 == 0 { self.add(*slot, m) } else { self.sub(*slot, m) };
        }
        coeffs
    }

    /// Rank over a field, by Gaussian elimination.
    pub fn rank(&self, a: &Mat) -> usize {
        debug_assert!(self.is_field);
        let n = a.dim();
        let mut m = *a;
        let mut rank = 0;
        for col in 0..n {
            let Some(piv) = (rank..n).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            if piv != rank {
                for j in 0..n {
                    let (x, y) = (m.get(piv, j), m.get(rank, j));
                    m.set(piv, j, y);
                    m.set(rank, j, x);
                }
            }
            let inv = self.inv(m.get(rank, col)).expect("nonzero pivot in a field");
            for r in 0..n {
                if r != rank && m.get(r, col) != 0 {
                    let f = self.mul(m.get(r, col), inv);
                    for j in col..n {
                        let v = self.sub(m.get(r, j), self.mul(f, m.get(rank, j)));
                        m.set(r, j, v);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    /// Inverse over a field (or any ring, when the determinant is a unit) via
    /// the adjugate.
    pub fn mat_inv(&self, a: &Mat) -> Option<Mat> {
        let n = a.dim();
        let d = self.inv(self.det(a))?;
        if n == 1 {
            return Some(Mat::from_rows(&[&[d]]));
        }
        let mut out = Mat::zero(n);
        let mut rows = [0usize; MAX_N];
        let mut cols = [0usize; MAX_N];
        for i in 0..n {
            for j in 0..n {
                let mut r = 0;
                for x in (0..n).filter(|&x| x != j) {
                    rows[r] = x;
                    r += 1;
                }
                let mut c = 0;
                for y in (0..n).filter(|&y| y != i) {
                    cols[c] = y;
                    c += 1;
                }
                let cof = self.minor(a, &rows[..n - 1], &cols[..n - 1]);
                let cof = if (i + j) % 2 == 0 { cof } else { self.neg(cof) };
                out.set(i, j, self.mul(d, cof));
            }
        }
        Some(out)
    }

    /// Evaluates the polynomial with coefficients `f` (low degree first) at `A`.
    pub fn poly_at(&self, f: &[u8], a: &Mat) -> Mat {
        let n = a.dim();
        let mut acc = Mat::zero(n);
        for &c in f.iter().rev() {
            acc = self.mat_mul(&acc, a);
            for i in 0..n {
                acc.set(i, i, self.add(acc.get(i, i), c));
            }
        }
        acc
    }

    /// Decodes `idx` as a base-`size` digit string into an `n x n` matrix.
    pub fn mat_from_index(&self, n: usize, mut idx: u64) -> Mat {
        let s = self.size() as u64;
        let mut m = Mat::zero(n);
        for i in 0..n {
            for j in 0..n {
                m.set(i, j, (idx % s) as u8);
                idx /= s;
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn determinant_and_inverse() {
        let f = Ring::galois_field(5).unwrap();
        let a = Mat::from_rows(&[&[1, 2, 0], &[3, 4, 1], &[0, 1, 2]]);
        // det = 1(8-1) - 2(6-0) = -5 = 0 mod 5
        assert_eq!(f.det(&a), 0);
        assert_eq!(f.rank(&a), 2);
        let b = Mat::from_rows(&[&[1, 2], &[3, 4]]);
        let bi = f.mat_inv(&b).unwrap();
        assert_eq!(f.mat_mul(&b, &bi), Mat::identity(2));
    }

    #[test]
    fn char_poly_of_companion() {
        // companion matrix of t^2 + t + 1 over F_2
        let f = Ring::galois_field(2).unwrap();
        let c = Mat::from_rows(&[&[0, 1], &[1, 1]]);
        assert_eq!(f.char_poly(&c), vec![1, 1, 1]);
        assert_eq!(f.poly_at(&[1, 1, 1], &c), Mat::zero(2));
    }

    proptest! {
        #[test]
        fn cayley_hamilton(seed in any::<u64>(), q in prop::sample::select(vec![2u64, 3, 4, 9]), n in 1usize..=4) {
            let f = Ring::galois_field(q).unwrap();
            let total = (q as u128).pow((n * n) as u32);
            let a = f.mat_from_index(n, (seed as u128 % total) as u64);
            let chi = f.char_poly(&a);
            prop_assert_eq!(f.poly_at(&chi, &a), Mat::zero(n));
            prop_assert_eq!(chi[0], if n % 2 == 0 { f.det(&a) } else { f.neg(f.det(&a)) });
        }

        #[test]
        fn inverse_over_length_two_ring(seed in any::<u64>()) {
            let r = Ring::unramified_quadratic(3).unwrap();
            let a = r.mat_from_index(2, seed % (81u64.pow(4)));
            match r.mat_inv(&a) {
                Some(ai) => prop_assert_eq!(r.mat_mul(&a, &ai), Mat::identity(2)),
                None => prop_assert!(!r.is_unit(r.det(&a))),
            }
        }
    }
}
