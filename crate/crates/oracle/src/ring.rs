//! Small finite commutative rings as lookup tables.
//!
//! Elements are `u8` codes `0..size`. Every ring carries an involution
//! `conj`, which is the identity unless the ring is a quadratic unramified
//! extension (then it is the nontrivial Galois automorphism).

use crate::OracleError;

#[derive(Debug, Clone)]
pub struct Ring {
    pub name: String,
    size: usize,
    /// Residue characteristic.
    pub p: u64,
    /// Size of the residue field of the fixed ring of `conj` (the `q` of the
    /// unitary group), or of the residue field itself when `conj` is trivial.
    pub q: u64,
    pub is_field: bool,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<Option<u8>>,
    conj: Vec<u8>,
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// Irreducible moduli for the non-prime fields used here, low degree first.
fn modulus_for(q: u64) -> Option<(u64, Vec<u64>)> {
    Some(match q {
        4 => (2, vec![1, 1, 1]),
        8 => (2, vec![1, 1, 0, 1]),
        9 => (3, vec![1, 0, 1]),
        16 => (2, vec![1, 1, 0, 0, 1]),
        25 => (5, vec![2, 0, 1]),
        _ => return None,
    })
}

impl Ring {
    fn from_tables(
        name: String,
        size: usize,
        p: u64,
        q: u64,
        add: Vec<u8>,
        mul: Vec<u8>,
        conj: Vec<u8>,
    ) -> Ring {
        let neg = (0..size)
            .map(|a| (0..size).find(|&b| add[a * size + b] == 0).expect("additive inverse") as u8)
            .collect();
        let inv: Vec<Option<u8>> = (0..size)
            .map(|a| (0..size).find(|&b| mul[a * size + b] == 1).map(|b| b as u8))
            .collect();
        let is_field = inv.iter().skip(1).all(Option::is_some);
        Ring {
            name,
            size,
            p,
            q,
            is_field,
            add,
            mul,
            neg,
            inv,
            conj,
        }
    }

    /// `Z/n`.
    pub fn integers_mod(n: u64) -> Ring {
        let size = n as usize;
        let p = (2..=n).find(|d| n % d == 0).expect("n >= 2");
        let add = (0..size * size).map(|i| (((i / size) + (i % size)) % size) as u8).collect();
        let mul = (0..size * size).map(|i| (((i / size) * (i % size)) % size) as u8).collect();
        let q = if is_prime(n) { n } else { p };
        Ring::from_tables(format!("Z/{n}"), size, p, q, add, mul, (0..size as u8).collect())
    }

    /// `F_q` for prime `q` or `q` in {4, 8, 9, 16, 25}. When `q` is a square
    /// the involution is `a -> a^{sqrt q}`.
    pub fn galois_field(q: u64) -> Result<Ring, OracleError> {
        if is_prime(q) {
            return Ok(Ring::integers_mod(q).renamed(format!("F{q}")));
        }
        let (p, modulus) = modulus_for(q).ok_or(OracleError::UnsupportedField(q))?;
        let k = modulus.len() - 1;
        let size = q as usize;
        let digits = |mut a: usize| -> Vec<u64> {
            (0..k)
                .map(|_| {
                    let d = (a % p as usize) as u64;
                    a /= p as usize;
                    d
                })
                .collect()
        };
        let encode = |v: &[u64]| -> u8 { v.iter().rev().fold(0u64, |acc, &d| acc * p + d) as u8 };
        let mulmod = |a: &[u64], b: &[u64]| -> Vec<u64> {
            let mut prod = vec![0u64; 2 * k];
            for (i, x) in a.iter().enumerate() {
                for (j, y) in b.iter().enumerate() {
                    prod[i + j] = (prod[i + j] + x * y) % p;
                }
            }
            // reduce with the monic modulus
            for deg in (k..2 * k).rev() {
                let c = prod[deg];
                if c != 0 {
                    for (i, m) in modulus.iter().enumerate() {
                        let idx = deg - k + i;
                        prod[idx] = (prod[idx] + (p - c) * m) % p;
                    }
                }
            }
            prod.truncate(k);
            prod
        };
        let mut add = vec![0u8; size * size];
        let mut mul = vec![0u8; size * size];
        for a in 0..size {
            for b in 0..size {
                let (da, db) = (digits(a), digits(b));
                let s: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * size + b] = encode(&s);
                mul[a * size + b] = encode(&mulmod(&da, &db));
            }
        }
        let root = (1..=q).find(|r| r * r == q);
        let conj = (0..size)
            .map(|a| match root {
                Some(r) => {
                    let mut acc = 1u8;
                    for _ in 0..r {
                        acc = mul[acc as usize * size + a];
                    }
                    acc
                }
                None => a as u8,
            })
            .collect();
        let fixed_q = root.unwrap_or(q);
        Ok(Ring::from_tables(format!("F{q}"), size, p, fixed_q, add, mul, conj))
    }

    /// The unramified quadratic extension of `Z/p^2`, presented as
    /// `(Z/p^2)[x] / (x^2 - c1 x - c0)` with involution `x -> c1 - x`.
    ///
    /// `p = 2`: `x^2 + x + 1` (a Galois ring); odd `p`: `x^2 = rho` for the
    /// smallest non-square unit `rho`.
    pub fn unramified_quadratic(p: u64) -> Result<Ring, OracleError> {
        if !is_prime(p) {
            return Err(OracleError::UnsupportedField(p));
        }
        let n = p * p;
        let (c1, c0) = if p == 2 {
            (n - 1, n - 1)
        } else {
            let rho = (2..p).find(|r| (1..p).all(|x| (x * x) % p != *r)).expect("non-square exists");
            (0, rho)
        };
        let size = (n * n) as usize;
        let split = |a: usize| ((a as u64) % n, (a as u64) / n);
        let join = |x: u64, y: u64| ((x % n) + n * (y % n)) as u8;
        let mut add = vec![0u8; size * size];
        let mut mul = vec![0u8; size * size];
        for a in 0..size {
            for b in 0..size {
                let ((a0, a1), (b0, b1)) = (split(a), split(b));
                add[a * size + b] = join(a0 + b0, a1 + b1);
                // (a0 + a1 x)(b0 + b1 x), x^2 = c1 x + c0
                let x2 = a1 * b1 % n;
                mul[a * size + b] = join(a0 * b0 + x2 * c0, a0 * b1 + a1 * b0 + x2 * c1);
            }
        }
        // x -> c1 - x
        let conj = (0..size)
            .map(|a| {
                let (a0, a1) = split(a);
                join(a0 + a1 * c1, (n - a1) % n)
            })
            .collect();
        let label = if p == 2 { "GR(4,2)".to_string() } else { format!("Z/{n}[sqrt({c0})]") };
        Ok(Ring::from_tables(label, size, p, p, add, mul, conj))
    }

    fn renamed(mut self, name: String) -> Ring {
        self.name = name;
        self
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.size + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.add(a, self.neg[b as usize])
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    #[inline]
    pub fn inv(&self, a: u8) -> Option<u8> {
        self.inv[a as usize]
    }

    #[inline]
    pub fn is_unit(&self, a: u8) -> bool {
        self.inv[a as usize].is_some()
    }

    #[inline]
    pub fn conj(&self, a: u8) -> u8 {
        self.conj[a as usize]
    }

    pub fn has_involution(&self) -> bool {
        self.conj.iter().enumerate().any(|(i, &c)| c as usize != i)
    }

    pub fn elements(&self) -> impl Iterator<Item = u8> {
        0..self.size as u8
    }

    /// Elements with `a + conj(a) = 0`.
    pub fn trace_zero(&self) -> Vec<u8> {
        self.elements().filter(|&a| self.add(a, self.conj(a)) == 0).collect()
    }

    /// Elements with `a * conj(a) = 1`.
    pub fn norm_one(&self) -> Vec<u8> {
        self.elements().filter(|&a| self.mul(a, self.conj(a)) == 1).collect()
    }

    pub fn from_int(&self, v: i64) -> u8 {
        let one = 1u8;
        let mut acc = 0u8;
        for _ in 0..v.unsigned_abs() {
            acc = self.add(acc, one);
        }
        if v < 0 {
            self.neg(acc)
        } else {
            acc
        }
    }
}
