//! Similarity-class invariants of matrices over a finite field.
//!
//! The invariant of `A` is the multiset of `(f, ν)` where `f` runs over the
//! irreducible factors of the characteristic polynomial and `ν` is read off
//! kernel dimensions: the number of parts of `ν` that are `>= j` equals
//! `(dim ker f(A)^j - dim ker f(A)^{j-1}) / deg f`.

use std::fmt;

use gzeta_core::{Partition, Slot, TypeSymbol};

use crate::matrix::{Mat, MAX_N};
use crate::poly::{unitary_dual, FieldPoly, PolyTables};
use crate::ring::Ring;
use crate::OracleError;

/// Packed invariant: up to four 32-bit entries `(id + 1) << 5 | partition`,
/// sorted ascending. Cheap to hash in census inner loops.
pub type ClassKey = u128;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ClassInvariant {
    pub factors: Vec<(FieldPoly, Partition)>,
}

impl ClassInvariant {
    pub fn size(&self) -> usize {
        self.factors.iter().map(|(f, nu)| (f.len() - 1) * nu.size() as usize).sum()
    }
}

impl fmt::Display for ClassInvariant {
    /// Polynomials as coefficient codes, high degree first: `[1 1 1]:(1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(p, nu)| {
                let cs: Vec<String> = p.iter().rev().map(u8::to_string).collect();
                format!("[{}]:{nu}", cs.join(" "))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub struct Classifier {
    pub field: Ring,
    pub n: usize,
    pub tables: PolyTables,
    partitions: Vec<Partition>,
    /// `dual[id]` for fields with an involution.
    dual: Option<Vec<u32>>,
}

impl Classifier {
    pub fn new(field: Ring, n: usize) -> Classifier {
        assert!((1..=MAX_N).contains(&n));
        let tables = PolyTables::new(&field, n);
        let partitions = (1..=MAX_N as u32).flat_map(Partition::all).collect();
        let dual = field.has_involution().then(|| {
            tables
                .irreducibles
                .iter()
                .map(|g| tables.id_of(&unitary_dual(&field, g)).expect("dual is irreducible"))
                .collect()
        });
        Classifier {
            field,
            n,
            tables,
            partitions,
            dual,
        }
    }

    fn partition_code(&self, nu: &Partition) -> u128 {
        self.partitions.iter().position(|p| p == nu).expect("partition of size <= 4") as u128
    }

    /// Partition attached to the irreducible `g` of multiplicity `m`.
    fn partition_for(&self, a: &Mat, g: &[u8], m: u8) -> Partition {
        if m == 1 {
            return Partition::new(vec![1]).unwrap();
        }
        let f = &self.field;
        let k = g.len() - 1;
        let b = f.poly_at(g, a);
        let mut power = b;
        let mut prev = 0usize;
        let mut ranks_ge = Vec::new();
        loop {
            let dim = self.n - f.rank(&power);
            let diff = dim - prev;
            debug_assert_eq!(diff % k, 0);
            ranks_ge.push((diff / k) as u32);
            prev = dim;
            if dim == m as usize * k {
                break;
            }
            power = f.mat_mul(&power, &b);
        }
        // conjugate of (r_1 >= r_2 >= ...)
        let parts: Vec<u32> = (1..=ranks_ge[0])
            .map(|i| ranks_ge.iter().filter(|&&r| r >= i).count() as u32)
            .collect();
        Partition::new(parts).expect("kernel dimensions give a partition")
    }

    /// Characteristic polynomial and packed invariant.
    pub fn key_with_char_poly(&self, a: &Mat) -> (FieldPoly, ClassKey) {
        let chi = self.field.char_poly(a);
        let fac = self.tables.factor(&self.field, &chi);
        let mut entries = [0u128; MAX_N];
        for (slot, &(id, m)) in fac.iter().enumerate() {
            let g = &self.tables.irreducibles[id as usize];
            let nu = self.partition_for(a, g, m);
            entries[slot] = ((id as u128 + 1) << 5) | self.partition_code(&nu);
        }
        let used = &mut entries[..fac.len()];
        used.sort_unstable();
        let key = used.iter().fold(0u128, |acc, &e| (acc << 32) | e);
        (chi, key)
    }

    pub fn key(&self, a: &Mat) -> ClassKey {
        self.key_with_char_poly(a).1
    }

    fn entries(&self, mut key: ClassKey) -> Vec<(u32, Partition)> {
        let mut out = Vec::new();
        while key != 0 {
            let e = key & 0xffff_ffff;
            out.push((((e >> 5) - 1) as u32, self.partitions[(e & 31) as usize].clone()));
            key >>= 32;
        }
        out.reverse();
        out
    }

    pub fn invariant_of_key(&self, key: ClassKey) -> ClassInvariant {
        ClassInvariant {
            factors: self
                .entries(key)
                .into_iter()
                .map(|(id, nu)| (self.tables.irreducibles[id as usize].clone(), nu))
                .collect(),
        }
    }

    pub fn classify(&self, a: &Mat) -> ClassInvariant {
        self.invariant_of_key(self.key(a))
    }

    /// Type of a `gl_n` class over this field.
    pub fn gl_type(&self, key: ClassKey) -> TypeSymbol {
        TypeSymbol::new(
            self.entries(key)
                .into_iter()
                .map(|(id, nu)| Slot {
                    d: self.tables.degree_of(id) as u32,
                    nu,
                })
                .collect(),
        )
    }

    /// Type of a `gu_n(F_q)` class, the field being `F_{q^2}`: a self-dual
    /// irreducible of degree `k` is a slot of degree `k`; a pair `{g, g*}` of
    /// degree `k` each is one slot of degree `2k`.
    pub fn gu_type(&self, key: ClassKey) -> Result<TypeSymbol, OracleError> {
        let dual = self
            .dual
            .as_ref()
            .ok_or_else(|| OracleError::Inconsistent(format!("{} has no involution", self.field.name)))?;
        let entries = self.entries(key);
        let mut slots = Vec::new();
        for (id, nu) in &entries {
            let partner = dual[*id as usize];
            let k = self.tables.degree_of(*id) as u32;
            if partner == *id {
                slots.push(Slot { d: k, nu: nu.clone() });
                continue;
            }
            match entries.iter().find(|(j, _)| *j == partner) {
                Some((_, mu)) if mu == nu => {
                    if *id < partner {
                        slots.push(Slot { d: 2 * k, nu: nu.clone() });
                    }
                }
                _ => {
                    return Err(OracleError::Inconsistent(format!(
                        "unpaired factor in unitary invariant {}",
                        self.invariant_of_key(key)
                    )))
                }
            }
        }
        Ok(TypeSymbol::new(slots))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inv(c: &Classifier, rows: &[&[u8]]) -> String {
        c.classify(&Mat::from_rows(rows)).to_string()
    }

    #[test]
    fn basic_examples() {
        let c = Classifier::new(Ring::galois_field(2).unwrap(), 2);
        assert_eq!(inv(&c, &[&[0, 0], &[0, 0]]), "[1 0]:(1,1)");
        assert_eq!(inv(&c, &[&[0, 1], &[1, 1]]), "[1 1 1]:(1)");
        // Jordan block at 1: t - 1 = t + 1 over F_2
        assert_eq!(inv(&c, &[&[1, 1], &[0, 1]]), "[1 1]:(2)");
        assert_eq!(c.gl_type(c.key(&Mat::from_rows(&[&[1, 1], &[0, 1]]))).to_string(), "1:(2)");
    }

    #[test]
    fn partitions_from_kernels() {
        let c = Classifier::new(Ring::galois_field(3).unwrap(), 4);
        // nilpotent with Jordan blocks 2, 1, 1
        let a = Mat::from_rows(&[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]);
        assert_eq!(c.gl_type(c.key(&a)).to_string(), "1:(2,1,1)");
        // blocks 2, 2
        let b = Mat::from_rows(&[&[0, 1, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 0, 0]]);
        assert_eq!(c.gl_type(c.key(&b)).to_string(), "1:(2,2)");
        // diag(1, 1, 2) + 0 block
        let d = Mat::from_rows(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 0]]);
        assert_eq!(c.gl_type(c.key(&d)).to_string(), "1:(1,1) + 1:(1) + 1:(1)");
    }

    #[test]
    fn key_round_trip() {
        let c = Classifier::new(Ring::galois_field(2).unwrap(), 3);
        for idx in 0..512 {
            let a = c.field.mat_from_index(3, idx);
            let key = c.key(&a);
            let invariant = c.invariant_of_key(key);
            assert_eq!(invariant.size(), 3);
            assert_eq!(c.gl_type(key).size(), 3);
        }
    }
}
