//! Monic polynomials over a finite field, coefficients low degree first.

use std::collections::HashMap;

use crate::ring::Ring;

pub type FieldPoly = Vec<u8>;

pub fn poly_mul(f: &Ring, a: &[u8], b: &[u8]) -> FieldPoly {
    let mut out = vec![0u8; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    out
}

/// Code of a monic polynomial of known degree: its lower coefficients as
/// base-`q` digits.
pub fn monic_code(f: &Ring, poly: &[u8]) -> u64 {
    let s = f.size() as u64;
    poly[..poly.len() - 1].iter().rev().fold(0, |acc, &c| acc * s + c as u64)
}

pub fn monic_from_code(f: &Ring, degree: usize, mut code: u64) -> FieldPoly {
    let s = f.size() as u64;
    let mut out = Vec::with_capacity(degree + 1);
    for _ in 0..degree {
        out.push((code % s) as u8);
        code /= s;
    }
    out.push(1);
    out
}

/// `(irreducible id, multiplicity)` pairs, ids ascending.
pub type Factorization = Vec<(u32, u8)>;

/// Irreducibles of degree `<= max_degree` and the factorization of every
/// monic polynomial of degree exactly `max_degree`.
#[derive(Debug, Clone)]
pub struct PolyTables {
    pub max_degree: usize,
    /// Sorted by degree, then code.
    pub irreducibles: Vec<FieldPoly>,
    index: HashMap<FieldPoly, u32>,
    /// Indexed by [`monic_code`] of a degree-`max_degree` polynomial.
    factorizations: Vec<Factorization>,
}

impl PolyTables {
    pub fn new(f: &Ring, max_degree: usize) -> PolyTables {
        assert!(f.is_field, "polynomial tables need a field");
        let s = f.size() as u64;
        let mut irreducibles: Vec<FieldPoly> = Vec::new();
        for d in 1..=max_degree {
            let count = s.pow(d as u32) as usize;
            let mut reducible = vec![false; count];
            for a in irreducibles.iter().filter(|g| 2 * (g.len() - 1) <= d) {
                let rest = d - (a.len() - 1);
                for code in 0..s.pow(rest as u32) {
                    let prod = poly_mul(f, a, &monic_from_code(f, rest, code));
                    reducible[monic_code(f, &prod) as usize] = true;
                }
            }
            for (code, red) in reducible.iter().enumerate() {
                if !red {
                    irreducibles.push(monic_from_code(f, d, code as u64));
                }
            }
        }
        let index = irreducibles
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let mut tables = PolyTables {
            max_degree,
            irreducibles,
            index,
            factorizations: vec![Vec::new(); s.pow(max_degree as u32) as usize],
        };
        let mut cur = Vec::new();
        tables.fill(f, 0, max_degree, vec![1], &mut cur);
        debug_assert!(tables.factorizations.iter().all(|x| !x.is_empty()) || max_degree == 0);
        tables
    }

    fn fill(&mut self, f: &Ring, start: usize, budget: usize, prod: FieldPoly, cur: &mut Factorization) {
        if budget == 0 {
            let code = monic_code(f, &prod) as usize;
            self.factorizations[code] = cur.clone();
            return;
        }
        for i in start..self.irreducibles.len() {
            let deg = self.irreducibles[i].len() - 1;
            if deg > budget {
                break;
            }
            let next = poly_mul(f, &prod, &self.irreducibles[i]);
            match cur.last_mut() {
                Some((id, m)) if *id == i as u32 => *m += 1,
                _ => cur.push((i as u32, 1)),
            }
            self.fill(f, i, budget - deg, next, cur);
            match cur.last_mut() {
                Some((_, m)) if *m > 1 => *m -= 1,
                _ => {
                    cur.pop();
                }
            }
        }
    }

    pub fn id_of(&self, poly: &[u8]) -> Option<u32> {
        self.index.get(poly).copied()
    }

    pub fn degree_of(&self, id: u32) -> usize {
        self.irreducibles[id as usize].len() - 1
    }

    /// Factorization of a monic polynomial of degree `max_degree`.
    pub fn factor(&self, f: &Ring, poly: &[u8]) -> &Factorization {
        debug_assert_eq!(poly.len(), self.max_degree + 1);
        &self.factorizations[monic_code(f, poly) as usize]
    }

    pub fn count_of_degree(&self, d: usize) -> usize {
        self.irreducibles.iter().filter(|p| p.len() - 1 == d).count()
    }
}

/// `(-1)^{deg g} conj(g)(-t)`: the partner of `g` under the unitary
/// involution on polynomials over `F_{q^2}`.
pub fn unitary_dual(f: &Ring, g: &[u8]) -> FieldPoly {
    let k = g.len() - 1;
    g.iter()
        .enumerate()
        .map(|(i, &c)| {
            let c = f.conj(c);
            if (k + i) % 2 == 1 {
                f.neg(c)
            } else {
                c
            }
        })
        .collect()
}
