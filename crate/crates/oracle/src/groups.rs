//! Explicit finite matrix groups and their conjugacy-class censuses.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use crate::matrix::Mat;
use crate::ring::Ring;
use crate::OracleError;

/// Largest matrix space scanned when building `GL_n` by brute force.
const SCAN_LIMIT: u128 = 50_000_000;

#[derive(Debug, Clone)]
pub struct MatrixGroup {
    pub name: String,
    pub ring: Ring,
    pub n: usize,
    /// Sorted, duplicate-free.
    pub elements: Vec<Mat>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupCensus {
    pub name: String,
    pub order: u64,
    pub classes: u64,
    pub symmetric: u64,
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n as u32).collect())
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.0[x as usize] != x {
            let parent = self.0[self.0[x as usize] as usize];
            self.0[x as usize] = parent;
            x = parent;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}

impl MatrixGroup {
    pub fn new(name: impl Into<String>, ring: Ring, n: usize, elements: impl IntoIterator<Item = Mat>) -> Self {
        let set: HashSet<Mat> = elements.into_iter().collect();
        let mut elements: Vec<Mat> = set.into_iter().collect();
        elements.sort_unstable();
        MatrixGroup {
            name: name.into(),
            ring,
            n,
            elements,
        }
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    fn index(&self) -> HashMap<Mat, u32> {
        self.elements.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect()
    }

    /// Elements reachable from the identity by right multiplication with
    /// `gens`; fails if a product leaves the set.
    fn closure(&self, index: &HashMap<Mat, u32>, gens: &[Mat]) -> Result<Vec<bool>, OracleError> {
        let mut seen = vec![false; self.elements.len()];
        let id = *index
            .get(&Mat::identity(self.n))
            .ok_or_else(|| OracleError::NotAGroup(format!("{}: identity missing", self.name)))?;
        seen[id as usize] = true;
        let mut stack = vec![id];
        while let Some(x) = stack.pop() {
            for g in gens {
                let y = self.ring.mat_mul(&self.elements[x as usize], g);
                let j = *index
                    .get(&y)
                    .ok_or_else(|| OracleError::NotAGroup(format!("{}: not closed under multiplication", self.name)))?;
                if !seen[j as usize] {
                    seen[j as usize] = true;
                    stack.push(j);
                }
            }
        }
        Ok(seen)
    }

    /// A generating set, chosen greedily in a fixed pseudo-random order;
    /// verifies along the way that the element set is a group.
    pub fn generators(&self) -> Result<Vec<Mat>, OracleError> {
        let index = self.index();
        let len = self.elements.len();
        let stride = (1..len).rev().find(|s| gcd(*s, len) == 1 && *s > len / 3).unwrap_or(1);
        let mut gens = Vec::new();
        let mut covered = self.closure(&index, &gens)?;
        for step in 0..len {
            let i = (step * stride + 1) % len;
            if !covered[i] {
                gens.push(self.elements[i]);
                covered = self.closure(&index, &gens)?;
                if covered.iter().all(|&c| c) {
                    break;
                }
            }
        }
        Ok(gens)
    }

    /// Number of conjugacy classes: orbits of conjugation by a generating set.
    pub fn class_count(&self) -> Result<u64, OracleError> {
        let index = self.index();
        let gens = self.generators()?;
        let pairs: Vec<(Mat, Mat)> = gens
            .iter()
            .map(|g| (*g, self.ring.mat_inv(g).expect("group elements are invertible")))
            .collect();
        let mut uf = UnionFind::new(self.elements.len());
        for (i, x) in self.elements.iter().enumerate() {
            for (g, gi) in &pairs {
                let y = self.ring.mat_mul(&self.ring.mat_mul(g, x), gi);
                let j = *index
                    .get(&y)
                    .ok_or_else(|| OracleError::NotAGroup(format!("{}: not closed under conjugation", self.name)))?;
                uf.union(i as u32, j);
            }
        }
        Ok((0..self.elements.len() as u32).filter(|&i| uf.find(i) == i).count() as u64)
    }

    pub fn symmetric_count(&self) -> u64 {
        self.elements.iter().filter(|m| m.is_symmetric()).count() as u64
    }

    pub fn census(&self) -> Result<GroupCensus, OracleError> {
        Ok(GroupCensus {
            name: self.name.clone(),
            order: self.order(),
            classes: self.class_count()?,
            symmetric: self.symmetric_count(),
        })
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `GL_n(R)` by scanning all matrices for a unit determinant.
pub fn general_linear(ring: &Ring, n: usize) -> Result<MatrixGroup, OracleError> {
    let size = (ring.size() as u128).pow((n * n) as u32);
    if size > SCAN_LIMIT {
        return Err(OracleError::TooLarge {
            what: format!("GL_{n}({})", ring.name),
            size,
            limit: SCAN_LIMIT,
        });
    }
    let elements = (0..size as u64)
        .map(|i| ring.mat_from_index(n, i))
        .filter(|m| ring.is_unit(ring.det(m)));
    Ok(MatrixGroup::new(format!("GL_{n}({})", ring.name), ring.clone(), n, elements))
}

fn inner(ring: &Ring, u: &[u8], v: &[u8]) -> u8 {
    u.iter()
        .zip(v)
        .fold(0, |acc, (&a, &b)| ring.add(acc, ring.mul(ring.conj(a), b)))
}

/// Calls `visit` on every `A` with `A° A = I`, built column by column from
/// orthonormal vectors.
pub fn for_each_unitary(ring: &Ring, n: usize, mut visit: impl FnMut(&Mat)) {
    let s = ring.size() as u64;
    let vectors: Vec<Vec<u8>> = (0..s.pow(n as u32))
        .map(|mut i| {
            (0..n)
                .map(|_| {
                    let d = (i % s) as u8;
                    i /= s;
                    d
                })
                .collect()
        })
        .filter(|v: &Vec<u8>| inner(ring, v, v) == 1)
        .collect();
    fn rec(
        ring: &Ring,
        n: usize,
        vectors: &[Vec<u8>],
        chosen: &mut Vec<usize>,
        visit: &mut dyn FnMut(&Mat),
    ) {
        if chosen.len() == n {
            let mut m = Mat::zero(n);
            for (j, &c) in chosen.iter().enumerate() {
                for i in 0..n {
                    m.set(i, j, vectors[c][i]);
                }
            }
            visit(&m);
            return;
        }
        for (k, v) in vectors.iter().enumerate() {
            if chosen.iter().all(|&c| inner(ring, &vectors[c], v) == 0) {
                chosen.push(k);
                rec(ring, n, vectors, chosen, visit);
                chosen.pop();
            }
        }
    }
    rec(ring, n, &vectors, &mut Vec::new(), &mut visit);
}

/// `U_n(R) = {A : A° A = I}` for a ring with involution.
pub fn unitary(ring: &Ring, n: usize) -> Result<MatrixGroup, OracleError> {
    if !ring.has_involution() {
        return Err(OracleError::UnsupportedGroup(format!("{} has no involution", ring.name)));
    }
    let mut elements = Vec::new();
    for_each_unitary(ring, n, |m| elements.push(*m));
    Ok(MatrixGroup::new(format!("U_{n}({})", ring.name), ring.clone(), n, elements))
}

/// `#{A in GU_n(F_q) : A = A^t}`.
pub fn count_unitary_symmetric(n: usize, q: u64) -> Result<u64, OracleError> {
    if !(1..=3).contains(&n) || q > 3 {
        return Err(OracleError::TooLarge {
            what: format!("symmetric census of GU_{n}(F_{q})"),
            size: (q as u128).pow(2 * (n * n) as u32),
            limit: 3u128.pow(18),
        });
    }
    let f = Ring::galois_field(q * q)?;
    let mut count = 0;
    for_each_unitary(&f, n, |m| {
        if m.is_symmetric() {
            count += 1;
        }
    });
    Ok(count)
}

/// Field for the explicit semidirect products: `F_q` for `ε = +1`, `F_{q^2}`
/// for `ε = -1`.
fn base_field(q: u64, eps: i8) -> Result<Ring, OracleError> {
    Ring::galois_field(if eps > 0 { q } else { q * q })
}

/// `G^ε_(2,1) = H ⋊ D_2` inside `3 x 3` matrices.
pub fn family_l1(q: u64, eps: i8) -> Result<MatrixGroup, OracleError> {
    let f = base_field(q, eps)?;
    let all: Vec<u8> = f.elements().collect();
    let units: Vec<u8> = if eps > 0 {
        f.elements().filter(|&x| x != 0).collect()
    } else {
        f.norm_one()
    };
    let mut h = Vec::new();
    for &alpha in &all {
        for &gamma in &all {
            if eps > 0 {
                for &beta in &all {
                    h.push(Mat::from_rows(&[&[1, alpha, gamma], &[0, 1, beta], &[0, 0, 1]]));
                }
            } else if f.mul(alpha, f.conj(alpha)) == f.add(gamma, f.conj(gamma)) {
                h.push(Mat::from_rows(&[&[1, alpha, gamma], &[0, 1, f.conj(alpha)], &[0, 0, 1]]));
            }
        }
    }
    let mut d = Vec::new();
    for &a in &units {
        for &b in &units {
            d.push(Mat::from_rows(&[&[a, 0, 0], &[0, b, 0], &[0, 0, a]]));
        }
    }
    let elements: Vec<Mat> = h.iter().flat_map(|x| d.iter().map(|y| f.mat_mul(x, y))).collect();
    let sign = if eps > 0 { "+" } else { "-" };
    Ok(MatrixGroup::new(format!("G{sign}_(2,1)(q={q})"), f, 3, elements))
}

/// `G^ε_(2,1,1) = E ⋊ M` inside `4 x 4` matrices.
pub fn family_211(q: u64, eps: i8) -> Result<MatrixGroup, OracleError> {
    let f = base_field(q, eps)?;
    let all: Vec<u8> = f.elements().collect();
    let mut e = Vec::new();
    if eps > 0 {
        for i in 0..(q as usize).pow(5) {
            let mut k = i;
            let mut x = [0u8; 5];
            for v in x.iter_mut() {
                *v = (k % q as usize) as u8;
                k /= q as usize;
            }
            let [al, be, ga, de, et] = x;
            e.push(Mat::from_rows(&[&[1, al, be, ga], &[0, 1, 0, de], &[0, 0, 1, et], &[0, 0, 0, 1]]));
        }
    } else {
        for &al in &all {
            for &be in &all {
                let norm = f.add(f.mul(al, f.conj(al)), f.mul(be, f.conj(be)));
                for &ga in &all {
                    if f.add(ga, f.conj(ga)) == norm {
                        e.push(Mat::from_rows(&[
                            &[1, al, be, ga],
                            &[0, 1, 0, f.conj(al)],
                            &[0, 0, 1, f.conj(be)],
                            &[0, 0, 0, 1],
                        ]));
                    }
                }
            }
        }
    }
    let (units, g2) = if eps > 0 {
        (f.elements().filter(|&x| x != 0).collect::<Vec<_>>(), general_linear(&f, 2)?)
    } else {
        (f.norm_one(), unitary(&f, 2)?)
    };
    let mut m = Vec::new();
    for &a in &units {
        for w in &g2.elements {
            m.push(Mat::from_rows(&[
                &[a, 0, 0, 0],
                &[0, w.get(0, 0), w.get(0, 1), 0],
                &[0, w.get(1, 0), w.get(1, 1), 0],
                &[0, 0, 0, a],
            ]));
        }
    }
    let elements: Vec<Mat> = e.iter().flat_map(|x| m.iter().map(|y| f.mat_mul(x, y))).collect();
    let sign = if eps > 0 { "+" } else { "-" };
    Ok(MatrixGroup::new(format!("G{sign}_(2,1,1)(q={q})"), f, 4, elements))
}

/// `GL_n(o_2)` (`ε = +1`) or `GU_n(o_2)` (`ε = -1`) for prime `q`, `n <= 2`.
pub fn level_two(n: usize, q: u64, eps: i8) -> Result<MatrixGroup, OracleError> {
    if n > 2 || !matches!(q, 2 | 3) {
        return Err(OracleError::UnsupportedGroup(format!("G_{n}(o_2) at q={q}")));
    }
    let mut g = if eps > 0 {
        general_linear(&Ring::integers_mod(q * q), n)?
    } else {
        unitary(&Ring::unramified_quadratic(q)?, n)?
    };
    g.name = format!("{}_{n}(o_2) q={q} [{}]", if eps > 0 { "GL" } else { "GU" }, g.ring.name);
    Ok(g)
}

/// `GL_n(F_q)` or `GU_n(F_q)`.
pub fn level_one(n: usize, q: u64, eps: i8) -> Result<MatrixGroup, OracleError> {
    let mut g = if eps > 0 {
        general_linear(&Ring::galois_field(q)?, n)?
    } else {
        unitary(&Ring::galois_field(q * q)?, n)?
    };
    g.name = format!("{}_{n}(F_{q})", if eps > 0 { "GL" } else { "GU" });
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_linear_groups() {
        let g = level_one(3, 2, 1).unwrap();
        let c = g.census().unwrap();
        assert_eq!((c.order, c.classes, c.symmetric), (168, 6, 28));
        let s3 = level_one(2, 2, 1).unwrap().census().unwrap();
        assert_eq!((s3.order, s3.classes), (6, 3));
    }

    #[test]
    fn small_unitary_groups() {
        let g = level_one(2, 2, -1).unwrap().census().unwrap();
        assert_eq!((g.order, g.classes, g.symmetric), (18, 9, 12));
        assert_eq!(count_unitary_symmetric(2, 2).unwrap(), 12);
    }

    #[test]
    fn level_two_orders() {
        assert_eq!(level_two(2, 2, 1).unwrap().order(), 96);
        assert_eq!(level_two(2, 2, -1).unwrap().order(), 288);
        assert_eq!(level_two(1, 3, -1).unwrap().order(), 12);
        assert!(level_two(3, 2, 1).is_err());
    }

    #[test]
    fn family_orders() {
        assert_eq!(family_l1(2, 1).unwrap().order(), 8);
        assert_eq!(family_l1(2, -1).unwrap().order(), 72);
        assert_eq!(family_211(2, 1).unwrap().order(), 192);
    }

    #[test]
    fn rejects_non_groups() {
        let f = Ring::galois_field(5).unwrap();
        // {1, 2} is not closed: 2 * 2 = 4
        let h = MatrixGroup::new("bad", f.clone(), 1, [Mat::identity(1), Mat::from_rows(&[&[2]])]);
        assert!(matches!(h.generators(), Err(OracleError::NotAGroup(_))));
        let no_id = MatrixGroup::new("bad", f, 1, [Mat::from_rows(&[&[4]])]);
        assert!(matches!(no_id.class_count(), Err(OracleError::NotAGroup(_))));
    }
}
