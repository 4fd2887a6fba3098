//! Face posets ("d-complexes") with faces identified by their vertex sets.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::coxeter::bits;
use crate::error::{Error, Result};
use crate::group::GenGroup;

/// A graded poset of faces, each given by its vertex bitmask, ordered by inclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DComplex {
    nverts: usize,
    faces: Vec<u64>,
    dims: Vec<usize>,
    dim: usize,
    index: HashMap<u64, usize>,
}

#[derive(Serialize, Deserialize)]
struct ComplexJson {
    vertices: usize,
    /// 1-based vertex lists; vertices themselves may be omitted.
    faces: Vec<Vec<usize>>,
}

impl DComplex {
    /// Builds from vertex sets. Singletons are added; dimensions are the lengths of
    /// the longest chains below each face; the result must be a connected d-complex.
    pub fn from_faces(nverts: usize, faces: Vec<u64>) -> Result<Self> {
        if nverts == 0 || nverts > 64 {
            return Err(Error::invalid("complexes need 1..=64 vertices"));
        }
        let mut all: Vec<u64> = (0..nverts).map(|i| 1u64 << i).collect();
        for f in faces {
            if f == 0 || (nverts < 64 && f >> nverts != 0) {
                return Err(Error::invalid("face uses a vertex out of range"));
            }
            all.push(f);
        }
        all.sort_by_key(|f| (f.count_ones(), *f));
        all.dedup();
        let n = all.len();
        let mut dims = vec![0usize; n];
        for i in 0..n {
            let mut d = 0;
            for j in 0..i {
                if all[j] != all[i] && all[j] & !all[i] == 0 {
                    d = d.max(dims[j] + 1);
                }
            }
            dims[i] = d;
        }
        let dim = *dims.iter().max().unwrap();
        for i in 0..n {
            let maximal = (0..n).all(|j| j == i || all[i] & !all[j] != 0);
            if maximal && dims[i] != dim {
                return Err(Error::invalid("not a d-complex: maximal face of lower dimension"));
            }
            for j in 0..n {
                if i != j && all[j] & !all[i] == 0 {
                    let between = (0..n).any(|k| {
                        k != i && k != j && all[j] & !all[k] == 0 && all[k] & !all[i] == 0
                    });
                    if !between && dims[i] != dims[j] + 1 {
                        return Err(Error::invalid("not a d-complex: cover skips a dimension"));
                    }
                }
            }
        }
        let index = all.iter().enumerate().map(|(i, f)| (*f, i)).collect();
        let c = DComplex { nverts, faces: all, dims, dim, index };
        if !c.connected() {
            return Err(Error::invalid("complex is not connected"));
        }
        Ok(c)
    }

    fn connected(&self) -> bool {
        let mut reach = 1u64;
        loop {
            let before = reach;
            for (f, d) in self.faces.iter().zip(&self.dims) {
                if *d >= 1 && f & reach != 0 {
                    reach |= f;
                }
            }
            if reach == before {
                break;
            }
        }
        reach.count_ones() as usize == self.nverts
    }

    /// `{"vertices": 4, "faces": [[1,2],[2,3],...]}`.
    pub fn from_json(s: &str) -> Result<Self> {
        let j: ComplexJson = serde_json::from_str(s)?;
        let mut faces = Vec::new();
        for f in &j.faces {
            let mut m = 0u64;
            for &v in f {
                if v == 0 || v > j.vertices {
                    return Err(Error::PointOutOfRange { point: v, degree: j.vertices });
                }
                m |= 1 << (v - 1);
            }
            faces.push(m);
        }
        Self::from_faces(j.vertices, faces)
    }

    pub fn to_json(&self) -> String {
        let faces = self
            .faces
            .iter()
            .filter(|f| f.count_ones() > 1)
            .map(|f| bits(*f).map(|i| i + 1).collect())
            .collect();
        serde_json::to_string(&ComplexJson { vertices: self.nverts, faces }).unwrap()
    }

    /// Boundary of the `n`-gon.
    pub fn polygon(n: usize) -> Self {
        let faces = (0..n).map(|i| (1u64 << i) | (1u64 << ((i + 1) % n))).collect();
        Self::from_faces(n, faces).expect("polygon")
    }

    /// Boundary complex of the 3-cube; vertex `i` has coordinates given by the bits of `i`.
    pub fn cube() -> Self {
        let mut faces = Vec::new();
        for axis in 0..3 {
            for i in 0..8usize {
                if i & (1 << axis) == 0 {
                    faces.push((1u64 << i) | (1u64 << (i | (1 << axis))));
                }
            }
        }
        for axis in 0..3 {
            for side in 0..2 {
                let m = (0..8usize).filter(|i| (i >> axis) & 1 == side).fold(0u64, |m, i| m | (1 << i));
                faces.push(m);
            }
        }
        Self::from_faces(8, faces).expect("cube")
    }

    /// Boundary complex of the octahedron; vertices `2a` and `2a+1` are opposite on axis `a`.
    pub fn octahedron() -> Self {
        let mut faces = Vec::new();
        for a in 0..6usize {
            for b in a + 1..6 {
                if a / 2 != b / 2 {
                    faces.push((1u64 << a) | (1u64 << b));
                }
            }
        }
        for x in 0..2 {
            for y in 2..4 {
                for z in 4..6 {
                    faces.push((1u64 << x) | (1u64 << y) | (1u64 << z));
                }
            }
        }
        Self::from_faces(6, faces).expect("octahedron")
    }

    /// Proper faces of the simplex on `n` vertices.
    pub fn simplex_boundary(n: usize) -> Result<Self> {
        if n < 2 || n > 20 {
            return Err(Error::invalid("explicit simplex needs 2..=20 vertices"));
        }
        let full = (1u64 << n) - 1;
        Self::from_faces(n, (1..full).collect())
    }

    pub fn nverts(&self) -> usize {
        self.nverts
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn faces(&self) -> &[u64] {
        &self.faces
    }

    pub fn face_dim(&self, f: u64) -> Option<usize> {
        self.index.get(&f).map(|&i| self.dims[i])
    }

    pub fn faces_of_dim(&self, d: usize) -> Vec<u64> {
        self.faces.iter().zip(&self.dims).filter(|(_, &x)| x == d).map(|(f, _)| *f).collect()
    }

    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dim).map(|d| self.faces_of_dim(d).len()).collect()
    }
}

/// The complex a Wythoff construction starts from.
#[derive(Clone, Debug)]
pub enum Base {
    /// Proper faces of the simplex on `n` vertices, never materialized.
    Simplex(usize),
    Complex(DComplex),
}

fn combinations(pool: u64, k: usize, out: &mut Vec<u64>) {
    fn rec(pool: &[usize], k: usize, start: usize, acc: u64, out: &mut Vec<u64>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..=pool.len().saturating_sub(k) {
            rec(pool, k - 1, i + 1, acc | (1 << pool[i]), out);
        }
    }
    let p: Vec<usize> = bits(pool).collect();
    if k <= p.len() {
        rec(&p, k, 0, 0, out);
    }
}

impl Base {
    pub fn simplex(n: usize) -> Result<Self> {
        if !(2..=32).contains(&n) {
            return Err(Error::invalid("simplex base needs 2..=32 vertices"));
        }
        Ok(Base::Simplex(n))
    }

    pub fn nverts(&self) -> usize {
        match self {
            Base::Simplex(n) => *n,
            Base::Complex(c) => c.nverts(),
        }
    }

    /// Top face dimension `d`.
    pub fn dim(&self) -> usize {
        match self {
            Base::Simplex(n) => n - 2,
            Base::Complex(c) => c.dim(),
        }
    }

    fn full(&self) -> u64 {
        let n = self.nverts();
        if n == 64 {
            u64::MAX
        } else {
            (1u64 << n) - 1
        }
    }

    /// Faces `X` of dimension `t` with `lower ⊆ X ⊆ upper` (strict inclusions when
    /// dimensions differ).
    pub fn faces_between(&self, t: usize, lower: u64, upper: Option<u64>) -> Vec<u64> {
        let up = upper.unwrap_or(self.full());
        match self {
            Base::Simplex(_) => {
                let size = t + 1;
                let have = lower.count_ones() as usize;
                if size < have || t > self.dim() {
                    return Vec::new();
                }
                let mut out = Vec::new();
                combinations(up & !lower, size - have, &mut out);
                out.into_iter().map(|m| m | lower).collect()
            }
            Base::Complex(c) => c
                .faces_of_dim(t)
                .into_iter()
                .filter(|f| f & lower == lower && f & !up == 0)
                .collect(),
        }
    }

    pub fn face_dim(&self, f: u64) -> Option<usize> {
        match self {
            Base::Simplex(n) => {
                let k = f.count_ones() as usize;
                (k >= 1 && k < *n && f & !self.full() == 0).then(|| k - 1)
            }
            Base::Complex(c) => c.face_dim(f),
        }
    }

    /// Checks that the group maps faces to faces.
    pub fn check_action(&self, group: &GenGroup) -> Result<()> {
        if group.degree() != self.nverts() {
            return Err(Error::DegreeMismatch { expected: self.nverts(), found: group.degree() });
        }
        if let Base::Complex(c) = self {
            for g in group.generators() {
                for &f in c.faces() {
                    if c.face_dim(g.apply_mask(f)) != c.face_dim(f) {
                        return Err(Error::invalid("group does not act on the complex"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of faces of each dimension.
    pub fn f_vector(&self) -> Vec<u128> {
        match self {
            Base::Simplex(n) => (1..*n).map(|k| binomial(*n as u128, k as u128)).collect(),
            Base::Complex(c) => c.f_vector().into_iter().map(|x| x as u128).collect(),
        }
    }
}

pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_complexes() {
        assert_eq!(DComplex::cube().f_vector(), vec![8, 12, 6]);
        assert_eq!(DComplex::octahedron().f_vector(), vec![6, 12, 8]);
        assert_eq!(DComplex::polygon(5).f_vector(), vec![5, 5]);
        let tri = DComplex::simplex_boundary(3).unwrap();
        assert_eq!(tri.f_vector(), vec![3, 3]);
        assert_eq!(Base::simplex(24).unwrap().f_vector()[4], binomial(24, 5));
        let back = DComplex::from_json(&DComplex::cube().to_json()).unwrap();
        assert_eq!(back, DComplex::cube());
    }

    #[test]
    fn rejects_non_complexes() {
        // a triangle with a dangling edge is not pure
        assert!(DComplex::from_faces(4, vec![0b011, 0b110, 0b101, 0b111, 0b1100]).is_err());
        assert!(DComplex::from_faces(4, vec![0b11, 0b1100]).is_err());
    }

    #[test]
    fn simplex_faces_between() {
        let b = Base::simplex(5).unwrap();
        assert_eq!(b.faces_between(1, 0b1, None).len(), 4);
        assert_eq!(b.faces_between(2, 0b1, Some(0b1111)).len(), 3);
    }
}
