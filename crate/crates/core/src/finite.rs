//! Enumerated finite groups and homomorphisms between them.

use std::collections::HashMap;
use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::group::GenGroup;
use crate::perm::Permutation;

/// Largest group for which a full multiplication table is stored.
pub const TABLE_CAP: usize = 2048;

/// Default cap on the order of groups that get enumerated.
pub const DEFAULT_FINITE_CAP: usize = 1 << 17;

/// A permutation group with its elements listed in BSGS order (identity first).
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    group: GenGroup,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    inverses: Vec<usize>,
    table: Option<Vec<u32>>,
    gens: Vec<usize>,
}

impl FiniteGroup {
    pub fn new(group: &GenGroup) -> Result<Self> {
        Self::with_cap(group, DEFAULT_FINITE_CAP)
    }

    pub fn with_cap(group: &GenGroup, cap: usize) -> Result<Self> {
        let elements = group.elements(cap)?;
        let index: HashMap<Permutation, usize> =
            elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let n = elements.len();
        let table = (n <= TABLE_CAP).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.mul(b)] as u32);
                }
            }
            t
        });
        let gens = group.generators().iter().map(|g| index[g]).collect();
        Ok(FiniteGroup { group: group.clone(), elements, index, inverses, table, gens })
    }

    pub fn group(&self) -> &GenGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Index of `a * b` (apply `a`, then `b`).
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.index[&self.elements[a].mul(&self.elements[b])],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn generator_indices(&self) -> &[usize] {
        &self.gens
    }

    pub fn identity(&self) -> usize {
        0
    }
}

/// A homomorphism given by the images of all elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hom {
    pub images: Vec<usize>,
}

impl Hom {
    /// Extends generator images along the Cayley graph and checks the homomorphism law.
    pub fn from_generator_images(source: &FiniteGroup, target: &FiniteGroup, gen_images: &[usize]) -> Result<Self> {
        let gens = source.generator_indices();
        if gens.len() != gen_images.len() {
            return Err(Error::invalid("one image per generator required"));
        }
        let n = source.order();
        let mut images = vec![usize::MAX; n];
        images[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(a) = queue.pop_front() {
            for (s, &t) in gens.iter().zip(gen_images) {
                let b = source.mul(a, *s);
                let img = target.mul(images[a], t);
                if images[b] == usize::MAX {
                    images[b] = img;
                    queue.push_back(b);
                } else if images[b] != img {
                    return Err(Error::invalid("generator images do not define a homomorphism"));
                }
            }
        }
        Ok(Hom { images })
    }

    /// The map induced by a permutation map `p -> f(p)` on elements.
    pub fn from_fn(source: &FiniteGroup, target: &FiniteGroup, f: impl Fn(&Permutation) -> Permutation) -> Result<Self> {
        let imgs: Result<Vec<usize>> = source
            .generator_indices()
            .iter()
            .map(|&g| {
                target
                    .index_of(&f(source.element(g)))
                    .ok_or_else(|| Error::invalid("image outside the target group"))
            })
            .collect();
        Self::from_generator_images(source, target, &imgs?)
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        Hom { images: (0..g.order()).collect() }
    }

    /// Inclusion of a subgroup given as a group of the same degree.
    pub fn inclusion(sub: &FiniteGroup, target: &FiniteGroup) -> Result<Self> {
        Self::from_fn(sub, target, |p| p.clone())
    }

    /// `s -> c^{-1} s c` from `source` into `target`.
    pub fn conjugation(source: &FiniteGroup, target: &FiniteGroup, c: &Permutation) -> Result<Self> {
        Self::from_fn(source, target, |p| p.conj(c))
    }

    pub fn apply(&self, a: usize) -> usize {
        self.images[a]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_group, symmetric_group};

    #[test]
    fn tables_and_homs() {
        let s3 = FiniteGroup::new(&symmetric_group(3)).unwrap();
        assert_eq!(s3.order(), 6);
        for a in 0..6 {
            assert_eq!(s3.mul(a, s3.inv(a)), 0);
        }
        let z2 = FiniteGroup::new(&cyclic_group(2)).unwrap();
        // sign map S3 -> Z2: both generators (a transposition and a 3-cycle)
        let imgs: Vec<usize> = s3
            .generator_indices()
            .iter()
            .map(|&g| if s3.element(g).order() == 2 { 1 } else { 0 })
            .collect();
        let sign = Hom::from_generator_images(&s3, &z2, &imgs).unwrap();
        assert_eq!(sign.images.iter().filter(|&&x| x == 1).count(), 3);
        let bad = Hom::from_generator_images(&z2, &s3, &[s3.generator_indices()[1]]);
        assert_eq!(s3.element(s3.generator_indices()[1]).order(), 3);
        assert!(bad.is_err());
    }
}
