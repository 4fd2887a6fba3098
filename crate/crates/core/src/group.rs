//! Generated permutation groups and base-and-strong-generating-set chains.

use std::sync::OnceLock;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// One level of a stabilizer chain.
#[derive(Clone, Debug)]
struct Level {
    point: usize,
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[b]` maps `point` to `b`.
    transversal: Vec<Option<Permutation>>,
    /// Position of each orbit point inside `orbit`.
    position: Vec<u32>,
}

impl Level {
    fn new(point: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[point] = Some(Permutation::identity(degree));
        let mut position = vec![u32::MAX; degree];
        position[point] = 0;
        Level { point, gens: Vec::new(), orbit: vec![point], transversal, position }
    }

    fn rebuild_orbit(&mut self) {
        let degree = self.transversal.len();
        let mut k = 0;
        while k < self.orbit.len() {
            let b = self.orbit[k];
            for s in &self.gens {
                let c = s.apply(b);
                if self.transversal[c].is_none() {
                    let u = self.transversal[b].as_ref().unwrap().mul(s);
                    self.transversal[c] = Some(u);
                    self.position[c] = self.orbit.len() as u32;
                    self.orbit.push(c);
                }
            }
            k += 1;
        }
        debug_assert!(self.orbit.len() <= degree);
    }
}

/// Base and strong generating set with explicit transversals.
#[derive(Clone, Debug)]
pub struct Bsgs {
    degree: usize,
    levels: Vec<Level>,
}

impl Bsgs {
    /// Deterministic Schreier-Sims. `base_prefix` points become the first base points.
    pub fn build(degree: usize, gens: &[Permutation], base_prefix: &[usize]) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        for &p in base_prefix {
            if p >= degree {
                return Err(Error::PointOutOfRange { point: p + 1, degree });
            }
        }
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let mut base: Vec<usize> = base_prefix.to_vec();
        for g in &gens {
            if base.iter().all(|&b| g.apply(b) == b) {
                base.push(g.first_moved().unwrap());
            }
        }
        let mut levels: Vec<Level> = base.iter().map(|&b| Level::new(b, degree)).collect();
        for (i, level) in levels.iter_mut().enumerate() {
            level.gens = gens
                .iter()
                .filter(|g| base[..i].iter().all(|&b| g.apply(b) == b))
                .cloned()
                .collect();
            level.rebuild_orbit();
        }
        let mut bsgs = Bsgs { degree, levels };
        bsgs.complete()?;
        Ok(bsgs)
    }

    fn complete(&mut self) -> Result<()> {
        let mut i = self.levels.len() as isize - 1;
        'outer: while i >= 0 {
            let li = i as usize;
            let orbit = self.levels[li].orbit.clone();
            let gens = self.levels[li].gens.clone();
            for &b in &orbit {
                for s in &gens {
                    let ub = self.levels[li].transversal[b].as_ref().unwrap();
                    let c = s.apply(b);
                    let uc = self.levels[li].transversal[c].as_ref().unwrap();
                    let h = ub.mul(s).mul(&uc.inverse());
                    let (res, j) = self.sift_from(&h, li + 1);
                    if j < self.levels.len() || !res.is_identity() {
                        if j == self.levels.len() {
                            let p = res.first_moved().unwrap();
                            self.levels.push(Level::new(p, self.degree));
                        }
                        for l in li + 1..=j {
                            self.levels[l].gens.push(res.clone());
                            self.levels[l].rebuild_orbit();
                        }
                        i = j as isize;
                        continue 'outer;
                    }
                }
            }
            i -= 1;
        }
        Ok(())
    }

    /// Sifts `g` starting at level `start`; returns the residue and the level
    /// where sifting stopped (`levels.len()` if it passed every level).
    fn sift_from(&self, g: &Permutation, start: usize) -> (Permutation, usize) {
        let mut g = g.clone();
        for (j, level) in self.levels.iter().enumerate().skip(start) {
            let b = g.apply(level.point);
            match &level.transversal[b] {
                None => return (g, j),
                Some(u) => g = g.mul(&u.inverse()),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn transversal_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (res, _) = self.sift_from(g, 0);
        res.is_identity()
    }

    /// Strong generators fixing the first `k` base points.
    pub fn stabilizer_generators(&self, k: usize) -> Vec<Permutation> {
        if k < self.levels.len() {
            self.levels[k].gens.clone()
        } else {
            Vec::new()
        }
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.stabilizer_generators(0)
    }

    /// Uniformly random element.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in self.levels.iter().rev() {
            let b = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = g.mul(level.transversal[b].as_ref().unwrap());
        }
        g
    }

    /// Element with the given index in the mixed-radix enumeration; index 0 is the identity.
    pub fn element(&self, mut index: u128) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        let mut parts = Vec::with_capacity(self.levels.len());
        for level in self.levels.iter().rev() {
            let len = level.orbit.len() as u128;
            parts.push((index % len) as usize);
            index /= len;
        }
        // parts[k] belongs to level len-1-k; the product is r_{last} ... r_0.
        for (k, level) in self.levels.iter().rev().enumerate() {
            g = g.mul(level.transversal[level.orbit[parts[k]]].as_ref().unwrap());
        }
        g
    }

    /// Inverse of [`Bsgs::element`]; `None` if `g` is not in the group.
    pub fn rank(&self, g: &Permutation) -> Option<u128> {
        let mut g = g.clone();
        let mut digits = Vec::with_capacity(self.levels.len());
        for level in &self.levels {
            let b = g.apply(level.point);
            let u = level.transversal[b].as_ref()?;
            digits.push(level.position[b] as u128);
            g = g.mul(&u.inverse());
        }
        if !g.is_identity() {
            return None;
        }
        let mut index = 0u128;
        for (level, d) in self.levels.iter().zip(digits) {
            index = index * level.orbit.len() as u128 + d;
        }
        Some(index)
    }
}

/// A permutation group given by generators, with a lazily computed BSGS.
#[derive(Clone, Debug)]
pub struct GenGroup {
    degree: usize,
    generators: Vec<Permutation>,
    bsgs: OnceLock<Bsgs>,
}

#[derive(Serialize, Deserialize)]
struct GroupJson {
    degree: usize,
    generators: Vec<Vec<u32>>,
}

impl GenGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if degree == 0 {
            return Err(Error::invalid("degree must be positive"));
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch { expected: degree, found: g.degree() });
            }
        }
        let generators = if generators.is_empty() { vec![Permutation::identity(degree)] } else { generators };
        Ok(GenGroup { degree, generators, bsgs: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        GenGroup::new(degree, vec![]).unwrap()
    }

    /// Group from cycle strings, e.g. `["(1,2)", "(1,2,3)"]`.
    pub fn from_cycles(degree: usize, gens: &[&str]) -> Result<Self> {
        let gens = gens.iter().map(|s| Permutation::from_cycles(s, degree)).collect::<Result<Vec<_>>>()?;
        GenGroup::new(degree, gens)
    }

    fn with_bsgs(degree: usize, bsgs: Bsgs) -> Self {
        let mut generators = bsgs.strong_generators();
        if generators.is_empty() {
            generators.push(Permutation::identity(degree));
        }
        let cell = OnceLock::new();
        let _ = cell.set(bsgs);
        GenGroup { degree, generators, bsgs: cell }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: GroupJson = serde_json::from_str(s)?;
        let gens = j.generators.iter().map(|g| {
            if g.len() != j.degree {
                return Err(Error::DegreeMismatch { expected: j.degree, found: g.len() });
            }
            Permutation::from_images_1based(g)
        });
        GenGroup::new(j.degree, gens.collect::<Result<Vec<_>>>()?)
    }

    pub fn to_json(&self) -> String {
        let generators = self.generators.iter().map(|g| g.images().iter().map(|&i| i + 1).collect()).collect();
        serde_json::to_string(&GroupJson { degree: self.degree, generators }).unwrap()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn bsgs(&self) -> &Bsgs {
        self.bsgs.get_or_init(|| Bsgs::build(self.degree, &self.generators, &[]).expect("validated generators"))
    }

    pub fn order(&self) -> u128 {
        self.bsgs().order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.bsgs().contains(g)
    }

    /// Pointwise stabilizer of the given points, in order.
    pub fn iterated_stabilizer(&self, points: &[usize]) -> Result<GenGroup> {
        for (k, &p) in points.iter().enumerate() {
            if p >= self.degree {
                return Err(Error::PointOutOfRange { point: p + 1, degree: self.degree });
            }
            if points[..k].contains(&p) {
                return Err(Error::invalid(format!("point {} repeated in stabilizer chain", p + 1)));
            }
        }
        let full = Bsgs::build(self.degree, &self.generators, points)?;
        let gens = full.stabilizer_generators(points.len());
        let sub = Bsgs::build(self.degree, &gens, &[])?;
        Ok(GenGroup::with_bsgs(self.degree, sub))
    }

    /// Subgroup generated by `gens` (assumed to lie in this group).
    pub fn subgroup(&self, gens: Vec<Permutation>) -> Result<GenGroup> {
        GenGroup::new(self.degree, gens)
    }

    /// Restriction to the first `n` points, which must be invariant.
    pub fn restrict(&self, n: usize) -> Result<GenGroup> {
        let mut gens = Vec::new();
        for g in &self.generators {
            let imgs: Vec<u32> = g.images()[..n].to_vec();
            if imgs.iter().any(|&i| i as usize >= n) {
                return Err(Error::invalid(format!("points 1..{n} are not invariant")));
            }
            gens.push(Permutation::from_images(imgs)?);
        }
        GenGroup::new(n, gens)
    }

    /// All elements in BSGS enumeration order (identity first).
    pub fn elements(&self, cap: usize) -> Result<Vec<Permutation>> {
        let n = self.order();
        if n > cap as u128 {
            return Err(Error::cap(format!("enumeration of group of order {n}"), cap));
        }
        let b = self.bsgs();
        Ok((0..n).map(|i| b.element(i)).collect())
    }
}

/// Symmetric group on `n` points.
pub fn symmetric_group(n: usize) -> GenGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        let mut imgs: Vec<u32> = (0..n as u32).collect();
        imgs.swap(0, 1);
        gens.push(Permutation::from_images(imgs).unwrap());
    }
    if n >= 3 {
        gens.push(Permutation::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect()).unwrap());
    }
    GenGroup::new(n, gens).unwrap()
}

/// Cyclic group generated by an `n`-cycle.
pub fn cyclic_group(n: usize) -> GenGroup {
    let g = Permutation::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect()).unwrap();
    GenGroup::new(n, vec![g]).unwrap()
}
