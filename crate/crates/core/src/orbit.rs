//! Orbits with Schreier trees, and stabilizers from Schreier generators.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::group::GenGroup;
use crate::perm::Permutation;

/// Default cap on stored orbit entries.
pub const DEFAULT_ORBIT_CAP: usize = 20_000_000;

pub struct Orbit<K> {
    pub points: Vec<K>,
    index: HashMap<K, u32>,
    /// (parent index, generator index); the root points at itself.
    parent: Vec<(u32, u16)>,
}

impl<K: Hash + Eq + Clone> Orbit<K> {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, k: &K) -> Option<usize> {
        self.index.get(k).map(|&i| i as usize)
    }

    /// An element mapping the seed onto `points[i]`.
    pub fn transversal(&self, i: usize, gens: &[Permutation]) -> Permutation {
        let mut path = Vec::new();
        let mut j = i;
        while j != 0 {
            let (p, s) = self.parent[j];
            path.push(s as usize);
            j = p as usize;
        }
        let degree = gens[0].degree();
        path.iter().rev().fold(Permutation::identity(degree), |acc, &s| acc.mul(&gens[s]))
    }
}

/// Breadth-first orbit of `seed` under `gens`.
pub fn orbit<K, F>(gens: &[Permutation], seed: K, act: F, cap: usize) -> Result<Orbit<K>>
where
    K: Hash + Eq + Clone,
    F: Fn(&K, &Permutation) -> K,
{
    let mut points = vec![seed.clone()];
    let mut index = HashMap::new();
    index.insert(seed, 0u32);
    let mut parent = vec![(0u32, 0u16)];
    let mut k = 0;
    while k < points.len() {
        for (s, g) in gens.iter().enumerate() {
            let img = act(&points[k], g);
            if !index.contains_key(&img) {
                if points.len() >= cap {
                    return Err(Error::cap("orbit size", cap));
                }
                index.insert(img.clone(), points.len() as u32);
                points.push(img);
                parent.push((k as u32, s as u16));
            }
        }
        k += 1;
    }
    Ok(Orbit { points, index, parent })
}

/// Orbit length only; keeps no Schreier tree.
pub fn orbit_size<K, F>(gens: &[Permutation], seed: K, act: F, cap: usize) -> Result<usize>
where
    K: Hash + Eq + Clone,
    F: Fn(&K, &Permutation) -> K,
{
    let mut seen = HashSet::new();
    seen.insert(seed.clone());
    let mut frontier = vec![seed];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = act(&x, g);
            if seen.insert(y.clone()) {
                if seen.len() > cap {
                    return Err(Error::cap("orbit size", cap));
                }
                frontier.push(y);
            }
        }
    }
    Ok(seen.len())
}

/// Grows a subgroup one generator at a time, skipping members.
pub(crate) struct SubgroupBuilder {
    degree: usize,
    gens: Vec<Permutation>,
    group: GenGroup,
}

impl SubgroupBuilder {
    pub fn new(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        let group = GenGroup::new(degree, gens.clone())?;
        Ok(SubgroupBuilder { degree, gens, group })
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn offer(&mut self, g: Permutation) -> Result<bool> {
        if g.is_identity() || self.group.contains(&g) {
            return Ok(false);
        }
        self.gens.push(g);
        self.group = GenGroup::new(self.degree, self.gens.clone())?;
        Ok(true)
    }

    pub fn finish(self) -> GenGroup {
        self.group
    }
}

/// Stabilizer of the orbit seed, from Schreier generators, stopping once the
/// order reaches `|G| / |orbit|`.
pub fn stabilizer<K, F>(group: &GenGroup, orb: &Orbit<K>, act: F) -> Result<GenGroup>
where
    K: Hash + Eq + Clone,
    F: Fn(&K, &Permutation) -> K,
{
    let order = group.order();
    let len = orb.len() as u128;
    if order % len != 0 {
        return Err(Error::invariant(format!("orbit length {len} does not divide group order {order}")));
    }
    let target = order / len;
    let gens = group.generators();
    let mut sub = SubgroupBuilder::new(group.degree(), vec![])?;
    if target == 1 {
        return Ok(sub.finish());
    }
    for b in 0..orb.len() {
        let ub = orb.transversal(b, gens);
        for s in gens {
            let img = act(&orb.points[b], s);
            let c = orb.position(&img).expect("orbit is closed");
            let uc = orb.transversal(c, gens);
            sub.offer(ub.mul(s).mul(&uc.inverse()))?;
            if sub.order() == target {
                return Ok(sub.finish());
            }
        }
    }
    Err(Error::invariant(format!("stabilizer reached order {} instead of {target}", sub.order())))
}

pub fn act_point(p: &usize, g: &Permutation) -> usize {
    g.apply(*p)
}

pub fn act_tuple(t: &Vec<u32>, g: &Permutation) -> Vec<u32> {
    t.iter().map(|&p| g.apply(p as usize) as u32).collect()
}

pub fn act_set(m: &u64, g: &Permutation) -> u64 {
    g.apply_mask(*m)
}

pub fn act_flag(f: &Vec<u64>, g: &Permutation) -> Vec<u64> {
    f.iter().map(|&m| g.apply_mask(m)).collect()
}

/// Packs a chain of point sets into a 128-bit key: 4 bits per point holding the
/// index of the first set containing it. Needs degree ≤ 32 and at most 14 sets.
pub fn pack_flag(flag: &[u64], degree: usize) -> u128 {
    debug_assert!(degree <= 32 && flag.len() < 15);
    let mut key = 0u128;
    for i in 0..degree {
        let label = flag.iter().position(|&m| m & (1 << i) != 0).unwrap_or(15) as u128;
        key |= label << (4 * i);
    }
    key
}

/// Flag key action for [`pack_flag`] keys.
pub fn act_packed_flag(key: &u128, g: &Permutation) -> u128 {
    let mut out = 0u128;
    for i in 0..g.degree() {
        let label = (key >> (4 * i)) & 0xf;
        out |= label << (4 * g.apply(i));
    }
    out
}

/// Stabilizer of a point set (setwise).
pub fn set_stabilizer(group: &GenGroup, mask: u64, cap: usize) -> Result<(GenGroup, usize)> {
    let orb = orbit(group.generators(), mask, act_set, cap)?;
    let stab = stabilizer(group, &orb, act_set)?;
    Ok((stab, orb.len()))
}
