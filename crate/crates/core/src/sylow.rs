//! Sylow subgroups, normalizer actions on cyclic Sylow subgroups, double cosets.

use std::collections::hash_map::DefaultHasher;
use std::collections::{HashMap, HashSet};
use std::hash::{Hash, Hasher};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GenGroup;
use crate::orbit::{SubgroupBuilder, DEFAULT_ORBIT_CAP};
use crate::perm::Permutation;

/// Cap on full group enumeration for double cosets.
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    pub seed: u64,
    pub orbit_cap: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { seed: 0, orbit_cap: DEFAULT_ORBIT_CAP }
    }
}

/// Multiplicity of `p` in `n`.
pub fn valuation(mut n: u128, p: u128) -> u32 {
    let mut v = 0;
    while n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn prime_divisors(mut n: u128) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u128;
    while d * d <= n {
        if n % d == 0 {
            out.push(d as u64);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

/// Image of the normalizer of a Sylow subgroup of prime order in its automorphism group.
#[derive(Clone, Debug, Serialize)]
pub struct WeylData {
    pub prime: u64,
    pub sylow_generator: Permutation,
    /// Order of the image in `(Z/p)^×`.
    pub exponent: u64,
    /// Sorted residues `m` such that some normalizer element conjugates `x` to `x^m`.
    pub residues: Vec<u64>,
    /// `witnesses[i]` conjugates the generator to its `residues[i]`-th power.
    #[serde(skip)]
    pub witnesses: Vec<Permutation>,
    /// Number of Sylow subgroups (conjugation orbit length).
    pub sylow_count: usize,
}

/// Power of `y` whose image array is lexicographically least among the nontrivial powers.
pub fn canonical_generator(y: &Permutation, p: u64) -> Permutation {
    let a = y.first_moved().expect("nontrivial element");
    let (mut best_j, mut best) = (1u64, usize::MAX);
    let mut b = a;
    for j in 1..p {
        b = y.apply(b);
        if b < best {
            best = b;
            best_j = j;
        }
    }
    y.pow(best_j)
}

/// `m` with `y^m = z`, for `z` a power of `y` of prime order `p`.
fn discrete_log(y: &Permutation, z: &Permutation, p: u64) -> u64 {
    let a = y.first_moved().expect("nontrivial element");
    let target = z.apply(a);
    let mut b = a;
    for m in 0..p {
        if b == target {
            return m;
        }
        b = y.apply(b);
    }
    unreachable!("z is not a power of y")
}

pub fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

fn pack_perm(g: &Permutation) -> u128 {
    debug_assert!(g.degree() <= 25);
    g.images().iter().enumerate().fold(0u128, |k, (i, &x)| k | ((x as u128) << (5 * i)))
}

fn unpack_perm(key: u128, degree: usize) -> Permutation {
    Permutation::from_images((0..degree).map(|i| ((key >> (5 * i)) & 31) as u32).collect()).unwrap()
}

/// Element of order `p^a` (the `p`-power part of a random element).
fn random_p_element(group: &GenGroup, p: u64, rng: &mut ChaCha8Rng, need_order_p: bool) -> Result<Permutation> {
    let bsgs = group.bsgs();
    for _ in 0..100_000 {
        let g = bsgs.random_element(rng);
        let ord = g.order();
        if ord % p != 0 {
            continue;
        }
        let mut m = ord;
        while m % p == 0 {
            m /= p;
        }
        let y = g.pow(m);
        return Ok(if need_order_p { y.pow(y.order() / p) } else { y });
    }
    Err(Error::invariant(format!("no element of order divisible by {p} found")))
}

/// Conjugation action of the normalizer of a Sylow subgroup of prime order.
///
/// Returns `Ok(None)` when `p` does not divide `|G|`.
pub fn weyl_exponent(group: &GenGroup, p: u64, cfg: SearchConfig) -> Result<Option<WeylData>> {
    if !is_prime(p) {
        return Err(Error::invalid(format!("{p} is not prime")));
    }
    let order = group.order();
    match valuation(order, p as u128) {
        0 => return Ok(None),
        1 => {}
        v => {
            return Err(Error::invalid(format!(
                "{p}^{v} divides |G| = {order}; the Sylow subgroup is not of prime order"
            )))
        }
    }
    if group.degree() > 25 {
        return Err(Error::invalid("weyl_exponent supports degree at most 25"));
    }
    let degree = group.degree();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let x = random_p_element(group, p, &mut rng, true)?;
    let gens = group.generators();

    let c0 = canonical_generator(&x, p);
    let mut keys: Vec<u128> = vec![pack_perm(&c0)];
    let mut index: HashMap<u128, u32> = HashMap::new();
    index.insert(keys[0], 0);
    // expo[q]: x^{u_q} = canon_q^{expo[q]}
    let mut expo: Vec<u32> = vec![discrete_log(&c0, &x, p) as u32];
    let mut parent: Vec<(u32, u16)> = vec![(0, 0)];

    let mut in_image = vec![false; p as usize];
    in_image[1] = true;
    // (residue, orbit index, generator) for Schreier generators that enlarged the image
    let mut new_residues: Vec<(u64, usize, usize)> = Vec::new();

    let mut k = 0;
    while k < keys.len() {
        let c = unpack_perm(keys[k], degree);
        for (si, s) in gens.iter().enumerate() {
            let cs = c.conj(s);
            let d = canonical_generator(&cs, p);
            let b = discrete_log(&d, &cs, p);
            let kd = pack_perm(&d);
            let a = expo[k] as u64 * b % p;
            match index.get(&kd) {
                None => {
                    if keys.len() >= cfg.orbit_cap {
                        return Err(Error::cap("Sylow conjugation orbit", cfg.orbit_cap));
                    }
                    index.insert(kd, keys.len() as u32);
                    keys.push(kd);
                    expo.push(a as u32);
                    parent.push((k as u32, si as u16));
                }
                Some(&j) => {
                    let m = a * inv_mod(expo[j as usize] as u64, p) % p;
                    if !in_image[m as usize] {
                        new_residues.push((m, k, si));
                        close_residues(&mut in_image, m, p);
                    }
                }
            }
        }
        k += 1;
    }

    let transversal = |i: usize| -> Permutation {
        let mut path = Vec::new();
        let mut j = i;
        while j != 0 {
            let (pj, s) = parent[j];
            path.push(s as usize);
            j = pj as usize;
        }
        path.iter().rev().fold(Permutation::identity(degree), |acc, &s| acc.mul(&gens[s]))
    };

    // Witnesses for the generating residues, then closure with products.
    let mut witness: HashMap<u64, Permutation> = HashMap::new();
    witness.insert(1, Permutation::identity(degree));
    for &(m, qi, si) in &new_residues {
        let s = &gens[si];
        let c = unpack_perm(keys[qi], degree);
        let d = canonical_generator(&c.conj(s), p);
        let j = index[&pack_perm(&d)] as usize;
        let sigma = transversal(qi).mul(s).mul(&transversal(j).inverse());
        let mut frontier: Vec<(u64, Permutation)> = witness.iter().map(|(&r, w)| (r, w.clone())).collect();
        while let Some((r, w)) = frontier.pop() {
            let r2 = r * m % p;
            if let std::collections::hash_map::Entry::Vacant(e) = witness.entry(r2) {
                let w2 = w.mul(&sigma);
                e.insert(w2.clone());
                frontier.push((r2, w2));
            }
        }
    }
    let mut residues: Vec<u64> = witness.keys().copied().collect();
    residues.sort_unstable();
    let witnesses = residues.iter().map(|r| witness[r].clone()).collect();
    let exponent = residues.len() as u64;
    debug_assert_eq!(exponent as usize, in_image.iter().filter(|&&b| b).count());
    Ok(Some(WeylData { prime: p, sylow_generator: x, exponent, residues, witnesses, sylow_count: keys.len() }))
}

fn close_residues(in_image: &mut [bool], m: u64, p: u64) {
    let current: Vec<u64> = (1..p).filter(|&r| in_image[r as usize]).collect();
    let mut frontier = current;
    while let Some(r) = frontier.pop() {
        let r2 = r * m % p;
        if !in_image[r2 as usize] {
            in_image[r2 as usize] = true;
            frontier.push(r2);
        }
    }
}


fn subgroup_key(elements: &[Permutation]) -> u128 {
    let mut sorted: Vec<&Permutation> = elements.iter().collect();
    sorted.sort();
    let mut h1 = DefaultHasher::new();
    let mut h2 = DefaultHasher::new();
    0xa5u8.hash(&mut h2);
    for e in sorted {
        e.images().hash(&mut h1);
        e.images().hash(&mut h2);
    }
    ((h1.finish() as u128) << 64) | h2.finish() as u128
}

/// Normalizer of a subgroup via its conjugation orbit.
pub fn normalizer(group: &GenGroup, sub: &GenGroup, cfg: SearchConfig) -> Result<GenGroup> {
    let elems = sub.elements(1 << 16)?;
    let gens = group.generators();
    let degree = group.degree();
    let conj_key = |u: &Permutation| subgroup_key(&elems.iter().map(|e| e.conj(u)).collect::<Vec<_>>());
    let mut transversal: Vec<Permutation> = vec![Permutation::identity(degree)];
    let mut index: HashMap<u128, u32> = HashMap::new();
    index.insert(subgroup_key(&elems), 0);
    let mut k = 0;
    while k < transversal.len() {
        for s in gens {
            let us = transversal[k].mul(s);
            let key = conj_key(&us);
            if !index.contains_key(&key) {
                if transversal.len() >= cfg.orbit_cap {
                    return Err(Error::cap("subgroup conjugation orbit", cfg.orbit_cap));
                }
                index.insert(key, transversal.len() as u32);
                transversal.push(us);
            }
        }
        k += 1;
    }
    let target = group.order() / transversal.len() as u128;
    let mut builder = SubgroupBuilder::new(degree, sub.generators().to_vec())?;
    if builder.order() == target {
        return Ok(builder.finish());
    }
    for ub in &transversal {
        for s in gens {
            let us = ub.mul(s);
            let uc = &transversal[index[&conj_key(&us)] as usize];
            builder.offer(us.mul(&uc.inverse()))?;
            if builder.order() == target {
                return Ok(builder.finish());
            }
        }
    }
    Err(Error::invariant("normalizer generation did not reach the expected order"))
}

/// Sylow `p`-subgroup by normalizer ascent from a random `p`-element.
pub fn sylow_ascent(group: &GenGroup, p: u64, cfg: SearchConfig) -> Result<GenGroup> {
    let order = group.order();
    let v = valuation(order, p as u128);
    if v == 0 {
        return Err(Error::invalid(format!("{p} does not divide the group order {order}")));
    }
    let target = (p as u128).pow(v);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let x = random_p_element(group, p, &mut rng, false)?;
    let mut sub = GenGroup::new(group.degree(), vec![x])?;
    while sub.order() < target {
        let norm = normalizer(group, &sub, cfg).map_err(|e| match e {
            Error::CapExceeded { what, cap } => {
                Error::CapExceeded { what: format!("{what} (Sylow ascent stopped at order {})", sub.order()), cap }
            }
            e => e,
        })?;
        let nb = norm.bsgs();
        let mut grown = false;
        for _ in 0..100_000 {
            let g = nb.random_element(&mut rng);
            let ord = g.order();
            let mut m = ord;
            while m % p == 0 {
                m /= p;
            }
            let y = g.pow(m);
            if !sub.contains(&y) {
                let mut gens = sub.generators().to_vec();
                gens.push(y);
                sub = GenGroup::new(group.degree(), gens)?;
                grown = true;
                break;
            }
        }
        if !grown {
            return Err(Error::invariant(format!("Sylow ascent stalled at order {}", sub.order())));
        }
    }
    Ok(sub)
}

/// Double coset representatives `P x P` with their sizes.
pub fn double_cosets(group: &GenGroup, sub: &GenGroup, cap: usize) -> Result<Vec<(Permutation, usize)>> {
    let order = group.order();
    if order > cap as u128 {
        return Err(Error::cap(format!("double coset enumeration of group of order {order}"), cap));
    }
    let bsgs = group.bsgs();
    let p_elems = sub.elements(cap)?;
    let mut seen = vec![false; order as usize];
    let mut out = Vec::new();
    for i in 0..order {
        if seen[i as usize] {
            continue;
        }
        let x = bsgs.element(i);
        let mut members = HashSet::new();
        for a in &p_elems {
            let ax = a.mul(&x);
            for b in &p_elems {
                let r = bsgs.rank(&ax.mul(b)).expect("product lies in the group");
                if !seen[r as usize] {
                    seen[r as usize] = true;
                    members.insert(r);
                }
            }
        }
        out.push((x, members.len()));
    }
    Ok(out)
}

/// Isomorphism type of a group of order 27, from commutativity and exponent.
pub fn order_27_type(group: &GenGroup) -> Result<&'static str> {
    if group.order() != 27 {
        return Err(Error::invalid("group does not have order 27"));
    }
    let elems = group.elements(27)?;
    let exponent = elems.iter().map(|e| e.order()).max().unwrap_or(1);
    let gens = group.generators();
    let abelian = gens.iter().all(|a| gens.iter().all(|b| a.mul(b) == b.mul(a)));
    Ok(match (abelian, exponent) {
        (true, 27) => "Z27",
        (true, 9) => "Z9xZ3",
        (true, _) => "Z3^3",
        (false, 3) => "3^(1+2)+",
        (false, _) => "3^(1+2)-",
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::cyclic_group;

    #[test]
    fn canonical_generator_is_lex_least_power() {
        let y = Permutation::from_cycles("(1,3,5,2,4)", 5).unwrap();
        let c = canonical_generator(&y, 5);
        let best = (1..5).map(|j| y.pow(j)).min_by(|a, b| a.images().cmp(b.images())).unwrap();
        assert_eq!(c, best);
    }

    #[test]
    fn weyl_of_cyclic_group() {
        let w = weyl_exponent(&cyclic_group(5), 5, SearchConfig::default()).unwrap().unwrap();
        assert_eq!(w.exponent, 1);
        assert_eq!(w.residues, vec![1]);
    }

    #[test]
    fn weyl_of_s3_and_witnesses() {
        let g = catalog::by_name("S3").unwrap();
        let w = weyl_exponent(&g, 3, SearchConfig::default()).unwrap().unwrap();
        assert_eq!(w.exponent, 2);
        assert_eq!(w.residues, vec![1, 2]);
        for (m, wit) in w.residues.iter().zip(&w.witnesses) {
            assert!(g.contains(wit));
            assert_eq!(w.sylow_generator.conj(wit), w.sylow_generator.pow(*m));
        }
    }

    #[test]
    fn weyl_rejects_non_cyclic_sylow() {
        let g = catalog::by_name("S4").unwrap();
        assert!(weyl_exponent(&g, 2, SearchConfig::default()).is_err());
        assert!(weyl_exponent(&g, 5, SearchConfig::default()).unwrap().is_none());
    }

    #[test]
    fn sylow_of_s3() {
        let g = catalog::by_name("S3").unwrap();
        let p = sylow_ascent(&g, 3, SearchConfig::default()).unwrap();
        assert_eq!(p.order(), 3);
    }

    #[test]
    fn sylow_orders() {
        let g = catalog::by_name("S6").unwrap();
        assert_eq!(sylow_ascent(&g, 2, SearchConfig::default()).unwrap().order(), 16);
        assert_eq!(sylow_ascent(&g, 3, SearchConfig::default()).unwrap().order(), 9);
    }

    #[test]
    fn double_cosets_of_s3() {
        let g = catalog::by_name("S3").unwrap();
        let h = GenGroup::from_cycles(3, &["(1,2)"]).unwrap();
        let dc = double_cosets(&g, &h, 100).unwrap();
        assert_eq!(dc.len(), 2);
        assert_eq!(dc.iter().map(|d| d.1).sum::<usize>(), 6);
        let whole = double_cosets(&g, &g, 100).unwrap();
        assert_eq!(whole.len(), 1);
    }
}
