//! p-parts of group homology through Sylow subgroups.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::catalog::alternating_group;
use crate::error::{Error, Result};
use crate::finite::{FiniteGroup, Hom};
use crate::group::{symmetric_group, GenGroup};
use crate::homology::AbelianInvariants;
use crate::matrix::Int;
use crate::perm::Permutation;
use crate::sylow::{double_cosets, is_prime, prime_divisors, sylow_ascent, valuation, weyl_exponent, SearchConfig, WeylData};
use crate::zg::{chain_map, induced_homology_map, resolution_small, FreeResolution};

/// Default cap on `|G|` for double coset enumeration.
pub const DOUBLE_COSET_CAP: usize = 1_000_000;

/// `H_n(G)_{(p)}` when `p` divides `|G|` exactly once: `Z_p` for `n = 2ek - 1`, else 0.
pub fn cyclic_sylow_ppart(
    group: &GenGroup,
    p: u64,
    n: usize,
    cfg: SearchConfig,
) -> Result<(AbelianInvariants, Option<WeylData>)> {
    let Some(w) = weyl_exponent(group, p, cfg)? else {
        return Ok((AbelianInvariants::trivial(), None));
    };
    Ok((cyclic_pattern(p, w.exponent, n), Some(w)))
}

/// The periodic pattern `Z_p` in degrees `2ek - 1`.
pub fn cyclic_pattern(p: u64, e: u64, n: usize) -> AbelianInvariants {
    let n = n as u64;
    if n > 0 && (n + 1) % (2 * e) == 0 {
        AbelianInvariants::from_torsion(&[p], 0)
    } else {
        AbelianInvariants::trivial()
    }
}

/// Which conjugate of `P` is intersected for the double coset `P x P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Convention {
    /// `K = {k ∈ P : x⁻¹kx ∈ P}` with the second map `k ↦ x⁻¹kx`.
    ConjX,
    /// `K = {k ∈ P : xkx⁻¹ ∈ P}` with the second map `k ↦ xkx⁻¹`.
    ConjXInverse,
}

impl Convention {
    pub fn name(self) -> &'static str {
        match self {
            Convention::ConjX => "conj_x",
            Convention::ConjXInverse => "conj_x_inverse",
        }
    }

    fn element(self, x: &Permutation) -> Permutation {
        match self {
            Convention::ConjX => x.clone(),
            Convention::ConjXInverse => x.inverse(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CeReport {
    pub invariants: AbelianInvariants,
    pub sylow_invariants: AbelianInvariants,
    pub double_cosets: usize,
    /// Double cosets with a nontrivial intersection.
    pub intersections: usize,
    pub convention: Convention,
}

type ResolutionCache = HashMap<Vec<Permutation>, (Arc<FiniteGroup>, FreeResolution)>;

fn resolve(
    cache: &mut ResolutionCache,
    elems: Vec<Permutation>,
    group: &GenGroup,
    n: usize,
) -> Result<(Arc<FiniteGroup>, FreeResolution)> {
    let mut key = elems.clone();
    key.sort_by(|a, b| a.images().cmp(b.images()));
    if let Some((f, r)) = cache.get(&key) {
        return Ok((f.clone(), r.clone()));
    }
    let gens: Vec<Permutation> = elems.into_iter().filter(|e| !e.is_identity()).collect();
    let k = GenGroup::new(group.degree(), gens)?;
    let f = Arc::new(FiniteGroup::new(&k)?);
    let r = resolution_small(f.clone(), n + 1)?;
    cache.insert(key, (f.clone(), r.clone()));
    Ok((f, r))
}

/// `H_n(G)_{(p)}` as the quotient of `H_n(P)` by `φ_K(a) - φ'_K(a)` over the double
/// cosets `P x P` (`P` a Sylow `p`-subgroup of order at most 128).
pub fn ce_ppart_general(group: &GenGroup, sylow: &GenGroup, n: usize, convention: Convention) -> Result<CeReport> {
    let order = sylow.order();
    let primes = prime_divisors(order);
    if n == 0 {
        return Err(Error::invalid("degree must be positive"));
    }
    if primes.len() != 1 {
        return Err(Error::invalid("P must be a nontrivial p-group"));
    }
    let p = primes[0];
    if valuation(group.order(), p as u128) != valuation(order, p as u128) {
        return Err(Error::invalid("P is not a Sylow subgroup"));
    }
    for g in sylow.generators() {
        if !group.contains(g) {
            return Err(Error::invalid("P is not a subgroup of G"));
        }
    }
    let fp = Arc::new(FiniteGroup::new(sylow)?);
    let rp = resolution_small(fp.clone(), n + 1)?;
    let hp = rp.homology_group(n)?;
    let sylow_invariants = hp.invariants()?;
    let cosets = double_cosets(group, sylow, DOUBLE_COSET_CAP)?;
    let mut cache = HashMap::new();
    let mut relations: Vec<Vec<Int>> = Vec::new();
    let mut intersections = 0;
    for (x, _) in &cosets {
        let c = convention.element(x);
        let kel: Vec<Permutation> = fp.elements().iter().filter(|k| sylow.contains(&k.conj(&c))).cloned().collect();
        if kel.len() == 1 {
            continue;
        }
        intersections += 1;
        let (fk, rk) = resolve(&mut cache, kel, group, n)?;
        let inc = chain_map(Hom::inclusion(&fk, &fp)?, &rk, &rp, n)?;
        let con = chain_map(Hom::from_fn(&fk, &fp, |k| k.conj(&c))?, &rk, &rp, n)?;
        let (_, _, m1) = induced_homology_map(&inc, &rk, &rp, n)?;
        let (_, _, m2) = induced_homology_map(&con, &rk, &rp, n)?;
        for (a, b) in m1.iter().zip(&m2) {
            let r: Vec<Int> = a.iter().zip(b).map(|(u, v)| u - v).collect();
            if r.iter().any(|v| *v != Int::from(0)) {
                relations.push(r);
            }
        }
    }
    let invariants = hp.quotient(&relations)?.ppart(p);
    Ok(CeReport { invariants, sylow_invariants, double_cosets: cosets.len(), intersections, convention })
}

/// Outcome of checking both conventions against kernel-based resolutions.
#[derive(Clone, Debug, Serialize)]
pub struct SelfTest {
    pub conj_x: bool,
    pub conj_x_inverse: bool,
    /// `(group, prime, degree, expected)` cases examined.
    pub cases: Vec<(String, u64, usize, String)>,
}

impl SelfTest {
    /// The first convention that matched every case.
    pub fn selected(&self) -> Result<Convention> {
        if self.conj_x {
            Ok(Convention::ConjX)
        } else if self.conj_x_inverse {
            Ok(Convention::ConjXInverse)
        } else {
            Err(Error::invariant("neither double coset convention reproduces the oracle"))
        }
    }
}

fn regular(g: &GenGroup) -> Result<GenGroup> {
    let f = FiniteGroup::new(g)?;
    crate::wall::regular_representation(&f)
}

/// Compares both conventions with `resolution_small` on S3, A4 and the regular
/// representation of Z2² ⋊ Z3, degrees 1 to 3.
pub fn ce_self_test(cfg: SearchConfig) -> Result<SelfTest> {
    let groups = vec![
        ("S3".to_string(), symmetric_group(3)),
        ("A4".to_string(), alternating_group(4)),
        ("Z2^2:Z3".to_string(), regular(&alternating_group(4))?),
    ];
    let mut ok = [true, true];
    let mut cases = Vec::new();
    for (name, g) in groups {
        let full = resolution_small(Arc::new(FiniteGroup::new(&g)?), 4)?;
        for p in prime_divisors(g.order()) {
            let sylow = sylow_ascent(&g, p, cfg)?;
            for n in 1..=3 {
                let expect = full.homology(n)?.ppart(p);
                for (i, conv) in [Convention::ConjX, Convention::ConjXInverse].into_iter().enumerate() {
                    if ce_ppart_general(&g, &sylow, n, conv)?.invariants != expect {
                        ok[i] = false;
                    }
                }
                cases.push((name.clone(), p, n, expect.to_string()));
            }
        }
    }
    Ok(SelfTest { conj_x: ok[0], conj_x_inverse: ok[1], cases })
}

/// One prime's contribution and how it was obtained.
#[derive(Clone, Debug, Serialize)]
pub struct PrimePart {
    pub prime: u64,
    pub invariants: AbelianInvariants,
    pub method: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weyl_exponent: Option<u64>,
}

/// `H_n(G)` assembled from its p-parts, for primes in `primes` (all prime divisors
/// of `|G|` when `None`).
pub fn sylow_homology(
    group: &GenGroup,
    n: usize,
    primes: Option<&[u64]>,
    convention: Convention,
    cfg: SearchConfig,
) -> Result<(AbelianInvariants, Vec<PrimePart>)> {
    let all = prime_divisors(group.order());
    let ps: Vec<u64> = match primes {
        Some(list) => {
            for &p in list {
                if !is_prime(p) {
                    return Err(Error::invalid(format!("{p} is not prime")));
                }
            }
            list.to_vec()
        }
        None => all.clone(),
    };
    let mut total = AbelianInvariants::trivial();
    let mut parts = Vec::new();
    for p in ps {
        let v = valuation(group.order(), p as u128);
        let part = if v == 0 {
            PrimePart { prime: p, invariants: AbelianInvariants::trivial(), method: "coprime", weyl_exponent: None }
        } else if v == 1 {
            let (inv, w) = cyclic_sylow_ppart(group, p, n, cfg)?;
            PrimePart { prime: p, invariants: inv, method: "cyclic_sylow", weyl_exponent: w.map(|w| w.exponent) }
        } else {
            let sylow = sylow_ascent(group, p, cfg)?;
            let r = ce_ppart_general(group, &sylow, n, convention)?;
            PrimePart { prime: p, invariants: r.invariants, method: "double_cosets", weyl_exponent: None }
        };
        total = total.direct_sum(&part.invariants);
        parts.push(part);
    }
    Ok((total, parts))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern() {
        assert_eq!(cyclic_pattern(23, 11, 21).torsion, vec![23]);
        assert!(cyclic_pattern(23, 11, 20).is_trivial());
        assert!(cyclic_pattern(5, 2, 4).is_trivial());
        assert_eq!(cyclic_pattern(5, 2, 7).torsion, vec![5]);
    }

    #[test]
    fn s3_at_three() {
        let s3 = symmetric_group(3);
        let p = GenGroup::from_cycles(3, &["(1,2,3)"]).unwrap();
        for conv in [Convention::ConjX, Convention::ConjXInverse] {
            assert!(ce_ppart_general(&s3, &p, 1, conv).unwrap().invariants.is_trivial());
            assert_eq!(ce_ppart_general(&s3, &p, 3, conv).unwrap().invariants.torsion, vec![3]);
        }
    }
}
