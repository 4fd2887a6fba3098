//! Permutations of `{0, .., n-1}`.
//!
//! Points are 0-based internally; cycle strings and JSON use 1-based points.
//! Products act on the right: `i^(a*b) = (i^a)^b`, so `a.mul(&b)` applies `a` first.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree as u32).collect() }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n {
                return Err(Error::PointOutOfRange { point: i + 1, degree: n });
            }
            if seen[i] {
                return Err(Error::invalid(format!("image {} repeated", i + 1)));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 1-based images (the JSON convention).
    pub fn from_images_1based(images: &[u32]) -> Result<Self> {
        let mut v = Vec::with_capacity(images.len());
        for &i in images {
            if i == 0 {
                return Err(Error::Parse("point 0 in 1-based image list".into()));
            }
            v.push(i - 1);
        }
        Self::from_images(v)
    }

    /// Parses cycle notation such as `(1,9,6,7,5)(2,10,3,8,4)`. The empty
    /// string and `()` denote the identity.
    pub fn from_cycles(s: &str, degree: usize) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut seen = vec![false; degree];
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut rest = s.as_str();
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| Error::Parse(format!("expected '(' in {s:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
            let cycle = &body[..close];
            rest = &body[close + 1..];
            if cycle.is_empty() {
                continue;
            }
            let pts = cycle
                .split(',')
                .map(|t| {
                    let p: usize = t.parse().map_err(|_| Error::Parse(format!("bad point {t:?}")))?;
                    if p == 0 || p > degree {
                        return Err(Error::PointOutOfRange { point: p, degree });
                    }
                    Ok(p - 1)
                })
                .collect::<Result<Vec<_>>>()?;
            for &p in &pts {
                if seen[p] {
                    return Err(Error::Parse(format!("point {} repeated in {s:?}", p + 1)));
                }
                seen[p] = true;
            }
            for (k, &p) in pts.iter().enumerate() {
                images[p] = pts[(k + 1) % pts.len()] as u32;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// Image of a point set given as a bitmask.
    #[inline]
    pub fn apply_mask(&self, mut mask: u64) -> u64 {
        let mut out = 0u64;
        while mask != 0 {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            out |= 1u64 << self.images[i];
        }
        out
    }

    /// `self` followed by `other`.
    pub fn mul(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn pow(&self, mut k: u64) -> Permutation {
        let mut base = self.clone();
        let mut acc = Permutation::identity(self.degree());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// `g^-1 * self * g`, the right conjugate `self^g`.
    pub fn conj(&self, g: &Permutation) -> Permutation {
        let mut out = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            out[g.images[i] as usize] = g.images[j as usize];
        }
        Permutation { images: out }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().find(|(i, &j)| *i as u32 != j).map(|(i, _)| i)
    }

    /// Nontrivial cycles, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                continue;
            }
            let mut c = vec![start];
            seen[start] = true;
            let mut i = self.apply(start);
            while i != start {
                seen[i] = true;
                c.push(i);
                i = self.apply(i);
            }
            out.push(c);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Sign of the permutation restricted to an invariant point set.
    pub fn sign_on_mask(&self, mask: u64) -> i32 {
        let mut seen = 0u64;
        let mut sign = 1;
        let mut m = mask;
        while m != 0 {
            let start = m.trailing_zeros() as usize;
            m &= m - 1;
            if seen & (1 << start) != 0 {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            loop {
                seen |= 1 << i;
                len += 1;
                i = self.apply(i);
                if i == start {
                    break;
                }
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (k, p) in c.iter().enumerate() {
                if k > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_roundtrip() {
        let p = Permutation::from_cycles("(1,9,6,7,5)(2,10,3,8,4)", 10).unwrap();
        assert_eq!(p.to_string(), "(1,9,6,7,5)(2,10,3,8,4)");
        assert_eq!(p.order(), 5);
        assert_eq!(p.apply(0), 8);
    }

    #[test]
    fn right_action_convention() {
        let a = Permutation::from_cycles("(1,2)", 3).unwrap();
        let b = Permutation::from_cycles("(2,3)", 3).unwrap();
        // 1 -> 2 under a, then 2 -> 3 under b.
        assert_eq!(a.mul(&b).apply(0), 2);
        let c = a.conj(&b);
        assert_eq!(c, b.inverse().mul(&a).mul(&b));
        assert_eq!(c.to_string(), "(1,3)");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Permutation::from_cycles("(1,2,1)", 3).is_err());
        assert!(Permutation::from_cycles("(1,4)", 3).is_err());
        assert!(Permutation::from_images(vec![0, 0, 1]).is_err());
    }

    #[test]
    fn mask_sign() {
        let p = Permutation::from_cycles("(1,2)(3,4,5)", 5).unwrap();
        assert_eq!(p.apply_mask(0b00011), 0b00011);
        assert_eq!(p.sign_on_mask(0b00011), -1);
        assert_eq!(p.sign_on_mask(0b11100), 1);
    }
}
