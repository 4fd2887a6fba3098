//! Homology of integer chain complexes and abelian invariants.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{elementary_divisors, kernel_basis, snf, sv_from_dense, Echelon, Int, IntMatrix, SparseVec};
use crate::sylow::prime_divisors;

/// A finitely generated abelian group as prime-power torsion coefficients
/// plus a free rank. Torsion is sorted by prime, then by power, so that
/// `Z_12` reads `[4, 3]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub torsion: Vec<u64>,
    pub free_rank: usize,
}

fn prime_of(q: u64) -> u64 {
    prime_divisors(q as u128)[0]
}

impl AbelianInvariants {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// From arbitrary cyclic orders (0 meaning Z, 1 ignored).
    pub fn from_orders<'a>(orders: impl IntoIterator<Item = &'a Int>) -> Result<Self> {
        let mut inv = Self::default();
        for d in orders {
            let d = d.clone();
            if d == Int::from(0) {
                inv.free_rank += 1;
                continue;
            }
            let d = u64::try_from(if d < Int::from(0) { -d } else { d })
                .map_err(|_| Error::invalid("torsion coefficient exceeds 64 bits"))?;
            inv.push_cyclic(d);
        }
        inv.normalize();
        Ok(inv)
    }

    pub fn from_torsion(orders: &[u64], free_rank: usize) -> Self {
        let mut inv = AbelianInvariants { torsion: Vec::new(), free_rank };
        for &d in orders {
            inv.push_cyclic(d);
        }
        inv.normalize();
        inv
    }

    fn push_cyclic(&mut self, mut d: u64) {
        if d == 0 {
            self.free_rank += 1;
            return;
        }
        for p in prime_divisors(d as u128) {
            let mut q = 1;
            while d % p == 0 {
                d /= p;
                q *= p;
            }
            self.torsion.push(q);
        }
    }

    fn normalize(&mut self) {
        self.torsion.sort_by_key(|&q| (prime_of(q), q));
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> u128 {
        self.torsion.iter().map(|&q| q as u128).product()
    }

    /// The `p`-primary part (free rank dropped).
    pub fn ppart(&self, p: u64) -> AbelianInvariants {
        AbelianInvariants {
            torsion: self.torsion.iter().copied().filter(|&q| q % p == 0).collect(),
            free_rank: 0,
        }
    }

    /// Torsion restricted to primes `>= p`.
    pub fn primes_at_least(&self, p: u64) -> AbelianInvariants {
        AbelianInvariants {
            torsion: self.torsion.iter().copied().filter(|&q| prime_of(q) >= p).collect(),
            free_rank: 0,
        }
    }

    pub fn direct_sum(&self, other: &AbelianInvariants) -> AbelianInvariants {
        let mut t = self.torsion.clone();
        t.extend_from_slice(&other.torsion);
        let mut out = AbelianInvariants { torsion: t, free_rank: self.free_rank + other.free_rank };
        out.normalize();
        out
    }

    pub fn primes(&self) -> Vec<u64> {
        let mut ps: Vec<u64> = self.torsion.iter().map(|&q| prime_of(q)).collect();
        ps.dedup();
        ps
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        parts.extend(self.torsion.iter().map(|q| format!("Z_{q}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// A sparse matrix stored by columns.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix {
    pub rows: usize,
    pub columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn new(rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.iter().all(|(i, _)| *i < rows)));
        SparseMatrix { rows, columns }
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, columns: vec![Vec::new(); cols] }
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (j, c) in v {
            for (i, a) in &self.columns[*j] {
                terms.push((*i, a * c));
            }
        }
        crate::matrix::sv_from_terms(terms)
    }

    pub fn compose(&self, inner: &SparseMatrix) -> SparseMatrix {
        SparseMatrix { rows: self.rows, columns: inner.columns.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn to_dense(&self) -> IntMatrix {
        IntMatrix::from_columns(self.rows, &self.columns)
    }
}

/// Chain complex `C_0 <- C_1 <- ... <- C_n`; `boundaries[k]` maps `C_k` to `C_{k-1}`
/// (`boundaries[0]` is the zero map out of `C_0`).
#[derive(Clone, Debug, Default)]
pub struct ChainComplex {
    pub dims: Vec<usize>,
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    /// Builds from `d_1, ..., d_n` with `d_k: C_k -> C_{k-1}`.
    pub fn from_boundaries(dims: Vec<usize>, ds: Vec<SparseMatrix>) -> Result<Self> {
        if ds.len() + 1 != dims.len() {
            return Err(Error::invalid("need one boundary per positive degree"));
        }
        let mut boundaries = vec![SparseMatrix::zero(0, dims[0])];
        for (k, d) in ds.into_iter().enumerate() {
            if d.rows != dims[k] || d.cols() != dims[k + 1] {
                return Err(Error::invalid(format!("boundary {} has wrong shape", k + 1)));
            }
            boundaries.push(d);
        }
        let c = ChainComplex { dims, boundaries };
        c.check()?;
        Ok(c)
    }

    pub fn top(&self) -> usize {
        self.dims.len() - 1
    }

    pub fn check(&self) -> Result<()> {
        for k in 2..self.dims.len() {
            if !self.boundaries[k - 1].compose(&self.boundaries[k]).is_zero() {
                return Err(Error::invariant(format!("boundary squares to nonzero at degree {k}")));
            }
        }
        Ok(())
    }

    /// `H_k` for `k < top`; `H_top` is computed with no incoming boundary.
    pub fn homology(&self, k: usize) -> Result<AbelianInvariants> {
        let (rank_out, _) = if k == 0 {
            (0, Vec::new())
        } else {
            elementary_divisors(self.boundaries[k].rows, &self.boundaries[k].columns)
        };
        let (rank_in, torsion) = if k < self.top() {
            elementary_divisors(self.boundaries[k + 1].rows, &self.boundaries[k + 1].columns)
        } else {
            (0, Vec::new())
        };
        let mut inv = AbelianInvariants::from_orders(torsion.iter())?;
        inv.free_rank = self.dims[k] - rank_out - rank_in;
        Ok(inv)
    }

    pub fn homology_all(&self, max: usize) -> Result<Vec<AbelianInvariants>> {
        (0..=max.min(self.top())).map(|k| self.homology(k)).collect()
    }
}

/// `H = ker d_out / im d_in` with explicit coordinates, for computing induced maps.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    /// Orders of the cyclic factors (0 = infinite), all different from 1.
    pub orders: Vec<Int>,
    kernel: Echelon,
    kernel_dim: usize,
    u: IntMatrix,
    keep: Vec<usize>,
    generators: Vec<SparseVec>,
}

impl HomologyGroup {
    /// `d_out: C_k -> C_{k-1}` (columns indexed by `C_k`) and `d_in: C_{k+1} -> C_k`.
    pub fn new(dim: usize, d_out: &SparseMatrix, d_in: &SparseMatrix) -> Result<Self> {
        if d_out.cols() != dim || d_in.rows != dim {
            return Err(Error::invalid("homology: shape mismatch"));
        }
        let kb = kernel_basis(&d_out.columns);
        let r = kb.len();
        let mut kernel = Echelon::new(true);
        for v in &kb {
            kernel.push(v.clone());
        }
        let mut x_cols = Vec::with_capacity(d_in.cols());
        for c in &d_in.columns {
            let x = kernel
                .solve(c)
                .ok_or_else(|| Error::invariant("image of incoming boundary is not a cycle"))?;
            x_cols.push(x);
        }
        let x = IntMatrix::from_columns(r, &x_cols);
        let s = snf(&x, true);
        let u = s.u.unwrap();
        let u_inv = s.u_inv.unwrap();
        let one = Int::from(1);
        let mut orders = Vec::new();
        let mut keep = Vec::new();
        for i in 0..r {
            let d = if i < s.diag.len() { s.diag[i].clone() } else { Int::from(0) };
            if d != one {
                orders.push(d);
                keep.push(i);
            }
        }
        let kmat = IntMatrix::from_columns(dim, &kb);
        let gens_dense = kmat.mul(&u_inv);
        let generators = keep.iter().map(|&i| gens_dense.sparse_column(i)).collect();
        Ok(HomologyGroup { orders, kernel, kernel_dim: r, u, keep, generators })
    }

    pub fn invariants(&self) -> Result<AbelianInvariants> {
        AbelianInvariants::from_orders(self.orders.iter())
    }

    /// Cycle representatives of the cyclic generators.
    pub fn generators(&self) -> &[SparseVec] {
        &self.generators
    }

    /// Coordinates of a cycle, reduced modulo the cyclic orders.
    pub fn coords(&self, z: &SparseVec) -> Result<Vec<Int>> {
        let c = self.kernel.solve(z).ok_or_else(|| Error::invariant("vector is not a cycle"))?;
        let dense = crate::matrix::sv_to_dense(&c, self.kernel_dim);
        let uc = self.u.mul_vec(&dense);
        Ok(self
            .keep
            .iter()
            .zip(&self.orders)
            .map(|(&i, o)| if *o == Int::from(0) { uc[i].clone() } else { ibig::ops::RemEuclid::rem_euclid(&uc[i], o) })
            .collect())
    }

    /// Matrix (columns = images of our generators in `target` coordinates) of the map
    /// induced by the chain-level map `f`.
    pub fn induced(&self, target: &HomologyGroup, f: &SparseMatrix) -> Result<Vec<Vec<Int>>> {
        self.generators.iter().map(|g| target.coords(&f.apply(g))).collect()
    }

    /// Quotient of this group by the subgroup spanned by the given coordinate vectors.
    pub fn quotient(&self, relations: &[Vec<Int>]) -> Result<AbelianInvariants> {
        let n = self.orders.len();
        let mut cols: Vec<SparseVec> = Vec::new();
        for (i, o) in self.orders.iter().enumerate() {
            if *o != Int::from(0) {
                cols.push(vec![(i, o.clone())]);
            }
        }
        for r in relations {
            cols.push(sv_from_dense(r));
        }
        let m = IntMatrix::from_columns(n, &cols);
        let s = snf(&m, false);
        let mut orders: Vec<Int> = s.diag.clone();
        orders.resize(n, Int::from(0));
        AbelianInvariants::from_orders(orders[..n].iter())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::int;

    #[test]
    fn invariants_normal_form() {
        let a = AbelianInvariants::from_torsion(&[12], 0);
        assert_eq!(a.torsion, vec![4, 3]);
        assert_eq!(a.ppart(2).torsion, vec![4]);
        assert!(a.ppart(5).is_trivial());
        let b = AbelianInvariants::from_torsion(&[2, 14], 0);
        assert_eq!(b.torsion, vec![2, 2, 7]);
        assert_eq!(b.ppart(7).torsion, vec![7]);
        assert_eq!(a.to_string(), "Z_4 + Z_3");
    }

    #[test]
    fn circle() {
        let c = ChainComplex::from_boundaries(vec![1, 1], vec![SparseMatrix::zero(1, 1)]).unwrap();
        assert_eq!(c.homology(0).unwrap(), AbelianInvariants { torsion: vec![], free_rank: 1 });
        assert_eq!(c.homology(1).unwrap(), AbelianInvariants { torsion: vec![], free_rank: 1 });
    }

    #[test]
    fn projective_plane() {
        // RP^2: one cell per dimension, d_1 = 0, d_2 = 2
        let c = ChainComplex::from_boundaries(
            vec![1, 1, 1],
            vec![SparseMatrix::zero(1, 1), SparseMatrix::new(1, vec![vec![(0, int(2))]])],
        )
        .unwrap();
        assert_eq!(c.homology(1).unwrap().torsion, vec![2]);
        assert!(c.homology(2).unwrap().is_trivial());
        let h = HomologyGroup::new(1, &SparseMatrix::zero(1, 1), &SparseMatrix::new(1, vec![vec![(0, int(2))]])).unwrap();
        assert_eq!(h.orders, vec![int(2)]);
        assert_eq!(h.coords(&vec![(0, int(3))]).unwrap(), vec![int(1)]);
    }
}
