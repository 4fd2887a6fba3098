//! Free resolutions assembled from non-free equivariant complexes.
//!
//! A non-free complex has modules `C_p = ⊕ Z_χ ⊗_{S_x} ZG` over cell orbits `x`.
//! Each orbit's stabilizer resolution induces a column `D_{p,*}` resolving `C_p`;
//! the total complex `R_n = ⊕_{p+q=n} D_{p,q}` gets the perturbed differential
//! `d_0 + d_1 + d_2 + ...` built through the column homotopies.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use serde::Serialize;

use crate::equivariant::EquivariantCellComplex;
use crate::error::{Error, Result};
use crate::finite::FiniteGroup;
use crate::group::GenGroup;
use crate::homology::{ChainComplex, SparseMatrix};
use crate::matrix::{int, sv_add, sv_from_terms, sv_scale, Int, SparseVec};
use crate::orbit::act_flag;
use crate::zg::{act, bar_resolution, resolution_small, FreeResolution, Homotopy, ZGWord, SMALL_GROUP_CAP};

/// One summand `Z_χ ⊗_S ZG`: a cell orbit with stabilizer `S`.
#[derive(Clone, Debug)]
pub struct OrbitModule {
    pub stabilizer: Arc<FiniteGroup>,
    stab_in_g: Vec<usize>,
    coset_of: Vec<u32>,
    s_of: Vec<u32>,
    reps: Vec<usize>,
    chi: Vec<i32>,
}

impl OrbitModule {
    /// `key(g)` must separate the right cosets `S g`; `chi` is indexed by the elements of `S`.
    pub fn new<K: Hash + Eq>(
        group: &FiniteGroup,
        stabilizer: Arc<FiniteGroup>,
        key: impl Fn(usize) -> K,
        chi: Vec<i32>,
    ) -> Result<Self> {
        let stab_in_g = stabilizer
            .elements()
            .iter()
            .map(|p| group.index_of(p).ok_or_else(|| Error::invalid("stabilizer is not a subgroup")))
            .collect::<Result<Vec<_>>>()?;
        if chi.len() != stabilizer.order() {
            return Err(Error::invalid("character table has the wrong length"));
        }
        let mut seen: HashMap<K, u32> = HashMap::new();
        let mut reps = Vec::new();
        let mut coset_of = Vec::with_capacity(group.order());
        let mut s_of = Vec::with_capacity(group.order());
        for g in 0..group.order() {
            let c = *seen.entry(key(g)).or_insert_with(|| {
                reps.push(g);
                (reps.len() - 1) as u32
            });
            coset_of.push(c);
            let s = group.mul(g, group.inv(reps[c as usize]));
            let si = stabilizer
                .index_of(group.element(s))
                .ok_or_else(|| Error::invariant("coset key does not match the stabilizer"))?;
            s_of.push(si as u32);
        }
        if reps.len() * stabilizer.order() != group.order() {
            return Err(Error::invariant("coset count does not match the stabilizer order"));
        }
        Ok(OrbitModule { stabilizer, stab_in_g, coset_of, s_of, reps, chi })
    }

    pub fn cosets(&self) -> usize {
        self.reps.len()
    }

    pub fn character(&self, s: usize) -> i32 {
        self.chi[s]
    }

    pub fn orientation_preserving(&self) -> bool {
        self.chi.iter().all(|&c| c == 1)
    }

    /// `g = s t_c`; returns `(χ(s), c, s)`.
    fn decompose(&self, g: usize) -> (i32, usize, usize) {
        let s = self.s_of[g] as usize;
        (self.chi[s], self.coset_of[g] as usize, s)
    }
}

/// `coeff · (target orbit)·element`, with `element` a group index.
#[derive(Clone, Debug)]
pub struct NonFreeTerm {
    pub coeff: Int,
    pub element: usize,
    pub target: usize,
}

/// An exact complex `... -> C_1 -> C_0 -> Z` of permutation-like modules.
#[derive(Clone, Debug)]
pub struct NonFreeComplex {
    pub group: Arc<FiniteGroup>,
    pub modules: Vec<Vec<OrbitModule>>,
    /// `boundaries[p][x]`: boundary of orbit representative `x` of `C_p` (`p ≥ 1`).
    pub boundaries: Vec<Vec<Vec<NonFreeTerm>>>,
    /// Augmentation of each representative of `C_0`.
    pub augmentation: Vec<Int>,
}

fn stab_finite(g: &GenGroup) -> Result<Arc<FiniteGroup>> {
    Ok(Arc::new(FiniteGroup::new(g)?))
}

fn character_table(e: &EquivariantCellComplex, dim: usize, idx: usize, s: &FiniteGroup) -> Result<Vec<i32>> {
    s.elements().iter().map(|p| e.character(dim, idx, p)).collect()
}

impl NonFreeComplex {
    /// The cellular chain complex of a decomposed Wythoff complex, through its top
    /// computed dimension.
    pub fn from_cells(e: &EquivariantCellComplex, group: Arc<FiniteGroup>) -> Result<Self> {
        let mut modules = Vec::new();
        let mut boundaries = Vec::new();
        for (p, layer) in e.cells.iter().enumerate() {
            let mut ms = Vec::new();
            let mut bs = Vec::new();
            for (i, c) in layer.iter().enumerate() {
                let s = stab_finite(&c.stabilizer)?;
                let chi = character_table(e, p, i, &s)?;
                let flag = c.flag.clone();
                ms.push(OrbitModule::new(&group, s, |g| act_flag(&flag, group.element(g)), chi)?);
                let terms = c
                    .boundary
                    .iter()
                    .map(|t| {
                        let element = group.index_of(&t.element).ok_or_else(|| Error::invariant("element not in group"))?;
                        Ok(NonFreeTerm { coeff: int(t.coeff as i64), element, target: t.target })
                    })
                    .collect::<Result<Vec<_>>>()?;
                bs.push(terms);
            }
            modules.push(ms);
            boundaries.push(bs);
        }
        boundaries[0].clear();
        let augmentation = vec![int(1); modules[0].len()];
        let c = NonFreeComplex { group, modules, boundaries, augmentation };
        c.check()?;
        Ok(c)
    }

    /// A free `Z[G/N]`-resolution, read as a complex of `ZG`-modules with stabilizers `N`.
    pub fn from_quotient_resolution(
        group: Arc<FiniteGroup>,
        normal: Arc<FiniteGroup>,
        quotient: &FreeResolution,
        map: &[usize],
    ) -> Result<Self> {
        let q = quotient.group().order();
        let mut reps = vec![usize::MAX; q];
        for (g, &c) in map.iter().enumerate() {
            if reps[c] == usize::MAX {
                reps[c] = g;
            }
        }
        let module = OrbitModule::new(&group, normal.clone(), |g| map[g], vec![1; normal.order()])?;
        let mut modules = Vec::new();
        let mut boundaries = vec![Vec::new()];
        for k in 0..=quotient.len() {
            modules.push(vec![module.clone(); quotient.rank(k)]);
            if k > 0 {
                let bs = (0..quotient.rank(k))
                    .map(|i| {
                        quotient
                            .boundary(k, i)
                            .iter()
                            .map(|(y, c)| NonFreeTerm { coeff: c.clone(), element: reps[y % q], target: y / q })
                            .collect()
                    })
                    .collect();
                boundaries.push(bs);
            }
        }
        let augmentation = (0..quotient.rank(0)).map(|i| quotient.augment(&vec![(i * q, int(1))])).collect();
        let c = NonFreeComplex { group, modules, boundaries, augmentation };
        c.check()?;
        Ok(c)
    }

    /// Splices copies of a solid polytope complex (top cell included, a single
    /// orientation-preserved orbit) into a periodic complex of length `len`.
    pub fn splice(solid: &NonFreeComplex, len: usize) -> Result<Self> {
        let m = solid.len();
        let top = &solid.modules[m];
        if m == 0 || top.len() != 1 || top[0].cosets() != 1 || !top[0].orientation_preserving() {
            return Err(Error::invalid("splicing needs a single invariant, orientation-preserved top cell"));
        }
        let ch = solid.materialize()?;
        for k in 1..m {
            if !ch.homology(k)?.is_trivial() {
                return Err(Error::invalid(format!("solid complex is not acyclic in degree {k}")));
            }
        }
        let mut modules = Vec::new();
        let mut boundaries = vec![Vec::new()];
        for j in 0..=len {
            modules.push(solid.modules[j % m].clone());
            if j > 0 {
                if j % m == 0 {
                    let b = &solid.boundaries[m][0];
                    let scaled: Vec<Vec<NonFreeTerm>> = solid
                        .augmentation
                        .iter()
                        .map(|a| {
                            b.iter()
                                .map(|t| NonFreeTerm { coeff: &t.coeff * a, element: t.element, target: t.target })
                                .collect()
                        })
                        .collect();
                    boundaries.push(scaled);
                } else {
                    boundaries.push(solid.boundaries[j % m].clone());
                }
            }
        }
        let c = NonFreeComplex { group: solid.group.clone(), modules, boundaries, augmentation: solid.augmentation.clone() };
        c.check()?;
        Ok(c)
    }

    /// Top degree.
    pub fn len(&self) -> usize {
        self.modules.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    fn offsets(&self, p: usize) -> Vec<usize> {
        let mut o = Vec::with_capacity(self.modules[p].len() + 1);
        let mut n = 0;
        o.push(0);
        for m in &self.modules[p] {
            n += m.cosets();
            o.push(n);
        }
        o
    }

    /// Z-rank of `C_p`.
    pub fn z_rank(&self, p: usize) -> usize {
        *self.offsets(p).last().unwrap()
    }

    /// `∂` on a Z-vector of `C_p` in the coset basis.
    fn boundary_vec(&self, p: usize, v: &SparseVec, offs: &[usize], offs_down: &[usize]) -> SparseVec {
        let g = &self.group;
        let mut terms = Vec::new();
        for (idx, coef) in v {
            let x = offs.partition_point(|&o| o <= *idx) - 1;
            let t = self.modules[p][x].reps[idx - offs[x]];
            for term in &self.boundaries[p][x] {
                let y = &self.modules[p - 1][term.target];
                let (sign, c, _) = y.decompose(g.mul(term.element, t));
                terms.push((offs_down[term.target] + c, coef * &term.coeff * int(sign as i64)));
            }
        }
        sv_from_terms(terms)
    }

    /// The complex over Z, with `C_0 -> Z` appended below as degree 0 shifted up:
    /// degrees are `C_0, ..., C_len`.
    pub fn materialize(&self) -> Result<ChainComplex> {
        let dims: Vec<usize> = (0..=self.len()).map(|p| self.z_rank(p)).collect();
        let mut ds = Vec::new();
        for p in 1..=self.len() {
            let (offs, down) = (self.offsets(p), self.offsets(p - 1));
            let cols = (0..dims[p]).map(|i| self.boundary_vec(p, &vec![(i, int(1))], &offs, &down)).collect();
            ds.push(SparseMatrix::new(dims[p - 1], cols));
        }
        ChainComplex::from_boundaries(dims, ds)
    }

    /// Equivariance of each boundary under its stabilizer, and `∂∂ = 0`, `ε∂ = 0`.
    pub fn check(&self) -> Result<()> {
        let g = &self.group;
        for p in 1..=self.len() {
            let (offs, down) = (self.offsets(p), self.offsets(p - 1));
            for (x, m) in self.modules[p].iter().enumerate() {
                let base = self.boundary_vec(p, &vec![(offs[x], int(1))], &offs, &down);
                for &sg in m.stabilizer.generator_indices() {
                    let s = m.stab_in_g[sg];
                    let mut terms = Vec::new();
                    for term in &self.boundaries[p][x] {
                        let y = &self.modules[p - 1][term.target];
                        let (sign, c, _) = y.decompose(g.mul(term.element, s));
                        terms.push((down[term.target] + c, &term.coeff * int(sign as i64)));
                    }
                    let moved = sv_scale(&sv_from_terms(terms), &int(m.chi[sg] as i64));
                    if moved != base {
                        return Err(Error::invariant(format!("boundary in degree {p} is not equivariant")));
                    }
                }
                if p == 1 {
                    let mut s = int(0);
                    for (idx, c) in &base {
                        let y = down.partition_point(|&o| o <= *idx) - 1;
                        s += c * &self.augmentation[y];
                    }
                    if s != int(0) {
                        return Err(Error::invariant("augmentation of a boundary is nonzero"));
                    }
                } else if !self.boundary_vec(p - 1, &base, &down, &self.offsets(p - 2)).is_empty() {
                    return Err(Error::invariant(format!("boundary squares to nonzero in degree {p}")));
                }
            }
        }
        Ok(())
    }

    /// Checks `H_0 = Z` via the augmentation and `H_p = 0` for `0 < p ≤ n`.
    pub fn check_exact(&self, n: usize) -> Result<()> {
        let ch = self.materialize()?;
        let h0 = ch.homology(0)?;
        if h0.free_rank != 1 || !h0.torsion.is_empty() {
            return Err(Error::invariant(format!("H_0 of the complex is {h0}, not Z")));
        }
        for p in 1..=n.min(self.len().saturating_sub(1)) {
            let h = ch.homology(p)?;
            if !h.is_trivial() {
                return Err(Error::invariant(format!("complex is not exact in degree {p}: {h}")));
            }
        }
        Ok(())
    }
}

/// Block sizes and the assembled resolution.
#[derive(Clone, Debug)]
pub struct AssembledResolution {
    pub resolution: FreeResolution,
    /// `block_ranks[p][q]` is the ZG-rank of `D_{p,q}`.
    pub block_ranks: Vec<Vec<usize>>,
    /// Largest `k` with a nonzero component `d_k`.
    pub correction_depth: usize,
}

#[derive(Serialize)]
pub struct AssemblySummary {
    pub ranks: Vec<usize>,
    pub block_ranks: Vec<Vec<usize>>,
    pub correction_depth: usize,
}

impl AssembledResolution {
    pub fn summary(&self) -> AssemblySummary {
        AssemblySummary {
            ranks: self.resolution.ranks().to_vec(),
            block_ranks: self.block_ranks.clone(),
            correction_depth: self.correction_depth,
        }
    }
}

/// Default stabilizer resolutions: kernel-based for small groups, bar otherwise.
pub fn default_resolver(s: Arc<FiniteGroup>, n: usize) -> Result<FreeResolution> {
    if s.order() <= SMALL_GROUP_CAP {
        resolution_small(s, n)
    } else {
        bar_resolution(s, n)
    }
}

struct Grid<'a> {
    c: &'a NonFreeComplex,
    res: Vec<Vec<Arc<FreeResolution>>>,
    /// `gen_off[p][q][x]`: first local generator of orbit `x` in block `(p, q)`.
    gen_off: Vec<Vec<Vec<usize>>>,
    c_off: Vec<Vec<usize>>,
}

impl<'a> Grid<'a> {
    fn order(&self) -> usize {
        self.c.group.order()
    }

    fn locate(&self, p: usize, q: usize, local: usize) -> (usize, usize) {
        let off = &self.gen_off[p][q];
        let x = off.partition_point(|&o| o <= local) - 1;
        (x, local - off[x])
    }

    fn block_rank(&self, p: usize, q: usize) -> usize {
        *self.gen_off[p][q].last().unwrap()
    }

    /// Splits a block vector into per-(orbit, coset) vectors of the stabilizer resolution.
    fn to_f(&self, p: usize, q: usize, v: &ZGWord) -> HashMap<(usize, usize), Vec<(usize, Int)>> {
        let n = self.order();
        let mut out: HashMap<(usize, usize), Vec<(usize, Int)>> = HashMap::new();
        for (idx, coef) in v {
            let (x, i) = self.locate(p, q, idx / n);
            let m = &self.c.modules[p][x];
            let (sign, c, s) = m.decompose(idx % n);
            out.entry((x, c)).or_default().push((i * m.stabilizer.order() + s, coef * int(sign as i64)));
        }
        out
    }

    fn from_f(&self, p: usize, q: usize, x: usize, c: usize, f: &SparseVec, out: &mut Vec<(usize, Int)>) {
        let n = self.order();
        let m = &self.c.modules[p][x];
        let so = m.stabilizer.order();
        for (fi, coef) in f {
            let (i, s) = (fi / so, fi % so);
            let g = self.c.group.mul(m.stab_in_g[s], m.reps[c]);
            out.push(((self.gen_off[p][q][x] + i) * n + g, coef * int(m.chi[s] as i64)));
        }
    }

    fn d0(&self, p: usize, q: usize, v: &ZGWord) -> ZGWord {
        let mut out = Vec::new();
        for ((x, c), f) in self.to_f(p, q, v) {
            let img = self.res[p][x].d(q, &sv_from_terms(f));
            self.from_f(p, q - 1, x, c, &img, &mut out);
        }
        sv_from_terms(out)
    }

    fn h(&self, p: usize, q: usize, v: &ZGWord) -> Result<ZGWord> {
        let mut out = Vec::new();
        for ((x, c), f) in self.to_f(p, q, v) {
            let img = self.res[p][x].h(q, &sv_from_terms(f))?;
            self.from_f(p, q + 1, x, c, &img, &mut out);
        }
        Ok(sv_from_terms(out))
    }

    /// `ε: D_{p,0} -> C_p`, coset basis.
    fn eps(&self, p: usize, v: &ZGWord) -> SparseVec {
        let mut out = Vec::new();
        for ((x, c), f) in self.to_f(p, 0, v) {
            let a = self.res[p][x].augment(&sv_from_terms(f));
            out.push((self.c_off[p][x] + c, a));
        }
        sv_from_terms(out)
    }

    /// Section `C_p -> D_{p,0}`.
    fn h_minus(&self, p: usize, v: &SparseVec) -> ZGWord {
        let mut out = Vec::new();
        let off = &self.c_off[p];
        for (idx, coef) in v {
            let x = off.partition_point(|&o| o <= *idx) - 1;
            let f = self.res[p][x].iota(coef);
            self.from_f(p, 0, x, idx - off[x], &f, &mut out);
        }
        sv_from_terms(out)
    }
}

/// `comp[p][q][k][j]`: component `d_k` of generator `j` of `D_{p,q}`, in `D_{p-k,q+k-1}`.
type Components = Vec<Vec<Vec<Vec<ZGWord>>>>;

fn apply_comp(group: &FiniteGroup, comp: &Components, p: usize, q: usize, k: usize, v: &ZGWord) -> ZGWord {
    let n = group.order();
    let mut terms = Vec::new();
    for (idx, c) in v {
        let img = act(group, &comp[p][q][k][idx / n], idx % n);
        terms.extend(img.into_iter().map(|(y, a)| (y, a * c)));
    }
    sv_from_terms(terms)
}

/// Wall's construction through total degree `n + 1`, enough for `H_k` with `k ≤ n`.
pub fn wall_assemble(
    c: &NonFreeComplex,
    n: usize,
    resolve: &dyn Fn(Arc<FiniteGroup>, usize) -> Result<FreeResolution>,
) -> Result<AssembledResolution> {
    let top = n + 1;
    let pmax = c.len().min(top);
    let mut cache: HashMap<Vec<usize>, Arc<FreeResolution>> = HashMap::new();
    let mut res = Vec::new();
    for p in 0..=pmax {
        let mut row = Vec::new();
        for m in &c.modules[p] {
            let key = m.stab_in_g.clone();
            let r = if let Some(r) = cache.get(&key) {
                r.clone()
            } else {
                let r = Arc::new(resolve(m.stabilizer.clone(), top - p + 1)?);
                cache.insert(key, r.clone());
                r
            };
            if r.len() < top - p {
                return Err(Error::invalid("stabilizer resolution is too short"));
            }
            row.push(r);
        }
        res.push(row);
    }
    let mut gen_off = vec![vec![vec![0usize]; top + 1]; pmax + 1];
    for p in 0..=pmax {
        for q in 0..=top - p {
            let mut n = 0;
            let mut off = vec![0];
            for r in &res[p] {
                n += r.rank(q);
                off.push(n);
            }
            gen_off[p][q] = off;
        }
    }
    let c_off = (0..=pmax).map(|p| c.offsets(p)).collect();
    let grid = Grid { c, res, gen_off, c_off };
    let g = c.group.as_ref();
    let one = int(1);
    let mut comp: Components = (0..=pmax).map(|p| vec![Vec::new(); top + 1 - p]).collect();
    let mut depth = 0;
    for total in 0..=top {
        for p in 0..=pmax.min(total) {
            let q = total - p;
            let rank = grid.block_rank(p, q);
            let mut ks: Vec<Vec<ZGWord>> = vec![Vec::with_capacity(rank); p + 1];
            for j in 0..rank {
                let e: ZGWord = vec![(j * g.order(), one.clone())];
                let d0e = if q > 0 { grid.d0(p, q, &e) } else { Vec::new() };
                ks[0].push(d0e.clone());
                for k in 1..=p {
                    let img = if k == 1 && q == 0 {
                        let offs = &grid.c_off;
                        let y = c.boundary_vec(p, &grid.eps(p, &e), &offs[p], &offs[p - 1]);
                        grid.h_minus(p - 1, &y)
                    } else {
                        let mut y: ZGWord = Vec::new();
                        for i in 1..k {
                            let inner = &ks[k - i][j];
                            y = sv_add(&y, &apply_comp(g, &comp, p - k + i, q + k - i - 1, i, inner));
                        }
                        if q > 0 {
                            y = sv_add(&y, &apply_comp(g, &comp, p, q - 1, k, &d0e));
                        }
                        sv_scale(&grid.h(p - k, q + k - 2, &y)?, &int(-1))
                    };
                    if !img.is_empty() {
                        depth = depth.max(k);
                    }
                    ks[k].push(img);
                }
            }
            comp[p][q] = ks;
        }
    }
    // flatten into a free resolution
    let n_g = g.order();
    let mut block_start: Vec<Vec<usize>> = Vec::new();
    let mut ranks = Vec::new();
    for total in 0..=top {
        let mut starts = Vec::new();
        let mut r = 0;
        for p in 0..=pmax.min(total) {
            starts.push(r);
            r += grid.block_rank(p, total - p);
        }
        block_start.push(starts);
        ranks.push(r);
    }
    let mut boundaries: Vec<Vec<ZGWord>> = vec![Vec::new()];
    for total in 1..=top {
        let mut gens = Vec::with_capacity(ranks[total]);
        for p in 0..=pmax.min(total) {
            let q = total - p;
            for j in 0..grid.block_rank(p, q) {
                let mut terms = Vec::new();
                for k in 0..=p {
                    if k == 0 && q == 0 {
                        continue;
                    }
                    let start = block_start[total - 1][p - k];
                    for (idx, a) in &comp[p][q][k][j] {
                        terms.push(((start + idx / n_g) * n_g + idx % n_g, a.clone()));
                    }
                }
                gens.push(sv_from_terms(terms));
            }
        }
        boundaries.push(gens);
    }
    let mut augmentation = Vec::new();
    for (x, r) in grid.res[0].iter().enumerate() {
        for i in 0..r.rank(0) {
            augmentation.push(&c.augmentation[x] * r.augment(&vec![(i * r.group().order(), one.clone())]));
        }
    }
    let block_ranks = (0..=pmax).map(|p| (0..=top - p).map(|q| grid.block_rank(p, q)).collect()).collect();
    let resolution = FreeResolution::from_parts(c.group.clone(), ranks, boundaries, augmentation, Homotopy::None)?;
    resolution.check_boundaries()?;
    Ok(AssembledResolution { resolution, block_ranks, correction_depth: depth })
}

/// The quotient `G/N` acting on the right cosets of `N`, and the quotient map on indices.
pub fn quotient_group(group: &FiniteGroup, normal: &FiniteGroup) -> Result<(GenGroup, Vec<usize>)> {
    let n_idx: Vec<usize> = normal
        .elements()
        .iter()
        .map(|p| group.index_of(p).ok_or_else(|| Error::invalid("N is not a subgroup of G")))
        .collect::<Result<_>>()?;
    for &gi in group.generator_indices() {
        let ginv = group.inv(gi);
        for &ni in &n_idx {
            let c = group.mul(group.mul(ginv, ni), gi);
            if normal.index_of(group.element(c)).is_none() {
                return Err(Error::invalid("N is not normal in G"));
            }
        }
    }
    let mut coset = vec![usize::MAX; group.order()];
    let mut count = 0;
    for g in 0..group.order() {
        if coset[g] != usize::MAX {
            continue;
        }
        for &ni in &n_idx {
            coset[group.mul(ni, g)] = count;
        }
        count += 1;
    }
    let mut reps = vec![0usize; count];
    for g in (0..group.order()).rev() {
        reps[coset[g]] = g;
    }
    let gens = group
        .generator_indices()
        .iter()
        .map(|&gi| {
            let images = (0..count).map(|c| coset[group.mul(reps[c], gi)] as u32).collect();
            crate::perm::Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    let q = GenGroup::new(count, gens)?;
    let qf = FiniteGroup::new(&q)?;
    let mut images = Vec::with_capacity(count);
    for c in 0..count {
        let perm = (0..count).map(|d| coset[group.mul(reps[d], reps[c])] as u32).collect();
        let perm = crate::perm::Permutation::from_images(perm)?;
        images.push(qf.index_of(&perm).ok_or_else(|| Error::invariant("coset action left the quotient"))?);
    }
    Ok((q, coset.iter().map(|&c| images[c]).collect()))
}

/// `R^N ⊗~ R^{G/N}`: Wall's construction over a free `G/N`-resolution.
pub fn twisted_tensor(
    group: Arc<FiniteGroup>,
    normal: &GenGroup,
    n: usize,
    resolve: &dyn Fn(Arc<FiniteGroup>, usize) -> Result<FreeResolution>,
) -> Result<AssembledResolution> {
    let nf = Arc::new(FiniteGroup::new(normal)?);
    let (q, map) = quotient_group(&group, &nf)?;
    let qf = Arc::new(FiniteGroup::new(&q)?);
    let rq = resolve(qf, n + 2)?;
    let c = NonFreeComplex::from_quotient_resolution(group, nf, &rq, &map)?;
    wall_assemble(&c, n, resolve)
}

/// The right regular representation of `group` on its own elements.
pub fn regular_representation(group: &FiniteGroup) -> Result<GenGroup> {
    let gens = group
        .generator_indices()
        .iter()
        .map(|&g| crate::perm::Permutation::from_images((0..group.order()).map(|h| group.mul(h, g) as u32).collect()))
        .collect::<Result<Vec<_>>>()?;
    GenGroup::new(group.order(), gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic_group;

    #[test]
    fn trivial_group_reproduces_the_complex() {
        let z = cyclic_group(1);
        let g = Arc::new(FiniteGroup::new(&GenGroup::trivial(1)).unwrap());
        let _ = z;
        let rq = resolution_small(g.clone(), 3).unwrap();
        let c = NonFreeComplex::from_quotient_resolution(g.clone(), g.clone(), &rq, &[0]).unwrap();
        let a = wall_assemble(&c, 2, &default_resolver).unwrap();
        assert_eq!(a.correction_depth, 0);
    }
}
