//! Free right ZG-resolutions of the trivial module.
//!
//! A free module of rank `r` has Z-basis `(i, g)` for generators `i < r` and
//! elements `g` of the group, stored at index `i * |G| + g`. The right action
//! sends `(i, g)` to `(i, g h)`.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::finite::{FiniteGroup, Hom};
use crate::homology::{AbelianInvariants, ChainComplex, HomologyGroup, SparseMatrix};
use crate::matrix::{sv_add, sv_from_terms, sv_lin, sv_scale, Echelon, Int, SparseVec};

/// Order cap for [`resolution_small`].
pub const SMALL_GROUP_CAP: usize = 128;

/// Cap on the total Z-rank of a bar resolution.
pub const BAR_CAP: usize = 400_000;

/// An element of a free ZG-module: merged `(basis index, coefficient)` terms.
pub type ZGWord = SparseVec;

#[derive(Clone, Debug)]
pub enum Homotopy {
    None,
    /// The standard contraction of the normalized bar resolution.
    Bar,
    /// `table[k][x]` is `h_k` of Z-basis element `x` of `R_k`.
    Table(Vec<Vec<ZGWord>>),
}

#[derive(Clone, Debug)]
pub struct FreeResolution {
    group: Arc<FiniteGroup>,
    ranks: Vec<usize>,
    boundaries: Vec<Vec<ZGWord>>,
    augmentation: Vec<Int>,
    homotopy: Homotopy,
}

/// Right action of element `h` on a word of a free module over `group`.
pub fn act(group: &FiniteGroup, v: &ZGWord, h: usize) -> ZGWord {
    if h == 0 {
        return v.clone();
    }
    let n = group.order();
    sv_from_terms(v.iter().map(|(x, c)| ((x / n) * n + group.mul(x % n, h), c.clone())).collect())
}

impl FreeResolution {
    /// Assembles a resolution from raw parts; `boundaries[k]` lists `d_k` of the generators of
    /// `R_k` (`boundaries[0]` is empty).
    pub fn from_parts(
        group: Arc<FiniteGroup>,
        ranks: Vec<usize>,
        boundaries: Vec<Vec<ZGWord>>,
        augmentation: Vec<Int>,
        homotopy: Homotopy,
    ) -> Result<Self> {
        if boundaries.len() != ranks.len() || augmentation.len() != ranks[0] {
            return Err(Error::invalid("resolution parts have inconsistent lengths"));
        }
        for k in 1..ranks.len() {
            if boundaries[k].len() != ranks[k] {
                return Err(Error::invalid(format!("degree {k}: rank and boundary count differ")));
            }
        }
        Ok(FreeResolution { group, ranks, boundaries, augmentation, homotopy })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Top degree `n` of `R_0 <- ... <- R_n`.
    pub fn len(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, k: usize) -> usize {
        self.ranks[k]
    }

    pub fn boundary(&self, k: usize, i: usize) -> &ZGWord {
        &self.boundaries[k][i]
    }

    pub fn homotopy_kind(&self) -> &Homotopy {
        &self.homotopy
    }

    /// Highest `k` with `h_k` available (`None` if there is no homotopy).
    pub fn homotopy_depth(&self) -> Option<usize> {
        match &self.homotopy {
            Homotopy::None => None,
            Homotopy::Bar => self.len().checked_sub(1),
            Homotopy::Table(t) => t.len().checked_sub(1),
        }
    }

    /// `d_k` of an arbitrary word of `R_k`.
    pub fn d(&self, k: usize, v: &ZGWord) -> ZGWord {
        let n = self.group.order();
        let mut terms = Vec::new();
        for (x, c) in v {
            let img = act(&self.group, &self.boundaries[k][x / n], x % n);
            terms.extend(img.into_iter().map(|(y, a)| (y, a * c)));
        }
        sv_from_terms(terms)
    }

    pub fn augment(&self, v: &ZGWord) -> Int {
        let n = self.group.order();
        let mut s = Int::from(0);
        for (x, c) in v {
            s += c * &self.augmentation[x / n];
        }
        s
    }

    /// `h_k` on a single Z-basis element of `R_k`.
    pub fn h_basis(&self, k: usize, x: usize) -> Result<ZGWord> {
        match &self.homotopy {
            Homotopy::None => Err(Error::invalid("resolution carries no contracting homotopy")),
            Homotopy::Table(t) => t
                .get(k)
                .map(|row| row[x].clone())
                .ok_or_else(|| Error::invalid(format!("homotopy not available in degree {k}"))),
            Homotopy::Bar => {
                if k >= self.len() {
                    return Err(Error::invalid(format!("homotopy not available in degree {k}")));
                }
                let n = self.group.order();
                let (t, g) = (x / n, x % n);
                if g == 0 {
                    return Ok(Vec::new());
                }
                let sign = if k % 2 == 0 { -1 } else { 1 };
                Ok(vec![((t * (n - 1) + (g - 1)) * n, Int::from(sign))])
            }
        }
    }

    pub fn h(&self, k: usize, v: &ZGWord) -> Result<ZGWord> {
        let mut terms = Vec::new();
        for (x, c) in v {
            terms.extend(self.h_basis(k, *x)?.into_iter().map(|(y, a)| (y, a * c)));
        }
        Ok(sv_from_terms(terms))
    }

    /// The section `Z -> R_0` sending 1 to the identity translate of generator 0.
    pub fn iota(&self, c: &Int) -> ZGWord {
        sv_scale(&vec![(0, Int::from(1))], c)
    }

    /// `d_k` after tensoring with the trivial module.
    pub fn tensor_boundary(&self, k: usize) -> SparseMatrix {
        let n = self.group.order();
        let cols = self.boundaries[k]
            .iter()
            .map(|w| sv_from_terms(w.iter().map(|(x, c)| (x / n, c.clone())).collect()))
            .collect();
        SparseMatrix::new(self.ranks[k - 1], cols)
    }

    /// `R ⊗_{ZG} Z` through degree `top`.
    pub fn tensor_complex(&self, top: usize) -> Result<ChainComplex> {
        let top = top.min(self.len());
        ChainComplex::from_boundaries(self.ranks[..=top].to_vec(), (1..=top).map(|k| self.tensor_boundary(k)).collect())
    }

    /// `H_k(G; Z)` for `k < len()`.
    pub fn homology(&self, k: usize) -> Result<AbelianInvariants> {
        if k >= self.len() {
            return Err(Error::invalid(format!("homology in degree {k} needs a resolution of length {}", k + 1)));
        }
        self.tensor_complex(k + 1)?.homology(k)
    }

    /// `H_k` with coordinates, for induced maps.
    pub fn homology_group(&self, k: usize) -> Result<HomologyGroup> {
        if k >= self.len() {
            return Err(Error::invalid(format!("homology in degree {k} needs a resolution of length {}", k + 1)));
        }
        let out = if k == 0 { SparseMatrix::zero(0, self.ranks[0]) } else { self.tensor_boundary(k) };
        HomologyGroup::new(self.ranks[k], &out, &self.tensor_boundary(k + 1))
    }

    /// Checks `d d = 0` on every generator and `ε d_1 = 0`.
    pub fn check_boundaries(&self) -> Result<()> {
        for (i, w) in self.boundaries.get(1).into_iter().flatten().enumerate() {
            if self.augment(w) != Int::from(0) {
                return Err(Error::invariant(format!("augmentation of d_1(e_{i}) is nonzero")));
            }
        }
        for k in 2..=self.len() {
            for (i, w) in self.boundaries[k].iter().enumerate() {
                if !self.d(k - 1, w).is_empty() {
                    return Err(Error::invariant(format!("d_{} d_{k}(e_{i}) is nonzero", k - 1)));
                }
            }
        }
        Ok(())
    }

    /// Checks `d h + h d = 1` (and `d_1 h_0 = 1 - ι ε`) on Z-basis elements of `R_k`
    /// for all `k` with `h_k` available; `stride > 1` samples every `stride`-th element.
    pub fn check_homotopy(&self, stride: usize) -> Result<()> {
        let Some(depth) = self.homotopy_depth() else {
            return Err(Error::invalid("resolution carries no contracting homotopy"));
        };
        let n = self.group.order();
        for k in 0..=depth {
            for x in (0..self.ranks[k] * n).step_by(stride.max(1)) {
                let e: ZGWord = vec![(x, Int::from(1))];
                let mut lhs = self.d(k + 1, &self.h_basis(k, x)?);
                if k == 0 {
                    lhs = sv_add(&lhs, &self.iota(&self.augment(&e)));
                } else {
                    lhs = sv_add(&lhs, &self.h(k - 1, &self.d(k, &e))?);
                }
                if lhs != e {
                    return Err(Error::invariant(format!("contracting homotopy fails at degree {k}, basis element {x}")));
                }
            }
        }
        Ok(())
    }

    /// Attaches a contracting homotopy solved from exactness, through degree `len() - 1`.
    pub fn with_solved_homotopy(mut self) -> Result<Self> {
        let ord = self.group.order();
        let one = Int::from(1);
        let mut table: Vec<Vec<ZGWord>> = Vec::new();
        for k in 0..self.len() {
            let mut next = Echelon::new(true);
            for w in self.flat_boundary(k + 1) {
                next.push(w);
            }
            let mut hk = Vec::with_capacity(self.ranks[k] * ord);
            for x in 0..self.ranks[k] * ord {
                let e: ZGWord = vec![(x, one.clone())];
                let correction = if k == 0 {
                    self.iota(&self.augment(&e))
                } else {
                    let mut terms = Vec::new();
                    for (y, c) in &self.d(k, &e) {
                        terms.extend(table[k - 1][*y].iter().map(|(z, a)| (*z, a * c)));
                    }
                    sv_from_terms(terms)
                };
                let target = sv_lin(&one, &e, &-one.clone(), &correction);
                let y = next
                    .solve(&target)
                    .ok_or_else(|| Error::invariant(format!("resolution not exact at degree {k}")))?;
                hk.push(y);
            }
            table.push(hk);
        }
        self.homotopy = Homotopy::Table(table);
        Ok(self)
    }

    /// Z-basis images `d_k(i, g)` in index order.
    pub fn flat_boundary(&self, k: usize) -> Vec<ZGWord> {
        let n = self.group.order();
        let mut cols = Vec::with_capacity(self.ranks[k] * n);
        for w in &self.boundaries[k] {
            for g in 0..n {
                cols.push(act(&self.group, w, g));
            }
        }
        cols
    }
}

/// Normalized bar resolution through degree `n` with its standard contraction.
pub fn bar_resolution(group: Arc<FiniteGroup>, n: usize) -> Result<FreeResolution> {
    let ord = group.order();
    let m = ord - 1;
    let mut ranks = vec![1usize];
    let mut total = 1usize;
    for k in 1..=n {
        let r = m.checked_pow(k as u32).ok_or_else(|| Error::cap("bar resolution rank", BAR_CAP))?;
        total += r;
        if total > BAR_CAP {
            return Err(Error::cap("bar resolution rank", BAR_CAP));
        }
        ranks.push(r);
    }
    let mut boundaries = vec![Vec::new()];
    let one = Int::from(1);
    for k in 1..=n {
        let mut ds = Vec::with_capacity(ranks[k]);
        for t in 0..ranks[k] {
            let mut digits = vec![0usize; k];
            let mut x = t;
            for i in (0..k).rev() {
                digits[i] = x % m + 1;
                x /= m;
            }
            let encode = |d: &[usize]| d.iter().fold(0usize, |acc, a| acc * m + (a - 1));
            let mut terms = Vec::with_capacity(k + 1);
            terms.push((encode(&digits[1..]) * ord, one.clone()));
            for i in 0..k - 1 {
                let prod = group.mul(digits[i], digits[i + 1]);
                if prod != 0 {
                    let mut d = digits[..i].to_vec();
                    d.push(prod);
                    d.extend_from_slice(&digits[i + 2..]);
                    let sign = if (i + 1) % 2 == 0 { 1 } else { -1 };
                    terms.push((encode(&d) * ord, Int::from(sign)));
                }
            }
            let sign = if k % 2 == 0 { 1 } else { -1 };
            terms.push((encode(&digits[..k - 1]) * ord + digits[k - 1], Int::from(sign)));
            ds.push(sv_from_terms(terms));
        }
        boundaries.push(ds);
    }
    FreeResolution::from_parts(group, ranks, boundaries, vec![one], Homotopy::Bar)
}

/// A free resolution through degree `n` built from integer kernels: generators in each
/// degree are kernel vectors of smallest support not yet in the ZG-span.
pub fn resolution_small(group: Arc<FiniteGroup>, n: usize) -> Result<FreeResolution> {
    let ord = group.order();
    if ord > SMALL_GROUP_CAP {
        return Err(Error::cap(format!("small-group resolution of order {ord}"), SMALL_GROUP_CAP));
    }
    let one = Int::from(1);
    let mut ranks = vec![1usize];
    let mut boundaries: Vec<Vec<ZGWord>> = vec![Vec::new()];
    let mut table: Vec<Vec<ZGWord>> = Vec::new();
    let mut prev = Echelon::new(true);
    for _ in 0..ord {
        prev.push(vec![(0, one.clone())]);
    }
    for k in 0..n {
        let mut candidates: Vec<ZGWord> = prev.kernel().to_vec();
        candidates.sort_by_key(|v| v.len());
        let mut span = Echelon::new(false);
        let mut gens = Vec::new();
        for v in candidates {
            if span.contains(&v) {
                continue;
            }
            for g in 0..ord {
                span.push(act(&group, &v, g));
            }
            gens.push(v);
        }
        ranks.push(gens.len());
        let mut next = Echelon::new(true);
        for w in &gens {
            for g in 0..ord {
                next.push(act(&group, w, g));
            }
        }
        let mut hk = Vec::with_capacity(ranks[k] * ord);
        for x in 0..ranks[k] * ord {
            let e: ZGWord = vec![(x, one.clone())];
            let correction = if k == 0 {
                vec![(0, one.clone())]
            } else {
                let (i, g) = (x / ord, x % ord);
                let dx = act(&group, &boundaries[k][i], g);
                let mut terms = Vec::new();
                for (y, c) in &dx {
                    terms.extend(table[k - 1][*y].iter().map(|(z, a)| (*z, a * c)));
                }
                sv_from_terms(terms)
            };
            let target = sv_lin(&one, &e, &-one.clone(), &correction);
            let y = next
                .solve(&target)
                .ok_or_else(|| Error::invariant(format!("resolution not exact at degree {k}")))?;
            hk.push(y);
        }
        table.push(hk);
        boundaries.push(gens);
        prev = next;
    }
    FreeResolution::from_parts(group, ranks, boundaries, vec![one], Homotopy::Table(table))
}

/// An equivariant chain map between resolutions over a homomorphism.
#[derive(Clone, Debug)]
pub struct ChainMap {
    pub hom: Hom,
    /// `images[k][i]` is the image of generator `i` of `R_k`.
    pub images: Vec<Vec<ZGWord>>,
}

impl ChainMap {
    /// Image of an arbitrary word of the source `R_k`.
    pub fn apply(&self, target: &FreeResolution, source_order: usize, k: usize, v: &ZGWord) -> ZGWord {
        let mut terms = Vec::new();
        for (x, c) in v {
            let img = act(target.group(), &self.images[k][x / source_order], self.hom.apply(x % source_order));
            terms.extend(img.into_iter().map(|(y, a)| (y, a * c)));
        }
        sv_from_terms(terms)
    }

    /// The map after tensoring with Z, in degree `k`.
    pub fn tensor_matrix(&self, target: &FreeResolution, k: usize) -> SparseMatrix {
        let n = target.group().order();
        let cols = self.images[k]
            .iter()
            .map(|w| sv_from_terms(w.iter().map(|(x, c)| (x / n, c.clone())).collect()))
            .collect();
        SparseMatrix::new(target.rank(k), cols)
    }
}

/// Lifts `hom` to a chain map `source -> target` through degree `n`. Degree `k` images are
/// `h_{k-1}` of the image of the boundary.
pub fn chain_map(hom: Hom, source: &FreeResolution, target: &FreeResolution, n: usize) -> Result<ChainMap> {
    if n > source.len() || n > target.len() {
        return Err(Error::invalid("chain map degree exceeds resolution length"));
    }
    if n > 0 && target.homotopy_depth().map_or(true, |d| d + 1 < n) {
        return Err(Error::invalid("target homotopy too shallow for the requested chain map"));
    }
    let so = source.group().order();
    let mut map = ChainMap { hom, images: Vec::new() };
    map.images.push((0..source.rank(0)).map(|i| target.iota(&source.augmentation[i])).collect());
    for k in 1..=n {
        let mut imgs = Vec::with_capacity(source.rank(k));
        for i in 0..source.rank(k) {
            let down = map.apply(target, so, k - 1, source.boundary(k, i));
            imgs.push(target.h(k - 1, &down)?);
        }
        map.images.push(imgs);
    }
    for k in 1..=n {
        for i in 0..source.rank(k) {
            let lhs = target.d(k, &map.images[k][i]);
            let rhs = map.apply(target, so, k - 1, source.boundary(k, i));
            if lhs != rhs {
                return Err(Error::invariant(format!("chain map does not commute with d at degree {k}")));
            }
        }
    }
    Ok(map)
}

/// Matrix of `H_k(φ)` between the homology groups of two resolutions.
pub fn induced_homology_map(
    map: &ChainMap,
    source: &FreeResolution,
    target: &FreeResolution,
    k: usize,
) -> Result<(HomologyGroup, HomologyGroup, Vec<Vec<Int>>)> {
    let hs = source.homology_group(k)?;
    let ht = target.homology_group(k)?;
    let m = hs.induced(&ht, &map.tensor_matrix(target, k))?;
    Ok((hs, ht, m))
}

/// Multiplier of the map `a -> a^m` of `Z_p` on `H_{2k-1}(Z_p)`.
pub fn power_map_homology_cyclic(p: u64, m: u64, k: u32) -> u64 {
    crate::sylow::pow_mod(m % p, k as u64, p)
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    fingerprint: String,
    elements_digest: String,
    ranks: Vec<usize>,
    boundaries: Vec<Vec<Vec<(usize, String)>>>,
    augmentation: Vec<String>,
    homotopy: Option<Vec<Vec<Vec<(usize, String)>>>>,
}

/// Group fingerprint: degree, sorted generator image arrays and order.
pub fn fingerprint(group: &FiniteGroup) -> String {
    let g = group.group();
    let mut gens: Vec<Vec<u32>> = g.generators().iter().map(|p| p.images().iter().map(|i| i + 1).collect()).collect();
    gens.sort();
    format!("degree={};order={};gens={:?}", g.degree(), group.order(), gens)
}

fn digest(s: &str) -> String {
    Sha256::digest(s.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
}

fn elements_digest(group: &FiniteGroup) -> String {
    let mut s = String::new();
    for e in group.elements() {
        s.push_str(&format!("{:?};", e.images()));
    }
    digest(&s)
}

fn words_out(ws: &[ZGWord]) -> Vec<Vec<(usize, String)>> {
    ws.iter().map(|w| w.iter().map(|(i, c)| (*i, c.to_string())).collect()).collect()
}

fn words_in(ws: &[Vec<(usize, String)>]) -> Result<Vec<ZGWord>> {
    ws.iter()
        .map(|w| {
            w.iter()
                .map(|(i, c)| {
                    c.parse::<Int>().map(|c| (*i, c)).map_err(|_| Error::Parse(format!("bad coefficient {c}")))
                })
                .collect()
        })
        .collect()
}

/// Cache file name for a resolution of this group with the given tag.
pub fn cache_path(dir: &Path, group: &FiniteGroup, tag: &str) -> std::path::PathBuf {
    let key = digest(&format!("{}|{}", fingerprint(group), tag));
    dir.join(format!("res-{}.json", &key[..16]))
}

pub fn save_resolution(res: &FreeResolution, path: &Path) -> Result<()> {
    let homotopy = match &res.homotopy {
        Homotopy::Table(t) => Some(t.iter().map(|row| words_out(row)).collect()),
        _ => None,
    };
    let file = CacheFile {
        fingerprint: fingerprint(&res.group),
        elements_digest: elements_digest(&res.group),
        ranks: res.ranks.clone(),
        boundaries: res.boundaries.iter().map(|b| words_out(b)).collect(),
        augmentation: res.augmentation.iter().map(|c| c.to_string()).collect(),
        homotopy,
    };
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(path, serde_json::to_string(&file)?)?;
    Ok(())
}

/// Loads a cached resolution; `Ok(None)` if the file is missing or belongs to another group.
pub fn load_resolution(group: Arc<FiniteGroup>, path: &Path) -> Result<Option<FreeResolution>> {
    let Ok(text) = std::fs::read_to_string(path) else { return Ok(None) };
    let file: CacheFile = serde_json::from_str(&text)?;
    if file.fingerprint != fingerprint(&group) || file.elements_digest != elements_digest(&group) {
        return Ok(None);
    }
    let boundaries = file.boundaries.iter().map(|b| words_in(b)).collect::<Result<Vec<_>>>()?;
    let augmentation = file
        .augmentation
        .iter()
        .map(|c| c.parse::<Int>().map_err(|_| Error::Parse(format!("bad coefficient {c}"))))
        .collect::<Result<Vec<_>>>()?;
    let homotopy = match file.homotopy {
        Some(t) => Homotopy::Table(t.iter().map(|row| words_in(row)).collect::<Result<Vec<_>>>()?),
        None => Homotopy::None,
    };
    Ok(Some(FreeResolution::from_parts(group, file.ranks, boundaries, augmentation, homotopy)?))
}

/// `resolution_small` through a cache directory.
pub fn resolution_small_cached(group: Arc<FiniteGroup>, n: usize, dir: Option<&Path>) -> Result<FreeResolution> {
    let Some(dir) = dir else { return resolution_small(group, n) };
    let path = cache_path(dir, &group, &format!("small-{n}"));
    if let Some(r) = load_resolution(group.clone(), &path)? {
        return Ok(r);
    }
    let r = resolution_small(group, n)?;
    save_resolution(&r, &path)?;
    Ok(r)
}
