//! Orbit decomposition of Wythoff complexes: representative cells, their stabilizers,
//! and boundaries with coefficients in the group ring.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::complex::Base;
use crate::coxeter::{bits, CoxeterDiagram, EssentialPoset};
use crate::error::{Error, Result};
use crate::group::GenGroup;
use crate::homology::{ChainComplex, SparseMatrix};
use crate::matrix::{int, SparseVec};
use crate::orbit::{act_flag, act_set, orbit, stabilizer, Orbit, DEFAULT_ORBIT_CAP};
use crate::perm::Permutation;

/// Cap on the faces examined when extending one partial flag.
pub const CANDIDATE_CAP: usize = 4_000_000;
/// Cap on cells of a materialized complex.
pub const UNPACK_CAP: usize = 2_000_000;

struct Ext {
    orbits: Vec<Orbit<u64>>,
    child: Vec<Option<usize>>,
    lookup: HashMap<u64, u32>,
}

struct Node {
    chain: Vec<u64>,
    stab: GenGroup,
    exts: HashMap<usize, Ext>,
}

fn transversal(orb: &Orbit<u64>, pos: usize, gens: &[Permutation], degree: usize) -> Permutation {
    if pos == 0 {
        Permutation::identity(degree)
    } else {
        orb.transversal(pos, gens)
    }
}

/// Orbits of flags under a group, organized as a trie: a node is a partial flag
/// representative together with its stabilizer.
pub struct FlagTrie {
    base: Base,
    degree: usize,
    nodes: Vec<Node>,
}

impl FlagTrie {
    pub fn new(base: Base, group: &GenGroup) -> Result<Self> {
        base.check_action(group)?;
        let degree = group.degree();
        let root = Node { chain: vec![], stab: group.clone(), exts: HashMap::new() };
        Ok(FlagTrie { base, degree, nodes: vec![root] })
    }

    pub fn base(&self) -> &Base {
        &self.base
    }

    pub fn chain(&self, node: usize) -> &[u64] {
        &self.nodes[node].chain
    }

    pub fn stabilizer(&self, node: usize) -> &GenGroup {
        &self.nodes[node].stab
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn ensure_ext(&mut self, node: usize, t: usize) -> Result<()> {
        if self.nodes[node].exts.contains_key(&t) {
            return Ok(());
        }
        let last = self.nodes[node].chain.last().copied().unwrap_or(0);
        let candidates = self.base.faces_between(t, last, None);
        if candidates.len() > CANDIDATE_CAP {
            return Err(Error::cap("flag extension candidates", CANDIDATE_CAP));
        }
        let gens = self.nodes[node].stab.generators().to_vec();
        let mut lookup = HashMap::new();
        let mut orbits = Vec::new();
        for c in candidates {
            if lookup.contains_key(&c) {
                continue;
            }
            let orb = orbit(&gens, c, act_set, DEFAULT_ORBIT_CAP)?;
            for p in &orb.points {
                lookup.insert(*p, orbits.len() as u32);
            }
            orbits.push(orb);
        }
        let child = vec![None; orbits.len()];
        self.nodes[node].exts.insert(t, Ext { orbits, child, lookup });
        Ok(())
    }

    fn child(&mut self, node: usize, t: usize, o: usize) -> Result<usize> {
        self.ensure_ext(node, t)?;
        if let Some(c) = self.nodes[node].exts[&t].child[o] {
            return Ok(c);
        }
        let (chain, stab) = {
            let n = &self.nodes[node];
            let orb = &n.exts[&t].orbits[o];
            let mut chain = n.chain.clone();
            chain.push(orb.points[0]);
            (chain, stabilizer(&n.stab, orb, act_set)?)
        };
        let id = self.nodes.len();
        self.nodes.push(Node { chain, stab, exts: HashMap::new() });
        self.nodes[node].exts.get_mut(&t).unwrap().child[o] = Some(id);
        Ok(id)
    }

    /// Nodes of all orbit representatives of flags with the given dimensions.
    pub fn reps(&mut self, dims: &[usize]) -> Result<Vec<usize>> {
        let mut level = vec![0usize];
        for &t in dims {
            let mut next = Vec::new();
            for node in level {
                self.ensure_ext(node, t)?;
                let k = self.nodes[node].exts[&t].orbits.len();
                for o in 0..k {
                    next.push(self.child(node, t, o)?);
                }
            }
            level = next;
        }
        Ok(level)
    }

    /// Returns `(node, g)` with `flag = chain(node)·g`.
    pub fn canonicalize(&mut self, flag: &[u64]) -> Result<(usize, Permutation)> {
        let mut cur = flag.to_vec();
        let mut x = Permutation::identity(self.degree);
        let mut node = 0;
        for i in 0..flag.len() {
            let t = self
                .base
                .face_dim(cur[i])
                .ok_or_else(|| Error::invalid("flag entry is not a face"))?;
            self.ensure_ext(node, t)?;
            let (o, w) = {
                let n = &self.nodes[node];
                let ext = &n.exts[&t];
                let o = *ext.lookup.get(&cur[i]).ok_or_else(|| Error::invalid("not a flag"))? as usize;
                let orb = &ext.orbits[o];
                let pos = orb.position(&cur[i]).unwrap();
                (o, transversal(orb, pos, n.stab.generators(), self.degree))
            };
            let wi = w.inverse();
            cur = act_flag(&cur, &wi);
            x = x.mul(&wi);
            node = self.child(node, t, o)?;
        }
        debug_assert_eq!(cur, self.nodes[node].chain);
        Ok((node, x.inverse()))
    }
}

/// `coeff · (target representative)·element`.
#[derive(Clone, Debug, Serialize)]
pub struct BoundaryTerm {
    pub coeff: i32,
    #[serde(serialize_with = "ser_perm")]
    pub element: Permutation,
    pub target: usize,
}

fn ser_perm<S: serde::Serializer>(p: &Permutation, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

#[derive(Clone, Debug)]
pub struct CellOrbit {
    pub dim: usize,
    /// Type: the set of face dimensions in the flag.
    pub ty: u64,
    pub flag: Vec<u64>,
    pub stabilizer: GenGroup,
    /// One term per facet, aligned with `facets`.
    pub boundary: Vec<BoundaryTerm>,
    pub facets: Vec<Vec<u64>>,
    facet_index: HashMap<Vec<u64>, usize>,
}

impl CellOrbit {
    pub fn orbit_size(&self, group_order: u128) -> u128 {
        group_order / self.stabilizer.order()
    }
}

/// A Wythoff complex decomposed into orbits of cells under a group.
pub struct EquivariantCellComplex {
    pub poset: EssentialPoset,
    pub group: GenGroup,
    /// Representative cells by dimension.
    pub cells: Vec<Vec<CellOrbit>>,
    trie: FlagTrie,
    node_cell: HashMap<usize, (usize, usize)>,
}

/// Flags of type `target` (dims ascending) compatible with `flag` of type `ty`.
pub fn compatible_flags(base: &Base, flag: &[u64], ty: u64, target: u64) -> Vec<Vec<u64>> {
    let own: Vec<(usize, u64)> = bits(ty).zip(flag.iter().copied()).collect();
    let dims: Vec<usize> = bits(target).collect();
    let mut out = Vec::new();
    fn rec(
        base: &Base,
        own: &[(usize, u64)],
        dims: &[usize],
        i: usize,
        acc: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if i == dims.len() {
            out.push(acc.clone());
            return;
        }
        let t = dims[i];
        if let Some(&(_, f)) = own.iter().find(|(d, _)| *d == t) {
            if acc.last().map_or(true, |&l| l & f == l) {
                acc.push(f);
                rec(base, own, dims, i + 1, acc, out);
                acc.pop();
            }
            return;
        }
        let below_own = own.iter().filter(|(d, _)| *d < t).map(|(_, f)| *f).last().unwrap_or(0);
        let prev = acc.last().copied().unwrap_or(0);
        let lower = below_own | prev;
        let upper = own.iter().find(|(d, _)| *d > t).map(|(_, f)| *f);
        for x in base.faces_between(t, lower, upper) {
            acc.push(x);
            rec(base, own, dims, i + 1, acc, out);
            acc.pop();
        }
    }
    rec(base, &own, &dims, 0, &mut Vec::new(), &mut out);
    out
}

/// Decomposes the cells of dimension `≤ max_dim` of the Wythoff complex of `base`
/// with vertex type `v` (a mask of face dimensions). The whole polytope is the
/// single top cell when `max_dim` reaches its dimension.
pub fn orbit_decompose(base: &Base, v: u64, group: &GenGroup, max_dim: usize) -> Result<EquivariantCellComplex> {
    let diagram = CoxeterDiagram::dimensions(base.dim());
    let poset = EssentialPoset::new(&diagram, v)?;
    let mut trie = FlagTrie::new(base.clone(), group)?;
    let top = max_dim.min(poset.max_height());
    let mut cells: Vec<Vec<CellOrbit>> = Vec::new();
    let mut node_cell = HashMap::new();
    for h in 0..=top {
        let mut layer = Vec::new();
        for ty in poset.of_height(h) {
            let dims: Vec<usize> = bits(ty).collect();
            for node in trie.reps(&dims)? {
                node_cell.insert(node, (h, layer.len()));
                layer.push(CellOrbit {
                    dim: h,
                    ty,
                    flag: trie.chain(node).to_vec(),
                    stabilizer: trie.stabilizer(node).clone(),
                    boundary: vec![],
                    facets: vec![],
                    facet_index: HashMap::new(),
                });
            }
        }
        if h > 0 {
            for i in 0..layer.len() {
                let (facets, terms) = facets_of(&layer[i], &poset, &mut trie, &node_cell)?;
                let signs = orient(h, &terms, &facets, &cells)?;
                let cell = &mut layer[i];
                cell.boundary = terms
                    .into_iter()
                    .zip(signs)
                    .map(|((target, element), coeff)| BoundaryTerm { coeff, element, target })
                    .collect();
                cell.facet_index = facets.iter().enumerate().map(|(j, f)| (f.clone(), j)).collect();
                cell.facets = facets;
            }
        }
        cells.push(layer);
    }
    Ok(EquivariantCellComplex { poset, group: group.clone(), cells, trie, node_cell })
}

type Facets = (Vec<Vec<u64>>, Vec<(usize, Permutation)>);

fn facets_of(
    cell: &CellOrbit,
    poset: &EssentialPoset,
    trie: &mut FlagTrie,
    node_cell: &HashMap<usize, (usize, usize)>,
) -> Result<Facets> {
    let i = poset.index_of(cell.ty).unwrap();
    let mut facets = Vec::new();
    let mut terms = Vec::new();
    for j in poset.facet_types(i) {
        let t2 = poset.sets[j];
        for y in compatible_flags(trie.base(), &cell.flag, cell.ty, t2) {
            let (node, g) = trie.canonicalize(&y)?;
            let &(d, idx) = node_cell
                .get(&node)
                .ok_or_else(|| Error::invariant("facet orbit was not enumerated"))?;
            if d + 1 != cell.dim {
                return Err(Error::invariant("facet of the wrong dimension"));
            }
            facets.push(y);
            terms.push((idx, g));
        }
    }
    Ok((facets, terms))
}

/// Orientation character of `cell` on an element of its stabilizer.
pub fn character(lower: &[Vec<CellOrbit>], cell: &CellOrbit, s: &Permutation) -> Result<i32> {
    if cell.dim == 0 {
        return Ok(1);
    }
    let y0 = &cell.facets[0];
    let y1 = act_flag(y0, s);
    let j = *cell
        .facet_index
        .get(&y1)
        .ok_or_else(|| Error::invariant("element does not stabilize the cell"))?;
    let (t0, t1) = (&cell.boundary[0], &cell.boundary[j]);
    if t0.target != t1.target {
        return Err(Error::invariant("facet mapped to another orbit"));
    }
    let s0 = t0.element.mul(s).mul(&t1.element.inverse());
    let r = &lower[cell.dim - 1][t0.target];
    Ok(t0.coeff * t1.coeff * character(lower, r, &s0)?)
}

/// Chooses facet signs so that the boundary of the boundary vanishes.
fn orient(h: usize, terms: &[(usize, Permutation)], facets: &[Vec<u64>], cells: &[Vec<CellOrbit>]) -> Result<Vec<i32>> {
    let n = terms.len();
    // (other facet, relative sign)
    let mut adj: Vec<Vec<(usize, i32)>> = vec![vec![]; n];
    if h == 1 {
        if n != 2 {
            return Err(Error::invariant(format!("edge with {n} vertices")));
        }
        adj[0].push((1, -1));
        adj[1].push((0, -1));
    } else {
        let mut ridges: HashMap<Vec<u64>, Vec<(usize, i32, Permutation, usize)>> = HashMap::new();
        for (a, (idx, g)) in terms.iter().enumerate() {
            let r = &cells[h - 1][*idx];
            for (b, term) in r.boundary.iter().enumerate() {
                let z = act_flag(&r.facets[b], g);
                ridges.entry(z).or_default().push((a, term.coeff, term.element.mul(g), term.target));
            }
        }
        for (_, occ) in ridges {
            if occ.len() != 2 {
                return Err(Error::invariant(format!("ridge lies in {} facets", occ.len())));
            }
            let (a1, c1, h1, z) = &occ[0];
            let (a2, c2, h2, _) = &occ[1];
            let chi = character(cells, &cells[h - 2][*z], &h1.mul(&h2.inverse()))?;
            let rel = -c1 * c2 * chi;
            adj[*a1].push((*a2, rel));
            adj[*a2].push((*a1, rel));
        }
    }
    let mut sign = vec![0i32; n];
    sign[0] = 1;
    let mut queue = VecDeque::from([0usize]);
    while let Some(a) = queue.pop_front() {
        for &(b, rel) in &adj[a] {
            let want = rel * sign[a];
            if sign[b] == 0 {
                sign[b] = want;
                queue.push_back(b);
            } else if sign[b] != want {
                return Err(Error::invariant("cell boundary is not orientable"));
            }
        }
    }
    if sign.contains(&0) {
        return Err(Error::invariant(format!("disconnected facet graph ({} facets)", facets.len())));
    }
    Ok(sign)
}

#[derive(Serialize)]
struct CellJson {
    dim: usize,
    ty: Vec<usize>,
    flag: Vec<Vec<usize>>,
    stabilizer_order: String,
    orientation_preserving: bool,
    boundary: Vec<BoundaryTerm>,
}

/// An explicit chain complex of all cells, with orbit bookkeeping.
pub struct Materialized {
    pub complex: ChainComplex,
    /// Cells per dimension.
    pub counts: Vec<usize>,
    /// For each dimension, each cell: (representative index, flag).
    pub cells: Vec<Vec<(usize, Vec<u64>)>>,
}

impl EquivariantCellComplex {
    pub fn base(&self) -> &Base {
        self.trie.base()
    }

    pub fn top(&self) -> usize {
        self.cells.len() - 1
    }

    /// Representatives per dimension.
    pub fn orbit_counts(&self) -> Vec<usize> {
        self.cells.iter().map(|l| l.len()).collect()
    }

    /// Cells per dimension, `Σ |G|/|Stab|`.
    pub fn cell_counts(&self) -> Vec<u128> {
        let n = self.group.order();
        self.cells.iter().map(|l| l.iter().map(|c| c.orbit_size(n)).sum()).collect()
    }

    pub fn cell(&self, dim: usize, idx: usize) -> &CellOrbit {
        &self.cells[dim][idx]
    }

    /// Orientation character of a representative on an element of its stabilizer.
    pub fn character(&self, dim: usize, idx: usize, s: &Permutation) -> Result<i32> {
        character(&self.cells, &self.cells[dim][idx], s)
    }

    pub fn orientation_preserving(&self, dim: usize, idx: usize) -> Result<bool> {
        let c = &self.cells[dim][idx];
        for g in c.stabilizer.generators() {
            if self.character(dim, idx, g)? != 1 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Returns `(dim, idx, g)` with the flag equal to the representative times `g`.
    pub fn locate(&mut self, flag: &[u64]) -> Result<(usize, usize, Permutation)> {
        let (node, g) = self.trie.canonicalize(flag)?;
        let &(d, i) = self
            .node_cell
            .get(&node)
            .ok_or_else(|| Error::invalid("flag is not a cell of the decomposition"))?;
        Ok((d, i, g))
    }

    /// Checks that each stabilizer acts on the boundary through the character.
    pub fn check_characters(&self) -> Result<()> {
        for layer in &self.cells[1..] {
            for (i, c) in layer.iter().enumerate() {
                for g in c.stabilizer.generators() {
                    let chi = self.character(c.dim, i, g)?;
                    for (j, y) in c.facets.iter().enumerate() {
                        let k = c.facet_index[&act_flag(y, g)];
                        let (a, b) = (&c.boundary[j], &c.boundary[k]);
                        let s0 = a.element.mul(g).mul(&b.element.inverse());
                        let r = &self.cells[c.dim - 1][a.target];
                        if a.target != b.target
                            || act_flag(&r.flag, &s0) != r.flag
                            || a.coeff * character(&self.cells, r, &s0)? != chi * b.coeff
                        {
                            return Err(Error::invariant("stabilizer does not act by its character"));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// All cells over the integers, one basis element per cell.
    pub fn materialize(&self) -> Result<Materialized> {
        let gens = self.group.generators();
        let degree = self.group.degree();
        let mut orbits: Vec<Vec<Orbit<Vec<u64>>>> = Vec::new();
        let mut offsets: Vec<Vec<usize>> = Vec::new();
        let mut counts = Vec::new();
        let mut total = 0usize;
        for layer in &self.cells {
            let mut os = Vec::new();
            let mut offs = Vec::new();
            let mut n = 0;
            for c in layer {
                let o = orbit(gens, c.flag.clone(), act_flag, UNPACK_CAP)?;
                offs.push(n);
                n += o.len();
                os.push(o);
            }
            total += n;
            if total > UNPACK_CAP {
                return Err(Error::cap("materialized cells", UNPACK_CAP));
            }
            orbits.push(os);
            offsets.push(offs);
            counts.push(n);
        }
        let trans = |o: &Orbit<Vec<u64>>, p: usize| {
            if p == 0 {
                Permutation::identity(degree)
            } else {
                o.transversal(p, gens)
            }
        };
        let mut ds = Vec::new();
        for k in 1..self.cells.len() {
            let mut columns: Vec<SparseVec> = Vec::with_capacity(counts[k]);
            for (i, c) in self.cells[k].iter().enumerate() {
                for p in 0..orbits[k][i].len() {
                    let t = trans(&orbits[k][i], p);
                    let mut col: Vec<(usize, i64)> = Vec::new();
                    for term in &c.boundary {
                        let r = &self.cells[k - 1][term.target];
                        let gt = term.element.mul(&t);
                        let o = &orbits[k - 1][term.target];
                        let q = o.position(&act_flag(&r.flag, &gt)).ok_or_else(|| Error::invariant("lost cell"))?;
                        let s = gt.mul(&trans(o, q).inverse());
                        let chi = character(&self.cells, r, &s)?;
                        col.push((offsets[k - 1][term.target] + q, (term.coeff * chi) as i64));
                    }
                    col.sort();
                    let mut merged: Vec<(usize, i64)> = Vec::new();
                    for (r, v) in col {
                        match merged.last_mut() {
                            Some((lr, lv)) if *lr == r => *lv += v,
                            _ => merged.push((r, v)),
                        }
                    }
                    columns.push(merged.into_iter().filter(|(_, v)| *v != 0).map(|(r, v)| (r, int(v))).collect());
                }
            }
            ds.push(SparseMatrix::new(counts[k - 1], columns));
        }
        let complex = ChainComplex::from_boundaries(counts.clone(), ds)?;
        let cells = orbits
            .iter()
            .map(|os| os.iter().enumerate().flat_map(|(i, o)| o.points.iter().map(move |f| (i, f.clone()))).collect())
            .collect();
        Ok(Materialized { complex, counts, cells })
    }

    /// Alternating sum of cell counts.
    pub fn euler_characteristic(&self) -> i128 {
        self.cell_counts().iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i128 } else { -(c as i128) }).sum()
    }

    pub fn to_json(&self) -> Result<serde_json::Value> {
        let mut out = Vec::new();
        for layer in &self.cells {
            for (i, c) in layer.iter().enumerate() {
                out.push(CellJson {
                    dim: c.dim,
                    ty: bits(c.ty).collect(),
                    flag: c.flag.iter().map(|f| bits(*f).map(|v| v + 1).collect()).collect(),
                    stabilizer_order: c.stabilizer.order().to_string(),
                    orientation_preserving: self.orientation_preserving(c.dim, i)?,
                    boundary: c.boundary.clone(),
                });
            }
        }
        Ok(serde_json::json!({
            "vertex_type": bits(self.poset.v).collect::<Vec<_>>(),
            "group_order": self.group.order().to_string(),
            "orbit_counts": self.orbit_counts(),
            "cell_counts": self.cell_counts().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "cells": serde_json::to_value(out)?,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::DComplex;

    fn cube_group() -> GenGroup {
        // bit flip of each coordinate, and a coordinate rotation
        let flip = |a: usize| Permutation::from_images((0..8u32).map(|i| i ^ (1 << a)).collect()).unwrap();
        let rot = Permutation::from_images(
            (0..8u32).map(|i| ((i << 1) & 0b110) | (i >> 2)).collect(),
        )
        .unwrap();
        let swap = Permutation::from_images(
            (0..8u32).map(|i| (i & 0b100) | ((i & 1) << 1) | ((i >> 1) & 1)).collect(),
        )
        .unwrap();
        GenGroup::new(8, vec![flip(0), rot, swap]).unwrap()
    }

    /// Asserts the materialized complex is a ball, and its boundary a sphere.
    fn check_ball(base: &Base, v: u64, group: &GenGroup) -> EquivariantCellComplex {
        let e = orbit_decompose(base, v, group, 64).unwrap();
        e.check_characters().unwrap();
        let top = e.top();
        let m = e.materialize().unwrap();
        for k in 0..=top {
            let h = m.complex.homology(k).unwrap();
            assert!(h.torsion.is_empty() && h.free_rank == (k == 0) as usize, "ball H_{k} = {h}");
        }
        let s = orbit_decompose(base, v, group, top - 1).unwrap().materialize().unwrap();
        for k in 0..top {
            let h = s.complex.homology(k).unwrap();
            let rank = (k == 0) as usize + (k == top - 1) as usize;
            assert!(h.torsion.is_empty() && h.free_rank == rank, "sphere H_{k} = {h}");
        }
        e
    }

    #[test]
    fn triangle_trivial_group() {
        let base = Base::Complex(DComplex::simplex_boundary(3).unwrap());
        let e = check_ball(&base, 0b1, &GenGroup::trivial(3));
        assert_eq!(e.cell_counts(), vec![3, 3, 1]);
        let e = check_ball(&base, 0b11, &GenGroup::trivial(3));
        assert_eq!(e.cell_counts(), vec![6, 6, 1]);
    }

    #[test]
    fn cube_and_dual() {
        let base = Base::Complex(DComplex::cube());
        let g = cube_group();
        assert_eq!(g.order(), 48);
        for (group, orbits) in [(GenGroup::trivial(8), false), (g, true)] {
            let e = check_ball(&base, 0b001, &group);
            assert_eq!(e.cell_counts(), vec![8, 12, 6, 1]);
            let e = check_ball(&base, 0b100, &group);
            assert_eq!(e.cell_counts(), vec![6, 12, 8, 1]);
            let e = check_ball(&base, 0b111, &group);
            assert_eq!(e.cell_counts(), vec![48, 72, 26, 1]);
            if orbits {
                assert_eq!(e.orbit_counts(), vec![1, 3, 3, 1]);
                assert!(!e.orientation_preserving(1, 0).unwrap());
            }
        }
    }

    #[test]
    fn simplex_base_permutahedron() {
        let base = Base::simplex(4).unwrap();
        let full = crate::group::symmetric_group(4);
        for group in [GenGroup::trivial(4), full] {
            let e = check_ball(&base, 0b111, &group);
            assert_eq!(e.cell_counts(), vec![24, 36, 14, 1]);
        }
    }
}
