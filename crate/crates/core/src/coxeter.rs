//! Coxeter diagrams, the blocking relation and essential subsets.
//!
//! Subsets of the generator set are bitmasks over node indices `0..n`. For
//! the poset form of the construction the nodes are the dimensions
//! `0..=d` of a d-complex, arranged as a path.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest essential poset for which the full order is computed.
pub const ESSENTIAL_CAP: usize = 20_000;

/// Largest node count accepted (subsets are enumerated as bitmasks).
pub const MAX_NODES: usize = 26;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterDiagram {
    n: usize,
    /// `(s, t, m(s, t))` for non-commuting pairs.
    edges: Vec<(usize, usize, u32)>,
    #[serde(skip)]
    paths: Vec<Vec<u64>>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum DiagramJson {
    Typed {
        #[serde(rename = "type")]
        kind: String,
        n: usize,
    },
    Explicit {
        nodes: usize,
        edges: Vec<(usize, usize, u32)>,
    },
}

impl CoxeterDiagram {
    /// Diagram on `n` nodes; edges are `(s, t, m)` with `m >= 3`; must be a tree.
    pub fn new(n: usize, edges: Vec<(usize, usize, u32)>) -> Result<Self> {
        if n == 0 || n > MAX_NODES {
            return Err(Error::invalid(format!("diagram must have 1..={MAX_NODES} nodes")));
        }
        let mut adj = vec![Vec::new(); n];
        for &(s, t, m) in &edges {
            if s >= n || t >= n || s == t || m < 3 {
                return Err(Error::invalid(format!("bad diagram edge ({s},{t},{m})")));
            }
            adj[s].push(t);
            adj[t].push(s);
        }
        if edges.len() != n - 1 {
            return Err(Error::invalid("diagram is not a tree"));
        }
        let mut paths = vec![vec![0u64; n]; n];
        for root in 0..n {
            let mut parent = vec![usize::MAX; n];
            let mut seen = vec![false; n];
            seen[root] = true;
            paths[root][root] = 1 << root;
            let mut stack = vec![root];
            while let Some(x) = stack.pop() {
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        parent[y] = x;
                        paths[root][y] = paths[root][x] | (1 << y);
                        stack.push(y);
                    }
                }
            }
            if seen.iter().any(|s| !s) {
                return Err(Error::invalid("diagram is not a tree"));
            }
        }
        Ok(CoxeterDiagram { n, edges, paths })
    }

    /// `A_n`: a path on `n` nodes.
    pub fn type_a(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i - 1, i, 3)).collect())
    }

    /// `B_n`: a path whose last edge has label 4.
    pub fn type_b(n: usize) -> Result<Self> {
        Self::new(n, (1..n).map(|i| (i - 1, i, if i == n - 1 { 4 } else { 3 })).collect())
    }

    /// The path diagram on the dimensions `0..=d` of a d-complex.
    pub fn dimensions(d: usize) -> Self {
        Self::type_a(d + 1).expect("path diagram")
    }

    /// `{"type": "A", "n": 23}` or `{"nodes": 3, "edges": [[0,1,3],[1,2,4]]}` (0-based).
    pub fn from_json(s: &str) -> Result<Self> {
        match serde_json::from_str::<DiagramJson>(s)? {
            DiagramJson::Typed { kind, n } => match kind.as_str() {
                "A" => Self::type_a(n),
                "B" | "C" => Self::type_b(n),
                other => Err(Error::invalid(format!("unsupported diagram type {other}"))),
            },
            DiagramJson::Explicit { nodes, edges } => Self::new(nodes, edges),
        }
    }

    pub fn nodes(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, u32)] {
        &self.edges
    }

    pub fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Nodes of the unique path from `u` to `v`, both included.
    pub fn path(&self, u: usize, v: usize) -> u64 {
        self.paths[u][v]
    }

    /// Whether `u_prime` blocks `u` from `v`: every path from a node of `u`
    /// to a node of `v` meets `u_prime`.
    pub fn blocks(&self, u_prime: u64, u: u64, v: u64) -> bool {
        bits(u).all(|a| bits(v).all(|b| self.paths[a][b] & u_prime != 0))
    }

    pub fn equivalent(&self, a: u64, b: u64, v: u64) -> bool {
        self.blocks(a, b, v) && self.blocks(b, a, v)
    }

    /// Minimal in its equivalence class: every node sees `v` past the others.
    pub fn is_essential(&self, u: u64, v: u64) -> bool {
        bits(u).all(|a| bits(v).any(|b| self.paths[a][b] & u == 1 << a))
    }

    /// Largest subset equivalent to `u`.
    pub fn class_max(&self, u: u64, v: u64) -> u64 {
        if u == 0 {
            return 0;
        }
        let mut m = u;
        for s in 0..self.n {
            if bits(v).all(|b| self.paths[s][b] & u != 0) {
                m |= 1 << s;
            }
        }
        m
    }

    /// Smallest subset equivalent to `u`.
    pub fn class_min(&self, u: u64, v: u64) -> u64 {
        let mut m = u;
        loop {
            let before = m;
            for a in bits(m) {
                let smaller = m & !(1 << a);
                if self.equivalent(smaller, m, v) {
                    m = smaller;
                    break;
                }
            }
            if m == before {
                return m;
            }
        }
    }

    /// Order of the parabolic subgroup generated by the nodes in `mask`, when every
    /// connected component is of a recognized finite type.
    pub fn parabolic_order(&self, mask: u64) -> Option<u128> {
        let mut seen = 0u64;
        let mut order: u128 = 1;
        for s in bits(mask) {
            if seen & (1 << s) != 0 {
                continue;
            }
            let mut comp = 1u64 << s;
            let mut stack = vec![s];
            while let Some(x) = stack.pop() {
                for &(a, b, _) in &self.edges {
                    for (p, q) in [(a, b), (b, a)] {
                        if p == x && mask & (1 << q) != 0 && comp & (1 << q) == 0 {
                            comp |= 1 << q;
                            stack.push(q);
                        }
                    }
                }
            }
            seen |= comp;
            order = order.checked_mul(self.component_order(comp)?)?;
        }
        Some(order)
    }

    pub fn order(&self) -> Option<u128> {
        self.parabolic_order(self.full())
    }

    fn component_order(&self, comp: u64) -> Option<u128> {
        let l = comp.count_ones() as u128;
        let es: Vec<(usize, usize, u32)> =
            self.edges.iter().copied().filter(|(a, b, _)| comp & (1 << a) != 0 && comp & (1 << b) != 0).collect();
        let fact = |k: u128| (1..=k).try_fold(1u128, |a, b| a.checked_mul(b));
        let mut deg: HashMap<usize, usize> = HashMap::new();
        for &(a, b, _) in &es {
            *deg.entry(a).or_default() += 1;
            *deg.entry(b).or_default() += 1;
        }
        let max_deg = deg.values().copied().max().unwrap_or(0);
        let labels: Vec<u32> = es.iter().map(|e| e.2).collect();
        let heavy: Vec<&(usize, usize, u32)> = es.iter().filter(|e| e.2 > 3).collect();
        if l == 1 {
            return Some(2);
        }
        if max_deg <= 2 {
            if heavy.is_empty() {
                return fact(l + 1);
            }
            if heavy.len() > 1 {
                return None;
            }
            let (a, b, m) = *heavy[0];
            let end = deg[&a] == 1 || deg[&b] == 1;
            return match (l, m) {
                (2, m) => Some(2 * m as u128),
                (_, 4) if end => fact(l).and_then(|f| f.checked_mul(1u128 << l)),
                (4, 4) => Some(1152),
                (3, 5) if end => Some(120),
                (4, 5) if end => Some(14400),
                _ => None,
            };
        }
        if max_deg == 3 && labels.iter().all(|&m| m == 3) {
            let centre = *deg.iter().find(|(_, d)| **d == 3)?.0;
            let mut arms: Vec<u128> = Vec::new();
            for &(a, b, _) in &es {
                let start = if a == centre { b } else if b == centre { a } else { continue };
                let mut len = 1;
                let (mut prev, mut cur) = (centre, start);
                loop {
                    let next = es.iter().find_map(|&(p, q, _)| {
                        if p == cur && q != prev {
                            Some(q)
                        } else if q == cur && p != prev {
                            Some(p)
                        } else {
                            None
                        }
                    });
                    match next {
                        Some(nx) => {
                            prev = cur;
                            cur = nx;
                            len += 1;
                        }
                        None => break,
                    }
                }
                arms.push(len);
            }
            arms.sort();
            return match arms.as_slice() {
                [1, 1, _] => fact(l).and_then(|f| f.checked_mul(1u128 << (l - 1))),
                [1, 2, 2] => Some(51840),
                [1, 2, 3] => Some(2903040),
                [1, 2, 4] => Some(696729600),
                _ => None,
            };
        }
        None
    }
}

/// Indices of set bits, ascending.
pub fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

pub fn mask_of(nodes: &[usize]) -> u64 {
    nodes.iter().fold(0, |m, &i| m | (1 << i))
}

/// The essential subsets of a diagram with respect to `v`, ordered by `<`.
///
/// The empty set is included as the unique maximum: it is the type of the
/// whole polytope, so the top height equals the polytope dimension.
#[derive(Clone, Debug)]
pub struct EssentialPoset {
    pub diagram: CoxeterDiagram,
    pub v: u64,
    /// Essential sets sorted by (height, mask).
    pub sets: Vec<u64>,
    pub heights: Vec<usize>,
    /// `M(X)` for the class of each essential set.
    pub class_max: Vec<u64>,
    index: HashMap<u64, usize>,
    below: Vec<Vec<u64>>,
}

fn bit_get(row: &[u64], j: usize) -> bool {
    row[j / 64] >> (j % 64) & 1 == 1
}

impl EssentialPoset {
    pub fn new(diagram: &CoxeterDiagram, v: u64) -> Result<Self> {
        if v == 0 || v & !diagram.full() != 0 {
            return Err(Error::invalid("V must be a nonempty subset of the nodes"));
        }
        let mut raw = Vec::new();
        for u in 0..=diagram.full() {
            if diagram.is_essential(u, v) {
                raw.push(u);
                if raw.len() > ESSENTIAL_CAP {
                    return Err(Error::cap("essential subsets", ESSENTIAL_CAP));
                }
            }
        }
        let e = raw.len();
        let words = e.div_ceil(64);
        // less[i] has bit j when raw[j] < raw[i]
        let mut less = vec![vec![0u64; words]; e];
        for i in 0..e {
            for j in 0..e {
                if i != j && diagram.blocks(raw[j], raw[i], v) {
                    less[i][j / 64] |= 1 << (j % 64);
                }
            }
        }
        let mut height = vec![usize::MAX; e];
        fn depth(i: usize, less: &[Vec<u64>], height: &mut Vec<usize>) -> usize {
            if height[i] != usize::MAX {
                return height[i];
            }
            let mut h = 0;
            for j in 0..less.len() {
                if bit_get(&less[i], j) {
                    h = h.max(depth(j, less, height) + 1);
                }
            }
            height[i] = h;
            h
        }
        for i in 0..e {
            depth(i, &less, &mut height);
        }
        let vi = raw.iter().position(|&u| u == v).ok_or_else(|| Error::invariant("V is not essential"))?;
        if height[vi] != 0 || height.iter().filter(|&&h| h == 0).count() != 1 {
            return Err(Error::invariant("V is not the unique minimum of the essential poset"));
        }
        // gradedness: covers raise height by exactly one
        for i in 0..e {
            for j in 0..e {
                if !bit_get(&less[i], j) {
                    continue;
                }
                let between = (0..e).any(|k| bit_get(&less[i], k) && bit_get(&less[k], j));
                if !between && height[i] != height[j] + 1 {
                    return Err(Error::invariant("essential poset is not graded"));
                }
            }
        }
        let mut order: Vec<usize> = (0..e).collect();
        order.sort_by_key(|&i| (height[i], raw[i]));
        let pos: Vec<usize> = {
            let mut p = vec![0; e];
            for (new, &old) in order.iter().enumerate() {
                p[old] = new;
            }
            p
        };
        let sets: Vec<u64> = order.iter().map(|&i| raw[i]).collect();
        let heights = order.iter().map(|&i| height[i]).collect();
        let mut below = vec![vec![0u64; words]; e];
        for (new, &old) in order.iter().enumerate() {
            for j in 0..e {
                if bit_get(&less[old], j) {
                    let pj = pos[j];
                    below[new][pj / 64] |= 1 << (pj % 64);
                }
            }
        }
        let class_max = sets.iter().map(|&u| diagram.class_max(u, v)).collect::<Vec<_>>();
        for (u, m) in sets.iter().zip(&class_max) {
            if !diagram.equivalent(*u, *m, v) {
                return Err(Error::invariant("class maximum is not equivalent to its minimum"));
            }
        }
        let index = sets.iter().enumerate().map(|(i, u)| (*u, i)).collect();
        Ok(EssentialPoset { diagram: diagram.clone(), v, sets, heights, class_max, index, below })
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn index_of(&self, u: u64) -> Option<usize> {
        self.index.get(&u).copied()
    }

    pub fn contains(&self, u: u64) -> bool {
        self.index.contains_key(&u)
    }

    pub fn height(&self, u: u64) -> Option<usize> {
        self.index_of(u).map(|i| self.heights[i])
    }

    /// Height of the empty set: the dimension of the polytope.
    pub fn max_height(&self) -> usize {
        self.heights.iter().copied().max().unwrap_or(0)
    }

    /// `sets[j] < sets[i]`.
    pub fn less(&self, j: usize, i: usize) -> bool {
        bit_get(&self.below[i], j)
    }

    pub fn less_sets(&self, a: u64, b: u64) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(i), Some(j)) => self.less(i, j),
            _ => false,
        }
    }

    /// Essential sets of a given height.
    pub fn of_height(&self, h: usize) -> Vec<u64> {
        self.sets.iter().zip(&self.heights).filter(|(_, &x)| x == h).map(|(u, _)| *u).collect()
    }

    /// Indices of the essential sets covered by `sets[i]`.
    pub fn facet_types(&self, i: usize) -> Vec<usize> {
        (0..self.len()).filter(|&j| self.less(j, i) && self.heights[j] + 1 == self.heights[i]).collect()
    }
}

/// Per-type face counts `|W| / |W_{S-T}|` of the Wythoff polytope.
#[derive(Clone, Debug, Serialize)]
pub struct FaceCounts {
    /// `(type, height, count)` in poset order.
    pub types: Vec<(Vec<usize>, usize, u128)>,
    pub f_vector: Vec<u128>,
    pub vertex_degree: u128,
}

pub fn face_counts_by_index(poset: &EssentialPoset) -> Result<FaceCounts> {
    let d = &poset.diagram;
    let w = d.order().ok_or_else(|| Error::invalid("diagram is not of a recognized finite type"))?;
    let mut types = Vec::new();
    let mut f = vec![0u128; poset.max_height() + 1];
    for (u, h) in poset.sets.iter().zip(&poset.heights) {
        let p = d.parabolic_order(d.full() & !u).ok_or_else(|| Error::invalid("unrecognized parabolic subgroup"))?;
        let c = w / p;
        types.push((bits(*u).collect(), *h, c));
        f[*h] += c;
    }
    let vertex_degree = if f.len() > 1 && f[0] > 0 { 2 * f[1] / f[0] } else { 0 };
    Ok(FaceCounts { types, f_vector: f, vertex_degree })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabolic_orders() {
        assert_eq!(CoxeterDiagram::type_a(23).unwrap().order(), Some((1..=24u128).product()));
        assert_eq!(CoxeterDiagram::type_b(3).unwrap().order(), Some(48));
        let d4 = CoxeterDiagram::new(4, vec![(0, 1, 3), (1, 2, 3), (1, 3, 3)]).unwrap();
        assert_eq!(d4.order(), Some(192));
        let f4 = CoxeterDiagram::new(4, vec![(0, 1, 3), (1, 2, 4), (2, 3, 3)]).unwrap();
        assert_eq!(f4.order(), Some(1152));
        assert!(CoxeterDiagram::new(3, vec![(0, 1, 3), (1, 2, 3), (0, 2, 3)]).is_err());
    }

    #[test]
    fn reflexive_path_case() {
        let d = CoxeterDiagram::type_a(23).unwrap();
        let v = mask_of(&[0, 1, 2, 3, 4]);
        assert!(!d.blocks(1 << 5, 1 << 4, v));
    }

    #[test]
    fn small_permutahedron() {
        let d = CoxeterDiagram::type_a(2).unwrap();
        let p = EssentialPoset::new(&d, 0b11).unwrap();
        let fc = face_counts_by_index(&p).unwrap();
        assert_eq!(fc.f_vector, vec![6, 6, 1]);
        assert_eq!(fc.vertex_degree, 2);
    }
}
