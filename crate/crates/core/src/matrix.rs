//! Exact integer linear algebra: dense matrices with Smith normal form,
//! sparse column echelon forms for kernels and solving, and sparse
//! elementary divisors.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use ibig::ops::Abs;
use ibig::IBig;

pub type Int = IBig;

/// Sparse integer vector: strictly increasing indices, no zero entries.
pub type SparseVec = Vec<(usize, Int)>;

pub fn int(x: i64) -> Int {
    Int::from(x)
}

pub fn is_unit(x: &Int) -> bool {
    *x == Int::from(1) || *x == Int::from(-1)
}

/// `x*a + y*b` on sparse vectors.
pub fn sv_lin(x: &Int, a: &SparseVec, y: &Int, b: &SparseVec) -> SparseVec {
    let zero = Int::from(0);
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let (idx, v) = if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            let t = (a[i].0, x * &a[i].1);
            i += 1;
            t
        } else if i >= a.len() || b[j].0 < a[i].0 {
            let t = (b[j].0, y * &b[j].1);
            j += 1;
            t
        } else {
            let t = (a[i].0, x * &a[i].1 + y * &b[j].1);
            i += 1;
            j += 1;
            t
        };
        if v != zero {
            out.push((idx, v));
        }
    }
    out
}

/// `a - q*b`.
pub fn sv_sub_mul(a: &SparseVec, q: &Int, b: &SparseVec) -> SparseVec {
    sv_lin(&Int::from(1), a, &-q, b)
}

pub fn sv_add(a: &SparseVec, b: &SparseVec) -> SparseVec {
    sv_lin(&Int::from(1), a, &Int::from(1), b)
}

pub fn sv_scale(a: &SparseVec, c: &Int) -> SparseVec {
    if *c == Int::from(0) {
        return Vec::new();
    }
    a.iter().map(|(i, v)| (*i, v * c)).collect()
}

/// Sorts and merges arbitrary `(index, value)` terms into canonical form.
pub fn sv_from_terms(mut terms: Vec<(usize, Int)>) -> SparseVec {
    terms.sort_by_key(|t| t.0);
    let zero = Int::from(0);
    let mut out: SparseVec = Vec::with_capacity(terms.len());
    for (i, v) in terms {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 += v,
            _ => out.push((i, v)),
        }
    }
    out.retain(|t| t.1 != zero);
    out
}

pub fn sv_to_dense(a: &SparseVec, n: usize) -> Vec<Int> {
    let mut out = vec![Int::from(0); n];
    for (i, v) in a {
        out[*i] = v.clone();
    }
    out
}

pub fn sv_from_dense(a: &[Int]) -> SparseVec {
    let zero = Int::from(0);
    a.iter()
        .enumerate()
        .filter(|(_, v)| **v != zero)
        .map(|(i, v)| (i, v.clone()))
        .collect()
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Int>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![Int::from(0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Int::from(1));
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m.set(i, j, Int::from(*v));
            }
        }
        m
    }

    /// Builds a matrix from sparse columns.
    pub fn from_columns(rows: usize, columns: &[SparseVec]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col {
                m.set(*i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Int) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<Int> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn sparse_column(&self, j: usize) -> SparseVec {
        sv_from_dense(&self.column(j))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let zero = Int::from(0);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if *a == zero {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if *b != zero {
                        let idx = i * out.cols + j;
                        out.data[idx] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                let mut s = Int::from(0);
                for (j, x) in v.iter().enumerate() {
                    s += self.get(i, j) * x;
                }
                s
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        let zero = Int::from(0);
        self.data.iter().all(|x| *x == zero)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] -= q * row[src]
    fn row_sub(&mut self, dst: usize, src: usize, q: &Int) {
        for j in 0..self.cols {
            let v = q * self.get(src, j);
            self.data[dst * self.cols + j] -= v;
        }
    }

    /// col[dst] -= q * col[src]
    fn col_sub(&mut self, dst: usize, src: usize, q: &Int) {
        for i in 0..self.rows {
            let v = q * self.get(i, src);
            self.data[i * self.cols + dst] -= v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }

    fn negate_col(&mut self, j: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Smith normal form `U M V = S`.
#[derive(Clone, Debug)]
pub struct Snf {
    /// Diagonal of `S`, length `min(rows, cols)`; nonzero entries first, each dividing the next.
    pub diag: Vec<Int>,
    pub rank: usize,
    pub u: Option<IntMatrix>,
    pub u_inv: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
}

impl Snf {
    pub fn diagonal_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut s = IntMatrix::zeros(rows, cols);
        for (i, d) in self.diag.iter().enumerate() {
            s.set(i, i, d.clone());
        }
        s
    }
}

struct Tracker {
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
}

/// Smith normal form with smallest-magnitude pivoting.
pub fn snf(m: &IntMatrix, transforms: bool) -> Snf {
    let (r, c) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut tr = transforms.then(|| Tracker {
        u: IntMatrix::identity(r),
        u_inv: IntMatrix::identity(r),
        v: IntMatrix::identity(c),
    });
    let zero = Int::from(0);

    let swap_r = |a: &mut IntMatrix, tr: &mut Option<Tracker>, i: usize, j: usize| {
        a.swap_rows(i, j);
        if let Some(t) = tr {
            t.u.swap_rows(i, j);
            t.u_inv.swap_cols(i, j);
        }
    };
    let swap_c = |a: &mut IntMatrix, tr: &mut Option<Tracker>, i: usize, j: usize| {
        a.swap_cols(i, j);
        if let Some(t) = tr {
            t.v.swap_cols(i, j);
        }
    };
    // row[dst] -= q row[src]; U likewise; U^{-1}: col[src] += q col[dst]
    let rsub = |a: &mut IntMatrix, tr: &mut Option<Tracker>, dst: usize, src: usize, q: &Int| {
        a.row_sub(dst, src, q);
        if let Some(t) = tr {
            t.u.row_sub(dst, src, q);
            t.u_inv.col_sub(src, dst, &-q);
        }
    };
    let csub = |a: &mut IntMatrix, tr: &mut Option<Tracker>, dst: usize, src: usize, q: &Int| {
        a.col_sub(dst, src, q);
        if let Some(t) = tr {
            t.v.col_sub(dst, src, q);
        }
    };

    let mut t = 0;
    while t < r.min(c) {
        // smallest nonzero entry in the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                let x = a.get(i, j);
                if *x != zero && best.map_or(true, |(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        swap_r(&mut a, &mut tr, t, bi);
        swap_c(&mut a, &mut tr, t, bj);

        loop {
            let mut again = false;
            for i in t + 1..r {
                if *a.get(i, t) != zero {
                    let q = a.get(i, t) / a.get(t, t);
                    rsub(&mut a, &mut tr, i, t, &q);
                    if *a.get(i, t) != zero {
                        again = true;
                    }
                }
            }
            for j in t + 1..c {
                if *a.get(t, j) != zero {
                    let q = a.get(t, j) / a.get(t, t);
                    csub(&mut a, &mut tr, j, t, &q);
                    if *a.get(t, j) != zero {
                        again = true;
                    }
                }
            }
            if again {
                let mut best = (t, t);
                for i in t..r {
                    let x = a.get(i, t);
                    if *x != zero && x.abs() < a.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t..c {
                    let x = a.get(t, j);
                    if *x != zero && x.abs() < a.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                swap_r(&mut a, &mut tr, t, best.0);
                swap_c(&mut a, &mut tr, t, best.1);
                continue;
            }
            // divisibility of the trailing block
            let p = a.get(t, t).clone();
            let mut bad = None;
            'outer: for i in t + 1..r {
                for j in t + 1..c {
                    if a.get(i, j) % &p != zero {
                        bad = Some(i);
                        break 'outer;
                    }
                }
            }
            match bad {
                Some(i) => rsub(&mut a, &mut tr, t, i, &Int::from(-1)),
                None => break,
            }
        }
        if *a.get(t, t) < zero {
            a.negate_row(t);
            if let Some(tk) = &mut tr {
                tk.u.negate_row(t);
                tk.u_inv.negate_col(t);
            }
        }
        t += 1;
    }
    let diag: Vec<Int> = (0..r.min(c)).map(|i| a.get(i, i).clone()).collect();
    let rank = diag.iter().filter(|d| **d != zero).count();
    let (u, u_inv, v) = match tr {
        Some(t) => (Some(t.u), Some(t.u_inv), Some(t.v)),
        None => (None, None, None),
    };
    Snf { diag, rank, u, u_inv, v }
}

/// Incremental echelon form of a lattice spanned by integer vectors.
///
/// Pivots with a unit entry are kept fully reduced (no other basis vector has
/// an entry in a unit pivot row). The remaining vectors vanish on all unit
/// rows and form a lead-indexed echelon maintained with gcd steps. Input
/// vectors that reduce to zero yield kernel vectors in input coordinates;
/// together they form a basis of the kernel lattice.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    inputs: usize,
    track: bool,
    units: Vec<Pivot>,
    unit_rows: HashMap<usize, usize>,
    rest: Vec<Option<Pivot>>,
    rest_leads: HashMap<usize, usize>,
    kernel: Vec<SparseVec>,
}

#[derive(Clone, Debug)]
struct Pivot {
    v: SparseVec,
    t: SparseVec,
    row: usize,
}

fn entry(v: &SparseVec, r: usize) -> Option<&Int> {
    v.binary_search_by_key(&r, |e| e.0).ok().map(|i| &v[i].1)
}

impl Echelon {
    /// With `track`, coefficients with respect to the inputs are maintained.
    pub fn new(track: bool) -> Self {
        Echelon { track, ..Default::default() }
    }

    pub fn rank(&self) -> usize {
        self.units.len() + self.rest_leads.len()
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn kernel(&self) -> &[SparseVec] {
        &self.kernel
    }

    pub fn into_kernel(self) -> Vec<SparseVec> {
        self.kernel
    }

    /// Vectors of the current basis.
    pub fn basis_vectors(&self) -> impl Iterator<Item = &SparseVec> {
        self.units.iter().map(|p| &p.v).chain(self.rest.iter().flatten().map(|p| &p.v))
    }

    fn clear_units(&self, v: &mut SparseVec, t: &mut SparseVec) {
        let mut sub: Vec<(usize, Int)> = Vec::new();
        for (r, c) in v.iter() {
            if let Some(&pi) = self.unit_rows.get(r) {
                let p = &self.units[pi];
                let u = entry(&p.v, p.row).unwrap();
                sub.push((pi, c * u));
            }
        }
        if sub.is_empty() {
            return;
        }
        let mut vt: Vec<(usize, Int)> = v.clone();
        let mut tt: Vec<(usize, Int)> = if self.track { t.clone() } else { Vec::new() };
        for (pi, q) in &sub {
            let p = &self.units[*pi];
            vt.extend(p.v.iter().map(|(i, a)| (*i, -(a * q))));
            if self.track {
                tt.extend(p.t.iter().map(|(i, a)| (*i, -(a * q))));
            }
        }
        *v = sv_from_terms(vt);
        if self.track {
            *t = sv_from_terms(tt);
        }
    }

    fn add_unit(&mut self, v: SparseVec, t: SparseVec, row: usize, queue: &mut Vec<(SparseVec, SparseVec)>) {
        let u = entry(&v, row).unwrap().clone();
        for p in self.units.iter_mut() {
            if let Some(c) = entry(&p.v, row) {
                let q = c * &u;
                p.v = sv_sub_mul(&p.v, &q, &v);
                if self.track {
                    p.t = sv_sub_mul(&p.t, &q, &t);
                }
            }
        }
        for slot in self.rest.iter_mut() {
            if slot.as_ref().is_some_and(|p| entry(&p.v, row).is_some()) {
                let p = slot.take().unwrap();
                self.rest_leads.remove(&p.row);
                queue.push((p.v, p.t));
            }
        }
        self.unit_rows.insert(row, self.units.len());
        self.units.push(Pivot { v, t, row });
    }

    fn unit_row(v: &SparseVec) -> Option<usize> {
        v.iter().find(|(_, c)| is_unit(c)).map(|e| e.0)
    }

    /// Adds a vector; returns true if the rank increased.
    pub fn push(&mut self, v: SparseVec) -> bool {
        let before = self.rank();
        let j = self.inputs;
        self.inputs += 1;
        let t = if self.track { vec![(j, Int::from(1))] } else { Vec::new() };
        let mut queue = vec![(v, t)];
        while let Some((mut c, mut ct)) = queue.pop() {
            self.clear_units(&mut c, &mut ct);
            loop {
                if c.is_empty() {
                    if self.track {
                        self.kernel.push(ct);
                    }
                    break;
                }
                if let Some(r) = Self::unit_row(&c) {
                    self.add_unit(c, ct, r, &mut queue);
                    break;
                }
                let (r, b) = c[0].clone();
                let Some(&pi) = self.rest_leads.get(&r) else {
                    self.rest_leads.insert(r, self.rest.len());
                    self.rest.push(Some(Pivot { v: c, t: ct, row: r }));
                    break;
                };
                let p = self.rest[pi].as_ref().unwrap();
                let a = p.v[0].1.clone();
                if (&b % &a) == Int::from(0) {
                    let q = &b / &a;
                    c = sv_sub_mul(&c, &q, &p.v);
                    if self.track {
                        ct = sv_sub_mul(&ct, &q, &p.t);
                    }
                    continue;
                }
                let (g, x, y) = a.extended_gcd(&b);
                let bg = &b / &g;
                let ag = -(&a / &g);
                let np = sv_lin(&x, &p.v, &y, &c);
                let nc = sv_lin(&bg, &p.v, &ag, &c);
                let (npt, nct) = if self.track {
                    (sv_lin(&x, &p.t, &y, &ct), sv_lin(&bg, &p.t, &ag, &ct))
                } else {
                    (Vec::new(), Vec::new())
                };
                if Self::unit_row(&np).is_some() {
                    self.rest[pi] = None;
                    self.rest_leads.remove(&r);
                    queue.push((np, npt));
                } else {
                    self.rest[pi] = Some(Pivot { v: np, t: npt, row: r });
                }
                c = nc;
                ct = nct;
            }
        }
        if self.rest.len() > 2 * self.rest_leads.len() + 16 {
            self.rest.retain(|p| p.is_some());
            self.rest_leads = self.rest.iter().enumerate().map(|(i, p)| (p.as_ref().unwrap().row, i)).collect();
        }
        self.rank() > before
    }

    /// Reduces `v` against the basis; returns the remainder and the
    /// coefficients (over inputs, when tracked) of what was subtracted.
    fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut c = v.clone();
        let mut coeffs: SparseVec = Vec::new();
        self.clear_units(&mut c, &mut coeffs);
        let zero = Int::from(0);
        while let Some((r, b)) = c.first().cloned() {
            let Some(&pi) = self.rest_leads.get(&r) else { break };
            let p = self.rest[pi].as_ref().unwrap();
            let a = &p.v[0].1;
            if &b % a != zero {
                break;
            }
            let q = &b / a;
            c = sv_sub_mul(&c, &q, &p.v);
            if self.track {
                coeffs = sv_sub_mul(&coeffs, &q, &p.t);
            }
        }
        (c, coeffs)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Coefficients `x` over the inputs with `sum x_j input_j = v`, if `v` lies in the span.
    pub fn solve(&self, v: &SparseVec) -> Option<SparseVec> {
        assert!(self.track, "solve needs tracked coefficients");
        let (rem, coeffs) = self.reduce(v);
        rem.is_empty().then(|| sv_scale(&coeffs, &Int::from(-1)))
    }
}

/// Integer kernel basis of the map whose columns are given.
pub fn kernel_basis(columns: &[SparseVec]) -> Vec<SparseVec> {
    let mut e = Echelon::new(true);
    for c in columns {
        e.push(c.clone());
    }
    e.into_kernel()
}

/// Rank and the elementary divisors different from 1 of a sparse matrix given
/// by columns. Unit pivots are eliminated sparsely, the rest goes to dense SNF.
pub fn elementary_divisors(nrows: usize, columns: &[SparseVec]) -> (usize, Vec<Int>) {
    let ncols = columns.len();
    let mut rows: Vec<HashMap<usize, Int>> = vec![HashMap::new(); nrows];
    let mut col_rows: Vec<HashSet<usize>> = vec![HashSet::new(); ncols];
    for (j, col) in columns.iter().enumerate() {
        for (i, v) in col {
            rows[*i].insert(j, v.clone());
            col_rows[j].insert(*i);
        }
    }
    let zero = Int::from(0);
    let mut unit_rank = 0;
    let mut row_alive = vec![true; nrows];
    loop {
        let mut progress = false;
        let mut order: Vec<usize> = (0..ncols).filter(|j| !col_rows[*j].is_empty()).collect();
        order.sort_by_key(|j| col_rows[*j].len());
        for j in order {
            let mut pick: Option<usize> = None;
            for &i in &col_rows[j] {
                if is_unit(&rows[i][&j]) && pick.map_or(true, |p| rows[i].len() < rows[p].len()) {
                    pick = Some(i);
                }
            }
            let Some(pi) = pick else { continue };
            progress = true;
            unit_rank += 1;
            let prow = std::mem::take(&mut rows[pi]);
            row_alive[pi] = false;
            for k in prow.keys() {
                col_rows[*k].remove(&pi);
            }
            let pv = prow[&j].clone();
            let others: Vec<usize> = col_rows[j].iter().copied().collect();
            for i in others {
                let q = &rows[i][&j] * &pv;
                for (k, v) in &prow {
                    let e = rows[i].entry(*k).or_insert_with(|| Int::from(0));
                    *e -= &q * v;
                    if *e == zero {
                        rows[i].remove(k);
                        col_rows[*k].remove(&i);
                    } else {
                        col_rows[*k].insert(i);
                    }
                }
            }
            debug_assert!(col_rows[j].is_empty());
        }
        if !progress {
            break;
        }
    }
    let live_rows: Vec<usize> = (0..nrows).filter(|i| row_alive[*i] && !rows[*i].is_empty()).collect();
    let live_cols: Vec<usize> = (0..ncols).filter(|j| !col_rows[*j].is_empty()).collect();
    if live_rows.is_empty() {
        return (unit_rank, Vec::new());
    }
    let cpos: BTreeMap<usize, usize> = live_cols.iter().enumerate().map(|(a, b)| (*b, a)).collect();
    let mut m = IntMatrix::zeros(live_rows.len(), live_cols.len());
    for (a, &i) in live_rows.iter().enumerate() {
        for (k, v) in &rows[i] {
            m.set(a, cpos[k], v.clone());
        }
    }
    let s = snf(&m, false);
    let one = Int::from(1);
    let divisors = s.diag.iter().filter(|d| **d != zero && **d != one).cloned().collect();
    (unit_rank + s.rank, divisors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag_of(m: &IntMatrix) -> Vec<i64> {
        snf(m, false).diag.iter().map(|d| i64::try_from(d).unwrap()).collect()
    }

    #[test]
    fn snf_examples() {
        assert_eq!(diag_of(&IntMatrix::from_rows(&[vec![2, 0], vec![0, 3]])), vec![1, 6]);
        assert_eq!(diag_of(&IntMatrix::identity(3)), vec![1, 1, 1]);
        assert_eq!(diag_of(&IntMatrix::from_rows(&[vec![2, 4], vec![6, 8]])), vec![2, 4]);
    }

    #[test]
    fn snf_transforms() {
        let m = IntMatrix::from_rows(&[vec![4, 6, 2], vec![8, 3, 5], vec![0, 0, 7], vec![1, 1, 1]]);
        let s = snf(&m, true);
        let (u, ui, v) = (s.u.clone().unwrap(), s.u_inv.clone().unwrap(), s.v.clone().unwrap());
        assert_eq!(u.mul(&m).mul(&v), s.diagonal_matrix(4, 3));
        assert_eq!(u.mul(&ui), IntMatrix::identity(4));
    }

    #[test]
    fn echelon_kernel_and_solve() {
        // columns (1,2), (2,4), (0,3)
        let cols = vec![
            vec![(0, int(1)), (1, int(2))],
            vec![(0, int(2)), (1, int(4))],
            vec![(1, int(3))],
        ];
        let mut e = Echelon::new(true);
        for c in &cols {
            e.push(c.clone());
        }
        assert_eq!(e.rank(), 2);
        assert_eq!(e.kernel(), &[vec![(0, int(-2)), (1, int(1))]]);
        let x = e.solve(&vec![(0, int(1)), (1, int(5))]).unwrap();
        assert_eq!(x, vec![(0, int(1)), (2, int(1))]);
        assert!(e.solve(&vec![(1, int(1))]).is_none());
    }

    #[test]
    fn sparse_divisors() {
        let cols = vec![vec![(0, int(2))], vec![(1, int(3))], vec![(0, int(1)), (2, int(1))]];
        let (r, d) = elementary_divisors(3, &cols);
        assert_eq!(r, 3);
        assert_eq!(d, vec![int(6)]);
    }
}
