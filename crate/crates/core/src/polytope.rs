//! Orbit polytopes `Conv(v^g : g ∈ G)` in exact rational arithmetic.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::group::GenGroup;
use crate::orbit::{orbit, orbit_size};
use crate::perm::Permutation;

/// A point with reduced rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    coords: Vec<BigRational>,
}

impl RationalPoint {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RationalPoint { coords }
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Self::new(xs.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// Coordinate permutation: the `i`-th coordinate moves to position `i^g`.
    pub fn permuted(&self, g: &Permutation) -> Self {
        let mut out = self.coords.clone();
        for (i, x) in self.coords.iter().enumerate() {
            out[g.apply(i)] = x.clone();
        }
        RationalPoint { coords: out }
    }

    pub fn norm2(&self) -> BigRational {
        self.coords.iter().map(|x| x * x).fold(BigRational::zero(), |a, b| a + b)
    }

    fn minus(&self, other: &Self) -> Vec<BigRational> {
        self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect()
    }
}

impl fmt::Display for RationalPoint {
    /// Comma separated `p/q` (integers without a denominator).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for RationalPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|t| BigRational::from_str(t.trim()).map_err(|e| Error::Parse(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        if coords.is_empty() {
            return Err(Error::Parse("empty point".into()));
        }
        Ok(RationalPoint { coords })
    }
}

fn check_degree(group: &GenGroup, v: &RationalPoint) -> Result<()> {
    if group.degree() != v.dim() {
        return Err(Error::DegreeMismatch { expected: v.dim(), found: group.degree() });
    }
    Ok(())
}

/// All distinct images of `v`, in breadth-first order from `v`.
pub fn orbit_points(group: &GenGroup, v: &RationalPoint, cap: usize) -> Result<Vec<RationalPoint>> {
    check_degree(group, v)?;
    Ok(orbit(group.generators(), v.clone(), |p, g| p.permuted(g), cap)?.points)
}

/// Orbit length without storing points when at most one coordinate value repeats.
pub fn orbit_count(group: &GenGroup, v: &RationalPoint, cap: usize) -> Result<u128> {
    check_degree(group, v)?;
    let n = v.dim();
    let multiplicity = |i: usize| v.coords.iter().filter(|x| **x == v.coords[i]).count();
    let repeated: Vec<&BigRational> = (0..n).filter(|&i| multiplicity(i) > 1).map(|i| &v.coords[i]).collect();
    if repeated.iter().all(|x| *x == repeated[0]) {
        let singles: Vec<usize> = (0..n).filter(|&i| multiplicity(i) == 1).collect();
        return Ok(group.order() / group.iterated_stabilizer(&singles)?.order());
    }
    let ranks: Vec<u32> = v
        .coords
        .iter()
        .map(|x| v.coords.iter().filter(|y| *y < x).count() as u32)
        .collect();
    let act = |t: &Vec<u32>, g: &Permutation| {
        let mut out = t.clone();
        for (i, x) in t.iter().enumerate() {
            out[g.apply(i)] = *x;
        }
        out
    };
    Ok(orbit_size(group.generators(), ranks, act, cap)? as u128)
}

/// Checks that the points are distinct and lie on a common sphere about their
/// centroid, so each one is a vertex of their convex hull.
pub fn check_convex_position(points: &[RationalPoint]) -> Result<()> {
    let Some(first) = points.first() else {
        return Err(Error::invalid("no points"));
    };
    let n = first.dim();
    if points.iter().any(|p| p.dim() != n) {
        return Err(Error::invalid("points of different dimensions"));
    }
    let count = BigRational::from_integer(points.len().into());
    let centroid: Vec<BigRational> = (0..n)
        .map(|j| points.iter().map(|p| p.coords[j].clone()).fold(BigRational::zero(), |a, b| a + b) / &count)
        .collect();
    let c = RationalPoint::new(centroid);
    let r = RationalPoint::new(first.minus(&c)).norm2();
    let mut sorted: Vec<&RationalPoint> = points.iter().collect();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::invalid("repeated point"));
    }
    if points.iter().any(|p| RationalPoint::new(p.minus(&c)).norm2() != r) {
        return Err(Error::invariant("points are not on a common sphere"));
    }
    Ok(())
}

/// Integer entries for the fraction-free tableau; `None` signals overflow.
trait Entry: Clone + Ord + Sized {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_big(x: &BigInt) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn div_exact(&self, o: &Self) -> Self;
}

impl Entry for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        x.to_i128()
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

impl Entry for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_big(x: &BigInt) -> Option<Self> {
        Some(x.clone())
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn div_exact(&self, o: &Self) -> Self {
        self / o
    }
}

/// Fraction-free simplex tableau: true entries are `t[i][j] / den`.
struct Tableau<T> {
    t: Vec<Vec<T>>,
    den: T,
    basis: Vec<usize>,
}

impl<T: Entry> Tableau<T> {
    fn pivot(&mut self, p: usize, q: usize) -> Option<()> {
        let piv = self.t[p][q].clone();
        let row_p = self.t[p].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == p {
                continue;
            }
            let f = row[q].clone();
            for (x, y) in row.iter_mut().zip(&row_p) {
                *x = piv.mul(x)?.sub(&f.mul(y)?)?.div_exact(&self.den);
            }
        }
        self.den = piv;
        self.basis[p] = q;
        Some(())
    }
}

/// Whether `target` is a nonnegative combination of `gens`, by phase one of the
/// simplex method with Bland's rule.
fn in_cone(gens: &[Vec<BigInt>], target: &[BigInt]) -> bool {
    in_cone_with::<i128>(gens, target).unwrap_or_else(|| in_cone_with::<BigInt>(gens, target).expect("exact"))
}

fn in_cone_with<T: Entry>(gens: &[Vec<BigInt>], target: &[BigInt]) -> Option<bool> {
    let rows: Vec<usize> = (0..target.len())
        .filter(|&i| !target[i].is_zero() || gens.iter().any(|g| !g[i].is_zero()))
        .collect();
    let m = rows.len();
    let k = gens.len();
    let width = k + m + 1;
    let zero = T::zero();
    let mut t = Vec::with_capacity(m + 1);
    for (r, &i) in rows.iter().enumerate() {
        let flip = target[i].is_negative();
        let sign = |x: &BigInt| T::from_big(&if flip { -x } else { x.clone() });
        let mut row: Vec<T> = gens.iter().map(|g| sign(&g[i])).collect::<Option<_>>()?;
        row.extend((0..m).map(|a| if a == r { T::one() } else { T::zero() }));
        row.push(sign(&target[i])?);
        t.push(row);
    }
    // objective: sum of artificials, expressed in the nonbasic columns
    let mut obj = vec![T::zero(); width];
    for row in &t {
        for j in (0..k).chain([width - 1]) {
            obj[j] = obj[j].sub(&row[j])?;
        }
    }
    t.push(obj);
    let mut tab = Tableau { t, den: T::one(), basis: (k..k + m).collect() };
    loop {
        let Some(q) = (0..k + m).find(|&j| tab.t[m][j] < zero) else {
            break;
        };
        let mut best: Option<usize> = None;
        for i in 0..m {
            if tab.t[i][q] <= zero {
                continue;
            }
            best = Some(match best {
                None => i,
                Some(b) => {
                    // compare rhs_i / a_iq with rhs_b / a_bq
                    let lhs = tab.t[i][width - 1].mul(&tab.t[b][q])?;
                    let rhs = tab.t[b][width - 1].mul(&tab.t[i][q])?;
                    if lhs < rhs || (lhs == rhs && tab.basis[i] < tab.basis[b]) {
                        i
                    } else {
                        b
                    }
                }
            });
        }
        // phase one is bounded below by zero, so a positive entry always exists
        let p = best.expect("phase one unbounded");
        tab.pivot(p, q)?;
    }
    Some(tab.t[m][width - 1] == zero)
}

fn common_denominator(points: &[&RationalPoint]) -> BigInt {
    points
        .iter()
        .flat_map(|p| p.coords.iter())
        .fold(<BigInt as One>::one(), |acc, x| acc.lcm(x.denom()))
}

fn scaled(x: &[BigRational], den: &BigInt) -> Vec<BigInt> {
    x.iter().map(|c| (c * BigRational::from_integer(den.clone())).to_integer()).collect()
}

/// Whether `[points[u], points[v]]` is an edge of the hull of `points`.
///
/// The points must be in convex position (see [`check_convex_position`]). The
/// segment is an edge iff `v − u` is not in the cone spanned by `w − u` for the
/// other points `w`.
pub fn is_edge(u: usize, v: usize, points: &[RationalPoint]) -> Result<bool> {
    if u >= points.len() || v >= points.len() {
        return Err(Error::invalid("point index out of range"));
    }
    if u == v || points[u] == points[v] {
        return Err(Error::invalid("edge test needs two distinct points"));
    }
    let all: Vec<&RationalPoint> = points.iter().collect();
    let den = common_denominator(&all);
    let pu = &points[u];
    let gens: Vec<Vec<BigInt>> = points
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != u && i != v)
        .map(|(_, w)| scaled(&w.minus(pu), &den))
        .collect();
    Ok(!in_cone(&gens, &scaled(&points[v].minus(pu), &den)))
}

/// Edge neighbours of `points[u]`, testing the other points on `threads` threads.
pub fn neighbours(u: usize, points: &[RationalPoint], threads: usize) -> Result<Vec<usize>> {
    let others: Vec<usize> = (0..points.len()).filter(|&i| i != u).collect();
    let threads = threads.max(1);
    let chunk = others.len().div_ceil(threads).max(1);
    let results: Vec<Result<Vec<usize>>> = std::thread::scope(|s| {
        let handles: Vec<_> = others
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    let mut found = Vec::new();
                    for &w in part {
                        if is_edge(u, w, points)? {
                            found.push(w);
                        }
                    }
                    Ok(found)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("edge worker panicked")).collect()
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::symmetric_group;

    fn square() -> Vec<RationalPoint> {
        [[0, 0], [1, 0], [1, 1], [0, 1]].iter().map(|p| RationalPoint::from_ints(p)).collect()
    }

    #[test]
    fn square_edges() {
        let sq = square();
        check_convex_position(&sq).unwrap();
        assert!(is_edge(0, 1, &sq).unwrap());
        assert!(is_edge(3, 0, &sq).unwrap());
        assert!(!is_edge(0, 2, &sq).unwrap());
        assert!(!is_edge(1, 3, &sq).unwrap());
        assert!(is_edge(0, 0, &sq).is_err());
    }

    #[test]
    fn hexagon() {
        let pts = orbit_points(&symmetric_group(3), &RationalPoint::from_ints(&[1, 2, 3]), 100).unwrap();
        assert_eq!(pts.len(), 6);
        check_convex_position(&pts).unwrap();
        for u in 0..6 {
            assert_eq!(neighbours(u, &pts, 2).unwrap().len(), 2);
        }
    }

    #[test]
    fn two_points() {
        let pts = orbit_points(&symmetric_group(2), &RationalPoint::from_ints(&[1, 2]), 10).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(is_edge(0, 1, &pts).unwrap());
    }

    #[test]
    fn rational_round_trip() {
        let p: RationalPoint = "1/2, -3, 4/6".parse().unwrap();
        assert_eq!(p.to_string(), "1/2,-3,2/3");
        assert_eq!(p.to_string().parse::<RationalPoint>().unwrap(), p);
        assert!("1/x".parse::<RationalPoint>().is_err());
    }

    #[test]
    fn off_sphere_rejected() {
        let mut pts = square();
        pts.push(RationalPoint::new(vec![
            BigRational::new(1.into(), 2.into()),
            BigRational::new(1.into(), 2.into()),
        ]));
        assert!(check_convex_position(&pts).is_err());
    }
}
