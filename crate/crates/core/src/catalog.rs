//! Built-in groups. Every entry is checked against its known order when loaded.

use crate::error::{Error, Result};
use crate::group::{cyclic_group, symmetric_group, GenGroup};
use crate::perm::Permutation;

const M24_GENS: [&str; 3] = [
    "(1,2,3,4,5,6,7,8,9,10,11,12,13,14,15,16,17,18,19,20,21,22,23)",
    "(3,17,10,7,9)(4,13,14,19,5)(8,18,11,12,23)(15,20,22,21,16)",
    "(1,24)(2,23)(3,12)(4,16)(5,18)(6,10)(7,20)(8,14)(9,21)(11,17)(13,22)(15,19)",
];

const M12_GENS: [&str; 3] = [
    "(1,2,3,4,5,6,7,8,9,10,11)",
    "(3,7,11,8)(4,10,5,6)",
    "(1,12)(2,11)(3,6)(4,8)(5,9)(7,10)",
];

/// Generators of M10 acting on 10 points.
pub const M10_GENS: [&str; 2] = ["(1,9,6,7,5)(2,10,3,8,4)", "(1,10,7,8)(2,9,4,6)"];

pub const MATHIEU: [&str; 6] = ["M11", "M12", "M21", "M22", "M23", "M24"];

fn checked(name: &str, g: GenGroup, order: u128) -> Result<GenGroup> {
    let found = g.order();
    if found != order {
        return Err(Error::invariant(format!("catalog group {name} has order {found}, expected {order}")));
    }
    Ok(g)
}

/// Point stabilizer of the last point, restricted to the remaining points.
fn last_point_stabilizer(g: &GenGroup) -> Result<GenGroup> {
    let n = g.degree();
    g.iterated_stabilizer(&[n - 1])?.restrict(n - 1)
}

pub fn mathieu(m: usize) -> Result<GenGroup> {
    match m {
        10 => checked("M10", GenGroup::from_cycles(10, &M10_GENS)?, 720),
        11 => checked("M11", GenGroup::from_cycles(11, &M12_GENS[..2])?, 7920),
        12 => checked("M12", GenGroup::from_cycles(12, &M12_GENS)?, 95040),
        24 => checked("M24", GenGroup::from_cycles(24, &M24_GENS)?, 244823040),
        23 => checked("M23", last_point_stabilizer(&mathieu(24)?)?, 10200960),
        22 => checked("M22", last_point_stabilizer(&mathieu(23)?)?, 443520),
        21 => checked("M21", last_point_stabilizer(&mathieu(22)?)?, 20160),
        _ => Err(Error::invalid(format!("no Mathieu group M{m} in the catalog"))),
    }
}

/// Dihedral group of order `2n` acting on an `n`-gon.
pub fn dihedral_group(n: usize) -> GenGroup {
    let r = Permutation::from_images((0..n as u32).map(|i| (i + 1) % n as u32).collect()).unwrap();
    let s = Permutation::from_images((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect()).unwrap();
    GenGroup::new(n, vec![r, s]).unwrap()
}

/// Direct product of cyclic groups acting on disjoint point blocks.
pub fn abelian_group(factors: &[usize]) -> GenGroup {
    let degree: usize = factors.iter().sum();
    let mut gens = Vec::new();
    let mut offset = 0;
    for &f in factors {
        let imgs: Vec<u32> = (0..degree)
            .map(|i| if i >= offset && i < offset + f { (offset + (i - offset + 1) % f) as u32 } else { i as u32 })
            .collect();
        gens.push(Permutation::from_images(imgs).unwrap());
        offset += f;
    }
    GenGroup::new(degree.max(1), gens).unwrap()
}

pub fn alternating_group(n: usize) -> GenGroup {
    let mut gens = Vec::new();
    for k in 2..n {
        gens.push(Permutation::from_cycles(&format!("(1,2,{})", k + 1), n).unwrap());
    }
    GenGroup::new(n, gens).unwrap()
}

/// Quaternion group in its regular representation on 8 points.
pub fn quaternion_group() -> GenGroup {
    GenGroup::from_cycles(8, &["(1,2,3,4)(5,6,7,8)", "(1,5,3,7)(2,8,4,6)"]).unwrap()
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Looks up a group by name: `M10`..`M24`, `S<n>`, `A<n>`, `C<n>`/`Z<n>`,
/// `D<n>` (order `2n`), `Q8`, and products like `Z2xZ2`.
pub fn by_name(name: &str) -> Result<GenGroup> {
    let bad = || Error::invalid(format!("unknown catalog group {name:?}"));
    if name.contains('x') {
        let factors = name
            .split('x')
            .map(|f| {
                f.strip_prefix('Z').or_else(|| f.strip_prefix('C')).and_then(|n| n.parse::<usize>().ok()).ok_or_else(bad)
            })
            .collect::<Result<Vec<_>>>()?;
        let order: u128 = factors.iter().map(|&f| f as u128).product();
        return checked(name, abelian_group(&factors), order);
    }
    if name == "Q8" {
        return checked(name, quaternion_group(), 8);
    }
    let (head, num) = name.split_at(1);
    let n: usize = num.parse().map_err(|_| bad())?;
    if n == 0 {
        return Err(bad());
    }
    match head {
        "M" => mathieu(n),
        "S" => checked(name, symmetric_group(n), factorial(n)),
        "A" if n >= 3 => checked(name, alternating_group(n), factorial(n) / 2),
        "C" | "Z" => checked(name, cyclic_group(n), n as u128),
        "D" if n >= 3 => checked(name, dihedral_group(n), 2 * n as u128),
        _ => Err(bad()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mathieu_orders() {
        assert_eq!(mathieu(10).unwrap().order(), 720);
        assert_eq!(mathieu(11).unwrap().order(), 7920);
        assert_eq!(mathieu(12).unwrap().order(), 95040);
        assert_eq!(mathieu(21).unwrap().order(), 20160);
        assert_eq!(mathieu(24).unwrap().order(), 244823040);
    }

    #[test]
    fn small_names() {
        assert_eq!(by_name("S3").unwrap().order(), 6);
        assert_eq!(by_name("A4").unwrap().order(), 12);
        assert_eq!(by_name("D4").unwrap().order(), 8);
        assert_eq!(by_name("Z2xZ2").unwrap().order(), 4);
        assert_eq!(by_name("C12").unwrap().order(), 12);
        assert!(by_name("X9").is_err());
    }
}
