//! Builtin groups.
//!
//! Element enumerations:
//! - `cyclic(n)`: `k` is the residue `k mod n`.
//! - `symmetric(n)`, `alternating(n)`: permutations of `0..n` (as image
//!   vectors) in lexicographic order; product `(σ·τ)(i) = σ(τ(i))`.
//! - `dihedral(n)`: index `j*n + k` is `r^k s^j`, with `s r s = r⁻¹`.
//! - `quaternion8()`: `1, -1, i, -i, j, -j, k, -k`.

use std::collections::HashMap;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::group::{check_cap, Elem, FiniteGroup};
use crate::product::direct_product;

pub const MAX_SYMMETRIC_DEGREE: usize = 8;

pub fn cyclic(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::Unsupported("cyclic group order must be at least 1".into()));
    }
    check_cap(n)?;
    let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    FiniteGroup::from_flat(format!("Z{n}"), n, table)
}

pub fn dihedral(n: usize) -> Result<FiniteGroup> {
    if n == 0 {
        return Err(Error::Unsupported("dihedral parameter must be at least 1".into()));
    }
    let order = 2 * n;
    check_cap(order)?;
    let mut table = Vec::with_capacity(order * order);
    for x in 0..order {
        let (b, a) = (x / n, x % n);
        for y in 0..order {
            let (d, c) = (y / n, y % n);
            let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
            table.push(((b + d) % 2) * n + rot);
        }
    }
    FiniteGroup::from_flat(format!("D{n}"), order, table)
}

fn permutation_group(name: String, perms: Vec<Vec<u8>>) -> Result<FiniteGroup> {
    let order = perms.len();
    check_cap(order)?;
    let index: HashMap<&[u8], Elem> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut table = Vec::with_capacity(order * order);
    let mut buf = vec![0u8; perms[0].len()];
    for s in &perms {
        for t in &perms {
            for (i, slot) in buf.iter_mut().enumerate() {
                *slot = s[t[i] as usize];
            }
            table.push(index[buf.as_slice()]);
        }
    }
    FiniteGroup::from_flat(name, order, table)
}

fn degree_check(kind: &str, n: usize) -> Result<()> {
    if n == 0 || n > MAX_SYMMETRIC_DEGREE {
        return Err(Error::Unsupported(format!(
            "{kind} degree must lie in 1..={MAX_SYMMETRIC_DEGREE}, got {n}"
        )));
    }
    let order: usize = (1..=n).product();
    check_cap(order)
}

pub fn symmetric(n: usize) -> Result<FiniteGroup> {
    degree_check("symmetric", n)?;
    let perms = (0..n as u8).permutations(n).collect();
    permutation_group(format!("S{n}"), perms)
}

fn is_even(p: &[u8]) -> bool {
    let inversions = p
        .iter()
        .enumerate()
        .flat_map(|(i, a)| p[i + 1..].iter().filter(move |b| *b < a))
        .count();
    inversions % 2 == 0
}

pub fn alternating(n: usize) -> Result<FiniteGroup> {
    degree_check("alternating", n)?;
    let perms = (0..n as u8).permutations(n).filter(|p| is_even(p)).collect();
    permutation_group(format!("A{n}"), perms)
}

/// Index of a permutation of `0..n` inside `symmetric(n)`.
pub fn permutation_index(perm: &[u8]) -> Option<Elem> {
    let n = perm.len();
    (0..n as u8).permutations(n).position(|p| p == perm)
}

pub fn quaternion8() -> Result<FiniteGroup> {
    // Unit products: (negate?, unit) for 1, i, j, k.
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let mut table = Vec::with_capacity(64);
    for x in 0..8 {
        for y in 0..8 {
            let (neg, u) = UNIT[x / 2][y / 2];
            let sign = (x % 2) ^ (y % 2) ^ usize::from(neg);
            table.push(2 * u + sign);
        }
    }
    FiniteGroup::from_flat("Q8", 8, table)
}

/// Looks up a builtin by its DSL keyword.
pub fn builtin(kind: &str, param: Option<usize>) -> Result<FiniteGroup> {
    let need = |k: &str| {
        param.ok_or_else(|| Error::Unsupported(format!("builtin {k} needs a parameter")))
    };
    match kind {
        "cyclic" => cyclic(need(kind)?),
        "dihedral" => dihedral(need(kind)?),
        "symmetric" => symmetric(need(kind)?),
        "alternating" => alternating(need(kind)?),
        "quaternion8" => match param {
            None => quaternion8(),
            Some(_) => Err(Error::Unsupported("quaternion8 takes no parameter".into())),
        },
        other => Err(Error::Unsupported(format!("unknown builtin {other:?}"))),
    }
}

pub const BUILTIN_KINDS: [&str; 5] = ["cyclic", "dihedral", "symmetric", "alternating", "quaternion8"];

/// The test catalog: Z1..Z8, Z2×Z2, Z2×Z4, Z2×Z2×Z2, S3, D4, Q8, D5, A4.
pub fn catalog() -> Vec<FiniteGroup> {
    let z = |n| cyclic(n).expect("cyclic builtin");
    let mut out: Vec<FiniteGroup> = (1..=8).map(z).collect();
    out.push(direct_product(&z(2), &z(2)).group);
    out.push(direct_product(&z(2), &z(4)).group);
    let z2z2 = direct_product(&z(2), &z(2)).group;
    out.push(direct_product(&z2z2, &z(2)).group.with_name("Z2xZ2xZ2"));
    out.push(symmetric(3).expect("S3"));
    out.push(dihedral(4).expect("D4"));
    out.push(quaternion8().expect("Q8"));
    out.push(dihedral(5).expect("D5"));
    out.push(alternating(4).expect("A4"));
    out
}
