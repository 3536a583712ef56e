//! Finite groups given by a full multiplication table.
//!
//! Element `0` is always the identity. Tables are stored flat, row-major:
//! entry `g * order + h` holds `g·h`.

use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::report::CheckReport;

/// Index of a group element.
pub type Elem = usize;

pub const DEFAULT_ORDER_CAP: usize = 200;
pub const ORDER_CAP_ENV: &str = "CATGRP_ORDER_CAP";

/// Largest group order accepted by any constructor. Read once from
/// `CATGRP_ORDER_CAP`, falling back to [`DEFAULT_ORDER_CAP`].
pub fn order_cap() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        std::env::var(ORDER_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .filter(|&c: &usize| c > 0)
            .unwrap_or(DEFAULT_ORDER_CAP)
    })
}

pub(crate) fn check_cap(order: usize) -> Result<()> {
    let cap = order_cap();
    if order > cap {
        return Err(Error::OrderCap { order, cap });
    }
    Ok(())
}

struct GroupData {
    name: String,
    order: usize,
    table: Vec<Elem>,
    inverses: Vec<Elem>,
}

/// A validated finite group. Cloning is cheap.
#[derive(Clone)]
pub struct FiniteGroup {
    data: Arc<GroupData>,
}

impl FiniteGroup {
    /// Builds a group from table rows, validating every axiom.
    pub fn from_table(name: impl Into<String>, rows: &[Vec<Elem>]) -> Result<Self> {
        let flat = flatten_square(rows)?;
        Self::from_flat(name, rows.len(), flat)
    }

    pub(crate) fn from_flat(name: impl Into<String>, order: usize, table: Vec<Elem>) -> Result<Self> {
        if order == 0 {
            return Err(Error::Malformed("a group needs at least one element".into()));
        }
        check_cap(order)?;
        if table.len() != order * order || table.iter().any(|&x| x >= order) {
            return Err(Error::Malformed(format!("table is not a {order}x{order} index table")));
        }
        let report = validate_flat(order, &table);
        if !report.passed {
            return Err(Error::NotAGroup(report));
        }
        let inverses = (0..order)
            .map(|g| {
                (0..order)
                    .find(|&h| table[g * order + h] == 0)
                    .expect("validated table has inverses")
            })
            .collect();
        Ok(FiniteGroup {
            data: Arc::new(GroupData {
                name: name.into(),
                order,
                table,
                inverses,
            }),
        })
    }

    pub fn trivial() -> Self {
        Self::from_flat("1", 1, vec![0]).expect("trivial group")
    }

    pub fn with_name(&self, name: impl Into<String>) -> Self {
        FiniteGroup {
            data: Arc::new(GroupData {
                name: name.into(),
                order: self.data.order,
                table: self.data.table.clone(),
                inverses: self.data.inverses.clone(),
            }),
        }
    }

    pub fn name(&self) -> &str {
        &self.data.name
    }

    pub fn order(&self) -> usize {
        self.data.order
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.data.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.data.table[a * self.data.order + b]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.data.inverses[a]
    }

    /// `g·x·g⁻¹`
    #[inline]
    pub fn conjugate(&self, g: Elem, x: Elem) -> Elem {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn row(&self, a: Elem) -> &[Elem] {
        let n = self.data.order;
        &self.data.table[a * n..(a + 1) * n]
    }

    pub fn table(&self) -> &[Elem] {
        &self.data.table
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.elements().map(|g| self.row(g).to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (a + 1..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, g: Elem) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut p: Vec<usize> = self.elements().map(|g| self.element_order(g)).collect();
        p.sort_unstable();
        p
    }

    /// Same table, regardless of name.
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.table == other.data.table
    }
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.same_table(other)
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name(), self.order())
    }
}

fn flatten_square(rows: &[Vec<Elem>]) -> Result<Vec<Elem>> {
    let n = rows.len();
    if n == 0 {
        return Err(Error::Malformed("empty table".into()));
    }
    let mut flat = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Malformed(format!(
                "row {i} has length {}, expected {n}",
                row.len()
            )));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= n) {
            return Err(Error::Malformed(format!("entry {bad} in row {i} is out of range 0..{n}")));
        }
        flat.extend_from_slice(row);
    }
    Ok(flat)
}

/// Checks the group axioms of a square table: `0` is a two-sided identity,
/// every element has a two-sided inverse, and all `n³` triples associate.
///
/// Witnesses are `[g]` for identity and inverse failures and `[a, b, c]`
/// for associativity.
pub fn validate_group(rows: &[Vec<Elem>]) -> Result<CheckReport> {
    let flat = flatten_square(rows)?;
    Ok(validate_flat(rows.len(), &flat))
}

pub(crate) fn validate_flat(n: usize, t: &[Elem]) -> CheckReport {
    const NAME: &str = "group_axioms";
    for g in 0..n {
        if t[g] != g || t[g * n] != g {
            return CheckReport::fail(
                NAME,
                vec![g],
                format!("element 0 is not a two-sided identity at {g}"),
            );
        }
    }
    for g in 0..n {
        if !(0..n).any(|h| t[g * n + h] == 0 && t[h * n + g] == 0) {
            return CheckReport::fail(NAME, vec![g], format!("element {g} has no two-sided inverse"));
        }
    }
    for a in 0..n {
        for b in 0..n {
            let ab = t[a * n + b];
            for c in 0..n {
                if t[ab * n + c] != t[a * n + t[b * n + c]] {
                    return CheckReport::fail(
                        NAME,
                        vec![a, b, c],
                        format!("({a}·{b})·{c} != {a}·({b}·{c})"),
                    );
                }
            }
        }
    }
    CheckReport::pass(NAME, format!("order {n}: identity, inverses and {} associativity triples hold", n * n * n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zn(n: usize) -> Vec<Vec<Elem>> {
        (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect()
    }

    #[test]
    fn z2_and_z3_validate() {
        assert!(validate_group(&[vec![0, 1], vec![1, 0]]).unwrap().passed);
        assert!(validate_group(&zn(3)).unwrap().passed);
    }

    #[test]
    fn missing_inverse_is_witnessed() {
        let r = validate_group(&[vec![0, 1], vec![1, 1]]).unwrap();
        assert!(!r.passed);
        assert_eq!(r.witness, Some(vec![1]));
    }

    #[test]
    fn non_associative_loop_is_witnessed() {
        // A Latin square with identity 0 that is not associative (order 5 loop).
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let r = validate_group(&rows).unwrap();
        assert!(!r.passed);
        let w = r.witness.unwrap();
        let (a, b, c) = (w[0], w[1], w[2]);
        assert_ne!(rows[rows[a][b]][c], rows[a][rows[b][c]]);
    }

    #[test]
    fn malformed_tables_are_errors() {
        assert!(matches!(validate_group(&[vec![0, 1]]), Err(Error::Malformed(_))));
        assert!(matches!(validate_group(&[vec![0, 2], vec![1, 0]]), Err(Error::Malformed(_))));
        assert!(matches!(validate_group(&[]), Err(Error::Malformed(_))));
    }

    #[test]
    fn non_identity_zero_rejected() {
        let r = validate_group(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert!(!r.passed);
        assert_eq!(r.witness, Some(vec![0]));
    }

    #[test]
    fn order_cap_enforced() {
        let n = order_cap() + 1;
        let flat: Vec<Elem> = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        assert!(matches!(FiniteGroup::from_flat("big", n, flat), Err(Error::OrderCap { .. })));
    }

    #[test]
    fn element_orders() {
        let g = FiniteGroup::from_table("Z6", &zn(6)).unwrap();
        assert_eq!(g.order_profile(), vec![1, 2, 3, 3, 6, 6]);
        assert_eq!(g.inv(2), 4);
        assert!(g.is_abelian());
    }
}
