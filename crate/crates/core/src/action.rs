use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::report::CheckReport;
use crate::subgroup::Subgroup;

/// What a group acts on: a bare finite set `0..n`, or the elements of a group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Carrier {
    Set(usize),
    Group(FiniteGroup),
}

impl Carrier {
    pub fn size(&self) -> usize {
        match self {
            Carrier::Set(n) => *n,
            Carrier::Group(g) => g.order(),
        }
    }

    pub fn as_group(&self) -> Option<&FiniteGroup> {
        match self {
            Carrier::Group(g) => Some(g),
            Carrier::Set(_) => None,
        }
    }
}

/// A left action table: `act(g, x)` is `ᵍx`.
///
/// Construction only checks arities; the action laws are checked by
/// [`crate::group_objects::check_group_action`] and, for group carriers,
/// [`GroupAction::check_automorphisms`].
#[derive(Clone, Debug)]
pub struct GroupAction {
    group: FiniteGroup,
    carrier: Carrier,
    table: Vec<Elem>,
}

impl GroupAction {
    pub fn new(group: &FiniteGroup, carrier: Carrier, rows: &[Vec<Elem>]) -> Result<Self> {
        let n = carrier.size();
        if rows.len() != group.order() {
            return Err(Error::Malformed(format!(
                "action has {} rows but the group {} has order {}",
                rows.len(),
                group.name(),
                group.order()
            )));
        }
        let mut table = Vec::with_capacity(rows.len() * n);
        for (g, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Malformed(format!("action row {g} has length {}, expected {n}", row.len())));
            }
            if let Some(&bad) = row.iter().find(|&&x| x >= n) {
                return Err(Error::Malformed(format!("action row {g} has entry {bad} out of range 0..{n}")));
            }
            table.extend_from_slice(row);
        }
        Ok(GroupAction {
            group: group.clone(),
            carrier,
            table,
        })
    }

    pub(crate) fn from_fn(group: &FiniteGroup, carrier: Carrier, f: impl Fn(Elem, Elem) -> Elem) -> Self {
        let n = carrier.size();
        let table = group
            .elements()
            .flat_map(|g| (0..n).map(move |x| (g, x)))
            .map(|(g, x)| f(g, x))
            .collect();
        GroupAction {
            group: group.clone(),
            carrier,
            table,
        }
    }

    pub fn trivial(group: &FiniteGroup, carrier: Carrier) -> Self {
        Self::from_fn(group, carrier, |_, x| x)
    }

    /// `ᵍx = g·x` on the group's own elements.
    pub fn left_translation(group: &FiniteGroup) -> Self {
        Self::from_fn(group, Carrier::Group(group.clone()), |g, x| group.mul(g, x))
    }

    /// `ᵍx = g·x·g⁻¹`
    pub fn conjugation(group: &FiniteGroup) -> Self {
        Self::from_fn(group, Carrier::Group(group.clone()), |g, x| group.conjugate(g, x))
    }

    /// Conjugation of the parent group on a subgroup, in the subgroup's
    /// induced indexing. Only an action when the subgroup is normal.
    pub fn conjugation_on(sub: &Subgroup) -> Result<Self> {
        let parent = sub.parent();
        let mut table = Vec::with_capacity(parent.order() * sub.order());
        for g in parent.elements() {
            for k in 0..sub.order() {
                let c = parent.conjugate(g, sub.to_parent(k));
                let idx = sub
                    .from_parent(c)
                    .ok_or(Error::NotNormal { witness: vec![g, sub.to_parent(k)] })?;
                table.push(idx);
            }
        }
        Ok(GroupAction {
            group: parent.clone(),
            carrier: Carrier::Group(sub.group().clone()),
            table,
        })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn carrier(&self) -> &Carrier {
        &self.carrier
    }

    #[inline]
    pub fn act(&self, g: Elem, x: Elem) -> Elem {
        self.table[g * self.carrier.size() + x]
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        let n = self.carrier.size();
        self.table.chunks(n.max(1)).take(self.group.order()).map(|r| r.to_vec()).collect()
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    /// Copy with the single entry `ᵍx` replaced by `value`.
    pub fn with_entry(&self, g: Elem, x: Elem, value: Elem) -> Result<Self> {
        let n = self.carrier.size();
        if g >= self.group.order() || x >= n || value >= n {
            return Err(Error::Malformed(format!("entry ({g}, {x}) = {value} is out of range")));
        }
        let mut out = self.clone();
        out.table[g * n + x] = value;
        Ok(out)
    }

    pub fn is_trivial(&self) -> bool {
        let n = self.carrier.size();
        self.table.iter().enumerate().all(|(i, &x)| x == i % n)
    }

    /// Each row must be an automorphism of the carrier group.
    ///
    /// Witness `[g]` for a non-bijective row, `[g, x, y]` when
    /// `ᵍ(x·y) != ᵍx·ᵍy`.
    pub fn check_automorphisms(&self) -> CheckReport {
        const NAME: &str = "action_by_automorphisms";
        let Carrier::Group(c) = &self.carrier else {
            return CheckReport::fail(NAME, vec![], "carrier is a bare set, not a group");
        };
        for g in self.group.elements() {
            let mut seen = vec![false; c.order()];
            for x in c.elements() {
                let y = self.act(g, x);
                if std::mem::replace(&mut seen[y], true) {
                    return CheckReport::fail(NAME, vec![g], format!("row {g} is not a bijection"));
                }
            }
            for x in c.elements() {
                for y in c.elements() {
                    let lhs = self.act(g, c.mul(x, y));
                    let rhs = c.mul(self.act(g, x), self.act(g, y));
                    if lhs != rhs {
                        return CheckReport::fail(
                            NAME,
                            vec![g, x, y],
                            format!("{g} acting on {x}·{y} gives {lhs}, but the product of the actions is {rhs}"),
                        );
                    }
                }
            }
        }
        CheckReport::pass(
            NAME,
            format!("all {} rows are automorphisms of {}", self.group.order(), c.name()),
        )
    }
}
