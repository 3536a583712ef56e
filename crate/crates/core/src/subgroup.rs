use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::hom::Hom;
use crate::report::CheckReport;

/// A subgroup with its induced group.
///
/// Members are sorted, so the parent identity `0` maps to induced index `0`
/// and induced index `i` is the `i`-th smallest member.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: FiniteGroup,
    members: Vec<Elem>,
    group: FiniteGroup,
    position: Vec<Option<Elem>>,
}

impl Subgroup {
    /// Builds the subgroup on exactly these members, rejecting sets that
    /// are not closed under products and inverses.
    pub fn from_members(parent: &FiniteGroup, members: impl IntoIterator<Item = Elem>, name: impl Into<String>) -> Result<Self> {
        let members: Vec<Elem> = members.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
        if members.first() != Some(&0) {
            return Err(Error::Malformed("a subgroup must contain the identity".into()));
        }
        if let Some(&bad) = members.iter().find(|&&x| x >= parent.order()) {
            return Err(Error::Malformed(format!("member {bad} is out of range")));
        }
        let mut position = vec![None; parent.order()];
        for (i, &m) in members.iter().enumerate() {
            position[m] = Some(i);
        }
        let k = members.len();
        let mut table = Vec::with_capacity(k * k);
        for &a in &members {
            for &b in &members {
                let p = parent.mul(a, b);
                let idx = position[p].ok_or_else(|| {
                    Error::Malformed(format!("members are not closed: {a}·{b} = {p} is missing"))
                })?;
                table.push(idx);
            }
        }
        let group = FiniteGroup::from_flat(name, k, table)?;
        Ok(Subgroup {
            parent: parent.clone(),
            members,
            group,
            position,
        })
    }

    /// Subgroup generated by `gens`.
    pub fn generated_by(parent: &FiniteGroup, gens: &[Elem]) -> Result<Self> {
        let members = closure(parent, gens);
        let name = format!("<{}>", gens.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(","));
        Subgroup::from_members(parent, members, name)
    }

    pub fn whole(parent: &FiniteGroup) -> Self {
        Subgroup {
            parent: parent.clone(),
            members: parent.elements().collect(),
            group: parent.clone(),
            position: parent.elements().map(Some).collect(),
        }
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    /// The induced group, indexed by position in `members`.
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.position.get(x).is_some_and(|p| p.is_some())
    }

    #[inline]
    pub fn to_parent(&self, i: Elem) -> Elem {
        self.members[i]
    }

    #[inline]
    pub fn from_parent(&self, x: Elem) -> Option<Elem> {
        self.position.get(x).copied().flatten()
    }

    pub fn inclusion(&self) -> Hom {
        Hom::trusted(&self.group, &self.parent, self.members.clone())
    }
}

/// Set of elements generated by `gens` inside `g`, sorted.
pub fn closure(g: &FiniteGroup, gens: &[Elem]) -> Vec<Elem> {
    let mut inside = vec![false; g.order()];
    inside[0] = true;
    let mut frontier = vec![0];
    while let Some(x) = frontier.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if !inside[y] {
                inside[y] = true;
                frontier.push(y);
            }
        }
    }
    g.elements().filter(|&x| inside[x]).collect()
}

fn require_verified(f: &Hom) -> Result<()> {
    if !f.is_verified() {
        return Err(Error::Contract(format!(
            "{} -> {} is not a verified homomorphism",
            f.source().name(),
            f.target().name()
        )));
    }
    Ok(())
}

/// Preimage of the identity.
pub fn kernel(f: &Hom) -> Result<Subgroup> {
    require_verified(f)?;
    let members = f.source().elements().filter(|&g| f.apply(g) == 0);
    Subgroup::from_members(f.source(), members, format!("Ker({})", f.source().name()))
}

/// Set of values of `f`, as a subgroup of the target.
pub fn image(f: &Hom) -> Result<Subgroup> {
    require_verified(f)?;
    let members = f.map().to_vec();
    Subgroup::from_members(f.target(), members, format!("Im({})", f.source().name()))
}

/// `g N g⁻¹ = N` for every `g`. Witness `[g, n]` with `g n g⁻¹ ∉ N`.
pub fn is_normal(n: &Subgroup) -> CheckReport {
    const NAME: &str = "normal_subgroup";
    let parent = n.parent();
    for g in parent.elements() {
        for &x in n.members() {
            let c = parent.conjugate(g, x);
            if !n.contains(c) {
                return CheckReport::fail(NAME, vec![g, x], format!("{g}·{x}·{g}⁻¹ = {c} leaves the subgroup"));
            }
        }
    }
    CheckReport::pass(NAME, format!("order-{} subgroup is normal in {}", n.order(), parent.name()))
}

/// Every subgroup of `g`, by repeatedly joining single elements onto known
/// subgroups starting from the trivial one. Sorted by (order, members).
pub fn all_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut seen: BTreeSet<Vec<Elem>> = BTreeSet::new();
    let mut queue = vec![vec![0]];
    seen.insert(vec![0]);
    while let Some(members) = queue.pop() {
        let inside: BTreeSet<Elem> = members.iter().copied().collect();
        for x in g.elements().filter(|x| !inside.contains(x)) {
            let mut gens = members.clone();
            gens.push(x);
            let joined = closure(g, &gens);
            if seen.insert(joined.clone()) {
                queue.push(joined);
            }
        }
    }
    let mut sets: Vec<Vec<Elem>> = seen.into_iter().collect();
    sets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    sets.into_iter()
        .map(|m| {
            let name = format!("{}[{}]", g.name(), m.len());
            Subgroup::from_members(g, m, name).expect("closures are subgroups")
        })
        .collect()
}

pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    all_subgroups(g).into_iter().filter(|n| is_normal(n).passed).collect()
}

/// `G / N` with its canonical projection. Cosets are indexed by their
/// smallest member, in increasing order.
pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, Hom)> {
    let report = is_normal(n);
    if !report.passed {
        return Err(Error::NotNormal {
            witness: report.witness.unwrap_or_default(),
        });
    }
    if !n.parent().same_table(g) {
        return Err(Error::Malformed("subgroup does not live in this group".into()));
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_of[x] == usize::MAX {
            let idx = reps.len();
            reps.push(x);
            for &m in n.members() {
                coset_of[g.mul(x, m)] = idx;
            }
        }
    }
    let k = reps.len();
    let table = reps
        .iter()
        .flat_map(|&a| reps.iter().map(move |&b| (a, b)))
        .map(|(a, b)| coset_of[g.mul(a, b)])
        .collect();
    let q = FiniteGroup::from_flat(format!("{}/{}", g.name(), n.order()), k, table)?;
    let proj = Hom::trusted(g, &q, coset_of);
    Ok((q, proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{cyclic, symmetric};

    fn sign_s3() -> Hom {
        let s3 = symmetric(3).unwrap();
        // lexicographic order: id, (12), (01), (012), (021), (02)
        Hom::checked(&s3, &cyclic(2).unwrap(), vec![0, 1, 1, 0, 0, 1]).unwrap()
    }

    #[test]
    fn kernel_of_identity_is_trivial() {
        let g = symmetric(3).unwrap();
        assert_eq!(kernel(&Hom::identity(&g)).unwrap().members(), &[0]);
    }

    #[test]
    fn kernel_of_sign_is_a3() {
        let k = kernel(&sign_s3()).unwrap();
        assert_eq!(k.members(), &[0, 3, 4]);
        assert!(is_normal(&k).passed);
        assert_eq!(image(&sign_s3()).unwrap().order(), 2);
    }

    #[test]
    fn unverified_maps_are_refused() {
        let z4 = cyclic(4).unwrap();
        let f = Hom::new(&z4, &z4, vec![0, 1, 2, 3]).unwrap();
        assert!(matches!(kernel(&f), Err(Error::Contract(_))));
        assert!(matches!(image(&f), Err(Error::Contract(_))));
    }

    #[test]
    fn transposition_subgroup_not_normal() {
        let s3 = symmetric(3).unwrap();
        let t = Subgroup::generated_by(&s3, &[1]).unwrap();
        let r = is_normal(&t);
        assert!(!r.passed);
        let w = r.witness.unwrap();
        assert!(!t.contains(s3.conjugate(w[0], w[1])));
    }

    #[test]
    fn s3_subgroup_lattice() {
        let s3 = symmetric(3).unwrap();
        let orders: Vec<usize> = all_subgroups(&s3).iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
        assert_eq!(normal_subgroups(&s3).len(), 3);
    }

    #[test]
    fn quotient_by_a3() {
        let s3 = symmetric(3).unwrap();
        let k = kernel(&sign_s3()).unwrap();
        let (q, p) = quotient(&s3, &k).unwrap();
        assert_eq!(q.order(), 2);
        assert_eq!(p.map(), sign_s3().map());
    }

    #[test]
    fn non_closed_members_rejected() {
        let z4 = cyclic(4).unwrap();
        assert!(Subgroup::from_members(&z4, [0, 1], "bad").is_err());
        assert!(Subgroup::from_members(&z4, [1, 3], "bad").is_err());
        assert_eq!(Subgroup::from_members(&z4, [2, 0], "ok").unwrap().members(), &[0, 2]);
    }
}
