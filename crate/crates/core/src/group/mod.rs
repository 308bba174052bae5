//! Finite groups given by Cayley tables.
//!
//! Elements are indices `0..order`; index 0 is always the identity. Groups are
//! immutable once built.

mod quotient;
mod spec;

pub use quotient::{quotient_with_section, QuotientData};
pub use spec::{group_from_spec, group_from_spec_with_cap, Perm, DEFAULT_ORDER_CAP};
pub(crate) use spec::parse_perm_list;

use std::collections::{BTreeSet, VecDeque};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    cayley: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    generators: Vec<usize>,
    element_names: Option<Vec<String>>,
    perms: Option<Vec<Perm>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order())
    }
}

impl FiniteGroup {
    /// Build from a Cayley table, checking the group axioms.
    pub fn from_cayley(
        name: impl Into<String>,
        cayley: Vec<Vec<usize>>,
        generators: Vec<usize>,
    ) -> Result<Self> {
        let n = cayley.len();
        if n == 0 || cayley.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return Err(Error::Invalid("Cayley table must be square with valid entries".into()));
        }
        let g = Self::from_cayley_unchecked(name.into(), cayley, generators, None, None);
        g.verify_axioms()?;
        if g.closure(&g.generators).len() != n {
            return Err(Error::Invalid("generators do not generate the group".into()));
        }
        Ok(g)
    }

    pub(crate) fn from_cayley_unchecked(
        name: String,
        cayley: Vec<Vec<usize>>,
        generators: Vec<usize>,
        element_names: Option<Vec<String>>,
        perms: Option<Vec<Perm>>,
    ) -> Self {
        let n = cayley.len();
        let inverse = (0..n)
            .map(|a| (0..n).find(|&b| cayley[a][b] == 0).unwrap_or(0))
            .collect();
        FiniteGroup {
            name,
            cayley,
            inverse,
            generators,
            element_names,
            perms,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.cayley.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn cayley(&self) -> &[Vec<usize>] {
        &self.cayley
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a][b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// g a g⁻¹
    #[inline]
    pub fn conj(&self, g: usize, a: usize) -> usize {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> usize {
        use num_integer::Integer;
        self.elements()
            .map(|a| self.element_order(a))
            .fold(1, |acc, o| acc.lcm(&o))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_name(&self, a: usize) -> String {
        match &self.element_names {
            Some(names) => names[a].clone(),
            None => format!("g{a}"),
        }
    }

    pub fn perm(&self, a: usize) -> Option<&Perm> {
        self.perms.as_ref().map(|p| &p[a])
    }

    /// Index of a permutation, for groups built from permutations.
    pub fn find_perm(&self, p: &Perm) -> Option<usize> {
        let perms = self.perms.as_ref()?;
        let degree = perms[0].degree();
        let p = p.padded(degree);
        perms.iter().position(|q| *q == p)
    }

    /// Associativity, identity and inverse checks over the whole table.
    pub fn verify_axioms(&self) -> Result<()> {
        let n = self.order();
        for a in 0..n {
            if self.mul(0, a) != a || self.mul(a, 0) != a {
                return Err(Error::Invalid(format!("element 0 is not an identity for {a}")));
            }
            if self.mul(a, self.inv(a)) != 0 || self.mul(self.inv(a), a) != 0 {
                return Err(Error::Invalid(format!("element {a} has no inverse")));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return Err(Error::Invalid(format!(
                            "associativity fails at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Sorted closure of a set of elements under multiplication.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&i| seen[i]).collect()
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        Subgroup {
            members: self.closure(gens),
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: self.elements().collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { members: vec![0] }
    }

    pub fn center(&self) -> Subgroup {
        Subgroup {
            members: self
                .elements()
                .filter(|&a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
                .collect(),
        }
    }

    pub fn derived_subgroup(&self) -> Subgroup {
        let comms: BTreeSet<usize> = self
            .elements()
            .flat_map(|a| {
                self.elements().map(move |b| {
                    self.mul(self.mul(a, b), self.mul(self.inv(a), self.inv(b)))
                })
            })
            .collect();
        self.subgroup_generated(&comms.into_iter().collect::<Vec<_>>())
    }

    pub fn centralizer(&self, a: usize) -> Subgroup {
        Subgroup {
            members: self
                .elements()
                .filter(|&g| self.mul(g, a) == self.mul(a, g))
                .collect(),
        }
    }

    /// All normal subgroups, ordered by size and then members.
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        let classes = self.conjugacy_data().classes;
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut frontier: Vec<Vec<usize>> = classes
            .iter()
            .map(|c| self.closure(c))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        found.extend(frontier.iter().cloned());
        while !frontier.is_empty() {
            let mut next = Vec::new();
            let current: Vec<Vec<usize>> = found.iter().cloned().collect();
            for a in &frontier {
                for b in &current {
                    let mut gens = a.clone();
                    gens.extend(b);
                    let joined = self.closure(&gens);
                    if found.insert(joined.clone()) {
                        next.push(joined);
                    }
                }
            }
            frontier = next;
        }
        let mut subs: Vec<Subgroup> = found.into_iter().map(|members| Subgroup { members }).collect();
        subs.sort_by(|a, b| a.order().cmp(&b.order()).then(a.members.cmp(&b.members)));
        subs
    }

    /// Conjugacy classes ordered by smallest element; class 0 is the identity.
    pub fn conjugacy_data(&self) -> ConjugacyData {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let idx = classes.len();
            let members: BTreeSet<usize> = self.elements().map(|g| self.conj(g, a)).collect();
            for &m in &members {
                class_of[m] = idx;
            }
            classes.push(members.into_iter().collect());
        }
        let centralizers = classes.iter().map(|c| self.centralizer(c[0])).collect();
        ConjugacyData {
            classes,
            class_of,
            centralizers,
        }
    }

    /// A small stable hash of the multiplication table, used to derive seeds.
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for row in &self.cayley {
            for &x in row {
                h ^= x as u64;
                h = h.wrapping_mul(0x0000_0100_0000_01b3);
            }
        }
        h
    }
}

impl Serialize for FiniteGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FiniteGroup", 4)?;
        st.serialize_field("cayley", &self.cayley)?;
        st.serialize_field("generators", &self.generators)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("order", &self.order())?;
        st.end()
    }
}

#[derive(Debug, Clone)]
pub struct ConjugacyData {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// Centralizer of each class representative (its smallest element).
    pub centralizers: Vec<Subgroup>,
}

impl ConjugacyData {
    pub fn representative(&self, class: usize) -> usize {
        self.classes[class][0]
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    /// Checks closure under products and inverses.
    pub fn from_members(parent: &FiniteGroup, mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        let ok = members.first() == Some(&0)
            && members.iter().all(|&a| {
                members.binary_search(&parent.inv(a)).is_ok()
                    && members
                        .iter()
                        .all(|&b| members.binary_search(&parent.mul(a, b)).is_ok())
            });
        if !ok {
            return Err(Error::Invalid("element set is not a subgroup".into()));
        }
        Ok(Subgroup { members })
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, a: usize) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    /// First conjugate g·n·g⁻¹ that leaves the subgroup, if any.
    pub fn normality_witness(&self, parent: &FiniteGroup) -> Option<(usize, usize)> {
        for &g in parent.generators().iter().chain(std::iter::once(&0)) {
            for &n in &self.members {
                if !self.contains(parent.conj(g, n)) {
                    return Some((g, n));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, parent: &FiniteGroup) -> bool {
        self.normality_witness(parent).is_none()
    }

    /// The subgroup as a group in its own right; local element order follows
    /// the parent indices, so local 0 is the identity.
    pub fn to_group(&self, parent: &FiniteGroup) -> EmbeddedGroup {
        let local = |x: usize| self.members.binary_search(&x).unwrap();
        let cayley: Vec<Vec<usize>> = self
            .members
            .iter()
            .map(|&a| self.members.iter().map(|&b| local(parent.mul(a, b))).collect())
            .collect();
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for &m in &self.members {
            if span.binary_search(&m).is_err() {
                gens.push(m);
                span = parent.closure(&gens);
            }
        }
        let names = self.members.iter().map(|&m| parent.element_name(m)).collect();
        let perms = parent
            .perms
            .as_ref()
            .map(|p| self.members.iter().map(|&m| p[m].clone()).collect());
        let group = FiniteGroup::from_cayley_unchecked(
            format!("{}[{}]", parent.name(), self.order()),
            cayley,
            gens.iter().map(|&g| local(g)).collect(),
            Some(names),
            perms,
        );
        EmbeddedGroup {
            group,
            embedding: self.members.clone(),
        }
    }
}

/// A subgroup materialized as a group, with the map back into its parent.
#[derive(Debug, Clone)]
pub struct EmbeddedGroup {
    pub group: FiniteGroup,
    /// local index -> parent index (increasing)
    pub embedding: Vec<usize>,
}

impl EmbeddedGroup {
    pub fn to_parent(&self, local: usize) -> usize {
        self.embedding[local]
    }

    pub fn to_local(&self, parent: usize) -> Option<usize> {
        self.embedding.binary_search(&parent).ok()
    }
}
