use std::collections::HashSet;
use std::fmt;
use std::sync::OnceLock;

use super::group::{FinAbGroup, GroupElement, Indexer};
use crate::error::GroupError;

/// A subgroup of a finite abelian group, identified by its element set.
#[derive(Clone)]
pub struct Subgroup {
    ambient: FinAbGroup,
    /// Sorted element indices (see [`Indexer`]).
    elements: Vec<u64>,
    generators: OnceLock<Vec<GroupElement>>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.elements == other.elements
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.ambient.hash(state);
        self.elements.hash(state);
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<&[u64]> = self.generators().iter().map(|g| g.torsion_coords()).collect();
        write!(f, "Subgroup(order {}, gens {:?} in {})", self.order(), gens, self.ambient)
    }
}

impl Subgroup {
    pub(crate) fn from_sorted_indices(ambient: FinAbGroup, elements: Vec<u64>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup {
            ambient,
            elements,
            generators: OnceLock::new(),
        }
    }

    /// The subgroup generated by `gens` inside the finite group `ambient`.
    pub fn generated_by(ambient: &FinAbGroup, gens: &[GroupElement]) -> Result<Self, GroupError> {
        let ix = Indexer::new(ambient)?;
        for g in gens {
            ambient.check(g)?;
        }
        let idx: Vec<u64> = gens.iter().map(|g| ix.index_of(g)).collect();
        Ok(Self::from_sorted_indices(ambient.clone(), span(&ix, &[0], &idx)))
    }

    pub fn trivial(ambient: &FinAbGroup) -> Result<Self, GroupError> {
        Self::generated_by(ambient, &[])
    }

    pub fn whole(ambient: &FinAbGroup) -> Result<Self, GroupError> {
        let ix = Indexer::new(ambient)?;
        Ok(Self::from_sorted_indices(ambient.clone(), (0..ix.order).collect()))
    }

    pub fn ambient(&self) -> &FinAbGroup {
        &self.ambient
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub(crate) fn indices(&self) -> &[u64] {
        &self.elements
    }

    pub(crate) fn contains_index(&self, i: u64) -> bool {
        self.elements.binary_search(&i).is_ok()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        if !self.ambient.contains(x) || !x.free_coords().is_empty() {
            return false;
        }
        let ix = Indexer::new(&self.ambient).expect("ambient was enumerable");
        self.contains_index(ix.index_of(x))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.ambient == other.ambient && self.elements.iter().all(|&i| other.contains_index(i))
    }

    /// All elements, in index order.
    pub fn elements(&self) -> Vec<GroupElement> {
        let ix = Indexer::new(&self.ambient).expect("ambient was enumerable");
        self.elements.iter().map(|&i| ix.element(i)).collect()
    }

    /// Canonical generating set: scan elements in index order and keep each
    /// one not already in the span of those kept so far.
    pub fn generators(&self) -> &[GroupElement] {
        self.generators.get_or_init(|| {
            let ix = Indexer::new(&self.ambient).expect("ambient was enumerable");
            let mut kept = Vec::new();
            let mut current = vec![0u64];
            let mut member = vec![false; ix.order as usize];
            member[0] = true;
            for &e in &self.elements {
                if member[e as usize] {
                    continue;
                }
                kept.push(e);
                extend_span(&ix, &mut current, &mut member, e);
            }
            kept.into_iter().map(|i| ix.element(i)).collect()
        })
    }
}

/// Adds the cyclic group generated by `g` to the subgroup listed in
/// `current` (with membership bitmap `member`).
pub(crate) fn extend_span(ix: &Indexer, current: &mut Vec<u64>, member: &mut [bool], g: u64) {
    let mut k = 0;
    while k < current.len() {
        let mut x = ix.add(current[k], g);
        while !member[x as usize] {
            member[x as usize] = true;
            current.push(x);
            x = ix.add(x, g);
        }
        k += 1;
    }
}

/// Sorted element indices of the subgroup generated by `base ∪ gens`, where
/// `base` already lists a subgroup.
pub(crate) fn span(ix: &Indexer, base: &[u64], gens: &[u64]) -> Vec<u64> {
    let mut member = vec![false; ix.order as usize];
    let mut current = base.to_vec();
    for &b in base {
        member[b as usize] = true;
    }
    for &g in gens {
        extend_span(ix, &mut current, &mut member, g);
    }
    current.sort_unstable();
    current
}

/// All subgroups satisfying an admissibility test, found by closing the
/// admissible cyclic subgroups under joins.
///
/// `cyclic_ok(g)` decides whether ⟨g⟩ is admissible; `join_ok(h, g)` decides
/// whether the join of an admissible `h` with an admissible ⟨g⟩ stays
/// admissible. Results are sorted by (order, elements).
pub(crate) fn close_under_joins(
    ambient: &FinAbGroup,
    ix: &Indexer,
    mut cyclic_ok: impl FnMut(u64) -> bool,
    mut join_ok: impl FnMut(&[u64], u64) -> bool,
) -> Vec<Subgroup> {
    let mut cyclic: Vec<(u64, Vec<u64>)> = Vec::new();
    let mut seen_cyclic: HashSet<Vec<u64>> = HashSet::new();
    for g in 1..ix.order {
        if !cyclic_ok(g) {
            continue;
        }
        let s = span(ix, &[0], &[g]);
        if seen_cyclic.insert(s.clone()) {
            cyclic.push((g, s));
        }
    }

    let mut found: HashSet<Vec<u64>> = HashSet::new();
    let mut queue: Vec<Vec<u64>> = vec![vec![0]];
    found.insert(vec![0]);
    while let Some(h) = queue.pop() {
        for (g, cyc) in &cyclic {
            if cyc.iter().all(|x| h.binary_search(x).is_ok()) {
                continue;
            }
            if !join_ok(&h, *g) {
                continue;
            }
            let j = span(ix, &h, &[*g]);
            if found.insert(j.clone()) {
                queue.push(j);
            }
        }
    }

    let mut all: Vec<Vec<u64>> = found.into_iter().collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all.into_iter()
        .map(|e| Subgroup::from_sorted_indices(ambient.clone(), e))
        .collect()
}

/// Every subgroup of a finite group, sorted by (order, elements).
pub fn all_subgroups(group: &FinAbGroup) -> Result<Vec<Subgroup>, GroupError> {
    let ix = Indexer::new(group)?;
    Ok(close_under_joins(group, &ix, |_| true, |_, _| true))
}
