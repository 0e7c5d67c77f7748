//! Hurwitz parameters, Nielsen tuples, the braiding action and fibers.

mod braid;
mod enumerate;
mod fiber;

use std::sync::Arc;

pub use braid::{
    apply_sigma, apply_sigma_ids, apply_word_ids, braid_nu_generators, BraidGenerator, BraidWord,
};
pub use enumerate::{enumerate_tuples, search_plan, SearchPlan, TupleSet, DEFAULT_TUPLE_BUDGET};
pub use fiber::{build_fiber, full_braid_partition, ActingGroup, Fiber, FiberMode};

use crate::error::{Error, Result};
use crate::perm::{ElemId, FiniteGroup, Permutation};

/// `h = (G, C, ν)`: a group, distinct nonidentity classes (as indices into
/// `G`'s class list), and positive multiplicities.
#[derive(Debug, Clone)]
pub struct HurwitzParameter {
    group: Arc<FiniteGroup>,
    classes: Vec<usize>,
    nu: Vec<usize>,
}

/// Checks the parameter invariants: distinct nonidentity classes that
/// generate `G`, and `∏ [C_i]^{ν_i} = 1` in `G^ab`.
pub fn validate_parameter(
    group: Arc<FiniteGroup>,
    classes: Vec<usize>,
    nu: Vec<usize>,
) -> Result<HurwitzParameter> {
    if classes.is_empty() {
        return Err(Error::invariant("classes nonempty", "no classes given"));
    }
    if classes.len() != nu.len() {
        return Err(Error::invariant(
            "nu length",
            format!("{} classes but {} multiplicities", classes.len(), nu.len()),
        ));
    }
    if let Some(i) = nu.iter().position(|&v| v == 0) {
        return Err(Error::invariant("nu positive", format!("nu[{i}] = 0")));
    }
    let class_count = group.conjugacy_classes().len();
    for (i, &c) in classes.iter().enumerate() {
        if c >= class_count {
            return Err(Error::invariant("class exists", format!("class index {c} out of range")));
        }
        if c == 0 {
            return Err(Error::invariant("nonidentity class", format!("class {i} is the identity class")));
        }
        if classes[..i].contains(&c) {
            return Err(Error::invariant("distinct classes", format!("class {i} repeats an earlier class")));
        }
    }
    let reps: Vec<ElemId> = classes
        .iter()
        .map(|&c| group.conjugacy_classes()[c].representative)
        .collect();
    let generated = group.normal_closure(&reps).len();
    if generated != group.order() {
        return Err(Error::invariant(
            "classes generate G",
            format!("classes generate a normal subgroup of order {generated} < {}", group.order()),
        ));
    }
    let ab = group.abelianization();
    let total = reps
        .iter()
        .zip(&nu)
        .fold(0, |acc, (&x, &v)| ab.mul(acc, ab.pow(ab.label[x as usize], v as u64)));
    if total != 0 {
        return Err(Error::invariant(
            "nu allowed",
            "nu not allowed: the class product is nontrivial in the abelianization",
        ));
    }
    Ok(HurwitzParameter { group, classes, nu })
}

impl HurwitzParameter {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn classes(&self) -> &[usize] {
        &self.classes
    }

    pub fn nu(&self) -> &[usize] {
        &self.nu
    }

    /// Total number of branch points.
    pub fn n(&self) -> usize {
        self.nu.iter().sum()
    }

    /// Index into [`Self::classes`] of the block containing each position.
    pub fn block_of_positions(&self) -> Vec<usize> {
        self.nu
            .iter()
            .enumerate()
            .flat_map(|(i, &v)| std::iter::repeat(i).take(v))
            .collect()
    }

    /// Group class index expected at each position.
    pub fn class_at_positions(&self) -> Vec<usize> {
        self.block_of_positions().into_iter().map(|b| self.classes[b]).collect()
    }

    /// Is `t` an element of `𝒢_h`?
    pub fn contains(&self, t: &[ElemId]) -> bool {
        let g = &*self.group;
        t.len() == self.n()
            && t.iter()
                .zip(self.class_at_positions())
                .all(|(&x, c)| g.class_of(x) == c)
            && g.product(t.iter().copied()) == crate::perm::IDENTITY
            && g.generate(t).len() == g.order()
    }

    pub fn to_permutations(&self, t: &[ElemId]) -> NielsenTuple {
        NielsenTuple {
            entries: t.iter().map(|&x| self.group.element(x).clone()).collect(),
        }
    }

    pub fn to_ids(&self, t: &NielsenTuple) -> Result<Vec<ElemId>> {
        t.entries
            .iter()
            .map(|p| {
                self.group
                    .id_of(p)
                    .ok_or_else(|| Error::Input(format!("{p} is not an element of G")))
            })
            .collect()
    }
}

/// A tuple of permutations; an element of `𝒢_h` when it satisfies the
/// class, product and generation conditions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NielsenTuple {
    pub entries: Vec<Permutation>,
}

impl NielsenTuple {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn product(&self) -> Option<Permutation> {
        let first = self.entries.first()?;
        Some(
            self.entries[1..]
                .iter()
                .fold(first.clone(), |acc, p| acc.compose(p)),
        )
    }
}
