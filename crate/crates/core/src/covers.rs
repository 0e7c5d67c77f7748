//! Central extensions supplied as data: commutator pairing, obstruction
//! subgroups, reduced covers, class kinds, Condition E and lifting
//! invariants.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{self, spanning_tree, AutGroup};
use crate::error::{Error, Result};
use crate::hurwitz::{HurwitzParameter, TupleSet};
use crate::perm::{ElemId, ElementSet, FiniteGroup, Permutation, IDENTITY};

/// A central extension `1 → Z → G̃ → G → 1` with both groups materialized.
#[derive(Debug, Clone)]
pub struct CentralExtension {
    cover: Arc<FiniteGroup>,
    base: Arc<FiniteGroup>,
    images: Vec<ElemId>,
    projection: Vec<ElemId>,
    preimages: Vec<Vec<ElemId>>,
    kernel: Vec<ElemId>,
}

/// Checks the generator lists and builds the extension they define.
pub fn load_extension(
    cover_degree: usize,
    cover_generators: Vec<Permutation>,
    image_generators: &[Permutation],
    base: Arc<FiniteGroup>,
) -> Result<CentralExtension> {
    if cover_generators.len() != image_generators.len() {
        return Err(Error::invariant(
            "generator lists aligned",
            format!(
                "{} cover generators but {} images",
                cover_generators.len(),
                image_generators.len()
            ),
        ));
    }
    let images = image_generators
        .iter()
        .map(|p| {
            base.id_of(p).ok_or_else(|| {
                Error::invariant("images lie in G", format!("{p} is not an element of the base group"))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let cover = FiniteGroup::from_generators(cover_degree, cover_generators)?;
    CentralExtension::from_parts(Arc::new(cover), base, images)
}

impl CentralExtension {
    /// `G` as a cover of itself.
    pub fn trivial(base: Arc<FiniteGroup>) -> Self {
        let n = base.order();
        CentralExtension {
            cover: base.clone(),
            images: base.generator_ids().to_vec(),
            projection: (0..n as ElemId).collect(),
            preimages: (0..n as ElemId).map(|x| vec![x]).collect(),
            kernel: vec![IDENTITY],
            base,
        }
    }

    pub(crate) fn from_parts(cover: Arc<FiniteGroup>, base: Arc<FiniteGroup>, images: Vec<ElemId>) -> Result<Self> {
        let gens = cover.generator_ids().to_vec();
        let tree = spanning_tree(&cover, &gens);
        let mut projection = vec![IDENTITY; cover.order()];
        for &(x, parent, j) in &tree[1..] {
            projection[x as usize] = base.mul(projection[parent as usize], images[j]);
        }
        for x in 0..cover.order() as ElemId {
            for (j, &s) in gens.iter().enumerate() {
                if projection[cover.mul(x, s) as usize] != base.mul(projection[x as usize], images[j]) {
                    return Err(Error::invariant(
                        "projection is a homomorphism",
                        format!("relation broken at generator {}", j + 1),
                    ));
                }
            }
        }
        let mut preimages = vec![Vec::new(); base.order()];
        for (x, &y) in projection.iter().enumerate() {
            preimages[y as usize].push(x as ElemId);
        }
        if let Some(y) = preimages.iter().position(Vec::is_empty) {
            return Err(Error::invariant(
                "projection surjective",
                format!("{} has no preimage", base.element(y as ElemId)),
            ));
        }
        let kernel = preimages[IDENTITY as usize].clone();
        for &z in &kernel {
            if let Some(&s) = gens.iter().find(|&&s| !cover.commutes(z, s)) {
                return Err(Error::invariant(
                    "central kernel",
                    format!(
                        "kernel not central: {} does not commute with {}",
                        cover.element(z),
                        cover.element(s)
                    ),
                ));
            }
        }
        let derived = cover.derived_set();
        if let Some(&z) = kernel.iter().find(|&&z| !derived.contains(z)) {
            return Err(Error::invariant(
                "stem condition",
                format!("kernel element {} is not a product of commutators", cover.element(z)),
            ));
        }
        Ok(CentralExtension {
            cover,
            base,
            images,
            projection,
            preimages,
            kernel,
        })
    }

    pub fn cover(&self) -> &FiniteGroup {
        &self.cover
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn base_arc(&self) -> &Arc<FiniteGroup> {
        &self.base
    }

    /// Images in `G` of the cover generators.
    pub fn image_generators(&self) -> Vec<Permutation> {
        self.images.iter().map(|&y| self.base.element(y).clone()).collect()
    }

    pub fn project(&self, x: ElemId) -> ElemId {
        self.projection[x as usize]
    }

    /// Sorted preimages of a base element.
    pub fn preimages(&self, y: ElemId) -> &[ElemId] {
        &self.preimages[y as usize]
    }

    /// Kernel elements in sorted order; the label of an element is its index.
    pub fn kernel(&self) -> &[ElemId] {
        &self.kernel
    }

    pub fn kernel_order(&self) -> usize {
        self.kernel.len()
    }

    pub fn kernel_label(&self, z: ElemId) -> Option<u32> {
        self.kernel.binary_search(&z).ok().map(|i| i as u32)
    }

    fn label_set(&self, set: &ElementSet) -> Vec<u32> {
        set.iter().filter_map(|z| self.kernel_label(z)).collect()
    }

    /// `[x̃, ỹ]` for commuting base elements, as a kernel label.
    pub fn pairing_ids(&self, x: ElemId, y: ElemId) -> Option<u32> {
        if !self.base.commutes(x, y) {
            return None;
        }
        let c = self.cover.commutator(self.preimages[x as usize][0], self.preimages[y as usize][0]);
        self.kernel_label(c)
    }

    /// The commutator pairing `⟨x, y⟩` as a kernel label.
    pub fn commutator_pairing(&self, x: &Permutation, y: &Permutation) -> Result<u32> {
        let lookup = |p: &Permutation| {
            self.base
                .id_of(p)
                .ok_or_else(|| Error::Input(format!("{p} is not an element of G")))
        };
        let (a, b) = (lookup(x)?, lookup(y)?);
        self.pairing_ids(a, b)
            .ok_or_else(|| Error::Input(format!("{x} and {y} do not commute")))
    }

    /// Subgroup of `Z` generated by kernel labels.
    pub fn kernel_subgroup(&self, labels: &[u32]) -> Vec<u32> {
        let ids: Vec<ElemId> = labels.iter().map(|&l| self.kernel[l as usize]).collect();
        self.label_set(&self.cover.generate(&ids))
    }

    /// Pairings `⟨g, z⟩` over `z ∈ Z(g)` and over `z ∈ Z(g) ∩ G′`.
    pub fn pairings_at(&self, g: ElemId) -> (BTreeSet<u32>, BTreeSet<u32>) {
        let derived = self.base.derived_set();
        let mut full = BTreeSet::new();
        let mut primed = BTreeSet::new();
        for z in self.base.centralizer_set(g).iter() {
            let v = self.pairing_ids(g, z).expect("centralizing");
            full.insert(v);
            if derived.contains(z) {
                primed.insert(v);
            }
        }
        (full, primed)
    }

    /// `(H₂(G)_C, H₂′(G)_C)` using `reps` as the class representatives.
    pub fn obstruction_subgroups_at(&self, reps: &[ElemId]) -> ObstructionSubgroups {
        let mut full = BTreeSet::new();
        let mut primed = BTreeSet::new();
        for &g in reps {
            let (a, b) = self.pairings_at(g);
            full.extend(a);
            primed.extend(b);
        }
        ObstructionSubgroups {
            full: self.kernel_subgroup(&full.into_iter().collect::<Vec<_>>()),
            derived: self.kernel_subgroup(&primed.into_iter().collect::<Vec<_>>()),
        }
    }

    /// Obstruction subgroups for a list of base classes.
    pub fn obstruction_subgroups(&self, classes: &[usize]) -> ObstructionSubgroups {
        let reps: Vec<ElemId> = classes
            .iter()
            .map(|&c| self.base.conjugacy_classes()[c].representative)
            .collect();
        self.obstruction_subgroups_at(&reps)
    }

    /// Number of cover classes meeting the preimage of a base class.
    pub fn lifted_class_count(&self, class: usize) -> usize {
        self.lifted_classes(class).len()
    }

    fn lifted_classes(&self, class: usize) -> BTreeSet<usize> {
        self.base.conjugacy_classes()[class]
            .elements
            .iter()
            .flat_map(|&y| self.preimages[y as usize].iter().map(|&x| self.cover.class_of(x)))
            .collect()
    }

    fn preimage_of_class(&self, class: usize) -> Vec<ElemId> {
        let mut v: Vec<ElemId> = self.base.conjugacy_classes()[class]
            .elements
            .iter()
            .flat_map(|&y| self.preimages[y as usize].iter().copied())
            .collect();
        v.sort_unstable();
        v
    }

    /// Quotient by a subgroup of the kernel, acting on its cosets.
    pub fn quotient(&self, labels: &[u32]) -> Result<CentralExtension> {
        let sub = self.kernel_subgroup(labels);
        if sub.len() == 1 {
            return Ok(self.clone());
        }
        let k: Vec<ElemId> = sub.iter().map(|&l| self.kernel[l as usize]).collect();
        let quotient = coset_quotient(&self.cover, &k)?;
        CentralExtension::from_parts(Arc::new(quotient), self.base.clone(), self.images.clone())
    }

    /// The reduced cover `G̃ / H₂(G)_C`; every class of `C` splits fully in it.
    pub fn reduce(&self, classes: &[usize]) -> Result<CentralExtension> {
        let h2 = self.obstruction_subgroups(classes).full;
        let reduced = self.quotient(&h2)?;
        for &c in classes {
            let s = reduced.lifted_class_count(c);
            if s != reduced.kernel_order() {
                return Err(Error::Internal(format!(
                    "class {c} lifts to {s} classes in a reduced cover with kernel of order {}",
                    reduced.kernel_order()
                )));
            }
        }
        Ok(reduced)
    }

    /// Checks that `G` has split-p-p type relative to this cover and
    /// returns `p`.
    pub fn split_pp_prime(&self) -> Result<usize> {
        let p = self.kernel_order();
        if p < 2 || !crate::catalog::is_prime(p as u32) {
            return Err(Error::Unsupported(format!("kernel order {p} is not prime")));
        }
        let ab = self.base.abelianization();
        if ab.order != p {
            return Err(Error::Unsupported(format!(
                "abelianization has order {} but the kernel has order {p}",
                ab.order
            )));
        }
        let verdict = analysis::is_pseudosimple(&self.base);
        if !verdict.pseudosimple {
            return Err(Error::Unsupported(format!(
                "G is not pseudosimple ({:?})",
                verdict.reason
            )));
        }
        if analysis::abelianization_section(&self.base).is_none() {
            return Err(Error::Unsupported("G → G^ab does not split".into()));
        }
        Ok(p)
    }

    fn classify_unchecked(&self, class: usize, p: usize) -> ClassKind {
        if analysis::is_ambiguous(&self.base, class) {
            return ClassKind {
                kind: Kind::Ambiguous,
                lifted_class_count: None,
                derived_orbit_count: None,
            };
        }
        let s = self.lifted_class_count(class);
        let d = self
            .cover
            .conjugation_orbit_count(&self.preimage_of_class(class), &self.derived_generators());
        let kind = if s == p {
            Kind::Split
        } else if s == 1 && d == p {
            Kind::Mixed
        } else {
            Kind::Inert
        };
        ClassKind {
            kind,
            lifted_class_count: Some(s),
            derived_orbit_count: Some(d),
        }
    }

    fn derived_generators(&self) -> Vec<ElemId> {
        self.cover.subgroup_generators(self.cover.derived_set())
    }

    pub fn classify_class(&self, class: usize) -> Result<ClassKind> {
        let p = self.split_pp_prime()?;
        Ok(self.classify_unchecked(class, p))
    }

    /// Kinds of every class of `G`, in class order.
    pub fn classify_all(&self) -> Result<Vec<ClassKind>> {
        let p = self.split_pp_prime()?;
        Ok((0..self.base.conjugacy_classes().len())
            .map(|c| self.classify_unchecked(c, p))
            .collect())
    }

    fn check_condition_e_pre(&self, classes: &[usize]) -> Result<()> {
        if let Some(&c) = classes.iter().find(|&&c| analysis::is_ambiguous(&self.base, c)) {
            return Err(Error::Unsupported(format!("class {c} is ambiguous")));
        }
        let report = analysis::type_report(&self.base);
        if !report.pseudosimple {
            return Err(Error::Unsupported("G is not pseudosimple".into()));
        }
        if !report.split_cyclic() {
            return Err(Error::Unsupported("G is not of split-cyclic type".into()));
        }
        Ok(())
    }

    /// Condition E, decided by comparing the obstruction subgroups.
    pub fn condition_e(&self, classes: &[usize]) -> Result<ConditionE> {
        self.check_condition_e_pre(classes)?;
        let subs = self.obstruction_subgroups(classes);
        let holds = subs.full == subs.derived;
        let witness = if holds {
            None
        } else {
            self.condition_e_witness(classes, &subs.derived)
        };
        if !holds && witness.is_none() {
            return Err(Error::Internal("no pairing outside H₂′(G)_C".into()));
        }
        Ok(ConditionE {
            holds,
            full: subs.full,
            derived: subs.derived,
            witness,
        })
    }

    fn condition_e_witness(&self, classes: &[usize], derived: &[u32]) -> Option<PairingWitness> {
        for &c in classes {
            let g = self.base.conjugacy_classes()[c].representative;
            for z in self.base.centralizer_set(g).iter() {
                let v = self.pairing_ids(g, z).expect("centralizing");
                if derived.binary_search(&v).is_err() {
                    return Some(PairingWitness {
                        g: self.base.element(g).to_string(),
                        z: self.base.element(z).to_string(),
                        pairing: v,
                    });
                }
            }
        }
        None
    }

    /// Condition E read off from class kinds: it fails exactly when some
    /// class is mixed and none is inert.
    pub fn condition_e_by_classification(&self, classes: &[usize]) -> Result<bool> {
        self.check_condition_e_pre(classes)?;
        let p = self.split_pp_prime()?;
        let kinds: Vec<Kind> = classes.iter().map(|&c| self.classify_unchecked(c, p).kind).collect();
        let mixed = kinds.contains(&Kind::Mixed);
        let inert = kinds.contains(&Kind::Inert);
        Ok(!(mixed && !inert))
    }
}

/// `G / K` for a normal subgroup `K ⊆ Z(G)` given by its elements, acting on
/// the cosets `xK`; generators correspond to those of `G`.
pub fn coset_quotient(group: &FiniteGroup, k: &[ElemId]) -> Result<FiniteGroup> {
    let rep_of = |x: ElemId| k.iter().map(|&z| group.mul(x, z)).min().expect("nonempty");
    let reps: Vec<ElemId> = (0..group.order() as ElemId).filter(|&x| rep_of(x) == x).collect();
    let gens = group
        .generator_ids()
        .iter()
        .map(|&s| {
            let images = reps
                .iter()
                .map(|&x| reps.binary_search(&rep_of(group.mul(x, s))).expect("coset") as u32)
                .collect();
            Permutation::from_images(images)
        })
        .collect::<Result<Vec<_>>>()?;
    let quotient = FiniteGroup::from_generators(reps.len(), gens)?;
    if quotient.order() * k.len() != group.order() {
        return Err(Error::Internal("coset action is not faithful on the quotient".into()));
    }
    Ok(quotient)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ObstructionSubgroups {
    /// `H₂(G)_C` as sorted kernel labels.
    pub full: Vec<u32>,
    /// `H₂′(G)_C` as sorted kernel labels.
    pub derived: Vec<u32>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Split,
    Mixed,
    Inert,
    Ambiguous,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassKind {
    pub kind: Kind,
    pub lifted_class_count: Option<usize>,
    pub derived_orbit_count: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PairingWitness {
    pub g: String,
    pub z: String,
    pub pairing: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionE {
    pub holds: bool,
    pub full: Vec<u32>,
    pub derived: Vec<u32>,
    pub witness: Option<PairingWitness>,
}

/// Kind of an `S_d` class predicted from its partition: the number of even
/// parts and whether all parts are distinct.
pub fn symmetric_class_kind(partition: &[u32]) -> Kind {
    let even = partition.iter().filter(|&&x| x % 2 == 0).count();
    let mut sorted = partition.to_vec();
    sorted.sort_unstable();
    let distinct = sorted.windows(2).all(|w| w[0] != w[1]);
    match (distinct, even) {
        (true, 0) => Kind::Ambiguous,
        (true, e) if e % 2 == 0 => Kind::Mixed,
        (true, _) => Kind::Split,
        (false, 0) => Kind::Split,
        (false, _) => Kind::Inert,
    }
}

/// Lifting invariant of Nielsen tuples relative to a reduced cover.
#[derive(Debug, Clone)]
pub struct LiftingMap {
    ext: CentralExtension,
    /// Chosen cover class above each class of the parameter.
    chosen: Vec<usize>,
    /// Lift of each base element into the chosen class of its position's
    /// block (`u32::MAX` outside the block's class).
    lifts: Vec<Vec<ElemId>>,
    blocks: Vec<usize>,
}

impl LiftingMap {
    pub fn new(reduced: &CentralExtension, h: &HurwitzParameter) -> Result<Self> {
        if reduced.base().elements() != h.group().elements() {
            return Err(Error::Input("cover base group differs from the parameter group".into()));
        }
        let base = reduced.base();
        let cover = reduced.cover();
        let mut chosen = Vec::new();
        let mut lifts = Vec::new();
        for &c in h.classes() {
            let class = &base.conjugacy_classes()[c];
            let star = cover.class_of(reduced.preimages(class.representative)[0]);
            let mut lift = vec![u32::MAX; base.order()];
            for &y in &class.elements {
                let hits: Vec<ElemId> = reduced
                    .preimages(y)
                    .iter()
                    .copied()
                    .filter(|&x| cover.class_of(x) == star)
                    .collect();
                if hits.len() != 1 {
                    return Err(Error::NotReduced(format!(
                        "{} has {} preimages in the chosen lifted class",
                        base.element(y),
                        hits.len()
                    )));
                }
                lift[y as usize] = hits[0];
            }
            chosen.push(star);
            lifts.push(lift);
        }
        Ok(LiftingMap {
            ext: reduced.clone(),
            chosen,
            lifts,
            blocks: h.block_of_positions(),
        })
    }

    pub fn extension(&self) -> &CentralExtension {
        &self.ext
    }

    /// Chosen cover class above each class of the parameter.
    pub fn chosen_classes(&self) -> &[usize] {
        &self.chosen
    }

    pub fn label(&self, t: &[ElemId]) -> Result<u32> {
        if t.len() != self.blocks.len() {
            return Err(Error::Input(format!(
                "tuple has length {}, expected {}",
                t.len(),
                self.blocks.len()
            )));
        }
        let cover = self.ext.cover();
        let mut z = IDENTITY;
        for (&x, &b) in t.iter().zip(&self.blocks) {
            let lift = self.lifts[b][x as usize];
            if lift == u32::MAX {
                return Err(Error::Input("tuple entry outside its class".into()));
            }
            z = cover.mul(z, lift);
        }
        self.ext
            .kernel_label(z)
            .ok_or_else(|| Error::Input("tuple product is not the identity".into()))
    }

    /// Labels of all tuples, in order.
    pub fn labels(&self, tuples: &TupleSet) -> Result<Vec<u32>> {
        tuples.par_iter().map(|t| self.label(t)).collect()
    }
}

/// Induced action of `Aut(G,C)` on realized labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelAction {
    pub labels: Vec<u32>,
    pub orbits: Vec<Vec<u32>>,
    /// `|Out(G,C)_ℓ|` for each realized label.
    pub stabilizer_orders: Vec<(u32, usize)>,
    pub out_order: usize,
}

/// Orbits of realized labels under `aut`, checked on up to `samples`
/// tuples per label.
pub fn out_action_on_labels(
    lm: &LiftingMap,
    tuples: &TupleSet,
    aut: &AutGroup,
    samples: usize,
) -> Result<LabelAction> {
    let mut reps: BTreeMap<u32, Vec<&[ElemId]>> = BTreeMap::new();
    for t in tuples.iter() {
        let l = lm.label(t)?;
        let e = reps.entry(l).or_default();
        if e.len() < samples.max(1) {
            e.push(t);
        }
    }
    let labels: Vec<u32> = reps.keys().copied().collect();
    let mut action: Vec<BTreeMap<u32, u32>> = Vec::with_capacity(aut.order());
    for a in 0..aut.order() {
        let mut map = BTreeMap::new();
        for (&l, ts) in &reps {
            let mut image = None;
            for t in ts {
                let moved: Vec<ElemId> = t.iter().map(|&x| aut.apply(a, x)).collect();
                let m = lm.label(&moved)?;
                if *image.get_or_insert(m) != m {
                    return Err(Error::Internal(format!(
                        "automorphism {a} sends label {l} to both {} and {m}",
                        image.unwrap()
                    )));
                }
            }
            let m = image.expect("sampled");
            if !reps.contains_key(&m) {
                return Err(Error::Internal(format!("automorphism {a} sends label {l} to unrealized {m}")));
            }
            if aut.inner[a] && m != l {
                return Err(Error::Internal(format!("inner automorphism {a} moves label {l}")));
            }
            map.insert(l, m);
        }
        action.push(map);
    }
    let mut orbits: Vec<Vec<u32>> = Vec::new();
    let mut seen = BTreeSet::new();
    for &l in &labels {
        if seen.contains(&l) {
            continue;
        }
        let mut orbit = vec![l];
        seen.insert(l);
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            for map in &action {
                let y = map[&x];
                if seen.insert(y) {
                    orbit.push(y);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    let stabilizer_orders = labels
        .iter()
        .map(|&l| {
            let fixing = action.iter().filter(|m| m[&l] == l).count();
            (l, fixing / aut.inner_count)
        })
        .collect();
    Ok(LabelAction {
        labels,
        orbits,
        stabilizer_orders,
        out_order: aut.out_order(),
    })
}
