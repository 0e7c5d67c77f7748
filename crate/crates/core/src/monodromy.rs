//! Braid orbits on fibers and the monodromy group they generate.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::hurwitz::{braid_nu_generators, BraidGenerator, Fiber, FiberMode, HurwitzParameter};
use crate::perm::{orbits_of, ChainOptions, Permutation, ProductReplacement, StabChain, DEFAULT_MEMORY_BUDGET};

/// Orbits of a permutation group on `0..len`, numbered by least point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    pub orbit_of: Vec<u32>,
    pub orbits: Vec<Vec<u32>>,
    /// Lifting label of each orbit, when a reduced cover was supplied.
    pub labels: Option<Vec<u32>>,
}

impl OrbitPartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(Vec::len).collect()
    }

    pub fn count(&self) -> usize {
        self.orbits.len()
    }

    /// Attaches per-point labels; fails with the first orbit on which the
    /// labels are not constant.
    pub fn with_point_labels(mut self, point_labels: &[u32]) -> std::result::Result<Self, usize> {
        let mut labels = Vec::with_capacity(self.orbits.len());
        for (i, orbit) in self.orbits.iter().enumerate() {
            let l = point_labels[orbit[0] as usize];
            if orbit.iter().any(|&x| point_labels[x as usize] != l) {
                return Err(i);
            }
            labels.push(l);
        }
        self.labels = Some(labels);
        Ok(self)
    }
}

pub fn braid_orbits(len: usize, gens: &[Permutation]) -> OrbitPartition {
    let orbits = orbits_of(len, gens);
    let mut orbit_of = vec![0u32; len];
    for (i, o) in orbits.iter().enumerate() {
        for &x in o {
            orbit_of[x as usize] = i as u32;
        }
    }
    OrbitPartition {
        orbit_of,
        orbits,
        labels: None,
    }
}

/// Permutations of fiber points induced by the generators of `Br_ν`.
pub fn braid_generator_permutations(f: &Fiber) -> Result<Vec<(BraidGenerator, Permutation)>> {
    braid_nu_generators(f.param().nu())
        .into_par_iter()
        .map(|(label, w)| Ok((label, f.induced_permutation(&w)?)))
        .collect()
}

/// A system of imprimitivity, blocks sorted by least point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockSystem {
    pub block_size: usize,
    pub block_count: usize,
    pub blocks: Vec<Vec<u32>>,
}

/// The finest block system in which `points[0]` and `points[j]` share a
/// block, for the group generated by `gens` on the orbit `points`.
fn minimal_block_system(points: &[u32], gens: &[Permutation], j: usize) -> BlockSystem {
    let degree = gens.first().map_or(0, |g| g.degree());
    let mut pos = vec![u32::MAX; degree];
    for (i, &x) in points.iter().enumerate() {
        pos[x as usize] = i as u32;
    }
    let mut parent: Vec<usize> = (0..points.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut queue = vec![(0usize, j)];
    let (a, b) = (find(&mut parent, 0), find(&mut parent, j));
    parent[a.max(b)] = a.min(b);
    while let Some((x, y)) = queue.pop() {
        for g in gens {
            let gx = pos[g.apply(points[x]) as usize] as usize;
            let gy = pos[g.apply(points[y]) as usize] as usize;
            let (rx, ry) = (find(&mut parent, gx), find(&mut parent, gy));
            if rx != ry {
                parent[rx.max(ry)] = rx.min(ry);
                queue.push((gx, gy));
            }
        }
    }
    let mut blocks: std::collections::BTreeMap<usize, Vec<u32>> = Default::default();
    for i in 0..points.len() {
        let r = find(&mut parent, i);
        blocks.entry(r).or_default().push(points[i]);
    }
    let mut blocks: Vec<Vec<u32>> = blocks.into_values().collect();
    for b in &mut blocks {
        b.sort_unstable();
    }
    blocks.sort();
    BlockSystem {
        block_size: blocks[0].len(),
        block_count: blocks.len(),
        blocks,
    }
}

/// A nontrivial block system on a transitive orbit, if any: the one with the
/// fewest blocks among the minimal systems through the first point.
pub fn find_block_system(points: &[u32], gens: &[Permutation]) -> Option<BlockSystem> {
    if points.len() < 3 {
        return None;
    }
    let systems: Vec<BlockSystem> = (1..points.len())
        .into_par_iter()
        .map(|j| minimal_block_system(points, gens, j))
        .collect();
    systems
        .into_iter()
        .filter(|s| s.block_count > 1)
        .min_by_key(|s| s.block_count)
}

pub fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Does an order on `n` points mean the group contains `Alt(n)`?
pub fn order_is_full(order: &BigUint, n: usize) -> bool {
    if n <= 2 {
        return true;
    }
    let sym = factorial(n);
    *order == sym || order * 2u32 == sym
}

/// A prime cycle inside a primitive group, which forces fullness when
/// `p ≤ n − 3` (Jordan).
#[derive(Debug, Clone, Serialize)]
pub struct JordanWitness {
    pub prime: usize,
    pub cycle: Vec<u32>,
}

pub fn jordan_witness(points: &[u32], gens: &[Permutation], attempts: usize, seed: u64) -> Option<JordanWitness> {
    let n = points.len();
    if n < 4 || gens.is_empty() || find_block_system(points, gens).is_some() {
        return None;
    }
    let mut pr = ProductReplacement::new(gens, seed);
    for _ in 0..attempts {
        let g = pr.next();
        let cycles = g.cycles();
        let lens: Vec<usize> = cycles.iter().map(Vec::len).collect();
        for (i, c) in cycles.iter().enumerate() {
            let p = c.len();
            if p > n - 3 || !crate::catalog::is_prime(p as u32) {
                continue;
            }
            if lens.iter().enumerate().any(|(k, &l)| k != i && l % p == 0) {
                continue;
            }
            let m = lens
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .fold(1u64, |acc, (_, &l)| lcm(acc, l as u64));
            let h = g.pow(m as i64);
            let cyc = h.cycles();
            if cyc.len() == 1 && cyc[0].len() == p {
                return Some(JordanWitness {
                    prime: p,
                    cycle: cyc[0].clone(),
                });
            }
        }
    }
    None
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

#[derive(Debug, Clone, Serialize)]
pub struct OrbitVerdict {
    pub size: usize,
    /// Order of the group induced on the orbit, when computed.
    #[serde(serialize_with = "ser_opt_big")]
    pub order: Option<BigUint>,
    pub full: Option<bool>,
    pub blocks: Option<BlockSystem>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MonodromyReport {
    pub fiber_size: usize,
    pub mode: FiberMode,
    pub generator_count: usize,
    pub orbits: OrbitPartition,
    #[serde(serialize_with = "ser_opt_big")]
    pub group_order: Option<BigUint>,
    pub per_orbit: Vec<OrbitVerdict>,
    pub quasi_full: Option<bool>,
    /// Set when a resource cap stopped the computation; fields left `None`
    /// were not computed.
    pub truncated: bool,
    pub note: Option<String>,
    #[serde(skip)]
    pub generators: Vec<Permutation>,
}

fn ser_opt_big<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.serialize_some(&b.to_string()),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone)]
pub struct MonodromyOptions {
    pub memory_budget: u64,
    pub seed: u64,
}

impl Default for MonodromyOptions {
    fn default() -> Self {
        MonodromyOptions {
            memory_budget: DEFAULT_MEMORY_BUDGET,
            seed: 0x6d6f_6e6f,
        }
    }
}

/// Group induced on one orbit: generators relabeled to `0..|X|`.
fn restricted_generators(points: &[u32], gens: &[Permutation]) -> Vec<Permutation> {
    let degree = gens.first().map_or(0, |g| g.degree());
    let mut position = vec![u32::MAX; degree];
    for (i, &x) in points.iter().enumerate() {
        position[x as usize] = i as u32;
    }
    gens.iter().map(|g| g.restrict(points, &position)).collect()
}

/// Sign characters of the wreath product containing an imprimitive group:
/// per generator, whether the product of the within-block signs (blocks
/// identified with `0..m` in sorted order) is odd, and whether the block
/// permutation is odd. Also returns the block permutations.
fn block_characters(gens: &[Permutation], blocks: &[Vec<u32>]) -> (Vec<[bool; 2]>, Vec<Permutation>) {
    let degree = gens.first().map_or(0, |g| g.degree());
    let mut block_of = vec![0u32; degree];
    let mut slot = vec![0u32; degree];
    for (b, blk) in blocks.iter().enumerate() {
        for (k, &x) in blk.iter().enumerate() {
            block_of[x as usize] = b as u32;
            slot[x as usize] = k as u32;
        }
    }
    let mut chars = Vec::with_capacity(gens.len());
    let mut block_perms = Vec::with_capacity(gens.len());
    for g in gens {
        let mut within_odd = false;
        let images: Vec<u32> = blocks.iter().map(|blk| block_of[g.apply(blk[0]) as usize]).collect();
        for blk in blocks {
            let local: Vec<u32> = blk.iter().map(|&x| slot[g.apply(x) as usize]).collect();
            within_odd ^= !Permutation::from_images(local).expect("blocks are mapped to blocks").is_even();
        }
        let pi = Permutation::from_images(images).expect("blocks are permuted");
        chars.push([within_odd, !pi.is_even()]);
        block_perms.push(pi);
    }
    (chars, block_perms)
}

/// Rank over F₂ of a list of bit vectors.
fn f2_rank(rows: &[Vec<bool>]) -> usize {
    let mut basis: Vec<Vec<bool>> = Vec::new();
    for r in rows {
        let mut r = r.clone();
        for b in &basis {
            let lead = b.iter().position(|&x| x).unwrap();
            if r[lead] {
                for (x, &y) in r.iter_mut().zip(b) {
                    *x ^= y;
                }
            }
        }
        if r.iter().any(|&x| x) {
            basis.push(r);
        }
    }
    basis.len()
}

/// A proven upper bound for a transitive group on `0..n`. Without blocks:
/// the symmetric order, halved when every generator is even. With blocks
/// `k × m`: the order of the (recursively computed) block action times
/// `(m!)^k`, halved when the within-block sign is determined by the block
/// sign on the generators.
fn order_bound(n: usize, gens: &[Permutation], blocks: Option<&BlockSystem>, opts: &MonodromyOptions) -> Result<BigUint> {
    let Some(b) = blocks else {
        return Ok(if n > 1 && gens.iter().all(Permutation::is_even) {
            factorial(n) / 2u32
        } else {
            factorial(n)
        });
    };
    let (chars, block_perms) = block_characters(gens, &b.blocks);
    let (block_order, _) = transitive_order(b.block_count, &block_perms, opts)?;
    let rows: Vec<Vec<bool>> = chars.iter().map(|c| c.to_vec()).collect();
    let block_rows: Vec<Vec<bool>> = chars.iter().map(|c| vec![c[1]]).collect();
    let free = f2_rank(&rows) > f2_rank(&block_rows);
    let bound = block_order * factorial(b.block_size).pow(b.block_count as u32);
    Ok(if free { bound } else { bound / 2u32 })
}

/// Exact order of a transitive group on `0..n`, with its block system.
fn transitive_order(n: usize, gens: &[Permutation], opts: &MonodromyOptions) -> Result<(BigUint, Option<BlockSystem>)> {
    let points: Vec<u32> = (0..n as u32).collect();
    let blocks = find_block_system(&points, gens);
    let bound = order_bound(n, gens, blocks.as_ref(), opts)?;
    let chain = StabChain::build(
        n,
        gens,
        &ChainOptions {
            upper_bound: Some(bound),
            seed: opts.seed,
            memory_budget: opts.memory_budget,
            ..ChainOptions::default()
        },
    )?;
    Ok((chain.order(), blocks))
}

/// Order and fullness of the group induced on one orbit.
pub fn orbit_verdict(points: &[u32], gens: &[Permutation], opts: &MonodromyOptions) -> Result<OrbitVerdict> {
    let local = restricted_generators(points, gens);
    let (order, blocks) = transitive_order(points.len(), &local, opts)?;
    let full = order_is_full(&order, points.len());
    let blocks = blocks.map(|b| BlockSystem {
        blocks: b
            .blocks
            .iter()
            .map(|blk| blk.iter().map(|&i| points[i as usize]).collect())
            .collect(),
        ..b
    });
    Ok(OrbitVerdict {
        size: points.len(),
        order: Some(order),
        full: Some(full),
        blocks,
    })
}

/// Full report from the fiber and its braid generator permutations. A
/// resource cap yields a truncated report rather than an error.
pub fn monodromy_report(f: &Fiber, gens: Vec<Permutation>, opts: &MonodromyOptions) -> MonodromyReport {
    let n = f.len();
    let orbits = braid_orbits(n, &gens);
    let mut report = MonodromyReport {
        fiber_size: n,
        mode: f.mode(),
        generator_count: gens.len(),
        per_orbit: orbits
            .orbits
            .iter()
            .map(|o| OrbitVerdict {
                size: o.len(),
                order: None,
                full: None,
                blocks: None,
            })
            .collect(),
        orbits,
        group_order: None,
        quasi_full: None,
        truncated: false,
        note: None,
        generators: Vec::new(),
    };
    let mut verdicts = Vec::new();
    for o in &report.orbits.orbits {
        match orbit_verdict(o, &gens, opts) {
            Ok(v) => verdicts.push(v),
            Err(e) => {
                report.truncated = true;
                report.note = Some(e.to_string());
                report.generators = gens;
                return report;
            }
        }
    }
    report.per_orbit = verdicts;
    match whole_group(n, &gens, &report.per_orbit, &report.orbits, opts) {
        Ok((order, quasi)) => {
            report.group_order = Some(order);
            report.quasi_full = Some(quasi);
        }
        Err(e) => {
            report.truncated = true;
            report.note = Some(e.to_string());
        }
    }
    report.generators = gens;
    report
}

/// Order of the whole monodromy group and the quasi-fullness verdict.
fn whole_group(
    n: usize,
    gens: &[Permutation],
    verdicts: &[OrbitVerdict],
    orbits: &OrbitPartition,
    opts: &MonodromyOptions,
) -> Result<(BigUint, bool)> {
    if orbits.count() == 1 {
        let v = &verdicts[0];
        return Ok((v.order.clone().unwrap(), v.full.unwrap()));
    }
    // The product of the orbit orders, cut down by the sign characters of
    // the orbits that the generators tie together.
    let mut rows: Vec<Vec<bool>> = vec![Vec::new(); gens.len()];
    let mut separate_rank = 0;
    for (orbit, v) in orbits.orbits.iter().zip(verdicts) {
        let local = restricted_generators(orbit, gens);
        let chars: Vec<Vec<bool>> = match &v.blocks {
            Some(b) => {
                let local_blocks: Vec<Vec<u32>> = b
                    .blocks
                    .iter()
                    .map(|blk| blk.iter().map(|x| orbit.binary_search(x).unwrap() as u32).collect())
                    .collect();
                block_characters(&local, &local_blocks).0.iter().map(|c| c.to_vec()).collect()
            }
            None => local.iter().map(|g| vec![!g.is_even()]).collect(),
        };
        separate_rank += f2_rank(&chars);
        for (row, c) in rows.iter_mut().zip(chars) {
            row.extend(c);
        }
    }
    let joint_rank = f2_rank(&rows);
    let product: BigUint = verdicts.iter().map(|v| v.order.clone().unwrap()).product();
    let bound = product / (BigUint::one() << (separate_rank - joint_rank));
    let chain = StabChain::build(
        n,
        gens,
        &ChainOptions {
            upper_bound: Some(bound),
            seed: opts.seed,
            memory_budget: opts.memory_budget,
            ..ChainOptions::default()
        },
    )?;
    let order = chain.order();
    if !verdicts.iter().all(|v| v.full == Some(true)) {
        return Ok((order, false));
    }
    let quasi = quasi_fullness(n, gens, &orbits.orbits, &order, opts)?;
    Ok((order, quasi))
}

/// For each orbit, does the pointwise stabilizer of all other orbits induce
/// at least `Alt` on it?
pub fn quasi_fullness(
    n: usize,
    gens: &[Permutation],
    orbits: &[Vec<u32>],
    group_order: &BigUint,
    opts: &MonodromyOptions,
) -> Result<bool> {
    for (i, orbit) in orbits.iter().enumerate() {
        if orbit.len() <= 2 {
            continue;
        }
        let others: Vec<u32> = orbits
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i)
            .flat_map(|(_, o)| o.iter().copied())
            .collect();
        let chain = StabChain::build(
            n,
            gens,
            &ChainOptions {
                base_prefix: others.clone(),
                upper_bound: Some(group_order.clone()),
                seed: opts.seed,
                memory_budget: opts.memory_budget,
                ..ChainOptions::default()
            },
        )?;
        let stabilizer = chain.order_from(others.len());
        if !order_is_full_or_more(&stabilizer, orbit.len()) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn order_is_full_or_more(order: &BigUint, n: usize) -> bool {
    order * 2u32 >= factorial(n)
}

/// Label census and the Conway–Parker comparison between braid orbits and
/// realized lifting labels.
#[derive(Debug, Clone, Serialize)]
pub struct ConwayParkerReport {
    pub orbit_count: usize,
    pub label_count: usize,
    /// Distinct orbits carry distinct labels.
    pub injective: bool,
    /// Every realized label is carried by some orbit (true by construction).
    pub surjective: bool,
    pub bijective: bool,
    /// `(label, number of orbits, number of fiber points)`.
    pub census: Vec<(u32, usize, usize)>,
}

pub fn conway_parker_report(orbits: &OrbitPartition) -> Option<ConwayParkerReport> {
    let labels = orbits.labels.as_ref()?;
    let mut census: std::collections::BTreeMap<u32, (usize, usize)> = Default::default();
    for (o, &l) in orbits.orbits.iter().zip(labels) {
        let e = census.entry(l).or_default();
        e.0 += 1;
        e.1 += o.len();
    }
    let injective = census.values().all(|&(k, _)| k == 1);
    Some(ConwayParkerReport {
        orbit_count: orbits.count(),
        label_count: census.len(),
        injective,
        surjective: true,
        bijective: injective,
        census: census.into_iter().map(|(l, (k, s))| (l, k, s)).collect(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct MassReport {
    /// `∏ |C_i|^{ν_i}`.
    pub class_product: String,
    pub derived_order: usize,
    pub inner_order: usize,
    pub aut_gc_order: usize,
    pub predicted_inn: f64,
    pub predicted_aut: f64,
    pub actual_inn: Option<usize>,
    pub actual_aut: Option<usize>,
    /// Predicted over actual; absent when the actual fiber is empty.
    pub ratio_inn: Option<f64>,
    pub ratio_aut: Option<f64>,
    /// Per-label prediction `|ℱ_h| / |H₂(G,C)|` against actual label shares.
    pub per_label: Option<Vec<LabelMass>>,
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LabelMass {
    pub label: u32,
    pub predicted: f64,
    pub actual: usize,
    pub ratio: f64,
}

/// Asymptotic mass predictions against actual fiber sizes.
pub fn mass_report(
    h: &HurwitzParameter,
    aut_gc_order: usize,
    actual_inn: Option<usize>,
    actual_aut: Option<usize>,
    label_sizes: Option<(&[(u32, usize)], usize)>,
) -> MassReport {
    let g = h.group();
    let product: BigUint = h
        .classes()
        .iter()
        .zip(h.nu())
        .map(|(&c, &v)| BigUint::from(g.conjugacy_classes()[c].size()).pow(v as u32))
        .product();
    let derived = g.derived_set().len();
    let inner = g.order() / g.center_set().len();
    let p = product.to_f64().unwrap_or(f64::INFINITY);
    let predicted_inn = p / (derived as f64 * inner as f64);
    let predicted_aut = p / (derived as f64 * aut_gc_order as f64);
    let ratio = |pred: f64, actual: Option<usize>| match actual {
        Some(a) if a > 0 => Some(pred / a as f64),
        _ => None,
    };
    let per_label = label_sizes.map(|(sizes, kernel_order)| {
        let total: usize = sizes.iter().map(|&(_, s)| s).sum();
        let predicted = total as f64 / kernel_order as f64;
        sizes
            .iter()
            .map(|&(label, actual)| LabelMass {
                label,
                predicted,
                actual,
                ratio: predicted / actual as f64,
            })
            .collect()
    });
    let degenerate = matches!(actual_inn, Some(0)) || matches!(actual_aut, Some(0));
    MassReport {
        class_product: product.to_string(),
        derived_order: derived,
        inner_order: inner,
        aut_gc_order,
        predicted_inn,
        predicted_aut,
        actual_inn,
        actual_aut,
        ratio_inn: ratio(predicted_inn, actual_inn),
        ratio_aut: ratio(predicted_aut, actual_aut),
        per_label,
        note: degenerate.then(|| "empty fiber: ratio undefined".to_string()),
    }
}
