//! Stabilizer chains built by randomized Schreier–Sims with a deterministic
//! completion step.
//!
//! A chain is only ever returned in a certified state: either its order has
//! reached a caller-supplied upper bound for the group (so the chain cannot be
//! missing anything), or every Schreier generator at every level has been
//! sifted to the identity.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Permutation;
use crate::error::{Error, Result};

const NONE: u32 = u32::MAX;

/// Default cap on stored transversal entries (points), roughly 256 MiB.
pub const DEFAULT_MEMORY_BUDGET: u64 = 1 << 26;

#[derive(Debug, Clone)]
pub struct ChainOptions {
    /// Base points forced to the front of the base, in order.
    pub base_prefix: Vec<u32>,
    /// A proven upper bound on the group order. Reaching it certifies the
    /// chain without the Schreier generator pass.
    pub upper_bound: Option<BigUint>,
    pub seed: u64,
    /// Consecutive successful random sifts before switching to verification.
    pub confidence: u32,
    /// Maximum number of stored transversal points across all levels.
    pub memory_budget: u64,
}

impl Default for ChainOptions {
    fn default() -> Self {
        Self {
            base_prefix: Vec::new(),
            upper_bound: None,
            seed: 0x5eed_c4a1,
            confidence: 24,
            memory_budget: DEFAULT_MEMORY_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certificate {
    /// Order equals the supplied upper bound.
    UpperBound,
    /// All Schreier generators sift.
    SchreierVerified,
}

#[derive(Debug, Clone)]
struct Level {
    base: u32,
    gens: Vec<Permutation>,
    gens_inv: Vec<Permutation>,
    orbit: Vec<u32>,
    /// Position in `reps_inv` per point, or `NONE`.
    slot: Vec<u32>,
    /// `u_x⁻¹` for each orbit point `x`, where `u_x` maps the base point to `x`.
    reps_inv: Vec<Permutation>,
}

impl Level {
    fn new(base: u32, degree: usize) -> Self {
        let mut slot = vec![NONE; degree];
        slot[base as usize] = 0;
        Level {
            base,
            gens: Vec::new(),
            gens_inv: Vec::new(),
            orbit: vec![base],
            slot,
            reps_inv: vec![Permutation::identity(degree)],
        }
    }

    fn try_add(&mut self, x: u32, gen: usize) {
        let y = self.gens[gen].apply(x);
        if self.slot[y as usize] == NONE {
            let rep = self.gens_inv[gen].compose(&self.reps_inv[self.slot[x as usize] as usize]);
            self.slot[y as usize] = self.reps_inv.len() as u32;
            self.reps_inv.push(rep);
            self.orbit.push(y);
        }
    }

    /// Adds a generator and closes the orbit. Returns the number of new points.
    fn push_gen(&mut self, g: Permutation) -> usize {
        let before = self.orbit.len();
        self.gens_inv.push(g.inverse());
        self.gens.push(g);
        let new = self.gens.len() - 1;
        for k in 0..before {
            let x = self.orbit[k];
            self.try_add(x, new);
        }
        let mut k = before;
        while k < self.orbit.len() {
            let x = self.orbit[k];
            for gi in 0..self.gens.len() {
                self.try_add(x, gi);
            }
            k += 1;
        }
        self.orbit.len() - before
    }

    fn rep_inv(&self, x: u32) -> Option<&Permutation> {
        match self.slot[x as usize] {
            NONE => None,
            s => Some(&self.reps_inv[s as usize]),
        }
    }
}

#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
    certificate: Certificate,
    stored_points: u64,
}

struct Builder<'a> {
    chain: StabChain,
    opts: &'a ChainOptions,
    certified_by_bound: bool,
}

impl StabChain {
    pub fn build(degree: usize, generators: &[Permutation], opts: &ChainOptions) -> Result<Self> {
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let mut chain = StabChain {
            degree,
            levels: opts
                .base_prefix
                .iter()
                .map(|&b| Level::new(b, degree))
                .collect(),
            certificate: Certificate::SchreierVerified,
            stored_points: 0,
        };
        chain.stored_points = chain.levels.len() as u64 * degree as u64;
        let mut b = Builder {
            chain,
            opts,
            certified_by_bound: false,
        };
        let gens: Vec<Permutation> = generators
            .iter()
            .filter(|g| !g.is_identity())
            .cloned()
            .collect();
        for g in &gens {
            b.sift_and_add(g.clone(), 0)?;
            if b.certified_by_bound {
                break;
            }
        }
        if !b.certified_by_bound && !gens.is_empty() {
            b.random_phase(&gens)?;
        }
        if !b.certified_by_bound {
            b.verify()?;
        }
        let mut chain = b.chain;
        chain.certificate = if b.certified_by_bound {
            Certificate::UpperBound
        } else {
            Certificate::SchreierVerified
        };
        Ok(chain)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn certificate(&self) -> Certificate {
        self.certificate
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    /// Group order as the product of basic orbit lengths.
    pub fn order(&self) -> BigUint {
        self.order_from(0)
    }

    /// Order of the pointwise stabilizer of the first `depth` base points.
    pub fn order_from(&self, depth: usize) -> BigUint {
        self.levels
            .iter()
            .skip(depth)
            .fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Strong generators of the pointwise stabilizer of the first `depth`
    /// base points.
    pub fn stabilizer_generators(&self, depth: usize) -> Vec<Permutation> {
        self.levels
            .get(depth)
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    /// Sifts `g` from level `from`; returns the residue and the level where
    /// sifting stopped (`levels.len()` when it passed every level).
    fn sift_from(&self, mut g: Permutation, from: usize) -> (Permutation, usize) {
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let x = g.apply(level.base);
            match level.rep_inv(x) {
                Some(u_inv) => g = g.compose(u_inv),
                None => return (g, i),
            }
        }
        let depth = self.levels.len();
        (g, depth)
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        let (residue, _) = self.sift_from(g.clone(), 0);
        residue.is_identity()
    }

    pub fn stored_points(&self) -> u64 {
        self.stored_points
    }
}

impl Builder<'_> {
    fn check_bound(&mut self) {
        if let Some(bound) = &self.opts.upper_bound {
            if &self.chain.order() == bound {
                self.certified_by_bound = true;
            }
        }
    }

    /// Sifts from `from`; a non-identity residue is added to levels
    /// `from..=j`. Returns whether the chain grew.
    fn sift_and_add(&mut self, g: Permutation, from: usize) -> Result<bool> {
        let (residue, j) = self.chain.sift_from(g, from);
        if residue.is_identity() {
            return Ok(false);
        }
        self.add_residue(residue, from, j)?;
        self.check_bound();
        Ok(true)
    }

    fn add_residue(&mut self, residue: Permutation, from: usize, to: usize) -> Result<()> {
        let degree = self.chain.degree;
        if to == self.chain.levels.len() {
            let base = choose_base_point(&residue);
            self.chain.levels.push(Level::new(base, degree));
            self.chain.stored_points += degree as u64;
        }
        for i in from..=to {
            let added = self.chain.levels[i].push_gen(residue.clone());
            self.chain.stored_points += (added * degree) as u64;
        }
        if self.chain.stored_points > self.opts.memory_budget {
            return Err(Error::Budget {
                what: "stabilizer chain storage",
                limit: self.opts.memory_budget,
                consumed: self.chain.stored_points,
            });
        }
        Ok(())
    }

    fn random_phase(&mut self, gens: &[Permutation]) -> Result<()> {
        let mut pr = ProductReplacement::new(gens, self.opts.seed);
        let mut streak = 0;
        while streak < self.opts.confidence && !self.certified_by_bound {
            let r = pr.next();
            if self.sift_and_add(r, 0)? {
                streak = 0;
            } else {
                streak += 1;
            }
        }
        Ok(())
    }

    /// Bottom-up Schreier generator check. Levels below the cursor always
    /// form a complete chain for the group their generators generate.
    fn verify(&mut self) -> Result<()> {
        let mut i = self.chain.levels.len();
        while i > 0 {
            i -= 1;
            let mut grew_at = None;
            'level: for k in 0..self.chain.levels[i].orbit.len() {
                let x = self.chain.levels[i].orbit[k];
                for gi in 0..self.chain.levels[i].gens.len() {
                    let level = &self.chain.levels[i];
                    let s = &level.gens[gi];
                    let y = s.apply(x);
                    let u_x = level.rep_inv(x).expect("orbit point").inverse();
                    let schreier = u_x.compose(s).compose(level.rep_inv(y).expect("orbit point"));
                    let (residue, j) = self.chain.sift_from(schreier, i + 1);
                    if !residue.is_identity() {
                        self.add_residue(residue, i + 1, j)?;
                        grew_at = Some(j);
                        break 'level;
                    }
                }
            }
            if let Some(j) = grew_at {
                // recheck from the highest changed level
                i = j + 1;
            }
        }
        self.check_bound();
        Ok(())
    }
}

/// Moved point lying on a longest cycle, least such point on ties.
fn choose_base_point(g: &Permutation) -> u32 {
    g.cycles()
        .into_iter()
        .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
        .map(|c| c[0])
        .expect("non-identity residue")
}

/// Product replacement ("rattle") random element generator.
pub struct ProductReplacement {
    state: Vec<Permutation>,
    acc: Permutation,
    rng: ChaCha8Rng,
}

impl ProductReplacement {
    pub fn new(gens: &[Permutation], seed: u64) -> Self {
        assert!(!gens.is_empty());
        let size = gens.len().max(10);
        let state: Vec<Permutation> = (0..size).map(|i| gens[i % gens.len()].clone()).collect();
        let mut pr = ProductReplacement {
            acc: Permutation::identity(gens[0].degree()),
            state,
            rng: ChaCha8Rng::seed_from_u64(seed),
        };
        for _ in 0..60 {
            pr.next();
        }
        pr
    }

    pub fn next(&mut self) -> Permutation {
        let n = self.state.len();
        let i = self.rng.gen_range(0..n);
        let mut j = self.rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let other = if self.rng.gen::<bool>() {
            self.state[j].clone()
        } else {
            self.state[j].inverse()
        };
        self.state[i] = if self.rng.gen::<bool>() {
            self.state[i].compose(&other)
        } else {
            other.compose(&self.state[i])
        };
        self.acc = self.acc.compose(&self.state[i]);
        self.acc.clone()
    }
}
