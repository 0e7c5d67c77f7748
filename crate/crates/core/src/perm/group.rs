use std::sync::OnceLock;

use num_bigint::BigUint;

use super::chain::{ChainOptions, StabChain};
use super::permutation::commutator;
use super::Permutation;
use crate::error::{Error, Result};

/// A permutation group given by generators, with a lazily built stabilizer
/// chain.
#[derive(Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: OnceLock<StabChain>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let chain = OnceLock::new();
        if let Some(c) = self.chain.get() {
            let _ = chain.set(c.clone());
        }
        PermGroup {
            degree: self.degree,
            generators: self.generators.clone(),
            chain,
        }
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        Ok(PermGroup {
            degree,
            generators,
            chain: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup {
            degree,
            generators: Vec::new(),
            chain: OnceLock::new(),
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        self.chain.get_or_init(|| {
            StabChain::build(self.degree, &self.generators, &self.default_chain_options())
                .expect("desk-scale chain within memory budget")
        })
    }

    fn default_chain_options(&self) -> ChainOptions {
        let base_prefix = if self.is_trivial() {
            Vec::new()
        } else {
            vec![self.largest_orbit_point()]
        };
        ChainOptions {
            base_prefix,
            ..ChainOptions::default()
        }
    }

    /// Least point on a largest orbit.
    fn largest_orbit_point(&self) -> u32 {
        let orbits = self.orbits();
        orbits
            .iter()
            .max_by(|a, b| a.len().cmp(&b.len()).then(b[0].cmp(&a[0])))
            .map(|o| o[0])
            .unwrap_or(0)
    }

    /// Builds a fresh chain with the given base prefix; the order it reports
    /// never depends on the prefix.
    pub fn chain_with_base(&self, base_prefix: Vec<u32>) -> Result<StabChain> {
        StabChain::build(
            self.degree,
            &self.generators,
            &ChainOptions {
                base_prefix,
                ..ChainOptions::default()
            },
        )
    }

    pub fn order(&self) -> BigUint {
        self.chain().order()
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        self.chain().contains(g)
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Permutation::is_identity)
    }

    /// Orbits on points, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        orbits_of(self.degree, &self.generators)
    }

    /// Subgroup generated by the commutators of generator pairs, closed under
    /// conjugation by the generators of `self`.
    pub fn derived_subgroup(&self) -> PermGroup {
        let gens = &self.generators;
        let mut seeds = Vec::new();
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                let c = commutator(a, b);
                if !c.is_identity() {
                    seeds.push(c);
                }
            }
        }
        self.normal_closure(seeds)
    }

    /// Normal closure in `self` of the given elements.
    pub fn normal_closure(&self, seeds: Vec<Permutation>) -> PermGroup {
        let mut closure_gens: Vec<Permutation> = Vec::new();
        let mut current = PermGroup::trivial(self.degree);
        let mut queue = seeds;
        while let Some(x) = queue.pop() {
            if x.is_identity() || current.contains(&x) {
                continue;
            }
            for g in &self.generators {
                queue.push(x.conjugate_by(g));
            }
            closure_gens.push(x);
            current = PermGroup::new(self.degree, closure_gens.clone()).expect("same degree");
        }
        current
    }

    /// Is every element of `other` in `self`?
    pub fn contains_group(&self, other: &PermGroup) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }
}

pub fn orbits_of(degree: usize, gens: &[Permutation]) -> Vec<Vec<u32>> {
    let mut seen = vec![false; degree];
    let mut out = Vec::new();
    for start in 0..degree {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut orbit = vec![start as u32];
        let mut k = 0;
        while k < orbit.len() {
            let x = orbit[k];
            for g in gens {
                let y = g.apply(x);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    orbit.push(y);
                }
            }
            k += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}
