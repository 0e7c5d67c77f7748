use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{ElemId, FiniteGroup};

use super::NielsenTuple;

/// A word in the Artin generators: letter `+i` is `σ_i`, `−i` is `σ_i⁻¹`
/// (1-based). Letters act left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BraidWord {
    pub letters: Vec<i32>,
}

impl BraidWord {
    pub fn identity() -> Self {
        BraidWord { letters: Vec::new() }
    }

    pub fn sigma(i: usize) -> Self {
        BraidWord {
            letters: vec![i as i32],
        }
    }

    pub fn inverse(&self) -> Self {
        BraidWord {
            letters: self.letters.iter().rev().map(|&l| -l).collect(),
        }
    }

    pub fn then(&self, other: &BraidWord) -> Self {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { letters }
    }

    /// `A_ij = (σ_{j−1}⋯σ_{i+1}) σ_i² (σ_{i+1}⁻¹⋯σ_{j−1}⁻¹)`, 1-based, `i < j`.
    pub fn pure(i: usize, j: usize) -> Self {
        assert!(1 <= i && i < j);
        let outer: Vec<i32> = (i + 1..j).rev().map(|k| k as i32).collect();
        let mut letters = outer.clone();
        letters.extend([i as i32, i as i32]);
        letters.extend(outer.iter().rev().map(|&k| -k));
        BraidWord { letters }
    }

    /// Largest strand index the word touches.
    pub fn strands(&self) -> usize {
        self.letters.iter().map(|l| l.unsigned_abs() as usize + 1).max().unwrap_or(0)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|&l| if l > 0 { format!("s{l}") } else { format!("s{}^-1", -l) })
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BraidGenerator {
    /// `σ_i` with positions `i, i+1` in the same block.
    Sigma { i: usize },
    /// The pure braid `A_ij`.
    Pure { i: usize, j: usize },
}

/// Generators of `Br_ν`: interior `σ_i` and every `A_ij`, `1 ≤ i < j ≤ n`.
pub fn braid_nu_generators(nu: &[usize]) -> Vec<(BraidGenerator, BraidWord)> {
    let n: usize = nu.iter().sum();
    let mut block_end = Vec::new();
    let mut acc = 0;
    for &v in nu {
        acc += v;
        block_end.push(acc);
    }
    let mut out = Vec::new();
    for i in 1..n {
        // positions i and i+1 (1-based) share a block unless i ends one
        if !block_end.contains(&i) {
            out.push((BraidGenerator::Sigma { i }, BraidWord::sigma(i)));
        }
    }
    for i in 1..=n {
        for j in i + 1..=n {
            out.push((BraidGenerator::Pure { i, j }, BraidWord::pure(i, j)));
        }
    }
    out
}

/// `σ_i` (1-based) on a tuple of permutations.
pub fn apply_sigma(t: &NielsenTuple, i: usize, inverse: bool) -> Result<NielsenTuple> {
    if i == 0 || i >= t.len() {
        return Err(Error::Input(format!(
            "braid index {i} out of range for {} strands",
            t.len()
        )));
    }
    let mut entries = t.entries.clone();
    let (a, b) = (&t.entries[i - 1], &t.entries[i]);
    if inverse {
        entries[i - 1] = b.conjugate_by(&a.inverse());
        entries[i] = a.clone();
    } else {
        entries[i - 1] = b.clone();
        entries[i] = a.conjugate_by(b);
    }
    Ok(NielsenTuple { entries })
}

/// `σ_i` (0-based `i`, acting on positions `i, i+1`) on element ids.
#[inline]
pub fn apply_sigma_ids(g: &FiniteGroup, t: &mut [ElemId], i: usize, inverse: bool) {
    let (a, b) = (t[i], t[i + 1]);
    if inverse {
        t[i] = g.conj(b, g.inv(a));
        t[i + 1] = a;
    } else {
        t[i] = b;
        t[i + 1] = g.conj(a, b);
    }
}

pub fn apply_word_ids(g: &FiniteGroup, t: &mut [ElemId], w: &BraidWord) {
    for &l in &w.letters {
        apply_sigma_ids(g, t, l.unsigned_abs() as usize - 1, l < 0);
    }
}

impl NielsenTuple {
    pub fn apply_word(&self, w: &BraidWord) -> Result<NielsenTuple> {
        let mut t = self.clone();
        for &l in &w.letters {
            t = apply_sigma(&t, l.unsigned_abs() as usize, l < 0)?;
        }
        Ok(t)
    }
}
