use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `{0, …, degree−1}` stored as its image array.
///
/// Products are read left to right: `p.compose(q)` first applies `p`, then
/// `q`, so `(p·q)(x) = q(p(x))`. This matches the right-action convention
/// `g^h = h⁻¹gh` used for conjugation and for the braiding rule.
///
/// The derived `Ord` is lexicographic on the image array; the identity is the
/// least permutation of any given degree.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "image array {images:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Self { images })
    }

    /// Builds a permutation from 1-based one-line notation.
    pub fn from_one_line(one_based: &[u32]) -> Result<Self> {
        if one_based.contains(&0) {
            return Err(Error::InvalidPermutation(
                "one-line images are 1-based; found 0".into(),
            ));
        }
        Self::from_images(one_based.iter().map(|&x| x - 1).collect())
    }

    /// Builds a permutation from 0-based cycles.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (k, &x) in cycle.iter().enumerate() {
                let x = x as usize;
                if x >= degree {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} exceeds degree {degree}",
                        x + 1
                    )));
                }
                if touched[x] {
                    return Err(Error::InvalidPermutation(format!(
                        "point {} appears twice in cycle notation",
                        x + 1
                    )));
                }
                touched[x] = true;
                images[x] = cycle[(k + 1) % cycle.len()];
            }
        }
        Ok(Self { images })
    }

    /// Parses 1-based disjoint-cycle notation such as `"(1 2)(3 4 5)"`.
    ///
    /// Commas are accepted as separators. `"()"` and the empty string give
    /// the identity.
    pub fn parse_cycles(text: &str, degree: usize) -> Result<Self> {
        Self::from_cycles(degree, &parse_cycle_list(text)?)
    }

    /// Largest point (1-based) mentioned in cycle notation.
    pub fn max_point_in_cycles(text: &str) -> Result<usize> {
        Ok(parse_cycle_list(text)?
            .iter()
            .flatten()
            .map(|&x| x as usize + 1)
            .max()
            .unwrap_or(0))
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn checked_compose(&self, other: &Permutation) -> Result<Permutation> {
        check_degrees(self, other)?;
        Ok(self.compose(other))
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x as usize] = i as u32;
        }
        Permutation { images }
    }

    /// `h⁻¹ · self · h`.
    pub fn conjugate_by(&self, h: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), h.degree());
        let mut images = vec![0; self.degree()];
        for (x, &gx) in self.images.iter().enumerate() {
            images[h.images[x] as usize] = h.images[gx as usize];
        }
        Permutation { images }
    }

    pub fn pow(&self, exponent: i64) -> Permutation {
        let base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut e = exponent.unsigned_abs();
        let mut acc = Permutation::identity(self.degree());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            sq = sq.compose(&sq);
            e >>= 1;
        }
        acc
    }

    /// Disjoint cycles of length at least two, each starting at its least
    /// point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start as u32];
            seen[start] = true;
            let mut x = self.images[start];
            while x as usize != start {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.images[x as usize];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Cycle lengths including fixed points, in decreasing order.
    pub fn cycle_type(&self) -> Vec<u32> {
        let mut seen = vec![false; self.degree()];
        let mut parts = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                len += 1;
                x = self.images[x] as usize;
            }
            parts.push(len);
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        parts
    }

    pub fn order(&self) -> u64 {
        self.cycle_type()
            .into_iter()
            .fold(1u64, |acc, len| num_integer_lcm(acc, len as u64))
    }

    pub fn is_even(&self) -> bool {
        let transpositions: u32 = self.cycle_type().iter().map(|&l| l - 1).sum();
        transpositions % 2 == 0
    }

    /// Points moved by the permutation.
    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.images
            .iter()
            .enumerate()
            .filter(|(i, &x)| *i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// Places this permutation on points `offset..offset+degree` of a larger
    /// domain of size `total`, fixing everything else.
    pub fn shifted(&self, offset: usize, total: usize) -> Permutation {
        let mut images: Vec<u32> = (0..total as u32).collect();
        for (i, &x) in self.images.iter().enumerate() {
            images[offset + i] = offset as u32 + x;
        }
        Permutation { images }
    }

    /// Restriction to an invariant subset, renumbered by position in `points`.
    pub fn restrict(&self, points: &[u32], position: &[u32]) -> Permutation {
        Permutation {
            images: points
                .iter()
                .map(|&p| position[self.images[p as usize] as usize])
                .collect(),
        }
    }
}

fn num_integer_lcm(a: u64, b: u64) -> u64 {
    fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    }
    a / gcd(a, b) * b
}

fn check_degrees(a: &Permutation, b: &Permutation) -> Result<()> {
    if a.degree() != b.degree() {
        return Err(Error::DegreeMismatch(a.degree(), b.degree()));
    }
    Ok(())
}

/// Returns `h⁻¹ g h`.
pub fn conjugate(g: &Permutation, h: &Permutation) -> Result<Permutation> {
    check_degrees(g, h)?;
    Ok(g.conjugate_by(h))
}

/// Commutator `a⁻¹ b⁻¹ a b`.
pub fn commutator(a: &Permutation, b: &Permutation) -> Permutation {
    a.inverse().compose(&b.inverse()).compose(a).compose(b)
}

fn parse_cycle_list(text: &str) -> Result<Vec<Vec<u32>>> {
    let trimmed = text.trim();
    let mut cycles = Vec::new();
    let mut rest = trimmed;
    while !rest.is_empty() {
        let Some(after_open) = rest.strip_prefix('(') else {
            return Err(Error::InvalidPermutation(format!(
                "expected '(' in cycle notation {trimmed:?}"
            )));
        };
        let Some(close) = after_open.find(')') else {
            return Err(Error::InvalidPermutation(format!(
                "unbalanced parenthesis in {trimmed:?}"
            )));
        };
        let body = &after_open[..close];
        let mut cycle = Vec::new();
        for token in body.split(|c: char| c == ',' || c.is_whitespace()) {
            if token.is_empty() {
                continue;
            }
            let point: u32 = token.parse().map_err(|_| {
                Error::InvalidPermutation(format!("bad point {token:?} in {trimmed:?}"))
            })?;
            if point == 0 {
                return Err(Error::InvalidPermutation(
                    "cycle notation is 1-based; found 0".into(),
                ));
            }
            cycle.push(point - 1);
        }
        if cycle.len() > 1 {
            cycles.push(cycle);
        }
        rest = after_open[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl fmt::Display for Permutation {
    /// 1-based disjoint-cycle notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for cycle in cycles {
            f.write_str("(")?;
            for (k, x) in cycle.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{}]{}", self.degree(), self)
    }
}

/// Cycle notation whose degree is the largest point mentioned.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let degree = Self::max_point_in_cycles(s)?;
        Self::parse_cycles(s, degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(text: &str, n: usize) -> Permutation {
        Permutation::parse_cycles(text, n).unwrap()
    }

    #[test]
    fn conjugate_transposition() {
        assert_eq!(conjugate(&p("(1 2)", 3), &p("(2 3)", 3)).unwrap(), p("(1 3)", 3));
    }

    #[test]
    fn conjugate_by_identity() {
        let g = p("(1 4)(2 3 5)", 5);
        assert_eq!(conjugate(&g, &Permutation::identity(5)).unwrap(), g);
    }

    #[test]
    fn conjugate_five_cycle() {
        let got = conjugate(&p("(1 2 3 4 5)", 5), &p("(1 2)", 5)).unwrap();
        assert_eq!(got, p("(1 3 4 5 2)", 5));
        assert_eq!(got, p("(2 1 3 4 5)", 5));
    }

    #[test]
    fn conjugate_degree_mismatch() {
        assert!(matches!(
            conjugate(&p("(1 2)", 2), &p("(1 2)", 3)),
            Err(Error::DegreeMismatch(2, 3))
        ));
    }

    #[test]
    fn composition_is_left_to_right() {
        // (1 2) then (2 3): 1 -> 2 -> 3
        let prod = p("(1 2)", 3).compose(&p("(2 3)", 3));
        assert_eq!(prod.apply(0), 2);
        assert_eq!(prod, p("(1 3 2)", 3));
    }

    #[test]
    fn parse_and_display() {
        let g = p("(3 4 5)(1 2)", 6);
        assert_eq!(g.to_string(), "(1 2)(3 4 5)");
        assert_eq!(Permutation::identity(4).to_string(), "()");
        assert_eq!("(1,2)(3,4)".parse::<Permutation>().unwrap().degree(), 4);
        assert!(Permutation::parse_cycles("(1 2)(2 3)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 7)", 3).is_err());
        assert!(Permutation::parse_cycles("(0 1)", 3).is_err());
        assert!(Permutation::parse_cycles("(1 2", 3).is_err());
        assert_eq!(
            Permutation::from_one_line(&[2, 3, 1]).unwrap(),
            p("(1 2 3)", 3)
        );
        assert!(Permutation::from_one_line(&[1, 1, 2]).is_err());
    }

    #[test]
    fn order_parity_cycle_type() {
        let g = p("(1 2)(3 4 5)", 6);
        assert_eq!(g.order(), 6);
        assert!(!g.is_even());
        assert_eq!(g.cycle_type(), vec![3, 2, 1]);
        assert_eq!(g.pow(6), Permutation::identity(6));
        assert_eq!(g.pow(-1), g.inverse());
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n as u32).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    proptest! {
        #[test]
        fn conjugation_is_a_right_action(
            g in arb_perm(7), h in arb_perm(7), k in arb_perm(7)
        ) {
            let lhs = conjugate(&conjugate(&g, &h).unwrap(), &k).unwrap();
            let rhs = conjugate(&g, &h.compose(&k)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn inverse_cancels(g in arb_perm(9)) {
            prop_assert!(g.inverse().compose(&g).is_identity());
            prop_assert!(g.compose(&g.inverse()).is_identity());
        }

        #[test]
        fn display_round_trips(g in arb_perm(8)) {
            let text = g.to_string();
            prop_assert_eq!(Permutation::parse_cycles(&text, 8).unwrap(), g);
        }
    }
}
