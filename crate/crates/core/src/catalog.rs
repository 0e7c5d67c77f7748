//! Named groups used throughout the test suite and accepted by the CLI.

use crate::error::{Error, Result};
use crate::perm::{FiniteGroup, PermGroup, Permutation};

/// `S_n` on `n` points, generated by `(1 2)` and `(1 2 … n)`.
pub fn symmetric(n: usize) -> FiniteGroup {
    FiniteGroup::new(symmetric_perm(n)).expect("symmetric group within cap")
}

pub fn symmetric_perm(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Permutation::from_cycles(n, &[vec![0, 1]]).unwrap());
    }
    if n >= 3 {
        gens.push(Permutation::from_cycles(n, &[(0..n as u32).collect()]).unwrap());
    }
    PermGroup::new(n, gens).unwrap()
}

/// `A_n` on `n` points, generated by the 3-cycles `(1 2 k)`.
pub fn alternating(n: usize) -> FiniteGroup {
    let gens = (2..n as u32)
        .map(|k| Permutation::from_cycles(n, &[vec![0, 1, k]]).unwrap())
        .collect();
    FiniteGroup::from_generators(n, gens).expect("alternating group within cap")
}

/// `PGL₂(p)` acting on the `p + 1` points of the projective line, with
/// `∞` as the last point.
pub fn pgl2(p: u32) -> FiniteGroup {
    FiniteGroup::new(pgl2_perm(p)).expect("PGL2 within cap")
}

pub fn pgl2_perm(p: u32) -> PermGroup {
    assert!(is_prime(p), "pgl2 needs a prime");
    let inf = p;
    let inv = |x: u32| mod_pow(x, p - 2, p);
    let translate: Vec<u32> = (0..=p).map(|x| if x == inf { inf } else { (x + 1) % p }).collect();
    let a = primitive_root(p);
    let scale: Vec<u32> = (0..=p).map(|x| if x == inf { inf } else { x * a % p }).collect();
    let flip: Vec<u32> = (0..=p)
        .map(|x| match x {
            _ if x == inf => 0,
            0 => inf,
            _ => (p - inv(x)) % p,
        })
        .collect();
    let gens = [translate, scale, flip]
        .into_iter()
        .map(|im| Permutation::from_images(im).unwrap())
        .collect();
    PermGroup::new(p as usize + 1, gens).unwrap()
}

/// Looks up a group by name: `S<n>`, `A<n>`, `PGL2(<p>)`.
pub fn by_name(name: &str) -> Result<FiniteGroup> {
    let bad = || Error::Input(format!("unknown group name {name:?}"));
    let name = name.trim();
    if let Some(rest) = name.strip_prefix("PGL2(").and_then(|r| r.strip_suffix(')')) {
        let p: u32 = rest.parse().map_err(|_| bad())?;
        if !is_prime(p) || p > 50 {
            return Err(bad());
        }
        return Ok(pgl2(p));
    }
    let (kind, digits) = name.split_at(1.min(name.len()));
    let n: usize = digits.parse().map_err(|_| bad())?;
    if !(1..=10).contains(&n) {
        return Err(bad());
    }
    let perm = match kind {
        "S" => symmetric_perm(n),
        "A" => alternating(n).perm_group().clone(),
        _ => return Err(bad()),
    };
    FiniteGroup::new(perm)
}

pub(crate) fn is_prime(p: u32) -> bool {
    p >= 2 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub(crate) fn mod_pow(base: u32, exp: u32, p: u32) -> u32 {
    let (mut acc, mut b, mut e) = (1u64, base as u64 % p as u64, exp);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    acc as u32
}

fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    (2..p)
        .find(|&a| (1..p - 1).all(|k| mod_pow(a, k, p) != 1))
        .expect("prime has a primitive root")
}
