//! Matrix constructions of the bundled double covers.
//!
//! Each cover is a group of 2×2 (semi)linear maps over a field of order
//! `p` or `p²`, acting on an orbit of row vectors; the projection to `G` is
//! read off from the induced action on lines and transported to the named
//! base group by an explicit isomorphism.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::analysis::find_isomorphism;
use crate::catalog;
use crate::covers::{coset_quotient, CentralExtension};
use crate::error::{Error, Result};
use crate::perm::{FiniteGroup, Permutation, IDENTITY};

/// `F_p` or `F_p[t]/(t² − r)`; the element `a + b·t` is encoded `a + p·b`.
#[derive(Debug, Clone, Copy)]
struct Field {
    p: u32,
    r: u32,
    q: u32,
}

impl Field {
    fn prime(p: u32) -> Self {
        Field { p, r: 0, q: p }
    }

    /// `F_{p²}` with `t² = r` for a nonsquare `r`.
    fn quadratic(p: u32, r: u32) -> Self {
        assert!((1..p).all(|x| x * x % p != r), "{r} is a square mod {p}");
        Field { p, r, q: p * p }
    }

    fn el(&self, a: u32, b: u32) -> u32 {
        a % self.p + self.p * (b % self.p)
    }

    fn parts(&self, x: u32) -> (u32, u32) {
        (x % self.p, x / self.p)
    }

    fn add(&self, x: u32, y: u32) -> u32 {
        let ((a, b), (c, d)) = (self.parts(x), self.parts(y));
        self.el(a + c, b + d)
    }

    fn mul(&self, x: u32, y: u32) -> u32 {
        let p = self.p;
        let ((a, b), (c, d)) = (self.parts(x), self.parts(y));
        self.el(a * c + b * d % p * self.r, a * d + b * c)
    }

    fn neg(&self, x: u32) -> u32 {
        let (a, b) = self.parts(x);
        self.el(self.p - a, self.p - b)
    }

    fn inv(&self, x: u32) -> u32 {
        (1..self.q).find(|&y| self.mul(x, y) == 1).expect("nonzero")
    }

    fn frobenius(&self, x: u32) -> u32 {
        (0..self.p).fold(1, |acc, _| self.mul(acc, x))
    }
}

type Vector = [u32; 2];

#[derive(Debug, Clone, Copy)]
enum Map {
    /// `v ↦ v·M`.
    Linear([[u32; 2]; 2]),
    /// Coordinatewise `x ↦ x^p`.
    Frobenius,
}

impl Map {
    fn apply(&self, f: &Field, v: Vector) -> Vector {
        match self {
            Map::Linear(m) => [
                f.add(f.mul(v[0], m[0][0]), f.mul(v[1], m[1][0])),
                f.add(f.mul(v[0], m[0][1]), f.mul(v[1], m[1][1])),
            ],
            Map::Frobenius => [f.frobenius(v[0]), f.frobenius(v[1])],
        }
    }
}

fn line_of(f: &Field, v: Vector) -> Vector {
    let s = f.inv(if v[0] != 0 { v[0] } else { v[1] });
    [f.mul(v[0], s), f.mul(v[1], s)]
}

/// Permutations induced by `maps` on the orbit of `seed`, and on the lines
/// through that orbit.
fn vector_and_line_actions(f: &Field, maps: &[Map], seed: Vector) -> (Vec<Permutation>, Vec<Permutation>) {
    let mut orbit = vec![seed];
    let mut k = 0;
    while k < orbit.len() {
        for m in maps {
            let w = m.apply(f, orbit[k]);
            if !orbit.contains(&w) {
                orbit.push(w);
            }
        }
        k += 1;
    }
    orbit.sort_unstable();
    let mut lines: Vec<Vector> = orbit.iter().map(|&v| line_of(f, v)).collect();
    lines.sort_unstable();
    lines.dedup();
    let action = |points: &[Vector], norm: &dyn Fn(Vector) -> Vector, m: &Map| {
        let images = points
            .iter()
            .map(|&v| points.binary_search(&norm(m.apply(f, v))).expect("closed orbit") as u32)
            .collect();
        Permutation::from_images(images).expect("bijection")
    };
    let on_vectors = maps.iter().map(|m| action(&orbit, &|v| v, m)).collect();
    let on_lines = maps.iter().map(|m| action(&lines, &|v| line_of(f, v), m)).collect();
    (on_vectors, on_lines)
}

/// Generator data of a cover, ready to be written to a fixture file.
#[derive(Debug, Clone)]
pub struct CoverData {
    pub name: &'static str,
    pub base_group: &'static str,
    pub cover_degree: usize,
    pub cover_generators: Vec<Permutation>,
    pub image_generators: Vec<Permutation>,
}

impl CoverData {
    pub fn load(&self) -> Result<CentralExtension> {
        let base = Arc::new(catalog::by_name(self.base_group)?);
        crate::covers::load_extension(
            self.cover_degree,
            self.cover_generators.clone(),
            &self.image_generators,
            base,
        )
    }
}

fn derive(name: &'static str, base_group: &'static str, f: Field, maps: &[Map]) -> Result<CoverData> {
    let (vectors, lines) = vector_and_line_actions(&f, maps, [1, 0]);
    let line_degree = lines[0].degree();
    let projective = FiniteGroup::from_generators(line_degree, lines.clone())?;
    let base = catalog::by_name(base_group)?;
    let iso = find_isomorphism(&projective, &base)
        .ok_or_else(|| Error::Internal(format!("line action of {name} is not isomorphic to {base_group}")))?;
    let image_generators = lines
        .iter()
        .map(|l| base.element(iso[projective.id_of(l).expect("generator") as usize]).clone())
        .collect();
    Ok(CoverData {
        name,
        base_group,
        cover_degree: vectors[0].degree(),
        cover_generators: vectors,
        image_generators,
    })
}

fn unitriangular(a: u32) -> [Map; 2] {
    [Map::Linear([[1, a], [0, 1]]), Map::Linear([[1, 0], [a, 1]])]
}

/// `2.S₅ = ⟨SL₂(5), t·diag(1, 2)⟩ ⊂ GL₂(25)` with `t² = 3`, on the 48
/// vectors of the orbit of `(1, 0)`.
pub fn double_s5() -> Result<CoverData> {
    let f = Field::quadratic(5, 3);
    let t = f.el(0, 1);
    let mut maps = unitriangular(1).to_vec();
    maps.push(Map::Linear([[t, 0], [0, f.mul(t, 2)]]));
    derive("2S5", "S5", f, &maps)
}

/// `SL₂(5)` on the 24 nonzero vectors of `F₅²`, over `A₅`.
pub fn sl2_5() -> Result<CoverData> {
    let f = Field::prime(5);
    derive("SL25", "A5", f, &unitriangular(1))
}

/// `⟨SL₂(9), Frobenius⟩` on the 80 nonzero vectors of `F₉²`, over `S₆`.
pub fn double_s6() -> Result<CoverData> {
    let f = Field::quadratic(3, 2);
    let mut maps = unitriangular(1).to_vec();
    maps.extend(unitriangular(f.el(0, 1)));
    maps.push(Map::Frobenius);
    derive("2S6", "S6", f, &maps)
}

/// `{A ∈ GL₂(7) : det A = ±1}` on the 48 nonzero vectors of `F₇²`, over
/// `PGL₂(7)`.
pub fn double_pgl2_7() -> Result<CoverData> {
    let f = Field::prime(7);
    let mut maps = unitriangular(1).to_vec();
    maps.push(Map::Linear([[1, 0], [0, f.neg(1)]]));
    derive("2PGL27", "PGL2(7)", f, &maps)
}

pub fn all_covers() -> Result<Vec<CoverData>> {
    Ok(vec![double_s5()?, double_s6()?, sl2_5()?, double_pgl2_7()?])
}

/// The isoclinic partner of a double cover of a group with abelianization
/// of order 2: odd lifts are multiplied by a central element of order 4
/// whose square is identified with the kernel.
pub fn isoclinic_variant(e: &CentralExtension) -> Result<CentralExtension> {
    if e.kernel_order() != 2 || e.base().abelianization().order != 2 {
        return Err(Error::Unsupported(
            "isoclinic variant needs a double cover of a group with abelianization of order 2".into(),
        ));
    }
    let cover = e.cover();
    let ab = e.base().abelianization();
    let d = cover.degree();
    let c4 = Permutation::from_cycles(4, &[vec![0, 1, 2, 3]])?;
    let join = |x: &Permutation, y: &Permutation| {
        let mut images: Vec<u32> = x.images().to_vec();
        images.extend(y.images().iter().map(|&i| i + d as u32));
        Permutation::from_images(images).expect("disjoint union")
    };
    let gens: Vec<Permutation> = cover
        .generator_ids()
        .iter()
        .map(|&s| {
            let odd = ab.label[e.project(s) as usize] != 0;
            let twist = if odd { c4.clone() } else { Permutation::identity(4) };
            join(cover.element(s), &twist)
        })
        .collect();
    let twisted = FiniteGroup::from_generators(d + 4, gens)?;
    let z = e.kernel()[1];
    let w = join(cover.element(z), &c4.pow(2));
    let w = twisted
        .id_of(&w)
        .ok_or_else(|| Error::Internal("twisted group misses the identified centre".into()))?;
    let quotient = coset_quotient(&twisted, &[IDENTITY, w])?;
    let images: Vec<_> = e.image_generators().iter().map(|p| e.base().id_of(p).unwrap()).collect();
    CentralExtension::from_parts(Arc::new(quotient), e.base_arc().clone(), images)
}

/// Squares of preimages of the base classes of order 2, keyed by class:
/// whether they land in the kernel's nontrivial element.
pub fn involution_lift_orders(e: &CentralExtension) -> BTreeMap<usize, u64> {
    let base = e.base();
    base.conjugacy_classes()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.element_order == 2)
        .map(|(i, c)| (i, e.cover().element_order(e.preimages(c.representative)[0])))
        .collect()
}
