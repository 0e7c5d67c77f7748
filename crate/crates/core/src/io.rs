//! JSON files for groups, Hurwitz parameters and covers.
//!
//! A group reference is either a catalog name (`"S5"`, `"A5"`, `"PGL2(7)"`)
//! or a path to a group file, resolved relative to the referring file.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_path_to_error::Segment;

use crate::catalog;
use crate::covers::{load_extension, CentralExtension};
use crate::error::{Error, Result};
use crate::fixtures::CoverData;
use crate::hurwitz::{validate_parameter, HurwitzParameter};
use crate::perm::{FiniteGroup, PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub degree: usize,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassSelector {
    Representative(String),
    Shape {
        order: u64,
        cycle_type: Vec<u32>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParameterFile {
    pub group: String,
    pub classes: Vec<ClassSelector>,
    pub nu: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverFile {
    pub base_group: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cover_degree: Option<usize>,
    pub cover_generators: Vec<String>,
    pub image_generators: Vec<String>,
}

fn pointer(path: &serde_path_to_error::Path) -> String {
    let mut out = String::new();
    for seg in path.iter() {
        match seg {
            Segment::Seq { index } => out.push_str(&format!("/{index}")),
            Segment::Map { key } => out.push_str(&format!("/{}", key.replace('~', "~0").replace('/', "~1"))),
            Segment::Enum { variant } => out.push_str(&format!("/{variant}")),
            Segment::Unknown => out.push_str("/?"),
        }
    }
    if out.is_empty() {
        out.push('/');
    }
    out
}

fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Schema {
        pointer: pointer.into(),
        message: message.into(),
    }
}

/// Parses JSON into `T`, reporting the first error with its JSON pointer.
pub fn parse_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    let de = &mut serde_json::Deserializer::from_str(text);
    serde_path_to_error::deserialize(de).map_err(|e| {
        let p = pointer(e.path());
        schema(p, e.inner().to_string())
    })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn parse_perm_list(texts: &[String], degree: usize, at: &str) -> Result<Vec<Permutation>> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| Permutation::parse_cycles(t, degree).map_err(|e| schema(format!("{at}/{i}"), e.to_string())))
        .collect()
}

impl GroupFile {
    pub fn from_group(name: Option<&str>, g: &PermGroup) -> Self {
        GroupFile {
            name: name.map(str::to_owned),
            degree: g.degree(),
            generators: g.generators().iter().map(ToString::to_string).collect(),
        }
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        if self.degree == 0 {
            return Err(schema("/degree", "degree must be positive"));
        }
        let gens = parse_perm_list(&self.generators, self.degree, "/generators")?;
        FiniteGroup::new(PermGroup::new(self.degree, gens)?)
    }
}

pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    parse_json::<GroupFile>(text)?.build()
}

pub fn load_group(path: &Path) -> Result<FiniteGroup> {
    parse_group(&read(path)?).map_err(|e| in_file(path, e))
}

fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Schema { pointer, message } => Error::Schema {
            pointer: format!("{}#{pointer}", path.display()),
            message,
        },
        other => other,
    }
}

pub fn looks_like_path(reference: &str) -> bool {
    reference.ends_with(".json") || reference.contains('/') || reference.contains('\\')
}

/// Resolves a group reference relative to `dir`.
pub fn resolve_group(reference: &str, dir: &Path) -> Result<FiniteGroup> {
    if looks_like_path(reference) {
        let path: PathBuf = dir.join(reference);
        load_group(&path)
    } else {
        catalog::by_name(reference)
    }
}

/// Class index selected by `sel`; shapes must match exactly one class.
pub fn select_class(g: &FiniteGroup, sel: &ClassSelector) -> Result<usize> {
    match sel {
        ClassSelector::Representative(text) => {
            let p = Permutation::parse_cycles(text, g.degree())?;
            let id = g
                .id_of(&p)
                .ok_or_else(|| Error::Input(format!("{p} is not an element of G")))?;
            Ok(g.class_of(id))
        }
        ClassSelector::Shape { order, cycle_type } => {
            let nontrivial = |ct: &[u32]| {
                let mut v: Vec<u32> = ct.iter().copied().filter(|&x| x > 1).collect();
                v.sort_unstable_by(|a, b| b.cmp(a));
                v
            };
            let wanted = nontrivial(cycle_type);
            let hits: Vec<usize> = g
                .conjugacy_classes()
                .iter()
                .enumerate()
                .filter(|(_, c)| {
                    c.element_order == *order && nontrivial(&g.element(c.representative).cycle_type()) == wanted
                })
                .map(|(i, _)| i)
                .collect();
            match hits.as_slice() {
                [c] => Ok(*c),
                [] => Err(Error::Input(format!(
                    "no class of order {order} with cycle type {cycle_type:?}"
                ))),
                _ => Err(Error::Input(format!(
                    "{} classes of order {order} with cycle type {cycle_type:?}; give a representative",
                    hits.len()
                ))),
            }
        }
    }
}

pub fn parse_parameter(text: &str, dir: &Path) -> Result<HurwitzParameter> {
    let file: ParameterFile = parse_json(text)?;
    let group = Arc::new(resolve_group(&file.group, dir).map_err(|e| nest("/group", e))?);
    let classes = file
        .classes
        .iter()
        .enumerate()
        .map(|(i, s)| select_class(&group, s).map_err(|e| nest(&format!("/classes/{i}"), e)))
        .collect::<Result<Vec<_>>>()?;
    validate_parameter(group, classes, file.nu)
}

fn nest(at: &str, e: Error) -> Error {
    match e {
        Error::Schema { pointer, message } if !pointer.contains('#') => Error::Schema {
            pointer: format!("{at}{pointer}"),
            message,
        },
        Error::Input(message) | Error::InvalidPermutation(message) => schema(at, message),
        other => other,
    }
}

pub fn load_parameter(path: &Path) -> Result<HurwitzParameter> {
    parse_parameter(&read(path)?, parent(path)).map_err(|e| in_file(path, e))
}

fn parent(path: &Path) -> &Path {
    path.parent().unwrap_or(Path::new("."))
}

pub fn parse_cover(text: &str, dir: &Path) -> Result<CentralExtension> {
    let file: CoverFile = parse_json(text)?;
    let base = Arc::new(resolve_group(&file.base_group, dir).map_err(|e| nest("/base_group", e))?);
    let degree = match file.cover_degree {
        Some(d) => d,
        None => file
            .cover_generators
            .iter()
            .enumerate()
            .map(|(i, t)| Permutation::max_point_in_cycles(t).map_err(|e| schema(format!("/cover_generators/{i}"), e.to_string())))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .max()
            .unwrap_or(1),
    };
    let cover_gens = parse_perm_list(&file.cover_generators, degree, "/cover_generators")?;
    let image_gens = parse_perm_list(&file.image_generators, base.degree(), "/image_generators")?;
    load_extension(degree, cover_gens, &image_gens, base)
}

pub fn load_cover(path: &Path) -> Result<CentralExtension> {
    parse_cover(&read(path)?, parent(path)).map_err(|e| in_file(path, e))
}

/// Group file referenced by a parameter or cover file, if any.
pub fn referenced_group_file(path: &Path) -> Result<Option<PathBuf>> {
    #[derive(Deserialize)]
    struct Probe {
        group: Option<String>,
        base_group: Option<String>,
    }
    let probe: Probe = parse_json(&read(path)?).map_err(|e| in_file(path, e))?;
    Ok(probe
        .group
        .or(probe.base_group)
        .filter(|r| looks_like_path(r))
        .map(|r| parent(path).join(r)))
}

/// A parameter file and an optional cover of the same group.
pub fn parse_inputs(param: &Path, cover: Option<&Path>) -> Result<(HurwitzParameter, Option<CentralExtension>)> {
    let h = load_parameter(param)?;
    let e = match cover {
        Some(path) => {
            let e = load_cover(path)?;
            if e.base().elements() != h.group().elements() {
                return Err(Error::Input(format!(
                    "{}: cover base group differs from the parameter group",
                    path.display()
                )));
            }
            Some(e)
        }
        None => None,
    };
    Ok((h, e))
}

impl CoverFile {
    pub fn from_data(data: &CoverData) -> Self {
        CoverFile {
            base_group: data.base_group.to_owned(),
            cover_degree: Some(data.cover_degree),
            cover_generators: data.cover_generators.iter().map(ToString::to_string).collect(),
            image_generators: data.image_generators.iter().map(ToString::to_string).collect(),
        }
    }
}

pub fn to_pretty_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn shape(order: u64, cycle_type: &[u32]) -> ClassSelector {
    ClassSelector::Shape {
        order,
        cycle_type: cycle_type.to_vec(),
    }
}

/// Every bundled data file as `(relative path, contents)`.
pub fn bundled_files() -> Result<Vec<(String, String)>> {
    let mut files = Vec::new();
    for (file, name) in [("S5", "S5"), ("S6", "S6"), ("A5", "A5"), ("PGL27", "PGL2(7)")] {
        let g = catalog::by_name(name)?;
        let body = GroupFile::from_group(Some(name), g.perm_group());
        files.push((format!("groups/{file}.json"), to_pretty_json(&body)));
    }
    for data in crate::fixtures::all_covers()? {
        let mut body = CoverFile::from_data(&data);
        body.base_group = format!("../groups/{}.json", group_file_stem(data.base_group));
        files.push((format!("covers/{}.json", data.name), to_pretty_json(&body)));
    }
    let s5 = "../groups/S5.json".to_owned();
    let a5 = "../groups/A5.json".to_owned();
    let (t, c3, c5) = (shape(2, &[2, 1, 1, 1]), shape(3, &[3, 1, 1]), shape(5, &[5]));
    let params = [
        ("h25", s5.clone(), vec![t.clone(), c5.clone()], vec![4, 1]),
        ("h125", s5.clone(), vec![t.clone(), c3.clone(), c5.clone()], vec![2, 2, 1]),
        ("h170", s5, vec![t, c3.clone(), c5], vec![2, 1, 2]),
        ("a5c3n3", a5.clone(), vec![c3.clone()], vec![3]),
        ("a5c3n5", a5.clone(), vec![c3.clone()], vec![5]),
        ("a5c3n6", a5, vec![c3], vec![6]),
    ];
    for (name, group, classes, nu) in params {
        let body = ParameterFile { group, classes, nu };
        files.push((format!("params/{name}.json"), to_pretty_json(&body)));
    }
    Ok(files)
}

fn group_file_stem(name: &str) -> String {
    name.chars().filter(|c| c.is_ascii_alphanumeric()).collect()
}

/// Writes [`bundled_files`] below `dir`.
pub fn write_bundled_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut written = Vec::new();
    for (rel, body) in bundled_files()? {
        let path = dir.join(rel);
        if let Some(p) = path.parent() {
            fs::create_dir_all(p).map_err(|source| Error::Io {
                path: p.display().to_string(),
                source,
            })?;
        }
        fs::write(&path, body).map_err(|source| Error::Io {
            path: path.display().to_string(),
            source,
        })?;
        written.push(path);
    }
    Ok(written)
}
