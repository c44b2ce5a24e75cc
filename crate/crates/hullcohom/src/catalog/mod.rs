//! Bundled arrangements and their expected results.
//!
//! Geometric entries carry torus data and are computed end to end.
//! Combinatorial entries only carry the counts `m, p, n_k` and the restriction
//! ranks `c`, for tilings whose torus coordinates are not available.

mod fixtures;

use std::collections::BTreeMap;

use crate::format::{parse, ArrangementFile, ParseError};

pub use fixtures::{IrrepFixtures, Table1Row, AK_IRREPS, TABLE1};

/// Counts that determine the Betti numbers of a 2D arrangement in `T^4`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Combinatorial {
    pub ambient_dim: usize,
    pub m: usize,
    pub p: usize,
    pub n_k: BTreeMap<usize, usize>,
    /// `c_0 .. c_N`.
    pub c: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum Source {
    Geometric(&'static str),
    Combinatorial(Combinatorial),
}

/// Expected values; `None` means not recorded.
#[derive(Clone, Debug, Default)]
pub struct Fixtures {
    pub table1: Option<&'static Table1Row>,
    /// `(dimension, count)`, highest dimension first.
    pub census: Option<&'static [(usize, usize)]>,
    pub n_k: Option<&'static [(usize, usize)]>,
    pub betti_a: Option<&'static [usize]>,
    pub c: Option<&'static [usize]>,
    pub betti_complement: Option<&'static [usize]>,
    pub irreps: Option<&'static IrrepFixtures>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: &'static str,
    pub title: &'static str,
    pub source: Source,
    pub fixtures: Fixtures,
}

impl CatalogEntry {
    pub fn is_geometric(&self) -> bool {
        matches!(self.source, Source::Geometric(_))
    }

    /// Parsed arrangement file of a geometric entry.
    pub fn file(&self) -> Option<Result<ArrangementFile, ParseError>> {
        match &self.source {
            Source::Geometric(text) => Some(parse(text)),
            Source::Combinatorial(_) => None,
        }
    }
}

const NAMES: [&str; 7] = [
    "ammann_beenker",
    "ammann_beenker_decorated",
    "penrose_special",
    "penrose_generic",
    "dodecagonal",
    "dodecagonal_decorated",
    "ammann_kramer",
];

pub fn list() -> &'static [&'static str] {
    &NAMES
}

fn row(label: &str) -> &'static Table1Row {
    TABLE1.iter().find(|r| r.entry == label).expect("fixture row")
}

fn combinatorial(label: &str) -> Combinatorial {
    let r = row(label);
    Combinatorial {
        ambient_dim: 4,
        m: r.m,
        p: r.p,
        n_k: r.n_k.iter().copied().collect(),
        c: vec![1, 4, r.c2, 0, 0],
    }
}

fn table1_fixtures(label: &str) -> Fixtures {
    let r = row(label);
    Fixtures { table1: Some(r), n_k: Some(r.n_k), ..Fixtures::default() }
}

pub fn get(name: &str) -> Option<CatalogEntry> {
    let entry = match name {
        "ammann_beenker" => CatalogEntry {
            name: "ammann_beenker",
            title: "Ammann-Beenker",
            source: Source::Geometric(include_str!("ammann_beenker.arr")),
            fixtures: Fixtures {
                census: Some(&[(2, 4), (0, 3)]),
                betti_a: Some(&[1, 10, 4]),
                c: Some(&[1, 4, 3, 0, 0]),
                betti_complement: Some(&[1, 5, 9, 0]),
                ..table1_fixtures(name)
            },
        },
        "penrose_special" => CatalogEntry {
            name: "penrose_special",
            title: "Penrose, gamma in Z[tau]",
            source: Source::Geometric(include_str!("penrose_special.arr")),
            fixtures: Fixtures { census: Some(&[(2, 5), (0, 1)]), ..table1_fixtures(name) },
        },
        "penrose_generic" => CatalogEntry {
            name: "penrose_generic",
            title: "Penrose, generic gamma",
            source: Source::Geometric(include_str!("penrose_generic.arr")),
            fixtures: Fixtures { census: Some(&[(2, 10), (0, 15)]), ..table1_fixtures(name) },
        },
        "ammann_beenker_decorated" | "dodecagonal" | "dodecagonal_decorated" => {
            let title = match name {
                "ammann_beenker_decorated" => "Ammann-Beenker, decorated",
                "dodecagonal" => "Dodecagonal",
                _ => "Dodecagonal, decorated",
            };
            let name = NAMES.iter().find(|n| **n == name).expect("listed");
            CatalogEntry {
                name,
                title,
                source: Source::Combinatorial(combinatorial(name)),
                fixtures: table1_fixtures(name),
            }
        }
        "ammann_kramer" => CatalogEntry {
            name: "ammann_kramer",
            title: "Ammann-Kramer",
            source: Source::Geometric(include_str!("ammann_kramer.arr")),
            fixtures: Fixtures {
                census: Some(&[(4, 15), (2, 46), (0, 32)]),
                betti_a: Some(&[1, 6, 194, 84, 15]),
                c: Some(&[1, 6, 6, 2, 0, 0, 0]),
                betti_complement: Some(&[1, 12, 72, 181, 0, 0]),
                irreps: Some(&AK_IRREPS),
                ..Fixtures::default()
            },
        },
        _ => return None,
    };
    Some(entry)
}

/// The expected values of a catalog entry.
pub fn expected(name: &str) -> Option<Fixtures> {
    get(name).map(|e| e.fixtures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_listed_entry_resolves() {
        for name in list() {
            let e = get(name).unwrap();
            assert_eq!(e.name, *name);
            if let Some(f) = e.file() {
                let f = f.unwrap();
                assert_eq!(f.name, *name);
                f.arrangement().unwrap();
            }
        }
        assert!(get("nope").is_none());
    }

    #[test]
    fn table1_has_every_2d_entry() {
        for name in list().iter().filter(|n| **n != "ammann_kramer") {
            assert!(expected(name).unwrap().table1.is_some(), "{name}");
        }
        assert_eq!(TABLE1.len(), 6);
    }
}
