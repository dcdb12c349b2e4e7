//! Built-in Seifert matrices addressable by name from the CLI.

use crate::seifert::SeifertMatrix;

/// Name, short description, and constructor for one built-in knot.
pub struct CorpusEntry {
    pub name: &'static str,
    pub description: &'static str,
    build: fn() -> SeifertMatrix,
}

impl CorpusEntry {
    pub fn build(&self) -> SeifertMatrix {
        (self.build)()
    }
}

pub const ENTRIES: &[CorpusEntry] = &[
    CorpusEntry {
        name: "unknot",
        description: "empty Seifert matrix",
        build: unknot,
    },
    CorpusEntry {
        name: "trefoil",
        description: "right-handed trefoil, signature -2",
        build: right_trefoil,
    },
    CorpusEntry {
        name: "left-trefoil",
        description: "left-handed trefoil, signature +2",
        build: left_trefoil,
    },
    CorpusEntry {
        name: "figure-eight",
        description: "figure-eight knot, amphichiral",
        build: figure_eight,
    },
    CorpusEntry {
        name: "satellite-base",
        description: "genus-two knot with determinant 81 whose Seifert form has metabolizers",
        build: genus_two_base,
    },
];

/// Looks up a built-in matrix by its corpus name.
pub fn get(name: &str) -> Option<SeifertMatrix> {
    ENTRIES.iter().find(|e| e.name == name).map(|e| e.build())
}

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.name).collect()
}

pub fn unknot() -> SeifertMatrix {
    SeifertMatrix::from_i64_rows(&[])
        .expect("empty matrix is valid")
        .labeled("unknot")
}

pub fn right_trefoil() -> SeifertMatrix {
    SeifertMatrix::from_i64_rows(&[&[-1, 1], &[0, -1]])
        .expect("trefoil matrix is valid")
        .labeled("trefoil")
}

pub fn left_trefoil() -> SeifertMatrix {
    right_trefoil().mirror().labeled("left-trefoil")
}

pub fn figure_eight() -> SeifertMatrix {
    SeifertMatrix::from_i64_rows(&[&[1, 1], &[0, -1]])
        .expect("figure-eight matrix is valid")
        .labeled("figure-eight")
}

/// The genus-two satellite base: two blocks of [[0,1],[2,0]]. Its
/// symmetrization is 3 times a unimodular matrix, so the double branched
/// cover has homology (Z/3)^4, and the Seifert form admits metabolizers
/// spanned by standard basis vectors.
pub fn genus_two_base() -> SeifertMatrix {
    SeifertMatrix::from_i64_rows(&[
        &[0, 1, 0, 0],
        &[2, 0, 0, 0],
        &[0, 0, 0, 1],
        &[0, 0, 2, 0],
    ])
    .expect("satellite base matrix is valid")
    .labeled("satellite-base")
}
