//! The reference quivers used throughout the test suites and docs.

use crate::quiver::{parse_quiver, Quiver};

pub const A2: &str = "vertex 1\nvertex 2\narrow a 1 2\n";
pub const A3: &str = "vertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow b 2 3\n";
pub const K2: &str = "vertex 1\nvertex 2\narrow a 1 2\narrow b 1 2\n";
pub const C2: &str = "vertex 1\nvertex 2\narrow a 1 2\narrow b 2 1\n";
pub const C3: &str = "vertex 1\nvertex 2\nvertex 3\narrow a 1 2\narrow b 2 3\narrow c 3 1\n";
pub const C4: &str =
    "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a 1 2\narrow b 2 3\narrow c 3 4\narrow d 4 1\n";
pub const L1: &str = "vertex 1\narrow x 1 1\n";
pub const TH: &str = "vertex 1\nvertex 2\narrow a 1 2\narrow b 2 1\narrow c 1 2\n";
pub const SC: &str = "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a 1 2\narrow b 2 3\narrow c 3 4\narrow d 1 4\n";
pub const L1_TAIL: &str = "vertex 1\nvertex 2\narrow x 1 1\narrow y 1 2\n";

fn parsed(text: &str) -> Quiver {
    parse_quiver(text).expect("corpus quiver parses")
}

pub fn a2() -> Quiver {
    parsed(A2)
}
pub fn a3() -> Quiver {
    parsed(A3)
}
pub fn k2() -> Quiver {
    parsed(K2)
}
pub fn c2() -> Quiver {
    parsed(C2)
}
pub fn c3() -> Quiver {
    parsed(C3)
}
pub fn c4() -> Quiver {
    parsed(C4)
}
pub fn l1() -> Quiver {
    parsed(L1)
}
pub fn th() -> Quiver {
    parsed(TH)
}
pub fn sc() -> Quiver {
    parsed(SC)
}
pub fn l1_tail() -> Quiver {
    parsed(L1_TAIL)
}

/// Basic cycle quiver with `e` vertices.
pub fn basic_cycle(e: usize) -> Quiver {
    assert!(e >= 1);
    let vertices: Vec<String> = (1..=e).map(|i| i.to_string()).collect();
    let arrows: Vec<(String, String, String)> = (0..e)
        .map(|i| {
            (
                format!("a{}", i + 1),
                (i + 1).to_string(),
                ((i + 1) % e + 1).to_string(),
            )
        })
        .collect();
    Quiver::new(vertices, arrows).expect("basic cycle is valid")
}

/// The full named corpus.
pub fn all() -> Vec<(&'static str, Quiver)> {
    vec![
        ("A2", a2()),
        ("A3", a3()),
        ("K2", k2()),
        ("C2", c2()),
        ("C3", c3()),
        ("C4", c4()),
        ("L1", l1()),
        ("TH", th()),
        ("SC", sc()),
        ("L1+tail", l1_tail()),
    ]
}

/// Connected quivers that are not basic cycles (the extreme-count side of
/// the corpus).
pub fn non_basic_connected() -> Vec<(&'static str, Quiver)> {
    vec![
        ("A2", a2()),
        ("A3", a3()),
        ("K2", k2()),
        ("TH", th()),
        ("SC", sc()),
        ("L1+tail", l1_tail()),
    ]
}

/// Quivers with an oriented cycle.
pub fn cyclic() -> Vec<(&'static str, Quiver)> {
    vec![
        ("C2", c2()),
        ("C3", c3()),
        ("C4", c4()),
        ("L1", l1()),
        ("TH", th()),
        ("L1+tail", l1_tail()),
    ]
}

/// Acyclic corpus quivers.
pub fn acyclic() -> Vec<(&'static str, Quiver)> {
    vec![("A2", a2()), ("A3", a3()), ("K2", k2()), ("SC", sc())]
}
