#![allow(dead_code)]

use std::path::PathBuf;
use toric_chow::lattice::{build_named, LatticePolytope};
use toric_chow::report::{parse_hints, read_file, FunctionFile, PolytopeFile};
use toric_chow::triangulation::ConeHint;

pub const FIXTURES: [&str; 15] = [
    "simplex1",
    "simplex2",
    "simplex3",
    "simplex4",
    "cross2",
    "cross3",
    "cross4",
    "x2",
    "rhombus",
    "octahedron",
    "square",
    "box2",
    "x2-segment",
    "kite",
    "bipyramid7",
];

pub fn data(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(rel)
}

pub fn fixture_path(name: &str) -> PathBuf {
    data(&format!("fixtures/{name}.json"))
}

pub fn fixture(name: &str) -> LatticePolytope {
    PolytopeFile::parse(&read_file(&fixture_path(name)).unwrap()).unwrap().build().unwrap()
}

/// Hint file, checked against the vertex order of `p`.
pub fn hints_file(name: &str, p: &LatticePolytope) -> Vec<ConeHint> {
    let hints = parse_hints(&read_file(&data(&format!("hints/{name}.json"))).unwrap()).unwrap();
    for h in &hints {
        assert_eq!(p.vertices[h.vertex_index], h.simplices[0][0], "hint {name} vertex {}", h.vertex_index);
    }
    hints
}

pub fn function_file(name: &str) -> FunctionFile {
    FunctionFile::parse(&read_file(&data(&format!("functions/{name}.json"))).unwrap()).unwrap()
}

pub fn simplex(n: usize) -> LatticePolytope {
    let mut vs = vec![vec![0i64; n]];
    for j in 0..n {
        vs.push((0..n).map(|i| (i == j) as i64).collect());
    }
    build_named(&format!("simplex{n}"), &vs).unwrap()
}
