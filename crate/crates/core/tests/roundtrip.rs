mod common;

use common::*;
use toric_chow::report::{parse_hint_entries, read_file, FunctionFile, PolytopeFile};

#[test]
fn fixtures_round_trip() {
    for name in FIXTURES {
        let f = PolytopeFile::parse(&read_file(&fixture_path(name)).unwrap()).unwrap();
        let again = PolytopeFile::parse(&f.to_json()).unwrap();
        assert_eq!(again, f, "{name}");
        let p = again.build().unwrap();
        assert_eq!(p.dim, f.dim);
        assert_eq!(p.vertices.len(), f.vertices.len(), "{name}: every listed point is a vertex");
    }
}

#[test]
fn hint_files_round_trip() {
    for (name, fixture_name) in [("rhombus-layered", "rhombus"), ("rhombus-fan", "rhombus"), ("octahedron-axis", "octahedron")] {
        let entries = parse_hint_entries(&read_file(&data(&format!("hints/{name}.json"))).unwrap()).unwrap();
        let text = serde_json::to_string(&entries).unwrap();
        assert_eq!(parse_hint_entries(&text).unwrap(), entries);
        hints_file(name, &fixture(fixture_name));
    }
}

#[test]
fn function_files_round_trip() {
    for name in ["bipyramid7-apexes", "hinge2"] {
        let f = function_file(name);
        assert_eq!(FunctionFile::parse(&f.to_json()).unwrap(), f);
    }
    let f = function_file("bipyramid7-apexes");
    assert_eq!(f.values().unwrap().unwrap().len(), 731);
}
