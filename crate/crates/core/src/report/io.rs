//! JSON input files: polytopes, cone hints and test functions.

use crate::error::{Error, Result};
use crate::integrate::Affine;
use crate::lattice::{build_named, LatticePolytope};
use crate::rational::{fmt_rat, parse_rat, Rat};
use crate::stability::{envelope_from_values, LatticeValues, PlFunction};
use crate::triangulation::{ConeHint, HintMode};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeFile {
    pub name: String,
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<String>,
}

impl PolytopeFile {
    pub fn parse(text: &str) -> Result<PolytopeFile> {
        let f: PolytopeFile = serde_json::from_str(text).map_err(parse_err)?;
        if f.vertices.iter().any(|v| v.len() != f.dim) {
            return Err(Error::Parse(format!("vertices must have {} coordinates", f.dim)));
        }
        f.lambda()?;
        Ok(f)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn lambda(&self) -> Result<Option<Rat>> {
        self.lambda.as_deref().map(parse_rat).transpose()
    }

    pub fn build(&self) -> Result<LatticePolytope> {
        let p = build_named(&self.name, &self.vertices)?;
        if p.dim != self.dim {
            return Err(Error::NotFullDimensional(self.dim));
        }
        Ok(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct HintEntry {
    pub vertex_index: usize,
    pub simplices: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub offset: Option<i64>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum HintDoc {
    One(HintEntry),
    Many(Vec<HintEntry>),
}

impl HintEntry {
    pub fn to_hint(&self) -> Result<ConeHint> {
        let mode = match self.mode.as_deref() {
            None | Some("apexRegion") => HintMode::ApexRegion,
            Some("layered") => HintMode::Layered,
            Some(m) => return Err(Error::Parse(format!("unknown hint mode {m:?}"))),
        };
        Ok(ConeHint { vertex_index: self.vertex_index, mode, simplices: self.simplices.clone(), offset: self.offset.unwrap_or(0) })
    }
}

pub fn parse_hint_entries(text: &str) -> Result<Vec<HintEntry>> {
    Ok(match serde_json::from_str(text).map_err(parse_err)? {
        HintDoc::One(h) => vec![h],
        HintDoc::Many(v) => v,
    })
}

pub fn parse_hints(text: &str) -> Result<Vec<ConeHint>> {
    parse_hint_entries(text)?.iter().map(HintEntry::to_hint).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceEntry {
    pub grad: Vec<String>,
    #[serde(rename = "const")]
    pub constant: String,
}

/// Either explicit affine pieces or values at the lattice points of kΔ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct FunctionFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pieces: Option<Vec<PieceEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice_values: Option<BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
}

pub fn parse_coords(s: &str) -> Result<Vec<i64>> {
    let inner = s.trim().strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(|| Error::Parse(format!("bad point {s:?}")))?;
    inner.split(',').map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad point {s:?}")))).collect()
}

pub fn format_coords(q: &[i64]) -> String {
    let parts: Vec<String> = q.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

impl FunctionFile {
    pub fn parse(text: &str) -> Result<FunctionFile> {
        let f: FunctionFile = serde_json::from_str(text).map_err(parse_err)?;
        if f.pieces.is_some() == f.lattice_values.is_some() {
            return Err(Error::Parse("give exactly one of pieces and latticeValues".into()));
        }
        Ok(f)
    }

    pub fn from_values(k: i64, values: &LatticeValues) -> FunctionFile {
        let lv = values.iter().map(|(q, v)| (format_coords(q), fmt_rat(v))).collect();
        FunctionFile { pieces: None, lattice_values: Some(lv), k: Some(k) }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Dilation the function lives on.
    pub fn dilation(&self) -> i64 {
        self.k.unwrap_or(1)
    }

    pub fn values(&self) -> Result<Option<LatticeValues>> {
        let Some(lv) = &self.lattice_values else { return Ok(None) };
        let mut out = LatticeValues::new();
        for (q, v) in lv {
            out.insert(parse_coords(q)?, parse_rat(v)?);
        }
        Ok(Some(out))
    }

    /// The convex function on kΔ: the pieces, or the envelope of the values.
    pub fn resolve(&self, p: &LatticePolytope) -> Result<PlFunction> {
        let k = self.dilation();
        if k < 1 {
            return Err(Error::InvalidArgument(format!("dilation k={k} must be positive")));
        }
        if let Some(values) = self.values()? {
            return envelope_from_values(p, k, &values);
        }
        let mut pieces = vec![];
        for e in self.pieces.as_deref().unwrap_or_default() {
            let grad = e.grad.iter().map(|g| parse_rat(g)).collect::<Result<Vec<_>>>()?;
            if grad.len() != p.dim {
                return Err(Error::DimensionMismatch);
            }
            pieces.push(Affine { grad, c: parse_rat(&e.constant)? });
        }
        PlFunction::new(pieces)
    }
}

pub fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn write_file(path: &std::path::Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ri};

    #[test]
    fn polytope_round_trip() {
        let text = r#"{"name": "kite", "dim": 2, "vertices": [[0,0],[2,0],[0,1]], "lambda": "1/3"}"#;
        let f = PolytopeFile::parse(text).unwrap();
        assert_eq!(f.lambda().unwrap(), Some(rat(1, 3)));
        assert_eq!(PolytopeFile::parse(&f.to_json()).unwrap(), f);
        assert!(PolytopeFile::parse(r#"{"name":"x","dim":2,"vertices":[[0,0],[1]]}"#).is_err());
        assert!(PolytopeFile::parse(r#"{"name":"x","dim":2,"vertices":"no"}"#).is_err());
    }

    #[test]
    fn hints_single_and_list() {
        let one = r#"{"vertexIndex": 0, "simplices": [[[0,0],[1,0],[0,1]]]}"#;
        assert_eq!(parse_hints(one).unwrap()[0].mode, HintMode::ApexRegion);
        let many = r#"[{"vertexIndex": 1, "simplices": [], "mode": "layered", "offset": 3}]"#;
        let h = parse_hints(many).unwrap();
        assert_eq!((h[0].mode.clone(), h[0].offset), (HintMode::Layered, 3));
        assert!(parse_hints(r#"{"vertexIndex": 0, "simplices": [], "mode": "odd"}"#).is_err());
    }

    #[test]
    fn function_files() {
        assert_eq!(parse_coords("(1, -2,0)").unwrap(), vec![1, -2, 0]);
        assert_eq!(format_coords(&[1, -2]), "(1,-2)");
        let f = FunctionFile::parse(r#"{"pieces": [{"grad": ["1","0"], "const": "-1/2"}, {"grad": ["0","0"], "const": "0"}]}"#).unwrap();
        let p = build_named("sq", &[vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]]).unwrap();
        let pl = f.resolve(&p).unwrap();
        assert_eq!(pl.eval_i64(&[1, 0]), rat(1, 2));
        let vals: LatticeValues = p.lattice_points(1).into_iter().map(|q| (q.coords, ri(0))).collect();
        let g = FunctionFile::from_values(1, &vals);
        assert_eq!(FunctionFile::parse(&g.to_json()).unwrap(), g);
        assert_eq!(g.resolve(&p).unwrap().eval_i64(&[1, 1]), ri(0));
        assert!(FunctionFile::parse("{}").is_err());
    }
}
