//! Pictures of apex regions: SVG in the plane, OBJ in space.

use crate::lattice::LatticePolytope;
use crate::triangulation::TypeFCone;
use std::collections::BTreeMap;
use std::fmt::Write;

const UNIT: i64 = 40;
const PAD: i64 = 30;

/// Polygon vertices in counterclockwise order.
fn polygon(p: &LatticePolytope) -> Vec<Vec<i64>> {
    let n = p.vertices.len() as f64;
    let cx = p.vertices.iter().map(|v| v[0] as f64).sum::<f64>() / n;
    let cy = p.vertices.iter().map(|v| v[1] as f64).sum::<f64>() / n;
    let mut vs = p.vertices.clone();
    vs.sort_by(|a, b| {
        let ta = (a[1] as f64 - cy).atan2(a[0] as f64 - cx);
        let tb = (b[1] as f64 - cy).atan2(b[0] as f64 - cx);
        ta.total_cmp(&tb)
    });
    vs
}

pub fn svg(p: &LatticePolytope, cones: &[TypeFCone]) -> String {
    let mut pts: Vec<Vec<i64>> = p.vertices.clone();
    for c in cones {
        for s in c.apex_region() {
            pts.extend(s.vertices.iter().cloned());
        }
    }
    let x0 = pts.iter().map(|v| v[0]).min().unwrap_or(0);
    let x1 = pts.iter().map(|v| v[0]).max().unwrap_or(0);
    let y0 = pts.iter().map(|v| v[1]).min().unwrap_or(0);
    let y1 = pts.iter().map(|v| v[1]).max().unwrap_or(0);
    let sx = |x: i64| PAD + (x - x0) * UNIT;
    let sy = |y: i64| PAD + (y1 - y) * UNIT;
    let (w, h) = (2 * PAD + (x1 - x0) * UNIT, 2 * PAD + (y1 - y0) * UNIT);
    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#).unwrap();
    let outline: Vec<String> = polygon(p).iter().map(|v| format!("{},{}", sx(v[0]), sy(v[1]))).collect();
    writeln!(out, r#"  <polygon points="{}" fill="none" stroke="black" stroke-width="2"/>"#, outline.join(" ")).unwrap();
    for c in cones {
        writeln!(out, r#"  <g class="vertex-{}">"#, c.cone.vertex).unwrap();
        for s in c.apex_region() {
            let tri: Vec<String> = s.vertices.iter().map(|v| format!("{},{}", sx(v[0]), sy(v[1]))).collect();
            writeln!(out, r#"    <polygon points="{}" fill="steelblue" fill-opacity="0.3" stroke="steelblue"/>"#, tri.join(" ")).unwrap();
        }
        writeln!(out, "  </g>").unwrap();
    }
    for q in p.lattice_points(1) {
        writeln!(out, r#"  <circle cx="{}" cy="{}" r="3"/>"#, sx(q.coords[0]), sy(q.coords[1])).unwrap();
    }
    out.push_str("</svg>\n");
    out
}

pub fn obj(p: &LatticePolytope, cones: &[TypeFCone]) -> String {
    let mut index: BTreeMap<Vec<i64>, usize> = BTreeMap::new();
    let mut out = String::new();
    let mut id = |v: &Vec<i64>, out: &mut String| -> usize {
        let next = index.len() + 1;
        *index.entry(v.clone()).or_insert_with(|| {
            writeln!(out, "v {} {} {}", v[0], v[1], v[2]).unwrap();
            next
        })
    };
    let mut body = String::new();
    for c in cones {
        writeln!(body, "g vertex_{}", c.cone.vertex).unwrap();
        for s in c.apex_region() {
            let ids: Vec<usize> = s.vertices.iter().map(|v| id(v, &mut out)).collect();
            for skip in 0..4 {
                let f: Vec<String> = (0..4).filter(|&i| i != skip).map(|i| ids[i].to_string()).collect();
                writeln!(body, "f {}", f.join(" ")).unwrap();
            }
        }
    }
    writeln!(body, "g outline").unwrap();
    for (a, b) in p.edges() {
        let (ia, ib) = (id(&p.vertices[a], &mut out), id(&p.vertices[b], &mut out));
        writeln!(body, "l {ia} {ib}").unwrap();
    }
    out + &body
}
