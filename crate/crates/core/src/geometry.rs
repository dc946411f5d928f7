//! Dissections of a convex `n`-gon into triangles and quadrilaterals.
//!
//! Vertices are labelled `1..=n` counterclockwise. A triangle-count tuple
//! of a triangulation is a quiddity with sign `-1` over every ring; the
//! triangle-parity tuples of (3|4) dissections are exactly the quiddities
//! over `Z/2`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::enumeration::{enumerate_quiddities, SearchOptions};
use crate::error::{Error, Result};
use crate::quiddity::Tuple;
use crate::ring::{Element, RingSpec};

/// Default largest polygon for [`verify_dissection_parities`].
pub const PARITY_CHECK_CAP: usize = 9;

/// A dissection given by non-crossing diagonals `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Decomposition {
    n: usize,
    diagonals: BTreeSet<(usize, usize)>,
    cells: Vec<Vec<usize>>,
}

fn crosses((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Splits the polygon `poly` (increasing labels) along every diagonal.
fn cells_of(poly: Vec<usize>, diagonals: &[(usize, usize)], out: &mut Vec<Vec<usize>>) {
    let pos = |v: usize| poly.iter().position(|&x| x == v);
    let chord = diagonals.iter().find_map(|&(i, j)| {
        let (pi, pj) = (pos(i)?, pos(j)?);
        (pj - pi >= 2 && !(pi == 0 && pj == poly.len() - 1)).then_some((pi, pj))
    });
    match chord {
        None => out.push(poly),
        Some((pi, pj)) => {
            let inner = poly[pi..=pj].to_vec();
            let mut outer = poly[..=pi].to_vec();
            outer.extend_from_slice(&poly[pj..]);
            cells_of(inner, diagonals, out);
            cells_of(outer, diagonals, out);
        }
    }
}

impl Decomposition {
    pub fn from_diagonals<I>(n: usize, diagonals: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n < 3 {
            return Err(Error::InvalidDecomposition(format!("a polygon needs 3 vertices, got {n}")));
        }
        let mut set = BTreeSet::new();
        for (a, b) in diagonals {
            let (i, j) = (a.min(b), a.max(b));
            if i < 1 || j > n {
                return Err(Error::InvalidDecomposition(format!("({a},{b}) is not a vertex pair of the {n}-gon")));
            }
            if j - i < 2 || (i == 1 && j == n) {
                return Err(Error::InvalidDecomposition(format!("({a},{b}) is a side or a point, not a diagonal")));
            }
            if !set.insert((i, j)) {
                return Err(Error::InvalidDecomposition(format!("diagonal ({i},{j}) repeated")));
            }
        }
        let list: Vec<_> = set.iter().copied().collect();
        for (k, &d) in list.iter().enumerate() {
            if let Some(&e) = list[k + 1..].iter().find(|&&e| crosses(d, e)) {
                return Err(Error::InvalidDecomposition(format!("diagonals {d:?} and {e:?} cross")));
            }
        }
        let mut cells = Vec::new();
        cells_of((1..=n).collect(), &list, &mut cells);
        cells.sort();
        Ok(Decomposition { n, diagonals: set, cells })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonals(&self) -> &BTreeSet<(usize, usize)> {
        &self.diagonals
    }

    /// Faces as increasing vertex lists, sorted.
    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn is_triangulation(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 3)
    }

    pub fn is_34(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 3 || c.len() == 4)
    }

    /// Number of triangles at each vertex, vertex 1 first.
    pub fn triangle_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.n];
        for c in self.cells.iter().filter(|c| c.len() == 3) {
            for &v in c {
                counts[v - 1] += 1;
            }
        }
        counts
    }

    pub fn to_json(&self) -> String {
        let dto = DecompositionJson {
            n: self.n,
            diagonals: self.diagonals.iter().map(|&(i, j)| [i, j]).collect(),
        };
        serde_json::to_string(&dto).expect("decomposition serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let dto: DecompositionJson = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        Decomposition::from_diagonals(dto.n, dto.diagonals.into_iter().map(|[i, j]| (i, j)))
    }

    /// Regular polygon drawing, vertex 1 on top, labels counterclockwise.
    pub fn to_svg(&self, labels: Option<&[String]>) -> String {
        let (size, r) = (320.0_f64, 120.0_f64);
        let c = size / 2.0;
        let at = |v: usize, radius: f64| {
            let theta = std::f64::consts::FRAC_PI_2 + std::f64::consts::TAU * (v - 1) as f64 / self.n as f64;
            (c + radius * theta.cos(), c - radius * theta.sin())
        };
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" viewBox="0 0 {size} {size}">"#
        );
        let pts: Vec<String> = (1..=self.n)
            .map(|v| {
                let (x, y) = at(v, r);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            s,
            r#"  <polygon points="{}" fill="none" stroke="black" stroke-width="2"/>"#,
            pts.join(" ")
        );
        for &(i, j) in &self.diagonals {
            let ((x1, y1), (x2, y2)) = (at(i, r), at(j, r));
            let _ = writeln!(
                s,
                r#"  <line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black" stroke-width="1.5"/>"#
            );
        }
        for v in 1..=self.n {
            let (x, y) = at(v, r + 18.0);
            let text = labels.and_then(|l| l.get(v - 1)).cloned().unwrap_or_else(|| v.to_string());
            let _ = writeln!(
                s,
                r#"  <text x="{x:.2}" y="{y:.2}" font-family="sans-serif" font-size="14" text-anchor="middle" dominant-baseline="middle">{}</text>"#,
                escape(&text)
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DecompositionJson {
    n: usize,
    diagonals: Vec<[usize; 2]>,
}

/// Diagonal sets of every dissection of the polygon on `i..=j` with `(i, j)`
/// as its base, using cells of the given sizes.
fn dissections(
    i: usize,
    j: usize,
    quads: bool,
    memo: &mut BTreeMap<(usize, usize), Vec<Vec<(usize, usize)>>>,
) -> Vec<Vec<(usize, usize)>> {
    if j - i == 1 {
        return vec![Vec::new()];
    }
    if let Some(v) = memo.get(&(i, j)) {
        return v.clone();
    }
    let chord = |a: usize, b: usize| (b - a >= 2).then_some((a, b));
    let mut out = Vec::new();
    // the cell on base (i, j) is (i, k, j) or (i, k, l, j)
    for k in i + 1..j {
        for left in dissections(i, k, quads, memo) {
            for right in dissections(k, j, quads, memo) {
                let mut d: Vec<_> = chord(i, k).into_iter().chain(chord(k, j)).collect();
                d.extend(left.iter().copied());
                d.extend(right.iter().copied());
                out.push(d);
            }
        }
        if !quads {
            continue;
        }
        for l in k + 1..j {
            for a in dissections(i, k, quads, memo) {
                for b in dissections(k, l, quads, memo) {
                    for c in dissections(l, j, quads, memo) {
                        let mut d: Vec<_> = chord(i, k).into_iter().chain(chord(k, l)).chain(chord(l, j)).collect();
                        d.extend(a.iter().copied());
                        d.extend(b.iter().copied());
                        d.extend(c.iter().copied());
                        out.push(d);
                    }
                }
            }
        }
    }
    memo.insert((i, j), out.clone());
    out
}

fn enumerate(n: usize, quads: bool) -> Result<Vec<Decomposition>> {
    if n < 3 {
        return Err(Error::InvalidDecomposition(format!("a polygon needs 3 vertices, got {n}")));
    }
    let mut memo = BTreeMap::new();
    let mut out = dissections(1, n, quads, &mut memo)
        .into_iter()
        .map(|d| Decomposition::from_diagonals(n, d))
        .collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// All triangulations of the `n`-gon.
pub fn enumerate_triangulations(n: usize) -> Result<Vec<Decomposition>> {
    enumerate(n, false)
}

/// All dissections of the `n`-gon into triangles and quadrilaterals,
/// the undissected square included.
pub fn enumerate_34_decompositions(n: usize) -> Result<Vec<Decomposition>> {
    enumerate(n, true)
}

/// Triangle counts of a triangulation mapped into `ring`.
pub fn triangulation_quiddity(d: &Decomposition, ring: &RingSpec) -> Result<Tuple> {
    if !d.is_triangulation() {
        return Err(Error::InvalidDecomposition("not a triangulation".into()));
    }
    let counts: Vec<i64> = d.triangle_counts().into_iter().map(|c| c as i64).collect();
    Tuple::from_ints(ring, &counts)
}

/// Parity of the triangle count at each vertex, over `Z/2`.
pub fn decomposition_quiddity_mod2(d: &Decomposition) -> Result<Tuple> {
    if !d.is_34() {
        return Err(Error::InvalidDecomposition("cells must be triangles or quadrilaterals".into()));
    }
    let entries = d
        .triangle_counts()
        .into_iter()
        .map(|c| Element::Residue((c % 2) as u64))
        .collect();
    Tuple::new(RingSpec::ModN(2), entries)
}

/// Comparison of dissection parities with the quiddities over `Z/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DissectionParityReport {
    pub n: usize,
    pub decompositions: usize,
    pub solutions: usize,
    /// Quiddities that are no dissection parity.
    pub unrealized: Vec<Tuple>,
    /// Dissection parities that are no quiddity.
    pub non_solutions: Vec<Tuple>,
}

impl DissectionParityReport {
    pub fn holds(&self) -> bool {
        self.unrealized.is_empty() && self.non_solutions.is_empty()
    }
}

pub fn verify_dissection_parities(n: usize) -> Result<DissectionParityReport> {
    verify_dissection_parities_capped(n, PARITY_CHECK_CAP)
}

pub fn verify_dissection_parities_capped(n: usize, cap: usize) -> Result<DissectionParityReport> {
    if n > cap {
        return Err(Error::Unsupported(format!("n = {n} exceeds the cap {cap}")));
    }
    let decs = enumerate_34_decompositions(n)?;
    let from_geometry: BTreeSet<Tuple> = decs
        .iter()
        .map(decomposition_quiddity_mod2)
        .collect::<Result<_>>()?;
    let from_algebra: BTreeSet<Tuple> = enumerate_quiddities(&RingSpec::ModN(2), n, &SearchOptions::with_workers(1))?
        .into_iter()
        .collect();
    Ok(DissectionParityReport {
        n,
        decompositions: decs.len(),
        solutions: from_algebra.len(),
        unrealized: from_algebra.difference(&from_geometry).cloned().collect(),
        non_solutions: from_geometry.difference(&from_algebra).cloned().collect(),
    })
}

/// Diagonals present in every decomposition.
pub fn common_diagonals(decs: &[Decomposition]) -> Result<BTreeSet<(usize, usize)>> {
    let Some(first) = decs.first() else {
        return Ok(BTreeSet::new());
    };
    let mut common = first.diagonals.clone();
    for d in &decs[1..] {
        if d.n != first.n {
            return Err(Error::LengthMismatch {
                expected: first.n,
                got: d.n,
            });
        }
        common.retain(|x| d.diagonals.contains(x));
    }
    Ok(common)
}

/// Whether some diagonal occurs in every decomposition. When it does, the
/// product-ring quiddity assembled from their parities is reducible; the
/// converse fails, since other dissections may realize the same parities.
pub fn common_diagonal(decs: &[Decomposition]) -> Result<bool> {
    Ok(!common_diagonals(decs)?.is_empty())
}
