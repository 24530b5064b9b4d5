//! The capture graph of a generic instance.
//!
//! For `r != 0` the pair `(a, b)` has no solution exactly when
//! `chi(D*a^2 + 4*r*b) = -1`, so a set is capture-free iff that holds
//! for every ordered pair (diagonal included).  Packaged as a graph:
//!
//! * vertices: `V = { a : chi(D*a^2 + 4*r*a) = -1 }` (the elements whose
//!   singleton is capture-free; `0` never qualifies since the argument
//!   vanishes there),
//! * edges: `{a, b}` for distinct `a, b` in `V` with both
//!   `chi(D*a^2 + 4*r*b) = -1` and `chi(D*b^2 + 4*r*a) = -1`.
//!
//! Capture-free sets are then exactly the cliques of this graph, so the
//! capture number is `omega + 1` with `omega` the clique number (an
//! empty graph has `omega = 0`).  Only GENERIC instances get a graph:
//! with `D = 0` the vertex rule would degenerate to a coset condition
//! and the clique detour is pointless (see `counting::blocking_set`).
//!
//! Construction is O(q) field work plus O(|V|^2) table lookups, with
//! `|V|` about `q/2`; the adjacency matrix costs `|V|^2` bits.  The
//! default guard caps `q` accordingly.

use crate::bitset::BitMatrix;
use crate::counting::{count_closed, CaptureInstance, CaseTag};
use crate::error::{Error, Result};
use crate::field::{CharTable, FieldElement};
use std::io::{self, BufRead, Write};

/// Default refusal threshold for graph construction.
pub const DEFAULT_GRAPH_MAX_Q: u64 = 200_000;

/// The capture graph of a GENERIC instance.
#[derive(Clone, Debug)]
pub struct CaptureGraph {
    inst: CaptureInstance,
    vertices: Vec<FieldElement>,
    adj: BitMatrix,
    edges: u64,
}

/// Is the ordered-pair family {(a, b), (b, a)} solution-free?  This is
/// the edge predicate of the capture graph (and, at `a = b`, the vertex
/// predicate).  Requires `r != 0`.
pub fn x_indicator(inst: &CaptureInstance, a: FieldElement, b: FieldElement) -> Result<bool> {
    Ok(count_closed(inst, a, b)? == 0 && count_closed(inst, b, a)? == 0)
}

impl CaptureGraph {
    /// Build with the default size guard.
    pub fn build(inst: &CaptureInstance) -> Result<CaptureGraph> {
        CaptureGraph::build_with(inst, DEFAULT_GRAPH_MAX_Q)
    }

    /// Build, refusing q above `max_q` or any non-GENERIC instance.
    pub fn build_with(inst: &CaptureInstance, max_q: u64) -> Result<CaptureGraph> {
        let spec = inst.spec();
        if spec.q() > max_q {
            return Err(Error::GraphGuard { q: spec.q(), limit: max_q });
        }
        if inst.case() != CaseTag::Generic {
            return Err(Error::NotGeneric(inst.case()));
        }
        let table = CharTable::build(spec);
        let red = inst.reduced();
        let four_r = spec.mul(spec.from_int(4), red.r);

        // Per-element halves of the character argument: arg(a, b)
        // decomposes as D*a^2 + (4r)*b, so one field add per pair.
        let da2: Vec<FieldElement> =
            spec.elements().map(|x| spec.mul(red.d, spec.mul(x, x))).collect();
        let r4b: Vec<FieldElement> = spec.elements().map(|x| spec.mul(four_r, x)).collect();
        let minus: Vec<bool> = spec
            .elements()
            .map(|x| table.chi(spec.add(da2[x.index() as usize], r4b[x.index() as usize])) == -1)
            .collect();

        let vertices: Vec<FieldElement> =
            spec.elements().filter(|x| minus[x.index() as usize]).collect();
        let nv = vertices.len();
        let mut adj = BitMatrix::new(nv);
        let mut edges = 0u64;
        for i in 0..nv {
            let ai = vertices[i].index() as usize;
            for j in (i + 1)..nv {
                let aj = vertices[j].index() as usize;
                let ij = table.chi(spec.add(da2[ai], r4b[aj])) == -1;
                let ji = table.chi(spec.add(da2[aj], r4b[ai])) == -1;
                if ij && ji {
                    adj.connect(i, j);
                    edges += 1;
                }
            }
        }
        Ok(CaptureGraph { inst: inst.clone(), vertices, adj, edges })
    }

    pub fn instance(&self) -> &CaptureInstance {
        &self.inst
    }

    /// Vertices as field elements, ascending by index.
    pub fn vertices(&self) -> &[FieldElement] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> u64 {
        self.edges
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adj
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj.degree(i)
    }

    /// Edge count over binomial(|V|, 2); 0.0 below two vertices.
    pub fn density(&self) -> f64 {
        let n = self.vertices.len() as u64;
        if n < 2 {
            return 0.0;
        }
        (2 * self.edges) as f64 / (n * (n - 1)) as f64
    }

    /// Write the graph in DIMACS edge format: one comment line naming
    /// the instance, a `p edge` line, then `e i j` lines with 1-based
    /// endpoints, `i < j`, ascending.  Vertex k stands for the k-th
    /// smallest element of `vertices()`.
    pub fn export_dimacs(&self, w: &mut impl Write) -> io::Result<()> {
        let spec = self.inst.spec();
        let l = self.inst.linear();
        let q = self.inst.quadratic();
        writeln!(
            w,
            "c formlab capture graph p={} n={} L=({},{}) Q=({},{},{})",
            spec.p(),
            spec.n(),
            l.x,
            l.y,
            q.xx,
            q.xy,
            q.yy
        )?;
        writeln!(w, "p edge {} {}", self.vertices.len(), self.edges)?;
        for i in 0..self.vertices.len() {
            for j in (i + 1)..self.vertices.len() {
                if self.adj.adjacent(i, j) {
                    writeln!(w, "e {} {}", i + 1, j + 1)?;
                }
            }
        }
        Ok(())
    }
}

/// Parse DIMACS edge format back into (vertex count, edge list).
/// Edges come back 0-based with the smaller endpoint first, in file
/// order; self-loops, repeated edges, out-of-range endpoints, and a
/// count mismatch against the `p` line are rejected.
pub fn parse_dimacs(r: impl BufRead) -> Result<(usize, Vec<(usize, usize)>)> {
    let bad = |msg: String| Error::DimacsParse(msg);
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for (lineno, line) in r.lines().enumerate() {
        let line = line.map_err(|e| bad(format!("read error: {e}")))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        match fields.as_slice() {
            ["p", "edge", nv, ne] => {
                if header.is_some() {
                    return Err(bad(format!("line {}: second p line", lineno + 1)));
                }
                let nv = nv.parse().map_err(|_| bad(format!("bad vertex count {nv:?}")))?;
                let ne = ne.parse().map_err(|_| bad(format!("bad edge count {ne:?}")))?;
                header = Some((nv, ne));
            }
            ["e", i, j] => {
                let (nv, _) = header
                    .ok_or_else(|| bad(format!("line {}: e before p", lineno + 1)))?;
                let i: usize = i.parse().map_err(|_| bad(format!("bad endpoint {i:?}")))?;
                let j: usize = j.parse().map_err(|_| bad(format!("bad endpoint {j:?}")))?;
                if i < 1 || j < 1 || i > nv || j > nv {
                    return Err(bad(format!("edge ({i}, {j}) out of range 1..={nv}")));
                }
                if i == j {
                    return Err(bad(format!("self-loop at vertex {i}")));
                }
                let pair = (i.min(j) - 1, i.max(j) - 1);
                if !seen.insert(pair) {
                    return Err(bad(format!("duplicate edge ({i}, {j})")));
                }
                edges.push(pair);
            }
            _ => return Err(bad(format!("line {}: unrecognized: {line:?}", lineno + 1))),
        }
    }
    let (nv, ne) = header.ok_or_else(|| bad("missing p line".to_string()))?;
    if edges.len() != ne {
        return Err(bad(format!("p line promises {ne} edges, file has {}", edges.len())));
    }
    Ok((nv, edges))
}
