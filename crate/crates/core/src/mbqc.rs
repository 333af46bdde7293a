//! Open graphs for measurement-based computation: the layered resource
//! family `G_{n,l}`, its canonical gflow and a generic gflow checker.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::simulator::StateVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Plane {
    XY,
    XZ,
    YZ,
}

/// Graph with inputs, outputs and a measurement plane for every
/// non-output vertex. Vertices are `1..=vertex_count`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpenGraph {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    adjacency: BTreeMap<usize, BTreeSet<usize>>,
    inputs: BTreeSet<usize>,
    outputs: BTreeSet<usize>,
    planes: BTreeMap<usize, Plane>,
}

impl OpenGraph {
    pub fn new(
        adjacency: BTreeMap<usize, BTreeSet<usize>>,
        inputs: BTreeSet<usize>,
        outputs: BTreeSet<usize>,
        planes: BTreeMap<usize, Plane>,
    ) -> Result<Self> {
        let g = Self {
            n: None,
            l: None,
            adjacency,
            inputs,
            outputs,
            planes,
        };
        g.validate()?;
        Ok(g)
    }

    /// Checks labels, symmetry, loops and plane coverage.
    pub fn validate(&self) -> Result<()> {
        let count = self.adjacency.len();
        if self.adjacency.keys().copied().ne(1..=count) {
            return invalid("vertices must be labelled 1..=V");
        }
        for (&v, nbrs) in &self.adjacency {
            for &w in nbrs {
                if w == v {
                    return invalid(format!("self-loop at {v}"));
                }
                if !self.adjacency.get(&w).is_some_and(|s| s.contains(&v)) {
                    return invalid(format!("edge {v}-{w} is not symmetric"));
                }
            }
        }
        let in_range = |s: &BTreeSet<usize>| s.iter().all(|v| (1..=count).contains(v));
        if !in_range(&self.inputs) || !in_range(&self.outputs) {
            return invalid("input or output vertex out of range");
        }
        for v in 1..=count {
            let has_plane = self.planes.contains_key(&v);
            if has_plane == self.outputs.contains(&v) {
                return invalid(format!(
                    "vertex {v}: planes must be given exactly on non-outputs"
                ));
            }
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn neighbors(&self, v: usize) -> &BTreeSet<usize> {
        &self.adjacency[&v]
    }

    pub fn inputs(&self) -> &BTreeSet<usize> {
        &self.inputs
    }

    pub fn outputs(&self) -> &BTreeSet<usize> {
        &self.outputs
    }

    pub fn plane(&self, v: usize) -> Option<Plane> {
        self.planes.get(&v).copied()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.values().map(|s| s.len()).sum::<usize>() / 2
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.adjacency
            .iter()
            .flat_map(|(&v, s)| s.iter().filter(move |&&w| w > v).map(move |&w| (v, w)))
            .collect()
    }

    pub fn remove_edge(&mut self, a: usize, b: usize) -> bool {
        let had = self.adjacency.get_mut(&a).is_some_and(|s| s.remove(&b));
        if had {
            self.adjacency.get_mut(&b).map(|s| s.remove(&a));
        }
        had
    }

    pub fn set_plane(&mut self, v: usize, plane: Plane) -> Result<()> {
        if self.outputs.contains(&v) || !self.adjacency.contains_key(&v) {
            return invalid(format!("vertex {v} is not a measured vertex"));
        }
        self.planes.insert(v, plane);
        Ok(())
    }
}

/// Vertices with an odd number of neighbours in `k`.
pub fn odd_neighborhood(graph: &OpenGraph, k: &BTreeSet<usize>) -> Result<BTreeSet<usize>> {
    let mut count: BTreeMap<usize, usize> = BTreeMap::new();
    for v in k {
        let nbrs = graph
            .adjacency
            .get(v)
            .ok_or_else(|| Error::InvalidInput(format!("vertex {v} not in graph")))?;
        for &w in nbrs {
            *count.entry(w).or_default() += 1;
        }
    }
    Ok(count
        .into_iter()
        .filter(|&(_, c)| c % 2 == 1)
        .map(|(v, _)| v)
        .collect())
}

/// Position `i` (one-based, within a layer) holds a red vertex.
fn is_red(n: usize, i: usize) -> bool {
    if n.is_multiple_of(2) {
        i == 1
    } else {
        i == 1 || i == 2
    }
}

fn check_nl(n: usize, l: usize) -> Result<()> {
    if n < 2 {
        return invalid(format!("n must be at least 2, got {n}"));
    }
    if l < 1 {
        return invalid(format!("l must be at least 1, got {l}"));
    }
    Ok(())
}

/// Layered resource graph: per layer, `1` (even `n`) or `2` (odd `n`) red
/// vertices coupled to a column of `n` blue vertices, followed by a second
/// blue column linked one-to-one to the first and to the next layer.
pub fn build_resource_graph(n: usize, l: usize) -> Result<OpenGraph> {
    check_nl(n, l)?;
    let even = n.is_multiple_of(2);
    let width = if even { 2 * n + 1 } else { 2 * n + 2 };
    let reds = if even { 1 } else { 2 };
    let count = l * width;
    let mut adjacency: BTreeMap<usize, BTreeSet<usize>> =
        (1..=count).map(|v| (v, BTreeSet::new())).collect();

    for j in 0..l {
        let o = j * width;
        let left = o + reds + 1..=o + reds + n;
        // Red couplings: even n couples the single red vertex to the whole
        // left column; odd n splits the column, sharing the middle vertex.
        if even {
            for v in left.clone() {
                adjacency.get_mut(&(o + 1)).unwrap().insert(v);
            }
        } else {
            let h = n.div_ceil(2);
            for v in o + 3..=o + 2 + h {
                adjacency.get_mut(&(o + 1)).unwrap().insert(v);
            }
            for v in o + 2 + h..=o + 2 + n {
                adjacency.get_mut(&(o + 2)).unwrap().insert(v);
            }
        }
        for v in left {
            adjacency.get_mut(&v).unwrap().insert(v + n);
            if j + 1 < l {
                adjacency.get_mut(&(v + n)).unwrap().insert(v + width);
            }
        }
    }
    // The tables list each edge from both ends; build one side and mirror it.
    let edges: Vec<(usize, usize)> = adjacency
        .iter()
        .flat_map(|(&v, s)| s.iter().map(move |&w| (v, w)))
        .collect();
    for (v, w) in edges {
        adjacency.get_mut(&w).unwrap().insert(v);
    }

    let inputs = (reds + 1..=reds + n).collect();
    let outputs = ((l - 1) * width + reds + n + 1..=count).collect();
    let mut planes = BTreeMap::new();
    for j in 0..l {
        let measured = if j + 1 < l { width } else { reds + n };
        for i in 1..=measured {
            let plane = if is_red(n, i) { Plane::YZ } else { Plane::XY };
            planes.insert(j * width + i, plane);
        }
    }
    let mut g = OpenGraph::new(adjacency, inputs, outputs, planes)?;
    g.n = Some(n);
    g.l = Some(l);
    Ok(g)
}

/// Correction sets plus a total order on vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GFlow {
    pub g: BTreeMap<usize, BTreeSet<usize>>,
    pub order: Vec<usize>,
}

/// Red vertices correct themselves; blue vertices point to their right
/// neighbour. Order is label order.
pub fn canonical_gflow(n: usize, l: usize) -> Result<GFlow> {
    check_nl(n, l)?;
    let even = n.is_multiple_of(2);
    let width = if even { 2 * n + 1 } else { 2 * n + 2 };
    let reds = if even { 1 } else { 2 };
    let mut g = BTreeMap::new();
    for j in 0..l {
        let o = j * width;
        for i in 1..=width {
            let v = o + i;
            let target = if i <= reds {
                v
            } else if i <= reds + n {
                v + n
            } else if j + 1 < l {
                v + n + reds
            } else {
                continue;
            };
            g.insert(v, BTreeSet::from([target]));
        }
    }
    Ok(GFlow {
        g,
        order: (1..=l * width).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GflowViolation {
    pub vertex: usize,
    /// 0: `g(v)` meets the inputs; 1..=5: the ordering and plane conditions.
    pub condition: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GflowReport {
    pub ok: bool,
    pub violations: Vec<GflowViolation>,
}

/// Checks every gflow condition for every measured vertex. Violations are
/// sorted by vertex, then condition.
pub fn verify_gflow(graph: &OpenGraph, flow: &GFlow) -> Result<GflowReport> {
    let count = graph.vertex_count();
    let mut rank = vec![usize::MAX; count + 1];
    for (pos, &v) in flow.order.iter().enumerate() {
        if v == 0 || v > count || rank[v] != usize::MAX {
            return invalid(format!("order has invalid or repeated vertex {v}"));
        }
        rank[v] = pos;
    }
    if flow.order.len() != count {
        return invalid("order must list every vertex once");
    }
    let later = |v: usize, w: usize| rank[v] < rank[w];

    let mut violations = Vec::new();
    for v in 1..=count {
        if graph.outputs.contains(&v) {
            continue;
        }
        let gv = flow
            .g
            .get(&v)
            .ok_or_else(|| Error::InvalidInput(format!("g is undefined on vertex {v}")))?;
        if gv.iter().any(|w| *w == 0 || *w > count) {
            return invalid(format!("g({v}) has vertices outside the graph"));
        }
        let odd = odd_neighborhood(graph, gv)?;
        let mut fail = |c: u8| {
            violations.push(GflowViolation {
                vertex: v,
                condition: c,
            })
        };
        if gv.iter().any(|w| graph.inputs.contains(w)) {
            fail(0);
        }
        if gv.iter().any(|&w| w != v && !later(v, w)) {
            fail(1);
        }
        if odd.iter().any(|&w| w != v && !later(v, w)) {
            fail(2);
        }
        let (in_g, in_odd) = (gv.contains(&v), odd.contains(&v));
        match graph.plane(v).expect("validated") {
            Plane::XY if in_g || !in_odd => fail(3),
            Plane::XZ if !in_g || !in_odd => fail(4),
            Plane::YZ if !in_g || in_odd => fail(5),
            _ => {}
        }
    }
    Ok(GflowReport {
        ok: violations.is_empty(),
        violations,
    })
}

/// `|G>`: every vertex in `|+>`, one CZ per edge. Vertex `v` is wire `v`.
pub fn graph_state(graph: &OpenGraph) -> Result<StateVector> {
    let mut s = StateVector::plus(graph.vertex_count())?;
    for (a, b) in graph.edges() {
        s.apply_cz(a, b)?;
    }
    Ok(s)
}
