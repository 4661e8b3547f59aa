//! Hasse diagrams of `Δ_j^1`: nodes are roots, edges add one simple root.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{Root, RootSystem, RootSystemType};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseEdge {
    pub from: Root,
    pub to: Root,
    /// Simple root added along the edge.
    pub label: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HasseDiagram {
    pub rtype: RootSystemType,
    pub j: usize,
    pub nodes: Vec<Root>,
    pub edges: Vec<HasseEdge>,
}

pub fn hasse(sys: &RootSystem, j: usize) -> Result<HasseDiagram> {
    if j == 0 || j > sys.rank() {
        return Err(Error::BadIndex(j));
    }
    let nodes = sys.delta_j1(j);
    let mut edges = Vec::new();
    for x in &nodes {
        for i in 1..=sys.rank() {
            let y = x.add(&sys.simple(i));
            if nodes.contains(&y) {
                edges.push(HasseEdge {
                    from: x.clone(),
                    to: y,
                    label: i,
                });
            }
        }
    }
    Ok(HasseDiagram {
        rtype: sys.rtype(),
        j,
        nodes,
        edges,
    })
}

fn node_id(x: &Root) -> String {
    x.coeffs().iter().map(i32::to_string).collect::<Vec<_>>().join(",")
}

fn node_label(x: &Root) -> String {
    if x.coeffs().iter().all(|c| (0..10).contains(c)) {
        x.coeffs().iter().map(i32::to_string).collect()
    } else {
        node_id(x)
    }
}

impl HasseDiagram {
    /// One line per height, then one line per edge.
    pub fn render_text(&self) -> String {
        let mut out = format!("Δ_{}^1 of {} ({} roots)\n", self.j, self.rtype, self.nodes.len());
        let mut h = None;
        for x in &self.nodes {
            if h != Some(x.height()) {
                if h.is_some() {
                    out.push('\n');
                }
                h = Some(x.height());
                out.push_str(&format!("height {:>2}:", x.height()));
            }
            out.push(' ');
            out.push_str(&node_label(x));
        }
        out.push('\n');
        for e in &self.edges {
            out.push_str(&format!("{} -α{}-> {}\n", node_label(&e.from), e.label, node_label(&e.to)));
        }
        out
    }

    /// DOT digraph with coefficient vectors as node identifiers.
    pub fn render_dot(&self) -> String {
        let mut out = format!("digraph \"{}_j{}\" {{\n  rankdir=BT;\n", self.rtype, self.j);
        for x in &self.nodes {
            out.push_str(&format!("  \"{}\" [label=\"{}\"];\n", node_id(x), node_label(x)));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "  \"{}\" -> \"{}\" [label=\"α{}\"];\n",
                node_id(&e.from),
                node_id(&e.to),
                e.label
            ));
        }
        out.push_str("}\n");
        out
    }
}
