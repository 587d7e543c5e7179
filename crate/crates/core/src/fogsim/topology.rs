use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::FogError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Tier {
    Edge,
    Fog,
    Cloud,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeSpec {
    pub id: String,
    pub tier: Tier,
    #[serde(default)]
    pub parent: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Link {
    pub bandwidth_bytes_per_s: f64,
    pub latency_s: f64,
}

impl Link {
    /// Seconds to move `bytes` across this link.
    pub fn transfer_time(&self, bytes: u64) -> f64 {
        bytes as f64 / self.bandwidth_bytes_per_s + self.latency_s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinkSpec {
    pub child: String,
    #[serde(flatten)]
    pub link: Link,
}

/// On-disk topology document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TopologySpec {
    pub nodes: Vec<NodeSpec>,
    pub links: Vec<LinkSpec>,
    /// cell_id → EDGE node id.
    pub cells: BTreeMap<String, String>,
}

impl TopologySpec {
    pub fn load(path: &Path) -> Result<Self, FogError> {
        let text = std::fs::read_to_string(path).map_err(|source| FogError::Io {
            path: path.display().to_string(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| FogError::InvalidTopology(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("topology serializes");
        s.push('\n');
        s
    }
}

/// A validated cloud → fog → edge tree with one uplink per non-cloud node.
#[derive(Debug, Clone, PartialEq)]
pub struct FogTopology {
    pub cloud: String,
    /// Fog id → its edge ids, both sorted.
    pub fogs: BTreeMap<String, Vec<String>>,
    /// Edge id → fog id.
    pub edge_parent: BTreeMap<String, String>,
    /// Child id → uplink.
    pub links: BTreeMap<String, Link>,
    /// cell_id → edge id.
    pub cells: BTreeMap<String, String>,
}

pub fn build_topology(spec: &TopologySpec) -> Result<FogTopology, FogError> {
    let bad = |m: String| Err(FogError::InvalidTopology(m));
    let mut tiers: BTreeMap<&str, (Tier, Option<&str>)> = BTreeMap::new();
    for n in &spec.nodes {
        if tiers.insert(&n.id, (n.tier, n.parent.as_deref())).is_some() {
            return bad(format!("node `{}` declared twice", n.id));
        }
    }
    let clouds: Vec<&str> = tiers
        .iter()
        .filter(|(_, (t, _))| *t == Tier::Cloud)
        .map(|(id, _)| *id)
        .collect();
    if clouds.len() != 1 {
        return bad(format!("exactly one CLOUD node required, found {}", clouds.len()));
    }
    let cloud = clouds[0].to_string();

    let mut fogs: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut edge_parent = BTreeMap::new();
    for (id, (tier, parent)) in &tiers {
        let parent_tier = parent.and_then(|p| tiers.get(p)).map(|(t, _)| *t);
        match (tier, parent, parent_tier) {
            (Tier::Cloud, None, _) => {}
            (Tier::Cloud, Some(_), _) => return bad(format!("CLOUD node `{id}` must have no parent")),
            (Tier::Fog, Some(_), Some(Tier::Cloud)) => {
                fogs.entry(id.to_string()).or_default();
            }
            (Tier::Fog, _, _) => return bad(format!("FOG node `{id}` must be parented to the CLOUD node")),
            (Tier::Edge, Some(p), Some(Tier::Fog)) => {
                edge_parent.insert(id.to_string(), p.to_string());
            }
            (Tier::Edge, _, _) => return bad(format!("EDGE node `{id}` must be parented to a FOG node")),
        }
    }
    for (edge, fog) in &edge_parent {
        fogs.get_mut(fog).expect("parent checked").push(edge.clone());
    }

    let mut links = BTreeMap::new();
    for l in &spec.links {
        match tiers.get(l.child.as_str()) {
            Some((Tier::Edge | Tier::Fog, _)) => {}
            _ => return bad(format!("link child `{}` is not an EDGE or FOG node", l.child)),
        }
        if !(l.link.bandwidth_bytes_per_s > 0.0 && l.link.bandwidth_bytes_per_s.is_finite()) {
            return bad(format!("link of `{}` needs positive bandwidth", l.child));
        }
        if !(l.link.latency_s >= 0.0 && l.link.latency_s.is_finite()) {
            return bad(format!("link of `{}` needs non-negative latency", l.child));
        }
        if links.insert(l.child.clone(), l.link).is_some() {
            return bad(format!("node `{}` has two uplinks", l.child));
        }
    }
    for id in fogs.keys().chain(edge_parent.keys()) {
        if !links.contains_key(id) {
            return bad(format!("node `{id}` has no uplink"));
        }
    }
    for (cell, edge) in &spec.cells {
        if !edge_parent.contains_key(edge) {
            return bad(format!(
                "cell `{cell}` is assigned to `{edge}`, which is not an EDGE node"
            ));
        }
    }
    Ok(FogTopology {
        cloud,
        fogs,
        edge_parent,
        links,
        cells: spec.cells.clone(),
    })
}

impl FogTopology {
    /// `n_fogs` fogs with `edges_per_fog` edges each; cells are dealt to
    /// edges in sorted blocks. Edge links use `edge_link`, fog uplinks
    /// `fog_link`.
    pub fn balanced(
        cells: &BTreeSet<String>,
        n_fogs: usize,
        edges_per_fog: usize,
        edge_link: Link,
        fog_link: Link,
    ) -> Result<Self, FogError> {
        build_topology(&balanced_spec(cells, n_fogs, edges_per_fog, edge_link, fog_link))
    }

    /// Five fogs of two edges each, with the default links.
    pub fn default_for(cells: &BTreeSet<String>) -> Self {
        Self::balanced(cells, 5, 2, DEFAULT_EDGE_LINK, DEFAULT_FOG_LINK).expect("default topology is valid")
    }

    pub fn edges(&self) -> impl Iterator<Item = &String> {
        self.edge_parent.keys()
    }

    pub fn cells_of_edge(&self, edge: &str) -> BTreeSet<String> {
        self.cells
            .iter()
            .filter(|(_, e)| *e == edge)
            .map(|(c, _)| c.clone())
            .collect()
    }

    pub fn cells_of_fog(&self, fog: &str) -> BTreeSet<String> {
        self.fogs[fog].iter().flat_map(|e| self.cells_of_edge(e)).collect()
    }

    pub fn to_spec(&self) -> TopologySpec {
        let mut nodes = vec![NodeSpec {
            id: self.cloud.clone(),
            tier: Tier::Cloud,
            parent: None,
        }];
        for (fog, edges) in &self.fogs {
            nodes.push(NodeSpec {
                id: fog.clone(),
                tier: Tier::Fog,
                parent: Some(self.cloud.clone()),
            });
            nodes.extend(edges.iter().map(|e| NodeSpec {
                id: e.clone(),
                tier: Tier::Edge,
                parent: Some(fog.clone()),
            }));
        }
        TopologySpec {
            nodes,
            links: self
                .links
                .iter()
                .map(|(c, l)| LinkSpec {
                    child: c.clone(),
                    link: *l,
                })
                .collect(),
            cells: self.cells.clone(),
        }
    }
}

/// 1.25e6 B/s and 10 ms.
pub const DEFAULT_EDGE_LINK: Link = Link {
    bandwidth_bytes_per_s: 1.25e6,
    latency_s: 0.01,
};
/// 1.25e7 B/s and 10 ms.
pub const DEFAULT_FOG_LINK: Link = Link {
    bandwidth_bytes_per_s: 1.25e7,
    latency_s: 0.01,
};

pub fn balanced_spec(
    cells: &BTreeSet<String>,
    n_fogs: usize,
    edges_per_fog: usize,
    edge_link: Link,
    fog_link: Link,
) -> TopologySpec {
    let mut nodes = vec![NodeSpec {
        id: "cloud".into(),
        tier: Tier::Cloud,
        parent: None,
    }];
    let mut links = Vec::new();
    let mut edges = Vec::new();
    for f in 0..n_fogs {
        let fog = format!("fog{f:02}");
        nodes.push(NodeSpec {
            id: fog.clone(),
            tier: Tier::Fog,
            parent: Some("cloud".into()),
        });
        links.push(LinkSpec {
            child: fog.clone(),
            link: fog_link,
        });
        for e in 0..edges_per_fog {
            let edge = format!("{fog}-edge{e:02}");
            nodes.push(NodeSpec {
                id: edge.clone(),
                tier: Tier::Edge,
                parent: Some(fog.clone()),
            });
            links.push(LinkSpec {
                child: edge.clone(),
                link: edge_link,
            });
            edges.push(edge);
        }
    }
    let per_edge = cells.len().div_ceil(edges.len().max(1)).max(1);
    let cells = cells
        .iter()
        .enumerate()
        .filter_map(|(i, c)| edges.get(i / per_edge).map(|e| (c.clone(), e.clone())))
        .collect();
    TopologySpec { nodes, links, cells }
}
