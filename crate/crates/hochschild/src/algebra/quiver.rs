use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver with labelled vertices and arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut seen = std::collections::HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(Error::Input(format!("duplicate vertex label '{}'", v)));
            }
        }
        for a in &arrows {
            if !seen.insert(a.label.clone()) {
                return Err(Error::Input(format!("duplicate label '{}'", a.label)));
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::Input(format!("arrow '{}' has a missing endpoint", a.label)));
            }
        }
        Ok(Quiver { vertices, arrows })
    }

    /// Builds from labels: arrows given as (label, source label, target label).
    pub fn from_labels(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let find = |l: &str| {
            vs.iter()
                .position(|v| v == l)
                .ok_or_else(|| Error::Input(format!("unknown vertex '{}'", l)))
        };
        let mut arr = Vec::new();
        for (l, s, t) in arrows {
            arr.push(Arrow { label: l.to_string(), source: find(s)?, target: find(t)? });
        }
        Quiver::new(vs, arr)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// No loops and at most one arrow between any ordered pair of vertices.
    pub fn is_simply_laced(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.arrows.iter().all(|a| a.source != a.target && seen.insert((a.source, a.target)))
    }

    /// The arrow from `s` to `t`, if any (unique in a simply laced quiver).
    pub fn arrow_between(&self, s: usize, t: usize) -> Option<usize> {
        self.arrows.iter().position(|a| a.source == s && a.target == t)
    }

    pub fn arrows_from(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.source == v).map(|(i, _)| i)
    }

    pub fn arrows_into(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows.iter().enumerate().filter(move |(_, a)| a.target == v).map(|(i, _)| i)
    }

    pub fn has_oriented_cycle(&self) -> bool {
        // Kahn's algorithm
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        seen < n
    }
}
