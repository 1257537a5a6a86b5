//! Finite acyclic quivers and their paths.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const KRONECKER: &str = "kronecker";

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

/// A path, stored as its arrows in the order they are traversed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    paths: Vec<Vec<Vec<Path>>>,
    index: HashMap<(usize, Vec<usize>), usize>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Quiver) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    /// Builds a quiver from vertex names and `(name, from, to)` arrows, rejecting
    /// duplicates, dangling endpoints and oriented cycles.
    pub fn new<S: AsRef<str>>(vertices: &[S], arrows: &[(S, S, S)]) -> Result<Quiver> {
        let vertices: Vec<String> = vertices.iter().map(|v| v.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for v in &vertices {
            if v.is_empty() || !seen.insert(v.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate or empty vertex name `{v}`")));
            }
        }
        let lookup = |name: &str| {
            vertices
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| Error::InvalidQuiver(format!("arrow endpoint `{name}` is not a vertex")))
        };
        let mut names = HashSet::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (name, from, to) in arrows {
            let name = name.as_ref().to_string();
            if name.is_empty() || !names.insert(name.clone()) {
                return Err(Error::InvalidQuiver(format!("duplicate or empty arrow name `{name}`")));
            }
            out.push(Arrow { name, source: lookup(from.as_ref())?, target: lookup(to.as_ref())? });
        }
        Quiver::from_parts(vertices, out)
    }

    fn from_parts(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Quiver> {
        let n = vertices.len();
        let order = topological_order(n, &arrows)
            .ok_or_else(|| Error::InvalidQuiver("the quiver has an oriented cycle".into()))?;
        let paths = enumerate_paths(n, &arrows, &order);
        let mut index = HashMap::new();
        for row in &paths {
            for list in row {
                for (i, p) in list.iter().enumerate() {
                    index.insert((p.source, p.arrows.clone()), i);
                }
            }
        }
        Ok(Quiver { vertices, arrows, paths, index })
    }

    /// Two vertices `x`, `y` and arrows `alpha`, `beta` from `x` to `y`.
    pub fn kronecker() -> Quiver {
        Quiver::new(&["x", "y"], &[("alpha", "x", "y"), ("beta", "x", "y")]).expect("valid quiver")
    }

    pub fn is_kronecker(&self) -> bool {
        let arrow = |a: &Arrow, name: &str| a.name == name && a.source == 0 && a.target == 1;
        self.vertices == ["x", "y"]
            && self.arrows.len() == 2
            && arrow(&self.arrows[0], "alpha")
            && arrow(&self.arrows[1], "beta")
    }

    /// Same vertices, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        let arrows =
            self.arrows.iter().map(|a| Arrow { name: a.name.clone(), source: a.target, target: a.source }).collect();
        Quiver::from_parts(self.vertices.clone(), arrows).expect("opposite of an acyclic quiver")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.arrows[a]
    }

    pub fn vertex_index(&self, name: &str) -> Result<usize> {
        self.vertices.iter().position(|v| v == name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    pub fn arrow_index(&self, name: &str) -> Result<usize> {
        self.arrows.iter().position(|a| a.name == name).ok_or_else(|| Error::UnknownName(name.to_string()))
    }

    /// Paths from `from` to `to`, ordered by length and then by the names of their arrows.
    pub fn paths(&self, from: usize, to: usize) -> &[Path] {
        &self.paths[from][to]
    }

    /// Position of a path (given by source and arrows) in its ordered list.
    pub fn path_index(&self, source: usize, arrows: &[usize]) -> Option<usize> {
        self.index.get(&(source, arrows.to_vec())).copied()
    }
}

fn topological_order(n: usize, arrows: &[Arrow]) -> Option<Vec<usize>> {
    let mut indeg = vec![0; n];
    for a in arrows {
        indeg[a.target] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = stack.pop() {
        order.push(v);
        for a in arrows.iter().filter(|a| a.source == v) {
            indeg[a.target] -= 1;
            if indeg[a.target] == 0 {
                stack.push(a.target);
            }
        }
    }
    (order.len() == n).then_some(order)
}

fn enumerate_paths(n: usize, arrows: &[Arrow], order: &[usize]) -> Vec<Vec<Vec<Path>>> {
    let mut paths: Vec<Vec<Vec<Path>>> = vec![vec![Vec::new(); n]; n];
    for from in 0..n {
        paths[from][from].push(Path { source: from, target: from, arrows: Vec::new() });
        for &v in order {
            let current = paths[from][v].clone();
            for p in current {
                for (ai, a) in arrows.iter().enumerate().filter(|(_, a)| a.source == v) {
                    let mut next = p.arrows.clone();
                    next.push(ai);
                    paths[from][a.target].push(Path { source: from, target: a.target, arrows: next });
                }
            }
        }
    }
    for row in paths.iter_mut() {
        for list in row.iter_mut() {
            list.sort_by(|p, q| {
                p.len().cmp(&q.len()).then_with(|| {
                    let pn = p.arrows.iter().map(|&a| arrows[a].name.as_str());
                    let qn = q.arrows.iter().map(|&a| arrows[a].name.as_str());
                    pn.cmp(qn)
                })
            });
        }
    }
    paths
}

/// Serialized form: `{"vertices": [...], "arrows": [{"name", "from", "to"}]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct QuiverDoc {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ArrowDoc {
    pub name: String,
    pub from: String,
    pub to: String,
}

impl QuiverDoc {
    pub fn build(&self) -> Result<Quiver> {
        let arrows: Vec<(&str, &str, &str)> =
            self.arrows.iter().map(|a| (a.name.as_str(), a.from.as_str(), a.to.as_str())).collect();
        let vertices: Vec<&str> = self.vertices.iter().map(String::as_str).collect();
        Quiver::new(&vertices, &arrows)
    }
}

impl From<&Quiver> for QuiverDoc {
    fn from(q: &Quiver) -> QuiverDoc {
        QuiverDoc {
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|a| ArrowDoc {
                    name: a.name.clone(),
                    from: q.vertices[a.source].clone(),
                    to: q.vertices[a.target].clone(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronecker_paths() {
        let q = Quiver::kronecker();
        let names: Vec<Vec<usize>> = q.paths(0, 1).iter().map(|p| p.arrows.clone()).collect();
        assert_eq!(names, vec![vec![0], vec![1]]);
        assert_eq!(q.paths(0, 0).len(), 1);
        assert!(q.paths(1, 0).is_empty());
    }

    #[test]
    fn cycles_rejected() {
        let r = Quiver::new(&["a", "b"], &[("f", "a", "b"), ("g", "b", "a")]);
        assert!(matches!(r, Err(Error::InvalidQuiver(_))));
        let r = Quiver::new(&["a"], &[("l", "a", "a")]);
        assert!(matches!(r, Err(Error::InvalidQuiver(_))));
    }

    #[test]
    fn bad_names_rejected() {
        assert!(Quiver::new(&["a", "a"], &[]).is_err());
        assert!(Quiver::new(&["a", "b"], &[("f", "a", "c")]).is_err());
        assert!(Quiver::new(&["a", "b"], &[("f", "a", "b"), ("f", "a", "b")]).is_err());
    }

    #[test]
    fn path_order_is_length_then_names() {
        let q = Quiver::new(&["1", "2", "3"], &[("b", "1", "2"), ("a", "1", "2"), ("c", "2", "3"), ("d", "1", "3")])
            .unwrap();
        let shown: Vec<String> = q
            .paths(0, 2)
            .iter()
            .map(|p| p.arrows.iter().map(|&a| q.arrow(a).name.clone()).collect::<Vec<_>>().join(""))
            .collect();
        assert_eq!(shown, ["d", "ac", "bc"]);
        assert_eq!(q.path_index(0, &[1, 2]), Some(1));
    }

    #[test]
    fn opposite_reverses() {
        let q = Quiver::kronecker().opposite();
        assert_eq!(q.paths(1, 0).len(), 2);
        assert_eq!(q.opposite(), Quiver::kronecker());
    }
}
