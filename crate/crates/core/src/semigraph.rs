//! Cubic semi-graphs: vertices plus a multiset of edges and semi-edges.
//!
//! Links carry stable [`LinkId`]s which survive surgery on other links, and an
//! optional label that is unique within one semi-graph. Surgery mutates in
//! place; clone first when the original is still needed.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinkId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for LinkId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Endpoints of a link. Edges always join two distinct vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ends {
    Edge(VertexId, VertexId),
    Semi(VertexId),
}

impl Ends {
    pub fn is_semi(&self) -> bool {
        matches!(self, Ends::Semi(_))
    }

    pub fn touches(&self, v: VertexId) -> bool {
        match *self {
            Ends::Edge(a, b) => a == v || b == v,
            Ends::Semi(a) => a == v,
        }
    }

    /// Endpoints in ascending order; a semi-edge has one.
    pub fn sorted(&self) -> (VertexId, Option<VertexId>) {
        match *self {
            Ends::Edge(a, b) if a <= b => (a, Some(b)),
            Ends::Edge(a, b) => (b, Some(a)),
            Ends::Semi(a) => (a, None),
        }
    }

    /// The endpoint opposite `v` for an edge, `None` for a semi-edge.
    pub fn other(&self, v: VertexId) -> Option<VertexId> {
        match *self {
            Ends::Edge(a, b) if a == v => Some(b),
            Ends::Edge(a, b) if b == v => Some(a),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    pub ends: Ends,
    pub label: Option<String>,
}

/// Id translation produced when one semi-graph is copied into another.
#[derive(Clone, Debug, Default)]
pub struct Embedding {
    pub vertices: BTreeMap<VertexId, VertexId>,
    pub links: BTreeMap<LinkId, LinkId>,
}

impl Embedding {
    pub fn vertex(&self, v: VertexId) -> VertexId {
        self.vertices[&v]
    }

    pub fn link(&self, l: LinkId) -> LinkId {
        self.links[&l]
    }
}

/// An edge-cut `∂(X)`: all links with exactly one endvertex in `X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutSpec {
    pub side: BTreeSet<VertexId>,
    pub boundary: BTreeSet<LinkId>,
}

/// Second argument of [`SemiGraph::distance`].
#[derive(Clone, Copy, Debug)]
pub enum Target {
    Vertex(VertexId),
    Edge(LinkId),
}

#[derive(Clone, Debug, Default)]
pub struct SemiGraph {
    vertices: BTreeSet<VertexId>,
    links: BTreeMap<LinkId, Link>,
    labels: BTreeMap<String, LinkId>,
    next_vertex: u32,
    next_link: u32,
}

impl SemiGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// A semi-graph with `n` isolated vertices numbered `0..n`.
    pub fn with_vertices(n: usize) -> Self {
        let mut g = Self::new();
        for _ in 0..n {
            g.add_vertex();
        }
        g
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let v = VertexId(self.next_vertex);
        self.next_vertex += 1;
        self.vertices.insert(v);
        v
    }

    /// Inserts a vertex with an explicit id (used when importing files).
    pub fn insert_vertex(&mut self, v: VertexId) -> Result<()> {
        if !self.vertices.insert(v) {
            return Err(invalid(format!("duplicate vertex {v}")));
        }
        self.next_vertex = self.next_vertex.max(v.0 + 1);
        Ok(())
    }

    fn fresh_link(&mut self, ends: Ends) -> LinkId {
        let id = LinkId(self.next_link);
        self.next_link += 1;
        self.links.insert(id, Link { ends, label: None });
        id
    }

    fn require_vertex(&self, v: VertexId) -> Result<()> {
        if self.vertices.contains(&v) {
            Ok(())
        } else {
            Err(Error::NoSuchVertex(v))
        }
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<LinkId> {
        self.require_vertex(u)?;
        self.require_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        Ok(self.fresh_link(Ends::Edge(u, v)))
    }

    pub fn add_semi_edge(&mut self, u: VertexId) -> Result<LinkId> {
        self.require_vertex(u)?;
        Ok(self.fresh_link(Ends::Semi(u)))
    }

    pub fn set_label(&mut self, l: LinkId, label: impl Into<String>) -> Result<()> {
        let label = label.into();
        if !self.links.contains_key(&l) {
            return Err(Error::NoSuchLink(l));
        }
        match self.labels.get(&label) {
            Some(&owner) if owner != l => return Err(Error::DuplicateLabel(label)),
            _ => {}
        }
        let link = self.links.get_mut(&l).expect("checked above");
        if let Some(old) = link.label.take() {
            self.labels.remove(&old);
        }
        link.label = Some(label.clone());
        self.labels.insert(label, l);
        Ok(())
    }

    pub fn clear_label(&mut self, l: LinkId) {
        if let Some(link) = self.links.get_mut(&l) {
            if let Some(old) = link.label.take() {
                self.labels.remove(&old);
            }
        }
    }

    pub fn clear_all_labels(&mut self) {
        for link in self.links.values_mut() {
            link.label = None;
        }
        self.labels.clear();
    }

    pub fn label(&self, l: LinkId) -> Option<&str> {
        self.links.get(&l).and_then(|k| k.label.as_deref())
    }

    pub fn find_label(&self, label: &str) -> Option<LinkId> {
        self.labels.get(label).copied()
    }

    pub fn labeled(&self, label: &str) -> Result<LinkId> {
        self.find_label(label)
            .ok_or_else(|| Error::NoSuchLabel(label.to_string()))
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_set(&self) -> &BTreeSet<VertexId> {
        &self.vertices
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn links(&self) -> impl Iterator<Item = (LinkId, &Link)> + '_ {
        self.links.iter().map(|(&id, l)| (id, l))
    }

    pub fn link_ids(&self) -> impl Iterator<Item = LinkId> + '_ {
        self.links.keys().copied()
    }

    pub fn link(&self, l: LinkId) -> Result<&Link> {
        self.links.get(&l).ok_or(Error::NoSuchLink(l))
    }

    pub fn ends(&self, l: LinkId) -> Result<Ends> {
        Ok(self.link(l)?.ends)
    }

    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn link_count(&self) -> usize {
        self.links.len()
    }

    pub fn edge_count(&self) -> usize {
        self.links.values().filter(|l| !l.ends.is_semi()).count()
    }

    pub fn semi_edge_count(&self) -> usize {
        self.links.values().filter(|l| l.ends.is_semi()).count()
    }

    pub fn semi_edges(&self) -> Vec<LinkId> {
        self.links
            .iter()
            .filter(|(_, l)| l.ends.is_semi())
            .map(|(&id, _)| id)
            .collect()
    }

    /// A semi-graph without semi-edges is a graph.
    pub fn is_graph(&self) -> bool {
        self.semi_edge_count() == 0
    }

    pub fn incident(&self, v: VertexId) -> Vec<LinkId> {
        self.links
            .iter()
            .filter(|(_, l)| l.ends.touches(v))
            .map(|(&id, _)| id)
            .collect()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    /// Neighbours of `v` with multiplicity; semi-edges contribute nothing.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.links
            .values()
            .filter_map(|l| l.ends.other(v))
            .collect()
    }

    pub fn is_cubic(&self) -> bool {
        let mut deg: HashMap<VertexId, usize> = HashMap::new();
        for l in self.links.values() {
            match l.ends {
                Ends::Edge(a, b) => {
                    *deg.entry(a).or_default() += 1;
                    *deg.entry(b).or_default() += 1;
                }
                Ends::Semi(a) => *deg.entry(a).or_default() += 1,
            }
        }
        self.vertices
            .iter()
            .all(|v| deg.get(v).copied().unwrap_or(0) == 3)
    }

    /// No parallel edges (self-loops are unrepresentable).
    pub fn is_simple(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.links
            .values()
            .filter(|l| !l.ends.is_semi())
            .all(|l| seen.insert(l.ends.sorted()))
    }

    /// Replaces the edge `uv` by the semi-edges `(u)` and `(v)`.
    pub fn trim(&mut self, e: LinkId) -> Result<(LinkId, LinkId)> {
        self.trim_labeled(e, None)
    }

    /// [`trim`](Self::trim), labelling the two new semi-edges.
    pub fn trim_labeled(
        &mut self,
        e: LinkId,
        labels: Option<(&str, &str)>,
    ) -> Result<(LinkId, LinkId)> {
        let (u, v) = match self.ends(e)? {
            Ends::Edge(u, v) => (u, v),
            Ends::Semi(_) => return Err(Error::NotAnEdge(e)),
        };
        if let Some((a, b)) = labels {
            for lab in [a, b] {
                if self.labels.get(lab).is_some_and(|&o| o != e) {
                    return Err(Error::DuplicateLabel(lab.to_string()));
                }
            }
        }
        self.remove_link(e)?;
        let su = self.fresh_link(Ends::Semi(u));
        let sv = self.fresh_link(Ends::Semi(v));
        if let Some((a, b)) = labels {
            self.set_label(su, a)?;
            self.set_label(sv, b)?;
        }
        Ok((su, sv))
    }

    /// Fuses the semi-edges `(u)` and `(v)` into a new edge `uv`.
    pub fn merge(&mut self, s1: LinkId, s2: LinkId) -> Result<LinkId> {
        if s1 == s2 {
            return Err(invalid("cannot merge a semi-edge with itself"));
        }
        let u = self.semi_end(s1)?;
        let v = self.semi_end(s2)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        self.remove_link(s1)?;
        self.remove_link(s2)?;
        Ok(self.fresh_link(Ends::Edge(u, v)))
    }

    fn semi_end(&self, s: LinkId) -> Result<VertexId> {
        match self.ends(s)? {
            Ends::Semi(u) => Ok(u),
            Ends::Edge(..) => Err(Error::NotASemiEdge(s)),
        }
    }

    /// Adds a vertex `w`, turns every listed semi-edge `(u)` into the edge
    /// `uw` (keeping its id and label) and pads `w` to degree three with
    /// fresh semi-edges, which are returned.
    pub fn attach_new_vertex(&mut self, semis: &[LinkId]) -> Result<(VertexId, Vec<LinkId>)> {
        if semis.is_empty() || semis.len() > 3 {
            return Err(invalid(format!(
                "a new vertex takes 1 to 3 semi-edges, got {}",
                semis.len()
            )));
        }
        let distinct: BTreeSet<_> = semis.iter().collect();
        if distinct.len() != semis.len() {
            return Err(invalid("repeated semi-edge in attach list"));
        }
        let ends: Vec<VertexId> = semis
            .iter()
            .map(|&s| self.semi_end(s))
            .collect::<Result<_>>()?;
        let w = self.add_vertex();
        for (&s, &u) in semis.iter().zip(&ends) {
            self.links.get_mut(&s).expect("validated").ends = Ends::Edge(u, w);
        }
        let fresh = (semis.len()..3)
            .map(|_| self.fresh_link(Ends::Semi(w)))
            .collect();
        Ok((w, fresh))
    }

    /// Deletes `v`. Every edge `vu` becomes the semi-edge `(u)` with the same
    /// id and label; semi-edges at `v` disappear. Returns the new stubs.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<Vec<LinkId>> {
        self.require_vertex(v)?;
        let mut stubs = Vec::new();
        let mut doomed = Vec::new();
        for (&id, link) in self.links.iter_mut() {
            match link.ends {
                Ends::Semi(a) if a == v => doomed.push(id),
                Ends::Edge(a, b) if a == v || b == v => {
                    let other = if a == v { b } else { a };
                    link.ends = Ends::Semi(other);
                    stubs.push(id);
                }
                _ => {}
            }
        }
        for id in doomed {
            self.remove_link(id)?;
        }
        self.vertices.remove(&v);
        Ok(stubs)
    }

    pub fn remove_link(&mut self, l: LinkId) -> Result<Link> {
        let link = self.links.remove(&l).ok_or(Error::NoSuchLink(l))?;
        if let Some(lab) = &link.label {
            self.labels.remove(lab);
        }
        Ok(link)
    }

    /// Copies `other` in with fresh ids. Labels are copied only when
    /// `keep_labels` is set.
    pub fn absorb(&mut self, other: &SemiGraph, keep_labels: bool) -> Result<Embedding> {
        let mut emb = Embedding::default();
        for v in other.vertices() {
            emb.vertices.insert(v, self.add_vertex());
        }
        for (id, link) in other.links() {
            let ends = match link.ends {
                Ends::Edge(a, b) => Ends::Edge(emb.vertex(a), emb.vertex(b)),
                Ends::Semi(a) => Ends::Semi(emb.vertex(a)),
            };
            let new = self.fresh_link(ends);
            if keep_labels {
                if let Some(lab) = &link.label {
                    self.set_label(new, lab.clone())?;
                }
            }
            emb.links.insert(id, new);
        }
        Ok(emb)
    }

    /// The sub-semi-graph on `keep`: every other vertex is removed, so links
    /// leaving `keep` become semi-edges.
    pub fn induced(&self, keep: &BTreeSet<VertexId>) -> Result<SemiGraph> {
        let mut g = self.clone();
        for v in self.vertices() {
            if !keep.contains(&v) {
                g.remove_vertex(v)?;
            }
        }
        for v in keep {
            self.require_vertex(*v)?;
        }
        Ok(g)
    }

    pub fn boundary(&self, side: &BTreeSet<VertexId>) -> Result<CutSpec> {
        for v in side {
            self.require_vertex(*v)?;
        }
        let boundary = self
            .links
            .iter()
            .filter(|(_, l)| match l.ends {
                Ends::Edge(a, b) => side.contains(&a) != side.contains(&b),
                Ends::Semi(a) => side.contains(&a),
            })
            .map(|(&id, _)| id)
            .collect();
        Ok(CutSpec {
            side: side.clone(),
            boundary,
        })
    }

    /// Shortest-path distance (in edges, never through semi-edges). A vertex
    /// to edge distance is the minimum over the edge's endpoints. `None`
    /// means unreachable.
    pub fn distance(&self, a: VertexId, b: Target) -> Result<Option<usize>> {
        self.require_vertex(a)?;
        let frame = Frame::new(self);
        let dist = frame.bfs(frame.vpos[&a]);
        let at = |v: VertexId| -> Option<usize> {
            let d = dist[frame.vpos[&v]];
            (d != usize::MAX).then_some(d)
        };
        match b {
            Target::Vertex(v) => {
                self.require_vertex(v)?;
                Ok(at(v))
            }
            Target::Edge(e) => match self.ends(e)? {
                Ends::Edge(x, y) => Ok(match (at(x), at(y)) {
                    (Some(p), Some(q)) => Some(p.min(q)),
                    (p, q) => p.or(q),
                }),
                Ends::Semi(_) => Err(Error::NotAnEdge(e)),
            },
        }
    }

    /// Connected components; semi-edges connect nothing.
    pub fn components(&self) -> Vec<BTreeSet<VertexId>> {
        let frame = Frame::new(self);
        frame
            .components()
            .into_iter()
            .map(|c| c.into_iter().map(|i| frame.vids[i]).collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Whether the edges induced by `side` contain a cycle.
    pub fn contains_cycle(&self, side: &BTreeSet<VertexId>) -> bool {
        let frame = Frame::new(self);
        let mask: Vec<bool> = frame.vids.iter().map(|v| side.contains(v)).collect();
        frame.has_cycle_within(&mask)
    }

    /// Length of a shortest cycle, `None` for a forest. Parallel edges form
    /// cycles of length two.
    pub fn girth(&self) -> Option<usize> {
        Frame::new(self).girth()
    }

    /// Handshake identity: degree sum = 2·edges + semi-edges.
    pub fn degree_sum(&self) -> usize {
        self.vertices.iter().map(|&v| self.degree(v)).sum()
    }

    /// Same vertex ids and the same multiset of (endpoints, label) pairs.
    /// Link ids are ignored.
    pub fn same_structure(&self, other: &SemiGraph) -> bool {
        type Entry = ((VertexId, Option<VertexId>), Option<String>);
        fn signature(g: &SemiGraph) -> Vec<Entry> {
            let mut s: Vec<_> = g
                .links
                .values()
                .map(|l| (l.ends.sorted(), l.label.clone()))
                .collect();
            s.sort();
            s
        }
        self.vertices == other.vertices && signature(self) == signature(other)
    }

    /// Containment in the weak sense used by the monotonicity arguments:
    /// `sub`'s vertices are ours, each edge of `sub` is one of our edges (same
    /// id and endpoints), degrees never exceed ours, and labels of shared
    /// links agree.
    pub fn contains(&self, sub: &SemiGraph) -> bool {
        if !sub.vertices.is_subset(&self.vertices) {
            return false;
        }
        for (id, link) in sub.links() {
            match (link.ends, self.links.get(&id)) {
                (Ends::Edge(..), Some(mine)) => {
                    if mine.ends.sorted() != link.ends.sorted() || mine.label != link.label {
                        return false;
                    }
                }
                (Ends::Edge(..), None) => return false,
                (Ends::Semi(u), Some(mine)) => {
                    if !mine.ends.touches(u) || mine.label != link.label {
                        return false;
                    }
                }
                (Ends::Semi(_), None) => {}
            }
        }
        sub.vertices.iter().all(|&v| sub.degree(v) <= self.degree(v))
    }

    /// Canonical link order used for serialization: sorted endpoints, then
    /// label, then id (insertion order).
    pub fn canonical_link_order(&self) -> Vec<LinkId> {
        let mut ids: Vec<LinkId> = self.links.keys().copied().collect();
        ids.sort_by(|a, b| {
            let la = &self.links[a];
            let lb = &self.links[b];
            (la.ends.sorted(), &la.label, a).cmp(&(lb.ends.sorted(), &lb.label, b))
        });
        ids
    }
}

pub(crate) const NONE: usize = usize::MAX;

/// Dense index over a semi-graph for the algorithms. Vertices and links are
/// numbered in ascending id order.
#[derive(Clone, Debug)]
pub struct Frame {
    pub(crate) vids: Vec<VertexId>,
    pub(crate) vpos: HashMap<VertexId, usize>,
    pub(crate) lids: Vec<LinkId>,
    pub(crate) lpos: HashMap<LinkId, usize>,
    /// `[u, v]` for an edge, `[u, NONE]` for a semi-edge.
    pub(crate) ends: Vec<[usize; 2]>,
    /// Incident link indices per vertex; an edge is listed at both ends.
    pub(crate) inc: Vec<Vec<usize>>,
}

impl Frame {
    pub fn new(g: &SemiGraph) -> Self {
        let vids: Vec<VertexId> = g.vertices().collect();
        let vpos: HashMap<VertexId, usize> =
            vids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut lids = Vec::with_capacity(g.link_count());
        let mut ends = Vec::with_capacity(g.link_count());
        let mut inc = vec![Vec::new(); vids.len()];
        for (id, link) in g.links() {
            let li = lids.len();
            lids.push(id);
            match link.ends {
                Ends::Edge(a, b) => {
                    let (a, b) = (vpos[&a], vpos[&b]);
                    ends.push([a, b]);
                    inc[a].push(li);
                    inc[b].push(li);
                }
                Ends::Semi(a) => {
                    let a = vpos[&a];
                    ends.push([a, NONE]);
                    inc[a].push(li);
                }
            }
        }
        let lpos = lids.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        Frame {
            vids,
            vpos,
            lids,
            lpos,
            ends,
            inc,
        }
    }

    pub fn n(&self) -> usize {
        self.vids.len()
    }

    pub fn m(&self) -> usize {
        self.lids.len()
    }

    pub(crate) fn is_semi(&self, l: usize) -> bool {
        self.ends[l][1] == NONE
    }

    /// Opposite endpoint of link `l` seen from `u`; `NONE` for semi-edges.
    pub(crate) fn other(&self, l: usize, u: usize) -> usize {
        let [a, b] = self.ends[l];
        if b == NONE {
            NONE
        } else if a == u {
            b
        } else {
            a
        }
    }

    pub(crate) fn bfs(&self, src: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::new();
        dist[src] = 0;
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            for &l in &self.inc[u] {
                let w = self.other(l, u);
                if w != NONE && dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub(crate) fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &l in &self.inc[u] {
                    let w = self.other(l, u);
                    if w != NONE && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Whether the edges with both ends inside `mask` contain a cycle.
    pub(crate) fn has_cycle_within(&self, mask: &[bool]) -> bool {
        let mut parent: Vec<usize> = (0..self.n()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for [a, b] in &self.ends {
            if *b == NONE || !mask[*a] || !mask[*b] {
                continue;
            }
            let (ra, rb) = (find(&mut parent, *a), find(&mut parent, *b));
            if ra == rb {
                return true;
            }
            parent[ra] = rb;
        }
        false
    }

    pub(crate) fn girth(&self) -> Option<usize> {
        let mut best = usize::MAX;
        let mut dist = vec![usize::MAX; self.n()];
        let mut via = vec![NONE; self.n()];
        for root in 0..self.n() {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            let mut queue = VecDeque::new();
            dist[root] = 0;
            via[root] = NONE;
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                if 2 * dist[u] + 1 >= best {
                    break;
                }
                for &l in &self.inc[u] {
                    if l == via[u] {
                        continue;
                    }
                    let w = self.other(l, u);
                    if w == NONE {
                        continue;
                    }
                    if dist[w] == usize::MAX {
                        dist[w] = dist[u] + 1;
                        via[w] = l;
                        queue.push_back(w);
                    } else {
                        best = best.min(dist[u] + dist[w] + 1);
                    }
                }
            }
        }
        (best != usize::MAX).then_some(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::petersen;

    fn path_graph(n: usize) -> SemiGraph {
        let mut g = SemiGraph::with_vertices(n);
        for i in 1..n {
            g.add_edge(VertexId(i as u32 - 1), VertexId(i as u32)).unwrap();
        }
        g
    }

    #[test]
    fn trim_keeps_degrees_and_reports_new_ids() {
        let mut g = SemiGraph::with_vertices(2);
        let e = g.add_edge(VertexId(0), VertexId(1)).unwrap();
        let (a, _b) = g.trim(e).unwrap();
        assert_ne!(a, e);
        assert_eq!(g.degree(VertexId(0)), 1);
        assert_eq!(g.degree(VertexId(1)), 1);
        assert_eq!(g.semi_edge_count(), 2);
        assert!(matches!(g.trim(a), Err(Error::NotAnEdge(_))));
        assert!(matches!(g.trim(e), Err(Error::NoSuchLink(_))));
    }

    #[test]
    fn merge_rejects_loops_and_edges() {
        let mut g = SemiGraph::with_vertices(2);
        let s0 = g.add_semi_edge(VertexId(0)).unwrap();
        let s0b = g.add_semi_edge(VertexId(0)).unwrap();
        let s1 = g.add_semi_edge(VertexId(1)).unwrap();
        assert!(matches!(g.merge(s0, s0b), Err(Error::SelfLoop(_))));
        let e = g.merge(s0, s1).unwrap();
        assert_eq!(g.ends(e).unwrap().sorted(), (VertexId(0), Some(VertexId(1))));
        assert!(matches!(g.merge(e, s0b), Err(Error::NotASemiEdge(_))));
    }

    #[test]
    fn parallel_edges_are_allowed() {
        let mut g = SemiGraph::with_vertices(2);
        g.add_edge(VertexId(0), VertexId(1)).unwrap();
        g.add_edge(VertexId(0), VertexId(1)).unwrap();
        assert!(!g.is_simple());
        assert_eq!(g.girth(), Some(2));
    }

    #[test]
    fn attach_pads_to_degree_three() {
        let mut g = SemiGraph::with_vertices(1);
        let s = g.add_semi_edge(VertexId(0)).unwrap();
        let (w, fresh) = g.attach_new_vertex(&[s]).unwrap();
        assert_eq!(fresh.len(), 2);
        assert_eq!(g.degree(w), 3);
        assert_eq!(g.ends(s).unwrap().sorted().1, Some(w));

        let mut h = SemiGraph::with_vertices(3);
        let stubs: Vec<_> = (0..3).map(|i| h.add_semi_edge(VertexId(i)).unwrap()).collect();
        let before = h.semi_edge_count();
        let (_, fresh) = h.attach_new_vertex(&stubs).unwrap();
        assert!(fresh.is_empty());
        assert_eq!(h.semi_edge_count(), before - 3);

        assert!(h.attach_new_vertex(&[]).is_err());
        let e = h.link_ids().next().unwrap();
        assert!(matches!(h.attach_new_vertex(&[e]), Err(Error::NotASemiEdge(_))));
    }

    #[test]
    fn vertex_removal_leaves_stubs() {
        let p = petersen();
        let mut g = p.clone();
        g.remove_vertex(VertexId(0)).unwrap();
        assert_eq!(g.order(), 9);
        assert_eq!(g.semi_edge_count(), 3);
        assert!(matches!(g.remove_vertex(VertexId(0)), Err(Error::NoSuchVertex(_))));

        let mut h = SemiGraph::with_vertices(1);
        for _ in 0..3 {
            h.add_semi_edge(VertexId(0)).unwrap();
        }
        h.remove_vertex(VertexId(0)).unwrap();
        assert_eq!(h.order(), 0);
        assert_eq!(h.link_count(), 0);
    }

    #[test]
    fn distances() {
        let p = petersen();
        for u in p.vertices() {
            assert_eq!(p.distance(u, Target::Vertex(u)).unwrap(), Some(0));
            let nb: BTreeSet<_> = p.neighbors(u).into_iter().collect();
            for v in p.vertices() {
                if v != u && !nb.contains(&v) {
                    assert_eq!(p.distance(u, Target::Vertex(v)).unwrap(), Some(2));
                }
            }
            for l in p.incident(u) {
                assert_eq!(p.distance(u, Target::Edge(l)).unwrap(), Some(0));
            }
        }
        let mut g = SemiGraph::with_vertices(2);
        let s = g.add_semi_edge(VertexId(0)).unwrap();
        assert_eq!(g.distance(VertexId(0), Target::Vertex(VertexId(1))).unwrap(), None);
        assert!(g.distance(VertexId(0), Target::Edge(s)).is_err());
    }

    #[test]
    fn boundary_edge_cases() {
        let p = petersen();
        assert!(p.boundary(&BTreeSet::new()).unwrap().boundary.is_empty());
        let single: BTreeSet<_> = [VertexId(3)].into();
        assert_eq!(p.boundary(&single).unwrap().boundary.len(), 3);
    }

    #[test]
    fn structure_of_trees_and_petersen() {
        let t = path_graph(5);
        assert!(!t.contains_cycle(t.vertex_set()));
        assert_eq!(t.girth(), None);
        let p = petersen();
        assert_eq!(p.girth(), Some(5));
        assert!(p.is_cubic() && p.is_connected() && p.is_simple());
    }

    #[test]
    fn labels_are_unique() {
        let mut g = SemiGraph::with_vertices(2);
        let a = g.add_semi_edge(VertexId(0)).unwrap();
        let b = g.add_semi_edge(VertexId(1)).unwrap();
        g.set_label(a, "x").unwrap();
        assert!(matches!(g.set_label(b, "x"), Err(Error::DuplicateLabel(_))));
        g.set_label(a, "y").unwrap();
        g.set_label(b, "x").unwrap();
        assert_eq!(g.find_label("y"), Some(a));
    }
}
