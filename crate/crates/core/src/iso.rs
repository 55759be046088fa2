//! Semi-graph isomorphism and induced embeddings by backtracking.
//!
//! Both searches map pattern vertices one at a time, preferring vertices with
//! many already-mapped neighbours so that adjacency constraints bite early.
//! Isomorphism additionally filters candidates by colour refinement.

use std::collections::{BTreeMap, HashMap};

use crate::semigraph::{Ends, SemiGraph, VertexId};

pub type VertexMap = BTreeMap<VertexId, VertexId>;

#[derive(Clone, Debug, Default)]
pub struct IsoOptions {
    /// Labelled links must map to links carrying the same label.
    pub labels: bool,
    /// Pairs `(pattern, host)` the mapping is forced to contain.
    pub fixed: Vec<(VertexId, VertexId)>,
}

struct Dense {
    ids: Vec<VertexId>,
    adj: Vec<Vec<usize>>,
    degree: Vec<usize>,
    semi: Vec<usize>,
    semi_labels: Vec<Vec<String>>,
    edge_labels: HashMap<(usize, usize), Vec<String>>,
}

impl Dense {
    fn new(g: &SemiGraph) -> Dense {
        let ids: Vec<VertexId> = g.vertices().collect();
        let pos: HashMap<VertexId, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let n = ids.len();
        let mut d = Dense {
            ids,
            adj: vec![Vec::new(); n],
            degree: vec![0; n],
            semi: vec![0; n],
            semi_labels: vec![Vec::new(); n],
            edge_labels: HashMap::new(),
        };
        for (_, link) in g.links() {
            let label = link.label.clone().unwrap_or_default();
            match link.ends {
                Ends::Edge(a, b) => {
                    let (a, b) = (pos[&a], pos[&b]);
                    d.adj[a].push(b);
                    d.adj[b].push(a);
                    d.degree[a] += 1;
                    d.degree[b] += 1;
                    d.edge_labels.entry((a.min(b), a.max(b))).or_default().push(label);
                }
                Ends::Semi(a) => {
                    let a = pos[&a];
                    d.semi[a] += 1;
                    d.degree[a] += 1;
                    d.semi_labels[a].push(label);
                }
            }
        }
        for l in d.semi_labels.iter_mut() {
            l.sort();
        }
        for l in d.edge_labels.values_mut() {
            l.sort();
        }
        d
    }

    fn n(&self) -> usize {
        self.ids.len()
    }

    fn mult(&self, a: usize, b: usize) -> usize {
        self.adj[a].iter().filter(|&&x| x == b).count()
    }

    fn labels_between(&self, a: usize, b: usize) -> Option<&Vec<String>> {
        self.edge_labels.get(&(a.min(b), a.max(b)))
    }
}

/// Joint colour refinement of two graphs. Returns per-vertex colours that are
/// comparable across the two graphs.
fn refine(p: &Dense, h: &Dense, labels: bool, fixed: &[(usize, usize)]) -> (Vec<usize>, Vec<usize>) {
    let initial = |d: &Dense, i: usize, side: usize| -> (usize, usize, Vec<String>, usize) {
        let tag = fixed
            .iter()
            .position(|&(a, b)| if side == 0 { a == i } else { b == i })
            .map_or(0, |k| k + 1);
        let lab = if labels { d.semi_labels[i].clone() } else { Vec::new() };
        (d.degree[i], d.semi[i], lab, tag)
    };
    let mut table: HashMap<(usize, usize, Vec<String>, usize), usize> = HashMap::new();
    let mut cp = Vec::with_capacity(p.n());
    let mut ch = Vec::with_capacity(h.n());
    for i in 0..p.n() {
        let k = table.len();
        cp.push(*table.entry(initial(p, i, 0)).or_insert(k));
    }
    for i in 0..h.n() {
        let k = table.len();
        ch.push(*table.entry(initial(h, i, 1)).or_insert(k));
    }
    let mut classes = table.len();
    loop {
        let mut table: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let step = |d: &Dense, c: &[usize], table: &mut HashMap<(usize, Vec<usize>), usize>| {
            (0..d.n())
                .map(|i| {
                    let mut nb: Vec<usize> = d.adj[i].iter().map(|&j| c[j]).collect();
                    nb.sort_unstable();
                    let k = table.len();
                    *table.entry((c[i], nb)).or_insert(k)
                })
                .collect::<Vec<_>>()
        };
        let np = step(p, &cp, &mut table);
        let nh = step(h, &ch, &mut table);
        cp = np;
        ch = nh;
        if table.len() == classes {
            return (cp, ch);
        }
        classes = table.len();
    }
}

struct Matcher<'a> {
    p: &'a Dense,
    h: &'a Dense,
    labels: bool,
    iso: bool,
    pcol: Vec<usize>,
    hcol: Vec<usize>,
    order: Vec<usize>,
    fwd: Vec<usize>,
    rev: Vec<usize>,
    forced: HashMap<usize, usize>,
}

const UNSET: usize = usize::MAX;

impl<'a> Matcher<'a> {
    fn plan(&mut self) {
        let n = self.p.n();
        let mut class_size: HashMap<usize, usize> = HashMap::new();
        for &c in &self.pcol {
            *class_size.entry(c).or_default() += 1;
        }
        let mut placed = vec![false; n];
        let mut mapped_nb = vec![0usize; n];
        let mut fixed: Vec<usize> = self.forced.keys().copied().collect();
        fixed.sort_unstable();
        for _ in 0..n {
            let next = fixed
                .iter()
                .copied()
                .find(|&v| !placed[v])
                .or_else(|| {
                    (0..n).filter(|&v| !placed[v]).min_by_key(|&v| {
                        (
                            std::cmp::Reverse(mapped_nb[v]),
                            class_size[&self.pcol[v]],
                            std::cmp::Reverse(self.p.degree[v]),
                            v,
                        )
                    })
                })
                .expect("unplaced vertex remains");
            placed[next] = true;
            for &w in &self.p.adj[next] {
                mapped_nb[w] += 1;
            }
            self.order.push(next);
        }
    }

    fn compatible(&self, pv: usize, hv: usize) -> bool {
        if self.rev[hv] != UNSET || self.p.degree[pv] != self.h.degree[hv] {
            return false;
        }
        if let Some(&f) = self.forced.get(&pv) {
            if f != hv {
                return false;
            }
        }
        if self.iso {
            if self.p.semi[pv] != self.h.semi[hv] || self.pcol[pv] != self.hcol[hv] {
                return false;
            }
            if self.labels && self.p.semi_labels[pv] != self.h.semi_labels[hv] {
                return false;
            }
        }
        for &q in &self.p.adj[pv] {
            let fq = self.fwd[q];
            if fq == UNSET {
                continue;
            }
            if self.p.mult(pv, q) != self.h.mult(hv, fq) {
                return false;
            }
            if self.labels && self.p.labels_between(pv, q) != self.h.labels_between(hv, fq) {
                return false;
            }
        }
        for &k in &self.h.adj[hv] {
            let q = self.rev[k];
            if q != UNSET && self.p.mult(pv, q) != self.h.mult(hv, k) {
                return false;
            }
        }
        true
    }

    fn candidates(&self, pv: usize) -> Vec<usize> {
        let anchor = self.p.adj[pv].iter().find(|&&q| self.fwd[q] != UNSET);
        let mut c: Vec<usize> = match anchor {
            Some(&q) => self.h.adj[self.fwd[q]].clone(),
            None => (0..self.h.n()).collect(),
        };
        c.sort_unstable();
        c.dedup();
        c.retain(|&hv| self.compatible(pv, hv));
        c
    }

    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.fwd);
        }
        let pv = self.order[depth];
        for hv in self.candidates(pv) {
            self.fwd[pv] = hv;
            self.rev[hv] = pv;
            let stop = self.run(depth + 1, visit);
            self.fwd[pv] = UNSET;
            self.rev[hv] = UNSET;
            if stop {
                return true;
            }
        }
        false
    }
}

fn to_map(p: &Dense, h: &Dense, fwd: &[usize]) -> VertexMap {
    fwd.iter()
        .enumerate()
        .map(|(i, &j)| (p.ids[i], h.ids[j]))
        .collect()
}

fn matcher<'a>(p: &'a Dense, h: &'a Dense, opts: &IsoOptions, iso: bool) -> Option<Matcher<'a>> {
    let ppos: HashMap<VertexId, usize> = p.ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let hpos: HashMap<VertexId, usize> = h.ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut forced = HashMap::new();
    let mut fixed = Vec::new();
    for (a, b) in &opts.fixed {
        let (&i, &j) = (ppos.get(a)?, hpos.get(b)?);
        forced.insert(i, j);
        fixed.push((i, j));
    }
    let (pcol, hcol) = if iso {
        refine(p, h, opts.labels, &fixed)
    } else {
        (vec![0; p.n()], vec![0; h.n()])
    };
    if iso {
        let mut a = pcol.clone();
        let mut b = hcol.clone();
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return None;
        }
    }
    let mut m = Matcher {
        p,
        h,
        labels: opts.labels,
        iso,
        pcol,
        hcol,
        order: Vec::with_capacity(p.n()),
        fwd: vec![UNSET; p.n()],
        rev: vec![UNSET; h.n()],
        forced,
    };
    m.plan();
    Some(m)
}

fn link_signature(g: &SemiGraph, labels: bool) -> (usize, usize, Vec<String>) {
    let mut labs: Vec<String> = if labels {
        g.links().filter_map(|(_, l)| l.label.clone()).collect()
    } else {
        Vec::new()
    };
    labs.sort();
    (g.edge_count(), g.semi_edge_count(), labs)
}

/// An isomorphism `g1 -> g2` mapping edges to edges and semi-edges to
/// semi-edges, or `None`.
pub fn isomorphism(g1: &SemiGraph, g2: &SemiGraph, opts: &IsoOptions) -> Option<VertexMap> {
    if g1.order() != g2.order() || link_signature(g1, opts.labels) != link_signature(g2, opts.labels) {
        return None;
    }
    let (p, h) = (Dense::new(g1), Dense::new(g2));
    let mut m = matcher(&p, &h, opts, true)?;
    let mut found = None;
    m.run(0, &mut |fwd| {
        found = Some(to_map(&p, &h, fwd));
        true
    });
    found
}

pub fn is_isomorphic(g1: &SemiGraph, g2: &SemiGraph) -> Option<VertexMap> {
    isomorphism(g1, g2, &IsoOptions::default())
}

/// Calls `visit` for every injective map `pattern -> host` under which the
/// sub-semi-graph of `host` induced by the image is isomorphic to `pattern`
/// (pattern semi-edges correspond to host links leaving the image). Stops
/// as soon as `visit` returns `true`; returns whether it stopped.
pub fn induced_embeddings(
    pattern: &SemiGraph,
    host: &SemiGraph,
    visit: &mut dyn FnMut(&VertexMap) -> bool,
) -> bool {
    if pattern.order() > host.order() {
        return false;
    }
    let (p, h) = (Dense::new(pattern), Dense::new(host));
    let Some(mut m) = matcher(&p, &h, &IsoOptions::default(), false) else {
        return false;
    };
    m.run(0, &mut |fwd| visit(&to_map(&p, &h, fwd)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::petersen;

    #[test]
    fn identity_and_relabelled_copies() {
        let p = petersen();
        let map = is_isomorphic(&p, &p).unwrap();
        assert_eq!(map.len(), 10);

        let mut q = SemiGraph::new();
        let emb = q.absorb(&p, false).unwrap();
        assert!(is_isomorphic(&p, &q).is_some());
        let forced = IsoOptions {
            labels: false,
            fixed: vec![(VertexId(0), emb.vertex(VertexId(7)))],
        };
        assert!(isomorphism(&p, &q, &forced).is_some());
    }

    #[test]
    fn semi_edges_map_to_semi_edges() {
        let mut a = SemiGraph::with_vertices(2);
        a.add_edge(VertexId(0), VertexId(1)).unwrap();
        a.add_semi_edge(VertexId(0)).unwrap();
        let mut b = SemiGraph::with_vertices(2);
        b.add_edge(VertexId(0), VertexId(1)).unwrap();
        b.add_edge(VertexId(0), VertexId(1)).unwrap();
        assert!(is_isomorphic(&a, &b).is_none());
    }

    #[test]
    fn labels_constrain_the_mapping() {
        let mut a = SemiGraph::with_vertices(2);
        a.add_edge(VertexId(0), VertexId(1)).unwrap();
        let s = a.add_semi_edge(VertexId(0)).unwrap();
        a.set_label(s, "x").unwrap();
        let mut b = a.clone();
        b.clear_label(s);
        let t = b.add_semi_edge(VertexId(1)).unwrap();
        a.add_semi_edge(VertexId(1)).unwrap();
        b.set_label(t, "x").unwrap();
        let opts = IsoOptions { labels: true, fixed: vec![] };
        let map = isomorphism(&a, &b, &opts).unwrap();
        assert_eq!(map[&VertexId(0)], VertexId(1));
        assert!(isomorphism(&a, &b, &IsoOptions { labels: true, fixed: vec![(VertexId(0), VertexId(0))] }).is_none());
    }

    #[test]
    fn petersen_minus_vertex_embeds_in_petersen() {
        let p = petersen();
        let mut q = p.clone();
        q.remove_vertex(VertexId(4)).unwrap();
        let mut count = 0;
        induced_embeddings(&q, &p, &mut |_| {
            count += 1;
            false
        });
        // Each embedding extends to exactly one automorphism of P.
        assert_eq!(count, 120);
    }
}
