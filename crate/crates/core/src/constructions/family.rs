use std::collections::{BTreeMap, BTreeSet};

use crate::constructions::wiring::GadgetWiring;
use crate::constructions::{build_m_variant, build_z_variant};
use crate::error::{Error, Result};
use crate::semigraph::{Embedding, Ends, LinkId, SemiGraph, VertexId};

pub fn alpha(i: usize) -> String {
    format!("alpha_{i}")
}
pub fn beta(i: usize) -> String {
    format!("beta_{i}")
}
pub fn gamma(i: usize) -> String {
    format!("gamma_{i}")
}
pub fn delta(i: usize) -> String {
    format!("delta_{i}")
}
pub fn eps(i: usize) -> String {
    format!("eps_{i}")
}

/// The five boundary labels of `Y_i`, in the order alpha..eps.
pub fn boundary_labels(i: usize) -> [String; 5] {
    [alpha(i), beta(i), gamma(i), delta(i), eps(i)]
}

/// What one recursion step added.
#[derive(Clone, Debug)]
pub struct Level {
    pub index: usize,
    /// Link and vertex ids of the two copies of `Z` (and of `M` at level 1)
    /// at the moment they were copied in.
    pub z: Embedding,
    pub zp: Embedding,
    pub m: Option<Embedding>,
    pub vertices: BTreeSet<VertexId>,
    /// The six joining vertices (empty at level 1).
    pub gadget: Vec<VertexId>,
    /// Links created among the joining vertices, including `eps_i`.
    pub free: Vec<LinkId>,
}

#[derive(Clone, Debug)]
pub struct YFamily {
    pub graph: SemiGraph,
    pub wiring: GadgetWiring,
    pub levels: Vec<Level>,
    /// Endvertex of `eps_1` inside `M`: the conflict vertex of the
    /// near-coloring of `Y_1`.
    pub v: VertexId,
    pub z: SemiGraph,
    pub m: SemiGraph,
    /// Merged semi-edges, pointing to the edge that replaced them.
    pub(crate) resolve: BTreeMap<LinkId, LinkId>,
}

pub(crate) fn follow(resolve: &BTreeMap<LinkId, LinkId>, mut l: LinkId) -> LinkId {
    while let Some(&n) = resolve.get(&l) {
        l = n;
    }
    l
}

impl YFamily {
    pub fn i(&self) -> usize {
        self.levels.len()
    }

    /// Current id of a link that may since have been merged away.
    pub fn final_link(&self, l: LinkId) -> LinkId {
        follow(&self.resolve, l)
    }

    pub fn boundary(&self) -> Result<[LinkId; 5]> {
        let labels = boundary_labels(self.i());
        let mut out = [LinkId(0); 5];
        for (slot, label) in out.iter_mut().zip(labels.iter()) {
            *slot = self.graph.labeled(label)?;
        }
        Ok(out)
    }

    /// Links labelled `eps_1 .. eps_i`.
    pub fn eps_links(&self) -> Result<Vec<LinkId>> {
        (1..=self.i()).map(|j| self.graph.labeled(&eps(j))).collect()
    }
}

fn merge_traced(
    g: &mut SemiGraph,
    resolve: &mut BTreeMap<LinkId, LinkId>,
    a: LinkId,
    b: LinkId,
) -> Result<LinkId> {
    let e = g.merge(a, b)?;
    resolve.insert(a, e);
    resolve.insert(b, e);
    Ok(e)
}

fn y1(w: &GadgetWiring) -> Result<YFamily> {
    let m = build_m_variant(w.m_variant);
    let z = build_z_variant(w.m_variant, w.n_variant);
    let mut g = SemiGraph::new();
    let ez = g.absorb(&z, false)?;
    let em = g.absorb(&m, false)?;
    let ezp = g.absorb(&z, false)?;
    let zl = |emb: &Embedding, name: &str| -> Result<LinkId> { Ok(emb.link(z.labeled(name)?)) };
    let ml = |name: &str| -> Result<LinkId> { Ok(em.link(m.labeled(name)?)) };
    let mut resolve = BTreeMap::new();
    merge_traced(&mut g, &mut resolve, zl(&ez, "z3")?, ml("e2")?)?;
    merge_traced(&mut g, &mut resolve, zl(&ez, "z4")?, ml("e1")?)?;
    merge_traced(&mut g, &mut resolve, ml("e4")?, zl(&ezp, "z3")?)?;
    merge_traced(&mut g, &mut resolve, ml("e3")?, zl(&ezp, "z4")?)?;
    merge_traced(&mut g, &mut resolve, zl(&ez, "z5")?, zl(&ezp, "z5")?)?;
    let e5 = ml("e5")?;
    for (l, name) in [
        (zl(&ez, "z1")?, alpha(1)),
        (zl(&ez, "z2")?, beta(1)),
        (zl(&ezp, "z1")?, gamma(1)),
        (zl(&ezp, "z2")?, delta(1)),
        (e5, eps(1)),
    ] {
        g.set_label(l, name)?;
    }
    let v = match g.ends(e5)? {
        Ends::Semi(v) => v,
        _ => return Err(Error::Construction("eps_1 must be a semi-edge".into())),
    };
    let level = Level {
        index: 1,
        vertices: g.vertex_set().clone(),
        z: ez,
        zp: ezp,
        m: Some(em),
        gadget: Vec::new(),
        free: Vec::new(),
    };
    Ok(YFamily {
        graph: g,
        wiring: *w,
        levels: vec![level],
        v,
        z,
        m,
        resolve,
    })
}

fn extend(prev: &YFamily) -> Result<YFamily> {
    let w = &prev.wiring;
    let i = prev.i() + 1;
    let mut y = prev.clone();
    let z = &prev.z;
    let before: BTreeSet<VertexId> = y.graph.vertex_set().clone();
    let ez = y.graph.absorb(z, false)?;
    let ezp = y.graph.absorb(z, false)?;
    let zl = |emb: &Embedding, name: &str| -> Result<LinkId> { Ok(emb.link(z.labeled(name)?)) };
    let [a0, b0, c0, d0, e0] = prev.boundary()?;
    let mut slots: Vec<Vec<LinkId>> = vec![
        vec![zl(&ez, "z3")?, c0],
        vec![zl(&ez, "z4")?, a0],
        vec![zl(&ezp, "z3")?, d0],
        vec![zl(&ez, "z5")?, zl(&ezp, "z5")?],
        vec![zl(&ezp, "z4")?],
        vec![b0],
    ];
    slots[w.eps_in as usize].push(e0);
    let mut gadget = Vec::with_capacity(6);
    let mut fresh: Vec<Vec<LinkId>> = Vec::with_capacity(6);
    for list in &slots {
        if list.len() > 3 {
            return Err(Error::Construction("joining vertex over capacity".into()));
        }
        let (gv, f) = y.graph.attach_new_vertex(list)?;
        gadget.push(gv);
        fresh.push(f);
    }
    let mut free = Vec::with_capacity(4);
    for [p, q] in w.internal {
        let (p, q) = (p as usize, q as usize);
        if p == q || fresh[p].is_empty() || fresh[q].is_empty() {
            return Err(Error::Construction("internal edge does not fit the capacities".into()));
        }
        let s = fresh[p].remove(0);
        let t = fresh[q].remove(0);
        free.push(y.graph.merge(s, t)?);
    }
    let out = w.eps_out as usize;
    let left: usize = fresh.iter().map(Vec::len).sum();
    if left != 1 || fresh[out].len() != 1 {
        return Err(Error::Construction("eps_i must be the last free stub".into()));
    }
    let eps_i = fresh[out][0];
    free.push(eps_i);
    y.graph.set_label(eps_i, eps(i))?;
    let (mut p, mut q) = (
        [zl(&ez, "z1")?, zl(&ez, "z2")?],
        [zl(&ezp, "z1")?, zl(&ezp, "z2")?],
    );
    if w.outputs & 1 != 0 {
        p.swap(0, 1);
    }
    if w.outputs & 2 != 0 {
        q.swap(0, 1);
    }
    if w.outputs & 4 != 0 {
        std::mem::swap(&mut p, &mut q);
    }
    for (l, name) in [(p[0], alpha(i)), (p[1], beta(i)), (q[0], gamma(i)), (q[1], delta(i))] {
        y.graph.set_label(l, name)?;
    }
    let vertices = y.graph.vertices().filter(|v| !before.contains(v)).collect();
    y.levels.push(Level {
        index: i,
        z: ez,
        zp: ezp,
        m: None,
        vertices,
        gadget,
        free,
    });
    Ok(y)
}

/// `Y_i` for the given wiring.
pub fn build_y(i: usize, w: &GadgetWiring) -> Result<YFamily> {
    if i == 0 {
        return Err(Error::Invalid("Y_i needs i >= 1".into()));
    }
    w.check_shape()?;
    let mut y = y1(w)?;
    while y.i() < i {
        y = extend(&y)?;
    }
    Ok(y)
}

#[derive(Clone, Debug)]
pub struct HGraph {
    pub graph: SemiGraph,
    pub y: YFamily,
    pub pi: LinkId,
    pub x: VertexId,
    pub(crate) resolve: BTreeMap<LinkId, LinkId>,
}

impl HGraph {
    pub fn n(&self) -> usize {
        self.y.i()
    }

    pub fn final_link(&self, l: LinkId) -> LinkId {
        follow(&self.resolve, l)
    }
}

/// `H_n`: merge `alpha_n` with `gamma_n` into `pi` and join `beta_n`,
/// `delta_n`, `eps_n` to a new vertex `x`.
pub fn build_h(n: usize, w: &GadgetWiring) -> Result<HGraph> {
    let y = build_y(n, w)?;
    h_from_y(y)
}

pub(crate) fn h_from_y(y: YFamily) -> Result<HGraph> {
    let mut g = y.graph.clone();
    let mut resolve = y.resolve.clone();
    let [a, b, c, d, e] = y.boundary()?;
    let pi = merge_traced(&mut g, &mut resolve, a, c)?;
    g.set_label(pi, "pi")?;
    let (x, fresh) = g.attach_new_vertex(&[b, d, e])?;
    debug_assert!(fresh.is_empty());
    Ok(HGraph {
        graph: g,
        y,
        pi,
        x,
        resolve,
    })
}

/// `H_2` with the vertices of `Y_1` removed. Its five stubs keep the ids
/// and labels `alpha_1 .. eps_1` of the links that joined it to `Y_1`.
pub fn build_k(w: &GadgetWiring) -> Result<SemiGraph> {
    let h = build_h(2, w)?;
    h.graph.induced(
        &h.graph
            .vertices()
            .filter(|v| !h.y.levels[0].vertices.contains(v))
            .collect(),
    )
}

#[derive(Clone, Debug)]
pub struct JGraph {
    pub graph: SemiGraph,
    pub v2: VertexId,
    pub e2: LinkId,
    /// Labels of the two stubs merged into `e2`, in merge order.
    pub merged: (String, String),
    /// The semi-graph `J` is built from.
    pub k: SemiGraph,
}

/// The ten ways to pick the two stubs merged into `e2`, by index into
/// `alpha_1 .. eps_1`.
pub const J_SPLITS: [(usize, usize); 10] = [
    (0, 1),
    (0, 2),
    (0, 3),
    (0, 4),
    (1, 2),
    (1, 3),
    (1, 4),
    (2, 3),
    (2, 4),
    (3, 4),
];

/// `J`: from `K`, merge two stubs into `e2` and join the other three to a
/// new vertex `v2`.
pub fn build_j(w: &GadgetWiring) -> Result<JGraph> {
    j_from_k(build_k(w)?, w.j_split)
}

pub(crate) fn j_from_k(k: SemiGraph, split: u8) -> Result<JGraph> {
    let (p, q) = *J_SPLITS
        .get(split as usize)
        .ok_or_else(|| Error::Construction(format!("no stub split {split}")))?;
    let labels = boundary_labels(1);
    let stubs: Vec<LinkId> = labels
        .iter()
        .map(|l| k.labeled(l))
        .collect::<Result<_>>()?;
    let mut g = k.clone();
    let e2 = g.merge(stubs[p], stubs[q])?;
    g.set_label(e2, "e2")?;
    let rest: Vec<LinkId> = (0..5).filter(|&i| i != p && i != q).map(|i| stubs[i]).collect();
    let (v2, _) = g.attach_new_vertex(&rest)?;
    Ok(JGraph {
        graph: g,
        v2,
        e2,
        merged: (labels[p].clone(), labels[q].clone()),
        k,
    })
}

impl JGraph {
    /// Trims `e2` (restoring the stub labels) and removes `v2`.
    pub fn undo(&self) -> Result<SemiGraph> {
        let mut g = self.graph.clone();
        g.trim_labeled(self.e2, Some((&self.merged.0, &self.merged.1)))?;
        g.remove_vertex(self.v2)?;
        Ok(g)
    }

    /// A negative control: the first two disjoint edges `ab`, `cd` away
    /// from `v2` and `e2` (in link order) for which `ac` and `bd` are not
    /// edges are replaced by `ac`, `bd`. `k` is kept, so the round trip
    /// fails.
    pub fn rewired(&self) -> Result<JGraph> {
        let g = &self.graph;
        let e2_ends = g.ends(self.e2)?;
        let away = |l: LinkId| -> Option<(VertexId, VertexId)> {
            match g.ends(l).ok()? {
                Ends::Edge(a, b)
                    if l != self.e2
                        && !e2_ends.touches(a)
                        && !e2_ends.touches(b)
                        && a != self.v2
                        && b != self.v2 =>
                {
                    Some((a, b))
                }
                _ => None,
            }
        };
        let edges: Vec<(LinkId, VertexId, VertexId)> = g
            .link_ids()
            .filter_map(|l| away(l).map(|(a, b)| (l, a, b)))
            .collect();
        for (i, &(l1, a, b)) in edges.iter().enumerate() {
            for &(l2, c, d) in &edges[i + 1..] {
                let four: BTreeSet<VertexId> = [a, b, c, d].into_iter().collect();
                if four.len() < 4 || g.neighbors(a).contains(&c) || g.neighbors(b).contains(&d) {
                    continue;
                }
                let mut h = g.clone();
                h.remove_link(l1)?;
                h.remove_link(l2)?;
                h.add_edge(a, c)?;
                h.add_edge(b, d)?;
                return Ok(JGraph {
                    graph: h,
                    ..self.clone()
                });
            }
        }
        Err(Error::Construction("no pair of edges to rewire".into()))
    }

    /// The defining identity: undoing the construction gives back `K`
    /// exactly, labels included.
    pub fn round_trip_holds(&self) -> bool {
        self.undo().map(|g| g.same_structure(&self.k)).unwrap_or(false)
    }
}
