//! Builders for the Petersen graph, the gadgets `M`, `N`, `Z`, the
//! recursive semi-graphs `Y_i`, the snarks `H_n` and the companion graph
//! `J`.

mod family;
pub mod recipe;
pub mod star;
pub mod wiring;

use crate::error::Result;
use crate::semigraph::{LinkId, SemiGraph, VertexId};

pub use family::{
    boundary_labels, build_h, build_j, build_k, build_y, HGraph, JGraph, Level, YFamily, J_SPLITS,
};
pub use wiring::{search_wiring, GadgetWiring, SearchOutcome};

/// The 2-subsets of `{1..5}` in lexicographic order; the Petersen vertex
/// with id `i` is `KNESER[i]`.
pub const KNESER: [(u8, u8); 10] = [
    (1, 2),
    (1, 3),
    (1, 4),
    (1, 5),
    (2, 3),
    (2, 4),
    (2, 5),
    (3, 4),
    (3, 5),
    (4, 5),
];

/// Vertex id of the 2-subset `{a, b}`.
pub fn kneser_vertex(a: u8, b: u8) -> VertexId {
    let key = (a.min(b), a.max(b));
    let i = KNESER.iter().position(|&p| p == key).expect("a 2-subset of 1..5");
    VertexId(i as u32)
}

fn disjoint(p: (u8, u8), q: (u8, u8)) -> bool {
    p.0 != q.0 && p.0 != q.1 && p.1 != q.0 && p.1 != q.1
}

/// The Petersen graph as the Kneser graph `K(5, 2)`.
pub fn petersen() -> SemiGraph {
    let mut g = SemiGraph::with_vertices(10);
    for (i, &p) in KNESER.iter().enumerate() {
        for (j, &q) in KNESER.iter().enumerate().skip(i + 1) {
            if disjoint(p, q) {
                g.add_edge(VertexId(i as u32), VertexId(j as u32))
                    .expect("distinct vertices");
            }
        }
    }
    g
}

fn edge_between(g: &SemiGraph, u: VertexId, v: VertexId) -> Option<LinkId> {
    g.incident(u)
        .into_iter()
        .find(|&l| g.ends(l).map(|e| e.other(u) == Some(v)).unwrap_or(false))
}

/// `P` minus the path `u - w - v`. Returns the semi-graph and its five
/// stubs in role order: two at `u`'s other neighbours, two at `v`'s, one at
/// `w`'s third neighbour.
pub fn petersen_minus_path(u: VertexId, w: VertexId, v: VertexId) -> Result<(SemiGraph, [LinkId; 5])> {
    let mut g = petersen();
    let others = |x: VertexId| -> Vec<LinkId> {
        let mut ls: Vec<(VertexId, LinkId)> = g
            .incident(x)
            .into_iter()
            .filter_map(|l| {
                let y = g.ends(l).ok()?.other(x)?;
                (y != w && y != u && y != v).then_some((y, l))
            })
            .collect();
        ls.sort();
        ls.into_iter().map(|(_, l)| l).collect()
    };
    let (us, vs, ws) = (others(u), others(v), others(w));
    if us.len() != 2 || vs.len() != 2 || ws.len() != 1 || edge_between(&g, u, w).is_none() || edge_between(&g, w, v).is_none() {
        return Err(crate::Error::Construction("not a path of length two".into()));
    }
    for x in [u, v, w] {
        g.remove_vertex(x)?;
    }
    Ok((g, [us[0], us[1], vs[0], vs[1], ws[0]]))
}

/// The semi-graph `M` with one of its 8 admissible labellings: bit 0 swaps
/// `e1`/`e2`, bit 1 swaps `e3`/`e4`, bit 2 swaps the two pairs.
pub fn build_m_variant(variant: u8) -> SemiGraph {
    let (mut g, s) = petersen_minus_path(kneser_vertex(3, 4), kneser_vertex(1, 2), kneser_vertex(3, 5))
        .expect("canonical path");
    let (mut p, mut q) = ([s[0], s[1]], [s[2], s[3]]);
    if variant & 1 != 0 {
        p.swap(0, 1);
    }
    if variant & 2 != 0 {
        q.swap(0, 1);
    }
    if variant & 4 != 0 {
        std::mem::swap(&mut p, &mut q);
    }
    for (l, name) in [(p[0], "e1"), (p[1], "e2"), (q[0], "e3"), (q[1], "e4"), (s[4], "e5")] {
        g.set_label(l, name).expect("fresh labels");
    }
    g
}

/// `M` with the frozen labelling.
pub fn build_m() -> SemiGraph {
    build_m_variant(GadgetWiring::frozen().m_variant)
}

/// `P` minus vertex `v` with edge `e` trimmed. Returns the stubs in role
/// order: the trimmed edge's two stubs (at its smaller endpoint first), then
/// the three stubs left by `v`, by neighbour id.
pub fn petersen_minus_vertex_and_edge(v: VertexId, e: LinkId) -> Result<(SemiGraph, [LinkId; 5])> {
    let mut g = petersen();
    let d = g.distance(v, crate::semigraph::Target::Edge(e))?;
    if d != Some(2) {
        return Err(crate::Error::Construction("the trimmed edge must be at distance two".into()));
    }
    let (a, _) = g.ends(e)?.sorted();
    let (s1, s2) = g.trim(e)?;
    let (sa, sb) = if g.ends(s1)?.touches(a) { (s1, s2) } else { (s2, s1) };
    let mut nb: Vec<(VertexId, LinkId)> = g
        .incident(v)
        .into_iter()
        .map(|l| (g.ends(l).expect("own link").other(v).expect("an edge"), l))
        .collect();
    nb.sort();
    g.remove_vertex(v)?;
    Ok((g, [sa, sb, nb[0].1, nb[1].1, nb[2].1]))
}

/// The semi-graph `N` with one of its 12 admissible labellings:
/// `variant % 2` picks the end of the trimmed edge carrying `f1`,
/// `(variant / 2) % 3` picks which stub of the removed vertex is `f5`, and
/// `variant / 6` swaps `f3`/`f4`.
pub fn build_n_variant(variant: u8) -> SemiGraph {
    let v = kneser_vertex(1, 2);
    let p = petersen();
    let e = edge_between(&p, kneser_vertex(1, 3), kneser_vertex(2, 4)).expect("disjoint pairs");
    let (mut g, s) = petersen_minus_vertex_and_edge(v, e).expect("canonical choice");
    let (f1, f2) = if variant.is_multiple_of(2) { (s[0], s[1]) } else { (s[1], s[0]) };
    let k = ((variant / 2) % 3) as usize;
    let rest: Vec<LinkId> = (0..3).filter(|&i| i != k).map(|i| s[2 + i]).collect();
    let (f3, f4) = if variant / 6 == 0 { (rest[0], rest[1]) } else { (rest[1], rest[0]) };
    for (l, name) in [(f1, "f1"), (f2, "f2"), (f3, "f3"), (f4, "f4"), (s[2 + k], "f5")] {
        g.set_label(l, name).expect("fresh labels");
    }
    g
}

/// `N` with the frozen labelling.
pub fn build_n() -> SemiGraph {
    build_n_variant(GadgetWiring::frozen().n_variant)
}

/// `Z` from given `M` and `N`: merge `e3-f1`, `e4-f2`, join `e5`, `f5` to a
/// new vertex whose third link is `z5`; `z1..z4 = e1, e2, f3, f4`.
pub fn build_z_from(m: &SemiGraph, n: &SemiGraph) -> Result<SemiGraph> {
    let mut z = SemiGraph::new();
    let em = z.absorb(m, false)?;
    let en = z.absorb(n, false)?;
    let ml = |name: &str| -> Result<LinkId> { Ok(em.link(m.labeled(name)?)) };
    let nl = |name: &str| -> Result<LinkId> { Ok(en.link(n.labeled(name)?)) };
    z.merge(ml("e3")?, nl("f1")?)?;
    z.merge(ml("e4")?, nl("f2")?)?;
    let (_, fresh) = z.attach_new_vertex(&[ml("e5")?, nl("f5")?])?;
    for (l, name) in [
        (ml("e1")?, "z1"),
        (ml("e2")?, "z2"),
        (nl("f3")?, "z3"),
        (nl("f4")?, "z4"),
        (fresh[0], "z5"),
    ] {
        z.set_label(l, name)?;
    }
    Ok(z)
}

pub fn build_z_variant(m_variant: u8, n_variant: u8) -> SemiGraph {
    build_z_from(&build_m_variant(m_variant), &build_n_variant(n_variant)).expect("gadgets fit")
}

/// `Z` with the frozen labellings of `M` and `N`.
pub fn build_z() -> SemiGraph {
    let w = GadgetWiring::frozen();
    build_z_variant(w.m_variant, w.n_variant)
}
