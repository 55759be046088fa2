//! Cyclic edge-connectivity of cubic graphs.
//!
//! A cut `∂(X)` is cyclic when both `X` and its complement induce a cycle.
//! Two independent deciders are provided: exhaustive enumeration of small
//! edge sets, and max-flow between pairs of disjoint contracted 2-paths.

use std::collections::{BTreeSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::flows::next_combination;
use crate::semigraph::{Ends, Frame, LinkId, SemiGraph, Target, VertexId, NONE};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CutCertificate {
    pub side: Vec<VertexId>,
    pub cut: Vec<LinkId>,
    pub size: usize,
    pub cyclic: bool,
    pub trivial: bool,
    /// A cycle inside the side, as a closed vertex sequence.
    pub cycle_in_side: Option<Vec<VertexId>>,
    pub cycle_in_rest: Option<Vec<VertexId>>,
}

impl CutCertificate {
    /// Recomputes the cut and re-checks both cycle witnesses.
    pub fn verify(&self, g: &SemiGraph) -> bool {
        let side: BTreeSet<VertexId> = self.side.iter().copied().collect();
        let Ok(cut) = g.boundary(&side) else {
            return false;
        };
        if cut.boundary.iter().copied().collect::<Vec<_>>() != self.cut || self.size != self.cut.len() {
            return false;
        }
        let rest: BTreeSet<VertexId> = g.vertices().filter(|v| !side.contains(v)).collect();
        let trivial = side.len() == 1 || rest.len() == 1;
        let ok_cycle = |c: &Option<Vec<VertexId>>, within: &BTreeSet<VertexId>| match c {
            None => true,
            Some(c) => is_cycle_in(g, c, within),
        };
        trivial == self.trivial
            && ok_cycle(&self.cycle_in_side, &side)
            && ok_cycle(&self.cycle_in_rest, &rest)
            && self.cyclic == (self.cycle_in_side.is_some() && self.cycle_in_rest.is_some())
    }
}

/// `cycle` lists distinct vertices of `within`, consecutive ones (cyclically)
/// adjacent, with at least two vertices (two means a pair of parallel edges).
fn is_cycle_in(g: &SemiGraph, cycle: &[VertexId], within: &BTreeSet<VertexId>) -> bool {
    let distinct: BTreeSet<_> = cycle.iter().collect();
    if cycle.len() < 2 || distinct.len() != cycle.len() || !cycle.iter().all(|v| within.contains(v)) {
        return false;
    }
    let mult = |a: VertexId, b: VertexId| g.neighbors(a).into_iter().filter(|&x| x == b).count();
    if cycle.len() == 2 {
        return mult(cycle[0], cycle[1]) >= 2;
    }
    (0..cycle.len()).all(|i| mult(cycle[i], cycle[(i + 1) % cycle.len()]) >= 1)
}

/// Some cycle among the edges induced by `mask`, as frame vertex indices.
fn find_cycle(frame: &Frame, mask: &[bool]) -> Option<Vec<usize>> {
    let n = frame.n();
    let mut depth = vec![usize::MAX; n];
    let mut via = vec![NONE; n];
    for root in 0..n {
        if !mask[root] || depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &l in &frame.inc[u] {
                let w = frame.other(l, u);
                if w == NONE || !mask[w] || l == via[u] {
                    continue;
                }
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    via[w] = l;
                    queue.push_back(w);
                } else {
                    // Non-tree link closes a cycle through the lowest common
                    // ancestor of u and w.
                    let (mut a, mut b) = (u, w);
                    let mut left = vec![a];
                    let mut right = vec![b];
                    while a != b {
                        if depth[a] >= depth[b] {
                            a = frame.other(via[a], a);
                            left.push(a);
                        } else {
                            b = frame.other(via[b], b);
                            right.push(b);
                        }
                    }
                    right.pop();
                    left.extend(right.into_iter().rev());
                    return Some(left);
                }
            }
        }
    }
    None
}

fn require_graph(g: &SemiGraph) -> Result<()> {
    if !g.is_graph() {
        return Err(invalid("cut analysis needs a graph without semi-edges"));
    }
    Ok(())
}

/// Certificate for `∂(X)`.
pub fn classify_cut(g: &SemiGraph, side: &BTreeSet<VertexId>) -> Result<CutCertificate> {
    require_graph(g)?;
    if side.is_empty() || side.len() >= g.order() {
        return Err(invalid("a cut needs a proper nonempty side"));
    }
    let frame = Frame::new(g);
    let mask: Vec<bool> = frame.vids.iter().map(|v| side.contains(v)).collect();
    certificate(g, &frame, &mask)
}

fn certificate(g: &SemiGraph, frame: &Frame, mask: &[bool]) -> Result<CutCertificate> {
    let rest: Vec<bool> = mask.iter().map(|&b| !b).collect();
    let side: BTreeSet<VertexId> = (0..frame.n()).filter(|&i| mask[i]).map(|i| frame.vids[i]).collect();
    let cut = g.boundary(&side)?;
    let to_ids = |c: Vec<usize>| c.into_iter().map(|i| frame.vids[i]).collect::<Vec<_>>();
    let c1 = find_cycle(frame, mask).map(to_ids);
    let c2 = find_cycle(frame, &rest).map(to_ids);
    let k = side.len();
    Ok(CutCertificate {
        side: side.into_iter().collect(),
        size: cut.boundary.len(),
        cut: cut.boundary.into_iter().collect(),
        cyclic: c1.is_some() && c2.is_some(),
        trivial: k == 1 || frame.n() - k == 1,
        cycle_in_side: c1,
        cycle_in_rest: c2,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    Exhaustive,
    CyclePairs,
}

impl std::str::FromStr for Method {
    type Err = crate::Error;
    fn from_str(s: &str) -> Result<Method> {
        match s {
            "exhaustive" => Ok(Method::Exhaustive),
            "cycle-pairs" => Ok(Method::CyclePairs),
            other => Err(invalid(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CyclicReport {
    pub k: usize,
    pub holds: bool,
    pub method: Method,
    /// Cyclic cut of size below `k`, when one exists.
    pub counterexample: Option<CutCertificate>,
    /// `|E| - |V| + 1`. A graph without any cyclic cut has cyclic
    /// connectivity equal to this number.
    pub cycle_rank: usize,
    /// Edge sets (exhaustive) or path pairs (cycle-pairs) examined.
    pub candidates: u64,
}

/// Whether `g` has no cyclic edge-cut of size below `k` (and, when it has no
/// cyclic cut at all, cycle rank at least `k`).
pub fn cyclic_connectivity_at_least(g: &SemiGraph, k: usize, method: Method) -> Result<CyclicReport> {
    require_graph(g)?;
    if k > 5 {
        return Err(invalid("only k <= 5 is supported"));
    }
    if !g.is_connected() {
        return Err(invalid("cyclic connectivity needs a connected graph"));
    }
    let frame = Frame::new(g);
    let (counterexample, candidates) = match method {
        Method::Exhaustive => exhaustive(g, &frame, k)?,
        Method::CyclePairs => {
            if !g.is_cubic() {
                return Err(invalid("the cycle-pairs method needs a cubic graph"));
            }
            cycle_pairs(g, &frame, k)?
        }
    };
    let cycle_rank = g.edge_count() + 1 - g.order();
    let holds = counterexample.is_none() && cycle_rank >= k;
    Ok(CyclicReport {
        k,
        holds,
        method,
        counterexample,
        cycle_rank,
        candidates,
    })
}

struct Bridges {
    connected: bool,
    is_bridge: Vec<bool>,
}

/// Bridges of the frame graph with the `removed` links deleted.
fn bridges(frame: &Frame, removed: &[bool]) -> Bridges {
    let n = frame.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_bridge = vec![false; frame.m()];
    let mut time = 0;
    let mut roots = 0;
    // Stack entries: (vertex, link used to enter, next incidence position).
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for r in 0..n {
        if disc[r] != usize::MAX {
            continue;
        }
        roots += 1;
        disc[r] = time;
        low[r] = time;
        time += 1;
        stack.push((r, NONE, 0));
        while let Some(&mut (u, via, ref mut pos)) = stack.last_mut() {
            if *pos < frame.inc[u].len() {
                let l = frame.inc[u][*pos];
                *pos += 1;
                if removed[l] || l == via {
                    continue;
                }
                let w = frame.other(l, u);
                if w == NONE {
                    continue;
                }
                if disc[w] == usize::MAX {
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, l, 0));
                } else {
                    low[u] = low[u].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[u]);
                    if low[u] > disc[p] {
                        is_bridge[via] = true;
                    }
                }
            }
        }
    }
    Bridges {
        connected: roots <= 1,
        is_bridge,
    }
}

/// If removing `set` leaves exactly a boundary `∂(X)`, returns the mask of
/// `X` (the class containing vertex 0).
fn exact_side(frame: &Frame, set: &[usize]) -> Option<Vec<bool>> {
    let n = frame.n();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (l, &[a, b]) in frame.ends.iter().enumerate() {
        if b == NONE || set.contains(&l) {
            continue;
        }
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let comp: Vec<usize> = (0..n).map(|v| find(&mut parent, v)).collect();
    // Two-color the components along the removed links.
    let mut color = vec![u8::MAX; n];
    color[comp[0]] = 0;
    let mut changed = true;
    while changed {
        changed = false;
        for &l in set {
            let [a, b] = frame.ends[l];
            let (ca, cb) = (comp[a], comp[b]);
            if ca == cb {
                return None;
            }
            match (color[ca], color[cb]) {
                (u8::MAX, u8::MAX) => {}
                (x, u8::MAX) => {
                    color[cb] = 1 - x;
                    changed = true;
                }
                (u8::MAX, y) => {
                    color[ca] = 1 - y;
                    changed = true;
                }
                (x, y) if x == y => return None,
                _ => {}
            }
        }
    }
    let mask: Vec<bool> = (0..n).map(|v| color[comp[v]] == 0).collect();
    if mask.iter().all(|&b| b) {
        return None;
    }
    Some(mask)
}

type CutVisitor<'a> = dyn FnMut(&[usize], &[bool]) -> Result<bool> + 'a;

/// Calls `visit(set, side)` for every link set of size `1..=max` that is
/// exactly a boundary, in order of size and then lexicographically. Stops
/// when `visit` returns `true`. Returns the number of sets examined.
fn for_each_exact_cut(
    frame: &Frame,
    max: usize,
    visit: &mut CutVisitor<'_>,
) -> Result<u64> {
    let m = frame.m();
    let mut examined = 0u64;
    let mut removed = vec![false; m];
    for size in 1..=max.min(m) {
        let mut prefix: Vec<usize> = (0..size - 1).collect();
        loop {
            let start = prefix.last().map_or(0, |&x| x + 1);
            if start < m {
                for &l in &prefix {
                    removed[l] = true;
                }
                let br = bridges(frame, &removed);
                let mut set = prefix.clone();
                set.push(0);
                for e in start..m {
                    examined += 1;
                    if !br.connected || br.is_bridge[e] {
                        set[size - 1] = e;
                        if let Some(mask) = exact_side(frame, &set) {
                            if visit(&set, &mask)? {
                                return Ok(examined);
                            }
                        }
                    }
                }
                for &l in &prefix {
                    removed[l] = false;
                }
            }
            if size == 1 || !next_combination(&mut prefix, m) {
                break;
            }
        }
    }
    Ok(examined)
}

fn exhaustive(g: &SemiGraph, frame: &Frame, k: usize) -> Result<(Option<CutCertificate>, u64)> {
    let mut found = None;
    let examined = for_each_exact_cut(frame, k.saturating_sub(1), &mut |_, mask| {
        let rest: Vec<bool> = mask.iter().map(|&b| !b).collect();
        if frame.has_cycle_within(mask) && frame.has_cycle_within(&rest) {
            found = Some(certificate(g, frame, mask)?);
            return Ok(true);
        }
        Ok(false)
    })?;
    Ok((found, examined))
}

/// Every exact edge cut with at most `max` links, with its certificate.
pub fn small_cuts(g: &SemiGraph, max: usize) -> Result<Vec<CutCertificate>> {
    require_graph(g)?;
    let frame = Frame::new(g);
    let mut out = Vec::new();
    for_each_exact_cut(&frame, max, &mut |_, mask| {
        out.push(certificate(g, &frame, mask)?);
        Ok(false)
    })?;
    Ok(out)
}

/// All paths `x - y - z` on three distinct vertices, one per vertex triple.
fn two_paths(frame: &Frame) -> Vec<[usize; 3]> {
    let mut out = BTreeSet::new();
    for y in 0..frame.n() {
        let nb: BTreeSet<usize> = frame.inc[y]
            .iter()
            .map(|&l| frame.other(l, y))
            .filter(|&w| w != NONE)
            .collect();
        let nb: Vec<usize> = nb.into_iter().collect();
        for i in 0..nb.len() {
            for j in i + 1..nb.len() {
                out.insert([nb[i], y, nb[j]]);
            }
        }
    }
    out.into_iter().collect()
}

/// Maximum number of edge-disjoint paths between the vertex sets `s` and
/// `t` (each contracted), capped at `cap`. Also returns the source side of
/// a minimum cut when the cap is not reached.
fn max_flow(frame: &Frame, s: &[bool], t: &[bool], cap: usize) -> (usize, Vec<bool>) {
    let n = frame.n();
    // used[l] = +1 if link l carries flow from ends[0] to ends[1], -1 for
    // the reverse direction, 0 if unused.
    let mut used = vec![0i8; frame.m()];
    let mut flow = 0;
    loop {
        let mut via = vec![NONE; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for v in 0..n {
            if s[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
        let mut sink = NONE;
        'bfs: while let Some(u) = queue.pop_front() {
            for &l in &frame.inc[u] {
                let w = frame.other(l, u);
                if w == NONE || seen[w] {
                    continue;
                }
                let forward = frame.ends[l][0] == u;
                let dir = if forward { 1 } else { -1 };
                if used[l] == dir {
                    continue;
                }
                seen[w] = true;
                via[w] = l;
                if t[w] {
                    sink = w;
                    break 'bfs;
                }
                queue.push_back(w);
            }
        }
        if sink == NONE {
            return (flow, seen);
        }
        let mut v = sink;
        while !s[v] {
            let l = via[v];
            let u = frame.other(l, v);
            let dir = if frame.ends[l][0] == u { 1 } else { -1 };
            used[l] = if used[l] == -dir { 0 } else { dir };
            v = u;
        }
        flow += 1;
        if flow >= cap {
            return (flow, Vec::new());
        }
    }
}

fn cycle_pairs(g: &SemiGraph, frame: &Frame, k: usize) -> Result<(Option<CutCertificate>, u64)> {
    let paths = two_paths(frame);
    let n = frame.n();
    let mut examined = 0u64;
    let mut best: Option<CutCertificate> = None;
    for (i, p) in paths.iter().enumerate() {
        let mut s = vec![false; n];
        for &v in p {
            s[v] = true;
        }
        for q in &paths[i + 1..] {
            if q.iter().any(|&v| s[v]) {
                continue;
            }
            examined += 1;
            let mut t = vec![false; n];
            for &v in q {
                t[v] = true;
            }
            let (f, source_side) = max_flow(frame, &s, &t, k);
            if f >= k {
                continue;
            }
            // The minimal source side is connected; the component of its
            // complement that holds q then bounds a cyclic cut.
            let mut y = vec![false; n];
            let mut queue = VecDeque::from([q[0]]);
            y[q[0]] = true;
            while let Some(u) = queue.pop_front() {
                for &l in &frame.inc[u] {
                    let w = frame.other(l, u);
                    if w != NONE && !source_side[w] && !y[w] {
                        y[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            let cert = certificate(g, frame, &y)?;
            if !cert.cyclic || cert.size >= k {
                return Err(invalid("cycle-pairs refinement produced a non-cyclic cut"));
            }
            let better = best.as_ref().is_none_or(|b| (cert.size, &cert.cut) < (b.size, &b.cut));
            if better {
                best = Some(cert);
            }
        }
    }
    Ok((best, examined))
}

/// A cyclic cut of size `size` around a shortest cycle, if there is one.
pub fn girth_cut(g: &SemiGraph, size: usize) -> Result<Option<CutCertificate>> {
    require_graph(g)?;
    let frame = Frame::new(g);
    let Some(girth) = frame.girth() else {
        return Ok(None);
    };
    for root in 0..frame.n() {
        if let Some(c) = shortest_cycle_through(&frame, root, girth) {
            let mut side = vec![false; frame.n()];
            for v in c {
                side[v] = true;
            }
            let cert = certificate(g, &frame, &side)?;
            if cert.cyclic && cert.size == size {
                return Ok(Some(cert));
            }
        }
    }
    Ok(None)
}

fn shortest_cycle_through(frame: &Frame, root: usize, len: usize) -> Option<Vec<usize>> {
    // Depth-limited search for a simple cycle of exactly `len` vertices.
    fn go(frame: &Frame, path: &mut Vec<usize>, used_link: &mut Vec<usize>, len: usize) -> bool {
        let u = *path.last().expect("nonempty");
        for &l in &frame.inc[u] {
            if used_link.last() == Some(&l) {
                continue;
            }
            let w = frame.other(l, u);
            if w == NONE {
                continue;
            }
            if w == path[0] && path.len() == len && used_link.first() != Some(&l) {
                return true;
            }
            if path.len() < len && !path.contains(&w) {
                path.push(w);
                used_link.push(l);
                if go(frame, path, used_link, len) {
                    return true;
                }
                path.pop();
                used_link.pop();
            }
        }
        false
    }
    let mut path = vec![root];
    let mut links = Vec::new();
    go(frame, &mut path, &mut links, len).then_some(path)
}

/// A tree all of whose degrees are 1 or 3 has `|V|/2 + 1` leaves.
pub fn leaf_count_check(t: &SemiGraph) -> Result<bool> {
    require_graph(t)?;
    let n = t.order();
    if n == 0 || !t.is_connected() || t.edge_count() + 1 != n {
        return Err(invalid("not a tree"));
    }
    let mut leaves = 0;
    for v in t.vertices() {
        match t.degree(v) {
            1 => leaves += 1,
            3 => {}
            d => return Err(invalid(format!("vertex {v} has degree {d}"))),
        }
    }
    Ok(n.is_multiple_of(2) && leaves == n / 2 + 1)
}

/// All trees with degrees in `{1, 3}` on at most `max_order` vertices, one
/// per isomorphism class, grown by turning a leaf into a branch vertex.
pub fn cubic_trees(max_order: usize) -> Vec<SemiGraph> {
    let mut out = Vec::new();
    if max_order < 2 {
        return out;
    }
    let mut level = {
        let mut k2 = SemiGraph::with_vertices(2);
        k2.add_edge(VertexId(0), VertexId(1)).expect("two vertices");
        vec![k2]
    };
    while let Some(first) = level.first() {
        if first.order() > max_order {
            break;
        }
        out.extend(level.iter().cloned());
        let mut next: Vec<SemiGraph> = Vec::new();
        for t in &level {
            for leaf in t.vertices().filter(|&v| t.degree(v) == 1) {
                let mut u = t.clone();
                for _ in 0..2 {
                    let w = u.add_vertex();
                    u.add_edge(leaf, w).expect("fresh vertex");
                }
                if !next.iter().any(|h| crate::iso::is_isomorphic(h, &u).is_some()) {
                    next.push(u);
                }
            }
        }
        level = next;
    }
    out
}

/// A uniformly random simple connected cubic graph on `n` vertices
/// (configuration model with rejection). `n` must be even and at least 4.
pub fn random_cubic_graph<R: Rng>(n: usize, rng: &mut R) -> Result<SemiGraph> {
    if n < 4 || n % 2 == 1 {
        return Err(invalid("cubic graphs need an even order of at least 4"));
    }
    loop {
        let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
        points.shuffle(rng);
        let mut g = SemiGraph::with_vertices(n);
        let mut ok = true;
        for pair in points.chunks(2) {
            let (a, b) = (pair[0], pair[1]);
            let (va, vb) = (VertexId(a as u32), VertexId(b as u32));
            if a == b || g.neighbors(va).contains(&vb) {
                ok = false;
                break;
            }
            g.add_edge(va, vb)?;
        }
        if ok && g.is_connected() {
            return Ok(g);
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StarHypotheses {
    pub d1: Option<usize>,
    pub d2: Option<usize>,
    pub g1_cyclic5: bool,
    pub g2_cyclic5: bool,
    pub holds: bool,
}

/// Hypotheses of the composition theorem: `d(v1, e1) >= 3`,
/// `d(v2, e2) >= 2`, and both graphs cyclically 5-edge-connected.
pub fn star_hypotheses_check(
    g1: &SemiGraph,
    v1: VertexId,
    e1: LinkId,
    g2: &SemiGraph,
    v2: VertexId,
    e2: LinkId,
) -> Result<StarHypotheses> {
    for (g, v, e) in [(g1, v1, e1), (g2, v2, e2)] {
        if !g.is_cubic() || !g.is_graph() {
            return Err(invalid("both inputs must be cubic graphs"));
        }
        match g.ends(e)? {
            Ends::Edge(a, b) if a == v || b == v => {
                return Err(invalid(format!("edge {e} is incident to vertex {v}")))
            }
            Ends::Edge(..) => {}
            Ends::Semi(_) => return Err(crate::Error::NotAnEdge(e)),
        }
    }
    let d1 = g1.distance(v1, Target::Edge(e1))?;
    let d2 = g2.distance(v2, Target::Edge(e2))?;
    let far = |d: Option<usize>, min: usize| d.is_none_or(|d| d >= min);
    let mut holds = far(d1, 3) && far(d2, 2);
    let mut c1 = false;
    let mut c2 = false;
    if holds {
        c1 = cyclic_connectivity_at_least(g1, 5, Method::Exhaustive)?.holds;
        c2 = c1 && cyclic_connectivity_at_least(g2, 5, Method::Exhaustive)?.holds;
        holds = c1 && c2;
    }
    Ok(StarHypotheses {
        d1,
        d2,
        g1_cyclic5: c1,
        g2_cyclic5: c2,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::petersen;

    fn k33() -> SemiGraph {
        let mut g = SemiGraph::with_vertices(6);
        for a in 0..3 {
            for b in 3..6 {
                g.add_edge(VertexId(a), VertexId(b)).unwrap();
            }
        }
        g
    }

    fn prism() -> SemiGraph {
        let mut g = SemiGraph::with_vertices(6);
        for (a, b) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)] {
            g.add_edge(VertexId(a), VertexId(b)).unwrap();
        }
        g
    }

    #[test]
    fn single_vertex_cut_is_trivial_and_acyclic() {
        let p = petersen();
        let c = classify_cut(&p, &BTreeSet::from([VertexId(0)])).unwrap();
        assert_eq!(c.size, 3);
        assert!(c.trivial && !c.cyclic);
        assert!(c.verify(&p));
        assert!(classify_cut(&p, &BTreeSet::new()).is_err());
    }

    #[test]
    fn petersen_is_cyclically_five_connected_both_ways() {
        let p = petersen();
        for method in [Method::Exhaustive, Method::CyclePairs] {
            let r = cyclic_connectivity_at_least(&p, 5, method).unwrap();
            assert!(r.holds, "{method:?}");
        }
        let cut = girth_cut(&p, 5).unwrap().unwrap();
        assert!(cut.verify(&p) && cut.cyclic);
        assert!(cyclic_connectivity_at_least(&p, 6, Method::Exhaustive).is_err());
    }

    #[test]
    fn negative_controls() {
        let r = cyclic_connectivity_at_least(&k33(), 5, Method::Exhaustive).unwrap();
        assert!(!r.holds);
        assert_eq!(r.cycle_rank, 4);
        assert!(r.counterexample.is_none());
        for method in [Method::Exhaustive, Method::CyclePairs] {
            let r = cyclic_connectivity_at_least(&prism(), 5, method).unwrap();
            assert!(!r.holds);
            let c = r.counterexample.unwrap();
            assert_eq!(c.size, 3);
            assert!(c.verify(&prism()));
        }
    }

    #[test]
    fn bridges_on_a_path_and_a_cycle() {
        let mut path = SemiGraph::with_vertices(3);
        path.add_edge(VertexId(0), VertexId(1)).unwrap();
        path.add_edge(VertexId(1), VertexId(2)).unwrap();
        let f = Frame::new(&path);
        let b = bridges(&f, &[false, false]);
        assert!(b.connected && b.is_bridge.iter().all(|&x| x));
        let p = petersen();
        let f = Frame::new(&p);
        let b = bridges(&f, &[false; 15]);
        assert!(b.is_bridge.iter().all(|&x| !x));
    }

    #[test]
    fn leaf_counts() {
        let trees = cubic_trees(12);
        let per_order: Vec<usize> = (1..=6)
            .map(|k| trees.iter().filter(|t| t.order() == 2 * k).count())
            .collect();
        // Such a tree with k internal vertices is a tree of maximum degree
        // three on those k vertices, padded with leaves; for k <= 5 these are
        // 1, 1, 1, 1, 2, 2 by hand (k = 5: the path and the fork).
        assert_eq!(per_order, vec![1, 1, 1, 1, 2, 2]);
        for t in &trees {
            assert!(leaf_count_check(t).unwrap());
        }
        let mut bad = SemiGraph::with_vertices(3);
        bad.add_edge(VertexId(0), VertexId(1)).unwrap();
        bad.add_edge(VertexId(1), VertexId(2)).unwrap();
        assert!(leaf_count_check(&bad).is_err());
    }
}
