//! `Z2 x Z2`-flows. Every element is its own inverse, so orientations play
//! no role and a flow is an undirected value map with zero sum at each
//! vertex.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::error::{invalid, Error, Result};
use crate::group::Elem;
use crate::search::{Rule, Solver, ANY, NONZERO, ZERO};
use crate::semigraph::{Ends, Frame, LinkId, SemiGraph, VertexId};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flow {
    pub assign: BTreeMap<LinkId, Elem>,
}

impl Flow {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, l: LinkId) -> Option<Elem> {
        self.assign.get(&l).copied()
    }

    pub fn set(&mut self, l: LinkId, x: Elem) {
        self.assign.insert(l, x);
    }

    pub fn zero_count(&self) -> usize {
        self.assign.values().filter(|x| x.is_zero()).count()
    }

    pub fn zeros(&self) -> BTreeSet<LinkId> {
        self.assign
            .iter()
            .filter(|(_, x)| x.is_zero())
            .map(|(&l, _)| l)
            .collect()
    }

    pub(crate) fn from_values(frame: &Frame, values: &[u8]) -> Flow {
        Flow {
            assign: frame
                .lids
                .iter()
                .zip(values)
                .map(|(&l, &x)| (l, Elem::from_bits(x)))
                .collect(),
        }
    }
}

fn check_total(g: &SemiGraph, fa: &Flow) -> Result<()> {
    match g.link_ids().find(|&l| fa.get(l).is_none()) {
        Some(l) => Err(Error::Partial(l)),
        None => Ok(()),
    }
}

/// Vertices where the incident values do not add up to zero.
pub fn violations(g: &SemiGraph, fa: &Flow) -> Result<BTreeSet<VertexId>> {
    check_total(g, fa)?;
    let mut sum: BTreeMap<VertexId, Elem> = g.vertices().map(|v| (v, Elem::Zero)).collect();
    for (l, link) in g.links() {
        let x = fa.get(l).expect("checked total");
        match link.ends {
            Ends::Edge(a, b) => {
                *sum.get_mut(&a).expect("endpoint") += x;
                *sum.get_mut(&b).expect("endpoint") += x;
            }
            Ends::Semi(a) => *sum.get_mut(&a).expect("endpoint") += x,
        }
    }
    Ok(sum
        .into_iter()
        .filter(|(_, s)| !s.is_zero())
        .map(|(v, _)| v)
        .collect())
}

pub fn is_flow(g: &SemiGraph, fa: &Flow) -> Result<bool> {
    Ok(violations(g, fa)?.is_empty())
}

pub fn is_nzf(g: &SemiGraph, fa: &Flow) -> Result<bool> {
    Ok(is_flow(g, fa)? && g.link_ids().all(|l| fa.get(l) != Some(Elem::Zero)))
}

/// Number of zero values on the links of `g`.
pub fn zero_count(g: &SemiGraph, fa: &Flow) -> Result<usize> {
    check_total(g, fa)?;
    Ok(g.link_ids().filter(|&l| fa.get(l) == Some(Elem::Zero)).count())
}

pub fn coloring_to_flow(g: &SemiGraph, col: &Coloring) -> Result<Flow> {
    if !g.is_cubic() {
        return Err(invalid("the correspondence needs a cubic semi-graph"));
    }
    if !crate::coloring::is_proper(g, col)? {
        return Err(invalid("the coloring is not proper"));
    }
    Ok(Flow {
        assign: g.link_ids().map(|l| (l, col.get(l).expect("total"))).collect(),
    })
}

pub fn flow_to_coloring(g: &SemiGraph, fa: &Flow) -> Result<Coloring> {
    if !g.is_cubic() {
        return Err(invalid("the correspondence needs a cubic semi-graph"));
    }
    if !is_nzf(g, fa)? {
        return Err(invalid("not a nowhere-zero flow"));
    }
    Ok(Coloring {
        assign: g.link_ids().map(|l| (l, fa.get(l).expect("total"))).collect(),
    })
}

/// The values on the boundary of `X` add up to zero.
pub fn cut_sum_check(g: &SemiGraph, fa: &Flow, side: &BTreeSet<VertexId>) -> Result<bool> {
    if !is_flow(g, fa)? {
        return Err(invalid("not a flow"));
    }
    let cut = g.boundary(side)?;
    let total = cut
        .boundary
        .iter()
        .fold(Elem::Zero, |acc, &l| acc + fa.get(l).expect("total"));
    Ok(total.is_zero())
}

#[derive(Clone, Debug, Serialize)]
pub struct FlowResistance {
    /// `None` when more than `budget` zeros are needed.
    pub value: Option<u32>,
    pub budget: u32,
    pub witness: Option<Flow>,
    pub nodes: u64,
}

/// Minimum number of zeros over all flows on `g`, up to `budget`. A known
/// flow can be passed as an incumbent; the search then only has to rule out
/// cheaper flows.
pub fn flow_resistance(
    g: &SemiGraph,
    budget: u32,
    deadline: Option<Instant>,
    incumbent: Option<&Flow>,
) -> Result<FlowResistance> {
    let frame = Frame::new(g);
    let mut s = Solver::new(&frame, Rule::ZeroSum, ANY);
    s.deadline(deadline);
    let mut cap = budget;
    let mut best: Option<(u32, Flow)> = None;
    if let Some(inc) = incumbent {
        if is_flow(g, inc)? {
            let z = zero_count(g, inc)? as u32;
            if z <= budget {
                cap = z.saturating_sub(1);
                best = Some((z, inc.clone()));
            }
        }
    }
    let beaten = if best.is_some() && best.as_ref().map(|b| b.0) == Some(0) {
        None
    } else {
        s.minimize(cap)?
    };
    if let Some(c) = beaten {
        best = Some((c, Flow::from_values(&frame, s.values())));
    }
    let nodes = s.stats().nodes;
    Ok(match best {
        Some((v, w)) => FlowResistance {
            value: Some(v),
            budget,
            witness: Some(w),
            nodes,
        },
        None => FlowResistance {
            value: None,
            budget,
            witness: None,
            nodes,
        },
    })
}

/// Whether `g` minus `deleted` carries a nowhere-zero flow; the deleted
/// links get value zero in the returned flow.
pub fn nzf_after_deletion(
    g: &SemiGraph,
    deleted: &BTreeSet<LinkId>,
    deadline: Option<Instant>,
) -> Result<Option<Flow>> {
    let frame = Frame::new(g);
    let mut s = Solver::new(&frame, Rule::ZeroSum, NONZERO);
    s.deadline(deadline);
    for &l in deleted {
        let idx = *frame.lpos.get(&l).ok_or(Error::NoSuchLink(l))?;
        s.set_domain(idx, ZERO).free_zero(idx);
    }
    Ok(s.exists(0)?.then(|| Flow::from_values(&frame, s.values())))
}

/// Independent oracle: the smallest `k` such that deleting some `k` links
/// leaves a graph with a nowhere-zero flow, found by trying deletion sets
/// in order of size.
pub fn min_deletion_oracle(g: &SemiGraph, max: usize) -> Result<Option<(usize, BTreeSet<LinkId>)>> {
    let links: Vec<LinkId> = g.link_ids().collect();
    for k in 0..=max.min(links.len()) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let set: BTreeSet<LinkId> = idx.iter().map(|&i| links[i]).collect();
            if nzf_after_deletion(g, &set, None)?.is_some() {
                return Ok(Some((k, set)));
            }
            if !next_combination(&mut idx, links.len()) {
                break;
            }
        }
    }
    Ok(None)
}

/// Advances `idx` to the next `k`-subset of `0..n` in lexicographic order.
pub(crate) fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// A uniformly random element of the flow space of `g`. Semi-edges are
/// treated as edges to an extra vertex at infinity, so a spanning forest
/// rooted there (plus one root per component without semi-edges) carries
/// the forced values and every other link is free.
pub fn random_flow<R: Rng>(g: &SemiGraph, rng: &mut R) -> Flow {
    let frame = Frame::new(g);
    let n = frame.n();
    let inf = n;
    let mut seen = vec![false; n + 1];
    let mut tree_link = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut in_tree = vec![false; frame.m()];
    let mut queue = std::collections::VecDeque::new();
    seen[inf] = true;
    for (l, in_tree_l) in in_tree.iter_mut().enumerate() {
        if frame.is_semi(l) {
            let u = frame.ends[l][0];
            if !seen[u] {
                seen[u] = true;
                tree_link[u] = l;
                *in_tree_l = true;
                queue.push_back(u);
                order.push(u);
            }
        }
    }
    let mut next_root = 0;
    loop {
        while let Some(u) = queue.pop_front() {
            for &l in &frame.inc[u] {
                let w = frame.other(l, u);
                if w != usize::MAX && !seen[w] {
                    seen[w] = true;
                    tree_link[w] = l;
                    in_tree[l] = true;
                    queue.push_back(w);
                    order.push(w);
                }
            }
        }
        while next_root < n && seen[next_root] {
            next_root += 1;
        }
        if next_root == n {
            break;
        }
        seen[next_root] = true;
        order.push(next_root);
        queue.push_back(next_root);
    }
    let mut vals = vec![0u8; frame.m()];
    for l in 0..frame.m() {
        if !in_tree[l] {
            vals[l] = rng.gen_range(0..4);
        }
    }
    // Leaves first: each tree link balances its lower endpoint.
    for &u in order.iter().rev() {
        let tl = tree_link[u];
        if tl == usize::MAX {
            continue;
        }
        let mut s = 0u8;
        for &l in &frame.inc[u] {
            if l != tl {
                s ^= vals[l];
            }
        }
        vals[tl] = s;
    }
    Flow::from_values(&frame, &vals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::petersen;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn all_zero_is_a_flow_but_not_nowhere_zero() {
        let p = petersen();
        let f = Flow {
            assign: p.link_ids().map(|l| (l, Elem::Zero)).collect(),
        };
        assert!(is_flow(&p, &f).unwrap());
        assert!(!is_nzf(&p, &f).unwrap());
        assert_eq!(zero_count(&p, &f).unwrap(), 15);
    }

    #[test]
    fn rainbow_vertex_is_conserved() {
        let mut g = SemiGraph::with_vertices(1);
        let mut f = Flow::new();
        for x in [Elem::A, Elem::B, Elem::C] {
            let s = g.add_semi_edge(VertexId(0)).unwrap();
            f.set(s, x);
        }
        assert!(is_nzf(&g, &f).unwrap());
        let col = flow_to_coloring(&g, &f).unwrap();
        assert_eq!(coloring_to_flow(&g, &col).unwrap(), f);
    }

    #[test]
    fn random_flows_are_flows() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut g = petersen();
        g.remove_vertex(VertexId(0)).unwrap();
        for _ in 0..50 {
            let f = random_flow(&g, &mut rng);
            assert!(is_flow(&g, &f).unwrap());
            assert!(cut_sum_check(&g, &f, g.vertex_set()).unwrap());
        }
    }

    #[test]
    fn petersen_flow_resistance_matches_oracle() {
        let p = petersen();
        let fr = flow_resistance(&p, 5, None, None).unwrap();
        let (k, _) = min_deletion_oracle(&p, 5).unwrap().unwrap();
        assert_eq!(fr.value, Some(k as u32));
        let w = fr.witness.unwrap();
        assert!(is_flow(&p, &w).unwrap());
        assert_eq!(w.zero_count(), k);
    }

    #[test]
    fn combinations_are_enumerated_in_order() {
        let mut idx = vec![0, 1];
        let mut seen = vec![idx.clone()];
        while next_combination(&mut idx, 4) {
            seen.push(idx.clone());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen.last().unwrap(), &vec![2, 3]);
        let mut empty: Vec<usize> = vec![];
        assert!(!next_combination(&mut empty, 3));
    }
}
