//! Proper 3-edge-colorings: checking, solving, enumeration, Kempe switches
//! and resistance.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::group::{Elem, COLORS};
use crate::search::{Rule, Solver, ANY, NONZERO, ZERO};
use crate::semigraph::{Ends, Frame, LinkId, SemiGraph, VertexId};

/// An assignment of nonzero group elements to links. Totality is checked
/// against a semi-graph when the coloring is used; properness is a predicate.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub assign: BTreeMap<LinkId, Elem>,
}

impl Coloring {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, l: LinkId, c: Elem) -> Result<()> {
        if c.is_zero() {
            return Err(invalid(format!("link {l}: zero is not a color")));
        }
        self.assign.insert(l, c);
        Ok(())
    }

    pub fn get(&self, l: LinkId) -> Option<Elem> {
        self.assign.get(&l).copied()
    }

    /// Reads a solver assignment back, skipping zeros (deleted links).
    pub(crate) fn from_values(frame: &Frame, values: &[u8]) -> Coloring {
        let assign = frame
            .lids
            .iter()
            .zip(values)
            .filter(|(_, &x)| x != 0)
            .map(|(&l, &x)| (l, Elem::from_bits(x)))
            .collect();
        Coloring { assign }
    }
}

fn check_total(g: &SemiGraph, col: &Coloring, deleted: &BTreeSet<LinkId>) -> Result<()> {
    for l in g.link_ids() {
        if deleted.contains(&l) {
            continue;
        }
        match col.get(l) {
            None => return Err(Error::Partial(l)),
            Some(Elem::Zero) => return Err(invalid(format!("link {l}: zero is not a color"))),
            Some(_) => {}
        }
    }
    Ok(())
}

/// Vertices meeting two links of the same color, ignoring `deleted` links.
pub fn conflicts_after_deletion(
    g: &SemiGraph,
    col: &Coloring,
    deleted: &BTreeSet<LinkId>,
) -> Result<BTreeSet<VertexId>> {
    check_total(g, col, deleted)?;
    let mut seen: BTreeMap<VertexId, Vec<Elem>> = BTreeMap::new();
    for (l, link) in g.links() {
        if deleted.contains(&l) {
            continue;
        }
        let c = col.get(l).expect("checked total");
        match link.ends {
            Ends::Edge(a, b) => {
                seen.entry(a).or_default().push(c);
                seen.entry(b).or_default().push(c);
            }
            Ends::Semi(a) => seen.entry(a).or_default().push(c),
        }
    }
    Ok(seen
        .into_iter()
        .filter(|(_, cs)| {
            let distinct: BTreeSet<_> = cs.iter().collect();
            distinct.len() < cs.len()
        })
        .map(|(v, _)| v)
        .collect())
}

pub fn conflicts(g: &SemiGraph, col: &Coloring) -> Result<BTreeSet<VertexId>> {
    conflicts_after_deletion(g, col, &BTreeSet::new())
}

pub fn is_proper(g: &SemiGraph, col: &Coloring) -> Result<bool> {
    Ok(conflicts(g, col)?.is_empty())
}

/// Deletion set repairing a non-proper coloring: at each conflicted vertex
/// the smallest link sharing its color with another link there.
pub fn repair_set(g: &SemiGraph, col: &Coloring) -> Result<BTreeSet<LinkId>> {
    let mut out = BTreeSet::new();
    for v in conflicts(g, col)? {
        let inc = g.incident(v);
        let offending = inc
            .iter()
            .copied()
            .filter(|&l| inc.iter().any(|&k| k != l && col.get(k) == col.get(l)))
            .min()
            .expect("conflicted vertex has a repeated color");
        out.insert(offending);
    }
    Ok(out)
}

pub fn find_coloring(g: &SemiGraph) -> Option<Coloring> {
    find_coloring_within(g, None).expect("no deadline given")
}

/// Like [`find_coloring`] but gives up with `BudgetExceeded` at `deadline`.
pub fn find_coloring_within(g: &SemiGraph, deadline: Option<Instant>) -> Result<Option<Coloring>> {
    let frame = Frame::new(g);
    let mut s = Solver::new(&frame, Rule::Distinct, NONZERO);
    s.deadline(deadline);
    Ok(s.exists(0)?.then(|| Coloring::from_values(&frame, s.values())))
}

/// Proper colorings of `g` with `fixed` links pinned to given colors.
pub fn find_coloring_with(
    g: &SemiGraph,
    fixed: &BTreeMap<LinkId, Elem>,
) -> Result<Option<Coloring>> {
    let frame = Frame::new(g);
    let mut s = Solver::new(&frame, Rule::Distinct, NONZERO);
    for (&l, &c) in fixed {
        let idx = *frame.lpos.get(&l).ok_or(Error::NoSuchLink(l))?;
        s.set_domain(idx, 1 << c.bits());
    }
    Ok(s.exists(0)?.then(|| Coloring::from_values(&frame, s.values())))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Enumeration {
    /// Every proper coloring.
    pub raw: u128,
    /// Colorings in canonical form: the first link (in id order) colored
    /// `a`, the first link of another color colored `b`.
    pub quotient: u128,
}

/// Is the coloring the canonical representative of its orbit under
/// permutations of the three colors?
pub fn is_canonical(col: &Coloring) -> bool {
    let mut next = 0;
    for c in col.assign.values() {
        let idx = COLORS.iter().position(|x| x == c).expect("nonzero");
        if idx > next {
            return false;
        }
        if idx == next {
            next += 1;
        }
    }
    true
}

/// Visits every proper coloring once, in a deterministic order.
pub fn enumerate_colorings(
    g: &SemiGraph,
    visit: &mut dyn FnMut(&Coloring),
) -> Result<Enumeration> {
    let frame = Frame::new(g);
    let mut s = Solver::new(&frame, Rule::Distinct, NONZERO);
    let mut raw = 0u128;
    let mut quotient = 0u128;
    s.enumerate(&mut |vals| {
        let col = Coloring::from_values(&frame, vals);
        raw += 1;
        if is_canonical(&col) {
            quotient += 1;
        }
        visit(&col);
        false
    })?;
    Ok(Enumeration { raw, quotient })
}

/// Number of proper colorings by frontier dynamic programming, without
/// visiting them.
pub fn count_colorings(g: &SemiGraph) -> u128 {
    let frame = Frame::new(g);
    Solver::new(&frame, Rule::Distinct, NONZERO)
        .count()
        .expect("no deadline given")
}

/// Swaps colors `x` and `y` along the maximal `(x, y)`-chain through
/// `start`.
pub fn kempe_switch(
    g: &SemiGraph,
    col: &Coloring,
    start: LinkId,
    (x, y): (Elem, Elem),
) -> Result<Coloring> {
    if x == y || x.is_zero() || y.is_zero() {
        return Err(invalid("a Kempe chain needs two distinct colors"));
    }
    if !is_proper(g, col)? {
        return Err(invalid("Kempe switches need a proper coloring"));
    }
    let c0 = col.get(start).ok_or(Error::NoSuchLink(start))?;
    if c0 != x && c0 != y {
        return Err(invalid(format!("link {start} has the third color {c0}")));
    }
    let chain = kempe_chain(g, col, start, (x, y))?;
    let mut out = col.clone();
    for l in chain {
        let c = out.assign.get_mut(&l).expect("chain links are colored");
        *c = if *c == x { y } else { x };
    }
    Ok(out)
}

/// Links of the `(x, y)`-chain through `start`.
pub fn kempe_chain(
    g: &SemiGraph,
    col: &Coloring,
    start: LinkId,
    (x, y): (Elem, Elem),
) -> Result<BTreeSet<LinkId>> {
    let mut chain = BTreeSet::from([start]);
    let mut stack = vec![start];
    while let Some(l) = stack.pop() {
        let ends = match g.ends(l)? {
            Ends::Edge(a, b) => vec![a, b],
            Ends::Semi(a) => vec![a],
        };
        for v in ends {
            for k in g.incident(v) {
                let c = col.get(k).ok_or(Error::Partial(k))?;
                if (c == x || c == y) && chain.insert(k) {
                    stack.push(k);
                }
            }
        }
    }
    Ok(chain)
}

/// For each color, the number of boundary links of `X` with that color
/// has the parity of the boundary size.
pub fn parity_check(g: &SemiGraph, col: &Coloring, side: &BTreeSet<VertexId>) -> Result<bool> {
    if !is_proper(g, col)? {
        return Err(invalid("the parity check needs a proper coloring"));
    }
    if !g.is_cubic() {
        return Err(invalid("the parity check needs a cubic semi-graph"));
    }
    let cut = g.boundary(side)?;
    let size = cut.boundary.len();
    Ok(COLORS.iter().all(|&c| {
        let k = cut.boundary.iter().filter(|&&l| col.get(l) == Some(c)).count();
        k % 2 == size % 2
    }))
}

#[derive(Clone, Debug, Serialize)]
pub struct ResistanceWitness {
    pub deleted: BTreeSet<LinkId>,
    pub coloring: Coloring,
}

#[derive(Clone, Debug, Serialize)]
pub struct Resistance {
    /// `None` when the resistance exceeds the budget.
    pub value: Option<u32>,
    pub budget: u32,
    pub witness: Option<ResistanceWitness>,
    pub nodes: u64,
}

/// Exact resistance up to `budget` deletions. The witness deletion set is
/// the lexicographically smallest among the minimum ones.
pub fn resistance(g: &SemiGraph, budget: u32, deadline: Option<Instant>) -> Result<Resistance> {
    let frame = Frame::new(g);
    let mut s = Solver::new(&frame, Rule::Distinct, ANY);
    s.deadline(deadline);
    let value = s.minimize(budget)?;
    let mut nodes = s.stats().nodes;
    let Some(r) = value else {
        return Ok(Resistance {
            value: None,
            budget,
            witness: None,
            nodes,
        });
    };
    // Fix links in id order: delete a link whenever an optimum survives.
    let mut domains = vec![ANY; frame.m()];
    let mut used = 0;
    for idx in 0..frame.m() {
        if used == r {
            domains[idx] = NONZERO;
            continue;
        }
        domains[idx] = ZERO;
        let mut probe = Solver::new(&frame, Rule::Distinct, ANY);
        probe.deadline(deadline);
        for (i, &d) in domains.iter().enumerate() {
            probe.set_domain(i, d);
        }
        let ok = probe.exists(r)?;
        nodes += probe.stats().nodes;
        if ok {
            used += 1;
        } else {
            domains[idx] = NONZERO;
        }
    }
    let mut fin = Solver::new(&frame, Rule::Distinct, ANY);
    fin.deadline(deadline);
    for (i, &d) in domains.iter().enumerate() {
        fin.set_domain(i, d);
    }
    if !fin.exists(r)? {
        return Err(Error::Invalid("witness reconstruction failed".into()));
    }
    nodes += fin.stats().nodes;
    let deleted: BTreeSet<LinkId> = (0..frame.m())
        .filter(|&i| domains[i] == ZERO)
        .map(|i| frame.lids[i])
        .collect();
    let coloring = Coloring::from_values(&frame, fin.values());
    Ok(Resistance {
        value: Some(r),
        budget,
        witness: Some(ResistanceWitness { deleted, coloring }),
        nodes,
    })
}

/// Whether `g` minus the `deleted` links is properly 3-edge-colorable.
pub fn colorable_after_deletion(
    g: &SemiGraph,
    deleted: &BTreeSet<LinkId>,
    deadline: Option<Instant>,
) -> Result<Option<Coloring>> {
    let frame = Frame::new(g);
    let mut s = Solver::new(&frame, Rule::Distinct, NONZERO);
    s.deadline(deadline);
    for &l in deleted {
        let idx = *frame.lpos.get(&l).ok_or(Error::NoSuchLink(l))?;
        s.set_domain(idx, ZERO).free_zero(idx);
    }
    Ok(s.exists(0)?.then(|| Coloring::from_values(&frame, s.values())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::petersen;

    fn triangle_with_stubs() -> (SemiGraph, Vec<LinkId>) {
        let mut g = SemiGraph::with_vertices(3);
        let mut inner = Vec::new();
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            inner.push(g.add_edge(VertexId(a), VertexId(b)).unwrap());
        }
        for v in 0..3 {
            g.add_semi_edge(VertexId(v)).unwrap();
        }
        (g, inner)
    }

    #[test]
    fn triangle_colorings_are_rainbow_inside() {
        let (g, inner) = triangle_with_stubs();
        let e = enumerate_colorings(&g, &mut |c| {
            let cs: BTreeSet<_> = inner.iter().map(|&l| c.get(l).unwrap()).collect();
            assert_eq!(cs.len(), 3);
        })
        .unwrap();
        // Six rainbow triangles; each stub is then forced.
        assert_eq!(e.raw, 6);
        assert_eq!(e.quotient, 1);
        assert_eq!(count_colorings(&g), 6);
    }

    #[test]
    fn petersen_has_no_coloring_and_resistance_two() {
        let p = petersen();
        assert!(find_coloring(&p).is_none());
        let r = resistance(&p, 3, None).unwrap();
        assert_eq!(r.value, Some(2));
        let w = r.witness.unwrap();
        assert_eq!(w.deleted.len(), 2);
        assert!(conflicts_after_deletion(&p, &w.coloring, &w.deleted).unwrap().is_empty());
        let first = p.link_ids().next().unwrap();
        assert!(w.deleted.contains(&first));
        assert_eq!(resistance(&p, 1, None).unwrap().value, None);
    }

    #[test]
    fn partial_colorings_are_rejected() {
        let (g, _) = triangle_with_stubs();
        assert!(matches!(conflicts(&g, &Coloring::new()), Err(Error::Partial(_))));
    }

    #[test]
    fn kempe_switch_on_single_edge_and_involution() {
        let mut g = SemiGraph::with_vertices(2);
        let e = g.add_edge(VertexId(0), VertexId(1)).unwrap();
        let mut col = Coloring::new();
        col.set(e, Elem::A).unwrap();
        let sw = kempe_switch(&g, &col, e, (Elem::A, Elem::B)).unwrap();
        assert_eq!(sw.get(e), Some(Elem::B));
        assert!(kempe_switch(&g, &col, e, (Elem::B, Elem::C)).is_err());

        let (t, inner) = triangle_with_stubs();
        let c = find_coloring(&t).unwrap();
        let x = c.get(inner[0]).unwrap();
        let y = COLORS.into_iter().find(|&z| z != x).unwrap();
        let once = kempe_switch(&t, &c, inner[0], (x, y)).unwrap();
        assert!(is_proper(&t, &once).unwrap());
        assert_eq!(kempe_switch(&t, &once, inner[0], (x, y)).unwrap(), c);
    }

    #[test]
    fn parity_on_a_single_vertex() {
        let (g, _) = triangle_with_stubs();
        let c = find_coloring(&g).unwrap();
        let x = BTreeSet::from([VertexId(0)]);
        assert!(parity_check(&g, &c, &x).unwrap());
    }

    #[test]
    fn repair_removes_every_conflict() {
        let (g, inner) = triangle_with_stubs();
        let mut c = find_coloring(&g).unwrap();
        let c1 = c.get(inner[1]).unwrap();
        c.set(inner[0], c1).unwrap();
        let del = repair_set(&g, &c).unwrap();
        assert!(!del.is_empty());
        assert!(conflicts_after_deletion(&g, &c, &del).unwrap().is_empty());
    }
}
