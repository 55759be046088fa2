//! Membership in the star product `G1 (v1,e1) * (v2,e2) G2`: remove `v_i`,
//! trim `e_i`, and join the two remnants by five edges so that the result
//! is cubic. The check searches for a split of `G` into the two remnants.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::iso::{induced_embeddings, is_isomorphic};
use crate::semigraph::{Ends, LinkId, SemiGraph, VertexId};

/// `g` with `e` trimmed and `v` removed: five stubs, three from `v`.
pub fn star_remnant(g: &SemiGraph, v: VertexId, e: LinkId) -> Result<SemiGraph> {
    match g.ends(e)? {
        Ends::Edge(a, b) if a == v || b == v => {
            return Err(invalid(format!("edge {e} is incident to vertex {v}")))
        }
        Ends::Edge(..) => {}
        Ends::Semi(_) => return Err(Error::NotAnEdge(e)),
    }
    let mut r = g.clone();
    r.trim(e)?;
    r.remove_vertex(v)?;
    Ok(r)
}

/// A split of `G` into the two remnants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StarWitness {
    /// Vertices of `G` forming the copy of `G1`'s remnant.
    pub side1: BTreeSet<VertexId>,
    pub side2: BTreeSet<VertexId>,
    /// The five edges between the two sides.
    pub connecting: BTreeSet<LinkId>,
}

/// Whether `g` lies in `G1 (v1,e1) * (v2,e2) G2`, with a witness split.
pub fn star_membership(
    g: &SemiGraph,
    (g1, v1, e1): (&SemiGraph, VertexId, LinkId),
    (g2, v2, e2): (&SemiGraph, VertexId, LinkId),
) -> Result<Option<StarWitness>> {
    let r1 = star_remnant(g1, v1, e1)?;
    let r2 = star_remnant(g2, v2, e2)?;
    if !g.is_graph() || !g.is_cubic() || g.order() != r1.order() + r2.order() {
        return Ok(None);
    }
    if g.edge_count() != r1.edge_count() + r2.edge_count() + 5 {
        return Ok(None);
    }
    let (small, big, small_is_first) = if r1.order() <= r2.order() {
        (&r1, &r2, true)
    } else {
        (&r2, &r1, false)
    };
    let mut found = None;
    induced_embeddings(small, g, &mut |map| {
        let image: BTreeSet<VertexId> = map.values().copied().collect();
        let rest: BTreeSet<VertexId> = g.vertices().filter(|v| !image.contains(v)).collect();
        let Ok(other) = g.induced(&rest) else {
            return false;
        };
        if is_isomorphic(&other, big).is_none() {
            return false;
        }
        let Ok(cut) = g.boundary(&image) else {
            return false;
        };
        let (side1, side2) = if small_is_first {
            (image, rest)
        } else {
            (rest, image)
        };
        found = Some(StarWitness {
            side1,
            side2,
            connecting: cut.boundary.into_iter().collect(),
        });
        true
    });
    Ok(found)
}

/// A member of the star product chosen by matching the five stubs of the
/// two remnants by a uniformly random bijection.
pub fn random_member<R: Rng>(
    (g1, v1, e1): (&SemiGraph, VertexId, LinkId),
    (g2, v2, e2): (&SemiGraph, VertexId, LinkId),
    rng: &mut R,
) -> Result<SemiGraph> {
    let r1 = star_remnant(g1, v1, e1)?;
    let r2 = star_remnant(g2, v2, e2)?;
    let mut g = SemiGraph::new();
    let a = g.absorb(&r1, false)?;
    let b = g.absorb(&r2, false)?;
    let s1: Vec<LinkId> = r1.semi_edges().into_iter().map(|l| a.link(l)).collect();
    let mut s2: Vec<LinkId> = r2.semi_edges().into_iter().map(|l| b.link(l)).collect();
    s2.shuffle(rng);
    for (x, y) in s1.into_iter().zip(s2) {
        g.merge(x, y)?;
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{kneser_vertex, petersen};

    fn petersen_pair() -> (SemiGraph, VertexId, LinkId) {
        let p = petersen();
        let v = kneser_vertex(1, 2);
        let e = p
            .link_ids()
            .find(|&l| {
                matches!(p.ends(l).unwrap(), Ends::Edge(a, b)
                    if p.distance(v, crate::semigraph::Target::Vertex(a)).unwrap() == Some(2)
                    && p.distance(v, crate::semigraph::Target::Vertex(b)).unwrap() == Some(2))
            })
            .unwrap();
        (p, v, e)
    }

    #[test]
    fn remnant_shape() {
        let (p, v, e) = petersen_pair();
        let r = star_remnant(&p, v, e).unwrap();
        assert_eq!((r.order(), r.edge_count(), r.semi_edge_count()), (9, 11, 5));
        assert!(star_remnant(&p, v, p.incident(v)[0]).is_err());
    }

    #[test]
    fn wrong_order_is_rejected_quickly() {
        let (p, v, e) = petersen_pair();
        assert_eq!(star_membership(&p, (&p, v, e), (&p, v, e)).unwrap(), None);
    }
}
