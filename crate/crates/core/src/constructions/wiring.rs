//! The joining pattern used by every `Y_i` step and by `J`, and the
//! bounded search that selects it.

use std::collections::BTreeSet;
use std::time::Instant;

use log::{debug, info};
use serde::{Deserialize, Serialize};

use crate::coloring::{conflicts, find_coloring_within};
use crate::connectivity::{cyclic_connectivity_at_least, Method};
use crate::constructions::family::{build_h, build_y, h_from_y, j_from_k, J_SPLITS};
use crate::constructions::recipe::{near_coloring_h, near_coloring_y, witness_flow_h, witness_flow_y, z_colorings};
use crate::constructions::star::star_membership;
use crate::constructions::{build_k, build_z_variant};
use crate::error::{Error, Result};
use crate::flows::{flow_resistance, is_flow};
use crate::semigraph::{LinkId, SemiGraph, Target};

/// Number of incidences each joining vertex has before internal edges:
/// `[z3, g], [z4, a], [z3', d], [z5, z5'], [z4'], [b]`.
const PRESCRIBED: [usize; 6] = [2, 2, 2, 2, 1, 1];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GadgetWiring {
    /// Which of the 8 equivalent labellings of `M` is used.
    pub m_variant: u8,
    /// Which of the 12 equivalent labellings of `N` is used.
    pub n_variant: u8,
    /// Joining vertex (0..6) receiving `eps_{i-1}`.
    pub eps_in: u8,
    /// Joining vertex whose last free incidence becomes `eps_i`.
    pub eps_out: u8,
    /// The three edges among the joining vertices.
    pub internal: [[u8; 2]; 3],
    /// Bit 0 swaps `alpha_i`/`beta_i`, bit 1 swaps `gamma_i`/`delta_i`,
    /// bit 2 exchanges the roles of the two copies of `Z`.
    pub outputs: u8,
    /// Index into the ten ways of choosing the two stubs of `J` merged
    /// into `e2`.
    pub j_split: u8,
}

impl GadgetWiring {
    /// The wiring selected by [`search_wiring`]; the search is replayed by
    /// the test suite and the registry stores a digest of it.
    pub const FROZEN: GadgetWiring = GadgetWiring {
        m_variant: 1,
        n_variant: 0,
        eps_in: 4,
        eps_out: 5,
        internal: [[0, 2], [1, 3], [4, 5]],
        outputs: 0,
        j_split: 4,
    };

    pub fn frozen() -> GadgetWiring {
        Self::FROZEN
    }

    /// Capacity and range checks; building then cannot fail on shape.
    pub fn check_shape(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Construction(format!("wiring: {m}")));
        if self.m_variant >= 8 || self.n_variant >= 12 || self.outputs >= 8 {
            return bad("variant out of range");
        }
        if self.j_split as usize >= J_SPLITS.len() {
            return bad("stub split out of range");
        }
        if self.eps_in >= 6 || self.eps_out >= 6 {
            return bad("joining vertex out of range");
        }
        let mut used = PRESCRIBED;
        used[self.eps_in as usize] += 1;
        used[self.eps_out as usize] += 1;
        let mut seen = BTreeSet::new();
        for [p, q] in self.internal {
            if p >= 6 || q >= 6 || p == q || !seen.insert((p.min(q), p.max(q))) {
                return bad("internal edges must be distinct non-loops");
            }
            used[p as usize] += 1;
            used[q as usize] += 1;
        }
        if used.iter().any(|&u| u != 3) {
            return bad("joining vertices must end up cubic");
        }
        Ok(())
    }
}

impl Default for GadgetWiring {
    fn default() -> Self {
        Self::FROZEN
    }
}

/// Result of the wiring search.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub wiring: GadgetWiring,
    /// Candidates examined before the accepted one, in search order.
    pub candidates: u64,
    /// The checks the accepted wiring passed.
    pub checks: Vec<String>,
}

/// Names of the checks a wiring must pass, in the order they are run.
pub const CHECKS: [&str; 12] = [
    "Z has a coloring with a chain from z4 to z5",
    "H_1 simple with d(x, pi) >= 3",
    "H_1 cyclically 5-edge-connected",
    "Y_2 near-coloring has one conflict",
    "Y_2 witness flow has two zeros",
    "H_2 simple, girth >= 5, d(x, pi) >= 3",
    "Y_2 not colorable",
    "r_f(Y_2) = 2",
    "H_2 cyclically 5-edge-connected",
    "J round trip, d(e2, v2) = 2",
    "J cyclically 5-edge-connected",
    "H_2 in H_1 * J",
];

/// Internal edge sets for given `eps_in`/`eps_out`, in lexicographic order.
fn internal_choices(eps_in: u8, eps_out: u8) -> Vec<[[u8; 2]; 3]> {
    let mut free = [0usize; 6];
    for (i, f) in free.iter_mut().enumerate() {
        *f = 3 - PRESCRIBED[i];
    }
    if free[eps_in as usize] == 0 {
        return Vec::new();
    }
    free[eps_in as usize] -= 1;
    if free[eps_out as usize] == 0 {
        return Vec::new();
    }
    free[eps_out as usize] -= 1;
    let pairs: Vec<[u8; 2]> = (0..6u8)
        .flat_map(|p| (p + 1..6).map(move |q| [p, q]))
        .collect();
    let mut out = Vec::new();
    for a in 0..pairs.len() {
        for b in a + 1..pairs.len() {
            for c in b + 1..pairs.len() {
                let mut deg = [0usize; 6];
                for [p, q] in [pairs[a], pairs[b], pairs[c]] {
                    deg[p as usize] += 1;
                    deg[q as usize] += 1;
                }
                if deg == free {
                    out.push([pairs[a], pairs[b], pairs[c]]);
                }
            }
        }
    }
    out
}

fn pi_far_from_x(h: &crate::constructions::HGraph) -> Result<bool> {
    Ok(h.graph.distance(h.x, Target::Edge(h.pi))?.is_none_or(|d| d >= 3))
}

fn cyclic5(g: &SemiGraph) -> Result<bool> {
    Ok(cyclic_connectivity_at_least(g, 5, Method::Exhaustive)?.holds)
}

/// Checks that depend only on the gadget labellings.
fn gadget_stage(w: &GadgetWiring) -> Result<bool> {
    let z = build_z_variant(w.m_variant, w.n_variant);
    if z_colorings(&z)?.is_none() {
        return Ok(false);
    }
    let y1 = build_y(1, w)?;
    let Ok(c) = near_coloring_y(&y1) else {
        return Ok(false);
    };
    if conflicts(&y1.graph, &c)? != BTreeSet::from([y1.v]) || witness_flow_y(&y1).is_err() {
        return Ok(false);
    }
    let h1 = build_h(1, w)?;
    if !h1.graph.is_simple() || !pi_far_from_x(&h1)? {
        return Ok(false);
    }
    cyclic5(&h1.graph)
}

/// Everything about `Y_2` and `H_2` except `J`.
fn level_stage(w: &GadgetWiring, deadline: Option<Instant>) -> Result<bool> {
    let y2 = match build_y(2, w) {
        Ok(y) => y,
        Err(Error::Construction(_)) => return Ok(false),
        Err(e) => return Err(e),
    };
    let Ok(c2) = near_coloring_y(&y2) else {
        return Ok(false);
    };
    if conflicts(&y2.graph, &c2)? != BTreeSet::from([y2.v]) {
        return Ok(false);
    }
    let Ok(phi) = witness_flow_y(&y2) else {
        return Ok(false);
    };
    let eps: BTreeSet<LinkId> = y2.eps_links()?.into_iter().collect();
    if !is_flow(&y2.graph, &phi)? || phi.zeros() != eps {
        return Ok(false);
    }
    let h2 = h_from_y(y2.clone())?;
    if !h2.graph.is_simple() || h2.graph.girth().is_some_and(|g| g < 5) || !pi_far_from_x(&h2)? {
        return Ok(false);
    }
    let Ok(ch) = near_coloring_h(&h2) else {
        return Ok(false);
    };
    if conflicts(&h2.graph, &ch)? != BTreeSet::from([h2.y.v, h2.x]) || witness_flow_h(&h2).is_err() {
        return Ok(false);
    }
    if find_coloring_within(&y2.graph, deadline)?.is_some() {
        return Ok(false);
    }
    if flow_resistance(&y2.graph, 2, deadline, Some(&phi))?.value != Some(2) {
        return Ok(false);
    }
    cyclic5(&h2.graph)
}

/// The `J` stage: returns the first stub split that works.
fn j_stage(w: &GadgetWiring) -> Result<Option<u8>> {
    let k = build_k(w)?;
    let h1 = build_h(1, w)?;
    let h2 = build_h(2, w)?;
    for split in 0..J_SPLITS.len() as u8 {
        let j = j_from_k(k.clone(), split)?;
        if !j.graph.is_simple() || !j.round_trip_holds() {
            continue;
        }
        if j.graph.distance(j.v2, Target::Edge(j.e2))? != Some(2) {
            continue;
        }
        if !cyclic5(&j.graph)? {
            continue;
        }
        if star_membership(&h2.graph, (&h1.graph, h1.x, h1.pi), (&j.graph, j.v2, j.e2))?.is_some() {
            return Ok(Some(split));
        }
    }
    Ok(None)
}

/// Runs the bounded wiring search in a fixed order and returns the first
/// wiring passing every check in [`CHECKS`].
pub fn search_wiring(deadline: Option<Instant>) -> Result<SearchOutcome> {
    let mut tried = 0u64;
    for m_variant in 0..8u8 {
        for n_variant in 0..12u8 {
            let base = GadgetWiring {
                m_variant,
                n_variant,
                ..GadgetWiring::FROZEN
            };
            if !gadget_stage(&base)? {
                debug!("gadget labelling ({m_variant}, {n_variant}) rejected");
                continue;
            }
            for eps_in in 0..6u8 {
                for eps_out in 0..6u8 {
                    for internal in internal_choices(eps_in, eps_out) {
                        for outputs in 0..8u8 {
                            tried += 1;
                            let w = GadgetWiring {
                                m_variant,
                                n_variant,
                                eps_in,
                                eps_out,
                                internal,
                                outputs,
                                j_split: 0,
                            };
                            if deadline.is_some_and(|d| Instant::now() > d) {
                                return Err(Error::BudgetExceeded);
                            }
                            if !level_stage(&w, deadline)? {
                                continue;
                            }
                            if let Some(j_split) = j_stage(&w)? {
                                let wiring = GadgetWiring { j_split, ..w };
                                info!("accepted wiring {wiring:?} after {tried} candidates");
                                return Ok(SearchOutcome {
                                    wiring,
                                    candidates: tried,
                                    checks: CHECKS.iter().map(|s| s.to_string()).collect(),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Err(Error::Construction("no wiring passes the checks".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn search_reproduces_the_frozen_wiring() {
        let out = search_wiring(None).unwrap();
        assert_eq!(out.wiring, GadgetWiring::FROZEN);
        assert_eq!(out.checks.len(), CHECKS.len());
    }

    #[test]
    fn frozen_wiring_has_a_valid_shape() {
        GadgetWiring::frozen().check_shape().unwrap();
    }

    #[test]
    fn capacities_limit_the_choices() {
        for eps_in in 0..6 {
            for eps_out in 0..6 {
                for internal in internal_choices(eps_in, eps_out) {
                    let w = GadgetWiring {
                        eps_in,
                        eps_out,
                        internal,
                        ..GadgetWiring::FROZEN
                    };
                    w.check_shape().unwrap();
                }
            }
        }
        assert!(internal_choices(0, 0).is_empty());
        assert!(!internal_choices(4, 5).is_empty());
    }

    #[test]
    fn bad_shapes_are_rejected() {
        let mut w = GadgetWiring::frozen();
        w.internal[0] = [0, 0];
        assert!(w.check_shape().is_err());
        let w = GadgetWiring {
            eps_in: 0,
            ..GadgetWiring::frozen()
        };
        assert!(w.check_shape().is_err());
    }
}
