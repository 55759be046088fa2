//! Explicit near-colorings and witness flows for `Y_i` and `H_n`, assembled
//! level by level from fixed colorings of the gadget `Z`.
//!
//! The near-coloring of `Y_i` is proper everywhere except at the vertex `v`
//! of the first level; on `H_n` the new vertex `x` is a second conflict.
//! The witness flow is nowhere-zero except on `eps_1 .. eps_i`.

use std::collections::{BTreeMap, BTreeSet};

use crate::coloring::{enumerate_colorings, kempe_chain, kempe_switch, Coloring};
use crate::constructions::family::{follow, HGraph, YFamily};
use crate::error::{Error, Result};
use crate::flows::Flow;
use crate::group::{Elem, COLORS};
use crate::search::{Rule, Solver, NONZERO, ZERO};
use crate::semigraph::{Frame, LinkId, SemiGraph};

/// The two colorings of `Z` used by every level.
#[derive(Clone, Debug)]
pub struct ZColorings {
    /// `z1 = z2 = c`, `z3 = a`, `z4 = b`, `z5 = c`, with the `(b, c)`-chain
    /// from `z4` leaving through `z5`.
    pub c_z: Coloring,
    /// `c_z` after switching that chain: `z4 = c`, `z5 = b`.
    pub c_zp: Coloring,
}

/// The first coloring of `z` (in enumeration order) with the required
/// boundary and chain, or `None`.
pub fn z_colorings(z: &SemiGraph) -> Result<Option<ZColorings>> {
    let l = |name: &str| z.labeled(name);
    let (z1, z2, z3, z4, z5) = (l("z1")?, l("z2")?, l("z3")?, l("z4")?, l("z5")?);
    let want = [(z1, Elem::C), (z2, Elem::C), (z3, Elem::A), (z4, Elem::B), (z5, Elem::C)];
    let mut candidates = Vec::new();
    enumerate_colorings(z, &mut |col| {
        if want.iter().all(|&(l, x)| col.get(l) == Some(x)) {
            candidates.push(col.clone());
        }
    })?;
    for c_z in candidates {
        if kempe_chain(z, &c_z, z4, (Elem::B, Elem::C))?.contains(&z5) {
            let c_zp = kempe_switch(z, &c_z, z4, (Elem::B, Elem::C))?;
            return Ok(Some(ZColorings { c_z, c_zp }));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Mode {
    Coloring,
    Flow,
}

impl Mode {
    /// Value given to every `eps_j`.
    fn eps(self) -> Elem {
        match self {
            Mode::Coloring => Elem::A,
            Mode::Flow => Elem::Zero,
        }
    }
}

struct Assembly<'a> {
    g: &'a SemiGraph,
    resolve: &'a BTreeMap<LinkId, LinkId>,
    val: BTreeMap<LinkId, Elem>,
}

impl Assembly<'_> {
    fn put(&mut self, l: LinkId, x: Elem) -> Result<()> {
        let f = follow(self.resolve, l);
        match self.val.insert(f, x) {
            Some(old) if old != x => Err(Error::Construction(format!(
                "link {f} gets both {old} and {x}"
            ))),
            _ => Ok(()),
        }
    }

    fn value_of(&self, l: LinkId) -> Option<Elem> {
        self.val.get(&follow(self.resolve, l)).copied()
    }
}

fn assemble(
    y: &YFamily,
    g: &SemiGraph,
    resolve: &BTreeMap<LinkId, LinkId>,
    mode: Mode,
) -> Result<BTreeMap<LinkId, Elem>> {
    let zc = z_colorings(&y.z)?
        .ok_or_else(|| Error::Construction("Z has no coloring of the required shape".into()))?;
    let mut asm = Assembly {
        g,
        resolve,
        val: BTreeMap::new(),
    };
    for level in &y.levels {
        let second = if level.index == 1 { &zc.c_z } else { &zc.c_zp };
        for (&l, &x) in &zc.c_z.assign {
            asm.put(level.z.link(l), x)?;
        }
        for (&l, &x) in &second.assign {
            asm.put(level.zp.link(l), x)?;
        }
        match &level.m {
            Some(em) => fill_m(&mut asm, y, em, mode)?,
            None => fill_gadget(&mut asm, level, mode)?,
        }
    }
    for l in g.link_ids() {
        if !asm.val.contains_key(&l) {
            return Err(Error::Partial(l));
        }
    }
    Ok(asm.val)
}

/// Interior of `M` at level 1: a nowhere-zero flow agreeing with the
/// already fixed values on `e1 .. e4`, with `e5` set to zero.
fn fill_m(
    asm: &mut Assembly<'_>,
    y: &YFamily,
    em: &crate::semigraph::Embedding,
    mode: Mode,
) -> Result<()> {
    let m = &y.m;
    let frame = Frame::new(m);
    let mut s = Solver::new(&frame, Rule::ZeroSum, NONZERO);
    for name in ["e1", "e2", "e3", "e4"] {
        let l = m.labeled(name)?;
        let x = asm
            .value_of(em.link(l))
            .ok_or_else(|| Error::Construction(format!("{name} is not fixed by Z")))?;
        s.set_domain(frame.lpos[&l], 1 << x.bits());
    }
    let e5 = m.labeled("e5")?;
    s.set_domain(frame.lpos[&e5], ZERO).free_zero(frame.lpos[&e5]);
    if !s.exists(0)? {
        return Err(Error::Construction("M has no flow with the boundary given by Z".into()));
    }
    let values = s.values().to_vec();
    for (i, &l) in frame.lids.iter().enumerate() {
        if l == e5 {
            asm.put(em.link(l), mode.eps())?;
        } else {
            asm.put(em.link(l), Elem::from_bits(values[i]))?;
        }
    }
    Ok(())
}

/// Links among the six joining vertices of a level: the first assignment,
/// in lexicographic order over `a < b < c`, that is proper (or
/// conservative) at all six.
fn fill_gadget(asm: &mut Assembly<'_>, level: &crate::constructions::Level, mode: Mode) -> Result<()> {
    let (eps_i, internal) = level.free.split_last().expect("a level has links");
    asm.put(*eps_i, mode.eps())?;
    let internal: Vec<LinkId> = internal.iter().map(|&l| follow(asm.resolve, l)).collect();
    let total = COLORS.len().pow(internal.len() as u32);
    for code in 0..total {
        let mut c = code;
        let mut vals = vec![Elem::Zero; internal.len()];
        for slot in vals.iter_mut().rev() {
            *slot = COLORS[c % 3];
            c /= 3;
        }
        let ok = level.gadget.iter().all(|&w| {
            let xs: Vec<Option<Elem>> = asm
                .g
                .incident(w)
                .into_iter()
                .map(|l| match internal.iter().position(|&k| k == l) {
                    Some(i) => Some(vals[i]),
                    None => asm.val.get(&l).copied(),
                })
                .collect();
            if xs.iter().any(Option::is_none) {
                return false;
            }
            let xs: Vec<Elem> = xs.into_iter().flatten().collect();
            match mode {
                Mode::Coloring => xs.iter().collect::<BTreeSet<_>>().len() == xs.len(),
                Mode::Flow => xs.iter().fold(Elem::Zero, |a, &b| a + b).is_zero(),
            }
        });
        if ok {
            for (&l, &x) in internal.iter().zip(&vals) {
                asm.put(l, x)?;
            }
            return Ok(());
        }
    }
    Err(Error::Construction(format!(
        "no assignment of the joining links at level {}",
        level.index
    )))
}

fn to_coloring(val: BTreeMap<LinkId, Elem>) -> Coloring {
    Coloring { assign: val }
}

fn to_flow(val: BTreeMap<LinkId, Elem>) -> Flow {
    Flow { assign: val }
}

/// Near-coloring of `Y_i` whose only conflict is at `y.v`.
pub fn near_coloring_y(y: &YFamily) -> Result<Coloring> {
    assemble(y, &y.graph, &y.resolve, Mode::Coloring).map(to_coloring)
}

/// Near-coloring of `H_n` with conflicts at `v` and `x` only.
pub fn near_coloring_h(h: &HGraph) -> Result<Coloring> {
    assemble(&h.y, &h.graph, &h.resolve, Mode::Coloring).map(to_coloring)
}

/// Flow on `Y_i` that is zero exactly on `eps_1 .. eps_i`.
pub fn witness_flow_y(y: &YFamily) -> Result<Flow> {
    assemble(y, &y.graph, &y.resolve, Mode::Flow).map(to_flow)
}

/// Flow on `H_n` that is zero exactly on `eps_1 .. eps_n`.
pub fn witness_flow_h(h: &HGraph) -> Result<Flow> {
    assemble(&h.y, &h.graph, &h.resolve, Mode::Flow).map(to_flow)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::conflicts;
    use crate::constructions::{build_h, build_y, build_z, GadgetWiring};
    use crate::flows::is_flow;

    #[test]
    fn z_colorings_have_the_switched_boundary() {
        let z = build_z();
        let zc = z_colorings(&z).unwrap().unwrap();
        let get = |c: &Coloring, n: &str| c.get(z.labeled(n).unwrap()).unwrap();
        assert_eq!(get(&zc.c_zp, "z4"), Elem::C);
        assert_eq!(get(&zc.c_zp, "z5"), Elem::B);
        assert_eq!(get(&zc.c_zp, "z1"), Elem::C);
    }

    #[test]
    fn recipes_on_small_levels() {
        let w = GadgetWiring::frozen();
        for i in 1..=3 {
            let y = build_y(i, &w).unwrap();
            let c = near_coloring_y(&y).unwrap();
            assert_eq!(conflicts(&y.graph, &c).unwrap(), BTreeSet::from([y.v]));
            let f = witness_flow_y(&y).unwrap();
            assert!(is_flow(&y.graph, &f).unwrap());
            let eps: BTreeSet<LinkId> = y.eps_links().unwrap().into_iter().collect();
            assert_eq!(f.zeros(), eps);
        }
        let h = build_h(2, &w).unwrap();
        let c = near_coloring_h(&h).unwrap();
        assert_eq!(conflicts(&h.graph, &c).unwrap(), BTreeSet::from([h.y.v, h.x]));
        let f = witness_flow_h(&h).unwrap();
        assert!(is_flow(&h.graph, &f).unwrap());
        assert_eq!(f.zero_count(), 2);
    }
}
