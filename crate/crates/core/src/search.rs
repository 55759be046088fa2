//! Exact search over assignments of `{0, a, b, c}` to the links of a
//! semi-graph, shared by the coloring and flow solvers.
//!
//! Vertices are eliminated one at a time in a fixed order. When a vertex is
//! processed, its still-unassigned links get values and its local rule is
//! checked. The links joining processed to unprocessed vertices form the
//! frontier; everything still to come depends only on their values, so
//! failed frontier states are memoized together with the budget they failed
//! under. Each zero value costs one unit and the search looks for an
//! assignment of minimum cost, deepening the budget one unit at a time.

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use crate::error::{Error, Result};
use crate::semigraph::{Frame, NONE};

/// Domain bit masks: bit `x` set means value `x` is allowed.
pub const ZERO: u8 = 0b0001;
pub const NONZERO: u8 = 0b1110;
pub const ANY: u8 = 0b1111;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Rule {
    /// Nonzero values at a vertex are pairwise distinct; zeros are ignored.
    /// With zeros read as deletions this is proper edge coloring.
    Distinct,
    /// Values at a vertex add up to zero.
    ZeroSum,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Stats {
    pub nodes: u64,
    pub memo_states: u64,
}

struct Step {
    v: usize,
    /// Links first assigned at this step: semi-edges at `v` and edges to
    /// vertices processed later.
    fresh: Vec<usize>,
    /// Links at `v` assigned at earlier steps.
    settled: Vec<usize>,
    /// Frontier after this step, ascending.
    frontier: Vec<usize>,
}

pub struct Solver {
    rule: Rule,
    domains: Vec<u8>,
    counted: Vec<bool>,
    steps: Vec<Step>,
    symmetric: bool,
    values: Vec<u8>,
    fail_memo: Vec<HashMap<u128, u32>>,
    deadline: Option<Instant>,
    stats: Stats,
}

/// Greedy elimination order: prefer vertices whose links mostly close
/// frontier links, keeping the frontier narrow. Several start vertices are
/// tried and the order with the smallest peak frontier wins.
fn elimination_order(frame: &Frame) -> Vec<usize> {
    let n = frame.n();
    if n == 0 {
        return Vec::new();
    }
    let starts: Vec<usize> = if n <= 16 {
        (0..n).collect()
    } else {
        (0..16).map(|i| i * n / 16).collect()
    };
    let mut best: Option<((usize, usize), Vec<usize>)> = None;
    for s in starts {
        let order = greedy_from(frame, s);
        let widths = frontier_widths(frame, &order);
        let score = (
            widths.iter().copied().max().unwrap_or(0),
            widths.iter().sum(),
        );
        if best.as_ref().is_none_or(|(b, _)| score < *b) {
            best = Some((score, order));
        }
    }
    best.expect("at least one start").1
}

fn greedy_from(frame: &Frame, start: usize) -> Vec<usize> {
    let n = frame.n();
    let mut done = vec![false; n];
    // closing[u] counts links from u to processed vertices.
    let mut closing = vec![0i64; n];
    let edge_deg: Vec<i64> = (0..n)
        .map(|u| frame.inc[u].iter().filter(|&&l| !frame.is_semi(l)).count() as i64)
        .collect();
    let mut order = Vec::with_capacity(n);
    let mut next = Some(start);
    while let Some(v) = next {
        done[v] = true;
        order.push(v);
        for &l in &frame.inc[v] {
            let w = frame.other(l, v);
            if w != NONE && !done[w] {
                closing[w] += 1;
            }
        }
        next = (0..n).filter(|&u| !done[u]).min_by_key(|&u| {
            let opened = edge_deg[u] - closing[u];
            (closing[u] == 0, opened - closing[u], -closing[u], u)
        });
    }
    order
}

fn frontier_widths(frame: &Frame, order: &[usize]) -> Vec<usize> {
    let mut pos = vec![0usize; frame.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let mut delta = vec![0i64; order.len() + 1];
    for &[a, b] in &frame.ends {
        if b == NONE {
            continue;
        }
        let (x, y) = (pos[a].min(pos[b]), pos[a].max(pos[b]));
        delta[x] += 1;
        delta[y] -= 1;
    }
    let mut acc = 0i64;
    delta[..order.len()]
        .iter()
        .map(|d| {
            acc += d;
            acc as usize
        })
        .collect()
}

impl Solver {
    /// A solver where every link starts with domain `domain`.
    pub fn new(frame: &Frame, rule: Rule, domain: u8) -> Self {
        let m = frame.m();
        let order = elimination_order(frame);
        let mut pos = vec![0usize; frame.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut steps = Vec::with_capacity(order.len());
        let mut frontier: Vec<usize> = Vec::new();
        for (i, &v) in order.iter().enumerate() {
            let mut fresh = Vec::new();
            let mut settled = Vec::new();
            for &l in &frame.inc[v] {
                let w = frame.other(l, v);
                if w != NONE && pos[w] < i {
                    settled.push(l);
                } else {
                    fresh.push(l);
                }
            }
            frontier.retain(|l| !settled.contains(l));
            frontier.extend(fresh.iter().filter(|&&l| !frame.is_semi(l)));
            frontier.sort_unstable();
            steps.push(Step {
                v,
                fresh,
                settled,
                frontier: frontier.clone(),
            });
        }
        let mut s = Solver {
            rule,
            domains: vec![domain; m],
            counted: vec![true; m],
            steps,
            symmetric: true,
            values: vec![0; m],
            fail_memo: Vec::new(),
            deadline: None,
            stats: Stats::default(),
        };
        s.reset();
        s
    }

    pub fn restrict(&mut self, link: usize, mask: u8) -> &mut Self {
        self.domains[link] &= mask;
        self.reset();
        self
    }

    pub fn set_domain(&mut self, link: usize, mask: u8) -> &mut Self {
        self.domains[link] = mask;
        self.reset();
        self
    }

    /// Zeros on this link do not count towards the cost.
    pub fn free_zero(&mut self, link: usize) -> &mut Self {
        self.counted[link] = false;
        self.reset();
        self
    }

    pub fn deadline(&mut self, deadline: Option<Instant>) -> &mut Self {
        self.deadline = deadline;
        self
    }

    pub fn stats(&self) -> Stats {
        Stats {
            nodes: self.stats.nodes,
            memo_states: self.fail_memo.iter().map(|m| m.len() as u64).sum(),
        }
    }

    pub fn max_frontier(&self) -> usize {
        self.steps.iter().map(|s| s.frontier.len()).max().unwrap_or(0)
    }

    fn reset(&mut self) {
        self.symmetric = self
            .domains
            .iter()
            .all(|&d| matches!(d, ANY | NONZERO | ZERO));
        self.fail_memo = (0..=self.steps.len()).map(|_| HashMap::new()).collect();
    }

    /// Memo key for the frontier before step `k`. With a symmetric problem
    /// the nonzero values are renamed in order of first appearance, since
    /// permuting `a, b, c` is an automorphism of the group.
    fn key(&self, k: usize) -> Option<u128> {
        if k == 0 {
            return Some(0);
        }
        let frontier = &self.steps[k - 1].frontier;
        if frontier.len() > 64 {
            return None;
        }
        let mut rename = [0u8, 0, 0, 0];
        let mut next = 1u8;
        let mut key = 0u128;
        for &l in frontier {
            let mut x = self.values[l];
            if self.symmetric && x != 0 {
                if rename[x as usize] == 0 {
                    rename[x as usize] = next;
                    next += 1;
                }
                x = rename[x as usize];
            }
            key = (key << 2) | x as u128;
        }
        Some(key)
    }

    fn tick(&mut self) -> Result<()> {
        self.stats.nodes += 1;
        if self.stats.nodes.is_multiple_of(4096) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    return Err(Error::BudgetExceeded);
                }
            }
        }
        Ok(())
    }

    /// Summary of the already-assigned links at step `k`: a used-color mask
    /// for `Distinct`, the running sum for `ZeroSum`. `None` if the settled
    /// values already violate the rule.
    fn settled_state(&self, k: usize) -> Option<u8> {
        let mut acc = 0u8;
        for &l in &self.steps[k].settled {
            let x = self.values[l];
            match self.rule {
                Rule::Distinct => {
                    if x != 0 {
                        if acc & (1 << x) != 0 {
                            return None;
                        }
                        acc |= 1 << x;
                    }
                }
                Rule::ZeroSum => acc ^= x,
            }
        }
        Some(acc)
    }

    fn admits(&self, acc: u8, x: u8) -> Option<u8> {
        match self.rule {
            Rule::Distinct if x == 0 => Some(acc),
            Rule::Distinct if acc & (1 << x) != 0 => None,
            Rule::Distinct => Some(acc | (1 << x)),
            Rule::ZeroSum => Some(acc ^ x),
        }
    }

    fn closes(&self, acc: u8) -> bool {
        match self.rule {
            Rule::Distinct => true,
            Rule::ZeroSum => acc == 0,
        }
    }

    /// Finds a minimum-cost assignment with cost at most `max_cost`.
    /// Returns the cost; the assignment is then available from
    /// [`values`](Self::values).
    pub fn minimize(&mut self, max_cost: u32) -> Result<Option<u32>> {
        for budget in 0..=max_cost {
            if self.feasible(0, budget)? {
                return Ok(Some(budget));
            }
        }
        Ok(None)
    }

    /// Whether any assignment exists with cost at most `budget`.
    pub fn exists(&mut self, budget: u32) -> Result<bool> {
        self.feasible(0, budget)
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    fn feasible(&mut self, k: usize, budget: u32) -> Result<bool> {
        if k == self.steps.len() {
            return Ok(true);
        }
        self.tick()?;
        let key = self.key(k);
        if let Some(key) = key {
            if self.fail_memo[k].get(&key).is_some_and(|&lb| lb > budget) {
                return Ok(false);
            }
        }
        let found = match self.settled_state(k) {
            Some(acc) => self.assign_fresh(k, 0, acc, budget)?,
            None => false,
        };
        if !found {
            if let Some(key) = key {
                let e = self.fail_memo[k].entry(key).or_insert(0);
                *e = (*e).max(budget + 1);
            }
        }
        Ok(found)
    }

    fn assign_fresh(&mut self, k: usize, i: usize, acc: u8, budget: u32) -> Result<bool> {
        let fresh_len = self.steps[k].fresh.len();
        if i == fresh_len {
            return if self.closes(acc) {
                self.feasible(k + 1, budget)
            } else {
                Ok(false)
            };
        }
        let l = self.steps[k].fresh[i];
        let dom = self.domains[l];
        let last = i + 1 == fresh_len;
        for x in [1u8, 2, 3, 0] {
            if dom & (1 << x) == 0 {
                continue;
            }
            if last && self.rule == Rule::ZeroSum && acc ^ x != 0 {
                continue;
            }
            let cost = u32::from(x == 0 && self.counted[l]);
            if cost > budget {
                continue;
            }
            let Some(next) = self.admits(acc, x) else {
                continue;
            };
            self.values[l] = x;
            if self.assign_fresh(k, i + 1, next, budget - cost)? {
                return Ok(true);
            }
        }
        self.values[l] = 0;
        Ok(false)
    }

    /// Number of valid assignments (costs ignored).
    pub fn count(&mut self) -> Result<u128> {
        let mut memo: Vec<HashMap<u128, u128>> = (0..=self.steps.len()).map(|_| HashMap::new()).collect();
        self.count_from(0, &mut memo)
    }

    fn count_from(&mut self, k: usize, memo: &mut Vec<HashMap<u128, u128>>) -> Result<u128> {
        if k == self.steps.len() {
            return Ok(1);
        }
        self.tick()?;
        let key = self.key(k);
        if let Some(key) = key {
            if let Some(&c) = memo[k].get(&key) {
                return Ok(c);
            }
        }
        let total = match self.settled_state(k) {
            Some(acc) => self.count_fresh(k, 0, acc, memo)?,
            None => 0,
        };
        if let Some(key) = key {
            memo[k].insert(key, total);
        }
        Ok(total)
    }

    fn count_fresh(&mut self, k: usize, i: usize, acc: u8, memo: &mut Vec<HashMap<u128, u128>>) -> Result<u128> {
        if i == self.steps[k].fresh.len() {
            return if self.closes(acc) {
                self.count_from(k + 1, memo)
            } else {
                Ok(0)
            };
        }
        let l = self.steps[k].fresh[i];
        let dom = self.domains[l];
        let mut total = 0;
        for x in 0u8..4 {
            if dom & (1 << x) == 0 {
                continue;
            }
            if let Some(next) = self.admits(acc, x) {
                self.values[l] = x;
                total += self.count_fresh(k, i + 1, next, memo)?;
            }
        }
        self.values[l] = 0;
        Ok(total)
    }

    /// Visits every valid assignment (costs ignored) in a deterministic
    /// order. The visitor returns `true` to stop early.
    pub fn enumerate(&mut self, visit: &mut dyn FnMut(&[u8]) -> bool) -> Result<()> {
        let mut dead: Vec<HashSet<u128>> = (0..=self.steps.len()).map(|_| HashSet::new()).collect();
        self.enum_from(0, &mut dead, visit)?;
        Ok(())
    }

    /// Returns (found any, stop requested).
    fn enum_from(
        &mut self,
        k: usize,
        dead: &mut Vec<HashSet<u128>>,
        visit: &mut dyn FnMut(&[u8]) -> bool,
    ) -> Result<(bool, bool)> {
        if k == self.steps.len() {
            return Ok((true, visit(&self.values)));
        }
        self.tick()?;
        let key = self.key(k);
        if let Some(key) = key {
            if dead[k].contains(&key) {
                return Ok((false, false));
            }
        }
        let r = match self.settled_state(k) {
            Some(acc) => self.enum_fresh(k, 0, acc, dead, visit)?,
            None => (false, false),
        };
        if !r.0 {
            if let Some(key) = key {
                dead[k].insert(key);
            }
        }
        Ok(r)
    }

    fn enum_fresh(
        &mut self,
        k: usize,
        i: usize,
        acc: u8,
        dead: &mut Vec<HashSet<u128>>,
        visit: &mut dyn FnMut(&[u8]) -> bool,
    ) -> Result<(bool, bool)> {
        if i == self.steps[k].fresh.len() {
            return if self.closes(acc) {
                self.enum_from(k + 1, dead, visit)
            } else {
                Ok((false, false))
            };
        }
        let l = self.steps[k].fresh[i];
        let dom = self.domains[l];
        let mut any = false;
        for x in 0u8..4 {
            if dom & (1 << x) == 0 {
                continue;
            }
            if let Some(next) = self.admits(acc, x) {
                self.values[l] = x;
                let (found, stop) = self.enum_fresh(k, i + 1, next, dead, visit)?;
                any |= found;
                if stop {
                    return Ok((any, true));
                }
            }
        }
        self.values[l] = 0;
        Ok((any, false))
    }

    /// Vertex processed at each step, for diagnostics.
    pub fn order(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.v).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::petersen;
    use crate::semigraph::{SemiGraph, VertexId};

    fn brute(frame: &Frame, rule: Rule, domain: u8) -> (u128, Option<u32>) {
        let m = frame.m();
        let mut count = 0;
        let mut best: Option<u32> = None;
        let mut vals = vec![0u8; m];
        let total = 4u64.pow(m as u32);
        for code in 0..total {
            let mut c = code;
            let mut ok = true;
            for v in vals.iter_mut() {
                *v = (c % 4) as u8;
                c /= 4;
                if domain & (1 << *v) == 0 {
                    ok = false;
                }
            }
            if !ok {
                continue;
            }
            let good = (0..frame.n()).all(|v| {
                let xs: Vec<u8> = frame.inc[v].iter().map(|&l| vals[l]).collect();
                match rule {
                    Rule::ZeroSum => xs.iter().fold(0, |a, &x| a ^ x) == 0,
                    Rule::Distinct => {
                        let nz: Vec<u8> = xs.into_iter().filter(|&x| x != 0).collect();
                        let mut s = nz.clone();
                        s.sort_unstable();
                        s.dedup();
                        s.len() == nz.len()
                    }
                }
            });
            if good {
                count += 1;
                let zeros = vals.iter().filter(|&&x| x == 0).count() as u32;
                best = Some(best.map_or(zeros, |b| b.min(zeros)));
            }
        }
        (count, best)
    }

    fn small_graphs() -> Vec<SemiGraph> {
        let mut out = Vec::new();
        let mut k4 = SemiGraph::with_vertices(4);
        for a in 0..4u32 {
            for b in a + 1..4 {
                k4.add_edge(VertexId(a), VertexId(b)).unwrap();
            }
        }
        out.push(k4);
        let mut theta = SemiGraph::with_vertices(2);
        for _ in 0..3 {
            theta.add_edge(VertexId(0), VertexId(1)).unwrap();
        }
        out.push(theta);
        let mut tri = SemiGraph::with_vertices(3);
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            tri.add_edge(VertexId(a), VertexId(b)).unwrap();
        }
        for v in 0..3 {
            tri.add_semi_edge(VertexId(v)).unwrap();
        }
        out.push(tri);
        let mut dumbbell = SemiGraph::with_vertices(2);
        dumbbell.add_edge(VertexId(0), VertexId(1)).unwrap();
        dumbbell.add_semi_edge(VertexId(0)).unwrap();
        dumbbell.add_semi_edge(VertexId(0)).unwrap();
        dumbbell.add_semi_edge(VertexId(1)).unwrap();
        out.push(dumbbell);
        out
    }

    #[test]
    fn agrees_with_brute_force_on_small_cases() {
        for g in small_graphs() {
            let frame = Frame::new(&g);
            for rule in [Rule::Distinct, Rule::ZeroSum] {
                for domain in [NONZERO, ANY] {
                    let (count, best) = brute(&frame, rule, domain);
                    let mut s = Solver::new(&frame, rule, domain);
                    assert_eq!(s.count().unwrap(), count, "{rule:?} {domain:b}");
                    let mut seen = 0u128;
                    s.enumerate(&mut |_| {
                        seen += 1;
                        false
                    })
                    .unwrap();
                    assert_eq!(seen, count);
                    let mut s = Solver::new(&frame, rule, domain);
                    assert_eq!(s.minimize(frame.m() as u32).unwrap(), best);
                }
            }
        }
    }

    #[test]
    fn petersen_is_not_colorable_but_two_deletions_suffice() {
        let p = petersen();
        let frame = Frame::new(&p);
        let mut s = Solver::new(&frame, Rule::Distinct, NONZERO);
        assert!(!s.exists(0).unwrap());
        let mut s = Solver::new(&frame, Rule::Distinct, ANY);
        assert_eq!(s.minimize(15).unwrap(), Some(2));
        // A single zero suffices for a flow: P minus an edge, with the two
        // degree-two vertices suppressed, is a bridgeless cubic graph on
        // eight vertices and hence 3-edge-colorable.
        let mut s = Solver::new(&frame, Rule::ZeroSum, ANY);
        assert_eq!(s.minimize(15).unwrap(), Some(1));
    }

    #[test]
    fn deadline_in_the_past_exceeds_budget() {
        let p = petersen();
        let frame = Frame::new(&p);
        let mut s = Solver::new(&frame, Rule::Distinct, ANY);
        s.deadline(Some(Instant::now()));
        let mut hit = false;
        for _ in 0..10 {
            if matches!(s.count(), Err(Error::BudgetExceeded)) {
                hit = true;
                break;
            }
        }
        assert!(hit || s.stats().nodes < 4096);
    }
}
