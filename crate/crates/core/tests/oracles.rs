//! Cross-checks against small, independent reference implementations that
//! share no code with the library's solvers.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use snarkforge::coloring::{count_colorings, enumerate_colorings, find_coloring};
use snarkforge::connectivity::{cyclic_connectivity_at_least, girth_cut, Method};
use snarkforge::constructions::recipe::witness_flow_h;
use snarkforge::constructions::{
    build_h, build_j, build_m, build_n, build_y, build_z, petersen, petersen_minus_path, petersen_minus_vertex_and_edge, GadgetWiring,
};
use snarkforge::flows::flow_resistance;
use snarkforge::io::{from_graph6, to_graph6};
use snarkforge::iso::is_isomorphic;
use snarkforge::{Ends, LinkId, SemiGraph, VertexId};

/// Plain link list: endpoints of each link, semi-edges have one.
struct Plain {
    ids: Vec<LinkId>,
    ends: Vec<Vec<usize>>,
    n: usize,
}

fn plain(g: &SemiGraph) -> Plain {
    let index: BTreeMap<VertexId, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    // breadth-first link order keeps the naive search local
    let mut seen = BTreeSet::new();
    let mut ids = Vec::new();
    let mut queue: VecDeque<VertexId> = g.vertices().take(1).collect();
    let mut visited: BTreeSet<VertexId> = queue.iter().copied().collect();
    while let Some(v) = queue.pop_front() {
        for l in g.incident(v) {
            if seen.insert(l) {
                ids.push(l);
            }
            if let Ends::Edge(a, b) = g.ends(l).unwrap() {
                let u = if a == v { b } else { a };
                if visited.insert(u) {
                    queue.push_back(u);
                }
            }
        }
        if queue.is_empty() {
            if let Some(u) = g.vertices().find(|u| !visited.contains(u)) {
                visited.insert(u);
                queue.push_back(u);
            }
        }
    }
    let ends = ids
        .iter()
        .map(|&l| match g.ends(l).unwrap() {
            Ends::Edge(a, b) => vec![index[&a], index[&b]],
            Ends::Semi(a) => vec![index[&a]],
        })
        .collect();
    Plain { ids, ends, n: g.order() }
}

/// Visits every proper 3-edge-coloring (colors 1..=3) of the links not in
/// `skip`; stops early when `visit` returns true.
fn naive_colorings(p: &Plain, skip: &BTreeSet<LinkId>, visit: &mut dyn FnMut(&BTreeMap<LinkId, u8>) -> bool) -> bool {
    fn go(
        p: &Plain,
        skip: &BTreeSet<LinkId>,
        i: usize,
        used: &mut Vec<u8>,
        cur: &mut BTreeMap<LinkId, u8>,
        visit: &mut dyn FnMut(&BTreeMap<LinkId, u8>) -> bool,
    ) -> bool {
        if i == p.ids.len() {
            return visit(cur);
        }
        if skip.contains(&p.ids[i]) {
            return go(p, skip, i + 1, used, cur, visit);
        }
        for c in 1..=3u8 {
            let bit = 1 << c;
            if p.ends[i].iter().any(|&v| used[v] & bit != 0) || (p.ends[i].len() == 2 && p.ends[i][0] == p.ends[i][1]) {
                continue;
            }
            for &v in &p.ends[i] {
                used[v] |= bit;
            }
            cur.insert(p.ids[i], c);
            let stop = go(p, skip, i + 1, used, cur, visit);
            cur.remove(&p.ids[i]);
            for &v in &p.ends[i] {
                used[v] &= !bit;
            }
            if stop {
                return true;
            }
        }
        false
    }
    go(p, skip, 0, &mut vec![0; p.n], &mut BTreeMap::new(), visit)
}

fn naive_colorable(p: &Plain, skip: &BTreeSet<LinkId>) -> bool {
    naive_colorings(p, skip, &mut |_| true)
}

fn all_colorings(g: &SemiGraph) -> Vec<BTreeMap<LinkId, u8>> {
    let mut out = Vec::new();
    naive_colorings(&plain(g), &BTreeSet::new(), &mut |c| {
        out.push(c.clone());
        false
    });
    out
}

fn petersen_edges(p: &SemiGraph) -> Vec<(VertexId, VertexId, LinkId)> {
    p.link_ids()
        .map(|l| match p.ends(l).unwrap() {
            Ends::Edge(a, b) => (a, b, l),
            Ends::Semi(_) => unreachable!(),
        })
        .collect()
}

#[test]
fn coloring_counts_match_the_reference() {
    let w = GadgetWiring::frozen();
    let graphs = [
        petersen(),
        build_z(),
        build_m(),
        build_n(),
        build_y(1, &w).unwrap().graph,
    ];
    for g in &graphs {
        let reference = all_colorings(g).len() as u128;
        assert_eq!(count_colorings(g), reference);
        let mut seen = 0u128;
        let stats = enumerate_colorings(g, &mut |_| seen += 1).unwrap();
        assert_eq!((stats.raw, seen), (reference, reference));
        assert_eq!(find_coloring(g).is_some(), reference > 0);
    }
    assert_eq!(all_colorings(&petersen()).len(), 0);
}

#[test]
fn m_property_holds_for_every_two_path_of_petersen() {
    let p = petersen();
    let mut paths = 0;
    for w in p.vertices() {
        let nb = p.neighbors(w);
        for i in 0..3 {
            for j in i + 1..3 {
                let (m, s) = petersen_minus_path(nb[i], w, nb[j]).unwrap();
                assert_eq!((m.order(), m.semi_edge_count()), (7, 5));
                let cols = all_colorings(&m);
                assert!(!cols.is_empty());
                for c in &cols {
                    assert!(c[&s[0]] == c[&s[1]] || c[&s[2]] == c[&s[3]]);
                }
                paths += 1;
            }
        }
    }
    assert_eq!(paths, 30);
}

#[test]
fn n_property_holds_for_every_vertex_and_distant_edge() {
    let p = petersen();
    let mut cases = 0;
    for v in p.vertices() {
        let mut close: BTreeSet<VertexId> = p.neighbors(v).into_iter().collect();
        close.insert(v);
        for (a, b, e) in petersen_edges(&p) {
            if close.contains(&a) || close.contains(&b) {
                assert!(petersen_minus_vertex_and_edge(v, e).is_err());
                continue;
            }
            let (n, s) = petersen_minus_vertex_and_edge(v, e).unwrap();
            let cols = all_colorings(&n);
            assert!(!cols.is_empty());
            assert!(cols.iter().all(|c| c[&s[0]] != c[&s[1]]));
            cases += 1;
        }
    }
    assert_eq!(cases, 60);
}

#[test]
fn z_boundary_behaviour_by_reference_enumeration() {
    let z = build_z();
    let l = |s: &str| z.labeled(s).unwrap();
    let cols = all_colorings(&z);
    assert!(!cols.is_empty());
    for c in &cols {
        assert_eq!(c[&l("z1")], c[&l("z2")]);
        let t: BTreeSet<u8> = ["z3", "z4", "z5"].iter().map(|s| c[&l(s)]).collect();
        assert_eq!(t.len(), 3);
    }
}

#[test]
fn resistance_of_small_graphs_by_reference_search() {
    let w = GadgetWiring::frozen();
    // minimum deletions found by trying every set of size 0, 1, 2
    let min_deletions = |g: &SemiGraph| -> usize {
        let p = plain(g);
        let ids: Vec<LinkId> = g.link_ids().collect();
        if naive_colorable(&p, &BTreeSet::new()) {
            return 0;
        }
        if ids.iter().any(|&l| naive_colorable(&p, &BTreeSet::from([l]))) {
            return 1;
        }
        for i in 0..ids.len() {
            for j in i + 1..ids.len() {
                if naive_colorable(&p, &BTreeSet::from([ids[i], ids[j]])) {
                    return 2;
                }
            }
        }
        3
    };
    assert_eq!(min_deletions(&petersen()), 2);
    assert_eq!(min_deletions(&build_y(1, &w).unwrap().graph), 1);
    assert_eq!(min_deletions(&build_h(1, &w).unwrap().graph), 2);
}

/// Minimum number of zeros over all Z2 x Z2 flows of a graph, by running
/// through the whole flow space spanned by fundamental cycles.
fn reference_flow_resistance(g: &SemiGraph) -> usize {
    assert!(g.is_graph() && g.is_connected());
    let p = plain(g);
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; p.n];
    let mut seen = vec![false; p.n];
    let mut tree = vec![false; p.ids.len()];
    let mut adj = vec![Vec::new(); p.n];
    for (i, e) in p.ends.iter().enumerate() {
        adj[e[0]].push((e[1], i));
        adj[e[1]].push((e[0], i));
    }
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for &(u, i) in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                tree[i] = true;
                parent[u] = Some((v, i));
                queue.push_back(u);
            }
        }
    }
    let root_path = |mut v: usize| {
        let mut links = BTreeSet::new();
        while let Some((u, i)) = parent[v] {
            links.insert(i);
            v = u;
        }
        links
    };
    let cycles: Vec<BTreeSet<usize>> = (0..p.ids.len())
        .filter(|&i| !tree[i])
        .map(|i| {
            let a = root_path(p.ends[i][0]);
            let b = root_path(p.ends[i][1]);
            let mut c: BTreeSet<usize> = a.symmetric_difference(&b).copied().collect();
            c.insert(i);
            c
        })
        .collect();
    let k = cycles.len();
    assert!(k <= 10, "flow space too large for the reference");
    let mut best = usize::MAX;
    for code in 0..4usize.pow(k as u32) {
        let mut val = vec![0u8; p.ids.len()];
        for (j, c) in cycles.iter().enumerate() {
            let x = ((code >> (2 * j)) & 3) as u8;
            for &i in c {
                val[i] ^= x;
            }
        }
        best = best.min(val.iter().filter(|&&x| x == 0).count());
    }
    best
}

#[test]
fn flow_resistance_of_small_graphs_by_reference_enumeration() {
    let prism = {
        let mut g = SemiGraph::with_vertices(6);
        for (a, b) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)] {
            g.add_edge(VertexId(a), VertexId(b)).unwrap();
        }
        g
    };
    for g in [petersen(), prism] {
        let want = reference_flow_resistance(&g);
        let got = flow_resistance(&g, 3, None, None).unwrap().value;
        assert_eq!(got, Some(want as u32));
    }
    assert_eq!(reference_flow_resistance(&petersen()), 1);
}

#[test]
fn witness_flows_conserve_at_every_vertex() {
    let w = GadgetWiring::frozen();
    for n in 1..=6 {
        let h = build_h(n, &w).unwrap();
        let f = witness_flow_h(&h).unwrap();
        let mut sum: BTreeMap<VertexId, u8> = BTreeMap::new();
        let mut zeros = 0;
        for l in h.graph.link_ids() {
            let x = f.get(l).expect("every link valued").bits();
            zeros += usize::from(x == 0);
            match h.graph.ends(l).unwrap() {
                Ends::Edge(a, b) => {
                    *sum.entry(a).or_default() ^= x;
                    *sum.entry(b).or_default() ^= x;
                }
                Ends::Semi(a) => *sum.entry(a).or_default() ^= x,
            }
        }
        assert!(sum.values().all(|&s| s == 0), "H_{n}");
        assert_eq!(zeros, n);
    }
}

fn find(d: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while d[r] != r {
        r = d[r];
    }
    let mut y = x;
    while d[y] != r {
        let nx = d[y];
        d[y] = r;
        y = nx;
    }
    r
}

/// Components with a cycle once the links at positions `removed` are gone.
fn cyclic_parts(p: &Plain, removed: &[usize]) -> usize {
    let mut dsu: Vec<usize> = (0..p.n).collect();
    let live = |i: &usize| !removed.contains(i);
    for i in (0..p.ids.len()).filter(live) {
        let (a, b) = (find(&mut dsu, p.ends[i][0]), find(&mut dsu, p.ends[i][1]));
        dsu[a] = b;
    }
    let mut verts = vec![0usize; p.n];
    let mut edges = vec![0usize; p.n];
    for v in 0..p.n {
        verts[find(&mut dsu, v)] += 1;
    }
    for i in (0..p.ids.len()).filter(live) {
        edges[find(&mut dsu, p.ends[i][0])] += 1;
    }
    (0..p.n).filter(|&r| verts[r] > 0 && edges[r] >= verts[r]).count()
}

/// Smallest edge set whose removal leaves two components that each contain
/// a cycle, searched up to size `max`.
fn reference_cyclic_cut(g: &SemiGraph, max: usize) -> Option<usize> {
    let p = plain(g);
    let m = p.ids.len();
    for k in 1..=max {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            if cyclic_parts(&p, &idx) >= 2 {
                return Some(k);
            }
            let mut i = k;
            while i > 0 && idx[i - 1] == m - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    None
}

#[test]
fn cyclic_connectivity_matches_edge_set_reference() {
    let w = GadgetWiring::frozen();
    let graphs = [
        ("petersen", petersen()),
        ("H_1", build_h(1, &w).unwrap().graph),
        ("J", build_j(&w).unwrap().graph),
    ];
    for (name, g) in &graphs {
        assert_eq!(reference_cyclic_cut(g, 4), None, "{name}");
        let lib = cyclic_connectivity_at_least(g, 5, Method::Exhaustive).unwrap();
        assert!(lib.holds, "{name}");
        let cut = girth_cut(g, 5).unwrap().expect("a five-cut");
        let p = plain(g);
        let removed: Vec<usize> = (0..p.ids.len()).filter(|&i| cut.cut.contains(&p.ids[i])).collect();
        assert_eq!(removed.len(), 5, "{name}");
        assert!(cyclic_parts(&p, &removed) >= 2, "{name}");
    }
    let k33 = {
        let mut g = SemiGraph::with_vertices(6);
        for a in 0..3 {
            for b in 3..6 {
                g.add_edge(VertexId(a), VertexId(b)).unwrap();
            }
        }
        g
    };
    // K33 has no cyclic cut at all; the prism has one of size 3
    assert_eq!(reference_cyclic_cut(&k33, 9), None);
    assert!(!cyclic_connectivity_at_least(&k33, 5, Method::Exhaustive).unwrap().holds);
}

/// Decodes graph6 for orders below 63, straight from the format
/// description.
fn reference_graph6(s: &str) -> (usize, BTreeSet<(usize, usize)>) {
    let bytes: Vec<u8> = s.trim_end().bytes().map(|b| b - 63).collect();
    let n = bytes[0] as usize;
    assert!(n < 63);
    let bits: Vec<bool> = bytes[1..].iter().flat_map(|&b| (0..6).rev().map(move |k| b >> k & 1 == 1)).collect();
    let mut edges = BTreeSet::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                edges.insert((i, j));
            }
            k += 1;
        }
    }
    (n, edges)
}

#[test]
fn graph6_agrees_with_reference_decoder() {
    let w = GadgetWiring::frozen();
    for g in [petersen(), build_h(1, &w).unwrap().graph, build_j(&w).unwrap().graph] {
        let s = to_graph6(&g).unwrap();
        let (n, edges) = reference_graph6(&s);
        let p = plain(&g);
        let want: BTreeSet<(usize, usize)> = p.ends.iter().map(|e| (e[0].min(e[1]), e[0].max(e[1]))).collect();
        assert_eq!(n, g.order());
        assert_eq!(edges, want);
        assert!(from_graph6(&s).unwrap().same_structure(&g) || is_isomorphic(&from_graph6(&s).unwrap(), &g).is_some());
    }
    // the usual published encoding of the Petersen graph
    let published = "IheA@GUAo";
    let (n, edges) = reference_graph6(published);
    assert_eq!((n, edges.len()), (10, 15));
    let g = from_graph6(published).unwrap();
    assert!(g.is_cubic() && g.girth() == Some(5));
    assert!(is_isomorphic(&g, &petersen()).is_some());
}
