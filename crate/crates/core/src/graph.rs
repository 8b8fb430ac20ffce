//! Reductions from biclique-partitioned graphs (and r-partite-partitioned
//! r-graphs) to partial classes, plus the exact chromatic-number and
//! biclique-partition-number oracles used to validate them.
//!
//! The reduction sends vertex `v` to the partial function telling, per part,
//! on which side of the part `v` sits. Any net of the resulting class yields
//! a proper colouring, so the covering number dominates the chromatic
//! number while the VC dimension stays at most 1.

use std::collections::HashMap;

use crate::class::{PartialClass, PartialFunction, Symbol};
use crate::error::{Error, Result};
use crate::net::covering_number_exact;

/// A simple undirected graph with vertices `0..vertex_count`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Graph> {
        let mut normalised = Vec::with_capacity(edges.len());
        for (u, w) in edges {
            if u == w {
                return Err(Error::validation(format!("self-loop at vertex {u}")));
            }
            if u >= vertex_count || w >= vertex_count {
                return Err(Error::validation(format!(
                    "edge ({u}, {w}) out of range for {vertex_count} vertices"
                )));
            }
            normalised.push((u.min(w), u.max(w)));
        }
        normalised.sort_unstable();
        for w in normalised.windows(2) {
            if w[0] == w[1] {
                return Err(Error::validation(format!(
                    "duplicate edge ({}, {})",
                    w[0].0, w[0].1
                )));
            }
        }
        Ok(Graph { vertex_count, edges: normalised })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, u: usize, w: usize) -> bool {
        self.edges.binary_search(&(u.min(w), u.max(w))).is_ok()
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &(a, b) in &self.edges {
                let other = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if !seen[other] {
                    seen[other] = true;
                    stack.push(other);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// One biclique of a partition: two disjoint vertex sets whose complete
/// bipartite edge set belongs to the partition.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BicliquePart {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl BicliquePart {
    pub fn new(mut left: Vec<usize>, mut right: Vec<usize>) -> BicliquePart {
        left.sort_unstable();
        right.sort_unstable();
        BicliquePart { left, right }
    }

    fn edge_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.left
            .iter()
            .flat_map(move |&l| self.right.iter().map(move |&r| (l.min(r), l.max(r))))
    }
}

/// A graph together with a validated partition of its edge set into
/// complete bipartite pieces.
#[derive(Clone, Debug)]
pub struct BicliquePartitionedGraph {
    graph: Graph,
    parts: Vec<BicliquePart>,
}

impl BicliquePartitionedGraph {
    pub fn new(graph: Graph, parts: Vec<BicliquePart>) -> Result<BicliquePartitionedGraph> {
        let mut covered: HashMap<(usize, usize), usize> = HashMap::new();
        for (idx, part) in parts.iter().enumerate() {
            for set in [&part.left, &part.right] {
                for w in set.windows(2) {
                    if w[0] == w[1] {
                        return Err(Error::validation(format!(
                            "part {idx} lists vertex {} twice",
                            w[0]
                        )));
                    }
                }
                if let Some(&v) = set.last() {
                    if v >= graph.vertex_count {
                        return Err(Error::validation(format!(
                            "part {idx} references vertex {v} outside the graph"
                        )));
                    }
                }
            }
            if let Some(&v) = part.left.iter().find(|v| part.right.binary_search(v).is_ok()) {
                return Err(Error::validation(format!(
                    "part {idx} has vertex {v} on both sides"
                )));
            }
            for (u, w) in part.edge_pairs() {
                if !graph.has_edge(u, w) {
                    return Err(Error::validation(format!(
                        "part {idx} requires edge ({u}, {w}) which is not in the graph"
                    )));
                }
                if let Some(prev) = covered.insert((u, w), idx) {
                    return Err(Error::validation(format!(
                        "edge ({u}, {w}) is covered by parts {prev} and {idx}"
                    )));
                }
            }
        }
        for &(u, w) in &graph.edges {
            if !covered.contains_key(&(u, w)) {
                return Err(Error::validation(format!(
                    "edge ({u}, {w}) is not covered by any part"
                )));
            }
        }
        Ok(BicliquePartitionedGraph { graph, parts })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn parts(&self) -> &[BicliquePart] {
        &self.parts
    }
}

/// An r-uniform hypergraph with vertices `0..vertex_count`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Hypergraph {
    uniformity: u8,
    vertex_count: usize,
    edges: Vec<Vec<usize>>,
}

impl Hypergraph {
    pub fn new(uniformity: u8, vertex_count: usize, edges: Vec<Vec<usize>>) -> Result<Hypergraph> {
        if uniformity < 2 {
            return Err(Error::validation(format!(
                "uniformity must be at least 2, got {uniformity}"
            )));
        }
        let mut normalised = Vec::with_capacity(edges.len());
        for e in edges {
            let mut e: Vec<usize> = e;
            e.sort_unstable();
            if e.len() != uniformity as usize {
                return Err(Error::validation(format!(
                    "edge {e:?} has {} vertices, expected {uniformity}",
                    e.len()
                )));
            }
            if e.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::validation(format!("edge {e:?} repeats a vertex")));
            }
            if *e.last().unwrap() >= vertex_count {
                return Err(Error::validation(format!(
                    "edge {e:?} out of range for {vertex_count} vertices"
                )));
            }
            normalised.push(e);
        }
        normalised.sort_unstable();
        for w in normalised.windows(2) {
            if w[0] == w[1] {
                return Err(Error::validation(format!("duplicate edge {:?}", w[0])));
            }
        }
        Ok(Hypergraph { uniformity, vertex_count, edges: normalised })
    }

    pub fn uniformity(&self) -> u8 {
        self.uniformity
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }
}

/// One complete r-partite piece of a hypergraph edge partition: `r`
/// pairwise-disjoint vertex sets whose transversals form the piece.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HyperPart {
    pub sides: Vec<Vec<usize>>,
}

impl HyperPart {
    pub fn new(sides: Vec<Vec<usize>>) -> HyperPart {
        let mut sides = sides;
        for s in &mut sides {
            s.sort_unstable();
        }
        HyperPart { sides }
    }

    /// All transversal edges (one vertex from each side), as sorted vectors.
    fn transversals(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut pick = vec![0usize; self.sides.len()];
        if self.sides.iter().any(|s| s.is_empty()) {
            return out;
        }
        loop {
            let mut e: Vec<usize> =
                pick.iter().enumerate().map(|(i, &p)| self.sides[i][p]).collect();
            e.sort_unstable();
            out.push(e);
            let mut i = 0;
            loop {
                if i == pick.len() {
                    return out;
                }
                pick[i] += 1;
                if pick[i] < self.sides[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
        }
    }
}

/// A hypergraph with a validated partition of its edge set into complete
/// r-partite pieces.
#[derive(Clone, Debug)]
pub struct PartitionedHypergraph {
    hypergraph: Hypergraph,
    parts: Vec<HyperPart>,
}

impl PartitionedHypergraph {
    pub fn new(hypergraph: Hypergraph, parts: Vec<HyperPart>) -> Result<PartitionedHypergraph> {
        let r = hypergraph.uniformity as usize;
        let mut covered: HashMap<Vec<usize>, usize> = HashMap::new();
        for (idx, part) in parts.iter().enumerate() {
            if part.sides.len() != r {
                return Err(Error::validation(format!(
                    "part {idx} has {} sides, expected {r}",
                    part.sides.len()
                )));
            }
            let mut seen: HashMap<usize, usize> = HashMap::new();
            for (side_idx, side) in part.sides.iter().enumerate() {
                for w in side.windows(2) {
                    if w[0] == w[1] {
                        return Err(Error::validation(format!(
                            "part {idx} side {side_idx} lists vertex {} twice",
                            w[0]
                        )));
                    }
                }
                for &v in side {
                    if v >= hypergraph.vertex_count {
                        return Err(Error::validation(format!(
                            "part {idx} references vertex {v} outside the hypergraph"
                        )));
                    }
                    if let Some(other) = seen.insert(v, side_idx) {
                        return Err(Error::validation(format!(
                            "part {idx} has vertex {v} on sides {other} and {side_idx}"
                        )));
                    }
                }
            }
            for e in part.transversals() {
                if hypergraph.edges.binary_search(&e).is_err() {
                    return Err(Error::validation(format!(
                        "part {idx} requires edge {e:?} which is not in the hypergraph"
                    )));
                }
                if let Some(prev) = covered.insert(e.clone(), idx) {
                    return Err(Error::validation(format!(
                        "edge {e:?} is covered by parts {prev} and {idx}"
                    )));
                }
            }
        }
        for e in &hypergraph.edges {
            if !covered.contains_key(e) {
                return Err(Error::validation(format!("edge {e:?} is not covered by any part")));
            }
        }
        Ok(PartitionedHypergraph { hypergraph, parts })
    }

    pub fn hypergraph(&self) -> &Hypergraph {
        &self.hypergraph
    }

    pub fn parts(&self) -> &[HyperPart] {
        &self.parts
    }
}

/// A class built from a partition, keeping the per-vertex functions so twin
/// vertices (which collapse in the class) stay reportable.
#[derive(Clone, Debug)]
pub struct ClassConstruction {
    pub class: PartialClass,
    /// Function assigned to each vertex, indexed by vertex id (pre-collapse).
    pub vertex_functions: Vec<PartialFunction>,
    pub distinct_members: usize,
}

/// Vertex `v` maps to the partial function with value 1 on parts where `v`
/// is on the left, 2 where it is on the right, undefined elsewhere.
/// Requires at least one part so the class has positive arity.
pub fn class_from_partition(g: &BicliquePartitionedGraph) -> Result<ClassConstruction> {
    let n = g.parts.len();
    if n == 0 {
        return Err(Error::validation(
            "class construction requires at least one part; pad edgeless graphs with an empty part",
        ));
    }
    let vertex_functions: Vec<PartialFunction> = (0..g.graph.vertex_count)
        .map(|v| {
            PartialFunction::new(
                g.parts
                    .iter()
                    .map(|part| {
                        if part.left.binary_search(&v).is_ok() {
                            Symbol::value(1)
                        } else if part.right.binary_search(&v).is_ok() {
                            Symbol::value(2)
                        } else {
                            Symbol::STAR
                        }
                    })
                    .collect(),
            )
        })
        .collect();
    let class = PartialClass::new(2, n, vertex_functions.iter().cloned())?;
    let distinct_members = class.len();
    Ok(ClassConstruction { class, vertex_functions, distinct_members })
}

/// The r-ary analogue: the value at part `i` is the 1-based side index of
/// the vertex in that part, undefined when absent.
pub fn class_from_hypergraph_partition(g: &PartitionedHypergraph) -> Result<ClassConstruction> {
    let n = g.parts.len();
    if n == 0 {
        return Err(Error::validation(
            "class construction requires at least one part; pad edgeless hypergraphs with an empty part",
        ));
    }
    let r = g.hypergraph.uniformity;
    let vertex_functions: Vec<PartialFunction> = (0..g.hypergraph.vertex_count)
        .map(|v| {
            PartialFunction::new(
                g.parts
                    .iter()
                    .map(|part| {
                        for (side_idx, side) in part.sides.iter().enumerate() {
                            if side.binary_search(&v).is_ok() {
                                return Symbol::value(side_idx as u8 + 1);
                            }
                        }
                        Symbol::STAR
                    })
                    .collect(),
            )
        })
        .collect();
    let class = PartialClass::new(r, n, vertex_functions.iter().cloned())?;
    let distinct_members = class.len();
    Ok(ClassConstruction { class, vertex_functions, distinct_members })
}

/// An exact chromatic number with a witness colouring (colours `0..chi`).
#[derive(Clone, Debug)]
pub struct ColoringResult {
    pub chi: usize,
    pub coloring: Vec<usize>,
}

/// Exact chromatic number of a graph (budget bounds the vertex count).
pub fn chromatic_number(g: &Graph, budget: u64) -> Result<ColoringResult> {
    let edges: Vec<Vec<usize>> = g.edges.iter().map(|&(u, w)| vec![u, w]).collect();
    weak_chromatic_number(g.vertex_count, &edges, budget)
}

/// Exact weak chromatic number of an r-graph: the minimum number of colours
/// such that every edge contains two differently coloured vertices.
pub fn hypergraph_chromatic_number(g: &Hypergraph, budget: u64) -> Result<ColoringResult> {
    weak_chromatic_number(g.vertex_count, &g.edges, budget)
}

/// Shared solver. For 2-uniform edges the weak condition is exactly proper
/// colouring. Branch and bound: clique (pairwise 2-uniform adjacency) lower
/// bound, greedy upper bound, then k-colourability backtracking with the
/// usual new-colour symmetry break.
pub fn weak_chromatic_number(
    vertex_count: usize,
    edges: &[Vec<usize>],
    budget: u64,
) -> Result<ColoringResult> {
    if vertex_count as u64 > budget {
        return Err(Error::resource(
            format!("exact chromatic number limited to {budget} vertices, got {vertex_count}"),
            budget,
        ));
    }
    if vertex_count == 0 {
        return Ok(ColoringResult { chi: 0, coloring: Vec::new() });
    }
    if edges.is_empty() {
        return Ok(ColoringResult { chi: 1, coloring: vec![0; vertex_count] });
    }

    // Pairwise adjacency from 2-uniform edges feeds the clique lower bound
    // and a fast conflict check; larger edges are checked directly.
    let mut adj = vec![0u64; vertex_count];
    let mut big_edges: Vec<&Vec<usize>> = Vec::new();
    for e in edges {
        if e.len() == 2 {
            adj[e[0]] |= 1 << e[1];
            adj[e[1]] |= 1 << e[0];
        } else {
            big_edges.push(e);
        }
    }
    let lb = if big_edges.len() == edges.len() {
        2 // any nonempty weak instance needs two colours
    } else {
        max_clique(&adj, vertex_count).max(2)
    };

    // Vertex order: descending degree (count of incident edges).
    let mut degree = vec![0usize; vertex_count];
    for e in edges {
        for &v in e {
            degree[v] += 1;
        }
    }
    let mut order: Vec<usize> = (0..vertex_count).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(degree[v]));

    let incident: Vec<Vec<usize>> = {
        let mut inc = vec![Vec::new(); vertex_count];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                inc[v].push(i);
            }
        }
        inc
    };

    let greedy = greedy_weak_coloring(vertex_count, edges, &incident, &order);
    let ub = greedy.iter().max().map_or(1, |&c| c + 1);
    for k in lb..=ub {
        let mut coloring = vec![usize::MAX; vertex_count];
        if try_color(k, 0, &order, edges, &incident, &mut coloring, 0) {
            return Ok(ColoringResult { chi: k, coloring });
        }
    }
    Ok(ColoringResult { chi: ub, coloring: greedy })
}

fn greedy_weak_coloring(
    vertex_count: usize,
    edges: &[Vec<usize>],
    incident: &[Vec<usize>],
    order: &[usize],
) -> Vec<usize> {
    let mut coloring = vec![usize::MAX; vertex_count];
    for &v in order {
        let mut c = 0;
        loop {
            coloring[v] = c;
            if !violates_weakly(v, edges, incident, &coloring) {
                break;
            }
            c += 1;
        }
    }
    coloring
}

/// Whether some edge through `v` is fully coloured and monochromatic.
fn violates_weakly(
    v: usize,
    edges: &[Vec<usize>],
    incident: &[Vec<usize>],
    coloring: &[usize],
) -> bool {
    incident[v].iter().any(|&ei| {
        let e = &edges[ei];
        let c0 = coloring[e[0]];
        c0 != usize::MAX && e.iter().all(|&w| coloring[w] == c0)
    })
}

fn try_color(
    k: usize,
    pos: usize,
    order: &[usize],
    edges: &[Vec<usize>],
    incident: &[Vec<usize>],
    coloring: &mut Vec<usize>,
    used: usize,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    let limit = k.min(used + 1);
    for c in 0..limit {
        coloring[v] = c;
        if !violates_weakly(v, edges, incident, coloring)
            && try_color(k, pos + 1, order, edges, incident, coloring, used.max(c + 1))
        {
            return true;
        }
    }
    coloring[v] = usize::MAX;
    false
}

fn max_clique(adj: &[u64], n: usize) -> usize {
    fn expand(adj: &[u64], cand: u64, size: usize, best: &mut usize) {
        if size + cand.count_ones() as usize <= *best {
            return;
        }
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        let mut rest = cand;
        while rest != 0 {
            if size + rest.count_ones() as usize <= *best {
                break;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            expand(adj, rest & adj[v], size + 1, best);
        }
    }
    let mut best = 0;
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    expand(adj, all, 0, &mut best);
    best
}

/// An exact biclique partition: its size and one witness partition.
#[derive(Clone, Debug)]
pub struct BpResult {
    pub size: usize,
    pub parts: Vec<BicliquePart>,
}

/// Exact biclique partition number by branch and bound over partitions.
/// The search canonicalises each piece (the endpoint of the lowest uncovered
/// edge sits on the left), seeds with a star partition, and prunes with the
/// inertia lower bound: a partition needs at least as many pieces as the
/// adjacency matrix of the uncovered subgraph has eigenvalues of either
/// sign. The budget bounds the edge count.
pub fn biclique_partition_number(g: &Graph, budget: u64) -> Result<BpResult> {
    let m = g.edges.len();
    if m as u64 > budget || m > 63 {
        return Err(Error::resource(
            format!("exact biclique partition limited to {} edges, got {m}", budget.min(63)),
            budget.min(63),
        ));
    }
    if m == 0 {
        return Ok(BpResult { size: 0, parts: Vec::new() });
    }

    // Compact the vertices that actually carry edges.
    let mut compact: HashMap<usize, usize> = HashMap::new();
    let mut original: Vec<usize> = Vec::new();
    for &(u, w) in &g.edges {
        for v in [u, w] {
            compact.entry(v).or_insert_with(|| {
                original.push(v);
                original.len() - 1
            });
        }
    }
    let nv = original.len();
    let edge_ends: Vec<(usize, usize)> =
        g.edges.iter().map(|&(u, w)| (compact[&u], compact[&w])).collect();
    let mut pair_edge: HashMap<(usize, usize), usize> = HashMap::new();
    for (i, &(u, w)) in edge_ends.iter().enumerate() {
        pair_edge.insert((u.min(w), u.max(w)), i);
    }

    let search = BpSearch { nv, edge_ends, pair_edge };
    let full: u64 = if m == 63 { u64::MAX >> 1 } else { (1u64 << m) - 1 };
    let mut best = search.star_partition(full);
    let mut chosen: Vec<(u64, u64)> = Vec::new();
    let mut lb_cache: HashMap<u64, usize> = HashMap::new();
    search.branch(full, &mut chosen, &mut best, &mut lb_cache);

    let parts = best
        .iter()
        .map(|&(lmask, rmask)| {
            BicliquePart::new(
                mask_vertices(lmask, &original),
                mask_vertices(rmask, &original),
            )
        })
        .collect::<Vec<_>>();
    Ok(BpResult { size: parts.len(), parts })
}

fn mask_vertices(mask: u64, original: &[usize]) -> Vec<usize> {
    (0..original.len()).filter(|&i| mask >> i & 1 == 1).map(|i| original[i]).collect()
}

struct BpSearch {
    nv: usize,
    edge_ends: Vec<(usize, usize)>,
    pair_edge: HashMap<(usize, usize), usize>,
}

impl BpSearch {
    fn uncovered_neighbors(&self, v: usize, uncovered: u64) -> u64 {
        let mut mask = 0u64;
        for (i, &(a, b)) in self.edge_ends.iter().enumerate() {
            if uncovered >> i & 1 == 1 {
                if a == v {
                    mask |= 1 << b;
                } else if b == v {
                    mask |= 1 << a;
                }
            }
        }
        mask
    }

    fn star_partition(&self, mut uncovered: u64) -> Vec<(u64, u64)> {
        let mut parts = Vec::new();
        while uncovered != 0 {
            let center = (0..self.nv)
                .max_by_key(|&v| self.uncovered_neighbors(v, uncovered).count_ones())
                .expect("edges remain");
            let leaves = self.uncovered_neighbors(center, uncovered);
            for b in bits(leaves) {
                let key = (center.min(b), center.max(b));
                uncovered &= !(1 << self.pair_edge[&key]);
            }
            parts.push((1u64 << center, leaves));
        }
        parts
    }

    /// Inertia bound on the number of bicliques needed to partition the
    /// uncovered edges.
    fn inertia_lb(&self, uncovered: u64) -> usize {
        if uncovered == 0 {
            return 0;
        }
        let mut a = vec![0.0f64; self.nv * self.nv];
        for (i, &(u, w)) in self.edge_ends.iter().enumerate() {
            if uncovered >> i & 1 == 1 {
                a[u * self.nv + w] = 1.0;
                a[w * self.nv + u] = 1.0;
            }
        }
        let eigen = symmetric_eigenvalues(a, self.nv);
        let pos = eigen.iter().filter(|&&x| x > 1e-6).count();
        let neg = eigen.iter().filter(|&&x| x < -1e-6).count();
        pos.max(neg).max(1)
    }

    fn branch(
        &self,
        uncovered: u64,
        chosen: &mut Vec<(u64, u64)>,
        best: &mut Vec<(u64, u64)>,
        lb_cache: &mut HashMap<u64, usize>,
    ) {
        if uncovered == 0 {
            if chosen.len() < best.len() {
                *best = chosen.clone();
            }
            return;
        }
        let lb = *lb_cache
            .entry(uncovered)
            .or_insert_with(|| self.inertia_lb(uncovered));
        if chosen.len() + lb >= best.len() {
            return;
        }
        let first = uncovered.trailing_zeros() as usize;
        let (u, w) = self.edge_ends[first];
        // Enumerate bicliques (L, R) with u on the left and w on the right
        // whose edges are all uncovered.
        let rn = self.uncovered_neighbors(u, uncovered);
        debug_assert!(rn >> w & 1 == 1);
        let mut candidates: Vec<(u64, u64, u64)> = Vec::new();
        for r_extra in submasks(rn & !(1 << w)) {
            let rmask = r_extra | 1 << w;
            // Vertices adjacent (uncovered) to everything in R.
            let mut ln = u64::MAX;
            for y in bits(rmask) {
                ln &= self.uncovered_neighbors(y, uncovered);
            }
            debug_assert!(ln >> u & 1 == 1);
            for l_extra in submasks(ln & !(1 << u)) {
                let lmask = l_extra | 1 << u;
                let mut emask = 0u64;
                for x in bits(lmask) {
                    for y in bits(rmask) {
                        emask |= 1 << self.pair_edge[&(x.min(y), x.max(y))];
                    }
                }
                candidates.push((lmask, rmask, emask));
            }
        }
        candidates.sort_by_key(|&(_, _, e)| std::cmp::Reverse(e.count_ones()));
        for (lmask, rmask, emask) in candidates {
            chosen.push((lmask, rmask));
            self.branch(uncovered & !emask, chosen, best, lb_cache);
            chosen.pop();
            if best.len() <= chosen.len() + 1 {
                // No smaller partition can extend this prefix.
                break;
            }
        }
    }
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut rest = mask;
    std::iter::from_fn(move || {
        if rest == 0 {
            return None;
        }
        let b = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        Some(b)
    })
}

/// Iterates every submask of `mask`, including 0 and `mask` itself.
fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    let mut cur = 0u64;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = cur;
        if cur == mask {
            done = true;
        } else {
            cur = (cur.wrapping_sub(mask)) & mask;
        }
        Some(out)
    })
}

/// Eigenvalues of a symmetric matrix (row-major) by cyclic Jacobi rotations.
fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    if n == 0 {
        return Vec::new();
    }
    for _ in 0..200 {
        let mut off = 0.0f64;
        let (mut p, mut q) = (0, 1);
        for i in 0..n {
            for j in i + 1..n {
                if a[i * n + j].abs() > off {
                    off = a[i * n + j].abs();
                    p = i;
                    q = j;
                }
            }
        }
        if off < 1e-10 {
            break;
        }
        let apq = a[p * n + q];
        let app = a[p * n + p];
        let aqq = a[q * n + q];
        let theta = (aqq - app) / (2.0 * apq);
        let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;
        for k in 0..n {
            if k != p && k != q {
                let akp = a[k * n + p];
                let akq = a[k * n + q];
                a[k * n + p] = c * akp - s * akq;
                a[p * n + k] = a[k * n + p];
                a[k * n + q] = s * akp + c * akq;
                a[q * n + k] = a[k * n + q];
            }
        }
        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = 0.0;
        a[q * n + p] = 0.0;
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

/// End-to-end validation of the reduction on one instance.
#[derive(Clone, Debug)]
pub struct LemmaReport {
    pub vertex_count: usize,
    pub part_count: usize,
    pub distinct_members: usize,
    pub vc: Option<usize>,
    pub covering: usize,
    pub chi: usize,
    pub vc_at_most_one: bool,
    pub covering_at_least_chi: bool,
    pub no_pair_shattered: bool,
    pub coloring_proper: bool,
}

impl LemmaReport {
    pub fn holds(&self) -> bool {
        self.vc_at_most_one
            && self.covering_at_least_chi
            && self.no_pair_shattered
            && self.coloring_proper
    }
}

/// Checks the graph-to-class reduction on a biclique-partitioned graph:
/// VC at most 1, covering number at least the chromatic number, no pair of
/// coordinates shattered, and assigning each vertex its covering function
/// yields a proper colouring.
pub fn check_lemma(
    g: &BicliquePartitionedGraph,
    cover_budget: u64,
    chi_budget: u64,
) -> Result<LemmaReport> {
    let construction = class_from_partition(g)?;
    let edges: Vec<Vec<usize>> = g.graph.edges.iter().map(|&(u, w)| vec![u, w]).collect();
    lemma_report(&construction, g.graph.vertex_count, g.parts.len(), &edges, cover_budget, chi_budget)
}

/// The r-graph analogue of [`check_lemma`] with the weak chromatic number.
pub fn check_hypergraph_lemma(
    g: &PartitionedHypergraph,
    cover_budget: u64,
    chi_budget: u64,
) -> Result<LemmaReport> {
    let construction = class_from_hypergraph_partition(g)?;
    lemma_report(
        &construction,
        g.hypergraph.vertex_count,
        g.parts.len(),
        &g.hypergraph.edges,
        cover_budget,
        chi_budget,
    )
}

fn lemma_report(
    construction: &ClassConstruction,
    vertex_count: usize,
    part_count: usize,
    edges: &[Vec<usize>],
    cover_budget: u64,
    chi_budget: u64,
) -> Result<LemmaReport> {
    let class = &construction.class;
    let vc = class.vc_dimension();
    let cover = covering_number_exact(class, cover_budget)?;
    let chi = weak_chromatic_number(vertex_count, edges, chi_budget)?.chi;

    let mut no_pair_shattered = true;
    for i in 0..class.arity() {
        for j in i + 1..class.arity() {
            if class.is_shattered(&[i, j])? {
                no_pair_shattered = false;
            }
        }
    }

    // Colour each vertex by the index of a covering function from the
    // witness; every edge must then contain two differently coloured
    // vertices.
    let coloring: Vec<Option<usize>> = construction
        .vertex_functions
        .iter()
        .map(|h| {
            cover.witness.iter().position(|f| {
                (0..class.arity()).all(|i| h.get(i).as_value().map_or(true, |v| v != f.get(i)))
            })
        })
        .collect();
    let coloring_proper = coloring.iter().all(|c| c.is_some() || vertex_count == 0)
        && edges.iter().all(|e| {
            let first = coloring[e[0]];
            e.iter().any(|&v| coloring[v] != first)
        });

    Ok(LemmaReport {
        vertex_count,
        part_count,
        distinct_members: construction.distinct_members,
        vc,
        covering: cover.size,
        chi,
        vc_at_most_one: vc.map_or(true, |d| d <= 1),
        covering_at_least_chi: cover.size >= chi,
        no_pair_shattered,
        coloring_proper,
    })
}
