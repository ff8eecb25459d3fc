//! Instance generators: named graphs, random members of each class, gadgets and
//! random profiles. [`gen_family`] re-validates every emitted instance.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::profile::Profile;
use crate::recognize::{self, Class};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn build(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(n, edges).expect("generator produced an invalid graph")
}

pub fn path(n: usize) -> Graph {
    let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    build(n, &e)
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    build(n, &e)
}

pub fn complete(n: usize) -> Graph {
    let mut e = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            e.push((i, j));
        }
    }
    build(n, &e)
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let mut e = Vec::new();
    for i in 0..a {
        for j in 0..b {
            e.push((i, a + j));
        }
    }
    build(a + b, &e)
}

/// Centre 0 with `leaves` pendant vertices.
pub fn star(leaves: usize) -> Graph {
    let e: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    build(leaves + 1, &e)
}

/// Hub 0 joined to a `k`-cycle on `1..=k`.
pub fn wheel(k: usize) -> Graph {
    let mut e: Vec<_> = (1..=k).map(|i| (0, i)).collect();
    for i in 0..k {
        e.push((1 + i, 1 + (i + 1) % k));
    }
    build(k + 1, &e)
}

/// Row-major `rows × cols` grid; vertex `(r, c)` is `r * cols + c`.
pub fn square_grid(rows: usize, cols: usize) -> Graph {
    let mut e = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                e.push((v, v + 1));
            }
            if r + 1 < rows {
                e.push((v, v + cols));
            }
        }
    }
    build(rows * cols, &e)
}

/// Grid with diagonals in both directions (strong product of two paths).
pub fn king_grid(rows: usize, cols: usize) -> Graph {
    let mut e = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                e.push((v, v + 1));
            }
            if r + 1 < rows {
                e.push((v, v + cols));
                if c + 1 < cols {
                    e.push((v, v + cols + 1));
                }
                if c > 0 {
                    e.push((v, v + cols - 1));
                }
            }
        }
    }
    build(rows * cols, &e)
}

/// Triangular-lattice rhombus with `side + 1` vertices per side.
pub fn lozenge(side: usize) -> Graph {
    triangular_patch(side + 1, side + 1)
}

fn triangular_patch(rows: usize, cols: usize) -> Graph {
    let mut e = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            let v = r * cols + c;
            if c + 1 < cols {
                e.push((v, v + 1));
            }
            if r + 1 < rows {
                e.push((v, v + cols));
                if c + 1 < cols {
                    e.push((v, v + cols + 1));
                }
            }
        }
    }
    build(rows * cols, &e)
}

pub fn hypercube(dim: u32) -> Graph {
    let n = 1usize << dim;
    let mut e = Vec::new();
    for v in 0..n {
        for b in 0..dim {
            let w = v ^ (1 << b);
            if v < w {
                e.push((v, w));
            }
        }
    }
    build(n, &e)
}

/// `Q_dim` with weight 0 on the diametral pair `0, 2^dim − 1` and 1 elsewhere.
pub fn hypercube_pair_zero(dim: u32) -> (Graph, Profile, usize, usize) {
    let g = hypercube(dim);
    let (u, v) = (0, g.n() - 1);
    let entries: Vec<_> = (0..g.n()).filter(|&x| x != u && x != v).map(|x| (x, 1.0)).collect();
    let pi = Profile::new(g.n(), &entries).expect("nonempty support");
    (g, pi, u, v)
}

/// `K_{n,n}` minus a perfect matching: `a_i = i`, `b_j = n + j`, `a_i ~ b_j` iff `i ≠ j`.
pub fn b_n(n: usize) -> Graph {
    let mut e = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                e.push((i, n + j));
            }
        }
    }
    build(2 * n, &e)
}

/// [`b_n`] plus adjacent vertices `a = 2n` (joined to every `b_j`) and
/// `b = 2n + 1` (joined to every `a_i`).
pub fn b_hat_n(n: usize) -> Graph {
    let mut e: Vec<_> = b_n(n).edges().collect();
    let (a, b) = (2 * n, 2 * n + 1);
    e.push((a, b));
    for i in 0..n {
        e.push((a, n + i));
        e.push((b, i));
    }
    build(2 * n + 2, &e)
}

/// Simplex graph of a triangle-free graph `h` on `h_n` vertices: nodes are the
/// empty clique (0), the vertices (`1..=h_n`) and the edges of `h`.
pub fn simplex_graph(h_n: usize, h_edges: &[(usize, usize)]) -> Graph {
    let mut e: Vec<_> = (1..=h_n).map(|v| (0, v)).collect();
    for (i, &(a, b)) in h_edges.iter().enumerate() {
        let node = h_n + 1 + i;
        e.push((1 + a, node));
        e.push((1 + b, node));
    }
    build(1 + h_n + h_edges.len(), &e)
}

/// The grid-plus-path instance together with its named vertices.
#[derive(Clone, Debug)]
pub struct GridPlusPath {
    pub k: usize,
    pub graph: Graph,
    pub profile: Profile,
    /// Gluing vertex (bottom-left of the grid); the unique centre.
    pub c: usize,
    /// Far end of the path, weight 1.
    pub l: usize,
    /// Bottom-right grid corner, weight `k + 1`.
    pub r: usize,
    /// Upper-left grid corner.
    pub v: usize,
    /// Horizontal neighbour of `v`.
    pub z: usize,
    /// Vertical neighbour of `v`.
    pub z_vertical: usize,
    /// Upper-right grid corner.
    pub u: usize,
    /// Vertical neighbour of `u`.
    pub t: usize,
    pub cols: usize,
}

/// Grid with `k + 1` columns and `2k + 3` rows (so `k × (2k+2)` cells), plus a
/// path of length `k(k+1)` hanging off the bottom-left corner.
pub fn grid_plus_path(k: usize) -> GridPlusPath {
    assert!(k >= 1);
    let cols = k + 1;
    let rows = 2 * k + 3;
    let grid_n = rows * cols;
    let mut e: Vec<_> = square_grid(rows, cols).edges().collect();
    let c = (rows - 1) * cols;
    let len = k * (k + 1);
    let mut prev = c;
    for i in 0..len {
        let x = grid_n + i;
        e.push((prev, x));
        prev = x;
    }
    let n = grid_n + len;
    let graph = build(n, &e);
    let l = prev;
    let r = rows * cols - 1;
    let profile = Profile::new(n, &[(l, 1.0), (r, (k + 1) as f64)]).expect("valid");
    GridPlusPath {
        k,
        graph,
        profile,
        c,
        l,
        r,
        v: 0,
        z: 1,
        z_vertical: cols,
        u: cols - 1,
        t: 2 * cols - 1,
        cols,
    }
}

/// The hitting-set gadget with its distinguished vertex.
#[derive(Clone, Debug)]
pub struct HseInstance {
    pub graph: Graph,
    pub v: usize,
    pub profile: Profile,
    pub x_nodes: Vec<usize>,
    pub y_nodes: Vec<usize>,
    pub u_nodes: Vec<usize>,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub w: usize,
}

/// Sets are lists of universe elements `0..universe`. Vertex order:
/// `X`, `Y`, `U`, then `a, b, c, v, w`.
pub fn gen_hse(x_sets: &[Vec<usize>], y_sets: &[Vec<usize>], universe: usize) -> Result<HseInstance> {
    if x_sets.is_empty() || y_sets.is_empty() || universe == 0 {
        return Err(Error::invalid("X, Y and U must be nonempty"));
    }
    let mut hit_x = vec![false; universe];
    let mut hit_y = vec![false; universe];
    for s in x_sets {
        for &u in s {
            if u >= universe {
                return Err(Error::invalid(format!("element {u} outside the universe")));
            }
            hit_x[u] = true;
        }
    }
    for s in y_sets {
        if s.is_empty() {
            return Err(Error::invalid("sets of Y must be nonempty"));
        }
        for &u in s {
            if u >= universe {
                return Err(Error::invalid(format!("element {u} outside the universe")));
            }
            hit_y[u] = true;
        }
    }
    if hit_x.iter().chain(&hit_y).any(|h| !h) {
        return Err(Error::invalid("U must be covered by the sets of X and by the sets of Y"));
    }
    let nx = x_sets.len();
    let ny = y_sets.len();
    let x_nodes: Vec<usize> = (0..nx).collect();
    let y_nodes: Vec<usize> = (nx..nx + ny).collect();
    let u_nodes: Vec<usize> = (nx + ny..nx + ny + universe).collect();
    let base = nx + ny + universe;
    let (a, b, c, v, w) = (base, base + 1, base + 2, base + 3, base + 4);
    let mut e = Vec::new();
    for i in 0..universe {
        for j in i + 1..universe {
            e.push((u_nodes[i], u_nodes[j]));
        }
    }
    for (i, s) in x_sets.iter().enumerate() {
        for &u in s {
            e.push((x_nodes[i], u_nodes[u]));
        }
    }
    for (i, s) in y_sets.iter().enumerate() {
        for &u in s {
            e.push((y_nodes[i], u_nodes[u]));
        }
    }
    e.push((a, v));
    e.push((v, w));
    e.push((b, c));
    for &z in x_nodes.iter().chain(&u_nodes) {
        e.push((a, z));
        e.push((b, z));
    }
    for &x in &x_nodes {
        e.push((v, x));
    }
    let n = base + 5;
    let graph = Graph::from_edges(n, &e)?;
    let profile = Profile::unit(n);
    let check = crate::radius::radius_value(&graph, &profile, v);
    if check != 3.0 {
        return Err(Error::invariant(format!("gadget has r(v) = {check}, expected 3")));
    }
    Ok(HseInstance { graph, v, profile, x_nodes, y_nodes, u_nodes, a, b, c, w })
}

/// Brute-force: does some set of `X` meet every set of `Y`?
pub fn has_hitting_set(x_sets: &[Vec<usize>], y_sets: &[Vec<usize>]) -> bool {
    x_sets.iter().any(|x| y_sets.iter().all(|y| y.iter().any(|u| x.contains(u))))
}

/// Random `(X, Y)` over a universe of `universe` elements, both covering it.
pub fn random_hse_sets(universe: usize, nx: usize, ny: usize, seed: u64) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut rng = rng(seed);
    let draw = |count: usize, rng: &mut ChaCha8Rng| {
        let density: f64 = rng.gen_range(0.15..0.7);
        let mut sets: Vec<Vec<usize>> = (0..count)
            .map(|_| (0..universe).filter(|_| rng.gen_bool(density)).collect())
            .collect();
        for u in 0..universe {
            if !sets.iter().any(|s| s.contains(&u)) {
                let i = rng.gen_range(0..count);
                sets[i].push(u);
                sets[i].sort_unstable();
            }
        }
        for s in sets.iter_mut() {
            if s.is_empty() {
                s.push(rng.gen_range(0..universe));
            }
        }
        sets
    };
    let x = draw(nx, &mut rng);
    let y = draw(ny, &mut rng);
    (x, y)
}

/// Random recursive tree.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let e: Vec<_> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    build(n, &e)
}

/// Random tree plus each further pair independently with probability `p`.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let mut e: Vec<_> = (1..n).map(|i| (rng.gen_range(0..i), i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p) {
                e.push((i, j));
            }
        }
    }
    build(n, &e)
}

/// Chordal graph grown by repeatedly adding a vertex adjacent to a random clique.
pub fn random_chordal(n: usize, max_clique: usize, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut e = Vec::new();
    for i in 1..n {
        let x = rng.gen_range(0..i);
        let mut clique = vec![x];
        let want = rng.gen_range(1..=max_clique.max(1));
        let mut nbrs = adj[x].clone();
        nbrs.shuffle(&mut rng);
        for y in nbrs {
            if clique.len() >= want {
                break;
            }
            if clique.iter().all(|&c| adj[c].contains(&y)) {
                clique.push(y);
            }
        }
        for &c in &clique {
            adj[c].push(i);
            adj[i].push(c);
            e.push((c, i));
        }
    }
    build(n, &e)
}

/// Building blocks glued at cut vertices by [`block_tree`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Block {
    Edge,
    Complete(usize),
    Cycle(usize),
    Wheel(usize),
    Lozenge(usize),
    Grid(usize, usize),
    BHat(usize),
    CompleteBipartite(usize, usize),
    Chordal(usize),
    SimplexOfBipartite(usize),
}

impl Block {
    fn graph(self, rng: &mut ChaCha8Rng) -> Graph {
        match self {
            Block::Edge => path(2),
            Block::Complete(k) => complete(k),
            Block::Cycle(k) => cycle(k),
            Block::Wheel(k) => wheel(k),
            Block::Lozenge(s) => lozenge(s),
            Block::Grid(a, b) => square_grid(a, b),
            Block::BHat(k) => b_hat_n(k),
            Block::CompleteBipartite(a, b) => complete_bipartite(a, b),
            Block::Chordal(k) => random_chordal(k, 3, rng.gen()),
            Block::SimplexOfBipartite(k) => {
                let (hn, he) = random_bipartite_seed(k, rng);
                simplex_graph(hn, &he)
            }
        }
    }
}

// Connected random bipartite graph on `k` vertices (triangle-free).
fn random_bipartite_seed(k: usize, rng: &mut ChaCha8Rng) -> (usize, Vec<(usize, usize)>) {
    let k = k.max(2);
    let mut e = Vec::new();
    // spanning tree respecting a parity split, then extra cross edges
    let side: Vec<bool> = (0..k).map(|i| i % 2 == 0).collect();
    for i in 1..k {
        let opts: Vec<usize> = (0..i).filter(|&j| side[j] != side[i]).collect();
        if let Some(&j) = opts.choose(rng) {
            e.push((j, i));
        } else {
            e.push((0, i));
        }
    }
    for i in 0..k {
        for j in i + 1..k {
            if side[i] != side[j] && rng.gen_bool(0.15) && !e.contains(&(i, j)) {
                e.push((i, j));
            }
        }
    }
    (k, e)
}

/// Glues random blocks at random existing vertices until at least `target_n`
/// vertices exist.
pub fn block_tree(kinds: &[Block], target_n: usize, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let first = kinds[rng.gen_range(0..kinds.len())].graph(&mut rng);
    let mut n = first.n();
    let mut e: Vec<(usize, usize)> = first.edges().collect();
    while n < target_n {
        let block = kinds[rng.gen_range(0..kinds.len())].graph(&mut rng);
        let anchor = rng.gen_range(0..n);
        let root = rng.gen_range(0..block.n());
        let map = |x: usize| -> usize {
            if x == root {
                anchor
            } else if x < root {
                n + x
            } else {
                n + x - 1
            }
        };
        for (a, b) in block.edges() {
            e.push((map(a), map(b)));
        }
        n += block.n() - 1;
    }
    build(n, &e)
}

/// A pentagon with random trees hanging from its vertices.
pub fn pentagon_tail(n: usize, seed: u64) -> Graph {
    let mut rng = rng(seed);
    let n = n.max(5);
    let mut e: Vec<_> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
    for i in 5..n {
        e.push((rng.gen_range(0..i), i));
    }
    build(n, &e)
}

/// Integer weights in `[1, 10]` (or all 1 when `zero_one`) on a random support of
/// size between 2 and `n/2`.
pub fn random_profile(n: usize, zero_one: bool, seed: u64) -> Profile {
    let mut rng = rng(seed);
    let hi = (n / 2).max(2).min(n);
    let lo = 2.min(n);
    let size = rng.gen_range(lo..=hi);
    let mut verts: Vec<usize> = (0..n).collect();
    verts.shuffle(&mut rng);
    let entries: Vec<_> = verts[..size]
        .iter()
        .map(|&v| (v, if zero_one { 1.0 } else { rng.gen_range(1..=10) as f64 }))
        .collect();
    Profile::new(n, &entries).expect("nonempty support")
}

/// Named families accepted by [`gen_family`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Tree { n: usize },
    SquareGrid { rows: usize, cols: usize },
    TriangularGrid { side: usize },
    KingGrid { rows: usize, cols: usize },
    Hypercube { dim: u32 },
    Cycle { n: usize },
    SimplexGraph { seed_n: usize },
    BN { n: usize },
    BHatN { n: usize },
    GridPlusPath { k: usize },
    Hse { x: Vec<Vec<usize>>, y: Vec<Vec<usize>>, universe: usize },
    PentagonTail { n: usize },
    Chordal { n: usize },
    /// Blocks of a class glued into a tree of blocks.
    Blocks { class: Class, n: usize },
    RandomProfile { n: usize, zero_one: bool },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Tree { .. } => "tree",
            Family::SquareGrid { .. } => "square_grid",
            Family::TriangularGrid { .. } => "triangular_grid",
            Family::KingGrid { .. } => "king_grid",
            Family::Hypercube { .. } => "hypercube",
            Family::Cycle { .. } => "cycle",
            Family::SimplexGraph { .. } => "simplex_graph",
            Family::BN { .. } => "b_n",
            Family::BHatN { .. } => "b_hat_n",
            Family::GridPlusPath { .. } => "grid_plus_path",
            Family::Hse { .. } => "hse",
            Family::PentagonTail { .. } => "pentagon_tail",
            Family::Chordal { .. } => "chordal",
            Family::Blocks { .. } => "blocks",
            Family::RandomProfile { .. } => "random_profile",
        }
    }

    /// Classes every member of the family belongs to.
    pub fn claimed_classes(&self) -> Vec<Class> {
        use Class::*;
        match self {
            Family::Tree { .. } => vec![CubeFreeMedian, BipartiteHelly, Bridged, WeaklyBridged, Cb],
            Family::SquareGrid { .. } => vec![CubeFreeMedian, BipartiteHelly],
            Family::TriangularGrid { .. } | Family::Chordal { .. } => vec![Bridged, WeaklyBridged, Cb],
            Family::KingGrid { .. } => vec![WeaklyModular],
            Family::Hypercube { dim } if *dim >= 3 => vec![Median],
            Family::Hypercube { .. } => vec![CubeFreeMedian],
            Family::Cycle { n } => match n {
                3 => vec![Bridged, Cb],
                4 => vec![CubeFreeMedian, BipartiteHelly],
                5 => vec![Cb],
                _ => vec![],
            },
            Family::SimplexGraph { .. } => vec![CubeFreeMedian],
            Family::BN { .. } => vec![],
            Family::BHatN { .. } => vec![BipartiteHelly],
            Family::GridPlusPath { .. } => vec![CubeFreeMedian, BipartiteHelly],
            Family::Hse { .. } => vec![],
            Family::PentagonTail { .. } => vec![Cb],
            Family::Blocks { class, .. } => class.implied(),
            Family::RandomProfile { .. } => vec![],
        }
    }
}

/// Provenance of a generated instance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceSpec {
    #[serde(flatten)]
    pub family: Family,
    pub seed: u64,
    pub certified: Vec<Class>,
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub spec: InstanceSpec,
    pub graph: Graph,
    pub profile: Option<Profile>,
    /// Family-specific distinguished vertex (the gadget's `v`, the grid's `c`).
    pub distinguished: Option<usize>,
}

/// Block menus per class; every block belongs to the class and gluing at cut
/// vertices keeps it there.
pub fn blocks_for(class: Class) -> Vec<Block> {
    use Block::*;
    match class {
        Class::Bridged => vec![Edge, Complete(3), Complete(4), Lozenge(2), Lozenge(3), Chordal(12)],
        Class::WeaklyBridged => {
            vec![Edge, Complete(3), Wheel(5), Wheel(5), Lozenge(2), Lozenge(3), Chordal(10), Wheel(6)]
        }
        Class::Cb => vec![Edge, Complete(3), Cycle(5), Cycle(5), Wheel(5), Lozenge(3), Chordal(10)],
        Class::BipartiteHelly => {
            vec![Edge, Grid(3, 4), Grid(2, 5), BHat(4), BHat(5), CompleteBipartite(2, 3), Cycle(4)]
        }
        Class::CubeFreeMedian | Class::Median => {
            vec![Edge, Grid(3, 3), Grid(2, 6), Cycle(4), SimplexOfBipartite(6), SimplexOfBipartite(9)]
        }
        Class::WeaklyModular => vec![Edge, Complete(3), Wheel(5), Grid(3, 3), Cycle(4)],
    }
}

/// Builds and certifies an instance. Recognisers run with `recognize_cap` as the
/// size limit; larger instances are rejected rather than emitted unchecked.
pub fn gen_family(family: &Family, seed: u64) -> Result<Instance> {
    gen_family_capped(family, seed, usize::MAX)
}

pub fn gen_family_capped(family: &Family, seed: u64, recognize_cap: usize) -> Result<Instance> {
    let mut inst = build_family(family, seed)?;
    let claimed = family.claimed_classes();
    for &class in &claimed {
        let report = recognize::recognize(&inst.graph, class, recognize_cap)?;
        if !report.verdict {
            return Err(Error::GenerationBug(format!(
                "{} (seed {seed}) is not {}: {:?}",
                family.name(),
                class.name(),
                report.witness
            )));
        }
    }
    inst.spec.certified = claimed;
    Ok(inst)
}

/// Builds an instance without running any recogniser; `spec.certified` is
/// left empty. Meant for benchmarks on sizes beyond the recognisers' reach.
pub fn build_family(family: &Family, seed: u64) -> Result<Instance> {
    let mut profile = None;
    let mut distinguished = None;
    let graph = match family {
        Family::Tree { n } => random_tree(*n, seed),
        Family::SquareGrid { rows, cols } => square_grid(*rows, *cols),
        Family::TriangularGrid { side } => lozenge(*side),
        Family::KingGrid { rows, cols } => king_grid(*rows, *cols),
        Family::Hypercube { dim } => {
            let (g, pi, _, _) = hypercube_pair_zero(*dim);
            profile = Some(pi);
            g
        }
        Family::Cycle { n } => cycle(*n),
        Family::SimplexGraph { seed_n } => {
            let mut r = rng(seed);
            let (hn, he) = random_bipartite_seed(*seed_n, &mut r);
            simplex_graph(hn, &he)
        }
        Family::BN { n } => b_n(*n),
        Family::BHatN { n } => b_hat_n(*n),
        Family::GridPlusPath { k } => {
            let inst = grid_plus_path(*k);
            profile = Some(inst.profile);
            distinguished = Some(inst.c);
            inst.graph
        }
        Family::Hse { x, y, universe } => {
            let inst = gen_hse(x, y, *universe)?;
            profile = Some(inst.profile);
            distinguished = Some(inst.v);
            inst.graph
        }
        Family::PentagonTail { n } => pentagon_tail(*n, seed),
        Family::Chordal { n } => random_chordal(*n, 4, seed),
        Family::Blocks { class, n } => block_tree(&blocks_for(*class), *n, seed),
        Family::RandomProfile { .. } => {
            return Err(Error::invalid("random_profile needs a graph; use random_profile()"))
        }
    };
    Ok(Instance {
        spec: InstanceSpec { family: family.clone(), seed, certified: Vec::new() },
        graph,
        profile,
        distinguished,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::radius::radius_at;

    #[test]
    fn named_sizes() {
        assert_eq!(b_hat_n(4).n(), 10);
        assert_eq!(lozenge(3).n(), 16);
        assert_eq!(hypercube(4).m(), 32);
        let gp = grid_plus_path(4);
        assert_eq!(gp.graph.n(), 55 + 20);
        assert_eq!(gp.graph.degree(gp.c), 3);
        assert_eq!(simplex_graph(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).n(), 11);
    }

    #[test]
    fn grid_plus_path_named_values() {
        let gp = grid_plus_path(4);
        let r = |x| radius_at(&gp.graph, &gp.profile, x).value;
        assert_eq!(r(gp.c), 20.0);
        assert_eq!(r(gp.v), 70.0);
        assert_eq!(r(gp.u), 50.0);
        assert_eq!(r(gp.t), 45.0);
        // (k+1)(d(v,r) - 1)
        assert_eq!(r(gp.z), 65.0);
        assert_eq!(r(gp.z_vertical), 65.0);
    }

    #[test]
    fn hse_examples() {
        let x = vec![vec![0], vec![1]];
        let y = vec![vec![0], vec![1]];
        assert!(!has_hitting_set(&x, &y));
        let inst = gen_hse(&x, &y, 2).unwrap();
        assert_eq!(radius_at(&inst.graph, &inst.profile, inst.v).value, 3.0);
        let x2 = vec![vec![0, 1]];
        assert!(has_hitting_set(&x2, &y));
        let inst = gen_hse(&x2, &y, 2).unwrap();
        assert_eq!(radius_at(&inst.graph, &inst.profile, inst.x_nodes[0]).value, 2.0);
        assert!(gen_hse(&[vec![0]], &y, 2).is_err());
    }

    #[test]
    fn random_profiles_are_reproducible() {
        let a = random_profile(40, false, 9);
        assert_eq!(a, random_profile(40, false, 9));
        assert!(a.support().len() >= 2 && a.support().len() <= 20);
        assert!(a.support().iter().all(|e| (1.0..=10.0).contains(&e.1) && e.1.fract() == 0.0));
        assert!(random_profile(40, true, 9).is_01());
    }

    #[test]
    fn certified_families() {
        let fams = [
            Family::Tree { n: 30 },
            Family::SquareGrid { rows: 4, cols: 4 },
            Family::TriangularGrid { side: 3 },
            Family::KingGrid { rows: 3, cols: 3 },
            Family::Hypercube { dim: 3 },
            Family::SimplexGraph { seed_n: 8 },
            Family::BHatN { n: 4 },
            Family::GridPlusPath { k: 2 },
            Family::PentagonTail { n: 20 },
            Family::Chordal { n: 40 },
        ];
        for f in &fams {
            gen_family(f, 3).unwrap();
        }
        for class in [
            Class::Bridged,
            Class::WeaklyBridged,
            Class::Cb,
            Class::BipartiteHelly,
            Class::CubeFreeMedian,
        ] {
            for seed in 0..6 {
                gen_family(&Family::Blocks { class, n: 60 }, seed).unwrap();
            }
        }
    }
}
