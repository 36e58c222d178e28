//! Stable graphs with explicit half-edges and numbered legs.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::canon::canonical_form;
use super::shape::{enumerate_shapes, Shape, ShapeClass};
use crate::error::{Error, Result};

/// A stable graph given by its half-edges.
///
/// Half-edge `h` sits on vertex `owner[h]`. Paired half-edges form the
/// edges; the remaining half-edges are the legs, and `legs[i]` is the
/// half-edge carrying label `i + 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableGraph {
    pub genus: Vec<u32>,
    pub owner: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
    pub legs: Vec<usize>,
}

/// One isomorphism class of stable graphs.
#[derive(Clone, Debug)]
pub struct GraphClass {
    pub canonical: StableGraph,
    pub aut_order: u128,
}

fn check_stable(g: u32, n: u32) -> Result<()> {
    if 2 * g + n <= 2 {
        return Err(Error::InvalidArgument(format!("(g, n) = ({g}, {n}) is not stable")));
    }
    Ok(())
}

impl StableGraph {
    pub fn vertex_count(&self) -> usize {
        self.genus.len()
    }

    pub fn leg_count(&self) -> usize {
        self.legs.len()
    }

    /// Number of half-edges (legs included) at each vertex.
    pub fn valences(&self) -> Vec<u32> {
        let mut val = vec![0u32; self.vertex_count()];
        for &o in &self.owner {
            val[o] += 1;
        }
        val
    }

    /// First Betti number `E − V + 1`.
    pub fn betti(&self) -> u32 {
        (self.edges.len() + 1 - self.vertex_count()) as u32
    }

    /// Arithmetic genus `Σ γ(v) + h¹`.
    pub fn total_genus(&self) -> u32 {
        self.genus.iter().sum::<u32>() + self.betti()
    }

    fn matrix(&self) -> Vec<Vec<u32>> {
        let p = self.vertex_count();
        let mut m = vec![vec![0u32; p]; p];
        for &(h1, h2) in &self.edges {
            let (u, v) = (self.owner[h1], self.owner[h2]);
            if u == v {
                m[u][u] += 1;
            } else {
                m[u][v] += 1;
                m[v][u] += 1;
            }
        }
        m
    }

    fn leg_sets(&self) -> Vec<Vec<u32>> {
        let mut s = vec![Vec::new(); self.vertex_count()];
        for (i, &h) in self.legs.iter().enumerate() {
            s[self.owner[h]].push(i as u32 + 1);
        }
        for l in &mut s {
            l.sort();
        }
        s
    }

    /// Checks the half-edge structure, connectivity, leg numbering, stability
    /// of every vertex and the genus identity for type `(g, n)`.
    pub fn validate(&self, g: u32, n: u32) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(format!("invalid stable graph: {m}")));
        let nh = self.owner.len();
        let p = self.vertex_count();
        if p == 0 {
            return bad("no vertices");
        }
        if self.owner.iter().any(|&o| o >= p) {
            return bad("half-edge owned by a missing vertex");
        }
        let mut used = vec![false; nh];
        for &(a, b) in &self.edges {
            if a == b || a >= nh || b >= nh || used[a] || used[b] {
                return bad("edge pairing is not an involution without fixed points");
            }
            used[a] = true;
            used[b] = true;
        }
        for &h in &self.legs {
            if h >= nh || used[h] {
                return bad("leg collides with an edge or another leg");
            }
            used[h] = true;
        }
        if used.iter().any(|u| !u) {
            return bad("half-edge neither paired nor numbered");
        }
        if self.legs.len() != n as usize {
            return bad("leg count differs from n");
        }
        let val = self.valences();
        for v in 0..p {
            if 2 * self.genus[v] + val[v] <= 2 {
                return bad("unstable vertex");
            }
        }
        let mut seen = vec![false; p];
        let m = self.matrix();
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for u in 0..p {
                if !seen[u] && m[v][u] > 0 {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return bad("disconnected");
        }
        if self.total_genus() != g {
            return bad("genus identity fails");
        }
        Ok(())
    }

    /// Canonical key: vertex colours `(genus, leg labels)` and the multiplicity
    /// matrix in canonical order.
    pub fn canonical_key(&self) -> (Vec<(u32, Vec<u32>)>, Vec<u32>) {
        let cols: Vec<(u32, Vec<u32>)> = self.genus.iter().copied().zip(self.leg_sets()).collect();
        canonical_form(&cols, &self.matrix()).key
    }

    /// The canonical representative with half-edges numbered deterministically.
    pub fn canonicalize(&self) -> StableGraph {
        let cols: Vec<(u32, Vec<u32>)> = self.genus.iter().copied().zip(self.leg_sets()).collect();
        let m = self.matrix();
        let c = canonical_form(&cols, &m);
        let o = &c.order;
        let genus: Vec<u32> = o.iter().map(|&v| self.genus[v]).collect();
        let labels: Vec<Vec<u32>> = o.iter().map(|&v| cols[v].1.clone()).collect();
        let mm: Vec<Vec<u32>> = o.iter().map(|&v| o.iter().map(|&u| m[v][u]).collect()).collect();
        build(&genus, &labels, &mm)
    }
}

/// Builds a graph from vertex genera, leg labels per vertex and multiplicities.
fn build(genus: &[u32], labels: &[Vec<u32>], m: &[Vec<u32>]) -> StableGraph {
    let p = genus.len();
    let n: usize = labels.iter().map(Vec::len).sum();
    let mut owner = Vec::new();
    let mut legs = vec![0usize; n];
    for (v, ls) in labels.iter().enumerate() {
        for &l in ls {
            legs[l as usize - 1] = owner.len();
            owner.push(v);
        }
    }
    let mut edges = Vec::new();
    for v in 0..p {
        for u in v..p {
            for _ in 0..m[v][u] {
                let h = owner.len();
                owner.push(v);
                owner.push(u);
                edges.push((h, h + 1));
            }
        }
    }
    StableGraph { genus: genus.to_vec(), owner, edges, legs }
}

/// Order of the automorphism group of `g`: half-edge permutations that fix
/// every leg, map vertices to vertices of the same genus and commute with the
/// edge pairing.
///
/// Counted by exhaustive backtracking over half-edge images.
pub fn aut_order(g: &StableGraph) -> u128 {
    let nh = g.owner.len();
    let p = g.vertex_count();
    let mut partner = vec![usize::MAX; nh];
    for &(a, b) in &g.edges {
        partner[a] = b;
        partner[b] = a;
    }
    let val = g.valences();
    let mut st = AutState {
        g,
        partner,
        val,
        sigma: vec![usize::MAX; nh],
        taken: vec![false; nh],
        phi: vec![usize::MAX; p],
        phi_inv: vec![usize::MAX; p],
    };
    for &h in &g.legs {
        let v = g.owner[h];
        st.sigma[h] = h;
        st.taken[h] = true;
        if st.phi[v] == usize::MAX {
            st.phi[v] = v;
            st.phi_inv[v] = v;
        }
    }
    // A vertex without half-edges only occurs for a lone vertex.
    if nh == 0 {
        return 1;
    }
    st.count()
}

struct AutState<'a> {
    g: &'a StableGraph,
    partner: Vec<usize>,
    val: Vec<u32>,
    sigma: Vec<usize>,
    taken: Vec<bool>,
    phi: Vec<usize>,
    phi_inv: Vec<usize>,
}

impl AutState<'_> {
    /// Maps vertex `v` to `u`; returns whether a new entry was created, or
    /// `None` when inconsistent.
    fn bind(&mut self, v: usize, u: usize) -> Option<bool> {
        if self.phi[v] == u {
            return Some(false);
        }
        if self.phi[v] != usize::MAX || self.phi_inv[u] != usize::MAX {
            return None;
        }
        if self.g.genus[v] != self.g.genus[u] || self.val[v] != self.val[u] {
            return None;
        }
        self.phi[v] = u;
        self.phi_inv[u] = v;
        Some(true)
    }

    fn unbind(&mut self, v: usize) {
        let u = self.phi[v];
        self.phi[v] = usize::MAX;
        self.phi_inv[u] = usize::MAX;
    }

    fn count(&mut self) -> u128 {
        let h = match (0..self.sigma.len()).find(|&h| self.sigma[h] == usize::MAX) {
            None => return 1,
            Some(h) => h,
        };
        let hp = self.partner[h];
        let mut total = 0u128;
        for img in 0..self.sigma.len() {
            if self.taken[img] || self.partner[img] == usize::MAX {
                continue;
            }
            let imgp = self.partner[img];
            if self.taken[imgp] {
                continue;
            }
            // σ(h) = img and σ(ι h) = ι img.
            let Some(n1) = self.bind(self.g.owner[h], self.g.owner[img]) else { continue };
            let Some(n2) = self.bind(self.g.owner[hp], self.g.owner[imgp]) else {
                if n1 {
                    self.unbind(self.g.owner[h]);
                }
                continue;
            };
            self.sigma[h] = img;
            self.sigma[hp] = imgp;
            self.taken[img] = true;
            self.taken[imgp] = true;
            total += self.count();
            self.taken[img] = false;
            self.taken[imgp] = false;
            self.sigma[h] = usize::MAX;
            self.sigma[hp] = usize::MAX;
            if n2 {
                self.unbind(self.g.owner[hp]);
            }
            if n1 {
                self.unbind(self.g.owner[h]);
            }
        }
        total
    }
}

/// Stable graphs of type `(g, n)` with unlabelled legs, each carrying its
/// automorphism order. Summing `n!/aut` over them equals summing `1/|Aut|`
/// over the classes with numbered legs.
pub fn stable_shapes(g: u32, n: u32) -> Result<Vec<ShapeClass>> {
    check_stable(g, n)?;
    Ok(enumerate_shapes(2 * g + n - 2, n, true))
}

/// Expands one unlabelled shape into its classes with numbered legs.
pub fn label_shape(s: &Shape) -> Vec<StableGraph> {
    let p = s.vertex_count();
    let n: u32 = s.a.iter().sum();
    let genus: Vec<u32> = (0..p).map(|v| s.genus(v).expect("stable shape")).collect();
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    let mut labels = vec![Vec::new(); p];
    assign(s, 1, n, &mut labels, &mut |ls| {
        let gph = build(&genus, ls, &s.m);
        if seen.insert(gph.canonical_key()) {
            out.push(gph.canonicalize());
        }
    });
    out
}

fn assign(s: &Shape, next: u32, n: u32, labels: &mut Vec<Vec<u32>>, f: &mut dyn FnMut(&[Vec<u32>])) {
    if next > n {
        f(labels);
        return;
    }
    for v in 0..s.vertex_count() {
        if (labels[v].len() as u32) < s.a[v] {
            labels[v].push(next);
            assign(s, next + 1, n, labels, f);
            labels[v].pop();
        }
    }
}

/// Isomorphism classes of stable graphs of type `(g, n)` with numbered legs,
/// optionally restricted to first Betti number `betti`.
pub fn enumerate_stable_graphs(g: u32, n: u32, betti: Option<u32>) -> Result<Vec<GraphClass>> {
    let shapes = stable_shapes(g, n)?;
    let mut out: Vec<(_, GraphClass)> = Vec::new();
    for sc in shapes {
        if betti.is_some_and(|b| sc.shape.betti() != b) {
            continue;
        }
        for gph in label_shape(&sc.shape) {
            let aut = aut_order(&gph);
            out.push((gph.canonical_key(), GraphClass { canonical: gph, aut_order: aut }));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out.into_iter().map(|x| x.1).collect())
}
