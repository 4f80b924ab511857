//! Isomorphism of small multigraphs by exhaustive search over vertex orders.

use crate::graph::{GraphError, MultiGraph, VertexId};

/// Brute force is exact but factorial; larger graphs are refused.
pub const MAX_ISO_VERTICES: usize = 8;

/// A complete isomorphism invariant: two graphs have equal forms iff they
/// are isomorphic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    n: usize,
    key: Vec<u32>,
}

impl CanonicalForm {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// The canonical incidence matrix as rows.
    #[allow(clippy::needless_range_loop)] // symmetric fill reads clearer by index
    pub fn matrix(&self) -> Vec<Vec<u32>> {
        let n = self.n;
        let mut m = vec![vec![0; n]; n];
        let mut it = self.key.iter();
        for k in 0..n {
            it.next(); // invariant prefix
            it.next();
            it.next();
            m[k][k] = *it.next().unwrap();
            for i in 0..k {
                m[k][i] = *it.next().unwrap();
                m[i][k] = *it.next().unwrap();
            }
        }
        m
    }
}

struct Search<'a> {
    a: &'a [Vec<u32>],
    inv: Vec<[u32; 3]>,
    best: Option<(Vec<u32>, Vec<VertexId>)>,
}

impl Search<'_> {
    /// Key block contributed by placing vertex `v` after `placed`.
    fn shell(&self, placed: &[VertexId], v: VertexId) -> Vec<u32> {
        let mut s = Vec::with_capacity(4 + 2 * placed.len());
        s.extend_from_slice(&self.inv[v]);
        s.push(self.a[v][v]);
        for &u in placed {
            s.push(self.a[v][u]);
            s.push(self.a[u][v]);
        }
        s
    }

    fn run(&mut self, placed: &mut Vec<VertexId>, key: &mut Vec<u32>, used: &mut [bool]) {
        let n = self.a.len();
        if placed.len() == n {
            if self.best.as_ref().is_none_or(|(b, _)| key.as_slice() < b.as_slice()) {
                self.best = Some((key.clone(), placed.clone()));
            }
            return;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            let start = key.len();
            key.extend(self.shell(placed, v));
            // prune when the extended prefix already exceeds the best key
            if let Some((b, _)) = &self.best {
                if key.as_slice() > &b[..key.len()] {
                    key.truncate(start);
                    continue;
                }
            }
            placed.push(v);
            used[v] = true;
            self.run(placed, key, used);
            used[v] = false;
            placed.pop();
            key.truncate(start);
        }
    }
}

fn canonical_with_order(g: &MultiGraph) -> Result<(CanonicalForm, Vec<VertexId>), GraphError> {
    let n = g.vertex_count();
    if n > MAX_ISO_VERTICES {
        return Err(GraphError::TooLargeForIsomorphism { n, limit: MAX_ISO_VERTICES });
    }
    let mut a = vec![vec![0u32; n]; n];
    for e in g.edges() {
        a[e.source][e.target] += 1;
    }
    let inv = (0..n)
        .map(|v| {
            let out: u32 = a[v].iter().sum();
            let inn: u32 = a.iter().map(|r| r[v]).sum();
            [a[v][v], out, inn]
        })
        .collect();
    let mut s = Search { a: &a, inv, best: None };
    s.run(&mut Vec::new(), &mut Vec::new(), &mut vec![false; n]);
    let (key, order) = s.best.expect("at least one vertex order exists");
    Ok((CanonicalForm { n, key }, order))
}

/// Canonical form by branch and bound over vertex orders. Each vertex
/// contributes its (loop, out-degree, in-degree) triple followed by its
/// incidences with previously placed vertices; the least such key wins.
pub fn canonical_form(g: &MultiGraph) -> Result<CanonicalForm, GraphError> {
    canonical_with_order(g).map(|(c, _)| c)
}

pub fn is_isomorphic(g: &MultiGraph, h: &MultiGraph) -> Result<bool, GraphError> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(false);
    }
    Ok(canonical_form(g)? == canonical_form(h)?)
}

/// A permutation `perm` with `g.permute(&perm)` matrix-equal to `h`.
pub fn find_isomorphism(g: &MultiGraph, h: &MultiGraph) -> Result<Option<Vec<VertexId>>, GraphError> {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let (cg, og) = canonical_with_order(g)?;
    let (ch, oh) = canonical_with_order(h)?;
    if cg != ch {
        return Ok(None);
    }
    // og[k] in g and oh[k] in h both sit at canonical position k
    let mut perm = vec![0; g.vertex_count()];
    for (k, &v) in og.iter().enumerate() {
        perm[v] = oh[k];
    }
    Ok(Some(perm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in permutations(n - 1) {
            for pos in 0..=p.len() {
                let mut q = p.clone();
                q.insert(pos, n - 1);
                out.push(q);
            }
        }
        out
    }

    /// Oracle: try every permutation.
    fn brute_isomorphic(g: &MultiGraph, h: &MultiGraph) -> bool {
        g.vertex_count() == h.vertex_count()
            && permutations(g.vertex_count()).iter().any(|p| g.permute(p).same_matrix(h))
    }

    fn random_graph(rng: &mut impl Rng, n: usize, max: usize) -> MultiGraph {
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for _ in 0..rng.gen_range(0..=max) {
                    pairs.push((i, j));
                }
            }
        }
        MultiGraph::from_edges(n, &pairs).unwrap()
    }

    #[test]
    fn permuted_copies_share_canonical_form() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(1..=5);
            let g = random_graph(&mut rng, n, 2);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let h = g.permute(&perm);
            assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
            let found = find_isomorphism(&g, &h).unwrap().expect("isomorphic");
            assert!(g.permute(&found).same_matrix(&h));
        }
    }

    #[test]
    fn agrees_with_brute_force() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(5);
        for _ in 0..400 {
            let n = rng.gen_range(1..=4);
            let g = random_graph(&mut rng, n, 1);
            let h = random_graph(&mut rng, n, 1);
            assert_eq!(is_isomorphic(&g, &h).unwrap(), brute_isomorphic(&g, &h), "{g:?} vs {h:?}");
        }
    }

    #[test]
    fn matrix_round_trip_is_isomorphic() {
        let g = MultiGraph::from_rows(&[[0, 2, 1], [1, 0, 0], [0, 3, 1]]).unwrap();
        let c = canonical_form(&g).unwrap();
        let rows: Vec<Vec<i64>> = c.matrix().iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
        let h = MultiGraph::from_rows(&rows).unwrap();
        assert!(brute_isomorphic(&g, &h));
    }

    #[test]
    fn refuses_large_graphs() {
        let g = MultiGraph::new(9, vec![]).unwrap();
        assert!(matches!(canonical_form(&g), Err(GraphError::TooLargeForIsomorphism { .. })));
    }
}
