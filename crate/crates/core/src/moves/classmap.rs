use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::exactla::{cokernel, det, smith_normal_form};
use crate::graph::MultiGraph;
use crate::IntMatrix;

/// Integer images of the vertices of one graph in `Z^{n}` of another.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexClassMap {
    images: Vec<Vec<i64>>,
}

impl VertexClassMap {
    pub fn new(images: Vec<Vec<i64>>) -> Self {
        VertexClassMap { images }
    }

    pub fn images(&self) -> &[Vec<i64>] {
        &self.images
    }

    /// Columns are the images of source vertices.
    pub fn matrix(&self, target_dim: usize) -> Option<IntMatrix> {
        if self.images.iter().any(|x| x.len() != target_dim) {
            return None;
        }
        let mut m = IntMatrix::zeros(target_dim, self.images.len());
        for (j, x) in self.images.iter().enumerate() {
            for (i, &c) in x.iter().enumerate() {
                m[(i, j)] = BigInt::from(c);
            }
        }
        Some(m)
    }

    /// Image of the all-ones vector.
    pub fn image_of_unit(&self, target_dim: usize) -> Vec<i64> {
        let mut out = vec![0; target_dim];
        for x in &self.images {
            for (o, c) in out.iter_mut().zip(x) {
                *o += c;
            }
        }
        out
    }
}

/// True iff `m` sends the relation lattice of `src` into that of `tgt`
/// and the induced map of cokernels is bijective.
pub fn verify_vertex_class_map(src: &MultiGraph, tgt: &MultiGraph, m: &VertexClassMap) -> bool {
    if m.images.len() != src.vertex_count() {
        return false;
    }
    let Some(mm) = m.matrix(tgt.vertex_count()) else {
        return false;
    };
    let bs = src.relation_matrix();
    let (Ok(cs), Ok(ct)) = (cokernel(&bs), cokernel(&tgt.relation_matrix())) else {
        return false;
    };
    for j in 0..bs.cols() {
        if !ct.contains(&mm.mul_vec(&bs.column(j))) {
            return false;
        }
    }
    if cs.group() != ct.group() {
        return false;
    }
    let dim = cs.group().dimension();
    let t = cs.group().torsion().len();
    // induced map in the two Smith bases; block upper triangular because
    // torsion goes to torsion
    let mut phi = IntMatrix::zeros(dim, dim);
    for k in 0..dim {
        let image = ct.project(&mm.mul_vec(&cs.generator(k)));
        for (i, c) in image.into_iter().enumerate() {
            phi[(i, k)] = c;
        }
    }
    let r = dim - t;
    if r > 0 {
        let mut gamma = IntMatrix::zeros(r, r);
        for i in 0..r {
            for j in 0..r {
                gamma[(i, j)] = phi[(t + i, t + j)].clone();
            }
        }
        if !det(&gamma).is_ok_and(|d| d.abs().is_one()) {
            return false;
        }
    }
    if t > 0 {
        // α is onto ⊕ Z/d'ᵢ iff [α | diag(d')] has all invariant factors 1;
        // equal orders then make it bijective
        let mut aug = IntMatrix::zeros(t, 2 * t);
        for i in 0..t {
            for j in 0..t {
                aug[(i, j)] = phi[(i, j)].clone();
            }
            aug[(i, t + i)] = ct.group().torsion()[i].clone();
        }
        let s = smith_normal_form(&aug);
        if !s.diagonal().iter().all(|d| d.is_one()) {
            return false;
        }
    }
    true
}
