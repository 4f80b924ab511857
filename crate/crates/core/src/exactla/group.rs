use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exactla::{smith_normal_form, LinalgError, Matrix, SmithDecomposition};
use crate::scalar::IntScalar;

/// Finitely generated abelian group `Z_{d₁} ⊕ … ⊕ Z_{d_k} ⊕ Z^r` in
/// invariant-factor form (`2 ≤ d₁ | d₂ | … | d_k`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AbelianGroup<T> {
    torsion: Vec<T>,
    free_rank: usize,
}

impl<T: IntScalar> AbelianGroup<T> {
    pub fn new(torsion: Vec<T>, free_rank: usize) -> Result<Self, LinalgError> {
        let two = T::one() + T::one();
        if let Some(d) = torsion.iter().find(|d| **d < two) {
            return Err(LinalgError::BadInvariantFactor(d.to_string()));
        }
        if torsion.windows(2).any(|w| !w[1].is_multiple_of(&w[0])) {
            return Err(LinalgError::DivisibilityChain(
                torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>().join(", "),
            ));
        }
        Ok(AbelianGroup { torsion, free_rank })
    }

    pub fn trivial() -> Self {
        AbelianGroup { torsion: Vec::new(), free_rank: 0 }
    }

    pub fn torsion(&self) -> &[T] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    /// Number of coordinates an element carries.
    pub fn dimension(&self) -> usize {
        self.torsion.len() + self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.dimension() == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Group order when finite.
    pub fn order(&self) -> Option<T> {
        self.is_finite().then(|| self.torsion.iter().fold(T::one(), |acc, d| acc * d.clone()))
    }

    /// Reduces torsion coordinates into `[0, dᵢ)`.
    pub fn reduce(&self, coords: &[T]) -> Vec<T> {
        assert_eq!(coords.len(), self.dimension(), "element has the wrong number of coordinates");
        coords
            .iter()
            .enumerate()
            .map(|(i, x)| match self.torsion.get(i) {
                Some(d) => x.mod_floor(d),
                None => x.clone(),
            })
            .collect()
    }

    pub fn point(&self, coords: Vec<T>) -> PointedGroup<T> {
        let point = self.reduce(&coords);
        PointedGroup { group: self.clone(), point }
    }
}

impl<T: IntScalar> fmt::Display for AbelianGroup<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        write!(f, "{}", parts.join(" + "))
    }
}

/// An abelian group with a distinguished element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PointedGroup<T> {
    group: AbelianGroup<T>,
    point: Vec<T>,
}

impl<T: IntScalar> PointedGroup<T> {
    pub fn group(&self) -> &AbelianGroup<T> {
        &self.group
    }

    pub fn point(&self) -> &[T] {
        &self.point
    }

    /// Moves the point to a fixed representative of its automorphism orbit
    /// where one is cheap to name: `gcd(x, d)` for a cyclic group `Z_d`, and
    /// `(content, 0, …)` for a free group. Other shapes are returned as is.
    pub fn normalized(&self) -> Self {
        let g = &self.group;
        let point = match (g.torsion.len(), g.free_rank) {
            (1, 0) => {
                let d = &g.torsion[0];
                vec![self.point[0].gcd(d).mod_floor(d)]
            }
            (0, r) if r > 0 => {
                let content = self.point.iter().fold(T::zero(), |acc, x| acc.gcd(x));
                let mut v = vec![T::zero(); r];
                v[0] = content;
                v
            }
            _ => self.point.clone(),
        };
        PointedGroup { group: g.clone(), point }
    }
}

impl<T: IntScalar> fmt::Display for PointedGroup<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pt: Vec<String> = self.point.iter().map(|x| x.to_string()).collect();
        write!(f, "({}, [{}])", self.group, pt.join(", "))
    }
}

/// `Z^n / A·Z^n` together with the map sending a vector to its class.
#[derive(Clone, Debug)]
pub struct Cokernel<T> {
    group: AbelianGroup<T>,
    smith: SmithDecomposition<T>,
    /// Indices into the Smith coordinates that survive (factor ≠ 1).
    kept: Vec<usize>,
}

impl<T: IntScalar> Cokernel<T> {
    pub fn group(&self) -> &AbelianGroup<T> {
        &self.group
    }

    pub fn smith(&self) -> &SmithDecomposition<T> {
        &self.smith
    }

    /// Class coordinates of `x`: torsion residues first, then free parts.
    pub fn project(&self, x: &[T]) -> Vec<T> {
        let ux = self.smith.u.mul_vec(x);
        let raw: Vec<T> = self.kept.iter().map(|&i| ux[i].clone()).collect();
        self.group.reduce(&raw)
    }

    pub fn pointed(&self, x: &[T]) -> PointedGroup<T> {
        self.group.point(self.project(x))
    }

    /// True iff `x` lies in the image lattice.
    pub fn contains(&self, x: &[T]) -> bool {
        self.project(x).iter().all(|c| c.is_zero())
    }

    /// A vector of `Z^n` representing the k-th generator of the group.
    pub fn generator(&self, k: usize) -> Vec<T> {
        self.smith.u_inv.column(self.kept[k])
    }
}

/// Cokernel of a square matrix acting on column vectors.
pub fn cokernel<T: IntScalar>(a: &Matrix<T>) -> Result<Cokernel<T>, LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    let smith = smith_normal_form(a);
    let diag = smith.diagonal();
    let mut torsion = Vec::new();
    let mut torsion_idx = Vec::new();
    let mut free_idx = Vec::new();
    for (i, d) in diag.iter().enumerate() {
        if d.is_zero() {
            free_idx.push(i);
        } else if !d.is_one() {
            torsion.push(d.clone());
            torsion_idx.push(i);
        }
    }
    let free_rank = free_idx.len();
    let group = AbelianGroup::new(torsion, free_rank)?;
    torsion_idx.extend(free_idx);
    Ok(Cokernel { group, smith, kept: torsion_idx })
}

/// Isomorphism of finitely generated abelian groups in invariant-factor form.
pub fn group_iso<T: IntScalar>(g: &AbelianGroup<T>, h: &AbelianGroup<T>) -> bool {
    g.free_rank == h.free_rank && g.torsion == h.torsion
}
