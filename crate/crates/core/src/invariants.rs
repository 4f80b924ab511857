//! The Franks invariants: `coker(I − Aᵗ)` with the class of the all-ones
//! vector, and `det(I − Aᵗ)`.
//!
//! They are computed for every finite graph; the `pis` flag records whether
//! the graph's algebra is purely infinite simple, which is when the cokernel
//! is its Grothendieck group and the comparisons below carry algebraic
//! meaning.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Value};

use crate::exactla::{cokernel, det, group_iso, pointed_equivalent_with, Answer, PointedLimits};
use crate::graph::{classify_graph, MultiGraph};
use crate::{Int, Pointed};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FranksTriple {
    pointed: Pointed,
    determinant: Int,
    pis: bool,
}

impl FranksTriple {
    /// The group with the unit class, normalized within its orbit where a
    /// canonical representative is cheap.
    pub fn pointed(&self) -> &Pointed {
        &self.pointed
    }

    pub fn group(&self) -> &crate::Group {
        self.pointed.group()
    }

    pub fn unit(&self) -> &[Int] {
        self.pointed.point()
    }

    pub fn determinant(&self) -> &Int {
        &self.determinant
    }

    pub fn is_pis(&self) -> bool {
        self.pis
    }

    /// `{group: {torsion, free_rank}, unit, det, pis}`; integers that fit in
    /// an `i64` are JSON numbers, larger ones decimal strings.
    pub fn to_json(&self) -> Value {
        let g = self.group();
        json!({
            "group": {
                "torsion": g.torsion().iter().map(int_json).collect::<Vec<_>>(),
                "free_rank": g.free_rank(),
            },
            "unit": self.unit().iter().map(int_json).collect::<Vec<_>>(),
            "det": int_json(&self.determinant),
            "pis": self.pis,
        })
    }
}

pub fn int_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => Value::from(v),
        None => Value::from(x.to_string()),
    }
}

pub fn franks_triple(g: &MultiGraph) -> FranksTriple {
    let b = g.relation_matrix();
    let c = cokernel(&b).expect("relation matrices are square");
    let ones = vec![Int::one(); g.vertex_count()];
    FranksTriple {
        pointed: c.pointed(&ones).normalized(),
        determinant: det(&b).expect("relation matrices are square"),
        pis: classify_graph(g).purely_infinite_simple,
    }
}

/// Isomorphic groups and equal determinants.
pub fn equiv_det_pair(a: &FranksTriple, b: &FranksTriple) -> bool {
    group_iso(a.group(), b.group()) && a.determinant == b.determinant
}

/// Whether some group isomorphism carries unit class to unit class.
pub fn equiv_unitary_pair(a: &FranksTriple, b: &FranksTriple) -> Answer {
    equiv_unitary_pair_with(a, b, &PointedLimits::default())
}

pub fn equiv_unitary_pair_with(a: &FranksTriple, b: &FranksTriple, limits: &PointedLimits) -> Answer {
    pointed_equivalent_with(&a.pointed, &b.pointed, limits)
}

pub fn equiv_triple(a: &FranksTriple, b: &FranksTriple) -> Answer {
    equiv_unitary_pair(a, b).and(Answer::from_bool(a.determinant == b.determinant))
}
