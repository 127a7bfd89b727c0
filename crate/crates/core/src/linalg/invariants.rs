use std::fmt;

use serde::{Deserialize, Serialize};

use super::int::Int;
use super::matrix::IntMatrix;
use super::snf::invariant_factors;

/// Isomorphism class of a finitely generated abelian group:
/// `Z^rank ⊕ Z/d_1 ⊕ ... ⊕ Z/d_k` with `1 < d_1 | d_2 | ... | d_k`.
///
/// Two groups are isomorphic exactly when their canonical forms are equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct AbelianGroupInvariants {
    pub rank: usize,
    pub torsion: Vec<Int>,
}

impl AbelianGroupInvariants {
    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroupInvariants { rank, torsion: Vec::new() }
    }

    /// Canonicalizes an arbitrary list of cyclic orders (`0` meaning `Z`,
    /// `±1` ignored).
    pub fn from_cyclic_orders(orders: &[Int]) -> Self {
        let rank = orders.iter().filter(|d| d.is_zero()).count();
        let finite: Vec<Int> = orders.iter().filter(|d| !d.is_zero() && !d.is_unit()).map(Int::abs).collect();
        let torsion = if finite.len() <= 1 {
            finite
        } else {
            let n = finite.len();
            let mut m = IntMatrix::zeros(n, n);
            for (i, d) in finite.into_iter().enumerate() {
                m[(i, i)] = d;
            }
            invariant_factors(&m).into_iter().filter(|d| !d.is_one()).collect()
        };
        AbelianGroupInvariants { rank, torsion }
    }

    /// Invariants of `Z^generators / R` where `nonzero_diagonal` are the
    /// nonzero Smith invariants of the relation matrix.
    pub fn from_relation_diagonal(generators: usize, nonzero_diagonal: &[Int]) -> Self {
        assert!(nonzero_diagonal.len() <= generators);
        AbelianGroupInvariants {
            rank: generators - nonzero_diagonal.len(),
            torsion: nonzero_diagonal.iter().filter(|d| !d.is_one()).cloned().collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders: Vec<Int> = vec![Int::ZERO; self.rank + other.rank];
        orders.extend(self.torsion.iter().cloned());
        orders.extend(other.torsion.iter().cloned());
        Self::from_cyclic_orders(&orders)
    }
}

impl fmt::Display for AbelianGroupInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" ⊕ "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_torsion_merges_coprime_orders() {
        let g = AbelianGroupInvariants::from_cyclic_orders(&[Int::from(2), Int::from(3), Int::ZERO]);
        assert_eq!(g, AbelianGroupInvariants { rank: 1, torsion: vec![Int::from(6)] });
        assert_eq!(g.to_string(), "Z ⊕ Z/6");
    }

    #[test]
    fn direct_sum_is_canonical() {
        let a = AbelianGroupInvariants { rank: 1, torsion: vec![Int::from(2)] };
        let b = AbelianGroupInvariants { rank: 0, torsion: vec![Int::from(4)] };
        let s = a.direct_sum(&b);
        assert_eq!(s, AbelianGroupInvariants { rank: 1, torsion: vec![Int::from(2), Int::from(4)] });
        assert_eq!(AbelianGroupInvariants::trivial().to_string(), "0");
    }

    #[test]
    fn json_shape() {
        let g = AbelianGroupInvariants { rank: 2, torsion: vec![Int::from(2)] };
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"{"rank":2,"torsion":[2]}"#);
    }
}
