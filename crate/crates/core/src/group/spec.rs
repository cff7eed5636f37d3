use serde::{Deserialize, Serialize};

/// Declarative description of a finite group.
///
/// Serialized as a tagged union, e.g. `{"type":"semidirect_cyclic","m":12,"p":5,"u":3}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GroupSpec {
    /// Z_n.
    Cyclic { n: u32 },
    /// Direct product of the factors, coordinates concatenated in order.
    DirectProduct { factors: Vec<GroupSpec> },
    /// Z_m ⋉ Z_p where the generator h of Z_m acts by z^h = z^u.
    SemidirectCyclic { m: u32, p: u32, u: u32 },
    /// (Z_alpha × Z_beta) ⋉ Z_p with z^ā = z^-1 and z^b̄ = z^(r²).
    ///
    /// `relaxed` skips the coprimality side conditions and keeps only what is
    /// needed for the action to be well defined.
    SemidirectMetacyclic {
        alpha: u32,
        beta: u32,
        p: u32,
        r: u32,
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        relaxed: bool,
    },
    /// Subgroup of Sym(degree) generated by the given image arrays (0-based).
    /// Products compose left to right: (gh)(x) = h(g(x)).
    Permutation { degree: u32, generators: Vec<Vec<u32>> },
    /// Explicit multiplication table; element 0 must be the identity.
    Table { order: u32, table: Vec<Vec<u32>> },
}

impl GroupSpec {
    /// Product of the factor orders as declared, without building anything.
    /// `None` for permutation groups, whose order is only known after closure.
    pub fn declared_order(&self) -> Option<u64> {
        match self {
            GroupSpec::Cyclic { n } => Some(*n as u64),
            GroupSpec::DirectProduct { factors } => factors
                .iter()
                .map(GroupSpec::declared_order)
                .try_fold(1u64, |acc, o| o.map(|o| acc.saturating_mul(o))),
            GroupSpec::SemidirectCyclic { m, p, .. } => Some(*m as u64 * *p as u64),
            GroupSpec::SemidirectMetacyclic { alpha, beta, p, .. } => {
                Some(*alpha as u64 * *beta as u64 * *p as u64)
            }
            GroupSpec::Permutation { .. } => None,
            GroupSpec::Table { order, .. } => Some(*order as u64),
        }
    }

    /// Direct product of `self` with Z_n.
    pub fn times_cyclic(self, n: u32) -> GroupSpec {
        GroupSpec::DirectProduct { factors: vec![self, GroupSpec::Cyclic { n }] }
    }

    /// Abelian group Z_{n1} × ... × Z_{nk}.
    pub fn abelian(factors: &[u32]) -> GroupSpec {
        match factors {
            [n] => GroupSpec::Cyclic { n: *n },
            _ => GroupSpec::DirectProduct {
                factors: factors.iter().map(|&n| GroupSpec::Cyclic { n }).collect(),
            },
        }
    }
}
