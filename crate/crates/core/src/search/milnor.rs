use serde::{Deserialize, Serialize};

use crate::group::{Elem, FiniteGroup};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MilnorVerdict {
    NoPath,
    Inconclusive,
}

/// `NoPath` when `|a| = 2`, `|b| = 3`, `⟨a, b⟩ = G` and `|G| ≥ 9|ab²|`.
/// With `sharp`, the threshold drops to `9|ab²| − 2`. Never claims a path exists.
pub fn milnor_test(g: &FiniteGroup, a: Elem, b: Elem, sharp: bool) -> MilnorVerdict {
    if g.element_order(a) != 2 || g.element_order(b) != 3 || !g.generates(&[a, b]) {
        return MilnorVerdict::Inconclusive;
    }
    let ab2 = g.element_order(g.mul(a, g.mul(b, b)));
    let bound = if sharp { 9 * ab2 - 2 } else { 9 * ab2 };
    if g.order() >= bound {
        MilnorVerdict::NoPath
    } else {
        MilnorVerdict::Inconclusive
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    #[test]
    fn degenerate_and_a4() {
        let a4 = FiniteGroup::build(&GroupSpec::Permutation {
            degree: 4,
            generators: vec![vec![1, 0, 3, 2], vec![1, 2, 0, 3]],
        })
        .unwrap();
        assert_eq!(milnor_test(&a4, Elem::IDENTITY, Elem::IDENTITY, false), MilnorVerdict::Inconclusive);
        let a = a4.element(&[1, 0, 3, 2]).unwrap();
        let b = a4.element(&[1, 2, 0, 3]).unwrap();
        let ab2 = a4.element_order(a4.mul(a, a4.mul(b, b)));
        assert!(a4.order() < 9 * ab2);
        assert_eq!(milnor_test(&a4, a, b, false), MilnorVerdict::Inconclusive);
        assert_eq!(milnor_test(&a4, a, b, true), MilnorVerdict::Inconclusive);
    }
}
