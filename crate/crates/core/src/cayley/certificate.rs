use std::fmt;

use serde::{Deserialize, Serialize};

use super::CayleyDigraph;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WalkKind {
    Path,
    Cycle,
}

impl fmt::Display for WalkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WalkKind::Path => "path",
            WalkKind::Cycle => "cycle",
        })
    }
}

/// A start vertex and a sequence of generator positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub kind: WalkKind,
    pub start: Elem,
    pub labels: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    WrongLength { expected: usize, found: usize },
    BadLabel { step: usize, label: usize },
    BadStart { start: usize },
    RepeatVertex { step: usize, vertex: Elem },
    NotClosed { end: Elem },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::WrongLength { expected, found } => {
                write!(f, "wrong length: expected {expected} labels, found {found}")
            }
            Rejection::BadLabel { step, label } => write!(f, "step {step}: label {label} is not a generator"),
            Rejection::BadStart { start } => write!(f, "start vertex {start} is not a group element"),
            Rejection::RepeatVertex { step, vertex } => {
                write!(f, "step {step}: vertex {} visited twice", vertex.index())
            }
            Rejection::NotClosed { end } => write!(f, "cycle ends at {} instead of its start", end.index()),
        }
    }
}

impl std::error::Error for Rejection {}

impl Certificate {
    pub fn path(start: Elem, labels: Vec<usize>) -> Certificate {
        Certificate { kind: WalkKind::Path, start, labels }
    }

    pub fn cycle(start: Elem, labels: Vec<usize>) -> Certificate {
        Certificate { kind: WalkKind::Cycle, start, labels }
    }

    /// Converts a word of generator elements into labels.
    pub fn from_word(d: &CayleyDigraph<'_>, kind: WalkKind, start: Elem, word: &[Elem]) -> Result<Certificate> {
        let labels = word
            .iter()
            .map(|&s| d.gens().position(s).ok_or_else(|| Error::ConstructionFailed(format!("{s} is not in S"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Certificate { kind, start, labels })
    }

    /// The generator elements along the walk.
    pub fn word(&self, d: &CayleyDigraph<'_>) -> Vec<Elem> {
        self.labels.iter().map(|&l| d.gens().get(l)).collect()
    }

    /// Vertices visited, including the start (and, for cycles, the return to it).
    pub fn vertices(&self, d: &CayleyDigraph<'_>) -> Vec<Elem> {
        let mut v = self.start;
        let mut out = vec![v];
        for &l in &self.labels {
            v = d.arc(v, l);
            out.push(v);
        }
        out
    }

    /// Left translate by `g`; Cayley digraphs are vertex-transitive.
    pub fn translated(&self, g: &FiniteGroup, by: Elem) -> Certificate {
        Certificate { start: g.mul(by, self.start), ..self.clone() }
    }
}

pub fn verify_certificate(d: &CayleyDigraph<'_>, cert: &Certificate) -> Result<(), Rejection> {
    let n = d.order();
    let expected = match cert.kind {
        WalkKind::Path => n - 1,
        WalkKind::Cycle => n,
    };
    if cert.labels.len() != expected {
        return Err(Rejection::WrongLength { expected, found: cert.labels.len() });
    }
    if cert.start.index() >= n {
        return Err(Rejection::BadStart { start: cert.start.index() });
    }
    let mut seen = vec![false; n];
    seen[cert.start.index()] = true;
    let mut v = cert.start;
    for (step, &l) in cert.labels.iter().enumerate() {
        if l >= d.degree() {
            return Err(Rejection::BadLabel { step, label: l });
        }
        v = d.arc(v, l);
        let closing = cert.kind == WalkKind::Cycle && step + 1 == n;
        if closing {
            if v != cert.start {
                return Err(Rejection::NotClosed { end: v });
            }
        } else if std::mem::replace(&mut seen[v.index()], true) {
            return Err(Rejection::RepeatVertex { step, vertex: v });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupSpec;

    fn cyclic(n: u32) -> FiniteGroup {
        FiniteGroup::build(&GroupSpec::Cyclic { n }).unwrap()
    }

    #[test]
    fn trivial_path() {
        let g = cyclic(1);
        let d = CayleyDigraph::from_elems(&g, &[]).unwrap();
        assert_eq!(d.verify(&Certificate::path(Elem::IDENTITY, vec![])), Ok(()));
    }

    #[test]
    fn z4_cycle() {
        let g = cyclic(4);
        let d = CayleyDigraph::from_elems(&g, &[Elem::new(1), Elem::new(3)]).unwrap();
        assert_eq!(d.verify(&Certificate::cycle(Elem::IDENTITY, vec![0; 4])), Ok(()));
        assert_eq!(d.verify(&Certificate::path(Elem::new(2), vec![1; 3])), Ok(()));
    }

    #[test]
    fn rejections() {
        let g = cyclic(4);
        let d = CayleyDigraph::from_elems(&g, &[Elem::new(1), Elem::new(3)]).unwrap();
        assert_eq!(
            d.verify(&Certificate::cycle(Elem::IDENTITY, vec![0; 3])),
            Err(Rejection::WrongLength { expected: 4, found: 3 })
        );
        assert_eq!(
            d.verify(&Certificate::path(Elem::IDENTITY, vec![0, 1, 0])),
            Err(Rejection::RepeatVertex { step: 1, vertex: Elem::IDENTITY })
        );
        assert_eq!(
            d.verify(&Certificate::path(Elem::IDENTITY, vec![0, 2, 0])),
            Err(Rejection::BadLabel { step: 1, label: 2 })
        );
        let z5 = cyclic(5);
        let d = CayleyDigraph::from_elems(&z5, &[Elem::new(1), Elem::new(2)]).unwrap();
        assert_eq!(
            d.verify(&Certificate::cycle(Elem::IDENTITY, vec![0, 0, 0, 0, 1])),
            Err(Rejection::NotClosed { end: Elem::new(1) })
        );
    }
}
