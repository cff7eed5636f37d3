//! Versioned JSON documents. Elements are coordinate arrays, except in
//! table groups where they are bare indices.

use serde::{Deserialize, Serialize};

use crate::cayley::{CayleyDigraph, Certificate, WalkKind};
use crate::error::{Error, Result};
use crate::families::Instance;
use crate::group::{Elem, FiniteGroup, GroupSpec};
use crate::search::{Method, SearchReport, SearchStats, Verdict};

pub const FORMAT: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ElemRepr {
    Index(i64),
    Coords(Vec<i64>),
}

impl ElemRepr {
    pub fn of(g: &FiniteGroup, x: Elem) -> ElemRepr {
        if g.uses_index_coords() {
            ElemRepr::Index(x.index() as i64)
        } else {
            ElemRepr::Coords(g.coords(x).iter().map(|&c| c as i64).collect())
        }
    }

    pub fn coords(&self) -> Vec<i64> {
        match self {
            ElemRepr::Index(i) => vec![*i],
            ElemRepr::Coords(c) => c.clone(),
        }
    }

    pub fn resolve(&self, g: &FiniteGroup) -> Result<Elem> {
        g.element(&self.coords())
    }
}

fn check_format(format: u32) -> Result<()> {
    if format == FORMAT {
        Ok(())
    } else {
        Err(Error::Format(format!("unsupported format {format}, expected {FORMAT}")))
    }
}

fn parse<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

/// A group together with a generator list.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceDoc {
    pub format: u32,
    pub group: GroupSpec,
    pub generators: Vec<ElemRepr>,
}

impl InstanceDoc {
    pub fn new(g: &FiniteGroup, gens: &[Elem]) -> InstanceDoc {
        InstanceDoc { format: FORMAT, group: g.spec().clone(), generators: gens.iter().map(|&x| ElemRepr::of(g, x)).collect() }
    }

    pub fn from_instance(inst: &Instance) -> InstanceDoc {
        let generators = if matches!(inst.spec, GroupSpec::Table { .. }) {
            inst.gens.iter().map(|c| ElemRepr::Index(c[0])).collect()
        } else {
            inst.gens.iter().map(|c| ElemRepr::Coords(c.clone())).collect()
        };
        InstanceDoc { format: FORMAT, group: inst.spec.clone(), generators }
    }

    pub fn resolve(&self) -> Result<(FiniteGroup, Vec<Elem>)> {
        check_format(self.format)?;
        let g = FiniteGroup::build(&self.group)?;
        let gens = self.generators.iter().map(|x| x.resolve(&g)).collect::<Result<_>>()?;
        Ok((g, gens))
    }
}

/// Reads either an [`InstanceDoc`] or a bare [`GroupSpec`].
pub fn read_group_file(text: &str) -> Result<(GroupSpec, Option<Vec<ElemRepr>>)> {
    let value: serde_json::Value = parse(text)?;
    if value.get("group").is_some() {
        let doc: InstanceDoc = parse(text)?;
        check_format(doc.format)?;
        Ok((doc.group, Some(doc.generators)))
    } else {
        Ok((parse(text)?, None))
    }
}

/// Parses a generator list: JSON (`[[2,1],[3,1]]` or `[6,8,9]`), or
/// `;`-separated elements with `,`-separated coordinates (`2,1;3,1`).
pub fn parse_generators(text: &str) -> Result<Vec<ElemRepr>> {
    let text = text.trim();
    if text.starts_with('[') {
        return parse(text);
    }
    text.split(';')
        .map(|elem| {
            let coords = elem
                .split(',')
                .map(|c| c.trim().parse::<i64>().map_err(|e| Error::Format(format!("bad coordinate {c:?}: {e}"))))
                .collect::<Result<Vec<_>>>()?;
            Ok(match coords.as_slice() {
                [i] => ElemRepr::Index(*i),
                _ => ElemRepr::Coords(coords),
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateDoc {
    pub format: u32,
    pub group: GroupSpec,
    pub generators: Vec<ElemRepr>,
    pub start: ElemRepr,
    pub labels: Vec<usize>,
    pub kind: WalkKind,
}

impl CertificateDoc {
    pub fn new(g: &FiniteGroup, gens: &[Elem], cert: &Certificate) -> CertificateDoc {
        CertificateDoc {
            format: FORMAT,
            group: g.spec().clone(),
            generators: gens.iter().map(|&x| ElemRepr::of(g, x)).collect(),
            start: ElemRepr::of(g, cert.start),
            labels: cert.labels.clone(),
            kind: cert.kind,
        }
    }

    pub fn from_json(text: &str) -> Result<CertificateDoc> {
        let doc: CertificateDoc = parse(text)?;
        check_format(doc.format)?;
        Ok(doc)
    }

    pub fn resolve(&self) -> Result<(FiniteGroup, Vec<Elem>, Certificate)> {
        check_format(self.format)?;
        let g = FiniteGroup::build(&self.group)?;
        let gens = self.generators.iter().map(|x| x.resolve(&g)).collect::<Result<Vec<_>>>()?;
        let start = self.start.resolve(&g)?;
        let cert = Certificate { kind: self.kind, start, labels: self.labels.clone() };
        Ok((g, gens, cert))
    }
}

/// Output of a decision run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub format: u32,
    pub kind: WalkKind,
    pub method: Method,
    pub verdict: Verdict,
    pub stats: SearchStats,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub certificate: Option<CertificateDoc>,
}

impl ReportDoc {
    pub fn new(d: &CayleyDigraph<'_>, kind: WalkKind, report: &SearchReport) -> ReportDoc {
        ReportDoc {
            format: FORMAT,
            kind,
            method: report.method,
            verdict: report.verdict,
            stats: report.stats,
            certificate: report.certificate.as_ref().map(|c| CertificateDoc::new(d.group(), d.gens().as_slice(), c)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{catalog, g5_example};

    #[test]
    fn certificate_round_trip() {
        let g = FiniteGroup::build(&GroupSpec::SemidirectCyclic { m: 12, p: 5, u: 3 }).unwrap();
        let gens = [g.element(&[2, 1]).unwrap(), g.element(&[3, 1]).unwrap()];
        let cert = Certificate::path(g.element(&[1, 4]).unwrap(), vec![0, 1, 1, 0]);
        let doc = CertificateDoc::new(&g, &gens, &cert);
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.starts_with(r#"{"format":1,"group":{"type":"semidirect_cyclic","m":12,"p":5,"u":3},"generators":[[2,1],[3,1]],"start":[1,4]"#));
        let back = CertificateDoc::from_json(&text).unwrap();
        assert_eq!(back, doc);
        let (_, gens2, cert2) = back.resolve().unwrap();
        assert_eq!(gens2, gens);
        assert_eq!(cert2, cert);
    }

    #[test]
    fn spec_round_trip_on_catalog() {
        for entry in catalog(24) {
            let text = serde_json::to_string(&entry.spec).unwrap();
            let back: GroupSpec = serde_json::from_str(&text).unwrap();
            assert_eq!(back, entry.spec, "{}", entry.name);
        }
    }

    #[test]
    fn table_elements_are_indices() {
        let spec = catalog(8).into_iter().find(|g| g.name == "Q8").unwrap().spec;
        let g = FiniteGroup::build(&spec).unwrap();
        let doc = InstanceDoc::new(&g, &[Elem::new(2), Elem::new(1)]);
        let text = serde_json::to_string(&doc).unwrap();
        assert!(text.ends_with(r#""generators":[2,1]}"#), "{text}");
        assert_eq!(serde_json::from_str::<InstanceDoc>(&text).unwrap().resolve().unwrap().1, vec![Elem::new(2), Elem::new(1)]);
    }

    #[test]
    fn generator_syntax() {
        assert_eq!(parse_generators("2,1;3,1").unwrap(), vec![ElemRepr::Coords(vec![2, 1]), ElemRepr::Coords(vec![3, 1])]);
        assert_eq!(parse_generators("6;8;9").unwrap(), vec![ElemRepr::Index(6), ElemRepr::Index(8), ElemRepr::Index(9)]);
        assert_eq!(parse_generators("[6,8,9]").unwrap().len(), 3);
        assert!(parse_generators("x").is_err());

        let text = serde_json::to_string(&InstanceDoc::from_instance(&g5_example())).unwrap();
        let (spec, gens) = read_group_file(&text).unwrap();
        assert_eq!(spec, g5_example().spec);
        assert_eq!(gens.unwrap().len(), 2);
        let (spec, gens) = read_group_file(r#"{"type":"cyclic","n":5}"#).unwrap();
        assert_eq!(spec, GroupSpec::Cyclic { n: 5 });
        assert!(gens.is_none());
        assert!(read_group_file(r#"{"format":2,"group":{"type":"cyclic","n":5},"generators":[]}"#).is_err());
    }
}
