//! Cross-checks every applicable method on catalog digraphs.

use rayon::prelude::*;
use serde::Serialize;

use crate::cayley::CayleyDigraph;
use crate::construct::{abelian_ham_path, check_small_commutator, rankin_decide, small_commutator_path};
use crate::error::Error;
use crate::families::catalog;
use crate::group::{Elem, FiniteGroup, GroupSpec};
use crate::io::{ElemRepr, FORMAT};
use crate::search::{dfs_ham_cycle, dfs_ham_path, structured_ham_path_2gen, SearchOptions, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurveyRecord {
    pub format: u32,
    pub name: String,
    pub group: GroupSpec,
    pub generators: Vec<ElemRepr>,
    pub path_dfs: Verdict,
    /// `None` when the pattern space is too large.
    pub path_structured: Option<Verdict>,
    pub cycle_dfs: Verdict,
    /// Only for abelian groups.
    pub cycle_rankin: Option<Verdict>,
    /// Whether the abelian construction verified, if it applies.
    pub abelian_path: Option<bool>,
    /// Whether the small-commutator construction verified, if it applies.
    pub small_commutator_path: Option<bool>,
    pub agree: bool,
}

/// Records for every unordered generating pair of every catalog group of
/// order `2..=max_order`, in catalog order.
pub fn survey(max_order: usize, opts: &SearchOptions) -> Vec<SurveyRecord> {
    let mut jobs = Vec::new();
    for entry in catalog(max_order) {
        let g = FiniteGroup::build(&entry.spec).expect("catalog entries build");
        let n = g.order();
        for i in 1..n {
            for j in i + 1..n {
                let (a, b) = (Elem::new(i), Elem::new(j));
                if g.generates(&[a, b]) {
                    jobs.push((entry.name.clone(), entry.spec.clone(), i, j));
                }
            }
        }
    }
    let inner = SearchOptions { workers: 1, ..*opts };
    opts.pool().install(|| {
        jobs.par_iter()
            .map(|(name, spec, i, j)| {
                let g = FiniteGroup::build(spec).expect("catalog entries build");
                survey_one(name, &g, &[Elem::new(*i), Elem::new(*j)], &inner)
            })
            .collect()
    })
}

pub fn survey_one(name: &str, g: &FiniteGroup, gens: &[Elem], opts: &SearchOptions) -> SurveyRecord {
    let d = CayleyDigraph::from_elems(g, gens).expect("distinct nontrivial generators");
    let path_dfs = dfs_ham_path(&d, None, opts).verdict;
    let path_structured = match structured_ham_path_2gen(&d, opts) {
        Ok(r) => Some(r.verdict),
        Err(Error::PatternLimit(_)) | Err(Error::NotTwoGenerated(_)) => None,
        Err(e) => panic!("structured search failed on {name}: {e}"),
    };
    let cycle_dfs = dfs_ham_cycle(&d, opts).verdict;
    let cycle_rankin = if g.is_abelian() && gens.len() == 2 {
        rankin_decide(g, gens[0], gens[1])
            .ok()
            .map(|w| if w.is_some() { Verdict::Exists } else { Verdict::NotExists })
    } else {
        None
    };
    let abelian_path = g.is_abelian().then(|| abelian_ham_path(&d).is_ok());
    let small_commutator_path = check_small_commutator(g).is_ok().then(|| small_commutator_path(&d).is_ok());

    let same = |x: Verdict, y: Option<Verdict>| y.is_none_or(|y| y == x);
    let constructed = |ok: Option<bool>| ok.is_none_or(|ok| ok && path_dfs == Verdict::Exists);
    let agree = same(path_dfs, path_structured)
        && same(cycle_dfs, cycle_rankin)
        && constructed(abelian_path)
        && constructed(small_commutator_path)
        && !(cycle_dfs == Verdict::Exists && path_dfs == Verdict::NotExists);
    SurveyRecord {
        format: FORMAT,
        name: name.to_string(),
        group: g.spec().clone(),
        generators: gens.iter().map(|&x| ElemRepr::of(g, x)).collect(),
        path_dfs,
        path_structured,
        cycle_dfs,
        cycle_rankin,
        abelian_path,
        small_commutator_path,
        agree,
    }
}

/// One JSON object per line.
pub fn to_jsonl(records: &[SurveyRecord]) -> String {
    records.iter().map(|r| serde_json::to_string(r).expect("serializable") + "\n").collect()
}
