//! Bundled polynomial lists and comparison of computed lists against them.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::multipoly::{MPoly, MonomialOrder, PolyError, Symbols, VarSet};
use crate::scalars::{Field, RatFunc};

pub const POINT_MINORS: &str = include_str!("../fixtures/point_minors.txt");
pub const LINE_QUARTICS: &str = include_str!("../fixtures/line_quartics.txt");

pub const X_VARS: [&str; 4] = ["x1", "x2", "x3", "x4"];
pub const M_VARS: [&str; 6] = ["M12", "M13", "M14", "M23", "M24", "M34"];

/// One polynomial per line; blank lines and `#` comments are skipped.
pub fn parse_poly_list<C: Symbols>(text: &str, vars: &Arc<VarSet>) -> Result<Vec<MPoly<C>>, (usize, PolyError)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, l)| MPoly::parse(l, vars).map_err(|e| (i, e)))
        .collect()
}

/// The fifteen bundled point-scheme polynomials in `x1..x4`.
pub fn point_minors() -> Vec<MPoly<RatFunc>> {
    let vars = VarSet::new(&X_VARS).expect("distinct names");
    parse_poly_list(POINT_MINORS, &vars).expect("bundled fixture parses")
}

/// The forty-six bundled line-scheme polynomials in `M12..M34`, `P` first.
pub fn line_quartics() -> Vec<MPoly<RatFunc>> {
    let vars = VarSet::new(&M_VARS).expect("distinct names");
    parse_poly_list(LINE_QUARTICS, &vars).expect("bundled fixture parses")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub matched: bool,
    pub computed: usize,
    pub golden: usize,
    /// For each computed entry, the index of the golden entry it matched.
    pub assignment: Vec<Option<usize>>,
    pub unmatched_computed: Vec<String>,
    pub unmatched_golden: Vec<String>,
}

fn keys<K: Field>(polys: &[MPoly<K>], canon: &impl Fn(&MPoly<K>) -> MPoly<K>) -> Vec<String> {
    polys.iter().map(|p| canon(p).to_string_with(MonomialOrder::GrevLex)).collect()
}

/// Multiset equality of canonical forms; each golden entry is used once.
pub fn compare_multisets<K: Field>(computed: &[MPoly<K>], golden: &[MPoly<K>], canon: impl Fn(&MPoly<K>) -> MPoly<K>) -> Comparison {
    let ck = keys(computed, &canon);
    let gk = keys(golden, &canon);
    let mut pool: HashMap<&str, Vec<usize>> = HashMap::new();
    for (i, k) in gk.iter().enumerate().rev() {
        pool.entry(k.as_str()).or_default().push(i);
    }
    let assignment: Vec<Option<usize>> = ck.iter().map(|k| pool.get_mut(k.as_str()).and_then(|v| v.pop())).collect();
    let used: Vec<usize> = assignment.iter().flatten().copied().collect();
    let unmatched_computed: Vec<String> =
        ck.iter().zip(&assignment).filter(|(_, a)| a.is_none()).map(|(k, _)| k.clone()).collect();
    let unmatched_golden: Vec<String> =
        gk.iter().enumerate().filter(|(i, _)| !used.contains(i)).map(|(_, k)| k.clone()).collect();
    Comparison {
        matched: unmatched_computed.is_empty() && unmatched_golden.is_empty(),
        computed: computed.len(),
        golden: golden.len(),
        assignment,
        unmatched_computed,
        unmatched_golden,
    }
}

/// Set equality of canonical forms (multiplicities ignored).
pub fn compare_sets<K: Field>(computed: &[MPoly<K>], golden: &[MPoly<K>], canon: impl Fn(&MPoly<K>) -> MPoly<K>) -> Comparison {
    let ck = keys(computed, &canon);
    let gk = keys(golden, &canon);
    let assignment: Vec<Option<usize>> = ck.iter().map(|k| gk.iter().position(|g| g == k)).collect();
    let unmatched_computed: Vec<String> =
        ck.iter().zip(&assignment).filter(|(_, a)| a.is_none()).map(|(k, _)| k.clone()).collect();
    let unmatched_golden: Vec<String> = gk.iter().filter(|g| !ck.contains(g)).cloned().collect();
    Comparison {
        matched: unmatched_computed.is_empty() && unmatched_golden.is_empty(),
        computed: computed.len(),
        golden: golden.len(),
        assignment,
        unmatched_computed,
        unmatched_golden,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::Ring;

    #[test]
    fn fixtures_parse() {
        let a = point_minors();
        assert_eq!(a.len(), 15);
        assert!(a.iter().all(|p| p.is_homogeneous() && p.total_degree() == Some(4)));
        let b = line_quartics();
        assert_eq!(b.len(), 46);
        assert_eq!(b[0].total_degree(), Some(2));
        assert!(b[1..].iter().all(|p| p.is_homogeneous() && p.total_degree() == Some(4)));
    }

    #[test]
    fn multiset_versus_set() {
        let v = VarSet::new(&["x", "y"]).unwrap();
        let p = |s: &str| MPoly::<RatFunc>::parse(s, &v).unwrap();
        let monic = |q: &MPoly<RatFunc>| q.monic(MonomialOrder::GrevLex);
        let computed = [p("2*x"), p("x"), p("y - x")];
        let golden = [p("x"), p("x - y")];
        assert!(compare_sets(&computed, &golden, monic).matched);
        let c = compare_multisets(&computed, &golden, monic);
        assert!(!c.matched);
        assert_eq!(c.unmatched_computed, vec!["x".to_string()]);
        let golden2 = [p("x"), p("-3*x"), p("x - y")];
        assert!(compare_multisets(&computed, &golden2, monic).matched);
        assert!(!compare_sets(&[p("x")], &[p("x"), p("y")], |q| q.scale(&RatFunc::one())).matched);
    }
}
