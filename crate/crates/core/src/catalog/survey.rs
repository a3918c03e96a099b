//! Batch evaluation over many groups, quotient comparison, and the survey store.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::amenability::{amza, ass, report};
use crate::chartab::{character_table, CharacterTable};
use crate::closed_forms::GroupProfile;
use crate::error::{Error, Result};
use super::load_chartable;
use crate::group::{make_group_with, normal_closure, GroupSpec, quotient, BuildOptions, FiniteGroup, NormalSubgroup};
use crate::rational::{decimal_string, parse_rational, ratio_string, DECIMAL_PLACES};

/// AMZA and `ass` of `G` against those of `G/N`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientComparison {
    pub label: String,
    pub group_order: usize,
    pub normal_order: usize,
    pub normal_generators: Vec<usize>,
    pub amza_group: BigRational,
    pub amza_quotient: BigRational,
    pub ass_group: BigRational,
    pub ass_quotient: BigRational,
    /// `AMZA(G) >= AMZA(G/N)`
    pub amza_holds: bool,
    /// `ass(G) >= ass(G/N)`
    pub ass_holds: bool,
}

impl QuotientComparison {
    pub fn to_json(&self) -> Value {
        let r = |q: &BigRational| json!({"exact": ratio_string(q), "decimal": decimal_string(q, DECIMAL_PLACES)});
        json!({
            "label": self.label,
            "group_order": self.group_order,
            "normal_order": self.normal_order,
            "normal_generators": self.normal_generators,
            "amza_group": r(&self.amza_group),
            "amza_quotient": r(&self.amza_quotient),
            "ass_group": r(&self.ass_group),
            "ass_quotient": r(&self.ass_quotient),
            "amza_holds": self.amza_holds,
            "ass_holds": self.ass_holds,
        })
    }
}

/// Compares `G` with `G / <<n_gens>>`.
pub fn quotient_compare(g: &FiniteGroup, n_gens: &[usize]) -> Result<QuotientComparison> {
    let n = normal_closure(g, n_gens);
    let t = character_table(g)?;
    quotient_compare_with(g, &t, &n)
}

/// As [`quotient_compare`] with a precomputed table of `G`.
pub fn quotient_compare_with(g: &FiniteGroup, t: &CharacterTable, n: &NormalSubgroup) -> Result<QuotientComparison> {
    if n.is_trivial() || n.is_whole() {
        return Err(Error::Precondition(format!(
            "normal closure of order {} is not proper and nontrivial in a group of order {}",
            n.order(),
            g.order()
        )));
    }
    let tq = character_table(&quotient(g, n)?)?;
    let (amza_group, amza_quotient) = (amza(t)?, amza(&tq)?);
    let (ass_group, ass_quotient) = (ass(t)?, ass(&tq)?);
    Ok(QuotientComparison {
        label: g.label().to_string(),
        group_order: g.order(),
        normal_order: n.order(),
        normal_generators: n.generators().to_vec(),
        amza_holds: amza_group >= amza_quotient,
        ass_holds: ass_group >= ass_quotient,
        amza_group,
        amza_quotient,
        ass_group,
        ass_quotient,
    })
}

/// Proper nontrivial normal closures of single elements, one per distinct subgroup.
pub fn single_element_normal_closures(g: &FiniteGroup) -> Vec<NormalSubgroup> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in 1..g.order() {
        let n = normal_closure(g, &[x]);
        if n.is_whole() || !seen.insert(n.elements().to_vec()) {
            continue;
        }
        out.push(n);
    }
    out
}

/// One line of the survey store.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyRecord {
    pub label: String,
    pub order: usize,
    pub amza: String,
    pub amza_decimal: String,
    pub amzl: String,
    pub amzl_decimal: String,
    pub ass: String,
    pub ass_decimal: String,
    pub equal_flag: bool,
    pub cd_set: Vec<u64>,
    pub cc_set: Vec<usize>,
    pub quotient_violations: Vec<String>,
}

impl SurveyRecord {
    pub fn amza_value(&self) -> Option<BigRational> {
        parse_rational(&self.amza)
    }

    pub fn is_abelian(&self) -> bool {
        self.cd_set == [1]
    }

    /// `equal_flag` agrees with the stored exact strings.
    pub fn is_consistent(&self) -> bool {
        match (parse_rational(&self.amza), parse_rational(&self.amzl)) {
            (Some(a), Some(l)) => self.equal_flag == (a == l),
            _ => !self.equal_flag,
        }
    }

    pub const CSV_HEADER: [&'static str; 6] = ["label", "order", "amza", "amzl", "ass", "equal_flag"];
}

/// Evaluates one group. `normal_generators` lists the `N` to compare against;
/// with `all_normal` every single-element normal closure is tried as well.
pub fn survey_record(
    g: &FiniteGroup,
    normal_generators: &[Vec<usize>],
    all_normal: bool,
    tolerance_exponent: u32,
) -> Result<SurveyRecord> {
    let t = character_table(g)?;
    let mut subgroups: Vec<NormalSubgroup> = normal_generators.iter().map(|gens| normal_closure(g, gens)).collect();
    if all_normal {
        subgroups.extend(single_element_normal_closures(g));
    }
    let mut violations = Vec::new();
    let mut seen = BTreeSet::new();
    for n in &subgroups {
        if n.is_trivial() || n.is_whole() || !seen.insert(n.elements().to_vec()) {
            continue;
        }
        let c = quotient_compare_with(g, &t, n)?;
        if !c.amza_holds {
            violations.push(format!(
                "N of order {} generated by {:?}: AMZA(G) = {} < AMZA(G/N) = {}",
                c.normal_order,
                c.normal_generators,
                ratio_string(&c.amza_group),
                ratio_string(&c.amza_quotient)
            ));
        }
    }
    record_from_table(&t, violations, tolerance_exponent)
}

/// A record from a table alone, with the given quotient findings.
pub fn record_from_table(t: &CharacterTable, quotient_violations: Vec<String>, tolerance_exponent: u32) -> Result<SurveyRecord> {
    let r = report(t, tolerance_exponent)?;
    let amza_q = r.amza.value().cloned().expect("AMZA is always exact");
    let profile = GroupProfile::from_table(t);
    let (amzl, amzl_decimal) = match r.amzl.value() {
        Some(v) => (ratio_string(v), decimal_string(v, DECIMAL_PLACES)),
        None => (r.amzl.render(), decimal_string(&r.amzl.lo, DECIMAL_PLACES)),
    };
    Ok(SurveyRecord {
        label: t.label().to_string(),
        order: t.order(),
        amza: ratio_string(&amza_q),
        amza_decimal: decimal_string(&amza_q, DECIMAL_PLACES),
        equal_flag: r.amzl.value() == Some(&amza_q),
        amzl,
        amzl_decimal,
        ass: ratio_string(&r.ass),
        ass_decimal: decimal_string(&r.ass, DECIMAL_PLACES),
        cd_set: profile.cd_set.into_iter().collect(),
        cc_set: profile.cc_set.into_iter().collect(),
        quotient_violations,
    })
}

/// A group to survey, by spec string, with optional normal subgroups.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurveyInput {
    pub spec: String,
    #[serde(default)]
    pub normal_generators: Vec<Vec<usize>>,
    #[serde(default)]
    pub all_normal: bool,
}

impl SurveyInput {
    pub fn new(spec: impl Into<String>) -> Self {
        SurveyInput { spec: spec.into(), ..Default::default() }
    }
}

/// Aggregate view of a set of records; independent of record order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SurveySummary {
    pub total: usize,
    pub non_abelian: usize,
    pub unequal_count: usize,
    pub unequal_orders: BTreeSet<usize>,
    pub min_non_abelian_amza: Option<BigRational>,
    pub min_attained_by: Vec<String>,
    pub quotient_violations: BTreeMap<String, Vec<String>>,
    pub failures: Vec<(String, String)>,
}

impl SurveySummary {
    pub fn from_records<'a>(records: impl IntoIterator<Item = &'a SurveyRecord>) -> Self {
        let mut s = SurveySummary::default();
        for r in records {
            s.total += 1;
            if r.is_abelian() {
                continue;
            }
            s.non_abelian += 1;
            if !r.equal_flag {
                s.unequal_count += 1;
                s.unequal_orders.insert(r.order);
            }
            if !r.quotient_violations.is_empty() {
                s.quotient_violations.entry(r.label.clone()).or_default().extend(r.quotient_violations.iter().cloned());
            }
            if let Some(a) = r.amza_value() {
                match &s.min_non_abelian_amza {
                    Some(m) if *m < a => {}
                    Some(m) if *m == a => s.min_attained_by.push(r.label.clone()),
                    _ => {
                        s.min_non_abelian_amza = Some(a);
                        s.min_attained_by = vec![r.label.clone()];
                    }
                }
            }
        }
        s.min_attained_by.sort();
        s.min_attained_by.dedup();
        s
    }

    pub fn to_json(&self) -> Value {
        json!({
            "total": self.total,
            "non_abelian": self.non_abelian,
            "amza_ne_amzl": self.unequal_count,
            "unequal_orders": self.unequal_orders,
            "min_non_abelian_amza": self.min_non_abelian_amza.as_ref().map(ratio_string),
            "min_attained_by": self.min_attained_by,
            "quotient_violations": self.quotient_violations,
            "failures": self.failures.iter().map(|(s, e)| json!({"spec": s, "error": e})).collect::<Vec<_>>(),
        })
    }
}

/// Appends one JSON line per record; each line is written with a single call.
pub fn append_records(path: &Path, records: &[SurveyRecord]) -> Result<()> {
    let io = |e| Error::Io { path: path.to_path_buf(), source: e };
    let mut f = OpenOptions::new().create(true).append(true).open(path).map_err(io)?;
    for r in records {
        let mut line = serde_json::to_string(r).expect("record serializes");
        line.push('\n');
        f.write_all(line.as_bytes()).map_err(io)?;
    }
    f.flush().map_err(io)
}

/// Reads every complete line of a survey store.
pub fn read_records(path: &Path) -> Result<Vec<SurveyRecord>> {
    let f = std::fs::File::open(path).map_err(|e| Error::Io { path: path.to_path_buf(), source: e })?;
    let mut out = Vec::new();
    for (i, line) in BufReader::new(f).lines().enumerate() {
        let line = line.map_err(|e| Error::Io { path: path.to_path_buf(), source: e })?;
        if line.trim().is_empty() {
            continue;
        }
        let r = serde_json::from_str(&line)
            .map_err(|e| Error::Parse { path: path.to_path_buf(), reason: format!("line {}: {e}", i + 1) })?;
        out.push(r);
    }
    Ok(out)
}

/// CSV with the header row.
pub fn records_csv<'a>(records: impl IntoIterator<Item = &'a SurveyRecord>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SurveyRecord::CSV_HEADER).expect("in-memory write");
    for r in records {
        let order = r.order.to_string();
        let flag = r.equal_flag.to_string();
        w.write_record([r.label.as_str(), &order, &r.amza, &r.amzl, &r.ass, &flag]).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
}

/// Evaluates every input, appends the successful records to `out` when given,
/// and summarizes. Failing inputs are recorded in the summary and skipped.
pub fn survey(
    inputs: &[SurveyInput],
    out: Option<&Path>,
    opts: &BuildOptions,
    tolerance_exponent: u32,
) -> Result<(Vec<SurveyRecord>, SurveySummary)> {
    let mut records = Vec::new();
    let mut failures = Vec::new();
    for input in inputs {
        let rec = input.spec.parse::<GroupSpec>().and_then(|spec| match spec {
            GroupSpec::Ctbl(path) => {
                load_chartable(&opts.resolve(&path)).and_then(|t| record_from_table(&t, Vec::new(), tolerance_exponent))
            }
            spec => spec
                .build(opts)
                .and_then(|g| survey_record(&g, &input.normal_generators, input.all_normal, tolerance_exponent)),
        });
        match rec {
            Ok(r) => records.push(r),
            Err(e) => failures.push((input.spec.clone(), format!("{}: {e}", e.code()))),
        }
    }
    if let Some(path) = out {
        append_records(path, &records)?;
    }
    let mut summary = SurveySummary::from_records(&records);
    summary.failures = failures;
    Ok((records, summary))
}

/// The built-in corpus: family instances of order at most `max_order`,
/// with cyclic groups capped at order 24.
pub fn builtin_corpus(max_order: usize) -> Vec<String> {
    let mut specs = Vec::new();
    let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];
    let fits = |n: u64| n as usize <= max_order;
    for n in (1..=24).filter(|&n| fits(n)) {
        specs.push(format!("cyclic:{n}"));
    }
    for n in (6..=max_order as u64).step_by(2) {
        specs.push(format!("dihedral:{n}"));
    }
    for n in (8..=max_order as u64).step_by(4) {
        specs.push(format!("quaternion:{n}"));
    }
    for n in 3..=5u64 {
        if fits((1..=n).product()) {
            specs.push(format!("sym:{n}"));
        }
        if fits((1..=n).product::<u64>() / 2) && n >= 4 {
            specs.push(format!("alt:{n}"));
        }
    }
    for &p in primes.iter().filter(|&&p| p > 2) {
        if fits(p * p * p) {
            specs.push(format!("heisenberg:{p}"));
        }
    }
    for &p in &primes {
        if p > 2 && fits(p * (p - 1)) {
            specs.push(format!("aff:{p}"));
        }
        if fits(p * (p * p - 1)) {
            specs.push(format!("sl2:{p}"));
        }
    }
    let products = [
        ("dihedral:8", "cyclic:2"),
        ("quaternion:8", "cyclic:2"),
        ("dihedral:8", "cyclic:3"),
        ("sym:3", "cyclic:2"),
        ("sym:3", "cyclic:3"),
        ("sym:3", "sym:3"),
        ("alt:4", "cyclic:2"),
        ("sym:4", "cyclic:2"),
        ("sl2:3", "cyclic:2"),
        ("dihedral:8", "dihedral:8"),
        ("quaternion:8", "dihedral:8"),
        ("heisenberg:3", "cyclic:3"),
        ("aff:5", "cyclic:2"),
        ("alt:5", "cyclic:2"),
        ("direct(dihedral:8,cyclic:2)", "cyclic:2"),
    ];
    for (a, b) in products {
        let spec = format!("direct({a},{b})");
        if make_group_with(&spec, &BuildOptions { max_order, ..Default::default() }).is_ok() {
            specs.push(spec);
        }
    }
    specs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{derived_subgroup, make_group};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn s3_mod_derived() {
        let g = make_group("sym:3").unwrap();
        let gens = derived_subgroup(&g).elements().to_vec();
        let c = quotient_compare(&g, &gens).unwrap();
        assert_eq!(c.normal_order, 3);
        assert_eq!(c.amza_group, q(7, 3));
        assert_eq!(c.amza_quotient, q(1, 1));
        assert!(c.amza_holds && c.ass_holds);
    }

    #[test]
    fn improper_closures_rejected() {
        let g = make_group("sym:3").unwrap();
        assert!(matches!(quotient_compare(&g, &[0]), Err(Error::Precondition(_))));
        assert!(matches!(quotient_compare(&g, &[1, 2, 3, 4, 5]), Err(Error::Precondition(_))));
    }

    #[test]
    fn sl2_3_record() {
        let g = make_group("sl2:3").unwrap();
        let r = survey_record(&g, &[], false, 30).unwrap();
        assert_eq!(r.amza, "39/8");
        assert_eq!(r.amzl, "5/1");
        assert!(!r.equal_flag);
        assert!(r.is_consistent());
        assert_eq!(r.cd_set, vec![1, 2, 3]);
    }

    #[test]
    fn empty_survey() {
        let (records, summary) = survey(&[], None, &BuildOptions::default(), 30).unwrap();
        assert!(records.is_empty());
        assert_eq!(summary.total, 0);
        assert_eq!(summary.min_non_abelian_amza, None);
    }

    #[test]
    fn failures_are_skipped() {
        let inputs = [SurveyInput::new("heisenberg:4"), SurveyInput::new("sym:3")];
        let (records, summary) = survey(&inputs, None, &BuildOptions::default(), 30).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(summary.failures.len(), 1);
        assert!(summary.failures[0].1.starts_with("E_"));
    }

    #[test]
    fn store_round_trip_and_summary_order() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("store.jsonl");
        let inputs: Vec<_> = ["sym:3", "dihedral:8", "quaternion:8", "cyclic:4"].into_iter().map(SurveyInput::new).collect();
        let (records, summary) = survey(&inputs, Some(&path), &BuildOptions::default(), 30).unwrap();
        assert_eq!(read_records(&path).unwrap(), records);
        assert_eq!(summary.min_non_abelian_amza, Some(q(7, 4)));
        assert_eq!(summary.min_attained_by, vec!["dihedral:8".to_string(), "quaternion:8".to_string()]);
        let mut reversed = records.clone();
        reversed.reverse();
        assert_eq!(SurveySummary::from_records(&reversed), summary);
        append_records(&path, &records[..1]).unwrap();
        assert_eq!(read_records(&path).unwrap().len(), 5);
        let csv = records_csv(&records);
        assert!(csv.starts_with("label,order,amza,amzl,ass,equal_flag\n"));
        assert!(csv.contains("sym:3,6,7/3,7/3,5/3,true"));
        let quoted = records_csv(&[SurveyRecord { label: "direct(a,b)".into(), ..records[0].clone() }]);
        assert!(quoted.contains("\"direct(a,b)\",6,"));
    }

    #[test]
    fn corpus_is_buildable_and_bounded() {
        let corpus = builtin_corpus(60);
        assert!(corpus.contains(&"sl2:3".to_string()));
        assert!(corpus.contains(&"direct(dihedral:8,cyclic:2)".to_string()));
        assert!(!corpus.iter().any(|s| s == "sym:5"));
        for s in &corpus {
            assert!(make_group(s).unwrap().order() <= 60, "{s}");
        }
    }
}
