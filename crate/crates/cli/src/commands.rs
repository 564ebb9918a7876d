//! One function per subcommand. Each returns the report both as JSON and as
//! text; `main` picks one.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::io::Read as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use arrangements::arrangement::{
    build_intersection_poset, is_generic, is_hyperplane_arrangement, parse_arrangement, AnyArrangement, Arrangement,
};
use arrangements::complexes::k_hypergraph_pair;
use arrangements::gm::{gm_report, graded_ring_table, wedge_summary, GmReport, Orientation, RingTable};
use arrangements::homology::{pair_homology, HomologySummary, PairRoute};
use arrangements::linalg::{Field, FieldTag, Gaussian, Rational};
use arrangements::matroid::{
    check_matroid_axioms, matroid_from_arrangement, mnev_check, same_dimensional_data, AxiomViolation, RankFunction,
};
use arrangements::os::os_report;
use arrangements::real::{
    enumerate_regions, imaginary_wedge_census, salvetti_census, salvetti_census_brute_force, Region,
};
use arrangements::twisted::{
    one_dim_twisted_complex, resonance_generic, twisted_dim_normal_crossing, MonodromyData, Tau, TwistedPrediction,
};
use arrangements::Error;

use crate::{Failure, Output, Settings};

type CliResult = Result<Output, Failure>;

fn output<T: Serialize>(report: &T, text: String) -> CliResult {
    Ok(Output { json: serde_json::to_value(report).expect("reports serialize"), text, mismatch: false })
}

fn read_input(path: &Path) -> Result<String, Failure> {
    let mut text = String::new();
    let result = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    result.map_err(|e| Failure::input("E_IO", format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

fn load(path: &Path) -> Result<AnyArrangement, Failure> {
    Ok(parse_arrangement(&read_input(path)?)?)
}

/// The arrangement whose real complement is studied: complex inputs are
/// realified, and `--complexify` turns a real input into its complexification
/// first.
fn topological(any: &AnyArrangement, settings: &Settings) -> Arrangement<Rational> {
    match any {
        AnyArrangement::Rational(a) if settings.complexify => a.complexify().realify(),
        _ => any.to_real(),
    }
}

/// A complex arrangement, either declared or complexified on request.
fn complex(any: &AnyArrangement, settings: &Settings) -> Result<Arrangement<Gaussian>, Failure> {
    match any {
        AnyArrangement::Gaussian(a) => Ok(a.clone()),
        AnyArrangement::Rational(a) if settings.complexify => Ok(a.complexify()),
        AnyArrangement::Rational(_) => Err(Failure::input(
            "E_FIELD",
            "this command needs a complex arrangement: declare field \"Q(i)\", or pass --complexify for a real one",
        )),
    }
}

fn real(any: &AnyArrangement) -> Result<&Arrangement<Rational>, Failure> {
    match any {
        AnyArrangement::Rational(a) => Ok(a),
        AnyArrangement::Gaussian(_) => {
            Err(Error::FieldMismatch { expected: FieldTag::Rational, found: FieldTag::Gaussian }.into())
        }
    }
}

fn join<T: ToString>(v: &[T], sep: &str) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(sep)
}

fn set(v: &[usize]) -> String {
    format!("{{{}}}", join(v, ","))
}

fn torsion_text(t: &[u64]) -> String {
    if t.is_empty() {
        String::new()
    } else {
        format!(", torsion {}", t.iter().map(|o| format!("Z/{o}")).collect::<Vec<_>>().join(" + "))
    }
}

fn homology_text(h: &HomologySummary) -> String {
    let mut s = String::new();
    for (d, g) in h.nonzero() {
        let _ = writeln!(s, "degree {d}: rank {}{}", g.rank, torsion_text(&g.torsion));
    }
    if s.is_empty() {
        s.push_str("acyclic\n");
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetEntry {
    pub index: usize,
    /// 1-based plane indices.
    pub generators: Vec<usize>,
    pub dim: usize,
    pub codim: usize,
    pub mobius: i64,
    /// Nodes strictly containing this one.
    pub below: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetReport {
    pub ambient_dim: usize,
    pub labels: Vec<String>,
    pub nodes: Vec<PosetEntry>,
}

fn poset_report<F: Field>(arr: &Arrangement<F>) -> PosetReport {
    let poset = build_intersection_poset(arr);
    let nodes = (0..poset.len())
        .map(|x| {
            let node = poset.node(x);
            PosetEntry {
                index: x,
                generators: node.generator_indices().iter().map(|g| g + 1).collect(),
                dim: node.dim,
                codim: node.codim,
                mobius: poset.mobius(x),
                below: poset.below(x).to_vec(),
            }
        })
        .collect();
    PosetReport { ambient_dim: arr.ambient_dim(), labels: arr.labels(), nodes }
}

pub fn poset(path: &Path, _settings: &Settings) -> CliResult {
    let report = match load(path)? {
        AnyArrangement::Rational(a) => poset_report(&a),
        AnyArrangement::Gaussian(a) => poset_report(&a),
    };
    let mut text = String::new();
    for e in &report.nodes {
        let _ = writeln!(text, "{}: {} dim {} codim {} mobius {}", e.index, set(&e.generators), e.dim, e.codim, e.mobius);
    }
    output(&report, text)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiReport {
    pub reduced: bool,
    pub betti: Vec<usize>,
    pub torsion_free: bool,
}

pub fn betti(path: &Path, settings: &Settings) -> CliResult {
    let arr = topological(&load(path)?, settings);
    let gm = gm_report(&arr, settings.opts)?;
    let mut betti = if settings.reduced { gm.reduced_ranks() } else { gm.betti() };
    while betti.len() > 1 && betti.last() == Some(&0) {
        betti.pop();
    }
    let report = BettiReport { reduced: settings.reduced, betti, torsion_free: gm.is_torsion_free() };
    let mut text = format!("{}\n", join(&report.betti, " "));
    if !report.torsion_free {
        for d in gm.degrees.iter().filter(|d| !d.torsion.is_empty()) {
            let _ = writeln!(text, "degree {}{}", d.degree, torsion_text(&d.torsion));
        }
    }
    output(&report, text)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GmOutput {
    pub cohomology: GmReport,
    pub ring: Option<RingTable>,
}

fn ring_text(table: &RingTable) -> String {
    let mut s = String::from("ring basis:\n");
    for c in &table.classes {
        let _ = writeln!(s, "  c{} = {} degree {}", c.index, set(&c.generators), c.degree);
    }
    s.push_str("products:\n");
    for p in table.products.iter().filter(|p| p.left != 0 && p.right != 0) {
        let terms: Vec<String> = p.result.iter().map(|&(c, k)| format!("{k}*c{c}")).collect();
        let _ = writeln!(s, "  c{} * c{} = {}", p.left, p.right, terms.join(" + "));
    }
    for (a, b, why) in &table.skipped_torsion {
        let _ = writeln!(s, "  c{a} * c{b} skipped: {why}");
    }
    s
}

pub fn gm(path: &Path, ring: bool, settings: &Settings) -> CliResult {
    let any = load(path)?;
    let arr = topological(&any, settings);
    let cohomology = gm_report(&arr, settings.opts)?;
    let mut text = String::new();
    for d in &cohomology.degrees {
        let shown = if d.degree == 0 && !settings.reduced { d.rank + 1 } else { d.rank };
        let _ = writeln!(text, "degree {}: rank {}{}", d.degree, shown, torsion_text(&d.torsion));
        for c in &d.contributions {
            let _ = writeln!(
                text,
                "  node {} dim {} codim {}: pair degree {}, rank {}{}",
                set(&c.generators),
                c.dim,
                c.filtration,
                c.pair_degree,
                c.rank,
                torsion_text(&c.torsion)
            );
        }
    }
    let ring = if ring {
        let poset = build_intersection_poset(&arr);
        let orientation = match &any {
            AnyArrangement::Gaussian(a) => Orientation::complex(a, &poset),
            AnyArrangement::Rational(a) if settings.complexify => Orientation::complex(&a.complexify(), &poset),
            AnyArrangement::Rational(_) => Orientation::canonical(&poset),
        };
        let table = graded_ring_table(&poset, &orientation, settings.opts)?;
        text.push_str(&ring_text(&table));
        Some(table)
    } else {
        None
    };
    output(&GmOutput { cohomology, ring }, text)
}

pub fn os(path: &Path, settings: &Settings) -> CliResult {
    let arr = complex(&load(path)?, settings)?;
    let report = os_report(&arr, settings.opts.execution)?;
    let mut text = format!("poincare: {}\n", join(&report.poincare, " "));
    if report.coned {
        let _ = writeln!(text, "coned: {}", join(&report.dims, " "));
    }
    for (d, monomials) in report.basis.iter().enumerate() {
        let names: Vec<String> = monomials
            .iter()
            .map(|m| if m.is_empty() { "1".to_string() } else { m.iter().map(|i| format!("e{i}")).collect() })
            .collect();
        let _ = writeln!(text, "degree {d}: {}", names.join(" "));
    }
    output(&report, text)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionsReport {
    pub count: usize,
    pub bounded: usize,
    pub regions: Vec<Region>,
}

pub fn regions(path: &Path, _settings: &Settings) -> CliResult {
    let any = load(path)?;
    let regions = enumerate_regions(real(&any)?)?;
    let report = RegionsReport { count: regions.len(), bounded: regions.iter().filter(|r| r.bounded).count(), regions };
    let mut text = format!("{} regions, {} bounded\n", report.count, report.bounded);
    for r in &report.regions {
        let _ = writeln!(
            text,
            "{} {} ({})",
            r.signs,
            if r.bounded { "bounded" } else { "unbounded" },
            join(&r.witness, ", ")
        );
    }
    output(&report, text)
}

pub fn salvetti(path: &Path, brute_force: bool, settings: &Settings) -> CliResult {
    let any = load(path)?;
    let arr = real(&any)?;
    let census =
        if brute_force { salvetti_census_brute_force(arr)? } else { salvetti_census(arr, settings.opts.execution)? };
    let mut text = String::new();
    for (d, c) in &census.cells {
        let _ = writeln!(text, "dim {d}: {c}");
    }
    let _ = writeln!(text, "total {} (with the added point)", census.total());
    let _ = writeln!(text, "euler characteristic {}", census.euler_characteristic());
    output(&census, text)
}

pub fn wedges(path: &Path, imaginary: bool, settings: &Settings) -> CliResult {
    let any = load(path)?;
    if imaginary {
        let census = imaginary_wedge_census(real(&any)?)?;
        let mut text = String::new();
        for c in &census.cells {
            let _ = writeln!(text, "{} dim {}", set(&c.generators), c.dim);
        }
        let _ = writeln!(text, "betti: {}", join(&census.cohomology_ranks(), " "));
        return output(&census, text);
    }
    let summary = wedge_summary(&topological(&any, settings), settings.opts)?;
    let mut text = String::new();
    for w in &summary.summands {
        let bm: Vec<String> =
            w.borel_moore.nonzero().iter().map(|(d, g)| format!("BM_{d} rank {}{}", g.rank, torsion_text(&g.torsion))).collect();
        let _ = writeln!(text, "node {} dim {}: {}", set(&w.generators), w.dim, bm.join("; "));
    }
    let totals: Vec<String> = summary.borel_moore_ranks.iter().map(|(d, r)| format!("{d}:{r}")).collect();
    let _ = writeln!(text, "borel-moore ranks: {}", totals.join(" "));
    let _ = writeln!(text, "reduced cohomology by duality: {}", join(&summary.dual_cohomology_ranks(), " "));
    output(&summary, text)
}

pub fn graph_complex(n: usize, k: usize, settings: &Settings) -> CliResult {
    let pair = k_hypergraph_pair(n, k)?;
    let h = pair_homology(&pair, PairRoute::Auto, settings.opts)?;
    let text = homology_text(&h);
    output(&h, text)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwistedReport {
    pub monodromy: MonodromyData,
    pub normal_crossing: Option<TwistedPrediction>,
    pub generic: Option<TwistedPrediction>,
    pub punctured_line: Option<HomologySummary>,
}

fn parse_list<T: std::str::FromStr>(what: &str, s: &str) -> Result<Vec<T>, Failure>
where
    T::Err: std::fmt::Display,
{
    s.split(',')
        .map(|item| item.trim().parse::<T>().map_err(|e| Failure::input("E_ARGUMENT", format!("bad {what} {item:?}: {e}"))))
        .collect()
}

fn monodromy(taus: Vec<Tau>, m: usize) -> Result<MonodromyData, Failure> {
    let taus = if taus.len() == 1 { vec![taus[0].clone(); m] } else { taus };
    if taus.len() != m {
        return Err(Failure::input("E_ARGUMENT", format!("{} monodromy values for {m} hyperplanes", taus.len())));
    }
    Ok(MonodromyData::new(taus)?)
}

fn prediction_text(label: &str, p: &TwistedPrediction) -> String {
    if p.applicable {
        let bijective = match p.canonical_map_bijective {
            Some(true) => ", canonical map bijective",
            Some(false) => ", canonical map not bijective",
            None => "",
        };
        format!("{label}: dimension {} in degree {}{bijective}\n", p.dimension, p.degree)
    } else {
        format!("{label}: not applicable ({})\n", p.reason)
    }
}

pub fn twisted(path: Option<&Path>, tau: &str, points: Option<&str>, settings: &Settings) -> CliResult {
    let taus: Vec<Tau> = parse_list("monodromy value", tau)?;
    let report = match (path, points) {
        (None, Some(points)) => {
            let points: Vec<Rational> = parse_list("point", points)?;
            let md = monodromy(taus, points.len())?;
            let h = one_dim_twisted_complex(&points, &md)?;
            TwistedReport { monodromy: md, normal_crossing: None, generic: None, punctured_line: Some(h) }
        }
        (Some(path), None) => {
            let any = load(path)?;
            let md = monodromy(taus, any.len())?;
            let (hyperplanes, generic) = match &any {
                AnyArrangement::Rational(a) => (is_hyperplane_arrangement(a), is_generic(a)?),
                AnyArrangement::Gaussian(a) => (is_hyperplane_arrangement(a), is_generic(a)?),
            };
            if !hyperplanes {
                return Err(Error::NotHyperplanes.into());
            }
            let normal_crossing = match &any {
                AnyArrangement::Rational(a) => Some(twisted_dim_normal_crossing(a, &md)?),
                AnyArrangement::Gaussian(_) => None,
            };
            let generic = generic.then(|| resonance_generic(&md, any.ambient_dim()));
            TwistedReport { monodromy: md, normal_crossing, generic, punctured_line: None }
        }
        _ => return Err(Failure::input("E_ARGUMENT", "give either an arrangement file or --points")),
    };
    let _ = settings;
    let mut text = String::new();
    if let Some(p) = &report.normal_crossing {
        text.push_str(&prediction_text("normal crossing", p));
    }
    if let Some(p) = &report.generic {
        text.push_str(&prediction_text("generic", p));
    }
    if let Some(h) = &report.punctured_line {
        text.push_str(&homology_text(h));
    }
    output(&report, text)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidReport {
    pub ground_size: usize,
    pub ranks: RankFunction,
    pub violations: Vec<AxiomViolation>,
}

pub fn matroid(path: &Path, rank_function: bool, empty_rank_zero: bool, _settings: &Settings) -> CliResult {
    let ranks: RankFunction = if rank_function {
        let text = read_input(path)?;
        serde_json::from_str(&text).map_err(|e| {
            Failure::from(Error::Json { line: e.line(), column: e.column(), message: e.to_string() })
        })?
    } else {
        match load(path)? {
            AnyArrangement::Rational(a) => matroid_from_arrangement(&a)?,
            AnyArrangement::Gaussian(a) => matroid_from_arrangement(&a)?,
        }
    };
    let violations = check_matroid_axioms(&ranks, empty_rank_zero);
    let report = MatroidReport { ground_size: ranks.ground_size(), ranks, violations };
    let mut text = String::new();
    let ranks: BTreeMap<u64, usize> = report.ranks.to_map();
    for (mask, r) in &ranks {
        let members: Vec<usize> = (0..report.ground_size).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        let _ = writeln!(text, "r{} = {r}", set(&members));
    }
    if report.violations.is_empty() {
        text.push_str("axioms hold\n");
    }
    for v in &report.violations {
        let _ = writeln!(text, "axiom {} violated: {}", v.axiom, v.message);
    }
    output(&report, text)
}

pub fn mnev(alpha: &str) -> CliResult {
    let alpha: Gaussian =
        alpha.trim().parse().map_err(|e| Failure::input("E_ARGUMENT", format!("bad alpha {alpha:?}: {e}")))?;
    let report = mnev_check(&alpha)?;
    let mut text = format!("{}\n", report.summary());
    for c in &report.constraints {
        let _ = writeln!(text, "  {}: rank {} {}", c.name, c.rank, if c.holds { "ok" } else { "FAILS" });
    }
    output(&report, text)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfComparison {
    pub gm: Vec<usize>,
    pub os: Vec<usize>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DataComparison {
    pub same_dimensional_data: bool,
}

pub fn compare(self_check: bool, files: &[std::path::PathBuf], settings: &Settings) -> CliResult {
    if self_check {
        let [path] = files else {
            return Err(Failure::input("E_ARGUMENT", "compare --self takes exactly one file"));
        };
        let arr = complex(&load(path)?, settings)?;
        let gm = gm_report(&arr.realify(), settings.opts)?.betti();
        let os = os_report(&arr, settings.opts.execution)?.poincare;
        let agree = gm == os;
        let report = SelfComparison { agree, gm, os };
        let text = if agree {
            format!("agree: {}\n", join(&report.gm, " "))
        } else {
            format!("MISMATCH: gm {} / os {}\n", join(&report.gm, " "), join(&report.os, " "))
        };
        let mut out = output(&report, text)?;
        out.mismatch = !agree;
        return Ok(out);
    }
    let [a, b] = files else {
        return Err(Failure::input("E_ARGUMENT", "compare takes two files, or one with --self"));
    };
    let (a, b) = (load(a)?, load(b)?);
    let same = match (&a, &b) {
        (AnyArrangement::Rational(x), AnyArrangement::Rational(y)) => same_dimensional_data(x, y)?,
        (AnyArrangement::Rational(x), AnyArrangement::Gaussian(y)) => same_dimensional_data(x, y)?,
        (AnyArrangement::Gaussian(x), AnyArrangement::Rational(y)) => same_dimensional_data(x, y)?,
        (AnyArrangement::Gaussian(x), AnyArrangement::Gaussian(y)) => same_dimensional_data(x, y)?,
    };
    let text = if same { "same dimensional data\n" } else { "different dimensional data\n" }.to_string();
    let mut out = output(&DataComparison { same_dimensional_data: same }, text)?;
    out.mismatch = !same;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip<T: Serialize + for<'de> Deserialize<'de> + PartialEq + std::fmt::Debug>(x: &T) {
        let json = serde_json::to_string(x).unwrap();
        let back: T = serde_json::from_str(&json).unwrap();
        assert_eq!(&back, x);
    }

    #[test]
    fn cli_reports_round_trip() {
        let arr = Arrangement::<Rational>::from_i64_hyperplanes(2, &[&[1, 0, 0], &[0, 1, 0], &[1, 1, 0]]).unwrap();
        round_trip(&poset_report(&arr));
        round_trip(&BettiReport { reduced: false, betti: vec![1, 3, 2], torsion_free: true });
        let regions = enumerate_regions(&arr).unwrap();
        round_trip(&RegionsReport { count: regions.len(), bounded: 0, regions });
        round_trip(&SelfComparison { gm: vec![1, 2], os: vec![1, 2], agree: true });
    }
}
