//! Batch front end: job specs, task dispatch, result cache, renderers.
//!
//! A job names one diagram (PD code or braid closure) or a whole corpus,
//! a set of tasks, a coefficient ring, and an algorithm. Results render
//! as JSON, TSV, or a human-readable grid. With a cache directory set,
//! per-task results are stored content-addressed by (diagram hash, task,
//! coefficients, algorithm version) so a warm rerun reproduces the cold
//! run byte for byte — cached entries carry their original timing.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde_json::{json, Value};

use crate::bracket::{jones, jones_reduced};
use crate::corpus;
use crate::cube::{build_complex, ChainComplex};
use crate::diagram::{parse_braid, parse_pd, PlanarDiagram};
use crate::frobenius::FrobeniusSpec;
use crate::homalg::{homology_field, homology_z, HomologyTable, TbConvention};
use crate::lee;
use crate::odd;
use crate::scan::scan_complex;
use num_bigint::BigInt;

/// Bumped whenever a change could alter any cached result.
const CACHE_VERSION: &str = "v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Task {
    Jones,
    Kh,
    Reduced,
    Odd,
    Lee,
    S,
    Tb,
    Delta,
}

impl Task {
    pub const ALL: [Task; 8] = [
        Task::Jones,
        Task::Kh,
        Task::Reduced,
        Task::Odd,
        Task::Lee,
        Task::S,
        Task::Tb,
        Task::Delta,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Task::Jones => "jones",
            Task::Kh => "kh",
            Task::Reduced => "reduced",
            Task::Odd => "odd",
            Task::Lee => "lee",
            Task::S => "s",
            Task::Tb => "tb",
            Task::Delta => "delta",
        }
    }

    pub fn parse(s: &str) -> Result<Task, CliError> {
        Task::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Task::ALL.iter().map(|t| t.name()).collect();
                CliError::Input(format!(
                    "unknown task '{s}' (expected one of: {})",
                    names.join(", ")
                ))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffSpec {
    Z,
    Q,
    F2,
    Fp(u64),
}

impl CoeffSpec {
    pub fn label(self) -> String {
        match self {
            CoeffSpec::Z => "Z".into(),
            CoeffSpec::Q => "Q".into(),
            CoeffSpec::F2 => "F2".into(),
            CoeffSpec::Fp(p) => format!("F{p}"),
        }
    }

    pub fn parse(s: &str) -> Result<CoeffSpec, CliError> {
        match s {
            "Z" => return Ok(CoeffSpec::Z),
            "Q" => return Ok(CoeffSpec::Q),
            "F2" => return Ok(CoeffSpec::F2),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix('F') {
            let p: u64 = rest
                .parse()
                .map_err(|_| CliError::Input(format!("bad coefficient spec '{s}'")))?;
            if !is_prime(p) {
                return Err(CliError::Input(format!("{p} is not prime")));
            }
            return Ok(if p == 2 { CoeffSpec::F2 } else { CoeffSpec::Fp(p) });
        }
        Err(CliError::Input(format!(
            "bad coefficient spec '{s}' (expected Z, Q, F2, or F<p>)"
        )))
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Algorithm {
    Naive,
    Scan,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Naive => "naive",
            Algorithm::Scan => "scan",
        }
    }

    pub fn parse(s: &str) -> Result<Algorithm, CliError> {
        match s {
            "naive" => Ok(Algorithm::Naive),
            "scan" => Ok(Algorithm::Scan),
            _ => Err(CliError::Input(format!(
                "unknown algorithm '{s}' (expected naive or scan)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Tsv,
    Pretty,
}

impl OutputFormat {
    pub fn parse(s: &str) -> Result<OutputFormat, CliError> {
        match s {
            "json" => Ok(OutputFormat::Json),
            "tsv" => Ok(OutputFormat::Tsv),
            "pretty" => Ok(OutputFormat::Pretty),
            _ => Err(CliError::Input(format!(
                "unknown output format '{s}' (expected json, tsv, or pretty)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Input {
    Pd(String),
    Braid { word: String, strands: usize },
    Corpus(String),
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub input: Input,
    pub tasks: Vec<Task>,
    pub coeff: CoeffSpec,
    pub algorithm: Algorithm,
    pub output: OutputFormat,
    pub cache_dir: Option<PathBuf>,
    pub jobs: usize,
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed input: bad flags, bad diagram, unknown corpus. Exit 2.
    Input(String),
    /// An internal invariant failed while computing. Exit 3.
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Internal(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input(m) | CliError::Internal(m) => m,
        }
    }
}

/// `KHOVA_CACHE` overrides any `--cache-dir` flag.
pub fn effective_cache_dir(flag: Option<PathBuf>) -> Option<PathBuf> {
    match std::env::var_os("KHOVA_CACHE") {
        Some(v) if !v.is_empty() => Some(PathBuf::from(v)),
        _ => flag,
    }
}

/// Run the job and return the rendered output document.
pub fn run(job: &JobSpec) -> Result<String, CliError> {
    if job.tasks.is_empty() {
        return Err(CliError::Input("no tasks requested".into()));
    }
    let reports: Vec<(Option<String>, Value)> = match &job.input {
        Input::Pd(text) => {
            let d = parse_pd(text).map_err(|e| CliError::Input(e.to_string()))?;
            vec![(None, run_diagram(&d, job)?)]
        }
        Input::Braid { word, strands } => {
            let d = parse_braid(word, *strands).map_err(|e| CliError::Input(e.to_string()))?;
            vec![(None, run_diagram(&d, job)?)]
        }
        Input::Corpus(name) => {
            let entries = corpus::corpus(name).map_err(|e| CliError::Input(e.to_string()))?;
            run_corpus(&entries, job)?
        }
    };
    Ok(render(&reports, job.output))
}

fn run_corpus(
    entries: &[corpus::CorpusEntry],
    job: &JobSpec,
) -> Result<Vec<(Option<String>, Value)>, CliError> {
    let jobs = job.jobs.max(1);
    let mut out: Vec<Option<Result<Value, CliError>>> = (0..entries.len()).map(|_| None).collect();
    if jobs == 1 {
        for (i, e) in entries.iter().enumerate() {
            out[i] = Some(run_diagram(&e.diagram, job));
        }
    } else {
        let next = std::sync::atomic::AtomicUsize::new(0);
        let slots: Vec<std::sync::Mutex<Option<Result<Value, CliError>>>> =
            (0..entries.len()).map(|_| std::sync::Mutex::new(None)).collect();
        std::thread::scope(|s| {
            for _ in 0..jobs.min(entries.len()) {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, std::sync::atomic::Ordering::Relaxed);
                    if i >= entries.len() {
                        break;
                    }
                    let r = run_diagram(&entries[i].diagram, job);
                    *slots[i].lock().unwrap() = Some(r);
                });
            }
        });
        for (i, slot) in slots.into_iter().enumerate() {
            out[i] = slot.into_inner().unwrap();
        }
    }
    let mut reports = Vec::with_capacity(entries.len());
    for (e, r) in entries.iter().zip(out) {
        reports.push((Some(e.name.clone()), r.expect("worker filled slot")?));
    }
    Ok(reports)
}

/// One diagram's report: input_hash, tasks, results, timings_ms, and the
/// scan girth when scanning.
fn run_diagram(d: &PlanarDiagram, job: &JobSpec) -> Result<Value, CliError> {
    let hash = format!("{:016x}", d.canonical_hash());
    let mut results = serde_json::Map::new();
    let mut timings = serde_json::Map::new();
    let mut girth: Option<usize> = None;
    for &task in &job.tasks {
        let key = format!(
            "{hash}-{}-{}-{}-{}.json",
            task.name(),
            job.coeff.label(),
            job.algorithm.name(),
            CACHE_VERSION
        );
        let cached = job.cache_dir.as_deref().and_then(|dir| read_cache(dir, &key));
        let (value, ms) = match cached {
            Some((v, ms)) => (v, ms),
            None => {
                let start = Instant::now();
                let v = compute_task(d, task, job, &mut girth)?;
                let ms = start.elapsed().as_millis() as u64;
                if let Some(dir) = job.cache_dir.as_deref() {
                    write_cache(dir, &key, &v, ms)?;
                }
                (v, ms)
            }
        };
        results.insert(task.name().into(), value);
        timings.insert(task.name().into(), json!(ms));
    }
    // A scan-mode report always carries its girth, even when every task
    // was served from cache: rerun the cheap scan for it.
    if job.algorithm == Algorithm::Scan && girth.is_none() {
        let (_, stats) = scan_complex::<BigInt>(d, &FrobeniusSpec::khovanov());
        girth = Some(stats.girth);
    }
    let mut report = serde_json::Map::new();
    report.insert("input_hash".into(), json!(hash));
    report.insert(
        "tasks".into(),
        json!(job.tasks.iter().map(|t| t.name()).collect::<Vec<_>>()),
    );
    report.insert("results".into(), Value::Object(results));
    report.insert("timings_ms".into(), Value::Object(timings));
    if job.algorithm == Algorithm::Scan {
        report.insert("girth".into(), json!(girth));
    }
    Ok(Value::Object(report))
}

fn compute_task(
    d: &PlanarDiagram,
    task: Task,
    job: &JobSpec,
    girth: &mut Option<usize>,
) -> Result<Value, CliError> {
    match task {
        Task::Jones => Ok(json!(jones(d).to_string())),
        Task::Kh => {
            let c = unreduced_complex(d, job.algorithm, girth)?;
            Ok(table_over(&c, job.coeff).to_json())
        }
        Task::Reduced => {
            let dm = with_default_mark(d);
            let c = build_complex(&dm, &FrobeniusSpec::<BigInt>::khovanov(), true)
                .map_err(|e| CliError::Input(e.to_string()))?;
            let mut v = table_over(&c, job.coeff).to_json();
            v["jones_reduced"] = json!(jones_reduced(d).to_string());
            Ok(v)
        }
        Task::Odd => {
            let cube = odd::build_odd_cube(d).map_err(odd_err)?;
            let signs = cube.solve_signs().map_err(odd_err)?;
            let c = cube.complex(d, &signs, false).map_err(odd_err)?;
            Ok(table_over(&c, job.coeff).to_json())
        }
        Task::Lee => lee::report_json(d).map_err(|e| task_error(e.to_string())),
        Task::S => match lee::s_invariant(d) {
            Ok(s) => Ok(json!(s)),
            Err(e) => Err(task_error(e.to_string())),
        },
        Task::Tb => {
            let c = unreduced_complex(d, job.algorithm, girth)?;
            let table = homology_z(&c);
            Ok(json!(table.tb_bound(TbConvention::JMinusI)))
        }
        Task::Delta => {
            let c = unreduced_complex(d, job.algorithm, girth)?;
            let table = homology_z(&c);
            let deltas: Vec<i32> = table.delta_support().into_iter().collect();
            Ok(json!({
                "delta_support": deltas,
                "thin": table.is_thin_unreduced(),
            }))
        }
    }
}

/// Task-level failures on valid diagrams (s of a link, odd homology of a
/// split diagram) are input errors: the job asked for something undefined.
fn task_error(msg: String) -> CliError {
    CliError::Input(msg)
}

fn odd_err(e: odd::OddError) -> CliError {
    match e {
        odd::OddError::Diagram(d) => CliError::Input(d.to_string()),
        // Sign assignments always exist on cube faces; failure means a bug.
        other => CliError::Internal(other.to_string()),
    }
}

fn with_default_mark(d: &PlanarDiagram) -> PlanarDiagram {
    if d.marked_edge().is_some() {
        return d.clone();
    }
    d.with_marked_edge(d.edges().first().copied())
}

fn unreduced_complex(
    d: &PlanarDiagram,
    algorithm: Algorithm,
    girth: &mut Option<usize>,
) -> Result<ChainComplex<BigInt>, CliError> {
    let spec = FrobeniusSpec::<BigInt>::khovanov();
    match algorithm {
        Algorithm::Naive => {
            build_complex(d, &spec, false).map_err(|e| CliError::Input(e.to_string()))
        }
        Algorithm::Scan => {
            let (c, stats) = scan_complex(d, &spec);
            *girth = Some(stats.girth);
            Ok(c)
        }
    }
}

/// Homology of a graded integer complex over the requested coefficients.
/// Finite fields reduce the integer complex (a generically built `Fp`
/// complex only carries modulus-free constants and cannot be inverted in).
fn table_over(c: &ChainComplex<BigInt>, coeff: CoeffSpec) -> HomologyTable {
    match coeff {
        CoeffSpec::Z => homology_z(c),
        CoeffSpec::Q => homology_field(&c.to_rational(), "Q"),
        CoeffSpec::F2 => homology_field(&c.mod_p(2), "F2"),
        CoeffSpec::Fp(p) => homology_field(&c.mod_p(p), &format!("F{p}")),
    }
}

// ---- cache ----

fn read_cache(dir: &Path, key: &str) -> Option<(Value, u64)> {
    let text = std::fs::read_to_string(dir.join(key)).ok()?;
    let v: Value = serde_json::from_str(&text).ok()?;
    let ms = v.get("ms")?.as_u64()?;
    Some((v.get("result")?.clone(), ms))
}

fn write_cache(dir: &Path, key: &str, value: &Value, ms: u64) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Input(format!("cache dir {}: {e}", dir.display())))?;
    let doc = json!({ "result": value, "ms": ms });
    let tmp = dir.join(format!(".{key}.tmp-{}", std::process::id()));
    let io = |e: std::io::Error| CliError::Input(format!("cache write {key}: {e}"));
    std::fs::write(&tmp, serde_json::to_string(&doc).unwrap()).map_err(io)?;
    std::fs::rename(&tmp, dir.join(key)).map_err(io)
}

// ---- renderers ----

fn render(reports: &[(Option<String>, Value)], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => render_json(reports),
        OutputFormat::Tsv => render_flat(reports, false),
        OutputFormat::Pretty => render_flat(reports, true),
    }
}

fn render_json(reports: &[(Option<String>, Value)]) -> String {
    if reports.len() == 1 && reports[0].0.is_none() {
        return serde_json::to_string_pretty(&reports[0].1).unwrap();
    }
    let list: Vec<Value> = reports
        .iter()
        .map(|(name, r)| {
            let mut m = serde_json::Map::new();
            m.insert("name".into(), json!(name));
            for (k, v) in r.as_object().unwrap() {
                m.insert(k.clone(), v.clone());
            }
            Value::Object(m)
        })
        .collect();
    serde_json::to_string_pretty(&Value::Array(list)).unwrap()
}

fn render_flat(reports: &[(Option<String>, Value)], pretty: bool) -> String {
    let mut out = String::new();
    for (name, report) in reports {
        if let Some(n) = name {
            if pretty {
                writeln!(out, "== {n} ==").unwrap();
            } else {
                writeln!(out, "# {n}").unwrap();
            }
        }
        let obj = report.as_object().unwrap();
        writeln!(out, "input_hash\t{}", obj["input_hash"].as_str().unwrap()).unwrap();
        if let Some(g) = obj.get("girth") {
            writeln!(out, "girth\t{g}").unwrap();
        }
        let timings = obj["timings_ms"].as_object().unwrap();
        for (task, value) in obj["results"].as_object().unwrap() {
            if pretty {
                writeln!(out, "-- {task} ({} ms)", timings[task]).unwrap();
            } else {
                writeln!(out, "task\t{task}\t{}", timings[task]).unwrap();
            }
            out.push_str(&render_value(task, value, pretty));
        }
        out.push('\n');
    }
    out
}

fn render_value(task: &str, value: &Value, pretty: bool) -> String {
    if let Some(grid) = table_grid(value) {
        return grid;
    }
    let text = match value {
        Value::String(s) => s.clone(),
        other => serde_json::to_string(other).unwrap(),
    };
    if pretty {
        format!("{text}\n")
    } else {
        format!("{task}\t{text}\n")
    }
}

/// Homology-table JSON (`{"groups": [{i, j, group}, ...]}`) back into the
/// i-by-j grid layout.
fn table_grid(value: &Value) -> Option<String> {
    let groups = value.get("groups")?.as_array()?;
    let mut cells = std::collections::BTreeMap::new();
    for g in groups {
        let i = g.get("i")?.as_i64()? as i32;
        let j = g.get("j")?.as_i64()? as i32;
        cells.insert((i, j), g.get("group")?.as_str()?.to_string());
    }
    if cells.is_empty() {
        return Some("empty\n".into());
    }
    let is: BTreeSet<i32> = cells.keys().map(|k| k.0).collect();
    let js: BTreeSet<i32> = cells.keys().map(|k| k.1).collect();
    let mut out = String::from("i\\j");
    for j in &js {
        write!(out, "\t{j}").unwrap();
    }
    out.push('\n');
    for i in *is.first().unwrap()..=*is.last().unwrap() {
        write!(out, "{i}").unwrap();
        for &j in &js {
            let cell = cells.get(&(i, j)).map(String::as_str).unwrap_or("0");
            write!(out, "\t{cell}").unwrap();
        }
        out.push('\n');
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn braid_job(word: &str, strands: usize, tasks: Vec<Task>) -> JobSpec {
        JobSpec {
            input: Input::Braid {
                word: word.into(),
                strands,
            },
            tasks,
            coeff: CoeffSpec::Z,
            algorithm: Algorithm::Naive,
            output: OutputFormat::Json,
            cache_dir: None,
            jobs: 1,
        }
    }

    fn report_of(doc: &str) -> Value {
        serde_json::from_str(doc).unwrap()
    }

    #[test]
    fn s_of_trefoil_braid() {
        let doc = run(&braid_job("aaa", 2, vec![Task::S])).unwrap();
        let r = report_of(&doc);
        assert_eq!(r["results"]["s"], json!(2));
        assert_eq!(r["tasks"], json!(["s"]));
        assert!(r["input_hash"].as_str().unwrap().len() == 16);
        assert!(r["timings_ms"]["s"].is_u64());
        assert!(r.get("girth").is_none());
    }

    #[test]
    fn jones_of_pd_unknot() {
        let job = JobSpec {
            input: Input::Pd("U".into()),
            tasks: vec![Task::Jones],
            coeff: CoeffSpec::Z,
            algorithm: Algorithm::Naive,
            output: OutputFormat::Json,
            cache_dir: None,
            jobs: 1,
        };
        let r = report_of(&run(&job).unwrap());
        assert_eq!(r["results"]["jones"], json!("q^-1 + q"));
    }

    #[test]
    fn kh_of_trefoil_over_z() {
        let doc = run(&braid_job("aaa", 2, vec![Task::Kh])).unwrap();
        let r = report_of(&doc);
        let groups = r["results"]["kh"]["groups"].as_array().unwrap();
        let free: usize = groups
            .iter()
            .map(|g| g["free_rank"].as_u64().unwrap() as usize)
            .sum();
        let tors: usize = groups.iter().map(|g| g["torsion"].as_array().unwrap().len()).sum();
        assert_eq!((free, tors), (4, 1));
    }

    #[test]
    fn scan_reports_girth_and_matches_naive() {
        let mut naive = braid_job("abab", 3, vec![Task::Kh]);
        let mut scan = naive.clone();
        scan.algorithm = Algorithm::Scan;
        let rn = report_of(&run(&naive).unwrap());
        let rs = report_of(&run(&scan).unwrap());
        assert_eq!(rn["results"]["kh"], rs["results"]["kh"]);
        assert!(rs["girth"].as_u64().unwrap() >= 2);
        assert!(rn.get("girth").is_none());
        // Field coefficients go through the same dispatch.
        naive.coeff = CoeffSpec::F2;
        scan.coeff = CoeffSpec::F2;
        let rn = report_of(&run(&naive).unwrap());
        let rs = report_of(&run(&scan).unwrap());
        assert_eq!(rn["results"]["kh"], rs["results"]["kh"]);
    }

    #[test]
    fn cache_round_trip_is_byte_identical() {
        let dir = tempfile::tempdir().unwrap();
        let mut job = braid_job("aaa", 2, vec![Task::Jones, Task::Kh, Task::S]);
        job.cache_dir = Some(dir.path().to_path_buf());
        let cold = run(&job).unwrap();
        let warm = run(&job).unwrap();
        assert_eq!(cold, warm);
        let files: Vec<_> = std::fs::read_dir(dir.path())
            .unwrap()
            .map(|e| e.unwrap().file_name().into_string().unwrap())
            .collect();
        assert_eq!(files.len(), 3, "one cache file per task: {files:?}");
        assert!(files.iter().all(|f| f.ends_with("-Z-naive-v1.json")));
    }

    #[test]
    fn corpus_runs_in_parallel_and_in_order() {
        let mut job = braid_job("", 0, vec![Task::Jones]);
        job.input = Input::Corpus("torus".into());
        job.jobs = 4;
        let reports = report_of(&run(&job).unwrap());
        let names: Vec<_> = reports
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["name"].as_str().unwrap().to_string())
            .collect();
        let expected: Vec<_> = corpus::corpus("torus")
            .unwrap()
            .into_iter()
            .map(|e| e.name)
            .collect();
        assert_eq!(names, expected);
    }

    #[test]
    fn input_errors_exit_2_internal_exit_3() {
        let bad = JobSpec {
            input: Input::Pd("X[1,2".into()),
            tasks: vec![Task::Jones],
            coeff: CoeffSpec::Z,
            algorithm: Algorithm::Naive,
            output: OutputFormat::Json,
            cache_dir: None,
            jobs: 1,
        };
        match run(&bad) {
            Err(e) => assert_eq!(e.exit_code(), 2),
            Ok(_) => panic!("expected parse failure"),
        }
        assert_eq!(CliError::Internal("x".into()).exit_code(), 3);
        // s of a 2-component link is undefined input, not a crash.
        let link = run(&braid_job("aa", 2, vec![Task::S]));
        assert_eq!(link.unwrap_err().exit_code(), 2);
    }

    #[test]
    fn spec_parsers() {
        assert_eq!(CoeffSpec::parse("F7").unwrap(), CoeffSpec::Fp(7));
        assert_eq!(CoeffSpec::parse("F2").unwrap(), CoeffSpec::F2);
        assert!(CoeffSpec::parse("F9").is_err());
        assert!(CoeffSpec::parse("R").is_err());
        assert_eq!(Task::parse("delta").unwrap(), Task::Delta);
        assert!(Task::parse("width").is_err());
        assert!(Algorithm::parse("fast").is_err());
        assert_eq!(OutputFormat::parse("tsv").unwrap(), OutputFormat::Tsv);
    }

    #[test]
    fn tsv_and_pretty_render_tables_as_grids() {
        let mut job = braid_job("aaa", 2, vec![Task::Kh, Task::Jones]);
        job.output = OutputFormat::Tsv;
        let tsv = run(&job).unwrap();
        assert!(tsv.contains("i\\j"));
        assert!(tsv.contains("Z/2"));
        job.output = OutputFormat::Pretty;
        let pretty = run(&job).unwrap();
        assert!(pretty.contains("-- kh"));
        assert!(pretty.contains("i\\j"));
    }
}
