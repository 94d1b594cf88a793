//! Command-line front end: reads JSON problem documents, runs one pipeline
//! stage and writes a JSON report.

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use toricbound::bounded::{
    adapted_fan, bounded_ring, check_tc, default_grid, k_sets, subfan_fs, subfan_fs_basic, SubfanFS, TcStatus,
};
use toricbound::filtration::{filtration_level, total_stability_certificate};
use toricbound::hilbert::{hilbert_basis, lattice_kernel_relations, semigroup_contains};
use toricbound::io::{
    parse_json, relations_doc, to_json, vecs_doc, ConeDoc, FanDoc, IitakaDoc, InertiaDoc, Int, KSetsDoc, LevelDoc,
    MatrixDoc, ProblemDoc, SemigroupDoc, StabilityDoc, SurfaceDoc, TcReportDoc, VecDoc,
};
use toricbound::linalg::parse_rational;
use toricbound::surface::{iitaka_classify, self_intersections, DivisorSelection};
use toricbound::{inertia, BigRational, Error, Fan2D, LatticeVector, ProblemSpec, SetSpec, Side};

mod corpus;

pub use corpus::{corpus_entry, corpus_list, CorpusEntry};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Bounded,
    Ksets,
    AdaptedFan,
    TcCheck,
    Hilbert,
    Inertia,
    SurfaceClassify,
    Filtration,
    Stability,
    ResolveFan,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Bounded => "bounded",
            Command::Ksets => "ksets",
            Command::AdaptedFan => "adapted-fan",
            Command::TcCheck => "tc-check",
            Command::Hilbert => "hilbert",
            Command::Inertia => "inertia",
            Command::SurfaceClassify => "surface-classify",
            Command::Filtration => "filtration",
            Command::Stability => "stability",
            Command::ResolveFan => "resolve-fan",
        }
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Options {
    pub grid: Vec<BigRational>,
    pub nmax: u64,
    pub box_bound: Option<u64>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            grid: default_grid(),
            nmax: 5,
            box_bound: None,
        }
    }
}

/// Options as they may appear in a corpus entry.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptionsDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nmax: Option<u64>,
    #[serde(default, rename = "box", skip_serializing_if = "Option::is_none")]
    pub box_bound: Option<u64>,
}

impl OptionsDoc {
    pub fn to_options(&self) -> Result<Options, CliError> {
        let mut o = Options::default();
        if let Some(g) = &self.grid {
            o.grid = parse_grid(g)?;
        }
        if let Some(n) = self.nmax {
            o.nmax = n;
        }
        o.box_bound = self.box_bound;
        Ok(o)
    }
}

/// Parses a comma-separated list of rationals such as "-2,-1,-1/2,1/2,1,2".
pub fn parse_grid(spec: &str) -> Result<Vec<BigRational>, CliError> {
    let grid = spec
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::invalid(format!("--grid: {e}")))?;
    if grid.iter().all(|x| *x == BigRational::from_integer(0.into())) {
        return Err(CliError::invalid("--grid needs at least one nonzero value"));
    }
    Ok(grid)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InputSource {
    Path(PathBuf),
    Text(String),
    Corpus(String),
    Stdin,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub command: Command,
    pub input: InputSource,
    pub output: Option<PathBuf>,
    pub options: Options,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INVALID,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::TcNotVerified(_) => EXIT_INCONCLUSIVE,
            _ => EXIT_INVALID,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// Exit code and text (a JSON report on success, a message otherwise).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
}

/// Runs one command. Reading and writing files happens here; the report
/// itself comes from [`execute`].
pub fn run(config: &RunConfig) -> Outcome {
    let result = read_input(&config.input).and_then(|text| execute(config.command, &text, &config.options));
    match result {
        Ok(report) => {
            if let Some(path) = &config.output {
                if let Err(e) = std::fs::write(path, &report) {
                    return Outcome {
                        code: EXIT_INVALID,
                        text: format!("cannot write {}: {e}", path.display()),
                    };
                }
            }
            Outcome {
                code: EXIT_OK,
                text: report,
            }
        }
        Err(e) => Outcome {
            code: e.code,
            text: format!("error: {}", e.message),
        },
    }
}

fn read_input(src: &InputSource) -> Result<String, CliError> {
    match src {
        InputSource::Text(t) => Ok(t.clone()),
        InputSource::Path(p) => {
            std::fs::read_to_string(p).map_err(|e| CliError::invalid(format!("cannot read {}: {e}", p.display())))
        }
        InputSource::Corpus(name) => corpus_entry(name)
            .map(|e| e.input_json())
            .ok_or_else(|| CliError::invalid(format!("unknown corpus entry {name:?}"))),
        InputSource::Stdin => {
            let mut s = String::new();
            std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
                .map_err(|e| CliError::invalid(format!("cannot read standard input: {e}")))?;
            Ok(s)
        }
    }
}

/// Runs `command` on the JSON document `input` and returns the report.
pub fn execute(command: Command, input: &str, options: &Options) -> Result<String, CliError> {
    let report = match command {
        Command::Bounded => bounded(&parse_json(input)?, options)?,
        Command::Ksets => ksets(&parse_json(input)?)?,
        Command::AdaptedFan => {
            let doc: ProblemDoc = parse_json(input)?;
            let spec = doc.to_spec()?;
            to_json(&FanDoc::from_fan(&adapted_fan(&spec.set, &spec.sigma)?))
        }
        Command::TcCheck => tc_check(&parse_json(input)?, options)?,
        Command::Hilbert => hilbert(&parse_json(input)?, options)?,
        Command::Inertia => {
            let doc: MatrixDoc = parse_json(input)?;
            let a = doc.to_matrix()?;
            to_json(&InertiaDoc::new(&a, &inertia(&a)))
        }
        Command::SurfaceClassify => surface_classify(&parse_json(input)?)?,
        Command::Filtration => filtration(&parse_json(input)?, options)?,
        Command::Stability => {
            let doc: ProblemDoc = parse_json(input)?;
            let spec = doc.to_spec()?;
            let r = total_stability_certificate(&spec.sigma, &spec.set, options.nmax)?;
            to_json(&StabilityDoc::from_report(&r))
        }
        Command::ResolveFan => resolve_fan(&parse_json(input)?)?,
    };
    Ok(report)
}

fn require_rank2(spec: &ProblemSpec) -> Result<(), CliError> {
    if spec.set.rank() != 2 {
        return Err(Error::RankLimit {
            rank: spec.set.rank(),
            limit: 2,
        }
        .into());
    }
    Ok(())
}

/// The fan given in the document, or the canonical adapted fan.
fn fan_for(doc: &ProblemDoc, spec: &ProblemSpec) -> Result<Fan2D, CliError> {
    require_rank2(spec)?;
    match doc.to_fan()? {
        Some(f) => Ok(f),
        None => Ok(adapted_fan(&spec.set, &spec.sigma)?),
    }
}

/// Adapted fan, verified compatibility condition and the subfan F_S.
fn verified_subfan(doc: &ProblemDoc, spec: &ProblemSpec, options: &Options) -> Result<SubfanFS, CliError> {
    let fan = fan_for(doc, spec)?;
    let report = check_tc(&fan, spec, &options.grid)?;
    if report.status != TcStatus::Verified {
        return Err(Error::TcNotVerified(format!("{}: {}", report.status, report.reason)).into());
    }
    Ok(match &spec.set {
        SetSpec::Basic(s) => subfan_fs_basic(&fan, &spec.sigma, s)?,
        set => subfan_fs(&fan, &spec.sigma, &k_sets(set)?.k0)?,
    })
}

fn bounded(doc: &ProblemDoc, options: &Options) -> Result<String, CliError> {
    let spec = doc.to_spec()?;
    let basis = match (&spec.set, &doc.fan) {
        (SetSpec::Basic(_), _) | (_, Some(_)) => {
            let fs = verified_subfan(doc, &spec, options)?;
            if !matches!(spec.set, SetSpec::Basic(_)) {
                let direct = bounded_ring(&spec.sigma, &spec.set)?;
                if direct != fs.support_dual {
                    return Err(Error::Disagreement(
                        "the fan computation and the closed formula give different semigroups".into(),
                    )
                    .into());
                }
            }
            fs.support_dual
        }
        _ => bounded_ring(&spec.sigma, &spec.set)?,
    };
    Ok(to_json(&SemigroupDoc::from_basis(&basis)))
}

fn ksets(doc: &ProblemDoc) -> Result<String, CliError> {
    let spec = doc.to_spec()?;
    Ok(to_json(&KSetsDoc::from_ksets(&k_sets(&spec.set)?)))
}

fn tc_check(doc: &ProblemDoc, options: &Options) -> Result<String, CliError> {
    let spec = doc.to_spec()?;
    let fan = fan_for(doc, &spec)?;
    let r = check_tc(&fan, &spec, &options.grid)?;
    #[derive(Serialize)]
    struct Report {
        #[serde(flatten)]
        report: TcReportDoc,
        fan: FanDoc,
    }
    Ok(to_json(&Report {
        report: TcReportDoc::from_report(&r),
        fan: FanDoc::from_fan(&fan),
    }))
}

fn hilbert(doc: &ConeDoc, options: &Options) -> Result<String, CliError> {
    let cone = doc.to_cone(Side::N)?;
    let basis = hilbert_basis(&cone)?;
    #[derive(Serialize)]
    struct Report {
        #[serde(flatten)]
        basis: SemigroupDoc,
        relations: Vec<Vec<Int>>,
        #[serde(skip_serializing_if = "Option::is_none")]
        box_check: Option<BoxCheck>,
    }
    #[derive(Serialize)]
    struct BoxCheck {
        bound: u64,
        lattice_points: usize,
        all_generated: bool,
    }
    let relations = if basis.lineality_units().is_empty() {
        relations_doc(&lattice_kernel_relations(basis.generators())?)
    } else {
        Vec::new()
    };
    let box_check = match options.box_bound {
        Some(b) => {
            let b_i = i64::try_from(b).map_err(|_| CliError::invalid("--box is too large"))?;
            let mut count = 0usize;
            let mut all = true;
            for p in box_points(cone.rank(), b_i) {
                let v = LatticeVector::from_i64(cone.side(), &p);
                if cone.contains(&v)? {
                    count += 1;
                    all &= semigroup_contains(&basis, &v)?;
                }
            }
            Some(BoxCheck {
                bound: b,
                lattice_points: count,
                all_generated: all,
            })
        }
        None => None,
    };
    Ok(to_json(&Report {
        basis: SemigroupDoc::from_basis(&basis),
        relations,
        box_check,
    }))
}

fn box_points(rank: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|p: Vec<i64>| {
                (-b..=b).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    out
}

fn surface_classify(doc: &SurfaceDoc) -> Result<String, CliError> {
    let fan = doc.fan.to_fan()?;
    let surface = self_intersections(&fan)?;
    let b: Vec<Int> = surface.b().iter().map(|x| Int(-x)).collect();
    let sel = DivisorSelection::from_rays(surface, &doc.t_rays()?)?;
    let r = iitaka_classify(&sel)?;
    #[derive(Serialize)]
    struct Report {
        #[serde(flatten)]
        result: IitakaDoc,
        self_intersections: Vec<Int>,
    }
    Ok(to_json(&Report {
        result: IitakaDoc::from_result(&r),
        self_intersections: b,
    }))
}

fn filtration(doc: &ProblemDoc, options: &Options) -> Result<String, CliError> {
    let spec = doc.to_spec()?;
    let fs = verified_subfan(doc, &spec, options)?;
    let levels = (0..=options.nmax)
        .map(|n| filtration_level(&fs, n).map(|l| LevelDoc::from_level(&l)))
        .collect::<Result<Vec<_>, _>>()?;
    #[derive(Serialize)]
    struct Report {
        semigroup: SemigroupDoc,
        y_prime: Vec<VecDoc>,
        levels: Vec<LevelDoc>,
    }
    Ok(to_json(&Report {
        semigroup: SemigroupDoc::from_basis(&fs.support_dual),
        y_prime: vecs_doc(&fs.y_prime()),
        levels,
    }))
}

fn resolve_fan(doc: &FanDoc) -> Result<String, CliError> {
    let fan = doc.to_fan()?;
    let resolved = fan.smooth_resolution();
    let inserted: Vec<LatticeVector> = resolved
        .rays()
        .iter()
        .filter(|r| fan.ray_index(r).is_none())
        .cloned()
        .collect();
    let self_int = if resolved.is_complete() {
        Some(
            self_intersections(&resolved)?
                .b()
                .iter()
                .map(|x| Int(-x))
                .collect::<Vec<_>>(),
        )
    } else {
        None
    };
    #[derive(Serialize)]
    struct Report {
        fan: FanDoc,
        inserted: Vec<VecDoc>,
        #[serde(skip_serializing_if = "Option::is_none")]
        self_intersections: Option<Vec<Int>>,
    }
    Ok(to_json(&Report {
        fan: FanDoc::from_fan(&resolved),
        inserted: vecs_doc(&inserted),
        self_intersections: self_int,
    }))
}
