//! Batch runs behind the `pircon` binary.
//!
//! Every run writes under `<out>/<command>/`: one directory per `n` (or per
//! input poset) plus a `manifest.json`. The manifest records the config
//! without `--jobs` or `--out`, so equal configs give byte-identical trees.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fixed_point::{fixed_pircon_verify, induced_spm, FixedIdealReport};
use crate::labels::{difference_index, family_covers, EdgeLabel, LabelVariant};
use crate::matching::{
    all_spms, check_lifting, check_spm, check_special_matching, classify_with, CertificateJson, MatchingMap,
};
use crate::poset::{all_automorphisms, Poset, PosetJson};
use crate::shellability::{
    candidate_labelling, fpf_closure_check, fpf_cover_closure, rank_gradedness, verify_el_poset, EdgeLabelling,
    LabelOrder,
};
use crate::signed::{
    family_poset, hat0_fpf, phi_automorphism, stats, w0, Family, FullPermutation, OrderDirection, SignedPermutation,
};
use crate::topology::{
    ball_sphere_signature, complex_json, euler_characteristic, expected_dimension, homology_z2, order_complex,
    BallSphere,
};

/// Largest `n` enumerated for signed families.
pub const SIGNED_CAP: usize = 6;
/// Largest `n` enumerated for families in `S_2n`.
pub const SYMMETRIC_CAP: usize = 5;

pub const DEFAULT_SEED: u64 = 20_240_917;

#[derive(Parser, Debug, Clone, Serialize)]
#[command(name = "pircon", version, about = "Special partial matchings and signed involution posets")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub options: Options,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct Options {
    /// Rank `n` of the family (2n points for the S_2n families).
    #[arg(long, global = true, default_value_t = 2)]
    pub n: usize,
    /// Run every n from --n up to this value.
    #[arg(long, global = true)]
    pub n_max: Option<usize>,
    #[arg(long, global = true, default_value = "fpf-signed-inv")]
    pub family: Family,
    #[arg(long, global = true, default_value = "bruhat")]
    pub order: OrderDirection,
    #[arg(long, global = true, value_enum, default_value_t = Labeling::CiCandidate)]
    pub labeling: Labeling,
    /// Label file for `--labeling from-file`.
    #[arg(long, global = true)]
    pub labels: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = LabelDirection::ReversedLex)]
    pub label_order: LabelDirection,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Worker threads; 0 uses every core. Does not change any output.
    #[arg(long, global = true, default_value_t = 0)]
    #[serde(skip)]
    pub jobs: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Also check the orbit ordering and adjacency claims.
    #[arg(long, global = true)]
    pub strict_claims: bool,
    #[arg(long, global = true, default_value = "out")]
    #[serde(skip)]
    pub out: PathBuf,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            n: 2,
            n_max: None,
            family: Family::FpfSignedInvolutions,
            order: OrderDirection::Bruhat,
            labeling: Labeling::CiCandidate,
            labels: None,
            label_order: LabelDirection::ReversedLex,
            format: Format::Json,
            jobs: 0,
            seed: DEFAULT_SEED,
            strict_claims: false,
            out: PathBuf::from("out"),
        }
    }
}

#[derive(Subcommand, Debug, Clone, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Export the elements and the Bruhat poset of a family.
    Gen,
    /// Check a matching on a poset given as JSON.
    CheckSpm {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        matching: PathBuf,
        /// Require a special matching (no fixed points).
        #[arg(long)]
        special: bool,
    },
    /// Search every principal ideal for an SPM and a special matching.
    Pircon {
        /// Poset JSON to classify instead of a family.
        #[arg(long)]
        poset: Option<PathBuf>,
        #[arg(long)]
        no_zircon: bool,
    },
    /// Induced SPMs on the phi-fixed part of dual C(w0) in S_2n.
    FixedSpm {
        /// Also run on this many seeded random posets with a top.
        #[arg(long, default_value_t = 0)]
        random_posets: usize,
        #[arg(long, default_value_t = 6)]
        random_size: usize,
    },
    /// EL check of a labelling on a family poset.
    ElVerify,
    /// Z/2 homology of the order complex of the proper part.
    Homology,
    /// Length, descent and rank statistics of a signed family.
    Stats,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Gen => "gen",
            Command::CheckSpm { .. } => "check-spm",
            Command::Pircon { .. } => "pircon",
            Command::FixedSpm { .. } => "fixed-spm",
            Command::ElVerify => "el-verify",
            Command::Homology => "homology",
            Command::Stats => "stats",
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Labeling {
    CiCandidate,
    CvCandidate,
    FromFile,
}

impl Labeling {
    fn variant(self) -> Option<LabelVariant> {
        match self {
            Labeling::CiCandidate => Some(LabelVariant::CiCandidate),
            Labeling::CvCandidate => Some(LabelVariant::CvCandidate),
            Labeling::FromFile => None,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LabelDirection {
    Lex,
    ReversedLex,
}

impl From<LabelDirection> for LabelOrder {
    fn from(d: LabelDirection) -> Self {
        match d {
            LabelDirection::Lex => LabelOrder::Lex,
            LabelDirection::ReversedLex => LabelOrder::ReversedLex,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Dot,
    Csv,
}

/// Result of a completed run. `passed` is false when a verification found a
/// violation; the violation is then described in a `certificate.json`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutcome {
    pub root: PathBuf,
    pub files: Vec<String>,
    pub passed: bool,
}

/// Machine-readable error, printed to stderr by the binary.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ErrorJson {
    pub error: String,
    pub message: String,
}

impl From<&Error> for ErrorJson {
    fn from(e: &Error) -> Self {
        ErrorJson {
            error: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

#[derive(Serialize)]
struct Manifest<'a> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    config: &'a Cli,
    passed: bool,
    files: &'a [String],
}

/// Writes artifacts under one command root and remembers their paths.
struct Artifacts {
    root: PathBuf,
    files: Vec<String>,
}

impl Artifacts {
    fn new(root: PathBuf) -> Self {
        Artifacts {
            root,
            files: Vec::new(),
        }
    }

    fn write(&mut self, rel: &str, bytes: &[u8]) -> Result<()> {
        let path = self.root.join(rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        fs::write(&path, bytes)?;
        self.files.push(rel.to_string());
        Ok(())
    }

    fn json<T: Serialize + ?Sized>(&mut self, rel: &str, value: &T) -> Result<()> {
        let mut text = serde_json::to_string_pretty(value)?;
        text.push('\n');
        self.write(rel, text.as_bytes())
    }

    fn csv(&mut self, rel: &str, header: &[String], rows: &[Vec<String>]) -> Result<()> {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        let csv_err = |e: csv::Error| Error::Io(e.to_string());
        w.write_record(header).map_err(csv_err)?;
        for row in rows {
            w.write_record(row).map_err(csv_err)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        self.write(rel, &bytes)
    }
}

#[derive(Serialize)]
struct Certificate<'a, T: Serialize> {
    invariant: &'a str,
    detail: T,
}

/// Runs `cli` on a thread pool of `--jobs` workers.
pub fn run(cli: &Cli) -> Result<RunOutcome> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cli.options.jobs)
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    pool.install(|| run_inline(cli))
}

fn run_inline(cli: &Cli) -> Result<RunOutcome> {
    let name = cli.command.name();
    let root = cli.options.out.join(name);
    if root.exists() {
        fs::remove_dir_all(&root)?;
    }
    let mut art = Artifacts::new(root.clone());
    let result = dispatch(cli, &mut art);
    let passed = match result {
        Ok(passed) => passed,
        Err(e) => {
            // the error itself is the certificate of this failure
            art.json("error.json", &ErrorJson::from(&e))?;
            return Err(e);
        }
    };
    let mut files = art.files.clone();
    files.sort();
    let manifest = Manifest {
        tool: "pircon",
        version: env!("CARGO_PKG_VERSION"),
        command: name,
        config: cli,
        passed,
        files: &files,
    };
    art.json("manifest.json", &manifest)?;
    Ok(RunOutcome { root, files, passed })
}

fn dispatch(cli: &Cli, art: &mut Artifacts) -> Result<bool> {
    let o = &cli.options;
    match &cli.command {
        Command::Gen => each_n(o, o.family, |n| gen(o, n, art)),
        Command::CheckSpm {
            poset,
            matching,
            special,
        } => check_spm_cmd(poset, matching, *special, art),
        Command::Pircon { poset: Some(path), no_zircon } => {
            let (name, p) = read_poset(path)?;
            pircon_cmd(&p, &name, !no_zircon, art)
        }
        Command::Pircon { poset: None, no_zircon } => each_n(o, o.family, |n| {
            let (_, p) = family_poset(o.family, n, o.order)?;
            pircon_cmd(&p, &n.to_string(), !no_zircon, art)
        }),
        Command::FixedSpm {
            random_posets,
            random_size,
        } => {
            let mut passed = each_n(o, Family::FpfInvolutions, |n| fixed_spm(o, n, art))?;
            if *random_posets > 0 {
                passed &= random_fixed_spm(o, *random_posets, *random_size, art)?;
            }
            Ok(passed)
        }
        Command::ElVerify => each_n(o, o.family, |n| el_verify(o, n, art)),
        Command::Homology => each_n(o, o.family, |n| homology(o, n, art)),
        Command::Stats => each_n(o, o.family, |n| stats_cmd(o, n, art)),
    }
}

/// Range of `n` for a run on `family`, checked against the caps.
pub fn n_range(options: &Options, family: Family) -> Result<Vec<usize>> {
    let last = options.n_max.unwrap_or(options.n);
    if options.n == 0 || last < options.n {
        return Err(Error::InvalidInput(format!("empty range n = {}..={last}", options.n)));
    }
    let cap = if family.is_signed() { SIGNED_CAP } else { SYMMETRIC_CAP };
    if last > cap {
        return Err(Error::CapExceeded { n: last, cap });
    }
    Ok((options.n..=last).collect())
}

fn each_n(options: &Options, family: Family, mut body: impl FnMut(usize) -> Result<bool>) -> Result<bool> {
    let mut passed = true;
    for n in n_range(options, family)? {
        passed &= body(n)?;
    }
    Ok(passed)
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn read_poset(path: &Path) -> Result<(String, Poset)> {
    let doc: PosetJson = read_json(path)?;
    let poset = Poset::from_json(&doc)?;
    let name = if doc.name.is_empty() { "poset".to_string() } else { doc.name.clone() };
    if name.contains(['/', '\\']) || name == "." || name == ".." {
        return Err(Error::InvalidInput(format!("poset name {name:?} cannot be a directory")));
    }
    Ok((name, poset))
}

fn poset_name(o: &Options, n: usize) -> String {
    let order = match o.order {
        OrderDirection::Bruhat => "bruhat",
        OrderDirection::Dual => "dual",
    };
    format!("{}-{n}-{order}", o.family)
}

fn gen(o: &Options, n: usize, art: &mut Artifacts) -> Result<bool> {
    let (elements, poset) = family_poset(o.family, n, o.order)?;
    let dir = n.to_string();
    art.json(&format!("{dir}/elements.json"), poset.names())?;
    match o.format {
        Format::Json => art.json(&format!("{dir}/poset.json"), &poset.to_json(&poset_name(o, n)))?,
        Format::Dot => art.write(&format!("{dir}/poset.dot"), poset.to_dot(&poset_name(o, n)).as_bytes())?,
        Format::Csv => {
            let variant = o
                .labeling
                .variant()
                .ok_or_else(|| Error::InvalidInput("cover CSV needs a candidate labelling".into()))?;
            let records = family_covers(&elements, &poset, variant)?;
            let header = ["lower_window", "upper_window", "di", "j_candidate", "covering_value"].map(String::from);
            let rows = records
                .iter()
                .map(|r| -> Result<Vec<String>> {
                    let di = difference_index(&elements[r.lower], &elements[r.upper])?;
                    Ok(vec![
                        poset.name(r.lower).to_string(),
                        poset.name(r.upper).to_string(),
                        di.to_string(),
                        r.label.map(|l| l.j.to_string()).unwrap_or_default(),
                        r.covering_value.to_string(),
                    ])
                })
                .collect::<Result<Vec<_>>>()?;
            art.csv(&format!("{dir}/covers.csv"), &header, &rows)?;
        }
    }
    Ok(true)
}

/// A bare list of pairs or a certificate with `ideal_top` and `matching`.
#[derive(Deserialize)]
#[serde(untagged)]
enum MatchingFile {
    Pairs(Vec<[String; 2]>),
    Certificate(CertificateJson),
}

fn check_spm_cmd(poset_path: &Path, matching_path: &Path, special: bool, art: &mut Artifacts) -> Result<bool> {
    let (name, poset) = read_poset(poset_path)?;
    let pairs = match read_json::<MatchingFile>(matching_path)? {
        MatchingFile::Pairs(p) => p,
        MatchingFile::Certificate(c) => c.matching,
    };
    let m = MatchingMap::from_named_pairs(&poset, &pairs)?;
    let verdict = if special {
        check_special_matching(&poset, &m)?
    } else {
        check_spm(&poset, &m)?
    };
    let json = verdict.to_json(&poset);
    art.json(&format!("{name}/verdict.json"), &json)?;
    if !verdict.valid {
        let invariant = if special { "special-matching" } else { "special-partial-matching" };
        art.json(
            &format!("{name}/certificate.json"),
            &Certificate {
                invariant,
                detail: &json,
            },
        )?;
        return Ok(false);
    }
    let lifting = check_lifting(&poset, &m)?;
    art.json(&format!("{name}/lifting.json"), &lifting)?;
    if !lifting.holds {
        art.json(
            &format!("{name}/certificate.json"),
            &Certificate {
                invariant: "lifting-property",
                detail: &lifting,
            },
        )?;
    }
    Ok(lifting.holds)
}

#[derive(Serialize)]
struct ClassificationJson {
    size: usize,
    pircon: bool,
    zircon: Option<bool>,
    ideals_checked: usize,
    certificates: Vec<CertificateJson>,
}

fn pircon_cmd(poset: &Poset, dir: &str, with_zircon: bool, art: &mut Artifacts) -> Result<bool> {
    let c = classify_with(poset, with_zircon)?;
    art.json(
        &format!("{dir}/classification.json"),
        &ClassificationJson {
            size: poset.len(),
            pircon: c.pircon,
            zircon: c.zircon,
            ideals_checked: c.certificates.len(),
            certificates: c.certificates_json(poset)?,
        },
    )?;
    if !c.pircon {
        let missing: Vec<&str> = c
            .certificates
            .iter()
            .filter(|r| r.spm.is_none())
            .map(|r| poset.name(r.ideal_top))
            .collect();
        art.json(
            &format!("{dir}/certificate.json"),
            &Certificate {
                invariant: "pircon",
                detail: &missing,
            },
        )?;
    }
    Ok(c.pircon)
}

#[derive(Serialize)]
struct FixedSpmJson {
    n: usize,
    host_size: usize,
    fixed_size: usize,
    host_pircon: bool,
    /// The fixed part, matched to the fixed-point-free signed involutions by
    /// equal full lines, is order-isomorphic to their dual Bruhat order.
    fixed_is_dual_fpf_signed: bool,
    pircon: bool,
    ideals: Vec<FixedIdealReport>,
}

fn fixed_spm(o: &Options, n: usize, art: &mut Artifacts) -> Result<bool> {
    let (elements, host) = family_poset(Family::FpfInvolutions, n, OrderDirection::Dual)?;
    let tau = phi_automorphism(&elements)?;
    let classification = classify_with(&host, false)?;
    let dir = n.to_string();
    if !classification.pircon {
        art.json(
            &format!("{dir}/certificate.json"),
            &Certificate {
                invariant: "pircon",
                detail: "host poset has an ideal without an SPM",
            },
        )?;
        return Ok(false);
    }
    let report = fixed_pircon_verify(&host, &tau, &classification, o.strict_claims)?;
    let fixed = host.fixed_subposet(&tau)?;
    let iso = fixed_matches_signed(&elements, &fixed.poset, &fixed.embedding, n)?;
    let json = FixedSpmJson {
        n,
        host_size: host.len(),
        fixed_size: fixed.poset.len(),
        host_pircon: classification.pircon,
        fixed_is_dual_fpf_signed: iso,
        pircon: report.pircon,
        ideals: report.ideals,
    };
    art.json(&format!("{dir}/report.json"), &json)?;
    let passed = json.pircon && iso;
    if !passed {
        let failed: Vec<&str> = json
            .ideals
            .iter()
            .filter(|r| !r.spm_found)
            .map(|r| r.ideal_top.as_str())
            .collect();
        let invariant = if iso { "induced-spm" } else { "fixed-subposet-isomorphism" };
        art.json(&format!("{dir}/certificate.json"), &Certificate { invariant, detail: failed })?;
    }
    Ok(passed)
}

/// Whether the fixed part of dual `C(w0)` is dual Bruhat order on the
/// fixed-point-free signed involutions under the identity on full lines.
fn fixed_matches_signed(host_elements: &[FullPermutation], fixed: &Poset, embedding: &[usize], n: usize) -> Result<bool> {
    let (signed, target) = family_poset(Family::FpfSignedInvolutions, n, OrderDirection::Dual)?;
    if signed.len() != fixed.len() {
        return Ok(false);
    }
    let image: Option<Vec<usize>> = embedding
        .iter()
        .map(|&h| signed.iter().position(|s| *s == host_elements[h]))
        .collect();
    let Some(image) = image else {
        return Ok(false);
    };
    Ok((0..fixed.len()).all(|a| (0..fixed.len()).all(|b| fixed.lt(a, b) == target.lt(image[a], image[b]))))
}

#[derive(Serialize, Default)]
struct RandomRun {
    seed: u64,
    posets: usize,
    spms: usize,
    pairs_checked: usize,
    lifting_failures: usize,
    failures: Vec<RandomFailure>,
}

#[derive(Serialize)]
struct RandomFailure {
    poset: PosetJson,
    matching: Vec<[String; 2]>,
    automorphism: Vec<usize>,
    reason: String,
}

fn random_fixed_spm(o: &Options, count: usize, max_size: usize, art: &mut Artifacts) -> Result<bool> {
    if !(2..=8).contains(&max_size) {
        return Err(Error::InvalidInput(format!("random poset size {max_size} outside 2..=8")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let mut out = RandomRun {
        seed: o.seed,
        ..RandomRun::default()
    };
    for _ in 0..count {
        let size = rand::Rng::gen_range(&mut rng, 2..=max_size);
        let poset = Poset::random_with_top(size, 0.4, &mut rng);
        let spms = all_spms(&poset)?;
        let autos = all_automorphisms(&poset);
        out.posets += 1;
        out.spms += spms.len();
        for m in &spms {
            if !check_lifting(&poset, m)?.holds {
                out.lifting_failures += 1;
            }
            for tau in &autos {
                out.pairs_checked += 1;
                let reason = match induced_spm(&poset, m, tau, o.strict_claims) {
                    Ok(ind) if ind.verdict.valid => continue,
                    Ok(ind) => ind.verdict.to_json(&ind.fixed.poset).violation,
                    Err(e) => e.to_string(),
                };
                out.failures.push(RandomFailure {
                    poset: poset.to_json("random"),
                    matching: m.to_named_pairs(&poset),
                    automorphism: tau.0.clone(),
                    reason,
                });
            }
        }
    }
    let passed = out.failures.is_empty() && out.lifting_failures == 0;
    art.json("random/report.json", &out)?;
    if !passed {
        art.json(
            "random/certificate.json",
            &Certificate {
                invariant: "induced-spm",
                detail: &out.failures,
            },
        )?;
    }
    Ok(passed)
}

#[derive(Deserialize)]
struct LabelEntry {
    lower: String,
    upper: String,
    label: [i32; 2],
}

fn labelling_from_file(path: &Path, poset: &Poset, order: LabelOrder) -> Result<EdgeLabelling> {
    let entries: Vec<LabelEntry> = read_json(path)?;
    let mut labelling = EdgeLabelling::new(order);
    for e in entries {
        let find = |s: &str| {
            poset
                .index_of(s)
                .ok_or_else(|| Error::InvalidInput(format!("unknown element {s:?} in label file")))
        };
        labelling.insert(find(&e.lower)?, find(&e.upper)?, EdgeLabel::new(e.label[0], e.label[1]));
    }
    Ok(labelling)
}

fn el_verify(o: &Options, n: usize, art: &mut Artifacts) -> Result<bool> {
    let (elements, poset) = family_poset(o.family, n, o.order)?;
    let order = LabelOrder::from(o.label_order);
    let labelling = match (o.labeling.variant(), &o.labels) {
        (Some(variant), _) => candidate_labelling(&elements, &poset, variant, order)?,
        (None, Some(path)) => labelling_from_file(path, &poset, order)?,
        (None, None) => return Err(Error::InvalidInput("--labeling from-file needs --labels".into())),
    };
    let report = verify_el_poset(&poset, &labelling)?;
    let dir = n.to_string();
    art.json(&format!("{dir}/report.json"), &report)?;
    if let Some(worst) = report.minimal_counterexample() {
        art.json(
            &format!("{dir}/certificate.json"),
            &Certificate {
                invariant: "el-labelling",
                detail: worst,
            },
        )?;
    }
    if o.family == Family::FpfSignedInvolutions && o.order == OrderDirection::Bruhat {
        #[derive(Serialize)]
        struct Closure {
            gradedness: crate::shellability::GradednessReport,
            cover_closure: crate::shellability::CoverClosureReport,
            candidate_closure: Option<crate::shellability::FpfClosureReport>,
        }
        let closure = Closure {
            gradedness: rank_gradedness(o.family, n)?,
            cover_closure: fpf_cover_closure(n)?,
            candidate_closure: o.labeling.variant().map(|v| fpf_closure_check(n, v)).transpose()?,
        };
        art.json(&format!("{dir}/closure.json"), &closure)?;
    }
    Ok(report.passed())
}

#[derive(Serialize)]
struct HomologyJson {
    n: usize,
    vertices: usize,
    facets: usize,
    dim: isize,
    expected_dim: isize,
    reduced_betti: Vec<usize>,
    euler_characteristic: i64,
    verdict: BallSphere,
}

fn homology(o: &Options, n: usize, art: &mut Artifacts) -> Result<bool> {
    let (_, poset) = family_poset(o.family, n, OrderDirection::Bruhat)?;
    let proper = poset.proper_part()?;
    let complex = order_complex(&proper.poset);
    let h = homology_z2(&complex);
    let chi = euler_characteristic(&complex);
    if h.alternating_sum() != chi - 1 {
        return Err(Error::InvalidInput(format!(
            "Betti numbers {:?} disagree with Euler characteristic {chi}",
            h.betti
        )));
    }
    let expected_dim = if o.family == Family::FpfSignedInvolutions {
        expected_dimension(n)?
    } else {
        let rank = poset.rank_function().ok_or(Error::NotGraded)?;
        let (top, bottom) = (poset.top().ok_or(Error::MissingBound)?, poset.bottom().ok_or(Error::MissingBound)?);
        rank[top] as isize - rank[bottom] as isize - 2
    };
    let verdict = ball_sphere_signature(&complex, &h, expected_dim);
    let dir = n.to_string();
    art.json(&format!("{dir}/complex.json"), &complex_json(&complex, proper.poset.names()))?;
    let json = HomologyJson {
        n,
        vertices: complex.vertex_count,
        facets: complex.facets.len(),
        dim: complex.dim(),
        expected_dim,
        reduced_betti: h.betti.clone(),
        euler_characteristic: chi,
        verdict,
    };
    match o.format {
        Format::Csv => {
            let dim = complex.dim().max(0) as usize;
            let mut header = vec!["n".to_string(), "dim".to_string()];
            header.extend((0..=dim).map(|d| format!("betti_{d}")));
            header.push("verdict".to_string());
            let mut row = vec![n.to_string(), complex.dim().to_string()];
            row.extend((0..=dim).map(|d| h.reduced(d as isize).to_string()));
            row.push(verdict.to_string());
            art.csv(&format!("{dir}/homology.csv"), &header, &[row])?;
        }
        _ => art.json(&format!("{dir}/homology.json"), &json)?,
    }
    let passed = o.family != Family::FpfSignedInvolutions || verdict == BallSphere::BallConsistent;
    if !passed {
        art.json(
            &format!("{dir}/certificate.json"),
            &Certificate {
                invariant: "ball-signature",
                detail: &json,
            },
        )?;
    }
    Ok(passed)
}

#[derive(Serialize)]
struct StatsRow {
    n: usize,
    window: String,
    inv: usize,
    neg: usize,
    len: usize,
    dna: usize,
    rho: Option<usize>,
}

#[derive(Serialize)]
struct RankSummary {
    n: usize,
    rho_w0: Option<usize>,
    rho_w0_formula: usize,
    rho_hat0: Option<usize>,
    rho_hat0_formula: usize,
    parity_failures: Vec<String>,
}

/// `ρ(w0) = (n² + n)/2` and `ρ(0̂) = ⌈n/2⌉`, as closed forms.
pub fn rank_formulas(n: usize) -> (usize, usize) {
    ((n * n + n) / 2, n.div_ceil(2))
}

fn stats_cmd(o: &Options, n: usize, art: &mut Artifacts) -> Result<bool> {
    if !o.family.is_signed() {
        return Err(Error::InvalidInput(format!("stats needs a signed family, got {}", o.family)));
    }
    let (elements, _) = family_poset(o.family, n, OrderDirection::Bruhat)?;
    let mut rows = Vec::with_capacity(elements.len());
    let mut parity_failures = Vec::new();
    for e in elements {
        let w = SignedPermutation::from_full(e)?;
        let s = stats(&w);
        if !(s.inv + s.neg).is_multiple_of(2) || !(s.length + s.dna).is_multiple_of(2) {
            parity_failures.push(w.to_string());
        }
        rows.push(StatsRow {
            n,
            window: w.to_string(),
            inv: s.inv,
            neg: s.neg,
            len: s.length,
            dna: s.dna,
            rho: s.rank,
        });
    }
    let (rho_w0_formula, rho_hat0_formula) = rank_formulas(n);
    let summary = RankSummary {
        n,
        rho_w0: stats(&w0(n)).rank,
        rho_w0_formula,
        rho_hat0: stats(&hat0_fpf(n)).rank,
        rho_hat0_formula,
        parity_failures,
    };
    let dir = n.to_string();
    match o.format {
        Format::Csv => {
            let header = ["n", "window", "inv", "neg", "len", "dna", "rho"].map(String::from);
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.n.to_string(),
                        r.window.clone(),
                        r.inv.to_string(),
                        r.neg.to_string(),
                        r.len.to_string(),
                        r.dna.to_string(),
                        r.rho.map(|v| v.to_string()).unwrap_or_default(),
                    ]
                })
                .collect();
            art.csv(&format!("{dir}/stats.csv"), &header, &table)?;
        }
        _ => art.json(&format!("{dir}/stats.json"), &rows)?,
    }
    art.json(&format!("{dir}/summary.json"), &summary)?;
    let passed = summary.parity_failures.is_empty()
        && summary.rho_w0 == Some(rho_w0_formula)
        && summary.rho_hat0 == Some(rho_hat0_formula);
    if !passed {
        art.json(
            &format!("{dir}/certificate.json"),
            &Certificate {
                invariant: "rank-formulas",
                detail: &summary,
            },
        )?;
    }
    Ok(passed)
}
