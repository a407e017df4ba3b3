use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_rational::{BigRational, Rational64};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use sdcodes::canonical::automorphism_order;
use sdcodes::classify::{classify_via_neighbors, first_neighbor, generate_with, GenerateOptions, DESK_LENGTH_LIMIT};
use sdcodes::f4::{b_map, f4_equivalence_certificate, f4_extremal_bound, AdditiveF4Code};
use sdcodes::lattice::{
    construct_a4, construct_la, construct_lb, construct_lc, construct_lc_odd, lattice_shadow_counts, CongruenceLattice,
};
use sdcodes::par::{num_threads, Execution};
use sdcodes::qseries::{fit_theta, shadow_theta, ThetaSeries};
use sdcodes::selfdual::{
    check_extremal_profile, coset_weight_distribution, covering_radius, design_check, doubly_even_neighbors,
    extremal_bound, find_t_decomposition, shadow, verify_self_dual, Kind, SelfDualCode,
};
use sdcodes::z4::{min_euclidean_weight, z4_extremal_bound, z4_self_dual_check, Z4Code, Z4Type};
use sdcodes::{data, BitMatrix};

/// Dimension above which lattice enumeration needs `--long`.
const ENUMERATION_DIMENSION_LIMIT: usize = 24;
/// Coset-census work (cosets times codewords) above which `--long` is needed.
const CENSUS_WORK_LIMIT: f64 = 1e10;

#[derive(Parser)]
#[command(name = "sdcodes", version, about = "Self-dual codes, Z4 codes and unimodular lattices")]
struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the run manifest here instead of to stderr.
    #[arg(long, global = true)]
    manifest: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a code or lattice file against expected properties.
    Verify(VerifyArgs),
    /// Classify self-dual codes of length n with minimum weight at least d.
    Classify(ClassifyArgs),
    /// B-map image of an additive code, then its extremal beta = 10 neighbor.
    PipelineBeta10(PipelineArgs),
    /// Shadow decomposition of a singly even code.
    Shadow(PathArg),
    /// Doubly even neighbors of a singly even code, or the beta sweep of a doubly even one.
    Neighbors(NeighborArgs),
    /// Look for a T-decomposition among the weight-4 words.
    Tdec(TdecArgs),
    /// Binary image of an even self-dual additive code.
    Bmap(BmapArgs),
    /// Theta series of a lattice or of a lattice built from a code.
    Theta(ThetaArgs),
    /// Covering radius and coset counts by minimum weight.
    CoveringRadius(PathArg),
    /// Histogram of coset weight enumerators over cosets of a given minimum weight.
    CosetDist(CosetArgs),
    /// Order of the automorphism group.
    AutOrder(PathArg),
}

#[derive(Args)]
struct PathArg {
    path: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    path: PathBuf,
    #[arg(long)]
    self_dual: bool,
    #[arg(long)]
    even: bool,
    #[arg(long)]
    doubly_even: bool,
    #[arg(long)]
    singly_even: bool,
    /// Z4 type: I or II.
    #[arg(long = "type")]
    kind: Option<String>,
    /// Minimum (Hamming, additive or Euclidean) weight.
    #[arg(long)]
    min_weight: Option<usize>,
    #[arg(long)]
    extremal: bool,
    #[arg(long)]
    unimodular: bool,
    #[arg(long)]
    min_norm: Option<i64>,
    #[arg(long)]
    long: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    n: usize,
    #[arg(long, default_value_t = 2)]
    min_weight: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Required for n = 32.
    #[arg(long)]
    long: bool,
    /// Required above n = 32.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct PipelineArgs {
    /// Additive code file; defaults to the bundled C10.
    #[arg(long)]
    parent: Option<PathBuf>,
    /// Pick the bundled extremal length-10 code with this automorphism group order.
    #[arg(long, conflicts_with = "parent")]
    parent_aut: Option<u64>,
    /// Sweep all subcodes and check that they give one class.
    #[arg(long)]
    sweep: bool,
    #[arg(long)]
    design_check: bool,
    #[arg(long)]
    covering_radius: bool,
    /// Write the resulting codes here.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct NeighborArgs {
    path: PathBuf,
    /// For a doubly even input: sweep the subcodes for neighbors with this beta.
    #[arg(long)]
    beta: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    long: bool,
}

#[derive(Args)]
struct TdecArgs {
    path: PathBuf,
    #[arg(long)]
    beta: usize,
}

#[derive(Args)]
struct BmapArgs {
    path: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ThetaArgs {
    path: PathBuf,
    #[arg(long, group = "construction")]
    la: bool,
    #[arg(long, group = "construction")]
    lb: bool,
    #[arg(long, group = "construction")]
    lc: bool,
    /// L_C with the opposite glue parity: an odd unimodular lattice.
    #[arg(long, group = "construction")]
    lc_odd: bool,
    #[arg(long, group = "construction")]
    a4: bool,
    #[arg(long)]
    max_norm: i64,
    #[arg(long)]
    fit: bool,
    #[arg(long)]
    shadow: bool,
    /// Also count by short-vector enumeration and compare.
    #[arg(long)]
    enumerate: bool,
    #[arg(long)]
    long: bool,
    /// Write the lattice basis in the text format.
    #[arg(long)]
    export: Option<PathBuf>,
}

#[derive(Args)]
struct CosetArgs {
    path: PathBuf,
    #[arg(long)]
    min_weight: usize,
    #[arg(long)]
    long: bool,
}

enum Input {
    Binary(BitMatrix),
    F4(AdditiveF4Code),
    Z4(Z4Code),
    Lattice(CongruenceLattice),
}

#[derive(Serialize)]
struct InputRecord {
    path: String,
    sha256: String,
}

#[derive(Serialize)]
struct RunManifest {
    command: String,
    inputs: Vec<InputRecord>,
    parameters: Vec<String>,
    outputs: BTreeMap<String, String>,
    wall_time_s: f64,
    threads: usize,
    passed: bool,
}

#[derive(Default)]
struct Run {
    inputs: Vec<InputRecord>,
    outputs: BTreeMap<String, String>,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl Run {
    fn read(&mut self, path: &Path) -> Result<String> {
        let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
        self.inputs.push(InputRecord {
            path: path.display().to_string(),
            sha256: sha256_hex(&bytes),
        });
        String::from_utf8(bytes).with_context(|| format!("{} is not UTF-8", path.display()))
    }

    fn load(&mut self, path: &Path) -> Result<Input> {
        let text = self.read(path)?;
        let head = text
            .lines()
            .map(str::trim)
            .find(|l| !l.is_empty() && !l.starts_with('#'))
            .and_then(|l| l.split_whitespace().next())
            .unwrap_or("");
        let parsed = match head {
            "binary" => Input::Binary(BitMatrix::parse_text(&text)?),
            "f4additive" => Input::F4(AdditiveF4Code::parse_text(&text)?),
            "z4" => Input::Z4(Z4Code::parse_text(&text)?),
            "lattice" => Input::Lattice(CongruenceLattice::parse_text(&text)?),
            _ => bail!("{}: unrecognised format (expected binary, f4additive, z4 or lattice header)", path.display()),
        };
        Ok(parsed)
    }

    fn load_binary(&mut self, path: &Path) -> Result<BitMatrix> {
        match self.load(path)? {
            Input::Binary(b) => Ok(b),
            _ => bail!("{}: expected a binary code", path.display()),
        }
    }

    fn load_f4(&mut self, path: &Path) -> Result<AdditiveF4Code> {
        match self.load(path)? {
            Input::F4(c) => Ok(c),
            _ => bail!("{}: expected an additive F4 code", path.display()),
        }
    }

    fn write(&mut self, path: &Path, text: &str) -> Result<()> {
        fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
        self.outputs.insert(path.display().to_string(), sha256_hex(text.as_bytes()));
        Ok(())
    }
}

/// Result of one command: JSON output and whether every check passed.
struct Report {
    value: Value,
    passed: bool,
}

fn ok(value: Value) -> Result<Report> {
    Ok(Report { value, passed: true })
}

#[derive(Serialize)]
struct Expectation {
    check: &'static str,
    expected: Value,
    actual: Value,
    pass: bool,
}

fn expect(list: &mut Vec<Expectation>, check: &'static str, expected: impl Serialize, actual: impl Serialize) {
    let expected = json!(expected);
    let actual = json!(actual);
    let pass = expected == actual;
    list.push(Expectation {
        check,
        expected,
        actual,
        pass,
    });
}

fn kind_name(k: Kind) -> &'static str {
    match k {
        Kind::DoublyEven => "doubly-even",
        Kind::SinglyEven => "singly-even",
    }
}

fn theta_json(t: &ThetaSeries) -> Value {
    json!(t)
}

fn cmd_verify(run: &mut Run, a: &VerifyArgs) -> Result<Report> {
    let input = run.load(&a.path)?;
    let mut props = serde_json::Map::new();
    let mut exp = Vec::new();
    match input {
        Input::Binary(g) => {
            let n = g.ncols();
            let sd = verify_self_dual(&g);
            props.insert("format".into(), json!("binary"));
            props.insert("n".into(), json!(n));
            props.insert("self_dual".into(), json!(sd.is_ok()));
            let wd = g.weight_distribution()?;
            let d = wd.min_weight();
            let even = wd.counts().iter().enumerate().all(|(w, &c)| c == 0 || w % 2 == 0);
            props.insert("even".into(), json!(even));
            props.insert("min_weight".into(), json!(d));
            if let Ok(c) = &sd {
                props.insert("kind".into(), json!(kind_name(c.kind())));
                props.insert("extremal_bound".into(), json!(extremal_bound(n)));
            }
            let kind = sd.as_ref().ok().map(|c| c.kind());
            if a.self_dual {
                expect(&mut exp, "self-dual", true, sd.is_ok());
            }
            if a.even {
                expect(&mut exp, "even", true, even);
            }
            if a.doubly_even {
                expect(&mut exp, "doubly-even", true, kind == Some(Kind::DoublyEven));
            }
            if a.singly_even {
                expect(&mut exp, "singly-even", true, kind == Some(Kind::SinglyEven));
            }
            if let Some(w) = a.min_weight {
                expect(&mut exp, "min-weight", w, d);
            }
            if a.extremal {
                expect(&mut exp, "extremal", true, sd.is_ok() && d == Some(extremal_bound(n)));
            }
        }
        Input::F4(c) => {
            let n = c.n();
            let sd = c.trace_dual_check();
            let d = c.minimum_weight();
            props.insert("format".into(), json!("f4additive"));
            props.insert("n".into(), json!(n));
            props.insert("self_dual".into(), json!(sd));
            props.insert("even".into(), json!(c.is_even()));
            props.insert("min_weight".into(), json!(d));
            props.insert("extremal_bound".into(), json!(f4_extremal_bound(n)));
            if a.self_dual {
                expect(&mut exp, "self-dual", true, sd);
            }
            if a.even {
                expect(&mut exp, "even", true, c.is_even());
            }
            if let Some(w) = a.min_weight {
                expect(&mut exp, "min-weight", w, d);
            }
            if a.extremal {
                expect(&mut exp, "extremal", true, sd && d == Some(f4_extremal_bound(n)));
            }
        }
        Input::Z4(c) => {
            let t = z4_self_dual_check(&c);
            let type_name = match t {
                Z4Type::TypeI => "I",
                Z4Type::TypeII => "II",
                Z4Type::NotSelfDual => "none",
            };
            props.insert("format".into(), json!("z4"));
            props.insert("n".into(), json!(c.n()));
            props.insert("k1".into(), json!(c.k1()));
            props.insert("k2".into(), json!(c.k2()));
            props.insert("self_dual".into(), json!(t != Z4Type::NotSelfDual));
            props.insert("type".into(), json!(type_name));
            if a.self_dual {
                expect(&mut exp, "self-dual", true, t != Z4Type::NotSelfDual);
            }
            if let Some(k) = &a.kind {
                expect(&mut exp, "type", k.as_str(), type_name);
            }
            if a.min_weight.is_some() || a.extremal {
                let (bound, _) = z4_extremal_bound(c.n(), t);
                let cap = a.min_weight.unwrap_or(0).max(bound) as u32;
                let info = min_euclidean_weight(&c, cap)?;
                props.insert("min_euclidean_weight".into(), json!(info));
                props.insert("extremal_bound".into(), json!(bound));
                if let Some(w) = a.min_weight {
                    expect(&mut exp, "min-weight", w, info.min_weight);
                }
                if a.extremal {
                    expect(&mut exp, "extremal", true, info.min_weight as usize == bound);
                }
            }
        }
        Input::Lattice(l) => {
            props.insert("format".into(), json!("lattice"));
            props.insert("n".into(), json!(l.n()));
            props.insert("scale".into(), json!(l.scale()));
            props.insert("integral".into(), json!(l.is_integral()));
            props.insert("even".into(), json!(l.is_even()));
            props.insert("unimodular".into(), json!(l.is_unimodular()));
            if a.unimodular {
                expect(&mut exp, "unimodular", true, l.is_unimodular());
            }
            if a.even {
                expect(&mut exp, "even", true, l.is_even());
            }
            if let Some(m) = a.min_norm {
                if l.n() > ENUMERATION_DIMENSION_LIMIT && !a.long {
                    bail!("enumeration in dimension {} needs --long", l.n());
                }
                let th = l.short_vectors(Rational64::from_integer(m), Execution::Auto)?;
                let min = th.min_norm().map(|r| r.to_string());
                props.insert("min_norm".into(), json!(min));
                expect(&mut exp, "min-norm", Rational64::from_integer(m).to_string(), min);
            }
        }
    }
    let passed = exp.iter().all(|e| e.pass);
    props.insert("expectations".into(), json!(exp));
    Ok(Report {
        value: Value::Object(props),
        passed,
    })
}

fn cmd_classify(run: &mut Run, a: &ClassifyArgs) -> Result<Report> {
    if a.n >= DESK_LENGTH_LIMIT && !(a.long || a.force) {
        bail!("classification at n = {} runs for minutes or more; pass --long", a.n);
    }
    if a.n > DESK_LENGTH_LIMIT && !a.force {
        bail!("n = {} is above the desk limit {DESK_LENGTH_LIMIT}; pass --force", a.n);
    }
    if a.n >= DESK_LENGTH_LIMIT {
        eprintln!("estimate: n = {} takes tens of seconds to minutes per core", a.n);
    }
    let gen = generate_with(
        a.n,
        a.min_weight,
        GenerateOptions {
            exec: Execution::Auto,
            force: a.force,
        },
    )?;
    let (doubly, singly) = gen.counts();
    let mut classes = Vec::new();
    for (i, rec) in gen.classes.iter().enumerate() {
        let file = format!("class-{:03}.txt", i + 1);
        if let Some(dir) = &a.out {
            fs::create_dir_all(dir)?;
            run.write(&dir.join(&file), &rec.code.generator().to_text())?;
        }
        classes.push(json!({
            "file": file,
            "kind": kind_name(rec.kind()),
            "min_weight": rec.min_weight,
            "aut_order": rec.aut_order.to_string(),
            "hash": rec.form.hash,
        }));
    }
    let value = json!({
        "n": a.n,
        "min_weight": a.min_weight,
        "counts": {"doubly": doubly, "singly": singly},
        "classes": classes,
        "stats": gen.stats,
    });
    if let Some(dir) = &a.out {
        run.write(&dir.join("manifest.json"), &serde_json::to_string_pretty(&value)?)?;
    }
    ok(value)
}

fn cmd_pipeline(run: &mut Run, a: &PipelineArgs) -> Result<Report> {
    let parent = match (&a.parent, a.parent_aut) {
        (Some(p), _) => run.load_f4(p)?,
        (None, Some(order)) => data::extremal10()
            .into_iter()
            .find(|(o, _)| *o == order)
            .map(|(_, c)| c)
            .ok_or_else(|| anyhow!("no bundled code with automorphism group order {order}"))?,
        (None, None) => data::c10(),
    };
    let b = b_map(&parent)?;
    let a4 = b.weight_distribution()?.count(4);
    let tdec = find_t_decomposition(&b, 10)?.ok_or_else(|| anyhow!("weight-4 words do not form a T-decomposition"))?;
    let mut out = serde_json::Map::new();
    out.insert("bmap_a4".into(), json!(a4));
    out.insert("tetrads".into(), json!(tdec.tetrads));
    let code = if a.sweep {
        let (codes, sweeps) = classify_via_neighbors(std::slice::from_ref(&b), 10)?;
        out.insert("sweep".into(), json!(sweeps[0]));
        if codes.len() != 1 {
            bail!("the sweep produced {} classes", codes.len());
        }
        codes.into_iter().next().expect("one class")
    } else {
        first_neighbor(&b, 10)?
    };
    let profile = check_extremal_profile(&code)?;
    out.insert("code".into(), json!(code.generator().to_text()));
    out.insert("beta".into(), json!(profile.beta));
    out.insert("weight_distribution".into(), json!(profile.code));
    out.insert("shadow_distribution".into(), json!(profile.shadow));
    let (d1, d2) = doubly_even_neighbors(&code)?;
    let neighbors: Vec<Value> = [&d1, &d2]
        .iter()
        .map(|d| -> Result<Value> {
            let w = d.weight_distribution()?;
            Ok(json!({"a4": w.count(4), "min_weight": w.min_weight()}))
        })
        .collect::<Result<_>>()?;
    out.insert("doubly_even_neighbors".into(), json!(neighbors));
    if a.design_check {
        out.insert("design".into(), json!(design_check(&code, 8, 1)?));
    }
    if a.covering_radius {
        out.insert("covering".into(), json!(covering_radius(code.generator())?));
    }
    if let Some(dir) = &a.out {
        fs::create_dir_all(dir)?;
        run.write(&dir.join("beta10.txt"), &code.generator().to_text())?;
        run.write(&dir.join("neighbor-1.txt"), &d1.generator().to_text())?;
        run.write(&dir.join("neighbor-2.txt"), &d2.generator().to_text())?;
    }
    ok(Value::Object(out))
}

fn self_dual_input(run: &mut Run, path: &Path) -> Result<SelfDualCode> {
    Ok(verify_self_dual(&run.load_binary(path)?)?)
}

fn cmd_shadow(run: &mut Run, a: &PathArg) -> Result<Report> {
    let c = self_dual_input(run, &a.path)?;
    if c.is_doubly_even() {
        bail!("the shadow of a doubly even code is the code itself");
    }
    let sh = shadow(&c)?;
    let mut v = json!(sh);
    if c.n() == 40 {
        if let Ok(p) = check_extremal_profile(&c) {
            v["beta"] = json!(p.beta);
        }
    }
    ok(v)
}

fn cmd_neighbors(run: &mut Run, a: &NeighborArgs) -> Result<Report> {
    let c = self_dual_input(run, &a.path)?;
    match (c.kind(), a.beta) {
        (Kind::SinglyEven, _) => {
            let (d1, d2) = doubly_even_neighbors(&c)?;
            let mut list = Vec::new();
            for (i, d) in [d1, d2].iter().enumerate() {
                let w = d.weight_distribution()?;
                if let Some(dir) = &a.out {
                    fs::create_dir_all(dir)?;
                    run.write(&dir.join(format!("neighbor-{}.txt", i + 1)), &d.generator().to_text())?;
                }
                list.push(json!({"min_weight": w.min_weight(), "weight_distribution": w}));
            }
            ok(json!({"doubly_even_neighbors": list}))
        }
        (Kind::DoublyEven, Some(beta)) => {
            if !a.long {
                bail!("sweeping 2^19 - 1 subcodes takes about a minute per core; pass --long");
            }
            eprintln!("estimate: 2^19 - 1 subcodes, canonical forms for those avoiding every tetrad");
            let (codes, sweeps) = classify_via_neighbors(std::slice::from_ref(&c), beta)?;
            let mut list = Vec::new();
            for (i, code) in codes.iter().enumerate() {
                if let Some(dir) = &a.out {
                    fs::create_dir_all(dir)?;
                    run.write(&dir.join(format!("class-{:03}.txt", i + 1)), &code.generator().to_text())?;
                }
                list.push(json!({"aut_order": automorphism_order(code.generator())?.order.to_string()}));
            }
            ok(json!({"sweep": sweeps[0], "classes": list}))
        }
        (Kind::DoublyEven, None) => bail!("doubly even input needs --beta"),
    }
}

fn cmd_tdec(run: &mut Run, a: &TdecArgs) -> Result<Report> {
    let c = self_dual_input(run, &a.path)?;
    let t = find_t_decomposition(&c, a.beta)?;
    Ok(Report {
        passed: t.is_some(),
        value: json!({"beta": a.beta, "decomposition": t}),
    })
}

fn cmd_bmap(run: &mut Run, a: &BmapArgs) -> Result<Report> {
    let c = run.load_f4(&a.path)?;
    let b = b_map(&c)?;
    let text = b.generator().to_text();
    if let Some(p) = &a.out {
        run.write(p, &text)?;
    }
    let w = b.weight_distribution()?;
    let beta = w.count(4) as usize;
    let tdec = if (1..=b.n() / 4).contains(&beta) {
        find_t_decomposition(&b, beta)?
    } else {
        None
    };
    ok(json!({
        "kind": kind_name(b.kind()),
        "a4": w.count(4),
        "tetrads": tdec.map(|t| t.tetrads),
        "code": text,
    }))
}

fn cmd_theta(run: &mut Run, a: &ThetaArgs) -> Result<Report> {
    let input = run.load(&a.path)?;
    let l = match input {
        Input::Lattice(l) => l,
        Input::Z4(c) => construct_a4(&c)?,
        Input::Binary(g) => {
            if a.la {
                construct_la(&g)?
            } else if a.lb {
                construct_lb(&g)?
            } else if a.lc {
                construct_lc(&g)?
            } else if a.lc_odd {
                construct_lc_odd(&g)?
            } else {
                bail!("binary input needs one of --la, --lb, --lc, --lc-odd");
            }
        }
        Input::F4(_) => bail!("additive codes have no lattice construction here; use bmap first"),
    };
    if let Some(p) = &a.export {
        run.write(p, &l.to_text())?;
    }
    let max = Rational64::from_integer(a.max_norm);
    let heavy = l.n() > ENUMERATION_DIMENSION_LIMIT;
    let by_codes = l.theta_by_codewords(a.max_norm).ok();
    let enumerated = if a.enumerate || by_codes.is_none() {
        if heavy && !a.long {
            bail!("short-vector enumeration in dimension {} needs --long", l.n());
        }
        if heavy {
            eprintln!("estimate: dimension {} enumeration, seconds to minutes per core", l.n());
        }
        Some(l.short_vectors(max, Execution::Auto)?)
    } else {
        None
    };
    let mut passed = true;
    let theta = match (&by_codes, &enumerated) {
        (Some(c), Some(e)) => {
            passed &= c.nonzero() == e.nonzero();
            c.clone()
        }
        (Some(c), None) => c.clone(),
        (None, Some(e)) => e.clone(),
        (None, None) => unreachable!("one of the two counts always runs"),
    };
    let mut out = serde_json::Map::new();
    out.insert("n".into(), json!(l.n()));
    out.insert("even".into(), json!(l.is_even()));
    out.insert("unimodular".into(), json!(l.is_unimodular()));
    out.insert("shells".into(), theta_json(&theta));
    if let (Some(c), Some(e)) = (&by_codes, &enumerated) {
        out.insert("enumeration_agrees".into(), json!(c.nonzero() == e.nonzero()));
    }
    if a.fit || a.shadow {
        let fit = fit_theta(&theta, l.n(), !l.is_even())?;
        if a.fit {
            out.insert("fit".into(), json!(fit));
        }
        if a.shadow {
            if l.is_even() {
                bail!("an even lattice has no shadow beyond itself");
            }
            let analytic = shadow_theta(&fit.a, l.n(), 4 * a.max_norm as usize)?;
            let counted = lattice_shadow_counts(&l, a.max_norm, Execution::Auto)?;
            let mut agree = true;
            let mut analytic_shells = BTreeMap::new();
            for (k, v) in analytic.terms() {
                if k > max {
                    continue;
                }
                let c = v.at(0);
                analytic_shells.insert(k.to_string(), c.to_string());
                agree &= c == BigRational::from_integer(counted.count(k).into());
            }
            agree &= counted.nonzero().keys().all(|k| analytic.terms().contains_key(k));
            passed &= agree;
            out.insert(
                "shadow".into(),
                json!({"analytic": analytic_shells, "counted": theta_json(&counted), "agree": agree}),
            );
        }
    }
    Ok(Report {
        value: Value::Object(out),
        passed,
    })
}

fn cmd_covering(run: &mut Run, a: &PathArg) -> Result<Report> {
    let g = run.load_binary(&a.path)?;
    ok(json!(covering_radius(&g)?))
}

fn cmd_coset(run: &mut Run, a: &CosetArgs) -> Result<Report> {
    let g = run.load_binary(&a.path)?;
    let cr = covering_radius(&g)?;
    let cosets = cr.cosets_by_weight.get(a.min_weight).copied().unwrap_or(0);
    let work = cosets as f64 * 2f64.powi(g.rank() as i32);
    eprintln!("estimate: {cosets} cosets of minimum weight {} x 2^{} words = {work:.2e} steps", a.min_weight, g.rank());
    if work > CENSUS_WORK_LIMIT && !a.long {
        bail!("coset census of {work:.2e} steps needs --long");
    }
    let hist = coset_weight_distribution(&g, a.min_weight)?;
    let classes: Vec<Value> = hist
        .iter()
        .map(|(e, &count)| {
            let nz: BTreeMap<String, u64> = e
                .iter()
                .enumerate()
                .filter(|(_, &c)| c > 0)
                .map(|(w, &c)| (w.to_string(), c))
                .collect();
            json!({"cosets": count, "enumerator": nz})
        })
        .collect();
    ok(json!({"min_weight": a.min_weight, "cosets": cosets, "classes": classes}))
}

fn cmd_aut(run: &mut Run, a: &PathArg) -> Result<Report> {
    match run.load(&a.path)? {
        Input::Binary(g) => {
            let info = automorphism_order(&g)?;
            ok(json!({"order": info.order.to_string(), "generators": info.generators.len()}))
        }
        Input::F4(c) => {
            let eq = f4_equivalence_certificate(&c)?;
            ok(json!({"order": eq.automorphisms.order.to_string(), "hash": eq.form.hash}))
        }
        _ => bail!("automorphism groups are available for binary and additive codes"),
    }
}

fn dispatch(run: &mut Run, cmd: &Command) -> Result<Report> {
    match cmd {
        Command::Verify(a) => cmd_verify(run, a),
        Command::Classify(a) => cmd_classify(run, a),
        Command::PipelineBeta10(a) => cmd_pipeline(run, a),
        Command::Shadow(a) => cmd_shadow(run, a),
        Command::Neighbors(a) => cmd_neighbors(run, a),
        Command::Tdec(a) => cmd_tdec(run, a),
        Command::Bmap(a) => cmd_bmap(run, a),
        Command::Theta(a) => cmd_theta(run, a),
        Command::CoveringRadius(a) => cmd_covering(run, a),
        Command::CosetDist(a) => cmd_coset(run, a),
        Command::AutOrder(a) => cmd_aut(run, a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    #[cfg(feature = "parallel")]
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t.max(1)).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let args: Vec<String> = std::env::args().skip(1).collect();
    let command = args.first().cloned().unwrap_or_default();
    let start = Instant::now();
    let mut run = Run::default();
    let result = dispatch(&mut run, &cli.command);
    let (passed, code) = match &result {
        Ok(r) => {
            let text = serde_json::to_string_pretty(&r.value).expect("JSON values serialize");
            println!("{text}");
            run.outputs.insert("stdout".into(), sha256_hex(text.as_bytes()));
            (r.passed, if r.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            (false, 2)
        }
    };
    let manifest = RunManifest {
        command,
        inputs: run.inputs,
        parameters: args,
        outputs: run.outputs,
        wall_time_s: start.elapsed().as_secs_f64(),
        threads: num_threads(),
        passed,
    };
    let text = serde_json::to_string(&manifest).expect("manifest serializes");
    match &cli.manifest {
        Some(p) => {
            if let Err(e) = fs::write(p, text + "\n") {
                eprintln!("error: writing manifest: {e}");
                return ExitCode::from(2);
            }
        }
        None => eprintln!("{text}"),
    }
    ExitCode::from(code)
}
