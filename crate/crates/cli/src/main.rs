use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use corners::colouring::{
    find_colouring, is_orientable, lift, parse_colouring_file, symmetrize, write_colouring_file, ColouringFile,
    SearchOutcome,
};
use corners::corners::{mirror, parse_tessellation, thicken, write_tessellation, Tessellation};
use corners::homology::homology_report;
use corners::lspace::{parse_census, parse_certificate, parse_log, verify_certificate, Verdict};
use corners::orbit::{build_quotient, orbit_complex, parse_dump, write_dump};
use corners::polytope::{catalog, write_lattice};
use corners::{CornerComplex, FacetGraph, Field};

#[derive(Parser)]
#[command(name = "corners", version, about = "Right-angled corner complexes, colourings, homology and L-space certificates")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Directory for the files a command produces.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads for rank computations (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// List the catalog, or print one polytope's face lattice.
    Catalog { name: Option<String> },
    /// Build a corner complex from a tessellation and describe it.
    Build { tessellation: PathBuf },
    /// Thicken a closed complex into host polytopes and mirror it.
    Thicken { tessellation: PathBuf },
    /// Colour the facets of a complex.
    Colour {
        tessellation: PathBuf,
        #[arg(long)]
        colours: usize,
        /// Mirror along the first isolated facet and colour symmetrically.
        #[arg(long)]
        symmetric: bool,
        #[arg(long)]
        budget_ms: Option<u64>,
    },
    /// Build the quotient complex of a coloured tessellation.
    Orbit { tessellation: PathBuf, colouring: PathBuf },
    /// Betti numbers of a dumped chain complex.
    Homology {
        dump: PathBuf,
        #[arg(long, value_enum, default_value = "both")]
        field: FieldArg,
        /// Also run the duality shortcut for orientable even-dimensional complexes.
        #[arg(long)]
        fast: bool,
    },
    /// Verify an L-space certificate against a census table.
    Certify {
        certificate: PathBuf,
        #[arg(long)]
        census: Option<PathBuf>,
    },
    /// Read a search transcript into a certificate skeleton.
    ParseLog {
        log: PathBuf,
        #[arg(long)]
        census: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Gf2,
    Rational,
    Both,
}

impl FieldArg {
    fn fields(self) -> Vec<Field> {
        match self {
            FieldArg::Gf2 => vec![Field::Gf2],
            FieldArg::Rational => vec![Field::Rational],
            FieldArg::Both => vec![Field::Gf2, Field::Rational],
        }
    }
}

/// Unreadable or malformed input; exits with status 2.
#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn bad_input(path: &Path, e: impl std::fmt::Display) -> anyhow::Error {
    InputError(format!("{}: {e}", path.display())).into()
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| bad_input(path, e))
}

struct Report {
    text: String,
    json: Value,
    /// Set when the command ran but its check failed.
    failure: Option<String>,
}

impl Report {
    fn ok(text: String, json: Value) -> Report {
        Report { text, json, failure: None }
    }
}

struct Ctx {
    out: Option<PathBuf>,
}

impl Ctx {
    fn write(&self, name: &str, contents: &str) -> Result<Option<PathBuf>> {
        let Some(dir) = &self.out else { return Ok(None) };
        std::fs::create_dir_all(dir).map_err(|e| bad_input(dir, e))?;
        let path = dir.join(name);
        std::fs::write(&path, contents).map_err(|e| bad_input(&path, e))?;
        Ok(Some(path))
    }
}

fn load_complex(path: &Path) -> Result<(Tessellation, CornerComplex)> {
    let t = parse_tessellation(&read(path)?).map_err(|e| bad_input(path, e))?;
    let cx = t.build().with_context(|| format!("building {}", path.display()))?;
    Ok((t, cx))
}

fn describe(cx: &CornerComplex) -> (String, Value) {
    let mut text = String::new();
    let strata: Vec<usize> = (0..=cx.dim()).map(|d| cx.strata().iter().filter(|s| s.dim == d).count()).collect();
    let _ = writeln!(text, "dim {}", cx.dim());
    let _ = writeln!(text, "chambers {}", cx.chambers().len());
    let _ = writeln!(text, "strata {}", join(&strata));
    let _ = writeln!(text, "euler {}", cx.euler_characteristic());
    let _ = writeln!(text, "facets {}", cx.facets().len());
    for f in cx.facets() {
        let _ = writeln!(
            text,
            "facet {} slots {}{}{}",
            f.id,
            f.slots.len(),
            if f.isolated { " isolated" } else { "" },
            if f.embedded { "" } else { " non-embedded" }
        );
    }
    let facets: Vec<Value> = cx
        .facets()
        .iter()
        .map(|f| json!({"id": f.id, "slots": f.slots.len(), "isolated": f.isolated, "embedded": f.embedded}))
        .collect();
    let json = json!({
        "dim": cx.dim(),
        "chambers": cx.chambers().len(),
        "strata": strata,
        "euler": cx.euler_characteristic(),
        "facets": facets,
    });
    (text, json)
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn cmd_catalog(name: Option<String>) -> Result<Report> {
    match name {
        Some(n) => {
            let p = catalog::load(&n).map_err(|e| InputError(e.to_string()))?;
            Ok(Report::ok(write_lattice(&p), json!({"name": n, "dim": p.dim(), "fvector": p.f_vector()})))
        }
        None => {
            let mut text = String::new();
            let mut list = Vec::new();
            for n in catalog::NAMES {
                let p = catalog::load(n)?;
                let _ = writeln!(text, "{n}\tdim {}\tf-vector {}", p.dim(), join(&p.f_vector()));
                list.push(json!({"name": n, "dim": p.dim(), "fvector": p.f_vector()}));
            }
            Ok(Report::ok(text, Value::Array(list)))
        }
    }
}

fn cmd_build(path: &Path) -> Result<Report> {
    let (_, cx) = load_complex(path)?;
    let (text, json) = describe(&cx);
    Ok(Report::ok(text, json))
}

fn cmd_thicken(ctx: &Ctx, path: &Path) -> Result<Report> {
    let (_, m) = load_complex(path)?;
    let th = thicken(&m)?;
    let w = &th.complex;
    let (mut text, mut json) = describe(w);
    let _ = writeln!(text, "m-facet {}", th.m_facet);
    json["m_facet"] = json!(th.m_facet);
    let bad: Vec<u32> = w.facets().iter().filter(|f| !f.embedded).map(|f| f.id).collect();
    if let Some(p) = ctx.write("thickened.tess", &write_tessellation(&Tessellation::of_complex(w).context("thickened complex")?))? {
        json["thickened"] = json!(p);
    }
    if !bad.is_empty() {
        let mut detail = Vec::new();
        for &f in &bad {
            let contacts = w.self_contacts(f);
            for (a, b) in &contacts {
                let _ = writeln!(text, "facet {f} meets itself: slots {a} and {b}");
            }
            let pairs: Vec<String> = contacts.iter().map(|(a, b)| format!("{a}|{b}")).collect();
            detail.push(json!({"facet": f, "contacts": pairs}));
        }
        json["non_embedded"] = json!(detail);
        let names = bad.iter().map(|f| format!("facet {f}")).collect::<Vec<_>>().join(", ");
        return Ok(Report { text, json, failure: Some(format!("non-embedded {names}: no colouring exists")) });
    }
    let mirrored = mirror(w, th.m_facet)?;
    let _ = writeln!(text, "mirrored chambers {}", mirrored.complex.chambers().len());
    let _ = writeln!(text, "mirrored facets {}", mirrored.complex.facets().len());
    json["mirrored"] = json!({"chambers": mirrored.complex.chambers().len(), "facets": mirrored.complex.facets().len()});
    if let Some(p) = ctx.write("mirrored.tess", &write_tessellation(&Tessellation::of_complex(&mirrored.complex).context("mirrored complex")?))? {
        json["mirrored"]["file"] = json!(p);
    }
    Ok(Report::ok(text, json))
}

fn cmd_colour(ctx: &Ctx, path: &Path, k: usize, symmetric: bool, budget_ms: Option<u64>) -> Result<Report> {
    let (_, cx) = load_complex(path)?;
    let budget = budget_ms.map(Duration::from_millis);
    let mut text = String::new();
    let (target, mirrored) = if symmetric {
        let f = cx.facets().iter().find(|f| f.isolated).context("no isolated facet to mirror along")?;
        let w = mirror(&cx, f.id)?;
        let _ = writeln!(text, "mirrored along facet {}", f.id);
        (w.complex.clone(), Some(w))
    } else {
        (cx, None)
    };
    let g = FacetGraph::of_complex(&target)?;
    let _ = writeln!(text, "graph {} vertices {} edges", g.vertex_count(), g.edge_count());
    let mut json = json!({"vertices": g.vertex_count(), "edges": g.edge_count(), "colours": k});
    let found = match find_colouring(&g, k, budget) {
        SearchOutcome::Found(c) => c,
        SearchOutcome::None => {
            json["outcome"] = json!("none");
            return Ok(Report { text, json, failure: Some(format!("no {k}-colouring exists")) });
        }
        SearchOutcome::Unknown => {
            json["outcome"] = json!("unknown");
            return Ok(Report { text, json, failure: Some(format!("budget ran out before a {k}-colouring was found")) });
        }
    };
    let colouring = match &mirrored {
        Some(w) => {
            let side: Vec<usize> = (0..g.vertex_count() as u32).map(|f| w.side_of_facet(f)).collect();
            symmetrize(&found, &g, &w.involution, &side)?
        }
        None => found,
    };
    let _ = writeln!(text, "found {} colours", colouring.colour_count());
    json["outcome"] = json!("found");
    json["used"] = json!(colouring.colour_count());
    json["colouring"] = json!(colouring.colours);
    let file = write_colouring_file(&ColouringFile::Plain(colouring));
    if let Some(p) = ctx.write("colouring.txt", &file)? {
        json["file"] = json!(p);
    }
    if let Some(w) = &mirrored {
        if let Some(p) = ctx.write("mirrored.tess", &write_tessellation(&Tessellation::of_complex(&w.complex).context("mirrored complex")?))? {
            json["mirrored"] = json!(p);
        }
    }
    if ctx.out.is_none() {
        text.push_str(&file);
    }
    Ok(Report::ok(text, json))
}

fn cmd_orbit(ctx: &Ctx, tess: &Path, col: &Path) -> Result<Report> {
    let (_, cx) = load_complex(tess)?;
    let rho = match parse_colouring_file(&read(col)?).map_err(|e| bad_input(col, e))? {
        ColouringFile::Plain(c) => lift(&c)?,
        ColouringFile::Vector(v) => v,
    };
    let q = build_quotient(&cx, &rho)?;
    let orientable = is_orientable(&rho);
    let mut text = String::new();
    let _ = writeln!(text, "colours {}", q.k());
    let _ = writeln!(text, "cells {}", join(&q.cell_counts()));
    let _ = writeln!(text, "euler {}", q.euler_characteristic());
    let _ = writeln!(text, "orientable {orientable}");
    let mut json = json!({"colours": q.k(), "cells": q.cell_counts(), "euler": q.euler_characteristic(), "orientable": orientable});
    let dump = write_dump(&q);
    if let Some(p) = ctx.write("quotient.dump", &dump)? {
        json["dump"] = json!(p);
    }
    if ctx.out.is_some() {
        let closed = orbit_complex(&cx, &rho)?;
        if let Some(t) = Tessellation::of_complex(&closed) {
            if let Some(p) = ctx.write("closed.tess", &write_tessellation(&t))? {
                json["closed"] = json!(p);
            }
        }
    }
    Ok(Report::ok(text, json))
}

fn cmd_homology(path: &Path, field: FieldArg, fast: bool) -> Result<Report> {
    let cx = parse_dump(&read(path)?).map_err(|e| bad_input(path, e))?;
    // the dump does not record orientability; the shortcut assumes it
    let r = homology_report(&cx, &field.fields(), fast, fast)?;
    let betti: serde_json::Map<String, Value> = r.betti.iter().map(|b| (b.field.to_string(), json!(b.values))).collect();
    let ranks: serde_json::Map<String, Value> = r.ranks.iter().map(|(f, v)| (f.to_string(), json!(v))).collect();
    let json = json!({
        "cells": r.cells,
        "euler": r.euler,
        "ranks": ranks,
        "betti": betti,
        "fast_rational": r.fast_rational.as_ref().map(|b| b.values.clone()),
        "millis": r.millis,
    });
    Ok(Report::ok(r.to_text(), json))
}

fn cmd_certify(path: &Path, census: Option<&Path>) -> Result<Report> {
    let c = parse_certificate(&read(path)?).map_err(|e| bad_input(path, e))?;
    let table = match census {
        Some(p) => parse_census(&read(p)?).map_err(|e| bad_input(p, e))?,
        None => Default::default(),
    };
    let v = verify_certificate(&c, &table)?;
    let nodes: Vec<Value> = v
        .qhs
        .iter()
        .map(|n| json!({"label": n.label, "verdict": n.verdict.to_string(), "reason": n.reason.to_string()}))
        .collect();
    let json = json!({"root": v.root().verdict.to_string(), "nodes": nodes});
    let root = v.root();
    let failure = (root.verdict != Verdict::Verified).then(|| format!("root not verified: {}", root.reason));
    Ok(Report { text: v.to_text(), json, failure })
}

fn cmd_parse_log(ctx: &Ctx, path: &Path, census: Option<&Path>) -> Result<Report> {
    let s = parse_log(&read(path)?).map_err(|e| bad_input(path, e))?;
    s.check()?;
    let mut text = String::new();
    let _ = writeln!(text, "nodes {}", s.len());
    let leaves: Vec<Value> = s
        .census_leaves()
        .iter()
        .map(|(label, id)| {
            let _ = writeln!(text, "leaf M{label} {} value {}", id.name, id.value);
            json!({"label": format!("M{label}"), "name": id.name, "value": id.value})
        })
        .collect();
    let doubles: Vec<&str> = s.nodes.iter().filter(|n| n.double).map(|n| n.label.as_str()).collect();
    for d in &doubles {
        let _ = writeln!(text, "double interval {d}");
    }
    let mut json = json!({"nodes": s.len(), "leaves": leaves, "double": doubles, "result": s.result});
    let mut failure = None;
    if let Some(p) = census {
        let table = parse_census(&read(p)?).map_err(|e| bad_input(p, e))?;
        let bad = s.census_mismatches(&table);
        json["mismatches"] = json!(bad);
        if !bad.is_empty() {
            failure = Some(format!("transcript disagrees with the census on {}", bad.join(", ")));
        }
    }
    match s.to_certificate() {
        Ok(c) => {
            if ctx.write("skeleton.cert", &c.to_text())?.is_none() {
                text.push_str(&c.to_text());
            }
        }
        Err(e) => {
            let _ = writeln!(text, "no certificate skeleton: {e}");
        }
    }
    Ok(Report { text, json, failure })
}

fn run(cli: Cli) -> Result<Report> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("configuring threads")?;
    }
    let ctx = Ctx { out: cli.out };
    match cli.cmd {
        Cmd::Catalog { name } => cmd_catalog(name),
        Cmd::Build { tessellation } => cmd_build(&tessellation),
        Cmd::Thicken { tessellation } => cmd_thicken(&ctx, &tessellation),
        Cmd::Colour { tessellation, colours, symmetric, budget_ms } => {
            if colours == 0 {
                bail!(InputError("--colours must be at least 1".into()));
            }
            cmd_colour(&ctx, &tessellation, colours, symmetric, budget_ms)
        }
        Cmd::Orbit { tessellation, colouring } => cmd_orbit(&ctx, &tessellation, &colouring),
        Cmd::Homology { dump, field, fast } => cmd_homology(&dump, field, fast),
        Cmd::Certify { certificate, census } => cmd_certify(&certificate, census.as_deref()),
        Cmd::ParseLog { log, census } => cmd_parse_log(&ctx, &log, census.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    match run(cli) {
        Ok(r) => {
            if json {
                let mut v = r.json;
                if let Some(f) = &r.failure {
                    v["error"] = json!(f);
                }
                println!("{}", serde_json::to_string_pretty(&v).expect("report serialises"));
            } else {
                print!("{}", r.text);
            }
            match r.failure {
                Some(f) => {
                    eprintln!("error: {f}");
                    ExitCode::from(1)
                }
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(if e.is::<InputError>() { 2 } else { 1 })
        }
    }
}
