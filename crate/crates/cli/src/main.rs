use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use incomp_core::corpus::{self, Variant};
use incomp_core::oracle::check_surface;
use incomp_core::standard::{movable_saddles, standard_properties};
use incomp_core::{
    complexity, decide_with, enumerate_polygons, parse, reduce_to_standard, svg, validate,
    verify_certificate, write_json, write_text, DecideOptions, RetractGraph, SurfaceComplex,
    Verdict, Witness,
};

#[derive(Parser)]
#[command(name = "incomp", version, about = "Compressibility of surfaces in handlebodies")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a document and print its census.
    Validate(Common),
    /// Reduce to standard position and print the move log.
    Reduce(Common),
    /// Print the retract graph.
    Graph(Common),
    /// Enumerate complement polygons.
    Polygons(Common),
    /// Decide compressibility.
    Decide(Common),
    /// Run the free-group check.
    Oracle(Common),
    /// Emit an SVG diagram.
    Render(Common),
    /// Emit a generated document.
    Gen(Common),
    /// Full pipeline with a machine-readable verdict; with `--max-n`, one
    /// report per family member.
    Report(Common),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone)]
struct Common {
    /// Surface document (text or JSON); `-` reads stdin.
    #[arg(long, short)]
    input: Option<PathBuf>,
    /// Generator family: saddle-pair, tripod or collar.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// original, rerouted, doubled, raw or mutated.
    #[arg(long, default_value = "original")]
    variant: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Run the family for n = 1..=max-n.
    #[arg(long)]
    max_n: Option<usize>,
    /// Node budget of the disk search.
    #[arg(long)]
    budget: Option<u64>,
}

impl Common {
    fn load(&self) -> Result<SurfaceComplex> {
        self.load_n(self.n)
    }

    fn load_n(&self, n: usize) -> Result<SurfaceComplex> {
        match (&self.input, &self.family) {
            (Some(_), Some(_)) => bail!("give either --input or --family, not both"),
            (Some(p), None) => {
                let text = if p.as_os_str() == "-" {
                    let mut s = String::new();
                    io::stdin().read_to_string(&mut s)?;
                    s
                } else {
                    fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
                };
                Ok(parse(&text)?)
            }
            (None, Some(f)) => Ok(corpus::generate(f, n, Variant::parse(&self.variant)?)?),
            (None, None) => bail!("missing --input or --family"),
        }
    }

    fn options(&self) -> DecideOptions {
        let mut o = DecideOptions::default();
        if let Some(b) = self.budget {
            o.node_budget = b;
        }
        o
    }

    fn emit(&self, text: &str) -> Result<()> {
        match &self.out {
            Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn pretty(v: &serde_json::Value) -> String {
    serde_json::to_string_pretty(v).expect("json value serializes") + "\n"
}

fn cmd_validate(c: &Common) -> Result<String> {
    let s = c.load()?;
    let r = validate(&s);
    let census = s.census();
    if c.format == Format::Json {
        return Ok(pretty(&json!({ "valid": r.is_valid(), "report": r, "census": census })));
    }
    let mut out = String::new();
    writeln!(out, "valid: {}", r.is_valid())?;
    for v in &r.violations {
        writeln!(out, "  {v:?}")?;
    }
    writeln!(out, "pieces: {}  disk arcs: {}  level arcs: {}", census.pieces, census.disk_arcs, census.level_arcs)?;
    writeln!(out, "euler: {}  components: {}  orientable: {}", census.euler, census.components, census.orientable)?;
    writeln!(out, "trivial: {}  critical: {:?}  bigon bound: {}", census.trivial, census.critical, census.bigon_bound())?;
    Ok(out)
}

fn cmd_reduce(c: &Common) -> Result<String> {
    let s = c.load()?;
    let red = reduce_to_standard(&s);
    let props = standard_properties(&red.surface);
    if c.format == Format::Json {
        return Ok(pretty(&json!({
            "before": complexity(&s),
            "after": complexity(&red.surface),
            "moves": red.log,
            "properties": props,
            "surface": serde_json::from_str::<serde_json::Value>(&write_json(&red.surface))?,
        })));
    }
    let mut out = String::new();
    writeln!(out, "# complexity {} -> {}", complexity(&s), complexity(&red.surface))?;
    for m in &red.log {
        writeln!(out, "# {:?} piece {} arcs {} {}: {} -> {}", m.kind, m.saddle, m.arcs.0, m.arcs.1, m.before, m.after)?;
    }
    for p in &props {
        writeln!(out, "# property {} {}: {}", p.property, p.name, if p.holds { "holds" } else { "fails" })?;
    }
    let left = movable_saddles(&red.surface);
    if !left.is_empty() {
        writeln!(out, "# movable saddles left: {}", left.len())?;
    }
    out.push_str(&write_text(&red.surface));
    Ok(out)
}

fn cmd_graph(c: &Common) -> Result<String> {
    let s = c.load()?;
    let g = RetractGraph::build(&s);
    let cycle = g.trivial_cycle();
    if c.format == Format::Json {
        return Ok(pretty(&json!({
            "graph": g,
            "betti": g.betti(),
            "cut_components": g.cut_components(),
            "trivial": cycle.is_some(),
            "cycle": cycle,
        })));
    }
    let mut out = String::new();
    writeln!(out, "# betti {}  trivial {}", g.betti(), cycle.is_some())?;
    if let Some(w) = &cycle {
        writeln!(out, "# cycle in ball {}: pieces {:?} arcs {:?}", w.ball, w.pieces, w.arcs)?;
    }
    out.push_str(&g.edge_list(&s));
    Ok(out)
}

fn cmd_polygons(c: &Common) -> Result<String> {
    let s = c.load()?;
    let census = enumerate_polygons(&s)?;
    let balls = s.handlebody.balls.len();
    let bigons: Vec<usize> = (0..balls).map(|b| census.bigons_in_ball(b)).collect();
    let bound = s.census().bigon_bound();
    if c.format == Format::Json {
        return Ok(pretty(&json!({ "census": census, "bigons_per_ball": bigons, "bigon_bound": bound })));
    }
    let mut out = String::new();
    writeln!(out, "polygons: {}  truncated: {}", census.polygons.len(), census.truncated)?;
    for (m, ids) in census.by_size() {
        writeln!(out, "  {}-gons: {}", 2 * m, ids.len())?;
    }
    for (b, n) in bigons.iter().enumerate() {
        writeln!(out, "bigons in P{b}: {n}")?;
    }
    writeln!(out, "bigon bound: {bound}  conflicts: {}", census.conflicts.len())?;
    for p in census.polygons.iter().filter(|p| p.is_bigon()) {
        let d: Vec<String> = p.d_edges.iter().map(|e| format!("D{}{:?}({},{})", e.slot.disk, e.slot.side, e.chords.0, e.chords.1)).collect();
        writeln!(out, "  bigon {} in P{} region {}: {}{}", p.id, p.ball, p.region, d.join(" "), if p.saddle { " saddle" } else { "" })?;
    }
    Ok(out)
}

fn verdict_json(s: &SurfaceComplex, c: &Common) -> serde_json::Value {
    let r = decide_with(s, c.options());
    let cert_ok = match &r.verdict {
        Verdict::Compressible { witness: Witness::Disk(cert) } => {
            let reduced = reduce_to_standard(s).surface;
            Some(verify_certificate(cert, &reduced).is_ok())
        }
        _ => None,
    };
    json!({
        "verdict": r.verdict.name(),
        "report": r,
        "certificate_verified": cert_ok,
    })
}

fn cmd_decide(c: &Common) -> Result<String> {
    let s = c.load()?;
    let r = decide_with(&s, c.options());
    if c.format == Format::Json {
        return Ok(pretty(&verdict_json(&s, c)));
    }
    let mut out = String::new();
    writeln!(out, "verdict: {}", r.verdict.name())?;
    writeln!(out, "complexity: {} -> {}", r.complexity_before, r.complexity_after)?;
    writeln!(out, "moves: {}", r.moves.len())?;
    writeln!(out, "bigons: {}  polygons: {}  bigon bound: {}", r.bigons, r.polygons, r.bigon_bound)?;
    match &r.verdict {
        Verdict::Indeterminate { reason } => writeln!(out, "reason: {reason}")?,
        Verdict::Compressible { witness: Witness::Cycle(w) } => {
            writeln!(out, "witness: retract cycle in P{} through pieces {:?}", w.ball, w.pieces)?
        }
        Verdict::Compressible { witness: Witness::Disk(cert) } => {
            let sizes: Vec<usize> = cert.polygons.iter().map(|p| 2 * p.m()).collect();
            writeln!(out, "witness: disk of {} polygons, sizes {:?}", sizes.len(), sizes)?;
            let reduced = reduce_to_standard(&s).surface;
            writeln!(out, "certificate verified: {}", verify_certificate(cert, &reduced).is_ok())?;
        }
        Verdict::Incompressible => {}
    }
    if let Some(st) = &r.search {
        writeln!(out, "search: {} nodes, {} trees tried", st.nodes, st.completed_trees + st.rejected_trees)?;
    }
    Ok(out)
}

fn cmd_oracle(c: &Common) -> Result<String> {
    let s = c.load()?;
    let o = check_surface(&s)?;
    if c.format == Format::Json {
        return Ok(pretty(&json!(o)));
    }
    let mut out = String::new();
    writeln!(out, "injective: {}  rank: {}  expected: {}", o.injective, o.rank, o.expected_rank)?;
    for w in &o.words {
        writeln!(out, "  {w}")?;
    }
    Ok(out)
}

fn cmd_render(c: &Common) -> Result<String> {
    Ok(svg::render(&c.load()?))
}

fn cmd_gen(c: &Common) -> Result<String> {
    if c.family.is_none() {
        bail!("gen needs --family");
    }
    let s = c.load()?;
    Ok(match c.format {
        Format::Text => write_text(&s),
        Format::Json => write_json(&s) + "\n",
    })
}

fn report_one(s: &SurfaceComplex, c: &Common) -> serde_json::Value {
    let mut v = verdict_json(s, c);
    v["oracle"] = match check_surface(s) {
        Ok(o) => json!(o),
        Err(e) => json!({ "error": e.to_string() }),
    };
    let inj = v["oracle"]["injective"].as_bool();
    let verdict = v["verdict"].as_str().unwrap_or_default();
    v["agrees"] = match (verdict, inj) {
        ("incompressible", Some(i)) => json!(i),
        ("compressible", Some(i)) => json!(!i),
        _ => serde_json::Value::Null,
    };
    v
}

fn cmd_report(c: &Common) -> Result<String> {
    let Some(max) = c.max_n else {
        let s = c.load()?;
        return Ok(pretty(&report_one(&s, c)));
    };
    if c.family.is_none() {
        bail!("--max-n needs --family");
    }
    let surfaces: Vec<(usize, SurfaceComplex)> =
        (1..=max).map(|n| c.load_n(n).map(|s| (n, s))).collect::<Result<_>>()?;
    let reports: Vec<serde_json::Value> = std::thread::scope(|scope| {
        let handles: Vec<_> = surfaces
            .iter()
            .map(|(n, s)| {
                scope.spawn(move || {
                    let mut v = report_one(s, c);
                    v["n"] = json!(n);
                    v
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("report thread")).collect()
    });
    let mut out = String::new();
    for r in reports {
        match c.format {
            Format::Json => out.push_str(&(serde_json::to_string(&r)? + "\n")),
            Format::Text => writeln!(
                out,
                "n={} verdict={} injective={} agrees={}",
                r["n"], r["verdict"].as_str().unwrap_or("?"), r["oracle"]["injective"], r["agrees"]
            )?,
        }
    }
    Ok(out)
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let (c, text) = match &cli.command {
        Command::Validate(c) => (c, cmd_validate(c)?),
        Command::Reduce(c) => (c, cmd_reduce(c)?),
        Command::Graph(c) => (c, cmd_graph(c)?),
        Command::Polygons(c) => (c, cmd_polygons(c)?),
        Command::Decide(c) => (c, cmd_decide(c)?),
        Command::Oracle(c) => (c, cmd_oracle(c)?),
        Command::Render(c) => (c, cmd_render(c)?),
        Command::Gen(c) => (c, cmd_gen(c)?),
        Command::Report(c) => (c, cmd_report(c)?),
    };
    c.emit(&text)
}
