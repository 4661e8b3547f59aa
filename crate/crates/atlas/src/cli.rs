//! Command-line front end. `run` returns the process exit status:
//! 0 on success, 1 on data errors, 2 on usage errors.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, SpaceEntry, TgTable};
use crate::chevalley::Scalars;
use crate::classify::{self, ActionCatalog};
use crate::error::{Error, Result};
use crate::hasse;
use crate::linalg::fmt_q;
use crate::nilcon;
use crate::rootsys::{Family, Root, RootSystem, RootSystemType};
use crate::shapeops::{fmt_poly, OrbitSubalgebra, SolvableModel};
use crate::verify;

pub const CATALOG_ENV: &str = "C1_ATLAS_CATALOG";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Diagram {
    Text,
    Dot,
}

#[derive(Debug, Parser)]
#[command(name = "c1-atlas", version, about = "Root systems, eliminations, shape operators and action catalogs")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Catalog JSON replacing the built-in one.
    #[arg(long, global = true, env = CATALOG_ENV)]
    pub catalog: Option<PathBuf>,
    /// Table of totally geodesic singular-orbit actions.
    #[arg(long, global = true)]
    pub tg_table: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct TypeArgs {
    /// Root system, e.g. `F4`, `BC3`, or a family with `--rank`.
    #[arg(long = "type")]
    pub rtype: String,
    #[arg(long)]
    pub rank: Option<usize>,
}

impl TypeArgs {
    fn system(&self) -> Result<RootSystem> {
        Ok(RootSystem::new(RootSystemType::parse(&self.rtype, self.rank)?))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Positive roots in order of height.
    Roots(TypeArgs),
    /// Level `ν` of the grading defined by `α_j`.
    Grading {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        j: usize,
        #[arg(long, default_value_t = 1)]
        level: u32,
        /// Render the Hasse diagram of `Δ_j^1` instead of listing roots.
        #[arg(long, value_enum)]
        hasse: Option<Diagram>,
    },
    /// The `β`-string through `λ` (coefficient vectors such as `1,1,1,0`).
    Strings {
        #[command(flatten)]
        ty: TypeArgs,
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        beta: String,
    },
    /// Nilpotent-construction verdict for one `(space, j)` or the whole catalog.
    Analyze {
        #[arg(long, conflicts_with = "all", requires = "j")]
        space: Option<String>,
        #[arg(long)]
        j: Option<usize>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value_t = 2)]
        min_rank: usize,
    },
    /// Shape operators of the orbit of `h_{j,w}` in a split or complexified model.
    Shape {
        #[arg(long)]
        space: String,
        #[arg(long)]
        j: usize,
        /// `zero`, or level-one roots separated by `;`.
        #[arg(long, default_value = "zero")]
        w: String,
    },
    /// Cohomogeneity-one action families; repeat `--space` for products.
    Classify {
        #[arg(long, required = true)]
        space: Vec<String>,
    },
    /// List catalog entries.
    Catalog {
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 0)]
        min_rank: usize,
    },
    /// Run the invariant suite of every module.
    Verify,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeOperatorReport {
    pub xi: String,
    /// Rows of the matrix of `A_ξ` in the basis `h`.
    pub matrix: Vec<Vec<String>>,
    pub charpoly: String,
    pub self_adjoint: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeReport {
    pub model: String,
    pub j: usize,
    pub w: Vec<Root>,
    pub h: Vec<String>,
    pub operators: Vec<ShapeOperatorReport>,
    pub totally_geodesic: bool,
}

fn parse_root(s: &str) -> Result<Root> {
    let v = s
        .trim()
        .trim_matches(|c| c == '[' || c == ']')
        .split(',')
        .map(|x| x.trim().parse::<i32>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::ParseError(format!("root {s:?}: {e}")))?;
    Ok(Root::new(v))
}

fn check_rank(sys: &RootSystem, x: &Root) -> Result<()> {
    if x.rank() != sys.rank() {
        return Err(Error::ParseError(format!("{x:?} has {} coefficients, expected {}", x.rank(), sys.rank())));
    }
    Ok(())
}

fn model_for(space: &str, catalog: &Catalog) -> Result<SolvableModel> {
    if let Ok(m) = SolvableModel::named(space) {
        return Ok(m);
    }
    let e = catalog.get(space)?;
    let scalars = if e.split {
        Scalars::Rational
    } else if e.complexified {
        Scalars::GaussianRational
    } else {
        return Err(Error::InvalidInput(format!(
            "{} has no split or complexified matrix model",
            e.name
        )));
    };
    SolvableModel::build(e.rtype, scalars)
}

pub fn shape_report(model_name: &str, model: &SolvableModel, j: usize, w: &str) -> Result<ShapeReport> {
    let sys = model.root_system();
    let w: BTreeSet<Root> = if w.trim().eq_ignore_ascii_case("zero") || w.trim() == "0" {
        BTreeSet::new()
    } else {
        w.split(';').map(parse_root).collect::<Result<_>>()?
    };
    for x in &w {
        check_rank(sys, x)?;
    }
    let orbit = OrbitSubalgebra::new(model, j, &w)?;
    let g = model.algebra();
    let mut operators = Vec::new();
    let mut tg = true;
    for xi in &orbit.v_basis {
        let a = orbit.shape_operator(xi)?;
        tg &= a.is_zero();
        operators.push(ShapeOperatorReport {
            xi: g.display(xi),
            matrix: a.matrix.iter().map(|r| r.iter().map(fmt_q).collect()).collect(),
            charpoly: fmt_poly(&crate::linalg::charpoly(&a.matrix)),
            self_adjoint: orbit.is_self_adjoint(&a),
        });
    }
    Ok(ShapeReport {
        model: model_name.to_string(),
        j,
        w: w.into_iter().collect(),
        h: orbit.h_labels(),
        operators,
        totally_geodesic: tg,
    })
}

fn render_shape_text(r: &ShapeReport) -> String {
    let w = if r.w.is_empty() {
        "0".to_string()
    } else {
        r.w.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    };
    let mut out = format!("model {}, j = {}, w = {w}\nh basis: {}\n", r.model, r.j, r.h.join(", "));
    for op in &r.operators {
        out.push_str(&format!("\nA_ξ for ξ = {}  (charpoly {})\n", op.xi, op.charpoly));
        let width = op.matrix.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
        for row in &op.matrix {
            let cells: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            out.push_str(&format!("  [{}]\n", cells.join(" ")));
        }
    }
    out.push_str(&format!(
        "\nverdict: {}\n",
        if r.totally_geodesic { "totally geodesic" } else { "not totally geodesic" }
    ));
    out
}

fn render_roots(roots: &[Root]) -> String {
    roots
        .iter()
        .map(|x| format!("{:?}  {x}\n", x.coeffs()))
        .collect()
}

fn render_catalog(entries: &[&SpaceEntry]) -> String {
    let w = entries.iter().map(|e| e.name.chars().count()).max().unwrap_or(4);
    let mut out = String::new();
    for e in entries {
        let mults = e.mult.iter().map(|(k, m)| format!("{k}:{m}")).collect::<Vec<_>>().join(" ");
        let pad = w - e.name.chars().count();
        out.push_str(&format!("{}{}  {:<4}  dim {:>3}  {mults}\n", e.name, " ".repeat(pad), e.rtype, e.dim));
    }
    out
}

fn json<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable") + "\n"
}

enum Failure {
    Data(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Data(e)
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> std::result::Result<i32, Failure> {
    let catalog = match &cli.catalog {
        Some(p) => Catalog::from_path(p)?,
        None => Catalog::builtin(),
    };
    let tg = cli.tg_table.as_deref().map(TgTable::from_path).transpose()?;
    let fmt = cli.format;
    let text = match &cli.command {
        Command::Roots(ty) => {
            let sys = ty.system()?;
            match fmt {
                Format::Json => json(&sys.positives()),
                Format::Text => format!(
                    "{}: {} positive roots\n{}",
                    sys.rtype(),
                    sys.positives().len(),
                    render_roots(sys.positives())
                ),
            }
        }
        Command::Grading { ty, j, level, hasse } => {
            let sys = ty.system()?;
            if *j == 0 || *j > sys.rank() {
                return Err(Error::BadIndex(*j).into());
            }
            if let Some(d) = hasse {
                if *level != 1 {
                    return Err(Failure::Usage("--hasse draws level 1 only".into()));
                }
                let h = hasse::hasse(&sys, *j)?;
                match (fmt, d) {
                    (Format::Json, _) => json(&h),
                    (_, Diagram::Text) => h.render_text(),
                    (_, Diagram::Dot) => h.render_dot(),
                }
            } else {
                let g = sys.grading(&sys.complement(*j));
                let roots = g.level(*level);
                match fmt {
                    Format::Json => json(&roots),
                    Format::Text => format!(
                        "Δ_{j}^{level} of {}: {} roots\n{}",
                        sys.rtype(),
                        roots.len(),
                        render_roots(roots)
                    ),
                }
            }
        }
        Command::Strings { ty, lambda, beta } => {
            let sys = ty.system()?;
            let (l, b) = (parse_root(lambda)?, parse_root(beta)?);
            check_rank(&sys, &l)?;
            check_rank(&sys, &b)?;
            let s = sys.root_string(&l, &b)?;
            match fmt {
                Format::Json => json(&s),
                Format::Text => render_roots(&s),
            }
        }
        Command::Analyze {
            space,
            j,
            all,
            min_rank,
        } => {
            if *all {
                let v = nilcon::analyze_all(&catalog, *min_rank)?;
                match fmt {
                    Format::Json => json(&v),
                    Format::Text => nilcon::render_table(&v),
                }
            } else {
                let (Some(space), Some(j)) = (space, j) else {
                    return Err(Failure::Usage("analyze needs --space and --j, or --all".into()));
                };
                let v = nilcon::analyze(catalog.get(space)?, *j)?;
                match fmt {
                    Format::Json => json(&v),
                    Format::Text => format!(
                        "{} j = {}: {}\nwitness: {}\nnote: {}\n",
                        v.space, v.j, v.status, v.witness, v.note
                    ),
                }
            }
        }
        Command::Shape { space, j, w } => {
            let model = model_for(space, &catalog)?;
            let r = shape_report(space, &model, *j, w)?;
            match fmt {
                Format::Json => json(&r),
                Format::Text => render_shape_text(&r),
            }
        }
        Command::Classify { space } => {
            let names: Vec<&str> = space.iter().map(String::as_str).collect();
            let c: ActionCatalog = classify::classify_names(&catalog, &names, tg.as_ref())?;
            match fmt {
                Format::Json => json(&c),
                Format::Text => c.render_text(),
            }
        }
        Command::Catalog { family, min_rank } => {
            let fam: Option<Family> = family.as_deref().map(str::parse).transpose()?;
            let entries = catalog.list_spaces(|e| e.rank() >= *min_rank && fam.is_none_or(|f| e.rtype.family == f));
            match fmt {
                Format::Json => json(&entries),
                Format::Text => render_catalog(&entries),
            }
        }
        Command::Verify => {
            let results = verify::run_all(&catalog);
            let ok = results.iter().all(|r| r.passed);
            let s = match fmt {
                Format::Json => json(&results),
                Format::Text => verify::render_text(&results),
            };
            let _ = out.write_all(s.as_bytes());
            return Ok(if ok { 0 } else { 1 });
        }
    };
    let _ = out.write_all(text.as_bytes());
    Ok(0)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = out.write_all(rendered.as_bytes());
            } else {
                let _ = err.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Data(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "usage error: {msg}");
            2
        }
    }
}
