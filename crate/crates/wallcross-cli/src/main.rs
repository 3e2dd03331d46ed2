//! Command-line front end for the wall-and-chamber engine.
//!
//! Every numeric argument is exact: Chern classes as `r,c,chi` integer
//! triples, rationals as `p/q` strings. JSON output is a single top-level
//! object carrying a `schema_version` field and validating against
//! `schema/wallcross-output.schema.json`; rationals stay strings there, never
//! floats. Exit codes: 0 success, 2 argument validation, 3 file write.

use clap::{Args, Parser, Subcommand};
use num_rational::Rational64;
use serde_json::json;
use std::process::ExitCode;
use wallcross::lattice::ChernVector;
use wallcross::rat::{format_rational, parse_rational};
use wallcross::render::{render_walls_svg, Decorations, RenderWindow};
use wallcross::surgery::{moduli_chain, n3_iso_apply, n3_matrix, FlopRecord, TorusPoint};
use wallcross::walls::{
    actual_walls, enumerate_pseudo_walls, series_coefficients, threshold_u, wall_count,
    wall_intersects_strip, Region, Wall,
};

type Rat = Rational64;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "wallcross",
    version,
    about = "Exact wall-and-chamber computations for ideal-sheaf twists on a principally polarized abelian surface"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Curated walls for the class (1, 2, 4-n)
    Walls(WallsArgs),
    /// Exhaustive pseudo-wall search for an arbitrary class
    PseudoWalls(PseudoArgs),
    /// Chamber decomposition of the ray s = 0
    Chambers(NArgs),
    /// Per-wall surgery records (destabilizer pairs, dimensions, codimensions)
    Flops(NArgs),
    /// Fourier-Mukai transform of a class
    Transform(TransformArgs),
    /// Euler pairing of two classes
    Pair(PairArgs),
    /// Wall counts against the generating-series coefficients
    Series(SeriesArgs),
    /// Squared stability threshold for a maximal collinear subscheme
    Threshold(ThresholdArgs),
    /// Render a wall-and-chamber diagram to SVG
    Diagram(DiagramArgs),
    /// The length-3 wall-crossing isomorphism on torus points
    N3Map(N3MapArgs),
}

#[derive(Args)]
struct WallsArgs {
    /// Length of the 0-scheme
    #[arg(short, long)]
    n: Option<u32>,
    /// Class r,c,chi; must be of the form 1,2,chi
    #[arg(long, value_parser = parse_chern_arg, allow_hyphen_values = true)]
    chern: Option<ChernVector>,
    /// Report only the crossing heights u on s = 0
    #[arg(long)]
    at_s0: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PseudoArgs {
    /// Class r,c,chi
    #[arg(long, value_parser = parse_chern_arg, allow_hyphen_values = true)]
    chern: ChernVector,
    /// Search window smin:smax[:umax], rational endpoints
    #[arg(long, value_parser = parse_region_arg, allow_hyphen_values = true)]
    region: Region,
    /// Largest destabilizer rank searched
    #[arg(long, default_value_t = 4)]
    rank_bound: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct NArgs {
    #[arg(short, long)]
    n: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TransformArgs {
    #[arg(long, value_parser = parse_chern_arg, allow_hyphen_values = true)]
    chern: ChernVector,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct PairArgs {
    #[arg(long, value_parser = parse_chern_arg, allow_hyphen_values = true)]
    left: ChernVector,
    #[arg(long, value_parser = parse_chern_arg, allow_hyphen_values = true)]
    right: ChernVector,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SeriesArgs {
    /// Largest length reported
    #[arg(long)]
    max: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(short, long)]
    n: u32,
    /// Length of the maximal collinear subscheme
    #[arg(short, long)]
    k: u32,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct DiagramArgs {
    /// Length of the 0-scheme (curated walls)
    #[arg(short, long, conflicts_with = "chern")]
    n: Option<u32>,
    /// Class r,c,chi for a pseudo-wall diagram (implies --pseudo)
    #[arg(long, value_parser = parse_chern_arg, requires = "pseudo", allow_hyphen_values = true)]
    chern: Option<ChernVector>,
    /// Use the pseudo-wall search instead of the curated list
    #[arg(long)]
    pseudo: bool,
    /// Drawing window smin:smax:tmax
    #[arg(long, value_parser = parse_window_arg, allow_hyphen_values = true)]
    window: (Rat, Rat, Rat),
    /// Output path; omit to write the SVG to stdout
    #[arg(short, long)]
    out: Option<std::path::PathBuf>,
    /// Search window for --pseudo, smin:smax[:umax]; defaults to the drawing window
    #[arg(long, value_parser = parse_region_arg, allow_hyphen_values = true)]
    region: Option<Region>,
    #[arg(long, default_value_t = 4)]
    rank_bound: u32,
    /// Vertical guide line at this s (repeatable)
    #[arg(long, value_parser = parse_rational_arg, allow_hyphen_values = true)]
    guide: Vec<Rat>,
    /// Pixels per unit length
    #[arg(long, default_value_t = 200)]
    ppu: u32,
    #[arg(long)]
    no_axes: bool,
    #[arg(long)]
    no_ticks: bool,
    /// Print a JSON summary to stdout (requires --out)
    #[arg(long, requires = "out")]
    json: bool,
}

#[derive(Args)]
struct N3MapArgs {
    /// Print the matrix and determinant only
    #[arg(long)]
    matrix: bool,
    /// First point of the length-3 subscheme, four rationals a,b,c,d
    #[arg(long, value_parser = parse_point_arg, allow_hyphen_values = true)]
    p: Option<TorusPoint>,
    /// Second point
    #[arg(long, value_parser = parse_point_arg, allow_hyphen_values = true)]
    q: Option<TorusPoint>,
    /// Third point
    #[arg(long, value_parser = parse_point_arg, allow_hyphen_values = true)]
    y: Option<TorusPoint>,
    /// Dual-torus twist
    #[arg(long, value_parser = parse_point_arg, allow_hyphen_values = true)]
    xhat: Option<TorusPoint>,
    #[arg(long)]
    json: bool,
}

// ---------------------------------------------------------------------------
// argument parsing
// ---------------------------------------------------------------------------

fn parse_chern_arg(text: &str) -> Result<ChernVector, String> {
    text.parse()
        .map_err(|_| format!("expected r,c,chi integers, got {text:?}"))
}

fn parse_rational_arg(text: &str) -> Result<Rat, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

fn parse_region_arg(text: &str) -> Result<Region, String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 2 && parts.len() != 3 {
        return Err(format!("expected smin:smax[:umax], got {text:?}"));
    }
    let s_min = parse_rational_arg(parts[0])?;
    let s_max = parse_rational_arg(parts[1])?;
    let u_max = parts.get(2).map(|p| parse_rational_arg(p)).transpose()?;
    Region::new(s_min, s_max, u_max).map_err(|e| e.to_string())
}

fn parse_window_arg(text: &str) -> Result<(Rat, Rat, Rat), String> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(format!("expected smin:smax:tmax, got {text:?}"));
    }
    Ok((
        parse_rational_arg(parts[0])?,
        parse_rational_arg(parts[1])?,
        parse_rational_arg(parts[2])?,
    ))
}

fn parse_point_arg(text: &str) -> Result<TorusPoint, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 4 {
        return Err(format!("expected four rationals a,b,c,d, got {text:?}"));
    }
    let mut coords = [Rat::from_integer(0); 4];
    for (slot, part) in coords.iter_mut().zip(&parts) {
        *slot = parse_rational_arg(part)?;
    }
    Ok(TorusPoint::new(coords))
}

// ---------------------------------------------------------------------------
// dispatch
// ---------------------------------------------------------------------------

enum CliError {
    /// Bad argument combination or value: exit 2, diagnostic names the flag.
    Validation { flag: &'static str, message: String },
    /// Could not write an output file: exit 3.
    Write { path: String, message: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Validation { flag, message }) => {
            eprintln!("error: {flag}: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Write { path, message }) => {
            eprintln!("error: cannot write {path}: {message}");
            ExitCode::from(3)
        }
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Walls(args) => run_walls(args),
        Command::PseudoWalls(args) => run_pseudo_walls(args),
        Command::Chambers(args) => run_chambers(args),
        Command::Flops(args) => run_flops(args),
        Command::Transform(args) => run_transform(args),
        Command::Pair(args) => run_pair(args),
        Command::Series(args) => run_series(args),
        Command::Threshold(args) => run_threshold(args),
        Command::Diagram(args) => run_diagram(args),
        Command::N3Map(args) => run_n3_map(args),
    }
}

/// Length parameter from `-n` or from a class of the shape `(1, 2, 4-n)`.
fn resolve_n(n: Option<u32>, chern: Option<ChernVector>) -> Result<u32, CliError> {
    match (n, chern) {
        (Some(n), None) => Ok(n),
        (None, Some(v)) => {
            if v.r == 1 && v.c == 2 && v.chi <= 4 {
                Ok((4 - v.chi) as u32)
            } else {
                Err(CliError::Validation {
                    flag: "--chern",
                    message: format!(
                        "{v} is not of the form (1,2,4-n); use pseudo-walls for general classes"
                    ),
                })
            }
        }
        (None, None) => Err(CliError::Validation {
            flag: "-n",
            message: "one of -n or --chern is required".into(),
        }),
        (Some(_), Some(_)) => Err(CliError::Validation {
            flag: "-n",
            message: "give either -n or --chern, not both".into(),
        }),
    }
}

fn wall_summary_line(index: usize, wall: &Wall) -> String {
    let shape = match wall.shape {
        wallcross::WallShape::Circle {
            center_s,
            radius_sq,
        } => format!(
            "circle center s = {}, radius^2 = {}",
            format_rational(&center_s),
            format_rational(&radius_sq)
        ),
        wallcross::WallShape::Vertical { s } => {
            format!("vertical line s = {}", format_rational(&s))
        }
    };
    let crossing = match wall.u_at_s0() {
        Some(u) => format!("u(0) = {}", format_rational(&u)),
        None => "no s = 0 crossing".to_owned(),
    };
    let witnesses: Vec<String> = wall.witnesses.iter().map(|w| w.to_string()).collect();
    format!(
        "  {index}. {shape}; {crossing}; witnesses {}",
        witnesses.join(" ")
    )
}

fn run_walls(args: WallsArgs) -> Result<(), CliError> {
    let n = resolve_n(args.n, args.chern)?;
    let walls = actual_walls(n);
    let u_values: Vec<String> = walls
        .iter()
        .filter_map(|w| w.u_at_s0())
        .map(|u| format_rational(&u))
        .collect();
    if args.json {
        let payload = if args.at_s0 {
            json!({
                "schema_version": SCHEMA_VERSION,
                "command": "walls",
                "n": n,
                "u_values": u_values,
            })
        } else {
            json!({
                "schema_version": SCHEMA_VERSION,
                "command": "walls",
                "n": n,
                "walls": walls,
            })
        };
        println!("{payload}");
    } else if args.at_s0 {
        println!("u = {}", u_values.join(", "));
    } else {
        println!(
            "class (1,2,{}), n = {n}: {} walls",
            4 - i64::from(n),
            walls.len()
        );
        for (i, wall) in walls.iter().enumerate() {
            println!("{}", wall_summary_line(i + 1, wall));
        }
    }
    Ok(())
}

fn run_pseudo_walls(args: PseudoArgs) -> Result<(), CliError> {
    let walls =
        enumerate_pseudo_walls(&args.chern, &args.region, args.rank_bound).map_err(|e| {
            CliError::Validation {
                flag: "--chern",
                message: e.to_string(),
            }
        })?;
    if args.json {
        let payload = json!({
            "schema_version": SCHEMA_VERSION,
            "command": "pseudo-walls",
            "chern": args.chern,
            "region": args.region,
            "rank_bound": args.rank_bound,
            "walls": walls,
        });
        println!("{payload}");
    } else {
        println!(
            "class {}, region {} <= s < {}, rank bound {}: {} pseudo-walls",
            args.chern,
            format_rational(&args.region.s_min),
            format_rational(&args.region.s_max),
            args.rank_bound,
            walls.len()
        );
        for (i, wall) in walls.iter().enumerate() {
            println!("{}", wall_summary_line(i + 1, wall));
        }
    }
    Ok(())
}

fn run_chambers(args: NArgs) -> Result<(), CliError> {
    let list = wallcross::walls::chambers(args.n);
    if args.json {
        let payload = json!({
            "schema_version": SCHEMA_VERSION,
            "command": "chambers",
            "n": args.n,
            "chambers": list,
        });
        println!("{payload}");
    } else {
        for chamber in &list {
            match chamber.u_hi {
                Some(hi) => println!(
                    "{}: {} < u < {}",
                    chamber.label,
                    format_rational(&chamber.u_lo),
                    format_rational(&hi)
                ),
                None => println!("{}: u > {}", chamber.label, format_rational(&chamber.u_lo)),
            }
        }
    }
    Ok(())
}

fn flop_table_row(index: usize, record: &FlopRecord) -> String {
    let crossing = record
        .wall
        .u_at_s0()
        .map(|u| format_rational(&u))
        .unwrap_or_else(|| "-".into());
    let flags = if record.flags.is_empty() {
        String::new()
    } else {
        format!("  [{}]", record.flags.join("; "))
    };
    format!(
        "  wall {index} (u = {crossing}): e1 = {}, e2 = {}, dim B1 = {}, dim B2 = {}, N = {}, dim P = {}, codim = {}{flags}",
        record.e1, record.e2, record.dim_b1, record.dim_b2, record.fiber_dim, record.dim_p,
        record.codim
    )
}

fn run_flops(args: NArgs) -> Result<(), CliError> {
    let chain = moduli_chain(args.n);
    if args.json {
        let payload = json!({
            "schema_version": SCHEMA_VERSION,
            "command": "flops",
            "n": args.n,
            "ambient_dim": chain.ambient_dim,
            "chambers": chain.chambers,
            "records": chain.records,
        });
        println!("{payload}");
    } else {
        println!(
            "n = {}: ambient dimension {}, {} chambers, {} walls",
            args.n,
            chain.ambient_dim,
            chain.chambers.len(),
            chain.records.len()
        );
        for (i, record) in chain.records.iter().enumerate() {
            println!("{}", flop_table_row(i, record));
        }
    }
    Ok(())
}

fn run_transform(args: TransformArgs) -> Result<(), CliError> {
    let image = args.chern.fm_transform();
    let fixed = image == args.chern;
    if args.json {
        let payload = json!({
            "schema_version": SCHEMA_VERSION,
            "command": "transform",
            "input": args.chern,
            "output": image,
            "fixed_point": fixed,
        });
        println!("{payload}");
    } else {
        let suffix = if fixed { " (fixed point of Φ)" } else { "" };
        println!("{},{},{}{suffix}", image.r, image.c, image.chi);
    }
    Ok(())
}

fn run_pair(args: PairArgs) -> Result<(), CliError> {
    let pairing = args.left.euler_pairing(&args.right);
    if args.json {
        let payload = json!({
            "schema_version": SCHEMA_VERSION,
            "command": "pair",
            "left": args.left,
            "right": args.right,
            "pairing": pairing,
        });
        println!("{payload}");
    } else {
        println!("chi({}, {}) = {pairing}", args.left, args.right);
    }
    Ok(())
}

fn run_series(args: SeriesArgs) -> Result<(), CliError> {
    let coeffs = series_coefficients(args.max);
    let rows: Vec<(u32, usize, i64, bool)> = (0..=args.max)
        .map(|n| {
            let count = wall_count(n);
            let coeff = coeffs[n as usize];
            (n, count, coeff, count as i64 == coeff)
        })
        .collect();
    if args.json {
        let json_rows: Vec<serde_json::Value> = rows
            .iter()
            .map(|(n, count, coeff, matches)| {
                json!({"n": n, "wall_count": count, "coefficient": coeff, "match": matches})
            })
            .collect();
        let payload = json!({
            "schema_version": SCHEMA_VERSION,
            "command": "series",
            "max": args.max,
            "rows": json_rows,
        });
        println!("{payload}");
    } else {
        println!("n: walls series match");
        for (n, count, coeff, matches) in rows {
            println!(
                "n={n}: {count} {coeff} {}",
                if matches { "yes" } else { "NO" }
            );
        }
    }
    Ok(())
}

fn run_threshold(args: ThresholdArgs) -> Result<(), CliError> {
    let u = threshold_u(args.n, args.k).map_err(|e| CliError::Validation {
        flag: "-k",
        message: e.to_string(),
    })?;
    if args.json {
        let payload = json!({
            "schema_version": SCHEMA_VERSION,
            "command": "threshold",
            "n": args.n,
            "k": args.k,
            "u": format_rational(&u),
        });
        println!("{payload}");
    } else {
        println!("{}", format_rational(&u));
    }
    Ok(())
}

fn run_diagram(args: DiagramArgs) -> Result<(), CliError> {
    let (s_min, s_max, t_max) = args.window;
    let walls: Vec<Wall> = if args.pseudo {
        let ambient = args.chern.ok_or(CliError::Validation {
            flag: "--chern",
            message: "--pseudo needs a class".into(),
        })?;
        let region = match args.region {
            Some(region) => region,
            None => Region::new(s_min, s_max, Some(t_max * t_max)).map_err(|e| {
                CliError::Validation {
                    flag: "--window",
                    message: e.to_string(),
                }
            })?,
        };
        enumerate_pseudo_walls(&ambient, &region, args.rank_bound).map_err(|e| {
            CliError::Validation {
                flag: "--chern",
                message: e.to_string(),
            }
        })?
    } else {
        let n = resolve_n(args.n, None)?;
        actual_walls(n)
    };

    let window = RenderWindow::new(
        s_min,
        s_max,
        t_max,
        args.ppu,
        Decorations {
            axes: !args.no_axes,
            s_tick_labels: !args.no_ticks,
            guides: args.guide.clone(),
        },
    )
    .map_err(|e| CliError::Validation {
        flag: "--window",
        message: e.to_string(),
    })?;
    let svg = render_walls_svg(&walls, &window).map_err(|e| CliError::Validation {
        flag: "--window",
        message: e.to_string(),
    })?;

    let drawn = walls
        .iter()
        .filter(|w| wall_intersects_strip(&w.shape, s_min, s_max, Some(t_max * t_max)))
        .count();

    match &args.out {
        Some(path) => {
            std::fs::write(path, &svg).map_err(|e| CliError::Write {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            if args.json {
                let payload = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": "diagram",
                    "output": path.display().to_string(),
                    "walls_drawn": drawn,
                });
                println!("{payload}");
            }
        }
        None => print!("{svg}"),
    }
    Ok(())
}

fn run_n3_map(args: N3MapArgs) -> Result<(), CliError> {
    let matrix = n3_matrix();
    let det = matrix.det();
    let points = match (args.p, args.q, args.y, args.xhat) {
        (Some(p), Some(q), Some(y), Some(xhat)) => Some([p, q, y, xhat]),
        (None, None, None, None) => None,
        _ => {
            return Err(CliError::Validation {
                flag: "--p",
                message: "give all four of --p --q --y --xhat, or none".into(),
            })
        }
    };
    if args.matrix && points.is_some() {
        return Err(CliError::Validation {
            flag: "--matrix",
            message: "--matrix cannot be combined with point arguments".into(),
        });
    }
    let image = points.map(|pts| n3_iso_apply(&pts));
    if args.json {
        let payload = json!({
            "schema_version": SCHEMA_VERSION,
            "command": "n3-map",
            "matrix": matrix.0,
            "determinant": det,
            "input": points,
            "output": image,
        });
        println!("{payload}");
    } else {
        match image {
            Some(out) => {
                for (name, point) in ["p", "q", "y", "xhat"].iter().zip(out.iter()) {
                    println!("{name}' = {point}");
                }
            }
            None => {
                for row in matrix.0 {
                    println!("[{:>2} {:>2} {:>2} {:>2}]", row[0], row[1], row[2], row[3]);
                }
                println!("det = {det}");
            }
        }
    }
    Ok(())
}
