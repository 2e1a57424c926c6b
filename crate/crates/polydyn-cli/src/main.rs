//! polydyn: run piecewise-isometry and kicked-oscillator maps, dump orbits
//! and webs, extract symbol sequences, locate tile centers and run the
//! verification suite.

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use num_rational::BigRational;

use polydyn::exact::AlgebraicReal;
use polydyn::geometry::{
    family_constants, gen_scale, gen_star, lattice_polygon, radius_from_side, regular_ngon,
    regular_ngon_exact, woven_ngon, ConvexPolygon, Point, Position,
};
use polydyn::io::{write_orbit_csv, write_pgm, write_svg, write_web_csv};
use polydyn::maps::FloatMap;
use polydyn::orbits::{
    detect_period_df_exact, detect_period_float, detect_period_tangent_exact, find_center,
    first_return, iterate,
};
use polydyn::symbolic::{
    corner_sequence, s_sequence, s_sequence_3d, step_sequence, write_sequence,
};
use polydyn::verify::{run_suite, Suite};
use polydyn::webs::{web_scan, Segment};

#[derive(Parser)]
#[command(name = "polydyn", version, about = "piecewise isometries and kicked maps")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Iterate a map from a seed, write the orbit as CSV and report the
    /// detected period and an s-sequence summary.
    Orbit(OrbitArgs),
    /// Scan a segment of seeds and write the resulting web cloud.
    Web(WebArgs),
    /// Dump a symbol sequence (Df s-sequence, D3f jumps, corner/step).
    Sseq(SseqArgs),
    /// Locate the center of a periodic tile from an interior point.
    Center(CenterArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
    /// Print First-Family constants for N.
    Family(FamilyArgs),
}

#[derive(Args)]
struct MapArgs {
    /// Map id: df, d3f, adc, std, sawsine, stsaw, kho, hkm, dkho, dkhoy,
    /// goetz_c, goetz_t, tangent, quad.
    #[arg(long)]
    map: String,
    /// Rotation angle: "2pi/<n>" (exact-capable) or a decimal (float-only).
    #[arg(long, default_value = "2pi/14")]
    theta: String,
    /// Kick strength K (also K1 for hkm, gamma for quad).
    #[arg(long, default_value_t = 0.0)]
    k: f64,
    /// Second kick strength K2 (hkm).
    #[arg(long, default_value_t = 0.0)]
    k2: f64,
    /// Affine offset beta (goetz_t).
    #[arg(long, default_value_t = 0.0)]
    beta: f64,
    /// Polygon spec for the tangent map:
    /// "regular:N", "woven:N,index" or "lattice:x1,y1;x2,y2;...".
    #[arg(long)]
    polygon: Option<String>,
}

#[derive(Args)]
struct OrbitArgs {
    #[command(flatten)]
    map: MapArgs,
    /// Seed point "x,y" (or "x,y,z" for d3f); exact mode accepts fractions.
    #[arg(long, allow_hyphen_values = true)]
    seed: String,
    /// Number of iterations.
    #[arg(long, default_value_t = 100)]
    steps: u64,
    /// Period-search cap.
    #[arg(long, default_value_t = 100_000)]
    cap: u64,
    /// float | exact.
    #[arg(long, default_value = "float")]
    mode: String,
    /// Float-mode period tolerance.
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
    /// Output file (stdout when omitted).
    #[arg(long)]
    out: Option<String>,
    /// csv | svg | pgm.
    #[arg(long, default_value = "csv")]
    format: String,
    /// SVG width in pixels / PGM grid size.
    #[arg(long, default_value_t = 1000)]
    grid: u32,
}

#[derive(Args)]
struct WebArgs {
    #[command(flatten)]
    map: MapArgs,
    /// Scan segment "x1,y1:x2,y2".
    #[arg(long, allow_hyphen_values = true)]
    segment: String,
    /// Seed spacing along the segment.
    #[arg(long)]
    step: f64,
    /// Iteration depth per seed.
    #[arg(long, default_value_t = 200)]
    depth: u64,
    #[arg(long)]
    out: Option<String>,
    #[arg(long, default_value = "csv")]
    format: String,
    /// SVG width in pixels / PGM grid size.
    #[arg(long, default_value_t = 1000)]
    grid: u32,
    /// SVG dot radius.
    #[arg(long, default_value_t = 0.5)]
    dot: f64,
}

#[derive(Args)]
struct SseqArgs {
    #[command(flatten)]
    map: MapArgs,
    #[arg(long, allow_hyphen_values = true)]
    seed: String,
    /// Sequence length.
    #[arg(long, default_value_t = 100)]
    len: usize,
    /// For the tangent map: emit the step sequence instead of corners.
    #[arg(long, default_value_t = false)]
    steps_seq: bool,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct CenterArgs {
    #[command(flatten)]
    map: MapArgs,
    /// Interior point of the tile.
    #[arg(long, allow_hyphen_values = true)]
    seed: String,
    /// Rotational order of the tile's return map.
    #[arg(long)]
    rot: u64,
    /// Steps of the map per return (the tile period).
    #[arg(long, default_value_t = 1)]
    stride: u64,
    #[arg(long, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Args)]
struct VerifyArgs {
    /// all | pentagon | twokn | ratios | dims.
    #[arg(default_value = "all")]
    suite: String,
    #[arg(long)]
    out: Option<String>,
}

#[derive(Args)]
struct FamilyArgs {
    /// Polygon order N.
    n: u32,
}

/// Parsed theta: value plus the conductor when given as "2pi/<n>".
struct Theta {
    value: f64,
    conductor: Option<u32>,
}

fn parse_theta(s: &str) -> anyhow::Result<Theta> {
    if let Some(rest) = s.strip_prefix("2pi/") {
        let n: u32 = rest
            .parse()
            .map_err(|_| anyhow::anyhow!("bad theta spec '{s}': expected 2pi/<integer>"))?;
        if n == 0 {
            anyhow::bail!("bad theta spec '{s}': conductor must be positive");
        }
        Ok(Theta {
            value: std::f64::consts::TAU / n as f64,
            conductor: Some(n),
        })
    } else {
        Ok(Theta {
            value: s.parse::<f64>().map_err(|_| {
                anyhow::anyhow!("bad theta spec '{s}': expected 2pi/<n> or a decimal")
            })?,
            conductor: None,
        })
    }
}

fn parse_floats(s: &str) -> anyhow::Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(anyhow::Error::from)
                .or_else(|_| parse_rational(t).map(|q| rational_to_f64(&q)))
                .map_err(|_| anyhow::anyhow!("bad number '{t}'"))
        })
        .collect()
}

/// Decimal or p/q string to an exact rational.
fn parse_rational(s: &str) -> anyhow::Result<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let num: BigInt = p.trim().parse()?;
        let den: BigInt = q.trim().parse()?;
        return Ok(BigRational::new(num, den));
    }
    let neg = s.starts_with('-');
    let body = s.trim_start_matches(['-', '+']);
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    let digits = format!("{int_part}{frac_part}");
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        anyhow::bail!("bad rational '{s}'");
    }
    let num: BigInt = digits.parse()?;
    let den = BigInt::from(10u32).pow(frac_part.len() as u32);
    let q = BigRational::new(num, den);
    Ok(if neg { -q } else { q })
}

fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

enum PolySpec {
    Regular(u32),
    Woven(u32, f64),
    Lattice(Vec<(i64, i64)>),
}

fn parse_polygon(s: &str) -> anyhow::Result<PolySpec> {
    if let Some(rest) = s.strip_prefix("regular:") {
        return Ok(PolySpec::Regular(rest.parse()?));
    }
    if let Some(rest) = s.strip_prefix("woven:") {
        let (n, idx) = rest
            .split_once(',')
            .ok_or_else(|| anyhow::anyhow!("woven spec needs N,index"))?;
        return Ok(PolySpec::Woven(n.parse()?, idx.parse()?));
    }
    if let Some(rest) = s.strip_prefix("lattice:") {
        let verts = rest
            .split(';')
            .map(|pair| {
                let (x, y) = pair
                    .split_once(',')
                    .ok_or_else(|| anyhow::anyhow!("lattice vertex needs x,y"))?;
                Ok((x.trim().parse::<i64>()?, y.trim().parse::<i64>()?))
            })
            .collect::<anyhow::Result<Vec<_>>>()?;
        return Ok(PolySpec::Lattice(verts));
    }
    anyhow::bail!("bad polygon spec '{s}': expected regular:N, woven:N,idx or lattice:...")
}

fn build_float_polygon(spec: &PolySpec) -> anyhow::Result<ConvexPolygon<f64>> {
    Ok(match spec {
        PolySpec::Regular(n) => regular_ngon(*n, Position::Standard)?,
        PolySpec::Woven(n, idx) => woven_ngon(*n, *idx)?,
        PolySpec::Lattice(v) => lattice_polygon(v)?.to_f64(),
    })
}

fn build_map(args: &MapArgs, theta: &Theta) -> anyhow::Result<FloatMap> {
    let polygon = match &args.polygon {
        Some(s) => Some(build_float_polygon(&parse_polygon(s)?)?),
        None => None,
    };
    Ok(FloatMap::from_id(
        &args.map,
        theta.value,
        args.k,
        args.k2,
        args.beta,
        polygon,
    )?)
}

fn open_out(path: &Option<String>) -> anyhow::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn parse_exact_seed(seed: &str, n: u32) -> anyhow::Result<Point<AlgebraicReal>> {
    let parts: Vec<&str> = seed.split(',').collect();
    if parts.len() != 2 {
        anyhow::bail!("exact seeds are two-dimensional");
    }
    let x = AlgebraicReal::from_rational(n, parse_rational(parts[0])?)?;
    let y = AlgebraicReal::from_rational(n, parse_rational(parts[1])?)?;
    Ok(Point::new(x, y))
}

fn cmd_orbit(args: OrbitArgs) -> anyhow::Result<()> {
    let theta = parse_theta(&args.map.theta)?;
    let map = build_map(&args.map, &theta)?;
    let seed = parse_floats(&args.seed)?;

    // Detected period first (it is part of the report).
    let period = if args.mode == "exact" {
        detect_exact_period(&args, &theta)?
    } else {
        match detect_period_float(&map, &seed, args.cap, args.tol) {
            Ok(k) => k,
            Err(polydyn::Error::AmbiguousPeriod(a, b)) => {
                eprintln!("ambiguous period candidates {a}, {b}; reporting first return");
                first_return(&map, &seed, args.cap, args.tol)?
            }
            Err(e) => return Err(e.into()),
        }
    };
    match period {
        Some(k) => println!("period: {k}"),
        None => println!("period: none <= {}", args.cap),
    }

    // s-sequence summary for the second-order filter map.
    if args.map.map == "df" {
        let a = 2.0 * theta.value.cos();
        let len = period.map(|k| k as usize).unwrap_or(20).clamp(1, 64);
        let seq = s_sequence(Point::new(seed[0], seed[1]), a, len)?;
        let shown: Vec<String> = seq.symbols.iter().map(|s| s.to_string()).collect();
        println!("s-sequence: {{{}}}", shown.join(","));
    }

    let orbit = iterate(&map, &seed, args.steps)?;
    let mut out = open_out(&args.out)?;
    match args.format.as_str() {
        "csv" => write_orbit_csv(&mut out, &orbit)?,
        "svg" => write_svg(&mut out, &orbit.points, orbit.dim, args.grid, 1.0)?,
        "pgm" => write_pgm(&mut out, &orbit.points, orbit.dim, args.grid)?,
        other => anyhow::bail!("unknown format '{other}'"),
    }
    Ok(())
}

fn detect_exact_period(args: &OrbitArgs, theta: &Theta) -> anyhow::Result<Option<u64>> {
    match args.map.map.as_str() {
        "df" => {
            let n = theta
                .conductor
                .ok_or_else(|| anyhow::anyhow!("exact mode needs --theta 2pi/<n>"))?;
            let a = AlgebraicReal::generator(n)?;
            let p0 = parse_exact_seed(&args.seed, n)?;
            Ok(detect_period_df_exact(&p0, &a, args.cap)?)
        }
        "tangent" => {
            let spec = parse_polygon(
                args.map
                    .polygon
                    .as_ref()
                    .ok_or_else(|| anyhow::anyhow!("tangent map needs --polygon"))?,
            )?;
            match spec {
                PolySpec::Lattice(v) => {
                    let poly = lattice_polygon(&v)?;
                    let parts: Vec<BigRational> = args
                        .seed
                        .split(',')
                        .map(parse_rational)
                        .collect::<anyhow::Result<_>>()?;
                    let p0 = Point::new(parts[0].clone(), parts[1].clone());
                    Ok(detect_period_tangent_exact(&p0, &poly, args.cap)?)
                }
                PolySpec::Regular(n) => {
                    let poly = regular_ngon_exact(n, Position::Standard)?;
                    let p0 = parse_exact_seed(&args.seed, 4 * n)?;
                    Ok(detect_period_tangent_exact(&p0, &poly, args.cap)?)
                }
                PolySpec::Woven(..) => {
                    anyhow::bail!("exact mode is not available for woven polygons")
                }
            }
        }
        other => anyhow::bail!("exact mode is not available for map '{other}'"),
    }
}

fn cmd_web(args: WebArgs) -> anyhow::Result<()> {
    let theta = parse_theta(&args.map.theta)?;
    let map = build_map(&args.map, &theta)?;
    let (a, b) = args
        .segment
        .split_once(':')
        .ok_or_else(|| anyhow::anyhow!("segment spec needs start:end"))?;
    let sa = parse_floats(a)?;
    let sb = parse_floats(b)?;
    let segment = Segment {
        start: [sa[0], sa[1]],
        end: [sb[0], sb[1]],
        step: args.step,
    };
    let cloud = web_scan(&map, &segment, args.depth)?;
    if cloud.skipped > 0 {
        eprintln!("skipped {} seed orbits (map undefined)", cloud.skipped);
    }
    let mut out = open_out(&args.out)?;
    match args.format.as_str() {
        "csv" => write_web_csv(&mut out, &cloud)?,
        "svg" => write_svg(&mut out, &cloud.points, cloud.dim, args.grid, args.dot)?,
        "pgm" => write_pgm(&mut out, &cloud.points, cloud.dim, args.grid)?,
        other => anyhow::bail!("unknown format '{other}'"),
    }
    Ok(())
}

fn cmd_sseq(args: SseqArgs) -> anyhow::Result<()> {
    let theta = parse_theta(&args.map.theta)?;
    let seed = parse_floats(&args.seed)?;
    let seed_str = args.seed.clone();
    let seq = match args.map.map.as_str() {
        "df" => {
            let a = 2.0 * theta.value.cos();
            s_sequence(Point::new(seed[0], seed[1]), a, args.len)?
        }
        "d3f" => {
            let a = 2.0 * theta.value.cos();
            s_sequence_3d([seed[0], seed[1], seed[2]], a, args.len)?
        }
        "tangent" => {
            let spec = parse_polygon(
                args.map
                    .polygon
                    .as_ref()
                    .ok_or_else(|| anyhow::anyhow!("tangent map needs --polygon"))?,
            )?;
            let poly = build_float_polygon(&spec)?;
            let corners = corner_sequence(&Point::new(seed[0], seed[1]), &poly, args.len)?;
            if args.steps_seq {
                step_sequence(&corners)?
            } else {
                corners
            }
        }
        other => anyhow::bail!("sseq supports df, d3f and tangent (got '{other}')"),
    };
    let mut out = open_out(&args.out)?;
    write_sequence(&mut out, &seq, &args.map.map, &args.map.theta, &seed_str)?;
    Ok(())
}

fn cmd_center(args: CenterArgs) -> anyhow::Result<()> {
    let theta = parse_theta(&args.map.theta)?;
    let map = build_map(&args.map, &theta)?;
    let seed = parse_floats(&args.seed)?;
    let center = find_center(&map, &seed, args.rot, args.stride, args.tol)?;
    let coords: Vec<String> = center.iter().map(|v| format!("{v:.16e}")).collect();
    println!("center: {}", coords.join(","));
    if let Some(k) = first_return(&map, &center, 10 * args.stride.max(1), args.tol)? {
        println!("center period: {k}");
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> anyhow::Result<bool> {
    let suite: Suite = args.suite.parse()?;
    let results = run_suite(suite)?;
    let mut out = open_out(&args.out)?;
    writeln!(out, "name,expected,computed,result")?;
    let mut all_pass = true;
    for r in &results {
        writeln!(out, "{}", r.csv_line())?;
        all_pass &= r.pass;
    }
    drop(out);
    if args.out.is_some() {
        println!(
            "{} checks, {}",
            results.len(),
            if all_pass { "all pass" } else { "FAILURES" }
        );
    }
    Ok(all_pass)
}

fn cmd_family(args: FamilyArgs) -> anyhow::Result<()> {
    let n = args.n;
    let gs = gen_scale(n)?;
    let star = gen_star(n)?;
    println!("N = {n}");
    println!("GenScale[{n}] = {:.17}", gs.to_f64());
    println!(
        "GenStar[{n}] = ({:.17}, {:.17})",
        star.x.to_f64(),
        star.y.to_f64()
    );
    let h0 = (std::f64::consts::PI / n as f64).cos();
    println!("h0 = cos(pi/{n}) = {h0:.17}");
    println!("woven index range: ({h0:.6}, {:.6})", 1.0 + gs.to_f64());
    println!(
        "radius_from_side(1, {n}) = {:.17}",
        radius_from_side(1.0, n)?
    );
    let fam = family_constants(n)?;
    if let Some(s2) = fam.scale2 {
        println!("scale2[{n}] = {s2:.18}");
    }
    if let (Some(cm), Some(rm)) = (fam.c_mom, fam.r_mom) {
        println!(
            "cMom = ({:.17}, {:.17}), rMom = {:.17}",
            cm.x.to_f64(),
            cm.y.to_f64(),
            rm.to_f64()
        );
    }
    Ok(())
}

fn classify_error(e: &anyhow::Error) -> u8 {
    if let Some(pe) = e.downcast_ref::<polydyn::Error>() {
        match pe {
            polydyn::Error::Parse(_) => 2,
            polydyn::Error::AtIteration { .. }
            | polydyn::Error::InsidePolygon
            | polydyn::Error::OnTrailingEdge
            | polydyn::Error::Domain(_) => 3,
            _ => 1,
        }
    } else {
        2
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Orbit(a) => cmd_orbit(a),
        Command::Web(a) => cmd_web(a),
        Command::Sseq(a) => cmd_sseq(a),
        Command::Center(a) => cmd_center(a),
        Command::Verify(a) => {
            return match cmd_verify(a) {
                Ok(true) => ExitCode::SUCCESS,
                Ok(false) => ExitCode::from(1),
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Family(a) => cmd_family(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(classify_error(&e))
        }
    }
}
