//! Text formats for curves, densities, displacement grids and curve specs.
//!
//! All formats are line oriented UTF-8. `#` starts a comment that runs to
//! the end of the line and blank lines are ignored. Floats are written in
//! the shortest form that parses back to the same value, so loading a
//! serialized value reproduces it exactly.
//!
//! ```text
//! curve v1
//! loop n              # at least 8 samples per loop
//! x y                 # n lines
//! ```
//!
//! ```text
//! density v1
//! x0 x1 y0 y1 nx ny
//! background 1        # optional, default 1
//! support x0 x1 y0 y1 # optional, inferred when absent
//! v00 v10 ...         # nx*ny values, row-major (x fastest)
//! ```
//!
//! ```text
//! displacement v1
//! x0 x1 y0 y1 nx ny
//! dx dy               # one line per node, row-major
//! ```
//!
//! ```text
//! spec v1
//! r 1
//! surface plane       # plane | unbounded | bounded
//! singular E24        # repeatable; `singular NAME DIM` declares a custom germ
//! ```

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use symcurve_core::forms::DisplacementGrid;
use symcurve_core::moduli::{LocalSingularity, Surface};
use symcurve_core::{ClosedCurve, CurveSpec, Density, Error as CoreError, Grid, Point, Rect};

use crate::error::{CliError, ParseError};

struct Lines<'a> {
    items: Vec<(usize, Vec<&'a str>)>,
    pos: usize,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .filter_map(|(i, line)| {
                let body = line.split('#').next().unwrap_or("");
                let toks: Vec<&str> = body.split_whitespace().collect();
                (!toks.is_empty()).then_some((i + 1, toks))
            })
            .collect();
        Self {
            items,
            pos: 0,
            last: 0,
        }
    }

    fn next(&mut self) -> Option<(usize, Vec<&'a str>)> {
        let item = self.items.get(self.pos).cloned()?;
        self.pos += 1;
        self.last = item.0;
        Some(item)
    }

    fn expect(&mut self, what: &str) -> Result<(usize, Vec<&'a str>), ParseError> {
        self.next().ok_or_else(|| {
            ParseError::new(
                self.last + 1,
                format!("unexpected end of input, expected {what}"),
            )
        })
    }

    fn peek_keyword(&self) -> Option<&'a str> {
        self.items.get(self.pos).map(|(_, t)| t[0])
    }
}

fn num<T: FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ParseError> {
    tok.parse()
        .map_err(|_| ParseError::new(line, format!("invalid {what} `{tok}`")))
}

fn arity(line: usize, toks: &[&str], n: usize, what: &str) -> Result<(), ParseError> {
    if toks.len() != n {
        return Err(ParseError::new(
            line,
            format!("{what} expects {n} fields, found {}", toks.len()),
        ));
    }
    Ok(())
}

fn header(lines: &mut Lines<'_>, kind: &str) -> Result<(), ParseError> {
    let (n, toks) = lines.expect("header")?;
    if toks != [kind, "v1"] {
        return Err(ParseError::new(n, format!("expected header `{kind} v1`")));
    }
    Ok(())
}

fn finish(lines: &mut Lines<'_>) -> Result<(), ParseError> {
    match lines.next() {
        Some((n, toks)) => Err(ParseError::new(
            n,
            format!("trailing content `{}`", toks.join(" ")),
        )),
        None => Ok(()),
    }
}

pub fn parse_curve(text: &str) -> Result<ClosedCurve, CliError> {
    let mut lines = Lines::new(text);
    header(&mut lines, "curve")?;
    let mut loops = Vec::new();
    let mut starts = Vec::new();
    while let Some((n, toks)) = lines.next() {
        starts.push(n);
        if toks[0] != "loop" {
            return Err(
                ParseError::new(n, format!("expected `loop <n>`, found `{}`", toks[0])).into(),
            );
        }
        arity(n, &toks, 2, "loop")?;
        let count: usize = num(n, toks[1], "sample count")?;
        let mut pts = Vec::with_capacity(count);
        for _ in 0..count {
            let (n, toks) = lines.expect("sample `x y`")?;
            arity(n, &toks, 2, "sample")?;
            pts.push(Point::new(num(n, toks[0], "x")?, num(n, toks[1], "y")?));
        }
        loops.push(pts);
    }
    if loops.is_empty() {
        return Err(ParseError::new(lines.last.max(1), "curve has no loops").into());
    }
    ClosedCurve::new(loops).map_err(|e| {
        let at = match e {
            CoreError::TooFewSamples { loop_index, .. } => starts[loop_index],
            CoreError::NonFinitePoint { loop_index, index }
            | CoreError::RepeatedPoint { loop_index, index } => starts[loop_index] + 1 + index,
            _ => 1,
        };
        ParseError::new(at, e.to_string()).into()
    })
}

/// Validation failures of a parsed object, reported at its domain line.
fn invalid(line: usize) -> impl Fn(CoreError) -> CliError {
    move |e| ParseError::new(line, e.to_string()).into()
}

pub fn write_curve(curve: &ClosedCurve) -> String {
    let mut s = String::from("curve v1\n");
    for lp in curve.loops() {
        let _ = writeln!(s, "loop {}", lp.len());
        for p in lp {
            let _ = writeln!(s, "{} {}", p.x, p.y);
        }
    }
    s
}

fn parse_domain(lines: &mut Lines<'_>) -> Result<(usize, Grid), CliError> {
    let (n, toks) = lines.expect("domain line `x0 x1 y0 y1 nx ny`")?;
    arity(n, &toks, 6, "domain line")?;
    let domain = Rect::new(
        num(n, toks[0], "x0")?,
        num(n, toks[1], "x1")?,
        num(n, toks[2], "y0")?,
        num(n, toks[3], "y1")?,
    );
    let grid =
        Grid::new(domain, num(n, toks[4], "nx")?, num(n, toks[5], "ny")?).map_err(invalid(n))?;
    Ok((n, grid))
}

fn write_domain(s: &mut String, g: &Grid) {
    let d = g.domain();
    let _ = writeln!(
        s,
        "{} {} {} {} {} {}",
        d.min.x,
        d.max.x,
        d.min.y,
        d.max.y,
        g.nx(),
        g.ny()
    );
}

pub fn parse_density(text: &str) -> Result<Density, CliError> {
    let mut lines = Lines::new(text);
    header(&mut lines, "density")?;
    let (at, grid) = parse_domain(&mut lines)?;
    let mut background = 1.0;
    let mut support = None;
    while let Some(kw) = lines.peek_keyword() {
        let (n, toks) = match kw {
            "background" | "support" => lines.next().unwrap(),
            _ => break,
        };
        if kw == "background" {
            arity(n, &toks, 2, "background")?;
            background = num(n, toks[1], "background")?;
        } else {
            arity(n, &toks, 5, "support")?;
            support = Some(Rect::new(
                num(n, toks[1], "x0")?,
                num(n, toks[2], "x1")?,
                num(n, toks[3], "y0")?,
                num(n, toks[4], "y1")?,
            ));
        }
    }
    let mut values = Vec::with_capacity(grid.len());
    while values.len() < grid.len() {
        let (n, toks) = lines.expect("density values")?;
        for t in toks {
            values.push(num::<f64>(n, t, "density value")?);
        }
    }
    if values.len() != grid.len() {
        return Err(ParseError::new(
            lines.last,
            format!("expected {} values, found {}", grid.len(), values.len()),
        )
        .into());
    }
    finish(&mut lines)?;
    match support {
        Some(_) => Density::new(grid, values, support, background),
        None => Density::with_background(grid, values, background),
    }
    .map_err(invalid(at))
}

pub fn write_density(d: &Density) -> String {
    let g = d.grid();
    let mut s = String::from("density v1\n");
    write_domain(&mut s, g);
    if d.background() != 1.0 {
        let _ = writeln!(s, "background {}", d.background());
    }
    if let Some(r) = d.support() {
        let _ = writeln!(s, "support {} {} {} {}", r.min.x, r.max.x, r.min.y, r.max.y);
    }
    for row in d.values().chunks(g.nx()) {
        let line: Vec<String> = row.iter().map(|v| v.to_string()).collect();
        s.push_str(&line.join(" "));
        s.push('\n');
    }
    s
}

pub fn parse_displacement(text: &str) -> Result<DisplacementGrid, CliError> {
    let mut lines = Lines::new(text);
    header(&mut lines, "displacement")?;
    let (at, grid) = parse_domain(&mut lines)?;
    let mut dx = Vec::with_capacity(grid.len());
    let mut dy = Vec::with_capacity(grid.len());
    for _ in 0..grid.len() {
        let (n, toks) = lines.expect("displacement `dx dy`")?;
        arity(n, &toks, 2, "displacement")?;
        dx.push(num(n, toks[0], "dx")?);
        dy.push(num(n, toks[1], "dy")?);
    }
    finish(&mut lines)?;
    DisplacementGrid::new(grid, dx, dy).map_err(invalid(at))
}

/// Node Jacobians carried by the grid are not written; a loaded grid
/// differentiates its displacements numerically.
pub fn write_displacement(m: &DisplacementGrid) -> String {
    let mut s = String::from("displacement v1\n");
    write_domain(&mut s, m.grid());
    for (x, y) in m.dx().iter().zip(m.dy()) {
        let _ = writeln!(s, "{x} {y}");
    }
    s
}

pub fn parse_spec(text: &str) -> Result<CurveSpec, CliError> {
    let mut lines = Lines::new(text);
    header(&mut lines, "spec")?;
    let mut r = None;
    let mut surface = None;
    let mut points = Vec::new();
    while let Some((n, toks)) = lines.next() {
        match toks[0] {
            "r" => {
                arity(n, &toks, 2, "r")?;
                if r.replace(num::<usize>(n, toks[1], "face count")?).is_some() {
                    return Err(ParseError::new(n, "duplicate `r`").into());
                }
            }
            "surface" => {
                arity(n, &toks, 2, "surface")?;
                let s = Surface::from_str(toks[1]).map_err(|e| ParseError::new(n, e))?;
                if surface.replace(s).is_some() {
                    return Err(ParseError::new(n, "duplicate `surface`").into());
                }
            }
            "singular" => match toks.len() {
                2 => points
                    .push(LocalSingularity::from_str(toks[1]).map_err(|e| ParseError::new(n, e))?),
                3 => points.push(LocalSingularity::Custom {
                    name: toks[1].to_string(),
                    dimension: num(n, toks[2], "local dimension")?,
                }),
                _ => {
                    return Err(ParseError::new(
                        n,
                        "expected `singular NAME` or `singular NAME DIM`",
                    )
                    .into())
                }
            },
            other => return Err(ParseError::new(n, format!("unknown directive `{other}`")).into()),
        }
    }
    let r = r.ok_or_else(|| ParseError::new(lines.last.max(1), "missing `r`"))?;
    Ok(CurveSpec::new(r, points, surface.unwrap_or(Surface::Plane)))
}

pub fn write_spec(spec: &CurveSpec) -> String {
    let mut s = format!("spec v1\nr {}\nsurface {}\n", spec.r, spec.surface.as_str());
    for p in &spec.unstable_points {
        match p {
            LocalSingularity::Custom { name, dimension } => {
                let _ = writeln!(s, "singular {name} {dimension}");
            }
            _ => {
                let _ = writeln!(s, "singular {}", p.name());
            }
        }
    }
    s
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn located<T>(path: &Path, r: Result<T, CliError>) -> Result<T, CliError> {
    r.map_err(|e| match e {
        CliError::Parse(p) => CliError::ParseFile {
            path: path.to_path_buf(),
            error: p,
        },
        other => other,
    })
}

pub fn load_curve(path: &Path) -> Result<ClosedCurve, CliError> {
    located(path, parse_curve(&read(path)?))
}

pub fn load_density(path: &Path) -> Result<Density, CliError> {
    located(path, parse_density(&read(path)?))
}

pub fn load_displacement(path: &Path) -> Result<DisplacementGrid, CliError> {
    located(path, parse_displacement(&read(path)?))
}

pub fn load_spec(path: &Path) -> Result<CurveSpec, CliError> {
    located(path, parse_spec(&read(path)?))
}
