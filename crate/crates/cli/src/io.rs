//! CSV ingestion and output. Every parser reports the 1-based line of the
//! first bad record; a leading header row is optional.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use halfscan::reductions::{Ray, RayDir, TripartiteGraph};
use halfscan::{Color, Halfplane, LabeledPoint, Line, Side, WeightedLine};

use crate::CliError;

/// 17 significant digits, which reads back to the same double.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

struct Records {
    path: String,
    rows: Vec<(u64, Vec<String>)>,
}

fn read_records(path: &Path, header_first: &str) -> Result<Records, CliError> {
    let shown = path.display().to_string();
    let file = File::open(path).map_err(|e| CliError::Io(format!("{shown}: {e}")))?;
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(file);
    let mut rows = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| {
            let line = e.position().map(|p| p.line()).unwrap_or(0);
            CliError::Csv { path: shown.clone(), line, msg: e.to_string() }
        })?;
        let line = rec.position().map(|p| p.line()).unwrap_or(i as u64 + 1);
        let fields: Vec<String> = rec.iter().map(str::to_owned).collect();
        if i == 0 && fields.first().is_some_and(|f| f.eq_ignore_ascii_case(header_first)) {
            continue;
        }
        if fields.iter().all(|f| f.is_empty()) {
            continue;
        }
        rows.push((line, fields));
    }
    Ok(Records { path: shown, rows })
}

impl Records {
    fn err(&self, line: u64, msg: impl Into<String>) -> CliError {
        CliError::Csv { path: self.path.clone(), line, msg: msg.into() }
    }

    fn arity(&self, line: u64, fields: &[String], lo: usize, hi: usize) -> Result<(), CliError> {
        if fields.len() < lo || fields.len() > hi {
            let want = if lo == hi { lo.to_string() } else { format!("{lo}-{hi}") };
            return Err(self.err(line, format!("expected {want} fields, found {}", fields.len())));
        }
        Ok(())
    }

    fn float(&self, line: u64, field: &str, what: &str) -> Result<f64, CliError> {
        let v: f64 = field.parse().map_err(|_| self.err(line, format!("{what}: cannot parse {field:?} as a number")))?;
        if !v.is_finite() {
            return Err(self.err(line, format!("{what}: {field} is not finite")));
        }
        Ok(v)
    }

    fn index(&self, line: u64, field: &str, what: &str) -> Result<usize, CliError> {
        field.parse().map_err(|_| self.err(line, format!("{what}: cannot parse {field:?} as an index")))
    }
}

pub fn parse_color(s: &str) -> Option<Color> {
    match s {
        "R" | "r" | "red" => Some(Color::Red),
        "B" | "b" | "blue" => Some(Color::Blue),
        _ => None,
    }
}

fn color_str(c: Color) -> &'static str {
    match c {
        Color::Red => "R",
        Color::Blue => "B",
    }
}

pub fn read_points(path: &Path) -> Result<Vec<LabeledPoint>, CliError> {
    let recs = read_records(path, "x")?;
    let mut out = Vec::with_capacity(recs.rows.len());
    for (line, f) in &recs.rows {
        let line = *line;
        recs.arity(line, f, 3, 4)?;
        let x = recs.float(line, &f[0], "x")?;
        let y = recs.float(line, &f[1], "y")?;
        let color = parse_color(&f[2]).ok_or_else(|| recs.err(line, format!("color must be R or B, found {:?}", f[2])))?;
        let weight = match f.get(3) {
            Some(w) if !w.is_empty() => recs.float(line, w, "weight")?,
            _ => 1.0,
        };
        if weight <= 0.0 {
            return Err(recs.err(line, format!("weight must be positive, found {weight}")));
        }
        out.push(LabeledPoint::new(x, y, color).with_weight(weight));
    }
    Ok(out)
}

pub fn parse_side(s: &str) -> Option<Side> {
    match s.to_ascii_lowercase().as_str() {
        "below" | "b" | "-" | "le" => Some(Side::Below),
        "above" | "a" | "+" | "ge" => Some(Side::Above),
        _ => None,
    }
}

pub fn side_str(s: Side) -> &'static str {
    match s {
        Side::Below => "below",
        Side::Above => "above",
    }
}

pub fn read_queries(path: &Path) -> Result<Vec<Halfplane>, CliError> {
    let recs = read_records(path, "a")?;
    let mut out = Vec::with_capacity(recs.rows.len());
    for (line, f) in &recs.rows {
        let line = *line;
        recs.arity(line, f, 3, 3)?;
        let a = recs.float(line, &f[0], "a")?;
        let b = recs.float(line, &f[1], "b")?;
        let side = parse_side(&f[2]).ok_or_else(|| recs.err(line, format!("side must be below or above, found {:?}", f[2])))?;
        out.push(Halfplane::new(Line::new(a, b), side));
    }
    Ok(out)
}

pub fn read_graph(path: &Path) -> Result<TripartiteGraph, CliError> {
    let recs = read_records(path, "part1")?;
    let mut edges = Vec::with_capacity(recs.rows.len());
    let mut n = 0;
    for (line, f) in &recs.rows {
        let line = *line;
        recs.arity(line, f, 5, 5)?;
        let p1 = f[0].to_ascii_uppercase();
        let p2 = f[2].to_ascii_uppercase();
        let i = recs.index(line, &f[1], "idx1")?;
        let j = recs.index(line, &f[3], "idx2")?;
        let w = recs.float(line, &f[4], "weight")?;
        let pair = match (p1.as_str(), p2.as_str()) {
            ("A", "B") => (0, i, j),
            ("B", "A") => (0, j, i),
            ("A", "C") => (1, i, j),
            ("C", "A") => (1, j, i),
            ("B", "C") => (2, i, j),
            ("C", "B") => (2, j, i),
            _ => return Err(recs.err(line, format!("parts must be two distinct of A, B, C, found {p1},{p2}"))),
        };
        n = n.max(i + 1).max(j + 1);
        edges.push((line, pair, w));
    }
    if n == 0 {
        return Err(CliError::Csv { path: recs.path, line: 0, msg: "graph has no edges".into() });
    }
    let mut w = vec![vec![vec![0.0; n]; n]; 3];
    let mut seen = vec![vec![vec![false; n]; n]; 3];
    for (line, (class, u, v), weight) in edges {
        if seen[class][u][v] {
            return Err(recs.err(line, format!("duplicate edge ({u}, {v})")));
        }
        seen[class][u][v] = true;
        w[class][u][v] = weight;
    }
    let mut it = w.into_iter();
    let (ab, ac, bc) = (it.next().unwrap(), it.next().unwrap(), it.next().unwrap());
    TripartiteGraph::new(n, ab, ac, bc).map_err(CliError::Core)
}

fn create(path: &Path) -> Result<csv::Writer<File>, CliError> {
    let file = File::create(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    Ok(csv::Writer::from_writer(file))
}

fn finish<W: Write>(mut w: csv::Writer<W>, path: &Path) -> Result<(), CliError> {
    w.flush().map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn io_err(path: &Path) -> impl Fn(csv::Error) -> CliError + '_ {
    move |e| CliError::Io(format!("{}: {e}", path.display()))
}

pub fn write_points(path: &Path, points: &[LabeledPoint]) -> Result<(), CliError> {
    let mut w = create(path)?;
    w.write_record(["x", "y", "color", "weight"]).map_err(io_err(path))?;
    for p in points {
        w.write_record([fmt_f64(p.x), fmt_f64(p.y), color_str(p.color).into(), fmt_f64(p.weight)])
            .map_err(io_err(path))?;
    }
    finish(w, path)
}

pub fn write_rays(path: &Path, rays: &[Ray]) -> Result<(), CliError> {
    let mut w = create(path)?;
    w.write_record(["x", "y", "dir"]).map_err(io_err(path))?;
    for r in rays {
        let dir = if r.dir == RayDir::Up { "up" } else { "down" };
        w.write_record([fmt_f64(r.x), fmt_f64(r.y), dir.into()]).map_err(io_err(path))?;
    }
    finish(w, path)
}

pub fn read_rays(path: &Path) -> Result<Vec<Ray>, CliError> {
    let recs = read_records(path, "x")?;
    let mut out = Vec::with_capacity(recs.rows.len());
    for (line, f) in &recs.rows {
        let line = *line;
        recs.arity(line, f, 3, 3)?;
        let x = recs.float(line, &f[0], "x")?;
        let y = recs.float(line, &f[1], "y")?;
        let ray = match f[2].to_ascii_lowercase().as_str() {
            "up" | "u" => Ray::up(x, y),
            "down" | "d" => Ray::down(x, y),
            other => return Err(recs.err(line, format!("dir must be up or down, found {other:?}"))),
        };
        out.push(ray);
    }
    Ok(out)
}

pub fn write_gadget(path: &Path, lines: &[WeightedLine]) -> Result<(), CliError> {
    let mut w = create(path)?;
    w.write_record(["a", "b", "weight"]).map_err(io_err(path))?;
    for l in lines {
        w.write_record([fmt_f64(l.line.a), fmt_f64(l.line.b), fmt_f64(l.weight)]).map_err(io_err(path))?;
    }
    finish(w, path)
}

pub fn write_graph(path: &Path, g: &TripartiteGraph) -> Result<(), CliError> {
    let mut w = create(path)?;
    w.write_record(["part1", "idx1", "part2", "idx2", "weight"]).map_err(io_err(path))?;
    for (p1, p2, m) in [("A", "B", &g.w_ab), ("A", "C", &g.w_ac), ("B", "C", &g.w_bc)] {
        for (i, row) in m.iter().enumerate() {
            for (j, wt) in row.iter().enumerate() {
                w.write_record([p1.to_string(), i.to_string(), p2.to_string(), j.to_string(), fmt_f64(*wt)])
                    .map_err(io_err(path))?;
            }
        }
    }
    finish(w, path)
}

pub fn write_rows(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut w = create(path)?;
    w.write_record(header).map_err(io_err(path))?;
    for r in rows {
        w.write_record(r).map_err(io_err(path))?;
    }
    finish(w, path)
}
