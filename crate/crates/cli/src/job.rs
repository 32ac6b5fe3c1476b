//! Job files: a sectioned, line-based text format. See `FORMAT.md`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use ainfty::grlin::Field;

pub const FORMAT_VERSION: u32 = 1;

/// `(coefficient, term)` pairs. Coefficients are kept as canonical rational
/// strings and reduced only when the field is applied.
pub type Combination<T> = Vec<(String, T)>;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bounds {
    pub arity_max: Option<usize>,
    pub length: Option<usize>,
    pub window: Option<i64>,
    pub resolution: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TableSpec {
    pub basis: Vec<(String, i64)>,
    pub unit: Option<String>,
    pub augmentation: Option<String>,
    /// `d x = …`
    pub differential: Vec<(String, Combination<String>)>,
    /// `product x y = …`
    pub products: Vec<(String, String, Combination<String>)>,
    /// `op x1 … xn = …`, suspended structure constants of `b_n`.
    pub ops: Vec<(Vec<String>, Combination<String>)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuiverSpec {
    pub vertices: Vec<String>,
    /// `(name, source, target)`
    pub arrows: Vec<(String, String, String)>,
    /// Paths are arrow names in composition order.
    pub relations: Vec<Combination<Vec<String>>>,
    pub bound: Option<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct QuadraticSpec {
    pub generators: Vec<(String, i64)>,
    pub relations: Vec<Combination<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainSpec {
    pub arity: usize,
    pub degree: i64,
    pub entries: Vec<(Vec<String>, Combination<String>)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Table(TableSpec),
    Quiver(QuiverSpec),
    Quadratic(QuadraticSpec),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct JobSpec {
    pub field: u64,
    pub bounds: Bounds,
    pub object: Option<Object>,
    pub cochain: Option<CochainSpec>,
    pub command: Option<String>,
    pub flags: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug)]
struct Tok<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    toks: Vec<Tok<'a>>,
    end: usize,
}

impl<'a> Line<'a> {
    fn err<T>(&self, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            line: self.number,
            column,
            message: message.into(),
        })
    }

    fn at(&self, i: usize) -> usize {
        self.toks.get(i).map_or(self.end, |t| t.column)
    }

    fn arg(&self, i: usize, what: &str) -> Result<&'a str, ParseError> {
        match self.toks.get(i) {
            Some(t) => Ok(t.text),
            None => self.err(self.end, format!("expected {what}")),
        }
    }

    fn only(&self, n: usize) -> Result<(), ParseError> {
        if self.toks.len() > n {
            return self.err(self.toks[n].column, "unexpected token");
        }
        Ok(())
    }

    fn number<T: std::str::FromStr>(&self, i: usize, what: &str) -> Result<T, ParseError> {
        let s = self.arg(i, what)?;
        s.parse().or_else(|_| self.err(self.at(i), format!("expected {what}, found `{s}`")))
    }

    /// Position of the `=` token.
    fn equals(&self) -> Result<usize, ParseError> {
        match self.toks.iter().position(|t| t.text == "=") {
            Some(i) => Ok(i),
            None => self.err(self.end, "expected `=`"),
        }
    }
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut start = None;
        for (i, ch) in content.char_indices() {
            match (ch.is_whitespace(), start) {
                (true, Some(s)) => {
                    toks.push(Tok {
                        text: &content[s..i],
                        column: content[..s].chars().count() + 1,
                    });
                    start = None;
                }
                (false, None) => start = Some(i),
                _ => {}
            }
        }
        if let Some(s) = start {
            toks.push(Tok {
                text: &content[s..],
                column: content[..s].chars().count() + 1,
            });
        }
        if !toks.is_empty() {
            out.push(Line {
                number: n + 1,
                toks,
                end: content.chars().count() + 1,
            });
        }
    }
    out
}

fn is_scalar(s: &str) -> bool {
    Field::Rational.parse(s).is_ok()
}

fn canonical(s: &str) -> String {
    Field::Rational.parse(s).expect("checked scalar").to_string()
}

fn negate(s: &str) -> String {
    (-Field::Rational.parse(s).expect("checked scalar")).to_string()
}

/// `[±] [c] term { ± [c] term }`, or `0`. A numeric token is a coefficient
/// only when a term follows it, so basis elements may be called `1`.
fn combination<T>(
    line: &Line<'_>,
    from: usize,
    mut term: impl FnMut(&str, usize) -> Result<T, ParseError>,
) -> Result<Combination<T>, ParseError> {
    let toks = &line.toks[from..];
    if toks.len() == 1 && toks[0].text == "0" {
        return Ok(Vec::new());
    }
    if toks.is_empty() {
        return line.err(line.end, "expected a linear combination");
    }
    let mut out = Vec::new();
    let mut i = 0;
    let mut first = true;
    while i < toks.len() {
        let mut negative = false;
        if matches!(toks[i].text, "+" | "-") {
            negative = toks[i].text == "-";
            i += 1;
        } else if !first {
            return line.err(toks[i].column, "expected `+` or `-`");
        }
        first = false;
        let Some(t) = toks.get(i) else {
            return line.err(line.end, "expected a term");
        };
        let mut coeff = "1".to_string();
        let followed = toks.get(i + 1).is_some_and(|n| !matches!(n.text, "+" | "-"));
        if is_scalar(t.text) && followed {
            coeff = canonical(t.text);
            i += 1;
        }
        let t = toks[i];
        if negative {
            coeff = negate(&coeff);
        }
        out.push((coeff, term(t.text, t.column)?));
        i += 1;
    }
    Ok(out)
}

fn named_degree(line: &Line<'_>, tok: Tok<'_>) -> Result<(String, i64), ParseError> {
    match tok.text.rsplit_once(':') {
        Some((name, deg)) => match deg.parse() {
            Ok(d) if !name.is_empty() => Ok((name.to_string(), d)),
            _ => line.err(tok.column, format!("bad `name:degree` in `{}`", tok.text)),
        },
        None => Ok((tok.text.to_string(), 0)),
    }
}

fn path(s: &str) -> Vec<String> {
    s.split('.').map(str::to_string).collect()
}

fn plain(s: &str, _: usize) -> Result<String, ParseError> {
    Ok(s.to_string())
}

/// Parses a job file.
pub fn parse(text: &str) -> Result<JobSpec, ParseError> {
    let lines = tokenize(text);
    let mut job = JobSpec::default();
    let mut i = 0;
    let mut seen_field = false;
    while i < lines.len() {
        let line = &lines[i];
        let key = line.toks[0].text;
        i += 1;
        match key {
            "format" => {
                let v: u32 = line.number(1, "a format version")?;
                if v != FORMAT_VERSION {
                    return line.err(line.at(1), format!("unsupported format version {v}"));
                }
                line.only(2)?;
            }
            "field" => {
                let p: u64 = line.number(1, "a characteristic")?;
                if Field::from_characteristic(p).is_err() {
                    return line.err(line.at(1), format!("characteristic {p} is neither 0 nor a prime"));
                }
                if seen_field {
                    return line.err(line.at(0), "field given twice");
                }
                seen_field = true;
                job.field = p;
                line.only(2)?;
            }
            "arity_max" | "length" | "resolution" => {
                let v: usize = line.number(1, "a positive bound")?;
                if v == 0 {
                    return line.err(line.at(1), "bounds must be positive");
                }
                let slot = match key {
                    "arity_max" => &mut job.bounds.arity_max,
                    "length" => &mut job.bounds.length,
                    _ => &mut job.bounds.resolution,
                };
                *slot = Some(v);
                line.only(2)?;
            }
            "window" => {
                let v: i64 = line.number(1, "a degree")?;
                if v <= 0 {
                    return line.err(line.at(1), "bounds must be positive");
                }
                job.bounds.window = Some(v);
                line.only(2)?;
            }
            "command" => {
                job.command = Some(line.arg(1, "a command")?.to_string());
                line.only(2)?;
            }
            "flag" => {
                let k = line.arg(1, "a flag name")?.to_string();
                let v = line.arg(2, "a flag value")?.to_string();
                line.only(3)?;
                job.flags.insert(k, v);
            }
            "table" | "quiver" | "quadratic" | "cochain" => {
                line.only(1)?;
                let start = i;
                while i < lines.len() && lines[i].toks[0].text != "end" {
                    i += 1;
                }
                if i == lines.len() {
                    return line.err(1, format!("`{key}` block is not closed by `end`"));
                }
                lines[i].only(1)?;
                let body = &lines[start..i];
                i += 1;
                if key == "cochain" {
                    if job.cochain.is_some() {
                        return line.err(1, "only one cochain block is allowed");
                    }
                    job.cochain = Some(cochain_block(line, body)?);
                    continue;
                }
                if job.object.is_some() {
                    return line.err(1, "only one object block is allowed");
                }
                job.object = Some(match key {
                    "table" => Object::Table(table_block(body)?),
                    "quiver" => Object::Quiver(quiver_block(body)?),
                    _ => Object::Quadratic(quadratic_block(body)?),
                });
            }
            other => return line.err(line.at(0), format!("unknown key `{other}`")),
        }
    }
    Ok(job)
}

fn table_block(body: &[Line<'_>]) -> Result<TableSpec, ParseError> {
    let mut t = TableSpec::default();
    for line in body {
        match line.toks[0].text {
            "basis" => {
                for &tok in &line.toks[1..] {
                    t.basis.push(named_degree(line, tok)?);
                }
            }
            "unit" => {
                t.unit = Some(line.arg(1, "a basis element")?.to_string());
                line.only(2)?;
            }
            "augmentation" => {
                t.augmentation = Some(line.arg(1, "a basis element")?.to_string());
                line.only(2)?;
            }
            "d" => {
                let eq = line.equals()?;
                if eq != 2 {
                    return line.err(line.at(eq.min(2)), "expected `d x = …`");
                }
                t.differential.push((line.toks[1].text.to_string(), combination(line, 3, plain)?));
            }
            "product" => {
                let eq = line.equals()?;
                if eq != 3 {
                    return line.err(line.at(eq.min(3)), "expected `product x y = …`");
                }
                t.products.push((
                    line.toks[1].text.to_string(),
                    line.toks[2].text.to_string(),
                    combination(line, 4, plain)?,
                ));
            }
            "op" => {
                let eq = line.equals()?;
                let ins = line.toks[1..eq].iter().map(|t| t.text.to_string()).collect();
                t.ops.push((ins, combination(line, eq + 1, plain)?));
            }
            other => return line.err(line.at(0), format!("unknown table entry `{other}`")),
        }
    }
    Ok(t)
}

fn quiver_block(body: &[Line<'_>]) -> Result<QuiverSpec, ParseError> {
    let mut q = QuiverSpec::default();
    for line in body {
        match line.toks[0].text {
            "vertices" => q.vertices.extend(line.toks[1..].iter().map(|t| t.text.to_string())),
            "arrow" => {
                // arrow a: 1 -> 2
                let name = line.arg(1, "an arrow name")?;
                let Some(name) = name.strip_suffix(':') else {
                    return line.err(line.at(1), "expected `arrow name: source -> target`");
                };
                if line.arg(3, "`->`")? != "->" {
                    return line.err(line.at(3), "expected `->`");
                }
                q.arrows.push((
                    name.to_string(),
                    line.arg(2, "a source vertex")?.to_string(),
                    line.arg(4, "a target vertex")?.to_string(),
                ));
                line.only(5)?;
            }
            "relation" => q.relations.push(combination(line, 1, |s, _| Ok(path(s)))?),
            "bound" => {
                q.bound = Some(line.number(1, "a nilpotency bound")?);
                line.only(2)?;
            }
            other => return line.err(line.at(0), format!("unknown quiver entry `{other}`")),
        }
    }
    Ok(q)
}

fn quadratic_block(body: &[Line<'_>]) -> Result<QuadraticSpec, ParseError> {
    let mut q = QuadraticSpec::default();
    for line in body {
        match line.toks[0].text {
            "generators" => {
                for &tok in &line.toks[1..] {
                    q.generators.push(named_degree(line, tok)?);
                }
            }
            "relation" => {
                let r = combination(line, 1, |s, col| {
                    let p = path(s);
                    if p.len() != 2 {
                        return Err(ParseError {
                            line: line.number,
                            column: col,
                            message: format!("`{s}` is not a word of length two"),
                        });
                    }
                    Ok(p)
                })?;
                q.relations.push(r);
            }
            other => return line.err(line.at(0), format!("unknown quadratic entry `{other}`")),
        }
    }
    Ok(q)
}

fn cochain_block(head: &Line<'_>, body: &[Line<'_>]) -> Result<CochainSpec, ParseError> {
    let mut arity = None;
    let mut degree = 1;
    let mut entries = Vec::new();
    for line in body {
        match line.toks[0].text {
            "arity" => {
                arity = Some(line.number(1, "an arity")?);
                line.only(2)?;
            }
            "degree" => {
                degree = line.number(1, "a degree")?;
                line.only(2)?;
            }
            "entry" => {
                let eq = line.equals()?;
                let ins: Vec<String> = line.toks[1..eq].iter().map(|t| t.text.to_string()).collect();
                entries.push((ins, combination(line, eq + 1, plain)?));
            }
            other => return line.err(line.at(0), format!("unknown cochain entry `{other}`")),
        }
    }
    let Some(arity) = arity else {
        return head.err(1, "cochain block needs `arity`");
    };
    for (ins, _) in &entries {
        if ins.len() != arity {
            return head.err(1, format!("cochain entry with {} inputs, arity is {arity}", ins.len()));
        }
    }
    Ok(CochainSpec {
        arity,
        degree,
        entries,
    })
}

fn write_combination<T>(out: &mut String, c: &Combination<T>, term: impl Fn(&T) -> String) {
    if c.is_empty() {
        out.push('0');
        return;
    }
    for (i, (coeff, t)) in c.iter().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        let _ = write!(out, "{coeff} {}", term(t));
    }
}

fn name_degree(n: &str, d: i64) -> String {
    if d == 0 && !n.contains(':') {
        n.to_string()
    } else {
        format!("{n}:{d}")
    }
}

/// Writes a job back in the canonical form of the format.
pub fn serialize(job: &JobSpec) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "format {FORMAT_VERSION}");
    let _ = writeln!(s, "field {}", job.field);
    if let Some(c) = &job.command {
        let _ = writeln!(s, "command {c}");
    }
    for (k, v) in &job.flags {
        let _ = writeln!(s, "flag {k} {v}");
    }
    let b = &job.bounds;
    for (k, v) in [("arity_max", b.arity_max), ("length", b.length), ("resolution", b.resolution)] {
        if let Some(v) = v {
            let _ = writeln!(s, "{k} {v}");
        }
    }
    if let Some(w) = b.window {
        let _ = writeln!(s, "window {w}");
    }
    let ident = |x: &String| x.clone();
    let dotted = |p: &Vec<String>| p.join(".");
    match &job.object {
        Some(Object::Table(t)) => {
            s.push_str("table\n");
            if !t.basis.is_empty() {
                let names: Vec<String> = t.basis.iter().map(|(n, d)| name_degree(n, *d)).collect();
                let _ = writeln!(s, "  basis {}", names.join(" "));
            }
            if let Some(u) = &t.unit {
                let _ = writeln!(s, "  unit {u}");
            }
            if let Some(e) = &t.augmentation {
                let _ = writeln!(s, "  augmentation {e}");
            }
            for (x, c) in &t.differential {
                let _ = write!(s, "  d {x} = ");
                write_combination(&mut s, c, ident);
                s.push('\n');
            }
            for (x, y, c) in &t.products {
                let _ = write!(s, "  product {x} {y} = ");
                write_combination(&mut s, c, ident);
                s.push('\n');
            }
            for (ins, c) in &t.ops {
                s.push_str("  op");
                for x in ins {
                    let _ = write!(s, " {x}");
                }
                s.push_str(" = ");
                write_combination(&mut s, c, ident);
                s.push('\n');
            }
            s.push_str("end\n");
        }
        Some(Object::Quiver(q)) => {
            s.push_str("quiver\n");
            if !q.vertices.is_empty() {
                let _ = writeln!(s, "  vertices {}", q.vertices.join(" "));
            }
            for (a, src, tgt) in &q.arrows {
                let _ = writeln!(s, "  arrow {a}: {src} -> {tgt}");
            }
            for r in &q.relations {
                s.push_str("  relation ");
                write_combination(&mut s, r, dotted);
                s.push('\n');
            }
            if let Some(b) = q.bound {
                let _ = writeln!(s, "  bound {b}");
            }
            s.push_str("end\n");
        }
        Some(Object::Quadratic(q)) => {
            s.push_str("quadratic\n");
            if !q.generators.is_empty() {
                let names: Vec<String> = q.generators.iter().map(|(n, d)| name_degree(n, *d)).collect();
                let _ = writeln!(s, "  generators {}", names.join(" "));
            }
            for r in &q.relations {
                s.push_str("  relation ");
                write_combination(&mut s, r, dotted);
                s.push('\n');
            }
            s.push_str("end\n");
        }
        None => {}
    }
    if let Some(c) = &job.cochain {
        let _ = writeln!(s, "cochain\n  arity {}\n  degree {}", c.arity, c.degree);
        for (ins, v) in &c.entries {
            s.push_str("  entry");
            for x in ins {
                let _ = write!(s, " {x}");
            }
            s.push_str(" = ");
            write_combination(&mut s, v, ident);
            s.push('\n');
        }
        s.push_str("end\n");
    }
    s
}
