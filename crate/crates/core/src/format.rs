//! Declarative text formats for spaces, natural paths and execution paths.
//!
//! A document is a sequence of directives, one per line; `#` starts a
//! comment. Rationals are written `p/q`, with `/1` omitted.
//!
//! ```text
//! space flavor=M
//! state 0
//! state 1
//! cell seg dim=0 src=0 tgt=1 attach=endpoints
//! natpath bp : seg@()
//! cell d dim=1 src=0 tgt=1 attach=two_paths(bp,bp)
//! path p : base=bp reparam=pl 1 1 : 0 0 ; 1/2 1 ; 1 1
//! ```
//!
//! Attachment specs: `endpoints`, `two_paths(<natpath>,<natpath>)`,
//! `const(<natpath>)`, `psi(<upper-cell>,<lower-cell>)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::complex::{
    AttachingData, DiskPoint, Flavor, GlobularCell, GlobularComplex, Resolver,
};
use crate::paths::{ExecutionPath, NaturalPath, PathStep};
use crate::rat::{parse_rat, rat_display, Rat};
use crate::reparam::PlMap;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        message: message.into(),
    }
}

/// Everything a file can declare: at most one space, plus named paths.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub space: Option<GlobularComplex>,
    pub natpaths: BTreeMap<String, NaturalPath>,
    pub exec_paths: BTreeMap<String, ExecutionPath>,
    /// Execution paths in declaration order.
    pub path_order: Vec<String>,
}

impl Document {
    pub fn space(&self) -> Result<&GlobularComplex, String> {
        self.space.as_ref().ok_or_else(|| "document declares no space".to_string())
    }
}

struct Builder {
    flavor: Option<Flavor>,
    states: Vec<String>,
    cells: Vec<GlobularCell>,
    cell_lines: BTreeMap<String, usize>,
    natpaths: BTreeMap<String, NaturalPath>,
    exec_paths: BTreeMap<String, ExecutionPath>,
    path_order: Vec<String>,
}

/// Parses a full document. Errors carry the offending line.
pub fn parse_document(src: &str) -> Result<Document, ParseError> {
    let mut b = Builder {
        flavor: None,
        states: Vec::new(),
        cells: Vec::new(),
        cell_lines: BTreeMap::new(),
        natpaths: BTreeMap::new(),
        exec_paths: BTreeMap::new(),
        path_order: Vec::new(),
    };
    // The complex is rebuilt as cells arrive so that every reference is
    // validated against the skeleton visible at its declaration line.
    let mut partial: Option<GlobularComplex> = None;

    for (i, raw) in src.lines().enumerate() {
        let lno = i + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let (word, rest) = split_word(line);
        match word {
            "space" => {
                if b.flavor.is_some() {
                    return Err(err(lno, "duplicate `space` directive"));
                }
                let spec = rest.trim();
                let flavor = match spec.strip_prefix("flavor=") {
                    Some("M") => Flavor::M,
                    Some("G") => Flavor::G,
                    _ => return Err(err(lno, "expected `space flavor=M` or `space flavor=G`")),
                };
                b.flavor = Some(flavor);
            }
            "state" => {
                let name = rest.trim();
                if name.is_empty() || name.contains(char::is_whitespace) {
                    return Err(err(lno, "expected `state <name>`"));
                }
                if b.states.iter().any(|s| s == name) {
                    return Err(err(lno, format!("duplicate state `{name}`")));
                }
                b.states.push(name.to_string());
                partial = None;
            }
            "cell" => {
                let flavor = b
                    .flavor
                    .ok_or_else(|| err(lno, "`cell` before `space flavor=...`"))?;
                let cx = match &partial {
                    Some(cx) => cx.clone(),
                    None => GlobularComplex::new(flavor, b.states.clone(), b.cells.clone())
                        .map_err(|e| locate_complex_error(e.to_string(), &b.cell_lines, lno))?,
                };
                let cell = parse_cell(rest, lno, &b.natpaths)?;
                let id = cell.id.clone();
                let next = cx
                    .attach_cell(cell.clone())
                    .map_err(|e| err(lno, e.to_string()))?;
                b.cell_lines.insert(id, lno);
                b.cells.push(cell);
                partial = Some(next);
            }
            "natpath" => {
                let flavor = b
                    .flavor
                    .ok_or_else(|| err(lno, "`natpath` before `space flavor=...`"))?;
                let cx = match &partial {
                    Some(cx) => cx.clone(),
                    None => GlobularComplex::new(flavor, b.states.clone(), b.cells.clone())
                        .map_err(|e| locate_complex_error(e.to_string(), &b.cell_lines, lno))?,
                };
                let (name, path) = parse_natpath(rest, lno)?;
                path.validate_in(&cx).map_err(|e| err(lno, e.to_string()))?;
                if b.natpaths.insert(name.clone(), path).is_some() {
                    return Err(err(lno, format!("duplicate natpath `{name}`")));
                }
                partial = Some(cx);
            }
            "path" => {
                let (name, path) = parse_exec_path(rest, lno, &b.natpaths)?;
                if b.exec_paths.insert(name.clone(), path).is_some() {
                    return Err(err(lno, format!("duplicate path `{name}`")));
                }
                b.path_order.push(name);
            }
            other => return Err(err(lno, format!("unknown directive `{other}`"))),
        }
    }

    let space = match b.flavor {
        Some(flavor) => Some(
            GlobularComplex::new(flavor, b.states, b.cells)
                .map_err(|e| locate_complex_error(e.to_string(), &b.cell_lines, 0))?,
        ),
        None => None,
    };
    if let Some(cx) = &space {
        for (name, p) in &b.exec_paths {
            p.validate_in(cx)
                .map_err(|e| err(0, format!("path `{name}`: {e}")))?;
        }
    }
    Ok(Document {
        space,
        natpaths: b.natpaths,
        exec_paths: b.exec_paths,
        path_order: b.path_order,
    })
}

fn locate_complex_error(
    msg: String,
    cell_lines: &BTreeMap<String, usize>,
    fallback: usize,
) -> ParseError {
    for (id, line) in cell_lines {
        if msg.contains(&format!("`{id}`")) {
            return err(*line, msg);
        }
    }
    err(fallback, msg)
}

fn split_word(s: &str) -> (&str, &str) {
    match s.find(char::is_whitespace) {
        Some(pos) => (&s[..pos], &s[pos..]),
        None => (s, ""),
    }
}

fn parse_disk_point(s: &str, line: usize) -> Result<DiskPoint, ParseError> {
    let inner = s
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| err(line, format!("expected `(coords)`, got `{s}`")))?;
    let inner = inner.trim();
    if inner.is_empty() {
        return Ok(DiskPoint::origin(0));
    }
    let coords: Result<Vec<Rat>, _> = inner
        .split(',')
        .map(|c| parse_rat(c).map_err(|m| err(line, m)))
        .collect();
    Ok(DiskPoint::new(coords?))
}

fn parse_steps(s: &str, line: usize) -> Result<NaturalPath, ParseError> {
    let mut steps = Vec::new();
    for part in s.split(';') {
        let part = part.trim();
        if part.is_empty() {
            return Err(err(line, "empty path step"));
        }
        let (cell, coords) = part
            .split_once('@')
            .ok_or_else(|| err(line, format!("expected `cell@(coords)`, got `{part}`")))?;
        steps.push(PathStep {
            cell: cell.trim().to_string(),
            point: parse_disk_point(coords.trim(), line)?,
        });
    }
    NaturalPath::new(steps).map_err(|e| err(line, e.to_string()))
}

fn parse_natpath(rest: &str, line: usize) -> Result<(String, NaturalPath), ParseError> {
    let (name, spec) = rest
        .trim()
        .split_once(':')
        .ok_or_else(|| err(line, "expected `natpath <name> : <steps>`"))?;
    let name = name.trim();
    if name.is_empty() {
        return Err(err(line, "natpath needs a name"));
    }
    Ok((name.to_string(), parse_steps(spec, line)?))
}

/// Parses the `pl <dom> <cod> : t v ; t v ; ...` form.
pub fn parse_pl(s: &str, line: usize) -> Result<PlMap, ParseError> {
    let body = s
        .trim()
        .strip_prefix("pl")
        .ok_or_else(|| err(line, "expected `pl <dom> <cod> : ...`"))?;
    let (lens, pts) = body
        .split_once(':')
        .ok_or_else(|| err(line, "expected `:` after the segment lengths"))?;
    let lens: Vec<&str> = lens.split_whitespace().collect();
    if lens.len() != 2 {
        return Err(err(line, "expected two segment lengths"));
    }
    let dom = parse_rat(lens[0]).map_err(|m| err(line, m))?;
    let cod = parse_rat(lens[1]).map_err(|m| err(line, m))?;
    let mut points = Vec::new();
    for pair in pts.split(';') {
        let nums: Vec<&str> = pair.split_whitespace().collect();
        if nums.len() != 2 {
            return Err(err(line, format!("expected `t v`, got `{}`", pair.trim())));
        }
        points.push((
            parse_rat(nums[0]).map_err(|m| err(line, m))?,
            parse_rat(nums[1]).map_err(|m| err(line, m))?,
        ));
    }
    PlMap::new(dom, cod, points).map_err(|e| err(line, e.to_string()))
}

fn parse_cell(
    rest: &str,
    line: usize,
    natpaths: &BTreeMap<String, NaturalPath>,
) -> Result<GlobularCell, ParseError> {
    let fields: Vec<&str> = rest.split_whitespace().collect();
    if fields.len() != 5 {
        return Err(err(
            line,
            "expected `cell <id> dim=<n> src=<s> tgt=<t> attach=<spec>`",
        ));
    }
    let id = fields[0].to_string();
    let take = |prefix: &str, field: &str| -> Result<String, ParseError> {
        field
            .strip_prefix(prefix)
            .map(|v| v.to_string())
            .ok_or_else(|| err(line, format!("expected `{prefix}...`, got `{field}`")))
    };
    let dim: usize = take("dim=", fields[1])?
        .parse()
        .map_err(|_| err(line, "dim must be a nonnegative integer"))?;
    let src = take("src=", fields[2])?;
    let tgt = take("tgt=", fields[3])?;
    let attach_spec = take("attach=", fields[4])?;

    let lookup = |name: &str| -> Result<NaturalPath, ParseError> {
        natpaths
            .get(name)
            .cloned()
            .ok_or_else(|| err(line, format!("unknown natpath `{name}`")))
    };
    let two_args = |body: &str| -> Result<(String, String), ParseError> {
        match body.split_once(',') {
            Some((a, b)) => Ok((a.trim().to_string(), b.trim().to_string())),
            None => Err(err(line, "expected two comma-separated arguments")),
        }
    };
    let attach = if attach_spec == "endpoints" {
        AttachingData::Endpoints
    } else if let Some(body) = strip_call(&attach_spec, "two_paths") {
        let (m, p) = two_args(body)?;
        AttachingData::TwoPaths {
            minus: lookup(&m)?,
            plus: lookup(&p)?,
        }
    } else if let Some(body) = strip_call(&attach_spec, "const") {
        AttachingData::Family(Resolver::Constant(lookup(body.trim())?))
    } else if let Some(body) = strip_call(&attach_spec, "psi") {
        let (u, l) = two_args(body)?;
        AttachingData::Family(Resolver::PsiTwist { upper: u, lower: l })
    } else {
        return Err(err(line, format!("unknown attach spec `{attach_spec}`")));
    };
    Ok(GlobularCell {
        id,
        disk_dim: dim,
        src,
        tgt,
        attach,
    })
}

fn strip_call<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    s.strip_prefix(name)
        .and_then(|t| t.strip_prefix('('))
        .and_then(|t| t.strip_suffix(')'))
}

fn parse_exec_path(
    rest: &str,
    line: usize,
    natpaths: &BTreeMap<String, NaturalPath>,
) -> Result<(String, ExecutionPath), ParseError> {
    let (name, spec) = rest
        .trim()
        .split_once(':')
        .ok_or_else(|| err(line, "expected `path <name> : base=<natpath> reparam=<pl ...>`"))?;
    let name = name.trim().to_string();
    let spec = spec.trim();
    let base_spec = spec
        .strip_prefix("base=")
        .ok_or_else(|| err(line, "expected `base=<natpath>` first"))?;
    let (base_name, reparam_spec) = base_spec
        .split_once("reparam=")
        .ok_or_else(|| err(line, "expected `reparam=<pl ...>`"))?;
    let base = natpaths
        .get(base_name.trim())
        .ok_or_else(|| err(line, format!("unknown natpath `{}`", base_name.trim())))?;
    let reparam = parse_pl(reparam_spec, line)?;
    let path = ExecutionPath::new(base.clone(), reparam).map_err(|e| err(line, e.to_string()))?;
    Ok((name, path))
}

fn natpath_decl(name: &str, path: &NaturalPath) -> String {
    let mut line = format!("natpath {name} :");
    for (i, step) in path.steps().iter().enumerate() {
        let sep = if i == 0 { " " } else { " ; " };
        let _ = write!(line, "{sep}{step}");
    }
    line
}

/// Serializes a complex so that reparsing yields a structurally equal value.
/// Attached paths are emitted as named `natpath` declarations.
pub fn write_space(cx: &GlobularComplex) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "space flavor={}", cx.flavor());
    for s in cx.states() {
        let _ = writeln!(out, "state {s}");
    }
    for cell in cx.cells() {
        let attach = match &cell.attach {
            AttachingData::Endpoints => "endpoints".to_string(),
            AttachingData::TwoPaths { minus, plus } => {
                let _ = writeln!(out, "{}", natpath_decl(&format!("{}__minus", cell.id), minus));
                let _ = writeln!(out, "{}", natpath_decl(&format!("{}__plus", cell.id), plus));
                format!("two_paths({id}__minus,{id}__plus)", id = cell.id)
            }
            AttachingData::Family(Resolver::Constant(path)) => {
                let _ = writeln!(out, "{}", natpath_decl(&format!("{}__base", cell.id), path));
                format!("const({}__base)", cell.id)
            }
            AttachingData::Family(Resolver::PsiTwist { upper, lower }) => {
                format!("psi({upper},{lower})")
            }
        };
        let _ = writeln!(
            out,
            "cell {} dim={} src={} tgt={} attach={attach}",
            cell.id, cell.disk_dim, cell.src, cell.tgt
        );
    }
    out
}

/// Serializes one named execution path (with its base) in document form.
pub fn write_exec_path(name: &str, path: &ExecutionPath) -> String {
    let mut out = String::new();
    let base_name = format!("{name}__base");
    let _ = writeln!(out, "{}", natpath_decl(&base_name, path.base()));
    let _ = writeln!(out, "path {name} : base={base_name} reparam={}", path.reparam());
    out
}

/// Human-readable rational, re-exported for report rendering.
pub fn show_rat(r: &Rat) -> String {
    rat_display(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{chain_of_globes, psi_counterexample};
    use crate::fixtures;

    #[test]
    fn parse_simple_space() {
        let src = "\n# a two-state space\nspace flavor=M\nstate 0\nstate 1\ncell seg dim=0 src=0 tgt=1 attach=endpoints\n";
        let doc = parse_document(src).unwrap();
        let cx = doc.space().unwrap();
        assert_eq!(cx.states(), &["0", "1"]);
        assert_eq!(cx.cells().len(), 1);
    }

    #[test]
    fn located_errors() {
        let bad_rat = "space flavor=M\nstate 0\nstate 1\ncell seg dim=0 src=0 tgt=1 attach=endpoints\nnatpath p : seg@(1/x)\n";
        let e = parse_document(bad_rat).unwrap_err();
        assert_eq!(e.line, 5);

        let forward = "space flavor=M\nstate 0\nstate 1\nnatpath p : later@()\n";
        let e = parse_document(forward).unwrap_err();
        assert_eq!(e.line, 4);

        let dup = "space flavor=M\nstate 0\nstate 0\n";
        assert_eq!(parse_document(dup).unwrap_err().line, 3);
    }

    #[test]
    fn psi_attachment_requires_flavor_m() {
        let src = "space flavor=G\nstate 0\nstate 1\ncell em dim=0 src=0 tgt=1 attach=endpoints\ncell ep dim=0 src=0 tgt=1 attach=endpoints\nnatpath m : em@()\nnatpath p : ep@()\ncell up dim=1 src=0 tgt=1 attach=two_paths(m,p)\ncell lo dim=1 src=0 tgt=1 attach=two_paths(m,p)\ncell tw dim=2 src=0 tgt=1 attach=psi(up,lo)\n";
        let e = parse_document(src).unwrap_err();
        assert_eq!(e.line, 10);
        assert!(e.message.contains("flavor G"));
    }

    #[test]
    fn space_round_trip() {
        for cx in [
            chain_of_globes(
                &[vec!["a".to_string(), "b".to_string()], vec!["c".to_string()]],
                crate::complex::Flavor::M,
            )
            .unwrap(),
            psi_counterexample(),
            fixtures::disk_over_two_segments(crate::complex::Flavor::M),
        ] {
            let text = write_space(&cx);
            let doc = parse_document(&text).unwrap();
            assert_eq!(doc.space().unwrap(), &cx);
        }
    }

    #[test]
    fn path_round_trip() {
        let cx = psi_counterexample();
        let text = format!(
            "{}{}",
            write_space(&cx),
            "natpath b : up@(1/2)\npath q : base=b reparam=pl 1 1 : 0 0 ; 1/2 1 ; 1 1\n"
        );
        let doc = parse_document(&text).unwrap();
        let q = &doc.exec_paths["q"];
        assert_eq!(q.carrier(), vec!["up".to_string()]);
        assert!(!q.is_regular());
        // and the writer's own output reparses
        let again = format!("{}{}", write_space(&cx), write_exec_path("q", q));
        let doc2 = parse_document(&again).unwrap();
        assert_eq!(&doc2.exec_paths["q"], q);
    }
}
