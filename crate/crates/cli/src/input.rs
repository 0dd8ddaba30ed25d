//! Plain-text vertex files: one `x y z` triple per line, `#` comments.

use std::path::{Path, PathBuf};

use ropelength::{Point3, PolyKnot};

use crate::error::{CliError, Result};

/// Largest coordinate difference at which a trailing vertex repeats the first.
pub const CLOSING_DUPLICATE_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct KnotFile {
    pub path: Option<PathBuf>,
    pub knot: PolyKnot,
    pub comments: Vec<String>,
    pub warnings: Vec<String>,
}

fn parse_vertex(line_no: usize, line: &str) -> Result<Point3> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 3 {
        return Err(CliError::ParseLine {
            line: line_no,
            message: format!("expected 3 coordinates, found {}", fields.len()),
        });
    }
    let mut coords = [0.0; 3];
    for (slot, field) in coords.iter_mut().zip(&fields) {
        let value: f64 = field.parse().map_err(|_| CliError::ParseLine {
            line: line_no,
            message: format!("malformed number {field:?}"),
        })?;
        if !value.is_finite() {
            return Err(CliError::ParseLine {
                line: line_no,
                message: format!("non-finite coordinate {field:?}"),
            });
        }
        *slot = value;
    }
    Ok(Point3::from(coords))
}

/// Parses vertex text into a closed polygon.
pub fn parse_knot_text(text: &str) -> Result<KnotFile> {
    let mut vertices: Vec<(usize, Point3)> = Vec::new();
    let mut comments = Vec::new();
    let mut warnings = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            comments.push(comment.trim().to_string());
            continue;
        }
        let p = parse_vertex(line_no, line)?;
        if let Some((prev_line, prev)) = vertices.last() {
            if *prev == p {
                return Err(CliError::ParseLine {
                    line: line_no,
                    message: format!("vertex duplicates the previous vertex on line {prev_line}"),
                });
            }
        }
        vertices.push((line_no, p));
    }

    if vertices.len() > 1 {
        let (last_line, last) = vertices[vertices.len() - 1];
        let first = vertices[0].1;
        if (last - first).abs().max() <= CLOSING_DUPLICATE_TOL {
            vertices.pop();
            warnings.push(format!("line {last_line}: final vertex repeats the first and was dropped"));
        }
    }
    if vertices.len() < 3 {
        return Err(CliError::Parse(format!("need at least 3 vertices, got {}", vertices.len())));
    }
    let knot = PolyKnot::new(vertices.into_iter().map(|(_, p)| p).collect())?;
    Ok(KnotFile {
        path: None,
        knot,
        comments,
        warnings,
    })
}

/// Parses raw file contents, which must be UTF-8.
pub fn parse_knot_file(bytes: &[u8]) -> Result<KnotFile> {
    let text = std::str::from_utf8(bytes).map_err(|e| CliError::Parse(format!("input is not UTF-8: {e}")))?;
    parse_knot_text(text)
}

pub fn read_knot_file(path: &Path) -> Result<KnotFile> {
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut file = parse_knot_file(&bytes)?;
    file.path = Some(path.to_path_buf());
    Ok(file)
}

/// Writes a polygon in the format accepted by [`parse_knot_text`].
pub fn format_knot(knot: &PolyKnot, header: &str) -> String {
    let mut out = String::new();
    for line in header.lines() {
        out.push_str("# ");
        out.push_str(line);
        out.push('\n');
    }
    for p in knot.vertices() {
        out.push_str(&format!("{:?} {:?} {:?}\n", p.x, p.y, p.z));
    }
    out
}
