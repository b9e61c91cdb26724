//! Self-describing text and JSON files for codes.
//!
//! Text layout:
//!
//! ```text
//! vcodes-code 1
//! q 3
//! p 3
//! ext_degree 1
//! modulus 0 1
//! n 6
//! k 3
//! M 274
//! construction veronese-bundle
//! records
//! 1 0 0 0 0 2 / 0 1 0 0 1 0 / 0 0 0 1 0 0 C
//! ...
//! ```
//!
//! Each record is the reduced echelon basis of a plane with entries in the
//! integer encoding of GF(q), followed by a provenance tag or `-`. Records are
//! sorted; the parser accepts repeated records so that they can be reported
//! by `verify`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use veronese_codes::construction::{Code, CodePlane, Provenance};
use veronese_codes::galois::{Elem, FieldSpec};
use veronese_codes::projgeom::Subspace;

pub const FORMAT_TAG: &str = "vcodes-code";
pub const FORMAT_VERSION: u32 = 1;
pub const CONSTRUCTION_TAG: &str = "veronese-bundle";

#[derive(Debug, Error)]
pub enum CodeFileError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Invalid(String),
}

fn parse_err(line: usize, msg: impl Into<String>) -> CodeFileError {
    CodeFileError::Parse {
        line,
        msg: msg.into(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// A parsed file: the code and the field it lives over.
#[derive(Debug)]
pub struct CodeFile {
    pub field: FieldSpec,
    pub code: Code,
    pub construction: String,
}

#[derive(Serialize, Deserialize)]
struct JsonFile {
    format: String,
    version: u32,
    q: u32,
    p: u32,
    ext_degree: u32,
    modulus: Vec<u32>,
    n: usize,
    k: usize,
    m: usize,
    construction: String,
    records: Vec<JsonRecord>,
}

#[derive(Serialize, Deserialize)]
struct JsonRecord {
    rows: [[u32; 6]; 3],
    provenance: Option<Provenance>,
}

fn rows_of(s: &Subspace<6>) -> [[u32; 6]; 3] {
    std::array::from_fn(|r| std::array::from_fn(|c| s.basis()[r][c].value()))
}

pub fn write_text(f: &FieldSpec, code: &Code, construction: &str) -> String {
    let mut out = String::new();
    let modulus: Vec<String> = f.modulus().iter().map(u32::to_string).collect();
    writeln!(out, "{FORMAT_TAG} {FORMAT_VERSION}").unwrap();
    writeln!(out, "q {}", f.order()).unwrap();
    writeln!(out, "p {}", f.characteristic()).unwrap();
    writeln!(out, "ext_degree {}", f.degree()).unwrap();
    writeln!(out, "modulus {}", modulus.join(" ")).unwrap();
    writeln!(out, "n 6").unwrap();
    writeln!(out, "k 3").unwrap();
    writeln!(out, "M {}", code.len()).unwrap();
    writeln!(out, "construction {construction}").unwrap();
    writeln!(out, "records").unwrap();
    for plane in &code.planes {
        let rows: Vec<String> = rows_of(&plane.space)
            .iter()
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        let tag = plane.provenance.map_or("-", Provenance::tag);
        writeln!(out, "{} {tag}", rows.join(" / ")).unwrap();
    }
    out
}

pub fn write_json(f: &FieldSpec, code: &Code, construction: &str) -> String {
    let file = JsonFile {
        format: FORMAT_TAG.into(),
        version: FORMAT_VERSION,
        q: f.order(),
        p: f.characteristic(),
        ext_degree: f.degree(),
        modulus: f.modulus().to_vec(),
        n: 6,
        k: 3,
        m: code.len(),
        construction: construction.into(),
        records: code
            .planes
            .iter()
            .map(|p| JsonRecord {
                rows: rows_of(&p.space),
                provenance: p.provenance,
            })
            .collect(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("serializable");
    s.push('\n');
    s
}

pub fn write(f: &FieldSpec, code: &Code, construction: &str, format: Format) -> String {
    match format {
        Format::Text => write_text(f, code, construction),
        Format::Json => write_json(f, code, construction),
    }
}

/// Rebuilds the field from the header, rejecting moduli other than the
/// library's own.
fn field_from_header(q: u32, p: u32, k: u32, modulus: &[u32]) -> Result<FieldSpec, CodeFileError> {
    let f = FieldSpec::with_order(q).map_err(|e| CodeFileError::Invalid(e.to_string()))?;
    if f.characteristic() != p || f.degree() != k {
        return Err(CodeFileError::Invalid(format!("q = {q} is not {p}^{k}")));
    }
    if f.modulus() != modulus {
        return Err(CodeFileError::Invalid(format!(
            "unsupported modulus {modulus:?} for GF({q}), expected {:?}",
            f.modulus()
        )));
    }
    Ok(f)
}

fn plane_from_rows(f: &FieldSpec, rows: &[[u32; 6]; 3]) -> Result<Subspace<6>, String> {
    let mut m = [[Elem::ZERO; 6]; 3];
    for (r, row) in rows.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            if v >= f.order() {
                return Err(format!("entry {v} is not an element of GF({})", f.order()));
            }
            m[r][c] = Elem(v);
        }
    }
    let s = Subspace::span(f, &m);
    if s.rank() != 3 {
        return Err("rows do not span a plane".into());
    }
    if s.basis() != &m[..] {
        return Err("rows are not in reduced echelon form".into());
    }
    Ok(s)
}

fn assemble(
    f: FieldSpec,
    declared_m: usize,
    construction: String,
    planes: Vec<CodePlane>,
) -> Result<CodeFile, CodeFileError> {
    if planes.len() != declared_m {
        return Err(CodeFileError::Invalid(format!(
            "header declares M = {declared_m}, found {} records",
            planes.len()
        )));
    }
    if planes.windows(2).any(|w| w[0].space > w[1].space) {
        return Err(CodeFileError::Invalid("records are not sorted".into()));
    }
    let code = Code {
        q: f.order(),
        planes,
    };
    Ok(CodeFile {
        field: f,
        code,
        construction,
    })
}

pub fn parse_text(text: &str) -> Result<CodeFile, CodeFileError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
    let mut header = |key: &str| -> Result<(usize, String), CodeFileError> {
        let (no, line) = lines
            .next()
            .ok_or_else(|| parse_err(0, format!("missing '{key}' line")))?;
        let rest = line
            .strip_prefix(key)
            .and_then(|r| r.strip_prefix(' ').or((r.is_empty()).then_some(r)))
            .ok_or_else(|| parse_err(no, format!("expected '{key}'")))?;
        Ok((no, rest.trim().to_string()))
    };
    let num = |(no, s): (usize, String)| -> Result<u32, CodeFileError> {
        s.parse()
            .map_err(|_| parse_err(no, format!("'{s}' is not a number")))
    };
    let version = num(header(FORMAT_TAG)?)?;
    if version != FORMAT_VERSION {
        return Err(parse_err(1, format!("unsupported version {version}")));
    }
    let q = num(header("q")?)?;
    let p = num(header("p")?)?;
    let k = num(header("ext_degree")?)?;
    let (no, m) = header("modulus")?;
    let modulus: Vec<u32> = m
        .split_whitespace()
        .map(|t| {
            t.parse()
                .map_err(|_| parse_err(no, format!("bad modulus entry '{t}'")))
        })
        .collect::<Result<_, _>>()?;
    let n = header("n")?;
    let kk = header("k")?;
    if n.1 != "6" || kk.1 != "3" {
        return Err(parse_err(n.0, "only n = 6, k = 3 is supported"));
    }
    let declared = num(header("M")?)? as usize;
    let construction = header("construction")?.1;
    header("records")?;
    let f = field_from_header(q, p, k, &modulus)?;

    let mut planes = Vec::with_capacity(declared);
    for (no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let mut toks = line.split_whitespace().filter(|t| *t != "/");
        let mut rows = [[0u32; 6]; 3];
        for slot in rows.iter_mut().flatten() {
            let t = toks
                .next()
                .ok_or_else(|| parse_err(no, "record has fewer than 18 entries"))?;
            *slot = t
                .parse()
                .map_err(|_| parse_err(no, format!("'{t}' is not a number")))?;
        }
        let provenance = match toks.next() {
            None | Some("-") => None,
            Some(t) => Some(
                Provenance::from_tag(t)
                    .ok_or_else(|| parse_err(no, format!("unknown tag '{t}'")))?,
            ),
        };
        if toks.next().is_some() {
            return Err(parse_err(no, "trailing tokens"));
        }
        if line.matches('/').count() != 2 {
            return Err(parse_err(no, "expected three rows separated by '/'"));
        }
        let space = plane_from_rows(&f, &rows).map_err(|e| parse_err(no, e))?;
        planes.push(CodePlane {
            space,
            provenance,
            params: None,
        });
    }
    assemble(f, declared, construction, planes)
}

pub fn parse_json(text: &str) -> Result<CodeFile, CodeFileError> {
    let file: JsonFile = serde_json::from_str(text)?;
    if file.format != FORMAT_TAG || file.version != FORMAT_VERSION {
        return Err(CodeFileError::Invalid(format!(
            "unsupported format {} {}",
            file.format, file.version
        )));
    }
    if file.n != 6 || file.k != 3 {
        return Err(CodeFileError::Invalid(
            "only n = 6, k = 3 is supported".into(),
        ));
    }
    let f = field_from_header(file.q, file.p, file.ext_degree, &file.modulus)?;
    let planes = file
        .records
        .iter()
        .enumerate()
        .map(|(i, r)| {
            Ok(CodePlane {
                space: plane_from_rows(&f, &r.rows)
                    .map_err(|e| CodeFileError::Invalid(format!("record {i}: {e}")))?,
                provenance: r.provenance,
                params: None,
            })
        })
        .collect::<Result<_, CodeFileError>>()?;
    assemble(f, file.m, file.construction, planes)
}

/// Detects the format from the first non-blank character.
pub fn parse(text: &str) -> Result<CodeFile, CodeFileError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_text(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use veronese_codes::construction::{build_code, Geometry};

    fn q2() -> (Geometry, Code) {
        let g = Geometry::new(2).unwrap();
        let c = build_code(&g).unwrap();
        (g, c)
    }

    #[test]
    fn text_layout() {
        let (g, c) = q2();
        let s = write_text(g.f(), &c, CONSTRUCTION_TAG);
        let lines: Vec<&str> = s.lines().collect();
        assert_eq!(lines[0], "vcodes-code 1");
        assert_eq!(lines[4], "modulus 0 1");
        assert_eq!(lines[7], "M 43");
        assert_eq!(lines.len(), 10 + 43);
        assert!(lines[10].split(" / ").count() == 3);
    }

    #[test]
    fn round_trips() {
        let (g, c) = q2();
        for fmt in [Format::Text, Format::Json] {
            let s = write(g.f(), &c, CONSTRUCTION_TAG, fmt);
            let back = parse(&s).unwrap();
            assert_eq!(back.code.spaces(), c.spaces());
            assert_eq!(write(&back.field, &back.code, &back.construction, fmt), s);
        }
    }

    #[test]
    fn rejects_malformed_input() {
        let (g, c) = q2();
        let s = write_text(g.f(), &c, CONSTRUCTION_TAG);
        let bad_m = s.replace("M 43", "M 44");
        assert!(matches!(parse(&bad_m), Err(CodeFileError::Invalid(_))));
        let bad_entry = s.replacen("1 0 0", "1 0 5", 1);
        assert!(parse(&bad_entry).is_err());
        let bad_version = s.replace("vcodes-code 1", "vcodes-code 9");
        assert!(matches!(
            parse(&bad_version),
            Err(CodeFileError::Parse { line: 1, .. })
        ));
        let mut lines: Vec<&str> = s.lines().collect();
        lines.swap(10, 11);
        assert!(parse(&lines.join("\n")).is_err());
        assert!(parse("{").is_err());
        let bad_tag = s.replacen(" C\n", " Z\n", 1);
        assert!(parse(&bad_tag).is_err());
    }
}
