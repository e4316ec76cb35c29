//! Matrix files: JSON Lines, a header line followed by one line per non-zero
//! entry in row-major order.
//!
//! ```text
//! {"format":"algdecomp-mat/1","algebra":"cl(4,1)","rows":3,"cols":2}
//! {"row":0,"col":0,"terms":[["1",0.25],["g1g2",-1.5]]}
//! ```

use std::path::Path;

use algdecomp::algebra::{AlgMatrix, Element};
use algdecomp::catalog::parse_descriptor;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const FORMAT: &str = "algdecomp-mat/1";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Header {
    format: String,
    algebra: String,
    rows: usize,
    cols: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Entry {
    row: usize,
    col: usize,
    terms: Vec<(String, f64)>,
}

pub fn to_string(a: &AlgMatrix) -> Result<String, CliError> {
    let spec = a.spec();
    let header = Header {
        format: FORMAT.into(),
        algebra: spec.descriptor().into(),
        rows: a.rows(),
        cols: a.cols(),
    };
    let mut out = serde_json::to_string(&header).expect("header serializes");
    out.push('\n');
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let e = &a[(i, j)];
            if e.is_zero() {
                continue;
            }
            let mut terms = Vec::with_capacity(e.support_len());
            for (label, c) in e.terms() {
                if !c.is_finite() {
                    return Err(CliError::Contract(format!(
                        "entry ({i},{j}) has a non-finite coefficient"
                    )));
                }
                terms.push((spec.render(label), *c));
            }
            let line = serde_json::to_string(&Entry {
                row: i,
                col: j,
                terms,
            })
            .expect("entry serializes");
            out.push_str(&line);
            out.push('\n');
        }
    }
    Ok(out)
}

pub fn from_str(text: &str, origin: &str) -> Result<AlgMatrix, CliError> {
    let fail = |line: usize, msg: String| CliError::Format {
        origin: origin.to_string(),
        line,
        msg,
    };
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l))
        .filter(|(_, l)| !l.trim().is_empty());
    let (hl, first) = lines.next().ok_or_else(|| fail(1, "empty file".into()))?;
    let header: Header =
        serde_json::from_str(first).map_err(|e| fail(hl, format!("bad header: {e}")))?;
    if header.format != FORMAT {
        return Err(fail(
            hl,
            format!("unknown format {:?}, expected {FORMAT:?}", header.format),
        ));
    }
    let spec = parse_descriptor(&header.algebra)?;
    let mut a = AlgMatrix::zeros(&spec, header.rows, header.cols)?;
    let mut seen = vec![false; header.rows * header.cols];
    for (n, line) in lines {
        let entry: Entry =
            serde_json::from_str(line).map_err(|e| fail(n, format!("bad entry: {e}")))?;
        if entry.row >= header.rows || entry.col >= header.cols {
            return Err(fail(
                n,
                format!(
                    "entry ({},{}) is outside a {}x{} matrix",
                    entry.row, entry.col, header.rows, header.cols
                ),
            ));
        }
        let slot = entry.row * header.cols + entry.col;
        if std::mem::replace(&mut seen[slot], true) {
            return Err(fail(
                n,
                format!("entry ({},{}) appears twice", entry.row, entry.col),
            ));
        }
        let mut terms = Vec::with_capacity(entry.terms.len());
        for (label, c) in &entry.terms {
            terms.push((
                spec.parse_label(label)
                    .map_err(|e| fail(n, e.to_string()))?,
                *c,
            ));
        }
        a.set(entry.row, entry.col, Element::from_terms(&spec, terms)?)?;
    }
    Ok(a)
}

pub fn read(path: &Path) -> Result<AlgMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    from_str(&text, &path.display().to_string())
}

pub fn write(path: &Path, a: &AlgMatrix) -> Result<(), CliError> {
    std::fs::write(path, to_string(a)?).map_err(|e| CliError::io(path, e))
}

#[cfg(test)]
mod tests {
    use algdecomp::catalog;
    use algdecomp::random::{gaussian_matrix, rng_from_seed};

    use super::*;

    #[test]
    fn round_trip_is_lossless() {
        for desc in ["cl(4,1)", "laurent(2)", "quadquat", "cyclic(1,8)", "real"] {
            let spec = parse_descriptor(desc).unwrap();
            let a = gaussian_matrix(&spec, 3, 2, &mut rng_from_seed(4), 2).unwrap();
            let text = to_string(&a).unwrap();
            let b = from_str(&text, "mem").unwrap();
            assert_eq!(a, b, "{desc}");
            assert_eq!(to_string(&b).unwrap(), text);
        }
    }

    #[test]
    fn omitted_entries_are_zero() {
        let text = "{\"format\":\"algdecomp-mat/1\",\"algebra\":\"quat\",\"rows\":2,\"cols\":2}\n\
                    {\"row\":1,\"col\":0,\"terms\":[[\"g1\",2.0],[\"g1\",0.5]]}\n";
        let a = from_str(text, "mem").unwrap();
        assert!(a[(0, 0)].is_zero());
        let spec = catalog::quat();
        assert_eq!(a[(1, 0)].coeff(&spec.parse_label("g1").unwrap()), 2.5);
    }

    #[test]
    fn malformed_files_name_the_line() {
        let head =
            "{\"format\":\"algdecomp-mat/1\",\"algebra\":\"cl(2,0)\",\"rows\":1,\"cols\":1}\n";
        for (body, line, needle) in [
            (
                "{\"row\":0,\"col\":0,\"terms\":[[\"g3\",1.0]]}",
                2,
                "basis label",
            ),
            ("{\"row\":0,\"col\":1,\"terms\":[]}", 2, "outside"),
            (
                "{\"row\":0,\"col\":0,\"terms\":[]}\n{\"row\":0,\"col\":0,\"terms\":[]}",
                3,
                "twice",
            ),
            ("not json", 2, "bad entry"),
        ] {
            let e = from_str(&format!("{head}{body}\n"), "f").unwrap_err();
            let msg = e.to_string();
            assert!(
                msg.starts_with(&format!("f:{line}:")) && msg.contains(needle),
                "{msg}"
            );
        }
        let e = from_str(
            "{\"format\":\"other/9\",\"algebra\":\"real\",\"rows\":1,\"cols\":1}",
            "f",
        )
        .unwrap_err();
        assert!(e.to_string().contains("unknown format"));
    }
}
