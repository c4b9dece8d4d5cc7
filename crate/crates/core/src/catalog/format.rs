//! Line-oriented structure-constant files.
//!
//! ```text
//! # comments start with '#'
//! leibniz-algebra 1
//! dim 6
//! basis e f h x0 x1 x2
//! grading 0 0 0 1 1 1
//! product 3 0 2 -2/1
//! ```
//!
//! `product i j k c` means `[b_i, b_j]` has coefficient `c` on `b_k`.
//! Coefficients are exact rationals `p/q` (or bare integers) in lowest terms
//! and must be nonzero; each `(i, j, k)` may appear once. The `grading`
//! line is optional. [`save`] writes records sorted by `(i, j, k)` with
//! every coefficient as `p/q`, so saving is a pure function of the algebra.

use std::fmt::Write as _;
use std::path::Path;

use crate::algebra::{AlgebraStructure, Grading};
use crate::error::FormatError;
use crate::linalg::Rational;

pub const MAGIC: &str = "leibniz-algebra";
pub const VERSION: u32 = 1;
/// Largest dimension accepted from a file.
pub const MAX_FILE_DIM: usize = 4096;

/// Parsed contents of an algebra file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraFile {
    pub algebra: AlgebraStructure,
    pub grading: Option<Grading>,
}

pub fn to_text(a: &AlgebraStructure, grading: Option<&Grading>) -> String {
    let mut s = String::new();
    writeln!(s, "{MAGIC} {VERSION}").unwrap();
    writeln!(s, "dim {}", a.dim()).unwrap();
    writeln!(s, "basis {}", a.labels().join(" ")).unwrap();
    if let Some(g) = grading {
        let d: Vec<String> = g.degrees().iter().map(|d| d.to_string()).collect();
        writeln!(s, "grading {}", d.join(" ")).unwrap();
    }
    for (i, j, k, c) in a.nonzero_products() {
        writeln!(s, "product {i} {j} {k} {c}").unwrap();
    }
    s
}

pub fn save(a: &AlgebraStructure, grading: Option<&Grading>, path: impl AsRef<Path>) -> Result<(), FormatError> {
    std::fs::write(path, to_text(a, grading))?;
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<AlgebraFile, FormatError> {
    let text = std::fs::read_to_string(path)?;
    parse(&text)
}

fn err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse { line, message: message.into() }
}

pub fn parse(text: &str) -> Result<AlgebraFile, FormatError> {
    let mut header = false;
    let mut dim: Option<usize> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut grading: Option<Grading> = None;
    let mut records: Vec<(usize, usize, usize, Rational)> = Vec::new();
    let mut seen = std::collections::HashSet::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let keyword = fields.next().unwrap();
        let rest: Vec<&str> = fields.collect();
        if !header {
            if keyword != MAGIC {
                return Err(err(line_no, format!("expected header '{MAGIC} {VERSION}'")));
            }
            match rest.as_slice() {
                [v] if *v == VERSION.to_string() => header = true,
                _ => return Err(err(line_no, format!("unsupported format version, expected {VERSION}"))),
            }
            continue;
        }
        match keyword {
            "dim" => {
                if dim.is_some() {
                    return Err(err(line_no, "repeated 'dim' line"));
                }
                let [n] = rest.as_slice() else {
                    return Err(err(line_no, "expected 'dim <n>'"));
                };
                let n: usize = n.parse().map_err(|_| err(line_no, format!("invalid dimension {n:?}")))?;
                if n > MAX_FILE_DIM {
                    return Err(FormatError::DimensionOverflow(n));
                }
                dim = Some(n);
            }
            "basis" => {
                let n = dim.ok_or_else(|| err(line_no, "'basis' before 'dim'"))?;
                if labels.is_some() {
                    return Err(err(line_no, "repeated 'basis' line"));
                }
                if rest.len() != n {
                    return Err(err(line_no, format!("expected {n} basis labels, found {}", rest.len())));
                }
                let mut uniq = rest.clone();
                uniq.sort_unstable();
                uniq.dedup();
                if uniq.len() != rest.len() {
                    return Err(err(line_no, "basis labels must be distinct"));
                }
                labels = Some(rest.iter().map(|s| s.to_string()).collect());
            }
            "grading" => {
                let n = dim.ok_or_else(|| err(line_no, "'grading' before 'dim'"))?;
                if grading.is_some() {
                    return Err(err(line_no, "repeated 'grading' line"));
                }
                if rest.len() != n {
                    return Err(err(line_no, format!("expected {n} degrees, found {}", rest.len())));
                }
                let degrees = rest
                    .iter()
                    .map(|d| d.parse::<i32>().map_err(|_| err(line_no, format!("invalid degree {d:?}"))))
                    .collect::<Result<Vec<_>, _>>()?;
                grading = Some(Grading::new(degrees));
            }
            "product" => {
                let n = dim.ok_or_else(|| err(line_no, "'product' before 'dim'"))?;
                let [i, j, k, c] = rest.as_slice() else {
                    return Err(err(line_no, "expected 'product <i> <j> <k> <p/q>'"));
                };
                let index = |s: &str| -> Result<usize, FormatError> {
                    let v: usize = s.parse().map_err(|_| err(line_no, format!("invalid index {s:?}")))?;
                    if v >= n {
                        return Err(err(line_no, format!("index {v} out of range for dimension {n}")));
                    }
                    Ok(v)
                };
                let (i, j, k) = (index(i)?, index(j)?, index(k)?);
                let c: Rational = c.parse().map_err(|e| err(line_no, format!("{e}")))?;
                if c.is_zero() {
                    return Err(err(line_no, "zero coefficients are not stored"));
                }
                if !seen.insert((i, j, k)) {
                    return Err(FormatError::Duplicate { line: line_no, left: i, right: j, result: k });
                }
                records.push((i, j, k, c));
            }
            other => return Err(err(line_no, format!("unknown record type {other:?}"))),
        }
    }
    if !header {
        return Err(err(0, "empty file"));
    }
    let n = dim.ok_or_else(|| err(0, "missing 'dim' line"))?;
    let labels = labels.unwrap_or_else(|| (0..n).map(|i| format!("b{i}")).collect());
    let algebra = AlgebraStructure::new(labels, records).map_err(|e| err(0, e.to_string()))?;
    Ok(AlgebraFile { algebra, grading })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::simple_leibniz_sl2;

    #[test]
    fn round_trip_l2() {
        let (l2, g) = simple_leibniz_sl2(2).unwrap();
        let text = to_text(&l2, Some(&g));
        let parsed = parse(&text).unwrap();
        assert_eq!(parsed.algebra, l2);
        assert_eq!(parsed.grading.as_ref(), Some(&g));
        assert_eq!(to_text(&parsed.algebra, parsed.grading.as_ref()), text);
    }

    #[test]
    fn save_and_load_files() {
        let (l3, g) = simple_leibniz_sl2(3).unwrap();
        let dir = std::env::temp_dir().join(format!("leibniz-format-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("l3.alg");
        save(&l3, Some(&g), &path).unwrap();
        let back = load(&path).unwrap();
        assert_eq!(back.algebra, l3);
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn grading_is_optional() {
        let f = parse("leibniz-algebra 1\ndim 1\nbasis a\n").unwrap();
        assert!(f.grading.is_none());
        assert_eq!(f.algebra.dim(), 1);
    }

    #[test]
    fn rejects_non_reduced_coefficients() {
        let e = parse("leibniz-algebra 1\ndim 1\nproduct 0 0 0 4/2\n").unwrap_err();
        assert!(matches!(e, FormatError::Parse { line: 3, .. }), "{e}");
    }

    #[test]
    fn rejects_duplicates_and_bad_records() {
        let dup = "leibniz-algebra 1\ndim 2\nproduct 0 1 1 1\nproduct 0 1 1 2\n";
        assert!(matches!(parse(dup), Err(FormatError::Duplicate { line: 4, .. })));
        let range = "leibniz-algebra 1\ndim 2\nproduct 0 2 1 1\n";
        assert!(matches!(parse(range), Err(FormatError::Parse { line: 3, .. })));
        assert!(matches!(parse("leibniz-algebra 1\ndim 5000\n"), Err(FormatError::DimensionOverflow(5000))));
        assert!(parse("leibniz-algebra 2\ndim 1\n").is_err());
        assert!(parse("dim 1\n").is_err());
        assert!(parse("leibniz-algebra 1\ndim 1\nproduct 0 0 0 0\n").is_err());
        assert!(parse("leibniz-algebra 1\ndim 2\nbasis a a\n").is_err());
    }
}
