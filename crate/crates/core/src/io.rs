//! Flat text formats.
//!
//! QC code: first line `q m ell`, then one generator per line as `ell` `;`-separated
//! coefficient lists (`1,1,0,1` is `1 + x + x^3`). Convolutional encoder: first line
//! `q ell`, then one row per line in the same syntax. Matrix: first line `p e n`, then
//! one row per line with `n` whitespace-separated elements written `(c0,c1,...)`.
//! `#` starts a comment everywhere. Columns in errors are 1-based character offsets.

use crate::convolutional::ConvolutionalCode;
use crate::error::{Error, Result};
use crate::galois::Field;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::qc::QcCode;

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

/// Non-blank lines with comments stripped, as `(line number, text)`.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            None
        } else {
            Some((i + 1, body))
        }
    })
}

/// Whitespace-separated tokens with their 1-based columns.
fn tokens(s: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in s.char_indices() {
        match (ch.is_whitespace(), start) {
            (true, Some(b)) => {
                out.push((b + 1, &s[b..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(b) = start {
        out.push((b + 1, &s[b..]));
    }
    out
}

fn header<const N: usize>(line: usize, body: &str, names: [&str; N]) -> Result<[u64; N]> {
    let toks = tokens(body);
    if toks.len() != N {
        return Err(parse_err(line, 1, format!("header must be '{}'", names.join(" "))));
    }
    let mut out = [0u64; N];
    for (k, (col, t)) in toks.into_iter().enumerate() {
        out[k] = t.parse().map_err(|_| parse_err(line, col, format!("{} must be a nonnegative integer, got '{t}'", names[k])))?;
    }
    Ok(out)
}

fn parse_poly_at(field: &Field, line: usize, col: usize, s: &str) -> Result<Poly> {
    let mut coeffs = Vec::new();
    let mut offset = 0;
    for part in s.split(',') {
        let lead = part.len() - part.trim_start().len();
        let t = part.trim();
        let c = col + offset + lead;
        if t.is_empty() {
            return Err(parse_err(line, c, "empty coefficient"));
        }
        let v = field.parse_elem(t).map_err(|e| parse_err(line, c, e.to_string()))?;
        coeffs.push(v);
        offset += part.len() + 1;
    }
    Poly::from_coeffs(field, coeffs).map_err(|e| parse_err(line, col, e.to_string()))
}

/// One row of `ell` `;`-separated polynomials.
fn parse_row(field: &Field, ell: usize, line: usize, body: &str) -> Result<Vec<Poly>> {
    let parts: Vec<&str> = body.split(';').collect();
    if parts.len() != ell {
        return Err(parse_err(line, 1, format!("expected {ell} ';'-separated entries, found {}", parts.len())));
    }
    let mut row = Vec::with_capacity(ell);
    let mut offset = 0;
    for part in parts {
        let lead = part.len() - part.trim_start().len();
        row.push(parse_poly_at(field, line, offset + lead + 1, part.trim())?);
        offset += part.len() + 1;
    }
    Ok(row)
}

fn format_row(row: &[Poly]) -> String {
    row.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(";")
}

fn field_at(line: usize, q: u64) -> Result<Field> {
    Field::of_order(q).map_err(|e| parse_err(line, 1, e.to_string()))
}

fn usize_of(v: u64) -> usize {
    usize::try_from(v).unwrap_or(usize::MAX)
}

pub fn parse_qc(text: &str) -> Result<QcCode> {
    let mut lines = content_lines(text);
    let (hl, body) = lines.next().ok_or_else(|| parse_err(1, 1, "missing header 'q m ell'"))?;
    let [q, m, ell] = header(hl, body, ["q", "m", "ell"])?;
    let field = field_at(hl, q)?;
    let (m, ell) = (usize_of(m), usize_of(ell));
    let rows = lines.map(|(ln, body)| parse_row(&field, ell, ln, body)).collect::<Result<Vec<_>>>()?;
    QcCode::new(&field, m, ell, rows).map_err(|e| parse_err(hl, 1, e.to_string()))
}

pub fn format_qc(code: &QcCode) -> String {
    let mut out = format!("{} {} {}\n", code.field().order(), code.m(), code.ell());
    for row in code.generators() {
        out.push_str(&format_row(row));
        out.push('\n');
    }
    out
}

pub fn parse_conv(text: &str) -> Result<ConvolutionalCode> {
    let mut lines = content_lines(text);
    let (hl, body) = lines.next().ok_or_else(|| parse_err(1, 1, "missing header 'q ell'"))?;
    let [q, ell] = header(hl, body, ["q", "ell"])?;
    let field = field_at(hl, q)?;
    let ell = usize_of(ell);
    let rows = lines.map(|(ln, body)| parse_row(&field, ell, ln, body)).collect::<Result<Vec<_>>>()?;
    ConvolutionalCode::new(&field, ell, rows).map_err(|e| parse_err(hl, 1, e.to_string()))
}

pub fn format_conv(code: &ConvolutionalCode) -> String {
    let mut out = format!("{} {}\n", code.field().order(), code.ell());
    for row in code.rows() {
        out.push_str(&format_row(row));
        out.push('\n');
    }
    out
}

pub fn parse_matrix(text: &str) -> Result<Matrix> {
    let mut lines = content_lines(text);
    let (hl, body) = lines.next().ok_or_else(|| parse_err(1, 1, "missing header 'p e n'"))?;
    let [p, e, n] = header(hl, body, ["p", "e", "n"])?;
    let e = u32::try_from(e).map_err(|_| parse_err(hl, 1, "extension degree too large"))?;
    let field = Field::new(p, e).map_err(|err| parse_err(hl, 1, err.to_string()))?;
    let n = usize_of(n);
    let mut rows = Vec::new();
    for (ln, body) in lines {
        let toks = tokens(body);
        if toks.len() != n {
            return Err(parse_err(ln, 1, format!("expected {n} entries, found {}", toks.len())));
        }
        let row = toks
            .into_iter()
            .map(|(col, t)| field.parse_elem(t).map_err(|err| parse_err(ln, col, err.to_string())))
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Matrix::from_rows(&field, n, &rows).map_err(|err| parse_err(hl, 1, err.to_string()))
}

pub fn format_matrix(mat: &Matrix) -> String {
    let f = mat.field();
    let mut out = format!("{} {} {}\n", f.characteristic(), f.degree(), mat.ncols());
    for r in 0..mat.nrows() {
        let row: Vec<String> = mat.row(r).iter().map(|&a| f.format(a)).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::random_qc;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn reads_a_commented_file() {
        let text = "# cubic example\n2 3 2   # q m ell\n\n1,1;1,1\n";
        let code = parse_qc(text).unwrap();
        assert_eq!((code.m(), code.ell(), code.dimension()), (3, 2, 2));
        assert_eq!(format_qc(&code), "2 3 2\n1,1;1,1\n");
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_qc("2 3 2\n1,1; 1,7\n").unwrap_err();
        assert_eq!(err, Error::Parse { line: 2, column: 8, message: "invalid argument: 7 is not an element of GF(2^1)".into() });
        assert!(matches!(parse_qc("2 3\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_qc("2 x 2\n"), Err(Error::Parse { line: 1, column: 3, .. })));
        assert!(matches!(parse_qc("2 3 2\n1;1;1\n"), Err(Error::Parse { line: 2, column: 1, .. })));
        assert!(matches!(parse_qc("2 4 2\n1;1\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_qc(""), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn zero_polynomial_entries() {
        let code = parse_qc("3 4 2\n0;1,2\n").unwrap();
        assert_eq!(format_qc(&code), "3 4 2\n0;1,2\n");
    }

    #[test]
    fn matrix_round_trip() {
        let f = Field::of_order(4).unwrap();
        let m = Matrix::from_rows(&f, 3, &[vec![1, 2, 3], vec![0, 0, 1]]).unwrap();
        let text = format_matrix(&m);
        assert_eq!(text, "2 2 3\n(1,0) (0,1) (1,1)\n(0,0) (0,0) (1,0)\n");
        assert_eq!(parse_matrix(&text).unwrap(), m);
        let err = parse_matrix("2 2 2\n(1,0) (2,0)\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 7, .. }), "{err:?}");
    }

    #[test]
    fn conv_round_trip() {
        let text = "2 2\n1,0,1;1,1,1\n";
        let code = parse_conv(text).unwrap();
        assert_eq!(code.k(), 1);
        assert_eq!(format_conv(&code), text);
        assert_eq!(parse_conv(&format_conv(&code)).unwrap(), code);
    }

    proptest! {
        #[test]
        fn qc_files_round_trip(seed in any::<u64>(), q in prop::sample::select(vec![2u64, 3, 4]), m in prop::sample::select(vec![5usize, 7])) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let f = Field::of_order(q).unwrap();
            let code = random_qc(&mut rng, &f, m, 2, 2).unwrap();
            let back = parse_qc(&format_qc(&code)).unwrap();
            prop_assert_eq!(back.generators(), code.generators());
            prop_assert!(back.same_code(&code));
        }
    }
}
