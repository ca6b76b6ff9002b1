//! Plain-text matrix format: a first line holding the order `n`, then `n`
//! rows of whitespace-separated entries (integers or `a/b`). Blank lines and
//! lines starting with `#` are ignored.

use super::{parse_scalar, scalar_to_string, ExactError, ExactMatrix};

pub fn parse_matrix(text: &str) -> Result<ExactMatrix, ExactError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (line, header) = lines.next().ok_or(ExactError::Parse {
        line: 1,
        message: "missing order line".into(),
    })?;
    let order: usize = header.parse().map_err(|_| ExactError::Parse {
        line,
        message: format!("invalid order {header:?}"),
    })?;
    if order == 0 {
        return Err(ExactError::Parse {
            line,
            message: "order must be at least 1".into(),
        });
    }

    let mut entries = Vec::with_capacity(order * order);
    let mut last_line = line;
    for _ in 0..order {
        let (line, row) = lines.next().ok_or(ExactError::Parse {
            line: last_line + 1,
            message: format!("expected {order} rows"),
        })?;
        last_line = line;
        let tokens: Vec<&str> = row.split_whitespace().collect();
        if tokens.len() != order {
            return Err(ExactError::Parse {
                line,
                message: format!("expected {order} entries, found {}", tokens.len()),
            });
        }
        for tok in tokens {
            entries.push(parse_scalar(tok).ok_or_else(|| ExactError::Parse {
                line,
                message: format!("invalid entry {tok:?}"),
            })?);
        }
    }
    if let Some((line, _)) = lines.next() {
        return Err(ExactError::Parse {
            line,
            message: "trailing content after matrix".into(),
        });
    }
    ExactMatrix::new(order, entries)
}

pub fn format_matrix(m: &ExactMatrix) -> String {
    let mut out = format!("{}\n", m.order());
    for row in m.rows() {
        let cells: Vec<String> = row.iter().map(scalar_to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}
