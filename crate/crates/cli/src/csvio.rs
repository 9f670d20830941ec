//! Matrix CSV format: plain comma-separated numeric rows, or a `#labels`
//! directive line followed by a header row (leading cell ignored) and
//! row-labelled lines.

use fuzzy_models::matrix::Matrix;

use crate::error::{CliError, CliResult};

pub fn parse_matrix_csv(text: &str) -> CliResult<Matrix> {
    let mut lines = text
        .lines()
        .map(str::trim_end)
        .filter(|l| !l.is_empty())
        .peekable();
    let labelled = lines.peek().map(|l| l.trim() == "#labels").unwrap_or(false);
    if labelled {
        lines.next();
    }

    let mut col_labels: Option<Vec<String>> = None;
    let mut row_labels: Vec<String> = Vec::new();
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width: Option<usize> = None;

    for (line_no, line) in lines.enumerate() {
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        if labelled && line_no == 0 {
            col_labels = Some(cells.iter().skip(1).map(|s| s.to_string()).collect());
            continue;
        }
        let row_no = rows.len() + 1;
        let numeric = if labelled {
            row_labels.push(cells[0].to_string());
            &cells[1..]
        } else {
            &cells[..]
        };
        if let Some(w) = width {
            if numeric.len() != w {
                return Err(CliError::usage(format!(
                    "ragged matrix: row {row_no} has {} cells, expected {w}",
                    numeric.len()
                )));
            }
        } else {
            if numeric.is_empty() {
                return Err(CliError::usage(format!("row {row_no} has no cells")));
            }
            width = Some(numeric.len());
        }
        let mut parsed = Vec::with_capacity(numeric.len());
        for (col_no, cell) in numeric.iter().enumerate() {
            let value: f64 = cell.parse().map_err(|_| {
                CliError::usage(format!(
                    "non-numeric cell {cell:?} at row {row_no}, column {}",
                    col_no + 1
                ))
            })?;
            parsed.push(value);
        }
        rows.push(parsed);
    }
    if rows.is_empty() {
        return Err(CliError::usage("matrix file has no data rows".to_string()));
    }
    let matrix = Matrix::from_rows(&rows).map_err(CliError::model)?;
    if labelled {
        let cols = col_labels.filter(|l| l.iter().any(|s| !s.is_empty()));
        matrix
            .with_labels(Some(row_labels), cols)
            .map_err(CliError::model)
    } else {
        Ok(matrix)
    }
}

pub fn matrix_to_csv(m: &Matrix) -> String {
    let mut out = String::new();
    let labelled = m.row_labels().is_some() || m.col_labels().is_some();
    if labelled {
        out.push_str("#labels\n");
        out.push(',');
        let cols: Vec<String> = match m.col_labels() {
            Some(l) => l.to_vec(),
            None => (1..=m.cols()).map(|j| format!("c{j}")).collect(),
        };
        out.push_str(&cols.join(","));
        out.push('\n');
    }
    for i in 0..m.rows() {
        if labelled {
            let label = m
                .row_labels()
                .map(|l| l[i].clone())
                .unwrap_or_else(|| format!("r{}", i + 1));
            out.push_str(&label);
            out.push(',');
        }
        let cells: Vec<String> = m.row(i).iter().map(|v| format_number(*v)).collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// Shortest representation that round-trips the value.
pub fn format_number(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        let mut s = format!("{v}");
        if let Ok(back) = s.parse::<f64>() {
            if back != v {
                s = format!("{v:.17}");
            }
        }
        s
    }
}

/// A vector file: a single-row or single-column matrix CSV.
pub fn parse_vector_csv(text: &str) -> CliResult<Vec<f64>> {
    let m = parse_matrix_csv(text)?;
    if m.rows() == 1 {
        Ok(m.row(0).to_vec())
    } else if m.cols() == 1 {
        Ok(m.data().to_vec())
    } else {
        Err(CliError::usage(format!(
            "expected a vector (one row or one column), found {}x{}",
            m.rows(),
            m.cols()
        )))
    }
}

pub fn read_matrix(path: &std::path::Path) -> CliResult<Matrix> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix_csv(&text)
}

pub fn read_vector(path: &std::path::Path) -> CliResult<Vec<f64>> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    parse_vector_csv(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_plain_matrix() {
        let m = parse_matrix_csv("0,1\n1,0\n").unwrap();
        assert_eq!(m.shape(), (2, 2));
        assert_eq!(m.data(), &[0.0, 1.0, 1.0, 0.0]);
    }

    #[test]
    fn parses_labelled_matrix() {
        let m = parse_matrix_csv("#labels\n,a,b\nr1,0.5,1\n").unwrap();
        assert_eq!(m.shape(), (1, 2));
        assert_eq!(m.row_labels(), Some(&["r1".to_string()][..]));
        assert_eq!(
            m.col_labels(),
            Some(&["a".to_string(), "b".to_string()][..])
        );
    }

    #[test]
    fn ragged_row_is_an_error_with_row_number() {
        let err = parse_matrix_csv("0,1\n1\n").unwrap_err();
        assert!(err.to_string().contains("row 2"), "{err}");
    }

    #[test]
    fn non_numeric_cell_reports_coordinates() {
        let err = parse_matrix_csv("0,1\n1,x\n").unwrap_err();
        assert!(err.to_string().contains("row 2"), "{err}");
        assert!(err.to_string().contains("column 2"), "{err}");
    }

    #[test]
    fn round_trips_through_serialisation() {
        let m = parse_matrix_csv("#labels\n,a,b\nr1,0.5,1\nr2,0.25,-3\n").unwrap();
        let again = parse_matrix_csv(&matrix_to_csv(&m)).unwrap();
        assert_eq!(m, again);

        let plain = parse_matrix_csv("0.1,0.2\n0.30000000000000004,1\n").unwrap();
        let again = parse_matrix_csv(&matrix_to_csv(&plain)).unwrap();
        assert_eq!(plain, again);
    }

    #[test]
    fn vector_accepts_row_or_column() {
        assert_eq!(parse_vector_csv("1,2,3\n").unwrap(), vec![1.0, 2.0, 3.0]);
        assert_eq!(parse_vector_csv("1\n2\n3\n").unwrap(), vec![1.0, 2.0, 3.0]);
        assert!(parse_vector_csv("1,2\n3,4\n").is_err());
    }
}
