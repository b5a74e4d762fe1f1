//! Turning command-line text and files into polynomials and corpus settings.

use std::path::Path;

use rootbound::theorems::Distribution;
use rootbound::Polynomial;

use crate::CliError;

/// Comma-separated reals. Ascending `a_0, …, a_{n-1}` with the monic term
/// implied, or with `descending` the full list from the leading
/// coefficient down, normalized by it.
pub fn parse_coeffs(text: &str, descending: bool) -> Result<Polynomial<f64>, CliError> {
    let mut values = Vec::new();
    let mut column = 1;
    for (i, item) in text.split(',').enumerate() {
        let trimmed = item.trim();
        let at = column + (item.len() - item.trim_start().len());
        let v: f64 = trimmed.parse().map_err(|_| {
            CliError::Parse(format!("coefficient {} (`{trimmed}`) at column {at} is not a number", i + 1))
        })?;
        values.push(v);
        column += item.len() + 1;
    }
    let poly = if descending {
        values.reverse();
        Polynomial::make_monic(&values)
    } else {
        Polynomial::new(values)
    };
    poly.map_err(CliError::from)
}

fn json_error(path: &Path, e: serde_json::Error) -> CliError {
    CliError::Parse(format!("{}: line {}, column {}: {e}", path.display(), e.line(), e.column()))
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// One polynomial object: `{"coeffs": [...]}` or `{"full": [...]}`.
pub fn read_poly(path: &Path) -> Result<Polynomial<f64>, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| json_error(path, e))
}

/// A JSON array of polynomial objects.
pub fn read_corpus(path: &Path) -> Result<Vec<Polynomial<f64>>, CliError> {
    serde_json::from_str(&read(path)?).map_err(|e| json_error(path, e))
}

/// `3..7` and `3..=7` (both inclusive), `3,5,8`, or a single degree.
pub fn parse_degrees(text: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Usage(format!("cannot read degrees from `{text}`"));
    let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    if let Some((lo, hi)) = text.split_once("..") {
        let (lo, hi) = (num(lo)?, num(hi.trim_start_matches('='))?);
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    text.split(',').map(num).collect()
}

/// `uniform:A`, `integer:K` or `examples`, comma-separated.
pub fn parse_distributions(text: &str) -> Result<Vec<Distribution>, CliError> {
    text.split(',')
        .map(|item| {
            let item = item.trim();
            let bad = || CliError::Usage(format!("unknown distribution `{item}`"));
            match item.split_once(':') {
                Some(("uniform", a)) => a.parse().map(Distribution::Uniform).map_err(|_| bad()),
                Some(("integer", k)) => k.parse().map(Distribution::Integer).map_err(|_| bad()),
                None if matches!(item, "examples" | "paper_examples") => Ok(Distribution::PaperExamples),
                _ => Err(bad()),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ascending_and_descending_agree() {
        let a = parse_coeffs("5, -5, -10, 20, 17, 1, -1, 4", false).unwrap();
        let d = parse_coeffs("1,4,-1,1,17,20,-10,-5,5", true).unwrap();
        assert_eq!(a, d);
        let scaled = parse_coeffs("2,-4,-6", true).unwrap();
        assert_eq!(scaled.coeffs(), &[-3.0, -2.0]);
    }

    #[test]
    fn bad_coefficient_reports_position() {
        let e = parse_coeffs("1, 2,x3", false).unwrap_err().to_string();
        assert!(e.contains("coefficient 3") && e.contains("column 6"), "{e}");
    }

    #[test]
    fn non_finite_rejected() {
        assert!(parse_coeffs("1,inf", false).is_err());
    }

    #[test]
    fn degree_ranges() {
        assert_eq!(parse_degrees("3..7").unwrap(), vec![3, 4, 5, 6, 7]);
        assert_eq!(parse_degrees("3..=4").unwrap(), vec![3, 4]);
        assert_eq!(parse_degrees("4,9").unwrap(), vec![4, 9]);
        assert!(parse_degrees("7..3").is_err());
    }

    #[test]
    fn distributions() {
        assert_eq!(
            parse_distributions("uniform:2.5,integer:3,examples").unwrap(),
            vec![Distribution::Uniform(2.5), Distribution::Integer(3), Distribution::PaperExamples]
        );
        assert!(parse_distributions("gauss").is_err());
    }
}
