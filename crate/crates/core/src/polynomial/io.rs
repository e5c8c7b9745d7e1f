//! Polynomial file format.
//!
//! A polynomial is stored as JSON with the shape
//!
//! ```json
//! {"m": 2, "n": 2, "entries": [{"alpha": [1, 1], "re": 1.0e0, "im": 0.0e0}]}
//! ```
//!
//! Entries appear in the canonical graded-colex key order and floats are
//! written as decimal with 17 significant digits, so writing is byte-stable
//! and reading recovers every coefficient bit for bit. See
//! `docs/polynomial-format.md`.

use std::path::Path;

use num_complex::Complex64;
use serde::Deserialize;

use crate::error::Error;
use crate::multiindex::MultiIndex;

use super::HomogeneousPolynomial;

/// Formats a float as decimal with 17 significant digits, which is enough to
/// reproduce the exact bit pattern on parse.
pub fn format_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Serializes a polynomial in the canonical format.
pub fn polynomial_to_string(p: &HomogeneousPolynomial) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "{{\"m\": {}, \"n\": {}, \"entries\": [",
        p.degree(),
        p.dimension()
    ));
    for (i, (alpha, c)) in p.coefficients().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        let exps: Vec<String> = alpha.exponents().iter().map(|e| e.to_string()).collect();
        out.push_str(&format!(
            "{{\"alpha\": [{}], \"re\": {}, \"im\": {}}}",
            exps.join(", "),
            format_f64(c.re),
            format_f64(c.im)
        ));
    }
    out.push_str("]}\n");
    out
}

#[derive(Deserialize)]
struct PolynomialFile {
    m: u32,
    n: usize,
    entries: Vec<EntryFile>,
}

#[derive(Deserialize)]
struct EntryFile {
    alpha: Vec<u32>,
    re: f64,
    im: f64,
}

/// Parses the canonical format (any valid JSON spelling is accepted).
pub fn parse_polynomial(text: &str) -> Result<HomogeneousPolynomial, Error> {
    let file: PolynomialFile =
        serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let mut entries = Vec::with_capacity(file.entries.len());
    for e in file.entries {
        let alpha = MultiIndex::new(e.alpha);
        if alpha.order() != file.m {
            return Err(Error::Parse(format!(
                "entry {:?} has order {}, expected {}",
                alpha.exponents(),
                alpha.order(),
                file.m
            )));
        }
        if alpha.dimension() != file.n {
            return Err(Error::Parse(format!(
                "entry {:?} has dimension {}, expected {}",
                alpha.exponents(),
                alpha.dimension(),
                file.n
            )));
        }
        entries.push((alpha, Complex64::new(e.re, e.im)));
    }
    Ok(HomogeneousPolynomial::new(file.m, file.n, entries))
}

pub fn write_polynomial(p: &HomogeneousPolynomial, path: &Path) -> Result<(), Error> {
    Ok(std::fs::write(path, polynomial_to_string(p))?)
}

pub fn read_polynomial(path: &Path) -> Result<HomogeneousPolynomial, Error> {
    parse_polynomial(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::polynomial::{random_polynomial, CoefficientDistribution};

    #[test]
    fn round_trip_is_exact() {
        for seed in 0..5 {
            let p = random_polynomial(
                3,
                4,
                CoefficientDistribution::ComplexGaussian,
                seed,
                Budget::default(),
            )
            .unwrap();
            let text = polynomial_to_string(&p);
            let q = parse_polynomial(&text).unwrap();
            assert_eq!(p, q);
            // serialization is canonical: writing again is byte-identical
            assert_eq!(text, polynomial_to_string(&q));
        }
    }

    #[test]
    fn parse_rejects_inconsistent_entries() {
        let bad_order = r#"{"m": 2, "n": 2, "entries": [{"alpha": [1, 0], "re": 1.0, "im": 0.0}]}"#;
        assert!(parse_polynomial(bad_order).is_err());
        let bad_dim =
            r#"{"m": 2, "n": 2, "entries": [{"alpha": [1, 1, 0], "re": 1.0, "im": 0.0}]}"#;
        assert!(parse_polynomial(bad_dim).is_err());
    }

    #[test]
    fn seventeen_digit_floats_round_trip() {
        for x in [1.0 / 3.0, std::f64::consts::PI, 2.612375348685488e-7, -0.0] {
            let s = format_f64(x);
            let back: f64 = s.parse().unwrap();
            assert_eq!(back.to_bits(), x.to_bits(), "{s}");
        }
    }
}
