//! JSON building blocks shared by the CLI reports.

use serde::Serialize;

use crate::rational::{to_significant, Rational};

pub const SCHEMA: &str = "cbd-lab/1";

/// Significant digits of the convenience decimal fields.
pub const DECIMAL_DIGITS: u32 = 12;

/// Serializes a [`Rational`] as its exact `num/den` string.
pub mod rational_str {
    use serde::Serializer;

    use crate::rational::Rational;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }
}

/// An exact value together with a rounded decimal for human consumption.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExactValue {
    pub exact: String,
    pub decimal: f64,
}

impl From<&Rational> for ExactValue {
    fn from(x: &Rational) -> Self {
        Self {
            exact: x.to_string(),
            decimal: to_significant(x, DECIMAL_DIGITS),
        }
    }
}

pub fn exact_strings(xs: &[Rational]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}
