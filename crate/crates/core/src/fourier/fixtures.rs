use serde::Serialize;

use crate::linalg::{parse_rational, Rational, RationalMatrix};

/// Expected invariant attached to a fixture.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Det(String),
    Rank(usize),
    Invertible,
}

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub matrix: RationalMatrix,
    pub expect: Expectation,
}

impl Fixture {
    pub fn expected_det(&self) -> Option<Rational> {
        match &self.expect {
            Expectation::Det(s) => Some(parse_rational(s).expect("fixture determinant")),
            _ => None,
        }
    }

    /// Whether the stored matrix satisfies its expectation.
    pub fn holds(&self) -> bool {
        match &self.expect {
            Expectation::Det(_) => self.matrix.det().ok() == self.expected_det(),
            Expectation::Rank(r) => self.matrix.rank() == *r,
            Expectation::Invertible => self.matrix.rows() == self.matrix.cols() && self.matrix.rank() == self.matrix.rows(),
        }
    }
}

fn parse(rows: &[&str]) -> RationalMatrix {
    RationalMatrix::from_rows(
        rows.iter()
            .map(|r| r.split_whitespace().map(|c| parse_rational(c).expect("fixture entry")).collect())
            .collect(),
    )
    .expect("rectangular fixture")
}

/// The eight explicit matrices, entries as printed.
pub fn reference_fixtures() -> Vec<Fixture> {
    vec![
        Fixture { name: "M1", matrix: parse(&["1/2 1/2", "1/2 -1/2", "1/2 1/2"]), expect: Expectation::Rank(2) },
        Fixture {
            name: "M2",
            matrix: parse(&["1/6 1/2 1/3 1/3", "1/2 1/2 0 0", "1/3 0 2/3 -1/3", "1/3 0 -1/3 2/3"]),
            expect: Expectation::Det("-1/6".into()),
        },
        Fixture {
            name: "M3",
            matrix: parse(&["1/2 1/2 1/2", "1/2 1/2 -1/2", "1/2 -1/2 1/2"]),
            expect: Expectation::Det("-1/2".into()),
        },
        Fixture {
            name: "M4",
            matrix: parse(&[
                "1/24 1/8 1/8 1/12 1/4 1/4 1/8 1/8 1/8 1/3 1/4",
                "1/8 3/8 3/8 1/4 1/4 1/4 -1/8 -1/8 -1/8 0 -1/4",
                "1/8 3/8 3/8 1/4 -1/4 -1/4 -1/8 -1/8 -1/8 0 1/4",
                "1/12 1/4 1/4 1/6 0 0 1/4 1/4 1/4 -1/3 0",
                "1/4 1/4 -1/4 0 1/2 0 1/4 1/4 -1/4 0 0",
                "1/4 1/4 -1/4 0 0 1/2 -1/4 -1/4 1/4 0 0",
                "1/8 -1/8 -1/8 1/4 1/4 -1/4 3/8 -1/8 3/8 0 1/4",
                "1/8 -1/8 -1/8 1/4 1/4 -1/4 -1/8 3/8 -1/8 0 -1/4",
                "1/8 -1/8 -1/8 1/4 -1/4 1/4 3/8 -1/8 3/8 0 -1/4",
                "1/3 0 0 -1/3 0 0 0 0 0 2/3 0",
                "1/4 -1/4 1/4 0 0 0 1/4 -1/4 -1/4 0 1/2",
            ]),
            expect: Expectation::Det("1/192".into()),
        },
        Fixture {
            name: "M5",
            matrix: parse(&[
                "1/6 1/2 1/3 1/3 1/6",
                "1/2 1/2 0 0 -1/2",
                "1/3 0 2/3 -1/3 1/3",
                "1/3 0 -1/3 2/3 1/3",
                "1/6 -1/2 1/3 1/3 1/6",
            ]),
            expect: Expectation::Det("1/6".into()),
        },
        Fixture {
            name: "M6",
            matrix: parse(&["1/2 1/2 1/2 1/2", "1/2 1/2 -1/2 -1/2", "1/2 -1/2 1/2 -1/2", "1/2 -1/2 -1/2 1/2"]),
            expect: Expectation::Invertible,
        },
        Fixture {
            name: "M7",
            matrix: parse(&[
                "2/3 1/3 0 0 -1/3",
                "1/3 1/6 -1/2 -1/2 1/3",
                "0 -1/2 1/2 -1/2 0",
                "0 -1/2 -1/2 1/2 0",
                "-1/3 1/3 0 0 2/3",
            ]),
            expect: Expectation::Det("-1/6".into()),
        },
        Fixture { name: "M8", matrix: parse(&["1/2 1/2", "1/2 1/2"]), expect: Expectation::Rank(1) },
    ]
}

pub fn fixture(name: &str) -> Option<Fixture> {
    reference_fixtures().into_iter().find(|f| f.name.eq_ignore_ascii_case(name))
}
