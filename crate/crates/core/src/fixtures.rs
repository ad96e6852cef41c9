//! Presentations bundled with the crate.

use thiserror::Error;

use crate::presentation::Presentation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown fixture `{0}`")]
pub struct UnknownFixture(pub String);

const FIXTURES: &[(&str, &str)] = &[
    ("sigma5", include_str!("../fixtures/sigma5.pres")),
    ("sl2_3", include_str!("../fixtures/sl2_3.pres")),
    ("sl2_5", include_str!("../fixtures/sl2_5.pres")),
    ("sl2_7", include_str!("../fixtures/sl2_7.pres")),
    ("z4", include_str!("../fixtures/z4.pres")),
    ("z6", include_str!("../fixtures/z6.pres")),
    ("z4_redundant", include_str!("../fixtures/z4_redundant.pres")),
    ("s3", include_str!("../fixtures/s3.pres")),
    ("klein", include_str!("../fixtures/klein.pres")),
    ("z2", include_str!("../fixtures/z2.pres")),
    ("free1", include_str!("../fixtures/free1.pres")),
    ("free2", include_str!("../fixtures/free2.pres")),
    ("free3", include_str!("../fixtures/free3.pres")),
];

pub fn fixture_names() -> impl Iterator<Item = &'static str> {
    FIXTURES.iter().map(|(n, _)| *n)
}

/// Raw text of a bundled presentation, comments included.
pub fn fixture_text(name: &str) -> Result<&'static str, UnknownFixture> {
    FIXTURES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| UnknownFixture(name.to_string()))
}

pub fn load_fixture(name: &str) -> Result<Presentation, UnknownFixture> {
    let text = fixture_text(name)?;
    Ok(Presentation::parse(text).unwrap_or_else(|e| panic!("bundled fixture {name} does not parse: {e}")))
}
