//! Model interchange format and the JSON verification report.

mod model_file;
mod report;

pub use model_file::{
    content_hash, parse_model, serialize_model, Generator, ModelFile, ParseError, SerializeError,
    HEADER,
};
pub use report::{
    emit_report, parse_report, render_text, AxiomSection, DualitySection, FlatEntry, FlatSection,
    HarmonicitySection, ModelDigest, Outcome, RuntimeInfo, SeedInfo, TripleSection,
    VerificationReport, SCHEMA_VERSION,
};
