//! IO companion to the `zappatic` core: the JSON document format with
//! its canonical serialization, and the serializable report documents
//! the `zap` binary prints.

pub mod format;
pub mod report;
