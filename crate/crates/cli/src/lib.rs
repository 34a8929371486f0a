//! Library side of the `ijac` command: record types, subcommand drivers and
//! table rendering.

pub mod commands;
pub mod record;
pub mod table;
