//! Reading and writing multiplication tables in the `.tbl` text format:
//! one `ei*ej = c0 +c1 e1 +c2 e2` line per basis pair, `#` comments.

use std::fs;
use std::path::Path;

use semifib_core::{AlgebraKind, MulTable};

use crate::error::Error;

pub fn load_table(path: &Path) -> Result<MulTable, Error> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io { path: path.to_owned(), source })?;
    Ok(MulTable::parse(&text)?)
}

pub fn save_table(path: &Path, table: &MulTable) -> Result<(), Error> {
    fs::write(path, table.to_text()).map_err(|source| Error::Io { path: path.to_owned(), source })
}

/// Loads `path` and checks that it defines the same product as `kind`'s
/// built-in table.
pub fn load_matching(path: &Path, kind: AlgebraKind) -> Result<MulTable, Error> {
    let table = load_table(path)?;
    if table != kind.table() {
        return Err(Error::Core(semifib_core::Error::Table {
            line: 0,
            msg: format!("table does not match the built-in type {kind} product"),
        }));
    }
    Ok(table)
}
