//! CSV output. Comma separated, `\n` endings, header row mandatory, floats
//! printed with 12 significant digits so reruns are byte-identical.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use crate::CliError;

/// A float field with 12 significant digits.
pub fn float_field(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    format!("{x:.11e}")
}

/// An integer field.
pub fn int_field(x: u32) -> String {
    x.to_string()
}

pub struct CsvFile {
    path: PathBuf,
    writer: BufWriter<File>,
}

impl CsvFile {
    pub fn create(dir: &Path, name: &str, header: &str) -> Result<Self, CliError> {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
        let path = dir.join(name);
        let file = File::create(&path)
            .map_err(|e| CliError::Io(format!("cannot create {}: {e}", path.display())))?;
        let mut writer = BufWriter::new(file);
        writer
            .write_all(header.as_bytes())
            .and_then(|_| writer.write_all(b"\n"))
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))?;
        Ok(Self { path, writer })
    }

    pub fn row(&mut self, fields: &[String]) -> Result<(), CliError> {
        let line = fields.join(",");
        self.writer
            .write_all(line.as_bytes())
            .and_then(|_| self.writer.write_all(b"\n"))
            .map_err(|e| CliError::Io(format!("cannot write {}: {e}", self.path.display())))
    }

    pub fn finish(mut self) -> Result<(), CliError> {
        self.writer
            .flush()
            .map_err(|e| CliError::Io(format!("cannot flush {}: {e}", self.path.display())))
    }
}

/// Writes a whole text file (SVG, diagnostics).
pub fn write_text(dir: &Path, name: &str, content: &str) -> Result<(), CliError> {
    std::fs::create_dir_all(dir)
        .map_err(|e| CliError::Io(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, content)
        .map_err(|e| CliError::Io(format!("cannot write {}: {e}", path.display())))
}
