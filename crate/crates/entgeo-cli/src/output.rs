//! CSV output with `#` metadata comments. The whole file is assembled in
//! memory and written in one shot, so failed runs leave nothing behind;
//! apart from the `# generated_unix` line the bytes depend only on the
//! run configuration.

use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

pub struct OutputFile {
    path: PathBuf,
    lines: Vec<String>,
}

impl OutputFile {
    pub fn new(path: &Path) -> Self {
        let stamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0);
        let lines = vec![
            format!("# entgeo v{}", env!("CARGO_PKG_VERSION")),
            format!("# generated_unix: {stamp}"),
        ];
        Self {
            path: path.to_path_buf(),
            lines,
        }
    }

    /// Appends one `# key=value ...` metadata comment.
    pub fn meta(&mut self, text: impl AsRef<str>) {
        self.lines.push(format!("# {}", text.as_ref()));
    }

    pub fn line(&mut self, text: impl AsRef<str>) {
        self.lines.push(text.as_ref().to_string());
    }

    pub fn write(self) -> std::io::Result<()> {
        std::fs::write(&self.path, self.lines.join("\n") + "\n")
    }
}
