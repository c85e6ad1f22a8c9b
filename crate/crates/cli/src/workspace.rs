use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use qvdomain::io::{build, to_document, Document, Object, Resolver};
use qvdomain::{ClosureSpace, Error, Limits, Result};

/// Named registry of validated objects, persisted as one JSON document per
/// name inside a directory.
pub struct Workspace {
    root: PathBuf,
    pub limits: Limits,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
        && !name.starts_with('.')
}

impl Workspace {
    pub fn open(root: &Path, limits: Limits) -> Self {
        Workspace {
            root: root.to_path_buf(),
            limits,
        }
    }

    pub fn reports_dir(&self) -> Result<PathBuf> {
        let dir = self.root.join("reports");
        fs::create_dir_all(&dir).map_err(|e| Error::Format(format!("{}: {e}", dir.display())))?;
        Ok(dir)
    }

    fn path(&self, name: &str) -> Result<PathBuf> {
        if !valid_name(name) {
            return Err(Error::structural(format!(
                "`{name}` is not a valid object name (letters, digits, '-', '_', '.')"
            )));
        }
        Ok(self.root.join(format!("{name}.json")))
    }

    pub fn document(&self, name: &str) -> Result<Document> {
        let path = self.path(name)?;
        let text = fs::read_to_string(&path).map_err(|_| Error::UnknownLabel {
            label: name.to_string(),
            context: format!("workspace {}", self.root.display()),
        })?;
        Document::parse(&text)
    }

    pub fn get(&self, name: &str) -> Result<Object> {
        build(&self.document(name)?, self, &self.limits)
    }

    /// Stores a validated object. Relations and maps are stored with their
    /// spaces inlined so that every file is self-contained.
    pub fn put(&self, name: &str, obj: &Object) -> Result<PathBuf> {
        let path = self.path(name)?;
        fs::create_dir_all(&self.root).map_err(|e| Error::Format(format!("{}: {e}", self.root.display())))?;
        let doc = to_document(obj, None)?;
        fs::write(&path, doc.to_json()).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
        Ok(path)
    }
}

impl Resolver for Workspace {
    fn space(&self, name: &str) -> Result<Arc<ClosureSpace>> {
        match self.get(name)? {
            Object::ClosureSpace(s) => Ok(s),
            other => Err(Error::structural(format!(
                "`{name}` is a {}, expected a closure-space",
                other.kind()
            ))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_restricted() {
        assert!(valid_name("chain-2"));
        assert!(valid_name("S_1.v2"));
        assert!(!valid_name("../x"));
        assert!(!valid_name(".hidden"));
        assert!(!valid_name(""));
    }
}
