//! One table file per form under the cache directory, replaced atomically.

use std::fs;
use std::path::{Path, PathBuf};

use eigenlpf::eigenform::{eigenform_table, load_table, render_table};
use eigenlpf::{CoefficientTable, Error, FormDescriptor};

use crate::config::RunConfig;
use crate::{Failure, EXIT_INVARIANT};

pub fn table_path(dir: &Path, form: FormDescriptor) -> PathBuf {
    dir.join(format!("{}.table", form.name()))
}

fn write_atomic(path: &Path, table: &CoefficientTable) -> Result<(), Failure> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir).map_err(|e| Failure::io(format!("{}: {e}", dir.display())))?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, render_table(table)).map_err(|e| Failure::io(format!("{}: {e}", tmp.display())))?;
    fs::rename(&tmp, path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn corrupt(path: &Path, e: Error) -> Failure {
    Failure {
        code: EXIT_INVARIANT,
        message: format!("{}: {e}; regenerate with `gen --force`", path.display()),
    }
}

/// Load a table covering `limit`, generating it when allowed.
pub fn ensure_table(cfg: &RunConfig, form: FormDescriptor, limit: u64) -> Result<CoefficientTable, Failure> {
    let path = table_path(&cfg.cache_dir, form);
    if path.exists() {
        let table = match load_table(&path, Some(form)) {
            Ok(t) => t,
            Err(e @ Error::Io { .. }) => return Err(e.into()),
            Err(e) => return Err(corrupt(&path, e)),
        };
        if table.limit() >= limit {
            return Ok(table);
        }
        if !cfg.autogen {
            return Err(Failure::io(format!(
                "{} covers n <= {} but {limit} is needed (autogen disabled)",
                path.display(),
                table.limit()
            )));
        }
    } else if !cfg.autogen {
        return Err(Failure::io(format!(
            "missing cache file {} (autogen disabled)",
            path.display()
        )));
    }
    let table = eigenform_table(form, limit)?;
    write_atomic(&path, &table)?;
    Ok(table)
}

pub fn cmd_gen(cfg: &RunConfig, force: bool) -> Result<u8, Failure> {
    let form = cfg.form_descriptor()?;
    let limit = cfg.x_max;
    let path = table_path(&cfg.cache_dir, form);
    if path.exists() && !force {
        match load_table(&path, Some(form)) {
            Ok(t) if t.limit() >= limit => {
                println!("up to date: {} (limit {})", path.display(), t.limit());
                return Ok(0);
            }
            Ok(_) => {}
            Err(e @ Error::Io { .. }) => return Err(e.into()),
            Err(e) => return Err(corrupt(&path, e)),
        }
    }
    let table = eigenform_table(form, limit)?;
    write_atomic(&path, &table)?;
    println!("wrote {} ({}, limit {limit})", path.display(), form.name());
    Ok(0)
}
