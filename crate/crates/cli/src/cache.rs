//! Opt-in on-disk cache of evaluated automorphisms, one JSON file per genus.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use mcg_core::claims::{RunContext, Selection};
use mcg_core::{Automorphism, MappingClassWord};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize)]
struct Entry {
    word: String,
    automorphism: Automorphism,
}

fn file(dir: &Path, genus: usize) -> PathBuf {
    dir.join(format!("genus-{genus}.json"))
}

/// Seeds the run context from existing cache files. Entries are re-checked before use.
pub fn load(dir: &Path, sel: &Selection, ctx: &RunContext) -> io::Result<usize> {
    let mut accepted = 0;
    for g in sel.genus.clone().filter(|&g| g >= 3) {
        let path = file(dir, g);
        if !path.exists() {
            continue;
        }
        let entries: Vec<Entry> = serde_json::from_str(&fs::read_to_string(&path)?)?;
        let gc = ctx.genus(g).map_err(io::Error::other)?;
        let parsed = entries
            .into_iter()
            .filter_map(|e| Some((e.word.parse::<MappingClassWord>().ok()?, e.automorphism)))
            .collect();
        accepted += gc.import_memo(parsed);
    }
    Ok(accepted)
}

pub fn store(dir: &Path, ctx: &RunContext) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    for (g, gc) in ctx.genera() {
        let entries: Vec<Entry> = gc
            .export_memo()
            .into_iter()
            .map(|(w, a)| Entry {
                word: w.to_string(),
                automorphism: a,
            })
            .collect();
        fs::write(file(dir, g), serde_json::to_string(&entries)?)?;
    }
    Ok(())
}
