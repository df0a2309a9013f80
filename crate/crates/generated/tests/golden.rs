use std::collections::BTreeSet;
use std::path::PathBuf;

use srk_core::codegen::{render_bundle, Dialect, DEFAULT_MAX_NOISE_DIM};
use srk_core::tables::bundled;

fn generated_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("src").join("generated")
}

#[test]
fn committed_sources_match_the_generator() {
    let dialect = Dialect::builtin("rust").unwrap();
    let (manifest, files) = render_bundle(&bundled(), 1..=DEFAULT_MAX_NOISE_DIM, DEFAULT_MAX_NOISE_DIM, &dialect).unwrap();
    let dir = generated_dir();
    if std::env::var_os("SRK_REGENERATE").is_some() {
        std::fs::create_dir_all(&dir).unwrap();
        for (rel, text) in &files {
            std::fs::write(dir.join(rel), text).unwrap();
        }
    }
    let mut stale = Vec::new();
    for (rel, text) in &files {
        let on_disk = std::fs::read_to_string(dir.join(rel)).unwrap_or_default();
        if &on_disk != text {
            stale.push(rel.display().to_string());
        }
    }
    assert!(stale.is_empty(), "out of date (rerun with SRK_REGENERATE=1): {stale:?}");

    let expected: BTreeSet<String> = files.iter().map(|(p, _)| p.display().to_string()).collect();
    let present: BTreeSet<String> = std::fs::read_dir(&dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().to_string_lossy().into_owned())
        .collect();
    assert_eq!(present, expected, "unexpected files in {}", dir.display());

    assert_eq!(manifest.functions.len(), srk_generated::ENTRIES.len());
    for (entry, listed) in srk_generated::ENTRIES.iter().zip(&manifest.functions) {
        assert_eq!(entry.function, listed.function);
        assert_eq!((entry.m, entry.time_mixed, entry.cross), (listed.m, listed.time_mixed, listed.cross));
    }
}
