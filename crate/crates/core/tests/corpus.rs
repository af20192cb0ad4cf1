use std::path::PathBuf;

use indkit::corpus::corpus_files;
use indkit::syntax::parse_proof;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

// Set INDKIT_BLESS=1 to rewrite the shipped files from the builders.
#[test]
fn shipped_files_match_builders() {
    let bless = std::env::var_os("INDKIT_BLESS").is_some();
    for (rel, script) in corpus_files() {
        let path = corpus_dir().join(rel);
        if bless {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, script.to_string()).unwrap();
        }
        let text = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(parse_proof(&text).unwrap(), script, "{rel} is stale");
    }
}
