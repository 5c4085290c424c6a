use std::path::PathBuf;

use att_model::error::ModelError;
use att_model::format::{load_model, to_json, DEFAULT_MAX_SIZE};
use att_model::shipped;

fn models_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

/// Set `ATT_WRITE_MODELS=1` to regenerate the files from the builders.
#[test]
fn shipped_files_match_the_builders() {
    let write = std::env::var("ATT_WRITE_MODELS").is_ok_and(|v| v == "1");
    for m in shipped::all() {
        let path = models_dir().join(format!("{}.json", m.name));
        let text = to_json(&m).unwrap();
        if write {
            std::fs::write(&path, &text).unwrap();
        }
        let on_disk = std::fs::read_to_string(&path)
            .unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        assert_eq!(on_disk, text, "{} is stale", path.display());
        let loaded = load_model(&on_disk, DEFAULT_MAX_SIZE).unwrap();
        assert_eq!(to_json(&loaded).unwrap(), text);
        assert_eq!(loaded.display_maps, m.display_maps);
        for (name, p) in &m.pseudofunctors {
            assert_eq!(**loaded.pseudofunctor(name).unwrap(), **p, "{name}");
        }
        for (ty, _) in &m.types {
            assert_eq!(loaded.base_type(ty), m.base_type(ty));
        }
    }
}

#[test]
fn a_lower_size_limit_rejects_large_groupoids() {
    let text = to_json(&shipped::twisted()).unwrap();
    let err = load_model(&text, 1).unwrap_err();
    assert!(matches!(err, ModelError::TooLarge { limit: 1, .. }), "{err}");
}

#[test]
fn malformed_files_are_rejected() {
    assert!(matches!(
        load_model("{", DEFAULT_MAX_SIZE),
        Err(ModelError::Malformed(_))
    ));
    let text = to_json(&shipped::nonnormal()).unwrap();
    let broken = text.replace("\"base\": \"1\"", "\"base\": \"missing\"");
    assert_ne!(broken, text);
    assert!(load_model(&broken, DEFAULT_MAX_SIZE).is_err());
}

#[test]
fn incoherent_pseudofunctors_are_rejected_on_load() {
    let mut v: serde_json::Value =
        serde_json::from_str(&to_json(&shipped::nonnormal()).unwrap()).unwrap();
    let psi = &mut v["pseudofunctors"][0]["psi"];
    *psi = serde_json::json!([]);
    let err = load_model(&v.to_string(), DEFAULT_MAX_SIZE).unwrap_err();
    assert!(matches!(err, ModelError::Law(_)), "{err}");
}
