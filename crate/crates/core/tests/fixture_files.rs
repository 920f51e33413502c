//! The JSON files under `fixtures/` are the registry fixtures written out.
//! Set `LOCTWIST_BLESS=1` to regenerate them.

use std::fs;
use std::path::PathBuf;

use loctwist::app::{cobar_of, emit_module, emit_set, fixture_set, parse_module, parse_set, ModuleFixture, SET_FIXTURES};
use loctwist::Field;

fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

const MODULES: &[(&str, ModuleFixture)] = &[
    ("sphere_min2", ModuleFixture::Trivial),
    ("sphere_min2", ModuleFixture::Hopf),
    ("circle", ModuleFixture::Monodromy(2)),
    ("circle", ModuleFixture::Monodromy(-1)),
];

fn module_file(set: &str, m: &ModuleFixture) -> PathBuf {
    let name = m.name().replace(['(', ')'], "");
    dir().join("modules").join(format!("{set}.{name}.json"))
}

fn check_or_bless(path: PathBuf, expected: String) {
    if std::env::var_os("LOCTWIST_BLESS").is_some() {
        fs::create_dir_all(path.parent().unwrap()).unwrap();
        fs::write(&path, &expected).unwrap();
    }
    let on_disk = fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert_eq!(on_disk, expected, "{} is stale", path.display());
}

#[test]
fn set_files_match_registry_and_round_trip() {
    for name in SET_FIXTURES {
        let k = fixture_set(name).unwrap();
        let path = dir().join(format!("{name}.json"));
        check_or_bless(path.clone(), emit_set(&k));
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(emit_set(&parse_set(&text).unwrap()), text, "{name}");
    }
}

#[test]
fn module_files_match_registry_and_round_trip() {
    for (set, m) in MODULES {
        let k = fixture_set(set).unwrap();
        let om = cobar_of(&k, Field::Rational).unwrap();
        let module = m.build(&k, &om).unwrap();
        let path = module_file(set, m);
        check_or_bless(path.clone(), emit_module(&module, set));
        let text = fs::read_to_string(&path).unwrap();
        let (parsed, over) = parse_module(&text, &k, &om).unwrap();
        assert_eq!(&over, set);
        assert_eq!(emit_module(&parsed, &over), text);
    }
}
