//! The bundled example systems and covers.

use crate::cover::InvariantCover;
use crate::model::{StateSet, UncertainSystem};
use crate::textio::{parse_cover_named, parse_system_named};

/// `(name, file text)` for every bundled system.
pub const SYSTEMS: [(&str, &str); 4] = [
    ("ex1", include_str!("../fixtures/ex1.sys")),
    ("ex2", include_str!("../fixtures/ex2.sys")),
    ("ex3", include_str!("../fixtures/ex3.sys")),
    ("ex4", include_str!("../fixtures/ex4.sys")),
];

/// `(name, system name, file text)` for every bundled cover.
pub const COVERS: [(&str, &str, &str); 8] = [
    ("ex1", "ex1", include_str!("../fixtures/ex1.cov")),
    ("ex2", "ex2", include_str!("../fixtures/ex2.cov")),
    ("ex3_a1", "ex3", include_str!("../fixtures/ex3_a1.cov")),
    ("ex3_a2", "ex3", include_str!("../fixtures/ex3_a2.cov")),
    ("ex3_a3", "ex3", include_str!("../fixtures/ex3_a3.cov")),
    ("ex4_a1", "ex4", include_str!("../fixtures/ex4_a1.cov")),
    ("ex4_a2", "ex4", include_str!("../fixtures/ex4_a2.cov")),
    ("ex4_a3", "ex4", include_str!("../fixtures/ex4_a3.cov")),
];

/// Loads a bundled system by name. Panics on an unknown name.
pub fn system(name: &str) -> UncertainSystem {
    let (_, text) = SYSTEMS.iter().find(|(n, _)| *n == name).unwrap_or_else(|| panic!("no fixture `{name}`"));
    parse_system_named(text, &format!("{name}.sys")).expect("bundled fixtures parse")
}

pub fn ex1() -> UncertainSystem {
    system("ex1")
}

pub fn ex2() -> UncertainSystem {
    system("ex2")
}

pub fn ex3() -> UncertainSystem {
    system("ex3")
}

pub fn ex4() -> UncertainSystem {
    system("ex4")
}

/// The controlled invariant set each example is about.
pub fn target(sys: &UncertainSystem) -> StateSet {
    let ids: &[&str] = match sys.name() {
        "ex1" => &["0", "1"],
        "ex2" => &["0", "2"],
        "ex3" => &["0", "1", "2"],
        "ex4" => &["0", "1", "2", "3", "4"],
        other => panic!("no target for `{other}`"),
    };
    sys.state_set(ids).expect("fixture ids exist")
}

/// Loads a bundled cover together with its system. Panics on an unknown name.
pub fn cover(name: &str) -> (UncertainSystem, InvariantCover) {
    let (_, sys_name, text) =
        COVERS.iter().find(|(n, _, _)| *n == name).unwrap_or_else(|| panic!("no cover fixture `{name}`"));
    let sys = system(sys_name);
    let file = parse_cover_named(text, &format!("{name}.cov"), &sys).expect("bundled covers parse");
    let cover = file.build(&sys).expect("bundled covers are invariant");
    (sys, cover)
}
