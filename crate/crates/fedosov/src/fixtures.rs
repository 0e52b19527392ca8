//! The chart files shipped under `examples/`, embedded verbatim.

pub const EXAMPLE1: &str = include_str!("../examples/fedosov_example1.json");
pub const EXAMPLE1_EMENDED: &str = include_str!("../examples/fedosov_example1_emended.json");
pub const EXAMPLE2: &str = include_str!("../examples/fedosov_example2.json");

/// `(file name, contents)` for every fixture.
pub const ALL: [(&str, &str); 3] = [
    ("fedosov_example1.json", EXAMPLE1),
    ("fedosov_example1_emended.json", EXAMPLE1_EMENDED),
    ("fedosov_example2.json", EXAMPLE2),
];
