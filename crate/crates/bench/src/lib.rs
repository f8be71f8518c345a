//! Fixtures shared by the benchmarks.

use gagcodes::pipeline::{self, Analysis};
use gagcodes::Config;

pub const X6_CURVE: &str = include_str!("../../cli/examples/x6_y5_gf4.cfg");
pub const HERMITIAN: &str = include_str!("../../cli/examples/hermitian_gf4.cfg");

pub fn config(text: &str) -> Config {
    Config::parse(text).expect("bundled fixtures parse")
}

pub fn analysis(text: &str) -> Analysis {
    pipeline::analyze(&config(text)).expect("bundled fixtures analyze")
}
