//! Bundled B3/S23 patterns in canonical RLE.

use super::rle::{parse_rle, Pattern};

pub const GLIDER: &str = "#N Glider\nx = 3, y = 3, rule = B3/S23\nbo$2bo$3o!\n";
pub const LWSS: &str = "#N Lightweight spaceship\nx = 5, y = 4, rule = B3/S23\nbo2bo$o$o3bo$4o!\n";
pub const MWSS: &str = "#N Middleweight spaceship\nx = 6, y = 5, rule = B3/S23\n3bo$bo3bo$o$o4bo$5o!\n";
pub const HWSS: &str = "#N Heavyweight spaceship\nx = 7, y = 5, rule = B3/S23\n3b2o$bo4bo$o$o5bo$6o!\n";
pub const BLOCK: &str = "#N Block\nx = 2, y = 2, rule = B3/S23\n2o$2o!\n";
pub const BLINKER: &str = "#N Blinker\nx = 3, y = 1, rule = B3/S23\n3o!\n";

pub const NAMES: [&str; 6] = ["glider", "lwss", "mwss", "hwss", "block", "blinker"];

pub fn rle(name: &str) -> Option<&'static str> {
    Some(match name {
        "glider" => GLIDER,
        "lwss" => LWSS,
        "mwss" => MWSS,
        "hwss" => HWSS,
        "block" => BLOCK,
        "blinker" => BLINKER,
        _ => return None,
    })
}

pub fn pattern(name: &str) -> Option<Pattern> {
    rle(name).map(|text| parse_rle(text).expect("bundled patterns parse"))
}
