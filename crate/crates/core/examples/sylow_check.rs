//! Compares the full regular-subgroup search with the Sylow-restricted one
//! for each group given, e.g. `sylow_check 2,4 4,4`.

use bracelab_core::enumeration::{dedup_up_to_iso, enumerate_braces, AbelianGroupSpec, EnumerationCaps};

fn main() {
    let caps = EnumerationCaps { max_raw_braces: 5_000_000, ..Default::default() };
    for g in std::env::args().skip(1) {
        let g: AbelianGroupSpec = g.parse().unwrap();
        let raw = enumerate_braces(&g, false, &caps).unwrap();
        let n = raw.len();
        let classes = dedup_up_to_iso(raw).unwrap().len();
        let fast = enumerate_braces(&g, true, &caps).unwrap().len();
        println!("{g}: raw {n}, classes {classes}, sylow {fast}");
    }
}
