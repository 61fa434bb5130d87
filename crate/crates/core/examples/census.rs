//! Counts braces of each order up to the given bound (default 16).

use std::time::Instant;

use bracelab_core::enumeration::{braces_of_order, EnumerationCaps};

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(16);
    let caps = EnumerationCaps::default();
    let mut total = 0;
    for n in 1..=max {
        let t = Instant::now();
        let groups = braces_of_order(n, &caps).expect("enumeration");
        let count: usize = groups.iter().map(|(_, b)| b.len()).sum();
        total += count;
        let per_group: Vec<String> = groups.iter().map(|(g, b)| format!("{g}: {}", b.len())).collect();
        println!("{n:>3} {count:>6}  [{}]  {:.2?}", per_group.join(", "), t.elapsed());
    }
    println!("total {total}");
}
