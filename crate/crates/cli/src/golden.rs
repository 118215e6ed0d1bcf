//! Reference values embedded from `data/`.

const TABLE1: &str = include_str!("../data/table1.csv");
const TABLE2: &str = include_str!("../data/table2.csv");

fn rows(text: &str) -> impl Iterator<Item = (&str, &str)> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .skip(1)
        .filter_map(|l| l.split_once(','))
}

/// `(n, Bₙ)` for n = 1..24.
pub fn table1() -> Vec<(usize, String)> {
    rows(TABLE1)
        .map(|(n, v)| (n.parse().expect("golden n"), v.to_string()))
        .collect()
}

/// `(n, leading digits of n·Bₙ/2ⁿ⁻²)`.
pub fn table2() -> Vec<(usize, String)> {
    rows(TABLE2)
        .map(|(n, v)| (n.parse().expect("golden n"), v.to_string()))
        .collect()
}

pub fn table2_for(n: usize) -> Option<String> {
    table2().into_iter().find(|(m, _)| *m == n).map(|(_, v)| v)
}

/// Number of decimals printed in a golden rendering.
pub fn decimals(golden: &str) -> usize {
    golden.split_once('.').map_or(0, |(_, frac)| frac.len())
}
