use hok_core::symbols::{enumerate_symbols, families, Series};

#[test]
fn unipotent_character_counts_of_type_b() {
    // number of unipotent characters of B_n, n = 1..6
    for (n, k) in [(1, 2), (2, 6), (3, 12), (4, 25), (5, 46), (6, 86)] {
        assert_eq!(enumerate_symbols(Series::BC, n).unwrap().len(), k, "B{n}");
    }
}

#[test]
fn family_sizes_are_powers_of_four() {
    for n in 1..=6 {
        for f in families(&enumerate_symbols(Series::BC, n).unwrap()).unwrap() {
            assert!(f.size().is_power_of_two() && f.size().trailing_zeros() % 2 == 0);
        }
    }
}
