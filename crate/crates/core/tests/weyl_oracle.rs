use hok_core::linalg::RationalMatrix;
use num_traits::Signed;
use hok_core::root_data::{build_root_datum, cartan_matrix, image_lattice, isogeny_labels, Isogeny, RootSystemType};
use hok_core::weyl::{f_conjugacy_classes, generate_weyl, FrobeniusTwist, WeylGroup};

fn ordinary_classes(w: &WeylGroup) -> usize {
    let n = w.order();
    let mut seen = vec![false; n];
    let mut count = 0;
    for a in 0..n {
        if seen[a] {
            continue;
        }
        count += 1;
        for x in 0..n {
            seen[w.mul(w.mul(w.inverse(x), a), x)] = true;
        }
    }
    count
}

fn ty(s: &str) -> RootSystemType {
    s.parse().unwrap()
}

#[test]
fn trivial_twist_is_ordinary_conjugacy() {
    for (s, expected) in [("A1", 2), ("A2", 3), ("A3", 5), ("A4", 7), ("B2", 5), ("B3", 10), ("G2", 6), ("D4", 13), ("F4", 25)] {
        let w = generate_weyl(&build_root_datum(ty(s)).unwrap()).unwrap();
        let f = f_conjugacy_classes(&w, &FrobeniusTwist::trivial(w.datum.rank())).unwrap();
        assert_eq!(f.len(), ordinary_classes(&w), "{s}");
        assert_eq!(f.len(), expected, "{s}");
        assert_eq!(f.iter().map(|c| c.size).sum::<usize>(), w.order());
    }
}

#[test]
fn twisted_a_counts_match_partitions() {
    for (s, expected) in [("2A2", 3), ("2A3", 5), ("2A4", 7)] {
        let t = ty(s);
        let w = generate_weyl(&build_root_datum(t.untwisted()).unwrap()).unwrap();
        let f = f_conjugacy_classes(&w, &FrobeniusTwist::for_type(t).unwrap()).unwrap();
        assert_eq!(f.len(), expected, "{s}");
    }
}

#[test]
fn lattice_index_is_cartan_determinant() {
    for s in ["A1", "A2", "A3", "A5", "A7", "B3", "C4", "D4", "D5", "D6", "E6", "E7", "E8", "F4", "G2"] {
        let t = ty(s);
        let c = RationalMatrix::from_i64_rows(&cartan_matrix(t)).unwrap();
        let det = c.det().unwrap();
        // the last label is the simply connected one (E8, F4, G2 have only adjoint)
        let sc = image_lattice(t, *isogeny_labels(t).last().unwrap()).unwrap().index();
        assert_eq!(num_rational::BigRational::from_integer((sc as i64).into()), det.abs(), "{s}");
        assert_eq!(image_lattice(t, Isogeny::Adjoint).unwrap().index(), 1);
    }
}
