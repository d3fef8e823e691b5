use serde_json::Value;

use hok_wasm::{explore, pairing, rank_lemma};

fn ok(s: String) -> Value {
    let v: Value = serde_json::from_str(&s).unwrap();
    assert!(v.get("error").is_none(), "{v}");
    v["ok"].clone()
}

#[test]
fn g2_explorer() {
    let d = ok(explore("G2", 7));
    assert_eq!(d["coxeter_number"], 6);
    assert_eq!(d["cartan"].as_array().unwrap().len(), 2);
    let iso = &d["isogenies"][0];
    assert_eq!(iso["q_T"], 6);
    assert_eq!(iso["regular_reduction"]["criterion_met"], true);
}

#[test]
fn twisted_type_explorer() {
    let d = ok(explore("2A3", 0));
    assert!(d["isogenies"].as_array().unwrap().iter().all(|r| r.get("regular_reduction").is_none()));
}

#[test]
fn s3_pairing_is_square() {
    let d = ok(pairing("S3"));
    let n = d["labels"].as_array().unwrap().len();
    assert_eq!(n, 8);
    assert_eq!(d["cells"].as_array().unwrap().len(), n);
    assert_eq!(d["rank"], n);
}

#[test]
fn fixture_viewer() {
    let d = ok(pairing("M4"));
    assert_eq!(d["det"], "1/192");
    assert_eq!(d["holds"], true);
    assert_eq!(ok(pairing("M8"))["rank"], 1);
}

#[test]
fn sign_matrix_entries() {
    let d = ok(rank_lemma(3, 2, 1, 0));
    assert_eq!(d["full_rank"], true);
    let m = d["matrix"].as_array().unwrap();
    assert_eq!(m.len() as u64, d["rows"].as_u64().unwrap());
    assert!(m.iter().flat_map(|r| r.as_array().unwrap()).all(|x| x == 1 || x == -1));
}

#[test]
fn errors_are_reported() {
    for s in [explore("Q5", 0), pairing("S7"), rank_lemma(0, 0, 5, 9)] {
        let v: Value = serde_json::from_str(&s).unwrap();
        assert!(v["error"].is_string());
    }
}
