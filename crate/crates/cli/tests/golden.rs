use mcmkit_cli::golden::{parse_tables, HAMMOCKS};

#[test]
fn every_golden_cell_matches_the_mesh_engine() {
    let tables = parse_tables(HAMMOCKS).unwrap();
    assert_eq!(tables.len(), 11);
    for t in &tables {
        let m = t.compare().unwrap();
        assert!(m.is_empty(), "{}: {m:?}", t.label);
        assert!(t.cells() > 0);
    }
}

#[test]
fn golden_tables_include_the_entries_of_value_two() {
    let tables = parse_tables(HAMMOCKS).unwrap();
    let twos: Vec<&str> = tables
        .iter()
        .filter(|t| t.rows.iter().flatten().flat_map(|s| &s.cells).any(|c| c.2 == 2))
        .map(|t| t.source.as_str())
        .collect();
    assert!(twos.contains(&"C"), "{twos:?}");
    assert!(twos.contains(&"A2"), "{twos:?}");
}

#[test]
fn a_corrupted_cell_is_reported() {
    let text = HAMMOCKS.replacen("5:M1:1", "5:M1:2", 1);
    let t = &parse_tables(&text).unwrap()[0];
    let m = t.compare().unwrap();
    assert_eq!(m.len(), 1);
    assert_eq!(m[0].expected, "M1=2");
    assert_eq!(m[0].got, "M1=1");
}

#[test]
fn malformed_files_are_rejected() {
    assert!(parse_tables("row @0[1] 0:A:1").is_err());
    assert!(parse_tables("table E7 A 0 0\nrow 0:A:1").is_err());
    assert!(parse_tables("table E7 A 0 0\nrow @0[1] 0:A").is_err());
    assert!(parse_tables("tabel E7").is_err());
    assert!(parse_tables("# only a comment\n").unwrap().is_empty());
}
