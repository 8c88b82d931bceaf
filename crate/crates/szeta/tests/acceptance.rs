//! Release gate: runs every acceptance criterion against the shipped zero
//! table and prints one pass/fail line per criterion.

use std::path::Path;
use szeta::acceptance;
use szeta::g_function::GEvaluator;
use szeta::zero_data::{load_zero_file, ZeroFileFormat};

#[test]
fn acceptance_suite() {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros_100k.txt");
    let table =
        load_zero_file(&path, ZeroFileFormat::PlainAscending).expect("shipped zero table");
    let ev = GEvaluator::new(&table);
    let results = acceptance::run_all(&ev);
    let mut failed = Vec::new();
    for r in &results {
        println!("{}", r.line());
        if !r.passed {
            failed.push(r.id);
        }
    }
    assert_eq!(results.len(), 14);
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
