#![no_main]

use libfuzzer_sys::fuzz_target;
use reduced_polygon::DecompositionDocument;

fuzz_target!(|data: &[u8]| {
    if let Ok(doc) = DecompositionDocument::parse_bytes(data) {
        assert!(doc.vertex_data().is_ok());
        let back = DecompositionDocument::parse(&doc.to_json()).expect("re-parse");
        assert_eq!(back.rows.len(), doc.rows.len());
    }
});
