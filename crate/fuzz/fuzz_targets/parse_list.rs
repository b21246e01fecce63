#![no_main]

use libfuzzer_sys::fuzz_target;
use spherigon::grid::parse_list;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let _ = parse_list::<usize>(text);
    let _ = parse_list::<u64>(text);
    let _ = parse_list::<f64>(text);
});
