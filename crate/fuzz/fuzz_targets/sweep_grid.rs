#![no_main]

use libfuzzer_sys::fuzz_target;
use spherigon::SweepGrid;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(grid) = SweepGrid::from_json(text) {
        assert!(grid.validate().is_ok());
        let omegas = grid.thicknesses();
        assert!(omegas.iter().all(|w| *w > 0.0 && *w < std::f64::consts::FRAC_PI_2));
    }
});
