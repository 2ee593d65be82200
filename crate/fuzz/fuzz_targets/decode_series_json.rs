#![no_main]

use dixon::exact::PowerSeries;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = serde_json::from_slice::<PowerSeries>(data) {
        let text = serde_json::to_string(&s).expect("series serialize");
        let back: PowerSeries = serde_json::from_str(&text).expect("own output decodes");
        assert_eq!(back, s);
    }
});
