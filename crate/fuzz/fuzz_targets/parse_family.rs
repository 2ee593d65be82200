#![no_main]

use dixon::contfrac::families::{Family, SFamily};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(f) = s.parse::<Family>() {
        assert_eq!(f.name(), s);
    }
    let _ = s.parse::<SFamily>();
});
