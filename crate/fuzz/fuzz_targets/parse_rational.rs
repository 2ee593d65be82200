#![no_main]

use dixon::exact::{format_rational, parse_rational};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(q) = parse_rational(s) {
        let again = parse_rational(&format_rational(&q)).expect("formatted rationals parse");
        assert_eq!(again, q);
    }
});
