#![no_main]

use dixon::perm::paths::{francon_viennot_decode, francon_viennot_encode};
use dixon::perm::{parse_permutation, Border, IncreasingBinaryTree};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(p) = parse_permutation(s) else { return };
    assert_eq!(IncreasingBinaryTree::of(&p).project(), p);
    if p.len() <= 64 {
        for border in [Border::MINUS_MINUS, Border::MINUS_PLUS] {
            let path = francon_viennot_encode(&p, border).expect("supported border");
            assert_eq!(
                francon_viennot_decode(&path, p.len(), border).expect("own encoding"),
                p
            );
        }
    }
});
