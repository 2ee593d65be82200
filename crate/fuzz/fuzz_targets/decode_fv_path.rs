#![no_main]

use dixon::perm::paths::{francon_viennot_decode, francon_viennot_encode, FvPath, Step};
use dixon::perm::Border;
use libfuzzer_sys::fuzz_target;

// byte 0: border; then pairs (step, choice)
fuzz_target!(|data: &[u8]| {
    let Some((&b, rest)) = data.split_first() else {
        return;
    };
    let border = if b % 2 == 0 {
        Border::MINUS_MINUS
    } else {
        Border::MINUS_PLUS
    };
    let pairs: Vec<(Step, usize)> = rest
        .chunks_exact(2)
        .map(|c| {
            let step = match c[0] % 3 {
                0 => Step::Up,
                1 => Step::Down,
                _ => Step::Level,
            };
            (step, usize::from(c[1]))
        })
        .collect();
    let path = FvPath {
        steps: pairs.iter().map(|p| p.0).collect(),
        choices: pairs.iter().map(|p| p.1).collect(),
    };
    let n = if border == Border::MINUS_MINUS {
        path.steps.len() + 1
    } else {
        path.steps.len()
    };
    if let Ok(p) = francon_viennot_decode(&path, n, border) {
        assert_eq!(
            francon_viennot_encode(&p, border).expect("supported border"),
            path
        );
    }
});
