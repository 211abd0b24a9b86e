#![no_main]
use libfuzzer_sys::fuzz_target;
use sliceregular::codec::decode_chi;
use sliceregular::linalg::{chi, unchi};

fuzz_target!(|data: &str| {
    if let Ok(block) = decode_chi(data) {
        // accepted blocks are within tolerance of a complex adjoint
        let _ = chi(&unchi(&block));
    }
});
