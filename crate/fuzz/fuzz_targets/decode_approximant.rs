#![no_main]
use libfuzzer_sys::fuzz_target;
use sliceregular::codec::decode_approximant;
use sliceregular::Quaternion;

fuzz_target!(|data: &str| {
    if let Ok(a) = decode_approximant(data) {
        let _ = a.eval(Quaternion::new(0.1, 0.2, -0.3, 0.4));
    }
});
