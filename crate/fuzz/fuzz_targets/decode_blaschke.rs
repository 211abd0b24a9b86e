#![no_main]
use libfuzzer_sys::fuzz_target;
use num_complex::Complex64;
use sliceregular::codec::decode_blaschke;

fuzz_target!(|data: &str| {
    if let Ok(b) = decode_blaschke(data) {
        let _ = b.eval(Complex64::new(0.5, -0.25));
        let _ = b.numerator_denominator();
    }
});
