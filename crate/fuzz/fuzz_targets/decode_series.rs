#![no_main]
use libfuzzer_sys::fuzz_target;
use sliceregular::codec::decode_series;

fuzz_target!(|data: &[u8]| {
    let _ = decode_series(&String::from_utf8_lossy(data));
});
