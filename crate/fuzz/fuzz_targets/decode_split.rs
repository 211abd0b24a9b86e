#![no_main]
use libfuzzer_sys::fuzz_target;
use sliceregular::codec::decode_split;

fuzz_target!(|data: &str| {
    if let Ok(pair) = decode_split(data) {
        let _ = pair.to_series();
    }
});
