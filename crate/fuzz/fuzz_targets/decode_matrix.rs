#![no_main]
use libfuzzer_sys::fuzz_target;
use sliceregular::codec::decode_matrix;

fuzz_target!(|data: &str| {
    if let Ok(m) = decode_matrix(data) {
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(decode_matrix(&text).unwrap(), m);
    }
});
