#![no_main]
use libfuzzer_sys::fuzz_target;
use sliceregular::codec::decode_matrix_series;
use sliceregular::Quaternion;

fuzz_target!(|data: &str| {
    if let Ok(f) = decode_matrix_series(data) {
        let _ = f.eval(Quaternion::real(f.center()));
        let text = serde_json::to_string(&f).unwrap();
        assert_eq!(decode_matrix_series(&text).unwrap(), f);
    }
});
