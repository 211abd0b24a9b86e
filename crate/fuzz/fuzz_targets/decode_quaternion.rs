#![no_main]
use libfuzzer_sys::fuzz_target;
use sliceregular::codec::{decode_quaternion, decode_unit};

fuzz_target!(|data: &str| {
    if let Ok(q) = decode_quaternion(data) {
        let text = serde_json::to_string(&q).unwrap();
        assert_eq!(decode_quaternion(&text).unwrap(), q);
    }
    if let Ok(u) = decode_unit(data) {
        assert!((u.to_quaternion().norm() - 1.0).abs() < 1e-9);
    }
});
