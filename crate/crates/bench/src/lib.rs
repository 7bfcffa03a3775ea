//! Empty by design: this crate exists to host `benches/toolkit.rs`.
