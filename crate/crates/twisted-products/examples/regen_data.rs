//! Regenerate `data/forms.dat` from the oracle.
//!
//! cargo run -p twisted-products --example regen_data [-- <path>]

use twisted_products::modforms::oracle;

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/forms.dat").to_string());
    let text = oracle::generate().serialize();
    std::fs::write(&path, &text).expect("write data file");
    eprintln!("wrote {} bytes to {path}", text.len());
}
