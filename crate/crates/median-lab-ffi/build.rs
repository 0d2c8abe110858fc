fn main() {
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");

    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    let out = std::path::PathBuf::from(std::env::var("OUT_DIR").unwrap()).join("median_lab.h");
    let bindings = cbindgen::generate(&crate_dir).expect("cbindgen");
    bindings.write_to_file(&out);
    // Keep the committed header in sync.
    let include = std::path::Path::new(&crate_dir).join("include");
    std::fs::create_dir_all(&include).unwrap();
    std::fs::copy(&out, include.join("median_lab.h")).unwrap();
}
