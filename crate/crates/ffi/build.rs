fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    let header = std::path::Path::new(&crate_dir).join("include/dendro.h");
    std::fs::create_dir_all(header.parent().unwrap()).unwrap();
    let config = cbindgen::Config {
        language: cbindgen::Language::C,
        include_guard: Some("DENDRO_H".into()),
        documentation: true,
        cpp_compat: true,
        enumeration: cbindgen::EnumConfig {
            prefix_with_name: true,
            ..Default::default()
        },
        ..Default::default()
    };
    cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .expect("cbindgen generates the C header")
        .write_to_file(header);
    println!("cargo:rerun-if-changed=src/lib.rs");
}
