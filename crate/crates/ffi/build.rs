use std::path::Path;

fn main() {
    let dir = std::env::var("CARGO_MANIFEST_DIR").expect("set by cargo");
    let root = Path::new(&dir);
    println!("cargo:rerun-if-changed=src/lib.rs");
    println!("cargo:rerun-if-changed=cbindgen.toml");
    let config = cbindgen::Config::from_file(root.join("cbindgen.toml")).expect("cbindgen.toml");
    match cbindgen::Builder::new().with_crate(&dir).with_config(config).generate() {
        Ok(b) => {
            std::fs::create_dir_all(root.join("include")).expect("include directory");
            b.write_to_file(root.join("include/mgn_euler.h"));
        }
        Err(e) => println!("cargo:warning=header not regenerated: {e}"),
    }
}
