//! Regenerates `fixtures/` from the builders in `dg_triangular::fixtures`.

use std::path::Path;

use dg_triangular::fixtures::{negative_controls, shipped};
use dg_triangular::format::emit;
use dg_triangular::linalg::Field;

fn main() -> dg_triangular::Result<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    std::fs::create_dir_all(dir.join("negative"))?;
    for (stem, doc) in shipped(Field::Rationals)? {
        std::fs::write(dir.join(format!("{stem}.json")), emit(&doc)?)?;
        println!("fixtures/{stem}.json");
    }
    for nc in negative_controls(Field::Rationals) {
        std::fs::write(dir.join("negative").join(format!("{}.json", nc.file)), emit(&nc.document)?)?;
        println!("fixtures/negative/{}.json", nc.file);
    }
    Ok(())
}
