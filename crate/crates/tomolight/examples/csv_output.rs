//! Writes a tomogram table in the command-line tool's CSV format.

use tomolight::output::{tomogram_table, write_atomic};
use tomolight::tomography::{tomogram_pure, QuadratureGrid};
use tomolight::{make_cat_at, CatSpec, C64};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let v = make_cat_at(CatSpec::new(3, 0, C64::new(2.0, 0.0))?, 40)?;
    let table = tomogram_table(&tomogram_pure(&v, &QuadratureGrid::new(4, 6.0, 61)?));
    let path = std::env::temp_dir().join("tomolight_example.csv");
    write_atomic(&path, &table.to_bytes())?;
    println!("wrote {} rows to {}", table.rows.len(), path.display());
    Ok(())
}
