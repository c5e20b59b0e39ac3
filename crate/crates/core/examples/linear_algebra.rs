//! Exact kernels and ranks over ℚ and F_5.

use dg_triangular::linalg::{Field, LinearSystem, Matrix};

fn main() -> dg_triangular::Result<()> {
    for field in [Field::Rationals, Field::Prime(5)] {
        let rows = [[1, 2, 3], [2, 4, 1], [3, 6, 4]]
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        let m = Matrix::from_rows(field, rows)?;
        let mut sys = LinearSystem::new(field, 3);
        for r in 0..m.rows() {
            sys.add_dense(m.row(r).to_vec())?;
        }
        let sol = sys.solve();
        println!("over {field}: rank {}, kernel dimension {}", m.rank(), sol.dim());
        for v in sol.basis() {
            let text: Vec<String> = v.iter().map(ToString::to_string).collect();
            println!("  kernel vector [{}]", text.join(", "));
        }
    }
    Ok(())
}
