//! F(q) is forced by requiring every G_{(k-1)j+1} to start 1 + O(q^{2j+1}).

use qshelf::matrices::{solve_unique_denominator, unique_denominator_check};
use qshelf::product_forms::f_series;

fn main() -> qshelf::Result<()> {
    for k in [2, 4] {
        let f = solve_unique_denominator(k, 30)?;
        println!("k={k}: {f}");
        println!("      {}", unique_denominator_check(k, 30)?);
    }
    println!("F(q) = {}", f_series(30));
    Ok(())
}
