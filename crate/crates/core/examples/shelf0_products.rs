//! Shelf 0: the product sides, F(q), and the triple-product sum.

use qshelf::product_forms::{f_series, gga_shelf0_altsum, gga_shelf0_product, jtp_check, jtp_sum};

fn main() -> qshelf::Result<()> {
    let n = 20;
    println!("F(q) = {}", f_series(n));
    for k in 2..=3 {
        for i in 1..=k {
            let prod = gga_shelf0_product(k, i, n)?;
            let alt = gga_shelf0_altsum(k, i, n)?;
            println!("k={k} i={i}  G_i = {prod}");
            println!("          sum/F agrees: {}", prod == alt);
        }
    }
    println!("triple product sum k=2 i=1: {}", jtp_sum(2, 1, n)?);
    println!("{}", jtp_check(3, 2, 100)?);
    Ok(())
}
