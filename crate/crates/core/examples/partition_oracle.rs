//! Brute-force partition classes and their generating functions.

use qshelf::partitions::{
    enumerate, genfun, h_constraint, h_oracle_check, violations, PartitionConstraint,
};
use qshelf::product_forms::gga_shelf0_product;
use qshelf::Family;

fn main() -> qshelf::Result<()> {
    let c = PartitionConstraint::new(Family::Gga, 2, 1, 0)?;
    println!("n=8: {:?}", enumerate(&c, 8));
    for p in [vec![4, 2], vec![3, 3], vec![5, 1, 1]] {
        println!("{p:?} breaks {:?}", violations(&c, &p));
    }

    // the identity itself, up to q^40
    let k = 3;
    for i in 1..=k {
        let c = PartitionConstraint::new(Family::Gga, k, i, 0)?;
        println!(
            "k={k} i={i}: counts equal product: {}",
            genfun(&c, 40) == gga_shelf0_product(k, i, 40)?
        );
    }

    let c = h_constraint(Family::Gga, 0, 1, 2, 2, 2)?;
    println!("h-entry class (i=1, l=2, j=2): {}", genfun(&c, 12));
    println!("{}", h_oracle_check(1, 2, 4, 2, 3, Family::Gga, 40)?);
    Ok(())
}
