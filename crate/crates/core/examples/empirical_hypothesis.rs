//! Leading behaviour of shelf series: 1 + q^{2j+1} + ... and 1 + q^{2j+3} + ... at the edge.

use qshelf::shelves::{closed_form_shelf, eh_residual, strong_eh_shelf, weak_eh_check, EhStrength};

fn main() -> qshelf::Result<()> {
    let k = 3;
    let shelves = (0..=5)
        .map(|j| closed_form_shelf(k, j, 40))
        .collect::<qshelf::Result<Vec<_>>>()?;
    for shelf in &shelves {
        for i in 1..=k {
            let r = eh_residual(shelf.get(i), shelf.j, EhStrength::Strong, i == k)?;
            println!(
                "j={} i={}  order {:?}  gamma = {}",
                shelf.j,
                i,
                r.order,
                r.gamma.truncate(6)
            );
        }
        println!("{}", strong_eh_shelf(shelf)?);
    }
    println!("{}", weak_eh_check(&shelves)?);
    Ok(())
}
