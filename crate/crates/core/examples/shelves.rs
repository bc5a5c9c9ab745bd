//! Higher shelves by recursion, compared with the closed form.

use qshelf::shelves::{
    edge_match_check, gga_closed_form, precision_budget, recursion_vs_closed_form,
    shelves_by_recursion, ShelfIndex,
};

fn main() -> qshelf::Result<()> {
    let (k, j_max, order) = (3, 4, 30);
    println!(
        "starting precision needed: {}",
        precision_budget(k, j_max, order)
    );
    let shelves = shelves_by_recursion(k, j_max, order)?;
    for shelf in &shelves {
        for i in 1..=k {
            let l = ShelfIndex::new(k, shelf.j, i)?.linear();
            println!("G_{l:<2} = {}", shelf.get(i).truncate(12));
        }
    }
    let bad = recursion_vs_closed_form(&shelves, order)?
        .into_iter()
        .filter(|r| !r.is_pass())
        .count();
    println!("entries disagreeing with the closed form: {bad}");

    let edge = ShelfIndex::new(k, 2, k)?;
    println!("{:?} is also {:?}", edge, edge.alias().unwrap());
    println!("{}", edge_match_check(k, 2, 60)?);
    println!(
        "closed form G_{} = {}",
        edge.linear(),
        gga_closed_form(edge, 15)
    );
    Ok(())
}
