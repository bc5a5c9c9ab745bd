//! The same shelf program for Gordon's identities.

use qshelf::gordon::{
    ehrenpreis_check, gordon_closed_form, gordon_eh_check, gordon_identity_check, gordon_shelf0,
    gordon_shelves,
};
use qshelf::matrices::decomposition_check;
use qshelf::shelves::ShelfIndex;
use qshelf::Family;

fn main() -> qshelf::Result<()> {
    println!("G_1 = {}", gordon_shelf0(2, 1, 15)?);
    println!("G_2 = {}", gordon_shelf0(2, 2, 15)?);

    let shelves = gordon_shelves(2, 4, 20)?;
    for shelf in &shelves {
        println!("j={}  G = {}", shelf.j, shelf.get(2).truncate(12));
    }
    let idx = ShelfIndex::new(2, 3, 2)?;
    println!("closed form = {}", gordon_closed_form(idx, 11));

    println!("{}", gordon_eh_check(ShelfIndex::new(3, 2, 1)?, 30)?);
    println!("{}", gordon_identity_check(2, 1, 3, 40)?);
    println!("{}", decomposition_check(Family::Gordon, 1, 2, 4, 3, 40)?);
    println!("{}", ehrenpreis_check(2, 100)?);
    Ok(())
}
