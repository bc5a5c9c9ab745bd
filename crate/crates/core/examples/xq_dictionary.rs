//! Specializations of J_{k,i}(a, x, q) and the dictionaries to shelf series.

use qshelf::xq::{
    dictionary_check, edge_identity_check, j_specialized, pochhammer, specialized_recurrence_check,
    SpecializationSpec,
};
use qshelf::Family;

fn main() -> qshelf::Result<()> {
    println!("(-q; q^2)_inf = {}", pochhammer(-1, 1, 2, None, 12)?);
    println!("(q; q)_4      = {}", pochhammer(1, 1, 1, Some(4), 12)?);

    for family in [Family::Gga, Family::Gordon] {
        let spec = SpecializationSpec::new(family, 1)?;
        println!(
            "{family}: a = {}, base q^{}",
            spec.a_substitution(),
            spec.base_exponent()
        );
        println!("  J_(3,2) = {}", j_specialized(spec, 3, 2, 12)?);
        println!("  {}", dictionary_check(family, 3, 1, 2, 40)?);
        println!("  {}", edge_identity_check(family, 3, 1, 40)?);
        println!("  {}", specialized_recurrence_check(family, 3, 1, 2, 40)?);
    }
    Ok(())
}
