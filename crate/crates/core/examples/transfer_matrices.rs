//! Transfer matrices, h-polynomials and the limit h^(inf).

use qshelf::matrices::{
    build_matrix, decomposition_check, g_equals_hinf_check, h_infinity, h_matrix, h_route_check,
    MatrixKind,
};
use qshelf::Family;

fn main() -> qshelf::Result<()> {
    let k = 2;
    for kind in [
        MatrixKind::A,
        MatrixKind::B,
        MatrixKind::C,
        MatrixKind::Aprime,
    ] {
        println!(
            "{:<6} j=1: {:?}",
            kind.as_str(),
            build_matrix(kind, Family::Gga, 1, k)?
        );
    }
    let a = build_matrix(MatrixKind::A, Family::Gga, 2, 3)?;
    let b = build_matrix(MatrixKind::B, Family::Gga, 2, 3)?;
    println!("A_(2) B_(2) = {:?}", a.mul(&b));

    for j in 1..=3 {
        println!("h^({j}) = {:?}", h_matrix(Family::Gga, 0, j, k)?.matrix);
    }
    println!("{}", h_route_check(Family::Gga, 1, 6, 3)?);
    println!("{}", decomposition_check(Family::Gga, 0, 1, 3, 3, 40)?);

    println!("h^(inf)_(1,1) = {}", h_infinity(0, 1, k, Family::Gga, 20)?);
    for big_j in 0..=3 {
        println!("{}", g_equals_hinf_check(big_j, 1, 3, Family::Gga, 60)?);
    }
    Ok(())
}
