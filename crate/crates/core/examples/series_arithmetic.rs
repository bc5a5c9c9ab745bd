//! Truncated Laurent series: arithmetic, precision tracking, inversion.

use qshelf::Series;

fn main() -> qshelf::Result<()> {
    // 1 - q - q^2, known below q^12
    let a = Series::from_i64s(0, &[1, -1, -1], 12);
    let inv = a.invert_unit()?;
    println!("a       = {a}");
    println!("1/a     = {inv}");
    println!("a * 1/a = {}", a.mul(&inv));

    // shifting moves the window along with the coefficients
    let b = inv.shift(-3);
    println!("q^-3/a  = {b}  (precision {})", b.precision());

    // exact Laurent polynomials never lose precision
    let p = Series::polynomial(&[(-1, 1), (2, -3)]);
    println!("p^2     = {}", p.mul(&p));
    println!("p + 1/a = {}", p.add(&inv));

    // a negative-exponent remainder is reported, not dropped
    if let Err(e) = b.assert_ordinary() {
        println!("q^-3/a is not a power series: {e}");
    }

    print!("{}", inv.truncate(6).dump());
    Ok(())
}
