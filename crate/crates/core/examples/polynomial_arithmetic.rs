//! Exact polynomial arithmetic over the rationals.

use gfpkit::Poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: Poly = "x^2 + 3x + 2".parse()?;
    let q: Poly = "x + 1".parse()?;

    println!("p         = {p}");
    println!("q         = {q}");
    println!("p + q     = {}", &p + &q);
    println!("p * q     = {}", &p * &q);
    println!("p / q     = {}", p.exact_div(&q)?);
    println!("gcd(p, q) = {}", p.gcd(&q)?);

    let (quot, rem) = "x^3 - 1/2".parse::<Poly>()?.div_rem(&"2x - 1".parse()?)?;
    println!("x^3 - 1/2 = (2*x - 1)({quot}) + ({rem})");

    let square = q.pow(4);
    println!("sqrt({square}) = {}", square.sqrt()?);
    println!(
        "p(1/2) = {}",
        p.eval(&num_rational::BigRational::new(1.into(), 2.into()))
    );
    Ok(())
}
