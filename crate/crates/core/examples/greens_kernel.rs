use sojourn::greens::{greens_mass, greens_v, GreensQuery, Side};

fn main() -> sojourn::Result<()> {
    let (t, a) = (0.5, 0.0);
    println!("mass = {:.12}", greens_mass(t, a)?);
    let left = greens_v(&GreensQuery::new(t, 0.0, a).with_side(Side::Left))?;
    let right = greens_v(&GreensQuery::new(t, 0.0, a).with_side(Side::Right))?;
    println!("jump at x = 0: {left:.6} -> {right:.6} (ratio {:.3})", right / left);
    for k in -8..=8 {
        let x = 0.5 * k as f64;
        if x != 0.0 {
            println!("G({t}, {x:+.1}; {a}) = {:.6}", greens_v(&GreensQuery::new(t, x, a))?);
        }
    }
    Ok(())
}
