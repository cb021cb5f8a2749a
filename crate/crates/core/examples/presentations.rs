// Words, presentations, abelianization and Fox derivatives.

use fibred_groups::group::{
    abelianization, fox_derivative, surface_presentation, GroupRingElement, Presentation, Word,
};

fn main() -> fibred_groups::Result<()> {
    let klein = Presentation::parse("gens a b\nrel abAb\n")?;
    println!("Klein bottle: {}", abelianization(&klein));
    println!("genus 3 surface: {}", abelianization(&surface_presentation(3)?));

    let w = Word::parse("abAB")?;
    let mut total = GroupRingElement::zero();
    for j in 0..2 {
        let d = fox_derivative(&w, j);
        println!("d(abAB)/dx{} = {d}", j + 1);
        let xj = GroupRingElement::monomial(1, Word::generator(j)).sub(&GroupRingElement::one());
        total = total.add(&d.mul(&xj));
    }
    println!("sum of d/dx_j (x_j - 1) = {total}");
    assert_eq!(total, GroupRingElement::monomial(1, w).sub(&GroupRingElement::one()));
    Ok(())
}
