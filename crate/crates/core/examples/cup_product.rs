// Cup product on H^1 of a surface group and isotropy of pulled back classes.

use fibred_groups::cohomology::{
    cup_form, is_isotropic, is_maximal_isotropic, pullback_h1, Aspherical,
};
use fibred_groups::group::{standard_surjection, surface_presentation};

fn main() -> fibred_groups::Result<()> {
    let genus = 2;
    let surface = Aspherical::declare(surface_presentation(genus)?);
    let cup = cup_form(&surface)?;
    println!("cup form on H^1(Pi_{genus}):\n{}", cup.form.matrix().to_text());

    for n in 1..=genus {
        let v = pullback_h1(&standard_surjection(genus, n)?);
        println!(
            "pullback from F_{n}: rank {}, isotropic {}, maximal {}",
            v.rank(),
            is_isotropic(&cup.form, v.basis())?,
            is_maximal_isotropic(&cup.form, v.basis())?
        );
    }
    Ok(())
}
