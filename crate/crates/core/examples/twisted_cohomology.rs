// First cohomology with coefficients in a Z[G]-lattice.

use fibred_groups::cohomology::{twisted_h1, Action};
use fibred_groups::group::{free_presentation, surface_presentation};
use fibred_groups::linalg::IntMatrix;

fn main() -> fibred_groups::Result<()> {
    let f1 = free_presentation(1)?;
    let shear = Action::new(2, vec![IntMatrix::from_i64(&[&[1, 1], &[0, 1]])])?;
    let h = twisted_h1(&f1, &shear)?;
    println!("H^1(Z; shear) = Z^{} torsion {:?}", h.free_rank, h.torsion);

    let sign = Action::new(1, vec![IntMatrix::from_i64(&[&[-1]])])?;
    let h = twisted_h1(&f1, &sign)?;
    println!("H^1(Z; sign) = Z^{} torsion {:?}", h.free_rank, h.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>());

    let torus = surface_presentation(1)?;
    let h = twisted_h1(&torus, &Action::trivial(2, 1))?;
    println!("H^1(Z^2; Z) = Z^{}", h.free_rank);
    Ok(())
}
