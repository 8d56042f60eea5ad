// Two-sided capacity data for the self-adjoint element
// `f = (δ_1 + δ_{-1})/2` of `ℓ¹(Z)`, whose spectrum is `[-1, 1]`.
//
// The LP upper values `min_p ‖f^n + p(f)‖₁^{1/n}` approach the Chebyshev
// constant ½ of the interval; the sphere masses give `2^{(1-n)/n}/2`.
//
// ```bash
// cargo run --release -p nonhermitian --example chebyshev_capacity
// ```

use nonhermitian::algebra::{witness_element, DEFAULT_SUPPORT_BUDGET};
use nonhermitian::capacity::{capacity_upper_lp, sphere_mass_lower};
use nonhermitian::exact::{fmt_rational, rational};
use nonhermitian::group::GroupBackend;
use nonhermitian::growth::{enumerate_balls, EnumerationOptions};
use num_traits::Pow;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let z = GroupBackend::free(1);
    let set = z.standard_generators()?;
    let f = witness_element(&z, &set)?;
    let degree = 12;
    let table = enumerate_balls(&z, &set, EnumerationOptions::new(degree).store_limit(degree))?;
    let lower = sphere_mass_lower(&z, &set, &f, &table, degree, DEFAULT_SUPPORT_BUDGET)?;
    let upper = capacity_upper_lp(&z, &f, degree, DEFAULT_SUPPORT_BUDGET)?;
    println!("{:>3}  {:>14}  {:>10}  {:>10}", "n", "LP optimum", "LP root", "lower root");
    for (l, u) in lower.iter().zip(&upper) {
        println!(
            "{:>3}  {:>14}  {:>10.6}  {:>10.6}",
            u.degree,
            fmt_rational(&u.optimum),
            u.root.midpoint_f64(),
            l.root.midpoint_f64()
        );
        // The optimum is attained by the scaled Chebyshev polynomial.
        if u.optimum != Pow::pow(&rational(1, 2), u.degree as u32 - 1) {
            return Err(format!("degree {}: optimum {} is not 2^(1-n)", u.degree, u.optimum).into());
        }
        if l.mass > u.optimum {
            return Err("lower data exceed upper data".into());
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
