// The free group of rank 2 with `S = {a, a', b, b'}` is not Hermitian.
//
// Growth is exactly 3 > |S|/2 = 2, and the capacity of the uniform
// measure on `S` is at least 3/4 while its spectral radius is at most 1.
//
// ```bash
// cargo run -p nonhermitian --example free_group_certificate
// ```

use nonhermitian::algebra::{spectral_radius_upper, witness_element, DEFAULT_SUPPORT_BUDGET};
use nonhermitian::capacity::{
    frw_certificate, lower_limit_from_growth, sphere_mass_lower, CapacityBounds, FrwVerdict,
};
use nonhermitian::criteria::{discrete_criterion, Verdict};
use nonhermitian::group::GroupBackend;
use nonhermitian::growth::{enumerate_balls, exact_growth, EnumerationOptions};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let group = GroupBackend::free(2);
    let set = group.standard_generators()?;
    let exact = exact_growth(&group, &set)?.ok_or("free groups have a closed form")?;
    println!("omega = {} ({})", exact.omega, exact.provenance);

    let verdict = discrete_criterion(set.len(), &exact.omega, exact.provenance)?;
    println!("{}", verdict.summary());
    if verdict.verdict != Verdict::Certified {
        return Err("expected the discrete criterion to certify".into());
    }

    let f = witness_element(&group, &set)?;
    let table = enumerate_balls(&group, &set, EnumerationOptions::new(6).store_limit(6))?;
    let masses = sphere_mass_lower(&group, &set, &f, &table, 6, DEFAULT_SUPPORT_BUDGET)?;
    for m in &masses {
        println!("n = {}: sphere mass {} root {:.6}", m.degree, m.mass, m.root.midpoint_f64());
    }

    let r = spectral_radius_upper(&group, &f, 4, DEFAULT_SUPPORT_BUDGET)?;
    let bounds = CapacityBounds {
        witness: format!("uniform measure on {}", set.describe(&group)),
        set_size: set.len(),
        lower_sphere: masses,
        lower_limit: Some(lower_limit_from_growth(&exact.sigma, exact.provenance, set.len(), exact.method)?),
        upper_lp: Vec::new(),
        spectral_upper: Some(r.clone()),
    };
    let cert = frw_certificate(&bounds, &r)?;
    println!("{}", cert.summary());
    if cert.verdict != FrwVerdict::NotHermitian {
        return Err("expected a NOT_HERMITIAN certificate".into());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
