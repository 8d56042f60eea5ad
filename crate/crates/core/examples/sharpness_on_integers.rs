// The integers sit exactly on the boundary: `ω = 1 = |S|/2` for
// `S = {1, -1}`, and the capacity of `(δ_1 + δ_{-1})/2` equals half its
// spectral radius, so no certificate can be issued.
//
// ```bash
// cargo run -p nonhermitian --example sharpness_on_integers
// ```

use nonhermitian::algebra::{spectral_radius_upper, witness_element, DEFAULT_SUPPORT_BUDGET};
use nonhermitian::capacity::{frw_certificate, lower_limit_from_growth, CapacityBounds, FrwVerdict};
use nonhermitian::criteria::{discrete_criterion, general_threshold, CriterionInput, Verdict};
use nonhermitian::exact::fmt_rational;
use nonhermitian::group::GroupBackend;
use nonhermitian::growth::exact_growth;
use num_traits::Zero;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let z = GroupBackend::free(1);
    let set = z.standard_generators()?;
    let exact = exact_growth(&z, &set)?.ok_or("closed form")?;

    let input = CriterionInput::discrete(set.len(), exact.omega.clone(), exact.provenance);
    println!("threshold = {}", fmt_rational(&general_threshold(&input)?));
    let verdict = discrete_criterion(set.len(), &exact.omega, exact.provenance)?;
    println!("{}", verdict.summary());
    if verdict.verdict != Verdict::EqualityBoundary {
        return Err("the integers must land on the equality boundary".into());
    }

    let f = witness_element(&z, &set)?;
    let r = spectral_radius_upper(&z, &f, 4, DEFAULT_SUPPORT_BUDGET)?;
    let bounds = CapacityBounds {
        witness: "(δ_1 + δ_-1)/2".into(),
        set_size: 2,
        lower_sphere: Vec::new(),
        lower_limit: Some(lower_limit_from_growth(&exact.sigma, exact.provenance, 2, exact.method)?),
        upper_lp: Vec::new(),
        spectral_upper: Some(r.clone()),
    };
    let cert = frw_certificate(&bounds, &r)?;
    println!("{}", cert.summary());
    if cert.verdict != FrwVerdict::Inconclusive || !cert.margin.is_zero() {
        return Err("expected INCONCLUSIVE with margin 0".into());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
