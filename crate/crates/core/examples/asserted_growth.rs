// Criteria fed by published growth bounds instead of computed ones.
//
// Free Burnside groups of large odd exponent on two generators have
// spherical growth at least 2.9 (Adian); surface groups of genus `g` with
// the standard `4g` generators have growth at least `4g - 3`. Verdicts
// built on such inputs are marked conditional.
//
// ```bash
// cargo run -p nonhermitian --example asserted_growth
// ```

use nonhermitian::criteria::{adian_rate, burnside_check, discrete_criterion, Verdict};
use nonhermitian::exact::{integer, Enclosure, Provenance};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let burnside = burnside_check(&adian_rate());
    println!("Burnside: {}", burnside.summary());
    for note in &burnside.notes {
        println!("  {note}");
    }
    if burnside.verdict != Verdict::Certified || !burnside.conditional {
        return Err("expected a conditional certificate".into());
    }
    for genus in 2..=4 {
        let omega = Enclosure::exact(integer(4 * genus - 3));
        let v = discrete_criterion(4 * genus as usize, &omega, Provenance::PaperConstant)?;
        println!("genus {genus}: {}", v.summary());
        if v.verdict != Verdict::Certified {
            return Err("surface groups of genus ≥ 2 should certify".into());
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
