// Hecke measures and the non-Hermitianity inequality for `GL_n(Q_p)`.
//
// ```bash
// cargo run -p nonhermitian --example padic_scan
// ```

use nonhermitian::exact::fmt_rational;
use nonhermitian::padic::{gl_criterion, hecke_measure, inequality_scan, sl_measure, Signature, SPECIAL_CASES};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let v = gl_criterion(2, 5)?;
    println!(
        "GL_2(Q_5): μ = {}, ω ≥ {}, inequality = {} → {}",
        v.mu.value,
        v.omega_lower,
        fmt_rational(&v.inequality),
        v.verdict.verdict
    );

    let ns: Vec<usize> = (2..=10).collect();
    let rows = inequality_scan(&ns, &[5, 7, 11, 13])?;
    println!("scan n = 2..10, p ∈ {{5, 7, 11, 13}}: {} of {} positive", rows.iter().filter(|r| r.certified).count(), rows.len());
    if !rows.iter().all(|r| r.certified) {
        return Err("scan found a nonpositive value".into());
    }
    for (n, p) in SPECIAL_CASES.into_iter().chain([(4, 3), (10, 2)]) {
        let g = gl_criterion(n, p)?;
        println!("  (n, p) = ({n}, {p}): {} → {}", fmt_rational(&g.inequality), g.verdict.verdict);
    }

    let lambda: Signature = "2,-1,-1".parse()?;
    let gl = hecke_measure(3, 5, &lambda)?;
    let sl = sl_measure(3, 5, &lambda)?;
    println!("λ = ({lambda}): GL measure {}, SL measure {}", gl.value, sl.value);
    if gl.value != sl.value {
        return Err("SL and GL measures differ".into());
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
