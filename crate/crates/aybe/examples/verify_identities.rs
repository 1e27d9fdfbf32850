//! Running the verification sweeps programmatically and reading the reports.

use aybe::elliptic::SolutionParams;
use aybe::theta::ModularParameter;
use aybe::verify::{
    theorem_main_check, tolerances, verify_aybe, verify_skew, SampleScheme,
};
use aybe::C64;

fn main() -> aybe::Result<()> {
    let params = SolutionParams::new(3, 2, ModularParameter::new(C64::new(0.0, 0.8))?)?;
    let scheme = SampleScheme::default().with_count(100).with_seed(7);

    let aybe_rep = verify_aybe(&params, &params, &scheme, tolerances::AYBE)?;
    println!(
        "associative identity: {} (max rel {:.3e} over {} samples, {} skipped)",
        aybe_rep.verdict, aybe_rep.max_rel, aybe_rep.samples_used, aybe_rep.skipped
    );

    let skew_rep = verify_skew(&params, &params, &scheme, tolerances::SKEW)?;
    println!(
        "skew-symmetry:        {} (max rel {:.3e})",
        skew_rep.verdict, skew_rep.max_rel
    );

    let theorem = theorem_main_check(&params, &scheme, tolerances::THEOREM_MAIN)?;
    let fit = theorem.fitted_constant.unwrap();
    println!(
        "two-route cross-check: {} (deviation {:.3e}, fitted c = {}, spread {:.3e})",
        theorem.verdict,
        theorem.max_rel,
        C64::new(fit[0], fit[1]),
        theorem.constant_spread.unwrap()
    );

    // reports serialize as JSON lines for pipelines
    println!("{}", serde_json::to_string(&aybe_rep).unwrap());
    Ok(())
}
