//! Exhaustive property checks over all subsets (n ≤ 14): monotonicity,
//! submodularity, and the second-order supermodularity that the convergence
//! guarantee needs. Coverage passes all three; a truncated-cardinality
//! function shows a second-order violation with its witness.

use minsum_cover::{
    check_all_properties, check_property, CoverageUtility, PropertyKind, TabulatedUtility,
};

fn main() -> minsum_cover::Result<()> {
    let coverage = CoverageUtility::new(6, vec![vec![0, 1], vec![2, 3], vec![3, 4, 5], vec![0]])?;
    println!("coverage utility:");
    for report in check_all_properties(&coverage)? {
        println!("  {}: {}", report.property, if report.holds { "holds" } else { "violated" });
    }

    // min(|S|, 2): submodular, but not second-order supermodular.
    let truncated = TabulatedUtility::from_fn(3, |s| s.len().min(2) as f64)?;
    println!("min(|S|, 2) on 3 elements:");
    let sub = check_property(&truncated, PropertyKind::Submodular)?;
    println!("  {}: {}", sub.property, if sub.holds { "holds" } else { "violated" });
    let second = check_property(&truncated, PropertyKind::SecondOrderSupermodular)?;
    println!(
        "  {}: {}",
        second.property,
        if second.holds { "holds" } else { "violated" }
    );
    if let Some(w) = second.witness {
        println!(
            "  witness: S = {:?}, i = {}, j = {:?}, k = {:?}: {} < {}",
            w.subset, w.i, w.j, w.k, w.lhs, w.rhs
        );
    }
    Ok(())
}
