//! The eight (a, b) octants of the hexagonal amplitude system: which steady
//! states exist on each side of onset, and where a trajectory from a small
//! generic start ends up.

use mhdconv::dynamics::{run_to_fate, steady_states, Fate, HexSystem, System};
use mhdconv::transition::real::{region_of, RegionLabel};

fn main() -> mhdconv::Result<()> {
    for label in RegionLabel::ALL {
        let (a, b) = label.sample();
        assert_eq!(region_of(a, b)?, label);
        println!("{label:<5} a={a:+} b={b:+}  {}", label.transition_type());
        let inv = steady_states(a, b, 0.1)?;
        let stable: Vec<&str> = inv.existing().filter(|s| s.stable()).map(|s| s.name.as_str()).collect();
        let present: Vec<&str> = inv.existing().map(|s| s.name.as_str()).collect();
        println!("      above onset: {}", if present.is_empty() { "-".into() } else { present.join(" ") });
        println!("      stable: {}", if stable.is_empty() { "-".into() } else { stable.join(" ") });
        let sys = System::Hex(HexSystem { a, b, beta: 0.1 });
        match run_to_fate(&sys, [0.03, 0.01], 1e-2, 2_000_000) {
            Fate::Converged { state, t } => println!("      (0.03,0.01) -> ({:+.5}, {:+.5}) at t={t:.0}", state[0], state[1]),
            Fate::Escaped { t } => println!("      (0.03,0.01) escapes at t={t:.1}"),
            Fate::Undecided { state } => println!("      (0.03,0.01) undecided at {state:?}"),
        }
    }
    Ok(())
}
