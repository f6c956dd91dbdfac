//! Parses a pulse program, prints its events and renders it back to text.

use nmr_geophase::pulse::{parse_sequence, render_sequence, SpinSystemParams};

const PROGRAM: &str = "\
# refocused evolution on spin b
frame b offset -0.5piJ
pulse b x 90deg
delay 1/(4J)
pulse b y 180deg
delay 1/(4J)
grad z
";

fn main() -> nmr_geophase::Result<()> {
    let prog = parse_sequence(PROGRAM, &SpinSystemParams::default())?;
    for (k, ev) in prog.events().iter().enumerate() {
        println!("{k}: {ev}");
    }
    println!("duration {:.6} ms", prog.total_duration() * 1e3);
    print!("{}", render_sequence(&prog));

    match parse_sequence("pulse c x 90deg\n", &SpinSystemParams::default()) {
        Err(e) => println!("rejected: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
