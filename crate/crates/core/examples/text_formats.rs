//! Reading and writing system and cover files, and located diagnostics.

use invariance_entropy::fixtures;
use invariance_entropy::textio::{parse_cover, parse_system, serialize_cover, serialize_system};
use invariance_entropy::{Error, Result};

fn main() -> Result<()> {
    let sys = parse_system("system demo\nstates 0 1\ninputs a b\ntrans 1 a -> 0\ntrans 0 a -> 0 1\ntrans 0 b -> 1\ntrans 1 b -> 1\n")?;
    print!("{}", serialize_system(&sys));

    let file = parse_cover("cover whole\nover demo\ntarget 0 1\ncell A : 0 1 input a\n", &sys)?;
    let cover = file.build(&sys)?;
    print!("{}", serialize_cover(&sys, &file.name, &cover));

    let broken = "system broken\nstates 0 1\ninputs a\ntrans 0 a -> 1\ntrans 0 a -> 0\ntrans 1 a -> 7\n";
    match parse_system(broken) {
        Err(Error::Parse(diags)) => diags.iter().for_each(|d| println!("{d}")),
        other => println!("unexpected: {other:?}"),
    }

    let (ex4, a3) = fixtures::cover("ex4_a3");
    let text = serialize_cover(&ex4, "ex4_a3", &a3);
    let again = parse_cover(&text, &ex4)?.build(&ex4)?;
    println!("ex4_a3 round trip: {}", serialize_cover(&ex4, "ex4_a3", &again) == text);
    Ok(())
}
