//! Driving the command layer from a TOML document, as the binary does.

use qmediator::circuits::ConfigDocument;
use qmediator::cli::{render, Command, Invocation};

fn main() {
    let doc = ConfigDocument::from_toml(
        r#"
network = "symmetric"
p_grid = "0:0.5:0.125"
epsilon = 0.8
"#,
    )
    .expect("valid config");
    let mut inv = Invocation::new(Command::Sweep);
    inv.overrides = doc;
    match render(&inv) {
        Ok(out) => print!("{}", out.text),
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(e.exit_code());
        }
    }
}
