// Running the command line front end in-process.

use fibred_groups::cli::run;

fn main() {
    let data = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data");
    let bad = format!("{data}/bad.mod");
    let out = run(["fibred", "obstruct", "--group", "surface:2", "--module", &bad]);
    print!("{}", out.stdout);
    println!("exit {}", out.exit_code);

    let out = run(["fibred", "euler", "--compact", "--e", "4", "--g", "2", "--r", "2", "--json"]);
    print!("{}", out.stdout);
}
