use std::io::Write;

fn main() {
    let env_seed = std::env::var(leafkit_cli::SEED_ENV).ok();
    let out = leafkit_cli::run(std::env::args_os(), env_seed.as_deref());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    let _ = std::io::stdout().flush();
    std::process::exit(out.code);
}
