use std::io::Write;

fn main() {
    let out = hok_cli::run(std::env::args());
    if !out.stderr.is_empty() {
        eprint!("{}", out.stderr);
    }
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.stdout.as_bytes());
    let _ = stdout.flush();
    std::process::exit(out.code);
}
