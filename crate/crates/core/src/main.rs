use std::io::{stderr, stdout, BufWriter, Write};

fn main() {
    let mut out = BufWriter::new(stdout().lock());
    let code = probderange::cli::run(std::env::args_os(), &mut out, &mut stderr());
    let _ = out.flush();
    std::process::exit(code);
}
