fn main() {
    let (out, code) = nonres::cli::run_command(std::env::args_os());
    print!("{out}");
    std::process::exit(code);
}
