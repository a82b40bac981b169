fn main() {
    let mut out = std::io::stdout().lock();
    std::process::exit(ringgroom::cli::run(std::env::args_os(), &mut out));
}
