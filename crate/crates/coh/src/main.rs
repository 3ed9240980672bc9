fn main() {
    std::process::exit(coh::run(std::env::args_os()));
}
