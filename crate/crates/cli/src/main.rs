fn main() {
    std::process::exit(ssot::run(std::env::args_os()));
}
