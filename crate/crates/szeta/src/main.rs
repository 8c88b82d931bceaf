fn main() {
    std::process::exit(szeta::cli::run());
}
