fn main() {
    std::process::exit(pdc_match::cli::run());
}
