fn main() {
    std::process::exit(xyent::cli::run());
}
