fn main() {
    std::process::exit(plane3c::cli::main());
}
