mod suite;

fn main() {
    if !suite::run_all("core", None) {
        std::process::exit(1);
    }
}
