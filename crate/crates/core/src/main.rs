fn main() { std::process::exit(thermal_discord::cli::run()); }
