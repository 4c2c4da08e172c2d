fn main() {
    std::process::exit(afm_cli::app::main_with(std::env::args_os()));
}
