fn main() {
    std::process::exit(qcorr::cli::cli_main(std::env::args_os()));
}
