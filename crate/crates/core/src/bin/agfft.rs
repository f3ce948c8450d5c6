fn main() -> std::process::ExitCode {
    agfft::cli::main()
}
