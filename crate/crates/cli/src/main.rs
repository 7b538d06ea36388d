fn main() -> std::process::ExitCode {
    charvar_cli::cli::main()
}
