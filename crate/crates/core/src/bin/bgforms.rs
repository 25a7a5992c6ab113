fn main() -> std::process::ExitCode {
    bgforms::cli::main()
}
