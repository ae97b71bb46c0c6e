fn main() -> std::process::ExitCode {
    cdsbench::cli::main()
}
