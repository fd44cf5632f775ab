fn main() {
    std::process::exit(wysiwyg::cli::run(std::env::args_os()));
}
