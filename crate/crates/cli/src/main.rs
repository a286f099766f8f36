fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let catalog = qcong_core::Catalog::standard();
    let code = qcong::run(&args, &catalog, &mut std::io::stdout().lock(), &mut std::io::stderr().lock());
    std::process::exit(code);
}
