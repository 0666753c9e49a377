fn main() {
    std::process::exit(qfano::catalog::placeholder_exit());
}
