fn main() {
    println!("pathmode");
}
