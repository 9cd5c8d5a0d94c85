fn main() {
    // Dense oracle routines (zgeev/zgetrf/zgesvd) come from the system
    // OpenBLAS, which bundles LAPACK on Debian-family systems.
    println!("cargo:rustc-link-lib=openblas");
}
