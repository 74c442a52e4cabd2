//! Exact checks of the determinant identities that characterize components
//! of polynomial automorphisms of the plane and Keller components among
//! monic polynomials `f(x, y) = y^m + a_1(x) y^{m-1} + ... + a_m(x)`.

pub mod algebra;
pub mod cli;
pub mod keller;
pub mod oracles;
pub mod polymatrix;
