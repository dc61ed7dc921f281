// mdbook cannot compile listings against a local crate, so every chapter of
// the guide is pulled in here as the docs of an empty module and rustdoc
// runs the listings as doc-tests. One module per chapter keeps a failing
// listing traceable to its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/programs.md")]
pub mod programs {}
#[doc = include_str!("../../../book/src/odd-loops.md")]
pub mod odd_loops {}
#[doc = include_str!("../../../book/src/splitting-sets.md")]
pub mod splitting_sets {}
#[doc = include_str!("../../../book/src/solving.md")]
pub mod solving {}
#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}
#[doc = include_str!("../../../book/src/bench.md")]
pub mod bench {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
