use std::path::PathBuf;

use e7spec::weyl::{init_weyl_group, weyl_group, WeylGroup};

/// The shared W(E7), cached under the cargo target directory.
pub fn w() -> &'static WeylGroup {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("weyl-e7.bin");
    init_weyl_group(Some(&path));
    weyl_group()
}
