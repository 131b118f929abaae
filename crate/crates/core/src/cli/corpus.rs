use super::CommandName;

/// A bundled job: the command, its input text and an optional `--ext`.
#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub command: CommandName,
    pub ext: Option<u32>,
    pub input: &'static str,
}

macro_rules! fixture {
    ($name:literal, $cmd:ident, $ext:expr) => {
        Fixture {
            name: $name,
            command: CommandName::$cmd,
            ext: $ext,
            input: include_str!(concat!("../../fixtures/", $name, ".json")),
        }
    };
}

pub fn corpus() -> Vec<Fixture> {
    vec![
        fixture!("exeasy_z2", GaussSum, None),
        fixture!("z3", GaussSum, None),
        fixture!("hyperbolic", GaussVerify, None),
        fixture!("field_f4", Field, Some(2)),
        fixture!("witt_f3", Witt, None),
        fixture!("gacase_p2", Kernel, None),
        fixture!("gacase_p3", Kernel, None),
        fixture!("hwex_gl_f2", HasseDavenport, Some(3)),
        fixture!("hwex_gl_f4", Kernel, None),
        fixture!("hwex_unitary_f4", Invariance, Some(1)),
        fixture!("hwex_gl1_f2", Invariance, Some(1)),
        fixture!("witt_f2", HasseDavenport, Some(3)),
        fixture!("clb_f4", ClbNormalize, Some(2)),
        fixture!("vdgv_f2", Zeta, None),
        fixture!("vdgv_f3", Zeta, None),
        fixture!("surface_p2", Supersingular, Some(2)),
        fixture!("surface_p3", Supersingular, Some(1)),
        fixture!("endw2_f4", Endw2Verify, Some(1)),
        fixture!("extraspecial_p2", Heisenberg, None),
        fixture!("extraspecial_p3", Heisenberg, None),
        fixture!("gacase_heisenberg_p3", Heisenberg, None),
    ]
}

pub fn fixture(name: &str) -> Option<Fixture> {
    corpus().into_iter().find(|f| f.name == name)
}
