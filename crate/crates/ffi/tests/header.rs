//! Compiles a C and a C++ translation unit against the generated header.

use std::path::Path;
use std::process::Command;

const PROGRAM: &str = r#"
#include "clevershop.h"

int run(const char *text) {
    CsInstance *inst = NULL;
    CsSolution *sol = NULL;
    char *out = NULL;
    int32_t code = 0;
    int64_t cost = 0;
    size_t shop = 0;
    int within = 0;
    if (cs_instance_parse(text, &inst) != CS_STATUS_OK) {
        const char *msg = cs_last_error_message();
        return msg ? 1 : 2;
    }
    cs_algorithm_from_name("subset-dp", &code);
    if (cs_solve(inst, CS_ALGORITHM_SUBSET_DP, false, 0, &sol) == CS_STATUS_OK) {
        cs_solution_total_cost(sol, &cost);
        cs_solution_total_discount(sol, &cost);
        cs_solution_shop_of(sol, 0, &shop);
        cs_solution_within_budget(sol, &within);
        cs_solution_serialize(sol, &out);
        cs_string_free(out);
        cs_solution_free(sol);
    }
    cs_instance_serialize(inst, &out);
    cs_string_free(out);
    return (int)(cs_instance_num_books(inst) + cs_instance_num_shops(inst) + cs_solution_num_books(NULL));
}
"#;

fn compile(compiler: &str, lang: &str) {
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let source = dir.path().join("use_header.src");
    std::fs::write(&source, PROGRAM).unwrap();
    let output = match Command::new(compiler)
        .args(["-x", lang, "-fsyntax-only", "-Wall", "-Werror", "-I"])
        .arg(&include)
        .arg(&source)
        .output()
    {
        Ok(output) => output,
        Err(e) => {
            eprintln!("skipping: {compiler} unavailable ({e})");
            return;
        }
    };
    assert!(
        output.status.success(),
        "{}",
        String::from_utf8_lossy(&output.stderr)
    );
}

#[test]
fn header_compiles_as_c() {
    compile("cc", "c");
}

#[test]
fn header_compiles_as_cpp() {
    compile("c++", "c++");
}
