//! On-disk form of an instance: the graph document, a flat metadata file,
//! and a tab-separated role table. All three render byte-deterministically
//! from the instance.

use crate::ReductionInstance;
use graph_core::format::KecsDocument;
use std::fs;
use std::io;
use std::path::Path;

/// Renders the metadata file: one `key=value` per line, big integers in
/// decimal.
pub(crate) fn render_meta(inst: &ReductionInstance) -> String {
    let mut out = String::new();
    out.push_str(&format!("kind={}\n", inst.kind));
    out.push_str(&format!("m={}\n", inst.meta.m));
    out.push_str(&format!("n={}\n", inst.meta.n));
    out.push_str(&format!("K={}\n", inst.meta.k_param));
    if let Some(q) = inst.meta.q {
        out.push_str(&format!("q={q}\n"));
    }
    out.push_str(&format!("threshold={}\n", inst.meta.threshold));
    out
}

/// Renders the role table: `id<TAB>role<TAB>clause<TAB>variable` per
/// vertex, ascending by id, `-` for fields that do not apply.
pub(crate) fn render_roles(inst: &ReductionInstance) -> String {
    let mut out = String::new();
    for (v, role) in &inst.roles {
        let clause = role
            .clause
            .map(|c| c.to_string())
            .unwrap_or_else(|| "-".into());
        let variable = role
            .variable
            .map(|x| x.to_string())
            .unwrap_or_else(|| "-".into());
        out.push_str(&format!("{v}\t{}\t{clause}\t{variable}\n", role.tag));
    }
    out
}

/// Writes `graph.kecs`, `meta.txt`, and `roles.tsv` into `dir`, creating
/// the directory if needed.
pub fn emit_instance(inst: &ReductionInstance, dir: &Path) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let doc = KecsDocument::from_parts(
        &inst.graph,
        inst.weights.as_ref(),
        inst.constraints.as_ref(),
    );
    fs::write(dir.join("graph.kecs"), doc.render())?;
    fs::write(dir.join("meta.txt"), render_meta(inst))?;
    fs::write(dir.join("roles.tsv"), render_roles(inst))?;
    Ok(())
}
