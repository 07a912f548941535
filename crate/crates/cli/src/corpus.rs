//! The bundled named graphs and their reference statistics.

use crate::io::{parse_col, GraphFile, ParseError};

const MANIFEST: &str = include_str!("../corpus/manifest.csv");

const FILES: &[(&str, &str)] = &[
    ("blanusa_second_snark.col", include_str!("../corpus/blanusa_second_snark.col")),
    ("chvatal.col", include_str!("../corpus/chvatal.col")),
    ("clebsch.col", include_str!("../corpus/clebsch.col")),
    ("desargues.col", include_str!("../corpus/desargues.col")),
    ("dodecahedral.col", include_str!("../corpus/dodecahedral.col")),
    ("errera.col", include_str!("../corpus/errera.col")),
    ("flower_snark.col", include_str!("../corpus/flower_snark.col")),
    ("folkman.col", include_str!("../corpus/folkman.col")),
    ("friendship_10.col", include_str!("../corpus/friendship_10.col")),
    ("generalized_petersen.col", include_str!("../corpus/generalized_petersen.col")),
    ("goethals_seidel.col", include_str!("../corpus/goethals_seidel.col")),
    ("goldner_harary.col", include_str!("../corpus/goldner_harary.col")),
    ("grotzsch.col", include_str!("../corpus/grotzsch.col")),
    ("heawood.col", include_str!("../corpus/heawood.col")),
    ("hoffman.col", include_str!("../corpus/hoffman.col")),
    ("icosahedral.col", include_str!("../corpus/icosahedral.col")),
    ("markstroem.col", include_str!("../corpus/markstroem.col")),
    ("mcgee.col", include_str!("../corpus/mcgee.col")),
    ("nauru.col", include_str!("../corpus/nauru.col")),
    ("paley_17.col", include_str!("../corpus/paley_17.col")),
    ("pappus.col", include_str!("../corpus/pappus.col")),
    ("poussin.col", include_str!("../corpus/poussin.col")),
    ("shrikhande.col", include_str!("../corpus/shrikhande.col")),
    ("sierpinski_gasket.col", include_str!("../corpus/sierpinski_gasket.col")),
];

/// One manifest row: the expected statistics at the minimal winning `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expected {
    pub name: String,
    pub file: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub pit: u64,
    pub arena: u128,
    pub colosseum: u64,
}

#[derive(Clone, Debug)]
pub struct NamedGraph {
    pub expected: Expected,
    pub graph: GraphFile,
}

pub fn manifest() -> Vec<Expected> {
    MANIFEST
        .lines()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|line| {
            let f: Vec<&str> = line.split(',').collect();
            assert_eq!(f.len(), 8, "malformed manifest row `{line}`");
            let num = |i: usize| f[i].parse::<u64>().unwrap_or_else(|_| panic!("bad number in `{line}`"));
            Expected {
                name: f[0].to_string(),
                file: f[1].to_string(),
                n: num(2) as usize,
                m: num(3) as usize,
                k: num(4) as usize,
                pit: num(5),
                arena: num(6) as u128,
                colosseum: num(7),
            }
        })
        .collect()
}

fn file_text(file: &str) -> Option<&'static str> {
    FILES.iter().find(|(f, _)| *f == file).map(|(_, text)| *text)
}

/// All named graphs in manifest order.
pub fn named_graphs() -> Vec<NamedGraph> {
    manifest()
        .into_iter()
        .map(|expected| {
            let text = file_text(&expected.file).expect("manifest lists a bundled file");
            let graph = parse_col(text).expect("bundled files parse");
            NamedGraph { expected, graph }
        })
        .collect()
}

/// Looks a graph up by manifest name or file stem, ignoring case, spaces
/// and punctuation.
pub fn named(name: &str) -> Option<NamedGraph> {
    let key = normalize(name);
    named_graphs()
        .into_iter()
        .find(|g| normalize(&g.expected.name) == key || normalize(g.expected.file.trim_end_matches(".col")) == key)
}

pub fn names() -> Vec<String> {
    manifest().into_iter().map(|e| e.name).collect()
}

fn normalize(s: &str) -> String {
    s.chars().filter(|c| c.is_ascii_alphanumeric()).map(|c| c.to_ascii_lowercase()).collect()
}

/// Parses every `.gr`/`.col` file in `dir`, sorted by file name.
pub fn load_dir(dir: &std::path::Path) -> anyhow::Result<Vec<(String, GraphFile)>> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("gr" | "col")))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = std::fs::read_to_string(&p)?;
            let graph = crate::io::parse_graph(&text).map_err(|e: ParseError| anyhow::anyhow!("{}: {e}", p.display()))?;
            let stem = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            Ok((graph.name.clone().unwrap_or(stem), graph))
        })
        .collect()
}
