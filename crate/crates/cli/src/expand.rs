//! Model selection and the text / JSON / CSV renderings of a series.

use std::collections::BTreeMap;
use std::fmt;

use blossom_core::gf::{
    bipartite_map_gf, hard_particle_gf, hard_tetravalent_closed, hard_trivalent_closed, ising_quasi_cubic_closed,
    ising_quasi_tetravalent_closed, ising_regular, ising_tetravalent_closed, WeightSystem,
};
use blossom_core::{Grading, Series, VarId};
use clap::ValueEnum;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Bipartite,
    Hard,
    Ising,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Class {
    General,
    Tetravalent,
    Trivalent,
    QuasiTetravalent,
    QuasiCubic,
    MRegular,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GradingChoice {
    Edges,
    Vertices,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

fn name<T: ValueEnum>(v: &T) -> String {
    v.to_possible_value().expect("no skipped variants").get_name().to_string()
}

/// A validated request for one series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunConfig {
    pub model: Model,
    pub class: Class,
    pub m: Option<usize>,
    pub order: u32,
    pub grading: GradingChoice,
}

impl RunConfig {
    pub fn new(model: Model, class: Class, m: Option<usize>, order: u32, grading: Option<GradingChoice>) -> Result<Self, String> {
        if order == 0 {
            return Err("order must be at least 1".into());
        }
        let fixed = match class {
            Class::Tetravalent | Class::QuasiTetravalent => Some(4),
            Class::Trivalent | Class::QuasiCubic => Some(3),
            Class::General | Class::MRegular => None,
        };
        let m = match (fixed, m, class) {
            (Some(f), Some(m), _) if f != m => return Err(format!("class {} has m = {f}, not {m}", name(&class))),
            (Some(f), _, _) => Some(f),
            (None, Some(m), Class::MRegular) if m >= 1 => Some(m),
            (None, _, Class::MRegular) => return Err("class m-regular needs --m ≥ 1".into()),
            (None, Some(_), _) => return Err(format!("--m does not apply to class {}", name(&class))),
            (None, None, _) => None,
        };
        let ok = match model {
            Model::Bipartite => matches!(class, Class::General | Class::Tetravalent | Class::Trivalent | Class::MRegular),
            Model::Hard => matches!(class, Class::Tetravalent | Class::Trivalent | Class::MRegular),
            Model::Ising => class != Class::General,
        };
        if !ok {
            return Err(format!("class {} is not available for model {}", name(&class), name(&model)));
        }
        let grading = grading.unwrap_or(if model == Model::Bipartite { GradingChoice::Edges } else { GradingChoice::Vertices });
        if class == Class::General && grading == GradingChoice::Vertices {
            return Err("class general needs the edge grading: vertex degrees are unbounded".into());
        }
        Ok(RunConfig { model, class, m, order, grading })
    }

    /// `key = value` lines, readable back as a config file.
    pub fn header(&self) -> String {
        let mut s = format!("model = {}\nclass = {}\n", name(&self.model), name(&self.class));
        if self.class == Class::MRegular {
            s += &format!("m = {}\n", self.m.unwrap_or(0));
        }
        s + &format!("order = {}\ngrading = {}\n", self.order, name(&self.grading))
    }

    pub fn from_pairs(pairs: &[(String, String)]) -> Result<Self, String> {
        let get = |k: &str| pairs.iter().rev().find(|(key, _)| key == k).map(|(_, v)| v.as_str());
        let need = |k: &str| get(k).ok_or_else(|| format!("missing key {k}"));
        let model = Model::from_str(need("model")?, false)?;
        let class = Class::from_str(need("class")?, false)?;
        let m = get("m").map(|v| v.parse().map_err(|_| format!("bad m {v:?}"))).transpose()?;
        let order = need("order")?.parse().map_err(|_| "bad order".to_string())?;
        let grading = get("grading").map(|v| GradingChoice::from_str(v, false)).transpose()?;
        RunConfig::new(model, class, m, order, grading)
    }

    /// Degrees that carry a weight.
    fn degrees(&self) -> Vec<usize> {
        match self.m {
            Some(m) => vec![m],
            None => (1..=self.order as usize + 1).collect(),
        }
    }

    /// Black degrees: the bipartite series is rooted at a black vertex of
    /// degree 2, so `y2` is always present there.
    fn black_degrees(&self) -> Vec<usize> {
        let mut ks = self.degrees();
        if self.model == Model::Bipartite && !ks.contains(&2) {
            ks.insert(0, 2);
        }
        ks
    }

    pub fn grading(&self) -> Grading {
        let (order, edges) = match self.grading {
            GradingChoice::Edges => (2 * self.order, true),
            GradingChoice::Vertices => (self.order, false),
        };
        let pair = |k: usize| match self.model {
            Model::Bipartite => [VarId::x(k), VarId::y(k)],
            _ => [VarId::big_x(k), VarId::big_y(k)],
        };
        let weight = |k: usize| if edges { k as u32 } else { 1 };
        let whites = self.degrees().into_iter().map(|k| (pair(k)[0], weight(k)));
        let blacks = self.black_degrees().into_iter().map(|k| (pair(k)[1], weight(k)));
        Grading::new(order, whites.chain(blacks))
    }

    pub fn compute(&self) -> blossom_core::Result<Series> {
        let g = self.grading();
        let ks = self.degrees();
        match (self.model, self.class) {
            (Model::Bipartite, _) => bipartite_map_gf(&WeightSystem::indeterminate(&g, &ks, &self.black_degrees())?),
            (Model::Hard, Class::Tetravalent) => hard_tetravalent_closed(&g),
            (Model::Hard, Class::Trivalent) => hard_trivalent_closed(&g),
            (Model::Hard, _) => hard_particle_gf(&ks, &ks, &g),
            (Model::Ising, Class::QuasiTetravalent) => ising_quasi_tetravalent_closed(&g),
            (Model::Ising, Class::QuasiCubic) => ising_quasi_cubic_closed(&g),
            (Model::Ising, Class::Tetravalent) => ising_tetravalent_closed(&g),
            (Model::Ising, _) => ising_regular(ks[0], &g),
        }
    }
}

#[derive(Serialize)]
struct JsonTerm {
    monomial: BTreeMap<String, i32>,
    coeff_num: String,
    coeff_den: String,
}

#[derive(Serialize)]
struct JsonSeries {
    model: String,
    class: String,
    order: u32,
    grading: String,
    terms: Vec<JsonTerm>,
}

/// `(monomial, numerator, denominator)` strings, in canonical order.
fn rows(s: &Series) -> Vec<(String, String, String)> {
    s.sorted_terms()
        .into_iter()
        .map(|(m, c)| {
            let c = c.to_string();
            let (n, d) = c.split_once('/').expect("num/den form");
            (m.to_string(), n.to_string(), d.to_string())
        })
        .collect()
}

pub struct Rendered<'a> {
    pub cfg: &'a RunConfig,
    pub series: &'a Series,
    pub format: Format,
}

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.format {
            Format::Text => {
                for line in self.cfg.header().lines() {
                    writeln!(f, "# {line}")?;
                }
                write!(f, "{}", self.series)
            }
            Format::Csv => {
                writeln!(f, "monomial,coefficient-numerator,coefficient-denominator")?;
                for (m, n, d) in rows(self.series) {
                    writeln!(f, "{m},{n},{d}")?;
                }
                Ok(())
            }
            Format::Json => {
                let terms = self
                    .series
                    .sorted_terms()
                    .into_iter()
                    .zip(rows(self.series))
                    .map(|((m, _), (_, n, d))| JsonTerm {
                        monomial: m.iter().map(|(v, e)| (v.to_string(), e)).collect(),
                        coeff_num: n,
                        coeff_den: d,
                    })
                    .collect();
                let doc = JsonSeries {
                    model: name(&self.cfg.model),
                    class: name(&self.cfg.class),
                    order: self.cfg.order,
                    grading: name(&self.cfg.grading),
                    terms,
                };
                writeln!(f, "{}", serde_json::to_string_pretty(&doc).map_err(|_| fmt::Error)?)
            }
        }
    }
}
