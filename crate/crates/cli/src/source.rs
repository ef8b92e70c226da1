use std::borrow::Cow;

use anyhow::{anyhow, Context, Result};
use hkpr_core::gen::{GenParams, Model};
use hkpr_core::graph::load_edge_list;
use hkpr_core::rng::{derive_seed, substream};
use hkpr_core::Graph;

use crate::args::{GraphArgs, ModelArg, SeedArgs};
use crate::report::Header;

pub fn model(arg: ModelArg) -> Model {
    match arg {
        ModelArg::Ws => Model::WattsStrogatz,
        ModelArg::Ba => Model::BarabasiAlbert,
        ModelArg::Plc => Model::PowerlawCluster,
    }
}

/// A file graph shared by every trial, or a model sampled anew per trial.
pub enum GraphSource {
    File(Graph),
    Model(ModelArg, GenParams),
}

impl GraphSource {
    pub fn open(args: &GraphArgs) -> Result<Self> {
        match (&args.graph, args.model) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                let list = load_edge_list(&text).with_context(|| format!("parsing {}", path.display()))?;
                Ok(GraphSource::File(list.graph))
            }
            (None, Some(m)) => Ok(GraphSource::Model(m, GenParams::new(args.n, args.d, args.p, 0)?)),
            (None, None) => Err(anyhow!("either --graph or --model is required")),
        }
    }

    pub fn describe(&self, args: &GraphArgs, header: &mut Header) {
        match self {
            GraphSource::File(g) => {
                let path = args.graph.as_ref().expect("file source has a path");
                header.push("graph", path.display());
                header.push("n", g.n());
                header.push("m", g.m());
            }
            GraphSource::Model(m, params) => {
                header.push("model", m.name());
                header.push("n", params.n);
                header.push("d", params.d);
                header.push("p", params.p);
            }
        }
    }

    /// The graph for a trial; generated graphs use `graph_seed`.
    pub fn graph(&self, graph_seed: u64) -> Result<Cow<'_, Graph>> {
        match self {
            GraphSource::File(g) => Ok(Cow::Borrowed(g)),
            GraphSource::Model(m, params) => {
                let params = GenParams {
                    seed: graph_seed,
                    ..*params
                };
                Ok(Cow::Owned(model(*m).generate(&params)?))
            }
        }
    }
}

/// Seeds for one trial, all derived from the master seed.
#[derive(Debug, Clone, Copy)]
pub struct TrialSeeds {
    pub graph: u64,
    pub vertex: u64,
    pub sampling: u64,
}

impl TrialSeeds {
    pub fn new(master: u64, trial: usize) -> Self {
        let trial_seed = derive_seed(master, trial as u64);
        Self {
            graph: derive_seed(trial_seed, 0),
            vertex: derive_seed(trial_seed, 1),
            sampling: derive_seed(trial_seed, 2),
        }
    }
}

pub fn seed_vertex(graph: &Graph, args: &SeedArgs, seed: u64) -> Result<usize> {
    match &args.seed_vertex {
        Some(label) => graph
            .vertex_by_label(label)
            .ok_or_else(|| anyhow!("seed vertex {label:?} is not in the graph")),
        None => Ok(graph.sample_by_degree(&mut substream(seed, 0))?),
    }
}

pub fn describe_seed(args: &SeedArgs, header: &mut Header) {
    match &args.seed_vertex {
        Some(label) => header.push("seed_vertex", label),
        None => header.push("seed_select", "degree"),
    }
}
