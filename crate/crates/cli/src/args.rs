use std::path::PathBuf;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, ValueEnum};
use fbpaths::graph::io;
use fbpaths::{BucketQueueConfig, FbConfig, QueueKind, SortedDigraph, WeightKind, WeightModel};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dist {
    Exp,
    Uniform,
    Weibull,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algo {
    Dijkstra,
    Spira,
    Fb,
}

impl Algo {
    pub fn name(self) -> &'static str {
        match self {
            Algo::Dijkstra => "dijkstra",
            Algo::Spira => "spira",
            Algo::Fb => "fb",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Pq {
    Binheap,
    Bucket,
}

/// Edge cost model of generated graphs.
#[derive(Debug, Clone, Args, Serialize)]
pub struct ModelArgs {
    /// Edge cost distribution.
    #[arg(long, value_enum, default_value_t = Dist::Exp)]
    pub dist: Dist,
    /// Weibull shape `s`; costs are `Exp(1)^s`.
    #[arg(long)]
    pub shape: Option<f64>,
    /// Symmetric costs.
    #[arg(long)]
    pub undirected: bool,
}

impl ModelArgs {
    pub fn kind(&self) -> Result<WeightKind> {
        let kind = match (self.dist, self.shape) {
            (Dist::Exp, None) => WeightKind::Exponential,
            (Dist::Uniform, None) => WeightKind::Uniform,
            (Dist::Weibull, Some(shape)) => WeightKind::Weibull { shape },
            (Dist::Weibull, None) => bail!("--dist weibull requires --shape"),
            (_, Some(_)) => bail!("--shape only applies to --dist weibull"),
        };
        kind.validate()?;
        Ok(kind)
    }

    pub fn directed(&self) -> bool {
        !self.undirected
    }

    pub fn generate(&self, n: usize, seed: u64) -> Result<SortedDigraph> {
        ensure!(n >= 1, "n must be at least 1");
        Ok(SortedDigraph::gen_complete(n, &WeightModel::new(self.kind()?, seed), self.directed())?)
    }
}

/// Where a graph comes from: generated from a model, or loaded from a file.
#[derive(Debug, Clone, Args, Serialize)]
pub struct GraphArgs {
    /// Number of vertices of the generated complete graph.
    #[arg(long, default_value_t = 1000)]
    pub n: usize,
    #[command(flatten)]
    pub model: ModelArgs,
    /// Load this graph file instead of generating one.
    #[arg(long, conflicts_with_all = ["n", "dist", "shape", "undirected"])]
    pub graph: Option<PathBuf>,
}

impl GraphArgs {
    pub fn validate(&self) -> Result<()> {
        if self.graph.is_none() {
            ensure!(self.n >= 1, "--n must be at least 1");
            self.model.kind()?;
        }
        Ok(())
    }

    /// Label for reports.
    pub fn model_name(&self) -> String {
        match &self.graph {
            Some(p) => format!("file:{}", p.display()),
            None => self.model.kind().map(|k| k.name()).unwrap_or_default(),
        }
    }

    /// The loaded graph, or a freshly generated one with `seed`.
    pub fn build(&self, seed: u64) -> Result<SortedDigraph> {
        match &self.graph {
            Some(path) => io::load(path).with_context(|| format!("loading {}", path.display())),
            None => self.model.generate(self.n, seed),
        }
    }
}

/// Priority queue selection with optional bucket geometry overrides.
#[derive(Debug, Clone, Args, Serialize)]
pub struct QueueArgs {
    /// Priority queue; defaults to the bucket queue for spira and fb.
    #[arg(long, value_enum)]
    pub pq: Option<Pq>,
    /// Number of top-level buckets (bucket queue only).
    #[arg(long)]
    pub buckets: Option<usize>,
    /// Top-level bucket width (bucket queue only).
    #[arg(long)]
    pub width: Option<f64>,
}

impl QueueArgs {
    pub fn validate(&self, algo: Algo) -> Result<()> {
        let overrides = self.buckets.is_some() || self.width.is_some();
        ensure!(!(overrides && self.pq == Some(Pq::Binheap)), "--buckets/--width require --pq bucket");
        ensure!(
            !(algo == Algo::Dijkstra && (self.pq.is_some() || overrides)),
            "dijkstra uses its own heap; drop --pq/--buckets/--width"
        );
        if let Some(w) = self.width {
            ensure!(w.is_finite() && w > 0.0, "--width must be positive");
        }
        if let Some(b) = self.buckets {
            ensure!(b >= 1, "--buckets must be at least 1");
        }
        Ok(())
    }

    pub fn kind(&self, n: usize) -> Result<QueueKind> {
        Ok(match self.pq.unwrap_or(Pq::Bucket) {
            Pq::Binheap => QueueKind::BinaryHeap,
            Pq::Bucket => {
                let default = BucketQueueConfig::for_graph_size(n);
                let cfg = BucketQueueConfig::new(
                    self.buckets.unwrap_or(default.buckets),
                    self.width.unwrap_or(default.width),
                )
                .map_err(anyhow::Error::msg)?;
                QueueKind::Bucket(cfg)
            }
        })
    }

    pub fn fb_config(&self, n: usize) -> Result<FbConfig> {
        Ok(FbConfig::uniform(self.kind(n)?))
    }

    pub fn name(&self, algo: Algo) -> &'static str {
        match (algo, self.pq.unwrap_or(Pq::Bucket)) {
            (Algo::Dijkstra, _) => "std-binary-heap",
            (_, Pq::Binheap) => "binheap",
            (_, Pq::Bucket) => "bucket",
        }
    }
}

/// Report destination and run identity.
#[derive(Debug, Clone, Args, Serialize)]
pub struct OutputArgs {
    /// Directory for the JSON summary and CSV rows.
    #[arg(long, env = "FBPATHS_OUT_DIR")]
    pub out_dir: Option<PathBuf>,
    /// File name stem for reports; defaults to the command name.
    #[arg(long)]
    pub tag: Option<String>,
}

/// Seed and repetition count.
#[derive(Debug, Clone, Args, Serialize)]
pub struct TrialArgs {
    /// Master seed; trial `t` uses a seed derived from it.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub trials: usize,
}

impl TrialArgs {
    pub fn validate(&self) -> Result<()> {
        ensure!(self.trials >= 1, "--trials must be at least 1");
        Ok(())
    }
}
