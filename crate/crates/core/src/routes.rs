//! Interchangeable ways of computing `rank Pic(K_g)`, registered by name.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::cusp::picard_rank_lambda;
use crate::error::{Error, Result};
use crate::rank::picard_rank;

pub trait RankRoute: Send + Sync {
    /// Registry key, e.g. `closed-form`.
    fn name(&self) -> &'static str;

    fn description(&self) -> &'static str;

    fn rank(&self, g: i64) -> Result<u64>;
}

/// Exact evaluation of the closed form with Jacobi symbols.
pub struct ClosedForm;

impl RankRoute for ClosedForm {
    fn name(&self) -> &'static str {
        "closed-form"
    }

    fn description(&self) -> &'static str {
        "closed form in exact rational arithmetic"
    }

    fn rank(&self, g: i64) -> Result<u64> {
        Ok(picard_rank(g)?.rank)
    }
}

/// `1 + dim S_{21/2}` for the Weil representation of `Λ_g`.
pub struct CuspForms {
    pub max_group: usize,
}

impl Default for CuspForms {
    fn default() -> Self {
        CuspForms {
            max_group: crate::DEFAULT_MAX_GROUP,
        }
    }
}

impl RankRoute for CuspForms {
    fn name(&self) -> &'static str {
        "cusp-dim"
    }

    fn description(&self) -> &'static str {
        "1 + dimension of vector-valued cusp forms of weight 21/2 for Lambda_g"
    }

    fn rank(&self, g: i64) -> Result<u64> {
        picard_rank_lambda(g, self.max_group)
    }
}

pub struct RouteRegistry {
    routes: Vec<Box<dyn RankRoute>>,
}

impl fmt::Debug for RouteRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

impl RouteRegistry {
    pub fn empty() -> Self {
        RouteRegistry { routes: Vec::new() }
    }

    /// Both built-in routes; the cusp route refuses groups above `max_group`.
    pub fn with_defaults(max_group: usize) -> Self {
        let mut r = Self::empty();
        r.register(Box::new(ClosedForm));
        r.register(Box::new(CuspForms { max_group }));
        r
    }

    /// Adds a route, replacing any existing route of the same name.
    pub fn register(&mut self, route: Box<dyn RankRoute>) {
        match self.routes.iter().position(|r| r.name() == route.name()) {
            Some(i) => self.routes[i] = route,
            None => self.routes.push(route),
        }
    }

    pub fn get(&self, name: &str) -> Result<&dyn RankRoute> {
        self.routes
            .iter()
            .find(|r| r.name() == name)
            .map(|r| r.as_ref())
            .ok_or_else(|| Error::UnknownRoute(name.to_string()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.routes.iter().map(|r| r.name()).collect()
    }

    pub fn routes(&self) -> impl Iterator<Item = &dyn RankRoute> {
        self.routes.iter().map(|r| r.as_ref())
    }

    /// Runs every route on `lo..=hi` and compares the answers.
    pub fn crosscheck(&self, lo: i64, hi: i64) -> Result<Vec<CrosscheckRow>> {
        if lo < 2 || lo > hi {
            return Err(Error::BadRange { lo, hi });
        }
        Ok((lo..=hi)
            .into_par_iter()
            .map(|g| {
                let ranks: Vec<RouteResult> = self
                    .routes
                    .iter()
                    .map(|r| RouteResult {
                        route: r.name(),
                        rank: r.rank(g).map_err(|e| e.to_string()),
                    })
                    .collect();
                let first = ranks.first().and_then(|r| r.rank.as_ref().ok());
                let agree = first.is_some() && ranks.iter().all(|r| r.rank.as_ref().ok() == first);
                CrosscheckRow { g, ranks, agree }
            })
            .collect())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RouteResult {
    pub route: &'static str,
    pub rank: std::result::Result<u64, String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CrosscheckRow {
    pub g: i64,
    pub ranks: Vec<RouteResult>,
    pub agree: bool,
}
