//! The alternating assign / recentre / reweight loop shared by every
//! algorithm, its initialisations, and plain K-Means.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Serialize, Serializer};

use crate::dataset::{Dataset, FeatureKind, Value};
use crate::error::{Error, Result};
use crate::metrics::{
    abs_pow, distributed_centroid, ikp_categorical_distance, minkowski_center, simple_match, CategoryWeights, Exponent,
};

/// Cluster index of every entity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    assignments: Vec<usize>,
    k: usize,
}

impl Partition {
    pub fn new(assignments: Vec<usize>, k: usize) -> Result<Self> {
        if let Some(bad) = assignments.iter().find(|&&a| a >= k) {
            return Err(Error::Shape(format!("cluster index {bad} out of range for K = {k}")));
        }
        Ok(Partition { assignments, k })
    }

    /// Partition whose cluster count is one more than its largest index.
    pub fn from_labels(assignments: Vec<usize>) -> Self {
        let k = assignments.iter().max().map_or(0, |m| m + 1);
        Partition { assignments, k }
    }

    pub fn assignments(&self) -> &[usize] {
        &self.assignments
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.assignments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignments.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.k];
        for &a in &self.assignments {
            sizes[a] += 1;
        }
        sizes
    }

    /// Entity indices of every cluster.
    pub fn members(&self) -> Vec<Vec<usize>> {
        let mut members = vec![Vec::new(); self.k];
        for (i, &a) in self.assignments.iter().enumerate() {
            members[a].push(i);
        }
        members
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.assignments.serialize(s)
    }
}

/// Centre of one cluster on one feature.
#[derive(Debug, Clone, PartialEq)]
pub enum Center {
    Num(f64),
    /// A single representative category (simple matching).
    Cat(usize),
    /// Category frequencies (distributed centroid).
    Dist(CategoryWeights),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Centroids {
    k: usize,
    m: usize,
    centers: Vec<Center>,
}

impl Centroids {
    pub fn new(rows: Vec<Vec<Center>>) -> Result<Self> {
        let k = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if k == 0 || rows.iter().any(|r| r.len() != m) {
            return Err(Error::Shape("centroid rows must be non-empty and equally long".into()));
        }
        Ok(Centroids {
            k,
            m,
            centers: rows.into_iter().flatten().collect(),
        })
    }

    /// Copies entity rows as centres.
    pub fn from_entities(d: &Dataset, entities: &[usize]) -> Self {
        let centers = entities
            .iter()
            .flat_map(|&i| d.row(i).iter().map(|v| entity_center(*v)))
            .collect();
        Centroids {
            k: entities.len(),
            m: d.n_features(),
            centers,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n_features(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn row(&self, k: usize) -> &[Center] {
        &self.centers[k * self.m..(k + 1) * self.m]
    }

    pub fn get(&self, k: usize, v: usize) -> &Center {
        &self.centers[k * self.m + v]
    }

    /// Numeric centres as plain rows; `None` if any centre is categorical.
    pub fn numeric_rows(&self) -> Option<Vec<Vec<f64>>> {
        (0..self.k)
            .map(|k| {
                self.row(k)
                    .iter()
                    .map(|c| match c {
                        Center::Num(x) => Some(*x),
                        _ => None,
                    })
                    .collect()
            })
            .collect()
    }

    fn set_row_from_entity(&mut self, k: usize, d: &Dataset, i: usize) {
        let m = self.m;
        for (slot, value) in self.centers[k * m..(k + 1) * m].iter_mut().zip(d.row(i)) {
            *slot = entity_center(*value);
        }
    }
}

fn entity_center(v: Value) -> Center {
    match v {
        Value::Num(x) => Center::Num(x),
        Value::Cat(c) => Center::Cat(c),
    }
}

/// Non-negative K×M feature weights, each cluster row summing to one.
/// Shared-weight algorithms keep a single row used by every cluster.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightMatrix {
    rows: Vec<Vec<f64>>,
    k: usize,
}

impl WeightMatrix {
    pub fn uniform(k: usize, m: usize, shared: bool) -> Self {
        let row = vec![1.0 / m as f64; m];
        let rows = if shared { vec![row] } else { vec![row; k] };
        WeightMatrix { rows, k }
    }

    /// One row per cluster.
    pub fn per_cluster(rows: Vec<Vec<f64>>) -> Self {
        let k = rows.len();
        WeightMatrix { rows, k }
    }

    /// A single row broadcast to `k` clusters.
    pub fn shared(row: Vec<f64>, k: usize) -> Self {
        WeightMatrix { rows: vec![row], k }
    }

    pub fn is_shared(&self) -> bool {
        self.rows.len() == 1 && self.k != 1
    }

    pub fn n_clusters(&self) -> usize {
        self.k
    }

    pub fn n_features(&self) -> usize {
        self.rows[0].len()
    }

    #[inline]
    pub fn row(&self, k: usize) -> &[f64] {
        if self.rows.len() == 1 {
            &self.rows[0]
        } else {
            &self.rows[k]
        }
    }

    /// The stored rows (one for shared weights).
    pub fn stored_rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    /// K rows, broadcasting shared weights.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.k).map(|k| self.row(k).to_vec()).collect()
    }

    /// True when every row sums to one within `tol` with no negative entry.
    pub fn on_simplex(&self, tol: f64) -> bool {
        self.rows
            .iter()
            .all(|r| r.iter().all(|&w| w >= 0.0 && w.is_finite()) && (r.iter().sum::<f64>() - 1.0).abs() <= tol)
    }

    fn powered(&self, exponent: f64) -> WeightMatrix {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&w| if exponent == 1.0 { w } else { w.powf(exponent) })
                    .collect()
            })
            .collect();
        WeightMatrix { rows, k: self.k }
    }

    fn set_cluster_count(&mut self, k: usize) {
        if self.rows.len() != 1 || k == 1 {
            debug_assert_eq!(self.rows.len(), k);
        }
        self.k = k;
    }
}

/// Per-feature dissimilarity and its matching centre.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Kernel {
    /// `(y - c)^2` on numeric features with mean centres; simple matching
    /// with modal centres on categorical ones.
    SquaredEuclidean,
    /// `|y - c|^p` with Minkowski centres; numeric features only.
    Minkowski(Exponent),
    /// `|y - c|` with mean centres on numeric features; distributed
    /// centroids on categorical ones.
    Ikp,
}

/// How an algorithm measures entity-to-centroid dissimilarity:
/// `sum_v w_kv^weight_exponent * (kernel(y_iv, c_kv) + smoothing)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistanceSpec {
    pub kernel: Kernel,
    pub weight_exponent: f64,
    pub smoothing: f64,
}

impl DistanceSpec {
    /// Plain squared Euclidean distance (weights ignored).
    pub fn euclidean() -> Self {
        Self::weighted_euclidean(0.0)
    }

    pub fn weighted_euclidean(weight_exponent: f64) -> Self {
        DistanceSpec {
            kernel: Kernel::SquaredEuclidean,
            weight_exponent,
            smoothing: 0.0,
        }
    }

    pub fn minkowski(p: Exponent) -> Self {
        DistanceSpec {
            kernel: Kernel::Minkowski(p),
            weight_exponent: p.value(),
            smoothing: 0.0,
        }
    }

    pub fn ikp(beta: f64) -> Self {
        DistanceSpec {
            kernel: Kernel::Ikp,
            weight_exponent: beta,
            smoothing: 0.0,
        }
    }
}

/// Dissimilarity of one cell to one centre under `kernel`.
#[inline]
pub fn cell_distance(kernel: Kernel, value: Value, center: &Center) -> f64 {
    match (kernel, value, center) {
        (Kernel::SquaredEuclidean, Value::Num(y), Center::Num(c)) => (y - c) * (y - c),
        (Kernel::Minkowski(p), Value::Num(y), Center::Num(c)) => abs_pow((y - c).abs(), p.value()),
        (Kernel::Ikp, Value::Num(y), Center::Num(c)) => (y - c).abs(),
        (Kernel::SquaredEuclidean | Kernel::Ikp, Value::Cat(y), Center::Cat(c)) => simple_match(y, *c),
        (Kernel::Ikp, Value::Cat(y), Center::Dist(cw)) => ikp_categorical_distance(y, cw),
        _ => f64::NAN,
    }
}

#[inline]
fn entity_cost(row: &[Value], centers: &[Center], effective: &[f64], spec: &DistanceSpec) -> f64 {
    row.iter()
        .zip(centers)
        .zip(effective)
        .map(|((&y, c), &w)| w * (cell_distance(spec.kernel, y, c) + spec.smoothing))
        .sum()
}

fn check_shapes(d: &Dataset, c: &Centroids, w: &WeightMatrix) -> Result<()> {
    if c.n_features() != d.n_features() || w.n_features() != d.n_features() {
        return Err(Error::Shape(format!(
            "data has {} features, centroids {}, weights {}",
            d.n_features(),
            c.n_features(),
            w.n_features()
        )));
    }
    if !w.is_shared() && w.stored_rows().len() != c.k() {
        return Err(Error::Shape(format!(
            "{} weight rows for {} clusters",
            w.stored_rows().len(),
            c.k()
        )));
    }
    Ok(())
}

/// Assigns every entity to the cluster of least weighted dissimilarity;
/// ties go to the lowest cluster index.
pub fn assign(d: &Dataset, c: &Centroids, w: &WeightMatrix, spec: &DistanceSpec) -> Result<Partition> {
    Ok(assign_with_costs(d, c, w, spec)?.0)
}

fn assign_with_costs(
    d: &Dataset,
    c: &Centroids,
    w: &WeightMatrix,
    spec: &DistanceSpec,
) -> Result<(Partition, Vec<f64>)> {
    check_shapes(d, c, w)?;
    let effective = w.powered(spec.weight_exponent);
    let mut assignments = Vec::with_capacity(d.n_entities());
    let mut costs = Vec::with_capacity(d.n_entities());
    for i in 0..d.n_entities() {
        let row = d.row(i);
        let mut best = (0, f64::INFINITY);
        for k in 0..c.k() {
            let cost = entity_cost(row, c.row(k), effective.row(k), spec);
            if !cost.is_finite() {
                return Err(Error::NonFinite { entity: i, cluster: k });
            }
            if cost < best.1 {
                best = (k, cost);
            }
        }
        assignments.push(best.0);
        costs.push(best.1);
    }
    Ok((Partition { assignments, k: c.k() }, costs))
}

/// Assignment followed by the empty-cluster policy: each empty cluster is
/// re-seeded with the entity farthest from its own centroid, taken from a
/// cluster that keeps at least one member. Returns the re-seeded centroids
/// when the policy fired.
fn assign_step(
    d: &Dataset,
    c: &Centroids,
    w: &WeightMatrix,
    spec: &DistanceSpec,
) -> Result<(Partition, Option<Centroids>)> {
    let (mut part, mut costs) = assign_with_costs(d, c, w, spec)?;
    let mut sizes = part.sizes();
    if sizes.iter().all(|&s| s > 0) {
        return Ok((part, None));
    }
    let mut centroids = c.clone();
    for k in 0..c.k() {
        if sizes[k] > 0 {
            continue;
        }
        let donor =
            (0..d.n_entities())
                .filter(|&i| sizes[part.assignments[i]] > 1)
                .fold(None::<(usize, f64)>, |best, i| match best {
                    Some((_, cost)) if costs[i] <= cost => best,
                    _ => Some((i, costs[i])),
                });
        let Some((i, _)) = donor else {
            return Err(Error::UnsustainableClusters(c.k()));
        };
        sizes[part.assignments[i]] -= 1;
        sizes[k] += 1;
        part.assignments[i] = k;
        costs[i] = 0.0;
        centroids.set_row_from_entity(k, d, i);
    }
    Ok((part, Some(centroids)))
}

/// Recomputes every centre from the cluster members under `spec`'s kernel.
pub fn update_centroids(d: &Dataset, part: &Partition, spec: &DistanceSpec) -> Result<Centroids> {
    if part.len() != d.n_entities() {
        return Err(Error::Shape(format!(
            "partition of {} entities for {} rows",
            part.len(),
            d.n_entities()
        )));
    }
    let members = part.members();
    let m = d.n_features();
    let mut centers = Vec::with_capacity(part.k() * m);
    for (k, cluster) in members.iter().enumerate() {
        if cluster.is_empty() {
            return Err(Error::EmptyCluster(k));
        }
        for v in 0..m {
            let kind = &d.schema().feature(v).kind;
            let center = match (kind, spec.kernel) {
                (FeatureKind::Numeric, kernel) => {
                    let values: Vec<f64> = cluster.iter().map(|&i| d.value(i, v).as_num().unwrap()).collect();
                    match kernel {
                        Kernel::Minkowski(p) => Center::Num(minkowski_center(&values, p)?),
                        _ => Center::Num(values.iter().sum::<f64>() / values.len() as f64),
                    }
                }
                (FeatureKind::Categorical(cats), Kernel::SquaredEuclidean) => {
                    let mut counts = vec![0usize; cats.len()];
                    for &i in cluster {
                        counts[d.value(i, v).as_cat().unwrap()] += 1;
                    }
                    // First maximal count wins.
                    let mode = counts
                        .iter()
                        .enumerate()
                        .fold((0, 0), |best, (c, &n)| if n > best.1 { (c, n) } else { best })
                        .0;
                    Center::Cat(mode)
                }
                (FeatureKind::Categorical(_), Kernel::Ikp) => {
                    let values: Vec<usize> = cluster.iter().map(|&i| d.value(i, v).as_cat().unwrap()).collect();
                    Center::Dist(distributed_centroid(&values, kind)?)
                }
                (FeatureKind::Categorical(_), Kernel::Minkowski(_)) => {
                    return Err(Error::InvalidParameter(
                        "Minkowski centres need numeric features; expand categorical ones first".into(),
                    ))
                }
            };
            centers.push(center);
        }
    }
    Ok(Centroids {
        k: part.k(),
        m,
        centers,
    })
}

/// Weighted dissimilarity summed over all entities and their clusters.
pub fn weighted_cost(d: &Dataset, part: &Partition, c: &Centroids, w: &WeightMatrix, spec: &DistanceSpec) -> f64 {
    let effective = w.powered(spec.weight_exponent);
    part.assignments
        .iter()
        .enumerate()
        .map(|(i, &k)| entity_cost(d.row(i), c.row(k), effective.row(k), spec))
        .sum()
}

/// K distinct entities chosen uniformly at random.
pub fn init_random(d: &Dataset, k: usize, seed: u64) -> Result<Centroids> {
    check_k(d, k)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let picked = rand::seq::index::sample(&mut rng, d.n_entities(), k).into_vec();
    Ok(Centroids::from_entities(d, &picked))
}

fn check_k(d: &Dataset, k: usize) -> Result<()> {
    if k == 0 || k > d.n_entities() {
        return Err(Error::InvalidParameter(format!(
            "K = {k} must be between 1 and the number of entities ({})",
            d.n_entities()
        )));
    }
    Ok(())
}

/// Deterministic centroids from anomalous-pattern extraction under the
/// Minkowski `p` metric.
///
/// Repeatedly takes the remaining entity farthest from the grand centre,
/// grows a cluster around it (entities closer to the cluster centre than to
/// the grand centre, recentring until stable) and removes that cluster,
/// until no entity remains. The centres of the K most populous clusters are
/// returned, largest first; equal sizes keep extraction order.
pub fn init_anomalous(d: &Dataset, k: usize, p: Exponent) -> Result<Centroids> {
    check_k(d, k)?;
    if !d.is_all_numeric() {
        return Err(Error::InvalidParameter(
            "anomalous-pattern initialisation needs numeric features".into(),
        ));
    }
    let m = d.n_features();
    let columns: Vec<Vec<f64>> = (0..m).map(|v| d.numeric_column(v).unwrap()).collect();
    let point = |i: usize| -> Vec<f64> { columns.iter().map(|c| c[i]).collect() };
    let distance = |i: usize, centre: &[f64]| -> f64 {
        columns
            .iter()
            .zip(centre)
            .map(|(col, &c)| abs_pow((col[i] - c).abs(), p.value()))
            .sum()
    };
    let centre_of = |members: &[usize]| -> Result<Vec<f64>> {
        columns
            .iter()
            .map(|col| {
                let values: Vec<f64> = members.iter().map(|&i| col[i]).collect();
                minkowski_center(&values, p)
            })
            .collect()
    };

    let all: Vec<usize> = (0..d.n_entities()).collect();
    let grand = centre_of(&all)?;
    let to_grand: Vec<f64> = all.iter().map(|&i| distance(i, &grand)).collect();

    let mut remaining = all;
    let mut found: Vec<(Vec<usize>, Vec<f64>)> = Vec::new();
    while !remaining.is_empty() {
        let seed = remaining.iter().copied().fold(
            remaining[0],
            |best, i| if to_grand[i] > to_grand[best] { i } else { best },
        );
        let mut centre = point(seed);
        let mut members: Vec<usize> = Vec::new();
        for _ in 0..100 {
            let mut next: Vec<usize> = remaining
                .iter()
                .copied()
                .filter(|&i| distance(i, &centre) < to_grand[i])
                .collect();
            if next.is_empty() {
                next.push(seed);
            }
            if next == members {
                break;
            }
            centre = centre_of(&next)?;
            members = next;
        }
        remaining.retain(|i| members.binary_search(i).is_err());
        found.push((members, centre));
    }
    if found.len() < k {
        return Err(Error::AnomalousInit {
            found: found.len(),
            wanted: k,
        });
    }
    found.sort_by_key(|f| std::cmp::Reverse(f.0.len()));
    let rows = found
        .into_iter()
        .take(k)
        .map(|(_, centre)| centre.into_iter().map(Center::Num).collect())
        .collect();
    Centroids::new(rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum StopCriterion {
    #[default]
    AssignmentsUnchanged,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StopRule {
    pub max_iterations: usize,
    pub criterion: StopCriterion,
    /// Keep every intermediate partition, weight matrix and criterion value.
    pub record_trace: bool,
}

impl Default for StopRule {
    fn default() -> Self {
        StopRule {
            max_iterations: 100,
            criterion: StopCriterion::AssignmentsUnchanged,
            record_trace: false,
        }
    }
}

impl StopRule {
    pub fn traced() -> Self {
        StopRule {
            record_trace: true,
            ..Default::default()
        }
    }
}

/// Per-iteration history of a run.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trace {
    /// Assignments after every assignment step, including the final one
    /// that detected convergence.
    pub assignments: Vec<Vec<usize>>,
    /// Weights after every weight update.
    pub weights: Vec<WeightMatrix>,
    /// Criterion after every full update.
    pub criteria: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub algorithm: String,
    pub params: BTreeMap<String, f64>,
    pub seed: Option<u64>,
    pub partition: Partition,
    pub centroids: Centroids,
    pub weights: WeightMatrix,
    pub criterion: f64,
    pub iterations: usize,
    pub converged: bool,
    pub trace: Option<Trace>,
}

impl RunResult {
    pub(crate) fn labelled(mut self, algorithm: &str, params: &[(&str, f64)], seed: Option<u64>) -> Self {
        self.algorithm = algorithm.to_string();
        self.params = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        self.seed = seed;
        self
    }
}

#[derive(Serialize)]
struct RunRecord<'a> {
    algorithm: &'a str,
    params: &'a BTreeMap<String, f64>,
    seed: Option<u64>,
    iterations: usize,
    converged: bool,
    criterion: f64,
    assignments: &'a [usize],
    weights: Vec<Vec<f64>>,
}

impl Serialize for RunResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RunRecord {
            algorithm: &self.algorithm,
            params: &self.params,
            seed: self.seed,
            iterations: self.iterations,
            converged: self.converged,
            criterion: self.criterion,
            assignments: self.partition.assignments(),
            weights: self.weights.to_rows(),
        }
        .serialize(s)
    }
}

/// The weight step of an algorithm plugged into [`iterate`].
pub trait WeightRule {
    /// Dissimilarity used for the next assignment and centre update.
    fn spec(&self) -> DistanceSpec;

    /// New weights given the current partition and freshly updated centres.
    fn update(
        &mut self,
        d: &Dataset,
        part: &Partition,
        centroids: &Centroids,
        current: &WeightMatrix,
    ) -> Result<WeightMatrix>;

    /// Objective value at the given state.
    fn criterion(&self, d: &Dataset, part: &Partition, centroids: &Centroids, w: &WeightMatrix) -> f64 {
        weighted_cost(d, part, centroids, w, &self.spec())
    }
}

/// Leaves the weights as they are; with a zero weight exponent this is
/// plain K-Means.
pub struct FixedWeights(pub DistanceSpec);

impl WeightRule for FixedWeights {
    fn spec(&self) -> DistanceSpec {
        self.0
    }

    fn update(&mut self, _: &Dataset, _: &Partition, _: &Centroids, current: &WeightMatrix) -> Result<WeightMatrix> {
        Ok(current.clone())
    }
}

/// Runs assign → recentre → reweight until the assignments stop changing
/// or the iteration cap is reached.
pub fn iterate(
    d: &Dataset,
    init: Centroids,
    weights: WeightMatrix,
    rule: &mut dyn WeightRule,
    stop: &StopRule,
) -> Result<RunResult> {
    if stop.max_iterations == 0 {
        return Err(Error::InvalidParameter("max_iterations must be at least 1".into()));
    }
    let mut weights = weights;
    weights.set_cluster_count(init.k());
    let mut centroids = init;
    let mut trace = stop.record_trace.then(Trace::default);
    let mut current: Option<Partition> = None;
    let mut criterion = f64::NAN;
    let mut converged = false;
    let mut iterations = 0;

    while iterations < stop.max_iterations {
        iterations += 1;
        let spec = rule.spec();
        // Re-seeded centres are implied by the partition and rebuilt below.
        let (part, _) = assign_step(d, &centroids, &weights, &spec)?;
        if let Some(t) = trace.as_mut() {
            t.assignments.push(part.assignments.clone());
        }
        if current.as_ref() == Some(&part) {
            converged = true;
            break;
        }
        centroids = update_centroids(d, &part, &spec)?;
        weights = rule.update(d, &part, &centroids, &weights)?;
        criterion = rule.criterion(d, &part, &centroids, &weights);
        if let Some(t) = trace.as_mut() {
            t.weights.push(weights.clone());
            t.criteria.push(criterion);
        }
        current = Some(part);
    }

    Ok(RunResult {
        algorithm: String::new(),
        params: BTreeMap::new(),
        seed: None,
        partition: current.expect("at least one iteration ran"),
        centroids,
        weights,
        criterion,
        iterations,
        converged,
        trace,
    })
}

/// Lloyd's K-Means from K random entities.
pub fn run_kmeans(d: &Dataset, k: usize, seed: u64, stop: &StopRule) -> Result<RunResult> {
    if !d.is_all_numeric() {
        return Err(Error::InvalidParameter("K-Means needs numeric features".into()));
    }
    let init = init_random(d, k, seed)?;
    let weights = WeightMatrix::uniform(k, d.n_features(), true);
    let mut rule = FixedWeights(DistanceSpec::euclidean());
    Ok(iterate(d, init, weights, &mut rule, stop)?.labelled("kmeans", &[], Some(seed)))
}
