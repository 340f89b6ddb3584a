use std::collections::BTreeMap;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channels::{ChannelFamily, ChannelSpec};
use crate::error::{Error, Result};
use crate::measures::ProtocolRecord;
use crate::par::{self, Execution};

use super::{
    ame_protocol, catalysis_compare, direct_then_indirect_with, indirect_noisy_with,
    noisy_labs_with, ComTiming, Grouping,
};

pub const SWEEP_CSV_HEADER: &str = "scenario,axis1,axis2,e_in,e_com,e_fin,delta_e,classification";

/// Formats like C's `%.9g`: nine significant digits, trailing zeros removed.
pub fn format_g9(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.8e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..9).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{sign}{:02}", trim_fraction(mantissa), exp.abs())
    } else {
        let decimals = (8 - exp) as usize;
        trim_fraction(&format!("{x:.decimals$}")).to_string()
    }
}

fn trim_fraction(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Grid coordinates are snapped to 1e-9 so that `0.1 + 2·0.1` prints as 0.3.
fn snap(x: f64) -> f64 {
    let y = (x * 1e9).round() / 1e9;
    if y == 0.0 {
        0.0
    } else {
        y
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scenario {
    /// Five-qubit AME family under a grouping; axis `q`.
    Ame,
    /// Catalysed grouping of the AME family; axis `q`.
    Catalysis,
    Indirect,
    DirectThenIndirect,
    NoisyLabs,
}

impl Scenario {
    pub const ALL: [Scenario; 5] = [
        Scenario::Ame,
        Scenario::Catalysis,
        Scenario::Indirect,
        Scenario::DirectThenIndirect,
        Scenario::NoisyLabs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Ame => "ame",
            Scenario::Catalysis => "catalysis",
            Scenario::Indirect => "indirect",
            Scenario::DirectThenIndirect => "direct_then_indirect",
            Scenario::NoisyLabs => "noisy_labs",
        }
    }

    /// Parameter names a grid must supply.
    pub fn parameters(self) -> &'static [&'static str] {
        match self {
            Scenario::Ame | Scenario::Catalysis => &["q"],
            Scenario::Indirect | Scenario::DirectThenIndirect => &["p", "s", "delta"],
            Scenario::NoisyLabs => &["p", "delta", "local_delta"],
        }
    }

    pub fn uses_channel(self) -> bool {
        !matches!(self, Scenario::Ame | Scenario::Catalysis)
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scenario {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ame" => Ok(Scenario::Ame),
            "catalysis" => Ok(Scenario::Catalysis),
            "indirect" => Ok(Scenario::Indirect),
            "direct_then_indirect" | "direct-then-indirect" | "dti" => {
                Ok(Scenario::DirectThenIndirect)
            }
            "noisy_labs" | "noisy-labs" => Ok(Scenario::NoisyLabs),
            other => Err(Error::UnknownScenario(other.to_string())),
        }
    }
}

/// Inclusive, evenly spaced parameter axis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl Axis {
    pub fn new(name: impl Into<String>, min: f64, max: f64, step: f64) -> Result<Self> {
        let name = name.into();
        if !step.is_finite() || step <= 0.0 {
            return Err(Error::InvalidAxis(format!("{name}: step must be positive")));
        }
        if !min.is_finite() || !max.is_finite() || min > max {
            return Err(Error::InvalidAxis(format!("{name}: need min <= max")));
        }
        Ok(Self {
            name,
            min,
            max,
            step,
        })
    }

    /// `[0, 1]` at resolution `step`.
    pub fn unit(name: impl Into<String>, step: f64) -> Result<Self> {
        Self::new(name, 0.0, 1.0, step)
    }

    /// A single value.
    pub fn point(name: impl Into<String>, value: f64) -> Result<Self> {
        Self::new(name, value, value, 1.0)
    }

    pub fn len(&self) -> usize {
        ((self.max - self.min) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| snap(self.min + i as f64 * self.step))
            .collect()
    }
}

/// Axes (one or two, row-major), the transit channel, fixed parameters and
/// the AME grouping for one sweep.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub axes: Vec<Axis>,
    pub channel: Option<ChannelSpec>,
    pub fixed: BTreeMap<String, f64>,
    pub grouping: Option<Grouping>,
    /// Recorded for provenance; every scenario here is deterministic.
    pub seed: u64,
    pub timing: ComTiming,
    /// Scenario column value; defaults to the scenario name.
    pub label: Option<String>,
}

impl SweepGrid {
    pub fn new(axes: Vec<Axis>) -> Self {
        Self {
            axes,
            channel: None,
            fixed: BTreeMap::new(),
            grouping: None,
            seed: 0,
            timing: ComTiming::default(),
            label: None,
        }
    }

    pub fn with_channel(mut self, channel: ChannelSpec) -> Self {
        self.channel = Some(channel);
        self
    }

    pub fn with_fixed(mut self, name: &str, value: f64) -> Self {
        self.fixed.insert(name.to_string(), value);
        self
    }

    pub fn with_grouping(mut self, grouping: Grouping) -> Self {
        self.grouping = Some(grouping);
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_timing(mut self, timing: ComTiming) -> Self {
        self.timing = timing;
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    /// Number of grid points.
    pub fn len(&self) -> usize {
        self.axes.iter().map(Axis::len).product()
    }

    pub fn is_empty(&self) -> bool {
        self.axes.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepPoint {
    pub axis1: f64,
    pub axis2: Option<f64>,
    pub record: ProtocolRecord,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub scenario: String,
    pub axes: Vec<String>,
    pub points: Vec<SweepPoint>,
}

impl SweepResult {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn records(&self) -> impl Iterator<Item = &ProtocolRecord> {
        self.points.iter().map(|p| &p.record)
    }

    pub fn csv_row(&self, point: &SweepPoint) -> String {
        let r = &point.record;
        format!(
            "{},{},{},{},{},{},{},{}",
            self.scenario,
            format_g9(point.axis1),
            point.axis2.map(format_g9).unwrap_or_default(),
            format_g9(r.e_in),
            format_g9(r.e_com),
            format_g9(r.e_fin),
            format_g9(r.delta_e),
            r.classification
        )
    }

    /// Writes the rows (and optionally the header), LF-terminated.
    pub fn write_csv<W: Write>(&self, mut w: W, header: bool) -> io::Result<()> {
        if header {
            writeln!(w, "{SWEEP_CSV_HEADER}")?;
        }
        for p in &self.points {
            writeln!(w, "{}", self.csv_row(p))?;
        }
        Ok(())
    }

    pub fn to_csv(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf, true).expect("writing to memory");
        String::from_utf8(buf).expect("ASCII output")
    }

    /// Several sweeps under one header.
    pub fn concat_csv(results: &[SweepResult]) -> String {
        let mut buf = Vec::new();
        writeln!(buf, "{SWEEP_CSV_HEADER}").unwrap();
        for r in results {
            r.write_csv(&mut buf, false).unwrap();
        }
        String::from_utf8(buf).expect("ASCII output")
    }
}

#[derive(Default)]
struct Params {
    q: f64,
    p: f64,
    s: f64,
    delta: f64,
    local_delta: f64,
}

impl Params {
    fn set(&mut self, name: &str, value: f64) {
        match name {
            "q" => self.q = value,
            "p" => self.p = value,
            "s" => self.s = value,
            "delta" => self.delta = value,
            "local_delta" => self.local_delta = value,
            _ => unreachable!("validated parameter name"),
        }
    }
}

struct Plan {
    scenario: Scenario,
    family: Option<ChannelFamily>,
    base: BTreeMap<String, f64>,
    grouping: Grouping,
    timing: ComTiming,
}

impl Plan {
    fn evaluate(&self, axes: &[(&str, f64)]) -> Result<ProtocolRecord> {
        let mut p = Params::default();
        for (name, v) in &self.base {
            p.set(name, *v);
        }
        for (name, v) in axes {
            p.set(name, *v);
        }
        let channel = match self.family {
            Some(f) => Some(f.build(p.delta)?),
            None => None,
        };
        match self.scenario {
            Scenario::Ame => ame_protocol(p.q, &self.grouping),
            Scenario::Catalysis => Ok(catalysis_compare(p.q)?.1),
            Scenario::Indirect => {
                indirect_noisy_with(p.p, p.s, channel.as_ref().unwrap(), self.timing)
            }
            Scenario::DirectThenIndirect => {
                Ok(direct_then_indirect_with(p.p, p.s, channel.as_ref().unwrap(), self.timing)?.1)
            }
            Scenario::NoisyLabs => {
                noisy_labs_with(p.p, channel.as_ref().unwrap(), p.local_delta, self.timing)
            }
        }
    }
}

fn plan(grid: &SweepGrid, scenario: Scenario) -> Result<Plan> {
    let params = scenario.parameters();
    if grid.axes.is_empty() || grid.axes.len() > 2 {
        return Err(Error::AxisMismatch(format!(
            "expected one or two axes, got {}",
            grid.axes.len()
        )));
    }
    if grid.axes.len() == 2 && grid.axes[0].name == grid.axes[1].name {
        return Err(Error::AxisMismatch(format!("axis {} repeated", grid.axes[0].name)));
    }
    for axis in &grid.axes {
        if !params.contains(&axis.name.as_str()) {
            return Err(Error::AxisMismatch(format!(
                "{scenario} has no parameter {:?} (expects {})",
                axis.name,
                params.join(", ")
            )));
        }
    }
    let on_axis = |name: &str| grid.axes.iter().any(|a| a.name == name);
    let mut base = BTreeMap::new();
    for (name, &v) in &grid.fixed {
        if !params.contains(&name.as_str()) {
            return Err(Error::AxisMismatch(format!("{scenario} has no parameter {name:?}")));
        }
        if on_axis(name) {
            return Err(Error::AxisMismatch(format!("{name} is both fixed and swept")));
        }
        base.insert(name.clone(), v);
    }

    let family = if scenario.uses_channel() {
        let spec = grid
            .channel
            .ok_or_else(|| Error::AxisMismatch(format!("{scenario} needs a channel")))?;
        match spec.parameter {
            Some(v) if on_axis("delta") || base.contains_key("delta") => {
                return Err(Error::AxisMismatch(format!(
                    "channel {spec} fixes delta, which is also given on the grid ({v})"
                )));
            }
            Some(v) => {
                base.insert("delta".into(), v);
            }
            None if !spec.family.takes_parameter() && !on_axis("delta") => {
                base.entry("delta".into()).or_insert(0.0);
            }
            None => {}
        }
        Some(spec.family)
    } else {
        if grid.channel.is_some() {
            return Err(Error::AxisMismatch(format!("{scenario} takes no channel")));
        }
        None
    };

    for name in params {
        if !on_axis(name) && !base.contains_key(*name) {
            return Err(Error::AxisMismatch(format!("{scenario}: no value for {name}")));
        }
    }
    for (name, v) in &base {
        if !(0.0..=1.0).contains(v) {
            return Err(Error::AxisMismatch(format!("{name} = {v} outside [0, 1]")));
        }
    }
    for axis in &grid.axes {
        if axis.min < 0.0 || axis.max > 1.0 + 1e-12 {
            return Err(Error::InvalidAxis(format!("{} must lie in [0, 1]", axis.name)));
        }
    }
    Ok(Plan {
        scenario,
        family,
        base,
        grouping: grid.grouping.clone().unwrap_or_else(Grouping::ame_b1),
        timing: grid.timing,
    })
}

pub fn sweep(grid: &SweepGrid, scenario: Scenario) -> Result<SweepResult> {
    sweep_with(grid, scenario, Execution::default())
}

/// One record per grid point in row-major order (last axis fastest),
/// identical for every execution mode.
pub fn sweep_with(grid: &SweepGrid, scenario: Scenario, exec: Execution) -> Result<SweepResult> {
    let plan = plan(grid, scenario)?;
    let first = grid.axes[0].values();
    let second = grid.axes.get(1).map(Axis::values);
    let inner = second.as_ref().map_or(1, Vec::len);
    let names: Vec<&str> = grid.axes.iter().map(|a| a.name.as_str()).collect();

    let points = par::try_map_indexed(exec, first.len() * inner, |i| {
        let x = first[i / inner];
        let y = second.as_ref().map(|v| v[i % inner]);
        let mut coords = vec![(names[0], x)];
        if let Some(y) = y {
            coords.push((names[1], y));
        }
        plan.evaluate(&coords).map(|record| SweepPoint {
            axis1: x,
            axis2: y,
            record,
        })
    })?;
    Ok(SweepResult {
        scenario: grid.label.clone().unwrap_or_else(|| scenario.name().to_string()),
        axes: names.iter().map(|s| s.to_string()).collect(),
        points,
    })
}

/// Figure data sets reproducible from the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Figure {
    Fig3,
    Fig4,
    Fig5,
    Fig7,
    Fig9,
    Fig11,
}

impl Figure {
    pub const ALL: [Figure; 6] = [
        Figure::Fig3,
        Figure::Fig4,
        Figure::Fig5,
        Figure::Fig7,
        Figure::Fig9,
        Figure::Fig11,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Figure::Fig3 => "fig3",
            Figure::Fig4 => "fig4",
            Figure::Fig5 => "fig5",
            Figure::Fig7 => "fig7",
            Figure::Fig9 => "fig9",
            Figure::Fig11 => "fig11",
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Figure::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFigure(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FigureOptions {
    pub step: f64,
    /// Restricts noisy figures to one channel; a strength pins the delta axis.
    pub channel: Option<ChannelSpec>,
    /// Werner parameter of the fixed-p panels (default 0.34).
    pub p: Option<f64>,
    /// Ancilla parameter of the fixed-s panels (default 2/3).
    pub s: Option<f64>,
    pub timing: ComTiming,
    pub exec: Execution,
}

impl Default for FigureOptions {
    fn default() -> Self {
        Self {
            step: 0.01,
            channel: None,
            p: None,
            s: None,
            timing: ComTiming::default(),
            exec: Execution::default(),
        }
    }
}

pub const DEFAULT_P: f64 = 0.34;
pub const DEFAULT_S: f64 = 2.0 / 3.0;

fn delta_axis(spec: &ChannelSpec, step: f64) -> Result<Axis> {
    match (spec.family.takes_parameter(), spec.parameter) {
        (true, Some(v)) => Axis::point("delta", v),
        (true, None) => Axis::unit("delta", step),
        (false, _) => Axis::point("delta", 0.0),
    }
}

/// The sweeps behind one figure, in output order.
pub fn figure_sweeps(fig: Figure, opts: &FigureOptions) -> Result<Vec<SweepResult>> {
    let step = opts.step;
    let q_axis = || Axis::unit("q", step);
    let p = opts.p.unwrap_or(DEFAULT_P);
    let s = opts.s.unwrap_or(DEFAULT_S);
    let channels: Vec<ChannelSpec> = match opts.channel {
        Some(c) => vec![c],
        None => ChannelFamily::NOISE
            .iter()
            .map(|&family| ChannelSpec {
                family,
                parameter: None,
            })
            .collect(),
    };
    let run = |grid: SweepGrid, scenario| sweep_with(&grid.with_timing(opts.timing), scenario, opts.exec);

    match fig {
        Figure::Fig3 | Figure::Fig4 => {
            let grouping = if fig == Figure::Fig3 {
                Grouping::ame_b1()
            } else {
                Grouping::ame_b2()
            };
            Ok(vec![run(
                SweepGrid::new(vec![q_axis()?]).with_grouping(grouping),
                Scenario::Ame,
            )?])
        }
        Figure::Fig5 => Ok(vec![
            run(
                SweepGrid::new(vec![q_axis()?]).with_grouping(Grouping::ame_b2()),
                Scenario::Ame,
            )?,
            run(SweepGrid::new(vec![q_axis()?]), Scenario::Catalysis)?,
        ]),
        Figure::Fig7 | Figure::Fig9 => {
            let scenario = if fig == Figure::Fig7 {
                Scenario::Indirect
            } else {
                Scenario::DirectThenIndirect
            };
            let mut out = Vec::new();
            for spec in channels {
                let bare = ChannelSpec {
                    family: spec.family,
                    parameter: None,
                };
                let s_panel = SweepGrid::new(vec![Axis::unit("s", step)?, delta_axis(&spec, step)?])
                    .with_channel(bare)
                    .with_fixed("p", p)
                    .with_label(format!("{scenario}/{}/s-delta", spec.family));
                let p_panel = SweepGrid::new(vec![Axis::unit("p", step)?, delta_axis(&spec, step)?])
                    .with_channel(bare)
                    .with_fixed("s", s)
                    .with_label(format!("{scenario}/{}/p-delta", spec.family));
                out.push(run(s_panel, scenario)?);
                out.push(run(p_panel, scenario)?);
            }
            Ok(out)
        }
        Figure::Fig11 => {
            let mut out = Vec::new();
            for spec in channels {
                let bare = ChannelSpec {
                    family: spec.family,
                    parameter: None,
                };
                let grid = SweepGrid::new(vec![Axis::unit("local_delta", step)?, delta_axis(&spec, step)?])
                    .with_channel(bare)
                    .with_fixed("p", p)
                    .with_label(format!("noisy_labs/{}/local_delta-delta", spec.family));
                out.push(run(grid, Scenario::NoisyLabs)?);
            }
            Ok(out)
        }
    }
}
