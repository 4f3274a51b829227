//! Models, objectives and objective values.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::crossing_graph::ObjectiveReport;
use crate::exact::{format_rational, sqrt_exact, to_f64, Rational, RootSum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Model {
    /// A global bottom-to-top order of the edges.
    Stacking,
    /// Any per-crossing choice.
    Weaving,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Objective {
    MinTotalSwitches,
    MinMaxSwitches,
    MinMaxTunnels,
    MinMaxTunnelLength,
    MaxMinTunnelDistance,
}

impl Objective {
    pub const ALL: [Objective; 5] = [
        Objective::MinTotalSwitches,
        Objective::MinMaxSwitches,
        Objective::MinMaxTunnels,
        Objective::MinMaxTunnelLength,
        Objective::MaxMinTunnelDistance,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Objective::MinTotalSwitches => "min-total-switches",
            Objective::MinMaxSwitches => "min-max-switches",
            Objective::MinMaxTunnels => "min-max-tunnels",
            Objective::MinMaxTunnelLength => "min-max-tunnel-length",
            Objective::MaxMinTunnelDistance => "max-min-tunnel-distance",
        }
    }

    /// Reads this objective's value off a metrics report.
    pub fn value_of(self, r: &ObjectiveReport) -> ObjectiveValue {
        match self {
            Objective::MinTotalSwitches => ObjectiveValue::Count(r.total_switches),
            Objective::MinMaxSwitches => ObjectiveValue::Count(r.max_switches),
            Objective::MinMaxTunnels => ObjectiveValue::Count(r.max_tunnels),
            Objective::MinMaxTunnelLength => ObjectiveValue::Length(r.max_tunnel_length.clone()),
            Objective::MaxMinTunnelDistance => ObjectiveValue::Distance(r.min_tunnel_distance_sq.clone()),
        }
    }
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Stacking => "stacking",
            Model::Weaving => "weaving",
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown {kind} {value:?}")]
pub struct UnknownName {
    pub kind: &'static str,
    pub value: String,
}

impl FromStr for Objective {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Objective::ALL
            .into_iter()
            .find(|o| o.name() == s)
            .ok_or_else(|| UnknownName { kind: "objective", value: s.to_string() })
    }
}

impl FromStr for Model {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "stacking" => Ok(Model::Stacking),
            "weaving" => Ok(Model::Weaving),
            _ => Err(UnknownName { kind: "model", value: s.to_string() }),
        }
    }
}

/// Value of one objective for one casing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObjectiveValue {
    Count(usize),
    Length(RootSum),
    /// Squared distance; `None` when no edge has two tunnels.
    Distance(Option<Rational>),
}

impl ObjectiveValue {
    /// Orders values so that `Less` means better (smaller counts and
    /// lengths, larger distances).
    pub fn cmp_quality(&self, other: &ObjectiveValue) -> Ordering {
        match (self, other) {
            (ObjectiveValue::Count(a), ObjectiveValue::Count(b)) => a.cmp(b),
            (ObjectiveValue::Length(a), ObjectiveValue::Length(b)) => a.cmp(b),
            (ObjectiveValue::Distance(a), ObjectiveValue::Distance(b)) => match (a, b) {
                (None, None) => Ordering::Equal,
                (None, Some(_)) => Ordering::Less,
                (Some(_), None) => Ordering::Greater,
                (Some(x), Some(y)) => y.cmp(x),
            },
            _ => panic!("comparing values of different objectives"),
        }
    }

    pub fn is_better_than(&self, other: &ObjectiveValue) -> bool {
        self.cmp_quality(other) == Ordering::Less
    }

    /// Float approximation; unbounded distances are infinite.
    pub fn to_f64(&self) -> f64 {
        match self {
            ObjectiveValue::Count(c) => *c as f64,
            ObjectiveValue::Length(l) => l.to_f64(),
            ObjectiveValue::Distance(None) => f64::INFINITY,
            ObjectiveValue::Distance(Some(d)) => to_f64(d).sqrt(),
        }
    }
}

impl fmt::Display for ObjectiveValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ObjectiveValue::Count(c) => write!(f, "{c}"),
            ObjectiveValue::Length(l) => write!(f, "{l}"),
            ObjectiveValue::Distance(None) => f.write_str("unbounded"),
            ObjectiveValue::Distance(Some(d)) => match sqrt_exact(d) {
                Some(r) => f.write_str(&format_rational(&r)),
                None => write!(f, "sqrt({})", format_rational(d)),
            },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn names_round_trip() {
        for o in Objective::ALL {
            assert_eq!(o.name().parse::<Objective>().unwrap(), o);
        }
        assert_eq!("weaving".parse::<Model>().unwrap(), Model::Weaving);
        assert!("sideways".parse::<Model>().is_err());
    }

    #[test]
    fn quality_order() {
        use ObjectiveValue::*;
        assert!(Count(1).is_better_than(&Count(2)));
        assert!(Distance(Some(int(4))).is_better_than(&Distance(Some(int(1)))));
        assert!(Distance(None).is_better_than(&Distance(Some(int(100)))));
        assert_eq!(Distance(Some(int(4))).to_string(), "2");
        assert_eq!(Distance(Some(int(2))).to_string(), "sqrt(2)");
        assert_eq!(Length(RootSum::from_rational(rat(17, 8))).to_f64(), 2.125);
    }
}
