//! Empirical time series: CSV ingestion of monthly data, year-over-year
//! inflation gaps against a target, tightness gaps, and a descriptive
//! piecewise-linear fit through the origin.

use crate::error::{Error, Result};
use serde::Serialize;
use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

/// A calendar month, the resolution of the input series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct YearMonth {
    pub year: i32,
    pub month: u8,
}

impl YearMonth {
    pub fn new(year: i32, month: u8) -> Result<Self> {
        if !(1..=12).contains(&month) {
            return Err(Error::Parse(format!("month out of range: {month}")));
        }
        Ok(YearMonth { year, month })
    }

    /// The same month one year earlier.
    pub fn minus_one_year(self) -> Self {
        YearMonth {
            year: self.year - 1,
            month: self.month,
        }
    }

    /// Calendar quarter 1–4.
    pub fn quarter(self) -> u8 {
        (self.month - 1) / 3 + 1
    }
}

impl FromStr for YearMonth {
    type Err = Error;

    /// Accepts `YYYY-MM` or a full ISO date `YYYY-MM-DD` (the day is
    /// dropped, matching monthly-frequency exports that stamp the first of
    /// the month).
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.trim().splitn(3, '-');
        let year = parts
            .next()
            .filter(|p| p.len() == 4)
            .and_then(|p| p.parse::<i32>().ok());
        let month = parts
            .next()
            .filter(|p| p.len() == 2)
            .and_then(|p| p.parse::<u8>().ok());
        match (year, month) {
            (Some(y), Some(m)) => YearMonth::new(y, m),
            _ => Err(Error::Parse(format!("invalid month stamp: {s:?}"))),
        }
    }
}

impl fmt::Display for YearMonth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year, self.month)
    }
}

/// One observation of a monthly series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPoint {
    pub date: YearMonth,
    pub value: f64,
}

/// Checks the series invariants: strictly increasing dates, finite values.
fn validate_series(points: &[SeriesPoint], name: &str) -> Result<()> {
    for (i, p) in points.iter().enumerate() {
        if !p.value.is_finite() {
            return Err(Error::Parse(format!(
                "{name}: non-finite value at {}",
                p.date
            )));
        }
        if i > 0 && points[i - 1].date >= p.date {
            return Err(Error::Parse(format!(
                "{name}: dates not strictly increasing at {}",
                p.date
            )));
        }
    }
    Ok(())
}

/// Reads a `date,value` CSV (header required) into a monthly series.
pub fn read_series_csv(path: &Path) -> Result<Vec<SeriesPoint>> {
    let mut reader = csv::Reader::from_path(path)?;
    let mut points = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        if record.len() < 2 {
            return Err(Error::Parse(format!(
                "{}: expected date,value columns",
                path.display()
            )));
        }
        let date: YearMonth = record[0].parse()?;
        let value: f64 = record[1].trim().parse().map_err(|e| {
            Error::Parse(format!(
                "{}: bad value {:?}: {e}",
                path.display(),
                &record[1]
            ))
        })?;
        points.push(SeriesPoint { date, value });
    }
    validate_series(&points, &path.display().to_string())?;
    Ok(points)
}

/// One aligned observation of both gaps.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapPoint {
    #[serde(serialize_with = "serialize_month")]
    pub date: YearMonth,
    /// `θ − 1`.
    pub tightness_gap: f64,
    /// Year-over-year inflation minus the target, per year.
    pub inflation_gap: f64,
}

fn serialize_month<S: serde::Serializer>(
    d: &YearMonth,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(d)
}

/// Inflation and tightness gaps on the dates where both are defined.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct GapSeries {
    pub points: Vec<GapPoint>,
}

/// Computes gaps from a price-index series and a tightness series in
/// levels. Inflation is the year-over-year change with a 12-calendar-month
/// lag (no interpolation): `index(t)/index(t−12m) − 1 − target`. Output is
/// restricted to dates where both the lagged index and tightness exist.
pub fn compute_gaps(
    price_index: &[SeriesPoint],
    tightness: &[SeriesPoint],
    target: f64,
) -> Result<GapSeries> {
    validate_series(price_index, "price index")?;
    validate_series(tightness, "tightness")?;
    if price_index.len() < 13 {
        return Err(Error::InsufficientHistory(format!(
            "need at least 13 months of index data for a year-over-year point, got {}",
            price_index.len()
        )));
    }
    let index: BTreeMap<YearMonth, f64> = price_index.iter().map(|p| (p.date, p.value)).collect();
    let theta: BTreeMap<YearMonth, f64> = tightness.iter().map(|p| (p.date, p.value)).collect();

    let mut points = Vec::new();
    for p in price_index {
        let Some(&lagged) = index.get(&p.date.minus_one_year()) else {
            continue;
        };
        let Some(&th) = theta.get(&p.date) else {
            continue;
        };
        points.push(GapPoint {
            date: p.date,
            tightness_gap: th - 1.0,
            inflation_gap: p.value / lagged - 1.0 - target,
        });
    }
    if points.is_empty() {
        return Err(Error::DateMisalignment(
            "no dates with both a lagged index value and a tightness value".into(),
        ));
    }
    Ok(GapSeries { points })
}

/// Averages monthly gaps into calendar quarters (stamped on the quarter's
/// first month). Quarters with no observations are skipped.
pub fn aggregate_quarterly(gaps: &GapSeries) -> GapSeries {
    let mut buckets: BTreeMap<(i32, u8), (f64, f64, u32)> = BTreeMap::new();
    for p in &gaps.points {
        let e = buckets
            .entry((p.date.year, p.date.quarter()))
            .or_insert((0.0, 0.0, 0));
        e.0 += p.tightness_gap;
        e.1 += p.inflation_gap;
        e.2 += 1;
    }
    GapSeries {
        points: buckets
            .into_iter()
            .map(|((year, q), (tg, ig, n))| GapPoint {
                date: YearMonth {
                    year,
                    month: (q - 1) * 3 + 1,
                },
                tightness_gap: tg / n as f64,
                inflation_gap: ig / n as f64,
            })
            .collect(),
    }
}

/// Writes a gap series as `date,tightness_gap,inflation_gap` CSV.
pub fn write_gaps_csv<W: std::io::Write>(gaps: &GapSeries, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["date", "tightness_gap", "inflation_gap"])?;
    for p in &gaps.points {
        w.write_record([
            p.date.to_string(),
            format!("{:.17e}", p.tightness_gap),
            format!("{:.17e}", p.inflation_gap),
        ])?;
    }
    w.flush()?;
    Ok(())
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        match e.kind() {
            csv::ErrorKind::Io(_) => match e.into_kind() {
                csv::ErrorKind::Io(io) => Error::Io(io),
                _ => unreachable!(),
            },
            _ => Error::Parse(e.to_string()),
        }
    }
}

/// Result of the descriptive piecewise fit in gap space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KinkedFit {
    /// Slope for positive tightness gaps.
    pub slope_tight: f64,
    /// Slope for negative tightness gaps.
    pub slope_slack: f64,
    pub n_tight: usize,
    pub n_slack: usize,
    /// Sum of squared residuals over all points.
    pub ssr: f64,
    /// 1 − SSR / Σ(inflation_gap²); the regression has no intercept.
    pub r_squared: f64,
    /// True when the tight-side slope exceeds the slack-side slope.
    pub steeper_when_tight: bool,
}

fn origin_slope(points: &[(f64, f64)]) -> f64 {
    // Least squares through the origin: slope = Σxy / Σx².
    let sxy: f64 = points.iter().map(|(x, y)| x * y).sum();
    let sxx: f64 = points.iter().map(|(x, _)| x * x).sum();
    sxy / sxx
}

/// Fits `inflation_gap = slope · tightness_gap` separately on each side of
/// zero tightness gap, both lines through the origin (where the model's
/// kink sits). With `kink_at_origin = false` a single common slope is fit
/// and reported for both sides. Points with exactly zero tightness gap
/// contribute nothing to either slope.
pub fn fit_kinked_line(gaps: &GapSeries, kink_at_origin: bool) -> Result<KinkedFit> {
    let tight: Vec<(f64, f64)> = gaps
        .points
        .iter()
        .filter(|p| p.tightness_gap > 0.0)
        .map(|p| (p.tightness_gap, p.inflation_gap))
        .collect();
    let slack: Vec<(f64, f64)> = gaps
        .points
        .iter()
        .filter(|p| p.tightness_gap < 0.0)
        .map(|p| (p.tightness_gap, p.inflation_gap))
        .collect();

    let (slope_tight, slope_slack) = if kink_at_origin {
        if tight.len() < 3 || slack.len() < 3 {
            return Err(Error::InsufficientData(format!(
                "need at least 3 points on each side of zero tightness gap, got {} tight and {} slack",
                tight.len(),
                slack.len()
            )));
        }
        (origin_slope(&tight), origin_slope(&slack))
    } else {
        let all: Vec<(f64, f64)> = tight.iter().chain(&slack).copied().collect();
        if all.len() < 3 {
            return Err(Error::InsufficientData(format!(
                "need at least 3 points on each side of zero tightness gap, got {} tight and {} slack",
                tight.len(),
                slack.len()
            )));
        }
        let slope = origin_slope(&all);
        (slope, slope)
    };

    let mut ssr = 0.0;
    let mut syy = 0.0;
    for p in &gaps.points {
        let slope = if p.tightness_gap > 0.0 {
            slope_tight
        } else {
            slope_slack
        };
        let r = p.inflation_gap - slope * p.tightness_gap;
        ssr += r * r;
        syy += p.inflation_gap * p.inflation_gap;
    }
    Ok(KinkedFit {
        slope_tight,
        slope_slack,
        n_tight: tight.len(),
        n_slack: slack.len(),
        ssr,
        r_squared: if syy > 0.0 { 1.0 - ssr / syy } else { 1.0 },
        steeper_when_tight: slope_tight > slope_slack,
    })
}
