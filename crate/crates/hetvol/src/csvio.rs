//! CSV input and output, and the schemas every written table conforms to.

use crate::error::{CliError, Result};
use std::io::{Read, Write};
use std::path::Path;
use volatility_core::{IntradayDay, IntradaySeries, LogVolSeries};

/// Shortest round-tripping text of `v` rounded to 12 significant digits.
pub fn fmt_num(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() {
            "NaN".into()
        } else if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if v == 0.0 {
        return "0".into();
    }
    let r: f64 = format!("{v:.11e}").parse().unwrap_or(v);
    let a = r.abs();
    if (1e-6..1e15).contains(&a) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

/// A header and rows of already formatted fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for r in &self.rows {
            w.write_record(r).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
    }

    /// Writes to `path`, or to standard output when `path` is `None` or `-`.
    pub fn write(&self, path: Option<&Path>) -> Result<()> {
        let text = self.to_csv();
        match path {
            Some(p) if p != Path::new("-") => {
                std::fs::write(p, text).map_err(|e| CliError::Data(format!("{}: {e}", p.display())))
            }
            _ => std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Data(e.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnKind {
    Text,
    Number,
    Integer,
    /// `"0.33 (0.06)"` or a `skipped: …` note.
    Estimate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Schema {
    pub name: &'static str,
    pub columns: &'static [(&'static str, ColumnKind)],
}

use ColumnKind::{Estimate, Integer, Number, Text};

pub const RV_SCHEMA: Schema = Schema {
    name: "rv",
    columns: &[
        ("date", Text),
        ("rv", Number),
        ("n_obs", Integer),
        ("omega", Number),
    ],
};
pub const LOGVOL_SCHEMA: Schema = Schema {
    name: "log-vol",
    columns: &[("date", Text), ("omega", Number)],
};
pub const ACF_SCHEMA: Schema = Schema {
    name: "acf",
    columns: &[("h", Integer), ("gamma", Number), ("rho", Number)],
};
pub const SPECTRUM_SCHEMA: Schema = Schema {
    name: "spectrum",
    columns: &[("lambda", Number), ("f_x", Number)],
};
pub const BAND_SCHEMA: Schema = Schema {
    name: "band",
    columns: &[("x", Number), ("f", Number), ("lo", Number), ("hi", Number)],
};
pub const FIT_SCHEMA: Schema = Schema {
    name: "fit",
    columns: &[("parameter", Text), ("estimate", Number), ("se", Number)],
};
pub const SEMIPARAM_SCHEMA: Schema = Schema {
    name: "semiparam",
    columns: &[
        ("asset", Text),
        ("d_model", Number),
        ("se_model", Number),
        ("d_gph", Number),
        ("se_gph", Number),
        ("d_hurst", Number),
    ],
};
pub const BUBBLE_SCHEMA: Schema = Schema {
    name: "bubble",
    columns: &[
        ("parameter", Text),
        ("whole", Estimate),
        ("before", Estimate),
        ("after", Estimate),
    ],
};
pub const REPLICATE_SCHEMA: Schema = Schema {
    name: "replicate",
    columns: &[
        ("seed", Integer),
        ("d_hat", Number),
        ("se_d", Number),
        ("covered_2se", Integer),
        ("covered_1_96se", Integer),
        ("objective", Number),
        ("converged", Integer),
        ("boundary", Text),
    ],
};

pub const ALL_SCHEMAS: [Schema; 9] = [
    RV_SCHEMA,
    LOGVOL_SCHEMA,
    ACF_SCHEMA,
    SPECTRUM_SCHEMA,
    BAND_SCHEMA,
    FIT_SCHEMA,
    SEMIPARAM_SCHEMA,
    BUBBLE_SCHEMA,
    REPLICATE_SCHEMA,
];

fn field_ok(kind: ColumnKind, v: &str) -> bool {
    match kind {
        Text => true,
        Number => v.parse::<f64>().is_ok(),
        Integer => v.parse::<i64>().is_ok(),
        Estimate => {
            v.starts_with("skipped") || {
                let mut it = v.splitn(2, ' ');
                let (a, b) = (it.next().unwrap_or(""), it.next().unwrap_or(""));
                a.parse::<f64>().is_ok()
                    && b.strip_prefix('(')
                        .and_then(|s| s.strip_suffix(')'))
                        .is_some_and(|s| s.parse::<f64>().is_ok())
            }
        }
    }
}

/// Checks the header and every field of `text` against `schema`; returns the row count.
pub fn validate_csv(text: &str, schema: &Schema) -> Result<usize> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = r.headers()?.iter().map(String::from).collect();
    let want: Vec<&str> = schema.columns.iter().map(|c| c.0).collect();
    if header != want {
        return Err(CliError::Data(format!(
            "{} header {:?}, expected {:?}",
            schema.name, header, want
        )));
    }
    let mut n = 0;
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        for ((name, kind), v) in schema.columns.iter().zip(rec.iter()) {
            if !field_ok(*kind, v) {
                return Err(CliError::Data(format!(
                    "{} line {}: {name} = {v:?} is not valid",
                    schema.name,
                    i + 2
                )));
            }
        }
        n += 1;
    }
    Ok(n)
}

fn open(path: &Path) -> Result<Box<dyn Read>> {
    let f = std::fs::File::open(path)
        .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
    Ok(Box::new(f))
}

/// `HH:MM`, `HH:MM:SS` or plain seconds.
pub fn parse_time(s: &str) -> Option<u32> {
    let parts: Vec<&str> = s.trim().split(':').collect();
    let num = |p: &str| p.parse::<u32>().ok();
    match parts.as_slice() {
        [sec] => num(sec),
        [h, m] => Some(num(h)? * 3600 + num(m)? * 60),
        [h, m, sec] => Some(num(h)? * 3600 + num(m)? * 60 + num(sec)?),
        _ => None,
    }
}

/// Intraday prices `date,time,price`, grouped by date in file order.
pub fn read_intraday<R: Read>(reader: R, symbol: &str) -> Result<IntradaySeries> {
    let mut r = csv::Reader::from_reader(reader);
    let header: Vec<String> = r.headers()?.iter().map(|h| h.trim().to_string()).collect();
    if header != ["date", "time", "price"] {
        return Err(CliError::Data(format!(
            "intraday header {header:?}, expected [\"date\", \"time\", \"price\"]"
        )));
    }
    let mut days: Vec<IntradayDay> = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| CliError::Data(format!("line {line}: {e}")))?;
        if rec.len() != 3 {
            return Err(CliError::Data(format!(
                "line {line}: expected 3 fields, found {}",
                rec.len()
            )));
        }
        let date = rec[0].trim();
        let time = parse_time(&rec[1])
            .ok_or_else(|| CliError::Data(format!("line {line}: bad time {:?}", &rec[1])))?;
        let price: f64 = rec[2]
            .trim()
            .parse()
            .map_err(|_| CliError::Data(format!("line {line}: bad price {:?}", &rec[2])))?;
        if !price.is_finite() {
            return Err(CliError::Data(format!(
                "line {line}: price {price} is not finite"
            )));
        }
        match days.last_mut() {
            Some(d) if d.date == date => d.obs.push((time, price)),
            _ => {
                if days.iter().any(|d| d.date == date) {
                    return Err(CliError::Data(format!(
                        "line {line}: date {date} is not contiguous"
                    )));
                }
                days.push(IntradayDay::new(date, vec![(time, price)]));
            }
        }
    }
    Ok(IntradaySeries {
        symbol: symbol.to_string(),
        days,
    })
}

pub fn read_intraday_file(path: &Path) -> Result<IntradaySeries> {
    let symbol = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    read_intraday(open(path)?, &symbol)
}

/// Any CSV with an `omega` column and optionally a `date` column.
pub fn read_log_vol<R: Read>(reader: R) -> Result<LogVolSeries> {
    let mut r = csv::Reader::from_reader(reader);
    let header: Vec<String> = r.headers()?.iter().map(|h| h.trim().to_string()).collect();
    let col = |name: &str| header.iter().position(|h| h == name);
    let om = col("omega")
        .ok_or_else(|| CliError::Data(format!("no omega column in header {header:?}")))?;
    let dt = col("date");
    let (mut dates, mut omega) = (Vec::new(), Vec::new());
    for (i, rec) in r.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| CliError::Data(format!("line {line}: {e}")))?;
        let v: f64 = rec
            .get(om)
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| CliError::Data(format!("line {line}: bad omega")))?;
        if !v.is_finite() {
            return Err(CliError::Data(format!(
                "line {line}: omega = {v} (zero realized variance?)"
            )));
        }
        dates.push(
            dt.and_then(|c| rec.get(c))
                .map_or_else(|| format!("t{}", i), |s| s.trim().to_string()),
        );
        omega.push(v);
    }
    Ok(LogVolSeries::from_omega(dates, omega))
}

pub fn read_log_vol_file(path: &Path) -> Result<LogVolSeries> {
    read_log_vol(open(path)?)
}

pub fn log_vol_table(s: &LogVolSeries) -> Table {
    let mut t = Table::new(&["date", "omega"]);
    for (d, v) in s.dates.iter().zip(&s.omega) {
        t.push(vec![d.clone(), fmt_num(*v)]);
    }
    t
}
