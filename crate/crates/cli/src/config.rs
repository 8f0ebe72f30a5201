//! Sweep configuration from a flat `key = value` file merged with flags.

use std::path::PathBuf;
use std::str::FromStr;

use bipartify::{Method, Model, SweepConfig};

use crate::args::ExperimentArgs;
use crate::error::{CliError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Outputs {
    pub csv: bool,
    pub json: bool,
    pub svg: bool,
}

#[derive(Debug)]
pub struct Resolved {
    pub sweep: SweepConfig,
    pub seed_given: bool,
    pub threads: Option<usize>,
    pub out: PathBuf,
    pub bins: usize,
    pub outputs: Outputs,
}

/// Parses the config file into the same shape as the flags. `#` starts a
/// comment; blank lines are ignored; keys use the flag spelling.
pub fn parse_config(text: &str) -> Result<ExperimentArgs> {
    let mut a = ExperimentArgs::default();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body.split_once('=').ok_or_else(|| CliError::Config {
            line,
            msg: format!("expected `key = value`, got {body:?}"),
        })?;
        let (key, value) = (key.trim().replace('_', "-"), value.trim().to_string());
        match key.as_str() {
            "models" => a.models = Some(value),
            "n" => a.n = Some(num(&value, line)?),
            "instances" => a.instances = Some(num(&value, line)?),
            "restarts" => a.restarts = Some(num(&value, line)?),
            "methods" => a.methods = Some(value),
            "seed" => a.seed = Some(num(&value, line)?),
            "threads" => a.threads = Some(num(&value, line)?),
            "out" => a.out = Some(PathBuf::from(value)),
            "bins" => a.bins = Some(num(&value, line)?),
            "include-greedy" => a.include_greedy = Some(num(&value, line)?),
            "format" => a.format = Some(value),
            "timings" => a.timings = Some(num(&value, line)?),
            _ => {
                return Err(CliError::Config {
                    line,
                    msg: format!("unknown key {key:?}"),
                })
            }
        }
    }
    Ok(a)
}

fn num<T: FromStr>(value: &str, line: usize) -> Result<T>
where
    T::Err: std::fmt::Display,
{
    value.parse().map_err(|e: T::Err| CliError::Config {
        line,
        msg: format!("{value:?}: {e}"),
    })
}

pub fn parse_list<T: FromStr<Err = bipartify::Error> + Copy>(s: &str, all: &[T]) -> Result<Vec<T>> {
    if s.trim() == "all" {
        return Ok(all.to_vec());
    }
    s.split(',')
        .map(|t| t.trim().parse::<T>().map_err(|e| CliError::Usage(e.to_string())))
        .collect()
}

fn parse_outputs(s: &str) -> Result<Outputs> {
    let mut o = Outputs {
        csv: false,
        json: false,
        svg: false,
    };
    for t in s.split(',') {
        match t.trim() {
            "csv" => o.csv = true,
            "json" => o.json = true,
            "svg" => o.svg = true,
            other => return Err(CliError::Usage(format!("unknown output format {other:?}"))),
        }
    }
    Ok(o)
}

/// Flags override the file; anything left unset takes the sweep default.
pub fn resolve(flags: ExperimentArgs, file: Option<ExperimentArgs>) -> Result<Resolved> {
    let file = file.unwrap_or_default();
    let d = SweepConfig::default();
    let seed = flags.seed.or(file.seed);
    let models = match flags.models.or(file.models) {
        Some(s) => parse_list::<Model>(&s, &Model::ALL)?,
        None => d.models,
    };
    let methods = match flags.methods.or(file.methods) {
        Some(s) => parse_list::<Method>(&s, &Method::ALL)?,
        None => d.methods,
    };
    let outputs = parse_outputs(flags.format.or(file.format).as_deref().unwrap_or("csv,json"))?;
    let sweep = SweepConfig {
        models,
        n: flags.n.or(file.n).unwrap_or(d.n),
        instances: flags.instances.or(file.instances).unwrap_or(d.instances),
        restarts: flags.restarts.or(file.restarts).unwrap_or(d.restarts),
        methods,
        master_seed: seed.unwrap_or(0),
        include_greedy: flags.include_greedy.or(file.include_greedy).unwrap_or(d.include_greedy),
        timings: flags.timings.or(file.timings).unwrap_or(false),
    };
    sweep.validate()?;
    Ok(Resolved {
        sweep,
        seed_given: seed.is_some(),
        threads: flags.threads.or(file.threads),
        out: flags.out.or(file.out).unwrap_or_else(|| PathBuf::from(".")),
        bins: flags.bins.or(file.bins).unwrap_or(bipartify::experiment::DEFAULT_BINS),
        outputs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_then_flags() {
        let file =
            parse_config("# sweep\nmodels = er, ws\nn = 16\ninstances=5\ninclude_greedy = false\nseed = 9\n").unwrap();
        let flags = ExperimentArgs {
            instances: Some(7),
            ..Default::default()
        };
        let r = resolve(flags, Some(file)).unwrap();
        assert_eq!(r.sweep.models, vec![Model::ErdosRenyi, Model::WattsStrogatz]);
        assert_eq!((r.sweep.n, r.sweep.instances, r.sweep.master_seed), (16, 7, 9));
        assert!(!r.sweep.include_greedy && r.seed_given);
        assert_eq!(
            r.outputs,
            Outputs {
                csv: true,
                json: true,
                svg: false
            }
        );
    }

    #[test]
    fn bad_lines() {
        assert!(matches!(parse_config("n 20"), Err(CliError::Config { line: 1, .. })));
        assert!(matches!(
            parse_config("\nbogus = 1"),
            Err(CliError::Config { line: 2, .. })
        ));
        assert!(matches!(parse_config("n = x"), Err(CliError::Config { line: 1, .. })));
    }

    #[test]
    fn lists() {
        assert_eq!(parse_list::<Model>("all", &Model::ALL).unwrap().len(), 4);
        assert_eq!(
            parse_list::<Method>("eigen-a,greedy-beta", &Method::ALL).unwrap().len(),
            2
        );
        assert!(parse_list::<Method>("nope", &Method::ALL).is_err());
        assert!(parse_outputs("csv,png").is_err());
    }
}
