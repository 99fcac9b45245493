//! Command-line front end for the two tomography schemes.
//!
//! Subcommands: spin-recover, spin-optimize, jcm-sweep, jcm-recover,
//! roundtrip. Scheme parameters come from a flat key-value JSON config
//! file; the flags --seed, --shots, --exact, --out and --format override
//! the corresponding config keys. Exit codes: 0 success, 1 usage or
//! configuration error, 2 mathematically singular scheme.

mod commands;
mod config;
mod output;

use commands::CmdError;
use config::RunConfig;
use output::Sink;
use std::process::ExitCode;

const USAGE: &str = "usage: sqtom <command> [--config PATH] [--seed N] [--shots N | --exact] \
[--out PATH] [--format csv|json]

commands:
  spin-recover    plant a state, measure through a spin-assistant scheme, invert
  spin-optimize   maximize |det| of the spin scheme over its parameters
  jcm-sweep       determinant vs interaction time (or its Gaussian time average)
  jcm-recover     plant a state, measure through the cavity scheme, invert
  roundtrip       either scheme, selected by the config key 'scheme'

Scheme parameters live in the JSON config file (flat key-value; all
quantities carry unit suffixes such as g_rad_per_s, t_us, sigma_us2).
Recover/optimize commands emit JSON; sweeps emit CSV unless format=json.
";

fn parse_args(args: &[String]) -> Result<(String, RunConfig), String> {
    if args.is_empty() {
        return Err("missing command".into());
    }
    let command = args[0].clone();
    let mut config_path: Option<String> = None;
    let mut overrides: Vec<(String, serde_json::Value)> = Vec::new();
    let mut i = 1;
    let need_value = |i: &mut usize, flag: &str| -> Result<String, String> {
        *i += 1;
        args.get(*i)
            .cloned()
            .ok_or_else(|| format!("flag {flag} needs a value"))
    };
    while i < args.len() {
        match args[i].as_str() {
            "--config" => config_path = Some(need_value(&mut i, "--config")?),
            "--seed" => {
                let v = need_value(&mut i, "--seed")?;
                let n: u64 = v.parse().map_err(|_| format!("--seed: '{v}' is not an integer"))?;
                overrides.push(("seed".into(), serde_json::json!(n)));
            }
            "--shots" => {
                let v = need_value(&mut i, "--shots")?;
                let n: u64 = v.parse().map_err(|_| format!("--shots: '{v}' is not an integer"))?;
                overrides.push(("shots".into(), serde_json::json!(n)));
                overrides.push(("exact".into(), serde_json::json!(false)));
            }
            "--exact" => overrides.push(("exact".into(), serde_json::json!(true))),
            "--out" => {
                let v = need_value(&mut i, "--out")?;
                overrides.push(("out".into(), serde_json::json!(v)));
            }
            "--format" => {
                let v = need_value(&mut i, "--format")?;
                overrides.push(("format".into(), serde_json::json!(v)));
            }
            other => return Err(format!("unknown flag '{other}'")),
        }
        i += 1;
    }
    let mut cfg = match config_path {
        Some(path) => RunConfig::from_file(&path).map_err(|e| e.to_string())?,
        None => RunConfig::empty(),
    };
    for (key, value) in overrides {
        cfg.set(&key, value);
    }
    Ok((command, cfg))
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (command, cfg) = match parse_args(&args) {
        Ok(parsed) => parsed,
        Err(msg) => {
            eprintln!("error: {msg}\n\n{USAGE}");
            return ExitCode::from(1);
        }
    };

    let result = match command.as_str() {
        "spin-recover" => commands::spin_recover(&cfg),
        "spin-optimize" => commands::spin_optimize(&cfg),
        "jcm-sweep" => commands::jcm_sweep(&cfg),
        "jcm-recover" => commands::jcm_recover(&cfg),
        "roundtrip" => commands::roundtrip_cmd(&cfg),
        other => {
            eprintln!("error: unknown command '{other}'\n\n{USAGE}");
            return ExitCode::from(1);
        }
    };

    match result {
        Ok(artifact) => {
            let out = cfg.string_opt("out").ok().flatten().map(str::to_string);
            let sink = Sink::from_path(out.as_deref());
            if let Err(e) = sink.write(&artifact) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(CmdError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CmdError::Singular(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
