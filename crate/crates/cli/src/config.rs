//! Flat `key = value` config files merged under command-line flags.

use clap::parser::ValueSource;
use clap::{Arg, ArgAction, ArgMatches, Command};

use crate::CliError;

/// Lines of `key = value`; `#` starts a comment. Underscores in keys read as hyphens.
pub fn parse(text: &str) -> Result<Vec<(String, String)>, CliError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("config line {}: expected key = value", i + 1)))?;
        let key = k.trim().replace('_', "-");
        if key.is_empty() {
            return Err(CliError::Usage(format!("config line {}: empty key", i + 1)));
        }
        out.push((key, v.trim().to_string()));
    }
    Ok(out)
}

fn find<'a>(cmd: &'a Command, key: &str) -> Option<&'a Arg> {
    cmd.get_arguments().find(|a| a.get_long() == Some(key))
}

fn from_command_line(m: &ArgMatches, id: &str) -> bool {
    m.try_contains_id(id).unwrap_or(false) && m.value_source(id) == Some(ValueSource::CommandLine)
}

/// Flags to append for config entries that the command line left at their defaults.
pub fn injected_flags(root: &Command, matches: &ArgMatches, entries: &[(String, String)]) -> Result<Vec<String>, CliError> {
    let (name, sub_m) = matches
        .subcommand()
        .ok_or_else(|| CliError::Usage("no subcommand".into()))?;
    let sub = root
        .find_subcommand(name)
        .ok_or_else(|| CliError::Usage(format!("unknown subcommand {name}")))?;
    let mut out = Vec::new();
    for (key, value) in entries {
        if key == "config" {
            return Err(CliError::Usage("config files cannot include other config files".into()));
        }
        let arg = find(sub, key)
            .or_else(|| find(root, key))
            .ok_or_else(|| CliError::Usage(format!("config key {key:?} is not a flag of {name}")))?;
        let id = arg.get_id().as_str();
        if from_command_line(matches, id) || from_command_line(sub_m, id) {
            continue;
        }
        match arg.get_action() {
            ArgAction::SetTrue => match value.to_ascii_lowercase().as_str() {
                "true" | "yes" | "1" | "on" => out.push(format!("--{key}")),
                "false" | "no" | "0" | "off" => {}
                _ => return Err(CliError::Usage(format!("config key {key:?} expects a boolean"))),
            },
            _ => out.push(format!("--{key}={value}")),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_comments_and_underscores() {
        let e = parse("# header\nt_min = 0.001 # trailing\n\nformat=csv\n").unwrap();
        assert_eq!(e, vec![("t-min".into(), "0.001".into()), ("format".into(), "csv".into())]);
        assert!(parse("novalue\n").is_err());
    }
}
