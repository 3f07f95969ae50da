//! Answer protocol, interactive loop and script runner.
//!
//! Answers are printed one at a time. An answer that is known to be the
//! last one ends with `.`; otherwise the session waits: `;` asks for the
//! next answer, `.` stops. In scripts a line reading `NEXT` plays the part
//! of `;`, and the runner echoes the choice as ` ;` or ` .`.

use std::io::{self, BufRead, Write};

use super::registry::PredicateRegistry;
use crate::goal::Goal;
use crate::solver::{solve, Solution, Solutions};

/// Default step budget for scripts.
pub const SCRIPT_MAX_STEPS: u64 = 1_000_000;

#[derive(Debug, Clone, Default)]
pub struct Options {
    /// Per-query step budget; `None` is unlimited.
    pub max_steps: Option<u64>,
    /// Suppress the banner.
    pub quiet: bool,
}

/// Process outcome, by first failure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Ok,
    /// A query did not parse or type-check.
    BadQuery,
    Budget,
    Io,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        match self {
            ExitStatus::Ok => 0,
            ExitStatus::BadQuery => 1,
            ExitStatus::Budget => 2,
            ExitStatus::Io => 3,
        }
    }

    fn or(self, later: ExitStatus) -> ExitStatus {
        if self == ExitStatus::Ok {
            later
        } else {
            self
        }
    }
}

const BUDGET_MESSAGE: &str = "error: step budget exhausted.";

/// Prints the answers of one query. `more` is consulted whenever another
/// answer is known to exist. Returns false if the budget ran out.
fn answer(
    solutions: &mut Solutions,
    render: &dyn Fn(&Solution) -> Option<String>,
    out: &mut dyn Write,
    more: &mut dyn FnMut(&mut dyn Write) -> io::Result<bool>,
) -> io::Result<bool> {
    let mut current = match solutions.try_next() {
        Err(_) => {
            writeln!(out, "{BUDGET_MESSAGE}")?;
            return Ok(false);
        }
        Ok(None) => {
            writeln!(out, "false.")?;
            return Ok(true);
        }
        Ok(Some(s)) => s,
    };
    loop {
        let Some(text) = render(&current) else {
            writeln!(out, "true.")?;
            return Ok(true);
        };
        match solutions.try_next() {
            Err(_) => {
                writeln!(out, "{text}")?;
                writeln!(out, "{BUDGET_MESSAGE}")?;
                return Ok(false);
            }
            Ok(None) => {
                writeln!(out, "{text}.")?;
                return Ok(true);
            }
            Ok(Some(next)) => {
                write!(out, "{text}")?;
                if !more(out)? {
                    return Ok(true);
                }
                current = next;
            }
        }
    }
}

fn read_line(input: &mut dyn BufRead) -> io::Result<Option<String>> {
    let mut line = String::new();
    if input.read_line(&mut line)? == 0 {
        Ok(None)
    } else {
        Ok(Some(line))
    }
}

/// Asks the user whether to continue after a non-final answer.
fn ask(input: &mut dyn BufRead, out: &mut dyn Write) -> io::Result<bool> {
    write!(out, " ")?;
    out.flush()?;
    loop {
        let Some(line) = read_line(input)? else {
            writeln!(out)?;
            return Ok(false);
        };
        match line.trim() {
            ";" => return Ok(true),
            "." | "" => return Ok(false),
            _ => {
                write!(out, "(';' for more, '.' to stop) ")?;
                out.flush()?;
            }
        }
    }
}

fn help(registry: &PredicateRegistry) -> String {
    let mut s = String::from(
        "Enter a query ending in '.', e.g.  plus(1, X, 5).\n\
         Combine goals with ',' (and), ';' (or) and '\\+' (not).\n\
         After an answer, ';' asks for the next one and '.' stops.\n\
         :h shows this help, :q quits.\n\
         Predicates:\n",
    );
    for p in registry.predicates() {
        s.push_str(&format!("  {p}\n"));
    }
    s
}

enum Line {
    Skip,
    Quit,
    Help,
    Query,
}

fn classify(line: &str) -> Line {
    match line {
        "" => Line::Skip,
        l if l.starts_with('%') => Line::Skip,
        ":q" => Line::Quit,
        ":h" => Line::Help,
        _ => Line::Query,
    }
}

/// Parses, runs and answers one query.
fn run_query(
    text: &str,
    registry: &PredicateRegistry,
    options: &Options,
    out: &mut dyn Write,
    more: &mut dyn FnMut(&mut dyn Write) -> io::Result<bool>,
) -> io::Result<ExitStatus> {
    let query = match registry.parse_query(text) {
        Ok(q) => q,
        Err(e) => {
            writeln!(out, "error: {e}")?;
            return Ok(ExitStatus::BadQuery);
        }
    };
    let mut solutions = solve(&query.goal(registry));
    if let Some(n) = options.max_steps {
        solutions = solutions.with_budget(n);
    }
    let render = |s: &Solution| query.render(registry, s.store());
    Ok(if answer(&mut solutions, &render, out, more)? {
        ExitStatus::Ok
    } else {
        ExitStatus::Budget
    })
}

/// Runs every query of a script.
///
/// Blank lines and lines starting with `%` are ignored. Errors are printed
/// and the script carries on; the result reflects the first one.
pub fn run_script(
    source: &str,
    registry: &PredicateRegistry,
    options: &Options,
    out: &mut dyn Write,
) -> io::Result<ExitStatus> {
    let mut lines = source.lines().map(str::trim).peekable();
    let mut status = ExitStatus::Ok;
    while let Some(line) = lines.next() {
        match classify(line) {
            Line::Skip => {}
            Line::Quit => break,
            Line::Help => write!(out, "{}", help(registry))?,
            // A NEXT with no pending answer has nothing to continue.
            Line::Query if line == "NEXT" => {}
            Line::Query => {
                let mut more = |out: &mut dyn Write| {
                    if lines.peek() == Some(&"NEXT") {
                        lines.next();
                        writeln!(out, " ;")?;
                        Ok(true)
                    } else {
                        writeln!(out, " .")?;
                        Ok(false)
                    }
                };
                status = status.or(run_query(line, registry, options, out, &mut more)?);
            }
        }
    }
    out.flush()?;
    Ok(status)
}

/// The interactive loop: prompt, read a query, answer it.
pub fn run_interactive(
    registry: &PredicateRegistry,
    options: &Options,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
) -> io::Result<ExitStatus> {
    if !options.quiet {
        writeln!(out, "typed-logic query loop. :h for help, :q to quit.")?;
    }
    let mut status = ExitStatus::Ok;
    loop {
        write!(out, "?- ")?;
        out.flush()?;
        let Some(line) = read_line(input)? else {
            writeln!(out)?;
            break;
        };
        let line = line.trim();
        match classify(line) {
            Line::Skip => {}
            Line::Quit => break,
            Line::Help => write!(out, "{}", help(registry))?,
            Line::Query => {
                let mut more = |out: &mut dyn Write| ask(input, out);
                status = status.or(run_query(line, registry, options, out, &mut more)?);
            }
        }
    }
    out.flush()?;
    Ok(status)
}

/// Interactively steps through the solutions of an embedded goal on the
/// terminal.
pub fn repl(goal: &Goal) -> io::Result<()> {
    let stdin = io::stdin();
    repl_with(goal, &mut stdin.lock(), &mut io::stdout())
}

/// [`repl`] over arbitrary streams. Answers show every user variable the
/// solution binds.
pub fn repl_with(goal: &Goal, input: &mut dyn BufRead, out: &mut dyn Write) -> io::Result<()> {
    let render = |s: &Solution| (!s.is_empty()).then(|| s.to_string());
    let mut more = |out: &mut dyn Write| ask(input, out);
    answer(&mut solve(goal), &render, out, &mut more)?;
    out.flush()
}
