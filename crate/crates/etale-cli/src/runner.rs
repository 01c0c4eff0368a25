//! Threaded, checkpointed driver for the pair search.
//!
//! The index range is processed in macro-chunks; within a chunk the work is
//! statically partitioned across threads and the per-range results are
//! merged back in range order, so the candidate stream and the summary are
//! byte-identical however many threads run. A checkpoint (JSON: space
//! description, cursor, found candidates) is written after each completed
//! chunk and a search can resume from one.

use std::fs;
use std::path::{Path, PathBuf};
use std::thread;

use etale_core::multipoly::MultiPoly;
use etale_core::parse::{parse_laurent, parse_rational, parse_texpr};
use etale_core::search::{
    split_range, EtaleCandidate, EtaleSearch, SearchSpace, SearchSummary,
};
use etale_core::wright::WrightAlgebra;
use serde_json::{json, Value};

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub threads: usize,
    /// Indices per checkpointed macro-chunk.
    pub chunk: u128,
    pub checkpoint: Option<PathBuf>,
    pub resume: Option<PathBuf>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            threads: 1,
            chunk: 1 << 21,
            checkpoint: None,
            resume: None,
        }
    }
}

#[derive(Debug)]
pub struct SearchOutput {
    /// All candidates, including any recovered from a resumed checkpoint.
    pub candidates: Vec<EtaleCandidate>,
    pub summary: SearchSummary,
    /// How many of `candidates` came from the checkpoint rather than from
    /// this run (those are not re-emitted through the callback).
    pub resumed: usize,
}

pub fn candidate_json(c: &EtaleCandidate) -> Value {
    json!({
        "p": c.p_expr.to_string(),
        "q": c.q_expr.to_string(),
        "jacobian": c.jacobian.to_string(),
    })
}

pub fn space_json(space: &SearchSpace) -> Value {
    json!({
        "m": space.algebra().m(),
        "alphas": space
            .algebra()
            .alphas()
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>(),
        "t_degree_bound": space.t_degree_bound(),
        "coefficient_set": space
            .coefficient_set()
            .iter()
            .map(|c| c.to_string())
            .collect::<Vec<_>>(),
    })
}

pub fn summary_json(s: &SearchSummary) -> Value {
    json!({
        "indices": s.indices,
        "constant_expr_skipped": s.skipped_constant_expr,
        "constant_value_skipped": s.skipped_constant_value,
        "filter_checked": s.filter_checked,
        "filter_failures": s.filter_failures,
        "exact_fallbacks": s.exact_fallbacks,
        "candidates": s.candidates,
    })
}

fn checkpoint_json(space: &SearchSpace, cursor: u128, found: &[EtaleCandidate]) -> Value {
    json!({
        "space": space_json(space),
        "cursor": cursor.to_string(),
        "found": found.iter().map(candidate_json).collect::<Vec<_>>(),
    })
}

fn space_from_json(v: &Value) -> Result<SearchSpace, String> {
    let m = v["m"].as_u64().ok_or("checkpoint: missing m")? as usize;
    let alphas = v["alphas"]
        .as_array()
        .ok_or("checkpoint: missing alphas")?
        .iter()
        .map(|a| {
            parse_rational(a.as_str().ok_or("checkpoint: alpha not a string")?)
                .map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<_>, String>>()?;
    let bound = v["t_degree_bound"]
        .as_u64()
        .ok_or("checkpoint: missing t_degree_bound")? as u32;
    let coeffs = v["coefficient_set"]
        .as_array()
        .ok_or("checkpoint: missing coefficient_set")?
        .iter()
        .map(|c| {
            parse_rational(c.as_str().ok_or("checkpoint: coefficient not a string")?)
                .map_err(|e| e.to_string())
        })
        .collect::<Result<Vec<_>, String>>()?;
    let algebra = WrightAlgebra::new(m, alphas).map_err(|e| e.to_string())?;
    SearchSpace::new(algebra, bound, coeffs).map_err(|e| e.to_string())
}

fn candidate_from_json(v: &Value, space: &SearchSpace) -> Result<EtaleCandidate, String> {
    let nvars = space.algebra().num_generators();
    let parse_expr = |key: &str| -> Result<MultiPoly, String> {
        parse_texpr(
            v[key].as_str().ok_or_else(|| format!("checkpoint: missing {}", key))?,
            nvars,
        )
        .map_err(|e| e.to_string())
    };
    let p_expr = parse_expr("p")?;
    let q_expr = parse_expr("q")?;
    let jacobian = parse_laurent(
        v["jacobian"]
            .as_str()
            .ok_or("checkpoint: missing jacobian")?,
    )
    .map_err(|e| e.to_string())?;
    // Stored candidates must re-verify before they are trusted.
    let rebuilt = EtaleCandidate::check(p_expr, q_expr, &space.algebra().generators())
        .ok_or("checkpoint: stored candidate fails re-verification")?;
    if rebuilt.jacobian != jacobian {
        return Err("checkpoint: stored jacobian disagrees".into());
    }
    Ok(rebuilt)
}

struct ResumeState {
    cursor: u128,
    found: Vec<EtaleCandidate>,
}

fn read_checkpoint(path: &Path, space: &SearchSpace) -> Result<ResumeState, String> {
    let text = fs::read_to_string(path)
        .map_err(|e| format!("cannot read checkpoint {}: {}", path.display(), e))?;
    let v: Value =
        serde_json::from_str(&text).map_err(|e| format!("invalid checkpoint JSON: {}", e))?;
    let stored_space = space_from_json(&v["space"])?;
    if stored_space != *space {
        return Err("checkpoint was written for a different search space".into());
    }
    let cursor: u128 = v["cursor"]
        .as_str()
        .ok_or("checkpoint: missing cursor")?
        .parse()
        .map_err(|_| "checkpoint: invalid cursor")?;
    let found = v["found"]
        .as_array()
        .ok_or("checkpoint: missing found list")?
        .iter()
        .map(|c| candidate_from_json(c, space))
        .collect::<Result<Vec<_>, String>>()?;
    Ok(ResumeState { cursor, found })
}

fn write_checkpoint(
    path: &Path,
    space: &SearchSpace,
    cursor: u128,
    found: &[EtaleCandidate],
) -> Result<(), String> {
    let value = checkpoint_json(space, cursor, found);
    fs::write(path, format!("{}\n", value))
        .map_err(|e| format!("cannot write checkpoint {}: {}", path.display(), e))
}

/// Run the search over the whole space, streaming newly found candidates to
/// `on_candidate` in deterministic enumeration order.
pub fn run_search(
    space: &SearchSpace,
    opts: &SearchOptions,
    on_candidate: &mut dyn FnMut(&EtaleCandidate),
) -> Result<SearchOutput, String> {
    let search = EtaleSearch::new(space.clone()).map_err(|e| e.to_string())?;
    let total = search.vector_count();

    let (start, mut found, resumed) = match &opts.resume {
        Some(path) => {
            let state = read_checkpoint(path, space)?;
            if state.cursor > total {
                return Err("checkpoint cursor beyond the search space".into());
            }
            let n = state.found.len();
            (state.cursor, state.found, n)
        }
        None => (0, Vec::new(), 0),
    };

    let mut summary = SearchSummary::default();
    let mut cursor = start;
    while cursor < total {
        let chunk_end = total.min(cursor + opts.chunk.max(1));
        let mut chunk_found: Vec<EtaleCandidate> = Vec::new();
        if opts.threads <= 1 {
            let s = search.run_range(cursor, chunk_end, &mut |c| chunk_found.push(c));
            summary.merge(&s);
        } else {
            let ranges = split_range(cursor, chunk_end, opts.threads as u32);
            let results = thread::scope(|scope| {
                let handles: Vec<_> = ranges
                    .iter()
                    .map(|&(s, e)| {
                        let search = &search;
                        scope.spawn(move || {
                            let mut local = Vec::new();
                            let summary = search.run_range(s, e, &mut |c| local.push(c));
                            (local, summary)
                        })
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("search worker panicked"))
                    .collect::<Vec<_>>()
            });
            for (local, s) in results {
                chunk_found.extend(local);
                summary.merge(&s);
            }
        }
        for c in &chunk_found {
            on_candidate(c);
        }
        found.extend(chunk_found);
        cursor = chunk_end;
        if let Some(path) = &opts.checkpoint {
            write_checkpoint(path, space, cursor, &found)?;
        }
    }

    Ok(SearchOutput {
        candidates: found,
        summary,
        resumed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use etale_core::rational::int;

    fn small_space() -> SearchSpace {
        SearchSpace::new(
            WrightAlgebra::new(3, vec![int(0), int(1)]).unwrap(),
            1,
            vec![int(-1), int(0), int(1)],
        )
        .unwrap()
    }

    #[test]
    fn threaded_run_matches_single_thread() {
        let space = small_space();
        let mut seq = Vec::new();
        let one = run_search(
            &space,
            &SearchOptions {
                threads: 1,
                chunk: 50,
                ..Default::default()
            },
            &mut |c| seq.push(c.clone()),
        )
        .unwrap();
        let mut par = Vec::new();
        let four = run_search(
            &space,
            &SearchOptions {
                threads: 4,
                chunk: 37,
                ..Default::default()
            },
            &mut |c| par.push(c.clone()),
        )
        .unwrap();
        assert_eq!(one.summary, four.summary);
        assert_eq!(seq, par);
        assert_eq!(one.candidates, four.candidates);
    }

    #[test]
    fn checkpoint_resume_reproduces_full_run() {
        let space = small_space();
        let full = run_search(&space, &SearchOptions::default(), &mut |_| {}).unwrap();

        let dir = tempfile::tempdir().unwrap();
        let ck = dir.path().join("ck.json");
        // Interrupted run: stop after one 100-index chunk by searching a
        // truncated space through run_range, then write the checkpoint the
        // runner would have written.
        let search = EtaleSearch::new(space.clone()).unwrap();
        let mut partial = Vec::new();
        let s1 = search.run_range(0, 100, &mut |c| partial.push(c));
        write_checkpoint(&ck, &space, 100, &partial).unwrap();

        let mut resumed_stream = Vec::new();
        let resumed = run_search(
            &space,
            &SearchOptions {
                resume: Some(ck.clone()),
                checkpoint: Some(ck.clone()),
                chunk: 64,
                ..Default::default()
            },
            &mut |c| resumed_stream.push(c.clone()),
        )
        .unwrap();
        assert_eq!(resumed.candidates, full.candidates);
        let mut merged = s1;
        merged.merge(&resumed.summary);
        assert_eq!(merged, full.summary);

        // The final checkpoint parks the cursor at the end of the space.
        let state = read_checkpoint(&ck, &space).unwrap();
        assert_eq!(state.cursor, search.vector_count());
    }

    #[test]
    fn checkpoint_space_mismatch_is_rejected() {
        let space = small_space();
        let dir = tempfile::tempdir().unwrap();
        let ck = dir.path().join("ck.json");
        write_checkpoint(&ck, &space, 10, &[]).unwrap();

        let other = SearchSpace::new(
            WrightAlgebra::new(3, vec![int(0), int(2)]).unwrap(),
            1,
            vec![int(-1), int(0), int(1)],
        )
        .unwrap();
        let err = run_search(
            &other,
            &SearchOptions {
                resume: Some(ck),
                ..Default::default()
            },
            &mut |_| {},
        )
        .unwrap_err();
        assert!(err.contains("different search space"), "{}", err);
    }
}
