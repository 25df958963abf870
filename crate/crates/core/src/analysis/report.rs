use std::fmt::Write as _;

use super::TheoremReport;

pub const CSV_HEADER: &str =
    "theorem,n,alpha,policy,mu0,predicted_augment,observed_augment,predicted_halve,observed_halve,match";

/// Header row plus one row per report. The MRA construction has no policy; its
/// cell is `-`.
pub fn reports_to_csv(reports: &[TheoremReport]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in reports {
        let policy = r.policy.map_or_else(|| "-".to_string(), |p| p.to_string());
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.theorem,
            r.n,
            r.alpha,
            policy,
            r.mu0,
            r.predicted.augment,
            r.observed.augment,
            r.predicted.halve,
            r.observed.halve,
            r.matched
        )
        .expect("writing to a String");
    }
    out
}

/// Aligned columns for terminals.
pub fn reports_to_text(reports: &[TheoremReport]) -> String {
    let header = ["theorem", "n", "alpha", "policy", "mu0", "aug(pred/obs)", "halve(pred/obs)", "match", "jumps"];
    let rows: Vec<[String; 9]> = reports
        .iter()
        .map(|r| {
            [
                r.theorem.clone(),
                r.n.to_string(),
                r.alpha.to_string(),
                r.policy.map_or_else(|| "-".to_string(), |p| p.to_string()),
                r.mu0.to_string(),
                format!("{}/{}", r.predicted.augment, r.observed.augment),
                format!("{}/{}", r.predicted.halve, r.observed.halve),
                if r.matched { "yes".into() } else { "NO".into() },
                if r.jumps_ok { "ok".into() } else { "VIOLATED".into() },
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let line = |out: &mut String, cells: &[&str]| {
        let padded: Vec<String> = cells.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
        out.push_str(padded.join("  ").trim_end());
        out.push('\n');
    };
    line(&mut out, &header);
    for row in &rows {
        line(&mut out, &row.iter().map(String::as_str).collect::<Vec<_>>());
    }
    out
}
