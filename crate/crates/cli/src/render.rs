//! Plain-text rendering of reports.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use opp_core::assessment::{
    AdequacyReport, AssessmentKind, Attainment, AttainmentDetail, AttainmentReport,
    ComparisonTable, SuspectCode,
};
use opp_core::model::{ElementId, LinkIndex, ReferenceFramework};

/// Optional ANSI styling for headings.
#[derive(Clone, Copy, Debug, Default)]
pub struct Style {
    pub enabled: bool,
}

impl Style {
    fn heading(self, text: &str) -> String {
        if self.enabled {
            format!("\x1b[1m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }
}

fn score(v: f64) -> String {
    format!("{v:.2}")
}

/// Left-aligned columns separated by two spaces.
struct Table {
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        Table {
            rows: vec![header.into_iter().map(Into::into).collect()],
        }
    }

    fn row(&mut self, cells: Vec<String>) {
        self.rows.push(cells);
    }

    fn render(&self, out: &mut String) {
        let columns = self.rows.iter().map(Vec::len).max().unwrap_or(0);
        let widths: Vec<usize> = (0..columns)
            .map(|c| {
                self.rows
                    .iter()
                    .filter_map(|r| r.get(c))
                    .map(|s| s.chars().count())
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        for row in &self.rows {
            let mut line = String::new();
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    line.push_str("  ");
                }
                let _ = write!(line, "{cell:<width$}", width = widths[i]);
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
    }
}

fn join(ids: &BTreeSet<ElementId>) -> String {
    ids.iter()
        .map(ElementId::as_str)
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn render_adequacy(report: &AdequacyReport, style: Style) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}",
        style.heading(&format!("Adequacy of method {}", report.method))
    );
    let _ = writeln!(out, "Overall score: {}", score(report.overall_score));
    out.push('\n');

    let mut table = Table::new(["OBJECTIVE", "PRINCIPLES", "PRACTICES", "SCORE"]);
    for (objective, detail) in &report.per_objective {
        let p = &detail.principle_coverage;
        let practices = if detail.practice_coverage.is_empty() {
            "-".to_string()
        } else {
            let ratios: Vec<f64> = detail.practice_coverage.iter().map(|c| c.ratio).collect();
            score(ratios.iter().sum::<f64>() / ratios.len() as f64)
        };
        table.row(vec![
            objective.to_string(),
            format!("{}/{}", p.adopted.len(), p.required.len()),
            practices,
            score(detail.score),
        ]);
    }
    table.render(&mut out);

    out.push('\n');
    let _ = writeln!(out, "{}", style.heading("GAPS"));
    let mut any = false;
    for (objective, detail) in &report.per_objective {
        let mut lines = Vec::new();
        for p in &detail.principle_coverage.missing {
            lines.push(format!("missing principle {p} [suspect]"));
        }
        for c in &detail.practice_coverage {
            if c.missing.is_empty() {
                continue;
            }
            let unrealized = report.suspect_flags.iter().any(|f| {
                f.code == SuspectCode::UnrealizedPrinciple
                    && f.subject == c.subject
                    && &f.context == objective
            });
            let suffix = if unrealized {
                " [suspect: unrealized]"
            } else {
                ""
            };
            lines.push(format!(
                "{}: missing practices {}{suffix}",
                c.subject,
                join(&c.missing)
            ));
        }
        if !lines.is_empty() {
            any = true;
            let _ = writeln!(out, "  {objective}");
            for line in lines {
                let _ = writeln!(out, "    {line}");
            }
        }
    }
    if !any {
        out.push_str("  none\n");
    }
    out
}

fn attainment_table(
    label: &str,
    details: &std::collections::BTreeMap<ElementId, AttainmentDetail>,
    out: &mut String,
) {
    let mut table = Table::new([label, "ATTAINMENT", "EVIDENCE"]);
    for (id, d) in details {
        table.row(vec![
            id.to_string(),
            d.attainment.to_string(),
            score(d.evidence_coverage),
        ]);
    }
    table.render(out);
}

pub fn render_attainment(report: &AttainmentReport, style: Style) -> String {
    let title = match report.kind {
        AssessmentKind::Capability => "Capability",
        AssessmentKind::Effectiveness => "Effectiveness",
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}",
        style.heading(&format!(
            "{title} of {} using method {}",
            report.organization, report.method
        ))
    );
    let _ = writeln!(out, "Overall attainment: {}", report.overall);
    let flags = report.adequacy_context.suspect_flags.len();
    if report.qualified {
        let _ = writeln!(
            out,
            "Adequacy: {} (suspect, {flags} flag(s)); results are qualified",
            score(report.adequacy_context.overall_score)
        );
    } else {
        let _ = writeln!(
            out,
            "Adequacy: {}",
            score(report.adequacy_context.overall_score)
        );
    }

    out.push('\n');
    attainment_table("OBJECTIVE", &report.per_objective, &mut out);
    out.push('\n');
    attainment_table("PRINCIPLE", &report.per_principle, &mut out);
    out.push('\n');
    attainment_table("PRACTICE", &report.per_practice, &mut out);

    out.push('\n');
    let _ = writeln!(out, "{}", style.heading("GAPS"));
    let mut lines = Vec::new();
    for (layer, details) in [
        ("objective", &report.per_objective),
        ("principle", &report.per_principle),
        ("practice", &report.per_practice),
    ] {
        for (id, d) in details {
            if d.attainment == Attainment::Unassessed {
                lines.push(format!("{layer} {id}: unassessed"));
            }
        }
    }
    for (id, d) in &report.per_practice {
        let unobserved: BTreeSet<ElementId> = d
            .contributing
            .iter()
            .filter(|(_, a)| !a.is_assessed())
            .map(|(i, _)| i.clone())
            .collect();
        if !unobserved.is_empty() {
            lines.push(format!(
                "practice {id}: unobserved indicators {}",
                join(&unobserved)
            ));
        }
    }
    for f in &report.adequacy_context.suspect_flags {
        lines.push(format!(
            "suspect adequacy: {} {} (objective {})",
            f.code.as_str(),
            f.subject,
            f.context
        ));
    }
    if lines.is_empty() {
        out.push_str("  none\n");
    }
    for line in lines {
        let _ = writeln!(out, "  {line}");
    }

    if !report.notes.is_empty() {
        out.push('\n');
        let _ = writeln!(out, "{}", style.heading("NOTES"));
        for note in &report.notes {
            let _ = writeln!(out, "  {note}");
        }
    }
    out
}

pub fn render_comparison(table: &ComparisonTable, style: Style) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}",
        style.heading(&format!(
            "Adequacy comparison against {} {}",
            table.framework.name, table.framework.version
        ))
    );
    out.push('\n');
    let mut header = vec!["METHOD".to_string(), "OVERALL".to_string()];
    header.extend(table.objectives.iter().map(ElementId::to_string));
    let mut grid = Table::new(header);
    for row in &table.rows {
        let mut cells = vec![row.method.to_string(), score(row.overall_score)];
        cells.extend(
            table
                .objectives
                .iter()
                .map(|o| row.per_objective[o].to_string()),
        );
        grid.row(cells);
    }
    grid.render(&mut out);
    out
}

pub fn render_catalog(framework: &ReferenceFramework, style: Style) -> String {
    let fw = framework.canonical();
    let index = LinkIndex::new(&fw);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{}",
        style.heading(&format!("{} {}", fw.metadata.name, fw.metadata.version))
    );
    let _ = writeln!(
        out,
        "{} objectives, {} principles, {} practices, {} indicators",
        fw.objectives.len(),
        fw.principles.len(),
        fw.practices.len(),
        fw.indicators.len()
    );

    let sections = [
        (
            "OBJECTIVES",
            &fw.objectives,
            opp_core::model::LinkKind::ObjectivePrinciple,
        ),
        (
            "PRINCIPLES",
            &fw.principles,
            opp_core::model::LinkKind::PrinciplePractice,
        ),
        (
            "PRACTICES",
            &fw.practices,
            opp_core::model::LinkKind::PracticeIndicator,
        ),
    ];
    for (title, elements, kind) in sections {
        out.push('\n');
        let _ = writeln!(out, "{}", style.heading(title));
        for e in elements {
            let _ = writeln!(out, "  {}  {}", e.id, e.name);
            let children = index.children(kind, &e.id);
            if !children.is_empty() {
                let _ = writeln!(out, "    -> {}", join(children));
            }
        }
    }

    out.push('\n');
    let _ = writeln!(out, "{}", style.heading("INDICATORS"));
    let mut table = Table::new(["  ID", "CATEGORY", "NAME"]);
    for i in &fw.indicators {
        table.row(vec![
            format!("  {}", i.id),
            i.category.to_string(),
            i.name.clone(),
        ]);
    }
    table.render(&mut out);
    out
}
