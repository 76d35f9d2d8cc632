//! CSV emitters for episode reports, conflict events, and learning curves.

use std::fmt::Write as _;

use riskway_core::hppo::IterationLog;
use riskway_core::safetymetrics::{ConflictEvent, EpisodeReport};

pub const EPISODE_REPORT_HEADER: &str = "episode,avg_speed,lane_changes,collisions,conflicts,heavy_in_conflicts,light_in_conflicts,pcec_joules,mean_adr";

pub const LEARNING_CURVE_HEADER: &str =
    "iteration,mean_return,mean_adr,loss_total,loss_value,entropy_d,entropy_c,lr";

pub const CONFLICT_EVENT_HEADER: &str =
    "episode,time,subject,other,trigger,heavy_involved,pce_joules";

pub fn episode_reports_csv(reports: &[EpisodeReport]) -> String {
    let mut out = String::from(EPISODE_REPORT_HEADER);
    out.push('\n');
    for (i, r) in reports.iter().enumerate() {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            i,
            r.avg_speed,
            r.lane_changes,
            r.collisions,
            r.conflicts,
            r.heavy_in_conflicts,
            r.light_in_conflicts,
            r.pcec_joules,
            r.mean_adr
        );
    }
    out
}

pub fn conflict_events_csv(events: &[(usize, ConflictEvent)]) -> String {
    let mut out = String::from(CONFLICT_EVENT_HEADER);
    out.push('\n');
    for (episode, e) in events {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            episode, e.time, e.pair.0, e.pair.1, e.trigger, e.heavy_involved, e.pce
        );
    }
    out
}

pub fn learning_curve_csv(log: &[IterationLog]) -> String {
    let mut out = String::from(LEARNING_CURVE_HEADER);
    out.push('\n');
    for entry in log {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            entry.iteration,
            entry.mean_return,
            entry.mean_adr,
            entry.loss_total,
            entry.loss_value,
            entry.entropy_d,
            entry.entropy_c,
            entry.lr
        );
    }
    out
}
