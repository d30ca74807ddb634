//! Two small bundled datasets so every experiment runs offline. Their human
//! scores were assigned by hand for testing and are not published data.

use crate::evaluation::Dataset;

pub const CPU: &str = include_str!("../resources/fixtures/cpu.json");
pub const OPERATING_SYSTEM: &str = include_str!("../resources/fixtures/os.json");

pub fn datasets() -> Vec<Dataset> {
    [(CPU, "fixture cpu.json"), (OPERATING_SYSTEM, "fixture os.json")]
        .into_iter()
        .map(|(text, origin)| Dataset::from_json(text, origin).expect("bundled fixture is valid"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shape() {
        let sets = datasets();
        assert_eq!(sets.len(), 2);
        assert_eq!(sets.iter().map(|d| d.answers.len()).sum::<usize>(), 12);
        assert!(sets
            .iter()
            .all(|d| d.note.as_deref().is_some_and(|n| n.contains("Fixture"))));
    }
}
