use crate::text::Token;

/// Capital letters only, at least two of them.
pub fn is_acronym(surface: &str) -> bool {
    surface.chars().count() >= 2 && surface.chars().all(|c| c.is_alphabetic() && c.is_uppercase())
}

/// True when `acronym` is written in capitals and spells the initial letters
/// of the words in `window`, one letter per word.
pub fn acronym_matches(acronym: &str, window: &[Token]) -> bool {
    if window.len() < 2 || !is_acronym(acronym) || acronym.chars().count() != window.len() {
        return false;
    }
    acronym.chars().zip(window).all(|(letter, token)| {
        token
            .normalized
            .chars()
            .next()
            .is_some_and(|first| letter.to_lowercase().eq(first.to_lowercase()))
    })
}
