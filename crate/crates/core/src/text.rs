//! Word-level text helpers shared by the content indicators.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

/// Counts non-overlapping occurrences of `phrase` in `haystack` that start and
/// end on word boundaries. Both sides are compared lowercased.
pub fn count_phrase(haystack: &str, phrase: &str) -> usize {
    let phrase = phrase.trim().to_lowercase();
    if phrase.is_empty() {
        return 0;
    }
    let hay = haystack.to_lowercase();
    let mut count = 0;
    let mut from = 0;
    while let Some(pos) = hay[from..].find(&phrase) {
        let start = from + pos;
        let end = start + phrase.len();
        let before_ok = hay[..start]
            .chars()
            .next_back()
            .is_none_or(|c| !is_word_char(c));
        let after_ok = hay[end..].chars().next().is_none_or(|c| !is_word_char(c));
        if before_ok && after_ok {
            count += 1;
            from = end;
        } else {
            from = start + hay[start..].chars().next().map_or(1, char::len_utf8);
        }
    }
    count
}

pub fn contains_phrase(haystack: &str, phrase: &str) -> bool {
    count_phrase(haystack, phrase) > 0
}

/// Lowercased alphabetic words of at least `min_len` characters.
pub fn words(text: &str, min_len: usize) -> impl Iterator<Item = String> + '_ {
    text.split(|c: char| !c.is_alphabetic() && c != '\'')
        .map(|w| w.trim_matches('\''))
        .filter(move |w| w.chars().count() >= min_len && !w.contains('\''))
        .map(str::to_lowercase)
}

/// True when `a` and `b` differ by exactly one insertion, deletion,
/// substitution or adjacent transposition.
pub fn one_edit_apart(a: &str, b: &str) -> bool {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    if a == b {
        return false;
    }
    let (la, lb) = (a.len(), b.len());
    if la.abs_diff(lb) > 1 {
        return false;
    }
    let prefix = a.iter().zip(&b).take_while(|(x, y)| x == y).count();
    if la == lb {
        let rest_equal = |from: usize| a[from..] == b[from..];
        // substitution
        if rest_equal(prefix + 1) {
            return true;
        }
        // transposition
        return prefix + 1 < la
            && a[prefix] == b[prefix + 1]
            && a[prefix + 1] == b[prefix]
            && rest_equal(prefix + 2);
    }
    let (long, short) = if la > lb { (&a, &b) } else { (&b, &a) };
    long[prefix + 1..] == short[prefix..]
}

/// A dictionary for misspelling detection. A word counts as misspelled when it
/// is unknown but one edit away from a known word of at least four letters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Dictionary {
    words: BTreeSet<String>,
}

impl Dictionary {
    pub fn new<I, S>(words: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        Self {
            words: words
                .into_iter()
                .map(|w| w.as_ref().trim().to_lowercase())
                .filter(|w| !w.is_empty())
                .collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.words.iter().map(String::as_str)
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    /// Known directly or after stripping a common inflection.
    pub fn knows(&self, word: &str) -> bool {
        const SUFFIXES: [&str; 7] = ["s", "es", "ed", "d", "ing", "ly", "er"];
        self.contains(word)
            || SUFFIXES.iter().any(|suf| {
                word.strip_suffix(suf)
                    .is_some_and(|stem| stem.len() >= 3 && self.contains(stem))
            })
    }

    pub fn is_misspelling(&self, word: &str) -> bool {
        if self.knows(word) {
            return false;
        }
        let n = word.chars().count();
        self.words.iter().any(|w| {
            let m = w.chars().count();
            m >= 4 && m.abs_diff(n) <= 1 && one_edit_apart(w, word)
        })
    }

    /// (misspelled, total) word counts for `text`, using words of three letters or more.
    pub fn misspelling_counts(&self, text: &str) -> (usize, usize) {
        let mut bad = 0;
        let mut total = 0;
        for w in words(text, 3) {
            total += 1;
            if self.is_misspelling(&w) {
                bad += 1;
            }
        }
        (bad, total)
    }
}

/// Folds look-alike characters onto the Latin letters they imitate:
/// digit substitutions (`0`→`o`, `1`→`l`), `rn`→`m`, `vv`→`w`, and common
/// Cyrillic/Greek homoglyphs.
pub fn confusable_skeleton(s: &str) -> String {
    let mut mapped = String::with_capacity(s.len());
    for c in s.chars().flat_map(char::to_lowercase) {
        mapped.push(match c {
            '0' | 'о' | 'ο' | 'օ' => 'o',
            '1' | 'ӏ' | 'ı' | 'і' | '|' => 'l',
            '3' => 'e',
            '5' | 'ѕ' => 's',
            'а' | 'α' => 'a',
            'е' | 'ε' => 'e',
            'р' | 'ρ' => 'p',
            'с' | 'ϲ' => 'c',
            'у' | 'γ' => 'y',
            'х' | 'χ' => 'x',
            'ј' => 'j',
            'ԁ' => 'd',
            'ɡ' => 'g',
            'ν' => 'v',
            'к' | 'κ' => 'k',
            'м' => 'm',
            'т' | 'τ' => 't',
            'н' => 'h',
            'в' => 'b',
            'ԛ' => 'q',
            'ѡ' | 'ω' => 'w',
            other => other,
        });
    }
    // 'i' and 'l' are interchangeable in most fonts once '1' has been folded
    let mapped = mapped.replace('i', "l");
    mapped.replace("rn", "m").replace("vv", "w")
}
