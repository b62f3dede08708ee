//! Tokenization, number verbalization and mixed-token splitting.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TokenKind {
    Word,
    Number,
    Punct,
    Mixed,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Token {
    pub text: String,
    pub kind: TokenKind,
    pub sentence: usize,
    /// Position of the token within its sentence.
    pub index: usize,
}

fn classify(text: &str) -> TokenKind {
    let letters = text.chars().any(char::is_alphabetic);
    let digits = text.chars().any(|c| c.is_ascii_digit());
    if !letters && !digits {
        TokenKind::Punct
    } else if letters && !digits {
        TokenKind::Word
    } else if !letters && text.chars().all(|c| c.is_ascii_digit() || c == ',' || c == '.') {
        TokenKind::Number
    } else {
        TokenKind::Mixed
    }
}

pub fn is_terminator(punct: &str) -> bool {
    punct.contains(['.', '?', '!']) || punct.contains('…')
}

/// Splits on whitespace and peels leading and trailing non-alphanumeric runs
/// off each chunk as separate punctuation tokens.
pub fn tokenize(input: &str) -> Vec<Token> {
    let mut pieces: Vec<(String, TokenKind)> = Vec::new();
    for chunk in input.split_whitespace() {
        let first = chunk.find(char::is_alphanumeric);
        let Some(first) = first else {
            pieces.push((chunk.to_string(), TokenKind::Punct));
            continue;
        };
        let last = chunk
            .char_indices()
            .filter(|(_, c)| c.is_alphanumeric())
            .map(|(i, c)| i + c.len_utf8())
            .next_back()
            .unwrap();
        if first > 0 {
            pieces.push((chunk[..first].to_string(), TokenKind::Punct));
        }
        let core = &chunk[first..last];
        pieces.push((core.to_string(), classify(core)));
        if last < chunk.len() {
            pieces.push((chunk[last..].to_string(), TokenKind::Punct));
        }
    }
    let mut tokens = Vec::with_capacity(pieces.len());
    let (mut sentence, mut index) = (0, 0);
    for (text, kind) in pieces {
        let ends = kind == TokenKind::Punct && is_terminator(&text);
        tokens.push(Token {
            text,
            kind,
            sentence,
            index,
        });
        index += 1;
        if ends {
            sentence += 1;
            index = 0;
        }
    }
    tokens
}

const ONES: [&str; 20] = [
    "zero", "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten",
    "eleven", "twelve", "thirteen", "fourteen", "fifteen", "sixteen", "seventeen", "eighteen",
    "nineteen",
];
const TENS: [&str; 10] = [
    "", "", "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety",
];
const SCALES: [&str; 7] = [
    "",
    "thousand",
    "million",
    "billion",
    "trillion",
    "quadrillion",
    "quintillion",
];

fn below_hundred(n: u64, out: &mut Vec<String>) {
    if n < 20 {
        out.push(ONES[n as usize].to_string());
    } else if n.is_multiple_of(10) {
        out.push(TENS[(n / 10) as usize].to_string());
    } else {
        out.push(format!("{}-{}", TENS[(n / 10) as usize], ONES[(n % 10) as usize]));
    }
}

fn below_thousand(n: u64, out: &mut Vec<String>) {
    let (h, rest) = (n / 100, n % 100);
    if h > 0 {
        out.push(ONES[h as usize].to_string());
        out.push("hundred".into());
        if rest > 0 {
            out.push("and".into());
        }
    }
    if rest > 0 {
        below_hundred(rest, out);
    }
}

/// British-style cardinal: 1024 is "one thousand and twenty-four".
pub fn cardinal(n: u64) -> Vec<String> {
    if n == 0 {
        return vec!["zero".into()];
    }
    let mut groups = Vec::new();
    let mut m = n;
    while m > 0 {
        groups.push(m % 1000);
        m /= 1000;
    }
    let mut out = Vec::new();
    for (scale, &g) in groups.iter().enumerate().rev() {
        if g == 0 {
            continue;
        }
        if scale == 0 && g < 100 && !out.is_empty() {
            out.push("and".into());
        }
        below_thousand(g, &mut out);
        if scale > 0 {
            out.push(SCALES[scale].to_string());
        }
    }
    out
}

fn digit_word(c: char) -> Option<&'static str> {
    c.to_digit(10).map(|d| ONES[d as usize])
}

fn digits_one_by_one(text: &str) -> Vec<String> {
    text.chars()
        .filter_map(|c| match c {
            '.' => Some("point"),
            _ => digit_word(c),
        })
        .map(str::to_string)
        .collect()
}

/// Integer part with commas only at thousands boundaries.
fn parse_grouped(int: &str) -> Option<u64> {
    if int.is_empty() {
        return None;
    }
    if int.contains(',') {
        let groups: Vec<&str> = int.split(',').collect();
        let ok = (1..=3).contains(&groups[0].len())
            && groups[1..].iter().all(|g| g.len() == 3)
            && groups.iter().all(|g| g.chars().all(|c| c.is_ascii_digit()));
        if !ok {
            return None;
        }
    } else if !int.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    int.replace(',', "").parse().ok()
}

/// Verbalizes a number token. A single real number (thousands commas
/// allowed) is read as a cardinal with its fraction digit by digit; anything
/// else is read one digit at a time with "." as "point".
pub fn number_to_words(text: &str) -> Vec<String> {
    let (int, frac) = match text.split_once('.') {
        Some((i, f)) => (i, Some(f)),
        None => (text, None),
    };
    let frac_ok = frac.is_none_or(|f| !f.is_empty() && f.chars().all(|c| c.is_ascii_digit()));
    match parse_grouped(int) {
        Some(n) if frac_ok => {
            let mut out = cardinal(n);
            if let Some(f) = frac {
                out.push("point".into());
                out.extend(digits_one_by_one(f));
            }
            out
        }
        _ => digits_one_by_one(text),
    }
}

fn symbol_word(c: char) -> Option<&'static str> {
    Some(match c {
        '&' => "and",
        '%' => "percent",
        '+' => "plus",
        '@' => "at",
        '=' => "equals",
        _ => return None,
    })
}

/// Breaks a mixed token into alphabetic runs, numeric runs (verbalized) and
/// pronounceable symbols; other punctuation is dropped. The returned words
/// are pronounced back to back with no silence between them.
pub fn split_mixed(text: &str) -> Vec<String> {
    #[derive(PartialEq, Clone, Copy)]
    enum Class {
        Alpha,
        Digit,
        Other,
    }
    let class = |c: char| {
        if c.is_alphabetic() || c == '\'' {
            Class::Alpha
        } else if c.is_ascii_digit() {
            Class::Digit
        } else {
            Class::Other
        }
    };
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let k = class(chars[i]);
        let mut j = i + 1;
        while j < chars.len() && class(chars[j]) == k && k != Class::Other {
            j += 1;
        }
        let run: String = chars[i..j].iter().collect();
        match k {
            Class::Alpha => {
                let run = run.trim_matches('\'');
                if !run.is_empty() {
                    out.push(run.to_string());
                }
            }
            Class::Digit => out.extend(number_to_words(&run)),
            Class::Other => out.extend(symbol_word(chars[i]).map(str::to_string)),
        }
        i = j;
    }
    out
}
