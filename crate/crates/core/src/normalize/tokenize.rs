use std::sync::OnceLock;

use regex::Regex;

use super::TokenSequence;

fn token_pattern() -> &'static Regex {
    static PATTERN: OnceLock<Regex> = OnceLock::new();
    PATTERN.get_or_init(|| {
        Regex::new(
            r#"(?x)
              (?P<url>(?i:https?://|www\.)\S+)
            | (?P<mention>@\w+)
            | (?P<hashtag>\#\w+)
            | (?P<emoticon>
                  <3
                | [<>]?[:;=][\-o\*']?[\)\]\(\[dDpP/\\\}\{@\|]
                | [\)\]\(\[/\\\}\{\|][\-o\*']?[:;=][<>]?
              )
            | (?P<slang>(?i:'(?:bout|til|cause|em))\b)
            | (?P<word>\w+(?:'\w+)*)
            | (?P<ellipsis>\.\.+)
            | (?P<emoji>\p{Extended_Pictographic}(?:[\x{FE0F}\x{1F3FB}-\x{1F3FF}]|\x{200D}\p{Extended_Pictographic})*)
            | (?P<other>\S)
            "#,
        )
        .expect("token pattern compiles")
    })
}

/// Splits a tweet into lowercase tokens.
///
/// URLs, @-mentions, #-hashtags, emoticons and emoji stay whole. Words are split on punctuation,
/// and English clitics are separated the way Treebank-style tokenizers do (`we're` -> `we 're`,
/// `don't` -> `do n't`).
pub fn tokenize(raw: &str) -> TokenSequence {
    let text = raw.replace(['\u{2019}', '\u{2018}'], "'");
    let mut tokens = Vec::new();
    for caps in token_pattern().captures_iter(&text) {
        if let Some(url) = caps.name("url") {
            tokens.push(trim_url(url.as_str()).to_lowercase());
            let tail = &url.as_str()[trim_url(url.as_str()).len()..];
            tokens.extend(tail.chars().map(|c| c.to_string()));
        } else if let Some(word) = caps.name("word") {
            split_clitics(&word.as_str().to_lowercase(), &mut tokens);
        } else {
            tokens.push(caps[0].to_lowercase());
        }
    }
    TokenSequence::new(tokens)
}

/// Drops sentence punctuation glued to the end of a URL.
fn trim_url(url: &str) -> &str {
    url.trim_end_matches(['.', ',', '!', '?', ';', ':', ')', ']', '}', '"', '\'', '\u{2026}'])
}

fn split_clitics(word: &str, out: &mut Vec<String>) {
    if let Some(stem) = word.strip_suffix("n't").filter(|s| !s.is_empty() && !s.contains('\'')) {
        let stem = match stem {
            "wo" => "will",
            "ca" => "can",
            "sha" => "shall",
            other => other,
        };
        out.push(stem.to_owned());
        out.push("n't".to_owned());
        return;
    }
    if let Some(pos) = word.rfind('\'') {
        let (head, clitic) = word.split_at(pos);
        if matches!(clitic, "'ll" | "'d" | "'re" | "'ve" | "'s" | "'m") && !head.is_empty() {
            split_clitics(head, out);
            out.push(clitic.to_owned());
            return;
        }
    }
    out.push(word.to_owned());
}
