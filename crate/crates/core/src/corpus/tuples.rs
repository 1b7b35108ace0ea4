use super::{Dialog, DialogTuple};

/// One tuple per brand reply whose parent is a customer tweet.
///
/// The context is every turn before the question in dialog order, so in branching threads it
/// may include sibling replies. Support-to-support follow-ups produce no tuple.
pub fn extract_dialog_tuples(dialog: &Dialog) -> Vec<DialogTuple> {
    let turns = &dialog.turns;
    let mut out = Vec::new();
    for (answer_idx, answer) in turns.iter().enumerate() {
        if answer.inbound || answer.author_id != dialog.brand {
            continue;
        }
        let Some(parent) = answer.in_response_to else {
            continue;
        };
        let Some(question_idx) = turns[..answer_idx].iter().position(|t| t.tweet_id == parent) else {
            continue;
        };
        let question = &turns[question_idx];
        if !question.inbound {
            continue;
        }
        let context = turns[..question_idx]
            .iter()
            .map(|t| t.text.as_str())
            .collect::<Vec<_>>()
            .join(" ");
        out.push(DialogTuple {
            dialog_id: dialog.dialog_id,
            turn_index: answer_idx,
            context,
            question: question.text.clone(),
            answer: answer.text.clone(),
            answer_time: answer.created_at,
        });
    }
    out
}
