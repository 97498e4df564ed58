#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace stylo {

// Sentinel that replaces every non-ASCII codepoint during normalization.
// ASCII SUB cannot occur in ordinary talk text, so downstream character
// n-grams see one unambiguous byte per foreign codepoint.
inline constexpr char kNonAsciiSentinel = '\x1a';

// Word tokens are maximal runs of letters/digits with apostrophes kept when
// they sit between two word characters ("don't" is one token). Every other
// non-whitespace codepoint is a single-codepoint token. Codepoints >= 0x80
// count as word characters; normalization later folds them to the sentinel.
std::vector<std::string> tokenize(std::string_view text);

// Splits after '.', '!' or '?' when followed by whitespace or end of text.
// Whitespace-only fragments are dropped; text with no terminator is one
// sentence; empty text has none.
std::vector<std::string> split_sentences(std::string_view text);

class Tagger {
public:
    virtual ~Tagger() = default;
    virtual std::string id() const = 0;
    // One Penn Treebank tag per token.
    virtual std::vector<std::string> tag(const std::vector<std::string>& tokens) const = 0;
};

// Deterministic lexicon + suffix-rule tagger backed by the pinned data files
// (data/tagger_lexicon.tsv, data/tagger_suffixes.tsv). Lookup order: exact
// form, lowercased form, punctuation map, digit shape, suffix rules, then
// NNP for capitalized unknowns and NN otherwise.
class LexiconTagger : public Tagger {
public:
    LexiconTagger(const std::string& lexicon_path, const std::string& suffix_path);

    std::string id() const override { return "lexicon"; }
    std::vector<std::string> tag(const std::vector<std::string>& tokens) const override;
    std::string tag_one(std::string_view token) const;

private:
    std::unordered_map<std::string, std::string> lexicon_;
    std::vector<std::pair<std::string, std::string>> suffixes_;  // longest first
};

// Resolves a tagger id ("lexicon" is the only built-in). Unknown id is a
// configuration error.
std::shared_ptr<const Tagger> make_tagger(const std::string& id, const std::string& data_dir);

// Validates the length contract around Tagger::tag.
std::vector<std::string> pos_tag(const std::vector<std::string>& tokens, const Tagger& tagger);

struct TokenizedComment {
    std::vector<std::string> tokens;    // proper nouns replaced, sentinel applied
    std::vector<std::string> pos_tags;  // unchanged from input
    int sentence_count = 0;             // counted on normalized_text
    std::string normalized_text;        // original spacing kept, ASCII only
};

// Applies the two corpus-level replacements: tokens tagged NNP/NNPS become
// the literal strings "NNP"/"NNPS" (in the token stream and in the text),
// and every non-ASCII codepoint becomes the sentinel. The character stream
// fed to char n-grams is normalized_text, so both replacements reach it.
TokenizedComment normalize(const std::vector<std::string>& tokens,
                           const std::vector<std::string>& pos_tags,
                           std::string_view text);

// Data-dir resolution: explicit argument > STYLO_DATA_DIR env > the
// compiled-in source tree default.
std::string resolve_data_dir(const std::string& explicit_dir = "");

}  // namespace stylo
