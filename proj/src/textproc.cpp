#include "stylo/textproc.hpp"

#include <algorithm>
#include <cstdlib>

#include "stylo/common.hpp"

namespace stylo {

namespace {

constexpr std::uint64_t kLexiconChecksum = 0xeae020100579a0c5ull;
constexpr std::uint64_t kSuffixesChecksum = 0xd575da67bb746e8cull;

bool is_ascii_space(std::uint32_t cp) {
    return cp == ' ' || cp == '\t' || cp == '\n' || cp == '\r' || cp == '\v' || cp == '\f';
}

bool is_word_cp(std::uint32_t cp) {
    if (cp >= 0x80) return true;  // folded to the sentinel later; never split words
    return (cp >= '0' && cp <= '9') || (cp >= 'A' && cp <= 'Z') || (cp >= 'a' && cp <= 'z');
}

// Decodes one UTF-8 codepoint at position i. Malformed or truncated bytes
// decode as one codepoint each (>= 0x80, so they end up as sentinels).
std::uint32_t decode_cp(std::string_view s, std::size_t i, std::size_t& len) {
    const unsigned char b0 = static_cast<unsigned char>(s[i]);
    len = 1;
    if (b0 < 0x80) return b0;
    int extra = 0;
    std::uint32_t cp = 0;
    if ((b0 & 0xe0) == 0xc0) { extra = 1; cp = b0 & 0x1f; }
    else if ((b0 & 0xf0) == 0xe0) { extra = 2; cp = b0 & 0x0f; }
    else if ((b0 & 0xf8) == 0xf0) { extra = 3; cp = b0 & 0x07; }
    else return 0xFFFD;
    if (i + extra >= s.size()) return 0xFFFD;
    for (int k = 1; k <= extra; ++k) {
        const unsigned char b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xc0) != 0x80) return 0xFFFD;
        cp = (cp << 6) | (b & 0x3f);
    }
    len = 1 + extra;
    return cp;
}

// Copies text into out with every non-ASCII codepoint replaced by the
// sentinel, one sentinel per codepoint (runs are not collapsed).
void fold_non_ascii(std::string_view text, std::string& out) {
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t len = 0;
        const std::uint32_t cp = decode_cp(text, i, len);
        if (cp < 0x80) out.push_back(static_cast<char>(cp));
        else out.push_back(kNonAsciiSentinel);
        i += len;
    }
}

std::string fold_token(std::string_view token) {
    std::string out;
    out.reserve(token.size());
    fold_non_ascii(token, out);
    return out;
}

std::string_view trim_ws(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && is_ascii_space(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && is_ascii_space(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::string cur;
    std::size_t i = 0;
    while (i < text.size()) {
        std::size_t len = 0;
        const std::uint32_t cp = decode_cp(text, i, len);
        if (is_word_cp(cp)) {
            cur.append(text.substr(i, len));
            i += len;
            continue;
        }
        if (cp == '\'' && !cur.empty() && i + len < text.size()) {
            std::size_t nlen = 0;
            if (is_word_cp(decode_cp(text, i + len, nlen))) {
                cur.push_back('\'');  // apostrophe inside a word
                i += len;
                continue;
            }
        }
        if (!cur.empty()) {
            out.push_back(std::move(cur));
            cur.clear();
        }
        if (!is_ascii_space(cp)) out.emplace_back(text.substr(i, len));
        i += len;
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

std::vector<std::string> split_sentences(std::string_view text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    auto push = [&](std::size_t end) {
        const std::string_view seg = trim_ws(text.substr(start, end - start));
        if (!seg.empty()) out.emplace_back(seg);
        start = end;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (c == '.' || c == '!' || c == '?') {
            if (i + 1 == text.size() || is_ascii_space(static_cast<unsigned char>(text[i + 1])))
                push(i + 1);
        }
    }
    push(text.size());
    return out;
}

LexiconTagger::LexiconTagger(const std::string& lexicon_path, const std::string& suffix_path) {
    const std::string lex = read_file(lexicon_path);
    if (fnv1a64(lex) != kLexiconChecksum)
        throw ValidationError("tagger lexicon checksum mismatch: " + lexicon_path);
    const std::string suf = read_file(suffix_path);
    if (fnv1a64(suf) != kSuffixesChecksum)
        throw ValidationError("tagger suffix table checksum mismatch: " + suffix_path);

    for (const std::string& line : split(lex, '\n')) {
        if (line.empty()) continue;
        const auto cols = split(line, '\t');
        if (cols.size() != 2 || cols[0].empty() || cols[1].empty())
            throw ValidationError("bad lexicon line: " + line);
        if (!lexicon_.emplace(cols[0], cols[1]).second)
            throw ValidationError("duplicate lexicon entry: " + cols[0]);
    }
    for (const std::string& line : split(suf, '\n')) {
        if (line.empty()) continue;
        const auto cols = split(line, '\t');
        if (cols.size() != 2 || cols[0].empty() || cols[1].empty())
            throw ValidationError("bad suffix line: " + line);
        suffixes_.emplace_back(cols[0], cols[1]);
    }
    // longest suffix wins; lexicographic among equals keeps lookup total
    std::sort(suffixes_.begin(), suffixes_.end(), [](const auto& a, const auto& b) {
        if (a.first.size() != b.first.size()) return a.first.size() > b.first.size();
        return a.first < b.first;
    });
}

std::string LexiconTagger::tag_one(std::string_view token) const {
    if (auto it = lexicon_.find(std::string(token)); it != lexicon_.end()) return it->second;
    const std::string lower = to_lower_ascii(token);
    if (auto it = lexicon_.find(lower); it != lexicon_.end()) return it->second;

    // single punctuation codepoint
    std::size_t len = 0;
    if (!token.empty()) {
        const std::uint32_t cp = decode_cp(token, 0, len);
        if (len == token.size() && !is_word_cp(cp)) {
            switch (cp) {
                case '.': case '!': case '?': return ".";
                case ',': return ",";
                case ';': case ':': return ":";
                case '(': case '[': case '{': return "-LRB-";
                case ')': case ']': case '}': return "-RRB-";
                case '"': case '\'': return "''";
                case '`': return "``";
                case '#': return "#";
                case '$': return "$";
                default: return "SYM";
            }
        }
        if (len == token.size() && cp >= 0x80) return "SYM";
    }

    bool has_digit = false, digit_shape = true;
    for (char c : token) {
        if (c >= '0' && c <= '9') has_digit = true;
        else if (c != '.' && c != ',' && c != '-' && c != '/') digit_shape = false;
    }
    if (has_digit && digit_shape) return "CD";

    for (const auto& [suffix, tag] : suffixes_) {
        if (lower.size() > suffix.size() &&
            lower.compare(lower.size() - suffix.size(), suffix.size(), suffix) == 0)
            return tag;
    }

    if (!token.empty() && token[0] >= 'A' && token[0] <= 'Z') return "NNP";
    return "NN";
}

std::vector<std::string> LexiconTagger::tag(const std::vector<std::string>& tokens) const {
    std::vector<std::string> tags;
    tags.reserve(tokens.size());
    for (const std::string& t : tokens) tags.push_back(tag_one(t));
    return tags;
}

std::shared_ptr<const Tagger> make_tagger(const std::string& id, const std::string& data_dir) {
    if (id == "lexicon")
        return std::make_shared<LexiconTagger>(data_dir + "/tagger_lexicon.tsv",
                                               data_dir + "/tagger_suffixes.tsv");
    throw ValidationError("unknown tagger '" + id + "' (available: lexicon)");
}

std::vector<std::string> pos_tag(const std::vector<std::string>& tokens, const Tagger& tagger) {
    if (tokens.empty()) return {};
    std::vector<std::string> tags = tagger.tag(tokens);
    if (tags.size() != tokens.size())
        throw std::runtime_error("tagger '" + tagger.id() + "' broke the length contract");
    return tags;
}

TokenizedComment normalize(const std::vector<std::string>& tokens,
                           const std::vector<std::string>& pos_tags,
                           std::string_view text) {
    if (tokens.size() != pos_tags.size())
        throw ValidationError("normalize: tokens and pos_tags lengths differ");

    TokenizedComment out;
    out.pos_tags = pos_tags;
    out.tokens.reserve(tokens.size());
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::string& tag = pos_tags[i];
        if (tag == "NNP" || tag == "NNPS") out.tokens.push_back(tag);
        else out.tokens.push_back(fold_token(tokens[i]));
    }

    // Rebuild the character stream with original spacing: walk the text,
    // substituting each proper-noun token span in place. Tokens produced by
    // tokenize() always align; externally supplied tokens that cannot be
    // located fall back to a space-joined reconstruction.
    std::string rebuilt;
    rebuilt.reserve(text.size());
    bool aligned = true;
    std::size_t pos = 0;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (tokens[i].empty()) continue;
        const std::size_t idx = text.find(tokens[i], pos);
        if (idx == std::string_view::npos) {
            aligned = false;
            break;
        }
        fold_non_ascii(text.substr(pos, idx - pos), rebuilt);
        const std::string& tag = pos_tags[i];
        if (tag == "NNP" || tag == "NNPS") rebuilt += tag;
        else fold_non_ascii(tokens[i], rebuilt);
        pos = idx + tokens[i].size();
    }
    if (aligned) {
        fold_non_ascii(text.substr(pos), rebuilt);
        out.normalized_text = std::move(rebuilt);
    } else {
        std::string joined;
        for (std::size_t i = 0; i < out.tokens.size(); ++i) {
            if (i) joined.push_back(' ');
            joined += out.tokens[i];
        }
        out.normalized_text = std::move(joined);
    }

    out.sentence_count = static_cast<int>(split_sentences(out.normalized_text).size());
    return out;
}

std::string resolve_data_dir(const std::string& explicit_dir) {
    if (!explicit_dir.empty()) return explicit_dir;
    if (const char* env = std::getenv("STYLO_DATA_DIR"); env && *env) return env;
    return STYLO_SOURCE_DATA_DIR;
}

}  // namespace stylo
