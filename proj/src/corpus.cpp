#include "stylo/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

#include "stylo/common.hpp"
#include "stylo/rng.hpp"
#include "stylo/textproc.hpp"

namespace stylo {

namespace {

using ordered_json = nlohmann::ordered_json;

bool parse_fluency(const ordered_json& v, Fluency& out) {
    if (v.is_string()) {
        if (v.get<std::string>() != "native") return false;
        out = Fluency{true, 0};
        return true;
    }
    if (v.is_number_integer()) {
        const int level = v.get<int>();
        if (level < 0 || level > 5) return false;
        out = Fluency{false, level};
        return true;
    }
    return false;
}

bool parse_string_array(const ordered_json& v, std::vector<std::string>& out,
                        bool allow_empty_items = false) {
    if (!v.is_array()) return false;
    out.clear();
    for (const auto& item : v) {
        if (!item.is_string()) return false;
        std::string s = item.get<std::string>();
        if (s.empty() && !allow_empty_items) return false;
        out.push_back(std::move(s));
    }
    return true;
}

std::string parse_profile(const ordered_json& rec, UserProfile& p) {
    if (!rec.contains("user") || !rec["user"].is_string() || rec["user"].get<std::string>().empty())
        return "profile record missing string field 'user'";
    p.user_id = rec["user"].get<std::string>();
    if (!rec.contains("native") || !parse_string_array(rec["native"], p.native_languages))
        return "profile record needs 'native' as a non-empty array of language codes";
    if (p.native_languages.empty()) return "profile record has empty 'native' list";
    std::sort(p.native_languages.begin(), p.native_languages.end());
    p.native_languages.erase(std::unique(p.native_languages.begin(), p.native_languages.end()),
                             p.native_languages.end());
    if (!rec.contains("english") || !parse_fluency(rec["english"], p.english_fluency))
        return "profile record needs 'english' as 0-5 or \"native\"";
    return "";
}

std::string parse_comment(const ordered_json& rec, Comment& c) {
    auto need_string = [&](const char* key, std::string& dst, bool allow_empty) -> bool {
        if (!rec.contains(key) || !rec[key].is_string()) return false;
        dst = rec[key].get<std::string>();
        return allow_empty || !dst.empty();
    };
    if (!need_string("id", c.id, false)) return "comment record missing string field 'id'";
    if (!need_string("user", c.user, false)) return "comment record missing string field 'user'";
    if (!need_string("label", c.label, false)) return "comment record missing string field 'label'";
    if (!rec.contains("fluency") || !parse_fluency(rec["fluency"], c.fluency))
        return "comment record needs 'fluency' as 0-5 or \"native\"";
    if (!need_string("text", c.text, true)) return "comment record missing string field 'text'";
    if (rec.contains("tokens") && !parse_string_array(rec["tokens"], c.tokens))
        return "comment field 'tokens' must be an array of non-empty strings";
    if (rec.contains("pos") && !parse_string_array(rec["pos"], c.pos_tags))
        return "comment field 'pos' must be an array of non-empty strings";
    if (!c.tokens.empty() && !c.pos_tags.empty() && c.tokens.size() != c.pos_tags.size())
        return "comment 'tokens' and 'pos' lengths differ";
    return "";
}

ordered_json fluency_json(const Fluency& f) {
    if (f.native) return "native";
    return f.level;
}

}  // namespace

Corpus parse_corpus(std::string_view text, LoadReport* report) {
    LoadReport local;
    LoadReport& rep = report ? *report : local;
    rep = LoadReport{};

    Corpus corpus;
    std::unordered_set<std::string> seen_comment_ids;
    std::unordered_set<std::string> seen_users;

    const auto lines = split(text, '\n');
    bool header_seen = false;
    std::size_t records = 0;

    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const std::string& line = lines[ln];
        if (line.empty()) continue;
        const ordered_json rec = ordered_json::parse(line, nullptr, false);

        if (!header_seen) {
            if (rec.is_discarded() || !rec.is_object() || rec.value("format", "") != "stylo-corpus" ||
                rec.value("version", 0) != 1)
                throw ValidationError("line 1: missing or invalid corpus header "
                                      "{\"format\":\"stylo-corpus\",\"version\":1}");
            header_seen = true;
            continue;
        }

        ++records;
        if (rec.is_discarded() || !rec.is_object()) {
            rep.errors.push_back({ln + 1, "malformed JSON"});
            continue;
        }

        if (rec.contains("native")) {
            UserProfile p;
            if (std::string err = parse_profile(rec, p); !err.empty()) {
                rep.errors.push_back({ln + 1, err});
                continue;
            }
            if (!seen_users.insert(p.user_id).second) {
                rep.errors.push_back({ln + 1, "duplicate profile for user '" + p.user_id + "'"});
                continue;
            }
            corpus.profiles.push_back(std::move(p));
            ++rep.accepted_profiles;
        } else if (rec.contains("id")) {
            Comment c;
            if (std::string err = parse_comment(rec, c); !err.empty()) {
                rep.errors.push_back({ln + 1, err});
                continue;
            }
            if (!seen_comment_ids.insert(c.id).second) {
                rep.errors.push_back({ln + 1, "duplicate comment id '" + c.id + "'"});
                continue;
            }
            corpus.comments.push_back(std::move(c));
            ++rep.accepted_comments;
        } else {
            rep.errors.push_back({ln + 1, "unrecognized record (neither profile nor comment)"});
        }
    }

    if (!header_seen && (records > 0 || !text.empty()))
        throw ValidationError("line 1: missing corpus header");
    if (records > 0 && rep.errors.size() * 2 > records)
        throw ValidationError("corpus rejected: " + std::to_string(rep.errors.size()) + " of " +
                              std::to_string(records) + " records are invalid (error rate > 50%)");
    return corpus;
}

Corpus load_corpus(const std::string& path, LoadReport* report) {
    return parse_corpus(read_file(path), report);
}

std::string render_corpus(const Corpus& corpus) {
    std::string out = "{\"format\":\"stylo-corpus\",\"version\":1}\n";
    for (const UserProfile& p : corpus.profiles) {
        ordered_json rec;
        rec["user"] = p.user_id;
        rec["native"] = p.native_languages;
        rec["english"] = fluency_json(p.english_fluency);
        out += rec.dump();
        out.push_back('\n');
    }
    for (const Comment& c : corpus.comments) {
        ordered_json rec;
        rec["id"] = c.id;
        rec["user"] = c.user;
        rec["label"] = c.label;
        rec["fluency"] = fluency_json(c.fluency);
        rec["text"] = c.text;
        if (!c.tokens.empty()) rec["tokens"] = c.tokens;
        if (!c.pos_tags.empty()) rec["pos"] = c.pos_tags;
        out += rec.dump();
        out.push_back('\n');
    }
    return out;
}

void write_corpus(const Corpus& corpus, const std::string& path) {
    write_file(path, render_corpus(corpus));
}

namespace {

bool is_english_variant(const std::string& lang) {
    return lang == "en" || lang.rfind("en-", 0) == 0;
}

}  // namespace

std::vector<UserProfile> filter_users(const std::vector<UserProfile>& profiles) {
    if (profiles.empty()) throw ValidationError("filter_users: no profiles given");

    std::vector<const UserProfile*> eligible;
    for (const UserProfile& p : profiles) {
        if (p.native_languages.size() != 1) continue;  // multi-native (or none) excluded
        const std::string& lang = p.native_languages.front();
        if (is_english_variant(lang) && lang != "en-US") continue;
        eligible.push_back(&p);
    }

    std::map<std::string, std::size_t> users_per_language;
    for (const UserProfile* p : eligible) ++users_per_language[p->native_languages.front()];
    if (users_per_language.size() < 2)
        throw ValidationError("filter_users: need at least 2 distinct native languages, got " +
                              std::to_string(users_per_language.size()));

    // rank by user count, ties by language code
    std::vector<std::pair<std::string, std::size_t>> ranked(users_per_language.begin(),
                                                            users_per_language.end());
    std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    std::set<std::string> kept_languages;
    for (std::size_t i = 0; i < ranked.size() && i < 20; ++i) kept_languages.insert(ranked[i].first);

    std::vector<UserProfile> out;
    for (const UserProfile* p : eligible)
        if (kept_languages.count(p->native_languages.front())) out.push_back(*p);
    return out;
}

std::vector<Comment> restrict_to_users(const std::vector<Comment>& comments,
                                       const std::vector<UserProfile>& profiles) {
    std::unordered_set<std::string> users;
    for (const UserProfile& p : profiles) users.insert(p.user_id);
    std::vector<Comment> out;
    for (const Comment& c : comments)
        if (users.count(c.user)) out.push_back(c);
    return out;
}

std::vector<Comment> filter_comments(const std::vector<Comment>& comments, int min_tokens) {
    std::vector<Comment> out;
    for (const Comment& c : comments) {
        const std::size_t n = c.tokens.empty() ? tokenize(c.text).size() : c.tokens.size();
        if (n >= static_cast<std::size_t>(min_tokens)) out.push_back(c);
    }
    return out;
}

std::vector<Comment> balance_classes(const std::vector<Comment>& comments, std::uint64_t seed,
                                     const std::vector<std::string>& expected_categories) {
    std::map<std::string, std::vector<std::size_t>> by_label;
    if (expected_categories.empty()) {
        for (std::size_t i = 0; i < comments.size(); ++i) by_label[comments[i].label].push_back(i);
    } else {
        for (const std::string& cat : expected_categories) by_label[cat];
        for (std::size_t i = 0; i < comments.size(); ++i) {
            auto it = by_label.find(comments[i].label);
            if (it != by_label.end()) it->second.push_back(i);
        }
    }
    if (by_label.size() < 2) throw ValidationError("balance_classes: need at least 2 categories");

    std::size_t min_count = std::size_t(-1);
    for (const auto& [cat, idxs] : by_label) {
        if (idxs.empty()) throw ValidationError("balance_classes: category '" + cat + "' has no comments");
        min_count = std::min(min_count, idxs.size());
    }

    std::vector<char> selected(comments.size(), 0);
    for (const auto& [cat, idxs] : by_label) {
        std::vector<std::size_t> pool = idxs;
        Rng rng(derive_seed(seed, "balance:" + cat));
        rng.shuffle(pool);
        for (std::size_t i = 0; i < min_count; ++i) selected[pool[i]] = 1;
    }

    std::vector<Comment> out;
    out.reserve(min_count * by_label.size());
    for (std::size_t i = 0; i < comments.size(); ++i)
        if (selected[i]) out.push_back(comments[i]);
    return out;
}

DatasetSplit split_dataset(const std::vector<Comment>& comments, std::array<double, 3> ratios,
                           std::uint64_t seed) {
    const double sum = ratios[0] + ratios[1] + ratios[2];
    if (std::abs(sum - 1.0) > 1e-9)
        throw ValidationError("split_dataset: ratios must sum to 1");

    std::map<std::string, std::vector<std::size_t>> by_label;
    for (std::size_t i = 0; i < comments.size(); ++i) by_label[comments[i].label].push_back(i);

    DatasetSplit split;
    split.seed = seed;
    std::vector<int> part(comments.size(), 2);  // default test

    for (const auto& [cat, idxs] : by_label) {
        const std::size_t n = idxs.size();
        if (n < 3)
            throw ValidationError("split_dataset: category '" + cat + "' has only " +
                                  std::to_string(n) + " comments (need at least 3)");
        // long double + epsilon so exact fractions are not lost to rounding
        const auto take = [n](double r) {
            return static_cast<std::size_t>(
                std::floor(static_cast<long double>(r) * static_cast<long double>(n) + 1e-9L));
        };
        const std::size_t n_train = take(ratios[0]);
        const std::size_t n_dev = take(ratios[1]);

        std::vector<std::size_t> pool = idxs;
        Rng rng(derive_seed(seed, "split:" + cat));
        rng.shuffle(pool);
        for (std::size_t i = 0; i < pool.size(); ++i)
            part[pool[i]] = i < n_train ? 0 : (i < n_train + n_dev ? 1 : 2);
        split.category_counts[cat] = {n_train, n_dev, n - n_train - n_dev};
    }

    for (std::size_t i = 0; i < comments.size(); ++i) {
        if (part[i] == 0) split.train.push_back(comments[i]);
        else if (part[i] == 1) split.dev.push_back(comments[i]);
        else split.test.push_back(comments[i]);
    }
    return split;
}

}  // namespace stylo
