#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace stylo {

// Self-declared English skill: a 0-5 level or the native marker.
struct Fluency {
    bool native = false;
    int level = 0;  // meaningful only when !native

    bool in_band(int lo, int hi) const { return !native && level >= lo && level <= hi; }
    bool operator==(const Fluency&) const = default;
};

struct UserProfile {
    std::string user_id;
    std::vector<std::string> native_languages;  // sorted unique, non-empty once admitted
    Fluency english_fluency;
};

struct Comment {
    std::string id;
    std::string user;
    std::string label;  // category code: native language, or experiment grouping
    Fluency fluency;
    std::string text;
    std::vector<std::string> tokens;    // empty means absent
    std::vector<std::string> pos_tags;  // empty means absent
};

struct Corpus {
    std::vector<UserProfile> profiles;
    std::vector<Comment> comments;
};

struct RecordError {
    std::size_t line = 0;
    std::string message;
};

struct LoadReport {
    std::size_t accepted_profiles = 0;
    std::size_t accepted_comments = 0;
    std::vector<RecordError> errors;
};

// JSON-lines corpus file. First line must be the header
// {"format":"stylo-corpus","version":1}. Malformed records are collected
// into the report and skipped; the load only fails outright if more than
// half of the records are bad (or the header is).
Corpus parse_corpus(std::string_view text, LoadReport* report = nullptr);
Corpus load_corpus(const std::string& path, LoadReport* report = nullptr);
std::string render_corpus(const Corpus& corpus);
void write_corpus(const Corpus& corpus, const std::string& path);

// User filter: single declared native language, only the en-US code among
// English variants, and only the 20 most frequent languages by distinct
// user count (ties at the cutoff broken by lexicographic language code).
std::vector<UserProfile> filter_users(const std::vector<UserProfile>& profiles);

std::vector<Comment> restrict_to_users(const std::vector<Comment>& comments,
                                       const std::vector<UserProfile>& profiles);

// Keeps comments with at least min_tokens tokens; tokenizes on the fly when
// the record carries no token field.
std::vector<Comment> filter_comments(const std::vector<Comment>& comments, int min_tokens = 20);

// Downsamples every category to the minimum category count, uniformly at
// random without replacement under the seed. Selected comments keep their
// input order. When expected_categories is given, a category with zero
// comments is an error and labels outside the set are dropped.
std::vector<Comment> balance_classes(const std::vector<Comment>& comments, std::uint64_t seed,
                                     const std::vector<std::string>& expected_categories = {});

struct DatasetSplit {
    std::vector<Comment> train, dev, test;
    std::uint64_t seed = 0;
    // category -> {train, dev, test} counts
    std::map<std::string, std::array<std::size_t, 3>> category_counts;
};

// Stratified split: within each category, train takes floor(r0*n), dev takes
// floor(r1*n) and test the remainder. Splits keep input order.
DatasetSplit split_dataset(const std::vector<Comment>& comments,
                           std::array<double, 3> ratios = {0.70, 0.10, 0.20},
                           std::uint64_t seed = 0);

}  // namespace stylo
