#pragma once

// Authorship attribution via detecting points: CIs are built from the
// corpus occupancy profile and the testing set's detecting points
// D_r = A_r / n2 are checked against them.

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "turingci/intervals.hpp"
#include "turingci/profile.hpp"
#include "turingci/rng.hpp"

namespace turingci {

struct TokenizerOptions {
    bool lowercase = true;
    bool strip_punctuation = true;
    bool strip_urls = true;
    bool drop_retweets = true;
};

// Interns words into 1-based ids; shared between corpus and testing set so
// that identical words map to the same id.
class WordTable {
public:
    LetterId intern(std::string word);
    std::size_t size() const { return words_.size(); }
    const std::string& word(LetterId id) const { return words_[id - 1]; }

private:
    std::unordered_map<std::string, LetterId> ids_;
    std::vector<std::string> words_;
};

// Whitespace-split tokens with the preprocessing rules applied: retweet
// lines dropped, URL tokens removed, edge punctuation stripped (interior
// apostrophes and hyphens kept), lowercased.
std::vector<LetterId> tokenize(std::string_view text, const TokenizerOptions& opts,
                               WordTable& table);

struct DetectingPoint {
    std::uint64_t A = 0;  // testing words seen exactly r times in the corpus
    double D = 0.0;       // A / n2
};

// Per testing token (with repetition), counts how often its corpus
// occupancy y falls at each r <= R.
std::vector<DetectingPoint> detecting_points(std::span<const LetterId> corpus,
                                             std::span<const LetterId> testing,
                                             std::uint64_t R);

struct AttributionRow {
    std::uint64_t r = 0;
    double D = 0.0;
    Interval interval;
    bool inside = false;
};

struct AttributionReport {
    std::uint64_t n1 = 0;  // corpus size (words)
    std::uint64_t n2 = 0;  // testing size (words)
    std::uint64_t R = 0;
    CIMethod method = CIMethod::Normal;
    double alpha = 0.05;
    std::vector<AttributionRow> rows;  // r = 0..R
    // Fraction of detecting points inside the CI over r = 1..R; the r = 0
    // row is informational only.
    double fraction_inside_excluding_r0 = 0.0;
};

// Builds the report from already-tokenized word sequences.
AttributionReport attribute_tokens(std::span<const LetterId> corpus,
                                   std::span<const LetterId> testing,
                                   std::uint64_t R, CIMethod method, double alpha,
                                   double V = 2.0);

// Tokenizes both texts with a shared word table, then delegates.
AttributionReport attribute(std::string_view corpus_text,
                            std::string_view testing_text, std::uint64_t R,
                            CIMethod method, double alpha,
                            const TokenizerOptions& opts = {});

// Uniformly random split into parts of sizes ceil(m/2) and floor(m/2),
// preserving within-part order. Deterministic given the stream.
std::pair<std::vector<LetterId>, std::vector<LetterId>> split_sample(
    std::span<const LetterId> words, const RngStream& rng);

}  // namespace turingci
