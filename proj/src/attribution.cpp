#include "turingci/attribution.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace turingci {

LetterId WordTable::intern(std::string word) {
    auto it = ids_.find(word);
    if (it != ids_.end()) return it->second;
    words_.push_back(std::move(word));
    LetterId id = words_.size();
    ids_.emplace(words_.back(), id);
    return id;
}

namespace {

// Minimal UTF-8 decoding; malformed bytes pass through as single units so
// tokenization never throws on messy input.
std::uint32_t decode_utf8(std::string_view s, std::size_t pos, std::size_t& len) {
    unsigned char c = s[pos];
    if (c < 0x80) {
        len = 1;
        return c;
    }
    std::size_t need = c >= 0xF0 ? 4 : c >= 0xE0 ? 3 : c >= 0xC0 ? 2 : 1;
    if (need == 1 || pos + need > s.size()) {
        len = 1;
        return c;
    }
    std::uint32_t cp = c & (0x7F >> need);
    for (std::size_t i = 1; i < need; ++i) {
        unsigned char cc = s[pos + i];
        if ((cc & 0xC0) != 0x80) {
            len = 1;
            return c;
        }
        cp = (cp << 6) | (cc & 0x3F);
    }
    len = need;
    return cp;
}

bool is_punct_codepoint(std::uint32_t cp) {
    if (cp < 0x80) {
        return (cp >= '!' && cp <= '/') || (cp >= ':' && cp <= '@') ||
               (cp >= '[' && cp <= '`') || (cp >= '{' && cp <= '~');
    }
    switch (cp) {
        case 0x00A1: case 0x00AB: case 0x00B7: case 0x00BB: case 0x00BF:
            return true;
        default:
            break;
    }
    return (cp >= 0x2010 && cp <= 0x2027) || (cp >= 0x2030 && cp <= 0x205E) ||
           (cp >= 0x3001 && cp <= 0x303F) || (cp >= 0xFF01 && cp <= 0xFF0F) ||
           (cp >= 0xFF1A && cp <= 0xFF20) || (cp >= 0xFF3B && cp <= 0xFF40) ||
           (cp >= 0xFF5B && cp <= 0xFF65);
}

bool is_interior_keep(std::uint32_t cp) {
    return cp == '\'' || cp == '-' || cp == 0x2019;  // apostrophes and hyphens
}

std::string lowercase_utf8(std::string_view token) {
    std::string out;
    out.reserve(token.size());
    std::size_t pos = 0;
    while (pos < token.size()) {
        std::size_t len = 0;
        std::uint32_t cp = decode_utf8(token, pos, len);
        if (cp >= 'A' && cp <= 'Z') {
            out.push_back(static_cast<char>(cp + 0x20));
        } else if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) {
            // Latin-1 supplement uppercase letters
            cp += 0x20;
            out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
            out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
        } else {
            out.append(token.substr(pos, len));
        }
        pos += len;
    }
    return out;
}

bool looks_like_url(std::string_view token) {
    return token.starts_with("http://") || token.starts_with("https://") ||
           token.starts_with("www.") || token.find("t.co/") != std::string_view::npos;
}

std::string_view strip_edge_punctuation(std::string_view token) {
    // Leading edge.
    while (!token.empty()) {
        std::size_t len = 0;
        std::uint32_t cp = decode_utf8(token, 0, len);
        if (!is_punct_codepoint(cp) || is_interior_keep(cp)) break;
        token.remove_prefix(len);
    }
    // Trailing edge: scan code points to find the last one.
    for (;;) {
        if (token.empty()) break;
        std::size_t pos = 0, last_pos = 0, last_len = 0;
        while (pos < token.size()) {
            std::size_t len = 0;
            decode_utf8(token, pos, len);
            last_pos = pos;
            last_len = len;
            pos += len;
        }
        std::size_t len = last_len;
        std::uint32_t cp = decode_utf8(token, last_pos, len);
        if (!is_punct_codepoint(cp) || is_interior_keep(cp)) break;
        token.remove_suffix(token.size() - last_pos);
    }
    // Edge apostrophes/hyphens are not interior; strip them once exposed.
    while (!token.empty() && (token.front() == '\'' || token.front() == '-')) {
        token.remove_prefix(1);
    }
    while (!token.empty() && (token.back() == '\'' || token.back() == '-')) {
        token.remove_suffix(1);
    }
    return token;
}

bool is_space_byte(char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v';
}

}  // namespace

std::vector<LetterId> tokenize(std::string_view text, const TokenizerOptions& opts,
                               WordTable& table) {
    std::vector<LetterId> out;
    std::size_t line_start = 0;
    while (line_start <= text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string_view::npos) line_end = text.size();
        std::string_view line = text.substr(line_start, line_end - line_start);
        line_start = line_end + 1;

        if (opts.drop_retweets) {
            std::string_view probe = line;
            while (!probe.empty() && is_space_byte(probe.front())) probe.remove_prefix(1);
            if (probe.starts_with("RT @")) continue;
        }

        std::size_t pos = 0;
        while (pos < line.size()) {
            while (pos < line.size() && is_space_byte(line[pos])) ++pos;
            std::size_t start = pos;
            while (pos < line.size() && !is_space_byte(line[pos])) ++pos;
            if (pos == start) break;
            std::string_view raw = line.substr(start, pos - start);

            std::string token =
                opts.lowercase ? lowercase_utf8(raw) : std::string(raw);
            if (opts.strip_urls && looks_like_url(token)) continue;
            std::string_view trimmed = token;
            if (opts.strip_punctuation) trimmed = strip_edge_punctuation(trimmed);
            if (trimmed.empty()) continue;
            out.push_back(table.intern(std::string(trimmed)));
        }
        if (line_end == text.size()) break;
    }
    return out;
}

std::vector<DetectingPoint> detecting_points(std::span<const LetterId> corpus,
                                             std::span<const LetterId> testing,
                                             std::uint64_t R) {
    if (corpus.empty() || testing.empty()) {
        throw std::domain_error("detecting_points: corpus and testing must be nonempty");
    }
    if (R >= corpus.size()) {
        throw std::domain_error("detecting_points: require R < corpus size");
    }
    std::unordered_map<LetterId, std::uint64_t> counts;
    counts.reserve(corpus.size());
    for (LetterId w : corpus) ++counts[w];

    std::vector<DetectingPoint> points(R + 1);
    for (LetterId w : testing) {
        auto it = counts.find(w);
        std::uint64_t y = it == counts.end() ? 0 : it->second;
        if (y <= R) ++points[y].A;
    }
    double n2 = static_cast<double>(testing.size());
    for (auto& pt : points) pt.D = static_cast<double>(pt.A) / n2;
    return points;
}

AttributionReport attribute_tokens(std::span<const LetterId> corpus,
                                   std::span<const LetterId> testing,
                                   std::uint64_t R, CIMethod method, double alpha,
                                   double V) {
    if (corpus.size() < R + 2) {
        throw std::domain_error("attribute: corpus too small for requested R");
    }
    SampleProfile profile = SampleProfile::from_sample(corpus);
    auto points = detecting_points(corpus, testing, R);

    AttributionReport report;
    report.n1 = corpus.size();
    report.n2 = testing.size();
    report.R = R;
    report.method = method;
    report.alpha = alpha;

    std::uint64_t inside_count = 0;
    for (std::uint64_t r = 0; r <= R; ++r) {
        double T = turing_estimate(profile, r);
        double s_hat = sd_estimate(profile, r);
        Interval ci;
        switch (method) {
            case CIMethod::Normal:
                ci = normal_ci(T, s_hat, report.n1, alpha);
                break;
            case CIMethod::NormalRatio:
                ci = normal_ratio_ci(T, s_hat, report.n1, alpha);
                break;
            case CIMethod::Poisson:
                ci = poisson_ci(T, report.n1, r, alpha);
                break;
            case CIMethod::Esty:
                ci = esty_ci(T, s_hat, profile.occupancy(r + 1), report.n1, alpha);
                break;
            case CIMethod::Heuristic:
                ci = heuristic_ci(T, s_hat, report.n1, r, CIConfig{alpha, V});
                break;
        }
        AttributionRow row;
        row.r = r;
        row.D = points[r].D;
        row.interval = ci;
        row.inside = ci.contains(row.D);
        if (r >= 1 && row.inside) ++inside_count;
        report.rows.push_back(row);
    }
    report.fraction_inside_excluding_r0 =
        R >= 1 ? static_cast<double>(inside_count) / static_cast<double>(R) : 0.0;
    return report;
}

AttributionReport attribute(std::string_view corpus_text,
                            std::string_view testing_text, std::uint64_t R,
                            CIMethod method, double alpha,
                            const TokenizerOptions& opts) {
    WordTable table;
    auto corpus = tokenize(corpus_text, opts, table);
    auto testing = tokenize(testing_text, opts, table);
    if (corpus.empty() || testing.empty()) {
        throw std::domain_error("attribute: empty corpus or testing set after tokenization");
    }
    return attribute_tokens(corpus, testing, R, method, alpha);
}

std::pair<std::vector<LetterId>, std::vector<LetterId>> split_sample(
    std::span<const LetterId> words, const RngStream& rng) {
    std::size_t m = words.size();
    if (m < 2) throw std::domain_error("split_sample: need at least 2 words");
    std::size_t first_size = (m + 1) / 2;

    // Fisher-Yates over index labels; the first ceil(m/2) labels form the
    // corpus part, order within each part follows the original sequence.
    std::vector<std::uint32_t> idx(m);
    for (std::size_t i = 0; i < m; ++i) idx[i] = static_cast<std::uint32_t>(i);
    auto engine = rng.make_engine();
    for (std::size_t i = m - 1; i > 0; --i) {
        std::size_t j = static_cast<std::size_t>(engine() % (i + 1));
        std::swap(idx[i], idx[j]);
    }
    std::vector<bool> in_first(m, false);
    for (std::size_t i = 0; i < first_size; ++i) in_first[idx[i]] = true;

    std::pair<std::vector<LetterId>, std::vector<LetterId>> parts;
    parts.first.reserve(first_size);
    parts.second.reserve(m - first_size);
    for (std::size_t i = 0; i < m; ++i) {
        (in_first[i] ? parts.first : parts.second).push_back(words[i]);
    }
    return parts;
}

}  // namespace turingci
