#pragma once

// Text formats: triangle CSV/JSON, root certificates, moments records and
// the triangle cache file. Integers are always written as exact decimals;
// rationals as "num/den" in CSV and [num, den] pairs in JSON.
//
// JSON is read with nlohmann's SAX interface so that integers of any size
// keep their exact decimal text.

#include <charconv>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "json.hpp"
#include "stirling/distribution.hpp"
#include "stirling/numerics.hpp"
#include "stirling/real_roots.hpp"
#include "stirling/triangle.hpp"

namespace stirling::io {

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shortest decimal that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw FormatError("cannot format double");
    return std::string(buf, end);
}

inline double parse_double(std::string_view s) {
    double v = 0.0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) throw FormatError("bad number '" + std::string(s) + "'");
    return v;
}

inline Integer parse_integer(std::string_view s) {
    if (s.empty()) throw FormatError("empty integer");
    std::size_t start = s[0] == '-' ? 1 : 0;
    if (start == s.size()) throw FormatError("bad integer '" + std::string(s) + "'");
    for (std::size_t i = start; i < s.size(); ++i) {
        if (s[i] < '0' || s[i] > '9') throw FormatError("bad integer '" + std::string(s) + "'");
    }
    return Integer(std::string(s));
}

/// "num/den" or "num"; must already be in lowest terms with den > 0.
inline Rational parse_rational(std::string_view s) {
    auto slash = s.find('/');
    if (slash == std::string_view::npos) return Rational(parse_integer(s));
    Integer num = parse_integer(s.substr(0, slash));
    Integer den = parse_integer(s.substr(slash + 1));
    if (den <= 0) throw FormatError("non-positive denominator in '" + std::string(s) + "'");
    Rational r = make_rational(num, den);
    if (r.get_num() != num || r.get_den() != den) throw FormatError("rational not in lowest terms: " + std::string(s));
    return r;
}

// ---------------------------------------------------------------------------
// Minimal JSON tree with exact number text.

struct JsonValue;
using JsonArray = std::vector<JsonValue>;
using JsonObject = std::vector<std::pair<std::string, JsonValue>>;

struct JsonNumber {
    std::string text;
};

struct JsonValue {
    std::variant<std::nullptr_t, bool, JsonNumber, std::string, std::shared_ptr<JsonArray>, std::shared_ptr<JsonObject>>
        data;

    const JsonArray& array() const {
        if (auto* a = std::get_if<std::shared_ptr<JsonArray>>(&data)) return **a;
        throw FormatError("expected a JSON array");
    }
    const JsonObject& object() const {
        if (auto* o = std::get_if<std::shared_ptr<JsonObject>>(&data)) return **o;
        throw FormatError("expected a JSON object");
    }
    const std::string& number_text() const {
        if (auto* n = std::get_if<JsonNumber>(&data)) return n->text;
        throw FormatError("expected a JSON number");
    }
    bool boolean() const {
        if (auto* b = std::get_if<bool>(&data)) return *b;
        throw FormatError("expected a JSON boolean");
    }
    const std::string& string() const {
        if (auto* s = std::get_if<std::string>(&data)) return *s;
        throw FormatError("expected a JSON string");
    }
    const JsonValue* find(std::string_view key) const {
        for (const auto& [k, v] : object()) {
            if (k == key) return &v;
        }
        return nullptr;
    }
    const JsonValue& at(std::string_view key) const {
        if (const JsonValue* v = find(key)) return *v;
        throw FormatError("missing JSON field '" + std::string(key) + "'");
    }
};

namespace detail {

class TreeBuilder : public nlohmann::json_sax<nlohmann::json> {
public:
    bool null() override { return put(JsonValue{nullptr}); }
    bool boolean(bool v) override { return put(JsonValue{v}); }
    bool number_integer(number_integer_t v) override { return put(JsonValue{JsonNumber{std::to_string(v)}}); }
    bool number_unsigned(number_unsigned_t v) override { return put(JsonValue{JsonNumber{std::to_string(v)}}); }
    bool number_float(number_float_t, const string_t& s) override { return put(JsonValue{JsonNumber{s}}); }
    bool string(string_t& v) override { return put(JsonValue{v}); }
    bool binary(binary_t&) override { return false; }
    bool start_object(std::size_t) override {
        stack_.push_back(JsonValue{std::make_shared<JsonObject>()});
        return true;
    }
    bool key(string_t& k) override {
        keys_.push_back(k);
        return true;
    }
    bool end_object() override { return close(); }
    bool start_array(std::size_t) override {
        stack_.push_back(JsonValue{std::make_shared<JsonArray>()});
        return true;
    }
    bool end_array() override { return close(); }
    bool parse_error(std::size_t pos, const std::string&, const nlohmann::detail::exception& ex) override {
        error_ = "JSON parse error at byte " + std::to_string(pos) + ": " + ex.what();
        return false;
    }

    JsonValue result() {
        if (!error_.empty()) throw FormatError(error_);
        if (!root_) throw FormatError("empty JSON document");
        return *root_;
    }

private:
    bool close() {
        JsonValue v = std::move(stack_.back());
        stack_.pop_back();
        return put(std::move(v));
    }
    bool put(JsonValue v) {
        if (stack_.empty()) {
            root_ = std::move(v);
            return true;
        }
        auto& top = stack_.back().data;
        if (auto* a = std::get_if<std::shared_ptr<JsonArray>>(&top)) {
            (*a)->push_back(std::move(v));
        } else {
            auto& o = std::get<std::shared_ptr<JsonObject>>(top);
            o->emplace_back(std::move(keys_.back()), std::move(v));
            keys_.pop_back();
        }
        return true;
    }

    std::vector<JsonValue> stack_;
    std::vector<std::string> keys_;
    std::optional<JsonValue> root_;
    std::string error_;
};

}  // namespace detail

inline JsonValue parse_json(std::string_view text) {
    detail::TreeBuilder builder;
    nlohmann::json::sax_parse(text.begin(), text.end(), &builder);
    return builder.result();
}

inline std::string json_pair(const Rational& r) {
    return "[" + r.get_num().get_str() + ", " + r.get_den().get_str() + "]";
}

inline Rational rational_from_pair(const JsonValue& v) {
    const auto& a = v.array();
    if (a.size() != 2) throw FormatError("rational pair must have two entries");
    Integer num = parse_integer(a[0].number_text());
    Integer den = parse_integer(a[1].number_text());
    if (den <= 0) throw FormatError("non-positive denominator");
    Rational r = make_rational(num, den);
    if (r.get_num() != num || r.get_den() != den) throw FormatError("rational pair not in lowest terms");
    return r;
}

// ---------------------------------------------------------------------------
// Triangle

inline std::string triangle_csv(const StatisticTriangle& t) {
    std::string out = "n,i,count\n";
    for (std::size_t n = 1; n <= t.n_max(); ++n) {
        const auto& row = t.row(n);
        for (std::size_t i = 1; i <= row.size(); ++i) {
            out += std::to_string(n) + "," + std::to_string(i) + "," + row[i - 1].get_str() + "\n";
        }
    }
    return out;
}

inline std::string triangle_json(const StatisticTriangle& t) {
    std::string out = "[\n";
    for (std::size_t n = 1; n <= t.n_max(); ++n) {
        out += "  [";
        const auto& row = t.row(n);
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) out += ", ";
            out += row[i].get_str();
        }
        out += n == t.n_max() ? "]\n" : "],\n";
    }
    out += "]\n";
    return out;
}

inline StatisticTriangle parse_triangle_csv(std::string_view text, Statistic label = Statistic::descents) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line) || line != "n,i,count") throw FormatError("triangle CSV must start with 'n,i,count'");
    std::vector<TriangleRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto c1 = line.find(',');
        auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) throw FormatError("bad triangle CSV line: " + line);
        const std::size_t n = std::stoul(line.substr(0, c1));
        const std::size_t i = std::stoul(line.substr(c1 + 1, c2 - c1 - 1));
        if (n == rows.size() + 1 && i == 1) rows.emplace_back();
        if (n != rows.size() || i != rows.back().size() + 1 || i > n) {
            throw FormatError("triangle CSV entries out of order at: " + line);
        }
        rows.back().push_back(parse_integer(std::string_view(line).substr(c2 + 1)));
    }
    for (std::size_t n = 1; n <= rows.size(); ++n) {
        if (rows[n - 1].size() != n) throw FormatError("triangle CSV row " + std::to_string(n) + " incomplete");
    }
    return StatisticTriangle(label, std::move(rows));
}

inline StatisticTriangle parse_triangle_json(std::string_view text, Statistic label = Statistic::descents) {
    const JsonValue root = parse_json(text);
    std::vector<TriangleRow> rows;
    for (const auto& r : root.array()) {
        TriangleRow row;
        for (const auto& v : r.array()) row.push_back(parse_integer(v.number_text()));
        if (row.size() != rows.size() + 1) throw FormatError("triangle JSON row has the wrong length");
        rows.push_back(std::move(row));
    }
    return StatisticTriangle(label, std::move(rows));
}

// ---------------------------------------------------------------------------
// Certificates

inline std::string interval_json(const RootInterval& iv) {
    return "[" + iv.lo.get_num().get_str() + ", " + iv.lo.get_den().get_str() + ", " + iv.hi.get_num().get_str() +
           ", " + iv.hi.get_den().get_str() + "]";
}

inline RootInterval interval_from_json(const JsonValue& v) {
    const auto& a = v.array();
    if (a.size() < 4) throw FormatError("interval needs four integers");
    auto part = [&](std::size_t k) {
        return rational_from_pair(JsonValue{std::make_shared<JsonArray>(JsonArray{a[k], a[k + 1]})});
    };
    return {part(0), part(2)};
}

inline std::string certificate_json(const RealRootCertificate& c) {
    std::string out = "{\n";
    out += "  \"n\": " + std::to_string(c.n) + ",\n";
    out += "  \"count\": " + std::to_string(c.distinct_real_root_count) + ",\n";
    out += "  \"squarefree\": " + std::string(c.squarefree ? "true" : "false") + ",\n";
    out += "  \"intervals\": [";
    for (std::size_t k = 0; k < c.isolating_intervals.size(); ++k) {
        out += k == 0 ? "\n    " : ",\n    ";
        out += interval_json(c.isolating_intervals[k]);
    }
    out += c.isolating_intervals.empty() ? "],\n" : "\n  ],\n";
    out += "  \"verified\": " + std::string(c.verified ? "true" : "false");
    if (!c.failure.empty()) out += ",\n  \"failure\": " + nlohmann::json(c.failure).dump();
    out += "\n}\n";
    return out;
}

/// Reads back the exported fields; other fields keep their defaults.
inline RealRootCertificate parse_certificate_json(std::string_view text) {
    const JsonValue root = parse_json(text);
    RealRootCertificate c;
    c.n = std::stoul(root.at("n").number_text());
    c.distinct_real_root_count = std::stoul(root.at("count").number_text());
    c.squarefree = root.at("squarefree").boolean();
    for (const auto& iv : root.at("intervals").array()) c.isolating_intervals.push_back(interval_from_json(iv));
    c.verified = root.at("verified").boolean();
    if (const JsonValue* f = root.find("failure")) c.failure = f->string();
    return c;
}

inline std::string interlace_json(const InterlaceCertificate& c) {
    std::string out = "{\n";
    out += "  \"n\": " + std::to_string(c.n) + ",\n";
    out += "  \"witnesses\": [";
    for (std::size_t k = 0; k < c.witnesses.size(); ++k) {
        const auto& w = c.witnesses[k];
        std::string iv = interval_json(w.interval);
        iv.pop_back();
        out += k == 0 ? "\n    " : ",\n    ";
        out += iv + ", " + std::to_string(w.sign) + "]";
    }
    out += c.witnesses.empty() ? "],\n" : "\n  ],\n";
    out += "  \"verified\": " + std::string(c.verified ? "true" : "false");
    if (!c.failure.empty()) out += ",\n  \"failure\": " + nlohmann::json(c.failure).dump();
    out += "\n}\n";
    return out;
}

// ---------------------------------------------------------------------------
// Moments

struct MomentsRecord {
    std::size_t n = 0;
    Rational mean;
    Rational variance;
    Rational second_moment;
    std::optional<double> ks_exact;
    std::optional<double> ks_empirical;

    friend bool operator==(const MomentsRecord&, const MomentsRecord&) = default;
};

inline std::string moments_json(const std::vector<MomentsRecord>& records) {
    std::string out = "[\n";
    for (std::size_t k = 0; k < records.size(); ++k) {
        const auto& r = records[k];
        out += "  {\"n\": " + std::to_string(r.n) + ", \"mean\": " + json_pair(r.mean) +
               ", \"variance\": " + json_pair(r.variance) + ", \"s_n\": " + json_pair(r.second_moment);
        if (r.ks_exact) out += ", \"ks_exact\": " + format_double(*r.ks_exact);
        if (r.ks_empirical) out += ", \"ks_empirical\": " + format_double(*r.ks_empirical);
        out += k + 1 == records.size() ? "}\n" : "},\n";
    }
    out += "]\n";
    return out;
}

inline std::vector<MomentsRecord> parse_moments_json(std::string_view text) {
    std::vector<MomentsRecord> out;
    const JsonValue root = parse_json(text);
    for (const auto& v : root.array()) {
        MomentsRecord r;
        r.n = std::stoul(v.at("n").number_text());
        r.mean = rational_from_pair(v.at("mean"));
        r.variance = rational_from_pair(v.at("variance"));
        r.second_moment = rational_from_pair(v.at("s_n"));
        if (const JsonValue* ks = v.find("ks_exact")) r.ks_exact = parse_double(ks->number_text());
        if (const JsonValue* ks = v.find("ks_empirical")) r.ks_empirical = parse_double(ks->number_text());
        out.push_back(std::move(r));
    }
    return out;
}

/// Columns: n, exact mean/variance/s_n as num/den, their decimals, then the
/// optional KS columns (empty when absent).
inline std::string moments_csv(const std::vector<MomentsRecord>& records) {
    std::string out = "n,mean,variance,s_n,mean_decimal,variance_decimal,s_n_decimal,ks_exact,ks_empirical\n";
    for (const auto& r : records) {
        out += std::to_string(r.n) + "," + to_string(r.mean) + "," + to_string(r.variance) + "," +
               to_string(r.second_moment) + "," + format_double(to_double(r.mean)) + "," +
               format_double(to_double(r.variance)) + "," + format_double(to_double(r.second_moment)) + "," +
               (r.ks_exact ? format_double(*r.ks_exact) : "") + "," +
               (r.ks_empirical ? format_double(*r.ks_empirical) : "") + "\n";
    }
    return out;
}

inline std::vector<MomentsRecord> parse_moments_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    std::getline(in, line);
    if (line != "n,mean,variance,s_n,mean_decimal,variance_decimal,s_n_decimal,ks_exact,ks_empirical") {
        throw FormatError("unexpected moments CSV header");
    }
    std::vector<MomentsRecord> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::size_t start = 0;
        while (true) {
            auto comma = line.find(',', start);
            f.push_back(line.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (f.size() != 9) throw FormatError("moments CSV line needs 9 fields: " + line);
        MomentsRecord r;
        r.n = std::stoul(f[0]);
        r.mean = parse_rational(f[1]);
        r.variance = parse_rational(f[2]);
        r.second_moment = parse_rational(f[3]);
        if (!f[7].empty()) r.ks_exact = parse_double(f[7]);
        if (!f[8].empty()) r.ks_empirical = parse_double(f[8]);
        out.push_back(std::move(r));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Triangle cache
//
// Line 1: "stirling-triangle-cache v1". Then one line per row n = 1, 2, ...:
//   <n> <len>:<digits> <len>:<digits> ...
// where <len> is the number of decimal digits that follow the colon.

inline void write_triangle_cache(std::ostream& os, const std::vector<TriangleRow>& rows) {
    os << "stirling-triangle-cache v1\n";
    for (std::size_t n = 1; n <= rows.size(); ++n) {
        os << n;
        for (const auto& c : rows[n - 1]) {
            const std::string digits = c.get_str();
            os << ' ' << digits.size() << ':' << digits;
        }
        os << '\n';
    }
}

inline std::vector<TriangleRow> read_triangle_cache(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "stirling-triangle-cache v1") throw FormatError("not a triangle cache file");
    std::vector<TriangleRow> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::string_view rest = line;
        auto sp = rest.find(' ');
        const std::size_t n = std::stoul(std::string(rest.substr(0, sp)));
        if (n != rows.size() + 1) throw FormatError("triangle cache rows out of order");
        TriangleRow row;
        while (sp != std::string_view::npos) {
            rest = rest.substr(sp + 1);
            auto colon = rest.find(':');
            if (colon == std::string_view::npos) throw FormatError("triangle cache entry missing length");
            const std::size_t len = std::stoul(std::string(rest.substr(0, colon)));
            if (colon + 1 + len > rest.size()) throw FormatError("triangle cache entry truncated");
            row.push_back(parse_integer(rest.substr(colon + 1, len)));
            rest = rest.substr(colon + 1 + len);
            if (!rest.empty() && rest[0] != ' ') throw FormatError("triangle cache entry length mismatch");
            sp = rest.empty() ? std::string_view::npos : 0;
        }
        if (row.size() != n) throw FormatError("triangle cache row " + std::to_string(n) + " has wrong length");
        rows.push_back(std::move(row));
    }
    return rows;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace stirling::io
