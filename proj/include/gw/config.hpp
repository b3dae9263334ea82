#pragma once

#include <cstdint>
#include <cstdio>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gw/geometry.hpp"

namespace gw {

struct JobConfig {
    std::string mode = "compute";
    std::vector<long> weights;
    long degree = 0;
    std::vector<long> chain;
    std::vector<Rational> beta{Rational(1)};
    std::vector<int> insertions;
    std::vector<Rational> specialization;
    bool dump_graphs = false;
    bool check_polynomiality = true;
    bool strict = false;
};

struct ConfigError {
    int line, col;
    std::string msg;
};

struct ConfigParseError : ParseError {
    std::vector<ConfigError> errors;
    explicit ConfigParseError(std::vector<ConfigError> es) : ParseError(summary(es)), errors(std::move(es)) {}
    static std::string summary(const std::vector<ConfigError>& es) {
        std::string s;
        for (auto& e : es) s += "\n  " + std::to_string(e.line) + ":" + std::to_string(e.col) + ": " + e.msg;
        return std::to_string(es.size()) + " error(s)" + s;
    }
};

namespace detail {

inline std::string trim(const std::string& s, size_t& lead) {
    size_t a = 0, b = s.size();
    while (a < b && isspace((unsigned char)s[a])) ++a;
    while (b > a && isspace((unsigned char)s[b - 1])) --b;
    lead = a;
    return s.substr(a, b - a);
}

// splits "[a, b, c]" into items with their columns
inline bool split_list(const std::string& v, int col0, std::vector<std::pair<std::string, int>>& items) {
    if (v.size() < 2 || v.front() != '[' || v.back() != ']') return false;
    std::string body = v.substr(1, v.size() - 2);
    size_t lead;
    if (trim(body, lead).empty()) return true;
    size_t start = 0;
    while (true) {
        size_t comma = body.find(',', start);
        std::string raw = body.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        std::string item = trim(raw, lead);
        items.push_back({item, col0 + 1 + (int)(start + lead)});
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return true;
}

} // namespace detail

inline JobConfig parse_config(const std::string& text) {
    JobConfig c;
    std::vector<ConfigError> errs;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    bool have_weights = false, have_chain = false, have_degree = false;
    std::vector<std::string> seen;
    int chain_line = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        auto hash = raw.find('#');
        std::string line = raw.substr(0, hash);
        size_t lead;
        if (detail::trim(line, lead).empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            errs.push_back({lineno, (int)lead + 1, "expected key = value"});
            continue;
        }
        size_t klead, vlead;
        std::string key = detail::trim(line.substr(0, eq), klead);
        std::string val = detail::trim(line.substr(eq + 1), vlead);
        int kcol = (int)klead + 1, vcol = (int)(eq + 1 + vlead) + 1;
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) {
            errs.push_back({lineno, kcol, "duplicate key '" + key + "'"});
            continue;
        }
        seen.push_back(key);

        auto ints = [&](std::vector<long>& out, long minv) {
            std::vector<std::pair<std::string, int>> items;
            if (!detail::split_list(val, vcol, items)) {
                errs.push_back({lineno, vcol, "expected a list in brackets"});
                return false;
            }
            bool ok = true;
            for (auto& [s, col] : items) {
                try {
                    Rational q = parse_rational(s);
                    if (q.get_den() != 1 || q < minv) throw MalformedInput("");
                    out.push_back(q.get_num().get_si());
                } catch (const Error&) {
                    errs.push_back({lineno, col, "expected an integer >= " + std::to_string(minv) + ", got '" + s + "'"});
                    ok = false;
                }
            }
            return ok;
        };
        auto rats = [&](std::vector<Rational>& out, bool positive) {
            std::vector<std::pair<std::string, int>> items;
            if (!detail::split_list(val, vcol, items)) {
                errs.push_back({lineno, vcol, "expected a list in brackets"});
                return false;
            }
            bool ok = true;
            for (auto& [s, col] : items) {
                try {
                    Rational q = parse_rational(s);
                    if (positive && q <= 0) throw MalformedInput("");
                    out.push_back(q);
                } catch (const Error&) {
                    errs.push_back({lineno, col, std::string("expected a ") + (positive ? "positive " : "") + "rational, got '" + s + "'"});
                    ok = false;
                }
            }
            return ok;
        };
        auto boolean = [&](bool& out) {
            if (val == "true")
                out = true;
            else if (val == "false")
                out = false;
            else
                errs.push_back({lineno, vcol, "expected true or false"});
        };

        if (key == "weights") {
            std::vector<long> w;
            if (ints(w, 1)) {
                if (w.size() < 2)
                    errs.push_back({lineno, vcol, "need at least two weights"});
                else {
                    c.weights = w;
                    have_weights = true;
                }
            }
        } else if (key == "degree") {
            try {
                Rational q = parse_rational(val);
                if (q.get_den() != 1 || q < 0) throw MalformedInput("");
                c.degree = q.get_num().get_si();
                have_degree = true;
            } catch (const Error&) {
                errs.push_back({lineno, vcol, "expected a non-negative integer degree"});
            }
        } else if (key == "chain") {
            std::vector<long> a;
            if (ints(a, 1)) {
                c.chain = a;
                have_chain = true;
                chain_line = lineno;
            }
        } else if (key == "beta") {
            std::vector<Rational> b;
            if (rats(b, true)) {
                if (b.empty())
                    errs.push_back({lineno, vcol, "beta list is empty"});
                else
                    c.beta = b;
            }
        } else if (key == "insertions") {
            std::vector<long> k;
            if (ints(k, 0)) {
                c.insertions.clear();
                for (long x : k) c.insertions.push_back((int)x);
            }
        } else if (key == "specialization") {
            std::vector<Rational> p;
            if (rats(p, false)) c.specialization = p;
        } else if (key == "mode") {
            if (val != "compute" && val != "classify" && val != "oracle")
                errs.push_back({lineno, vcol, "mode must be compute, classify or oracle"});
            else
                c.mode = val;
        } else if (key == "dump_graphs" || key == "dump-graphs") {
            boolean(c.dump_graphs);
        } else if (key == "check_polynomiality" || key == "check-polynomiality") {
            boolean(c.check_polynomiality);
        } else if (key == "strict") {
            boolean(c.strict);
        } else {
            errs.push_back({lineno, kcol, "unknown key '" + key + "'"});
        }
    }
    if (!have_weights && std::none_of(errs.begin(), errs.end(), [](auto& e) { return e.msg.find("weight") != std::string::npos; }))
        errs.push_back({lineno + 1, 1, "missing weights"});
    (void)have_degree;
    if (have_weights) {
        WeightedProjSpace X(c.weights);
        if (!c.specialization.empty() && c.specialization.size() != c.weights.size())
            errs.push_back({0, 0, "specialization length differs from the number of weights"});
        if (have_chain) {
            ChainStructure cs{X, c.chain, c.degree, {}};
            for (int i = 0; i < X.N(); ++i) cs.order.push_back(i);
            if (!cs.valid()) errs.push_back({chain_line, 1, "chain exponents do not satisfy a_j w_j + w_{j+1} = d"});
        } else if (c.degree > 0) {
            auto found = find_chain_structures(X, c.degree);
            if (!found.empty()) c.chain = found[0].a;
        }
    }
    if (!errs.empty()) throw ConfigParseError(errs);
    return c;
}

namespace detail {
template <class T, class F>
std::string list_str(const std::vector<T>& v, F f) {
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + f(v[i]);
    return s + "]";
}
} // namespace detail

inline std::string canonical_config(const JobConfig& c) {
    auto num = [](auto x) { return std::to_string(x); };
    auto q = [](const Rational& x) { return to_string(x); };
    std::string s;
    s += "mode = " + c.mode + "\n";
    s += "weights = " + detail::list_str(c.weights, num) + "\n";
    s += "degree = " + std::to_string(c.degree) + "\n";
    if (!c.chain.empty()) s += "chain = " + detail::list_str(c.chain, num) + "\n";
    s += "beta = " + detail::list_str(c.beta, q) + "\n";
    s += "insertions = " + detail::list_str(c.insertions, num) + "\n";
    if (!c.specialization.empty()) s += "specialization = " + detail::list_str(c.specialization, q) + "\n";
    s += std::string("dump_graphs = ") + (c.dump_graphs ? "true" : "false") + "\n";
    s += std::string("check_polynomiality = ") + (c.check_polynomiality ? "true" : "false") + "\n";
    s += std::string("strict = ") + (c.strict ? "true" : "false") + "\n";
    return s;
}

// FNV-1a, 64 bit
inline std::string content_hash(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
    return buf;
}

inline std::string config_hash(const JobConfig& c) { return content_hash(canonical_config(c)); }

} // namespace gw
