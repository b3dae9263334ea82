#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "gw/geometry.hpp"

namespace gw {

enum class BlockKind { Chain, Loop };

struct Block {
    BlockKind kind;
    std::vector<int> idx;  // variables in chain/loop order
    std::vector<long> a;

    bool operator<(const Block& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (idx != o.idx) return idx < o.idx;
        return a < o.a;
    }
    bool operator==(const Block& o) const { return kind == o.kind && idx == o.idx && a == o.a; }
};

struct InvertibleDecomposition {
    std::vector<Block> blocks;
    long d = 0;
    bool has_loop() const {
        for (auto& b : blocks)
            if (b.kind == BlockKind::Loop) return true;
        return false;
    }
};

// exponent vectors for a decomposition, one per variable
inline std::vector<std::vector<long>> expand_monomials(const InvertibleDecomposition& D, int N) {
    std::vector<std::vector<long>> M;
    for (auto& b : D.blocks) {
        int k = (int)b.idx.size();
        for (int s = 0; s < k; ++s) {
            std::vector<long> e(N, 0);
            e[b.idx[s]] += b.a[s];
            if (s + 1 < k)
                e[b.idx[s + 1]] += 1;
            else if (b.kind == BlockKind::Loop)
                e[b.idx[0]] += 1;
            M.push_back(e);
        }
    }
    return M;
}

namespace detail {

inline bool block_exponents(const WeightedProjSpace& X, long d, BlockKind kind,
                            const std::vector<int>& idx, std::vector<long>& a) {
    int k = (int)idx.size();
    a.assign(k, 0);
    for (int s = 0; s < k; ++s) {
        long next = 0;
        if (s + 1 < k)
            next = X.w[idx[s + 1]];
        else if (kind == BlockKind::Loop)
            next = X.w[idx[0]];
        long rest = d - next;
        long ws = X.w[idx[s]];
        if (rest <= 0 || rest % ws != 0) return false;
        a[s] = rest / ws;
    }
    return true;
}

// all valid blocks on a fixed variable subset
inline std::vector<Block> blocks_on(const WeightedProjSpace& X, long d, std::vector<int> vars) {
    std::vector<Block> out;
    std::sort(vars.begin(), vars.end());
    std::vector<long> a;
    std::vector<int> perm = vars;
    do {
        if (block_exponents(X, d, BlockKind::Chain, perm, a)) out.push_back({BlockKind::Chain, perm, a});
        // loops: rotation fixed by starting at the smallest index
        if (perm.size() >= 2 && perm[0] == vars[0] &&
            block_exponents(X, d, BlockKind::Loop, perm, a))
            out.push_back({BlockKind::Loop, perm, a});
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

inline void set_partitions(int n, std::function<void(const std::vector<std::vector<int>>&)> f) {
    std::vector<std::vector<int>> parts;
    std::function<void(int)> rec = [&](int i) {
        if (i == n) {
            f(parts);
            return;
        }
        for (size_t b = 0; b < parts.size(); ++b) {
            parts[b].push_back(i);
            rec(i + 1);
            parts[b].pop_back();
        }
        parts.push_back({i});
        rec(i + 1);
        parts.pop_back();
    };
    rec(0);
}

} // namespace detail

inline std::vector<InvertibleDecomposition> find_invertible(const WeightedProjSpace& X, long d) {
    std::map<std::vector<int>, std::vector<Block>> memo;
    std::set<std::vector<Block>> seen;
    std::vector<InvertibleDecomposition> out;
    detail::set_partitions(X.N(), [&](const std::vector<std::vector<int>>& parts) {
        std::vector<const std::vector<Block>*> choices;
        for (auto& p : parts) {
            auto it = memo.find(p);
            if (it == memo.end()) it = memo.emplace(p, detail::blocks_on(X, d, p)).first;
            if (it->second.empty()) return;
            choices.push_back(&it->second);
        }
        std::vector<Block> cur;
        std::function<void(size_t)> rec = [&](size_t i) {
            if (i == choices.size()) {
                std::vector<Block> key = cur;
                std::sort(key.begin(), key.end());
                if (seen.insert(key).second) out.push_back({key, d});
                return;
            }
            for (auto& b : *choices[i]) {
                cur.push_back(b);
                rec(i + 1);
                cur.pop_back();
            }
        };
        rec(0);
    });
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.blocks < y.blocks; });
    return out;
}

enum class RegVerdict { RegularizableInside, Not, Unknown };

inline std::string verdict_name(RegVerdict v) {
    switch (v) {
    case RegVerdict::RegularizableInside: return "regularizable-inside";
    case RegVerdict::Not: return "not";
    default: return "unknown";
    }
}

struct RegResult {
    RegVerdict verdict;
    std::vector<std::vector<int>> lines;  // witness: directed lines of variables
    std::string reason;
};

// takes raw weights so a single-variable Fermat is expressible
inline RegResult regularizable_check(const std::vector<std::vector<long>>& M,
                                     const std::vector<long>& w, long d) {
    int N = (int)w.size();
    for (auto& m : M) {
        if ((int)m.size() != N) throw MalformedInput("monomial has wrong number of exponents");
        long deg = 0;
        bool nz = false;
        for (int i = 0; i < N; ++i) {
            if (m[i] < 0) throw MalformedInput("negative exponent");
            deg += m[i] * w[i];
            nz = nz || m[i] > 0;
        }
        if (!nz || deg != d) throw MalformedInput("monomial is not quasi-homogeneous of degree " + std::to_string(d));
    }

    // x_i^a x_j pieces; a Fermat x_i^{a+1} counts as i -> i
    std::vector<std::vector<std::pair<int, int>>> options;  // per monomial, possible arrows
    std::vector<bool> fermat(N, false);
    std::vector<bool> has_out(N, false);
    bool other = false;
    for (auto& m : M) {
        std::vector<int> sup;
        for (int i = 0; i < N; ++i)
            if (m[i] > 0) sup.push_back(i);
        if (sup.size() == 1) {
            fermat[sup[0]] = true;
            has_out[sup[0]] = true;
            continue;
        }
        if (sup.size() == 2) {
            std::vector<std::pair<int, int>> opt;
            int i = sup[0], j = sup[1];
            if (m[j] == 1) opt.push_back({i, j});
            if (m[i] == 1) opt.push_back({j, i});
            for (auto& [s, t] : opt) has_out[s] = true;
            if (!opt.empty()) {
                options.push_back(opt);
                continue;
            }
        }
        other = true;
    }

    for (int j = 0; j < N; ++j)
        if (d % w[j] != 0 && !has_out[j])
            return {RegVerdict::Not, {}, "x" + std::to_string(j + 1) + " has weight not dividing d and no monomial x^a*x_k"};
    if (other) return {RegVerdict::Unknown, {}, "monomials outside chain shape"};

    // orient each two-variable monomial so that arrows form disjoint directed lines
    std::vector<int> out(N, -1), in(N, -1);
    std::function<bool(size_t)> rec = [&](size_t k) -> bool {
        if (k == options.size()) {
            for (int i = 0; i < N; ++i) {
                if (out[i] < 0 && d % w[i] != 0) return false;
                if (out[i] >= 0 && fermat[i]) return false;
            }
            // acyclic
            for (int i = 0; i < N; ++i) {
                int x = i, steps = 0;
                while (out[x] >= 0 && steps <= N) {
                    x = out[x];
                    ++steps;
                }
                if (steps > N) return false;
            }
            return true;
        }
        for (auto [s, t] : options[k]) {
            if (out[s] >= 0 || in[t] >= 0) continue;
            out[s] = t;
            in[t] = s;
            if (rec(k + 1)) return true;
            out[s] = -1;
            in[t] = -1;
        }
        return false;
    };
    if (!rec(0)) return {RegVerdict::Unknown, {}, "no disjoint line cover; loops or colliding arrows"};

    RegResult r{RegVerdict::RegularizableInside, {}, "chain polynomials without Fermat tails"};
    for (int i = 0; i < N; ++i) {
        if (in[i] >= 0) continue;
        std::vector<int> line{i};
        for (int x = i; out[x] >= 0; x = out[x]) line.push_back(out[x]);
        r.lines.push_back(line);
    }
    return r;
}

inline RegResult regularizable_check(const std::vector<std::vector<long>>& M,
                                     const WeightedProjSpace& X, long d) {
    return regularizable_check(M, X.w, d);
}

struct ScanRow {
    std::vector<long> w;
    long d = 0;
    bool ok = true;
    std::string error;
    bool gorenstein = false;
    bool chain = false;
    bool loop = false;
    bool invertible = false;
    std::vector<InvertibleDecomposition> decompositions;
};

inline ScanRow classify_row(const std::vector<long>& w, long d) {
    ScanRow r;
    r.w = w;
    r.d = d;
    try {
        WeightedProjSpace X(w);
        if (d <= 0) throw MalformedInput("degree must be positive");
        r.gorenstein = gorenstein_check(X, d).gorenstein;
        r.chain = !find_chain_structures(X, d, true).empty();
        r.decompositions = find_invertible(X, d);
        r.invertible = !r.decompositions.empty();
        for (auto& D : r.decompositions) r.loop = r.loop || D.has_loop();
    } catch (const Error& e) {
        r.ok = false;
        r.error = e.what();
    }
    return r;
}

inline std::vector<ScanRow> scan(const std::vector<std::pair<std::vector<long>, long>>& rows) {
    std::vector<ScanRow> out;
    for (auto& [w, d] : rows) out.push_back(classify_row(w, d));
    return out;
}

} // namespace gw
