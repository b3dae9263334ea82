#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "gw/cover.hpp"
#include "gw/graphs.hpp"
#include "gw/hodge.hpp"
#include "gw/series.hpp"

namespace gw {

inline const char* conventions_version() { return "gw-conventions-3"; }

struct Target {
    WeightedProjSpace X;
    bool hypersurface = false;
    long d = 0;  // degree of the hypersurface when present
};

struct EdgeClasses {
    EdgeCover cover;
    WeightClass tangent;      // moving part, two fixed zeros removed
    WeightClass obstruction;  // empty without a hypersurface
};

inline EdgeClasses edge_classes(const Target& T, int u, int v, long d) {
    EdgeClasses E;
    E.cover = edge_cover_data(T.X, u, v, d);
    int zeros = 0;
    for (int k = 0; k < T.X.N(); ++k) {
        auto W = football_cohomology({E.cover, T.X.w[k], LinForm::var(k)});
        for (auto& f : W.plus) {
            if (f.is_zero()) {
                ++zeros;
                continue;
            }
            E.tangent.plus.push_back(f);
        }
        for (auto& f : W.minus) {
            if (f.is_zero()) throw ZeroWeight("zero weight in tangent H^1");
            E.tangent.minus.push_back(f);
        }
    }
    // one fixed zero cancels H^0(O), the other the infinitesimal automorphism
    if (zeros != 2) throw ZeroWeight("edge tangent space has " + std::to_string(zeros) + " fixed weights");
    if (T.hypersurface) E.obstruction = football_cohomology({E.cover, T.d, LinForm()});
    return E;
}

struct VirtualTangent {
    WeightClass moving;
    struct Flag {
        int vertex;
        long g, r;
        LinForm omega;
    };
    std::vector<Flag> flags;
};

inline VirtualTangent virtual_tangent_class(const Target& T, const LocGraph& G) {
    VirtualTangent V;
    for (auto& e : G.edges) {
        auto E = edge_classes(T, G.labels[e.a], G.labels[e.b], e.d);
        for (auto& f : E.tangent.plus) V.moving.plus.push_back(f);
        for (auto& f : E.tangent.minus) V.moving.minus.push_back(f);
        V.flags.push_back({e.a, E.cover.flag_g_u(T.X.w[E.cover.u]), E.cover.a, E.cover.omega_u});
        V.flags.push_back({e.b, E.cover.flag_g_v(T.X.w[E.cover.v]), E.cover.b, E.cover.omega_v});
    }
    return V;
}

inline WeightClass obstruction_class(const Target& T, const LocGraph& G) {
    WeightClass W;
    if (!T.hypersurface) return W;
    for (auto& e : G.edges) {
        auto E = edge_classes(T, G.labels[e.a], G.labels[e.b], e.d);
        for (auto& f : E.obstruction.plus) W.plus.push_back(f);
        for (auto& f : E.obstruction.minus) W.minus.push_back(f);
    }
    for (int x = 0; x < G.V(); ++x) {
        int j = G.labels[x];
        W.plus.push_back(bundle_fiber_weight(T.X, T.d, j));
    }
    for (auto& e : G.edges)
        for (int x : {e.a, e.b}) W.minus.push_back(bundle_fiber_weight(T.X, T.d, G.labels[x]));
    W.cancel();
    return W;
}

struct Inadmissible {};

struct FactorLog {
    std::vector<std::string> tangent_plus, tangent_minus, obstruction_plus, obstruction_minus, vertex;
};

template <class S>
struct Contribution {
    S value;
    int degree = 0;
    bool convex = true;  // no obstruction H^1 anywhere
    FactorLog log;
};

inline std::string show(const Rational& x) { return to_string(x); }
inline std::string show(const Laurent& x) {
    std::string s = "series(v=" + std::to_string(x.valuation()) + ":";
    for (int k = x.valuation(); k < x.abs_precision(); ++k) s += " " + to_string(x.coeff(k));
    return s + ")";
}

class Engine {
public:
    Engine(Target T, std::vector<Rational> p, std::vector<Rational> q)
        : T_(std::move(T)), p_(std::move(p)), q_(std::move(q)) {
        if ((int)p_.size() != T_.X.N()) throw MalformedInput("specialization has wrong length");
        if (q_.empty()) q_ = default_direction(T_.X.N());
    }

    static std::vector<Rational> default_direction(int N) {
        std::vector<Rational> q;
        long x = 2;
        for (int i = 0; i < N; ++i) {
            q.push_back(Rational(x));
            x = 2 * x + 1 + i;
        }
        return q;
    }

    const Target& target() const { return T_; }
    const std::vector<Rational>& point() const { return p_; }
    const std::vector<Rational>& direction() const { return q_; }

    const EdgeClasses& edge(int u, int v, long d) {
        auto key = std::make_tuple(u, v, d);
        auto it = edges_.find(key);
        if (it == edges_.end()) it = edges_.emplace(key, edge_classes(T_, u, v, d)).first;
        return it->second;
    }

    Rational at_point(const LinForm& f) const { return specialize_linform(f, p_); }
    Laurent on_line(const LinForm& f) const {
        return Laurent::lin(specialize_linform(f, p_), specialize_linform(f, q_));
    }

    template <class S>
    S eval(const LinForm& f) const {
        if constexpr (std::is_same_v<S, Rational>)
            return at_point(f);
        else
            return on_line(f);
    }

    // moving tangent and obstruction weights of one edge
    template <class S>
    void edge_factor(const EdgeClasses& E, Contribution<S>& C, bool want_log) const {
        S& val = C.value;
        int& deg = C.degree;
        for (auto& f : E.tangent.plus) {
            S x = eval<S>(f);
            if (want_log) C.log.tangent_plus.push_back(show(x));
            val = checked_div(val, x, "tangent weight vanishes under the specialization");
            --deg;
        }
        for (auto& f : E.tangent.minus) {
            S x = eval<S>(f);
            if (want_log) C.log.tangent_minus.push_back(show(x));
            val = val * x;
            ++deg;
        }
        for (auto& f : E.obstruction.plus) {
            S x = eval<S>(f);
            if (want_log) C.log.obstruction_plus.push_back(show(x));
            val = val * x;
            ++deg;
        }
        for (auto& f : E.obstruction.minus) {
            S x = eval<S>(f);
            if (want_log) C.log.obstruction_minus.push_back(show(x));
            C.convex = false;
            val = checked_div(val, x, "obstruction H^1 weight vanishes under the specialization");
            --deg;
        }
    }

    // value of one graph; throws Inadmissible for graphs killed by monodromy,
    // SpecializationDegenerate when a denominator vanishes
    template <class S>
    Contribution<S> contribution(const LocGraph& G, const GraphAut& aut, const std::vector<int>& ins,
                                 bool want_log) {
        Contribution<S> C;
        const S one(Rational(1));
        S val = S(rat(1, aut.symmetry));
        int deg = 0;
        struct F {
            long g, r;
            S omega;
        };
        std::vector<std::vector<F>> flags(G.V());
        for (auto& e : G.edges) {
            int u = G.labels[e.a], v = G.labels[e.b];
            const EdgeClasses& E = edge(u, v, e.d);
            val = val * S(rat(1, e.d));
            flags[e.a].push_back({E.cover.flag_g_u(T_.X.w[u]), E.cover.a, eval<S>(E.cover.omega_u)});
            flags[e.b].push_back({E.cover.flag_g_v(T_.X.w[v]), E.cover.b, eval<S>(E.cover.omega_v)});
            if constexpr (std::is_same_v<S, Rational>) {
                if (!want_log) {
                    auto key = std::make_tuple(u, v, e.d);
                    auto it = edge_values_.find(key);
                    if (it == edge_values_.end()) {
                        Contribution<S> part;
                        part.value = S(Rational(1));
                        edge_factor(E, part, false);
                        it = edge_values_.emplace(key, std::make_tuple(part.value, part.degree, part.convex)).first;
                    }
                    val = val * std::get<0>(it->second);
                    deg += std::get<1>(it->second);
                    C.convex = C.convex && std::get<2>(it->second);
                    continue;
                }
            }
            Contribution<S> part;
            part.value = S(Rational(1));
            edge_factor(E, part, want_log);
            val = val * part.value;
            deg += part.degree;
            C.convex = C.convex && part.convex;
            if (want_log) {
                auto app = [](auto& a, auto& b) { a.insert(a.end(), b.begin(), b.end()); };
                app(C.log.tangent_plus, part.log.tangent_plus);
                app(C.log.tangent_minus, part.log.tangent_minus);
                app(C.log.obstruction_plus, part.log.obstruction_plus);
                app(C.log.obstruction_minus, part.log.obstruction_minus);
            }
        }
        std::vector<std::vector<int>> marks(G.V());
        for (int i = 0; i < (int)G.marks.size(); ++i) marks[G.marks[i]].push_back(i);

        auto vertex = [&](int x, S& vf, int& vdeg, bool& cvx) {
            int j = G.labels[x];
            long wj = T_.X.w[j];
            auto& Fs = flags[x];
            int m = (int)Fs.size() + (int)marks[x].size();
            for (int i : marks[x]) {
                long k = i < (int)ins.size() ? ins[i] : 0;
                vf = vf * ipow(eval<S>(hyperplane_lift(T_.X, j)), k);
                vdeg += (int)k;
            }
            std::vector<Character<S>> chars;
            for (auto& tw : tangent_weights(T_.X, j)) chars.push_back({tw.character, eval<S>(tw.weight), -1});
            if (T_.hypersurface) chars.push_back({mod(T_.d, wj), eval<S>(bundle_fiber_weight(T_.X, T_.d, j)), +1});
            auto node_corr = [&](long g) {
                for (auto& ch : chars) {
                    if (mod(ch.c * g, wj) != 0) continue;
                    if (ch.s < 0) {
                        vf = vf * ch.u;
                        ++vdeg;
                    } else {
                        if (is_zero(ch.u)) throw SpecializationDegenerate("obstruction fiber weight vanishes");
                        vf = vf / ch.u;
                        --vdeg;
                    }
                }
            };
            if (m == 1) {
                if (Fs[0].g != 0) throw Inadmissible{};
                vf = vf * Fs[0].omega;
                ++vdeg;
            } else if (m == 2 && Fs.size() == 1) {
                if (Fs[0].g != 0) throw Inadmissible{};
            } else if (m == 2) {
                if (mod(Fs[0].g + Fs[1].g, wj) != 0) throw Inadmissible{};
                vf = checked_div(vf, Fs[0].omega + Fs[1].omega, "node smoothing weight vanishes");
                --vdeg;
                node_corr(Fs[0].g);
                vf = vf * S(Rational(wj));
                if (Fs[0].g != 0) vf = vf * S(rat(1, Fs[0].r));
            } else {
                long gs = 0;
                for (auto& f : Fs) gs += f.g;
                if (mod(gs, wj) != 0) throw Inadmissible{};
                std::vector<Leg<S>> legs;
                for (auto& f : Fs) {
                    node_corr(f.g);
                    vf = vf * S(Rational(wj));
                    if (f.g != 0) vf = vf * S(rat(1, f.r));
                    legs.push_back({false, f.omega, f.r, f.g});
                }
                for (size_t i = 0; i < marks[x].size(); ++i) legs.push_back({true, S(Rational(0)), 1, 0});
                for (auto& ch : chars) {
                    if (ch.s > 0) {
                        Rational tot = 0;
                        for (auto& l : legs) tot += age(ch.c, l.g, wj);
                        if (tot > 1) cvx = false;
                    }
                }
                int idg = 0;
                vf = vf * vertex_integral(wj, legs, chars, idg);
                vdeg += idg;
            }
        };
        for (int x = 0; x < G.V(); ++x) {
            S vf = one;
            int vdeg = 0;
            bool cvx = true;
            bool done = false;
            if constexpr (std::is_same_v<S, Rational>) {
                if (!want_log) {
                    // keyed by label, flags in order and mark insertions
                    std::string key = std::to_string(G.labels[x]);
                    for (auto& f : flags[x]) key += "|" + std::to_string(f.g) + "," + std::to_string(f.r) + "," + f.omega.get_str();
                    std::vector<long> ks;
                    for (int i : marks[x]) ks.push_back(i < (int)ins.size() ? ins[i] : 0);
                    std::sort(ks.begin(), ks.end());
                    key += "#";
                    for (long k : ks) key += std::to_string(k) + ",";
                    auto it = vertex_values_.find(key);
                    if (it == vertex_values_.end()) {
                        vertex(x, vf, vdeg, cvx);
                        it = vertex_values_.emplace(key, std::make_tuple(vf, vdeg, cvx)).first;
                    }
                    std::tie(vf, vdeg, cvx) = it->second;
                    done = true;
                }
            }
            if (!done) vertex(x, vf, vdeg, cvx);
            C.convex = C.convex && cvx;
            if (want_log) C.log.vertex.push_back(show(vf));
            val = val * vf;
            deg += vdeg;
        }
        C.value = val;
        C.degree = deg;
        return C;
    }

private:
    Target T_;
    std::vector<Rational> p_, q_;
    std::map<std::tuple<int, int, long>, EdgeClasses> edges_;
    std::map<std::tuple<int, int, long>, std::tuple<Rational, int, bool>> edge_values_;
    std::map<std::string, std::tuple<Rational, int, bool>> vertex_values_;
};

struct GraphRecord {
    size_t index = 0;
    LocGraph graph;
    GraphAut aut;
    bool admissible = true;
    bool via_limit = false;
    bool convex = true;
    int degree = 0;
    RatFunc value;                    // regular graphs
    Rational scalar;                  // coefficient of t^degree in value
    int limit_valuation = 0;          // graphs resolved along the perturbation line
    std::vector<Rational> limit_coeffs;
    FactorLog log;
};

struct InvariantResult {
    Rational beta;
    Rational invariant;
    RatFunc sum;
    bool polynomial = true;
    int expected_degree = 0;
    long virtual_dimension = 0;
    long graphs = 0, admissible = 0, limit_graphs = 0;
    int max_pole = 0;
    bool convex = true;
    std::string note;
    double seconds = 0;
    std::vector<GraphRecord> records;
};

struct ComputeOptions {
    bool strict = false;  // treat any vanishing specialized denominator as fatal
    bool keep_records = false;
    bool want_log = false;
    int series_precision = 6;
    bool require_polynomial = true;  // otherwise report the constant term and flag the pole
};

inline long virtual_dimension(const WeightedProjSpace& X, const Rational& beta, int n) {
    Rational v = Rational(X.N() - 1 + n - 3) + Rational(X.weight_sum()) * beta;
    if (v.get_den() != 1) throw DegreeNotRepresentable("virtual dimension is fractional");
    return v.get_num().get_si();
}

inline InvariantResult compute_invariant(Engine& E, const Rational& beta, const std::vector<int>& ins,
                                         const ComputeOptions& opt = {}) {
    auto t0 = std::chrono::steady_clock::now();
    const Target& T = E.target();
    int n = (int)ins.size();
    for (int k : ins)
        if (k < 0) throw MalformedInput("negative insertion power");
    InvariantResult R;
    R.beta = beta;
    auto graphs = enumerate_graphs(T.X, beta, n);
    R.graphs = (long)graphs.size();
    // a fractional rank or dimension leaves no admissible fixed locus
    Rational vdim = Rational(T.X.N() - 1 + n - 3) + Rational(T.X.weight_sum()) * beta;
    Rational rank = T.hypersurface ? Rational(T.d) * beta + 1 : Rational(0);
    bool integral = vdim.get_den() == 1 && rank.get_den() == 1;
    long insdeg = 0;
    for (int k : ins) insdeg += k;
    if (integral) {
        R.virtual_dimension = vdim.get_num().get_si();
        R.expected_degree = (int)(rank.get_num().get_si() - R.virtual_dimension + insdeg);
    }

    Laurent::precision() = opt.series_precision;
    Rational regular = 0;
    Laurent singular = Laurent(Rational(0));
    bool any_singular = false;
    for (size_t gi = 0; gi < graphs.size(); ++gi) {
        auto& eg = graphs[gi];
        GraphRecord rec;
        rec.index = gi;
        rec.graph = eg.graph;
        rec.aut = eg.aut;
        try {
            try {
                auto C = E.contribution<Rational>(eg.graph, eg.aut, ins, opt.want_log);
                rec.degree = C.degree;
                rec.convex = C.convex;
                rec.value = RatFunc::monomial(C.value, C.degree);
                rec.scalar = C.value;
                rec.log = std::move(C.log);
                regular += C.value;
            } catch (const SpecializationDegenerate&) {
                if (opt.strict) throw;
                auto C = E.contribution<Laurent>(eg.graph, eg.aut, ins, opt.want_log);
                rec.degree = C.degree;
                rec.convex = C.convex;
                rec.via_limit = true;
                rec.limit_valuation = std::min(C.value.valuation(), 0);
                for (int k = rec.limit_valuation; k <= 0; ++k) rec.limit_coeffs.push_back(C.value.coeff(k));
                rec.log = std::move(C.log);
                R.max_pole = std::max(R.max_pole, -C.value.valuation());
                singular = singular + C.value;
                any_singular = true;
                ++R.limit_graphs;
            }
        } catch (const Inadmissible&) {
            rec.admissible = false;
        }
        if (rec.admissible) {
            if (!integral)
                throw Inconsistent("graph " + std::to_string(gi) + " is admissible although the obstruction rank is fractional");
            ++R.admissible;
            R.convex = R.convex && rec.convex;
            if (rec.degree != R.expected_degree)
                throw Inconsistent("graph " + std::to_string(gi) + " has degree " + std::to_string(rec.degree) +
                                   ", expected " + std::to_string(R.expected_degree));
        }
        if (opt.keep_records) R.records.push_back(std::move(rec));
    }

    Rational total = regular;
    if (any_singular) {
        if (singular.abs_precision() < 1)
            throw SpecializationDegenerate("series precision too low to resolve the limit");
        for (int k = singular.valuation(); k < 0; ++k)
            if (singular.coeff(k) != 0) {
                R.polynomial = false;
                R.note = "pole of order " + std::to_string(-k) + " along the specialization line";
                break;
            }
        total += singular.coeff(0);
    }
    R.sum = RatFunc::monomial(total, R.expected_degree);
    if (R.polynomial && !R.sum.is_poly()) {
        R.polynomial = false;
        R.note = "graph sum has a pole at t=0";
    }
    if (!R.polynomial) {
        R.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (opt.require_polynomial) throw NotPolynomial(R.note);
        R.invariant = R.expected_degree == 0 ? total : Rational(0);
        return R;
    }
    R.invariant = constant_coefficient(R.sum);
    if (!integral)
        R.note = "fractional obstruction rank or dimension; every fixed locus is inadmissible";
    else if (R.expected_degree != 0) R.note = "insertion codimension does not match the virtual dimension";
    R.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return R;
}

} // namespace gw
