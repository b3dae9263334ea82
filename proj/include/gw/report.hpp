#pragma once

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

#include <json.hpp>

#include "gw/config.hpp"
#include "gw/oracles.hpp"
#include "gw/search.hpp"

namespace gw {

using Json = nlohmann::ordered_json;

inline Json rational_json(const Rational& q) {
    return Json{{"num", q.get_num().get_str()}, {"den", q.get_den().get_str()}};
}

inline Rational rational_from_json(const Json& j) {
    return parse_rational(j.at("num").get<std::string>() + "/" + j.at("den").get<std::string>());
}

inline Json graph_json(const LocGraph& g, const GraphAut& aut) {
    Json edges = Json::array();
    for (auto& e : g.edges) edges.push_back({e.a, e.b, e.d});
    return Json{{"labels", g.labels}, {"edges", edges}, {"marks", g.marks},
                {"aut", {{"symmetry", aut.symmetry}, {"order", aut.order}}}};
}

inline LocGraph graph_from_json(const Json& j, GraphAut& aut) {
    LocGraph g;
    g.labels = j.at("labels").get<std::vector<int>>();
    for (auto& e : j.at("edges")) g.edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<long>()});
    g.marks = j.at("marks").get<std::vector<int>>();
    aut.symmetry = j.at("aut").at("symmetry").get<long>();
    aut.order = j.at("aut").at("order").get<long>();
    return g;
}

inline Json record_json(const Rational& beta, const GraphRecord& r) {
    Json j{{"beta", to_string(beta)}, {"index", r.index}};
    j.update(graph_json(r.graph, r.aut));
    j["admissible"] = r.admissible;
    if (!r.admissible) return j;
    j["degree"] = r.degree;
    j["convex"] = r.convex;
    if (r.via_limit) {
        Json cs = Json::array();
        for (auto& c : r.limit_coeffs) cs.push_back(rational_json(c));
        j["limit"] = {{"valuation", r.limit_valuation}, {"coeffs", cs}};
    } else {
        j["value"] = rational_json(r.scalar);
    }
    j["factors"] = {{"tangent_plus", r.log.tangent_plus},
                    {"tangent_minus", r.log.tangent_minus},
                    {"obstruction_plus", r.log.obstruction_plus},
                    {"obstruction_minus", r.log.obstruction_minus},
                    {"vertex", r.log.vertex}};
    return j;
}

struct RunOptions {
    bool dump_graphs = false;
    std::string trace_path;   // empty: no trace
    std::string cache_dir;    // empty: no cache
    std::ostream* log = nullptr;
};

inline std::string cache_dir_from_env() {
    const char* s = std::getenv("GW_CACHE_DIR");
    return s ? std::string(s) : std::string();
}

inline std::string utc_now() {
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

inline std::vector<Rational> default_ambient_point(int N) {
    std::vector<Rational> p;
    long x = 1;
    for (int i = 0; i < N; ++i, x *= 3) p.push_back(Rational(x));
    return p;
}

struct ResolvedSpecialization {
    std::vector<Rational> p;
    std::string source;
};

inline ResolvedSpecialization resolve_specialization(const JobConfig& c) {
    WeightedProjSpace X(c.weights);
    if (!c.specialization.empty()) return {c.specialization, "config"};
    if (c.degree == 0) return {default_ambient_point(X.N()), "ambient"};
    if (c.chain.empty()) throw MalformedInput("no chain structure for this target; supply a specialization");
    ChainStructure cs{X, c.chain, c.degree, {}};
    for (int i = 0; i < X.N(); ++i) cs.order.push_back(i);
    return {chain_specialization(cs).p, "chain"};
}

inline Json error_json(const std::exception& e) {
    if (auto* g = dynamic_cast<const Error*>(&e)) return Json{{"kind", g->kind()}, {"message", g->detail()}};
    return Json{{"kind", "Internal"}, {"message", e.what()}};
}

namespace detail {

inline std::string row_cache_key(const JobConfig& c, const std::vector<Rational>& p, const Rational& beta) {
    std::string s = std::string(conventions_version()) + "|";
    for (long w : c.weights) s += std::to_string(w) + ",";
    s += "|" + std::to_string(c.degree) + "|";
    for (auto& x : p) s += to_string(x) + ",";
    s += "|" + to_string(beta) + "|";
    for (int k : c.insertions) s += std::to_string(k) + ",";
    s += std::string("|") + (c.strict ? "1" : "0") + (c.check_polynomiality ? "1" : "0");
    return content_hash(s);
}

// recompute one stored graph and compare; false if the entry is stale
inline bool spot_check(Engine& E, const Json& entry, const std::vector<int>& ins, std::string& what) {
    const Json& gs = entry.at("graphs");
    if (gs.empty()) {
        what = "no regular graphs to check";
        return true;
    }
    std::random_device rd;
    size_t pick = std::uniform_int_distribution<size_t>(0, gs.size() - 1)(rd);
    GraphAut aut;
    LocGraph g = graph_from_json(gs[pick], aut);
    Rational want = rational_from_json(gs[pick].at("value"));
    what = "graph " + std::to_string(gs[pick].at("index").get<long>());
    try {
        auto C = E.contribution<Rational>(g, aut, ins, false);
        return C.value == want;
    } catch (...) {
        return false;
    }
}

} // namespace detail

struct BetaRun {
    Json row;
    double seconds = 0;
};

inline BetaRun run_beta(const JobConfig& c, Engine& E, const Rational& beta, const RunOptions& ro,
                        std::ofstream* trace) {
    BetaRun out;
    out.row = Json{{"beta", to_string(beta)}};
    auto t0 = std::chrono::steady_clock::now();
    std::string key = detail::row_cache_key(c, E.point(), beta);
    std::filesystem::path cpath;
    bool use_cache = !ro.cache_dir.empty() && !trace;
    if (use_cache) {
        cpath = std::filesystem::path(ro.cache_dir) / (key + ".json");
        std::ifstream in(cpath);
        if (in) {
            try {
                Json entry = Json::parse(in);
                std::string what;
                if (entry.at("conventions") == conventions_version() && detail::spot_check(E, entry, c.insertions, what)) {
                    if (ro.log) *ro.log << "cache hit for beta=" << to_string(beta) << ", spot-checked " << what << "\n";
                    out.row = entry.at("row");
                    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                    return out;
                }
                if (ro.log) *ro.log << "cache entry for beta=" << to_string(beta) << " failed its spot check; recomputing\n";
            } catch (const std::exception& e) {
                if (ro.log) *ro.log << "unreadable cache entry " << cpath << ": " << e.what() << "\n";
            }
        }
    }
    ComputeOptions opt;
    opt.strict = c.strict;
    opt.keep_records = use_cache || trace;
    opt.want_log = trace != nullptr;
    opt.require_polynomial = c.check_polynomiality;
    try {
        InvariantResult R = compute_invariant(E, beta, c.insertions, opt);
        Json& row = out.row;
        row["status"] = "ok";
        row["invariant"] = to_string(R.invariant);
        row["polynomiality"] = R.polynomial ? "pass" : "fail";
        row["sum"] = {{"t_degree", R.expected_degree}, {"coefficient", rational_json(R.sum.num().lead() / R.sum.den().lead())}};
        row["expected_degree"] = R.expected_degree;
        row["virtual_dimension"] = R.virtual_dimension;
        row["graphs"] = R.graphs;
        row["admissible"] = R.admissible;
        row["limit_graphs"] = R.limit_graphs;
        row["max_pole"] = R.max_pole;
        row["convex"] = R.convex;
        row["note"] = R.note;
        if (trace)
            for (auto& r : R.records)
                if (r.admissible || ro.dump_graphs) *trace << record_json(beta, r).dump() << "\n";
        if (use_cache) {
            Json gs = Json::array();
            for (auto& r : R.records)
                if (r.admissible && !r.via_limit) {
                    Json g = graph_json(r.graph, r.aut);
                    g["index"] = r.index;
                    g["value"] = rational_json(r.scalar);
                    gs.push_back(g);
                }
            std::filesystem::create_directories(ro.cache_dir);
            std::ofstream o(cpath);
            o << Json{{"conventions", conventions_version()}, {"row", row}, {"graphs", gs}}.dump() << "\n";
        }
    } catch (const std::exception& e) {
        out.row["status"] = "error";
        out.row["error"] = error_json(e);
        if (dynamic_cast<const NotPolynomial*>(&e)) out.row["polynomiality"] = "fail";
    }
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

inline Json run_job(const JobConfig& c, const RunOptions& ro = {}) {
    Json rep;
    rep["conventions"] = conventions_version();
    rep["config_hash"] = config_hash(c);
    WeightedProjSpace X(c.weights);
    Json inputs{{"mode", c.mode}, {"weights", c.weights}, {"degree", c.degree}, {"chain", c.chain}};
    Json betas = Json::array();
    for (auto& b : c.beta) betas.push_back(to_string(b));
    inputs["beta"] = betas;
    inputs["insertions"] = c.insertions;
    inputs["strict"] = c.strict;
    inputs["check_polynomiality"] = c.check_polynomiality;
    Json diag{{"well_formed", X.well_formed()}};
    if (c.degree > 0) {
        auto gc = gorenstein_check(X, c.degree);
        diag["gorenstein"] = gc.gorenstein;
        diag["non_dividing_weights"] = gc.offending;
    }
    Json results = Json::array();
    Json timing = Json::object();
    try {
        auto sp = resolve_specialization(c);
        Json pj = Json::array();
        for (auto& x : sp.p) pj.push_back(to_string(x));
        inputs["specialization"] = pj;
        inputs["specialization_source"] = sp.source;
        Target T{X, c.degree > 0, c.degree};
        Engine E(T, sp.p, {});
        Json dir = Json::array();
        for (auto& x : E.direction()) dir.push_back(to_string(x));
        inputs["perturbation_direction"] = dir;
        std::unique_ptr<std::ofstream> trace;
        if (!ro.trace_path.empty()) {
            trace = std::make_unique<std::ofstream>(ro.trace_path);
            if (!*trace) throw MalformedInput("cannot open trace file " + ro.trace_path);
        }
        RunOptions r2 = ro;
        r2.dump_graphs = ro.dump_graphs || c.dump_graphs;
        for (auto& b : c.beta) {
            BetaRun br = run_beta(c, E, b, r2, trace.get());
            results.push_back(br.row);
            timing[to_string(b)] = br.seconds;
        }
    } catch (const std::exception& e) {
        diag["error"] = error_json(e);
    }
    long errors = 0, fails = 0;
    for (auto& r : results) {
        if (r["status"] == "error") ++errors;
        if (r.contains("polynomiality") && r["polynomiality"] == "fail") ++fails;
    }
    diag["rows_with_errors"] = errors;
    diag["polynomiality_failures"] = fails;
    rep["inputs"] = inputs;
    rep["results"] = results;
    rep["diagnostics"] = diag;
    rep["timestamp"] = {{"utc", utc_now()}, {"runtime_seconds", timing}};
    return rep;
}

inline Json classify_json(const ScanRow& r) {
    Json j{{"weights", r.w}, {"degree", r.d}};
    if (!r.ok) {
        j["status"] = "error";
        j["error"] = r.error;
        return j;
    }
    j["status"] = "ok";
    j["gorenstein"] = r.gorenstein;
    j["chain"] = r.chain;
    j["invertible"] = r.invertible;
    j["loop"] = r.loop;
    Json ds = Json::array();
    for (auto& D : r.decompositions) {
        Json bs = Json::array();
        for (auto& b : D.blocks)
            bs.push_back({{"kind", b.kind == BlockKind::Chain ? "chain" : "loop"}, {"vars", b.idx}, {"exponents", b.a}});
        ds.push_back(bs);
    }
    j["decompositions"] = ds;
    return j;
}

// "w1,...,wN;d" rows; blank lines and # comments skipped
inline std::vector<std::pair<std::vector<long>, long>> parse_rows(std::istream& in) {
    std::vector<std::pair<std::vector<long>, long>> rows;
    std::vector<ConfigError> errs;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = line.substr(0, line.find('#'));
        size_t lead;
        line = detail::trim(line, lead);
        if (line.empty()) continue;
        auto semi = line.find(';');
        if (semi == std::string::npos) {
            errs.push_back({lineno, 1, "expected w1,...,wN;d"});
            continue;
        }
        std::vector<long> w;
        bool ok = true;
        std::stringstream ws(line.substr(0, semi));
        std::string item;
        while (std::getline(ws, item, ',')) {
            try {
                size_t pos;
                w.push_back(std::stol(item, &pos));
                if (detail::trim(item.substr(pos), lead) != "") throw std::invalid_argument("");
            } catch (...) {
                errs.push_back({lineno, 1, "bad weight '" + item + "'"});
                ok = false;
            }
        }
        long d = 0;
        try {
            d = std::stol(line.substr(semi + 1));
        } catch (...) {
            errs.push_back({lineno, (int)semi + 2, "bad degree"});
            ok = false;
        }
        if (ok) rows.push_back({w, d});
    }
    if (!errs.empty()) throw ConfigParseError(errs);
    return rows;
}

} // namespace gw
