// gw: command-line front end
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gw/report.hpp"

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw gw::MalformedInput("cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int cmd_compute(const std::string& cfg, bool dump, const std::string& trace, bool canonical) {
    gw::JobConfig c = gw::parse_config(slurp(cfg));
    if (canonical) {
        std::cout << gw::canonical_config(c);
        return 0;
    }
    gw::RunOptions ro;
    ro.dump_graphs = dump;
    ro.trace_path = trace;
    if (dump && trace.empty()) ro.trace_path = "/dev/stderr";
    ro.cache_dir = gw::cache_dir_from_env();
    ro.log = &std::cerr;
    gw::Json rep = gw::run_job(c, ro);
    std::cout << rep.dump(2) << "\n";
    return rep["diagnostics"]["rows_with_errors"].get<long>() || rep["diagnostics"].contains("error") ? 1 : 0;
}

int cmd_classify(const std::string& input) {
    std::vector<std::pair<std::vector<long>, long>> rows;
    if (input.empty() || input == "-") {
        rows = gw::parse_rows(std::cin);
    } else {
        std::ifstream in(input);
        if (!in) throw gw::MalformedInput("cannot read " + input);
        rows = gw::parse_rows(in);
    }
    for (auto& r : gw::scan(rows)) std::cout << gw::classify_json(r).dump() << "\n";
    return 0;
}

int cmd_wdvv(int dmax) {
    for (auto& [d, n] : gw::wdvv_p2(dmax))
        std::cout << gw::Json{{"degree", d}, {"count", gw::to_string(n)}}.dump() << "\n";
    return 0;
}

int cmd_convex(const std::string& cfg, int runs, unsigned long seed) {
    gw::JobConfig c = gw::parse_config(slurp(cfg));
    gw::WeightedProjSpace X(c.weights);
    gw::Target T{X, c.degree > 0, c.degree};
    int rc = 0;
    for (auto& b : c.beta) {
        gw::Json row{{"beta", gw::to_string(b)}};
        try {
            auto R = gw::convex_invariant(T, b, c.insertions, runs, seed);
            row["status"] = "ok";
            row["invariant"] = gw::to_string(R.value);
            gw::Json sp = gw::Json::array();
            for (auto& p : R.specializations) {
                gw::Json one = gw::Json::array();
                for (auto& x : p) one.push_back(gw::to_string(x));
                sp.push_back(one);
            }
            row["specializations"] = sp;
            row["rejected_draws"] = R.rejected;
        } catch (const std::exception& e) {
            row["status"] = "error";
            row["error"] = gw::error_json(e);
            rc = 1;
        }
        std::cout << row.dump() << "\n";
    }
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"genus-zero invariants of weighted projective targets by torus localization"};
    app.require_subcommand(1);

    auto* compute = app.add_subcommand("compute", "evaluate the invariants described by a job file");
    std::string cfg, trace;
    bool dump = false, canonical = false;
    compute->add_option("-c,--config", cfg, "job file")->required();
    compute->add_flag("--dump-graphs", dump, "write every graph class to the trace");
    compute->add_option("--trace", trace, "JSON-lines trace of per-graph contributions");
    compute->add_flag("--canonical", canonical, "print the canonical job file and exit");

    auto* classify = app.add_subcommand("classify", "classify rows w1,...,wN;d");
    std::string input;
    classify->add_option("-i,--input", input, "row file, - for stdin");

    auto* oracle = app.add_subcommand("oracle", "independent reference computations");
    oracle->require_subcommand(1);
    auto* wdvv = oracle->add_subcommand("wdvv", "plane curve counts from the associativity recursion");
    int dmax = 5;
    wdvv->add_option("--dmax", dmax, "largest degree")->check(CLI::PositiveNumber);
    auto* convex = oracle->add_subcommand("convex", "Gorenstein targets at random specializations");
    int runs = 3;
    unsigned long seed = 20240601;
    std::string ccfg;
    convex->add_option("-c,--config", ccfg, "job file")->required();
    convex->add_option("--runs", runs, "number of random specializations");
    convex->add_option("--seed", seed, "random seed");

    CLI11_PARSE(app, argc, argv);
    try {
        if (*compute) return cmd_compute(cfg, dump, trace, canonical);
        if (*classify) return cmd_classify(input);
        if (*wdvv) return cmd_wdvv(dmax);
        if (*convex) return cmd_convex(ccfg, runs, seed);
    } catch (const gw::Error& e) {
        std::cerr << "gw: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
