// kummer_rt - screening, seed certification, pipeline runs and orbit tables.
#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "kummer/pipeline.hpp"

namespace fs = std::filesystem;
using namespace kummer;

namespace {

enum Exit { kOk = 0, kUsage = 2, kSeed = 3, kCertify = 4, kPipeline = 5, kBatch = 6 };

struct StageError : std::runtime_error {
    StageError(std::string stage, const std::string& what, int code)
        : std::runtime_error(what), stage(std::move(stage)), code(code) {}
    std::string stage;
    int code;
};

struct Options {
    std::string data;
    int trials = 20;
    std::string format = "table";
    int jobs = 1;
};

// --data may name a seed file or a directory of seed files; KUMMER_CACHE_DIR is the fallback directory.
std::string resolve_seed(const Options& o, const TripleParams& t) {
    std::string where = o.data;
    if (where.empty())
        if (const char* env = std::getenv("KUMMER_CACHE_DIR")) where = env;
    if (where.empty())
        throw StageError("certify", "certification required: no seed data given for " + t.label() +
                                        " (pass --data or set KUMMER_CACHE_DIR)",
                         kCertify);
    fs::path path = fs::is_directory(where) ? fs::path(where) / seed_filename(t) : fs::path(where);
    if (!fs::exists(path))
        throw StageError("certify", "certification required: seed file " + path.string() + " not found", kCertify);
    return path.string();
}

SeedData load(const std::string& path) {
    try {
        return load_seed(path);
    } catch (const SeedError& e) {
        throw StageError("seed", e.what(), kSeed);
    }
}

CertReport certify_or_throw(const SeedData& s, int trials) {
    CertReport c = certify_seed(s, trials);
    if (!c.certified)
        throw StageError("certify", "seed for " + s.params.label() + " refuted: " + c.witness->str(), kCertify);
    return c;
}

PipelineReport run_one(const Options& o, const TripleParams& t) {
    SeedData seed = load(resolve_seed(o, t));
    if (seed.params.p != t.p || seed.params.ell0 != t.ell0 || seed.params.ell1 != t.ell1)
        throw StageError("seed", "seed file is for " + seed.params.label() + ", not " + t.label(), kSeed);
    certify_or_throw(seed, o.trials);
    try {
        return run_pipeline(seed);
    } catch (const PipelineError& e) {
        throw StageError("pipeline:" + e.stage, e.what(), kPipeline);
    }
}

std::vector<TripleParams> read_batch(const std::string& file) {
    std::ifstream in(file);
    if (!in) throw StageError("batch", "cannot open " + file, kUsage);
    std::vector<TripleParams> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream is(line);
        TripleParams t;
        if (!(is >> t.p)) continue;
        if (!(is >> t.ell0 >> t.ell1))
            throw StageError("batch", file + ":" + std::to_string(lineno) + ": expected p ell0 ell1", kUsage);
        out.push_back(t);
    }
    return out;
}

void print_report(const Options& o, const PipelineReport& r) {
    if (o.format == "json")
        std::cout << report_to_json(r).dump(1) << "\n";
    else
        std::cout << table_header() << "\n" << table_row(r) << "\n";
}

int cmd_screen(const Options& o, u64 p, u64 ell0_max, u64 ell1_max) {
    nlohmann::json rows = nlohmann::json::array();
    if (o.format == "table") std::cout << "  p  ell0  ell1  p_in_K  zeta'_MT\n";
    for (u64 l0 = 2; l0 <= ell0_max; ++l0) {
        if (!is_prime(l0) || l0 % p != 1) continue;
        for (u64 l1 = 2; l1 <= ell1_max; ++l1) {
            if (!is_prime(l1)) continue;
            TripleParams t{p, l0, l1};
            AssumptionReport a = check_assumptions(t);
            if (!a.ok()) continue;
            const char* ram = to_string(tame_or_wild(p, l1));
            if (o.format == "json")
                rows.push_back({{"p", p}, {"ell0", l0}, {"ell1", l1}, {"p_in_K", ram}, {"zeta_mt", a.zeta_mt}});
            else
                std::cout << std::setw(3) << p << std::setw(6) << l0 << std::setw(6) << l1 << std::setw(8) << ram
                          << std::setw(10) << a.zeta_mt << "\n";
        }
    }
    if (o.format == "json") std::cout << rows.dump(1) << "\n";
    return kOk;
}

int cmd_run(const Options& o, const TripleParams& t) {
    print_report(o, run_one(o, t));
    return kOk;
}

int cmd_batch(const Options& o, const std::string& file) {
    auto triples = read_batch(file);
    std::vector<std::optional<PipelineReport>> reports(triples.size());
    std::vector<std::string> errors(triples.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t k; (k = next++) < triples.size();) {
            try {
                reports[k] = run_one(o, triples[k]);
            } catch (const StageError& e) {
                errors[k] = "[" + e.stage + "] " + e.what();
            } catch (const std::exception& e) {
                errors[k] = std::string("[internal] ") + e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < std::max(1, o.jobs); ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();

    bool failed = false;
    nlohmann::json arr = nlohmann::json::array();
    if (o.format == "table") std::cout << table_header() << "\n";
    for (size_t k = 0; k < triples.size(); ++k) {
        if (!reports[k]) {
            failed = true;
            std::cerr << triples[k].label() << ": " << errors[k] << "\n";
            if (o.format == "json")
                arr.push_back({{"params", {{"p", triples[k].p}, {"ell0", triples[k].ell0}, {"ell1", triples[k].ell1}}},
                               {"error", errors[k]}});
            continue;
        }
        if (o.format == "json")
            arr.push_back(report_to_json(*reports[k]));
        else
            std::cout << table_row(*reports[k]) << "\n";
    }
    if (o.format == "json") std::cout << arr.dump(1) << "\n";
    return failed ? kBatch : kOk;
}

int cmd_certify(const Options& o, const std::string& path) {
    SeedData seed = load(path);
    CertReport c = certify_seed(seed, o.trials);
    if (o.format == "json") {
        nlohmann::json j = {{"params", {{"p", seed.params.p}, {"ell0", seed.params.ell0}, {"ell1", seed.params.ell1}}},
                            {"certified", c.certified},
                            {"trials", c.trials},
                            {"passed", c.passed},
                            {"heuristic_error", c.heuristic_error}};
        if (c.witness) j["witness"] = c.witness->str();
        std::cout << j.dump(1) << "\n";
    } else {
        std::cout << seed.params.label() << ": " << (c.certified ? "certified" : "REFUTED") << " (" << c.trials
                  << " trials, error <= " << c.heuristic_error << ")\n";
        for (const auto& s : c.passed) std::cout << "  ok  " << s << "\n";
        if (c.witness) std::cout << "  witness  " << c.witness->str() << "\n";
    }
    if (!c.certified) throw StageError("certify", "seed refuted: " + c.witness->str(), kCertify);
    return kOk;
}

int cmd_orbits(const Options& o, u64 p) {
    if (!is_prime(p) || p < 3 || p > 13) throw StageError("orbits", "p must be an odd prime <= 13", kUsage);
    if (o.format == "json") {
        nlohmann::json rows = nlohmann::json::array();
        auto lines = enumerate_line_orbits(p);
        auto planes = enumerate_plane_orbits(p);
        for (size_t k = 0; k < lines.size(); ++k)
            rows.push_back({{"label", std::string(1, lines[k].label)},
                            {"line_size", lines[k].size()},
                            {"plane_size", planes[k].size()},
                            {"stabilizer", lines[k].stabilizer_order},
                            {"line_rep", lines[k].representative},
                            {"plane_rep", planes[k].representative}});
        std::cout << nlohmann::json{{"p", p}, {"duality", duality_bijection(p)}, {"orbits", rows}}.dump(1) << "\n";
    } else {
        std::cout << orbit_table(p);
        std::string why;
        std::cout << "duality: " << (duality_bijection(p, &why) ? "bijection" : "FAILED " + why) << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kummer-theoretic verification of Eisenstein deformation conditions"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--data", o.data, "seed file or directory of seed files");
    app.add_option("--trials", o.trials, "auxiliary primes per certification check")->check(CLI::PositiveNumber);
    app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"json", "table"}));
    app.add_option("--jobs", o.jobs, "batch worker threads")->check(CLI::PositiveNumber);

    u64 p = 0, ell0 = 0, ell1 = 0, ell0_max = 100, ell1_max = 1000;
    std::string path;

    auto* screen = app.add_subcommand("screen", "list triples satisfying the standing assumptions");
    screen->add_option("p", p)->required();
    screen->add_option("ell0_max", ell0_max);
    screen->add_option("ell1_max", ell1_max);

    auto* run = app.add_subcommand("run", "run the pipeline on one certified triple");
    run->add_option("p", p)->required();
    run->add_option("ell0", ell0)->required();
    run->add_option("ell1", ell1)->required();

    auto* batch = app.add_subcommand("batch", "run a file of triples (one 'p ell0 ell1' per line)");
    batch->add_option("file", path)->required()->check(CLI::ExistingFile);

    auto* certify = app.add_subcommand("certify", "certify a seed file");
    certify->add_option("seed", path)->required()->check(CLI::ExistingFile);

    auto* orbits = app.add_subcommand("orbits", "Borel orbit table on lines and planes");
    orbits->add_option("p", p)->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*screen) return cmd_screen(o, p, ell0_max, ell1_max);
        if (*run) return cmd_run(o, {p, ell0, ell1});
        if (*batch) return cmd_batch(o, path);
        if (*certify) return cmd_certify(o, path);
        if (*orbits) return cmd_orbits(o, p);
    } catch (const StageError& e) {
        std::cerr << "[" << e.stage << "] " << e.what() << "\n";
        return e.code;
    } catch (const std::exception& e) {
        std::cerr << "[internal] " << e.what() << "\n";
        return kPipeline;
    }
    return kUsage;
}
