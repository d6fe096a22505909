#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <thread>

#include "CLI11.hpp"
#include "spiegel/errors.hpp"
#include "spiegel/report.hpp"
#include "spiegel/spiegel.hpp"
#include "spiegel/tower.hpp"

namespace fs = std::filesystem;
using namespace spiegel;

namespace {

std::mutex log_mu;

void log_line(const std::string& s) {
    std::lock_guard<std::mutex> lk(log_mu);
    std::cerr << s << std::endl;
}

struct Options {
    unsigned q = 0;
    std::string p_poly;
    unsigned degree = 0;
    bool all_primes = false;
    unsigned norm_bound = 0;
    std::uint64_t witness_bound = 400000;
    std::string format = "json";
    unsigned jobs = 1;
    std::uint64_t seed = 1;
    unsigned probes = 100;
    std::string out;
    bool quiet = false;
};

std::string render(const SpiegelReport& r, const std::string& format) {
    return format == "md" ? render_markdown(r) : render_json(r);
}

std::string file_stem(const SpiegelReport& r) {
    std::string s;
    for (char c : r.p_poly) s += (c == '^' || c == '*' || c == '+') ? '_' : c;
    return "spiegel_q" + std::to_string(r.q) + "_" + s;
}

void write_report(const SpiegelReport& r, const Options& o) {
    fs::create_directories(o.out);
    const fs::path path = fs::path(o.out) / (file_stem(r) + (o.format == "md" ? ".md" : ".json"));
    std::ofstream f(path, std::ios::binary);
    f << render(r, o.format);
    if (!f) throw std::runtime_error("cannot write " + path.string());
}

RunConfig make_config(const Options& o, std::string p_poly) {
    RunConfig c;
    c.q = o.q;
    c.p_poly = std::move(p_poly);
    c.norm_bound = o.norm_bound;
    c.witness_bound = o.witness_bound;
    c.seed = o.seed;
    c.probes = o.probes;
    if (!o.quiet) {
        const std::string tag = "[q=" + std::to_string(o.q) + " " + c.p_poly + "] ";
        const auto t0 = std::chrono::steady_clock::now();
        c.progress = [tag, t0](const std::string& stage) {
            const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
            log_line(tag + stage + " (" + std::to_string(ms.count()) + " ms)");
        };
    }
    return c;
}

int cmd_verify(const Options& o) {
    const SpiegelReport r = run_spiegel(make_config(o, o.p_poly));
    if (o.out.empty())
        std::cout << render(r, o.format);
    else
        write_report(r, o);
    if (!r.passed()) log_line(r.failure_message);
    return exit_code(r);
}

std::vector<std::string> primes_of_degree(unsigned q, unsigned d) {
    const PolyRing A(FiniteField::from_desc(standard_field(q)));
    std::vector<std::string> out;
    for (const Poly& P : A.irreducibles(d)) out.push_back(format_poly(A.field(), P));
    return out;
}

int cmd_scan(const Options& o) {
    if (o.degree == 0) throw SpiegelError(ErrorKind::InvalidInput, "scan needs --degree >= 1");
    // validates q, d and the size bound before any work starts
    FieldDesc desc;
    try {
        desc = standard_field(o.q);
    } catch (const std::exception& e) {
        throw SpiegelError(ErrorKind::InvalidInput, e.what());
    }
    const auto primes = primes_of_degree(o.q, o.degree);
    {
        const PolyRing A(FiniteField::from_desc(desc));
        Tower::build(o.q, parse_poly(A.field(), primes.front()));
    }

    std::vector<SpiegelReport> reports(primes.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < primes.size();) {
            reports[i] = run_spiegel(make_config(o, primes[i]));
            log_line("[q=" + std::to_string(o.q) + " " + primes[i] + "] " + reports[i].status);
        }
    };
    const unsigned jobs = std::max(1u, std::min<unsigned>(o.jobs, static_cast<unsigned>(primes.size())));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    int code = 0;
    for (const auto& r : reports) {
        code = std::max(code, exit_code(r));
        if (!o.out.empty()) write_report(r, o);
    }
    if (o.format == "md") {
        std::cout << "| P | status | units | pic_p | ker_alpha | coker_alpha |\n|---|---|---|---|---|---|\n";
        auto cell = [](const SpiegelReport& r, const char* key) {
            auto it = r.dims.find(key);
            if (it == r.dims.end()) return std::string("-");
            std::string s;
            for (unsigned v : it->second) s += std::to_string(v);
            return s;
        };
        for (const auto& r : reports)
            std::cout << "| " << r.p_poly << " | " << r.status << " | " << cell(r, "units") << " | " << cell(r, "pic_p")
                      << " | " << cell(r, "ker_alpha") << " | " << cell(r, "coker_alpha") << " |\n";
    } else {
        nlohmann::ordered_json summary = nlohmann::ordered_json::array();
        for (const auto& r : reports) {
            const auto j = to_json(r);
            summary.push_back({{"p_poly", r.p_poly},
                               {"status", r.status},
                               {"exit_code", exit_code(r)},
                               {"dims", j["dims"]},
                               {"verdicts", j["verdicts"]}});
        }
        nlohmann::ordered_json top{{"q", o.q}, {"degree", o.degree}, {"seed", o.seed}, {"primes", primes.size()},
                                   {"summary", summary}};
        std::cout << top.dump(2) << "\n";
    }
    return code;
}

void add_common(CLI::App* c, Options& o) {
    c->add_option("--q", o.q, "Size of the constant field")->required()->check(CLI::PositiveNumber);
    c->add_option("--norm-bound", o.norm_bound, "Class group factor-base norm degree bound (0 = automatic)");
    c->add_option("--witness-bound", o.witness_bound, "Cap on relation-search candidates")->check(CLI::PositiveNumber);
    c->add_option("--format", o.format, "Report format")->check(CLI::IsMember({"json", "md"}));
    c->add_option("--seed", o.seed, "Seed for random probes");
    c->add_option("--probes", o.probes, "Number of Cartier probes")->check(CLI::PositiveNumber);
    c->add_option("--out", o.out, "Directory for report files (default $SPIEGEL_OUT, else stdout)");
    c->add_flag("--quiet", o.quiet, "No progress log on stderr");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cyclicity checks for Carlitz cyclotomic towers"};
    app.require_subcommand(1);
    Options o;
    if (const char* env = std::getenv("SPIEGEL_OUT")) o.out = env;

    auto* verify = app.add_subcommand("verify", "Run the pipeline for one prime, or all primes of a degree");
    add_common(verify, o);
    auto* pp = verify->add_option("--p-poly", o.p_poly, "Monic irreducible P, e.g. \"T^3+T+1\"");
    auto* vd = verify->add_option("--degree", o.degree, "Degree of P (with --all-primes)");
    auto* ap = verify->add_flag("--all-primes", o.all_primes, "Run every monic irreducible of --degree");
    ap->needs(vd);
    pp->excludes(ap);
    verify->add_option("--jobs", o.jobs, "Parallel pipelines")->check(CLI::PositiveNumber);

    auto* scan = app.add_subcommand("scan", "Run all monic irreducible P of a degree");
    add_common(scan, o);
    scan->add_option("--degree", o.degree, "Degree of P")->required();
    scan->add_flag("--all-primes", o.all_primes, "Accepted for symmetry with verify");
    scan->add_option("--jobs", o.jobs, "Parallel pipelines")->check(CLI::PositiveNumber);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : kUsageExit;
    }
    try {
        if (*scan || o.all_primes) return cmd_scan(o);
        if (o.p_poly.empty()) {
            std::cerr << "verify needs --p-poly or --degree with --all-primes\n";
            return kUsageExit;
        }
        return cmd_verify(o);
    } catch (const SpiegelError& e) {
        std::cerr << e.what() << "\n";
        const bool usage = e.kind() == ErrorKind::InvalidInput || e.kind() == ErrorKind::SizeBound;
        return usage ? kUsageExit : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
