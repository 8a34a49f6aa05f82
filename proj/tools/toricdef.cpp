#include "toricdef/report.hpp"
#include "toricdef/svg.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <numeric>
#include <thread>

using namespace toricdef;
using nlohmann::json;

namespace {

struct ScanRow {
    long long n = 0, q = 0;
    int e = 0;
    long long k_count = 0, deformations = 0, smoothings = 0;
    bool t_singularity = false;
    std::string error;
    friend bool operator<(const ScanRow& a, const ScanRow& b) { return std::tie(a.n, a.q) < std::tie(b.n, b.q); }
};
NLOHMANN_DEFINE_TYPE_NON_INTRUSIVE(ScanRow, n, q, e, k_count, deformations, smoothings, t_singularity, error)

ScanRow scan_one(long long n, long long q) {
    ScanRow row{n, q};
    try {
        auto m = cqs_new(n, q);
        row.e = m.e;
        row.k_count = static_cast<long long>(enumerate_K(m).size());
        row.t_singularity = is_t_singularity(m);
        for (const auto& dec : enum_decompositions(m)) {
            ++row.deformations;
            row.smoothings += is_smoothing(build_deformation(m, dec));
        }
    } catch (const std::exception& ex) {
        row.error = ex.what();
        std::cerr << "scan: (" << n << "," << q << ") failed: " << ex.what() << "\n";
    }
    return row;
}

unsigned thread_count() {
    if (const char* env = std::getenv("TORICDEF_THREADS")) {
        try {
            long v = std::stol(env);
            if (v >= 1) return static_cast<unsigned>(v);
        } catch (const std::exception&) {
        }
        throw InvalidInput(std::string("TORICDEF_THREADS must be a positive integer, got '") + env + "'");
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

std::pair<long long, long long> parse_range(const std::string& s) {
    auto colon = s.find(':');
    if (colon == std::string::npos) throw InvalidInput("range must look like A:B, got '" + s + "'");
    try {
        return {std::stoll(s.substr(0, colon)), std::stoll(s.substr(colon + 1))};
    } catch (const std::exception&) {
        throw InvalidInput("range must look like A:B, got '" + s + "'");
    }
}

std::vector<ScanRow> run_scan(long long a, long long b, const std::string& checkpoint) {
    std::map<std::pair<long long, long long>, ScanRow> done;
    if (!checkpoint.empty()) {
        std::ifstream in(checkpoint);
        for (std::string line; std::getline(in, line);) {
            if (line.empty()) continue;
            try {
                auto row = json::parse(line).get<ScanRow>();
                done[{row.n, row.q}] = row;
            } catch (const json::exception&) {
                std::cerr << "scan: ignoring unreadable checkpoint line\n";
            }
        }
    }
    std::vector<std::pair<long long, long long>> todo;
    std::vector<ScanRow> rows;
    for (long long n = std::max(a, 3LL); n <= b; ++n)
        for (long long q = 1; q < n - 1; ++q) {
            if (std::gcd(n, q) != 1) continue;
            auto it = done.find({n, q});
            if (it != done.end()) rows.push_back(it->second);
            else todo.push_back({n, q});
        }

    std::ofstream ck;
    if (!checkpoint.empty()) ck.open(checkpoint, std::ios::app);
    std::mutex mu;
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < todo.size();) {
            ScanRow row = scan_one(todo[i].first, todo[i].second);
            std::lock_guard lock(mu);
            if (ck.is_open()) ck << json(row).dump() << "\n" << std::flush;
            rows.push_back(std::move(row));
        }
    };
    std::vector<std::thread> pool;
    unsigned t = std::min<std::size_t>(thread_count(), std::max<std::size_t>(todo.size(), 1));
    for (unsigned i = 0; i < t; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    std::sort(rows.begin(), rows.end());
    return rows;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write " + path.string());
    out << body;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"toric one-parameter deformations of cyclic quotient singularities"};
    app.require_subcommand(1);

    long long n = 0, q = 0;
    bool as_json = false, verbose = false;
    std::string svg_dir;
    auto* analyze = app.add_subcommand("analyze", "full report for Y(n,q)");
    analyze->add_option("n", n)->required();
    analyze->add_option("q", q)->required();
    auto* j_opt = analyze->add_flag("--json", as_json, "emit the JSON document");
    analyze->add_option("--svg", svg_dir, "write segments, decompositions and slices figures to DIR");
    analyze->add_flag("--verbose", verbose, "include equations, versal maps, fans and nu counts")->excludes(j_opt);

    std::string range, checkpoint;
    bool scan_json = false, scan_csv = false;
    auto* scan = app.add_subcommand("scan", "summary table over a range of n");
    scan->add_option("--n-range", range, "A:B")->required();
    auto* sj = scan->add_flag("--json", scan_json);
    scan->add_flag("--csv", scan_csv)->excludes(sj);
    scan->add_option("--checkpoint", checkpoint, "resume from and append to FILE");

    std::string target, output;
    auto* fig = app.add_subcommand("figure", "SVG figure for Y(n,q)");
    fig->add_option("n", n)->required();
    fig->add_option("q", q)->required();
    fig->add_option("target", target, "segments | decompositions | slices")->required();
    fig->add_option("-o", output, "output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*analyze) {
            auto model = cqs_new(n, q);
            json doc = report::build_report(model);
            if (as_json) std::cout << doc.dump(2) << "\n";
            else std::cout << report::render_text(doc, verbose);
            if (!svg_dir.empty()) {
                std::filesystem::create_directories(svg_dir);
                for (const char* t : {"segments", "decompositions", "slices"})
                    write_file(std::filesystem::path(svg_dir) / (std::string(t) + ".svg"), svg::figure(model, t));
            }
        } else if (*scan) {
            auto [a, b] = parse_range(range);
            auto rows = run_scan(a, b, checkpoint);
            if (scan_json) {
                std::cout << json{{"schema_version", report::kSchemaVersion}, {"rows", rows}}.dump(2) << "\n";
            } else {
                const char* sep = scan_csv ? "," : "\t";
                std::cout << "n" << sep << "q" << sep << "e" << sep << "K" << sep << "deformations" << sep << "smoothings"
                          << sep << "t_singularity" << sep << "error\n";
                for (const auto& r : rows)
                    std::cout << r.n << sep << r.q << sep << r.e << sep << r.k_count << sep << r.deformations << sep
                              << r.smoothings << sep << (r.t_singularity ? 1 : 0) << sep << r.error << "\n";
            }
        } else if (*fig) {
            write_file(output, svg::figure(cqs_new(n, q), target));
        }
    } catch (const HypersurfaceInput& e) {
        std::cerr << "hypersurface: " << e.what() << "\n";
        return 1;
    } catch (const InvalidInput& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 1;
    } catch (const InvariantViolation& e) {
        std::cerr << "internal error: invariant violated: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
