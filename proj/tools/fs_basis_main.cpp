#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "fsb/enumerate.hpp"
#include "fsb/symcalc.hpp"
#include "fsb/tensor.hpp"
#include "fsb/verify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion =
#ifdef FSB_VERSION
    FSB_VERSION;
#else
    "dev";
#endif

int thread_budget(int flag_value) {
    if (flag_value > 0) return flag_value;
    if (const char* env = std::getenv("FS_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 1;
}

// Run jobs in a pool; results land at their original indices, so output
// order never depends on the thread count.
template <class Job>
void run_jobs(int threads, std::vector<Job>& jobs) {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            jobs[i]();
        }
    };
    if (threads <= 1 || jobs.size() <= 1) {
        worker();
        return;
    }
    std::vector<std::thread> pool;
    for (int t = 0; t < threads && t < static_cast<int>(jobs.size()); ++t)
        pool.emplace_back(worker);
    for (auto& th : pool) th.join();
}

struct Cache {
    fs::path dir;
    bool enabled = true;

    static Cache from_env(bool no_cache) {
        Cache c;
        c.enabled = !no_cache;
        const char* env = std::getenv("FS_CACHE_DIR");
        c.dir = fs::path(env ? env : ".fs-cache") / (std::string("v") + kVersion);
        return c;
    }
    std::optional<json> get(const std::string& key) const {
        if (!enabled) return std::nullopt;
        fs::path p = dir / (key + ".json");
        std::ifstream in(p);
        if (!in) return std::nullopt;
        try {
            json j;
            in >> j;
            return j;
        } catch (...) {
            return std::nullopt;
        }
    }
    void put(const std::string& key, const json& j) const {
        if (!enabled) return;
        std::error_code ec;
        fs::create_directories(dir, ec);
        std::ofstream out(dir / (key + ".json"));
        if (out) out << j.dump(2) << "\n";
    }
};

void write_output(const std::string& text, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

json span_to_json(const fsb::SpanReport& r) {
    json j;
    j["weight"] = r.weight;
    j["degree"] = r.degree;
    j["pbw_count"] = r.pbw_count;
    j["pbw_rank"] = r.pbw_rank;
    j["admissible_count"] = r.admissible_count;
    j["admissible_rank"] = r.admissible_rank;
    j["pass"] = r.pass;
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

json check_to_json(const fsb::CheckReport& r) {
    json j;
    j["name"] = r.name;
    j["checked"] = r.checked;
    j["failures"] = r.failures;
    j["pass"] = r.pass();
    if (!r.failure_notes.empty()) {
        json notes = json::array();
        std::size_t cap = std::min<std::size_t>(r.failure_notes.size(), 20);
        for (std::size_t i = 0; i < cap; ++i) notes.push_back(r.failure_notes[i]);
        j["failure_notes"] = notes;
    }
    return j;
}

json replay_to_json(const fsb::ReplayReport& r) {
    json j;
    j["weight"] = r.weight;
    j["degree"] = r.degree;
    j["checked"] = r.checked;
    j["kill_failures"] = r.kill_failures;
    j["unsupported"] = r.unsupported;
    j["residual_failures"] = r.residual_failures;
    j["pass"] = r.pass;
    return j;
}

std::vector<fsb::WeightSpec> default_weights(int ell, bool include_level2) {
    std::vector<fsb::WeightSpec> out;
    for (int i : {0, 1, ell - 1, ell}) out.push_back(fsb::WeightSpec::level1(ell, i));
    if (include_level2 && ell == 4) {
        std::vector<int> l1 = {0, 1, 3, 4};
        for (std::size_t a = 0; a < l1.size(); ++a)
            for (std::size_t b = a; b < l1.size(); ++b)
                out.push_back(fsb::WeightSpec::sum(4, l1[a], l1[b]));
        out.push_back(fsb::WeightSpec::fundamental(4, 2));
    }
    return out;
}

std::pair<int, int> parse_pair(const std::string& text, int ell) {
    auto comma = text.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("--pair expects L<i>,L<j>");
    fsb::WeightSpec a = fsb::WeightSpec::parse(ell, text.substr(0, comma));
    fsb::WeightSpec b = fsb::WeightSpec::parse(ell, text.substr(comma + 1));
    if (a.kind() != fsb::WeightSpec::Kind::Level1 || b.kind() != fsb::WeightSpec::Kind::Level1)
        throw std::invalid_argument("--pair expects level-1 weights");
    return {a.index(), b.index()};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact monomial-basis construction and verification for "
                 "Feigin-Stoyanovsky-type subspaces of D_ell modules"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    int rank = 4;
    std::string weight_text;
    int degree = -1;
    int max_degree = -1;
    std::string pair_text;
    std::string out_path;
    std::string json_path;
    std::string format = "json";
    int threads = 0;
    bool no_cache = false;

    app.add_option("--rank", rank, "rank ell of D_ell (>= 4)")->capture_default_str();
    app.add_option("--weight", weight_text, "weight spec: L<i>, L<i>+L<j>, or 2L<i>");
    app.add_option("--degree", degree, "single degree n");
    app.add_option("--max-degree", max_degree, "degrees 0..n");
    app.add_option("--pair", pair_text, "spinor pair, e.g. L3,L4");
    app.add_option("--out", out_path, "output file (default stdout)");
    app.add_option("--json", json_path, "JSON report file");
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--threads", threads, "worker pool size (default FS_THREADS or hardware)");
    app.add_flag("--no-cache", no_cache, "bypass the result cache");

    auto* cmd_enum = app.add_subcommand("enumerate", "admissible monomial counts per degree");
    auto* cmd_verify = app.add_subcommand("verify", "verification suites");
    std::string suite;
    cmd_verify->add_option("suite", suite, "span|relations|ic|current|replay|all")
        ->required()
        ->check(CLI::IsMember({"span", "relations", "ic", "current", "replay", "all"}));
    auto* cmd_hwv = app.add_subcommand("hwv", "solved level-2 highest weight vector support");
    auto* cmd_dec = app.add_subcommand("decompose", "top tensor-piece decomposition");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        fsb::LatticeContext ctx(rank);
        fsb::Cocycle eps(ctx);
        Cache cache = Cache::from_env(no_cache);
        int pool = thread_budget(threads);

        if (cmd_enum->parsed()) {
            if (weight_text.empty()) throw std::invalid_argument("--weight is required");
            fsb::WeightSpec w = fsb::WeightSpec::parse(rank, weight_text);
            if (w.kind() == fsb::WeightSpec::Kind::Fundamental && rank != 4)
                throw std::invalid_argument("unsupported: level-2 verification requires rank 4");
            int n = max_degree >= 0 ? max_degree : (degree >= 0 ? degree : 6);
            auto rows = fsb::graded_dimensions(ctx, w, n);
            if (format == "csv") {
                write_output(fsb::character_csv(rows), out_path);
            } else {
                json arr = json::array();
                for (const auto& r : rows) {
                    json j;
                    j["degree"] = r.degree;
                    j["count"] = r.count;
                    arr.push_back(j);
                }
                write_output(arr.dump(2) + "\n", out_path);
            }
            return 0;
        }

        if (cmd_hwv->parsed()) {
            if (rank != 4) throw std::invalid_argument(
                "unsupported: level-2 verification requires rank 4");
            fsb::WeightSpec w = weight_text.empty() ? fsb::WeightSpec::fundamental(rank, 2)
                                                    : fsb::WeightSpec::parse(rank, weight_text);
            if (w.kind() != fsb::WeightSpec::Kind::Fundamental)
                throw std::invalid_argument("hwv expects a fundamental level-2 weight");
            std::pair<int, int> pr = pair_text.empty()
                                         ? std::pair<int, int>{rank, rank}
                                         : parse_pair(pair_text, rank);
            fsb::TensorVector v = fsb::solve_hw(eps, w.index(), pr);
            json arr = json::array();
            for (const auto& [b, c] : v.terms()) {
                json j;
                std::ostringstream s1, s2, cs;
                s1 << b.slot1.lattice.str();
                s2 << b.slot2.lattice.str();
                cs << c;
                j["slot1"] = s1.str();
                j["slot2"] = s2.str();
                j["coeff"] = cs.str();
                arr.push_back(j);
            }
            write_output(arr.dump(2) + "\n", json_path.empty() ? out_path : json_path);
            return 0;
        }

        if (cmd_dec->parsed()) {
            std::pair<int, int> pr = pair_text.empty()
                                         ? std::pair<int, int>{rank - 1, rank}
                                         : parse_pair(pair_text, rank);
            auto mult = fsb::decompose_top(eps, pr);
            json arr = json::array();
            fsb::Int total = 0;
            for (const auto& [w, m] : mult) {
                json j;
                j["weight"] = w.str();
                j["multiplicity"] = m;
                fsb::Int dim = ctx.weyl_dimension(w);
                j["dim"] = dim.get_str();
                total += dim * m;
                arr.push_back(j);
            }
            json out;
            out["pair"] = "L" + std::to_string(pr.first) + ",L" + std::to_string(pr.second);
            out["summands"] = arr;
            out["total_dim"] = total.get_str();
            write_output(out.dump(2) + "\n", json_path.empty() ? out_path : json_path);
            return 0;
        }

        // verify
        bool all_pass = true;
        json results = json::array();
        std::mutex mu;

        auto add_result = [&](const json& j, bool pass) {
            std::scoped_lock lk(mu);
            results.push_back(j);
            all_pass = all_pass && pass;
        };

        auto run_span = [&](const std::vector<fsb::WeightSpec>& ws, int nmax) {
            struct Item {
                fsb::WeightSpec w;
                int n;
                json j;
                bool pass = false;
                Item(fsb::WeightSpec w_, int n_) : w(std::move(w_)), n(n_) {}
            };
            std::vector<Item> items;
            for (const auto& w : ws)
                for (int n = 0; n <= nmax; ++n) items.emplace_back(w, n);
            std::vector<std::function<void()>> jobs;
            for (Item& it : items)
                jobs.emplace_back([&it, &ctx, &eps, &cache] {
                    std::string key = "span_r" + std::to_string(ctx.ell()) + "_" + it.w.str() +
                                      "_d" + std::to_string(it.n);
                    if (auto hit = cache.get(key)) {
                        it.j = *hit;
                        it.pass = it.j.value("pass", false);
                        return;
                    }
                    fsb::SpanReport r = fsb::span_report(eps, it.w, it.n);
                    it.j = span_to_json(r);
                    it.pass = r.pass;
                    cache.put(key, it.j);
                });
            run_jobs(pool, jobs);
            for (Item& it : items) add_result(it.j, it.pass);
        };

        int nmax_default = max_degree >= 0 ? max_degree : (degree >= 0 ? degree : -1);

        if (suite == "span" || suite == "all") {
            if (!weight_text.empty() && suite == "span") {
                fsb::WeightSpec w = fsb::WeightSpec::parse(rank, weight_text);
                if (w.level() == 2 && rank != 4)
                    throw std::invalid_argument(
                        "unsupported: level-2 verification requires rank 4");
                int lo = degree >= 0 && max_degree < 0 ? degree : 0;
                int hi = degree >= 0 && max_degree < 0
                             ? degree
                             : (nmax_default >= 0 ? nmax_default : (w.level() == 1 ? 6 : 4));
                std::vector<std::function<void()>> jobs;
                std::vector<std::pair<json, bool>> slots(static_cast<std::size_t>(hi - lo + 1));
                for (int n = lo; n <= hi; ++n)
                    jobs.emplace_back([&, n] {
                        std::string key = "span_r" + std::to_string(ctx.ell()) + "_" + w.str() +
                                          "_d" + std::to_string(n);
                        if (auto hit = cache.get(key)) {
                            slots[static_cast<std::size_t>(n - lo)] = {*hit,
                                                                       hit->value("pass", false)};
                            return;
                        }
                        fsb::SpanReport r = fsb::span_report(eps, w, n);
                        slots[static_cast<std::size_t>(n - lo)] = {span_to_json(r), r.pass};
                        cache.put(key, slots[static_cast<std::size_t>(n - lo)].first);
                    });
                run_jobs(pool, jobs);
                for (auto& [j, p] : slots) add_result(j, p);
            } else {
                int hi1 = nmax_default >= 0 ? nmax_default : 6;
                run_span(default_weights(rank, false), hi1);
                if (rank == 4) {
                    int hi2 = nmax_default >= 0 ? std::min(nmax_default, 4) : 4;
                    std::vector<fsb::WeightSpec> l2;
                    for (const auto& w : default_weights(rank, true))
                        if (w.level() == 2) l2.push_back(w);
                    run_span(l2, hi2);
                }
            }
        }
        if (suite == "relations" || suite == "all") {
            int nmax = nmax_default >= 0 ? nmax_default : 6;
            fsb::CheckReport r1 = fsb::check_relations_level1(eps, nmax);
            add_result(check_to_json(r1), r1.pass());
            fsb::CheckReport r2 = fsb::check_relations_level2(eps, nmax);
            add_result(check_to_json(r2), r2.pass());
        }
        if (suite == "ic" || suite == "all") {
            std::vector<fsb::WeightSpec> ws;
            if (!weight_text.empty() && suite == "ic")
                ws.push_back(fsb::WeightSpec::parse(rank, weight_text));
            else
                ws = default_weights(rank, true);
            for (const auto& w : ws) {
                fsb::CheckReport r = fsb::check_ic_identities(eps, w);
                add_result(check_to_json(r), r.pass());
            }
        }
        if (suite == "current" || suite == "all") {
            int nmax = nmax_default >= 0 ? nmax_default : 6;
            fsb::CheckReport r = fsb::check_simple_current(eps, nmax);
            add_result(check_to_json(r), r.pass());
        }
        if (suite == "replay" || suite == "all") {
            std::vector<std::pair<fsb::WeightSpec, int>> items;
            if (!weight_text.empty() && suite == "replay") {
                fsb::WeightSpec w = fsb::WeightSpec::parse(rank, weight_text);
                int hi = degree >= 0 ? degree
                                     : (nmax_default >= 0 ? nmax_default : (w.level() == 1 ? 5 : 3));
                int lo = degree >= 0 ? degree : 0;
                for (int n = lo; n <= hi; ++n) items.emplace_back(w, n);
            } else {
                for (const auto& w : default_weights(rank, false))
                    for (int n = 0; n <= (nmax_default >= 0 ? nmax_default : 5); ++n)
                        items.emplace_back(w, n);
                if (rank == 4) {
                    for (const auto& w : {fsb::WeightSpec::sum(4, 0, 0), fsb::WeightSpec::sum(4, 3, 4),
                                          fsb::WeightSpec::fundamental(4, 2)})
                        for (int n = 0; n <= (nmax_default >= 0 ? std::min(nmax_default, 3) : 3); ++n)
                            items.emplace_back(w, n);
                }
            }
            for (const auto& [w, n] : items) {
                fsb::ReplayReport r = w.level() == 1 ? fsb::replay_level1(ctx, w, n)
                                                     : fsb::replay_level2_D4(ctx, w, n);
                add_result(replay_to_json(r), r.pass);
            }
        }

        std::string text = results.dump(2) + "\n";
        write_output(text, json_path.empty() ? out_path : json_path);
        return all_pass ? 0 : 1;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
