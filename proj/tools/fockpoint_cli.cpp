// Copyright 2026 The fockpoint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "fockpoint/errors.hpp"
#include "fockpoint/io.hpp"
#include "fockpoint/matrix_functions.hpp"
#include "fockpoint/moments.hpp"
#include "fockpoint/sampling.hpp"

using namespace fockpoint;

namespace {

constexpr int kExitFailedCheck = 1;
constexpr int kExitInvalid = 2;

std::uint64_t default_seed() {
    if (const char* env = std::getenv("FOCKPOINT_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw ValidationError(std::string("FOCKPOINT_SEED is not an integer: ") + env);
        }
    }
    return 0;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) {
        throw ValidationError("cannot write '" + path + "'");
    }
    out << text;
}

// Runs tasks on up to `threads` workers; results keep task order.
std::vector<Report> run_tasks(const std::vector<std::function<Report()>>& tasks, int threads) {
    std::vector<Report> out(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(threads, tasks.size()));
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            for (std::size_t i = w; i < tasks.size(); i += workers) {
                try {
                    out[i] = tasks[i]();
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) {
        t.join();
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return out;
}

std::vector<Box> random_boxes(std::size_t sites, int n, std::uint64_t seed, std::uint64_t stream) {
    CounterEngine rng(seed, stream);
    std::vector<Box> boxes;
    for (int a = 0; a < n; ++a) {
        std::vector<std::size_t> members;
        while (members.empty()) {
            for (std::size_t s = 0; s < sites; ++s) {
                if (rng() & 1U) {
                    members.push_back(s);
                }
            }
        }
        boxes.emplace_back(std::move(members));
    }
    return boxes;
}

struct VerifyOptions {
    std::string rep_path;
    std::string matrix_path;
    std::string out_path;
    int orders = 3;
    double rtol = 1e-9;
    double atol = 1e-12;
    int threads = 1;
    std::uint64_t seed = 0;
};

Report verify_matrix(const std::string& path, Tolerance tol) {
    const ComplexMatrix a = matrix_from_json(read_json_file(path));
    if (a.rows() != a.cols() || a.imag().cwiseAbs().maxCoeff() != 0.0 ||
        (a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, a.cwiseAbs().maxCoeff())) {
        throw ValidationError("det2/hafnian cross-check needs a real symmetric square matrix");
    }
    std::vector<std::size_t> points(static_cast<std::size_t>(a.rows()));
    std::iota(points.begin(), points.end(), 0);
    Report r;
    r.add(make_check("det2_hafnian_crosscheck", det2(a), hafnian(hafnian_block_matrix(a, a, points)),
                     tol));
    return r;
}

Report verify_spectral(const Representation& rep) {
    Report r;
    const SpectralLaw law = joint_spectral_law(rep);
    const auto oracle = inclusion_exclusion_law(correlation_kernel(rep));
    double tv = 0.0;
    for (const auto& [s, p] : oracle) {
        tv += std::abs(p - law.probabilities.at(s));
    }
    tv *= 0.5;
    r.add(make_check("spectral_law/commutators", law.max_commutator, 0.0, {0.0, 1e-10}));
    r.add(make_check("spectral_law/pattern", law.max_pattern_deviation, 0.0,
                     {0.0, kSpectralPatternTol}));
    r.add(make_check("spectral_law/total_variation", tv, 0.0, {0.0, 1e-8}));
    return r;
}

int run_verify(const VerifyOptions& opt) {
    const Tolerance tol{opt.rtol, opt.atol};
    std::vector<std::function<Report()>> tasks;
    std::optional<Representation> base;
    if (!opt.rep_path.empty()) {
        base = build_representation(spec_from_json(read_json_file(opt.rep_path)));
    }
    if (base) {
        const Representation& rep = *base;
        const bool symmetric = rep.fock().statistics() == Statistics::kSymmetric;
        for (int n = 1; n <= opt.orders; ++n) {
            for (int k = 0; k < 4; ++k) {
                tasks.push_back([&rep, n, k, symmetric, tol, &opt]() {
                    const std::vector<Box> boxes =
                        k == 0 ? std::vector<Box>(n, Box::all(rep.sites()))
                               : random_boxes(rep.sites(), n, opt.seed,
                                              static_cast<std::uint64_t>(n * 16 + k));
                    const std::string tag = "/n" + std::to_string(n) + "/b" + std::to_string(k);
                    double nfact = 1.0;
                    for (int i = 2; i <= n; ++i) {
                        nfact *= i;
                    }
                    Report r;
                    const double prediction = kernel_prediction(rep, boxes);
                    if (symmetric) {
                        const int cap = moment_cap(rep.kind(), n);
                        const double theta = correlation_measure(rep.with_cap(cap), boxes);
                        const double wider = correlation_measure(rep.with_cap(cap + 2), boxes);
                        r.add(make_check("moment_kernel_identity" + tag, nfact * theta, prediction, tol));
                        r.add(make_check("cap_invariance" + tag, theta, wider, {1e-12, 1e-12}));
                    } else {
                        r.add(make_check("moment_kernel_identity" + tag,
                                         nfact * correlation_measure(rep, boxes), prediction, tol));
                    }
                    return r;
                });
            }
        }
        tasks.push_back([&rep, &opt]() {
            const int order = std::clamp(opt.orders, 4, 6);
            std::vector<OneParticleVector> trials;
            CounterEngine rng(opt.seed, 1000);
            std::normal_distribution<double> normal;
            for (int i = 0; i < order; ++i) {
                OneParticleVector v(static_cast<Eigen::Index>(rep.sites()));
                for (Eigen::Index s = 0; s < v.size(); ++s) {
                    v(s) = normal(rng);
                }
                trials.push_back(v);
            }
            Report r;
            for (Check c : gauge_quasifree_checks(rep, order, trials).checks) {
                c.name = "quasi_free/" + c.name;
                r.add(std::move(c));
            }
            return r;
        });
        if (is_car(rep.kind()) && rep.sites() <= static_cast<std::size_t>(kMaxSpectralSites)) {
            tasks.push_back([&rep]() { return verify_spectral(rep); });
        }
    }
    if (!opt.matrix_path.empty()) {
        const std::string path = opt.matrix_path;
        tasks.push_back([path, tol]() { return verify_matrix(path, tol); });
    }
    if (tasks.empty()) {
        throw ValidationError("verify needs --rep and/or --matrix");
    }
    Report report;
    for (const Report& r : run_tasks(tasks, opt.threads)) {
        report.append(r);
    }
    Json j = report_to_json(report);
    if (base) {
        j["kind"] = std::string(to_string(base->kind()));
    }
    write_text(opt.out_path, j.dump(2) + "\n");

    std::map<std::string, bool> groups;
    std::vector<std::string> order;
    for (const Check& c : report.checks) {
        const std::string group = c.name.substr(0, c.name.find('/'));
        if (!groups.contains(group)) {
            order.push_back(group);
            groups[group] = true;
        }
        groups[group] = groups[group] && c.pass;
    }
    for (const auto& g : order) {
        std::cerr << g << ": " << (groups[g] ? "pass" : "FAIL") << "\n";
    }
    return report.all_pass() ? 0 : kExitFailedCheck;
}

int run_sample(const std::string& rep_path, std::uint64_t seed, std::size_t count,
               const std::string& out_path, int threads) {
    const RepresentationSpec spec = spec_from_json(read_json_file(rep_path));
    const SampleBatch batch = sample_point_process(spec, seed, count, threads);
    std::ostringstream os;
    write_samples_csv(os, batch);
    write_text(out_path, os.str());
    return 0;
}

int run_estimate(const std::string& samples_path, const std::string& boxes_arg, int order) {
    std::ifstream in(samples_path);
    if (!in) {
        throw ValidationError("cannot open '" + samples_path + "'");
    }
    const SampleBatch batch = read_samples_csv(in);
    Json boxes_json;
    if (!boxes_arg.empty() && boxes_arg.front() == '[') {
        try {
            boxes_json = Json::parse(boxes_arg);
        } catch (const nlohmann::json::parse_error& e) {
            throw ValidationError(std::string("--boxes is not valid JSON: ") + e.what());
        }
    } else {
        boxes_json = read_json_file(boxes_arg);
    }
    const std::vector<Box> boxes = boxes_from_json(boxes_json);
    const Estimate e = estimate_correlations(batch, boxes, order);
    Json j = Json::object();
    j["order"] = order;
    j["replicas"] = batch.configs.size();
    j["estimate"] = e.value;
    j["stderr"] = e.stderr_value;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_matfn(const std::string& op, const std::string& matrix_path) {
    const ComplexMatrix a = matrix_from_json(read_json_file(matrix_path));
    Complex value;
    if (op == "per") {
        value = permanent(a);
    } else if (op == "haf") {
        value = hafnian(a);
    } else {
        value = det2(a);
    }
    std::cout << format_number(value.real()) << " " << format_number(value.imag()) << "\n";
    return 0;
}

int run_spectral(const std::string& rep_path, const std::string& out_path) {
    const Representation rep = build_representation(spec_from_json(read_json_file(rep_path)));
    const SpectralLaw law = joint_spectral_law(rep);
    const auto oracle = inclusion_exclusion_law(correlation_kernel(rep));
    Json table = Json::array();
    double tv = 0.0;
    for (const auto& [s, p] : law.probabilities) {
        Json row = Json::object();
        row["sites"] = s;
        row["probability"] = p;
        row["inclusion_exclusion"] = oracle.at(s);
        tv += std::abs(p - oracle.at(s));
        table.push_back(std::move(row));
    }
    Json j = Json::object();
    j["kind"] = std::string(to_string(rep.kind()));
    j["structural_ok"] = law.structural_ok;
    if (!law.structural_ok) {
        j["failure"] = law.failure;
    }
    j["max_commutator"] = law.max_commutator;
    j["max_pattern_deviation"] = law.max_pattern_deviation;
    j["total_variation"] = 0.5 * tv;
    j["law"] = std::move(table);
    write_text(out_path, j.dump(2) + "\n");
    return law.structural_ok ? 0 : kExitFailedCheck;
}

int run_bench(const std::string& op, int min_size, int max_size, int reps, std::uint64_t seed) {
    std::cout << "op,n,seconds\n";
    CounterEngine rng(seed, 0);
    std::normal_distribution<double> normal;
    auto random_matrix = [&](int n, bool symmetric) {
        ComplexMatrix a(n, n);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                a(i, j) = Complex(normal(rng), normal(rng));
            }
        }
        return symmetric ? ComplexMatrix(a + a.transpose()) : a;
    };
    auto time_it = [&](const std::string& name, int n, const std::function<Complex()>& f) {
        double best = INFINITY;
        volatile double sink = 0.0;
        for (int r = 0; r < reps; ++r) {
            const auto t0 = std::chrono::steady_clock::now();
            sink = sink + f().real();
            const auto t1 = std::chrono::steady_clock::now();
            best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
        }
        std::cout << name << "," << n << "," << format_number(best) << "\n";
    };
    for (int n = min_size; n <= max_size; ++n) {
        if (op == "per" || op == "both") {
            const ComplexMatrix a = random_matrix(n, false);
            time_it("per", n, [&] { return permanent(a); });
        }
        if ((op == "haf" || op == "both") && n % 2 == 0) {
            const ComplexMatrix a = random_matrix(n, true);
            time_it("haf", n, [&] { return hafnian(a); });
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"fockpoint: particle densities of quasi-free CAR/CCR representations and their "
                 "point processes"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    int threads = 1;

    VerifyOptions vopt;
    auto* verify = app.add_subcommand("verify", "Run the moment, quasi-free and spectral checks");
    verify->add_option("--rep", vopt.rep_path, "Representation spec JSON")->check(CLI::ExistingFile);
    verify->add_option("--matrix", vopt.matrix_path, "Real symmetric matrix for the det2/hafnian check")
        ->check(CLI::ExistingFile);
    verify->add_option("--orders", vopt.orders, "Highest correlation order")->check(CLI::Range(1, 6));
    verify->add_option("--rtol", vopt.rtol, "Relative tolerance")->check(CLI::PositiveNumber);
    verify->add_option("--atol", vopt.atol, "Absolute tolerance")->check(CLI::PositiveNumber);
    verify->add_option("--out", vopt.out_path, "Report path (default stdout)");

    std::string rep_path;
    std::string out_path;
    std::size_t count = 1000;
    auto* sample = app.add_subcommand("sample", "Draw configurations");
    sample->add_option("--rep", rep_path, "Representation spec JSON")->required()->check(CLI::ExistingFile);
    sample->add_option("--count", count, "Number of replicas")->check(CLI::PositiveNumber);
    sample->add_option("--out", out_path, "CSV path (default stdout)");

    std::string samples_path;
    std::string boxes_arg;
    int order = 1;
    auto* estimate = app.add_subcommand("estimate", "Estimate a correlation measure from samples");
    estimate->add_option("--samples", samples_path, "Sample CSV")->required()->check(CLI::ExistingFile);
    estimate->add_option("--boxes", boxes_arg, "Boxes as JSON text or file, e.g. [[0,1],[2]]")->required();
    estimate->add_option("--order", order, "Correlation order n")->required()->check(CLI::PositiveNumber);

    std::string op;
    std::string matrix_path;
    auto* matfn = app.add_subcommand("matfn", "Evaluate per, haf or det2 of a matrix");
    matfn->add_option("--op", op, "per | haf | det2")->required()->check(CLI::IsMember({"per", "haf", "det2"}));
    matfn->add_option("--matrix", matrix_path, "Matrix JSON")->required()->check(CLI::ExistingFile);

    auto* spectral = app.add_subcommand("spectral", "Joint spectral law of the site densities");
    spectral->add_option("--rep", rep_path, "Representation spec JSON")->required()->check(CLI::ExistingFile);
    spectral->add_option("--out", out_path, "Output path (default stdout)");

    std::string bench_op = "both";
    int bench_min = 2;
    int bench_max = 20;
    int bench_reps = 3;
    auto* bench = app.add_subcommand("bench", "Time per/haf and print CSV");
    bench->add_option("--op", bench_op, "per | haf | both")->check(CLI::IsMember({"per", "haf", "both"}));
    bench->add_option("--min", bench_min, "Smallest size")->check(CLI::Range(1, 20));
    bench->add_option("--max", bench_max, "Largest size")->check(CLI::Range(1, 20));
    bench->add_option("--reps", bench_reps, "Repetitions per size (best time kept)")->check(CLI::Range(1, 1000));

    for (auto* sub : {verify, sample, estimate, matfn, spectral, bench}) {
        sub->add_option("--seed", seed, "Seed (default $FOCKPOINT_SEED or 0)");
        sub->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1, 256));
    }

    try {
        seed = default_seed();
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalid;
    }

    try {
        if (*verify) {
            vopt.seed = seed;
            vopt.threads = threads;
            return run_verify(vopt);
        }
        if (*sample) {
            return run_sample(rep_path, seed, count, out_path, threads);
        }
        if (*estimate) {
            return run_estimate(samples_path, boxes_arg, order);
        }
        if (*matfn) {
            return run_matfn(op, matrix_path);
        }
        if (*spectral) {
            return run_spectral(rep_path, out_path);
        }
        if (*bench) {
            return run_bench(bench_op, bench_min, bench_max, bench_reps, seed);
        }
    } catch (const ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const DomainError& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const CapacityError& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFailedCheck;
    }
    return 0;
}
