#include <lowss/cli.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <lowss/coeftest.hpp>
#include <lowss/oracle.hpp>
#include <lowss/rng.hpp>
#include <lowss/solver_approx.hpp>
#include <lowss/solver_det.hpp>
#include <lowss/solver_rand.hpp>
#include <lowss/solver_tradeoff.hpp>

namespace lowss {

namespace {

SolveOutcome solve_kane_det(const SubsetSumInstance& inst) {
    // Coefficient test applied directly to the plain generating function
    // prod(1 + x^a_i): degree sum(a_i), coefficients below 2^n.
    const auto start = std::chrono::steady_clock::now();
    SolveOutcome out;
    const SubsetSumInstance norm = normalized(inst);
    u64 degree = 0;
    for (u64 a : norm.items) degree += a;
    if (norm.items.empty() || degree < norm.target) {
        out.answer = Answer::No;
    } else {
        Evaluator ev;
        ev.d = degree;
        ev.w = std::max<u64>(norm.items.size(), 1);
        ev.eval = [&norm](const FieldCtx& ctx, Fe x, SpaceMeter& meter) {
            ScopedWords live(&meter, 2 * ctx.words_per_element());
            Fe v = ctx.one();
            for (u64 a : norm.items)
                v = ctx.mul(v, ctx.add(ctx.one(), ctx.pow(x, a)));
            return v;
        };
        out.answer =
            coeff_test_deterministic(ev, CoeffQuery::point(norm.target), out.meter);
    }
    out.wallTime = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - start);
    return out;
}

SolveOutcome solve_bellman(const SubsetSumInstance& inst) {
    const auto start = std::chrono::steady_clock::now();
    SolveOutcome out;
    out.answer = dp_oracle(inst, &out.meter);
    out.wallTime = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - start);
    return out;
}

SolveOutcome solve_wssap_outcome(const SubsetSumInstance& inst, const SolveRequest& req) {
    const auto start = std::chrono::steady_clock::now();
    SolveOutcome out;
    WssapQuery q{inst, req.epsNum, req.epsDen};
    out.answer = solve_wssap(q, req.seed);
    out.randomBitsUsed = 0;  // tracked inside the reductions' seed packs
    out.wallTime = std::chrono::duration_cast<std::chrono::microseconds>(
        std::chrono::steady_clock::now() - start);
    return out;
}

std::string extended_csv_row(const std::string& algo, const SubsetSumInstance& inst,
                             const SolveRequest& req, const SolveOutcome& out) {
    // bench schema: algo,n,t,k,eps,answer,seedBitsUsed,peakWords,wallTimeMicros
    std::ostringstream os;
    os << algo << ',' << inst.items.size() << ',' << inst.target << ',' << req.k << ','
       << req.epsNum << '/' << req.epsDen << ',' << to_string(out.answer) << ','
       << out.randomBitsUsed << ',' << out.meter.peak_words() << ','
       << (req.stableTime ? 0 : out.wallTime.count());
    return os.str();
}

SubsetSumInstance load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

std::vector<u64> parse_u64_list(const std::string& s) {
    std::vector<u64> out;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) out.push_back(std::stoull(tok));
    if (out.empty()) throw std::runtime_error("empty list: " + s);
    return out;
}

std::pair<u64, u64> parse_eps(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) throw std::runtime_error("eps must be num/den");
    return {std::stoull(s.substr(0, slash)), std::stoull(s.substr(slash + 1))};
}

unsigned thread_cap() {
    if (const char* env = std::getenv("LOWSS_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    return 1;
}

} // namespace

std::string generate_instance_text(u64 n, u64 tMax, double density, u64 masterSeed,
                                   bool planted) {
    if (tMax < 1) throw std::invalid_argument("gen: tMax must be >= 1");
    SplitMix rng(masterSeed);
    const u64 valueCap = std::max<u64>(1, static_cast<u64>(static_cast<double>(tMax) *
                                                           std::clamp(density, 0.0, 1.0)));
    SubsetSumInstance inst;
    inst.items.reserve(static_cast<std::size_t>(n));
    for (u64 i = 0; i < n; ++i) inst.items.push_back(1 + rng.below(valueCap));
    if (planted && n > 0) {
        u64 sum = 0;
        while (sum == 0) {
            for (u64 a : inst.items)
                if (rng.next() & 1) sum += a;
        }
        inst.target = sum;
    } else {
        inst.target = 1 + rng.below(tMax);
    }
    return format_instance(inst);
}

SolveOutcome dispatch_solve(const SubsetSumInstance& inst, const SolveRequest& req) {
    if (req.algo == "bellman") return solve_bellman(inst);
    if (req.algo == "kane-det") return solve_kane_det(inst);
    if (req.algo == "det-star") return solve_det(inst);
    if (req.algo == "rand-loglog") {
        RandConfig cfg;
        cfg.family = RandConfig::Family::LogLog;
        return solve_rand(inst, cfg, req.seed);
    }
    if (req.algo == "rand-eps") {
        RandConfig cfg;
        cfg.family = RandConfig::Family::ConstDepth;
        return solve_rand(inst, cfg, req.seed);
    }
    if (req.algo == "tradeoff") {
        if (req.k < 1) throw std::invalid_argument("tradeoff: k must be >= 1");
        return solve_tradeoff(inst, req.k, req.seed);
    }
    if (req.algo == "wssap") return solve_wssap_outcome(inst, req);
    throw std::invalid_argument("unknown algo: " + req.algo);
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"low-space subset sum solvers"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate an instance file");
    u64 genN = 16, genTMax = 256, genSeed = 1;
    double genDensity = 1.0;
    bool genPlanted = false;
    std::string genOut;
    gen->add_option("--n", genN);
    gen->add_option("--tmax", genTMax);
    gen->add_option("--density", genDensity);
    gen->add_option("--seed", genSeed);
    gen->add_flag("--planted", genPlanted);
    gen->add_option("--out", genOut);

    // solve
    auto* solve = app.add_subcommand("solve", "solve one instance");
    std::string solveAlgo = "bellman", solveIn, solveEps = "1/2";
    u64 solveSeed = 1, solveK = 1;
    bool stableTime = false;
    solve->add_option("--algo", solveAlgo);
    solve->add_option("--in", solveIn)->required();
    solve->add_option("--seed", solveSeed);
    solve->add_option("--k", solveK);
    solve->add_option("--eps", solveEps);
    solve->add_flag("--stable-time", stableTime);

    // verify
    auto* verify = app.add_subcommand("verify", "compare an algo against the table solver");
    std::string verAlgo = "rand-loglog", verEps = "1/2";
    u64 verCount = 50, verNMax = 16, verTMax = 128, verSeed = 1, verK = 1;
    verify->add_option("--algo", verAlgo);
    verify->add_option("--count", verCount);
    verify->add_option("--nmax", verNMax);
    verify->add_option("--tmax", verTMax);
    verify->add_option("--seed", verSeed);
    verify->add_option("--k", verK);
    verify->add_option("--eps", verEps);

    // bench
    auto* bench = app.add_subcommand("bench", "sweep a grid and emit CSV");
    std::string benchAlgos = "bellman,rand-loglog", benchNs = "16", benchTs = "256",
                benchKs = "1", benchEps = "1/2";
    u64 benchReps = 3, benchSeed = 1;
    bool benchStableTime = false;
    bench->add_option("--algos", benchAlgos);
    bench->add_option("--n-list", benchNs);
    bench->add_option("--t-list", benchTs);
    bench->add_option("--k-list", benchKs);
    bench->add_option("--eps", benchEps);
    bench->add_option("--reps", benchReps);
    bench->add_option("--seed", benchSeed);
    bench->add_flag("--stable-time", benchStableTime);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return 2;
    }

    try {
        if (gen->parsed()) {
            const std::string text =
                generate_instance_text(genN, genTMax, genDensity, genSeed, genPlanted);
            if (genOut.empty()) {
                out << text;
            } else {
                std::ofstream f(genOut);
                if (!f) throw std::runtime_error("cannot write " + genOut);
                f << text;
            }
            return 0;
        }

        if (solve->parsed()) {
            const SubsetSumInstance inst = load_instance(solveIn);
            SolveRequest req;
            req.algo = solveAlgo;
            req.seed = solveSeed;
            req.k = solveK;
            std::tie(req.epsNum, req.epsDen) = parse_eps(solveEps);
            req.stableTime = stableTime;
            SolveOutcome o = dispatch_solve(inst, req);
            if (stableTime) o.wallTime = std::chrono::microseconds(0);
            out << outcome_csv_row(solveAlgo, inst, o) << "\n";
            return o.answer == Answer::Yes ? 1 : 0;
        }

        if (verify->parsed()) {
            SolveRequest req;
            req.algo = verAlgo;
            req.k = verK;
            std::tie(req.epsNum, req.epsDen) = parse_eps(verEps);
            u64 yesTotal = 0, yesDetected = 0, noTotal = 0, falseYes = 0;
            for (u64 i = 0; i < verCount; ++i) {
                const u64 seed = splitmix64(verSeed + i);
                SplitMix rng(seed);
                const u64 n = 1 + rng.below(verNMax);
                const bool planted = (i % 2) == 0;
                const SubsetSumInstance inst = parse_instance(
                    generate_instance_text(n, verTMax, 1.0, seed, planted));
                if (req.algo == "wssap" && inst.items.empty()) continue;
                req.seed = seed;
                const Answer truth = dp_oracle(inst);
                const Answer got = dispatch_solve(inst, req).answer;
                if (truth == Answer::Yes) {
                    ++yesTotal;
                    if (got == Answer::Yes) ++yesDetected;
                } else {
                    ++noTotal;
                    if (got == Answer::Yes) ++falseYes;
                }
            }
            out << "algo=" << verAlgo << " yes_instances=" << yesTotal
                << " detected=" << yesDetected << " no_instances=" << noTotal
                << " false_yes=" << falseYes << "\n";
            if (yesTotal > 0)
                out << "detection_rate=" << static_cast<double>(yesDetected) / yesTotal
                    << "\n";
            return falseYes == 0 ? 0 : 3;  // one-sidedness breach is an error
        }

        if (bench->parsed()) {
            const auto algos = [&] {
                std::vector<std::string> v;
                std::stringstream ss(benchAlgos);
                std::string tok;
                while (std::getline(ss, tok, ',')) v.push_back(tok);
                return v;
            }();
            const auto ns = parse_u64_list(benchNs);
            const auto ts = parse_u64_list(benchTs);
            const auto ks = parse_u64_list(benchKs);
            const auto [epsNum, epsDen] = parse_eps(benchEps);

            struct Cell {
                std::string algo;
                u64 n, t, k;
            };
            std::vector<Cell> grid;
            for (const auto& a : algos)
                for (u64 n : ns)
                    for (u64 t : ts)
                        for (u64 k : ks) grid.push_back({a, n, t, k});

            out << "algo,n,t,k,eps,answer,seedBitsUsed,peakWords,wallTimeMicros\n";
            const unsigned cap = thread_cap();
            std::vector<std::string> rows(grid.size());
            auto run_cell = [&](std::size_t gi) {
                const Cell& c = grid[gi];
                std::ostringstream block;
                std::vector<u64> times, words;
                SolveOutcome last;
                SubsetSumInstance inst;
                for (u64 r = 0; r < benchReps; ++r) {
                    const u64 seed = splitmix64(benchSeed ^ (gi * 1315423911ULL) ^ r);
                    inst = parse_instance(
                        generate_instance_text(c.n, c.t, 1.0, seed, /*planted=*/true));
                    SolveRequest req{c.algo, seed, c.k, epsNum, epsDen, benchStableTime};
                    last = dispatch_solve(inst, req);
                    times.push_back(static_cast<u64>(last.wallTime.count()));
                    words.push_back(last.meter.peak_words());
                    block << extended_csv_row(c.algo, inst, req, last) << "\n";
                }
                std::sort(times.begin(), times.end());
                std::sort(words.begin(), words.end());
                SolveOutcome median = last;
                median.wallTime = std::chrono::microseconds(
                    static_cast<long>(times[times.size() / 2]));
                SolveRequest req{c.algo + "-median", benchSeed, c.k, epsNum, epsDen,
                                 benchStableTime};
                SpaceMeter mm;
                mm.alloc(words[words.size() / 2]);
                median.meter = mm;
                block << extended_csv_row(c.algo + "-median", inst, req, median) << "\n";
                rows[gi] = block.str();
            };
            if (cap <= 1) {
                for (std::size_t gi = 0; gi < grid.size(); ++gi) run_cell(gi);
            } else {
                std::vector<std::future<void>> pending;
                for (std::size_t gi = 0; gi < grid.size(); ++gi) {
                    if (pending.size() >= cap) {
                        pending.front().get();
                        pending.erase(pending.begin());
                    }
                    pending.push_back(std::async(std::launch::async, run_cell, gi));
                }
                for (auto& f : pending) f.get();
            }
            for (const auto& r : rows) out << r;  // buffered, grid order
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

} // namespace lowss
