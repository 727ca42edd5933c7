#include "cli.hpp"

#include <chrono>
#include <fstream>
#include <functional>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "chainlattice/chains.hpp"
#include "chainlattice/degrees.hpp"
#include "chainlattice/errors.hpp"
#include "chainlattice/grid.hpp"
#include "chainlattice/io.hpp"
#include "chainlattice/rng.hpp"
#include "chainlattice/scd.hpp"
#include "chainlattice/search.hpp"
#include "chainlattice/supersaturation.hpp"
#include "report.hpp"

namespace chainlattice::cli {

namespace {

struct Globals {
    std::uint64_t seed = 0;
    int workers = 1;
    std::string format = "json";
    std::string out;
    bool timing = false;
};

struct Outcome {
    Json body;
    int exitCode = 0;
};

using Action = std::function<Outcome()>;

Json big_json(const BigInt& v)
{
    if (v.fits_slong_p()) {
        return v.get_si();
    }
    return v.get_str();
}

Json rational_json(const Rational& q)
{
    return q.get_str();
}

Json family_value(const Family& F)
{
    return Json::parse(family_to_json(F));
}

Family load_family(const std::string& path, std::optional<int> n)
{
    return family_from_any(read_file(path), n);
}

std::optional<int> optional_n(int n)
{
    return n >= 0 ? std::optional<int>(n) : std::nullopt;
}

std::string join(const std::vector<std::string>& args)
{
    std::string out = "chainlattice";
    for (const auto& a : args) {
        out += ' ';
        out += a;
    }
    return out;
}

// --- chains ---------------------------------------------------------------

void add_chains(CLI::App& app, Action& action)
{
    auto* chains = app.add_subcommand("chains", "Chain weights and k-chain counts");
    chains->require_subcommand(1);

    auto* count = chains->add_subcommand("count", "Number of k-chains in a family");
    auto familyPath = std::make_shared<std::string>();
    auto n = std::make_shared<int>(-1);
    auto k = std::make_shared<int>(2);
    count->add_option("--family", *familyPath, "Family file (JSON or plain text)")->required();
    count->add_option("-n", *n, "Ground-set size for plain-text families");
    count->add_option("-k", *k, "Chain length")->required();
    count->callback([=, &action] {
        action = [=] {
            const Family F = load_family(*familyPath, optional_n(*n));
            Outcome o;
            o.body["n"] = F.n();
            o.body["k"] = *k;
            o.body["familySize"] = F.size();
            o.body["chains"] = big_json(count_k_chains(F, *k));
            return o;
        };
    });

    auto* weightCmd = chains->add_subcommand("weight", "Exact SCD-containment weight of a chain");
    auto chainText = std::make_shared<std::string>();
    auto wn = std::make_shared<int>(0);
    weightCmd->add_option("--chain", *chainText, "Chain such as \"1,2 < 1,2,3\"")->required();
    weightCmd->add_option("-n", *wn, "Ground-set size")->required();
    weightCmd->callback([=, &action] {
        action = [=] {
            const Chain c = Chain::parse(*chainText, *wn);
            const ChainStats s = chain_stats(c);
            Outcome o;
            o.body["n"] = *wn;
            o.body["chain"] = c.str();
            o.body["steps"] = s.steps.str();
            o.body["height"] = s.height;
            o.body["distance"] = s.distance.str();
            o.body["direction"] = to_string(s.direction);
            o.body["weight"] = rational_json(weight(c));
            return o;
        };
    });
}

// --- scd ------------------------------------------------------------------

void add_scd(CLI::App& app, Action& action, const Globals& g)
{
    auto* scd = app.add_subcommand("scd", "Symmetric chain decompositions");
    scd->require_subcommand(1);

    auto* build = scd->add_subcommand("build", "The bracket-matching SCD of P(n)");
    auto n = std::make_shared<int>(0);
    build->add_option("-n", *n, "Ground-set size")->required();
    build->callback([=, &action] {
        action = [=] {
            Outcome o;
            o.body = Json::parse(scd_to_json(dbtk_scd(*n)));
            return o;
        };
    });

    auto* check = scd->add_subcommand("check", "Validate an SCD file");
    auto in = std::make_shared<std::string>();
    check->add_option("--in", *in, "SCD JSON")->required();
    check->callback([=, &action] {
        action = [=] {
            const SCD X = scd_from_json(read_file(*in));
            Outcome o;
            o.body["n"] = X.n();
            o.body["chainCount"] = X.chain_count();
            o.body["valid"] = true;
            o.body["equalsDbtk"] = X == dbtk_scd(X.n());
            return o;
        };
    });

    auto* mc = scd->add_subcommand("mc", "Monte Carlo containment frequency over permuted SCDs");
    auto chainText = std::make_shared<std::string>();
    auto mn = std::make_shared<int>(0);
    auto trials = std::make_shared<std::uint64_t>(1000000);
    mc->add_option("--chain", *chainText, "Chain such as \"1,2 < 1,2,3\"")->required();
    mc->add_option("-n", *mn, "Ground-set size")->required();
    mc->add_option("--trials", *trials, "Number of sampled SCDs");
    mc->callback([=, &action, &g] {
        action = [=, &g] {
            const Chain c = Chain::parse(*chainText, *mn);
            const McWeight m = mc_weight(c, *trials, g.seed, g.workers);
            const Rational w = weight(c);
            Outcome o;
            o.body["n"] = *mn;
            o.body["chain"] = c.str();
            o.body["trials"] = m.trials;
            o.body["hits"] = m.hits;
            o.body["frequency"] = rational_json(m.frequency);
            o.body["stderr"] = m.standard_error;
            o.body["weight"] = rational_json(w);
            const double gap = std::abs(m.frequency.get_d() - w.get_d());
            o.body["withinFourSigma"] = gap <= 4.0 * std::max(m.standard_error, 1e-300) || gap == 0.0;
            return o;
        };
    });
}

// --- supersat / compress ---------------------------------------------------

void add_supersat(CLI::App& app, Action& action)
{
    auto* supersat = app.add_subcommand("supersat", "Weighted supersaturation");
    supersat->require_subcommand(1);
    auto* check = supersat->add_subcommand("check", "W_a(F) >= W_a(G_|F|) for every step vector");
    auto familyPath = std::make_shared<std::string>();
    auto n = std::make_shared<int>(-1);
    auto k = std::make_shared<int>(2);
    check->add_option("--family", *familyPath, "Family file")->required();
    check->add_option("-n", *n, "Ground-set size for plain-text families");
    check->add_option("-k", *k, "Chain length");
    check->callback([=, &action] {
        action = [=] {
            if (*k < 2) {
                throw DomainError("supersat check: k must be at least 2");
            }
            const Family F = load_family(*familyPath, optional_n(*n));
            Outcome o;
            o.body["n"] = F.n();
            o.body["k"] = *k;
            o.body["familySize"] = F.size();
            Json rows = Json::array();
            bool ok = true;
            for (const auto& a : step_vectors(static_cast<std::size_t>(*k - 1), F.n())) {
                const SupersatCheck s = verify_supersat(F, a);
                ok = ok && s.ok;
                Json row;
                row["steps"] = a.str();
                row["lhs"] = rational_json(s.lhs);
                row["rhs"] = rational_json(s.rhs);
                row["ok"] = s.ok;
                rows.push_back(std::move(row));
            }
            o.body["ok"] = ok;
            o.body["rows"] = std::move(rows);
            o.exitCode = ok ? 0 : 1;
            return o;
        };
    });
}

struct MeasureSource {
    std::string in;
    std::string fromFamily;
    int d = -1;
    int k = 2;
    std::string context;
    std::string steps;
};

MeasuredSubhypergraph load_measure(const MeasureSource& s)
{
    if (!s.in.empty()) {
        return msh_from_json(read_file(s.in));
    }
    if (s.fromFamily.empty()) {
        throw DomainError("give --in f.msh or --from-family F.json");
    }
    const Family F = load_family(s.fromFamily, std::nullopt);
    return MeasuredSubhypergraph::indicator(F, s.d < 0 ? F.n() + 1 : s.d, s.k);
}

Family load_context(const MeasureSource& s, const MeasuredSubhypergraph& f)
{
    if (s.context.empty()) {
        return f.host();
    }
    const Family F = load_family(s.context, std::nullopt);
    if (F.n() != f.n()) {
        throw DomainError("--family has a different ground-set size");
    }
    return F;
}

void add_compress(CLI::App& app, Action& action)
{
    auto* compressCmd = app.add_subcommand("compress", "Compression of measured subhypergraphs");
    compressCmd->require_subcommand(1);
    auto src = std::make_shared<MeasureSource>();
    auto options = [src](CLI::App* cmd) {
        cmd->add_option("--in", src->in, "Measured subhypergraph JSON");
        cmd->add_option("--from-family", src->fromFamily, "Start from the characteristic function of a family");
        cmd->add_option("-d", src->d, "Middle-layer count for --from-family (default n+1)");
        cmd->add_option("-k", src->k, "Chain length for --from-family");
        cmd->add_option("--family", src->context, "Family F of the step class (default: the host)");
    };

    auto* apply = compressCmd->add_subcommand("apply", "c[f, F, a], or every class with --all");
    options(apply);
    auto all = std::make_shared<bool>(false);
    apply->add_option("--steps", src->steps, "Step vector a, e.g. 1,2");
    apply->add_flag("--all", *all, "Compress every step class of F");
    apply->callback([=, &action] {
        action = [=] {
            const MeasuredSubhypergraph f = load_measure(*src);
            const Family F = load_context(*src, f);
            MeasuredSubhypergraph g;
            if (*all) {
                g = fully_compress(f, F);
            } else {
                if (src->steps.empty()) {
                    throw DomainError("compress apply: give --steps or --all");
                }
                g = compress(f, F, StepVector::parse(src->steps));
            }
            Outcome o;
            o.body = Json::parse(msh_to_json(g));
            o.body["sizeBefore"] = rational_json(f.size());
            o.body["sizeAfter"] = rational_json(g.size());
            return o;
        };
    });

    auto* check = compressCmd->add_subcommand("check", "Whether f is (F, a)-compressed");
    options(check);
    check->add_option("--steps", src->steps, "Step vector a; omit to test every class");
    check->callback([=, &action] {
        action = [=] {
            const MeasuredSubhypergraph f = load_measure(*src);
            const Family F = load_context(*src, f);
            Outcome o;
            bool ok = false;
            if (src->steps.empty()) {
                ok = is_completely_compressed(f, F);
                o.body["scope"] = "all step classes";
            } else {
                const StepVector a = StepVector::parse(src->steps);
                ok = is_compressed(f, F, a);
                o.body["scope"] = a.str();
            }
            o.body["compressed"] = ok;
            o.body["size"] = rational_json(f.size());
            o.exitCode = ok ? 0 : 1;
            return o;
        };
    });
}

// --- degrees -------------------------------------------------------------

void add_degrees(CLI::App& app, Action& action)
{
    auto* degrees = app.add_subcommand("degrees", "Degrees of the middle-layer chain hypergraphs");
    degrees->require_subcommand(1);

    auto* delta = degrees->add_subcommand("delta", "Maximum degree Delta_{j,k}");
    auto n = std::make_shared<int>(0);
    auto j = std::make_shared<int>(0);
    auto k = std::make_shared<int>(0);
    delta->add_option("-n", *n, "Ground-set size")->required();
    delta->add_option("-j", *j, "Number of middle layers")->required();
    delta->add_option("-k", *k, "Chain length")->required();
    delta->callback([=, &action] {
        action = [=] {
            require_envelope(*n, "degrees");
            const MaxDegree m = max_degree(*j, *k, *n);
            const LevelBounds b = level_bounds(*n, *j);
            Outcome o;
            o.body["n"] = *n;
            o.body["j"] = *j;
            o.body["k"] = *k;
            o.body["pMinus"] = b.pMinus;
            o.body["pPlus"] = b.pPlus;
            o.body["delta"] = big_json(m.delta);
            o.body["argmax"] = format_subset(m.argmax);
            if (*k >= 2 && *j >= *k) {
                const DegreeSandwich s = degree_sandwich(*n, *j, *k);
                o.body["balancedSteps"] = balanced_steps(*j, *k).str();
                o.body["lowerBound"] = big_json(s.lower);
                o.body["upperBound"] = big_json(s.upper);
                o.body["sandwichHolds"] = s.lower <= m.delta && m.delta <= s.upper;
            }
            return o;
        };
    });

    auto* check = degrees->add_subcommand("check", "Closed form against brute force on every vertex");
    auto cn = std::make_shared<int>(0);
    auto kmax = std::make_shared<int>(4);
    check->add_option("-n", *cn, "Ground-set size")->required();
    check->add_option("--kmax", *kmax, "Largest chain length");
    check->callback([=, &action] {
        action = [=] {
            if (*cn > 16) {
                throw ResourceError("degrees check: brute force is limited to n <= 16");
            }
            Outcome o;
            Json rows = Json::array();
            bool ok = true;
            for (int jj = 1; jj <= *cn + 1; ++jj) {
                const Family host = middle_layers(*cn, jj);
                for (int kk = 1; kk <= *kmax; ++kk) {
                    std::uint64_t mismatches = 0;
                    BigInt handshake = 0;
                    host.for_each([&](SubsetCode A) {
                        const BigInt brute = degree_brute(*cn, A, jj, kk);
                        mismatches += brute == degree_formula(*cn, A, jj, kk) ? 0 : 1;
                        handshake += brute;
                    });
                    const bool handshakeOk = handshake == BigInt(kk) * count_k_chains(host, kk);
                    ok = ok && mismatches == 0 && handshakeOk;
                    Json row;
                    row["j"] = jj;
                    row["k"] = kk;
                    row["vertices"] = host.size();
                    row["mismatches"] = mismatches;
                    row["handshake"] = handshakeOk;
                    rows.push_back(std::move(row));
                }
            }
            o.body["n"] = *cn;
            o.body["ok"] = ok;
            o.body["rows"] = std::move(rows);
            o.exitCode = ok ? 0 : 1;
            return o;
        };
    });
}

// --- search --------------------------------------------------------------

Json result_json(const SearchConfig& c, const SearchResult& r)
{
    Json config;
    config["n"] = c.n;
    config["k"] = c.k;
    config["M"] = c.M;
    config["mode"] = to_string(c.mode);
    if (c.mode == SearchMode::LocalSearch) {
        config["restarts"] = c.restarts;
        config["movesPerRestart"] = c.movesPerRestart;
        config["tabu"] = c.tabu;
        config["seed"] = c.seed;
    }
    config["witnessCap"] = c.witnessCap;
    Json out;
    out["config"] = std::move(config);
    out["minValue"] = big_json(r.minValue);
    out["centeredValue"] = big_json(r.centeredValue);
    out["conjectureHolds"] = r.conjectureHolds;
    out["exhaustive"] = r.exhaustive;
    out["familiesExamined"] = r.familiesExamined;
    Json witnesses = Json::array();
    for (const auto& w : r.witnesses) {
        witnesses.push_back(family_value(w));
    }
    out["witnesses"] = std::move(witnesses);
    return out;
}

void add_search(CLI::App& app, Action& action, const Globals& g)
{
    auto* search = app.add_subcommand("search", "Minimum number of k-chains over families of size M");
    search->require_subcommand(1);

    auto config = std::make_shared<SearchConfig>();
    auto mode = std::make_shared<std::string>("exhaustive");
    auto common = [config](CLI::App* cmd) {
        cmd->add_option("-n", config->n, "Ground-set size")->required();
        cmd->add_option("-k", config->k, "Chain length")->required();
        cmd->add_option("--witness-cap", config->witnessCap, "Maximum number of witnesses reported");
    };

    auto* minCmd = search->add_subcommand("min", "c_k minimum for one M");
    common(minCmd);
    minCmd->add_option("-M", config->M, "Family size")->required();
    minCmd->add_option("--mode", *mode, "exhaustive | exhaustiveCanonical | localSearch");
    minCmd->add_option("--restarts", config->restarts, "Local-search restarts");
    minCmd->add_option("--moves", config->movesPerRestart, "Swap attempts per restart");
    minCmd->callback([=, &action, &g] {
        action = [=, &g] {
            SearchConfig c = *config;
            c.mode = parse_search_mode(*mode);
            c.seed = g.seed;
            c.workers = g.workers;
            const SearchResult r = ck_min(c);
            return Outcome{result_json(c, r), r.conjectureHolds ? 0 : 1};
        };
    });

    auto* local = search->add_subcommand("local", "Seeded local search with restarts");
    common(local);
    local->add_option("-M", config->M, "Family size")->required();
    local->add_option("--restarts", config->restarts, "Number of restarts");
    local->add_option("--moves", config->movesPerRestart, "Swap attempts per restart");
    local->add_option("--tabu", config->tabu, "Tabu window");
    local->callback([=, &action, &g] {
        action = [=, &g] {
            SearchConfig c = *config;
            c.mode = SearchMode::LocalSearch;
            c.seed = g.seed;
            c.workers = g.workers;
            const SearchResult r = local_search(c);
            return Outcome{result_json(c, r), r.conjectureHolds ? 0 : 1};
        };
    });

    auto* verify = search->add_subcommand("verify", "Exhaustive check for every M in [0, 2^n]");
    common(verify);
    verify->callback([=, &action] {
        action = [=] {
            const VerifyReport v = verify_conjecture_range(config->n, config->k, config->witnessCap);
            Outcome o;
            o.body["n"] = v.n;
            o.body["k"] = v.k;
            o.body["mode"] = to_string(v.mode);
            o.body["allHold"] = v.allHold;
            Json rows = Json::array();
            for (const auto& row : v.rows) {
                Json r;
                r["M"] = row.M;
                r["minValue"] = big_json(row.minValue);
                r["centeredValue"] = big_json(row.centeredValue);
                r["holds"] = row.holds;
                r["witnessCount"] = row.witnesses.size();
                rows.push_back(std::move(r));
            }
            o.body["rows"] = std::move(rows);
            o.exitCode = v.allHold ? 0 : 1;
            return o;
        };
    });
}

// --- grid ------------------------------------------------------------------

void add_grid(CLI::App& app, Action& action)
{
    auto* grid = app.add_subcommand("grid", "Chains in the grid poset [m]^d");
    grid->require_subcommand(1);

    auto* counter = grid->add_subcommand("counterexample", "The m = 16, d = 2 improvement over the m-centered set");
    counter->callback([&action] {
        action = [] {
            const CounterexampleReport r = counterexample_check();
            Outcome o;
            o.body["m"] = r.m;
            o.body["d"] = r.d;
            o.body["k"] = r.k;
            Json rows = Json::array();
            for (const auto& s : r.sides) {
                Json row;
                row["convention"] = to_string(s.convention);
                row["representable"] = s.representable;
                row["sizeF"] = s.sizeF;
                row["chainsF"] = big_json(s.chainsF);
                if (s.representable) {
                    row["sizeFPrime"] = s.sizeFPrime;
                    row["chainsFPrime"] = big_json(s.chainsFPrime);
                } else {
                    row["sizeFPrime"] = nullptr;
                    row["chainsFPrime"] = nullptr;
                }
                row["improves"] = s.improves;
                rows.push_back(std::move(row));
            }
            o.body["confirmed"] = r.confirmed;
            o.body["rows"] = std::move(rows);
            o.exitCode = r.confirmed ? 0 : 1;
            return o;
        };
    });

    auto* count = grid->add_subcommand("count", "Number of k-chains of a grid family");
    auto path = std::make_shared<std::string>();
    auto k = std::make_shared<int>(2);
    count->add_option("--family", *path, "Grid family JSON")->required();
    count->add_option("-k", *k, "Chain length")->required();
    count->callback([=, &action] {
        action = [=] {
            const GridFamily F = grid_from_json(read_file(*path));
            Outcome o;
            o.body["m"] = F.m();
            o.body["d"] = F.d();
            o.body["convention"] = to_string(F.convention());
            o.body["size"] = F.size();
            o.body["k"] = *k;
            o.body["chains"] = big_json(grid_count_chains(F, *k));
            o.body["mCentered"] = is_m_centered(F);
            return o;
        };
    });
}

void write_output(const Globals& g, const std::string& text, std::ostream& out)
{
    if (g.out.empty()) {
        out << text;
        return;
    }
    std::ofstream file(g.out, std::ios::binary);
    if (!file) {
        throw ResourceError("cannot write '" + g.out + "'");
    }
    file << text;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    Globals g;
    g.workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));

    CLI::App app{"Chain counting, symmetric chain decompositions and extremal search on the Boolean lattice",
                 "chainlattice"};
    app.fallthrough();
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);
    app.add_option("--seed", g.seed, "Master RNG seed");
    app.add_option("--workers", g.workers, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--format", g.format, "json | csv | human")->check(CLI::IsMember({"json", "csv", "human"}));
    app.add_option("--out", g.out, "Write the report to a file");
    app.add_flag("--timing", g.timing, "Add wall-clock time to the manifest");

    Action action;
    add_chains(app, action);
    add_scd(app, action, g);
    add_supersat(app, action);
    add_compress(app, action);
    add_degrees(app, action);
    add_search(app, action, g);
    add_grid(app, action);

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }
    if (!action) {
        err << app.help();
        return 2;
    }

    try {
        const auto start = std::chrono::steady_clock::now();
        Outcome o = action();
        Json manifest;
        manifest["command"] = join(args);
        manifest["version"] = kVersion;
        manifest["seed"] = g.seed;
        manifest["rng"] = kRngAlgorithm;
        manifest["workers"] = g.workers;
        if (g.timing) {
            manifest["wallSeconds"] =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }
        Json report;
        report["manifest"] = std::move(manifest);
        for (auto& [key, value] : o.body.items()) {
            report[key] = value;
        }
        write_output(g, report_emit(report, parse_format(g.format)), out);
        return o.exitCode;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const ResourceError& e) {
        err << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const InfeasibleError& e) {
        err << "infeasible: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace chainlattice::cli
